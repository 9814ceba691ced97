//! Finding kinds and the finding record itself.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::frontend::Span;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SmellKind {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
    S10,
    S11,
    S12,
    S13,
}

impl SmellKind {
    pub const ALL: [SmellKind; 13] = [
        SmellKind::S1,
        SmellKind::S2,
        SmellKind::S3,
        SmellKind::S4,
        SmellKind::S5,
        SmellKind::S6,
        SmellKind::S7,
        SmellKind::S8,
        SmellKind::S9,
        SmellKind::S10,
        SmellKind::S11,
        SmellKind::S12,
        SmellKind::S13,
    ];

    pub fn code(self) -> &'static str {
        match self {
            SmellKind::S1 => "S1",
            SmellKind::S2 => "S2",
            SmellKind::S3 => "S3",
            SmellKind::S4 => "S4",
            SmellKind::S5 => "S5",
            SmellKind::S6 => "S6",
            SmellKind::S7 => "S7",
            SmellKind::S8 => "S8",
            SmellKind::S9 => "S9",
            SmellKind::S10 => "S10",
            SmellKind::S11 => "S11",
            SmellKind::S12 => "S12",
            SmellKind::S13 => "S13",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SmellKind::S1 => "Closure smells",
            SmellKind::S2 => "Coupling JS/HTML/CSS",
            SmellKind::S3 => "Empty catch",
            SmellKind::S4 => "Excessive global variables",
            SmellKind::S5 => "Large object",
            SmellKind::S6 => "Lazy object",
            SmellKind::S7 => "Long message chain",
            SmellKind::S8 => "Long method/function",
            SmellKind::S9 => "Long parameter list",
            SmellKind::S10 => "Nested callback",
            SmellKind::S11 => "Refused bequest",
            SmellKind::S12 => "Switch statement",
            SmellKind::S13 => "Unused/dead code",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternKind {
    P1,
    P2,
    P3,
    P4,
}

impl PatternKind {
    pub const ALL: [PatternKind; 4] = [PatternKind::P1, PatternKind::P2, PatternKind::P3, PatternKind::P4];

    pub fn code(self) -> &'static str {
        match self {
            PatternKind::P1 => "P1",
            PatternKind::P2 => "P2",
            PatternKind::P3 => "P3",
            PatternKind::P4 => "P4",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PatternKind::P1 => "Component decoupling",
            PatternKind::P2 => "Event queue decoupling",
            PatternKind::P3 => "Data locality",
            PatternKind::P4 => "Object pool",
        }
    }
}

/// Any reportable kind. Orders S1..S13 before P1..P4.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Kind {
    Smell(SmellKind),
    Pattern(PatternKind),
}

impl Kind {
    pub fn all() -> impl Iterator<Item = Kind> {
        SmellKind::ALL.into_iter().map(Kind::Smell).chain(PatternKind::ALL.into_iter().map(Kind::Pattern))
    }

    pub fn code(self) -> &'static str {
        match self {
            Kind::Smell(s) => s.code(),
            Kind::Pattern(p) => p.code(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Kind::Smell(s) => s.name(),
            Kind::Pattern(p) => p.name(),
        }
    }

    pub fn is_smell(self) -> bool {
        matches!(self, Kind::Smell(_))
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown kind '{0}' (expected S1..S13 or P1..P4)")]
pub struct UnknownKind(pub String);

impl FromStr for Kind {
    type Err = UnknownKind;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let upper = s.trim().to_ascii_uppercase();
        Kind::all().find(|k| k.code() == upper).ok_or_else(|| UnknownKind(s.to_string()))
    }
}

impl Serialize for Kind {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.code())
    }
}

impl<'de> Deserialize<'de> for Kind {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// 1-based line/column range of a finding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Location {
    pub start_line: u32,
    pub start_col: u32,
    pub end_line: u32,
    pub end_col: u32,
}

impl From<Span> for Location {
    fn from(s: Span) -> Self {
        Location { start_line: s.start_line, start_col: s.start_col, end_line: s.end_line, end_col: s.end_col }
    }
}

pub const EVIDENCE_MAX: usize = 200;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Finding {
    pub kind: Kind,
    pub path: String,
    pub span: Location,
    pub metric: Option<f64>,
    pub threshold: Option<f64>,
    pub evidence: String,
    pub subkind: Option<String>,
}

impl Finding {
    pub fn new(kind: Kind, path: &str, span: Span, evidence: &str) -> Self {
        Finding {
            kind,
            path: path.to_string(),
            span: span.into(),
            metric: None,
            threshold: None,
            evidence: truncate_evidence(evidence),
            subkind: None,
        }
    }

    pub fn smell(kind: SmellKind, path: &str, span: Span, evidence: &str) -> Self {
        Self::new(Kind::Smell(kind), path, span, evidence)
    }

    pub fn pattern(kind: PatternKind, path: &str, span: Span, evidence: &str) -> Self {
        Self::new(Kind::Pattern(kind), path, span, evidence)
    }

    pub fn with_metric(mut self, metric: f64, threshold: f64) -> Self {
        self.metric = Some(metric);
        self.threshold = Some(threshold);
        self
    }

    pub fn with_subkind(mut self, subkind: &str) -> Self {
        self.subkind = Some(subkind.to_string());
        self
    }

    /// Canonical order: path, then span, then kind, then the remaining fields.
    pub fn canonical_cmp(&self, other: &Finding) -> std::cmp::Ordering {
        self.path
            .cmp(&other.path)
            .then(self.span.cmp(&other.span))
            .then(self.kind.cmp(&other.kind))
            .then_with(|| self.subkind.cmp(&other.subkind))
            .then_with(|| self.evidence.cmp(&other.evidence))
            .then_with(|| self.metric.partial_cmp(&other.metric).unwrap_or(std::cmp::Ordering::Equal))
    }
}

pub fn sort_findings(findings: &mut [Finding]) {
    findings.sort_by(Finding::canonical_cmp);
}

/// Collapses whitespace and truncates to at most 200 characters.
pub fn truncate_evidence(text: &str) -> String {
    crate::frontend::chains::collapse_text(text, EVIDENCE_MAX)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kinds_are_ordered_and_parse() {
        let all: Vec<_> = Kind::all().collect();
        assert_eq!(all.len(), 17);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!("s3".parse::<Kind>().unwrap(), Kind::Smell(SmellKind::S3));
        assert_eq!("P4".parse::<Kind>().unwrap(), Kind::Pattern(PatternKind::P4));
        assert!("S14".parse::<Kind>().is_err());
        assert_eq!(serde_json::to_string(&Kind::Smell(SmellKind::S10)).unwrap(), "\"S10\"");
    }

    #[test]
    fn evidence_is_bounded() {
        let f = Finding::new(Kind::Smell(SmellKind::S7), "a.js", Span::default(), &"x".repeat(500));
        assert_eq!(f.evidence.chars().count(), EVIDENCE_MAX);
    }
}
