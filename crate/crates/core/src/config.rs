//! Analysis configuration: thresholds, lexicons, and directory filters.
//!
//! Loaded from TOML. Missing keys take defaults, unknown keys are rejected.

use std::collections::BTreeMap;
use std::path::Path;

use regex::Regex;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config value for {key}: {message}")]
    Invalid { key: &'static str, message: String },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ComponentLexicon {
    /// category -> lowercase patterns; a trailing `*` is a prefix match.
    pub categories: BTreeMap<String, Vec<String>>,
}

impl Default for ComponentLexicon {
    fn default() -> Self {
        let table: [(&str, &[&str]); 6] = [
            ("graphics", &["canvas", "ctx", "draw*", "render*", "sprite", "image", "atlas", "texture", "webgl"]),
            ("audio", &["audio", "sound", "sfx", "music", "play*"]),
            ("physics", &["velocity", "gravity", "collide*", "physics", "impulse"]),
            ("ai", &["ai", "pathfind*", "behavior"]),
            ("network", &["fetch", "xmlhttprequest", "websocket", "socket"]),
            ("storage", &["localstorage", "sessionstorage", "indexeddb"]),
        ];
        ComponentLexicon {
            categories: table
                .iter()
                .map(|(k, v)| (k.to_string(), v.iter().map(|s| s.to_string()).collect()))
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HotPathLexicon {
    /// Substrings matched case-insensitively against function names.
    pub name_patterns: Vec<String>,
}

impl Default for HotPathLexicon {
    fn default() -> Self {
        HotPathLexicon {
            name_patterns: ["update", "render", "draw", "tick", "step", "loop", "frame", "animate", "poll", "query", "key", "input"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnalysisConfig {
    pub closure_depth: u32,
    pub globals_max: u32,
    pub large_object_props: u32,
    /// Strict lower bound: objects with fewer members are lazy.
    pub lazy_object_props: u32,
    pub chain_min: u32,
    pub method_loc_max: u32,
    pub params_max: u32,
    pub callback_depth: u32,
    pub bequest_ratio: f64,
    pub switch_cases_min: u32,
    pub html_string_min_tags: u32,
    pub component_min_categories: u32,
    pub monolithic_methods: u32,
    pub monolithic_loc: u32,
    pub hot_struct_min_props: u32,
    pub parallel_objects_min: u32,
    pub queue_pattern: String,
    pub ignore_dirs: Vec<String>,
    pub component_lexicon: ComponentLexicon,
    pub hot_path_lexicon: HotPathLexicon,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        AnalysisConfig {
            closure_depth: 4,
            globals_max: 10,
            large_object_props: 20,
            lazy_object_props: 3,
            chain_min: 4,
            method_loc_max: 50,
            params_max: 4,
            callback_depth: 3,
            bequest_ratio: 1.0 / 3.0,
            switch_cases_min: 3,
            html_string_min_tags: 2,
            component_min_categories: 2,
            monolithic_methods: 20,
            monolithic_loc: 500,
            hot_struct_min_props: 4,
            parallel_objects_min: 3,
            queue_pattern: "(?i)queue|event(list|buffer|stack)".to_string(),
            ignore_dirs: ["node_modules", "dist", "build", "vendor", ".git"].iter().map(|s| s.to_string()).collect(),
            component_lexicon: ComponentLexicon::default(),
            hot_path_lexicon: HotPathLexicon::default(),
        }
    }
}

impl AnalysisConfig {
    pub fn from_toml(text: &str) -> Result<Self, ConfigError> {
        let cfg: AnalysisConfig = toml::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path)
            .map_err(|source| ConfigError::Io { path: path.display().to_string(), source })?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        let ints = [
            ("closure_depth", self.closure_depth),
            ("globals_max", self.globals_max),
            ("large_object_props", self.large_object_props),
            ("lazy_object_props", self.lazy_object_props),
            ("chain_min", self.chain_min),
            ("method_loc_max", self.method_loc_max),
            ("params_max", self.params_max),
            ("callback_depth", self.callback_depth),
            ("switch_cases_min", self.switch_cases_min),
            ("html_string_min_tags", self.html_string_min_tags),
            ("component_min_categories", self.component_min_categories),
            ("monolithic_methods", self.monolithic_methods),
            ("monolithic_loc", self.monolithic_loc),
            ("hot_struct_min_props", self.hot_struct_min_props),
            ("parallel_objects_min", self.parallel_objects_min),
        ];
        for (key, value) in ints {
            if value == 0 {
                return Err(ConfigError::Invalid { key, message: "must be > 0".to_string() });
            }
        }
        if !(self.bequest_ratio > 0.0 && self.bequest_ratio <= 1.0) {
            return Err(ConfigError::Invalid { key: "bequest_ratio", message: "must be in (0, 1]".to_string() });
        }
        Regex::new(&self.queue_pattern)
            .map_err(|e| ConfigError::Invalid { key: "queue_pattern", message: e.to_string() })?;
        if self.component_lexicon.categories.is_empty()
            || self.component_lexicon.categories.values().any(Vec::is_empty)
        {
            return Err(ConfigError::Invalid { key: "component_lexicon", message: "categories must be non-empty".to_string() });
        }
        if self.hot_path_lexicon.name_patterns.is_empty() {
            return Err(ConfigError::Invalid { key: "hot_path_lexicon", message: "name_patterns must be non-empty".to_string() });
        }
        Ok(())
    }

    pub fn queue_regex(&self) -> Regex {
        Regex::new(&self.queue_pattern).unwrap_or_else(|_| Regex::new("(?i)queue").expect("fallback regex"))
    }
}
