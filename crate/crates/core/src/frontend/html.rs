//! Tag/attribute-level scan of HTML for inline JavaScript.
//!
//! Collects `<script>` bodies without `src`, `on*` event-handler attributes,
//! and `javascript:` hrefs. This is not an HTML5 tree builder.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ScriptOrigin {
    ScriptTag,
    EventAttribute,
    JavascriptHref,
}

/// A raw inline-script fragment: byte range of the code in the HTML text and
/// the decoded code itself.
#[derive(Debug, Clone, PartialEq)]
pub struct RawFragment {
    pub origin: ScriptOrigin,
    pub start: usize,
    pub end: usize,
    pub code: String,
    /// Attribute name for `EventAttribute` fragments.
    pub attribute: Option<String>,
}

const NON_JS_SCRIPT_TYPES: &[&str] = &[
    "text/template",
    "text/html",
    "text/x-template",
    "text/x-handlebars-template",
    "text/x-shader",
    "x-shader/x-vertex",
    "x-shader/x-fragment",
    "text/plain",
    "application/json",
    "application/ld+json",
    "importmap",
];

pub fn is_event_attribute(name: &str) -> bool {
    let lower = name.to_ascii_lowercase();
    lower.len() > 2 && lower.starts_with("on") && lower[2..].bytes().all(|b| b.is_ascii_lowercase())
}

fn decode_entities(s: &str) -> String {
    if !s.contains('&') {
        return s.to_string();
    }
    let mut out = String::with_capacity(s.len());
    let mut rest = s;
    while let Some(idx) = rest.find('&') {
        out.push_str(&rest[..idx]);
        rest = &rest[idx..];
        let semi = rest[..rest.len().min(12)].find(';');
        let decoded = semi.and_then(|semi| {
            let entity = &rest[1..semi];
            let ch = match entity {
                "quot" => Some('"'),
                "apos" => Some('\''),
                "amp" => Some('&'),
                "lt" => Some('<'),
                "gt" => Some('>'),
                "nbsp" => Some('\u{a0}'),
                _ if entity.starts_with("#x") || entity.starts_with("#X") => {
                    u32::from_str_radix(&entity[2..], 16).ok().and_then(char::from_u32)
                }
                _ if entity.starts_with('#') => entity[1..].parse().ok().and_then(char::from_u32),
                _ => None,
            };
            ch.map(|c| (c, semi + 1))
        });
        match decoded {
            Some((c, len)) => {
                out.push(c);
                rest = &rest[len..];
            }
            None => {
                out.push('&');
                rest = &rest[1..];
            }
        }
    }
    out.push_str(rest);
    out
}

struct Attribute {
    name: String,
    value: Option<(usize, usize)>,
}

fn find_ci(haystack: &str, from: usize, needle: &str) -> Option<usize> {
    let hay = haystack.as_bytes();
    let needle = needle.as_bytes();
    if needle.is_empty() || from >= hay.len() {
        return None;
    }
    (from..=hay.len().saturating_sub(needle.len())).find(|&i| hay[i..i + needle.len()].eq_ignore_ascii_case(needle))
}

/// Parses attributes starting after the tag name; returns them and the offset just past `>`.
fn parse_attributes(text: &str, mut i: usize) -> (Vec<Attribute>, usize) {
    let bytes = text.as_bytes();
    let mut attrs = Vec::new();
    loop {
        while i < bytes.len() && (bytes[i].is_ascii_whitespace() || bytes[i] == b'/') {
            i += 1;
        }
        if i >= bytes.len() {
            return (attrs, i);
        }
        if bytes[i] == b'>' {
            return (attrs, i + 1);
        }
        let name_start = i;
        while i < bytes.len() && !bytes[i].is_ascii_whitespace() && !matches!(bytes[i], b'=' | b'>' | b'/') {
            i += 1;
        }
        if i == name_start {
            i += 1;
            continue;
        }
        let name = text[name_start..i].to_ascii_lowercase();
        let mut j = i;
        while j < bytes.len() && bytes[j].is_ascii_whitespace() {
            j += 1;
        }
        if j < bytes.len() && bytes[j] == b'=' {
            j += 1;
            while j < bytes.len() && bytes[j].is_ascii_whitespace() {
                j += 1;
            }
            if j < bytes.len() && (bytes[j] == b'"' || bytes[j] == b'\'') {
                let quote = bytes[j];
                let vstart = j + 1;
                let vend = text[vstart..].bytes().position(|b| b == quote).map_or(text.len(), |p| vstart + p);
                attrs.push(Attribute { name, value: Some((vstart, vend)) });
                i = (vend + 1).min(text.len());
            } else {
                let vstart = j;
                while j < bytes.len() && !bytes[j].is_ascii_whitespace() && bytes[j] != b'>' {
                    j += 1;
                }
                attrs.push(Attribute { name, value: Some((vstart, j)) });
                i = j;
            }
        } else {
            attrs.push(Attribute { name, value: None });
        }
    }
}

pub fn extract_fragments(text: &str) -> Vec<RawFragment> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while let Some(rel) = text[i..].find('<') {
        let lt = i + rel;
        if text[lt..].starts_with("<!--") {
            i = text[lt + 4..].find("-->").map_or(text.len(), |p| lt + 4 + p + 3);
            continue;
        }
        let name_start = lt + 1;
        let mut name_end = name_start;
        while name_end < bytes.len() && (bytes[name_end].is_ascii_alphanumeric() || bytes[name_end] == b'-') {
            name_end += 1;
        }
        if name_end == name_start || !bytes[name_start].is_ascii_alphabetic() {
            i = lt + 1;
            continue;
        }
        let tag = text[name_start..name_end].to_ascii_lowercase();
        let (attrs, after) = parse_attributes(text, name_end);
        for attr in &attrs {
            let Some((vs, ve)) = attr.value else { continue };
            let raw = &text[vs..ve];
            if is_event_attribute(&attr.name) {
                let code = decode_entities(raw);
                if !code.trim().is_empty() {
                    out.push(RawFragment {
                        origin: ScriptOrigin::EventAttribute,
                        start: vs,
                        end: ve,
                        code,
                        attribute: Some(attr.name.clone()),
                    });
                }
            } else if attr.name == "href" {
                let decoded = decode_entities(raw);
                let trimmed = decoded.trim_start();
                if trimmed.get(..11).is_some_and(|p| p.eq_ignore_ascii_case("javascript:")) {
                    let code = trimmed[11..].to_string();
                    if !code.trim().is_empty() {
                        let offset = raw.len() - raw.trim_start().len() + 11;
                        out.push(RawFragment {
                            origin: ScriptOrigin::JavascriptHref,
                            start: (vs + offset).min(ve),
                            end: ve,
                            code,
                            attribute: None,
                        });
                    }
                }
            }
        }
        i = after.max(lt + 1);
        if tag == "script" || tag == "style" {
            let close = find_ci(text, i, &format!("</{tag}")).unwrap_or(text.len());
            if tag == "script" {
                let has_src = attrs.iter().any(|a| a.name == "src");
                let js_type = attrs
                    .iter()
                    .find(|a| a.name == "type")
                    .and_then(|a| a.value)
                    .map(|(s, e)| text[s..e].trim().to_ascii_lowercase())
                    .is_none_or(|t| !NON_JS_SCRIPT_TYPES.iter().any(|n| t.starts_with(n)));
                let body = &text[i..close];
                if !has_src && js_type && !body.trim().is_empty() {
                    out.push(RawFragment {
                        origin: ScriptOrigin::ScriptTag,
                        start: i,
                        end: close,
                        code: body.to_string(),
                        attribute: None,
                    });
                }
            }
            i = text[close..].find('>').map_or(text.len(), |p| close + p + 1);
        }
    }
    out
}
