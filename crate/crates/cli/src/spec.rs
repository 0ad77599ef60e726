//! Experiment spec files: flat `key = value` text with `[scenario]`
//! headers, or the same fields as JSON (one object, an array, or
//! `{"scenarios": [...]}`).

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

#[derive(Debug)]
pub struct ConfigError(pub String);

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error: {}", self.0)
    }
}

impl std::error::Error for ConfigError {}

/// One scenario as written: its name plus unparsed key/value fields.
#[derive(Clone, Debug, PartialEq)]
pub struct RawScenario {
    pub name: String,
    pub fields: BTreeMap<String, String>,
}

impl RawScenario {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.get(key).map(|s| s.as_str())
    }

    pub fn require(&self, key: &str) -> Result<&str, ConfigError> {
        self.get(key).ok_or_else(|| {
            ConfigError(format!("scenario {:?}: missing field {key:?}", self.name))
        })
    }
}

pub fn parse_text(text: &str, origin: &str) -> Result<Vec<RawScenario>, ConfigError> {
    let mut scenarios: Vec<RawScenario> = Vec::new();
    for (lineno, raw_line) in text.lines().enumerate() {
        let line = raw_line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if let Some(name) = line.strip_prefix('[') {
            let name = name
                .strip_suffix(']')
                .ok_or_else(|| ConfigError(format!("{origin}:{}: unclosed scenario header", lineno + 1)))?
                .trim();
            if name.is_empty() {
                return Err(ConfigError(format!(
                    "{origin}:{}: empty scenario name",
                    lineno + 1
                )));
            }
            scenarios.push(RawScenario {
                name: name.to_string(),
                fields: BTreeMap::new(),
            });
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(ConfigError(format!(
                "{origin}:{}: expected `key = value`, got {line:?}",
                lineno + 1
            )));
        };
        let Some(current) = scenarios.last_mut() else {
            return Err(ConfigError(format!(
                "{origin}:{}: field before any [scenario] header",
                lineno + 1
            )));
        };
        current
            .fields
            .insert(key.trim().to_string(), value.trim().to_string());
    }
    if scenarios.is_empty() {
        return Err(ConfigError(format!("{origin}: no scenarios found")));
    }
    Ok(scenarios)
}

fn scenario_from_json(value: &serde_json::Value, origin: &str) -> Result<RawScenario, ConfigError> {
    let obj = value
        .as_object()
        .ok_or_else(|| ConfigError(format!("{origin}: scenario must be an object")))?;
    let mut name = None;
    let mut fields = BTreeMap::new();
    for (key, v) in obj {
        let text = match v {
            serde_json::Value::String(s) => s.clone(),
            serde_json::Value::Number(n) => n.to_string(),
            serde_json::Value::Bool(b) => b.to_string(),
            other => {
                return Err(ConfigError(format!(
                    "{origin}: field {key:?} has unsupported value {other}"
                )))
            }
        };
        if key == "name" {
            name = Some(text);
        } else {
            fields.insert(key.clone(), text);
        }
    }
    Ok(RawScenario {
        name: name.ok_or_else(|| ConfigError(format!("{origin}: scenario without a name")))?,
        fields,
    })
}

pub fn parse_json(text: &str, origin: &str) -> Result<Vec<RawScenario>, ConfigError> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| ConfigError(format!("{origin}: invalid JSON: {e}")))?;
    let list: Vec<&serde_json::Value> = match &value {
        serde_json::Value::Array(items) => items.iter().collect(),
        serde_json::Value::Object(map) => match map.get("scenarios") {
            Some(serde_json::Value::Array(items)) => items.iter().collect(),
            Some(other) => {
                return Err(ConfigError(format!(
                    "{origin}: \"scenarios\" must be an array, got {other}"
                )))
            }
            None => vec![&value],
        },
        other => {
            return Err(ConfigError(format!(
                "{origin}: expected an object or array, got {other}"
            )))
        }
    };
    if list.is_empty() {
        return Err(ConfigError(format!("{origin}: no scenarios found")));
    }
    list.into_iter()
        .map(|v| scenario_from_json(v, origin))
        .collect()
}

pub fn parse_file(path: &Path) -> Result<Vec<RawScenario>, ConfigError> {
    let origin = path.display().to_string();
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError(format!("{origin}: {e}")))?;
    if path.extension().is_some_and(|e| e == "json") {
        parse_json(&text, &origin)
    } else {
        parse_text(&text, &origin)
    }
}

/// All spec files (`.spec` or `.json`) in a directory, sorted by file name.
pub fn parse_dir(dir: &Path) -> Result<Vec<RawScenario>, ConfigError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| ConfigError(format!("{}: {e}", dir.display())))?;
    let mut paths: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "spec" || e == "json"))
        .collect();
    paths.sort();
    if paths.is_empty() {
        return Err(ConfigError(format!(
            "{}: no .spec or .json files found",
            dir.display()
        )));
    }
    let mut scenarios = Vec::new();
    for path in paths {
        scenarios.extend(parse_file(&path)?);
    }
    Ok(scenarios)
}
