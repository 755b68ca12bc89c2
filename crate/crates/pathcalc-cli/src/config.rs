//! Simple `key=value` config files that preset flag defaults; flags given on
//! the command line always win.

use std::collections::HashMap;
use std::path::Path;
use std::str::FromStr;

#[derive(Debug, Default, Clone)]
pub struct Config {
    entries: HashMap<String, String>,
}

fn normalize(key: &str) -> String {
    key.trim().replace('-', "_")
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, String> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path)
            .map_err(|e| format!("cannot read config {}: {e}", path.display()))?;
        let mut entries = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(format!(
                    "config {}:{}: expected key=value, got '{raw}'",
                    path.display(),
                    lineno + 1
                ));
            };
            entries.insert(normalize(key), value.trim().to_string());
        }
        Ok(Config { entries })
    }

    /// Resolve a flag: explicit value, else config entry, else default.
    pub fn resolve<T: FromStr + Clone>(
        &self,
        explicit: &Option<T>,
        key: &str,
        default: T,
    ) -> Result<T, String> {
        if let Some(v) = explicit {
            return Ok(v.clone());
        }
        match self.entries.get(&normalize(key)) {
            None => Ok(default),
            Some(raw) => raw
                .parse::<T>()
                .map_err(|_| format!("config key '{key}': cannot parse '{raw}'")),
        }
    }
}
