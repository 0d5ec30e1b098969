//! `key = value` configuration files.
//!
//! Keys are the long flag names without dashes (`c`, `mass`, `paths`, …).
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConfigFile {
    values: BTreeMap<String, String>,
}

impl ConfigFile {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!("config line {}: expected key = value, got {raw:?}", i + 1)));
            };
            let key = key.trim().trim_start_matches("--").replace('_', "-");
            if key.is_empty() {
                return Err(CliError::Usage(format!("config line {}: empty key", i + 1)));
            }
            values.insert(key, value.trim().to_string());
        }
        Ok(Self { values })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read config {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn raw(&self, key: &str) -> Option<&str> {
        self.values.get(key).map(String::as_str)
    }

    pub fn get<T: FromStr>(&self, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        self.raw(key)
            .map(|v| v.parse().map_err(|e| CliError::Usage(format!("config key {key}: cannot parse {v:?}: {e}"))))
            .transpose()
    }

    /// Flag value if given, else the file's value.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str) -> Result<Option<T>, CliError>
    where
        T::Err: std::fmt::Display,
    {
        match flag {
            Some(v) => Ok(Some(v)),
            None => self.get(key),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_pairs_and_comments() {
        let cfg = ConfigFile::parse("# bench\nc = 3\n\npaths=100\n--seed = 9\nbase_cdf = f.csv\n").unwrap();
        assert_eq!(cfg.get::<f64>("c").unwrap(), Some(3.0));
        assert_eq!(cfg.get::<usize>("paths").unwrap(), Some(100));
        assert_eq!(cfg.get::<u64>("seed").unwrap(), Some(9));
        assert_eq!(cfg.raw("base-cdf"), Some("f.csv"));
        assert_eq!(cfg.get::<f64>("mass").unwrap(), None);
    }

    #[test]
    fn flag_wins_over_file() {
        let cfg = ConfigFile::parse("c = 3").unwrap();
        assert_eq!(cfg.pick(Some(5.0), "c").unwrap(), Some(5.0));
        assert_eq!(cfg.pick(None::<f64>, "c").unwrap(), Some(3.0));
    }

    #[test]
    fn malformed_lines() {
        assert!(ConfigFile::parse("c 3").is_err());
        assert!(ConfigFile::parse("= 3").is_err());
        assert!(ConfigFile::parse("c = x").unwrap().get::<f64>("c").is_err());
    }
}
