//! Optional `key = value` settings file. Command-line flags win over it.

use std::collections::BTreeMap;
use std::path::Path;
use std::str::FromStr;

use crate::CliError;

#[derive(Debug, Default, Clone)]
pub struct Config {
    values: BTreeMap<String, String>,
}

impl Config {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else { return Ok(Config::default()) };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))?;
        Config::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut values = BTreeMap::new();
        for (no, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() || line.starts_with('[') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", no + 1)))?;
            let v = v.trim().trim_matches('"');
            values.insert(k.trim().replace('-', "_"), v.to_string());
        }
        Ok(Config { values })
    }

    /// The flag if given, else the config value, else `default`.
    pub fn pick<T: FromStr>(&self, flag: Option<T>, key: &str, default: T) -> Result<T, CliError> {
        if let Some(v) = flag {
            return Ok(v);
        }
        match self.values.get(key) {
            Some(raw) => raw.parse().map_err(|_| CliError::Config(format!("bad value {raw:?} for {key}"))),
            None => Ok(default),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_win() {
        let c = Config::parse("# settings\nseed = 7\nmax-rounds=3\nmode = \"approx\"\n").unwrap();
        assert_eq!(c.pick(None, "seed", 0u64).unwrap(), 7);
        assert_eq!(c.pick(Some(9), "seed", 0u64).unwrap(), 9);
        assert_eq!(c.pick(None, "max_rounds", 100usize).unwrap(), 3);
        assert_eq!(c.pick(None, "mode", String::new()).unwrap(), "approx");
        assert_eq!(c.pick(None, "samples", 5usize).unwrap(), 5);
        assert!(c.pick(None, "mode", 0u8).is_err());
        assert!(Config::parse("nonsense").is_err());
    }
}
