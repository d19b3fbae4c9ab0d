//! Flat `key = value` config files. Command-line flags take precedence.
//!
//! Keys: `format`, `out`, `seed`, `tolerance`, `strict`. Blank lines and
//! lines starting with `#` are ignored.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::ValueEnum;

use crate::table::Format;

const KEYS: [&str; 5] = ["format", "out", "seed", "tolerance", "strict"];

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Config {
    pub format: Option<Format>,
    pub out: Option<PathBuf>,
    pub seed: Option<u64>,
    pub tolerance: Option<f64>,
    pub strict: Option<bool>,
}

impl Config {
    pub fn parse(text: &str) -> Result<Config, String> {
        let mut seen = BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| format!("config line {}: expected key = value", i + 1))?;
            let (k, v) = (k.trim(), v.trim());
            if !KEYS.contains(&k) {
                return Err(format!("config line {}: unknown key '{k}'", i + 1));
            }
            if seen.insert(k.to_string(), v.to_string()).is_some() {
                return Err(format!("config line {}: duplicate key '{k}'", i + 1));
            }
        }
        let bad = |k: &str, v: &str| format!("config key '{k}': invalid value '{v}'");
        let mut c = Config::default();
        for (k, v) in &seen {
            match k.as_str() {
                "format" => c.format = Some(Format::from_str(v, true).map_err(|_| bad(k, v))?),
                "out" => c.out = Some(PathBuf::from(v)),
                "seed" => c.seed = Some(v.parse().map_err(|_| bad(k, v))?),
                "tolerance" => {
                    let t: f64 = v.parse().map_err(|_| bad(k, v))?;
                    if !(t >= 0.0 && t.is_finite()) {
                        return Err(bad(k, v));
                    }
                    c.tolerance = Some(t);
                }
                "strict" => c.strict = Some(v.parse().map_err(|_| bad(k, v))?),
                _ => unreachable!(),
            }
        }
        Ok(c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_known_keys() {
        let c = Config::parse("# defaults\nformat = json\nseed=7\n\nstrict = true\ntolerance = 0.01\n").unwrap();
        assert_eq!(c.format, Some(Format::Json));
        assert_eq!(c.seed, Some(7));
        assert_eq!(c.strict, Some(true));
        assert_eq!(c.tolerance, Some(0.01));
        assert_eq!(c.out, None);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Config::parse("colour = red").is_err());
        assert!(Config::parse("seed = x").is_err());
        assert!(Config::parse("seed = 1\nseed = 2").is_err());
        assert!(Config::parse("format").is_err());
        assert!(Config::parse("tolerance = -1").is_err());
    }
}
