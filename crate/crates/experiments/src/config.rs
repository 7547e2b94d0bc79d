//! Run configuration: a flat `key = value` file with `#` comments, overridable
//! from the command line.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Identities,
    Cuspidality,
    NormEquiv,
    Vanishing,
    Stabilize,
    OrbitalBound,
    Volumes,
    MonteCarlo,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Identities,
        Suite::Cuspidality,
        Suite::NormEquiv,
        Suite::Vanishing,
        Suite::Stabilize,
        Suite::OrbitalBound,
        Suite::Volumes,
        Suite::MonteCarlo,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Cuspidality => "cuspidality",
            Suite::NormEquiv => "norm_equiv",
            Suite::Vanishing => "vanishing",
            Suite::Stabilize => "stabilize",
            Suite::OrbitalBound => "orbital_bound",
            Suite::Volumes => "volumes",
            Suite::MonteCarlo => "mc",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| ConfigError::UnknownSuite(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunMode {
    #[default]
    Exact,
    Mc,
}

impl FromStr for RunMode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(RunMode::Exact),
            "mc" => Ok(RunMode::Mc),
            _ => Err(ConfigError::BadValue("mode".into(), s.into())),
        }
    }
}

impl fmt::Display for RunMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RunMode::Exact => "exact",
            RunMode::Mc => "mc",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConfigError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("unknown key `{0}`")]
    UnknownKey(String),
    #[error("line {0}: expected `key = value`")]
    Syntax(usize),
    #[error("bad value for `{0}`: `{1}`")]
    BadValue(String, String),
    #[error("`{key}` = {value} is outside the supported range {range}")]
    OutOfRange { key: &'static str, value: i64, range: &'static str },
    #[error("exact scans are implemented for n = 2 only (got {0})")]
    ScaleLimit(usize),
}

/// Every knob of a run. Keys in the file format match the field names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub suite: Suite,
    pub n: usize,
    pub ell: u8,
    pub seed: u64,
    /// Case count for the randomized identity checks.
    pub samples: usize,
    /// Translates per function in the cuspidality suite.
    pub translates: usize,
    pub mc_draws: usize,
    pub i_max: i64,
    pub k_max: i64,
    /// Deepest refinement level for exact integration.
    pub j_max: i64,
    /// Largest valuation spread of sampled elements.
    pub precision: i64,
    pub out: PathBuf,
    pub cache: Option<PathBuf>,
    pub mode: RunMode,
    pub lie: bool,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            suite: Suite::Identities,
            n: 2,
            ell: 2,
            seed: 1,
            samples: 500,
            translates: 100,
            mc_draws: 10_000,
            i_max: 4,
            k_max: 3,
            j_max: 6,
            precision: 12,
            out: PathBuf::from("out"),
            cache: None,
            mode: RunMode::Exact,
            lie: false,
        }
    }
}

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T, ConfigError> {
    value.parse().map_err(|_| ConfigError::BadValue(key.into(), value.into()))
}

fn parse_bool(key: &str, value: &str) -> Result<bool, ConfigError> {
    match value {
        "true" | "1" | "yes" => Ok(true),
        "false" | "0" | "no" => Ok(false),
        _ => Err(ConfigError::BadValue(key.into(), value.into())),
    }
}

impl ExperimentConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), ConfigError> {
        match key {
            "suite" => self.suite = value.parse()?,
            "n" => self.n = parse(key, value)?,
            "ell" => self.ell = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "samples" => self.samples = parse(key, value)?,
            "translates" => self.translates = parse(key, value)?,
            "mc_draws" => self.mc_draws = parse(key, value)?,
            "i_max" => self.i_max = parse(key, value)?,
            "k_max" => self.k_max = parse(key, value)?,
            "j_max" => self.j_max = parse(key, value)?,
            "precision" => self.precision = parse(key, value)?,
            "out" => self.out = PathBuf::from(value),
            "cache" => self.cache = (!value.is_empty()).then(|| PathBuf::from(value)),
            "mode" => self.mode = value.parse()?,
            "lie" => self.lie = parse_bool(key, value)?,
            _ => return Err(ConfigError::UnknownKey(key.into())),
        }
        Ok(())
    }

    /// Applies a config file on top of `self`.
    pub fn apply_file(&mut self, text: &str) -> Result<(), ConfigError> {
        for (no, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or(ConfigError::Syntax(no + 1))?;
            self.set(k.trim(), v.trim())?;
        }
        Ok(())
    }

    pub fn from_file_text(text: &str) -> Result<Self, ConfigError> {
        let mut c = Self::default();
        c.apply_file(text)?;
        Ok(c)
    }

    /// The file form; `from_file_text(to_file_text())` gives back `self`.
    pub fn to_file_text(&self) -> String {
        let mut s = String::new();
        let mut kv = |k: &str, v: String| {
            s.push_str(k);
            s.push_str(" = ");
            s.push_str(&v);
            s.push('\n');
        };
        kv("suite", self.suite.to_string());
        kv("n", self.n.to_string());
        kv("ell", self.ell.to_string());
        kv("seed", self.seed.to_string());
        kv("samples", self.samples.to_string());
        kv("translates", self.translates.to_string());
        kv("mc_draws", self.mc_draws.to_string());
        kv("i_max", self.i_max.to_string());
        kv("k_max", self.k_max.to_string());
        kv("j_max", self.j_max.to_string());
        kv("precision", self.precision.to_string());
        kv("out", self.out.display().to_string());
        kv("cache", self.cache.as_ref().map(|c| c.display().to_string()).unwrap_or_default());
        kv("mode", self.mode.to_string());
        kv("lie", self.lie.to_string());
        s
    }

    /// Desk-scale limits.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.n != 2 {
            return Err(ConfigError::ScaleLimit(self.n));
        }
        let check = |key, value: i64, lo: i64, hi: i64, range| {
            if value < lo || value > hi {
                Err(ConfigError::OutOfRange { key, value, range })
            } else {
                Ok(())
            }
        };
        if self.ell != 2 && self.ell != 3 {
            return Err(ConfigError::OutOfRange { key: "ell", value: self.ell as i64, range: "{2, 3}" });
        }
        check("i_max", self.i_max, 0, 5, "0..=5")?;
        check("k_max", self.k_max, 0, 6, "0..=6")?;
        check("j_max", self.j_max, 1, 12, "1..=12")?;
        check("precision", self.precision, 1, 24, "1..=24")?;
        check("samples", self.samples as i64, 0, 100_000, "0..=100000")?;
        check("translates", self.translates as i64, 0, 10_000, "0..=10000")?;
        check("mc_draws", self.mc_draws as i64, 2, 1_000_000, "2..=1000000")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn file_round_trip() {
        let mut c = ExperimentConfig { suite: Suite::Volumes, seed: 9, lie: true, ..Default::default() };
        c.cache = Some(PathBuf::from("/tmp/cache"));
        assert_eq!(ExperimentConfig::from_file_text(&c.to_file_text()).unwrap(), c);
        let d = ExperimentConfig::default();
        assert_eq!(ExperimentConfig::from_file_text(&d.to_file_text()).unwrap(), d);
    }

    #[test]
    fn comments_and_errors() {
        let c = ExperimentConfig::from_file_text("# header\nsuite = mc  # trailing\n\nseed=4\n").unwrap();
        assert_eq!((c.suite, c.seed), (Suite::MonteCarlo, 4));
        assert_eq!(ExperimentConfig::from_file_text("seed 4"), Err(ConfigError::Syntax(1)));
        assert_eq!(ExperimentConfig::from_file_text("colour = red"), Err(ConfigError::UnknownKey("colour".into())));
        assert!(ExperimentConfig { n: 3, ..Default::default() }.validate().is_err());
        assert!(ExperimentConfig { i_max: 9, ..Default::default() }.validate().is_err());
    }
}
