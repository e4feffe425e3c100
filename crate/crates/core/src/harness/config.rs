use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::{usage, CliError};

/// Recognized keys and their defaults.
pub const KEYS: &[(&str, &str)] = &[
    ("delta", "0.75"),
    ("grid", "101"),
    ("horizon", "30"),
    ("inflation", "100"),
    ("kappa", "3"),
    ("n_list", "2,5,10,100,1000"),
    ("nodes", "32"),
    ("radii", "10"),
    ("samples", "1000"),
    ("seed", "0"),
    ("tau", "1"),
    ("tol", "1e-10"),
    ("truncation", "200"),
    ("weights", "good:10:1"),
    ("x", ""),
    ("generator", "loggeo:2:2"),
];

/// Flat `key = value` text; `#` starts a comment.
pub fn parse_config_text(text: &str) -> Result<BTreeMap<String, String>, CliError> {
    let mut map = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return usage(format!("config line {}: expected key = value", lineno + 1));
        };
        let key = key.trim();
        if !KEYS.iter().any(|(k, _)| *k == key) {
            return usage(format!("config line {}: unknown key {key:?}", lineno + 1));
        }
        map.insert(key.to_string(), value.trim().to_string());
    }
    Ok(map)
}

/// Effective settings of one run: defaults, then the config file, then
/// command line values.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    values: BTreeMap<String, String>,
    pub out: Option<PathBuf>,
    pub svg: bool,
}

impl RunConfig {
    pub fn new(
        file: Option<&Path>,
        overrides: &[(&str, String)],
        out: Option<PathBuf>,
        svg: bool,
    ) -> Result<Self, CliError> {
        let mut values: BTreeMap<String, String> =
            KEYS.iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        if let Some(path) = file {
            let text = std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
            values.extend(parse_config_text(&text)?);
        }
        for (k, v) in overrides {
            if !values.contains_key(*k) {
                return usage(format!("unknown setting {k:?}"));
            }
            values.insert(k.to_string(), v.clone());
        }
        let cfg = RunConfig { values, out, svg };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn defaults() -> Self {
        Self::new(None, &[], None, false).expect("defaults are valid")
    }

    fn validate(&self) -> Result<(), CliError> {
        self.seed()?;
        self.horizon()?;
        for key in ["tol", "inflation"] {
            if !(self.float(key)? > 0.0) {
                return usage(format!("{key} must be positive"));
            }
        }
        if self.nodes()? < 8 {
            return usage("nodes must be at least 8");
        }
        self.uint("truncation")?;
        self.uint("grid")?;
        self.uint("samples")?;
        self.uint("radii")?;
        self.float("tau")?;
        self.float("kappa")?;
        self.float("delta")?;
        Ok(())
    }

    pub fn get(&self, key: &str) -> &str {
        self.values.get(key).map(String::as_str).unwrap_or("")
    }

    pub fn float(&self, key: &str) -> Result<f64, CliError> {
        let v = self.get(key);
        match v.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(x),
            _ => usage(format!("{key} = {v:?} is not a finite number")),
        }
    }

    pub fn uint(&self, key: &str) -> Result<u64, CliError> {
        let v = self.get(key);
        v.parse::<u64>().map_err(|_| CliError::Usage(format!("{key} = {v:?} is not a non-negative integer")))
    }

    pub fn seed(&self) -> Result<u64, CliError> {
        self.uint("seed")
    }

    pub fn horizon(&self) -> Result<usize, CliError> {
        let h = self.uint("horizon")? as usize;
        if h == 0 {
            return usage("horizon must be at least 1");
        }
        Ok(h)
    }

    pub fn tol(&self) -> Result<f64, CliError> {
        self.float("tol")
    }

    pub fn nodes(&self) -> Result<usize, CliError> {
        Ok(self.uint("nodes")? as usize)
    }

    /// `key = value` lines for every setting that can change the CSV.
    pub fn canonical(&self) -> String {
        self.values.iter().map(|(k, v)| format!("{k} = {v}\n")).collect()
    }

    /// SHA-256 of [`RunConfig::canonical`], in hex.
    pub fn hash(&self) -> String {
        Sha256::digest(self.canonical().as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}
