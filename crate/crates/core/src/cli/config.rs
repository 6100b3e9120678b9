use std::path::{Path, PathBuf};

use serde::Deserialize;

use super::CliError;

pub const DEFAULT_DIGITS: u32 = 60;
pub const DEFAULT_CUTOFF: u64 = 1_000_000;
pub const DEFAULT_EM_ORDER: u32 = 21;
pub const MIN_DIGITS: u32 = 30;
pub const MIN_CUTOFF: u64 = 1_000;
pub const EM_ORDER_RANGE: std::ops::RangeInclusive<u32> = 5..=21;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    Plain,
    /// tab-separated key=value records, byte-stable across runs
    Machine,
}

/// Every numeric default of the front end lives here.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliConfig {
    pub digits: u32,
    pub cutoff: u64,
    pub em_order: u32,
    pub format: OutputFormat,
    pub cache: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
}

impl Default for CliConfig {
    fn default() -> Self {
        Self {
            digits: DEFAULT_DIGITS,
            cutoff: DEFAULT_CUTOFF,
            em_order: DEFAULT_EM_ORDER,
            format: OutputFormat::Plain,
            cache: None,
            corpus: None,
        }
    }
}

/// Optional TOML file; every key may be omitted.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub digits: Option<u32>,
    pub cutoff: Option<u64>,
    pub em_order: Option<u32>,
    pub format: Option<OutputFormat>,
    pub cache: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

/// Flag values; `None` means not given on the command line.
#[derive(Debug, Default, Clone)]
pub struct Overrides {
    pub digits: Option<u32>,
    pub cutoff: Option<u64>,
    pub em_order: Option<u32>,
    pub format: Option<OutputFormat>,
    pub cache: Option<PathBuf>,
    pub corpus: Option<PathBuf>,
}

impl CliConfig {
    /// Defaults, then the file, then flags.
    pub fn resolve(file: Option<ConfigFile>, flags: Overrides) -> Result<Self, CliError> {
        let file = file.unwrap_or_default();
        let d = Self::default();
        let cfg = Self {
            digits: flags.digits.or(file.digits).unwrap_or(d.digits),
            cutoff: flags.cutoff.or(file.cutoff).unwrap_or(d.cutoff),
            em_order: flags.em_order.or(file.em_order).unwrap_or(d.em_order),
            format: flags.format.or(file.format).unwrap_or(d.format),
            cache: flags.cache.or(file.cache),
            corpus: flags.corpus.or(file.corpus),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.digits < MIN_DIGITS {
            return Err(CliError::Input(format!("digits = {} is below {MIN_DIGITS}", self.digits)));
        }
        if self.cutoff < MIN_CUTOFF {
            return Err(CliError::Input(format!("cutoff = {} is below {MIN_CUTOFF}", self.cutoff)));
        }
        if !EM_ORDER_RANGE.contains(&self.em_order) {
            return Err(CliError::Input(format!("em-order = {} outside 5..=21", self.em_order)));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file: ConfigFile = toml::from_str("digits = 80\nem_order = 9\nformat = \"machine\"").unwrap();
        let flags = Overrides { digits: Some(40), ..Default::default() };
        let c = CliConfig::resolve(Some(file), flags).unwrap();
        assert_eq!((c.digits, c.em_order, c.cutoff, c.format), (40, 9, DEFAULT_CUTOFF, OutputFormat::Machine));
    }

    #[test]
    fn invariants() {
        assert!(CliConfig::default().validate().is_ok());
        for bad in [
            Overrides { digits: Some(29), ..Default::default() },
            Overrides { cutoff: Some(999), ..Default::default() },
            Overrides { em_order: Some(4), ..Default::default() },
            Overrides { em_order: Some(22), ..Default::default() },
        ] {
            assert!(CliConfig::resolve(None, bad).is_err());
        }
        assert!(toml::from_str::<ConfigFile>("digit = 3").is_err());
    }
}
