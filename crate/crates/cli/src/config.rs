use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use todolens_core::classify::lexical::Hyperparams;
use todolens_core::miner::MiningConfig;
use todolens_core::stats::DEFAULT_ALPHA;

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Config {
    pub mining: MiningConfig,
    pub classifier: ClassifierConfig,
    pub lifecycle: LifecycleConfig,
    pub report: ReportConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ClassifierConfig {
    pub model: String,
    pub min_content_tokens: usize,
    pub bridge_cmd: Option<String>,
    pub bridge_timeout_secs: u64,
    pub lexical: Hyperparams,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            model: "pos".into(),
            min_content_tokens: 4,
            bridge_cmd: None,
            bridge_timeout_secs: 30,
            lexical: Hyperparams::default(),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LifecycleConfig {
    pub overrides: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ReportConfig {
    pub format: String,
    pub alpha: f64,
}

impl Default for ReportConfig {
    fn default() -> Self {
        ReportConfig {
            format: "csv".into(),
            alpha: DEFAULT_ALPHA,
        }
    }
}

impl Config {
    pub fn load(path: Option<&Path>) -> anyhow::Result<Config> {
        let Some(path) = path else {
            return Ok(Config::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        let cfg: Config = toml::from_str(&text).map_err(|e| anyhow::anyhow!("{}: {e}", path.display()))?;
        cfg.mining.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_file_keeps_defaults() {
        let cfg: Config = toml::from_str("[mining]\ndedup = false\n[classifier.lexical]\nepochs = 5\n").unwrap();
        assert!(!cfg.mining.dedup);
        assert!(cfg.mining.drop_merge_commits);
        assert_eq!(cfg.classifier.lexical.epochs, 5);
        assert_eq!(cfg.classifier.lexical.seed, Hyperparams::default().seed);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(toml::from_str::<Config>("[mining]\nbogus = 1\n").is_err());
        assert!(toml::from_str::<Config>("[other]\n").is_err());
    }
}
