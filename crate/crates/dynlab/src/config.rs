//! Run configuration: an optional TOML file, overridden field by field by
//! command-line flags. The environment only ever supplies the factor budget
//! (through the flag's `env` binding).

use std::path::Path;

use dynlab_core::orbit::DEFAULT_DIGIT_CAP;
use dynlab_core::par::Exec;
use dynlab_core::primeledger::{FactorBudget, LedgerMode};
use dynlab_core::ratmap::DEFAULT_TOWER_BUDGET;
use serde::{Deserialize, Serialize};

use crate::random::DEFAULT_SEED;
use crate::suites::SuiteConfig;

pub const FACTOR_BUDGET_ENV: &str = "DYNLAB_FACTOR_BUDGET_MS";
pub const DEFAULT_FACTOR_BUDGET_MS: u64 = 500;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
    Text,
}

/// Every field is optional so that a file and the flags can be layered.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields, rename_all = "kebab-case")]
pub struct RunConfig {
    pub map: Option<String>,
    /// Declaration such as "w: w^2+w+1".
    pub field: Option<String>,
    pub x0: Option<String>,
    pub steps: Option<usize>,
    #[serde(rename = "Nmax")]
    pub n_max: Option<usize>,
    #[serde(rename = "M")]
    pub m: Option<usize>,
    pub mode: Option<LedgerMode>,
    pub suite: Option<String>,
    pub format: Option<Format>,
    pub factor_budget_ms: Option<u64>,
    pub digit_cap: Option<usize>,
    pub tower_budget: Option<usize>,
    pub allow_unknown: Option<bool>,
    pub seed: Option<u64>,
    pub sequential: Option<bool>,
}

macro_rules! layer {
    ($base:ident, $top:ident, $($f:ident),*) => {
        RunConfig { $($f: $top.$f.or($base.$f)),* }
    };
}

impl RunConfig {
    pub fn from_toml(text: &str) -> Result<Self, toml::de::Error> {
        toml::from_str(text)
    }

    pub fn load(path: &Path) -> Result<Self, String> {
        let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
        Self::from_toml(&text).map_err(|e| format!("{}: {e}", path.display()))
    }

    /// Fields set in `top` win.
    pub fn overlay(self, top: RunConfig) -> RunConfig {
        let base = self;
        layer!(
            base,
            top,
            map,
            field,
            x0,
            steps,
            n_max,
            m,
            mode,
            suite,
            format,
            factor_budget_ms,
            digit_cap,
            tower_budget,
            allow_unknown,
            seed,
            sequential
        )
    }

    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn mode(&self) -> LedgerMode {
        self.mode.unwrap_or_default()
    }

    pub fn budget(&self) -> FactorBudget {
        FactorBudget::from_millis(self.factor_budget_ms.unwrap_or(DEFAULT_FACTOR_BUDGET_MS))
    }

    pub fn digit_cap(&self) -> usize {
        self.digit_cap.unwrap_or(DEFAULT_DIGIT_CAP)
    }

    pub fn exec(&self) -> Exec {
        if self.sequential.unwrap_or(false) {
            Exec::Sequential
        } else {
            Exec::Parallel
        }
    }

    pub fn suite_config(&self) -> SuiteConfig {
        SuiteConfig {
            budget: self.budget(),
            digit_cap: self.digit_cap(),
            tower_budget: self.tower_budget.unwrap_or(DEFAULT_TOWER_BUDGET),
            exec: self.exec(),
            seed: self.seed.unwrap_or(DEFAULT_SEED),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flags_override_file() {
        let file =
            RunConfig::from_toml("map = \"t^2+1\"\nx0 = \"1\"\nNmax = 8\nmode = \"projective\"\n")
                .unwrap();
        let flags = RunConfig {
            n_max: Some(12),
            ..Default::default()
        };
        let c = file.overlay(flags);
        assert_eq!(c.map.as_deref(), Some("t^2+1"));
        assert_eq!(c.n_max, Some(12));
        assert_eq!(c.mode(), LedgerMode::Projective);
        assert_eq!(c.format(), Format::Json);
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(RunConfig::from_toml("mapp = \"t\"").is_err());
    }
}
