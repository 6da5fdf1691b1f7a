use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use torelli_sieve::finite::{Budget, CensusMethod};
use torelli_sieve::walk::{Classifier, Representation};

use crate::CliError;

/// Everything a run depends on. Loaded from TOML, then adjusted by
/// command-line overrides; the hash covers the adjusted value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub genus: usize,
    pub representation: Representation,
    /// Explicit generator words; the standard set is used when absent.
    pub words: Option<Vec<String>>,
    /// Add missing inverses to an explicit word list.
    pub symmetrize: bool,
    /// Add the identity to an explicit word list.
    pub include_identity: bool,
    pub attest_odd_relation: bool,
    pub max_steps: usize,
    pub stride: usize,
    pub walks: u64,
    pub seed: u64,
    pub classifiers: Vec<Classifier>,
    pub bootstrap_reps: usize,
    pub primes: Vec<u64>,
    pub census: CensusConfig,
    pub gap: GapConfig,
    pub sieve: SieveConfig,
    pub budget: BudgetConfig,
    pub output: OutputConfig,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            genus: 3,
            representation: Representation::Prym,
            words: None,
            symmetrize: true,
            include_identity: true,
            attest_odd_relation: false,
            max_steps: 100,
            stride: 5,
            walks: 20_000,
            seed: 1,
            classifiers: vec![Classifier::Reducible],
            bootstrap_reps: 1000,
            primes: vec![3, 5, 7],
            census: CensusConfig::default(),
            gap: GapConfig::default(),
            sieve: SieveConfig::default(),
            budget: BudgetConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CensusConfig {
    /// Half-rank: the group is `Sp(2n, F_p)`.
    pub n: usize,
    pub p: u64,
    pub projective: bool,
    pub method: CensusMethod,
    pub samples: u64,
}

impl Default for CensusConfig {
    fn default() -> Self {
        Self { n: 2, p: 3, projective: false, method: CensusMethod::Exhaustive, samples: 100_000 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GapConfig {
    pub p: u64,
    pub tolerance: f64,
}

impl Default for GapConfig {
    fn default() -> Self {
        Self { p: 3, tolerance: 1e-6 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SieveConfig {
    pub exhaustive_up_to: u64,
    pub census_samples: u64,
    pub spectral_gap: bool,
}

impl Default for SieveConfig {
    fn default() -> Self {
        Self { exhaustive_up_to: 100_000, census_samples: 100_000, spectral_gap: true }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct BudgetConfig {
    pub exhaustive: u64,
    pub bfs: u64,
    pub spectral: u64,
    pub recombination: u64,
}

impl Default for BudgetConfig {
    fn default() -> Self {
        let b = Budget::default();
        Self { exhaustive: b.exhaustive, bfs: b.bfs, spectral: b.spectral, recombination: 1 << 20 }
    }
}

impl BudgetConfig {
    pub fn finite(&self) -> Budget {
        Budget { exhaustive: self.exhaustive, bfs: self.bfs, spectral: self.spectral }
    }
}

/// File names, relative to the output directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub walk_csv: String,
    pub walk_json: String,
    pub census_csv: String,
    pub gap_json: String,
    pub sieve_txt: String,
    pub sieve_json: String,
    pub rep_dump: String,
}

impl Default for OutputConfig {
    fn default() -> Self {
        Self {
            walk_csv: "walk.csv".into(),
            walk_json: "walk.json".into(),
            census_csv: "census.csv".into(),
            gap_json: "gap.json".into(),
            sieve_txt: "sieve.txt".into(),
            sieve_json: "sieve.json".into(),
            rep_dump: "rep_dump.txt".into(),
        }
    }
}

impl ExperimentConfig {
    pub fn load(path: Option<&Path>) -> Result<Self, CliError> {
        let Some(path) = path else {
            return Ok(Self::default());
        };
        let text = std::fs::read_to_string(path).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        toml::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    pub fn validate(&self) -> Result<(), CliError> {
        let min_genus = match self.representation {
            Representation::Homology => 2,
            Representation::Prym => 3,
        };
        if self.genus < min_genus {
            return Err(CliError::Config(format!(
                "genus {} is too small for the {} representation (need >= {min_genus})",
                self.genus, self.representation
            )));
        }
        if self.max_steps == 0 || self.walks == 0 {
            return Err(CliError::Config("max_steps and walks must be >= 1".into()));
        }
        if self.stride == 0 || self.stride > self.max_steps {
            return Err(CliError::Config(format!("stride must be in 1..={}", self.max_steps)));
        }
        if self.primes.is_empty() {
            return Err(CliError::Config("primes must be nonempty".into()));
        }
        if self.gap.tolerance.is_nan() || self.gap.tolerance <= 0.0 {
            return Err(CliError::Config("gap tolerance must be positive".into()));
        }
        Ok(())
    }

    /// SHA-256 of the canonical JSON form, hex encoded.
    pub fn hash(&self) -> String {
        let canonical = serde_json::to_vec(self).expect("config serializes");
        hex::encode(Sha256::digest(&canonical))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_files_fill_defaults() {
        let c: ExperimentConfig = toml::from_str("genus = 4\nclassifiers = [\"reducible\", \"root-of-unity\"]\n[census]\np = 5\n").unwrap();
        assert_eq!(c.genus, 4);
        assert_eq!(c.census.p, 5);
        assert_eq!(c.census.n, 2);
        assert_eq!(c.classifiers.len(), 2);
        assert_eq!(c.walks, 20_000);
    }

    #[test]
    fn unknown_keys_are_rejected() {
        assert!(toml::from_str::<ExperimentConfig>("genuss = 3").is_err());
    }

    #[test]
    fn hash_tracks_content() {
        let a = ExperimentConfig::default();
        let mut b = a.clone();
        assert_eq!(a.hash(), b.hash());
        b.seed = 2;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }

    #[test]
    fn prym_needs_genus_three() {
        let c = ExperimentConfig { genus: 2, ..Default::default() };
        assert!(c.validate().is_err());
        let c = ExperimentConfig { genus: 2, representation: Representation::Homology, ..Default::default() };
        assert!(c.validate().is_ok());
    }
}
