//! Pipeline configuration: one JSON document drives every command.
//!
//! A single master seed fans out to named substreams (data, svm, mso,
//! verify), so rerunning any command with the same config is byte-identical.
//! `--set key=value` overrides apply to the raw JSON before validation.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use wforge_core::features::FeatureSet;
use wforge_core::mso::MsoConfig;
use wforge_core::pauli::PauliString;
use wforge_core::rfe::RfeConfig;
use wforge_core::rng::SeedFanout;
use wforge_core::statesets::TargetKind;
use wforge_core::svm::SvmConfig;
use wforge_core::witness::mermin_feature_subset;

use crate::CliError;

/// Which Pauli strings to train over.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FeatureChoice {
    /// All `4^N` strings except the identity.
    Full,
    /// The non-identity terms of the stabilizer GHZ witness.
    #[default]
    Mermin,
    /// An explicit list of label strings.
    Explicit(Vec<String>),
    /// Labels read from a file, one per line.
    FromFile(PathBuf),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainingSection {
    pub extras_per_eigenstate: usize,
    pub sigma: f64,
    pub entangled_count: usize,
    pub entangled_p_max: f64,
}

impl Default for TrainingSection {
    fn default() -> Self {
        TrainingSection {
            extras_per_eigenstate: 5,
            sigma: 0.05,
            entangled_count: 1000,
            entangled_p_max: 0.25,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RfeSection {
    pub target_term_count: Option<usize>,
    pub tolerance_floor: Option<f64>,
    pub max_candidates_per_level: Option<usize>,
    pub certificate_samples: usize,
    pub certificate_alpha: f64,
}

impl Default for RfeSection {
    fn default() -> Self {
        RfeSection {
            target_term_count: None,
            tolerance_floor: None,
            max_candidates_per_level: None,
            certificate_samples: 1000,
            certificate_alpha: 0.1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct VerifySection {
    pub separable_count: usize,
    pub entangled_count: usize,
    pub alpha: f64,
    /// Upper end of the entangled Werner grid. `None` picks
    /// `min(0.25, p* - 0.001)` from the witness's own noise tolerance.
    pub p_max: Option<f64>,
}

impl Default for VerifySection {
    fn default() -> Self {
        VerifySection {
            separable_count: 10_000,
            entangled_count: 10_000,
            alpha: 0.1,
            p_max: None,
        }
    }
}

/// The full pipeline configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub n_qubits: usize,
    pub target: TargetKind,
    #[serde(default)]
    pub features: FeatureChoice,
    #[serde(default)]
    pub training: TrainingSection,
    #[serde(default)]
    pub svm: SvmConfig,
    #[serde(default)]
    pub mso: MsoConfig,
    #[serde(default)]
    pub rfe: RfeSection,
    #[serde(default)]
    pub verification: VerifySection,
    pub seed: Option<u64>,
    #[serde(default = "default_output_dir")]
    pub output_dir: PathBuf,
}

fn default_output_dir() -> PathBuf {
    PathBuf::from("wforge-run")
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            n_qubits: 3,
            target: TargetKind::Ghz,
            features: FeatureChoice::default(),
            training: TrainingSection::default(),
            svm: SvmConfig::default(),
            mso: MsoConfig::default(),
            rfe: RfeSection::default(),
            verification: VerifySection::default(),
            seed: None,
            output_dir: default_output_dir(),
        }
    }
}

impl PipelineConfig {
    /// Load from an optional file, apply `--set` overrides and CLI flags,
    /// then validate.
    pub fn resolve(
        path: Option<&Path>,
        overrides: &[String],
        seed: Option<u64>,
        output: Option<&Path>,
    ) -> Result<Self, CliError> {
        let mut value = match path {
            Some(p) => {
                let text = std::fs::read_to_string(p).map_err(|e| {
                    CliError::config(format!("cannot read config {}: {e}", p.display()))
                })?;
                serde_json::from_str::<serde_json::Value>(&text)
                    .map_err(|e| CliError::config(format!("config is not valid JSON: {e}")))?
            }
            None => serde_json::to_value(PipelineConfig::default()).expect("default serializes"),
        };
        for entry in overrides {
            apply_override(&mut value, entry)?;
        }
        let mut config: PipelineConfig = serde_json::from_value(value)
            .map_err(|e| CliError::config(format!("invalid config: {e}")))?;
        if let Some(s) = seed {
            config.seed = Some(s);
        }
        if let Some(dir) = output {
            config.output_dir = dir.to_path_buf();
        }
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.seed.is_none() {
            return Err(CliError::config(
                "a master seed is mandatory: set \"seed\" in the config or pass --seed",
            ));
        }
        if !(2..=6).contains(&self.n_qubits) {
            return Err(CliError::config("n_qubits must be between 2 and 6"));
        }
        if !(0.0 < self.training.entangled_p_max && self.training.entangled_p_max < 1.0) {
            return Err(CliError::config("training.entangled_p_max must be in (0, 1)"));
        }
        if self.training.entangled_count < 1 {
            return Err(CliError::config("training.entangled_count must be >= 1"));
        }
        if self.verification.alpha <= 0.0 {
            return Err(CliError::config("verification.alpha must be > 0"));
        }
        self.svm
            .validate()
            .map_err(|e| CliError::config(format!("svm: {e}")))?;
        self.mso
            .validate()
            .map_err(|e| CliError::config(format!("mso: {e}")))?;
        Ok(())
    }

    pub fn fanout(&self) -> SeedFanout {
        SeedFanout::new(self.seed.expect("validated"))
    }

    /// SVM config with its seed taken from the master fanout.
    pub fn svm_config(&self) -> SvmConfig {
        let mut cfg = self.svm.clone();
        cfg.seed = self.fanout().derived_seed("svm");
        cfg
    }

    /// MSO config with its seed taken from the master fanout.
    pub fn mso_config(&self) -> MsoConfig {
        let mut cfg = self.mso.clone();
        cfg.seed = self.fanout().derived_seed("mso");
        cfg
    }

    pub fn rfe_config(&self) -> RfeConfig {
        RfeConfig {
            target_term_count: self.rfe.target_term_count,
            tolerance_floor: self.rfe.tolerance_floor,
            svm: self.svm_config(),
            mso: self.mso_config(),
            max_candidates_per_level: self.rfe.max_candidates_per_level,
            certificate_samples: self.rfe.certificate_samples,
            certificate_alpha: self.rfe.certificate_alpha,
        }
    }

    /// The training feature set (identity excluded).
    pub fn feature_set(&self) -> Result<FeatureSet, CliError> {
        let n = self.n_qubits;
        let set = match &self.features {
            FeatureChoice::Full => {
                let strings: Vec<PauliString> = wforge_core::all_strings(n)
                    .into_iter()
                    .filter(|s| !s.is_identity())
                    .collect();
                FeatureSet::new(strings).map_err(CliError::numerical)?
            }
            FeatureChoice::Mermin => mermin_feature_subset(n).map_err(CliError::numerical)?,
            FeatureChoice::Explicit(labels) => parse_labels(labels.iter().map(|s| s.as_str()), n)?,
            FeatureChoice::FromFile(path) => {
                let text = std::fs::read_to_string(path).map_err(|e| {
                    CliError::config(format!("cannot read feature file {}: {e}", path.display()))
                })?;
                parse_labels(
                    text.lines().map(|l| l.trim()).filter(|l| !l.is_empty()),
                    n,
                )?
            }
        };
        Ok(set)
    }

    /// SHA-256 digest of the effective configuration. The output directory
    /// is excluded: the same experiment digests identically wherever it runs.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut logical = self.clone();
        logical.output_dir = PathBuf::new();
        let canonical = serde_json::to_string(&logical).expect("config serializes");
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        format!("{:x}", hasher.finalize())
    }
}

fn parse_labels<'a>(
    labels: impl Iterator<Item = &'a str>,
    n: usize,
) -> Result<FeatureSet, CliError> {
    let mut strings = Vec::new();
    for label in labels {
        let s: PauliString = label
            .parse()
            .map_err(|e| CliError::config(format!("bad feature '{label}': {e}")))?;
        if s.num_qubits() != n {
            return Err(CliError::config(format!(
                "feature '{label}' does not have {n} symbols"
            )));
        }
        if s.is_identity() {
            return Err(CliError::config(
                "the identity string is the bias term, not a feature",
            ));
        }
        strings.push(s);
    }
    if strings.is_empty() {
        return Err(CliError::config("feature subset is empty"));
    }
    FeatureSet::new(strings).map_err(CliError::numerical)
}

/// Apply one `key.path=value` override to a JSON document.
fn apply_override(value: &mut serde_json::Value, entry: &str) -> Result<(), CliError> {
    let (path, raw) = entry
        .split_once('=')
        .ok_or_else(|| CliError::config(format!("override '{entry}' is not key=value")))?;
    let parsed: serde_json::Value = serde_json::from_str(raw)
        .unwrap_or_else(|_| serde_json::Value::String(raw.to_string()));
    let mut cursor = value;
    let segments: Vec<&str> = path.split('.').collect();
    for (i, segment) in segments.iter().enumerate() {
        if !cursor.is_object() {
            return Err(CliError::config(format!(
                "override '{path}': '{segment}' is not an object"
            )));
        }
        let map = cursor.as_object_mut().expect("checked");
        if i == segments.len() - 1 {
            map.insert(segment.to_string(), parsed);
            return Ok(());
        }
        cursor = map
            .entry(segment.to_string())
            .or_insert_with(|| serde_json::Value::Object(Default::default()));
    }
    Ok(())
}
