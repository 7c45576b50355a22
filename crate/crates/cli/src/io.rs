//! File formats: sample CSVs with a JSON sidecar manifest, witness JSON, and
//! atomic writes (temp file + rename, so partial output never lands under a
//! final name).

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use wforge_core::features::{FeatureSet, FeatureVector};
use wforge_core::pauli::PauliString;
use wforge_core::statesets::{Label, LabeledSample, SampleOrigin, TrainingSet};
use wforge_core::witness::Witness;

use crate::CliError;

pub fn atomic_write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            std::fs::create_dir_all(parent)
                .map_err(|e| CliError::config(format!("cannot create {}: {e}", parent.display())))?;
        }
    }
    let tmp = path.with_extension("tmp");
    {
        let mut file = std::fs::File::create(&tmp)
            .map_err(|e| CliError::config(format!("cannot write {}: {e}", tmp.display())))?;
        file.write_all(bytes)
            .map_err(|e| CliError::config(format!("write failed: {e}")))?;
        file.sync_all().ok();
    }
    std::fs::rename(&tmp, path)
        .map_err(|e| CliError::config(format!("cannot move into place: {e}")))?;
    Ok(())
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    format!("{:x}", hasher.finalize())
}

/// Sidecar manifest describing a generated data set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Manifest {
    pub n_qubits: usize,
    pub target: String,
    pub feature_set: Vec<String>,
    pub seed: u64,
    pub origin_counts: BTreeMap<String, usize>,
    pub file_digests: BTreeMap<String, String>,
    pub config_digest: String,
}

/// Render labeled samples as CSV: `label,origin,<feature columns..>`.
pub fn samples_to_csv(samples: &[&LabeledSample], feature_set: &FeatureSet) -> String {
    let mut out = String::from("label,origin");
    for s in feature_set.strings() {
        out.push(',');
        out.push_str(&s.to_string());
    }
    out.push('\n');
    for sample in samples {
        out.push_str(if sample.label == Label::Separable { "1" } else { "-1" });
        out.push(',');
        out.push_str(sample.origin.as_str());
        for v in &sample.features.values {
            out.push(',');
            out.push_str(&format!("{v}"));
        }
        out.push('\n');
    }
    out
}

fn parse_csv(text: &str, expected_n: usize) -> Result<(FeatureSet, Vec<LabeledSample>), CliError> {
    let mut lines = text.lines();
    let header = lines
        .next()
        .ok_or_else(|| CliError::config("sample file is empty"))?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.len() < 3 || columns[0] != "label" || columns[1] != "origin" {
        return Err(CliError::config("sample file header must be label,origin,<features..>"));
    }
    let strings = columns[2..]
        .iter()
        .map(|label| {
            let s: PauliString = label
                .parse()
                .map_err(|e| CliError::config(format!("bad feature column '{label}': {e}")))?;
            if s.num_qubits() != expected_n {
                return Err(CliError::config(format!(
                    "feature column '{label}' does not match n_qubits"
                )));
            }
            Ok(s)
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let feature_set = FeatureSet::new(strings).map_err(CliError::numerical)?;

    let mut samples = Vec::new();
    for (lineno, line) in lines.enumerate() {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let label = match fields.next() {
            Some("1") => Label::Separable,
            Some("-1") => Label::Entangled,
            other => {
                return Err(CliError::config(format!(
                    "line {}: bad label {other:?}",
                    lineno + 2
                )))
            }
        };
        let origin = SampleOrigin::parse(fields.next().unwrap_or(""))
            .map_err(|e| CliError::config(format!("line {}: {e}", lineno + 2)))?;
        let values = fields
            .map(|f| {
                f.parse::<f64>()
                    .map_err(|e| CliError::config(format!("line {}: bad value: {e}", lineno + 2)))
            })
            .collect::<Result<Vec<f64>, CliError>>()?;
        if values.len() != feature_set.len() {
            return Err(CliError::config(format!(
                "line {}: {} values for {} features",
                lineno + 2,
                values.len(),
                feature_set.len()
            )));
        }
        samples.push(LabeledSample {
            features: FeatureVector {
                values,
                feature_set: feature_set.clone(),
            },
            label,
            origin,
        });
    }
    Ok((feature_set, samples))
}

pub struct RunPaths {
    pub dir: PathBuf,
}

impl RunPaths {
    pub fn new(dir: &Path) -> Self {
        RunPaths {
            dir: dir.to_path_buf(),
        }
    }

    pub fn manifest(&self) -> PathBuf {
        self.dir.join("manifest.json")
    }
    pub fn separable_csv(&self) -> PathBuf {
        self.dir.join("separable.csv")
    }
    pub fn entangled_csv(&self) -> PathBuf {
        self.dir.join("entangled.csv")
    }
    pub fn trained_witness(&self) -> PathBuf {
        self.dir.join("witness_trained.json")
    }
    pub fn adjusted_witness(&self) -> PathBuf {
        self.dir.join("witness_adjusted.json")
    }
    pub fn adjust_trace(&self) -> PathBuf {
        self.dir.join("adjust_trace.csv")
    }
    pub fn rfe_witness(&self) -> PathBuf {
        self.dir.join("witness_rfe.json")
    }
    pub fn rfe_trace(&self) -> PathBuf {
        self.dir.join("rfe_trace.json")
    }
    pub fn rfe_levels(&self) -> PathBuf {
        self.dir.join("rfe_levels.csv")
    }
    pub fn verify_report(&self) -> PathBuf {
        self.dir.join("verify_report.json")
    }
    pub fn compare_csv(&self) -> PathBuf {
        self.dir.join("compare.csv")
    }
    pub fn compare_txt(&self) -> PathBuf {
        self.dir.join("compare.txt")
    }
    pub fn report(&self) -> PathBuf {
        self.dir.join("report.md")
    }
}

/// Load the generated training data back from a run directory.
pub fn load_training_set(paths: &RunPaths, expected_n: usize) -> Result<TrainingSet, CliError> {
    let manifest: Manifest = read_json(&paths.manifest())?;
    if manifest.n_qubits != expected_n {
        return Err(CliError::config(format!(
            "data was generated for {} qubits, config says {expected_n}",
            manifest.n_qubits
        )));
    }
    let sep_text = std::fs::read_to_string(paths.separable_csv())
        .map_err(|e| CliError::config(format!("cannot read separable samples: {e}")))?;
    let ent_text = std::fs::read_to_string(paths.entangled_csv())
        .map_err(|e| CliError::config(format!("cannot read entangled samples: {e}")))?;
    let (feature_set, mut samples) = parse_csv(&sep_text, expected_n)?;
    let (ent_set, ent_samples) = parse_csv(&ent_text, expected_n)?;
    if ent_set != feature_set {
        return Err(CliError::config(
            "separable and entangled files carry different feature sets",
        ));
    }
    samples.extend(ent_samples);
    Ok(TrainingSet {
        samples,
        feature_set,
        num_qubits: expected_n,
        seed: manifest.seed,
    })
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::config(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::config(format!("{}: invalid JSON: {e}", path.display())))
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::numerical_msg(format!("serialization failed: {e}")))?;
    text.push('\n');
    atomic_write(path, text.as_bytes())
}

pub fn read_witness(path: &Path) -> Result<Witness, CliError> {
    read_json(path)
}

pub fn write_witness(path: &Path, witness: &Witness) -> Result<(), CliError> {
    write_json(path, witness)
}
