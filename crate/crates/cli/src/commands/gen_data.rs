use std::collections::BTreeMap;

use wforge_core::rng::SeedFanout;
use wforge_core::statesets::{build_training_set, Label};

use crate::config::PipelineConfig;
use crate::io::{atomic_write, samples_to_csv, sha256_hex, Manifest, RunPaths};
use crate::CliError;

/// Generate the training data files: separable and entangled sample CSVs
/// plus a manifest with counts, seed, and digests.
pub fn cmd_gen_data(config: &PipelineConfig) -> Result<(), CliError> {
    let feature_set = config.feature_set()?;
    let fan = config.fanout();
    let data_fan = SeedFanout::new(fan.derived_seed("data"));
    let data = build_training_set(
        config.target,
        config.n_qubits,
        &feature_set,
        config.training.extras_per_eigenstate,
        config.training.sigma,
        config.training.entangled_count,
        config.training.entangled_p_max,
        &data_fan,
    )?;

    let paths = RunPaths::new(&config.output_dir);
    let separable: Vec<_> = data
        .samples
        .iter()
        .filter(|s| s.label == Label::Separable)
        .collect();
    let entangled: Vec<_> = data
        .samples
        .iter()
        .filter(|s| s.label == Label::Entangled)
        .collect();
    let sep_csv = samples_to_csv(&separable, &feature_set);
    let ent_csv = samples_to_csv(&entangled, &feature_set);
    atomic_write(&paths.separable_csv(), sep_csv.as_bytes())?;
    atomic_write(&paths.entangled_csv(), ent_csv.as_bytes())?;

    let mut origin_counts = BTreeMap::new();
    for sample in &data.samples {
        *origin_counts
            .entry(sample.origin.as_str().to_string())
            .or_insert(0usize) += 1;
    }
    let mut file_digests = BTreeMap::new();
    file_digests.insert("separable.csv".into(), sha256_hex(sep_csv.as_bytes()));
    file_digests.insert("entangled.csv".into(), sha256_hex(ent_csv.as_bytes()));
    let manifest = Manifest {
        n_qubits: config.n_qubits,
        target: config.target.as_str().to_string(),
        feature_set: feature_set.strings().iter().map(|s| s.to_string()).collect(),
        seed: fan.master(),
        origin_counts,
        file_digests,
        config_digest: config.digest(),
    };
    crate::io::write_json(&paths.manifest(), &manifest)?;

    println!(
        "wrote {} separable + {} entangled samples over {} features to {}",
        separable.len(),
        entangled.len(),
        feature_set.len(),
        config.output_dir.display()
    );
    Ok(())
}
