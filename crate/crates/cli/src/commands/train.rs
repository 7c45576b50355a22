use serde_json::json;
use wforge_core::svm::{train, training_accuracy};
use wforge_core::witness::from_hyperplane;

use crate::config::PipelineConfig;
use crate::io::{load_training_set, write_witness, RunPaths};
use crate::CliError;

/// Train the classification hyperplane on the generated data and write the
/// pre-adjustment witness.
pub fn cmd_train(config: &PipelineConfig) -> Result<(), CliError> {
    let paths = RunPaths::new(&config.output_dir);
    let data = load_training_set(&paths, config.n_qubits)?;
    let subset = config.feature_set()?;
    let svm_cfg = config.svm_config();
    let hyperplane = train(&data, &subset, &svm_cfg)?;
    let accuracy = training_accuracy(&hyperplane, &data)?;

    let witness = from_hyperplane(&hyperplane)?
        .with_metadata("target", json!(config.target.as_str()))
        .with_metadata("provenance", json!("svm-train"))
        .with_metadata("seed", json!(config.seed))
        .with_metadata("config_digest", json!(config.digest()))
        .with_metadata("training_accuracy", json!(accuracy));
    write_witness(&paths.trained_witness(), &witness)?;

    println!(
        "trained {}-term witness (training accuracy {:.4}) -> {}",
        witness.term_count(),
        accuracy,
        paths.trained_witness().display()
    );
    Ok(())
}
