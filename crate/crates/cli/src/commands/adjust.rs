use std::path::Path;

use serde_json::json;
use wforge_core::mso::{adjust_bias, optimize};

use crate::config::PipelineConfig;
use crate::io::{atomic_write, read_witness, write_witness, RunPaths};
use crate::CliError;

/// Run the mixed-state optimizer on a trained witness, subtract the found
/// minimum from the bias, and persist the adjusted witness plus the
/// per-restart loss traces.
pub fn cmd_adjust(witness_path: &Path, config: &PipelineConfig) -> Result<(), CliError> {
    let witness = read_witness(witness_path)?;
    if witness.num_qubits != config.n_qubits {
        return Err(CliError::config(format!(
            "witness has {} qubits, config says {}",
            witness.num_qubits, config.n_qubits
        )));
    }
    let mso_cfg = config.mso_config();
    let result = optimize(&witness, &mso_cfg)?;
    let adjusted = adjust_bias(&witness, &result)
        .with_metadata("provenance", json!("mso-adjusted"))
        .with_metadata("mso_min_expectation", json!(result.min_expectation))
        .with_metadata("mso_restart", json!(result.restart_index))
        .with_metadata("config_digest", json!(config.digest()));

    let paths = RunPaths::new(&config.output_dir);
    write_witness(&paths.adjusted_witness(), &adjusted)?;

    let mut csv = String::from("iteration,loss,restart_index\n");
    for trace in &result.traces {
        for (iteration, loss) in trace.losses.iter().enumerate() {
            csv.push_str(&format!("{iteration},{loss},{}\n", trace.restart_index));
        }
    }
    atomic_write(&paths.adjust_trace(), csv.as_bytes())?;

    println!(
        "separable minimum {:+.6} found by restart {} after {} iterations",
        result.min_expectation, result.restart_index, result.iterations_used
    );
    println!(
        "bias {} -> {} ; adjusted witness -> {}",
        witness.identity_coefficient(),
        adjusted.identity_coefficient(),
        paths.adjusted_witness().display()
    );
    Ok(())
}
