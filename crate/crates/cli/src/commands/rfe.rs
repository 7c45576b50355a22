use std::path::Path;

use serde_json::json;
use wforge_core::rfe::rfe_run;
use wforge_core::statesets::target_state;

use crate::config::PipelineConfig;
use crate::io::{atomic_write, load_training_set, read_witness, write_witness, RunPaths};
use crate::CliError;

/// Run recursive feature elimination from an adjusted witness, writing the
/// final witness, the JSON trace, and a per-level candidate table.
pub fn cmd_rfe(witness_path: &Path, config: &PipelineConfig) -> Result<(), CliError> {
    let witness = read_witness(witness_path)?;
    if witness.num_qubits != config.n_qubits {
        return Err(CliError::config(format!(
            "witness has {} qubits, config says {}",
            witness.num_qubits, config.n_qubits
        )));
    }
    let paths = RunPaths::new(&config.output_dir);
    let data = load_training_set(&paths, config.n_qubits)?;
    let rho_e = target_state(config.target, config.n_qubits)?.projector();
    let rfe_cfg = config.rfe_config();
    let (final_witness, trace) = rfe_run(&witness, &data, &rho_e, &rfe_cfg)?;

    let final_witness = final_witness
        .with_metadata("provenance", json!("rfe"))
        .with_metadata("config_digest", json!(config.digest()))
        .with_metadata("rfe_levels", json!(trace.levels.len()));
    write_witness(&paths.rfe_witness(), &final_witness)?;
    crate::io::write_json(&paths.rfe_trace(), &trace)?;

    let mut csv = String::from("level,candidate_removed,tolerance,chosen\n");
    for (level_idx, level) in trace.levels.iter().enumerate() {
        for candidate in &level.candidates {
            csv.push_str(&format!(
                "{level_idx},{},{},{}\n",
                candidate.removed,
                candidate.tolerance,
                candidate.removed == level.removed
            ));
        }
    }
    atomic_write(&paths.rfe_levels(), csv.as_bytes())?;

    // flag any level where dropping a feature lowered the best tolerance
    for pair in trace.levels.windows(2) {
        if pair[1].best_tolerance < pair[0].best_tolerance {
            println!(
                "note: tolerance dropped from {:.4} to {:.4} when removing {}",
                pair[0].best_tolerance, pair[1].best_tolerance, pair[1].removed
            );
        }
    }
    println!(
        "eliminated {} features; final witness has {} terms -> {}",
        trace.levels.len(),
        final_witness.term_count(),
        paths.rfe_witness().display()
    );
    Ok(())
}
