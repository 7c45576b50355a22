use std::fmt::Write as _;
use std::path::Path;

use wforge_core::mso::estimate_memory_bytes;
use wforge_core::rfe::RfeTrace;
use wforge_core::witness::Witness;

use crate::commands::verify::VerifyReport;
use crate::io::{atomic_write, read_json, Manifest, RunPaths};
use crate::CliError;

fn human_bytes(bytes: f64) -> String {
    const UNITS: [&str; 5] = ["B", "KiB", "MiB", "GiB", "TiB"];
    let mut value = bytes;
    let mut unit = 0;
    while value >= 1024.0 && unit < UNITS.len() - 1 {
        value /= 1024.0;
        unit += 1;
    }
    format!("{value:.2} {}", UNITS[unit])
}

/// Aggregate every artifact in a run directory into one report. Sections for
/// missing artifacts are noted as gaps; any gap makes the exit code nonzero.
pub fn cmd_report(run_dir: &Path) -> Result<(), CliError> {
    let paths = RunPaths::new(run_dir);
    let mut out = String::from("# Witness pipeline report\n");
    let mut missing: Vec<String> = Vec::new();

    let manifest: Option<Manifest> = match read_json(&paths.manifest()) {
        Ok(m) => Some(m),
        Err(_) => {
            missing.push("manifest.json".into());
            None
        }
    };

    if let Some(m) = &manifest {
        let _ = writeln!(out, "\n## Run\n");
        let _ = writeln!(out, "- qubits: {}", m.n_qubits);
        let _ = writeln!(out, "- target: {}", m.target);
        let _ = writeln!(out, "- master seed: {}", m.seed);
        let _ = writeln!(out, "- config digest: `{}`", m.config_digest);
        let _ = writeln!(out, "\n## Data\n");
        let _ = writeln!(out, "- features: {}", m.feature_set.len());
        for (origin, count) in &m.origin_counts {
            let _ = writeln!(out, "- {origin} samples: {count}");
        }
        for (file, digest) in &m.file_digests {
            let _ = writeln!(out, "- {file}: `{digest}`");
        }
        let _ = writeln!(
            out,
            "\nEstimated optimizer memory bound for {} qubits: {}",
            m.n_qubits,
            human_bytes(estimate_memory_bytes(m.n_qubits))
        );
    }

    let _ = writeln!(out, "\n## Training\n");
    match read_json::<Witness>(&paths.trained_witness()) {
        Ok(w) => {
            let _ = writeln!(out, "- trained witness: {} terms", w.term_count());
            let _ = writeln!(out, "- bias (identity coefficient): {}", w.identity_coefficient());
            if let Some(acc) = w.metadata.get("training_accuracy") {
                let _ = writeln!(out, "- training accuracy: {acc}");
            }
        }
        Err(_) => {
            missing.push("witness_trained.json".into());
            let _ = writeln!(out, "- missing");
        }
    }

    let _ = writeln!(out, "\n## Bias adjustment\n");
    match read_json::<Witness>(&paths.adjusted_witness()) {
        Ok(w) => {
            let _ = writeln!(out, "- adjusted bias: {}", w.identity_coefficient());
            if let Some(min) = w.metadata.get("mso_min_expectation") {
                let _ = writeln!(out, "- separable minimum found: {min}");
            }
            if paths.adjust_trace().exists() {
                let _ = writeln!(out, "- loss traces: adjust_trace.csv");
            }
        }
        Err(_) => {
            missing.push("witness_adjusted.json".into());
            let _ = writeln!(out, "- missing");
        }
    }

    let _ = writeln!(out, "\n## Feature elimination\n");
    match read_json::<RfeTrace>(&paths.rfe_trace()) {
        Ok(trace) => {
            if trace.levels.is_empty() {
                let _ = writeln!(out, "- no eliminations recorded");
            }
            let mut last = None;
            for (i, level) in trace.levels.iter().enumerate() {
                let _ = writeln!(
                    out,
                    "- level {i}: removed {} (best tolerance {:.4}, {} candidates)",
                    level.removed,
                    level.best_tolerance,
                    level.candidates.len()
                );
                if let Some(prev) = last {
                    if level.best_tolerance < prev {
                        let _ = writeln!(out, "  - tolerance decreased at this level");
                    }
                }
                last = Some(level.best_tolerance);
            }
        }
        Err(_) => {
            missing.push("rfe_trace.json".into());
            let _ = writeln!(out, "- missing");
        }
    }

    let _ = writeln!(out, "\n## Verification\n");
    match read_json::<VerifyReport>(&paths.verify_report()) {
        Ok(v) => {
            let _ = writeln!(
                out,
                "- separable: {} samples, min expectation {:+.6}, {} misclassified",
                v.separable.count, v.separable.min_expectation, v.separable.misclassified
            );
            let _ = writeln!(
                out,
                "- entangled: {} samples up to p = {:.3}, max expectation {:+.6}, {} misclassified",
                v.entangled.count, v.entangled_p_max, v.entangled.max_expectation, v.entangled.misclassified
            );
        }
        Err(_) => {
            missing.push("verify_report.json".into());
            let _ = writeln!(out, "- missing");
        }
    }

    let _ = writeln!(out, "\n## Comparison\n");
    match std::fs::read_to_string(paths.compare_txt()) {
        Ok(table) => {
            let _ = writeln!(out, "```\n{}```", table);
        }
        Err(_) => {
            missing.push("compare.txt".into());
            let _ = writeln!(out, "- missing");
        }
    }

    if !missing.is_empty() {
        let _ = writeln!(out, "\n## Gaps\n");
        for m in &missing {
            let _ = writeln!(out, "- {m}");
        }
    }

    atomic_write(&paths.report(), out.as_bytes())?;
    print!("{out}");
    if missing.is_empty() {
        Ok(())
    } else {
        Err(CliError::config(format!(
            "report written with {} missing artifact(s): {}",
            missing.len(),
            missing.join(", ")
        )))
    }
}
