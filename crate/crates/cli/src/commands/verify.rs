use std::path::Path;

use serde::{Deserialize, Serialize};
use wforge_core::batch;
use wforge_core::rng::SeedFanout;
use wforge_core::state::werner_state;
use wforge_core::statesets::{separable_test_states, target_state};
use wforge_core::witness::{evaluate, noise_tolerance_analytic};

use crate::config::PipelineConfig;
use crate::io::{read_witness, RunPaths};
use crate::CliError;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassStats {
    pub count: usize,
    pub min_expectation: f64,
    pub max_expectation: f64,
    pub misclassified: usize,
    /// Indices and expectation values of the first misclassified samples.
    pub misclassified_examples: Vec<(usize, f64)>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerifyReport {
    pub n_qubits: usize,
    pub target: String,
    pub entangled_p_max: f64,
    pub separable: ClassStats,
    pub entangled: ClassStats,
}

fn stats(values: &[f64], misclassified: impl Fn(f64) -> bool) -> ClassStats {
    let mut min = f64::INFINITY;
    let mut max = f64::NEG_INFINITY;
    let mut bad = 0usize;
    let mut examples = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        min = min.min(v);
        max = max.max(v);
        if misclassified(v) {
            bad += 1;
            if examples.len() < 100 {
                examples.push((i, v));
            }
        }
    }
    ClassStats {
        count: values.len(),
        min_expectation: min,
        max_expectation: max,
        misclassified: bad,
        misclassified_examples: examples,
    }
}

/// Evaluate a witness on freshly generated separable (Dirichlet-mixed) and
/// entangled (Werner) test sets. Any misclassification fails the command
/// with the verification exit code, after the report is written.
pub fn cmd_verify(witness_path: &Path, config: &PipelineConfig) -> Result<(), CliError> {
    let witness = read_witness(witness_path)?;
    if witness.num_qubits != config.n_qubits {
        return Err(CliError::config(format!(
            "witness has {} qubits, config says {}",
            witness.num_qubits, config.n_qubits
        )));
    }
    let n = config.n_qubits;
    let fan = SeedFanout::new(config.fanout().derived_seed("verify"));
    let rho_e = target_state(config.target, n)?.projector();

    // entangled grid up to the requested p, or just inside the witness's own
    // tolerance (never past 0.25, matching the training range)
    let p_star = noise_tolerance_analytic(&witness, &rho_e)?.p_star;
    let p_max = config
        .verification
        .p_max
        .unwrap_or_else(|| (p_star - 0.001).clamp(0.0, 0.25));

    let separable = separable_test_states(n, config.verification.separable_count, config.verification.alpha, &fan)?;
    let sep_values: Vec<f64> = batch::map_collect(&separable, |rho| evaluate(&witness, rho))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;

    let ent_count = config.verification.entangled_count;
    let ent_values: Vec<f64> = if p_max <= 0.0 {
        // non-detecting witness: test against the bare target
        vec![evaluate(&witness, &rho_e)?; 1]
    } else {
        let grid: Vec<f64> = (0..ent_count)
            .map(|j| {
                if ent_count == 1 {
                    p_max
                } else {
                    p_max * j as f64 / (ent_count - 1) as f64
                }
            })
            .collect();
        batch::map_collect(&grid, |&p| {
            werner_state(&rho_e, p).and_then(|rho| evaluate(&witness, &rho))
        })
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?
    };

    let report = VerifyReport {
        n_qubits: n,
        target: config.target.as_str().to_string(),
        entangled_p_max: p_max,
        separable: stats(&sep_values, |v| v < 0.0),
        entangled: stats(&ent_values, |v| v >= 0.0),
    };
    let paths = RunPaths::new(&config.output_dir);
    crate::io::write_json(&paths.verify_report(), &report)?;

    println!(
        "separable: {} samples, expectation in [{:+.6}, {:+.6}], {} misclassified",
        report.separable.count,
        report.separable.min_expectation,
        report.separable.max_expectation,
        report.separable.misclassified
    );
    println!(
        "entangled: {} samples (p up to {:.3}), expectation in [{:+.6}, {:+.6}], {} misclassified",
        report.entangled.count,
        p_max,
        report.entangled.min_expectation,
        report.entangled.max_expectation,
        report.entangled.misclassified
    );

    let bad = report.separable.misclassified + report.entangled.misclassified;
    if bad > 0 {
        return Err(CliError::verification(format!(
            "{bad} misclassifications (see {})",
            paths.verify_report().display()
        )));
    }
    println!("verification passed: 0 misclassifications");
    Ok(())
}
