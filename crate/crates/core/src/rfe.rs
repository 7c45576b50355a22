//! Recursive feature elimination.
//!
//! Starting from a trained witness, each level retrains on every subset that
//! omits one non-identity feature, scores each candidate by noise tolerance
//! against the target, and keeps the best. During the search the candidate
//! bias correction uses a cheap proxy — the minimum witness expectation over
//! the Pauli eigenstates, an upper bound on the true separable minimum —
//! and the level winner gets the full mixed-state optimization before the
//! next level. The identity term is never a removal candidate.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::batch;
use crate::error::{Error, Result};
use crate::features::FeatureSet;
use crate::mso::{adjust_bias, optimize, MsoConfig};
use crate::pauli::PauliString;
use crate::rng::SeedFanout;
use crate::state::DensityMatrix;
use crate::statesets::TrainingSet;
use crate::svm::{train, SvmConfig};
use crate::witness::{
    certify_separable_nonnegative, from_hyperplane, min_eigenstate_expectation,
    noise_tolerance_analytic, Witness,
};

/// Stopping criteria and per-level machinery configuration. At least one of
/// `target_term_count` / `tolerance_floor` must be set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct RfeConfig {
    /// Stop when the witness is down to this many terms, identity included.
    pub target_term_count: Option<usize>,
    /// Stop before accepting a level whose best tolerance falls below this.
    pub tolerance_floor: Option<f64>,
    pub svm: SvmConfig,
    pub mso: MsoConfig,
    /// Optional beam width: consider only this many removal candidates per
    /// level, ranked by ascending |coefficient| in the current witness.
    /// `None` means exhaustive.
    pub max_candidates_per_level: Option<usize>,
    /// Sample count for the quick separability certificate applied to each
    /// accepted level winner.
    pub certificate_samples: usize,
    pub certificate_alpha: f64,
}

impl Default for RfeConfig {
    fn default() -> Self {
        RfeConfig {
            target_term_count: None,
            tolerance_floor: None,
            svm: SvmConfig::default(),
            mso: MsoConfig::default(),
            max_candidates_per_level: None,
            certificate_samples: 1000,
            certificate_alpha: 0.1,
        }
    }
}

impl RfeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.target_term_count.is_none() && self.tolerance_floor.is_none() {
            return Err(Error::InvalidConfig(
                "set target_term_count and/or tolerance_floor".into(),
            ));
        }
        if let Some(t) = self.target_term_count {
            if t < 1 {
                return Err(Error::InvalidConfig("target_term_count must be >= 1".into()));
            }
        }
        Ok(())
    }
}

/// One candidate elimination at a level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RfeCandidate {
    pub removed: PauliString,
    pub tolerance: f64,
}

/// Outcome of a single elimination level.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RfeLevel {
    /// Non-identity features retained after this level.
    pub retained: Vec<PauliString>,
    pub removed: PauliString,
    pub best_tolerance: f64,
    pub candidates: Vec<RfeCandidate>,
    pub wall_time_secs: f64,
}

/// The full elimination path.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct RfeTrace {
    pub levels: Vec<RfeLevel>,
}

/// Winner of one level: the proxy-adjusted witness trained on the best
/// subset plus the level report.
#[derive(Debug, Clone)]
pub struct LevelOutcome {
    pub best_subset: Vec<PauliString>,
    pub best_tolerance: f64,
    pub witness: Witness,
    pub level: RfeLevel,
}

fn identity_only_witness(n: usize) -> Witness {
    let mut terms = std::collections::BTreeMap::new();
    terms.insert(PauliString::identity(n), 1.0);
    Witness::new(n, terms).expect("identity witness is valid")
}

/// Train a candidate witness on `subset` and apply the eigenstate-proxy bias
/// correction.
fn train_candidate(
    subset: &[PauliString],
    data: &TrainingSet,
    cfg: &SvmConfig,
    n: usize,
) -> Result<Witness> {
    if subset.is_empty() {
        return Ok(identity_only_witness(n));
    }
    let feature_set = FeatureSet::new(subset.to_vec())?;
    let hyperplane = train(data, &feature_set, cfg)?;
    let mut witness = from_hyperplane(&hyperplane)?;
    let proxy_min = min_eigenstate_expectation(&witness)?;
    witness.set_identity_coefficient(witness.identity_coefficient() - proxy_min);
    Ok(witness)
}

/// Evaluate every single-feature removal from `current_features`, returning
/// the candidate with the highest noise tolerance. Ties break toward the
/// lexicographically smallest removed feature.
pub fn rfe_level(
    current_features: &[PauliString],
    data: &TrainingSet,
    rho_e: &DensityMatrix,
    cfg: &RfeConfig,
    current_witness: &Witness,
) -> Result<LevelOutcome> {
    if current_features.is_empty() {
        return Err(Error::RfeFailed("no removable features left".into()));
    }
    let n = data.num_qubits;
    let started = Instant::now();

    // beam: rank removal candidates by ascending |coefficient|
    let mut removal_order: Vec<PauliString> = current_features.to_vec();
    if let Some(beam) = cfg.max_candidates_per_level {
        removal_order.sort_by(|a, b| {
            let ca = current_witness.terms.get(a).copied().unwrap_or(0.0).abs();
            let cb = current_witness.terms.get(b).copied().unwrap_or(0.0).abs();
            ca.partial_cmp(&cb)
                .expect("finite coefficients")
                .then_with(|| a.cmp(b))
        });
        removal_order.truncate(beam);
        removal_order.sort();
    }

    let evaluated: Vec<(PauliString, Result<(Witness, f64)>)> =
        batch::map_collect(&removal_order, |removed| {
            let subset: Vec<PauliString> = current_features
                .iter()
                .filter(|s| *s != removed)
                .cloned()
                .collect();
            let outcome = train_candidate(&subset, data, &cfg.svm, n).and_then(|w| {
                let tolerance = noise_tolerance_analytic(&w, rho_e)?.p_star;
                Ok((w, tolerance))
            });
            (removed.clone(), outcome)
        });

    let mut candidates = Vec::with_capacity(evaluated.len());
    let mut best: Option<(PauliString, Witness, f64)> = None;
    let mut failures = 0usize;
    for (removed, outcome) in evaluated {
        match outcome {
            Ok((witness, tolerance)) => {
                candidates.push(RfeCandidate {
                    removed: removed.clone(),
                    tolerance,
                });
                let better = match &best {
                    None => true,
                    Some((incumbent, _, t)) => {
                        tolerance > *t || (tolerance == *t && removed < *incumbent)
                    }
                };
                if better {
                    best = Some((removed, witness, tolerance));
                }
            }
            Err(_) => failures += 1,
        }
    }
    let (removed, witness, best_tolerance) = best.ok_or_else(|| {
        Error::RfeFailed(format!("training failed on all {failures} candidates"))
    })?;

    let best_subset: Vec<PauliString> = current_features
        .iter()
        .filter(|s| **s != removed)
        .cloned()
        .collect();
    let level = RfeLevel {
        retained: best_subset.clone(),
        removed,
        best_tolerance,
        candidates,
        wall_time_secs: started.elapsed().as_secs_f64(),
    };
    Ok(LevelOutcome {
        best_subset,
        best_tolerance,
        witness,
        level,
    })
}

/// Run greedy elimination until a stopping criterion fires. The final
/// witness (and every accepted level winner) receives the full mixed-state
/// bias adjustment and must pass the quick separability certificate.
pub fn rfe_run(
    initial_witness: &Witness,
    data: &TrainingSet,
    rho_e: &DensityMatrix,
    cfg: &RfeConfig,
) -> Result<(Witness, RfeTrace)> {
    cfg.validate()?;
    let mut trace = RfeTrace::default();
    let mut current = initial_witness.clone();

    loop {
        if let Some(target) = cfg.target_term_count {
            if current.term_count() <= target {
                break;
            }
        }
        let features = current.feature_strings();
        if features.is_empty() {
            break;
        }
        let outcome = rfe_level(&features, data, rho_e, cfg, &current)?;
        if let Some(floor) = cfg.tolerance_floor {
            if outcome.best_tolerance < floor {
                break;
            }
        }

        // full bias correction for the accepted winner
        let mso_result = optimize(&outcome.witness, &cfg.mso)?;
        let adjusted = adjust_bias(&outcome.witness, &mso_result);
        let certificate = certify_separable_nonnegative(
            &adjusted,
            cfg.certificate_samples,
            cfg.certificate_alpha,
            &SeedFanout::new(cfg.mso.seed),
        )?;
        if !certificate.passed() {
            return Err(Error::RfeFailed(format!(
                "level winner failed the separability certificate ({} violations)",
                certificate.violations
            )));
        }
        trace.levels.push(outcome.level);
        current = adjusted;

        if cfg.target_term_count.is_none() && current.feature_strings().is_empty() {
            break;
        }
    }
    Ok((current, trace))
}
