//! Differential mixed-state optimization.
//!
//! Minimizes the expectation value of a witness over all k-separable mixed
//! states of `N` qubits. A mixed state is a convex combination of pure-state
//! slots; every arrangement in the partition catalog contributes
//! `alpha = max_j 2^(nu_j)` slots so each subsystem can reach both pure and
//! maximally mixed states. Each part of a slot is an arbitrary pure state
//! written as magnitudes times phase factors; constraints are baked into the
//! reparameterization rather than projected:
//!
//! - magnitudes `k_i = x_i^2 / sqrt(sum_j x_j^4)` with free `x`, so
//!   `sum k_i^2 = 1` always holds;
//! - mixing weights `p_i = y_i^2 / sum_j y_j^2` with free `y`, so the
//!   weights stay on the simplex.
//!
//! The loss `sum_i p_i <psi_i| W |psi_i>` is differentiated analytically
//! through the whole chain; gradients agree with central finite differences
//! (the test oracle) and the raw parameters evolve with Adam. Since the bias
//! correction subtracts the found minimum from the identity coefficient,
//! re-running the optimizer on an adjusted witness returns roughly zero.

use num_complex::Complex64;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::batch;
use crate::error::{Error, Result};
use crate::linalg::CVector;
use crate::partitions::{build_catalog, PartitionCatalog, PermutationSpec};
use crate::rng::SeedFanout;
use crate::state::{DensityMatrix, StateVector};
use crate::witness::Witness;

/// Adam hyperparameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct AdamConfig {
    pub step_size: f64,
    pub beta1: f64,
    pub beta2: f64,
    pub epsilon: f64,
}

impl Default for AdamConfig {
    fn default() -> Self {
        AdamConfig {
            step_size: 0.01,
            beta1: 0.9,
            beta2: 0.999,
            epsilon: 1e-8,
        }
    }
}

/// Optimizer configuration.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct MsoConfig {
    pub max_iterations: usize,
    pub convergence_window: usize,
    pub relative_tolerance: f64,
    pub adam: AdamConfig,
    pub restarts: usize,
    pub seed: u64,
}

impl Default for MsoConfig {
    fn default() -> Self {
        MsoConfig {
            max_iterations: 500,
            convergence_window: 25,
            relative_tolerance: 1e-6,
            adam: AdamConfig::default(),
            restarts: 8,
            seed: 0,
        }
    }
}

impl MsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iterations < 1 {
            return Err(Error::InvalidConfig("max_iterations must be >= 1".into()));
        }
        if self.relative_tolerance <= 0.0 {
            return Err(Error::InvalidConfig("relative_tolerance must be > 0".into()));
        }
        if self.restarts < 1 {
            return Err(Error::InvalidConfig("restarts must be >= 1".into()));
        }
        Ok(())
    }
}

/// Loss history of one restart.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RestartTrace {
    pub restart_index: usize,
    pub losses: Vec<f64>,
}

/// Outcome of [`optimize`]: the lowest witness expectation found, the state
/// attaining it, and per-restart traces.
#[derive(Debug, Clone)]
pub struct MsoResult {
    pub min_expectation: f64,
    pub argmin: DensityMatrix,
    pub loss_trace: Vec<(usize, f64)>,
    pub iterations_used: usize,
    pub restart_index: usize,
    pub traces: Vec<RestartTrace>,
}

/// Derived magnitudes `k_i = x_i^2 / sqrt(sum x_j^4)`; `sum k_i^2 = 1`.
pub fn constrain_magnitudes(x: &[f64]) -> Result<Vec<f64>> {
    let s: f64 = x.iter().map(|v| v.powi(4)).sum();
    if s <= 0.0 || !s.is_finite() {
        return Err(Error::DegenerateParameters(
            "magnitude parameters are all zero".into(),
        ));
    }
    let root = s.sqrt();
    Ok(x.iter().map(|v| v * v / root).collect())
}

/// Derived mixing weights `p_i = y_i^2 / sum y_j^2`; nonnegative, sum 1.
pub fn constrain_weights(y: &[f64]) -> Result<Vec<f64>> {
    let t: f64 = y.iter().map(|v| v * v).sum();
    if t <= 0.0 || !t.is_finite() {
        return Err(Error::DegenerateParameters(
            "mixing parameters are all zero".into(),
        ));
    }
    Ok(y.iter().map(|v| v * v / t).collect())
}

/// Raw parameters of one part: free magnitudes `x` (length `2^nu`) and free
/// phases (length `2^nu - 1`).
#[derive(Debug, Clone, PartialEq)]
pub struct PartParams {
    pub magnitudes: Vec<f64>,
    pub phases: Vec<f64>,
}

/// Amplitudes `(k_0, k_1 e^{i t_1}, ..)` of one part.
fn part_amplitudes(part: &PartParams) -> Result<CVector> {
    let k = constrain_magnitudes(&part.magnitudes)?;
    let dim = k.len();
    if part.phases.len() != dim - 1 {
        return Err(Error::ParameterShape(format!(
            "part with {dim} magnitudes needs {} phases, got {}",
            dim - 1,
            part.phases.len()
        )));
    }
    let mut amps = CVector::zeros(dim);
    amps[0] = Complex64::new(k[0], 0.0);
    for m in 1..dim {
        amps[m] = Complex64::from_polar(k[m], part.phases[m - 1]);
    }
    Ok(amps)
}

fn kron_vec(a: &CVector, b: &CVector) -> CVector {
    let mut out = CVector::zeros(a.len() * b.len());
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i * b.len() + j] = x * y;
        }
    }
    out
}

fn permute_vector(v: &CVector, swaps: &[(usize, usize)], n: usize, inverse: bool) -> CVector {
    let mut out = v.clone();
    let apply = |out: &mut CVector, a: usize, b: usize| {
        let pa = n - a;
        let pb = n - b;
        for j in 0..out.len() {
            let ba = (j >> pa) & 1;
            let bb = (j >> pb) & 1;
            if ba == 1 && bb == 0 {
                let k = j ^ (1 << pa) ^ (1 << pb);
                out.swap_rows(j, k);
            }
        }
    };
    if inverse {
        for &(a, b) in swaps.iter().rev() {
            apply(&mut out, a, b);
        }
    } else {
        for &(a, b) in swaps {
            apply(&mut out, a, b);
        }
    }
    out
}

/// Assemble one pure state: parts tensored in canonical order, then moved
/// into the arrangement by the recorded swap sequence. Unit norm by
/// construction.
pub fn assemble_pure(parts: &[PartParams], spec: &PermutationSpec) -> Result<StateVector> {
    if parts.len() != spec.parts.len() {
        return Err(Error::ParameterShape(format!(
            "arrangement {} has {} parts, got {}",
            spec.label,
            spec.parts.len(),
            parts.len()
        )));
    }
    for (part, &nu) in parts.iter().zip(&spec.parts) {
        if part.magnitudes.len() != (1usize << nu) {
            return Err(Error::ParameterShape(format!(
                "part of {nu} qubits needs {} magnitudes",
                1usize << nu
            )));
        }
    }
    let n = spec.num_qubits();
    let mut amps = part_amplitudes(&parts[0])?;
    for part in &parts[1..] {
        amps = kron_vec(&amps, &part_amplitudes(part)?);
    }
    let amps = permute_vector(&amps, &spec.swap_sequence, n, false);
    StateVector::normalized(amps)
}

/// Flat-parameter layout: per slot, per part, an `x` block then a phase
/// block; all mixing parameters at the tail.
#[derive(Debug, Clone)]
struct SlotLayout {
    entry_index: usize,
    /// (part dim, x offset, phase offset) per part.
    parts: Vec<(usize, usize, usize)>,
}

#[derive(Debug, Clone)]
struct ParamLayout {
    slots: Vec<SlotLayout>,
    mixing_offset: usize,
    total: usize,
}

fn build_layout(catalog: &PartitionCatalog) -> ParamLayout {
    let mut slots = Vec::new();
    let mut offset = 0usize;
    for (entry_index, entry) in catalog.entries.iter().enumerate() {
        for _ in 0..entry.slot_count() {
            let mut parts = Vec::with_capacity(entry.parts.len());
            for &nu in &entry.parts {
                let dim = 1usize << nu;
                parts.push((dim, offset, offset + dim));
                offset += 2 * dim - 1;
            }
            slots.push(SlotLayout { entry_index, parts });
        }
    }
    let mixing_offset = offset;
    let total = offset + slots.len();
    ParamLayout {
        slots,
        mixing_offset,
        total,
    }
}

/// The full free-parameter state for all k-separable mixtures of `N` qubits.
#[derive(Debug, Clone)]
pub struct SeparableParameterization {
    catalog: PartitionCatalog,
    layout: ParamLayout,
    /// Raw unconstrained values; see the module docs for the layout.
    pub values: Vec<f64>,
}

impl SeparableParameterization {
    /// Zero-initialized parameter block (degenerate until values are set).
    pub fn zeros(n: usize) -> Result<Self> {
        let catalog = build_catalog(n)?;
        let layout = build_layout(&catalog);
        let values = vec![0.0; layout.total];
        Ok(SeparableParameterization {
            catalog,
            layout,
            values,
        })
    }

    /// Uniform random raw values on [-1, 1], redrawing any block that lands
    /// degenerately near zero.
    pub fn random(n: usize, rng: &mut impl Rng) -> Result<Self> {
        let mut params = Self::zeros(n)?;
        let draw_block = |rng: &mut dyn rand::RngCore, block: &mut [f64]| loop {
            for v in block.iter_mut() {
                *v = rng.gen_range(-1.0..=1.0);
            }
            if block.iter().any(|v| v.abs() > 1e-3) {
                break;
            }
        };
        for slot in &params.layout.slots {
            for &(dim, x_off, _) in &slot.parts {
                draw_block(rng, &mut params.values[x_off..x_off + dim]);
            }
        }
        // phases are unconstrained; fill them independently
        for slot in params.layout.slots.clone() {
            for (dim, _, t_off) in slot.parts {
                for v in &mut params.values[t_off..t_off + dim - 1] {
                    *v = rng.gen_range(-1.0..=1.0);
                }
            }
        }
        let off = params.layout.mixing_offset;
        draw_block(rng, &mut params.values[off..]);
        Ok(params)
    }

    pub fn num_qubits(&self) -> usize {
        self.catalog.num_qubits
    }

    pub fn catalog(&self) -> &PartitionCatalog {
        &self.catalog
    }

    pub fn len(&self) -> usize {
        self.layout.total
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Raw mixing parameters.
    pub fn mixing_raw(&self) -> &[f64] {
        &self.values[self.layout.mixing_offset..]
    }

    fn slot_parts(&self, slot: &SlotLayout) -> Vec<PartParams> {
        slot.parts
            .iter()
            .map(|&(dim, x_off, t_off)| PartParams {
                magnitudes: self.values[x_off..x_off + dim].to_vec(),
                phases: self.values[t_off..t_off + dim - 1].to_vec(),
            })
            .collect()
    }

    /// All slot pure states in layout order.
    pub fn slot_states(&self) -> Result<Vec<StateVector>> {
        self.layout
            .slots
            .iter()
            .map(|slot| {
                let spec = &self.catalog.entries[slot.entry_index];
                assemble_pure(&self.slot_parts(slot), spec)
            })
            .collect()
    }
}

/// Convex combination of all slot projectors with the derived weights.
/// K-separable by construction.
pub fn assemble_mixed(params: &SeparableParameterization) -> Result<DensityMatrix> {
    let weights = constrain_weights(params.mixing_raw())?;
    let states = params.slot_states()?;
    DensityMatrix::mixture(&states, &weights)
}

/// Witness terms compiled to bit masks for fast application.
struct CompiledWitness {
    terms: Vec<(usize, usize, usize, f64)>,
}

fn compile_witness(w: &Witness) -> CompiledWitness {
    CompiledWitness {
        terms: w
            .terms
            .iter()
            .map(|(s, &c)| (s.x_mask(), s.z_mask(), s.y_count(), c))
            .collect(),
    }
}

impl CompiledWitness {
    /// `<psi| W |psi>` in `O(terms * 2^N)`.
    fn expectation(&self, amps: &CVector) -> f64 {
        let mut acc = 0.0;
        for &(x, z, y, c) in &self.terms {
            let mut term = Complex64::new(0.0, 0.0);
            for j in 0..amps.len() {
                term += amps[j ^ x].conj() * crate::pauli::basis_phase(j, z, y) * amps[j];
            }
            acc += c * term.re;
        }
        acc
    }

    /// `W |psi>`.
    fn apply(&self, amps: &CVector) -> CVector {
        let mut out = CVector::zeros(amps.len());
        for &(x, z, y, c) in &self.terms {
            for j in 0..amps.len() {
                out[j ^ x] += Complex64::new(c, 0.0) * crate::pauli::basis_phase(j, z, y) * amps[j];
            }
        }
        out
    }
}

/// Witness expectation of the assembled mixture,
/// `sum_i p_i <psi_i| W |psi_i>`.
pub fn loss(params: &SeparableParameterization, witness: &Witness) -> Result<f64> {
    if witness.num_qubits != params.num_qubits() {
        return Err(Error::DimensionMismatch {
            context: "witness vs parameterization",
            expected: params.num_qubits(),
            actual: witness.num_qubits,
        });
    }
    let compiled = compile_witness(witness);
    loss_compiled(params, &compiled)
}

fn loss_compiled(params: &SeparableParameterization, compiled: &CompiledWitness) -> Result<f64> {
    let weights = constrain_weights(params.mixing_raw())?;
    let states = params.slot_states()?;
    Ok(states
        .iter()
        .zip(&weights)
        .map(|(psi, &p)| p * compiled.expectation(psi.amplitudes()))
        .sum())
}

/// Analytic gradient of [`loss`] with respect to every raw parameter, in
/// layout order (slot parts first, mixing parameters at the tail).
pub fn gradient(params: &SeparableParameterization, witness: &Witness) -> Result<Vec<f64>> {
    if params.values.iter().any(|v| !v.is_finite()) {
        return Err(Error::DegenerateParameters("non-finite parameters".into()));
    }
    let compiled = compile_witness(witness);
    gradient_compiled(params, &compiled).map(|(g, _)| g)
}

/// Returns the gradient and the loss in one pass.
fn gradient_compiled(
    params: &SeparableParameterization,
    compiled: &CompiledWitness,
) -> Result<(Vec<f64>, f64)> {
    let n = params.num_qubits();
    let y_raw = params.mixing_raw();
    let weights = constrain_weights(y_raw)?;
    let t_norm: f64 = y_raw.iter().map(|v| v * v).sum();

    let mut grad = vec![0.0f64; params.len()];
    let mut slot_expectations = vec![0.0f64; params.layout.slots.len()];

    for (si, slot) in params.layout.slots.iter().enumerate() {
        let spec = &params.catalog.entries[slot.entry_index];
        let parts = params.slot_parts(slot);

        // forward pass per part: derived magnitudes and amplitudes
        let mut part_amps: Vec<CVector> = Vec::with_capacity(parts.len());
        let mut part_ks: Vec<Vec<f64>> = Vec::with_capacity(parts.len());
        for part in &parts {
            part_ks.push(constrain_magnitudes(&part.magnitudes)?);
            part_amps.push(part_amplitudes(part)?);
        }
        let mut unpermuted = part_amps[0].clone();
        for amp in &part_amps[1..] {
            unpermuted = kron_vec(&unpermuted, amp);
        }
        let permuted = permute_vector(&unpermuted, &spec.swap_sequence, n, false);
        let e_s = compiled.expectation(&permuted);
        slot_expectations[si] = e_s;

        // backward: g = W psi brought back to the unpermuted frame
        let g_perm = compiled.apply(&permuted);
        let g_tilde = permute_vector(&g_perm, &spec.swap_sequence, n, true);

        // contraction c_m per part: sum over basis indices with the part's
        // sub-index fixed at m of conj(g_tilde) times the other parts'
        // amplitudes
        let dims: Vec<usize> = slot.parts.iter().map(|&(d, _, _)| d).collect();
        let mut contractions: Vec<Vec<Complex64>> = dims
            .iter()
            .map(|&d| vec![Complex64::new(0.0, 0.0); d])
            .collect();
        let full_dim = 1usize << n;
        let mut sub = vec![0usize; dims.len()];
        for j in 0..full_dim {
            // decompose j into per-part sub-indices (mixed radix)
            let mut rem = j;
            for p in (0..dims.len()).rev() {
                sub[p] = rem % dims[p];
                rem /= dims[p];
            }
            // prefix/suffix products of the parts' amplitudes
            let mut prefix = Complex64::new(1.0, 0.0);
            let products: Vec<Complex64> = (0..dims.len())
                .map(|p| {
                    let out = prefix;
                    prefix *= part_amps[p][sub[p]];
                    out
                })
                .collect();
            let mut suffix = Complex64::new(1.0, 0.0);
            let mut suffixes = vec![Complex64::new(1.0, 0.0); dims.len()];
            for p in (0..dims.len()).rev() {
                suffixes[p] = suffix;
                suffix *= part_amps[p][sub[p]];
            }
            let gj = g_tilde[j].conj();
            for p in 0..dims.len() {
                contractions[p][sub[p]] += gj * products[p] * suffixes[p];
            }
        }

        // chain rule through phases and the magnitude constraint, weighted
        // by this slot's mixing probability
        let p_s = weights[si];
        for (p, &(dim, x_off, t_off)) in slot.parts.iter().enumerate() {
            let k = &part_ks[p];
            let x = &parts[p].magnitudes;
            let phases = &parts[p].phases;
            let mut dk = vec![0.0f64; dim];
            for m in 0..dim {
                let phase = if m == 0 {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::from_polar(1.0, phases[m - 1])
                };
                let cm = contractions[p][m] * phase;
                dk[m] = 2.0 * cm.re;
                if m > 0 {
                    grad[t_off + m - 1] += p_s * (-2.0 * k[m] * cm.im);
                }
            }
            let s_quartic: f64 = x.iter().map(|v| v.powi(4)).sum();
            let root = s_quartic.sqrt();
            let dk_dot_k: f64 = dk.iter().zip(k).map(|(a, b)| a * b).sum();
            for l in 0..dim {
                grad[x_off + l] += p_s * (2.0 * x[l] / root) * (dk[l] - k[l] * dk_dot_k);
            }
        }
    }

    let total_loss: f64 = slot_expectations
        .iter()
        .zip(&weights)
        .map(|(e, p)| e * p)
        .sum();
    for (i, &y) in y_raw.iter().enumerate() {
        grad[params.layout.mixing_offset + i] =
            2.0 * y / t_norm * (slot_expectations[i] - total_loss);
    }
    Ok((grad, total_loss))
}

struct RestartOutcome {
    best_loss: f64,
    best_values: Vec<f64>,
    losses: Vec<f64>,
    iterations: usize,
    failed: bool,
}

fn run_restart(
    witness: &Witness,
    compiled: &CompiledWitness,
    cfg: &MsoConfig,
    restart: usize,
) -> Result<RestartOutcome> {
    let fan = SeedFanout::new(cfg.seed);
    let mut rng = fan.item_stream("mso-restart", restart as u64);
    let mut params = SeparableParameterization::random(witness.num_qubits, &mut rng)?;

    let dim = params.len();
    let mut m = vec![0.0f64; dim];
    let mut v = vec![0.0f64; dim];
    let mut losses = Vec::with_capacity(cfg.max_iterations);
    let mut best_loss = f64::INFINITY;
    let mut best_values = params.values.clone();

    for iter in 0..cfg.max_iterations {
        let (grad, current) = match gradient_compiled(&params, compiled) {
            Ok(pair) => pair,
            Err(_) => {
                return Ok(RestartOutcome {
                    best_loss,
                    best_values,
                    losses,
                    iterations: iter,
                    failed: !best_loss.is_finite(),
                })
            }
        };
        if !current.is_finite() {
            return Ok(RestartOutcome {
                best_loss,
                best_values,
                losses,
                iterations: iter,
                failed: !best_loss.is_finite(),
            });
        }
        losses.push(current);
        if current < best_loss {
            best_loss = current;
            best_values.copy_from_slice(&params.values);
        }

        let t = (iter + 1) as f64;
        let bc1 = 1.0 - cfg.adam.beta1.powf(t);
        let bc2 = 1.0 - cfg.adam.beta2.powf(t);
        for i in 0..dim {
            m[i] = cfg.adam.beta1 * m[i] + (1.0 - cfg.adam.beta1) * grad[i];
            v[i] = cfg.adam.beta2 * v[i] + (1.0 - cfg.adam.beta2) * grad[i] * grad[i];
            let m_hat = m[i] / bc1;
            let v_hat = v[i] / bc2;
            params.values[i] -= cfg.adam.step_size * m_hat / (v_hat.sqrt() + cfg.adam.epsilon);
        }

        if iter + 1 >= cfg.convergence_window.max(2) {
            let w = cfg.convergence_window.max(2);
            let past = losses[losses.len() - w];
            let change = (past - current).abs() / current.abs().max(1e-12);
            if change < cfg.relative_tolerance {
                return Ok(RestartOutcome {
                    best_loss,
                    best_values,
                    losses,
                    iterations: iter + 1,
                    failed: false,
                });
            }
        }
    }
    Ok(RestartOutcome {
        best_loss,
        best_values,
        losses,
        iterations: cfg.max_iterations,
        failed: !best_loss.is_finite(),
    })
}

/// Minimize the witness expectation over k-separable mixed states with
/// `cfg.restarts` independently seeded Adam descents. Restarts run
/// concurrently; the reduction is ordered by restart index, so the result is
/// deterministic at any thread count.
pub fn optimize(witness: &Witness, cfg: &MsoConfig) -> Result<MsoResult> {
    cfg.validate()?;
    build_catalog(witness.num_qubits)?;
    let compiled = compile_witness(witness);

    let outcomes: Vec<Result<RestartOutcome>> =
        batch::map_range(cfg.restarts, |r| run_restart(witness, &compiled, cfg, r));

    let mut best: Option<(usize, RestartOutcome)> = None;
    let mut traces = Vec::with_capacity(cfg.restarts);
    for (r, outcome) in outcomes.into_iter().enumerate() {
        let outcome = outcome?;
        traces.push(RestartTrace {
            restart_index: r,
            losses: outcome.losses.clone(),
        });
        if outcome.failed {
            continue;
        }
        let better = match &best {
            None => true,
            Some((_, incumbent)) => outcome.best_loss < incumbent.best_loss,
        };
        if better {
            best = Some((r, outcome));
        }
    }
    let (restart_index, outcome) = best.ok_or(Error::OptimizerDiverged)?;

    let mut params = SeparableParameterization::zeros(witness.num_qubits)?;
    params.values = outcome.best_values;
    let argmin = assemble_mixed(&params)?;
    let min_expectation = crate::witness::evaluate(witness, &argmin)?;
    let loss_trace = outcome
        .losses
        .iter()
        .enumerate()
        .map(|(i, &l)| (i, l))
        .collect();
    Ok(MsoResult {
        min_expectation,
        argmin,
        loss_trace,
        iterations_used: outcome.iterations,
        restart_index,
        traces,
    })
}

/// Subtract the found minimum from the identity coefficient, pulling the
/// decision boundary onto the surface of the separable set.
pub fn adjust_bias(witness: &Witness, result: &MsoResult) -> Witness {
    let mut out = witness.clone();
    let bias = out.identity_coefficient() - result.min_expectation;
    out.set_identity_coefficient(bias);
    out
}

/// Exact raw-parameter count implied by the catalog: per slot and part,
/// `2^nu` magnitudes and `2^nu - 1` phases, plus one mixing parameter per
/// slot.
pub fn raw_parameter_count(n: usize) -> Result<usize> {
    let catalog = build_catalog(n)?;
    let mut count = 0usize;
    for entry in &catalog.entries {
        let per_slot: usize = entry.parts.iter().map(|&nu| 2 * (1usize << nu) - 1).sum();
        count += entry.slot_count() * per_slot;
    }
    Ok(count + catalog.total_slots())
}

/// Closed-form upper bound on optimizer memory in bytes,
/// `2^(2N+2) (N-1)! / sqrt(3) * exp(pi sqrt(2N/3))`. A planning utility;
/// nothing allocates based on it.
pub fn estimate_memory_bytes(n: usize) -> f64 {
    let factorial: f64 = (1..n).map(|i| i as f64).product();
    2f64.powi(2 * n as i32 + 2) * factorial / 3f64.sqrt()
        * (std::f64::consts::PI * (2.0 * n as f64 / 3.0).sqrt()).exp()
}
