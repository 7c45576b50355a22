//! Acceptance suite: every release gate as one test per criterion, each
//! printing a single `ACCEPTANCE Cnn: PASS/FAIL` line (visible with
//! `--nocapture`). Tolerances are pinned in code, not configuration.
//!
//! C02 is expected to fail and documents a discrepancy in the published
//! 3-qubit bias-to-coefficient ratio: soft-margin training on this data
//! provably cannot produce the quoted 4:1 ratio (any ratio above 3:1 would
//! classify the entire entangled training grid as separable), and both the
//! trained and the bias-corrected plane sit at or below 2:1.

use std::path::Path;

use rand::Rng;
use tempfile::TempDir;
use wforge::commands::{cmd_adjust, cmd_compare, cmd_gen_data, cmd_rfe, cmd_train, Reference};
use wforge::config::{PipelineConfig, RfeSection};
use wforge_core::batch;
use wforge_core::features::feature_vector;
use wforge_core::mso::{gradient, loss, optimize, raw_parameter_count, MsoConfig, SeparableParameterization};
use wforge_core::partitions::build_catalog;
use wforge_core::rng::SeedFanout;
use wforge_core::state::DensityMatrix;
use wforge_core::statesets::{pauli_eigenstates, separable_test_states, target_state, TargetKind};
use wforge_core::witness::{
    evaluate, evaluate_pure, fidelity_noise_tolerance, mermin_witness, noise_tolerance_analytic,
    noise_tolerance_scan, normalize, percent_error_vs, NormalizeMode, Witness,
};

fn report(criterion: &str, pass: bool, detail: &str) {
    println!(
        "ACCEPTANCE {criterion}: {} — {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "{criterion} failed: {detail}");
}

fn pipeline_config(n: usize, target: TargetKind, seed: u64, dir: &Path) -> PipelineConfig {
    PipelineConfig {
        n_qubits: n,
        target,
        seed: Some(seed),
        output_dir: dir.to_path_buf(),
        ..PipelineConfig::default()
    }
}

fn read_witness(path: &Path) -> Witness {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

/// gen-data -> train -> adjust in a temp dir; returns (trained, adjusted).
fn run_pipeline(cfg: &PipelineConfig) -> (Witness, Witness) {
    cmd_gen_data(cfg).unwrap();
    cmd_train(cfg).unwrap();
    let trained_path = cfg.output_dir.join("witness_trained.json");
    cmd_adjust(&trained_path, cfg).unwrap();
    (
        read_witness(&trained_path),
        read_witness(&cfg.output_dir.join("witness_adjusted.json")),
    )
}

#[test]
fn criterion_01_ghz4_coefficient_reproduction() {
    let dir = TempDir::new().unwrap();
    let cfg = pipeline_config(4, TargetKind::Ghz, 42, dir.path());
    let (_, adjusted) = run_pipeline(&cfg);
    cmd_compare(
        &cfg.output_dir.join("witness_adjusted.json"),
        &Reference::Mermin,
        &cfg,
    )
    .unwrap();

    let reference = mermin_witness(4).unwrap();
    let normalized = normalize(&adjusted, NormalizeMode::MatchIdentityOf(&reference)).unwrap();
    let mut worst: f64 = 0.0;
    for (s, &c) in normalized.non_identity_terms() {
        let target = reference.terms[s];
        worst = worst.max((c / target - 1.0).abs());
    }
    report(
        "C01",
        worst <= 0.10,
        &format!(
            "GHZ-4 pipeline: every coefficient within 10% of the stabilizer value (worst {:.2}%)",
            100.0 * worst
        ),
    );
}

#[test]
fn criterion_02_ghz3_footnote_ratio() {
    let dir = TempDir::new().unwrap();
    let cfg = pipeline_config(3, TargetKind::Ghz, 42, dir.path());
    cmd_gen_data(&cfg).unwrap();
    cmd_train(&cfg).unwrap();
    let trained = read_witness(&cfg.output_dir.join("witness_trained.json"));

    let bias = trained.identity_coefficient();
    let mut worst: f64 = 0.0;
    let mut ratios = Vec::new();
    for (s, &c) in trained.non_identity_terms() {
        let ratio = (bias / c).abs();
        ratios.push(format!("{s} {ratio:.3}"));
        worst = worst.max((ratio / 4.0 - 1.0).abs());
    }
    report(
        "C02",
        worst <= 0.07,
        &format!(
            "GHZ-3 trained bias:coefficient ratio vs the published 4:1 (measured {}; worst deviation {:.1}%). \
             A soft-margin optimum cannot reach 4:1 on this data: at any ratio above 3:1 every \
             entangled Werner training state up to p = 0.25 gets a positive decision value, so \
             the hinge loss pulls the plane back; the attainable ratio is 2:1 in the converged \
             limit. Recorded as a known discrepancy.",
            ratios.join(", "),
            100.0 * worst
        ),
    );
}

#[test]
fn criterion_03_ghz5_coefficient_reproduction() {
    // extended tier: the heaviest pipeline in the suite
    let dir = TempDir::new().unwrap();
    let cfg = pipeline_config(5, TargetKind::Ghz, 42, dir.path());
    let (_, adjusted) = run_pipeline(&cfg);

    let reference = mermin_witness(5).unwrap();
    let normalized = normalize(&adjusted, NormalizeMode::MatchIdentityOf(&reference)).unwrap();
    let comparison = percent_error_vs(&normalized, &reference).unwrap();
    let worst = comparison.max_abs_error();
    report(
        "C03",
        worst <= 3.0 && comparison.only_in_witness.is_empty(),
        &format!("GHZ-5 pipeline: max per-term error {worst:.2}% (gate 3%)"),
    );
}

#[test]
fn criterion_04_mso_tightness_oracle() {
    let w = mermin_witness(3).unwrap();
    let cfg = MsoConfig {
        seed: 42,
        ..MsoConfig::default()
    };
    let result = optimize(&w, &cfg).unwrap();
    report(
        "C04",
        result.min_expectation.abs() <= 5e-3,
        &format!(
            "separable minimum of the GHZ-3 stabilizer witness: {:+.6} (gate ±5e-3, {} restarts)",
            result.min_expectation, cfg.restarts
        ),
    );
}

#[test]
fn criterion_05_fixture_noise_tolerances() {
    let expected = [
        ("w4-46terms", 0.30),
        ("w4-38terms", 0.40),
        ("w4-28terms", 0.46),
        ("w5-20terms", 0.05),
        ("w5-180terms", 0.15),
    ];
    let mut detail = Vec::new();
    let mut pass = true;
    for ((name, w), (expect_name, expect)) in
        wforge_core::fixtures::all().unwrap().iter().zip(expected)
    {
        assert_eq!(*name, expect_name);
        let rho = target_state(TargetKind::W, w.num_qubits)
            .unwrap()
            .projector();
        let p = noise_tolerance_scan(w, &rho, 0.001).unwrap().p_star;
        if (p - expect).abs() > 0.02 {
            pass = false;
        }
        detail.push(format!("{name} {p:.3} (expect {expect:.2})"));
    }
    report("C05", pass, &detail.join(", "));
}

#[test]
fn criterion_06_fidelity_baselines() {
    let four = fidelity_noise_tolerance(4).unwrap();
    let five = fidelity_noise_tolerance(5).unwrap();
    report(
        "C06",
        four == 4.0 / 15.0 && five == 32.0 / 155.0,
        &format!("fidelity tolerances {four} and {five} match 4/15 and 32/155 exactly"),
    );
}

#[test]
fn criterion_07_validity_certificates() {
    const TOL: f64 = -1e-9;
    const MIXED: usize = 10_000;
    let mut witnesses: Vec<(String, Witness)> = wforge_core::fixtures::all()
        .unwrap()
        .into_iter()
        .map(|(name, w)| (name.to_string(), w))
        .collect();

    // pipeline-produced witnesses at 3 and 4 qubits
    for n in [3usize, 4] {
        let dir = TempDir::new().unwrap();
        let cfg = pipeline_config(n, TargetKind::Ghz, 42, dir.path());
        let (_, adjusted) = run_pipeline(&cfg);
        witnesses.push((format!("pipeline-ghz{n}"), adjusted));
    }

    // share one Dirichlet-mixed batch per qubit count
    let mut pass = true;
    let mut detail = Vec::new();
    for n in [3usize, 4, 5] {
        let group: Vec<&(String, Witness)> =
            witnesses.iter().filter(|(_, w)| w.num_qubits == n).collect();
        if group.is_empty() {
            continue;
        }
        let eigen = pauli_eigenstates(n);
        let mixed = separable_test_states(n, MIXED, 0.1, &SeedFanout::new(4242)).unwrap();
        for (name, w) in group {
            let eigen_min = batch::map_collect(&eigen, |psi| evaluate_pure(w, psi).unwrap())
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            let mixed_min = batch::map_collect(&mixed, |rho| evaluate(w, rho).unwrap())
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            let ok = eigen_min >= TOL && mixed_min >= TOL;
            if !ok {
                pass = false;
            }
            detail.push(format!("{name} min({eigen_min:+.2e}, {mixed_min:+.2e})"));
        }
    }
    report(
        "C07",
        pass,
        &format!(
            "all witnesses nonnegative on 6^N eigenstates and {MIXED} mixed separable states: {}",
            detail.join("; ")
        ),
    );
}

#[test]
fn criterion_08_structural_counts() {
    let sizes: Vec<usize> = [3, 4, 5]
        .iter()
        .map(|&n| build_catalog(n).unwrap().entries.len())
        .collect();
    let slots: Vec<usize> = [3, 4, 5]
        .iter()
        .map(|&n| build_catalog(n).unwrap().total_slots())
        .collect();
    let params = (
        raw_parameter_count(3).unwrap(),
        raw_parameter_count(4).unwrap(),
    );
    report(
        "C08",
        sizes == vec![3, 7, 30] && slots == vec![12, 44, 220] && params == (132, 788),
        &format!("catalog sizes {sizes:?}, slot counts {slots:?}, raw parameters {params:?}"),
    );
}

#[test]
fn criterion_09_property_suites() {
    let mut failures = Vec::new();

    // feature-map convexity at 1e-9
    {
        let fan = SeedFanout::new(5);
        let states = separable_test_states(3, 40, 0.5, &fan).unwrap();
        let set = wforge_core::features::FeatureSet::full(3);
        for pair in states.chunks(2) {
            if pair.len() < 2 {
                continue;
            }
            let p = 0.37;
            let mixed = DensityMatrix::new(
                pair[0].entries() * num_complex::Complex64::new(p, 0.0)
                    + pair[1].entries() * num_complex::Complex64::new(1.0 - p, 0.0),
            )
            .unwrap();
            let f0 = feature_vector(&pair[0], &set).unwrap();
            let f1 = feature_vector(&pair[1], &set).unwrap();
            let fm = feature_vector(&mixed, &set).unwrap();
            for i in 0..set.len() {
                if (fm.values[i] - (p * f0.values[i] + (1.0 - p) * f1.values[i])).abs() > 1e-9 {
                    failures.push("convexity".to_string());
                }
            }
        }
    }

    // analytic gradient vs central finite differences, 100 random points
    {
        let w = mermin_witness(3).unwrap();
        for point in 0..100u64 {
            let mut rng = SeedFanout::new(9000 + point).stream("acc-grad");
            let params = SeparableParameterization::random(3, &mut rng).unwrap();
            let grad = gradient(&params, &w).unwrap();
            for _ in 0..3 {
                let i = rng.gen_range(0..params.len());
                let mut plus = params.clone();
                plus.values[i] += 1e-6;
                let mut minus = params.clone();
                minus.values[i] -= 1e-6;
                let fd = (loss(&plus, &w).unwrap() - loss(&minus, &w).unwrap()) / 2e-6;
                let denom = grad[i].abs().max(fd.abs()).max(1e-3);
                if ((grad[i] - fd) / denom).abs() > 1e-5 {
                    failures.push(format!("gradient@{point}:{i}"));
                }
            }
        }
    }

    // scan vs closed form within one step, on every fixture
    for (name, w) in wforge_core::fixtures::all().unwrap() {
        let rho = target_state(TargetKind::W, w.num_qubits)
            .unwrap()
            .projector();
        let scan = noise_tolerance_scan(&w, &rho, 0.001).unwrap().p_star;
        let exact = noise_tolerance_analytic(&w, &rho).unwrap().p_star;
        if (scan - exact).abs() > 0.001 + 1e-12 {
            failures.push(format!("tolerance-{name}"));
        }
    }

    // positive scaling leaves classifications and tolerances unchanged
    {
        let w = mermin_witness(4).unwrap();
        let scaled = normalize(&w, NormalizeMode::BiasTo(13.0)).unwrap();
        let fan = SeedFanout::new(6);
        let states = separable_test_states(4, 50, 0.1, &fan).unwrap();
        for rho in &states {
            let a = evaluate(&w, rho).unwrap();
            let b = evaluate(&scaled, rho).unwrap();
            if (a < 0.0) != (b < 0.0) {
                failures.push("scaling-sign".to_string());
            }
        }
        let ghz = target_state(TargetKind::Ghz, 4).unwrap().projector();
        let pa = noise_tolerance_analytic(&w, &ghz).unwrap().p_star;
        let pb = noise_tolerance_analytic(&scaled, &ghz).unwrap().p_star;
        if (pa - pb).abs() > 1e-12 {
            failures.push("scaling-pstar".to_string());
        }
    }

    // end-to-end seed determinism: byte-identical artifacts
    {
        let mut digests = Vec::new();
        for _ in 0..2 {
            let dir = TempDir::new().unwrap();
            let mut cfg = pipeline_config(3, TargetKind::Ghz, 77, dir.path());
            cfg.mso.restarts = 4;
            run_pipeline(&cfg);
            let mut run_digest = Vec::new();
            for file in [
                "separable.csv",
                "entangled.csv",
                "witness_trained.json",
                "witness_adjusted.json",
                "adjust_trace.csv",
            ] {
                run_digest.push(std::fs::read(dir.path().join(file)).unwrap());
            }
            digests.push(run_digest);
        }
        if digests[0] != digests[1] {
            failures.push("determinism".to_string());
        }
    }

    report(
        "C09",
        failures.is_empty(),
        &format!(
            "convexity, gradient oracle, tolerance agreement, scaling invariance, determinism{}",
            if failures.is_empty() {
                String::new()
            } else {
                format!(" — failed: {failures:?}")
            }
        ),
    );
}

#[test]
fn criterion_10_rfe_smoke_run() {
    // 4-qubit elimination from the trained stabilizer-subset witness down to
    // 5 terms, twice, with identical results
    let mut outputs = Vec::new();
    let mut paths = Vec::new();
    for _ in 0..2 {
        let dir = TempDir::new().unwrap();
        let mut cfg = pipeline_config(4, TargetKind::Ghz, 42, dir.path());
        cfg.svm.epochs = 80;
        cfg.mso.restarts = 4;
        cfg.rfe = RfeSection {
            target_term_count: Some(5),
            certificate_samples: 1000,
            ..RfeSection::default()
        };
        let (_, _adjusted) = run_pipeline(&cfg);
        cmd_rfe(&cfg.output_dir.join("witness_adjusted.json"), &cfg).unwrap();
        outputs.push(std::fs::read(cfg.output_dir.join("witness_rfe.json")).unwrap());
        paths.push(dir);
    }
    let final_witness: Witness = serde_json::from_slice(&outputs[0]).unwrap();
    report(
        "C10",
        final_witness.term_count() == 5 && outputs[0] == outputs[1],
        &format!(
            "RFE pruned the GHZ-4 witness to {} terms, byte-identical across reruns",
            final_witness.term_count()
        ),
    );
}
