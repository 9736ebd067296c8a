//! Acceptance suite: one test per release criterion, each printing a
//! `[A#] PASS — ...` line on success (visible with `--nocapture`). Every
//! tolerance is pinned here, next to the assertion it governs. Runtime
//! budgets are asserted with wall-clock measurements.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use summatrix::cesaro::cesaro_means;
use summatrix::checks::{check_pn_growth, check_weighted_mean_conditions};
use summatrix::experiment::{run_theorem_experiment, ConsistencyFinding, ExperimentConfig};
use summatrix::fourier::{fourier_coefficients, named_function, z_mean, FourierData};
use summatrix::indices::{cesaro_index, matrix_index, riesz_index};
use summatrix::matrix::{
    apply, apply_series_form, associate, weighted_mean_abar_entry, weighted_mean_ahat_entry,
    weighted_mean_matrix, NormalMatrix,
};
use summatrix::sequences::{partial_sums, IndexBase, SequencePrefix, WeightSystem};
use summatrix::Verdict;

fn random_series(rng: &mut ChaCha8Rng, len: usize) -> SequencePrefix {
    SequencePrefix::from_fn(IndexBase::Zero, len, |_| rng.random_range(-1.0..=1.0)).unwrap()
}

fn random_weights(rng: &mut ChaCha8Rng, len: usize) -> WeightSystem {
    let p = SequencePrefix::from_fn(IndexBase::Zero, len, |_| rng.random_range(0.1..=2.0)).unwrap();
    WeightSystem::new(p).unwrap()
}

fn unit_weights(len: usize) -> WeightSystem {
    WeightSystem::from_values(vec![1.0; len]).unwrap()
}

/// Mixed absolute/relative tolerance: |got - want| <= tol * max(1, |want|).
fn close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}

#[test]
fn a01_cesaro_mean_identity_on_random_series() {
    const N: usize = 200;
    const RUNS: usize = 100;
    const TOL: f64 = 1e-10;
    const BUDGET_SECS: f64 = 5.0;

    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for run in 0..RUNS {
        let a = random_series(&mut rng, N);
        let m = cesaro_means(&a, 1.0).unwrap();
        for n in 1..N {
            let lhs = n as f64 * (m.u.at(n) - m.u.at(n - 1));
            let rhs = m.t.at(n);
            assert!(
                close(lhs, rhs, TOL),
                "[A1] FAIL — run {}, n = {}: n(u_n - u_(n-1)) = {} vs t_n = {}",
                run,
                n,
                lhs,
                rhs
            );
        }
    }
    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < BUDGET_SECS,
        "[A1] FAIL — {} runs took {:.2}s (budget {}s)",
        RUNS,
        elapsed,
        BUDGET_SECS
    );
    println!(
        "[A1] PASS — n(u_n - u_(n-1)) = t_n within {:e} over {} random series of length {} in {:.2}s",
        TOL, RUNS, N, elapsed
    );
}

#[test]
fn a02_riesz_index_with_unit_weights_is_the_cesaro_index() {
    const N: usize = 500;
    const TOL: f64 = 1e-12;

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let w = unit_weights(N);
    for series in 0..5 {
        let a = random_series(&mut rng, N);
        for &k in &[1.0, 1.5, 2.0] {
            let c = cesaro_index(&a, 1.0, k).unwrap();
            let r = riesz_index(&a, &w, k).unwrap();
            assert_eq!(c.terms.len(), r.terms.len());
            for (n, cv) in c.terms.indexed() {
                let rv = r.terms.at(n);
                assert!(
                    close(rv, cv, TOL),
                    "[A2] FAIL — series {}, k = {}, n = {}: riesz {} vs cesaro {}",
                    series,
                    k,
                    n,
                    rv,
                    cv
                );
            }
        }
    }
    println!(
        "[A2] PASS — riesz_index(p = 1) matches cesaro_index(α = 1) termwise within {:e} for k in {{1, 1.5, 2}}, N = {}",
        TOL, N
    );
}

#[test]
fn a03_matrix_index_specializes_to_riesz_index() {
    const N: usize = 300;
    const SYSTEMS: usize = 20;
    const TOL: f64 = 1e-10;

    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for system in 0..SYSTEMS {
        let w = random_weights(&mut rng, N);
        let a = random_series(&mut rng, N);
        let m = weighted_mean_matrix(&w, N).unwrap();
        for &k in &[1.0, 1.5, 2.0] {
            let via_matrix = matrix_index(&a, &m, &w, k).unwrap();
            let via_riesz = riesz_index(&a, &w, k).unwrap();
            for (n, mv) in via_matrix.terms.indexed() {
                let rv = via_riesz.terms.at(n);
                assert!(
                    close(mv, rv, TOL),
                    "[A3] FAIL — system {}, k = {}, n = {}: matrix {} vs riesz {}",
                    system,
                    k,
                    n,
                    mv,
                    rv
                );
            }
        }
    }
    println!(
        "[A3] PASS — matrix_index over the weighted-mean matrix matches riesz_index within {:e} for {} random weight systems, N = {}",
        TOL, SYSTEMS, N
    );
}

fn random_normal_matrix(rng: &mut ChaCha8Rng, dim: usize) -> NormalMatrix {
    let rows: Vec<Vec<f64>> = (0..dim)
        .map(|n| {
            (0..=n)
                .map(|v| {
                    if v == n {
                        // Diagonal bounded away from zero.
                        rng.random_range(0.5..=1.5)
                    } else {
                        rng.random_range(-1.0..=1.0)
                    }
                })
                .collect()
        })
        .collect();
    NormalMatrix::from_rows(rows).unwrap()
}

#[test]
fn a04_series_form_reconstructs_the_partial_sum_transform() {
    const MATRICES: usize = 50;
    const TOL: f64 = 1e-10;

    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for case in 0..MATRICES {
        let dim = rng.random_range(2..=50);
        let m = random_normal_matrix(&mut rng, dim);
        let terms = random_series(&mut rng, dim);
        let s = partial_sums(&terms).unwrap();
        let direct = apply(&m, &s).unwrap();
        let series = apply_series_form(&m, &terms).unwrap();
        for (n, dv) in direct.an.indexed() {
            assert!(
                close(series.an.at(n), dv, TOL),
                "[A4] FAIL — case {}, A_{}: series form {} vs direct {}",
                case,
                n,
                series.an.at(n),
                dv
            );
        }
        for (n, dv) in direct.d_an.indexed() {
            assert!(
                close(series.d_an.at(n), dv, TOL),
                "[A4] FAIL — case {}, Δ̄A_{}: Σ â·a = {} vs direct difference {}",
                case,
                n,
                series.d_an.at(n),
                dv
            );
        }
    }
    println!(
        "[A4] PASS — ā/â series-form transform matches the partial-sum route within {:e} on {} random normal matrices (dim ≤ 50)",
        TOL, MATRICES
    );
}

#[test]
fn a05_weighted_mean_associate_matches_the_closed_forms() {
    const N: usize = 200;
    const TOL: f64 = 1e-12;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for (label, w) in [
        ("unit", unit_weights(N)),
        ("random", random_weights(&mut rng, N)),
    ] {
        let m = weighted_mean_matrix(&w, N).unwrap();
        let assoc = associate(&m);
        for n in 0..N {
            for v in 0..=n {
                let abar = assoc.abar.entry(n, v);
                let abar_closed = weighted_mean_abar_entry(&w, n, v);
                assert!(
                    close(abar, abar_closed, TOL),
                    "[A5] FAIL — {} weights, ā_({},{}) = {} vs closed form {}",
                    label,
                    n,
                    v,
                    abar,
                    abar_closed
                );
                let ahat = assoc.ahat.entry(n, v);
                let ahat_closed = weighted_mean_ahat_entry(&w, n, v);
                assert!(
                    close(ahat, ahat_closed, TOL),
                    "[A5] FAIL — {} weights, â_({},{}) = {} vs closed form {}",
                    label,
                    n,
                    v,
                    ahat,
                    ahat_closed
                );
            }
        }
    }
    println!(
        "[A5] PASS — associate() of the weighted-mean matrix matches both closed forms entrywise within {:e}, N = {}",
        TOL, N
    );
}

#[test]
fn a06_weighted_mean_condition_suite_at_two_thousand() {
    const DIM: usize = 2001;
    const BUDGET_SECS: f64 = 10.0;

    let start = Instant::now();
    let w = unit_weights(DIM);
    let reports = check_weighted_mean_conditions(&w, DIM).unwrap();
    let by_id = |id: &str| {
        reports
            .iter()
            .find(|r| r.id == id)
            .unwrap_or_else(|| panic!("[A6] FAIL — report {} missing", id))
    };

    let first = by_id("matrix_first_column");
    assert_eq!(
        first.verdict,
        Verdict::Pass,
        "[A6] FAIL — row sums: {:?}",
        first
    );
    assert_eq!(
        first.constant,
        Some(0.0),
        "[A6] FAIL — row sums should be exact for unit weights"
    );

    let mono = by_id("matrix_column_decreasing");
    assert_eq!(
        mono.verdict,
        Verdict::Pass,
        "[A6] FAIL — column monotonicity: {:?}",
        mono
    );

    let diag = by_id("matrix_diagonal_ratio");
    assert_eq!(
        diag.verdict,
        Verdict::Pass,
        "[A6] FAIL — diagonal ratio: {:?}",
        diag
    );
    let c = diag.constant.expect("diagonal ratio constant");
    assert!(
        c <= 1.0 + 1e-12,
        "[A6] FAIL — diagonal ratio constant {} exceeds 1 + 1e-12",
        c
    );

    let hat = by_id("matrix_hat_bound");
    assert_eq!(
        hat.verdict,
        Verdict::Pass,
        "[A6] FAIL — hat bound: {:?}",
        hat
    );
    let h = hat.constant.expect("hat bound constant");
    assert!(
        h.is_finite(),
        "[A6] FAIL — hat bound constant not finite: {}",
        h
    );

    let elapsed = start.elapsed().as_secs_f64();
    assert!(
        elapsed < BUDGET_SECS,
        "[A6] FAIL — condition suite took {:.2}s (budget {}s)",
        elapsed,
        BUDGET_SECS
    );
    println!(
        "[A6] PASS — all four weighted-mean conditions hold at dim {} (diagonal constant {}, hat constant {}) in {:.2}s",
        DIM, c, h, elapsed
    );
}

#[test]
fn a07_sawtooth_quadrature_matches_the_analytic_coefficients() {
    const N_MAX: usize = 64;
    const POINTS: usize = 8192;
    const TOL: f64 = 1e-6;

    let f = named_function("sawtooth").unwrap();
    let c = fourier_coefficients(f.function(), N_MAX, POINTS).unwrap();
    for n in 1..=N_MAX {
        let want = 2.0 * if n % 2 == 1 { 1.0 } else { -1.0 } / n as f64;
        let got = c.b.at(n);
        assert!(
            (got - want).abs() < TOL,
            "[A7] FAIL — b_{} = {} vs 2(-1)^(n+1)/n = {}",
            n,
            got,
            want
        );
        assert!(
            c.a.at(n).abs() < TOL,
            "[A7] FAIL — a_{} = {} should vanish for an odd function",
            n,
            c.a.at(n)
        );
    }
    println!(
        "[A7] PASS — sawtooth b_n matches 2(-1)^(n+1)/n within {:e} for n ≤ {} at {} quadrature points",
        TOL, N_MAX, POINTS
    );
}

#[test]
fn a08_sawtooth_z_means_stay_bounded_under_prefix_doubling() {
    const N: usize = 10_000;
    let x = std::f64::consts::FRAC_PI_2;

    let f = named_function("sawtooth").unwrap();
    let max_abs_z = |n_max: usize| -> f64 {
        let c = f
            .analytic_coefficients(n_max)
            .unwrap()
            .expect("sawtooth has closed-form coefficients");
        let data = FourierData::from_coefficients(&c, x).unwrap();
        let z = z_mean(&data.c).unwrap();
        z.values().iter().fold(0.0f64, |m, v| m.max(v.abs()))
    };

    let at_n = max_abs_z(N);
    let at_2n = max_abs_z(2 * N);
    assert!(
        at_n.is_finite() && at_2n.is_finite(),
        "[A8] FAIL — non-finite z means"
    );
    let ratio = at_2n / at_n;
    assert!(
        (0.9..=1.1).contains(&ratio),
        "[A8] FAIL — max|z| over N = {} is {}, over 2N is {} (ratio {})",
        N,
        at_n,
        at_2n,
        ratio
    );
    println!(
        "[A8] PASS — max|z_n| = {} at N = {}, ratio {} under doubling (within [0.9, 1.1])",
        at_n, N, ratio
    );
}

#[test]
fn a09_canonical_scenario_passes_end_to_end() {
    const BUDGET_SECS: f64 = 60.0;

    let start = Instant::now();
    let cfg = ExperimentConfig::canonical_weighted_mean();
    assert_eq!(cfg.n, 10_000);
    assert_eq!(cfg.k_values, vec![1.0, 2.0]);
    let outcome = run_theorem_experiment(&cfg).unwrap();
    let elapsed = start.elapsed().as_secs_f64();

    for r in &outcome.gate_reports {
        assert_ne!(
            r.verdict,
            Verdict::Fail,
            "[A9] FAIL — gate {} failed:\n{}",
            r.id,
            outcome.summary
        );
    }
    assert_eq!(
        outcome.conclusion_reports.len(),
        2,
        "[A9] FAIL — expected conclusions for k = 1 and k = 2"
    );
    for r in &outcome.conclusion_reports {
        assert_eq!(
            r.verdict,
            Verdict::Pass,
            "[A9] FAIL — conclusion {} did not pass:\n{}",
            r.id,
            outcome.summary
        );
    }
    assert_eq!(outcome.exit_code, 0, "[A9] FAIL —\n{}", outcome.summary);
    assert!(
        matches!(outcome.consistency, ConsistencyFinding::Consistent { .. }),
        "[A9] FAIL — consistency finding: {:?}",
        outcome.consistency
    );
    assert!(
        elapsed < BUDGET_SECS,
        "[A9] FAIL — pipeline took {:.2}s (budget {}s)",
        elapsed,
        BUDGET_SECS
    );
    println!(
        "[A9] PASS — canonical weighted-mean scenario: every gate holds and both summability traces pass at N = 10^4 in {:.2}s",
        elapsed
    );
}

#[test]
fn a10_negative_controls_are_diagnosed_precisely() {
    // (a) Constant λ against weights whose X_n is unbounded: every finite
    // gate passes, so the first intermediate conclusion must be the thing
    // that breaks, and the run must surface it loudly (exit 1).
    let cfg = ExperimentConfig::scenario("constant-lambda-control").unwrap();
    let outcome = run_theorem_experiment(&cfg).unwrap();
    let lemma_i = outcome
        .lemma_reports
        .iter()
        .find(|r| r.id == "lemma_lambda_x")
        .expect("lemma_lambda_x report");
    assert_eq!(
        lemma_i.verdict,
        Verdict::Fail,
        "[A10a] FAIL — {:?}",
        lemma_i
    );
    assert_eq!(
        outcome.exit_code, 1,
        "[A10a] FAIL — expected exit 1:\n{}",
        outcome.summary
    );

    // (b) Collapsing weights p_n = 2^(-n): the weight growth gate fails.
    let w = WeightSystem::new(
        SequencePrefix::from_fn(IndexBase::Zero, 64, |n| 0.5f64.powi(n as i32)).unwrap(),
    )
    .unwrap();
    let pn = check_pn_growth(&w).unwrap();
    assert_eq!(pn.verdict, Verdict::Fail, "[A10b] FAIL — {:?}", pn);

    // (c) A matrix violating column monotonicity is caught with the exact
    // first offending row: a_00 = 0.5 < a_10 = 0.9 makes row 1 the witness.
    let m = NormalMatrix::from_rows(vec![vec![0.5], vec![0.9, 0.1], vec![0.3, 0.3, 0.4]]).unwrap();
    let w3 = unit_weights(3);
    let reports = summatrix::checks::check_matrix_conditions(&m, &w3).unwrap();
    let mono = reports
        .iter()
        .find(|r| r.id == "matrix_column_decreasing")
        .expect("column monotonicity report");
    assert_eq!(mono.verdict, Verdict::Fail, "[A10c] FAIL — {:?}", mono);
    assert_eq!(
        mono.first_violation,
        Some(1),
        "[A10c] FAIL — wrong witness: {:?}",
        mono
    );

    println!(
        "[A10] PASS — constant λ trips the λX lemma (exit 1); collapsing weights trip the growth gate; a non-monotone column is caught at row 1"
    );
}
