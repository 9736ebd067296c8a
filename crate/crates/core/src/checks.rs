//! Empirical hypothesis checkers.
//!
//! Asymptotic statements (`x_n = O(y_n)`, convergence of a series) cannot be
//! decided on a finite prefix, so every checker here reduces its claim to a
//! finite-prefix signal with explicit knobs:
//!
//! * `O(·)` claims become *running-sup stabilization*: the supremum of the
//!   tracked ratio over the whole prefix may exceed the supremum over the
//!   first three quarters by at most `pass_slack` (default 5%); growth
//!   between 5% and `inconclusive_slack` (default 25%) yields
//!   `inconclusive`, more yields `fail`;
//! * convergence claims delegate to [`crate::indices::assess_cumulative`];
//! * pointwise inequalities are checked exactly (with a stated tolerance
//!   where floating rounding makes literal equality meaningless).
//!
//! Every report echoes the thresholds it used, and every `fail` carries a
//! violation witness.

use serde::{Deserialize, Serialize};

use crate::cesaro::cesaro_means;
use crate::error::{Error, Result};
use crate::fourier::BvProfile;
use crate::indices::{assess_cumulative, BoundednessKnobs};
use crate::matrix::{associate, NormalMatrix};
use crate::report::CheckReport;
use crate::sequences::{
    check_quasi_monotone, forward_difference, FactorProfile, IndexBase, QuasiMonotoneKnobs,
    SequencePrefix, WeightSystem,
};

/// Slack thresholds for running-sup stabilization verdicts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StabilizationKnobs {
    /// Maximum allowed growth of the running sup across the final quarter
    /// for a `pass` verdict.
    pub pass_slack: f64,
    /// Growth beyond `pass_slack` but within this bound yields
    /// `inconclusive`; beyond it, `fail`.
    pub inconclusive_slack: f64,
}

impl Default for StabilizationKnobs {
    fn default() -> Self {
        StabilizationKnobs {
            pass_slack: 0.05,
            inconclusive_slack: 0.25,
        }
    }
}

impl StabilizationKnobs {
    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.pass_slack > 0.0 && self.pass_slack.is_finite()) {
            return Err(Error::config("pass_slack must be positive and finite"));
        }
        if !(self.inconclusive_slack >= self.pass_slack && self.inconclusive_slack.is_finite()) {
            return Err(Error::config(
                "inconclusive_slack must be finite and at least pass_slack",
            ));
        }
        Ok(())
    }
}

/// All checker thresholds in one bundle (used for config overrides).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(default)]
pub struct CheckKnobs {
    pub stabilization: StabilizationKnobs,
    pub boundedness: BoundednessKnobs,
    pub quasi_monotone: QuasiMonotoneKnobs,
}

/// Running-sup stabilization verdict over `(index, value)` pairs of a
/// nonnegative tracked quantity.
///
/// Let `R_m` be the running supremum. With `q` the three-quarter point,
/// the verdict compares `R_N` against `R_q`: growth within `pass_slack`
/// passes, within `inconclusive_slack` is inconclusive, beyond fails (the
/// witness is the index where the global supremum is first attained).
/// Fewer than 4 points cannot be split and yield `inconclusive`.
pub fn sup_stabilization(
    id: &str,
    values: &[(usize, f64)],
    knobs: &StabilizationKnobs,
) -> Result<CheckReport> {
    knobs.validate()?;
    if values.is_empty() {
        return Err(Error::invalid(format!(
            "stabilization check \"{}\" received no values",
            id
        )));
    }
    for &(n, v) in values {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::invalid(format!(
                "stabilization check \"{}\": tracked value at index {} is {}; expected a finite nonnegative quantity",
                id, n, v
            )));
        }
    }
    let base = CheckReport::inconclusive(id)
        .with_threshold("pass_slack", knobs.pass_slack)
        .with_threshold("inconclusive_slack", knobs.inconclusive_slack);
    if values.len() < 4 {
        return Ok(base.with_note(format!(
            "only {} points; need at least 4 to split off a final quarter",
            values.len()
        )));
    }

    let mut running = Vec::with_capacity(values.len());
    let mut sup = f64::NEG_INFINITY;
    let mut sup_at = values[0].0;
    for &(n, v) in values {
        if v > sup {
            sup = v;
            sup_at = n;
        }
        running.push(sup);
    }
    let q_pos = (3 * values.len()) / 4;
    let r_q = running[q_pos - 1];
    let r_n = *running.last().unwrap();
    let detail = format!(
        "running sup {:.6e} at three quarters vs {:.6e} at the end (first attained at index {})",
        r_q, r_n, sup_at
    );

    if r_q == 0.0 {
        return Ok(if r_n == 0.0 {
            base.renamed(id)
                .with_note("tracked quantity is identically zero")
                .passed_with(0.0)
        } else {
            CheckReport::fail(id, sup_at)
                .with_threshold("pass_slack", knobs.pass_slack)
                .with_threshold("inconclusive_slack", knobs.inconclusive_slack)
                .with_constant(r_n)
                .with_note(detail)
                .with_note("supremum appeared only in the final quarter")
        });
    }

    let growth = r_n / r_q;
    let report = if growth <= 1.0 + knobs.pass_slack {
        base.passed_with(r_n)
    } else if growth <= 1.0 + knobs.inconclusive_slack {
        base.with_constant(r_n)
            .with_note("running sup still drifting; verdict withheld")
    } else {
        CheckReport::fail(id, sup_at)
            .with_threshold("pass_slack", knobs.pass_slack)
            .with_threshold("inconclusive_slack", knobs.inconclusive_slack)
            .with_constant(r_n)
            .with_note("running sup still growing in the final quarter")
    };
    Ok(report
        .with_threshold("growth_ratio", growth)
        .with_note(detail))
}

/// Convergence verdict for a cumulative prefix, as a [`CheckReport`].
///
/// Delegates to [`assess_cumulative`]; on failure the witness is the first
/// index in the final half at which the tail increment already exceeded its
/// allowance (or the start of the fitted window when only the growth
/// exponent tripped).
pub fn boundedness_report(
    id: &str,
    cumulative: &SequencePrefix,
    knobs: &BoundednessKnobs,
) -> Result<CheckReport> {
    let v = assess_cumulative(cumulative, knobs)?;
    let len = cumulative.len();
    let values = cumulative.values();
    let final_sum = values[len - 1];
    let detail = format!(
        "tail increment {:.6e} (allowance {:.6e}), fitted growth exponent {:.4} over the final half, final sum {:.6e}",
        v.tail_increment, v.tail_epsilon, v.fitted_growth_exponent, final_sum
    );
    let report = if v.bounded_estimate {
        CheckReport::pass(id, final_sum)
    } else {
        let half_value = values[len / 2 - 1];
        let offending = (len / 2..len)
            .find(|&i| (values[i] - half_value).abs() >= v.tail_epsilon)
            .unwrap_or(len / 2);
        let witness = offending + cumulative.first_index();
        let mut r = CheckReport::fail(id, witness).with_constant(final_sum);
        if v.tail_increment < v.tail_epsilon {
            r = r.with_note(
                "tail increment within allowance but the growth exponent exceeded its threshold; witness marks the fitted window start",
            );
        }
        r
    };
    Ok(report
        .with_threshold("tail_eps_fraction", knobs.tail_eps_fraction)
        .with_threshold("tail_eps_abs", knobs.tail_eps_abs)
        .with_threshold("exponent_threshold", knobs.exponent_threshold)
        .with_note(detail))
}

/// Check `P_n = O(n p_n)`: the running sup of `P_n / (n p_n)` must
/// stabilize. Needs a weight prefix of length at least 16.
pub fn check_pn_growth(w: &WeightSystem) -> Result<CheckReport> {
    check_pn_growth_with(w, &CheckKnobs::default())
}

pub fn check_pn_growth_with(w: &WeightSystem, knobs: &CheckKnobs) -> Result<CheckReport> {
    if w.len() < 16 {
        return Err(Error::invalid(format!(
            "pn_growth needs a weight prefix of length >= 16, got {}",
            w.len()
        )));
    }
    let ratios: Vec<(usize, f64)> = (1..w.len())
        .map(|n| (n, w.cumulative_at(n) / (n as f64 * w.p_at(n))))
        .collect();
    sup_stabilization("pn_growth", &ratios, &knobs.stabilization)
}

/// The four factor-sequence hypotheses:
///
/// 1. `qm_companion` — the companion sequence is δ-quasi-monotone;
/// 2. `sum_n_x_delta` — `Σ n X_n δ_n` converges;
/// 3. `sum_companion_x` — `Σ A_n X_n` converges (signed);
/// 4. `lambda_diff_bound` — `|Δλ_n| ≤ |A_n|` pointwise (exact).
pub fn check_factor_hypotheses(fp: &FactorProfile, w: &WeightSystem) -> Result<Vec<CheckReport>> {
    check_factor_hypotheses_with(fp, w, &CheckKnobs::default())
}

pub fn check_factor_hypotheses_with(
    fp: &FactorProfile,
    w: &WeightSystem,
    knobs: &CheckKnobs,
) -> Result<Vec<CheckReport>> {
    let n_len = fp.len();
    if w.x().len() < n_len {
        return Err(Error::invalid(format!(
            "weight prefix provides X up to index {}, factor profile runs to {}",
            w.x().len(),
            n_len
        )));
    }
    let mut reports = Vec::with_capacity(4);

    reports.push(
        check_quasi_monotone(fp.companion(), fp.delta(), &knobs.quasi_monotone)?
            .renamed("qm_companion"),
    );

    let mut acc = 0.0;
    let nxd = SequencePrefix::from_fn(IndexBase::One, n_len, |n| {
        acc += n as f64 * w.x_at(n) * fp.delta().at(n);
        acc
    })?;
    reports.push(boundedness_report(
        "sum_n_x_delta",
        &nxd,
        &knobs.boundedness,
    )?);

    let mut acc = 0.0;
    let ax = SequencePrefix::from_fn(IndexBase::One, n_len, |n| {
        acc += fp.companion().at(n) * w.x_at(n);
        acc
    })?;
    reports.push(boundedness_report(
        "sum_companion_x",
        &ax,
        &knobs.boundedness,
    )?);

    let diffs = forward_difference(fp.lambda())?;
    let mut worst_ratio = 0.0f64;
    let mut violation = None;
    for (n, d) in diffs.indexed() {
        let bound = fp.companion().at(n).abs();
        if d.abs() > bound {
            violation = Some(n);
            break;
        }
        if bound > 0.0 {
            worst_ratio = worst_ratio.max(d.abs() / bound);
        }
    }
    reports.push(match violation {
        None => CheckReport::pass("lambda_diff_bound", worst_ratio)
            .with_note("constant is the largest observed |Δλ_n| / |A_n|"),
        Some(n) => CheckReport::fail("lambda_diff_bound", n).with_note(format!(
            "|Δλ_{}| = {:.6e} exceeds |A_{}| = {:.6e}",
            n,
            diffs.at(n).abs(),
            n,
            fp.companion().at(n).abs()
        )),
    });
    Ok(reports)
}

/// Check the mean-growth condition: with `t_n` the order-one means of the
/// series `a`, the sums `S_m = Σ_{n≤m} (p_n/P_n) |t_n|^k / X_n^{k-1}` must
/// satisfy `S_m = O(X_m)`, verified as stabilization of `S_m / X_m`.
pub fn check_tn_condition(a: &SequencePrefix, w: &WeightSystem, k: f64) -> Result<CheckReport> {
    check_tn_condition_with(a, w, k, &CheckKnobs::default())
}

pub fn check_tn_condition_with(
    a: &SequencePrefix,
    w: &WeightSystem,
    k: f64,
    knobs: &CheckKnobs,
) -> Result<CheckReport> {
    if !(k >= 1.0) || !k.is_finite() {
        return Err(Error::domain(format!("power k must be >= 1, got {}", k)));
    }
    if w.len() < a.len() {
        return Err(Error::invalid(format!(
            "weight prefix length {} shorter than series length {}",
            w.len(),
            a.len()
        )));
    }
    let means = cesaro_means(a, 1.0)?;
    let mut s = 0.0;
    let ratios: Vec<(usize, f64)> = means
        .t
        .indexed()
        .map(|(n, t)| {
            let x = w.x_at(n);
            s += w.p_at(n) / w.cumulative_at(n) * t.abs().powf(k) / x.powf(k - 1.0);
            (n, s / x)
        })
        .collect();
    Ok(sup_stabilization("tn_power_sum", &ratios, &knobs.stabilization)?.with_threshold("k", k))
}

struct MatrixView<'a> {
    dim: usize,
    entry: &'a dyn Fn(usize, usize) -> f64,
    abar: &'a dyn Fn(usize, usize) -> f64,
    ahat: &'a dyn Fn(usize, usize) -> f64,
}

const POSITIVITY_NOTE: &str = "positivity convention: all entries >= 0 and diagonal entries > 0";
const FIRST_COLUMN_TOLERANCE: f64 = 1e-12;
const MONOTONICITY_TOLERANCE: f64 = 1e-15;

fn matrix_conditions_core(
    view: &MatrixView<'_>,
    w: &WeightSystem,
    knobs: &StabilizationKnobs,
) -> Result<Vec<CheckReport>> {
    let dim = view.dim;
    let mut reports = Vec::with_capacity(4);

    // Row sums: abar(n, 0) must equal 1.
    let mut worst = 0.0f64;
    let mut violation = None;
    for n in 0..dim {
        let dev = ((view.abar)(n, 0) - 1.0).abs();
        worst = worst.max(dev);
        if dev > FIRST_COLUMN_TOLERANCE && violation.is_none() {
            violation = Some(n);
        }
    }
    reports.push(
        match violation {
            None => CheckReport::pass("matrix_first_column", worst)
                .with_note("constant is the largest deviation of a row sum from 1"),
            Some(n) => CheckReport::fail("matrix_first_column", n).with_note(format!(
                "row {} sums to {:.17e}",
                n,
                (view.abar)(n, 0)
            )),
        }
        .with_threshold("equality_tolerance", FIRST_COLUMN_TOLERANCE)
        .with_note(POSITIVITY_NOTE),
    );

    // Columns nonincreasing down the rows: a_{n-1,v} >= a_{nv}.
    let mut worst_rise = 0.0f64;
    let mut violation = None;
    'rows: for n in 1..dim {
        for v in 0..n {
            let rise = (view.entry)(n, v) - (view.entry)(n - 1, v);
            worst_rise = worst_rise.max(rise);
            if rise > MONOTONICITY_TOLERANCE {
                violation = Some((n, v));
                break 'rows;
            }
        }
    }
    reports.push(
        match violation {
            None => CheckReport::pass("matrix_column_decreasing", worst_rise.max(0.0))
                .with_note("constant is the largest observed increase down a column"),
            Some((n, v)) => CheckReport::fail("matrix_column_decreasing", n).with_note(format!(
                "column {} increases from row {}: {:.17e} -> {:.17e}",
                v,
                n - 1,
                (view.entry)(n - 1, v),
                (view.entry)(n, v)
            )),
        }
        .with_threshold("monotonicity_tolerance", MONOTONICITY_TOLERANCE)
        .with_note(POSITIVITY_NOTE),
    );

    // Diagonal comparable to p_n / P_n.
    let diag: Vec<(usize, f64)> = (0..dim)
        .map(|n| (n, (view.entry)(n, n) * w.cumulative_at(n) / w.p_at(n)))
        .collect();
    reports
        .push(sup_stabilization("matrix_diagonal_ratio", &diag, knobs)?.with_note(POSITIVITY_NOTE));

    // Hat entries dominated by the weighted row differences:
    // |ahat(n, v+1)| = O(v |Δ̄ a_{nv}|) with Δ̄ a_{nv} = a_{nv} - a_{n-1,v}.
    // v ranges over 1..n: at v = 0 the right-hand side vanishes identically,
    // so that column cannot carry information.
    let mut row_sups: Vec<(usize, f64)> = Vec::new();
    let mut vanished: Option<(usize, usize, f64)> = None;
    'hat: for n in 2..dim {
        let mut row_sup: Option<f64> = None;
        for v in 1..n {
            let num = (view.ahat)(n, v + 1).abs();
            let den = v as f64 * ((view.entry)(n, v) - (view.entry)(n - 1, v)).abs();
            if den == 0.0 {
                if num == 0.0 {
                    continue; // vacuous pair
                }
                vanished = Some((n, v, num));
                break 'hat;
            }
            let ratio = num / den;
            row_sup = Some(row_sup.map_or(ratio, |r: f64| r.max(ratio)));
        }
        if let Some(r) = row_sup {
            row_sups.push((n, r));
        }
    }
    let hat_interpretation =
        "comparison uses the row difference a_{nv} - a_{n-1,v}; columns v >= 1 only";
    reports.push(match vanished {
        Some((n, v, num)) => CheckReport::fail("matrix_hat_bound", n)
            .with_note(format!(
                "at (n, v) = ({}, {}) the comparison v|Δ̄a_nv| vanishes while |â| = {:.6e}",
                n, v, num
            ))
            .with_note(hat_interpretation)
            .with_note(POSITIVITY_NOTE),
        None => {
            if row_sups.is_empty() {
                CheckReport::inconclusive("matrix_hat_bound")
                    .with_note("no informative (n, v) pairs at this dimension")
                    .with_note(hat_interpretation)
                    .with_note(POSITIVITY_NOTE)
            } else {
                sup_stabilization("matrix_hat_bound", &row_sups, knobs)?
                    .with_note(hat_interpretation)
                    .with_note(POSITIVITY_NOTE)
            }
        }
    });
    Ok(reports)
}

/// The four structural matrix conditions for a positive normal matrix:
/// row sums equal to one (`matrix_first_column`), columns nonincreasing down
/// the rows (`matrix_column_decreasing`), diagonal comparable to `p_n/P_n`
/// (`matrix_diagonal_ratio`), and hat entries dominated by weighted row
/// differences (`matrix_hat_bound`).
///
/// Entries must be nonnegative with a strictly positive diagonal; anything
/// else is a domain error.
pub fn check_matrix_conditions(a: &NormalMatrix, w: &WeightSystem) -> Result<Vec<CheckReport>> {
    check_matrix_conditions_with(a, w, &CheckKnobs::default())
}

pub fn check_matrix_conditions_with(
    a: &NormalMatrix,
    w: &WeightSystem,
    knobs: &CheckKnobs,
) -> Result<Vec<CheckReport>> {
    let dim = a.dim();
    if w.len() < dim {
        return Err(Error::invalid(format!(
            "weight prefix length {} shorter than matrix dimension {}",
            w.len(),
            dim
        )));
    }
    for n in 0..dim {
        for v in 0..=n {
            let e = a.entry(n, v);
            if e < 0.0 {
                return Err(Error::domain(format!(
                    "positive normal matrix required: entry ({}, {}) = {}",
                    n, v, e
                )));
            }
        }
        if a.entry(n, n) <= 0.0 {
            return Err(Error::domain(format!(
                "positive normal matrix required: diagonal entry {} is {}",
                n,
                a.entry(n, n)
            )));
        }
    }
    let assoc = associate(a);
    let entry = |n: usize, v: usize| a.entry(n, v);
    let abar = |n: usize, v: usize| assoc.abar.entry(n, v);
    let ahat = |n: usize, v: usize| assoc.ahat.entry(n, v);
    matrix_conditions_core(
        &MatrixView {
            dim,
            entry: &entry,
            abar: &abar,
            ahat: &ahat,
        },
        w,
        &knobs.stabilization,
    )
}

/// The same four conditions for the weighted-mean matrix of `w`, evaluated
/// through its closed-form entries without materializing the triangle. This
/// is what makes dimension-10⁴ condition suites affordable.
pub fn check_weighted_mean_conditions(w: &WeightSystem, dim: usize) -> Result<Vec<CheckReport>> {
    check_weighted_mean_conditions_with(w, dim, &CheckKnobs::default())
}

pub fn check_weighted_mean_conditions_with(
    w: &WeightSystem,
    dim: usize,
    knobs: &CheckKnobs,
) -> Result<Vec<CheckReport>> {
    if dim < 2 || w.len() < dim {
        return Err(Error::invalid(format!(
            "weighted-mean conditions need 2 <= dim <= weight length; got dim = {}, length = {}",
            dim,
            w.len()
        )));
    }
    let entry = |n: usize, v: usize| w.p_at(v) / w.cumulative_at(n);
    let abar = |n: usize, v: usize| crate::matrix::weighted_mean_abar_entry(w, n, v);
    let ahat = |n: usize, v: usize| crate::matrix::weighted_mean_ahat_entry(w, n, v);
    matrix_conditions_core(
        &MatrixView {
            dim,
            entry: &entry,
            abar: &abar,
            ahat: &ahat,
        },
        w,
        &knobs.stabilization,
    )
}

/// The three boundedness conclusions implied by the factor hypotheses:
/// `|λ_n| X_n = O(1)` (`lemma_lambda_x`), `n X_n |A_n| = O(1)`
/// (`lemma_n_x_companion`), and convergence of `Σ n X_n |ΔA_n|`
/// (`lemma_companion_diff_sum`).
pub fn check_lemma3(fp: &FactorProfile, w: &WeightSystem) -> Result<Vec<CheckReport>> {
    check_lemma3_with(fp, w, &CheckKnobs::default())
}

pub fn check_lemma3_with(
    fp: &FactorProfile,
    w: &WeightSystem,
    knobs: &CheckKnobs,
) -> Result<Vec<CheckReport>> {
    let n_len = fp.len();
    if w.x().len() < n_len {
        return Err(Error::invalid(format!(
            "weight prefix provides X up to index {}, factor profile runs to {}",
            w.x().len(),
            n_len
        )));
    }
    let mut reports = Vec::with_capacity(3);

    let lx: Vec<(usize, f64)> = fp
        .lambda()
        .indexed()
        .map(|(n, l)| (n, l.abs() * w.x_at(n)))
        .collect();
    reports.push(sup_stabilization(
        "lemma_lambda_x",
        &lx,
        &knobs.stabilization,
    )?);

    let nxa: Vec<(usize, f64)> = fp
        .companion()
        .indexed()
        .map(|(n, a)| (n, n as f64 * w.x_at(n) * a.abs()))
        .collect();
    reports.push(sup_stabilization(
        "lemma_n_x_companion",
        &nxa,
        &knobs.stabilization,
    )?);

    let diffs = forward_difference(fp.companion())?;
    if diffs.len() < 16 {
        // The difference sequence is one entry shorter than the profile, so
        // a 16-entry profile leaves too little data for the two-signal
        // boundedness assessment; withhold judgment rather than error.
        reports.push(
            CheckReport::inconclusive("lemma_companion_diff_sum").with_note(format!(
                "only {} difference terms available; the boundedness assessment needs 16",
                diffs.len()
            )),
        );
        return Ok(reports);
    }
    let mut acc = 0.0;
    let sums = SequencePrefix::from_fn(IndexBase::One, diffs.len(), |n| {
        acc += n as f64 * w.x_at(n) * diffs.at(n).abs();
        acc
    })?;
    reports.push(boundedness_report(
        "lemma_companion_diff_sum",
        &sums,
        &knobs.boundedness,
    )?);
    Ok(reports)
}

/// Verdict for a bounded-variation refinement profile: the variation at the
/// finest grid must not exceed the previous refinement by more than the
/// stabilization slacks. On failure the witness is the finest grid size.
pub fn bv_profile_report(
    id: &str,
    profile: &BvProfile,
    knobs: &StabilizationKnobs,
) -> Result<CheckReport> {
    knobs.validate()?;
    let m = profile.variations.len();
    if m < 2 || profile.grid_sizes.len() != m {
        return Err(Error::invalid(
            "a variation profile needs at least two refinement levels",
        ));
    }
    let prev = profile.variations[m - 2];
    let last = profile.variations[m - 1];
    let finest = profile.grid_sizes[m - 1];
    let detail = format!(
        "variation {:.6e} at {} points vs {:.6e} at {} points",
        prev,
        profile.grid_sizes[m - 2],
        last,
        finest
    );
    let report = if prev == 0.0 {
        if last == 0.0 {
            CheckReport::pass(id, 0.0).with_note("variation is identically zero")
        } else {
            CheckReport::fail(id, finest)
                .with_note("variation appeared only at the finest refinement")
        }
    } else {
        let growth = last / prev;
        let r = if growth <= 1.0 + knobs.pass_slack {
            CheckReport::pass(id, last)
        } else if growth <= 1.0 + knobs.inconclusive_slack {
            CheckReport::inconclusive(id).with_constant(last)
        } else {
            CheckReport::fail(id, finest).with_constant(last)
        };
        r.with_threshold("growth_ratio", growth)
    };
    Ok(report
        .with_threshold("pass_slack", knobs.pass_slack)
        .with_threshold("inconclusive_slack", knobs.inconclusive_slack)
        .with_note(detail)
        .with_note("failure witness is the finest grid size, not a sequence index"))
}
