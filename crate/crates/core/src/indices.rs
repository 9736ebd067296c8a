//! Absolute summability indices.
//!
//! A series is absolutely summable (index `k >= 1`) under a given method
//! when the weighted power series of its mean differences converges. This
//! module computes those term sequences on finite prefixes:
//!
//! * Cesàro: `terms_n = |t_n^α|^k / n`, with the equivalent form
//!   `n^{k-1} |u_n^α - u_{n-1}^α|^k` recomputed as an internal consistency
//!   check (the two must agree to 1e-8 relative);
//! * weighted mean (Riesz): `terms_n = (P_{n-1}/p_n)^{k-1} |w_n - w_{n-1}|^k`;
//! * general normal matrix: the same weight factor against the transform
//!   differences `A_n(s) - A_{n-1}(s)`.
//!
//! The weight factor uses the predecessor ratio `P_{n-1}/p_n`, which equals
//! `n` for unit weights. That normalization makes the weighted-mean index of
//! unit weights coincide with the Cesàro index of order one term by term
//! (not merely up to a bounded factor), and reduces the identity-matrix
//! index to `n^{k-1} |a_n|^k`; both identities are pinned in the tests.
//!
//! Since no finite prefix can decide convergence, [`assess_boundedness`]
//! returns a two-signal estimate (tail increment + fitted growth exponent)
//! with every threshold echoed in the result.

use serde::{Deserialize, Serialize};

use crate::cesaro::cesaro_means;
use crate::error::{Error, Result};
use crate::matrix::{apply_series_form, weighted_mean_transform, NormalMatrix};
use crate::sequences::{partial_sums, IndexBase, SequencePrefix, WeightSystem};

/// Which summability method produced a trace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Cesaro,
    Riesz,
    Matrix,
}

/// Term-by-term record of an absolute summability sum.
///
/// `terms` are nonnegative, `cumulative` is their exact running sum, and
/// both are indexed from 1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AbsoluteIndexTrace {
    pub method: Method,
    pub k: f64,
    pub terms: SequencePrefix,
    pub cumulative: SequencePrefix,
}

impl AbsoluteIndexTrace {
    fn from_terms(method: Method, k: f64, terms: Vec<f64>) -> Result<Self> {
        let mut acc = 0.0;
        let cumulative: Vec<f64> = terms
            .iter()
            .map(|t| {
                acc += t;
                acc
            })
            .collect();
        Ok(AbsoluteIndexTrace {
            method,
            k,
            terms: SequencePrefix::new(terms, IndexBase::One)?,
            cumulative: SequencePrefix::new(cumulative, IndexBase::One)?,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Final cumulative value.
    pub fn total(&self) -> f64 {
        *self.cumulative.values().last().expect("trace is nonempty")
    }

    /// Write the trace as CSV with columns `n,term,cumulative` at full
    /// double precision (17 significant digits; values round-trip exactly).
    pub fn write_csv<W: std::io::Write>(&self, mut out: W) -> std::io::Result<()> {
        writeln!(out, "n,term,cumulative")?;
        for ((n, t), (_, c)) in self.terms.indexed().zip(self.cumulative.indexed()) {
            writeln!(out, "{},{:.16e},{:.16e}", n, t, c)?;
        }
        Ok(())
    }
}

fn check_power(k: f64) -> Result<()> {
    if !(k >= 1.0) || !k.is_finite() {
        return Err(Error::domain(format!(
            "index power k must be >= 1, got {}",
            k
        )));
    }
    Ok(())
}

/// Predecessor weight ratio `P_{n-1}/p_n` for `n >= 1`; equals `n` for unit
/// weights.
pub(crate) fn index_weight_ratio(w: &WeightSystem, n: usize) -> f64 {
    debug_assert!(n >= 1);
    w.cumulative_before(n) / w.p_at(n)
}

/// `ratio^{k-1} * |delta|^k`, evaluated jointly in log space when the ratio
/// is extreme. The direct product can produce `inf * 0 = NaN` for rapidly
/// growing ratios against rapidly vanishing differences (e.g. weights
/// `p_n = 2^-n`); the log-space form keeps the term finite.
pub(crate) fn weighted_power_term(ratio: f64, k: f64, delta: f64) -> f64 {
    debug_assert!(ratio > 0.0, "weight ratio must be positive");
    let ad = delta.abs();
    if ad == 0.0 {
        return 0.0;
    }
    if k == 1.0 {
        return ad;
    }
    if ratio > 1e8 || !(1e-120..=1e120).contains(&ad) {
        ((k - 1.0) * ratio.ln() + k * ad.ln()).exp()
    } else {
        ratio.powf(k - 1.0) * ad.powf(k)
    }
}

/// Absolute Cesàro index trace of order `alpha` and power `k` for the series
/// terms `a` (indexed from 0, length >= 2).
///
/// Terms are `|t_n^α|^k / n`; the equivalent difference form
/// `n^{k-1} |u_n^α - u_{n-1}^α|^k` is recomputed alongside and a
/// disagreement beyond 1e-8 relative (with a small absolute floor) is
/// reported as a numerical inconsistency rather than silently returned.
pub fn cesaro_index(a: &SequencePrefix, alpha: f64, k: f64) -> Result<AbsoluteIndexTrace> {
    check_power(k)?;
    let means = cesaro_means(a, alpha)?;
    let mut terms = Vec::with_capacity(means.t.len());
    let mut dual = Vec::with_capacity(means.t.len());
    for (n, t) in means.t.indexed() {
        terms.push(t.abs().powf(k) / n as f64);
        let du = means.u.values()[n] - means.u.values()[n - 1];
        dual.push(weighted_power_term(n as f64, k, du));
    }
    let scale = terms
        .iter()
        .chain(dual.iter())
        .fold(0.0f64, |m, &v| m.max(v));
    for (i, (x, y)) in terms.iter().zip(dual.iter()).enumerate() {
        let tol = 1e-8 * x.abs().max(y.abs()) + 1e-14 * scale;
        if (x - y).abs() > tol {
            return Err(Error::NumericalInconsistency(format!(
                "Cesàro index forms disagree at n = {}: {} vs {} (tolerance {})",
                i + 1,
                x,
                y,
                tol
            )));
        }
    }
    AbsoluteIndexTrace::from_terms(Method::Cesaro, k, terms)
}

/// Absolute weighted-mean index trace: terms
/// `(P_{n-1}/p_n)^{k-1} |w_n - w_{n-1}|^k` where `w` are the Riesz means of
/// the partial sums of `a`.
pub fn riesz_index(a: &SequencePrefix, w: &WeightSystem, k: f64) -> Result<AbsoluteIndexTrace> {
    check_power(k)?;
    if a.len() < 2 {
        return Err(Error::invalid("riesz_index needs at least two terms"));
    }
    let s = partial_sums(a)?;
    let means = crate::cesaro::riesz_mean(&s, w)?;
    let terms = (1..means.len())
        .map(|n| {
            let dw = means.values()[n] - means.values()[n - 1];
            weighted_power_term(index_weight_ratio(w, n), k, dw)
        })
        .collect();
    AbsoluteIndexTrace::from_terms(Method::Riesz, k, terms)
}

/// Absolute matrix index trace for a general normal matrix, computed along
/// the series-form route (`Σ â_nv a_v`).
pub fn matrix_index(
    a: &SequencePrefix,
    matrix: &NormalMatrix,
    w: &WeightSystem,
    k: f64,
) -> Result<AbsoluteIndexTrace> {
    check_power(k)?;
    if matrix.dim() < 2 {
        return Err(Error::invalid("matrix_index needs dimension >= 2"));
    }
    if w.len() < matrix.dim() {
        return Err(Error::invalid(format!(
            "weight prefix length {} shorter than matrix dimension {}",
            w.len(),
            matrix.dim()
        )));
    }
    let transform = apply_series_form(matrix, a)?;
    let terms = transform
        .d_an
        .indexed()
        .map(|(n, d)| weighted_power_term(index_weight_ratio(w, n), k, d))
        .collect();
    AbsoluteIndexTrace::from_terms(Method::Matrix, k, terms)
}

/// Matrix index specialized to the weighted-mean matrix via the O(N)
/// matrix-free transform. Agrees with
/// `matrix_index(a, weighted_mean_matrix(w, n), w, k)` and with
/// [`riesz_index`], but scales to prefixes where a dense triangle would not
/// fit in memory.
pub fn weighted_mean_index(
    a: &SequencePrefix,
    w: &WeightSystem,
    k: f64,
) -> Result<AbsoluteIndexTrace> {
    check_power(k)?;
    if a.len() < 2 {
        return Err(Error::invalid(
            "weighted_mean_index needs at least two terms",
        ));
    }
    let transform = weighted_mean_transform(w, a)?;
    let terms = transform
        .d_an
        .indexed()
        .map(|(n, d)| weighted_power_term(index_weight_ratio(w, n), k, d))
        .collect();
    AbsoluteIndexTrace::from_terms(Method::Matrix, k, terms)
}

/// Thresholds for the finite-prefix boundedness estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundednessKnobs {
    /// Tail increment must stay below `tail_eps_fraction * |S_N| + tail_eps_abs`.
    pub tail_eps_fraction: f64,
    pub tail_eps_abs: f64,
    /// Fitted log-log growth exponent over the final half must stay below this.
    pub exponent_threshold: f64,
}

impl Default for BoundednessKnobs {
    fn default() -> Self {
        BoundednessKnobs {
            tail_eps_fraction: 0.05,
            tail_eps_abs: 1e-9,
            exponent_threshold: 0.1,
        }
    }
}

/// Two-signal boundedness estimate for a cumulative sequence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundednessVerdict {
    /// True when both signals are quiet: the sum looks convergent on this
    /// prefix. An estimate, not a proof — slowly divergent sums (e.g.
    /// iterated logarithms) can pass at any fixed prefix length.
    pub bounded_estimate: bool,
    /// `|S_N - S_{N/2}|`.
    pub tail_increment: f64,
    /// Least-squares slope of `ln |S_m|` against `ln m` over the final half.
    pub fitted_growth_exponent: f64,
    pub prefix_length: usize,
    /// The tail increment threshold that was applied.
    pub tail_epsilon: f64,
    pub exponent_threshold: f64,
}

/// Estimate whether the trace's cumulative sum is bounded.
pub fn assess_boundedness(trace: &AbsoluteIndexTrace) -> Result<BoundednessVerdict> {
    assess_cumulative(&trace.cumulative, &BoundednessKnobs::default())
}

/// Estimate boundedness of an arbitrary cumulative prefix (the trace variant
/// specializes this). Needs at least 16 points. Two signals must both be
/// quiet:
///
/// 1. the increment `|S_N - S_{N/2}|` stays below
///    `tail_eps_fraction * |S_N| + tail_eps_abs`;
/// 2. the fitted growth exponent of `|S_m|` against `m` (log-log least
///    squares over the final half, zero entries skipped) stays below
///    `exponent_threshold`.
///
/// A harmonic-style sum (`S_m ~ ln m`) fails both signals at the default
/// thresholds for moderate prefix lengths, which is the intended sensitivity.
pub fn assess_cumulative(
    cumulative: &SequencePrefix,
    knobs: &BoundednessKnobs,
) -> Result<BoundednessVerdict> {
    let len = cumulative.len();
    if len < 16 {
        return Err(Error::invalid(format!(
            "boundedness assessment needs a prefix of length >= 16, got {}",
            len
        )));
    }
    let values = cumulative.values();
    let last = values[len - 1];
    let half = values[len / 2 - 1];
    let tail_increment = (last - half).abs();
    let tail_epsilon = knobs.tail_eps_fraction * last.abs() + knobs.tail_eps_abs;

    // Log-log fit over the final half.
    let off = cumulative.first_index();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in len / 2..len {
        let s = values[i].abs();
        if s > 0.0 {
            xs.push(((i + off) as f64).ln());
            ys.push(s.ln());
        }
    }
    let fitted_growth_exponent = if xs.len() < 2 {
        0.0
    } else {
        let n = xs.len() as f64;
        let mx = xs.iter().sum::<f64>() / n;
        let my = ys.iter().sum::<f64>() / n;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
        if sxx == 0.0 {
            0.0
        } else {
            sxy / sxx
        }
    };

    Ok(BoundednessVerdict {
        bounded_estimate: tail_increment < tail_epsilon
            && fitted_growth_exponent < knobs.exponent_threshold,
        tail_increment,
        fitted_growth_exponent,
        prefix_length: len,
        tail_epsilon,
        exponent_threshold: knobs.exponent_threshold,
    })
}
