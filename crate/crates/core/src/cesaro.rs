//! Classical summation means: Cesàro means of real order and weighted
//! (Riesz) means.
//!
//! For order `α > -1` the Cesàro coefficients are
//! `A_n^α = (α+1)(α+2)...(α+n)/n!`, computed by the stable recurrence
//! `A_0^α = 1`, `A_n^α = A_{n-1}^α (α+n)/n`. Two mean sequences are tracked
//! for a series `Σ a_v` with partial sums `s_v`:
//!
//! * `u_n^α = (1/A_n^α) Σ_{v=0..n} A_{n-v}^{α-1} s_v` — the α-mean of the
//!   partial sums, indexed from 0;
//! * `t_n^α = (1/A_n^α) Σ_{v=1..n} A_{n-v}^{α-1} v a_v` — the α-mean of the
//!   sequence `(n a_n)`, indexed from 1.
//!
//! They are linked by the identity `t_n^α = n (u_n^α - u_{n-1}^α)`, which the
//! tests exercise directly and the absolute-index module uses as an internal
//! cross-check.

use crate::error::{Error, Result};
use crate::sequences::{partial_sums, IndexBase, SequencePrefix, WeightSystem};

/// Cesàro coefficient `A_n^α` for `α > -1`.
///
/// ```
/// use summatrix::cesaro::cesaro_coefficient;
/// assert_eq!(cesaro_coefficient(1.0, 3).unwrap(), 4.0); // A_3^1 = n + 1
/// assert_eq!(cesaro_coefficient(0.0, 5).unwrap(), 1.0); // A_n^0 = 1
/// ```
pub fn cesaro_coefficient(alpha: f64, n: usize) -> Result<f64> {
    if !(alpha > -1.0) {
        return Err(Error::domain(format!(
            "Cesàro order must exceed -1, got {}",
            alpha
        )));
    }
    Ok(coefficient_unchecked(alpha, n))
}

/// The same recurrence without the order guard. Means of order `α` need the
/// inner weights `A_m^{α-1}`, whose order may legitimately reach -1 (where
/// the recurrence correctly yields `A_0 = 1`, `A_m = 0` for `m >= 1`).
fn coefficient_unchecked(alpha: f64, n: usize) -> f64 {
    let mut a = 1.0;
    for m in 1..=n {
        a *= (alpha + m as f64) / m as f64;
    }
    a
}

/// Row `A_0^β ... A_len^β` via the recurrence (one multiplication per step).
fn coefficient_row(beta: f64, len: usize) -> Vec<f64> {
    let mut row = Vec::with_capacity(len + 1);
    let mut a = 1.0;
    row.push(a);
    for m in 1..=len {
        a *= (beta + m as f64) / m as f64;
        row.push(a);
    }
    row
}

/// Cesàro means of a series prefix.
#[derive(Debug, Clone, PartialEq)]
pub struct CesaroMeans {
    /// The order α.
    pub order: f64,
    /// Means of the partial sums, indexed from 0 (length = input length).
    pub u: SequencePrefix,
    /// Means of `(n a_n)`, indexed from 1 (length = input length - 1).
    pub t: SequencePrefix,
}

/// Compute both Cesàro mean sequences of order `alpha > -1` for the series
/// terms `a` (indexed from 0, length >= 2).
///
/// The general path is the O(N²) definition; `alpha == 1` takes the O(N)
/// arithmetic-mean path (`u_n = (s_0 + ... + s_n)/(n+1)`,
/// `t_n = (a_1 + 2 a_2 + ... + n a_n)/(n+1)`), which the tests pin against
/// the general path.
pub fn cesaro_means(a: &SequencePrefix, alpha: f64) -> Result<CesaroMeans> {
    if !(alpha > -1.0) {
        return Err(Error::domain(format!(
            "Cesàro order must exceed -1, got {}",
            alpha
        )));
    }
    if a.base() != IndexBase::Zero {
        return Err(Error::invalid("series terms must be indexed from 0"));
    }
    if a.len() < 2 {
        return Err(Error::invalid("cesaro_means needs at least two terms"));
    }
    let n_len = a.len();
    let s = partial_sums(a)?;

    let (u, t) = if alpha == 1.0 {
        let mut u = Vec::with_capacity(n_len);
        let mut t = Vec::with_capacity(n_len - 1);
        let mut s_acc = 0.0;
        let mut va_acc = 0.0;
        for n in 0..n_len {
            s_acc += s.values()[n];
            u.push(s_acc / (n as f64 + 1.0));
            if n >= 1 {
                va_acc += n as f64 * a.values()[n];
                t.push(va_acc / (n as f64 + 1.0));
            }
        }
        (u, t)
    } else {
        let norm = coefficient_row(alpha, n_len - 1);
        let inner = coefficient_row(alpha - 1.0, n_len - 1);
        let mut u = Vec::with_capacity(n_len);
        let mut t = Vec::with_capacity(n_len - 1);
        for n in 0..n_len {
            let mut us = 0.0;
            for v in 0..=n {
                us += inner[n - v] * s.values()[v];
            }
            u.push(us / norm[n]);
            if n >= 1 {
                let mut ts = 0.0;
                for v in 1..=n {
                    ts += inner[n - v] * v as f64 * a.values()[v];
                }
                t.push(ts / norm[n]);
            }
        }
        (u, t)
    };

    Ok(CesaroMeans {
        order: alpha,
        u: SequencePrefix::new(u, IndexBase::Zero)?,
        t: SequencePrefix::new(t, IndexBase::One)?,
    })
}

/// Weighted (Riesz) means `w_n = (1/P_n) Σ_{v=0..n} p_v s_v` of a partial-sum
/// prefix `s` (indexed from 0). Uses the first `len(s)` weights; errors if
/// the weight prefix is shorter than `s`.
///
/// ```
/// use summatrix::cesaro::riesz_mean;
/// use summatrix::sequences::{IndexBase, SequencePrefix, WeightSystem};
/// let s = SequencePrefix::new(vec![0.0, 1.0, 2.0, 3.0], IndexBase::Zero).unwrap();
/// let w = WeightSystem::from_values(vec![1.0; 4]).unwrap();
/// let m = riesz_mean(&s, &w).unwrap();
/// assert_eq!(m.values(), &[0.0, 0.5, 1.0, 1.5]);
/// ```
pub fn riesz_mean(s: &SequencePrefix, w: &WeightSystem) -> Result<SequencePrefix> {
    if s.base() != IndexBase::Zero {
        return Err(Error::invalid("partial sums must be indexed from 0"));
    }
    if w.len() < s.len() {
        return Err(Error::invalid(format!(
            "weight prefix length {} is shorter than the sequence length {}",
            w.len(),
            s.len()
        )));
    }
    let mut acc = 0.0;
    let values = s
        .values()
        .iter()
        .enumerate()
        .map(|(n, sv)| {
            acc += w.p_at(n) * sv;
            acc / w.cumulative_at(n)
        })
        .collect();
    SequencePrefix::new(values, IndexBase::Zero)
}
