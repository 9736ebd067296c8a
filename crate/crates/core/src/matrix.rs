//! Lower-triangular (normal) matrix transforms and their associated
//! semimatrices.
//!
//! A normal matrix `A = (a_nv)` is lower triangular with nonzero diagonal.
//! Applying it to the partial sums `s_v` of a series gives the transformed
//! sequence `A_n(s) = Σ_{v=0..n} a_nv s_v`. Two derived triangles let the
//! same transform be written against the series *terms* instead:
//!
//! * `ā_nv = Σ_{i=v..n} a_ni` (row tail sums), giving
//!   `A_n(s) = Σ ā_nv a_v`;
//! * `â_00 = ā_00` and `â_nv = ā_nv - ā_{n-1,v}` (with `ā_{n-1,v} = 0` when
//!   `v > n-1`, so `â_nn = a_nn`), giving the one-step differences
//!   `A_n(s) - A_{n-1}(s) = Σ â_nv a_v`.
//!
//! The weighted-mean matrix `a_nv = p_v / P_n` admits closed forms for both
//! triangles and an O(N) transform that never materializes the matrix; the
//! dense and matrix-free routes are pinned against each other in the tests.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sequences::{partial_sums, IndexBase, SequencePrefix, WeightSystem};

/// Packed lower-triangular storage: row `n` occupies `n+1` entries starting
/// at offset `n(n+1)/2`.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangular {
    dim: usize,
    data: Vec<f64>,
}

impl Triangular {
    fn zeroed(dim: usize) -> Self {
        Triangular {
            dim,
            data: vec![0.0; dim * (dim + 1) / 2],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn offset(n: usize) -> usize {
        n * (n + 1) / 2
    }

    /// Entry `(n, v)` for `v <= n < dim`; panics outside the triangle.
    pub fn entry(&self, n: usize, v: usize) -> f64 {
        assert!(
            v <= n && n < self.dim,
            "({}, {}) outside triangle of dim {}",
            n,
            v,
            self.dim
        );
        self.data[Self::offset(n) + v]
    }

    fn entry_mut(&mut self, n: usize, v: usize) -> &mut f64 {
        &mut self.data[Self::offset(n) + v]
    }

    /// Row `n` as a slice of length `n+1`.
    pub fn row(&self, n: usize) -> &[f64] {
        &self.data[Self::offset(n)..Self::offset(n) + n + 1]
    }

    /// Rows as owned vectors (used for serialization and debugging).
    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.dim).map(|n| self.row(n).to_vec()).collect()
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixJson {
    n: usize,
    rows: Vec<Vec<f64>>,
}

/// A normal (lower-triangular, nonzero-diagonal) matrix.
///
/// Serializes as `{"n": dim, "rows": [[a00], [a10, a11], ...]}`.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "MatrixJson")]
pub struct NormalMatrix {
    tri: Triangular,
}

impl From<NormalMatrix> for MatrixJson {
    fn from(m: NormalMatrix) -> MatrixJson {
        MatrixJson {
            n: m.tri.dim,
            rows: m.tri.rows(),
        }
    }
}

impl TryFrom<MatrixJson> for NormalMatrix {
    type Error = Error;

    fn try_from(j: MatrixJson) -> Result<Self> {
        if j.rows.len() != j.n {
            return Err(Error::invalid(format!(
                "matrix declares n = {} but has {} rows",
                j.n,
                j.rows.len()
            )));
        }
        NormalMatrix::from_rows(j.rows)
    }
}

impl<'de> Deserialize<'de> for NormalMatrix {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = MatrixJson::deserialize(deserializer)?;
        NormalMatrix::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl NormalMatrix {
    /// Build from explicit rows; row `n` must have exactly `n+1` finite
    /// entries and a nonzero diagonal.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::invalid("matrix needs at least one row"));
        }
        let dim = rows.len();
        let mut tri = Triangular::zeroed(dim);
        for (n, row) in rows.iter().enumerate() {
            if row.len() != n + 1 {
                return Err(Error::invalid(format!(
                    "row {} has {} entries, expected {}",
                    n,
                    row.len(),
                    n + 1
                )));
            }
            for (v, &e) in row.iter().enumerate() {
                if !e.is_finite() {
                    return Err(Error::invalid(format!(
                        "non-finite entry at ({}, {})",
                        n, v
                    )));
                }
                *tri.entry_mut(n, v) = e;
            }
            if row[n] == 0.0 {
                return Err(Error::domain(format!(
                    "zero diagonal entry at row {}; the matrix must be normal",
                    n
                )));
            }
        }
        Ok(NormalMatrix { tri })
    }

    /// The identity matrix of the given dimension.
    pub fn identity(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("matrix needs at least one row"));
        }
        let mut tri = Triangular::zeroed(dim);
        for n in 0..dim {
            *tri.entry_mut(n, n) = 1.0;
        }
        Ok(NormalMatrix { tri })
    }

    /// The arithmetic-mean matrix `a_nv = 1/(n+1)` (the weighted-mean matrix
    /// of unit weights).
    pub fn cesaro_one(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::invalid("matrix needs at least one row"));
        }
        let mut tri = Triangular::zeroed(dim);
        for n in 0..dim {
            let val = 1.0 / (n as f64 + 1.0);
            for v in 0..=n {
                *tri.entry_mut(n, v) = val;
            }
        }
        Ok(NormalMatrix { tri })
    }

    pub fn dim(&self) -> usize {
        self.tri.dim
    }

    pub fn entry(&self, n: usize, v: usize) -> f64 {
        self.tri.entry(n, v)
    }

    pub fn row(&self, n: usize) -> &[f64] {
        self.tri.row(n)
    }

    pub fn triangular(&self) -> &Triangular {
        &self.tri
    }
}

/// Summation strategy for the row tail sums in [`associate_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Summation {
    /// Plain right-to-left accumulation (default; the tail-sum recurrence is
    /// already the numerically favorable order).
    #[default]
    Naive,
    /// Kahan-compensated accumulation, for ill-conditioned rows.
    Compensated,
}

/// The two derived triangles of a normal matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct AssociatedMatrices {
    /// Row tail sums `ā_nv`.
    pub abar: Triangular,
    /// Row differences `â_nv` of the tail sums.
    pub ahat: Triangular,
}

/// Compute both associated triangles with the default summation.
pub fn associate(a: &NormalMatrix) -> AssociatedMatrices {
    associate_with(a, Summation::Naive)
}

/// Compute both associated triangles, choosing the row-sum strategy.
pub fn associate_with(a: &NormalMatrix, mode: Summation) -> AssociatedMatrices {
    let dim = a.dim();
    let mut abar = Triangular::zeroed(dim);
    let mut ahat = Triangular::zeroed(dim);
    for n in 0..dim {
        // Tail sums right-to-left: abar[n][n] = a[n][n], then accumulate.
        match mode {
            Summation::Naive => {
                let mut acc = 0.0;
                for v in (0..=n).rev() {
                    acc += a.entry(n, v);
                    *abar.entry_mut(n, v) = acc;
                }
            }
            Summation::Compensated => {
                let mut acc = 0.0;
                let mut comp = 0.0;
                for v in (0..=n).rev() {
                    let y = a.entry(n, v) - comp;
                    let t = acc + y;
                    comp = (t - acc) - y;
                    acc = t;
                    *abar.entry_mut(n, v) = acc;
                }
            }
        }
        // Row differences; the row above is treated as zero where absent,
        // so the diagonal satisfies ahat_nn = a_nn.
        for v in 0..=n {
            let above = if v < n { abar.entry(n - 1, v) } else { 0.0 };
            *ahat.entry_mut(n, v) = abar.entry(n, v) - above;
        }
    }
    AssociatedMatrices { abar, ahat }
}

/// Result of a matrix transform: the transformed sequence and its one-step
/// differences.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MatrixTransformResult {
    /// `A_n(s)`, indexed from 0 (length = matrix dimension).
    pub an: SequencePrefix,
    /// `A_n(s) - A_{n-1}(s)`, indexed from 1 (length = dimension - 1).
    pub d_an: SequencePrefix,
}

/// Apply the matrix to a partial-sum prefix: `A_n(s) = Σ_{v<=n} a_nv s_v`.
/// `s` must be indexed from 0 and at least as long as the matrix dimension.
pub fn apply(a: &NormalMatrix, s: &SequencePrefix) -> Result<MatrixTransformResult> {
    if s.base() != IndexBase::Zero {
        return Err(Error::invalid("partial sums must be indexed from 0"));
    }
    if s.len() < a.dim() {
        return Err(Error::invalid(format!(
            "sequence length {} shorter than matrix dimension {}",
            s.len(),
            a.dim()
        )));
    }
    let dim = a.dim();
    let mut an = Vec::with_capacity(dim);
    for n in 0..dim {
        let row = a.row(n);
        let mut acc = 0.0;
        for v in 0..=n {
            acc += row[v] * s.values()[v];
        }
        an.push(acc);
    }
    bundle(an)
}

/// Apply the transform in series form, using the associated triangles:
/// `A_n(s) = Σ ā_nv a_v` and `A_n(s) - A_{n-1}(s) = Σ â_nv a_v`.
///
/// Algebraically identical to [`apply`] on the partial sums of `a`, but
/// computed along an independent route; the pair is cross-checked in the
/// integration tests.
pub fn apply_series_form(
    a: &NormalMatrix,
    terms: &SequencePrefix,
) -> Result<MatrixTransformResult> {
    if terms.base() != IndexBase::Zero {
        return Err(Error::invalid("series terms must be indexed from 0"));
    }
    if terms.len() < a.dim() {
        return Err(Error::invalid(format!(
            "sequence length {} shorter than matrix dimension {}",
            terms.len(),
            a.dim()
        )));
    }
    let assoc = associate(a);
    let dim = a.dim();
    let mut an = Vec::with_capacity(dim);
    let mut d_an = Vec::with_capacity(dim.saturating_sub(1));
    for n in 0..dim {
        let mut acc = 0.0;
        for v in 0..=n {
            acc += assoc.abar.entry(n, v) * terms.values()[v];
        }
        an.push(acc);
        if n >= 1 {
            let mut d = 0.0;
            for v in 0..=n {
                d += assoc.ahat.entry(n, v) * terms.values()[v];
            }
            d_an.push(d);
        }
    }
    Ok(MatrixTransformResult {
        an: SequencePrefix::new(an, IndexBase::Zero)?,
        d_an: SequencePrefix::new(d_an, IndexBase::One)?,
    })
}

fn bundle(an: Vec<f64>) -> Result<MatrixTransformResult> {
    let d_an: Vec<f64> = an.windows(2).map(|w| w[1] - w[0]).collect();
    Ok(MatrixTransformResult {
        an: SequencePrefix::new(an, IndexBase::Zero)?,
        d_an: SequencePrefix::new(d_an, IndexBase::One)?,
    })
}

/// The weighted-mean matrix `a_nv = p_v / P_n` of dimension `dim`.
pub fn weighted_mean_matrix(w: &WeightSystem, dim: usize) -> Result<NormalMatrix> {
    if dim == 0 {
        return Err(Error::invalid("matrix needs at least one row"));
    }
    if dim > w.len() {
        return Err(Error::invalid(format!(
            "dimension {} exceeds weight prefix length {}",
            dim,
            w.len()
        )));
    }
    let mut tri = Triangular::zeroed(dim);
    for n in 0..dim {
        let pn = w.cumulative_at(n);
        for v in 0..=n {
            *tri.entry_mut(n, v) = w.p_at(v) / pn;
        }
    }
    Ok(NormalMatrix { tri })
}

/// Closed form for the tail-sum triangle of the weighted-mean matrix:
/// `ā_nv = (P_n - P_{v-1}) / P_n`.
pub fn weighted_mean_abar_entry(w: &WeightSystem, n: usize, v: usize) -> f64 {
    (w.cumulative_at(n) - w.cumulative_before(v)) / w.cumulative_at(n)
}

/// Closed form for the difference triangle of the weighted-mean matrix:
/// `â_n0 = 1` when `n = 0` and `0` otherwise, and for `v >= 1`
/// `â_nv = p_n P_{v-1} / (P_n P_{n-1})` (so `â_nn = a_nn`).
pub fn weighted_mean_ahat_entry(w: &WeightSystem, n: usize, v: usize) -> f64 {
    if n == 0 {
        // â_00 = a_00 = p_0/P_0 = 1.
        return 1.0;
    }
    if v == 0 {
        return 0.0;
    }
    w.p_at(n) * w.cumulative_before(v) / (w.cumulative_at(n) * w.cumulative_before(n))
}

/// O(N) weighted-mean transform that never materializes the matrix:
///
/// * `A_n(s) = s_n - Q_n / P_n` with `Q_n = Σ_{v=1..n} P_{v-1} a_v`,
/// * `A_n(s) - A_{n-1}(s) = p_n Q_n / (P_n P_{n-1})`.
///
/// This is the route to use for long prefixes (N up to ~10⁶); the dense
/// route keeps the full triangle in memory and is only reasonable up to
/// dimensions of a few thousand.
pub fn weighted_mean_transform(
    w: &WeightSystem,
    terms: &SequencePrefix,
) -> Result<MatrixTransformResult> {
    if terms.base() != IndexBase::Zero {
        return Err(Error::invalid("series terms must be indexed from 0"));
    }
    if terms.len() > w.len() {
        return Err(Error::invalid(format!(
            "sequence length {} exceeds weight prefix length {}",
            terms.len(),
            w.len()
        )));
    }
    if terms.is_empty() {
        return Err(Error::invalid("series prefix must be nonempty"));
    }
    let s = partial_sums(terms)?;
    let n_len = terms.len();
    let mut an = Vec::with_capacity(n_len);
    let mut d_an = Vec::with_capacity(n_len - 1);
    let mut q = 0.0; // Q_n
    an.push(s.values()[0]); // A_0(s) = s_0
    for n in 1..n_len {
        q += w.cumulative_before(n) * terms.values()[n];
        an.push(s.values()[n] - q / w.cumulative_at(n));
        d_an.push(w.p_at(n) * q / (w.cumulative_at(n) * w.cumulative_before(n)));
    }
    Ok(MatrixTransformResult {
        an: SequencePrefix::new(an, IndexBase::Zero)?,
        d_an: SequencePrefix::new(d_an, IndexBase::One)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cesaro::riesz_mean;
    use approx::assert_abs_diff_eq;

    fn seq0(values: &[f64]) -> SequencePrefix {
        SequencePrefix::new(values.to_vec(), IndexBase::Zero).unwrap()
    }

    /// Pseudo-random but deterministic values in [-1, 1].
    fn mix(n: usize) -> f64 {
        let h = (n as u64).wrapping_mul(0x9e3779b97f4a7c15).rotate_left(31);
        (h % 20001) as f64 / 10000.0 - 1.0
    }

    #[test]
    fn construction_validates_shape_and_diagonal() {
        assert!(NormalMatrix::from_rows(vec![]).is_err());
        assert!(NormalMatrix::from_rows(vec![vec![1.0, 2.0]]).is_err());
        assert!(NormalMatrix::from_rows(vec![vec![1.0], vec![1.0, 0.0]]).is_err());
        assert!(NormalMatrix::from_rows(vec![vec![f64::INFINITY]]).is_err());
        let m = NormalMatrix::from_rows(vec![vec![1.0], vec![0.5, 0.5]]).unwrap();
        assert_eq!(m.entry(1, 0), 0.5);
    }

    #[test]
    fn identity_association_gives_all_ones_and_identity() {
        let m = NormalMatrix::identity(5).unwrap();
        let assoc = associate(&m);
        for n in 0..5 {
            for v in 0..=n {
                assert_eq!(assoc.abar.entry(n, v), 1.0);
                let expected = if v == n { 1.0 } else { 0.0 };
                assert_eq!(assoc.ahat.entry(n, v), expected);
            }
        }
    }

    #[test]
    fn association_matches_the_literal_definition() {
        // ā from the definition (independent left-to-right double loop),
        // â from its row differences.
        let rows: Vec<Vec<f64>> = (0..12)
            .map(|n| {
                (0..=n)
                    .map(|v| {
                        if v == n {
                            1.0 + mix(7 * n + v).abs()
                        } else {
                            mix(3 * n + v)
                        }
                    })
                    .collect()
            })
            .collect();
        let m = NormalMatrix::from_rows(rows.clone()).unwrap();
        let assoc = associate(&m);
        for n in 0..12 {
            for v in 0..=n {
                let mut abar = 0.0;
                for i in v..=n {
                    abar += rows[n][i];
                }
                assert_abs_diff_eq!(assoc.abar.entry(n, v), abar, epsilon = 1e-12);
                let above = if v < n {
                    let mut s = 0.0;
                    for i in v..n {
                        s += rows[n - 1][i];
                    }
                    s
                } else {
                    0.0
                };
                assert_abs_diff_eq!(assoc.ahat.entry(n, v), abar - above, epsilon = 1e-12);
            }
        }
        // The diagonal convention: â_nn = a_nn.
        for n in 0..12 {
            assert_abs_diff_eq!(assoc.ahat.entry(n, n), m.entry(n, n), epsilon = 1e-15);
        }
    }

    #[test]
    fn compensated_summation_agrees_with_naive() {
        let rows: Vec<Vec<f64>> = (0..30)
            .map(|n| {
                (0..=n)
                    .map(|v| if v == n { 2.0 } else { mix(n + 13 * v) })
                    .collect()
            })
            .collect();
        let m = NormalMatrix::from_rows(rows).unwrap();
        let plain = associate_with(&m, Summation::Naive);
        let comp = associate_with(&m, Summation::Compensated);
        for n in 0..30 {
            for v in 0..=n {
                assert_abs_diff_eq!(
                    plain.abar.entry(n, v),
                    comp.abar.entry(n, v),
                    epsilon = 1e-12
                );
            }
        }
    }

    #[test]
    fn apply_identity_returns_the_partial_sums() {
        let m = NormalMatrix::identity(4).unwrap();
        let s = seq0(&[1.0, 3.0, -2.0, 5.0]);
        let r = apply(&m, &s).unwrap();
        assert_eq!(r.an.values(), s.values());
        assert_eq!(r.d_an.values(), &[2.0, -5.0, 7.0]);
    }

    #[test]
    fn apply_two_by_two_dot_product() {
        let m = NormalMatrix::from_rows(vec![vec![1.0], vec![0.25, 0.75]]).unwrap();
        let s = seq0(&[1.0, 2.0]);
        let r = apply(&m, &s).unwrap();
        assert_abs_diff_eq!(r.an.values()[1], 1.75, epsilon = 1e-15);
        assert_abs_diff_eq!(r.d_an.values()[0], 0.75, epsilon = 1e-15);
    }

    #[test]
    fn series_form_single_term_series() {
        // a = (c, 0, 0, ...): A_n(s) = ā_n0 * c.
        let rows = vec![vec![1.0], vec![0.3, 0.7], vec![0.2, 0.3, 0.5]];
        let m = NormalMatrix::from_rows(rows).unwrap();
        let assoc = associate(&m);
        let c = 2.5;
        let terms = seq0(&[c, 0.0, 0.0]);
        let r = apply_series_form(&m, &terms).unwrap();
        for n in 0..3 {
            assert_abs_diff_eq!(
                r.an.values()[n],
                assoc.abar.entry(n, 0) * c,
                epsilon = 1e-14
            );
        }
    }

    #[test]
    fn series_form_agrees_with_partial_sum_form() {
        let dim = 40;
        let rows: Vec<Vec<f64>> = (0..dim)
            .map(|n| {
                (0..=n)
                    .map(|v| {
                        if v == n {
                            1.0 + mix(n * 31 + v).abs()
                        } else {
                            mix(n * 17 + v)
                        }
                    })
                    .collect()
            })
            .collect();
        let m = NormalMatrix::from_rows(rows).unwrap();
        let terms = SequencePrefix::from_fn(IndexBase::Zero, dim, |n| mix(n + 999)).unwrap();
        let s = partial_sums(&terms).unwrap();
        let direct = apply(&m, &s).unwrap();
        let series = apply_series_form(&m, &terms).unwrap();
        for n in 0..dim {
            let tol = 1e-10 * direct.an.values()[n].abs().max(1.0);
            assert!((direct.an.values()[n] - series.an.values()[n]).abs() <= tol);
        }
        for n in 0..dim - 1 {
            let tol = 1e-10 * direct.d_an.values()[n].abs().max(1.0);
            assert!((direct.d_an.values()[n] - series.d_an.values()[n]).abs() <= tol);
        }
    }

    #[test]
    fn weighted_mean_matrix_rows_are_weight_fractions() {
        let w = WeightSystem::from_values(vec![1.0, 2.0, 3.0]).unwrap();
        let m = weighted_mean_matrix(&w, 3).unwrap();
        assert_eq!(m.row(0), &[1.0]);
        assert_eq!(m.row(1), &[1.0 / 3.0, 2.0 / 3.0]);
        assert_eq!(m.row(2), &[1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0]);
        // Rows sum to one: these are means.
        for n in 0..3 {
            let sum: f64 = m.row(n).iter().sum();
            assert_abs_diff_eq!(sum, 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn cesaro_one_factory_is_the_unit_weighted_mean() {
        let w = WeightSystem::from_values(vec![1.0; 6]).unwrap();
        let a = NormalMatrix::cesaro_one(6).unwrap();
        let b = weighted_mean_matrix(&w, 6).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn weighted_mean_apply_equals_riesz_mean() {
        let w = WeightSystem::from_values(vec![0.5, 1.5, 2.0, 0.25, 1.0]).unwrap();
        let m = weighted_mean_matrix(&w, 5).unwrap();
        let s = seq0(&[1.0, -1.0, 2.0, 0.5, -0.75]);
        let direct = apply(&m, &s).unwrap();
        let rz = riesz_mean(&s, &w).unwrap();
        for n in 0..5 {
            assert_abs_diff_eq!(direct.an.values()[n], rz.values()[n], epsilon = 1e-12);
        }
    }

    #[test]
    fn closed_forms_match_generic_association_for_unit_weights() {
        // For p = 1: ā_nv = (n + 1 - v)/(n + 1), â_{n,v} = v/((n+1) n).
        let w = WeightSystem::from_values(vec![1.0; 10]).unwrap();
        let m = weighted_mean_matrix(&w, 10).unwrap();
        let assoc = associate(&m);
        for n in 0..10 {
            for v in 0..=n {
                let abar = weighted_mean_abar_entry(&w, n, v);
                assert_abs_diff_eq!(
                    abar,
                    (n as f64 + 1.0 - v as f64) / (n as f64 + 1.0),
                    epsilon = 1e-15
                );
                assert_abs_diff_eq!(assoc.abar.entry(n, v), abar, epsilon = 1e-12);
                let ahat = weighted_mean_ahat_entry(&w, n, v);
                assert_abs_diff_eq!(assoc.ahat.entry(n, v), ahat, epsilon = 1e-12);
            }
        }
        // Spot-check the v >= 1 closed form directly.
        assert_abs_diff_eq!(
            weighted_mean_ahat_entry(&w, 3, 2),
            2.0 / (4.0 * 3.0),
            epsilon = 1e-15
        );
    }

    #[test]
    fn matrix_free_transform_matches_the_dense_route() {
        let p: Vec<f64> = (0..60).map(|n| 0.1 + mix(n).abs() * 1.9).collect();
        let w = WeightSystem::from_values(p).unwrap();
        let terms = SequencePrefix::from_fn(IndexBase::Zero, 60, |n| mix(n + 71)).unwrap();
        let dense = apply_series_form(&weighted_mean_matrix(&w, 60).unwrap(), &terms).unwrap();
        let fast = weighted_mean_transform(&w, &terms).unwrap();
        for n in 0..60 {
            let tol = 1e-11 * dense.an.values()[n].abs().max(1.0);
            assert!((dense.an.values()[n] - fast.an.values()[n]).abs() <= tol);
        }
        for n in 0..59 {
            let tol = 1e-11 * dense.d_an.values()[n].abs().max(1.0);
            assert!((dense.d_an.values()[n] - fast.d_an.values()[n]).abs() <= tol);
        }
    }

    #[test]
    fn json_roundtrip_preserves_the_matrix() {
        let m = NormalMatrix::from_rows(vec![vec![1.0], vec![0.25, 0.75], vec![0.1, 0.2, 0.7]])
            .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert!(json.contains("\"n\":3"));
        let back: NormalMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(m, back);
        // Validation applies on the way in.
        let bad = "{\"n\":2,\"rows\":[[1.0],[1.0,0.0]]}";
        assert!(serde_json::from_str::<NormalMatrix>(bad).is_err());
    }

    #[test]
    fn transforms_check_their_preconditions() {
        let m = NormalMatrix::identity(3).unwrap();
        let short = seq0(&[1.0, 2.0]);
        assert!(apply(&m, &short).is_err());
        assert!(apply_series_form(&m, &short).is_err());
        let w = WeightSystem::from_values(vec![1.0, 1.0]).unwrap();
        assert!(weighted_mean_matrix(&w, 3).is_err());
        let terms = seq0(&[1.0, 2.0, 3.0]);
        assert!(weighted_mean_transform(&w, &terms).is_err());
    }
}
