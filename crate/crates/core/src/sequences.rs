//! Finite sequence prefixes, weight systems, and summability factor data.
//!
//! Every infinite sequence in this crate is represented by an explicit
//! finite prefix that records its own index base. Series terms `(a_n)`,
//! partial sums `(s_n)` and weights `(p_n)` index from 0; derived objects
//! such as the weight ratio sums `(X_n)` and mean differences index from 1.
//! Keeping the base on the value (instead of in the caller's head) is what
//! lets the index-heavy identities elsewhere in the crate line up.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::report::{CheckReport, Verdict};

/// Logical index of the first element of a prefix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum IndexBase {
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "1")]
    One,
}

impl IndexBase {
    pub fn offset(self) -> usize {
        match self {
            IndexBase::Zero => 0,
            IndexBase::One => 1,
        }
    }
}

impl std::fmt::Display for IndexBase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.offset())
    }
}

#[derive(Serialize, Deserialize)]
struct RawPrefix {
    base: IndexBase,
    values: Vec<f64>,
}

/// A finite prefix of a real sequence together with its index base.
///
/// Entries are always finite; `new` rejects NaN and infinities. The prefix
/// may be empty only through [`SequencePrefix::empty`], which exists for the
/// single degenerate case of an `X` sequence derived from a one-element
/// weight prefix.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(into = "RawPrefix")]
pub struct SequencePrefix {
    values: Vec<f64>,
    base: IndexBase,
}

impl From<SequencePrefix> for RawPrefix {
    fn from(p: SequencePrefix) -> RawPrefix {
        RawPrefix {
            base: p.base,
            values: p.values,
        }
    }
}

impl TryFrom<RawPrefix> for SequencePrefix {
    type Error = Error;

    fn try_from(raw: RawPrefix) -> Result<Self> {
        SequencePrefix::new(raw.values, raw.base)
    }
}

impl<'de> Deserialize<'de> for SequencePrefix {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let raw = RawPrefix::deserialize(deserializer)?;
        SequencePrefix::try_from(raw).map_err(serde::de::Error::custom)
    }
}

impl SequencePrefix {
    /// Build a prefix from raw values. Rejects empty input and non-finite
    /// entries (the error names the first offending index).
    pub fn new(values: Vec<f64>, base: IndexBase) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("sequence prefix must have length >= 1"));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.is_finite() {
                return Err(Error::invalid(format!(
                    "non-finite entry {} at index {}",
                    v,
                    i + base.offset()
                )));
            }
        }
        Ok(SequencePrefix { values, base })
    }

    /// Evaluate `f` at each logical index `base..base+len`.
    pub fn from_fn(base: IndexBase, len: usize, mut f: impl FnMut(usize) -> f64) -> Result<Self> {
        let off = base.offset();
        SequencePrefix::new((0..len).map(|i| f(i + off)).collect(), base)
    }

    /// The empty prefix. Only meaningful for derived sequences whose index
    /// range is genuinely empty (e.g. `X` of a single-element weight prefix).
    pub fn empty(base: IndexBase) -> Self {
        SequencePrefix {
            values: Vec::new(),
            base,
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn base(&self) -> IndexBase {
        self.base
    }

    /// Logical index of the first element.
    pub fn first_index(&self) -> usize {
        self.base.offset()
    }

    /// Logical index of the last element; panics on an empty prefix.
    pub fn last_index(&self) -> usize {
        assert!(!self.is_empty(), "empty prefix has no last index");
        self.base.offset() + self.values.len() - 1
    }

    /// Value at logical index `n`, if within the prefix.
    pub fn get(&self, n: usize) -> Option<f64> {
        n.checked_sub(self.base.offset())
            .and_then(|i| self.values.get(i).copied())
    }

    /// Value at logical index `n`; panics when out of range.
    pub fn at(&self, n: usize) -> f64 {
        self.get(n).unwrap_or_else(|| {
            panic!(
                "index {} outside prefix [{}..={}]",
                n,
                self.first_index(),
                self.base.offset() + self.values.len().max(1) - 1
            )
        })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Iterate as `(logical_index, value)` pairs.
    pub fn indexed(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let off = self.base.offset();
        self.values
            .iter()
            .copied()
            .enumerate()
            .map(move |(i, v)| (i + off, v))
    }

    /// Keep only the first `len` entries (no-op if already shorter).
    pub fn truncated(&self, len: usize) -> Self {
        SequencePrefix {
            values: self.values.iter().copied().take(len).collect(),
            base: self.base,
        }
    }
}

/// Forward difference `(Δs)_n = s_n - s_{n+1}`, the sign convention used
/// throughout summability factor arguments. One element shorter than the
/// input, same index base.
pub fn forward_difference(s: &SequencePrefix) -> Result<SequencePrefix> {
    if s.len() < 2 {
        return Err(Error::invalid(
            "forward_difference needs a prefix of length >= 2",
        ));
    }
    let values = s.values().windows(2).map(|w| w[0] - w[1]).collect();
    SequencePrefix::new(values, s.base())
}

/// Running sums `t_n = sum of the first entries up to n`; same length and
/// base as the input.
pub fn partial_sums(s: &SequencePrefix) -> Result<SequencePrefix> {
    let mut acc = 0.0;
    let values = s
        .values()
        .iter()
        .map(|v| {
            acc += v;
            acc
        })
        .collect();
    SequencePrefix::new(values, s.base())
}

/// Total variation of the prefix: `sum |s_n - s_{n+1}|`.
pub fn total_variation(s: &SequencePrefix) -> Result<f64> {
    if s.len() < 2 {
        return Err(Error::invalid(
            "total_variation needs a prefix of length >= 2",
        ));
    }
    Ok(s.values().windows(2).map(|w| (w[0] - w[1]).abs()).sum())
}

/// A positive weight sequence `(p_n)` (indexed from 0) together with its
/// cumulative sums `P_n = p_0 + ... + p_n` and the derived sums
/// `X_n = sum_{v=1..n} p_v / P_v` (indexed from 1).
///
/// `X` is strictly increasing and has length `len(p) - 1`; for a
/// single-element weight prefix it is empty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightSystem {
    p: SequencePrefix,
    cumulative: SequencePrefix,
    x: SequencePrefix,
}

impl WeightSystem {
    /// Validate positivity and build `P` and `X`. The weight prefix must be
    /// indexed from 0.
    pub fn new(p: SequencePrefix) -> Result<Self> {
        if p.base() != IndexBase::Zero {
            return Err(Error::invalid("weight sequences must be indexed from 0"));
        }
        for (n, v) in p.indexed() {
            if v <= 0.0 {
                return Err(Error::domain(format!(
                    "weight p_{} = {} is not positive",
                    n, v
                )));
            }
        }
        let cumulative = partial_sums(&p)?;
        let x = if p.len() < 2 {
            SequencePrefix::empty(IndexBase::One)
        } else {
            let mut acc = 0.0;
            let values: Vec<f64> = (1..p.len())
                .map(|n| {
                    acc += p.values()[n] / cumulative.values()[n];
                    acc
                })
                .collect();
            SequencePrefix::new(values, IndexBase::One)?
        };
        Ok(WeightSystem { p, cumulative, x })
    }

    /// Convenience constructor from raw base-0 values.
    pub fn from_values(values: Vec<f64>) -> Result<Self> {
        WeightSystem::new(SequencePrefix::new(values, IndexBase::Zero)?)
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        false // construction guarantees len >= 1
    }

    pub fn p(&self) -> &SequencePrefix {
        &self.p
    }

    /// The cumulative weights `P_n`, indexed from 0.
    pub fn cumulative(&self) -> &SequencePrefix {
        &self.cumulative
    }

    /// The sums `X_n = sum_{v<=n} p_v/P_v`, indexed from 1 (may be empty).
    pub fn x(&self) -> &SequencePrefix {
        &self.x
    }

    pub fn p_at(&self, n: usize) -> f64 {
        self.p.values()[n]
    }

    /// `P_n` for `n >= 0`.
    pub fn cumulative_at(&self, n: usize) -> f64 {
        self.cumulative.values()[n]
    }

    /// `P_{n-1}` with the convention `P_{-1} = 0`.
    pub fn cumulative_before(&self, n: usize) -> f64 {
        if n == 0 {
            0.0
        } else {
            self.cumulative.values()[n - 1]
        }
    }

    /// `X_n` for `1 <= n <= len-1`.
    pub fn x_at(&self, n: usize) -> f64 {
        self.x.at(n)
    }
}

/// Build a [`WeightSystem`] from a base-0 positive prefix.
pub fn build_weight_system(p: SequencePrefix) -> Result<WeightSystem> {
    WeightSystem::new(p)
}

/// Summability factor data: the factor sequence `(λ_n)`, its companion
/// `(A_n)`, and the quasi-monotonicity slack `(δ_n)`, all indexed from 1
/// and of equal length.
///
/// The constructor checks structure only (lengths, base, `δ_n >= 0`); the
/// mathematical hypotheses relating the three sequences are the job of the
/// checker suite, which must be able to observe violations rather than be
/// prevented from constructing them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FactorProfile {
    lambda: SequencePrefix,
    companion: SequencePrefix,
    delta: SequencePrefix,
}

impl FactorProfile {
    pub fn new(
        lambda: SequencePrefix,
        companion: SequencePrefix,
        delta: SequencePrefix,
    ) -> Result<Self> {
        if lambda.base() != IndexBase::One
            || companion.base() != IndexBase::One
            || delta.base() != IndexBase::One
        {
            return Err(Error::invalid(
                "factor profile sequences must be indexed from 1",
            ));
        }
        if lambda.len() != companion.len() || lambda.len() != delta.len() {
            return Err(Error::invalid(format!(
                "factor profile lengths differ: lambda {}, companion {}, delta {}",
                lambda.len(),
                companion.len(),
                delta.len()
            )));
        }
        if let Some((n, v)) = delta.indexed().find(|(_, v)| *v < 0.0) {
            return Err(Error::domain(format!(
                "delta_{} = {} is negative; quasi-monotonicity slack must be >= 0",
                n, v
            )));
        }
        Ok(FactorProfile {
            lambda,
            companion,
            delta,
        })
    }

    pub fn len(&self) -> usize {
        self.lambda.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lambda.is_empty()
    }

    pub fn lambda(&self) -> &SequencePrefix {
        &self.lambda
    }

    pub fn companion(&self) -> &SequencePrefix {
        &self.companion
    }

    pub fn delta(&self) -> &SequencePrefix {
        &self.delta
    }
}

/// Thresholds for the finite-prefix quasi-monotonicity check.
///
/// "`d_n > 0` ultimately" and "`d_n -> 0`" have no exact finite test, so the
/// checker uses declared proxies: positivity over the trailing
/// `tail_fraction` of the prefix, and a head/tail maximum comparison for
/// decay. Every report echoes these knobs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuasiMonotoneKnobs {
    /// Fraction of the prefix treated as "ultimately" (default 0.5).
    pub tail_fraction: f64,
    /// Fraction of the prefix whose maximum is the decay tail (default 0.1).
    pub decay_window: f64,
    /// Decay requires `tail max <= decay_ratio * head max` (default 0.1).
    pub decay_ratio: f64,
}

impl Default for QuasiMonotoneKnobs {
    fn default() -> Self {
        QuasiMonotoneKnobs {
            tail_fraction: 0.5,
            decay_window: 0.1,
            decay_ratio: 0.1,
        }
    }
}

/// Check that `(d_n)` is δ-quasi-monotone on the prefix: `d_n -> 0`,
/// `d_n > 0` ultimately, and `d_n - d_{n+1} >= -δ_n` for every checkable `n`.
///
/// `d` and `delta` must share base and length (the final `δ` entry is
/// unused). Clause results are reported individually; the first failing
/// clause supplies `first_violation`. An identically zero prefix passes:
/// the zero sequence is the degenerate companion of a constant factor
/// sequence and every series built from it is trivially summable.
pub fn check_quasi_monotone(
    d: &SequencePrefix,
    delta: &SequencePrefix,
    knobs: &QuasiMonotoneKnobs,
) -> Result<CheckReport> {
    if d.len() < 2 {
        return Err(Error::invalid("quasi-monotone check needs length >= 2"));
    }
    if d.len() != delta.len() || d.base() != delta.base() {
        return Err(Error::invalid(format!(
            "d and delta must align: d has base {} length {}, delta base {} length {}",
            d.base(),
            d.len(),
            delta.base(),
            delta.len()
        )));
    }
    if !(knobs.tail_fraction > 0.0 && knobs.tail_fraction < 1.0) {
        return Err(Error::invalid("tail_fraction must lie in (0, 1)"));
    }
    if let Some((n, v)) = delta.indexed().find(|(_, v)| *v < 0.0) {
        return Err(Error::domain(format!("delta_{} = {} is negative", n, v)));
    }

    let n_len = d.len();
    let off = d.first_index();
    let dv = d.values();
    let all_zero = dv.iter().all(|&v| v == 0.0);

    let mut failures: Vec<(usize, String)> = Vec::new();

    // Clause 1: d_n - d_{n+1} >= -delta_n for every n with a successor.
    let mut monotone_violation = None;
    for i in 0..n_len - 1 {
        let diff = dv[i] - dv[i + 1];
        if diff < -delta.values()[i] {
            monotone_violation = Some(i + off);
            break;
        }
    }
    if let Some(n) = monotone_violation {
        failures.push((
            n,
            format!("difference clause: d_{} - d_{} < -delta_{}", n, n + 1, n),
        ));
    }

    // Clause 2: d_n > 0 over the trailing tail_fraction of the prefix.
    let tail_start = ((n_len as f64) * (1.0 - knobs.tail_fraction)).floor() as usize;
    let tail_start = tail_start.min(n_len - 1);
    let mut positivity_violation = None;
    if !all_zero {
        for i in tail_start..n_len {
            if dv[i] <= 0.0 {
                positivity_violation = Some(i + off);
                break;
            }
        }
    }
    if let Some(n) = positivity_violation {
        failures.push((n, format!("positivity clause: d_{} <= 0 in the tail", n)));
    }

    // Clause 3 (decay proxy): max |d| over the final decay_window of the
    // prefix must not exceed decay_ratio times the max over the rest.
    let window = (((n_len as f64) * knobs.decay_window).ceil() as usize).clamp(1, n_len);
    let split = n_len - window;
    let head_max = dv[..split].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let tail_max = dv[split..].iter().fold(0.0f64, |m, v| m.max(v.abs()));
    if tail_max > knobs.decay_ratio * head_max {
        failures.push((
            split + off,
            format!(
                "decay clause: tail max {:.3e} exceeds {} * head max {:.3e}",
                tail_max, knobs.decay_ratio, head_max
            ),
        ));
    }

    let mut report = if failures.is_empty() {
        CheckReport::pass("quasi_monotone", None)
    } else {
        failures.sort_by_key(|(n, _)| *n);
        let mut r = CheckReport::fail("quasi_monotone", failures[0].0);
        for (_, msg) in &failures {
            r = r.with_note(msg.clone());
        }
        r
    };
    report = report
        .with_threshold("tail_fraction", knobs.tail_fraction)
        .with_threshold("decay_window", knobs.decay_window)
        .with_threshold("decay_ratio", knobs.decay_ratio)
        .with_threshold("tail_start_index", (tail_start + off) as f64)
        .with_note(
            "finite-prefix proxies: positivity checked on the trailing tail_fraction, \
             decay via head/tail maxima",
        );
    if all_zero {
        report = report.with_note("identically zero prefix: degenerate pass");
    }
    debug_assert!(
        report.verdict != Verdict::Fail || report.first_violation.is_some(),
        "fail reports must carry a witness"
    );
    Ok(report)
}
