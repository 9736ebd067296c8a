//! Named sequence generators.
//!
//! Config files and the CLI refer to infinite sequences by string key, e.g.
//! `"ones"`, `"harmonic"`, `"geometric:0.5"`. A generator is a closure from
//! the logical index `n` to a value, so a prefix can be re-materialized at a
//! larger length without re-entering data. The `"random"` generator draws
//! from a seeded ChaCha stream and is reproducible given the same seed.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::sequences::{IndexBase, SequencePrefix};

/// A reusable rule for producing sequence values at any index.
#[derive(Clone)]
pub struct Generator {
    key: String,
    f: Arc<dyn Fn(usize) -> f64 + Send + Sync>,
}

impl std::fmt::Debug for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Generator").field("key", &self.key).finish()
    }
}

impl Generator {
    /// The key this generator was built from.
    pub fn key(&self) -> &str {
        &self.key
    }

    /// Value at logical index `n`.
    pub fn value(&self, n: usize) -> f64 {
        (self.f)(n)
    }

    /// Materialize `len` values starting at the base index.
    pub fn prefix(&self, base: IndexBase, len: usize) -> Result<SequencePrefix> {
        SequencePrefix::from_fn(base, len, |n| self.value(n))
    }
}

/// Look up a named generator. Supported keys:
///
/// | key                | value at index n            |
/// |--------------------|-----------------------------|
/// | `ones`             | `1`                         |
/// | `zero`             | `0`                         |
/// | `harmonic`         | `1/(n+1)`                   |
/// | `linear`           | `n+1`                       |
/// | `alternating`      | `(-1)^n`                    |
/// | `geometric:r`      | `r^n` (requires `r > 0`)    |
/// | `power:q`          | `(n+1)^q`                   |
/// | `random`           | uniform in `[-1, 1]`, seeded|
///
/// `seed` only affects `random`; all other generators ignore it.
pub fn named_generator(key: &str, seed: u64) -> Result<Generator> {
    let (name, param) = match key.split_once(':') {
        Some((n, p)) => (n, Some(p)),
        None => (key, None),
    };
    let require_no_param = |f: Arc<dyn Fn(usize) -> f64 + Send + Sync>| -> Result<Generator> {
        if param.is_some() {
            return Err(Error::config(format!(
                "generator '{}' takes no parameter (got '{}')",
                name, key
            )));
        }
        Ok(Generator {
            key: key.to_string(),
            f,
        })
    };
    let parse_param = |what: &str| -> Result<f64> {
        let raw = param.ok_or_else(|| {
            Error::config(format!(
                "generator '{}' needs a parameter, e.g. '{}:{}'",
                name, name, what
            ))
        })?;
        raw.parse::<f64>()
            .map_err(|_| Error::config(format!("bad parameter '{}' for generator '{}'", raw, name)))
    };

    match name {
        "ones" => require_no_param(Arc::new(|_| 1.0)),
        "zero" => require_no_param(Arc::new(|_| 0.0)),
        "harmonic" => require_no_param(Arc::new(|n| 1.0 / (n as f64 + 1.0))),
        "linear" => require_no_param(Arc::new(|n| n as f64 + 1.0)),
        "alternating" => require_no_param(Arc::new(|n| if n % 2 == 0 { 1.0 } else { -1.0 })),
        "geometric" => {
            let r = parse_param("0.5")?;
            if r <= 0.0 || !r.is_finite() {
                return Err(Error::config(format!(
                    "geometric ratio must be positive and finite, got {}",
                    r
                )));
            }
            Ok(Generator {
                key: key.to_string(),
                f: Arc::new(move |n| r.powi(n as i32)),
            })
        }
        "power" => {
            let q = parse_param("2")?;
            if !q.is_finite() {
                return Err(Error::config("power exponent must be finite".to_string()));
            }
            Ok(Generator {
                key: key.to_string(),
                f: Arc::new(move |n| (n as f64 + 1.0).powf(q)),
            })
        }
        "random" => {
            if param.is_some() {
                return Err(Error::config(
                    "generator 'random' takes no parameter; use the seed".to_string(),
                ));
            }
            // Materialize lazily but deterministically: index n always maps
            // to the n-th draw of the seeded stream.
            let table = std::sync::Mutex::new((ChaCha8Rng::seed_from_u64(seed), Vec::<f64>::new()));
            Ok(Generator {
                key: key.to_string(),
                f: Arc::new(move |n| {
                    let mut guard = table.lock().expect("generator cache poisoned");
                    let (rng, cache) = &mut *guard;
                    while cache.len() <= n {
                        cache.push(rng.random_range(-1.0..=1.0));
                    }
                    cache[n]
                }),
            })
        }
        other => Err(Error::config(format!("unknown generator '{}'", other))),
    }
}
