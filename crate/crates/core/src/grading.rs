//! Multi-degree bookkeeping for the motivic decomposition of `h(X^m)`.
//!
//! `h(X) = h^0 + ... + h^(2g)` with multiplication by `n` acting as
//! `n^(2g - i)` on `h^i`, so a class on which `mult(n)_*` acts by `n^w` lives
//! in the summands `h^(i_1) x ... x h^(i_m)` with `sum(i) = 2gm - w`.
//! Summands with some `i_j = 2g` kill the modified diagonal, and the
//! pigeonhole step shows every admissible summand has such an entry once
//! `m >= 2g + 1`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Tuple `(i_1, ..., i_m)` with `0 <= i_j <= 2g`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct MultiDegree(Vec<usize>);

impl MultiDegree {
    pub fn new(entries: Vec<usize>, g: usize) -> Result<Self> {
        if let Some(&bad) = entries.iter().find(|&&x| x > 2 * g) {
            return Err(Error::OutOfRange {
                what: "multi-degree entry",
                value: bad as i64,
                lo: 0,
                hi: 2 * g as i64,
            });
        }
        Ok(Self(entries))
    }

    /// Skips the range check; callers guarantee `entries[j] <= 2g`.
    pub(crate) fn from_vec_unchecked(entries: Vec<usize>) -> Self {
        Self(entries)
    }

    pub fn entries(&self) -> &[usize] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn has_top_entry(&self, g: usize) -> bool {
        self.0.contains(&(2 * g))
    }
}

impl fmt::Debug for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// Total degree `nu = 2gm - w` of the summands on which `mult(n)_*` acts by
/// `n^w`.
pub fn weight_from_eigenvalue(g: usize, m: usize, w: i64) -> Result<usize> {
    let top = (2 * g * m) as i64;
    if !(0..=top).contains(&w) {
        return Err(Error::OutOfRange {
            what: "eigen-exponent",
            value: w,
            lo: 0,
            hi: top,
        });
    }
    Ok((top - w) as usize)
}

/// Number of tuples in `{0..2g}^m` with entry sum `nu`.
pub fn count_admissible(g: usize, m: usize, nu: usize) -> BigUint {
    if nu > 2 * g * m {
        return BigUint::zero();
    }
    let mut ways = vec![BigUint::zero(); nu + 1];
    ways[0] = BigUint::one();
    for _ in 0..m {
        let mut next = vec![BigUint::zero(); nu + 1];
        for (s, w) in ways.iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            for i in 0..=(2 * g).min(nu - s) {
                next[s + i] += w;
            }
        }
        ways = next;
    }
    ways.swap_remove(nu)
}

/// All tuples in `{0..2g}^m` with entry sum `nu`, in lexicographic order.
pub fn admissible_degrees(g: usize, m: usize, nu: usize) -> Result<Vec<MultiDegree>> {
    let top = 2 * g * m;
    if nu > top {
        return Err(Error::OutOfRange {
            what: "total degree",
            value: nu as i64,
            lo: 0,
            hi: top as i64,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fill_lex(2 * g, m, nu, &mut current, &mut out);
    Ok(out)
}

fn fill_lex(cap: usize, slots: usize, remaining: usize, current: &mut Vec<usize>, out: &mut Vec<MultiDegree>) {
    if slots == 0 {
        if remaining == 0 {
            out.push(MultiDegree(current.clone()));
        }
        return;
    }
    // the rest can absorb at most cap * (slots - 1)
    let lo = remaining.saturating_sub(cap * (slots - 1));
    let hi = cap.min(remaining);
    for i in lo..=hi {
        current.push(i);
        fill_lex(cap, slots - 1, remaining - i, current, out);
        current.pop();
    }
}

/// Drops every tuple containing an entry `2g`.
pub fn filter_top(degrees: &[MultiDegree], g: usize) -> Vec<MultiDegree> {
    degrees.iter().filter(|d| !d.has_top_entry(g)).cloned().collect()
}

/// Outcome of the analytic pigeonhole argument at `nu = 2g(m-1)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "outcome", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PigeonholeOutcome {
    /// Complements `2g - i_k` are nonnegative and sum to `2g`. A survivor
    /// needs every complement `>= 1`, so `m <= complement_sum`, which fails.
    Proof {
        complement_sum: usize,
        slots: usize,
    },
    /// `m <= 2g`: an explicit survivor (the lexicographically largest) and
    /// the survivor count `C(2g-1, m-1)` (compositions of `2g` into `m`
    /// positive parts).
    Counterexample {
        survivor: MultiDegree,
        survivor_count: String,
    },
}

impl PigeonholeOutcome {
    pub fn is_proof(&self) -> bool {
        matches!(self, Self::Proof { .. })
    }
}

pub fn prove_empty_pigeonhole(g: usize, m: usize) -> PigeonholeOutcome {
    let two_g = 2 * g;
    if m > two_g {
        return PigeonholeOutcome::Proof {
            complement_sum: two_g,
            slots: m,
        };
    }
    // complements (1, ..., 1, 2g - m + 1)
    let mut entries = vec![two_g - 1; m];
    entries[m - 1] = m - 1;
    PigeonholeOutcome::Counterexample {
        survivor: MultiDegree(entries),
        survivor_count: binomial(two_g - 1, m - 1).to_string(),
    }
}

pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Saturating conversion for size comparisons against `u128` bounds.
pub fn to_u128_saturating(x: &BigUint) -> u128 {
    x.to_u128().unwrap_or(u128::MAX)
}
