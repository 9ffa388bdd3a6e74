//! Exact rational coefficients and sparse linear combinations.
//!
//! Every container in the crate stores coefficients as [`Rational`] inside a
//! [`SparseCombo`], an ordered map with no zero entries. Equality of combos is
//! equality of maps, so a zero test is an emptiness test.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational, always stored in lowest terms with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from an integer.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `num / den`. Panics if `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Renders a rational as `a` or `a/b`.
pub fn fmt_rational(q: &Rational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Finite linear combination of ordered keys with nonzero rational
/// coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SparseCombo<K: Ord> {
    terms: BTreeMap<K, Rational>,
}

impl<K: Ord> Default for SparseCombo<K> {
    fn default() -> Self {
        Self {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> SparseCombo<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(key: K, coeff: Rational) -> Self {
        let mut out = Self::new();
        out.add_term(key, coeff);
        out
    }

    /// Collects arbitrary `(key, coeff)` pairs, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (K, Rational)>>(terms: I) -> Self {
        let mut out = Self::new();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Adds `coeff * key` in place.
    pub fn add_term(&mut self, key: K, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c.clone());
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::new();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    /// Applies `f` to every key and re-collects; `f` may send a key to
    /// `None` (the term vanishes) or rescale it.
    pub fn map_terms<L, F>(&self, mut f: F) -> SparseCombo<L>
    where
        L: Ord + Clone,
        F: FnMut(&K) -> Option<(Rational, L)>,
    {
        let mut out = SparseCombo::new();
        for (k, c) in &self.terms {
            if let Some((factor, key)) = f(k) {
                out.add_term(key, c * factor);
            }
        }
        out
    }

    pub fn retain<F: FnMut(&K) -> bool>(&self, mut keep: F) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| keep(k))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<K: Ord> SparseCombo<K> {
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &K) -> Option<&Rational> {
        self.terms.get(key)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&K, &Rational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    /// True when every coefficient is `+1` or `-1`.
    pub fn is_unit_signed(&self) -> bool {
        self.terms.values().all(|c| c.abs().is_one())
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for SparseCombo<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.terms.iter().map(|(k, c)| (k, fmt_rational(c))))
            .finish()
    }
}

impl<'a, K: Ord> IntoIterator for &'a SparseCombo<K> {
    type Item = (&'a K, &'a Rational);
    type IntoIter = btree_map::Iter<'a, K, Rational>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}
