//! Formal calculus on classes of twisted diagonals.
//!
//! A twisted diagonal is the map `x -> (v_1 x, ..., v_m x)` from an abelian
//! variety `X` of dimension `g` into `X^m`, and `D(v)` denotes the class of
//! its image pushed forward from `[X]`. Classes are kept in a canonical form
//! using two rewrite rules that hold in the rational Chow group:
//!
//! * `D(d * v) = d^(2g) * D(v)` for `d > 0`, because multiplication by `d` is
//!   finite flat of degree `d^(2g)`;
//! * `D(-v) = D(v)`, because multiplication by `-1` is an automorphism.
//!
//! Pushforwards along maps that collapse `X` to a point send `D(v)` to zero
//! (`g >= 1`). All rules are true identities, so a formal result of zero
//! proves vanishing; a nonzero formal result proves nothing. Nonvanishing is
//! only ever decided in [`crate::cohomology`].
//!
//! The base point is always the zero section. A class built from another
//! section is the translate of this one, so nothing is lost.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow};

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, Rational, SparseCombo};

/// Relative dimension `g` and number of factors `m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AmbientParams {
    g: usize,
    m: usize,
}

impl AmbientParams {
    pub fn new(g: i64, m: i64) -> Result<Self> {
        if g < 1 {
            return Err(Error::InvalidGenus(g));
        }
        if m < 1 {
            return Err(Error::InvalidPower(m));
        }
        Ok(Self {
            g: g as usize,
            m: m as usize,
        })
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Real dimension of one factor, `2g`.
    pub fn two_g(&self) -> usize {
        2 * self.g
    }

    /// Same genus, different number of factors.
    pub fn with_power(&self, m: usize) -> Result<Self> {
        Self::new(self.g as i64, m as i64)
    }

    fn check_index(&self, j: usize) -> Result<()> {
        if j == 0 || j > self.m {
            return Err(Error::IndexOutOfRange { index: j, m: self.m });
        }
        Ok(())
    }
}

/// Primitive, sign-normalized, nonzero integer vector.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TwistVector(Vec<i64>);

impl TwistVector {
    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Indicator vector of the subset encoded by the low `m` bits of `mask`.
    pub fn indicator(mask: u64, m: usize) -> Self {
        Self((0..m).map(|i| ((mask >> i) & 1) as i64).collect())
    }
}

impl fmt::Debug for TwistVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{self}")
    }
}

impl fmt::Display for TwistVector {
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

/// `d^(2g)` as a rational.
fn degree_factor(d: u64, ambient: &AmbientParams) -> Rational {
    Rational::from_integer(Pow::pow(BigInt::from(d), ambient.two_g() as u32))
}

/// Splits a raw vector into `(d^(2g), v)` with `v` primitive and
/// sign-normalized, so that `D(raw) = d^(2g) * D(v)`. The zero vector gives
/// `(1, None)`.
pub fn normalize_twist(raw: &[i64], ambient: &AmbientParams) -> Result<(Rational, Option<TwistVector>)> {
    if raw.len() != ambient.m {
        return Err(Error::LengthMismatch {
            expected: ambient.m,
            got: raw.len(),
        });
    }
    normalize_any_length(raw, ambient)
}

fn normalize_any_length(raw: &[i64], ambient: &AmbientParams) -> Result<(Rational, Option<TwistVector>)> {
    if raw.contains(&i64::MIN) {
        return Err(Error::Overflow);
    }
    let d = raw.iter().fold(0i64, |acc, &x| acc.gcd(&x));
    if d == 0 {
        return Ok((Rational::one(), None));
    }
    let first = raw.iter().copied().find(|&x| x != 0).unwrap_or(1);
    let sign = first.signum();
    let v = raw.iter().map(|&x| sign * (x / d)).collect();
    Ok((degree_factor(d as u64, ambient), Some(TwistVector(v))))
}

/// Rational linear combination of twisted-diagonal classes on `X^m`.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalCycle {
    ambient: AmbientParams,
    combo: SparseCombo<TwistVector>,
}

impl FormalCycle {
    pub fn zero(ambient: AmbientParams) -> Self {
        Self {
            ambient,
            combo: SparseCombo::new(),
        }
    }

    /// `coeff * D(raw)`, normalized.
    pub fn from_raw(ambient: AmbientParams, raw: &[i64], coeff: Rational) -> Result<Self> {
        let mut out = Self::zero(ambient);
        out.add_raw(raw, coeff)?;
        Ok(out)
    }

    /// Builds a cycle from raw `(vector, coefficient)` pairs.
    pub fn from_raw_terms<'a, I>(ambient: AmbientParams, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a [i64], Rational)>,
    {
        let mut out = Self::zero(ambient);
        for (raw, c) in terms {
            out.add_raw(raw, c)?;
        }
        Ok(out)
    }

    /// Adds `coeff * D(raw)` in place; a zero `raw` contributes nothing.
    pub fn add_raw(&mut self, raw: &[i64], coeff: Rational) -> Result<()> {
        let (factor, twist) = normalize_twist(raw, &self.ambient)?;
        if let Some(v) = twist {
            self.combo.add_term(v, coeff * factor);
        }
        Ok(())
    }

    pub fn ambient(&self) -> AmbientParams {
        self.ambient
    }

    pub fn combo(&self) -> &SparseCombo<TwistVector> {
        &self.combo
    }

    pub fn is_zero(&self) -> bool {
        self.combo.is_zero()
    }

    pub fn len(&self) -> usize {
        self.combo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.combo.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TwistVector, &Rational)> {
        self.combo.iter()
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            ambient: self.ambient,
            combo: self.combo.add(&other.combo),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self {
            ambient: self.ambient,
            combo: self.combo.sub(&other.combo),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self {
            ambient: self.ambient,
            combo: self.combo.scale(c),
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(format!(
                "(g={}, m={}) vs (g={}, m={})",
                self.ambient.g, self.ambient.m, other.ambient.g, other.ambient.m
            )));
        }
        Ok(())
    }

    /// Rewrites every term through `f(v) -> raw vector` in the ambient
    /// `target`, renormalizing the result.
    fn rewrite<F>(&self, target: AmbientParams, mut f: F) -> Result<Self>
    where
        F: FnMut(&[i64]) -> Result<Vec<i64>>,
    {
        let mut out = Self::zero(target);
        for (v, c) in self.combo.iter() {
            let raw = f(v.entries())?;
            out.add_raw(&raw, c.clone())?;
        }
        Ok(out)
    }
}

impl fmt::Debug for FormalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FormalCycle(g={}, m={}: {self})", self.ambient.g, self.ambient.m)
    }
}

/// Canonical text form: terms in key order, `coeff * D(v_1,...,v_m)`
/// joined by ` + `; the zero cycle renders as `0`.
impl fmt::Display for FormalCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.combo.is_zero() {
            return f.write_str("0");
        }
        for (i, (v, c)) in self.combo.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} * D{v}", fmt_rational(c))?;
        }
        Ok(())
    }
}

/// The modified diagonal: the sum over nonempty `I` of
/// `(-1)^(m - |I|) * D(1_I)`. Panics if `m >= 64`.
pub fn modified_diagonal(ambient: AmbientParams) -> FormalCycle {
    let m = ambient.m;
    assert!(m < 64, "modified diagonal on {m} factors is not enumerable");
    let mut combo = SparseCombo::new();
    for mask in 1u64..(1u64 << m) {
        let sign = if (m - mask.count_ones() as usize).is_multiple_of(2) { 1 } else { -1 };
        combo.add_term(TwistVector::indicator(mask, m), Rational::from_integer(sign.into()));
    }
    FormalCycle { ambient, combo }
}

/// Pushforward along multiplication by `n` on factor `j` (1-based).
pub fn mult_pushforward_factor(c: &FormalCycle, j: usize, n: i64) -> Result<FormalCycle> {
    c.ambient.check_index(j)?;
    c.rewrite(c.ambient, |v| {
        let mut raw = v.to_vec();
        raw[j - 1] = raw[j - 1].checked_mul(n).ok_or(Error::Overflow)?;
        Ok(raw)
    })
}

/// Pushforward along multiplication by `n != 0` on all of `X^m`.
pub fn mult_pushforward_all(c: &FormalCycle, n: i64) -> Result<FormalCycle> {
    if n == 0 {
        return Err(Error::ZeroMultiplier);
    }
    c.rewrite(c.ambient, |v| {
        v.iter()
            .map(|&x| x.checked_mul(n).ok_or(Error::Overflow))
            .collect()
    })
}

/// Pushforward along the projection `X^m -> X^(m-1)` forgetting factor `j`.
pub fn proj_pushforward(c: &FormalCycle, j: usize) -> Result<FormalCycle> {
    if c.ambient.m == 1 {
        return Err(Error::ProjectionToBase);
    }
    c.ambient.check_index(j)?;
    let target = c.ambient.with_power(c.ambient.m - 1)?;
    c.rewrite(target, |v| Ok(delete_entry(v, j)))
}

fn delete_entry(v: &[i64], j: usize) -> Vec<i64> {
    v.iter()
        .enumerate()
        .filter(|&(i, _)| i + 1 != j)
        .map(|(_, &x)| x)
        .collect()
}

pub fn cycle_equal(a: &FormalCycle, b: &FormalCycle) -> Result<bool> {
    a.check_same(b)?;
    Ok(a.combo == b.combo)
}

/// One matched pair `(I, I + {j})` from the cancellation in the projection
/// of the modified diagonal. Subsets are 1-based and sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancelPair {
    pub without_j: Vec<usize>,
    pub with_j: Vec<usize>,
    /// Both terms project to the same normalized class.
    pub same_image: bool,
    /// Their signs in the modified diagonal are opposite.
    pub opposite_signs: bool,
}

/// Witness for the vanishing of the projection of the modified diagonal
/// along factor `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CancellationWitness {
    pub j: usize,
    /// `D(1_{j})` projects to a constant map and so to zero.
    pub singleton_is_constant: bool,
    pub pairs: Vec<CancelPair>,
}

impl CancellationWitness {
    pub fn holds(&self) -> bool {
        self.singleton_is_constant && self.pairs.iter().all(|p| p.same_image && p.opposite_signs)
    }
}

/// Checks term by term that `I -> I + {j}` matches the nonempty subsets not
/// containing `j` with the subsets containing `j` other than `{j}`, and that
/// matched terms cancel after projecting away factor `j`.
pub fn projection_cancellation(ambient: AmbientParams, j: usize) -> Result<CancellationWitness> {
    if ambient.m == 1 {
        return Err(Error::ProjectionToBase);
    }
    ambient.check_index(j)?;
    let m = ambient.m;
    let target = ambient.with_power(m - 1)?;
    let bit = 1u64 << (j - 1);
    let sign = |mask: u64| (m - mask.count_ones() as usize) % 2;
    let project = |mask: u64| -> Result<(Rational, Option<TwistVector>)> {
        let raw = delete_entry(TwistVector::indicator(mask, m).entries(), j);
        normalize_twist(&raw, &target)
    };
    let subset = |mask: u64| -> Vec<usize> { (0..m).filter(|i| (mask >> i) & 1 == 1).map(|i| i + 1).collect() };

    let singleton_is_constant = project(bit)?.1.is_none();
    let mut pairs = Vec::new();
    for mask in 1u64..(1u64 << m) {
        if mask & bit != 0 {
            continue;
        }
        let partner = mask | bit;
        pairs.push(CancelPair {
            without_j: subset(mask),
            with_j: subset(partner),
            same_image: project(mask)? == project(partner)?,
            opposite_signs: sign(mask) != sign(partner),
        });
    }
    Ok(CancellationWitness {
        j,
        singleton_is_constant,
        pairs,
    })
}
