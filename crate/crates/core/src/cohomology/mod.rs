//! Cohomology of `X^m` as the exterior algebra on `2gm` generators.
//!
//! Block `j` carries the generators `e[j,1], ..., e[j,2g]` of `H^1` of the
//! `j`-th factor. The top class of each factor is `e[j,1] ^ ... ^ e[j,2g]`,
//! and the top class of `X^m` is the wedge of all generators in
//! `(block, index)` order, with integral 1.
//!
//! Pushforward is computed from the adjunction
//! `integrate(f_*(a) ^ b) = integrate(a ^ f^*(b))`. Because the integration
//! pairing on monomials is a signed permutation, `f_*(a)` is read off one
//! target monomial `b` at a time from the complementary degree only; no
//! matrix over the whole algebra is formed.

mod map;
mod monomial;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

pub use map::LinearMapSpec;
pub use monomial::{disjoint_wedge_sign, subsets, ExtMonomial, GeneratorId, MAX_GENERATORS};

use crate::diagonal::{AmbientParams, FormalCycle};
use crate::error::{Error, Result};
use crate::exact::{fmt_rational, Rational, SparseCombo};
use crate::grading::{binomial, to_u128_saturating, MultiDegree};

/// Rational class in the exterior algebra of `X^m`.
#[derive(Clone, PartialEq, Eq)]
pub struct ExtClass {
    ambient: AmbientParams,
    combo: SparseCombo<ExtMonomial>,
}

fn check_size(ambient: &AmbientParams) -> Result<()> {
    let n = ambient.two_g() * ambient.m();
    if n > MAX_GENERATORS {
        return Err(Error::ResourceBound {
            what: "exterior algebra generators",
            needed: n as u128,
            bound: MAX_GENERATORS as u128,
        });
    }
    Ok(())
}

impl ExtClass {
    pub fn zero(ambient: AmbientParams) -> Result<Self> {
        check_size(&ambient)?;
        Ok(Self {
            ambient,
            combo: SparseCombo::new(),
        })
    }

    pub fn one(ambient: AmbientParams) -> Result<Self> {
        Self::from_monomial(ambient, ExtMonomial::ONE, Rational::one())
    }

    /// Orientation class with integral 1.
    pub fn top(ambient: AmbientParams) -> Result<Self> {
        let n = ambient.two_g() * ambient.m();
        Self::from_monomial(ambient, ExtMonomial::full(n), Rational::one())
    }

    pub fn generator(ambient: AmbientParams, id: GeneratorId) -> Result<Self> {
        Self::wedge_of(ambient, &[id])
    }

    /// `coeff * mono`; `mono` must use only the ambient's generators.
    pub fn from_monomial(ambient: AmbientParams, mono: ExtMonomial, coeff: Rational) -> Result<Self> {
        let mut out = Self::zero(ambient)?;
        if mono.bits() & !ExtMonomial::full(out.generator_count()).bits() != 0 {
            return Err(Error::AmbientMismatch("monomial uses generators outside the ambient".into()));
        }
        out.combo.add_term(mono, coeff);
        Ok(out)
    }

    /// Wedge of generators in the given order (zero when one repeats).
    pub fn wedge_of(ambient: AmbientParams, ids: &[GeneratorId]) -> Result<Self> {
        let mut acc = Self::one(ambient)?;
        for id in ids {
            if id.block == 0 || id.block > ambient.m() || id.index == 0 || id.index > ambient.two_g() {
                return Err(Error::AmbientMismatch(format!("generator {id} outside the ambient")));
            }
            let single = ExtMonomial::from_bits(1u128 << id.position(ambient.two_g()));
            let g = Self::from_monomial(ambient, single, Rational::one())?;
            acc = wedge(&acc, &g)?;
        }
        Ok(acc)
    }

    pub fn from_terms<I>(ambient: AmbientParams, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (ExtMonomial, Rational)>,
    {
        let mut out = Self::zero(ambient)?;
        let full = ExtMonomial::full(out.generator_count()).bits();
        for (mono, c) in terms {
            if mono.bits() & !full != 0 {
                return Err(Error::AmbientMismatch("monomial uses generators outside the ambient".into()));
            }
            out.combo.add_term(mono, c);
        }
        Ok(out)
    }

    pub fn ambient(&self) -> AmbientParams {
        self.ambient
    }

    pub fn combo(&self) -> &SparseCombo<ExtMonomial> {
        &self.combo
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExtMonomial, &Rational)> {
        self.combo.iter()
    }

    pub fn generator_count(&self) -> usize {
        self.ambient.two_g() * self.ambient.m()
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

    pub fn coeff(&self, mono: &ExtMonomial) -> Rational {
        self.combo.coeff(mono).cloned().unwrap_or_else(Rational::zero)
    }

    /// Distinct degrees present, increasing.
    pub fn degrees(&self) -> BTreeSet<usize> {
        self.combo.keys().map(ExtMonomial::degree).collect()
    }

    pub fn is_homogeneous_of(&self, d: usize) -> bool {
        self.combo.keys().all(|m| m.degree() == d)
    }

    pub fn homogeneous_part(&self, d: usize) -> Self {
        Self {
            ambient: self.ambient,
            combo: self.combo.retain(|m| m.degree() == d),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_same(self, other)?;
        Ok(Self {
            ambient: self.ambient,
            combo: self.combo.add(&other.combo),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_same(self, other)?;
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
}

fn check_same(a: &ExtClass, b: &ExtClass) -> Result<()> {
    if a.ambient != b.ambient {
        return Err(Error::AmbientMismatch(format!(
            "(g={}, m={}) vs (g={}, m={})",
            a.ambient.g(),
            a.ambient.m(),
            b.ambient.g(),
            b.ambient.m()
        )));
    }
    Ok(())
}

impl fmt::Debug for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExtClass(g={}, m={}: {self})", self.ambient.g(), self.ambient.m())
    }
}

/// Canonical text form: terms in monomial order, `coeff * e[j,k]^e[j,l]`
/// joined by ` + `; the unit monomial prints as `1` and the zero class as `0`.
impl fmt::Display for ExtClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.combo.is_zero() {
            return f.write_str("0");
        }
        let two_g = self.ambient.two_g();
        for (i, (mono, c)) in self.combo.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{} * ", fmt_rational(c))?;
            if mono.degree() == 0 {
                f.write_str("1")?;
            }
            for (k, id) in mono.generators(two_g).enumerate() {
                if k > 0 {
                    f.write_str("^")?;
                }
                write!(f, "{id}")?;
            }
        }
        Ok(())
    }
}

pub fn wedge(a: &ExtClass, b: &ExtClass) -> Result<ExtClass> {
    check_same(a, b)?;
    let mut combo = SparseCombo::new();
    for (ma, ca) in a.terms() {
        for (mb, cb) in b.terms() {
            if let Some((sign, mono)) = ma.wedge(mb) {
                let c = ca * cb;
                combo.add_term(mono, if sign < 0 { -c } else { c });
            }
        }
    }
    Ok(ExtClass {
        ambient: a.ambient,
        combo,
    })
}

/// Source and target ambients of `f` at genus `g`.
fn map_ambients(f: &LinearMapSpec, g: usize) -> Result<(AmbientParams, AmbientParams)> {
    f.validate()?;
    let source = AmbientParams::new(g as i64, f.m_in() as i64)?;
    let target = AmbientParams::new(g as i64, f.m_out() as i64)?;
    check_size(&source)?;
    check_size(&target)?;
    Ok((source, target))
}

/// `f^*(c)` for `c` on the target of `f`.
pub fn pullback(f: &LinearMapSpec, c: &ExtClass) -> Result<ExtClass> {
    let (source, target) = map_ambients(f, c.ambient.g())?;
    if c.ambient != target {
        return Err(Error::AmbientMismatch(format!(
            "class has {} factors, map target has {}",
            c.ambient.m(),
            target.m()
        )));
    }
    let two_g = source.two_g();
    let combo = c.combo.map_terms(|mono| {
        f.pullback_monomial(*mono, two_g)
            .map(|(k, img)| (Rational::from_integer(k), img))
    });
    Ok(ExtClass {
        ambient: source,
        combo,
    })
}

/// Coefficient of the orientation monomial.
pub fn integrate(c: &ExtClass) -> Rational {
    c.coeff(&ExtMonomial::full(c.generator_count()))
}

/// Number of target monomials the dual-basis pushforward of `c` visits.
pub fn pushforward_cost(f: &LinearMapSpec, c: &ExtClass) -> Result<u128> {
    let (source, target) = map_ambients(f, c.ambient.g())?;
    let n_s = source.two_g() * source.m();
    let n_t = target.two_g() * target.m();
    Ok(c.degrees()
        .into_iter()
        .map(|a| n_s - a)
        .filter(|&k| k <= n_t)
        .map(|k| to_u128_saturating(&binomial(n_t, k)))
        .fold(0u128, u128::saturating_add))
}

/// `f_*(c)` for `c` on the source of `f`, via the integration pairing.
pub fn pushforward(f: &LinearMapSpec, c: &ExtClass) -> Result<ExtClass> {
    let (source, target) = map_ambients(f, c.ambient.g())?;
    if c.ambient != source {
        return Err(Error::AmbientMismatch(format!(
            "class has {} factors, map source has {}",
            c.ambient.m(),
            source.m()
        )));
    }
    let two_g = source.two_g();
    let n_s = two_g * source.m();
    let n_t = two_g * target.m();
    let mut out: BTreeMap<ExtMonomial, Rational> = BTreeMap::new();
    for a in c.degrees() {
        // test monomials b on the target have degree n_s - a
        let k = n_s - a;
        if k > n_t {
            continue;
        }
        for test in subsets(n_t, k) {
            let Some((scale, image)) = f.pullback_monomial(test, two_g) else {
                continue;
            };
            let partner = image.complement(n_s);
            let Some(alpha) = c.combo.coeff(&partner) else {
                continue;
            };
            // integrate(c ^ f^*(test)) = alpha * scale * sign(partner ^ image)
            let mut value = alpha * Rational::from_integer(scale);
            if disjoint_wedge_sign(partner.bits(), image.bits()) < 0 {
                value = -value;
            }
            let dual = test.complement(n_t);
            if disjoint_wedge_sign(dual.bits(), test.bits()) < 0 {
                value = -value;
            }
            if !value.is_zero() {
                *out.entry(dual).or_insert_with(Rational::zero) += value;
            }
        }
    }
    Ok(ExtClass {
        ambient: target,
        combo: SparseCombo::from_terms(out),
    })
}

/// Cohomology class of `D(v)`: the pushforward of 1 along the twisted
/// diagonal `v`. Accepts raw (unnormalized) vectors.
pub fn class_of_twist(v: &[i64], ambient: AmbientParams) -> Result<ExtClass> {
    if v.len() != ambient.m() {
        return Err(Error::LengthMismatch {
            expected: ambient.m(),
            got: v.len(),
        });
    }
    if v.iter().all(|&x| x == 0) {
        return Err(Error::ZeroVector);
    }
    check_size(&ambient)?;
    let f = LinearMapSpec::twisted_diagonal(v)?;
    let point = AmbientParams::new(ambient.g() as i64, 1)?;
    pushforward(&f, &ExtClass::one(point)?)
}

pub fn class_of_cycle(c: &FormalCycle) -> Result<ExtClass> {
    let ambient = c.ambient();
    let mut out = ExtClass::zero(ambient)?;
    for (v, coeff) in c.terms() {
        let class = class_of_twist(v.entries(), ambient)?;
        out.combo.add_assign(&class.combo.scale(coeff));
    }
    Ok(out)
}

/// Per-block generator counts of a monomial.
pub fn monomial_profile(mono: &ExtMonomial, ambient: &AmbientParams) -> MultiDegree {
    MultiDegree::from_vec_unchecked(mono.block_profile(ambient.two_g(), ambient.m()))
}

/// Part of `c` in the Kunneth summand with the given block profile.
pub fn kunneth_component(c: &ExtClass, profile: &MultiDegree) -> Result<ExtClass> {
    if profile.len() != c.ambient.m() {
        return Err(Error::LengthMismatch {
            expected: c.ambient.m(),
            got: profile.len(),
        });
    }
    let ambient = c.ambient;
    Ok(ExtClass {
        ambient,
        combo: c.combo.retain(|m| monomial_profile(m, &ambient) == *profile),
    })
}

pub fn profile_support(c: &ExtClass) -> BTreeSet<MultiDegree> {
    c.combo.keys().map(|m| monomial_profile(m, &c.ambient)).collect()
}

/// `(g, m)` for a cohomology computation of the modified diagonal: the
/// number of target monomials visited per twisted diagonal, `C(2gm, 2g)`.
pub fn graded_piece_dim(ambient: &AmbientParams) -> u128 {
    to_u128_saturating(&binomial(ambient.two_g() * ambient.m(), ambient.two_g()))
}
