use num_bigint::BigInt;

use super::monomial::{disjoint_wedge_sign, ExtMonomial};
use crate::error::{Error, Result};

/// Homomorphisms between powers of `X` whose action on `H^1` sends each
/// generator to a multiple of a single generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinearMapSpec {
    /// `X -> X^m`, `x -> (v_1 x, ..., v_m x)`.
    TwistedDiagonal { v: Vec<i64> },
    /// `X^m_in -> X^m_out` keeping the listed factors (1-based, increasing).
    Projection { m_in: usize, retained: Vec<usize> },
    /// `X^m -> X^m`, multiplication by `scalars[b]` on factor `b`.
    Multiplication { scalars: Vec<i64> },
}

impl LinearMapSpec {
    pub fn twisted_diagonal(v: &[i64]) -> Result<Self> {
        let f = Self::TwistedDiagonal { v: v.to_vec() };
        f.validate()?;
        Ok(f)
    }

    /// The projection forgetting factor `j` of `X^m`.
    pub fn drop_factor(m: usize, j: usize) -> Result<Self> {
        if m < 2 {
            return Err(Error::ProjectionToBase);
        }
        if j == 0 || j > m {
            return Err(Error::IndexOutOfRange { index: j, m });
        }
        Ok(Self::Projection {
            m_in: m,
            retained: (1..=m).filter(|&b| b != j).collect(),
        })
    }

    pub fn multiplication(scalars: &[i64]) -> Result<Self> {
        let f = Self::Multiplication {
            scalars: scalars.to_vec(),
        };
        f.validate()?;
        Ok(f)
    }

    /// Multiplication by `n` on every factor of `X^m`.
    pub fn uniform_multiplication(m: usize, n: i64) -> Result<Self> {
        Self::multiplication(&vec![n; m])
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Self::TwistedDiagonal { v } if v.is_empty() => Err(Error::InvalidMap("empty twist vector".into())),
            Self::Multiplication { scalars } if scalars.is_empty() => {
                Err(Error::InvalidMap("no factors to multiply".into()))
            }
            Self::Projection { m_in, retained } => {
                if retained.is_empty() {
                    return Err(Error::ProjectionToBase);
                }
                if retained.windows(2).any(|w| w[0] >= w[1]) {
                    return Err(Error::InvalidMap("retained factors must be strictly increasing".into()));
                }
                if retained[0] == 0 || *retained.last().unwrap() > *m_in {
                    return Err(Error::InvalidMap(format!("retained factors must lie in 1..={m_in}")));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Number of factors of the source.
    pub fn m_in(&self) -> usize {
        match self {
            Self::TwistedDiagonal { .. } => 1,
            Self::Projection { m_in, .. } => *m_in,
            Self::Multiplication { scalars } => scalars.len(),
        }
    }

    /// Number of factors of the target.
    pub fn m_out(&self) -> usize {
        match self {
            Self::TwistedDiagonal { v } => v.len(),
            Self::Projection { retained, .. } => retained.len(),
            Self::Multiplication { scalars } => scalars.len(),
        }
    }

    /// Pullback of the target generator at position `pos` as
    /// `(scalar, source position)`; `None` when it pulls back to zero.
    pub(crate) fn generator_image(&self, pos: usize, two_g: usize) -> Option<(i64, usize)> {
        let block = pos / two_g;
        let index = pos % two_g;
        match self {
            Self::TwistedDiagonal { v } => (v[block] != 0).then_some((v[block], index)),
            Self::Projection { retained, .. } => Some((1, (retained[block] - 1) * two_g + index)),
            Self::Multiplication { scalars } => (scalars[block] != 0).then_some((scalars[block], pos)),
        }
    }

    /// Pullback of a target monomial: the wedge of its generators' images in
    /// increasing order.
    pub(crate) fn pullback_monomial(&self, mono: ExtMonomial, two_g: usize) -> Option<(BigInt, ExtMonomial)> {
        let mut coeff = BigInt::from(1);
        let mut acc = 0u128;
        let mut negate = false;
        for pos in mono.positions() {
            let (scalar, src) = self.generator_image(pos, two_g)?;
            let bit = 1u128 << src;
            if acc & bit != 0 {
                return None;
            }
            if disjoint_wedge_sign(acc, bit) < 0 {
                negate = !negate;
            }
            acc |= bit;
            coeff *= scalar;
        }
        if negate {
            coeff = -coeff;
        }
        Some((coeff, ExtMonomial::from_bits(acc)))
    }
}
