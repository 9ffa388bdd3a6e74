//! Monomials of the exterior algebra on `2gm` generators as 128-bit sets.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported number of generators `2gm`.
pub const MAX_GENERATORS: usize = 128;

/// Generator `e[block, index]`, both 1-based, ordered lexicographically.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GeneratorId {
    pub block: usize,
    pub index: usize,
}

impl GeneratorId {
    pub fn new(block: usize, index: usize) -> Self {
        Self { block, index }
    }

    /// Position in the total order, 0-based.
    pub fn position(&self, two_g: usize) -> usize {
        (self.block - 1) * two_g + (self.index - 1)
    }

    pub fn from_position(pos: usize, two_g: usize) -> Self {
        Self {
            block: pos / two_g + 1,
            index: pos % two_g + 1,
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e[{},{}]", self.block, self.index)
    }
}

/// Strictly increasing product of generators, stored as the set of their
/// positions. Ordered by degree, then lexicographically on the generator
/// sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ExtMonomial(u128);

impl ExtMonomial {
    pub const ONE: Self = Self(0);

    pub fn from_bits(bits: u128) -> Self {
        Self(bits)
    }

    pub fn bits(&self) -> u128 {
        self.0
    }

    /// All `n` generators; the orientation class.
    pub fn full(n: usize) -> Self {
        if n >= 128 {
            Self(u128::MAX)
        } else {
            Self((1u128 << n) - 1)
        }
    }

    pub fn degree(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(&self, pos: usize) -> bool {
        (self.0 >> pos) & 1 == 1
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let p = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(p)
        })
    }

    pub fn generators(&self, two_g: usize) -> impl Iterator<Item = GeneratorId> {
        self.positions().map(move |p| GeneratorId::from_position(p, two_g))
    }

    /// Complement inside the first `n` generators.
    pub fn complement(&self, n: usize) -> Self {
        Self(Self::full(n).0 & !self.0)
    }

    /// `self ^ other` as `(sign, product)`, or `None` when a generator repeats.
    pub fn wedge(&self, other: &Self) -> Option<(i8, Self)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        Some((disjoint_wedge_sign(self.0, other.0), Self(self.0 | other.0)))
    }

    /// Generator counts per block of `two_g` generators.
    pub fn block_profile(&self, two_g: usize, blocks: usize) -> Vec<usize> {
        let mask = if two_g >= 128 { u128::MAX } else { (1u128 << two_g) - 1 };
        (0..blocks)
            .map(|b| ((self.0 >> (b * two_g)) & mask).count_ones() as usize)
            .collect()
    }
}

impl PartialOrd for ExtMonomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtMonomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & (diff & diff.wrapping_neg()) != 0 {
                // the smallest differing generator belongs to self
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

/// Sign of `a ^ b` for disjoint sets: parity of pairs `(x in a, y in b)`
/// with `x > y`.
pub fn disjoint_wedge_sign(a: u128, b: u128) -> i8 {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let y = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += a.checked_shr(y + 1).unwrap_or(0).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All `k`-element subsets of the first `n` positions, in increasing
/// numeric order.
pub fn subsets(n: usize, k: usize) -> impl Iterator<Item = ExtMonomial> {
    let first = if k > n {
        None
    } else {
        Some(ExtMonomial::full(k).0)
    };
    let limit = ExtMonomial::full(n).0;
    let mut next = first;
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            gosper(cur).filter(|&s| s & !limit == 0)
        };
        Some(ExtMonomial(cur))
    })
}

/// Next integer with the same popcount, if it fits in 128 bits.
fn gosper(x: u128) -> Option<u128> {
    let c = x & x.wrapping_neg();
    let r = x.checked_add(c)?;
    Some((((r ^ x) >> 2) / c) | r)
}
