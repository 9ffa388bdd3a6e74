//! Test-only reference model of the exterior algebra.
//!
//! Shares nothing with the library beyond the orientation convention:
//! monomials are sorted index vectors, signs come from bubble sort, and
//! pushforward solves the adjunction equations by Gaussian elimination over
//! all test classes of complementary degree.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Q = BigRational;
pub type Mono = Vec<usize>;
pub type Class = BTreeMap<Mono, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Sorts `seq` in place by adjacent swaps; returns the sign, or `None` on
/// a repeated entry.
pub fn sort_with_sign(seq: &mut [usize]) -> Option<i64> {
    let mut sign = 1;
    for i in 0..seq.len() {
        for j in 0..seq.len() - 1 - i {
            if seq[j] == seq[j + 1] {
                return None;
            }
            if seq[j] > seq[j + 1] {
                seq.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    if seq.windows(2).any(|w| w[0] == w[1]) {
        return None;
    }
    Some(sign)
}

pub fn add_to(class: &mut Class, mono: Mono, c: Q) {
    if c.is_zero() {
        return;
    }
    let entry = class.entry(mono.clone()).or_insert_with(Q::zero);
    *entry += c;
    if entry.is_zero() {
        class.remove(&mono);
    }
}

pub fn wedge(a: &Class, b: &Class) -> Class {
    let mut out = Class::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let mut seq: Vec<usize> = ma.iter().chain(mb.iter()).copied().collect();
            if let Some(s) = sort_with_sign(&mut seq) {
                add_to(&mut out, seq, ca * cb * q(s));
            }
        }
    }
    out
}

pub fn integrate(c: &Class, n: usize) -> Q {
    let top: Mono = (0..n).collect();
    c.get(&top).cloned().unwrap_or_else(Q::zero)
}

pub fn monomials(n: usize, k: usize) -> Vec<Mono> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Mono>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Linear map on `H^1` given as a matrix: `images[t]` lists
/// `(source generator, coefficient)` for target generator `t`.
pub struct H1Map {
    pub n_source: usize,
    pub n_target: usize,
    pub images: Vec<Vec<(usize, i64)>>,
}

impl H1Map {
    pub fn twisted_diagonal(g: usize, v: &[i64]) -> Self {
        let two_g = 2 * g;
        let mut images = Vec::new();
        for &vj in v {
            for k in 0..two_g {
                images.push(if vj == 0 { vec![] } else { vec![(k, vj)] });
            }
        }
        Self {
            n_source: two_g,
            n_target: two_g * v.len(),
            images,
        }
    }

    pub fn projection(g: usize, m_in: usize, retained: &[usize]) -> Self {
        let two_g = 2 * g;
        let mut images = Vec::new();
        for &b in retained {
            for k in 0..two_g {
                images.push(vec![((b - 1) * two_g + k, 1)]);
            }
        }
        Self {
            n_source: two_g * m_in,
            n_target: two_g * retained.len(),
            images,
        }
    }

    pub fn multiplication(g: usize, scalars: &[i64]) -> Self {
        let two_g = 2 * g;
        let mut images = Vec::new();
        for (b, &n) in scalars.iter().enumerate() {
            for k in 0..two_g {
                images.push(if n == 0 { vec![] } else { vec![(b * two_g + k, n)] });
            }
        }
        Self {
            n_source: two_g * scalars.len(),
            n_target: two_g * scalars.len(),
            images,
        }
    }

    pub fn pullback(&self, c: &Class) -> Class {
        let mut out = Class::new();
        for (mono, coeff) in c {
            let mut acc = Class::new();
            acc.insert(vec![], coeff.clone());
            for &t in mono {
                let img: Class = self.images[t]
                    .iter()
                    .map(|&(s, a)| (vec![s], q(a)))
                    .collect();
                acc = wedge(&acc, &img);
            }
            for (m, c) in acc {
                add_to(&mut out, m, c);
            }
        }
        out
    }

    /// Solves `integrate(x ^ b) = integrate(alpha ^ f^*(b))` for all test
    /// monomials `b`, with `alpha` homogeneous of degree `a`.
    pub fn pushforward(&self, alpha: &Class, a: usize) -> Class {
        let n_s = self.n_source;
        let n_t = self.n_target;
        if a + n_t < n_s {
            return Class::new();
        }
        let d = a + n_t - n_s;
        if d > n_t {
            return Class::new();
        }
        let unknowns = monomials(n_t, d);
        let tests = monomials(n_t, n_t - d);
        let rows: Vec<Vec<Q>> = tests
            .iter()
            .map(|b| {
                let bc: Class = [(b.clone(), q(1))].into_iter().collect();
                let mut row: Vec<Q> = unknowns
                    .iter()
                    .map(|mu| {
                        let mc: Class = [(mu.clone(), q(1))].into_iter().collect();
                        integrate(&wedge(&mc, &bc), n_t)
                    })
                    .collect();
                row.push(integrate(&wedge(alpha, &self.pullback(&bc)), n_s));
                row
            })
            .collect();
        let solution = solve(rows, unknowns.len());
        let mut out = Class::new();
        for (mu, c) in unknowns.into_iter().zip(solution) {
            add_to(&mut out, mu, c);
        }
        out
    }
}

/// Gaussian elimination on an augmented system with a unique solution.
pub fn solve(mut rows: Vec<Vec<Q>>, n: usize) -> Vec<Q> {
    let mut pivot_row = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        let Some(p) = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            panic!("singular pairing in column {col}");
        };
        rows.swap(pivot_row, p);
        let inv = Q::one() / rows[pivot_row][col].clone();
        for x in rows[pivot_row].iter_mut() {
            *x *= &inv;
        }
        for r in 0..rows.len() {
            if r != pivot_row && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for k in 0..=n {
                    let delta = &rows[pivot_row][k] * &factor;
                    rows[r][k] -= delta;
                }
            }
        }
        pivots.push(pivot_row);
        pivot_row += 1;
    }
    for r in pivot_row..rows.len() {
        assert!(rows[r][n].is_zero(), "inconsistent adjunction system");
    }
    (0..n).map(|c| rows[pivots[c]][n].clone()).collect()
}

pub fn oracle_class_of_twist(g: usize, v: &[i64]) -> Class {
    let one: Class = [(vec![], q(1))].into_iter().collect();
    H1Map::twisted_diagonal(g, v).pushforward(&one, 0)
}

/// Converts an oracle class to the library's representation.
pub fn to_library(g: usize, m: usize, c: &Class) -> moddiag::ExtClass {
    let ambient = moddiag::AmbientParams::new(g as i64, m as i64).unwrap();
    moddiag::ExtClass::from_terms(
        ambient,
        c.iter().map(|(mono, coeff)| {
            let bits = mono.iter().fold(0u128, |acc, &p| acc | (1u128 << p));
            (moddiag::ExtMonomial::from_bits(bits), coeff.clone())
        }),
    )
    .unwrap()
}

/// Point class of factor `b` (0-based): the top monomial of that block.
pub fn point_in_block(g: usize, b: usize) -> Class {
    let two_g = 2 * g;
    [(((b * two_g)..((b + 1) * two_g)).collect::<Mono>(), q(1))].into_iter().collect()
}
