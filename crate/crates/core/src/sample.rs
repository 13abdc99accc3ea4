//! Seeded generators for random test instances.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::algebraic::AlgebraicNumber;
use crate::field::Rationals;
use crate::linalg::Matrix;
use crate::multipoly::{Monomial, MultiPoly};
use crate::tower::{FieldTower, TowerElement};

/// `p/q` with `1 ≤ |p|, q ≤ bound`, or zero when `allow_zero` and drawn.
pub fn rational<R: Rng>(rng: &mut R, bound: i64, allow_zero: bool) -> BigRational {
    let lo = if allow_zero { 0 } else { 1 };
    let p = rng.random_range(lo..=bound) * if rng.random_bool(0.5) { 1 } else { -1 };
    let q = rng.random_range(1..=bound);
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn rational_matrix<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<BigRational> {
    Matrix::from_fn(n, |_, _| rational(rng, bound, true))
}

/// Rejection-sampled until the determinant is nonzero.
pub fn invertible<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<BigRational> {
    loop {
        let m = rational_matrix(rng, n, bound);
        if !m.det(&Rationals).expect("rational determinant").is_zero() {
            return m;
        }
    }
}

pub fn upper_triangular<R: Rng>(rng: &mut R, n: usize, bound: i64) -> Matrix<BigRational> {
    Matrix::from_fn(n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Greater => BigRational::zero(),
        std::cmp::Ordering::Equal => rational(rng, bound, false),
        std::cmp::Ordering::Less => rational(rng, bound, true),
    })
}

/// A sparse polynomial in the first `vars` generators with small rational
/// coefficients.
pub fn polynomial<R: Rng>(rng: &mut R, vars: u32, terms: usize, max_deg: u32) -> MultiPoly {
    let pairs = (0..terms).map(|_| {
        let exps: Vec<(u32, u32)> = (0..vars).map(|v| (v, rng.random_range(0..=max_deg))).collect();
        let c = AlgebraicNumber::from_rational(rational(rng, 9, false));
        (Monomial::from_pairs(exps), c)
    });
    MultiPoly::from_terms(pairs.collect::<Vec<_>>()).expect("rational coefficients")
}

/// A random quotient of polynomials over `tower`, with a nonzero denominator.
pub fn element<R: Rng>(rng: &mut R, tower: &FieldTower) -> TowerElement {
    let vars = tower.num_generators();
    loop {
        let (nt, dt) = (rng.random_range(0..4), rng.random_range(1..3));
        let num = polynomial(rng, vars, nt, 2);
        let den = polynomial(rng, vars, dt, 1);
        if let Ok(e) = TowerElement::normalize(num, den, tower.id()) {
            return e;
        }
    }
}
