//! Twisted conjugation, class witnesses and the three-factor decomposition.
//!
//! Membership of `F` in the twisted class of the identity is witnessed by `Y`
//! with `F = Y φ(Y)^{-1}`. Witnesses are produced by adjoining fresh
//! transcendental generators and extending `φ` linearly on them.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebraic::{quad_complex_roots, real_roots, AlgebraicNumber, Limits};
use crate::automorphism::FieldState;
use crate::error::{Error, Result};
use crate::factor::factor_rational;
use crate::field::{Algebraics, Field, Rationals};
use crate::intpoly::IntPolynomial;
use crate::linalg::{discriminant, Matrix};
use crate::tower::{RationalFunctions, TowerElement};

/// An automorphism acting entrywise on matrices over the domain `F`.
pub trait MatrixAutomorphism<F: Field> {
    fn apply(&self, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>>;
}

/// The identity automorphism of any domain.
#[derive(Clone, Copy, Debug, Default)]
pub struct Identity;

impl<F: Field> MatrixAutomorphism<F> for Identity {
    fn apply(&self, m: &Matrix<F::Elem>) -> Result<Matrix<F::Elem>> {
        Ok(m.clone())
    }
}

impl MatrixAutomorphism<RationalFunctions> for FieldState {
    fn apply(&self, m: &Matrix<TowerElement>) -> Result<Matrix<TowerElement>> {
        self.apply_matrix(m)
    }
}

/// `z y φ(z)^{-1}`.
pub fn twisted_conjugate<F: Field, A: MatrixAutomorphism<F>>(
    f: &F,
    z: &Matrix<F::Elem>,
    y: &Matrix<F::Elem>,
    phi: &A,
) -> Result<Matrix<F::Elem>> {
    let pz_inv = phi.apply(z)?.inv(f)?;
    z.mul(f, y)?.mul(f, &pz_inv)
}

/// Splits a conjugated class element by the identity
/// `y^{-1} (x φ(x)^{-1}) y = c1 c2^{-1}` with `c1 = (y^{-1}x) φ(y^{-1}x)^{-1}`
/// and `c2 = y^{-1} φ(y)`. The identity is checked before returning.
pub fn conj_split<F: Field, A: MatrixAutomorphism<F>>(
    f: &F,
    x: &Matrix<F::Elem>,
    y: &Matrix<F::Elem>,
    phi: &A,
) -> Result<(Matrix<F::Elem>, Matrix<F::Elem>)> {
    let y_inv = y.inv(f)?;
    let w = y_inv.mul(f, x)?;
    let c1 = w.mul(f, &phi.apply(&w)?.inv(f)?)?;
    let c2 = y_inv.mul(f, &phi.apply(y)?)?;
    let lhs = y_inv.mul(f, &x.mul(f, &phi.apply(x)?.inv(f)?)?)?.mul(f, y)?;
    let rhs = c1.mul(f, &c2.inv(f)?)?;
    if lhs != rhs {
        return Err(Error::IdentityViolated("conjugation splitting".into()));
    }
    Ok((c1, c2))
}

/// Whether `Y` witnesses `F`: `F = Y φ(Y)^{-1}` for sign +1 and
/// `F^{-1} = Y φ(Y)^{-1}` for sign −1. Checked without inverting, as
/// `F φ(Y) = Y` and `F Y = φ(Y)` respectively, after `det Y ≠ 0`.
pub fn is_member_with<F: Field>(
    f: &F,
    m: &Matrix<F::Elem>,
    sign: i8,
    y: &Matrix<F::Elem>,
    phi_y: &Matrix<F::Elem>,
) -> Result<bool> {
    if m.n() != y.n() || phi_y.n() != y.n() {
        return Ok(false);
    }
    if f.is_zero(&y.det_division_free(f)?) {
        return Ok(false);
    }
    Ok(match sign {
        1 => m.mul(f, phi_y)? == *y,
        -1 => m.mul(f, y)? == *phi_y,
        _ => false,
    })
}

pub fn lift_rational(m: &Matrix<BigRational>) -> Matrix<TowerElement> {
    m.map(|x| TowerElement::constant(AlgebraicNumber::from_rational(x.clone())))
}

pub fn lift_algebraic(m: &Matrix<AlgebraicNumber>) -> Matrix<TowerElement> {
    m.map(|x| TowerElement::constant(x.clone()))
}

fn fresh_index(state: &FieldState, names: impl Fn(usize) -> Vec<String>) -> usize {
    (1..)
        .find(|&k| names(k).iter().all(|n| state.tower().is_free(n)))
        .expect("unbounded search")
}

/// A class witness: a block of fresh generators `T = (t_ij)` with
/// `φ(T) = T X`, so `T^{-1} φ(T) = X`.
#[derive(Clone, Debug)]
pub struct WitnessResult {
    pub t: Matrix<TowerElement>,
    pub block: usize,
    pub version: usize,
}

fn witness_names(n: usize, k: usize) -> Vec<String> {
    let mut out = Vec::with_capacity(n * n);
    for i in 1..=n {
        for j in 1..=n {
            out.push(format!("t{k}_{i}_{j}"));
        }
    }
    out
}

/// Adjoins `n^2` generators `t_ij` with `φ(t_ij) = Σ_k t_ik x_kj`.
pub fn class_witness(x: &Matrix<TowerElement>, state: &mut FieldState) -> Result<WitnessResult> {
    let f = RationalFunctions;
    let n = x.n();
    for e in x.entries() {
        state.tower().check(e)?;
    }
    if f.is_zero(&x.det(&f)?) {
        return Err(Error::SingularMatrix);
    }
    let k = fresh_index(state, |k| witness_names(n, k));
    let names = witness_names(n, k);
    // generator (i, j) has block position i*n + j; its image row holds x_kj at (i, k)
    let images = Matrix::from_fn(n * n, |r, c| {
        let (i, j) = (r / n, r % n);
        let (i2, kk) = (c / n, c % n);
        if i == i2 {
            x.get(kk, j).clone()
        } else {
            TowerElement::zero()
        }
    });
    let mut next = state.clone();
    let block = next.extend_block(names, images)?;
    let start = next.tower().blocks()[block].start;
    let t = Matrix::from_fn(n, |i, j| next.tower().gen(start + (i * n + j) as u32));
    let pt = next.apply_matrix(&t)?;
    if pt != t.mul(&f, x)? || f.is_zero(&t.det_division_free(&f)?) {
        return Err(Error::IdentityViolated("class witness".into()));
    }
    *state = next;
    Ok(WitnessResult {
        t,
        block,
        version: state.version(),
    })
}

/// Adjoins `y` with `φ(y) = x^{-1} y`, so that `y φ(y)^{-1} = x`.
pub fn scalar_witness(x: &TowerElement, state: &mut FieldState) -> Result<TowerElement> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    state.tower().check(x)?;
    let k = fresh_index(state, |k| vec![format!("y{k}")]);
    let mut next = state.clone();
    let block = next.extend_block(vec![format!("y{k}")], Matrix::from_rows(vec![vec![x.inv()?]])?)?;
    let y = next.tower().gen(next.tower().blocks()[block].start);
    if y.div(&next.apply(&y)?)? != *x {
        return Err(Error::IdentityViolated("scalar witness".into()));
    }
    *state = next;
    Ok(y)
}

/// `Y = diag(y_1, …, y_n)` with `Y φ(Y)^{-1} = D`.
pub fn diagonal_witness(d: &Matrix<TowerElement>, state: &mut FieldState) -> Result<Matrix<TowerElement>> {
    let f = RationalFunctions;
    if !d.is_diagonal(&f) {
        return Err(Error::NotDiagonal);
    }
    let entries = d.diagonal_entries();
    if entries.iter().any(|e| e.is_zero()) {
        return Err(Error::ZeroElement);
    }
    let mut next = state.clone();
    let ys: Vec<TowerElement> = entries
        .iter()
        .map(|e| scalar_witness(e, &mut next))
        .collect::<Result<_>>()?;
    let y = Matrix::diagonal(&f, &ys);
    let py = next.apply_matrix(&y)?;
    if y.mul(&f, &py.inv(&f)?)? != *d {
        return Err(Error::IdentityViolated("diagonal witness".into()));
    }
    *state = next;
    Ok(y)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ShiftConfig {
    pub seed: u64,
    /// Diagonal entries are drawn from `1..=range`.
    pub range: u64,
    pub max_attempts: usize,
}

impl Default for ShiftConfig {
    fn default() -> Self {
        ShiftConfig {
            seed: 0,
            range: 16,
            max_attempts: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shift {
    pub diagonal: Vec<BigInt>,
    /// Number of candidates tried, including the accepted one.
    pub attempts: usize,
}

/// Characteristic polynomial of a rational matrix, scaled to integers.
pub fn rational_charpoly(m: &Matrix<BigRational>) -> Result<IntPolynomial> {
    let p = m.charpoly(&Rationals)?;
    let lcm = p.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    Ok(IntPolynomial::new(
        p.coeffs.iter().map(|c| (c * BigRational::from(lcm.clone())).to_integer()).collect(),
    ))
}

fn has_distinct_eigenvalues(m: &Matrix<BigRational>) -> Result<bool> {
    let p = m.charpoly(&Rationals)?;
    if p.degree() == 0 {
        return Ok(true);
    }
    Ok(!discriminant(&Rationals, &p)?.is_zero())
}

fn shift_candidate(attempt: usize, half: usize, n: usize, range: u64, rng: &mut ChaCha8Rng) -> Vec<BigInt> {
    if attempt < half {
        return (0..n).map(|_| BigInt::from(rng.random_range(1..=range))).collect();
    }
    // lexicographic grid over [1, range]^n, last coordinate fastest
    let mut idx = (attempt - half) as u128;
    let mut out = vec![BigInt::zero(); n];
    for slot in out.iter_mut().rev() {
        *slot = BigInt::from((idx % range as u128) as u64 + 1);
        idx /= range as u128;
    }
    out
}

/// A diagonal `D` with entries in `[1, range]` such that `A D` has distinct
/// eigenvalues. Seeded sampling, then a deterministic grid after half the
/// attempt budget.
pub fn distinct_shift(a: &Matrix<BigRational>, config: &ShiftConfig) -> Result<Shift> {
    let f = Rationals;
    if a.det(&f)?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    if config.range == 0 {
        return Err(Error::InvalidInput("shift range must be positive".into()));
    }
    let n = a.n();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let half = config.max_attempts / 2;
    for attempt in 0..config.max_attempts {
        let d = shift_candidate(attempt, half, n, config.range, &mut rng);
        let dm = Matrix::diagonal(&f, &d.iter().map(|x| BigRational::from(x.clone())).collect::<Vec<_>>());
        if has_distinct_eigenvalues(&a.mul(&f, &dm)?)? {
            return Ok(Shift {
                diagonal: d,
                attempts: attempt + 1,
            });
        }
    }
    Err(Error::ShiftNotFound(config.max_attempts))
}

/// Eigen-decomposition `M = X B X^{-1}` of a rational matrix with distinct
/// eigenvalues. Returns `X` and the diagonal of `B`. Each column of `X` is the
/// reduced nullspace basis vector of `M - b I`, whose free coordinate is one.
pub fn eigen_split(m: &Matrix<BigRational>, limits: &Limits) -> Result<(Matrix<AlgebraicNumber>, Vec<AlgebraicNumber>)> {
    let n = m.n();
    let p = rational_charpoly(m)?;
    if n == 0 {
        return Ok((Matrix::from_rows(vec![])?, vec![]));
    }
    if !has_distinct_eigenvalues(m)? {
        return Err(Error::RepeatedEigenvalues);
    }
    let mut real = Vec::with_capacity(n);
    let mut complex = Vec::new();
    for (factor, _) in factor_rational(&p, limits.factor_degree)? {
        let d = factor.deg();
        let roots: Vec<AlgebraicNumber> = real_roots(&factor).into_iter().map(|r| r.value).collect();
        if roots.len() == d {
            real.extend(roots);
        } else if d == 2 {
            let (a, b) = quad_complex_roots(&factor)?;
            complex.push(a);
            complex.push(b);
        } else {
            return Err(Error::UnsupportedSplitting(format!(
                "irreducible factor {factor} of degree {d} has non-real roots"
            )));
        }
    }
    // real eigenvalues ascending, then conjugate pairs with positive imaginary part first
    real.sort_by(|a, b| a.cmp_real(b).expect("real eigenvalues"));
    let mut eigenvalues = real;
    eigenvalues.extend(complex);
    let f = Algebraics { limits: *limits };
    let ma = m.map(|x| AlgebraicNumber::from_rational(x.clone()));
    let mut columns = Vec::with_capacity(n);
    for lambda in &eigenvalues {
        let shifted = ma.sub(&f, &Matrix::identity(&f, n).scale(&f, lambda)?)?;
        let basis = shifted.nullspace(&f)?;
        let v = basis.into_iter().next().ok_or(Error::RepeatedEigenvalues)?;
        columns.push(v);
    }
    let x = Matrix::from_fn(n, |i, j| columns[j][i].clone());
    let b = Matrix::diagonal(&f, &eigenvalues);
    if x.mul(&f, &b)?.mul(&f, &x.inv(&f)?)? != ma {
        return Err(Error::IdentityViolated("eigen decomposition".into()));
    }
    Ok((x, eigenvalues))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    pub shift: ShiftConfig,
    /// Fresh shifts tried after an unsupported eigenvalue splitting.
    pub retries: usize,
    pub limits: Limits,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig {
            shift: ShiftConfig::default(),
            retries: 10,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Factor {
    pub matrix: Matrix<TowerElement>,
    pub sign: i8,
    pub witness: Matrix<TowerElement>,
}

#[derive(Clone, Debug)]
pub struct TwistedFactorization {
    pub target: Matrix<TowerElement>,
    pub factors: Vec<Factor>,
    pub version: usize,
    /// The accepted diagonal shift, when the general pipeline ran.
    pub shift: Option<Vec<BigInt>>,
    /// Set when the middle factor is the identity because `φ` fixes `X`.
    pub collapsible: bool,
}

fn derive_seed(seed: u64, attempt: usize) -> u64 {
    if attempt == 0 {
        return seed;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(attempt as u64);
    rng.random()
}

/// Writes an invertible rational `A` as a product of at most three matrices
/// from `[I]_φ ∪ [I]_φ^{-1}`, following `A = (A D) D^{-1}` with `A D`
/// diagonalizable over the algebraic numbers.
pub fn factor3(a: &Matrix<BigRational>, state: &mut FieldState, config: &FactorConfig) -> Result<TwistedFactorization> {
    let q = Rationals;
    let f = RationalFunctions;
    if a.det(&q)?.is_zero() {
        return Err(Error::SingularMatrix);
    }
    let target = lift_rational(a);
    if a.is_identity(&q) {
        return Ok(TwistedFactorization {
            target,
            factors: vec![],
            version: state.version(),
            shift: None,
            collapsible: false,
        });
    }
    let mut next = state.clone();
    if a.is_diagonal(&q) {
        let y = diagonal_witness(&target, &mut next)?;
        let fac = TwistedFactorization {
            target: target.clone(),
            factors: vec![Factor {
                matrix: target,
                sign: 1,
                witness: y,
            }],
            version: next.version(),
            shift: None,
            collapsible: false,
        };
        check_factorization(&fac, &next)?;
        *state = next;
        return Ok(fac);
    }
    let mut last_err = None;
    for attempt in 0..=config.retries {
        let shift_cfg = ShiftConfig {
            seed: derive_seed(config.shift.seed, attempt),
            ..config.shift
        };
        let shift = distinct_shift(a, &shift_cfg)?;
        let dq: Vec<BigRational> = shift.diagonal.iter().map(|x| BigRational::from(x.clone())).collect();
        let ad = a.mul(&q, &Matrix::diagonal(&q, &dq))?;
        let (x, b) = match eigen_split(&ad, &config.limits) {
            Ok(r) => r,
            Err(e @ Error::UnsupportedSplitting(_)) => {
                last_err = Some(e);
                continue;
            }
            Err(e) => return Err(e),
        };
        let x = lift_algebraic(&x);
        let bm = Matrix::diagonal(&f, &b.iter().cloned().map(TowerElement::constant).collect::<Vec<_>>());
        let y_b = diagonal_witness(&bm, &mut next)?;
        let w = x.mul(&f, &y_b)?;
        let f1 = w.mul(&f, &next.apply_matrix(&w)?.inv(&f)?)?;
        let f2 = x.mul(&f, &next.apply_matrix(&x)?.inv(&f)?)?.inv(&f)?;
        let d_inv = Matrix::diagonal(
            &f,
            &dq.iter()
                .map(|c| TowerElement::constant(AlgebraicNumber::from_rational(c.recip())))
                .collect::<Vec<_>>(),
        );
        let y_d = diagonal_witness(&d_inv, &mut next)?;
        let collapsible = f2.is_identity(&f);
        let fac = TwistedFactorization {
            target,
            factors: vec![
                Factor {
                    matrix: f1,
                    sign: 1,
                    witness: w,
                },
                Factor {
                    matrix: f2,
                    sign: -1,
                    witness: x,
                },
                Factor {
                    matrix: d_inv,
                    sign: 1,
                    witness: y_d,
                },
            ],
            version: next.version(),
            shift: Some(shift.diagonal),
            collapsible,
        };
        check_factorization(&fac, &next)?;
        *state = next;
        return Ok(fac);
    }
    Err(last_err.unwrap_or_else(|| Error::UnsupportedSplitting("no supported shift".into())))
}

/// Checks every membership, the product and the factor count.
pub fn check_factorization(fac: &TwistedFactorization, state: &FieldState) -> Result<()> {
    let f = RationalFunctions;
    if fac.factors.len() > 3 {
        return Err(Error::IdentityViolated("more than three factors".into()));
    }
    let n = fac.target.n();
    let mut prod = Matrix::identity(&f, n);
    for (i, fa) in fac.factors.iter().enumerate() {
        let py = state.apply_matrix(&fa.witness)?;
        if !is_member_with(&f, &fa.matrix, fa.sign, &fa.witness, &py)? {
            return Err(Error::IdentityViolated(format!("membership of factor {}", i + 1)));
        }
        prod = prod.mul(&f, &fa.matrix)?;
    }
    if prod != fac.target {
        return Err(Error::IdentityViolated("product of factors".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from(BigInt::from(n))
    }

    fn rm(rows: &[&[i64]]) -> Matrix<BigRational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()).unwrap()
    }

    fn k(n: i64) -> TowerElement {
        TowerElement::from_int(n)
    }

    #[test]
    fn class_witness_swap() {
        let mut s = FieldState::new();
        let x = lift_rational(&rm(&[&[0, 1], &[1, 0]]));
        let w = class_witness(&x, &mut s).unwrap();
        let t = &w.t;
        let pt = s.apply_matrix(t).unwrap();
        // φ(t11) = t12, φ(t12) = t11, φ(t21) = t22, φ(t22) = t21
        assert_eq!(pt.get(0, 0), t.get(0, 1));
        assert_eq!(pt.get(0, 1), t.get(0, 0));
        assert_eq!(pt.get(1, 0), t.get(1, 1));
        assert_eq!(pt.get(1, 1), t.get(1, 0));
        let f = RationalFunctions;
        assert_eq!(t.inv(&f).unwrap().mul(&f, &pt).unwrap(), x);
    }

    #[test]
    fn class_witness_identity_and_singular() {
        let mut s = FieldState::new();
        let f = RationalFunctions;
        let w = class_witness(&Matrix::identity(&f, 2), &mut s).unwrap();
        assert_eq!(s.apply_matrix(&w.t).unwrap(), w.t);
        let sing = lift_rational(&rm(&[&[1, 2], &[2, 4]]));
        assert_eq!(class_witness(&sing, &mut s).unwrap_err(), Error::SingularMatrix);
    }

    #[test]
    fn scalar_and_diagonal_witnesses() {
        let mut s = FieldState::new();
        let y = scalar_witness(&k(2), &mut s).unwrap();
        assert_eq!(s.apply(&y).unwrap(), y.div(&k(2)).unwrap());
        let f = RationalFunctions;
        let d = Matrix::diagonal(&f, &[k(2), k(3)]);
        let yd = diagonal_witness(&d, &mut s).unwrap();
        let p = s.apply_matrix(&yd).unwrap();
        assert_eq!(yd.mul(&f, &p.inv(&f).unwrap()).unwrap(), d);
        let bad = Matrix::diagonal(&f, &[k(1), k(0)]);
        assert_eq!(diagonal_witness(&bad, &mut s).unwrap_err(), Error::ZeroElement);
        let nd = lift_rational(&rm(&[&[1, 1], &[0, 1]]));
        assert_eq!(diagonal_witness(&nd, &mut s).unwrap_err(), Error::NotDiagonal);
        assert_eq!(scalar_witness(&k(0), &mut s).unwrap_err(), Error::ZeroElement);
    }

    #[test]
    fn shift_examples() {
        let cfg = ShiftConfig::default();
        let s = distinct_shift(&rm(&[&[1, 1], &[0, 1]]), &cfg).unwrap();
        assert_ne!(s.diagonal[0], s.diagonal[1]);
        assert!(has_distinct_eigenvalues(&rm(&[&[1, 1], &[0, 2]])).unwrap());
        assert!(!has_distinct_eigenvalues(&rm(&[&[1, 1], &[0, 1]])).unwrap());
        assert!(has_distinct_eigenvalues(&rm(&[&[0, 1], &[1, 0]])).unwrap());
    }

    #[test]
    fn shift_grid_fallback_is_lexicographic() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let g: Vec<Vec<BigInt>> = (0..4).map(|a| shift_candidate(a, 0, 2, 3, &mut rng)).collect();
        let expect: Vec<Vec<BigInt>> = [[1, 1], [1, 2], [1, 3], [2, 1]]
            .iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect();
        assert_eq!(g, expect);
    }

    #[test]
    fn eigen_examples() {
        let lim = Limits::default();
        let (x, b) = eigen_split(&rm(&[&[1, 2], &[0, 2]]), &lim).unwrap();
        assert_eq!(b, vec![AlgebraicNumber::from_int(1), AlgebraicNumber::from_int(2)]);
        let expect = rm(&[&[1, 2], &[0, 1]]).map(|v| AlgebraicNumber::from_rational(v.clone()));
        assert_eq!(x, expect);
        let (_, b) = eigen_split(&rm(&[&[3, 0], &[0, 5]]), &lim).unwrap();
        assert_eq!(b, vec![AlgebraicNumber::from_int(3), AlgebraicNumber::from_int(5)]);
        let (_, b) = eigen_split(&rm(&[&[0, 1], &[-1, 0]]), &lim).unwrap();
        assert_eq!(b[0], AlgebraicNumber::i());
        assert_eq!(b[1], AlgebraicNumber::i().neg());
        assert_eq!(
            eigen_split(&rm(&[&[1, 1], &[0, 1]]), &lim).unwrap_err(),
            Error::RepeatedEigenvalues
        );
    }

    #[test]
    fn factor3_small_cases() {
        let mut s = FieldState::new();
        let cfg = FactorConfig::default();
        let id = factor3(&rm(&[&[1, 0], &[0, 1]]), &mut s, &cfg).unwrap();
        assert!(id.factors.is_empty());
        let diag = factor3(&rm(&[&[2, 0], &[0, 3]]), &mut s, &cfg).unwrap();
        assert_eq!(diag.factors.len(), 1);
        let u = factor3(&rm(&[&[1, 1], &[0, 1]]), &mut s, &cfg).unwrap();
        assert_eq!(u.factors.len(), 3);
        assert!(u.collapsible);
        check_factorization(&u, &s).unwrap();
        let rot = factor3(&rm(&[&[0, -1], &[1, 0]]), &mut s, &cfg).unwrap();
        check_factorization(&rot, &s).unwrap();
    }

    #[test]
    fn conj_split_with_witness_blocks() {
        let mut s = FieldState::new();
        let f = RationalFunctions;
        let a = class_witness(&lift_rational(&rm(&[&[2, 1], &[1, 1]])), &mut s).unwrap();
        let b = class_witness(&lift_rational(&rm(&[&[0, 1], &[-1, 3]])), &mut s).unwrap();
        let (c1, c2) = conj_split(&f, &a.t, &b.t, &s).unwrap();
        assert_eq!(c2, b.t.inv(&f).unwrap().mul(&f, &s.apply_matrix(&b.t).unwrap()).unwrap());
        let z = c1.mul(&f, &c2.inv(&f).unwrap()).unwrap();
        assert_eq!(z.n(), 2);
        // with y = I the first part is x φ(x)^{-1} and the second is I
        let (c1, c2) = conj_split(&f, &a.t, &Matrix::identity(&f, 2), &s).unwrap();
        assert!(c2.is_identity(&f));
        assert_eq!(c1, twisted_conjugate(&f, &a.t, &Matrix::identity(&f, 2), &s).unwrap());
    }
}
