//! Exact arithmetic in the algebraic closure of the rationals.
//!
//! A real algebraic number is its primitive irreducible minimal polynomial
//! together with the canonical isolating interval of the root (the interval
//! produced by [`isolate_real_roots`] on the minimal polynomial). Because the
//! isolation is deterministic, equal numbers have identical representations
//! and equality is structural. Rationals take a fast path and complex numbers
//! are pairs of real numbers with a lazily computed minimal polynomial.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::factor::{factor_squarefree, DEFAULT_FACTOR_CAP};
use crate::intpoly::IntPolynomial;
use crate::roots::{bisect, count_roots_closed, isolate_real_roots, sturm_sequence, RootInterval};

/// Degree caps. Exceeding a cap is an error, never an approximation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Maximum degree of an annihilating polynomial built by a resultant.
    pub arithmetic_degree: usize,
    /// Maximum degree accepted by the public factorization entry point.
    pub factor_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            arithmetic_degree: 64,
            factor_degree: DEFAULT_FACTOR_CAP,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BinaryOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug)]
pub struct RealAlgebraic {
    minpoly: IntPolynomial,
    interval: RootInterval,
    index: usize,
}

#[derive(Debug)]
pub struct ComplexAlgebraic {
    re: AlgebraicNumber,
    im: AlgebraicNumber,
    minpoly: OnceLock<IntPolynomial>,
}

#[derive(Clone)]
pub enum AlgebraicNumber {
    Rational(BigRational),
    Real(Arc<RealAlgebraic>),
    Complex(Arc<ComplexAlgebraic>),
}

/// A real root together with an isolating interval that is disjoint from the
/// intervals of the other roots returned alongside it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealRoot {
    pub value: AlgebraicNumber,
    pub interval: RootInterval,
}

fn two() -> BigRational {
    BigRational::from(BigInt::from(2))
}

fn point(r: &BigRational) -> RootInterval {
    RootInterval {
        lo: r.clone(),
        hi: r.clone(),
    }
}

// ---------- interval arithmetic on closed rational intervals ----------

fn iv_add(a: &RootInterval, b: &RootInterval) -> RootInterval {
    RootInterval {
        lo: &a.lo + &b.lo,
        hi: &a.hi + &b.hi,
    }
}

fn iv_sub(a: &RootInterval, b: &RootInterval) -> RootInterval {
    RootInterval {
        lo: &a.lo - &b.hi,
        hi: &a.hi - &b.lo,
    }
}

fn iv_mul(a: &RootInterval, b: &RootInterval) -> RootInterval {
    let c = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
    let lo = c.iter().min().expect("nonempty").clone();
    let hi = c.iter().max().expect("nonempty").clone();
    RootInterval { lo, hi }
}

fn iv_recip(a: &RootInterval) -> RootInterval {
    RootInterval {
        lo: a.hi.recip(),
        hi: a.lo.recip(),
    }
}

fn iv_contains_zero(a: &RootInterval) -> bool {
    !a.lo.is_positive() && !a.hi.is_negative()
}

/// A shrinking enclosure of a real algebraic number.
#[derive(Clone)]
struct Approx<'a> {
    poly: Option<&'a IntPolynomial>,
    iv: RootInterval,
}

impl<'a> Approx<'a> {
    fn of(a: &'a AlgebraicNumber) -> Self {
        match a {
            AlgebraicNumber::Rational(r) => Approx {
                poly: None,
                iv: point(r),
            },
            AlgebraicNumber::Real(x) => Approx {
                poly: Some(&x.minpoly),
                iv: x.interval.clone(),
            },
            AlgebraicNumber::Complex(_) => unreachable!("complex numbers have no real enclosure"),
        }
    }

    fn refine(&mut self) {
        if let Some(p) = self.poly {
            self.iv = bisect(p, &self.iv);
        }
    }

    fn refine_away_from_zero(&mut self) {
        while iv_contains_zero(&self.iv) {
            self.refine();
        }
    }

    fn refine_to(&mut self, width: &BigRational) {
        while &self.iv.width() > width {
            self.refine();
        }
    }
}

// ---------- constructors ----------

impl AlgebraicNumber {
    pub fn zero() -> Self {
        AlgebraicNumber::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        AlgebraicNumber::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        AlgebraicNumber::Rational(BigRational::from(BigInt::from(n)))
    }

    pub fn from_rational(r: BigRational) -> Self {
        AlgebraicNumber::Rational(r)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        let c = ComplexAlgebraic {
            re: Self::zero(),
            im: Self::one(),
            minpoly: OnceLock::new(),
        };
        let _ = c.minpoly.set(IntPolynomial::from_i64s(&[1, 0, 1]));
        AlgebraicNumber::Complex(Arc::new(c))
    }

    /// Non-negative square root of a non-negative rational.
    pub fn sqrt_rational(r: &BigRational) -> Result<Self> {
        if r.is_negative() {
            return Err(Error::InvalidInput("square root of a negative rational".into()));
        }
        let (n, d) = (r.numer(), r.denom());
        let (sn, sd) = (n.sqrt(), d.sqrt());
        if &(&sn * &sn) == n && &(&sd * &sd) == d {
            return Ok(AlgebraicNumber::Rational(BigRational::new(sn, sd)));
        }
        // root of d x^2 - n, the larger of the two
        let poly = IntPolynomial::new(vec![-n.clone(), BigInt::zero(), d.clone()]);
        let roots = isolate_real_roots(&poly);
        Ok(Self::canonical_real(&poly.primitive_part(), &roots[1]))
    }

    /// The unique root of `poly` in the closed interval `[lo, hi]`.
    pub fn real_root_in(poly: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Result<Self> {
        if poly.deg() == 0 || lo > hi {
            return Err(Error::NoRootInInterval);
        }
        let sq = poly.squarefree_part();
        let n = count_roots_closed(&sturm_sequence(&sq), lo, hi);
        match n {
            0 => return Err(Error::NoRootInInterval),
            1 => {}
            n => return Err(Error::AmbiguousInterval(n)),
        }
        let hint = RootInterval {
            lo: lo.clone(),
            hi: hi.clone(),
        };
        for f in factor_squarefree(&sq) {
            let seq = sturm_sequence(&f);
            if count_roots_closed(&seq, lo, hi) == 1 {
                return Ok(Self::canonical_real(&f, &hint));
            }
        }
        unreachable!("the root belongs to one irreducible factor")
    }

    /// Canonical representative of the root of the irreducible `f` inside `hint`.
    fn canonical_real(f: &IntPolynomial, hint: &RootInterval) -> Self {
        let f = f.primitive_part();
        if f.deg() == 1 {
            let r = BigRational::new(-f.coeff(0), f.coeff(1));
            return AlgebraicNumber::Rational(r);
        }
        let seq = sturm_sequence(&f);
        let canon = isolate_real_roots(&f);
        for (index, j) in canon.iter().enumerate() {
            let lo = std::cmp::max(&j.lo, &hint.lo);
            let hi = std::cmp::min(&j.hi, &hint.hi);
            if lo <= hi && count_roots_closed(&seq, lo, hi) > 0 {
                return AlgebraicNumber::Real(Arc::new(RealAlgebraic {
                    minpoly: f,
                    interval: j.clone(),
                    index,
                }));
            }
        }
        unreachable!("hint does not isolate a root of the factor")
    }

    /// Builds `re + i*im`, collapsing to a real number when `im = 0`.
    pub fn complex(re: AlgebraicNumber, im: AlgebraicNumber) -> Result<Self> {
        if !re.is_real() || !im.is_real() {
            return Err(Error::InvalidInput("complex parts must be real".into()));
        }
        if im.is_zero() {
            return Ok(re);
        }
        Ok(AlgebraicNumber::Complex(Arc::new(ComplexAlgebraic {
            re,
            im,
            minpoly: OnceLock::new(),
        })))
    }

    /// Complex number with a known minimal polynomial, which is trusted.
    fn complex_with_minpoly(re: AlgebraicNumber, im: AlgebraicNumber, minpoly: IntPolynomial) -> Self {
        let c = ComplexAlgebraic {
            re,
            im,
            minpoly: OnceLock::new(),
        };
        let _ = c.minpoly.set(minpoly);
        AlgebraicNumber::Complex(Arc::new(c))
    }
}

// ---------- queries ----------

impl AlgebraicNumber {
    pub fn is_zero(&self) -> bool {
        match self {
            AlgebraicNumber::Rational(r) => r.is_zero(),
            _ => false,
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, AlgebraicNumber::Rational(r) if r.is_one())
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, AlgebraicNumber::Rational(_))
    }

    pub fn is_real(&self) -> bool {
        !matches!(self, AlgebraicNumber::Complex(_))
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            AlgebraicNumber::Rational(r) => Some(r),
            _ => None,
        }
    }

    pub fn real_part(&self) -> AlgebraicNumber {
        match self {
            AlgebraicNumber::Complex(c) => c.re.clone(),
            other => other.clone(),
        }
    }

    pub fn imag_part(&self) -> AlgebraicNumber {
        match self {
            AlgebraicNumber::Complex(c) => c.im.clone(),
            _ => Self::zero(),
        }
    }

    /// Degree of the minimal polynomial, without computing it for complex numbers.
    pub fn degree_hint(&self) -> usize {
        match self {
            AlgebraicNumber::Rational(_) => 1,
            AlgebraicNumber::Real(x) => x.minpoly.deg(),
            AlgebraicNumber::Complex(c) => c.minpoly.get().map_or(0, |m| m.deg()),
        }
    }

    /// Canonical isolating interval of a real number (a point for rationals).
    pub fn interval(&self) -> Option<RootInterval> {
        match self {
            AlgebraicNumber::Rational(r) => Some(point(r)),
            AlgebraicNumber::Real(x) => Some(x.interval.clone()),
            AlgebraicNumber::Complex(_) => None,
        }
    }

    /// Enclosure of a real number of width at most `width`.
    pub fn enclosure(&self, width: &BigRational) -> Option<RootInterval> {
        if !self.is_real() {
            return None;
        }
        let mut a = Approx::of(self);
        a.refine_to(width);
        Some(a.iv)
    }

    pub fn minpoly(&self) -> Result<IntPolynomial> {
        self.minpoly_with(&Limits::default())
    }

    pub fn minpoly_with(&self, limits: &Limits) -> Result<IntPolynomial> {
        match self {
            AlgebraicNumber::Rational(r) => Ok(IntPolynomial::linear_root(r)),
            AlgebraicNumber::Real(x) => Ok(x.minpoly.clone()),
            AlgebraicNumber::Complex(c) => {
                if let Some(m) = c.minpoly.get() {
                    return Ok(m.clone());
                }
                let m = complex_minpoly(&c.re, &c.im, limits)?;
                Ok(c.minpoly.get_or_init(|| m).clone())
            }
        }
    }

    /// Sign of a real number.
    pub fn signum(&self) -> Result<Ordering> {
        match self {
            AlgebraicNumber::Rational(r) => Ok(r.cmp(&BigRational::zero())),
            AlgebraicNumber::Real(_) => {
                let mut a = Approx::of(self);
                a.refine_away_from_zero();
                Ok(if a.iv.lo.is_positive() {
                    Ordering::Greater
                } else {
                    Ordering::Less
                })
            }
            AlgebraicNumber::Complex(_) => Err(Error::InvalidInput("sign of a non-real number".into())),
        }
    }

    /// Total order on real numbers.
    pub fn cmp_real(&self, other: &Self) -> Result<Ordering> {
        if !self.is_real() || !other.is_real() {
            return Err(Error::InvalidInput("comparison of non-real numbers".into()));
        }
        if self == other {
            return Ok(Ordering::Equal);
        }
        let mut a = Approx::of(self);
        let mut b = Approx::of(other);
        loop {
            if a.iv.hi < b.iv.lo {
                return Ok(Ordering::Less);
            }
            if b.iv.hi < a.iv.lo {
                return Ok(Ordering::Greater);
            }
            a.refine();
            b.refine();
        }
    }

    /// Floating-point approximation `(re, im)` for display and diagnostics.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        fn real(a: &AlgebraicNumber) -> f64 {
            let w = BigRational::new(BigInt::one(), BigInt::from(1u64 << 40));
            let iv = a.enclosure(&w).expect("real");
            let m = iv.midpoint();
            num_traits::ToPrimitive::to_f64(&m).unwrap_or(f64::NAN)
        }
        match self {
            AlgebraicNumber::Complex(c) => (real(&c.re), real(&c.im)),
            other => (real(other), 0.0),
        }
    }
}

impl PartialEq for AlgebraicNumber {
    fn eq(&self, other: &Self) -> bool {
        use AlgebraicNumber::*;
        match (self, other) {
            (Rational(a), Rational(b)) => a == b,
            (Real(a), Real(b)) => {
                Arc::ptr_eq(a, b) || (a.minpoly == b.minpoly && a.interval == b.interval)
            }
            (Complex(a), Complex(b)) => Arc::ptr_eq(a, b) || (a.re == b.re && a.im == b.im),
            _ => false,
        }
    }
}

impl Eq for AlgebraicNumber {}

impl Hash for AlgebraicNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            AlgebraicNumber::Rational(r) => {
                0u8.hash(state);
                r.hash(state);
            }
            AlgebraicNumber::Real(x) => {
                1u8.hash(state);
                x.minpoly.hash(state);
                x.interval.hash(state);
            }
            AlgebraicNumber::Complex(c) => {
                2u8.hash(state);
                c.re.hash(state);
                c.im.hash(state);
            }
        }
    }
}

// ---------- arithmetic ----------

impl AlgebraicNumber {
    pub fn add(&self, other: &Self) -> Result<Self> {
        Self::binary(BinaryOp::Add, self, other, &Limits::default())
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        Self::binary(BinaryOp::Sub, self, other, &Limits::default())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::binary(BinaryOp::Mul, self, other, &Limits::default())
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Self::binary(BinaryOp::Div, self, other, &Limits::default())
    }

    pub fn inv(&self) -> Result<Self> {
        Self::binary(BinaryOp::Div, &Self::one(), self, &Limits::default())
    }

    pub fn neg(&self) -> Self {
        match self {
            AlgebraicNumber::Rational(r) => AlgebraicNumber::Rational(-r),
            AlgebraicNumber::Real(x) => {
                let p = x.minpoly.compose_linear(&BigInt::from(-1), &BigInt::zero(), &BigInt::one());
                let hint = RootInterval {
                    lo: -&x.interval.hi,
                    hi: -&x.interval.lo,
                };
                Self::canonical_real(&p, &hint)
            }
            AlgebraicNumber::Complex(c) => {
                let re = c.re.neg();
                let im = c.im.neg();
                match c.minpoly.get() {
                    Some(m) => {
                        let p = m
                            .compose_linear(&BigInt::from(-1), &BigInt::zero(), &BigInt::one())
                            .primitive_part();
                        Self::complex_with_minpoly(re, im, p)
                    }
                    None => Self::complex(re, im).expect("parts are real"),
                }
            }
        }
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Exact field operation.
    pub fn binary(op: BinaryOp, a: &Self, b: &Self, limits: &Limits) -> Result<Self> {
        if op == BinaryOp::Div && b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if a.is_real() && b.is_real() {
            return real_binary(op, a, b, limits);
        }
        let (ar, ai) = (a.real_part(), a.imag_part());
        let (br, bi) = (b.real_part(), b.imag_part());
        let r = |op, x: &Self, y: &Self| real_binary(op, x, y, limits);
        use BinaryOp::*;
        match op {
            Add | Sub => {
                let re = r(op, &ar, &br)?;
                let im = r(op, &ai, &bi)?;
                Self::complex(re, im)
            }
            Mul => {
                // (ar + i ai)(br + i bi)
                let re = r(Sub, &r(Mul, &ar, &br)?, &r(Mul, &ai, &bi)?)?;
                let im = r(Add, &r(Mul, &ar, &bi)?, &r(Mul, &ai, &br)?)?;
                Self::complex(re, im)
            }
            Div => {
                if a == b {
                    return Ok(Self::one());
                }
                let norm = r(Add, &r(Mul, &br, &br)?, &r(Mul, &bi, &bi)?)?;
                let re_num = r(Add, &r(Mul, &ar, &br)?, &r(Mul, &ai, &bi)?)?;
                let im_num = r(Sub, &r(Mul, &ai, &br)?, &r(Mul, &ar, &bi)?)?;
                Self::complex(r(Div, &re_num, &norm)?, r(Div, &im_num, &norm)?)
            }
        }
    }
}

fn real_binary(op: BinaryOp, a: &AlgebraicNumber, b: &AlgebraicNumber, limits: &Limits) -> Result<AlgebraicNumber> {
    use AlgebraicNumber::{Rational, Real};
    use BinaryOp::*;
    match (a, b) {
        (Rational(x), Rational(y)) => Ok(Rational(match op {
            Add => x + y,
            Sub => x - y,
            Mul => x * y,
            Div => x / y,
        })),
        (Real(_), Rational(y)) => match op {
            Add => Ok(shift(a, y)),
            Sub => Ok(shift(a, &-y)),
            Mul => Ok(scale(a, y)),
            Div => Ok(scale(a, &y.recip())),
        },
        (Rational(x), Real(_)) => match op {
            Add => Ok(shift(b, x)),
            Sub => Ok(shift(&b.neg(), x)),
            Mul => Ok(scale(b, x)),
            Div => Ok(scale(&reciprocal(b), x)),
        },
        (Real(ra), Real(rb)) => {
            if Arc::ptr_eq(ra, rb) || a == b {
                match op {
                    Sub => return Ok(AlgebraicNumber::zero()),
                    Div => return Ok(AlgebraicNumber::one()),
                    Add => return Ok(scale(a, &two())),
                    Mul => {}
                }
            }
            if let (Some(qa), Some(qb)) = (QuadForm::of(ra), QuadForm::of(rb)) {
                if let Some(res) = qa.combine(op, &qb) {
                    return Ok(res);
                }
            }
            resultant_binary(op, a, b, ra, rb, limits)
        }
        _ => unreachable!("complex operands are split into real parts"),
    }
}

/// `a + r` for a real irrational `a`.
fn shift(a: &AlgebraicNumber, r: &BigRational) -> AlgebraicNumber {
    if r.is_zero() {
        return a.clone();
    }
    let AlgebraicNumber::Real(x) = a else {
        unreachable!()
    };
    let (n, d) = (r.numer(), r.denom());
    let p = x.minpoly.compose_linear(d, &-n, d);
    let hint = RootInterval {
        lo: &x.interval.lo + r,
        hi: &x.interval.hi + r,
    };
    AlgebraicNumber::canonical_real(&p, &hint)
}

/// `a * r` for a real irrational `a`.
fn scale(a: &AlgebraicNumber, r: &BigRational) -> AlgebraicNumber {
    if r.is_zero() {
        return AlgebraicNumber::zero();
    }
    if r.is_one() {
        return a.clone();
    }
    let AlgebraicNumber::Real(x) = a else {
        unreachable!()
    };
    let (n, d) = (r.numer(), r.denom());
    // root of p(x / r) = p(d x / n)
    let p = if n.is_positive() {
        x.minpoly.compose_linear(d, &BigInt::zero(), n)
    } else {
        x.minpoly.compose_linear(&-d, &BigInt::zero(), &-n)
    };
    let (lo, hi) = (&x.interval.lo * r, &x.interval.hi * r);
    let hint = if r.is_positive() {
        RootInterval { lo, hi }
    } else {
        RootInterval { lo: hi, hi: lo }
    };
    AlgebraicNumber::canonical_real(&p, &hint)
}

fn reciprocal(a: &AlgebraicNumber) -> AlgebraicNumber {
    let AlgebraicNumber::Real(x) = a else {
        unreachable!()
    };
    let mut ap = Approx::of(a);
    ap.refine_away_from_zero();
    let p = x.minpoly.reverse().primitive_part();
    AlgebraicNumber::canonical_real(&p, &iv_recip(&ap.iv))
}

/// A quadratic irrational `u + v * sqrt(disc)`.
struct QuadForm {
    u: BigRational,
    v: BigRational,
    disc: BigInt,
}

impl QuadForm {
    fn of(x: &RealAlgebraic) -> Option<QuadForm> {
        if x.minpoly.deg() != 2 {
            return None;
        }
        let (c, b, a) = (x.minpoly.coeff(0), x.minpoly.coeff(1), x.minpoly.coeff(2));
        let disc = &b * &b - BigInt::from(4) * &a * &c;
        let two_a = BigRational::from(BigInt::from(2) * &a);
        let u = BigRational::from(-b) / &two_a;
        let v = two_a.recip();
        // index 0 is the smaller root (−b − √disc)/(2a) since a > 0
        let v = if x.index == 0 { -v } else { v };
        Some(QuadForm { u, v, disc })
    }

    fn combine(&self, op: BinaryOp, other: &QuadForm) -> Option<AlgebraicNumber> {
        let prod = &self.disc * &other.disc;
        let k = prod.sqrt();
        if &k * &k != prod {
            return None;
        }
        let d = BigRational::from(self.disc.clone());
        // sqrt(other.disc) = k / disc * sqrt(disc)
        let (u2, v2) = (other.u.clone(), &other.v * BigRational::from(k) / &d);
        let (u1, v1) = (&self.u, &self.v);
        let (u, v) = match op {
            BinaryOp::Add => (u1 + &u2, v1 + &v2),
            BinaryOp::Sub => (u1 - &u2, v1 - &v2),
            BinaryOp::Mul => (u1 * &u2 + v1 * &v2 * &d, u1 * &v2 + &u2 * v1),
            BinaryOp::Div => {
                let norm = &u2 * &u2 - &v2 * &v2 * &d;
                (
                    (u1 * &u2 - v1 * &v2 * &d) / &norm,
                    (v1 * &u2 - u1 * &v2) / &norm,
                )
            }
        };
        Some(Self::realize(u, v, &self.disc))
    }

    fn realize(u: BigRational, v: BigRational, disc: &BigInt) -> AlgebraicNumber {
        if v.is_zero() {
            return AlgebraicNumber::Rational(u);
        }
        // (x - u)^2 - v^2 disc
        let c0 = &u * &u - &v * &v * BigRational::from(disc.clone());
        let c1 = -(&u * two());
        let den = c0.denom() * c1.denom() / num_integer::Integer::gcd(c0.denom(), c1.denom());
        let scalef = BigRational::from(den.clone());
        let poly = IntPolynomial::new(vec![
            (c0 * &scalef).to_integer(),
            (c1 * &scalef).to_integer(),
            den,
        ])
        .primitive_part();
        let roots = isolate_real_roots(&poly);
        let index = if v.is_positive() { 1 } else { 0 };
        AlgebraicNumber::Real(Arc::new(RealAlgebraic {
            minpoly: poly,
            interval: roots[index].clone(),
            index,
        }))
    }
}

/// `Res_y(p(y), q_x(y))` as a polynomial in `x`, by evaluation at `0..=degree`
/// and exact interpolation.
fn bivariate_resultant(
    p: &IntPolynomial,
    q_at: impl Fn(&BigInt) -> IntPolynomial,
    degree: usize,
) -> IntPolynomial {
    let xs: Vec<BigInt> = (0..=degree as i64).map(BigInt::from).collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| BigRational::from(crate::intpoly::resultant(p, &q_at(x))))
        .collect();
    // Newton divided differences
    let n = xs.len();
    let mut coef = ys.clone();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = &coef[i] - &coef[i - 1];
            let den = BigRational::from(&xs[i] - &xs[i - j]);
            coef[i] = num / den;
        }
    }
    // expand: c0 + c1 (x - x0) + c2 (x - x0)(x - x1) + ...
    let mut acc: Vec<BigRational> = vec![coef[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // acc = acc * (x - xs[i]) + coef[i]
        let mut next = vec![BigRational::zero(); acc.len() + 1];
        let xi = BigRational::from(xs[i].clone());
        for (k, c) in acc.iter().enumerate() {
            next[k + 1] += c.clone();
            next[k] -= c * &xi;
        }
        next[0] += coef[i].clone();
        acc = next;
    }
    IntPolynomial::new(
        acc.into_iter()
            .map(|c| {
                debug_assert!(c.is_integer());
                c.to_integer()
            })
            .collect(),
    )
}

fn resultant_binary(
    op: BinaryOp,
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    ra: &RealAlgebraic,
    rb: &RealAlgebraic,
    limits: &Limits,
) -> Result<AlgebraicNumber> {
    let (pa, pb) = (&ra.minpoly, &rb.minpoly);
    let degree = pa.deg() * pb.deg();
    if degree > limits.arithmetic_degree {
        return Err(Error::DegreeCapExceeded {
            degree,
            cap: limits.arithmetic_degree,
        });
    }
    let one = BigInt::one();
    let minus = BigInt::from(-1);
    let zero = BigInt::zero();
    let annihilator = match op {
        BinaryOp::Add => bivariate_resultant(pa, |x| pb.compose_linear(&minus, x, &one), degree),
        BinaryOp::Sub => bivariate_resultant(pa, |x| pb.compose_linear(&one, &-x, &one), degree),
        BinaryOp::Mul | BinaryOp::Div => {
            let q = if op == BinaryOp::Mul {
                pb.clone()
            } else {
                pb.reverse()
            };
            let m = q.deg();
            bivariate_resultant(
                pa,
                |x| {
                    // sum q_i x^i y^(m-i)
                    let mut c = vec![zero.clone(); m + 1];
                    let mut xp = BigInt::one();
                    for i in 0..=m {
                        c[m - i] = q.coeff(i) * &xp;
                        xp *= x;
                    }
                    IntPolynomial::new(c)
                },
                degree,
            )
        }
    };
    let factors = factor_squarefree(&annihilator.squarefree_part());
    select_root(op, a, b, &factors)
}

struct Candidate<'a> {
    factor: &'a IntPolynomial,
    canonical: RootInterval,
    current: RootInterval,
}

fn select_root(
    op: BinaryOp,
    a: &AlgebraicNumber,
    b: &AlgebraicNumber,
    factors: &[IntPolynomial],
) -> Result<AlgebraicNumber> {
    let mut cands: Vec<Candidate> = Vec::new();
    for f in factors {
        for iv in isolate_real_roots(f) {
            cands.push(Candidate {
                factor: f,
                canonical: iv.clone(),
                current: iv,
            });
        }
    }
    let mut xa = Approx::of(a);
    let mut xb = Approx::of(b);
    if op == BinaryOp::Div {
        xb.refine_away_from_zero();
    }
    loop {
        let enclosure = match op {
            BinaryOp::Add => iv_add(&xa.iv, &xb.iv),
            BinaryOp::Sub => iv_sub(&xa.iv, &xb.iv),
            BinaryOp::Mul => iv_mul(&xa.iv, &xb.iv),
            BinaryOp::Div => iv_mul(&xa.iv, &iv_recip(&xb.iv)),
        };
        let active: Vec<usize> = (0..cands.len())
            .filter(|&i| cands[i].current.overlaps(&enclosure))
            .collect();
        if active.len() == 1 {
            let c = &cands[active[0]];
            return Ok(realize_candidate(c.factor, &c.canonical));
        }
        assert!(!active.is_empty(), "true value escaped every candidate enclosure");
        xa.refine();
        xb.refine();
        for i in active {
            let c = &mut cands[i];
            c.current = bisect(c.factor, &c.current);
        }
    }
}

fn realize_candidate(f: &IntPolynomial, canonical: &RootInterval) -> AlgebraicNumber {
    if f.deg() == 1 {
        return AlgebraicNumber::Rational(BigRational::new(-f.coeff(0), f.coeff(1)));
    }
    let index = isolate_real_roots(f)
        .iter()
        .position(|j| j == canonical)
        .expect("canonical interval");
    AlgebraicNumber::Real(Arc::new(RealAlgebraic {
        minpoly: f.clone(),
        interval: canonical.clone(),
        index,
    }))
}

// ---------- complex minimal polynomials ----------

/// Closed complex box `re + i im` with rational interval components.
#[derive(Clone)]
struct CBox {
    re: RootInterval,
    im: RootInterval,
}

impl CBox {
    fn mul(&self, o: &CBox) -> CBox {
        CBox {
            re: iv_sub(&iv_mul(&self.re, &o.re), &iv_mul(&self.im, &o.im)),
            im: iv_add(&iv_mul(&self.re, &o.im), &iv_mul(&self.im, &o.re)),
        }
    }

    fn excludes_zero(&self) -> bool {
        !iv_contains_zero(&self.re) || !iv_contains_zero(&self.im)
    }
}

fn eval_box(f: &IntPolynomial, z: &CBox) -> CBox {
    let zero = point(&BigRational::zero());
    let mut acc = CBox {
        re: zero.clone(),
        im: zero,
    };
    for c in f.coeffs().iter().rev() {
        acc = acc.mul(z);
        let c = BigRational::from(c.clone());
        acc.re = RootInterval {
            lo: &acc.re.lo + &c,
            hi: &acc.re.hi + &c,
        };
    }
    acc
}

fn complex_minpoly(re: &AlgebraicNumber, im: &AlgebraicNumber, limits: &Limits) -> Result<IntPolynomial> {
    let im2 = real_binary(BinaryOp::Mul, im, im, limits)?;
    let m2 = im2.minpoly()?;
    // w = i*im satisfies m2(-w^2) = 0
    let mut wc = vec![BigInt::zero(); 2 * m2.deg() + 1];
    for (j, c) in m2.coeffs().iter().enumerate() {
        wc[2 * j] = if j % 2 == 1 { -c } else { c.clone() };
    }
    let pw = IntPolynomial::new(wc);
    let annihilator = match re {
        AlgebraicNumber::Rational(r) => pw.compose_linear(r.denom(), &-r.numer(), r.denom()),
        AlgebraicNumber::Real(x) => {
            let degree = x.minpoly.deg() * pw.deg();
            if degree > limits.arithmetic_degree {
                return Err(Error::DegreeCapExceeded {
                    degree,
                    cap: limits.arithmetic_degree,
                });
            }
            let one = BigInt::one();
            let minus = BigInt::from(-1);
            bivariate_resultant(&x.minpoly, |v| pw.compose_linear(&minus, v, &one), degree)
        }
        AlgebraicNumber::Complex(_) => unreachable!("real part is real"),
    };
    let mut factors: Vec<IntPolynomial> = factor_squarefree(&annihilator.squarefree_part())
        .into_iter()
        .filter(|f| f.deg() >= 2)
        .collect();
    let mut are = Approx::of(re);
    let mut aim = Approx::of(im);
    loop {
        if factors.len() == 1 {
            return Ok(factors.pop().expect("one factor"));
        }
        let z = CBox {
            re: are.iv.clone(),
            im: aim.iv.clone(),
        };
        let keep: Vec<IntPolynomial> = factors
            .iter()
            .filter(|f| !eval_box(f, &z).excludes_zero())
            .cloned()
            .collect();
        assert!(!keep.is_empty(), "complex value escaped every factor");
        factors = keep;
        are.refine();
        aim.refine();
        // rationals do not refine; widen nothing, boxes still shrink via the other part
        if are.poly.is_none() && aim.poly.is_none() && factors.len() > 1 {
            unreachable!("distinct irreducible factors cannot share a root");
        }
    }
}

// ---------- special constructors ----------

/// All distinct real roots of `p`, ascending, with pairwise disjoint intervals.
pub fn real_roots(p: &IntPolynomial) -> Vec<RealRoot> {
    if p.is_zero() {
        return Vec::new();
    }
    let sq = p.squarefree_part();
    let isolated = isolate_real_roots(&sq);
    if isolated.is_empty() {
        return Vec::new();
    }
    let factors: Vec<(IntPolynomial, Vec<IntPolynomial>)> = factor_squarefree(&sq)
        .into_iter()
        .map(|f| {
            let seq = sturm_sequence(&f);
            (f, seq)
        })
        .collect();
    isolated
        .into_iter()
        .map(|iv| {
            let value = if iv.is_exact() {
                AlgebraicNumber::Rational(iv.lo.clone())
            } else {
                let (f, _) = factors
                    .iter()
                    .find(|(_, seq)| count_roots_closed(seq, &iv.lo, &iv.hi) == 1)
                    .expect("some factor owns the root");
                AlgebraicNumber::canonical_real(f, &iv)
            };
            RealRoot { value, interval: iv }
        })
        .collect()
}

/// The two non-real roots of a quadratic with negative discriminant,
/// positive imaginary part first.
pub fn quad_complex_roots(p: &IntPolynomial) -> Result<(AlgebraicNumber, AlgebraicNumber)> {
    if p.degree() != Some(2) {
        return Err(Error::InvalidInput("expected a quadratic".into()));
    }
    let (c, b, a) = (p.coeff(0), p.coeff(1), p.coeff(2));
    let disc = &b * &b - BigInt::from(4) * &a * &c;
    if !disc.is_negative() {
        return Err(Error::NotNegativeDiscriminant);
    }
    let two_a = BigRational::from(BigInt::from(2) * &a);
    let re = AlgebraicNumber::Rational(BigRational::from(-b) / &two_a);
    let root = AlgebraicNumber::sqrt_rational(&BigRational::from(-disc))?;
    let im = root.div(&AlgebraicNumber::Rational(two_a))?;
    let minpoly = p.primitive_part();
    let (pos, neg) = if im.signum()? == Ordering::Greater {
        (im.clone(), im.neg())
    } else {
        (im.neg(), im)
    };
    Ok((
        AlgebraicNumber::complex_with_minpoly(re.clone(), pos, minpoly.clone()),
        AlgebraicNumber::complex_with_minpoly(re, neg, minpoly),
    ))
}

// ---------- textual form ----------

fn fmt_rational(r: &BigRational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

/// `p/q`, `alg(<poly>, lo, hi)` or `algc(<poly>, re=<real>, im=<real>)`.
impl fmt::Display for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicNumber::Rational(r) => fmt_rational(r, f),
            AlgebraicNumber::Real(x) => {
                write!(f, "alg({}, ", x.minpoly)?;
                fmt_rational(&x.interval.lo, f)?;
                write!(f, ", ")?;
                fmt_rational(&x.interval.hi, f)?;
                write!(f, ")")
            }
            AlgebraicNumber::Complex(c) => {
                let m = self.minpoly().map_err(|_| fmt::Error)?;
                write!(f, "algc({}, re={}, im={})", m, c.re, c.im)
            }
        }
    }
}

impl fmt::Debug for AlgebraicNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraicNumber::Rational(r) => fmt_rational(r, f),
            AlgebraicNumber::Real(x) => write!(f, "alg({}, {}, {})", x.minpoly, x.interval.lo, x.interval.hi),
            AlgebraicNumber::Complex(c) => write!(f, "({:?} + i*{:?})", c.re, c.im),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor_rational;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    fn sqrt(n: i64) -> AlgebraicNumber {
        AlgebraicNumber::sqrt_rational(&q(n, 1)).unwrap()
    }

    fn within(a: &AlgebraicNumber, lo: BigRational, hi: BigRational) -> bool {
        let iv = a.enclosure(&q(1, 1000)).unwrap();
        iv.lo > lo && iv.hi < hi
    }

    #[test]
    fn sqrt2_plus_sqrt2() {
        // Res_y(y^2 - 2, (x - y)^2 - 2) = x^2 (x^2 - 8); the selected factor is x^2 - 8
        let s2 = sqrt(2);
        let sum = s2.add(&s2).unwrap();
        assert_eq!(sum.minpoly().unwrap(), p(&[-8, 0, 1]));
        assert!(within(&sum, q(28, 10), q(29, 10)));
    }

    #[test]
    fn sqrt2_times_sqrt3() {
        let prod = sqrt(2).mul(&sqrt(3)).unwrap();
        assert_eq!(prod.minpoly().unwrap(), p(&[-6, 0, 1]));
        assert!(within(&prod, q(24, 10), q(25, 10)));
    }

    #[test]
    fn sqrt2_plus_sqrt3_minpoly() {
        let s = sqrt(2).add(&sqrt(3)).unwrap();
        let m = s.minpoly().unwrap();
        assert_eq!(m, p(&[1, 0, -10, 0, 1]));
        assert_eq!(factor_rational(&m, 8).unwrap().len(), 1);
        // the number is a root: s^4 - 10 s^2 + 1 == 0
        let s2 = s.mul(&s).unwrap();
        let s4 = s2.mul(&s2).unwrap();
        let v = s4
            .sub(&s2.mul(&AlgebraicNumber::from_int(10)).unwrap())
            .unwrap()
            .add(&AlgebraicNumber::one())
            .unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn zero_tests() {
        let s2 = sqrt(2);
        let sq = s2.mul(&s2).unwrap();
        assert!(sq.sub(&AlgebraicNumber::from_int(2)).unwrap().is_zero());
        assert!(!s2.is_zero());
        assert!(AlgebraicNumber::zero().is_zero());
        let a = sqrt(2).add(&sqrt(3)).unwrap();
        assert!(a.sub(&a).unwrap().is_zero());
    }

    #[test]
    fn resultant_path_without_quadratic_shortcut() {
        let c = AlgebraicNumber::real_root_in(&p(&[-2, 0, 0, 1]), &q(1, 1), &q(2, 1)).unwrap();
        let c2 = c.mul(&c).unwrap();
        let c3 = c2.mul(&c).unwrap();
        assert_eq!(c3, AlgebraicNumber::from_int(2));
        assert_eq!(c2.minpoly().unwrap(), p(&[-4, 0, 0, 1]));
        let inv = c.inv().unwrap();
        assert!(inv.mul(&c).unwrap().is_one());
    }

    #[test]
    fn degree_cap() {
        let c = AlgebraicNumber::real_root_in(&p(&[-2, 0, 0, 1]), &q(1, 1), &q(2, 1)).unwrap();
        let limits = Limits {
            arithmetic_degree: 4,
            factor_degree: 8,
        };
        assert!(matches!(
            AlgebraicNumber::binary(BinaryOp::Add, &c, &sqrt(5), &limits),
            Err(Error::DegreeCapExceeded { degree: 6, cap: 4 })
        ));
    }

    #[test]
    fn division_by_zero() {
        assert_eq!(sqrt(2).div(&AlgebraicNumber::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn real_roots_examples() {
        let r = real_roots(&p(&[-2, 0, 1]));
        assert_eq!(r.len(), 2);
        assert_eq!(r[1].value, sqrt(2));
        assert_eq!(r[0].value, sqrt(2).neg());
        let r3 = real_roots(&p(&[0, -1, 0, 1]));
        let vals: Vec<_> = r3.iter().map(|x| x.value.clone()).collect();
        assert_eq!(
            vals,
            vec![AlgebraicNumber::from_int(-1), AlgebraicNumber::zero(), AlgebraicNumber::one()]
        );
        let cube = real_roots(&p(&[-2, 0, 0, 1]));
        assert_eq!(cube.len(), 1);
        assert!(within(&cube[0].value, q(12, 10), q(13, 10)));
    }

    #[test]
    fn complex_quadratics() {
        let (a, b) = quad_complex_roots(&p(&[1, 0, 1])).unwrap();
        assert_eq!(a.real_part(), AlgebraicNumber::zero());
        assert_eq!(a.imag_part(), AlgebraicNumber::one());
        assert_eq!(b.imag_part(), AlgebraicNumber::from_int(-1));
        let (c, _) = quad_complex_roots(&p(&[5, -2, 1])).unwrap();
        assert_eq!(c.real_part(), AlgebraicNumber::one());
        assert_eq!(c.imag_part(), AlgebraicNumber::from_int(2));
        assert_eq!(quad_complex_roots(&p(&[-2, 0, 1])).unwrap_err(), Error::NotNegativeDiscriminant);
        // i * i = -1
        let i = AlgebraicNumber::i();
        assert_eq!(i.mul(&i).unwrap(), AlgebraicNumber::from_int(-1));
    }

    #[test]
    fn complex_minpoly_is_computed_and_vanishes() {
        let z = AlgebraicNumber::complex(sqrt(2), sqrt(3)).unwrap();
        let m = z.minpoly().unwrap();
        // (x - √2)^2 + 3 = x^2 - 2√2 x + 5; times conjugate: (x^2 + 5)^2 - 8x^2
        assert_eq!(m, p(&[25, 0, 2, 0, 1]));
        // exact evaluation m(z) = 0
        let mut acc = AlgebraicNumber::zero();
        for c in m.coeffs().iter().rev() {
            acc = acc
                .mul(&z)
                .unwrap()
                .add(&AlgebraicNumber::from_rational(BigRational::from(c.clone())))
                .unwrap();
        }
        assert!(acc.is_zero());
        let half_i = AlgebraicNumber::complex(q(1, 2).into_alg(), q(1, 3).into_alg()).unwrap();
        assert_eq!(half_i.minpoly().unwrap(), p(&[13, -36, 36]));
    }

    trait IntoAlg {
        fn into_alg(self) -> AlgebraicNumber;
    }
    impl IntoAlg for BigRational {
        fn into_alg(self) -> AlgebraicNumber {
            AlgebraicNumber::from_rational(self)
        }
    }

    #[test]
    fn ordering_and_sign() {
        let a = sqrt(2);
        let b = AlgebraicNumber::from_rational(q(141, 100));
        assert_eq!(a.cmp_real(&b).unwrap(), Ordering::Greater);
        assert_eq!(a.neg().signum().unwrap(), Ordering::Less);
    }

    #[test]
    fn display_forms() {
        assert_eq!(AlgebraicNumber::from_rational(q(-3, 2)).to_string(), "-3/2");
        let s = sqrt(2).to_string();
        assert!(s.starts_with("alg(x^2-2, "), "{s}");
        assert_eq!(AlgebraicNumber::i().to_string(), "algc(x^2+1, re=0, im=1)");
    }
}
