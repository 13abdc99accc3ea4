//! Sparse multivariate polynomials with algebraic-number coefficients.
//!
//! Variables are flattened generator indices. Monomials are ordered
//! graded-lexicographically: total degree first, then exponents compared
//! variable by variable with lower indices dominant.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use smallvec::SmallVec;

use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial(SmallVec<[(u32, u32); 4]>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(SmallVec::new())
    }

    pub fn var(v: u32) -> Self {
        Monomial(smallvec::smallvec![(v, 1)])
    }

    /// Builds a monomial from `(variable, exponent)` pairs in any order.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (u32, u32)>) -> Self {
        let mut map = BTreeMap::new();
        for (v, e) in pairs {
            *map.entry(v).or_insert(0) += e;
        }
        Monomial(map.into_iter().filter(|&(_, e)| e > 0).collect())
    }

    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&(_, e)| e).sum()
    }

    pub fn exp(&self, v: u32) -> u32 {
        match self.0.binary_search_by_key(&v, |&(w, _)| w) {
            Ok(i) => self.0[i].1,
            Err(_) => 0,
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.0.last().map(|&(v, _)| v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = SmallVec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < other.0.len() {
            match (self.0.get(i), other.0.get(j)) {
                (Some(&(a, ea)), Some(&(b, eb))) if a == b => {
                    out.push((a, ea + eb));
                    i += 1;
                    j += 1;
                }
                (Some(&(a, ea)), Some(&(b, _))) if a < b => {
                    out.push((a, ea));
                    i += 1;
                }
                (Some(&(a, ea)), None) => {
                    out.push((a, ea));
                    i += 1;
                }
                (_, Some(&(b, eb))) => {
                    out.push((b, eb));
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = SmallVec::new();
        let mut j = 0;
        for &(v, e) in &self.0 {
            let mut d = 0;
            if let Some(&(w, f)) = other.0.get(j) {
                if w < v {
                    return None;
                }
                if w == v {
                    d = f;
                    j += 1;
                }
            }
            if d > e {
                return None;
            }
            if e > d {
                out.push((v, e - d));
            }
        }
        if j < other.0.len() {
            return None;
        }
        Some(Monomial(out))
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|&(v, e)| {
                    let f = other.exp(v);
                    (f > 0).then_some((v, e.min(f)))
                })
                .collect(),
        )
    }

    /// Splits off variable `v`: returns the rest and the exponent of `v`.
    pub fn split(&self, v: u32) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|&&(w, f)| {
                if w == v {
                    e = f;
                    false
                } else {
                    true
                }
            })
            .copied()
            .collect();
        (Monomial(rest), e)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.degree().cmp(&other.degree());
        if d != Ordering::Equal {
            return d;
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(a, ea)), Some(&(b, eb))) => {
                    if a < b {
                        return Ordering::Greater;
                    }
                    if b < a {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|&(v, e)| if e == 1 { format!("g{v}") } else { format!("g{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// A polynomial as a map from monomials to nonzero coefficients.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    terms: BTreeMap<Monomial, AlgebraicNumber>,
}

impl MultiPoly {
    pub fn zero() -> Self {
        MultiPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(AlgebraicNumber::one())
    }

    pub fn constant(c: AlgebraicNumber) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: u32) -> Self {
        Self::term(Monomial::var(v), AlgebraicNumber::one())
    }

    pub fn term(m: Monomial, c: AlgebraicNumber) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, AlgebraicNumber)>) -> Result<Self> {
        let mut p = MultiPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: AlgebraicNumber) -> Result<()> {
        if c.is_zero() {
            return Ok(());
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c)?;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
        Ok(())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &AlgebraicNumber)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.is_one())
    }

    /// The value of a constant polynomial.
    pub fn constant_value(&self) -> Option<AlgebraicNumber> {
        if self.terms.is_empty() {
            return Some(AlgebraicNumber::zero());
        }
        if self.terms.len() == 1 {
            return self.terms.get(&Monomial::one()).cloned();
        }
        None
    }

    /// Leading term in graded-lex order.
    pub fn leading(&self) -> Option<(&Monomial, &AlgebraicNumber)> {
        self.terms.iter().next_back()
    }

    pub fn max_var(&self) -> Option<u32> {
        self.terms.keys().filter_map(|m| m.max_var()).max()
    }

    pub fn vars(&self) -> Vec<u32> {
        let mut vs: Vec<u32> = self.terms.keys().flat_map(|m| m.pairs().iter().map(|&(v, _)| v)).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn degree_in(&self, v: u32) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let (big, small) = if self.len() >= other.len() { (self, other) } else { (other, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone())?;
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg())?;
        }
        Ok(out)
    }

    pub fn scale(&self, c: &AlgebraicNumber) -> Result<Self> {
        if c.is_zero() {
            return Ok(MultiPoly::zero());
        }
        if c.is_one() {
            return Ok(self.clone());
        }
        let mut terms = BTreeMap::new();
        for (m, d) in &self.terms {
            terms.insert(m.clone(), d.mul(c)?);
        }
        Ok(MultiPoly { terms })
    }

    pub fn mul_term(&self, m: &Monomial, c: &AlgebraicNumber) -> Result<Self> {
        if c.is_zero() {
            return Ok(MultiPoly::zero());
        }
        let mut terms = BTreeMap::new();
        for (n, d) in &self.terms {
            terms.insert(n.mul(m), if c.is_one() { d.clone() } else { d.mul(c)? });
        }
        Ok(MultiPoly { terms })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.is_zero() || other.is_zero() {
            return Ok(MultiPoly::zero());
        }
        if let Some(c) = self.constant_value() {
            return other.scale(&c);
        }
        if let Some(c) = other.constant_value() {
            return self.scale(&c);
        }
        let mut out = MultiPoly::zero();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                out.add_term(m.mul(n), c.mul(d)?)?;
            }
        }
        Ok(out)
    }

    pub fn pow(&self, e: u32) -> Result<Self> {
        let mut acc = MultiPoly::one();
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Result<Option<Self>> {
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(c) = d.constant_value() {
            return Ok(Some(self.scale(&c.inv()?)?));
        }
        let (lm, lc) = d.leading().expect("nonzero");
        let (lm, lc_inv) = (lm.clone(), lc.inv()?);
        let mut r = self.clone();
        let mut q = MultiPoly::zero();
        while let Some((m, c)) = r.leading() {
            let Some(t) = m.div(&lm) else {
                return Ok(None);
            };
            let coef = c.mul(&lc_inv)?;
            r = r.sub(&d.mul_term(&t, &coef)?)?;
            q.add_term(t, coef)?;
        }
        Ok(Some(q))
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Result<Self> {
        match self.leading() {
            None => Ok(MultiPoly::zero()),
            Some((_, c)) if c.is_one() => Ok(self.clone()),
            Some((_, c)) => self.scale(&c.inv()?),
        }
    }

    /// Coefficients of `self` viewed as a polynomial in `v`, lowest power first.
    pub fn to_univariate(&self, v: u32) -> Vec<MultiPoly> {
        let mut out = vec![MultiPoly::zero(); self.degree_in(v) as usize + 1];
        for (m, c) in &self.terms {
            let (rest, e) = m.split(v);
            out[e as usize].terms.insert(rest, c.clone());
        }
        out
    }

    pub fn from_univariate(v: u32, coeffs: &[MultiPoly]) -> Result<Self> {
        let mut out = MultiPoly::zero();
        for (e, c) in coeffs.iter().enumerate() {
            let shift = Monomial::from_pairs([(v, e as u32)]);
            for (m, a) in &c.terms {
                out.add_term(m.mul(&shift), a.clone())?;
            }
        }
        Ok(out)
    }

    /// Evaluates with `value(v)` supplying each variable.
    pub fn eval(&self, value: &dyn Fn(u32) -> Result<AlgebraicNumber>) -> Result<AlgebraicNumber> {
        let mut cache: BTreeMap<(u32, u32), AlgebraicNumber> = BTreeMap::new();
        let mut acc = AlgebraicNumber::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m.pairs() {
                let p = match cache.get(&(v, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = value(v)?.pow(e)?;
                        cache.insert((v, e), p.clone());
                        p
                    }
                };
                t = t.mul(&p)?;
            }
            acc = acc.add(&t)?;
        }
        Ok(acc)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().rev().map(|(m, c)| format!("{c:?}*{m:?}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

// ---------- gcd ----------

/// Monic greatest common divisor; `gcd(0, 0) = 0`.
pub fn gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    gcd_rec(a, b)?.monic()
}

fn monomial_gcd(m: &Monomial, p: &MultiPoly) -> MultiPoly {
    let mut g = m.clone();
    for (n, _) in p.terms() {
        if g.is_one() {
            break;
        }
        g = g.gcd(n);
    }
    MultiPoly::term(g, AlgebraicNumber::one())
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly> {
    if a.is_zero() {
        return Ok(b.clone());
    }
    if b.is_zero() {
        return Ok(a.clone());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(MultiPoly::one());
    }
    if a.len() == 1 {
        return Ok(monomial_gcd(a.leading().expect("nonzero").0, b));
    }
    if b.len() == 1 {
        return Ok(monomial_gcd(b.leading().expect("nonzero").0, a));
    }
    if a == b {
        return Ok(a.clone());
    }
    let v = a.max_var().max(b.max_var()).expect("non-constant");
    let (da, db) = (a.degree_in(v), b.degree_in(v));
    if da == 0 {
        return gcd_rec(a, &content(&b.to_univariate(v))?);
    }
    if db == 0 {
        return gcd_rec(&content(&a.to_univariate(v))?, b);
    }
    let (ua, ub) = (a.to_univariate(v), b.to_univariate(v));
    let (ca, cb) = (content(&ua)?, content(&ub)?);
    let c = gcd_rec(&ca, &cb)?;
    let pa = divide_all(&ua, &ca)?;
    let pb = divide_all(&ub, &cb)?;
    if coprime_by_evaluation(&pa, &pb) {
        return Ok(c);
    }
    let g = primitive_prs(pa, pb)?;
    c.mul(&MultiPoly::from_univariate(v, &g)?)
}

/// gcd of all coefficients; constants collapse to one.
fn content(coeffs: &[MultiPoly]) -> Result<MultiPoly> {
    let mut g = MultiPoly::zero();
    // cheapest coefficients first
    let mut order: Vec<&MultiPoly> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    order.sort_by_key(|c| (c.total_degree(), c.len()));
    for c in order {
        g = gcd_rec(&g, c)?;
        if g.is_constant() {
            return Ok(MultiPoly::one());
        }
    }
    g.monic()
}

fn divide_all(coeffs: &[MultiPoly], d: &MultiPoly) -> Result<Vec<MultiPoly>> {
    if d.is_one() {
        return Ok(coeffs.to_vec());
    }
    coeffs
        .iter()
        .map(|c| c.div_exact(d)?.ok_or_else(unreachable_division))
        .collect()
}

fn unreachable_division() -> Error {
    Error::InvalidInput("content does not divide a coefficient".into())
}

fn trim(v: &mut Vec<MultiPoly>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn udeg(v: &[MultiPoly]) -> Option<usize> {
    if v.len() == 1 && v[0].is_zero() {
        None
    } else {
        Some(v.len() - 1)
    }
}

/// `lc(b)^k * a mod b` for some k, as univariate polynomials.
fn pseudo_rem(a: &[MultiPoly], b: &[MultiPoly]) -> Result<Vec<MultiPoly>> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = udeg(b).expect("nonzero divisor");
    let lb = &b[db];
    while let Some(dr) = udeg(&r) {
        if dr < db {
            break;
        }
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next = Vec::with_capacity(r.len());
        for (i, c) in r.iter().enumerate() {
            let mut t = c.mul(lb)?;
            if i >= shift && i - shift <= db {
                t = t.sub(&b[i - shift].mul(&lr)?)?;
            }
            next.push(t);
        }
        debug_assert!(next[dr].is_zero());
        r = next;
        trim(&mut r);
    }
    Ok(r)
}

/// Rational coefficients of `p` at a point, or `None` for irrational input.
fn eval_rational(p: &MultiPoly, point: &dyn Fn(u32) -> BigRational) -> Option<BigRational> {
    let mut acc = BigRational::zero();
    for (m, c) in p.terms() {
        let mut t = c.as_rational()?.clone();
        for &(v, e) in m.pairs() {
            t *= num_traits::pow(point(v), e as usize);
        }
        acc += t;
    }
    Some(acc)
}

fn univariate_gcd_degree(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> usize {
    let trim = |v: &mut Vec<BigRational>| {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b, with b made monic
        let inv = b.last().expect("nonempty").recip();
        for c in b.iter_mut() {
            *c *= &inv;
        }
        while a.len() >= b.len() {
            let lead = a.pop().expect("nonempty");
            let shift = a.len() + 1 - b.len();
            for (i, c) in b[..b.len() - 1].iter().enumerate() {
                a[shift + i] -= &lead * c;
            }
            trim(&mut a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

/// Proves that two primitive polynomials in the main variable have no common
/// factor by specializing the other variables at a point where both leading
/// coefficients survive. The specialized gcd degree bounds the true one.
fn coprime_by_evaluation(a: &[MultiPoly], b: &[MultiPoly]) -> bool {
    const POINTS: [[i64; 4]; 2] = [[2, 3, 5, 7], [-3, 11, -2, 13]];
    for pt in POINTS {
        let point = |v: u32| BigRational::from_integer(BigInt::from(pt[v as usize % 4] + v as i64 / 4));
        let image = |p: &[MultiPoly]| p.iter().map(|c| eval_rational(c, &point)).collect::<Option<Vec<_>>>();
        let (Some(ia), Some(ib)) = (image(a), image(b)) else {
            return false;
        };
        if ia.last().is_none_or(|c| c.is_zero()) || ib.last().is_none_or(|c| c.is_zero()) {
            continue;
        }
        return univariate_gcd_degree(ia, ib) == 0;
    }
    false
}

/// Scales so the leading numeric coefficient of the leading coefficient is
/// one, keeping coefficient sizes bounded along the remainder sequence.
fn normalize_lead(mut v: Vec<MultiPoly>) -> Result<Vec<MultiPoly>> {
    trim(&mut v);
    let Some(d) = udeg(&v) else { return Ok(v) };
    let (_, lc) = v[d].leading().expect("nonzero leading coefficient");
    if lc.is_one() {
        return Ok(v);
    }
    let inv = lc.inv()?;
    v.iter().map(|c| c.scale(&inv)).collect()
}

fn primitive_prs(a: Vec<MultiPoly>, b: Vec<MultiPoly>) -> Result<Vec<MultiPoly>> {
    let (mut a, mut b) = (normalize_lead(a)?, normalize_lead(b)?);
    if udeg(&a) < udeg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b)?;
        match udeg(&r) {
            None => return Ok(b),
            Some(0) => return Ok(vec![MultiPoly::one()]),
            Some(_) => {
                let c = content(&r)?;
                a = b;
                b = normalize_lead(divide_all(&r, &c)?)?;
            }
        }
    }
}
