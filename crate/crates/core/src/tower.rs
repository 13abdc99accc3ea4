//! Towers of transcendental generator blocks over the algebraic numbers and
//! their rational-function elements in canonical form.

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::atomic::{AtomicU64, Ordering};

use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::multipoly::{gcd, MultiPoly};

static NEXT_TOWER: AtomicU64 = AtomicU64::new(1);

/// `[a-zA-Z][a-zA-Z0-9_]*`, and not one of the grammar's reserved words.
pub fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
        && !matches!(s, "alg" | "algc" | "re" | "im")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub names: Vec<String>,
    pub start: u32,
}

impl Block {
    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn vars(&self) -> std::ops::Range<u32> {
        self.start..self.start + self.names.len() as u32
    }
}

/// Append-only list of generator blocks. Generators are numbered in creation
/// order across blocks.
#[derive(Clone, Debug)]
pub struct FieldTower {
    id: u64,
    blocks: Vec<Block>,
    names: Vec<String>,
    index: HashMap<String, u32>,
}

impl Default for FieldTower {
    fn default() -> Self {
        Self::new()
    }
}

impl FieldTower {
    pub fn new() -> Self {
        FieldTower {
            id: NEXT_TOWER.fetch_add(1, Ordering::Relaxed),
            blocks: Vec::new(),
            names: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    /// Snapshot identifier: the number of blocks.
    pub fn version(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn num_generators(&self) -> u32 {
        self.names.len() as u32
    }

    pub fn name(&self, v: u32) -> &str {
        &self.names[v as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<u32> {
        self.index.get(name).copied()
    }

    pub fn block_of(&self, v: u32) -> usize {
        self.blocks.partition_point(|b| b.start + b.arity() as u32 <= v)
    }

    pub fn is_free(&self, name: &str) -> bool {
        !self.index.contains_key(name)
    }

    pub(crate) fn push_block(&mut self, names: Vec<String>) -> Result<usize> {
        if names.is_empty() {
            return Err(Error::InvalidInput("empty generator block".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if !valid_name(n) {
                return Err(Error::InvalidName(n.clone()));
            }
            if self.index.contains_key(n) || !seen.insert(n.as_str()) {
                return Err(Error::NameCollision(n.clone()));
            }
        }
        let start = self.num_generators();
        for (i, n) in names.iter().enumerate() {
            self.index.insert(n.clone(), start + i as u32);
        }
        self.names.extend(names.iter().cloned());
        self.blocks.push(Block { names, start });
        Ok(self.blocks.len() - 1)
    }

    pub fn generator(&self, name: &str) -> Result<TowerElement> {
        let v = self
            .index_of(name)
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))?;
        Ok(self.gen(v))
    }

    pub fn gen(&self, v: u32) -> TowerElement {
        TowerElement {
            num: MultiPoly::var(v),
            den: MultiPoly::one(),
            tower: self.id,
        }
    }

    /// Whether `a` belongs to this tower snapshot.
    pub fn contains(&self, a: &TowerElement) -> bool {
        (a.tower == 0 || a.tower == self.id)
            && a.max_var().is_none_or(|v| v < self.num_generators())
    }

    pub fn check(&self, a: &TowerElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::TowerMismatch)
        }
    }

    /// Evaluates `a` at an assignment of generator names to algebraic numbers.
    pub fn eval(&self, a: &TowerElement, assignment: &HashMap<String, AlgebraicNumber>) -> Result<AlgebraicNumber> {
        self.check(a)?;
        let value = |v: u32| {
            let name = self.name(v);
            assignment
                .get(name)
                .cloned()
                .ok_or_else(|| Error::MissingAssignment(name.to_string()))
        };
        let den = a.den.eval(&value)?;
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        a.num.eval(&value)?.div(&den)
    }
}

/// A rational function `num / den` in canonical form: `den` has leading
/// coefficient one, `gcd(num, den) = 1`, and zero is `0 / 1`.
#[derive(Clone)]
pub struct TowerElement {
    num: MultiPoly,
    den: MultiPoly,
    // lineage of the tower the element came from; 0 for constants
    tower: u64,
}

impl PartialEq for TowerElement {
    fn eq(&self, other: &Self) -> bool {
        self.num == other.num && self.den == other.den
    }
}

impl Eq for TowerElement {}

impl Hash for TowerElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.num.hash(state);
        self.den.hash(state);
    }
}

impl fmt::Debug for TowerElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{:?}", self.num)
        } else {
            write!(f, "({:?})/({:?})", self.num, self.den)
        }
    }
}

fn join(a: u64, b: u64) -> Result<u64> {
    match (a, b) {
        (0, t) | (t, 0) => Ok(t),
        (s, t) if s == t => Ok(s),
        _ => Err(Error::TowerMismatch),
    }
}

impl TowerElement {
    pub fn zero() -> Self {
        Self::constant(AlgebraicNumber::zero())
    }

    pub fn one() -> Self {
        Self::constant(AlgebraicNumber::one())
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(AlgebraicNumber::from_int(n))
    }

    pub fn constant(c: AlgebraicNumber) -> Self {
        TowerElement {
            num: MultiPoly::constant(c),
            den: MultiPoly::one(),
            tower: 0,
        }
    }

    /// Canonical form of `num / den`.
    pub fn normalize(num: MultiPoly, den: MultiPoly, tower: u64) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(TowerElement {
                num,
                den: MultiPoly::one(),
                tower,
            });
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else {
            let g = gcd(&num, &den)?;
            if g.is_one() {
                (num, den)
            } else {
                (
                    num.div_exact(&g)?.expect("gcd divides"),
                    den.div_exact(&g)?.expect("gcd divides"),
                )
            }
        };
        Self::monic_den(num, den, tower)
    }

    /// Scales so that the denominator is monic; assumes coprimality.
    fn monic_den(num: MultiPoly, den: MultiPoly, tower: u64) -> Result<Self> {
        let lc = den.leading().expect("nonzero").1.clone();
        if lc.is_one() {
            return Ok(TowerElement { num, den, tower });
        }
        let inv = lc.inv()?;
        Ok(TowerElement {
            num: num.scale(&inv)?,
            den: den.scale(&inv)?,
            tower,
        })
    }

    pub fn from_poly(p: MultiPoly, tower: u64) -> Self {
        TowerElement {
            num: p,
            den: MultiPoly::one(),
            tower,
        }
    }

    pub fn num(&self) -> &MultiPoly {
        &self.num
    }

    pub fn den(&self) -> &MultiPoly {
        &self.den
    }

    pub fn tower_id(&self) -> u64 {
        self.tower
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value of a constant element.
    pub fn as_constant(&self) -> Option<AlgebraicNumber> {
        if self.den.is_one() {
            self.num.constant_value()
        } else {
            None
        }
    }

    pub fn max_var(&self) -> Option<u32> {
        self.num.max_var().max(self.den.max_var())
    }

    pub fn neg(&self) -> Self {
        TowerElement {
            num: self.num.neg(),
            den: self.den.clone(),
            tower: self.tower,
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.add_signed(other, false)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add_signed(other, true)
    }

    fn add_signed(&self, other: &Self, negate: bool) -> Result<Self> {
        let tower = join(self.tower, other.tower)?;
        let nb = if negate { other.num.neg() } else { other.num.clone() };
        if self.den.is_one() && other.den.is_one() {
            return Ok(Self::from_poly(self.num.add(&nb)?, tower));
        }
        if self.den == other.den {
            return Self::normalize(self.num.add(&nb)?, self.den.clone(), tower);
        }
        // a/b + c/d with g = gcd(b, d): (a d' + c b') / (b' d) and only g can cancel
        let g = gcd(&self.den, &other.den)?;
        let (b1, d1) = if g.is_one() {
            (self.den.clone(), other.den.clone())
        } else {
            (
                self.den.div_exact(&g)?.expect("gcd divides"),
                other.den.div_exact(&g)?.expect("gcd divides"),
            )
        };
        let num = self.num.mul(&d1)?.add(&nb.mul(&b1)?)?;
        let den = b1.mul(&other.den)?;
        if num.is_zero() {
            return Ok(Self::from_poly(num, tower));
        }
        if g.is_one() {
            return Ok(TowerElement { num, den, tower });
        }
        let h = gcd(&num, &g)?;
        if h.is_one() {
            return Ok(TowerElement { num, den, tower });
        }
        Ok(TowerElement {
            num: num.div_exact(&h)?.expect("gcd divides"),
            den: den.div_exact(&h)?.expect("gcd divides"),
            tower,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        let tower = join(self.tower, other.tower)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::from_poly(MultiPoly::zero(), tower));
        }
        if self.den.is_one() && other.den.is_one() {
            return Ok(Self::from_poly(self.num.mul(&other.num)?, tower));
        }
        // (a/b)(c/d) with g1 = gcd(a, d), g2 = gcd(c, b)
        let g1 = gcd(&self.num, &other.den)?;
        let g2 = gcd(&other.num, &self.den)?;
        let q = |p: &MultiPoly, g: &MultiPoly| -> Result<MultiPoly> {
            if g.is_one() {
                Ok(p.clone())
            } else {
                Ok(p.div_exact(g)?.expect("gcd divides"))
            }
        };
        let num = q(&self.num, &g1)?.mul(&q(&other.num, &g2)?)?;
        let den = q(&self.den, &g2)?.mul(&q(&other.den, &g1)?)?;
        Self::monic_den(num, den, tower)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::monic_den(self.den.clone(), self.num.clone(), self.tower)
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs() as u32;
        Ok(TowerElement {
            num: base.num.pow(e)?,
            den: base.den.pow(e)?,
            tower: base.tower,
        })
    }

    /// Evaluates with `value(v)` supplying each generator.
    pub fn eval_with(&self, value: &dyn Fn(u32) -> Result<AlgebraicNumber>) -> Result<AlgebraicNumber> {
        let den = self.den.eval(value)?;
        if den.is_zero() {
            return Err(Error::DenominatorVanishes);
        }
        self.num.eval(value)?.div(&den)
    }

    /// Same value, tagged with the lineage of `tower`.
    pub fn retag(&self, tower: &FieldTower) -> Self {
        TowerElement {
            tower: tower.id(),
            ..self.clone()
        }
    }
}

/// Rational functions over a tower, as a scalar domain.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalFunctions;

impl Field for RationalFunctions {
    type Elem = TowerElement;

    fn zero(&self) -> TowerElement {
        TowerElement::zero()
    }
    fn one(&self) -> TowerElement {
        TowerElement::one()
    }
    fn from_i64(&self, n: i64) -> TowerElement {
        TowerElement::from_int(n)
    }
    fn is_zero(&self, a: &TowerElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
        a.add(b)
    }
    fn sub(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
        a.sub(b)
    }
    fn mul(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
        a.mul(b)
    }
    fn neg(&self, a: &TowerElement) -> TowerElement {
        a.neg()
    }
    fn inv(&self, a: &TowerElement) -> Result<TowerElement> {
        a.inv()
    }
    fn div(&self, a: &TowerElement, b: &TowerElement) -> Result<TowerElement> {
        a.div(b)
    }
    fn is_one(&self, a: &TowerElement) -> bool {
        a.is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn tower2() -> (FieldTower, TowerElement, TowerElement) {
        let mut t = FieldTower::new();
        t.push_block(vec!["t1".into(), "t2".into()]).unwrap();
        let a = t.generator("t1").unwrap();
        let b = t.generator("t2").unwrap();
        (t, a, b)
    }

    fn k(n: i64) -> TowerElement {
        TowerElement::from_int(n)
    }

    #[test]
    fn sum_of_reciprocals() {
        let (_, t1, t2) = tower2();
        let s = t1.inv().unwrap().add(&t2.inv().unwrap()).unwrap();
        let expect = t1.add(&t2).unwrap().div(&t1.mul(&t2).unwrap()).unwrap();
        assert_eq!(s, expect);
        assert_eq!(s.den(), t1.mul(&t2).unwrap().num());
    }

    #[test]
    fn common_factor_cancels() {
        let (_, t1, _) = tower2();
        let a = t1.mul(&t1).unwrap().sub(&k(1)).unwrap();
        let b = t1.sub(&k(1)).unwrap();
        assert_eq!(a.div(&b).unwrap(), t1.add(&k(1)).unwrap());
    }

    #[test]
    fn normalize_examples() {
        let (t, t1, t2) = tower2();
        let p = t1.add(&k(1)).unwrap().mul(&t2.sub(&k(1)).unwrap()).unwrap();
        let q = t2.sub(&k(1)).unwrap();
        let r = TowerElement::normalize(p.num().clone(), q.num().clone(), t.id()).unwrap();
        assert_eq!(r, t1.add(&k(1)).unwrap());
        let r = TowerElement::normalize(t1.num().scale(&AlgebraicNumber::from_int(2)).unwrap(), MultiPoly::constant(AlgebraicNumber::from_int(4)), t.id()).unwrap();
        let half = AlgebraicNumber::from_rational(BigRational::new(BigInt::from(1), BigInt::from(2)));
        assert_eq!(r, t1.mul(&TowerElement::constant(half)).unwrap());
    }

    #[test]
    fn algebraic_coefficients() {
        let (_, t1, _) = tower2();
        let s2 = TowerElement::constant(AlgebraicNumber::sqrt_rational(&BigRational::from(BigInt::from(2))).unwrap());
        let a = s2.mul(&t1).unwrap();
        assert_eq!(a.mul(&a).unwrap(), k(2).mul(&t1.pow(2).unwrap()).unwrap());
    }

    #[test]
    fn evaluation() {
        let (t, t1, t2) = tower2();
        let e = t1.add(&t2).unwrap().div(&t1.mul(&t2).unwrap()).unwrap();
        let mut asg = HashMap::new();
        asg.insert("t1".to_string(), AlgebraicNumber::from_int(1));
        asg.insert("t2".to_string(), AlgebraicNumber::from_int(2));
        assert_eq!(
            t.eval(&e, &asg).unwrap(),
            AlgebraicNumber::from_rational(BigRational::new(3.into(), 2.into()))
        );
        let bad = t1.sub(&k(1)).unwrap().inv().unwrap();
        asg.insert("t1".to_string(), AlgebraicNumber::from_int(1));
        assert_eq!(t.eval(&bad, &asg), Err(Error::DenominatorVanishes));
        asg.remove("t2");
        assert_eq!(t.eval(&t2, &asg), Err(Error::MissingAssignment("t2".into())));
    }

    #[test]
    fn tower_mismatch_and_names() {
        let (mut t, t1, _) = tower2();
        let (_, u1, _) = tower2();
        assert_eq!(t1.add(&u1), Err(Error::TowerMismatch));
        assert_eq!(t.push_block(vec!["t1".into()]), Err(Error::NameCollision("t1".into())));
        assert_eq!(t.push_block(vec!["1x".into()]), Err(Error::InvalidName("1x".into())));
        assert_eq!(t.block_of(1), 0);
        t.push_block(vec!["y".into()]).unwrap();
        assert_eq!(t.block_of(2), 1);
    }
}
