//! Textual form of tower elements.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary (('*' | '/') unary)*
//! unary  := '-' unary | power
//! power  := atom ('^' integer)?
//! atom   := integer | ident | '(' expr ')'
//!         | 'alg' '(' poly ',' expr ',' expr ')'
//!         | 'algc' '(' poly ',' 're' '=' expr ',' 'im' '=' expr ')'
//! ```
//!
//! Inside `alg` and `algc` the polynomial is written in `x`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebraic::AlgebraicNumber;
use crate::error::{Error, Result};
use crate::intpoly::IntPolynomial;
use crate::multipoly::MultiPoly;
use crate::tower::{FieldTower, TowerElement};

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(BigInt),
    Var { name: String, offset: usize },
    Alg { poly: Box<Expr>, lo: Box<Expr>, hi: Box<Expr>, offset: usize },
    Algc { poly: Box<Expr>, re: Box<Expr>, im: Box<Expr>, offset: usize },
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = text[start..i].parse().expect("digits");
            out.push((Tok::Int(n), start));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[start..i].to_string()), start));
        } else if "+-*/^(),=".contains(c) {
            out.push((Tok::Sym(c), i));
            i += 1;
        } else {
            return Err(Error::syntax(i, format!("unexpected character {c:?}")));
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> (Tok, usize) {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expect_sym(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Tok::Sym(s) if *s == c => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("expected '{c}'"))),
        }
    }

    fn expect_ident(&mut self, name: &str) -> Result<()> {
        match self.peek() {
            Tok::Ident(s) if s == name => {
                self.bump();
                Ok(())
            }
            _ => Err(self.unexpected(&format!("expected '{name}'"))),
        }
    }

    fn unexpected(&self, what: &str) -> Error {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            Tok::Int(n) => n.to_string(),
            Tok::Ident(s) => s.clone(),
            Tok::Sym(c) => format!("'{c}'"),
        };
        Error::syntax(self.offset(), format!("{what}, found {found}"))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Tok::Sym('+') => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Tok::Sym('-') => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            match self.peek() {
                Tok::Sym('*') => {
                    self.bump();
                    lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
                }
                Tok::Sym('/') => {
                    self.bump();
                    lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if let Tok::Sym('-') = self.peek() {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if let Tok::Sym('^') = self.peek() {
            self.bump();
            let off = self.offset();
            let Tok::Int(e) = self.peek().clone() else {
                return Err(self.unexpected("expected a nonnegative integer exponent"));
            };
            self.bump();
            let e = e
                .to_u32()
                .ok_or_else(|| Error::syntax(off, "exponent too large"))?;
            return Ok(Expr::Pow(Box::new(base), e));
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Expr> {
        let off = self.offset();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Tok::Sym('(') => {
                self.bump();
                let e = self.expr()?;
                self.expect_sym(')')?;
                Ok(e)
            }
            Tok::Ident(name) if name == "alg" || name == "algc" => {
                self.bump();
                self.expect_sym('(')?;
                let poly = Box::new(self.expr()?);
                self.expect_sym(',')?;
                if name == "alg" {
                    let lo = Box::new(self.expr()?);
                    self.expect_sym(',')?;
                    let hi = Box::new(self.expr()?);
                    self.expect_sym(')')?;
                    Ok(Expr::Alg { poly, lo, hi, offset: off })
                } else {
                    self.expect_ident("re")?;
                    self.expect_sym('=')?;
                    let re = Box::new(self.expr()?);
                    self.expect_sym(',')?;
                    self.expect_ident("im")?;
                    self.expect_sym('=')?;
                    let im = Box::new(self.expr()?);
                    self.expect_sym(')')?;
                    Ok(Expr::Algc { poly, re, im, offset: off })
                }
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Expr::Var { name, offset: off })
            }
            _ => Err(self.unexpected("expected an operand")),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.unexpected("expected an operator"));
    }
    Ok(e)
}

/// Dense univariate polynomial in `x` with rational coefficients, used for
/// the defining polynomials of algebraic literals.
fn eval_univariate(e: &Expr) -> Result<Vec<BigRational>> {
    fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
        while v.last().is_some_and(|c| c.is_zero()) {
            v.pop();
        }
        v
    }
    fn add(a: &[BigRational], b: &[BigRational], sign: i32) -> Vec<BigRational> {
        let n = a.len().max(b.len());
        let z = BigRational::zero();
        trim(
            (0..n)
                .map(|i| {
                    let y = b.get(i).unwrap_or(&z);
                    a.get(i).unwrap_or(&z) + if sign < 0 { -y } else { y.clone() }
                })
                .collect(),
        )
    }
    fn mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }
    Ok(match e {
        Expr::Int(n) => trim(vec![BigRational::from(n.clone())]),
        Expr::Var { name, offset } => {
            if name != "x" {
                return Err(Error::syntax(*offset, format!("only x may appear here, found {name}")));
            }
            vec![BigRational::zero(), BigRational::one()]
        }
        Expr::Alg { offset, .. } | Expr::Algc { offset, .. } => {
            return Err(Error::syntax(*offset, "algebraic literal inside a defining polynomial"));
        }
        Expr::Neg(a) => eval_univariate(a)?.into_iter().map(|c| -c).collect(),
        Expr::Add(a, b) => add(&eval_univariate(a)?, &eval_univariate(b)?, 1),
        Expr::Sub(a, b) => add(&eval_univariate(a)?, &eval_univariate(b)?, -1),
        Expr::Mul(a, b) => mul(&eval_univariate(a)?, &eval_univariate(b)?),
        Expr::Div(a, b) => {
            let d = eval_univariate(b)?;
            if d.len() > 1 {
                return Err(Error::InvalidInput("division by a polynomial in x".into()));
            }
            let d = d.into_iter().next().ok_or(Error::DivisionByZero)?;
            eval_univariate(a)?.into_iter().map(|c| c / &d).collect()
        }
        Expr::Pow(a, k) => {
            let base = eval_univariate(a)?;
            let mut out = vec![BigRational::one()];
            for _ in 0..*k {
                out = mul(&out, &base);
            }
            out
        }
    })
}

fn eval_rational(e: &Expr) -> Result<BigRational> {
    let p = eval_univariate(e)?;
    match p.len() {
        0 => Ok(BigRational::zero()),
        1 => Ok(p[0].clone()),
        _ => Err(Error::InvalidInput("expected a rational constant".into())),
    }
}

fn eval_real_constant(e: &Expr) -> Result<AlgebraicNumber> {
    match e {
        Expr::Alg { .. } => eval_constant(e),
        Expr::Neg(a) if matches!(**a, Expr::Alg { .. }) => Ok(eval_constant(a)?.neg()),
        _ => Ok(AlgebraicNumber::from_rational(eval_rational(e)?)),
    }
}

fn integer_poly(e: &Expr) -> Result<IntPolynomial> {
    let p = eval_univariate(e)?;
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    Ok(IntPolynomial::new(
        p.iter().map(|c| (c * BigRational::from(lcm.clone())).to_integer()).collect(),
    ))
}

fn eval_constant(e: &Expr) -> Result<AlgebraicNumber> {
    match e {
        Expr::Alg { poly, lo, hi, .. } => {
            let p = integer_poly(poly)?;
            AlgebraicNumber::real_root_in(&p, &eval_rational(lo)?, &eval_rational(hi)?)
        }
        Expr::Algc { poly, re, im, .. } => {
            let p = integer_poly(poly)?;
            let z = AlgebraicNumber::complex(eval_real_constant(re)?, eval_real_constant(im)?)?;
            let m = z.minpoly()?;
            if p.primitive_part() != m && p.primitive_part().neg() != m {
                return Err(Error::InvalidInput(format!("minimal polynomial of the literal is {m}, not {p}")));
            }
            Ok(z)
        }
        _ => unreachable!("only algebraic literals"),
    }
}

fn eval_in(e: &Expr, tower: &FieldTower) -> Result<TowerElement> {
    Ok(match e {
        Expr::Int(n) => TowerElement::constant(AlgebraicNumber::from_rational(BigRational::from(n.clone()))),
        Expr::Var { name, .. } => match tower.index_of(name) {
            Some(v) => tower.gen(v),
            None => return Err(Error::UnknownGenerator(name.clone())),
        },
        Expr::Alg { .. } | Expr::Algc { .. } => TowerElement::constant(eval_constant(e)?),
        Expr::Neg(a) => eval_in(a, tower)?.neg(),
        Expr::Add(a, b) => eval_in(a, tower)?.add(&eval_in(b, tower)?)?,
        Expr::Sub(a, b) => eval_in(a, tower)?.sub(&eval_in(b, tower)?)?,
        Expr::Mul(a, b) => eval_in(a, tower)?.mul(&eval_in(b, tower)?)?,
        Expr::Div(a, b) => eval_in(a, tower)?.div(&eval_in(b, tower)?)?,
        Expr::Pow(a, k) => eval_in(a, tower)?.pow(*k as i64)?,
    })
}

/// Parses an element whose generators are declared in `tower`.
pub fn parse_element(text: &str, tower: &FieldTower) -> Result<TowerElement> {
    eval_in(&parse_expr(text)?, tower)
}

fn write_poly(out: &mut String, p: &MultiPoly, tower: &FieldTower) {
    if p.is_zero() {
        out.push('0');
        return;
    }
    for (k, (m, c)) in p.terms().rev().enumerate() {
        let mono: Vec<String> = m
            .pairs()
            .iter()
            .map(|&(v, e)| {
                if e == 1 {
                    tower.name(v).to_string()
                } else {
                    format!("{}^{}", tower.name(v), e)
                }
            })
            .collect();
        let mono = mono.join("*");
        match c.as_rational() {
            Some(r) => {
                let neg = r.is_negative();
                let mag = r.abs();
                match (k, neg) {
                    (0, true) => out.push('-'),
                    (0, false) => {}
                    (_, true) => out.push_str(" - "),
                    (_, false) => out.push_str(" + "),
                }
                if mono.is_empty() {
                    let _ = write!(out, "{}", AlgebraicNumber::from_rational(mag));
                } else if mag.is_one() {
                    out.push_str(&mono);
                } else {
                    let _ = write!(out, "{}*{}", AlgebraicNumber::from_rational(mag), mono);
                }
            }
            None => {
                if k > 0 {
                    out.push_str(" + ");
                }
                let _ = write!(out, "{c}");
                if !mono.is_empty() {
                    let _ = write!(out, "*{mono}");
                }
            }
        }
    }
}

/// Canonical text: the numerator alone when the denominator is one,
/// otherwise `(num)/(den)`.
pub fn print_element(a: &TowerElement, tower: &FieldTower) -> String {
    let mut num = String::new();
    write_poly(&mut num, a.num(), tower);
    if a.den().is_one() {
        return num;
    }
    let mut den = String::new();
    write_poly(&mut den, a.den(), tower);
    format!("({num})/({den})")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automorphism::FieldState;
    use crate::linalg::Matrix;

    fn tower2() -> FieldTower {
        let mut s = FieldState::new();
        s.extend_block(
            vec!["t1".into(), "t2".into()],
            Matrix::identity(&crate::tower::RationalFunctions, 2),
        )
        .unwrap();
        s.tower().clone()
    }

    #[test]
    fn parse_fraction() {
        let t = tower2();
        let e = parse_element("(2*t1+1)/(t2-1)", &t).unwrap();
        let t1 = t.generator("t1").unwrap();
        let t2 = t.generator("t2").unwrap();
        let one = TowerElement::one();
        let two = TowerElement::from_int(2);
        let expect = two.mul(&t1).unwrap().add(&one).unwrap().div(&t2.sub(&one).unwrap()).unwrap();
        assert_eq!(e, expect);
        assert_eq!(print_element(&e, &t), "(2*t1 + 1)/(t2 - 1)");
    }

    #[test]
    fn algebraic_literals() {
        let t = tower2();
        let e = parse_element("alg(x^2-2,1,2) * alg(x^2-2,1,2)", &t).unwrap();
        assert_eq!(e, TowerElement::from_int(2));
        let s = parse_element("alg(x^2-2, -2, -1)", &t).unwrap();
        assert_eq!(s.as_constant().unwrap().signum().unwrap(), std::cmp::Ordering::Less);
        let i = TowerElement::constant(AlgebraicNumber::i());
        let p = print_element(&i, &t);
        assert_eq!(parse_element(&p, &t).unwrap(), i);
        assert!(matches!(
            parse_element("alg(x^2-2, 3, 4)", &t),
            Err(Error::NoRootInInterval)
        ));
    }

    #[test]
    fn precedence() {
        let t = tower2();
        let a = parse_element("-t1^2", &t).unwrap();
        let t1 = t.generator("t1").unwrap();
        assert_eq!(a, t1.mul(&t1).unwrap().neg());
        assert_eq!(parse_element("8/2/2", &t).unwrap(), TowerElement::from_int(2));
        assert_eq!(parse_element("1 - 2 - 3", &t).unwrap(), TowerElement::from_int(-4));
        assert_eq!(parse_element("2*-3", &t).unwrap(), TowerElement::from_int(-6));
    }

    #[test]
    fn syntax_errors() {
        let t = tower2();
        assert_eq!(
            parse_element("t1 + * 2", &t).unwrap_err(),
            Error::Syntax {
                offset: 5,
                message: "expected an operand, found '*'".into()
            }
        );
        assert!(matches!(parse_element("(t1", &t), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_element("t1 t2", &t), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_element("t1 # 2", &t), Err(Error::Syntax { offset: 3, .. })));
        assert!(matches!(parse_element("t1^t2", &t), Err(Error::Syntax { offset: 3, .. })));
        assert_eq!(parse_element("t3", &t), Err(Error::UnknownGenerator("t3".into())));
        assert_eq!(parse_element("1/(t1-t1)", &t), Err(Error::DivisionByZero));
    }

    #[test]
    fn print_round_trip() {
        let t = tower2();
        for text in [
            "0",
            "-3/4*t1^2*t2 - t2 + 5",
            "(t1 + alg(x^2-3,1,2))/(t1*t2 - 1/2)",
            "1/t1 - alg(x^3-2,1,2)*t2",
        ] {
            let e = parse_element(text, &t).unwrap();
            let p = print_element(&e, &t);
            assert_eq!(parse_element(&p, &t).unwrap(), e, "{text} -> {p}");
        }
    }
}
