//! A quick, seeded pass over the main identities, for the command line.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::algebraic::{real_roots, AlgebraicNumber};
use crate::automorphism::FieldState;
use crate::certificate::{verify_certificate, Certificate};
use crate::error::Result;
use crate::expr::{parse_element, print_element};
use crate::field::{Field, Rationals};
use crate::finite::{
    quotient_check, twisted_partition, unit_class_subgroup, AutoDescriptor, FiniteAutomorphism, FiniteGroup,
    GroupType,
};
use crate::intpoly::IntPolynomial;
use crate::linalg::{discriminant, Matrix};
use crate::par::Execution;
use crate::sample;
use crate::tower::RationalFunctions;
use crate::twisted::{class_witness, distinct_shift, factor3, lift_rational, FactorConfig, ShiftConfig};

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Check {
    match f() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check {
            name,
            passed: false,
            detail: format!("error: {e}"),
        },
    }
}

pub fn run(seed: u64, exec: Execution) -> Vec<Check> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    out.push(check("minpoly of sqrt2+sqrt3", || {
        let two = AlgebraicNumber::sqrt_rational(&BigRational::from_integer(2.into()))?;
        let three = AlgebraicNumber::sqrt_rational(&BigRational::from_integer(3.into()))?;
        let m = two.add(&three)?.minpoly()?;
        Ok((m == IntPolynomial::from_i64s(&[1, 0, -10, 0, 1]), m.to_string()))
    }));

    out.push(check("real roots of x^3-x", || {
        let roots = real_roots(&IntPolynomial::from_i64s(&[0, -1, 0, 1]));
        let disjoint = roots.windows(2).all(|w| w[0].interval.hi < w[1].interval.lo);
        let values: Vec<String> = roots.iter().map(|r| r.value.to_string()).collect();
        Ok((roots.len() == 3 && disjoint, values.join(", ")))
    }));

    out.push(check("Cayley-Hamilton", || {
        let f = Rationals;
        let mut ok = 0;
        for i in 0..20 {
            let m = sample::rational_matrix(&mut rng, 1 + i % 3, 9);
            let p = m.charpoly(&f)?;
            if p.eval_matrix(&f, &m)? == Matrix::from_fn(m.n(), |_, _| f.zero()) {
                ok += 1;
            }
        }
        Ok((ok == 20, format!("{ok}/20")))
    }));

    out.push(check("class witness identity", || {
        let f = RationalFunctions;
        let mut ok = 0;
        for _ in 0..5 {
            let mut state = FieldState::new();
            let x = lift_rational(&sample::invertible(&mut rng, 2, 9));
            let w = class_witness(&x, &mut state)?;
            let pt = state.apply_matrix(&w.t)?;
            if w.t.inv(&f)?.mul(&f, &pt)? == x {
                ok += 1;
            }
        }
        Ok((ok == 5, format!("{ok}/5")))
    }));

    out.push(check("distinct shift", || {
        let mut ok = 0;
        for i in 0..10 {
            let a = sample::invertible(&mut rng, 3, 9);
            let cfg = ShiftConfig {
                seed: seed.wrapping_add(i),
                ..ShiftConfig::default()
            };
            let s = distinct_shift(&a, &cfg)?;
            let d: Vec<BigRational> = s.diagonal.iter().map(|x| BigRational::from(x.clone())).collect();
            let ad = a.mul(&Rationals, &Matrix::diagonal(&Rationals, &d))?;
            let disc = discriminant(&Rationals, &ad.charpoly(&Rationals)?)?;
            if disc != BigRational::from_integer(BigInt::from(0)) {
                ok += 1;
            }
        }
        Ok((ok == 10, format!("{ok}/10")))
    }));

    out.push(check("three-factor certificates", || {
        let mut ok = 0;
        for i in 0..3 {
            let a = sample::invertible(&mut rng, 2, 9);
            let mut state = FieldState::new();
            let cfg = FactorConfig {
                shift: ShiftConfig {
                    seed: seed.wrapping_add(i),
                    ..ShiftConfig::default()
                },
                ..FactorConfig::default()
            };
            let fac = factor3(&a, &mut state, &cfg)?;
            let cert = Certificate::new(&fac, &state, cfg.shift.seed)?;
            if fac.factors.len() <= 3 && verify_certificate(&Certificate::from_json(&cert.to_json())?)? {
                ok += 1;
            }
        }
        Ok((ok == 3, format!("{ok}/3")))
    }));

    out.push(check("parse/print round trip", || {
        let mut state = FieldState::new();
        let f = RationalFunctions;
        state.extend_block(vec!["s1".into(), "s2".into()], Matrix::identity(&f, 2))?;
        let tower = state.tower();
        let mut ok = 0;
        for _ in 0..50 {
            let e = sample::element(&mut rng, tower);
            if parse_element(&print_element(&e, tower), tower)? == e {
                ok += 1;
            }
        }
        Ok((ok == 50, format!("{ok}/50")))
    }));

    out.push(check("finite Reidemeister numbers", || {
        let cases = [
            (GroupType::gl(1, 2, 2), AutoDescriptor::frobenius(1), 1),
            (GroupType::gl(1, 3, 2), AutoDescriptor::frobenius(1), 2),
            (GroupType::gl(2, 2, 1), AutoDescriptor::identity(), 3),
        ];
        let mut got = Vec::new();
        for (ty, d, _) in &cases {
            let g = FiniteGroup::new(*ty)?;
            got.push(twisted_partition(&FiniteAutomorphism::new(&g, d)?, exec).reidemeister_number);
        }
        let ok = cases.iter().zip(&got).all(|(c, r)| c.2 == *r);
        Ok((ok, format!("{got:?}")))
    }));

    out.push(check("quotient inequality and normality", || {
        let g = FiniteGroup::new(GroupType::gl(2, 3, 1))?;
        let mut ok = true;
        for d in ["id", "inner:5", "transpose-inverse"] {
            let phi = FiniteAutomorphism::new(&g, &d.parse()?)?;
            ok &= quotient_check(&phi, exec).holds;
            ok &= unit_class_subgroup(&phi, exec).is_normal;
        }
        Ok((ok, "GL_2(F_3)".into()))
    }));

    out
}

/// Fixed-width pass/fail table.
pub fn table(checks: &[Check]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut s = String::new();
    for c in checks {
        s.push_str(&format!(
            "{:<width$}  {}  {}\n",
            c.name,
            if c.passed { "PASS" } else { "FAIL" },
            c.detail
        ));
    }
    s
}
