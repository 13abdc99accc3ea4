//! Automorphisms of enumerated matrix groups: entrywise Frobenius powers,
//! inner automorphisms, the transpose-inverse map, and compositions.
//!
//! Descriptor syntax: `id`, `frobenius:<f>`, `inner:<element id>`,
//! `transpose-inverse`, or `compose:<d1>,<d2>,…` meaning `d1 ∘ d2 ∘ …`
//! (the last one acts first).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gf::Gf;
use super::group::{FiniteGroup, Mat};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::twisted::MatrixAutomorphism;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "camelCase")]
pub enum AutoStep {
    Frobenius { power: u32 },
    Inner { element: u32 },
    TransposeInverse,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AutoDescriptor {
    /// Applied right to left.
    pub steps: Vec<AutoStep>,
}

impl AutoDescriptor {
    pub fn identity() -> Self {
        Self::default()
    }

    pub fn frobenius(power: u32) -> Self {
        AutoDescriptor {
            steps: vec![AutoStep::Frobenius { power }],
        }
    }

    pub fn inner(element: u32) -> Self {
        AutoDescriptor {
            steps: vec![AutoStep::Inner { element }],
        }
    }

    pub fn compose(parts: &[AutoDescriptor]) -> Self {
        AutoDescriptor {
            steps: parts.iter().flat_map(|d| d.steps.iter().copied()).collect(),
        }
    }

    pub fn is_exploratory(&self) -> bool {
        self.steps.contains(&AutoStep::TransposeInverse)
    }
}

fn parse_step(s: &str) -> Result<Vec<AutoStep>> {
    let bad = || Error::InvalidAutomorphism(s.to_string());
    let (head, arg) = s.split_once(':').unwrap_or((s, ""));
    match head {
        "id" if arg.is_empty() => Ok(vec![]),
        "frobenius" => Ok(vec![AutoStep::Frobenius {
            power: arg.parse().map_err(|_| bad())?,
        }]),
        "inner" => Ok(vec![AutoStep::Inner {
            element: arg.parse().map_err(|_| bad())?,
        }]),
        "transpose-inverse" if arg.is_empty() => Ok(vec![AutoStep::TransposeInverse]),
        _ => Err(bad()),
    }
}

impl FromStr for AutoDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let steps = match s.strip_prefix("compose:") {
            Some(rest) => {
                let mut steps = Vec::new();
                for part in rest.split(',') {
                    steps.extend(parse_step(part.trim())?);
                }
                steps
            }
            None => parse_step(s)?,
        };
        Ok(AutoDescriptor { steps })
    }
}

impl fmt::Display for AutoStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AutoStep::Frobenius { power } => write!(f, "frobenius:{power}"),
            AutoStep::Inner { element } => write!(f, "inner:{element}"),
            AutoStep::TransposeInverse => write!(f, "transpose-inverse"),
        }
    }
}

impl fmt::Display for AutoDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.steps.as_slice() {
            [] => write!(f, "id"),
            [one] => write!(f, "{one}"),
            many => {
                write!(f, "compose:")?;
                for (i, s) in many.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{s}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug)]
enum Bound {
    Frobenius(u32),
    Inner(Mat, Mat),
    TransposeInverse,
}

/// A descriptor resolved against a concrete group.
#[derive(Clone, Debug)]
pub struct FiniteAutomorphism<'g> {
    group: &'g FiniteGroup,
    descriptor: AutoDescriptor,
    steps: Vec<Bound>,
}

impl<'g> FiniteAutomorphism<'g> {
    pub fn new(group: &'g FiniteGroup, descriptor: &AutoDescriptor) -> Result<Self> {
        let steps = descriptor
            .steps
            .iter()
            .map(|s| match *s {
                AutoStep::Frobenius { power } => Ok(Bound::Frobenius(power)),
                AutoStep::Inner { element } => {
                    if element as usize >= group.order() {
                        return Err(Error::InvalidAutomorphism(format!(
                            "inner:{element} is not an element id below {}",
                            group.order()
                        )));
                    }
                    let g = *group.element(element);
                    Ok(Bound::Inner(g, group.inv(&g)))
                }
                AutoStep::TransposeInverse => Ok(Bound::TransposeInverse),
            })
            .collect::<Result<_>>()?;
        Ok(FiniteAutomorphism {
            group,
            descriptor: descriptor.clone(),
            steps,
        })
    }

    pub fn descriptor(&self) -> &AutoDescriptor {
        &self.descriptor
    }

    pub fn group(&self) -> &FiniteGroup {
        self.group
    }

    pub fn apply(&self, x: &Mat) -> Mat {
        let g = self.group;
        let n = g.n();
        let mut y = *x;
        for s in self.steps.iter().rev() {
            y = match s {
                Bound::Frobenius(f) => {
                    let mut z = y;
                    for e in z[..n * n].iter_mut() {
                        *e = g.field().frobenius(*e, *f);
                    }
                    z
                }
                Bound::Inner(a, a_inv) => g.mul(&g.mul(a, &y), a_inv),
                Bound::TransposeInverse => g.inv(&g.transpose(&y)),
            };
        }
        y
    }

    pub fn apply_id(&self, x: u32) -> u32 {
        self.group
            .id_of(&self.apply(self.group.element(x)))
            .expect("automorphism preserves the group")
    }

    /// The map induced on `F_q^*` through the determinant,
    /// `a ↦ det φ(diag(a, 1, …, 1))`.
    pub fn on_determinant(&self, a: u8) -> u8 {
        let mut d = self.group.identity();
        d[0] = a;
        self.group.det(&self.apply(&d))
    }
}

impl MatrixAutomorphism<Gf> for FiniteAutomorphism<'_> {
    fn apply(&self, m: &Matrix<u8>) -> Result<Matrix<u8>> {
        let x = self.group.from_matrix(m)?;
        if self.group.det(&x) == 0 {
            return Err(Error::SingularMatrix);
        }
        Ok(self.group.to_matrix(&FiniteAutomorphism::apply(self, &x)))
    }
}
