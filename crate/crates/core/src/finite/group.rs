//! Enumerated matrix groups `GL_n(q)` and `SL_n(q)` with `n^2 ≤ 16`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::gf::Gf;
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Row-major entries; only the first `n*n` are used, the rest stay zero.
pub type Mat = [u8; 16];

pub const DEFAULT_CAP: u128 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GroupKind {
    GL,
    SL,
}

impl FromStr for GroupKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "GL" => Ok(GroupKind::GL),
            "SL" => Ok(GroupKind::SL),
            _ => Err(Error::InvalidInput(format!("unknown group kind {s}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupType {
    pub kind: GroupKind,
    pub n: usize,
    pub p: u32,
    pub k: u32,
}

impl GroupType {
    pub fn new(kind: GroupKind, n: usize, p: u32, k: u32) -> Self {
        GroupType { kind, n, p, k }
    }

    pub fn gl(n: usize, p: u32, k: u32) -> Self {
        Self::new(GroupKind::GL, n, p, k)
    }

    pub fn sl(n: usize, p: u32, k: u32) -> Self {
        Self::new(GroupKind::SL, n, p, k)
    }

    /// `|GL_n(q)| = Π (q^n − q^i)`, divided by `q − 1` for `SL`.
    pub fn order(&self) -> u128 {
        let q = (self.p as u128).pow(self.k);
        let qn = q.pow(self.n as u32);
        let gl: u128 = (0..self.n as u32).map(|i| qn - q.pow(i)).product();
        match self.kind {
            GroupKind::GL => gl,
            GroupKind::SL => gl / (q - 1),
        }
    }
}

impl fmt::Display for GroupType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}_{}(F_{})", self.kind, self.n, self.p.pow(self.k))
    }
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    ty: GroupType,
    field: Gf,
    elements: Vec<Mat>,
    /// Entries packed four bits each, first entry most significant. Sorted,
    /// since packing preserves the row-major radix order of enumeration.
    codes: Vec<u64>,
}

fn pack(m: &Mat, n: usize) -> u64 {
    m[..n * n].iter().fold(0u64, |acc, &e| (acc << 4) | e as u64)
}

impl FiniteGroup {
    pub fn new(ty: GroupType) -> Result<Self> {
        Self::with_cap(ty, DEFAULT_CAP)
    }

    /// Enumerates the group, refusing when its order exceeds `cap`.
    pub fn with_cap(ty: GroupType, cap: u128) -> Result<Self> {
        let field = Gf::new(ty.p, ty.k)?;
        if ty.n == 0 || ty.n * ty.n > 16 {
            return Err(Error::InvalidInput(format!("matrix size {} out of range 1..=4", ty.n)));
        }
        let size = ty.order();
        if size > cap {
            return Err(Error::EnumerationCapExceeded { size, cap });
        }
        let n = ty.n;
        let q = field.order() as u8;
        let mut elements = Vec::with_capacity(size as usize);
        let mut m: Mat = [0; 16];
        loop {
            let keep = match ty.kind {
                GroupKind::GL => det(&field, &m, n) != 0,
                GroupKind::SL => det(&field, &m, n) == 1,
            };
            if keep {
                elements.push(m);
            }
            // increment the row-major radix counter, last entry fastest
            let mut i = n * n;
            loop {
                if i == 0 {
                    let codes = elements.iter().map(|e| pack(e, n)).collect();
                    debug_assert_eq!(elements.len() as u128, size);
                    return Ok(FiniteGroup {
                        ty,
                        field,
                        elements,
                        codes,
                    });
                }
                i -= 1;
                m[i] += 1;
                if m[i] < q {
                    break;
                }
                m[i] = 0;
            }
        }
    }

    pub fn ty(&self) -> GroupType {
        self.ty
    }

    pub fn field(&self) -> &Gf {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.ty.n
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn element(&self, id: u32) -> &Mat {
        &self.elements[id as usize]
    }

    pub fn id_of(&self, m: &Mat) -> Option<u32> {
        self.codes.binary_search(&pack(m, self.ty.n)).ok().map(|i| i as u32)
    }

    pub fn identity(&self) -> Mat {
        let mut m = [0; 16];
        for i in 0..self.ty.n {
            m[i * self.ty.n + i] = 1;
        }
        m
    }

    pub fn identity_id(&self) -> u32 {
        self.id_of(&self.identity()).expect("identity is enumerated")
    }

    pub fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        let n = self.ty.n;
        let f = &self.field;
        let mut c = [0u8; 16];
        for i in 0..n {
            for j in 0..n {
                let mut s = 0u8;
                for k in 0..n {
                    s = f.plus(s, f.times(a[i * n + k], b[k * n + j]));
                }
                c[i * n + j] = s;
            }
        }
        c
    }

    pub fn mul_id(&self, a: u32, b: u32) -> u32 {
        self.id_of(&self.mul(self.element(a), self.element(b))).expect("closed under products")
    }

    pub fn det(&self, a: &Mat) -> u8 {
        det(&self.field, a, self.ty.n)
    }

    /// Inverse by Gauss–Jordan; the input must be invertible.
    pub fn inv(&self, a: &Mat) -> Mat {
        let n = self.ty.n;
        let f = &self.field;
        let mut m = *a;
        let mut r = self.identity();
        for col in 0..n {
            let p = (col..n).find(|&i| m[i * n + col] != 0).expect("invertible");
            for j in 0..n {
                m.swap(col * n + j, p * n + j);
                r.swap(col * n + j, p * n + j);
            }
            let s = f.recip(m[col * n + col]);
            for j in 0..n {
                m[col * n + j] = f.times(m[col * n + j], s);
                r[col * n + j] = f.times(r[col * n + j], s);
            }
            for i in 0..n {
                let c = m[i * n + col];
                if i == col || c == 0 {
                    continue;
                }
                let c = f.minus(c);
                for j in 0..n {
                    m[i * n + j] = f.plus(m[i * n + j], f.times(c, m[col * n + j]));
                    r[i * n + j] = f.plus(r[i * n + j], f.times(c, r[col * n + j]));
                }
            }
        }
        r
    }

    pub fn transpose(&self, a: &Mat) -> Mat {
        let n = self.ty.n;
        let mut t = [0u8; 16];
        for i in 0..n {
            for j in 0..n {
                t[j * n + i] = a[i * n + j];
            }
        }
        t
    }

    /// Transvections `I + a E_ij`, plus `diag(ω, 1, …, 1)` for `GL`.
    pub fn generators(&self) -> Vec<Mat> {
        let n = self.ty.n;
        let q = self.field.order() as u8;
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                for a in 1..q {
                    let mut m = self.identity();
                    m[i * n + j] = a;
                    out.push(m);
                }
            }
        }
        if self.ty.kind == GroupKind::GL && q > 2 {
            let mut d = self.identity();
            d[0] = self.field.primitive();
            out.push(d);
        }
        out
    }

    pub fn to_matrix(&self, a: &Mat) -> Matrix<u8> {
        let n = self.ty.n;
        Matrix::from_fn(n, |i, j| a[i * n + j])
    }

    pub fn from_matrix(&self, m: &Matrix<u8>) -> Result<Mat> {
        let n = self.ty.n;
        if m.n() != n {
            return Err(Error::DomainMismatch(format!("expected a {n}x{n} matrix")));
        }
        let mut out = [0u8; 16];
        out[..n * n].copy_from_slice(m.entries());
        Ok(out)
    }
}

pub(crate) fn det(f: &Gf, a: &Mat, n: usize) -> u8 {
    let mut m = *a;
    let mut d = 1u8;
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| m[i * n + col] != 0) else {
            return 0;
        };
        if p != col {
            for j in 0..n {
                m.swap(col * n + j, p * n + j);
            }
            d = f.minus(d);
        }
        let piv = m[col * n + col];
        d = f.times(d, piv);
        let s = f.recip(piv);
        for i in col + 1..n {
            let c = f.times(m[i * n + col], s);
            if c == 0 {
                continue;
            }
            let c = f.minus(c);
            for j in col..n {
                m[i * n + j] = f.plus(m[i * n + j], f.times(c, m[col * n + j]));
            }
        }
    }
    d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders_match_formula() {
        for ty in [
            GroupType::gl(1, 2, 2),
            GroupType::gl(1, 3, 2),
            GroupType::gl(2, 2, 1),
            GroupType::gl(2, 3, 1),
            GroupType::sl(2, 3, 1),
            GroupType::gl(2, 2, 2),
            GroupType::gl(3, 2, 1),
            GroupType::sl(2, 5, 1),
        ] {
            let g = FiniteGroup::new(ty).unwrap();
            assert_eq!(g.order() as u128, ty.order(), "{ty}");
        }
        assert_eq!(GroupType::gl(2, 2, 2).order(), 180);
        assert_eq!(GroupType::gl(3, 2, 1).order(), 168);
        assert_eq!(GroupType::gl(2, 5, 1).order(), 480);
    }

    #[test]
    fn cap_and_ids() {
        assert_eq!(
            FiniteGroup::with_cap(GroupType::gl(2, 3, 1), 10).unwrap_err(),
            Error::EnumerationCapExceeded { size: 48, cap: 10 }
        );
        let g = FiniteGroup::new(GroupType::gl(2, 3, 1)).unwrap();
        for (i, m) in g.elements().iter().enumerate() {
            assert_eq!(g.id_of(m), Some(i as u32));
            assert_eq!(g.mul(m, &g.inv(m)), g.identity());
        }
        // ids follow the radix order: [[0,1],[1,0]] precedes [[0,1],[1,1]]
        let a = g.id_of(&[0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        let b = g.id_of(&[0, 1, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]).unwrap();
        assert!(a < b);
        assert_eq!(g.element(0), &[0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
    }

    #[test]
    fn generators_generate() {
        for ty in [GroupType::gl(2, 3, 1), GroupType::sl(2, 3, 1), GroupType::gl(1, 3, 2), GroupType::gl(2, 2, 2)] {
            let g = FiniteGroup::new(ty).unwrap();
            let gens = g.generators();
            let mut seen = vec![false; g.order()];
            let e = g.identity_id() as usize;
            seen[e] = true;
            let mut stack = vec![g.identity()];
            while let Some(x) = stack.pop() {
                for s in &gens {
                    let y = g.mul(&x, s);
                    let id = g.id_of(&y).unwrap() as usize;
                    if !seen[id] {
                        seen[id] = true;
                        stack.push(y);
                    }
                }
            }
            assert!(seen.iter().all(|&b| b), "{ty}");
        }
    }
}
