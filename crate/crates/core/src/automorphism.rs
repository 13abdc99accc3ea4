//! Field automorphisms that fix the algebraic numbers and act on each
//! generator block by an invertible linear change of variables whose
//! coefficients come from earlier blocks.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::multipoly::MultiPoly;
use crate::tower::{FieldTower, RationalFunctions, TowerElement};

#[derive(Clone, Debug)]
pub struct BlockImage {
    /// `φ(g_i) = Σ_j matrix[i][j] g_j`.
    pub matrix: Matrix<TowerElement>,
    pub inverse: Matrix<TowerElement>,
}

/// A tower together with the automorphism defined on it. Extension appends a
/// block to both at once; the version is the block count.
#[derive(Clone, Debug, Default)]
pub struct FieldState {
    tower: FieldTower,
    blocks: Vec<BlockImage>,
    forward: Vec<TowerElement>,
    backward: Vec<TowerElement>,
}

impl FieldState {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn version(&self) -> usize {
        self.tower.version()
    }

    pub fn block_images(&self) -> &[BlockImage] {
        &self.blocks
    }

    /// `φ(g_v)`.
    pub fn image_of(&self, v: u32) -> &TowerElement {
        &self.forward[v as usize]
    }

    /// `φ^{-1}(g_v)`.
    pub fn inverse_image_of(&self, v: u32) -> &TowerElement {
        &self.backward[v as usize]
    }

    /// Adjoins fresh generators `names` with `φ(g_i) = Σ_j images[i][j] g_j`.
    ///
    /// The image matrix may only mention generators that already exist and
    /// must be invertible. On error the state is left untouched.
    pub fn extend_block(&mut self, names: Vec<String>, images: Matrix<TowerElement>) -> Result<usize> {
        let m = names.len();
        if images.n() != m {
            return Err(Error::DomainMismatch(format!(
                "{} generators but a {}x{} image matrix",
                m,
                images.n(),
                images.n()
            )));
        }
        for e in images.entries() {
            self.tower.check(e)?;
        }
        let images = images.map(|e| e.retag(&self.tower));
        let inverse = images.inv(&RationalFunctions).map_err(|e| match e {
            Error::SingularMatrix => Error::SingularImageMatrix,
            other => other,
        })?;
        let mut tower = self.tower.clone();
        let start = tower.num_generators();
        tower.push_block(names)?;
        let gens: Vec<TowerElement> = (0..m as u32).map(|i| tower.gen(start + i)).collect();
        let mut forward = Vec::with_capacity(m);
        let mut backward = Vec::with_capacity(m);
        for i in 0..m {
            let mut f = TowerElement::zero();
            let mut b = TowerElement::zero();
            for (j, g) in gens.iter().enumerate() {
                f = f.add(&images.get(i, j).mul(g)?)?;
                let c = self.apply_inverse(inverse.get(i, j))?;
                b = b.add(&c.mul(g)?)?;
            }
            forward.push(f);
            backward.push(b);
        }
        self.tower = tower;
        self.forward.extend(forward);
        self.backward.extend(backward);
        self.blocks.push(BlockImage {
            matrix: images,
            inverse,
        });
        Ok(self.blocks.len() - 1)
    }

    fn substitute_element(&self, a: &TowerElement, images: &[TowerElement]) -> Result<TowerElement> {
        if a.max_var().is_none() {
            return Ok(a.clone());
        }
        self.tower.check(a).map_err(|_| self.uncovered(a))?;
        if a.max_var().is_some_and(|v| v as usize >= images.len()) {
            return Err(self.uncovered(a));
        }
        let (nn, nd) = substitute(a.num(), images)?;
        let (dn, dd) = substitute(a.den(), images)?;
        // φ(num)/φ(den) = (nn/nd) / (dn/dd)
        TowerElement::normalize(nn.mul(&dd)?, nd.mul(&dn)?, self.tower.id())
    }

    fn uncovered(&self, a: &TowerElement) -> Error {
        if a.tower_id() != 0 && a.tower_id() != self.tower.id() {
            return Error::TowerMismatch;
        }
        let v = a.max_var().unwrap_or(0);
        let name = if v < self.tower.num_generators() {
            self.tower.name(v).to_string()
        } else {
            format!("#{v}")
        };
        Error::UncoveredGenerator(name)
    }

    pub fn apply(&self, a: &TowerElement) -> Result<TowerElement> {
        self.substitute_element(a, &self.forward)
    }

    pub fn apply_inverse(&self, a: &TowerElement) -> Result<TowerElement> {
        self.substitute_element(a, &self.backward)
    }

    pub fn apply_matrix(&self, m: &Matrix<TowerElement>) -> Result<Matrix<TowerElement>> {
        m.try_map(|e| self.apply(e))
    }

    pub fn apply_inverse_matrix(&self, m: &Matrix<TowerElement>) -> Result<Matrix<TowerElement>> {
        m.try_map(|e| self.apply_inverse(e))
    }
}

/// `p(images)` as a fraction of polynomials over a common denominator.
fn substitute(p: &MultiPoly, images: &[TowerElement]) -> Result<(MultiPoly, MultiPoly)> {
    if p.is_constant() {
        return Ok((p.clone(), MultiPoly::one()));
    }
    let vars = p.vars();
    let degs: HashMap<u32, u32> = vars.iter().map(|&v| (v, p.degree_in(v))).collect();
    let plain = vars.iter().all(|&v| images[v as usize].den().is_one());
    let mut num_pows: HashMap<(u32, u32), MultiPoly> = HashMap::new();
    let mut den_pows: HashMap<(u32, u32), MultiPoly> = HashMap::new();
    let pow = |cache: &mut HashMap<(u32, u32), MultiPoly>, base: &MultiPoly, v: u32, e: u32| -> Result<MultiPoly> {
        if let Some(x) = cache.get(&(v, e)) {
            return Ok(x.clone());
        }
        let x = base.pow(e)?;
        cache.insert((v, e), x.clone());
        Ok(x)
    };
    let mut num = MultiPoly::zero();
    for (m, c) in p.terms() {
        let mut t = MultiPoly::constant(c.clone());
        for &v in &vars {
            let e = m.exp(v);
            let img = &images[v as usize];
            if e > 0 {
                t = t.mul(&pow(&mut num_pows, img.num(), v, e)?)?;
            }
            if !plain {
                let d = degs[&v] - e;
                if d > 0 {
                    t = t.mul(&pow(&mut den_pows, img.den(), v, d)?)?;
                }
            }
        }
        num = num.add(&t)?;
    }
    let mut den = MultiPoly::one();
    if !plain {
        for &v in &vars {
            den = den.mul(&pow(&mut den_pows, images[v as usize].den(), v, degs[&v])?)?;
        }
    }
    Ok((num, den))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebraic::AlgebraicNumber;
    use crate::linalg::Matrix;

    fn k(n: i64) -> TowerElement {
        TowerElement::from_int(n)
    }

    fn mat(rows: Vec<Vec<TowerElement>>) -> Matrix<TowerElement> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn scaling_generator() {
        let mut s = FieldState::new();
        s.extend_block(vec!["t".into()], mat(vec![vec![k(2)]])).unwrap();
        let t = s.tower().generator("t").unwrap();
        let a = t.add(&k(1)).unwrap().div(&t.sub(&k(1)).unwrap()).unwrap();
        let two_t = k(2).mul(&t).unwrap();
        let expect = two_t.add(&k(1)).unwrap().div(&two_t.sub(&k(1)).unwrap()).unwrap();
        assert_eq!(s.apply(&a).unwrap(), expect);
        assert_eq!(s.apply_inverse(&t).unwrap(), t.div(&k(2)).unwrap());
        let s2 = TowerElement::constant(AlgebraicNumber::sqrt_rational(&num_rational::BigRational::from_integer(2.into())).unwrap());
        assert_eq!(s.apply(&s2).unwrap(), s2);
    }

    #[test]
    fn swap_block() {
        let mut s = FieldState::new();
        s.extend_block(vec!["u".into(), "v".into()], mat(vec![vec![k(0), k(1)], vec![k(1), k(0)]]))
            .unwrap();
        let u = s.tower().generator("u").unwrap();
        let v = s.tower().generator("v").unwrap();
        let a = u.mul(&v).unwrap().add(&u).unwrap();
        assert_eq!(s.apply(&a).unwrap(), u.mul(&v).unwrap().add(&v).unwrap());
    }

    #[test]
    fn unipotent_inverse() {
        let mut s = FieldState::new();
        s.extend_block(vec!["u".into(), "v".into()], mat(vec![vec![k(1), k(1)], vec![k(0), k(1)]]))
            .unwrap();
        let u = s.tower().generator("u").unwrap();
        let v = s.tower().generator("v").unwrap();
        assert_eq!(s.apply_inverse(&u).unwrap(), u.sub(&v).unwrap());
    }

    #[test]
    fn singular_and_collisions() {
        let mut s = FieldState::new();
        assert_eq!(
            s.extend_block(vec!["u".into(), "v".into()], mat(vec![vec![k(1), k(1)], vec![k(1), k(1)]])),
            Err(Error::SingularImageMatrix)
        );
        assert_eq!(s.version(), 0);
        s.extend_block(vec!["u".into()], mat(vec![vec![k(3)]])).unwrap();
        assert_eq!(
            s.extend_block(vec!["u".into()], mat(vec![vec![k(3)]])),
            Err(Error::NameCollision("u".into()))
        );
    }

    #[test]
    fn coefficients_from_earlier_blocks() {
        let mut s = FieldState::new();
        s.extend_block(vec!["x".into()], mat(vec![vec![k(2)]])).unwrap();
        let x = s.tower().generator("x").unwrap();
        // φ(y) = x^{-1} y
        s.extend_block(vec!["y".into()], mat(vec![vec![x.inv().unwrap()]])).unwrap();
        let y = s.tower().generator("y").unwrap();
        let py = s.apply(&y).unwrap();
        assert_eq!(y.div(&py).unwrap(), x);
        // round trips
        let e = x.add(&y).unwrap().div(&x.mul(&y).unwrap().add(&k(1)).unwrap()).unwrap();
        assert_eq!(s.apply_inverse(&s.apply(&e).unwrap()).unwrap(), e);
        assert_eq!(s.apply(&s.apply_inverse(&e).unwrap()).unwrap(), e);
    }

    #[test]
    fn uncovered_generator() {
        let mut s = FieldState::new();
        s.extend_block(vec!["x".into()], mat(vec![vec![k(2)]])).unwrap();
        let mut other = FieldState::new();
        other.extend_block(vec!["z".into()], mat(vec![vec![k(2)]])).unwrap();
        let z = other.tower().generator("z").unwrap();
        assert_eq!(s.apply(&z), Err(Error::TowerMismatch));
    }
}
