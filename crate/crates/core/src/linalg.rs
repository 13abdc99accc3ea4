//! Dense square matrices over any [`Field`] context.

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

/// Univariate polynomial over a scalar domain, constant term first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly<T> {
    pub coeffs: Vec<T>,
}

impl<T> UniPoly<T> {
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        Matrix { n, data }
    }

    pub fn try_from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Result<T>) -> Result<Self> {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j)?);
            }
        }
        Ok(Matrix { n, data })
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::DomainMismatch("matrix is not square".into()));
        }
        Ok(Matrix {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[T] {
        &self.data
    }

    pub fn rows(&self) -> Vec<Vec<T>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<U: Clone>(&self, f: impl FnMut(&T) -> Result<U>) -> Result<Matrix<U>> {
        Ok(Matrix {
            n: self.n,
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn same_size(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DomainMismatch(format!("{}x{} vs {}x{}", self.n, self.n, other.n, other.n)));
        }
        Ok(())
    }
}

impl<T: Clone + PartialEq + std::fmt::Debug + Send + Sync> Matrix<T> {
    pub fn identity<F: Field<Elem = T>>(f: &F, n: usize) -> Self {
        Matrix::from_fn(n, |i, j| if i == j { f.one() } else { f.zero() })
    }

    pub fn diagonal<F: Field<Elem = T>>(f: &F, d: &[T]) -> Self {
        Matrix::from_fn(d.len(), |i, j| if i == j { d[i].clone() } else { f.zero() })
    }

    pub fn diagonal_entries(&self) -> Vec<T> {
        (0..self.n).map(|i| self.get(i, i).clone()).collect()
    }

    /// Off-diagonal entries zero (diagonal entries may be anything).
    pub fn is_diagonal<F: Field<Elem = T>>(&self, f: &F) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || f.is_zero(self.get(i, j))))
    }

    pub fn is_identity<F: Field<Elem = T>>(&self, f: &F) -> bool {
        self.is_diagonal(f) && (0..self.n).all(|i| f.is_one(self.get(i, i)))
    }

    pub fn add<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Matrix::try_from_fn(self.n, |i, j| f.add(self.get(i, j), other.get(i, j)))
    }

    pub fn sub<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        Matrix::try_from_fn(self.n, |i, j| f.sub(self.get(i, j), other.get(i, j)))
    }

    pub fn scale<F: Field<Elem = T>>(&self, f: &F, c: &T) -> Result<Self> {
        self.try_map(|x| f.mul(x, c))
    }

    pub fn mul<F: Field<Elem = T>>(&self, f: &F, other: &Self) -> Result<Self> {
        self.same_size(other)?;
        let n = self.n;
        Matrix::try_from_fn(n, |i, j| {
            let mut acc = f.zero();
            for k in 0..n {
                let (a, b) = (self.get(i, k), other.get(k, j));
                if f.is_zero(a) || f.is_zero(b) {
                    continue;
                }
                acc = f.add(&acc, &f.mul(a, b)?)?;
            }
            Ok(acc)
        })
    }

    pub fn mul_vec<F: Field<Elem = T>>(&self, f: &F, v: &[T]) -> Result<Vec<T>> {
        (0..self.n)
            .map(|i| {
                let mut acc = f.zero();
                for (k, x) in v.iter().enumerate() {
                    acc = f.add(&acc, &f.mul(self.get(i, k), x)?)?;
                }
                Ok(acc)
            })
            .collect()
    }

    /// Gauss–Jordan inverse; the pivot is the first nonzero entry by row order.
    pub fn inv<F: Field<Elem = T>>(&self, f: &F) -> Result<Self> {
        let n = self.n;
        let mut a = self.rows();
        let mut b = Matrix::identity(f, n).rows();
        for col in 0..n {
            let p = (col..n).find(|&r| !f.is_zero(&a[r][col])).ok_or(Error::SingularMatrix)?;
            a.swap(col, p);
            b.swap(col, p);
            let pinv = f.inv(&a[col][col])?;
            for j in 0..n {
                a[col][j] = f.mul(&a[col][j], &pinv)?;
                b[col][j] = f.mul(&b[col][j], &pinv)?;
            }
            for r in 0..n {
                if r == col || f.is_zero(&a[r][col]) {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in 0..n {
                    if !f.is_zero(&a[col][j]) {
                        a[r][j] = f.sub(&a[r][j], &f.mul(&factor, &a[col][j])?)?;
                    }
                    if !f.is_zero(&b[col][j]) {
                        b[r][j] = f.sub(&b[r][j], &f.mul(&factor, &b[col][j])?)?;
                    }
                }
            }
        }
        Matrix::from_rows(b)
    }

    /// Determinant by elimination.
    pub fn det<F: Field<Elem = T>>(&self, f: &F) -> Result<T> {
        let n = self.n;
        let mut a = self.rows();
        let mut det = f.one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !f.is_zero(&a[r][col])) else {
                return Ok(f.zero());
            };
            if p != col {
                a.swap(col, p);
                det = f.neg(&det);
            }
            det = f.mul(&det, &a[col][col])?;
            let pinv = f.inv(&a[col][col])?;
            for r in col + 1..n {
                if f.is_zero(&a[r][col]) {
                    continue;
                }
                let factor = f.mul(&a[r][col], &pinv)?;
                for j in col..n {
                    a[r][j] = f.sub(&a[r][j], &f.mul(&factor, &a[col][j])?)?;
                }
            }
        }
        Ok(det)
    }

    /// Determinant without divisions, read off the characteristic polynomial.
    pub fn det_division_free<F: Field<Elem = T>>(&self, f: &F) -> Result<T> {
        let p = self.charpoly(f)?;
        let c = p.coeffs[0].clone();
        Ok(if self.n % 2 == 1 { f.neg(&c) } else { c })
    }

    /// `det(λI − M)` by Berkowitz's division-free algorithm.
    pub fn charpoly<F: Field<Elem = T>>(&self, f: &F) -> Result<UniPoly<T>> {
        let n = self.n;
        if n == 0 {
            return Ok(UniPoly { coeffs: vec![f.one()] });
        }
        // coefficients highest degree first
        let mut vect = vec![f.one(), f.neg(self.get(0, 0))];
        for r in 1..n {
            // column C = M[0..r][r], row R = M[r][0..r]
            let mut powc: Vec<T> = (0..r).map(|i| self.get(i, r).clone()).collect();
            let mut t = Vec::with_capacity(r + 2);
            t.push(f.one());
            t.push(f.neg(self.get(r, r)));
            for k in 0..r {
                // R * M_r^k * C
                let mut s = f.zero();
                for (j, c) in powc.iter().enumerate() {
                    s = f.add(&s, &f.mul(self.get(r, j), c)?)?;
                }
                t.push(f.neg(&s));
                if k + 1 < r {
                    let next: Vec<T> = (0..r)
                        .map(|i| {
                            let mut acc = f.zero();
                            for (j, c) in powc.iter().enumerate() {
                                acc = f.add(&acc, &f.mul(self.get(i, j), c)?)?;
                            }
                            Ok(acc)
                        })
                        .collect::<Result<_>>()?;
                    powc = next;
                }
            }
            // Toeplitz (r+2) x (r+1) times vect
            let mut next = Vec::with_capacity(r + 2);
            for i in 0..r + 2 {
                let mut acc = f.zero();
                for (j, v) in vect.iter().enumerate() {
                    if i >= j {
                        acc = f.add(&acc, &f.mul(&t[i - j], v)?)?;
                    }
                }
                next.push(acc);
            }
            vect = next;
        }
        vect.reverse();
        Ok(UniPoly { coeffs: vect })
    }

    /// Basis of the kernel from the reduced row echelon form.
    pub fn nullspace<F: Field<Elem = T>>(&self, f: &F) -> Result<Vec<Vec<T>>> {
        let n = self.n;
        let mut a = self.rows();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&r| !f.is_zero(&a[r][col])) else {
                continue;
            };
            a.swap(row, p);
            let pinv = f.inv(&a[row][col])?;
            for j in col..n {
                a[row][j] = f.mul(&a[row][j], &pinv)?;
            }
            for r in 0..n {
                if r == row || f.is_zero(&a[r][col]) {
                    continue;
                }
                let factor = a[r][col].clone();
                for j in col..n {
                    a[r][j] = f.sub(&a[r][j], &f.mul(&factor, &a[row][j])?)?;
                }
            }
            pivots.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        let mut basis = Vec::new();
        for free in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![f.zero(); n];
            v[free] = f.one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(&a[i][free]);
            }
            basis.push(v);
        }
        Ok(basis)
    }
}

impl<T: Clone + PartialEq + std::fmt::Debug + Send + Sync> UniPoly<T> {
    /// `p(M)` by Horner's rule.
    pub fn eval_matrix<F: Field<Elem = T>>(&self, f: &F, m: &Matrix<T>) -> Result<Matrix<T>> {
        let n = m.n();
        let mut acc = Matrix::from_fn(n, |_, _| f.zero());
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(f, m)?;
            for i in 0..n {
                let v = f.add(acc.get(i, i), c)?;
                acc.set(i, i, v);
            }
        }
        Ok(acc)
    }

    pub fn derivative<F: Field<Elem = T>>(&self, f: &F) -> Result<Self> {
        let mut coeffs = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate().skip(1) {
            coeffs.push(f.mul(c, &f.from_i64(i as i64))?);
        }
        while coeffs.last().is_some_and(|c| f.is_zero(c)) {
            coeffs.pop();
        }
        Ok(UniPoly { coeffs })
    }
}

/// `Res(p, q)` as the determinant of the Sylvester matrix.
pub fn resultant<F: Field>(f: &F, p: &UniPoly<F::Elem>, q: &UniPoly<F::Elem>) -> Result<F::Elem> {
    if p.coeffs.is_empty() || q.coeffs.is_empty() {
        return Ok(f.zero());
    }
    let (m, k) = (p.degree(), q.degree());
    let size = m + k;
    if size == 0 {
        return Ok(f.one());
    }
    let mut rows = vec![vec![f.zero(); size]; size];
    for (i, row) in rows.iter_mut().enumerate().take(k) {
        for (d, c) in p.coeffs.iter().rev().enumerate() {
            row[i + d] = c.clone();
        }
    }
    for (i, row) in rows.iter_mut().skip(k).enumerate() {
        for (d, c) in q.coeffs.iter().rev().enumerate() {
            row[i + d] = c.clone();
        }
    }
    Matrix::from_rows(rows)?.det(f)
}

/// `(−1)^(n(n−1)/2) Res(p, p′) / lc(p)`; zero iff `p` has a repeated root.
pub fn discriminant<F: Field>(f: &F, p: &UniPoly<F::Elem>) -> Result<F::Elem> {
    let n = p.degree();
    if n == 0 {
        return Err(Error::InvalidInput("discriminant of a constant".into()));
    }
    let dp = p.derivative(f)?;
    if dp.coeffs.is_empty() {
        return Ok(f.zero());
    }
    let mut r = resultant(f, p, &dp)?;
    // the Sylvester matrix uses the true degree of p′, which may drop in
    // positive characteristic; for monic p the formula is unaffected
    r = f.div(&r, p.coeffs.last().expect("nonempty"))?;
    if (n * (n - 1) / 2) % 2 == 1 {
        r = f.neg(&r);
    }
    Ok(r)
}
