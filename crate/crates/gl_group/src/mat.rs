//! Square matrices over F. The same type serves as a Lie algebra element;
//! [`GroupElement`] adds the invertibility check.

use std::fmt;
use std::ops::Deref;

use local_field::{FieldElement, Valuation};
use poly_lab::linalg;

use crate::GroupError;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    p: u8,
    n: usize,
    e: Vec<FieldElement>,
}

/// Elements of the Lie algebra gl_n(F).
pub type LieElement = Mat;

impl Mat {
    pub fn zero(p: u8, n: usize) -> Self {
        Self { p, n, e: vec![FieldElement::zero(p); n * n] }
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let mut m = Self::zero(p, n);
        for i in 0..n {
            m.e[i * n + i] = FieldElement::one(p);
        }
        m
    }

    pub fn scalar(n: usize, z: &FieldElement) -> Self {
        Self::diag(&vec![z.clone(); n])
    }

    pub fn diag(d: &[FieldElement]) -> Self {
        let p = d[0].prime();
        let n = d.len();
        let mut m = Self::zero(p, n);
        for (i, x) in d.iter().enumerate() {
            m.e[i * n + i] = x.clone();
        }
        m
    }

    /// diag(t^m_1, ..., t^m_n).
    pub fn t_diag(p: u8, exps: &[i64]) -> Self {
        Self::diag(&exps.iter().map(|&k| FieldElement::t_pow(p, k)).collect::<Vec<_>>())
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix expected");
        let p = rows[0][0].prime();
        Self { p, n, e: rows.into_iter().flatten().collect() }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<FieldElement>]) -> Self {
        let n = cols.len();
        let p = cols[0][0].prime();
        let mut m = Self::zero(p, n);
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.e[i * n + j] = x.clone();
            }
        }
        m
    }

    pub fn prime(&self) -> u8 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: FieldElement) {
        self.e[i * self.n + j] = x;
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.e
    }

    pub fn rows(&self) -> Vec<Vec<FieldElement>> {
        self.e.chunks(self.n).map(<[_]>::to_vec).collect()
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.n).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { p: self.p, n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { p: self.p, n: self.n, e: self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self { p: self.p, n: self.n, e: self.e.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zero(self.p, n);
        for i in 0..n {
            for k in 0..n {
                let a = &self.e[i * n + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &o.e[k * n + j];
                    if !b.is_zero() {
                        out.e[i * n + j] = &out.e[i * n + j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        (0..self.n)
            .map(|i| (0..self.n).fold(FieldElement::zero(self.p), |acc, j| &acc + &(self.get(i, j) * &v[j])))
            .collect()
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::identity(self.p, self.n), |acc, _| acc.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut out = Self::zero(self.p, n);
        for i in 0..n {
            for j in 0..n {
                out.e[j * n + i] = self.e[i * n + j].clone();
            }
        }
        out
    }

    pub fn det(&self) -> FieldElement {
        match self.n {
            1 => self.e[0].clone(),
            2 => &(&self.e[0] * &self.e[3]) - &(&self.e[1] * &self.e[2]),
            _ => linalg::det(self.p, &self.rows()),
        }
    }

    pub fn trace(&self) -> FieldElement {
        (0..self.n).fold(FieldElement::zero(self.p), |acc, i| &acc + self.get(i, i))
    }

    /// Inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<Self, GroupError> {
        let n = self.n;
        if n == 2 {
            let d = self.det();
            if d.is_zero() {
                return Err(GroupError::Singular);
            }
            let di = d.inv();
            let e = &self.e;
            return Ok(Self { p: self.p, n, e: vec![&e[3] * &di, -&(&e[1] * &di), -&(&e[2] * &di), &e[0] * &di] });
        }
        let mut a = self.rows();
        let mut inv = Self::identity(self.p, n).rows();
        for col in 0..n {
            let piv = (col..n).find(|&r| !a[r][col].is_zero()).ok_or(GroupError::Singular)?;
            a.swap(piv, col);
            inv.swap(piv, col);
            let s = a[col][col].inv();
            for c in 0..n {
                a[col][c] = &a[col][c] * &s;
                inv[col][c] = &inv[col][c] * &s;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for c in 0..n {
                    a[r][c] = &a[r][c] - &(&f * &a[col][c]);
                    inv[r][c] = &inv[r][c] - &(&f * &inv[col][c]);
                }
            }
        }
        Ok(Self::from_rows(inv))
    }

    /// Smallest entry valuation (Infinity for the zero matrix).
    pub fn min_valuation(&self) -> Valuation {
        self.e.iter().map(FieldElement::valuation).min().unwrap_or(Valuation::Infinity)
    }

    /// max_ij(-val x_ij), i.e. the log-norm of the matrix before clamping.
    pub fn max_neg_valuation(&self) -> Option<i64> {
        self.min_valuation().finite().map(|v| -v)
    }

    /// All entries in O.
    pub fn is_integral(&self) -> bool {
        self.min_valuation() >= Valuation::Finite(0)
    }

    /// Entries of self - I lie in t^j O.
    pub fn is_congruent_to_identity(&self, j: i64) -> bool {
        self.sub(&Self::identity(self.p, self.n)).min_valuation() >= Valuation::Finite(j)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn is_scalar(&self) -> bool {
        self.is_diagonal() && (1..self.n).all(|i| self.get(i, i) == self.get(0, 0))
    }

    /// Entrywise truncation mod t^k.
    pub fn truncate(&self, k: i64) -> Self {
        Self { p: self.p, n: self.n, e: self.e.iter().map(|a| a.truncate(k)).collect() }
    }

    /// Entrywise reduction mod t of an integral matrix.
    pub fn residue(&self) -> Vec<u8> {
        self.e.iter().map(FieldElement::residue).collect()
    }

    /// g self g^-1.
    pub fn conjugate_by(&self, g: &GroupElement) -> Self {
        g.matrix().mul(self).mul(g.inv())
    }

    /// The bracket [self, o] = self o - o self.
    pub fn bracket(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.e.chunks(self.n).enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
        }
        write!(f, "]")
    }
}

/// An invertible matrix, with its inverse and determinant kept alongside.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    m: Mat,
    inv: Mat,
    det: FieldElement,
}

impl GroupElement {
    pub fn new(m: Mat) -> Result<Self, GroupError> {
        let det = m.det();
        if det.is_zero() {
            return Err(GroupError::Singular);
        }
        let inv = m.inverse()?;
        Ok(Self { m, inv, det })
    }

    pub fn identity(p: u8, n: usize) -> Self {
        let m = Mat::identity(p, n);
        Self { inv: m.clone(), det: FieldElement::one(p), m }
    }

    pub fn diag(d: &[FieldElement]) -> Result<Self, GroupError> {
        Self::new(Mat::diag(d))
    }

    pub fn t_diag(p: u8, exps: &[i64]) -> Self {
        let m = Mat::t_diag(p, exps);
        let inv = Mat::t_diag(p, &exps.iter().map(|k| -k).collect::<Vec<_>>());
        Self { m, inv, det: FieldElement::t_pow(p, exps.iter().sum()) }
    }

    pub fn from_rows(rows: Vec<Vec<FieldElement>>) -> Result<Self, GroupError> {
        Self::new(Mat::from_rows(rows))
    }

    pub fn matrix(&self) -> &Mat {
        &self.m
    }

    pub fn into_matrix(self) -> Mat {
        self.m
    }

    pub fn inv(&self) -> &Mat {
        &self.inv
    }

    pub fn inverse(&self) -> Self {
        Self { m: self.inv.clone(), inv: self.m.clone(), det: self.det.inv() }
    }

    pub fn det(&self) -> &FieldElement {
        &self.det
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self { m: self.m.mul(&o.m), inv: o.inv.mul(&self.inv), det: &self.det * &o.det }
    }

    /// g self g^-1.
    pub fn conjugate(&self, g: &Self) -> Self {
        g.mul(self).mul(&g.inverse())
    }

    /// Membership in K_0 = GL_n(O).
    pub fn in_k0(&self) -> bool {
        self.m.is_integral() && self.det.val() == 0
    }

    /// Membership in K_j (j >= 1), or K_0 for j = 0.
    pub fn in_k(&self, j: i64) -> bool {
        if j == 0 {
            self.in_k0()
        } else {
            self.m.is_congruent_to_identity(j)
        }
    }
}

impl Deref for GroupElement {
    type Target = Mat;
    fn deref(&self) -> &Mat {
        &self.m
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.m)
    }
}
