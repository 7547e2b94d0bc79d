//! Dense linear algebra over F by Gaussian elimination.

use local_field::FieldElement;

/// Determinant of a square matrix (rows). The empty matrix has determinant 1.
pub fn det(p: u8, rows: &[Vec<FieldElement>]) -> FieldElement {
    let n = rows.len();
    let mut a: Vec<Vec<FieldElement>> = rows.to_vec();
    let mut acc = FieldElement::one(p);
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return FieldElement::zero(p);
        };
        if piv != col {
            a.swap(piv, col);
            acc = -acc;
        }
        let inv = a[col][col].inv();
        acc = &acc * &a[col][col];
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] * &inv;
            for c in col..n {
                let sub = &f * &a[col][c];
                a[r][c] = &a[r][c] - &sub;
            }
        }
    }
    acc
}

/// Solves A x = b for square invertible A; `None` when A is singular.
pub fn solve(a: &[Vec<FieldElement>], b: &[FieldElement]) -> Option<Vec<FieldElement>> {
    let n = a.len();
    let mut m: Vec<Vec<FieldElement>> = a.iter().zip(b).map(|(row, bi)| {
        let mut r = row.clone();
        r.push(bi.clone());
        r
    }).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(piv, col);
        let inv = m[col][col].inv();
        for c in col..=n {
            m[col][c] = &m[col][c] * &inv;
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let f = m[r][col].clone();
            for c in col..=n {
                let sub = &f * &m[col][c];
                m[r][c] = &m[r][c] - &sub;
            }
        }
    }
    Some(m.into_iter().map(|r| r[n].clone()).collect())
}
