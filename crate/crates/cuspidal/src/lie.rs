//! Cuspidal functions on gl_2(F_q) found as a rational null space, and their
//! inflation to the Lie algebra over F.
//!
//! Unknowns are the values on GL_2(F_q)-conjugacy classes of gl_2(F_q);
//! constraints are the coset sums over every nilradical line (q + 1 Borels).

use haar::functions::{gl2_residues, residue_inverse, residue_matrices, residue_mul, table_index};
use haar::InflatedLieFunction;
use local_field::{Cyc, Q};

use crate::CuspidalError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLieCuspidal {
    pub q: u8,
    /// Values indexed by `table_index`.
    pub values: Vec<Q>,
    /// Dimension of the null space the values were taken from.
    pub null_dim: usize,
}

fn add(a: [u8; 4], b: [u8; 4], q: u8) -> [u8; 4] {
    [0, 1, 2, 3].map(|k| (a[k] + b[k]) % q)
}

fn scale(c: u8, a: [u8; 4], q: u8) -> [u8; 4] {
    a.map(|x| ((c as u16 * x as u16) % q as u16) as u8)
}

/// One nonzero nilpotent N per line, first nonzero entry 1.
pub fn nilradical_lines(q: u8) -> Vec<[u8; 4]> {
    residue_matrices(q)
        .into_iter()
        .filter(|&n| n != [0; 4] && residue_mul(n, n, q) == [0; 4])
        .filter(|n| n.iter().copied().find(|&x| x != 0) == Some(1))
        .collect()
}

/// Conjugacy class label of each element of gl_2(F_q).
fn class_labels(q: u8) -> (Vec<usize>, usize) {
    let all = residue_matrices(q);
    let group = gl2_residues(q);
    let mut label = vec![usize::MAX; all.len()];
    let mut classes = 0;
    for &x in &all {
        if label[table_index(x, q)] != usize::MAX {
            continue;
        }
        for &g in &group {
            let y = residue_mul(residue_mul(g, x, q), residue_inverse(g, q), q);
            label[table_index(y, q)] = classes;
        }
        classes += 1;
    }
    (label, classes)
}

/// Basis of the null space of `rows` over Q, by reduced row echelon form.
pub fn null_space(rows: &[Vec<Q>], cols: usize) -> Vec<Vec<Q>> {
    let zero = Q::from_integer(0);
    let mut m: Vec<Vec<Q>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..m.len()).find(|&i| m[i][c] != zero) else { continue };
        m.swap(r, piv);
        let inv = Q::from_integer(1) / m[r][c];
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..m.len() {
            if i != r && m[i][c] != zero {
                let f = m[i][c];
                for k in 0..cols {
                    let sub = f * m[r][k];
                    m[i][k] -= sub;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![zero; cols];
            v[free] = Q::from_integer(1);
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free];
            }
            v
        })
        .collect()
}

pub fn finite_lie_cuspidal(q: u8) -> Result<FiniteLieCuspidal, CuspidalError> {
    if !matches!(q, 2 | 3) {
        return Err(CuspidalError::UnsupportedPrime(q));
    }
    let (label, classes) = class_labels(q);
    let mut rows = Vec::new();
    for n in nilradical_lines(q) {
        for x in residue_matrices(q) {
            let mut row = vec![Q::from_integer(0); classes];
            for c in 0..q {
                row[label[table_index(add(x, scale(c, n, q), q), q)]] += Q::from_integer(1);
            }
            rows.push(row);
        }
    }
    let basis = null_space(&rows, classes);
    let v = basis.first().ok_or(CuspidalError::NullSpaceEmpty)?;
    let values = residue_matrices(q).into_iter().map(|x| v[label[table_index(x, q)]]).collect();
    Ok(FiniteLieCuspidal { q, values, null_dim: basis.len() })
}

impl FiniteLieCuspidal {
    pub fn value(&self, x: [u8; 4]) -> Q {
        self.values[table_index(x, self.q)]
    }

    /// Largest absolute coset sum over all nilradical lines and cosets.
    pub fn max_coset_sum(&self) -> Q {
        let q = self.q;
        let mut worst = Q::from_integer(0);
        for n in nilradical_lines(q) {
            for x in residue_matrices(q) {
                let s: Q = (0..q).map(|c| self.value(add(x, scale(c, n, q), q))).sum();
                worst = worst.max(if s < Q::from_integer(0) { -s } else { s });
            }
        }
        worst
    }

    /// F(z I + Y) = f(Y mod t) on F I + M_2(O), 0 elsewhere.
    pub fn inflate(&self) -> InflatedLieFunction {
        InflatedLieFunction::new(self.q, self.values.iter().map(|&v| Cyc::from_rational(v)).collect())
    }
}
