//! Cartan decomposition x = k1 a k2 through Smith normal form over O.

use local_field::FieldElement;

use crate::mat::{GroupElement, Mat};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cartan {
    pub k1: GroupElement,
    /// Exponents m_1 <= ... <= m_n with a = diag(t^m_i).
    pub exponents: Vec<i64>,
    pub k2: GroupElement,
}

impl Cartan {
    pub fn a(&self, p: u8) -> GroupElement {
        GroupElement::t_diag(p, &self.exponents)
    }

    /// ov_G from the Cartan exponents: max(-m_1, sum m_i), clamped at 0.
    pub fn ov(&self) -> i64 {
        let sum: i64 = self.exponents.iter().sum();
        (-self.exponents[0]).max(sum).max(0)
    }
}

fn swap_rows(m: &mut Mat, a: usize, b: usize) {
    for j in 0..m.dim() {
        let x = m.get(a, j).clone();
        m.set(a, j, m.get(b, j).clone());
        m.set(b, j, x);
    }
}

fn swap_cols(m: &mut Mat, a: usize, b: usize) {
    for i in 0..m.dim() {
        let x = m.get(i, a).clone();
        m.set(i, a, m.get(i, b).clone());
        m.set(i, b, x);
    }
}

/// row_dst += c * row_src.
fn add_row(m: &mut Mat, dst: usize, src: usize, c: &FieldElement) {
    for j in 0..m.dim() {
        let v = m.get(dst, j) + &(c * m.get(src, j));
        m.set(dst, j, v);
    }
}

/// col_dst += c * col_src.
fn add_col(m: &mut Mat, dst: usize, src: usize, c: &FieldElement) {
    for i in 0..m.dim() {
        let v = m.get(i, dst) + &(c * m.get(i, src));
        m.set(i, dst, v);
    }
}

/// Smith normal form over the valuation ring with minimal-valuation pivots
/// (ties: lowest row, then lowest column). Returns k1, k2 in GL_n(O) and
/// sorted exponents with x = k1 diag(t^m) k2 exactly.
pub fn smith_cartan(x: &GroupElement) -> Cartan {
    let p = x.prime();
    let n = x.dim();
    let mut a = x.matrix().clone();
    // invariant: x = l * a * r
    let mut l = Mat::identity(p, n);
    let mut r = Mat::identity(p, n);
    for s in 0..n {
        let mut best: Option<(i64, usize, usize)> = None;
        for i in s..n {
            for j in s..n {
                if let Some(v) = a.get(i, j).valuation().finite() {
                    if best.map_or(true, |(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
        }
        let (_, pi, pj) = best.expect("invertible matrix keeps a nonzero pivot");
        if pi != s {
            swap_rows(&mut a, pi, s);
            swap_cols(&mut l, pi, s);
        }
        if pj != s {
            swap_cols(&mut a, pj, s);
            swap_rows(&mut r, pj, s);
        }
        let piv_inv = a.get(s, s).inv();
        for i in s + 1..n {
            if a.get(i, s).is_zero() {
                continue;
            }
            let c = a.get(i, s) * &piv_inv;
            add_row(&mut a, i, s, &-&c);
            // a' = E a with E = I - c e_is, so l' = l E^-1 = l (I + c e_is)
            add_col(&mut l, s, i, &c);
        }
        for j in s + 1..n {
            if a.get(s, j).is_zero() {
                continue;
            }
            let c = a.get(s, j) * &piv_inv;
            add_col(&mut a, j, s, &-&c);
            add_row(&mut r, s, j, &c);
        }
    }
    let mut exps = Vec::with_capacity(n);
    for s in 0..n {
        let d = a.get(s, s).clone();
        let m = d.val();
        let unit = &d * &FieldElement::t_pow(p, -m);
        // push the unit into l's column s
        for i in 0..n {
            let v = l.get(i, s) * &unit;
            l.set(i, s, v);
        }
        exps.push(m);
    }
    debug_assert!(exps.windows(2).all(|w| w[0] <= w[1]));
    Cartan {
        k1: GroupElement::new(l).expect("product of elementary matrices"),
        exponents: exps,
        k2: GroupElement::new(r).expect("product of elementary matrices"),
    }
}
