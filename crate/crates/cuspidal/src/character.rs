//! Cuspidal characters of GL_2(F_q), q prime, from regular characters of
//! F_{q^2}^x.

use haar::functions::{gl2_residues, residue_det, residue_matrices, residue_mul, table_index};
use local_field::{fq_character, Cyc, FpPoly, FqElement, FqField, Q};

use crate::CuspidalError;

/// Conjugacy class types of GL_2(F_q).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ClassType {
    Central,
    CentralTimesUnipotent,
    SplitRegular,
    Elliptic,
}

/// The character attached to theta = (u -> zeta^(m dlog u)), as a table over
/// all q^4 residue matrices (0 on singular ones).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CuspidalCharacterTable {
    pub q: u8,
    pub m: i64,
    values: Vec<Cyc>,
}

pub fn classify(r: [u8; 4], q: u8) -> Option<ClassType> {
    if residue_det(r, q) == 0 {
        return None;
    }
    if r[1] == 0 && r[2] == 0 && r[0] == r[3] {
        return Some(ClassType::Central);
    }
    let tr = (r[0] as u16 + r[3] as u16) % q as u16;
    let det = residue_det(r, q) as u16;
    // number of roots of X^2 - tr X + det in F_q
    let roots = (0..q as u16).filter(|x| (x * x + (q as u16 - tr) * x + det) % q as u16 == 0).count();
    Some(match roots {
        0 => ClassType::Elliptic,
        1 => ClassType::CentralTimesUnipotent,
        _ => ClassType::SplitRegular,
    })
}

pub fn build_cuspidal_character(q: u8, m: i64) -> Result<CuspidalCharacterTable, CuspidalError> {
    let big = FqField::new(q, 2)?;
    let order = big.unit_order() as i64;
    // theta^q = theta exactly when (q + 1) divides m
    if (m * (q as i64 - 1)).rem_euclid(order) == 0 {
        return Err(CuspidalError::NotRegularCharacter(m));
    }
    let theta = fq_character(&big, m);
    let embed = |a: u8| big.from_prime_field(a);
    let mut values = vec![Cyc::zero(); (q as usize).pow(4)];
    for r in residue_matrices(q) {
        let Some(class) = classify(r, q) else { continue };
        let v = match class {
            ClassType::Central => theta(&embed(r[0]))?.scale(Q::from_integer(q as i128 - 1)),
            ClassType::CentralTimesUnipotent => {
                let (tr, det) = ((r[0] as u16 + r[3] as u16) % q as u16, residue_det(r, q) as u16);
                // the double eigenvalue: (X - a)^2 = X^2 - tr X + det
                let a = (1..q).find(|&a| (2 * a as u16) % q as u16 == tr && (a as u16 * a as u16) % q as u16 == det);
                let a = a.expect("repeated eigenvalue lies in F_q");
                theta(&embed(a))?.neg()
            }
            ClassType::SplitRegular => Cyc::zero(),
            ClassType::Elliptic => {
                let poly = char_poly(r, q);
                let roots: Vec<FqElement> = big.roots(&poly);
                let g = &roots[0];
                theta(g)?.add(&theta(&big.frobenius(g))?).neg()
            }
        };
        values[table_index(r, q)] = v;
    }
    let table = CuspidalCharacterTable { q, m, values };
    if !table.is_orthonormal() || !table.unipotent_sums_vanish() {
        return Err(CuspidalError::VerificationFailed);
    }
    Ok(table)
}

fn char_poly(r: [u8; 4], q: u8) -> FpPoly {
    let tr = (r[0] as u16 + r[3] as u16) % q as u16;
    let neg_tr = ((q as u16 - tr) % q as u16) as u8;
    FpPoly::from_coeffs(q, vec![residue_det(r, q), neg_tr, 1])
}

impl CuspidalCharacterTable {
    pub fn values(&self) -> &[Cyc] {
        &self.values
    }

    pub fn value(&self, r: [u8; 4]) -> &Cyc {
        &self.values[table_index(r, self.q)]
    }

    /// chi(1) = q - 1.
    pub fn dimension(&self) -> Cyc {
        self.value([1, 0, 0, 1]).clone()
    }

    /// theta restricted to F_q^x, read off the central values.
    pub fn central_value(&self, a: u8) -> Cyc {
        self.value([a, 0, 0, a]).scale(Q::new(1, self.q as i128 - 1))
    }

    /// <chi, chi> = 1 over GL_2(F_q).
    pub fn is_orthonormal(&self) -> bool {
        let group = gl2_residues(self.q);
        let norm = group.iter().fold(Cyc::zero(), |acc, &g| acc.add(&self.value(g).mul(&self.value(g).conj())));
        norm == Cyc::from_int(group.len() as i64)
    }

    /// sum over u in U of chi(g u) = 0 for every g, U the upper and the
    /// lower unipotent subgroup.
    pub fn unipotent_sums_vanish(&self) -> bool {
        let q = self.q;
        let radicals: [fn(u8) -> [u8; 4]; 2] = [|c| [1, c, 0, 1], |c| [1, 0, c, 1]];
        gl2_residues(q).into_iter().all(|g| {
            radicals.iter().all(|u| {
                let s = (0..q).fold(Cyc::zero(), |acc, c| acc.add(self.value(residue_mul(g, u(c), q))));
                s.is_zero()
            })
        })
    }
}
