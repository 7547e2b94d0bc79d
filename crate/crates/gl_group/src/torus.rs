//! Compositions, standard Levis and tori, dynamic subgroups, depth and ellipticity.

use local_field::{FieldElement, Valuation};
use poly_lab::{factor_local, MonicPoly, PolyError};

use crate::mat::{GroupElement, Mat};
use crate::ov::{char_poly, ov_quotient};
use crate::GroupError;

/// A composition of n: the block sizes of a standard Levi M_lambda. Its
/// center is the standard torus T_lambda of block-scalar diagonal matrices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self, GroupError> {
        if parts.is_empty() || parts.contains(&0) {
            return Err(GroupError::ShapeMismatch);
        }
        Ok(Self(parts))
    }

    /// The single block: M = G and T_lambda = Z(G).
    pub fn whole(n: usize) -> Self {
        Self(vec![n])
    }

    /// All ones: M = T, the diagonal torus.
    pub fn minimal(n: usize) -> Self {
        Self(vec![1; n])
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn n(&self) -> usize {
        self.0.iter().sum()
    }

    /// Index ranges [lo, hi) of the blocks.
    pub fn blocks(&self) -> Vec<(usize, usize)> {
        let mut lo = 0;
        self.0
            .iter()
            .map(|&s| {
                let r = (lo, lo + s);
                lo += s;
                r
            })
            .collect()
    }

    /// Block index of each coordinate.
    pub fn block_of(&self) -> Vec<usize> {
        self.0.iter().enumerate().flat_map(|(b, &s)| std::iter::repeat(b).take(s)).collect()
    }

    /// T_other is contained in T_self: every block of self sits inside a block of other.
    pub fn torus_contains(&self, other: &Self) -> bool {
        let mine = self.block_of();
        let theirs = other.block_of();
        (1..self.n()).all(|i| mine[i] != mine[i - 1] || theirs[i] == theirs[i - 1])
    }

    /// All compositions of n.
    pub fn all(n: usize) -> Vec<Self> {
        if n == 0 {
            return Vec::new();
        }
        (0..1u32 << (n - 1))
            .map(|cuts| {
                let mut parts = Vec::new();
                let mut run = 1;
                for i in 0..n - 1 {
                    if cuts >> i & 1 == 1 {
                        parts.push(run);
                        run = 1;
                    } else {
                        run += 1;
                    }
                }
                parts.push(run);
                Self(parts)
            })
            .collect()
    }

    /// The proper standard subtori of T_self.
    pub fn proper_subtori(&self) -> Vec<Self> {
        Self::all(self.n()).into_iter().filter(|c| c != self && self.torus_contains(c)).collect()
    }

    /// Block-scalar diagonal element with the given block values.
    pub fn torus_element(&self, values: &[FieldElement]) -> Result<GroupElement, GroupError> {
        if values.len() != self.0.len() {
            return Err(GroupError::ShapeMismatch);
        }
        let d: Vec<FieldElement> =
            self.0.iter().zip(values).flat_map(|(&s, v)| std::iter::repeat(v.clone()).take(s)).collect();
        GroupElement::diag(&d)
    }

    /// x is block diagonal with respect to this composition.
    pub fn is_block_diagonal(&self, x: &Mat) -> bool {
        let b = self.block_of();
        (0..x.dim()).all(|i| (0..x.dim()).all(|j| b[i] == b[j] || x.get(i, j).is_zero()))
    }

    /// The diagonal block with the given index.
    pub fn block(&self, x: &Mat, idx: usize) -> Mat {
        let (lo, hi) = self.blocks()[idx];
        Mat::from_rows((lo..hi).map(|i| (lo..hi).map(|j| x.get(i, j).clone()).collect()).collect())
    }
}

/// Off-diagonal positions spanning the Lie algebra of a unipotent subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnipotentSpec {
    pub n: usize,
    pub positions: Vec<(usize, usize)>,
}

impl UnipotentSpec {
    pub fn upper(n: usize) -> Self {
        Self { n, positions: (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect() }
    }

    pub fn lower(n: usize) -> Self {
        Self { n, positions: (0..n).flat_map(|i| (0..i).map(move |j| (i, j))).collect() }
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// m - I is supported on the positions.
    pub fn contains(&self, m: &Mat) -> bool {
        let id = Mat::identity(m.prime(), self.n);
        let d = m.sub(&id);
        (0..self.n).all(|i| (0..self.n).all(|j| d.get(i, j).is_zero() || self.positions.contains(&(i, j))))
    }

    /// Nilradical membership for Lie elements: support on the positions.
    pub fn contains_lie(&self, m: &Mat) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| m.get(i, j).is_zero() || self.positions.contains(&(i, j))))
    }

    /// I + sum of coordinates placed at the positions.
    pub fn element(&self, p: u8, coords: &[FieldElement]) -> GroupElement {
        let mut m = Mat::identity(p, self.n);
        for (&(i, j), c) in self.positions.iter().zip(coords) {
            m.set(i, j, c.clone());
        }
        GroupElement::new(m).expect("unipotent elements are invertible")
    }

    /// Closed under products: (i, j), (j, k) in the set force (i, k).
    pub fn is_closed(&self) -> bool {
        self.positions.iter().all(|&(i, j)| {
            self.positions.iter().filter(|&&(j2, _)| j2 == j).all(|&(_, k)| self.positions.contains(&(i, k)))
        })
    }
}

/// V_a (Ad(a)^i g -> 1) and P_a (bounded orbit) for diagonal a. P_a is
/// returned by its off-diagonal positions; it also contains the diagonal.
pub fn dynamic_subgroups(a: &Mat) -> (UnipotentSpec, Vec<(usize, usize)>) {
    assert!(a.is_diagonal(), "dynamic subgroups need a diagonal element");
    let n = a.dim();
    let vals: Vec<i64> = (0..n).map(|i| a.get(i, i).val()).collect();
    let mut v = Vec::new();
    let mut pa = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            // Ad(a) scales e_ij by a_i / a_j
            let d = vals[i] - vals[j];
            if d > 0 {
                v.push((i, j));
            }
            if d >= 0 {
                pa.push((i, j));
            }
        }
    }
    (UnipotentSpec { n, positions: v }, pa)
}

/// depth_A(x): the minimum over proper standard subtori A' of A of
/// ov_{G/A'}(x). `None` when A has no proper standard subtorus (A = Z(G)).
pub fn depth(x: &GroupElement, torus: &Composition) -> Option<i64> {
    torus.proper_subtori().iter().map(|sub| ov_quotient(x, sub)).min()
}

/// x is block diagonal for M and every block has a separable irreducible
/// characteristic polynomial.
pub fn is_elliptic_in_levi(x: &Mat, levi: &Composition) -> Result<bool, GroupError> {
    if levi.n() != x.dim() || !levi.is_block_diagonal(x) {
        return Ok(false);
    }
    for b in 0..levi.parts().len() {
        let block = levi.block(x, b);
        if block.dim() == 1 {
            if block.get(0, 0).is_zero() {
                return Ok(false);
            }
            continue;
        }
        if !is_elliptic_poly(&char_poly(&block))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Separable, nonzero at 0 and certified irreducible over F_l((t)).
pub fn is_elliptic_poly(f: &MonicPoly) -> Result<bool, GroupError> {
    if f.coeff(0).is_zero() {
        return Ok(false);
    }
    match factor_local(f, None) {
        Err(PolyError::Inseparable) => Ok(false),
        Err(e) => Err(e.into()),
        Ok(fac) => fac.is_irreducible().ok_or(GroupError::Poly(PolyError::PrecisionInsufficient)),
    }
}

/// C_x(u) = u x u^-1 x^-1.
pub fn commutator(x: &GroupElement, u: &GroupElement) -> GroupElement {
    u.mul(x).mul(&u.inverse()).mul(&x.inverse())
}

/// D_x(u) = u x u^-1 - x for a Lie element x.
pub fn lie_commutator(x: &Mat, u: &GroupElement) -> Mat {
    u.matrix().mul(x).mul(u.inv()).sub(x)
}

/// Smallest valuation of (a_i / a_j)^k over the positions of V_a, for the
/// contraction check Ad(a)^k g -> 1.
pub fn contraction_valuation(a: &Mat, g: &Mat, k: u32) -> Valuation {
    let p = a.prime();
    let n = a.dim();
    let ak = a.pow(k);
    let ak_inv = GroupElement::new(ak.clone()).expect("diagonal with nonzero entries").inv().clone();
    ak.mul(g).mul(&ak_inv).sub(&Mat::identity(p, n)).min_valuation()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_of_three() {
        let all = Composition::all(3);
        assert_eq!(all.len(), 4);
        let t = Composition::minimal(3);
        let subs = t.proper_subtori();
        assert_eq!(subs.len(), 3);
        assert!(subs.contains(&Composition::whole(3)));
        assert!(Composition::whole(3).proper_subtori().is_empty());
        let mid = Composition::new(vec![2, 1]).unwrap();
        assert_eq!(mid.proper_subtori(), vec![Composition::whole(3)]);
    }

    #[test]
    fn dynamic_examples() {
        let p = 2;
        let (v, _) = dynamic_subgroups(&Mat::t_diag(p, &[1, 0]));
        assert_eq!(v.positions, vec![(0, 1)]);
        let (v, pa) = dynamic_subgroups(&Mat::t_diag(p, &[2, 2]));
        assert!(v.is_empty());
        assert_eq!(pa.len(), 2);
        let (v, _) = dynamic_subgroups(&Mat::t_diag(p, &[0, 1]));
        assert_eq!(v.positions, vec![(1, 0)]);
    }

    #[test]
    fn depth_of_split_family() {
        let p = 2;
        let t = Composition::minimal(2);
        for k in 0..9 {
            let x = GroupElement::t_diag(p, &[-k, 0]);
            assert_eq!(depth(&x, &t), Some((k + 2) / 3));
        }
        assert_eq!(depth(&GroupElement::identity(p, 2), &Composition::whole(2)), None);
    }
}
