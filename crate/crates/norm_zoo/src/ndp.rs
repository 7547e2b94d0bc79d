//! Constructive preimages for the two maps whose norm-descent property the
//! workbench checks: phi(g, h) = (g^-1 h g, h) and the adjoint action
//! a_M: G x (M cap G^rss) -> G^rss, (g, m) -> g m g^-1.

use gl_group::{companion, conjugator, ov_g, ov_grss, Composition, GroupElement, GroupError, Mat};
use local_field::{FieldElement, Q};
use poly_lab::{factor_local, MonicPoly, Poly};

use crate::NormError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NdpMap {
    Phi,
    /// a_M for the standard Levi M of this composition.
    Levi(Composition),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NdpWitness {
    /// (g, h) for phi, (g, m) for a_M.
    pub preimage: (GroupElement, GroupElement),
    pub ov_preimage: i64,
    pub ov_target: i64,
    /// (1 + ov_preimage) / (1 + ov_target).
    pub ratio: Q,
}

/// A bounded preimage of `target` under the map: `target` is (x, h) for phi
/// and (x) for a_M.
pub fn ndp_witness(map: &NdpMap, target: &[GroupElement]) -> Result<NdpWitness, NormError> {
    match (map, target) {
        (NdpMap::Phi, [x, h]) => phi_preimage(x, h),
        (NdpMap::Levi(levi), [x]) => levi_preimage(levi, x),
        _ => Err(NormError::NotInImage),
    }
}

fn rss_ov(x: &GroupElement) -> Result<i64, NormError> {
    ov_grss(x).map_err(|_| NormError::NotRegularSemisimple)
}

fn witness(g: GroupElement, m: GroupElement, ov_target: i64) -> Result<NdpWitness, NormError> {
    let ov_preimage = ov_g(&g).max(rss_ov(&m)?);
    let ratio = Q::new(1 + ov_preimage as i128, 1 + ov_target as i128);
    Ok(NdpWitness { preimage: (g, m), ov_preimage, ov_target, ratio })
}

fn phi_preimage(x: &GroupElement, h: &GroupElement) -> Result<NdpWitness, NormError> {
    let ov_target = rss_ov(x)?.max(rss_ov(h)?);
    // g^-1 h g = x means g x g^-1 = h
    let g = match conjugator(h, x) {
        Ok(c) => c.g,
        Err(GroupError::NotConjugate) => return Err(NormError::NotInImage),
        Err(e) => return Err(e.into()),
    };
    witness(g, h.clone(), ov_target)
}

/// Sort key for factors: degree, then the t-expansions of the coefficients.
fn factor_key(f: &MonicPoly) -> (usize, Vec<(i64, Vec<u8>)>) {
    let coeffs = f
        .coeffs()
        .iter()
        .map(|c| match c.valuation().finite() {
            Some(v) => (v, c.series(v, v + 64)),
            None => (i64::MAX, Vec::new()),
        })
        .collect();
    (f.deg(), coeffs)
}

/// Picks, block by block, the first subset of the remaining factors (in
/// sorted order) whose degrees add up to the block size.
fn assign_blocks(parts: &[usize], factors: &[MonicPoly]) -> Option<Vec<Vec<usize>>> {
    fn go(parts: &[usize], factors: &[MonicPoly], used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) -> bool {
        let Some((&size, rest)) = parts.split_first() else {
            return used.iter().all(|&u| u);
        };
        pick(size, 0, rest, factors, used, out, &mut Vec::new())
    }
    fn pick(
        left: usize,
        from: usize,
        rest: &[usize],
        factors: &[MonicPoly],
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
        cur: &mut Vec<usize>,
    ) -> bool {
        if left == 0 {
            out.push(cur.clone());
            if go(rest, factors, used, out) {
                return true;
            }
            out.pop();
            return false;
        }
        for i in from..factors.len() {
            if used[i] || factors[i].deg() > left {
                continue;
            }
            used[i] = true;
            cur.push(i);
            if pick(left - factors[i].deg(), i + 1, rest, factors, used, out, cur) {
                return true;
            }
            cur.pop();
            used[i] = false;
        }
        false
    }
    let mut used = vec![false; factors.len()];
    let mut out = Vec::new();
    go(parts, factors, &mut used, &mut out).then_some(out)
}

/// Block-diagonal matrix of companion matrices.
pub fn block_companion(blocks: &[MonicPoly]) -> Mat {
    let p = blocks[0].prime();
    let n: usize = blocks.iter().map(|f| f.deg()).sum();
    let mut m = Mat::zero(p, n);
    let mut off = 0;
    for f in blocks {
        let c = companion(f);
        for i in 0..f.deg() {
            for j in 0..f.deg() {
                m.set(off + i, off + j, c.get(i, j).clone());
            }
        }
        off += f.deg();
    }
    m
}

fn levi_preimage(levi: &Composition, x: &GroupElement) -> Result<NdpWitness, NormError> {
    if levi.n() != x.dim() {
        return Err(NormError::NotInImage);
    }
    let ov_target = rss_ov(x)?;
    let p = x.prime();
    let f = gl_group::char_poly(x);
    let fac = factor_local(&f, None)?;
    let mut factors: Vec<MonicPoly> = fac.factors.into_iter().map(|lf| lf.factor).collect();
    factors.sort_by_key(factor_key);
    let product = factors.iter().fold(Poly::one(p), |acc, g| acc.mul(g));
    if product != *f.poly() {
        return Err(NormError::InexactFactorization);
    }
    let groups = assign_blocks(levi.parts(), &factors).ok_or(NormError::NotInImage)?;
    let blocks: Vec<MonicPoly> = groups
        .iter()
        .map(|ix| {
            let prod = ix.iter().fold(Poly::one(p), |acc, &i| acc.mul(&factors[i]));
            MonicPoly::new(prod).expect("product of monic factors is monic")
        })
        .collect();
    let m = GroupElement::new(block_companion(&blocks))?;
    let g = conjugator(x, &m)?.g;
    debug_assert_eq!(m.conjugate(&g), *x);
    witness(g, m, ov_target)
}

/// The diagonal of a preimage under a_M for M = T, when it exists.
pub fn ordered_eigenvalues(x: &GroupElement) -> Result<Vec<FieldElement>, NormError> {
    let w = levi_preimage(&Composition::minimal(x.dim()), x)?;
    Ok((0..x.dim()).map(|i| w.preimage.1.get(i, i).clone()).collect())
}
