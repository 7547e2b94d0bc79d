//! Adaptive exact integration over K_i^ad and over balls in F.
//!
//! A cell is refined only while its certificate fails. With `verify` set,
//! every leaf is also split once more and its children are evaluated
//! pointwise, which checks the value at the next level independently of the
//! certificate.

use gl_group::{GroupElement, Mat};
use local_field::{ell_pow, Cyc, FieldElement, Q};
use norm_zoo::{ordered_map, Exec};

use crate::functions::{AdFunction, TestFunction};
use crate::measure::mu_k;
use crate::HaarError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactOptions {
    /// Deepest refinement level, counted from the root cell.
    pub max_depth: i64,
    pub verify: bool,
    pub exec: Exec,
}

impl Default for ExactOptions {
    fn default() -> Self {
        Self { max_depth: 10, verify: true, exec: Exec::Auto }
    }
}

/// Running totals of a cell integration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tally {
    pub value: Cyc,
    pub leaves: usize,
    pub nonzero_leaves: usize,
    /// Deepest level at which a leaf was certified.
    pub level: i64,
}

impl Tally {
    pub fn empty(level: i64) -> Self {
        Self { value: Cyc::zero(), leaves: 0, nonzero_leaves: 0, level }
    }

    fn leaf(value: Cyc, weight: Q, level: i64) -> Self {
        let nonzero = !value.is_zero();
        Self { value: value.scale(weight), leaves: 1, nonzero_leaves: nonzero as usize, level }
    }

    pub fn merge(mut self, o: &Tally) -> Self {
        self.value = self.value.add(&o.value);
        self.leaves += o.leaves;
        self.nonzero_leaves += o.nonzero_leaves;
        self.level = self.level.max(o.level);
        self
    }

    pub fn scale(mut self, q: Q) -> Self {
        self.value = self.value.scale(q);
        self
    }
}

/// Representatives of K_j^ad / K_{j+1}^ad. For j = 0 these are lifts of
/// PGL_2(F_l) (first nonzero entry 1); for j >= 1 they are 1 + t^j X with
/// X_11 = 0, since scalars act trivially.
pub fn ad_children(p: u8, j: i64) -> Vec<GroupElement> {
    let mut out = Vec::new();
    let c = |a: u8| FieldElement::from_int(p, a as i64);
    if j == 0 {
        for r in crate::functions::gl2_residues(p) {
            let first = r.iter().copied().find(|&x| x != 0).expect("invertible");
            if first != 1 {
                continue;
            }
            out.push(GroupElement::from_rows(vec![vec![c(r[0]), c(r[1])], vec![c(r[2]), c(r[3])]]).expect("unit det"));
        }
        return out;
    }
    let tj = |a: u8| FieldElement::laurent(p, j, &[a as i64]);
    for x12 in 0..p {
        for x21 in 0..p {
            for x22 in 0..p {
                let m = Mat::from_rows(vec![
                    vec![FieldElement::one(p), tj(x12)],
                    vec![tj(x21), &FieldElement::one(p) + &tj(x22)],
                ]);
                out.push(GroupElement::new(m).expect("congruent to 1"));
            }
        }
    }
    out
}

/// Representatives of K_0^ad / K_j^ad (or K_0 / K_j in G when `adjoint` is
/// false), as products of level steps.
pub fn k0_representatives(p: u8, j: i64, adjoint: bool) -> Vec<GroupElement> {
    let mut reps = vec![GroupElement::identity(p, 2)];
    for level in 0..j {
        let steps = if adjoint { ad_children(p, level) } else { group_children(p, level) };
        reps = reps.iter().flat_map(|r| steps.iter().map(move |s| r.mul(s))).collect();
    }
    reps
}

/// Representatives of K_j / K_{j+1} in G.
pub fn group_children(p: u8, j: i64) -> Vec<GroupElement> {
    let c = |a: u8| FieldElement::from_int(p, a as i64);
    if j == 0 {
        return crate::functions::gl2_residues(p)
            .into_iter()
            .map(|r| GroupElement::from_rows(vec![vec![c(r[0]), c(r[1])], vec![c(r[2]), c(r[3])]]).expect("unit det"))
            .collect();
    }
    let tj = |a: u8| FieldElement::laurent(p, j, &[a as i64]);
    crate::functions::residue_matrices(p)
        .into_iter()
        .map(|r| {
            let m = Mat::from_rows(vec![
                vec![&FieldElement::one(p) + &tj(r[0]), tj(r[1])],
                vec![tj(r[2]), &FieldElement::one(p) + &tj(r[3])],
            ]);
            GroupElement::new(m).expect("congruent to 1")
        })
        .collect()
}

/// Integral over K_i^ad of k -> f(left k right), with mu(K_0^ad) = 1.
pub fn integrate_k_ad(
    f: &dyn AdFunction,
    left: &GroupElement,
    right: &GroupElement,
    i: i64,
    opts: &ExactOptions,
) -> Result<Tally, HaarError> {
    let p = f.prime();
    visit_k(f, left, right, &GroupElement::identity(p, 2), i, i + opts.max_depth, opts)
}

fn visit_k(
    f: &dyn AdFunction,
    left: &GroupElement,
    right: &GroupElement,
    k: &GroupElement,
    j: i64,
    j_max: i64,
    opts: &ExactOptions,
) -> Result<Tally, HaarError> {
    let p = f.prime();
    let lk = left.mul(k);
    if let Some(v) = f.constant_on(&lk, j, right) {
        if opts.verify {
            for c in ad_children(p, j) {
                let g = lk.mul(&c).mul(right);
                if f.eval(&g) != v {
                    return Err(HaarError::LevelMismatch(j + 1));
                }
            }
        }
        return Ok(Tally::leaf(v, mu_k(p, j, true), j));
    }
    if j >= j_max {
        return Err(HaarError::NonConvergedLevel(j_max));
    }
    let children = ad_children(p, j);
    let parts = ordered_map(&children, opts.exec, |c| visit_k(f, left, right, &k.mul(c), j + 1, j_max, opts));
    let mut acc = Tally::empty(j);
    for part in parts {
        acc = acc.merge(&part?);
    }
    Ok(acc)
}

/// Integral over s in F of m(base + s dir) ds with mu(O) = 1.
pub fn line_integral(m: &dyn TestFunction, base: &Mat, dir: &Mat, opts: &ExactOptions) -> Result<Tally, HaarError> {
    let p = m.prime();
    let Some(dir_val) = dir.min_valuation().finite() else {
        // constant integrand on a line of infinite measure
        return if m.eval(base).is_zero() { Ok(Tally::empty(0)) } else { Err(HaarError::SupportUnbounded) };
    };
    let Some(w) = m.line_window(base, dir) else { return Ok(Tally::empty(0)) };
    visit_line(m, base, dir, dir_val, &FieldElement::zero(p), w, w + opts.max_depth, opts)
}

#[allow(clippy::too_many_arguments)]
fn visit_line(
    m: &dyn TestFunction,
    base: &Mat,
    dir: &Mat,
    dir_val: i64,
    s0: &FieldElement,
    r: i64,
    r_max: i64,
    opts: &ExactOptions,
) -> Result<Tally, HaarError> {
    let p = m.prime();
    let center = base.add(&dir.scale(s0));
    if let Some(v) = m.constant_on_ball(&center, r + dir_val) {
        if opts.verify {
            for c in 0..p as i64 {
                let s = s0 + &FieldElement::laurent(p, r, &[c]);
                if m.eval(&base.add(&dir.scale(&s))) != v {
                    return Err(HaarError::LevelMismatch(r + 1));
                }
            }
        }
        return Ok(Tally::leaf(v, ell_pow(p, -r), r));
    }
    if r >= r_max {
        return Err(HaarError::NonConvergedLevel(r_max));
    }
    let shifts: Vec<FieldElement> = (0..p as i64).map(|c| s0 + &FieldElement::laurent(p, r, &[c])).collect();
    let parts = ordered_map(&shifts, opts.exec, |s| visit_line(m, base, dir, dir_val, s, r + 1, r_max, opts));
    let mut acc = Tally::empty(r);
    for part in parts {
        acc = acc.merge(&part?);
    }
    Ok(acc)
}
