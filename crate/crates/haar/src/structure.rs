//! Exact checks of the subgroup inclusions used by the vanishing argument,
//! on enumerated elements (n = 2).

use gl_group::{depth, dynamic_subgroups, Composition, GroupElement, Mat};
use local_field::FieldElement;

use crate::cells::group_children;
use crate::enumerate::k0_cosets;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    pub name: &'static str,
    pub checked: usize,
    pub failures: usize,
}

/// Representatives of K_i / K_j in G (i >= 1).
pub fn level_representatives(p: u8, i: i64, j: i64) -> Vec<GroupElement> {
    let mut reps = vec![GroupElement::identity(p, 2)];
    for level in i..j {
        let steps = group_children(p, level);
        reps = reps.iter().flat_map(|r| steps.iter().map(move |s| r.mul(s))).collect();
    }
    reps
}

fn upper(p: u8, s: FieldElement) -> GroupElement {
    GroupElement::from_rows(vec![vec![FieldElement::one(p), s], vec![FieldElement::zero(p), FieldElement::one(p)]])
        .expect("unipotent")
}

/// a^-1 K_i a = (a^-1 K_i a cap K_0)(a^-1 K_i a cap V_a) for a = diag(t^d, 1),
/// d > 0, so that V_a is the upper unipotent group. Each h = a^-1 k a with k
/// in K_i / K_j is split as h = h0 u with u = [[1, h12 / h11], [0, 1]]; the
/// factors must land in the two intersections. Products h0 u of such factors
/// must land back in a^-1 K_i a.
pub fn check_iwahori_factorization(p: u8, i: i64, j: i64, d: i64) -> LemmaReport {
    assert!(d > 0 && i >= 1);
    let a = GroupElement::t_diag(p, &[d, 0]);
    let (va, _) = dynamic_subgroups(a.matrix());
    let in_conj = |h: &GroupElement| h.conjugate(&a).in_k(i);
    let mut checked = 0;
    let mut failures = 0;
    let mut factors = Vec::new();
    for k in level_representatives(p, i, j) {
        let h = k.conjugate(&a.inverse());
        let s = h.get(0, 1) / h.get(0, 0);
        let u = upper(p, s);
        let h0 = h.mul(&u.inverse());
        let ok = h0.in_k0() && in_conj(&h0) && in_conj(&u) && va.contains(u.matrix());
        checked += 1;
        failures += (!ok) as usize;
        factors.push((h0, u));
    }
    for (h0, _) in factors.iter().step_by(7) {
        for (_, u) in factors.iter().step_by(5) {
            checked += 1;
            failures += (!in_conj(&h0.mul(u))) as usize;
        }
    }
    LemmaReport { name: "iwahori_factorization", checked, failures }
}

/// K_{4i} is contained in y^-1 K_i y for y in G_i: checked for y = k a over
/// K_0 / K_1 lifts k and the Cartan cells a of G_i, on representatives of
/// K_{4i} / K_{4i+2}.
pub fn check_conjugation_containment(p: u8, i: i64) -> LemmaReport {
    let big = level_representatives(p, 4 * i, 4 * i + 2);
    let lifts = group_children(p, 0);
    let mut checked = 0;
    let mut failures = 0;
    for a in crate::measure::cells_in_ball(i) {
        let a = GroupElement::t_diag(p, &a);
        for k in &lifts {
            let y = k.mul(&a);
            for z in &big {
                checked += 1;
                failures += (!z.conjugate(&y).in_k(i)) as usize;
            }
        }
    }
    LemmaReport { name: "conjugation_containment", checked, failures }
}

/// depth_T(a) > 2i implies V_a cap G_i is inside a^-1 K_i a, for the diagonal
/// a = diag(t^d1, t^d2) with |d1 - d2| <= `spread` and every u in V_a cap G_i
/// with coordinate s in t^-i O / t^(i+1) O.
pub fn check_contraction(p: u8, i: i64, spread: i64) -> LemmaReport {
    let torus = Composition::minimal(2);
    let mut checked = 0;
    let mut failures = 0;
    for d in -spread..=spread {
        let a = GroupElement::t_diag(p, &[d, 0]);
        if depth(&a, &torus).is_none_or(|dep| dep <= 2 * i) {
            continue;
        }
        let (va, _) = dynamic_subgroups(a.matrix());
        let (r, c) = va.positions[0];
        let width = (2 * i + 1) as u32;
        for code in 0..(p as usize).pow(width) {
            let mut k = code;
            let coeffs: Vec<i64> = (0..width)
                .map(|_| {
                    let x = (k % p as usize) as i64;
                    k /= p as usize;
                    x
                })
                .collect();
            let mut m = Mat::identity(p, 2);
            m.set(r, c, FieldElement::laurent(p, -i, &coeffs));
            let u = GroupElement::new(m).expect("unipotent");
            debug_assert!(gl_group::ov_g(&u) <= i);
            checked += 1;
            failures += (!u.conjugate(&a).in_k(i)) as usize;
        }
    }
    LemmaReport { name: "contraction", checked, failures }
}

/// Sanity helper for tests: every left K_0-coset representative of G_i has ov_G <= i.
pub fn cosets_respect_ball(p: u8, i: i64) -> bool {
    k0_cosets(p, i, false).iter().all(|g| gl_group::ov_g(g) <= i)
}
