//! Haar sampling on K_0 and coset enumerations of G_i / K_j and (G^ad)_i / K_j^ad.

use gl_group::{GroupElement, Mat};
use local_field::{FieldElement, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cells::k0_representatives;
use crate::measure::{adjoint_radius, mu_k};
use crate::tree::{ball, Vertex};
use crate::HaarError;

/// ChaCha8 seeded with `seed` on stream `stream`.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Entries uniform in O / t^prec, resampled until the reduction is invertible.
pub fn sample_k0_with(rng: &mut ChaCha8Rng, p: u8, prec: usize) -> GroupElement {
    assert!(prec >= 1);
    loop {
        let entries: Vec<FieldElement> = (0..4)
            .map(|_| {
                let c: Vec<i64> = (0..prec).map(|_| rng.gen_range(0..p as i64)).collect();
                FieldElement::laurent(p, 0, &c)
            })
            .collect();
        let m = Mat::from_rows(vec![entries[..2].to_vec(), entries[2..].to_vec()]);
        let d = m.det();
        if !d.is_zero() && d.val() == 0 {
            return GroupElement::new(m).expect("unit determinant");
        }
    }
}

pub fn sample_k0(p: u8, seed: u64, prec: usize) -> GroupElement {
    sample_k0_with(&mut rng_for(seed, 0), p, prec)
}

/// Representatives of a compact region modulo K_j, each of weight mu(K_j).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetEnumeration {
    pub ell: u8,
    pub i: i64,
    pub j: i64,
    pub adjoint: bool,
    pub reps: Vec<GroupElement>,
    /// The common weight mu(K_j) (or mu(K_j^ad)).
    pub weight: Q,
}

impl CosetEnumeration {
    pub fn total_weight(&self) -> Q {
        self.weight * Q::from_integer(self.reps.len() as i128)
    }

    pub fn weights(&self) -> impl Iterator<Item = (&GroupElement, Q)> {
        self.reps.iter().map(move |g| (g, self.weight))
    }
}

/// Cartan exponents (m1, m2) of the representative of v.
fn vertex_exponents(v: &Vertex) -> (i64, i64) {
    let m1 = match v.b.valuation().finite() {
        Some(b) => b.min(v.a).min(0),
        None => v.a.min(0),
    };
    (m1, v.a - m1)
}

/// Left K_0-coset representatives g of G_i (g.o runs over lattices, not
/// classes), or of (G^ad)_i when `adjoint`.
pub fn k0_cosets(p: u8, i: i64, adjoint: bool) -> Vec<GroupElement> {
    let vertices = ball(p, adjoint_radius(i));
    if adjoint {
        return vertices.iter().map(Vertex::matrix).collect();
    }
    let mut out = Vec::new();
    for v in &vertices {
        let (m1, m2) = vertex_exponents(v);
        let h = v.matrix();
        // t^c h has exponents (m1 + c, m2 + c)
        for c in (-i - m1)..=((i - m1 - m2).div_euclid(2)) {
            let e = [m1 + c, m2 + c];
            if crate::measure::cell_ov(e) <= i {
                let z = GroupElement::new(Mat::scalar(2, &FieldElement::t_pow(p, c))).expect("scalar");
                out.push(z.mul(&h));
            }
        }
    }
    out
}

/// Representatives of G_i / K_j (or (G^ad)_i / K_j^ad) with weights mu(K_j).
/// Exact enumeration is implemented for n = 2 only.
pub fn enumerate_ball(p: u8, n: usize, i: i64, j: i64, adjoint: bool) -> Result<CosetEnumeration, HaarError> {
    if n != 2 {
        return Err(HaarError::ScaleLimit(n));
    }
    let cosets = k0_cosets(p, i, adjoint);
    let inner = k0_representatives(p, j, adjoint);
    let reps = cosets.iter().flat_map(|g| inner.iter().map(move |k| g.mul(k))).collect();
    Ok(CosetEnumeration { ell: p, i, j, adjoint, reps, weight: mu_k(p, j, adjoint) })
}
