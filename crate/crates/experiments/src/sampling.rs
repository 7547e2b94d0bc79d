//! Small random elements for translates and conjugators.

use gl_group::{GroupElement, Mat};
use local_field::FieldElement;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// c0 t^lo + c1 t^(lo+1) + c2 t^(lo+2), lo in [-spread, spread].
pub fn element(rng: &mut ChaCha8Rng, p: u8, spread: i64) -> FieldElement {
    let lo = rng.gen_range(-spread..=spread);
    let c: Vec<i64> = (0..3).map(|_| rng.gen_range(0..p as i64)).collect();
    FieldElement::laurent(p, lo, &c)
}

pub fn matrix(rng: &mut ChaCha8Rng, p: u8, spread: i64) -> Mat {
    let e: Vec<FieldElement> = (0..4).map(|_| element(rng, p, spread)).collect();
    Mat::from_rows(vec![e[..2].to_vec(), e[2..].to_vec()])
}

pub fn group_element(rng: &mut ChaCha8Rng, p: u8, spread: i64) -> GroupElement {
    loop {
        if let Ok(g) = GroupElement::new(matrix(rng, p, spread)) {
            return g;
        }
    }
}
