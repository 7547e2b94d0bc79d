//! Pushforward norms along G -> G^ad and G -> G/A.

use gl_group::{ov_quotient, Composition, GroupElement};

/// ov_{G^ad}(x): the minimum of ov_G(z x) over central z = u t^k.
///
/// The unit u does not matter, and ov_G(t^k x) = max(0, M - k, D + n k) with
/// M the largest -val of an entry and D = val det x. This is convex in k, so
/// the minimum sits next to the crossing point (M - D) / (n + 1).
pub fn pushforward_center(x: &GroupElement) -> i64 {
    let n = x.dim() as i64;
    let m = x.max_neg_valuation().expect("invertible matrix has a nonzero entry");
    let d = x.det().val();
    let objective = |k: i64| (m - k).max(d + n * k).max(0);
    let k0 = (m - d).div_euclid(n + 1);
    (k0 - 1..=k0 + 2).map(objective).min().expect("nonempty range")
}

/// ov_{G/A}(x) for the standard torus A = T_lambda.
pub fn pushforward_torus(x: &GroupElement, torus: &Composition) -> i64 {
    ov_quotient(x, torus)
}
