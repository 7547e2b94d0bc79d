//! Exact volumes for the normalizations mu_G(K_0) = 1 and mu_{G^ad}(K_0^ad) = 1.

use local_field::{ell_pow, Q};

use crate::tree::sphere_size;

pub fn gl2_order(ell: u8) -> i128 {
    let l = ell as i128;
    (l * l - 1) * (l * l - l)
}

pub fn pgl2_order(ell: u8) -> i128 {
    let l = ell as i128;
    l * (l * l - 1)
}

/// mu(K_j) = 1/[K_0 : K_j] in G (adjoint = false) or G^ad (adjoint = true).
pub fn mu_k(ell: u8, j: i64, adjoint: bool) -> Q {
    if j <= 0 {
        return Q::from_integer(1);
    }
    let (base, dim) = if adjoint { (pgl2_order(ell), 3) } else { (gl2_order(ell), 4) };
    Q::new(1, base) * ell_pow(ell, -dim * (j - 1))
}

/// mu_G(K_0 a K_0) for a = diag(t^m1, t^m2): the number of left K_0-cosets,
/// which is the number of vertices at distance m2 - m1.
pub fn cell_volume(ell: u8, exponents: [i64; 2]) -> Q {
    let d = (exponents[1] - exponents[0]).abs();
    Q::from_integer(sphere_size(ell, d))
}

/// ov_G of the Cartan cell with exponents m1 <= m2.
pub fn cell_ov(exponents: [i64; 2]) -> i64 {
    (-exponents[0]).max(exponents[0] + exponents[1]).max(0)
}

/// Cartan exponents (m1 <= m2) of the cells inside G_i.
pub fn cells_in_ball(i: i64) -> Vec<[i64; 2]> {
    let mut out = Vec::new();
    for m1 in -i..=i {
        for m2 in m1..=(i - m1) {
            if cell_ov([m1, m2]) <= i {
                out.push([m1, m2]);
            }
        }
    }
    out
}

/// mu_G(G_i) as a sum of cell volumes.
pub fn ball_volume(ell: u8, i: i64) -> Q {
    cells_in_ball(i).into_iter().map(|c| cell_volume(ell, c)).sum()
}

/// mu_{G^ad}((G^ad)_i): vertices within distance 3i, since
/// ov_{G^ad}(diag(1, t^d)) = ceil(d / 3).
pub fn adjoint_ball_volume(ell: u8, i: i64) -> Q {
    Q::from_integer((0..=3 * i.max(0)).map(|d| sphere_size(ell, d)).sum())
}

/// Largest tree distance inside (G^ad)_i.
pub fn adjoint_radius(i: i64) -> i64 {
    3 * i.max(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_volumes() {
        assert_eq!(gl2_order(2), 6);
        assert_eq!(pgl2_order(3), 24);
        assert_eq!(mu_k(2, 1, false), Q::new(1, 6));
        assert_eq!(mu_k(2, 2, true), Q::new(1, 48));
        assert_eq!(cell_volume(2, [0, 1]), Q::from_integer(3));
        assert_eq!(cell_volume(2, [0, 0]), Q::from_integer(1));
        assert_eq!(ball_volume(2, 0), Q::from_integer(1));
        // cells (0,0), (0,1), (-1,-1), (-1,0), (-1,1), (-1,2): 1 + 3 + 1 + 3 + 6 + 12
        assert_eq!(ball_volume(2, 1), Q::from_integer(26));
        assert_eq!(adjoint_ball_volume(2, 1), Q::from_integer(22));
    }
}
