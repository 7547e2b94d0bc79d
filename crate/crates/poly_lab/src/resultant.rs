use local_field::FieldElement;

use crate::linalg::det;
use crate::poly::{MonicPoly, Poly};
use crate::PolyError;

/// Sylvester-matrix resultant. Vanishes iff f and g share a root.
pub fn resultant(f: &Poly, g: &Poly) -> Result<FieldElement, PolyError> {
    let (m, n) = match (f.degree(), g.degree()) {
        (Some(m), Some(n)) => (m, n),
        _ => return Err(PolyError::ZeroPolynomial),
    };
    let p = f.prime();
    if n == 0 {
        return Ok(g.coeff(0).pow(m as i64));
    }
    if m == 0 {
        return Ok(f.coeff(0).pow(n as i64));
    }
    let size = m + n;
    let mut rows = vec![vec![FieldElement::zero(p); size]; size];
    // n shifted copies of f, then m shifted copies of g, highest degree first
    for r in 0..n {
        for (k, a) in f.coeffs().iter().enumerate() {
            rows[r][r + m - k] = a.clone();
        }
    }
    for r in 0..m {
        for (k, b) in g.coeffs().iter().enumerate() {
            rows[n + r][r + n - k] = b.clone();
        }
    }
    Ok(det(p, &rows))
}

/// Discriminant of a monic polynomial, (-1)^(n(n-1)/2) res(f, f').
pub fn discriminant(f: &MonicPoly) -> FieldElement {
    let p = f.prime();
    let n = f.deg();
    let d = f.derivative();
    if d.is_zero() {
        return if n <= 1 { FieldElement::one(p) } else { FieldElement::zero(p) };
    }
    let r = resultant(f, &d).expect("nonzero inputs");
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        -r
    } else {
        r
    }
}

/// det of multiplication by g on F[x]/f, an independent route to res(f, g).
pub fn norm_via_multiplication(f: &MonicPoly, g: &Poly) -> Result<FieldElement, PolyError> {
    let p = f.prime();
    let n = f.deg();
    let mut cols = Vec::with_capacity(n);
    let mut basis = g.rem(f)?;
    for _ in 0..n {
        cols.push((0..n).map(|i| basis.coeff(i)).collect::<Vec<_>>());
        basis = basis.mul(&Poly::x(p)).rem(f)?;
    }
    let rows: Vec<Vec<FieldElement>> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    Ok(det(p, &rows))
}
