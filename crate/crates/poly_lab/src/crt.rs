//! Division and inverse morphisms, and the relative Chinese remainder maps.

use crate::poly::{MonicPoly, Poly};
use crate::resultant::resultant;
use crate::PolyError;

/// The remainder of g modulo the monic f (degree < deg f).
pub fn poly_divmod(f: &MonicPoly, g: &Poly) -> Poly {
    g.rem(f).expect("monic divisor is nonzero")
}

/// inv with inv * f = 1 mod g and deg inv < deg g.
pub fn poly_modinv(f: &Poly, g: &MonicPoly) -> Result<Poly, PolyError> {
    let p = g.prime();
    if g.deg() == 0 {
        return Ok(Poly::zero(p));
    }
    let fr = f.rem(g)?;
    let (d, u, _v) = fr.xgcd(g);
    if d.deg() != 0 || d.is_zero() {
        return Err(PolyError::NotCoprime);
    }
    u.rem(g)
}

fn check_coprime(fs: &[&MonicPoly]) -> Result<(), PolyError> {
    for (i, a) in fs.iter().enumerate() {
        for b in &fs[i + 1..] {
            if resultant(a, b)?.is_zero() {
                return Err(PolyError::NotCoprime);
            }
        }
    }
    Ok(())
}

/// (f_i, g mod f_i) for each factor of a pairwise coprime tuple.
pub fn crt_split(fs: &[MonicPoly], g: &Poly) -> Result<Vec<(MonicPoly, Poly)>, PolyError> {
    check_coprime(&fs.iter().collect::<Vec<_>>())?;
    Ok(fs.iter().map(|f| (f.clone(), poly_divmod(f, g))).collect())
}

/// Inverse of [`crt_split`]: the product of the f_i and the unique g of
/// degree below it with g = g_i mod f_i, folding the two-factor formula
/// g = g1 f2 inv(f2, f1) + g2 f1 inv(f1, f2).
pub fn crt_join(pairs: &[(MonicPoly, Poly)]) -> Result<(MonicPoly, Poly), PolyError> {
    let Some((first, rest)) = pairs.split_first() else {
        return Err(PolyError::ZeroPolynomial);
    };
    check_coprime(&pairs.iter().map(|(f, _)| f).collect::<Vec<_>>())?;
    let mut big = first.0.clone();
    let mut acc = poly_divmod(&first.0, &first.1);
    for (f2, g2) in rest {
        let e1 = f2.mul(&poly_modinv(f2, &big)?);
        let e2 = big.mul(&poly_modinv(&big, f2)?);
        let prod = MonicPoly::new(big.mul(f2))?;
        acc = poly_divmod(&prod, &acc.mul(&e1).add(&g2.mul(&e2)));
        big = prod;
    }
    Ok((big, acc))
}
