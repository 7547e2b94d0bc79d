use local_field::{FieldElement, FpPoly, NormValue, Valuation, Q};
use poly_lab::{
    algebra_module_norm, crt_join, crt_split, delta_root_norm, discriminant, factor_local, norm_via_multiplication,
    poly_divmod, poly_modinv, quadratic_criterion, resultant, root_norm, MonicPoly, NewtonPolygon, Poly, PolyError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rand_elem(rng: &mut ChaCha8Rng, p: u8, lo: i64, hi: i64) -> FieldElement {
    let v = rng.gen_range(lo..=hi);
    let len = rng.gen_range(1..4);
    let mut c: Vec<i64> = (0..len).map(|_| rng.gen_range(0..p as i64)).collect();
    c[0] = rng.gen_range(1..p as i64);
    let x = FieldElement::laurent(p, v, &c);
    if rng.gen_bool(0.3) {
        let d = FpPoly::from_ints(p, &[1, rng.gen_range(0..p as i64), rng.gen_range(0..p as i64)]);
        &x / &FieldElement::from_poly(d)
    } else {
        x
    }
}

fn rand_poly(rng: &mut ChaCha8Rng, p: u8, deg: usize) -> Poly {
    Poly::new(p, (0..=deg).map(|_| if rng.gen_bool(0.2) { FieldElement::zero(p) } else { rand_elem(rng, p, -2, 2) }).collect())
}

fn rand_monic(rng: &mut ChaCha8Rng, p: u8, deg: usize) -> MonicPoly {
    MonicPoly::from_lower(p, (0..deg).map(|_| rand_elem(rng, p, -2, 3)).collect())
}

fn from_roots(p: u8, roots: &[FieldElement]) -> MonicPoly {
    MonicPoly::new(roots.iter().fold(Poly::one(p), |acc, r| acc.mul(&Poly::linear(r)))).unwrap()
}

fn distinct_roots(rng: &mut ChaCha8Rng, p: u8, n: usize) -> Vec<FieldElement> {
    loop {
        let r: Vec<FieldElement> = (0..n).map(|_| rand_elem(rng, p, -2, 2)).collect();
        if (0..n).all(|i| (i + 1..n).all(|j| r[i] != r[j])) {
            return r;
        }
    }
}

#[test]
fn resultant_is_multiplicative() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let p = [2u8, 3][rng.gen_range(0..2)];
        let f1 = { let d = rng.gen_range(1..3); rand_monic(&mut rng, p, d) };
        let f2 = { let d = rng.gen_range(1..3); rand_monic(&mut rng, p, d) };
        let g = { let d = rng.gen_range(0..3); rand_poly(&mut rng, p, d) };
        if g.is_zero() {
            continue;
        }
        let lhs = resultant(&f1.mul(&f2), &g).unwrap();
        let rhs = &resultant(&f1, &g).unwrap() * &resultant(&f2, &g).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn resultant_matches_product_over_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let p = [2u8, 3][rng.gen_range(0..2)];
        let roots = { let d = rng.gen_range(1..4); distinct_roots(&mut rng, p, d) };
        let f = from_roots(p, &roots);
        let g = rand_poly(&mut rng, p, 2);
        if g.is_zero() {
            continue;
        }
        let expect = roots.iter().fold(FieldElement::one(p), |acc, r| &acc * &g.eval(r));
        assert_eq!(resultant(&f, &g).unwrap(), expect);
        assert_eq!(norm_via_multiplication(&f, &g).unwrap(), expect);
    }
}

#[test]
fn discriminant_is_product_of_squared_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..100 {
        let p = [2u8, 3][rng.gen_range(0..2)];
        let roots = { let d = rng.gen_range(2..4); distinct_roots(&mut rng, p, d) };
        let f = from_roots(p, &roots);
        let mut expect = FieldElement::one(p);
        for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let d = &roots[i] - &roots[j];
                expect = &expect * &(&d * &d);
            }
        }
        assert_eq!(discriminant(&f), expect);
        let rf = resultant(&f, &f.derivative()).unwrap();
        assert_eq!(rf.abs_value(), discriminant(&f).abs_value());
    }
}

/// Roots chosen first, so every root valuation and separation is known.
#[test]
fn newton_polygon_and_root_norms_match_known_roots() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for case in 0..200 {
        let p = [2u8, 3][case % 2];
        let n = 2 + case % 2;
        let roots = distinct_roots(&mut rng, p, n);
        let f = from_roots(p, &roots);
        let mut expect: Vec<Q> = roots.iter().map(|r| Q::from_integer(r.val() as i128)).collect();
        expect.sort();
        let mut got = NewtonPolygon::of(&f).finite_root_valuations();
        got.sort();
        assert_eq!(got, expect, "case {case}: {f}");

        let max_root = roots.iter().map(|r| r.norm_exponent()).max().unwrap();
        assert_eq!(root_norm(&f), NormValue::from_int_exponent(p, max_root));

        let mut sep = 0;
        for i in 0..n {
            for j in i + 1..n {
                sep = sep.max((&roots[i] - &roots[j]).val());
            }
        }
        assert_eq!(delta_root_norm(&f).unwrap(), NormValue::from_int_exponent(p, sep), "case {case}: {f}");

        let fac = factor_local(&f, None).unwrap();
        assert_eq!(fac.degrees(), vec![1; n]);
        for lf in &fac.factors {
            let root = -&lf.factor.coeff(0);
            let close = roots.iter().any(|r| (&root - r).valuation() >= Valuation::Finite(fac.precision));
            assert!(close, "case {case}: factor {} of {f}", lf.factor);
        }
    }
}

#[test]
fn delta_root_norm_quadratic_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    let mut done = 0;
    while done < 200 {
        let p = [2u8, 3][done % 2];
        let f = rand_monic(&mut rng, p, 2);
        let d = discriminant(&f);
        if d.is_zero() {
            continue;
        }
        let delta = delta_root_norm(&f).unwrap();
        // (l^e)^2 = max(|disc|^-1, 1) = l^max(val disc, 0)
        assert_eq!(delta.exponent() * Q::from_integer(2), Q::from_integer(d.val().max(0) as i128), "{f}");
        done += 1;
    }
}

#[test]
fn crt_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    let mut done = 0;
    while done < 500 {
        let p = [2u8, 3][done % 2];
        let k = rng.gen_range(1..4);
        let fs: Vec<MonicPoly> = (0..k).map(|_| { let d = rng.gen_range(1..3); rand_monic(&mut rng, p, d) }).collect();
        let n: usize = fs.iter().map(|f| f.deg()).sum();
        let g = rand_poly(&mut rng, p, n - 1);
        let split = match crt_split(&fs, &g) {
            Ok(s) => s,
            Err(PolyError::NotCoprime) => continue,
            Err(e) => panic!("{e}"),
        };
        let (prod, joined) = crt_join(&split).unwrap();
        assert_eq!(joined, g);
        assert_eq!(prod.poly(), &fs.iter().fold(Poly::one(p), |acc, f| acc.mul(f)));
        let again = crt_split(&fs, &joined).unwrap();
        assert_eq!(again, split);
        done += 1;
    }
}

#[test]
fn modinv_contract() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut done = 0;
    while done < 500 {
        let p = [2u8, 3][done % 2];
        let f = { let d = rng.gen_range(0..3); rand_poly(&mut rng, p, d) };
        let g = { let d = rng.gen_range(1..4); rand_monic(&mut rng, p, d) };
        if f.is_zero() {
            continue;
        }
        match poly_modinv(&f, &g) {
            Ok(inv) => {
                assert!(inv.deg() < g.deg() || inv.is_zero());
                assert_eq!(poly_divmod(&g, &inv.mul(&f)), Poly::one(p));
                done += 1;
            }
            Err(PolyError::NotCoprime) => assert!(resultant(&f, &g).unwrap().is_zero()),
            Err(e) => panic!("{e}"),
        }
    }
}

#[test]
fn module_norm_is_product_of_components() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    let mut done = 0;
    while done < 60 {
        let p = [2u8, 3][done % 2];
        let f = rand_monic(&mut rng, p, 2 + done % 2);
        if discriminant(&f).is_zero() {
            continue;
        }
        let g = rand_poly(&mut rng, p, f.deg() - 1);
        if g.is_zero() {
            continue;
        }
        let m = algebra_module_norm(&f, &g).unwrap();
        assert_eq!(m.product(p), m.total, "{f} / {g}");
        assert_eq!(norm_via_multiplication(&f, &g).unwrap().abs_value(), m.total);
        done += 1;
    }
}

#[test]
fn factorization_contracts_and_deeper_precision() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let mut done = 0;
    while done < 60 {
        let p = [2u8, 3][done % 2];
        let f = rand_monic(&mut rng, p, 2 + done % 2);
        let fac = match factor_local(&f, None) {
            Ok(x) => x,
            Err(PolyError::Inseparable) => continue,
            Err(e) => panic!("{f}: {e}"),
        };
        let prod = fac.factors.iter().fold(Poly::one(p), |acc, lf| acc.mul(&lf.factor));
        for (a, b) in prod.coeffs().iter().zip(f.coeffs()) {
            assert!((a - b).valuation() >= Valuation::Finite(fac.precision));
        }
        assert_eq!(fac.factors.iter().map(|lf| lf.degree).sum::<usize>(), f.deg());
        let deeper = factor_local(&f, Some(2 * fac.precision)).unwrap();
        assert_eq!(deeper.degrees(), fac.degrees());
        assert_eq!(deeper.all_certified(), fac.all_certified());
        if f.deg() == 2 {
            let q = quadratic_criterion(&f).unwrap();
            assert_eq!(q.is_some(), fac.factors.len() == 1, "{f}");
        }
        done += 1;
    }
}

/// y^2 + y = a is solvable iff x^2 + bx + c splits; the series solver
/// provides an explicit root in the split case with val a > 0.
#[test]
fn artin_schreier_branch() {
    let p = 2;
    let one = FieldElement::one(p);
    for k in 1..6 {
        // x^2 + x + t^k has a root of valuation k
        let f = MonicPoly::from_lower(p, vec![FieldElement::t_pow(p, k), one.clone()]);
        assert_eq!(quadratic_criterion(&f).unwrap(), None);
        let y = poly_lab::factor::artin_schreier_root(&FieldElement::t_pow(p, k), 20);
        assert!(f.eval(&y).valuation() >= Valuation::Finite(20));
    }
    // x^2 + t x + 1: a = 1/t^2 ~ 1/t, an odd pole
    let f = MonicPoly::from_lower(p, vec![one.clone(), FieldElement::t_pow(p, 1)]);
    assert_eq!(quadratic_criterion(&f).unwrap(), Some(2));
    // x^2 + x + 1: constant term 1 gives the unramified extension
    let g = MonicPoly::from_lower(p, vec![one.clone(), one]);
    assert_eq!(quadratic_criterion(&g).unwrap(), Some(1));
}
