use cuspidal::*;
use gl_group::{companion, GroupElement, Mat};
use haar::functions::{gl2_residues, residue_det, residue_matrices, residue_mul, table_index};
use haar::tree::{ball, conjugate_to, displacement};
use haar::{AdFunction, ExactOptions, TestFunction};
use local_field::{Cyc, FieldElement, Q};
use poly_lab::{fe, MonicPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_element(rng: &mut ChaCha8Rng, p: u8, spread: i64) -> FieldElement {
    let lo = rng.gen_range(-spread..=spread);
    let c: Vec<i64> = (0..3).map(|_| rng.gen_range(0..p as i64)).collect();
    FieldElement::laurent(p, lo, &c)
}

fn random_group_element(rng: &mut ChaCha8Rng, p: u8) -> GroupElement {
    loop {
        let e: Vec<FieldElement> = (0..4).map(|_| random_element(rng, p, 2)).collect();
        if let Ok(g) = GroupElement::new(Mat::from_rows(vec![e[..2].to_vec(), e[2..].to_vec()])) {
            return g;
        }
    }
}

fn random_mat(rng: &mut ChaCha8Rng, p: u8) -> Mat {
    let e: Vec<FieldElement> = (0..4).map(|_| random_element(rng, p, 2)).collect();
    Mat::from_rows(vec![e[..2].to_vec(), e[2..].to_vec()])
}

/// Element order in GL_2(F_q) by repeated multiplication.
fn order(r: [u8; 4], q: u8) -> usize {
    let mut x = r;
    let mut k = 1;
    while x != [1, 0, 0, 1] {
        x = residue_mul(x, r, q);
        k += 1;
    }
    k
}

#[test]
fn q2_character_is_the_sign_of_s3() {
    let t = build_cuspidal_character(2, 1).unwrap();
    for g in gl2_residues(2) {
        let sign = if order(g, 2) == 2 { -1 } else { 1 };
        assert_eq!(t.value(g), &Cyc::from_int(sign));
    }
    assert_eq!(t.dimension(), Cyc::one());
}

#[test]
fn q3_character_orthogonality() {
    let t = build_cuspidal_character(3, 1).unwrap();
    assert_eq!(t.dimension(), Cyc::from_int(2));
    let group = gl2_residues(3);
    assert_eq!(group.len(), 48);
    let inner = |a: &dyn Fn([u8; 4]) -> Cyc, b: &dyn Fn([u8; 4]) -> Cyc| {
        group.iter().fold(Cyc::zero(), |acc, &g| acc.add(&a(g).mul(&b(g).conj()))).scale(Q::new(1, 48))
    };
    let chi = |g: [u8; 4]| t.value(g).clone();
    assert_eq!(inner(&chi, &chi), Cyc::one());
    // orthogonal to the trivial and the determinant characters
    assert!(inner(&chi, &|_| Cyc::one()).is_zero());
    assert!(inner(&chi, &|g| Cyc::from_int(if residue_det(g, 3) == 1 { 1 } else { -1 })).is_zero());
    // the Frobenius twist m -> 3m gives the same character, m = 2 a different one
    assert_eq!(build_cuspidal_character(3, 3).unwrap().values(), t.values());
    let other = build_cuspidal_character(3, 2).unwrap();
    let psi = |g: [u8; 4]| other.value(g).clone();
    assert!(inner(&chi, &psi).is_zero());
}

#[test]
fn non_regular_indices_are_rejected() {
    assert_eq!(build_cuspidal_character(2, 0).unwrap_err(), CuspidalError::NotRegularCharacter(0));
    assert_eq!(build_cuspidal_character(2, 3).unwrap_err(), CuspidalError::NotRegularCharacter(3));
    assert_eq!(build_cuspidal_character(3, 4).unwrap_err(), CuspidalError::NotRegularCharacter(4));
}

#[test]
fn depth_zero_values() {
    let p = 2;
    let t = build_cuspidal_character(2, 1).unwrap();
    let omega = compatible_central_character(&t, 3, 1).unwrap();
    let f = depth_zero_function(&t, omega).unwrap();
    assert_eq!(f.eval(&Mat::identity(p, 2)), Cyc::one());
    assert_eq!(f.eval(&Mat::scalar(2, &FieldElement::t_pow(p, 1))), Cyc::root_of_unity(3, 1));
    assert_eq!(f.eval(&Mat::t_diag(p, &[1, 0])), Cyc::zero());
    assert!(!DepthZeroFunction::in_support(&Mat::t_diag(p, &[1, 0])));
    assert!(DepthZeroFunction::in_support(&Mat::t_diag(p, &[-2, -2])));

    let t3 = build_cuspidal_character(3, 1).unwrap();
    let good = compatible_central_character(&t3, 1, 0).unwrap();
    let bad = CentralCharacter { unit_exp: good.unit_exp + 1, ..good };
    assert_eq!(depth_zero_function(&t3, bad).unwrap_err(), CuspidalError::IncompatibleCentralCharacter);
    let f3 = depth_zero_function(&t3, good).unwrap();
    assert_eq!(f3.eval(&Mat::identity(3, 2)), Cyc::from_int(2));
    // f(z g) = omega(z) f(g) for a unit scalar z = -1
    let g = Mat::from_rows(vec![
        vec![FieldElement::laurent(3, 0, &[1, 1]), FieldElement::one(3)],
        vec![FieldElement::one(3), FieldElement::laurent(3, 0, &[2])],
    ]);
    let field = local_field::FqField::new(3, 1).unwrap();
    let minus = g.scale(&FieldElement::from_int(3, -1));
    assert_eq!(f3.eval(&minus), f3.eval(&g).mul(&good.on_residue(&field, 2).unwrap()));
}

#[test]
fn depth_zero_functions_are_cuspidal() {
    let opts = ExactOptions::default();
    for (q, m) in [(2u8, 1i64), (3, 1)] {
        let t = build_cuspidal_character(q, m).unwrap();
        let f = depth_zero_function(&t, compatible_central_character(&t, 2, 1).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(q as u64);
        let samples: Vec<GroupElement> = (0..100).map(|_| random_group_element(&mut rng, q)).collect();
        let conj: Vec<GroupElement> = (0..20).map(|_| random_group_element(&mut rng, q)).collect();
        let radicals = standard_radicals(q, &conj).unwrap();
        let report = check_cuspidal(&f, &samples, &radicals, &opts).unwrap();
        assert_eq!(report.cases.len(), 100 * 22 * 2);
        assert!(report.all_zero(), "{} failures", report.failures());
        assert!(report.nontrivial() > 200);
    }
}

/// Cuspidality over F_q via the Fourier transform: sum_X f(X) psi(tr XY)
/// vanishes at every Y lying in a Borel subalgebra, i.e. every Y with a
/// root in F_q.
#[test]
fn finite_lie_cuspidal_fourier_support() {
    for q in [2u8, 3] {
        let f = finite_lie_cuspidal(q).unwrap();
        assert!(f.null_dim > 0);
        assert_eq!(f.max_coset_sum(), Q::from_integer(0));
        assert!(f.values.iter().any(|v| *v != Q::from_integer(0)));
        for y in residue_matrices(q) {
            let mut hat = Cyc::zero();
            for x in residue_matrices(q) {
                let xy = residue_mul(x, y, q);
                let tr = (xy[0] + xy[3]) % q;
                hat = hat.add(&Cyc::root_of_unity(q as u32, tr as i64).scale(f.value(x)));
            }
            let (tr, det) = ((y[0] + y[3]) % q, residue_det(y, q));
            let has_root = (0..q).any(|r| (r * r + (q - tr) * r + det) % q == 0);
            if has_root {
                assert!(hat.is_zero(), "q = {q}, Y = {y:?}");
            }
        }
    }
}

#[test]
fn finite_lie_cuspidal_q2_coset_sums() {
    let f = finite_lie_cuspidal(2).unwrap();
    let all = residue_matrices(2);
    // the eight cosets of the upper and of the lower nilradical
    for n in [[0, 1, 0, 0], [0, 0, 1, 0]] {
        let mut seen = std::collections::HashSet::new();
        for &x in &all {
            let y = [0, 1, 2, 3].map(|k| (x[k] + n[k]) % 2);
            let key = table_index(x, 2).min(table_index(y, 2));
            if seen.insert(key) {
                assert_eq!(f.value(x) + f.value(y), Q::from_integer(0));
            }
        }
        assert_eq!(seen.len(), 8);
    }
}

#[test]
fn lie_inflation_is_cuspidal() {
    let opts = ExactOptions::default();
    for q in [2u8, 3] {
        let f = finite_lie_cuspidal(q).unwrap().inflate();
        let off = Mat::from_rows(vec![
            vec![FieldElement::zero(q), FieldElement::t_pow(q, -1)],
            vec![FieldElement::zero(q), FieldElement::zero(q)],
        ]);
        assert!(f.eval(&off).is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(40 + q as u64);
        let samples: Vec<Mat> = (0..100).map(|_| random_mat(&mut rng, q)).collect();
        let conj: Vec<GroupElement> = (0..20).map(|_| random_group_element(&mut rng, q)).collect();
        let radicals = standard_radicals(q, &conj).unwrap();
        let report = check_cuspidal_lie(&f, &samples, &radicals, &opts).unwrap();
        assert!(report.all_zero(), "{} failures", report.failures());
        assert!(report.nontrivial() > 50);
    }
}

fn sign_function() -> DepthZeroFunction {
    let t = build_cuspidal_character(2, 1).unwrap();
    depth_zero_function(&t, compatible_central_character(&t, 1, 0).unwrap()).unwrap()
}

#[test]
fn adapted_radius_for_elliptic_points() {
    let p = 2;
    let m = sign_function();
    let polys = [
        (FieldElement::one(p), FieldElement::one(p)),
        (fe(p, 0, &[1, 0, 0, 1, 1, 1, 1]), fe(p, 3, &[1])),
        (fe(p, 2, &[1, 1]), fe(p, 1, &[1])),
        (fe(p, 1, &[1]), fe(p, 1, &[1])),
    ];
    for (c0, c1) in polys {
        let x = GroupElement::new(companion(&MonicPoly::from_lower(p, vec![c0, c1]))).unwrap();
        let a = pullback_adapted(&m, &x).unwrap();
        assert_eq!(a.torus, Torus::Center);
        // brute force over a ball well past the fixed set
        let brute = ball(p, a.extent + 6)
            .into_iter()
            .filter(|v| displacement(&conjugate_to(v, x.matrix())) == 0)
            .map(|v| v.distance())
            .max()
            // odd det valuation: no fixed vertex and the pullback vanishes
            .unwrap_or(0);
        assert_eq!(a.extent, brute);
        assert_eq!(a.radius, (brute + 2) / 3);
        assert!(a.recheck(3));
    }
}

#[test]
fn adapted_radius_for_diagonal_points() {
    let p = 2;
    let m = sign_function();
    for k in 0..6 {
        let x = GroupElement::t_diag(p, &[0, 0]).matrix().clone();
        let mut x = x;
        x.set(1, 1, &FieldElement::one(p) + &FieldElement::t_pow(p, k + 1));
        let x = GroupElement::new(x).unwrap();
        let a = pullback_adapted(&m, &x).unwrap();
        assert_eq!(a.torus, Torus::Diagonal);
        // distance to the apartment by brute force: min over diagonal vertices
        let apartment: Vec<GroupElement> = (-12..=12).map(|s| GroupElement::t_diag(p, &[s, 0])).collect();
        let brute = ball(p, 10)
            .into_iter()
            .filter(|v| displacement(&conjugate_to(v, x.matrix())) == 0)
            .map(|v| {
                let h = v.matrix();
                apartment.iter().map(|d| displacement(d.inverse().mul(&h).matrix())).min().unwrap()
            })
            .max()
            .unwrap();
        assert_eq!(a.extent, brute, "k = {k}");
        assert_eq!(a.extent, k + 1);
        assert!(a.recheck(4));
    }
    // valuations of the eigenvalues differ: nothing is fixed
    let x = GroupElement::t_diag(p, &[1, 0]);
    let a = pullback_adapted(&m, &x).unwrap();
    assert_eq!((a.extent, a.radius), (0, 0));
    // a scalar is not regular
    assert_eq!(pullback_adapted(&m, &GroupElement::identity(p, 2)).unwrap_err(), CuspidalError::NotEllipticInLevi);
}

#[test]
fn adapted_functions_are_right_a_invariant_and_a_cuspidal() {
    let p = 2;
    let m = sign_function();
    let mut x = Mat::identity(p, 2);
    x.set(1, 1, &FieldElement::one(p) + &FieldElement::t_pow(p, 1));
    let x = GroupElement::new(x).unwrap();
    let f = pullback_adapted(&m, &x).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut nonzero = 0;
    for _ in 0..1000 {
        let g = random_group_element(&mut rng, p);
        let a = GroupElement::from_rows(vec![
            vec![random_element(&mut rng, p, 3), FieldElement::zero(p)],
            vec![FieldElement::zero(p), FieldElement::t_pow(p, rng.gen_range(-3..4))],
        ]);
        let Ok(a) = a else { continue };
        let v = f.eval(&g);
        nonzero += !v.is_zero() as usize;
        assert_eq!(f.eval(&g.mul(&a)), v);
    }
    assert!(nonzero > 0);
    let opts = ExactOptions::default();
    let mut leaves = 0;
    for _ in 0..60 {
        let g = random_group_element(&mut rng, p);
        for r in f.a_cuspidal_integrals(&g, &opts).unwrap() {
            assert!(r.value().is_zero());
            leaves += r.certificate.unwrap().nonzero_leaves;
        }
    }
    assert!(leaves > 0);
}
