//! Randomized exact identity checks over the algebra kernel, plus the subgroup
//! inclusion checks used by the vanishing argument. Failures are counted and
//! carry the seed and case index; nothing here panics on a wrong answer.

use gl_group::{
    centralizer_poly, companion, companion_section, conjugator, eval_at, is_regular_semisimple, ov_g, GroupElement, Mat,
};
use haar::structure::{check_conjugation_containment, check_contraction, check_iwahori_factorization, LemmaReport};
use local_field::{FieldElement, FpPoly, NormValue, Valuation, Q};
use poly_lab::{
    algebra_module_norm, crt_split, delta_root_norm, discriminant, factor_local, norm_via_multiplication, poly_divmod,
    poly_modinv, resultant, root_norm, MonicPoly, NewtonPolygon, Poly, PolyError,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::{ExperimentConfig, Suite};
use crate::report::{Check, Reproducer, SuiteReport, Table};

pub type CrtJoin = fn(&[(MonicPoly, Poly)]) -> Result<(MonicPoly, Poly), PolyError>;

/// The kernel operations under test. Swapping one out is how the suite is
/// shown to catch a broken implementation.
#[derive(Clone, Copy)]
pub struct IdentityKernel {
    pub crt_join: CrtJoin,
}

impl Default for IdentityKernel {
    fn default() -> Self {
        Self { crt_join: poly_lab::crt_join }
    }
}

/// Case `index` of check `stream` draws from its own generator.
fn case_rng(seed: u64, stream: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((stream << 32) | index as u64);
    rng
}

fn prime(index: usize) -> u8 {
    [2u8, 3][index % 2]
}

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

fn rand_group(rng: &mut ChaCha8Rng, p: u8, n: usize) -> GroupElement {
    loop {
        let m = Mat::from_rows((0..n).map(|_| (0..n).map(|_| rand_elem(rng, p, -2, 2)).collect()).collect());
        if let Ok(g) = GroupElement::new(m) {
            return g;
        }
    }
}

fn rand_rss(rng: &mut ChaCha8Rng, p: u8, n: usize) -> GroupElement {
    loop {
        let g = rand_group(rng, p, n);
        if is_regular_semisimple(g.matrix()) {
            return g;
        }
    }
}

fn distinct_roots(rng: &mut ChaCha8Rng, p: u8, n: usize) -> Vec<FieldElement> {
    loop {
        let r: Vec<FieldElement> = (0..n).map(|_| rand_elem(rng, p, -2, 2)).collect();
        if (0..n).all(|i| (i + 1..n).all(|j| r[i] != r[j])) {
            return r;
        }
    }
}

fn from_roots(p: u8, roots: &[FieldElement]) -> MonicPoly {
    MonicPoly::new(roots.iter().fold(Poly::one(p), |acc, r| acc.mul(&Poly::linear(r)))).expect("product of monic linears")
}

/// Runs `count` cases; `case` returns None to reject a draw. Gives up after
/// 50 draws per requested case.
fn run_cases<F>(check: &mut Check, seed: u64, stream: u64, count: usize, mut case: F)
where
    F: FnMut(&mut ChaCha8Rng, usize) -> Option<Result<(), String>>,
{
    let mut index = 0;
    let mut done = 0;
    while done < count && index < 50 * count.max(1) {
        let mut rng = case_rng(seed, stream, index);
        if let Some(res) = case(&mut rng, done) {
            let detail = res.as_ref().err().cloned().unwrap_or_default();
            check.record(res.is_ok(), || Reproducer { seed, index, detail });
            done += 1;
        }
        index += 1;
    }
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn crt_round_trip(kernel: &IdentityKernel, seed: u64, count: usize) -> Check {
    let mut c = Check::new("crt_round_trip");
    run_cases(&mut c, seed, 1, count, |rng, done| {
        let p = prime(done);
        let k = rng.gen_range(1..4);
        let fs: Vec<MonicPoly> = (0..k).map(|_| { let d = rng.gen_range(1..3); rand_monic(rng, p, d) }).collect();
        let n: usize = fs.iter().map(|f| f.poly().deg()).sum();
        let g = rand_poly(rng, p, n - 1);
        let split = match crt_split(&fs, &g) {
            Ok(s) => s,
            Err(PolyError::NotCoprime) => return None,
            Err(e) => return Some(Err(format!("split: {e}"))),
        };
        Some((|| {
            let (prod, joined) = (kernel.crt_join)(&split).map_err(|e| format!("join: {e}"))?;
            ensure(joined == g, || format!("join gave {joined}, expected {g}"))?;
            let expect = fs.iter().fold(Poly::one(p), |acc, f| acc.mul(f));
            ensure(prod.poly() == &expect, || format!("modulus {prod}, expected {expect}"))?;
            let again = crt_split(&fs, &joined).map_err(|e| format!("resplit: {e}"))?;
            ensure(again == split, || "split of join differs".into())
        })())
    });
    c
}

fn modinv_contract(seed: u64, count: usize) -> Check {
    let mut c = Check::new("modinv_contract");
    run_cases(&mut c, seed, 2, count, |rng, done| {
        let p = prime(done);
        let f = { let d = rng.gen_range(0..3); rand_poly(rng, p, d) };
        let g = { let d = rng.gen_range(1..4); rand_monic(rng, p, d) };
        if f.is_zero() {
            return None;
        }
        Some(match poly_modinv(&f, &g) {
            Ok(inv) => ensure(
                (inv.is_zero() || inv.deg() < g.deg()) && poly_divmod(&g, &inv.mul(&f)) == Poly::one(p),
                || format!("{inv} is not an inverse of {f} mod {g}"),
            ),
            Err(PolyError::NotCoprime) => {
                ensure(resultant(&f, &g).is_ok_and(|r| r.is_zero()), || format!("{f}, {g} coprime but rejected"))
            }
            Err(e) => Err(e.to_string()),
        })
    });
    c
}

fn dims(done: usize) -> (u8, usize) {
    (prime(done), 2 + (done / 2) % 2)
}

fn companion_section_round_trip(seed: u64, count: usize) -> Check {
    let mut c = Check::new("companion_section_round_trip");
    run_cases(&mut c, seed, 3, count, |rng, done| {
        let (p, n) = dims(done);
        let x = rand_rss(rng, p, n);
        let v: Vec<FieldElement> = (0..n).map(|_| rand_elem(rng, p, -1, 1)).collect();
        let (b, f) = companion_section(&v, x.matrix()).ok()?;
        Some(ensure(b.inv().mul(x.matrix()).mul(b.matrix()) == companion(&f), || format!("section of {f} fails")))
    });
    c
}

fn conjugator_round_trip(seed: u64, count: usize) -> Check {
    let mut c = Check::new("conjugator_round_trip");
    run_cases(&mut c, seed, 4, count, |rng, done| {
        let (p, n) = dims(done);
        let x = rand_rss(rng, p, n);
        let g = rand_group(rng, p, n);
        let y = x.conjugate(&g);
        Some(match conjugator(&x, &y) {
            Ok(h) => ensure(y.conjugate(&h.g) == x && h.ov == ov_g(&h.g), || "conjugator does not conjugate".into()),
            Err(e) => Err(e.to_string()),
        })
    });
    c
}

fn xi_round_trip(seed: u64, count: usize) -> Check {
    let mut c = Check::new("xi_round_trip");
    run_cases(&mut c, seed, 5, count, |rng, done| {
        let (p, n) = dims(done);
        let x = rand_rss(rng, p, n);
        let g = Poly::new(p, (0..n).map(|_| rand_elem(rng, p, -2, 2)).collect());
        let y = eval_at(&g, x.matrix());
        Some(match centralizer_poly(x.matrix(), &y) {
            Ok(back) => ensure(back == g, || format!("recovered {back}, expected {g}")),
            Err(e) => Err(e.to_string()),
        })
    });
    c
}

/// |g mod f| in F[t]/f through the local factorization, against |res(f, g)|
/// from the Sylvester determinant and from the multiplication map.
fn resultant_norm(seed: u64, count: usize) -> Check {
    let mut c = Check::new("resultant_norm_identity");
    run_cases(&mut c, seed, 6, count, |rng, done| {
        let p = prime(done);
        let f = rand_monic(rng, p, 2 + (done / 2) % 2);
        if discriminant(&f).is_zero() {
            return None;
        }
        let g = rand_poly(rng, p, f.deg() - 1);
        if g.is_zero() {
            return None;
        }
        Some((|| {
            let module = algebra_module_norm(&f, &g).map_err(|e| e.to_string())?;
            let res = resultant(&f, &g).map_err(|e| e.to_string())?.abs_value();
            let mult = norm_via_multiplication(&f, &g).map_err(|e| e.to_string())?.abs_value();
            let prod = module.product(p);
            ensure(prod == res && mult == res && module.total == res, || {
                format!("f = {f}, g = {g}: components {prod}, resultant {res}, multiplication {mult}")
            })
        })())
    });
    c
}

/// Polynomials built from known roots, so root valuations and separations
/// are known before any factoring.
fn newton_root_norms(seed: u64, count: usize) -> Check {
    let mut c = Check::new("newton_root_norms");
    run_cases(&mut c, seed, 7, count, |rng, done| {
        let p = prime(done);
        let n = 2 + (done / 2) % 2;
        let roots = distinct_roots(rng, p, n);
        let f = from_roots(p, &roots);
        Some((|| {
            let mut expect: Vec<Q> = roots.iter().map(|r| Q::from_integer(r.val() as i128)).collect();
            expect.sort();
            let mut got = NewtonPolygon::of(&f).finite_root_valuations();
            got.sort();
            ensure(got == expect, || format!("{f}: slopes {got:?}, roots {expect:?}"))?;
            let max_root = roots.iter().map(FieldElement::norm_exponent).max().unwrap_or(0);
            ensure(root_norm(&f) == NormValue::from_int_exponent(p, max_root), || format!("{f}: root norm"))?;
            let mut sep = 0;
            for i in 0..n {
                for j in i + 1..n {
                    sep = sep.max((&roots[i] - &roots[j]).val());
                }
            }
            let delta = delta_root_norm(&f).map_err(|e| e.to_string())?;
            ensure(delta == NormValue::from_int_exponent(p, sep), || format!("{f}: delta root norm"))?;
            let fac = factor_local(&f, None).map_err(|e| e.to_string())?;
            ensure(fac.degrees() == vec![1; n], || format!("{f}: factor degrees {:?}", fac.degrees()))?;
            for lf in &fac.factors {
                let root = -&lf.factor.coeff(0);
                let close = roots.iter().any(|r| (&root - r).valuation() >= Valuation::Finite(fac.precision));
                ensure(close, || format!("{f}: factor {} matches no root", lf.factor))?;
            }
            Ok(())
        })())
    });
    c
}

/// (delta-root norm)^2 = max(|disc|^-1, 1) for separable quadratics.
fn quadratic_delta(seed: u64, count: usize) -> Check {
    let mut c = Check::new("quadratic_delta_identity");
    run_cases(&mut c, seed, 8, count, |rng, done| {
        let p = prime(done);
        let f = rand_monic(rng, p, 2);
        let d = discriminant(&f);
        if d.is_zero() {
            return None;
        }
        Some(match delta_root_norm(&f) {
            Ok(delta) => ensure(delta.exponent() * Q::from_integer(2) == Q::from_integer(d.val().max(0) as i128), || {
                format!("{f}: exponent {} vs val disc {}", delta.exponent(), d.val())
            }),
            Err(e) => Err(e.to_string()),
        })
    });
    c
}

fn lemma_check(name: &str, reports: Vec<LemmaReport>) -> Check {
    let mut c = Check::new(name);
    for r in reports {
        c.cases += r.checked;
        c.failures += r.failures;
        if r.failures > 0 {
            c.reproducers.push(Reproducer { seed: 0, index: 0, detail: format!("{}: {} failures", r.name, r.failures) });
        }
    }
    c
}

fn structure_lemmas(cfg: &ExperimentConfig) -> Vec<Check> {
    let p = cfg.ell;
    let mut rng = case_rng(cfg.seed, 9, 0);
    let ds: Vec<i64> = (0..20).map(|_| rng.gen_range(1..=12)).collect();
    let mut iva = Vec::new();
    for i in 1..=2 {
        for &d in &ds {
            iva.push(check_iwahori_factorization(p, i, i + 2, d));
        }
    }
    let conj = (1..=2).map(|i| check_conjugation_containment(p, i)).collect();
    let cont = (1..=2).map(|i| check_contraction(p, i, 8)).collect();
    vec![
        lemma_check("iwahori_factorization", iva).with_note(format!("d in {ds:?}")),
        lemma_check("conjugation_containment", conj),
        lemma_check("contraction", cont),
    ]
}

pub fn run_identities(cfg: &ExperimentConfig) -> SuiteReport {
    run_identities_with(cfg, &IdentityKernel::default())
}

pub fn run_identities_with(cfg: &ExperimentConfig, kernel: &IdentityKernel) -> SuiteReport {
    let (seed, n) = (cfg.seed, cfg.samples);
    let small = n * 2 / 5;
    let mut report = SuiteReport::new(Suite::Identities);
    report.checks = vec![
        crt_round_trip(kernel, seed, n),
        modinv_contract(seed, n),
        companion_section_round_trip(seed, n),
        conjugator_round_trip(seed, n),
        xi_round_trip(seed, n),
        resultant_norm(seed, n),
        newton_root_norms(seed, small),
        quadratic_delta(seed, small),
    ];
    if n > 0 {
        report.checks.extend(structure_lemmas(cfg));
    }
    let mut t = Table::new("identities", &["check", "cases", "failures", "first_reproducer"]);
    for c in &report.checks {
        let repro = c.reproducers.first().map(|r| format!("seed={} index={}", r.seed, r.index)).unwrap_or_default();
        t.push(vec![c.name.clone(), c.cases.to_string(), c.failures.to_string(), repro]);
    }
    report.tables.push(t);
    if report.is_noop() {
        report.notes.push("no-op: every sample count is zero".into());
    }
    report
}
