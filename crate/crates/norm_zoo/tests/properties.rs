use gl_group::{Composition, GroupElement, Mat};
use local_field::FieldElement;
use norm_zoo::samplers::GroupSampler;
use norm_zoo::*;
use proptest::prelude::*;

fn elem(p: u8) -> impl Strategy<Value = FieldElement> {
    (-4i64..=4, prop::collection::vec(0..p as i64, 1..3), 0..8u8).prop_map(move |(v, mut c, z)| {
        if z == 0 {
            return FieldElement::zero(p);
        }
        c[0] = 1;
        FieldElement::laurent(p, v, &c)
    })
}

fn group(p: u8, n: usize) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(elem(p), n * n).prop_filter_map("singular", move |e| {
        GroupElement::new(Mat::from_rows(e.chunks(n).map(<[FieldElement]>::to_vec).collect())).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn quotient_by_a_smaller_torus_is_larger(x in group(2, 3)) {
        // A' inside A gives fewer representatives to minimize over
        let t = Composition::minimal(3);
        for sub in t.proper_subtori() {
            prop_assert!(pushforward_torus(&x, &sub) >= pushforward_torus(&x, &t));
        }
        prop_assert!(pushforward_center(&x) >= pushforward_torus(&x, &t));
    }

    #[test]
    fn adjoint_norm_is_the_center_pushforward(x in group(3, 2)) {
        prop_assert_eq!(eval_norm("G^ad", &Point::Group(x.clone())).unwrap().exponent().to_integer() as i64,
            pushforward_center(&x));
    }

    #[test]
    fn fit_reports_are_reproducible(seed in 0u64..1000) {
        let cfg = FitConfig { trials: 20, seed, spread: 4, strata: 4, exec: Exec::Auto };
        let s = GroupSampler { p: 2, n: 2 };
        let a = fit_equivalence(&s, "G", "G^ad", &cfg);
        let b = fit_equivalence(&s, "G", "G^ad", &cfg);
        prop_assert_eq!(&a, &b);
        if let Ok(r) = a {
            // ov_{G^ad} <= ov_G, so G^ad is dominated with exponent 1
            prop_assert_eq!(r.c_ba(), local_field::Q::from_integer(1));
        }
    }
}
