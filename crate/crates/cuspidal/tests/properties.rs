use cuspidal::*;
use gl_group::{GroupElement, Mat};
use haar::TestFunction;
use local_field::{Cyc, FieldElement};
use proptest::prelude::*;

fn element(p: u8) -> impl Strategy<Value = FieldElement> {
    (-2i64..3, prop::collection::vec(0..p as i64, 1..4)).prop_map(move |(lo, c)| FieldElement::laurent(p, lo, &c))
}

fn group_element(p: u8) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(element(p), 4).prop_filter_map("singular", move |e| {
        GroupElement::new(Mat::from_rows(vec![e[..2].to_vec(), e[2..].to_vec()])).ok()
    })
}

/// 1 + t X with X integral.
fn k1_element(p: u8) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(prop::collection::vec(0..p as i64, 1..3), 4).prop_map(move |c| {
        let e: Vec<FieldElement> = c.iter().map(|c| FieldElement::laurent(p, 1, c)).collect();
        let one = FieldElement::one(p);
        GroupElement::new(Mat::from_rows(vec![vec![&one + &e[0], e[1].clone()], vec![e[2].clone(), &one + &e[3]]]))
            .expect("congruent to 1")
    })
}

fn function(q: u8) -> DepthZeroFunction {
    let t = build_cuspidal_character(q, 1).unwrap();
    depth_zero_function(&t, compatible_central_character(&t, 4, 1).unwrap()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn central_equivariance(g in group_element(3), s in -3i64..4) {
        let f = function(3);
        let z = FieldElement::t_pow(3, s);
        let lhs = f.eval(&g.matrix().scale(&z));
        prop_assert_eq!(lhs, f.eval(g.matrix()).mul(&Cyc::root_of_unity(4, s)));
    }

    #[test]
    fn bi_k1_invariance(g in group_element(2), a in k1_element(2), b in k1_element(2)) {
        let f = function(2);
        prop_assert_eq!(f.eval(a.mul(&g).mul(&b).matrix()), f.eval(g.matrix()));
    }

    #[test]
    fn value_at_identity_is_the_dimension(q in 2u8..4, m in 1i64..8) {
        match build_cuspidal_character(q, m) {
            Ok(t) => prop_assert_eq!(t.dimension(), Cyc::from_int(q as i64 - 1)),
            Err(e) => prop_assert_eq!(e, CuspidalError::NotRegularCharacter(m)),
        }
    }
}
