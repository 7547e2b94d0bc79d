use gl_group::{companion, GroupElement, Mat};
use haar::cells::ExactOptions;
use haar::functions::{residue_det, residue_matrices};
use haar::tree::{displacement, Vertex};
use haar::*;
use local_field::{Cyc, FieldElement};
use norm_zoo::Exec;
use poly_lab::MonicPoly;
use proptest::prelude::*;

fn element(p: u8) -> impl Strategy<Value = FieldElement> {
    (-2i64..3, prop::collection::vec(0..p as i64, 1..4)).prop_map(move |(lo, c)| FieldElement::laurent(p, lo, &c))
}

fn group_element(p: u8) -> impl Strategy<Value = GroupElement> {
    prop::collection::vec(element(p), 4).prop_filter_map("singular", move |e| {
        GroupElement::new(Mat::from_rows(vec![e[..2].to_vec(), e[2..].to_vec()])).ok()
    })
}

fn sign_table() -> Vec<Cyc> {
    residue_matrices(2)
        .into_iter()
        .map(|r| {
            if residue_det(r, 2) == 0 {
                return Cyc::zero();
            }
            let sq = haar::functions::residue_mul(r, r, 2);
            Cyc::from_int(if sq == [1, 0, 0, 1] && r != [1, 0, 0, 1] { -1 } else { 1 })
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn vertices_ignore_k0_and_scalars(h in group_element(2), seed in 0u64..1000, s in -3i64..4) {
        let k = sample_k0(2, seed, 4);
        let v = Vertex::from_columns(h.matrix());
        prop_assert_eq!(Vertex::from_columns(h.mul(&k).matrix()), v.clone());
        let z = h.matrix().scale(&FieldElement::t_pow(2, s));
        prop_assert_eq!(Vertex::from_columns(&z), v.clone());
        // the canonical representative spans the same lattice class
        prop_assert_eq!(Vertex::from_columns(v.matrix().matrix()), v);
    }

    #[test]
    fn tree_distance_is_a_displacement(g in group_element(2), h in group_element(2)) {
        let v = Vertex::from_columns(g.matrix());
        prop_assert_eq!(displacement(g.matrix()), v.distance());
        // d(g.o, h.o) = d(o, g^-1 h.o), symmetric in g and h
        let d1 = displacement(g.inverse().mul(&h).matrix());
        let d2 = displacement(h.inverse().mul(&g).matrix());
        prop_assert_eq!(d1, d2);
        for n in v.neighbours() {
            prop_assert_eq!(displacement(v.matrix().inverse().mul(&n.matrix()).matrix()), 1);
        }
    }

    #[test]
    fn orbital_integrals_are_class_functions(g in group_element(2), c in 0usize..3) {
        let p = 2;
        let polys = [
            MonicPoly::from_lower(p, vec![FieldElement::one(p), FieldElement::one(p)]),
            MonicPoly::from_lower(p, vec![FieldElement::t_pow(p, 1), FieldElement::t_pow(p, 1)]),
            MonicPoly::from_lower(p, vec![FieldElement::laurent(p, 0, &[1, 1, 1]), FieldElement::t_pow(p, 2)]),
        ];
        let x = GroupElement::new(companion(&polys[c])).unwrap();
        let m = InflatedGroupFunction::new(2, sign_table(), (1, 0));
        let opts = ExactOptions { max_depth: 8, verify: true, exec: Exec::Sequential };
        let a = orbital_integral(&m, &x, false, &opts).unwrap();
        let b = orbital_integral(&m, &x.conjugate(&g), false, &opts).unwrap();
        prop_assert_eq!(a.value(), b.value());
    }

    #[test]
    fn cuspidal_unipotent_integrals_vanish(x in group_element(2)) {
        let m = InflatedGroupFunction::new(2, sign_table(), (1, 0));
        let opts = ExactOptions::default();
        let dir = radical_direction(2, &gl_group::UnipotentSpec::upper(2), None).unwrap();
        for order in [Order::Left, Order::Right] {
            prop_assert!(unipotent_integral(&m, &x, &dir, order, &opts).unwrap().value().is_zero());
        }
    }
}
