use lieimage::engine::{image_bruteforce, image_reduced};
use lieimage::gf::Field;
use lieimage::lieword::LieWord;
use lieimage::sl2::{classify, conjugate, Mat2, OrbitLabel, Sl2Element};
use proptest::prelude::*;

fn two_var_word() -> impl Strategy<Value = LieWord> {
    let leaf = (1usize..3).prop_map(LieWord::Var);
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(l, r)| LieWord::bracket(l, r)),
            (inner.clone(), inner.clone()).prop_map(|(l, r)| LieWord::Sum(vec![l, r])),
            (-3i64..4, inner.clone()).prop_map(|(c, b)| LieWord::scalar(c, b)),
            (inner.clone(), 1u64..7, inner).prop_map(|(b, n, x)| LieWord::ad_pow(b, n, x)),
        ]
    })
    .prop_filter("uses x2", |w| w.arity() == 2)
}

fn element(field: Field) -> impl Strategy<Value = Sl2Element> {
    (0..field.q().pow(3)).prop_map(move |i| Sl2Element::from_index(field, i))
}

fn invertible(field: Field) -> impl Strategy<Value = Mat2> {
    let q = field.q();
    prop::array::uniform4(0..q)
        .prop_map(move |c| Mat2([[field.element(c[0]), field.element(c[1])], [field.element(c[2]), field.element(c[3])]]))
        .prop_filter("invertible", |m| !m.det().is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_commutes_with_conjugation(
        w in two_var_word(),
        x in element(Field::with_order(7).unwrap()),
        y in element(Field::with_order(7).unwrap()),
        g in invertible(Field::with_order(7).unwrap()),
    ) {
        let lhs = w.evaluate(&[conjugate(&g, &x).unwrap(), conjugate(&g, &y).unwrap()]).unwrap();
        let rhs = conjugate(&g, &w.evaluate(&[x, y]).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conjugation_preserves_labels(x in element(Field::with_order(9).unwrap()), g in invertible(Field::with_order(9).unwrap())) {
        prop_assert_eq!(classify(&conjugate(&g, &x).unwrap()), classify(&x));
    }

    #[test]
    fn reduced_matches_bruteforce_q3(w in two_var_word()) {
        let f = Field::with_order(3).unwrap();
        let brute = image_bruteforce(&w, f).unwrap();
        let reduced = image_reduced(&w, f).unwrap();
        prop_assert!(brute.contains(&OrbitLabel::Zero));
        prop_assert_eq!(brute, reduced);
    }

    #[test]
    fn scaled_descriptor_matches_scaled_word(w in two_var_word(), c in 1i64..5) {
        let f = Field::with_order(5).unwrap();
        let img = image_reduced(&w, f).unwrap();
        let scaled = image_reduced(&LieWord::scalar(c, w), f).unwrap();
        prop_assert_eq!(img.scaled(f.from_int(c)), scaled);
    }
}
