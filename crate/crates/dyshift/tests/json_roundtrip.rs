use dyshift::json::{free_from_json, free_to_json, uce_from_json, uce_to_json};
use dyshift_core::cartan::{datum, CartanType};
use dyshift_core::freealg::{FreeElem, Letter, Side, Sign};
use dyshift_core::liealg::{build_simple, random_uce, RingTag};
use dyshift_core::scalar::{qf, HPoly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        (1usize..=2, -3i64..=3).prop_map(|(i, r)| Letter::X(Sign::Plus, i, r)),
        (1usize..=2, -3i64..=3).prop_map(|(i, r)| Letter::X(Sign::Minus, i, r)),
        (1usize..=2, -3i64..=3).prop_map(|(i, r)| Letter::H(i, r)),
    ]
}

proptest! {
    #[test]
    fn free_elements_round_trip(words in prop::collection::vec((prop::collection::vec(letter(), 0..3), -5i64..5, 1i64..4, 0u32..3), 0..5)) {
        let d = datum("A2");
        let mut e = FreeElem::zero(Side::Double);
        for (w, n, den, h) in words {
            let g = w.iter().map(|l| FreeElem::gen(&d, Side::Double, *l).unwrap()).fold(FreeElem::one(Side::Double), |a, b| &a * &b);
            e += &g.scale_h(&HPoly::monomial(h, qf(n, den)));
        }
        let v = free_to_json(&e);
        let text = v.to_string();
        let back = free_from_json(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back, e);
    }

    #[test]
    fn uce_elements_round_trip(seed in 0u64..5000, ring in 0usize..3) {
        let g = build_simple(CartanType::parse("A2").unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = RingTag::all()[ring];
        let x = random_uce(&g, ring, &mut rng, 3, 2);
        let y = random_uce(&g, ring, &mut rng, 3, 2);
        let e = dyshift_core::liealg::uce_bracket(&g, &x, &y).unwrap();
        let back = uce_from_json(&g, &uce_to_json(&g, &e)).unwrap();
        prop_assert_eq!(back, e);
    }
}

#[test]
fn malformed_json_is_rejected() {
    let bad = serde_json::json!({"terms": [{"word": [["Q", 1, 0]], "coeff": {"0": "1"}}]});
    assert!(free_from_json(&bad).is_err());
    let bad = serde_json::json!({"terms": [{"word": [], "coeff": {"x": "1"}}]});
    assert!(free_from_json(&bad).is_err());
    let g = build_simple(CartanType::parse("A1").unwrap()).unwrap();
    let bad = serde_json::json!({"ring": "v_t_poly", "loop": [{"i": 0, "v": 0, "t": -1, "coeff": "1"}], "central": {"K": [], "cv": "0", "ct": "0"}});
    assert!(uce_from_json(&g, &bad).is_err());
}
