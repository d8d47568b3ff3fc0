use dyshift_core::cartan::{datum, CartanType};
use dyshift_core::freealg::{instances, reduce_modulo_templates, relation_template, Family, FreeElem, Letter, Side, Sign};
use dyshift_core::liealg::{build_simple, omega_reduce, random_uce, uce_bracket, RingTag};
use dyshift_core::limitphi::{gamma_ring, phi_gamma, LPoly, TruncSeries};
use dyshift_core::linalg::{axpy, rank_and_kernel, SparseVec};
use dyshift_core::morphisms::{chi, tau_c_elem};
use dyshift_core::scalar::{q, qf, Q};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small_q() -> impl Strategy<Value = Q> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| qf(n, d))
}

fn yangian_letter() -> impl Strategy<Value = Letter> {
    prop_oneof![
        (1usize..=2, 0i64..=3).prop_map(|(i, r)| Letter::X(Sign::Plus, i, r)),
        (1usize..=2, 0i64..=3).prop_map(|(i, r)| Letter::X(Sign::Minus, i, r)),
        (1usize..=2, 1i64..=3).prop_map(|(i, r)| Letter::H(i, r)),
    ]
}

fn word_elem(letters: &[Letter]) -> FreeElem {
    let d = datum("A2");
    letters
        .iter()
        .map(|l| FreeElem::gen(&d, Side::Yangian, *l).unwrap())
        .fold(FreeElem::one(Side::Yangian), |acc, g| &acc * &g)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn shifts_compose(a in small_q(), b in small_q(), w in prop::collection::vec(yangian_letter(), 1..3)) {
        let d = datum("A2");
        let x = word_elem(&w);
        let lhs = tau_c_elem(&d, &a, &tau_c_elem(&d, &b, &x).unwrap()).unwrap();
        let rhs = tau_c_elem(&d, &(&a + &b), &x).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn chi_is_multiplicative(a in small_q(), u in prop::collection::vec(yangian_letter(), 1..3), v in prop::collection::vec(yangian_letter(), 1..3)) {
        prop_assume!(a != q(0));
        let (x, y) = (word_elem(&u), word_elem(&v));
        let lhs = chi(&a, &(&x * &y)).unwrap();
        let rhs = &chi(&a, &x).unwrap() * &chi(&a, &y).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn template_combinations_reduce_to_zero(seed in 0u64..1000, k in 1usize..4) {
        let d = datum("A2");
        let fams = [Family::Xh, Family::Xx, Family::Hh];
        let all = instances(&d, Side::Yangian, &fams, 2, |_, _| true);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        use rand::Rng;
        let first = relation_template(&d, Side::Yangian, all[rng.gen_range(0..all.len())].clone()).unwrap();
        let deg = first.element.degree().unwrap();
        let wt = first.element.weight().unwrap();
        let same: Vec<_> = all
            .into_iter()
            .map(|ix| relation_template(&d, Side::Yangian, ix).unwrap())
            .filter(|t| t.element.degree() == Some(deg) && t.element.weight().unwrap() == wt)
            .collect();
        let mut e = first.element.scale(&qf(rng.gen_range(1..5), 3));
        for _ in 0..k {
            let t = &same[rng.gen_range(0..same.len())];
            e += &t.element.scale(&qf(rng.gen_range(-4..5), rng.gen_range(1..4)));
        }
        let red = reduce_modulo_templates(&e, &d, &fams, 2).unwrap();
        prop_assert!(red.residual.is_zero());
        // the certificate reassembles the input
        let mut back = red.residual.clone();
        for (t, c) in &red.certificate {
            back += &t.element.scale_h(c);
        }
        prop_assert_eq!(back, e);
    }

    #[test]
    fn omega_kills_exact_forms(r in -8i64..=8, s in -8i64..=8) {
        let ring = RingTag::VtLaurent;
        let mut z = omega_reduce(ring, (r, s - 1), (0, 1)).unwrap().scale(&q(s));
        z.axpy(&q(r), &omega_reduce(ring, (r - 1, s), (1, 0)).unwrap());
        prop_assert!(z.is_zero());
    }

    #[test]
    fn uce_bracket_is_a_lie_bracket(seed in 0u64..10_000, ring in 0usize..3) {
        let g = build_simple(CartanType::parse("A2").unwrap()).unwrap();
        let ring = RingTag::all()[ring];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_uce(&g, ring, &mut rng, 2, 2);
        let y = random_uce(&g, ring, &mut rng, 2, 2);
        let z = random_uce(&g, ring, &mut rng, 2, 2);
        let mut anti = uce_bracket(&g, &x, &y).unwrap();
        anti.try_axpy(&q(1), &uce_bracket(&g, &y, &x).unwrap()).unwrap();
        prop_assert!(anti.is_zero());
        let mut j = uce_bracket(&g, &x, &uce_bracket(&g, &y, &z).unwrap()).unwrap();
        j.try_axpy(&q(1), &uce_bracket(&g, &y, &uce_bracket(&g, &z, &x).unwrap()).unwrap()).unwrap();
        j.try_axpy(&q(1), &uce_bracket(&g, &z, &uce_bracket(&g, &x, &y).unwrap()).unwrap()).unwrap();
        prop_assert!(j.is_zero());
    }

    #[test]
    fn phi_gamma_preserves_brackets(seed in 0u64..10_000, m in 1u32..7) {
        let g = build_simple(CartanType::parse("A2").unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_uce(&g, RingTag::VwLaurent, &mut rng, 2, 2);
        let y = random_uce(&g, RingTag::VwLaurent, &mut rng, 2, 2);
        let lhs = phi_gamma(&uce_bracket(&g, &x, &y).unwrap(), m).unwrap();
        let rhs = TruncSeries::bracket(&g, &phi_gamma(&x, m).unwrap(), &phi_gamma(&y, m).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn gamma_is_a_ring_map(a in prop::collection::btree_map((-3i64..=3, -3i64..=3), small_q(), 0..4),
                           b in prop::collection::btree_map((-3i64..=3, -3i64..=3), small_q(), 0..4),
                           m in 1u32..7) {
        let mul = |x: &LPoly, y: &LPoly, cap: Option<u32>| {
            let mut out = SparseVec::new();
            for ((i, j), c) in x {
                for ((k, l), d) in y {
                    if cap.map_or(true, |m| j + l < m as i64) {
                        axpy(&mut out, &(c * d), &[((i + k, j + l), q(1))].into_iter().collect());
                    }
                }
            }
            out
        };
        let a: LPoly = a.into_iter().filter(|(_, c)| *c != q(0)).collect();
        let b: LPoly = b.into_iter().filter(|(_, c)| *c != q(0)).collect();
        prop_assert_eq!(gamma_ring(&mul(&a, &b, None), m), mul(&gamma_ring(&a, m), &gamma_ring(&b, m), Some(m)));
    }

    #[test]
    fn rank_plus_nullity(cols in prop::collection::vec(prop::collection::btree_map(0u8..5, -3i64..=3, 0..4), 0..7)) {
        let cols: Vec<SparseVec<u8>> = cols
            .into_iter()
            .map(|c| c.into_iter().filter(|(_, v)| *v != 0).map(|(k, v)| (k, q(v))).collect())
            .collect();
        let (rank, kernel) = rank_and_kernel(&cols);
        prop_assert_eq!(rank + kernel.len(), cols.len());
        for rel in &kernel {
            let mut s = SparseVec::new();
            for (j, c) in rel {
                axpy(&mut s, c, &cols[*j]);
            }
            prop_assert!(s.is_empty());
        }
    }
}
