use proptest::prelude::*;
use qaffine::qchar::sl2_simple_character;
use qaffine::qgroth::{canonical_class, n_exponent, CanonicalBasis, KtElement, QGrothError, TPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn g(r: i64) -> KtElement {
    KtElement::generator(r)
}

fn random_element(rng: &mut impl Rng) -> KtElement {
    let mut x = KtElement::zero();
    for _ in 0..rng.random_range(1..=3) {
        let len = rng.random_range(0..=3);
        let word: Vec<i64> = (0..len).map(|_| 2 * rng.random_range(-3..=3)).collect();
        let pairs: Vec<(i64, i64)> =
            (0..rng.random_range(1..=2)).map(|_| (rng.random_range(-4..=4), rng.random_range(-3..=3))).collect();
        x = &x + &KtElement::word(&word, TPoly::from_pairs(&pairs));
    }
    x
}

#[test]
fn star_commutation_relations() {
    // Gap 2: g_0 g_2 = t^{-2} g_2 g_0 + (1 - t^{-2}).
    let lhs = g(0).star(&g(2));
    let rhs = &g(2).star(&g(0)).scale(&TPoly::term(-4, 1)) + &KtElement::scalar(TPoly::from_pairs(&[(0, 1), (-4, -1)]));
    assert_eq!(lhs, rhs);
    // Gap 4: g_0 g_4 = t^{2} g_4 g_0.
    assert_eq!(g(0).star(&g(4)), g(4).star(&g(0)).scale(&TPoly::term(4, 1)));
    // Odd and large gaps commute.
    assert_eq!(g(0).star(&g(3)), g(3).star(&g(0)));
    assert_eq!(n_exponent(6), -2);
    assert_eq!(n_exponent(8), 2);
}

#[test]
fn canonical_pair_is_the_kr_module() {
    let l = canonical_class(&[0, 2]).unwrap();
    assert!(l.is_bar_invariant());
    let chi = l.at_t_one();
    assert_eq!(chi, sl2_simple_character(&[0, 2]).poly);
    assert_eq!(chi.coefficient_sum(), 3.into());
    assert_eq!(l.to_string(), "(t)g_0g_2 + (-t)");
}

#[test]
fn empty_multiset_is_rejected() {
    assert!(matches!(canonical_class(&[]), Err(QGrothError::EmptyMultiset)));
}

#[test]
fn bar_and_associativity_on_random_elements() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let (a, b, c) = (random_element(&mut rng), random_element(&mut rng), random_element(&mut rng));
        assert_eq!(a.star(&b).star(&c), a.star(&b.star(&c)), "associativity");
        assert_eq!(a.bar().bar(), a, "involution");
        assert_eq!(a.star(&b).bar(), b.bar().star(&a.bar()), "anti-automorphism");
        assert_eq!((&a + &b).bar(), &a.bar() + &b.bar());
        assert_eq!(KtElement::one().star(&a), a);
    }
}

#[test]
fn evaluation_and_positivity_on_small_multisets() {
    let mut basis = CanonicalBasis::new();
    let window: Vec<i64> = (-6..=6).collect();
    let mut sets = Vec::new();
    for (i, &a) in window.iter().enumerate() {
        sets.push(vec![a]);
        for (j, &b) in window.iter().enumerate().skip(i) {
            sets.push(vec![a, b]);
            for &c in window.iter().skip(j) {
                sets.push(vec![a, b, c]);
            }
        }
    }
    for s in &sets {
        let l = basis.canonical(s);
        assert!(l.is_bar_invariant(), "{s:?}");
        assert_eq!(l.at_t_one(), sl2_simple_character(s).poly, "{s:?}");
        for (w, p) in basis.kl_polynomials(s).unwrap() {
            assert!(p.is_nonnegative(), "{s:?} at {w:?}: {p}");
        }
    }
}

#[test]
fn kl_polynomials_of_the_pair() {
    let kl = CanonicalBasis::new().kl_polynomials(&[0, 2]).unwrap();
    assert_eq!(kl.get(&vec![]), Some(&TPoly::term(-2, 1)));
    assert_eq!(kl.get(&vec![0, 2]), Some(&TPoly::one()));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn tpoly_bar_is_an_involutive_ring_map(a in prop::collection::vec((-6i64..=6, -4i64..=4), 0..4), b in prop::collection::vec((-6i64..=6, -4i64..=4), 0..4)) {
        let (a, b) = (TPoly::from_pairs(&a), TPoly::from_pairs(&b));
        prop_assert_eq!(a.bar().bar(), a.clone());
        prop_assert_eq!((&a * &b).bar(), &a.bar() * &b.bar());
        prop_assert_eq!((&a + &b).at_one(), a.at_one() + b.at_one());
    }

    #[test]
    fn products_commute_at_t_one(x in prop::collection::vec(-4i64..=4, 1..4), y in prop::collection::vec(-4i64..=4, 1..4)) {
        let a = KtElement::ordered_product(&x);
        let b = KtElement::ordered_product(&y);
        prop_assert_eq!(a.star(&b).at_t_one(), b.star(&a).at_t_one());
    }
}
