use num_bigint::BigInt;
use proptest::prelude::*;
use qaffine::qchar::{
    fm_fundamental, fm_with, kr_highest, multiply, sl2_simple_character, sl2_string_character, t_system_check_sl2,
    t_system_identity, weight_multiset, weights_are_self_dual, Discipline, FmOptions, QCharError, QCharResult,
};
use qaffine::vars::{mono, node_part, y, Y};
use qaffine::{CartanData, YLaurent, YMonomial};

/// Closed form of the sl2 string character: the `j`-th term lowers the last
/// `j` factors `Y_{s}` to `Y_{s+2}^{-1}`.
fn string_oracle(r: i64, k: usize) -> YLaurent {
    let mut out = YLaurent::zero();
    for j in 0..=k {
        let mut m = YMonomial::one();
        for l in 0..k {
            let s = r + 2 * l as i64;
            if l < k - j {
                m = m.mul(&y(1, s));
            } else {
                m = m.div(&y(1, s + 2));
            }
        }
        out.add_term(m, BigInt::from(1));
    }
    out
}

fn dim(label: &str, node: usize) -> BigInt {
    fm_fundamental(&CartanData::from_label(label).unwrap(), node, 0).unwrap().dimension()
}

fn binom(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, i| acc * (n + 1 - i) / i)
}

#[test]
fn sl2_fundamental() {
    let cd = CartanData::from_label("A1").unwrap();
    let qc = fm_fundamental(&cd, 1, 0).unwrap();
    assert_eq!(qc.poly, &YLaurent::monomial(y(1, 0)) + &YLaurent::monomial(mono::<Y>(&[(1, 2, -1)])));
    assert_eq!(qc.dominant, vec![y(1, 0)]);
}

#[test]
fn string_characters_match_closed_form() {
    for r in -6..=6 {
        for k in 0..=5 {
            assert_eq!(sl2_string_character(r, k).poly, string_oracle(r, k), "r={r} k={k}");
        }
    }
}

#[test]
fn kr_modules_of_sl2_are_strings() {
    let cd = CartanData::from_label("A1").unwrap();
    for k in 1..=4 {
        let qc = fm_with(&cd, &kr_highest(&cd, 1, -3, k).unwrap(), &FmOptions::default()).unwrap();
        assert_eq!(qc.poly, string_oracle(-3, k));
    }
}

#[test]
fn t_system_sl2() {
    for k in 1..=5 {
        for r in -10..=10 {
            let c = t_system_check_sl2(r, k).unwrap();
            assert!(c.holds, "r={r} k={k}: {}", c.difference);
        }
    }
}

#[test]
fn t_system_identity_on_results() {
    let s = |r, k| sl2_string_character(r, k);
    let one = QCharResult::from_polynomial(CartanData::from_label("A1").unwrap(), YLaurent::one()).unwrap();
    assert!(t_system_identity(&s(0, 2), &s(2, 2), &s(0, 3), &s(2, 1), &one).unwrap().holds);
    assert!(!t_system_identity(&s(0, 2), &s(4, 2), &s(0, 3), &s(2, 1), &one).unwrap().holds);
    let b2 = fm_fundamental(&CartanData::from_label("B2").unwrap(), 1, 0).unwrap();
    assert!(matches!(t_system_identity(&b2, &s(0, 1), &s(0, 1), &s(0, 1), &one), Err(QCharError::MismatchedCartan)));
}

#[test]
fn minuscule_dimensions() {
    for n in 1..=5u64 {
        for i in 1..=n {
            assert_eq!(dim(&format!("A{n}"), i as usize), BigInt::from(binom(n + 1, i)), "A{n} node {i}");
        }
    }
    for n in 2..=4u32 {
        assert_eq!(dim(&format!("B{n}"), n as usize), BigInt::from(2u64.pow(n)), "spin B{n}");
        assert_eq!(dim(&format!("C{n}"), 1), BigInt::from(2 * n), "C{n} vector");
    }
    for n in 4..=5u32 {
        let label = format!("D{n}");
        assert_eq!(dim(&label, 1), BigInt::from(2 * n));
        assert_eq!(dim(&label, n as usize), BigInt::from(2u64.pow(n - 1)));
        assert_eq!(dim(&label, n as usize - 1), BigInt::from(2u64.pow(n - 1)));
    }
    assert_eq!(dim("E6", 1), BigInt::from(27));
    assert_eq!(dim("E7", 7), BigInt::from(56));
    assert_eq!(dim("G2", 1), BigInt::from(7));
}

#[test]
fn adjoint_node_dimensions() {
    // The fundamental module at the adjoint node is the adjoint plus a trivial summand.
    assert_eq!(dim("D4", 2), BigInt::from(29));
    assert_eq!(dim("G2", 2), BigInt::from(15));
    assert_eq!(dim("F4", 1), BigInt::from(53));
    assert_eq!(dim("F4", 4), BigInt::from(26));
    assert_eq!(dim("B2", 1), BigInt::from(5));
    assert_eq!(dim("B2", 2), BigInt::from(4));
}

#[test]
fn unique_dominant_monomial() {
    for (label, node) in [("A3", 2), ("B3", 1), ("C3", 2), ("D4", 2), ("G2", 1)] {
        let qc = fm_fundamental(&CartanData::from_label(label).unwrap(), node, 0).unwrap();
        assert_eq!(qc.dominant, vec![y(node, 0)], "{label}");
    }
}

/// Setting every `Y_{k,·}` with `k ≠ j` to 1, the polynomial equals the sum
/// of the witness strings, rebuilt here from the closed form.
fn witness_rebuilds(qc: &QCharResult) {
    for j in qc.cartan.nodes() {
        let step = 2 * qc.cartan.di(j);
        let mut rebuilt = YLaurent::zero();
        for w in &qc.witness[&j] {
            assert!(w.multiplicity > BigInt::from(0));
            let mut chi = YLaurent::one();
            for s in &w.strings {
                let mut part = YLaurent::zero();
                for t in 0..=s.len {
                    let mut m = YMonomial::one();
                    for l in 0..s.len {
                        let sh = s.start + step * l as i64;
                        m = if l < s.len - t { m.mul(&y(j, sh)) } else { m.div(&y(j, sh + step)) };
                    }
                    part.add_term(m, BigInt::from(1));
                }
                chi = &chi * &part;
            }
            rebuilt += &chi.scale(&w.multiplicity);
        }
        let projected = YLaurent::from_terms(qc.poly.terms().map(|(m, c)| (node_part(m, j), c.clone())));
        assert_eq!(rebuilt, projected, "node {j}");
    }
}

#[test]
fn witnesses_are_consistent() {
    for (label, node) in [("A1", 1), ("A2", 1), ("B2", 1), ("B2", 2), ("G2", 2), ("D4", 1)] {
        witness_rebuilds(&fm_fundamental(&CartanData::from_label(label).unwrap(), node, 0).unwrap());
    }
}

#[test]
fn weights_are_palindromic() {
    for (label, node) in [("A1", 1), ("A2", 1), ("A3", 1), ("A3", 2), ("B2", 1), ("D4", 2), ("G2", 1)] {
        let qc = fm_fundamental(&CartanData::from_label(label).unwrap(), node, 0).unwrap();
        assert!(weights_are_self_dual(&qc), "{label} node {node}");
        let total: BigInt = weight_multiset(&qc).values().sum();
        assert_eq!(total, qc.dimension());
    }
}

#[test]
fn budget_guard() {
    let cd = CartanData::from_label("E8").unwrap();
    let opts = FmOptions { budget: 50, discipline: Discipline::Forward };
    assert!(matches!(fm_with(&cd, &y(1, 0), &opts), Err(QCharError::NonTermination(_))));
}

#[test]
fn non_dominant_top_is_rejected() {
    let cd = CartanData::from_label("A2").unwrap();
    assert!(fm_with(&cd, &mono::<Y>(&[(1, 0, -1)]), &FmOptions::default()).is_err());
}

#[test]
fn products_multiply_dimensions() {
    let cd = CartanData::from_label("A2").unwrap();
    let a = fm_fundamental(&cd, 1, 0).unwrap();
    let b = fm_fundamental(&cd, 2, 5).unwrap();
    assert_eq!(multiply(&a, &b).unwrap().dimension(), BigInt::from(9));
}

#[test]
fn sl2_simple_character_factorizes_over_general_position() {
    // Shifts 0 and 6 are in general position: the simple is a tensor product.
    let joint = sl2_simple_character(&[0, 6]).poly;
    assert_eq!(joint, &string_oracle(0, 1) * &string_oracle(6, 1));
    // Shifts 0 and 2 form a string: the 3-dimensional KR module.
    assert_eq!(sl2_simple_character(&[0, 2]).poly, string_oracle(0, 2));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn discipline_independence(
        (label, node) in prop::sample::select(vec![("A2", 1), ("A3", 2), ("B2", 1), ("B2", 2), ("C3", 1), ("G2", 2), ("D4", 2)]),
        shift in -6i64..=6,
    ) {
        let cd = CartanData::from_label(label).unwrap();
        let run = |discipline| {
            let opts = FmOptions { discipline, ..FmOptions::default() };
            fm_with(&cd, &y(node, shift), &opts).unwrap()
        };
        let (f, r) = (run(Discipline::Forward), run(Discipline::Reverse));
        prop_assert_eq!(f.to_json().to_string(), r.to_json().to_string());
    }

    #[test]
    fn shift_covariance(shift in -8i64..=8) {
        let cd = CartanData::from_label("B2").unwrap();
        let base = fm_fundamental(&cd, 2, 0).unwrap().poly;
        let moved = fm_fundamental(&cd, 2, shift).unwrap().poly;
        let shifted = base.map_vars(|v| <Y as qaffine::vars::NodeVar>::new(v.node, v.shift + shift));
        prop_assert_eq!(moved, shifted);
    }
}
