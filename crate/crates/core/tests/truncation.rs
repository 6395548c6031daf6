use std::collections::BTreeSet;

use proptest::prelude::*;
use qaffine::truncation::{
    chain_search, chi_table, chi_z, comes_from, conjecture_enumerate, lambda_monomial, preceq, shortest_chains,
    ChiTables, TruncationParam,
};
use qaffine::{CartanData, PsiWeight};

fn cd(label: &str) -> CartanData {
    CartanData::from_label(label).unwrap()
}

fn lambda_product(cd: &CartanData, c: &[(usize, i64)]) -> PsiWeight {
    c.iter().fold(PsiWeight::one(), |acc, &(i, r)| acc.mul(&lambda_monomial(cd, i, r).unwrap()))
}

/// Every product of at most `deg` factors `Λ_{i,r}` with `r` in the window.
fn brute_force(cd: &CartanData, window: std::ops::RangeInclusive<i64>, deg: usize) -> BTreeSet<PsiWeight> {
    let gens: Vec<(usize, i64)> = cd.nodes().flat_map(|i| window.clone().map(move |r| (i, r))).collect();
    let mut level = BTreeSet::from([PsiWeight::one()]);
    let mut all = level.clone();
    for _ in 0..deg {
        level = level.iter().flat_map(|p| gens.iter().map(|&g| p.mul(&lambda_product(cd, &[g])))).collect();
        all.extend(level.iter().cloned());
    }
    all
}

#[test]
fn preceq_agrees_with_brute_force() {
    for label in ["A1", "A2", "B2"] {
        let cd = cd(label);
        let z = PsiWeight::from_triples(&[(1, 0, 1), (cd.rank(), 2, 1)]);
        let products = brute_force(&cd, -3..=3, 2);
        for p in &products {
            let psi = z.div(p);
            let cert = preceq(&cd, &psi, &z).unwrap_or_else(|| panic!("{label}: {p} not found"));
            let rebuilt = lambda_product(&cd, &cert.entries.iter().flat_map(|&(i, r, e)| (0..e).map(move |_| (i, r))).collect::<Vec<_>>());
            assert_eq!(&rebuilt, p);
            assert!(cert.entries.iter().all(|e| e.2 > 0));
        }
        // Inverses of nontrivial products are never below.
        for p in products.iter().filter(|p| **p != PsiWeight::one()) {
            assert!(preceq(&cd, &z.mul(p), &z).is_none(), "{label}: {p}");
        }
    }
}

#[test]
fn preceq_rejects_other_weights() {
    let b2 = cd("B2");
    let z = PsiWeight::from_triples(&[(2, 0, 1)]);
    assert!(preceq(&b2, &PsiWeight::from_triples(&[(2, 2, 1)]), &z).is_none());
    assert!(preceq(&b2, &PsiWeight::from_triples(&[(1, 0, 1)]), &z).is_none());
}

fn corpus() -> Vec<(&'static str, TruncationParam)> {
    vec![
        ("A1", TruncationParam::new(vec![vec![0]])),
        ("A1", TruncationParam::new(vec![vec![0, -2, -6]])),
        ("A2", TruncationParam::new(vec![vec![0], vec![]])),
        ("A2", TruncationParam::new(vec![vec![0], vec![2]])),
        ("B2", TruncationParam::new(vec![vec![], vec![0]])),
        ("B2", TruncationParam::new(vec![vec![0], vec![]])),
        ("B2", TruncationParam::new(vec![vec![-6], vec![0, -2, -6]])),
        ("B2", TruncationParam::new(vec![vec![0], vec![-4, -6]])),
    ]
}

#[test]
fn enumerated_parameters_are_below_z() {
    for (label, z) in corpus() {
        let cd = cd(label);
        let zpsi = z.to_psi();
        for e in conjecture_enumerate(&cd, &z, None).unwrap() {
            let cert = preceq(&cd, &e.psi, &zpsi).unwrap_or_else(|| panic!("{label} {}: {} not below", z.to_json(), e.psi));
            // Degree bookkeeping: deg Z − deg Ψ_M is the degree of the certificate.
            let lambdas = cert.entries.iter().fold(PsiWeight::one(), |acc, &(i, r, k)| {
                acc.mul(&lambda_monomial(&cd, i, r).unwrap().pow(k))
            });
            let expect: Vec<i64> = z.degree().iter().zip(lambdas.degree(cd.rank())).map(|(a, b)| a - b).collect();
            assert_eq!(e.mu, expect, "{label}");
            assert_eq!(e.mu, e.psi.degree(cd.rank()));
        }
    }
}

#[test]
fn lambda_degree_in_rank_one() {
    assert_eq!(lambda_monomial(&cd("A1"), 1, 3).unwrap().degree(1), vec![2]);
}

#[test]
fn chi_of_z_is_the_product_of_tables() {
    // A factor (1 - zq^s) contributes the table at q^{-s}.
    let b2 = cd("B2");
    let z = TruncationParam::new(vec![vec![0], vec![2]]);
    let prod = &chi_table(&b2, 1, 0).unwrap() * &chi_table(&b2, 2, -2).unwrap();
    assert_eq!(chi_z(&b2, &z, None).unwrap(), prod);
    let list = conjecture_enumerate(&b2, &z, None).unwrap();
    assert_eq!(list.len(), prod.len());
    let total: num_bigint::BigInt = list.iter().map(|e| &e.multiplicity).sum();
    assert_eq!(total, 24.into());
}

#[test]
fn b2_counts() {
    let b2 = cd("B2");
    assert_eq!(conjecture_enumerate(&b2, &TruncationParam::new(vec![vec![], vec![0]]), None).unwrap().len(), 6);
    assert_eq!(conjecture_enumerate(&b2, &TruncationParam::new(vec![vec![0], vec![]]), None).unwrap().len(), 4);
}

#[test]
fn extremal_parameters_on_the_counterexample_corpus() {
    let b2 = cd("B2");
    let z = TruncationParam::new(vec![vec![-6], vec![0, -2, -6]]);
    let z1 = TruncationParam::new(vec![vec![0], vec![-4, -6]]);
    let z2 = TruncationParam::new(vec![vec![0, -4, -6], vec![]]);
    // Z' comes from χ(Z) and lies below Z.
    assert!(comes_from(&b2, &z, &z1.to_psi(), None).unwrap().is_some());
    assert!(preceq(&b2, &z1.to_psi(), &z.to_psi()).is_some());
    // Z'' lies below Z but only comes from χ(Z').
    assert!(preceq(&b2, &z2.to_psi(), &z.to_psi()).is_some());
    assert!(comes_from(&b2, &z, &z2.to_psi(), None).unwrap().is_none());
    assert!(comes_from(&b2, &z1, &z2.to_psi(), None).unwrap().is_some());

    let chains = shortest_chains(&b2, &z, &z2.to_psi(), 3, None).unwrap();
    assert!(chains.iter().all(|c| c.params.len() == 2 && c.params[0] == z));
    assert!(chains.iter().any(|c| c.params[1] == z1));
    let first = chain_search(&b2, &z, &z2.to_psi(), 3, None).unwrap().unwrap();
    assert_eq!(first, chains[0]);
    assert_eq!(first.steps_len(), 1);
    assert!(chain_search(&b2, &z, &z2.to_psi(), 0, None).unwrap().is_none());
}

#[test]
fn user_tables_replace_builtin_ones() {
    let json = serde_json::json!({
        "type": "A1",
        "tables": {"1": [{"coef": 1, "monomial": [[1, 0, 1]]}, {"coef": 1, "monomial": [[1, 2, -1]]}]}
    });
    let tables = ChiTables::from_json(&json).unwrap();
    let a1 = cd("A1");
    let z = TruncationParam::new(vec![vec![0]]);
    assert_eq!(chi_z(&a1, &z, Some(&tables)).unwrap(), chi_z(&a1, &z, None).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn lambda_lowering_is_detected(
        label in prop::sample::select(vec!["A1", "A2", "B2"]),
        lows in prop::collection::vec((1usize..=2, -6i64..=6), 0..5),
    ) {
        let cd = cd(label);
        let lows: Vec<_> = lows.into_iter().filter(|l| l.0 <= cd.rank()).collect();
        let z = TruncationParam::new((1..=cd.rank()).map(|i| vec![0, 2 * i as i64]).collect()).to_psi();
        let psi = z.div(&lambda_product(&cd, &lows));
        let cert = preceq(&cd, &psi, &z).expect("product of Λ is below");
        prop_assert_eq!(cert.total(), lows.len() as i64);
    }

    #[test]
    fn enumeration_is_translation_covariant(shift in -4i64..=4) {
        let b2 = cd("B2");
        let count = |s: i64| conjecture_enumerate(&b2, &TruncationParam::new(vec![vec![s], vec![s + 1]]), None).unwrap().len();
        prop_assert_eq!(count(0), count(shift));
    }
}
