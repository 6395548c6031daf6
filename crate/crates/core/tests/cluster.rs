use proptest::prelude::*;
use qaffine::cluster::{
    enumerate, exchange_identity_holds, fraction_string, laurent_check, named_seed, type_a_seed, Seed, SEED_NAMES,
};

fn catalan(n: u64) -> u64 {
    (0..n).fold(1, |c, k| c * 2 * (2 * k + 1) / (k + 2))
}

#[test]
fn type_a_counts() {
    for n in 1..=4u64 {
        let e = enumerate(&type_a_seed(n as usize), 10_000);
        assert!(e.finite);
        assert_eq!(e.variables.len() as u64, n * (n + 3) / 2, "A{n} variables");
        assert_eq!(e.clusters.len() as u64, catalan(n + 1), "A{n} clusters");
        assert!(e.variables.iter().all(laurent_check), "A{n} Laurent phenomenon");
    }
}

#[test]
fn a2_variables() {
    let e = enumerate(&type_a_seed(2), 100);
    let mut shown: Vec<String> =
        e.variables.iter().map(|v| fraction_string(v.as_laurent().expect("Laurent"))).collect();
    shown.sort();
    assert_eq!(shown, ["(1 + X_1 + X_2)/X_1X_2", "(1 + X_1)/X_2", "(1 + X_2)/X_1", "X_1", "X_2"]);
}

#[test]
fn sl3_cm_counts() {
    let seed = named_seed("sl3_CM", 0).unwrap();
    let e = enumerate(&seed, 10_000);
    assert!(e.finite);
    assert_eq!((e.variables.len(), e.frozen.len()), (5, 2));
    assert!(e.variables.iter().all(laurent_check));
}

#[test]
fn budget_stops_infinite_windows() {
    let seed = named_seed("Gamma_inf_prime_sl2", 6).unwrap();
    let e = enumerate(&seed, 20);
    assert!(e.clusters.len() <= 20);
}

#[test]
fn seeds_round_trip_through_json() {
    for name in SEED_NAMES {
        let seed = named_seed(name, 4).unwrap();
        let back = Seed::from_json(&seed.to_json()).unwrap();
        assert_eq!(back.quiver.b, seed.quiver.b, "{name}");
        assert_eq!(back.quiver.vertices.len(), seed.quiver.vertices.len());
    }
}

#[test]
fn frozen_vertices_refuse_mutation() {
    let seed = named_seed("sl3_CM", 0).unwrap();
    let frozen = seed.quiver.vertices.iter().find(|v| v.frozen).unwrap().id;
    assert!(seed.mutate(frozen).is_err());
}

fn test_seed(idx: usize) -> Seed {
    match idx {
        0 => type_a_seed(3),
        1 => named_seed("sl3_CM", 0).unwrap(),
        2 => named_seed("sl2_CZminus", 4).unwrap(),
        _ => named_seed("Gamma_inf_prime_sl2", 4).unwrap(),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mutation_walks(idx in 0usize..4, path in prop::collection::vec(0usize..16, 0..6)) {
        let start = test_seed(idx);
        let ids: Vec<usize> = start.quiver.mutable_positions().iter().map(|&p| start.quiver.vertices[p].id).collect();
        let frozen: Vec<_> = start.quiver.vertices.iter().enumerate()
            .filter(|(_, v)| v.frozen).map(|(p, _)| (p, start.vars[p].clone())).collect();
        let mut seed = start.clone();
        for step in path {
            let k = ids[step % ids.len()];
            let next = seed.mutate(k).unwrap();
            prop_assert!(exchange_identity_holds(&seed, k, &next));

            let back = next.mutate(k).unwrap();
            prop_assert_eq!(&back.quiver.b, &seed.quiver.b);
            for (a, b) in back.vars.iter().zip(&seed.vars) {
                prop_assert!(a.same_value(b));
            }
            for (p, v) in &frozen {
                prop_assert_eq!(&next.vars[*p], v);
            }
            for i in 0..next.quiver.b.len() {
                prop_assert_eq!(next.quiver.b[i][i], 0);
                for j in 0..next.quiver.b.len() {
                    prop_assert_eq!(next.quiver.b[i][j], -next.quiver.b[j][i]);
                }
            }
            if idx <= 1 {
                prop_assert!(next.vars.iter().all(laurent_check));
            }
            seed = next;
        }
    }
}
