use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use qaffine::xxz::{
    bethe_check, build_transfer, commutativity, fit_spectrum, poly_eval, poly_roots, qwronskian, transfer_at,
    verify_qq_polynomial, ChainSpec, XxzError,
};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `Tr_a(diag(u^{1/2}, u^{-1/2}) R_{aN} ⋯ R_{a1})` on the full space
/// `aux ⊗ sites`, written out with explicit index loops.
fn dense_oracle(spec: &ChainSpec, z: Complex64) -> DMatrix<Complex64> {
    let n = spec.n;
    let dim = 1usize << n;
    let q = spec.q;
    let r = |zk: Complex64, ao: usize, so: usize, ai: usize, si: usize| -> Complex64 {
        let one = c(1.0, 0.0);
        match (ao, so, ai, si) {
            (0, 0, 0, 0) | (1, 1, 1, 1) => one - zk * q * q,
            (0, 1, 0, 1) | (1, 0, 1, 0) => q * (one - zk),
            (0, 1, 1, 0) => one - q * q,
            (1, 0, 0, 1) => (one - q * q) * zk,
            _ => c(0.0, 0.0),
        }
    };
    // Monodromy as a (2·dim)×(2·dim) matrix indexed by aux·dim + state.
    let mut mono = DMatrix::<Complex64>::identity(2 * dim, 2 * dim);
    for k in 0..n {
        let zk = z * spec.inhom[k];
        let mut rk = DMatrix::<Complex64>::zeros(2 * dim, 2 * dim);
        for ai in 0..2 {
            for s in 0..dim {
                let si = (s >> k) & 1;
                for ao in 0..2 {
                    for so in 0..2 {
                        let w = r(zk, ao, so, ai, si);
                        if w != c(0.0, 0.0) {
                            let t = (s & !(1 << k)) | (so << k);
                            rk[(ao * dim + t, ai * dim + s)] += w;
                        }
                    }
                }
            }
        }
        mono = rk * mono;
    }
    let su = spec.u.sqrt();
    let w = [su, su.inv()];
    DMatrix::from_fn(dim, dim, |i, j| w[0] * mono[(i, j)] + w[1] * mono[(dim + i, dim + j)])
}

fn spec(n: usize) -> ChainSpec {
    ChainSpec::homogeneous(n, ChainSpec::default_q(), c(0.5, 0.0)).unwrap()
}

#[test]
fn path_sum_matches_dense_monodromy() {
    for n in 1..=4 {
        let s = ChainSpec::with_shifts(&(0..n as i32).map(|k| k - 1).collect::<Vec<_>>(), c(0.8, 0.3), c(0.4, 0.2))
            .unwrap();
        for z in [c(0.3, -0.2), c(-1.1, 0.5)] {
            let got = transfer_at(&s, z).to_dense();
            let want = dense_oracle(&s, z);
            assert!((got - &want).norm() < 1e-12 * want.norm().max(1.0), "N={n}");
        }
    }
}

#[test]
fn transfer_matrices_commute() {
    for n in 1..=6 {
        assert!(commutativity(&spec(n), 5, 11).unwrap() < 1e-10, "N={n}");
    }
}

#[test]
fn spectrum_fits_for_small_chains() {
    for n in 1..=6 {
        let fit = fit_spectrum(&spec(n), 1).unwrap();
        assert_eq!(fit.eigen.len(), 1 << n, "N={n} complete eigenbasis");
        assert!(fit.max_lambda_degree() <= n);
        assert!(fit.max_lambda_residual() < 1e-9, "N={n} λ fit {}", fit.max_lambda_residual());
        assert!(fit.max_tq_residual() < 1e-8, "N={n} TQ {}", fit.max_tq_residual());
        for e in &fit.eigen {
            assert_eq!(e.q_coeffs.len(), e.down + 1);
            assert!(e.y_residual < 1e-8);
        }
        let (worst, skipped) = bethe_check(&fit);
        assert!(worst < 1e-8, "N={n} Bethe {worst}");
        assert!(skipped < fit.eigen.len());
        let qq = verify_qq_polynomial(&fit);
        assert!(qq.max_residual() < 1e-8, "N={n} QQ {}", qq.max_residual());
    }
}

#[test]
fn eigenvalues_sum_to_the_trace() {
    let s = spec(4);
    let fit = fit_spectrum(&s, 3).unwrap();
    for z in [c(0.2, 0.1), c(-0.6, 0.4)] {
        let sum: Complex64 = fit.eigen.iter().map(|e| e.lambda_at(z)).sum();
        let tr = transfer_at(&s, z).trace();
        assert!((sum - tr).norm() < 1e-9 * tr.norm().max(1.0));
    }
}

#[test]
fn single_site_wronskian() {
    // With Q_+ = 1 the partner is linear and the constant is 1 − ũ.
    let s = spec(1);
    let fit = fit_spectrum(&s, 1).unwrap();
    let qq = verify_qq_polynomial(&fit);
    let top = qq.entries.iter().find(|e| e.down == 0).unwrap();
    assert!((top.constant - (1.0 - top.twist)).norm() < 1e-10);
    let e1 = -(1.0 - top.twist) / (1.0 - top.twist / (s.q * s.q));
    assert!((top.q_minus[1] - e1).norm() < 1e-10);
    assert!(qq.max_residual() < 1e-8);
}

#[test]
fn guards() {
    let q = ChainSpec::default_q();
    assert!(matches!(ChainSpec::homogeneous(13, q, c(0.5, 0.0)), Err(XxzError::TooLarge(13))));
    assert!(matches!(ChainSpec::homogeneous(0, q, c(0.5, 0.0)), Err(XxzError::InvalidSpec(_))));
    assert!(matches!(ChainSpec::homogeneous(2, q, c(0.0, 0.0)), Err(XxzError::InvalidSpec(_))));
    assert!(matches!(ChainSpec::homogeneous(2, q, c(2.0, 0.0)), Err(XxzError::InvalidSpec(_))));
    let root = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
    assert!(matches!(ChainSpec::homogeneous(2, root, c(0.5, 0.0)), Err(XxzError::DegenerateQ(6))));
    assert!(matches!(build_transfer(&spec(3), &[c(0.1, 0.0)]), Err(XxzError::TooFewSamples { need: 5, got: 1 })));
}

#[test]
fn roots_reconstruct_polynomials() {
    let coeffs = [c(1.0, 0.0), c(-0.3, 0.2), c(0.05, -0.1), c(0.02, 0.01)];
    let roots = poly_roots(&coeffs);
    assert_eq!(roots.len(), 3);
    for z in [c(0.4, 0.3), c(-2.0, 1.0)] {
        let prod: Complex64 = roots.iter().map(|w| 1.0 - z / w).product();
        assert!((prod - poly_eval(&coeffs, z)).norm() < 1e-10);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn wronskian_swap_invariance(
        f in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..4),
        g in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1..4),
        zr in -1.0f64..1.0,
        zi in -1.0f64..1.0,
    ) {
        let f: Vec<Complex64> = f.into_iter().map(|(a, b)| c(a, b)).collect();
        let g: Vec<Complex64> = g.into_iter().map(|(a, b)| c(a, b)).collect();
        let (u, q, z) = (c(0.4, 0.1), c(0.7, 0.1), c(zr, zi));
        let fe = |w| poly_eval(&f, w);
        let ge = |w| poly_eval(&g, w);
        let a = qwronskian(&fe, &ge, u, q, z);
        let b = qwronskian(&ge, &fe, u, q.inv(), z);
        prop_assert!((a - b).norm() < 1e-12 * (1.0 + a.norm()));
    }

    #[test]
    fn random_pairs_commute(n in 1usize..=4, re in 0.3f64..0.9, im in -0.3f64..0.3, seed in 0u64..1000) {
        let s = ChainSpec::homogeneous(n, c(re, im), c(0.7, 0.2)).unwrap();
        prop_assert!(commutativity(&s, 3, seed).unwrap() < 1e-10);
    }
}
