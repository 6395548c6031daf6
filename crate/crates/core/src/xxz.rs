//! Numeric bench for the twisted sl2 XXZ chain: transfer matrices per
//! magnetization sector, eigenvalue polynomials, Baxter polynomials from the
//! TQ equation, Bethe residuals and the polynomial q-Wronskian.
//!
//! The auxiliary and quantum spaces are both `ℂ²` with basis `|0⟩` (up) and
//! `|1⟩` (down). On `aux ⊗ site` in the basis `|00⟩, |01⟩, |10⟩, |11⟩`,
//!
//! ```text
//! R(z) = [ 1 − zq²   0          0          0       ]
//!        [ 0         q(1 − z)   1 − q²     0       ]
//!        [ 0         (1 − q²)z  q(1 − z)   0       ]
//!        [ 0         0          0          1 − zq² ]
//! ```
//!
//! and `T(z) = Tr_aux(diag(u^{1/2}, u^{−1/2}) R_{aN}(za_N) ⋯ R_{a1}(za_1))`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cartan::{CartanData, CartanType};
use crate::relations::{bethe_residual, BetheContext, Dressing};

/// Hard cap on the number of sites.
pub const MAX_SITES: usize = 12;
const SAMPLE_RADIUS: f64 = 0.8;
const VALIDATION_RADIUS: f64 = 0.55;

#[derive(Debug, Error)]
pub enum XxzError {
    #[error("chain length {0} exceeds the cap of {MAX_SITES} sites")]
    TooLarge(usize),
    #[error("invalid chain: {0}")]
    InvalidSpec(String),
    #[error("q is too close to a root of unity (q^{0} ≈ 1)")]
    DegenerateQ(u32),
    #[error("need at least {need} sample points, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("eigenvalues of the generic combination are not separated in sector {0}")]
    Degenerate(usize),
    #[error("fit residual {0:e} above tolerance")]
    FitFailed(f64),
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// Length, quantum parameter, twist and inhomogeneities `a_k` of the chain.
#[derive(Clone, Debug)]
pub struct ChainSpec {
    pub n: usize,
    pub q: Complex64,
    pub u: Complex64,
    pub inhom: Vec<Complex64>,
}

impl ChainSpec {
    pub fn default_q() -> Complex64 {
        c(0.7, 0.1)
    }

    /// Homogeneous chain `W = V(q^{−1})^{⊗N}`, i.e. `a_k = q^{−1}`.
    pub fn homogeneous(n: usize, q: Complex64, u: Complex64) -> Result<Self, XxzError> {
        let spec = ChainSpec { n, q, u, inhom: vec![q.inv(); n] };
        spec.validate()?;
        Ok(spec)
    }

    /// `a_k = q^{r_k}`.
    pub fn with_shifts(shifts: &[i32], q: Complex64, u: Complex64) -> Result<Self, XxzError> {
        let spec = ChainSpec { n: shifts.len(), q, u, inhom: shifts.iter().map(|&r| q.powi(r)).collect() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), XxzError> {
        if self.n == 0 {
            return Err(XxzError::InvalidSpec("N must be at least 1".into()));
        }
        if self.n > MAX_SITES {
            return Err(XxzError::TooLarge(self.n));
        }
        if self.inhom.len() != self.n {
            return Err(XxzError::InvalidSpec(format!("expected {} inhomogeneities", self.n)));
        }
        if self.u.norm() == 0.0 || self.u.norm() > 1.0 + 1e-12 {
            return Err(XxzError::InvalidSpec("twist must satisfy 0 < |u| ≤ 1".into()));
        }
        if self.inhom.iter().any(|a| a.norm() == 0.0 || !a.is_finite()) {
            return Err(XxzError::InvalidSpec("inhomogeneities must be finite and nonzero".into()));
        }
        for m in 1..=(2 * self.n + 4) as u32 {
            if (self.q.powi(m as i32) - 1.0).norm() < 1e-6 {
                return Err(XxzError::DegenerateQ(m));
            }
        }
        if self.q.norm() < 1e-6 {
            return Err(XxzError::InvalidSpec("q must be nonzero".into()));
        }
        Ok(())
    }

    pub fn sqrt_u(&self) -> Complex64 {
        self.u.sqrt()
    }

    /// `α(z) = ∏(1 − za_kq²)`, the vacuum eigenvalue of the upper diagonal
    /// monodromy entry.
    pub fn alpha(&self, z: Complex64) -> Complex64 {
        self.inhom.iter().map(|a| 1.0 - z * a * self.q * self.q).product()
    }

    /// `β(z) = q^N ∏(1 − za_k)`, the vacuum eigenvalue of the lower one.
    pub fn beta(&self, z: Complex64) -> Complex64 {
        self.q.powi(self.n as i32) * self.inhom.iter().map(|a| 1.0 - z * a).product::<Complex64>()
    }

    /// `P(z) = ∏(1 − za_kq)`, the right-hand side of the q-Wronskian.
    pub fn wronskian_rhs(&self, z: Complex64) -> Complex64 {
        self.inhom.iter().map(|a| 1.0 - z * a * self.q).product()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "N": self.n,
            "q": cjson(self.q),
            "u": cjson(self.u),
            "inhomogeneities": self.inhom.iter().map(|a| cjson(*a)).collect::<Vec<_>>(),
        })
    }
}

/// Entry `⟨a', s'| R(z) |a, s⟩`.
pub fn r_entry(q: Complex64, z: Complex64, out: (usize, usize), inp: (usize, usize)) -> Complex64 {
    let one = Complex64::one();
    match (out, inp) {
        ((0, 0), (0, 0)) | ((1, 1), (1, 1)) => one - z * q * q,
        ((0, 1), (0, 1)) | ((1, 0), (1, 0)) => q * (one - z),
        ((0, 1), (1, 0)) => one - q * q,
        ((1, 0), (0, 1)) => (one - q * q) * z,
        _ => Complex64::zero(),
    }
}

/// The 4×4 R-matrix in the basis `|00⟩, |01⟩, |10⟩, |11⟩` of `aux ⊗ site`.
pub fn r_matrix(q: Complex64, z: Complex64) -> DMatrix<Complex64> {
    let idx = |k: usize| (k / 2, k % 2);
    DMatrix::from_fn(4, 4, |r, col| r_entry(q, z, idx(r), idx(col)))
}

/// Basis states (bit `k` set when site `k` is down) with `down` down spins.
pub fn sector_states(n: usize, down: usize) -> Vec<u32> {
    (0u32..1 << n).filter(|s| s.count_ones() as usize == down).collect()
}

/// `T(z)` split into its magnetization blocks, indexed by the number of
/// down spins.
#[derive(Clone, Debug)]
pub struct TransferMatrix {
    pub n: usize,
    pub z: Complex64,
    pub blocks: Vec<DMatrix<Complex64>>,
}

impl TransferMatrix {
    /// Full `2^N × 2^N` matrix in the computational basis.
    pub fn to_dense(&self) -> DMatrix<Complex64> {
        let dim = 1usize << self.n;
        let mut out = DMatrix::zeros(dim, dim);
        for (m, b) in self.blocks.iter().enumerate() {
            let states = sector_states(self.n, m);
            for (i, &si) in states.iter().enumerate() {
                for (j, &sj) in states.iter().enumerate() {
                    out[(si as usize, sj as usize)] = b[(i, j)];
                }
            }
        }
        out
    }

    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(|b| b.norm_squared()).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> Complex64 {
        self.blocks.iter().map(|b| b.trace()).sum()
    }
}

/// Column `T(z)|s⟩` restricted to the sector of `s`, by summing over the
/// auxiliary paths site by site.
fn column(spec: &ChainSpec, z: Complex64, s: u32, weights: [Complex64; 2]) -> Vec<(u32, Complex64)> {
    let mut out: Vec<(u32, Complex64)> = Vec::new();
    for a0 in 0..2usize {
        // (current aux index, output bits so far, amplitude)
        let mut paths: Vec<(usize, u32, Complex64)> = vec![(a0, 0, weights[a0])];
        for k in 0..spec.n {
            let sk = ((s >> k) & 1) as usize;
            let zk = z * spec.inhom[k];
            let mut next = Vec::with_capacity(paths.len() * 2);
            for (a, bits, amp) in paths {
                let outs: &[(usize, usize)] = if a == sk { &[(a, sk)] } else { &[(a, sk), (sk, a)] };
                for &(a2, s2) in outs {
                    let w = r_entry(spec.q, zk, (a2, s2), (a, sk));
                    next.push((a2, bits | ((s2 as u32) << k), amp * w));
                }
            }
            paths = next;
        }
        for (a, bits, amp) in paths {
            if a == a0 {
                match out.iter_mut().find(|(b, _)| *b == bits) {
                    Some((_, x)) => *x += amp,
                    None => out.push((bits, amp)),
                }
            }
        }
    }
    out
}

/// `T(z)` for one spectral parameter.
pub fn transfer_at(spec: &ChainSpec, z: Complex64) -> TransferMatrix {
    let su = spec.sqrt_u();
    let weights = [su, su.inv()];
    let blocks = (0..=spec.n)
        .map(|m| {
            let states = sector_states(spec.n, m);
            let mut b = DMatrix::zeros(states.len(), states.len());
            for (j, &sj) in states.iter().enumerate() {
                for (bits, amp) in column(spec, z, sj, weights) {
                    let i = states.binary_search(&bits).expect("R preserves magnetization");
                    b[(i, j)] += amp;
                }
            }
            b
        })
        .collect();
    TransferMatrix { n: spec.n, z, blocks }
}

/// `T(z_s)` at every sample point; requires at least `N + 2` samples.
pub fn build_transfer(spec: &ChainSpec, z_samples: &[Complex64]) -> Result<Vec<TransferMatrix>, XxzError> {
    spec.validate()?;
    if z_samples.len() < spec.n + 2 {
        return Err(XxzError::TooFewSamples { need: spec.n + 2, got: z_samples.len() });
    }
    Ok(z_samples.iter().map(|&z| transfer_at(spec, z)).collect())
}

/// `‖[A, B]‖ / (‖A‖‖B‖)` in the Frobenius norm.
pub fn commutator_residual(a: &TransferMatrix, b: &TransferMatrix) -> f64 {
    let num: f64 = a
        .blocks
        .iter()
        .zip(&b.blocks)
        .map(|(x, y)| (x * y - y * x).norm_squared())
        .sum::<f64>()
        .sqrt();
    num / (a.norm() * b.norm())
}

/// Largest normalized commutator over `pairs` random pairs of spectral
/// parameters in the annulus `0.3 ≤ |z| ≤ 1.5`.
pub fn commutativity(spec: &ChainSpec, pairs: usize, seed: u64) -> Result<f64, XxzError> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..pairs {
        let z1 = random_point(&mut rng);
        let z2 = random_point(&mut rng);
        worst = worst.max(commutator_residual(&transfer_at(spec, z1), &transfer_at(spec, z2)));
    }
    Ok(worst)
}

fn random_point(rng: &mut ChaCha8Rng) -> Complex64 {
    let r: f64 = rng.random_range(0.3..1.5);
    let th: f64 = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, th)
}

fn circle(count: usize, radius: f64, offset: f64) -> Vec<Complex64> {
    (0..count)
        .map(|k| Complex64::from_polar(radius, std::f64::consts::TAU * (k as f64 + offset) / count as f64))
        .collect()
}

/// `2N + 7` interpolation points on the circle `|z| = 0.8`.
pub fn sample_points(n: usize) -> Vec<Complex64> {
    circle(2 * n + 7, SAMPLE_RADIUS, 0.37)
}

fn validation_points(n: usize) -> Vec<Complex64> {
    circle(n + 5, VALIDATION_RADIUS, 0.11)
}

/// Evaluates `Σ c_k z^k`.
pub fn poly_eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::zero(), |acc, &a| acc * z + a)
}

/// Least-squares polynomial of degree `deg` through `(z_s, v_s)`, with the
/// largest relative residual.
pub fn fit_polynomial(zs: &[Complex64], vs: &[Complex64], deg: usize) -> (Vec<Complex64>, f64) {
    let a = DMatrix::from_fn(zs.len(), deg + 1, |r, k| zs[r].powi(k as i32));
    let b = DVector::from_column_slice(vs);
    let coeffs = a.clone().svd(true, true).solve(&b, 1e-14).expect("SVD with both factors");
    let scale = vs.iter().map(|v| v.norm()).fold(1e-300, f64::max);
    let res = (a * &coeffs - b).iter().map(|x| x.norm()).fold(0.0, f64::max) / scale;
    (coeffs.iter().copied().collect(), res)
}

/// Unit null vector of `a` (the right singular vector of the smallest
/// singular value) and the ratio of smallest to largest singular value.
fn null_vector(a: &DMatrix<Complex64>) -> (DVector<Complex64>, f64) {
    let svd = a.clone().svd(false, true);
    let vt = svd.v_t.expect("requested V^T");
    let sv = &svd.singular_values;
    let (kmin, smin) = sv.iter().enumerate().fold((0, f64::INFINITY), |acc, (k, &s)| if s < acc.1 { (k, s) } else { acc });
    let smax = sv.iter().copied().fold(0.0, f64::max);
    let v = vt.row(kmin).adjoint().into_owned();
    (v, if smax > 0.0 { smin / smax } else { 0.0 })
}

/// Roots of `Σ c_k z^k` (`c_deg ≠ 0`) from the companion matrix, polished
/// by Newton steps.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut cs = coeffs.to_vec();
    while cs.len() > 1 && cs.last().map(|x| x.norm()) < Some(1e-14 * cs.iter().map(|x| x.norm()).fold(0.0, f64::max)) {
        cs.pop();
    }
    let d = cs.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = cs[d];
    let comp = DMatrix::from_fn(d, d, |r, col| {
        if r == 0 {
            -cs[d - 1 - col] / lead
        } else if r == col + 1 {
            Complex64::one()
        } else {
            Complex64::zero()
        }
    });
    let eig = comp.schur().eigenvalues().expect("complex Schur form is triangular");
    let deriv: Vec<Complex64> = cs.iter().enumerate().skip(1).map(|(k, a)| a * k as f64).collect();
    eig.iter()
        .map(|&r0| {
            let mut r = r0;
            for _ in 0..20 {
                let dp = poly_eval(&deriv, r);
                if dp.norm() == 0.0 {
                    break;
                }
                let step = poly_eval(&cs, r) / dp;
                r -= step;
                if step.norm() <= 1e-15 * (1.0 + r.norm()) {
                    break;
                }
            }
            r
        })
        .collect()
}

/// One joint eigenvector of the transfer matrices and everything fitted
/// from it.
#[derive(Clone, Debug)]
pub struct EigenFit {
    /// Number of down spins.
    pub down: usize,
    /// `λ(z) = Σ λ_k z^k`.
    pub lambda: Vec<Complex64>,
    pub lambda_residual: f64,
    /// `y = u^{1/2} q^{down}`, a root of `y² − λ(0)y + q^N`.
    pub y: Complex64,
    pub y_residual: f64,
    /// `Q(z) = Σ c_k z^k` with `c_0 = 1`.
    pub q_coeffs: Vec<Complex64>,
    /// Roots `w` of `Q(z) = ∏(1 − z/w)`.
    pub q_roots: Vec<Complex64>,
    /// Largest relative TQ residual over validation points.
    pub tq_residual: f64,
}

impl EigenFit {
    pub fn lambda_at(&self, z: Complex64) -> Complex64 {
        poly_eval(&self.lambda, z)
    }

    pub fn q_at(&self, z: Complex64) -> Complex64 {
        poly_eval(&self.q_coeffs, z)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "down": self.down,
            "lambda": self.lambda.iter().map(|x| cjson(*x)).collect::<Vec<_>>(),
            "lambda_residual": self.lambda_residual,
            "y": cjson(self.y),
            "y_residual": self.y_residual,
            "q_roots": self.q_roots.iter().map(|x| cjson(*x)).collect::<Vec<_>>(),
            "tq_residual": self.tq_residual,
        })
    }
}

/// Joint spectrum of the transfer matrices with fitted Baxter data.
#[derive(Clone, Debug)]
pub struct SpectrumFit {
    pub spec: ChainSpec,
    pub samples: Vec<Complex64>,
    pub eigen: Vec<EigenFit>,
}

impl SpectrumFit {
    pub fn max_lambda_residual(&self) -> f64 {
        self.eigen.iter().map(|e| e.lambda_residual).fold(0.0, f64::max)
    }

    pub fn max_tq_residual(&self) -> f64 {
        self.eigen.iter().map(|e| e.tq_residual).fold(0.0, f64::max)
    }

    pub fn max_lambda_degree(&self) -> usize {
        self.eigen
            .iter()
            .map(|e| {
                let scale = e.lambda.iter().map(|x| x.norm()).fold(0.0, f64::max);
                e.lambda.iter().rposition(|x| x.norm() > 1e-9 * scale).unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "chain": self.spec.to_json(),
            "eigen": self.eigen.iter().map(EigenFit::to_json).collect::<Vec<_>>(),
            "max_lambda_residual": self.max_lambda_residual(),
            "max_tq_residual": self.max_tq_residual(),
        })
    }
}

/// Relative residual of `λ(z)Q(zq) = yα(z)Q(z/q) + y^{−1}β(z)Q(zq³)`.
pub fn tq_residual_at(spec: &ChainSpec, lambda: &[Complex64], y: Complex64, q_coeffs: &[Complex64], z: Complex64) -> f64 {
    let q = spec.q;
    let l = poly_eval(lambda, z) * poly_eval(q_coeffs, z * q);
    let a = y * spec.alpha(z) * poly_eval(q_coeffs, z / q);
    let b = y.inv() * spec.beta(z) * poly_eval(q_coeffs, z * q * q * q);
    (l - a - b).norm() / (l.norm() + a.norm() + b.norm()).max(1e-300)
}

/// Polynomial `Q` of degree `deg` solving the TQ equation for given `λ`, `y`,
/// normalized by `Q(0) = 1`.
fn solve_tq(spec: &ChainSpec, lambda: &[Complex64], y: Complex64, deg: usize, zs: &[Complex64]) -> Vec<Complex64> {
    let q = spec.q;
    let a = DMatrix::from_fn(zs.len(), deg + 1, |r, k| {
        let z = zs[r];
        let k = k as i32;
        poly_eval(lambda, z) * (z * q).powi(k) - y * spec.alpha(z) * (z / q).powi(k) - y.inv() * spec.beta(z) * (z * q * q * q).powi(k)
    });
    let (v, _) = null_vector(&a);
    let c0 = v[0];
    v.iter().map(|x| x / c0).collect()
}

/// Separates joint eigenvectors in one sector through a random combination
/// of transfer matrices.
fn joint_eigenvectors(
    mats: &[TransferMatrix],
    m: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Vec<DVector<Complex64>>, XxzError> {
    let dim = mats[0].blocks[m].nrows();
    let mut comb = DMatrix::<Complex64>::zeros(dim, dim);
    for t in mats.iter().take(4) {
        let w = c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        comb += &t.blocks[m] * w;
    }
    let eig = comb.clone().schur().eigenvalues().expect("complex Schur form is triangular");
    let scale = eig.iter().map(|x| x.norm()).fold(1e-300, f64::max);
    for i in 0..dim {
        for j in 0..i {
            if (eig[i] - eig[j]).norm() < 1e-7 * scale {
                return Err(XxzError::Degenerate(m));
            }
        }
    }
    Ok(eig
        .iter()
        .map(|&mu| {
            let shifted = &comb - DMatrix::<Complex64>::identity(dim, dim) * mu;
            null_vector(&shifted).0
        })
        .collect())
}

/// Diagonalizes the family, interpolates every eigenvalue polynomial and
/// solves the TQ equation for its Baxter polynomial. `seed` fixes the random
/// combination used to separate eigenvectors.
pub fn fit_spectrum(spec: &ChainSpec, seed: u64) -> Result<SpectrumFit, XxzError> {
    let samples = sample_points(spec.n);
    let mats = build_transfer(spec, &samples)?;
    let validation = validation_points(spec.n);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let qn = spec.q.powi(spec.n as i32);
    let mut eigen = Vec::new();
    for m in 0..=spec.n {
        for v in joint_eigenvectors(&mats, m, &mut rng)? {
            let norm = v.norm_squared();
            let vals: Vec<Complex64> = mats.iter().map(|t| v.dotc(&(&t.blocks[m] * &v)) / norm).collect();
            let (lambda, lambda_residual) = fit_polynomial(&samples, &vals, spec.n);
            let y = spec.sqrt_u() * spec.q.powi(m as i32);
            let l0 = lambda[0];
            let y_residual = (y * y - l0 * y + qn).norm() / (y.norm() * (y.norm() + l0.norm()) + qn.norm());
            let q_coeffs = solve_tq(spec, &lambda, y, m, &samples);
            let tq_residual = validation
                .iter()
                .map(|&z| tq_residual_at(spec, &lambda, y, &q_coeffs, z))
                .fold(0.0, f64::max);
            let q_roots = poly_roots(&q_coeffs);
            eigen.push(EigenFit { down: m, lambda, lambda_residual, y, y_residual, q_coeffs, q_roots, tq_residual });
        }
    }
    Ok(SpectrumFit { spec: spec.clone(), samples, eigen })
}

/// Bethe residuals of one eigenvector through the generic Bethe equation
/// with twist `u_1 = y` and dressing `∏(1 − wa_kq) / (q^N ∏(1 − wa_k/q))`.
/// Returns `None` when a root is non-generic (a pole of either side).
pub fn bethe_residuals(spec: &ChainSpec, e: &EigenFit) -> Option<Vec<f64>> {
    if e.q_roots.is_empty() {
        return Some(Vec::new());
    }
    let cd = CartanData::new(CartanType::A(1));
    let mut ctx = BetheContext::new(cd, spec.q, vec![e.q_roots.clone()], vec![e.y]).ok()?;
    ctx.dressing[0] = Some(Dressing {
        scale: spec.q.powi(spec.n as i32).inv(),
        num: spec.inhom.iter().map(|a| a * spec.q).collect(),
        den: spec.inhom.iter().map(|a| a / spec.q).collect(),
    });
    ctx.pole_tol = 1e-6;
    e.q_roots
        .iter()
        .map(|&w| bethe_residual(&ctx, 1, w).ok().map(|r| r.norm()))
        .collect()
}

/// Largest Bethe residual over eigenvectors with generic roots, and how
/// many eigenvectors were skipped as non-generic.
pub fn bethe_check(fit: &SpectrumFit) -> (f64, usize) {
    let mut worst: f64 = 0.0;
    let mut skipped = 0;
    for e in &fit.eigen {
        match bethe_residuals(&fit.spec, e) {
            Some(rs) => worst = rs.into_iter().fold(worst, f64::max),
            None => skipped += 1,
        }
    }
    (worst, skipped)
}

/// `ũ^{−1/2} f(z)g(z) − ũ^{1/2} f(zq²)g(zq^{−2})`; unchanged when `f ↔ g` is
/// swapped together with `q ↔ q^{−1}`.
pub fn qwronskian(
    f: &dyn Fn(Complex64) -> Complex64,
    g: &dyn Fn(Complex64) -> Complex64,
    u: Complex64,
    q: Complex64,
    z: Complex64,
) -> Complex64 {
    let s = u.sqrt();
    f(z) * g(z) / s - s * f(z * q * q) * g(z / (q * q))
}

/// Partner polynomial of one eigenvector in the q-Wronskian.
#[derive(Clone, Debug)]
pub struct QqEntry {
    pub down: usize,
    /// `ũ = q^N / y²`.
    pub twist: Complex64,
    /// `Q_−(z) = Σ e_k z^k` with `e_0 = 1`.
    pub q_minus: Vec<Complex64>,
    /// The constant `c` in `Q_+Q_− − ũQ_+(zq²)Q_−(zq^{−2}) = c·P(z)`.
    pub constant: Complex64,
    pub residual: f64,
}

/// q-Wronskian check for every eigenvector of a fit.
#[derive(Clone, Debug)]
pub struct QqReport {
    pub entries: Vec<QqEntry>,
}

impl QqReport {
    pub fn max_residual(&self) -> f64 {
        self.entries.iter().map(|e| e.residual).fold(0.0, f64::max)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "entries": self.entries.iter().map(|e| json!({
                "down": e.down,
                "twist": cjson(e.twist),
                "q_minus": e.q_minus.iter().map(|x| cjson(*x)).collect::<Vec<_>>(),
                "constant": cjson(e.constant),
                "residual": e.residual,
            })).collect::<Vec<_>>(),
            "max_residual": self.max_residual(),
        })
    }
}

/// Solves `Q_+(z)Q_−(z) − ũ Q_+(zq²)Q_−(zq^{−2}) = c·∏(1 − za_kq)` for a
/// polynomial `Q_−` of degree `N − down` and a constant `c`, given the
/// fitted `Q_+`.
pub fn verify_qq_polynomial(fit: &SpectrumFit) -> QqReport {
    let spec = &fit.spec;
    let q = spec.q;
    let q2 = q * q;
    let zs = &fit.samples;
    let validation = validation_points(spec.n);
    let entries = fit
        .eigen
        .iter()
        .map(|e| {
            let twist = spec.q.powi(spec.n as i32) / (e.y * e.y);
            let deg = spec.n - e.down;
            let qp = |z: Complex64| e.q_at(z);
            let a = DMatrix::from_fn(zs.len(), deg + 2, |r, k| {
                let z = zs[r];
                if k <= deg {
                    let k = k as i32;
                    qp(z) * z.powi(k) - twist * qp(z * q2) * (z / q2).powi(k)
                } else {
                    -spec.wronskian_rhs(z)
                }
            });
            let (v, _) = null_vector(&a);
            let e0 = v[0];
            let q_minus: Vec<Complex64> = v.iter().take(deg + 1).map(|x| x / e0).collect();
            let constant = v[deg + 1] / e0;
            let residual = validation
                .iter()
                .map(|&z| {
                    let l = qp(z) * poly_eval(&q_minus, z);
                    let r = twist * qp(z * q2) * poly_eval(&q_minus, z / q2);
                    let p = constant * spec.wronskian_rhs(z);
                    (l - r - p).norm() / (l.norm() + r.norm() + p.norm()).max(1e-300)
                })
                .fold(0.0, f64::max);
            QqEntry { down: e.down, twist, q_minus, constant, residual }
        })
        .collect();
    QqReport { entries }
}
