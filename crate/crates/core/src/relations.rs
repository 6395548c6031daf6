//! Baxter TQ-relations, QQ- and QQ*-systems as identities between formal
//! classes, and numeric Bethe residuals.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cartan::{CartanData, CartanError};
use crate::laurent::{Laurent, Monomial};
use crate::qchar::QCharResult;
use crate::vars::{bigint_json, format_weight, is_dominant, monomial_json, PsiWeight, YMonomial};

#[derive(Debug, Error)]
pub enum RelationError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("q-character must have a unique dominant monomial, found {0}")]
    NotSpecial(usize),
    #[error("denominator left after clearing: {0}")]
    UnclearedDenominator(String),
    #[error("pole: Q_{node} vanishes at w·q^{{{shift}}} for root {root}")]
    Pole { node: usize, shift: i64, root: String },
    #[error("invalid Bethe data: {0}")]
    InvalidContext(String),
}

/// Generators of the formal ring in which relations are written.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassSymbol {
    /// The invertible class `[ω_i]`; `[−α_i]` is a product of these.
    Omega(usize),
    Lplus(usize, i64),
    Lstar(usize, i64),
    Ltilde(usize, i64),
    /// Fundamental class `[V_i(q^r)]`.
    V(usize, i64),
    /// Simple finite-dimensional class with the given highest monomial.
    Simple(YMonomial),
    /// Opaque normalization constant of a QQ-system.
    K,
}

pub type ClassPoly = Laurent<ClassSymbol>;

fn spectral(r: i64) -> String {
    match r {
        0 => "1".into(),
        1 => "q".into(),
        _ => format!("q^{{{r}}}"),
    }
}

impl ClassSymbol {
    fn latex(&self) -> String {
        match self {
            ClassSymbol::Omega(i) => format!("[\\omega_{i}]"),
            ClassSymbol::Lplus(i, r) => format!("[L^+_{{{i},{}}}]", spectral(*r)),
            ClassSymbol::Lstar(i, r) => format!("[L^*_{{{i},{}}}]", spectral(*r)),
            ClassSymbol::Ltilde(i, r) => format!("[\\tilde{{L}}_{{{i},{}}}]", spectral(*r)),
            ClassSymbol::V(i, r) => format!("[V_{i}({})]", spectral(*r)),
            ClassSymbol::Simple(m) => {
                let ys: String = m
                    .iter()
                    .map(|(v, e)| {
                        let base = format!("Y_{{{},{}}}", v.node, spectral(v.shift));
                        if e == 1 {
                            base
                        } else {
                            format!("{base}^{{{e}}}")
                        }
                    })
                    .collect();
                format!("[L({ys})]")
            }
            ClassSymbol::K => "K".into(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            ClassSymbol::Omega(i) => json!({"kind": "omega", "node": i}),
            ClassSymbol::Lplus(i, r) => json!({"kind": "Lplus", "node": i, "shift": r}),
            ClassSymbol::Lstar(i, r) => json!({"kind": "Lstar", "node": i, "shift": r}),
            ClassSymbol::Ltilde(i, r) => json!({"kind": "Ltilde", "node": i, "shift": r}),
            ClassSymbol::V(i, r) => json!({"kind": "V", "node": i, "shift": r}),
            ClassSymbol::Simple(m) => json!({"kind": "simple", "monomial": monomial_json(m)}),
            ClassSymbol::K => json!({"kind": "K"}),
        }
    }

    /// Finite-dimensional classes are written before prefundamental ones.
    fn display_rank(&self) -> u8 {
        match self {
            ClassSymbol::Omega(_) => 0,
            ClassSymbol::V(..) | ClassSymbol::Simple(_) => 1,
            ClassSymbol::Lstar(..) => 2,
            ClassSymbol::Lplus(..) => 3,
            ClassSymbol::Ltilde(..) => 4,
            ClassSymbol::K => 5,
        }
    }

    fn is_weight(&self) -> bool {
        matches!(self, ClassSymbol::Omega(_))
    }
}

impl fmt::Display for ClassSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSymbol::Omega(i) => write!(f, "[w_{i}]"),
            ClassSymbol::Lplus(i, r) => write!(f, "L+_{{{i},{r}}}"),
            ClassSymbol::Lstar(i, r) => write!(f, "L*_{{{i},{r}}}"),
            ClassSymbol::Ltilde(i, r) => write!(f, "L~_{{{i},{r}}}"),
            ClassSymbol::V(i, r) => write!(f, "V_{{{i},{r}}}"),
            ClassSymbol::Simple(m) => write!(f, "L({m})"),
            ClassSymbol::K => write!(f, "K"),
        }
    }
}

fn sym(s: ClassSymbol) -> ClassPoly {
    ClassPoly::var(s)
}

/// `∏ [ω_j]^{λ_j}` for `λ` in the fundamental-weight basis.
pub fn weight_class(lambda: &[i64]) -> ClassPoly {
    ClassPoly::monomial(Monomial::from_pairs(
        lambda.iter().enumerate().map(|(j, &e)| (ClassSymbol::Omega(j + 1), e)),
    ))
}

/// `[−α_i] = ∏_j [ω_j]^{−C_{ji}}`.
pub fn neg_alpha(cd: &CartanData, i: usize) -> ClassPoly {
    weight_class(&cd.simple_root(i).iter().map(|x| -x).collect::<Vec<_>>())
}

/// A relation `lhs = rhs` between formal classes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationExpr {
    pub lhs: ClassPoly,
    pub rhs: ClassPoly,
    pub note: Option<String>,
}

impl RelationExpr {
    pub fn new(lhs: ClassPoly, rhs: ClassPoly) -> Self {
        RelationExpr { lhs, rhs, note: None }
    }

    pub fn difference(&self) -> ClassPoly {
        &self.lhs - &self.rhs
    }

    /// Sets every weight class to 1.
    pub fn without_weights(&self) -> Self {
        let strip = |p: &ClassPoly| {
            ClassPoly::from_terms(p.terms().map(|(m, c)| (m.restrict(|s| !s.is_weight()), c.clone())))
        };
        RelationExpr { lhs: strip(&self.lhs), rhs: strip(&self.rhs), note: self.note.clone() }
    }

    /// Both sides with every symbol set to 1.
    pub fn specialize_to_one(&self) -> (BigInt, BigInt) {
        (self.lhs.coefficient_sum(), self.rhs.coefficient_sum())
    }

    /// Applies a ring morphism defined on symbols.
    pub fn substitute<F: Fn(&ClassSymbol) -> ClassPoly>(&self, f: F) -> Self {
        RelationExpr { lhs: self.lhs.substitute(&f), rhs: self.rhs.substitute(&f), note: self.note.clone() }
    }

    pub fn scale_by(&self, p: &ClassPoly) -> Self {
        RelationExpr { lhs: &self.lhs * p, rhs: &self.rhs * p, note: self.note.clone() }
    }

    /// True iff no symbol other than a weight has a negative exponent.
    pub fn is_denominator_free(&self) -> bool {
        [&self.lhs, &self.rhs]
            .iter()
            .all(|p| p.monomials().all(|m| m.iter().all(|(s, e)| e >= 0 || s.is_weight())))
    }

    pub fn to_latex(&self, omit_weights: bool) -> String {
        let e = if omit_weights { self.without_weights() } else { self.clone() };
        format!("{} = {}", latex_poly(&e.lhs), latex_poly(&e.rhs))
    }

    pub fn to_json(&self, omit_weights: bool) -> Value {
        let e = if omit_weights { self.without_weights() } else { self.clone() };
        json!({
            "lhs": poly_json(&e.lhs),
            "rhs": poly_json(&e.rhs),
            "note": self.note,
            "latex": self.to_latex(omit_weights),
        })
    }
}

impl fmt::Display for RelationExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

fn poly_json(p: &ClassPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| {
                json!({
                    "coef": bigint_json(c),
                    "factors": m.iter().map(|(s, e)| json!([s.to_json(), e])).collect::<Vec<_>>(),
                })
            })
            .collect(),
    )
}

/// Terms ordered by their non-weight part, weights breaking ties.
fn display_order(a: &Monomial<ClassSymbol>, b: &Monomial<ClassSymbol>) -> Ordering {
    let split = |m: &Monomial<ClassSymbol>| (m.restrict(|s| !s.is_weight()), m.restrict(|s| s.is_weight()));
    split(a).cmp(&split(b))
}

fn latex_monomial(m: &Monomial<ClassSymbol>) -> String {
    let weights: Vec<i64> = {
        let n = m.vars().filter_map(|s| if let ClassSymbol::Omega(i) = s { Some(*i) } else { None }).max().unwrap_or(0);
        (1..=n).map(|i| m.exp(&ClassSymbol::Omega(i))).collect()
    };
    let mut out = String::new();
    if weights.iter().any(|&x| x != 0) {
        out.push('[');
        out.push_str(&format_weight(&weights).replace("ω_", "\\omega_"));
        out.push(']');
    }
    let mut factors: Vec<_> = m.iter().filter(|(s, _)| !s.is_weight()).collect();
    factors.sort_by_key(|(s, _)| s.display_rank());
    for (s, e) in factors {
        out.push_str(&s.latex());
        if e != 1 {
            out.push_str(&format!("^{{{e}}}"));
        }
    }
    out
}

fn latex_poly(p: &ClassPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms: Vec<_> = p.terms().collect();
    terms.sort_by(|a, b| display_order(a.0, b.0));
    let mut out = String::new();
    for (k, (m, c)) in terms.into_iter().enumerate() {
        let body = latex_monomial(m);
        if k > 0 {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        } else if c.is_negative() {
            out.push('-');
        }
        let abs = c.abs();
        if body.is_empty() {
            out.push_str(&abs.to_string());
        } else {
            if !abs.is_one() {
                out.push_str(&abs.to_string());
            }
            out.push_str(&body);
        }
    }
    out
}

/// Class symbol of the module whose q-character has the unique dominant
/// monomial `m`.
fn module_symbol(m: &YMonomial) -> ClassSymbol {
    let mut it = m.iter();
    match (it.next(), it.next()) {
        (Some((v, 1)), None) => ClassSymbol::V(v.node, v.shift),
        _ => ClassSymbol::Simple(m.clone()),
    }
}

/// Generalized Baxter relation: substitute
/// `Y_{i,r} ↦ [ω_i]·L^+_{i,r−d_i}/L^+_{i,r+d_i}` into the q-character,
/// equate with the class of the module and clear denominators.
pub fn tq_relation(cd: &CartanData, qc: &QCharResult) -> Result<RelationExpr, RelationError> {
    let dominant: Vec<&YMonomial> = qc.poly.monomials().filter(|m| is_dominant(m)).collect();
    if dominant.len() != 1 {
        return Err(RelationError::NotSpecial(dominant.len()));
    }
    let top = dominant[0];
    let image = qc.poly.substitute(|v| {
        let d = cd.di(v.node);
        ClassPoly::monomial(Monomial::from_pairs([
            (ClassSymbol::Omega(v.node), 1),
            (ClassSymbol::Lplus(v.node, v.shift - d), 1),
            (ClassSymbol::Lplus(v.node, v.shift + d), -1),
        ]))
    });
    let mut clear = Monomial::one();
    for m in image.monomials() {
        for (s, e) in m.iter() {
            if !s.is_weight() && e < 0 && clear.exp(s) < -e {
                clear.mul_var(s.clone(), -e - clear.exp(s));
            }
        }
    }
    let lhs = ClassPoly::monomial(Monomial::var(module_symbol(top)).mul(&clear));
    let rel = RelationExpr::new(lhs, image.mul_monomial(&clear));
    if !rel.is_denominator_free() {
        return Err(RelationError::UnclearedDenominator(rel.to_string()));
    }
    Ok(rel)
}

/// `Ψ̃_{i,q^r}`.
pub fn psi_tilde(cd: &CartanData, i: usize, r: i64) -> Result<PsiWeight, CartanError> {
    cd.check_node(i)?;
    let mut t = vec![(i, r, -1)];
    for j in cd.neighbours(i) {
        let offs: &[i64] = match cd.cij(i, j) {
            -1 => &[0],
            -2 => &[-cd.di(i), 2 - cd.di(i)],
            _ => &[-1 - cd.di(i), 1 - cd.di(i), 3 - cd.di(i)],
        };
        for &o in offs {
            t.push((j, r + cd.di(i) + o, 1));
        }
    }
    Ok(PsiWeight::from_triples(&t))
}

/// `s_i(ω_i^∨)` in the fundamental-coweight basis: `e_i − (row i of C)`.
pub fn reflected_coweight(cd: &CartanData, i: usize) -> Vec<i64> {
    cd.nodes().map(|j| i64::from(i == j) - cd.cij(i, j)).collect()
}

/// `Q_i(zq_i^{-1})Q̃_i(zq_i) − Q_i(zq_i)Q̃_i(zq_i^{-1}) = K ∏_j ∏_m Q_j(zq^{C_{ij}+1+2m})`
/// at `z = q^r`.
pub fn qq_system(cd: &CartanData, i: usize, r: i64) -> Result<RelationExpr, CartanError> {
    cd.check_node(i)?;
    let d = cd.di(i);
    let lhs = &(&sym(ClassSymbol::Lplus(i, r - d)) * &sym(ClassSymbol::Ltilde(i, r + d)))
        - &(&sym(ClassSymbol::Lplus(i, r + d)) * &sym(ClassSymbol::Ltilde(i, r - d)));
    let mut rhs = sym(ClassSymbol::K);
    for j in cd.neighbours(i) {
        let c = cd.cij(i, j);
        for m in 0..-c {
            rhs = &rhs * &sym(ClassSymbol::Lplus(j, r + c + 1 + 2 * m));
        }
    }
    let mut rel = RelationExpr::new(lhs, rhs);
    rel.note = Some("K is a constant normalization".into());
    Ok(rel)
}

/// Exchanges `L^+` and `L̃` symbols.
pub fn swap_q_qtilde(rel: &RelationExpr) -> RelationExpr {
    rel.substitute(|s| match s {
        ClassSymbol::Lplus(i, r) => sym(ClassSymbol::Ltilde(*i, *r)),
        ClassSymbol::Ltilde(i, r) => sym(ClassSymbol::Lplus(*i, *r)),
        other => sym(other.clone()),
    })
}

/// Neighbours entering the QQ*-system. In rank one the node pairs with
/// itself through `B_{11} = 2`.
fn star_neighbours(cd: &CartanData, i: usize) -> Vec<usize> {
    if cd.rank() == 1 {
        vec![i]
    } else {
        cd.neighbours(i)
    }
}

/// `[L^*_{i,a}][L^+_{i,a}] = ∏_j [L^+_{j,aq^{−B_{ji}}}] + [−α_i] ∏_j [L^+_{j,aq^{B_{ij}}}]`.
pub fn qq_star_relation(cd: &CartanData, i: usize, r: i64) -> Result<RelationExpr, CartanError> {
    cd.check_node(i)?;
    let lhs = &sym(ClassSymbol::Lstar(i, r)) * &sym(ClassSymbol::Lplus(i, r));
    let mut first = ClassPoly::one();
    let mut second = neg_alpha(cd, i);
    for j in star_neighbours(cd, i) {
        first = &first * &sym(ClassSymbol::Lplus(j, r - cd.bij(j, i)));
        second = &second * &sym(ClassSymbol::Lplus(j, r + cd.bij(i, j)));
    }
    Ok(RelationExpr::new(lhs, &first + &second))
}

/// ℓ-weight of `L^*_{i,q^r}`: `Ψ_{i,r}^{-1} ∏_j Ψ_{j,r−B_{ji}}`.
pub fn lstar_psi(cd: &CartanData, i: usize, r: i64) -> Result<PsiWeight, CartanError> {
    cd.check_node(i)?;
    let mut t = vec![(i, r, -1)];
    t.extend(star_neighbours(cd, i).into_iter().map(|j| (j, r - cd.bij(j, i), 1)));
    Ok(PsiWeight::from_triples(&t))
}

/// Rewrites an sl2 QQ*-relation in TQ form through
/// `L^*_{1,r} ↦ [ω_1]^{-1}[V_1(q^{r−1})]`, then multiplies by `[ω_1]`.
pub fn qq_star_to_tq_sl2(rel: &RelationExpr) -> RelationExpr {
    rel.substitute(|s| match s {
        ClassSymbol::Lstar(1, r) => &weight_class(&[-1]) * &sym(ClassSymbol::V(1, r - 1)),
        other => sym(other.clone()),
    })
    .scale_by(&weight_class(&[1]))
}

/// Multiplicative correction `D(w) = c·∏(1 − w·a)/∏(1 − w·b)` dividing a
/// Bethe ratio.
#[derive(Clone, Debug, PartialEq)]
pub struct Dressing {
    pub scale: Complex64,
    pub num: Vec<Complex64>,
    pub den: Vec<Complex64>,
}

impl Dressing {
    pub fn eval(&self, w: Complex64) -> Complex64 {
        let one = Complex64::one();
        let n: Complex64 = self.num.iter().map(|a| one - w * a).product();
        let d: Complex64 = self.den.iter().map(|b| one - w * b).product();
        self.scale * n / d
    }
}

/// Baxter roots and twists for a numeric Bethe check.
#[derive(Clone, Debug)]
pub struct BetheContext {
    pub cartan: CartanData,
    pub q: Complex64,
    /// Per node, the roots `w` of `Q_i(z) = ∏(1 − z/w)`.
    pub roots: Vec<Vec<Complex64>>,
    /// Twist parameters `u_j`.
    pub u: Vec<Complex64>,
    pub dressing: Vec<Option<Dressing>>,
    /// Relative size under which `Q_j` is treated as vanishing.
    pub pole_tol: f64,
}

impl BetheContext {
    pub fn new(cartan: CartanData, q: Complex64, roots: Vec<Vec<Complex64>>, u: Vec<Complex64>) -> Result<Self, RelationError> {
        let n = cartan.rank();
        if roots.len() != n || u.len() != n {
            return Err(RelationError::InvalidContext(format!("expected {n} root lists and twists")));
        }
        if roots.iter().flatten().any(|w| w.norm() == 0.0) {
            return Err(RelationError::InvalidContext("zero root".into()));
        }
        if u.iter().any(|x| x.norm() == 0.0) || q.norm() == 0.0 {
            return Err(RelationError::InvalidContext("zero twist or q".into()));
        }
        Ok(BetheContext { cartan, q, roots, u, dressing: vec![None; n], pole_tol: 1e-12 })
    }

    /// `v_i = ∏_j u_j^{C_{ij}}`.
    pub fn v(&self, i: usize) -> Complex64 {
        self.cartan.nodes().map(|j| self.u[j - 1].powi(self.cartan.cij(i, j) as i32)).product()
    }

    pub fn q_eval(&self, j: usize, z: Complex64) -> Complex64 {
        self.roots[j - 1].iter().map(|w| Complex64::one() - z / w).product()
    }

    fn q_scale(&self, j: usize, z: Complex64) -> f64 {
        self.roots[j - 1].iter().map(|w| 1.0 + (z / w).norm()).product()
    }
}

/// `v_i^{-1} ∏_j Q_j(wq^{B_{ij}})/Q_j(wq^{−B_{ij}}) / D_i(w) + 1`.
pub fn bethe_residual(ctx: &BetheContext, i: usize, w: Complex64) -> Result<Complex64, RelationError> {
    ctx.cartan.check_node(i)?;
    let mut ratio = ctx.v(i).inv();
    for j in ctx.cartan.nodes() {
        let b = ctx.cartan.bij(i, j);
        if b == 0 {
            continue;
        }
        let up = w * ctx.q.powi(b as i32);
        let down = w * ctx.q.powi(-b as i32);
        let den = ctx.q_eval(j, down);
        if den.norm() <= ctx.pole_tol * ctx.q_scale(j, down) {
            return Err(RelationError::Pole { node: j, shift: -b, root: format!("{w}") });
        }
        ratio *= ctx.q_eval(j, up) / den;
    }
    if let Some(d) = &ctx.dressing[i - 1] {
        ratio /= d.eval(w);
    }
    Ok(ratio + Complex64::one())
}

/// Residuals at every root of every node, in order.
pub fn bethe_residuals(ctx: &BetheContext) -> Result<Vec<(usize, Complex64, Complex64)>, RelationError> {
    let mut out = Vec::new();
    for i in ctx.cartan.nodes() {
        for &w in &ctx.roots[i - 1] {
            out.push((i, w, bethe_residual(ctx, i, w)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qchar::fm_fundamental;

    #[test]
    fn sl2_tq_latex() {
        let cd = CartanData::from_label("A1").unwrap();
        let rel = tq_relation(&cd, &fm_fundamental(&cd, 1, 0).unwrap()).unwrap();
        assert_eq!(
            rel.to_latex(false),
            "[V_1(1)][L^+_{1,q}] = [\\omega_1][L^+_{1,q^{-1}}] + [-\\omega_1][L^+_{1,q^{3}}]"
        );
    }

    #[test]
    fn psi_tilde_b2() {
        let cd = CartanData::from_label("B2").unwrap();
        assert_eq!(psi_tilde(&cd, 2, 0).unwrap(), PsiWeight::from_triples(&[(2, 0, -1), (1, 0, 1), (1, 2, 1)]));
        assert_eq!(psi_tilde(&cd, 1, 0).unwrap(), PsiWeight::from_triples(&[(1, 0, -1), (2, 2, 1)]));
    }

    #[test]
    fn wronskian() {
        let cd = CartanData::from_label("A1").unwrap();
        let rel = qq_system(&cd, 1, 0).unwrap();
        assert_eq!(rel.rhs, sym(ClassSymbol::K));
        assert_eq!(swap_q_qtilde(&rel).lhs, -rel.lhs.clone());
        assert!(rel.lhs.coeff(&Monomial::from_pairs([(ClassSymbol::Lplus(1, -1), 1), (ClassSymbol::Ltilde(1, 1), 1)])).is_one());
        assert!(!rel.lhs.is_zero() && rel.lhs.coefficient_sum() == BigInt::from(0));
    }
}
