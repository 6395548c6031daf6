//! q-characters: sl2 string characters, the Frenkel–Mukhin expansion for
//! modules with a unique dominant monomial, string-decomposition witnesses
//! and T-system checks.

pub mod strings;

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cartan::{CartanData, CartanError};
use crate::lattice::{root_monomial_unchecked, solve_rational};
use crate::vars::{bigint_json, is_dominant, laurent_json, monomial_json, node_part, weight_of, y, YLaurent, YMonomial};

pub use strings::{decompose, in_general_position, lowering_terms, special_pair, StringSpec};

pub const DEFAULT_BUDGET: usize = 1_000_000;

#[derive(Debug, Error)]
pub enum QCharError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error("strings {0:?} and {1:?} are not in general position")]
    NonGeneralPosition(StringSpec, StringSpec),
    #[error("monomial budget {0} exceeded")]
    NonTermination(usize),
    #[error("inconsistent expansion at {monomial}: {detail}")]
    Inconsistent { monomial: String, detail: String },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("operands have different Cartan data")]
    MismatchedCartan,
}

fn inconsistent(m: &YMonomial, detail: impl Into<String>) -> QCharError {
    QCharError::Inconsistent { monomial: m.to_string(), detail: detail.into() }
}

/// Order in which the monomials of one depth are expanded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Discipline {
    #[default]
    Forward,
    Reverse,
}

#[derive(Clone, Copy, Debug)]
pub struct FmOptions {
    pub budget: usize,
    pub discipline: Discipline,
}

impl Default for FmOptions {
    fn default() -> Self {
        FmOptions { budget: DEFAULT_BUDGET, discipline: Discipline::Forward }
    }
}

/// One step of the greedy decomposition of a node restriction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessEntry {
    pub highest: YMonomial,
    pub multiplicity: BigInt,
    pub strings: Vec<StringSpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QCharResult {
    pub cartan: CartanData,
    pub poly: YLaurent,
    pub dominant: Vec<YMonomial>,
    /// Per node, the sl2 simple characters (with multiplicities) summing to
    /// the restriction of `poly` to that node.
    pub witness: BTreeMap<usize, Vec<WitnessEntry>>,
}

impl QCharResult {
    /// Wraps a polynomial, recomputing dominant monomials and witnesses.
    /// Fails if some node restriction is not a nonnegative sum of sl2
    /// simple characters.
    pub fn from_polynomial(cartan: CartanData, poly: YLaurent) -> Result<Self, QCharError> {
        let dominant = poly.monomials().filter(|m| is_dominant(m)).cloned().collect();
        let witness = witness(&cartan, &poly)?;
        Ok(QCharResult { cartan, poly, dominant, witness })
    }

    /// Sum of coefficients, the dimension of the module.
    pub fn dimension(&self) -> BigInt {
        self.poly.coefficient_sum()
    }

    pub fn to_json(&self) -> Value {
        let witness: serde_json::Map<String, Value> = self
            .witness
            .iter()
            .map(|(j, es)| {
                let es: Vec<Value> = es
                    .iter()
                    .map(|e| {
                        json!({
                            "highest": monomial_json(&e.highest),
                            "multiplicity": bigint_json(&e.multiplicity),
                            "strings": e.strings.iter().map(|s| json!([s.node, s.start, s.len])).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                (j.to_string(), Value::Array(es))
            })
            .collect();
        json!({
            "type": self.cartan.kind.to_string(),
            "polynomial": laurent_json(&self.poly),
            "dominant": self.dominant.iter().map(monomial_json).collect::<Vec<_>>(),
            "dimension": bigint_json(&self.dimension()),
            "witness": witness,
        })
    }
}

impl fmt::Display for QCharResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

fn a1() -> CartanData {
    CartanData::from_label("A1").expect("A1 is valid")
}

/// Strings of the `j`-part of a `j`-dominant monomial.
fn node_strings(cd: &CartanData, j: usize, part: &YMonomial) -> Result<Vec<StringSpec>, QCharError> {
    let step = 2 * cd.di(j);
    let mut shifts = BTreeMap::new();
    for (v, e) in part.iter() {
        *shifts.entry(v.shift).or_insert(0u32) += e as u32;
    }
    let strings = decompose(j, &shifts, step);
    if let Some((a, b)) = special_pair(&strings, step) {
        return Err(QCharError::NonGeneralPosition(a, b));
    }
    Ok(strings)
}

/// The sl2 simple character through `m` in direction `j`, as a polynomial.
fn node_simple_character(cd: &CartanData, j: usize, m: &YMonomial) -> Result<YLaurent, QCharError> {
    let strings = node_strings(cd, j, &node_part(m, j))?;
    let mut out = YLaurent::zero();
    for (shifts, c) in lowering_terms(&strings, 2 * cd.di(j)) {
        out.add_term(lower(cd, j, m, &shifts), c);
    }
    Ok(out)
}

fn lower(cd: &CartanData, j: usize, m: &YMonomial, shifts: &[i64]) -> YMonomial {
    shifts.iter().fold(m.clone(), |acc, &b| acc.div(&root_monomial_unchecked(cd, j, b)))
}

/// `Y_{1,r}Y_{1,r+2}…Y_{1,r+2(k−1)}` expanded into its `k+1` terms.
pub fn sl2_string_character(r: i64, k: usize) -> QCharResult {
    sl2_simple_character(&(0..k as i64).map(|t| r + 2 * t).collect::<Vec<_>>())
}

/// q-character of the simple sl2 module whose highest monomial is
/// `∏ Y_{1,s}` over the given shifts (with repetition).
pub fn sl2_simple_character(shifts: &[i64]) -> QCharResult {
    let cd = a1();
    let top = shifts.iter().fold(YMonomial::one(), |acc, &s| acc.mul(&y(1, s)));
    let poly = node_simple_character(&cd, 1, &top).expect("greedy strings are in general position");
    QCharResult::from_polynomial(cd, poly).expect("sl2 simple characters decompose")
}

/// Highest monomial `Y_{i,r}Y_{i,r+2d_i}…` of the Kirillov–Reshetikhin
/// module of length `k`.
pub fn kr_highest(cd: &CartanData, i: usize, r: i64, k: usize) -> Result<YMonomial, CartanError> {
    cd.check_node(i)?;
    let step = 2 * cd.di(i);
    Ok((0..k as i64).fold(YMonomial::one(), |acc, t| acc.mul(&y(i, r + step * t))))
}

/// q-character of the fundamental module `V_i(q^r)`.
pub fn fm_fundamental(cd: &CartanData, i: usize, r: i64) -> Result<QCharResult, QCharError> {
    fm_with(cd, &kr_highest(cd, i, r, 1)?, &FmOptions::default())
}

/// Frenkel–Mukhin expansion from a dominant monomial, assuming it is the
/// only dominant monomial of the module.
pub fn fm_with(cd: &CartanData, top: &YMonomial, opts: &FmOptions) -> Result<QCharResult, QCharError> {
    if !is_dominant(top) {
        return Err(QCharError::InvalidArgument(format!("{top} is not dominant")));
    }
    for v in top.vars() {
        cd.check_node(v.node)?;
    }
    let n = cd.rank();
    // depth = number of root monomials removed from `top`; expansion only
    // ever adds to strictly deeper levels.
    let mut levels: BTreeMap<usize, BTreeMap<YMonomial, Vec<BigInt>>> = BTreeMap::new();
    levels.entry(0).or_default().insert(top.clone(), vec![BigInt::zero(); n]);
    let mut created = 1usize;
    let mut poly = YLaurent::zero();

    while let Some((depth, level)) = levels.pop_first() {
        let mut items: Vec<_> = level.into_iter().collect();
        if opts.discipline == Discipline::Reverse {
            items.reverse();
        }
        for (m, sj) in items {
            let s = if depth == 0 { BigInt::one() } else { sj.iter().max().cloned().unwrap_or_default() };
            if depth > 0 && is_dominant(&m) {
                return Err(inconsistent(&m, "second dominant monomial"));
            }
            for j in cd.nodes() {
                let part = node_part(&m, j);
                if !part.is_nonnegative() {
                    if sj[j - 1] != s {
                        return Err(inconsistent(&m, format!("node {j} accounts for {} of {s}", sj[j - 1])));
                    }
                    continue;
                }
                let k = &s - &sj[j - 1];
                if !k.is_positive() {
                    continue;
                }
                let strings = node_strings(cd, j, &part)?;
                for (shifts, c) in lowering_terms(&strings, 2 * cd.di(j)) {
                    if shifts.is_empty() {
                        continue;
                    }
                    let slot = levels.entry(depth + shifts.len()).or_default();
                    let lowered = lower(cd, j, &m, &shifts);
                    let entry = slot.entry(lowered).or_insert_with(|| {
                        created += 1;
                        vec![BigInt::zero(); n]
                    });
                    entry[j - 1] += &k * c;
                }
                if created > opts.budget {
                    return Err(QCharError::NonTermination(opts.budget));
                }
            }
            poly.add_term(m, s);
        }
    }
    QCharResult::from_polynomial(cd.clone(), poly)
}

/// Coefficients `x` with `Cᵀx = (1,…,1)`: every `A_{j,b}` has height one.
fn height_form(cd: &CartanData) -> Vec<BigRational> {
    let n = cd.rank();
    let ct: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| cd.c[j][i]).collect()).collect();
    solve_rational(&ct, &vec![1; n]).expect("Cartan matrix is invertible")
}

fn height(x: &[BigRational], m: &YMonomial) -> BigRational {
    weight_of(m, x.len()).iter().zip(x).map(|(&w, xi)| xi * BigInt::from(w)).sum()
}

/// Greedy extraction of sl2 simple characters from each node restriction,
/// always peeling the monomial of greatest height.
fn witness(cd: &CartanData, poly: &YLaurent) -> Result<BTreeMap<usize, Vec<WitnessEntry>>, QCharError> {
    let x = height_form(cd);
    let mut out = BTreeMap::new();
    for j in cd.nodes() {
        let mut rem = poly.clone();
        let mut entries = Vec::new();
        while !rem.is_zero() {
            let top = rem
                .terms()
                .map(|(m, _)| (height(&x, m), m))
                .max_by(|a, b| a.0.cmp(&b.0).then_with(|| a.1.cmp(b.1)))
                .map(|(_, m)| m.clone())
                .expect("nonzero");
            let c = rem.coeff(&top);
            if !c.is_positive() || !node_part(&top, j).is_nonnegative() {
                return Err(inconsistent(&top, format!("restriction to node {j} is not a nonnegative sum of sl2 characters")));
            }
            let strings = node_strings(cd, j, &node_part(&top, j))?;
            rem -= &node_simple_character(cd, j, &top)?.scale(&c);
            entries.push(WitnessEntry { highest: top, multiplicity: c, strings });
        }
        out.insert(j, entries);
    }
    Ok(out)
}

/// Product of two q-characters of the same type.
pub fn multiply(a: &QCharResult, b: &QCharResult) -> Result<QCharResult, QCharError> {
    if a.cartan != b.cartan {
        return Err(QCharError::MismatchedCartan);
    }
    QCharResult::from_polynomial(a.cartan.clone(), &a.poly * &b.poly)
}

/// Outcome of a polynomial identity check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityCheck {
    pub holds: bool,
    /// `lhs − rhs`; zero iff the identity holds.
    pub difference: YLaurent,
}

/// Checks `χ(r,k)χ(r+2,k) = χ(r,k+1)χ(r+2,k−1) + 1` for sl2 strings.
pub fn t_system_check_sl2(r: i64, k: usize) -> Result<IdentityCheck, QCharError> {
    if k == 0 {
        return Err(QCharError::InvalidArgument("T-system needs k ≥ 1".into()));
    }
    let chi = |r, k| sl2_string_character(r, k).poly;
    let lhs = &chi(r, k) * &chi(r + 2, k);
    let rhs = &(&chi(r, k + 1) * &chi(r + 2, k - 1)) + &YLaurent::one();
    let difference = &lhs - &rhs;
    Ok(IdentityCheck { holds: difference.is_zero(), difference })
}

/// Checks `a·b = c·d + e` for user-supplied q-characters of one type.
pub fn t_system_identity(
    a: &QCharResult,
    b: &QCharResult,
    c: &QCharResult,
    d: &QCharResult,
    e: &QCharResult,
) -> Result<IdentityCheck, QCharError> {
    if [b, c, d, e].iter().any(|x| x.cartan != a.cartan) {
        return Err(QCharError::MismatchedCartan);
    }
    let difference = &(&a.poly * &b.poly) - &(&(&c.poly * &d.poly) + &e.poly);
    Ok(IdentityCheck { holds: difference.is_zero(), difference })
}

/// Multiset of weights obtained by forgetting spectral shifts.
pub fn weight_multiset(qc: &QCharResult) -> BTreeMap<Vec<i64>, BigInt> {
    let mut out: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    for (m, c) in qc.poly.terms() {
        *out.entry(weight_of(m, qc.cartan.rank())).or_default() += c;
    }
    out.retain(|_, c| !c.is_zero());
    out
}

/// True iff the weight multiset is stable under `λ ↦ −σ(λ)`, where `σ` is
/// the diagram involution induced by `−w_0`.
pub fn weights_are_self_dual(qc: &QCharResult) -> bool {
    let cd = &qc.cartan;
    let ws = weight_multiset(qc);
    ws.iter().all(|(w, c)| {
        let dual: Vec<i64> = cd.nodes().map(|i| -w[cd.dual_involution(i) - 1]).collect();
        ws.get(&dual) == Some(c)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::mono;

    #[test]
    fn fundamental_sl2() {
        let qc = fm_fundamental(&a1(), 1, 0).unwrap();
        assert_eq!(qc.poly, sl2_string_character(0, 1).poly);
        assert_eq!(qc.poly.len(), 2);
        assert_eq!(qc.dominant, vec![y(1, 0)]);
    }

    #[test]
    fn kr_sl2_length_two() {
        let qc = sl2_string_character(0, 2);
        let want = YLaurent::monomial(mono(&[(1, 0, 1), (1, 2, 1)]))
            + YLaurent::monomial(mono(&[(1, 0, 1), (1, 4, -1)]))
            + YLaurent::monomial(mono(&[(1, 2, -1), (1, 4, -1)]));
        assert_eq!(qc.poly, want);
        assert!(sl2_string_character(0, 0).poly.is_one());
    }

    #[test]
    fn a2_fundamental() {
        let cd = CartanData::from_label("A2").unwrap();
        let qc = fm_fundamental(&cd, 1, 0).unwrap();
        let want = YLaurent::monomial(y(1, 0))
            + YLaurent::monomial(mono(&[(1, 2, -1), (2, 1, 1)]))
            + YLaurent::monomial(mono(&[(2, 3, -1)]));
        assert_eq!(qc.poly, want);
    }

    #[test]
    fn t_system_small() {
        assert!(t_system_check_sl2(0, 1).unwrap().holds);
        assert!(t_system_check_sl2(4, 3).unwrap().holds);
        assert!(t_system_check_sl2(0, 0).is_err());
    }
}
