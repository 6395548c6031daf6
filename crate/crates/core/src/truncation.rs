//! Truncation parameters, the Λ-monomial order, χ_{i,a} tables and the
//! enumeration and chain search built on them.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde_json::{json, Value};
use thiserror::Error;

use crate::cartan::{CartanData, CartanError, CartanType};
use crate::lattice::nonnegative_combination;
use crate::laurent::{Laurent, Monomial};
use crate::qchar::{fm_fundamental, QCharError};
use crate::relations::psi_tilde;
use crate::vars::{
    bigint_json, laurent_from_json, mono, monomial_json, shift_range, Certificate, NodeVar, Psi, PsiWeight, Z,
    ZCharacter, ZMonomial,
};

#[derive(Debug, Error)]
pub enum TruncationError {
    #[error(transparent)]
    Cartan(#[from] CartanError),
    #[error(transparent)]
    QChar(#[from] QCharError),
    #[error("no χ table for type {0}")]
    UnsupportedType(String),
    #[error("invalid truncation parameter: {0}")]
    InvalidParam(String),
    #[error("invalid table: {0}")]
    InvalidTable(String),
}

/// `Z_i(z) = ∏_s (1 − zq^s)` for each node, stored as the exponents `s`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TruncationParam {
    pub roots: Vec<Vec<i64>>,
}

impl TruncationParam {
    pub fn new(mut roots: Vec<Vec<i64>>) -> Self {
        for r in &mut roots {
            r.sort_unstable();
        }
        TruncationParam { roots }
    }

    pub fn trivial(rank: usize) -> Self {
        TruncationParam { roots: vec![Vec::new(); rank] }
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    /// `∏ Ψ_{i,s}` over all factors `(1 − zq^s)` of `Z_i`.
    pub fn to_psi(&self) -> PsiWeight {
        let mut m = Monomial::one();
        for (i, rs) in self.roots.iter().enumerate() {
            for &s in rs {
                m.mul_var(Psi::new(i + 1, s), 1);
            }
        }
        PsiWeight::from_monomial(m)
    }

    /// Inverse of [`to_psi`](Self::to_psi); fails on negative exponents.
    pub fn from_psi(psi: &PsiWeight, rank: usize) -> Result<Self, TruncationError> {
        if !psi.is_polynomial() {
            return Err(TruncationError::InvalidParam(format!("{psi} is not polynomial")));
        }
        let mut roots = vec![Vec::new(); rank];
        for (v, e) in psi.psi.iter() {
            if v.node == 0 || v.node > rank {
                return Err(TruncationError::InvalidParam(format!("node {} out of range", v.node)));
            }
            roots[v.node - 1].extend(std::iter::repeat_n(v.shift, e as usize));
        }
        Ok(Self::new(roots))
    }

    /// Parses `[[s, ...], ...]`, one list per node.
    pub fn from_json(v: &Value, rank: usize) -> Result<Self, TruncationError> {
        let bad = || TruncationError::InvalidParam(v.to_string());
        let lists = v.as_array().ok_or_else(bad)?;
        if lists.len() != rank {
            return Err(TruncationError::InvalidParam(format!("expected {rank} root lists")));
        }
        let roots = lists
            .iter()
            .map(|l| l.as_array().ok_or_else(bad)?.iter().map(|x| x.as_i64().ok_or_else(bad)).collect())
            .collect::<Result<Vec<Vec<i64>>, _>>()?;
        Ok(Self::new(roots))
    }

    pub fn to_json(&self) -> Value {
        json!(self.roots)
    }

    /// `Σ_i deg(Z_i) ω_i^∨`.
    pub fn degree(&self) -> Vec<i64> {
        self.roots.iter().map(|r| r.len() as i64).collect()
    }
}

/// `Λ_{i,q^r} = Ψ_{i,r+d_i} · Ψ̃_{i,r−d_i}^{-1}`.
pub fn lambda_monomial(cd: &CartanData, i: usize, r: i64) -> Result<PsiWeight, CartanError> {
    let d = cd.di(i);
    Ok(PsiWeight::psi(i, r + d, 1).div(&psi_tilde(cd, i, r - d)?))
}

/// Certificate `c ≥ 0` with `z·psi^{-1} = ∏ Λ_{i,r}^{c_{i,r}}`, if any.
pub fn preceq(cd: &CartanData, psi: &PsiWeight, z: &PsiWeight) -> Option<Certificate> {
    let target = z.psi.div(&psi.psi);
    let Some((lo, hi)) = shift_range(&target) else {
        return Some(Certificate::default());
    };
    let gens: Vec<((usize, i64), Monomial<Psi>)> = cd
        .nodes()
        .flat_map(|i| (lo - 6..=hi + 6).map(move |r| (i, r)))
        .map(|(i, r)| ((i, r), lambda_monomial(cd, i, r).expect("valid node").psi))
        .collect();
    nonnegative_combination(&gens, &target)
}

/// User-supplied χ tables at `a = 1`, keyed by node.
#[derive(Clone, Debug, Default)]
pub struct ChiTables {
    pub kind: Option<CartanType>,
    pub tables: BTreeMap<usize, ZCharacter>,
}

impl ChiTables {
    /// Reads `{"type": "G2", "tables": {"1": [{coef, monomial}], ...}}`.
    pub fn from_json(v: &Value) -> Result<Self, TruncationError> {
        let bad = |s: &str| TruncationError::InvalidTable(s.to_string());
        let kind: CartanType = v.get("type").and_then(Value::as_str).ok_or_else(|| bad("missing type"))?.parse()?;
        let mut tables = BTreeMap::new();
        for (k, t) in v.get("tables").and_then(Value::as_object).ok_or_else(|| bad("missing tables"))? {
            let node: usize = k.parse().map_err(|_| bad("node key"))?;
            tables.insert(node, laurent_from_json::<Z>(t).ok_or_else(|| bad("polynomial"))?);
        }
        Ok(ChiTables { kind: Some(kind), tables })
    }
}

fn shift_z(p: &ZCharacter, r: i64) -> ZCharacter {
    p.map_vars(|v| Z::new(v.node, v.shift + r))
}

fn b2_table(i: usize) -> ZCharacter {
    let terms: &[&[(usize, i64, i64)]] = if i == 1 {
        &[&[(1, 0, 1)], &[(1, 4, -1), (2, 2, 1)], &[(2, 4, -1), (1, 2, 1)], &[(1, 6, -1)]]
    } else {
        &[
            &[(2, 0, 1)],
            &[(2, 2, -1), (1, 0, 1), (1, 2, 1)],
            &[(1, 0, 1), (1, 6, -1), (2, 2, -1), (2, 4, 1)],
            &[(1, 2, 1), (1, 4, -1)],
            &[(1, 6, -1), (1, 4, -1), (2, 4, 1)],
            &[(2, 6, -1)],
        ]
    };
    terms.iter().map(|t| Laurent::monomial(mono::<Z>(t))).fold(Laurent::zero(), |a, b| a + b)
}

/// `χ_{i,q^r}`.
pub fn chi_table(cd: &CartanData, i: usize, r: i64) -> Result<ZCharacter, TruncationError> {
    chi_table_with(cd, i, r, None)
}

/// `χ_{i,q^r}`, consulting user tables for types without a built-in one.
pub fn chi_table_with(cd: &CartanData, i: usize, r: i64, user: Option<&ChiTables>) -> Result<ZCharacter, TruncationError> {
    cd.check_node(i)?;
    if let Some(t) = user.filter(|t| t.kind == Some(cd.kind)) {
        if let Some(p) = t.tables.get(&i) {
            return Ok(shift_z(p, r));
        }
    }
    if cd.kind.is_simply_laced() {
        return Ok(fm_fundamental(cd, i, r)?.poly.map_vars(|v| Z::new(v.node, v.shift)));
    }
    if cd.kind == CartanType::B(2) {
        return Ok(shift_z(&b2_table(i), r));
    }
    Err(TruncationError::UnsupportedType(cd.kind.to_string()))
}

/// `χ(Z) = ∏ χ_{i,q^{−s}}` over the factors `(1 − zq^s)` of each `Z_i`.
pub fn chi_z(cd: &CartanData, z: &TruncationParam, user: Option<&ChiTables>) -> Result<ZCharacter, TruncationError> {
    if z.rank() != cd.rank() {
        return Err(TruncationError::InvalidParam(format!("expected {} root lists", cd.rank())));
    }
    let mut out = ZCharacter::one();
    for (k, rs) in z.roots.iter().enumerate() {
        for &s in rs {
            out = &out * &chi_table_with(cd, k + 1, -s, user)?;
        }
    }
    Ok(out)
}

/// `Z_{i,r}^e ↦ Ψ_{i,−r}^e`, constant parts omitted.
pub fn psi_of_monomial(m: &ZMonomial) -> PsiWeight {
    PsiWeight::from_monomial(m.map_vars(|v| Psi::new(v.node, -v.shift)))
}

/// One parameter coming from `χ(Z)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Enumerated {
    pub monomial: ZMonomial,
    pub psi: PsiWeight,
    /// Coweight degree of `psi` in the fundamental-coweight basis.
    pub mu: Vec<i64>,
    pub multiplicity: BigInt,
}

impl Enumerated {
    pub fn to_json(&self) -> Value {
        json!({
            "monomial": monomial_json(&self.monomial),
            "psi": monomial_json(&self.psi.psi),
            "mu": self.mu,
            "multiplicity": bigint_json(&self.multiplicity),
        })
    }
}

/// Every `Ψ_M` for `M` a monomial of `χ(Z)`, with multiplicity.
pub fn conjecture_enumerate(
    cd: &CartanData,
    z: &TruncationParam,
    user: Option<&ChiTables>,
) -> Result<Vec<Enumerated>, TruncationError> {
    Ok(chi_z(cd, z, user)?
        .terms()
        .map(|(m, c)| {
            let psi = psi_of_monomial(m);
            Enumerated { monomial: m.clone(), mu: psi.degree(cd.rank()), psi, multiplicity: c.clone() }
        })
        .collect())
}

/// The monomial of `χ(Z)` whose parameter is `target`, if there is one.
pub fn comes_from(
    cd: &CartanData,
    z: &TruncationParam,
    target: &PsiWeight,
    user: Option<&ChiTables>,
) -> Result<Option<ZMonomial>, TruncationError> {
    let target = target.without_weight();
    Ok(chi_z(cd, z, user)?.monomials().find(|m| psi_of_monomial(m) == target).cloned())
}

/// A sequence `Z_0, …, Z_N` with each `Z_{k+1}` coming from `χ(Z_k)` and the
/// target coming from `χ(Z_N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub params: Vec<TruncationParam>,
    /// `Z_{k+1} ⪯ Z_k` certificates.
    pub steps: Vec<Certificate>,
    /// Monomial of `χ(Z_N)` giving the target.
    pub final_monomial: ZMonomial,
}

impl Chain {
    /// Number of steps `N`.
    pub fn steps_len(&self) -> usize {
        self.params.len() - 1
    }

    pub fn to_json(&self) -> Value {
        json!({
            "params": self.params.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
            "certificates": self.steps.iter().map(|c| json!(c.entries)).collect::<Vec<_>>(),
            "final_monomial": monomial_json(&self.final_monomial),
        })
    }
}

/// Breadth-first search for a chain of depth at most `max_depth`; the
/// first of [`shortest_chains`] in canonical order.
pub fn chain_search(
    cd: &CartanData,
    z: &TruncationParam,
    target: &PsiWeight,
    max_depth: usize,
    user: Option<&ChiTables>,
) -> Result<Option<Chain>, TruncationError> {
    Ok(shortest_chains(cd, z, target, max_depth, user)?.into_iter().next())
}

/// All chains of minimal depth (at most `max_depth`) ending at the target.
/// Successors of `Z_k` are the polynomial parameters coming from `χ(Z_k)`;
/// those not above the target in the Λ-order are pruned.
pub fn shortest_chains(
    cd: &CartanData,
    z: &TruncationParam,
    target: &PsiWeight,
    max_depth: usize,
    user: Option<&ChiTables>,
) -> Result<Vec<Chain>, TruncationError> {
    let target = target.without_weight();
    if preceq(cd, &target, &z.to_psi()).is_none() {
        return Ok(Vec::new());
    }
    let mut seen: BTreeSet<TruncationParam> = BTreeSet::new();
    seen.insert(z.clone());
    let mut level = vec![vec![z.clone()]];
    for depth in 0..=max_depth {
        let mut found = Vec::new();
        let mut next_level = Vec::new();
        for path in &level {
            let last = path.last().expect("nonempty path");
            let chi = chi_z(cd, last, user)?;
            if let Some(m) = chi.monomials().find(|m| psi_of_monomial(m) == target) {
                let steps = path
                    .windows(2)
                    .map(|w| preceq(cd, &w[1].to_psi(), &w[0].to_psi()).expect("successors lie below"))
                    .collect();
                found.push(Chain { params: path.clone(), steps, final_monomial: m.clone() });
                continue;
            }
            if depth == max_depth {
                continue;
            }
            for m in chi.monomials().filter(|m| m.is_nonnegative()) {
                let next = TruncationParam::from_psi(&psi_of_monomial(m), cd.rank())?;
                if seen.contains(&next) || preceq(cd, &target, &next.to_psi()).is_none() {
                    continue;
                }
                seen.insert(next.clone());
                let mut p = path.clone();
                p.push(next);
                next_level.push(p);
            }
        }
        if !found.is_empty() {
            found.sort_by(|a, b| a.params.cmp(&b.params));
            return Ok(found);
        }
        level = next_level;
    }
    Ok(Vec::new())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lambda_examples() {
        let a1 = CartanData::from_label("A1").unwrap();
        assert_eq!(lambda_monomial(&a1, 1, 0).unwrap(), PsiWeight::from_triples(&[(1, 1, 1), (1, -1, 1)]));
        let b2 = CartanData::from_label("B2").unwrap();
        assert_eq!(
            lambda_monomial(&b2, 1, -4).unwrap(),
            PsiWeight::from_triples(&[(1, -2, 1), (1, -6, 1), (2, -4, -1)])
        );
        assert_eq!(
            lambda_monomial(&b2, 2, -1).unwrap(),
            PsiWeight::from_triples(&[(2, 0, 1), (2, -2, 1), (1, -2, -1), (1, 0, -1)])
        );
    }

    #[test]
    fn table_sizes() {
        let b2 = CartanData::from_label("B2").unwrap();
        assert_eq!(chi_table(&b2, 1, 0).unwrap().len(), 4);
        assert_eq!(chi_table(&b2, 2, 0).unwrap().len(), 6);
        let c2 = CartanData::from_label("C2").unwrap();
        assert!(matches!(chi_table(&c2, 1, 0), Err(TruncationError::UnsupportedType(_))));
    }
}
