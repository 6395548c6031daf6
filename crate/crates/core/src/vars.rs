//! Variable families on the integer spectral lattice `a = q^r`, the
//! ψ-weight group, and their JSON encodings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::laurent::{Laurent, Monomial};

/// A variable indexed by a Dynkin node and a spectral exponent.
pub trait NodeVar: Ord + Clone + fmt::Display {
    fn new(node: usize, shift: i64) -> Self;
    fn node(&self) -> usize;
    fn shift(&self) -> i64;
}

macro_rules! node_var {
    ($name:ident, $sym:expr) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub struct $name {
            pub node: usize,
            pub shift: i64,
        }

        impl NodeVar for $name {
            fn new(node: usize, shift: i64) -> Self {
                $name { node, shift }
            }
            fn node(&self) -> usize {
                self.node
            }
            fn shift(&self) -> i64 {
                self.shift
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "{}_{{{},{}}}", $sym, self.node, self.shift)
            }
        }
    };
}

node_var!(Y, "Y");
node_var!(Z, "Z");
node_var!(Psi, "Psi");

pub type YMonomial = Monomial<Y>;
pub type YLaurent = Laurent<Y>;
pub type ZMonomial = Monomial<Z>;
pub type ZCharacter = Laurent<Z>;

/// `Y_{i,r}` as a monomial.
pub fn y(i: usize, r: i64) -> YMonomial {
    Monomial::var(Y::new(i, r))
}

/// Builds a monomial from `(node, shift, exponent)` triples.
pub fn mono<V: NodeVar>(triples: &[(usize, i64, i64)]) -> Monomial<V> {
    Monomial::from_pairs(triples.iter().map(|&(i, r, e)| (V::new(i, r), e)))
}

/// True iff every exponent is nonnegative.
pub fn is_dominant<V: Ord + Clone>(m: &Monomial<V>) -> bool {
    m.is_nonnegative()
}

/// Restriction of a monomial to the variables of one node.
pub fn node_part<V: NodeVar>(m: &Monomial<V>, node: usize) -> Monomial<V> {
    m.restrict(|v| v.node() == node)
}

/// Range `[min, max]` of spectral exponents appearing in `m`.
pub fn shift_range<V: NodeVar>(m: &Monomial<V>) -> Option<(i64, i64)> {
    let lo = m.vars().map(|v| v.shift()).min()?;
    let hi = m.vars().map(|v| v.shift()).max()?;
    Some((lo, hi))
}

/// Weight of a monomial in the basis of fundamental weights.
pub fn weight_of<V: NodeVar>(m: &Monomial<V>, rank: usize) -> Vec<i64> {
    let mut w = vec![0; rank];
    for (v, e) in m.iter() {
        w[v.node() - 1] += e;
    }
    w
}

/// An ℓ-weight: a monomial in the `Ψ_{i,r}` together with an optional
/// weight prefactor in the fundamental-weight basis. `None` means the
/// prefactor is omitted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PsiWeight {
    pub psi: Monomial<Psi>,
    pub weight: Option<Vec<i64>>,
}

impl PsiWeight {
    pub fn one() -> Self {
        PsiWeight { psi: Monomial::one(), weight: None }
    }

    pub fn from_monomial(psi: Monomial<Psi>) -> Self {
        PsiWeight { psi, weight: None }
    }

    /// `Ψ_{i,r}^e`.
    pub fn psi(i: usize, r: i64, e: i64) -> Self {
        Self::from_monomial(Monomial::var_pow(Psi::new(i, r), e))
    }

    pub fn from_triples(triples: &[(usize, i64, i64)]) -> Self {
        Self::from_monomial(mono(triples))
    }

    pub fn mul(&self, other: &Self) -> Self {
        PsiWeight { psi: self.psi.mul(&other.psi), weight: combine(&self.weight, &other.weight, 1) }
    }

    pub fn div(&self, other: &Self) -> Self {
        PsiWeight { psi: self.psi.div(&other.psi), weight: combine(&self.weight, &other.weight, -1) }
    }

    pub fn inv(&self) -> Self {
        PsiWeight { psi: self.psi.inv(), weight: self.weight.as_ref().map(|w| w.iter().map(|x| -x).collect()) }
    }

    pub fn pow(&self, k: i64) -> Self {
        PsiWeight { psi: self.psi.pow(k), weight: self.weight.as_ref().map(|w| w.iter().map(|x| x * k).collect()) }
    }

    /// Coweight degree `deg_i = Σ_r exp(Ψ_{i,r})`.
    pub fn degree(&self, rank: usize) -> Vec<i64> {
        weight_of(&self.psi, rank)
    }

    /// Same ℓ-weight with the prefactor dropped.
    pub fn without_weight(&self) -> Self {
        Self::from_monomial(self.psi.clone())
    }

    pub fn is_polynomial(&self) -> bool {
        self.psi.is_nonnegative()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "psi": monomial_json(&self.psi),
            "weight": self.weight,
        })
    }
}

fn combine(a: &Option<Vec<i64>>, b: &Option<Vec<i64>>, sign: i64) -> Option<Vec<i64>> {
    match (a, b) {
        (None, None) => None,
        (Some(x), None) => Some(x.clone()),
        (None, Some(y)) => Some(y.iter().map(|v| sign * v).collect()),
        (Some(x), Some(y)) => Some(x.iter().zip(y).map(|(u, v)| u + sign * v).collect()),
    }
}

impl fmt::Display for PsiWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(w) = &self.weight {
            if w.iter().any(|&x| x != 0) {
                write!(f, "[{}]", format_weight(w))?;
            }
        }
        write!(f, "{}", self.psi)
    }
}

/// Renders `Σ λ_i ω_i` as e.g. `-ω_1+2ω_2`, or `0`.
pub fn format_weight(w: &[i64]) -> String {
    let mut s = String::new();
    for (k, &x) in w.iter().enumerate() {
        if x == 0 {
            continue;
        }
        if x < 0 {
            s.push('-');
        } else if !s.is_empty() {
            s.push('+');
        }
        if x.abs() != 1 {
            s.push_str(&x.abs().to_string());
        }
        s.push_str(&format!("ω_{}", k + 1));
    }
    if s.is_empty() {
        s.push('0');
    }
    s
}

/// Serializable certificate: exponent per generator `(node, shift)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub entries: Vec<(usize, i64, i64)>,
}

impl Certificate {
    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().map(|e| e.2).sum()
    }

    pub fn get(&self, node: usize, shift: i64) -> i64 {
        self.entries.iter().find(|e| e.0 == node && e.1 == shift).map(|e| e.2).unwrap_or(0)
    }
}

/// `[[i, r, e], ...]` in canonical order.
pub fn monomial_json<V: NodeVar>(m: &Monomial<V>) -> Value {
    Value::Array(m.iter().map(|(v, e)| json!([v.node(), v.shift(), e])).collect())
}

pub fn monomial_from_json<V: NodeVar>(v: &Value) -> Option<Monomial<V>> {
    let arr = v.as_array()?;
    let mut out = Monomial::one();
    for t in arr {
        let t = t.as_array()?;
        if t.len() != 3 {
            return None;
        }
        let i = t[0].as_u64()? as usize;
        let r = t[1].as_i64()?;
        let e = t[2].as_i64()?;
        out.mul_var(V::new(i, r), e);
    }
    Some(out)
}

/// Integers that fit in `i64` are emitted as numbers, larger ones as strings.
pub fn bigint_json(c: &BigInt) -> Value {
    match c.to_i64() {
        Some(x) => json!(x),
        None => json!(c.to_string()),
    }
}

pub fn bigint_from_json(v: &Value) -> Option<BigInt> {
    if let Some(x) = v.as_i64() {
        return Some(BigInt::from(x));
    }
    v.as_str()?.parse().ok()
}

/// `[{"coef": c, "monomial": [...]}, ...]` in canonical order.
pub fn laurent_json<V: NodeVar>(p: &Laurent<V>) -> Value {
    Value::Array(p.terms().map(|(m, c)| json!({"coef": bigint_json(c), "monomial": monomial_json(m)})).collect())
}

pub fn laurent_from_json<V: NodeVar>(v: &Value) -> Option<Laurent<V>> {
    let mut out = Laurent::zero();
    for t in v.as_array()? {
        let c = bigint_from_json(t.get("coef")?)?;
        let m = monomial_from_json(t.get("monomial")?)?;
        out.add_term(m, c);
    }
    Some(out)
}
