//! Quivers, seeds and mutation with exact cluster variables.

mod seeds;

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

use crate::laurent::{Laurent, Monomial};
use crate::vars::PsiWeight;

pub use seeds::{named_seed, type_a_seed, SEED_NAMES};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ClusterError {
    #[error("unknown vertex {0}")]
    UnknownVertex(usize),
    #[error("vertex {0} is frozen")]
    Frozen(usize),
    #[error("unknown seed `{0}`")]
    UnknownSeed(String),
    #[error("invalid seed: {0}")]
    InvalidSeed(String),
}

/// Initial cluster variable attached to the vertex with the given id.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct X(pub usize);

impl fmt::Display for X {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X_{}", self.0)
    }
}

pub type XLaurent = Laurent<X>;

/// A cluster variable as a ratio of Laurent polynomials in the initial
/// variables. Whenever the denominator divides the numerator the quotient is
/// stored with denominator one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: XLaurent,
    pub den: XLaurent,
}

impl Fraction {
    pub fn laurent(p: XLaurent) -> Self {
        Fraction { num: p, den: XLaurent::one() }
    }

    pub fn new(num: XLaurent, den: XLaurent) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        match num.try_div(&den) {
            Some(q) => Self::laurent(q),
            None => Fraction { num, den },
        }
    }

    pub fn one() -> Self {
        Self::laurent(XLaurent::one())
    }

    /// The Laurent polynomial this fraction equals, if any.
    pub fn as_laurent(&self) -> Option<&XLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, &self.den * &o.den)
    }

    pub fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Self::new(&self.num + &o.num, self.den.clone());
        }
        Self::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
    }

    pub fn div(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn pow(&self, k: u32) -> Self {
        Self::new(self.num.pow(k), self.den.pow(k))
    }

    /// Equality as rational functions.
    pub fn same_value(&self, o: &Self) -> bool {
        &self.num * &o.den == &o.num * &self.den
    }
}

/// Renders a Laurent polynomial as `numerator/monomial`, e.g.
/// `(1 + X_2)/X_1`.
pub fn fraction_string(p: &XLaurent) -> String {
    let vars: BTreeSet<X> = p.monomials().flat_map(|m| m.vars().copied()).collect();
    let den = Monomial::from_pairs(vars.into_iter().filter_map(|v| {
        let lo = p.monomials().map(|m| m.exp(&v)).min().unwrap_or(0);
        (lo < 0).then_some((v, -lo))
    }));
    let num = p.mul_monomial(&den);
    let num_s = num.to_string();
    if den.is_one() {
        num_s
    } else if num.len() > 1 {
        format!("({num_s})/{den}")
    } else {
        format!("{num_s}/{den}")
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_laurent() {
            Some(p) => write!(f, "{}", fraction_string(p)),
            None => write!(f, "({})/({})", self.num, self.den),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: usize,
    pub frozen: bool,
    pub label: String,
    /// ℓ-weight of the label, when it has one.
    pub psi: Option<PsiWeight>,
}

/// A quiver stored as a skew-symmetric exchange matrix: `b[i][j] > 0` counts
/// arrows from vertex `i` to vertex `j` (positions, not ids).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub vertices: Vec<Vertex>,
    pub b: Vec<Vec<i64>>,
}

impl Quiver {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        let n = vertices.len();
        Quiver { vertices, b: vec![vec![0; n]; n] }
    }

    pub fn position(&self, id: usize) -> Result<usize, ClusterError> {
        self.vertices.iter().position(|v| v.id == id).ok_or(ClusterError::UnknownVertex(id))
    }

    /// Adds one arrow `from → to` (ids), cancelling an opposite arrow.
    pub fn add_arrow(&mut self, from: usize, to: usize) -> Result<(), ClusterError> {
        let (i, j) = (self.position(from)?, self.position(to)?);
        if i == j {
            return Err(ClusterError::InvalidSeed(format!("loop at {from}")));
        }
        self.b[i][j] += 1;
        self.b[j][i] -= 1;
        Ok(())
    }

    /// Arrow list `(from, to)` by id, with multiplicity.
    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, row) in self.b.iter().enumerate() {
            for (j, &n) in row.iter().enumerate() {
                for _ in 0..n.max(0) {
                    out.push((self.vertices[i].id, self.vertices[j].id));
                }
            }
        }
        out
    }

    pub fn mutable_positions(&self) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&i| !self.vertices[i].frozen).collect()
    }

    fn mutate_at(&self, k: usize) -> Self {
        let n = self.b.len();
        let b = &self.b;
        let mut nb = b.clone();
        for i in 0..n {
            for j in 0..n {
                nb[i][j] = if i == k || j == k {
                    -b[i][j]
                } else {
                    b[i][j] + b[i][k].signum() * (b[i][k] * b[k][j]).max(0)
                };
            }
        }
        Quiver { vertices: self.vertices.clone(), b: nb }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    pub quiver: Quiver,
    pub vars: Vec<Fraction>,
}

impl Seed {
    /// Seed whose variable at vertex `id` is `X_id`.
    pub fn initial(quiver: Quiver) -> Self {
        let vars = quiver.vertices.iter().map(|v| Fraction::laurent(XLaurent::var(X(v.id)))).collect();
        Seed { quiver, vars }
    }

    pub fn var(&self, id: usize) -> Result<&Fraction, ClusterError> {
        Ok(&self.vars[self.quiver.position(id)?])
    }

    /// The two monomials `∏_{j→k} x_j` and `∏_{k→j} x_j`.
    pub fn exchange_monomials(&self, k: usize) -> (Fraction, Fraction) {
        let mut inward = Fraction::one();
        let mut outward = Fraction::one();
        for (j, x) in self.vars.iter().enumerate() {
            let b = self.quiver.b[j][k];
            if b > 0 {
                inward = inward.mul(&x.pow(b as u32));
            } else if b < 0 {
                outward = outward.mul(&x.pow((-b) as u32));
            }
        }
        (inward, outward)
    }

    /// Mutation at the vertex with id `id`.
    pub fn mutate(&self, id: usize) -> Result<Seed, ClusterError> {
        let k = self.quiver.position(id)?;
        if self.quiver.vertices[k].frozen {
            return Err(ClusterError::Frozen(id));
        }
        let (inward, outward) = self.exchange_monomials(k);
        let mut vars = self.vars.clone();
        vars[k] = inward.add(&outward).div(&self.vars[k]);
        Ok(Seed { quiver: self.quiver.mutate_at(k), vars })
    }

    /// Mutable variables, displayed, sorted: the cluster's identity.
    pub fn cluster_key(&self) -> Vec<String> {
        let mut key: Vec<String> =
            self.quiver.mutable_positions().into_iter().map(|i| self.vars[i].to_string()).collect();
        key.sort();
        key
    }

    pub fn to_json(&self) -> Value {
        let vertices: Vec<Value> = self
            .quiver
            .vertices
            .iter()
            .map(|v| {
                let mut o = json!({"id": v.id, "frozen": v.frozen, "label": v.label});
                if let Some(p) = &v.psi {
                    o["psi"] = p.to_json();
                }
                o
            })
            .collect();
        let variables: serde_json::Map<String, Value> = self
            .quiver
            .vertices
            .iter()
            .zip(&self.vars)
            .map(|(v, x)| (v.id.to_string(), Value::String(x.to_string())))
            .collect();
        json!({
            "vertices": vertices,
            "arrows": self.quiver.arrows().into_iter().map(|(a, b)| json!([a, b])).collect::<Vec<_>>(),
            "variables": variables,
        })
    }

    /// Reads `{vertices:[{id,frozen,label?}], arrows:[[from,to]]}`; the
    /// variables are the initial ones.
    pub fn from_json(v: &Value) -> Result<Seed, ClusterError> {
        let bad = |s: &str| ClusterError::InvalidSeed(s.to_string());
        let mut vertices = Vec::new();
        for x in v.get("vertices").and_then(Value::as_array).ok_or_else(|| bad("missing vertices"))? {
            let id = x.get("id").and_then(Value::as_u64).ok_or_else(|| bad("vertex id"))? as usize;
            if vertices.iter().any(|w: &Vertex| w.id == id) {
                return Err(bad("duplicate vertex id"));
            }
            let frozen = x.get("frozen").and_then(Value::as_bool).unwrap_or(false);
            let label = x.get("label").and_then(Value::as_str).unwrap_or_default().to_string();
            vertices.push(Vertex { id, frozen, label, psi: None });
        }
        let mut q = Quiver::new(vertices);
        for a in v.get("arrows").and_then(Value::as_array).ok_or_else(|| bad("missing arrows"))? {
            let pair = a.as_array().filter(|p| p.len() == 2).ok_or_else(|| bad("arrow"))?;
            let from = pair[0].as_u64().ok_or_else(|| bad("arrow"))? as usize;
            let to = pair[1].as_u64().ok_or_else(|| bad("arrow"))? as usize;
            q.add_arrow(from, to)?;
        }
        Ok(Seed::initial(q))
    }
}

/// `x_k·x_k' = ∏_{j→k} x_j + ∏_{k→j} x_j`, checked exactly.
pub fn exchange_identity_holds(before: &Seed, id: usize, after: &Seed) -> bool {
    let Ok(k) = before.quiver.position(id) else {
        return false;
    };
    let (inward, outward) = before.exchange_monomials(k);
    before.vars[k].mul(&after.vars[k]).same_value(&inward.add(&outward))
}

/// True iff the variable is a Laurent polynomial in the initial cluster.
pub fn laurent_check(v: &Fraction) -> bool {
    v.as_laurent().is_some()
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    /// Distinct mutable cluster variables in discovery order.
    pub variables: Vec<Fraction>,
    pub frozen: Vec<Fraction>,
    /// Clusters as sorted lists of displayed mutable variables.
    pub clusters: Vec<Vec<String>>,
    pub finite: bool,
}

impl Enumeration {
    /// Mutable plus frozen variables.
    pub fn total_variables(&self) -> usize {
        self.variables.len() + self.frozen.len()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "finite": self.finite,
            "variables": self.variables.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "frozen": self.frozen.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
            "clusters": self.clusters,
            "total_variables": self.total_variables(),
        })
    }
}

/// Breadth-first exploration of the mutation graph, visiting at most
/// `budget` distinct clusters.
pub fn enumerate(seed: &Seed, budget: usize) -> Enumeration {
    let frozen: Vec<Fraction> = (0..seed.vars.len())
        .filter(|&i| seed.quiver.vertices[i].frozen)
        .map(|i| seed.vars[i].clone())
        .collect();
    let mut seen: HashSet<Vec<String>> = HashSet::new();
    let mut clusters = Vec::new();
    let mut var_keys: HashSet<String> = HashSet::new();
    let mut variables = Vec::new();
    let mut queue = VecDeque::new();
    let mut finite = true;

    seen.insert(seed.cluster_key());
    queue.push_back(seed.clone());
    while let Some(s) = queue.pop_front() {
        if clusters.len() == budget {
            finite = false;
            break;
        }
        clusters.push(s.cluster_key());
        for i in s.quiver.mutable_positions() {
            if var_keys.insert(s.vars[i].to_string()) {
                variables.push(s.vars[i].clone());
            }
        }
        for i in s.quiver.mutable_positions() {
            let next = s.mutate(s.quiver.vertices[i].id).expect("mutable vertex");
            if seen.insert(next.cluster_key()) {
                queue.push_back(next);
            }
        }
    }
    Enumeration { variables, frozen, clusters, finite }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_first_mutations() {
        let s = type_a_seed(2);
        let s1 = s.mutate(1).unwrap();
        assert_eq!(s1.var(1).unwrap().to_string(), "(1 + X_2)/X_1");
        let s12 = s1.mutate(2).unwrap();
        assert_eq!(s12.var(2).unwrap().to_string(), "(1 + X_1 + X_2)/X_1X_2");
        assert_eq!(s1.mutate(1).unwrap(), s);
    }

    #[test]
    fn isolated_vertex() {
        let q = Quiver::new(vec![Vertex { id: 1, frozen: false, label: String::new(), psi: None }]);
        let e = enumerate(&Seed::initial(q), 10);
        assert!(e.finite);
        let vs: Vec<String> = e.variables.iter().map(|v| v.to_string()).collect();
        assert_eq!(vs, vec!["X_1", "2/X_1"]);
        assert_eq!(e.clusters.len(), 2);
    }
}
