//! Finite-type Cartan data.
//!
//! Conventions: `c[i][j] = 2(α_i, α_j)/(α_i, α_i)`, `d_i = (α_i, α_i)/2`,
//! `b = d·c` symmetric, Bourbaki node numbering. Nodes are 1-based in every
//! public accessor.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CartanError {
    #[error("unknown Cartan type label `{0}`")]
    UnknownLabel(String),
    #[error("node {node} out of range for rank {rank}")]
    NodeOutOfRange { node: usize, rank: usize },
}

/// Finite Dynkin type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CartanType {
    A(usize),
    B(usize),
    C(usize),
    D(usize),
    E(usize),
    F4,
    G2,
}

impl CartanType {
    pub fn rank(self) -> usize {
        match self {
            CartanType::A(n) | CartanType::B(n) | CartanType::C(n) | CartanType::D(n) | CartanType::E(n) => n,
            CartanType::F4 => 4,
            CartanType::G2 => 2,
        }
    }

    pub fn is_simply_laced(self) -> bool {
        matches!(self, CartanType::A(_) | CartanType::D(_) | CartanType::E(_))
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::C(n) => write!(f, "C{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for CartanType {
    type Err = CartanError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || CartanError::UnknownLabel(s.to_string());
        let t = s.trim().replace('_', "");
        let mut chars = t.chars();
        let letter = chars.next().ok_or_else(bad)?.to_ascii_uppercase();
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let ty = match (letter, n) {
            ('A', n) if n >= 1 => CartanType::A(n),
            ('B', n) if n >= 2 => CartanType::B(n),
            ('C', n) if n >= 2 => CartanType::C(n),
            ('D', n) if n >= 4 => CartanType::D(n),
            ('E', n) if (6..=8).contains(&n) => CartanType::E(n),
            ('F', 4) => CartanType::F4,
            ('G', 2) => CartanType::G2,
            _ => return Err(bad()),
        };
        Ok(ty)
    }
}

/// Cartan matrix, symmetrizer and symmetrized matrix of a finite type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CartanData {
    pub kind: CartanType,
    pub c: Vec<Vec<i64>>,
    pub d: Vec<i64>,
    pub b: Vec<Vec<i64>>,
}

impl CartanData {
    pub fn new(kind: CartanType) -> Self {
        let b = inner_products(kind);
        let n = b.len();
        let d: Vec<i64> = (0..n).map(|i| b[i][i] / 2).collect();
        let c = (0..n).map(|i| (0..n).map(|j| b[i][j] / d[i]).collect()).collect();
        CartanData { kind, c, d, b }
    }

    pub fn from_label(label: &str) -> Result<Self, CartanError> {
        Ok(Self::new(label.parse()?))
    }

    pub fn rank(&self) -> usize {
        self.d.len()
    }

    pub fn nodes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.rank()
    }

    pub fn check_node(&self, i: usize) -> Result<(), CartanError> {
        if i == 0 || i > self.rank() {
            Err(CartanError::NodeOutOfRange { node: i, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    /// `C_{ij}` with 1-based nodes.
    pub fn cij(&self, i: usize, j: usize) -> i64 {
        self.c[i - 1][j - 1]
    }

    /// `B_{ij}` with 1-based nodes.
    pub fn bij(&self, i: usize, j: usize) -> i64 {
        self.b[i - 1][j - 1]
    }

    /// `d_i`, the exponent of `q_i = q^{d_i}`.
    pub fn di(&self, i: usize) -> i64 {
        self.d[i - 1]
    }

    /// Nodes `j ≠ i` with `C_{ij} < 0`.
    pub fn neighbours(&self, i: usize) -> Vec<usize> {
        self.nodes().filter(|&j| j != i && self.cij(i, j) < 0).collect()
    }

    /// `α_i` in the basis of fundamental weights: `α_i = Σ_j C_{ji} ω_j`.
    pub fn simple_root(&self, i: usize) -> Vec<i64> {
        self.nodes().map(|j| self.cij(j, i)).collect()
    }

    /// `ω_i` as a coordinate vector.
    pub fn fundamental_weight(&self, i: usize) -> Vec<i64> {
        let mut w = vec![0; self.rank()];
        w[i - 1] = 1;
        w
    }

    /// Diagram automorphism induced by `-w_0`, as a 1-based permutation.
    pub fn dual_involution(&self, i: usize) -> usize {
        let n = self.rank();
        match self.kind {
            CartanType::A(_) => n + 1 - i,
            CartanType::D(n) if n % 2 == 1 && i >= n - 1 => 2 * n - 1 - i,
            CartanType::E(6) => [0, 6, 2, 5, 4, 3, 1][i],
            _ => i,
        }
    }
}

/// Gram matrix `(α_i, α_j)` normalised so that short roots have length² 2.
fn inner_products(kind: CartanType) -> Vec<Vec<i64>> {
    let n = kind.rank();
    let mut b = vec![vec![0i64; n]; n];
    let link = |b: &mut Vec<Vec<i64>>, i: usize, j: usize, v: i64| {
        b[i - 1][j - 1] = v;
        b[j - 1][i - 1] = v;
    };
    match kind {
        CartanType::A(_) => {
            for i in 1..=n {
                b[i - 1][i - 1] = 2;
            }
            for i in 1..n {
                link(&mut b, i, i + 1, -1);
            }
        }
        CartanType::D(_) => {
            for i in 1..=n {
                b[i - 1][i - 1] = 2;
            }
            for i in 1..n - 1 {
                link(&mut b, i, i + 1, -1);
            }
            link(&mut b, n - 2, n, -1);
        }
        CartanType::E(_) => {
            for i in 1..=n {
                b[i - 1][i - 1] = 2;
            }
            link(&mut b, 1, 3, -1);
            link(&mut b, 2, 4, -1);
            for i in 3..n {
                link(&mut b, i, i + 1, -1);
            }
        }
        CartanType::B(_) => {
            for i in 1..n {
                b[i - 1][i - 1] = 4;
                link(&mut b, i, i + 1, -2);
            }
            b[n - 1][n - 1] = 2;
        }
        CartanType::C(_) => {
            for i in 1..n {
                b[i - 1][i - 1] = 2;
                link(&mut b, i, i + 1, -1);
            }
            b[n - 1][n - 1] = 4;
            link(&mut b, n - 1, n, -2);
        }
        CartanType::F4 => {
            b[0][0] = 4;
            b[1][1] = 4;
            b[2][2] = 2;
            b[3][3] = 2;
            link(&mut b, 1, 2, -2);
            link(&mut b, 2, 3, -2);
            link(&mut b, 3, 4, -1);
        }
        CartanType::G2 => {
            b[0][0] = 2;
            b[1][1] = 6;
            link(&mut b, 1, 2, -3);
        }
    }
    b
}
