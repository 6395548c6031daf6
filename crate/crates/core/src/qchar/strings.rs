//! q-strings in one node direction: canonical decomposition, general
//! position, and the sl2 expansions they generate.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

/// The string `{r, r+2d, …, r+2d(k−1)}` at node `node`, where `d = d_node`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct StringSpec {
    pub node: usize,
    pub start: i64,
    pub len: usize,
}

impl StringSpec {
    pub fn new(node: usize, start: i64, len: usize) -> Self {
        StringSpec { node, start, len }
    }

    pub fn end(&self, step: i64) -> i64 {
        self.start + step * (self.len as i64 - 1)
    }

    pub fn shifts(&self, step: i64) -> impl Iterator<Item = i64> + '_ {
        (0..self.len as i64).map(move |t| self.start + step * t)
    }

    /// Root-monomial shifts removed by the first `l` lowering steps:
    /// `r + step(k−j) + step/2` for `j = 1..l`.
    pub fn lowering_shifts(&self, step: i64, l: usize) -> Vec<i64> {
        let k = self.len as i64;
        (1..=l as i64).map(|j| self.start + step * (k - j) + step / 2).collect()
    }
}

/// True iff the union of the two strings is not a string, or one contains
/// the other.
pub fn in_general_position(a: &StringSpec, b: &StringSpec, step: i64) -> bool {
    if a.len == 0 || b.len == 0 || (a.start - b.start).rem_euclid(step) != 0 {
        return true;
    }
    let (a0, a1, b0, b1) = (a.start, a.end(step), b.start, b.end(step));
    let union_is_string = b0 <= a1 + step && a0 <= b1 + step;
    let nested = (a0 <= b0 && b1 <= a1) || (b0 <= a0 && a1 <= b1);
    !union_is_string || nested
}

/// First pair of strings in special position, if any.
pub fn special_pair(strings: &[StringSpec], step: i64) -> Option<(StringSpec, StringSpec)> {
    for (k, a) in strings.iter().enumerate() {
        for b in &strings[k + 1..] {
            if !in_general_position(a, b, step) {
                return Some((*a, *b));
            }
        }
    }
    None
}

/// Decomposes a multiset of shifts into strings in general position by
/// repeatedly extracting a longest string (smallest start on ties).
pub fn decompose(node: usize, shifts: &BTreeMap<i64, u32>, step: i64) -> Vec<StringSpec> {
    let mut left = shifts.clone();
    left.retain(|_, c| *c > 0);
    let mut out = Vec::new();
    while !left.is_empty() {
        let mut best = (0usize, 0i64);
        for &s in left.keys() {
            let mut len = 0usize;
            while left.contains_key(&(s + step * len as i64)) {
                len += 1;
            }
            if len > best.0 {
                best = (len, s);
            }
        }
        let spec = StringSpec::new(node, best.1, best.0);
        for s in spec.shifts(step) {
            let c = left.get_mut(&s).expect("shift present");
            *c -= 1;
            if *c == 0 {
                left.remove(&s);
            }
        }
        out.push(spec);
    }
    out.sort();
    out
}

/// Expansion of a product of string characters in one direction, as a map
/// from sorted lists of lowering shifts to multiplicities.
pub fn lowering_terms(strings: &[StringSpec], step: i64) -> BTreeMap<Vec<i64>, BigInt> {
    let mut acc: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
    acc.insert(Vec::new(), BigInt::one());
    for s in strings {
        let mut next: BTreeMap<Vec<i64>, BigInt> = BTreeMap::new();
        for (shifts, c) in &acc {
            for l in 0..=s.len {
                let mut v = shifts.clone();
                v.extend(s.lowering_shifts(step, l));
                v.sort_unstable();
                *next.entry(v).or_default() += c;
            }
        }
        acc = next;
    }
    acc
}
