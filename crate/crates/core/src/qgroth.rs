//! The sl2 quantum Grothendieck ring: normal-ordered words in the classes
//! `g_r = [V(q^r)]_t` over `ℤ[t^{±1/2}]`, its bar involution and the
//! canonical basis of simple classes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::qchar::{sl2_simple_character, sl2_string_character};
use crate::vars::{bigint_json, YLaurent};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QGrothError {
    #[error("canonical classes need a nonempty multiset of shifts")]
    EmptyMultiset,
    #[error("leading coefficient {0} is not a power of t")]
    NotUnitriangular(String),
}

/// Integer Laurent polynomial in `t^{1/2}`, keyed by the exponent of `t^{1/2}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TPoly(BTreeMap<i64, BigInt>);

impl TPoly {
    pub fn zero() -> Self {
        TPoly(BTreeMap::new())
    }

    pub fn one() -> Self {
        Self::term(0, 1)
    }

    /// `c·t^{half/2}`.
    pub fn term(half: i64, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero();
        p.add_term(half, c.into());
        p
    }

    /// `t^{half/2}`.
    pub fn t_half(half: i64) -> Self {
        Self::term(half, 1)
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        let mut p = Self::zero();
        for &(h, c) in pairs {
            p.add_term(h, BigInt::from(c));
        }
        p
    }

    fn add_term(&mut self, half: i64, c: BigInt) {
        let e = self.0.entry(half).or_default();
        *e += c;
        if e.is_zero() {
            self.0.remove(&half);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.0.iter().map(|(h, c)| (*h, c))
    }

    pub fn coeff(&self, half: i64) -> BigInt {
        self.0.get(&half).cloned().unwrap_or_default()
    }

    /// `t^{1/2} ↦ t^{−1/2}`.
    pub fn bar(&self) -> Self {
        TPoly(self.0.iter().map(|(h, c)| (-h, c.clone())).collect())
    }

    pub fn is_bar_invariant(&self) -> bool {
        *self == self.bar()
    }

    /// Value at `t = 1`.
    pub fn at_one(&self) -> BigInt {
        self.0.values().sum()
    }

    /// Terms with strictly negative exponent.
    pub fn negative_part(&self) -> Self {
        TPoly(self.0.range(..0).map(|(h, c)| (*h, c.clone())).collect())
    }

    /// `Some((half, c))` when the polynomial is a single term.
    pub fn as_term(&self) -> Option<(i64, &BigInt)> {
        if self.0.len() == 1 {
            self.0.iter().next().map(|(h, c)| (*h, c))
        } else {
            None
        }
    }

    pub fn shift(&self, half: i64) -> Self {
        TPoly(self.0.iter().map(|(h, c)| (h + half, c.clone())).collect())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|c| !c.is_negative())
    }

    /// `[[half, c], ...]` in ascending exponent order.
    pub fn to_json(&self) -> Value {
        Value::Array(self.0.iter().map(|(h, c)| json!([h, bigint_json(c)])).collect())
    }
}

impl Add for &TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (h, c) in &rhs.0 {
            out.add_term(*h, c.clone());
        }
        out
    }
}

impl Sub for &TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        self + &(-rhs)
    }
}

impl Neg for &TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly(self.0.iter().map(|(h, c)| (*h, -c)).collect())
    }
}

impl Mul for &TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        for (h1, c1) in &self.0 {
            for (h2, c2) in &rhs.0 {
                out.add_term(h1 + h2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (h, c)) in self.0.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (k, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if *h == 0 {
                write!(f, "{a}")?;
                continue;
            }
            if !a.is_one() {
                write!(f, "{a}")?;
            }
            let (q, r) = h.div_rem(&2);
            match (q, r) {
                (1, 0) => write!(f, "t")?,
                (q, 0) => write!(f, "t^{{{q}}}")?,
                _ => write!(f, "t^{{{h}/2}}")?,
            }
        }
        Ok(())
    }
}

/// `𝒩(r)`: `2(−1)^k` for `r = 2k > 0`, else `0`.
pub fn n_exponent(r: i64) -> i64 {
    if r > 0 && r % 2 == 0 {
        if (r / 2) % 2 == 0 {
            2
        } else {
            -2
        }
    } else {
        0
    }
}

/// Element of the quantum Grothendieck ring: normal-ordered words (shifts
/// sorted ascending) with `TPoly` coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct KtElement {
    terms: BTreeMap<Vec<i64>, TPoly>,
}

impl KtElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::scalar(TPoly::one())
    }

    pub fn scalar(c: TPoly) -> Self {
        let mut x = Self::zero();
        x.add_term(Vec::new(), c);
        x
    }

    pub fn generator(r: i64) -> Self {
        let mut x = Self::zero();
        x.add_term(vec![r], TPoly::one());
        x
    }

    /// The normal-ordered word on the given shifts with coefficient `c`.
    pub fn word(shifts: &[i64], c: TPoly) -> Self {
        let mut w = shifts.to_vec();
        w.sort_unstable();
        let mut x = Self::zero();
        x.add_term(w, c);
        x
    }

    fn add_term(&mut self, word: Vec<i64>, c: TPoly) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(word.clone()).or_default();
        *e = &*e + &c;
        if e.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i64>, &TPoly)> {
        self.terms.iter()
    }

    pub fn coeff(&self, word: &[i64]) -> TPoly {
        self.terms.get(word).cloned().unwrap_or_default()
    }

    pub fn scale(&self, c: &TPoly) -> Self {
        let mut out = Self::zero();
        for (w, k) in &self.terms {
            out.add_term(w.clone(), k * c);
        }
        out
    }

    /// Product of generators taken in the given (not necessarily sorted) order.
    pub fn ordered_product(shifts: &[i64]) -> Self {
        normal_order(shifts, &mut HashMap::new())
    }

    pub fn star(&self, other: &Self) -> Self {
        let mut memo = HashMap::new();
        let mut out = Self::zero();
        for (w1, c1) in &self.terms {
            for (w2, c2) in &other.terms {
                let mut w = w1.clone();
                w.extend_from_slice(w2);
                let c = c1 * c2;
                for (nw, nc) in &normal_order(&w, &mut memo).terms {
                    out.add_term(nw.clone(), nc * &c);
                }
            }
        }
        out
    }

    /// The `t`-inverting anti-automorphism fixing every generator.
    pub fn bar(&self) -> Self {
        let mut memo = HashMap::new();
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            let rev: Vec<i64> = w.iter().rev().copied().collect();
            let cb = c.bar();
            for (nw, nc) in &normal_order(&rev, &mut memo).terms {
                out.add_term(nw.clone(), nc * &cb);
            }
        }
        out
    }

    pub fn is_bar_invariant(&self) -> bool {
        self.bar() == *self
    }

    /// Image at `t = 1`: words become products of fundamental q-characters.
    pub fn at_t_one(&self) -> YLaurent {
        let mut out = YLaurent::zero();
        for (w, c) in &self.terms {
            let k = c.at_one();
            if k.is_zero() {
                continue;
            }
            let prod = w.iter().fold(YLaurent::one(), |acc, &r| &acc * &sl2_string_character(r, 1).poly);
            out = &out + &prod.scale(&k);
        }
        out
    }

    /// `{"terms": [{"word": [...], "coef": [[half, c], ...]}, ...]}`.
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> =
            self.terms.iter().map(|(w, c)| json!({"word": w, "coef": c.to_json()})).collect();
        json!({ "terms": terms })
    }
}

impl Add for &KtElement {
    type Output = KtElement;
    fn add(self, rhs: &KtElement) -> KtElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }
}

impl Sub for &KtElement {
    type Output = KtElement;
    fn sub(self, rhs: &KtElement) -> KtElement {
        self + &rhs.scale(&TPoly::term(0, -1))
    }
}

impl fmt::Display for KtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                if !c.is_one_poly() {
                    write!(f, "({c})")?;
                }
                for r in w {
                    write!(f, "g_{r}")?;
                }
            }
        }
        Ok(())
    }
}

impl TPoly {
    fn is_one_poly(&self) -> bool {
        *self == TPoly::one()
    }
}

/// Rewrites a word to normal order. At the first descent `a > b`,
/// `g_a g_b = t^{−𝒩(a−b)} g_b g_a − δ_{a−b,2} t^{−𝒩(2)}(1 − t^{−2})`.
fn normal_order(word: &[i64], memo: &mut HashMap<Vec<i64>, KtElement>) -> KtElement {
    let Some(p) = word.windows(2).position(|w| w[0] > w[1]) else {
        return KtElement::word(word, TPoly::one());
    };
    if let Some(x) = memo.get(word) {
        return x.clone();
    }
    let (a, b) = (word[p], word[p + 1]);
    let factor = TPoly::t_half(-2 * n_exponent(a - b));
    let mut swapped = word.to_vec();
    swapped.swap(p, p + 1);
    let mut out = normal_order(&swapped, memo).scale(&factor);
    if a - b == 2 {
        let mut removed = word.to_vec();
        removed.drain(p..p + 2);
        let corr = &factor * &TPoly::from_pairs(&[(0, 1), (-4, -1)]);
        out = &out - &normal_order(&removed, memo).scale(&corr);
    }
    memo.insert(word.to_vec(), out.clone());
    out
}

/// Multisets obtained by removing one pair `{s, s+2}`; the covering
/// relations of the Nakajima order on sl2 dominant monomials.
pub fn lower_neighbours(shifts: &[i64]) -> Vec<Vec<i64>> {
    let mut s = shifts.to_vec();
    s.sort_unstable();
    let mut out: Vec<Vec<i64>> = Vec::new();
    for i in 0..s.len() {
        if let Some(j) = s.iter().position(|&x| x == s[i] + 2) {
            let mut rest = s.clone();
            rest.remove(j.max(i));
            rest.remove(j.min(i));
            if !out.contains(&rest) {
                out.push(rest);
            }
        }
    }
    out.sort();
    out
}

/// Caches canonical classes by multiset.
#[derive(Default)]
pub struct CanonicalBasis {
    cache: HashMap<Vec<i64>, KtElement>,
}

impl CanonicalBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// `t^β g_{r_n} * … * g_{r_1}` (shifts taken in decreasing order), with
    /// `β` making the coefficient `c` of the top word satisfy `bar` of the
    /// top term equal to itself.
    pub fn standard_class(&self, shifts: &[i64]) -> KtElement {
        let mut w = shifts.to_vec();
        w.sort_unstable_by(|a, b| b.cmp(a));
        let x = KtElement::ordered_product(&w);
        let mut top = w.clone();
        top.sort_unstable();
        // bar maps c·word(top) to bar(c)·t^{γ}·word(top) + lower; with
        // c = t^{h/2} this is symmetric when h = γ/2.
        let bar_top = KtElement::word(&top, TPoly::one()).bar().coeff(&top);
        let (gamma, _) = bar_top.as_term().expect("top coefficient of a bar image is a power of t");
        let (h, _) = x.coeff(&top).as_term().expect("top coefficient of a product is a power of t");
        x.scale(&TPoly::t_half(gamma / 2 - h))
    }

    /// The bar-invariant class `L` with `L − standard_class` a combination
    /// of lower canonical classes with coefficients in `t^{−1/2}ℤ[t^{−1/2}]`.
    pub fn canonical(&mut self, shifts: &[i64]) -> KtElement {
        let mut key = shifts.to_vec();
        key.sort_unstable();
        if let Some(x) = self.cache.get(&key) {
            return x.clone();
        }
        let e = self.standard_class(&key);
        let diff = &e.bar() - &e;
        let expansion = self.expand(&diff, &key).expect("lower terms are unitriangular");
        let mut l = e;
        for (w, a) in expansion {
            // bar(E) = E + Σ a_w L_w and L = E + Σ p_w L_w force p − bar(p) = a.
            let p = a.negative_part();
            if !p.is_zero() {
                l = &l + &self.canonical(&w).scale(&p);
            }
        }
        self.cache.insert(key, l.clone());
        l
    }

    /// Coefficients of `x` in the canonical basis, peeling longest words
    /// first. `top` is excluded from recursion to avoid cycles.
    fn expand(&mut self, x: &KtElement, top: &[i64]) -> Result<BTreeMap<Vec<i64>, TPoly>, QGrothError> {
        let mut rest = x.clone();
        let mut out = BTreeMap::new();
        while let Some(w) = rest.terms.keys().max_by_key(|w| (w.len(), (*w).clone())).cloned() {
            if w.as_slice() == top {
                return Err(QGrothError::NotUnitriangular(format!("word {w:?} equals the top word")));
            }
            let l = self.canonical(&w);
            let lead = l.coeff(&w);
            let Some((h, c)) = lead.as_term() else {
                return Err(QGrothError::NotUnitriangular(lead.to_string()));
            };
            if !c.is_one() {
                return Err(QGrothError::NotUnitriangular(lead.to_string()));
            }
            let k = rest.coeff(&w).shift(-h);
            rest = &rest - &l.scale(&k);
            out.insert(w, k);
        }
        Ok(out)
    }

    /// Standard class written in the canonical basis (the analogues of
    /// Kazhdan–Lusztig polynomials), including the top term.
    pub fn kl_polynomials(&mut self, shifts: &[i64]) -> Result<BTreeMap<Vec<i64>, TPoly>, QGrothError> {
        let mut key = shifts.to_vec();
        key.sort_unstable();
        let l = self.canonical(&key);
        let e = self.standard_class(&key);
        let mut out = self.expand(&(&e - &l), &key)?;
        out.insert(key, TPoly::one());
        Ok(out)
    }
}

/// Canonical class of the simple module with the given highest shifts.
pub fn canonical_class(shifts: &[i64]) -> Result<KtElement, QGrothError> {
    if shifts.is_empty() {
        return Err(QGrothError::EmptyMultiset);
    }
    Ok(CanonicalBasis::new().canonical(shifts))
}

/// Checks `π(L) = χ(L)` against the q-character of the simple module.
pub fn evaluation_matches(shifts: &[i64], l: &KtElement) -> bool {
    l.at_t_one() == sl2_simple_character(shifts).poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(r: i64) -> KtElement {
        KtElement::generator(r)
    }

    #[test]
    fn gap_two_relation() {
        let lhs = g(0).star(&g(2));
        let rhs = &g(2).star(&g(0)).scale(&TPoly::t_half(-4)) + &KtElement::scalar(TPoly::from_pairs(&[(0, 1), (-4, -1)]));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn gap_four_relation() {
        assert_eq!(g(0).star(&g(4)), g(4).star(&g(0)).scale(&TPoly::t_half(4)));
    }

    #[test]
    fn pair_class() {
        let l = canonical_class(&[0, 2]).unwrap();
        let want = &KtElement::word(&[0, 2], TPoly::t_half(2)) - &KtElement::scalar(TPoly::t_half(2));
        assert_eq!(l, want);
        assert!(l.is_bar_invariant());
        assert!(evaluation_matches(&[0, 2], &l));
    }

    #[test]
    fn display() {
        let l = canonical_class(&[0, 2]).unwrap();
        assert_eq!(l.to_string(), "(t)g_0g_2 + (-t)");
        assert_eq!(TPoly::from_pairs(&[(1, 2), (-3, -1)]).to_string(), "2t^{1/2} - t^{-3/2}");
    }
}
