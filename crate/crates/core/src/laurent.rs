//! Sparse Laurent monomials and polynomials with arbitrary-precision integer
//! coefficients over an ordered variable type.
//!
//! Both containers are backed by `BTreeMap`, so iteration order, equality and
//! serialization are canonical.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A Laurent monomial: a finite map from variables to nonzero exponents.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial<V: Ord> {
    exps: BTreeMap<V, i64>,
}

impl<V: Ord> Default for Monomial<V> {
    fn default() -> Self {
        Monomial { exps: BTreeMap::new() }
    }
}

impl<V: Ord + Clone> Monomial<V> {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn var(v: V) -> Self {
        Self::var_pow(v, 1)
    }

    pub fn var_pow(v: V, e: i64) -> Self {
        let mut m = Self::one();
        m.mul_var(v, e);
        m
    }

    /// Builds a monomial from `(variable, exponent)` pairs, merging repeats.
    pub fn from_pairs<I: IntoIterator<Item = (V, i64)>>(pairs: I) -> Self {
        let mut m = Self::one();
        for (v, e) in pairs {
            m.mul_var(v, e);
        }
        m
    }

    /// Multiplies in place by `v^e`.
    pub fn mul_var(&mut self, v: V, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.exps.entry(v.clone()).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.exps.remove(&v);
        }
    }

    pub fn exp(&self, v: &V) -> i64 {
        self.exps.get(v).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&V, i64)> {
        self.exps.iter().map(|(v, e)| (v, *e))
    }

    pub fn vars(&self) -> impl Iterator<Item = &V> {
        self.exps.keys()
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// True iff every exponent is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.exps.values().all(|&e| e >= 0)
    }

    pub fn total_degree(&self) -> i64 {
        self.exps.values().sum()
    }

    pub fn inv(&self) -> Self {
        Monomial { exps: self.exps.iter().map(|(v, e)| (v.clone(), -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        Monomial { exps: self.exps.iter().map(|(v, e)| (v.clone(), e * k)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, e) in other.iter() {
            out.mul_var(v.clone(), e);
        }
        out
    }

    pub fn div(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (v, e) in other.iter() {
            out.mul_var(v.clone(), -e);
        }
        out
    }

    /// Keeps only the variables accepted by `keep`.
    pub fn restrict<F: Fn(&V) -> bool>(&self, keep: F) -> Self {
        Monomial { exps: self.exps.iter().filter(|(v, _)| keep(v)).map(|(v, e)| (v.clone(), *e)).collect() }
    }

    /// Renames variables; exponents of colliding images are added.
    pub fn map_vars<W: Ord + Clone, F: Fn(&V) -> W>(&self, f: F) -> Monomial<W> {
        Monomial::from_pairs(self.iter().map(|(v, e)| (f(v), e)))
    }

    /// `self` divides `other` as polynomial monomials (all exponent gaps ≥ 0).
    fn divides(&self, other: &Self) -> bool {
        self.exps.iter().all(|(v, e)| other.exp(v) >= *e)
    }

    /// Pure lexicographic comparison: the smaller variable decides, larger
    /// exponent wins. A monomial order on nonnegative exponent vectors.
    fn lex_cmp(&self, other: &Self) -> Ordering {
        let mut a = self.exps.iter().peekable();
        let mut b = other.exps.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some((_, ea)), None) => return ea.cmp(&&0),
                (None, Some((_, eb))) => return 0.cmp(*eb),
                (Some((va, ea)), Some((vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => return ea.cmp(&&0),
                    Ordering::Greater => return 0.cmp(*eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(eb);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Display for Monomial<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exps.is_empty() {
            return write!(f, "1");
        }
        for (v, e) in &self.exps {
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{{{e}}}")?;
            }
        }
        Ok(())
    }
}

/// A Laurent polynomial: a finite map from monomials to nonzero integers.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Laurent<V: Ord> {
    terms: BTreeMap<Monomial<V>, BigInt>,
}

impl<V: Ord> Default for Laurent<V> {
    fn default() -> Self {
        Laurent { terms: BTreeMap::new() }
    }
}

impl<V: Ord + Clone> Laurent<V> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Monomial::one())
    }

    pub fn constant<C: Into<BigInt>>(c: C) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn var(v: V) -> Self {
        Self::monomial(Monomial::var(v))
    }

    pub fn monomial(m: Monomial<V>) -> Self {
        Self::term(m, 1)
    }

    pub fn term<C: Into<BigInt>>(m: Monomial<V>, c: C) -> Self {
        let mut out = Self::zero();
        out.add_term(m, c.into());
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial<V>, BigInt)>>(it: I) -> Self {
        let mut out = Self::zero();
        for (m, c) in it {
            out.add_term(m, c);
        }
        out
    }

    /// Adds `c·m` in place, dropping the entry if it cancels.
    pub fn add_term(&mut self, m: Monomial<V>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(slot) => {
                *slot += c;
                if slot.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()).is_some_and(|c| c.is_one())
    }

    /// Number of distinct monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial<V>, &BigInt)> {
        self.terms.iter()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial<V>> {
        self.terms.keys()
    }

    pub fn coeff(&self, m: &Monomial<V>) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Sum of all coefficients (the value at every variable equal to 1).
    pub fn coefficient_sum(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// The single monomial of a one-term polynomial with coefficient one.
    pub fn as_monomial(&self) -> Option<&Monomial<V>> {
        match self.terms.iter().next() {
            Some((m, c)) if self.terms.len() == 1 && c.is_one() => Some(m),
            _ => None,
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Laurent { terms: self.terms.iter().map(|(m, k)| (m.clone(), k * c)).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial<V>) -> Self {
        Laurent { terms: self.terms.iter().map(|(k, c)| (k.mul(m), c.clone())).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Ring morphism defined on variables.
    pub fn substitute<W: Ord + Clone, F: Fn(&V) -> Laurent<W>>(&self, f: F) -> Laurent<W> {
        let mut cache: BTreeMap<V, Laurent<W>> = BTreeMap::new();
        let mut out = Laurent::zero();
        for (m, c) in &self.terms {
            let mut acc = Laurent::constant(c.clone());
            for (v, e) in m.iter() {
                let img = cache.entry(v.clone()).or_insert_with(|| f(v)).clone();
                if e >= 0 {
                    acc = &acc * &img.pow(e as u32);
                } else {
                    let inv = img
                        .as_monomial()
                        .map(|mm| Laurent::monomial(mm.inv()))
                        .expect("negative exponent requires a monomial image");
                    acc = &acc * &inv.pow((-e) as u32);
                }
            }
            out += &acc;
        }
        out
    }

    /// Renames variables monomial-wise.
    pub fn map_vars<W: Ord + Clone, F: Fn(&V) -> W>(&self, f: F) -> Laurent<W> {
        Laurent::from_terms(self.terms.iter().map(|(m, c)| (m.map_vars(&f), c.clone())))
    }

    /// Evaluates with a numeric assignment of every variable.
    pub fn eval<T, F>(&self, f: F) -> T
    where
        T: Clone + Zero + One + std::ops::Mul<Output = T> + std::ops::Div<Output = T> + From<f64>,
        F: Fn(&V) -> T,
    {
        let mut total = T::zero();
        for (m, c) in &self.terms {
            let mut acc = T::from(bigint_to_f64(c));
            for (v, e) in m.iter() {
                let x = f(v);
                for _ in 0..e.abs() {
                    acc = if e > 0 { acc * x.clone() } else { acc / x.clone() };
                }
            }
            total = total + acc;
        }
        total
    }

    /// Splits `self = m · p` where `p` has nonnegative exponents and no
    /// monomial factor.
    fn split_content(&self) -> (Monomial<V>, Self) {
        let vars: std::collections::BTreeSet<V> =
            self.terms.keys().flat_map(|m| m.vars().cloned()).collect();
        let content = Monomial::from_pairs(
            vars.into_iter()
                .map(|v| {
                    let lo = self.terms.keys().map(|m| m.exp(&v)).min().unwrap_or(0);
                    (v, lo)
                }),
        );
        (content.clone(), self.mul_monomial(&content.inv()))
    }

    fn leading(&self) -> Option<(&Monomial<V>, &BigInt)> {
        self.terms.iter().max_by(|a, b| a.0.lex_cmp(b.0))
    }

    /// Exact quotient `self / d` if it exists in the Laurent ring.
    ///
    /// Both sides are reduced to polynomials without monomial factors and
    /// divided by lexicographic long division over the integers; any
    /// non-divisible leading term proves the quotient is not Laurent.
    pub fn try_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (ma, a) = self.split_content();
        let (mb, b) = d.split_content();
        let (lb_m, lb_c) = b.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = a;
        let mut quot = Self::zero();
        while let Some((lr_m, lr_c)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            if !lb_m.divides(&lr_m) || !lr_c.is_multiple_of(&lb_c) {
                return None;
            }
            let t = Self::term(lr_m.div(&lb_m), lr_c / &lb_c);
            rem -= &(&t * &b);
            quot += &t;
        }
        Some(quot.mul_monomial(&ma.div(&mb)))
    }

    /// Greatest common divisor of the coefficients, with the sign of the
    /// leading (largest) monomial's coefficient.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        match self.terms.iter().next_back() {
            Some((_, c)) if c.is_negative() => -g,
            _ => g,
        }
    }
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(f64::NAN)
}

impl<'a, V: Ord + Clone> Add<&'a Laurent<V>> for &'a Laurent<V> {
    type Output = Laurent<V>;
    fn add(self, rhs: &Laurent<V>) -> Laurent<V> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<'a, V: Ord + Clone> Sub<&'a Laurent<V>> for &'a Laurent<V> {
    type Output = Laurent<V>;
    fn sub(self, rhs: &Laurent<V>) -> Laurent<V> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<'a, V: Ord + Clone> Mul<&'a Laurent<V>> for &'a Laurent<V> {
    type Output = Laurent<V>;
    fn mul(self, rhs: &Laurent<V>) -> Laurent<V> {
        let mut out = Laurent::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl<V: Ord + Clone> Add for Laurent<V> {
    type Output = Laurent<V>;
    fn add(mut self, rhs: Laurent<V>) -> Laurent<V> {
        self += &rhs;
        self
    }
}

impl<V: Ord + Clone> Sub for Laurent<V> {
    type Output = Laurent<V>;
    fn sub(mut self, rhs: Laurent<V>) -> Laurent<V> {
        self -= &rhs;
        self
    }
}

impl<V: Ord + Clone> Mul for Laurent<V> {
    type Output = Laurent<V>;
    fn mul(self, rhs: Laurent<V>) -> Laurent<V> {
        &self * &rhs
    }
}

impl<V: Ord + Clone> Neg for Laurent<V> {
    type Output = Laurent<V>;
    fn neg(self) -> Laurent<V> {
        Laurent { terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect() }
    }
}

impl<V: Ord + Clone> AddAssign<&Laurent<V>> for Laurent<V> {
    fn add_assign(&mut self, rhs: &Laurent<V>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl<V: Ord + Clone> SubAssign<&Laurent<V>> for Laurent<V> {
    fn sub_assign(&mut self, rhs: &Laurent<V>) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl<V: Ord + Clone + fmt::Display> fmt::Display for Laurent<V> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    type P = Laurent<u8>;

    fn x(i: u8) -> P {
        P::var(i)
    }

    #[test]
    fn exact_division_recovers_factor() {
        let a = &(&x(0) + &P::one()) * &(&x(1) - &x(0));
        let q = a.try_div(&(&x(1) - &x(0))).unwrap();
        assert_eq!(q, &x(0) + &P::one());
    }

    #[test]
    fn division_by_monomial_is_laurent() {
        let a = &x(0) + &P::one();
        let q = a.try_div(&x(1)).unwrap();
        assert_eq!(&q * &x(1), a);
    }

    #[test]
    fn non_divisible_is_rejected() {
        assert!((&x(0) + &P::one()).try_div(&(&x(1) + &P::one())).is_none());
        assert!(P::constant(3).try_div(&P::constant(2)).is_none());
    }

    #[test]
    fn content_split_handles_mixed_signs() {
        let a = P::from_terms([
            (Monomial::from_pairs([(0, -2), (1, 1)]), BigInt::from(1)),
            (Monomial::from_pairs([(1, -1)]), BigInt::from(1)),
        ]);
        let (m, p) = a.split_content();
        assert_eq!(m, Monomial::from_pairs([(0, -2), (1, -1)]));
        assert!(p.monomials().all(|mm| mm.is_nonnegative()));
    }

    #[test]
    fn display_is_canonical() {
        let a = &(&x(0) * &x(0)) - &P::constant(2);
        assert_eq!(a.to_string(), "-2 + 0^{2}");
    }
}
