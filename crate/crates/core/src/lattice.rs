//! Root monomials, the Nakajima order, and the exact linear solver used to
//! produce order certificates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cartan::{CartanData, CartanError};
use crate::laurent::Monomial;
use crate::vars::{shift_range, Certificate, NodeVar, Y, YMonomial};

/// The root monomial `A_{i,q^r}`.
pub fn root_monomial(cd: &CartanData, i: usize, r: i64) -> Result<YMonomial, CartanError> {
    cd.check_node(i)?;
    Ok(root_monomial_unchecked(cd, i, r))
}

pub(crate) fn root_monomial_unchecked(cd: &CartanData, i: usize, r: i64) -> YMonomial {
    let di = cd.di(i);
    let mut m = Monomial::from_pairs([(Y::new(i, r - di), 1), (Y::new(i, r + di), 1)]);
    for j in cd.nodes().filter(|&j| j != i) {
        let offsets: &[i64] = match cd.cij(j, i) {
            -1 => &[0],
            -2 => &[-1, 1],
            -3 => &[-2, 0, 2],
            _ => &[],
        };
        for &o in offsets {
            m.mul_var(Y::new(j, r + o), -1);
        }
    }
    m
}

/// Certificate `c ≥ 0` with `m1 = m2·∏ A_{j,b}^{-c_{j,b}}`, if one exists.
pub fn nakajima_leq(cd: &CartanData, m1: &YMonomial, m2: &YMonomial) -> Option<Certificate> {
    let target = m2.div(m1);
    let Some((lo, hi)) = shift_range(&target) else {
        return Some(Certificate::default());
    };
    let gens: Vec<((usize, i64), YMonomial)> = cd
        .nodes()
        .flat_map(|j| (lo - 3..=hi + 3).map(move |b| (j, b)))
        .map(|(j, b)| ((j, b), root_monomial_unchecked(cd, j, b)))
        .collect();
    nonnegative_combination(&gens, &target)
}

/// Solves `target = ∏ gen^{c}` over the integers and keeps the solution only
/// if it is nonnegative. The generators are assumed independent, which makes
/// the solution unique.
pub fn nonnegative_combination<V: NodeVar>(
    gens: &[((usize, i64), Monomial<V>)],
    target: &Monomial<V>,
) -> Option<Certificate> {
    let cols: Vec<&Monomial<V>> = gens.iter().map(|g| &g.1).collect();
    let sol = integer_combination(&cols, target)?;
    let mut entries = Vec::new();
    for (k, c) in sol.into_iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        if c.is_negative() {
            return None;
        }
        entries.push((gens[k].0 .0, gens[k].0 .1, c.to_i64()?));
    }
    entries.sort();
    Some(Certificate { entries })
}

/// Integer vector `c` with `target = ∏ cols[k]^{c_k}`, found by exact
/// Gaussian elimination over the rationals. Free columns are set to zero.
pub fn integer_combination<V: Ord + Clone>(cols: &[&Monomial<V>], target: &Monomial<V>) -> Option<Vec<BigInt>> {
    let mut rows: BTreeMap<V, usize> = BTreeMap::new();
    for m in cols.iter().copied().chain(std::iter::once(target)) {
        for v in m.vars() {
            let n = rows.len();
            rows.entry(v.clone()).or_insert(n);
        }
    }
    let mut a = vec![vec![0i64; cols.len()]; rows.len()];
    let mut b = vec![0i64; rows.len()];
    for (k, m) in cols.iter().enumerate() {
        for (v, e) in m.iter() {
            a[rows[v]][k] = e;
        }
    }
    for (v, e) in target.iter() {
        b[rows[v]] = e;
    }
    solve_rational(&a, &b)?
        .into_iter()
        .map(|x| x.is_integer().then(|| x.to_integer()))
        .collect()
}

/// A rational solution of `a·x = b` (free unknowns set to zero), if the
/// system is consistent.
pub fn solve_rational(a: &[Vec<i64>], b: &[i64]) -> Option<Vec<BigRational>> {
    let nr = a.len();
    let nc = a.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigRational>> = a
        .iter()
        .zip(b)
        .map(|(row, &rhs)| row.iter().chain(std::iter::once(&rhs)).map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();

    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = BigRational::one() / &m[r][c];
        for x in m[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..nr {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for k in c..=nc {
                    let delta = &f * &m[r][k];
                    m[i][k] -= delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if m[r..].iter().any(|row| !row[nc].is_zero()) {
        return None;
    }
    let mut sol = vec![BigRational::zero(); nc];
    for (row, &c) in pivots.iter().enumerate() {
        sol[c] = m[row][nc].clone();
    }
    Some(sol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vars::{mono, y};

    #[test]
    fn root_monomials() {
        let a1 = CartanData::from_label("A1").unwrap();
        assert_eq!(root_monomial(&a1, 1, 0).unwrap(), mono(&[(1, -1, 1), (1, 1, 1)]));
        let a2 = CartanData::from_label("A2").unwrap();
        assert_eq!(root_monomial(&a2, 1, 0).unwrap(), mono(&[(1, -1, 1), (1, 1, 1), (2, 0, -1)]));
        let b2 = CartanData::from_label("B2").unwrap();
        assert_eq!(root_monomial(&b2, 1, 0).unwrap(), mono(&[(1, -2, 1), (1, 2, 1), (2, -1, -1), (2, 1, -1)]));
        assert_eq!(root_monomial(&b2, 2, 0).unwrap(), mono(&[(2, -1, 1), (2, 1, 1), (1, 0, -1)]));
        assert!(root_monomial(&b2, 3, 0).is_err());
    }

    #[test]
    fn sl2_order() {
        let a1 = CartanData::from_label("A1").unwrap();
        let low = y(1, 2).inv();
        let cert = nakajima_leq(&a1, &low, &y(1, 0)).unwrap();
        assert_eq!(cert.entries, vec![(1, 1, 1)]);
        assert!(nakajima_leq(&a1, &y(1, 0), &low).is_none());
        assert!(nakajima_leq(&a1, &y(1, 0), &y(1, 0)).unwrap().is_zero());
        assert!(nakajima_leq(&a1, &y(1, 1), &y(1, 0)).is_none());
    }
}
