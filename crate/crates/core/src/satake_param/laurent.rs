//! Laurent polynomials over a finite field and a bounded exhaustive search
//! for nontrivial factorizations, used as an independent check of the
//! coroot irreducibility criterion.

use super::SatakeError;
use crate::scalars::{FieldElement, FiniteField};
use std::collections::BTreeMap;

/// Largest number of candidate factors the search will visit.
pub const MAX_CANDIDATES: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentPolynomial {
    field: FiniteField,
    n: usize,
    terms: BTreeMap<Vec<i64>, FieldElement>,
}

impl LaurentPolynomial {
    pub fn zero(field: &FiniteField, n: usize) -> Self {
        LaurentPolynomial { field: field.clone(), n, terms: BTreeMap::new() }
    }

    pub fn from_terms(field: &FiniteField, n: usize, terms: impl IntoIterator<Item = (Vec<i64>, FieldElement)>) -> Self {
        let mut p = Self::zero(field, n);
        for (k, v) in terms {
            assert_eq!(k.len(), n);
            p.add_term(k, v);
        }
        p
    }

    /// `τ_v − 1`.
    pub fn tau_minus_one(field: &FiniteField, v: &[i64]) -> Self {
        let n = v.len();
        Self::from_terms(field, n, [(v.to_vec(), field.one()), (vec![0; n], field.neg(field.one()))])
    }

    fn add_term(&mut self, k: Vec<i64>, v: FieldElement) {
        let f = &self.field;
        let s = f.add(self.terms.get(&k).copied().unwrap_or(f.zero()), v);
        if s == f.zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, FieldElement> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Units of the Laurent ring are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn multiply(&self, o: &Self) -> Self {
        let f = &self.field;
        let mut out = Self::zero(f, self.n);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                out.add_term(a.iter().zip(b).map(|(s, t)| s + t).collect(), f.mul(*x, *y));
            }
        }
        out
    }

    pub fn shift(&self, by: &[i64]) -> Self {
        Self::from_terms(
            &self.field,
            self.n,
            self.terms.iter().map(|(k, v)| (k.iter().zip(by).map(|(a, b)| a + b).collect(), *v)),
        )
    }

    /// Coordinatewise minimum exponent.
    pub fn min_exponents(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.terms.keys().map(|k| k[i]).min().unwrap_or(0)).collect()
    }

    pub fn max_exponents(&self) -> Vec<i64> {
        (0..self.n).map(|i| self.terms.keys().map(|k| k[i]).max().unwrap_or(0)).collect()
    }

    /// Exact quotient in the polynomial ring (nonnegative exponents), by
    /// lex-order division; `None` if the division leaves a remainder.
    fn exact_div(&self, d: &Self) -> Option<Self> {
        let f = &self.field;
        let (lt_d, lc_d) = d.terms.iter().next_back().map(|(k, v)| (k.clone(), *v))?;
        let lc_inv = f.inv(lc_d).expect("nonzero");
        let mut r = self.clone();
        let mut quo = Self::zero(f, self.n);
        while let Some((lt_r, lc_r)) = r.terms.iter().next_back().map(|(k, v)| (k.clone(), *v)) {
            let diff: Vec<i64> = lt_r.iter().zip(&lt_d).map(|(a, b)| a - b).collect();
            if diff.iter().any(|&x| x < 0) {
                return None;
            }
            let c = f.mul(lc_r, lc_inv);
            quo.add_term(diff.clone(), c);
            let nc = f.neg(c);
            for (k, v) in &d.terms {
                r.add_term(k.iter().zip(&diff).map(|(a, b)| a + b).collect(), f.mul(nc, *v));
            }
        }
        Some(quo)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub left: LaurentPolynomial,
    pub right: LaurentPolynomial,
}

/// Searches for `h = f·g` with neither factor a unit. Factors are taken up to
/// monomial units, so `f` is normalized to have minimal exponent 0 in every
/// coordinate and leading coefficient 1, with exponents in
/// `[0, min(2·support_bound, deg_i h)]`.
pub fn brute_force_laurent_factor_search(
    h: &LaurentPolynomial,
    support_bound: u32,
) -> Result<Option<Factorization>, SatakeError> {
    if h.is_zero() || h.is_unit() {
        return Ok(None);
    }
    let f = &h.field;
    let lo = h.min_exponents();
    let neg_lo: Vec<i64> = lo.iter().map(|x| -x).collect();
    let h0 = h.shift(&neg_lo);
    let top: Vec<i64> = h0.max_exponents().iter().map(|&d| d.min(2 * support_bound as i64)).collect();
    let monomials = crate::report::grid_points(&top);
    let q = f.order() as u128;
    let count = q.checked_pow(monomials.len() as u32).unwrap_or(u128::MAX);
    if count > MAX_CANDIDATES {
        return Err(SatakeError::SearchSpaceTooLarge(count));
    }
    let m = monomials.len();
    let mut digits = vec![0u32; m];
    loop {
        // advance the odometer
        let mut i = 0;
        while i < m {
            digits[i] += 1;
            if digits[i] == f.order() {
                digits[i] = 0;
                i += 1;
            } else {
                break;
            }
        }
        if i == m {
            break;
        }
        let nonzero: Vec<usize> = (0..m).filter(|&k| digits[k] != 0).collect();
        if nonzero.len() < 2 {
            continue;
        }
        if digits[*nonzero.last().unwrap()] != 1 {
            continue;
        }
        let cand = LaurentPolynomial::from_terms(
            f,
            h.n,
            nonzero.iter().map(|&k| (monomials[k].clone(), FieldElement(digits[k]))),
        );
        if cand.min_exponents().iter().any(|&x| x != 0) {
            continue;
        }
        if let Some(g) = h0.exact_div(&cand) {
            if !g.is_unit() {
                return Ok(Some(Factorization { left: cand, right: g.shift(&lo) }));
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn t_squared_minus_one_factors() {
        let k = FiniteField::new(3, 1).unwrap();
        let h = LaurentPolynomial::tau_minus_one(&k, &[2]);
        let fac = brute_force_laurent_factor_search(&h, 2).unwrap().expect("reducible");
        assert_eq!(fac.left.multiply(&fac.right), h);
        let lin = LaurentPolynomial::tau_minus_one(&k, &[1]);
        assert_eq!(brute_force_laurent_factor_search(&lin, 2), Ok(None));
        let gl2 = LaurentPolynomial::tau_minus_one(&k, &[1, -1]);
        assert_eq!(brute_force_laurent_factor_search(&gl2, 2), Ok(None));
    }

    #[test]
    fn large_searches_are_refused() {
        let k = FiniteField::new(5, 1).unwrap();
        let h = LaurentPolynomial::tau_minus_one(&k, &[4, 4]);
        assert!(matches!(brute_force_laurent_factor_search(&h, 2), Err(SatakeError::SearchSpaceTooLarge(_))));
    }
}
