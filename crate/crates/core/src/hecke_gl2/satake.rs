use super::finite_rep::{FiniteRep, InvariantKind};
use super::kernel::{build_kernel, convolve, HeckeKernel};
use super::padic::{p_power, PAdicMatrix};
use super::HeckeError;
use crate::catalog::builtin;
use crate::satake_param::MonoidAlgebraElement;
use crate::scalars::FiniteField;
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use serde_json::Value;
use std::collections::{BTreeMap, BTreeSet};

/// `Σ_{c mod Z_p, v(c) ≥ −depth} φ(t ū_c)` restricted to the lowest-weight
/// line of the source, as a scalar on the lowest-weight line of the target.
fn satake_coefficient(phi: &HeckeKernel, t: (i64, i64), depth: u32) -> u32 {
    let p = phi.p();
    let tm = PAdicMatrix::torus(p, t.0, t.1);
    let (i, j) = (phi.target().lowest_index(), phi.source().lowest_index());
    let scale = p_power(p, -(depth as i64));
    let mut acc = 0u64;
    for c in 0..(p as u64).pow(depth) {
        let u = PAdicMatrix::lower_unipotent(p, BigRational::from_integer(BigInt::from(c)) * &scale);
        acc += phi.value_at(&tm.mul(&u)).get(i, j) as u64;
    }
    (acc % p as u64) as u32
}

fn check_lines(v: &FiniteRep) -> Result<(), HeckeError> {
    let inv = v.invariants(InvariantKind::LowerUnipotent);
    let mut line = vec![0; v.dim()];
    line[v.lowest_index()] = 1;
    if inv != vec![line] {
        return Err(HeckeError::RepMismatch);
    }
    Ok(())
}

/// Raw transform as `t ↦ coefficient` over every torus point of the right
/// determinant, with the enumeration depth and its one-step widening.
fn transform_terms(phi: &HeckeKernel) -> Result<BTreeMap<(i64, i64), u32>, HeckeError> {
    check_lines(&phi.source())?;
    check_lines(&phi.target())?;
    let mut points = BTreeSet::new();
    let mut depth = 0;
    for &(a, b) in phi.components().keys() {
        depth = depth.max((a - b) as u32);
        for e in b..=a {
            points.insert((e, a + b - e));
        }
    }
    let mut out = BTreeMap::new();
    for t in points {
        let c = satake_coefficient(phi, t, depth);
        if satake_coefficient(phi, t, depth + 1) != c {
            return Err(HeckeError::SatakeUnstable(t));
        }
        if c != 0 {
            out.insert(t, c);
        }
    }
    Ok(out)
}

/// `S(φ)(t) = Σ_{u ∈ Ū/Ū(O)} φ(tu)|_{V₁^{Ū(F_p)}}`, in the monoid algebra
/// of dominant cocharacters of `GL₂` over `F_p`.
pub fn satake_transform(phi: &HeckeKernel) -> Result<MonoidAlgebraElement, HeckeError> {
    let terms = transform_terms(phi)?;
    let field = FiniteField::new(phi.p(), 1)?;
    let gl2 = builtin("GL2").expect("GL2 is in the catalog");
    if let Some(t) = terms.keys().find(|t| t.0 < t.1) {
        return Err(HeckeError::NotDominant(*t));
    }
    Ok(MonoidAlgebraElement::from_terms(
        &gl2,
        &field,
        terms.into_iter().map(|(t, c)| (vec![t.0, t.1], field.from_int(c as i64))),
    )?)
}

#[derive(Clone, Debug, Serialize)]
pub struct ChangingWeightReport {
    pub p: u32,
    pub m: u32,
    pub source: FiniteRep,
    pub companion: FiniteRep,
    pub support: Vec<[i64; 2]>,
    pub c: u32,
    pub transform: Value,
    pub pass: bool,
}

/// For `V₁ = det^m` and its companion `V₂ = Sym^{p−1} ⊗ det^m` (lowest weight
/// shifted by `−(p−1)ω_α`), computes `φ₁₂ ∗ φ₂₁ ∈ H(V₁)` for the
/// lowest-weight-normalized cross kernels on `K diag(p,1) K` and checks that
/// its transform is `c·(τ_(2,0) − τ_(1,1))` with `c ≠ 0` and its support is
/// exactly `K diag(p², 1) K`.
pub fn verify_changing_weight_identity(p: u32, m: i64) -> Result<ChangingWeightReport, HeckeError> {
    let v1 = FiniteRep::new(p, 0, m)?;
    let v2 = FiniteRep::new(p, p - 1, m)?;
    let phi21 = build_kernel(v1, v2, (1, 0))?;
    let phi12 = build_kernel(v2, v1, (1, 0))?;
    let prod = convolve(&phi12, &phi21)?;
    let s = satake_transform(&prod)?;
    let f = s.field().clone();
    let c = s.coefficient(&[2, 0]);
    let shape = c != f.zero() && s.terms().len() == 2 && s.coefficient(&[1, 1]) == f.neg(c);
    let support: Vec<[i64; 2]> = prod.support().into_iter().map(|(a, b)| [a, b]).collect();
    let report = ChangingWeightReport {
        p,
        m: v1.m,
        source: v1,
        companion: v2,
        pass: shape && support == vec![[2, 0]],
        support,
        c: f.coeffs(c)[0],
        transform: s.to_json(),
    };
    if !report.pass {
        return Err(HeckeError::IdentityFailed(Box::new(serde_json::to_value(&report).unwrap())));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke_gl2::kernel::t_lambda;

    fn coeffs(s: &MonoidAlgebraElement) -> Vec<(Vec<i64>, u32)> {
        s.terms().iter().map(|(k, v)| (k.clone(), s.field().coeffs(*v)[0])).collect()
    }

    #[test]
    fn trivial_rep_transforms() {
        for p in [2, 3, 5] {
            let triv = FiniteRep::trivial(p);
            let s = satake_transform(&t_lambda(triv, (1, 0)).unwrap()).unwrap();
            assert_eq!(coeffs(&s), vec![(vec![1, 0], 1)]);
            let s = satake_transform(&t_lambda(triv, (1, 1)).unwrap()).unwrap();
            assert_eq!(coeffs(&s), vec![(vec![1, 1], 1)]);
            let s = satake_transform(&t_lambda(triv, (2, 0)).unwrap()).unwrap();
            assert_eq!(coeffs(&s), vec![(vec![1, 1], p - 1), (vec![2, 0], 1)]);
            assert!(satake_transform(&HeckeKernel::zero(triv, triv)).unwrap().is_zero());
        }
    }

    #[test]
    fn changing_weight_identity() {
        for p in [2, 3, 5] {
            for m in 0..2 {
                let r = verify_changing_weight_identity(p, m).unwrap();
                assert!(r.pass && r.c != 0);
            }
        }
    }
}
