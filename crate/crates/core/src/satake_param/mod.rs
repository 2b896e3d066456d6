//! The monoid algebra on dominant cocharacters and its characters.
//!
//! An algebra homomorphism `χ` of the dominant monoid algebra is described by
//! a standard Levi `Π_M` and a homomorphism `χ_M` on
//! `X_{M,*,0} = {λ : <λ, Π_M> = 0}`: `χ(τ_λ) = χ_M(λ)` when `λ ∈ X_{M,*,0}`
//! and `0` otherwise. `χ_M` is stored by its values on the Hermite basis of
//! `X_{M,*,0}`.

pub mod laurent;

use crate::lattice;
use crate::report::box_points;
use crate::root_datum::{RootDatum, RootDatumError};
use crate::scalars::{FieldElement, FiniteField, ScalarError, TorusCharacterDatum};
use crate::subset::Subset;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum SatakeError {
    #[error("cocharacter {0:?} is not dominant")]
    NotDominant(Vec<i64>),
    #[error("parameter values must be nonzero")]
    ZeroValue,
    #[error("expected {expected} values on the lattice basis, got {found}")]
    WrongValueCount { expected: usize, found: usize },
    #[error("oracle is not consistent with an algebra homomorphism: {0}")]
    InconsistentOracle(String),
    #[error("sublattice does not contain the simple coroot {0}")]
    CorootNotContained(usize),
    #[error("search space of {0} candidates is too large")]
    SearchSpaceTooLarge(u128),
    #[error("operands live over different data or fields")]
    Mismatch,
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    RootDatum(#[from] RootDatumError),
}

/// Finite linear combination of `τ_λ` over dominant `λ`, with no stored
/// zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidAlgebraElement {
    field: FiniteField,
    rank: usize,
    terms: BTreeMap<Vec<i64>, FieldElement>,
}

impl MonoidAlgebraElement {
    pub fn zero(field: &FiniteField, rank: usize) -> Self {
        MonoidAlgebraElement { field: field.clone(), rank, terms: BTreeMap::new() }
    }

    pub fn one(field: &FiniteField, rank: usize) -> Self {
        let mut e = Self::zero(field, rank);
        e.terms.insert(vec![0; rank], field.one());
        e
    }

    /// `τ_λ`; `λ` must be dominant for `rd`.
    pub fn tau(rd: &RootDatum, field: &FiniteField, lambda: &[i64]) -> Result<Self, SatakeError> {
        Self::from_terms(rd, field, [(lambda.to_vec(), field.one())])
    }

    pub fn from_terms(
        rd: &RootDatum,
        field: &FiniteField,
        terms: impl IntoIterator<Item = (Vec<i64>, FieldElement)>,
    ) -> Result<Self, SatakeError> {
        let mut e = Self::zero(field, rd.rank());
        for (k, v) in terms {
            rd.check_len(&k)?;
            if !rd.is_dominant(&k) {
                return Err(SatakeError::NotDominant(k));
            }
            e.add_term(k, v);
        }
        Ok(e)
    }

    fn add_term(&mut self, k: Vec<i64>, v: FieldElement) {
        let f = &self.field;
        let cur = self.terms.get(&k).copied().unwrap_or(f.zero());
        let s = f.add(cur, v);
        if s == f.zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, s);
        }
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, FieldElement> {
        &self.terms
    }

    pub fn coefficient(&self, lambda: &[i64]) -> FieldElement {
        self.terms.get(lambda).copied().unwrap_or(self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support(&self) -> Vec<Vec<i64>> {
        self.terms.keys().cloned().collect()
    }

    fn compatible(&self, o: &Self) -> Result<(), SatakeError> {
        if self.field == o.field && self.rank == o.rank {
            Ok(())
        } else {
            Err(SatakeError::Mismatch)
        }
    }

    pub fn add(&self, o: &Self) -> Result<Self, SatakeError> {
        self.compatible(o)?;
        let mut out = self.clone();
        for (k, v) in &o.terms {
            out.add_term(k.clone(), *v);
        }
        Ok(out)
    }

    pub fn scale(&self, c: FieldElement) -> Self {
        let mut out = Self::zero(&self.field, self.rank);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), self.field.mul(*v, c));
        }
        out
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SatakeError> {
        self.add(&o.scale(self.field.neg(self.field.one())))
    }

    /// `τ_λ τ_μ = τ_{λ+μ}`, extended bilinearly.
    pub fn multiply(&self, o: &Self) -> Result<Self, SatakeError> {
        self.compatible(o)?;
        let f = &self.field;
        let mut out = Self::zero(f, self.rank);
        for (a, x) in &self.terms {
            for (b, y) in &o.terms {
                let k: Vec<i64> = a.iter().zip(b).map(|(s, t)| s + t).collect();
                out.add_term(k, f.mul(*x, *y));
            }
        }
        Ok(out)
    }

    /// `{"terms": [{"lambda": [...], "coeff": [...]}, ...]}`
    pub fn to_json(&self) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .map(|(k, v)| serde_json::json!({"lambda": k, "coeff": self.field.coeffs(*v)}))
            .collect();
        serde_json::json!({ "terms": terms })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatakeParameter {
    datum: RootDatum,
    field: FiniteField,
    levi: Subset,
    basis: Vec<Vec<i64>>,
    values: Vec<FieldElement>,
}

/// Parameter JSON: `{"levi": [...], "chi_basis": [{"lattice_vector": [...], "pi_value": [...]}]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SatakeParameterJson {
    pub levi: Subset,
    pub chi_basis: Vec<BasisValueJson>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisValueJson {
    pub lattice_vector: Vec<i64>,
    pub pi_value: Value,
}

impl SatakeParameter {
    /// `values` are `χ_M` on the Hermite basis of `X_{M,*,0}`.
    pub fn new(rd: &RootDatum, field: &FiniteField, levi: Subset, values: Vec<FieldElement>) -> Result<Self, SatakeError> {
        rd.check_subset(levi)?;
        let basis = rd.orthogonal_sublattice(levi);
        if values.len() != basis.len() {
            return Err(SatakeError::WrongValueCount { expected: basis.len(), found: values.len() });
        }
        if values.iter().any(|&v| v == field.zero() || !field.contains(v)) {
            return Err(SatakeError::ZeroValue);
        }
        Ok(SatakeParameter { datum: rd.clone(), field: field.clone(), levi, basis, values })
    }

    /// `χ_M(λ) = ν(λ(ϖ))` on `X_{M,*,0}` for a torus character defined on a
    /// lattice containing it.
    pub fn from_character(rd: &RootDatum, levi: Subset, nu: &TorusCharacterDatum) -> Result<Self, SatakeError> {
        rd.check_subset(levi)?;
        let basis = rd.orthogonal_sublattice(levi);
        let values = basis.iter().map(|b| nu.value_at_uniformizer(b)).collect::<Result<Vec<_>, _>>()?;
        Self::new(rd, nu.field(), levi, values)
    }

    /// The trivial character of `G`: Levi `∅` and `χ_T ≡ 1`.
    pub fn trivial(rd: &RootDatum, field: &FiniteField) -> Self {
        let n = rd.orthogonal_sublattice(Subset::EMPTY).len();
        Self::new(rd, field, Subset::EMPTY, vec![field.one(); n]).expect("valid")
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn levi(&self) -> Subset {
        self.levi
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn values(&self) -> &[FieldElement] {
        &self.values
    }

    /// `χ_M(λ)` for `λ ∈ X_{M,*,0}`, `None` outside.
    pub fn chi_m(&self, lambda: &[i64]) -> Option<FieldElement> {
        let coords = lattice::solve_integer(&self.basis, lambda)?;
        let f = &self.field;
        Some(coords.iter().zip(&self.values).fold(f.one(), |acc, (&c, &v)| f.mul(acc, f.pow(v, c).expect("nonzero"))))
    }

    /// `χ(τ_λ)`.
    pub fn evaluate(&self, lambda: &[i64]) -> Result<FieldElement, SatakeError> {
        self.datum.check_len(lambda)?;
        if !self.datum.is_dominant(lambda) {
            return Err(SatakeError::NotDominant(lambda.to_vec()));
        }
        let inside = self.levi.iter().all(|i| lattice::dot(self.datum.root(i), lambda) == 0);
        Ok(if inside { self.chi_m(lambda).expect("in lattice") } else { self.field.zero() })
    }

    pub fn evaluate_element(&self, a: &MonoidAlgebraElement) -> Result<FieldElement, SatakeError> {
        let f = &self.field;
        let mut acc = f.zero();
        for (k, v) in a.terms() {
            acc = f.add(acc, f.mul(*v, self.evaluate(k)?));
        }
        Ok(acc)
    }

    /// Multiplicativity on all pairs of dominant cocharacters in
    /// `[-bound, bound]^n`.
    pub fn is_algebra_homomorphism_consistent(&self, bound: i64) -> bool {
        let pts = dominant_box(&self.datum, bound);
        let f = &self.field;
        pts.iter().all(|a| {
            pts.iter().all(|b| {
                let s: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                self.evaluate(&s).ok() == Some(f.mul(self.evaluate(a).unwrap(), self.evaluate(b).unwrap()))
            })
        })
    }

    /// Parameter of `λ ↦ χ₁(τ_λ) χ₂(τ_λ)`. Its Levi is `Π_{M₁} ∪ Π_{M₂}`:
    /// the product vanishes on `τ_{λ_α}` as soon as one factor does.
    pub fn tensor(&self, other: &Self) -> Result<Self, SatakeError> {
        if self.datum != other.datum || self.field != other.field {
            return Err(SatakeError::Mismatch);
        }
        let levi = self.levi.union(other.levi);
        let basis = self.datum.orthogonal_sublattice(levi);
        let f = &self.field;
        let values = basis
            .iter()
            .map(|b| f.mul(self.chi_m(b).expect("sublattice"), other.chi_m(b).expect("sublattice")))
            .collect();
        Self::new(&self.datum, f, levi, values)
    }

    /// Restriction to the algebra of a cocharacter sublattice `Y ⊇ ZΠ̌`,
    /// given by a basis; the result lives over the datum with cocharacter
    /// lattice `Y` (coordinates in that basis).
    pub fn restrict_to_sublattice(&self, y_basis: &[Vec<i64>]) -> Result<SatakeParameter, SatakeError> {
        let sub = self.datum.with_cocharacter_sublattice(y_basis).map_err(|e| match e {
            RootDatumError::CorootNotContained(i) => SatakeError::CorootNotContained(i),
            other => SatakeError::RootDatum(other),
        })?;
        let n = self.datum.rank();
        let lift = |v: &[i64]| -> Vec<i64> {
            (0..n).map(|t| v.iter().zip(y_basis).map(|(c, b)| c * b[t]).sum()).collect()
        };
        let oracle = |v: &[i64]| self.evaluate(&lift(v)).expect("dominant in sub-datum is dominant");
        parameterize_from_oracle(&sub, &self.field, &oracle)
    }

    pub fn to_json(&self) -> SatakeParameterJson {
        SatakeParameterJson {
            levi: self.levi,
            chi_basis: self
                .basis
                .iter()
                .zip(&self.values)
                .map(|(b, v)| BasisValueJson { lattice_vector: b.clone(), pi_value: Value::from(self.field.coeffs(*v)) })
                .collect(),
        }
    }
}

/// Dominant cocharacters in `[-bound, bound]^n`.
pub fn dominant_box(rd: &RootDatum, bound: i64) -> Vec<Vec<i64>> {
    box_points(rd.rank(), -bound, bound).into_iter().filter(|v| rd.is_dominant(v)).collect()
}

/// Radius of the box used to spot-check an oracle against the recovered
/// parameter.
pub const SPOT_CHECK_RADIUS: i64 = 2;

/// Recovers `(Π_M, χ_M)` from the values of a homomorphism on dominant
/// cocharacters: `Π_M` is the zero set of the probe values and `χ_M` is read
/// off by translating each basis vector into the dominant cone.
pub fn parameterize_from_oracle(
    rd: &RootDatum,
    field: &FiniteField,
    oracle: &dyn Fn(&[i64]) -> FieldElement,
) -> Result<SatakeParameter, SatakeError> {
    let l = rd.semisimple_rank();
    let probes: Vec<Vec<i64>> = (0..l).map(|a| rd.probe_cocharacter(a)).collect();
    let levi = Subset::from_indices(&(0..l).filter(|&a| oracle(&probes[a]) == field.zero()).collect::<Vec<_>>());
    let basis = rd.orthogonal_sublattice(levi);
    let outside: Vec<usize> = (0..l).filter(|&a| !levi.contains(a)).collect();
    let mut rho = vec![0i64; rd.rank()];
    for &a in &outside {
        for t in 0..rd.rank() {
            rho[t] += probes[a][t];
        }
    }
    let mut values = Vec::with_capacity(basis.len());
    for b in &basis {
        let mut c = 0i64;
        for &a in &outside {
            let need = -lattice::dot(rd.root(a), b);
            let step = lattice::dot(rd.root(a), &probes[a]);
            if need > 0 {
                c = c.max((need + step - 1) / step);
            }
        }
        let shift: Vec<i64> = rho.iter().map(|x| c * x).collect();
        let top: Vec<i64> = b.iter().zip(&shift).map(|(x, y)| x + y).collect();
        debug_assert!(rd.is_dominant(&top) && rd.is_dominant(&shift));
        let denom = oracle(&shift);
        let v = field
            .div(oracle(&top), denom)
            .ok_or_else(|| SatakeError::InconsistentOracle(format!("zero value at {shift:?}")))?;
        if v == field.zero() {
            return Err(SatakeError::InconsistentOracle(format!("zero value at {top:?}")));
        }
        values.push(v);
    }
    let chi = SatakeParameter::new(rd, field, levi, values)?;
    for lam in dominant_box(rd, SPOT_CHECK_RADIUS) {
        if chi.evaluate(&lam)? != oracle(&lam) {
            return Err(SatakeError::InconsistentOracle(format!("mismatch at {lam:?}")));
        }
    }
    Ok(chi)
}

/// `τ_α̌ − 1` is irreducible in the group algebra of `X_*` exactly when
/// `α̌ ∉ 2X_*` (a coroot is at most twice a lattice vector, since it pairs
/// to 2 with its root).
pub fn tau_coroot_minus_one_irreducible(rd: &RootDatum, alpha: usize) -> Result<bool, SatakeError> {
    rd.check_index(alpha)?;
    Ok(!lattice::divisible_by(rd.coroot(alpha), 2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::scalars::SmoothCharacter;

    fn f(q: u32) -> FiniteField {
        FiniteField::of_order(q).unwrap()
    }

    #[test]
    fn monoid_law() {
        let gl2 = builtin("GL2").unwrap();
        let k = f(2);
        let a = MonoidAlgebraElement::tau(&gl2, &k, &[1, 0]).unwrap();
        let b = MonoidAlgebraElement::tau(&gl2, &k, &[1, 1]).unwrap();
        let ab = a.multiply(&b).unwrap();
        assert_eq!(ab, MonoidAlgebraElement::tau(&gl2, &k, &[2, 1]).unwrap());
        let s = a.add(&b).unwrap();
        assert_eq!(s.multiply(&MonoidAlgebraElement::one(&k, 2)).unwrap(), s);
        let sq = s.multiply(&s).unwrap();
        let expect = MonoidAlgebraElement::tau(&gl2, &k, &[2, 0]).unwrap().add(&MonoidAlgebraElement::tau(&gl2, &k, &[2, 2]).unwrap()).unwrap();
        assert_eq!(sq, expect);
        assert!(matches!(MonoidAlgebraElement::tau(&gl2, &k, &[0, 1]), Err(SatakeError::NotDominant(_))));
    }

    #[test]
    fn evaluation_rule() {
        let gl2 = builtin("GL2").unwrap();
        let k = f(5);
        let c = k.from_int(3);
        let chi = SatakeParameter::new(&gl2, &k, Subset::singleton(0), vec![c]).unwrap();
        assert_eq!(chi.evaluate(&[1, 1]), Ok(c));
        assert_eq!(chi.evaluate(&[1, 0]), Ok(k.zero()));
        assert_eq!(chi.evaluate(&[0, 1]), Err(SatakeError::NotDominant(vec![0, 1])));
        assert!(chi.is_algebra_homomorphism_consistent(4));
        assert_eq!(SatakeParameter::new(&gl2, &k, Subset::EMPTY, vec![c, k.zero()]), Err(SatakeError::ZeroValue));
    }

    #[test]
    fn torus_parameter_matches_character() {
        let gl2 = builtin("GL2").unwrap();
        let k = f(5);
        let c1 = SmoothCharacter::new(&k, 5, 1, k.from_int(2)).unwrap();
        let c2 = SmoothCharacter::new(&k, 5, 3, k.from_int(4)).unwrap();
        let nu = TorusCharacterDatum::on_standard_lattice(vec![c1, c2], &k, 5).unwrap();
        let chi = SatakeParameter::from_character(&gl2, Subset::EMPTY, &nu).unwrap();
        for lam in dominant_box(&gl2, 3) {
            assert_eq!(chi.evaluate(&lam).unwrap(), nu.value_at_uniformizer(&lam).unwrap());
        }
    }

    #[test]
    fn oracle_recovery_examples() {
        let gl2 = builtin("GL2").unwrap();
        let k = f(3);
        let one = |_: &[i64]| k.one();
        let chi = parameterize_from_oracle(&gl2, &k, &one).unwrap();
        assert_eq!(chi, SatakeParameter::trivial(&gl2, &k));
        let c = k.from_int(2);
        let ss = |v: &[i64]| if v[0] == v[1] { k.pow(c, v[0]).unwrap() } else { k.zero() };
        let chi = parameterize_from_oracle(&gl2, &k, &ss).unwrap();
        assert_eq!(chi.levi(), Subset::singleton(0));
        assert_eq!(chi.values(), &[c]);
        let bad = |v: &[i64]| if v == [1, 0] { k.from_int(2) } else { k.one() };
        assert!(matches!(parameterize_from_oracle(&gl2, &k, &bad), Err(SatakeError::InconsistentOracle(_))));
    }

    #[test]
    fn tensor_levi_is_union() {
        let gl2 = builtin("GL2").unwrap();
        let k = f(3);
        let torus = SatakeParameter::new(&gl2, &k, Subset::EMPTY, vec![k.from_int(2), k.one()]).unwrap();
        let ss = SatakeParameter::new(&gl2, &k, Subset::singleton(0), vec![k.from_int(2)]).unwrap();
        let t = torus.tensor(&ss).unwrap();
        assert_eq!(t.levi(), Subset::singleton(0));
        for lam in dominant_box(&gl2, 3) {
            assert_eq!(t.evaluate(&lam).unwrap(), k.mul(torus.evaluate(&lam).unwrap(), ss.evaluate(&lam).unwrap()));
        }
    }

    #[test]
    fn restriction_to_coroot_lattice() {
        let gl2 = builtin("GL2").unwrap();
        let k = f(5);
        let chi = SatakeParameter::new(&gl2, &k, Subset::EMPTY, vec![k.from_int(2), k.from_int(3)]).unwrap();
        let r = chi.restrict_to_sublattice(&[vec![1, -1]]).unwrap();
        assert_eq!(r.levi(), Subset::EMPTY);
        // value at the coroot is 2 * 3^{-1} = 4 in F_5
        assert_eq!(r.values(), &[k.from_int(4)]);
        let same = chi.restrict_to_sublattice(&[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(same.values(), chi.values());
        assert_eq!(chi.restrict_to_sublattice(&[vec![1, 1]]), Err(SatakeError::CorootNotContained(0)));
    }

    #[test]
    fn coroot_criterion() {
        assert_eq!(tau_coroot_minus_one_irreducible(&builtin("GL2").unwrap(), 0), Ok(true));
        assert_eq!(tau_coroot_minus_one_irreducible(&builtin("SL2").unwrap(), 0), Ok(true));
        assert_eq!(tau_coroot_minus_one_irreducible(&builtin("PGL2").unwrap(), 0), Ok(false));
    }
}
