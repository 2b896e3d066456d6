use super::{prime_power, FieldElement, FiniteField, ScalarError};
use crate::lattice;
use serde::{Deserialize, Serialize};
use serde_json::Value;

/// A smooth character `F^× → κ̄^×` with residue field `F_q`: the unit part
/// `u ↦ ū^e` and the value at the uniformizer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothCharacter {
    field: FiniteField,
    q: u32,
    unit_exponent: u32,
    pi_value: FieldElement,
}

fn check_residue_field(field: &FiniteField, q: u32) -> Result<(), ScalarError> {
    let (p, f) = prime_power(q).ok_or(ScalarError::NotPrimePower(q))?;
    if p != field.characteristic() {
        return Err(ScalarError::Mismatch);
    }
    if !field.contains_subfield(f) {
        let k = field.degree();
        return Err(ScalarError::ExtensionRequired { q, needed_degree: num_integer::lcm(f, k) });
    }
    Ok(())
}

impl SmoothCharacter {
    pub fn new(field: &FiniteField, q: u32, unit_exponent: i64, pi_value: FieldElement) -> Result<Self, ScalarError> {
        check_residue_field(field, q)?;
        if pi_value == field.zero() || !field.contains(pi_value) {
            return Err(ScalarError::ZeroUniformizerValue);
        }
        Ok(SmoothCharacter {
            field: field.clone(),
            q,
            unit_exponent: unit_exponent.rem_euclid(q as i64 - 1) as u32,
            pi_value,
        })
    }

    pub fn trivial(field: &FiniteField, q: u32) -> Result<Self, ScalarError> {
        Self::new(field, q, 0, field.one())
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn unit_exponent(&self) -> u32 {
        self.unit_exponent
    }

    pub fn pi_value(&self) -> FieldElement {
        self.pi_value
    }

    pub fn is_trivial(&self) -> bool {
        self.unit_exponent == 0 && self.pi_value == self.field.one()
    }

    fn same_kind(&self, other: &Self) -> Result<(), ScalarError> {
        if self.field == other.field && self.q == other.q {
            Ok(())
        } else {
            Err(ScalarError::Mismatch)
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        self.same_kind(other)?;
        Ok(SmoothCharacter {
            field: self.field.clone(),
            q: self.q,
            unit_exponent: (self.unit_exponent + other.unit_exponent) % (self.q - 1).max(1),
            pi_value: self.field.mul(self.pi_value, other.pi_value),
        })
    }

    pub fn pow(&self, n: i64) -> Self {
        let m = (self.q - 1).max(1) as i64;
        SmoothCharacter {
            field: self.field.clone(),
            q: self.q,
            unit_exponent: (self.unit_exponent as i64 * n).rem_euclid(m) as u32,
            pi_value: self.field.pow(self.pi_value, n).expect("nonzero"),
        }
    }

    /// Value at a unit whose residue is the generator of `F_q^×`, embedded
    /// into the coefficient field.
    pub fn value_at_residue_generator(&self) -> FieldElement {
        let big = self.field.order() - 1;
        let step = (big / (self.q - 1).max(1)) as i64;
        self.field.exp(step * self.unit_exponent as i64)
    }

    pub fn to_json(&self) -> SmoothCharacterJson {
        SmoothCharacterJson {
            unit_exponent: self.unit_exponent as i64,
            pi_value: Value::from(self.field.coeffs(self.pi_value)),
        }
    }
}

/// Per-basis-vector entry of the character JSON. `pi_value` is either an
/// integer (prime-field element) or an array of polynomial coefficients,
/// constant term first.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SmoothCharacterJson {
    pub unit_exponent: i64,
    pub pi_value: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CharacterJson {
    pub q: u32,
    pub field_degree: u32,
    pub basis_chars: Vec<SmoothCharacterJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lattice: Option<Vec<Vec<i64>>>,
}

pub(crate) fn parse_field_value(field: &FiniteField, v: &Value) -> Result<FieldElement, ScalarError> {
    let coeffs: Vec<i64> = match v {
        Value::Number(n) => vec![n.as_i64().ok_or_else(|| ScalarError::Parse(format!("bad value {n}")))?],
        Value::Array(a) => a
            .iter()
            .map(|x| x.as_i64().ok_or_else(|| ScalarError::Parse(format!("bad coefficient {x}"))))
            .collect::<Result<_, _>>()?,
        other => return Err(ScalarError::Parse(format!("expected number or coefficient array, got {other}"))),
    };
    let p = field.characteristic() as i64;
    let reduced: Vec<u32> = coeffs.iter().map(|c| c.rem_euclid(p) as u32).collect();
    field.from_coeffs(&reduced)
}

/// A smooth character of a split torus, given on a basis of a cocharacter
/// lattice `Y` by one smooth character per basis vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TorusCharacterDatum {
    field: FiniteField,
    q: u32,
    basis: Vec<Vec<i64>>,
    chars: Vec<SmoothCharacter>,
}

impl TorusCharacterDatum {
    pub fn new(basis: Vec<Vec<i64>>, chars: Vec<SmoothCharacter>, field: &FiniteField, q: u32) -> Result<Self, ScalarError> {
        check_residue_field(field, q)?;
        if basis.len() != chars.len() {
            return Err(ScalarError::Parse(format!("{} basis vectors but {} characters", basis.len(), chars.len())));
        }
        if chars.iter().any(|c| c.field != *field || c.q != q) {
            return Err(ScalarError::Mismatch);
        }
        Ok(TorusCharacterDatum { field: field.clone(), q, basis, chars })
    }

    /// Characters on the standard basis of `Z^n`.
    pub fn on_standard_lattice(chars: Vec<SmoothCharacter>, field: &FiniteField, q: u32) -> Result<Self, ScalarError> {
        let n = chars.len();
        let basis = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(basis, chars, field, q)
    }

    pub fn trivial(basis: Vec<Vec<i64>>, field: &FiniteField, q: u32) -> Result<Self, ScalarError> {
        let t = SmoothCharacter::trivial(field, q)?;
        let chars = vec![t; basis.len()];
        Self::new(basis, chars, field, q)
    }

    pub fn field(&self) -> &FiniteField {
        &self.field
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn basis(&self) -> &[Vec<i64>] {
        &self.basis
    }

    pub fn chars(&self) -> &[SmoothCharacter] {
        &self.chars
    }

    pub fn is_trivial(&self) -> bool {
        self.chars.iter().all(SmoothCharacter::is_trivial)
    }

    /// The character `x ↦ ν(λ(x))` of `F^×`.
    pub fn compose_with_cocharacter(&self, lambda: &[i64]) -> Result<SmoothCharacter, ScalarError> {
        let coords = lattice::solve_integer(&self.basis, lambda).ok_or_else(|| ScalarError::NotInLattice(lambda.to_vec()))?;
        let mut acc = SmoothCharacter::trivial(&self.field, self.q)?;
        for (c, chi) in coords.iter().zip(&self.chars) {
            acc = acc.mul(&chi.pow(*c))?;
        }
        Ok(acc)
    }

    /// `ν(λ(ϖ))`.
    pub fn value_at_uniformizer(&self, lambda: &[i64]) -> Result<FieldElement, ScalarError> {
        Ok(self.compose_with_cocharacter(lambda)?.pi_value())
    }

    /// The same character restricted to the sublattice with the given basis.
    pub fn restrict(&self, sub_basis: Vec<Vec<i64>>) -> Result<Self, ScalarError> {
        let chars = sub_basis.iter().map(|y| self.compose_with_cocharacter(y)).collect::<Result<Vec<_>, _>>()?;
        Self::new(sub_basis, chars, &self.field, self.q)
    }

    /// Pointwise product of two characters on the same lattice.
    pub fn mul(&self, other: &Self) -> Result<Self, ScalarError> {
        if !lattice::same_lattice(&self.basis, &other.basis, self.basis.first().map_or(0, |b| b.len())) {
            return Err(ScalarError::Mismatch);
        }
        let chars = self
            .basis
            .iter()
            .map(|b| self.compose_with_cocharacter(b)?.mul(&other.compose_with_cocharacter(b)?))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.basis.clone(), chars, &self.field, self.q)
    }

    pub fn from_json(j: &CharacterJson) -> Result<Self, ScalarError> {
        let (p, _) = prime_power(j.q).ok_or(ScalarError::NotPrimePower(j.q))?;
        let field = FiniteField::new(p, j.field_degree)?;
        let chars = j
            .basis_chars
            .iter()
            .map(|c| SmoothCharacter::new(&field, j.q, c.unit_exponent, parse_field_value(&field, &c.pi_value)?))
            .collect::<Result<Vec<_>, _>>()?;
        match &j.lattice {
            Some(b) => Self::new(b.clone(), chars, &field, j.q),
            None => Self::on_standard_lattice(chars, &field, j.q),
        }
    }

    pub fn to_json(&self) -> CharacterJson {
        CharacterJson {
            q: self.q,
            field_degree: self.field.degree(),
            basis_chars: self.chars.iter().map(SmoothCharacter::to_json).collect(),
            lattice: Some(self.basis.clone()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triviality() {
        let f = FiniteField::new(3, 1).unwrap();
        assert!(SmoothCharacter::new(&f, 3, 0, f.one()).unwrap().is_trivial());
        assert!(!SmoothCharacter::new(&f, 3, 0, f.generator()).unwrap().is_trivial());
        assert!(!SmoothCharacter::new(&f, 3, 1, f.one()).unwrap().is_trivial());
        assert_eq!(SmoothCharacter::new(&f, 3, 0, f.zero()), Err(ScalarError::ZeroUniformizerValue));
        assert_eq!(
            SmoothCharacter::new(&f, 9, 0, f.one()),
            Err(ScalarError::ExtensionRequired { q: 9, needed_degree: 2 })
        );
    }

    #[test]
    fn composition() {
        let f = FiniteField::new(3, 1).unwrap();
        let c1 = SmoothCharacter::new(&f, 3, 1, f.from_int(2)).unwrap();
        let c2 = SmoothCharacter::new(&f, 3, 0, f.one()).unwrap();
        let nu = TorusCharacterDatum::on_standard_lattice(vec![c1.clone(), c2.clone()], &f, 3).unwrap();
        let a = nu.compose_with_cocharacter(&[1, -1]).unwrap();
        assert_eq!(a, c1.mul(&c2.pow(-1)).unwrap());
        let sq = nu.compose_with_cocharacter(&[2, 0]).unwrap();
        assert_eq!(sq.unit_exponent(), 0);
        assert_eq!(sq.pi_value(), f.one());
        let sub = nu.restrict(vec![vec![1, 1]]).unwrap();
        assert_eq!(sub.compose_with_cocharacter(&[1, 0]), Err(ScalarError::NotInLattice(vec![1, 0])));
    }

    #[test]
    fn json_round_trip() {
        let f = FiniteField::new(5, 2).unwrap();
        let c = SmoothCharacter::new(&f, 5, 3, f.generator()).unwrap();
        let nu = TorusCharacterDatum::on_standard_lattice(vec![c], &f, 5).unwrap();
        let j = nu.to_json();
        assert_eq!(j.basis_chars[0].pi_value, serde_json::json!([0, 1]));
        assert_eq!(TorusCharacterDatum::from_json(&j).unwrap(), nu);
    }
}
