//! Classification parameters `Λ = (Π₁, Π₂, σ₁)` and their descriptors.
//!
//! Supersingular representations of Levi subgroups are opaque: a Levi, a
//! central character and a label. Distinct labels are taken to name
//! non-isomorphic representations.

use crate::lattice;
use crate::root_datum::{RootDatum, RootDatumError};
use crate::satake_param::{SatakeError, SatakeParameter, SatakeParameterJson};
use crate::scalars::{CharacterJson, ScalarError, SmoothCharacter, TorusCharacterDatum};
use crate::subset::Subset;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ClassificationError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("supersingular datum has Levi {found:?}, expected {expected:?}")]
    LeviMismatch { expected: Subset, found: Subset },
    #[error("derived group is not simply connected; fundamental weight for root {0} unavailable")]
    NotSimplyConnected(usize),
    #[error("weight {0:?} is outside the lowest-weight window")]
    WindowViolated(Vec<i64>),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error(transparent)]
    Satake(#[from] SatakeError),
    #[error(transparent)]
    RootDatum(#[from] RootDatumError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupersingularDatum {
    pub levi: Subset,
    /// Central character, on a basis of `X_{M,*,0}` for `M = M_{Π₁}`.
    pub central_character: TorusCharacterDatum,
    pub label: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupersingularDatumJson {
    pub levi: Subset,
    pub label: String,
    pub central_character: CharacterJson,
}

impl SupersingularDatum {
    pub fn new(rd: &RootDatum, levi: Subset, central_character: TorusCharacterDatum, label: &str) -> Result<Self, ClassificationError> {
        rd.check_subset(levi)?;
        let lat = rd.orthogonal_sublattice(levi);
        if !lattice::same_lattice(central_character.basis(), &lat, rd.rank()) {
            return Err(ClassificationError::InvalidParameter(
                "central character is not defined on the orthogonal sublattice of the Levi".into(),
            ));
        }
        Ok(SupersingularDatum { levi, central_character, label: label.to_string() })
    }

    /// A character `ν` of the torus viewed as a supersingular datum of `T`.
    pub fn torus(rd: &RootDatum, nu: &TorusCharacterDatum, label: &str) -> Result<Self, ClassificationError> {
        Self::new(rd, Subset::EMPTY, nu.clone(), label)
    }

    pub fn from_json(rd: &RootDatum, j: &SupersingularDatumJson) -> Result<Self, ClassificationError> {
        let mut cj = j.central_character.clone();
        if cj.lattice.is_none() {
            cj.lattice = Some(rd.orthogonal_sublattice(j.levi));
        }
        let chi = TorusCharacterDatum::from_json(&cj)?;
        Self::new(rd, j.levi, chi, &j.label)
    }

    pub fn to_json(&self) -> SupersingularDatumJson {
        SupersingularDatumJson {
            levi: self.levi,
            label: self.label.clone(),
            central_character: self.central_character.to_json(),
        }
    }

    /// Simple roots whose coroots pair to zero with every root of the Levi.
    pub fn orthogonal_roots(&self, rd: &RootDatum) -> Subset {
        let l = rd.semisimple_rank();
        Subset::from_indices(
            &(0..l).filter(|&a| self.levi.iter().all(|b| rd.cartan()[b][a] == 0)).collect::<Vec<_>>(),
        )
    }

    /// `ω ∘ α̌` for every simple root orthogonal to the Levi.
    pub fn coroot_characters(&self, rd: &RootDatum) -> Result<Vec<(usize, SmoothCharacter)>, ClassificationError> {
        self.orthogonal_roots(rd)
            .iter()
            .map(|a| Ok((a, self.central_character.compose_with_cocharacter(rd.coroot(a))?)))
            .collect()
    }
}

/// `Π_σ = {α : <Π₁, α̌> = 0 and ω ∘ α̌ trivial}`.
pub fn pi_sigma(rd: &RootDatum, d: &SupersingularDatum) -> Result<Subset, ClassificationError> {
    let ix: Vec<usize> = d.coroot_characters(rd)?.into_iter().filter(|(_, c)| c.is_trivial()).map(|(a, _)| a).collect();
    Ok(Subset::from_indices(&ix))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationParameter {
    pub pi1: Subset,
    pub pi2: Subset,
    pub sigma1: SupersingularDatum,
}

pub fn validate_parameter(rd: &RootDatum, lam: &ClassificationParameter) -> Result<(), ClassificationError> {
    if lam.pi1 != lam.sigma1.levi {
        return Err(ClassificationError::InvalidParameter(format!(
            "Π₁ = {:?} differs from the Levi {:?} of σ₁",
            lam.pi1, lam.sigma1.levi
        )));
    }
    rd.check_subset(lam.pi2)?;
    let ps = pi_sigma(rd, &lam.sigma1)?;
    if !lam.pi2.is_subset_of(ps) {
        return Err(ClassificationError::InvalidParameter(format!("Π₂ = {:?} is not contained in Π_σ = {ps:?}", lam.pi2)));
    }
    Ok(())
}

pub fn is_valid_parameter(rd: &RootDatum, lam: &ClassificationParameter) -> bool {
    validate_parameter(rd, lam).is_ok()
}

/// Descriptor of `I(Λ)`: induced from `P_Λ` (simple roots `Π₁ ∪ Π_σ`), with
/// special part `Π₂` and Satake parameter `(Π₁, χ_ω)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrrRepDescriptor {
    pub inducing_parabolic: Subset,
    pub sigma1_label: String,
    pub special_part: Subset,
    pub satake: SatakeParameter,
    /// `(α, unit exponent, ϖ-value coefficients)` of `ω ∘ α̌` on coroots
    /// orthogonal to `Π₁`.
    pub coroot_characters: Vec<(usize, u32, Vec<u32>)>,
}

/// Everything two descriptors are compared on.
pub type DescriptorKey = (Subset, Vec<Vec<u32>>, Vec<(usize, u32, Vec<u32>)>, Subset, String);

impl IrrRepDescriptor {
    pub fn key(&self) -> DescriptorKey {
        let f = self.satake.field();
        (
            self.satake.levi(),
            self.satake.values().iter().map(|v| f.coeffs(*v)).collect(),
            self.coroot_characters.clone(),
            self.special_part,
            self.sigma1_label.clone(),
        )
    }

    pub fn to_json(&self, rd: &RootDatum) -> DescriptorJson {
        DescriptorJson {
            inducing_parabolic: self.inducing_parabolic,
            sigma1_label: self.sigma1_label.clone(),
            special_part: self.special_part,
            satake: self.satake.to_json(),
            supersingular: is_supersingular_descriptor(rd, self),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DescriptorJson {
    pub inducing_parabolic: Subset,
    pub sigma1_label: String,
    pub special_part: Subset,
    pub satake: SatakeParameterJson,
    pub supersingular: bool,
}

pub fn build_descriptor(rd: &RootDatum, lam: &ClassificationParameter) -> Result<IrrRepDescriptor, ClassificationError> {
    validate_parameter(rd, lam)?;
    let ps = pi_sigma(rd, &lam.sigma1)?;
    let satake = SatakeParameter::from_character(rd, lam.pi1, &lam.sigma1.central_character)?;
    let f = lam.sigma1.central_character.field();
    let coroot_characters = lam
        .sigma1
        .coroot_characters(rd)?
        .into_iter()
        .map(|(a, c)| (a, c.unit_exponent(), f.coeffs(c.pi_value())))
        .collect();
    Ok(IrrRepDescriptor {
        inducing_parabolic: lam.pi1.union(ps),
        sigma1_label: lam.sigma1.label.clone(),
        special_part: lam.pi2,
        satake,
        coroot_characters,
    })
}

#[derive(Clone, Debug)]
pub struct Enumeration {
    pub entries: Vec<(ClassificationParameter, IrrRepDescriptor)>,
    /// Index pairs of entries whose descriptors coincide.
    pub collisions: Vec<(usize, usize)>,
}

impl Enumeration {
    pub fn injective(&self) -> bool {
        self.collisions.is_empty()
    }
}

/// All valid `Λ` over the given supersingular data, sorted by
/// `(Π₁, Π₂, label)`, with a check that descriptors separate them.
pub fn enumerate_parameters(rd: &RootDatum, data: &[SupersingularDatum]) -> Result<Enumeration, ClassificationError> {
    let per: Vec<Vec<(ClassificationParameter, IrrRepDescriptor)>> = data
        .par_iter()
        .map(|d| {
            induction_factors(rd, d.levi, d)?
                .into_iter()
                .map(|lam| {
                    let desc = build_descriptor(rd, &lam)?;
                    Ok((lam, desc))
                })
                .collect::<Result<Vec<_>, ClassificationError>>()
        })
        .collect::<Result<_, _>>()?;
    let mut entries: Vec<_> = per.into_iter().flatten().collect();
    entries.sort_by(|a, b| (a.0.pi1, a.0.pi2, &a.0.sigma1.label).cmp(&(b.0.pi1, b.0.pi2, &b.0.sigma1.label)));
    let mut seen: BTreeMap<DescriptorKey, usize> = BTreeMap::new();
    let mut collisions = Vec::new();
    for (i, (_, d)) in entries.iter().enumerate() {
        if let Some(&j) = seen.get(&d.key()) {
            collisions.push((j, i));
        } else {
            seen.insert(d.key(), i);
        }
    }
    Ok(Enumeration { entries, collisions })
}

/// `{(Π_M, Π₂, d) : Π₂ ⊆ Π_σ}`.
pub fn induction_factors(rd: &RootDatum, levi: Subset, d: &SupersingularDatum) -> Result<Vec<ClassificationParameter>, ClassificationError> {
    if d.levi != levi {
        return Err(ClassificationError::LeviMismatch { expected: levi, found: d.levi });
    }
    let ps = pi_sigma(rd, d)?;
    Ok(ps.subsets().into_iter().map(|pi2| ClassificationParameter { pi1: levi, pi2, sigma1: d.clone() }).collect())
}

#[derive(Clone, Debug)]
pub struct PrincipalSeries {
    pub c: usize,
    pub length: usize,
    pub factors: Vec<IrrRepDescriptor>,
}

impl PrincipalSeries {
    pub fn irreducible(&self) -> bool {
        self.c == 0
    }
}

/// Composition factors of `Ind_B^G(ν)`: one for each `Π₂ ⊆ Π_ν`.
pub fn principal_series_analyze(rd: &RootDatum, nu: &TorusCharacterDatum) -> Result<PrincipalSeries, ClassificationError> {
    let d = SupersingularDatum::torus(rd, nu, "nu")?;
    let c = pi_sigma(rd, &d)?.len();
    let factors = induction_factors(rd, Subset::EMPTY, &d)?
        .iter()
        .map(|lam| build_descriptor(rd, lam))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PrincipalSeries { c, length: 1 << c, factors })
}

/// Hypotheses of the changing-the-weight theorem at `α`.
pub fn changing_weight_applicable(rd: &RootDatum, nu: &[i64], alpha: usize, chi: &SatakeParameter) -> bool {
    if lattice::dot(nu, rd.coroot(alpha)) != 0 || chi.levi().contains(alpha) {
        return false;
    }
    match chi.chi_m(rd.coroot(alpha)) {
        None => true,
        Some(v) => v != chi.field().one(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightStep {
    pub alpha: usize,
    pub weight: Vec<i64>,
}

/// Repeatedly replaces `ν` by `ν − (q−1)ω_α` for the smallest applicable
/// `α ∈ Π_ν ∖ Π_M`.
pub fn minimize_weight(rd: &RootDatum, nu: &[i64], chi: &SatakeParameter, q: u32) -> Result<(Vec<i64>, Vec<WeightStep>), ClassificationError> {
    rd.check_len(nu)?;
    let q = q as i64;
    let in_window = |w: &[i64]| rd.coroot_pairings(w).iter().all(|&x| -q < x && x <= 0);
    if !in_window(nu) {
        return Err(ClassificationError::WindowViolated(nu.to_vec()));
    }
    let mut cur = nu.to_vec();
    let mut steps = Vec::new();
    loop {
        let pick = (0..rd.semisimple_rank()).find(|&a| changing_weight_applicable(rd, &cur, a, chi));
        let Some(a) = pick else { break };
        let omega = rd.fundamental_weight(a).map_err(|_| ClassificationError::NotSimplyConnected(a))?;
        for (x, w) in cur.iter_mut().zip(&omega) {
            *x -= (q - 1) * w;
        }
        debug_assert!(in_window(&cur));
        steps.push(WeightStep { alpha: a, weight: cur.clone() });
    }
    Ok((cur, steps))
}

/// `Π_ν` for a weight: simple roots whose coroot pairs to zero with it.
pub fn weight_stabilizer_roots(rd: &RootDatum, nu: &[i64]) -> Subset {
    let p = rd.coroot_pairings(nu);
    Subset::from_indices(&(0..p.len()).filter(|&i| p[i] == 0).collect::<Vec<_>>())
}

pub fn is_supersingular_descriptor(rd: &RootDatum, desc: &IrrRepDescriptor) -> bool {
    desc.satake.levi() == rd.all_simple()
}

/// Descriptor of a generalized special representation `Sp_P`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpecialRep {
    pub parabolic: Subset,
}

/// Composition factors attached to the trivial parameter: one `Sp_P` per
/// standard parabolic.
pub fn trivial_parameter_factors(rd: &RootDatum) -> Vec<SpecialRep> {
    rd.all_simple().subsets().into_iter().map(|parabolic| SpecialRep { parabolic }).collect()
}

/// A torus character extends to `G` exactly when every `ν ∘ α̌` is trivial.
pub fn character_extends(rd: &RootDatum, nu: &TorusCharacterDatum) -> Result<bool, ClassificationError> {
    for a in 0..rd.semisimple_rank() {
        if !nu.compose_with_cocharacter(rd.coroot(a))?.is_trivial() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;
    use crate::scalars::FiniteField;

    fn chars(f: &FiniteField, q: u32, spec: &[(i64, i64)]) -> Vec<SmoothCharacter> {
        spec.iter().map(|&(e, pi)| SmoothCharacter::new(f, q, e, f.from_int(pi)).unwrap()).collect()
    }

    #[test]
    fn gl2_principal_series() {
        let gl2 = builtin("GL2").unwrap();
        let f = FiniteField::new(3, 1).unwrap();
        let triv = TorusCharacterDatum::on_standard_lattice(chars(&f, 3, &[(0, 1), (0, 1)]), &f, 3).unwrap();
        let ps = principal_series_analyze(&gl2, &triv).unwrap();
        assert_eq!((ps.c, ps.length, ps.factors.len()), (1, 2, 2));
        let gen = TorusCharacterDatum::on_standard_lattice(chars(&f, 3, &[(0, 2), (0, 1)]), &f, 3).unwrap();
        let ps = principal_series_analyze(&gl2, &gen).unwrap();
        assert!(ps.irreducible());
        assert!(character_extends(&gl2, &triv).unwrap());
        assert!(!character_extends(&gl2, &gen).unwrap());
    }

    #[test]
    fn gl3_pi_sigma() {
        let gl3 = builtin("GL3").unwrap();
        let f = FiniteField::new(3, 1).unwrap();
        // e1, e2 trivial and e3 with ϖ-value 2: ω∘α̌₁ trivial, ω∘α̌₂ not
        let nu = TorusCharacterDatum::on_standard_lattice(chars(&f, 3, &[(0, 1), (0, 1), (0, 2)]), &f, 3).unwrap();
        let d = SupersingularDatum::torus(&gl3, &nu, "nu").unwrap();
        assert_eq!(pi_sigma(&gl3, &d).unwrap(), Subset::singleton(0));
        let lat = gl3.orthogonal_sublattice(Subset::singleton(0));
        let omega = TorusCharacterDatum::trivial(lat, &f, 3).unwrap();
        let d1 = SupersingularDatum::new(&gl3, Subset::singleton(0), omega, "s").unwrap();
        assert_eq!(pi_sigma(&gl3, &d1).unwrap(), Subset::EMPTY);
        let bad = ClassificationParameter { pi1: Subset::singleton(0), pi2: Subset::singleton(1), sigma1: d1 };
        assert!(!is_valid_parameter(&gl3, &bad));
    }

    #[test]
    fn descriptors_gl2() {
        let gl2 = builtin("GL2").unwrap();
        let f = FiniteField::new(3, 1).unwrap();
        let triv = TorusCharacterDatum::on_standard_lattice(chars(&f, 3, &[(0, 1), (0, 1)]), &f, 3).unwrap();
        let d = SupersingularDatum::torus(&gl2, &triv, "nu").unwrap();
        let lam = ClassificationParameter { pi1: Subset::EMPTY, pi2: Subset::EMPTY, sigma1: d };
        let desc = build_descriptor(&gl2, &lam).unwrap();
        assert_eq!(desc.inducing_parabolic, Subset::singleton(0));
        assert_eq!(desc.satake, SatakeParameter::trivial(&gl2, &f));
        assert!(!is_supersingular_descriptor(&gl2, &desc));
        let center = TorusCharacterDatum::trivial(vec![vec![1, 1]], &f, 3).unwrap();
        let ss = SupersingularDatum::new(&gl2, Subset::singleton(0), center, "ss").unwrap();
        let lam = ClassificationParameter { pi1: Subset::singleton(0), pi2: Subset::EMPTY, sigma1: ss };
        let desc = build_descriptor(&gl2, &lam).unwrap();
        assert_eq!(desc.inducing_parabolic, Subset::singleton(0));
        assert!(is_supersingular_descriptor(&gl2, &desc));
    }

    #[test]
    fn weight_minimization() {
        let gl2 = builtin("GL2").unwrap();
        let f = FiniteField::new(5, 1).unwrap();
        let chi = SatakeParameter::new(&gl2, &f, Subset::EMPTY, vec![f.from_int(2), f.one()]).unwrap();
        let (end, steps) = minimize_weight(&gl2, &[0, 0], &chi, 5).unwrap();
        assert_eq!(end, vec![-4, 0]);
        assert_eq!(steps.len(), 1);
        let ss = SatakeParameter::new(&gl2, &f, Subset::singleton(0), vec![f.from_int(2)]).unwrap();
        assert_eq!(minimize_weight(&gl2, &[0, 0], &ss, 5).unwrap().1.len(), 0);
        let flat = SatakeParameter::new(&gl2, &f, Subset::EMPTY, vec![f.from_int(2), f.from_int(2)]).unwrap();
        assert!(!changing_weight_applicable(&gl2, &[0, 0], 0, &flat));
        assert!(!changing_weight_applicable(&gl2, &[0, 3], 0, &chi));
        assert!(matches!(minimize_weight(&gl2, &[0, 7], &chi, 5), Err(ClassificationError::WindowViolated(_))));
    }

    #[test]
    fn trivial_factors() {
        assert_eq!(trivial_parameter_factors(&builtin("GL2").unwrap()).len(), 2);
        assert_eq!(trivial_parameter_factors(&builtin("GL3").unwrap()).len(), 4);
    }
}
