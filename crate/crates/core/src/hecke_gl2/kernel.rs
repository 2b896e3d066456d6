use super::finite_rep::{FiniteRep, FpMat};
use super::padic::{cartan_decompose_full, double_coset_points, PAdicMatrix};
use super::HeckeError;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::{BTreeMap, BTreeSet};

/// A bi-`K`-equivariant, compactly supported `φ : G → Hom(V₁, V₂)`, stored
/// by its value at `λ(ϖ)` for each double coset `K λ(ϖ) K` in the support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeckeKernel {
    source: FiniteRep,
    target: FiniteRep,
    components: BTreeMap<(i64, i64), FpMat>,
}

fn weights_congruent(v1: &FiniteRep, v2: &FiniteRep) -> bool {
    let n = (v1.p as i64 - 1).max(1);
    let (a1, b1) = v1.lowest_weight();
    let (a2, b2) = v2.lowest_weight();
    (a1 - a2).rem_euclid(n) == 0 && (b1 - b2).rem_euclid(n) == 0
}

/// The kernel supported on `K λ(ϖ) K` whose value at `λ(ϖ)` is
/// `V₁ → (V₁)_{N_λ} ≅ V₂^{N̄_λ} → V₂`, sending `y^{r₁}` to `y^{r₂}`.
pub fn build_kernel(v1: FiniteRep, v2: FiniteRep, lambda: (i64, i64)) -> Result<HeckeKernel, HeckeError> {
    if v1.p != v2.p {
        return Err(HeckeError::PrimeMismatch);
    }
    if lambda.0 < lambda.1 {
        return Err(HeckeError::NotDominant(lambda));
    }
    let value = if lambda.0 == lambda.1 {
        if v1 != v2 {
            return Err(HeckeError::IncompatibleWeights { from: v1, to: v2, lambda });
        }
        FpMat::identity(v1.p, v1.dim())
    } else {
        if !weights_congruent(&v1, &v2) {
            return Err(HeckeError::IncompatibleWeights { from: v1, to: v2, lambda });
        }
        FpMat::unit(v1.p, v2.dim(), v1.dim(), v2.lowest_index(), v1.lowest_index())
    };
    let mut components = BTreeMap::new();
    components.insert(lambda, value);
    Ok(HeckeKernel { source: v1, target: v2, components })
}

/// `T_λ ∈ H(V)`.
pub fn t_lambda(v: FiniteRep, lambda: (i64, i64)) -> Result<HeckeKernel, HeckeError> {
    build_kernel(v, v, lambda)
}

/// Whether `M` is a legal value at `λ(ϖ)`:
/// `ρ₂(k)M = Mρ₁(λ(ϖ)⁻¹kλ(ϖ))` on generators of `K ∩ λ(ϖ)Kλ(ϖ)⁻¹` mod `p`.
pub fn is_admissible_value(v1: &FiniteRep, v2: &FiniteRep, lambda: (i64, i64), m: &FpMat) -> bool {
    let p = v1.p;
    let gens = FiniteRep::group_generators(p);
    let pairs: Vec<([[u64; 2]; 2], [[u64; 2]; 2])> = if lambda.0 == lambda.1 {
        gens.iter().map(|g| (*g, *g)).collect()
    } else {
        // diagonal elements act on both sides; lower unipotents act on the
        // target only, upper unipotents on the source only
        let id = [[1, 0], [0, 1]];
        vec![(gens[0], gens[0]), (gens[1], gens[1]), (gens[3], id), (id, gens[2])]
    };
    pairs.iter().all(|(l, r)| v2.matrix(*l).mul(m) == m.mul(&v1.matrix(*r)))
}

impl HeckeKernel {
    pub fn zero(source: FiniteRep, target: FiniteRep) -> Self {
        HeckeKernel { source, target, components: BTreeMap::new() }
    }

    /// Identity of `H(V)`: `T_{(0,0)}`.
    pub fn identity(v: FiniteRep) -> Self {
        t_lambda(v, (0, 0)).unwrap()
    }

    pub fn from_components(
        source: FiniteRep,
        target: FiniteRep,
        components: impl IntoIterator<Item = ((i64, i64), FpMat)>,
    ) -> Result<Self, HeckeError> {
        let mut k = Self::zero(source, target);
        for (lam, m) in components {
            if lam.0 < lam.1 {
                return Err(HeckeError::NotDominant(lam));
            }
            if (m.rows(), m.cols()) != (target.dim(), source.dim()) || !is_admissible_value(&source, &target, lam, &m) {
                return Err(HeckeError::NotEquivariant(lam));
            }
            k.insert(lam, m);
        }
        Ok(k)
    }

    fn insert(&mut self, lam: (i64, i64), m: FpMat) {
        let sum = match self.components.remove(&lam) {
            Some(cur) => cur.add(&m),
            None => m,
        };
        if !sum.is_zero() {
            self.components.insert(lam, sum);
        }
    }

    pub fn source(&self) -> FiniteRep {
        self.source
    }

    pub fn target(&self) -> FiniteRep {
        self.target
    }

    pub fn p(&self) -> u32 {
        self.source.p
    }

    pub fn components(&self) -> &BTreeMap<(i64, i64), FpMat> {
        &self.components
    }

    pub fn support(&self) -> Vec<(i64, i64)> {
        self.components.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }

    pub fn add(&self, o: &Self) -> Result<Self, HeckeError> {
        if (self.source, self.target) != (o.source, o.target) {
            return Err(HeckeError::RepMismatch);
        }
        let mut out = self.clone();
        for (lam, m) in &o.components {
            out.insert(*lam, m.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: u32) -> Self {
        let mut out = Self::zero(self.source, self.target);
        for (lam, m) in &self.components {
            out.insert(*lam, m.scale(c));
        }
        out
    }

    /// `φ(g) = ρ₂(k₂) φ(λ(ϖ)) ρ₁(k₁)` for `g = k₂ λ(ϖ) k₁`.
    pub fn value_at(&self, g: &PAdicMatrix) -> FpMat {
        let cd = cartan_decompose_full(g);
        match self.components.get(&cd.lambda) {
            None => FpMat::zeros(self.p(), self.target.dim(), self.source.dim()),
            Some(m) => self.target.matrix(cd.k2.reduce()).mul(m).mul(&self.source.matrix(cd.k1.reduce())),
        }
    }

    /// Coefficient of the normalized single-coset kernel at `λ`, when the
    /// component is a multiple of it.
    pub fn coefficient(&self, lam: (i64, i64)) -> Option<u32> {
        let Some(m) = self.components.get(&lam) else { return Some(0) };
        let unit = build_kernel(self.source, self.target, lam).ok()?;
        let base = &unit.components[&lam];
        let (i, j) = if lam.0 == lam.1 { (0, 0) } else { (self.target.lowest_index(), self.source.lowest_index()) };
        let c = m.get(i, j);
        (base.scale(c) == *m).then_some(c)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "source": self.source,
            "target": self.target,
            "components": self.components.iter().map(|(l, m)| json!({"lambda": [l.0, l.1], "value": m.to_rows()})).collect::<Vec<_>>(),
        })
    }
}

/// Every dominant `ν` with `K ν(ϖ) K ⊆ K λ(ϖ) K μ(ϖ) K`.
fn product_support(lam: (i64, i64), mu: (i64, i64)) -> Vec<(i64, i64)> {
    let s = lam.0 + lam.1 + mu.0 + mu.1;
    let top = lam.0 + mu.0;
    (0..)
        .map(|i| top - i)
        .take_while(|&e| 2 * e >= s)
        .map(|e| (e, s - e))
        .collect()
}

/// `(φ ∗ ψ)(w) = Σ_{y ∈ G/K} φ(y) ψ(y⁻¹w)`, evaluated at every `ν(ϖ)` that
/// the product of supports can reach.
pub fn convolve(phi: &HeckeKernel, psi: &HeckeKernel) -> Result<HeckeKernel, HeckeError> {
    if psi.target != phi.source {
        return Err(HeckeError::RepMismatch);
    }
    let p = phi.p();
    let mut candidates = BTreeSet::new();
    for l in phi.components.keys() {
        for m in psi.components.keys() {
            candidates.extend(product_support(*l, *m));
        }
    }
    let points: Vec<PAdicMatrix> = phi.components.keys().flat_map(|l| double_coset_points(p, *l)).collect();
    let inverses: Vec<PAdicMatrix> = points.iter().map(|y| y.inverse().unwrap()).collect();
    let values: Vec<((i64, i64), FpMat)> = candidates
        .into_par_iter()
        .map(|nu| {
            let w = PAdicMatrix::torus(p, nu.0, nu.1);
            let mut acc = FpMat::zeros(p, phi.target.dim(), psi.source.dim());
            for (y, yi) in points.iter().zip(&inverses) {
                let right = psi.value_at(&yi.mul(&w));
                if !right.is_zero() {
                    acc = acc.add(&phi.value_at(y).mul(&right));
                }
            }
            (nu, acc)
        })
        .collect();
    let mut out = HeckeKernel::zero(psi.source, phi.target);
    for (nu, m) in values {
        debug_assert!(is_admissible_value(&psi.source, &phi.target, nu, &m));
        out.insert(nu, m);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels_build() {
        let triv = FiniteRep::trivial(3);
        let t = t_lambda(triv, (1, 0)).unwrap();
        assert_eq!(t.components()[&(1, 0)], FpMat::identity(3, 1));
        let steinberg = FiniteRep::new(3, 2, 0).unwrap();
        assert!(build_kernel(triv, steinberg, (1, 0)).is_ok());
        let v1 = FiniteRep::new(3, 1, 0).unwrap();
        let v2 = FiniteRep::new(3, 2, 0).unwrap();
        assert!(matches!(build_kernel(v1, v2, (1, 0)), Err(HeckeError::IncompatibleWeights { .. })));
        assert!(build_kernel(triv, steinberg, (1, 1)).is_err());
    }

    #[test]
    fn central_and_identity() {
        let triv = FiniteRep::trivial(3);
        let c = t_lambda(triv, (1, 1)).unwrap();
        let sq = convolve(&c, &c).unwrap();
        assert_eq!(sq, t_lambda(triv, (2, 2)).unwrap());
        let v = FiniteRep::new(5, 3, 1).unwrap();
        let t = t_lambda(v, (2, 0)).unwrap();
        assert_eq!(convolve(&t, &HeckeKernel::identity(v)).unwrap(), t);
        assert_eq!(convolve(&HeckeKernel::identity(v), &t).unwrap(), t);
    }

    #[test]
    fn spherical_trivial_relations() {
        // T_(1,0)^2 = T_(2,0) + (p+1) T_(1,1) with trivial coefficients
        let p = 3;
        let triv = FiniteRep::trivial(p);
        let t = t_lambda(triv, (1, 0)).unwrap();
        let sq = convolve(&t, &t).unwrap();
        assert_eq!(sq.coefficient((2, 0)), Some(1));
        assert_eq!(sq.coefficient((1, 1)), Some((p + 1) % p));
    }
}
