use super::finite_rep::{FiniteRep, FpMat};
use super::kernel::HeckeKernel;
use super::padic::{coset_canonicalize_full, double_coset_points, p_power, PAdicMatrix};
use super::HeckeError;
use num_rational::BigRational;
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// A finite sum `Σ [g, v]` in `c-Ind_K^G V`, where `[g, v]` is supported on
/// `gK` with value `v` at `g`, so that `[gk, v] = [g, kv]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InductionElement {
    rep: FiniteRep,
    terms: BTreeMap<PAdicMatrix, Vec<u32>>,
}

impl InductionElement {
    pub fn zero(rep: FiniteRep) -> Self {
        InductionElement { rep, terms: BTreeMap::new() }
    }

    /// `[g, v]`, rewritten on the canonical representative of `gK`.
    pub fn basic(rep: FiniteRep, g: &PAdicMatrix, v: &[u32]) -> Self {
        let mut e = Self::zero(rep);
        e.add_term(g, v);
        e
    }

    pub fn add_term(&mut self, g: &PAdicMatrix, v: &[u32]) {
        assert_eq!(v.len(), self.rep.dim());
        let c = coset_canonicalize_full(g);
        let w = self.rep.matrix(c.k.reduce()).apply(v);
        let p = self.rep.p;
        let entry = self.terms.entry(c.rep).or_insert_with(|| vec![0; w.len()]);
        for (a, b) in entry.iter_mut().zip(&w) {
            *a = (*a + b) % p;
        }
        self.terms.retain(|_, v| v.iter().any(|&x| x != 0));
    }

    pub fn rep(&self) -> FiniteRep {
        self.rep
    }

    pub fn terms(&self) -> &BTreeMap<PAdicMatrix, Vec<u32>> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The vector attached to the coset `gK`, i.e. the value at `g`.
    pub fn value_at(&self, g: &PAdicMatrix) -> Vec<u32> {
        let c = coset_canonicalize_full(g);
        match self.terms.get(&c.rep) {
            // f(rep·k) = k⁻¹ f(rep)
            Some(v) => self.rep.matrix(c.k.inverse().unwrap().reduce()).apply(v),
            None => vec![0; self.rep.dim()],
        }
    }

    /// Left translation `h · Σ[g, v] = Σ[hg, v]`.
    pub fn translate(&self, h: &PAdicMatrix) -> Self {
        let mut out = Self::zero(self.rep);
        for (g, v) in &self.terms {
            out.add_term(&h.mul(g), v);
        }
        out
    }
}

/// `φ ∗ [1, v] = Σ_{g ∈ (supp φ)⁻¹/K} [g, φ(g⁻¹)v]`, extended by
/// `G`-equivariance to arbitrary elements.
pub fn apply_kernel(phi: &HeckeKernel, f: &InductionElement) -> Result<InductionElement, HeckeError> {
    if f.rep != phi.source() {
        return Err(HeckeError::RepMismatch);
    }
    let p = phi.p();
    let mut out = InductionElement::zero(phi.target());
    for lam in phi.components().keys() {
        for h in double_coset_points(p, (-lam.1, -lam.0)) {
            let m = phi.value_at(&h.inverse().unwrap());
            for (g, v) in f.terms() {
                out.add_term(&g.mul(&h), &m.apply(v));
            }
        }
    }
    Ok(out)
}

/// Representatives of `K / (K ∩ t⁻¹Kt)` for `t = diag(p^a, p^b)`: the
/// lower unipotents `ū_c`, `c mod p^{a−b}`, and `u_{pc'}·w`, `c' mod p^{a−b−1}`,
/// with `w = [[0, −1], [1, 0]]`.
pub fn iwahori_type_representatives(p: u32, lambda: (i64, i64)) -> Vec<PAdicMatrix> {
    let n = lambda.0 - lambda.1;
    if n == 0 {
        return vec![PAdicMatrix::identity(p)];
    }
    let int = |x: u64| BigRational::from_integer(BigInt::from(x));
    let mut reps: Vec<PAdicMatrix> =
        (0..(p as u64).pow(n as u32)).map(|c| PAdicMatrix::lower_unipotent(p, int(c))).collect();
    let w = PAdicMatrix::weyl(p);
    for c in 0..(p as u64).pow(n as u32 - 1) {
        reps.push(PAdicMatrix::upper_unipotent(p, int(c) * p_power(p, 1)).mul(&w));
    }
    reps
}

/// The explicit coset formula `φ ∗ [1, v] = Σ_k [k t⁻¹, φ(t) ρ(k)⁻¹ v]`
/// over the representatives above, one block per component `t = λ(ϖ)`.
pub fn apply_kernel_by_formula(phi: &HeckeKernel, v: &[u32]) -> InductionElement {
    let p = phi.p();
    let mut out = InductionElement::zero(phi.target());
    for (lam, value) in phi.components() {
        let t_inv = PAdicMatrix::torus(p, -lam.0, -lam.1);
        for k in iwahori_type_representatives(p, *lam) {
            let kinv = phi.source().matrix(k.inverse().unwrap().reduce());
            out.add_term(&k.mul(&t_inv), &value.mul(&kinv).apply(v));
        }
    }
    out
}

/// Reads `Φ(λ(ϖ))` off `Φ ∗ [1, e_i]`: its value at `λ(ϖ)⁻¹` applied to `e_i`.
pub fn kernel_value_from_induction(phi_apply: impl Fn(&[u32]) -> InductionElement, source: FiniteRep, target: FiniteRep, lambda: (i64, i64)) -> FpMat {
    let p = source.p;
    let t_inv = PAdicMatrix::torus(p, -lambda.0, -lambda.1);
    let mut m = FpMat::zeros(p, target.dim(), source.dim());
    for i in 0..source.dim() {
        let mut e = vec![0; source.dim()];
        e[i] = 1;
        let col = phi_apply(&e).value_at(&t_inv);
        for (j, x) in col.into_iter().enumerate() {
            m.set(j, i, x);
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hecke_gl2::kernel::{build_kernel, t_lambda};

    #[test]
    fn normalization() {
        let v = FiniteRep::new(3, 2, 1).unwrap();
        let k = PAdicMatrix::from_ints(3, [[2, 1], [1, 1]]);
        let g = PAdicMatrix::torus(3, 1, 0);
        let lhs = InductionElement::basic(v, &g.mul(&k), &[1, 0, 2]);
        let rhs = InductionElement::basic(v, &g, &v.matrix(k.reduce()).apply(&[1, 0, 2]));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs.value_at(&g.mul(&k)), vec![1, 0, 2]);
    }

    #[test]
    fn formula_matches_definition() {
        for p in [2, 3, 5] {
            let v1 = FiniteRep::trivial(p);
            let v2 = FiniteRep::new(p, p - 1, 0).unwrap();
            for phi in [build_kernel(v1, v2, (1, 0)).unwrap(), t_lambda(v2, (2, 0)).unwrap(), t_lambda(v2, (1, 1)).unwrap()] {
                let v: Vec<u32> = (0..phi.source().dim() as u32).map(|i| (i + 1) % p).collect();
                let one = InductionElement::basic(phi.source(), &PAdicMatrix::identity(p), &v);
                assert_eq!(apply_kernel(&phi, &one).unwrap(), apply_kernel_by_formula(&phi, &v));
            }
        }
    }
}
