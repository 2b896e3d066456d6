use modp_core::hecke_gl2::induction::kernel_value_from_induction;
use modp_core::hecke_gl2::padic::{cartan_decompose_full, coset_canonicalize_full, double_coset_size};
use modp_core::hecke_gl2::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use std::collections::BTreeSet;

fn random_k(rng: &mut StdRng, p: u32) -> PAdicMatrix {
    let m = (p as i64).pow(3);
    loop {
        let e: [[i64; 2]; 2] = [[rng.gen_range(0..m), rng.gen_range(0..m)], [rng.gen_range(0..m), rng.gen_range(0..m)]];
        let det = e[0][0] * e[1][1] - e[0][1] * e[1][0];
        if det.rem_euclid(p as i64) != 0 {
            return PAdicMatrix::from_ints(p, e);
        }
    }
}

fn random_point(rng: &mut StdRng, p: u32) -> PAdicMatrix {
    let b = rng.gen_range(-1..=1);
    let a = b + rng.gen_range(0..=2);
    random_k(rng, p).mul(&PAdicMatrix::torus(p, a, b)).mul(&random_k(rng, p))
}

fn sample_kernels(p: u32) -> Vec<HeckeKernel> {
    let mut out = Vec::new();
    for r in 0..p.min(3) {
        for m in 0..2 {
            let v = FiniteRep::new(p, r, m).unwrap();
            for lam in [(1, 0), (2, 0), (1, 1), (2, 1)] {
                out.push(t_lambda(v, lam).unwrap());
            }
        }
    }
    out.push(build_kernel(FiniteRep::trivial(p), FiniteRep::new(p, p - 1, 0).unwrap(), (1, 0)).unwrap());
    out
}

#[test]
fn kernels_are_bi_equivariant() {
    let mut rng = StdRng::seed_from_u64(7);
    for p in [2, 3, 5] {
        for phi in sample_kernels(p) {
            for _ in 0..100 / sample_kernels(p).len().max(1) + 1 {
                let (k1, k2, g) = (random_k(&mut rng, p), random_k(&mut rng, p), random_point(&mut rng, p));
                let lhs = phi.value_at(&k2.mul(&g).mul(&k1));
                let rhs = phi.target().matrix(k2.reduce()).mul(&phi.value_at(&g)).mul(&phi.source().matrix(k1.reduce()));
                assert_eq!(lhs, rhs, "p={p} g={:?}", g.to_strings());
            }
        }
    }
}

#[test]
fn cartan_decomposition_reassembles() {
    let mut rng = StdRng::seed_from_u64(11);
    for p in [2, 3, 5, 7] {
        for _ in 0..100 {
            let g = random_point(&mut rng, p);
            let cd = cartan_decompose_full(&g);
            assert!(cd.lambda.0 >= cd.lambda.1);
            assert!(cd.k1.is_in_k() && cd.k2.is_in_k());
            let t = PAdicMatrix::torus(p, cd.lambda.0, cd.lambda.1);
            assert_eq!(cd.k2.mul(&t).mul(&cd.k1), g);
        }
    }
}

#[test]
fn canonical_cosets_absorb_k() {
    let mut rng = StdRng::seed_from_u64(13);
    for p in [2, 3, 5] {
        for _ in 0..100 {
            let g = random_point(&mut rng, p);
            let k = random_k(&mut rng, p);
            let c = coset_canonicalize_full(&g);
            assert_eq!(coset_canonicalize(&g.mul(&k)), c.rep);
            assert!(c.k.is_in_k());
            assert_eq!(c.rep.mul(&c.k), g);
            assert!(c.rep.is_upper_triangular());
        }
    }
}

#[test]
fn double_coset_points_are_distinct_and_complete() {
    for p in [2, 3, 5] {
        for lam in [(0, 0), (1, 0), (2, 0), (3, 0), (1, -1), (2, 2)] {
            let pts = double_coset_points(p, lam);
            let n = lam.0 - lam.1;
            let expect = if n == 0 { 1 } else { (p as u64).pow(n as u32 - 1) * (p as u64 + 1) };
            assert_eq!(pts.len() as u64, expect);
            assert_eq!(double_coset_size(p, lam), expect);
            let reps: BTreeSet<_> = pts.iter().map(coset_canonicalize).collect();
            assert_eq!(reps.len(), pts.len());
            assert!(pts.iter().all(|g| cartan_decompose(g) == lam));
        }
    }
}

#[test]
fn cosets_under_small_k_orbits() {
    // left translation by K permutes the cosets of K t K / K
    let mut rng = StdRng::seed_from_u64(17);
    let p = 3;
    let pts: BTreeSet<_> = double_coset_points(p, (2, 0)).iter().map(coset_canonicalize).collect();
    for _ in 0..20 {
        let k = random_k(&mut rng, p);
        let moved: BTreeSet<_> = pts.iter().map(|g| coset_canonicalize(&k.mul(g))).collect();
        assert_eq!(moved, pts);
    }
}

#[test]
fn satake_is_multiplicative() {
    for p in [2, 3, 5] {
        for r in 0..p.min(3) {
            let v = FiniteRep::new(p, r, 0).unwrap();
            let gens: Vec<_> = [(1, 0), (1, 1), (2, 1)].iter().map(|&l| t_lambda(v, l).unwrap()).collect();
            for a in &gens {
                for b in &gens {
                    let prod = convolve(a, b).unwrap();
                    let lhs = satake_transform(&prod).unwrap();
                    let rhs = satake_transform(a).unwrap().multiply(&satake_transform(b).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "p={p} r={r}");
                }
            }
        }
    }
}

#[test]
fn satake_ignores_determinant_twists() {
    for p in [3, 5] {
        for r in 0..p {
            let v = FiniteRep::new(p, r, 0).unwrap();
            for lam in [(1, 0), (2, 0), (2, 1)] {
                let a = satake_transform(&t_lambda(v, lam).unwrap()).unwrap();
                let b = satake_transform(&t_lambda(v.twist(), lam).unwrap()).unwrap();
                assert_eq!(a.terms(), b.terms(), "p={p} r={r} lam={lam:?}");
            }
        }
    }
}

#[test]
fn kernels_act_on_induction_consistently() {
    for p in [2, 3] {
        for phi in sample_kernels(p) {
            let (s, t) = (phi.source(), phi.target());
            for i in 0..s.dim() {
                let mut e = vec![0; s.dim()];
                e[i] = 1;
                let one = InductionElement::basic(s, &PAdicMatrix::identity(p), &e);
                assert_eq!(apply_kernel(&phi, &one).unwrap(), apply_kernel_by_formula(&phi, &e));
            }
            for (lam, m) in phi.components() {
                let read = kernel_value_from_induction(
                    |v| apply_kernel(&phi, &InductionElement::basic(s, &PAdicMatrix::identity(p), v)).unwrap(),
                    s,
                    t,
                    *lam,
                );
                assert_eq!(&read, m);
            }
        }
    }
}

#[test]
fn convolution_matches_composition_of_operators() {
    let p = 3;
    let v = FiniteRep::new(p, 1, 0).unwrap();
    let a = t_lambda(v, (1, 0)).unwrap();
    let b = t_lambda(v, (2, 1)).unwrap().add(&t_lambda(v, (1, 1)).unwrap()).unwrap();
    let prod = convolve(&a, &b).unwrap();
    let compose = |x: &[u32]| {
        let one = InductionElement::basic(v, &PAdicMatrix::identity(p), x);
        apply_kernel(&a, &apply_kernel(&b, &one).unwrap()).unwrap()
    };
    for lam in [(3, 1), (2, 2), (2, 1), (3, 0)] {
        let expect = prod.components().get(&lam).cloned().unwrap_or_else(|| FpMat::zeros(p, 2, 2));
        assert_eq!(kernel_value_from_induction(compose, v, v, lam), expect, "lam={lam:?}");
    }
}

#[test]
fn induction_translation_is_equivariant() {
    let mut rng = StdRng::seed_from_u64(19);
    let p = 3;
    let v = FiniteRep::new(p, 2, 1).unwrap();
    let phi = t_lambda(v, (1, 0)).unwrap();
    for _ in 0..10 {
        let h = random_point(&mut rng, p);
        let f = InductionElement::basic(v, &random_point(&mut rng, p), &[1, 2, 0]);
        let lhs = apply_kernel(&phi, &f.translate(&h)).unwrap();
        let rhs = apply_kernel(&phi, &f).unwrap().translate(&h);
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn changing_weight_composite_support() {
    for p in [2, 3, 5] {
        for m in [0, 1] {
            let rep = verify_changing_weight_identity(p, m).unwrap();
            assert!(rep.pass);
            assert_eq!(rep.c, 1);
            assert_eq!(rep.support, vec![[2, 0]]);
        }
    }
}
