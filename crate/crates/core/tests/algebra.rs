use modp_core::catalog::builtin;
use modp_core::classification::{changing_weight_applicable, minimize_weight};
use modp_core::root_datum::RootDatum;
use modp_core::satake_param::{dominant_box, SatakeParameter};
use modp_core::scalars::{FieldElement, FiniteField, SmoothCharacter, TorusCharacterDatum};
use modp_core::subset::Subset;
use proptest::prelude::*;

const FIELDS: &[(u32, u32)] = &[(2, 1), (2, 3), (2, 5), (3, 1), (3, 2), (5, 1), (5, 2), (7, 2)];

fn field_and_elements() -> impl Strategy<Value = (FiniteField, FieldElement, FieldElement, FieldElement)> {
    (0..FIELDS.len()).prop_flat_map(|i| {
        let (p, k) = FIELDS[i];
        let f = FiniteField::new(p, k).unwrap();
        let q = f.order();
        (Just(f), 0..q, 0..q, 0..q).prop_map(|(f, a, b, c)| (f, FieldElement(a), FieldElement(b), FieldElement(c)))
    })
}

proptest! {
    #[test]
    fn field_axioms((f, a, b, c) in field_and_elements()) {
        prop_assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
        prop_assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), f.zero());
        prop_assert_eq!(f.sub(f.add(a, b), b), a);
        if a != f.zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            let q = f.order() as i64;
            prop_assert_eq!(f.pow(a, q - 1), Some(f.one()));
            prop_assert_eq!(f.exp(f.log(a).unwrap() as i64), a);
        } else {
            prop_assert_eq!(f.inv(a), None);
        }
    }

    #[test]
    fn frobenius_is_additive((f, a, b, _c) in field_and_elements()) {
        let p = f.characteristic() as i64;
        let fr = |x: FieldElement| if x == f.zero() { x } else { f.pow(x, p).unwrap() };
        prop_assert_eq!(fr(f.add(a, b)), f.add(fr(a), fr(b)));
        prop_assert_eq!(fr(f.mul(a, b)), f.mul(fr(a), fr(b)));
    }

    #[test]
    fn exp_is_a_homomorphism(i in -50i64..50, j in -50i64..50, which in 0..FIELDS.len()) {
        let (p, k) = FIELDS[which];
        let f = FiniteField::new(p, k).unwrap();
        prop_assert_eq!(f.mul(f.exp(i), f.exp(j)), f.exp(i + j));
    }
}

fn torus_character(f: &FiniteField, q: u32, n: usize) -> impl Strategy<Value = TorusCharacterDatum> {
    let f = f.clone();
    let units = f.order() - 1;
    proptest::collection::vec((0i64..(q as i64 - 1).max(1), 0..units), n).prop_map(move |v| {
        let chars = v.iter().map(|&(e, l)| SmoothCharacter::new(&f, q, e, f.exp(l as i64)).unwrap()).collect();
        TorusCharacterDatum::on_standard_lattice(chars, &f, q).unwrap()
    })
}

proptest! {
    #[test]
    fn characters_compose_additively(
        nu in torus_character(&FiniteField::new(3, 2).unwrap(), 3, 3),
        a in proptest::collection::vec(-4i64..=4, 3),
        b in proptest::collection::vec(-4i64..=4, 3),
    ) {
        let s: Vec<i64> = a.iter().zip(&b).map(|(x, y)| x + y).collect();
        let lhs = nu.compose_with_cocharacter(&s).unwrap();
        let rhs = nu.compose_with_cocharacter(&a).unwrap().mul(&nu.compose_with_cocharacter(&b).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn restriction_agrees_with_composition(
        nu in torus_character(&FiniteField::new(5, 1).unwrap(), 5, 3),
        a in proptest::collection::vec(-3i64..=3, 2),
    ) {
        let sub = vec![vec![1, 1, 1], vec![1, -1, 0]];
        let r = nu.restrict(sub.clone()).unwrap();
        let y: Vec<i64> = (0..3).map(|t| a[0] * sub[0][t] + a[1] * sub[1][t]).collect();
        prop_assert_eq!(r.compose_with_cocharacter(&y).unwrap(), nu.compose_with_cocharacter(&y).unwrap());
    }
}

fn satake_datum() -> impl Strategy<Value = (RootDatum, FiniteField, u32, Vec<u32>)> {
    let names = ["GL2", "SL2", "PGL2", "GL3", "SL3", "Sp4", "G2", "GL2xGL2"];
    (0..names.len(), 0..2usize, proptest::collection::vec(0u32..1 << 20, 4)).prop_map(move |(i, fi, vals)| {
        let rd = builtin(names[i]).unwrap();
        let f = [FiniteField::new(3, 1), FiniteField::new(2, 2)][fi].clone().unwrap();
        let levi = vals[0] % (1 << rd.semisimple_rank());
        (rd, f, levi, vals)
    })
}

fn parameter(rd: &RootDatum, f: &FiniteField, levi: u32, vals: &[u32]) -> SatakeParameter {
    let levi = Subset(levi);
    let n = rd.orthogonal_sublattice(levi).len();
    let units = f.order() - 1;
    let values = (0..n).map(|i| f.exp((vals[(i + 1) % vals.len()] % units) as i64)).collect();
    SatakeParameter::new(rd, f, levi, values).unwrap()
}

proptest! {
    #[test]
    fn satake_parameters_are_multiplicative((rd, f, levi, vals) in satake_datum()) {
        let chi = parameter(&rd, &f, levi, &vals);
        prop_assert!(chi.is_algebra_homomorphism_consistent(2));
    }

    #[test]
    fn tensor_evaluates_pointwise((rd, f, levi, vals) in satake_datum(), other in 0u32..16) {
        let a = parameter(&rd, &f, levi, &vals);
        let b = parameter(&rd, &f, other % (1 << rd.semisimple_rank()), &[other, other + 3, 7, 11]);
        let t = a.tensor(&b).unwrap();
        prop_assert_eq!(t.levi(), a.levi().union(b.levi()));
        for lam in dominant_box(&rd, 2) {
            prop_assert_eq!(t.evaluate(&lam).unwrap(), f.mul(a.evaluate(&lam).unwrap(), b.evaluate(&lam).unwrap()));
        }
    }
}

fn gl_weight(n: usize, q: i64) -> impl Strategy<Value = Vec<i64>> {
    (-3i64..=3, proptest::collection::vec(0..q, n - 1)).prop_map(|(start, gaps)| {
        let mut v = vec![start];
        for g in gaps {
            let last = *v.last().unwrap();
            v.push(last + g);
        }
        v
    })
}

fn check_minimization(rd: &RootDatum, nu: &[i64], chi: &SatakeParameter, q: u32) -> Result<(), TestCaseError> {
    let (end, steps) = minimize_weight(rd, nu, chi, q).unwrap();
    let qi = q as i64;
    prop_assert!(rd.coroot_pairings(&end).iter().all(|&x| -qi < x && x <= 0));
    for a in 0..rd.semisimple_rank() {
        prop_assert!(!changing_weight_applicable(rd, &end, a, chi));
    }
    let mut cur = nu.to_vec();
    let mut used = Subset::EMPTY;
    for s in &steps {
        prop_assert!(changing_weight_applicable(rd, &cur, s.alpha, chi));
        prop_assert!(!used.contains(s.alpha));
        used = used.union(Subset::singleton(s.alpha));
        let omega = rd.fundamental_weight(s.alpha).unwrap();
        cur = cur.iter().zip(&omega).map(|(x, w)| x - (qi - 1) * w).collect();
        prop_assert_eq!(&cur, &s.weight);
    }
    prop_assert_eq!(&cur, &end);
    prop_assert!(minimize_weight(rd, &end, chi, q).unwrap().1.is_empty());
    Ok(())
}

proptest! {
    #[test]
    fn weight_minimization_gl2(nu in gl_weight(2, 5), levi in 0u32..2, vals in proptest::collection::vec(0u32..4, 4)) {
        let rd = builtin("GL2").unwrap();
        let f = FiniteField::new(5, 1).unwrap();
        check_minimization(&rd, &nu, &parameter(&rd, &f, levi, &vals), 5)?;
    }

    #[test]
    fn weight_minimization_gl3(nu in gl_weight(3, 3), levi in 0u32..4, vals in proptest::collection::vec(0u32..8, 4)) {
        let rd = builtin("GL3").unwrap();
        let f = FiniteField::new(3, 2).unwrap();
        check_minimization(&rd, &nu, &parameter(&rd, &f, levi, &vals), 3)?;
    }
}
