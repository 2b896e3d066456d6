//! The acceptance suite as plain functions, shared by the `acceptance` test
//! target and the `selftest` CLI verb.

use crate::catalog::{all_builtin, builtin, builtin_up_to_rank};
use crate::classification::{enumerate_parameters, pi_sigma, principal_series_analyze, SupersingularDatum};
use crate::hecke_gl2::{satake_transform, t_lambda, verify_changing_weight_identity, FiniteRep};
use crate::root_datum::{quotient_datum_isomorphic, verify_cone_lemmas, ConeLemma, RootDatum};
use crate::satake_param::laurent::{brute_force_laurent_factor_search, LaurentPolynomial};
use crate::satake_param::{dominant_box, parameterize_from_oracle, tau_coroot_minus_one_irreducible, SatakeParameter};
use crate::scalars::{FiniteField, SmoothCharacter, TorusCharacterDatum};
use crate::subset::Subset;
use crate::weyl::{verify_coset_bruhat_lemma, WeylGroup};
use itertools::Itertools;
use rayon::prelude::*;
use serde::Serialize;
use std::collections::BTreeSet;
use std::time::Instant;

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub millis: u128,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        format!(
            "criterion {:>2} [{}] {}: {} ({} ms)",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.detail,
            self.millis
        )
    }
}

fn timed(id: u32, name: &'static str, limit_ms: Option<u128>, f: impl FnOnce() -> (bool, String)) -> CriterionResult {
    let start = Instant::now();
    let (ok, mut detail) = f();
    let millis = start.elapsed().as_millis();
    let in_time = limit_ms.is_none_or(|l| millis < l);
    if !in_time {
        detail.push_str(&format!("; over the {} ms budget", limit_ms.unwrap()));
    }
    CriterionResult { id, name, passed: ok && in_time, detail, millis }
}

pub fn criterion_1() -> CriterionResult {
    timed(1, "changing-weight convolution identity", Some(60_000), || {
        let cases: Vec<(u32, i64)> = [2, 3, 5].into_iter().cartesian_product(0..2).collect();
        let results: Vec<_> = cases.par_iter().map(|&(p, m)| (p, m, verify_changing_weight_identity(p, m))).collect();
        let mut ok = true;
        let mut parts = Vec::new();
        for (p, m, r) in results {
            match r {
                Ok(rep) => parts.push(format!("p={p} m={m} c={}", rep.c)),
                Err(e) => {
                    ok = false;
                    parts.push(format!("p={p} m={m} failed: {e}"));
                }
            }
        }
        (ok, parts.join(", "))
    })
}

pub fn criterion_2() -> CriterionResult {
    timed(2, "Satake leading term of T_lambda", None, || {
        let gl2 = builtin("GL2").unwrap();
        let mut checked = 0;
        let mut bad = Vec::new();
        for p in [2u32, 3, 5] {
            for r in 0..p {
                for m in 0..(p - 1).max(1) {
                    let v = FiniteRep::new(p, r, m as i64).unwrap();
                    for lam in [(1, 0), (1, 1), (2, 0)] {
                        checked += 1;
                        let s = satake_transform(&t_lambda(v, lam).unwrap());
                        let ok = s.as_ref().is_ok_and(|s| {
                            let top = vec![lam.0, lam.1];
                            s.coefficient(&top) == s.field().one()
                                && s.support().iter().all(|mu| gl2.is_dominant(mu) && gl2.dominance_leq(mu, &top))
                        });
                        if !ok {
                            bad.push(format!("p={p} V=({r},{m}) λ={lam:?}"));
                        }
                    }
                }
            }
        }
        (bad.is_empty(), format!("{checked} transforms over p in {{2,3,5}} and every Sym^r⊗det^m; failures: {bad:?}"))
    })
}

pub fn criterion_3() -> CriterionResult {
    timed(3, "cone lemmas on all catalog data, bound 6", Some(10_000), || {
        let data = all_builtin();
        let reports: Vec<_> = data
            .par_iter()
            .flat_map(|rd| [ConeLemma::DominanceSquare, ConeLemma::OrthogonalCone].into_par_iter().map(move |k| verify_cone_lemmas(rd, k, 6)))
            .collect();
        let cases: u64 = reports.iter().map(|r| r.cases).sum();
        let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| format!("{}/{}", r.datum, r.lemma)).collect();
        (failed.is_empty(), format!("{} data, {cases} cases, failures: {failed:?}", data.len()))
    })
}

pub fn criterion_4() -> CriterionResult {
    timed(4, "Bruhat coset lemma for every subset on every datum", Some(10_000), || {
        let data = all_builtin();
        let reports: Vec<_> = data
            .par_iter()
            .flat_map(|rd| {
                let wg = WeylGroup::generate(rd).unwrap();
                rd.all_simple().subsets().into_par_iter().map(move |t| verify_coset_bruhat_lemma(&wg, t)).collect::<Vec<_>>()
            })
            .collect();
        let cases: u64 = reports.iter().map(|r| r.cases).sum();
        let failed: Vec<String> = reports.iter().filter(|r| !r.passed).map(|r| r.datum.clone()).collect();
        (failed.is_empty(), format!("{} reports, {cases} cases, failures: {failed:?}", reports.len()))
    })
}

/// Every Satake parameter of `rd` over `F_q`: each Levi with `χ_M` ranging
/// over `(F_q^×)^{rank X_{M,*,0}}`.
pub fn all_parameters(rd: &RootDatum, field: &FiniteField) -> Vec<SatakeParameter> {
    let units: Vec<_> = field.units().collect();
    rd.all_simple()
        .subsets()
        .into_iter()
        .flat_map(|levi| {
            let k = rd.orthogonal_sublattice(levi).len();
            if k == 0 {
                return vec![(levi, vec![])];
            }
            (0..k).map(|_| units.clone()).multi_cartesian_product().map(|vals| (levi, vals)).collect::<Vec<_>>()
        })
        .map(|(levi, vals)| SatakeParameter::new(rd, field, levi, vals).unwrap())
        .collect()
}

const ROUND_TRIP_ORDERS: [u32; 4] = [2, 3, 4, 5];

pub fn criterion_5() -> CriterionResult {
    timed(5, "parameter round trip", None, || {
        let mut total = 0usize;
        let mut bad = Vec::new();
        for rd in builtin_up_to_rank(2) {
            for q in ROUND_TRIP_ORDERS {
                let field = FiniteField::of_order(q).unwrap();
                let params = all_parameters(&rd, &field);
                total += params.len();
                let fails = params
                    .par_iter()
                    .filter(|chi| {
                        let oracle = |l: &[i64]| chi.evaluate(l).unwrap();
                        parameterize_from_oracle(&rd, &field, &oracle).ok().as_ref() != Some(*chi)
                    })
                    .count();
                if fails > 0 {
                    bad.push(format!("{} q={q}: {fails}", rd.name()));
                }
            }
        }
        (bad.is_empty(), format!("{total} parameters recovered exactly; failures: {bad:?}"))
    })
}

pub const TENSOR_RADIUS: i64 = 4;

pub fn criterion_6() -> CriterionResult {
    timed(6, "tensor law", None, || {
        let mut pairs = 0usize;
        let mut refuting_intersection = 0usize;
        let mut bad = Vec::new();
        for rd in builtin_up_to_rank(2) {
            let pts = dominant_box(&rd, TENSOR_RADIUS);
            for q in ROUND_TRIP_ORDERS {
                let field = FiniteField::of_order(q).unwrap();
                let params = all_parameters(&rd, &field);
                let outcome: Vec<(bool, bool)> = params
                    .par_iter()
                    .flat_map_iter(|a| params.iter().map(move |b| (a, b)))
                    .map(|(a, b)| {
                        let t = a.tensor(b).unwrap();
                        let product = |l: &[i64]| field.mul(a.evaluate(l).unwrap(), b.evaluate(l).unwrap());
                        let pointwise = pts.iter().all(|l| t.evaluate(l).unwrap() == product(l));
                        let recovered = parameterize_from_oracle(&rd, &field, &product).unwrap();
                        let ok = pointwise && recovered == t && t.levi() == a.levi().union(b.levi());
                        (ok, recovered.levi() != a.levi().intersection(b.levi()))
                    })
                    .collect();
                pairs += outcome.len();
                refuting_intersection += outcome.iter().filter(|o| o.1).count();
                let fails = outcome.iter().filter(|o| !o.0).count();
                if fails > 0 {
                    bad.push(format!("{} q={q}: {fails}", rd.name()));
                }
            }
        }
        (
            bad.is_empty(),
            format!(
                "{pairs} pairs, Levi = union, pointwise on radius {TENSOR_RADIUS}; {refuting_intersection} pairs refute the intersection reading; failures: {bad:?}"
            ),
        )
    })
}

pub fn criterion_7() -> CriterionResult {
    timed(7, "irreducibility of tau_coroot - 1", None, || {
        let named: Vec<(&str, bool)> = vec![("SL2", true), ("GL2", true), ("PGL2", false)];
        let mut bad = Vec::new();
        for (name, want) in &named {
            let rd = builtin(name).unwrap();
            if tau_coroot_minus_one_irreducible(&rd, 0).unwrap() != *want {
                bad.push(name.to_string());
            }
        }
        let field = FiniteField::new(3, 1).unwrap();
        let mut checked = 0;
        for rd in builtin_up_to_rank(2) {
            for a in 0..rd.semisimple_rank() {
                checked += 1;
                let h = LaurentPolynomial::tau_minus_one(&field, rd.coroot(a));
                let searched = brute_force_laurent_factor_search(&h, 2);
                let criterion = tau_coroot_minus_one_irreducible(&rd, a).unwrap();
                if !matches!(searched, Ok(ref s) if s.is_none() == criterion) {
                    bad.push(format!("{} α{a}", rd.name()));
                }
            }
        }
        (bad.is_empty(), format!("SL2/GL2 irreducible, PGL2 reducible; {checked} coroots agree with the search; failures: {bad:?}"))
    })
}

/// `ν ∘ α̌` trivial, computed straight from the standard-basis characters
/// of `GL_n` (where `α̌_i = e_i − e_{i+1}`).
fn gl_trivial_coroots(nu: &TorusCharacterDatum) -> usize {
    nu.chars().windows(2).filter(|w| w[0] == w[1]).count()
}

fn all_torus_characters(n: usize, field: &FiniteField, q: u32) -> Vec<TorusCharacterDatum> {
    let singles: Vec<SmoothCharacter> = (0..q as i64 - 1)
        .cartesian_product(field.units().collect::<Vec<_>>())
        .map(|(e, pi)| SmoothCharacter::new(field, q, e, pi).unwrap())
        .collect();
    (0..n)
        .map(|_| singles.clone())
        .multi_cartesian_product()
        .map(|chars| TorusCharacterDatum::on_standard_lattice(chars, field, q).unwrap())
        .collect()
}

pub fn criterion_8() -> CriterionResult {
    timed(8, "principal series length 2^C", None, || {
        let mut total = 0;
        let mut bad = Vec::new();
        for name in ["GL2", "GL3"] {
            let rd = builtin(name).unwrap();
            for q in [3u32, 5] {
                let field = FiniteField::new(q, 1).unwrap();
                let chars = all_torus_characters(rd.rank(), &field, q);
                total += chars.len();
                let fails = chars
                    .par_iter()
                    .filter(|nu| {
                        let Ok(ps) = principal_series_analyze(&rd, nu) else { return true };
                        let c = gl_trivial_coroots(nu);
                        let keys: BTreeSet<_> = ps.factors.iter().map(|d| d.key()).collect();
                        !(ps.c == c && ps.length == 1 << c && ps.factors.len() == 1 << c && keys.len() == ps.factors.len())
                    })
                    .count();
                if fails > 0 {
                    bad.push(format!("{name} q={q}: {fails}"));
                }
            }
        }
        (bad.is_empty(), format!("{total} characters of GL2/GL3 over q in {{3,5}}; failures: {bad:?}"))
    })
}

/// Six supersingular data for `GL₃` over `F₃`, with the expected `|Π_σ|`.
pub fn gl3_fixture() -> (RootDatum, Vec<(SupersingularDatum, usize)>) {
    let gl3 = builtin("GL3").unwrap();
    let f = FiniteField::new(3, 1).unwrap();
    let ch = |e: i64, pi: i64| SmoothCharacter::new(&f, 3, e, f.from_int(pi)).unwrap();
    let torus = |cs: Vec<SmoothCharacter>| TorusCharacterDatum::on_standard_lattice(cs, &f, 3).unwrap();
    let mut data = vec![
        (SupersingularDatum::torus(&gl3, &torus(vec![ch(0, 1), ch(0, 1), ch(0, 1)]), "torus-trivial").unwrap(), 2),
        (SupersingularDatum::torus(&gl3, &torus(vec![ch(0, 1), ch(0, 1), ch(0, 2)]), "torus-a1").unwrap(), 1),
        (SupersingularDatum::torus(&gl3, &torus(vec![ch(0, 1), ch(0, 2), ch(1, 2)]), "torus-generic").unwrap(), 0),
    ];
    for (levi, label) in [(Subset::singleton(0), "levi-a1"), (Subset::singleton(1), "levi-a2"), (gl3.all_simple(), "supersingular-G")] {
        let omega = TorusCharacterDatum::trivial(gl3.orthogonal_sublattice(levi), &f, 3).unwrap();
        data.push((SupersingularDatum::new(&gl3, levi, omega, label).unwrap(), 0));
    }
    (gl3, data)
}

pub fn criterion_9() -> CriterionResult {
    timed(9, "classification enumeration on the GL3 fixture", None, || {
        let (gl3, fixture) = gl3_fixture();
        let predicted: usize = fixture.iter().map(|(_, k)| 1usize << k).sum();
        let sizes_ok = fixture.iter().all(|(d, k)| pi_sigma(&gl3, d).map(|s| s.len()) == Ok(*k));
        let data: Vec<SupersingularDatum> = fixture.into_iter().map(|(d, _)| d).collect();
        match enumerate_parameters(&gl3, &data) {
            Ok(e) => (
                sizes_ok && e.entries.len() == predicted && e.injective(),
                format!("{} parameters (predicted {predicted}), {} collisions", e.entries.len(), e.collisions.len()),
            ),
            Err(err) => (false, err.to_string()),
        }
    })
}

pub fn criterion_10() -> CriterionResult {
    timed(10, "quotient root-datum isomorphism", None, || {
        let mut checked = 0;
        let mut bad = Vec::new();
        for rd in all_builtin() {
            for (p1, p2) in rd.orthogonal_partitions() {
                checked += 1;
                if quotient_datum_isomorphic(&rd, p1, p2) != Ok(true) {
                    bad.push(format!("{} {:?}|{:?}", rd.name(), p1, p2));
                }
            }
        }
        (bad.is_empty(), format!("{checked} orthogonal partitions over the catalog; failures: {bad:?}"))
    })
}

pub fn run_all() -> Vec<CriterionResult> {
    vec![
        criterion_1(),
        criterion_2(),
        criterion_3(),
        criterion_4(),
        criterion_5(),
        criterion_6(),
        criterion_7(),
        criterion_8(),
        criterion_9(),
        criterion_10(),
    ]
}
