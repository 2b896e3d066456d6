//! Split root data given by explicit integer lattices.
//!
//! Characters and cocharacters both live in `Z^n` and pair by the dot
//! product. The simple roots and coroots fix the based root datum; the
//! positive system is generated from them on construction.

use crate::lattice::{self, dot, IntMatrix};
use crate::report::{box_points, LemmaReport};
use crate::subset::Subset;
use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

/// Unvalidated input, matching the JSON layout of datum files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDatum {
    #[serde(default)]
    pub name: String,
    pub rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum Violation {
    #[error("{which} {index} has length {found}, expected {expected}")]
    Length { which: &'static str, index: usize, expected: usize, found: usize },
    #[error("{roots} simple roots but {coroots} simple coroots")]
    CountMismatch { roots: usize, coroots: usize },
    #[error("NonCartan: entry ({i},{j}) of the Cartan matrix is {value}")]
    NonCartan { i: usize, j: usize, value: i64 },
    #[error("InfiniteType: the Cartan matrix is not of finite type")]
    InfiniteType,
    #[error("simple roots are linearly dependent")]
    RootsDependent,
    #[error("simple coroots are linearly dependent")]
    CorootsDependent,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum RootDatumError {
    #[error("invalid root datum: {}", .0.iter().map(|v| v.to_string()).join("; "))]
    Invalid(Vec<Violation>),
    #[error("no integral fundamental weight for simple root {0}")]
    NoIntegralLift(usize),
    #[error("simple root index {index} out of range (semisimple rank {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("vector has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("bad partition: {0}")]
    BadPartition(String),
    #[error("sublattice does not contain the simple coroot {0}")]
    CorootNotContained(usize),
    #[error("isomorphism search would visit {0} candidates")]
    SearchTooLarge(u128),
    #[error("unknown built-in datum {0:?}")]
    UnknownBuiltin(String),
    #[error("cannot parse datum: {0}")]
    Parse(String),
}

/// A positive root together with its coroot and both coordinate vectors in
/// the simple basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PositiveRoot {
    pub root: Vec<i64>,
    pub coroot: Vec<i64>,
    pub root_coords: Vec<i64>,
    pub coroot_coords: Vec<i64>,
}

impl PositiveRoot {
    pub fn height(&self) -> i64 {
        self.root_coords.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootDatum {
    name: String,
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    positive: Vec<PositiveRoot>,
}

/// Checks every invariant and builds the datum, or lists what failed.
pub fn validate_datum(raw: &RawDatum) -> Result<RootDatum, RootDatumError> {
    let n = raw.rank;
    let mut bad = Vec::new();
    if raw.simple_roots.len() != raw.simple_coroots.len() {
        bad.push(Violation::CountMismatch {
            roots: raw.simple_roots.len(),
            coroots: raw.simple_coroots.len(),
        });
    }
    for (which, list) in [("root", &raw.simple_roots), ("coroot", &raw.simple_coroots)] {
        for (index, v) in list.iter().enumerate() {
            if v.len() != n {
                bad.push(Violation::Length { which, index, expected: n, found: v.len() });
            }
        }
    }
    if !bad.is_empty() {
        return Err(RootDatumError::Invalid(bad));
    }
    let l = raw.simple_roots.len();
    let cartan: Vec<Vec<i64>> = (0..l)
        .map(|i| (0..l).map(|j| dot(&raw.simple_roots[i], &raw.simple_coroots[j])).collect())
        .collect();
    for i in 0..l {
        for j in 0..l {
            let a = cartan[i][j];
            let ok = if i == j { a == 2 } else { a <= 0 && ((a == 0) == (cartan[j][i] == 0)) };
            if !ok {
                bad.push(Violation::NonCartan { i, j, value: a });
            }
        }
    }
    if bad.is_empty() && !is_finite_type(&cartan) {
        bad.push(Violation::InfiniteType);
    }
    if lattice::rank(&raw.simple_roots, n) != l {
        bad.push(Violation::RootsDependent);
    }
    if lattice::rank(&raw.simple_coroots, n) != l {
        bad.push(Violation::CorootsDependent);
    }
    if !bad.is_empty() {
        return Err(RootDatumError::Invalid(bad));
    }
    let positive = positive_system(&raw.simple_roots, &raw.simple_coroots, &cartan);
    Ok(RootDatum {
        name: raw.name.clone(),
        rank: n,
        roots: raw.simple_roots.clone(),
        coroots: raw.simple_coroots.clone(),
        cartan,
        positive,
    })
}

/// A generalized Cartan matrix is of finite type exactly when all of its
/// principal minors are positive.
fn is_finite_type(cartan: &[Vec<i64>]) -> bool {
    let l = cartan.len();
    Subset::all(l).filter(|s| !s.is_empty()).all(|s| {
        let ix = s.indices();
        let rows: Vec<Vec<i64>> = ix.iter().map(|&i| ix.iter().map(|&j| cartan[i][j]).collect()).collect();
        IntMatrix::from_rows(ix.len(), &rows).determinant() > 0
    })
}

fn positive_system(roots: &[Vec<i64>], coroots: &[Vec<i64>], cartan: &[Vec<i64>]) -> Vec<PositiveRoot> {
    let l = roots.len();
    let n = roots.first().map_or(0, |r| r.len());
    let unit = |i: usize| (0..l).map(|k| i64::from(k == i)).collect::<Vec<_>>();
    let mut seen: HashSet<Vec<i64>> = HashSet::new();
    let mut queue: VecDeque<(Vec<i64>, Vec<i64>)> = VecDeque::new();
    for i in 0..l {
        seen.insert(unit(i));
        queue.push_back((unit(i), unit(i)));
    }
    let mut found = Vec::new();
    while let Some((c, d)) = queue.pop_front() {
        for j in 0..l {
            if c == unit(j) {
                continue;
            }
            // s_j on the root and on its coroot
            let pr: i64 = (0..l).map(|i| c[i] * cartan[i][j]).sum();
            let pc: i64 = (0..l).map(|i| d[i] * cartan[j][i]).sum();
            let mut c2 = c.clone();
            c2[j] -= pr;
            let mut d2 = d.clone();
            d2[j] -= pc;
            if seen.insert(c2.clone()) {
                queue.push_back((c2, d2));
            }
        }
        found.push((c, d));
        assert!(found.len() <= 10_000, "positive system did not close");
    }
    let combine = |basis: &[Vec<i64>], coeffs: &[i64]| -> Vec<i64> {
        (0..n).map(|k| (0..l).map(|i| coeffs[i] * basis[i][k]).sum()).collect()
    };
    let mut out: Vec<PositiveRoot> = found
        .into_iter()
        .map(|(c, d)| PositiveRoot {
            root: combine(roots, &c),
            coroot: combine(coroots, &d),
            root_coords: c,
            coroot_coords: d,
        })
        .collect();
    out.sort_by(|a, b| a.height().cmp(&b.height()).then_with(|| b.root_coords.cmp(&a.root_coords)));
    out
}

impl RootDatum {
    pub fn from_raw(raw: &RawDatum) -> Result<Self, RootDatumError> {
        validate_datum(raw)
    }

    pub fn from_json(text: &str) -> Result<Self, RootDatumError> {
        let raw: RawDatum = serde_json::from_str(text).map_err(|e| RootDatumError::Parse(e.to_string()))?;
        validate_datum(&raw)
    }

    pub fn to_raw(&self) -> RawDatum {
        RawDatum {
            name: self.name.clone(),
            rank: self.rank,
            simple_roots: self.roots.clone(),
            simple_coroots: self.coroots.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    /// Rank of the lattices `X^*` and `X_*`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of simple roots.
    pub fn semisimple_rank(&self) -> usize {
        self.roots.len()
    }

    pub fn simple_roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn simple_coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn coroot(&self, i: usize) -> &[i64] {
        &self.coroots[i]
    }

    /// `cartan()[i][j] = <alpha_i, alpha_j^vee>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[PositiveRoot] {
        &self.positive
    }

    pub fn all_simple(&self) -> Subset {
        Subset::full(self.semisimple_rank())
    }

    pub fn check_index(&self, i: usize) -> Result<(), RootDatumError> {
        if i < self.semisimple_rank() {
            Ok(())
        } else {
            Err(RootDatumError::IndexOutOfRange { index: i, len: self.semisimple_rank() })
        }
    }

    pub fn check_subset(&self, s: Subset) -> Result<(), RootDatumError> {
        match s.max_index() {
            Some(i) => self.check_index(i),
            None => Ok(()),
        }
    }

    pub fn check_len(&self, v: &[i64]) -> Result<(), RootDatumError> {
        if v.len() == self.rank {
            Ok(())
        } else {
            Err(RootDatumError::WrongLength { expected: self.rank, found: v.len() })
        }
    }

    /// `<lambda, alpha_i>` for every simple root.
    pub fn root_pairings(&self, cochar: &[i64]) -> Vec<i64> {
        self.roots.iter().map(|r| dot(r, cochar)).collect()
    }

    /// `<nu, alpha_i^vee>` for every simple coroot.
    pub fn coroot_pairings(&self, weight: &[i64]) -> Vec<i64> {
        self.coroots.iter().map(|c| dot(weight, c)).collect()
    }

    pub fn is_dominant(&self, cochar: &[i64]) -> bool {
        self.root_pairings(cochar).iter().all(|&x| x >= 0)
    }

    pub fn is_dominant_weight(&self, weight: &[i64]) -> bool {
        self.coroot_pairings(weight).iter().all(|&x| x >= 0)
    }

    pub fn is_antidominant_weight(&self, weight: &[i64]) -> bool {
        self.coroot_pairings(weight).iter().all(|&x| x <= 0)
    }

    /// `X_* ∩ QΠ̌ = ZΠ̌`, tested through the elementary divisors of the
    /// coroot matrix.
    pub fn is_derived_simply_connected(&self) -> bool {
        lattice::is_saturated(&self.coroots, self.rank)
    }

    /// Integer coordinates of `v` in the simple coroots, when `v` lies in
    /// their span.
    pub fn coroot_coordinates(&self, v: &[i64]) -> Option<Vec<i64>> {
        lattice::solve_integer(&self.coroots, v)
    }

    /// `mu <= lambda` in the dominance order.
    pub fn dominance_leq(&self, mu: &[i64], lambda: &[i64]) -> bool {
        let diff: Vec<i64> = lambda.iter().zip(mu).map(|(a, b)| a - b).collect();
        matches!(self.coroot_coordinates(&diff), Some(c) if c.iter().all(|&x| x >= 0))
    }

    /// The weight `omega` with `<omega, beta^vee> = delta` on simple coroots,
    /// reduced modulo the characters orthogonal to all coroots so that the
    /// trailing Hermite pivots land in `[0, pivot)`.
    pub fn fundamental_weight(&self, i: usize) -> Result<Vec<i64>, RootDatumError> {
        self.check_index(i)?;
        let l = self.semisimple_rank();
        let target: Vec<i64> = (0..l).map(|j| i64::from(i == j)).collect();
        let x = lattice::integer_particular_solution(&self.coroots, self.rank, &target)
            .ok_or(RootDatumError::NoIntegralLift(i))?;
        let free = lattice::integer_kernel(&self.coroots, self.rank);
        Ok(lattice::reduce_trailing(&free, &x))
    }

    /// The cocharacter `lambda_alpha`: orthogonal to the other simple roots,
    /// with the least positive value on `alpha`, reduced modulo central
    /// cocharacters in the same way as fundamental weights.
    pub fn probe_cocharacter(&self, i: usize) -> Vec<i64> {
        let others: Vec<Vec<i64>> =
            (0..self.semisimple_rank()).filter(|&j| j != i).map(|j| self.roots[j].clone()).collect();
        let lam = lattice::integer_kernel(&others, self.rank);
        let vals: Vec<Vec<i64>> = lam.iter().map(|k| vec![dot(k, &self.roots[i])]).collect();
        let hf = lattice::hermite(&IntMatrix::from_rows(1, &vals));
        let mut x = vec![0i64; self.rank];
        for (k, b) in lam.iter().enumerate() {
            let c = hf.u.get(0, k) as i64;
            for t in 0..self.rank {
                x[t] += c * b[t];
            }
        }
        debug_assert!(dot(&x, &self.roots[i]) > 0);
        let central = self.orthogonal_sublattice(self.all_simple());
        lattice::reduce_trailing(&central, &x)
    }

    /// Hermite basis of `{lambda : <lambda, beta> = 0 for beta in theta}`.
    pub fn orthogonal_sublattice(&self, theta: Subset) -> Vec<Vec<i64>> {
        let f: Vec<Vec<i64>> = theta.iter().map(|i| self.roots[i].clone()).collect();
        lattice::integer_kernel(&f, self.rank)
    }

    /// `<Π₁, Π̌₂> = 0`.
    pub fn is_orthogonal_pair(&self, a: Subset, b: Subset) -> bool {
        a.iter().all(|i| b.iter().all(|j| self.cartan[i][j] == 0))
    }

    /// All partitions `Π = Π₁ ⊔ Π₂` with `<Π₁, Π̌₂> = 0`, ordered by `Π₁`.
    pub fn orthogonal_partitions(&self) -> Vec<(Subset, Subset)> {
        let all = self.all_simple();
        all.subsets()
            .into_iter()
            .map(|a| (a, all.difference(a)))
            .filter(|&(a, b)| self.is_orthogonal_pair(a, b))
            .collect()
    }

    /// The same roots and coroots seen with cocharacter lattice `Y`, given by
    /// a basis whose span must contain every simple coroot. Characters become
    /// functionals on `Y`.
    pub fn with_cocharacter_sublattice(&self, basis: &[Vec<i64>]) -> Result<RootDatum, RootDatumError> {
        let k = basis.len();
        let mut coroots = Vec::new();
        for (i, c) in self.coroots.iter().enumerate() {
            coroots.push(lattice::solve_integer(basis, c).ok_or(RootDatumError::CorootNotContained(i))?);
        }
        let roots: Vec<Vec<i64>> = self.roots.iter().map(|r| basis.iter().map(|b| dot(r, b)).collect()).collect();
        validate_datum(&RawDatum { name: format!("{}|Y", self.name), rank: k, simple_roots: roots, simple_coroots: coroots })
    }
}

fn partition_check(rd: &RootDatum, p1: Subset, p2: Subset) -> Result<(), RootDatumError> {
    rd.check_subset(p1)?;
    rd.check_subset(p2)?;
    if !p1.is_disjoint(p2) {
        return Err(RootDatumError::BadPartition("the two subsets are not disjoint".into()));
    }
    if p1.union(p2) != rd.all_simple() {
        return Err(RootDatumError::BadPartition("the two subsets do not cover the simple roots".into()));
    }
    if !rd.is_orthogonal_pair(p1, p2) {
        return Err(RootDatumError::BadPartition("roots of the first subset pair nontrivially with coroots of the second".into()));
    }
    Ok(())
}

/// The two constructions of the quotient datum with character lattice
/// `Π̌₂^⊥`: one from the roots of `G` orthogonal to `Π̌₂` in a Smith-adapted
/// basis, one from the Levi roots `Π₁` in a Hermite basis.
pub fn quotient_data(rd: &RootDatum, p1: Subset, p2: Subset) -> Result<(RootDatum, RootDatum), RootDatumError> {
    partition_check(rd, p1, p2)?;
    let n = rd.rank();
    let c2: Vec<Vec<i64>> = p2.iter().map(|i| rd.coroot(i).to_vec()).collect();
    let s = c2.len();

    // G side: unimodular U whose first s columns span the saturation of ZΠ̌₂
    let sat = lattice::saturation(&c2, n);
    let sf = lattice::smith(&IntMatrix::from_rows(n, &sat));
    let u_cols = lattice::unimodular_inverse(&sf.v); // rows are the columns of U
    let u_inv = sf.v.transpose();
    let ortho: Vec<&PositiveRoot> = rd
        .positive_roots()
        .iter()
        .filter(|b| c2.iter().all(|c| dot(&b.root, c) == 0))
        .collect();
    let root_set: HashSet<&Vec<i64>> = ortho.iter().map(|b| &b.root).collect();
    let simple: Vec<&&PositiveRoot> = ortho
        .iter()
        .filter(|b| {
            !ortho.iter().any(|x| {
                let rest: Vec<i64> = b.root.iter().zip(&x.root).map(|(a, c)| a - c).collect();
                root_set.contains(&rest)
            })
        })
        .collect();
    let g_roots: Vec<Vec<i64>> = simple
        .iter()
        .map(|b| (s..n).map(|j| lattice::dot(&b.root, &u_cols.row_i64(j))).collect())
        .collect();
    let g_coroots: Vec<Vec<i64>> = simple
        .iter()
        .map(|b| {
            let y = u_inv.apply(&b.coroot);
            y[s..].to_vec()
        })
        .collect();
    let g_side = validate_datum(&RawDatum {
        name: format!("{}/[M2,M2]", rd.name()),
        rank: n - s,
        simple_roots: g_roots,
        simple_coroots: g_coroots,
    })?;

    // Levi side: Hermite basis of Π̌₂^⊥ in X^*
    let b = lattice::integer_kernel(&c2, n);
    let mut l_roots = Vec::new();
    let mut l_coroots = Vec::new();
    for i in p1.iter() {
        let coords = lattice::solve_integer(&b, rd.root(i))
            .ok_or_else(|| RootDatumError::BadPartition(format!("root {i} is not orthogonal to the second subset")))?;
        l_roots.push(coords);
        l_coroots.push(b.iter().map(|bi| dot(bi, rd.coroot(i))).collect());
    }
    let levi_side = validate_datum(&RawDatum {
        name: format!("{}:M1/L2", rd.name()),
        rank: n - s,
        simple_roots: l_roots,
        simple_coroots: l_coroots,
    })?;
    Ok((g_side, levi_side))
}

/// Whether both constructions of the quotient datum are isomorphic.
pub fn quotient_datum_isomorphic(rd: &RootDatum, p1: Subset, p2: Subset) -> Result<bool, RootDatumError> {
    let (a, b) = quotient_data(rd, p1, p2)?;
    root_data_isomorphic(&a, &b)
}

fn adjugate(m: &IntMatrix) -> IntMatrix {
    let n = m.nrows();
    let mut adj = IntMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut minor = IntMatrix::zeros(n - 1, n - 1);
            for (ri, r) in (0..n).filter(|&r| r != j).enumerate() {
                for (ci, c) in (0..n).filter(|&c| c != i).enumerate() {
                    minor.set(ri, ci, m.get(r, c));
                }
            }
            let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj.set(i, j, sign * minor.determinant());
        }
    }
    adj
}

/// Exact isomorphism test for based root data: a lattice automorphism of
/// `X^*` carrying simple roots to simple roots whose dual carries the
/// matching coroots.
pub fn root_data_isomorphic(d1: &RootDatum, d2: &RootDatum) -> Result<bool, RootDatumError> {
    Ok(find_isomorphism(d1, d2)?.is_some())
}

/// Returns the matrix of an isomorphism on `X^*`, when one exists.
pub fn find_isomorphism(d1: &RootDatum, d2: &RootDatum) -> Result<Option<IntMatrix>, RootDatumError> {
    let n = d1.rank();
    let l = d1.semisimple_rank();
    if n != d2.rank() || l != d2.semisimple_rank() {
        return Ok(None);
    }
    let z1 = lattice::integer_kernel(d1.simple_coroots(), n);
    let z2 = lattice::integer_kernel(d2.simple_coroots(), n);
    let d = z1.len();
    let cols1: Vec<Vec<i64>> = d1.simple_roots().iter().cloned().chain(z1.iter().cloned()).collect();
    let b1 = IntMatrix::from_columns(n, &cols1);
    let det1 = b1.determinant();
    let big_n = det1.abs();
    let adj = adjugate(&b1);
    for sigma in (0..l).permutations(l) {
        if !(0..l).all(|i| (0..l).all(|j| d1.cartan()[i][j] == d2.cartan()[sigma[i]][sigma[j]])) {
            continue;
        }
        let r2: Vec<Vec<i64>> = sigma.iter().map(|&i| d2.root(i).to_vec()).collect();
        let probe: Vec<Vec<i64>> = r2.iter().cloned().chain(z2.iter().cloned()).collect();
        if IntMatrix::from_columns(n, &probe).determinant().abs() != big_n {
            continue;
        }
        let hs = unit_matrices_mod(d, big_n)?;
        for h in hs {
            // columns of Z2 * h
            let zh: Vec<Vec<i64>> = (0..d)
                .map(|c| (0..n).map(|t| (0..d).map(|k| z2[k][t] * h[k][c]).sum()).collect())
                .collect();
            let cols2: Vec<Vec<i64>> = r2.iter().cloned().chain(zh).collect();
            let m2 = IntMatrix::from_columns(n, &cols2);
            let prod = m2.mul(&adj);
            let divisible = (0..n).all(|i| (0..n).all(|j| prod.get(i, j) % det1 == 0));
            if !divisible {
                continue;
            }
            let mut g = IntMatrix::zeros(n, n);
            for i in 0..n {
                for j in 0..n {
                    g.set(i, j, prod.get(i, j) / det1);
                }
            }
            if g.determinant().abs() != 1 {
                continue;
            }
            let gt = g.transpose();
            let ok = (0..l).all(|i| {
                g.apply(d1.root(i)) == d2.root(sigma[i]) && gt.apply(d2.coroot(sigma[i])) == d1.coroot(i)
            });
            if ok {
                return Ok(Some(g));
            }
        }
    }
    Ok(None)
}

/// Integer `d x d` matrices with entries in `[0, modulus)` whose determinant
/// is `±1` modulo `modulus`; for `modulus = 1` just the identity.
fn unit_matrices_mod(d: usize, modulus: i128) -> Result<Vec<Vec<Vec<i64>>>, RootDatumError> {
    let ident: Vec<Vec<i64>> = (0..d).map(|i| (0..d).map(|j| i64::from(i == j)).collect()).collect();
    if d == 0 || modulus == 1 {
        return Ok(vec![ident]);
    }
    let count = (modulus as u128).checked_pow((d * d) as u32).unwrap_or(u128::MAX);
    if count > 2_000_000 {
        return Err(RootDatumError::SearchTooLarge(count));
    }
    let mut out = Vec::new();
    for entries in box_points(d * d, 0, modulus as i64 - 1) {
        let rows: Vec<Vec<i64>> = entries.chunks(d).map(|c| c.to_vec()).collect();
        let det = IntMatrix::from_rows(d, &rows).determinant().rem_euclid(modulus);
        if det == 1 || det == modulus - 1 {
            out.push(rows);
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConeLemma {
    DominanceSquare,
    OrthogonalCone,
}

/// Exhaustive check of one of the two cone lemmas with coroot-cone
/// coefficients in `[0, bound]`.
pub fn verify_cone_lemmas(rd: &RootDatum, kind: ConeLemma, bound: u32) -> LemmaReport {
    match kind {
        ConeLemma::DominanceSquare => verify_dominance_square(rd, bound),
        ConeLemma::OrthogonalCone => verify_orthogonal_cone(rd, bound),
    }
}

fn cone_points<'a>(rd: &'a RootDatum, top: &[i64], bound: u32) -> impl Iterator<Item = (Vec<i64>, Vec<i64>)> + 'a {
    let l = rd.semisimple_rank();
    let top = top.to_vec();
    box_points(l, 0, bound as i64).into_iter().map(move |coef| {
        let mut mu = top.clone();
        for (i, &c) in coef.iter().enumerate() {
            for (t, x) in rd.coroot(i).iter().enumerate() {
                mu[t] -= c * x;
            }
        }
        (coef, mu)
    })
}

/// If `mu` is dominant and `mu <= 2 lambda_alpha` then `mu = 2 lambda_alpha`
/// or `mu <= 2 lambda_alpha - alpha^vee`.
pub fn verify_dominance_square(rd: &RootDatum, bound: u32) -> LemmaReport {
    let parts: Vec<(u64, Vec<serde_json::Value>)> = (0..rd.semisimple_rank())
        .into_par_iter()
        .map(|a| {
            let lam2: Vec<i64> = rd.probe_cocharacter(a).iter().map(|x| 2 * x).collect();
            let lower: Vec<i64> = lam2.iter().zip(rd.coroot(a)).map(|(x, c)| x - c).collect();
            let mut cases = 0;
            let mut cx = Vec::new();
            for (_, mu) in cone_points(rd, &lam2, bound) {
                if !rd.is_dominant(&mu) {
                    continue;
                }
                cases += 1;
                if !(mu == lam2 || rd.dominance_leq(&mu, &lower)) {
                    cx.push(json!({"alpha": a, "lambda": lam2.iter().map(|x| x / 2).collect::<Vec<_>>(), "mu": mu}));
                }
            }
            (cases, cx)
        })
        .collect();
    let cases = parts.iter().map(|p| p.0).sum();
    LemmaReport::new("dominance-square", rd.name(), cases, parts.into_iter().flat_map(|p| p.1).collect())
}

/// For an orthogonal partition `(Π₁, Π₂)` and dominant `lambda ⊥ Π₂`, every
/// dominant `mu <= lambda` has `lambda - mu` in the cone of `Π̌₁` and is
/// itself orthogonal to `Π₂`. The `lambda` range over `Σ c_α λ_α` with
/// `α ∈ Π₁`, `c_α ∈ [0, 2]`.
pub fn verify_orthogonal_cone(rd: &RootDatum, bound: u32) -> LemmaReport {
    let probes: Vec<Vec<i64>> = (0..rd.semisimple_rank()).map(|a| rd.probe_cocharacter(a)).collect();
    let parts: Vec<(u64, Vec<serde_json::Value>)> = rd
        .orthogonal_partitions()
        .into_par_iter()
        .map(|(p1, p2)| {
            let idx = p1.indices();
            let mut cases = 0;
            let mut cx = Vec::new();
            for cs in box_points(idx.len(), 0, 2) {
                let mut lam = vec![0i64; rd.rank()];
                for (&a, &c) in idx.iter().zip(&cs) {
                    for t in 0..rd.rank() {
                        lam[t] += c * probes[a][t];
                    }
                }
                for (coef, mu) in cone_points(rd, &lam, bound) {
                    if !rd.is_dominant(&mu) {
                        continue;
                    }
                    cases += 1;
                    let in_cone = p2.iter().all(|b| coef[b] == 0);
                    let orth = p2.iter().all(|b| dot(rd.root(b), &mu) == 0);
                    if !(in_cone && orth) {
                        cx.push(json!({"pi1": p1, "pi2": p2, "lambda": lam, "mu": mu}));
                    }
                }
            }
            (cases, cx)
        })
        .collect();
    let cases = parts.iter().map(|p| p.0).sum();
    LemmaReport::new("orthogonal-cone", rd.name(), cases, parts.into_iter().flat_map(|p| p.1).collect())
        .with_reading("coroot")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::builtin;

    fn raw(n: usize, r: &[&[i64]], c: &[&[i64]]) -> RawDatum {
        RawDatum {
            name: "t".into(),
            rank: n,
            simple_roots: r.iter().map(|v| v.to_vec()).collect(),
            simple_coroots: c.iter().map(|v| v.to_vec()).collect(),
        }
    }

    #[test]
    fn validation() {
        assert!(validate_datum(&raw(2, &[&[1, -1]], &[&[1, -1]])).is_ok());
        assert!(validate_datum(&raw(1, &[&[1]], &[&[2]])).is_ok());
        let err = validate_datum(&raw(1, &[&[1]], &[&[3]])).unwrap_err();
        assert!(matches!(err, RootDatumError::Invalid(ref v) if matches!(v[0], Violation::NonCartan { .. })));
        // affine A1: Cartan [[2,-2],[-2,2]]
        let err = validate_datum(&raw(2, &[&[2, -2], &[-2, 2]], &[&[1, 0], &[0, 1]])).unwrap_err();
        assert!(matches!(err, RootDatumError::Invalid(ref v) if v.contains(&Violation::InfiniteType)));
    }

    #[test]
    fn simply_connected() {
        assert!(builtin("GL2").unwrap().is_derived_simply_connected());
        assert!(!builtin("PGL2").unwrap().is_derived_simply_connected());
        assert!(builtin("SL2").unwrap().is_derived_simply_connected());
        assert!(!builtin("SO5").unwrap().is_derived_simply_connected());
    }

    #[test]
    fn dominance() {
        let gl2 = builtin("GL2").unwrap();
        assert!(gl2.dominance_leq(&[1, 1], &[2, 0]));
        assert!(!gl2.dominance_leq(&[2, 0], &[1, 1]));
        assert!(gl2.dominance_leq(&[3, 5], &[3, 5]));
    }

    #[test]
    fn canonical_vectors() {
        let gl2 = builtin("GL2").unwrap();
        assert_eq!(gl2.fundamental_weight(0).unwrap(), vec![1, 0]);
        assert_eq!(gl2.probe_cocharacter(0), vec![1, 0]);
        let sl2 = builtin("SL2").unwrap();
        assert_eq!(sl2.fundamental_weight(0).unwrap(), vec![1]);
        assert_eq!(sl2.probe_cocharacter(0), vec![1]);
        let gl3 = builtin("GL3").unwrap();
        assert_eq!(gl3.fundamental_weight(0).unwrap(), vec![1, 0, 0]);
        assert_eq!(gl3.fundamental_weight(1).unwrap(), vec![1, 1, 0]);
        assert_eq!(gl3.probe_cocharacter(0), vec![1, 0, 0]);
        let pgl2 = builtin("PGL2").unwrap();
        assert_eq!(pgl2.fundamental_weight(0), Err(RootDatumError::NoIntegralLift(0)));
    }

    #[test]
    fn orthogonal_sublattices() {
        let gl2 = builtin("GL2").unwrap();
        assert_eq!(gl2.orthogonal_sublattice(Subset::singleton(0)), vec![vec![1, 1]]);
        assert_eq!(gl2.orthogonal_sublattice(Subset::EMPTY), vec![vec![1, 0], vec![0, 1]]);
        let gl3 = builtin("GL3").unwrap();
        assert_eq!(gl3.orthogonal_sublattice(Subset::full(2)), vec![vec![1, 1, 1]]);
    }

    #[test]
    fn positive_root_counts() {
        for (name, count) in [("SL2", 1), ("SL3", 3), ("Sp4", 4), ("SO5", 4), ("G2", 6), ("GL4", 6), ("GL2xGL2", 2)] {
            assert_eq!(builtin(name).unwrap().positive_roots().len(), count, "{name}");
        }
    }

    #[test]
    fn quotient_partitions() {
        let gl2 = builtin("GL2").unwrap();
        assert_eq!(quotient_datum_isomorphic(&gl2, Subset::EMPTY, Subset::singleton(0)), Ok(true));
        assert!(matches!(
            quotient_datum_isomorphic(&gl2, Subset::singleton(0), Subset::singleton(0)),
            Err(RootDatumError::BadPartition(_))
        ));
        let g = builtin("GL2xGL2").unwrap();
        assert_eq!(quotient_datum_isomorphic(&g, Subset::singleton(0), Subset::singleton(1)), Ok(true));
    }

    #[test]
    fn isomorphism_distinguishes_lattices() {
        let sl2 = builtin("SL2").unwrap();
        let pgl2 = builtin("PGL2").unwrap();
        assert_eq!(root_data_isomorphic(&sl2, &pgl2), Ok(false));
        assert_eq!(root_data_isomorphic(&sl2, &sl2), Ok(true));
        let sp4 = builtin("Sp4").unwrap();
        let so5 = builtin("SO5").unwrap();
        assert_eq!(root_data_isomorphic(&sp4, &so5), Ok(false));
        // GL2 in a different basis
        let other = validate_datum(&raw(2, &[&[1, 0]], &[&[2, -1]])).unwrap();
        let gl2 = builtin("GL2").unwrap();
        assert_eq!(root_data_isomorphic(&gl2, &other), Ok(true));
    }

    #[test]
    fn gl2_dominance_square_cases() {
        let r = verify_dominance_square(&builtin("GL2").unwrap(), 6);
        assert_eq!(r.cases, 2);
        assert!(r.passed);
    }
}
