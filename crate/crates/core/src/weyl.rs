//! Finite Weyl groups of root data.
//!
//! Elements are identified by their action matrix on `X_*`. Generation is
//! breadth-first with generators appended on the right, so the stored word of
//! each element is its lexicographically least reduced word and the element
//! list is ordered by (length, word).

use crate::lattice::IntMatrix;
use crate::report::LemmaReport;
use crate::root_datum::RootDatum;
use crate::subset::Subset;
use rayon::prelude::*;
use serde_json::json;
use std::collections::HashMap;
use std::sync::OnceLock;
use thiserror::Error;

pub const DEFAULT_CAP: usize = 1152;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("Weyl group exceeds the cap of {cap} elements")]
    GroupTooLarge { cap: usize },
    #[error("weight is neither dominant nor anti-dominant")]
    NotDominantOrAntiDominant,
    #[error("weight has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("simple root index {0} out of range")]
    IndexOutOfRange(usize),
}

/// Handle to an element of a particular [`WeylGroup`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylElement(pub usize);

#[derive(Clone, Debug)]
struct Entry {
    cochar: IntMatrix,
    chr: IntMatrix,
    word: Vec<usize>,
    /// image of each positive root: (index, is_positive)
    perm: Vec<(usize, bool)>,
}

#[derive(Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    elems: Vec<Entry>,
    right: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    below: OnceLock<Vec<Vec<u64>>>,
}

fn reflection_on_cochars(rd: &RootDatum, i: usize) -> IntMatrix {
    let n = rd.rank();
    let mut m = IntMatrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            let v = m.get(r, c) - rd.coroot(i)[r] as i128 * rd.root(i)[c] as i128;
            m.set(r, c, v);
        }
    }
    m
}

fn reflection_on_chars(rd: &RootDatum, i: usize) -> IntMatrix {
    let n = rd.rank();
    let mut m = IntMatrix::identity(n);
    for r in 0..n {
        for c in 0..n {
            let v = m.get(r, c) - rd.root(i)[r] as i128 * rd.coroot(i)[c] as i128;
            m.set(r, c, v);
        }
    }
    m
}

impl WeylGroup {
    pub fn generate(rd: &RootDatum) -> Result<Self, WeylError> {
        Self::generate_with_cap(rd, DEFAULT_CAP)
    }

    pub fn generate_with_cap(rd: &RootDatum, cap: usize) -> Result<Self, WeylError> {
        let l = rd.semisimple_rank();
        let n = rd.rank();
        let gens_x: Vec<IntMatrix> = (0..l).map(|i| reflection_on_cochars(rd, i)).collect();
        let gens_c: Vec<IntMatrix> = (0..l).map(|i| reflection_on_chars(rd, i)).collect();
        let pos = rd.positive_roots();
        let root_index: HashMap<Vec<i64>, usize> = pos.iter().enumerate().map(|(k, b)| (b.root.clone(), k)).collect();
        let perm_of = |chr: &IntMatrix| -> Vec<(usize, bool)> {
            pos.iter()
                .map(|b| {
                    let img = chr.apply(&b.root);
                    if let Some(&k) = root_index.get(&img) {
                        (k, true)
                    } else {
                        let neg: Vec<i64> = img.iter().map(|x| -x).collect();
                        (root_index[&neg], false)
                    }
                })
                .collect()
        };
        let mut elems = vec![Entry {
            cochar: IntMatrix::identity(n),
            chr: IntMatrix::identity(n),
            word: vec![],
            perm: (0..pos.len()).map(|k| (k, true)).collect(),
        }];
        let mut index: HashMap<IntMatrix, usize> = HashMap::new();
        index.insert(IntMatrix::identity(n), 0);
        let mut level = vec![0usize];
        while !level.is_empty() {
            let mut next = Vec::new();
            for &x in &level {
                for s in 0..l {
                    let m = elems[x].cochar.mul(&gens_x[s]);
                    if index.contains_key(&m) {
                        continue;
                    }
                    if elems.len() >= cap {
                        return Err(WeylError::GroupTooLarge { cap });
                    }
                    let chr = elems[x].chr.mul(&gens_c[s]);
                    let mut word = elems[x].word.clone();
                    word.push(s);
                    let perm = perm_of(&chr);
                    index.insert(m.clone(), elems.len());
                    next.push(elems.len());
                    elems.push(Entry { cochar: m, chr, word, perm });
                }
            }
            level = next;
        }
        let right: Vec<Vec<usize>> = elems
            .iter()
            .map(|e| (0..l).map(|s| index[&e.cochar.mul(&gens_x[s])]).collect())
            .collect();
        let mut inverse = vec![0; elems.len()];
        for (k, e) in elems.iter().enumerate() {
            let mut x = 0;
            for &s in e.word.iter().rev() {
                x = right[x][s];
            }
            inverse[k] = x;
        }
        Ok(WeylGroup { datum: rd.clone(), elems, right, inverse, below: OnceLock::new() })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = WeylElement> + '_ {
        (0..self.elems.len()).map(WeylElement)
    }

    pub fn identity(&self) -> WeylElement {
        WeylElement(0)
    }

    pub fn simple_reflection(&self, i: usize) -> WeylElement {
        WeylElement(self.right[0][i])
    }

    pub fn word(&self, w: WeylElement) -> &[usize] {
        &self.elems[w.0].word
    }

    pub fn length(&self, w: WeylElement) -> usize {
        self.elems[w.0].word.len()
    }

    /// Action matrix on `X_*`.
    pub fn cocharacter_matrix(&self, w: WeylElement) -> &IntMatrix {
        &self.elems[w.0].cochar
    }

    /// Action matrix on `X^*`.
    pub fn character_matrix(&self, w: WeylElement) -> &IntMatrix {
        &self.elems[w.0].chr
    }

    pub fn from_word(&self, word: &[usize]) -> Result<WeylElement, WeylError> {
        let mut x = 0;
        for &s in word {
            if s >= self.datum.semisimple_rank() {
                return Err(WeylError::IndexOutOfRange(s));
            }
            x = self.right[x][s];
        }
        Ok(WeylElement(x))
    }

    pub fn mul(&self, a: WeylElement, b: WeylElement) -> WeylElement {
        let mut x = a.0;
        for &s in &self.elems[b.0].word {
            x = self.right[x][s];
        }
        WeylElement(x)
    }

    pub fn inverse(&self, w: WeylElement) -> WeylElement {
        WeylElement(self.inverse[w.0])
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, w: WeylElement) -> usize {
        self.elems[w.0].perm.iter().filter(|p| !p.1).count()
    }

    /// Positive roots (by index) that `w` sends to negative roots.
    pub fn inversions(&self, w: WeylElement) -> Vec<usize> {
        self.elems[w.0].perm.iter().enumerate().filter(|(_, p)| !p.1).map(|(k, _)| k).collect()
    }

    /// Is `w(alpha_i)` a positive root?
    pub fn sends_simple_to_positive(&self, w: WeylElement, i: usize) -> bool {
        self.elems[w.0].perm[i].1
    }

    fn below_table(&self) -> &Vec<Vec<u64>> {
        self.below.get_or_init(|| {
            let n = self.order();
            let words = (n + 63) / 64;
            (0..n)
                .into_par_iter()
                .map(|v| {
                    let mut set = vec![0u64; words];
                    set[0] |= 1;
                    for &s in &self.elems[v].word {
                        let snapshot = set.clone();
                        for x in 0..n {
                            if snapshot[x / 64] >> (x % 64) & 1 == 1 {
                                let y = self.right[x][s];
                                set[y / 64] |= 1 << (y % 64);
                            }
                        }
                    }
                    set
                })
                .collect()
        })
    }

    /// Bruhat order `w <= v`: `w` is the product of a subword of the stored
    /// reduced word of `v`.
    pub fn bruhat_leq(&self, w: WeylElement, v: WeylElement) -> bool {
        let t = self.below_table();
        t[v.0][w.0 / 64] >> (w.0 % 64) & 1 == 1
    }

    /// `W(M) = {w : w(Θ) > 0}`.
    pub fn min_coset_reps(&self, theta: Subset) -> Vec<WeylElement> {
        self.elements().filter(|&w| theta.iter().all(|i| self.sends_simple_to_positive(w, i))).collect()
    }

    /// The parabolic subgroup generated by the reflections in `theta`.
    pub fn parabolic_subgroup(&self, theta: Subset) -> Vec<WeylElement> {
        self.elements().filter(|&w| self.word(w).iter().all(|&s| theta.contains(s))).collect()
    }

    /// `w = w0 w1` with `w0` minimal in `w W_Θ` and `w1 ∈ W_Θ`.
    pub fn coset_factorize(&self, w: WeylElement, theta: Subset) -> (WeylElement, WeylElement) {
        let mut w0 = w.0;
        while let Some(i) = theta.iter().find(|&i| !self.elems[w0].perm[i].1) {
            w0 = self.right[w0][i];
        }
        let w0 = WeylElement(w0);
        let w1 = self.mul(self.inverse(w0), w);
        (w0, w1)
    }

    /// `Π_ν = {α : <ν, α̌> = 0}` for dominant or anti-dominant `ν`; the
    /// subgroup it generates is checked against the full stabilizer.
    pub fn stabilizer_subset(&self, nu: &[i64]) -> Result<Subset, WeylError> {
        let rd = &self.datum;
        if nu.len() != rd.rank() {
            return Err(WeylError::WrongLength { expected: rd.rank(), found: nu.len() });
        }
        if !rd.is_dominant_weight(nu) && !rd.is_antidominant_weight(nu) {
            return Err(WeylError::NotDominantOrAntiDominant);
        }
        let pairs = rd.coroot_pairings(nu);
        let theta = Subset::from_indices(&(0..pairs.len()).filter(|&i| pairs[i] == 0).collect::<Vec<_>>());
        assert_eq!(
            self.stabilizer(nu),
            self.parabolic_subgroup(theta),
            "stabilizer is not the standard parabolic subgroup"
        );
        Ok(theta)
    }

    /// Elements fixing the weight `nu`.
    pub fn stabilizer(&self, nu: &[i64]) -> Vec<WeylElement> {
        self.elements().filter(|&w| self.elems[w.0].chr.apply(nu) == nu).collect()
    }
}

/// For `w, v0 ∈ W(M)` and `v1 ∈ W_M`: `v0 v1 >= w` iff `v0 >= w`.
pub fn verify_coset_bruhat_lemma(wg: &WeylGroup, theta: Subset) -> LemmaReport {
    let reps = wg.min_coset_reps(theta);
    let levi = wg.parabolic_subgroup(theta);
    let parts: Vec<(u64, Vec<serde_json::Value>)> = reps
        .par_iter()
        .map(|&w| {
            let mut cases = 0;
            let mut cx = Vec::new();
            for &v0 in &reps {
                let base = wg.bruhat_leq(w, v0);
                for &v1 in &levi {
                    cases += 1;
                    if wg.bruhat_leq(w, wg.mul(v0, v1)) != base {
                        cx.push(json!({"w": wg.word(w), "v0": wg.word(v0), "v1": wg.word(v1)}));
                    }
                }
            }
            (cases, cx)
        })
        .collect();
    let cases = parts.iter().map(|p| p.0).sum();
    LemmaReport::new("coset-bruhat", wg.datum().name(), cases, parts.into_iter().flat_map(|p| p.1).collect())
}
