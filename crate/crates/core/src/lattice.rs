//! Exact integer lattice routines.
//!
//! Everything here works over `Z` with `i128` intermediates: row Hermite
//! normal form, Smith normal form with both transforms, saturated kernels,
//! unique rational/integer solves and canonical residues modulo a sublattice.
//! Matrices are small (rank at most a handful), so the algorithms favour
//! clarity over asymptotics.

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use std::fmt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i128>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries((0..self.rows).map(|i| self.row(i).to_vec()))
            .finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds a matrix from rows; `cols` is needed so that empty row lists
    /// still carry a width.
    pub fn from_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, &x) in r.iter().enumerate() {
                m.set(i, j, x as i128);
            }
        }
        m
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, cols: &[Vec<i64>]) -> Self {
        Self::from_rows(rows, cols).transpose()
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i128 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: i128) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[i128] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_i64(&self, i: usize) -> Vec<i64> {
        self.row(i).iter().map(|&x| narrow(x)).collect()
    }

    pub fn rows_i64(&self) -> Vec<Vec<i64>> {
        (0..self.rows).map(|i| self.row_i64(i)).collect()
    }

    pub fn column_i64(&self, j: usize) -> Vec<i64> {
        (0..self.rows).map(|i| narrow(self.get(i, j))).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j) + a * other.get(k, j);
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| narrow(self.row(i).iter().zip(v).map(|(&a, &b)| a * b as i128).sum()))
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row(&mut self, dst: usize, src: usize, k: i128) {
        if k == 0 {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(dst, j) + k * self.get(src, j);
            self.set(dst, j, v);
        }
    }

    /// col[dst] += k * col[src]
    fn add_col(&mut self, dst: usize, src: usize, k: i128) {
        if k == 0 {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, dst) + k * self.get(i, src);
            self.set(i, dst, v);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> i128 {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return 1;
        }
        let mut a = self.clone();
        let mut sign = 1i128;
        let mut prev = 1i128;
        for k in 0..n - 1 {
            if a.get(k, k) == 0 {
                match (k + 1..n).find(|&r| a.get(r, k) != 0) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return 0,
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k);
        }
        sign * a.get(n - 1, n - 1)
    }
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("lattice entry exceeds i64 range")
}

/// Row Hermite normal form `h = u * a`.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// Row-style Hermite normal form: `h` is in echelon form, pivots positive,
/// entries above each pivot reduced into `[0, pivot)`, zero rows last.
pub fn hermite(a: &IntMatrix) -> Hermite {
    let m = a.nrows();
    let n = a.ncols();
    let mut h = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut pr = 0;
    let mut pivots = Vec::new();
    for col in 0..n {
        if pr == m {
            break;
        }
        loop {
            let best = (pr..m)
                .filter(|&r| h.get(r, col) != 0)
                .min_by_key(|&r| h.get(r, col).abs());
            let Some(best) = best else { break };
            h.swap_rows(pr, best);
            u.swap_rows(pr, best);
            let piv = h.get(pr, col);
            let mut clean = true;
            for r in pr + 1..m {
                let x = h.get(r, col);
                if x != 0 {
                    let q = Integer::div_floor(&x, &piv);
                    h.add_row(r, pr, -q);
                    u.add_row(r, pr, -q);
                    if h.get(r, col) != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                break;
            }
        }
        if h.get(pr, col) == 0 {
            continue;
        }
        if h.get(pr, col) < 0 {
            h.negate_row(pr);
            u.negate_row(pr);
        }
        let piv = h.get(pr, col);
        for r in 0..pr {
            let q = Integer::div_floor(&h.get(r, col), &piv);
            h.add_row(r, pr, -q);
            u.add_row(r, pr, -q);
        }
        pivots.push(col);
        pr += 1;
    }
    Hermite { h, u, rank: pr, pivots }
}

/// Smith normal form `d = u * a * v` with `d` diagonal and each diagonal
/// entry dividing the next.
#[derive(Clone, Debug)]
pub struct Smith {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub rank: usize,
}

impl Smith {
    /// Nonzero elementary divisors in order.
    pub fn divisors(&self) -> Vec<i128> {
        (0..self.rank).map(|i| self.d.get(i, i)).collect()
    }
}

pub fn smith(a: &IntMatrix) -> Smith {
    let m = a.nrows();
    let n = a.ncols();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);
    let mut t = 0;
    while t < m.min(n) {
        // smallest nonzero entry of the trailing block becomes the pivot
        let mut best: Option<(usize, usize)> = None;
        for i in t..m {
            for j in t..n {
                let x = d.get(i, j);
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < d.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        d.swap_rows(t, bi);
        u.swap_rows(t, bi);
        d.swap_cols(t, bj);
        v.swap_cols(t, bj);
        loop {
            let piv = d.get(t, t);
            let mut dirty = false;
            for i in t + 1..m {
                let q = Integer::div_floor(&d.get(i, t), &piv);
                d.add_row(i, t, -q);
                u.add_row(i, t, -q);
                if d.get(i, t) != 0 {
                    dirty = true;
                }
            }
            for j in t + 1..n {
                let q = Integer::div_floor(&d.get(t, j), &piv);
                d.add_col(j, t, -q);
                v.add_col(j, t, -q);
                if d.get(t, j) != 0 {
                    dirty = true;
                }
            }
            if dirty {
                // move the smallest remainder into the pivot slot and retry
                let mut best = (t, t);
                for i in t..m {
                    if d.get(i, t) != 0 && d.get(i, t).abs() < d.get(best.0, best.1).abs() {
                        best = (i, t);
                    }
                }
                for j in t..n {
                    if d.get(t, j) != 0 && d.get(t, j).abs() < d.get(best.0, best.1).abs() {
                        best = (t, j);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            // divisibility of the trailing block
            let piv = d.get(t, t);
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| d.get(i, j) % piv != 0);
            match offender {
                Some((i, _)) => {
                    d.add_row(t, i, 1);
                    u.add_row(t, i, 1);
                }
                None => break,
            }
        }
        if d.get(t, t) < 0 {
            d.negate_row(t);
            u.negate_row(t);
        }
        t += 1;
    }
    // `t` counts pivots; a zero trailing block stops the loop early.
    let rank = (0..m.min(n)).take_while(|&i| d.get(i, i) != 0).count();
    // make sure the unused diagonal region is genuinely zero
    debug_assert!((rank..m).all(|i| (rank..n).all(|j| d.get(i, j) == 0)));
    let _ = t;
    Smith { d, u, v, rank }
}

/// Rank of the row span.
pub fn rank(rows: &[Vec<i64>], cols: usize) -> usize {
    hermite(&IntMatrix::from_rows(cols, rows)).rank
}

/// Canonical (Hermite-reduced) basis of the row span, zero rows dropped.
pub fn hermite_basis(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    let hf = hermite(&IntMatrix::from_rows(cols, rows));
    (0..hf.rank).map(|i| hf.h.row_i64(i)).collect()
}

/// Saturated integer kernel `{x in Z^n : <f, x> = 0 for every row f}`,
/// returned as a Hermite-reduced basis.
pub fn integer_kernel(functionals: &[Vec<i64>], n: usize) -> Vec<Vec<i64>> {
    let a_t = IntMatrix::from_rows(n, functionals).transpose();
    let hf = hermite(&a_t);
    let raw: Vec<Vec<i64>> = (hf.rank..n).map(|i| hf.u.row_i64(i)).collect();
    hermite_basis(&raw, n)
}

/// True when the row lattice equals its rational saturation inside `Z^n`
/// (all elementary divisors are 1). Rows are assumed independent.
pub fn is_saturated(rows: &[Vec<i64>], cols: usize) -> bool {
    let sf = smith(&IntMatrix::from_rows(cols, rows));
    sf.rank == rows.len() && sf.divisors().iter().all(|&d| d == 1)
}

/// Saturation `Q<rows> ∩ Z^n`, as a Hermite basis.
pub fn saturation(rows: &[Vec<i64>], cols: usize) -> Vec<Vec<i64>> {
    // the double orthogonal complement is the saturation
    let perp = integer_kernel(rows, cols);
    integer_kernel(&perp, cols)
}

/// Same row lattice?
pub fn same_lattice(a: &[Vec<i64>], b: &[Vec<i64>], cols: usize) -> bool {
    hermite_basis(a, cols) == hermite_basis(b, cols)
}

pub type Rational = Ratio<i128>;

/// Unique rational coordinates of `target` in the span of the independent
/// vectors `basis`, or `None` when `target` is outside the rational span.
pub fn solve_rational(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<Rational>> {
    let k = basis.len();
    let n = target.len();
    // augmented n x (k+1) system, columns are basis vectors
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row: Vec<Rational> = basis.iter().map(|b| Rational::from(b[i] as i128)).collect();
            row.push(Rational::from(target[i] as i128));
            row
        })
        .collect();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..n).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].recip();
        for x in m[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..n {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c];
                for j in 0..=k {
                    let sub = f * m[r][j];
                    m[i][j] -= sub;
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
    }
    assert_eq!(pivot_cols.len(), k, "basis vectors are not independent");
    if (r..n).any(|i| !m[i][k].is_zero()) {
        return None;
    }
    let mut sol = vec![Rational::zero(); k];
    for (i, &c) in pivot_cols.iter().enumerate() {
        sol[c] = m[i][k];
    }
    Some(sol)
}

/// Integer coordinates of `target` in the independent `basis`, if any.
pub fn solve_integer(basis: &[Vec<i64>], target: &[i64]) -> Option<Vec<i64>> {
    let sol = solve_rational(basis, target)?;
    sol.iter()
        .map(|x| if x.is_integer() { Some(narrow(x.to_integer())) } else { None })
        .collect()
}

/// Canonical residue of `x` modulo the lattice spanned by `basis`, using a
/// Hermite basis whose pivots sit on the trailing coordinates. The residue
/// has each pivot coordinate in `[0, pivot)`.
pub fn reduce_trailing(basis: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    let n = x.len();
    if basis.is_empty() {
        return x.to_vec();
    }
    let rev: Vec<Vec<i64>> = basis.iter().map(|b| b.iter().rev().copied().collect()).collect();
    let hf = hermite(&IntMatrix::from_rows(n, &rev));
    let mut y: Vec<i128> = x.iter().rev().map(|&v| v as i128).collect();
    for (i, &c) in hf.pivots.iter().enumerate() {
        let piv = hf.h.get(i, c);
        let q = Integer::div_floor(&y[c], &piv);
        if q != 0 {
            for j in 0..n {
                y[j] -= q * hf.h.get(i, j);
            }
        }
    }
    y.into_iter().rev().map(narrow).collect()
}

/// Some integer solution `x` of `<f_i, x> = b_i` for all rows `f_i`, if one
/// exists. Rows need not be independent.
pub fn integer_particular_solution(functionals: &[Vec<i64>], n: usize, b: &[i64]) -> Option<Vec<i64>> {
    assert_eq!(functionals.len(), b.len());
    let a = IntMatrix::from_rows(n, functionals);
    let sf = smith(&a);
    // d y = u b with x = v y
    let ub: Vec<i128> = (0..a.nrows())
        .map(|i| sf.u.row(i).iter().zip(b).map(|(&x, &y)| x * y as i128).sum())
        .collect();
    let mut y = vec![0i128; n];
    for (i, &val) in ub.iter().enumerate() {
        if i < sf.rank {
            let d = sf.d.get(i, i);
            if val % d != 0 {
                return None;
            }
            y[i] = val / d;
        } else if val != 0 {
            return None;
        }
    }
    Some(
        (0..n)
            .map(|i| narrow((0..n).map(|j| sf.v.get(i, j) * y[j]).sum()))
            .collect(),
    )
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(m: &IntMatrix) -> IntMatrix {
    let hf = hermite(m);
    assert!(hf.h == IntMatrix::identity(m.nrows()), "matrix is not unimodular");
    hf.u
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    assert_eq!(a.len(), b.len(), "pairing of vectors of different length");
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `x` lies in `k * Z^n`.
pub fn divisible_by(x: &[i64], k: i64) -> bool {
    x.iter().all(|v| v % k == 0)
}

pub fn gcd_all(x: &[i64]) -> i64 {
    x.iter().fold(0i64, |g, &v| g.gcd(&v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(cols: usize, rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    #[test]
    fn hermite_of_simple_matrix() {
        let a = m(2, &[&[2, 4], &[3, 5]]);
        let hf = hermite(&a);
        assert_eq!(hf.h, m(2, &[&[1, 1], &[0, 2]]));
        assert_eq!(hf.u.mul(&a), hf.h);
        assert_eq!(hf.u.determinant().abs(), 1);
    }

    #[test]
    fn kernel_of_gl3_roots() {
        let k = integer_kernel(&[vec![1, -1, 0], vec![0, 1, -1]], 3);
        assert_eq!(k, vec![vec![1, 1, 1]]);
        assert_eq!(integer_kernel(&[], 2), vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(integer_kernel(&[vec![1, -1]], 2), vec![vec![1, 1]]);
    }

    #[test]
    fn kernel_is_saturated() {
        // 2x - 4y = 0 has kernel Z(2,1), not Z(4,2)
        assert_eq!(integer_kernel(&[vec![2, -4]], 2), vec![vec![2, 1]]);
    }

    #[test]
    fn smith_divisors() {
        let sf = smith(&m(2, &[&[2, 0], &[0, 3]]));
        assert_eq!(sf.divisors(), vec![1, 6]);
        assert!(!is_saturated(&[vec![2]], 1));
        assert!(is_saturated(&[vec![1, -1]], 2));
        assert_eq!(saturation(&[vec![2, 2]], 2), vec![vec![1, 1]]);
    }

    #[test]
    fn solves() {
        assert_eq!(solve_integer(&[vec![1, -1]], &[1, -1]), Some(vec![1]));
        assert_eq!(solve_integer(&[vec![2]], &[1]), None);
        assert_eq!(solve_rational(&[vec![1, -1]], &[1, 0]), None);
    }

    #[test]
    fn trailing_reduction() {
        assert_eq!(reduce_trailing(&[vec![1, 1]], &[5, 4]), vec![1, 0]);
        assert_eq!(reduce_trailing(&[vec![1, 1, 1]], &[3, 3, 2]), vec![1, 1, 0]);
    }

    #[test]
    fn particular_solutions() {
        let f = vec![vec![1, -1, 0], vec![0, 1, -1]];
        let x = integer_particular_solution(&f, 3, &[1, 0]).unwrap();
        assert_eq!((dot(&f[0], &x), dot(&f[1], &x)), (1, 0));
        assert_eq!(integer_particular_solution(&[vec![2]], 1, &[1]), None);
        let u = m(2, &[&[2, 1], &[1, 1]]);
        assert_eq!(u.mul(&unimodular_inverse(&u)), IntMatrix::identity(2));
    }

    #[test]
    fn bareiss_determinant() {
        assert_eq!(m(3, &[&[2, -1, 0], &[-1, 2, -1], &[0, -1, 2]]).determinant(), 4);
        assert_eq!(m(2, &[&[0, 1], &[1, 0]]).determinant(), -1);
    }

    proptest! {
        #[test]
        fn smith_is_a_valid_factorisation(entries in proptest::collection::vec(-6i64..6, 6)) {
            let a = IntMatrix::from_rows(3, &[entries[0..3].to_vec(), entries[3..6].to_vec()]);
            let sf = smith(&a);
            prop_assert_eq!(sf.u.mul(&a).mul(&sf.v), sf.d.clone());
            prop_assert_eq!(sf.u.determinant().abs(), 1);
            prop_assert_eq!(sf.v.determinant().abs(), 1);
            let ds = sf.divisors();
            for w in ds.windows(2) {
                prop_assert_eq!(w[1] % w[0], 0);
            }
            for i in 0..2 { for j in 0..3 { if i != j { prop_assert_eq!(sf.d.get(i, j), 0); } } }
        }

        #[test]
        fn kernel_vectors_are_annihilated(entries in proptest::collection::vec(-5i64..5, 4)) {
            let f = vec![entries.clone()];
            for v in integer_kernel(&f, 4) {
                prop_assert_eq!(dot(&entries, &v), 0);
            }
        }
    }
}
