//! Irreducible representations `Sym^r ⊗ det^m` of `GL₂(F_p)` and small
//! dense linear algebra over `F_p`.

use super::HeckeError;
use crate::scalars::is_prime;
use serde::Serialize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpMat {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMat {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        FpMat { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// The matrix unit `E_{ij}`.
    pub fn unit(p: u32, rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        m.set(i, j, 1);
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v % self.p;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows);
        let p = self.p as u64;
        let mut out = Self::zeros(self.p, self.rows, o.cols);
        for i in 0..self.rows {
            for j in 0..o.cols {
                let s: u64 = (0..self.cols).map(|k| self.get(i, k) as u64 * o.get(k, j) as u64).sum();
                out.data[i * o.cols + j] = (s % p) as u32;
            }
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (o.rows, o.cols));
        let data = self.data.iter().zip(&o.data).map(|(a, b)| (a + b) % self.p).collect();
        FpMat { data, ..self.clone() }
    }

    pub fn scale(&self, c: u32) -> Self {
        let p = self.p as u64;
        let data = self.data.iter().map(|&a| (a as u64 * c as u64 % p) as u32).collect();
        FpMat { data, ..self.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.scale(self.p - 1))
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| ((0..self.cols).map(|k| self.get(i, k) as u64 * v[k] as u64).sum::<u64>() % p) as u32)
            .collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    /// Basis of `{v : M v = 0}` in reduced echelon form.
    pub fn nullspace(&self) -> Vec<Vec<u32>> {
        let p = self.p as u64;
        let mut a = self.to_rows();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(pr) = (row..self.rows).find(|&r| a[r][col] != 0) else { continue };
            a.swap(row, pr);
            let inv = inv_mod(a[row][col], self.p);
            for x in a[row].iter_mut() {
                *x = (*x as u64 * inv as u64 % p) as u32;
            }
            for r in 0..self.rows {
                if r != row && a[r][col] != 0 {
                    let f = a[r][col] as u64;
                    for c in 0..self.cols {
                        a[r][c] = ((a[r][c] as u64 + (p - f) * a[row][c] as u64) % p) as u32;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = ((p - a[r][free] as u64) % p) as u32;
                }
                v
            })
            .collect()
    }
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc, m) = (a as u64 % p as u64, 1u64, p as u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        e >>= 1;
    }
    (acc % m) as u32
}

/// Which unipotent subgroup to take invariants under.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum InvariantKind {
    /// Lower-triangular unipotents `Ū(F_p)`.
    LowerUnipotent,
    /// `N̄_λ(F_p)`: `Ū(F_p)` for regular `λ`, trivial for central `λ`.
    ForCocharacter(i64, i64),
}

/// `Sym^r(F_p²) ⊗ det^m` with `(g·f)(x, y) = f((x, y)g)·det(g)^m`, on the
/// basis `x^{r−i} y^i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FiniteRep {
    pub p: u32,
    pub r: u32,
    pub m: u32,
}

impl FiniteRep {
    pub fn new(p: u32, r: u32, m: i64) -> Result<Self, HeckeError> {
        if !is_prime(p) {
            return Err(HeckeError::NotPrime(p));
        }
        if r > p - 1 {
            return Err(HeckeError::BadRep { p, r });
        }
        let m = m.rem_euclid((p as i64 - 1).max(1)) as u32;
        Ok(FiniteRep { p, r, m })
    }

    pub fn trivial(p: u32) -> Self {
        FiniteRep { p, r: 0, m: 0 }
    }

    pub fn dim(&self) -> usize {
        self.r as usize + 1
    }

    /// `ν = (m, m + r)`, so that `⟨ν, α̌⟩ = −r`.
    pub fn lowest_weight(&self) -> (i64, i64) {
        (self.m as i64, (self.m + self.r) as i64)
    }

    /// Index of the lowest-weight vector `y^r`.
    pub fn lowest_index(&self) -> usize {
        self.r as usize
    }

    /// Same `r` with `m` replaced by `m + 1`.
    pub fn twist(&self) -> Self {
        FiniteRep::new(self.p, self.r, self.m as i64 + 1).unwrap()
    }

    /// Action matrix of `g ∈ GL₂(F_p)`; column `i` is the image of `x^{r−i}y^i`.
    pub fn matrix(&self, g: [[u64; 2]; 2]) -> FpMat {
        let p = self.p as u64;
        let r = self.r as usize;
        let [[a, b], [c, d]] = g.map(|row| row.map(|x| x % p));
        let det = (a * d % p + p * p - b * c % p) % p;
        assert!(det != 0, "not invertible mod p");
        let twist = pow_mod(det as u32, self.m, self.p) as u64;
        // x ↦ a x + c y, y ↦ b x + d y; coefficient lists are indexed by y-degree
        let power = |s: u64, t: u64, n: usize| -> Vec<u64> {
            let mut poly = vec![1u64];
            for _ in 0..n {
                let mut next = vec![0u64; poly.len() + 1];
                for (j, &co) in poly.iter().enumerate() {
                    next[j] = (next[j] + co * s) % p;
                    next[j + 1] = (next[j + 1] + co * t) % p;
                }
                poly = next;
            }
            poly
        };
        let mut out = FpMat::zeros(self.p, r + 1, r + 1);
        for i in 0..=r {
            let f1 = power(a, c, r - i);
            let f2 = power(b, d, i);
            let mut col = vec![0u64; r + 1];
            for (j1, &x1) in f1.iter().enumerate() {
                for (j2, &x2) in f2.iter().enumerate() {
                    col[j1 + j2] = (col[j1 + j2] + x1 * x2) % p;
                }
            }
            for (j, &x) in col.iter().enumerate() {
                out.set(j, i, (x * twist % p) as u32);
            }
        }
        out
    }

    /// Generators of `GL₂(F_p)`: a diagonal generator pair and both elementary unipotents.
    pub fn group_generators(p: u32) -> Vec<[[u64; 2]; 2]> {
        let g = primitive_root(p) as u64;
        vec![[[g, 0], [0, 1]], [[1, 0], [0, g]], [[1, 1], [0, 1]], [[1, 0], [1, 1]]]
    }

    pub fn invariants(&self, which: InvariantKind) -> Vec<Vec<u32>> {
        if let InvariantKind::ForCocharacter(a, b) = which {
            if a == b {
                return FpMat::zeros(self.p, 0, self.dim()).nullspace();
            }
        }
        let n = self.matrix([[1, 0], [1, 1]]);
        n.sub(&FpMat::identity(self.p, self.dim())).nullspace()
    }
}

pub(crate) fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    (2..p).find(|&g| (1..p - 1).all(|e| pow_mod(g, e, p) != 1)).unwrap()
}
