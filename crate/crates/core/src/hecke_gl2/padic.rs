//! 2×2 matrices over `Q` viewed inside `GL₂(Q_p)`.
//!
//! Entries are arbitrary rationals: inverses of elements of `K` pick up
//! denominators that are `p`-adic units. Canonical representatives only ever
//! have `p`-power denominators.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;

fn big(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `p^e` as a rational, for any integer `e`.
pub fn p_power(p: u32, e: i64) -> BigRational {
    let base = BigInt::from(p).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        BigRational::from_integer(base)
    } else {
        BigRational::new(BigInt::one(), base)
    }
}

fn int_valuation(p: u32, n: &BigInt) -> i64 {
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    while (&n % &p).is_zero() {
        n /= &p;
        v += 1;
    }
    v
}

/// `p`-adic valuation; `None` for zero.
pub fn valuation(p: u32, x: &BigRational) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    Some(int_valuation(p, x.numer()) - int_valuation(p, x.denom()))
}

pub fn is_integral(p: u32, x: &BigRational) -> bool {
    valuation(p, x).is_none_or(|v| v >= 0)
}

/// `x mod p^e` in `[0, p^e)` for `p`-integral `x`.
pub fn residue(p: u32, x: &BigRational, e: u32) -> BigInt {
    debug_assert!(is_integral(p, x));
    let modulus = BigInt::from(p).pow(e);
    let d = x.denom().mod_floor(&modulus);
    let g = d.extended_gcd(&modulus);
    debug_assert!(g.gcd.is_one() || modulus.is_one());
    (x.numer() * g.x).mod_floor(&modulus)
}

/// `x / p^{v(x)}`, a `p`-adic unit.
pub fn unit_part(p: u32, x: &BigRational) -> BigRational {
    let v = valuation(p, x).expect("nonzero");
    x * p_power(p, -v)
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PAdicMatrix {
    p: u32,
    /// Row-major `[a, b, c, d]` for `[[a, b], [c, d]]`.
    e: [BigRational; 4],
}

impl fmt::Debug for PAdicMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.e[0], self.e[1], self.e[2], self.e[3])
    }
}

impl PAdicMatrix {
    pub fn from_rationals(p: u32, e: [BigRational; 4]) -> Self {
        PAdicMatrix { p, e }
    }

    pub fn from_ints(p: u32, rows: [[i64; 2]; 2]) -> Self {
        Self::from_rationals(p, [big(rows[0][0]), big(rows[0][1]), big(rows[1][0]), big(rows[1][1])])
    }

    pub fn identity(p: u32) -> Self {
        Self::from_ints(p, [[1, 0], [0, 1]])
    }

    /// `diag(p^a, p^b)`, i.e. `λ(ϖ)` for `λ = (a, b)`.
    pub fn torus(p: u32, a: i64, b: i64) -> Self {
        Self::from_rationals(p, [p_power(p, a), BigRational::zero(), BigRational::zero(), p_power(p, b)])
    }

    /// `[[1, 0], [c, 1]]`.
    pub fn lower_unipotent(p: u32, c: BigRational) -> Self {
        Self::from_rationals(p, [BigRational::one(), BigRational::zero(), c, BigRational::one()])
    }

    pub fn upper_unipotent(p: u32, c: BigRational) -> Self {
        Self::from_rationals(p, [BigRational::one(), c, BigRational::zero(), BigRational::one()])
    }

    /// `[[0, -1], [1, 0]]`.
    pub fn weyl(p: u32) -> Self {
        Self::from_ints(p, [[0, -1], [1, 0]])
    }

    fn swap(p: u32) -> Self {
        Self::from_ints(p, [[0, 1], [1, 0]])
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigRational {
        &self.e[2 * i + j]
    }

    pub fn entries(&self) -> &[BigRational; 4] {
        &self.e
    }

    pub fn det(&self) -> BigRational {
        &self.e[0] * &self.e[3] - &self.e[1] * &self.e[2]
    }

    pub fn mul(&self, o: &Self) -> Self {
        debug_assert_eq!(self.p, o.p);
        let [a, b, c, d] = &self.e;
        let [w, x, y, z] = &o.e;
        Self::from_rationals(self.p, [a * w + b * y, a * x + b * z, c * w + d * y, c * x + d * z])
    }

    pub fn inverse(&self) -> Option<Self> {
        let det = self.det();
        if det.is_zero() {
            return None;
        }
        let [a, b, c, d] = &self.e;
        Some(Self::from_rationals(self.p, [d / &det, -b / &det, -c / &det, a / &det]))
    }

    /// Membership in `K = GL₂(Z_p)`.
    pub fn is_in_k(&self) -> bool {
        self.e.iter().all(|x| is_integral(self.p, x)) && valuation(self.p, &self.det()) == Some(0)
    }

    /// Reduction mod `p` of an element of `K`.
    pub fn reduce(&self) -> [[u64; 2]; 2] {
        debug_assert!(self.is_in_k());
        let r = |x: &BigRational| residue(self.p, x, 1).to_u64().unwrap();
        [[r(&self.e[0]), r(&self.e[1])], [r(&self.e[2]), r(&self.e[3])]]
    }

    pub fn is_upper_triangular(&self) -> bool {
        self.e[2].is_zero()
    }

    pub fn to_strings(&self) -> [[String; 2]; 2] {
        [[self.e[0].to_string(), self.e[1].to_string()], [self.e[2].to_string(), self.e[3].to_string()]]
    }
}

/// `g = k₂ · diag(p^a, p^b) · k₁` with `a ≥ b`.
#[derive(Clone, Debug)]
pub struct CartanDecomposition {
    pub k2: PAdicMatrix,
    pub lambda: (i64, i64),
    pub k1: PAdicMatrix,
}

/// Elementary divisors of `g`, by moving an entry of least valuation to the
/// corner and clearing its row and column.
pub fn cartan_decompose_full(g: &PAdicMatrix) -> CartanDecomposition {
    let p = g.p;
    assert!(!g.det().is_zero(), "singular matrix");
    // invariant: left · g · right = m
    let mut left = PAdicMatrix::identity(p);
    let mut right = PAdicMatrix::identity(p);
    let mut m = g.clone();
    let (mut best, mut pos) = (i64::MAX, 0);
    for (i, x) in m.e.iter().enumerate() {
        if let Some(v) = valuation(p, x) {
            if v < best {
                best = v;
                pos = i;
            }
        }
    }
    if pos / 2 == 0 {
        left = PAdicMatrix::swap(p).mul(&left);
        m = PAdicMatrix::swap(p).mul(&m);
    }
    if pos % 2 == 0 {
        right = right.mul(&PAdicMatrix::swap(p));
        m = m.mul(&PAdicMatrix::swap(p));
    }
    let el = PAdicMatrix::upper_unipotent(p, -(&m.e[1] / &m.e[3]));
    left = el.mul(&left);
    m = el.mul(&m);
    let er = PAdicMatrix::lower_unipotent(p, -(&m.e[2] / &m.e[3]));
    right = right.mul(&er);
    m = m.mul(&er);
    let a = valuation(p, &m.e[0]).unwrap();
    let b = valuation(p, &m.e[3]).unwrap();
    assert!(a >= b);
    let (u1, u2) = (unit_part(p, &m.e[0]), unit_part(p, &m.e[3]));
    let unit_inv = PAdicMatrix::from_rationals(p, [u1.recip(), BigRational::zero(), BigRational::zero(), u2.recip()]);
    left = unit_inv.mul(&left);
    CartanDecomposition { k2: left.inverse().unwrap(), lambda: (a, b), k1: right.inverse().unwrap() }
}

pub fn cartan_decompose(g: &PAdicMatrix) -> (i64, i64) {
    cartan_decompose_full(g).lambda
}

/// `g = rep · k` with `rep = [[p^a, b], [0, p^d]]`, `0 ≤ b < p^a`, `b ∈ Z[1/p]`.
#[derive(Clone, Debug)]
pub struct CanonicalCoset {
    pub rep: PAdicMatrix,
    pub k: PAdicMatrix,
}

pub fn coset_canonicalize_full(g: &PAdicMatrix) -> CanonicalCoset {
    let p = g.p;
    assert!(!g.det().is_zero(), "singular matrix");
    // invariant: g · right = m
    let mut right = PAdicMatrix::identity(p);
    let mut m = g.clone();
    if !m.e[2].is_zero() {
        let swap = m.e[3].is_zero() || valuation(p, &m.e[2]) < valuation(p, &m.e[3]);
        if swap {
            right = right.mul(&PAdicMatrix::swap(p));
            m = m.mul(&PAdicMatrix::swap(p));
        }
        let er = PAdicMatrix::lower_unipotent(p, -(&m.e[2] / &m.e[3]));
        right = right.mul(&er);
        m = m.mul(&er);
    }
    let (u1, u2) = (unit_part(p, &m.e[0]), unit_part(p, &m.e[3]));
    let scale = PAdicMatrix::from_rationals(p, [u1.recip(), BigRational::zero(), BigRational::zero(), u2.recip()]);
    right = right.mul(&scale);
    m = m.mul(&scale);
    let a = valuation(p, &m.e[0]).unwrap();
    let target = match valuation(p, &m.e[1]) {
        Some(s) if s < a => {
            let unit = &m.e[1] * p_power(p, -s);
            BigRational::from_integer(residue(p, &unit, (a - s) as u32)) * p_power(p, s)
        }
        _ => BigRational::zero(),
    };
    let t = (&target - &m.e[1]) * p_power(p, -a);
    debug_assert!(is_integral(p, &t));
    let shift = PAdicMatrix::upper_unipotent(p, t);
    right = right.mul(&shift);
    m = m.mul(&shift);
    debug_assert!(m.e[1].is_zero() || !m.e[1].is_negative());
    CanonicalCoset { rep: m, k: right.inverse().unwrap() }
}

pub fn coset_canonicalize(g: &PAdicMatrix) -> PAdicMatrix {
    coset_canonicalize_full(g).rep
}

/// Canonical representatives of `K λ(ϖ) K / K` for dominant `λ = (a, b)`.
pub fn double_coset_points(p: u32, lambda: (i64, i64)) -> Vec<PAdicMatrix> {
    let (a, b) = lambda;
    assert!(a >= b, "λ must be dominant");
    let mut out = Vec::new();
    for e in b..=a {
        let d = a + b - e;
        let count = (p as u64).pow((e - b) as u32);
        for j in 0..count {
            let beta = big(j as i64) * p_power(p, b);
            let g = PAdicMatrix::from_rationals(p, [p_power(p, e), beta, BigRational::zero(), p_power(p, d)]);
            if cartan_decompose(&g) == lambda {
                out.push(g);
            }
        }
    }
    out
}

/// `|K λ(ϖ) K / K|` for `GL₂`: `1` if central, else `(p+1)·p^{a−b−1}`.
pub fn double_coset_size(p: u32, lambda: (i64, i64)) -> u64 {
    let n = lambda.0 - lambda.1;
    if n == 0 {
        1
    } else {
        (p as u64 + 1) * (p as u64).pow(n as u32 - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decompositions() {
        let p = 3;
        assert_eq!(cartan_decompose(&PAdicMatrix::from_ints(p, [[3, 0], [0, 1]])), (1, 0));
        assert_eq!(cartan_decompose(&PAdicMatrix::from_ints(p, [[3, 1], [0, 1]])), (1, 0));
        assert_eq!(cartan_decompose(&PAdicMatrix::from_ints(p, [[3, 0], [0, 3]])), (1, 1));
        let g = PAdicMatrix::from_ints(p, [[5, 7], [2, 9]]);
        let cd = cartan_decompose_full(&g);
        assert!(cd.k1.is_in_k() && cd.k2.is_in_k());
        assert_eq!(cd.k2.mul(&PAdicMatrix::torus(p, cd.lambda.0, cd.lambda.1)).mul(&cd.k1), g);
    }

    #[test]
    fn canonical_cosets() {
        let p = 3;
        let id = PAdicMatrix::identity(p);
        assert_eq!(coset_canonicalize(&id), id);
        // [[1,1],[0,p]] = [[1,0],[0,p]]·[[1,1],[0,1]], so the cosets agree
        let a = coset_canonicalize(&PAdicMatrix::from_ints(p, [[1, 0], [0, 3]]));
        let b = coset_canonicalize(&PAdicMatrix::from_ints(p, [[1, 1], [0, 3]]));
        assert_eq!(a, b);
        let a = coset_canonicalize(&PAdicMatrix::from_ints(p, [[3, 0], [0, 1]]));
        let b = coset_canonicalize(&PAdicMatrix::from_ints(p, [[3, 1], [0, 1]]));
        assert_ne!(a, b);
        let g = PAdicMatrix::from_ints(p, [[4, 1], [6, 3]]);
        let c = coset_canonicalize_full(&g);
        assert!(c.k.is_in_k());
        assert_eq!(c.rep.mul(&c.k), g);
    }

    #[test]
    fn point_counts() {
        let pts = double_coset_points(3, (1, 0));
        assert_eq!(pts.len(), 4);
        assert!(pts.contains(&PAdicMatrix::from_ints(3, [[1, 0], [0, 3]])));
        assert_eq!(double_coset_points(3, (1, 1)), vec![PAdicMatrix::torus(3, 1, 1)]);
        assert_eq!(double_coset_points(2, (2, 0)).len(), 6);
        for p in [2, 3, 5] {
            for lam in [(1, 0), (2, 0), (3, 1), (0, -2), (2, 2)] {
                assert_eq!(double_coset_points(p, lam).len() as u64, double_coset_size(p, lam));
            }
        }
    }
}
