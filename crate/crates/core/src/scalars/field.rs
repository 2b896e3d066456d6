use super::ScalarError;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest field order for which log/antilog tables are built.
pub const MAX_ORDER: u32 = 1 << 20;

/// Primitive (Conway) polynomials, coefficients from the constant term up,
/// leading 1 included.
const CONWAY: &[(u32, &[u32])] = &[
    (2, &[1, 1]),
    (2, &[1, 1, 1]),
    (2, &[1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (3, &[1, 1]),
    (3, &[2, 2, 1]),
    (3, &[1, 2, 0, 1]),
    (3, &[2, 0, 0, 2, 1]),
    (3, &[1, 2, 0, 0, 0, 1]),
    (3, &[2, 2, 1, 0, 2, 0, 1]),
    (5, &[3, 1]),
    (5, &[2, 4, 1]),
    (5, &[3, 3, 0, 1]),
    (5, &[2, 4, 4, 0, 1]),
    (7, &[4, 1]),
    (7, &[3, 6, 1]),
    (7, &[4, 0, 6, 1]),
];

/// An element of a finite field, encoded as `Σ c_i p^i` where `Σ c_i x^i` is
/// its polynomial representative. Arithmetic goes through the owning
/// [`FiniteField`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct FieldElement(pub u32);

struct Tables {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2(q-1)
    exp: Vec<u32>,
    /// log[a] for a != 0
    log: Vec<u32>,
}

/// `F_{p^k}` with a fixed primitive defining polynomial.
#[derive(Clone)]
pub struct FiniteField(Arc<Tables>);

impl fmt::Debug for FiniteField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{}", self.0.p, self.0.k)
    }
}

impl PartialEq for FiniteField {
    fn eq(&self, other: &Self) -> bool {
        self.0.p == other.0.p && self.0.k == other.0.k
    }
}

impl Eq for FiniteField {}

pub fn is_prime(n: u32) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

/// `q = p^k` with `p` prime, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

fn digits(mut a: u32, p: u32, k: u32) -> Vec<u32> {
    (0..k)
        .map(|_| {
            let d = a % p;
            a /= p;
            d
        })
        .collect()
}

fn undigits(c: &[u32], p: u32) -> u32 {
    c.iter().rev().fold(0, |acc, &d| acc * p + d)
}

/// Multiplies the residue `c` by `x` modulo the monic `modulus`.
fn times_x(c: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = c.len();
    let top = c[k - 1];
    let mut out = vec![0; k];
    for i in (1..k).rev() {
        out[i] = c[i - 1];
    }
    for i in 0..k {
        out[i] = (out[i] + (p - top) * modulus[i]) % p;
    }
    out
}

/// Powers of `x` modulo `modulus` if `x` has order exactly `p^k - 1`.
fn primitive_powers(modulus: &[u32], p: u32, k: u32) -> Option<Vec<u32>> {
    let q = p.pow(k);
    let mut cur = vec![0u32; k as usize];
    cur[0] = 1;
    let mut out = Vec::with_capacity(q as usize - 1);
    for i in 0..q - 1 {
        let enc = undigits(&cur, p);
        if i > 0 && enc == 1 || enc == 0 {
            return None;
        }
        out.push(enc);
        cur = if k == 1 {
            // the only degree-one residue: multiplication by x is by -modulus[0]
            vec![(cur[0] * ((p - modulus[0]) % p)) % p]
        } else {
            times_x(&cur, modulus, p)
        };
    }
    (undigits(&cur, p) == 1).then_some(out)
}

fn registry() -> &'static Mutex<HashMap<(u32, u32), FiniteField>> {
    static REG: OnceLock<Mutex<HashMap<(u32, u32), FiniteField>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl FiniteField {
    /// The field `F_{p^k}`; tables are built once per `(p, k)` and shared.
    pub fn new(p: u32, k: u32) -> Result<Self, ScalarError> {
        if !is_prime(p) {
            return Err(ScalarError::NotPrime(p));
        }
        if k == 0 {
            return Err(ScalarError::FieldTooLarge { p, k });
        }
        let q = p.checked_pow(k).filter(|&q| q <= MAX_ORDER).ok_or(ScalarError::FieldTooLarge { p, k })?;
        if let Some(f) = registry().lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let (modulus, powers) = match CONWAY.iter().find(|(pp, m)| *pp == p && m.len() as u32 == k + 1) {
            Some((_, m)) => {
                let pw = primitive_powers(m, p, k).expect("tabulated polynomial is primitive");
                (m.to_vec(), pw)
            }
            None => search_primitive(p, k),
        };
        let mut exp = powers.clone();
        exp.extend_from_slice(&powers);
        let mut log = vec![0u32; q as usize];
        for (i, &a) in powers.iter().enumerate() {
            log[a as usize] = i as u32;
        }
        let f = FiniteField(Arc::new(Tables { p, k, q, modulus, exp, log }));
        registry().lock().unwrap().insert((p, k), f.clone());
        Ok(f)
    }

    /// The field of order `q`.
    pub fn of_order(q: u32) -> Result<Self, ScalarError> {
        let (p, k) = prime_power(q).ok_or(ScalarError::NotPrimePower(q))?;
        Self::new(p, k)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.k
    }

    pub fn order(&self) -> u32 {
        self.0.q
    }

    /// Defining polynomial, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    /// The class of `x`, a generator of the multiplicative group.
    pub fn generator(&self) -> FieldElement {
        FieldElement(self.0.exp[1 % (self.0.q - 1).max(1) as usize])
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.0.q).map(FieldElement)
    }

    pub fn units(&self) -> impl Iterator<Item = FieldElement> {
        (1..self.0.q).map(FieldElement)
    }

    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.0.p as i64) as u32)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<FieldElement, ScalarError> {
        if c.len() > self.0.k as usize || c.iter().any(|&d| d >= self.0.p) {
            return Err(ScalarError::BadCoefficients(c.to_vec()));
        }
        Ok(FieldElement(undigits(c, self.0.p)))
    }

    pub fn coeffs(&self, a: FieldElement) -> Vec<u32> {
        let mut d = digits(a.0, self.0.p, self.0.k);
        while d.len() > 1 && *d.last().unwrap() == 0 {
            d.pop();
        }
        d
    }

    pub fn contains(&self, a: FieldElement) -> bool {
        a.0 < self.0.q
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let p = self.0.p;
        if self.0.k == 1 {
            return FieldElement((a.0 + b.0) % p);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % p + y % p) % p) * place;
            x /= p;
            y /= p;
            place *= p;
        }
        FieldElement(out)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let p = self.0.p;
        let d: Vec<u32> = digits(a.0, p, self.0.k).iter().map(|&c| (p - c) % p).collect();
        FieldElement(undigits(&d, p))
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement(0);
        }
        let t = &self.0;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        if a.0 == 0 {
            return None;
        }
        let t = &self.0;
        let l = t.log[a.0 as usize];
        Some(FieldElement(t.exp[((t.q - 1 - l) % (t.q - 1)) as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Option<FieldElement> {
        self.inv(b).map(|bi| self.mul(a, bi))
    }

    /// `a^e` for any integer `e`; negative powers of zero are `None`.
    pub fn pow(&self, a: FieldElement, e: i64) -> Option<FieldElement> {
        let t = &self.0;
        if a.0 == 0 {
            return match e.cmp(&0) {
                std::cmp::Ordering::Greater => Some(FieldElement(0)),
                std::cmp::Ordering::Equal => Some(FieldElement(1)),
                std::cmp::Ordering::Less => None,
            };
        }
        let m = (t.q - 1) as i64;
        let l = (t.log[a.0 as usize] as i64 * e.rem_euclid(m)).rem_euclid(m);
        Some(FieldElement(t.exp[l as usize]))
    }

    /// Discrete logarithm to the base [`FiniteField::generator`].
    pub fn log(&self, a: FieldElement) -> Option<u32> {
        (a.0 != 0).then(|| self.0.log[a.0 as usize])
    }

    /// `g^i` for the fixed generator `g`.
    pub fn exp(&self, i: i64) -> FieldElement {
        let m = (self.0.q - 1) as i64;
        FieldElement(self.0.exp[i.rem_euclid(m) as usize])
    }

    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u32> {
        let l = self.log(a)?;
        let m = self.0.q - 1;
        Some(m / num_integer::gcd(l, m))
    }

    /// The subfield `F_{p^f}` sits inside this field exactly when `f | k`.
    pub fn contains_subfield(&self, f: u32) -> bool {
        f > 0 && self.0.k % f == 0
    }

    pub fn format(&self, a: FieldElement) -> String {
        if self.0.k == 1 {
            return a.0.to_string();
        }
        let c = self.coeffs(a);
        let terms: Vec<String> = c
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &d)| d != 0)
            .map(|(i, &d)| match (i, d) {
                (0, _) => d.to_string(),
                (1, 1) => "x".to_string(),
                (1, _) => format!("{d}x"),
                (_, 1) => format!("x^{i}"),
                _ => format!("{d}x^{i}"),
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join("+")
        }
    }
}

/// Lexicographically least monic primitive polynomial of degree `k`.
fn search_primitive(p: u32, k: u32) -> (Vec<u32>, Vec<u32>) {
    let q = p.pow(k);
    for low in 0..q {
        let mut m = digits(low, p, k);
        m.push(1);
        if m[0] == 0 {
            continue;
        }
        if let Some(pw) = primitive_powers(&m, p, k) {
            return (m, pw);
        }
    }
    unreachable!("primitive polynomials exist in every degree")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn frobenius_and_cyclicity() {
        for (p, k) in [(2, 1), (2, 3), (2, 8), (3, 2), (3, 4), (5, 1), (5, 2), (7, 3), (11, 2), (13, 1)] {
            let f = FiniteField::new(p, k).unwrap();
            let q = f.order();
            for a in f.elements() {
                assert_eq!(f.pow(a, q as i64), Some(a), "frobenius in F_{p}^{k}");
            }
            assert_eq!(f.multiplicative_order(f.generator()), Some(q - 1));
        }
    }

    #[test]
    fn field_axioms_small() {
        let f = FiniteField::new(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if a != f.zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in f.elements() {
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn fallback_polynomials_are_primitive() {
        let f = FiniteField::new(11, 2).unwrap();
        assert_eq!(f.modulus().len(), 3);
        assert_eq!(f.multiplicative_order(f.generator()), Some(120));
        assert!(matches!(FiniteField::new(4, 1), Err(ScalarError::NotPrime(4))));
        assert!(matches!(FiniteField::new(2, 30), Err(ScalarError::FieldTooLarge { .. })));
    }

    #[test]
    fn prime_subfield_embedding() {
        let f = FiniteField::of_order(4).unwrap();
        assert_eq!(f.from_int(3), f.one());
        assert_eq!(f.coeffs(f.generator()), vec![0, 1]);
        assert_eq!(f.format(f.generator()), "x");
        assert!(f.contains_subfield(2) && !f.contains_subfield(3));
    }
}
