use serde::{Deserialize, Serialize};
use std::fmt;

/// A set of simple-root indices, stored as a bitmask.
///
/// Ordering and hashing follow the bitmask, which gives the stable
/// "subsets as bitmasks" ordering used in reports.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(from = "Vec<usize>", into = "Vec<usize>")]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Self {
        assert!(n < 32);
        Subset((1u32 << n) - 1)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(1 << i)
    }

    pub fn from_indices(ix: &[usize]) -> Self {
        Subset(ix.iter().fold(0, |m, &i| m | (1 << i)))
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Subset) -> Subset {
        Subset(self.0 | o.0)
    }

    pub fn intersection(self, o: Subset) -> Subset {
        Subset(self.0 & o.0)
    }

    pub fn difference(self, o: Subset) -> Subset {
        Subset(self.0 & !o.0)
    }

    pub fn is_subset_of(self, o: Subset) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: Subset) -> bool {
        self.0 & o.0 == 0
    }

    /// Indices in increasing order.
    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    pub fn indices(self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn max_index(self) -> Option<usize> {
        self.iter().last()
    }

    /// All subsets of `{0..n-1}` in bitmask order.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        (0..1u32 << n).map(Subset)
    }

    /// All subsets of `self` in bitmask order.
    pub fn subsets(self) -> Vec<Subset> {
        let mut out: Vec<Subset> = Vec::with_capacity(1 << self.len());
        let mut s = 0u32;
        loop {
            out.push(Subset(s));
            if s == self.0 {
                break;
            }
            s = (s.wrapping_sub(self.0)) & self.0;
        }
        out.sort();
        out
    }
}

impl From<Vec<usize>> for Subset {
    fn from(v: Vec<usize>) -> Self {
        Subset::from_indices(&v)
    }
}

impl From<Subset> for Vec<usize> {
    fn from(s: Subset) -> Self {
        s.indices()
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subset_enumeration() {
        let s = Subset::from_indices(&[0, 2]);
        assert_eq!(s.subsets(), vec![Subset(0), Subset(1), Subset(4), Subset(5)]);
        assert_eq!(Subset::all(2).count(), 4);
        assert_eq!(s.indices(), vec![0, 2]);
        assert_eq!(serde_json::to_string(&s).unwrap(), "[0,2]");
        let back: Subset = serde_json::from_str("[2,0]").unwrap();
        assert_eq!(back, s);
    }
}
