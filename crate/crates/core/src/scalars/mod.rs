//! Coefficient fields and smooth characters.
//!
//! The coefficient field is a chosen finite field `F_{p^k}`. A smooth
//! character of `F^×` with values in it is determined by its value at the
//! uniformizer and by its restriction to `O^×`; the latter is trivial on the
//! pro-p group `1 + ϖO` (the target has no p-torsion), so it factors through
//! the residue field and is stored as an exponent `e` meaning `u ↦ ū^e`.

mod character;
mod field;

pub use character::{CharacterJson, SmoothCharacter, SmoothCharacterJson, TorusCharacterDatum};
pub use field::{is_prime, prime_power, FieldElement, FiniteField, MAX_ORDER};

use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("{0} is not a prime power")]
    NotPrimePower(u32),
    #[error("field of order {p}^{k} is not supported")]
    FieldTooLarge { p: u32, k: u32 },
    #[error("coefficients {0:?} do not describe a field element")]
    BadCoefficients(Vec<u32>),
    #[error("the residue field F_{q} is not contained in the coefficient field; extension of degree {needed_degree} required")]
    ExtensionRequired { q: u32, needed_degree: u32 },
    #[error("value at the uniformizer must be nonzero")]
    ZeroUniformizerValue,
    #[error("cocharacter {0:?} is not in the lattice of the character datum")]
    NotInLattice(Vec<i64>),
    #[error("characters live over different fields or residue fields")]
    Mismatch,
    #[error("malformed character data: {0}")]
    Parse(String),
}
