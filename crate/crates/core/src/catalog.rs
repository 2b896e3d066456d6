//! Built-in root data shipped with the crate.

use crate::root_datum::{RootDatum, RootDatumError};

const FILES: &[(&str, &str)] = &[
    ("SL2", include_str!("../data/SL2.json")),
    ("GL2", include_str!("../data/GL2.json")),
    ("PGL2", include_str!("../data/PGL2.json")),
    ("SL2xSL2", include_str!("../data/SL2xSL2.json")),
    ("GL2xGL2", include_str!("../data/GL2xGL2.json")),
    ("SL3", include_str!("../data/SL3.json")),
    ("GL3", include_str!("../data/GL3.json")),
    ("Sp4", include_str!("../data/Sp4.json")),
    ("SO5", include_str!("../data/SO5.json")),
    ("G2", include_str!("../data/G2.json")),
    ("GL4", include_str!("../data/GL4.json")),
];

/// Cartan-type names and the datum each one resolves to.
pub const ALIASES: &[(&str, &str)] = &[
    ("A1", "SL2"),
    ("A1xA1", "SL2xSL2"),
    ("A2", "SL3"),
    ("B2", "Sp4"),
    ("C2", "Sp4"),
    ("A3", "GL4"),
];

/// Canonical names of every shipped datum, in catalog order.
pub fn builtin_names() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).collect()
}

pub fn builtin(name: &str) -> Result<RootDatum, RootDatumError> {
    let canonical = ALIASES.iter().find(|(a, _)| *a == name).map_or(name, |(_, t)| *t);
    let (_, text) = FILES
        .iter()
        .find(|(n, _)| *n == canonical)
        .ok_or_else(|| RootDatumError::UnknownBuiltin(name.to_string()))?;
    RootDatum::from_json(text)
}

/// Every shipped datum.
pub fn all_builtin() -> Vec<RootDatum> {
    builtin_names().into_iter().map(|n| builtin(n).expect("shipped datum is valid")).collect()
}

/// Shipped data whose lattices have rank at most `n`.
pub fn builtin_up_to_rank(n: usize) -> Vec<RootDatum> {
    all_builtin().into_iter().filter(|d| d.rank() <= n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_loads() {
        assert_eq!(all_builtin().len(), FILES.len());
        assert_eq!(builtin("A2").unwrap().name(), "SL3");
        assert!(matches!(builtin("E8"), Err(RootDatumError::UnknownBuiltin(_))));
    }
}
