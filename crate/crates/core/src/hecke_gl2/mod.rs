//! Spherical mod-`p` Hecke computations for `GL₂(Q_p)` with `ϖ = p`.

pub mod finite_rep;
pub mod induction;
pub mod kernel;
pub mod padic;
pub mod satake;

pub use finite_rep::{FiniteRep, FpMat, InvariantKind};
pub use induction::{apply_kernel, apply_kernel_by_formula, InductionElement};
pub use kernel::{build_kernel, convolve, t_lambda, HeckeKernel};
pub use padic::{cartan_decompose, coset_canonicalize, double_coset_points, PAdicMatrix};
pub use satake::{satake_transform, verify_changing_weight_identity, ChangingWeightReport};

use crate::satake_param::SatakeError;
use crate::scalars::ScalarError;
use thiserror::Error;

#[derive(Clone, Debug, PartialEq, Error)]
pub enum HeckeError {
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("Sym^{r} needs r <= p-1 = {}", .p - 1)]
    BadRep { p: u32, r: u32 },
    #[error("representations over different primes")]
    PrimeMismatch,
    #[error("cocharacter {0:?} is not dominant")]
    NotDominant((i64, i64)),
    #[error("no kernel {from:?} -> {to:?} on the double coset of {lambda:?}: lowest weights incompatible")]
    IncompatibleWeights { from: FiniteRep, to: FiniteRep, lambda: (i64, i64) },
    #[error("kernel value at {0:?} is not equivariant")]
    NotEquivariant((i64, i64)),
    #[error("representations do not match")]
    RepMismatch,
    #[error("Satake sum at {0:?} changed when the enumeration was widened")]
    SatakeUnstable((i64, i64)),
    #[error("changing-weight identity failed: {0}")]
    IdentityFailed(Box<serde_json::Value>),
    #[error(transparent)]
    Satake(#[from] SatakeError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}
