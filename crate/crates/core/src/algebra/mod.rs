//! Exact arithmetic: Gaussian integers, the quaternion algebra over `Q(ξ)`
//! with its Lipschitz and Hurwitz rings, cyclic-algebra matrix
//! representations and the Golden code.

mod cyclic;
mod gaussian;
mod golden;
mod quaternion;

pub use cyclic::{cyclic_rep, CyclicRepInput};
pub use gaussian::{gi_norm, GaussianInt};
pub use golden::{golden_codeword, golden_det_times_five, GoldenInt};
pub use quaternion::{
    half_coset_representatives, hurwitz_extension_candidates, hurwitz_member, quat_mul,
    reduced_norm, reduced_trace, CenterValue, QuatElement,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("product has coefficients outside (1+i)^-1 Z[i]")]
    NotRepresentable,
    #[error("cyclic representation needs n >= 1")]
    EmptyRepresentation,
    #[error("sigma image array must be {n}x{n}, got {rows} rows (row {bad_row} has {bad_len} entries)")]
    MalformedImages {
        n: usize,
        rows: usize,
        bad_row: usize,
        bad_len: usize,
    },
}
