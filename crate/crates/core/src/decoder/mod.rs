//! Sphere decoding over `Z_Q^m` with Schnorr–Euchner enumeration, optional
//! sublattice parity checks (code-controlled sphere decoding), an exhaustive
//! reference decoder, and the two-block split for the Lipschitz lattice.

mod ccsd;
mod matrix;
mod oracle;
mod qr;
mod sphere;
mod split;

pub use ccsd::{ccsd_check, CheckOutcome, ParityCheck, SearchSpace};
pub use matrix::RealMatrix;
pub use oracle::{ml_oracle, ml_oracle_in, ORACLE_LIMIT};
pub use qr::{qr_preprocess, EffectiveChannel, RANK_TOLERANCE};
pub use sphere::{
    affine_system, pam_system, sphere_decode, sphere_decode_in, DecodeResult, TraceAction,
    TraceEvent, DISTANCE_TOLERANCE,
};
pub use split::block_split_decode;

use thiserror::Error;

use crate::lattices::LatticeId;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DecodeError {
    #[error("channel matrix is rank deficient: R[{column},{column}] = {diagonal:e}")]
    RankDeficient { column: usize, diagonal: f64 },
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u32),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("exhaustive search over {candidates} points exceeds the limit of {limit}")]
    TooLarge { candidates: f64, limit: f64 },
    #[error("lattice {0} is not supported by this decoder")]
    Unsupported(LatticeId),
}
