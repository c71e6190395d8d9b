//! Four-antenna MISO Rayleigh fading: effective real channels, sensitivity
//! to collapse, Monte Carlo block-error and complexity sweeps, and the
//! diversity–multiplexing bounds.

mod dmt;
mod model;
mod sim;

pub use dmt::{dmt_bound, DmtFamily};
pub use model::{
    basis_matrix, effective_channel, realify, sensitivity_metric, ChannelRealization, SensitivityFamily,
};
pub use sim::{
    complexity_profile, run_bler, simulate_trial, trial_rng, BlerPoint, Codebook, ComplexityProfile,
    ProfileBin, SimConfig, SimScaling, TrialOutcome, BATCH_SIZE,
};

use thiserror::Error;

use crate::decoder::DecodeError;
use crate::lattices::{LatticeError, LatticeId};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ChannelError {
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("no basis is defined for lattice {0}")]
    NoBasis(LatticeId),
    #[error("multiplexing gain {r} outside [0, {max}] for this family")]
    OutOfRange { r: f64, max: f64 },
}
