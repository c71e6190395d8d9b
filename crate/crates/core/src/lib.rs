//! Quaternionic space-time lattice codes for four transmit antennas and one
//! receive antenna.
//!
//! - [`algebra`]: exact Gaussian-integer and quaternion arithmetic.
//! - [`lattices`]: codeword matrices, sublattice membership, determinants.
//! - [`decoder`]: sphere decoding with sublattice parity checks.
//! - [`channel`]: Rayleigh-fading simulation and sensitivity metrics.

pub mod algebra;
pub mod lattices;
pub mod decoder;
pub mod channel;
