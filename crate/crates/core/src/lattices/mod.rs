//! Four-antenna matrix lattices built from `Z[ζ16]` (L1), the Lipschitz and
//! Hurwitz rings (L2, L3), the ideal sublattices L4 ⊇ L5 ⊇ L6 of L2, and the
//! DAST family.
//!
//! Coordinates are `x = (Re c1, Im c1, …, Re c4, Im c4)`. The sublattices
//! sit in the nested sequence `2L2 ⊆ L6 ⊆ L5 ⊆ L4 ⊆ L2` and are cut out by
//! parity checks on `x`.

mod codes;
mod encode;
mod search;

pub use codes::{
    binary_projection, extended_hamming_code, is_linear_code, minimum_distance, parity_check_code, span,
    BinaryWord,
};
pub use encode::{
    det4, encode_dast, encode_h, encode_l1, gram_det, gram_det_expansion, to_complex_matrix, Mat4,
};
pub use search::{average_energy, min_det_search, shortest_vectors, unit_det_scale_sqr, MinDet, ShortVector};

use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{GaussianInt, QuatElement};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum LatticeError {
    #[error("unknown lattice `{0}`; valid lattices are L1, L2, L3, L4, L5, L6, DAST")]
    UnknownLattice(String),
    #[error("operation `{op}` is not defined for lattice {id}")]
    Unsupported { op: &'static str, id: LatticeId },
    #[error("search box must be at least {min}, got {got}")]
    BoxTooSmall { min: i64, got: i64 },
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(u32),
    #[error("the number of vectors must be at least 1")]
    EmptyRequest,
    #[error("requested {requested} vectors but only {found} lie within squared radius {radius}")]
    EnumerationExhausted { requested: usize, found: usize, radius: f64 },
}

/// Lattice identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum LatticeId {
    L1,
    L2,
    L3,
    L4,
    L5,
    L6,
    #[serde(rename = "DAST")]
    Dast,
}

impl LatticeId {
    pub const ALL: [LatticeId; 7] = [
        LatticeId::L1,
        LatticeId::L2,
        LatticeId::L3,
        LatticeId::L4,
        LatticeId::L5,
        LatticeId::L6,
        LatticeId::Dast,
    ];

    /// The nested sublattices of L2 (including L2 itself).
    pub const NESTED: [LatticeId; 4] = [LatticeId::L2, LatticeId::L4, LatticeId::L5, LatticeId::L6];

    pub fn name(self) -> &'static str {
        match self {
            LatticeId::L1 => "L1",
            LatticeId::L2 => "L2",
            LatticeId::L3 => "L3",
            LatticeId::L4 => "L4",
            LatticeId::L5 => "L5",
            LatticeId::L6 => "L6",
            LatticeId::Dast => "DAST",
        }
    }

    /// Uses the quaternionic matrix `M(c1, c2, c3, c4)`.
    pub fn is_quaternionic(self) -> bool {
        matches!(
            self,
            LatticeId::L2 | LatticeId::L3 | LatticeId::L4 | LatticeId::L5 | LatticeId::L6
        )
    }

    pub fn is_nested(self) -> bool {
        Self::NESTED.contains(&self)
    }

    /// Parity checks on `x` as 8-bit masks (bit `i` ↔ `x_{i+1}`); a vector
    /// is a member iff every masked coordinate sum is even.
    pub fn parity_checks(self) -> &'static [u8] {
        match self {
            LatticeId::L4 => &[0b1111_1111],
            // x1+x2+x5+x6 and x3+x4+x7+x8
            LatticeId::L5 => &[0b0011_0011, 0b1100_1100],
            // equal pair sums, both alternating sums even
            LatticeId::L6 => &[0b0000_1111, 0b0011_1100, 0b1111_0000, 0b0101_0101, 0b1010_1010],
            _ => &[],
        }
    }

    /// Basis ordering used by the decoder: search position `k` holds the
    /// natural coordinate `search_order()[k]`.
    pub fn search_order(self) -> [usize; 8] {
        match self {
            // B1, B2, B5, B6, B3, B4, B7, B8
            LatticeId::L5 => [0, 1, 4, 5, 2, 3, 6, 7],
            _ => [0, 1, 2, 3, 4, 5, 6, 7],
        }
    }

    /// Proven minimum of `det(MM^H)` over nonzero lattice matrices.
    pub fn min_det(self) -> Option<i64> {
        match self {
            LatticeId::L1 | LatticeId::L2 => Some(1),
            LatticeId::L4 => Some(4),
            LatticeId::L5 => Some(16),
            LatticeId::L6 => Some(64),
            LatticeId::L3 | LatticeId::Dast => None,
        }
    }
}

impl fmt::Display for LatticeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LatticeId {
    type Err = LatticeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LatticeId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| LatticeError::UnknownLattice(s.to_string()))
    }
}

/// Integer coordinates `(Re c1, Im c1, …, Re c4, Im c4)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoeffVector(pub [i64; 8]);

impl CoeffVector {
    pub fn from_coeffs(c: [GaussianInt; 4]) -> Self {
        let mut x = [0; 8];
        for (t, ct) in c.iter().enumerate() {
            x[2 * t] = ct.re;
            x[2 * t + 1] = ct.im;
        }
        Self(x)
    }

    pub fn coeffs(&self) -> [GaussianInt; 4] {
        std::array::from_fn(|t| GaussianInt::new(self.0[2 * t], self.0[2 * t + 1]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&v| v == 0)
    }

    pub fn norm_sqr(&self) -> i64 {
        self.0.iter().map(|v| v * v).sum()
    }

    /// Coordinates reduced mod 2 as a bit mask.
    pub fn residue(&self) -> BinaryWord {
        self.0
            .iter()
            .enumerate()
            .fold(0u8, |acc, (i, v)| acc | (((v & 1) as u8) << i))
    }
}

impl From<[i64; 8]> for CoeffVector {
    fn from(x: [i64; 8]) -> Self {
        Self(x)
    }
}

fn checks_hold(checks: &[u8], word: BinaryWord) -> bool {
    checks.iter().all(|mask| (word & mask).count_ones() % 2 == 0)
}

/// Lattice membership of an integer coordinate vector.
pub fn member(id: LatticeId, x: &CoeffVector) -> bool {
    match id {
        LatticeId::L3 => QuatElement::from_coeffs(x.coeffs()).is_hurwitz(),
        _ => checks_hold(id.parity_checks(), x.residue()),
    }
}

/// Membership of a residue class mod 2.
pub fn residue_member(id: LatticeId, word: BinaryWord) -> bool {
    checks_hold(id.parity_checks(), word)
}

/// `[L2 : id]`, obtained by counting members among the 2⁸ residues mod 2.
pub fn index_of(id: LatticeId) -> Result<u32, LatticeError> {
    if !id.is_nested() {
        return Err(LatticeError::Unsupported { op: "index_of", id });
    }
    let members = (0..=u8::MAX).filter(|&w| residue_member(id, w)).count() as u32;
    Ok(256 / members)
}

/// Bits per channel use of the code `Z_Q^8 ∩ id`: `log2(Q⁸ / [L2:id]) / 4`.
pub fn rate_bpcu(q: u32, id: LatticeId) -> Result<f64, LatticeError> {
    if q < 2 {
        return Err(LatticeError::AlphabetTooSmall(q));
    }
    let index = index_of(id)?;
    Ok((8.0 * f64::from(q).log2() - f64::from(index).log2()) / 4.0)
}

/// Fundamental volume after scaling the minimum determinant to one,
/// relative to `m(L2) = 1`: a real scale `s` multiplies both the
/// determinant and the volume by `s⁸`, so the result is `index / min_det`.
pub fn normalized_volume(id: LatticeId) -> Result<Rational64, LatticeError> {
    let index = index_of(id)?;
    let min_det = id.min_det().ok_or(LatticeError::Unsupported { op: "normalized_volume", id })?;
    Ok(Rational64::new(i64::from(index), min_det))
}
