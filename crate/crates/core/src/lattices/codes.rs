//! Binary codes obtained by reducing the nested lattices modulo 2.

use std::collections::BTreeSet;

use super::{residue_member, LatticeError, LatticeId};

/// A length-8 binary word; bit `i` is coordinate `x_{i+1}`.
pub type BinaryWord = u8;

/// Residues mod 2 of the members of a lattice between `2Z⁸` and `Z⁸`.
pub fn binary_projection(id: LatticeId) -> Result<BTreeSet<BinaryWord>, LatticeError> {
    if !id.is_nested() {
        return Err(LatticeError::Unsupported { op: "binary_projection", id });
    }
    Ok((0..=u8::MAX).filter(|&w| residue_member(id, w)).collect())
}

/// Closed under XOR and contains zero.
pub fn is_linear_code(code: &BTreeSet<BinaryWord>) -> bool {
    code.contains(&0) && code.iter().all(|a| code.iter().all(|b| code.contains(&(a ^ b))))
}

/// Linear span of the given generators.
pub fn span(generators: &[BinaryWord]) -> BTreeSet<BinaryWord> {
    let mut words = BTreeSet::from([0u8]);
    for &g in generators {
        let shifted: Vec<BinaryWord> = words.iter().map(|w| w ^ g).collect();
        words.extend(shifted);
    }
    words
}

/// Even-weight words supported on `support`, zero elsewhere.
pub fn parity_check_code(support: BinaryWord) -> BTreeSet<BinaryWord> {
    (0..=u8::MAX)
        .filter(|w| w & !support == 0 && w.count_ones() % 2 == 0)
        .collect()
}

/// The `[8, 4, 4]` extended Hamming code as the first-order Reed–Muller
/// code: the all-ones word and the three coordinate-function rows.
pub fn extended_hamming_code() -> BTreeSet<BinaryWord> {
    span(&[0b1111_1111, 0b0000_1111, 0b0011_0011, 0b0101_0101])
}

pub fn minimum_distance(code: &BTreeSet<BinaryWord>) -> u32 {
    code.iter().filter(|&&w| w != 0).map(|w| w.count_ones()).min().unwrap_or(0)
}
