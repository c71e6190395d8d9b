use std::collections::HashSet;

use super::DecodeError;
use crate::lattices::LatticeId;

/// `Σ_{i ∈ mask} q_i ≡ parity (mod 2)` over natural coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParityCheck {
    pub mask: u8,
    pub parity: u8,
}

impl ParityCheck {
    fn holds(&self, bits: u8) -> bool {
        (bits & self.mask).count_ones() % 2 == u32::from(self.parity)
    }
}

/// The constrained search set: `q ∈ {0, …, alphabet−1}^m`, visited in
/// `order` (search position `k` holds natural coordinate `order[k]`),
/// subject to parity checks and optionally to membership in a finite set.
#[derive(Clone, Debug)]
pub struct SearchSpace {
    pub alphabet: u32,
    pub order: Vec<usize>,
    pub checks: Vec<ParityCheck>,
    /// Allowed `q` vectors in natural order, tested at the leaves.
    pub codebook: Option<HashSet<Vec<i64>>>,
}

impl SearchSpace {
    pub fn unconstrained(alphabet: u32, m: usize) -> Self {
        Self { alphabet, order: (0..m).collect(), checks: Vec::new(), codebook: None }
    }

    /// `Z_Q^8` cut down by the congruences of `lattice`.
    pub fn for_lattice(lattice: LatticeId, alphabet: u32) -> Result<Self, DecodeError> {
        if lattice == LatticeId::L3 {
            return Err(DecodeError::Unsupported(lattice));
        }
        let checks = lattice.parity_checks().iter().map(|&mask| ParityCheck { mask, parity: 0 }).collect();
        Ok(Self { alphabet, order: lattice.search_order().to_vec(), checks, codebook: None })
    }

    pub fn dim(&self) -> usize {
        self.order.len()
    }

    pub(crate) fn validate(&self) -> Result<(), DecodeError> {
        if self.alphabet < 2 {
            return Err(DecodeError::AlphabetTooSmall(self.alphabet));
        }
        Ok(())
    }

    /// Checks re-expressed on search positions, grouped by the level at
    /// which their last coordinate gets assigned (levels run from `m−1`
    /// down to `0`).
    pub(crate) fn checks_by_level(&self) -> Vec<Vec<ParityCheck>> {
        let mut levels = vec![Vec::new(); self.dim()];
        for check in &self.checks {
            let mask = self.to_search_mask(check.mask);
            if mask != 0 {
                levels[mask.trailing_zeros() as usize].push(ParityCheck { mask, parity: check.parity });
            }
        }
        levels
    }

    fn to_search_mask(&self, natural: u8) -> u8 {
        self.order
            .iter()
            .enumerate()
            .filter(|(_, &nat)| natural >> nat & 1 == 1)
            .fold(0u8, |acc, (k, _)| acc | 1 << k)
    }

    pub(crate) fn to_natural(&self, search: &[i64]) -> Vec<i64> {
        let mut out = vec![0; search.len()];
        for (k, &nat) in self.order.iter().enumerate() {
            out[nat] = search[k];
        }
        out
    }

    pub(crate) fn leaf_allowed(&self, search: &[i64]) -> bool {
        self.codebook.as_ref().map_or(true, |set| set.contains(&self.to_natural(search)))
    }

    pub(crate) fn satisfies_all(&self, search: &[i64]) -> bool {
        let natural = self.to_natural(search);
        let bits = parity_bits(&natural);
        self.checks.iter().all(|c| c.holds(bits)) && self.leaf_allowed(search)
    }
}

/// Bit `k` set iff coordinate `k` is odd.
pub(crate) fn parity_bits(values: &[i64]) -> u8 {
    values.iter().enumerate().fold(0u8, |acc, (k, v)| acc | ((v.rem_euclid(2) as u8) << k))
}

pub(crate) fn level_checks_pass(checks: &[ParityCheck], search: &[i64]) -> bool {
    let bits = parity_bits(search);
    checks.iter().all(|c| c.holds(bits))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Pass,
    Fail,
    Undetermined,
}

/// Evaluates the congruences of `lattice` on a partial assignment.
///
/// `suffix` holds the values at search positions `level, …, 7` (in the
/// lattice's search order). Fails as soon as a fully assigned check is
/// violated; passes once every check is assigned and satisfied.
pub fn ccsd_check(lattice: LatticeId, suffix: &[i64], level: usize) -> CheckOutcome {
    assert_eq!(level + suffix.len(), 8, "suffix must cover positions level..8");
    let space = SearchSpace {
        alphabet: 2,
        order: lattice.search_order().to_vec(),
        checks: lattice.parity_checks().iter().map(|&mask| ParityCheck { mask, parity: 0 }).collect(),
        codebook: None,
    };
    let mut full = [0i64; 8];
    full[level..].copy_from_slice(suffix);
    let mut undetermined = false;
    for (fire, checks) in space.checks_by_level().iter().enumerate() {
        if checks.is_empty() {
            continue;
        }
        if fire < level {
            undetermined = true;
        } else if !level_checks_pass(checks, &full) {
            return CheckOutcome::Fail;
        }
    }
    if undetermined {
        CheckOutcome::Undetermined
    } else {
        CheckOutcome::Pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattices::{member, CoeffVector};

    #[test]
    fn l2_always_passes() {
        assert_eq!(ccsd_check(LatticeId::L2, &[1, 0, 1], 5), CheckOutcome::Pass);
        assert_eq!(ccsd_check(LatticeId::L2, &[1; 8], 0), CheckOutcome::Pass);
    }

    #[test]
    fn l4_full_vector() {
        assert_eq!(ccsd_check(LatticeId::L4, &[1, 1, 0, 0, 0, 0, 0, 0], 0), CheckOutcome::Pass);
        assert_eq!(ccsd_check(LatticeId::L4, &[1, 0, 0, 0, 0, 0, 0, 0], 0), CheckOutcome::Fail);
        assert_eq!(ccsd_check(LatticeId::L4, &[1, 0, 0], 5), CheckOutcome::Undetermined);
    }

    #[test]
    fn l6_pair_sums() {
        // q7 + q8 odd: nothing is decided until the pair (q5, q6) is fixed
        assert_eq!(ccsd_check(LatticeId::L6, &[0, 1], 6), CheckOutcome::Undetermined);
        assert_eq!(ccsd_check(LatticeId::L6, &[1, 1, 0, 1], 4), CheckOutcome::Fail);
        assert_eq!(ccsd_check(LatticeId::L6, &[1, 0, 0, 1], 4), CheckOutcome::Undetermined);
    }

    fn extendable(lattice: LatticeId, suffix: &[i64], level: usize) -> bool {
        (0u32..1 << level).any(|prefix| {
            let mut search = [0i64; 8];
            for (k, v) in search.iter_mut().enumerate().take(level) {
                *v = i64::from(prefix >> k & 1);
            }
            search[level..].copy_from_slice(suffix);
            let order = lattice.search_order();
            let mut natural = [0i64; 8];
            for k in 0..8 {
                natural[order[k]] = search[k];
            }
            member(lattice, &CoeffVector(natural))
        })
    }

    #[test]
    fn sound_and_complete_on_binary_suffixes() {
        for lattice in [LatticeId::L4, LatticeId::L5, LatticeId::L6] {
            for level in 0..8 {
                for bits in 0u32..1 << (8 - level) {
                    let suffix: Vec<i64> = (0..8 - level).map(|k| i64::from(bits >> k & 1)).collect();
                    let outcome = ccsd_check(lattice, &suffix, level);
                    let ok = extendable(lattice, &suffix, level);
                    if outcome == CheckOutcome::Fail {
                        assert!(!ok, "{lattice} level {level} {suffix:?}");
                    }
                    if level == 0 {
                        assert_eq!(outcome == CheckOutcome::Pass, ok);
                    }
                }
            }
        }
    }
}
