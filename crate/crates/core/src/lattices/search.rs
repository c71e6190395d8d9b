//! Exhaustive minimum-determinant search and short-vector enumeration.

use rayon::prelude::*;

use super::{det4, encode_l1, gram_det, member, CoeffVector, LatticeError, LatticeId};

/// Largest doubled squared norm examined when enumerating short vectors.
const MAX_DOUBLED_NORM: i64 = 64;

/// Result of [`min_det_search`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MinDet {
    pub value: i64,
    /// First nonzero member (in lexicographic order) attaining `value`.
    pub witness: CoeffVector,
}

fn det_of(id: LatticeId, x: &CoeffVector) -> i64 {
    match id {
        LatticeId::L1 => det4(&encode_l1(x)).norm(),
        _ => gram_det(x),
    }
}

/// Minimum of `det(MM^H)` over nonzero members with every `|x_i| ≤ bound`.
pub fn min_det_search(id: LatticeId, bound: i64) -> Result<MinDet, LatticeError> {
    if !matches!(id, LatticeId::L1) && !id.is_nested() {
        return Err(LatticeError::Unsupported { op: "min_det_search", id });
    }
    if bound < 2 {
        return Err(LatticeError::BoxTooSmall { min: 2, got: bound });
    }
    let side = 2 * bound + 1;
    let tail = side.pow(7);
    (-bound..=bound)
        .into_par_iter()
        .filter_map(|first| {
            let mut best: Option<(i64, CoeffVector)> = None;
            for mut n in 0..tail {
                let mut x = [0i64; 8];
                x[0] = first;
                for v in x[1..].iter_mut().rev() {
                    *v = n % side - bound;
                    n /= side;
                }
                let x = CoeffVector(x);
                if x.is_zero() || !member(id, &x) {
                    continue;
                }
                let d = det_of(id, &x);
                if best.map_or(true, |(b, _)| d < b) {
                    best = Some((d, x));
                }
            }
            best
        })
        .min()
        .map(|(value, witness)| MinDet { value, witness })
        .ok_or(LatticeError::EnumerationExhausted { requested: 1, found: 0, radius: bound as f64 })
}

/// A lattice (or coset) vector stored in doubled coordinates `y = 2x`, so that
/// the half-integer coset `½𝟙 + L` stays integral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShortVector {
    pub doubled: [i64; 8],
}

impl ShortVector {
    pub fn doubled_norm_sqr(&self) -> i64 {
        self.doubled.iter().map(|v| v * v).sum()
    }

    pub fn norm_sqr(&self) -> f64 {
        self.doubled_norm_sqr() as f64 / 4.0
    }

    pub fn coords(&self) -> [f64; 8] {
        self.doubled.map(|v| v as f64 / 2.0)
    }
}

fn enumerate_ball(parity: i64, budget: i64, prefix: &mut Vec<i64>, out: &mut Vec<[i64; 8]>) {
    if prefix.len() == 8 {
        out.push(prefix.as_slice().try_into().unwrap());
        return;
    }
    let mut limit = 0;
    while (limit + 1) * (limit + 1) <= budget {
        limit += 1;
    }
    let start = if (-limit - parity).rem_euclid(2) == 0 { -limit } else { -limit + 1 };
    let mut v = start;
    while v <= limit {
        prefix.push(v);
        enumerate_ball(parity, budget - v * v, prefix, out);
        prefix.pop();
        v += 2;
    }
}

fn supports_energy(id: LatticeId) -> bool {
    id.min_det().is_some()
}

/// The `k` shortest nonzero members of `id` (or of the coset `½𝟙 + id` when
/// `offset`), ordered by norm and then lexicographically.
pub fn shortest_vectors(id: LatticeId, k: usize, offset: bool) -> Result<Vec<ShortVector>, LatticeError> {
    if !supports_energy(id) {
        return Err(LatticeError::Unsupported { op: "shortest_vectors", id });
    }
    if k == 0 {
        return Err(LatticeError::EmptyRequest);
    }
    let parity = i64::from(offset);
    let mut radius = 4;
    loop {
        let mut ball = Vec::new();
        enumerate_ball(parity, radius, &mut Vec::with_capacity(8), &mut ball);
        let mut found: Vec<ShortVector> = ball
            .into_iter()
            .filter(|y| {
                let x = CoeffVector(y.map(|v| (v - parity).div_euclid(2)));
                (offset || !x.is_zero()) && member(id, &x)
            })
            .map(|doubled| ShortVector { doubled })
            .collect();
        if found.len() >= k {
            found.sort_by_key(|v| (v.doubled_norm_sqr(), v.doubled));
            found.truncate(k);
            return Ok(found);
        }
        if radius >= MAX_DOUBLED_NORM {
            return Err(LatticeError::EnumerationExhausted {
                requested: k,
                found: found.len(),
                radius: radius as f64 / 4.0,
            });
        }
        radius += 4;
    }
}

/// Squared entry scale that brings the minimum determinant to one:
/// `s⁸ · min_det = 1`.
pub fn unit_det_scale_sqr(id: LatticeId) -> Result<f64, LatticeError> {
    let m = id.min_det().ok_or(LatticeError::Unsupported { op: "unit_det_scale", id })?;
    Ok((m as f64).powf(-0.25))
}

/// Mean squared norm of the `k` shortest vectors after scaling to unit
/// minimum determinant.
pub fn average_energy(id: LatticeId, k: usize, offset: bool) -> Result<f64, LatticeError> {
    let vectors = shortest_vectors(id, k, offset)?;
    let total: i64 = vectors.iter().map(ShortVector::doubled_norm_sqr).sum();
    Ok(total as f64 / 4.0 / k as f64 * unit_det_scale_sqr(id)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_searches() {
        assert_eq!(min_det_search(LatticeId::L2, 2).unwrap().value, 1);
        assert_eq!(min_det_search(LatticeId::L4, 2).unwrap().value, 4);
        assert!(min_det_search(LatticeId::L2, 1).is_err());
        assert!(min_det_search(LatticeId::Dast, 2).is_err());
    }

    #[test]
    fn witness_attains_minimum() {
        let m = min_det_search(LatticeId::L5, 2).unwrap();
        assert!(member(LatticeId::L5, &m.witness));
        assert_eq!(gram_det(&m.witness), m.value);
    }

    #[test]
    fn shortest_of_z8() {
        let v = shortest_vectors(LatticeId::L2, 16, false).unwrap();
        assert!(v.iter().all(|s| s.norm_sqr() == 1.0));
        assert_eq!(v[0].doubled, [-2, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(average_energy(LatticeId::L2, 1, false).unwrap(), 1.0);
    }

    #[test]
    fn qpsk_coset() {
        let v = shortest_vectors(LatticeId::L2, 256, true).unwrap();
        assert!(v.iter().all(|s| s.doubled.iter().all(|c| c.abs() == 1)));
        assert_eq!(average_energy(LatticeId::L2, 256, true).unwrap(), 2.0);
    }

    #[test]
    fn counts_by_shell() {
        // 16 + 112 + 448 vectors of Z⁸ with norms 1, 2, 3
        let v = shortest_vectors(LatticeId::L2, 576, false).unwrap();
        assert_eq!(v.last().unwrap().doubled_norm_sqr(), 12);
        assert_eq!(average_energy(LatticeId::L2, 256, false).unwrap(), 2.4375);
    }

    #[test]
    fn exhausted_radius() {
        let err = shortest_vectors(LatticeId::L6, 10_000_000, false).unwrap_err();
        assert!(matches!(err, LatticeError::EnumerationExhausted { .. }));
        assert!(matches!(shortest_vectors(LatticeId::L2, 0, false), Err(LatticeError::EmptyRequest)));
    }
}
