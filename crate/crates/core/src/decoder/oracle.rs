use super::{DecodeError, DecodeResult, EffectiveChannel, SearchSpace};
use crate::lattices::LatticeId;

/// Largest number of candidates the exhaustive decoder will examine.
pub const ORACLE_LIMIT: f64 = 1e7;

/// Exhaustive minimization of `|y′ − Rq|²` over the congruence-valid points.
pub fn ml_oracle(ch: &EffectiveChannel, y_prime: &[f64], q: u32, lattice: LatticeId) -> Result<DecodeResult, DecodeError> {
    ml_oracle_in(ch, y_prime, &SearchSpace::for_lattice(lattice, q)?)
}

/// Exhaustive search over `space`; ties go to the first candidate in
/// lexicographic order of search positions.
pub fn ml_oracle_in(ch: &EffectiveChannel, y_prime: &[f64], space: &SearchSpace) -> Result<DecodeResult, DecodeError> {
    space.validate()?;
    let m = ch.dim();
    if y_prime.len() != m || space.dim() != m {
        return Err(DecodeError::DimensionMismatch { expected: m, got: y_prime.len().min(space.dim()) });
    }
    let candidates = f64::from(space.alphabet).powi(m as i32);
    if candidates > ORACLE_LIMIT {
        return Err(DecodeError::TooLarge { candidates, limit: ORACLE_LIMIT });
    }
    let alphabet = i64::from(space.alphabet);
    let mut x = vec![0i64; m];
    let mut best: Option<(f64, Vec<i64>)> = None;
    let mut examined = 0u64;
    for mut n in 0..candidates as u64 {
        for v in x.iter_mut().rev() {
            *v = (n % alphabet as u64) as i64;
            n /= alphabet as u64;
        }
        if !space.satisfies_all(&x) {
            continue;
        }
        examined += 1;
        let d: f64 = (0..m)
            .map(|j| {
                let e = y_prime[j] - (j..m).map(|l| ch.r[(j, l)] * x[l] as f64).sum::<f64>();
                e * e
            })
            .sum();
        if best.as_ref().map_or(true, |(bd, _)| d < *bd) {
            best = Some((d, x.clone()));
        }
    }
    Ok(match best {
        Some((d, b)) => {
            let q_hat = space.to_natural(&b);
            DecodeResult { first_leaf: Some(q_hat.clone()), q_hat, distance_sq: d, nodes_visited: examined, found: true }
        }
        None => DecodeResult { q_hat: Vec::new(), distance_sq: f64::INFINITY, nodes_visited: 0, found: false, first_leaf: None },
    })
}
