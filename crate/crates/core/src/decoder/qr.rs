use super::{DecodeError, RealMatrix};

/// Columns whose Gram–Schmidt residual falls below this fraction of the
/// largest column norm are treated as linearly dependent.
pub const RANK_TOLERANCE: f64 = 1e-12;

/// A channel matrix `B = QR` ready for tree search.
#[derive(Clone, Debug)]
pub struct EffectiveChannel {
    pub b: RealMatrix,
    /// `n × m` with orthonormal columns.
    pub q: RealMatrix,
    /// `m × m` upper triangular with positive diagonal.
    pub r: RealMatrix,
}

impl EffectiveChannel {
    pub fn dim(&self) -> usize {
        self.r.rows()
    }

    /// `y′ = Qᵀy`.
    pub fn rotate(&self, y: &[f64]) -> Result<Vec<f64>, DecodeError> {
        if y.len() != self.q.rows() {
            return Err(DecodeError::DimensionMismatch { expected: self.q.rows(), got: y.len() });
        }
        Ok(self.q.transpose_mul_vec(y))
    }
}

/// Modified Gram–Schmidt factorization of `B` (`n × m`, `n ≥ m`).
pub fn qr_preprocess(b: &RealMatrix) -> Result<EffectiveChannel, DecodeError> {
    let (n, m) = (b.rows(), b.cols());
    if n < m {
        return Err(DecodeError::DimensionMismatch { expected: m, got: n });
    }
    let scale = (0..m)
        .map(|j| b.column(j).iter().map(|v| v * v).sum::<f64>().sqrt())
        .fold(0.0, f64::max);
    let mut q = RealMatrix::zeros(n, m);
    let mut r = RealMatrix::zeros(m, m);
    for j in 0..m {
        let mut v = b.column(j);
        for k in 0..j {
            let rkj: f64 = (0..n).map(|i| q[(i, k)] * v[i]).sum();
            r[(k, j)] = rkj;
            for (i, vi) in v.iter_mut().enumerate() {
                *vi -= rkj * q[(i, k)];
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !(norm > RANK_TOLERANCE * scale) {
            return Err(DecodeError::RankDeficient { column: j, diagonal: norm });
        }
        r[(j, j)] = norm;
        for (i, vi) in v.iter().enumerate() {
            q[(i, j)] = vi / norm;
        }
    }
    Ok(EffectiveChannel { b: b.clone(), q, r })
}
