use std::f64::consts::{FRAC_1_SQRT_2, PI};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use super::ChannelError;
use crate::decoder::RealMatrix;
use crate::lattices::{encode_dast, encode_h, encode_l1, to_complex_matrix, CoeffVector, LatticeId, Mat4};

/// A channel vector `h` for `y = hX + n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelRealization {
    pub h: [Complex64; 4],
}

impl ChannelRealization {
    pub fn new(h: [Complex64; 4]) -> Self {
        Self { h }
    }

    /// I.i.d. unit-variance circularly symmetric complex Gaussian entries.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R) -> Self {
        Self { h: std::array::from_fn(|_| complex_gaussian(rng)) }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.h.iter().map(Complex64::norm_sqr).sum()
    }

    /// Row vector times matrix.
    pub fn apply(&self, m: &Mat4<Complex64>) -> [Complex64; 4] {
        std::array::from_fn(|c| (0..4).map(|r| self.h[r] * m[r][c]).sum())
    }
}

/// `CN(0, 1)`: variance `1/2` per real component.
pub(crate) fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * FRAC_1_SQRT_2
}

/// `(Re v1, …, Re v4, Im v1, …, Im v4)`.
pub fn realify(v: &[Complex64; 4]) -> [f64; 8] {
    std::array::from_fn(|k| if k < 4 { v[k].re } else { v[k - 4].im })
}

/// The matrix for the `k`-th natural coordinate: `B_{2t−1}` carries
/// `Re c_t` and `B_{2t}` carries `Im c_t`.
pub fn basis_matrix(lattice: LatticeId, k: usize) -> Result<Mat4<Complex64>, ChannelError> {
    assert!(k < 8, "basis index {k} out of range");
    let mut x = [0i64; 8];
    x[k] = 1;
    let x = CoeffVector(x);
    match lattice {
        LatticeId::L1 => Ok(to_complex_matrix(&encode_l1(&x))),
        LatticeId::L2 | LatticeId::L4 | LatticeId::L5 | LatticeId::L6 => Ok(to_complex_matrix(&encode_h(&x))),
        LatticeId::Dast => Ok(encode_dast(x.coeffs().map(|c| c.to_complex()))),
        LatticeId::L3 => Err(ChannelError::NoBasis(lattice)),
    }
}

/// Real `8 × 8` matrix whose column `k` is `realify(h·B_{order[k]})`, with
/// `order` the lattice's search order.
pub fn effective_channel(h: &ChannelRealization, lattice: LatticeId) -> Result<RealMatrix, ChannelError> {
    let columns = lattice
        .search_order()
        .iter()
        .map(|&k| Ok(realify(&h.apply(&basis_matrix(lattice, k)?))))
        .collect::<Result<Vec<_>, ChannelError>>()?;
    Ok(RealMatrix::from_columns(&columns))
}

/// How the collapse set of a lattice family is described.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SensitivityFamily {
    /// Common eigenvectors are the Hadamard rows.
    Dast,
    /// Common eigenvectors are `(1, ζ^j, ζ^{2j}, ζ^{3j})`, `j = 1, 5, 9, 13`.
    Cyclotomic,
    /// `h = h₊ + h₋` with `V± = span{(1, ±ξ, 0, 0), (0, 0, 1, ±ξ)}`.
    Quaternionic,
}

impl SensitivityFamily {
    pub fn of(lattice: LatticeId) -> Self {
        match lattice {
            LatticeId::Dast => SensitivityFamily::Dast,
            LatticeId::L1 => SensitivityFamily::Cyclotomic,
            _ => SensitivityFamily::Quaternionic,
        }
    }

    /// Orthogonal vectors whose spans decompose `C⁴` into the pieces that
    /// must all be nonzero for the received lattice to keep full rank.
    pub fn components(self) -> Vec<Vec<[Complex64; 4]>> {
        let c = |re: f64| Complex64::new(re, 0.0);
        match self {
            SensitivityFamily::Dast => [[1.0, 1.0, 1.0, 1.0], [1.0, -1.0, 1.0, -1.0], [1.0, 1.0, -1.0, -1.0], [1.0, -1.0, -1.0, 1.0]]
                .into_iter()
                .map(|row| vec![row.map(c)])
                .collect(),
            SensitivityFamily::Cyclotomic => [1, 5, 9, 13]
                .into_iter()
                .map(|j| {
                    let zeta = Complex64::from_polar(1.0, 2.0 * PI * f64::from(j) / 16.0);
                    vec![std::array::from_fn(|k| zeta.powu(k as u32))]
                })
                .collect(),
            SensitivityFamily::Quaternionic => {
                let xi = Complex64::from_polar(1.0, PI / 4.0);
                let zero = c(0.0);
                [1.0, -1.0]
                    .into_iter()
                    .map(|s| vec![[c(1.0), xi * s, zero, zero], [zero, zero, c(1.0), xi * s]])
                    .collect()
            }
        }
    }
}

/// Smallest squared norm among the orthogonal projections of `h` onto the
/// family's component spaces; zero exactly on the collapse set.
pub fn sensitivity_metric(h: &ChannelRealization, family: SensitivityFamily) -> f64 {
    family
        .components()
        .iter()
        .map(|space| {
            space
                .iter()
                .map(|v| {
                    let norm: f64 = v.iter().map(Complex64::norm_sqr).sum();
                    let inner: Complex64 = h.h.iter().zip(v).map(|(a, b)| a * b.conj()).sum();
                    inner.norm_sqr() / norm
                })
                .sum::<f64>()
        })
        .fold(f64::INFINITY, f64::min)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoder::qr_preprocess;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn first_antenna_reads_first_rows() {
        let h = ChannelRealization::new([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let g = effective_channel(&h, LatticeId::L2).unwrap();
        for k in 0..8 {
            let b = basis_matrix(LatticeId::L2, k).unwrap();
            let expected: Vec<f64> = realify(&b[0]).to_vec();
            assert_eq!(g.column(k), expected);
        }
    }

    #[test]
    fn quaternionic_collapse() {
        let xi = Complex64::from_polar(1.0, PI / 4.0);
        for h in [[c(1.0, 0.0), xi, c(0.0, 0.0), c(0.0, 0.0)], [c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0), -xi]] {
            let h = ChannelRealization::new(h);
            assert!(sensitivity_metric(&h, SensitivityFamily::Quaternionic) < 1e-24);
            assert!(qr_preprocess(&effective_channel(&h, LatticeId::L2).unwrap()).is_err());
        }
    }

    #[test]
    fn first_antenna_splits_evenly() {
        let h = ChannelRealization::new([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        assert!((sensitivity_metric(&h, SensitivityFamily::Quaternionic) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn dast_collapse() {
        // h1 + h2 + h3 has no component along h4
        let h = ChannelRealization::new([c(3.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        assert!(sensitivity_metric(&h, SensitivityFamily::Dast) < 1e-24);
        assert!(qr_preprocess(&effective_channel(&h, LatticeId::Dast).unwrap()).is_err());
    }

    #[test]
    fn cyclotomic_collapse() {
        let rows = SensitivityFamily::Cyclotomic.components();
        let h: [Complex64; 4] = std::array::from_fn(|k| rows[0][0][k] + rows[2][0][k] * c(0.3, 1.0) - rows[3][0][k]);
        let h = ChannelRealization::new(h);
        assert!(sensitivity_metric(&h, SensitivityFamily::Cyclotomic) < 1e-24);
        assert!(qr_preprocess(&effective_channel(&h, LatticeId::L1).unwrap()).is_err());
    }

    #[test]
    fn l3_has_no_basis() {
        assert!(basis_matrix(LatticeId::L3, 0).is_err());
    }
}
