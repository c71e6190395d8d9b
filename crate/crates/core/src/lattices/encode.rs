use std::ops::Neg;

use num_complex::Complex64;

use super::{CoeffVector, LatticeError, LatticeId};
use crate::algebra::GaussianInt;

pub type Mat4<T> = [[T; 4]; 4];

/// `M_L(c1, c2, c3, c4)`, the matrix of multiplication by
/// `c1 + c2ζ + c3ζ² + c4ζ³` in `Q(ζ16)`.
pub fn encode_l1(x: &CoeffVector) -> Mat4<GaussianInt> {
    let [c1, c2, c3, c4] = x.coeffs();
    let i = |z: GaussianInt| z.mul_i();
    [
        [c1, i(c4), i(c3), i(c2)],
        [c2, c1, i(c4), i(c3)],
        [c3, c2, c1, i(c4)],
        [c4, c3, c2, c1],
    ]
}

/// The quaternionic matrix `M(c1, c2, c3, c4) = [[A, −B^H], [B, A^H]]`.
pub fn encode_h(x: &CoeffVector) -> Mat4<GaussianInt> {
    let [c1, c2, c3, c4] = x.coeffs();
    let i = |z: GaussianInt| z.mul_i();
    [
        [c1, i(c2), -c3.conj(), -c4.conj()],
        [c2, c1, i(c4.conj()), -c3.conj()],
        [c3, i(c4), c1.conj(), c2.conj()],
        [c4, c3, -i(c2.conj()), c1.conj()],
    ]
}

/// The DAST sign pattern: row `r` multiplies `x_k` by the `k`-th entry of
/// the Hadamard row `h_{r+1}`.
pub fn encode_dast<T: Copy + Neg<Output = T>>(x: [T; 4]) -> Mat4<T> {
    let [a, b, c, d] = x;
    [
        [a, b, c, d],
        [a, -b, c, -d],
        [a, b, -c, -d],
        [a, -b, -c, d],
    ]
}

pub fn to_complex_matrix(m: &Mat4<GaussianInt>) -> Mat4<Complex64> {
    m.map(|row| row.map(GaussianInt::to_complex))
}

/// Exact determinant by cofactor expansion along the first row.
pub fn det4(m: &Mat4<GaussianInt>) -> GaussianInt {
    let det3 = |skip: usize| -> GaussianInt {
        let cols: Vec<usize> = (0..4).filter(|&c| c != skip).collect();
        let e = |r: usize, c: usize| m[r][cols[c]];
        e(1, 0) * (e(2, 1) * e(3, 2) - e(2, 2) * e(3, 1))
            - e(1, 1) * (e(2, 0) * e(3, 2) - e(2, 2) * e(3, 0))
            + e(1, 2) * (e(2, 0) * e(3, 1) - e(2, 1) * e(3, 0))
    };
    (0..4)
        .map(|c| {
            let term = m[0][c] * det3(c);
            if c % 2 == 0 {
                term
            } else {
                -term
            }
        })
        .sum()
}

/// `det(MM^H) = (α² − |k|²)²` with `α = Σ|c_j|²` and
/// `k = −i c1 c2* + c2 c1* − i c3 c4* + c4 c3*`.
pub fn gram_det(x: &CoeffVector) -> i64 {
    let [c1, c2, c3, c4] = x.coeffs();
    let alpha: i64 = [c1, c2, c3, c4].iter().map(|c| c.norm()).sum();
    let k = -(c1 * c2.conj()).mul_i() + c2 * c1.conj() - (c3 * c4.conj()).mul_i() + c4 * c3.conj();
    let inner = alpha * alpha - k.norm();
    inner * inner
}

/// `|det M|²` from the exact matrix of the given family.
pub fn gram_det_expansion(id: LatticeId, x: &CoeffVector) -> Result<i64, LatticeError> {
    let m = match id {
        LatticeId::L1 => encode_l1(x),
        id if id.is_quaternionic() => encode_h(x),
        id => return Err(LatticeError::Unsupported { op: "gram_det_expansion", id }),
    };
    Ok(det4(&m).norm())
}
