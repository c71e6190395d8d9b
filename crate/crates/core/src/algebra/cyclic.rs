//! Left-regular matrix representation of a cyclic algebra
//! `(E/F, σ, γ) = E ⊕ uE ⊕ … ⊕ u^{n-1}E` with `xu = uσ(x)` and `uⁿ = γ`.

use num_complex::Complex64;

use super::AlgebraError;

/// Pre-evaluated data for one algebra element `x_0 + u x_1 + … + u^{n-1} x_{n-1}`.
///
/// `sigma_images[k][i]` holds `σ^k(x_i)`; row 0 is the raw coefficients.
/// Consistency of the images with an actual automorphism is the caller's
/// responsibility.
#[derive(Clone, Debug, PartialEq)]
pub struct CyclicRepInput {
    pub n: usize,
    pub gamma: Complex64,
    pub sigma_images: Vec<Vec<Complex64>>,
}

impl CyclicRepInput {
    /// Builds the image table from coefficients and a callable `σ`.
    pub fn from_automorphism(
        gamma: Complex64,
        coeffs: &[Complex64],
        sigma: impl Fn(Complex64) -> Complex64,
    ) -> Self {
        let n = coeffs.len();
        let mut sigma_images = Vec::with_capacity(n);
        let mut row = coeffs.to_vec();
        for _ in 0..n {
            sigma_images.push(row.clone());
            row = row.into_iter().map(&sigma).collect();
        }
        Self { n, gamma, sigma_images }
    }
}

/// Column `k` holds `σ^k` applied to the coefficients shifted down by `k`,
/// with `γ` multiplying the entries that wrap around.
pub fn cyclic_rep(input: &CyclicRepInput) -> Result<Vec<Vec<Complex64>>, AlgebraError> {
    let n = input.n;
    if n == 0 {
        return Err(AlgebraError::EmptyRepresentation);
    }
    let rows = input.sigma_images.len();
    let bad = input
        .sigma_images
        .iter()
        .enumerate()
        .find(|(_, row)| row.len() != n);
    if rows != n || bad.is_some() {
        let (bad_row, bad_len) = bad.map_or((rows, 0), |(r, row)| (r, row.len()));
        return Err(AlgebraError::MalformedImages { n, rows, bad_row, bad_len });
    }

    let mut a = vec![vec![Complex64::new(0.0, 0.0); n]; n];
    for (col, images) in input.sigma_images.iter().enumerate() {
        for (row, entry) in a.iter_mut().enumerate() {
            entry[col] = if row >= col {
                images[row - col]
            } else {
                input.gamma * images[n + row - col]
            };
        }
    }
    Ok(a)
}
