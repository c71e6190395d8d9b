//! The Golden code over `O_E = Z[i][θ]`, `θ = (1+√5)/2`, with
//! `σ: √5 ↦ −√5` and the ideal generator `α = 1 + i − iθ`.

use num_complex::Complex64;

use super::gaussian::GaussianInt;

/// `a + bθ` with Gaussian-integer `a`, `b`; arithmetic uses `θ² = θ + 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GoldenInt {
    pub a: GaussianInt,
    pub b: GaussianInt,
}

const THETA: f64 = 1.618_033_988_749_895;

impl GoldenInt {
    pub const fn new(a: GaussianInt, b: GaussianInt) -> Self {
        Self { a, b }
    }

    pub const fn from_gaussian(a: GaussianInt) -> Self {
        Self::new(a, GaussianInt::ZERO)
    }

    /// `α = 1 + i − iθ`.
    pub const fn alpha() -> Self {
        Self::new(GaussianInt::ONE_PLUS_I, GaussianInt::new(0, -1))
    }

    /// `σ(a + bθ) = a + b(1 − θ)`.
    pub fn sigma(self) -> Self {
        Self::new(self.a + self.b, -self.b)
    }

    pub fn mul(self, rhs: Self) -> Self {
        let bd = self.b * rhs.b;
        Self::new(self.a * rhs.a + bd, self.a * rhs.b + self.b * rhs.a + bd)
    }

    /// Relative norm `x·σ(x) ∈ Z[i]`.
    pub fn norm(self) -> GaussianInt {
        let n = self.mul(self.sigma());
        debug_assert!(n.b.is_zero());
        n.a
    }

    pub fn to_complex(self) -> Complex64 {
        self.a.to_complex() + self.b.to_complex() * THETA
    }
}

/// `(1/√5)·[[αx0, iσ(α)σ(x1)], [αx1, σ(α)σ(x0)]]`.
pub fn golden_codeword(x0: GoldenInt, x1: GoldenInt) -> [[Complex64; 2]; 2] {
    let alpha = GoldenInt::alpha();
    let scale = 1.0 / 5f64.sqrt();
    let i = Complex64::new(0.0, 1.0);
    let e = |x: GoldenInt| x.to_complex() * scale;
    [
        [e(alpha.mul(x0)), i * e(alpha.sigma().mul(x1.sigma()))],
        [e(alpha.mul(x1)), e(alpha.sigma().mul(x0.sigma()))],
    ]
}

/// Exact `5·det`, i.e. `N(α)·(N(x0) − i·N(x1))`.
pub fn golden_det_times_five(x0: GoldenInt, x1: GoldenInt) -> GaussianInt {
    GoldenInt::alpha().norm() * (x0.norm() - x1.norm().mul_i())
}
