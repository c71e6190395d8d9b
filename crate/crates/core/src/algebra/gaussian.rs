//! Gaussian integers `a + bi` with exact integer parts.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

/// An element `re + im·i` of `Z[i]`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussianInt {
    pub re: i64,
    pub im: i64,
}

impl GaussianInt {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const I: Self = Self::new(0, 1);
    /// The prime `1 + i` above 2.
    pub const ONE_PLUS_I: Self = Self::new(1, 1);

    pub const fn new(re: i64, im: i64) -> Self {
        Self { re, im }
    }

    pub const fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    /// Field norm `re² + im²`.
    pub const fn norm(self) -> i64 {
        self.re * self.re + self.im * self.im
    }

    pub const fn is_zero(self) -> bool {
        self.re == 0 && self.im == 0
    }

    /// Multiplication by `i`.
    pub const fn mul_i(self) -> Self {
        Self::new(-self.im, self.re)
    }

    /// Membership in the prime ideal `(1+i)G`, i.e. `re + im` even.
    pub const fn in_prime_ideal(self) -> bool {
        (self.re + self.im) % 2 == 0
    }

    /// Exact division by `1 + i`, if the quotient is a Gaussian integer.
    pub fn div_one_plus_i(self) -> Option<Self> {
        // (a+bi)(1-i)/2 = ((a+b) + (b-a)i)/2
        if !self.in_prime_ideal() {
            return None;
        }
        Some(Self::new((self.re + self.im) / 2, (self.im - self.re) / 2))
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::new(self.re as f64, self.im as f64)
    }
}

/// Norm of a Gaussian integer.
pub fn gi_norm(z: GaussianInt) -> i64 {
    z.norm()
}

impl From<i64> for GaussianInt {
    fn from(re: i64) -> Self {
        Self::new(re, 0)
    }
}

impl fmt::Display for GaussianInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}-{}i", -im),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

impl Add for GaussianInt {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.re + rhs.re, self.im + rhs.im)
    }
}

impl Sub for GaussianInt {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.re - rhs.re, self.im - rhs.im)
    }
}

impl Neg for GaussianInt {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for GaussianInt {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.re * rhs.re - self.im * rhs.im,
            self.re * rhs.im + self.im * rhs.re,
        )
    }
}

impl Mul<i64> for GaussianInt {
    type Output = Self;
    fn mul(self, rhs: i64) -> Self {
        Self::new(self.re * rhs, self.im * rhs)
    }
}

impl AddAssign for GaussianInt {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl SubAssign for GaussianInt {
    fn sub_assign(&mut self, rhs: Self) {
        *self = *self - rhs;
    }
}

impl MulAssign for GaussianInt {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl std::iter::Sum for GaussianInt {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}
