//! The quaternion algebra `H = Q(ξ) ⊕ jQ(ξ)` with `ξ = e^{iπ/4}`, its
//! Lipschitz ring `L` and Hurwitz order `H`.
//!
//! An element `q = c1 + ξc2 + jc3 + jξc4` with `c_t ∈ Q(i)` is stored through
//! the scaled coefficients `d_t = (1+i)c_t`. Every element of the Hurwitz
//! order has Gaussian-integer `d_t`, so membership tests reduce to parity
//! congruences on integers.
//!
//! Multiplication rules: `ξ² = i`, `j² = −1` and `zj = jz*` for every complex
//! `z` in the algebra.

use num_complex::{Complex, Complex64};
use num_rational::Rational64;

use super::gaussian::GaussianInt;
use super::AlgebraError;

/// An element of `Q(ξ)` scaled by `1 + i`: the value is `(u + ξv)/(1+i)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct ScaledXi {
    u: GaussianInt,
    v: GaussianInt,
}

impl ScaledXi {
    /// Product of two scaled values; the result carries the scale `(1+i)²`.
    fn mul_raw(self, rhs: Self) -> Self {
        // (u + ξv)(u' + ξv') = uu' + i vv' + ξ(uv' + vu')
        Self {
            u: self.u * rhs.u + (self.v * rhs.v).mul_i(),
            v: self.u * rhs.v + self.v * rhs.u,
        }
    }

    /// Complex conjugate, staying in the `(1+i)` scaling.
    fn conj(self) -> Self {
        // (1+i)·x* = i·u* + ξ·v*
        Self {
            u: self.u.conj().mul_i(),
            v: self.v.conj(),
        }
    }

    fn add(self, rhs: Self) -> Self {
        Self {
            u: self.u + rhs.u,
            v: self.v + rhs.v,
        }
    }

    fn sub(self, rhs: Self) -> Self {
        Self {
            u: self.u - rhs.u,
            v: self.v - rhs.v,
        }
    }

    /// Drops one factor of `(1+i)` from a doubly scaled value.
    fn unscale(self) -> Option<Self> {
        Some(Self {
            u: self.u.div_one_plus_i()?,
            v: self.v.div_one_plus_i()?,
        })
    }

    /// Exact coordinates `r + √2·s` with `r, s ∈ Q(i)`.
    fn to_field(self) -> FieldElem {
        // c = u/(1+i) = u(1-i)/2 and ξc' = √2(1+i)c'/2 = √2·v/2
        let half = |n: i64| Rational64::new(n, 2);
        FieldElem {
            r: Complex::new(half(self.u.re + self.u.im), half(self.u.im - self.u.re)),
            s: Complex::new(half(self.v.re), half(self.v.im)),
        }
    }

    fn to_complex(self) -> Complex64 {
        let xi = Complex64::from_polar(1.0, std::f64::consts::FRAC_PI_4);
        (self.u.to_complex() + xi * self.v.to_complex()) / Complex64::new(1.0, 1.0)
    }
}

/// Exact element `r + √2·s` of `Q(i, √2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
struct FieldElem {
    r: Complex<Rational64>,
    s: Complex<Rational64>,
}

impl FieldElem {
    fn conj(self) -> Self {
        Self {
            r: self.r.conj(),
            s: self.s.conj(),
        }
    }

    fn add(self, rhs: Self) -> Self {
        Self {
            r: self.r + rhs.r,
            s: self.s + rhs.s,
        }
    }

    fn mul(self, rhs: Self) -> Self {
        let two = Complex::new(Rational64::from_integer(2), Rational64::from_integer(0));
        Self {
            r: self.r * rhs.r + two * self.s * rhs.s,
            s: self.r * rhs.s + self.s * rhs.r,
        }
    }

    /// Projection onto the center `Q(√2)`; the `i` and `i√2` coordinates
    /// must vanish.
    fn into_center(self) -> CenterValue {
        assert!(
            self.r.im == Rational64::from_integer(0) && self.s.im == Rational64::from_integer(0),
            "value {self:?} is not in Q(√2)"
        );
        CenterValue {
            rational: self.r.re,
            sqrt2: self.s.re,
        }
    }
}

/// An element `rational + sqrt2·√2` of the center `Q(√2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CenterValue {
    pub rational: Rational64,
    pub sqrt2: Rational64,
}

impl CenterValue {
    pub fn new(rational: Rational64, sqrt2: Rational64) -> Self {
        Self { rational, sqrt2 }
    }

    pub fn from_integers(a: i64, b: i64) -> Self {
        Self::new(Rational64::from_integer(a), Rational64::from_integer(b))
    }

    /// Membership in `Z[√2]`.
    pub fn is_integral(&self) -> bool {
        self.rational.is_integer() && self.sqrt2.is_integer()
    }

    pub fn to_f64(&self) -> f64 {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        f(self.rational) + std::f64::consts::SQRT_2 * f(self.sqrt2)
    }
}

/// `q = c1 + ξc2 + jc3 + jξc4`, stored as `d_t = (1+i)c_t`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct QuatElement {
    pub d: [GaussianInt; 4],
}

impl QuatElement {
    pub const fn from_scaled(d: [GaussianInt; 4]) -> Self {
        Self { d }
    }

    /// Element with Gaussian-integer coefficients `c_t`.
    pub fn from_coeffs(c: [GaussianInt; 4]) -> Self {
        Self {
            d: c.map(|ct| ct * GaussianInt::ONE_PLUS_I),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::from_coeffs([GaussianInt::ONE, GaussianInt::ZERO, GaussianInt::ZERO, GaussianInt::ZERO])
    }

    pub fn xi() -> Self {
        Self::from_coeffs([GaussianInt::ZERO, GaussianInt::ONE, GaussianInt::ZERO, GaussianInt::ZERO])
    }

    pub fn j() -> Self {
        Self::from_coeffs([GaussianInt::ZERO, GaussianInt::ZERO, GaussianInt::ONE, GaussianInt::ZERO])
    }

    /// `ρ = (1 + i + j + k)/2`, i.e. `c1 = (1+i)/2`, `c3 = (1-i)/2`.
    pub fn rho() -> Self {
        Self::from_scaled([GaussianInt::I, GaussianInt::ZERO, GaussianInt::ONE, GaussianInt::ZERO])
    }

    /// Right multiplication by a Gaussian integer scalar.
    pub fn scale(self, g: GaussianInt) -> Self {
        Self { d: self.d.map(|d| d * g) }
    }

    pub fn add(self, rhs: Self) -> Self {
        Self {
            d: std::array::from_fn(|t| self.d[t] + rhs.d[t]),
        }
    }

    pub fn sub(self, rhs: Self) -> Self {
        Self {
            d: std::array::from_fn(|t| self.d[t] - rhs.d[t]),
        }
    }

    /// Lipschitz membership: every `c_t ∈ G`.
    pub fn is_lipschitz(&self) -> bool {
        self.d.iter().all(|d| d.in_prime_ideal())
    }

    /// Hurwitz membership: `(1+i)c_t ∈ G` for all `t` (guaranteed by the
    /// storage), `c1 + c3 ∈ G` and `c2 + c4 ∈ G`.
    pub fn is_hurwitz(&self) -> bool {
        (self.d[0] + self.d[2]).in_prime_ideal() && (self.d[1] + self.d[3]).in_prime_ideal()
    }

    /// The coefficients `c_t`, when all of them are Gaussian integers.
    pub fn gaussian_coeffs(&self) -> Option<[GaussianInt; 4]> {
        let mut c = [GaussianInt::ZERO; 4];
        for (ct, d) in c.iter_mut().zip(self.d) {
            *ct = d.div_one_plus_i()?;
        }
        Some(c)
    }

    fn halves(&self) -> (ScaledXi, ScaledXi) {
        (
            ScaledXi { u: self.d[0], v: self.d[1] },
            ScaledXi { u: self.d[2], v: self.d[3] },
        )
    }

    /// `q = a1 + j·a2` with `a1, a2 ∈ Q(ξ)` evaluated as complex numbers.
    pub fn to_complex_pair(&self) -> (Complex64, Complex64) {
        let (a1, a2) = self.halves();
        (a1.to_complex(), a2.to_complex())
    }

    /// Exact product, or an error when the result leaves the `(1+i)^{-1}G`
    /// coefficient grid (never happens inside the Hurwitz order).
    pub fn checked_mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        // (a1 + j a2)(b1 + j b2) = (a1 b1 − a2* b2) + j (a1* b2 + a2 b1)
        let (a1, a2) = self.halves();
        let (b1, b2) = rhs.halves();
        let first = a1.mul_raw(b1).sub(a2.conj().mul_raw(b2));
        let second = a1.conj().mul_raw(b2).add(a2.mul_raw(b1));
        match (first.unscale(), second.unscale()) {
            (Some(p), Some(q)) => Ok(Self::from_scaled([p.u, p.v, q.u, q.v])),
            _ => Err(AlgebraError::NotRepresentable),
        }
    }

    /// Reduced trace `a1 + a1*` as an exact element of `Q(√2)`.
    pub fn reduced_trace(&self) -> CenterValue {
        let a1 = self.halves().0.to_field();
        a1.add(a1.conj()).into_center()
    }

    /// Reduced norm `|a1|² + |a2|²` as an exact element of `Q(√2)`.
    pub fn reduced_norm(&self) -> CenterValue {
        let (a1, a2) = self.halves();
        let (a1, a2) = (a1.to_field(), a2.to_field());
        a1.mul(a1.conj()).add(a2.mul(a2.conj())).into_center()
    }
}

/// Exact quaternion product.
pub fn quat_mul(p: &QuatElement, q: &QuatElement) -> Result<QuatElement, AlgebraError> {
    p.checked_mul(q)
}

pub fn hurwitz_member(q: &QuatElement) -> bool {
    q.is_hurwitz()
}

pub fn reduced_trace(q: &QuatElement) -> CenterValue {
    q.reduced_trace()
}

pub fn reduced_norm(q: &QuatElement) -> CenterValue {
    q.reduced_norm()
}

/// The sixteen classes of `((1+i)^{-1}G)^4 / G^4`, represented by `d_t ∈ {0, 1}`.
pub fn half_coset_representatives() -> impl Iterator<Item = QuatElement> {
    (0u8..16).map(|bits| {
        QuatElement::from_scaled(std::array::from_fn(|t| {
            if bits >> t & 1 == 1 {
                GaussianInt::ONE
            } else {
                GaussianInt::ZERO
            }
        }))
    })
}

/// The three elements left after reducing a hypothetical proper extension of
/// the Hurwitz order: `(1+i)/2`, `ξ(1+i)/2` and `(1+ξ)(1+i)/2`.
pub fn hurwitz_extension_candidates() -> [QuatElement; 3] {
    // c = (1+i)/2  ⇒  d = (1+i)²/2 = i
    let i = GaussianInt::I;
    let z = GaussianInt::ZERO;
    [
        QuatElement::from_scaled([i, z, z, z]),
        QuatElement::from_scaled([z, i, z, z]),
        QuatElement::from_scaled([i, i, z, z]),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn g(re: i64, im: i64) -> GaussianInt {
        GaussianInt::new(re, im)
    }

    fn approx_eq(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-9
    }

    #[test]
    fn xi_rho_relation() {
        let xi = QuatElement::xi();
        let rho = QuatElement::rho();
        let lhs = quat_mul(&xi, &rho).unwrap();
        let rho_xi = quat_mul(&rho, &xi).unwrap();
        let j_xi = quat_mul(&QuatElement::j(), &xi).unwrap();
        assert_eq!(lhs, rho_xi.sub(j_xi));
    }

    #[test]
    fn defining_relations() {
        let one = QuatElement::one();
        let j = QuatElement::j();
        let xi = QuatElement::xi();
        assert_eq!(quat_mul(&j, &j).unwrap(), QuatElement::zero().sub(one));
        let q = QuatElement::from_coeffs([g(1, 2), g(-3, 0), g(0, 5), g(2, -1)]);
        assert_eq!(quat_mul(&one, &q).unwrap(), q);
        assert_eq!(quat_mul(&q, &one).unwrap(), q);
        // ξ² = i
        let i_elem = QuatElement::from_coeffs([GaussianInt::I, g(0, 0), g(0, 0), g(0, 0)]);
        assert_eq!(quat_mul(&xi, &xi).unwrap(), i_elem);
        // ij = j(-i)
        let ij = quat_mul(&i_elem, &j).unwrap();
        let j_scaled = j.scale(g(0, -1));
        assert_eq!(ij, j_scaled);
    }

    #[test]
    fn hurwitz_examples() {
        assert!(hurwitz_member(&QuatElement::rho()));
        assert!(hurwitz_member(&QuatElement::zero()));
        assert!(!hurwitz_member(&hurwitz_extension_candidates()[0]));
        assert!(!QuatElement::rho().is_lipschitz());
        assert!(QuatElement::xi().is_lipschitz());
    }

    #[test]
    fn rho_in_complex_form() {
        // ρ = (1+i)/2 + j(1-i)/2
        let (a1, a2) = QuatElement::rho().to_complex_pair();
        assert!(approx_eq(a1, Complex64::new(0.5, 0.5)));
        assert!(approx_eq(a2, Complex64::new(0.5, -0.5)));
    }

    #[test]
    fn traces() {
        assert_eq!(reduced_trace(&QuatElement::one()), CenterValue::from_integers(2, 0));
        assert_eq!(reduced_trace(&QuatElement::xi()), CenterValue::from_integers(0, 1));
        assert_eq!(reduced_trace(&QuatElement::j()), CenterValue::from_integers(0, 0));
    }

    #[test]
    fn norms() {
        let half = hurwitz_extension_candidates()[0];
        let n = reduced_norm(&half);
        assert_eq!(n, CenterValue::new(Rational64::new(1, 2), Rational64::from_integer(0)));
        assert!(!n.is_integral());
        assert_eq!(reduced_norm(&QuatElement::one()), CenterValue::from_integers(1, 0));
        let one_plus_xi = QuatElement::one().add(QuatElement::xi());
        assert_eq!(reduced_norm(&one_plus_xi), CenterValue::from_integers(2, 1));
    }

    #[test]
    fn extension_candidates_have_non_integral_norms() {
        for q in hurwitz_extension_candidates() {
            assert!(!q.reduced_norm().is_integral(), "{q:?}");
        }
    }

    #[test]
    fn lipschitz_has_index_four() {
        let members = half_coset_representatives().filter(hurwitz_member).count();
        assert_eq!(members, 4);
    }

    #[test]
    fn non_representable_product() {
        // ((1+i)^{-1})² = 1/(2i) has no (1+i)^{-1}G coordinates
        let q = QuatElement::from_scaled([GaussianInt::ONE, g(0, 0), g(0, 0), g(0, 0)]);
        assert_eq!(quat_mul(&q, &q), Err(AlgebraError::NotRepresentable));
    }

    fn gaussian(range: i64) -> impl Strategy<Value = GaussianInt> {
        (-range..=range, -range..=range).prop_map(|(a, b)| GaussianInt::new(a, b))
    }

    fn hurwitz(range: i64) -> impl Strategy<Value = QuatElement> {
        proptest::array::uniform4(gaussian(range)).prop_map(|mut d| {
            if !(d[0] + d[2]).in_prime_ideal() {
                d[2].re += 1;
            }
            if !(d[1] + d[3]).in_prime_ideal() {
                d[3].re += 1;
            }
            QuatElement::from_scaled(d)
        })
    }

    fn complex_product(p: &QuatElement, q: &QuatElement) -> (Complex64, Complex64) {
        let (a1, a2) = p.to_complex_pair();
        let (b1, b2) = q.to_complex_pair();
        (a1 * b1 - a2.conj() * b2, a1.conj() * b2 + a2 * b1)
    }

    proptest! {
        #[test]
        fn product_matches_floating_evaluation(p in hurwitz(6), q in hurwitz(6)) {
            let exact = quat_mul(&p, &q).unwrap();
            let (e1, e2) = exact.to_complex_pair();
            let (f1, f2) = complex_product(&p, &q);
            prop_assert!(approx_eq(e1, f1) && approx_eq(e2, f2));
        }

        #[test]
        fn hurwitz_is_closed(p in hurwitz(8), q in hurwitz(8)) {
            prop_assert!(quat_mul(&p, &q).unwrap().is_hurwitz());
        }

        #[test]
        fn hurwitz_is_integral(q in hurwitz(10)) {
            prop_assert!(q.reduced_trace().is_integral());
            prop_assert!(q.reduced_norm().is_integral());
        }

        #[test]
        fn associativity(p in hurwitz(4), q in hurwitz(4), r in hurwitz(4)) {
            let left = quat_mul(&quat_mul(&p, &q).unwrap(), &r).unwrap();
            let right = quat_mul(&p, &quat_mul(&q, &r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn norm_is_multiplicative(p in hurwitz(5), q in hurwitz(5)) {
            let pq = quat_mul(&p, &q).unwrap();
            let (np, nq, npq) = (p.reduced_norm(), q.reduced_norm(), pq.reduced_norm());
            let two = Rational64::from_integer(2);
            let prod = CenterValue::new(
                np.rational * nq.rational + two * np.sqrt2 * nq.sqrt2,
                np.rational * nq.sqrt2 + np.sqrt2 * nq.rational,
            );
            prop_assert_eq!(npq, prod);
        }

        #[test]
        fn norm_matches_floating(q in hurwitz(10)) {
            let (a1, a2) = q.to_complex_pair();
            let expected = a1.norm_sqr() + a2.norm_sqr();
            prop_assert!((q.reduced_norm().to_f64() - expected).abs() < 1e-8 * (1.0 + expected));
        }
    }
}
