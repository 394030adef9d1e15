//! Exact coefficient rings.
//!
//! Every series in the crate is generic over [`Ring`]. The concrete rings are
//! all commutative ℚ-algebras, which is what lets series reversion divide by
//! integers and lets rational constants be embedded anywhere.

use std::fmt;

mod gamma_poly;
mod omega_laurent;
mod quad_ext;
mod rational;

pub use gamma_poly::GammaPoly;
pub use omega_laurent::{omega_to_gamma, OmegaLaurent};
pub use quad_ext::QuadExtSqrt5;
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RingError {
    /// The Laurent polynomial is not the image of any polynomial under
    /// γ ↦ ω² + ω⁻².
    #[error("Laurent polynomial {0} is not expressible in gamma = w^2 + w^-2")]
    NotExpressible(String),
    #[error("cannot parse {0:?} as a rational number")]
    Parse(String),
}

/// A commutative ℚ-algebra with exact arithmetic.
pub trait Ring: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;

    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Image of a rational under the structure map ℚ → Self.
    fn from_rational(r: &Rational) -> Self;

    fn from_i64(n: i64) -> Self {
        Self::from_rational(&Rational::from(n))
    }

    /// Multiplicative inverse, if `self` is a unit.
    fn inverse(&self) -> Option<Self>;

    /// `self / d` when the quotient exists in the ring.
    fn div_exact(&self, d: &Self) -> Option<Self>;

    fn to_json(&self) -> serde_json::Value;

    /// `self += a * b`. Hot path of every convolution; implementors may
    /// override to avoid temporaries.
    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }

    fn scale_rational(&self, r: &Rational) -> Self {
        self.mul(&Self::from_rational(r))
    }

    fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// The first `len` coefficients of the product of two coefficient
    /// lists. Rings with a faster product than term-by-term accumulation
    /// override this.
    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        let mut out = vec![Self::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j].add_mul_assign(x, y);
            }
        }
        out
    }
}

/// Integer convolution of numerator lists, truncated to `len` terms.
pub(crate) fn convolve_integers(
    a: &[num_bigint::BigInt],
    b: &[num_bigint::BigInt],
    len: usize,
) -> Vec<num_bigint::BigInt> {
    use num_traits::Zero;
    let mut out = vec![num_bigint::BigInt::zero(); len];
    for (i, x) in a.iter().enumerate().take(len) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(len - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// Marker for rings in which every nonzero element is invertible.
pub trait Field: Ring {}

#[cfg(test)]
pub(crate) mod testing {
    //! Shared proptest strategies for the ring axioms.
    use super::*;
    use proptest::prelude::*;

    pub fn small_rational() -> impl Strategy<Value = Rational> {
        (-20i64..=20, 1i64..=6).prop_map(|(n, d)| Rational::new(n, d))
    }

    pub fn gamma_poly() -> impl Strategy<Value = GammaPoly> {
        prop::collection::vec(small_rational(), 0..5).prop_map(GammaPoly::new)
    }

    pub fn omega_laurent() -> impl Strategy<Value = OmegaLaurent> {
        prop::collection::vec((-4i32..=4, small_rational()), 0..5)
            .prop_map(OmegaLaurent::from_terms)
    }

    pub fn quad_ext() -> impl Strategy<Value = QuadExtSqrt5> {
        (small_rational(), small_rational()).prop_map(|(a, b)| QuadExtSqrt5::new(a, b))
    }

    pub fn check_axioms<R: Ring>(a: &R, b: &R, c: &R) {
        assert_eq!(a.add(b), b.add(a));
        assert_eq!(a.mul(b), b.mul(a));
        assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
        assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
        assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
        assert_eq!(a.add(&R::zero()), *a);
        assert_eq!(a.mul(&R::one()), *a);
        assert!(a.sub(a).is_zero());
        assert_eq!(a.neg().neg(), *a);
        let mut acc = c.clone();
        acc.add_mul_assign(a, b);
        assert_eq!(acc, c.add(&a.mul(b)));
    }
}
