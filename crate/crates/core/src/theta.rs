//! Jacobi theta expansions at z = α and z = 0 with the trigonometric
//! prefactors stripped off.
//!
//! From the sum form of θ₁,
//!
//! ```text
//! θ(z) = 2 q^{1/8} Σ_{n≥0} (-1)^n q^{n(n+1)/2} sin((2n+1) z),
//! ```
//!
//! the k-th z-derivative at α factors as
//!
//! ```text
//! θ^{(k)}(α) = ε(k) · 2 q^{1/8} · trig_k(α) · Σ_{n≥0} (-1)^n (2n+1)^k m_n q^{n(n+1)/2}
//! ```
//!
//! | k mod 4 | ε(k) | trig_k | m_n                         | kind    |
//! |---------|------|--------|-----------------------------|---------|
//! | 0       | +1   | sin α  | P_n = sin((2n+1)α)/sin α    | Sine    |
//! | 1       | +1   | cos α  | Q_n = cos((2n+1)α)/cos α    | Cosine  |
//! | 2       | -1   | sin α  | P_n                         | Sine    |
//! | 3       | -1   | cos α  | Q_n                         | Cosine  |
//!
//! and at z = 0 (odd k only) the same table holds with trig_k = 1 and
//! m_n = 1. With γ = -2cos 2α both P_n and Q_n are polynomials in γ, so the
//! reduced series live in ℚ[γ][[q]]. Every ratio used downstream is
//! homogeneous in the q^{1/8} prefactor, which therefore never appears.

use thiserror::Error;

use crate::coeffring::{GammaPoly, Ring};
use crate::powerseries::{TruncSeries, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThetaError {
    #[error("{kind:?}-type theta series needs {} derivative order, got {k}", if *.kind == ThetaKind::Sine { "an even" } else { "an odd" })]
    ParityMismatch { kind: ThetaKind, k: u32 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ThetaKind {
    /// Even derivatives at z = α (sin α prefactor).
    Sine,
    /// Odd derivatives at z = α (cos α prefactor).
    Cosine,
    /// Odd derivatives at z = 0.
    Zero,
}

impl ThetaKind {
    fn accepts(self, k: u32) -> bool {
        match self {
            ThetaKind::Sine => k.is_multiple_of(2),
            ThetaKind::Cosine | ThetaKind::Zero => k % 2 == 1,
        }
    }
}

/// First `count` terms of X_n = -γ X_{n-1} - X_{n-2}.
fn chebyshev_like<C: Ring>(gamma: &C, x0: C, x1: C, count: usize) -> Vec<C> {
    let mut out = vec![x0, x1];
    while out.len() < count {
        let n = out.len();
        let next = gamma.mul(&out[n - 1]).neg().sub(&out[n - 2]);
        out.push(next);
    }
    out.truncate(count);
    out
}

/// sin((2n+1)α)/sin α for n = 0..count, with γ = -2cos 2α.
pub fn sine_multipliers<C: Ring>(gamma: &C, count: usize) -> Vec<C> {
    chebyshev_like(gamma, C::one(), C::one().sub(gamma), count)
}

/// cos((2n+1)α)/cos α for n = 0..count.
pub fn cosine_multipliers<C: Ring>(gamma: &C, count: usize) -> Vec<C> {
    chebyshev_like(gamma, C::one(), C::one().add(gamma).neg(), count)
}

/// P_n(γ) = sin((2n+1)α)/sin α.
pub fn cheb_p(n: usize) -> GammaPoly {
    sine_multipliers(&GammaPoly::gamma(), n + 1)
        .pop()
        .expect("nonempty")
}

/// Q_n(γ) = cos((2n+1)α)/cos α.
pub fn cheb_q(n: usize) -> GammaPoly {
    cosine_multipliers(&GammaPoly::gamma(), n + 1)
        .pop()
        .expect("nonempty")
}

/// Number of indices n with n(n+1)/2 < order.
fn term_count(order: i64) -> usize {
    (0..).take_while(|&n: &i64| n * (n + 1) / 2 < order).count()
}

/// Σ_{n≥0} (-1)^n (2n+1)^k m_n q^{n(n+1)/2} + O(q^order), where m_n is
/// chosen by `kind` (see the module table).
pub fn reduced_theta<C: Ring>(
    kind: ThetaKind,
    k: u32,
    gamma: &C,
    order: i64,
) -> Result<TruncSeries<C>, ThetaError> {
    if !kind.accepts(k) {
        return Err(ThetaError::ParityMismatch { kind, k });
    }
    let count = term_count(order);
    let multipliers = match kind {
        ThetaKind::Sine => sine_multipliers(gamma, count),
        ThetaKind::Cosine => cosine_multipliers(gamma, count),
        ThetaKind::Zero => vec![C::one(); count],
    };
    let mut coeffs = vec![C::zero(); order.max(0) as usize];
    for (n, m) in multipliers.into_iter().enumerate() {
        let n = n as i64;
        let weight = (2 * n + 1).pow(k) * if n % 2 == 0 { 1 } else { -1 };
        coeffs[(n * (n + 1) / 2) as usize] = m.mul(&C::from_i64(weight));
    }
    Ok(TruncSeries::new(Var::Q, 0, coeffs))
}

/// The six reduced series entering the closed form for t and R.
#[derive(Debug, Clone)]
pub struct ThetaSet<C: Ring> {
    pub s0: TruncSeries<C>,
    pub s2: TruncSeries<C>,
    pub c1: TruncSeries<C>,
    pub c3: TruncSeries<C>,
    pub z1: TruncSeries<C>,
    pub z3: TruncSeries<C>,
}

impl<C: Ring> ThetaSet<C> {
    pub fn new(gamma: &C, order: i64) -> Self {
        let get = |kind, k| reduced_theta(kind, k, gamma, order).expect("parity is fixed here");
        ThetaSet {
            s0: get(ThetaKind::Sine, 0),
            s2: get(ThetaKind::Sine, 2),
            c1: get(ThetaKind::Cosine, 1),
            c3: get(ThetaKind::Cosine, 3),
            z1: get(ThetaKind::Zero, 1),
            z3: get(ThetaKind::Zero, 3),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::Rational;

    fn gp(c: &[i64]) -> GammaPoly {
        GammaPoly::from_ints(c)
    }

    #[test]
    fn multiplier_polynomials() {
        assert_eq!(cheb_p(0), gp(&[1]));
        assert_eq!(cheb_p(1), gp(&[1, -1]));
        assert_eq!(cheb_p(2), gp(&[-1, -1, 1]));
        assert_eq!(cheb_q(0), gp(&[1]));
        assert_eq!(cheb_q(1), gp(&[-1, -1]));
        assert_eq!(cheb_q(2), gp(&[-1, 1, 1]));
    }

    /// At α = π/3 (γ = 1) the multipliers are sin((2n+1)π/3)/sin(π/3),
    /// which cycle through 1, 0, -1 with period 3; cosines cycle 1, -2, 1.
    #[test]
    fn multipliers_match_trigonometry_at_gamma_one() {
        let g = Rational::from(1);
        let s: Vec<i64> = sine_multipliers(&g, 6)
            .iter()
            .map(|r| r.to_i64().unwrap())
            .collect();
        assert_eq!(s, vec![1, 0, -1, 1, 0, -1]);
        let c: Vec<i64> = cosine_multipliers(&g, 6)
            .iter()
            .map(|r| r.to_i64().unwrap())
            .collect();
        assert_eq!(c, vec![1, -2, 1, 1, -2, 1]);
    }

    #[test]
    fn low_order_expansions() {
        let g = GammaPoly::gamma();
        let s0 = reduced_theta(ThetaKind::Sine, 0, &g, 6).unwrap();
        let expect = [
            gp(&[1]),
            gp(&[-1, 1]),
            gp(&[]),
            gp(&[-1, -1, 1]),
            gp(&[]),
            gp(&[]),
        ];
        assert_eq!(s0.coeffs(), &expect);

        let c1 = reduced_theta(ThetaKind::Cosine, 1, &g, 6).unwrap();
        let expect = [
            gp(&[1]),
            gp(&[3, 3]),
            gp(&[]),
            gp(&[-5, 5, 5]),
            gp(&[]),
            gp(&[]),
        ];
        assert_eq!(c1.coeffs(), &expect);

        let z1 = reduced_theta(ThetaKind::Zero, 1, &Rational::from(0), 10).unwrap();
        let ints: Vec<i64> = z1.coeffs().iter().map(|r| r.to_i64().unwrap()).collect();
        assert_eq!(ints, vec![1, -3, 0, 5, 0, 0, -7, 0, 0, 0]);
    }

    #[test]
    fn parity_is_checked() {
        let g = GammaPoly::gamma();
        assert!(reduced_theta(ThetaKind::Sine, 1, &g, 5).is_err());
        assert!(reduced_theta(ThetaKind::Cosine, 2, &g, 5).is_err());
        assert!(reduced_theta(ThetaKind::Zero, 0, &g, 5).is_err());
    }

    /// The heat equation θ'' + 8Dθ = 0 in reduced form: the k = 2 series is
    /// the k = 0 series with the coefficient at q^{n(n+1)/2} scaled by
    /// (2n+1)^2 = 8·n(n+1)/2 + 1.
    #[test]
    fn heat_equation_structure() {
        let g = GammaPoly::gamma();
        let s0 = reduced_theta(ThetaKind::Sine, 0, &g, 40).unwrap();
        let s2 = reduced_theta(ThetaKind::Sine, 2, &g, 40).unwrap();
        let rebuilt = s0.q_deriv().scale_rational(&Rational::from(8)).add(&s0);
        assert_eq!(rebuilt, s2);
    }

    #[test]
    fn gamma_degree_bound() {
        let g = GammaPoly::gamma();
        for kind in [ThetaKind::Sine, ThetaKind::Cosine] {
            let k = if kind == ThetaKind::Sine { 0 } else { 1 };
            let s = reduced_theta(kind, k, &g, 60).unwrap();
            for n in 0..11i64 {
                let e = n * (n + 1) / 2;
                assert_eq!(s.coeff(e).unwrap().degree(), Some(n as usize));
            }
        }
    }
}
