//! The theta-function parametrisation of the weighted Eulerian orientation
//! generating function.
//!
//! Everything is evaluated in stripped form (see [`crate::theta`]) using
//! sin²α = (γ+2)/4. With S₀, S₂, C₁, C₃, Z₁, Z₃ the reduced series:
//!
//! ```text
//! t = (S₀C₃/C₁² − S₂/C₁) / (16(γ+2))
//! R = (S₀/C₁)² (C₃/C₁ − Z₃/Z₁) / (24(γ+2))
//! Â = tan α · θ'(α)/θ(α) = C₁/S₀
//! S = 2(γ+2) Â² / DR
//! Q(t) = (t − (γ+2)t² − R(t)) / ((γ+2)t²)
//! ```
//!
//! Both divisions by γ+2 are exact over ℚ[γ]; a failure signals a bug in
//! the reduction and is reported as [`GenFunError::CancellationFailure`].
//!
//! Order bookkeeping: every stage divides by unit-leading series except
//! 1/DR (valuation 1) and 1/t² in Q, which each lose two orders. The bundle
//! is therefore computed internally at order K+2 and truncated to K.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::coeffring::{GammaPoly, QuadExtSqrt5, Rational, Ring};
use crate::powerseries::{SeriesError, TruncSeries, Var};
use crate::theta::ThetaSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenFunError {
    #[error("division by gamma + 2 left a remainder in {0}")]
    CancellationFailure(String),
    #[error("gamma = -2 is degenerate (Q(t) divides by gamma + 2)")]
    DegenerateGamma,
    #[error("order {0} is too small (need at least 2)")]
    OrderTooSmall(i64),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// How γ is represented.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GammaMode {
    /// Indeterminate γ, coefficients in ℚ[γ].
    Symbolic,
    /// A rational value of γ.
    Value(Rational),
    /// γ = (1+√5)/2, coefficients in ℚ(√5).
    GoldenRatio,
}

impl fmt::Display for GammaMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaMode::Symbolic => f.write_str("symbolic"),
            GammaMode::Value(v) => write!(f, "{v}"),
            GammaMode::GoldenRatio => f.write_str("golden-ratio"),
        }
    }
}

impl FromStr for GammaMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "symbolic" | "g" | "gamma" => Ok(GammaMode::Symbolic),
            "phi" | "golden" | "golden-ratio" | "(1+sqrt5)/2" => Ok(GammaMode::GoldenRatio),
            other => other
                .parse::<Rational>()
                .map(GammaMode::Value)
                .map_err(|e| format!("bad gamma {other:?}: {e}")),
        }
    }
}

fn check_order(order: i64) -> Result<(), GenFunError> {
    if order < 2 {
        Err(GenFunError::OrderTooSmall(order))
    } else {
        Ok(())
    }
}

/// Divides every coefficient by `d`, failing if any division is inexact.
fn div_coeffs<C: Ring>(
    s: &TruncSeries<C>,
    d: &C,
    what: &str,
) -> Result<TruncSeries<C>, GenFunError> {
    let mut failed = false;
    let out = s.map_coeffs(|c| {
        c.div_exact(d).unwrap_or_else(|| {
            failed = true;
            C::zero()
        })
    });
    if failed {
        Err(GenFunError::CancellationFailure(what.to_string()))
    } else {
        Ok(out)
    }
}

fn gamma_plus_two<C: Ring>(gamma: &C) -> Result<C, GenFunError> {
    let g2 = gamma.add(&C::from_i64(2));
    if g2.is_zero() {
        Err(GenFunError::DegenerateGamma)
    } else {
        Ok(g2)
    }
}

fn t_from_thetas<C: Ring>(th: &ThetaSet<C>, g2: &C) -> Result<TruncSeries<C>, GenFunError> {
    let c1_inv = th.c1.inverse()?;
    let num = th
        .s0
        .mul(&th.c3)
        .mul(&c1_inv.square())
        .sub(&th.s2.mul(&c1_inv));
    let t = div_coeffs(&num, g2, "t(q)")?;
    Ok(t.scale_rational(&Rational::new(1, 16)))
}

fn r_from_thetas<C: Ring>(th: &ThetaSet<C>, g2: &C) -> Result<TruncSeries<C>, GenFunError> {
    let c1_inv = th.c1.inverse()?;
    let ratio = th.s0.mul(&c1_inv);
    let bracket = th.c3.mul(&c1_inv).sub(&th.z3.div(&th.z1)?);
    let r = div_coeffs(&ratio.square().mul(&bracket), g2, "R(q)")?;
    Ok(r.scale_rational(&Rational::new(1, 24)))
}

/// t as a series in q, known to order `order`.
pub fn t_of_q<C: Ring>(gamma: &C, order: i64) -> Result<TruncSeries<C>, GenFunError> {
    check_order(order)?;
    let g2 = gamma_plus_two(gamma)?;
    t_from_thetas(&ThetaSet::new(gamma, order), &g2)
}

/// R as a series in q, known to order `order`.
pub fn r_of_q<C: Ring>(gamma: &C, order: i64) -> Result<TruncSeries<C>, GenFunError> {
    check_order(order)?;
    let g2 = gamma_plus_two(gamma)?;
    r_from_thetas(&ThetaSet::new(gamma, order), &g2)
}

/// Â = C₁/S₀ as a series in q.
pub fn ahat_of_q<C: Ring>(gamma: &C, order: i64) -> Result<TruncSeries<C>, GenFunError> {
    check_order(order)?;
    let th = ThetaSet::new(gamma, order);
    Ok(th.c1.div(&th.s0)?)
}

/// S = 2(γ+2)Â²/DR, valuation −1; known to `order - 2` from inputs at `order`.
pub fn s_of_q<C: Ring>(gamma: &C, order: i64) -> Result<TruncSeries<C>, GenFunError> {
    let ahat = ahat_of_q(gamma, order)?;
    let r = r_of_q(gamma, order)?;
    s_from(gamma, &ahat, &r)
}

fn s_from<C: Ring>(
    gamma: &C,
    ahat: &TruncSeries<C>,
    r: &TruncSeries<C>,
) -> Result<TruncSeries<C>, GenFunError> {
    let g2 = gamma_plus_two(gamma)?;
    Ok(ahat.square().div(&r.q_deriv())?.scale(&g2.add(&g2)))
}

/// q(t), the compositional inverse of t(q).
pub fn q_of_t<C: Ring>(gamma: &C, order: i64) -> Result<TruncSeries<C>, GenFunError> {
    Ok(t_of_q(gamma, order)?.revert()?.with_var(Var::T))
}

/// R(t) = R(q(t)).
pub fn r_of_t<C: Ring>(gamma: &C, order: i64) -> Result<TruncSeries<C>, GenFunError> {
    let q_t = q_of_t(gamma, order)?;
    Ok(r_of_q(gamma, order)?.compose(&q_t)?)
}

/// Q(t,γ) = (t − (γ+2)t² − R(t))/((γ+2)t²); known to `order - 2`.
pub fn gf_of_t<C: Ring>(gamma: &C, order: i64) -> Result<TruncSeries<C>, GenFunError> {
    gf_from_r_t(gamma, &r_of_t(gamma, order)?)
}

fn gf_from_r_t<C: Ring>(gamma: &C, r_t: &TruncSeries<C>) -> Result<TruncSeries<C>, GenFunError> {
    let g2 = gamma_plus_two(gamma)?;
    let order = r_t.order();
    let t = TruncSeries::identity(Var::T, order);
    let num = t.sub(&t.square().scale(&g2)).sub(r_t);
    if num.true_valuation().is_some_and(|v| v < 3) {
        return Err(GenFunError::CancellationFailure(format!(
            "numerator of Q(t) has valuation {}",
            num.true_valuation().unwrap_or(order)
        )));
    }
    Ok(div_coeffs(&num, &g2, "Q(t)")?.shift(-2))
}

/// Every series of the parametrisation at one value (or the indeterminate)
/// γ, all known to the same order K except `s_q`, which starts at q⁻¹.
#[derive(Debug, Clone)]
pub struct GenFunBundle<C: Ring> {
    pub gamma: C,
    pub order: i64,
    pub t_q: TruncSeries<C>,
    pub r_q: TruncSeries<C>,
    pub q_t: TruncSeries<C>,
    pub r_t: TruncSeries<C>,
    /// q as a series in R.
    pub q_r: TruncSeries<C>,
    /// t as a series in R.
    pub t_r: TruncSeries<C>,
    /// The generating function Q(t,γ).
    pub gf_t: TruncSeries<C>,
    pub ahat_q: TruncSeries<C>,
    pub s_q: TruncSeries<C>,
}

impl<C: Ring> GenFunBundle<C> {
    /// Computes every series to order `order`.
    pub fn new(gamma: &C, order: i64) -> Result<Self, GenFunError> {
        check_order(order)?;
        let g2 = gamma_plus_two(gamma)?;
        let inner = order + 2;
        let th = ThetaSet::new(gamma, inner);
        let t_q = t_from_thetas(&th, &g2)?;
        let r_q = r_from_thetas(&th, &g2)?;
        let ahat_q = th.c1.div(&th.s0)?;
        let s_q = s_from(gamma, &ahat_q, &r_q)?;
        let q_t = t_q.revert()?.with_var(Var::T);
        let r_t = r_q.compose(&q_t)?;
        let gf_t = gf_from_r_t(gamma, &r_t)?;
        let q_r = r_q.revert()?.with_var(Var::R);
        let t_r = t_q.compose(&q_r)?;
        Ok(GenFunBundle {
            gamma: gamma.clone(),
            order,
            t_q: t_q.truncate(order),
            r_q: r_q.truncate(order),
            q_t: q_t.truncate(order),
            r_t: r_t.truncate(order),
            q_r: q_r.truncate(order),
            t_r: t_r.truncate(order),
            gf_t: gf_t.truncate(order),
            ahat_q: ahat_q.truncate(order),
            s_q: s_q.truncate(order),
        })
    }

    /// Looks up a series by its CLI selector.
    pub fn select(&self, name: &str) -> Option<&TruncSeries<C>> {
        Some(match name {
            "t(q)" => &self.t_q,
            "R(q)" => &self.r_q,
            "q(t)" => &self.q_t,
            "R(t)" => &self.r_t,
            "q(R)" => &self.q_r,
            "t(R)" => &self.t_r,
            "Q(t)" => &self.gf_t,
            "Ahat(q)" => &self.ahat_q,
            "S(q)" => &self.s_q,
            _ => return None,
        })
    }

    /// Tutte's C(t) = 1 + Q(t).
    pub fn c_of_t(&self) -> TruncSeries<C> {
        self.gf_t.add_scalar(&C::one())
    }

    /// d²t/dR² − S·t as a series in q.
    pub fn check_ode_t(&self) -> Result<TruncSeries<C>, GenFunError> {
        let dt = self.t_q.d_by(&self.r_q)?;
        let d2t = dt.d_by(&self.r_q)?;
        Ok(d2t.sub(&self.s_q.mul(&self.t_q)))
    }

    /// d²Â/dR² − T dÂ/dR − S Â with T = (dS/dR)/S, as a series in q.
    pub fn check_ode_a(&self) -> Result<TruncSeries<C>, GenFunError> {
        let da = self.ahat_q.d_by(&self.r_q)?;
        let d2a = da.d_by(&self.r_q)?;
        // T is unchanged by rescaling S, and Â²/DR = S/(2(γ+2)) has a unit
        // leading coefficient even over ℚ[γ].
        let s_unit = self.ahat_q.square().div(&self.r_q.q_deriv())?;
        let big_t = s_unit.d_by(&self.r_q)?.div(&s_unit)?;
        Ok(d2a.sub(&big_t.mul(&da)).sub(&self.s_q.mul(&self.ahat_q)))
    }

    /// dt/dR − Â as a series in q.
    pub fn check_dt_dr(&self) -> Result<TruncSeries<C>, GenFunError> {
        Ok(self.t_q.d_by(&self.r_q)?.sub(&self.ahat_q))
    }
}

/// The bundle in whichever coefficient ring the mode calls for.
#[derive(Debug, Clone)]
pub enum AnyBundle {
    Symbolic(GenFunBundle<GammaPoly>),
    Rational(GenFunBundle<Rational>),
    Golden(GenFunBundle<QuadExtSqrt5>),
}

impl AnyBundle {
    pub fn new(mode: &GammaMode, order: i64) -> Result<Self, GenFunError> {
        Ok(match mode {
            GammaMode::Symbolic => {
                AnyBundle::Symbolic(GenFunBundle::new(&GammaPoly::gamma(), order)?)
            }
            GammaMode::Value(v) => AnyBundle::Rational(GenFunBundle::new(v, order)?),
            GammaMode::GoldenRatio => {
                AnyBundle::Golden(GenFunBundle::new(&QuadExtSqrt5::golden_ratio(), order)?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gp(c: &[i64]) -> GammaPoly {
        GammaPoly::from_ints(c)
    }

    fn ints(s: &TruncSeries<Rational>, upto: i64) -> Vec<i64> {
        (0..upto)
            .map(|e| s.coeff(e).unwrap().to_i64().unwrap())
            .collect()
    }

    fn symbolic(order: i64) -> GenFunBundle<GammaPoly> {
        GenFunBundle::new(&GammaPoly::gamma(), order).unwrap()
    }

    #[test]
    fn symbolic_leading_terms() {
        let b = symbolic(6);
        let c = |s: &TruncSeries<GammaPoly>, e| s.coeff(e).unwrap();
        assert_eq!(c(&b.t_q, 1), gp(&[1]));
        assert_eq!(c(&b.t_q, 2), gp(&[-6, -6]));
        assert_eq!(c(&b.t_q, 3), gp(&[24, 60, 27]));
        assert_eq!(c(&b.r_q, 2), gp(&[-8, -7]));
        assert_eq!(c(&b.r_q, 3), gp(&[44, 90, 37]));
        assert_eq!(c(&b.q_t, 2), gp(&[6, 6]));
        assert_eq!(c(&b.q_t, 3), gp(&[48, 84, 45]));
        assert_eq!(c(&b.r_t, 2), gp(&[-2, -1]));
        // -2(g+2)(g+1)
        assert_eq!(c(&b.r_t, 3), gp(&[-4, -6, -2]));
        assert_eq!(c(&b.q_r, 2), gp(&[8, 7]));
        assert_eq!(c(&b.q_r, 3), gp(&[84, 134, 61]));
        assert_eq!(c(&b.t_r, 2), gp(&[2, 1]));
        // 2(g+2)(2g+3)
        assert_eq!(c(&b.t_r, 3), gp(&[12, 14, 4]));
        assert_eq!(c(&b.gf_t, 0), gp(&[]));
        assert_eq!(c(&b.gf_t, 1), gp(&[2, 2]));
        assert_eq!(c(&b.ahat_q, 0), gp(&[1]));
        assert_eq!(c(&b.ahat_q, 1), gp(&[4, 2]));
        assert_eq!(b.s_q.true_valuation(), Some(-1));
    }

    #[test]
    fn gamma_one_values() {
        let b = GenFunBundle::new(&Rational::from(1), 5).unwrap();
        assert_eq!(ints(&b.t_q, 5), vec![0, 1, -12, 111, -908]);
        assert_eq!(ints(&b.r_q, 5), vec![0, 1, -15, 171, -1679]);
        assert_eq!(ints(&b.q_t, 5), vec![0, 1, 12, 177, 2888]);
        assert_eq!(ints(&b.r_t, 4), vec![0, 1, -3, -12]);
        assert_eq!(b.gf_t.coeff(1).unwrap(), Rational::from(4));
    }

    #[test]
    fn gamma_zero_and_minus_one_values() {
        let b = GenFunBundle::new(&Rational::from(0), 5).unwrap();
        assert_eq!(ints(&b.t_q, 5), vec![0, 1, -6, 24, -76]);
        assert_eq!(ints(&b.q_t, 5), vec![0, 1, 6, 48, 436]);
        let b = GenFunBundle::new(&Rational::from(-1), 5).unwrap();
        assert_eq!(ints(&b.t_q, 5), vec![0, 1, 0, -9, 20]);
        assert_eq!(ints(&b.r_q, 5), vec![0, 1, -1, -9, 35]);
        assert_eq!(ints(&b.r_t, 3), vec![0, 1, -1]);
    }

    #[test]
    fn gamma_minus_two_rejected() {
        assert_eq!(
            GenFunBundle::new(&Rational::from(-2), 5).unwrap_err(),
            GenFunError::DegenerateGamma
        );
        assert_eq!(
            t_of_q(&Rational::from(1), 1).unwrap_err(),
            GenFunError::OrderTooSmall(1)
        );
    }

    #[test]
    fn hypergeometric_special_cases_of_s() {
        for (g, n) in [(1, 27), (0, 16)] {
            let b = GenFunBundle::new(&Rational::from(g), 20).unwrap();
            let r = &b.r_q;
            let one_minus = r
                .scale_rational(&Rational::from(-n))
                .add_scalar(&Rational::one());
            let lhs = b.s_q.mul(r).mul(&one_minus);
            let want = TruncSeries::constant(Var::Q, Rational::from(2 * g + 4), lhs.order());
            assert_eq!(lhs, want);
            assert!(lhs.order() >= 18);
        }
    }

    #[test]
    fn odes_hold_symbolically() {
        let b = symbolic(14);
        let rt = b.check_ode_t().unwrap();
        assert!(rt.is_zero(), "{rt:?}");
        assert!(rt.order() >= 10);
        let ra = b.check_ode_a().unwrap();
        assert!(ra.is_zero(), "{ra:?}");
        let rd = b.check_dt_dr().unwrap();
        assert!(rd.is_zero() && rd.order() >= 12, "{rd:?}");
    }

    #[test]
    fn every_symbolic_coefficient_is_a_polynomial() {
        // exact division already guarantees this; check the degree growth
        let b = symbolic(10);
        for e in 1..10 {
            let d = b.t_q.coeff(e).unwrap().degree().unwrap();
            assert!(d < e as usize, "degree {d} at q^{e}");
        }
    }

    #[test]
    fn selectors() {
        let b = symbolic(4);
        for name in [
            "t(q)", "R(q)", "q(t)", "R(t)", "Q(t)", "Ahat(q)", "S(q)", "q(R)", "t(R)",
        ] {
            assert!(b.select(name).is_some(), "{name}");
        }
        assert!(b.select("x").is_none());
        assert_eq!("phi".parse::<GammaMode>(), Ok(GammaMode::GoldenRatio));
        assert_eq!(
            "-1".parse::<GammaMode>(),
            Ok(GammaMode::Value(Rational::from(-1)))
        );
    }
}
