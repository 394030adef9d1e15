//! Truncated Laurent series over an exact coefficient ring.
//!
//! A [`TruncSeries`] stores the coefficients of exponents
//! `valuation .. order` and nothing else: every coefficient at or above
//! `order` is unknown, and asking for one is an error rather than a silent
//! zero. Each operation computes the tightest truncation order that its
//! inputs justify.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::coeffring::{Rational, Ring};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error(
        "coefficient of {var}^{exp} requested but the series is only known to O({var}^{order})"
    )]
    BeyondOrder { var: Var, exp: i64, order: i64 },
    #[error("leading coefficient {0} is not a unit")]
    NonUnitLeading(String),
    #[error("series vanishes to its known order; it has no leading coefficient")]
    Indeterminate,
    #[error("inner series of a composition must have positive valuation")]
    PositiveValuationRequired,
    #[error("outer series of a composition must have nonnegative valuation")]
    NegativeValuation,
    #[error("reversion needs valuation exactly 1 with a unit linear coefficient")]
    BadValuation,
}

/// Name of the formal variable a series is expanded in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Var {
    Q,
    T,
    R,
    H,
    /// Generic argument, e.g. of a hypergeometric series.
    Z,
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Var::Q => "q",
            Var::T => "t",
            Var::R => "R",
            Var::H => "h",
            Var::Z => "z",
        };
        f.write_str(s)
    }
}

#[derive(Clone)]
pub struct TruncSeries<C> {
    var: Var,
    /// Exponent of `coeffs[0]`. Not necessarily the true valuation: the
    /// leading stored coefficients may be zero.
    valuation: i64,
    coeffs: Vec<C>,
    /// Exclusive bound; `valuation + coeffs.len() == order`.
    order: i64,
}

/// Equality of the truncated series: same variable, same order and the same
/// known coefficients, regardless of stored leading zeros.
impl<C: Ring> PartialEq for TruncSeries<C> {
    fn eq(&self, other: &Self) -> bool {
        if self.var != other.var || self.order != other.order {
            return false;
        }
        let zero = C::zero();
        (self.valuation.min(other.valuation)..self.order)
            .all(|e| self.get(e).unwrap_or(&zero) == other.get(e).unwrap_or(&zero))
    }
}

impl<C: Ring> TruncSeries<C> {
    /// Series with coefficients of exponents `valuation ..` taken from
    /// `coeffs`, known up to `valuation + coeffs.len()`.
    pub fn new(var: Var, valuation: i64, coeffs: Vec<C>) -> Self {
        let order = valuation + coeffs.len() as i64;
        TruncSeries {
            var,
            valuation,
            coeffs,
            order,
        }
    }

    /// `O(var^order)`.
    pub fn zero(var: Var, order: i64) -> Self {
        TruncSeries::new(var, order, Vec::new())
    }

    pub fn one(var: Var, order: i64) -> Self {
        TruncSeries::monomial(var, C::one(), 0, order)
    }

    pub fn constant(var: Var, c: C, order: i64) -> Self {
        TruncSeries::monomial(var, c, 0, order)
    }

    /// `c·var^exp + O(var^order)`.
    pub fn monomial(var: Var, c: C, exp: i64, order: i64) -> Self {
        if exp >= order {
            return TruncSeries::zero(var, order);
        }
        let mut coeffs = vec![C::zero(); (order - exp) as usize];
        coeffs[0] = c;
        TruncSeries::new(var, exp, coeffs)
    }

    /// The series variable itself, `var + O(var^order)`.
    pub fn identity(var: Var, order: i64) -> Self {
        TruncSeries::monomial(var, C::one(), 1, order)
    }

    /// A polynomial `Σ coeffs[i]·var^i`, truncated at `order`.
    pub fn from_poly(var: Var, coeffs: &[C], order: i64) -> Self {
        if order <= 0 {
            return TruncSeries::zero(var, order);
        }
        let len = order as usize;
        let mut v: Vec<C> = coeffs.iter().take(len).cloned().collect();
        v.resize(len, C::zero());
        TruncSeries::new(var, 0, v)
    }

    /// Coefficients for exponents `valuation ..order` from a closure.
    pub fn from_fn(var: Var, valuation: i64, order: i64, f: impl FnMut(i64) -> C) -> Self {
        TruncSeries::new(var, valuation, (valuation..order).map(f).collect())
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn with_var(mut self, var: Var) -> Self {
        self.var = var;
        self
    }

    /// Exponent of the first stored coefficient.
    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    /// Coefficient of `var^exp`; exponents below the stored range are zero,
    /// exponents at or beyond the order are an error.
    pub fn coeff(&self, exp: i64) -> Result<C, SeriesError> {
        if exp >= self.order {
            return Err(SeriesError::BeyondOrder {
                var: self.var,
                exp,
                order: self.order,
            });
        }
        if exp < self.valuation {
            return Ok(C::zero());
        }
        Ok(self.coeffs[(exp - self.valuation) as usize].clone())
    }

    fn get(&self, exp: i64) -> Option<&C> {
        if exp < self.valuation || exp >= self.order {
            None
        } else {
            Some(&self.coeffs[(exp - self.valuation) as usize])
        }
    }

    /// Exponent of the first nonzero coefficient, or `None` if the series
    /// vanishes to its known order.
    pub fn true_valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .map(|i| self.valuation + i as i64)
    }

    /// True valuation, or the order when every known coefficient is zero.
    fn valuation_bound(&self) -> i64 {
        self.true_valuation().unwrap_or(self.order)
    }

    /// Whether every known coefficient is zero.
    pub fn is_zero(&self) -> bool {
        self.true_valuation().is_none()
    }

    /// Drops leading zero coefficients.
    pub fn normalized(&self) -> Self {
        let v = self.valuation_bound();
        TruncSeries::new(
            self.var,
            v,
            self.coeffs[(v - self.valuation) as usize..].to_vec(),
        )
    }

    /// Stores explicit zeros down to `exp` (used for aligned output).
    pub fn padded_from(&self, exp: i64) -> Self {
        if exp >= self.valuation {
            return self.clone();
        }
        let mut coeffs = vec![C::zero(); (self.valuation - exp) as usize];
        coeffs.extend(self.coeffs.iter().cloned());
        TruncSeries::new(self.var, exp, coeffs)
    }

    /// Forgets every coefficient at or beyond `order`.
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        if order <= self.valuation {
            return TruncSeries::zero(self.var, order);
        }
        TruncSeries::new(
            self.var,
            self.valuation,
            self.coeffs[..(order - self.valuation) as usize].to_vec(),
        )
    }

    /// Multiplication by `var^k`.
    pub fn shift(&self, k: i64) -> Self {
        TruncSeries::new(self.var, self.valuation + k, self.coeffs.clone())
    }

    pub fn map_coeffs<D: Ring>(&self, f: impl FnMut(&C) -> D) -> TruncSeries<D> {
        TruncSeries::new(
            self.var,
            self.valuation,
            self.coeffs.iter().map(f).collect(),
        )
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, |a, b| a.add(b))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, |a, b| a.sub(b))
    }

    fn combine(&self, rhs: &Self, op: impl Fn(&C, &C) -> C) -> Self {
        debug_assert_eq!(self.var, rhs.var, "mixing series in different variables");
        let order = self.order.min(rhs.order);
        let val = self.valuation.min(rhs.valuation).min(order);
        let zero = C::zero();
        TruncSeries::from_fn(self.var, val, order, |e| {
            op(self.get(e).unwrap_or(&zero), rhs.get(e).unwrap_or(&zero))
        })
    }

    pub fn neg(&self) -> Self {
        self.map_coeffs(|c| c.neg())
    }

    pub fn scale(&self, c: &C) -> Self {
        self.map_coeffs(|x| x.mul(c))
    }

    pub fn scale_rational(&self, r: &Rational) -> Self {
        self.map_coeffs(|x| x.scale_rational(r))
    }

    /// Adds the constant `c` (as `c·var^0`).
    pub fn add_scalar(&self, c: &C) -> Self {
        self.add(&TruncSeries::constant(self.var, c.clone(), self.order))
    }

    /// Exact convolution. The result is known up to
    /// `min(order(f) + val(g), order(g) + val(f))` with true valuations.
    pub fn mul(&self, rhs: &Self) -> Self {
        debug_assert_eq!(self.var, rhs.var, "mixing series in different variables");
        let (va, vb) = (self.valuation_bound(), rhs.valuation_bound());
        let order = (self.order + vb).min(rhs.order + va);
        let val = va + vb;
        if val >= order {
            return TruncSeries::zero(self.var, order);
        }
        let a = &self.coeffs[(va - self.valuation) as usize..];
        let b = &rhs.coeffs[(vb - rhs.valuation) as usize..];
        let len = (order - val) as usize;
        let coeffs = convolve(a, b, len);
        TruncSeries::new(self.var, val, coeffs)
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    pub fn pow(&self, n: u32) -> Self {
        if n == 0 {
            return TruncSeries::one(self.var, self.order - self.valuation_bound());
        }
        let mut acc = self.clone();
        for _ in 1..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse. Needs a unit leading coefficient; the result
    /// keeps the relative precision of the input.
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let v = self.true_valuation().ok_or(SeriesError::Indeterminate)?;
        let a = &self.coeffs[(v - self.valuation) as usize..];
        let lead_inv = a[0]
            .inverse()
            .ok_or_else(|| SeriesError::NonUnitLeading(a[0].to_string()))?;
        let n = a.len();
        let mut b: Vec<C> = Vec::with_capacity(n);
        b.push(lead_inv.clone());
        for k in 1..n {
            let mut acc = C::zero();
            for i in 1..=k {
                acc.add_mul_assign(&a[i], &b[k - i]);
            }
            b.push(acc.mul(&lead_inv).neg());
        }
        Ok(TruncSeries::new(self.var, -v, b))
    }

    /// `self / rhs` via the inverse of `rhs`.
    pub fn div(&self, rhs: &Self) -> Result<Self, SeriesError> {
        Ok(self.mul(&rhs.inverse()?))
    }

    /// The Euler operator D = var·d/dvar: the coefficient at exponent n is
    /// multiplied by n.
    pub fn q_deriv(&self) -> Self {
        TruncSeries::from_fn(self.var, self.valuation, self.order, |e| {
            self.coeffs[(e - self.valuation) as usize].mul(&C::from_i64(e))
        })
    }

    /// Ordinary derivative d/dvar.
    pub fn deriv(&self) -> Self {
        self.q_deriv().shift(-1)
    }

    /// Derivative of `self` with respect to `g`, both series in the same
    /// variable: D(self)/D(g).
    pub fn d_by(&self, g: &Self) -> Result<Self, SeriesError> {
        self.q_deriv().div(&g.q_deriv())
    }

    /// Composition `self(inner)`; the result is in the variable of `inner`.
    ///
    /// Known to `min(order(f)·val(g), order(g) + (m-1)·val(g))`, where `m` is
    /// the first positive exponent with a nonzero coefficient in `f`.
    pub fn compose(&self, inner: &Self) -> Result<Self, SeriesError> {
        let vg = inner
            .true_valuation()
            .filter(|&v| v >= 1)
            .ok_or(SeriesError::PositiveValuationRequired)?;
        let f = self.normalized();
        if f.valuation < 0 {
            return Err(SeriesError::NegativeValuation);
        }
        let mut order = self.order.saturating_mul(vg);
        if let Some(m) = (1..self.order).find(|&e| f.get(e).is_some_and(|c| !c.is_zero())) {
            order = order.min(inner.order + (m - 1) * vg);
        }
        if order <= 0 {
            return Ok(TruncSeries::zero(inner.var, order));
        }
        let len = order as usize;
        let g: Vec<C> = (0..order)
            .map(|e| inner.get(e).cloned().unwrap_or_else(C::zero))
            .collect();
        // Horner: acc = f_n + g·acc, from the top coefficient down.
        let top = (self.order - 1).min((order - 1) / vg);
        let mut acc: Vec<C> = vec![C::zero(); len];
        for n in (0..=top).rev() {
            let mut next = convolve(&acc, &g, len);
            if let Some(c) = f.get(n) {
                next[0] = next[0].add(c);
            }
            acc = next;
        }
        Ok(TruncSeries::new(inner.var, 0, acc))
    }

    /// Compositional inverse by Lagrange inversion:
    /// [x^n] g = (1/n)·[z^{n-1}] (z/f(z))^n.
    pub fn revert(&self) -> Result<Self, SeriesError> {
        if self.true_valuation() != Some(1) {
            return Err(SeriesError::BadValuation);
        }
        if self.coeff(1)?.inverse().is_none() {
            return Err(SeriesError::BadValuation);
        }
        let order = self.order;
        // phi = z / f(z), known to relative precision order - 1
        let phi = self.shift(-1).inverse()?;
        let len = (order - 1) as usize;
        let phi_c: Vec<C> = phi.coeffs.clone();
        let mut power = phi_c.clone();
        let mut out = vec![C::zero(); len];
        for n in 1..=len {
            if n > 1 {
                power = convolve(&power, &phi_c, len);
            }
            out[n - 1] = power[n - 1].scale_rational(&Rational::new(1, n as i64));
        }
        Ok(TruncSeries::new(self.var, 1, out))
    }

    /// JSON form `{"var", "valuation", "order", "coeffs"}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "var": self.var,
            "valuation": self.valuation,
            "order": self.order,
            "coeffs": self.coeffs.iter().map(Ring::to_json).collect::<Vec<_>>(),
        })
    }
}

/// First `len` coefficients of the product of two coefficient vectors that
/// both start at exponent 0.
pub(crate) fn convolve<C: Ring>(a: &[C], b: &[C], len: usize) -> Vec<C> {
    C::convolve(a, b, len)
}

impl<C: Ring> fmt::Display for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            write!(f, "({c})*{}^{} + ", self.var, self.valuation + i as i64)?;
        }
        write!(f, "O({}^{})", self.var, self.order)
    }
}

impl<C: Ring> fmt::Debug for TruncSeries<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::{GammaPoly, Rational};
    use proptest::prelude::*;

    fn rs(val: i64, c: &[i64]) -> TruncSeries<Rational> {
        TruncSeries::new(Var::Q, val, c.iter().map(|&x| Rational::from(x)).collect())
    }

    fn ints(s: &TruncSeries<Rational>) -> Vec<i64> {
        s.coeffs().iter().map(|c| c.to_i64().unwrap()).collect()
    }

    #[test]
    fn multiplication() {
        let f = rs(1, &[1, 1, 0, 0, 0]);
        let g = rs(0, &[1, -1, 0, 0, 0, 0]);
        let p = f.mul(&g);
        assert_eq!(p.valuation(), 1);
        assert_eq!(p.order(), 6);
        assert_eq!(ints(&p), vec![1, 0, -1, 0, 0]);
        let z = TruncSeries::<Rational>::zero(Var::Q, 6);
        assert!(f.mul(&z).is_zero());
    }

    #[test]
    fn coefficient_beyond_order_is_an_error() {
        let f = rs(0, &[1, 2, 3]);
        assert_eq!(f.coeff(2).unwrap(), Rational::from(3));
        assert_eq!(f.coeff(-5).unwrap(), Rational::from(0));
        assert!(matches!(f.coeff(3), Err(SeriesError::BeyondOrder { .. })));
    }

    #[test]
    fn geometric_inverse() {
        let f = rs(0, &[1, -1, 0, 0, 0, 0]);
        assert_eq!(ints(&f.inverse().unwrap()), vec![1; 6]);
        let g = rs(1, &[1, 1, 0, 0, 0]);
        let gi = g.inverse().unwrap();
        assert_eq!(gi.valuation(), -1);
        assert_eq!(ints(&gi), vec![1, -1, 1, -1, 1]);
        assert_eq!(gi.order(), 4);
    }

    #[test]
    fn inverse_over_gamma_polynomials() {
        // 1 + 3(1+g) q + 5 q^2
        let f = TruncSeries::new(
            Var::Q,
            0,
            vec![
                GammaPoly::one(),
                GammaPoly::from_ints(&[3, 3]),
                GammaPoly::from_ints(&[5]),
            ],
        );
        let inv = f.inverse().unwrap();
        assert_eq!(inv.coeff(1).unwrap(), GammaPoly::from_ints(&[-3, -3]));
        let non_unit = TruncSeries::new(Var::Q, 0, vec![GammaPoly::gamma(), GammaPoly::one()]);
        assert!(matches!(
            non_unit.inverse(),
            Err(SeriesError::NonUnitLeading(_))
        ));
    }

    #[test]
    fn composition() {
        let f = rs(0, &[0, 0, 1, 0, 0, 0]);
        let g = rs(1, &[1, 1, 0, 0, 0]);
        assert_eq!(ints(&f.compose(&g).unwrap()), vec![0, 0, 1, 2, 1, 0]);
        let id = TruncSeries::<Rational>::identity(Var::Q, 6);
        let h = rs(0, &[3, 1, 4, 1, 5, 9]);
        assert_eq!(h.compose(&id).unwrap(), h);
        assert_eq!(
            h.compose(&rs(0, &[1, 1])),
            Err(SeriesError::PositiveValuationRequired)
        );
    }

    #[test]
    fn catalan_reversion() {
        // f = q - q^2 reverts to sum C_{n-1} q^n
        let f = rs(1, &[1, -1, 0, 0, 0, 0, 0, 0, 0]);
        let g = f.revert().unwrap();
        assert_eq!(ints(&g), vec![1, 1, 2, 5, 14, 42, 132, 429, 1430]);
        // classical oracle: substituting back gives the identity
        assert_eq!(f.compose(&g).unwrap(), TruncSeries::identity(Var::Q, 10));
        let id = TruncSeries::<Rational>::identity(Var::Q, 7);
        assert_eq!(id.revert().unwrap(), id);
        assert_eq!(rs(2, &[1, 0]).revert(), Err(SeriesError::BadValuation));
    }

    #[test]
    fn euler_operator() {
        assert_eq!(ints(&rs(1, &[1, 0]).q_deriv()), vec![1, 0]);
        assert!(rs(0, &[7, 0, 0]).q_deriv().is_zero());
        assert_eq!(ints(&rs(-1, &[1, 0, 0]).q_deriv()), vec![-1, 0, 0]);
    }

    #[test]
    fn derivative_with_respect_to_series() {
        let g = rs(1, &[1, 3, -2, 5, 0, 0, 0]);
        let one = g.d_by(&g).unwrap();
        assert_eq!(ints(&one), vec![1, 0, 0, 0, 0, 0, 0]);
        let sq = g.square();
        let d = sq.d_by(&g).unwrap();
        let twice_g = g.scale_rational(&Rational::from(2));
        assert_eq!(d.sub(&twice_g).true_valuation(), None);
    }

    #[test]
    fn json_shape() {
        let v = rs(-1, &[2, 0]).with_var(Var::T).to_json();
        assert_eq!(
            v,
            serde_json::json!({"var": "t", "valuation": -1, "order": 1, "coeffs": ["2", "0"]})
        );
    }

    fn series(val: i64) -> impl Strategy<Value = TruncSeries<Rational>> {
        prop::collection::vec(-9i64..=9, 4..12).prop_map(move |c| {
            TruncSeries::new(Var::Q, val, c.into_iter().map(Rational::from).collect())
        })
    }

    fn unit_linear() -> impl Strategy<Value = TruncSeries<Rational>> {
        (
            prop::sample::select(vec![-2i64, -1, 1, 3]),
            prop::collection::vec(-9i64..=9, 3..10),
        )
            .prop_map(|(lead, rest)| {
                let mut c = vec![Rational::from(lead)];
                c.extend(rest.into_iter().map(Rational::from));
                TruncSeries::new(Var::Q, 1, c)
            })
    }

    proptest! {
        #[test]
        fn reversion_round_trips(f in unit_linear()) {
            let g = f.revert().unwrap();
            let id = TruncSeries::identity(Var::Q, f.order());
            prop_assert_eq!(g.compose(&f).unwrap(), id.clone());
            prop_assert_eq!(f.compose(&g).unwrap(), id);
        }

        #[test]
        fn inverse_round_trips(f in series(-2)) {
            prop_assume!(f.true_valuation().is_some());
            let p = f.mul(&f.inverse().unwrap());
            prop_assert_eq!(p.clone().sub(&TruncSeries::one(Var::Q, p.order())).true_valuation(), None);
        }

        #[test]
        fn euler_operator_is_a_derivation(f in series(-1), g in series(2)) {
            let lhs = f.mul(&g).q_deriv();
            let rhs = f.q_deriv().mul(&g).add(&f.mul(&g.q_deriv()));
            prop_assert_eq!(lhs.sub(&rhs).true_valuation(), None);
            prop_assert_eq!(lhs.order(), rhs.order());
        }

        #[test]
        fn composition_is_associative(f in series(0), g in unit_linear(), h in unit_linear()) {
            let a = f.compose(&g).unwrap().compose(&h).unwrap();
            let b = f.compose(&g.compose(&h).unwrap()).unwrap();
            let n = a.order().min(b.order());
            prop_assert_eq!(a.truncate(n), b.truncate(n));
        }
    }
}
