//! q-series for the special weights where R and S are modular: eta
//! quotients, Hauptmoduln, hypergeometric series, lattice theta sums, and
//! the machinery to find and check polynomial relations between R and S.

mod cases;
pub mod linalg;
mod relation;

pub use cases::{
    case_relation, default_relation_box, five_ode_coefficients, verify_case, CaseReport,
    IdentityCheck, RelationReport, FIVE_NEWTON_POLYGON, SUPPORTED_CASES,
};
pub use relation::{find_poly_relation, RelationCandidate, RelationError, RelationField};

use std::fmt;

use thiserror::Error;

use crate::coeffring::{Rational, Ring};
use crate::powerseries::{SeriesError, TruncSeries, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModularError {
    #[error("net q-offset is {0}, expected an integer")]
    OffsetMismatch(Rational),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("unsupported level {0} (supported: 3, 4, 5, 6)")]
    UnsupportedLevel(u32),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// q^offset · series, with a rational offset as produced by η(q^k).
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetQSeries {
    pub offset: Rational,
    pub series: TruncSeries<Rational>,
}

impl OffsetQSeries {
    pub fn new(offset: Rational, series: TruncSeries<Rational>) -> Self {
        OffsetQSeries { offset, series }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        OffsetQSeries::new(&self.offset + &rhs.offset, self.series.mul(&rhs.series))
    }

    pub fn div(&self, rhs: &Self) -> Result<Self, ModularError> {
        Ok(OffsetQSeries::new(
            &self.offset - &rhs.offset,
            self.series.div(&rhs.series)?,
        ))
    }

    pub fn pow(&self, n: i32) -> Result<Self, ModularError> {
        let base = if n < 0 {
            OffsetQSeries::new(-&self.offset, self.series.inverse()?)
        } else {
            self.clone()
        };
        Ok(OffsetQSeries::new(
            &base.offset * &Rational::from(n.unsigned_abs() as i64),
            base.series.pow(n.unsigned_abs()),
        ))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        OffsetQSeries::new(self.offset.clone(), self.series.scale(c))
    }

    /// The plain series q^offset · series; the offset must be an integer.
    pub fn to_series(&self) -> Result<TruncSeries<Rational>, ModularError> {
        let shift = self
            .offset
            .to_i64()
            .filter(|_| self.offset.is_integer())
            .ok_or_else(|| ModularError::OffsetMismatch(self.offset.clone()))?;
        Ok(self.series.shift(shift))
    }
}

impl fmt::Display for OffsetQSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "q^({}) * ({:?})", self.offset, self.series)
    }
}

/// ∏(1 − q^n) to order `order`, by the pentagonal number theorem.
pub fn euler_product(order: i64) -> TruncSeries<Rational> {
    let mut coeffs = vec![Rational::zero(); order.max(0) as usize];
    for m in 0i64.. {
        let (e1, e2) = (m * (3 * m - 1) / 2, m * (3 * m + 1) / 2);
        if e1 >= order {
            break;
        }
        let sign = Rational::from(if m % 2 == 0 { 1 } else { -1 });
        coeffs[e1 as usize] = sign.clone();
        if m > 0 && e2 < order {
            coeffs[e2 as usize] = sign;
        }
    }
    TruncSeries::new(Var::Q, 0, coeffs)
}

/// Substitutes q ↦ q^k in a series starting at q⁰.
fn dilate(s: &TruncSeries<Rational>, k: i64, order: i64) -> TruncSeries<Rational> {
    TruncSeries::from_fn(Var::Q, 0, order, |e| {
        if e % k == 0 {
            s.coeff(e / k).unwrap_or_else(|_| Rational::zero())
        } else {
            Rational::zero()
        }
    })
}

/// [k] = η(q^k) = q^{k/24} ∏(1 − q^{kn}), with the product known to `order`.
pub fn eta_pow_series(k: u32, order: i64) -> OffsetQSeries {
    let k = i64::from(k.max(1));
    let base = euler_product(order.div_euclid(k) + 1);
    OffsetQSeries::new(Rational::new(k, 24), dilate(&base, k, order))
}

/// η-quotient ∏ [k]^{e_k}.
pub fn eta_quotient(factors: &[(u32, i32)], order: i64) -> Result<OffsetQSeries, ModularError> {
    let mut acc = OffsetQSeries::new(Rational::zero(), TruncSeries::one(Var::Q, order));
    for &(k, e) in factors {
        acc = acc.mul(&eta_pow_series(k, order).pow(e)?);
    }
    Ok(acc)
}

/// q ∏_{n≥0} (1−q^{5n+1})(1−q^{5n+4}) / ((1−q^{5n+2})(1−q^{5n+3})), the
/// Rogers–Ramanujan continued fraction with its q^{1/5} replaced by q.
pub fn rogers_ramanujan_product(order: i64) -> TruncSeries<Rational> {
    let inner = order - 1;
    let mut num = TruncSeries::one(Var::Q, inner);
    let mut den = TruncSeries::one(Var::Q, inner);
    for m in 1..inner {
        let factor = TruncSeries::from_poly(Var::Q, &binomial_factor(m), inner);
        match m % 5 {
            1 | 4 => num = num.mul(&factor),
            2 | 3 => den = den.mul(&factor),
            _ => {}
        }
    }
    num.div(&den).expect("unit leading term").shift(1)
}

fn binomial_factor(m: i64) -> Vec<Rational> {
    let mut c = vec![Rational::zero(); m as usize + 1];
    c[0] = Rational::one();
    c[m as usize] = Rational::from(-1);
    c
}

/// The normalised Hauptmodul h = q + O(q²) for Γ₁(N) used with the weight
/// γ = −2cos(2π/N):
///
/// * N = 3: ([3]/[1])¹²
/// * N = 4: ([4]/[1])⁸
/// * N = 5: q times the fifth power of [`rogers_ramanujan_product`]/q
/// * N = 6: ([1][6]³/([2][3]³))³
pub fn hauptmodul(n: u32, order: i64) -> Result<TruncSeries<Rational>, ModularError> {
    if order < 2 {
        return Err(ModularError::BadParameter(format!("order {order} < 2")));
    }
    let quotient: &[(u32, i32)] = match n {
        3 => &[(3, 12), (1, -12)],
        4 => &[(4, 8), (1, -8)],
        6 => &[(1, 3), (6, 9), (2, -3), (3, -9)],
        5 => {
            return Ok(rogers_ramanujan_product(order + 1)
                .shift(-1)
                .pow(5)
                .shift(1)
                .truncate(order))
        }
        other => return Err(ModularError::UnsupportedLevel(other)),
    };
    let h = eta_quotient(quotient, order)?;
    if h.offset != Rational::one() {
        return Err(ModularError::OffsetMismatch(h.offset));
    }
    Ok(h.to_series()?.truncate(order))
}

/// ₂F₁(a, b; c; scale·z) as a series in z, by the term ratio
/// (a+n)(b+n)·scale / ((c+n)(1+n)).
pub fn f21_series(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    scale: &Rational,
    order: i64,
) -> Result<TruncSeries<Rational>, ModularError> {
    if c.is_integer() && (c.is_zero() || c.is_negative()) {
        return Err(ModularError::BadParameter(format!(
            "c = {c} is a nonpositive integer"
        )));
    }
    let mut coeffs = Vec::with_capacity(order.max(0) as usize);
    let mut term = Rational::one();
    for n in 0..order {
        coeffs.push(term.clone());
        let n = Rational::from(n);
        let num = &(&(a + &n) * &(b + &n)) * scale;
        let den = &(c + &n) * &(&n + &Rational::one());
        term = &term * &(&num / &den);
    }
    Ok(TruncSeries::new(Var::Z, 0, coeffs))
}

/// Binary quadratic forms whose theta series appear for N = 3 and N = 4.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeForm {
    /// m² + mn + n²
    Hex,
    /// m² + n²
    Square,
}

impl LatticeForm {
    fn value(self, m: i64, n: i64) -> i64 {
        match self {
            LatticeForm::Hex => m * m + m * n + n * n,
            LatticeForm::Square => m * m + n * n,
        }
    }
}

/// Σ_{m,n∈ℤ} q^{form(m,n)} to order `order`, by direct summation.
pub fn lattice_theta_sum(form: LatticeForm, order: i64) -> TruncSeries<Rational> {
    // form(m,n) ≥ max(|m|,|n|)²/2 for both forms
    let bound = ((2 * order) as f64).sqrt() as i64 + 2;
    let mut counts = vec![0i64; order.max(0) as usize];
    for m in -bound..=bound {
        for n in -bound..=bound {
            let e = form.value(m, n);
            if e < order {
                counts[e as usize] += 1;
            }
        }
    }
    TruncSeries::new(Var::Q, 0, counts.into_iter().map(Rational::from).collect())
}

/// The same sum over the shifted lattice (ℤ + 1/3)² for Hex or
/// (ℤ + 1/2)² for Square, returned with its fractional q-offset.
pub fn shifted_lattice_theta_sum(form: LatticeForm, order: i64) -> OffsetQSeries {
    let bound = ((2 * order) as f64).sqrt() as i64 + 3;
    let mut counts = vec![0i64; order.max(0) as usize];
    // with m = a + s, n = b + s the form is an integer plus a fixed offset
    let (den, offset) = match form {
        LatticeForm::Hex => (3, Rational::new(1, 3)),
        LatticeForm::Square => (2, Rational::new(1, 2)),
    };
    for a in -bound..=bound {
        for b in -bound..=bound {
            // den² · form(a + 1/den, b + 1/den), minus the offset part
            let scaled = form.value(den * a + 1, den * b + 1);
            let e = (scaled
                - (&offset * &Rational::from(den * den))
                    .to_i64()
                    .expect("integer"))
                / (den * den);
            if (0..order).contains(&e) {
                counts[e as usize] += 1;
            }
        }
    }
    OffsetQSeries::new(
        offset,
        TruncSeries::new(Var::Q, 0, counts.into_iter().map(Rational::from).collect()),
    )
}

/// 1 + 6 Σ qⁿ/(1+qⁿ+q²ⁿ) for Hex, 1 + 4 Σ qⁿ/(1+q²ⁿ) for Square, via the
/// divisor-sum form of the coefficients.
pub fn lambert_series(form: LatticeForm, order: i64) -> TruncSeries<Rational> {
    let (modulus, scale) = match form {
        LatticeForm::Hex => (3, 6),
        LatticeForm::Square => (4, 4),
    };
    TruncSeries::from_fn(Var::Q, 0, order, |m| {
        if m == 0 {
            return Rational::one();
        }
        let chi: i64 = (1..=m)
            .filter(|d| m % d == 0)
            .map(|d| match d % modulus {
                1 => 1,
                r if r == modulus - 1 => -1,
                _ => 0,
            })
            .sum();
        Rational::from(scale * chi)
    })
}

/// Embeds a rational series into another coefficient ring.
pub fn lift<C: Ring>(s: &TruncSeries<Rational>) -> TruncSeries<C> {
    s.map_coeffs(C::from_rational)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncSeries<Rational>, upto: i64) -> Vec<i64> {
        (0..upto)
            .map(|e| s.coeff(e).unwrap().to_i64().unwrap())
            .collect()
    }

    #[test]
    fn pentagonal() {
        assert_eq!(
            ints(&euler_product(13), 13),
            vec![1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]
        );
        let e3 = eta_pow_series(3, 16);
        assert_eq!(e3.offset, Rational::new(1, 8));
        assert_eq!(
            ints(&e3.series, 16),
            vec![1, 0, 0, -1, 0, 0, -1, 0, 0, 0, 0, 0, 0, 0, 0, 1]
        );
    }

    #[test]
    fn eta_cubed_is_jacobi_sum() {
        let e = eta_pow_series(1, 30).pow(3).unwrap();
        assert_eq!(e.offset, Rational::new(1, 8));
        let z1 =
            crate::theta::reduced_theta(crate::theta::ThetaKind::Zero, 1, &Rational::zero(), 30)
                .unwrap();
        assert_eq!(e.series, z1);
    }

    #[test]
    fn hauptmodul_starts() {
        let h3 = hauptmodul(3, 4).unwrap();
        assert_eq!(ints(&h3, 3), vec![0, 1, 12]);
        let h4 = hauptmodul(4, 4).unwrap();
        assert_eq!(ints(&h4, 3), vec![0, 1, 8]);
        let h6 = hauptmodul(6, 6).unwrap();
        assert_eq!(ints(&h6, 6), vec![0, 1, -3, 3, 5, -18]);
        let h5 = hauptmodul(5, 6).unwrap();
        assert_eq!(ints(&h5, 6), vec![0, 1, -5, 15, -30, 40]);
        assert_eq!(ints(&rogers_ramanujan_product(4), 4), vec![0, 1, -1, 1]);
        assert_eq!(hauptmodul(7, 5), Err(ModularError::UnsupportedLevel(7)));
    }

    #[test]
    fn offsets_must_be_integral() {
        let e = eta_pow_series(1, 5);
        assert!(matches!(
            e.to_series(),
            Err(ModularError::OffsetMismatch(_))
        ));
        assert!(e.pow(24).unwrap().to_series().is_ok());
    }

    #[test]
    fn hypergeometric_coefficients() {
        let r = |a, b| Rational::new(a, b);
        let f = f21_series(&r(1, 3), &r(2, 3), &r(2, 1), &r(27, 1), 4).unwrap();
        assert_eq!(ints(&f, 3), vec![1, 3, 30]);
        let f = f21_series(&r(1, 2), &r(1, 2), &r(2, 1), &r(16, 1), 3).unwrap();
        assert_eq!(ints(&f, 2), vec![1, 2]);
        assert!(f21_series(&r(1, 2), &r(1, 2), &r(0, 1), &r(1, 1), 3).is_err());
        assert!(f21_series(&r(1, 2), &r(1, 2), &r(-2, 1), &r(1, 1), 3).is_err());
        assert!(f21_series(&r(1, 2), &r(1, 2), &r(-1, 2), &r(1, 1), 3).is_ok());
    }

    #[test]
    fn lattice_sums() {
        assert_eq!(
            ints(&lattice_theta_sum(LatticeForm::Hex, 5), 5),
            vec![1, 6, 0, 6, 6]
        );
        assert_eq!(
            ints(&lattice_theta_sum(LatticeForm::Square, 5), 5),
            vec![1, 4, 4, 0, 4]
        );
        for form in [LatticeForm::Hex, LatticeForm::Square] {
            assert_eq!(lambert_series(form, 50), lattice_theta_sum(form, 50));
        }
        let s = shifted_lattice_theta_sum(LatticeForm::Square, 6);
        // theta_2(q)^2 = 4 q^{1/2}(1 + 2q^2 + q^4 + ...)
        assert_eq!(ints(&s.series, 6), vec![4, 0, 8, 0, 4, 0]);
        let s = shifted_lattice_theta_sum(LatticeForm::Hex, 4);
        assert_eq!(s.offset, Rational::new(1, 3));
        assert_eq!(ints(&s.series, 2), vec![3, 3]);
    }
}
