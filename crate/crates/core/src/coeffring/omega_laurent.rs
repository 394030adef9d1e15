use std::collections::BTreeMap;
use std::fmt;

use super::{GammaPoly, Rational, Ring, RingError};

/// Sparse Laurent polynomial in ω over ℚ. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct OmegaLaurent {
    terms: BTreeMap<i32, Rational>,
}

impl OmegaLaurent {
    /// Builds from `(exponent, coefficient)` pairs, summing repeated exponents.
    pub fn from_terms(terms: impl IntoIterator<Item = (i32, Rational)>) -> Self {
        let mut out = OmegaLaurent::default();
        for (e, c) in terms {
            out.add_term(e, &c);
        }
        out
    }

    pub fn monomial(exp: i32, c: Rational) -> Self {
        OmegaLaurent::from_terms([(exp, c)])
    }

    pub fn omega() -> Self {
        OmegaLaurent::monomial(1, Rational::one())
    }

    pub fn omega_inv() -> Self {
        OmegaLaurent::monomial(-1, Rational::one())
    }

    pub fn coeff(&self, exp: i32) -> Rational {
        self.terms.get(&exp).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// Multiplication by ω^k.
    pub fn shift(&self, k: i32) -> Self {
        OmegaLaurent {
            terms: self
                .terms
                .iter()
                .map(|(&e, c)| (e + k, c.clone()))
                .collect(),
        }
    }

    /// The image under ω ↦ ω⁻¹.
    pub fn invert_omega(&self) -> Self {
        OmegaLaurent {
            terms: self.terms.iter().map(|(&e, c)| (-e, c.clone())).collect(),
        }
    }

    fn add_term(&mut self, e: i32, c: &Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    fn add_product_term(&mut self, e: i32, a: &Rational, b: &Rational) {
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        entry.add_mul_assign(a, b);
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }
}

/// Writes a Laurent polynomial in ω that is symmetric and supported on even
/// exponents as a polynomial in γ = ω² + ω⁻².
///
/// Repeatedly peels the top term c·ω^{2k} against c·(ω² + ω⁻²)^k.
pub fn omega_to_gamma(p: &OmegaLaurent) -> Result<GammaPoly, RingError> {
    let not_expressible = || RingError::NotExpressible(p.to_string());
    if p.terms.keys().any(|e| e % 2 != 0) {
        return Err(not_expressible());
    }
    let base = GammaPoly::gamma().to_omega();
    let mut rem = p.clone();
    let mut out: Vec<Rational> = Vec::new();
    while let Some(top) = rem.max_exp() {
        if top < 0 {
            return Err(not_expressible());
        }
        let k = (top / 2) as usize;
        let c = rem.coeff(top);
        let sub = base
            .pow(k as u32)
            .mul(&OmegaLaurent::monomial(0, c.clone()));
        rem = rem.sub(&sub);
        if out.len() <= k {
            out.resize(k + 1, Rational::zero());
        }
        out[k] = &out[k] + &c;
    }
    Ok(GammaPoly::new(out))
}

impl fmt::Display for OmegaLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let mag = c.abs();
            match (e, mag == Rational::one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "w^{e}")?,
                (_, false) => write!(f, "{mag}*w^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for OmegaLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ring for OmegaLaurent {
    fn zero() -> Self {
        OmegaLaurent::default()
    }

    fn one() -> Self {
        OmegaLaurent::monomial(0, Rational::one())
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c);
        }
        out
    }

    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, &-c);
        }
        out
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut out = OmegaLaurent::default();
        out.add_mul_assign(self, rhs);
        out
    }

    fn neg(&self) -> Self {
        OmegaLaurent {
            terms: self.terms.iter().map(|(&e, c)| (e, -c)).collect(),
        }
    }

    fn from_rational(r: &Rational) -> Self {
        OmegaLaurent::monomial(0, r.clone())
    }

    fn inverse(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&e, c) = self.terms.iter().next()?;
        Some(OmegaLaurent::monomial(-e, c.recip()?))
    }

    /// Long division from the top exponent down.
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let d_top = d.max_exp()?;
        let d_low = d.min_exp()?;
        let lead_inv = d.coeff(d_top).recip()?;
        let mut rem = self.clone();
        let mut quot = OmegaLaurent::default();
        while let Some(top) = rem.max_exp() {
            // Stop once the remainder can no longer contain a multiple of d.
            if top - d_top < rem.min_exp()? - d_low {
                return None;
            }
            let c = &rem.coeff(top) * &lead_inv;
            let term = OmegaLaurent::monomial(top - d_top, c);
            rem = rem.sub(&term.mul(d));
            quot = quot.add(&term);
        }
        Some(quot)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Object(
            self.terms
                .iter()
                .map(|(e, c)| (e.to_string(), serde_json::Value::String(c.to_string())))
                .collect(),
        )
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        for (&ea, ca) in &a.terms {
            for (&eb, cb) in &b.terms {
                self.add_product_term(ea + eb, ca, cb);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::testing::{check_axioms, omega_laurent};
    use proptest::prelude::*;

    fn w(terms: &[(i32, i64)]) -> OmegaLaurent {
        OmegaLaurent::from_terms(terms.iter().map(|&(e, c)| (e, Rational::from(c))))
    }

    #[test]
    fn omega_to_gamma_examples() {
        assert_eq!(
            omega_to_gamma(&w(&[(2, 1), (-2, 1)])).unwrap(),
            GammaPoly::gamma()
        );
        assert_eq!(
            omega_to_gamma(&w(&[(4, 1), (-4, 1)])).unwrap(),
            GammaPoly::from_ints(&[-2, 0, 1])
        );
        assert!(matches!(
            omega_to_gamma(&OmegaLaurent::omega()),
            Err(RingError::NotExpressible(_))
        ));
        // even support but asymmetric
        assert!(omega_to_gamma(&w(&[(2, 1)])).is_err());
        assert!(omega_to_gamma(&w(&[(4, 1), (-4, 2)])).is_err());
        assert_eq!(
            omega_to_gamma(&w(&[(2, 2), (0, 2), (-2, 2)])).unwrap(),
            GammaPoly::from_ints(&[2, 2])
        );
    }

    #[test]
    fn zero_coefficients_not_stored() {
        let p = w(&[(1, 1), (-1, 1)]);
        let d = p.sub(&p);
        assert!(d.is_zero());
        assert_eq!(d.terms().count(), 0);
    }

    #[test]
    fn division_by_omega_plus_inverse() {
        let c = w(&[(1, 1), (-1, 1)]);
        // (w + 1/w)(2w + 1/w) = 2w^2 + 3 + w^-2
        let p = w(&[(2, 2), (0, 3), (-2, 1)]);
        assert_eq!(p.div_exact(&c), Some(w(&[(1, 2), (-1, 1)])));
        assert_eq!(w(&[(0, 1)]).div_exact(&c), None);
    }

    proptest! {
        #[test]
        fn ring_axioms(a in omega_laurent(), b in omega_laurent(), c in omega_laurent()) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn exact_division_inverts_multiplication(a in omega_laurent(), b in omega_laurent()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
        }
    }
}
