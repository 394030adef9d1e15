use std::fmt;

use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{OmegaLaurent, Rational, Ring};

/// Dense univariate polynomial in the weight γ over ℚ.
///
/// `coeffs[i]` is the coefficient of γ^i; trailing zeros are never stored,
/// so the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GammaPoly {
    coeffs: Vec<Rational>,
}

impl GammaPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Ring::is_zero) {
            coeffs.pop();
        }
        GammaPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        GammaPoly::new(coeffs.iter().map(|&c| Rational::from(c)).collect())
    }

    /// The indeterminate γ.
    pub fn gamma() -> Self {
        GammaPoly::from_ints(&[0, 1])
    }

    pub fn constant(c: Rational) -> Self {
        GammaPoly::new(vec![c])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of γ^i (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Horner evaluation at a rational γ.
    pub fn eval(&self, g: &Rational) -> Rational {
        self.eval_in(g)
    }

    /// Evaluation at γ taken from any coefficient ring.
    pub fn eval_in<R: Ring>(&self, g: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&R::from_rational(c));
        }
        acc
    }

    /// Substitutes γ ↦ ω² + ω⁻².
    pub fn to_omega(&self) -> OmegaLaurent {
        let g = OmegaLaurent::from_terms([(2, Rational::one()), (-2, Rational::one())]);
        self.eval_in(&g)
    }

    fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    /// Polynomial long division; `None` if the divisor is zero or the
    /// remainder is nonzero.
    fn div_rem_exact(&self, d: &GammaPoly) -> Option<GammaPoly> {
        let dl = d.leading()?.recip()?;
        let dd = d.degree()?;
        let Some(sd) = self.degree() else {
            return Some(GammaPoly::default());
        };
        if sd < dd {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Rational::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = &rem[k + dd] * &dl;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
        }
        if rem.iter().all(Ring::is_zero) {
            Some(GammaPoly::new(quot))
        } else {
            None
        }
    }
}

impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let unit = mag == Rational::one();
            match i {
                0 => write!(f, "{mag}")?,
                1 if unit => write!(f, "g")?,
                1 => write!(f, "{mag}*g")?,
                _ if unit => write!(f, "g^{i}")?,
                _ => write!(f, "{mag}*g^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Serialized as an ascending array of coefficient strings; the zero
/// polynomial is written `["0"]`.
impl Serialize for GammaPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        if self.coeffs.is_empty() {
            return ["0"].serialize(serializer);
        }
        let mut seq = serializer.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for GammaPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        Ok(GammaPoly::new(Vec::<Rational>::deserialize(deserializer)?))
    }
}

impl Ring for GammaPoly {
    fn zero() -> Self {
        GammaPoly::default()
    }

    fn one() -> Self {
        GammaPoly::from_ints(&[1])
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        GammaPoly::new((0..n).map(|i| &self.coeff(i) + &rhs.coeff(i)).collect())
    }

    fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        GammaPoly::new((0..n).map(|i| &self.coeff(i) - &rhs.coeff(i)).collect())
    }

    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return GammaPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j].add_mul_assign(a, b);
            }
        }
        GammaPoly::new(out)
    }

    fn neg(&self) -> Self {
        GammaPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn from_rational(r: &Rational) -> Self {
        GammaPoly::constant(r.clone())
    }

    fn inverse(&self) -> Option<Self> {
        match self.coeffs.as_slice() {
            [c] => Some(GammaPoly::constant(c.recip()?)),
            _ => None,
        }
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        self.div_rem_exact(d)
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("gamma polynomial serializes")
    }

    fn add_mul_assign(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let need = a.coeffs.len() + b.coeffs.len() - 1;
        if self.coeffs.len() < need {
            self.coeffs.resize(need, Rational::zero());
        }
        for (i, x) in a.coeffs.iter().enumerate() {
            for (j, y) in b.coeffs.iter().enumerate() {
                self.coeffs[i + j].add_mul_assign(x, y);
            }
        }
        while self.coeffs.last().is_some_and(Ring::is_zero) {
            self.coeffs.pop();
        }
    }

    fn scale_rational(&self, r: &Rational) -> Self {
        GammaPoly::new(self.coeffs.iter().map(|c| c * r).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffring::omega_to_gamma;
    use crate::coeffring::testing::{check_axioms, gamma_poly, small_rational};
    use proptest::prelude::*;

    #[test]
    fn gamma_eval_examples() {
        let p = GammaPoly::from_ints(&[2, 2]);
        assert_eq!(p.eval(&Rational::from(1)), Rational::from(4));
        assert_eq!(p.eval(&Rational::from(0)), Rational::from(2));
        let p = GammaPoly::from_ints(&[8, 20, 9]);
        assert_eq!(p.eval(&Rational::from(1)), Rational::from(37));
    }

    #[test]
    fn trailing_zeros_trimmed() {
        let p = GammaPoly::from_ints(&[1, 0, 0]);
        assert_eq!(p.degree(), Some(0));
        assert_eq!(GammaPoly::from_ints(&[0, 0]).degree(), None);
        let x = GammaPoly::gamma();
        assert!(x.sub(&x).coeffs().is_empty());
    }

    #[test]
    fn exact_division() {
        // (g + 2)(3g - 1) = 3g^2 + 5g - 2
        let p = GammaPoly::from_ints(&[-2, 5, 3]);
        let d = GammaPoly::from_ints(&[2, 1]);
        assert_eq!(p.div_exact(&d), Some(GammaPoly::from_ints(&[-1, 3])));
        assert_eq!(GammaPoly::from_ints(&[1, 1]).div_exact(&d), None);
        assert_eq!(p.div_exact(&GammaPoly::zero()), None);
        assert_eq!(GammaPoly::zero().div_exact(&d), Some(GammaPoly::zero()));
    }

    #[test]
    fn units_are_nonzero_constants() {
        assert!(GammaPoly::gamma().inverse().is_none());
        assert_eq!(
            GammaPoly::from_ints(&[4]).inverse(),
            Some(GammaPoly::constant(Rational::new(1, 4)))
        );
    }

    #[test]
    fn serialization() {
        let p = GammaPoly::from_ints(&[-6, -6]);
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["-6","-6"]"#);
        assert_eq!(
            serde_json::to_string(&GammaPoly::zero()).unwrap(),
            r#"["0"]"#
        );
        let back: GammaPoly = serde_json::from_str(r#"["0"]"#).unwrap();
        assert!(back.is_zero());
    }

    #[test]
    fn display() {
        assert_eq!(
            GammaPoly::from_ints(&[8, 20, 9]).to_string(),
            "9*g^2 + 20*g + 8"
        );
        assert_eq!(GammaPoly::from_ints(&[-1, -1]).to_string(), "-g - 1");
    }

    proptest! {
        #[test]
        fn ring_axioms(a in gamma_poly(), b in gamma_poly(), c in gamma_poly()) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn omega_round_trip(g in gamma_poly()) {
            prop_assert_eq!(omega_to_gamma(&g.to_omega()).unwrap(), g);
        }

        #[test]
        fn division_inverts_multiplication(a in gamma_poly(), b in gamma_poly()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(a.mul(&b).div_exact(&b), Some(a));
        }

        #[test]
        fn eval_is_a_homomorphism(a in gamma_poly(), b in gamma_poly(), g in small_rational()) {
            prop_assert_eq!(a.mul(&b).eval(&g), &a.eval(&g) * &b.eval(&g));
        }
    }
}
