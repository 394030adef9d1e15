use std::fmt;

use super::{convolve_integers, Field, Rational, Ring};

/// Element a + b·√5 of the field ℚ(√5).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QuadExtSqrt5 {
    pub a: Rational,
    pub b: Rational,
}

impl QuadExtSqrt5 {
    pub fn new(a: Rational, b: Rational) -> Self {
        QuadExtSqrt5 { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        QuadExtSqrt5::new(a.into(), b.into())
    }

    pub fn sqrt5() -> Self {
        QuadExtSqrt5::from_ints(0, 1)
    }

    /// (1 + √5)/2.
    pub fn golden_ratio() -> Self {
        QuadExtSqrt5::new(Rational::new(1, 2), Rational::new(1, 2))
    }

    /// The Galois conjugate a − b√5.
    pub fn conj(&self) -> Self {
        QuadExtSqrt5::new(self.a.clone(), -&self.b)
    }

    /// a² − 5b², the product with the conjugate.
    pub fn norm(&self) -> Rational {
        &(&self.a * &self.a) - &(&Rational::from(5) * &(&self.b * &self.b))
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }
}

impl fmt::Display for QuadExtSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", self.a),
            (true, false) => write!(f, "{}*sqrt5", self.b),
            (false, false) if self.b.is_negative() => {
                write!(f, "{} - {}*sqrt5", self.a, self.b.abs())
            }
            (false, false) => write!(f, "{} + {}*sqrt5", self.a, self.b),
        }
    }
}

impl fmt::Debug for QuadExtSqrt5 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ring for QuadExtSqrt5 {
    fn zero() -> Self {
        QuadExtSqrt5::default()
    }

    fn one() -> Self {
        QuadExtSqrt5::from_ints(1, 0)
    }

    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    fn add(&self, rhs: &Self) -> Self {
        QuadExtSqrt5::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }

    fn sub(&self, rhs: &Self) -> Self {
        QuadExtSqrt5::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let mut a = &self.a * &rhs.a;
        a.add_mul_assign(&Rational::from(5), &(&self.b * &rhs.b));
        let mut b = &self.a * &rhs.b;
        b.add_mul_assign(&self.b, &rhs.a);
        QuadExtSqrt5::new(a, b)
    }

    fn neg(&self) -> Self {
        QuadExtSqrt5::new(-&self.a, -&self.b)
    }

    fn from_rational(r: &Rational) -> Self {
        QuadExtSqrt5::new(r.clone(), Rational::zero())
    }

    fn inverse(&self) -> Option<Self> {
        let n = self.norm().recip()?;
        let c = self.conj();
        Some(QuadExtSqrt5::new(&c.a * &n, &c.b * &n))
    }

    fn div_exact(&self, d: &Self) -> Option<Self> {
        Some(self.mul(&d.inverse()?))
    }

    fn to_json(&self) -> serde_json::Value {
        serde_json::json!([self.a.to_string(), self.b.to_string()])
    }

    fn add_mul_assign(&mut self, x: &Self, y: &Self) {
        if x.is_zero() || y.is_zero() {
            return;
        }
        let five = Rational::from(5);
        self.a.add_mul_assign(&x.a, &y.a);
        if !x.b.is_zero() && !y.b.is_zero() {
            self.a.add_mul_assign(&five, &(&x.b * &y.b));
        }
        self.b.add_mul_assign(&x.a, &y.b);
        self.b.add_mul_assign(&x.b, &y.a);
    }

    fn scale_rational(&self, r: &Rational) -> Self {
        QuadExtSqrt5::new(&self.a * r, &self.b * r)
    }

    fn convolve(a: &[Self], b: &[Self], len: usize) -> Vec<Self> {
        // (a + b√5)(c + d√5) = (ac + 5bd) + (ad + bc)√5 over integer numerators
        let split = |xs: &[Self]| {
            let parts: Vec<Rational> = xs.iter().flat_map(|x| [x.a.clone(), x.b.clone()]).collect();
            let (nums, den) = Rational::clear_denominators(&parts);
            let (re, im): (Vec<_>, Vec<_>) =
                nums.chunks(2).map(|p| (p[0].clone(), p[1].clone())).unzip();
            (re, im, den)
        };
        let (ar, ai, da) = split(a);
        let (br, bi, db) = split(b);
        let den = da * db;
        let rr = convolve_integers(&ar, &br, len);
        let ii = convolve_integers(&ai, &bi, len);
        let ri = convolve_integers(&ar, &bi, len);
        let ir = convolve_integers(&ai, &br, len);
        (0..len)
            .map(|k| {
                let re = &rr[k] + &ii[k] * 5;
                let im = &ri[k] + &ir[k];
                QuadExtSqrt5::new(
                    Rational::from_bigints(re, den.clone()),
                    Rational::from_bigints(im, den.clone()),
                )
            })
            .collect()
    }
}

impl Field for QuadExtSqrt5 {}
