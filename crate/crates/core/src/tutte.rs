//! Order-by-order solution of the functional equations for W(x) and H(x,y),
//! the generating functions of cubic partial orientations rooted at a
//! vertex of degree ≤ 2 (W) or with root weights x^j y^k (H):
//!
//! ```text
//! W(x)   = 1 + t x² W(x)² + ω t x H(x,0) + ω⁻¹ t x H(0,x)
//! H(x,y) = W(x)W(y) + ω⁻¹ (H(x,y) − H(x,0))/y + ω (H(x,y) − H(0,y))/x
//! ```
//!
//! The W slice at order k only needs earlier slices (the t factor), and the
//! H slice at order k is filled from the top total degree r+s = 2k down:
//!
//! ```text
//! h_{r,s} = Σ_j w^{(j)}_r w^{(k-j)}_s + ω⁻¹ h_{r,s+1} + ω h_{r+1,s}
//! ```
//!
//! Within one anti-diagonal r+s = d the entries are independent, so each
//! diagonal is filled in parallel.

use rayon::prelude::*;
use thiserror::Error;

use crate::coeffring::{omega_to_gamma, GammaPoly, OmegaLaurent, Rational, Ring, RingError};
use crate::genfun::{GenFunBundle, GenFunError};
use crate::powerseries::{TruncSeries, Var};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TutteError {
    #[error("verification failed: {0}")]
    VerificationFailure(String),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    GenFun(#[from] GenFunError),
}

/// [t^k] W(x), indexed by the power of x.
#[derive(Debug, Clone, PartialEq)]
pub struct WSlice {
    pub k: usize,
    pub poly: Vec<OmegaLaurent>,
}

impl WSlice {
    pub fn coeff(&self, r: usize) -> OmegaLaurent {
        self.poly.get(r).cloned().unwrap_or_default()
    }
}

/// [t^k] H(x,y) as a dense triangle: `rows[r][s]` for r + s ≤ 2k.
#[derive(Debug, Clone, PartialEq)]
pub struct HSlice {
    pub k: usize,
    rows: Vec<Vec<OmegaLaurent>>,
}

impl HSlice {
    fn zero(k: usize) -> Self {
        let d = 2 * k;
        HSlice {
            k,
            rows: (0..=d)
                .map(|r| vec![OmegaLaurent::zero(); d - r + 1])
                .collect(),
        }
    }

    /// Coefficient of x^r y^s (zero outside the triangle).
    pub fn coeff(&self, r: usize, s: usize) -> OmegaLaurent {
        self.get(r, s).cloned().unwrap_or_default()
    }

    fn get(&self, r: usize, s: usize) -> Option<&OmegaLaurent> {
        self.rows.get(r)?.get(s)
    }

    /// Nonzero entries as ((r, s), coefficient).
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &OmegaLaurent)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(s, c)| ((r, s), c)))
            .filter(|(_, c)| !c.is_zero())
    }
}

/// Solution slices: H to order K and W to order K+1 (the extra W slice is
/// free and is what the [x¹]W formula for C needs).
#[derive(Debug, Clone)]
pub struct Slices {
    pub w: Vec<WSlice>,
    pub h: Vec<HSlice>,
}

impl Slices {
    /// Nonzero coefficients of every slice, for debugging.
    pub fn to_json(&self) -> serde_json::Value {
        let w: Vec<_> = self
            .w
            .iter()
            .map(|sl| {
                let terms: Vec<_> = sl
                    .poly
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(r, c)| serde_json::json!({"x": r, "coeff": c.to_json()}))
                    .collect();
                serde_json::json!({"k": sl.k, "terms": terms})
            })
            .collect();
        let h: Vec<_> = self
            .h
            .iter()
            .map(|sl| {
                let terms: Vec<_> = sl
                    .entries()
                    .map(|((r, s), c)| serde_json::json!({"x": r, "y": s, "coeff": c.to_json()}))
                    .collect();
                serde_json::json!({"k": sl.k, "terms": terms})
            })
            .collect();
        serde_json::json!({"w": w, "h": h})
    }
}

fn w_next(k: usize, w: &[WSlice], h: &[HSlice]) -> WSlice {
    // [t^k]W = [t^{k-1}] (x² W² + ω x H(x,0) + ω⁻¹ x H(0,x))
    let m = k - 1;
    let omega = OmegaLaurent::omega();
    let omega_inv = OmegaLaurent::omega_inv();
    let mut poly = vec![OmegaLaurent::zero(); 2 * k + 1];
    for j in 0..=m {
        for (a, wa) in w[j].poly.iter().enumerate() {
            for (b, wb) in w[m - j].poly.iter().enumerate() {
                poly[a + b + 2].add_mul_assign(wa, wb);
            }
        }
    }
    let hm = &h[m];
    for r in 0..=2 * m {
        poly[r + 1].add_mul_assign(&omega, &hm.coeff(r, 0));
        poly[r + 1].add_mul_assign(&omega_inv, &hm.coeff(0, r));
    }
    WSlice { k, poly }
}

fn h_next(k: usize, w: &[WSlice]) -> HSlice {
    let omega = OmegaLaurent::omega();
    let omega_inv = OmegaLaurent::omega_inv();
    let mut out = HSlice::zero(k);
    for d in (0..=2 * k).rev() {
        let diag: Vec<OmegaLaurent> = (0..=d)
            .into_par_iter()
            .map(|r| {
                let s = d - r;
                let mut acc = OmegaLaurent::zero();
                for j in 0..=k {
                    let (a, b) = (w[j].coeff(r), w[k - j].coeff(s));
                    acc.add_mul_assign(&a, &b);
                }
                if let Some(c) = out.get(r, s + 1) {
                    acc.add_mul_assign(&omega_inv, c);
                }
                if let Some(c) = out.get(r + 1, s) {
                    acc.add_mul_assign(&omega, c);
                }
                acc
            })
            .collect();
        for (r, c) in diag.into_iter().enumerate() {
            out.rows[r][d - r] = c;
        }
    }
    out
}

/// Solves both equations to t-order `k_max` and checks the result by
/// substituting back.
pub fn iterate_wh(k_max: usize) -> Result<Slices, TutteError> {
    let mut w = vec![WSlice {
        k: 0,
        poly: vec![OmegaLaurent::one()],
    }];
    let mut h: Vec<HSlice> = Vec::new();
    for k in 0..=k_max {
        if k > 0 {
            let next = w_next(k, &w, &h);
            w.push(next);
        }
        h.push(h_next(k, &w));
    }
    let next = w_next(k_max + 1, &w, &h);
    w.push(next);
    let slices = Slices { w, h };
    verify(&slices)?;
    Ok(slices)
}

/// Substitutes the slices into both equations (the H one multiplied by xy)
/// and compares every coefficient through t-order K.
fn verify(sl: &Slices) -> Result<(), TutteError> {
    let k_max = sl.h.len() - 1;
    let omega = OmegaLaurent::omega();
    let omega_inv = OmegaLaurent::omega_inv();
    let fail = |what: String| Err(TutteError::VerificationFailure(what));

    for k in 0..=k_max + 1 {
        let mut rhs = vec![OmegaLaurent::zero(); 2 * k + 3];
        if k == 0 {
            rhs[0] = OmegaLaurent::one();
        } else {
            let m = k - 1;
            for j in 0..=m {
                for a in 0..sl.w[j].poly.len() {
                    for b in 0..sl.w[m - j].poly.len() {
                        rhs[a + b + 2] =
                            rhs[a + b + 2].add(&sl.w[j].poly[a].mul(&sl.w[m - j].poly[b]));
                    }
                }
            }
            for r in 0..=2 * m {
                rhs[r + 1] = rhs[r + 1]
                    .add(&omega.mul(&sl.h[m].coeff(r, 0)))
                    .add(&omega_inv.mul(&sl.h[m].coeff(0, r)));
            }
        }
        for (r, c) in rhs.iter().enumerate() {
            if sl.w[k].coeff(r) != *c {
                return fail(format!("W equation at t^{k} x^{r}"));
            }
        }
        if sl.w[k].poly.len() > 2 * k + 1 && sl.w[k].poly[2 * k + 1..].iter().any(|c| !c.is_zero())
        {
            return fail(format!("W degree bound at t^{k}"));
        }
    }

    // xy H = xy W(x)W(y) + ω⁻¹ x (H − H(x,0)) + ω y (H − H(0,y))
    for k in 0..=k_max {
        let h = &sl.h[k];
        let top = 2 * k + 2;
        for a in 0..=top {
            for b in 0..=top {
                // every term carries a factor xy
                if a == 0 || b == 0 {
                    continue;
                }
                let lhs = h.coeff(a - 1, b - 1);
                let mut rhs = OmegaLaurent::zero();
                for j in 0..=k {
                    rhs = rhs.add(&sl.w[j].coeff(a - 1).mul(&sl.w[k - j].coeff(b - 1)));
                }
                rhs = rhs.add(&omega_inv.mul(&h.coeff(a - 1, b)));
                rhs = rhs.add(&omega.mul(&h.coeff(a, b - 1)));
                if lhs != rhs {
                    return fail(format!("H equation at t^{k} x^{a} y^{b}"));
                }
            }
        }
    }
    Ok(())
}

/// C(t,ω) = H(0,0), checked against [x¹]W/(t(ω+ω⁻¹)). Coefficients of
/// t^0..t^K, so the series is known to order K+1.
pub fn c_of_t(sl: &Slices) -> Result<TruncSeries<OmegaLaurent>, TutteError> {
    let k_max = sl.h.len() - 1;
    let omega_sum = OmegaLaurent::omega().add(&OmegaLaurent::omega_inv());
    let mut coeffs = Vec::with_capacity(k_max + 1);
    for k in 0..=k_max {
        let c = sl.h[k].coeff(0, 0);
        let alt = sl.w[k + 1].coeff(1).div_exact(&omega_sum).ok_or_else(|| {
            TutteError::VerificationFailure(format!("[x t^{}]W not divisible", k + 1))
        })?;
        if alt != c {
            return Err(TutteError::VerificationFailure(format!(
                "H(0,0) and [x]W/(t(w+1/w)) differ at t^{k}"
            )));
        }
        coeffs.push(c);
    }
    Ok(TruncSeries::new(Var::T, 0, coeffs))
}

/// Outcome of matching C(t,ω) against 1 + Q(t,γ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompareReport {
    pub order: usize,
    /// Lowest t-exponent where the two sides differ.
    pub first_mismatch: Option<usize>,
}

impl CompareReport {
    pub fn pass(&self) -> bool {
        self.first_mismatch.is_none()
    }
}

/// Rewrites each coefficient of C(t,ω) in γ = ω² + ω⁻² and compares with
/// 1 + Q(t,γ) through t^{k_max}.
pub fn compare_c_q(k_max: usize) -> Result<CompareReport, TutteError> {
    let c = c_of_t(&iterate_wh(k_max)?)?;
    let bundle = GenFunBundle::new(&GammaPoly::gamma(), k_max as i64 + 1)?;
    compare_with(&c, &bundle)
}

pub fn compare_with(
    c: &TruncSeries<OmegaLaurent>,
    bundle: &GenFunBundle<GammaPoly>,
) -> Result<CompareReport, TutteError> {
    let one_plus_q = bundle.c_of_t();
    let order = c.order().min(one_plus_q.order());
    let mut first_mismatch = None;
    for e in 0..order {
        let lhs = omega_to_gamma(&c.coeff(e).expect("within order"))?;
        if lhs != one_plus_q.coeff(e).expect("within order") {
            first_mismatch = Some(e as usize);
            break;
        }
    }
    Ok(CompareReport {
        order: order as usize - 1,
        first_mismatch,
    })
}

/// Specialises a coefficient of C to a rational γ by passing through ℚ[γ].
pub fn eval_at_gamma(c: &OmegaLaurent, gamma: &Rational) -> Result<Rational, TutteError> {
    Ok(omega_to_gamma(c)?.eval(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(terms: &[(i32, i64)]) -> OmegaLaurent {
        OmegaLaurent::from_terms(terms.iter().map(|&(e, c)| (e, Rational::from(c))))
    }

    #[test]
    fn first_slices_by_hand() {
        let sl = iterate_wh(2).unwrap();
        assert_eq!(sl.w[0].poly, vec![OmegaLaurent::one()]);
        assert_eq!(sl.h[0].coeff(0, 0), OmegaLaurent::one());
        assert_eq!(sl.h[0].entries().count(), 1);
        assert_eq!(sl.w[1].coeff(2), OmegaLaurent::one());
        assert_eq!(sl.w[1].coeff(1), w(&[(1, 1), (-1, 1)]));
        assert!(sl.w[1].coeff(0).is_zero());
        assert_eq!(sl.h[1].coeff(1, 0), w(&[(1, 2), (-1, 1)]));
        assert_eq!(sl.h[1].coeff(0, 1), w(&[(1, 1), (-1, 2)]));
        assert_eq!(sl.h[1].coeff(0, 0), w(&[(2, 2), (0, 2), (-2, 2)]));
    }

    #[test]
    fn c_series_start() {
        let sl = iterate_wh(3).unwrap();
        let c = c_of_t(&sl).unwrap();
        assert_eq!(c.order(), 4);
        assert_eq!(c.coeff(0).unwrap(), OmegaLaurent::one());
        assert_eq!(
            omega_to_gamma(&c.coeff(1).unwrap()).unwrap(),
            GammaPoly::from_ints(&[2, 2])
        );
    }

    #[test]
    fn swap_symmetry() {
        let sl = iterate_wh(5).unwrap();
        for h in &sl.h {
            for ((r, s), c) in h.entries() {
                assert_eq!(h.coeff(s, r), c.invert_omega(), "({r},{s}) at t^{}", h.k);
            }
        }
    }

    #[test]
    fn every_c_coefficient_is_a_polynomial_in_gamma() {
        let c = c_of_t(&iterate_wh(6).unwrap()).unwrap();
        for e in 0..c.order() {
            omega_to_gamma(&c.coeff(e).unwrap()).unwrap();
        }
    }

    #[test]
    fn agrees_with_theta_parametrisation() {
        let rep = compare_c_q(8).unwrap();
        assert!(rep.pass(), "{rep:?}");
        assert_eq!(rep.order, 8);
    }

    #[test]
    fn gamma_one_counts() {
        // at gamma = 1 every Eulerian orientation has weight 1
        let c = c_of_t(&iterate_wh(3).unwrap()).unwrap();
        let vals: Vec<i64> = (0..4)
            .map(|e| {
                eval_at_gamma(&c.coeff(e).unwrap(), &Rational::from(1))
                    .unwrap()
                    .to_i64()
                    .unwrap()
            })
            .collect();
        assert_eq!(vals[..2], [1, 4]);
    }
}
