//! Identity suites for γ = 1, 0, −1 and (1+√5)/2, i.e. α = π/N with
//! N = 3, 4, 6, 5. Each identity is turned into a q- or h-series that must
//! vanish, and the report records how far it does.

use rayon::prelude::*;
use serde::Serialize;

use super::{
    eta_quotient, f21_series, find_poly_relation, hauptmodul, lambert_series, lattice_theta_sum,
    lift, shifted_lattice_theta_sum, LatticeForm, ModularError, OffsetQSeries, RelationCandidate,
};
use crate::coeffring::{QuadExtSqrt5, Rational, Ring};
use crate::genfun::GenFunBundle;
use crate::powerseries::{TruncSeries, Var};
use crate::theta::{reduced_theta, ThetaKind};

pub const SUPPORTED_CASES: [u32; 4] = [3, 4, 5, 6];

/// Outcome of one identity: the residual is O(q^residual_valuation).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub identity_name: String,
    pub residual_valuation: i64,
    pub required_order: i64,
    pub pass: bool,
}

impl IdentityCheck {
    pub fn from_residual<C: Ring>(name: &str, residual: &TruncSeries<C>, required: i64) -> Self {
        let v = residual.true_valuation().unwrap_or(residual.order());
        IdentityCheck {
            identity_name: name.to_string(),
            residual_valuation: v,
            required_order: required,
            pass: v >= required,
        }
    }

    pub fn boolean(name: &str, holds: bool, certified: i64, required: i64) -> Self {
        IdentityCheck {
            identity_name: name.to_string(),
            residual_valuation: if holds { certified } else { 0 },
            required_order: required,
            pass: holds && certified >= required,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CaseReport {
    pub case: u32,
    pub gamma: String,
    pub order: i64,
    pub identities: Vec<IdentityCheck>,
    /// Relation found between R and S, if the case looks for one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relation: Option<serde_json::Value>,
}

impl CaseReport {
    pub fn pass(&self) -> bool {
        self.identities.iter().all(|i| i.pass)
    }

    pub fn get(&self, name: &str) -> Option<&IdentityCheck> {
        self.identities.iter().find(|i| i.identity_name == name)
    }
}

type Check<'a> = Box<dyn Fn() -> Result<IdentityCheck, ModularError> + Send + Sync + 'a>;

fn run(checks: Vec<Check<'_>>) -> Result<Vec<IdentityCheck>, ModularError> {
    checks.par_iter().map(|f| f()).collect()
}

/// Extra precision carried so that derivatives and divisions by series of
/// positive valuation still leave K exact coefficients.
const MARGIN: i64 = 6;

fn poly<C: Ring>(var: Var, coeffs: &[C], order: i64) -> TruncSeries<C> {
    TruncSeries::from_poly(var, coeffs, order)
}

fn ints<C: Ring>(c: &[i64]) -> Vec<C> {
    c.iter().map(|&x| C::from_i64(x)).collect()
}

/// Runs every identity for level `n` with residuals required to vanish
/// through q^{order-1}.
pub fn verify_case(n: u32, order: i64) -> Result<CaseReport, ModularError> {
    if order < 2 {
        return Err(ModularError::BadParameter(format!("order {order} < 2")));
    }
    match n {
        3 => hypergeometric_case(HyperCase::three(), order),
        4 => hypergeometric_case(HyperCase::four(), order),
        6 => case_six(order),
        5 => case_five(order),
        other => Err(ModularError::UnsupportedLevel(other)),
    }
}

/// The data that differs between the two hypergeometric levels.
struct HyperCase {
    n: u32,
    gamma: i64,
    /// S·R(1 − cR) = s0
    c: i64,
    s0: i64,
    /// ₂F₁ parameters (a, b)
    ab: (Rational, Rational),
    form: LatticeForm,
    /// θ(α)/(2 sin α · q^{1/8}) as an eta quotient
    theta_quotient: &'static [(u32, i32)],
}

impl HyperCase {
    fn three() -> Self {
        HyperCase {
            n: 3,
            gamma: 1,
            c: 27,
            s0: 6,
            ab: (Rational::new(1, 3), Rational::new(2, 3)),
            form: LatticeForm::Hex,
            theta_quotient: &[(3, 1)],
        }
    }

    fn four() -> Self {
        HyperCase {
            n: 4,
            gamma: 0,
            c: 16,
            s0: 4,
            ab: (Rational::new(1, 2), Rational::new(1, 2)),
            form: LatticeForm::Square,
            theta_quotient: &[(1, 1), (4, 1), (2, -1)],
        }
    }
}

fn hypergeometric_case(hc: HyperCase, k: i64) -> Result<CaseReport, ModularError> {
    let inner = k + MARGIN;
    let b = GenFunBundle::new(&Rational::from(hc.gamma), inner)
        .map_err(|e| ModularError::BadParameter(e.to_string()))?;
    let h = hauptmodul(hc.n, inner)?;
    let (r, s, t, ahat) = (&b.r_q, &b.s_q, &b.t_q, &b.ahat_q);
    let c = Rational::from(hc.c);
    let s0 = Rational::from(hc.s0);
    let one_plus_ch = h.scale(&c).add_scalar(&Rational::one());
    let one_minus_cr = r.scale(&-&c).add_scalar(&Rational::one());
    let s_rational = one_minus_cr.mul(r).inverse()?.scale(&s0);
    let (a, bb) = hc.ab.clone();
    let (cn, sn) = (hc.c, hc.s0);
    let form = hc.form;
    let sym = if hc.n == 3 { "sqrt3 A" } else { "A" };
    let lattice = if hc.n == 3 { "hex" } else { "square" };

    let mut checks: Vec<Check> = vec![
        Box::new(|| {
            let s0_series = reduced_theta(ThetaKind::Sine, 0, &Rational::from(hc.gamma), inner)
                .expect("even k");
            let lhs = OffsetQSeries::new(Rational::new(1, 8), s0_series);
            let ratio = lhs
                .div(&eta_quotient(hc.theta_quotient, inner)?)?
                .to_series()?;
            let name = if hc.n == 3 {
                "theta(alpha)/sqrt3 = [3]"
            } else {
                "theta(alpha)/sqrt2 = [1][4]/[2]"
            };
            Ok(IdentityCheck::from_residual(
                name,
                &ratio.add_scalar(&Rational::from(-1)),
                k,
            ))
        }),
        Box::new(move || {
            let name = format!("{sym} = Lambert series");
            Ok(IdentityCheck::from_residual(
                &name,
                &ahat.sub(&lambert_series(form, inner)),
                k,
            ))
        }),
        Box::new(move || {
            let name = format!("{sym} = {lattice} lattice theta sum");
            Ok(IdentityCheck::from_residual(
                &name,
                &ahat.sub(&lattice_theta_sum(form, inner)),
                k,
            ))
        }),
        Box::new(|| {
            let rhs = one_plus_ch.square().scale(&s0);
            let name = format!("S/{sn} = (1+{cn}h)^2/h");
            Ok(IdentityCheck::from_residual(&name, &s.mul(&h).sub(&rhs), k))
        }),
        Box::new(|| {
            let lhs = s.mul(r).mul(&one_minus_cr);
            let name = format!("S/{sn} = 1/(R(1-{cn}R))");
            Ok(IdentityCheck::from_residual(
                &name,
                &lhs.add_scalar(&-&s0),
                k,
            ))
        }),
        Box::new(|| {
            let name = format!("R = h/(1+{cn}h)");
            Ok(IdentityCheck::from_residual(
                &name,
                &r.mul(&one_plus_ch).sub(&h),
                k,
            ))
        }),
        Box::new(move || {
            let ratio = shifted_lattice_theta_sum(form, inner).div(&OffsetQSeries::new(
                Rational::zero(),
                lattice_theta_sum(form, inner),
            ))?;
            let power = if form == LatticeForm::Hex { 3 } else { 2 };
            let rhs = ratio.pow(power)?.to_series()?.scale(&Rational::new(1, cn));
            let name = format!("R = shifted/plain {lattice} lattice sum ratio");
            Ok(IdentityCheck::from_residual(&name, &r.sub(&rhs), k))
        }),
        Box::new(|| {
            let d2t = t.d_by(r)?.d_by(r)?;
            let name = format!("d2t/dR2 - {sn}/(R(1-{cn}R)) t = 0");
            Ok(IdentityCheck::from_residual(
                &name,
                &d2t.sub(&s_rational.mul(t)),
                k,
            ))
        }),
        Box::new(|| {
            let f = f21_series(&a, &bb, &Rational::from(2), &c, inner)?;
            let name = format!("t = R 2F1({a},{bb};2;{cn}R)");
            Ok(IdentityCheck::from_residual(
                &name,
                &t.sub(&r.mul(&f.compose(r)?)),
                k,
            ))
        }),
        Box::new(|| {
            let f = f21_series(&a, &bb, &Rational::one(), &c, inner)?;
            let name = format!("{sym} = 2F1({a},{bb};1;{cn}R)");
            Ok(IdentityCheck::from_residual(
                &name,
                &ahat.sub(&f.compose(r)?),
                k,
            ))
        }),
        Box::new(|| {
            // T = S'/S = (2cR − 1)/(R(1 − cR))
            let big_t = r
                .scale(&Rational::from(2 * cn))
                .add_scalar(&Rational::from(-1))
                .mul(&one_minus_cr.mul(r).inverse()?);
            let da = ahat.d_by(r)?;
            let d2a = da.d_by(r)?;
            let res = d2a.sub(&big_t.mul(&da)).sub(&s_rational.mul(ahat));
            let name =
                format!("d2A/dR2 - (2*{cn}R-1)/(R(1-{cn}R)) dA/dR - {sn}/(R(1-{cn}R)) A = 0");
            Ok(IdentityCheck::from_residual(&name, &res, k))
        }),
    ];
    if hc.n == 4 {
        checks.push(Box::new(|| {
            let q = eta_quotient(&[(2, 10), (1, -4), (4, -4)], inner)?.to_series()?;
            Ok(IdentityCheck::from_residual(
                "A = [2]^10/([1]^4[4]^4)",
                &ahat.sub(&q),
                k,
            ))
        }));
        checks.push(Box::new(|| {
            let q = eta_quotient(&[(2, 2), (1, -1), (4, -1)], inner)?
                .pow(24)?
                .to_series()?;
            Ok(IdentityCheck::from_residual(
                "S/4 = ([2]^2/([1][4]))^24",
                &s.sub(&q.scale(&Rational::from(4))),
                k,
            ))
        }));
        checks.push(Box::new(|| {
            let q = eta_quotient(&[(1, 8), (4, 16), (2, -24)], inner)?.to_series()?;
            Ok(IdentityCheck::from_residual(
                "R = [1]^8[4]^16/[2]^24",
                &r.sub(&q),
                k,
            ))
        }));
    }
    Ok(CaseReport {
        case: hc.n,
        gamma: hc.gamma.to_string(),
        order: k,
        identities: run(checks)?,
        relation: None,
    })
}

/// Coefficients of 256R⁴S² − 264R³S² + 3R²S² + 128R²S + 5RS² − 64RS − 10S + 16.
pub(crate) const SIX_RELATION: [((u32, u32), i64); 8] = [
    ((4, 2), 256),
    ((3, 2), -264),
    ((2, 2), 3),
    ((2, 1), 128),
    ((1, 2), 5),
    ((1, 1), -64),
    ((0, 1), -10),
    ((0, 0), 16),
];

pub(crate) fn box_support(max_i: u32, max_j: u32) -> Vec<(u32, u32)> {
    (0..=max_j)
        .flat_map(|j| (0..=max_i).map(move |i| (i, j)))
        .collect()
}

/// Order at which relations are searched: comfortably above the number
/// of unknowns.
fn relation_order(k: i64, support: usize) -> i64 {
    k.max(2 * support as i64 + 10)
}

/// t as a series in h, from t(q) and the reversion of h(q).
fn t_in_h<C: Ring>(t: &TruncSeries<C>, h: &TruncSeries<C>) -> Result<TruncSeries<C>, ModularError> {
    let q_h = h.revert()?.with_var(Var::H);
    Ok(t.compose(&q_h)?)
}

fn case_six(k: i64) -> Result<CaseReport, ModularError> {
    let inner = k + MARGIN;
    let gamma = Rational::from(-1);
    let support = box_support(4, 2);
    let rel_order = relation_order(k, support.len());
    let b = GenFunBundle::new(&gamma, inner.max(rel_order))
        .map_err(|e| ModularError::BadParameter(e.to_string()))?;
    let h = hauptmodul(6, inner)?;
    let relation = find_poly_relation(&b.r_q, &b.s_q, &support)
        .map_err(|e| ModularError::BadParameter(e.to_string()))?;
    let (r, s, t) = (&b.r_q, &b.s_q, &b.t_q);
    let rel = &relation;

    let checks: Vec<Check> = vec![
        Box::new(|| {
            let found: Vec<((u32, u32), i64)> = rel
                .terms()
                .into_iter()
                .map(|(m, c)| (m, c.to_i64().unwrap_or(i64::MAX)))
                .collect();
            Ok(IdentityCheck::boolean(
                "found P(R,S) = 256R^4S^2-264R^3S^2+3R^2S^2+128R^2S+5RS^2-64RS-10S+16",
                found == SIX_RELATION,
                rel.certified_order,
                k,
            ))
        }),
        Box::new(|| {
            let p = RelationCandidate {
                support: SIX_RELATION.iter().map(|x| x.0).collect(),
                coefficients: SIX_RELATION.iter().map(|x| Rational::from(x.1)).collect(),
                certified_order: 0,
            };
            Ok(IdentityCheck::from_residual(
                "P(R,S) = 0",
                &p.evaluate(r, s),
                k,
            ))
        }),
        Box::new(|| {
            let r2 = crate::genfun::r_of_q(&gamma, 2 * rel_order)
                .map_err(|e| ModularError::BadParameter(e.to_string()))?;
            let s2 = crate::genfun::s_of_q(&gamma, 2 * rel_order + 2)
                .map_err(|e| ModularError::BadParameter(e.to_string()))?;
            Ok(IdentityCheck::from_residual(
                "found relation persists at doubled order",
                &rel.evaluate(&r2, &s2),
                2 * rel_order - 4,
            ))
        }),
        Box::new(|| {
            let rhs = h.mul(&h.scale(&Rational::from(2)).add_scalar(&Rational::one()));
            Ok(IdentityCheck::from_residual("R = h(1+2h)", &r.sub(&rhs), k))
        }),
        Box::new(|| {
            // h(1+h)(1+4h)(1-8h) = h - 3h^2 - 36h^3 - 32h^4
            let den =
                poly(Var::Q, &ints::<Rational>(&[0, 1, -3, -36, -32]), inner + 8).compose(&h)?;
            let res = s.mul(&den).add_scalar(&Rational::from(-2));
            Ok(IdentityCheck::from_residual(
                "S/2 = 1/(h(1+h)(1+4h)(1-8h))",
                &res,
                k,
            ))
        }),
        Box::new(|| {
            let th = t_in_h(t, &h)?;
            let big = inner + 8;
            let d1 = th.deriv();
            let d2 = d1.deriv();
            let p = poly(Var::H, &ints::<Rational>(&[1, 4]), big)
                .inverse()?
                .scale(&Rational::from(4));
            let q = poly(Var::H, &ints::<Rational>(&[2, 8]), big).div(&poly(
                Var::H,
                &ints::<Rational>(&[0, 1, -7, -8]),
                big,
            ))?;
            let res = d2.sub(&p.mul(&d1)).sub(&q.mul(&th));
            Ok(IdentityCheck::from_residual(
                "d2t/dh2 - 4/(1+4h) dt/dh - 2(1+4h)/(h(1+h)(1-8h)) t = 0",
                &res,
                k,
            ))
        }),
    ];
    Ok(CaseReport {
        case: 6,
        gamma: "-1".into(),
        order: k,
        identities: run(checks)?,
        relation: Some(relation.to_json()),
    })
}

/// Newton polygon of the level-5 relation: R^i S^j for these (i, j).
pub const FIVE_NEWTON_POLYGON: [(u32, u32); 13] = [
    (0, 0),
    (0, 1),
    (1, 1),
    (2, 1),
    (1, 2),
    (2, 2),
    (3, 2),
    (4, 2),
    (2, 3),
    (3, 3),
    (4, 3),
    (5, 3),
    (6, 3),
];

fn qe(a: (i64, i64), b: (i64, i64)) -> QuadExtSqrt5 {
    QuadExtSqrt5::new(Rational::new(a.0, a.1), Rational::new(b.0, b.1))
}

/// 1 − x·h as a polynomial.
fn one_minus(x: &QuadExtSqrt5, order: i64) -> TruncSeries<QuadExtSqrt5> {
    poly(Var::H, &[QuadExtSqrt5::one(), x.neg()], order)
}

/// Coefficients of the ODE in h at γ = (1+√5)/2 as series in h: returns
/// (P, Q) for t'' + P t' − Q t = 0.
///
/// With `as_displayed` the first-order coefficient has the factor
/// (1 − (11+√5)/2·h) and the zeroth-order coefficient is
/// 10(3+√5)(1+(2+√5)h)⁴ / ((1−(11+5√5)/2·h)²(1−(11−5√5)/2·h)²).
/// Otherwise the factor is (1 − (11+5√5)/2·h) and
/// Q = (5+√5)(1 − (√5−1)/2·h) / (h(1 − (11−5√5)/2·h)(1 + (2+√5)h)²),
/// which is S·(dR/dh)².
pub fn five_ode_coefficients(
    as_displayed: bool,
    order: i64,
) -> Result<(TruncSeries<QuadExtSqrt5>, TruncSeries<QuadExtSqrt5>), ModularError> {
    let c = qe((-1, 2), (1, 2));
    let d = qe((2, 1), (1, 1));
    let a_minus = qe((11, 2), (-5, 2));
    let a_plus = qe((11, 2), (5, 2));
    let one_plus_dh = one_minus(&d.neg(), order);
    let p_num = poly(
        Var::H,
        &[
            qe((13, 1), (7, 1)),
            qe((-82, 1), (-36, 1)),
            qe((29, 1), (13, 1)),
        ],
        order,
    );
    let third = if as_displayed {
        qe((11, 2), (1, 2))
    } else {
        a_plus.clone()
    };
    let p_den = one_minus(&c, order)
        .mul(&one_plus_dh)
        .mul(&one_minus(&third, order));
    let p = p_num.div(&p_den)?;
    let q = if as_displayed {
        let num = one_plus_dh.pow(4).scale(&qe((30, 1), (10, 1)));
        let den = one_minus(&a_plus, order)
            .square()
            .mul(&one_minus(&a_minus, order).square());
        num.div(&den)?
    } else {
        let num = one_minus(&c, order).scale(&qe((5, 1), (1, 1)));
        let den = one_minus(&a_minus, order)
            .mul(&one_plus_dh.square())
            .shift(1);
        num.div(&den)?
    };
    Ok((p, q))
}

fn case_five(k: i64) -> Result<CaseReport, ModularError> {
    let inner = k + MARGIN;
    let phi = QuadExtSqrt5::golden_ratio();
    let support = box_support(6, 3);
    let rel_order = relation_order(k, support.len());
    let err = |e: crate::genfun::GenFunError| ModularError::BadParameter(e.to_string());
    let b = GenFunBundle::new(&phi, inner).map_err(err)?;
    let r_rel = crate::genfun::r_of_q(&phi, rel_order).map_err(err)?;
    let s_rel = crate::genfun::s_of_q(&phi, rel_order + 2).map_err(err)?;
    let relation = find_poly_relation(&r_rel, &s_rel, &support)
        .map_err(|e| ModularError::BadParameter(e.to_string()))?;
    let h: TruncSeries<QuadExtSqrt5> = lift(&hauptmodul(5, inner)?);
    let (r, s, t) = (&b.r_q, &b.s_q, &b.t_q);
    let rel = &relation;
    let c = qe((-1, 2), (1, 2));
    let d = qe((2, 1), (1, 1));
    let a_minus = qe((11, 2), (-5, 2));
    let a_plus = qe((11, 2), (5, 2));
    let big = inner + 8;

    let ode = |as_displayed: bool| -> Result<TruncSeries<QuadExtSqrt5>, ModularError> {
        let th = t_in_h(t, &h)?;
        let d1 = th.deriv();
        let d2 = d1.deriv();
        let (p, q) = five_ode_coefficients(as_displayed, big)?;
        Ok(d2.add(&p.mul(&d1)).sub(&q.mul(&th)))
    };

    let checks: Vec<Check> = vec![
        Box::new(|| {
            // R (1+dh)^3 = h (1 - phi h)
            let lhs = r.mul(&one_minus(&d.neg(), big).pow(3).compose(&h)?);
            let rhs = h.mul(&one_minus(&phi, big).compose(&h)?);
            Ok(IdentityCheck::from_residual(
                "R = h(1-(1+sqrt5)/2 h)/(1+(2+sqrt5)h)^3",
                &lhs.sub(&rhs),
                k,
            ))
        }),
        Box::new(|| {
            let den = one_minus(&a_minus, big)
                .mul(&one_minus(&a_plus, big).square())
                .mul(&one_minus(&c, big))
                .shift(1)
                .compose(&h)?;
            let num = one_minus(&d.neg(), big)
                .pow(6)
                .scale(&qe((5, 1), (1, 1)))
                .compose(&h)?;
            Ok(IdentityCheck::from_residual(
                "S = (5+sqrt5)(1+(2+sqrt5)h)^6/(h(1-(11-5sqrt5)/2 h)(1-(11+5sqrt5)/2 h)^2(1-(sqrt5-1)/2 h))",
                &s.mul(&den).sub(&num),
                k,
            ))
        }),
        Box::new(|| {
            let inside = rel
                .terms()
                .iter()
                .all(|(m, _)| FIVE_NEWTON_POLYGON.contains(m));
            Ok(IdentityCheck::boolean(
                "found P(R,S) support lies in the 13-point Newton polygon",
                inside,
                rel.certified_order,
                k,
            ))
        }),
        Box::new(|| {
            let r2 = crate::genfun::r_of_q(&phi, 2 * rel_order).map_err(err)?;
            let s2 = crate::genfun::s_of_q(&phi, 2 * rel_order + 2).map_err(err)?;
            Ok(IdentityCheck::from_residual(
                "found relation persists at doubled order",
                &rel.evaluate(&r2, &s2),
                2 * rel_order - 4,
            ))
        }),
        Box::new(|| {
            // the conjugate weight (1-sqrt5)/2 gives the conjugate series
            let rc = crate::genfun::r_of_q(&phi.conj(), inner).map_err(err)?;
            let conj = r.map_coeffs(QuadExtSqrt5::conj);
            Ok(IdentityCheck::from_residual(
                "R at conjugate gamma = conjugate of R",
                &rc.sub(&conj),
                k,
            ))
        }),
        Box::new(|| {
            Ok(IdentityCheck::from_residual(
                "ODE in h as displayed",
                &ode(true)?,
                k,
            ))
        }),
        Box::new(|| {
            Ok(IdentityCheck::from_residual(
                "ODE in h with coefficients -R''/R' and S R'^2",
                &ode(false)?,
                k,
            ))
        }),
    ];
    Ok(CaseReport {
        case: 5,
        gamma: "(1+sqrt5)/2".into(),
        order: k,
        identities: run(checks)?,
        relation: Some(relation.to_json()),
    })
}

/// The default search box (max R-degree, max S-degree) for a level.
pub fn default_relation_box(n: u32) -> Result<(u32, u32), ModularError> {
    match n {
        3 | 4 => Ok((2, 1)),
        6 => Ok((4, 2)),
        5 => Ok((6, 3)),
        other => Err(ModularError::UnsupportedLevel(other)),
    }
}

/// A relation found for one level, with its doubled-order recheck.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RelationReport {
    pub case: u32,
    pub gamma: String,
    pub max_r_degree: u32,
    pub max_s_degree: u32,
    pub certified_order: i64,
    pub display: String,
    pub relation: serde_json::Value,
    pub recheck: IdentityCheck,
}

fn search<C: super::RelationField>(
    gamma: &C,
    order: i64,
    support: &[(u32, u32)],
) -> Result<(RelationCandidate<C>, IdentityCheck), ModularError> {
    let err = |e: crate::genfun::GenFunError| ModularError::BadParameter(e.to_string());
    let r = crate::genfun::r_of_q(gamma, order).map_err(err)?;
    let s = crate::genfun::s_of_q(gamma, order + 2).map_err(err)?;
    let rel = find_poly_relation(&r, &s, support)
        .map_err(|e| ModularError::BadParameter(e.to_string()))?;
    let r2 = crate::genfun::r_of_q(gamma, 2 * order).map_err(err)?;
    let s2 = crate::genfun::s_of_q(gamma, 2 * order + 2).map_err(err)?;
    let check = IdentityCheck::from_residual(
        "found relation persists at doubled order",
        &rel.evaluate(&r2, &s2),
        2 * order - 4,
    );
    Ok((rel, check))
}

/// Searches for P(R,S) = 0 with deg_R ≤ max_r and deg_S ≤ max_s at the
/// weight belonging to level `n`; `order` defaults to twice the number of
/// unknowns plus ten.
pub fn case_relation(
    n: u32,
    order: Option<i64>,
    max_r: u32,
    max_s: u32,
) -> Result<RelationReport, ModularError> {
    let support = box_support(max_r, max_s);
    let order = order.unwrap_or_else(|| relation_order(0, support.len()));
    let (gamma, display, relation, certified_order, recheck) = match n {
        5 => {
            let (rel, check) = search(&QuadExtSqrt5::golden_ratio(), order, &support)?;
            (
                "(1+sqrt5)/2".to_string(),
                rel.to_string(),
                rel.to_json(),
                rel.certified_order,
                check,
            )
        }
        3 | 4 | 6 => {
            let g = match n {
                3 => 1,
                4 => 0,
                _ => -1,
            };
            let (rel, check) = search(&Rational::from(g), order, &support)?;
            (
                g.to_string(),
                rel.to_string(),
                rel.to_json(),
                rel.certified_order,
                check,
            )
        }
        other => return Err(ModularError::UnsupportedLevel(other)),
    };
    Ok(RelationReport {
        case: n,
        gamma,
        max_r_degree: max_r,
        max_s_degree: max_s,
        certified_order,
        display,
        relation,
        recheck,
    })
}
