use std::fmt;

use thiserror::Error;

use super::linalg::kernel;
use crate::coeffring::{Field, QuadExtSqrt5, Rational, Ring};
use crate::powerseries::{SeriesError, TruncSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("no polynomial relation on the given support")]
    NoRelation,
    #[error("kernel has dimension {0}; the support is too generous")]
    AmbiguousRelation(usize),
    #[error("{rows} equations for {cols} unknowns; raise the series order")]
    TooFewEquations { rows: usize, cols: usize },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

/// Fields in which a found relation can be put in a canonical form.
pub trait RelationField: Field {
    /// Rescales `coeffs` in place; `lead` is the index of the leading
    /// monomial.
    fn normalize(coeffs: &mut [Self], lead: usize);
}

/// Integer coefficients with content 1 and a positive leading coefficient.
impl RelationField for Rational {
    fn normalize(coeffs: &mut [Self], lead: usize) {
        let mut c = Rational::content(coeffs).expect("nonzero kernel vector");
        if coeffs[lead].is_negative() {
            c = -c;
        }
        for x in coeffs.iter_mut() {
            *x = &*x / &c;
        }
    }
}

/// Leading coefficient 1; ℚ(√5) has no canonical content.
impl RelationField for QuadExtSqrt5 {
    fn normalize(coeffs: &mut [Self], lead: usize) {
        let inv = coeffs[lead]
            .inverse()
            .expect("leading coefficient is nonzero");
        for x in coeffs.iter_mut() {
            *x = x.mul(&inv);
        }
    }
}

/// Σ c_{ij} R^i S^j = 0, certified to a q-order.
#[derive(Debug, Clone, PartialEq)]
pub struct RelationCandidate<C> {
    pub support: Vec<(u32, u32)>,
    pub coefficients: Vec<C>,
    /// The relation was checked to vanish below this q-exponent.
    pub certified_order: i64,
}

impl<C: Ring> RelationCandidate<C> {
    /// Nonzero terms, sorted by descending R-degree then S-degree.
    pub fn terms(&self) -> Vec<((u32, u32), C)> {
        let mut t: Vec<_> = self
            .support
            .iter()
            .copied()
            .zip(self.coefficients.iter().cloned())
            .filter(|(_, c)| !c.is_zero())
            .collect();
        t.sort_by_key(|a| std::cmp::Reverse(a.0));
        t
    }

    /// Σ c_{ij} R^i S^j as a series.
    pub fn evaluate(&self, r: &TruncSeries<C>, s: &TruncSeries<C>) -> TruncSeries<C> {
        let cols = monomial_series(r, s, &self.support);
        let mut acc: Option<TruncSeries<C>> = None;
        for (col, c) in cols.iter().zip(&self.coefficients) {
            let term = col.scale(c);
            acc = Some(match acc {
                None => term,
                Some(a) => a.add(&term),
            });
        }
        acc.unwrap_or_else(|| TruncSeries::zero(r.var(), r.order()))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            self.terms()
                .into_iter()
                .map(|((i, j), c)| serde_json::json!({"r": i, "s": j, "coeff": c.to_json()}))
                .collect(),
        )
    }
}

impl<C: Ring> fmt::Display for RelationCandidate<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (k, ((i, j), c)) in terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            match i {
                0 => {}
                1 => f.write_str("*R")?,
                _ => write!(f, "*R^{i}")?,
            }
            match j {
                0 => {}
                1 => f.write_str("*S")?,
                _ => write!(f, "*S^{j}")?,
            }
        }
        Ok(())
    }
}

fn monomial_series<C: Ring>(
    r: &TruncSeries<C>,
    s: &TruncSeries<C>,
    support: &[(u32, u32)],
) -> Vec<TruncSeries<C>> {
    let max_i = support.iter().map(|m| m.0).max().unwrap_or(0);
    let max_j = support.iter().map(|m| m.1).max().unwrap_or(0);
    let order = r.order().max(s.order()) + 8 * (max_i + max_j + 1) as i64;
    let mut rp = vec![TruncSeries::one(r.var(), order)];
    for _ in 0..max_i {
        let next = rp.last().expect("nonempty").mul(r);
        rp.push(next);
    }
    let mut sp = vec![TruncSeries::one(s.var(), order)];
    for _ in 0..max_j {
        let next = sp.last().expect("nonempty").mul(s);
        sp.push(next);
    }
    support
        .iter()
        .map(|&(i, j)| rp[i as usize].mul(&sp[j as usize]))
        .collect()
}

/// The graded-lex leading monomial: largest (i+j, i, j).
fn leading_index<C: Ring>(support: &[(u32, u32)], coeffs: &[C]) -> usize {
    (0..support.len())
        .filter(|&k| !coeffs[k].is_zero())
        .max_by_key(|&k| {
            let (i, j) = support[k];
            (i + j, i, j)
        })
        .expect("nonzero kernel vector")
}

/// Finds the unique (up to scale) linear relation among the series R^i S^j
/// for (i, j) in `support`, using every coefficient known for all of them.
pub fn find_poly_relation<C: RelationField>(
    r: &TruncSeries<C>,
    s: &TruncSeries<C>,
    support: &[(u32, u32)],
) -> Result<RelationCandidate<C>, RelationError> {
    let cols = monomial_series(r, s, support);
    let low = cols.iter().map(|c| c.valuation()).min().unwrap_or(0);
    let order = cols.iter().map(TruncSeries::order).min().unwrap_or(0);
    let rows = (order - low).max(0) as usize;
    if rows <= support.len() {
        return Err(RelationError::TooFewEquations {
            rows,
            cols: support.len(),
        });
    }
    let matrix: Vec<Vec<C>> = (low..order)
        .map(|e| {
            cols.iter()
                .map(|c| c.coeff(e).expect("below order"))
                .collect()
        })
        .collect();
    let mut basis = kernel(&matrix, support.len());
    match basis.len() {
        0 => return Err(RelationError::NoRelation),
        1 => {}
        n => return Err(RelationError::AmbiguousRelation(n)),
    }
    let mut coefficients = basis.pop().expect("one vector");
    let lead = leading_index(support, &coefficients);
    C::normalize(&mut coefficients, lead);
    Ok(RelationCandidate {
        support: support.to_vec(),
        coefficients,
        certified_order: order,
    })
}
