use std::collections::BTreeSet;

use num::{BigInt, BigRational, Signed, ToPrimitive};

use crate::error::{QcatError, Result};

use super::{ExtValue, PartialMetricSpace};

/// Largest number of grid triples times point pairs scanned.
pub const MAX_EXPONENTIAL_WORK: u128 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExponentialWitness {
    pub x0: usize,
    pub x2: usize,
    pub u: ExtValue,
    pub v: ExtValue,
    pub w: ExtValue,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExponentialVerdict {
    /// Empty, or every distance is `∞`.
    ExponentiableExact,
    /// Hypotheses hold but no `x₁` of type `v` lies within `u` of `x₀` and `w` of `x₂`.
    /// Exact on a finite space: the infimum over finitely many `x₁` is attained.
    NotExponentiable(ExponentialWitness),
    /// No violation for any grid triple.
    NoViolationOnGrid { step: BigRational, cap: BigRational },
}

impl ExponentialVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ExponentialVerdict::ExponentiableExact => "EXPONENTIABLE_EXACT",
            ExponentialVerdict::NotExponentiable(_) => "NOT_EXPONENTIABLE",
            ExponentialVerdict::NoViolationOnGrid { .. } => "NO_VIOLATION_ON_GRID",
        }
    }
}

fn violation(x: &PartialMetricSpace, u: &ExtValue, v: &ExtValue, w: &ExtValue) -> Option<(usize, usize)> {
    for x0 in x.points() {
        for x2 in x.points() {
            let hyp = *x.p(x0, x2) <= ExtValue::tri(u, v, w) && x.typ(x0).join(v) <= *u && x.typ(x2).join(v) <= *w;
            if !hyp {
                continue;
            }
            let found = x
                .points()
                .any(|x1| x.typ(x1) == v && x.p(x0, x1) <= u && x.p(x1, x2) <= w);
            if !found {
                return Some((x0, x2));
            }
        }
    }
    None
}

/// Scans `(u, v, w)` on `[0, cap] ∩ step·ℤ`: first the triples built from distances
/// that occur in `x`, then the rest; `v` outermost, then `u`, then `w`, all ascending.
pub fn exponentiable(x: &PartialMetricSpace, step: &BigRational, cap: &BigRational) -> Result<ExponentialVerdict> {
    if !step.is_positive() {
        return Err(QcatError::InvalidArgument("grid step must be positive".into()));
    }
    if cap.is_negative() {
        return Err(QcatError::InvalidArgument("grid cap must be nonnegative".into()));
    }
    if x.is_empty() || x.table().iter().all(|v| v.is_inf()) {
        return Ok(ExponentialVerdict::ExponentiableExact);
    }
    let count = (cap / step).floor().to_integer().to_u64().unwrap_or(u64::MAX) as u128 + 1;
    let work = count.saturating_pow(3).saturating_mul((x.len() * x.len()) as u128);
    if work > MAX_EXPONENTIAL_WORK {
        return Err(QcatError::BoundExceeded {
            needed: work,
            bound: MAX_EXPONENTIAL_WORK,
        });
    }
    let grid: Vec<ExtValue> = (0..count as u64)
        .map(|k| ExtValue::Fin(step * BigRational::from_integer(BigInt::from(k))))
        .collect();
    let occurring: BTreeSet<ExtValue> = x.distance_values();
    let seen: Vec<ExtValue> = grid.iter().filter(|g| occurring.contains(g)).cloned().collect();
    let scan =
        |vs: &[ExtValue], us: &[ExtValue], ws: &[ExtValue], skip: &dyn Fn(&ExtValue, &ExtValue, &ExtValue) -> bool| {
            for v in vs {
                for u in us.iter().filter(|u| *u >= v) {
                    for w in ws.iter().filter(|w| *w >= v) {
                        if skip(u, v, w) {
                            continue;
                        }
                        if let Some((x0, x2)) = violation(x, u, v, w) {
                            return Some(ExponentialWitness {
                                x0,
                                x2,
                                u: u.clone(),
                                v: v.clone(),
                                w: w.clone(),
                            });
                        }
                    }
                }
            }
            None
        };
    if let Some(wit) = scan(&seen, &seen, &seen, &|_, _, _| false) {
        return Ok(ExponentialVerdict::NotExponentiable(wit));
    }
    let in_seen = |a: &ExtValue| occurring.contains(a);
    let first_phase = |u: &ExtValue, v: &ExtValue, w: &ExtValue| in_seen(u) && in_seen(v) && in_seen(w);
    if let Some(wit) = scan(&grid, &grid, &grid, &first_phase) {
        return Ok(ExponentialVerdict::NotExponentiable(wit));
    }
    Ok(ExponentialVerdict::NoViolationOnGrid {
        step: step.clone(),
        cap: cap.clone(),
    })
}
