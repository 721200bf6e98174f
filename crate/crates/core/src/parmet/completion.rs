use std::collections::BTreeSet;

use crate::error::Result;

use super::sequence::{pair_infimum, phi_fits, psi_fits, validate_cauchy_pair, CauchyPair};
use super::{ExtValue, PartialMetricSpace};

/// The completed space with the class of every original point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completion {
    pub space: PartialMetricSpace,
    /// The Cauchy pair behind each finite point, in point order.
    pub pairs: Vec<CauchyPair>,
    /// `embedding[x]` is the class of the representable pair of `x`.
    pub embedding: Vec<usize>,
    /// Index of the adjoined point of type `∞`.
    pub infinity: usize,
}

fn fill(
    x: &PartialMetricSpace,
    vals: &[ExtValue],
    fits: &dyn Fn(&[ExtValue], usize, usize) -> bool,
    cur: &mut Vec<ExtValue>,
    out: &mut Vec<Vec<ExtValue>>,
) {
    let k = cur.len();
    if k == x.len() {
        out.push(cur.clone());
        return;
    }
    for v in vals {
        cur.push(v.clone());
        let ok = (0..=k).all(|a| fits(cur, k, a) && fits(cur, a, k));
        if ok {
            fill(x, vals, fits, cur, out);
        }
        cur.pop();
    }
}

/// Every Cauchy pair with values among the distances of `x`.
pub fn cauchy_pairs(x: &PartialMetricSpace) -> Result<Vec<CauchyPair>> {
    x.require_finitely_typed()?;
    let vals: Vec<ExtValue> = x.distance_values().into_iter().collect();
    let mut out = BTreeSet::new();
    for q in vals.iter().filter(|v| !v.is_inf()) {
        let mut phis = Vec::new();
        fill(x, &vals, &|c, y, a| phi_fits(x, q, c, y, a), &mut Vec::new(), &mut phis);
        let mut psis = Vec::new();
        fill(x, &vals, &|c, y, a| psi_fits(x, q, c, y, a), &mut Vec::new(), &mut psis);
        for phi in &phis {
            for psi in &psis {
                if pair_infimum(x, phi, psi) > *q {
                    continue;
                }
                let pair = CauchyPair {
                    q: q.clone(),
                    phi: phi.clone(),
                    psi: psi.clone(),
                };
                if validate_cauchy_pair(x, &pair).ok() {
                    out.insert(pair);
                }
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Classes of Cauchy pairs with `p([φ],[φ']) = ⋀_z ψ(z) − p(z,z) + φ'(z)`, plus a point `inf`
/// at distance `∞` from everything.
pub fn complete_finite(x: &PartialMetricSpace) -> Result<Completion> {
    let pairs = cauchy_pairs(x)?;
    let embedding: Vec<usize> = x
        .points()
        .map(|a| {
            let r = CauchyPair::representable(x, a);
            pairs.iter().position(|c| *c == r).expect("representables are Cauchy")
        })
        .collect();
    let mut names: Vec<String> = Vec::with_capacity(pairs.len() + 1);
    let mut fresh = 0;
    for (i, _) in pairs.iter().enumerate() {
        let reps: Vec<&str> = x.points().filter(|&a| embedding[a] == i).map(|a| x.name(a)).collect();
        if reps.is_empty() {
            names.push(format!("c{fresh}"));
            fresh += 1;
        } else {
            names.push(reps.join("="));
        }
    }
    let mut inf = "inf".to_string();
    while names.contains(&inf) {
        inf.push('\'');
    }
    names.push(inf);
    let k = pairs.len();
    let space = PartialMetricSpace::new(names, |i, j| {
        if i == k || j == k {
            ExtValue::Inf
        } else {
            pair_infimum(x, &pairs[j].phi, &pairs[i].psi)
        }
    })?;
    Ok(Completion {
        space,
        pairs,
        embedding,
        infinity: k,
    })
}
