use std::collections::{BTreeSet, HashMap};

use num::{BigRational, Signed};

use crate::error::{structural, QcatError, Result};
use crate::report::{PropertyReport, Witness, WitnessValue};

use super::ExtValue;

/// A finite set with an `[0, ∞]`-valued distance, `p(y, x)` stored row-major by `y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialMetricSpace {
    names: Vec<String>,
    index: HashMap<String, usize>,
    p: Vec<ExtValue>,
}

impl PartialMetricSpace {
    pub fn new(names: Vec<String>, p: impl Fn(usize, usize) -> ExtValue) -> Result<Self> {
        let n = names.len();
        let table = (0..n * n).map(|k| p(k / n, k % n)).collect();
        Self::from_table(names, table)
    }

    pub fn from_table(names: Vec<String>, p: Vec<ExtValue>) -> Result<Self> {
        let n = names.len();
        if p.len() != n * n {
            return Err(structural("distance matrix has wrong size"));
        }
        let mut index = HashMap::new();
        for (i, s) in names.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(structural(format!("duplicate point {s}")));
            }
        }
        Ok(PartialMetricSpace { names, index, p })
    }

    pub fn empty() -> Self {
        Self::from_table(Vec::new(), Vec::new()).expect("empty space")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, x: usize) -> &str {
        &self.names[x]
    }

    pub fn find(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn subset(&self, names: &[&str]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|s| {
                self.find(s)
                    .ok_or_else(|| QcatError::InvalidArgument(format!("no point named {s}")))
            })
            .collect()
    }

    /// `p(y, x)`.
    pub fn p(&self, y: usize, x: usize) -> &ExtValue {
        &self.p[y * self.len() + x]
    }

    pub fn table(&self) -> &[ExtValue] {
        &self.p
    }

    /// The type `p(x, x)`.
    pub fn typ(&self, x: usize) -> &ExtValue {
        self.p(x, x)
    }

    pub fn is_finitely_typed(&self) -> bool {
        self.points().all(|x| !self.typ(x).is_inf())
    }

    pub(crate) fn require_finitely_typed(&self) -> Result<()> {
        match self.points().find(|&x| self.typ(x).is_inf()) {
            Some(x) => Err(QcatError::NotFinitelyTyped(self.names[x].clone())),
            None => Ok(()),
        }
    }

    /// All values taken by `p`, sorted.
    pub fn distance_values(&self) -> BTreeSet<ExtValue> {
        self.p.iter().cloned().collect()
    }

    pub fn full_sub(&self, keep: &[usize]) -> PartialMetricSpace {
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        let p = keep
            .iter()
            .flat_map(|&y| keep.iter().map(move |&x| (y, x)))
            .map(|(y, x)| self.p(y, x).clone())
            .collect();
        Self::from_table(names, p).expect("subspace")
    }

    pub(crate) fn wp(&self, x: usize) -> (WitnessValue, String) {
        (WitnessValue::Point(x), self.names[x].clone())
    }

    pub(crate) fn witness(&self, pts: &[(&str, usize)]) -> Witness {
        pts.iter().fold(Witness::new(), |w, &(role, x)| {
            let (v, t) = self.wp(x);
            w.with(role, v, t)
        })
    }
}

/// `p(y,x) ≥ p(x,x) ∨ p(y,y)` and `tri(p(z,y), p(y,y), p(y,x)) ≥ p(z,x)`.
pub fn validate_pms(x: &PartialMetricSpace) -> PropertyReport {
    let mut rep = PropertyReport::new();
    let first = x
        .points()
        .flat_map(|y| x.points().map(move |a| (y, a)))
        .find(|&(y, a)| *x.p(y, a) < x.typ(a).join(x.typ(y)))
        .map(|(y, a)| x.witness(&[("y", y), ("x", a)]));
    rep.record("self-distance-bound", first);
    let mut tri = None;
    'o: for z in x.points() {
        for y in x.points() {
            for a in x.points() {
                let lhs = ExtValue::tri(x.p(z, y), x.typ(y), x.p(y, a));
                if lhs < *x.p(z, a) {
                    let w = x.witness(&[("z", z), ("y", y), ("x", a)]);
                    tri = Some(w.with("sum", WitnessValue::Value(lhs.clone()), lhs.to_string()));
                    break 'o;
                }
            }
        }
    }
    rep.record("triangle", tri);
    rep
}

/// Zero self-distance and `d(z,x) ≤ d(z,y) + d(y,x)`; optionally symmetry.
pub fn validate_metric(d: &PartialMetricSpace, symmetric: bool) -> PropertyReport {
    let mut rep = PropertyReport::new();
    let zero = d
        .points()
        .find(|&x| !d.typ(x).is_zero())
        .map(|x| d.witness(&[("x", x)]));
    rep.record("zero-self-distance", zero);
    let mut tri = None;
    'o: for z in d.points() {
        for y in d.points() {
            for x in d.points() {
                if d.p(z, y) + d.p(y, x) < *d.p(z, x) {
                    tri = Some(d.witness(&[("z", z), ("y", y), ("x", x)]));
                    break 'o;
                }
            }
        }
    }
    rep.record("triangle", tri);
    if symmetric {
        let sym = d
            .points()
            .flat_map(|y| d.points().map(move |x| (y, x)))
            .find(|&(y, x)| d.p(y, x) != d.p(x, y))
            .map(|(y, x)| d.witness(&[("y", y), ("x", x)]));
        rep.record("symmetric", sym);
    }
    rep
}

/// The generalised metrics derived from a partial metric.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivedMetrics {
    /// `p(y,x) ⊖ p(y,y)`.
    pub p0: PartialMetricSpace,
    /// `p(y,x) ⊖ p(x,x)`.
    pub p1: PartialMetricSpace,
    /// `p0 + p1`, i.e. `2p(y,x) − p(x,x) − p(y,y)` on finite entries.
    pub pk: PartialMetricSpace,
    /// `(p(y,x) ⊖ p(x,x)) ∨ (p(x,y) ⊖ p(y,y))`.
    pub psym: PartialMetricSpace,
}

pub fn derived_metrics(x: &PartialMetricSpace) -> DerivedMetrics {
    let names = x.names().to_vec();
    let p0 = |y: usize, a: usize| x.p(y, a).monus(x.typ(y));
    let p1 = |y: usize, a: usize| x.p(y, a).monus(x.typ(a));
    let build = |f: &dyn Fn(usize, usize) -> ExtValue| PartialMetricSpace::new(names.clone(), f).expect("same carrier");
    DerivedMetrics {
        p0: build(&p0),
        p1: build(&p1),
        pk: build(&|y, a| p0(y, a) + p1(y, a)),
        psym: build(&|y, a| p1(y, a).join(&p1(a, y))),
    }
}

/// `p(x,s) − p(s,s) + p(s,x) − p(x,x)` as a signed rational; `None` means `∞`.
pub fn closure_term(x: &PartialMetricSpace, s: usize, a: usize) -> Option<BigRational> {
    let (xs, sx) = (x.p(a, s).finite()?, x.p(s, a).finite()?);
    let (ss, xx) = (x.typ(s).finite()?, x.typ(a).finite()?);
    Some(xs - ss + sx - xx)
}

/// `x ∈ cl(S)` iff `⋀_{s∈S} [p(x,s) − p(s,s) + p(s,x) − p(x,x)] ≤ 0`.
pub fn closure_membership(x: &PartialMetricSpace, s: &[usize], a: usize) -> Result<bool> {
    x.require_finitely_typed()?;
    check_points(x, s)?;
    check_points(x, &[a])?;
    Ok(s.iter()
        .filter_map(|&t| closure_term(x, t, a))
        .any(|v| !v.is_positive()))
}

pub fn closure_set(x: &PartialMetricSpace, s: &[usize]) -> Result<Vec<usize>> {
    x.require_finitely_typed()?;
    check_points(x, s)?;
    Ok(x.points()
        .filter(|&a| {
            s.iter()
                .filter_map(|&t| closure_term(x, t, a))
                .any(|v| !v.is_positive())
        })
        .collect())
}

/// The closure of `S` for a symmetric metric: points at distance `0` from `S`.
pub fn metric_closure(d: &PartialMetricSpace, s: &[usize]) -> Vec<usize> {
    d.points().filter(|&a| s.iter().any(|&t| d.p(a, t).is_zero())).collect()
}

fn check_points(x: &PartialMetricSpace, s: &[usize]) -> Result<()> {
    match s.iter().find(|&&a| a >= x.len()) {
        Some(a) => Err(QcatError::InvalidArgument(format!("point index {a} is out of range"))),
        None => Ok(()),
    }
}
