use num::{BigInt, BigRational, Signed};

use crate::error::{QcatError, Result};
use crate::report::{PropertyReport, WitnessValue};

use super::{ExtValue, PartialMetricSpace, WordSpace};

/// A space whose distances can be evaluated on demand.
pub trait DistanceSpace {
    type Point: Clone;

    /// `p(y, x)`.
    fn dist(&self, y: &Self::Point, x: &Self::Point) -> ExtValue;

    fn finitely_typed(&self) -> Result<()> {
        Ok(())
    }
}

impl DistanceSpace for PartialMetricSpace {
    type Point = usize;

    fn dist(&self, y: &usize, x: &usize) -> ExtValue {
        self.p(*y, *x).clone()
    }

    fn finitely_typed(&self) -> Result<()> {
        self.require_finitely_typed()
    }
}

impl DistanceSpace for WordSpace {
    type Point = String;

    fn dist(&self, y: &String, x: &String) -> ExtValue {
        WordSpace::distance(y, x)
    }
}

/// The samples `x_0, …, x_N` of a sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledSequence<P> {
    samples: Vec<P>,
    eps: BigRational,
    constant_from: Option<usize>,
}

impl<P: Clone + PartialEq> SampledSequence<P> {
    pub fn new(horizon: usize, eps: BigRational, gen: impl Fn(usize) -> P) -> Result<Self> {
        if horizon < 2 {
            return Err(QcatError::Horizon(horizon));
        }
        if !eps.is_positive() {
            return Err(QcatError::InvalidArgument("tolerance must be positive".into()));
        }
        Ok(SampledSequence {
            samples: (0..=horizon).map(gen).collect(),
            eps,
            constant_from: None,
        })
    }

    /// Marks the sequence as constant from `n0` on; checked on the samples.
    pub fn constant_from(mut self, n0: usize) -> Result<Self> {
        if n0 > self.horizon() {
            return Err(QcatError::InvalidArgument(format!("index {n0} is past the horizon")));
        }
        if self.samples[n0..].iter().any(|x| *x != self.samples[n0]) {
            return Err(QcatError::InvalidArgument(format!(
                "sequence is not constant from index {n0}"
            )));
        }
        self.constant_from = Some(n0);
        Ok(self)
    }

    /// The constant sequence, flagged from index `0`.
    pub fn constant(x: P, horizon: usize, eps: BigRational) -> Result<Self> {
        Self::new(horizon, eps, |_| x.clone())?.constant_from(0)
    }

    pub fn horizon(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn eps(&self) -> &BigRational {
        &self.eps
    }

    pub fn exact_from(&self) -> Option<usize> {
        self.constant_from
    }

    pub fn get(&self, n: usize) -> &P {
        &self.samples[n]
    }

    pub fn samples(&self) -> &[P] {
        &self.samples
    }
}

/// How a limit was established.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Certainty {
    /// The net is constant from the flagged index on.
    Exact,
    /// The window `[N/2, N]` stays within `eps`.
    Approximate { horizon: usize, eps: BigRational },
}

impl Certainty {
    pub fn is_exact(&self) -> bool {
        matches!(self, Certainty::Exact)
    }
}

/// An estimated limit; `None` when the window does not settle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Limit {
    pub value: Option<ExtValue>,
    pub certainty: Certainty,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeqVerdict {
    pub holds: bool,
    pub certainty: Certainty,
    /// Named limits that entered the verdict.
    pub limits: Vec<(String, Option<ExtValue>)>,
    /// First index from which every sampled value is within `eps` of its limit.
    pub stabilization: Option<usize>,
}

struct Window {
    lo: usize,
    hi: usize,
    exact: Option<usize>,
    eps: BigRational,
}

impl Window {
    fn of<P: Clone + PartialEq>(seqs: &[&SampledSequence<P>]) -> Window {
        let hi = seqs.iter().map(|s| s.horizon()).min().expect("a sequence");
        let exact = seqs
            .iter()
            .map(|s| s.constant_from)
            .collect::<Option<Vec<_>>>()
            .map(|v| v.into_iter().max().unwrap_or(0));
        let eps = seqs.iter().map(|s| s.eps.clone()).max().expect("a sequence");
        Window {
            lo: hi / 2,
            hi,
            exact,
            eps,
        }
    }

    fn certainty(&self) -> Certainty {
        match self.exact {
            Some(_) => Certainty::Exact,
            None => Certainty::Approximate {
                horizon: self.hi,
                eps: self.eps.clone(),
            },
        }
    }

    fn settle(&self, values: impl Iterator<Item = ExtValue>, last: ExtValue) -> Option<ExtValue> {
        let (mut lo, mut hi): (Option<BigRational>, Option<BigRational>) = (None, None);
        let mut inf = false;
        for v in values {
            match v {
                ExtValue::Inf => inf = true,
                ExtValue::Fin(r) => {
                    lo = Some(lo.map_or(r.clone(), |m| m.min(r.clone())));
                    hi = Some(hi.map_or(r.clone(), |m| m.max(r)));
                }
            }
        }
        match (inf, lo, hi) {
            (true, None, _) => Some(ExtValue::Inf),
            (false, Some(l), Some(h)) if &h - &l <= self.eps => Some(last),
            _ => None,
        }
    }

    fn limit1(&self, f: impl Fn(usize) -> ExtValue) -> Limit {
        let value = match self.exact {
            Some(n0) => Some(f(n0)),
            None => self.settle((self.lo..=self.hi).map(&f), f(self.hi)),
        };
        Limit {
            value,
            certainty: self.certainty(),
        }
    }

    fn limit2(&self, f: impl Fn(usize, usize) -> ExtValue) -> Limit {
        let value = match self.exact {
            Some(n0) => Some(f(n0, n0)),
            None => {
                let r = self.lo..=self.hi;
                let all = r.clone().flat_map(|n| r.clone().map(move |m| (n, m)));
                self.settle(all.map(|(n, m)| f(n, m)), f(self.hi, self.hi))
            }
        };
        Limit {
            value,
            certainty: self.certainty(),
        }
    }
}

fn within(a: &ExtValue, b: &ExtValue, eps: &BigRational) -> bool {
    match (a, b) {
        (ExtValue::Inf, ExtValue::Inf) => true,
        (ExtValue::Fin(x), ExtValue::Fin(y)) => (x - y).abs() <= *eps,
        _ => false,
    }
}

fn agree(a: &Option<ExtValue>, b: &Option<ExtValue>, w: &Window) -> bool {
    match (a, b) {
        (Some(a), Some(b)) if w.exact.is_some() => a == b,
        (Some(a), Some(b)) => within(a, b, &w.eps),
        _ => false,
    }
}

type Net<'a> = (&'a dyn Fn(usize, usize) -> ExtValue, ExtValue);

/// Smallest `n0` such that every listed net is within `eps` of its target on `[n0, N]`.
fn stabilization(hi: usize, eps: &BigRational, nets: &[Net]) -> Option<usize> {
    let mut first = None;
    for n0 in (0..=hi).rev() {
        let fresh = (n0..=hi).all(|m| {
            nets.iter()
                .all(|(f, t)| within(&f(n0, m), t, eps) && within(&f(m, n0), t, eps))
        });
        if !fresh {
            break;
        }
        first = Some(n0);
    }
    first
}

/// `lim p(x_n, x_n)`.
pub fn seq_type<S: DistanceSpace>(x: &S, s: &SampledSequence<S::Point>) -> Result<Limit>
where
    S::Point: PartialEq,
{
    x.finitely_typed()?;
    let w = Window::of(&[s]);
    Ok(w.limit1(|n| x.dist(s.get(n), s.get(n))))
}

/// The net `p(x_n, x_m)` converges in `[0, ∞[`.
pub fn seq_cauchy<S: DistanceSpace>(x: &S, s: &SampledSequence<S::Point>) -> Result<SeqVerdict>
where
    S::Point: PartialEq,
{
    x.finitely_typed()?;
    let w = Window::of(&[s]);
    let net = |n: usize, m: usize| x.dist(s.get(n), s.get(m));
    let q = w.limit2(net).value;
    let holds = matches!(q, Some(ExtValue::Fin(_)));
    let stab = q
        .as_ref()
        .filter(|_| holds)
        .and_then(|t| stabilization(w.hi, &w.eps, &[(&net, t.clone())]));
    Ok(SeqVerdict {
        holds,
        certainty: w.certainty(),
        limits: vec![("p(x_n,x_m)".into(), q)],
        stabilization: stab,
    })
}

/// The four limits `p(x_n,x_m)`, `p(x_n,y_m)`, `p(y_n,x_m)`, `p(y_n,y_m)` exist and agree.
pub fn seq_equivalent<S: DistanceSpace>(
    x: &S,
    s: &SampledSequence<S::Point>,
    t: &SampledSequence<S::Point>,
) -> Result<SeqVerdict>
where
    S::Point: PartialEq,
{
    x.finitely_typed()?;
    let w = Window::of(&[s, t]);
    let xx = |n: usize, m: usize| x.dist(s.get(n), s.get(m));
    let xy = |n: usize, m: usize| x.dist(s.get(n), t.get(m));
    let yx = |n: usize, m: usize| x.dist(t.get(n), s.get(m));
    let yy = |n: usize, m: usize| x.dist(t.get(n), t.get(m));
    let limits = vec![
        ("p(x_n,x_m)".to_string(), w.limit2(xx).value),
        ("p(x_n,y_m)".to_string(), w.limit2(xy).value),
        ("p(y_n,x_m)".to_string(), w.limit2(yx).value),
        ("p(y_n,y_m)".to_string(), w.limit2(yy).value),
    ];
    let holds = limits.iter().all(|(_, l)| agree(l, &limits[0].1, &w));
    let stab = match (&limits[0].1, holds) {
        (Some(q), true) => stabilization(
            w.hi,
            &w.eps,
            &[(&xx, q.clone()), (&xy, q.clone()), (&yx, q.clone()), (&yy, q.clone())],
        ),
        _ => None,
    };
    Ok(SeqVerdict {
        holds,
        certainty: w.certainty(),
        limits,
        stabilization: stab,
    })
}

/// `lim p(x_n, x) = lim p(x, x_n) = lim p(x_n, x_n) = p(x, x)`.
pub fn converges_to<S: DistanceSpace>(x: &S, s: &SampledSequence<S::Point>, a: &S::Point) -> Result<SeqVerdict>
where
    S::Point: PartialEq,
{
    x.finitely_typed()?;
    let w = Window::of(&[s]);
    let target = x.dist(a, a);
    let to = |n: usize, _: usize| x.dist(s.get(n), a);
    let from = |n: usize, _: usize| x.dist(a, s.get(n));
    let diag = |n: usize, _: usize| x.dist(s.get(n), s.get(n));
    let limits = vec![
        ("p(x_n,x)".to_string(), w.limit1(|n| to(n, n)).value),
        ("p(x,x_n)".to_string(), w.limit1(|n| from(n, n)).value),
        ("p(x_n,x_n)".to_string(), w.limit1(|n| diag(n, n)).value),
    ];
    let t = Some(target.clone());
    let holds = limits.iter().all(|(_, l)| agree(l, &t, &w));
    let stab = holds
        .then(|| {
            stabilization(
                w.hi,
                &w.eps,
                &[(&to, target.clone()), (&from, target.clone()), (&diag, target.clone())],
            )
        })
        .flatten();
    Ok(SeqVerdict {
        holds,
        certainty: w.certainty(),
        limits,
        stabilization: stab,
    })
}

/// A finite type `q` with functions `φ, ψ` on the points of a space.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CauchyPair {
    pub q: ExtValue,
    pub phi: Vec<ExtValue>,
    pub psi: Vec<ExtValue>,
}

impl CauchyPair {
    /// The pair `p(−, x)`, `p(x, −)` of type `p(x, x)`.
    pub fn representable(x: &PartialMetricSpace, a: usize) -> CauchyPair {
        CauchyPair {
            q: x.typ(a).clone(),
            phi: x.points().map(|y| x.p(y, a).clone()).collect(),
            psi: x.points().map(|y| x.p(a, y).clone()).collect(),
        }
    }
}

pub(crate) fn phi_fits(x: &PartialMetricSpace, q: &ExtValue, phi: &[ExtValue], y: usize, a: usize) -> bool {
    phi[y] >= q.join(x.typ(y)) && phi[y] <= ExtValue::tri(x.p(y, a), x.typ(a), &phi[a])
}

pub(crate) fn psi_fits(x: &PartialMetricSpace, q: &ExtValue, psi: &[ExtValue], y: usize, a: usize) -> bool {
    psi[y] >= q.join(x.typ(y)) && psi[y] <= ExtValue::tri(&psi[a], x.typ(a), x.p(a, y))
}

/// `⋀_z ψ(z) − p(z,z) + φ(z)`.
pub fn pair_infimum(x: &PartialMetricSpace, phi: &[ExtValue], psi: &[ExtValue]) -> ExtValue {
    x.points()
        .map(|z| ExtValue::tri(&psi[z], x.typ(z), &phi[z]))
        .min()
        .unwrap_or(ExtValue::Inf)
}

/// The presheaf bounds on `φ` and `ψ` and the two adjunction inequalities.
pub fn validate_cauchy_pair(x: &PartialMetricSpace, c: &CauchyPair) -> PropertyReport {
    let mut rep = PropertyReport::new();
    let n = x.len();
    if c.phi.len() != n || c.psi.len() != n || c.q.is_inf() {
        let w = crate::report::Witness::new().text("shape", "q must be finite and φ, ψ total");
        rep.fail("shape", w);
        return rep;
    }
    let pairs = || x.points().flat_map(|y| x.points().map(move |a| (y, a)));
    let phi = pairs()
        .find(|&(y, a)| !phi_fits(x, &c.q, &c.phi, y, a))
        .map(|(y, a)| x.witness(&[("y", y), ("x", a)]));
    rep.record("phi-presheaf", phi);
    let psi = pairs()
        .find(|&(y, a)| !psi_fits(x, &c.q, &c.psi, y, a))
        .map(|(y, a)| x.witness(&[("y", y), ("x", a)]));
    rep.record("psi-presheaf", psi);
    let inf = pair_infimum(x, &c.phi, &c.psi);
    let unit = (inf > c.q)
        .then(|| crate::report::Witness::new().with("infimum", WitnessValue::Value(inf.clone()), inf.to_string()));
    rep.record("unit", unit);
    let q = c.q.finite().expect("finite type").clone();
    let counit = pairs()
        .find(|&(y, a)| {
            let bound = match (&c.phi[y], &c.psi[a]) {
                (ExtValue::Fin(f), ExtValue::Fin(s)) => ExtValue::Fin(f - &q + s),
                _ => ExtValue::Inf,
            };
            *x.p(y, a) > bound
        })
        .map(|(y, a)| x.witness(&[("y", y), ("x", a)]));
    rep.record("counit", counit);
    rep
}

/// `q = lim p(x_n,x_m)`, `φ = lim p(−,x_n)`, `ψ = lim p(x_n,−)`.
pub fn seq_to_cauchy_pair(x: &PartialMetricSpace, s: &SampledSequence<usize>) -> Result<CauchyPair> {
    let v = seq_cauchy(x, s)?;
    let q = match (&v.limits[0].1, v.holds) {
        (Some(q), true) => q.clone(),
        _ => {
            return Err(QcatError::NotCauchy(
                "the distance net does not settle to a finite value".into(),
            ))
        }
    };
    let w = Window::of(&[s]);
    let lim = |f: &dyn Fn(usize) -> ExtValue| {
        w.limit1(f)
            .value
            .ok_or_else(|| QcatError::NotCauchy("a one-sided limit does not settle".into()))
    };
    let phi = x
        .points()
        .map(|y| lim(&|n| x.p(y, *s.get(n)).clone()))
        .collect::<Result<Vec<_>>>()?;
    let psi = x
        .points()
        .map(|y| lim(&|n| x.p(*s.get(n), y).clone()))
        .collect::<Result<Vec<_>>>()?;
    Ok(CauchyPair { q, phi, psi })
}

/// Picks, for `n = 1, …, N`, the first point `z` with
/// `φ(z) − p(z,z) + ψ(z) ≤ q + 1/n`; index `0` repeats index `1`.
pub fn cauchy_pair_to_sequence(
    x: &PartialMetricSpace,
    c: &CauchyPair,
    horizon: usize,
    eps: BigRational,
) -> Result<SampledSequence<usize>> {
    let q =
        c.q.finite()
            .ok_or_else(|| QcatError::InvalidArgument("the pair has infinite type".into()))?
            .clone();
    let pick = |n: usize| {
        let bound = ExtValue::Fin(&q + BigRational::new(BigInt::from(1), BigInt::from(n.max(1))));
        x.points()
            .find(|&z| ExtValue::tri(&c.phi[z], x.typ(z), &c.psi[z]) <= bound)
    };
    let picks = (0..=horizon.max(2))
        .map(pick)
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| QcatError::Precondition("no point comes close to the type of the pair".into()))?;
    let seq = SampledSequence::new(horizon, eps, |n| picks[n])?;
    // Once the pick at the horizon already meets `q` itself, every later pick agrees with it.
    let last = picks[seq.horizon()];
    if ExtValue::tri(&c.phi[last], x.typ(last), &c.psi[last]) <= c.q {
        let n0 = (0..=seq.horizon())
            .rev()
            .take_while(|&n| picks[n] == last)
            .last()
            .unwrap_or(seq.horizon());
        return seq.constant_from(n0);
    }
    Ok(seq)
}
