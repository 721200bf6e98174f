use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{QcatError, Result};
use crate::quantaloid::Arrow;

use super::category::{EnrichedCategory, EnrichedFunctor};
use super::distributor::{check_adjoint, dist_id, dist_lift, EnrichedDistributor};

/// A presheaf of type `X` on `C`: `φ(x): X → t x` for every object `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Presheaf {
    pub typ: usize,
    pub vals: Vec<usize>,
}

impl Presheaf {
    pub fn get(&self, c: &EnrichedCategory, x: usize) -> Arrow {
        Arrow::new(self.typ, c.typ(x), self.vals[x])
    }

    /// `Y x = C(−, x)`.
    pub fn representable(c: &EnrichedCategory, x: usize) -> Presheaf {
        Presheaf {
            typ: c.typ(x),
            vals: c.objects().map(|y| c.hom(y, x).elem).collect(),
        }
    }

    /// The distributor `1_X ⇸ C`.
    pub fn as_distributor(&self, c: &Arc<EnrichedCategory>) -> EnrichedDistributor {
        let one = Arc::new(EnrichedCategory::one(c.base().clone(), self.typ));
        EnrichedDistributor::new(one, c.clone(), |y, _| self.vals[y]).expect("presheaf fits")
    }

    pub fn name(&self, c: &EnrichedCategory) -> String {
        let q = c.base();
        let vals: Vec<&str> = c.objects().map(|x| q.elem_name(self.get(c, x))).collect();
        format!("{}[{}]", q.object_name(self.typ), vals.join(","))
    }
}

/// `C(y, x)∘φ(x) ≤ φ(y)`.
pub fn is_presheaf(c: &EnrichedCategory, phi: &Presheaf) -> bool {
    let q = c.base();
    phi.vals.len() == c.len()
        && phi.typ < q.n_objects()
        && c.objects().all(|x| phi.vals[x] < q.hom(phi.typ, c.typ(x)).len())
        && c.objects().all(|y| {
            c.objects()
                .all(|x| q.leq(q.compose(c.hom(y, x), phi.get(c, x)), phi.get(c, y)))
        })
}

/// Number of raw candidate vectors over all types.
pub fn presheaf_candidates(c: &EnrichedCategory) -> u128 {
    let q = c.base();
    (0..q.n_objects())
        .map(|t| {
            c.objects()
                .map(|x| q.hom(t, c.typ(x)).len() as u128)
                .fold(1u128, |a, b| a.saturating_mul(b))
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

/// All presheaves on `c`, ordered by type and then lexicographically.
pub fn enumerate_presheaves(c: &EnrichedCategory, bound: u128) -> Result<Vec<Presheaf>> {
    let needed = presheaf_candidates(c);
    if needed > bound {
        return Err(QcatError::BoundExceeded { needed, bound });
    }
    let q = c.base();
    let mut out = Vec::new();
    for t in 0..q.n_objects() {
        let mut vals = Vec::with_capacity(c.len());
        extend(c, t, &mut vals, &mut out);
    }
    Ok(out)
}

fn extend(c: &EnrichedCategory, t: usize, vals: &mut Vec<usize>, out: &mut Vec<Presheaf>) {
    let q = c.base();
    let k = vals.len();
    if k == c.len() {
        out.push(Presheaf {
            typ: t,
            vals: vals.clone(),
        });
        return;
    }
    for v in q.arrows_in(t, c.typ(k)) {
        let fits = (0..k).all(|x| {
            let u = Arrow::new(t, c.typ(x), vals[x]);
            q.leq(q.compose(c.hom(k, x), u), v) && q.leq(q.compose(c.hom(x, k), v), u)
        }) && q.leq(q.compose(c.hom(k, k), v), v);
        if fits {
            vals.push(v.elem);
            extend(c, t, vals, out);
            vals.pop();
        }
    }
}

/// `P C(ψ, φ) = ⋀_z ψ(z)↘φ(z)`, an arrow `t φ → t ψ`.
pub fn presheaf_hom(c: &EnrichedCategory, psi: &Presheaf, phi: &Presheaf) -> Arrow {
    let q = c.base();
    q.meet_iter(
        phi.typ,
        psi.typ,
        c.objects().map(|z| q.lift(psi.get(c, z), phi.get(c, z))),
    )
}

/// A category of presheaves on `source`, with the presheaf behind each object.
#[derive(Debug, Clone)]
pub struct PresheafCategory {
    pub source: Arc<EnrichedCategory>,
    pub category: Arc<EnrichedCategory>,
    pub presheaves: Vec<Presheaf>,
    index: HashMap<Presheaf, usize>,
}

impl PresheafCategory {
    fn build(source: &Arc<EnrichedCategory>, presheaves: Vec<Presheaf>) -> Self {
        let c = &**source;
        let names = presheaves.iter().map(|p| p.name(c)).collect();
        let types = presheaves.iter().map(|p| p.typ).collect();
        let category = EnrichedCategory::new(c.base().clone(), names, types, |i, j| {
            presheaf_hom(c, &presheaves[i], &presheaves[j]).elem
        })
        .expect("presheaf homs fit");
        let index = presheaves.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        PresheafCategory {
            source: source.clone(),
            category: Arc::new(category),
            presheaves,
            index,
        }
    }

    pub fn find(&self, p: &Presheaf) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// `Y: C → P C`, defined when every representable is among the objects.
    pub fn yoneda(&self) -> Result<EnrichedFunctor> {
        let c = &*self.source;
        let map = c
            .objects()
            .map(|x| {
                self.find(&Presheaf::representable(c, x))
                    .ok_or_else(|| QcatError::Precondition("a representable is missing".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        EnrichedFunctor::new(self.source.clone(), self.category.clone(), map)
    }
}

pub fn presheaf_category(c: &Arc<EnrichedCategory>, bound: u128) -> Result<PresheafCategory> {
    let ps = enumerate_presheaves(c, bound)?;
    Ok(PresheafCategory::build(c, ps))
}

/// The only right-adjoint candidate `φ↘id_C: C ⇸ 1_X`.
pub fn right_adjoint_candidate(c: &Arc<EnrichedCategory>, phi: &Presheaf) -> EnrichedDistributor {
    dist_lift(&phi.as_distributor(c), &dist_id(c)).expect("common codomain")
}

/// `φ ⊣ φ↘id_C`.
pub fn is_cauchy_presheaf(c: &Arc<EnrichedCategory>, phi: &Presheaf) -> bool {
    let d = phi.as_distributor(c);
    check_adjoint(&d, &right_adjoint_candidate(c, phi)).expect("opposite directions")
}

/// The full subcategory of `P C` on the Cauchy presheaves.
pub fn cauchy_completion(c: &Arc<EnrichedCategory>, bound: u128) -> Result<PresheafCategory> {
    let ps = enumerate_presheaves(c, bound)?
        .into_iter()
        .filter(|p| is_cauchy_presheaf(c, p))
        .collect();
    Ok(PresheafCategory::build(c, ps))
}

/// Every Cauchy presheaf is representable.
pub fn is_cauchy_complete(c: &Arc<EnrichedCategory>, bound: u128) -> Result<bool> {
    let reps: Vec<Presheaf> = c.objects().map(|x| Presheaf::representable(c, x)).collect();
    Ok(enumerate_presheaves(c, bound)?
        .iter()
        .filter(|p| is_cauchy_presheaf(c, p))
        .all(|p| reps.contains(p)))
}
