use std::sync::Arc;

use crate::error::{structural, QcatError, Result};
use crate::quantaloid::Arrow;
use crate::report::{PropertyReport, Witness};

use super::category::{same_base, EnrichedCategory, EnrichedFunctor};

/// A distributor `Φ: C ⇸ D`; `Φ(y, x): t x → t y` for `x ∈ C`, `y ∈ D`.
#[derive(Debug, Clone, PartialEq)]
pub struct EnrichedDistributor {
    pub dom: Arc<EnrichedCategory>,
    pub cod: Arc<EnrichedCategory>,
    mat: Vec<usize>,
}

impl EnrichedDistributor {
    /// `entry(y, x)` gives the element of `hom(t x, t y)`.
    pub fn new(
        dom: Arc<EnrichedCategory>,
        cod: Arc<EnrichedCategory>,
        entry: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let (n, m) = (dom.len(), cod.len());
        let mat = (0..m * n).map(|k| entry(k / n, k % n)).collect();
        Self::from_table(dom, cod, mat)
    }

    /// Row-major over codomain objects: `mat[y * |dom| + x]`.
    pub fn from_table(dom: Arc<EnrichedCategory>, cod: Arc<EnrichedCategory>, mat: Vec<usize>) -> Result<Self> {
        if !same_base(dom.base(), cod.base()) {
            return Err(QcatError::Precondition("domain and codomain bases differ".into()));
        }
        let (n, m) = (dom.len(), cod.len());
        if mat.len() != n * m {
            return Err(structural("distributor matrix has wrong size"));
        }
        let q = dom.base();
        for y in 0..m {
            for x in 0..n {
                if mat[y * n + x] >= q.hom(dom.typ(x), cod.typ(y)).len() {
                    return Err(structural(format!(
                        "entry ({},{}) lies outside its hom-lattice",
                        cod.name(y),
                        dom.name(x)
                    )));
                }
            }
        }
        Ok(EnrichedDistributor { dom, cod, mat })
    }

    pub fn get(&self, y: usize, x: usize) -> Arrow {
        Arrow::new(self.dom.typ(x), self.cod.typ(y), self.mat[y * self.dom.len() + x])
    }

    pub fn table(&self) -> &[usize] {
        &self.mat
    }

    /// Elementwise `≤`.
    pub fn le(&self, other: &EnrichedDistributor) -> bool {
        let q = self.dom.base();
        self.cod
            .objects()
            .all(|y| self.dom.objects().all(|x| q.leq(self.get(y, x), other.get(y, x))))
    }
}

/// (D1) `D(y', y)∘Φ(y, x) ≤ Φ(y', x)` and (D2) `Φ(y, x)∘C(x, x') ≤ Φ(y, x')`.
pub fn validate_distributor(phi: &EnrichedDistributor) -> PropertyReport {
    let (c, d) = (&*phi.dom, &*phi.cod);
    let q = c.base();
    let mut rep = PropertyReport::new();
    let mut d1 = None;
    'a: for y2 in d.objects() {
        for y in d.objects() {
            for x in c.objects() {
                if !q.leq(q.compose(d.hom(y2, y), phi.get(y, x)), phi.get(y2, x)) {
                    let w = d.witness_points(Witness::new(), &[("y'", y2), ("y", y)]);
                    d1 = Some(c.witness_points(w, &[("x", x)]));
                    break 'a;
                }
            }
        }
    }
    rep.record("D1", d1);
    let mut d2 = None;
    'b: for y in d.objects() {
        for x in c.objects() {
            for x2 in c.objects() {
                if !q.leq(q.compose(phi.get(y, x), c.hom(x, x2)), phi.get(y, x2)) {
                    let w = d.witness_points(Witness::new(), &[("y", y)]);
                    d2 = Some(c.witness_points(w, &[("x", x), ("x'", x2)]));
                    break 'b;
                }
            }
        }
    }
    rep.record("D2", d2);
    rep
}

fn endpoint(msg: &str) -> QcatError {
    QcatError::Endpoint(msg.into())
}

/// `(Ψ⊗Φ)(z, x) = ⋁_y Ψ(z, y)∘Φ(y, x)`.
pub fn dist_compose(psi: &EnrichedDistributor, phi: &EnrichedDistributor) -> Result<EnrichedDistributor> {
    if *phi.cod != *psi.dom {
        return Err(endpoint("codomain of Φ is not the domain of Ψ"));
    }
    let q = phi.dom.base().clone();
    let (c, d, e) = (&phi.dom, &phi.cod, &psi.cod);
    EnrichedDistributor::new(c.clone(), e.clone(), |z, x| {
        q.join_iter(
            c.typ(x),
            e.typ(z),
            d.objects().map(|y| q.compose(psi.get(z, y), phi.get(y, x))),
        )
        .elem
    })
}

/// `id_C(x', x) = C(x', x)`.
pub fn dist_id(c: &Arc<EnrichedCategory>) -> EnrichedDistributor {
    EnrichedDistributor::new(c.clone(), c.clone(), |y, x| c.hom(y, x).elem).expect("hom matrix fits")
}

/// `(Ψ↘Φ)(y, x) = ⋀_z Ψ(z, y)↘Φ(z, x)` for `Ψ: D ⇸ E`, `Φ: C ⇸ E`; result `C ⇸ D`.
pub fn dist_lift(psi: &EnrichedDistributor, phi: &EnrichedDistributor) -> Result<EnrichedDistributor> {
    if *psi.cod != *phi.cod {
        return Err(endpoint("lifting needs a common codomain"));
    }
    let q = phi.dom.base().clone();
    let (c, d, e) = (&phi.dom, &psi.dom, &psi.cod);
    EnrichedDistributor::new(c.clone(), d.clone(), |y, x| {
        q.meet_iter(
            c.typ(x),
            d.typ(y),
            e.objects().map(|z| q.lift(psi.get(z, y), phi.get(z, x))),
        )
        .elem
    })
}

/// `(Ψ↙Φ)(y, x) = ⋀_z Ψ(y, z)↙Φ(x, z)` for `Ψ: C ⇸ D`, `Φ: C ⇸ E`; result `E ⇸ D`.
pub fn dist_ext(psi: &EnrichedDistributor, phi: &EnrichedDistributor) -> Result<EnrichedDistributor> {
    if *psi.dom != *phi.dom {
        return Err(endpoint("extension needs a common domain"));
    }
    let q = phi.dom.base().clone();
    let (c, d, e) = (&psi.dom, &psi.cod, &phi.cod);
    EnrichedDistributor::new(e.clone(), d.clone(), |y, x| {
        q.meet_iter(
            e.typ(x),
            d.typ(y),
            c.objects().map(|z| q.extend(psi.get(y, z), phi.get(x, z))),
        )
        .elem
    })
}

/// `F_*(b, a) = B(b, F a)` and `F^*(a, b) = B(F a, b)`.
pub fn graph_cograph(f: &EnrichedFunctor) -> (EnrichedDistributor, EnrichedDistributor) {
    let (a, b) = (&f.dom, &f.cod);
    let lower = EnrichedDistributor::new(a.clone(), b.clone(), |y, x| b.hom(y, f.map[x]).elem).expect("graph fits");
    let upper = EnrichedDistributor::new(b.clone(), a.clone(), |x, y| b.hom(f.map[x], y).elem).expect("cograph fits");
    (lower, upper)
}

/// `Φ ⊣ Ψ`: `id_C ≤ Ψ⊗Φ` and `Φ⊗Ψ ≤ id_D`, for `Φ: C ⇸ D`, `Ψ: D ⇸ C`.
pub fn check_adjoint(phi: &EnrichedDistributor, psi: &EnrichedDistributor) -> Result<bool> {
    Ok(adjunction_report(phi, psi)?.ok())
}

/// Unit and counit inequalities with witnesses.
pub fn adjunction_report(phi: &EnrichedDistributor, psi: &EnrichedDistributor) -> Result<PropertyReport> {
    if *phi.cod != *psi.dom || *psi.cod != *phi.dom {
        return Err(endpoint("adjoint candidates must run in opposite directions"));
    }
    let q = phi.dom.base().clone();
    let unit = dist_compose(psi, phi)?;
    let counit = dist_compose(phi, psi)?;
    let (c, d) = (&phi.dom, &phi.cod);
    let mut rep = PropertyReport::new();
    let u = c
        .objects()
        .flat_map(|y| c.objects().map(move |x| (y, x)))
        .find(|&(y, x)| !q.leq(c.hom(y, x), unit.get(y, x)))
        .map(|(y, x)| c.witness_points(Witness::new(), &[("y", y), ("x", x)]));
    rep.record("unit", u);
    let k = d
        .objects()
        .flat_map(|y| d.objects().map(move |x| (y, x)))
        .find(|&(y, x)| !q.leq(counit.get(y, x), d.hom(y, x)))
        .map(|(y, x)| d.witness_points(Witness::new(), &[("y", y), ("x", x)]));
    rep.record("counit", k);
    Ok(rep)
}

/// `F ≤ G` iff `F_* ≤ G_*`.
pub fn functor_le(f: &EnrichedFunctor, g: &EnrichedFunctor) -> Result<bool> {
    if *f.dom != *g.dom || *f.cod != *g.cod {
        return Err(QcatError::Precondition("functors are not parallel".into()));
    }
    Ok(graph_cograph(f).0.le(&graph_cograph(g).0))
}

/// `F ≅ G` iff `F ≤ G ≤ F`.
pub fn functor_iso(f: &EnrichedFunctor, g: &EnrichedFunctor) -> Result<bool> {
    Ok(functor_le(f, g)? && functor_le(g, f)?)
}
