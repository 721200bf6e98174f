//! Finite quantaloids as explicit tables.
//!
//! Objects are indices `0..n`; the hom-lattice `hom(a, b)` holds arrows `a → b`.
//! Composition tables are indexed by the triple `(a, b, c)` and map
//! `(g: b → c, f: a → b)` to `g ∘ f: a → c`. Liftings and extensions are
//! computed on demand per triple and cached.

use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{structural, QcatError, Result};
use crate::lattice::{HomLattice, LatticeDefect};
use crate::report::{PropertyReport, Witness, WitnessValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Arrow {
    pub src: usize,
    pub tgt: usize,
    pub elem: usize,
}

impl Arrow {
    pub fn new(src: usize, tgt: usize, elem: usize) -> Self {
        Arrow { src, tgt, elem }
    }
}

pub struct FiniteQuantaloid {
    objects: Vec<String>,
    obj_index: HashMap<String, usize>,
    homs: Vec<HomLattice>,
    comp: Vec<Vec<u32>>,
    ids: Vec<usize>,
    inv: Option<Vec<Vec<u32>>>,
    lift_cache: Vec<OnceLock<Vec<u32>>>,
    ext_cache: Vec<OnceLock<Vec<u32>>>,
}

impl Clone for FiniteQuantaloid {
    fn clone(&self) -> Self {
        FiniteQuantaloid::assemble(
            self.objects.clone(),
            self.homs.clone(),
            self.comp.clone(),
            self.ids.clone(),
            self.inv.clone(),
        )
    }
}

impl PartialEq for FiniteQuantaloid {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.homs == other.homs
            && self.comp == other.comp
            && self.ids == other.ids
            && self.inv == other.inv
    }
}

impl Eq for FiniteQuantaloid {}

impl fmt::Debug for FiniteQuantaloid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuantaloid")
            .field("objects", &self.objects)
            .field("homs", &self.homs.iter().map(|h| h.names()).collect::<Vec<_>>())
            .field("involutive", &self.inv.is_some())
            .finish()
    }
}

impl FiniteQuantaloid {
    /// Builds a quantaloid from raw tables, checking sizes and index ranges.
    ///
    /// * `homs[a * n + b]` is the lattice of arrows `a → b`;
    /// * `comp[(a * n + b) * n + c][g * |hom(a,b)| + f]` is `g ∘ f`;
    /// * `ids[a]` is the identity element of `hom(a, a)`;
    /// * `inv[a * n + b][f]` is `fᵒ ∈ hom(b, a)`.
    pub fn from_parts(
        objects: Vec<String>,
        homs: Vec<HomLattice>,
        comp: Vec<Vec<u32>>,
        ids: Vec<usize>,
        inv: Option<Vec<Vec<u32>>>,
    ) -> Result<Self> {
        let n = objects.len();
        let mut seen = HashMap::new();
        for (i, o) in objects.iter().enumerate() {
            if seen.insert(o.clone(), i).is_some() {
                return Err(structural(format!("duplicate object {o}")));
            }
        }
        if homs.len() != n * n {
            return Err(structural(format!("expected {} hom-sets, got {}", n * n, homs.len())));
        }
        if comp.len() != n * n * n {
            return Err(structural(format!(
                "expected {} composition tables, got {}",
                n * n * n,
                comp.len()
            )));
        }
        if ids.len() != n {
            return Err(structural("identity list has wrong length"));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let t = &comp[(a * n + b) * n + c];
                    let want = homs[b * n + c].len() * homs[a * n + b].len();
                    if t.len() != want {
                        return Err(structural(format!(
                            "composition table {}-{}-{} has {} entries, expected {want}",
                            objects[a],
                            objects[b],
                            objects[c],
                            t.len()
                        )));
                    }
                    let bound = homs[a * n + c].len() as u32;
                    if let Some(k) = t.iter().position(|&x| x >= bound) {
                        return Err(structural(format!(
                            "composition table {}-{}-{} entry {k} lies outside hom({},{})",
                            objects[a], objects[b], objects[c], objects[a], objects[c]
                        )));
                    }
                }
            }
            if ids[a] >= homs[a * n + a].len() {
                return Err(structural(format!(
                    "identity of {} lies outside its hom-set",
                    objects[a]
                )));
            }
        }
        if let Some(inv) = &inv {
            if inv.len() != n * n {
                return Err(structural("involution has wrong number of tables"));
            }
            for a in 0..n {
                for b in 0..n {
                    let t = &inv[a * n + b];
                    if t.len() != homs[a * n + b].len() || t.iter().any(|&x| x as usize >= homs[b * n + a].len()) {
                        return Err(structural(format!(
                            "involution table {}-{} is malformed",
                            objects[a], objects[b]
                        )));
                    }
                }
            }
        }
        Ok(Self::assemble(objects, homs, comp, ids, inv))
    }

    /// Builds from closures: `comp(a, b, c, g, f) = g ∘ f`, `inv(a, b, f) = fᵒ`.
    pub fn from_fn(
        objects: Vec<String>,
        hom: impl Fn(usize, usize) -> HomLattice,
        comp: impl Fn(usize, usize, usize, usize, usize) -> usize,
        ids: impl Fn(usize) -> usize,
        inv: Option<&dyn Fn(usize, usize, usize) -> usize>,
    ) -> Result<Self> {
        let n = objects.len();
        let homs: Vec<HomLattice> = (0..n * n).map(|k| hom(k / n, k % n)).collect();
        let mut tables = Vec::with_capacity(n * n * n);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let (ab, bc) = (homs[a * n + b].len(), homs[b * n + c].len());
                    let mut t = Vec::with_capacity(ab * bc);
                    for g in 0..bc {
                        for f in 0..ab {
                            t.push(comp(a, b, c, g, f) as u32);
                        }
                    }
                    tables.push(t);
                }
            }
        }
        let ids = (0..n).map(ids).collect();
        let inv = inv.map(|inv| {
            (0..n * n)
                .map(|k| (0..homs[k].len()).map(|f| inv(k / n, k % n, f) as u32).collect())
                .collect()
        });
        Self::from_parts(objects, homs, tables, ids, inv)
    }

    fn assemble(
        objects: Vec<String>,
        homs: Vec<HomLattice>,
        comp: Vec<Vec<u32>>,
        ids: Vec<usize>,
        inv: Option<Vec<Vec<u32>>>,
    ) -> Self {
        let n = objects.len();
        let obj_index = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        FiniteQuantaloid {
            objects,
            obj_index,
            homs,
            comp,
            ids,
            inv,
            lift_cache: (0..n * n * n).map(|_| OnceLock::new()).collect(),
            ext_cache: (0..n * n * n).map(|_| OnceLock::new()).collect(),
        }
    }

    pub fn n_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn object_name(&self, a: usize) -> &str {
        &self.objects[a]
    }

    pub fn find_object(&self, name: &str) -> Option<usize> {
        self.obj_index.get(name).copied()
    }

    pub fn hom(&self, a: usize, b: usize) -> &HomLattice {
        &self.homs[a * self.n_objects() + b]
    }

    pub fn has_involution(&self) -> bool {
        self.inv.is_some()
    }

    /// Raw composition table for `(a, b, c)`.
    pub fn comp_table(&self, a: usize, b: usize, c: usize) -> &[u32] {
        let n = self.n_objects();
        &self.comp[(a * n + b) * n + c]
    }

    pub fn id(&self, a: usize) -> Arrow {
        Arrow::new(a, a, self.ids[a])
    }

    pub fn arrow(&self, src: usize, tgt: usize, elem_name: &str) -> Option<Arrow> {
        self.hom(src, tgt).find(elem_name).map(|e| Arrow::new(src, tgt, e))
    }

    pub fn arrows_in(&self, a: usize, b: usize) -> impl Iterator<Item = Arrow> {
        (0..self.hom(a, b).len()).map(move |e| Arrow::new(a, b, e))
    }

    /// All arrows, ordered by `(src, tgt, elem)`.
    pub fn arrows(&self) -> Vec<Arrow> {
        let n = self.n_objects();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                out.extend(self.arrows_in(a, b));
            }
        }
        out
    }

    pub fn elem_name(&self, f: Arrow) -> &str {
        self.hom(f.src, f.tgt).name(f.elem)
    }

    pub fn arrow_name(&self, f: Arrow) -> String {
        format!("{}:{}->{}", self.elem_name(f), self.objects[f.src], self.objects[f.tgt])
    }

    pub(crate) fn wa(&self, f: Arrow) -> (WitnessValue, String) {
        (WitnessValue::Arrow(f), self.arrow_name(f))
    }

    pub fn bottom(&self, a: usize, b: usize) -> Arrow {
        Arrow::new(a, b, self.hom(a, b).bottom())
    }

    pub fn top(&self, a: usize, b: usize) -> Arrow {
        Arrow::new(a, b, self.hom(a, b).top())
    }

    fn parallel(&self, f: Arrow, g: Arrow) {
        assert!(
            f.src == g.src && f.tgt == g.tgt,
            "arrows {} and {} are not parallel",
            self.arrow_name(f),
            self.arrow_name(g)
        );
    }

    pub fn leq(&self, f: Arrow, g: Arrow) -> bool {
        self.parallel(f, g);
        self.hom(f.src, f.tgt).leq(f.elem, g.elem)
    }

    pub fn join(&self, f: Arrow, g: Arrow) -> Arrow {
        self.parallel(f, g);
        Arrow::new(f.src, f.tgt, self.hom(f.src, f.tgt).join(f.elem, g.elem))
    }

    pub fn meet(&self, f: Arrow, g: Arrow) -> Arrow {
        self.parallel(f, g);
        Arrow::new(f.src, f.tgt, self.hom(f.src, f.tgt).meet(f.elem, g.elem))
    }

    /// Join of a set of arrows in `hom(a, b)`; the empty join is the bottom.
    pub fn join_set(&self, a: usize, b: usize, set: &[Arrow]) -> Result<Arrow> {
        self.check_members(a, b, set)?;
        let h = self.hom(a, b);
        Ok(Arrow::new(a, b, h.join_all(set.iter().map(|f| f.elem))))
    }

    /// Meet of a set of arrows in `hom(a, b)`; the empty meet is the top.
    pub fn meet_set(&self, a: usize, b: usize, set: &[Arrow]) -> Result<Arrow> {
        self.check_members(a, b, set)?;
        let h = self.hom(a, b);
        Ok(Arrow::new(a, b, h.meet_all(set.iter().map(|f| f.elem))))
    }

    fn check_members(&self, a: usize, b: usize, set: &[Arrow]) -> Result<()> {
        let len = self.hom(a, b).len();
        match set.iter().find(|f| f.src != a || f.tgt != b || f.elem >= len) {
            Some(f) => Err(QcatError::Endpoint(format!(
                "{f:?} is not an element of hom({},{})",
                self.objects[a], self.objects[b]
            ))),
            None => Ok(()),
        }
    }

    /// Iterated join of arrows known to lie in `hom(a, b)`.
    pub fn join_iter(&self, a: usize, b: usize, it: impl IntoIterator<Item = Arrow>) -> Arrow {
        let h = self.hom(a, b);
        Arrow::new(a, b, h.join_all(it.into_iter().map(|f| f.elem)))
    }

    /// Iterated meet of arrows known to lie in `hom(a, b)`.
    pub fn meet_iter(&self, a: usize, b: usize, it: impl IntoIterator<Item = Arrow>) -> Arrow {
        let h = self.hom(a, b);
        Arrow::new(a, b, h.meet_all(it.into_iter().map(|f| f.elem)))
    }

    /// `g ∘ f`; panics unless `tgt f = src g`.
    pub fn compose(&self, g: Arrow, f: Arrow) -> Arrow {
        assert_eq!(f.tgt, g.src, "composing non-composable arrows");
        let (a, b, c) = (f.src, f.tgt, g.tgt);
        let ab = self.hom(a, b).len();
        Arrow::new(a, c, self.comp_table(a, b, c)[g.elem * ab + f.elem] as usize)
    }

    pub fn try_compose(&self, g: Arrow, f: Arrow) -> Result<Arrow> {
        if f.tgt != g.src {
            return Err(QcatError::Endpoint(format!(
                "cannot compose {} after {}",
                self.arrow_name(g),
                self.arrow_name(f)
            )));
        }
        Ok(self.compose(g, f))
    }

    /// The lifting `g↘d = ⋁{x | g∘x ≤ d}` for `g: B → C`, `d: A → C`; panics on mismatch.
    pub fn lift(&self, g: Arrow, d: Arrow) -> Arrow {
        assert_eq!(g.tgt, d.tgt, "lifting needs a common codomain");
        let (a, b, c) = (d.src, g.src, g.tgt);
        let n = self.n_objects();
        let table = self.lift_cache[(a * n + b) * n + c].get_or_init(|| {
            let (hab, hbc, hac) = (self.hom(a, b), self.hom(b, c), self.hom(a, c));
            let t = self.comp_table(a, b, c);
            let mut out = Vec::with_capacity(hbc.len() * hac.len());
            for gg in hbc.elements() {
                for dd in hac.elements() {
                    let sols = hab.elements().filter(|&x| hac.leq(t[gg * hab.len() + x] as usize, dd));
                    out.push(hab.join_all(sols) as u32);
                }
            }
            out
        });
        Arrow::new(a, b, table[g.elem * self.hom(a, c).len() + d.elem] as usize)
    }

    /// The extension `d↙f = ⋁{y | y∘f ≤ d}` for `f: A → B`, `d: A → C`; panics on mismatch.
    pub fn extend(&self, d: Arrow, f: Arrow) -> Arrow {
        assert_eq!(f.src, d.src, "extension needs a common domain");
        let (a, b, c) = (f.src, f.tgt, d.tgt);
        let n = self.n_objects();
        let table = self.ext_cache[(a * n + b) * n + c].get_or_init(|| {
            let (hab, hbc, hac) = (self.hom(a, b), self.hom(b, c), self.hom(a, c));
            let t = self.comp_table(a, b, c);
            let mut out = Vec::with_capacity(hab.len() * hac.len());
            for ff in hab.elements() {
                for dd in hac.elements() {
                    let sols = hbc.elements().filter(|&y| hac.leq(t[y * hab.len() + ff] as usize, dd));
                    out.push(hbc.join_all(sols) as u32);
                }
            }
            out
        });
        Arrow::new(b, c, table[f.elem * self.hom(a, c).len() + d.elem] as usize)
    }

    pub fn lifting(&self, g: Arrow, d: Arrow) -> Result<Arrow> {
        if g.tgt != d.tgt {
            return Err(QcatError::Endpoint(format!(
                "lifting {} through {}: codomains differ",
                self.arrow_name(d),
                self.arrow_name(g)
            )));
        }
        Ok(self.lift(g, d))
    }

    pub fn extension(&self, f: Arrow, d: Arrow) -> Result<Arrow> {
        if f.src != d.src {
            return Err(QcatError::Endpoint(format!(
                "extending {} through {}: domains differ",
                self.arrow_name(d),
                self.arrow_name(f)
            )));
        }
        Ok(self.extend(d, f))
    }

    pub fn involute(&self, f: Arrow) -> Option<Arrow> {
        let n = self.n_objects();
        self.inv
            .as_ref()
            .map(|inv| Arrow::new(f.tgt, f.src, inv[f.src * n + f.tgt][f.elem] as usize))
    }

    pub fn involution_table(&self) -> Option<&[Vec<u32>]> {
        self.inv.as_deref()
    }

    /// Replaces (or removes) the involution.
    pub fn with_involution(self, inv: Option<Vec<Vec<u32>>>) -> Result<Self> {
        Self::from_parts(self.objects, self.homs, self.comp, self.ids, inv)
    }

    /// The identity-on-elements involution, available when `hom(a,b)` and
    /// `hom(b,a)` carry the same element names in the same order.
    pub fn identity_involution_table(&self) -> Option<Vec<Vec<u32>>> {
        let n = self.n_objects();
        let mut out = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                if self.hom(a, b) != self.hom(b, a) {
                    return None;
                }
                out.push((0..self.hom(a, b).len() as u32).collect());
            }
        }
        Some(out)
    }

    /// The full sub-quantaloid on the given objects (in the given order).
    pub fn full_sub(&self, keep: &[usize]) -> FiniteQuantaloid {
        let objects: Vec<String> = keep.iter().map(|&a| self.objects[a].clone()).collect();
        let m = keep.len();
        let n = self.n_objects();
        let homs = (0..m * m).map(|k| self.hom(keep[k / m], keep[k % m]).clone()).collect();
        let mut comp = Vec::with_capacity(m * m * m);
        for &a in keep {
            for &b in keep {
                for &c in keep {
                    comp.push(self.comp_table(a, b, c).to_vec());
                }
            }
        }
        let ids = keep.iter().map(|&a| self.ids[a]).collect();
        let inv = self
            .inv
            .as_ref()
            .map(|inv| (0..m * m).map(|k| inv[keep[k / m] * n + keep[k % m]].clone()).collect());
        Self::assemble(objects, homs, comp, ids, inv)
    }

    pub fn is_one_object(&self) -> bool {
        self.n_objects() == 1
    }
}

fn defect_text(q: &FiniteQuantaloid, a: usize, b: usize, d: &LatticeDefect) -> String {
    let h = q.hom(a, b);
    let hom = format!("hom({},{})", q.object_name(a), q.object_name(b));
    match d {
        LatticeDefect::NotReflexive(x) => format!("{hom}: {} ≰ itself", h.name(*x)),
        LatticeDefect::NotAntisymmetric(x, y) => {
            format!("{hom}: {} ≤ {} ≤ {}", h.name(*x), h.name(*y), h.name(*x))
        }
        LatticeDefect::NotTransitive(x, y, z) => format!(
            "{hom}: {} ≤ {} ≤ {} but not {} ≤ {}",
            h.name(*x),
            h.name(*y),
            h.name(*z),
            h.name(*x),
            h.name(*z)
        ),
        LatticeDefect::NoBottom => format!("{hom}: no bottom element"),
        LatticeDefect::NoJoin(x, y) => {
            format!("{hom}: {} and {} have no join", h.name(*x), h.name(*y))
        }
        LatticeDefect::Empty => format!("{hom}: empty"),
    }
}

/// Law-by-law verdicts: order, lattice, category and join-continuity laws,
/// plus involution laws when an involution is present.
pub fn validate_quantaloid(q: &FiniteQuantaloid) -> PropertyReport {
    let n = q.n_objects();
    let mut rep = PropertyReport::new();
    let homs: Vec<(usize, usize)> = (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).collect();

    let poset = homs.iter().find_map(|&(a, b)| match q.hom(a, b).defect() {
        Some(
            d @ (LatticeDefect::NotReflexive(_)
            | LatticeDefect::NotAntisymmetric(..)
            | LatticeDefect::NotTransitive(..)),
        ) => Some(Witness::new().text("defect", defect_text(q, a, b, &d))),
        _ => None,
    });
    rep.record("poset", poset);
    let lattice = homs.iter().find_map(|&(a, b)| {
        q.hom(a, b)
            .defect()
            .map(|d| Witness::new().text("defect", defect_text(q, a, b, &d)))
    });
    let is_lattice = lattice.is_none();
    rep.record("lattice", lattice);

    let triples = || (0..n).flat_map(move |a| (0..n).flat_map(move |b| (0..n).map(move |c| (a, b, c))));

    // identity laws
    let ident = homs.iter().find_map(|&(a, b)| {
        q.arrows_in(a, b).find_map(|f| {
            let l = q.compose(q.id(b), f);
            let r = q.compose(f, q.id(a));
            (l != f || r != f).then(|| {
                let (v, t) = q.wa(f);
                Witness::new().with("f", v, t)
            })
        })
    });
    rep.record("identity-laws", ident);

    let mut assoc = None;
    'outer: for (a, b, c) in triples() {
        for d in 0..n {
            for f in q.arrows_in(a, b) {
                for g in q.arrows_in(b, c) {
                    let gf = q.compose(g, f);
                    for h in q.arrows_in(c, d) {
                        if q.compose(q.compose(h, g), f) != q.compose(h, gf) {
                            let w = [("f", f), ("g", g), ("h", h)]
                                .iter()
                                .fold(Witness::new(), |w, &(r, x)| {
                                    let (v, t) = q.wa(x);
                                    w.with(r, v, t)
                                });
                            assoc = Some(w);
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    rep.record("associativity", assoc);

    let pair_witness = |g: Arrow, f: Arrow, f2: Arrow, side: &str| {
        let (vg, tg) = q.wa(g);
        let (v1, t1) = q.wa(f);
        let (v2, t2) = q.wa(f2);
        Witness::new()
            .with("fixed", vg, tg)
            .with("x", v1, t1)
            .with("y", v2, t2)
            .text("side", side)
    };

    let mut mono = None;
    'mono: for (a, b, c) in triples() {
        let (hab, hbc) = (q.hom(a, b), q.hom(b, c));
        for g in q.arrows_in(b, c) {
            for f in q.arrows_in(a, b) {
                for f2 in q.arrows_in(a, b) {
                    if hab.leq(f.elem, f2.elem) && !q.leq(q.compose(g, f), q.compose(g, f2)) {
                        mono = Some(pair_witness(g, f, f2, "right"));
                        break 'mono;
                    }
                }
            }
        }
        for f in q.arrows_in(a, b) {
            for g in q.arrows_in(b, c) {
                for g2 in q.arrows_in(b, c) {
                    if hbc.leq(g.elem, g2.elem) && !q.leq(q.compose(g, f), q.compose(g2, f)) {
                        mono = Some(pair_witness(f, g, g2, "left"));
                        break 'mono;
                    }
                }
            }
        }
    }
    rep.record("monotone", mono);

    if is_lattice {
        let mut joins = None;
        'join: for (a, b, c) in triples() {
            for g in q.arrows_in(b, c) {
                for f in q.arrows_in(a, b) {
                    for f2 in q.arrows_in(a, b) {
                        let l = q.compose(g, q.join(f, f2));
                        let r = q.join(q.compose(g, f), q.compose(g, f2));
                        if l != r {
                            joins = Some(pair_witness(g, f, f2, "right"));
                            break 'join;
                        }
                    }
                }
            }
            for f in q.arrows_in(a, b) {
                for g in q.arrows_in(b, c) {
                    for g2 in q.arrows_in(b, c) {
                        let l = q.compose(q.join(g, g2), f);
                        let r = q.join(q.compose(g, f), q.compose(g2, f));
                        if l != r {
                            joins = Some(pair_witness(f, g, g2, "left"));
                            break 'join;
                        }
                    }
                }
            }
        }
        rep.record("join-preserving", joins);

        let bottoms = triples().find_map(|(a, b, c)| {
            let fb = q.bottom(a, b);
            let gb = q.bottom(b, c);
            let hit = q
                .arrows_in(b, c)
                .find(|&g| q.compose(g, fb) != q.bottom(a, c))
                .map(|g| (g, fb))
                .or_else(|| {
                    q.arrows_in(a, b)
                        .find(|&f| q.compose(gb, f) != q.bottom(a, c))
                        .map(|f| (gb, f))
                });
            hit.map(|(g, f)| {
                let (vg, tg) = q.wa(g);
                let (vf, tf) = q.wa(f);
                Witness::new().with("g", vg, tg).with("f", vf, tf)
            })
        });
        rep.record("bottom-preserving", bottoms);
    }

    if q.has_involution() {
        let inv = |f| q.involute(f).expect("checked");
        let one = |f: Arrow| {
            let (v, t) = q.wa(f);
            Witness::new().with("f", v, t)
        };
        let mono = homs.iter().find_map(|&(a, b)| {
            let h = q.hom(a, b);
            q.arrows_in(a, b).find_map(|f| {
                q.arrows_in(a, b)
                    .find(|&g| h.leq(f.elem, g.elem) && !q.leq(inv(f), inv(g)))
                    .map(|g| {
                        let (vg, tg) = q.wa(g);
                        one(f).with("g", vg, tg)
                    })
            })
        });
        rep.record("involution-monotone", mono);
        let invol = homs
            .iter()
            .find_map(|&(a, b)| q.arrows_in(a, b).find(|&f| inv(inv(f)) != f).map(one));
        rep.record("involution-involutive", invol);
        let anti = triples().find_map(|(a, b, c)| {
            q.arrows_in(a, b).find_map(|f| {
                q.arrows_in(b, c)
                    .find(|&g| inv(q.compose(g, f)) != q.compose(inv(f), inv(g)))
                    .map(|g| {
                        let (vg, tg) = q.wa(g);
                        one(f).with("g", vg, tg)
                    })
            })
        });
        rep.record("involution-reverses-composition", anti);
    }
    rep
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l3() -> FiniteQuantaloid {
        let names: Vec<String> = (0..3).map(|i| i.to_string()).collect();
        FiniteQuantaloid::from_fn(
            vec!["*".into()],
            |_, _| HomLattice::from_fn(names.clone(), |i, j| i >= j),
            |_, _, _, g, f| (g + f).min(2),
            |_| 0,
            None,
        )
        .unwrap()
    }

    #[test]
    fn l3_lifting_values() {
        let q = l3();
        let a = |e| Arrow::new(0, 0, e);
        assert_eq!(q.lift(a(1), a(2)), a(1));
        assert_eq!(q.lift(a(2), a(1)), a(0));
        assert_eq!(q.extend(a(2), a(1)), a(1));
        assert!(validate_quantaloid(&q).ok());
    }

    #[test]
    fn malformed_tables_are_structural() {
        let h = HomLattice::chain(["0", "1"]);
        let err = FiniteQuantaloid::from_parts(vec!["*".into()], vec![h], vec![vec![0, 0, 0]], vec![1], None);
        assert!(matches!(err, Err(QcatError::Structural(_))));
        let h = HomLattice::chain(["0", "1"]);
        let err = FiniteQuantaloid::from_parts(vec!["*".into()], vec![h], vec![vec![0, 0, 0, 7]], vec![1], None);
        assert!(matches!(err, Err(QcatError::Structural(_))));
    }

    #[test]
    fn join_and_meet_sets() {
        let q = l3();
        let a = |e| Arrow::new(0, 0, e);
        assert_eq!(q.join_set(0, 0, &[a(1), a(2)]).unwrap(), a(1));
        assert_eq!(q.meet_set(0, 0, &[a(0), a(1)]).unwrap(), a(1));
        assert_eq!(q.join_set(0, 0, &[]).unwrap(), a(2));
        assert_eq!(q.meet_set(0, 0, &[]).unwrap(), a(0));
        assert!(q.join_set(0, 0, &[a(5)]).is_err());
    }
}
