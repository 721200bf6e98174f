//! The quantaloid `D(Q)` of diagonals, the embedding `I: Q → D(Q)`, the lax
//! projections `J₀`, `J₁`, `K` and a laxity classifier for maps between
//! finite quantaloids.

use std::sync::Arc;

use crate::error::{structural, QcatError, Result};
use crate::properties::is_symmetric;
use crate::quantaloid::{Arrow, FiniteQuantaloid};
use crate::report::{PropertyReport, Witness, WitnessValue};

fn check_endpoints(f: Arrow, g: Arrow, d: Arrow) -> Result<()> {
    if d.src != f.src || d.tgt != g.tgt {
        return Err(QcatError::Endpoint(format!(
            "a diagonal from {}->{} to {}->{} must run {}->{}, got {}->{}",
            f.src, f.tgt, g.src, g.tgt, f.src, g.tgt, d.src, d.tgt
        )));
    }
    Ok(())
}

pub(crate) fn is_diagonal_unchecked(q: &FiniteQuantaloid, f: Arrow, g: Arrow, d: Arrow) -> bool {
    q.compose(g, q.lift(g, d)) == d && q.compose(q.extend(d, f), f) == d
}

/// `g∘(g↘d) = d = (d↙f)∘f`.
pub fn is_diagonal(q: &FiniteQuantaloid, f: Arrow, g: Arrow, d: Arrow) -> Result<bool> {
    check_endpoints(f, g, d)?;
    Ok(is_diagonal_unchecked(q, f, g, d))
}

/// `D(Q)` together with the dictionary between its objects and the arrows of `Q`.
#[derive(Debug, Clone)]
pub struct Diagonals {
    pub base: Arc<FiniteQuantaloid>,
    pub quantaloid: Arc<FiniteQuantaloid>,
    objects: Vec<Arrow>,
    /// `offsets[a * n + b]` is the index of the first `D(Q)`-object in `Q(a,b)`.
    offsets: Vec<usize>,
    /// Per `D(Q)`-hom: position of each `Q`-element among the diagonals, if any.
    position: Vec<Vec<Option<u32>>>,
    /// Per `D(Q)`-hom: the `Q`-elements that are diagonals.
    keep: Vec<Vec<usize>>,
}

pub fn diagonal_object_name(q: &FiniteQuantaloid, f: Arrow) -> String {
    format!("({},{},{})", q.object_name(f.src), q.object_name(f.tgt), q.elem_name(f))
}

impl Diagonals {
    pub fn new(q: impl Into<Arc<FiniteQuantaloid>>) -> Self {
        let base: Arc<FiniteQuantaloid> = q.into();
        let q = &*base;
        let n = q.n_objects();
        let objects = q.arrows();
        let mut offsets = Vec::with_capacity(n * n);
        let mut acc = 0;
        for a in 0..n {
            for b in 0..n {
                offsets.push(acc);
                acc += q.hom(a, b).len();
            }
        }
        let m = objects.len();
        let mut keep = Vec::with_capacity(m * m);
        let mut position = Vec::with_capacity(m * m);
        let mut homs = Vec::with_capacity(m * m);
        for &f in &objects {
            for &g in &objects {
                let ks: Vec<usize> = q
                    .arrows_in(f.src, g.tgt)
                    .filter(|&d| is_diagonal_unchecked(q, f, g, d))
                    .map(|d| d.elem)
                    .collect();
                let mut pos = vec![None; q.hom(f.src, g.tgt).len()];
                for (i, &k) in ks.iter().enumerate() {
                    pos[k] = Some(i as u32);
                }
                homs.push(q.hom(f.src, g.tgt).restrict(&ks));
                keep.push(ks);
                position.push(pos);
            }
        }
        let mut comp = Vec::with_capacity(m * m * m);
        for i in 0..m {
            for j in 0..m {
                let g = objects[j];
                let (ij, jk) = (i * m + j, j);
                for k in 0..m {
                    let jk = jk * m + k;
                    let ik = i * m + k;
                    let mut t = Vec::with_capacity(keep[ij].len() * keep[jk].len());
                    for &e in &keep[jk] {
                        let e = Arrow::new(g.src, objects[k].tgt, e);
                        let left = q.compose(q.extend(e, g), g);
                        for &d in &keep[ij] {
                            let d = Arrow::new(objects[i].src, g.tgt, d);
                            let r = q.compose(left, q.lift(g, d));
                            t.push(position[ik][r.elem].expect("diagonal composite is a diagonal"));
                        }
                    }
                    comp.push(t);
                }
            }
        }
        let ids = (0..m)
            .map(|i| position[i * m + i][objects[i].elem].expect("f is a diagonal f → f") as usize)
            .collect();
        let names = objects.iter().map(|&f| diagonal_object_name(q, f)).collect();
        let mut d =
            FiniteQuantaloid::from_parts(names, homs, comp, ids, None).expect("diagonal tables are well formed");
        if q.has_involution() && is_symmetric(q) {
            if let Some(inv) = d.identity_involution_table() {
                d = d.with_involution(Some(inv)).expect("identity involution fits");
            }
        }
        Diagonals {
            base,
            quantaloid: Arc::new(d),
            objects,
            offsets,
            position,
            keep,
        }
    }

    pub fn d(&self) -> &FiniteQuantaloid {
        &self.quantaloid
    }

    pub fn q(&self) -> &FiniteQuantaloid {
        &self.base
    }

    /// The `D(Q)`-object standing for the `Q`-arrow `f`.
    pub fn object(&self, f: Arrow) -> usize {
        self.offsets[f.src * self.base.n_objects() + f.tgt] + f.elem
    }

    /// The `Q`-arrow underlying a `D(Q)`-object.
    pub fn object_arrow(&self, i: usize) -> Arrow {
        self.objects[i]
    }

    /// The `D(Q)`-arrow `d: f → g`, if `d` is a diagonal from `f` to `g`.
    pub fn arrow(&self, f: Arrow, g: Arrow, d: Arrow) -> Option<Arrow> {
        let (i, j) = (self.object(f), self.object(g));
        if d.src != f.src || d.tgt != g.tgt {
            return None;
        }
        let m = self.objects.len();
        self.position[i * m + j][d.elem].map(|p| Arrow::new(i, j, p as usize))
    }

    /// The `Q`-arrow underlying a `D(Q)`-arrow.
    pub fn underlying(&self, x: Arrow) -> Arrow {
        let m = self.objects.len();
        let (f, g) = (self.objects[x.src], self.objects[x.tgt]);
        Arrow::new(f.src, g.tgt, self.keep[x.src * m + x.tgt][x.elem])
    }

    /// `I: Q → D(Q)`, `A ↦ 1_A`, `(f: A → B) ↦ (f: 1_A → 1_B)`.
    pub fn embed_i(&self) -> LaxFunctor {
        let q = &*self.base;
        let n = q.n_objects();
        let obj_map: Vec<usize> = (0..n).map(|a| self.object(q.id(a))).collect();
        let arr_map = (0..n * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                q.arrows_in(a, b)
                    .map(|f| {
                        self.arrow(q.id(a), q.id(b), f)
                            .expect("every arrow is a diagonal between identities")
                            .elem
                    })
                    .collect()
            })
            .collect();
        LaxFunctor::new_unchecked(self.base.clone(), self.quantaloid.clone(), obj_map, arr_map)
    }

    fn projection(&self, obj: impl Fn(Arrow) -> usize, arr: impl Fn(Arrow, Arrow, Arrow) -> Arrow) -> LaxFunctor {
        let d = &*self.quantaloid;
        let m = d.n_objects();
        let obj_map = self.objects.iter().map(|&f| obj(f)).collect();
        let arr_map = (0..m * m)
            .map(|k| {
                let (f, g) = (self.objects[k / m], self.objects[k % m]);
                d.arrows_in(k / m, k % m)
                    .map(|x| arr(f, g, self.underlying(x)).elem)
                    .collect()
            })
            .collect();
        LaxFunctor::new_unchecked(self.quantaloid.clone(), self.base.clone(), obj_map, arr_map)
    }

    /// `J₀: (d: f → g) ↦ g↘d: dom f → dom g`.
    pub fn project_j0(&self) -> LaxFunctor {
        let q = self.base.clone();
        self.projection(|f| f.src, |_, g, d| q.lift(g, d))
    }

    /// `J₁: (d: f → g) ↦ d↙f: cod f → cod g`.
    pub fn project_j1(&self) -> LaxFunctor {
        let q = self.base.clone();
        self.projection(|f| f.tgt, |f, _, d| q.extend(d, f))
    }

    /// `K: (d: f → g) ↦ (g⊸d)∘(f⊸d)` for a commutative quantale.
    pub fn project_k(&self) -> Result<LaxFunctor> {
        let q = self.base.clone();
        if !q.is_one_object() {
            return Err(QcatError::Precondition("K needs a one-object quantaloid".into()));
        }
        for f in q.arrows_in(0, 0) {
            for g in q.arrows_in(0, 0) {
                if q.compose(g, f) != q.compose(f, g) {
                    return Err(QcatError::Precondition(format!(
                        "not commutative: {} and {}",
                        q.elem_name(f),
                        q.elem_name(g)
                    )));
                }
            }
        }
        Ok(self.projection(|_| 0, |f, g, d| q.compose(q.lift(g, d), q.lift(f, d))))
    }
}

/// A map of finite quantaloids given on objects and, hom by hom, on elements.
#[derive(Debug, Clone)]
pub struct LaxFunctor {
    pub source: Arc<FiniteQuantaloid>,
    pub target: Arc<FiniteQuantaloid>,
    pub obj_map: Vec<usize>,
    /// `arr_map[a * n + b][f]` is the element of `hom(F a, F b)` assigned to `f: a → b`.
    pub arr_map: Vec<Vec<usize>>,
}

impl LaxFunctor {
    pub fn new(
        source: Arc<FiniteQuantaloid>,
        target: Arc<FiniteQuantaloid>,
        obj_map: Vec<usize>,
        arr_map: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let n = source.n_objects();
        if obj_map.len() != n || obj_map.iter().any(|&x| x >= target.n_objects()) {
            return Err(structural("object map is not total into the target"));
        }
        if arr_map.len() != n * n {
            return Err(structural("arrow map has wrong number of hom tables"));
        }
        for a in 0..n {
            for b in 0..n {
                let t = &arr_map[a * n + b];
                let bound = target.hom(obj_map[a], obj_map[b]).len();
                if t.len() != source.hom(a, b).len() {
                    return Err(structural(format!(
                        "arrow map on hom({},{}) is not total",
                        source.object_name(a),
                        source.object_name(b)
                    )));
                }
                if let Some(f) = t.iter().position(|&x| x >= bound) {
                    return Err(structural(format!(
                        "arrow map sends {} outside hom({},{})",
                        source.arrow_name(Arrow::new(a, b, f)),
                        target.object_name(obj_map[a]),
                        target.object_name(obj_map[b])
                    )));
                }
            }
        }
        Ok(Self::new_unchecked(source, target, obj_map, arr_map))
    }

    fn new_unchecked(
        source: Arc<FiniteQuantaloid>,
        target: Arc<FiniteQuantaloid>,
        obj_map: Vec<usize>,
        arr_map: Vec<Vec<usize>>,
    ) -> Self {
        LaxFunctor {
            source,
            target,
            obj_map,
            arr_map,
        }
    }

    /// Identity on a quantaloid.
    pub fn identity(q: Arc<FiniteQuantaloid>) -> Self {
        let n = q.n_objects();
        let arr_map = (0..n * n).map(|k| (0..q.hom(k / n, k % n).len()).collect()).collect();
        Self::new_unchecked(q.clone(), q, (0..n).collect(), arr_map)
    }

    /// A map given by matching element names hom by hom, objects by position.
    pub fn by_names(source: Arc<FiniteQuantaloid>, target: Arc<FiniteQuantaloid>) -> Result<Self> {
        let n = source.n_objects();
        if target.n_objects() != n {
            return Err(structural("object counts differ"));
        }
        let mut arr_map = Vec::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                let (hs, ht) = (source.hom(a, b), target.hom(a, b));
                let t = hs
                    .elements()
                    .map(|f| {
                        ht.find(hs.name(f))
                            .ok_or_else(|| structural(format!("no element {} in target", hs.name(f))))
                    })
                    .collect::<Result<Vec<_>>>()?;
                arr_map.push(t);
            }
        }
        Self::new(source, target, (0..n).collect(), arr_map)
    }

    /// The map `Q → 2` sending an arrow to `1` iff it lies above an identity.
    pub fn order_collapse(q: Arc<FiniteQuantaloid>, two: Arc<FiniteQuantaloid>) -> Result<Self> {
        if !two.is_one_object() || two.hom(0, 0).len() != 2 {
            return Err(structural("order collapse needs the two-element quantale as target"));
        }
        let one = two.id(0).elem;
        let zero = two.bottom(0, 0).elem;
        let n = q.n_objects();
        let arr_map = (0..n * n)
            .map(|k| {
                let (a, b) = (k / n, k % n);
                q.arrows_in(a, b)
                    .map(|f| if a == b && q.leq(q.id(a), f) { one } else { zero })
                    .collect()
            })
            .collect();
        Self::new(q, two, vec![0; n], arr_map)
    }

    pub fn map_object(&self, a: usize) -> usize {
        self.obj_map[a]
    }

    pub fn map_arrow(&self, f: Arrow) -> Arrow {
        let n = self.source.n_objects();
        Arrow::new(
            self.obj_map[f.src],
            self.obj_map[f.tgt],
            self.arr_map[f.src * n + f.tgt][f.elem],
        )
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &LaxFunctor) -> Result<LaxFunctor> {
        if *first.target != *self.source {
            return Err(structural("composed lax functors do not meet"));
        }
        let n = first.source.n_objects();
        let obj_map = first.obj_map.iter().map(|&a| self.obj_map[a]).collect();
        let arr_map = (0..n * n)
            .map(|k| {
                first
                    .source
                    .arrows_in(k / n, k % n)
                    .map(|f| self.map_arrow(first.map_arrow(f)).elem)
                    .collect()
            })
            .collect();
        Ok(Self::new_unchecked(
            first.source.clone(),
            self.target.clone(),
            obj_map,
            arr_map,
        ))
    }

    /// Equal object and arrow maps (sources and targets compared structurally).
    pub fn same_as(&self, other: &LaxFunctor) -> bool {
        *self.source == *other.source
            && *self.target == *other.target
            && self.obj_map == other.obj_map
            && self.arr_map == other.arr_map
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaxityReport {
    pub is_lax: bool,
    pub is_normal: bool,
    pub is_homomorphism: bool,
    pub full_and_faithful: bool,
    pub report: PropertyReport,
}

fn wf(q: &FiniteQuantaloid, w: Witness, role: &str, f: Arrow) -> Witness {
    let (v, t) = q.wa(f);
    w.with(role, v, t)
}

/// Classifies a map of quantaloids: lax (monotone, `Fg∘Ff ≤ F(g∘f)`,
/// `1 ≤ F1`), normal (identities preserved), homomorphism (composition,
/// binary joins and bottoms preserved exactly).
pub fn check_lax_functor(func: &LaxFunctor) -> LaxityReport {
    let s = &*func.source;
    let t = &*func.target;
    let n = s.n_objects();
    let mut rep = PropertyReport::new();

    let mut monotone = None;
    let mut joins = None;
    let mut bottoms = None;
    'homs: for a in 0..n {
        for b in 0..n {
            if bottoms.is_none() && !s.hom(a, b).is_empty() {
                let bot = s.bottom(a, b);
                let fb = func.map_arrow(bot);
                if fb != t.bottom(fb.src, fb.tgt) {
                    bottoms = Some(wf(s, Witness::new(), "f", bot));
                }
            }
            for x in s.arrows_in(a, b) {
                for y in s.arrows_in(a, b) {
                    let (fx, fy) = (func.map_arrow(x), func.map_arrow(y));
                    if monotone.is_none() && s.leq(x, y) && !t.leq(fx, fy) {
                        monotone = Some(wf(s, wf(s, Witness::new(), "x", x), "y", y));
                    }
                    if joins.is_none() && func.map_arrow(s.join(x, y)) != t.join(fx, fy) {
                        joins = Some(wf(s, wf(s, Witness::new(), "x", x), "y", y));
                    }
                    if monotone.is_some() && joins.is_some() {
                        break 'homs;
                    }
                }
            }
        }
    }

    let mut lax_comp = None;
    let mut exact_comp = None;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for f in s.arrows_in(a, b) {
                    for g in s.arrows_in(b, c) {
                        let lhs = t.compose(func.map_arrow(g), func.map_arrow(f));
                        let rhs = func.map_arrow(s.compose(g, f));
                        if lhs != rhs && exact_comp.is_none() {
                            exact_comp = Some(wf(s, wf(s, Witness::new(), "f", f), "g", g));
                        }
                        if !t.leq(lhs, rhs) {
                            lax_comp = Some(wf(s, wf(s, Witness::new(), "f", f), "g", g));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }

    let mut lax_id = None;
    let mut exact_id = None;
    for a in 0..n {
        let fa = func.obj_map[a];
        let image = func.map_arrow(s.id(a));
        if image != t.id(fa) && exact_id.is_none() {
            exact_id = Some(Witness::new().with("object", WitnessValue::Object(a), s.object_name(a)));
        }
        if !t.leq(t.id(fa), image) {
            lax_id = Some(Witness::new().with("object", WitnessValue::Object(a), s.object_name(a)));
            break;
        }
    }

    let mut ff = None;
    for a in 0..n {
        for b in 0..n {
            if ff.is_none() && a < b && func.obj_map[a] == func.obj_map[b] {
                ff = Some(Witness::new().text(
                    "reason",
                    format!("objects {} and {} are identified", s.object_name(a), s.object_name(b)),
                ));
            }
            let ht = t.hom(func.obj_map[a], func.obj_map[b]);
            let hs = s.hom(a, b);
            let map = &func.arr_map[a * n + b];
            let iso = hs.len() == ht.len()
                && hs
                    .elements()
                    .all(|x| hs.elements().all(|y| hs.leq(x, y) == ht.leq(map[x], map[y])));
            if ff.is_none() && !iso {
                ff = Some(Witness::new().text(
                    "reason",
                    format!(
                        "hom({},{}) is not mapped isomorphically",
                        s.object_name(a),
                        s.object_name(b)
                    ),
                ));
            }
        }
    }

    let is_lax = monotone.is_none() && lax_comp.is_none() && lax_id.is_none();
    let is_normal = is_lax && exact_id.is_none();
    let is_homomorphism = is_normal && exact_comp.is_none() && joins.is_none() && bottoms.is_none();
    let full_and_faithful = ff.is_none();
    rep.record("monotone", monotone);
    rep.record("lax-composition", lax_comp);
    rep.record("lax-identity", lax_id);
    rep.record("preserves-identities", exact_id);
    rep.record("preserves-composition", exact_comp);
    rep.record("preserves-joins", joins);
    rep.record("preserves-bottoms", bottoms);
    rep.record("full-and-faithful", ff);
    LaxityReport {
        is_lax,
        is_normal,
        is_homomorphism,
        full_and_faithful,
        report: rep,
    }
}
