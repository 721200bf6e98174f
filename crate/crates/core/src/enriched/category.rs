use std::collections::HashMap;
use std::sync::Arc;

use crate::diagonals::LaxFunctor;
use crate::error::{structural, QcatError, Result};
use crate::quantaloid::{Arrow, FiniteQuantaloid};
use crate::report::{PropertyReport, Witness, WitnessValue};

pub(crate) fn same_base(a: &Arc<FiniteQuantaloid>, b: &Arc<FiniteQuantaloid>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A category enriched in a finite quantaloid. `hom(x, y)` is an arrow `t y → t x`.
#[derive(Debug, Clone)]
pub struct EnrichedCategory {
    base: Arc<FiniteQuantaloid>,
    names: Vec<String>,
    index: HashMap<String, usize>,
    types: Vec<usize>,
    homs: Vec<usize>,
}

impl PartialEq for EnrichedCategory {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
            && self.types == other.types
            && self.homs == other.homs
            && same_base(&self.base, &other.base)
    }
}

impl EnrichedCategory {
    /// `hom(x, y)` gives the element of `base.hom(t y, t x)` for `C(x, y)`.
    pub fn new(
        base: Arc<FiniteQuantaloid>,
        names: Vec<String>,
        types: Vec<usize>,
        hom: impl Fn(usize, usize) -> usize,
    ) -> Result<Self> {
        let n = names.len();
        let homs = (0..n * n).map(|k| hom(k / n, k % n)).collect();
        Self::from_table(base, names, types, homs)
    }

    /// Row-major `homs[x * n + y]` for `C(x, y)`.
    pub fn from_table(
        base: Arc<FiniteQuantaloid>,
        names: Vec<String>,
        types: Vec<usize>,
        homs: Vec<usize>,
    ) -> Result<Self> {
        let n = names.len();
        if types.len() != n {
            return Err(structural("type list has wrong length"));
        }
        if homs.len() != n * n {
            return Err(structural("hom table has wrong size"));
        }
        let mut index = HashMap::new();
        for (i, s) in names.iter().enumerate() {
            if index.insert(s.clone(), i).is_some() {
                return Err(structural(format!("duplicate object {s}")));
            }
        }
        if let Some(x) = types.iter().position(|&t| t >= base.n_objects()) {
            return Err(structural(format!("object {} has an unknown type", names[x])));
        }
        for x in 0..n {
            for y in 0..n {
                if homs[x * n + y] >= base.hom(types[y], types[x]).len() {
                    return Err(structural(format!(
                        "C({},{}) lies outside hom({},{})",
                        names[x],
                        names[y],
                        base.object_name(types[y]),
                        base.object_name(types[x])
                    )));
                }
            }
        }
        Ok(EnrichedCategory {
            base,
            names,
            index,
            types,
            homs,
        })
    }

    /// Builds from arrows, checking that `C(x, y)` runs `t y → t x`.
    pub fn from_arrows(
        base: Arc<FiniteQuantaloid>,
        names: Vec<String>,
        types: Vec<usize>,
        hom: impl Fn(usize, usize) -> Arrow,
    ) -> Result<Self> {
        let n = names.len();
        let mut homs = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                let a = hom(x, y);
                if types.get(x) != Some(&a.tgt) || types.get(y) != Some(&a.src) {
                    return Err(QcatError::Endpoint(format!(
                        "C({},{}) must run from the type of {} to the type of {}",
                        names[x], names[y], names[y], names[x]
                    )));
                }
                homs.push(a.elem);
            }
        }
        Self::from_table(base, names, types, homs)
    }

    /// The one-object category `1_X`.
    pub fn one(base: Arc<FiniteQuantaloid>, x: usize) -> Self {
        let id = base.id(x).elem;
        Self::from_table(base, vec!["*".into()], vec![x], vec![id]).expect("1_X is well formed")
    }

    pub fn base(&self) -> &Arc<FiniteQuantaloid> {
        &self.base
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
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

    pub fn typ(&self, x: usize) -> usize {
        self.types[x]
    }

    pub fn types(&self) -> &[usize] {
        &self.types
    }

    pub fn hom_table(&self) -> &[usize] {
        &self.homs
    }

    /// `C(x, y): t y → t x`.
    pub fn hom(&self, x: usize, y: usize) -> Arrow {
        Arrow::new(self.types[y], self.types[x], self.homs[x * self.len() + y])
    }

    pub fn objects(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    /// Resolves a list of object names.
    pub fn subset(&self, names: &[&str]) -> Result<Vec<usize>> {
        names
            .iter()
            .map(|s| {
                self.find(s)
                    .ok_or_else(|| QcatError::InvalidArgument(format!("no object named {s}")))
            })
            .collect()
    }

    pub(crate) fn wp(&self, x: usize) -> (WitnessValue, String) {
        (WitnessValue::Point(x), self.names[x].clone())
    }

    pub(crate) fn witness_points(&self, w: Witness, pts: &[(&str, usize)]) -> Witness {
        pts.iter().fold(w, |w, &(role, x)| {
            let (v, t) = self.wp(x);
            w.with(role, v, t)
        })
    }

    /// The full subcategory on `keep`, in the given order.
    pub fn full_sub(&self, keep: &[usize]) -> EnrichedCategory {
        let names = keep.iter().map(|&x| self.names[x].clone()).collect();
        let types = keep.iter().map(|&x| self.types[x]).collect();
        let n = self.len();
        let homs = keep
            .iter()
            .flat_map(|&x| keep.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.homs[x * n + y])
            .collect();
        Self::from_table(self.base.clone(), names, types, homs).expect("full subcategory")
    }

    /// `x ≤ y` iff `t x = t y` and `1_{t x} ≤ C(x, y)`.
    pub fn underlying_order(&self) -> Vec<Vec<bool>> {
        let q = &*self.base;
        self.objects()
            .map(|x| {
                self.objects()
                    .map(|y| self.types[x] == self.types[y] && q.leq(q.id(self.types[x]), self.hom(x, y)))
                    .collect()
            })
            .collect()
    }

    pub fn is_skeletal(&self) -> bool {
        let o = self.underlying_order();
        self.objects()
            .all(|x| self.objects().all(|y| x == y || !(o[x][y] && o[y][x])))
    }

    /// `C_s(y, x) = C(y, x) ∧ C(x, y)ᵒ`.
    pub fn symmetrize(&self) -> Result<EnrichedCategory> {
        let q = &*self.base;
        if !q.has_involution() {
            return Err(QcatError::MissingInvolution);
        }
        Self::new(self.base.clone(), self.names.clone(), self.types.clone(), |y, x| {
            let o = q.involute(self.hom(x, y)).expect("involution present");
            q.meet(self.hom(y, x), o).elem
        })
    }

    /// Re-types and re-homs through a lax functor.
    pub fn change_of_base(&self, f: &LaxFunctor) -> Result<EnrichedCategory> {
        if !same_base(&self.base, &f.source) {
            return Err(QcatError::Precondition(
                "base differs from the lax functor's source".into(),
            ));
        }
        let types = self.types.iter().map(|&t| f.map_object(t)).collect();
        Self::new(f.target.clone(), self.names.clone(), types, |x, y| {
            f.map_arrow(self.hom(x, y)).elem
        })
    }

    /// Disjoint union with bottom cross-homs. Clashing names get a `'` suffix on the right.
    pub fn sum(&self, other: &EnrichedCategory) -> Result<EnrichedCategory> {
        if !same_base(&self.base, &other.base) {
            return Err(QcatError::Precondition("summands live over different bases".into()));
        }
        let q = &*self.base;
        let (n, m) = (self.len(), other.len());
        let mut names = self.names.clone();
        for s in &other.names {
            let mut s = s.clone();
            while names.contains(&s) {
                s.push('\'');
            }
            names.push(s);
        }
        let mut types = self.types.clone();
        types.extend(&other.types);
        Self::new(self.base.clone(), names, types.clone(), |x, y| match (x < n, y < n) {
            (true, true) => self.homs[x * n + y],
            (false, false) => other.homs[(x - n) * m + (y - n)],
            _ => q.bottom(types[y], types[x]).elem,
        })
    }

    /// Objects whose type is not a zero object of the base.
    pub fn nz_part(&self) -> EnrichedCategory {
        let q = &*self.base;
        let keep: Vec<usize> = self
            .objects()
            .filter(|&x| {
                let t = self.types[x];
                q.id(t) != q.bottom(t, t)
            })
            .collect();
        self.full_sub(&keep)
    }

    /// The same data over a full sub-quantaloid given by `objects` (base indices, in order).
    pub fn restrict_base(&self, sub: Arc<FiniteQuantaloid>, objects: &[usize]) -> Result<EnrichedCategory> {
        let types = self
            .types
            .iter()
            .map(|t| {
                objects
                    .iter()
                    .position(|o| o == t)
                    .ok_or_else(|| QcatError::Precondition("a type is missing from the sub-base".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(sub, self.names.clone(), types, self.homs.clone())
    }

    /// Renames objects; names must stay distinct.
    pub fn renamed(&self, names: Vec<String>) -> Result<EnrichedCategory> {
        Self::from_table(self.base.clone(), names, self.types.clone(), self.homs.clone())
    }
}

/// [C1] `C(x,y)∘C(y,z) ≤ C(x,z)` and [C2] `1_{tx} ≤ C(x,x)`.
pub fn validate_category(c: &EnrichedCategory) -> PropertyReport {
    let q = &**c.base();
    let mut rep = PropertyReport::new();
    let mut c1 = None;
    'outer: for x in c.objects() {
        for y in c.objects() {
            for z in c.objects() {
                if !q.leq(q.compose(c.hom(x, y), c.hom(y, z)), c.hom(x, z)) {
                    c1 = Some(c.witness_points(Witness::new(), &[("x", x), ("y", y), ("z", z)]));
                    break 'outer;
                }
            }
        }
    }
    rep.record("C1", c1);
    let c2 = c
        .objects()
        .find(|&x| !q.leq(q.id(c.typ(x)), c.hom(x, x)))
        .map(|x| c.witness_points(Witness::new(), &[("x", x)]));
    rep.record("C2", c2);
    rep
}

/// A type-preserving, hom-increasing map of objects.
#[derive(Debug, Clone, PartialEq)]
pub struct EnrichedFunctor {
    pub dom: Arc<EnrichedCategory>,
    pub cod: Arc<EnrichedCategory>,
    pub map: Vec<usize>,
}

impl EnrichedFunctor {
    pub fn new(dom: Arc<EnrichedCategory>, cod: Arc<EnrichedCategory>, map: Vec<usize>) -> Result<Self> {
        if !same_base(dom.base(), cod.base()) {
            return Err(QcatError::Precondition("domain and codomain bases differ".into()));
        }
        if map.len() != dom.len() || map.iter().any(|&y| y >= cod.len()) {
            return Err(structural("object map is not total into the codomain"));
        }
        Ok(EnrichedFunctor { dom, cod, map })
    }

    pub fn identity(c: Arc<EnrichedCategory>) -> Self {
        let map = c.objects().collect();
        EnrichedFunctor {
            dom: c.clone(),
            cod: c,
            map,
        }
    }

    /// The full inclusion of `keep` (in order) into `c`.
    pub fn inclusion(c: Arc<EnrichedCategory>, keep: &[usize]) -> Self {
        EnrichedFunctor {
            dom: Arc::new(c.full_sub(keep)),
            cod: c,
            map: keep.to_vec(),
        }
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &EnrichedFunctor) -> Result<EnrichedFunctor> {
        if *first.cod != *self.dom {
            return Err(QcatError::Precondition("functors do not compose".into()));
        }
        Ok(EnrichedFunctor {
            dom: first.dom.clone(),
            cod: self.cod.clone(),
            map: first.map.iter().map(|&x| self.map[x]).collect(),
        })
    }

    pub fn image(&self, s: &[usize]) -> Vec<usize> {
        let mut v: Vec<usize> = s.iter().map(|&x| self.map[x]).collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    /// `C(y, x) = D(F y, F x)`.
    pub fn is_fully_faithful(&self) -> bool {
        let d = &self.dom;
        d.objects().all(|y| {
            d.objects()
                .all(|x| d.hom(y, x) == self.cod.hom(self.map[y], self.map[x]))
        })
    }

    /// `D(y, x) = ⋁_c D(y, F c)∘D(F c, x)`.
    pub fn is_fully_dense(&self) -> bool {
        let (d, q) = (&self.cod, &**self.cod.base());
        d.objects().all(|y| {
            d.objects().all(|x| {
                let j = q.join_iter(
                    d.typ(x),
                    d.typ(y),
                    self.map.iter().map(|&fc| q.compose(d.hom(y, fc), d.hom(fc, x))),
                );
                j == d.hom(y, x)
            })
        })
    }
}

/// (F0) `t(F x) = t x` and (F1) `C(x', x) ≤ D(F x', F x)`.
pub fn validate_functor(f: &EnrichedFunctor) -> PropertyReport {
    let q = &**f.dom.base();
    let mut rep = PropertyReport::new();
    let f0 = f
        .dom
        .objects()
        .find(|&x| f.dom.typ(x) != f.cod.typ(f.map[x]))
        .map(|x| f.dom.witness_points(Witness::new(), &[("x", x)]));
    rep.record("F0", f0);
    let mut f1 = None;
    if rep.ok() {
        'o: for x in f.dom.objects() {
            for y in f.dom.objects() {
                if !q.leq(f.dom.hom(x, y), f.cod.hom(f.map[x], f.map[y])) {
                    f1 = Some(f.dom.witness_points(Witness::new(), &[("x", x), ("y", y)]));
                    break 'o;
                }
            }
        }
    }
    rep.record("F1", f1);
    rep
}

/// A type-preserving bijection `c → d` that matches every hom, if one exists.
pub fn find_isomorphism(c: &EnrichedCategory, d: &EnrichedCategory) -> Option<Vec<usize>> {
    if c.len() != d.len() || !same_base(c.base(), d.base()) {
        return None;
    }
    fn go(c: &EnrichedCategory, d: &EnrichedCategory, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
        let x = map.len();
        if x == c.len() {
            return true;
        }
        for y in d.objects() {
            if used[y] || c.typ(x) != d.typ(y) || c.hom(x, x) != d.hom(y, y) {
                continue;
            }
            let fits = map
                .iter()
                .enumerate()
                .all(|(x2, &y2)| c.hom(x, x2) == d.hom(y, y2) && c.hom(x2, x) == d.hom(y2, y));
            if !fits {
                continue;
            }
            map.push(y);
            used[y] = true;
            if go(c, d, map, used) {
                return true;
            }
            map.pop();
            used[y] = false;
        }
        false
    }
    let mut map = Vec::new();
    let mut used = vec![false; d.len()];
    go(c, d, &mut map, &mut used).then_some(map)
}
