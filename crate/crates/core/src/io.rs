//! JSON documents for quantaloids, categories, functors, distributors,
//! partial metric spaces and sampled sequences.
//!
//! Elements, objects and points are referred to by name; distances are exact
//! rationals written `"a/b"`, infinity is `"inf"`.

use std::collections::HashMap;
use std::sync::Arc;

use num::BigRational;
use serde::{Deserialize, Serialize};

use crate::corpus;
use crate::diagonals::Diagonals;
use crate::enriched::{family_category, EnrichedCategory, EnrichedDistributor, EnrichedFunctor};
use crate::error::{QcatError, Result};
use crate::lattice::HomLattice;
use crate::parmet::{self, ExtValue, PartialMetricSpace, SampledSequence};
use crate::properties::Family;
use crate::quantaloid::FiniteQuantaloid;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Quantaloid,
    Category,
    Functor,
    Distributor,
    Pms,
    Sequence,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Meta {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HomBody {
    pub src: String,
    pub tgt: String,
    pub elements: Vec<String>,
    /// Strict order pairs `[lower, upper]`.
    pub order: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CompositionBody {
    pub a: String,
    pub b: String,
    pub c: String,
    /// `table[g][f] = g ∘ f` for `f: a → b`, `g: b → c`.
    pub table: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InvolutionBody {
    pub src: String,
    pub tgt: String,
    pub map: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuantaloidBody {
    pub objects: Vec<String>,
    pub homs: Vec<HomBody>,
    pub identities: Vec<[String; 2]>,
    pub composition: Vec<CompositionBody>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub involution: Option<Vec<InvolutionBody>>,
}

/// A base quantaloid given inline or by fixture name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Fixture { fixture: String },
    Inline(Box<QuantaloidBody>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObjectBody {
    pub name: String,
    #[serde(rename = "type")]
    pub typ: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CategoryBody {
    pub base: BaseRef,
    pub objects: Vec<ObjectBody>,
    /// `homs[x][y]` names the element `C(x, y): t y → t x`.
    pub homs: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FunctorBody {
    pub dom: CategoryBody,
    pub cod: CategoryBody,
    /// `[x, F x]` pairs.
    pub map: Vec<[String; 2]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributorBody {
    pub dom: CategoryBody,
    pub cod: CategoryBody,
    /// `matrix[y][x]` for `y` in the codomain, `x` in the domain.
    pub matrix: Vec<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PmsBody {
    pub points: Vec<String>,
    /// `p[y][x] = p(y, x)`.
    pub p: Vec<Vec<Option<ExtValue>>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceBody {
    pub space: PmsBody,
    /// Samples `x_0, x_1, …`; past the prefix the cycle repeats.
    pub prefix: Vec<String>,
    #[serde(default)]
    pub cycle: Vec<String>,
    pub horizon: usize,
    pub eps: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constant_from: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Body {
    Quantaloid(QuantaloidBody),
    Category(CategoryBody),
    Functor(FunctorBody),
    Distributor(DistributorBody),
    Pms(PmsBody),
    Sequence(SequenceBody),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Document {
    pub kind: Kind,
    pub meta: Meta,
    pub body: Body,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    kind: Kind,
    #[serde(default)]
    meta: Meta,
    body: serde_json::Value,
}

fn schema(path: impl Into<String>, msg: impl Into<String>) -> QcatError {
    QcatError::Schema {
        path: path.into(),
        msg: msg.into(),
    }
}

fn json_error(e: serde_json::Error, path: &str) -> QcatError {
    if e.line() == 0 {
        schema(path, e.to_string())
    } else {
        schema(
            format!("{path} (line {}, column {})", e.line(), e.column()),
            e.to_string(),
        )
    }
}

impl Document {
    pub fn new(kind: Kind, name: &str, provenance: &str, body: Body) -> Document {
        Document {
            kind,
            meta: Meta {
                name: name.into(),
                provenance: provenance.into(),
            },
            body,
        }
    }

    /// Parses and structurally checks a document.
    pub fn parse(text: &str) -> Result<Document> {
        let raw: RawDocument = serde_json::from_str(text).map_err(|e| json_error(e, "document"))?;
        let body = match raw.kind {
            Kind::Quantaloid => Body::Quantaloid(typed(raw.body)?),
            Kind::Category => Body::Category(typed(raw.body)?),
            Kind::Functor => Body::Functor(typed(raw.body)?),
            Kind::Distributor => Body::Distributor(typed(raw.body)?),
            Kind::Pms => Body::Pms(typed(raw.body)?),
            Kind::Sequence => Body::Sequence(typed(raw.body)?),
        };
        let doc = Document {
            kind: raw.kind,
            meta: raw.meta,
            body,
        };
        doc.check()?;
        Ok(doc)
    }

    /// Pretty JSON with a trailing newline.
    pub fn emit(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }

    fn check(&self) -> Result<()> {
        match &self.body {
            Body::Quantaloid(b) => quantaloid_from_body(b).map(|_| ()),
            Body::Category(b) => category_from_body(b).map(|_| ()),
            Body::Functor(b) => functor_from_body(b).map(|_| ()),
            Body::Distributor(b) => distributor_from_body(b).map(|_| ()),
            Body::Pms(b) => pms_from_body(b).map(|_| ()),
            Body::Sequence(b) => sequence_from_body(b).map(|_| ()),
        }
    }

    pub fn quantaloid(&self) -> Result<FiniteQuantaloid> {
        match &self.body {
            Body::Quantaloid(b) => quantaloid_from_body(b),
            _ => Err(self.wrong_kind("quantaloid")),
        }
    }

    pub fn category(&self) -> Result<EnrichedCategory> {
        match &self.body {
            Body::Category(b) => category_from_body(b),
            _ => Err(self.wrong_kind("category")),
        }
    }

    pub fn functor(&self) -> Result<EnrichedFunctor> {
        match &self.body {
            Body::Functor(b) => functor_from_body(b),
            _ => Err(self.wrong_kind("functor")),
        }
    }

    pub fn distributor(&self) -> Result<EnrichedDistributor> {
        match &self.body {
            Body::Distributor(b) => distributor_from_body(b),
            _ => Err(self.wrong_kind("distributor")),
        }
    }

    pub fn pms(&self) -> Result<PartialMetricSpace> {
        match &self.body {
            Body::Pms(b) => pms_from_body(b),
            Body::Sequence(b) => pms_from_body(&b.space),
            _ => Err(self.wrong_kind("pms")),
        }
    }

    pub fn sequence(&self) -> Result<(PartialMetricSpace, SampledSequence<usize>)> {
        match &self.body {
            Body::Sequence(b) => sequence_from_body(b),
            _ => Err(self.wrong_kind("sequence")),
        }
    }

    fn wrong_kind(&self, want: &str) -> QcatError {
        schema(
            "kind",
            format!("expected a {want} document, found {:?}", self.kind).to_lowercase(),
        )
    }
}

fn typed<T: for<'de> Deserialize<'de>>(v: serde_json::Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| json_error(e, "body"))
}

fn lookup(index: &HashMap<&str, usize>, name: &str, path: &str, what: &str) -> Result<usize> {
    index
        .get(name)
        .copied()
        .ok_or_else(|| schema(path, format!("unknown {what} {name:?}")))
}

fn index_of(names: &[String]) -> HashMap<&str, usize> {
    names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect()
}

pub fn quantaloid_from_body(b: &QuantaloidBody) -> Result<FiniteQuantaloid> {
    let n = b.objects.len();
    let objs = index_of(&b.objects);
    if objs.len() != n {
        return Err(schema("body.objects", "object names repeat"));
    }
    let mut homs: Vec<Option<HomLattice>> = vec![None; n * n];
    for (k, h) in b.homs.iter().enumerate() {
        let path = format!("body.homs[{k}]");
        let (a, c) = (
            lookup(&objs, &h.src, &path, "object")?,
            lookup(&objs, &h.tgt, &path, "object")?,
        );
        let elems = index_of(&h.elements);
        if elems.len() != h.elements.len() {
            return Err(schema(&path, "element names repeat"));
        }
        let m = h.elements.len();
        let mut leq = vec![false; m * m];
        (0..m).for_each(|i| leq[i * m + i] = true);
        for [lo, hi] in &h.order {
            let (i, j) = (
                lookup(&elems, lo, &path, "element")?,
                lookup(&elems, hi, &path, "element")?,
            );
            leq[i * m + j] = true;
        }
        if homs[a * n + c]
            .replace(HomLattice::new(h.elements.clone(), leq))
            .is_some()
        {
            return Err(schema(&path, format!("hom({},{}) given twice", h.src, h.tgt)));
        }
    }
    let homs = homs
        .into_iter()
        .enumerate()
        .map(|(k, h)| {
            h.ok_or_else(|| {
                schema(
                    "body.homs",
                    format!("missing hom({},{})", b.objects[k / n], b.objects[k % n]),
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let mut ids: Vec<Option<usize>> = vec![None; n];
    for (k, [o, e]) in b.identities.iter().enumerate() {
        let path = format!("body.identities[{k}]");
        let a = lookup(&objs, o, &path, "object")?;
        let h = &homs[a * n + a];
        ids[a] = Some(
            h.find(e)
                .ok_or_else(|| schema(&path, format!("unknown element {e:?}")))?,
        );
    }
    let ids = ids
        .into_iter()
        .enumerate()
        .map(|(a, i)| i.ok_or_else(|| schema("body.identities", format!("missing identity of {}", b.objects[a]))))
        .collect::<Result<Vec<_>>>()?;
    let mut comp: Vec<Option<Vec<u32>>> = vec![None; n * n * n];
    for (k, t) in b.composition.iter().enumerate() {
        let path = format!("body.composition[{k}]");
        let a = lookup(&objs, &t.a, &path, "object")?;
        let bb = lookup(&objs, &t.b, &path, "object")?;
        let c = lookup(&objs, &t.c, &path, "object")?;
        let (ab, bc, ac) = (&homs[a * n + bb], &homs[bb * n + c], &homs[a * n + c]);
        if t.table.len() != bc.len() {
            return Err(schema(
                &path,
                format!("expected {} rows, got {}", bc.len(), t.table.len()),
            ));
        }
        let mut out = Vec::with_capacity(ab.len() * bc.len());
        for (g, row) in t.table.iter().enumerate() {
            if row.len() != ab.len() {
                return Err(schema(
                    format!("{path}.table[{g}]"),
                    format!("expected {} entries, got {}", ab.len(), row.len()),
                ));
            }
            for e in row {
                let x = ac
                    .find(e)
                    .ok_or_else(|| schema(format!("{path}.table[{g}]"), format!("unknown element {e:?}")))?;
                out.push(x as u32);
            }
        }
        if comp[(a * n + bb) * n + c].replace(out).is_some() {
            return Err(schema(&path, "composition table given twice"));
        }
    }
    let comp = comp
        .into_iter()
        .enumerate()
        .map(|(k, t)| {
            t.ok_or_else(|| {
                let (a, bb, c) = (k / (n * n), k / n % n, k % n);
                schema(
                    "body.composition",
                    format!("missing table {}-{}-{}", b.objects[a], b.objects[bb], b.objects[c]),
                )
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let inv = match &b.involution {
        None => None,
        Some(tables) => {
            let mut inv: Vec<Option<Vec<u32>>> = vec![None; n * n];
            for (k, t) in tables.iter().enumerate() {
                let path = format!("body.involution[{k}]");
                let a = lookup(&objs, &t.src, &path, "object")?;
                let c = lookup(&objs, &t.tgt, &path, "object")?;
                let back = &homs[c * n + a];
                let map = t
                    .map
                    .iter()
                    .map(|e| {
                        back.find(e)
                            .map(|x| x as u32)
                            .ok_or_else(|| schema(&path, format!("unknown element {e:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                inv[a * n + c] = Some(map);
            }
            Some(
                inv.into_iter()
                    .enumerate()
                    .map(|(k, t)| {
                        t.ok_or_else(|| {
                            schema(
                                "body.involution",
                                format!("missing table {}-{}", b.objects[k / n], b.objects[k % n]),
                            )
                        })
                    })
                    .collect::<Result<Vec<_>>>()?,
            )
        }
    };
    FiniteQuantaloid::from_parts(b.objects.clone(), homs, comp, ids, inv)
}

pub fn quantaloid_body(q: &FiniteQuantaloid) -> QuantaloidBody {
    let n = q.n_objects();
    let name = |a: usize| q.object_name(a).to_string();
    let mut homs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            let h = q.hom(a, b);
            let order = h
                .elements()
                .flat_map(|i| h.elements().map(move |j| (i, j)))
                .filter(|&(i, j)| i != j && h.leq(i, j))
                .map(|(i, j)| [h.name(i).to_string(), h.name(j).to_string()])
                .collect();
            homs.push(HomBody {
                src: name(a),
                tgt: name(b),
                elements: h.names().to_vec(),
                order,
            });
        }
    }
    let identities = (0..n).map(|a| [name(a), q.elem_name(q.id(a)).to_string()]).collect();
    let mut composition = Vec::new();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = q.comp_table(a, b, c);
                let ab = q.hom(a, b).len();
                let ac = q.hom(a, c);
                let table = t
                    .chunks(ab.max(1))
                    .take(q.hom(b, c).len())
                    .map(|row| row.iter().map(|&x| ac.name(x as usize).to_string()).collect())
                    .collect::<Vec<Vec<String>>>();
                let table = if ab == 0 {
                    vec![Vec::new(); q.hom(b, c).len()]
                } else {
                    table
                };
                composition.push(CompositionBody {
                    a: name(a),
                    b: name(b),
                    c: name(c),
                    table,
                });
            }
        }
    }
    let involution = q.involution_table().map(|inv| {
        (0..n * n)
            .map(|k| {
                let back = q.hom(k % n, k / n);
                InvolutionBody {
                    src: name(k / n),
                    tgt: name(k % n),
                    map: inv[k].iter().map(|&x| back.name(x as usize).to_string()).collect(),
                }
            })
            .collect()
    });
    QuantaloidBody {
        objects: q.objects().to_vec(),
        homs,
        identities,
        composition,
        involution,
    }
}

/// Quantaloid fixtures usable as a category base.
pub fn base_fixture(name: &str) -> Result<FiniteQuantaloid> {
    Ok(match name {
        "q2" => corpus::q2(),
        "c3" => corpus::c3(),
        "diamond" => corpus::diamond(),
        "l2" => corpus::l_n(2),
        "l3" => corpus::l_n(3),
        "l4" => corpus::l_n(4),
        "pz2" => corpus::pz_n(2),
        "pz3" => corpus::pz_n(3),
        "dl3" => Diagonals::new(corpus::l_n(3)).d().clone(),
        other => return Err(schema("base.fixture", format!("unknown quantaloid fixture {other:?}"))),
    })
}

fn resolve_base(b: &BaseRef) -> Result<Arc<FiniteQuantaloid>> {
    match b {
        BaseRef::Fixture { fixture } => Ok(Arc::new(base_fixture(fixture)?)),
        BaseRef::Inline(body) => Ok(Arc::new(quantaloid_from_body(body)?)),
    }
}

fn category_with_base(b: &CategoryBody, base: Arc<FiniteQuantaloid>) -> Result<EnrichedCategory> {
    let q = &base;
    let n = b.objects.len();
    let names: Vec<String> = b.objects.iter().map(|o| o.name.clone()).collect();
    let objs: HashMap<&str, usize> = q.objects().iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let types = b
        .objects
        .iter()
        .enumerate()
        .map(|(k, o)| lookup(&objs, &o.typ, &format!("body.objects[{k}]"), "type"))
        .collect::<Result<Vec<_>>>()?;
    if b.homs.len() != n {
        return Err(schema("body.homs", format!("expected {n} rows, got {}", b.homs.len())));
    }
    let mut homs = Vec::with_capacity(n * n);
    for (x, row) in b.homs.iter().enumerate() {
        if row.len() != n {
            return Err(schema(
                format!("body.homs[{x}]"),
                format!("expected {n} entries, got {}", row.len()),
            ));
        }
        for (y, e) in row.iter().enumerate() {
            let h = q.hom(types[y], types[x]);
            let i = h.find(e).ok_or_else(|| {
                schema(
                    format!("body.homs[{x}][{y}]"),
                    format!("C({},{}) = {e:?} is not an element of the hom", names[x], names[y]),
                )
            })?;
            homs.push(i);
        }
    }
    EnrichedCategory::from_table(base.clone(), names, types, homs)
}

pub fn category_from_body(b: &CategoryBody) -> Result<EnrichedCategory> {
    category_with_base(b, resolve_base(&b.base)?)
}

/// `fixture` names the base instead of inlining it.
pub fn category_body(c: &EnrichedCategory, fixture: Option<&str>) -> CategoryBody {
    let q = c.base();
    let base = match fixture {
        Some(f) => BaseRef::Fixture { fixture: f.into() },
        None => BaseRef::Inline(Box::new(quantaloid_body(q))),
    };
    CategoryBody {
        base,
        objects: c
            .objects()
            .map(|x| ObjectBody {
                name: c.name(x).into(),
                typ: q.object_name(c.typ(x)).into(),
            })
            .collect(),
        homs: c
            .objects()
            .map(|x| c.objects().map(|y| q.elem_name(c.hom(x, y)).to_string()).collect())
            .collect(),
    }
}

fn two_categories(dom: &CategoryBody, cod: &CategoryBody) -> Result<(Arc<EnrichedCategory>, Arc<EnrichedCategory>)> {
    let base = resolve_base(&dom.base)?;
    let cod_base = if cod.base == dom.base {
        base.clone()
    } else {
        resolve_base(&cod.base)?
    };
    if *cod_base != *base {
        return Err(schema("body.cod.base", "domain and codomain have different bases"));
    }
    Ok((
        Arc::new(category_with_base(dom, base.clone())?),
        Arc::new(category_with_base(cod, base)?),
    ))
}

pub fn functor_from_body(b: &FunctorBody) -> Result<EnrichedFunctor> {
    let (dom, cod) = two_categories(&b.dom, &b.cod)?;
    let mut map = vec![None; dom.len()];
    for (k, [x, y]) in b.map.iter().enumerate() {
        let path = format!("body.map[{k}]");
        let xi = dom
            .find(x)
            .ok_or_else(|| schema(&path, format!("unknown object {x:?}")))?;
        let yi = cod
            .find(y)
            .ok_or_else(|| schema(&path, format!("unknown object {y:?}")))?;
        map[xi] = Some(yi);
    }
    let map = map
        .into_iter()
        .enumerate()
        .map(|(x, m)| m.ok_or_else(|| schema("body.map", format!("no image for {}", dom.name(x)))))
        .collect::<Result<Vec<_>>>()?;
    EnrichedFunctor::new(dom, cod, map)
}

pub fn functor_body(f: &EnrichedFunctor, fixture: Option<&str>) -> FunctorBody {
    FunctorBody {
        dom: category_body(&f.dom, fixture),
        cod: category_body(&f.cod, fixture),
        map: f
            .dom
            .objects()
            .map(|x| [f.dom.name(x).to_string(), f.cod.name(f.apply(x)).to_string()])
            .collect(),
    }
}

pub fn distributor_from_body(b: &DistributorBody) -> Result<EnrichedDistributor> {
    let (dom, cod) = two_categories(&b.dom, &b.cod)?;
    let q = dom.base().clone();
    if b.matrix.len() != cod.len() {
        return Err(schema(
            "body.matrix",
            format!("expected {} rows, got {}", cod.len(), b.matrix.len()),
        ));
    }
    let mut mat = Vec::with_capacity(dom.len() * cod.len());
    for (y, row) in b.matrix.iter().enumerate() {
        if row.len() != dom.len() {
            return Err(schema(
                format!("body.matrix[{y}]"),
                format!("expected {} entries, got {}", dom.len(), row.len()),
            ));
        }
        for (x, e) in row.iter().enumerate() {
            let h = q.hom(dom.typ(x), cod.typ(y));
            mat.push(h.find(e).ok_or_else(|| {
                schema(
                    format!("body.matrix[{y}][{x}]"),
                    format!("{e:?} is not an element of the hom"),
                )
            })?);
        }
    }
    EnrichedDistributor::from_table(dom, cod, mat)
}

pub fn distributor_body(d: &EnrichedDistributor, fixture: Option<&str>) -> DistributorBody {
    let q = d.dom.base();
    DistributorBody {
        dom: category_body(&d.dom, fixture),
        cod: category_body(&d.cod, fixture),
        matrix: d
            .cod
            .objects()
            .map(|y| d.dom.objects().map(|x| q.elem_name(d.get(y, x)).to_string()).collect())
            .collect(),
    }
}

pub fn pms_from_body(b: &PmsBody) -> Result<PartialMetricSpace> {
    let n = b.points.len();
    let mut table = Vec::with_capacity(n * n);
    for y in 0..n {
        for x in 0..n {
            let v =
                b.p.get(y)
                    .and_then(|row| row.get(x))
                    .cloned()
                    .flatten()
                    .ok_or_else(|| {
                        schema(
                            format!("body.p[{y}][{x}]"),
                            format!("missing entry p({},{})", b.points[y], b.points[x]),
                        )
                    })?;
            table.push(v);
        }
    }
    if b.p.len() > n || b.p.iter().any(|r| r.len() > n) {
        return Err(schema("body.p", format!("matrix is larger than {n}x{n}")));
    }
    PartialMetricSpace::from_table(b.points.clone(), table)
}

pub fn pms_body(x: &PartialMetricSpace) -> PmsBody {
    PmsBody {
        points: x.names().to_vec(),
        p: x.points()
            .map(|y| x.points().map(|a| Some(x.p(y, a).clone())).collect())
            .collect(),
    }
}

pub fn sequence_from_body(b: &SequenceBody) -> Result<(PartialMetricSpace, SampledSequence<usize>)> {
    let x = pms_from_body(&b.space)?;
    let find = |s: &String, path: &str| x.find(s).ok_or_else(|| schema(path, format!("unknown point {s:?}")));
    let prefix = b
        .prefix
        .iter()
        .map(|s| find(s, "body.prefix"))
        .collect::<Result<Vec<_>>>()?;
    let cycle = b
        .cycle
        .iter()
        .map(|s| find(s, "body.cycle"))
        .collect::<Result<Vec<_>>>()?;
    if cycle.is_empty() && prefix.len() <= b.horizon {
        return Err(schema(
            "body.prefix",
            "samples run out before the horizon and no cycle is given",
        ));
    }
    let eps: BigRational = b
        .eps
        .parse::<ExtValue>()
        .ok()
        .and_then(|v| v.finite().cloned())
        .ok_or_else(|| schema("body.eps", format!("{:?} is not a rational", b.eps)))?;
    let gen = |n: usize| {
        if n < prefix.len() {
            prefix[n]
        } else {
            cycle[(n - prefix.len()) % cycle.len()]
        }
    };
    let mut s = SampledSequence::new(b.horizon, eps, gen)?;
    if let Some(n0) = b.constant_from {
        s = s.constant_from(n0)?;
    }
    Ok((x, s))
}

pub const FIXTURE_NAMES: &[&str] = &[
    "q2",
    "c3",
    "diamond",
    "l2",
    "l3",
    "l4",
    "pz2",
    "pz3",
    "dl3",
    "pz3cat",
    "ab",
    "twopoint",
    "all1",
    "wordspace-k",
    "terminal-k",
];

fn parametrised(name: &str, prefix: &str) -> Option<usize> {
    name.strip_prefix(prefix)?.parse().ok()
}

/// The named fixture as a document. `wordspace-k` and `terminal-k` take a size.
pub fn fixture(name: &str) -> Result<Document> {
    let quant = |q: FiniteQuantaloid, prov: &str| {
        Document::new(Kind::Quantaloid, name, prov, Body::Quantaloid(quantaloid_body(&q)))
    };
    let pms = |x: PartialMetricSpace, prov: &str| Document::new(Kind::Pms, name, prov, Body::Pms(pms_body(&x)));
    if let Some(k) = parametrised(name, "wordspace-") {
        if !(1..=6).contains(&k) {
            return Err(QcatError::InvalidArgument("word length must be between 1 and 6".into()));
        }
        return Ok(pms(
            parmet::word_space(&['a', 'b'], k),
            "words over {a,b}, first-disagreement distance",
        ));
    }
    if let Some(k) = parametrised(name, "terminal-") {
        if !(1..=64).contains(&k) {
            return Err(QcatError::InvalidArgument(
                "terminal sample size must be between 1 and 64".into(),
            ));
        }
        let vals: Vec<ExtValue> = (0..k as i64).map(ExtValue::int).collect();
        return Ok(pms(
            parmet::terminal_sample(&vals)?,
            "self-distances 0..k-1 with p(a,b) = a max b",
        ));
    }
    Ok(match name {
        "q2" => quant(corpus::q2(), "two-element Boolean quantale"),
        "c3" => quant(corpus::c3(), "three-element chain as a locale"),
        "diamond" => quant(corpus::diamond(), "four-element Boolean locale"),
        "l2" | "l3" | "l4" => quant(base_fixture(name)?, "truncated addition chain"),
        "pz2" | "pz3" => quant(base_fixture(name)?, "powerset of a cyclic group"),
        "dl3" => quant(base_fixture(name)?, "diagonal quantaloid of l3"),
        "pz3cat" => {
            let q = Arc::new(corpus::pz_n(3));
            let g = q.arrow(0, 0, "{g}").expect("pz3 has {g}");
            let g2 = q.arrow(0, 0, "{g2}").expect("pz3 has {g2}");
            let fam = Family {
                object: 0,
                pairs: vec![(g, g2)],
            };
            let c = family_category(&q, &fam)?;
            Document::new(
                Kind::Category,
                name,
                "family category of the pair ({g},{g2}) over pz3",
                Body::Category(category_body(&c, Some("pz3"))),
            )
        }
        "ab" => pms(parmet::ab_space(), "p(a,a)=0, p(b,b)=1, p(a,b)=p(b,a)=1"),
        "twopoint" => pms(parmet::two_point_metric(), "two-point metric space at distance 1"),
        "all1" => pms(parmet::all_ones(), "two points, all distances 1"),
        other => return Err(QcatError::InvalidArgument(format!("unknown fixture {other:?}"))),
    })
}
