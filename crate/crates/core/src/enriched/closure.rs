use std::sync::Arc;

use crate::error::{QcatError, Result};
use crate::properties::Family;
use crate::quantaloid::{Arrow, FiniteQuantaloid};
use crate::report::{PropertyReport, Witness, WitnessValue};

use super::category::EnrichedCategory;

/// Default object-count bound for the exhaustive closure report.
pub const DEFAULT_SUBSET_BOUND: usize = 5;

fn check_subset(c: &EnrichedCategory, s: &[usize]) -> Result<()> {
    match s.iter().find(|&&x| x >= c.len()) {
        Some(x) => Err(QcatError::InvalidArgument(format!("object index {x} is out of range"))),
        None => Ok(()),
    }
}

/// `⋁_{s∈S} C(x,s)∘C(s,x)`.
pub fn closure_join(c: &EnrichedCategory, s: &[usize], x: usize) -> Arrow {
    let q = c.base();
    let t = c.typ(x);
    q.join_iter(t, t, s.iter().map(|&r| q.compose(c.hom(x, r), c.hom(r, x))))
}

pub fn in_closure(c: &EnrichedCategory, s: &[usize], x: usize) -> bool {
    let q = c.base();
    q.leq(q.id(c.typ(x)), closure_join(c, s, x))
}

/// `cl(S) = {x | 1_{tx} ≤ ⋁_{s∈S} C(x,s)∘C(s,x)}`, sorted.
pub fn closure(c: &EnrichedCategory, s: &[usize]) -> Result<Vec<usize>> {
    check_subset(c, s)?;
    Ok(c.objects().filter(|&x| in_closure(c, s, x)).collect())
}

fn mask_to_set(m: u64, n: usize) -> Vec<usize> {
    (0..n).filter(|i| m >> i & 1 == 1).collect()
}

fn set_to_mask(s: &[usize]) -> u64 {
    s.iter().fold(0, |m, &i| m | 1 << i)
}

fn subset_witness(c: &EnrichedCategory, role: &str, s: &[usize]) -> (String, WitnessValue, String) {
    let names: Vec<&str> = s.iter().map(|&x| c.name(x)).collect();
    (
        role.to_string(),
        WitnessValue::Points(s.to_vec()),
        format!("{{{}}}", names.join(",")),
    )
}

fn with_sets(c: &EnrichedCategory, sets: &[(&str, &[usize])]) -> Witness {
    sets.iter().fold(Witness::new(), |w, (role, s)| {
        let (r, v, t) = subset_witness(c, role, s);
        w.with(&r, v, t)
    })
}

/// Closure-space laws over all subsets, groundedness, additivity over all
/// pairs, and the equality `C(x,x) = ⋁_s C(x,s)∘C(s,x)` on closure members.
pub fn closure_report(c: &EnrichedCategory, bound: usize) -> Result<PropertyReport> {
    let n = c.len();
    if n > bound || n >= 32 {
        return Err(QcatError::BoundExceeded {
            needed: n as u128,
            bound: bound.min(31) as u128,
        });
    }
    let total = 1u64 << n;
    let cl: Vec<u64> = (0..total)
        .map(|m| set_to_mask(&closure(c, &mask_to_set(m, n)).expect("in range")))
        .collect();
    let mut rep = PropertyReport::new();

    let increasing = (0..total)
        .find(|&m| cl[m as usize] & m != m)
        .map(|m| with_sets(c, &[("S", &mask_to_set(m, n))]));
    rep.record("increasing", increasing);

    let monotone = (0..total)
        .flat_map(|s| (0..total).map(move |t| (s, t)))
        .find(|&(s, t)| s & t == s && cl[s as usize] & cl[t as usize] != cl[s as usize])
        .map(|(s, t)| with_sets(c, &[("S", &mask_to_set(s, n)), ("T", &mask_to_set(t, n))]));
    rep.record("monotone", monotone);

    let idempotent = (0..total)
        .find(|&m| cl[cl[m as usize] as usize] != cl[m as usize])
        .map(|m| with_sets(c, &[("S", &mask_to_set(m, n))]));
    rep.record("idempotent", idempotent);

    let grounded = (cl[0] != 0).then(|| with_sets(c, &[("cl(∅)", &mask_to_set(cl[0], n))]));
    rep.record("grounded", grounded);

    let additive = (0..total)
        .flat_map(|s| (0..total).map(move |t| (s, t)))
        .find(|&(s, t)| cl[(s | t) as usize] != cl[s as usize] | cl[t as usize])
        .map(|(s, t)| {
            let extra = cl[(s | t) as usize] & !(cl[s as usize] | cl[t as usize]);
            with_sets(
                c,
                &[
                    ("S", &mask_to_set(s, n)),
                    ("T", &mask_to_set(t, n)),
                    ("cl(S∪T)∖(cl(S)∪cl(T))", &mask_to_set(extra, n)),
                ],
            )
        });
    rep.record("additive", additive);

    let mut equality = None;
    'o: for m in 0..total {
        let s = mask_to_set(m, n);
        for x in c.objects() {
            let member = cl[m as usize] >> x & 1 == 1;
            let eq = closure_join(c, &s, x) == c.hom(x, x);
            if member != eq {
                let (v, t) = c.wp(x);
                equality = Some(with_sets(c, &[("S", &s)]).with("x", v, t));
                break 'o;
            }
        }
    }
    rep.record("membership-equals-hom-equality", equality);
    Ok(rep)
}

/// The category built from a family `(f_i: X → Y_i, g_i: Y_i → X)`:
/// objects `i0, i1, …` of type `Y_i` and `x` of type `X`, with
/// `C(i,x) = f_i`, `C(x,i) = g_i`, identities on the diagonal and bottoms between distinct `i`.
/// The hom data is as stated even when it violates C1; validate before use.
pub fn family_category(q: &Arc<FiniteQuantaloid>, fam: &Family) -> Result<EnrichedCategory> {
    let k = fam.pairs.len();
    let x = fam.object;
    let mut names: Vec<String> = (0..k).map(|i| format!("i{i}")).collect();
    if k == 1 {
        names[0] = "i".into();
    }
    names.push("x".into());
    let mut types: Vec<usize> = fam.pairs.iter().map(|&(f, _)| f.tgt).collect();
    types.push(x);
    let ty = types.clone();
    EnrichedCategory::from_arrows(q.clone(), names, types, |a, b| match (a == k, b == k) {
        (true, true) => q.id(x),
        (false, true) => fam.pairs[a].0,
        (true, false) => fam.pairs[b].1,
        (false, false) if a == b => q.id(ty[a]),
        (false, false) => q.bottom(ty[b], ty[a]),
    })
}

/// Three objects `x, y, z` of type `X` with `C(x,y) = f`, `C(y,z) = g`,
/// `C(x,z) = f∘g` and identities elsewhere.
pub fn join_witness_category(q: &Arc<FiniteQuantaloid>, f: Arrow, g: Arrow) -> Result<EnrichedCategory> {
    let x = f.src;
    if f.tgt != x || g.src != x || g.tgt != x {
        return Err(QcatError::Endpoint("f and g must be endo-arrows of one object".into()));
    }
    let fg = q.compose(f, g);
    EnrichedCategory::from_arrows(
        q.clone(),
        vec!["x".into(), "y".into(), "z".into()],
        vec![x; 3],
        |a, b| match (a, b) {
            (0, 1) => f,
            (1, 2) => g,
            (0, 2) => fg,
            _ => q.id(x),
        },
    )
}
