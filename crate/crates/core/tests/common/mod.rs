#![allow(dead_code)]

use std::sync::Arc;

use num::BigRational;
use qcat_core::corpus::{c3, diamond, l_n, pz_n, q2};
use qcat_core::enriched::{
    cauchy_completion, dist_compose, dist_id, validate_category, validate_functor, EnrichedCategory,
    EnrichedDistributor, EnrichedFunctor,
};
use qcat_core::parmet::{
    ab_space, all_ones, terminal_sample, two_point_metric, validate_pms, word_space, ExtValue, PartialMetricSpace,
    SampledSequence,
};
use qcat_core::properties::non_zero_part;
use qcat_core::{Arrow, Diagonals, FiniteQuantaloid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// The least category whose homs lie above the seed matrix and the identities.
pub fn closed_category(
    q: &Arc<FiniteQuantaloid>,
    types: Vec<usize>,
    seed: impl Fn(usize, usize) -> usize,
) -> EnrichedCategory {
    let n = types.len();
    let mut m: Vec<Arrow> = (0..n * n)
        .map(|k| Arrow::new(types[k % n], types[k / n], seed(k / n, k % n)))
        .collect();
    for x in 0..n {
        m[x * n + x] = q.join(m[x * n + x], q.id(types[x]));
    }
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let j = q.join(m[x * n + z], q.compose(m[x * n + y], m[y * n + z]));
                    if j != m[x * n + z] {
                        m[x * n + z] = j;
                        changed = true;
                    }
                }
            }
        }
    }
    let c = EnrichedCategory::from_arrows(q.clone(), names(n), types, |x, y| m[x * n + y]).unwrap();
    assert!(validate_category(&c).ok());
    c
}

fn random_elem(q: &FiniteQuantaloid, a: usize, b: usize, r: &mut ChaCha8Rng) -> usize {
    let h = q.hom(a, b);
    if r.gen_bool(0.5) {
        h.bottom()
    } else {
        r.gen_range(0..h.len())
    }
}

pub fn random_category(q: &Arc<FiniteQuantaloid>, n: usize, r: &mut ChaCha8Rng) -> EnrichedCategory {
    let types: Vec<usize> = (0..n).map(|_| r.gen_range(0..q.n_objects())).collect();
    let seed: Vec<usize> = (0..n * n)
        .map(|k| random_elem(q, types[k % n], types[k / n], r))
        .collect();
    closed_category(q, types, |x, y| seed[x * n + y])
}

/// Every category with `n` objects over a one-object base.
pub fn all_categories(q: &Arc<FiniteQuantaloid>, n: usize) -> Vec<EnrichedCategory> {
    let k = q.hom(0, 0).len();
    let cells = n * n;
    let mut out = Vec::new();
    let mut digits = vec![0usize; cells];
    loop {
        if let Ok(c) = EnrichedCategory::from_table(q.clone(), names(n), vec![0; n], digits.clone()) {
            if validate_category(&c).ok() {
                out.push(c);
            }
        }
        let mut i = 0;
        while i < cells && digits[i] + 1 == k {
            digits[i] = 0;
            i += 1;
        }
        if i == cells {
            break;
        }
        digits[i] += 1;
    }
    out
}

pub fn dl3() -> Arc<FiniteQuantaloid> {
    Diagonals::new(l_n(3)).quantaloid.clone()
}

pub fn nz_dl3() -> Arc<FiniteQuantaloid> {
    Arc::new(non_zero_part(&dl3()))
}

/// Named test bases.
pub fn test_bases() -> Vec<(&'static str, Arc<FiniteQuantaloid>)> {
    vec![
        ("q2", Arc::new(q2())),
        ("c3", Arc::new(c3())),
        ("l2", Arc::new(l_n(2))),
        ("l3", Arc::new(l_n(3))),
        ("diamond", Arc::new(diamond())),
        ("pz3", Arc::new(pz_n(3))),
        ("dl3", dl3()),
        ("nz-dl3", nz_dl3()),
    ]
}

/// Exhaustive 1–2-object categories over the small one-object bases and
/// seeded random 3–4-object categories over every test base.
pub fn test_categories() -> Vec<(String, Arc<EnrichedCategory>)> {
    let mut out = Vec::new();
    let mut r = rng(7);
    for (name, q) in test_bases() {
        if q.is_one_object() && q.hom(0, 0).len() <= 3 {
            for n in 1..=2 {
                for (i, c) in all_categories(&q, n).into_iter().enumerate() {
                    out.push((format!("{name}/all{n}/{i}"), Arc::new(c)));
                }
            }
        } else {
            for n in 1..=2 {
                for i in 0..4 {
                    out.push((format!("{name}/rand{n}/{i}"), Arc::new(random_category(&q, n, &mut r))));
                }
            }
        }
        for n in 3..=4 {
            for i in 0..6 {
                out.push((format!("{name}/rand{n}/{i}"), Arc::new(random_category(&q, n, &mut r))));
            }
        }
    }
    out
}

/// `D ⊗ M ⊗ C` for a raw matrix `M`, which is a distributor.
pub fn random_distributor(
    dom: &Arc<EnrichedCategory>,
    cod: &Arc<EnrichedCategory>,
    r: &mut ChaCha8Rng,
) -> EnrichedDistributor {
    let q = dom.base();
    let (n, m) = (dom.len(), cod.len());
    let mat = (0..n * m)
        .map(|k| random_elem(q, dom.typ(k % n), cod.typ(k / n), r))
        .collect();
    let raw = EnrichedDistributor::from_table(dom.clone(), cod.clone(), mat).unwrap();
    dist_compose(&dist_id(cod), &dist_compose(&raw, &dist_id(dom)).unwrap()).unwrap()
}

/// Every distributor `dom ⇸ cod`.
pub fn all_distributors(dom: &Arc<EnrichedCategory>, cod: &Arc<EnrichedCategory>) -> Vec<EnrichedDistributor> {
    let q = dom.base();
    let (n, m) = (dom.len(), cod.len());
    let sizes: Vec<usize> = (0..n * m)
        .map(|k| q.hom(dom.typ(k % n), cod.typ(k / n)).len())
        .collect();
    let mut out = Vec::new();
    let mut digits = vec![0usize; n * m];
    loop {
        let d = EnrichedDistributor::from_table(dom.clone(), cod.clone(), digits.clone()).unwrap();
        if qcat_core::enriched::validate_distributor(&d).ok() {
            out.push(d);
        }
        let mut i = 0;
        while i < digits.len() && digits[i] + 1 == sizes[i] {
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
        digits[i] += 1;
    }
    out
}

pub fn same_base(a: &EnrichedCategory, b: &EnrichedCategory) -> bool {
    Arc::ptr_eq(a.base(), b.base()) || **a.base() == **b.base()
}

/// Every valid functor between two categories, by exhaustive object maps.
pub fn all_functors(c: &Arc<EnrichedCategory>, d: &Arc<EnrichedCategory>) -> Vec<EnrichedFunctor> {
    let (n, m) = (c.len(), d.len());
    let mut out = Vec::new();
    let mut map = vec![0usize; n];
    if m == 0 {
        return out;
    }
    loop {
        let f = EnrichedFunctor::new(c.clone(), d.clone(), map.clone()).unwrap();
        if validate_functor(&f).ok() {
            out.push(f);
        }
        let mut i = 0;
        while i < n && map[i] + 1 == m {
            map[i] = 0;
            i += 1;
        }
        if i == n {
            break;
        }
        map[i] += 1;
    }
    out
}

pub fn subsets(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0u32..1 << n).map(move |m| (0..n).filter(|i| m >> i & 1 == 1).collect())
}

/// `p(y,x) = a_y ∨ a_x + d(y,x)` with `d` the shortest-path quasi-metric of a weighted digraph.
pub fn shaped_space(a: &[ExtValue], w: &[Option<ExtValue>]) -> PartialMetricSpace {
    let n = a.len();
    let mut d: Vec<ExtValue> = (0..n * n)
        .map(|k| {
            if k / n == k % n {
                ExtValue::zero()
            } else {
                w[k].clone().unwrap_or(ExtValue::Inf)
            }
        })
        .collect();
    for m in 0..n {
        for y in 0..n {
            for x in 0..n {
                let via = &d[y * n + m] + &d[m * n + x];
                if via < d[y * n + x] {
                    d[y * n + x] = via;
                }
            }
        }
    }
    let names = (0..n).map(|i| format!("p{i}")).collect();
    PartialMetricSpace::new(names, |y, x| &a[y].join(&a[x]) + &d[y * n + x]).unwrap()
}

/// Every space on `n` points with entries from `vals` that satisfies the axioms.
pub fn all_spaces(n: usize, vals: &[ExtValue]) -> Vec<PartialMetricSpace> {
    let cells = n * n;
    let mut out = Vec::new();
    let mut digits = vec![0usize; cells];
    let names: Vec<String> = (0..n).map(|i| format!("p{i}")).collect();
    loop {
        let t = digits.iter().map(|&i| vals[i].clone()).collect();
        let x = PartialMetricSpace::from_table(names.clone(), t).unwrap();
        if validate_pms(&x).ok() {
            out.push(x);
        }
        let mut i = 0;
        while i < cells && digits[i] + 1 == vals.len() {
            digits[i] = 0;
            i += 1;
        }
        if i == cells {
            break;
        }
        digits[i] += 1;
    }
    out
}

pub fn small_dyadic_spaces() -> Vec<PartialMetricSpace> {
    let three = [v("0"), v("1/2"), v("1")];
    let four = [v("0"), v("1/2"), v("1"), ExtValue::Inf];
    let mut out = all_spaces(1, &four);
    out.extend(all_spaces(2, &four));
    out.extend(all_spaces(3, &three));
    out
}

pub fn finite_sequences(x: &PartialMetricSpace, horizon: usize) -> Vec<SampledSequence<usize>> {
    let n = x.len();
    let mut out = Vec::new();
    for pre in 0..n {
        for a in 0..n {
            out.push(
                SampledSequence::new(horizon, eps(), |k| if k == 0 { pre } else { a })
                    .unwrap()
                    .constant_from(1)
                    .unwrap(),
            );
            for b in 0..n {
                if a != b {
                    out.push(
                        SampledSequence::new(horizon, eps(), |k| {
                            if k == 0 {
                                pre
                            } else if k % 2 == 1 {
                                a
                            } else {
                                b
                            }
                        })
                        .unwrap(),
                    );
                }
            }
        }
    }
    out
}

pub fn finite_fixtures() -> Vec<PartialMetricSpace> {
    let mut out = vec![ab_space(), two_point_metric(), all_ones(), word_space(&['a', 'b'], 2)];
    let t: Vec<ExtValue> = (0..3).map(ExtValue::int).collect();
    out.push(terminal_sample(&t).unwrap());
    let w = |s: &str| Some(v(s));
    out.push(shaped_space(
        &[v("0"), v("1/2"), v("1")],
        &[None, w("1/4"), None, None, None, w("1/8"), w("1/2"), None, None],
    ));
    out
}

/// The completion over the non-zero base, moved back to the full base, plus `1_Z`.
pub fn completion_via_nonzero_part(c: &EnrichedCategory, z: usize) -> EnrichedCategory {
    let q = c.base().clone();
    let keep: Vec<usize> = (0..q.n_objects()).filter(|&a| a != z).collect();
    let sub = Arc::new(q.full_sub(&keep));
    let nz = Arc::new(c.nz_part().restrict_base(sub, &keep).unwrap());
    let cc = cauchy_completion(&nz, 1_000_000).unwrap();
    let k = &cc.category;
    let types = k.types().iter().map(|&t| keep[t]).collect();
    let back = EnrichedCategory::from_table(q.clone(), k.names().to_vec(), types, k.hom_table().to_vec()).unwrap();
    back.sum(&EnrichedCategory::one(q, z)).unwrap()
}

pub fn eps() -> BigRational {
    BigRational::new(1.into(), 1000.into())
}

pub fn v(s: &str) -> ExtValue {
    s.parse().unwrap()
}
