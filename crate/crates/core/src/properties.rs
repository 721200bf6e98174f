//! Algebraic properties of finite quantaloids: integrality, the five
//! divisibility conditions, local localicity, join-irreducible identities,
//! symmetry, zero objects and (strong) Cauchy-bilaterality.

use crate::diagonals::is_diagonal_unchecked;
use crate::error::{QcatError, Result};
use crate::quantaloid::{Arrow, FiniteQuantaloid};
use crate::report::{PropertyReport, Witness, WitnessValue};

fn w1(q: &FiniteQuantaloid, role: &str, f: Arrow) -> Witness {
    let (v, t) = q.wa(f);
    Witness::new().with(role, v, t)
}

fn add(q: &FiniteQuantaloid, w: Witness, role: &str, f: Arrow) -> Witness {
    let (v, t) = q.wa(f);
    w.with(role, v, t)
}

fn object_witness(q: &FiniteQuantaloid, a: usize) -> Witness {
    Witness::new().with("object", WitnessValue::Object(a), q.object_name(a))
}

fn parallel_pairs(q: &FiniteQuantaloid) -> impl Iterator<Item = (Arrow, Arrow)> + '_ {
    let n = q.n_objects();
    (0..n).flat_map(move |a| {
        (0..n).flat_map(move |b| {
            q.arrows_in(a, b)
                .flat_map(move |d| q.arrows_in(a, b).map(move |e| (d, e)))
        })
    })
}

pub fn integral_violation(q: &FiniteQuantaloid) -> Option<Witness> {
    (0..q.n_objects())
        .find(|&a| q.id(a) != q.top(a, a))
        .map(|a| object_witness(q, a))
}

/// Def. 10 (1): `d ≤ e` iff `e∘x = d = y∘e` for some endo-arrows `x`, `y`.
pub fn divisible1_violation(q: &FiniteQuantaloid) -> Option<Witness> {
    parallel_pairs(q).find_map(|(d, e)| {
        let factor = q.arrows_in(d.src, d.src).any(|x| q.compose(e, x) == d)
            && q.arrows_in(d.tgt, d.tgt).any(|y| q.compose(y, e) == d);
        (q.leq(d, e) != factor).then(|| add(q, w1(q, "d", d), "e", e))
    })
}

/// Def. 10 (2): `d ≤ e` iff `e∘(e↘d) = d = (d↙e)∘e`.
pub fn divisible2_violation(q: &FiniteQuantaloid) -> Option<Witness> {
    parallel_pairs(q).find_map(|(d, e)| {
        let split = q.compose(e, q.lift(e, d)) == d && q.compose(q.extend(d, e), e) == d;
        (q.leq(d, e) != split).then(|| add(q, w1(q, "d", d), "e", e))
    })
}

/// Def. 10 (3): `e∘(e↘d) = d∧e = (d↙e)∘e`.
pub fn divisible3_violation(q: &FiniteQuantaloid) -> Option<Witness> {
    parallel_pairs(q).find_map(|(d, e)| {
        let m = q.meet(d, e);
        let l = q.compose(e, q.lift(e, d));
        let r = q.compose(q.extend(d, e), e);
        (l != m || r != m).then(|| {
            let w = add(q, w1(q, "d", d), "e", e);
            let w = add(q, w, "e∘(e↘d)", l);
            add(q, w, "(d↙e)∘e", r)
        })
    })
}

/// Def. 10 (4): the diagonals from `e` to `e` are exactly `↓e`.
pub fn divisible4_violation(q: &FiniteQuantaloid) -> Option<Witness> {
    parallel_pairs(q)
        .find_map(|(x, e)| (is_diagonal_unchecked(q, e, e, x) != q.leq(x, e)).then(|| add(q, w1(q, "e", e), "x", x)))
}

/// Def. 10 (5): the diagonals from `d` to `e` are exactly `↓(d∧e)`.
pub fn divisible5_violation(q: &FiniteQuantaloid) -> Option<Witness> {
    parallel_pairs(q).find_map(|(d, e)| {
        let m = q.meet(d, e);
        q.arrows_in(d.src, d.tgt)
            .find(|&x| is_diagonal_unchecked(q, d, e, x) != q.leq(x, m))
            .map(|x| add(q, add(q, w1(q, "d", d), "e", e), "x", x))
    })
}

pub fn locally_localic_violation(q: &FiniteQuantaloid) -> Option<Witness> {
    let n = q.n_objects();
    (0..n * n).find_map(|k| {
        let (a, b) = (k / n, k % n);
        q.hom(a, b).distributivity_violation().map(|(x, y, z)| {
            let w = w1(q, "a", Arrow::new(a, b, x));
            let w = add(q, w, "b", Arrow::new(a, b, y));
            add(q, w, "c", Arrow::new(a, b, z))
        })
    })
}

pub fn zero_objects(q: &FiniteQuantaloid) -> Vec<usize> {
    (0..q.n_objects()).filter(|&a| q.id(a) == q.bottom(a, a)).collect()
}

/// For each object: `1_A ≠ ⊥` and `1_A ≤ f ∨ g` forces `1_A ≤ f` or `1_A ≤ g`.
pub fn join_irreducible_violation(q: &FiniteQuantaloid) -> Option<Witness> {
    (0..q.n_objects()).find_map(|a| {
        let one = q.id(a);
        if one == q.bottom(a, a) {
            return Some(object_witness(q, a).text("reason", "identity is bottom"));
        }
        q.arrows_in(a, a).find_map(|f| {
            q.arrows_in(a, a)
                .find(|&g| q.leq(one, q.join(f, g)) && !q.leq(one, f) && !q.leq(one, g))
                .map(|g| add(q, add(q, object_witness(q, a), "f", f), "g", g))
        })
    })
}

/// Symmetry in the sense that the identity on arrows is an involution:
/// `hom(A,B) = hom(B,A)` and `g∘f = f∘g` read across the swapped homs.
pub fn symmetric_violation(q: &FiniteQuantaloid) -> Option<Witness> {
    let n = q.n_objects();
    for a in 0..n {
        for b in 0..n {
            if q.hom(a, b) != q.hom(b, a) {
                return Some(
                    Witness::new()
                        .with("object", WitnessValue::Object(a), q.object_name(a))
                        .with("other", WitnessValue::Object(b), q.object_name(b))
                        .text("reason", "hom-lattices differ"),
                );
            }
        }
    }
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for f in q.arrows_in(a, b) {
                    for g in q.arrows_in(b, c) {
                        let gf = q.compose(g, f);
                        let fg = q.compose(Arrow::new(b, a, f.elem), Arrow::new(c, b, g.elem));
                        if gf.elem != fg.elem {
                            return Some(add(q, w1(q, "f", f), "g", g));
                        }
                    }
                }
            }
        }
    }
    None
}

pub fn is_symmetric(q: &FiniteQuantaloid) -> bool {
    symmetric_violation(q).is_none()
}

pub fn is_divisible(q: &FiniteQuantaloid) -> bool {
    divisible3_violation(q).is_none()
}

/// All flags of the property analysis. Assumes the quantaloid validates.
pub fn analyze_properties(q: &FiniteQuantaloid) -> PropertyReport {
    let mut rep = PropertyReport::new();
    rep.record("integral", integral_violation(q));
    rep.record("divisible-1", divisible1_violation(q));
    rep.record("divisible-2", divisible2_violation(q));
    rep.record("divisible-3", divisible3_violation(q));
    rep.record("divisible-4", divisible4_violation(q));
    rep.record("divisible-5", divisible5_violation(q));
    rep.record("locally-localic", locally_localic_violation(q));
    rep.record("identities-join-irreducible", join_irreducible_violation(q));
    rep.record("symmetric", symmetric_violation(q));
    let zs: Vec<&str> = zero_objects(q).into_iter().map(|a| q.object_name(a)).collect();
    rep.note("zero-objects", format!("[{}]", zs.join(", ")));
    rep
}

/// A family `(f_i: X → Y_i, g_i: Y_i → X)` at a fixed object `X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Family {
    pub object: usize,
    pub pairs: Vec<(Arrow, Arrow)>,
}

impl Family {
    pub fn premise(&self, q: &FiniteQuantaloid) -> Arrow {
        let x = self.object;
        q.join_iter(x, x, self.pairs.iter().map(|&(f, g)| q.compose(g, f)))
    }

    pub fn conclusion(&self, q: &FiniteQuantaloid) -> Arrow {
        let x = self.object;
        q.join_iter(x, x, self.pairs.iter().map(|&(f, g)| sym_term(q, f, g)))
    }

    pub fn to_witness(&self, q: &FiniteQuantaloid) -> Witness {
        let text: Vec<String> = self
            .pairs
            .iter()
            .map(|&(f, g)| format!("({}, {})", q.arrow_name(f), q.arrow_name(g)))
            .collect();
        Witness::new()
            .with("object", WitnessValue::Object(self.object), q.object_name(self.object))
            .with(
                "family",
                WitnessValue::Family(self.pairs.clone()),
                format!("{{{}}}", text.join(", ")),
            )
    }

    pub fn from_witness(w: &Witness) -> Option<Family> {
        Some(Family {
            object: w.object("object")?,
            pairs: w.family("family")?.to_vec(),
        })
    }
}

/// `(g ∧ fᵒ) ∘ (gᵒ ∧ f)` for `f: X → Y`, `g: Y → X`.
fn sym_term(q: &FiniteQuantaloid, f: Arrow, g: Arrow) -> Arrow {
    let fo = q.involute(f).expect("involution checked");
    let go = q.involute(g).expect("involution checked");
    q.compose(q.meet(g, fo), q.meet(go, f))
}

/// Premise `1_X ≤ ⋁ g_i∘f_i` holds but the conclusion `1_X ≤ ⋁ (g_i∧f_iᵒ)∘(g_iᵒ∧f_i)` fails.
pub fn violates_strong(q: &FiniteQuantaloid, fam: &Family) -> bool {
    let one = q.id(fam.object);
    q.leq(one, fam.premise(q)) && !q.leq(one, fam.conclusion(q))
}

/// The three-hypothesis form: additionally `f_k∘g_j∘f_j ≤ f_k` and `g_j∘f_j∘g_k ≤ g_k`.
pub fn violates_ordinary(q: &FiniteQuantaloid, fam: &Family) -> bool {
    violates_strong(q, fam)
        && fam
            .pairs
            .iter()
            .all(|&(fj, gj)| fam.pairs.iter().all(|&(fk, gk)| compatible(q, (fj, gj), (fk, gk))))
}

/// `f_k∘g_j∘f_j ≤ f_k` and `g_j∘f_j∘g_k ≤ g_k`.
fn compatible(q: &FiniteQuantaloid, (fj, gj): (Arrow, Arrow), (fk, gk): (Arrow, Arrow)) -> bool {
    let gfj = q.compose(gj, fj);
    q.leq(q.compose(fk, gfj), fk) && q.leq(q.compose(gfj, gk), gk)
}

/// All pairs `(f: X → Y, g: Y → X)` over every object `Y`.
pub fn pairs_at(q: &FiniteQuantaloid, x: usize) -> Vec<(Arrow, Arrow)> {
    let mut out = Vec::new();
    for y in 0..q.n_objects() {
        for f in q.arrows_in(x, y) {
            for g in q.arrows_in(y, x) {
                out.push((f, g));
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BilateralVerdict {
    pub holds: bool,
    /// False when the search was cut off by a family-size cap.
    pub exact: bool,
    pub witness: Option<Family>,
}

/// Decides strong Cauchy-bilaterality. For each `X` and each `v` with
/// `1_X ≰ v`, the largest family whose conclusion stays below `v` is
/// collected; the property fails iff its premise reaches `1_X`. A failing
/// family is then shrunk greedily to a minimal one.
pub fn check_strong_cauchy_bilateral(q: &FiniteQuantaloid) -> Result<BilateralVerdict> {
    if !q.has_involution() {
        return Err(QcatError::MissingInvolution);
    }
    for x in 0..q.n_objects() {
        let one = q.id(x);
        let pairs = pairs_at(q, x);
        let terms: Vec<Arrow> = pairs.iter().map(|&(f, g)| sym_term(q, f, g)).collect();
        for v in q.arrows_in(x, x).filter(|&v| !q.leq(one, v)) {
            let below: Vec<(Arrow, Arrow)> = pairs
                .iter()
                .zip(&terms)
                .filter(|(_, &t)| q.leq(t, v))
                .map(|(&p, _)| p)
                .collect();
            let mut fam = Family {
                object: x,
                pairs: below,
            };
            if !q.leq(one, fam.premise(q)) {
                continue;
            }
            for i in (0..fam.pairs.len()).rev() {
                let removed = fam.pairs.remove(i);
                if !q.leq(one, fam.premise(q)) {
                    fam.pairs.insert(i, removed);
                }
            }
            return Ok(BilateralVerdict {
                holds: false,
                exact: true,
                witness: Some(fam),
            });
        }
    }
    Ok(BilateralVerdict {
        holds: true,
        exact: true,
        witness: None,
    })
}

/// Searches for a family of at most `cap` distinct pairs violating the
/// three-hypothesis implication. Exact when `cap` covers all pairs at every object.
pub fn check_cauchy_bilateral(q: &FiniteQuantaloid, cap: usize) -> Result<BilateralVerdict> {
    if !q.has_involution() {
        return Err(QcatError::MissingInvolution);
    }
    if cap == 0 {
        return Err(QcatError::InvalidArgument("family cap must be at least 1".into()));
    }
    let mut exact = true;
    for x in 0..q.n_objects() {
        let one = q.id(x);
        let pairs: Vec<(Arrow, Arrow)> = pairs_at(q, x).into_iter().filter(|&p| compatible(q, p, p)).collect();
        if cap < pairs_at(q, x).len() {
            exact = false;
        }
        let m = pairs.len();
        let compat: Vec<Vec<bool>> = (0..m)
            .map(|i| {
                (0..m)
                    .map(|j| compatible(q, pairs[i], pairs[j]) && compatible(q, pairs[j], pairs[i]))
                    .collect()
            })
            .collect();
        let premise: Vec<Arrow> = pairs.iter().map(|&(f, g)| q.compose(g, f)).collect();
        let concl: Vec<Arrow> = pairs.iter().map(|&(f, g)| sym_term(q, f, g)).collect();
        let mut stack: Vec<usize> = Vec::new();
        if let Some(found) = search_cliques(
            q,
            one,
            cap,
            &compat,
            &premise,
            &concl,
            0,
            q.bottom(x, x),
            q.bottom(x, x),
            &mut stack,
        ) {
            let mut fam = Family {
                object: x,
                pairs: found.into_iter().map(|i| pairs[i]).collect(),
            };
            for i in (0..fam.pairs.len()).rev() {
                let removed = fam.pairs.remove(i);
                if fam.pairs.is_empty() || !q.leq(one, fam.premise(q)) {
                    fam.pairs.insert(i, removed);
                }
            }
            return Ok(BilateralVerdict {
                holds: false,
                exact: true,
                witness: Some(fam),
            });
        }
    }
    Ok(BilateralVerdict {
        holds: true,
        exact,
        witness: None,
    })
}

#[allow(clippy::too_many_arguments)]
fn search_cliques(
    q: &FiniteQuantaloid,
    one: Arrow,
    cap: usize,
    compat: &[Vec<bool>],
    premise: &[Arrow],
    concl: &[Arrow],
    start: usize,
    prem_acc: Arrow,
    concl_acc: Arrow,
    stack: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if !stack.is_empty() && q.leq(one, prem_acc) {
        return Some(stack.clone());
    }
    if stack.len() == cap {
        return None;
    }
    for i in start..premise.len() {
        if !stack.iter().all(|&j| compat[i][j]) {
            continue;
        }
        let c = q.join(concl_acc, concl[i]);
        // a conclusion that already reaches the identity stays there for all supersets
        if q.leq(one, c) {
            continue;
        }
        stack.push(i);
        let r = search_cliques(
            q,
            one,
            cap,
            compat,
            premise,
            concl,
            i + 1,
            q.join(prem_acc, premise[i]),
            c,
            stack,
        );
        stack.pop();
        if r.is_some() {
            return r;
        }
    }
    None
}

/// The full sub-quantaloid on the objects whose identity is not the bottom.
pub fn non_zero_part(q: &FiniteQuantaloid) -> FiniteQuantaloid {
    let keep: Vec<usize> = (0..q.n_objects()).filter(|&a| q.id(a) != q.bottom(a, a)).collect();
    q.full_sub(&keep)
}

/// `(Q, ∧, 1)` for a commutative divisible quantale `Q`.
type ViolationCheck = fn(&FiniteQuantaloid) -> Option<Witness>;

pub fn underlying_locale(q: &FiniteQuantaloid) -> Result<FiniteQuantaloid> {
    if !q.is_one_object() {
        return Err(QcatError::Precondition("not a one-object quantaloid".into()));
    }
    let checks: [(&str, ViolationCheck); 6] = [
        ("symmetric", symmetric_violation),
        ("divisible-1", divisible1_violation),
        ("divisible-2", divisible2_violation),
        ("divisible-3", divisible3_violation),
        ("divisible-4", divisible4_violation),
        ("divisible-5", divisible5_violation),
    ];
    for (name, check) in checks {
        if let Some(w) = check(q) {
            return Err(QcatError::Precondition(format!("{name} fails: {w}")));
        }
    }
    let h = q.hom(0, 0).clone();
    let unit = q.id(0).elem;
    let hm = h.clone();
    let id = |_: usize, _: usize, f: usize| f;
    FiniteQuantaloid::from_fn(
        q.objects().to_vec(),
        |_, _| h.clone(),
        |_, _, _, g, f| hm.meet(g, f),
        |_| unit,
        Some(&id),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::*;

    #[test]
    fn pz2_divisibility_witness() {
        let q = pz_n(2);
        let rep = analyze_properties(&q);
        assert_eq!(rep.flag("divisible-3"), Some(false));
        let d = q.arrow(0, 0, "{g}").unwrap();
        let e = q.arrow(0, 0, "{e,g}").unwrap();
        assert_eq!(q.elem_name(q.compose(e, q.lift(e, d))), "{}");
        assert_eq!(q.meet(d, e), d);
    }

    #[test]
    fn l3_is_divisible() {
        let rep = analyze_properties(&l_n(3));
        for f in [
            "integral",
            "divisible-1",
            "divisible-2",
            "divisible-3",
            "divisible-4",
            "divisible-5",
            "identities-join-irreducible",
        ] {
            assert_eq!(rep.flag(f), Some(true), "{f}");
        }
    }

    #[test]
    fn pz3_strong_bilaterality_fails_with_singletons() {
        let q = pz_n(3);
        let v = check_strong_cauchy_bilateral(&q).unwrap();
        assert!(!v.holds);
        let fam = v.witness.unwrap();
        assert!(violates_strong(&q, &fam));
        assert_eq!(fam.pairs.len(), 1);
        let (f, g) = fam.pairs[0];
        assert_eq!((q.elem_name(f), q.elem_name(g)), ("{g}", "{g2}"));
    }

    #[test]
    fn underlying_locale_of_pz2_is_refused() {
        assert!(matches!(underlying_locale(&pz_n(2)), Err(QcatError::Precondition(_))));
    }

    #[test]
    fn trivial_quantale_has_empty_nonzero_part() {
        assert_eq!(non_zero_part(&trivial()).n_objects(), 0);
        assert_eq!(non_zero_part(&q2()), q2());
    }
}
