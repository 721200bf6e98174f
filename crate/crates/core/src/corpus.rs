//! Small named quantales used as fixtures throughout the crate.
//!
//! Every fixture has a single object `*` and carries the identity involution
//! (all of them are commutative).

use crate::lattice::HomLattice;
use crate::quantaloid::FiniteQuantaloid;

fn names(v: impl IntoIterator<Item = String>) -> Vec<String> {
    v.into_iter().collect()
}

fn quantale(carrier: HomLattice, mul: impl Fn(usize, usize) -> usize, unit: usize) -> FiniteQuantaloid {
    let id = |_: usize, _: usize, f: usize| f;
    FiniteQuantaloid::from_fn(
        vec!["*".to_string()],
        |_, _| carrier.clone(),
        |_, _, _, g, f| mul(g, f),
        |_| unit,
        Some(&id),
    )
    .expect("fixture tables are well formed")
}

/// A locale given by a lattice: multiplication is meet, unit is top.
pub fn locale(carrier: HomLattice) -> FiniteQuantaloid {
    let top = carrier.top();
    let l = carrier.clone();
    quantale(carrier, move |a, b| l.meet(a, b), top)
}

/// The two-element Boolean algebra `{0 < 1}` with `∘ = ∧`.
pub fn q2() -> FiniteQuantaloid {
    locale(HomLattice::chain(["0", "1"]))
}

/// The three-element chain `0 < 1 < 2` as a locale.
pub fn c3() -> FiniteQuantaloid {
    locale(HomLattice::chain(["0", "1", "2"]))
}

/// The four-element Boolean lattice `0 < a, b < 1` as a locale; `1 = a ∨ b` is join-reducible.
pub fn diamond() -> FiniteQuantaloid {
    let l = HomLattice::from_fn(names(["0", "a", "b", "1"].map(String::from)), |i, j| {
        i == j || i == 0 || j == 3
    });
    locale(l)
}

/// Truncated addition on `{0, …, n-1}`: quantale order is the reverse of the
/// numeric order, `a ∘ b = min(a + b, n - 1)`, unit `0`.
pub fn l_n(n: usize) -> FiniteQuantaloid {
    assert!(n >= 1, "L_n needs at least one element");
    let carrier = HomLattice::from_fn(names((0..n).map(|i| i.to_string())), |i, j| i >= j);
    quantale(carrier, move |a, b| (a + b).min(n - 1), 0)
}

/// The powerset quantale of the cyclic group of order `n` (complex product, unit `{e}`).
pub fn pz_n(n: usize) -> FiniteQuantaloid {
    assert!((1..=6).contains(&n), "cyclic group order out of range");
    let letter = |k: usize| match k {
        0 => "e".to_string(),
        1 => "g".to_string(),
        k => format!("g{k}"),
    };
    let subsets = 1usize << n;
    let name = |m: usize| {
        let parts: Vec<String> = (0..n).filter(|k| m >> k & 1 == 1).map(letter).collect();
        format!("{{{}}}", parts.join(","))
    };
    let carrier = HomLattice::from_fn(names((0..subsets).map(name)), |i, j| i & !j == 0);
    let mul = move |a: usize, b: usize| {
        let mut out = 0usize;
        for i in (0..n).filter(|i| a >> i & 1 == 1) {
            for j in (0..n).filter(|j| b >> j & 1 == 1) {
                out |= 1 << ((i + j) % n);
            }
        }
        out
    };
    quantale(carrier, mul, 1)
}

/// The one-element quantale, in which `0 = 1`.
pub fn trivial() -> FiniteQuantaloid {
    quantale(HomLattice::chain(["0"]), |_, _| 0, 0)
}

/// The named corpus used by the property sweeps.
pub fn base_corpus() -> Vec<(&'static str, FiniteQuantaloid)> {
    vec![
        ("q2", q2()),
        ("c3", c3()),
        ("diamond", diamond()),
        ("l2", l_n(2)),
        ("l3", l_n(3)),
        ("l4", l_n(4)),
        ("pz2", pz_n(2)),
        ("pz3", pz_n(3)),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantaloid::validate_quantaloid;

    #[test]
    fn corpus_is_valid() {
        for (name, q) in base_corpus() {
            let rep = validate_quantaloid(&q);
            assert!(rep.ok(), "{name}: {rep}");
        }
        assert!(validate_quantaloid(&trivial()).ok());
    }

    #[test]
    fn pz3_names() {
        let q = pz_n(3);
        assert_eq!(q.hom(0, 0).name(1), "{e}");
        assert_eq!(q.hom(0, 0).name(6), "{g,g2}");
        let g = q.arrow(0, 0, "{g}").unwrap();
        let g2 = q.arrow(0, 0, "{g2}").unwrap();
        assert_eq!(q.elem_name(q.compose(g2, g)), "{e}");
    }
}
