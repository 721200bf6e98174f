//! Acceptance suite: one line per criterion with its verdict, time and budget.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::*;
use num::{BigRational, ToPrimitive};
use qcat_core::corpus::{base_corpus, diamond, l_n, pz_n, q2};
use qcat_core::enriched::*;
use qcat_core::io::Document;
use qcat_core::parmet::*;
use qcat_core::properties::{analyze_properties, check_strong_cauchy_bilateral, is_divisible, zero_objects};
use qcat_core::{validate_quantaloid, Diagonals, FiniteQuantaloid};
use rand::Rng;

fn corpus() -> Vec<(String, FiniteQuantaloid)> {
    let mut out = Vec::new();
    for (name, q) in base_corpus() {
        let d = Diagonals::new(q.clone());
        out.push((name.to_string(), q));
        out.push((format!("D({name})"), (*d.quantaloid).clone()));
    }
    out
}

fn c01_divisibility_flags_agree() {
    for (name, q) in corpus() {
        let rep = analyze_properties(&q);
        let flags: Vec<bool> = (1..=5).map(|i| rep.flag(&format!("divisible-{i}")).unwrap()).collect();
        assert!(flags.iter().all(|&f| f == flags[0]), "{name}: {flags:?}");
    }
}

fn c02_divisibility_transfers() {
    for (name, q) in base_corpus() {
        let d = Diagonals::new(q.clone());
        assert_eq!(is_divisible(&q), is_divisible(d.d()), "{name}");
    }
}

fn c03_residuation() {
    for (name, q) in corpus() {
        let n = q.n_objects();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    for g in q.arrows_in(b, c) {
                        for d in q.arrows_in(a, c) {
                            let l = q.lift(g, d);
                            for x in q.arrows_in(a, b) {
                                assert_eq!(q.leq(q.compose(g, x), d), q.leq(x, l), "{name}");
                            }
                        }
                    }
                    for f in q.arrows_in(a, b) {
                        for d in q.arrows_in(a, c) {
                            let e = q.extend(d, f);
                            for y in q.arrows_in(b, c) {
                                assert_eq!(q.leq(q.compose(y, f), d), q.leq(y, e), "{name}");
                            }
                        }
                    }
                }
            }
        }
    }
}

fn c04_diagonals_are_quantaloids() {
    for (name, q) in base_corpus() {
        let d = Diagonals::new(q);
        let rep = validate_quantaloid(d.d());
        assert!(rep.ok(), "D({name}): {rep}");
    }
}

fn c05_closure_laws() {
    for (name, c) in test_categories() {
        let rep = closure_report(&c, 5).unwrap();
        for law in ["increasing", "monotone", "idempotent"] {
            assert_eq!(rep.flag(law), Some(true), "{name}: {law}");
        }
    }
    let cats = test_categories();
    let small: Vec<&Arc<EnrichedCategory>> = cats
        .iter()
        .filter(|(n, _)| n.contains("rand3") || n.contains("all2"))
        .map(|(_, c)| c)
        .collect();
    let mut checked = 0;
    for c in &small {
        for d in small.iter().filter(|d| same_base(c, d)).take(8) {
            for f in all_functors(c, d) {
                for s in subsets(f.dom.len()) {
                    let lhs = f.image(&closure(&f.dom, &s).unwrap());
                    let rhs = closure(&f.cod, &f.image(&s)).unwrap();
                    assert!(lhs.iter().all(|y| rhs.contains(y)));
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 100, "{checked} functors");
}

fn c06_symmetric_closure() {
    for (name, c) in test_categories() {
        let base = name.split('/').next().unwrap();
        if !["q2", "c3", "l3"].contains(&base) {
            continue;
        }
        assert!(check_strong_cauchy_bilateral(c.base()).unwrap().holds, "{name}");
        let cs = c.symmetrize().unwrap();
        for s in subsets(c.len()) {
            assert_eq!(closure(&c, &s).unwrap(), closure(&cs, &s).unwrap(), "{name}");
        }
    }
    let q = Arc::new(pz_n(3));
    let fam = check_strong_cauchy_bilateral(&q).unwrap().witness.unwrap();
    let c = family_category(&q, &fam).unwrap();
    let i = c.subset(&["i"]).unwrap();
    assert_eq!(closure(&c, &i).unwrap(), c.subset(&["i", "x"]).unwrap());
    assert_eq!(closure(&c.symmetrize().unwrap(), &i).unwrap(), i);
}

fn c07_grounded_additive() {
    let mut checked = 0;
    for (name, c) in test_categories() {
        if !name.starts_with("nz-dl3/") {
            continue;
        }
        let rep = closure_report(&c, 5).unwrap();
        assert_eq!(rep.flag("grounded"), Some(true), "{name}");
        assert_eq!(rep.flag("additive"), Some(true), "{name}");
        checked += 1;
    }
    assert!(checked >= 20);
    let q = Arc::new(diamond());
    let (a, b) = (q.arrow(0, 0, "a").unwrap(), q.arrow(0, 0, "b").unwrap());
    let c = join_witness_category(&q, a, b).unwrap();
    assert_eq!(c.len(), 3);
    let s = |v: &[&str]| closure(&c, &c.subset(v).unwrap()).unwrap();
    let y = c.find("y").unwrap();
    assert!(s(&["x", "z"]).contains(&y));
    assert!(!s(&["x"]).contains(&y) && !s(&["z"]).contains(&y));
}

fn c08_yoneda_closure() {
    for q in [Arc::new(q2()), Arc::new(l_n(2))] {
        for n in 1..=2 {
            for c in all_categories(&q, n) {
                let c = Arc::new(c);
                let pc = presheaf_category(&c, 10_000).unwrap();
                let image = pc.yoneda().unwrap().image(&c.objects().collect::<Vec<_>>());
                let cl = closure(&pc.category, &image).unwrap();
                let cauchy: Vec<usize> = (0..pc.presheaves.len())
                    .filter(|&i| is_cauchy_presheaf(&c, &pc.presheaves[i]))
                    .collect();
                assert_eq!(cl, cauchy);
            }
        }
    }
}

fn c09_completion_splits() {
    let q = dl3();
    let zs = zero_objects(&q);
    assert_eq!(zs.len(), 1);
    let mut r = rng(100);
    let mut fixtures = Vec::new();
    while fixtures.len() < 3 {
        let c = random_category(&q, 3, &mut r);
        if c.len() > c.nz_part().len() || fixtures.len() < 2 {
            fixtures.push(c);
        }
    }
    for c in fixtures {
        let c = Arc::new(c);
        let cc = cauchy_completion(&c, 1_000_000).unwrap();
        assert!(find_isomorphism(&cc.category, &completion_via_nonzero_part(&c, zs[0])).is_some());
    }
}

fn closure_agreement(x: &PartialMetricSpace) {
    let top = x
        .table()
        .iter()
        .filter_map(|v| v.finite().cloned())
        .max()
        .unwrap_or_default();
    let cap = top.floor().to_integer().to_u64().unwrap() + 1;
    let (_, c) = discretize_to_category(x, 8, cap).unwrap();
    let psym = derived_metrics(x).psym;
    for s in subsets(x.len()) {
        let direct = closure_set(x, &s).unwrap();
        assert_eq!(direct, metric_closure(&psym, &s));
        assert_eq!(direct, closure(&c, &s).unwrap());
        for a in x.points() {
            assert_eq!(closure_membership(x, &s, a).unwrap(), direct.contains(&a));
        }
    }
}

fn random_dyadic_space(n: usize, r: &mut rand_chacha::ChaCha8Rng) -> PartialMetricSpace {
    let a: Vec<ExtValue> = (0..n).map(|_| ExtValue::ratio(r.gen_range(0..=8), 8)).collect();
    let w: Vec<Option<ExtValue>> = (0..n * n)
        .map(|_| r.gen_bool(0.7).then(|| ExtValue::ratio(r.gen_range(0..=6), 8)))
        .collect();
    shaped_space(&a, &w)
}

fn c10_metric_closures_agree() {
    for x in small_dyadic_spaces().iter().filter(|x| x.is_finitely_typed()) {
        closure_agreement(x);
    }
    let mut r = rng(33);
    for n in 1..=4 {
        for _ in 0..40 {
            closure_agreement(&random_dyadic_space(n, &mut r));
        }
    }
}

fn c11_extension_sequence() {
    let w = WordSpace::new(&['a', 'b']);
    let s = SampledSequence::new(64, eps(), |n| format!("a{}", "b".repeat(n))).unwrap();
    let c = converges_to(&w, &s, &"a".to_string()).unwrap();
    assert!(!c.holds);
    assert_eq!(c.limits[0].1, Some(v("1/4")));
    assert_eq!(c.limits[1].1, Some(v("1/4")));
    for n in 0..=64 {
        assert_eq!(WordSpace::distance(s.get(n), s.get(n)), ExtValue::dyadic(n as u32 + 2));
    }
    let nested = SampledSequence::new(64, eps(), |n| "a".repeat(n.max(1))).unwrap();
    let verdict = seq_cauchy(&w, &nested).unwrap();
    assert!(verdict.holds);
    let ty = verdict.limits[0].1.clone().unwrap();
    assert!(ty <= v("1/1000"), "{ty}");
    let words = w.words(12);
    assert_eq!(words.len(), 8190);
    assert!((0..12).all(|n| words.contains(s.get(n))));
}

fn c12_cauchy_pairs() {
    let mut seen = 0;
    for x in finite_fixtures() {
        for s in finite_sequences(&x, 16) {
            if !seq_cauchy(&x, &s).unwrap().holds {
                continue;
            }
            seen += 1;
            let c = seq_to_cauchy_pair(&x, &s).unwrap();
            assert!(validate_cauchy_pair(&x, &c).ok());
            let t = cauchy_pair_to_sequence(&x, &c, 16, eps()).unwrap();
            assert!(seq_cauchy(&x, &t).unwrap().holds);
            assert!(seq_equivalent(&x, &s, &t).unwrap().holds);
        }
    }
    assert!(seen >= 50);
}

fn c13_hausdorff() {
    for x in small_dyadic_spaces() {
        let h = hausdorff(&x).unwrap();
        assert!(validate_pms(&h).ok(), "{}", validate_pms(&h));
    }
    let x = ab_space();
    let sets = vec![
        x.subset(&["a"]).unwrap(),
        x.subset(&["a", "b"]).unwrap(),
        x.subset(&["b"]).unwrap(),
    ];
    let h = subset_space(&x, &sets).unwrap();
    assert_eq!(
        (h.p(0, 1), h.typ(1), h.p(1, 2), h.p(0, 2)),
        (&v("0"), &v("1"), &v("1"), &v("1"))
    );
    let rep = hausdorff_violations(&x, &sets).unwrap();
    let w = rep.witness("triangle").unwrap();
    assert_eq!((w.point("z"), w.point("y"), w.point("x")), (Some(0), Some(1), Some(2)));
    assert_eq!(w.value("sum"), Some(&v("0")));
}

fn c14_exponentiable() {
    let step = BigRational::new(1.into(), 2.into());
    let cap = BigRational::from_integer(3.into());
    for x in [PartialMetricSpace::empty(), infinite_point()] {
        assert_eq!(
            exponentiable(&x, &step, &cap).unwrap(),
            ExponentialVerdict::ExponentiableExact
        );
    }
    match exponentiable(&two_point_metric(), &step, &cap).unwrap() {
        ExponentialVerdict::NotExponentiable(w) => assert_eq!((w.u, w.v, w.w), (v("1"), v("1"), v("1"))),
        other => panic!("{other:?}"),
    }
}

fn cli_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn cli_goldens() {
    let golden = cli_root().join("tests/golden");
    let mut n = 0;
    for entry in std::fs::read_dir(golden.join("fixtures")).unwrap() {
        let path = entry.unwrap().path();
        let name = path.file_stem().unwrap().to_str().unwrap().to_string();
        let o = Command::new(env!("CARGO_BIN_EXE_qcat"))
            .args(["fixtures", &name])
            .output()
            .unwrap();
        let want = std::fs::read_to_string(&path).unwrap();
        assert_eq!(String::from_utf8(o.stdout).unwrap(), want, "{name}");
        assert_eq!(Document::parse(&want).unwrap().emit(), want, "{name}");
        n += 1;
    }
    assert!(n >= 13);
}

struct Criterion {
    id: u32,
    title: &'static str,
    budget_ms: u64,
    run: fn(),
}

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "divisibility conditions agree on the corpus",
        budget_ms: 5_000,
        run: c01_divisibility_flags_agree,
    },
    Criterion {
        id: 2,
        title: "divisible(Q) iff divisible(D(Q))",
        budget_ms: 5_000,
        run: c02_divisibility_transfers,
    },
    Criterion {
        id: 3,
        title: "residuation adjunction, exhaustive",
        budget_ms: 10_000,
        run: c03_residuation,
    },
    Criterion {
        id: 4,
        title: "D(Q) passes quantaloid validation",
        budget_ms: 10_000,
        run: c04_diagonals_are_quantaloids,
    },
    Criterion {
        id: 5,
        title: "closure laws and functoriality",
        budget_ms: 20_000,
        run: c05_closure_laws,
    },
    Criterion {
        id: 6,
        title: "cl = cl_s on q2/c3/l3, separated over pz3",
        budget_ms: 5_000,
        run: c06_symmetric_closure,
    },
    Criterion {
        id: 7,
        title: "grounded additive closures, diamond counterexample",
        budget_ms: 5_000,
        run: c07_grounded_additive,
    },
    Criterion {
        id: 8,
        title: "closure of the Yoneda image is the Cauchy presheaves",
        budget_ms: 30_000,
        run: c08_yoneda_closure,
    },
    Criterion {
        id: 9,
        title: "Cauchy completion splits off the zero object",
        budget_ms: 30_000,
        run: c09_completion_splits,
    },
    Criterion {
        id: 10,
        title: "three closures on dyadic spaces agree",
        budget_ms: 20_000,
        run: c10_metric_closures_agree,
    },
    Criterion {
        id: 11,
        title: "extension sequence rejected, nested sequence accepted",
        budget_ms: 5_000,
        run: c11_extension_sequence,
    },
    Criterion {
        id: 12,
        title: "Cauchy sequences round-trip through Cauchy pairs",
        budget_ms: 10_000,
        run: c12_cauchy_pairs,
    },
    Criterion {
        id: 13,
        title: "Hausdorff on typed subsets, untyped violation",
        budget_ms: 10_000,
        run: c13_hausdorff,
    },
    Criterion {
        id: 14,
        title: "exponentiability verdicts and witness",
        budget_ms: 5_000,
        run: c14_exponentiable,
    },
];

const TOTAL_BUDGET: Duration = Duration::from_secs(120);

fn timed(f: fn()) -> (bool, Duration) {
    let start = Instant::now();
    let ok = catch_unwind(AssertUnwindSafe(f)).is_ok();
    (ok, start.elapsed())
}

fn line(id: u32, ok: bool, title: &str, took: Duration, budget: Duration) {
    println!(
        "criterion {id:>2}  {}  {title:<55} {:>7} ms  (budget {} ms)",
        if ok { "PASS" } else { "FAIL" },
        took.as_millis(),
        budget.as_millis()
    );
}

fn main() -> ExitCode {
    let mut failures = 0;
    let mut total = Duration::ZERO;
    for c in CRITERIA {
        let budget = Duration::from_millis(c.budget_ms);
        let (ok, took) = timed(c.run);
        let ok = ok && took < budget;
        total += took;
        failures += usize::from(!ok);
        line(c.id, ok, c.title, took, budget);
    }
    let (ok, took) = timed(cli_goldens);
    total += took;
    let ok = ok && total < TOTAL_BUDGET;
    failures += usize::from(!ok);
    line(15, ok, "whole suite including CLI goldens", total, TOTAL_BUDGET);
    if failures == 0 {
        println!("acceptance: all {} criteria passed", CRITERIA.len() + 1);
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failures} criteria failed");
        ExitCode::FAILURE
    }
}
