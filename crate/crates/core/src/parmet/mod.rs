//! Generalised partial metric spaces with exact distances.

mod completion;
mod exponential;
mod ext;
mod generators;
mod hausdorff;
mod sequence;
mod space;

pub use completion::{cauchy_pairs, complete_finite, Completion};
pub use exponential::{exponentiable, ExponentialVerdict, ExponentialWitness, MAX_EXPONENTIAL_WORK};
pub use ext::ExtValue;
pub use generators::{
    ab_space, all_ones, diagonals_of_chain, discretize_to_category, infinite_point, terminal_sample, two_point_metric,
    word_space, WordSpace,
};
pub use hausdorff::{
    hausdorff, hausdorff_distance, hausdorff_violations, subset_name, subset_space, typed_subsets, MAX_TYPE_CLASS,
};
pub use sequence::{
    cauchy_pair_to_sequence, converges_to, pair_infimum, seq_cauchy, seq_equivalent, seq_to_cauchy_pair, seq_type,
    validate_cauchy_pair, CauchyPair, Certainty, DistanceSpace, Limit, SampledSequence, SeqVerdict,
};
pub use space::{
    closure_membership, closure_set, closure_term, derived_metrics, metric_closure, validate_metric, validate_pms,
    DerivedMetrics, PartialMetricSpace,
};

#[cfg(test)]
mod tests {
    use num::{BigRational, Signed};

    use super::*;
    use crate::enriched::closure;

    fn eps() -> BigRational {
        BigRational::new(1.into(), 1000.into())
    }

    fn v(s: &str) -> ExtValue {
        s.parse().unwrap()
    }

    #[test]
    fn ab_space_and_derived_metrics() {
        let x = ab_space();
        assert!(validate_pms(&x).ok());
        let d = derived_metrics(&x);
        assert_eq!(*d.p0.p(0, 1), v("1"));
        assert_eq!(*d.p0.p(1, 0), v("0"));
        assert_eq!(*d.psym.p(0, 1), v("1"));
        for m in [&d.p0, &d.p1, &d.pk] {
            assert!(validate_metric(m, false).ok());
        }
        assert!(validate_metric(&d.psym, true).ok());
    }

    #[test]
    fn first_axiom_violation() {
        let x = PartialMetricSpace::new(vec!["a".into(), "b".into()], |y, a| match (y, a) {
            (0, 0) => v("0"),
            (1, 1) => v("1"),
            _ => v("1/2"),
        })
        .unwrap();
        let rep = validate_pms(&x);
        assert_eq!(rep.flag("self-distance-bound"), Some(false));
    }

    #[test]
    fn word_space_values() {
        let x = word_space(&['a', 'b'], 2);
        let (a, ab, b) = (x.find("a").unwrap(), x.find("ab").unwrap(), x.find("b").unwrap());
        assert_eq!(*x.p(a, a), v("1/4"));
        assert_eq!(*x.p(a, ab), v("1/4"));
        assert_eq!(*x.p(a, b), v("1/2"));
        assert!(validate_pms(&x).ok());
    }

    #[test]
    fn terminal_sample_symmetric_distance() {
        let x = terminal_sample(&[v("0"), v("1"), v("2")]).unwrap();
        assert_eq!(*x.p(1, 2), v("2"));
        let d = derived_metrics(&x);
        for a in x.points() {
            for b in x.points() {
                let (s, t) = (x.typ(a).finite().unwrap(), x.typ(b).finite().unwrap());
                assert_eq!(*d.psym.p(a, b), ExtValue::Fin((s - t).abs()));
            }
        }
    }

    #[test]
    fn closure_examples() {
        let x = ab_space();
        assert!(!closure_membership(&x, &[0], 1).unwrap());
        assert!(!closure_membership(&x, &[1], 0).unwrap());
        assert!(closure_membership(&all_ones(), &[1], 0).unwrap());
        assert!(closure_membership(&infinite_point(), &[0], 0).is_err());
    }

    #[test]
    fn discretized_closure_agrees() {
        let x = ab_space();
        let (_, c) = discretize_to_category(&x, 1, 2).unwrap();
        assert!(crate::enriched::validate_category(&c).ok());
        assert_eq!(closure(&c, &[0]).unwrap(), closure_set(&x, &[0]).unwrap());
    }

    #[test]
    fn extension_sequence_is_not_convergent() {
        let ws = WordSpace::new(&['a', 'b']);
        let s = SampledSequence::new(64, eps(), |n| format!("a{}", "b".repeat(n))).unwrap();
        let v = converges_to(&ws, &s, &"a".to_string()).unwrap();
        assert!(!v.holds);
        assert_eq!(v.limits[0].1, Some(ExtValue::ratio(1, 4)));
        assert_eq!(v.limits[1].1, Some(ExtValue::ratio(1, 4)));
        assert!(v.limits[2].1.as_ref().unwrap() < &ExtValue::ratio(1, 1000));
        let y = SampledSequence::new(64, eps(), |n| "a".repeat(n)).unwrap();
        let c = seq_cauchy(&ws, &y).unwrap();
        assert!(c.holds);
        assert!(within_eps(
            &seq_type(&ws, &y).unwrap().value.unwrap(),
            &ExtValue::zero()
        ));
    }

    fn within_eps(a: &ExtValue, b: &ExtValue) -> bool {
        (a.finite().unwrap() - b.finite().unwrap()) <= eps()
    }

    #[test]
    fn constant_sequence() {
        let x = ab_space();
        let s = SampledSequence::constant(1, 4, eps()).unwrap();
        assert_eq!(seq_type(&x, &s).unwrap().value, Some(v("1")));
        let c = converges_to(&x, &s, &1).unwrap();
        assert!(c.holds && c.certainty.is_exact());
        let pair = seq_to_cauchy_pair(&x, &s).unwrap();
        assert_eq!(pair, CauchyPair::representable(&x, 1));
    }

    #[test]
    fn alternating_sequences() {
        let s = SampledSequence::new(20, eps(), |n| n % 2).unwrap();
        let pair = seq_to_cauchy_pair(&all_ones(), &s).unwrap();
        assert_eq!(pair.q, v("1"));
        assert!(pair.phi.iter().chain(&pair.psi).all(|p| *p == v("1")));
        assert!(validate_cauchy_pair(&all_ones(), &pair).ok());
        assert!(matches!(
            seq_to_cauchy_pair(&ab_space(), &s),
            Err(crate::QcatError::NotCauchy(_))
        ));
        assert!(matches!(
            SampledSequence::new(1, eps(), |n| n),
            Err(crate::QcatError::Horizon(1))
        ));
    }

    #[test]
    fn completions() {
        let one = PartialMetricSpace::new(vec!["x".into()], |_, _| ExtValue::zero()).unwrap();
        let c = complete_finite(&one).unwrap();
        assert_eq!(c.space.len(), 2);
        assert!(validate_pms(&c.space).ok());
        let c = complete_finite(&all_ones()).unwrap();
        assert_eq!(c.space.names(), ["a=b", "inf"]);
        let c = complete_finite(&ab_space()).unwrap();
        assert_eq!(c.space.len(), 3);
        for a in 0..2 {
            for b in 0..2 {
                assert_eq!(c.space.p(c.embedding[a], c.embedding[b]), ab_space().p(a, b));
            }
        }
    }

    #[test]
    fn hausdorff_examples() {
        let x = ab_space();
        let h = hausdorff(&x).unwrap();
        assert_eq!(h.names(), ["{a}", "{b}"]);
        assert_eq!(*h.p(0, 1), v("1"));
        assert!(validate_pms(&h).ok());
        let u = subset_space(&x, &[vec![0], vec![0, 1], vec![1]]).unwrap();
        assert_eq!(*u.p(0, 1), v("0"));
        assert_eq!(ExtValue::tri(u.p(0, 1), u.typ(1), u.p(1, 2)), v("0"));
        assert!(ExtValue::tri(u.p(0, 1), u.typ(1), u.p(1, 2)) < *u.p(0, 2));
        assert!(!hausdorff_violations(&x, &[vec![0], vec![0, 1], vec![1]]).unwrap().ok());
        assert!(subset_space(&x, &[vec![]]).is_err());
    }

    #[test]
    fn exponentiability() {
        let step = BigRational::new(1.into(), 2.into());
        let cap = BigRational::from_integer(3.into());
        let empty = PartialMetricSpace::empty();
        assert_eq!(
            exponentiable(&empty, &step, &cap).unwrap(),
            ExponentialVerdict::ExponentiableExact
        );
        assert_eq!(
            exponentiable(&infinite_point(), &step, &cap).unwrap(),
            ExponentialVerdict::ExponentiableExact
        );
        match exponentiable(&two_point_metric(), &step, &cap).unwrap() {
            ExponentialVerdict::NotExponentiable(w) => {
                assert_eq!((w.u, w.v, w.w), (v("1"), v("1"), v("1")));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(exponentiable(&empty, &BigRational::from_integer(0.into()), &cap).is_err());
    }
}
