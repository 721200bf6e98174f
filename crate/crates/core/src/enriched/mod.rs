//! Categories, functors and distributors enriched in a finite quantaloid,
//! presheaves and Cauchy completion, and the categorical closure.

mod category;
mod closure;
mod distributor;
mod presheaf;

pub use category::{find_isomorphism, validate_category, validate_functor, EnrichedCategory, EnrichedFunctor};
pub use closure::{
    closure, closure_join, closure_report, family_category, in_closure, join_witness_category, DEFAULT_SUBSET_BOUND,
};
pub use distributor::{
    adjunction_report, check_adjoint, dist_compose, dist_ext, dist_id, dist_lift, functor_iso, functor_le,
    graph_cograph, validate_distributor, EnrichedDistributor,
};
pub use presheaf::{
    cauchy_completion, enumerate_presheaves, is_cauchy_complete, is_cauchy_presheaf, is_presheaf, presheaf_candidates,
    presheaf_category, presheaf_hom, right_adjoint_candidate, Presheaf, PresheafCategory,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::corpus::*;
    use crate::diagonals::Diagonals;
    use crate::properties::check_strong_cauchy_bilateral;

    fn l3_pair(xx: &str) -> EnrichedCategory {
        let q = Arc::new(l_n(3));
        let e = |s: &str| q.hom(0, 0).find(s).unwrap();
        let (a, two) = (e(xx), e("2"));
        let z = e("0");
        EnrichedCategory::new(q.clone(), vec!["x".into(), "y".into()], vec![0, 0], |x, y| {
            match (x, y) {
                (0, 0) => a,
                (1, 0) => two,
                _ => z,
            }
        })
        .unwrap()
    }

    #[test]
    fn l3_category_laws_and_order() {
        let c = l3_pair("0");
        assert!(validate_category(&c).ok());
        let o = c.underlying_order();
        assert!(o[0][1] && !o[1][0]);
        assert!(c.is_skeletal());
        let bad = l3_pair("1");
        let rep = validate_category(&bad);
        assert_eq!(rep.flag("C2"), Some(false));
        let s = c.symmetrize().unwrap();
        assert_eq!(c.base().elem_name(s.hom(1, 0)), "2");
        assert_eq!(s.symmetrize().unwrap(), s);
    }

    #[test]
    fn one_object_category_is_valid() {
        let c = EnrichedCategory::one(Arc::new(pz_n(3)), 0);
        assert!(validate_category(&c).ok());
    }

    #[test]
    fn pz3_family_category_separates_closures() {
        let q = Arc::new(pz_n(3));
        let fam = check_strong_cauchy_bilateral(&q).unwrap().witness.unwrap();
        let c = family_category(&q, &fam).unwrap();
        assert!(validate_category(&c).ok());
        let i = c.subset(&["i"]).unwrap();
        assert_eq!(closure(&c, &i).unwrap(), c.subset(&["i", "x"]).unwrap());
        let cs = c.symmetrize().unwrap();
        assert_eq!(closure(&cs, &i).unwrap(), i);
    }

    #[test]
    fn presheaves_on_q2_point() {
        let c = Arc::new(EnrichedCategory::one(Arc::new(q2()), 0));
        let pc = presheaf_category(&c, 100).unwrap();
        assert_eq!(pc.presheaves.len(), 2);
        assert!(pc.category.is_skeletal());
        let y = pc.yoneda().unwrap();
        assert!(y.is_fully_faithful());
    }

    #[test]
    fn cauchy_completion_of_unit_over_dl3() {
        let dg = Diagonals::new(l_n(3));
        let d = dg.quantaloid.clone();
        let zero = dg.object(dg.q().arrow(0, 0, "0").unwrap());
        let c = Arc::new(EnrichedCategory::one(d, zero));
        let cc = cauchy_completion(&c, 10_000).unwrap();
        assert_eq!(cc.presheaves.len(), 2);
    }

    #[test]
    fn presheaf_bound_is_enforced() {
        let c = Arc::new(EnrichedCategory::one(Arc::new(pz_n(3)), 0));
        assert!(matches!(
            presheaf_category(&c, 3),
            Err(crate::QcatError::BoundExceeded { needed: 8, bound: 3 })
        ));
    }

    #[test]
    fn graph_and_cograph_are_adjoint() {
        let c = Arc::new(l3_pair("0"));
        let f = EnrichedFunctor::inclusion(c.clone(), &[1]);
        let (lo, up) = graph_cograph(&f);
        assert!(check_adjoint(&lo, &up).unwrap());
        let id = EnrichedFunctor::identity(c.clone());
        let (lo, up) = graph_cograph(&id);
        assert_eq!(lo, dist_id(&c));
        assert_eq!(up, dist_id(&c));
    }

    #[test]
    fn diamond_join_witness() {
        let q = Arc::new(diamond());
        let a = q.arrow(0, 0, "a").unwrap();
        let b = q.arrow(0, 0, "b").unwrap();
        let c = join_witness_category(&q, a, b).unwrap();
        assert!(validate_category(&c).ok());
        let s = |v: &[&str]| c.subset(v).unwrap();
        assert!(closure(&c, &s(&["x", "z"])).unwrap().contains(&1));
        assert!(!closure(&c, &s(&["x"])).unwrap().contains(&1));
        assert!(!closure(&c, &s(&["z"])).unwrap().contains(&1));
        assert_eq!(closure_report(&c, 5).unwrap().flag("additive"), Some(false));
    }
}
