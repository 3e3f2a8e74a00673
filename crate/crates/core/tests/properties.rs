use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use toric_core::cohomology::sheaf_cohomology;
use toric_core::fan::{examples, generate_random_fan};
use toric_core::graded::{
    cox_ring, irrelevant_ideal, normal_form, saturate, CoxRing, GradedSubmodule, ModElem,
};
use toric_core::io::{emit_fan, parse_fan, FanDocument};
use toric_core::lattice::{smith_normal_form, IntMatrix, Subgroup};
use toric_core::picard::build_diagram;

fn p2_ring() -> Arc<CoxRing> {
    let d = Arc::new(build_diagram(&examples::p2()));
    let a = d.group().clone();
    Arc::new(cox_ring(d, Subgroup::whole(a)).unwrap())
}

fn poly(r: &CoxRing, terms: &[([u32; 3], i64)]) -> ModElem {
    terms.iter().fold(ModElem::zero(), |acc, (e, c)| {
        acc.add(&r.poly().monomial(0, e.to_vec(), BigInt::from(*c).into()))
    })
}

fn monomial_ideal(r: &Arc<CoxRing>, gens: &[[u32; 3]]) -> GradedSubmodule {
    let g = gens.iter().map(|e| r.poly().monomial(0, e.to_vec(), BigInt::from(1).into())).collect();
    GradedSubmodule::ideal(r.clone(), g).unwrap()
}

fn exps() -> impl Strategy<Value = [u32; 3]> {
    [0u32..4, 0u32..4, 0u32..4]
}

fn terms() -> impl Strategy<Value = Vec<([u32; 3], i64)>> {
    prop::collection::vec((exps(), -5i64..6), 0..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normal_form_is_linear(gens in prop::collection::vec(exps(), 1..4), f in terms(), g in terms()) {
        let r = p2_ring();
        let n = monomial_ideal(&r, &gens);
        let (f, g) = (poly(&r, &f), poly(&r, &g));
        let basis = n.groebner();
        let lhs = normal_form(r.poly(), &f.add(&g), basis);
        let rhs = normal_form(r.poly(), &f, basis).add(&normal_form(r.poly(), &g, basis));
        prop_assert_eq!(lhs, rhs);
        let three: toric_core::lattice::rational::Q = BigInt::from(3).into();
        prop_assert_eq!(
            normal_form(r.poly(), &f.scale(&three), basis),
            normal_form(r.poly(), &f, basis).scale(&three)
        );
    }

    #[test]
    fn saturation_is_a_closure(a in prop::collection::vec(exps(), 1..4), b in prop::collection::vec(exps(), 0..3)) {
        let r = p2_ring();
        let irr = irrelevant_ideal(&r).unwrap();
        let n = monomial_ideal(&r, &a);
        let mut ab = a.clone();
        ab.extend(b);
        let big = monomial_ideal(&r, &ab);
        let sn = saturate(&n, &irr).unwrap();
        prop_assert!(n.is_submodule_of(&sn));
        prop_assert_eq!(saturate(&sn, &irr).unwrap(), sn.clone());
        prop_assert!(sn.is_submodule_of(&saturate(&big, &irr).unwrap()));
    }

    #[test]
    fn fan_documents_round_trip(seed in 0u64..500, dim in 1usize..4) {
        let f = generate_random_fan(seed, dim, 6);
        let text = emit_fan(&FanDocument::from_fan(&f));
        let parsed = parse_fan(&text).unwrap();
        prop_assert!(parsed.warnings.is_empty());
        let g = parsed.document.to_fan().unwrap();
        prop_assert_eq!(g.rays(), f.rays());
        prop_assert_eq!(g.max_cones(), f.max_cones());
        prop_assert_eq!(g.name(), f.name());
    }

    #[test]
    fn shifting_the_module_shifts_the_twist(beta in -4i64..5, alpha in -4i64..5) {
        let d = build_diagram(&examples::p2());
        let a = d.group();
        let e = |k: i64| a.scale(&BigInt::from(k), &d.alpha()[0]);
        let shifted = sheaf_cohomology(&d, &[e(beta)], &e(alpha), Some(6)).unwrap();
        let direct = sheaf_cohomology(&d, &[a.zero()], &e(alpha + beta), Some(6)).unwrap();
        prop_assert_eq!(shifted.dims, direct.dims);
    }

    #[test]
    fn smith_form_divisibility_and_determinant(entries in prop::collection::vec(-9i64..10, 9)) {
        let rows: Vec<Vec<i64>> = entries.chunks(3).map(|c| c.to_vec()).collect();
        let m = IntMatrix::from_rows_i64(&rows, 3);
        let snf = smith_normal_form(&m);
        prop_assert_eq!(snf.u.mul(&m).mul(&snf.v), snf.d.clone());
        let diag = snf.diagonal();
        for w in diag.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        let det = m.determinant();
        if det != BigInt::from(0) {
            let prod: BigInt = diag.iter().product();
            prop_assert_eq!(prod, if det < BigInt::from(0) { -det } else { det });
        }
    }
}
