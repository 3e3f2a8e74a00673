//! Inputs shared by the benchmarks.

use std::sync::Arc;

use toric_core::fan::{examples, Fan};
use toric_core::graded::{cox_ring, CoxRing, GradedSubmodule};
use toric_core::lattice::{GroupElem, Subgroup};
use toric_core::picard::{build_diagram, FanDiagram};

/// Cox ring graded by the whole class group.
pub fn full_ring(f: &Fan) -> Arc<CoxRing> {
    let d = Arc::new(build_diagram(f));
    let a = d.group().clone();
    Arc::new(cox_ring(d, Subgroup::whole(a)).expect("Cox ring"))
}

pub fn ideal(r: &Arc<CoxRing>, gens: &[&str]) -> GradedSubmodule {
    let g = gens.iter().map(|s| r.poly().parse(s).expect("polynomial")).collect();
    GradedSubmodule::ideal(r.clone(), g).expect("homogeneous ideal")
}

/// `k` times the degree of the first ray.
pub fn ray_multiple(d: &FanDiagram, k: i64) -> GroupElem {
    d.group().scale(&k.into(), &d.alpha()[0])
}

pub fn p2_diagram() -> FanDiagram {
    build_diagram(&examples::p2())
}
