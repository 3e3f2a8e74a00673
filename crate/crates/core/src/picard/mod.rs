//! The diagram of a fan, its Picard group by two constructions, and the
//! classification checks relating them to the geometry.

pub mod diagram;
pub mod polytope;
pub mod theorems;

pub use diagram::{
    build_diagram, cone_regularity_via_diagram, cone_regularity_via_geometry, degree_monoid,
    image_meets_orthant_trivially, index_string, is_big, is_small, picard_group, ConeRegularity,
    DegreeMonoidInfo, FanDiagram,
};
pub use polytope::{
    normal_form_vp, picard_via_polytopes, polytope_class, virtual_polytope, PicardViaPolytopes,
    VirtualPolytope,
};
pub use theorems::{fan_classification_theorems, theorem_report, TheoremCheck, TheoremReport};
