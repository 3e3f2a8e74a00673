//! Cox rings, graded submodules of shifted-free modules, Gröbner bases,
//! colon and saturation.

pub mod cox;
pub mod groebner;
pub mod module;
pub mod poly;

pub use cox::{cox_ring, irrelevant_ideal, monomial_count, CoxRing};
pub use groebner::{groebner_basis, normal_form};
pub use module::{
    colon, element_degree, is_torsion, saturate, torsion_submodule, GradedIdeal, GradedSubmodule,
};
pub use poly::{Exps, ModElem, PolyRing, Term};
