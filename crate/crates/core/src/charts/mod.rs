//! Chart monoids, the comparison with toric charts, gluing, sheaves of
//! submodules and twisting sheaves.

pub mod chart;
pub mod hilbert;
pub mod sheaf;
pub mod twist;

pub use chart::{
    character_images, chart_monoid, compare_cox_toric, degree_zero_lattice, dual_monoid,
    glue_check, ChartComparison, ChartMonoid, CoxToricReport, CoxToricVerdict, GlueWitness,
};
pub use hilbert::{hilbert_basis, MonoidBasis};
pub use sheaf::{chart_ideal, saturated_preimage, sheaf_of, xi_equal, xi_equal_via_charts, SheafData};
pub use twist::{
    delta_counterexample_check, invertibility_check, products_span, strongly_graded_check,
    fiber_data, tensor_fiber, twist_module, ChartInvertibility, DeltaReport, FiberData,
    InvertibilityReport,
    TensorFiber, TwistModule,
};
