//! Exact integer linear algebra: normal forms, kernels and cokernels,
//! finitely generated abelian groups and their subgroups.

pub mod group;
pub mod matrix;
pub mod normal_form;
pub mod rational;
pub mod subgroup;

pub use group::{cokernel, Cardinal, FinAbGroup, GroupElem};
pub use matrix::{big_vec, small_vec, IntMatrix};
pub use normal_form::{
    column_hnf, integer_kernel, inverse_unimodular, lattice_basis, rank, row_hnf, smith_normal_form,
    solve_integer, ColumnHnf, Snf,
};
pub use subgroup::{subgroup_index, subgroup_intersection, Subgroup};
