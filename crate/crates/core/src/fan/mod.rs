//! Polycones and fans: faces, duals, validation and classification.

pub mod cone;
pub mod examples;
#[allow(clippy::module_inception)]
pub mod fan;
pub mod random;

pub use cone::{dual_cone, primitive_ray, Polycone, Vector};
pub use fan::{classify_fan, full_fan_associated, validate_fan, ConeIdx, Fan, FanFlags};
pub use random::{generate_complete_fan, generate_nonfull_fan, generate_random_fan};
