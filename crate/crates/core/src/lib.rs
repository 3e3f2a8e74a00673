pub mod charts;
pub mod cohomology;
pub mod error;
pub mod fan;
pub mod graded;
pub mod io;
pub mod lattice;
pub mod picard;

pub use error::{Error, Result};
