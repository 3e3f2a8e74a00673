//! Fan and module documents, fixtures and run reports.

pub mod fan_doc;
pub mod fixtures;
pub mod module_doc;
pub mod report;

pub use fan_doc::{emit_fan, parse_fan, FanDocument, ParsedFan, FAN_SCHEMA_VERSION};
pub use fixtures::{fixture, fixture_names, FIXTURES};
pub use module_doc::{
    degree_from_coords, parse_degree, parse_degree_list, parse_module_document, ModuleDocument,
};
pub use report::{emit_report, input_digest, Format, RunReport};
