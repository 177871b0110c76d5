//! Text formats: the expression grammar, input files, canonical strings and
//! reports.

mod files;
mod parser;
mod report;

pub use files::{
    canonical_string, file_kind, parse_system, parse_transform, parse_vector_field, system_to_string,
    transform_to_string, vector_field_to_string, FileKind,
};
pub use parser::{parse_expression, MAX_DEGREE, MAX_EXPONENT};
pub use report::{decomposition_json, diagnostic_line, emit_report, human_report, report_json, residuals_json};
