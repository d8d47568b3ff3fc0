//! Command-line layer over `dyshift-core`: suite dispatch, text rendering
//! and JSON encodings.

pub mod json;
pub mod parse;
pub mod suites;
pub mod text;
