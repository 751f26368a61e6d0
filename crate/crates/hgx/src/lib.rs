//! JSON file formats and report serialization for the `hgx` command.

pub mod codec;
pub mod files;
pub mod report;
