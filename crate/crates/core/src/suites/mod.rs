//! Worked examples and end-to-end suite runners.

pub mod data;
pub mod theta;
pub mod run;
