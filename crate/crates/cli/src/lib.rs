//! Command implementations behind the `simplex` binary.

// dense matrix code reads better with index loops
#![allow(clippy::needless_range_loop)]

pub mod commands;
pub mod document;
pub mod exact;
pub mod report;
pub mod verify;
