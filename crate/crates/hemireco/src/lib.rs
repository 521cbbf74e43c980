//! Tooling around `hemireco-core`: the `.dg` format, DOT and JSON output, random
//! digraphs, fixture discovery and verification campaigns.

pub mod campaign;
pub mod dg;
pub mod dot;
pub mod fixtures;
pub mod json;
pub mod random;

/// Process exit codes of the `hemireco` binary.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INTERNAL: i32 = 1;
    pub const USAGE: i32 = 2;
    pub const NOT_HALF_RECONSTRUCTIBLE: i32 = 3;
    pub const DISAGREEMENT: i32 = 4;
    pub const CAPACITY: i32 = 5;
}
