//! Half-reconstruction of finite digraphs: hemimorphy, intervals, the structural
//! conditions and a brute-force flip oracle.
#![cfg_attr(not(test), no_std)]

extern crate alloc;

mod canon;
pub mod decide;
pub mod digraph;
pub mod enumerate;
pub mod error;
pub mod gallery;
pub mod hypo;
pub mod iso;
pub mod partition;
pub mod structure;
pub mod vset;
pub mod witness;

pub use decide::{decide, report, Condition, ConditionReport, Verdict};
pub use digraph::{Digraph, PairState};
pub use error::{Error, Result};
pub use iso::CanonicalKey;
pub use partition::Partition;
pub use structure::CDual;
pub use vset::VertexSet;
