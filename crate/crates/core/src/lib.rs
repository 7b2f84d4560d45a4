//! Exact verification toolkit for intersecting families in the alternating
//! groups: partitions and permutations, `Alt(n)` character tables, the
//! derangement graph and its eigenspaces, clique constructions and the
//! checks behind the uniqueness argument.

pub mod characters;
pub mod cliques;
pub mod ekrverify;
pub mod error;
pub mod linalg;
pub mod partitions;
pub mod permgroup;
pub mod quadratic;
pub mod report;
pub mod scheme;
pub mod suite;

pub use characters::{alt_character_table, alt_character_value, mn_character, AltCharLabel, CharacterTable};
pub use error::{Error, Result};
pub use linalg::ExactMatrix;
pub use partitions::{Partition, Shape};
pub use permgroup::{ConjugacyClass, CycleType, GroupKind, GroupTable, Permutation, SplitTag};
pub use quadratic::QuadraticNumber;
pub use report::{CheckReport, RunReport, Status};
pub use scheme::DerangementGraph;
pub use suite::{Check, SuiteConfig};
