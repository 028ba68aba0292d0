//! Library side of the `relbat` command: network generators, report
//! renderers, oracle comparison and benchmark rows.

pub mod bench;
pub mod compare;
pub mod generators;
pub mod render;

pub use generators::{GenError, Generator};
