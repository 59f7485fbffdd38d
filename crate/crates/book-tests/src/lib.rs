//! Compiles every code block in the book as a doc-test, so `cargo test`
//! keeps the guide and the library in sync. Each chapter becomes one empty
//! module whose documentation is the chapter source.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/labels-and-graphs.md")]
pub mod labels_and_graphs {}

#[doc = include_str!("../../../book/src/prufer-codes.md")]
pub mod prufer_codes {}

#[doc = include_str!("../../../book/src/gt-enhancement.md")]
pub mod gt_enhancement {}

#[doc = include_str!("../../../book/src/tree-partition.md")]
pub mod tree_partition {}

#[doc = include_str!("../../../book/src/scesor.md")]
pub mod scesor {}

#[doc = include_str!("../../../book/src/code-selection.md")]
pub mod code_selection {}

#[doc = include_str!("../../../book/src/netlists.md")]
pub mod netlists {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
