//! Lossless, linear-size encoding of connected sparse graphs as Prüfer
//! sequences.
//!
//! A Prüfer code represents a labeled tree on `n` vertices by `n - 2`
//! vertex labels. This crate extends the idea to arbitrary connected
//! graphs: a graph-to-tree enhancement splits cycle vertices into replicas
//! until a single tree (the *g-tree*) holds every edge of the graph, and
//! merging the replicas back recovers the graph exactly. The code of a
//! g-tree has length `|E| - 1`.
//!
//! Two enhancement methods are provided:
//!
//! * [`treepart`] partitions edges by one DFS into a spanning tree plus
//!   classed back-edge trees, then grafts, splits, and label-swaps to keep
//!   the auxiliary pendant list `L` small.
//! * [`scesor`] traverses edge-by-edge and splits vertices on revisit, so
//!   every replica has degree two and the code alone suffices to decode
//!   whenever the traversal starts at a pendant vertex.
//!
//! On top of the raw code, [`labeling`] offers three code selections:
//! direction-centric (topological labels make every edge ascend),
//! path-centric (leaf paths appear contiguously, junctions marked), and
//! leaf-centric (position `k` of the code pairs with vertex `k`, making the
//! code an edge list). The [`netlist`] module parses `.bench` circuit
//! netlists into DAGs for the pipeline, and [`codefile`]/[`edgelist`]
//! define the text formats.
//!
//! ```
//! use prufer_codec::{graph::{Edge, Graph, merge_replicas, graphs_equal},
//!                    label::Label,
//!                    prufer::encode_tree,
//!                    scesor::enhance_scesor};
//!
//! // The 4-cycle 2-3-4-5-2 with a tail 1-2.
//! let l = Label::original;
//! let graph = Graph::new(5, vec![
//!     Edge::undirected(l(1), l(2)),
//!     Edge::undirected(l(2), l(3)),
//!     Edge::undirected(l(3), l(4)),
//!     Edge::undirected(l(4), l(5)),
//!     Edge::undirected(l(5), l(2)),
//! ])?;
//!
//! let enhanced = enhance_scesor(&graph)?;
//! assert_eq!(enhanced.tree.edge_count(), graph.edge_count());
//! assert!(enhanced.pendant_list.is_empty());
//!
//! let encoding = encode_tree(&enhanced.tree)?;
//! assert_eq!(encoding.code.len(), graph.edge_count() - 1);
//!
//! let recovered = merge_replicas(&enhanced.tree)?;
//! assert!(graphs_equal(&recovered, &graph));
//! # Ok::<(), prufer_codec::Error>(())
//! ```

pub mod codefile;
pub mod edgelist;
mod error;
pub mod graph;
pub mod label;
pub mod labeling;
pub mod netlist;
pub mod order;
pub mod prufer;
pub mod scesor;
pub mod stats;
pub mod tree;
pub mod treepart;

pub use error::{Error, Result};
pub use graph::{graphs_equal, merge_replicas, DegreeMap, Edge, Graph};
pub use label::{compare_labels, Label};
pub use prufer::{decode_code, encode_tree, enumerate_codes, infer_label_universe, PruferCode, Scheme};
pub use tree::{GEdge, GTree, Method};
