//! Packing and embedding of large balanced trees into dense bipartite hosts.
//!
//! The crate turns a chain of existence results about tree packings into
//! executable machinery:
//!
//! - [`graph`] / [`tree`] / [`embedding`]: host graphs, guest trees and
//!   forests, and the packing verifier every other module's output must pass.
//! - [`regularity`]: equitable partitions, heuristic regularity testing with
//!   re-checkable witnesses, reduced graphs, cluster matchings, typicality.
//! - [`decomp`]: decomposition of a rooted tree into a small seed set plus
//!   small rooted pieces.
//! - [`assign`]: capacity-respecting partition of piece demands into cluster
//!   groups.
//! - [`embed`]: the staged embedding pipeline over the structures above, a
//!   forest joiner, and a greedy dense-host fallback engine.
//! - [`pack`]: hub extraction and the reserve-strip-pack-inject packing loop
//!   for families of balanced trees in complete bipartite hosts.
//! - [`oracle`]: exhaustive search ground truth and small exact
//!   constructions (double-star decompositions, path-packing
//!   impossibilities, adversarial star trees).
//! - [`gen`]: seeded random generators for trees, forests, and hosts.
//! - [`io`]: the text formats and JSON schemas shared with the CLI.
//!
//! Heavy inner loops fan out through [`exec`], which the `parallel` feature
//! (default) backs with rayon; disabling it yields a fully sequential build
//! with identical outputs.

pub mod assign;
pub mod decomp;
pub mod embed;
pub mod embedding;
pub mod exec;
pub mod gen;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod pack;
pub mod regularity;
pub mod tree;

pub use embedding::{
    remove_embedding_edges, verify_embedding, verify_packing, Embedding, Packing, PackingEntry,
    Violation,
};
pub use exec::ExecMode;
pub use graph::{BipartiteGraph, GraphError, Side};
pub use tree::{BalancedForest, Guest, MaterializedGuest, RootedTree, TreeError};

/// Version tag stamped into every JSON artifact this crate writes.
pub const SCHEMA_VERSION: &str = "1.0.0";
