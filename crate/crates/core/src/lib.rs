//! Disimplicial arcs, transitive vertices, and disimplicial elimination
//! schemes on digraphs.
//!
//! An arc `v -> w` is *disimplicial* when every in-neighbor of `w` points at
//! every out-neighbor of `v`. On the ST graph of a sparse matrix these are
//! exactly the pivots that cause no fill-in.
//!
//! ```
//! use disimplicial::{all_disimplicial_arcs, maximal_elimination, Digraph};
//!
//! // a -> b, a -> d, c -> b
//! let g = Digraph::new(4, [(0, 1), (0, 3), (2, 1)])?;
//! assert_eq!(all_disimplicial_arcs(&g), vec![(0, 3), (2, 1)]);
//! assert!(maximal_elimination(&g).perfect);
//! # Ok::<(), disimplicial::Error>(())
//! ```

pub mod arcs;
pub mod classes;
pub mod digraph;
pub mod elimination;
pub mod error;
pub mod generate;
pub mod hdigraph;
pub mod io;
pub mod matching;
pub mod oracle;
pub mod pivots;
pub mod transforms;

pub use arcs::{
    all_disimplicial_arcs, is_disimplicial, is_transitive_digraph, is_transitive_via_disimplicial,
    transitive_vertices, TransitiveReport,
};
pub use classes::{
    bounds, classify, dedekind_via_split_check, is_dedekind, is_di, is_order_graph, is_wdi,
    BoundSets, ClassReport, Witness,
};
pub use digraph::{Digraph, Dir, GraphStats};
pub use elimination::{
    check_scheme, is_perfect_elimination_st, matched_elimination, maximal_elimination,
    transitive_v_elimination, verify_scheme, EliminationScheme,
};
pub use error::{Error, Result};
pub use hdigraph::HDigraph;
pub use matching::{thin_arcs, thin_neighbor, Matching};
pub use pivots::{structural_fill, zero_fill_pivots, PivotSequence};
pub use transforms::{join, join_thin, repr_reduction, split, twin_partition, Origin, TransformMap};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/digraphs.md")]
    mod digraphs {}
    #[doc = include_str!("../../../book/src/transforms.md")]
    mod transforms {}
    #[doc = include_str!("../../../book/src/disimplicial.md")]
    mod disimplicial {}
    #[doc = include_str!("../../../book/src/hdigraph.md")]
    mod hdigraph {}
    #[doc = include_str!("../../../book/src/elimination.md")]
    mod elimination {}
    #[doc = include_str!("../../../book/src/classes.md")]
    mod classes {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
