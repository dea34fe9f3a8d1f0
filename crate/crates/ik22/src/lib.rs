//! Graph-minor obstruction toolkit for classifying triangle-free graphs
//! with 22 edges and a unique degree-5 vertex.
//!
//! The pipeline enumerates all candidate graphs of each degree type,
//! discards the 2-apex ones (never intrinsically knotted), and certifies
//! the survivors as intrinsically knotted by exhibiting a known
//! intrinsically knotted minor.

pub mod apex;
pub mod canon;
pub mod catalog;
pub mod graph;
pub mod graph6;
pub mod moves;
pub mod minor;
pub mod planar;
pub mod reduce;

pub use canon::{are_isomorphic, canonical_form, CanonicalForm};
pub use graph::{Multigraph, SimpleGraph};
