//! Semiring-generic array algebra, plex diagrams and hypergraph rewriting.

pub mod array;
pub mod diagram;
pub mod evaluator;
pub mod rewrite;
pub mod semiring;
pub mod ternary;

pub use array::{Array, ArrayError, IndexSet};
pub use diagram::{Diagram, DiagramError, Edge, Vertex};
pub use evaluator::{evaluate, Binding, EvalError};
pub use semiring::{Semiring, SemiringError, Value};
