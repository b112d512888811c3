//! Ternary products: the fish product on 3-arrays, finite ternary tables,
//! and closed families of arrays.

mod fish;
mod heapoid;
mod table;

pub use fish::*;
pub use heapoid::*;
pub use table::*;

use thiserror::Error;

use crate::array::ArrayError;
use crate::diagram::DiagramError;
use crate::evaluator::EvalError;
use crate::semiring::{Semiring, SemiringError};

#[derive(Debug, Error)]
pub enum TernaryError {
    #[error("unknown fish variant `{0}`")]
    UnknownVariant(String),
    #[error("expected an order-3 array, found order {0}")]
    NotOrderThree(usize),
    #[error("all axes must carry the same index set")]
    NotRegular,
    #[error("law checks need an exact semiring, got {0}")]
    InexactSemiring(Semiring),
    #[error("{what} exceeds the cap of {cap}")]
    TooLarge { what: &'static str, cap: usize },
    #[error("twisted variants have no matrix form")]
    TwistedFlattening,
    #[error("element {0} is not a biunit")]
    NotABiunit(usize),
    #[error("the family is not closed: the product of {0:?} is missing")]
    NotClosed([usize; 3]),
    #[error("invalid table: {0}")]
    InvalidTable(String),
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Array(#[from] ArrayError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Semiring(#[from] SemiringError),
}
