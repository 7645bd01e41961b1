//! Reading and writing operators, matrices and whole sessions as text.

pub mod parser;
pub mod printer;
pub mod session;

use thiserror::Error;

pub use parser::{parse_monomial, parse_operator, parse_scalar, Context};
pub use printer::{print_monomial, print_operator, print_poly, print_rf};
pub use session::Session;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("line {line}, column {col}: unknown identifier `{name}`")]
    UnknownIdentifier { line: usize, col: usize, name: String },
    #[error("line {line}: {msg}")]
    Semantic { line: usize, msg: String },
    #[error("missing `{0}` record")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
}
