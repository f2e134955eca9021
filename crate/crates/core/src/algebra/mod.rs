//! Exact arithmetic: rationals, polynomials, rational functions, simple
//! algebraic extensions, factorization, resultants and linear algebra.

mod ext;
mod factor;
mod field;
pub mod linalg;
mod mgcd;
mod modp;
mod parse;
mod poly;
mod rat;
mod ratfunc;
mod resultant;
mod upoly;

pub use ext::{ExtElem, ExtField, ExtOp};
pub use factor::{factor_univariate, squarefree_decomposition, Factorization};
pub use field::Field;
pub use modp::is_prime;
pub use parse::parse_poly;
pub use poly::{Mono, Poly};
pub use rat::{rat, Rat};
pub use ratfunc::{Order, Place, RatFunc};
pub use resultant::{poly_resultant, qpoly_resultant};
pub use upoly::{QPoly, UPoly};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("input error: {0}")]
    Input(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different extension fields")]
    FieldMismatch,
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VariableMismatch(Vec<String>, Vec<String>),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("division is not exact")]
    InexactDivision,
}
