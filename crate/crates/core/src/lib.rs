//! Exact Hadamard products of rational generating functions in `x` with
//! coefficients in `Z[a, b]`, with closed forms for Fibonacci-type products
//! and the tiling models behind them.

pub mod cli;
pub mod closedform;
pub mod error;
pub mod fib;
mod parse;
pub mod poly;
pub mod ratgf;
pub mod series;
pub mod tilings;
pub mod verify;
pub mod xpoly;

pub use error::{Error, Result};
pub use poly::{Monomial, Polynomial, Var};
pub use ratgf::{hadamard_rational, rgf_equal, RationalGF};
pub use series::{expand_rational, hadamard_series, SeriesTrunc};
pub use xpoly::XPoly;
