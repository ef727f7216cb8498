//! Exact symbolic kernel: atoms, canonical polynomial expressions with
//! elementary function factors, and their renderers.

mod atom;
pub mod display;
mod expr;
pub mod json;

pub use atom::Atom;
pub use expr::{Factor, Func, Monomial, ScalarExpr};
