//! Recursive finite-field towers that produce elements of provably high
//! multiplicative order, together with the machinery needed to check the
//! claims: exact order computation from factored group orders, the
//! telescoped factorization of `q^(l^n) - 1`, the supporting
//! number-theoretic lemmas, and a comparison against the Voloch-style
//! lower bound for `a - 1` when `a` has low order.

pub mod basefield;
pub mod error;
pub mod numtheory;
pub mod orderengine;
pub mod render;
pub mod report;
pub mod towers;
pub mod voloch;

pub use basefield::{make_field, Element, FieldSpec};
pub use error::Error;
pub use orderengine::{BoundReport, Factorization, OrderResult};
pub use towers::{Tower, TowerElement, TowerKind, TowerLevel};
