//! Exact integer, Laurent-polynomial, multivariate-polynomial and rational
//! arithmetic underlying every other module.

pub mod laurent;
pub mod multipoly;
pub mod rational;

pub use laurent::IntLaurent;
pub use multipoly::MultiPoly;
pub use rational::{integer, rational, ExactRational};
