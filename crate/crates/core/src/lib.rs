//! Exact computation of epr-sequences of symmetric integer matrices, with the
//! graph, equimodularity and exhaustive-search tooling built on top of them.

pub mod construct;
pub mod epr;
pub mod equimodular;
pub mod error;
pub mod graph;
mod kernel;
pub mod linalg;
pub mod matrix;
pub mod pattern;
pub mod rational;
pub mod rules;
pub mod search;

pub use epr::{epr, epr2, inverse_epr, EprSequence, Field, Letter};
pub use error::{Error, Result};
pub use matrix::{IndexSet, IntMatrix};
pub use pattern::EprPattern;
pub use rational::{Rational, RationalMatrix};
