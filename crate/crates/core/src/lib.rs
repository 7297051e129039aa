//! Whitehead graphs, cut sets and random words for free groups equipped with
//! a cyclic peripheral structure.

pub mod cayley;
pub mod cli;
pub mod cutsets;
pub mod error;
pub mod genericity;
pub mod pattern;
pub mod whitehead;
pub mod words;

pub use error::{Error, Result};
