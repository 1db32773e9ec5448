pub mod arith;
pub mod cli;
pub mod error;
pub mod order_invariance;
pub mod primitive_index;
pub mod primover;
pub mod zsigmondy;

pub use error::{Error, Result};
