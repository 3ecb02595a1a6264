//! Finite point-free topology: presentations of spaces by geometric theories,
//! point enumeration, Stone duality, exponential spaces, a bounded model
//! finder for geometric theories, and sheaves on the Sierpiński space.

pub mod bits;
pub mod cli;
pub mod error;
pub mod expspace;
pub mod geolog;
pub mod order;
pub mod points;
pub mod present;
pub mod sierpinski;

pub use error::{Error, Result};
