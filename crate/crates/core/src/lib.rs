//! Exact local densities of quaternion hermitian forms over a p-adic field,
//! spherical functions on the associated space and the symbolic machinery
//! needed to check them.

pub mod arith;
pub mod cli;
pub mod density;
pub mod error;
pub mod partition;
pub mod plancherel;
pub mod quat;
pub mod spherical;
pub mod sympoly;

pub use error::{Error, Result};
pub use partition::Partition;
