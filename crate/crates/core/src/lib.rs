//! Modified Euler-Maclaurin summation in one and two dimensions.

pub mod error;
pub mod functions;
pub mod kernels;
pub mod memf1d;
pub mod memf2d;
pub mod oracle;
pub mod partition;
pub mod quad;
pub mod sweep;
pub mod tables;

pub use error::{MemfError, Result};
pub use num_complex::Complex64;
