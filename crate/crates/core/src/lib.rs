//! Spread codes for random linear network coding.

pub mod channel;
pub mod counter;
pub mod decoder;
pub mod error;
pub mod format;
pub mod gf;
pub mod linalg;
#[cfg(any(test, feature = "oracle"))]
pub mod oracle;
pub mod spread;

pub use error::{Error, Result};
