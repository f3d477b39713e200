//! Exact evaluation of iterated q-integrals on six-letter words and
//! machine checking of their duality under the word involution `tau`.

pub mod cli;
pub mod error;
pub mod qint;
pub mod qseries;
pub mod shifts;
pub mod valuedomain;
pub mod verifier;
pub mod words;

pub use error::{Error, Result};
