//! Exact arithmetic for A¹-degrees of rational functions in one variable.

pub mod bilinear;
pub mod degrees;
pub mod error;
pub mod field;
pub mod hurwitz;
pub mod linalg;
pub mod poly;

pub use error::{Error, Result};
