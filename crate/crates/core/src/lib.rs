//! Exact computations with continuous rational functions on real and p-adic
//! affine varieties: restriction to subvarieties, limits along curves,
//! positivity certificates and extension of regular functions.

pub mod cli;
pub mod corealg;
pub mod error;
pub mod extend;
pub mod groebner;
pub mod limits;
pub mod paperlab;

pub use error::{Error, Result};
