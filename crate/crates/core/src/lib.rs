pub mod analysis;
pub mod builtin;
pub mod certificate;
pub mod class;
pub mod error;
pub mod mub;
pub mod pauli;
mod search;
pub mod unextendible;

pub use error::{Error, Result};
