pub mod automata;
pub mod classify;
pub mod decompose;
pub mod error;
pub mod exactspace;
pub mod families;
pub mod report;
pub mod streaming;

pub use error::{Error, Result};
