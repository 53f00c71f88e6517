pub mod carrier;
pub mod cli;
pub mod corpus;
pub mod correspondence;
pub mod error;
pub mod format;
pub mod fuzzy;
pub mod harness;
pub mod ideal;
pub mod limits;
pub mod operator;
pub mod structure;

pub use error::{Error, Result};
