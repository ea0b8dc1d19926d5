pub mod classify;
pub mod cli;
pub mod diagram;
pub mod error;
pub mod exactmath;
pub mod isotopy;
pub mod nodes;
pub mod persist;
pub mod plot;
pub mod realize;
pub mod topology;

pub use error::{Error, Result};
