pub mod algebra;
pub mod census;
pub mod genus2;
pub mod mass;
pub mod moduli;
pub mod store;
pub mod strata;
pub mod error;
pub mod cli;
pub mod modforms;
pub mod verify;

pub use error::{CensusError, Result};
