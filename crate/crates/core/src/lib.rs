//! Jordan types of nilpotent matrices commuting with a fixed nilpotent
//! matrix, computed in exact rational arithmetic.

pub mod error;
pub mod commutant;
pub mod constraints;
pub mod dinverse;
pub mod exactla;
pub mod partitions;
pub mod twoblock;
pub mod verify;

pub use error::{Error, Result};
pub use exactla::ExactMatrix;
pub use partitions::Partition;
