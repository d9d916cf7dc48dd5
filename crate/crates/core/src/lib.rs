pub mod budget;
pub mod catenary;
pub mod delta;
pub mod error;
pub mod grobner;
pub mod hilbert;
pub mod presentation;
pub mod semigroup;
pub mod tame;
pub mod vector;

pub use budget::Budget;
pub use error::{Error, Result};
pub use semigroup::{AffineSemigroup, CongruenceSystem, FactorizationSet};
pub use vector::{dist, ElementVector, FactVector};
