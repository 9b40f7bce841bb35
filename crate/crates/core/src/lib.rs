//! Relational structures, their monomorphic decompositions and profiles.

pub mod canon;
pub mod cli;
pub mod embed;
pub mod enumerate;
pub mod equivalence;
pub mod error;
pub mod families;
pub mod io;
pub mod ordered;
pub mod partition;
pub mod profile;
pub mod structure;
pub mod verify;

pub use error::{Error, Result};
pub use structure::{RelStructure, Signature};
