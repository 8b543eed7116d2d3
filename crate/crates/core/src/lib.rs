pub mod arith;
pub mod cli;
pub mod condense_witt;
pub mod constructors;
pub mod cyclotomic;
pub mod error;

pub use cyclotomic::{Cyc, CycMatrix};
pub use error::{Error, Result};
pub mod fusion;
pub mod groups;
pub mod io;
pub mod modular_data;
pub mod sl2z;
pub mod snf;
