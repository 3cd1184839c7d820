pub mod error;
pub mod fewnomial;
pub mod nonarch;
pub mod numeric;
pub mod polyhedra;
pub mod slp;
pub mod viro;

pub use error::{Error, Result};
