pub mod asc;
pub mod error;
pub mod exppoly;
pub mod field;
pub mod io;
pub mod kernel;
pub mod linalg;
pub mod oracle;
pub mod orbit;
pub mod semialg;
pub mod spectral;

pub use error::{Error, Result};
