pub mod analysis;
pub mod cli;
pub mod cy_series;
pub mod error;
pub mod growth;
pub mod oracle;
pub mod polyalg;
pub mod numeric;
pub mod quiver;
pub mod search;

pub use error::{Error, Result};
