pub mod analysis;
pub mod cli;
pub mod asymptotics;
pub mod eigensolver;
pub mod error;
pub mod exact_forms;
pub mod number_theory;
pub mod numeric;
pub mod scan;
pub mod scaled;
pub mod spectral_matrix;
pub mod verification;

pub use error::{Result, SpectraError};
