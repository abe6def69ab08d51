pub mod cli;
pub mod distributions;
pub mod error;
pub mod gauss;
pub mod half_series;
pub mod poly;
pub mod quad;
pub mod residue;
pub mod scalar;
pub mod special;
pub mod theta;
pub mod vertex;

pub use error::{Error, Result};
