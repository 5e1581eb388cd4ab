pub mod algebra;
pub mod eigen;
pub mod element;
pub mod error;
pub mod evalrep;
pub mod loper;
pub mod matrix;
pub mod par;
pub mod qosc;
pub mod rmatrix;
pub mod sample;
pub mod scalar;
pub mod spinchain;

pub use error::{Error, Result};
