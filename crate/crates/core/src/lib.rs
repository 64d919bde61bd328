pub mod betti;
pub mod cli;
pub mod cw;
pub mod division;
pub mod document;
pub mod error;
pub mod figures;
pub mod fixedpoint;
pub mod generate;
pub mod geometry;
pub mod homology;
pub mod nerve;
pub mod proximity;
pub mod ribbon;
pub mod svg;

pub use error::Error;
