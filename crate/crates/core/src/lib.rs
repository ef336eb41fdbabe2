pub mod generators;
pub mod geometry;
pub mod graph;
pub mod instance;
pub mod io;
pub mod scalar;
pub mod spanners;

pub use scalar::Scalar;
