//! Compatibility of the form-level calculus with subdivision, on simplices
//! and on cubes.

pub mod cubical;
pub mod simplicial;

pub use cubical::verify_cubical_compat;
pub use simplicial::verify_compat;
