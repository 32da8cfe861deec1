//! Exact rational calculus for simplicial and cubical cochains.
//!
//! Everything is computed over arbitrary-precision rationals; every identity
//! the library claims is checked by exact term-wise equality, never by
//! numerical tolerance.

pub mod collapse;
pub mod compat;
pub mod complexes;
pub mod cube_dupont;
pub mod dupont;
pub mod report;
pub mod scalar;
pub mod simplex_forms;
pub mod stellar;
