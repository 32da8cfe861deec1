//! Cell complexes, chains, cochains, and deformation retraction plumbing.

pub mod chain;
pub mod cube;
pub mod dr;
pub mod linmap;
pub mod simplex;

pub use chain::FormalSum;
pub use cube::{CubeCell, CubicalComplex, IntervalCell};
pub use dr::{compose_dr, Counterexample, DeformationRetraction, IdentityCheck};
pub use linmap::{boundary_map, LinearMap};
pub use simplex::{Simplex, SimplicialComplex, Vertex};

/// Boundary operator on the full cell basis of a simplicial complex.
pub fn simplicial_boundary(k: &SimplicialComplex) -> LinearMap<Simplex, Simplex> {
    boundary_map(k.basis(), |s| s.boundary_terms())
}

/// Boundary operator on the full cell basis of a cubical complex.
pub fn cubical_boundary(k: &CubicalComplex) -> LinearMap<CubeCell, CubeCell> {
    boundary_map(k.basis(), |c| c.boundary_terms())
}
