//! Linear maps between free modules on finite cell bases.
//!
//! A map is stored sparsely by its action on the domain basis. The domain
//! and codomain bases are carried explicitly so that transposition (chain
//! map to cochain map and back) and identity checks are well defined.

use std::collections::BTreeMap;
use std::fmt::Display;

use super::chain::FormalSum;
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LinearMap<A: Ord + Clone, B: Ord + Clone> {
    domain: Vec<A>,
    codomain: Vec<B>,
    cols: BTreeMap<A, FormalSum<B>>,
}

impl<A: Ord + Clone, B: Ord + Clone> LinearMap<A, B> {
    pub fn zero(domain: Vec<A>, codomain: Vec<B>) -> Self {
        LinearMap {
            domain,
            codomain,
            cols: BTreeMap::new(),
        }
    }

    /// Map defined by its value on each domain basis element.
    pub fn from_fn(domain: Vec<A>, codomain: Vec<B>, f: impl Fn(&A) -> FormalSum<B>) -> Self {
        let mut cols = BTreeMap::new();
        for a in &domain {
            let img = f(a);
            if !img.is_zero() {
                cols.insert(a.clone(), img);
            }
        }
        LinearMap {
            domain,
            codomain,
            cols,
        }
    }

    pub fn domain(&self) -> &[A] {
        &self.domain
    }

    pub fn codomain(&self) -> &[B] {
        &self.codomain
    }

    pub fn column(&self, a: &A) -> FormalSum<B> {
        self.cols.get(a).cloned().unwrap_or_default()
    }

    pub fn apply(&self, x: &FormalSum<A>) -> FormalSum<B> {
        x.map_terms(|a| self.column(a))
    }

    pub fn entry(&self, b: &B, a: &A) -> Scalar {
        self.column(a).coeff(b)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.domain == other.domain, "domain bases differ");
        assert!(self.codomain == other.codomain, "codomain bases differ");
        LinearMap::from_fn(self.domain.clone(), self.codomain.clone(), |a| {
            self.column(a) + other.column(a)
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.domain == other.domain, "domain bases differ");
        assert!(self.codomain == other.codomain, "codomain bases differ");
        LinearMap::from_fn(self.domain.clone(), self.codomain.clone(), |a| {
            self.column(a) - other.column(a)
        })
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        LinearMap::from_fn(self.domain.clone(), self.codomain.clone(), |a| {
            self.column(a).scale(c)
        })
    }

    /// `self ∘ other`, applied right to left.
    pub fn compose<Z: Ord + Clone>(&self, other: &LinearMap<Z, A>) -> LinearMap<Z, B> {
        assert!(self.domain == other.codomain, "composition bases differ");
        LinearMap::from_fn(other.domain.clone(), self.codomain.clone(), |z| {
            self.apply(&other.column(z))
        })
    }

    /// Transpose with respect to the cell bases: the induced map on duals.
    pub fn transpose(&self) -> LinearMap<B, A> {
        LinearMap::from_fn(self.codomain.clone(), self.domain.clone(), |b| {
            let mut out = FormalSum::zero();
            for a in &self.domain {
                out.add_term(a.clone(), self.entry(b, a));
            }
            out
        })
    }

    pub fn is_zero(&self) -> bool {
        self.cols.is_empty()
    }

    /// First domain basis element on which the two maps differ, if any.
    pub fn first_difference(&self, other: &Self) -> Option<A> {
        self.domain
            .iter()
            .find(|a| self.column(a) != other.column(a))
            .cloned()
    }
}

impl<A: Ord + Clone> LinearMap<A, A> {
    pub fn identity(basis: Vec<A>) -> Self {
        LinearMap::from_fn(basis.clone(), basis, |a| FormalSum::single(a.clone()))
    }
}

impl<A: Ord + Clone + Display, B: Ord + Clone + Display> LinearMap<A, B> {
    /// One line per nonzero column, for counterexample reports.
    pub fn describe(&self) -> String {
        let mut lines = Vec::new();
        for a in &self.domain {
            let img = self.column(a);
            if !img.is_zero() {
                lines.push(format!("{a} -> {img}"));
            }
        }
        lines.join("; ")
    }
}

/// Boundary operator of a cell basis, given each cell's signed facets.
pub fn boundary_map<A: Ord + Clone>(
    basis: Vec<A>,
    facets: impl Fn(&A) -> Vec<(A, i64)>,
) -> LinearMap<A, A> {
    LinearMap::from_fn(basis.clone(), basis, |a| {
        let mut out = FormalSum::zero();
        for (f, s) in facets(a) {
            out.add_term(f, crate::scalar::int(s));
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::simplex::{Simplex, SimplicialComplex};
    use crate::scalar::int;

    fn simplex_boundary(k: &SimplicialComplex) -> LinearMap<Simplex, Simplex> {
        boundary_map(k.basis(), |s| s.boundary_terms())
    }

    #[test]
    fn boundary_squares_to_zero() {
        for n in 1..=3 {
            let k = SimplicialComplex::standard(n);
            let d = simplex_boundary(&k);
            assert!(d.compose(&d).is_zero());
        }
    }

    #[test]
    fn coboundary_is_transpose() {
        let k = SimplicialComplex::standard(2);
        let d = simplex_boundary(&k);
        let delta = d.transpose();
        // δ(dual of [0]) picks up every edge containing vertex 0, with the
        // sign of [0] in its boundary
        let img = delta.apply(&FormalSum::single(Simplex::from_labels(&[0])));
        assert_eq!(img.coeff(&Simplex::from_labels(&[0, 1])), int(-1));
        assert_eq!(img.coeff(&Simplex::from_labels(&[0, 2])), int(-1));
        assert_eq!(img.coeff(&Simplex::from_labels(&[1, 2])), int(0));
        // δ² = 0
        assert!(delta.compose(&delta).is_zero());
    }
}
