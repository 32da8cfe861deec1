//! Oriented simplices and finite simplicial complexes.
//!
//! A simplex is stored canonically: vertices strictly increasing, with the
//! distinguished vertex `*` ordered before every numeric label. Non-canonical
//! vertex orderings normalize to the canonical cell together with the sign of
//! the sorting permutation, so identities like [e_0, e_*] = -[e_*, e_0] hold
//! automatically.

use std::collections::BTreeSet;
use std::fmt;

/// Vertex label. `Star` sorts before every numeric label.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Vertex {
    Star,
    V(u32),
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Vertex::Star => write!(f, "*"),
            Vertex::V(i) => write!(f, "{i}"),
        }
    }
}

/// A canonical oriented simplex: strictly increasing vertex list.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Simplex {
    verts: Vec<Vertex>,
}

impl Simplex {
    /// Canonical simplex from an already sorted, distinct vertex list.
    /// Panics if the list is not strictly increasing or is empty.
    pub fn new(verts: Vec<Vertex>) -> Self {
        assert!(!verts.is_empty(), "empty simplex");
        assert!(verts.windows(2).all(|w| w[0] < w[1]), "vertices not sorted");
        Simplex { verts }
    }

    /// Canonicalize an arbitrary vertex list. Returns the canonical simplex
    /// and the sign of the sorting permutation, or `None` if a vertex repeats
    /// (a degenerate simplex, which is zero as a chain).
    pub fn oriented(verts: &[Vertex]) -> Option<(Simplex, i64)> {
        let mut v = verts.to_vec();
        // parity of the sorting permutation by counting inversions
        let mut sign = 1i64;
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                if v[i] == v[j] {
                    return None;
                }
                if v[i] > v[j] {
                    sign = -sign;
                }
            }
        }
        v.sort();
        Some((Simplex { verts: v }, sign))
    }

    /// Simplex on numeric labels, e.g. `from_labels(&[0, 2])` = [e_0, e_2].
    pub fn from_labels(labels: &[u32]) -> Self {
        Simplex::new(labels.iter().map(|&l| Vertex::V(l)).collect())
    }

    /// Simplex [e_*, e_{j_0}, ..., e_{j_l}] on sorted numeric labels.
    pub fn starred(labels: &[u32]) -> Self {
        let mut v = vec![Vertex::Star];
        v.extend(labels.iter().map(|&l| Vertex::V(l)));
        Simplex::new(v)
    }

    pub fn verts(&self) -> &[Vertex] {
        &self.verts
    }

    pub fn dim(&self) -> usize {
        self.verts.len() - 1
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        self.verts.binary_search(&v).is_ok()
    }

    /// True if `other` is a face of (or equal to) `self`.
    pub fn has_face(&self, other: &Simplex) -> bool {
        other.verts.iter().all(|v| self.contains_vertex(*v))
    }

    /// The face with position `i` removed.
    pub fn facet(&self, i: usize) -> Simplex {
        let mut v = self.verts.clone();
        v.remove(i);
        Simplex { verts: v }
    }

    /// Numeric labels of this simplex, ignoring `*`.
    pub fn numeric_labels(&self) -> Vec<u32> {
        self.verts
            .iter()
            .filter_map(|v| match v {
                Vertex::V(i) => Some(*i),
                Vertex::Star => None,
            })
            .collect()
    }

    /// Alternating-sum boundary as (face, sign) pairs. Empty for vertices.
    pub fn boundary_terms(&self) -> Vec<(Simplex, i64)> {
        if self.dim() == 0 {
            return Vec::new();
        }
        (0..self.verts.len())
            .map(|i| (self.facet(i), if i % 2 == 0 { 1 } else { -1 }))
            .collect()
    }

    /// All nonempty subsets of the vertex set, as simplices.
    pub fn all_faces(&self) -> Vec<Simplex> {
        let n = self.verts.len();
        let mut out = Vec::new();
        for mask in 1u64..(1 << n) {
            let verts: Vec<Vertex> = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| self.verts[i])
                .collect();
            out.push(Simplex { verts });
        }
        out
    }
}

impl fmt::Display for Simplex {
    /// Textual cell syntax: "[*,0,2]" for [e_*, e_0, e_2].
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, v) in self.verts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "]")
    }
}

/// A finite simplicial complex: a set of canonical simplices closed under
/// taking faces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplicialComplex {
    cells: BTreeSet<Simplex>,
}

impl SimplicialComplex {
    /// Complex generated by the given cells (closure under faces).
    pub fn from_generators(generators: impl IntoIterator<Item = Simplex>) -> Self {
        let mut cells = BTreeSet::new();
        for g in generators {
            for f in g.all_faces() {
                cells.insert(f);
            }
        }
        SimplicialComplex { cells }
    }

    /// The standard n-simplex with vertices 0..=n.
    pub fn standard(n: usize) -> Self {
        let top = Simplex::from_labels(&(0..=n as u32).collect::<Vec<_>>());
        SimplicialComplex::from_generators([top])
    }

    pub fn contains(&self, s: &Simplex) -> bool {
        self.cells.contains(s)
    }

    pub fn cells(&self) -> impl Iterator<Item = &Simplex> {
        self.cells.iter()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<Simplex> {
        self.cells.iter().filter(|c| c.dim() == d).cloned().collect()
    }

    pub fn dim(&self) -> usize {
        self.cells.iter().map(|c| c.dim()).max().unwrap_or(0)
    }

    /// Cells of maximal dimension that are not a face of any other cell.
    pub fn top_cells(&self) -> Vec<Simplex> {
        self.cells
            .iter()
            .filter(|c| {
                !self
                    .cells
                    .iter()
                    .any(|d| d.dim() > c.dim() && d.has_face(c))
            })
            .cloned()
            .collect()
    }

    pub fn basis(&self) -> Vec<Simplex> {
        self.cells.iter().cloned().collect()
    }

    /// Cells of dimension `dim(σ') + 1` whose boundary contains σ'.
    pub fn cofacets(&self, s: &Simplex) -> Vec<Simplex> {
        self.cells
            .iter()
            .filter(|c| c.dim() == s.dim() + 1 && c.has_face(s))
            .cloned()
            .collect()
    }

    /// Remove a set of cells (caller is responsible for face-closure of the
    /// result; used for elementary collapses where the pair is free).
    pub fn without(&self, removed: &[Simplex]) -> Self {
        let mut cells = self.cells.clone();
        for r in removed {
            cells.remove(r);
        }
        SimplicialComplex { cells }
    }

    /// Add cells (caller supplies a face-closed extension).
    pub fn with(&self, added: &[Simplex]) -> Self {
        let mut cells = self.cells.clone();
        for a in added {
            cells.insert(a.clone());
        }
        SimplicialComplex { cells }
    }

    pub fn is_face_closed(&self) -> bool {
        self.cells.iter().all(|c| {
            c.boundary_terms()
                .iter()
                .all(|(f, _)| self.cells.contains(f))
        })
    }
}
