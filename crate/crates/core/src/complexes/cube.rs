//! Cube cells as ordered products of interval cells.
//!
//! A cell of the n-cube (or of a slot-wise subdivided n-cube) is a tuple of
//! slot cells, one per coordinate. Each slot carries either a cell of Δ^1
//! (vertices 0, 1 and the full edge) or a cell of ⋆Δ^1 (vertices 0, mid, 1
//! and the two half edges). Orientation is the product orientation in slot
//! order; the boundary picks up the Koszul sign (-1)^(edge slots to the left).

use std::collections::BTreeSet;
use std::fmt;

/// A cell of Δ^1 or ⋆Δ^1 occupying one coordinate slot. Edges are oriented
/// in the direction of increasing coordinate.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IntervalCell {
    V0,
    VMid,
    V1,
    /// The edge [0, 1] of the undivided interval.
    EFull,
    /// The edge [0, mid] of the subdivided interval.
    ELeft,
    /// The edge [mid, 1] of the subdivided interval.
    ERight,
}

impl IntervalCell {
    pub fn dim(self) -> usize {
        match self {
            IntervalCell::V0 | IntervalCell::VMid | IntervalCell::V1 => 0,
            _ => 1,
        }
    }

    /// ∂edge = head - tail; empty for vertices.
    pub fn boundary_terms(self) -> Vec<(IntervalCell, i64)> {
        match self {
            IntervalCell::EFull => vec![(IntervalCell::V1, 1), (IntervalCell::V0, -1)],
            IntervalCell::ELeft => vec![(IntervalCell::VMid, 1), (IntervalCell::V0, -1)],
            IntervalCell::ERight => vec![(IntervalCell::V1, 1), (IntervalCell::VMid, -1)],
            _ => Vec::new(),
        }
    }

    /// True if the cell lives in the subdivided interval ⋆Δ^1 only.
    pub fn is_subdivided(self) -> bool {
        matches!(
            self,
            IntervalCell::VMid | IntervalCell::ELeft | IntervalCell::ERight
        )
    }

    fn faces(self) -> Vec<IntervalCell> {
        let mut out = vec![self];
        out.extend(self.boundary_terms().into_iter().map(|(c, _)| c));
        out
    }
}

impl fmt::Display for IntervalCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            IntervalCell::V0 => "0",
            IntervalCell::VMid => "m",
            IntervalCell::V1 => "1",
            IntervalCell::EFull => "01",
            IntervalCell::ELeft => "0m",
            IntervalCell::ERight => "m1",
        };
        write!(f, "{s}")
    }
}

/// A cell of a product of intervals, one `IntervalCell` per slot.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CubeCell {
    slots: Vec<IntervalCell>,
}

impl CubeCell {
    pub fn new(slots: Vec<IntervalCell>) -> Self {
        CubeCell { slots }
    }

    pub fn slots(&self) -> &[IntervalCell] {
        &self.slots
    }

    pub fn dim(&self) -> usize {
        self.slots.iter().map(|s| s.dim()).sum()
    }

    /// Slot-wise boundary with Koszul sign (-1)^(number of edge slots to the
    /// left of the differentiated slot).
    pub fn boundary_terms(&self) -> Vec<(CubeCell, i64)> {
        let mut out = Vec::new();
        let mut sign_left = 1i64;
        for (i, slot) in self.slots.iter().enumerate() {
            for (face, s) in slot.boundary_terms() {
                let mut slots = self.slots.clone();
                slots[i] = face;
                out.push((CubeCell { slots }, sign_left * s));
            }
            if slot.dim() == 1 {
                sign_left = -sign_left;
            }
        }
        out
    }
}

impl fmt::Display for CubeCell {
    /// Product syntax, e.g. "(01 x 0)" for edge-in-slot-1 times vertex 0.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.slots.iter().enumerate() {
            if i > 0 {
                write!(f, " x ")?;
            }
            write!(f, "{s}")?;
        }
        write!(f, ")")
    }
}

/// A finite cubical complex, closed under slot-wise faces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubicalComplex {
    cells: BTreeSet<CubeCell>,
}

impl CubicalComplex {
    /// Product complex: slot i carries ⋆Δ^1 if `subdivided[i]`, else Δ^1.
    pub fn product(subdivided: &[bool]) -> Self {
        let mut cells: Vec<Vec<IntervalCell>> = vec![Vec::new()];
        for &sub in subdivided {
            let choices: Vec<IntervalCell> = if sub {
                vec![
                    IntervalCell::V0,
                    IntervalCell::VMid,
                    IntervalCell::V1,
                    IntervalCell::ELeft,
                    IntervalCell::ERight,
                ]
            } else {
                vec![IntervalCell::V0, IntervalCell::V1, IntervalCell::EFull]
            };
            cells = cells
                .into_iter()
                .flat_map(|prefix| {
                    choices.iter().map(move |&c| {
                        let mut p = prefix.clone();
                        p.push(c);
                        p
                    })
                })
                .collect();
        }
        CubicalComplex {
            cells: cells.into_iter().map(CubeCell::new).collect(),
        }
    }

    /// The standard n-cube [0,1]^n.
    pub fn standard(n: usize) -> Self {
        CubicalComplex::product(&vec![false; n])
    }

    pub fn contains(&self, c: &CubeCell) -> bool {
        self.cells.contains(c)
    }

    pub fn cells(&self) -> impl Iterator<Item = &CubeCell> {
        self.cells.iter()
    }

    pub fn cells_of_dim(&self, d: usize) -> Vec<CubeCell> {
        self.cells.iter().filter(|c| c.dim() == d).cloned().collect()
    }

    pub fn basis(&self) -> Vec<CubeCell> {
        self.cells.iter().cloned().collect()
    }

    pub fn is_face_closed(&self) -> bool {
        self.cells.iter().all(|c| {
            c.slots().iter().enumerate().all(|(i, s)| {
                s.faces().iter().all(|f| {
                    let mut slots = c.slots().to_vec();
                    slots[i] = *f;
                    self.cells.contains(&CubeCell::new(slots))
                })
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cube_cell_counts() {
        // cube n=2: 4 vertices, 4 edges, 1 square
        let c = CubicalComplex::standard(2);
        assert_eq!(c.cells_of_dim(0).len(), 4);
        assert_eq!(c.cells_of_dim(1).len(), 4);
        assert_eq!(c.cells_of_dim(2).len(), 1);
        // cube n=3: 8, 12, 6, 1 cells
        let c = CubicalComplex::standard(3);
        assert_eq!(c.cells_of_dim(0).len(), 8);
        assert_eq!(c.cells_of_dim(1).len(), 12);
        assert_eq!(c.cells_of_dim(2).len(), 6);
        assert_eq!(c.cells_of_dim(3).len(), 1);
        assert!(c.is_face_closed());
    }

    #[test]
    fn koszul_boundary_sign() {
        // ∂(e x e) = (∂e x e) + (-1)(e x ∂e)
        let sq = CubeCell::new(vec![IntervalCell::EFull, IntervalCell::EFull]);
        let terms = sq.boundary_terms();
        assert_eq!(terms.len(), 4);
        let find = |a: IntervalCell, b: IntervalCell| {
            terms
                .iter()
                .find(|(c, _)| c.slots() == [a, b])
                .map(|(_, s)| *s)
                .unwrap()
        };
        assert_eq!(find(IntervalCell::V1, IntervalCell::EFull), 1);
        assert_eq!(find(IntervalCell::V0, IntervalCell::EFull), -1);
        assert_eq!(find(IntervalCell::EFull, IntervalCell::V1), -1);
        assert_eq!(find(IntervalCell::EFull, IntervalCell::V0), 1);
    }
}
