//! Piecewise polynomial forms over a simplicial complex.
//!
//! Each top cell carries a form in its own barycentric coordinates, indexed
//! by the cell's canonical vertex order. The construction validates the
//! gluing condition: the pullbacks of two pieces to any shared face must
//! agree as forms on that face.

use std::collections::BTreeMap;

use super::{canonical_coord, BaryPoint, SimplexForm};
use crate::complexes::simplex::{Simplex, SimplicialComplex};
use crate::scalar::Scalar;

use super::poly::Poly;

/// Affine chart of a cell into a global simplex: the global barycentric
/// coordinates of each local vertex, listed in the cell's canonical vertex
/// order.
pub type Chart = Vec<BaryPoint>;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PiecewiseForm {
    complex: SimplicialComplex,
    pieces: BTreeMap<Simplex, SimplexForm>,
}

/// Local positions (as face labels) of the vertices of `face` inside `cell`.
fn positions(cell: &Simplex, face: &Simplex) -> Vec<u32> {
    face.verts()
        .iter()
        .map(|v| {
            cell.verts()
                .iter()
                .position(|w| w == v)
                .expect("face vertex not in cell") as u32
        })
        .collect()
}

impl PiecewiseForm {
    /// Build and validate. The map must assign one form (of matching
    /// dimension) to every top cell; any face mismatch is an error naming
    /// the offending face.
    pub fn new(
        complex: SimplicialComplex,
        pieces: BTreeMap<Simplex, SimplexForm>,
    ) -> Result<Self, String> {
        let tops = complex.top_cells();
        for t in &tops {
            let form = pieces
                .get(t)
                .ok_or_else(|| format!("missing piece for top cell {t}"))?;
            if form.n() != t.dim() {
                return Err(format!("piece for {t} has wrong dimension"));
            }
        }
        if pieces.len() != tops.len() {
            return Err("pieces assigned to non-top cells".to_string());
        }
        let pf = PiecewiseForm { complex, pieces };
        pf.validate()?;
        Ok(pf)
    }

    fn validate(&self) -> Result<(), String> {
        let tops: Vec<Simplex> = self.pieces.keys().cloned().collect();
        for (i, t1) in tops.iter().enumerate() {
            for t2 in &tops[i + 1..] {
                let shared: Vec<_> = t1
                    .all_faces()
                    .into_iter()
                    .filter(|f| t2.has_face(f))
                    .collect();
                for f in shared {
                    let r1 = self.pieces[t1].restrict_to_face(&positions(t1, &f));
                    let r2 = self.pieces[t2].restrict_to_face(&positions(t2, &f));
                    if r1 != r2 {
                        return Err(format!(
                            "incompatible restrictions to face {f}: {} vs {}",
                            r1.display(),
                            r2.display()
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    pub fn piece(&self, cell: &Simplex) -> &SimplexForm {
        &self.pieces[cell]
    }

    pub fn pieces(&self) -> impl Iterator<Item = (&Simplex, &SimplexForm)> {
        self.pieces.iter()
    }

    /// Restriction of the piecewise form to an arbitrary cell of the
    /// complex, in that cell's own coordinates. Well defined by the gluing
    /// condition.
    pub fn on_cell(&self, cell: &Simplex) -> SimplexForm {
        if let Some(f) = self.pieces.get(cell) {
            return f.clone();
        }
        let t = self
            .pieces
            .keys()
            .find(|t| t.has_face(cell))
            .unwrap_or_else(|| panic!("cell {cell} not in any top cell"));
        self.pieces[t].restrict_to_face(&positions(t, cell))
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.values().all(|f| f.is_zero())
    }

    /// Apply a per-piece operation; the caller guarantees the result still
    /// glues (checked, surfacing implementation bugs loudly).
    pub fn map_pieces(&self, op: impl Fn(&Simplex, &SimplexForm) -> SimplexForm) -> Self {
        let pieces: BTreeMap<Simplex, SimplexForm> = self
            .pieces
            .iter()
            .map(|(t, f)| (t.clone(), op(t, f)))
            .collect();
        let out = PiecewiseForm {
            complex: self.complex.clone(),
            pieces,
        };
        out.validate()
            .unwrap_or_else(|e| panic!("per-piece operation broke gluing: {e}"));
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.complex == other.complex);
        self.map_pieces(|t, f| f.add(&other.pieces[t]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert!(self.complex == other.complex);
        self.map_pieces(|t, f| f.sub(&other.pieces[t]))
    }

    pub fn neg(&self) -> Self {
        self.map_pieces(|_, f| f.neg())
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        self.map_pieces(|_, f| f.scale(c))
    }

    pub fn d(&self) -> Self {
        self.map_pieces(|_, f| f.d())
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.values().map(|f| f.max_degree()).max().unwrap_or(0)
    }

    pub fn display(&self) -> String {
        self.pieces
            .iter()
            .map(|(t, f)| format!("{t}: {}", f.display()))
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// Pull a global form on Δ^n back to every top cell of a subdivision, each
/// cell entering through its chart.
pub fn restrict_global(
    global: &SimplexForm,
    complex: &SimplicialComplex,
    charts: &BTreeMap<Simplex, Chart>,
) -> PiecewiseForm {
    let n = global.n();
    let mut pieces = BTreeMap::new();
    for t in complex.top_cells() {
        let chart = charts
            .get(&t)
            .unwrap_or_else(|| panic!("no chart for top cell {t}"));
        let q = t.dim();
        assert_eq!(chart.len(), q + 1, "chart vertex count mismatch");
        let images: Vec<Poly> = (0..n)
            .map(|a| {
                let mut p = Poly::zero(q);
                for (r, point) in chart.iter().enumerate() {
                    assert_eq!(point.len(), n + 1);
                    p = p.add(&canonical_coord(q, r).scale(&point[a]));
                }
                p
            })
            .collect();
        pieces.insert(
            t.clone(),
            SimplexForm::from_canonical(q, global.form().pullback(&images)),
        );
    }
    PiecewiseForm::new(complex.clone(), pieces)
        .unwrap_or_else(|e| panic!("global restriction failed gluing: {e}"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::simplex::Vertex;
    use crate::scalar::{frac, int};
    use crate::simplex_forms::{vertex_point, SimplexForm};

    /// The interval [0,1] split at a midpoint vertex ⋆, with charts.
    fn split_interval() -> (SimplicialComplex, BTreeMap<Simplex, Chart>) {
        let left = Simplex::new(vec![Vertex::Star, Vertex::V(0)]);
        let right = Simplex::new(vec![Vertex::Star, Vertex::V(1)]);
        let complex = SimplicialComplex::from_generators([left.clone(), right.clone()]);
        let mid: BaryPoint = vec![frac(1, 2), frac(1, 2)];
        let mut charts = BTreeMap::new();
        charts.insert(left, vec![mid.clone(), vertex_point(1, 0)]);
        charts.insert(right, vec![mid, vertex_point(1, 1)]);
        (complex, charts)
    }

    #[test]
    fn constant_restricts_to_constant() {
        let (complex, charts) = split_interval();
        let pf = restrict_global(&SimplexForm::one(1), &complex, &charts);
        for (_, f) in pf.pieces() {
            assert_eq!(*f, SimplexForm::one(1));
        }
    }

    #[test]
    fn dt_restricts_with_chart_scaling() {
        // global dt = dt_1 restricts to ±(1/2)d(local) in each half
        let (complex, charts) = split_interval();
        let pf = restrict_global(&SimplexForm::d_coord(1, 1), &complex, &charts);
        let left = Simplex::new(vec![Vertex::Star, Vertex::V(0)]);
        let right = Simplex::new(vec![Vertex::Star, Vertex::V(1)]);
        // left chart: t_1 = (1/2)s_0 with s_0 the ⋆ coordinate, so dt -> (1/2)ds_0
        assert_eq!(
            *pf.piece(&left),
            SimplexForm::d_coord(1, 0).scale(&frac(1, 2))
        );
        // right chart: t_1 = (1/2)s_0 + s_1 = 1 - (1/2)s_0
        assert_eq!(
            *pf.piece(&right),
            SimplexForm::d_coord(1, 0).scale(&frac(-1, 2))
        );
    }

    #[test]
    fn incompatible_pieces_rejected() {
        let (complex, _) = split_interval();
        let left = Simplex::new(vec![Vertex::Star, Vertex::V(0)]);
        let right = Simplex::new(vec![Vertex::Star, Vertex::V(1)]);
        let mut pieces = BTreeMap::new();
        pieces.insert(left, SimplexForm::one(1));
        pieces.insert(right, SimplexForm::constant(1, int(2)));
        let err = PiecewiseForm::new(complex, pieces).unwrap_err();
        assert!(err.contains("[*]"), "error should name the shared face: {err}");
    }
}
