//! Stellar subdivision and the welding deformation retractions.
//!
//! Subdividing a face [e_{i_0},…,e_{i_k}] of Δ^n adds a vertex ⋆ at its
//! barycenter. The welding maps retract the chains (and cochains) of the
//! subdivision onto those of the original simplex. The cochain maps are
//! given both by transposing the chain maps and by direct formulas; the
//! verification suite confirms the two agree.
//!
//! The cubical analogue subdivides the first k interval factors of the
//! n-cube at their midpoints, with tensor-product welding maps and a
//! symmetrized homotopy.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::complexes::{
    cubical_boundary, simplicial_boundary, CubeCell, CubicalComplex,
    DeformationRetraction, FormalSum, IntervalCell, LinearMap, Simplex, SimplicialComplex, Vertex,
};
use crate::report::{Check, Report};
use crate::scalar::{self, factorial, frac, Scalar};

fn is_superset(j: &[u32], i_set: &[u32]) -> bool {
    i_set.iter().all(|v| j.contains(v))
}

/// Labels in I that do not occur in J.
fn i_minus_j(i_set: &[u32], j: &[u32]) -> Vec<u32> {
    i_set.iter().copied().filter(|v| !j.contains(v)).collect()
}

/// The stellar subdivision of Δ^n at the face with vertex labels `i_set`:
/// cells [J] and [⋆∪J] for every J ⊆ {0,…,n} not containing all of I.
pub fn star_complex(n: usize, i_set: &[u32]) -> SimplicialComplex {
    assert!(!i_set.is_empty(), "subdivided face must be nonempty");
    assert!(i_set.windows(2).all(|w| w[0] < w[1]), "face labels not sorted");
    assert!(i_set.iter().all(|&v| v as usize <= n), "face label out of range");
    let labels: Vec<u32> = (0..=n as u32).collect();
    let mut gens = Vec::new();
    for mask in 0u64..(1 << labels.len()) {
        let j: Vec<u32> = labels
            .iter()
            .enumerate()
            .filter(|(idx, _)| mask & (1 << idx) != 0)
            .map(|(_, &l)| l)
            .collect();
        if is_superset(&j, i_set) {
            continue;
        }
        if !j.is_empty() {
            gens.push(Simplex::from_labels(&j));
        }
        gens.push(Simplex::starred(&j));
    }
    SimplicialComplex::from_generators(gens)
}

fn weld_incl_column(cell: &Simplex, i_set: &[u32]) -> FormalSum<Simplex> {
    let j = cell.numeric_labels();
    if !is_superset(&j, i_set) {
        return FormalSum::single(cell.clone());
    }
    // alternating sum over the positions of I inside J, each dropped and
    // replaced by the star vertex
    let mut out = FormalSum::zero();
    for (pos, &label) in j.iter().enumerate() {
        if !i_set.contains(&label) {
            continue;
        }
        let rest: Vec<u32> = j
            .iter()
            .copied()
            .filter(|&l| l != label)
            .collect();
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        out.add_term(Simplex::starred(&rest), scalar::int(sign));
    }
    out
}

fn weld_proj_column(cell: &Simplex, i_set: &[u32]) -> FormalSum<Simplex> {
    if !cell.contains_vertex(Vertex::Star) {
        return FormalSum::single(cell.clone());
    }
    let j = cell.numeric_labels();
    let k = i_set.len() - 1;
    let weight = frac(1, (k + 1) as i64);
    let mut out = FormalSum::zero();
    for alpha in i_minus_j(i_set, &j) {
        let mut verts = vec![Vertex::V(alpha)];
        verts.extend(j.iter().map(|&l| Vertex::V(l)));
        if let Some((s, sign)) = Simplex::oriented(&verts) {
            out.add_term(s, &weight * scalar::int(sign));
        }
    }
    out
}

fn weld_homotopy_column(cell: &Simplex, i_set: &[u32]) -> FormalSum<Simplex> {
    if !cell.contains_vertex(Vertex::Star) {
        return FormalSum::zero();
    }
    let j = cell.numeric_labels();
    let missing = i_minus_j(i_set, &j);
    if missing.len() == 1 {
        return FormalSum::zero();
    }
    let k = i_set.len() - 1;
    let weight = -frac(1, (k + 1) as i64);
    let mut out = FormalSum::zero();
    for alpha in missing {
        let mut verts = vec![Vertex::Star, Vertex::V(alpha)];
        verts.extend(j.iter().map(|&l| Vertex::V(l)));
        if let Some((s, sign)) = Simplex::oriented(&verts) {
            out.add_term(s, &weight * scalar::int(sign));
        }
    }
    out
}

/// The welding retraction of the chains of the subdivision onto the chains
/// of Δ^n.
pub fn stellar_chain_dr(n: usize, i_set: &[u32]) -> DeformationRetraction<Simplex> {
    let small = SimplicialComplex::standard(n);
    let big = star_complex(n, i_set);
    let small_basis = small.basis();
    let big_basis = big.basis();
    DeformationRetraction {
        d_small: simplicial_boundary(&small),
        d_big: simplicial_boundary(&big),
        incl: LinearMap::from_fn(small_basis.clone(), big_basis.clone(), |c| {
            weld_incl_column(c, i_set)
        }),
        proj: LinearMap::from_fn(big_basis.clone(), small_basis, |c| {
            weld_proj_column(c, i_set)
        }),
        homotopy: LinearMap::from_fn(big_basis.clone(), big_basis, |c| {
            weld_homotopy_column(c, i_set)
        }),
    }
}

fn coweld_incl_column(cell: &Simplex, i_set: &[u32]) -> FormalSum<Simplex> {
    let j = cell.numeric_labels();
    let k = i_set.len() - 1;
    let weight = frac(1, (k + 1) as i64);
    let mut out = FormalSum::zero();
    if !is_superset(&j, i_set) {
        out.add_term(cell.clone(), scalar::one());
    }
    for (pos, &label) in j.iter().enumerate() {
        if !i_set.contains(&label) {
            continue;
        }
        let rest: Vec<u32> = j.iter().copied().filter(|&l| l != label).collect();
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        out.add_term(Simplex::starred(&rest), &weight * scalar::int(sign));
    }
    out
}

fn coweld_proj_column(cell: &Simplex, i_set: &[u32]) -> FormalSum<Simplex> {
    if !cell.contains_vertex(Vertex::Star) {
        return FormalSum::single(cell.clone());
    }
    let j = cell.numeric_labels();
    let missing = i_minus_j(i_set, &j);
    if missing.len() != 1 {
        return FormalSum::zero();
    }
    let mut verts = vec![Vertex::V(missing[0])];
    verts.extend(j.iter().map(|&l| Vertex::V(l)));
    match Simplex::oriented(&verts) {
        Some((s, sign)) => FormalSum::term(s, scalar::int(sign)),
        None => FormalSum::zero(),
    }
}

fn coweld_homotopy_column(cell: &Simplex, i_set: &[u32]) -> FormalSum<Simplex> {
    if !cell.contains_vertex(Vertex::Star) {
        return FormalSum::zero();
    }
    let j = cell.numeric_labels();
    let k = i_set.len() - 1;
    let weight = -frac(1, (k + 1) as i64);
    let mut out = FormalSum::zero();
    for (pos, &label) in j.iter().enumerate() {
        if !i_set.contains(&label) {
            continue;
        }
        let rest: Vec<u32> = j.iter().copied().filter(|&l| l != label).collect();
        let sign = if pos % 2 == 0 { 1 } else { -1 };
        out.add_term(Simplex::starred(&rest), &weight * scalar::int(sign));
    }
    out
}

/// The welding retraction on cochains, built from the direct formulas
/// rather than by transposing `stellar_chain_dr`.
pub fn stellar_cochain_dr(n: usize, i_set: &[u32]) -> DeformationRetraction<Simplex> {
    let small = SimplicialComplex::standard(n);
    let big = star_complex(n, i_set);
    let small_basis = small.basis();
    let big_basis = big.basis();
    DeformationRetraction {
        d_small: simplicial_boundary(&small).transpose(),
        d_big: simplicial_boundary(&big).transpose(),
        incl: LinearMap::from_fn(small_basis.clone(), big_basis.clone(), |c| {
            coweld_incl_column(c, i_set)
        }),
        proj: LinearMap::from_fn(big_basis.clone(), small_basis, |c| {
            coweld_proj_column(c, i_set)
        }),
        homotopy: LinearMap::from_fn(big_basis.clone(), big_basis, |c| {
            coweld_homotopy_column(c, i_set)
        }),
    }
}

// ---------------------------------------------------------------------------
// cubical welding

/// The n-cube with its first k interval factors subdivided at the midpoint.
pub fn cubical_star_complex(n: usize, k: usize) -> CubicalComplex {
    assert!(k <= n);
    let flags: Vec<bool> = (0..n).map(|j| j < k).collect();
    CubicalComplex::product(&flags)
}

/// One interval factor of a cubical welding map.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum WeldSlotOp {
    Id,
    Incl,
    Proj,
    InclProj,
    Homotopy,
}

fn iv_incl(c: IntervalCell) -> Vec<(IntervalCell, Scalar)> {
    match c {
        IntervalCell::V0 => vec![(IntervalCell::V0, scalar::one())],
        IntervalCell::V1 => vec![(IntervalCell::V1, scalar::one())],
        IntervalCell::EFull => vec![
            (IntervalCell::ELeft, scalar::one()),
            (IntervalCell::ERight, scalar::one()),
        ],
        _ => panic!("inclusion applied to a subdivided cell"),
    }
}

fn iv_proj(c: IntervalCell) -> Vec<(IntervalCell, Scalar)> {
    match c {
        IntervalCell::V0 => vec![(IntervalCell::V0, scalar::one())],
        IntervalCell::V1 => vec![(IntervalCell::V1, scalar::one())],
        IntervalCell::VMid => vec![
            (IntervalCell::V0, frac(1, 2)),
            (IntervalCell::V1, frac(1, 2)),
        ],
        IntervalCell::ELeft | IntervalCell::ERight => vec![(IntervalCell::EFull, frac(1, 2))],
        IntervalCell::EFull => panic!("projection applied to an undivided edge"),
    }
}

fn iv_homotopy(c: IntervalCell) -> Vec<(IntervalCell, Scalar)> {
    match c {
        IntervalCell::VMid => vec![
            (IntervalCell::ELeft, frac(1, 2)),
            (IntervalCell::ERight, -frac(1, 2)),
        ],
        _ => Vec::new(),
    }
}

fn iv_incl_proj(c: IntervalCell) -> Vec<(IntervalCell, Scalar)> {
    let mut out: BTreeMap<IntervalCell, Scalar> = BTreeMap::new();
    for (mid, c1) in iv_proj(c) {
        for (fin, c2) in iv_incl(mid) {
            *out.entry(fin).or_insert_with(scalar::zero) += &c1 * &c2;
        }
    }
    out.into_iter().collect()
}

impl WeldSlotOp {
    fn is_odd(self) -> bool {
        self == WeldSlotOp::Homotopy
    }

    fn apply(self, c: IntervalCell) -> Vec<(IntervalCell, Scalar)> {
        match self {
            WeldSlotOp::Id => vec![(c, scalar::one())],
            WeldSlotOp::Incl => iv_incl(c),
            WeldSlotOp::Proj => iv_proj(c),
            WeldSlotOp::InclProj => iv_incl_proj(c),
            WeldSlotOp::Homotopy => iv_homotopy(c),
        }
    }
}

/// Tensor product of interval operators, with the Koszul sign for each odd
/// factor passing the edge slots to its left.
fn tensor_cell_map(
    domain: Vec<CubeCell>,
    codomain: Vec<CubeCell>,
    ops: &[WeldSlotOp],
) -> LinearMap<CubeCell, CubeCell> {
    let ops = ops.to_vec();
    LinearMap::from_fn(domain, codomain, move |cell| {
        let slots = cell.slots();
        assert_eq!(slots.len(), ops.len());
        let mut sign = 1i64;
        let mut deg_left = 0usize;
        let mut choices: Vec<Vec<(IntervalCell, Scalar)>> = Vec::with_capacity(ops.len());
        for (j, op) in ops.iter().enumerate() {
            if op.is_odd() && deg_left % 2 == 1 {
                sign = -sign;
            }
            choices.push(op.apply(slots[j]));
            deg_left += slots[j].dim();
        }
        let mut out = FormalSum::zero();
        for combo in choices.iter().multi_cartesian_product() {
            let mut coeff = scalar::int(sign);
            let new_slots: Vec<IntervalCell> = combo
                .iter()
                .map(|(c, w)| {
                    coeff *= w;
                    *c
                })
                .collect();
            out.add_term(CubeCell::new(new_slots), coeff);
        }
        out
    })
}

/// Slot permutation on cube cells with the Koszul sign of reordering the
/// edge factors. Slot j of the input lands in slot sigma[j].
pub fn permute_cube_cell(sigma: &[usize], cell: &CubeCell) -> (CubeCell, i64) {
    let slots = cell.slots();
    assert_eq!(slots.len(), sigma.len());
    let mut new_slots = vec![IntervalCell::V0; slots.len()];
    for (j, &target) in sigma.iter().enumerate() {
        new_slots[target] = slots[j];
    }
    let mut sign = 1i64;
    for j1 in 0..slots.len() {
        for j2 in (j1 + 1)..slots.len() {
            if slots[j1].dim() == 1 && slots[j2].dim() == 1 && sigma[j1] > sigma[j2] {
                sign = -sign;
            }
        }
    }
    (CubeCell::new(new_slots), sign)
}

fn permutation_cell_map(basis: Vec<CubeCell>, sigma: &[usize]) -> LinearMap<CubeCell, CubeCell> {
    let sigma = sigma.to_vec();
    LinearMap::from_fn(basis.clone(), basis, move |cell| {
        let (image, sign) = permute_cube_cell(&sigma, cell);
        FormalSum::term(image, scalar::int(sign))
    })
}

/// The cubical welding retraction of the subdivided n-cube onto the n-cube.
/// The homotopy is the average over permutations of the first k slots of
/// the staircase tensor Σ_j 1^{⊗(j−1)} ⊗ a ⊗ (ip)^{⊗(k−j)} ⊗ 1^{⊗(n−k)}.
pub fn cubical_welding_dr(n: usize, k: usize) -> DeformationRetraction<CubeCell> {
    let small = CubicalComplex::standard(n);
    let big = cubical_star_complex(n, k);
    let small_basis = small.basis();
    let big_basis = big.basis();

    let mut incl_ops = vec![WeldSlotOp::Incl; k];
    incl_ops.extend(vec![WeldSlotOp::Id; n - k]);
    let mut proj_ops = vec![WeldSlotOp::Proj; k];
    proj_ops.extend(vec![WeldSlotOp::Id; n - k]);

    let staircase = |j: usize| -> Vec<WeldSlotOp> {
        let mut ops = vec![WeldSlotOp::Id; j];
        ops.push(WeldSlotOp::Homotopy);
        ops.extend(vec![WeldSlotOp::InclProj; k - 1 - j]);
        ops.extend(vec![WeldSlotOp::Id; n - k]);
        ops
    };

    let mut homotopy = LinearMap::zero(big_basis.clone(), big_basis.clone());
    if k > 0 {
        for sigma_k in (0..k).permutations(k) {
            let mut sigma: Vec<usize> = sigma_k.clone();
            sigma.extend(k..n);
            let mut inv = vec![0usize; n];
            for (j, &v) in sigma.iter().enumerate() {
                inv[v] = j;
            }
            let tau = permutation_cell_map(big_basis.clone(), &sigma);
            let tau_inv = permutation_cell_map(big_basis.clone(), &inv);
            for j in 0..k {
                let inner = tensor_cell_map(big_basis.clone(), big_basis.clone(), &staircase(j));
                homotopy = homotopy.add(&tau.compose(&inner).compose(&tau_inv));
            }
        }
        homotopy = homotopy.scale(&(scalar::one() / factorial(k)));
    }

    DeformationRetraction {
        d_small: cubical_boundary(&small),
        d_big: cubical_boundary(&big),
        incl: tensor_cell_map(small_basis.clone(), big_basis.clone(), &incl_ops),
        proj: tensor_cell_map(big_basis.clone(), small_basis, &proj_ops),
        homotopy,
    }
}

// ---------------------------------------------------------------------------
// verification suite

fn map_eq_check(
    name: &str,
    lhs: &LinearMap<Simplex, Simplex>,
    rhs: &LinearMap<Simplex, Simplex>,
) -> Check {
    match lhs.first_difference(rhs) {
        None => Check::theorem(name, true, None),
        Some(a) => Check::theorem(
            name,
            false,
            Some(crate::report::CounterexampleOut {
                input: a.to_string(),
                lhs: lhs.column(&a).to_string(),
                rhs: rhs.column(&a).to_string(),
            }),
        ),
    }
}

pub fn verify_stellar(n: usize, i_set: &[u32], k: usize) -> Report {
    let mut checks = Vec::new();

    let chain = stellar_chain_dr(n, i_set);
    for ic in chain.check() {
        checks.push(Check::from_identity("chain", &ic));
    }

    let cochain = stellar_cochain_dr(n, i_set);
    for ic in cochain.check() {
        checks.push(Check::from_identity("cochain", &ic));
    }

    // the direct cochain formulas are the transpose of the chain maps
    let dual = chain.dualize();
    checks.push(map_eq_check("cochain_incl_is_dual", &cochain.incl, &dual.incl));
    checks.push(map_eq_check("cochain_proj_is_dual", &cochain.proj, &dual.proj));
    checks.push(map_eq_check(
        "cochain_homotopy_is_dual",
        &cochain.homotopy,
        &dual.homotopy,
    ));

    let cube = cubical_welding_dr(n, k);
    for ic in cube.check() {
        checks.push(Check::from_identity("cubical_weld", &ic));
    }
    let cube_dual = cube.dualize();
    for ic in cube_dual.check() {
        checks.push(Check::from_identity("cubical_coweld", &ic));
    }

    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    params.insert(
        "face".to_string(),
        i_set.iter().map(|v| v.to_string()).join(","),
    );
    params.insert("k".to_string(), k.to_string());
    Report::new("stellar", params, checks)
}
