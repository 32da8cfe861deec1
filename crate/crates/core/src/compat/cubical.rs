//! Compatibility of the cube calculus with midpoint subdivision.
//!
//! Forms on the cube with its first k interval factors split at 1/2 are
//! stored piecewise: one polynomial form per choice of half in each split
//! slot, in that piece's own unit-cube coordinates. The subdivided
//! Whitney/integration/homotopy operators act slot-wise and compose with
//! the cubical welding retraction on cochains; the composite matches the
//! flat operators for W and R and differs from the flat homotopy by a
//! closed defect with an explicit rearrangement when every slot is split.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;

use crate::complexes::{cubical_boundary, CubeCell, FormalSum, IntervalCell};
use crate::cube_dupont::{cube_integration, cube_probe_forms, cube_s, cube_whitney, embed, CubeForm, CubeSVariant};
use crate::report::{eq_check, Check, Report};
use crate::scalar::{self, factorial, frac, Scalar};
use crate::simplex_forms::form::Form;
use crate::simplex_forms::poly::Poly;
use crate::simplex_forms::Lcg;
use crate::stellar::{cubical_star_complex, cubical_welding_dr};

/// Piecewise polynomial form on the n-cube with slots 0..k split at the
/// midpoint: one form per assignment of halves (false = lower half).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StarCubeForm {
    n: usize,
    k: usize,
    pieces: BTreeMap<Vec<bool>, CubeForm>,
}

fn piece_keys(k: usize) -> Vec<Vec<bool>> {
    (0u32..(1 << k))
        .map(|bits| (0..k).map(|i| bits & (1 << i) != 0).collect())
        .collect()
}

impl StarCubeForm {
    pub fn zero(n: usize, k: usize) -> Self {
        StarCubeForm {
            n,
            k,
            pieces: piece_keys(k)
                .into_iter()
                .map(|key| (key, CubeForm::zero(n)))
                .collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn piece(&self, key: &[bool]) -> &CubeForm {
        &self.pieces[key]
    }

    pub fn is_zero(&self) -> bool {
        self.pieces.values().all(|f| f.is_zero())
    }

    pub fn map_pieces(&self, op: impl Fn(&[bool], &CubeForm) -> CubeForm) -> Self {
        let out = StarCubeForm {
            n: self.n,
            k: self.k,
            pieces: self
                .pieces
                .iter()
                .map(|(key, f)| (key.clone(), op(key, f)))
                .collect(),
        };
        out.validate()
            .unwrap_or_else(|e| panic!("piecewise cube operation broke gluing: {e}"));
        out
    }

    /// Gluing: in each split slot, the lower piece at u = 1 must agree with
    /// the upper piece at u = 0 (du terms in that slot drop out).
    pub fn validate(&self) -> Result<(), String> {
        for key in piece_keys(self.k) {
            if !self.pieces.contains_key(&key) {
                return Err(format!("missing piece {key:?}"));
            }
        }
        for (key, f) in &self.pieces {
            for j in 0..self.k {
                if key[j] {
                    continue;
                }
                let mut other = key.clone();
                other[j] = true;
                let low = face_value(f, j, true);
                let high = face_value(&self.pieces[&other], j, false);
                if low != high {
                    return Err(format!(
                        "pieces {key:?}/{other:?} disagree across slot {j}: {} vs {}",
                        low.display(&|i| format!("x{}", i + 1)),
                        high.display(&|i| format!("x{}", i + 1))
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert!(self.n == other.n && self.k == other.k);
        self.map_pieces(|key, f| f.add(&other.pieces[key]))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
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

    /// Slot permutation fixing the split/plain partition: sigma must map
    /// 0..k to itself.
    pub fn permute_slots(&self, sigma: &[usize]) -> Self {
        assert!(sigma[..self.k].iter().all(|&v| v < self.k));
        let out = StarCubeForm {
            n: self.n,
            k: self.k,
            pieces: self
                .pieces
                .iter()
                .map(|(key, f)| {
                    let mut new_key = vec![false; self.k];
                    for (i, &half) in key.iter().enumerate() {
                        new_key[sigma[i]] = half;
                    }
                    (new_key, f.permute_slots(sigma))
                })
                .collect(),
        };
        out.validate()
            .unwrap_or_else(|e| panic!("slot permutation broke gluing: {e}"));
        out
    }

    pub fn display(&self) -> String {
        self.pieces
            .iter()
            .map(|(key, f)| {
                let tag: String = key.iter().map(|&b| if b { 'R' } else { 'L' }).collect();
                format!("[{tag}]: {}", f.display())
            })
            .collect::<Vec<_>>()
            .join(" | ")
    }
}

/// Substitute the endpoint of slot j (upper if `at_one`), dropping du_j.
fn face_value(f: &CubeForm, j: usize, at_one: bool) -> Form {
    let n = f.n();
    let images: Vec<Poly> = (0..n)
        .map(|i| {
            if i == j {
                if at_one {
                    Poly::one(n)
                } else {
                    Poly::zero(n)
                }
            } else {
                Poly::var(n, i)
            }
        })
        .collect();
    f.form().pullback(&images)
}

/// Restrict a global polynomial form on the cube to the subdivision: in
/// split slot j the lower piece enters through x_j = u_j/2 and the upper
/// through x_j = (1 + u_j)/2.
pub fn restrict_to_star_cube(n: usize, k: usize, global: &CubeForm) -> StarCubeForm {
    let mut pieces = BTreeMap::new();
    for key in piece_keys(k) {
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                if i < k {
                    let half = Poly::var(n, i).scale(&frac(1, 2));
                    if key[i] {
                        half.add(&Poly::constant(n, frac(1, 2)))
                    } else {
                        half
                    }
                } else {
                    Poly::var(n, i)
                }
            })
            .collect();
        pieces.insert(
            key,
            CubeForm::from_form(n, global.form().pullback(&images)),
        );
    }
    let out = StarCubeForm { n, k, pieces };
    out.validate()
        .unwrap_or_else(|e| panic!("global restriction failed gluing: {e}"));
    out
}

/// Whitney form of one interval cell on one piece half, in local
/// coordinates: coefficient polynomial in u plus a du flag. None when the
/// cell does not touch this half. `half` is None for a plain slot.
fn slot_whitney_local(cell: IntervalCell, half: Option<bool>) -> Option<(Poly, bool)> {
    let u = Poly::var(1, 0);
    let one = Poly::one(1);
    let (poly, du) = match (cell, half) {
        (IntervalCell::V0, None) | (IntervalCell::V0, Some(false)) => (one.sub(&u), false),
        (IntervalCell::V0, Some(true)) => return None,
        (IntervalCell::V1, None) | (IntervalCell::V1, Some(true)) => (u, false),
        (IntervalCell::V1, Some(false)) => return None,
        (IntervalCell::EFull, None) => (one, true),
        (IntervalCell::VMid, Some(false)) => (u, false),
        (IntervalCell::VMid, Some(true)) => (one.sub(&u), false),
        (IntervalCell::ELeft, Some(false)) => (one, true),
        (IntervalCell::ERight, Some(true)) => (one, true),
        (IntervalCell::ELeft, Some(true)) | (IntervalCell::ERight, Some(false)) => return None,
        _ => panic!("cell/slot mismatch"),
    };
    Some((poly, du))
}

/// The Whitney map of the subdivided cube.
pub fn star_cube_whitney(n: usize, k: usize, x: &FormalSum<CubeCell>) -> StarCubeForm {
    let mut out = StarCubeForm::zero(n, k);
    for (cell, c) in x.terms() {
        assert_eq!(cell.slots().len(), n);
        out = out.map_pieces(|key, f| {
            let mut w = CubeForm::one(n);
            let mut dead = false;
            for (j, &slot_cell) in cell.slots().iter().enumerate() {
                let half = if j < k { Some(key[j]) } else { None };
                match slot_whitney_local(slot_cell, half) {
                    None => {
                        dead = true;
                        break;
                    }
                    Some((poly, du)) => {
                        let f1 = if du {
                            Form::poly_wedge(&poly, &[0])
                        } else {
                            Form::from_poly(&poly)
                        };
                        w = w.wedge(&CubeForm::from_form(n, embed(&f1, n, j)));
                    }
                }
            }
            if dead {
                f.clone()
            } else {
                f.add(&w.scale(c))
            }
        });
    }
    out
}

/// The piece a cell is evaluated on, and the local endpoint or edge flag
/// per slot.
fn cell_home(cell: &CubeCell, k: usize) -> Vec<bool> {
    (0..k)
        .map(|j| matches!(cell.slots()[j], IntervalCell::V1 | IntervalCell::ERight))
        .collect()
}

/// The integration map of the subdivided cube: vertices evaluate, edges
/// integrate, each cell read off the piece it lies in.
pub fn star_cube_integration(n: usize, k: usize, a: &StarCubeForm) -> FormalSum<CubeCell> {
    let mut out = FormalSum::zero();
    for cell in cubical_star_complex(n, k).basis() {
        let home = cell_home(&cell, k);
        let form = a.piece(&home);
        let mut total = scalar::zero();
        for (key, c) in form.form().terms() {
            let mut coeff = c.clone();
            let mut dead = false;
            for (j, &slot_cell) in cell.slots().iter().enumerate() {
                let m = key.mono[j];
                let has_dx = key.wedge.contains(&(j as u8));
                // local coordinate of the cell in its home piece
                let factor = match slot_cell {
                    IntervalCell::EFull | IntervalCell::ELeft | IntervalCell::ERight => {
                        if has_dx {
                            scalar::one() / scalar::int((m + 1) as i64)
                        } else {
                            scalar::zero()
                        }
                    }
                    vertex => {
                        if has_dx {
                            scalar::zero()
                        } else {
                            // V0 -> u = 0, V1 -> u = 1; VMid is u = 1 of the
                            // lower piece by the home convention
                            let at_one = match vertex {
                                IntervalCell::V0 => false,
                                IntervalCell::V1 => true,
                                IntervalCell::VMid => true,
                                _ => unreachable!(),
                            };
                            if at_one {
                                scalar::one()
                            } else if m == 0 {
                                scalar::one()
                            } else {
                                scalar::zero()
                            }
                        }
                    }
                };
                if factor.is_zero() {
                    dead = true;
                    break;
                }
                coeff *= factor;
            }
            if !dead {
                total += coeff;
            }
        }
        out.add_term(cell, total);
    }
    out
}

/// One interval factor of an operator on the subdivided cube. The plain
/// variants act across the midpoint; the star variants act half by half.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum StarSlotOp {
    Id,
    StarS,
    StarWi,
    StarWiMinus1,
    PlainS,
    PlainWi,
    OneMinusPlainWi,
}

/// Basis output of a slot op: destination half (meaningless for plain
/// slots) and a 1-variable form.
type SlotOut = Vec<(bool, Form)>;

fn u_poly(m: u32) -> Poly {
    Poly::monomial(1, vec![m], scalar::one())
}

fn form_0(p: Poly) -> Form {
    Form::from_poly(&p)
}

fn form_1(p: Poly) -> Form {
    Form::poly_wedge(&p, &[0])
}

impl StarSlotOp {
    pub fn is_odd(self) -> bool {
        matches!(self, StarSlotOp::StarS | StarSlotOp::PlainS)
    }

    /// Action on the basis element u^m (du) living on `half` of a split
    /// slot, or on a plain slot when `half` is None.
    fn apply(self, half: Option<bool>, m: u32, du: bool) -> SlotOut {
        let side = half.unwrap_or(false);
        let inv = scalar::one() / scalar::int((m + 1) as i64);
        match self {
            StarSlotOp::Id => {
                let f = if du { form_1(u_poly(m)) } else { form_0(u_poly(m)) };
                vec![(side, f)]
            }
            StarSlotOp::StarS => {
                if !du {
                    return Vec::new();
                }
                // local antiderivative minus its linear interpolant
                let p = u_poly(m + 1)
                    .scale(&inv)
                    .sub(&u_poly(1).scale(&inv));
                vec![(side, form_0(p))]
            }
            StarSlotOp::StarWi => {
                if du {
                    vec![(side, form_1(Poly::constant(1, inv)))]
                } else if m == 0 {
                    vec![(side, form_0(Poly::one(1)))]
                } else {
                    vec![(side, form_0(u_poly(1)))]
                }
            }
            StarSlotOp::StarWiMinus1 => {
                let mut out = StarSlotOp::StarWi.apply(half, m, du);
                for (s, f) in StarSlotOp::Id.apply(half, m, du) {
                    out.push((s, f.neg()));
                }
                out
            }
            StarSlotOp::PlainS => {
                if !du {
                    return Vec::new();
                }
                match half {
                    None => {
                        let p = u_poly(m + 1)
                            .scale(&inv)
                            .sub(&u_poly(1).scale(&inv));
                        vec![(side, form_0(p))]
                    }
                    Some(false) => {
                        // lower-half input: antiderivative on the lower
                        // half, its endpoint total beyond
                        let half_inv = &inv * frac(1, 2);
                        let low = u_poly(m + 1)
                            .scale(&inv)
                            .sub(&u_poly(1).scale(&half_inv));
                        let high = Poly::one(1)
                            .sub(&u_poly(1))
                            .scale(&half_inv);
                        vec![(false, form_0(low)), (true, form_0(high))]
                    }
                    Some(true) => {
                        let half_inv = &inv * frac(1, 2);
                        let low = u_poly(1).scale(&half_inv).neg();
                        let high = u_poly(m + 1).scale(&inv).sub(
                            &Poly::one(1).add(&u_poly(1)).scale(&half_inv),
                        );
                        vec![(false, form_0(low)), (true, form_0(high))]
                    }
                }
            }
            StarSlotOp::PlainWi => {
                match half {
                    None => StarSlotOp::StarWi.apply(None, m, du),
                    Some(s) => {
                        if du {
                            let half_inv = &inv * frac(1, 2);
                            let f = form_1(Poly::constant(1, half_inv));
                            vec![(false, f.clone()), (true, f)]
                        } else if s {
                            // value 1 at the top endpoint: interpolant x,
                            // read in each half's local coordinate
                            vec![
                                (false, form_0(u_poly(1).scale(&frac(1, 2)))),
                                (
                                    true,
                                    form_0(
                                        Poly::one(1)
                                            .add(&u_poly(1))
                                            .scale(&frac(1, 2)),
                                    ),
                                ),
                            ]
                        } else if m == 0 {
                            // value 1 at the bottom endpoint: interpolant 1 − x
                            vec![
                                (
                                    false,
                                    form_0(
                                        Poly::one(1)
                                            .sub(&u_poly(1).scale(&frac(1, 2))),
                                    ),
                                ),
                                (
                                    true,
                                    form_0(
                                        Poly::one(1)
                                            .sub(&u_poly(1))
                                            .scale(&frac(1, 2)),
                                    ),
                                ),
                            ]
                        } else {
                            Vec::new()
                        }
                    }
                }
            }
            StarSlotOp::OneMinusPlainWi => {
                let mut out = StarSlotOp::Id.apply(half, m, du);
                for (s, f) in StarSlotOp::PlainWi.apply(half, m, du) {
                    out.push((s, f.neg()));
                }
                out
            }
        }
    }
}

/// Apply a tensor of slot operators to a piecewise cube form, with the
/// Koszul sign for each odd factor passing the form degree to its left.
pub fn star_tensor_apply(a: &StarCubeForm, ops: &[StarSlotOp]) -> StarCubeForm {
    let n = a.n();
    let k = a.k();
    assert_eq!(ops.len(), n);
    let mut acc: BTreeMap<Vec<bool>, CubeForm> = piece_keys(k)
        .into_iter()
        .map(|key| (key, CubeForm::zero(n)))
        .collect();
    for (piece_key, form) in &a.pieces {
        for (tk, c) in form.form().terms() {
            let mut sign = 1i64;
            let mut deg_left = 0usize;
            let mut per_slot: Vec<SlotOut> = Vec::with_capacity(n);
            for (j, op) in ops.iter().enumerate() {
                let m = tk.mono[j];
                let du = tk.wedge.contains(&(j as u8));
                if op.is_odd() && deg_left % 2 == 1 {
                    sign = -sign;
                }
                let half = if j < k { Some(piece_key[j]) } else { None };
                per_slot.push(op.apply(half, m, du));
                if du {
                    deg_left += 1;
                }
            }
            if per_slot.iter().any(|v| v.is_empty()) {
                continue;
            }
            for combo in per_slot.iter().multi_cartesian_product() {
                let mut key = piece_key.clone();
                let mut term = Form::from_poly(&Poly::constant(n, c * scalar::int(sign)));
                for (j, (side, f1)) in combo.iter().enumerate() {
                    if j < k {
                        key[j] = *side;
                    }
                    term = term.wedge(&embed(f1, n, j));
                }
                let slot = acc.get_mut(&key).unwrap();
                *slot = slot.add(&CubeForm::from_form(n, term));
            }
        }
    }
    let out = StarCubeForm { n, k, pieces: acc };
    out.validate()
        .unwrap_or_else(|e| panic!("tensor operator broke gluing: {e}"));
    out
}

/// The Dupont homotopy of the subdivided cube, by the weighted staircase
/// expansion with the split-slot interval homotopy in the split slots.
pub fn star_cube_s(a: &StarCubeForm) -> StarCubeForm {
    let n = a.n();
    let k = a.k();
    if n == 0 {
        return StarCubeForm::zero(0, 0);
    }
    let wi = |i: usize| if i < k { StarSlotOp::StarWi } else { StarSlotOp::PlainWi };
    let s_at = |i: usize| if i < k { StarSlotOp::StarS } else { StarSlotOp::PlainS };
    let mut out = StarCubeForm::zero(n, k);
    for bits in 0u32..(1 << (n - 1)) {
        let eps: Vec<bool> = (0..n - 1).map(|i| bits & (1 << i) != 0).collect();
        let count = eps.iter().filter(|&&b| b).count();
        let c = factorial(count) * factorial(n - 1 - count);
        for j in 0..n {
            let mut ops = Vec::with_capacity(n);
            for (idx, &e) in eps[..j].iter().enumerate() {
                ops.push(if e { wi(idx) } else { StarSlotOp::Id });
            }
            ops.push(s_at(j));
            for (offset, &e) in eps[j..].iter().enumerate() {
                let idx = j + 1 + offset;
                ops.push(if e { wi(idx) } else { StarSlotOp::Id });
            }
            out = out.add(&star_tensor_apply(a, &ops).scale(&c));
        }
    }
    out.scale(&(scalar::one() / factorial(n)))
}

/// The composite retraction of subdivided cube forms onto the cochains of
/// the plain cube.
pub struct CubeComposedRetraction {
    n: usize,
    k: usize,
    weld: crate::complexes::DeformationRetraction<CubeCell>,
}

impl CubeComposedRetraction {
    pub fn new(n: usize, k: usize) -> Self {
        CubeComposedRetraction {
            n,
            k,
            weld: cubical_welding_dr(n, k).dualize(),
        }
    }

    pub fn incl(&self, x: &FormalSum<CubeCell>) -> StarCubeForm {
        star_cube_whitney(self.n, self.k, &self.weld.incl.apply(x))
    }

    pub fn proj(&self, a: &StarCubeForm) -> FormalSum<CubeCell> {
        self.weld
            .proj
            .apply(&star_cube_integration(self.n, self.k, a))
    }

    pub fn homotopy(&self, a: &StarCubeForm) -> StarCubeForm {
        let weld_part = star_cube_whitney(
            self.n,
            self.k,
            &self
                .weld
                .homotopy
                .apply(&star_cube_integration(self.n, self.k, a)),
        );
        star_cube_s(a).add(&weld_part)
    }

    pub fn defect(&self, omega: &CubeForm) -> StarCubeForm {
        let restricted = restrict_to_star_cube(self.n, self.k, omega);
        self.homotopy(&restricted).sub(&restrict_to_star_cube(
            self.n,
            self.k,
            &cube_s(omega, CubeSVariant::Symmetrized),
        ))
    }
}

/// The fully split rearrangement of the defect: the symmetrized staircase
/// sums with (W̊I̊ − 1) left of the flat homotopy and (1 − WI) right of the
/// subdivided one, averaged over slot permutations.
pub fn defect_rearrangement(n: usize, a: &StarCubeForm) -> StarCubeForm {
    assert_eq!(a.k(), n, "rearrangement requires every slot split");
    let mut out = StarCubeForm::zero(n, n);
    for sigma in (0..n).permutations(n) {
        let mut inv = vec![0usize; n];
        for (i, &v) in sigma.iter().enumerate() {
            inv[v] = i;
        }
        let moved = a.permute_slots(&inv);
        let mut total = StarCubeForm::zero(n, n);
        for j in 0..n {
            let mut ops1 = vec![StarSlotOp::StarWiMinus1; j];
            ops1.push(StarSlotOp::PlainS);
            ops1.extend(vec![StarSlotOp::PlainWi; n - 1 - j]);
            total = total.add(&star_tensor_apply(&moved, &ops1));
            let mut ops2 = vec![StarSlotOp::StarWi; j];
            ops2.push(StarSlotOp::StarS);
            ops2.extend(vec![StarSlotOp::OneMinusPlainWi; n - 1 - j]);
            total = total.add(&star_tensor_apply(&moved, &ops2));
        }
        out = out.add(&total.permute_slots(&sigma));
    }
    out.scale(&(scalar::one() / factorial(n)))
}

fn show_star(f: &StarCubeForm) -> String {
    f.display()
}

fn show_cochain(x: &FormalSum<CubeCell>) -> String {
    x.to_string()
}

fn random_cube_cochain(basis: &[CubeCell], seed: u64) -> FormalSum<CubeCell> {
    let mut rng = Lcg::new(seed);
    let mut out = FormalSum::zero();
    for cell in basis {
        if rng.below(3) == 0 {
            out.add_term(cell.clone(), rng.small_coeff());
        }
    }
    out
}

pub fn verify_cubical_compat(n: usize, k: usize, probes: usize, seed: u64) -> Report {
    assert!(k <= n);
    let mut checks = Vec::new();
    let star_complex = cubical_star_complex(n, k);
    let star_basis = star_complex.basis();
    let composed = CubeComposedRetraction::new(n, k);
    let globals = cube_probe_forms(n, probes, 2, seed);

    let mut star_probes: Vec<(String, StarCubeForm)> = globals
        .iter()
        .map(|(label, g)| (format!("restricted_{label}"), restrict_to_star_cube(n, k, g)))
        .collect();
    for i in 0..probes.max(2) {
        let x = random_cube_cochain(&star_basis, seed.wrapping_add(100 + i as u64));
        star_probes.push((
            format!("whitney_of_cochain_{i}"),
            star_cube_whitney(n, k, &x),
        ));
    }

    // R̊ W̊ = 1 on the subdivided basis
    {
        let mut ok = Check::theorem("star_rw_eq_1", true, None);
        for cell in &star_basis {
            let x = FormalSum::single(cell.clone());
            let got = star_cube_integration(n, k, &star_cube_whitney(n, k, &x));
            if got != x {
                ok = eq_check("star_rw_eq_1", &cell.to_string(), &got, &x, show_cochain);
                break;
            }
        }
        checks.push(ok);
    }

    // W̊ and R̊ are cochain maps
    {
        let delta = cubical_boundary(&star_complex).transpose();
        let mut ok = Check::theorem("star_w_cochain_map", true, None);
        for cell in &star_basis {
            let x = FormalSum::single(cell.clone());
            let lhs = star_cube_whitney(n, k, &delta.apply(&x));
            let rhs = star_cube_whitney(n, k, &x).d();
            if lhs != rhs {
                ok = eq_check("star_w_cochain_map", &cell.to_string(), &lhs, &rhs, show_star);
                break;
            }
        }
        checks.push(ok);
        let mut ok = Check::theorem("star_r_cochain_map", true, None);
        for (label, a) in &star_probes {
            let lhs = delta.apply(&star_cube_integration(n, k, a));
            let rhs = star_cube_integration(n, k, &a.d());
            if lhs != rhs {
                ok = eq_check("star_r_cochain_map", label, &lhs, &rhs, show_cochain);
                break;
            }
        }
        checks.push(ok);
    }

    // homotopy identity on the subdivision
    {
        let mut ok = Check::theorem("star_homotopy_identity", true, None);
        for (label, a) in &star_probes {
            let lhs = star_cube_s(a).d().add(&star_cube_s(&a.d()));
            let rhs = a.sub(&star_cube_whitney(n, k, &star_cube_integration(n, k, a)));
            if lhs != rhs {
                ok = eq_check("star_homotopy_identity", label, &lhs, &rhs, show_star);
                break;
            }
        }
        checks.push(ok);
    }

    // p R̊ restricted to global forms is R
    {
        let mut ok = Check::theorem("proj_restricts_to_r", true, None);
        for (label, g) in &globals {
            let lhs = composed.proj(&restrict_to_star_cube(n, k, g));
            let rhs = cube_integration(n, g);
            if lhs != rhs {
                ok = eq_check("proj_restricts_to_r", label, &lhs, &rhs, show_cochain);
                break;
            }
        }
        checks.push(ok);
    }

    // W̊ i equals W followed by restriction
    {
        let mut ok = Check::theorem("incl_matches_w", true, None);
        for cell in crate::complexes::CubicalComplex::standard(n).basis() {
            let x = FormalSum::single(cell.clone());
            let lhs = composed.incl(&x);
            let rhs = restrict_to_star_cube(n, k, &cube_whitney(n, &x));
            if lhs != rhs {
                ok = eq_check("incl_matches_w", &cell.to_string(), &lhs, &rhs, show_star);
                break;
            }
        }
        checks.push(ok);
    }

    // composite retraction identities
    {
        let mut ok = Check::theorem("composed_pi_eq_1", true, None);
        for cell in crate::complexes::CubicalComplex::standard(n).basis() {
            let x = FormalSum::single(cell.clone());
            let got = composed.proj(&composed.incl(&x));
            if got != x {
                ok = eq_check("composed_pi_eq_1", &cell.to_string(), &got, &x, show_cochain);
                break;
            }
        }
        checks.push(ok);
    }
    {
        let mut ok = Check::theorem("composed_homotopy_identity", true, None);
        for (label, a) in &star_probes {
            let lhs = composed.homotopy(a).d().add(&composed.homotopy(&a.d()));
            let rhs = a.sub(&composed.incl(&composed.proj(a)));
            if lhs != rhs {
                ok = eq_check("composed_homotopy_identity", label, &lhs, &rhs, show_star);
                break;
            }
        }
        checks.push(ok);
    }

    // the defect against the flat homotopy is closed
    {
        let mut ok = Check::theorem("defect_closed", true, None);
        for (label, g) in &globals {
            let got = composed.defect(&g.d()).add(&composed.defect(g).d());
            if !got.is_zero() {
                ok = eq_check(
                    "defect_closed",
                    label,
                    &got,
                    &StarCubeForm::zero(n, k),
                    show_star,
                );
                break;
            }
        }
        checks.push(ok);
    }

    // fully split rearrangement of the defect, under test as a claim
    if k == n {
        let mut ok = Check::claim("defect_rearrangement", true, None);
        for (label, g) in globals.iter().take(probes.max(3)) {
            let lhs = composed.defect(g);
            let rhs = defect_rearrangement(n, &restrict_to_star_cube(n, n, g));
            if lhs != rhs {
                ok = Check::claim(
                    "defect_rearrangement",
                    false,
                    Some(crate::report::CounterexampleOut {
                        input: label.clone(),
                        lhs: lhs.display(),
                        rhs: rhs.display(),
                    }),
                );
                break;
            }
        }
        checks.push(ok);
    }

    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    params.insert("k".to_string(), k.to_string());
    params.insert("probes".to_string(), probes.to_string());
    params.insert("seed".to_string(), seed.to_string());
    Report::new("cubical-compat", params, checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn restriction_of_coordinate() {
        // x_1 restricted: u/2 on the lower half, (1+u)/2 on the upper
        let g = CubeForm::coord(1, 0);
        let r = restrict_to_star_cube(1, 1, &g);
        let low = r.piece(&[false]);
        assert_eq!(
            low.form().coefficient_of(&[]).eval(&[int(1)]),
            frac(1, 2)
        );
        let high = r.piece(&[true]);
        assert_eq!(
            high.form().coefficient_of(&[]).eval(&[int(0)]),
            frac(1, 2)
        );
    }

    #[test]
    fn star_whitney_hat_function() {
        // the midpoint hat: u on the lower half, 1 − u on the upper
        let x = FormalSum::single(CubeCell::new(vec![IntervalCell::VMid]));
        let w = star_cube_whitney(1, 1, &x);
        assert_eq!(*w.piece(&[false]), CubeForm::coord(1, 0));
        assert_eq!(
            *w.piece(&[true]),
            CubeForm::one(1).sub(&CubeForm::coord(1, 0))
        );
    }

    #[test]
    fn star_rw_small() {
        for (n, k) in [(1usize, 1usize), (2, 1), (2, 2)] {
            for cell in cubical_star_complex(n, k).basis() {
                let x = FormalSum::single(cell.clone());
                let got = star_cube_integration(n, k, &star_cube_whitney(n, k, &x));
                assert_eq!(got, x, "n={n} k={k} {cell}");
            }
        }
    }

    #[test]
    fn interval_defect_vanishes() {
        // in one dimension the composed homotopy equals the flat one on
        // global forms
        let composed = CubeComposedRetraction::new(1, 1);
        for (label, g) in cube_probe_forms(1, 3, 3, 9) {
            assert!(composed.defect(&g).is_zero(), "{label}");
        }
    }

    #[test]
    fn plain_s_on_split_slot_matches_global() {
        // flat s applied after restriction equals the pair-op PlainS
        for (label, g) in cube_probe_forms(1, 3, 3, 4) {
            let lhs = star_tensor_apply(
                &restrict_to_star_cube(1, 1, &g),
                &[StarSlotOp::PlainS],
            );
            let rhs = restrict_to_star_cube(1, 1, &cube_s(&g, CubeSVariant::S0));
            assert_eq!(lhs, rhs, "{label}");
        }
    }

    #[test]
    fn suite_passes_n2_fully_split() {
        let r = verify_cubical_compat(2, 2, 2, 1);
        assert!(r.theorems_pass(), "{}", r.to_text());
    }

    #[test]
    fn suite_passes_n2_half_split() {
        let r = verify_cubical_compat(2, 1, 2, 5);
        assert!(r.theorems_pass(), "{}", r.to_text());
    }
}
