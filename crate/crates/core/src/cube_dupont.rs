//! Cubical forms on [0,1]^n and the tensor-product Whitney, integration,
//! and homotopy operators.
//!
//! Every operator is built from the interval case by slot-wise action on
//! factorizable terms: a monomial-wedge term splits uniquely across
//! coordinates, and an odd operator acting in slot j picks up the Koszul
//! sign (−1)^(form degree of the slots to its left).

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::complexes::{CubeCell, CubicalComplex, FormalSum, IntervalCell};
use crate::report::{eq_check, Check, Report};
use crate::scalar::{self, factorial, Scalar};
use crate::simplex_forms::form::Form;
use crate::simplex_forms::poly::Poly;
use crate::simplex_forms::Lcg;

/// A polynomial form on the n-cube in coordinates x_1,…,x_n (internally
/// 0-indexed).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CubeForm {
    n: usize,
    form: Form,
}

impl CubeForm {
    pub fn zero(n: usize) -> Self {
        CubeForm {
            n,
            form: Form::zero(n),
        }
    }

    pub fn one(n: usize) -> Self {
        CubeForm {
            n,
            form: Form::one(n),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        CubeForm {
            n,
            form: Form::from_poly(&Poly::constant(n, c)),
        }
    }

    /// The coordinate x_{i+1} (0-indexed slot i).
    pub fn coord(n: usize, i: usize) -> Self {
        CubeForm {
            n,
            form: Form::from_poly(&Poly::var(n, i)),
        }
    }

    pub fn d_coord(n: usize, i: usize) -> Self {
        CubeForm {
            n,
            form: Form::d_var(n, i),
        }
    }

    pub fn from_form(n: usize, form: Form) -> Self {
        assert_eq!(form.vars(), n);
        CubeForm { n, form }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn form(&self) -> &Form {
        &self.form
    }

    pub fn is_zero(&self) -> bool {
        self.form.is_zero()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        CubeForm {
            n: self.n,
            form: self.form.add(&other.form),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        CubeForm {
            n: self.n,
            form: self.form.neg(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        CubeForm {
            n: self.n,
            form: self.form.scale(c),
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        CubeForm {
            n: self.n,
            form: self.form.wedge(&other.form),
        }
    }

    pub fn d(&self) -> Self {
        CubeForm {
            n: self.n,
            form: self.form.d(),
        }
    }

    pub fn component(&self, p: usize) -> Self {
        CubeForm {
            n: self.n,
            form: self.form.component(p),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.form.max_degree()
    }

    /// Slot permutation action: x_i ↦ x_{σ(i)}.
    pub fn permute_slots(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.n);
        let images: Vec<Poly> = (0..self.n).map(|i| Poly::var(self.n, sigma[i])).collect();
        CubeForm {
            n: self.n,
            form: self.form.pullback(&images),
        }
    }

    pub fn display(&self) -> String {
        self.form.display(&|i| format!("x{}", i + 1))
    }
}

/// One interval factor of a term: monomial exponent and whether dx occurs.
#[derive(Clone, Copy)]
struct SlotData {
    m: u32,
    dx: bool,
}

fn slot_identity(s: SlotData) -> Form {
    let p = Poly::monomial(1, vec![s.m], scalar::one());
    if s.dx {
        Form::poly_wedge(&p, &[0])
    } else {
        Form::from_poly(&p)
    }
}

/// Interval homotopy: x^m ↦ 0; x^m dx ↦ x^{m+1}/(m+1) − x/(m+1).
fn slot_s(s: SlotData) -> Form {
    if !s.dx {
        return Form::zero(1);
    }
    let inv = scalar::one() / scalar::int((s.m + 1) as i64);
    let mut p = Poly::zero(1);
    p.add_term(vec![s.m + 1], inv.clone());
    p.add_term(vec![1], -inv);
    Form::from_poly(&p)
}

/// Interval WR: x^m ↦ (1−x)·0^m + x·1^m; x^m dx ↦ dx/(m+1).
fn slot_wr(s: SlotData) -> Form {
    if s.dx {
        let inv = scalar::one() / scalar::int((s.m + 1) as i64);
        Form::poly_wedge(&Poly::constant(1, inv), &[0])
    } else if s.m == 0 {
        Form::one(1)
    } else {
        Form::from_poly(&Poly::var(1, 0))
    }
}

/// A per-slot operator choice in a tensor expression.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlotOp {
    Id,
    /// The interval Dupont homotopy (odd).
    S,
    /// Interval W∘R (even).
    Wr,
}

impl SlotOp {
    fn is_odd(self) -> bool {
        self == SlotOp::S
    }

    fn apply(self, s: SlotData) -> Form {
        match self {
            SlotOp::Id => slot_identity(s),
            SlotOp::S => slot_s(s),
            SlotOp::Wr => slot_wr(s),
        }
    }
}

/// Embed a 1-variable form into slot j of n variables.
pub(crate) fn embed(f: &Form, n: usize, j: usize) -> Form {
    let mut out = Form::zero(n);
    for (k, c) in f.terms() {
        let mut mono = vec![0u32; n];
        mono[j] = k.mono[0];
        let wedge: Vec<u8> = k.wedge.iter().map(|_| j as u8).collect();
        out.add_term(wedge, mono, c.clone());
    }
    out
}

/// Apply a pure tensor of slot operators with Koszul signs.
pub fn tensor_apply(a: &CubeForm, ops: &[SlotOp]) -> CubeForm {
    let n = a.n();
    assert_eq!(ops.len(), n);
    let mut out = Form::zero(n);
    for (key, c) in a.form().terms() {
        let mut sign = 1i64;
        let mut deg_left = 0usize;
        let mut factors: Vec<Form> = Vec::with_capacity(n);
        for j in 0..n {
            let data = SlotData {
                m: key.mono[j],
                dx: key.wedge.contains(&(j as u8)),
            };
            if ops[j].is_odd() && deg_left % 2 == 1 {
                sign = -sign;
            }
            factors.push(ops[j].apply(data));
            if data.dx {
                deg_left += 1;
            }
        }
        let mut term = Form::from_poly(&Poly::constant(n, c * scalar::int(sign)));
        for (j, f) in factors.iter().enumerate() {
            term = term.wedge(&embed(f, n, j));
        }
        out = out.add(&term);
    }
    CubeForm::from_form(n, out)
}

/// The interval Whitney form of one slot cell.
fn slot_whitney(n: usize, j: usize, cell: IntervalCell) -> CubeForm {
    match cell {
        IntervalCell::V0 => CubeForm::one(n).sub(&CubeForm::coord(n, j)),
        IntervalCell::V1 => CubeForm::coord(n, j),
        IntervalCell::EFull => CubeForm::d_coord(n, j),
        _ => panic!("subdivided slot cell in an undivided cube"),
    }
}

/// W on the n-cube: slot-wise tensor of the interval Whitney map.
pub fn cube_whitney(n: usize, x: &FormalSum<CubeCell>) -> CubeForm {
    let mut out = CubeForm::zero(n);
    for (cell, c) in x.terms() {
        assert_eq!(cell.slots().len(), n);
        let mut w = CubeForm::one(n);
        for (j, &s) in cell.slots().iter().enumerate() {
            w = w.wedge(&slot_whitney(n, j, s));
        }
        out = out.add(&w.scale(c));
    }
    out
}

/// R on the n-cube: slot-wise endpoint evaluation and edge integration.
pub fn cube_integration(n: usize, a: &CubeForm) -> FormalSum<CubeCell> {
    let mut out = FormalSum::zero();
    for (key, c) in a.form().terms() {
        let per_slot: Vec<Vec<(IntervalCell, Scalar)>> = (0..n)
            .map(|j| {
                let m = key.mono[j];
                if key.wedge.contains(&(j as u8)) {
                    vec![(
                        IntervalCell::EFull,
                        scalar::one() / scalar::int((m + 1) as i64),
                    )]
                } else {
                    let mut v = vec![(IntervalCell::V1, scalar::one())];
                    if m == 0 {
                        v.push((IntervalCell::V0, scalar::one()));
                    }
                    v
                }
            })
            .collect();
        for combo in per_slot.iter().multi_cartesian_product() {
            let mut coeff = c.clone();
            let slots: Vec<IntervalCell> = combo
                .iter()
                .map(|(cell, w)| {
                    coeff *= w;
                    *cell
                })
                .collect();
            out.add_term(CubeCell::new(slots), coeff);
        }
    }
    out
}

/// s_0 = Σ_j 1^{⊗(j−1)} ⊗ s ⊗ (WR)^{⊗(n−j)}.
pub fn cube_s0(a: &CubeForm) -> CubeForm {
    let n = a.n();
    let mut out = CubeForm::zero(n);
    for j in 0..n {
        let ops: Vec<SlotOp> = (0..n)
            .map(|i| {
                if i < j {
                    SlotOp::Id
                } else if i == j {
                    SlotOp::S
                } else {
                    SlotOp::Wr
                }
            })
            .collect();
        out = out.add(&tensor_apply(a, &ops));
    }
    out
}

/// ψ_ε = Σ_j (WR)^{ε_1}⊗…⊗(WR)^{ε_{j−1}}⊗s⊗(WR)^{ε_j}⊗…⊗(WR)^{ε_{n−1}}
/// for a 0/1 vector ε of length n−1.
pub fn cube_psi(a: &CubeForm, eps: &[bool]) -> CubeForm {
    let n = a.n();
    assert_eq!(eps.len(), n.saturating_sub(1));
    let mut out = CubeForm::zero(n);
    for j in 0..n {
        let mut ops = Vec::with_capacity(n);
        for (idx, &e) in eps[..j].iter().enumerate() {
            let _ = idx;
            ops.push(if e { SlotOp::Wr } else { SlotOp::Id });
        }
        ops.push(SlotOp::S);
        for &e in &eps[j..] {
            ops.push(if e { SlotOp::Wr } else { SlotOp::Id });
        }
        out = out.add(&tensor_apply(a, &ops));
    }
    out
}

/// Which formula computes the symmetrized homotopy.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CubeSVariant {
    /// The unsymmetrized s_0.
    S0,
    /// (1/n!) Σ_σ τ_σ ∘ s_0 ∘ τ_σ^{-1}.
    Symmetrized,
}

/// The cubical Dupont homotopy.
pub fn cube_s(a: &CubeForm, variant: CubeSVariant) -> CubeForm {
    let n = a.n();
    match variant {
        CubeSVariant::S0 => cube_s0(a),
        CubeSVariant::Symmetrized => {
            let mut out = CubeForm::zero(n);
            for sigma in (0..n).permutations(n) {
                let mut inv = vec![0usize; n];
                for (i, &v) in sigma.iter().enumerate() {
                    inv[v] = i;
                }
                out = out.add(&cube_s0(&a.permute_slots(&inv)).permute_slots(&sigma));
            }
            out.scale(&(scalar::one() / factorial(n)))
        }
    }
}

/// The same homotopy via the ψ_ε expansion with C_{|ε|,n} = |ε|!(n−1−|ε|)!.
pub fn cube_s_expansion(a: &CubeForm) -> CubeForm {
    let n = a.n();
    if n == 0 {
        return CubeForm::zero(0);
    }
    let mut out = CubeForm::zero(n);
    for bits in 0u32..(1 << (n - 1)) {
        let eps: Vec<bool> = (0..n - 1).map(|i| bits & (1 << i) != 0).collect();
        let count = eps.iter().filter(|&&b| b).count();
        let c = factorial(count) * factorial(n - 1 - count);
        out = out.add(&cube_psi(a, &eps).scale(&c));
    }
    out.scale(&(scalar::one() / factorial(n)))
}

/// Seeded random p-form on the n-cube; same generator contract as the
/// simplicial `random_form`.
pub fn random_cube_form(n: usize, p: usize, d: u32, seed: u64) -> CubeForm {
    assert!(p <= n, "form degree exceeds dimension");
    let mut rng = Lcg::new(seed);
    let subsets = crate::simplex_forms::wedge_subsets(n, p);
    loop {
        let n_terms = 2 + rng.below(3);
        let mut form = Form::zero(n);
        for _ in 0..n_terms {
            let wedge = subsets[rng.below(subsets.len() as u32) as usize].clone();
            let mut mono = vec![0u32; n];
            if n > 0 && d > 0 {
                let total = rng.below(d + 1);
                for _ in 0..total {
                    mono[rng.below(n as u32) as usize] += 1;
                }
            }
            form.add_term(wedge, mono, rng.small_coeff());
        }
        if !form.is_zero() {
            return CubeForm::from_form(n, form);
        }
    }
}

/// Probe family: Whitney forms of all cube cells, low-degree monomial
/// forms, and seeded random forms.
pub fn cube_probe_forms(n: usize, probes: usize, degree: u32, seed: u64) -> Vec<(String, CubeForm)> {
    let mut out = Vec::new();
    for cell in CubicalComplex::standard(n).basis() {
        out.push((
            format!("whitney{cell}"),
            cube_whitney(n, &FormalSum::single(cell.clone())),
        ));
    }
    for p in 0..=n {
        for wedge in crate::simplex_forms::wedge_subsets(n, p) {
            for mono in crate::dupont::monomials(n, degree) {
                let mut f = Form::zero(n);
                f.add_term(wedge.clone(), mono.clone(), scalar::one());
                out.push((format!("mono{mono:?}dx{wedge:?}"), CubeForm::from_form(n, f)));
            }
        }
        for i in 0..probes {
            let s = seed.wrapping_add((p * probes + i) as u64);
            out.push((
                format!("random_p{p}_seed{s}"),
                random_cube_form(n, p, degree, s),
            ));
        }
    }
    out
}

fn show_form(f: &CubeForm) -> String {
    f.display()
}

fn show_cochain(x: &FormalSum<CubeCell>) -> String {
    x.to_string()
}

fn probe_check<T: PartialEq>(
    name: &str,
    probes: &[(String, CubeForm)],
    lhs: impl Fn(&CubeForm) -> T,
    rhs: impl Fn(&CubeForm) -> T,
    show: impl Fn(&T) -> String,
) -> Check {
    for (label, a) in probes {
        let l = lhs(a);
        let r = rhs(a);
        if l != r {
            return eq_check(name, &format!("{label}: {}", a.display()), &l, &r, show);
        }
    }
    Check::theorem(name, true, None)
}

/// The cubical verification suite.
pub fn verify_cubical(n: usize, probes: usize, seed: u64) -> Report {
    let degree = 3;
    let mut checks = Vec::new();
    let complex = CubicalComplex::standard(n);
    let basis = complex.basis();
    let probe_set = cube_probe_forms(n, probes, degree, seed);
    let small = cube_probe_forms(n, probes.min(5), 2, seed);

    // RW = 1 on the full basis
    {
        let mut ok = Check::theorem("rw_eq_1", true, None);
        for cell in &basis {
            let x = FormalSum::single(cell.clone());
            let got = cube_integration(n, &cube_whitney(n, &x));
            if got != x {
                ok = eq_check("rw_eq_1", &cell.to_string(), &got, &x, show_cochain);
                break;
            }
        }
        checks.push(ok);
    }

    // cochain maps
    {
        let d_cochain = crate::complexes::cubical_boundary(&complex).transpose();
        let mut ok = Check::theorem("w_cochain_map", true, None);
        for cell in &basis {
            let x = FormalSum::single(cell.clone());
            let lhs = cube_whitney(n, &d_cochain.apply(&x));
            let rhs = cube_whitney(n, &x).d();
            if lhs != rhs {
                ok = eq_check("w_cochain_map", &cell.to_string(), &lhs, &rhs, show_form);
                break;
            }
        }
        checks.push(ok);
        checks.push(probe_check(
            "r_cochain_map",
            &probe_set,
            |a| d_cochain.apply(&cube_integration(n, a)),
            |a| cube_integration(n, &a.d()),
            show_cochain,
        ));
    }

    // homotopy identity and specialness, both variants
    for (tag, variant) in [("s0", CubeSVariant::S0), ("sym", CubeSVariant::Symmetrized)] {
        checks.push(probe_check(
            &format!("ds_plus_sd_eq_1_minus_wr_{tag}"),
            &probe_set,
            |a| cube_s(a, variant).d().add(&cube_s(&a.d(), variant)),
            |a| a.sub(&cube_whitney(n, &cube_integration(n, a))),
            show_form,
        ));
        checks.push(probe_check(
            &format!("ss_eq_0_{tag}"),
            &small,
            |a| cube_s(&cube_s(a, variant), variant),
            |a| CubeForm::zero(a.n()),
            show_form,
        ));
        {
            let mut ok = Check::theorem(format!("sw_eq_0_{tag}"), true, None);
            for cell in &basis {
                let w = cube_whitney(n, &FormalSum::single(cell.clone()));
                let got = cube_s(&w, variant);
                if !got.is_zero() {
                    ok = eq_check(
                        &format!("sw_eq_0_{tag}"),
                        &cell.to_string(),
                        &got,
                        &CubeForm::zero(n),
                        show_form,
                    );
                    break;
                }
            }
            checks.push(ok);
        }
        checks.push(probe_check(
            &format!("rs_eq_0_{tag}"),
            &probe_set,
            |a| cube_integration(n, &cube_s(a, variant)),
            |_| FormalSum::zero(),
            show_cochain,
        ));
    }

    // the two symmetrization formulas agree
    checks.push(probe_check(
        "symmetrization_matches_expansion",
        &small,
        |a| cube_s(a, CubeSVariant::Symmetrized),
        cube_s_expansion,
        show_form,
    ));

    // symmetrized s commutes with slot permutations
    {
        let mut ok = Check::theorem("slot_permutation_invariance", true, None);
        'outer: for sigma in (0..n).permutations(n) {
            for (label, a) in &small {
                let lhs = cube_s(&a.permute_slots(&sigma), CubeSVariant::Symmetrized);
                let rhs = cube_s(a, CubeSVariant::Symmetrized).permute_slots(&sigma);
                if lhs != rhs {
                    ok = eq_check(
                        "slot_permutation_invariance",
                        &format!("sigma={sigma:?} {label}"),
                        &lhs,
                        &rhs,
                        show_form,
                    );
                    break 'outer;
                }
            }
        }
        checks.push(ok);
    }

    // ψ_ε ψ_ε' + ψ_ε' ψ_ε = 0 for sampled pairs ε ≠ ε'
    if n >= 2 {
        let mut ok = Check::theorem("psi_anticommute", true, None);
        let all_eps: Vec<Vec<bool>> = (0u32..(1 << (n - 1)))
            .map(|bits| (0..n - 1).map(|i| bits & (1 << i) != 0).collect())
            .collect();
        'pairs: for (i, e1) in all_eps.iter().enumerate() {
            for e2 in &all_eps[i..] {
                for (label, a) in small.iter().take(6) {
                    let lhs = cube_psi(&cube_psi(a, e2), e1);
                    let rhs = cube_psi(&cube_psi(a, e1), e2).neg();
                    if lhs != rhs {
                        ok = eq_check(
                            "psi_anticommute",
                            &format!("eps={e1:?} eps'={e2:?} {label}"),
                            &lhs,
                            &rhs,
                            show_form,
                        );
                        break 'pairs;
                    }
                }
            }
        }
        checks.push(ok);
    }

    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    params.insert("probes".to_string(), probes.to_string());
    params.insert("seed".to_string(), seed.to_string());
    Report::new("cubical", params, checks)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn interval_ops() {
        // W(V1 dual) = x
        let x = FormalSum::single(CubeCell::new(vec![IntervalCell::V1]));
        assert_eq!(cube_whitney(1, &x), CubeForm::coord(1, 0));
        // s(x dx) = x²/2 − x/2
        let xdx = CubeForm::coord(1, 0).wedge(&CubeForm::d_coord(1, 0));
        let got = cube_s(&xdx, CubeSVariant::S0);
        let expect = CubeForm::coord(1, 0)
            .wedge(&CubeForm::coord(1, 0))
            .scale(&frac(1, 2))
            .sub(&CubeForm::coord(1, 0).scale(&frac(1, 2)));
        assert_eq!(got, expect);
        assert_eq!(cube_s(&xdx, CubeSVariant::Symmetrized), expect);
        // R(x²) = V1 dual
        let r = cube_integration(1, &CubeForm::coord(1, 0).wedge(&CubeForm::coord(1, 0)));
        assert_eq!(r.coeff(&CubeCell::new(vec![IntervalCell::V1])), int(1));
        assert_eq!(r.coeff(&CubeCell::new(vec![IntervalCell::V0])), int(0));
    }

    #[test]
    fn tensor_whitney_values() {
        // W(edge x vertex0) = (1 − x_2)dx_1
        let cell = CubeCell::new(vec![IntervalCell::EFull, IntervalCell::V0]);
        let w = cube_whitney(2, &FormalSum::single(cell));
        let expect = CubeForm::d_coord(2, 0)
            .wedge(&CubeForm::one(2).sub(&CubeForm::coord(2, 1)));
        assert_eq!(w, expect);
        // W(vertex (1,1)) = x_1 x_2
        let cell = CubeCell::new(vec![IntervalCell::V1, IntervalCell::V1]);
        let w = cube_whitney(2, &FormalSum::single(cell));
        assert_eq!(w, CubeForm::coord(2, 0).wedge(&CubeForm::coord(2, 1)));
    }

    #[test]
    fn rw_identity_on_cubes() {
        for n in 1..=3 {
            for cell in CubicalComplex::standard(n).basis() {
                let x = FormalSum::single(cell.clone());
                assert_eq!(
                    cube_integration(n, &cube_whitney(n, &x)),
                    x,
                    "n={n} {cell}"
                );
            }
        }
    }

    #[test]
    fn coefficients_at_n2() {
        // C_{0,2} = 1, C_{1,2} = 1, prefactor 1/2
        assert_eq!(factorial(0) * factorial(1), int(1));
        assert_eq!(factorial(1) * factorial(0), int(1));
        // agreement of the two formulas on a probe
        let a = random_cube_form(2, 1, 2, 3);
        assert_eq!(cube_s(&a, CubeSVariant::Symmetrized), cube_s_expansion(&a));
    }

    #[test]
    fn verify_suite_passes_n2() {
        let r = verify_cubical(2, 3, 1);
        assert!(r.theorems_pass(), "{}", r.to_text());
    }
}
