//! The Whitney map, the integration map, and the Dupont homotopy on the
//! standard simplex, with per-cell lifts to finite simplicial complexes.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::Zero;

use crate::complexes::{FormalSum, Simplex, SimplicialComplex};
use crate::report::{eq_check, Check, Report};
use crate::scalar;
use crate::simplex_forms::piecewise::PiecewiseForm;
use crate::simplex_forms::{
    integrate_face, random_form, whitney_form, IntegrationMethod, SimplexForm,
};

/// W: cochains on Δ^n to forms, sending the dual of a p-face to ω̄ of its
/// vertex labels.
pub fn whitney_map(n: usize, x: &FormalSum<Simplex>) -> SimplexForm {
    let mut out = SimplexForm::zero(n);
    for (cell, c) in x.terms() {
        let labels = cell.numeric_labels();
        assert_eq!(labels.len(), cell.verts().len(), "starred cell in Δ^n cochain");
        out = out.add(&whitney_form(n, &labels, true).scale(c));
    }
    out
}

/// R: forms to cochains, pairing each face with the integral over it.
pub fn integration_map(n: usize, a: &SimplexForm) -> FormalSum<Simplex> {
    let mut out = FormalSum::zero();
    for cell in SimplicialComplex::standard(n).basis() {
        let p = cell.dim();
        let comp = a.component(p);
        if comp.is_zero() {
            continue;
        }
        let labels = cell.numeric_labels();
        out.add_term(cell, integrate_face(&labels, &comp, IntegrationMethod::Dirichlet));
    }
    out
}

/// The Dupont homotopy by its defining sum:
/// s = −Σ_{k=0}^{n−1} Σ_{i_0<…<i_k} ω̄_{i_0…i_k} ∧ h^{i_k}…h^{i_0}.
pub fn dupont_s(n: usize, a: &SimplexForm) -> SimplexForm {
    let mut out = SimplexForm::zero(n);
    for size in 1..=n {
        for subset in (0..=n as u32).combinations(size) {
            let mut cur = a.clone();
            for &i in &subset {
                cur = cur.vertex_homotopy(i as usize);
            }
            if cur.is_zero() {
                continue;
            }
            out = out.add(&whitney_form(n, &subset, true).wedge(&cur));
        }
    }
    out.neg()
}

/// Local positions of `face`'s vertices inside `cell`'s canonical order.
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

/// Per-cell Whitney map on a complex: each top cell receives the ω̄ of the
/// cochain's faces in the cell's own coordinates.
pub fn lift_whitney(complex: &SimplicialComplex, x: &FormalSum<Simplex>) -> PiecewiseForm {
    let mut pieces = BTreeMap::new();
    for t in complex.top_cells() {
        let q = t.dim();
        let mut form = SimplexForm::zero(q);
        for f in t.all_faces() {
            let c = x.coeff(&f);
            if !c.is_zero() {
                form = form.add(&whitney_form(q, &positions(&t, &f), true).scale(&c));
            }
        }
        pieces.insert(t, form);
    }
    PiecewiseForm::new(complex.clone(), pieces)
        .unwrap_or_else(|e| panic!("lifted Whitney form failed gluing: {e}"))
}

/// Per-cell integration map on a complex.
pub fn lift_integration(complex: &SimplicialComplex, a: &PiecewiseForm) -> FormalSum<Simplex> {
    let mut out = FormalSum::zero();
    let tops = complex.top_cells();
    for cell in complex.basis() {
        let t = tops
            .iter()
            .find(|t| t.has_face(&cell))
            .unwrap_or_else(|| panic!("cell {cell} not in a top cell"));
        let p = cell.dim();
        let comp = a.piece(t).component(p);
        if comp.is_zero() {
            continue;
        }
        out.add_term(
            cell.clone(),
            integrate_face(&positions(t, &cell), &comp, IntegrationMethod::Dirichlet),
        );
    }
    out
}

/// Per-cell Dupont homotopy on a complex.
pub fn lift_dupont(_complex: &SimplicialComplex, a: &PiecewiseForm) -> PiecewiseForm {
    a.map_pieces(|t, f| dupont_s(t.dim(), f))
}

/// The cochain-side action of a vertex permutation of Δ^n, normalized so
/// that W(permute(x)) = τ_σ^*(W(x)).
pub fn permute_cochain(sigma: &[usize], x: &FormalSum<Simplex>) -> FormalSum<Simplex> {
    x.map_terms(|cell| {
        let verts: Vec<_> = cell
            .numeric_labels()
            .iter()
            .map(|&l| crate::complexes::Vertex::V(sigma[l as usize] as u32))
            .collect();
        match Simplex::oriented(&verts) {
            Some((s, sign)) => FormalSum::term(s, scalar::int(sign)),
            None => FormalSum::zero(),
        }
    })
}

/// The probe family used for operator identities: every barred Whitney
/// form, every monomial form of polynomial degree ≤ d, plus seeded random
/// forms per form degree.
pub fn probe_forms(n: usize, probes: usize, degree: u32, seed: u64) -> Vec<(String, SimplexForm)> {
    let mut out = Vec::new();
    for cell in SimplicialComplex::standard(n).basis() {
        let labels = cell.numeric_labels();
        out.push((format!("whitney{cell}"), whitney_form(n, &labels, true)));
    }
    for p in 0..=n {
        for wedge in crate::simplex_forms::wedge_subsets(n, p) {
            for mono in monomials(n, degree) {
                let mut f = crate::simplex_forms::form::Form::zero(n);
                f.add_term(wedge.clone(), mono.clone(), scalar::one());
                let name = format!("mono{mono:?}dt{wedge:?}");
                out.push((name, SimplexForm::from_canonical(n, f)));
            }
        }
        for i in 0..probes {
            let s = seed.wrapping_add((p * probes + i) as u64);
            out.push((format!("random_p{p}_seed{s}"), random_form(n, p, degree, s)));
        }
    }
    out
}

/// Exponent vectors over `vars` variables of total degree ≤ d.
pub fn monomials(vars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(vars: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == vars {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur.push(e);
            rec(vars, left - e, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(vars, d, &mut Vec::new(), &mut out);
    out
}

fn show_form(f: &SimplexForm) -> String {
    f.display()
}

fn show_cochain(x: &FormalSum<Simplex>) -> String {
    x.to_string()
}

/// First-failure comparison over a probe family.
fn probe_check<T: PartialEq>(
    name: &str,
    probes: &[(String, SimplexForm)],
    lhs: impl Fn(&SimplexForm) -> T,
    rhs: impl Fn(&SimplexForm) -> T,
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

/// The verification suite for (W, R, s) on Δ^n.
pub fn verify_dupont(n: usize, probes: usize, degree: u32, seed: u64) -> Report {
    let mut checks = Vec::new();
    let complex = SimplicialComplex::standard(n);
    let basis = complex.basis();
    let probe_set = probe_forms(n, probes, degree, seed);
    // a smaller family for the quadratic-cost symmetry checks
    let small: Vec<(String, SimplexForm)> = probe_forms(n, probes.min(5), degree.min(2), seed)
        .into_iter()
        .collect();

    // RW = 1 on the full cochain basis
    {
        let mut ok = Check::theorem("rw_eq_1", true, None);
        for cell in &basis {
            let x = FormalSum::single(cell.clone());
            let got = integration_map(n, &whitney_map(n, &x));
            if got != x {
                ok = eq_check("rw_eq_1", &cell.to_string(), &got, &x, show_cochain);
                break;
            }
        }
        checks.push(ok);
    }

    // W and R are cochain maps
    {
        let d_cochain = crate::complexes::simplicial_boundary(&complex).transpose();
        let mut ok = Check::theorem("w_cochain_map", true, None);
        for cell in &basis {
            let x = FormalSum::single(cell.clone());
            let lhs = whitney_map(n, &d_cochain.apply(&x));
            let rhs = whitney_map(n, &x).d();
            if lhs != rhs {
                ok = eq_check("w_cochain_map", &cell.to_string(), &lhs, &rhs, show_form);
                break;
            }
        }
        checks.push(ok);
        checks.push(probe_check(
            "r_cochain_map",
            &probe_set,
            |a| d_cochain.apply(&integration_map(n, a)),
            |a| integration_map(n, &a.d()),
            show_cochain,
        ));
    }

    // homotopy identity and specialness
    checks.push(probe_check(
        "ds_plus_sd_eq_1_minus_wr",
        &probe_set,
        |a| dupont_s(n, a).d().add(&dupont_s(n, &a.d())),
        |a| a.sub(&whitney_map(n, &integration_map(n, a))),
        show_form,
    ));
    checks.push(probe_check(
        "ss_eq_0",
        &probe_set,
        |a| dupont_s(n, &dupont_s(n, a)),
        |a| SimplexForm::zero(a.n()),
        show_form,
    ));
    {
        let mut ok = Check::theorem("sw_eq_0", true, None);
        for cell in &basis {
            let x = FormalSum::single(cell.clone());
            let got = dupont_s(n, &whitney_map(n, &x));
            if !got.is_zero() {
                ok = eq_check(
                    "sw_eq_0",
                    &cell.to_string(),
                    &got,
                    &SimplexForm::zero(n),
                    show_form,
                );
                break;
            }
        }
        checks.push(ok);
    }
    checks.push(probe_check(
        "rs_eq_0",
        &probe_set,
        |a| integration_map(n, &dupont_s(n, a)),
        |_| FormalSum::zero(),
        show_cochain,
    ));

    // symmetric-group equivariance of s, R, W
    {
        let mut s_ok = Check::theorem("s_equivariance", true, None);
        let mut r_ok = Check::theorem("r_equivariance", true, None);
        'outer: for sigma in (0..=n).permutations(n + 1) {
            for (label, a) in &small {
                let lhs = dupont_s(n, &a.pullback_permutation(&sigma));
                let rhs = dupont_s(n, a).pullback_permutation(&sigma);
                if lhs != rhs {
                    s_ok = eq_check(
                        "s_equivariance",
                        &format!("sigma={sigma:?} {label}"),
                        &lhs,
                        &rhs,
                        show_form,
                    );
                    break 'outer;
                }
                let lhs = integration_map(n, &a.pullback_permutation(&sigma));
                let rhs = permute_cochain(&sigma, &integration_map(n, a));
                if lhs != rhs {
                    r_ok = eq_check(
                        "r_equivariance",
                        &format!("sigma={sigma:?} {label}"),
                        &lhs,
                        &rhs,
                        show_cochain,
                    );
                    break 'outer;
                }
            }
        }
        checks.push(s_ok);
        checks.push(r_ok);
        let mut w_ok = Check::theorem("w_equivariance", true, None);
        'wout: for sigma in (0..=n).permutations(n + 1) {
            for cell in &basis {
                let x = FormalSum::single(cell.clone());
                let lhs = whitney_map(n, &permute_cochain(&sigma, &x));
                let rhs = whitney_map(n, &x).pullback_permutation(&sigma);
                if lhs != rhs {
                    w_ok = eq_check(
                        "w_equivariance",
                        &format!("sigma={sigma:?} {cell}"),
                        &lhs,
                        &rhs,
                        show_form,
                    );
                    break 'wout;
                }
            }
        }
        checks.push(w_ok);
    }

    // face-map commutation of s
    {
        let mut ok = Check::theorem("s_face_commutation", true, None);
        'face: for i in 0..=n {
            if n == 0 {
                break;
            }
            for (label, a) in &small {
                let lhs = dupont_s(n - 1, &a.pullback_face(i));
                let rhs = dupont_s(n, a).pullback_face(i);
                if lhs != rhs {
                    ok = eq_check(
                        "s_face_commutation",
                        &format!("face={i} {label}"),
                        &lhs,
                        &rhs,
                        show_form,
                    );
                    break 'face;
                }
            }
        }
        checks.push(ok);
    }

    // n = 1 closed form: s(g dt) = ∫_0^t g − t ∫_0^1 g
    if n == 1 {
        checks.push(probe_check(
            "interval_closed_form",
            &probe_set,
            |a| dupont_s(1, &a.component(1)),
            |a| interval_s_closed_form(&a.component(1)),
            show_form,
        ));
    }

    let mut params = BTreeMap::new();
    params.insert("n".to_string(), n.to_string());
    params.insert("probes".to_string(), probes.to_string());
    params.insert("degree".to_string(), degree.to_string());
    params.insert("seed".to_string(), seed.to_string());
    Report::new("dupont", params, checks)
}

/// The interval closed form for s, in the coordinate t = t_1: a 1-form
/// g(t)dt maps to ∫_0^t g(u)du − t∫_0^1 g(u)du.
pub fn interval_s_closed_form(a: &SimplexForm) -> SimplexForm {
    use crate::simplex_forms::poly::Poly;
    assert_eq!(a.n(), 1);
    assert!(a.is_homogeneous(1));
    // a = f(t_0)·dt_0; in the coordinate t = t_1 = 1 − t_0 this is g(t)dt
    // with g(t) = −f(1 − t)
    let f = a.form().coefficient_of(&[0]);
    let one_minus = Poly::one(1).sub(&Poly::var(1, 0));
    let g = f.substitute(&[one_minus.clone()]).neg();
    // antiderivative G with G(0) = 0
    let mut big_g = Poly::zero(1);
    for (e, c) in g.terms() {
        big_g.add_term(
            vec![e[0] + 1],
            c / scalar::int((e[0] + 1) as i64),
        );
    }
    let g_at_1 = big_g.eval(&[scalar::one()]);
    let t = Poly::var(1, 0);
    let result_in_t = big_g.sub(&t.scale(&g_at_1));
    // back to the canonical variable t_0 = 1 − t
    let back = result_in_t.substitute(&[one_minus]);
    SimplexForm::from_canonical(
        1,
        crate::simplex_forms::form::Form::from_poly(&back),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn whitney_map_on_interval() {
        // W(ê_0) = 1 − t = t_0
        let x = FormalSum::single(Simplex::from_labels(&[0]));
        assert_eq!(whitney_map(1, &x), SimplexForm::coord(1, 0));
        // W of the edge dual = dt
        let e = FormalSum::single(Simplex::from_labels(&[0, 1]));
        assert_eq!(whitney_map(1, &e), SimplexForm::d_coord(1, 1));
    }

    #[test]
    fn integration_map_on_interval() {
        // R(f) = f(0)ê_0 + f(1)ê_1 for a 0-form
        let f = SimplexForm::coord(1, 1); // the coordinate t
        let r = integration_map(1, &f);
        assert_eq!(r.coeff(&Simplex::from_labels(&[0])), int(0));
        assert_eq!(r.coeff(&Simplex::from_labels(&[1])), int(1));
        // R(g dt) = (∫_0^1 g)·edge dual
        let g = SimplexForm::coord(1, 1).wedge(&SimplexForm::d_coord(1, 1)); // t dt
        let r = integration_map(1, &g);
        assert_eq!(r.coeff(&Simplex::from_labels(&[0, 1])), frac(1, 2));
    }

    #[test]
    fn rw_is_identity() {
        for n in 1..=3 {
            for cell in SimplicialComplex::standard(n).basis() {
                let x = FormalSum::single(cell.clone());
                assert_eq!(integration_map(n, &whitney_map(n, &x)), x, "n={n} {cell}");
            }
        }
    }

    #[test]
    fn s_on_interval_matches_closed_form() {
        // s(t dt) = t²/2 − t/2 in the coordinate t = t_1
        let t = SimplexForm::coord(1, 1);
        let a = t.wedge(&SimplexForm::d_coord(1, 1));
        let got = dupont_s(1, &a);
        let expect = t.wedge(&t).scale(&frac(1, 2)).sub(&t.scale(&frac(1, 2)));
        assert_eq!(got, expect);
        assert_eq!(got, interval_s_closed_form(&a));
    }

    #[test]
    fn s_kills_whitney_forms() {
        for n in 1..=2 {
            for cell in SimplicialComplex::standard(n).basis() {
                let w = whitney_map(n, &FormalSum::single(cell.clone()));
                assert!(dupont_s(n, &w).is_zero(), "n={n} {cell}");
            }
        }
    }

    #[test]
    fn homotopy_identity_spot_check() {
        // ds + sd = 1 − WR on a random probe, n = 2
        let a = random_form(2, 1, 2, 7);
        let lhs = dupont_s(2, &a).d().add(&dupont_s(2, &a.d()));
        let rhs = a.sub(&whitney_map(2, &integration_map(2, &a)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn verify_suite_passes_n2() {
        let r = verify_dupont(2, 3, 2, 1);
        assert!(r.theorems_pass(), "{}", r.to_text());
    }
}
