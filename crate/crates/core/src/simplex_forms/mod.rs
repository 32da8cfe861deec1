//! Polynomial differential forms on the standard simplex.
//!
//! Forms on |Δ^n| live in barycentric coordinates t_0,…,t_n subject to
//! Σt_i = 1 and Σdt_i = 0. The canonical representative eliminates t_n and
//! dt_n, so equality of forms is decidable term-wise. All operators are
//! computed on representatives; each descends to the quotient, and
//! `from_ambient` is the (idempotent) normalization.

pub mod form;
pub mod piecewise;
pub mod poly;

use crate::scalar::{self, factorial, Scalar};
use form::Form;
use poly::Poly;

pub use piecewise::{Chart, PiecewiseForm};

/// A point of |Δ^n| in full barycentric coordinates (n+1 entries, sum 1).
pub type BaryPoint = Vec<Scalar>;

/// The vertex e_i of Δ^n.
pub fn vertex_point(n: usize, i: usize) -> BaryPoint {
    assert!(i <= n);
    let mut p = vec![scalar::zero(); n + 1];
    p[i] = scalar::one();
    p
}

/// Barycenter of the face spanned by the given vertex labels of Δ^n.
pub fn barycenter_point(n: usize, labels: &[u32]) -> BaryPoint {
    assert!(!labels.is_empty());
    let w = scalar::one() / scalar::int(labels.len() as i64);
    let mut p = vec![scalar::zero(); n + 1];
    for &l in labels {
        assert!((l as usize) <= n);
        p[l as usize] = w.clone();
    }
    p
}

pub fn is_bary_point(p: &[Scalar]) -> bool {
    let sum: Scalar = p.iter().fold(scalar::zero(), |a, b| a + b);
    sum == scalar::one()
}

/// The ambient coordinate t_i written in the canonical variables of Δ^n:
/// t_i itself for i < n, and 1 − Σ_{j<n} t_j for i = n.
pub fn canonical_coord(n: usize, i: usize) -> Poly {
    assert!(i <= n);
    if i < n {
        Poly::var(n, i)
    } else {
        let mut p = Poly::one(n);
        for j in 0..n {
            p = p.sub(&Poly::var(n, j));
        }
        p
    }
}

/// A polynomial form on |Δ^n| in canonical coordinates t_0,…,t_{n−1}.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimplexForm {
    n: usize,
    form: Form,
}

impl SimplexForm {
    pub fn zero(n: usize) -> Self {
        SimplexForm {
            n,
            form: Form::zero(n),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        SimplexForm {
            n,
            form: Form::from_poly(&Poly::constant(n, c)),
        }
    }

    pub fn one(n: usize) -> Self {
        SimplexForm::constant(n, scalar::one())
    }

    /// Normalize an ambient form in all n+1 coordinates by substituting
    /// t_n = 1 − Σ_{i<n} t_i (and dt_n accordingly).
    pub fn from_ambient(n: usize, ambient: &Form) -> Self {
        assert_eq!(ambient.vars(), n + 1);
        let images: Vec<Poly> = (0..=n).map(|i| canonical_coord(n, i)).collect();
        SimplexForm {
            n,
            form: ambient.pullback(&images),
        }
    }

    /// Wrap a form already written in the canonical variables.
    pub fn from_canonical(n: usize, form: Form) -> Self {
        assert_eq!(form.vars(), n);
        SimplexForm { n, form }
    }

    /// The barycentric coordinate t_i as a 0-form.
    pub fn coord(n: usize, i: usize) -> Self {
        SimplexForm {
            n,
            form: Form::from_poly(&canonical_coord(n, i)),
        }
    }

    /// The 1-form dt_i (canonicalized for i = n).
    pub fn d_coord(n: usize, i: usize) -> Self {
        SimplexForm::coord(n, i).d()
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
        SimplexForm {
            n: self.n,
            form: self.form.add(&other.form),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        SimplexForm {
            n: self.n,
            form: self.form.neg(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        SimplexForm {
            n: self.n,
            form: self.form.scale(c),
        }
    }

    pub fn wedge(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "ambient dimension mismatch");
        SimplexForm {
            n: self.n,
            form: self.form.wedge(&other.form),
        }
    }

    pub fn d(&self) -> Self {
        SimplexForm {
            n: self.n,
            form: self.form.d(),
        }
    }

    pub fn max_degree(&self) -> usize {
        self.form.max_degree()
    }

    pub fn is_homogeneous(&self, p: usize) -> bool {
        self.form.is_homogeneous(p)
    }

    pub fn component(&self, p: usize) -> Self {
        SimplexForm {
            n: self.n,
            form: self.form.component(p),
        }
    }

    /// Interior product with the vector field E_i = Σ_j (δ_{ij} − t_j)∂_{t_j}.
    pub fn contract_e(&self, i: usize) -> Self {
        assert!(i <= self.n);
        let components: Vec<Poly> = (0..self.n)
            .map(|j| {
                let tj = Poly::var(self.n, j).neg();
                if j == i {
                    tj.add(&Poly::one(self.n))
                } else {
                    tj
                }
            })
            .collect();
        SimplexForm {
            n: self.n,
            form: self.form.interior(&components),
        }
    }

    /// Evaluation ε^q: substitutes the point into the 0-form part and kills
    /// all positive-degree terms.
    pub fn eval_at(&self, q: &BaryPoint) -> Scalar {
        assert_eq!(q.len(), self.n + 1);
        assert!(is_bary_point(q), "not a barycentric point");
        self.form.eval_scalar(&q[..self.n])
    }

    /// The cone homotopy h^q toward an arbitrary barycentric point q.
    ///
    /// Per term f·dt_{i_0}…dt_{i_p} the result is
    /// (∫_0^1 (1−s)^p f((1−s)t + sq) ds) · Σ_j (−1)^j (q_{i_j} − t_{i_j})
    /// dt_{i_0}…omit j…dt_{i_p}, with the s-integral done exactly via
    /// ∫_0^1 s^m (1−s)^p ds = m!p!/(m+p+1)!.
    pub fn cone_homotopy(&self, q: &BaryPoint) -> Self {
        assert_eq!(q.len(), self.n + 1);
        assert!(is_bary_point(q), "not a barycentric point");
        let n = self.n;
        let mut out = Form::zero(n);
        // substitution images t_i -> (1-s)t_i + s q_i in vars (t_0..t_{n-1}, s)
        let s = Poly::var(n + 1, n);
        let one_minus_s = Poly::one(n + 1).sub(&s);
        let images: Vec<Poly> = (0..n)
            .map(|i| {
                one_minus_s
                    .mul(&Poly::var(n + 1, i))
                    .add(&s.scale(&q[i]))
            })
            .collect();
        for (key, c) in self.form.terms() {
            let p = key.wedge.len();
            if p == 0 {
                continue;
            }
            let f = Poly::monomial(n, key.mono.clone(), c.clone());
            let shifted = f.substitute(&images);
            let by_s = shifted.coefficients_of(n);
            let mut g = Poly::zero(n);
            for (m, fm) in by_s.iter().enumerate() {
                // ∫_0^1 s^m (1-s)^(p-1) ds with the (1-s) power from the
                // p-1 remaining wedge factors after contraction
                let beta = factorial(m) * factorial(p - 1) / factorial(m + p);
                g = g.add(&fm.scale(&beta));
            }
            for (j, &ij) in key.wedge.iter().enumerate() {
                let sign = if j % 2 == 0 { scalar::one() } else { -scalar::one() };
                let radial = Poly::constant(n, q[ij as usize].clone())
                    .sub(&Poly::var(n, ij as usize));
                let mut w = key.wedge.clone();
                w.remove(j);
                let term = Form::poly_wedge(&g.mul(&radial).scale(&sign), &w);
                out = out.add(&term);
            }
        }
        SimplexForm { n, form: out }
    }

    /// h^i, the cone homotopy toward vertex e_i.
    pub fn vertex_homotopy(&self, i: usize) -> Self {
        self.cone_homotopy(&vertex_point(self.n, i))
    }

    /// Pull back along the simplicial automorphism e_j ↦ e_{σ^{-1}(j)},
    /// i.e. τ_σ^*(t_j) = t_{σ(j)}.
    pub fn pullback_permutation(&self, sigma: &[usize]) -> Self {
        assert_eq!(sigma.len(), self.n + 1);
        let mut seen = vec![false; self.n + 1];
        for &v in sigma {
            assert!(v <= self.n && !seen[v], "not a permutation");
            seen[v] = true;
        }
        let images: Vec<Poly> = (0..self.n)
            .map(|j| canonical_coord(self.n, sigma[j]))
            .collect();
        SimplexForm {
            n: self.n,
            form: self.form.pullback(&images),
        }
    }

    /// Restrict to the face spanned by the given strictly increasing vertex
    /// labels; the result lives on Δ^q in the face's own coordinates.
    pub fn restrict_to_face(&self, labels: &[u32]) -> Self {
        assert!(!labels.is_empty());
        assert!(labels.windows(2).all(|w| w[0] < w[1]));
        assert!(labels.iter().all(|&l| (l as usize) <= self.n));
        let q = labels.len() - 1;
        let images: Vec<Poly> = (0..self.n)
            .map(|j| {
                match labels.iter().position(|&l| l as usize == j) {
                    Some(r) => canonical_coord(q, r),
                    None => Poly::zero(q),
                }
            })
            .collect();
        SimplexForm {
            n: q,
            form: self.form.pullback(&images),
        }
    }

    /// Pull back along the i-th face inclusion |ε_i|: Δ^{n−1} → Δ^n.
    pub fn pullback_face(&self, i: usize) -> Self {
        assert!(i <= self.n);
        let labels: Vec<u32> = (0..=self.n as u32).filter(|&l| l as usize != i).collect();
        self.restrict_to_face(&labels)
    }

    pub fn display(&self) -> String {
        self.form.display(&|i| format!("t{i}"))
    }
}

/// Which route `integrate_face` takes.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IntegrationMethod {
    /// (−1)^p ε^{i_p} h^{i_{p−1}} … h^{i_0}.
    Homotopy,
    /// Pull back to the face and integrate monomials by the Dirichlet
    /// formula ∫_{Δ^p} ∏ t_i^{a_i} = (∏ a_i!)/(Σ a_i + p)!.
    Dirichlet,
}

/// ∫ over the oriented face [e_{i_0},…,e_{i_p}] of a p-form on |Δ^n|.
pub fn integrate_face(labels: &[u32], a: &SimplexForm, method: IntegrationMethod) -> Scalar {
    assert!(!labels.is_empty());
    assert!(labels.windows(2).all(|w| w[0] < w[1]), "labels must increase");
    let p = labels.len() - 1;
    assert!(
        a.is_homogeneous(p),
        "form degree does not match face dimension"
    );
    let sign = if p % 2 == 0 { scalar::one() } else { -scalar::one() };
    match method {
        IntegrationMethod::Homotopy => {
            let mut cur = a.clone();
            for &l in &labels[..p] {
                cur = cur.vertex_homotopy(l as usize);
            }
            sign * cur.eval_at(&vertex_point(a.n(), labels[p] as usize))
        }
        IntegrationMethod::Dirichlet => {
            let restricted = a.restrict_to_face(labels);
            let full: Vec<u8> = (0..p as u8).collect();
            let coeff = restricted.form().coefficient_of(&full);
            let mut acc = scalar::zero();
            for (e, c) in coeff.terms() {
                let total: usize = e.iter().map(|&x| x as usize).sum();
                let mut v = c.clone();
                for &x in e {
                    v *= factorial(x as usize);
                }
                v /= factorial(total + p);
                acc += v;
            }
            sign * acc
        }
    }
}

/// The Whitney form on the (not necessarily sorted, repetition-free) index
/// list: ω = Σ_l (−1)^l t_{i_l} dt_{i_0}…omit l…dt_{i_p}, antisymmetric in
/// the indices; `barred` multiplies by p!.
pub fn whitney_form(n: usize, indices: &[u32], barred: bool) -> SimplexForm {
    assert!(!indices.is_empty(), "empty index list");
    assert!(indices.iter().all(|&i| (i as usize) <= n));
    // antisymmetry sign from sorting
    let mut sign = 1i64;
    let mut sorted = indices.to_vec();
    for i in 0..sorted.len() {
        for j in (i + 1)..sorted.len() {
            assert!(sorted[i] != sorted[j], "repeated index");
            if sorted[i] > sorted[j] {
                sign = -sign;
            }
        }
    }
    sorted.sort_unstable();
    let p = sorted.len() - 1;
    let mut ambient = Form::zero(n + 1);
    for l in 0..=p {
        let term_sign = if l % 2 == 0 { 1 } else { -1 };
        let wedge: Vec<u8> = sorted
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != l)
            .map(|(_, &i)| i as u8)
            .collect();
        let coeff = Poly::var(n + 1, sorted[l] as usize)
            .scale(&scalar::int(term_sign));
        ambient = ambient.add(&Form::poly_wedge(&coeff, &wedge));
    }
    let mut out = SimplexForm::from_ambient(n, &ambient).scale(&scalar::int(sign));
    if barred {
        out = out.scale(&factorial(p));
    }
    out
}

/// Deterministic linear congruential generator (MMIX multiplier
/// 6364136223846793005, increment 1442695040888963407, modulus 2^64); the
/// top 32 bits of each state are the draw.
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.state >> 32) as u32
    }

    /// Uniform draw in 0..m.
    pub fn below(&mut self, m: u32) -> u32 {
        assert!(m > 0);
        self.next_u32() % m
    }

    /// Nonzero integer coefficient in [−3, 3].
    pub fn small_coeff(&mut self) -> Scalar {
        let v = [-3i64, -2, -1, 1, 2, 3][self.below(6) as usize];
        scalar::int(v)
    }
}

/// Seeded random p-form on Δ^n with integer coefficients in [−3,3]∖{0} and
/// monomial degrees ≤ d. Deterministic in the seed; never zero.
pub fn random_form(n: usize, p: usize, d: u32, seed: u64) -> SimplexForm {
    assert!(p <= n, "form degree exceeds dimension");
    let mut rng = Lcg::new(seed);
    // all p-subsets of the canonical wedge indices 0..n-1
    let subsets: Vec<Vec<u8>> = wedge_subsets(n, p);
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
            return SimplexForm::from_canonical(n, form);
        }
    }
}

/// Strictly increasing p-element subsets of {0,…,vars−1}.
pub fn wedge_subsets(vars: usize, p: usize) -> Vec<Vec<u8>> {
    fn rec(start: usize, vars: usize, p: usize, cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if p == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..vars {
            cur.push(i as u8);
            rec(i + 1, vars, p - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, vars, p, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{frac, int};

    #[test]
    fn canonicalize_defining_relations() {
        // t_0 + t_1 + t_2 -> 1 on the 2-simplex
        let mut sum = Form::zero(3);
        for i in 0..3 {
            sum = sum.add(&Form::from_poly(&Poly::var(3, i)));
        }
        assert_eq!(SimplexForm::from_ambient(2, &sum), SimplexForm::one(2));
        // dt_0 + dt_1 -> 0 on the 1-simplex
        let ds = Form::d_var(2, 0).add(&Form::d_var(2, 1));
        assert!(SimplexForm::from_ambient(1, &ds).is_zero());
        // t_1 dt_1 on the 1-simplex -> (1-t_0)(-dt_0)
        let a = Form::d_var(2, 1).mul_poly(&Poly::var(2, 1));
        let got = SimplexForm::from_ambient(1, &a);
        let expect = SimplexForm::coord(1, 1).wedge(&SimplexForm::d_coord(1, 0).neg());
        assert_eq!(got, expect);
    }

    #[test]
    fn whitney_basics() {
        // ω_0 = t_0
        assert_eq!(whitney_form(1, &[0], false), SimplexForm::coord(1, 0));
        // on the interval in coordinate t = t_1: ω_01 = dt = -dt_0 canonically
        assert_eq!(
            whitney_form(1, &[0, 1], false),
            SimplexForm::d_coord(1, 0).neg()
        );
        // Σ_k ω_{k,i_0,...,i_p} = dt_{i_0}…dt_{i_p}; terms with a repeated
        // index vanish by antisymmetry and are skipped
        for n in 1..=3usize {
            for p in 0..n {
                let indices: Vec<u32> = (0..=p as u32).collect();
                let mut sum = SimplexForm::zero(n);
                for k in 0..=n as u32 {
                    if indices.contains(&k) {
                        continue;
                    }
                    let mut idx = vec![k];
                    idx.extend(&indices);
                    sum = sum.add(&whitney_form(n, &idx, false));
                }
                let mut dts = SimplexForm::one(n);
                for &i in &indices {
                    dts = dts.wedge(&SimplexForm::d_coord(n, i as usize));
                }
                assert_eq!(sum, dts, "n={n} p={p}");
            }
        }
    }

    #[test]
    fn whitney_antisymmetry() {
        let a = whitney_form(2, &[1, 0], false);
        let b = whitney_form(2, &[0, 1], false).neg();
        assert_eq!(a, b);
    }

    #[test]
    fn contraction_examples() {
        // ι_{E_1}(ω_01) = ω_0 = t_0
        let w01 = whitney_form(2, &[0, 1], false);
        assert_eq!(w01.contract_e(1), whitney_form(2, &[0], false));
        // ι_{E_2}(ω_01) = 0 on the 2-simplex
        assert!(w01.contract_e(2).is_zero());
        // 0-forms contract to zero
        assert!(SimplexForm::coord(2, 0).contract_e(0).is_zero());
    }

    #[test]
    fn cone_homotopy_examples() {
        // h^1(ω_01) = ω_0
        let w01 = whitney_form(2, &[0, 1], false);
        assert_eq!(w01.vertex_homotopy(1), whitney_form(2, &[0], false));
        // h^2(ω_01) = 0 on the 3-simplex
        let w01 = whitney_form(3, &[0, 1], false);
        assert!(w01.vertex_homotopy(2).is_zero());
        // h^0(ω_012) = -1/2 ω_12
        let w012 = whitney_form(2, &[0, 1, 2], false);
        assert_eq!(
            w012.vertex_homotopy(0),
            whitney_form(2, &[1, 2], false).scale(&frac(-1, 2))
        );
        // on the interval with q = e_1: h(dt) = 1 - t = t_0 (coefficient
        // q_1 - t_1 from the defining formula)
        let dt = SimplexForm::d_coord(1, 1);
        let h = dt.cone_homotopy(&vertex_point(1, 1));
        assert_eq!(h, SimplexForm::coord(1, 0));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(
            SimplexForm::coord(1, 0).eval_at(&vertex_point(1, 0)),
            int(1)
        );
        assert_eq!(
            SimplexForm::coord(1, 1).eval_at(&barycenter_point(1, &[0, 1])),
            frac(1, 2)
        );
        assert_eq!(SimplexForm::d_coord(1, 0).eval_at(&vertex_point(1, 0)), int(0));
    }

    #[test]
    fn pullback_examples() {
        // swapping 0 and 1 negates ω̄_01
        let w = whitney_form(2, &[0, 1], true);
        assert_eq!(w.pullback_permutation(&[1, 0, 2]), w.neg());
        // face missing vertex 0 kills ω̄_0
        let w0 = whitney_form(2, &[0], true);
        assert!(w0.pullback_face(0).is_zero());
        // restricting ω̄_01 on the triangle to the edge [0,1]
        let w = whitney_form(2, &[0, 1], true);
        assert_eq!(w.pullback_face(2), whitney_form(1, &[0, 1], true));
    }

    #[test]
    fn integration_examples() {
        let w01 = whitney_form(1, &[0, 1], false);
        assert_eq!(
            integrate_face(&[0, 1], &w01, IntegrationMethod::Dirichlet),
            int(1)
        );
        assert_eq!(
            integrate_face(&[0, 1], &w01, IntegrationMethod::Homotopy),
            int(1)
        );
        let w012 = whitney_form(2, &[0, 1, 2], false);
        assert_eq!(
            integrate_face(&[0, 1, 2], &w012, IntegrationMethod::Dirichlet),
            frac(1, 2)
        );
        assert_eq!(
            integrate_face(&[0, 1, 2], &w012, IntegrationMethod::Homotopy),
            frac(1, 2)
        );
        // ∫_[0,1] t_0 dt_1 = 1/2
        let a = SimplexForm::coord(1, 0).wedge(&SimplexForm::d_coord(1, 1));
        assert_eq!(
            integrate_face(&[0, 1], &a, IntegrationMethod::Dirichlet),
            frac(1, 2)
        );
        assert_eq!(
            integrate_face(&[0, 1], &a, IntegrationMethod::Homotopy),
            frac(1, 2)
        );
    }

    #[test]
    fn random_form_contract() {
        let a = random_form(1, 1, 0, 0);
        let b = random_form(1, 1, 0, 0);
        assert_eq!(a, b);
        assert!(!a.is_zero());
        assert!(a.is_homogeneous(1));
    }

    #[test]
    fn homotopy_identity_for_vertices_and_barycenters() {
        // dh^q + h^q d = ε^q − 1 on random forms
        for n in 1..=2usize {
            let points = [
                vertex_point(n, 0),
                vertex_point(n, n),
                barycenter_point(n, &(0..=n as u32).collect::<Vec<_>>()),
            ];
            for q in &points {
                for p in 0..=n {
                    for seed in 0..4u64 {
                        let a = random_form(n, p, 2, seed);
                        let lhs = a.cone_homotopy(q).d().add(&a.d().cone_homotopy(q));
                        let eval = SimplexForm::constant(n, a.eval_at(q));
                        let rhs = if p == 0 { eval.sub(&a) } else { a.neg() };
                        assert_eq!(lhs, rhs, "n={n} p={p} seed={seed}");
                    }
                }
            }
        }
    }
}
