//! Polynomial differential forms over a fixed coordinate system.
//!
//! A form is a sum of terms c · (monomial) · dξ_{j_0}∧…∧dξ_{j_p} with the
//! wedge indices strictly increasing. Terms are keyed by (degree, wedge set,
//! monomial), which fixes a canonical ordering and makes equality term-wise.
//! The type is coordinate-agnostic: barycentric forms and cube forms both
//! wrap it with their own variable conventions.

use num_traits::Zero;
use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::poly::Poly;
use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TermKey {
    /// Strictly increasing wedge factor indices.
    pub wedge: Vec<u8>,
    /// Exponent vector of the coefficient monomial.
    pub mono: Vec<u32>,
}

impl Ord for TermKey {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.wedge.len(), &self.wedge, &self.mono).cmp(&(
            other.wedge.len(),
            &other.wedge,
            &other.mono,
        ))
    }
}

impl PartialOrd for TermKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Merge two strictly increasing wedge lists, returning the merged list and
/// the sign of the shuffle, or `None` when an index repeats.
fn merge_wedge(a: &[u8], b: &[u8]) -> Option<(Vec<u8>, i64)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    let mut sign = 1i64;
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            Ordering::Equal => return None,
            Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            Ordering::Greater => {
                // b[j] moves past the remaining a-factors
                if (a.len() - i) % 2 == 1 {
                    sign = -sign;
                }
                out.push(b[j]);
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    Some((out, sign))
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Form {
    vars: usize,
    terms: BTreeMap<TermKey, Scalar>,
}

impl Form {
    pub fn zero(vars: usize) -> Self {
        Form {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_poly(p: &Poly) -> Self {
        let mut f = Form::zero(p.vars());
        for (e, c) in p.terms() {
            f.add_term(Vec::new(), e.clone(), c.clone());
        }
        f
    }

    pub fn one(vars: usize) -> Self {
        Form::from_poly(&Poly::one(vars))
    }

    /// The 1-form dξ_i.
    pub fn d_var(vars: usize, i: usize) -> Self {
        assert!(i < vars);
        let mut f = Form::zero(vars);
        f.add_term(vec![i as u8], vec![0; vars], scalar::one());
        f
    }

    /// p · dξ_{S} for a strictly increasing wedge set S.
    pub fn poly_wedge(p: &Poly, wedge: &[u8]) -> Self {
        assert!(wedge.windows(2).all(|w| w[0] < w[1]));
        assert!(wedge.iter().all(|&i| (i as usize) < p.vars()));
        let mut f = Form::zero(p.vars());
        for (e, c) in p.terms() {
            f.add_term(wedge.to_vec(), e.clone(), c.clone());
        }
        f
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TermKey, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, wedge: Vec<u8>, mono: Vec<u32>, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        assert_eq!(mono.len(), self.vars);
        let key = TermKey { wedge, mono };
        let k2 = key.clone();
        let entry = self.terms.entry(key).or_insert_with(scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&k2);
        }
    }

    pub fn add(&self, other: &Form) -> Form {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.wedge.clone(), k.mono.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Form {
        Form {
            vars: self.vars,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Form {
        if c.is_zero() {
            return Form::zero(self.vars);
        }
        Form {
            vars: self.vars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    pub fn wedge(&self, other: &Form) -> Form {
        assert_eq!(self.vars, other.vars);
        let mut out = Form::zero(self.vars);
        for (k1, c1) in &self.terms {
            for (k2, c2) in &other.terms {
                if let Some((w, sign)) = merge_wedge(&k1.wedge, &k2.wedge) {
                    let mono: Vec<u32> = k1.mono.iter().zip(&k2.mono).map(|(a, b)| a + b).collect();
                    out.add_term(w, mono, c1 * c2 * scalar::int(sign));
                }
            }
        }
        out
    }

    pub fn mul_poly(&self, p: &Poly) -> Form {
        self.wedge(&Form::from_poly(p))
    }

    /// Exterior derivative d(f·dξ_S) = df ∧ dξ_S.
    pub fn d(&self) -> Form {
        let mut out = Form::zero(self.vars);
        for (k, c) in &self.terms {
            for i in 0..self.vars {
                if k.mono[i] == 0 {
                    continue;
                }
                let dcoef = c * scalar::int(k.mono[i] as i64);
                let mut mono = k.mono.clone();
                mono[i] -= 1;
                if let Some((w, sign)) = merge_wedge(&[i as u8], &k.wedge) {
                    out.add_term(w, mono, dcoef * scalar::int(sign));
                }
            }
        }
        out
    }

    /// Interior product with the vector field Σ_j v_j ∂_j.
    pub fn interior(&self, components: &[Poly]) -> Form {
        assert_eq!(components.len(), self.vars);
        let mut out = Form::zero(self.vars);
        for (k, c) in &self.terms {
            for (l, &j) in k.wedge.iter().enumerate() {
                let vj = &components[j as usize];
                if vj.is_zero() {
                    continue;
                }
                let sign = if l % 2 == 0 { 1 } else { -1 };
                let mut w = k.wedge.clone();
                w.remove(l);
                let base = Form::poly_wedge(&Poly::monomial(self.vars, k.mono.clone(), c * scalar::int(sign)), &w);
                out = out.add(&base.mul_poly(vj));
            }
        }
        out
    }

    /// Pull back along ξ_i = images[i](η): substitute into coefficients and
    /// replace each dξ_i by d(images[i]).
    pub fn pullback(&self, images: &[Poly]) -> Form {
        assert_eq!(images.len(), self.vars);
        let dst = if images.is_empty() { 0 } else { images[0].vars() };
        let d_images: Vec<Form> = images
            .iter()
            .map(|p| Form::from_poly(p).d())
            .collect();
        let mut out = Form::zero(dst);
        for (k, c) in &self.terms {
            let coeff = Poly::monomial(self.vars, k.mono.clone(), c.clone()).substitute(images);
            let mut term = Form::from_poly(&coeff);
            for &i in &k.wedge {
                term = term.wedge(&d_images[i as usize]);
            }
            out = out.add(&term);
        }
        out
    }

    /// Maximum wedge degree among nonzero terms.
    pub fn max_degree(&self) -> usize {
        self.terms.keys().map(|k| k.wedge.len()).max().unwrap_or(0)
    }

    /// True when every nonzero term has the given wedge degree.
    pub fn is_homogeneous(&self, p: usize) -> bool {
        self.terms.keys().all(|k| k.wedge.len() == p)
    }

    /// The degree-p component.
    pub fn component(&self, p: usize) -> Form {
        Form {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| k.wedge.len() == p)
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Coefficient polynomial of the wedge monomial dξ_S.
    pub fn coefficient_of(&self, wedge: &[u8]) -> Poly {
        let mut p = Poly::zero(self.vars);
        for (k, c) in &self.terms {
            if k.wedge == wedge {
                p.add_term(k.mono.clone(), c.clone());
            }
        }
        p
    }

    /// Evaluate the degree-0 component at a point.
    pub fn eval_scalar(&self, point: &[Scalar]) -> Scalar {
        self.coefficient_of(&[]).eval(point)
    }

    /// Render with variable namer, e.g. |i| format!("t{i}").
    pub fn display(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (k, c) in &self.terms {
            let mut factors = Vec::new();
            let cs = scalar::display(c);
            let mut head = String::new();
            let mut nontrivial = false;
            for (i, &e) in k.mono.iter().enumerate() {
                if e == 1 {
                    factors.push(name(i));
                    nontrivial = true;
                } else if e > 1 {
                    factors.push(format!("{}^{}", name(i), e));
                    nontrivial = true;
                }
            }
            for &i in &k.wedge {
                factors.push(format!("d{}", name(i as usize)));
                nontrivial = true;
            }
            if !nontrivial {
                head.push_str(&cs);
            } else if cs == "1" {
                head.push_str(&factors.join("*"));
            } else if cs == "-1" {
                head.push('-');
                head.push_str(&factors.join("*"));
            } else {
                head.push_str(&format!("{}*{}", cs, factors.join("*")));
            }
            parts.push(head);
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn wedge_is_graded_commutative() {
        let a = Form::d_var(3, 0);
        let b = Form::d_var(3, 1).mul_poly(&Poly::var(3, 2));
        assert_eq!(a.wedge(&b), b.wedge(&a).neg());
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn d_squares_to_zero_and_leibniz() {
        let f = Form::from_poly(&Poly::var(2, 0).mul(&Poly::var(2, 1)));
        assert!(f.d().d().is_zero());
        let a = Form::from_poly(&Poly::var(2, 0).pow(2));
        let b = Form::d_var(2, 1).mul_poly(&Poly::var(2, 1));
        let lhs = a.wedge(&b).d();
        let rhs = a.d().wedge(&b).add(&a.wedge(&b.d()));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn interior_is_contraction() {
        // ι_{∂_0}(dξ_0∧dξ_1) = dξ_1
        let f = Form::d_var(2, 0).wedge(&Form::d_var(2, 1));
        let v = vec![Poly::one(2), Poly::zero(2)];
        assert_eq!(f.interior(&v), Form::d_var(2, 1));
        // ι_{∂_1}(dξ_0∧dξ_1) = -dξ_0
        let v = vec![Poly::zero(2), Poly::one(2)];
        assert_eq!(f.interior(&v), Form::d_var(2, 0).neg());
    }

    #[test]
    fn pullback_chain_rule() {
        // pull back dξ_0 along ξ_0 = η_0², get 2η_0 dη_0
        let f = Form::d_var(1, 0);
        let g = f.pullback(&[Poly::var(1, 0).pow(2)]);
        assert_eq!(
            g,
            Form::d_var(1, 0).mul_poly(&Poly::var(1, 0).scale(&int(2)))
        );
    }
}
