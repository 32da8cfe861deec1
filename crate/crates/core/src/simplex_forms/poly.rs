//! Multivariate polynomials with rational coefficients.
//!
//! A polynomial carries a fixed variable count; exponent vectors all have
//! that length. The same type serves barycentric coordinates t_i, cube
//! coordinates x_i, and the auxiliary integration variable s.

use num_traits::Zero;
use std::collections::BTreeMap;

use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Poly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

impl Poly {
    pub fn zero(vars: usize) -> Self {
        Poly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: Scalar) -> Self {
        let mut p = Poly::zero(vars);
        p.add_term(vec![0; vars], c);
        p
    }

    pub fn one(vars: usize) -> Self {
        Poly::constant(vars, scalar::one())
    }

    /// The coordinate variable with the given index.
    pub fn var(vars: usize, i: usize) -> Self {
        assert!(i < vars, "variable index out of range");
        let mut e = vec![0u32; vars];
        e[i] = 1;
        Poly::monomial(vars, e, scalar::one())
    }

    pub fn monomial(vars: usize, expts: Vec<u32>, coeff: Scalar) -> Self {
        assert_eq!(expts.len(), vars);
        let mut p = Poly::zero(vars);
        p.add_term(expts, coeff);
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn add_term(&mut self, expts: Vec<u32>, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let key = expts.clone();
        let entry = self.terms.entry(expts).or_insert_with(scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars);
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.vars);
        }
        Poly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.vars, other.vars);
        let mut out = Poly::zero(self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.vars);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn partial(&self, i: usize) -> Poly {
        let mut out = Poly::zero(self.vars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                out.add_term(e2, c * scalar::int(e[i] as i64));
            }
        }
        out
    }

    /// Substitute each variable by the corresponding polynomial (all images
    /// over the same target variable count).
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.vars);
        let dst = if images.is_empty() { 0 } else { images[0].vars };
        assert!(images.iter().all(|p| p.vars == dst));
        let mut out = Poly::zero(dst);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(dst, c.clone());
            for (i, &k) in e.iter().enumerate() {
                if k > 0 {
                    term = term.mul(&images[i].pow(k));
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.vars);
        let mut acc = scalar::zero();
        for (e, c) in &self.terms {
            let mut v = c.clone();
            for (i, &k) in e.iter().enumerate() {
                for _ in 0..k {
                    v *= &point[i];
                }
            }
            acc += v;
        }
        acc
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|e| e.iter().sum())
            .max()
            .unwrap_or(0)
    }

    /// Coefficient polynomials of powers of variable `i`: returns `f_m` with
    /// `self = Σ_m v_i^m f_m`, each `f_m` with variable `i` removed.
    pub fn coefficients_of(&self, i: usize) -> Vec<Poly> {
        let max = self.terms.keys().map(|e| e[i]).max().unwrap_or(0);
        let mut out = vec![Poly::zero(self.vars - 1); (max + 1) as usize];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let m = e2.remove(i);
            out[m as usize].add_term(e2, c.clone());
        }
        out
    }

    /// Render with a caller-supplied variable namer, e.g. |i| format!("t{i}").
    pub fn display(&self, name: &dyn Fn(usize) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (e, c) in &self.terms {
            let mut factors = Vec::new();
            for (i, &k) in e.iter().enumerate() {
                if k == 1 {
                    factors.push(name(i));
                } else if k > 1 {
                    factors.push(format!("{}^{}", name(i), k));
                }
            }
            let cs = scalar::display(c);
            if factors.is_empty() {
                parts.push(cs);
            } else if cs == "1" {
                parts.push(factors.join("*"));
            } else if cs == "-1" {
                parts.push(format!("-{}", factors.join("*")));
            } else {
                parts.push(format!("{}*{}", cs, factors.join("*")));
            }
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    #[test]
    fn ring_operations() {
        let t0 = Poly::var(2, 0);
        let t1 = Poly::var(2, 1);
        let p = t0.add(&t1).pow(2);
        assert_eq!(p.eval(&[int(1), int(2)]), int(9));
        assert_eq!(p.partial(0), t0.add(&t1).scale(&int(2)));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn substitution_and_coefficients() {
        // f(t) = t^2, t -> (1-s)u: f = (1-s)^2 u^2 = u^2 - 2su^2 + s^2u^2
        let f = Poly::var(1, 0).pow(2);
        let u = Poly::var(2, 0);
        let s = Poly::var(2, 1);
        let g = f.substitute(&[Poly::one(2).sub(&s).mul(&u)]);
        let by_s = g.coefficients_of(1);
        assert_eq!(by_s.len(), 3);
        assert_eq!(by_s[0], Poly::var(1, 0).pow(2));
        assert_eq!(by_s[1], Poly::var(1, 0).pow(2).scale(&int(-2)));
        assert_eq!(by_s[2], Poly::var(1, 0).pow(2));
    }
}
