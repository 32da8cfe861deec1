//! Formal sums over a cell basis with rational coefficients.
//!
//! `FormalSum<C>` serves for both chains and cochains: a cochain is a formal
//! sum of dual basis elements, identified with the cells themselves. The
//! pairing is the bilinear extension of the Kronecker pairing on the basis.

use num_traits::Zero;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::{self, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormalSum<C: Ord + Clone> {
    terms: BTreeMap<C, Scalar>,
}

impl<C: Ord + Clone> Default for FormalSum<C> {
    fn default() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<C: Ord + Clone> FormalSum<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn single(cell: C) -> Self {
        Self::term(cell, scalar::one())
    }

    pub fn term(cell: C, coeff: Scalar) -> Self {
        let mut s = Self::zero();
        s.add_term(cell, coeff);
        s
    }

    pub fn add_term(&mut self, cell: C, coeff: Scalar) {
        if coeff.is_zero() {
            return;
        }
        let key = cell.clone();
        let entry = self.terms.entry(cell).or_insert_with(scalar::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, cell: &C) -> Scalar {
        self.terms.get(cell).cloned().unwrap_or_else(scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&C, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &C> {
        self.terms.keys()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FormalSum {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.clone(), v * c))
                .collect(),
        }
    }

    /// Linear extension of a map on basis elements.
    pub fn map_terms<D: Ord + Clone>(&self, f: impl Fn(&C) -> FormalSum<D>) -> FormalSum<D> {
        let mut out = FormalSum::zero();
        for (cell, coeff) in &self.terms {
            for (d, c) in f(cell).terms {
                out.add_term(d, c * coeff);
            }
        }
        out
    }

    /// Kronecker pairing extended bilinearly: Σ over shared cells of the
    /// product of coefficients.
    pub fn pair(&self, other: &FormalSum<C>) -> Scalar {
        let mut acc = scalar::zero();
        for (cell, a) in &self.terms {
            if let Some(b) = other.terms.get(cell) {
                acc += a * b;
            }
        }
        acc
    }
}

impl<C: Ord + Clone> Add for FormalSum<C> {
    type Output = FormalSum<C>;
    fn add(self, rhs: FormalSum<C>) -> FormalSum<C> {
        let mut out = self;
        for (cell, c) in rhs.terms {
            out.add_term(cell, c);
        }
        out
    }
}

impl<C: Ord + Clone> Sub for FormalSum<C> {
    type Output = FormalSum<C>;
    fn sub(self, rhs: FormalSum<C>) -> FormalSum<C> {
        let mut out = self;
        for (cell, c) in rhs.terms {
            out.add_term(cell, -c);
        }
        out
    }
}

impl<C: Ord + Clone> Neg for FormalSum<C> {
    type Output = FormalSum<C>;
    fn neg(self) -> FormalSum<C> {
        FormalSum {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl<C: Ord + Clone> Mul<Scalar> for FormalSum<C> {
    type Output = FormalSum<C>;
    fn mul(self, c: Scalar) -> FormalSum<C> {
        self.scale(&c)
    }
}

impl<C: Ord + Clone + fmt::Display> fmt::Display for FormalSum<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (cell, coeff)) in self.terms.iter().enumerate() {
            let s = scalar::display(coeff);
            if i == 0 {
                if s == "1" {
                    write!(f, "{cell}")?;
                } else if s == "-1" {
                    write!(f, "-{cell}")?;
                } else {
                    write!(f, "{s}*{cell}")?;
                }
            } else if let Some(rest) = s.strip_prefix('-') {
                if rest == "1" {
                    write!(f, " - {cell}")?;
                } else {
                    write!(f, " - {rest}*{cell}")?;
                }
            } else if s == "1" {
                write!(f, " + {cell}")?;
            } else {
                write!(f, " + {s}*{cell}")?;
            }
        }
        Ok(())
    }
}
