//! Dense univariate polynomials over a [`Field`].

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// Coefficients in ascending degree, without trailing zeros.
/// The zero polynomial has no coefficients and no degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Elem>,
}

impl Poly {
    pub fn zero() -> Poly {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Poly {
        Poly::constant(Elem::ONE)
    }

    pub fn constant(c: Elem) -> Poly {
        Poly::from_coeffs(vec![c])
    }

    /// `c * x^degree`
    pub fn monomial(c: Elem, degree: usize) -> Poly {
        let mut coeffs = vec![Elem::ZERO; degree + 1];
        coeffs[degree] = c;
        Poly::from_coeffs(coeffs)
    }

    pub fn from_coeffs(mut coeffs: Vec<Elem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    /// Checks every coefficient against the field before building.
    pub fn from_coeffs_in(field: &Field, coeffs: Vec<Elem>) -> Result<Poly> {
        if let Some(bad) = coeffs.iter().find(|c| !field.contains(**c)) {
            return Err(Error::FieldMismatch {
                value: bad.0 as u64,
                q: field.q(),
            });
        }
        Ok(Poly::from_coeffs(coeffs))
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    pub fn leading(&self) -> Option<Elem> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Elem::ONE)
    }

    /// Horner evaluation.
    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn checked_eval(&self, field: &Field, x: Elem) -> Result<Elem> {
        if !field.contains(x) {
            return Err(Error::FieldMismatch {
                value: x.0 as u64,
                q: field.q(),
            });
        }
        Ok(self.eval(field, x))
    }

    pub fn add(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::from_coeffs(
            (0..n)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn mul(&self, field: &Field, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        Poly::from_coeffs(out)
    }

    pub fn scale(&self, field: &Field, c: Elem) -> Poly {
        Poly::from_coeffs(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    /// Divides by the leading coefficient; the zero polynomial is returned as is.
    pub fn to_monic(&self, field: &Field) -> Poly {
        match self.leading() {
            None => Poly::zero(),
            Some(lc) => self.scale(
                field,
                field.inv(lc).expect("leading coefficient is nonzero"),
            ),
        }
    }

    /// Euclidean division `self = quotient * divisor + remainder`.
    pub fn div_rem(&self, field: &Field, divisor: &Poly) -> Result<(Poly, Poly)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = field.inv(divisor.coeffs[dd])?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((Poly::zero(), self.clone()));
        }
        let mut quot = vec![Elem::ZERO; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = field.mul(rem[i + dd], lead_inv);
            quot[i] = c;
            if c.is_zero() {
                continue;
            }
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = field.sub(rem[i + j], field.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((Poly::from_coeffs(quot), Poly::from_coeffs(rem)))
    }

    /// `(x - r_1)(x - r_2)...(x - r_t)`; roots may repeat.
    pub fn from_roots(field: &Field, roots: &[Elem]) -> Poly {
        let mut coeffs = vec![Elem::ONE];
        for &r in roots {
            let nr = field.neg(r);
            coeffs.push(Elem::ZERO);
            for i in (0..coeffs.len()).rev() {
                let shifted = if i > 0 { coeffs[i - 1] } else { Elem::ZERO };
                coeffs[i] = field.add(shifted, field.mul(coeffs[i], nr));
            }
        }
        Poly::from_coeffs(coeffs)
    }

    /// The unique polynomial of degree below `points.len()` through every point,
    /// assembled from the Lagrange basis products.
    pub fn interpolate(field: &Field, points: &[(Elem, Elem)]) -> Result<Poly> {
        let mut seen = HashSet::with_capacity(points.len());
        for &(x, y) in points {
            for v in [x, y] {
                if !field.contains(v) {
                    return Err(Error::FieldMismatch {
                        value: v.0 as u64,
                        q: field.q(),
                    });
                }
            }
            if !seen.insert(x) {
                return Err(Error::DuplicateNode(x.0));
            }
        }
        let nodes: Vec<Elem> = points.iter().map(|p| p.0).collect();
        let full = Poly::from_roots(field, &nodes);
        let mut acc = vec![Elem::ZERO; points.len()];
        for (i, &(xi, yi)) in points.iter().enumerate() {
            if yi.is_zero() {
                continue;
            }
            let denom = nodes
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(Elem::ONE, |d, (_, &xj)| field.mul(d, field.sub(xi, xj)));
            let weight = field.mul(yi, field.inv(denom)?);
            // synthetic division of the node polynomial by (x - xi)
            let c = full.coeffs();
            let mut carry = Elem::ZERO;
            for k in (0..points.len()).rev() {
                carry = field.add(c[k + 1], field.mul(carry, xi));
                acc[k] = field.add(acc[k], field.mul(weight, carry));
            }
        }
        Ok(Poly::from_coeffs(acc))
    }
}

/// Low-order symmetric data of a multiset of field elements.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetricProfile {
    pub t: usize,
    /// Elementary symmetric polynomial of degree one.
    pub e1: Elem,
    /// Elementary symmetric polynomial of degree two.
    pub e2: Elem,
    pub psum1: Elem,
    pub psum2: Elem,
}

impl SymmetricProfile {
    pub fn of(field: &Field, values: &[Elem]) -> SymmetricProfile {
        let mut e1 = Elem::ZERO;
        let mut e2 = Elem::ZERO;
        let mut psum2 = Elem::ZERO;
        for &y in values {
            e2 = field.add(e2, field.mul(e1, y));
            e1 = field.add(e1, y);
            psum2 = field.add(psum2, field.mul(y, y));
        }
        SymmetricProfile {
            t: values.len(),
            e1,
            e2,
            psum1: e1,
            psum2,
        }
    }

    /// `sum_{i <= j} y_i y_j = e1^2 - e2`.
    pub fn weak_e2(&self, field: &Field) -> Elem {
        field.sub(field.mul(self.e1, self.e1), self.e2)
    }

    /// Newton's identity `psum2 = e1^2 - 2 e2`.
    pub fn newton_holds(&self, field: &Field) -> bool {
        let rhs = field.sub(field.mul(self.e1, self.e1), field.scale_int(2, self.e2));
        self.psum2 == rhs
    }
}
