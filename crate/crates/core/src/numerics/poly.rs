use std::fmt;

use super::scalar::Scalar;

/// Dense univariate polynomial, coefficients in ascending degree.
///
/// The zero polynomial has an empty coefficient list; trailing zeros are
/// always trimmed (exactly, not with a tolerance).
#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Polynomial<S> {
    pub fn new(mut coeffs: Vec<S>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: S) -> Self {
        Self::new(vec![c])
    }

    pub fn one() -> Self {
        Self::constant(S::one())
    }

    /// The monomial `lambda`.
    pub fn identity() -> Self {
        Self::new(vec![S::zero(), S::one()])
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &S) -> S {
        self.coeffs
            .iter()
            .rev()
            .fold(S::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                let b = other.coeffs.get(i).cloned().unwrap_or_else(S::zero);
                a + b
            })
            .collect();
        Self::new(c)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, s: &S) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                c[i + j] = c[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(c)
    }

    /// Synthetic division by `(lambda - root)`: returns quotient and remainder.
    pub fn div_linear(&self, root: &S) -> (Self, S) {
        if self.coeffs.is_empty() {
            return (Self::zero(), S::zero());
        }
        let n = self.coeffs.len();
        let mut q = vec![S::zero(); n - 1];
        let mut carry = S::zero();
        for i in (0..n).rev() {
            let v = self.coeffs[i].clone() + carry.clone() * root.clone();
            if i == 0 {
                return (Self::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }
}

impl<S: Scalar> fmt::Display for Polynomial<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{}", c.render())?,
                1 => write!(f, "({})x", c.render())?,
                _ => write!(f, "({})x^{i}", c.render())?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::scalar::{rat, Rational};
    use num::Zero;

    fn p(c: &[i64]) -> Polynomial<Rational> {
        Polynomial::new(c.iter().map(|&v| Rational::from_i64(v)).collect())
    }

    #[test]
    fn trims_and_degrees() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0]).degree(), None);
    }

    #[test]
    fn horner_and_products() {
        // (x - 1)(x + 2) = x^2 + x - 2
        let f = p(&[-1, 1]).mul(&p(&[2, 1]));
        assert_eq!(f, p(&[-2, 1, 1]));
        assert_eq!(f.eval(&Rational::from_i64(3)), Rational::from_i64(10));
        assert_eq!(f.eval(&rat(1, 2)), rat(-5, 4));
    }

    #[test]
    fn synthetic_division() {
        let f = p(&[-2, 1, 1]);
        let (q, r) = f.div_linear(&Rational::from_i64(1));
        assert_eq!(q, p(&[2, 1]));
        assert!(r.is_zero());
        let (_, r) = f.div_linear(&Rational::from_i64(2));
        assert_eq!(r, Rational::from_i64(4));
    }
}
