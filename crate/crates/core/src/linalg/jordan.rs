//! Characteristic polynomials, rational spectra and the Jordan–Chevalley
//! decomposition.

use super::matrix::RatMatrix;
use super::poly::RatPolynomial;
use crate::error::{Error, Result};
use crate::rational::Rational;

fn require_square(m: &RatMatrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::NonSquare { rows: m.rows(), cols: m.cols() })
    }
}

/// Monic `det(xI - M)` by the Faddeev–LeVerrier recursion.
pub fn char_poly(m: &RatMatrix) -> Result<RatPolynomial> {
    require_square(m)?;
    let n = m.rows();
    let mut coeffs = vec![Rational::zero(); n + 1];
    coeffs[n] = Rational::one();
    let mut mk = RatMatrix::zeros(n, n);
    for k in 1..=n {
        let mut next = m.mul(&mk);
        for i in 0..n {
            next[(i, i)] += &coeffs[n - k + 1];
        }
        let am = m.mul(&next);
        coeffs[n - k] = -(am.trace() / Rational::from(k));
        mk = next;
    }
    Ok(RatPolynomial::new(coeffs))
}

/// Rational eigenvalues with algebraic multiplicity, and whether the
/// characteristic polynomial splits over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spectrum {
    pub eigenvalues: Vec<Rational>,
    pub is_split: bool,
}

impl Spectrum {
    /// Distinct eigenvalues in increasing order.
    pub fn distinct(&self) -> Vec<Rational> {
        let mut v = self.eigenvalues.clone();
        v.dedup();
        v
    }
}

pub fn rational_eigenvalues(m: &RatMatrix) -> Result<Spectrum> {
    let p = char_poly(m)?;
    let eigenvalues = p.rational_roots();
    let is_split = eigenvalues.len() == m.rows();
    Ok(Spectrum { eigenvalues, is_split })
}

const NEWTON_MAX_STEPS: usize = 64;

/// Semisimple part of `M`, as a polynomial in `M`, by Newton iteration on the
/// squarefree radical of the characteristic polynomial.
pub fn semisimple_part(m: &RatMatrix) -> Result<RatMatrix> {
    let p = char_poly(m)?;
    let r = p.squarefree_radical()?;
    let dr = r.derivative();
    let mut s = m.clone();
    for _ in 0..NEWTON_MAX_STEPS {
        let rs = r.eval_matrix(&s)?;
        if rs.is_zero() {
            return Ok(s);
        }
        let drs = dr.eval_matrix(&s)?;
        let inv = drs.inverse().ok_or_else(|| {
            Error::Internal("derivative of the radical is singular in Newton step".into())
        })?;
        s = s.sub(&rs.mul(&inv));
    }
    Err(Error::Internal("Jordan-Chevalley iteration did not converge".into()))
}

/// Nilpotent part `M - M_s`.
pub fn nilpotent_part(m: &RatMatrix) -> Result<RatMatrix> {
    Ok(m.sub(&semisimple_part(m)?))
}

pub fn is_semisimple(m: &RatMatrix) -> Result<bool> {
    Ok(semisimple_part(m)? == *m)
}

/// Basis of `ker (M - λI)^n`.
pub fn generalized_eigenspace(m: &RatMatrix, lambda: &Rational) -> Result<Vec<Vec<Rational>>> {
    require_square(m)?;
    let n = m.rows();
    if n == 0 {
        return Ok(Vec::new());
    }
    Ok(m.shift(lambda).pow(n).kernel_basis())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn char_poly_examples() {
        let d = RatMatrix::diagonal(&[q(1), q(2)]);
        assert_eq!(char_poly(&d).unwrap(), RatPolynomial::from_i64(&[2, -3, 1]));
        assert_eq!(char_poly(&RatMatrix::zeros(2, 2)).unwrap(), RatPolynomial::from_i64(&[0, 0, 1]));
        let rot = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        assert_eq!(char_poly(&rot).unwrap(), RatPolynomial::from_i64(&[1, 0, 1]));
        assert!(matches!(char_poly(&RatMatrix::zeros(2, 3)), Err(Error::NonSquare { .. })));
    }

    #[test]
    fn eigenvalue_examples() {
        let d = RatMatrix::diagonal(&[q(0), q(1), q(1), q(2)]);
        let s = rational_eigenvalues(&d).unwrap();
        assert_eq!(s.eigenvalues, vec![q(0), q(1), q(1), q(2)]);
        assert!(s.is_split);
        let rot = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let s = rational_eigenvalues(&rot).unwrap();
        assert!(s.eigenvalues.is_empty());
        assert!(!s.is_split);
        let j = RatMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 1], &[0, 0, 0]]);
        assert_eq!(rational_eigenvalues(&j).unwrap().eigenvalues, vec![q(0); 3]);
    }

    #[test]
    fn semisimple_examples() {
        let j = RatMatrix::from_i64_rows(&[&[1, 1], &[0, 1]]);
        assert_eq!(semisimple_part(&j).unwrap(), RatMatrix::identity(2));
        let n = RatMatrix::from_i64_rows(&[&[0, 1, 5], &[0, 0, 1], &[0, 0, 0]]);
        assert!(semisimple_part(&n).unwrap().is_zero());
        let m = RatMatrix::from_i64_rows(&[&[1, 1], &[0, 2]]);
        let s = semisimple_part(&m).unwrap();
        assert_eq!(s, m);
        // mixed: Jordan block at 2 plus a separate eigenvalue 3
        let m = RatMatrix::from_i64_rows(&[&[2, 1, 4], &[0, 2, 7], &[0, 0, 3]]);
        let s = semisimple_part(&m).unwrap();
        assert_eq!(s.mul(&m), m.mul(&s));
        assert!(m.sub(&s).pow(3).is_zero());
        assert_eq!(semisimple_part(&s).unwrap(), s);
    }

    #[test]
    fn generalized_eigenspace_examples() {
        assert_eq!(generalized_eigenspace(&RatMatrix::identity(3), &q(1)).unwrap().len(), 3);
        let j = RatMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]);
        assert_eq!(generalized_eigenspace(&j, &q(0)).unwrap().len(), 2);
        let d = RatMatrix::diagonal(&[q(0), q(1), q(1), q(2)]);
        assert_eq!(generalized_eigenspace(&d, &q(1)).unwrap().len(), 2);
    }
}
