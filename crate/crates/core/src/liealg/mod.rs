//! Lie algebras given by rational structure constants.

mod io;
mod structure;
mod subspace;

pub use io::{AlgebraFile, BracketEntry};
pub use structure::{direct_sum, project_mod, semidirect};
pub use subspace::Subspace;

use crate::error::{Error, Result};
use crate::linalg::{RatMatrix, SparseVec};
use crate::rational::Rational;

/// Finite-dimensional Lie algebra over the rationals.
///
/// `[x_i, x_j] = sum_k c_ij^k x_k`. The full antisymmetric table is kept so
/// that brackets in either order are a lookup.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieAlgebra {
    dim: usize,
    labels: Vec<String>,
    table: Vec<SparseVec>,
}

pub fn default_labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

impl LieAlgebra {
    /// Builds and validates an algebra from bracket entries `(i, j, [x_i, x_j])`
    /// with 0-based indices. Either order of `i, j` is accepted; repeated
    /// entries accumulate.
    pub fn new<I>(labels: Vec<String>, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, SparseVec)>,
    {
        let alg = Self::new_unchecked(labels, brackets)?;
        alg.validate()?;
        Ok(alg)
    }

    /// Like [`LieAlgebra::new`] but without the Jacobi check.
    pub fn new_unchecked<I>(labels: Vec<String>, brackets: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, SparseVec)>,
    {
        let dim = labels.len();
        let mut dense = vec![vec![Rational::zero(); dim]; dim * dim];
        for (i, j, v) in brackets {
            if i >= dim || j >= dim {
                return Err(Error::OutOfRange(format!("bracket index ({i}, {j}) for dimension {dim}")));
            }
            if i == j {
                if v.iter().any(|(_, x)| !x.is_zero()) {
                    return Err(Error::NotAlternating(i, j));
                }
                continue;
            }
            for (k, x) in v {
                if k >= dim {
                    return Err(Error::OutOfRange(format!("bracket component {k} for dimension {dim}")));
                }
                dense[i * dim + j][k] += &x;
                dense[j * dim + i][k] -= &x;
            }
        }
        let table = dense.iter().map(|v| crate::linalg::sparse::dense_to_sparse(v)).collect();
        Ok(LieAlgebra { dim, labels, table })
    }

    /// Builds an algebra from a full bracket function on basis pairs.
    pub fn from_fn<F>(labels: Vec<String>, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Vec<Rational>,
    {
        let n = labels.len();
        let mut entries = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                entries.push((i, j, crate::linalg::sparse::dense_to_sparse(&f(i, j))));
            }
        }
        Self::new(labels, entries)
    }

    pub fn abelian(n: usize) -> Self {
        Self::new_unchecked(default_labels("x", n), Vec::new()).expect("abelian")
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.dim);
        self.labels = labels;
        self
    }

    /// `[x_i, x_j]` as a sparse vector.
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn bracket_basis_dense(&self, i: usize, j: usize) -> Vec<Rational> {
        crate::linalg::sparse::sparse_to_dense(self.bracket_basis(i, j), self.dim)
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() || i == j {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.bracket_basis(i, j) {
                    out[*k] += &(&ab * c);
                }
            }
        }
        out
    }

    /// Nonzero structure constants `(i, j, k, c_ij^k)` with `i < j`.
    pub fn structure_constants(&self) -> Vec<(usize, usize, usize, Rational)> {
        let mut out = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for (k, c) in self.bracket_basis(i, j) {
                    out.push((i, j, *k, c.clone()));
                }
            }
        }
        out
    }

    pub fn is_abelian(&self) -> bool {
        self.table.iter().all(|v| v.is_empty())
    }

    /// Checks the Jacobi identity on every basis triple.
    pub fn validate(&self) -> Result<()> {
        let n = self.dim;
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let ei = unit(n, i);
                    let ej = unit(n, j);
                    let ek = unit(n, k);
                    let mut r = self.bracket(&self.bracket_basis_dense(i, j), &ek);
                    let t2 = self.bracket(&self.bracket_basis_dense(j, k), &ei);
                    let t3 = self.bracket(&self.bracket_basis_dense(k, i), &ej);
                    for m in 0..n {
                        r[m] = &(&r[m] + &t2[m]) + &t3[m];
                    }
                    if !crate::linalg::is_zero_vector(&r) {
                        return Err(Error::JacobiViolation { i, j, k, residual: r });
                    }
                }
            }
        }
        Ok(())
    }

    /// Matrix of `ad(v) = [v, .]`.
    pub fn ad_matrix(&self, v: &[Rational]) -> RatMatrix {
        let n = self.dim;
        let mut m = RatMatrix::zeros(n, n);
        for (i, a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..n {
                for (k, c) in self.bracket_basis(i, j) {
                    m[(*k, j)] += &(a * c);
                }
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> RatMatrix {
        self.ad_matrix(&unit(self.dim, i))
    }

    /// Whether `d` satisfies `d[x, y] = [dx, y] + [x, dy]` on all basis pairs.
    pub fn is_derivation(&self, d: &RatMatrix) -> bool {
        let n = self.dim;
        if d.rows() != n || d.cols() != n {
            return false;
        }
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| d.column(j)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let lhs = d.mul_vec(&self.bracket_basis_dense(i, j));
                let a = self.bracket(&cols[i], &unit(n, j));
                let b = self.bracket(&unit(n, i), &cols[j]);
                for k in 0..n {
                    if lhs[k] != &a[k] + &b[k] {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The same algebra in a new basis whose vectors are the columns of `p`.
    pub fn change_basis(&self, p: &RatMatrix, labels: Vec<String>) -> Result<LieAlgebra> {
        let n = self.dim;
        if p.rows() != n || p.cols() != n {
            return Err(Error::DimensionMismatch("change of basis must be square".into()));
        }
        let inv = p
            .inverse()
            .ok_or_else(|| Error::DimensionMismatch("change of basis is singular".into()))?;
        let cols: Vec<Vec<Rational>> = (0..n).map(|j| p.column(j)).collect();
        LieAlgebra::from_fn(labels, |i, j| inv.mul_vec(&self.bracket(&cols[i], &cols[j])))
    }
}

pub fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::one();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn sec41() -> LieAlgebra {
        let labels = ["u", "x", "y", "z"].iter().map(|s| s.to_string()).collect();
        LieAlgebra::new(
            labels,
            vec![
                (0, 1, vec![(1, q(1))]),
                (0, 2, vec![(2, q(1))]),
                (0, 3, vec![(3, q(2))]),
                (1, 2, vec![(3, q(1))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(LieAlgebra::abelian(4).validate().is_ok());
        assert!(sec41().validate().is_ok());
        let bad = LieAlgebra::new(
            default_labels("x", 3),
            vec![(0, 1, vec![(2, q(1))]), (0, 2, vec![(0, q(1))])],
        );
        assert!(matches!(bad, Err(Error::JacobiViolation { .. })));
    }

    #[test]
    fn ad_examples() {
        let s = sec41();
        assert!(LieAlgebra::abelian(3).ad_basis(1).is_zero());
        assert_eq!(s.ad_basis(0), RatMatrix::diagonal(&[q(0), q(1), q(1), q(2)]));
        let adx = s.ad_basis(1);
        let mut expect = RatMatrix::zeros(4, 4);
        expect[(3, 2)] = q(1);
        expect[(1, 0)] = q(-1);
        assert_eq!(adx, expect);
    }

    #[test]
    fn change_basis_roundtrip() {
        let s = sec41();
        let p = RatMatrix::from_i64_rows(&[&[1, 0, 0, 0], &[1, 1, 0, 0], &[0, 2, 1, 0], &[0, 0, 3, 1]]);
        let t = s.change_basis(&p, s.labels().to_vec()).unwrap();
        let back = t.change_basis(&p.inverse().unwrap(), s.labels().to_vec()).unwrap();
        assert_eq!(back, s);
    }
}
