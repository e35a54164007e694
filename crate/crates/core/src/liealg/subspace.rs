use serde::{Deserialize, Serialize};

use crate::linalg::RatMatrix;
use crate::rational::{primitive_integer_vector, Rational};

/// A linear subspace of `Q^n` in canonical form: reduced row echelon rows,
/// each scaled to coprime integers with a positive pivot.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace { ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(ambient: usize) -> Self {
        Self::span(ambient, &RatMatrix::identity(ambient).row_vectors())
    }

    pub fn span(ambient: usize, vectors: &[Vec<Rational>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(ambient);
        }
        for v in vectors {
            assert_eq!(v.len(), ambient, "vector length differs from ambient dimension");
        }
        let rref = RatMatrix::from_rows(vectors.to_vec()).rref();
        let basis = (0..rref.pivots.len())
            .map(|i| primitive_integer_vector(rref.matrix.row(i)))
            .collect();
        Subspace { ambient, basis, pivots: rref.pivots }
    }

    /// Span of standard basis vectors with the given indices.
    pub fn coordinate(ambient: usize, indices: &[usize]) -> Self {
        let vs: Vec<Vec<Rational>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![Rational::zero(); ambient];
                v[i] = Rational::one();
                v
            })
            .collect();
        Self::span(ambient, &vs)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        let coords: Vec<Rational> = self
            .basis
            .iter()
            .zip(&self.pivots)
            .map(|(b, &p)| &v[p] / &b[p])
            .collect();
        let mut rem = v.to_vec();
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                crate::linalg::add_scaled(&mut rem, &-c, b);
            }
        }
        if crate::linalg::is_zero_vector(&rem) {
            Some(coords)
        } else {
            None
        }
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Vector with the given coordinates.
    pub fn vector(&self, coords: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient];
        for (c, b) in coords.iter().zip(&self.basis) {
            if !c.is_zero() {
                crate::linalg::add_scaled(&mut out, c, b);
            }
        }
        out
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Self::span(self.ambient, &vs)
    }

    pub fn intersection(&self, other: &Subspace) -> Subspace {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.ambient);
        }
        let mut cols = self.basis.clone();
        cols.extend(other.basis.iter().map(|v| v.iter().map(|x| -x).collect()));
        let m = RatMatrix::from_columns(self.ambient, &cols);
        let vs: Vec<Vec<Rational>> = m
            .kernel_basis()
            .into_iter()
            .map(|k| self.vector(&k[..self.dim()]))
            .collect();
        Self::span(self.ambient, &vs)
    }

    /// Indices of standard basis vectors complementing this subspace
    /// (the non-pivot coordinates).
    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient).filter(|i| !self.pivots.contains(i)).collect()
    }

    /// Annihilator in the dual space, as row vectors.
    pub fn annihilator(&self) -> Vec<Vec<Rational>> {
        if self.is_zero() {
            return RatMatrix::identity(self.ambient).row_vectors();
        }
        RatMatrix::from_rows(self.basis.clone()).kernel_basis()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| Rational::from(x)).collect()
    }

    #[test]
    fn canonical_form_is_representation_independent() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 2, 2])]);
        let b = Subspace::span(3, &[v(&[2, 0, -2]), v(&[1, 2, 1])]);
        assert_eq!(a, b);
        assert_eq!(a.dim(), 2);
    }

    #[test]
    fn intersection_and_sum() {
        let a = Subspace::coordinate(3, &[0, 1]);
        let b = Subspace::coordinate(3, &[1, 2]);
        assert_eq!(a.intersection(&b), Subspace::coordinate(3, &[1]));
        assert_eq!(a.sum(&b), Subspace::full(3));
        assert_eq!(a.complement_indices(), vec![2]);
    }

    #[test]
    fn coordinates_roundtrip() {
        let a = Subspace::span(3, &[v(&[1, 1, 0]), v(&[0, 1, 3])]);
        let x = v(&[2, 5, 9]);
        let c = a.coordinates(&x).unwrap();
        assert_eq!(a.vector(&c), x);
        assert!(a.coordinates(&v(&[0, 0, 1])).is_none());
    }
}
