//! Representations given by explicit matrices, and one-dimensional characters.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, Subspace};
use crate::linalg::RatMatrix;
use crate::rational::Rational;

/// A linear functional on a Lie algebra vanishing on its derived subalgebra,
/// recorded by its values on the basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Character(Vec<Rational>);

impl Character {
    /// Validates that `values` vanish on `[L, L]`.
    pub fn new(l: &LieAlgebra, values: Vec<Rational>) -> Result<Self> {
        if values.len() != l.dim() {
            return Err(Error::DimensionMismatch(format!(
                "character has {} values, algebra has dimension {}",
                values.len(),
                l.dim()
            )));
        }
        let c = Character(values);
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                if !c.eval_sparse(l.bracket_basis(i, j)).is_zero() {
                    return Err(Error::NotACharacter);
                }
            }
        }
        Ok(c)
    }

    pub fn from_values_unchecked(values: Vec<Rational>) -> Self {
        Character(values)
    }

    pub fn zero(dim: usize) -> Self {
        Character(vec![Rational::zero(); dim])
    }

    /// `a` times the dual of basis vector `i`.
    pub fn dual_basis(dim: usize, i: usize, a: Rational) -> Self {
        let mut v = vec![Rational::zero(); dim];
        v[i] = a;
        Character(v)
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Rational::is_zero)
    }

    pub fn eval(&self, v: &[Rational]) -> Rational {
        crate::linalg::dot(&self.0, v)
    }

    pub fn eval_sparse(&self, v: &[(usize, Rational)]) -> Rational {
        v.iter().map(|(i, x)| &self.0[*i] * x).sum()
    }

    pub fn add(&self, other: &Character) -> Character {
        Character(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Character) -> Character {
        Character(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Character {
        Character(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Debug for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A representation `ρ` of a Lie algebra, one matrix per basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieModule {
    dim: usize,
    rho: Vec<RatMatrix>,
}

impl LieModule {
    /// Validates `ρ([x_i, x_j]) = [ρ(x_i), ρ(x_j)]`.
    pub fn new(l: &LieAlgebra, dim: usize, rho: Vec<RatMatrix>) -> Result<Self> {
        let m = Self::new_unchecked(dim, rho);
        m.validate(l)?;
        Ok(m)
    }

    pub fn new_unchecked(dim: usize, rho: Vec<RatMatrix>) -> Self {
        LieModule { dim, rho }
    }

    pub fn validate(&self, l: &LieAlgebra) -> Result<()> {
        if self.rho.len() != l.dim() {
            return Err(Error::ModuleMismatch(format!(
                "{} matrices for an algebra of dimension {}",
                self.rho.len(),
                l.dim()
            )));
        }
        for (i, r) in self.rho.iter().enumerate() {
            if r.rows() != self.dim || r.cols() != self.dim {
                return Err(Error::ModuleMismatch(format!("matrix {i} has the wrong shape")));
            }
        }
        for i in 0..l.dim() {
            for j in i + 1..l.dim() {
                let lhs = self.act_sparse(l.bracket_basis(i, j));
                if lhs != self.rho[i].commutator(&self.rho[j]) {
                    return Err(Error::ModuleMismatch(format!(
                        "representation property fails on ({}, {})",
                        l.labels()[i],
                        l.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn trivial(l: &LieAlgebra) -> Self {
        Self::new_unchecked(1, vec![RatMatrix::zeros(1, 1); l.dim()])
    }

    pub fn from_character(c: &Character) -> Self {
        Self::new_unchecked(1, c.values().iter().map(|x| RatMatrix::from_rows(vec![vec![x.clone()]])).collect())
    }

    pub fn adjoint(l: &LieAlgebra) -> Self {
        Self::new_unchecked(l.dim(), (0..l.dim()).map(|i| l.ad_basis(i)).collect())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rho(&self) -> &[RatMatrix] {
        &self.rho
    }

    /// `ρ(v) = sum v_i ρ(x_i)`.
    pub fn act(&self, v: &[Rational]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for (x, r) in v.iter().zip(&self.rho) {
            if !x.is_zero() {
                m = m.add(&r.scale(x));
            }
        }
        m
    }

    pub fn act_sparse(&self, v: &[(usize, Rational)]) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.dim, self.dim);
        for (i, x) in v {
            m = m.add(&self.rho[*i].scale(x));
        }
        m
    }

    /// Restriction to a subalgebra, in the subspace's canonical basis.
    pub fn restrict(&self, sub: &Subspace) -> LieModule {
        Self::new_unchecked(self.dim, sub.basis().iter().map(|b| self.act(b)).collect())
    }

    /// Quotient by an invariant subspace, on the complementary coordinates.
    pub fn quotient(&self, inv: &Subspace) -> Result<LieModule> {
        for r in &self.rho {
            for b in inv.basis() {
                if !inv.contains(&r.mul_vec(b)) {
                    return Err(Error::ModuleMismatch("subspace is not invariant".into()));
                }
            }
        }
        let comp = inv.complement_indices();
        let k = comp.len();
        let rho = self
            .rho
            .iter()
            .map(|r| {
                let mut m = RatMatrix::zeros(k, k);
                for (c, &j) in comp.iter().enumerate() {
                    let img = crate::liealg::project_mod(&r.column(j), inv, &comp);
                    for (rr, x) in img.into_iter().enumerate() {
                        m[(rr, c)] = x;
                    }
                }
                m
            })
            .collect();
        Ok(Self::new_unchecked(k, rho))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::default_labels;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    #[test]
    fn character_must_vanish_on_derived() {
        let h = LieAlgebra::new(default_labels("x", 3), vec![(0, 1, vec![(2, q(1))])]).unwrap();
        assert!(Character::new(&h, vec![q(1), q(2), q(0)]).is_ok());
        assert!(matches!(Character::new(&h, vec![q(0), q(0), q(1)]), Err(Error::NotACharacter)));
    }

    #[test]
    fn adjoint_is_a_module() {
        let h = LieAlgebra::new(default_labels("x", 3), vec![(0, 1, vec![(2, q(1))])]).unwrap();
        assert!(LieModule::adjoint(&h).validate(&h).is_ok());
        let bad = LieModule::new_unchecked(1, vec![RatMatrix::zeros(1, 1), RatMatrix::zeros(1, 1), RatMatrix::identity(1)]);
        assert!(bad.validate(&h).is_err());
        let quo = LieModule::adjoint(&h).quotient(&Subspace::coordinate(3, &[2])).unwrap();
        assert_eq!(quo.dim(), 2);
        assert!(quo.rho().iter().all(RatMatrix::is_zero));
    }
}
