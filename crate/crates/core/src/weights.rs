//! Lie triangularization and character multisets.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, Subspace};
use crate::linalg::{rational_eigenvalues, RatMatrix};
use crate::module::{Character, LieModule};
use crate::rational::Rational;

/// Multiset of characters.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightMultiset(BTreeMap<Character, usize>);

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, c: Character, mult: usize) {
        if mult > 0 {
            *self.0.entry(c).or_insert(0) += mult;
        }
    }

    pub fn multiplicity(&self, c: &Character) -> usize {
        self.0.get(c).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.0.values().sum()
    }

    pub fn support(&self) -> BTreeSet<Character> {
        self.0.keys().cloned().collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Character, usize)> {
        self.0.iter().map(|(c, m)| (c, *m))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<Character> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = Character>>(iter: I) -> Self {
        let mut w = WeightMultiset::new();
        for c in iter {
            w.insert(c, 1);
        }
        w
    }
}

#[derive(Serialize)]
struct WeightEntry<'a> {
    character: &'a Character,
    multiplicity: usize,
}

impl Serialize for WeightMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(|(c, m)| WeightEntry { character: c, multiplicity: *m }))
    }
}

/// A triangularizing basis (columns, in module coordinates) and the diagonal characters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flag {
    pub basis: Vec<Vec<Rational>>,
    pub characters: Vec<Character>,
}

/// Matrix of the induced action on `M / W`, using the complementary
/// coordinates of `W` as basis.
fn quotient_action(r: &RatMatrix, w: &Subspace, comp: &[usize]) -> RatMatrix {
    let k = comp.len();
    let mut m = RatMatrix::zeros(k, k);
    for (c, &j) in comp.iter().enumerate() {
        let img = crate::liealg::project_mod(&r.column(j), w, comp);
        for (row, x) in img.into_iter().enumerate() {
            m[(row, c)] = x;
        }
    }
    m
}

/// Common eigenvector of a solvable action: joint kernel of the derived
/// subalgebra, then successive rational eigenspaces of each generator.
fn common_eigenvector(mats: &[RatMatrix], derived: &[RatMatrix], dim: usize) -> Result<Vec<Rational>> {
    let mut u = Subspace::full(dim);
    for d in derived {
        u = u.intersection(&Subspace::span(dim, &d.kernel_basis()));
    }
    if u.is_zero() {
        return Err(Error::NonSplit("derived subalgebra has no joint kernel".into()));
    }
    for m in mats {
        // action of m restricted to u, in u's coordinates
        let cols: Vec<Vec<Rational>> = u
            .basis()
            .iter()
            .map(|b| u.coordinates(&m.mul_vec(b)).ok_or_else(|| Error::Internal("eigenspace not invariant".into())))
            .collect::<Result<_>>()?;
        let restricted = RatMatrix::from_columns(u.dim(), &cols);
        let spec = rational_eigenvalues(&restricted)?;
        let Some(t) = spec.eigenvalues.first() else {
            return Err(Error::NonSplit("no rational eigenvalue at a flag stage".into()));
        };
        let ker = restricted.shift(t).kernel_basis();
        let vs: Vec<Vec<Rational>> = ker.iter().map(|c| u.vector(c)).collect();
        u = Subspace::span(dim, &vs);
    }
    Ok(u.basis()[0].clone())
}

/// Flag of invariant subspaces for a solvable algebra acting on a module.
pub fn lie_flag(s: &LieAlgebra, m: &LieModule) -> Result<Flag> {
    if !s.is_solvable() {
        return Err(Error::NotSolvable);
    }
    let n = m.dim();
    let derived: Vec<Vec<Rational>> = s.derived_algebra().basis().to_vec();
    let mut w = Subspace::zero(n);
    let mut basis: Vec<Vec<Rational>> = Vec::new();
    let mut characters = Vec::new();
    while basis.len() < n {
        let comp = w.complement_indices();
        let mats: Vec<RatMatrix> = m.rho().iter().map(|r| quotient_action(r, &w, &comp)).collect();
        let dmats: Vec<RatMatrix> = derived.iter().map(|v| quotient_action(&m.act(v), &w, &comp)).collect();
        let u = common_eigenvector(&mats, &dmats, comp.len())?;
        let values: Vec<Rational> = mats
            .iter()
            .map(|q| {
                let image = q.mul_vec(&u);
                let k = u.iter().position(|x| !x.is_zero()).expect("nonzero eigenvector");
                &image[k] / &u[k]
            })
            .collect();
        let mut lifted = vec![Rational::zero(); n];
        for (c, &j) in comp.iter().enumerate() {
            lifted[j] = u[c].clone();
        }
        basis.push(lifted);
        characters.push(Character::from_values_unchecked(values));
        w = Subspace::span(n, &basis);
    }
    let flag = Flag { basis, characters };
    verify_triangular(m, &flag)?;
    Ok(flag)
}

fn verify_triangular(m: &LieModule, flag: &Flag) -> Result<()> {
    let n = m.dim();
    if n == 0 {
        return Ok(());
    }
    let p = RatMatrix::from_columns(n, &flag.basis);
    let inv = p.inverse().ok_or_else(|| Error::Internal("flag basis is singular".into()))?;
    for (i, r) in m.rho().iter().enumerate() {
        let t = inv.mul(r).mul(&p);
        if !t.is_upper_triangular() {
            return Err(Error::Internal("flag does not triangularize".into()));
        }
        for (k, c) in flag.characters.iter().enumerate() {
            if t[(k, k)] != c.values()[i] {
                return Err(Error::Internal("flag diagonal disagrees with characters".into()));
            }
        }
    }
    Ok(())
}

/// `χ(S, M)`.
pub fn chi(s: &LieAlgebra, m: &LieModule) -> Result<WeightMultiset> {
    Ok(lie_flag(s, m)?.characters.into_iter().collect())
}

/// Adjoint flag characters, in flag order.
pub fn adjoint_characters(s: &LieAlgebra) -> Result<Vec<Character>> {
    Ok(lie_flag(s, &LieModule::adjoint(s))?.characters)
}

/// Sums over all `p`-subsets of `weights`, with multiplicity.
pub fn subset_sums(weights: &[Character], p: usize, dim: usize) -> WeightMultiset {
    // layer[k] maps partial sums of k chosen weights to counts
    let mut layers: Vec<BTreeMap<Character, usize>> = vec![BTreeMap::new(); p + 1];
    layers[0].insert(Character::zero(dim), 1);
    for w in weights {
        for k in (1..=p).rev() {
            let prev: Vec<(Character, usize)> = layers[k - 1].iter().map(|(c, m)| (c.clone(), *m)).collect();
            for (c, m) in prev {
                *layers[k].entry(c.add(w)).or_insert(0) += m;
            }
        }
    }
    WeightMultiset(std::mem::take(&mut layers[p]))
}

/// `χ(S, Λ^p S)`.
pub fn chi_exterior(s: &LieAlgebra, p: usize) -> Result<WeightMultiset> {
    if p > s.dim() {
        return Err(Error::OutOfRange(format!("degree {p} exceeds dimension {}", s.dim())));
    }
    let ws = adjoint_characters(s)?;
    Ok(subset_sums(&ws, p, s.dim()))
}

/// `χ(S, S / S'')`.
pub fn weights_mod_second_derived(s: &LieAlgebra) -> Result<WeightMultiset> {
    let series = s.derived_series();
    let s2 = series.get(2).cloned().unwrap_or_else(|| series.last().unwrap().clone());
    let quo = LieModule::adjoint(s).quotient(&s2)?;
    chi(s, &quo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{default_labels, semidirect};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn lam(a: i64) -> Character {
        Character::dual_basis(4, 0, q(a))
    }

    fn sec41() -> LieAlgebra {
        let h = LieAlgebra::new(default_labels("x", 3), vec![(0, 1, vec![(2, q(1))])]).unwrap();
        semidirect(&[RatMatrix::diagonal(&[q(1), q(1), q(2)])], &h, None).unwrap()
    }

    #[test]
    fn adjoint_flag_of_sec41() {
        let s = sec41();
        let w = chi(&s, &LieModule::adjoint(&s)).unwrap();
        assert_eq!(w.multiplicity(&lam(0)), 1);
        assert_eq!(w.multiplicity(&lam(1)), 2);
        assert_eq!(w.multiplicity(&lam(2)), 1);
    }

    #[test]
    fn exterior_characters_of_sec41() {
        let s = sec41();
        let w2 = chi_exterior(&s, 2).unwrap();
        assert_eq!(w2.support(), [lam(1), lam(2), lam(3)].into_iter().collect());
        assert_eq!(w2.total(), 6);
        assert_eq!(w2.multiplicity(&lam(1)), 2);
        assert_eq!(w2.multiplicity(&lam(2)), 2);
        assert_eq!(w2.multiplicity(&lam(3)), 2);
        let w4 = chi_exterior(&s, 4).unwrap();
        assert_eq!(w4.support(), [lam(4)].into_iter().collect());
        assert_eq!(chi_exterior(&s, 0).unwrap().support(), [lam(0)].into_iter().collect());
    }

    #[test]
    fn second_derived_quotient() {
        let w = weights_mod_second_derived(&sec41()).unwrap();
        assert_eq!(w.total(), 3);
        assert_eq!(w.multiplicity(&lam(0)), 1);
        assert_eq!(w.multiplicity(&lam(1)), 2);
    }

    #[test]
    fn nilpotent_characters_vanish() {
        let h = LieAlgebra::new(default_labels("x", 3), vec![(0, 1, vec![(2, q(1))])]).unwrap();
        let w = chi_exterior(&h, 2).unwrap();
        assert_eq!(w.support().len(), 1);
        assert_eq!(w.multiplicity(&Character::zero(3)), 3);
    }

    #[test]
    fn nonsplit_is_reported() {
        let rot = RatMatrix::from_i64_rows(&[&[0, -1], &[1, 0]]);
        let s = semidirect(&[rot], &LieAlgebra::abelian(2), None).unwrap();
        assert!(matches!(chi(&s, &LieModule::adjoint(&s)), Err(Error::NonSplit(_))));
    }
}
