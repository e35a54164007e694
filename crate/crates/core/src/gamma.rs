//! The sets `Γ∘^p`, total cohomology, and the codimension-one correspondence.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{character_cohomology_dims, cohomology, ideal_presentation};
use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, Subspace};
use crate::linalg::{rational_eigenvalues, RatMatrix};
use crate::module::{Character, LieModule};
use crate::rational::Rational;
use crate::weights::{adjoint_characters, subset_sums, weights_mod_second_derived};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaDegree {
    pub degree: usize,
    /// Support of `χ(S, Λ^p S)`, sorted.
    pub candidates: Vec<Character>,
    /// Characters with nonzero `H^p(S, λ)` and that dimension.
    pub survivors: Vec<(Character, usize)>,
    /// `dim TH^p`.
    pub total: usize,
}

/// A character `λ` and degree `p` with `H^p(S, λ) ≠ 0` although `λ` is not a
/// degree-`p` candidate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InclusionViolation {
    pub degree: usize,
    pub character: Character,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaReport {
    pub algebra_dim: usize,
    pub degrees: Vec<GammaDegree>,
    pub violations: Vec<InclusionViolation>,
}

impl GammaReport {
    pub fn total_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.total).collect()
    }

    pub fn gamma(&self, p: usize) -> BTreeSet<Character> {
        self.degrees[p].survivors.iter().map(|(c, _)| c.clone()).collect()
    }

    pub fn gamma_union(&self) -> BTreeSet<Character> {
        (0..self.degrees.len()).flat_map(|p| self.gamma(p)).collect()
    }

    pub fn dim_at(&self, p: usize, c: &Character) -> usize {
        self.degrees[p].survivors.iter().find(|(x, _)| x == c).map_or(0, |(_, d)| *d)
    }

    /// Table with one row per degree and one column per character appearing anywhere.
    pub fn table(&self) -> (Vec<Character>, Vec<Vec<usize>>) {
        let cols: Vec<Character> = self
            .degrees
            .iter()
            .flat_map(|d| d.candidates.iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let rows = self
            .degrees
            .iter()
            .map(|d| cols.iter().map(|c| self.dim_at(d.degree, c)).collect())
            .collect();
        (cols, rows)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,character,dim\n");
        for d in &self.degrees {
            for (c, dim) in &d.survivors {
                let vals: Vec<String> = c.values().iter().map(ToString::to_string).collect();
                out.push_str(&format!("{},\"{}\",{}\n", d.degree, vals.join(" "), dim));
            }
        }
        out
    }

    /// Errors if any computed class lies outside the candidate set.
    pub fn check_inclusion(&self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::TheoremCheck(format!(
                "H^{}(s, {}) has dimension {} outside χ(s, Λ^p s)",
                v.degree, v.character, v.dim
            ))),
        }
    }
}

/// Candidate supports `χ(S, Λ^p S)` for every `p`.
pub fn all_candidates(s: &LieAlgebra) -> Result<Vec<Vec<Character>>> {
    let ws = adjoint_characters(s)?;
    Ok((0..=s.dim())
        .map(|p| subset_sums(&ws, p, s.dim()).support().into_iter().collect())
        .collect())
}

pub fn gamma_candidates(s: &LieAlgebra, p: usize) -> Result<Vec<Character>> {
    if p > s.dim() {
        return Err(Error::OutOfRange(format!("degree {p} exceeds dimension {}", s.dim())));
    }
    let ws = adjoint_characters(s)?;
    Ok(subset_sums(&ws, p, s.dim()).support().into_iter().collect())
}

/// `Γ∘^p(S)` with the dimension of `H^p(S, λ)` for each member.
pub fn gamma_circ(s: &LieAlgebra, p: usize) -> Result<BTreeMap<Character, usize>> {
    let cands = gamma_candidates(s, p)?;
    let dims: Vec<(Character, usize)> = cands
        .into_par_iter()
        .map(|c| {
            let d = character_cohomology_dims(s, &c)?[p];
            Ok((c, d))
        })
        .collect::<Result<_>>()?;
    Ok(dims.into_iter().filter(|(_, d)| *d > 0).collect())
}

/// Full report: every candidate character of every degree is computed in all
/// degrees, so classes outside the candidate sets are detected.
pub fn total_cohomology(s: &LieAlgebra) -> Result<GammaReport> {
    let cands = all_candidates(s)?;
    let union: Vec<Character> = cands.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let dims: Vec<Vec<usize>> = union
        .par_iter()
        .map(|c| character_cohomology_dims(s, c))
        .collect::<Result<_>>()?;
    let mut degrees = Vec::new();
    let mut violations = Vec::new();
    for (p, cand) in cands.iter().enumerate() {
        let cand_set: BTreeSet<&Character> = cand.iter().collect();
        let mut survivors = Vec::new();
        for (c, d) in union.iter().zip(&dims) {
            if d[p] == 0 {
                continue;
            }
            if cand_set.contains(c) {
                survivors.push((c.clone(), d[p]));
            } else {
                violations.push(InclusionViolation { degree: p, character: c.clone(), dim: d[p] });
            }
        }
        let total = survivors.iter().map(|(_, d)| d).sum();
        degrees.push(GammaDegree { degree: p, candidates: cand.clone(), survivors, total });
    }
    Ok(GammaReport { algebra_dim: s.dim(), degrees, violations })
}

/// Pairs `(z, μ)` with `μ ∈ Γ∘^p(h)` and `z` an eigenvalue of `-θ₀(D)` on `H^p(h, μ)`,
/// for every `p`; characters `μ` are in the ideal's canonical basis.
pub fn r_sets(s: &LieAlgebra, ideal: &Subspace, d: &[Rational]) -> Result<Vec<BTreeSet<(Rational, Character)>>> {
    let codim = s.dim() - ideal.dim();
    if codim != 1 {
        return Err(Error::WrongCodimension(codim));
    }
    let pres = ideal_presentation(s, ideal, d, &LieModule::trivial(s))?;
    let h = &pres.h;
    let report = total_cohomology(h)?;
    let union = report.gamma_union();
    let per_char: Vec<(Character, Vec<Vec<Rational>>)> = union
        .into_par_iter()
        .map(|mu| {
            let coh = cohomology(h, &LieModule::from_character(&mu))?;
            let thetas = coh.induced_theta(&pres.d, &RatMatrix::zeros(1, 1))?;
            let eig = thetas
                .iter()
                .map(|t| {
                    let spec = rational_eigenvalues(&t.scale(&Rational::from(-1)))?;
                    if !spec.is_split {
                        return Err(Error::NonSplit("-θ₀(D) has irrational eigenvalues".into()));
                    }
                    Ok(spec.distinct())
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((mu, eig))
        })
        .collect::<Result<_>>()?;
    let mut out = vec![BTreeSet::new(); h.dim() + 1];
    for (mu, eig) in per_char {
        for (p, zs) in eig.into_iter().enumerate() {
            if report.dim_at(p, &mu) == 0 {
                continue;
            }
            for z in zs {
                out[p].insert((z, mu.clone()));
            }
        }
    }
    Ok(out)
}

pub fn r_p_sets(s: &LieAlgebra, ideal: &Subspace, d: &[Rational], p: usize) -> Result<BTreeSet<(Rational, Character)>> {
    let all = r_sets(s, ideal, d)?;
    Ok(all.get(p).cloned().unwrap_or_default())
}

/// `λ ↦ (λ(D), λ|_h)` in the ideal's canonical basis.
pub fn restrict_character(c: &Character, ideal: &Subspace, d: &[Rational]) -> (Rational, Character) {
    let vals = ideal.basis().iter().map(|b| c.eval(b)).collect();
    (c.eval(d), Character::from_values_unchecked(vals))
}

/// Checks that `Γ∘^p(S)` corresponds bijectively to `R^p ∪ R^{p-1}`.
pub fn verify_r_correspondence(s: &LieAlgebra, ideal: &Subspace, d: &[Rational], report: &GammaReport) -> Result<()> {
    let r = r_sets(s, ideal, d)?;
    for p in 0..=s.dim() {
        let image: BTreeSet<(Rational, Character)> =
            report.gamma(p).iter().map(|c| restrict_character(c, ideal, d)).collect();
        let mut expected: BTreeSet<(Rational, Character)> = BTreeSet::new();
        if p < r.len() {
            expected.extend(r[p].iter().cloned());
        }
        if p >= 1 && p - 1 < r.len() {
            expected.extend(r[p - 1].iter().cloned());
        }
        if image != expected || image.len() != report.gamma(p).len() {
            return Err(Error::TheoremCheck(format!("R-set correspondence fails in degree {p}")));
        }
    }
    Ok(())
}

/// Checks `Γ∘¹(S) ⊆ χ(S, S/S'')`.
pub fn verify_gamma1_bound(s: &LieAlgebra, report: &GammaReport) -> Result<()> {
    if report.degrees.len() < 2 {
        return Ok(());
    }
    let bound = weights_mod_second_derived(s)?.support();
    for c in report.gamma(1) {
        if !bound.contains(&c) {
            return Err(Error::TheoremCheck(format!("{c} ∈ Γ∘¹ lies outside χ(s, s/s'')")));
        }
    }
    Ok(())
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

    fn set(xs: &[i64]) -> BTreeSet<Character> {
        xs.iter().map(|&a| lam(a)).collect()
    }

    #[test]
    fn sec41_gamma_sets() {
        let s = sec41();
        assert_eq!(gamma_candidates(&s, 3).unwrap(), vec![lam(2), lam(3), lam(4)]);
        let r = total_cohomology(&s).unwrap();
        assert!(r.violations.is_empty());
        assert_eq!(r.gamma(0), set(&[0]));
        assert_eq!(r.gamma(1), set(&[0, 1]));
        assert_eq!(r.gamma(2), set(&[1, 3]));
        assert_eq!(r.gamma(3), set(&[3, 4]));
        assert_eq!(r.gamma(4), set(&[4]));
        assert_eq!(r.total_dims(), vec![1, 3, 4, 3, 1]);
        let g2 = gamma_circ(&s, 2).unwrap();
        assert_eq!(g2.get(&lam(1)), Some(&2));
        assert_eq!(g2.get(&lam(3)), Some(&2));
        verify_gamma1_bound(&s, &r).unwrap();
    }

    #[test]
    fn abelian_total_is_binomial() {
        let a = LieAlgebra::abelian(3);
        assert_eq!(total_cohomology(&a).unwrap().total_dims(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn r_correspondence_on_sec41() {
        let s = sec41();
        let ideal = Subspace::coordinate(4, &[1, 2, 3]);
        let u = crate::liealg::unit(4, 0);
        let report = total_cohomology(&s).unwrap();
        verify_r_correspondence(&s, &ideal, &u, &report).unwrap();
        let r1 = r_p_sets(&s, &ideal, &u, 1).unwrap();
        assert_eq!(r1, [(q(1), Character::zero(3))].into_iter().collect());
    }

    #[test]
    fn r_sets_for_diagonal_on_abelian() {
        let d = RatMatrix::diagonal(&[q(1), q(2)]);
        let s = semidirect(&[d], &LieAlgebra::abelian(2), None).unwrap();
        let ideal = Subspace::coordinate(3, &[1, 2]);
        let r = r_sets(&s, &ideal, &crate::liealg::unit(3, 0)).unwrap();
        let z = Character::zero(2);
        assert_eq!(r[1], [(q(1), z.clone()), (q(2), z.clone())].into_iter().collect());
        assert_eq!(r[2], [(q(3), z)].into_iter().collect());
    }
}
