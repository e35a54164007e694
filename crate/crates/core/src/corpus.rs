//! Invariance checks over a set of algebras.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{random_member, Built};
use crate::cohomology::{character_cohomology_dims, cohomology_dims, hs_codim1_dims, prop21_semidirect};
use crate::deformations::{
    cartan_complement, cocycle_residual, deformation_plane, is_elementary, is_infinitesimal_deformation, nilshadow,
    split_elementary, verify_th_invariance_with, DeformationDirection, ExtensionData,
};
use crate::error::{Error, Result};
use crate::filiform::{exterior_character, gamma_s_n, MAX_SN};
use crate::gamma::{all_candidates, total_cohomology, verify_gamma1_bound};
use crate::liealg::{default_labels, unit, LieAlgebra, Subspace};
use crate::linalg::RatMatrix;
use crate::module::{Character, LieModule};
use crate::rational::Rational;
use crate::rootsys::{verify_kostant, RootSystem, RootType};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub check: String,
    pub status: Status,
    pub detail: String,
}

impl CheckOutcome {
    fn from_result(check: &str, r: Result<String>) -> Self {
        match r {
            Ok(detail) => CheckOutcome { check: check.into(), status: Status::Pass, detail },
            Err(e) => CheckOutcome { check: check.into(), status: Status::Fail, detail: e.to_string() },
        }
    }

    fn skip(check: &str, why: &str) -> Self {
        CheckOutcome { check: check.into(), status: Status::Skip, detail: why.into() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberReport {
    pub name: String,
    pub dim: usize,
    pub total: Vec<usize>,
    pub checks: Vec<CheckOutcome>,
}

impl MemberReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn check(&self, name: &str) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| c.check == name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CorpusSummary {
    pub members: Vec<MemberReport>,
    pub global: Vec<CheckOutcome>,
    pub warnings: Vec<String>,
    pub passed: bool,
}

fn candidates(s: &LieAlgebra) -> Result<Vec<Character>> {
    let mut all: Vec<Character> = all_candidates(s)?.into_iter().flatten().collect();
    all.sort();
    all.dedup();
    Ok(all)
}

/// A codimension-one ideal containing `[S, S]` and a vector outside it.
pub fn codim1_presentation(s: &LieAlgebra) -> Result<(Subspace, Vec<Rational>)> {
    let derived = s.derived_algebra();
    let comp = derived.complement_indices();
    let Some((&last, rest)) = comp.split_last() else {
        return Err(Error::WrongCodimension(0));
    };
    let mut gens = derived.basis().to_vec();
    gens.extend(rest.iter().map(|&i| unit(s.dim(), i)));
    Ok((Subspace::span(s.dim(), &gens), unit(s.dim(), last)))
}

fn check_hs(s: &LieAlgebra, cands: &[Character]) -> Result<String> {
    let (ideal, d) = codim1_presentation(s)?;
    for c in cands {
        let direct = character_cohomology_dims(s, c)?;
        let hs = hs_codim1_dims(s, &ideal, &d, &LieModule::from_character(c))?;
        if hs != direct {
            return Err(Error::TheoremCheck(format!("character {c}: codim-1 route {hs:?}, direct {direct:?}")));
        }
    }
    Ok(format!("{} characters", cands.len()))
}

fn check_prop21(s: &LieAlgebra, r: usize, cands: &[Character]) -> Result<String> {
    for c in cands {
        let direct = character_cohomology_dims(s, c)?;
        let via = prop21_semidirect(s, r, &LieModule::from_character(c))?;
        if via != direct {
            return Err(Error::TheoremCheck(format!("character {c}: invariant route {via:?}, direct {direct:?}")));
        }
    }
    Ok(format!("{} characters, r = {r}", cands.len()))
}

fn check_deformations(s: &LieAlgebra) -> Result<(String, Option<String>)> {
    let nil = s.nilradical()?;
    let a = cartan_complement(s, &nil)?;
    let plane = deformation_plane(s, &nil, &a)?;
    let plane_detail = format!("dim t = {}, r = {}, {} samples", plane.toral.len(), plane.r, plane.samples.len());
    if plane.toral.is_empty() {
        return Ok((plane_detail, None));
    }
    let e = ExtensionData::from_split(s, &nil, &a)?;
    let beta: Vec<RatMatrix> = (0..a.len()).map(|i| plane.toral[i % plane.toral.len()].clone()).collect();
    let d = DeformationDirection::with_zero_tau(&e, beta)?;
    if !is_elementary(&e, &d)? {
        return Ok((plane_detail, None));
    }
    let cert = split_elementary(&e, &d, &[0])?;
    if !cert.all_pass() {
        return Err(Error::TheoremCheck(format!("split certificate failed: {:?}", cert.corners)));
    }
    Ok((plane_detail, Some(format!("stages ok, {} corners ok", cert.corners.len()))))
}

/// Runs every applicable check on one member.
pub fn run_member(b: &Built) -> MemberReport {
    let s = &b.algebra;
    let mut checks = Vec::new();
    let report = match total_cohomology(s) {
        Ok(r) => r,
        Err(e) => {
            checks.push(CheckOutcome::from_result("gamma", Err(e)));
            return MemberReport { name: b.name.clone(), dim: s.dim(), total: Vec::new(), checks };
        }
    };
    let total = report.total_dims();
    checks.push(CheckOutcome::from_result("inclusion", report.check_inclusion().map(|_| "Γ∘ᵖ ⊆ χ(Λᵖ)".into())));
    checks.push(CheckOutcome::from_result("gamma1_bound", verify_gamma1_bound(s, &report).map(|_| "Γ∘¹ ⊆ χ(S/S'')".into())));
    checks.push(CheckOutcome::from_result(
        "th_nilshadow",
        nilshadow(s).and_then(|ns| {
            let betti = cohomology_dims(&ns.shadow, &LieModule::trivial(&ns.shadow))?;
            if betti == total {
                Ok(format!("TH = {total:?}"))
            } else {
                Err(Error::TheoremCheck(format!("TH = {total:?}, nilshadow Betti {betti:?}")))
            }
        }),
    ));
    checks.push(CheckOutcome::from_result(
        "th_jordan",
        verify_th_invariance_with(s, &report).map(|t| format!("{} presentations", t.presentations.len())),
    ));
    let cands = candidates(s);
    checks.push(CheckOutcome::from_result("hs_codim1", cands.clone().and_then(|c| check_hs(s, &c))));
    checks.push(match b.toral_rank {
        Some(r) => CheckOutcome::from_result("prop21", cands.and_then(|c| check_prop21(s, r, &c))),
        None => CheckOutcome::skip("prop21", "action is not presented as a semisimple abelian family"),
    });
    if s.is_nilpotent() {
        checks.push(CheckOutcome::skip("deformation_plane", "nilpotent"));
        checks.push(CheckOutcome::skip("split_elementary", "nilpotent"));
    } else {
        match check_deformations(s) {
            Ok((plane, split)) => {
                checks.push(CheckOutcome { check: "deformation_plane".into(), status: Status::Pass, detail: plane });
                checks.push(match split {
                    Some(d) => CheckOutcome { check: "split_elementary".into(), status: Status::Pass, detail: d },
                    None => CheckOutcome::skip("split_elementary", "no elementary toral direction"),
                });
            }
            Err(e) => {
                checks.push(CheckOutcome::from_result("deformation_plane", Err(e)));
                checks.push(CheckOutcome::skip("split_elementary", "plane failed"));
            }
        }
    }
    MemberReport { name: b.name.clone(), dim: s.dim(), total, checks }
}

/// Tallies of the symmetric cocycle test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymmetryTrials {
    pub trials: usize,
    pub cocycles: usize,
    pub deformations: usize,
    pub failures: Vec<usize>,
}

fn random_alternating(n: usize, rng: &mut ChaCha8Rng) -> LieAlgebra {
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut v = Vec::new();
            for k in 0..n {
                if rng.random_bool(0.3) {
                    v.push((k, Rational::from(rng.random_range(-2..=2))));
                }
            }
            entries.push((i, j, v));
        }
    }
    LieAlgebra::new_unchecked(default_labels("x", n), entries).expect("alternating")
}

fn coboundary_of(mu: &LieAlgebra, phi: &RatMatrix) -> LieAlgebra {
    let n = mu.dim();
    let mut entries = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let (x, y) = (unit(n, i), unit(n, j));
            let a = mu.bracket(&phi.mul_vec(&x), &y);
            let b = mu.bracket(&x, &phi.mul_vec(&y));
            let c = phi.mul_vec(&mu.bracket(&x, &y));
            let v: Vec<(usize, Rational)> = (0..n)
                .map(|k| (k, &(&a[k] + &b[k]) - &c[k]))
                .filter(|(_, r)| !r.is_zero())
                .collect();
            entries.push((i, j, v));
        }
    }
    LieAlgebra::new_unchecked(mu.labels().to_vec(), entries).expect("alternating")
}

/// `σ` is a 2-cocycle of `μ` exactly when `μ` is one of `σ`, on seeded pairs
/// in dimension at most 5. Half the `σ` are coboundaries of `μ`.
pub fn symmetry_trials(count: usize, seed: u64) -> Result<SymmetryTrials> {
    let mus: Vec<LieAlgebra> = (0..crate::catalog::RANDOM_MEMBERS as u64)
        .map(random_member)
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .map(|b| b.algebra)
        .chain([crate::catalog::sec4_1(), crate::catalog::heisenberg3(), crate::catalog::two_dim_nonabelian()])
        .filter(|a| a.dim() <= 5)
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = SymmetryTrials { trials: count, cocycles: 0, deformations: 0, failures: Vec::new() };
    for t in 0..count {
        let mu = &mus[rng.random_range(0..mus.len())];
        let n = mu.dim();
        let sigma = if t % 2 == 0 {
            let rows: Vec<Vec<Rational>> =
                (0..n).map(|_| (0..n).map(|_| Rational::from(rng.random_range(-1..=1))).collect()).collect();
            coboundary_of(mu, &RatMatrix::from_rows(rows))
        } else {
            random_alternating(n, &mut rng)
        };
        let forward = cocycle_residual(mu, &sigma).is_none();
        let backward = cocycle_residual(&sigma, mu).is_none();
        if forward != backward {
            out.failures.push(t);
            continue;
        }
        if forward {
            out.cocycles += 1;
        }
        if is_infinitesimal_deformation(mu, &sigma)?.is_deformation {
            out.deformations += 1;
        }
    }
    Ok(out)
}

/// Kostant, filiform and symmetry checks that do not depend on the member list.
pub fn global_checks() -> Vec<CheckOutcome> {
    let mut out: Vec<CheckOutcome> = [RootType::A1xA1, RootType::A2, RootType::B2, RootType::G2]
        .par_iter()
        .map(|&t| {
            CheckOutcome::from_result(
                &format!("kostant_{t}"),
                verify_kostant(&RootSystem::new(t)).map(|r| format!("|W| = {}, Betti {:?}", r.weyl_order, r.nilradical_betti)),
            )
        })
        .collect();
    out.extend((1..=MAX_SN).into_par_iter().map(|n| {
        CheckOutcome::from_result(
            &format!("filiform_routes_{n}"),
            gamma_s_n(n).map(|g| format!("|Γ∘(s_{n})| = {}", g.gamma_union().len())),
        )
    }).collect::<Vec<_>>());
    out.push(CheckOutcome::from_result(
        "exterior_character",
        (|| {
            for n in 1..=8 {
                for p in 0..=n + 1 {
                    let v = exterior_character(n, p)?.value_at_one();
                    if v != crate::cohomology::binomial(n + 1, p) as i64 {
                        return Err(Error::TheoremCheck(format!("character of Λ^{p} V_{n} has wrong dimension {v}")));
                    }
                }
            }
            Ok("n ≤ 8".into())
        })(),
    ));
    out.push(CheckOutcome::from_result(
        "cocycle_symmetry",
        symmetry_trials(100, 7).and_then(|t| {
            if t.failures.is_empty() {
                Ok(format!("{} trials, {} cocycles", t.trials, t.cocycles))
            } else {
                Err(Error::TheoremCheck(format!("asymmetric trials {:?}", t.failures)))
            }
        }),
    ));
    out
}

/// Runs the member checks with at most `width` threads (0 = default), sorted by name.
pub fn run_corpus(members: &[Built], width: usize, with_global: bool) -> Result<CorpusSummary> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(width)
        .build()
        .map_err(|e| Error::Internal(format!("thread pool: {e}")))?;
    let (mut reports, global) = pool.install(|| {
        let reports: Vec<MemberReport> = members.par_iter().map(run_member).collect();
        let global = if with_global { global_checks() } else { Vec::new() };
        (reports, global)
    });
    reports.sort_by(|a, b| a.name.cmp(&b.name));
    let mut warnings = Vec::new();
    if members.is_empty() {
        warnings.push("no corpus members selected; vacuous pass".to_string());
    }
    let passed = reports.iter().all(MemberReport::passed) && global.iter().all(|c| c.status != Status::Fail);
    Ok(CorpusSummary { members: reports, global, warnings, passed })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;

    #[test]
    fn sec41_member_passes() {
        let r = run_member(&build("sec4_1").unwrap());
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.total, vec![1, 3, 4, 3, 1]);
        assert_eq!(r.check("prop21").unwrap().status, Status::Pass);
        assert_eq!(r.check("split_elementary").unwrap().status, Status::Pass);
    }

    #[test]
    fn nilpotent_member_skips_deformations() {
        let r = run_member(&build("heisenberg3").unwrap());
        assert!(r.passed());
        assert_eq!(r.check("deformation_plane").unwrap().status, Status::Skip);
    }

    #[test]
    fn empty_corpus_is_vacuous() {
        let s = run_corpus(&[], 1, false).unwrap();
        assert!(s.passed);
        assert_eq!(s.warnings.len(), 1);
    }

    #[test]
    fn symmetry_has_both_outcomes() {
        let t = symmetry_trials(20, 1).unwrap();
        assert!(t.failures.is_empty());
        assert!(t.cocycles >= 10);
        assert!(t.cocycles < 20);
    }
}
