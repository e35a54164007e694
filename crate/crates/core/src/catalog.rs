//! Named algebras and deterministic families.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filiform::{filiform, s_n_algebra, MAX_DIAGRAM_N, MAX_SN};
use crate::liealg::{default_labels, direct_sum, semidirect, unit, LieAlgebra};
use crate::linalg::RatMatrix;
use crate::rational::Rational;
use crate::rootsys::{borel_algebra, nilradical_algebra, RootSystem, RootType};

/// Number of seeded random toral extensions.
pub const RANDOM_MEMBERS: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogEntry {
    pub name: String,
    pub params: String,
    pub note: String,
}

/// A catalog algebra together with the presentation it was built from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Built {
    pub name: String,
    pub algebra: LieAlgebra,
    /// The first `r` basis vectors span an abelian subalgebra acting
    /// semisimply on the ideal spanned by the rest.
    pub toral_rank: Option<usize>,
}

fn q(n: i64) -> Rational {
    Rational::from(n)
}

pub fn heisenberg3() -> LieAlgebra {
    LieAlgebra::new(vec!["x".into(), "y".into(), "z".into()], vec![(0, 1, vec![(2, q(1))])]).expect("valid")
}

pub fn two_dim_nonabelian() -> LieAlgebra {
    LieAlgebra::new(vec!["x".into(), "y".into()], vec![(0, 1, vec![(1, q(1))])]).expect("valid")
}

/// `D ⋉ h₃` with `D = diag(1, 1, 2)`; basis `(X, x, y, z)`.
pub fn sec4_1() -> LieAlgebra {
    let d = RatMatrix::diagonal(&[q(1), q(1), q(2)]);
    semidirect(&[d], &heisenberg3(), Some(vec!["X".into()])).expect("valid")
}

/// `D ⋉ ℚⁿ` for an arbitrary square matrix `D`.
pub fn sec4_2(d: &RatMatrix) -> Result<LieAlgebra> {
    if !d.is_square() {
        return Err(Error::NonSquare { rows: d.rows(), cols: d.cols() });
    }
    semidirect(std::slice::from_ref(d), &LieAlgebra::abelian(d.rows()), Some(vec!["D".into()]))
}

/// `a ⋉ ℚⁿ` with `a` spanned by the diagonal operators given row by row.
pub fn sec4_3(weights: &[Vec<i64>]) -> Result<LieAlgebra> {
    let n = weights.first().map_or(0, Vec::len);
    if weights.iter().any(|w| w.len() != n) {
        return Err(Error::DimensionMismatch("weight rows have different lengths".into()));
    }
    let family: Vec<RatMatrix> =
        weights.iter().map(|w| RatMatrix::diagonal(&w.iter().map(|&x| q(x)).collect::<Vec<_>>())).collect();
    semidirect(&family, &LieAlgebra::abelian(n), Some(default_labels("A", weights.len())))
}

/// Nilpotent algebras used as seeds for the random family.
fn nilpotent_seed(i: usize) -> LieAlgebra {
    let br = |n: usize, e: Vec<(usize, usize, usize)>| {
        LieAlgebra::new(default_labels("x", n), e.into_iter().map(|(i, j, k)| (i, j, vec![(k, q(1))]))).expect("valid")
    };
    match i % RANDOM_MEMBERS {
        0 => heisenberg3(),
        1 => filiform(2).expect("valid"),
        2 => filiform(3).expect("valid"),
        3 => direct_sum(&heisenberg3(), &LieAlgebra::abelian(1)),
        4 => LieAlgebra::abelian(3),
        5 => nilradical_algebra(&RootSystem::new(RootType::B2)).expect("valid"),
        6 => br(5, vec![(0, 1, 4), (2, 3, 4)]),
        7 => nilradical_algebra(&RootSystem::new(RootType::G2)).expect("valid"),
        8 => br(5, vec![(0, 1, 2), (0, 2, 3), (1, 2, 4)]),
        _ => direct_sum(&nilradical_algebra(&RootSystem::new(RootType::A2)).expect("valid"), &LieAlgebra::abelian(2)),
    }
}

/// Diagonal derivations of an algebra whose brackets map basis pairs to
/// multiples of basis vectors.
pub fn diagonal_derivations(h: &LieAlgebra) -> Vec<Vec<Rational>> {
    let n = h.dim();
    let rows: Vec<Vec<Rational>> = h
        .structure_constants()
        .into_iter()
        .map(|(i, j, k, _)| {
            let mut row = vec![Rational::zero(); n];
            row[k] += &q(1);
            row[i] -= &q(1);
            row[j] -= &q(1);
            row
        })
        .collect();
    if rows.is_empty() {
        return (0..n).map(|i| unit(n, i)).collect();
    }
    RatMatrix::from_rows(rows).kernel_basis()
}

/// Seeded toral extension `a ⋉ h` of a nilpotent seed. When the toral part
/// has a zero weight vector `x` with `ad x ≠ 0`, `ad x` is added to the first
/// generator so the action is not semisimple.
pub fn random_member(seed: u64) -> Result<Built> {
    let h = nilpotent_seed(seed as usize);
    let n = h.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ seed);
    let diag = diagonal_derivations(&h);
    let want = if diag.len() >= 2 && n <= 5 { rng.random_range(1..=2) } else { 1 };
    let mut chosen: Vec<Vec<Rational>> = Vec::new();
    let mut attempts = 0;
    while chosen.len() < want && attempts < 200 {
        attempts += 1;
        let mut v = vec![Rational::zero(); n];
        for b in &diag {
            let c = q(rng.random_range(-2..=2));
            for (x, y) in v.iter_mut().zip(b) {
                *x += &(&c * y);
            }
        }
        let mut rows = chosen.clone();
        rows.push(v.clone());
        if v.iter().any(|x| !x.is_zero()) && RatMatrix::from_rows(rows).rank() == chosen.len() + 1 {
            chosen.push(v);
        }
    }
    if chosen.is_empty() {
        return Err(Error::Internal(format!("seed {seed} has no diagonal derivation")));
    }
    let mut family: Vec<RatMatrix> = chosen.iter().map(|v| RatMatrix::diagonal(v)).collect();
    let zero_weight =
        (0..n).find(|&x| chosen.iter().all(|v| v[x].is_zero()) && !h.ad_basis(x).is_zero() && rng.random_bool(0.7));
    let semisimple = zero_weight.is_none();
    if let Some(x) = zero_weight {
        family[0] = family[0].add(&h.ad_basis(x));
    }
    let labels = default_labels("T", family.len());
    let r = family.len();
    let algebra = semidirect(&family, &h, Some(labels))?;
    Ok(Built { name: format!("random{seed}"), algebra, toral_rank: semisimple.then_some(r) })
}

fn parse_int_list(s: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|x| x.trim().parse::<i64>().map_err(|e| Error::Parse { line: 0, reason: format!("bad integer {x:?}: {e}") }))
        .collect()
}

fn parse_matrix(s: &str) -> Result<Vec<Vec<i64>>> {
    s.split(';').map(parse_int_list).collect()
}

fn parse_usize(s: &str) -> Result<usize> {
    s.trim().parse().map_err(|e| Error::Parse { line: 0, reason: format!("bad size {s:?}: {e}") })
}

fn entry(name: &str, params: &str, note: &str) -> CatalogEntry {
    CatalogEntry { name: name.into(), params: params.into(), note: note.into() }
}

/// Fixed entries; parametric forms such as `abelian(n)`, `filiform(n)`,
/// `s_n(n)`, `borel(G2)`, `sec4_2(1,1;0,1)` and `sec4_3(1,0;0,1)` are also accepted by [`build`].
pub fn entries() -> Vec<CatalogEntry> {
    let mut out = vec![
        entry("sec4_1", "D = diag(1,1,2) on h3", "first elementary example"),
        entry("abelian3", "n = 3", "abelian"),
        entry("heisenberg3", "", "nilpotent"),
        entry("two_dim_nonabelian", "[x,y] = y", "smallest nonabelian"),
        entry("sec4_2", "D = J2(1) + (-1)", "operator on an abelian ideal"),
        entry("sec4_2_diag", "D = diag(1,2,-1)", "operator on an abelian ideal"),
        entry("sec4_3_r1n3", "a = diag(1,-1,2)", "diagonal abelian action"),
        entry("sec4_3_r2n4", "a = diag(1,0,1,-1), diag(0,1,1,2)", "diagonal abelian action"),
        entry("sec4_3_r2n5", "a = diag(1,0,1,2,-1), diag(0,1,1,-1,1)", "diagonal abelian action"),
    ];
    for t in [RootType::A1xA1, RootType::A2, RootType::B2, RootType::G2] {
        out.push(entry(&format!("borel_{t}"), t.name(), "Borel subalgebra"));
    }
    for n in 1..=MAX_DIAGRAM_N {
        out.push(entry(&format!("filiform{n}"), &format!("n = {n}"), "standard filiform"));
    }
    for n in 1..=MAX_SN {
        out.push(entry(&format!("s{n}"), &format!("n = {n}"), "toral extension of the filiform algebra"));
    }
    for i in 0..RANDOM_MEMBERS {
        out.push(entry(&format!("random{i}"), &format!("seed = {i}"), "seeded toral extension"));
    }
    out
}

fn built(name: &str, algebra: LieAlgebra, toral_rank: Option<usize>) -> Built {
    Built { name: name.into(), algebra, toral_rank }
}

/// Looks up a catalog name, fixed or parametric.
pub fn build(name: &str) -> Result<Built> {
    if let Some((head, rest)) = name.split_once('(') {
        let args = rest.strip_suffix(')').ok_or_else(|| Error::Parse { line: 0, reason: format!("unclosed parameter list in {name:?}") })?;
        return match head {
            "abelian" => Ok(built(name, LieAlgebra::abelian(parse_usize(args)?), None)),
            "filiform" => Ok(built(name, filiform(parse_usize(args)?)?, None)),
            "s_n" => {
                let n = parse_usize(args)?;
                Ok(built(name, s_n_algebra(n)?, Some(2)))
            }
            "borel" => {
                let r = RootSystem::new(args.parse()?);
                Ok(built(name, borel_algebra(&r)?, Some(r.rank())))
            }
            "sec4_2" => {
                let rows = parse_matrix(args)?;
                let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
                let d = RatMatrix::from_i64_rows(&refs);
                let ss = crate::linalg::is_semisimple(&d)?;
                Ok(built(name, sec4_2(&d)?, ss.then_some(1)))
            }
            "sec4_3" => {
                let w = parse_matrix(args)?;
                let r = w.len();
                Ok(built(name, sec4_3(&w)?, Some(r)))
            }
            "random" => random_member(parse_usize(args)? as u64),
            _ => Err(Error::UnknownCatalogEntry(name.into())),
        };
    }
    let b = match name {
        "sec4_1" => built(name, sec4_1(), Some(1)),
        "heisenberg3" => built(name, heisenberg3(), None),
        "two_dim_nonabelian" => built(name, two_dim_nonabelian(), Some(1)),
        "sec4_2" => {
            let d = RatMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, -1]]);
            built(name, sec4_2(&d)?, None)
        }
        "sec4_2_diag" => built(name, sec4_2(&RatMatrix::diagonal(&[q(1), q(2), q(-1)]))?, Some(1)),
        "sec4_3_r1n3" => built(name, sec4_3(&[vec![1, -1, 2]])?, Some(1)),
        "sec4_3_r2n4" => built(name, sec4_3(&[vec![1, 0, 1, -1], vec![0, 1, 1, 2]])?, Some(2)),
        "sec4_3_r2n5" => built(name, sec4_3(&[vec![1, 0, 1, 2, -1], vec![0, 1, 1, -1, 1]])?, Some(2)),
        _ => {
            let num = |prefix: &str| name.strip_prefix(prefix).and_then(|s| s.parse::<usize>().ok());
            if let Some(n) = num("abelian") {
                built(name, LieAlgebra::abelian(n), None)
            } else if let Some(n) = num("filiform") {
                built(name, filiform(n)?, None)
            } else if let Some(n) = num("random") {
                return random_member(n as u64);
            } else if let Some(n) = num("s") {
                built(name, s_n_algebra(n)?, Some(2))
            } else if let Some(t) = name.strip_prefix("borel_") {
                let r = RootSystem::new(t.parse()?);
                built(name, borel_algebra(&r)?, Some(r.rank()))
            } else {
                return Err(Error::UnknownCatalogEntry(name.into()));
            }
        }
    };
    Ok(b)
}

/// Split solvable members used by the invariance checks.
pub fn corpus() -> Result<Vec<Built>> {
    let mut names: Vec<String> = [
        "sec4_1",
        "two_dim_nonabelian",
        "heisenberg3",
        "abelian3",
        "sec4_2",
        "sec4_2_diag",
        "sec4_3_r1n3",
        "sec4_3_r2n4",
        "sec4_3_r2n5",
        "borel_A1xA1",
        "borel_A2",
        "borel_B2",
        "borel_G2",
        "filiform3",
        "s1",
        "s2",
        "s3",
        "s4",
        "s5",
        "s6",
        "s7",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    names.extend((0..RANDOM_MEMBERS).map(|i| format!("random{i}")));
    names.iter().map(|n| build(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_entry_builds_and_round_trips() {
        for e in entries() {
            let b = build(&e.name).unwrap();
            b.algebra.validate().unwrap();
            let back = LieAlgebra::from_json(&b.algebra.to_json()).unwrap();
            assert_eq!(back, b.algebra, "{}", e.name);
        }
    }

    #[test]
    fn random_members_are_deterministic_and_solvable() {
        for i in 0..RANDOM_MEMBERS as u64 {
            let a = random_member(i).unwrap();
            assert_eq!(a, random_member(i).unwrap());
            assert!(a.algebra.is_solvable());
            assert!(!a.algebra.is_nilpotent());
            assert!(a.algebra.dim() <= 11);
        }
    }

    #[test]
    fn parametric_names() {
        assert_eq!(build("abelian(4)").unwrap().algebra.dim(), 4);
        assert_eq!(build("s_n(3)").unwrap().algebra.dim(), 7);
        assert_eq!(build("borel(G2)").unwrap().algebra.dim(), 8);
        assert_eq!(build("sec4_3(1,0;0,1)").unwrap().toral_rank, Some(2));
        assert_eq!(build("sec4_2(1,1;0,1)").unwrap().toral_rank, None);
        assert!(matches!(build("nonsense"), Err(Error::UnknownCatalogEntry(_))));
        assert!(matches!(build("abelian(x)"), Err(Error::Parse { .. })));
    }

    #[test]
    fn corpus_shape() {
        let c = corpus().unwrap();
        assert!(c.len() >= 15);
        assert!(c.iter().all(|b| b.algebra.dim() <= 11 && b.algebra.is_solvable()));
    }
}
