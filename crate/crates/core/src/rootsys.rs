//! Rank-2 root systems, their Borel subalgebras, and Kostant's description of
//! `Γ∘(b)`.
//!
//! Weights are written in figure coordinates: the value of a weight on the two
//! Cartan basis elements `H1`, `H2` of the Borel subalgebra.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::cohomology_dims;
use crate::error::{Error, Result};
use crate::filiform::render_grid;
use crate::gamma::gamma_circ;
use crate::liealg::{semidirect, LieAlgebra};
use crate::linalg::RatMatrix;
use crate::module::{Character, LieModule};
use crate::rational::Rational;

pub type Weight = (i64, i64);

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum RootType {
    A1,
    A1xA1,
    A2,
    B2,
    G2,
}

impl RootType {
    pub const ALL: [RootType; 5] = [RootType::A1, RootType::A1xA1, RootType::A2, RootType::B2, RootType::G2];

    pub fn name(self) -> &'static str {
        match self {
            RootType::A1 => "A1",
            RootType::A1xA1 => "A1xA1",
            RootType::A2 => "A2",
            RootType::B2 => "B2",
            RootType::G2 => "G2",
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().replace(['×', '*'], "X").as_str() {
            "A1" => Ok(RootType::A1),
            "A1XA1" => Ok(RootType::A1xA1),
            "A2" => Ok(RootType::A2),
            "B2" | "C2" => Ok(RootType::B2),
            "G2" => Ok(RootType::G2),
            other => Err(Error::Parse { line: 0, reason: format!("unknown root system type {other:?}") }),
        }
    }
}

/// Positive roots as nonnegative combinations of the simple roots.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootSystem {
    pub kind: RootType,
    /// Simple roots in figure coordinates.
    pub simple: Vec<Weight>,
    /// Cartan matrix `a[i][j] = <α_i^∨, α_j>`.
    pub cartan: Vec<Vec<i64>>,
    /// Positive roots as simple-root coefficients, in bracket order.
    pub positive: Vec<Vec<i64>>,
    /// `[e_i, e_j] = n e_k` on positive root vectors, `i < j`.
    pub brackets: Vec<(usize, usize, usize, i64)>,
}

impl RootSystem {
    pub fn new(kind: RootType) -> RootSystem {
        let (simple, cartan, positive, brackets): (Vec<Weight>, Vec<Vec<i64>>, Vec<Vec<i64>>, Vec<(usize, usize, usize, i64)>) = match kind {
            RootType::A1 => (vec![(2, 0)], vec![vec![2]], vec![vec![1]], vec![]),
            RootType::A1xA1 => (vec![(2, 0), (0, 2)], vec![vec![2, 0], vec![0, 2]], vec![vec![1, 0], vec![0, 1]], vec![]),
            RootType::A2 => (
                vec![(2, 0), (-1, 1)],
                vec![vec![2, -1], vec![-1, 2]],
                vec![vec![1, 0], vec![0, 1], vec![1, 1]],
                vec![(0, 1, 2, 1)],
            ),
            // α1 short
            RootType::B2 => (
                vec![(2, 0), (-2, 1)],
                vec![vec![2, -2], vec![-1, 2]],
                vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1]],
                vec![(0, 1, 2, 1), (0, 2, 3, 2)],
            ),
            // α1 short; a, b, a+b, 2a+b, 3a+b, 3a+2b
            RootType::G2 => (
                vec![(2, 0), (-3, 1)],
                vec![vec![2, -3], vec![-1, 2]],
                vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![2, 1], vec![3, 1], vec![3, 2]],
                vec![(0, 1, 2, 1), (0, 2, 3, 2), (0, 3, 4, 3), (1, 4, 5, 1), (2, 3, 5, -3)],
            ),
        };
        RootSystem { kind, simple, cartan, positive, brackets }
    }

    pub fn rank(&self) -> usize {
        self.simple.len()
    }

    /// Figure coordinates of a root-lattice vector.
    pub fn to_figure(&self, coeffs: &[i64]) -> Weight {
        coeffs.iter().zip(&self.simple).fold((0, 0), |acc, (c, s)| (acc.0 + c * s.0, acc.1 + c * s.1))
    }

    pub fn positive_roots(&self) -> Vec<Weight> {
        self.positive.iter().map(|r| self.to_figure(r)).collect()
    }

    /// `2ρ` in simple-root coordinates.
    pub fn two_rho(&self) -> Vec<i64> {
        let mut out = vec![0; self.rank()];
        for r in &self.positive {
            for (o, c) in out.iter_mut().zip(r) {
                *o += c;
            }
        }
        out
    }

    /// `ρ` in figure coordinates, doubled.
    pub fn two_rho_figure(&self) -> Weight {
        self.to_figure(&self.two_rho())
    }

    /// Simple reflection `s_i` on simple-root coordinates, as a matrix.
    fn reflection(&self, i: usize) -> Vec<Vec<i64>> {
        let r = self.rank();
        let mut m = vec![vec![0; r]; r];
        for j in 0..r {
            // s_i(α_j) = α_j - a_ij α_i
            m[j][j] += 1;
            m[i][j] -= self.cartan[i][j];
        }
        m
    }
}

/// Element of the Weyl group acting on simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub length: usize,
    /// `ρ - wρ` in figure coordinates.
    pub rho_shift: Weight,
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

fn compose(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
}

/// All Weyl group elements by breadth-first closure over simple reflections.
pub fn weyl_group(r: &RootSystem) -> Vec<WeylElement> {
    let n = r.rank();
    let id: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let refl: Vec<_> = (0..n).map(|i| r.reflection(i)).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    let mut out = Vec::new();
    let two_rho = r.two_rho();
    while let Some(w) = queue.pop_front() {
        let length = r
            .positive
            .iter()
            .filter(|a| apply(&w, a).iter().any(|c| *c < 0))
            .count();
        let w_rho = apply(&w, &two_rho);
        let diff: Vec<i64> = two_rho.iter().zip(&w_rho).map(|(a, b)| (a - b) / 2).collect();
        let rho_shift = r.to_figure(&diff);
        for s in &refl {
            let next = compose(s, &w);
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        out.push(WeylElement { matrix: w, length, rho_shift });
    }
    out.sort_by_key(|w| w.length);
    out
}

/// Number of Weyl elements of each length.
pub fn length_profile(w: &[WeylElement]) -> Vec<usize> {
    let max = w.iter().map(|x| x.length).max().unwrap_or(0);
    let mut out = vec![0; max + 1];
    for x in w {
        out[x.length] += 1;
    }
    out
}

fn root_label(c: &[i64]) -> String {
    let parts: Vec<String> = c.iter().enumerate().filter(|(_, k)| **k != 0).map(|(i, k)| {
        if *k == 1 { format!("a{}", i + 1) } else { format!("{k}a{}", i + 1) }
    }).collect();
    format!("e_{}", parts.join("+"))
}

/// Positive nilradical `n` with basis the positive root vectors.
pub fn nilradical_algebra(r: &RootSystem) -> Result<LieAlgebra> {
    let labels = r.positive.iter().map(|c| root_label(c)).collect();
    let entries = r.brackets.iter().map(|&(i, j, k, n)| (i, j, vec![(k, Rational::from(n))]));
    LieAlgebra::new(labels, entries)
}

/// `b = h ⋉ n`, basis `(H1, .., Hr, positive root vectors)`.
pub fn borel_algebra(r: &RootSystem) -> Result<LieAlgebra> {
    let n = nilradical_algebra(r)?;
    let roots = r.positive_roots();
    let coords: [fn(&Weight) -> i64; 2] = [|w| w.0, |w| w.1];
    let family: Vec<RatMatrix> = coords[..r.rank()]
        .iter()
        .map(|f| RatMatrix::diagonal(&roots.iter().map(|w| Rational::from(f(w))).collect::<Vec<_>>()))
        .collect();
    let labels = (1..=r.rank()).map(|i| format!("H{i}")).collect();
    semidirect(&family, &n, Some(labels))
}

fn character_weight(c: &Character, rank: usize) -> Result<Weight> {
    let v = c.values();
    let get = |i: usize| -> Result<i64> {
        if i >= rank {
            return Ok(0);
        }
        v[i].to_i64().ok_or_else(|| Error::Internal("non-integral weight".into()))
    };
    if v[rank..].iter().any(|x| !x.is_zero()) {
        return Err(Error::Internal("character does not vanish on the nilradical".into()));
    }
    Ok((get(0)?, get(1)?))
}

/// Predicted `Γ∘ᵖ(b)`: `ρ - wρ` over `w` with `p - rank ≤ ℓ(w) ≤ p`.
pub fn kostant_gamma(r: &RootSystem, p: usize) -> BTreeSet<Weight> {
    let lo = p.saturating_sub(r.rank());
    weyl_group(r).into_iter().filter(|w| w.length >= lo && w.length <= p).map(|w| w.rho_shift).collect()
}

/// Serializes a weight-keyed map as `[[h1, h2], value]` pairs.
pub(crate) fn weight_map<S: serde::Serializer, V: Serialize>(
    m: &BTreeMap<(i64, i64), V>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(m.iter())
}

/// Weights of `Λn` (or of `Λb` when `with_cartan`, scaling by `2^rank`) with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiPolytope {
    pub kind: RootType,
    pub with_cartan: bool,
    #[serde(serialize_with = "weight_map")]
    pub multiplicities: BTreeMap<Weight, usize>,
    pub vertices: BTreeSet<Weight>,
}

impl ChiPolytope {
    pub fn total(&self) -> usize {
        self.multiplicities.values().sum()
    }

    /// Text grid; vertices of the hull are marked with `*`.
    pub fn text_grid(&self) -> String {
        render_grid(self.multiplicities.iter().map(|(w, m)| {
            let mark = if self.vertices.contains(w) { "*" } else { "" };
            (*w, format!("{m}{mark}"))
        }))
    }

    pub fn to_csv(&self, gamma: &BTreeSet<Weight>) -> String {
        let mut out = String::from("h1,h2,multiplicity,is_gamma_vertex\n");
        for (w, m) in &self.multiplicities {
            out.push_str(&format!("{},{},{},{}\n", w.0, w.1, m, gamma.contains(w)));
        }
        out
    }
}

pub fn chi_polytope(r: &RootSystem, with_cartan: bool) -> ChiPolytope {
    let roots = r.positive_roots();
    let mut mult = BTreeMap::new();
    for mask in 0u32..(1 << roots.len()) {
        let w = roots
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .fold((0, 0), |a, (_, b)| (a.0 + b.0, a.1 + b.1));
        *mult.entry(w).or_insert(0usize) += 1;
    }
    if with_cartan {
        for m in mult.values_mut() {
            *m <<= r.rank();
        }
    }
    let points: Vec<Weight> = mult.keys().copied().collect();
    ChiPolytope { kind: r.kind, with_cartan, multiplicities: mult, vertices: extreme_points(&points) }
}

fn cross(o: Weight, a: Weight, b: Weight) -> i64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Strict extreme points of the convex hull of integer points.
pub fn extreme_points(points: &[Weight]) -> BTreeSet<Weight> {
    let mut pts: Vec<Weight> = points.to_vec();
    pts.sort();
    pts.dedup();
    if pts.len() <= 2 {
        return pts.into_iter().collect();
    }
    let mut hull: Vec<Weight> = Vec::new();
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &Weight>> = if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    if hull.is_empty() {
        // collinear: endpoints only
        return [pts[0], pts[pts.len() - 1]].into_iter().collect();
    }
    hull.into_iter().collect()
}

/// Outcome of the Kostant cross-check for one type.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KostantReport {
    pub kind: RootType,
    pub weyl_order: usize,
    pub length_profile: Vec<usize>,
    pub nilradical_betti: Vec<usize>,
    pub gamma: Vec<BTreeSet<Weight>>,
    pub predicted: Vec<BTreeSet<Weight>>,
    pub polytope_vertices: BTreeSet<Weight>,
}

impl KostantReport {
    pub fn gamma_union(&self) -> BTreeSet<Weight> {
        self.gamma.iter().flatten().copied().collect()
    }
}

/// Computes `Γ∘ᵖ(b)` directly and compares with Kostant's prediction, the
/// Betti numbers of `n` with the Weyl length profile, and `Γ∘(b)` with the
/// hull vertices of `χ(b, Λn)`.
pub fn verify_kostant(r: &RootSystem) -> Result<KostantReport> {
    let b = borel_algebra(r)?;
    let n = nilradical_algebra(r)?;
    let w = weyl_group(r);
    let profile = length_profile(&w);
    let betti = cohomology_dims(&n, &LieModule::trivial(&n))?;
    if betti != profile {
        return Err(Error::TheoremCheck(format!("{}: Betti numbers {betti:?} of n differ from length profile {profile:?}", r.kind)));
    }
    let gamma: Vec<BTreeSet<Weight>> = (0..=b.dim())
        .into_par_iter()
        .map(|p| gamma_circ(&b, p)?.keys().map(|c| character_weight(c, r.rank())).collect())
        .collect::<Result<_>>()?;
    let predicted: Vec<BTreeSet<Weight>> = (0..=b.dim()).map(|p| kostant_gamma(r, p)).collect();
    for (p, (g, k)) in gamma.iter().zip(&predicted).enumerate() {
        if g != k {
            return Err(Error::TheoremCheck(format!("{}: Γ∘^{p}(b) = {g:?} but Kostant predicts {k:?}", r.kind)));
        }
    }
    let poly = chi_polytope(r, false);
    let union: BTreeSet<Weight> = gamma.iter().flatten().copied().collect();
    if union != poly.vertices {
        return Err(Error::TheoremCheck(format!("{}: Γ∘(b) is not the vertex set of χ(b, Λn)", r.kind)));
    }
    Ok(KostantReport {
        kind: r.kind,
        weyl_order: w.len(),
        length_profile: profile,
        nilradical_betti: betti,
        gamma,
        predicted,
        polytope_vertices: poly.vertices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polytope_serializes_to_json() {
        let poly = chi_polytope(&RootSystem::new(RootType::A2), false);
        let v = serde_json::to_value(&poly).unwrap();
        assert_eq!(v["multiplicities"].as_array().unwrap().len(), poly.multiplicities.len());
    }

    #[test]
    fn weyl_orders_and_lengths() {
        let expect = [
            (RootType::A1, vec![1, 1]),
            (RootType::A1xA1, vec![1, 2, 1]),
            (RootType::A2, vec![1, 2, 2, 1]),
            (RootType::B2, vec![1, 2, 2, 2, 1]),
            (RootType::G2, vec![1, 2, 2, 2, 2, 2, 1]),
        ];
        for (t, profile) in expect {
            let w = weyl_group(&RootSystem::new(t));
            assert_eq!(length_profile(&w), profile, "{t}");
        }
    }

    #[test]
    fn positive_roots_in_figure_coordinates() {
        let a2: BTreeSet<Weight> = RootSystem::new(RootType::A2).positive_roots().into_iter().collect();
        assert_eq!(a2, [(2, 0), (-1, 1), (1, 1)].into_iter().collect());
        let g2: BTreeSet<Weight> = RootSystem::new(RootType::G2).positive_roots().into_iter().collect();
        assert_eq!(g2, [(2, 0), (-1, 1), (1, 1), (0, 2), (-3, 1), (3, 1)].into_iter().collect());
    }

    #[test]
    fn borel_dimensions() {
        for (t, d) in [(RootType::A1xA1, 4), (RootType::A2, 5), (RootType::B2, 6), (RootType::G2, 8)] {
            let r = RootSystem::new(t);
            let b = borel_algebra(&r).unwrap();
            assert_eq!(b.dim(), d);
            b.validate().unwrap();
            assert_eq!(b.nilradical().unwrap().dim(), d - r.rank());
        }
        assert!(nilradical_algebra(&RootSystem::new(RootType::A1xA1)).unwrap().is_abelian());
    }

    #[test]
    fn a2_polytope() {
        let p = chi_polytope(&RootSystem::new(RootType::A2), false);
        assert_eq!(p.total(), 8);
        assert_eq!(p.multiplicities[&(1, 1)], 2);
        assert_eq!(p.vertices, [(0, 0), (2, 0), (-1, 1), (0, 2), (2, 2), (3, 1)].into_iter().collect());
        assert_eq!(chi_polytope(&RootSystem::new(RootType::A2), true).total(), 32);
    }

    #[test]
    fn a2_kostant() {
        let r = RootSystem::new(RootType::A2);
        assert_eq!(kostant_gamma(&r, 0), [(0, 0)].into_iter().collect());
        assert_eq!(kostant_gamma(&r, 3).len(), 5);
        let rep = verify_kostant(&r).unwrap();
        assert_eq!(rep.nilradical_betti, vec![1, 2, 2, 1]);
    }

    #[test]
    fn hull_of_collinear_points() {
        assert_eq!(extreme_points(&[(0, 0), (2, 0), (4, 0)]), [(0, 0), (4, 0)].into_iter().collect());
    }

    #[test]
    fn flipped_sign_keeps_betti() {
        let r = RootSystem::new(RootType::G2);
        let mut flipped = r.clone();
        flipped.brackets[3].3 = -flipped.brackets[3].3;
        flipped.brackets[4].3 = -flipped.brackets[4].3;
        let a = nilradical_algebra(&r).unwrap();
        let b = nilradical_algebra(&flipped).unwrap();
        assert_ne!(a.structure_constants(), b.structure_constants());
        assert_eq!(
            cohomology_dims(&a, &LieModule::trivial(&a)).unwrap(),
            cohomology_dims(&b, &LieModule::trivial(&b)).unwrap()
        );
    }
}
