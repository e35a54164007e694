//! Extensions `a ⊕_{α,ρ} h`, linear deformations, and the nilshadow.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{cohomology_dims, ideal_presentation};
use crate::error::{Error, Result};
use crate::gamma::{total_cohomology, GammaReport};
use crate::liealg::{semidirect, unit, LieAlgebra, Subspace};
use crate::linalg::{is_semisimple, is_zero_vector, nilpotent_part, semisimple_part, RatMatrix};
use crate::module::LieModule;
use crate::rational::Rational;

/// Alternating bilinear map `Λ²a → h`, stored on pairs `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WedgeMap {
    dim_a: usize,
    dim_h: usize,
    values: Vec<Vec<Rational>>,
}

impl WedgeMap {
    pub fn zero(dim_a: usize, dim_h: usize) -> Self {
        let pairs = dim_a * dim_a.saturating_sub(1) / 2;
        WedgeMap { dim_a, dim_h, values: vec![vec![Rational::zero(); dim_h]; pairs] }
    }

    /// Entries `(i, j, value)`; `(j, i)` is filled by antisymmetry.
    pub fn from_entries(dim_a: usize, dim_h: usize, entries: Vec<(usize, usize, Vec<Rational>)>) -> Result<Self> {
        let mut w = Self::zero(dim_a, dim_h);
        for (i, j, v) in entries {
            if i >= dim_a || j >= dim_a || v.len() != dim_h {
                return Err(Error::OutOfRange(format!("wedge entry ({i}, {j})")));
            }
            if i == j {
                if !is_zero_vector(&v) {
                    return Err(Error::NotAlternating(i, j));
                }
                continue;
            }
            let (lo, hi, sign) = if i < j { (i, j, Rational::one()) } else { (j, i, Rational::from(-1)) };
            let p = w.pos(lo, hi);
            for (x, y) in w.values[p].iter_mut().zip(&v) {
                *x += &(&sign * y);
            }
        }
        Ok(w)
    }

    fn pos(&self, i: usize, j: usize) -> usize {
        i * self.dim_a - i * (i + 1) / 2 + (j - i - 1)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_h(&self) -> usize {
        self.dim_h
    }

    pub fn get(&self, i: usize, j: usize) -> Vec<Rational> {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => vec![Rational::zero(); self.dim_h],
            std::cmp::Ordering::Less => self.values[self.pos(i, j)].clone(),
            std::cmp::Ordering::Greater => self.values[self.pos(j, i)].iter().map(|x| -x).collect(),
        }
    }

    /// `ρ(v ∧ x_j)` for a vector `v` of `a`.
    pub fn eval_left(&self, v: &[Rational], j: usize) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.dim_h];
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                crate::linalg::add_scaled(&mut out, c, &self.get(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| is_zero_vector(v))
    }

    /// `s·self + t·other`.
    pub fn combine(&self, s: &Rational, other: &WedgeMap, t: &Rational) -> WedgeMap {
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| &(s * x) + &(t * y)).collect())
            .collect();
        WedgeMap { dim_a: self.dim_a, dim_h: self.dim_h, values }
    }
}

fn combine_maps(s: &Rational, a: &[RatMatrix], t: &Rational, b: &[RatMatrix]) -> Vec<RatMatrix> {
    a.iter().zip(b).map(|(x, y)| x.scale(s).add(&y.scale(t))).collect()
}

fn sum_vec(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// `f(i,j,k) + f(j,k,i) + f(k,i,j)`.
fn cyclic<F: Fn(usize, usize, usize) -> Vec<Rational>>(i: usize, j: usize, k: usize, f: F) -> Vec<Rational> {
    let a = f(i, j, k);
    let b = f(j, k, i);
    let c = f(k, i, j);
    sum_vec(&sum_vec(&a, &b), &c)
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k))))
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |i| (i + 1..n).map(move |j| (i, j)))
}

/// Data of an extension of `a` by `h`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionData {
    pub a: LieAlgebra,
    pub h: LieAlgebra,
    pub alpha: Vec<RatMatrix>,
    pub rho: WedgeMap,
}

impl ExtensionData {
    pub fn new(a: LieAlgebra, h: LieAlgebra, alpha: Vec<RatMatrix>, rho: WedgeMap) -> Self {
        ExtensionData { a, h, alpha, rho }
    }

    /// The data of `S` seen as an extension of `S / ideal` by `ideal`,
    /// using the given complement vectors as a section.
    pub fn from_split(s: &LieAlgebra, ideal: &Subspace, complement: &[Vec<Rational>]) -> Result<Self> {
        if !s.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let r = complement.len();
        let p = split_basis(s, ideal, complement)?;
        let inv = p.inverse().ok_or_else(|| Error::DimensionMismatch("complement meets the ideal".into()))?;
        let split = |v: &[Rational]| {
            let c = inv.mul_vec(v);
            (c[..r].to_vec(), c[r..].to_vec())
        };
        let a_labels = complement
            .iter()
            .enumerate()
            .map(|(i, v)| match v.iter().position(|x| !x.is_zero()) {
                Some(k) if v.iter().filter(|x| !x.is_zero()).count() == 1 && v[k].is_one() => s.labels()[k].clone(),
                _ => format!("X{}", i + 1),
            })
            .collect();
        let mut a_entries = Vec::new();
        let mut rho_entries = Vec::new();
        for (i, j) in pairs(r) {
            let (ac, hc) = split(&s.bracket(&complement[i], &complement[j]));
            a_entries.push((i, j, crate::linalg::sparse::dense_to_sparse(&ac)));
            rho_entries.push((i, j, hc));
        }
        let a = LieAlgebra::new(a_labels, a_entries)?;
        let h = s.restrict(ideal)?;
        let alpha = complement
            .iter()
            .map(|x| {
                let cols: Vec<Vec<Rational>> = ideal.basis().iter().map(|b| split(&s.bracket(x, b)).1).collect();
                RatMatrix::from_columns(ideal.dim(), &cols)
            })
            .collect();
        let rho = WedgeMap::from_entries(r, ideal.dim(), rho_entries)?;
        Ok(ExtensionData { a, h, alpha, rho })
    }

    /// `α(v)` for a vector `v` of `a`.
    pub fn alpha_of(&self, v: &[Rational]) -> RatMatrix {
        combination(&self.alpha, v, self.h.dim())
    }

    fn a_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        self.a.bracket_basis_dense(i, j)
    }
}

fn combination(maps: &[RatMatrix], v: &[Rational], n: usize) -> RatMatrix {
    let mut m = RatMatrix::zeros(n, n);
    for (c, x) in v.iter().zip(maps) {
        if !c.is_zero() {
            m = m.add(&x.scale(c));
        }
    }
    m
}

/// Columns are the complement vectors followed by the ideal basis.
pub fn split_basis(s: &LieAlgebra, ideal: &Subspace, complement: &[Vec<Rational>]) -> Result<RatMatrix> {
    if complement.len() + ideal.dim() != s.dim() {
        return Err(Error::DimensionMismatch(format!(
            "complement of dimension {} for an ideal of codimension {}",
            complement.len(),
            s.dim() - ideal.dim()
        )));
    }
    let cols: Vec<Vec<Rational>> = complement.iter().chain(ideal.basis()).cloned().collect();
    Ok(RatMatrix::from_columns(s.dim(), &cols))
}

fn check_shapes(e: &ExtensionData) -> Result<()> {
    let (r, n) = (e.a.dim(), e.h.dim());
    if e.alpha.len() != r || e.alpha.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Err(Error::DimensionMismatch("α must give one dim h × dim h matrix per basis vector of a".into()));
    }
    if e.rho.dim_a() != r || e.rho.dim_h() != n {
        return Err(Error::DimensionMismatch("ρ has the wrong shape".into()));
    }
    Ok(())
}

/// Checks that every `α(X)` is a derivation and both extension identities.
pub fn validate_extension(e: &ExtensionData) -> Result<()> {
    check_shapes(e)?;
    for (i, m) in e.alpha.iter().enumerate() {
        if !e.h.is_derivation(m) {
            return Err(Error::NotADerivation(i));
        }
    }
    for (i, j) in pairs(e.a.dim()) {
        let lhs = e.alpha[i].commutator(&e.alpha[j]);
        let rhs = e.alpha_of(&e.a_bracket(i, j)).add(&e.h.ad_matrix(&e.rho.get(i, j)));
        if lhs != rhs {
            return Err(Error::Eq12Violation(i, j));
        }
    }
    for (i, j, k) in triples(e.a.dim()) {
        let lhs = cyclic(i, j, k, |x, y, z| e.alpha[x].mul_vec(&e.rho.get(y, z)));
        let rhs = cyclic(i, j, k, |x, y, z| e.rho.eval_left(&e.a_bracket(x, y), z));
        if lhs != rhs {
            return Err(Error::Eq13Violation(i, j, k));
        }
    }
    Ok(())
}

/// The algebra `a ⊕_{α,ρ} h`, basis `a` first.
pub fn build_extension(e: &ExtensionData) -> Result<LieAlgebra> {
    validate_extension(e)?;
    let (r, n) = (e.a.dim(), e.h.dim());
    let mut labels = e.a.labels().to_vec();
    labels.extend(e.h.labels().iter().cloned());
    let shift = |v: Vec<Rational>, off: usize| -> Vec<(usize, Rational)> {
        v.into_iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(k, x)| (k + off, x)).collect()
    };
    let mut entries = Vec::new();
    for (i, j) in pairs(r) {
        let mut v = shift(e.a_bracket(i, j), 0);
        v.extend(shift(e.rho.get(i, j), r));
        entries.push((i, j, v));
    }
    for i in 0..r {
        for k in 0..n {
            entries.push((i, r + k, shift(e.alpha[i].column(k), r)));
        }
    }
    for (i, j, k, c) in e.h.structure_constants() {
        entries.push((r + i, r + j, vec![(r + k, c)]));
    }
    LieAlgebra::new(labels, entries)
}

/// A direction `(β, τ)` for deforming an extension.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationDirection {
    pub beta: Vec<RatMatrix>,
    pub tau: WedgeMap,
}

impl DeformationDirection {
    /// Validates shapes and that every `β(X)` is a derivation of `h`.
    pub fn new(e: &ExtensionData, beta: Vec<RatMatrix>, tau: WedgeMap) -> Result<Self> {
        let n = e.h.dim();
        if beta.len() != e.a.dim() || beta.iter().any(|m| m.rows() != n || m.cols() != n) {
            return Err(Error::DimensionMismatch("β has the wrong shape".into()));
        }
        if tau.dim_a() != e.a.dim() || tau.dim_h() != n {
            return Err(Error::DimensionMismatch("τ has the wrong shape".into()));
        }
        for (i, m) in beta.iter().enumerate() {
            if !e.h.is_derivation(m) {
                return Err(Error::NotADerivation(i));
            }
        }
        Ok(DeformationDirection { beta, tau })
    }

    pub fn with_zero_tau(e: &ExtensionData, beta: Vec<RatMatrix>) -> Result<Self> {
        Self::new(e, beta, WedgeMap::zero(e.a.dim(), e.h.dim()))
    }
}

/// `(α + tβ, ρ + tτ)`.
pub fn deformed_data(e: &ExtensionData, d: &DeformationDirection, t: &Rational) -> ExtensionData {
    let one = Rational::one();
    ExtensionData {
        a: e.a.clone(),
        h: e.h.clone(),
        alpha: combine_maps(&one, &e.alpha, t, &d.beta),
        rho: e.rho.combine(&one, &d.tau, t),
    }
}

/// `g_{α+tβ, ρ+tτ}`.
pub fn deform(e: &ExtensionData, d: &DeformationDirection, t: &Rational) -> Result<LieAlgebra> {
    build_extension(&deformed_data(e, d, t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Prop62Report {
    /// Conditions (1)-(4), in order.
    pub conditions: [bool; 4],
    pub failures: Vec<String>,
    /// Whether `(α + tβ, ρ + tτ)` is an extension, for sampled `t`.
    pub samples: Vec<(Rational, bool)>,
}

impl Prop62Report {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|&c| c)
    }

    /// The conditions and the sampled extensions agree.
    pub fn consistent(&self) -> bool {
        self.all_pass() == self.samples.iter().all(|(_, ok)| *ok)
    }
}

pub fn check_prop62(e: &ExtensionData, d: &DeformationDirection) -> Result<Prop62Report> {
    check_shapes(e)?;
    let r = e.a.dim();
    let mut conditions = [true; 4];
    let mut failures = Vec::new();
    for (i, j) in pairs(r) {
        if !d.beta[i].commutator(&d.beta[j]).is_zero() {
            conditions[0] = false;
            failures.push(format!("(1) fails on ({i}, {j})"));
        }
        let lhs = e.alpha[i].commutator(&d.beta[j]).add(&d.beta[i].commutator(&e.alpha[j]));
        let rhs = combination(&d.beta, &e.a_bracket(i, j), e.h.dim()).add(&e.h.ad_matrix(&d.tau.get(i, j)));
        if lhs != rhs {
            conditions[2] = false;
            failures.push(format!("(3) fails on ({i}, {j})"));
        }
    }
    for (i, j, k) in triples(r) {
        let c2 = cyclic(i, j, k, |x, y, z| d.beta[x].mul_vec(&d.tau.get(y, z)));
        if !is_zero_vector(&c2) {
            conditions[1] = false;
            failures.push(format!("(2) fails on ({i}, {j}, {k})"));
        }
        let lhs = sum_vec(
            &cyclic(i, j, k, |x, y, z| d.beta[x].mul_vec(&e.rho.get(y, z))),
            &cyclic(i, j, k, |x, y, z| e.alpha[x].mul_vec(&d.tau.get(y, z))),
        );
        let rhs = cyclic(i, j, k, |x, y, z| d.tau.eval_left(&e.a_bracket(x, y), z));
        if lhs != rhs {
            conditions[3] = false;
            failures.push(format!("(4) fails on ({i}, {j}, {k})"));
        }
    }
    let samples = [1, -1, 2]
        .into_iter()
        .map(|t| {
            let t = Rational::from(t);
            let ok = validate_extension(&deformed_data(e, d, &t)).is_ok();
            (t, ok)
        })
        .collect();
    Ok(Prop62Report { conditions, failures, samples })
}

/// Whether `(β, 0)` is an elementary deformation of `E`: `a` abelian, `β` a
/// homomorphism, `[α(X), β(Y)] = 0` and `β(X)(ρ(Y ∧ Z)) = 0`.
pub fn is_elementary(e: &ExtensionData, d: &DeformationDirection) -> Result<bool> {
    check_shapes(e)?;
    if !d.tau.is_zero() {
        return Err(Error::TauNonzero);
    }
    let r = e.a.dim();
    if !e.a.is_abelian() {
        return Ok(false);
    }
    for (i, j) in pairs(r) {
        if !d.beta[i].commutator(&d.beta[j]).is_zero() {
            return Ok(false);
        }
    }
    for i in 0..r {
        for j in 0..r {
            if !e.alpha[i].commutator(&d.beta[j]).is_zero() {
                return Ok(false);
            }
        }
    }
    for x in 0..r {
        for (y, z) in pairs(r) {
            if !is_zero_vector(&d.beta[x].mul_vec(&e.rho.get(y, z))) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitCertificate {
    pub d1: DeformationDirection,
    pub d2: DeformationDirection,
    /// `β₁` is elementary for `E`.
    pub stage1: bool,
    /// `β₂` is elementary for `(α + β₁, ρ)`.
    pub stage2: bool,
    /// `g_{tα + t₁β₁ + t₂β₂, tρ}` is a Lie algebra, for `(t, t₁, t₂) ∈ {0,1}³`.
    pub corners: Vec<([u8; 3], bool)>,
}

impl SplitCertificate {
    pub fn all_pass(&self) -> bool {
        self.stage1 && self.stage2 && self.corners.iter().all(|(_, ok)| *ok)
    }
}

/// Splits an elementary direction along `a = span(a1) ⊕ span(rest)`.
pub fn split_elementary(e: &ExtensionData, d: &DeformationDirection, a1: &[usize]) -> Result<SplitCertificate> {
    if !is_elementary(e, d)? {
        return Err(Error::NotElementary);
    }
    let n = e.h.dim();
    let part = |keep: bool| -> Vec<RatMatrix> {
        d.beta
            .iter()
            .enumerate()
            .map(|(i, b)| if a1.contains(&i) == keep { b.clone() } else { RatMatrix::zeros(n, n) })
            .collect()
    };
    let d1 = DeformationDirection::with_zero_tau(e, part(true))?;
    let d2 = DeformationDirection::with_zero_tau(e, part(false))?;
    let stage1 = is_elementary(e, &d1)?;
    let e1 = deformed_data(e, &d1, &Rational::one());
    let stage2 = is_elementary(&e1, &d2)?;
    let mut corners = Vec::new();
    for bits in 0..8u8 {
        let [t, t1, t2] = [bits >> 2 & 1, bits >> 1 & 1, bits & 1];
        let q = |b: u8| Rational::from(i64::from(b));
        let alpha = combine_maps(&q(t), &e.alpha, &q(t1), &d1.beta);
        let alpha = combine_maps(&Rational::one(), &alpha, &q(t2), &d2.beta);
        let rho = e.rho.combine(&q(t), &WedgeMap::zero(e.a.dim(), n), &Rational::zero());
        let data = ExtensionData { a: e.a.clone(), h: e.h.clone(), alpha, rho };
        corners.push(([t, t1, t2], build_extension(&data).is_ok()));
    }
    Ok(SplitCertificate { d1, d2, stage1, stage2, corners })
}

/// The first basis triple where `⟲μ(σ(x,y),z) + ⟲σ(μ(x,y),z)` is nonzero.
pub fn cocycle_residual(mu: &LieAlgebra, sigma: &LieAlgebra) -> Option<(usize, usize, usize, Vec<Rational>)> {
    let n = mu.dim();
    for (i, j, k) in triples(n) {
        let r = cyclic(i, j, k, |x, y, z| {
            let a = mu.bracket(&sigma.bracket_basis_dense(x, y), &unit(n, z));
            let b = sigma.bracket(&mu.bracket_basis_dense(x, y), &unit(n, z));
            sum_vec(&a, &b)
        });
        if !is_zero_vector(&r) {
            return Some((i, j, k, r));
        }
    }
    None
}

/// `s·μ + t·σ` as an unchecked bracket.
pub fn combine_brackets(s: &Rational, mu: &LieAlgebra, t: &Rational, sigma: &LieAlgebra) -> LieAlgebra {
    let n = mu.dim();
    let mut entries = Vec::new();
    for (i, j) in pairs(n) {
        let v: Vec<Rational> = mu
            .bracket_basis_dense(i, j)
            .iter()
            .zip(sigma.bracket_basis_dense(i, j))
            .map(|(a, b)| &(s * a) + &(t * &b))
            .collect();
        entries.push((i, j, crate::linalg::sparse::dense_to_sparse(&v)));
    }
    LieAlgebra::new_unchecked(mu.labels().to_vec(), entries).expect("indices in range")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InfinitesimalCheck {
    pub sigma_is_lie: bool,
    /// Residual of the 2-cocycle identity, `None` when it holds.
    pub cocycle_residual: Option<(usize, usize, usize, Vec<Rational>)>,
    pub is_deformation: bool,
    /// Items of the equivalence spot-checked on a positive answer.
    pub certified: Vec<u8>,
}

/// Whether `σ` is a Lie bracket and a 2-cocycle of `μ`. Build `σ` with
/// [`LieAlgebra::new_unchecked`]; a non-alternating input is rejected there.
pub fn is_infinitesimal_deformation(mu: &LieAlgebra, sigma: &LieAlgebra) -> Result<InfinitesimalCheck> {
    if mu.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch("μ and σ live on different spaces".into()));
    }
    let sigma_is_lie = sigma.validate().is_ok();
    let residual = cocycle_residual(mu, sigma);
    let is_deformation = sigma_is_lie && residual.is_none();
    let mut certified = Vec::new();
    if is_deformation {
        let one = Rational::one();
        for t in [1, 2, 3] {
            let t = Rational::from(t);
            if combine_brackets(&one, mu, &t, sigma).validate().is_err() {
                return Err(Error::TheoremCheck(format!("μ + {t}σ is not a Lie algebra")));
            }
            if combine_brackets(&t, mu, &one, sigma).validate().is_err() {
                return Err(Error::TheoremCheck(format!("σ + {t}μ is not a Lie algebra")));
            }
        }
        certified = vec![3, 4, 5, 6];
    }
    Ok(InfinitesimalCheck { sigma_is_lie, cocycle_residual: residual, is_deformation, certified })
}

/// A corrected structure constant `(i, j, k)` with 1-based indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChangeEntry {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub old: Rational,
    pub new: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NilshadowResult {
    /// The nilshadow in the basis of the input algebra.
    pub shadow: LieAlgebra,
    pub nilradical: Subspace,
    pub cartan: Subspace,
    /// Basis of the complement `a` of the nilradical inside the Cartan subalgebra.
    pub complement: Vec<Vec<Rational>>,
    /// `ad(X)_s` on the whole algebra, one per complement vector.
    pub semisimple_parts: Vec<RatMatrix>,
    pub change_log: Vec<ChangeEntry>,
}

/// Vectors of `sub`'s canonical basis completing `base` to `base + sub`.
fn complement_within(sub: &Subspace, base: &Subspace) -> Vec<Vec<Rational>> {
    let mut acc = base.clone();
    let mut out = Vec::new();
    for v in sub.basis() {
        if !acc.contains(v) {
            out.push(v.clone());
            acc = acc.sum(&Subspace::span(acc.ambient(), std::slice::from_ref(v)));
        }
    }
    out
}

/// `ad(X)|_ideal` in the ideal's canonical basis.
fn restrict_operator(m: &RatMatrix, ideal: &Subspace) -> Result<RatMatrix> {
    let cols = ideal
        .basis()
        .iter()
        .map(|b| ideal.coordinates(&m.mul_vec(b)).ok_or(Error::NonSplit("operator does not preserve the ideal".into())))
        .collect::<Result<Vec<_>>>()?;
    Ok(RatMatrix::from_columns(ideal.dim(), &cols))
}

fn same_brackets(a: &LieAlgebra, b: &LieAlgebra) -> bool {
    a.dim() == b.dim() && a.clone().with_labels(b.labels().to_vec()) == *b
}

pub fn nilshadow(s: &LieAlgebra) -> Result<NilshadowResult> {
    let dim = s.dim();
    let nil = s.nilradical()?;
    let cartan = s.cartan_subalgebra()?;
    let complement = complement_within(&cartan, &nil);
    if complement.len() + nil.dim() != dim {
        return Err(Error::Internal("Cartan subalgebra does not complement the nilradical".into()));
    }
    let parts: Vec<RatMatrix> = complement.iter().map(|x| semisimple_part(&s.ad_matrix(x))).collect::<Result<_>>()?;
    for (i, p) in parts.iter().enumerate() {
        for (j, q) in parts.iter().enumerate().skip(i + 1) {
            if !p.commutator(q).is_zero() {
                return Err(Error::NonSplit(format!("semisimple parts {i} and {j} do not commute")));
            }
        }
        if complement.iter().any(|y| !is_zero_vector(&p.mul_vec(y))) {
            return Err(Error::NonSplit("semisimple part does not vanish on the complement".into()));
        }
        if nil.basis().iter().any(|b| !nil.contains(&p.mul_vec(b))) {
            return Err(Error::NonSplit("semisimple part does not preserve the nilradical".into()));
        }
    }
    let p = split_basis(s, &nil, &complement)?;
    let inv = p.inverse().ok_or_else(|| Error::Internal("singular split basis".into()))?;
    let r = complement.len();
    // T(e_m) = ad((e_m)_a)_s
    let t_of: Vec<RatMatrix> = (0..dim)
        .map(|m| {
            let coeffs: Vec<Rational> = (0..r).map(|i| inv[(i, m)].clone()).collect();
            combination(&parts, &coeffs, dim)
        })
        .collect();
    let shadow = LieAlgebra::from_fn(s.labels().to_vec(), |i, j| {
        let mut v = s.bracket_basis_dense(i, j);
        let a = t_of[i].column(j);
        let b = t_of[j].column(i);
        for k in 0..dim {
            v[k] = &(&v[k] - &a[k]) + &b[k];
        }
        v
    })?;
    if !shadow.is_nilpotent() {
        return Err(Error::TheoremCheck("nilshadow is not nilpotent".into()));
    }
    for u in nil.basis() {
        for v in nil.basis() {
            if shadow.bracket(u, v) != s.bracket(u, v) {
                return Err(Error::TheoremCheck("nilshadow changes the bracket on the nilradical".into()));
            }
        }
    }
    let mut change_log = Vec::new();
    for (i, j) in pairs(dim) {
        let old = s.bracket_basis_dense(i, j);
        let new = shadow.bracket_basis_dense(i, j);
        for k in 0..dim {
            if old[k] != new[k] {
                change_log.push(ChangeEntry { i: i + 1, j: j + 1, k: k + 1, old: old[k].clone(), new: new[k].clone() });
            }
        }
    }
    // the shadow is the elementary deformation at t = -1
    let e = ExtensionData::from_split(s, &nil, &complement)?;
    let beta = parts.iter().map(|m| restrict_operator(m, &nil)).collect::<Result<Vec<_>>>()?;
    let d = DeformationDirection::with_zero_tau(&e, beta)?;
    if !is_elementary(&e, &d)? {
        return Err(Error::TheoremCheck("semisimple parts do not form an elementary direction".into()));
    }
    let deformed = deform(&e, &d, &Rational::from(-1))?;
    if !same_brackets(&deformed, &shadow.change_basis(&p, shadow.labels().to_vec())?) {
        return Err(Error::TheoremCheck("nilshadow differs from the deformation at t = -1".into()));
    }
    Ok(NilshadowResult { shadow, nilradical: nil, cartan, complement, semisimple_parts: parts, change_log })
}

/// One presentation `S = span(X) ⋉ H` with `H ⊇ n` of codimension one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PresentationCheck {
    pub element: Vec<Rational>,
    /// `dim TH^p(D_n ⋉ H)`.
    pub total_nilpotent_part: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThInvariance {
    pub total: Vec<usize>,
    pub shadow_betti: Vec<usize>,
    pub presentations: Vec<PresentationCheck>,
}

pub fn verify_th_invariance(s: &LieAlgebra) -> Result<ThInvariance> {
    let report = total_cohomology(s)?;
    verify_th_invariance_with(s, &report)
}

/// [`verify_th_invariance`] reusing an already computed report for `S`.
pub fn verify_th_invariance_with(s: &LieAlgebra, report: &GammaReport) -> Result<ThInvariance> {
    let total = report.total_dims();
    let ns = nilshadow(s)?;
    let shadow_betti = cohomology_dims(&ns.shadow, &LieModule::trivial(&ns.shadow))?;
    if shadow_betti != total {
        return Err(Error::TheoremCheck(format!("TH = {total:?} but nilshadow Betti numbers are {shadow_betti:?}")));
    }
    let presentations = (0..ns.complement.len())
        .into_par_iter()
        .map(|k| {
            let x = &ns.complement[k];
            let mut gens: Vec<Vec<Rational>> = ns.nilradical.basis().to_vec();
            gens.extend(ns.complement.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, v)| v.clone()));
            let ideal = Subspace::span(s.dim(), &gens);
            let pres = ideal_presentation(s, &ideal, x, &LieModule::trivial(s))?;
            let dn = nilpotent_part(&pres.d)?;
            let alg = semidirect(&[dn], &pres.h, None)?;
            let th = total_cohomology(&alg)?.total_dims();
            if th != total {
                return Err(Error::TheoremCheck(format!(
                    "TH(D_n ⋉ H) = {th:?} differs from TH(S) = {total:?} for complement vector {k}"
                )));
            }
            Ok(PresentationCheck { element: x.clone(), total_nilpotent_part: th })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ThInvariance { total, shadow_betti, presentations })
}

/// `dim TH^p((S₀ + D) ⋉ h)` and `dim TH^p(D ⋉ h)` for a semisimple
/// derivation `S₀` commuting with `D`.
pub fn semisimple_perturbation_totals(h: &LieAlgebra, d: &RatMatrix, s0: &RatMatrix) -> Result<(Vec<usize>, Vec<usize>)> {
    if !is_semisimple(s0)? {
        return Err(Error::NotSemisimple(0));
    }
    if !s0.commutator(d).is_zero() {
        return Err(Error::NotCommuting(0, 1));
    }
    let perturbed = total_cohomology(&semidirect(&[s0.add(d)], h, None)?)?.total_dims();
    let plain = total_cohomology(&semidirect(std::slice::from_ref(d), h, None)?)?.total_dims();
    Ok((perturbed, plain))
}

/// Samples of the family `{s_β : β ∈ Hom(a, t)}`.
pub const MAX_PLANE_SAMPLES: usize = 27;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PlaneSample {
    /// `β(X_i) = Σ_j c[i][j] t_j`.
    pub coefficients: Vec<Vec<i64>>,
    pub total: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeformationPlane {
    /// Basis of `{D ∈ Der(h) : [D, ad(a)] = 0, D|_{[a,a]} = 0}`.
    pub b_basis: Vec<RatMatrix>,
    /// Basis of the toral subalgebra spanned by the semisimple parts of `ad(X)|_h`.
    pub toral: Vec<RatMatrix>,
    /// `dim S / n`.
    pub r: usize,
    /// `dim a · dim t`.
    pub family_dim: usize,
    pub total: Vec<usize>,
    pub samples: Vec<PlaneSample>,
}

fn flatten(m: &RatMatrix) -> Vec<Rational> {
    m.row_vectors().concat()
}

/// Vectors of `a` spanning a complement of `ideal` inside a Cartan subalgebra.
pub fn cartan_complement(s: &LieAlgebra, ideal: &Subspace) -> Result<Vec<Vec<Rational>>> {
    let c = s.cartan_subalgebra()?;
    let out = complement_within(&c, ideal);
    if out.len() + ideal.dim() != s.dim() {
        return Err(Error::Internal("Cartan subalgebra does not complement the ideal".into()));
    }
    Ok(out)
}

fn grid(m: usize, seed: u64) -> Vec<Vec<i64>> {
    let full = (0..m).try_fold(1usize, |acc, _| acc.checked_mul(3).filter(|&x| x <= MAX_PLANE_SAMPLES));
    if let Some(count) = full {
        return (0..count)
            .map(|mut idx| {
                (0..m)
                    .map(|_| {
                        let d = (idx % 3) as i64;
                        idx /= 3;
                        if d == 2 { -1 } else { d }
                    })
                    .collect()
            })
            .collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![vec![0; m]];
    while out.len() < MAX_PLANE_SAMPLES {
        let v: Vec<i64> = (0..m).map(|_| rng.random_range(-1..=1)).collect();
        if !out.contains(&v) {
            out.push(v);
        }
    }
    out
}

pub fn deformation_plane(s: &LieAlgebra, h_ideal: &Subspace, a: &[Vec<Rational>]) -> Result<DeformationPlane> {
    if !s.is_ideal(h_ideal) || !h_ideal.contains_subspace(&s.derived_algebra()) {
        return Err(Error::NotAnIdeal);
    }
    let e = ExtensionData::from_split(s, h_ideal, a)?;
    let ra = a.len();
    let nh = e.h.dim();
    let der = e.h.derivation_space();
    let mut cond_cols: Vec<Vec<Rational>> = Vec::new();
    for b in &der {
        let mut col = Vec::new();
        for al in &e.alpha {
            col.extend(flatten(&b.commutator(al)));
        }
        for (i, j) in pairs(ra) {
            col.extend(b.mul_vec(&e.rho.get(i, j)));
        }
        cond_cols.push(col);
    }
    let b_basis: Vec<RatMatrix> = if der.is_empty() {
        Vec::new()
    } else {
        let rows = cond_cols[0].len();
        let sys = RatMatrix::from_columns(rows, &cond_cols);
        let kernel = if rows == 0 { (0..der.len()).map(|i| unit(der.len(), i)).collect() } else { sys.kernel_basis() };
        kernel.iter().map(|c| combination(&der, c, nh)).collect()
    };
    let mut toral: Vec<RatMatrix> = Vec::new();
    let mut span = Subspace::zero(nh * nh);
    for al in &e.alpha {
        let ss = semisimple_part(al)?;
        let v = flatten(&ss);
        if !span.contains(&v) {
            span = span.sum(&Subspace::span(nh * nh, &[v]));
            toral.push(ss);
        }
    }
    let b_span = Subspace::span(nh * nh, &b_basis.iter().map(flatten).collect::<Vec<_>>());
    for (i, t) in toral.iter().enumerate() {
        if !b_span.contains(&flatten(t)) {
            return Err(Error::TheoremCheck(format!("toral element {i} lies outside the deformation plane")));
        }
        if toral.iter().any(|u| !t.commutator(u).is_zero()) {
            return Err(Error::TheoremCheck("semisimple parts do not commute".into()));
        }
    }
    let r = s.dim() - s.nilradical()?.dim();
    if toral.len() < ra.min(r) {
        return Err(Error::TheoremCheck(format!("dim t = {} < min(dim a, r) = {}", toral.len(), ra.min(r))));
    }
    let total = total_cohomology(s)?.total_dims();
    let nt = toral.len();
    let samples = grid(ra * nt, 0)
        .into_par_iter()
        .map(|flat| {
            let coefficients: Vec<Vec<i64>> = if nt == 0 { vec![Vec::new(); ra] } else { flat.chunks(nt).map(<[i64]>::to_vec).collect() };
            let beta = coefficients
                .iter()
                .map(|row| combination(&toral, &row.iter().map(|&c| Rational::from(c)).collect::<Vec<_>>(), nh))
                .collect();
            let d = DeformationDirection::with_zero_tau(&e, beta)?;
            if !is_elementary(&e, &d)? {
                return Err(Error::TheoremCheck("sampled direction is not elementary".into()));
            }
            let th = total_cohomology(&deform(&e, &d, &Rational::one())?)?.total_dims();
            if th != total {
                return Err(Error::TheoremCheck(format!("sample {coefficients:?} has TH {th:?}, expected {total:?}")));
            }
            Ok(PlaneSample { coefficients, total: th })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(DeformationPlane { b_basis, toral, r, family_dim: ra * nt, total, samples })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{default_labels, direct_sum};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn h3() -> LieAlgebra {
        LieAlgebra::new(default_labels("x", 3), vec![(0, 1, vec![(2, q(1))])]).unwrap()
    }

    fn sec41() -> LieAlgebra {
        semidirect(&[RatMatrix::diagonal(&[q(1), q(1), q(2)])], &h3(), None).unwrap()
    }

    #[test]
    fn wedge_map_is_alternating() {
        let w = WedgeMap::from_entries(3, 2, vec![(2, 0, vec![q(1), q(2)])]).unwrap();
        assert_eq!(w.get(0, 2), vec![q(-1), q(-2)]);
        assert_eq!(w.get(2, 0), vec![q(1), q(2)]);
        assert_eq!(w.get(1, 1), vec![q(0), q(0)]);
        assert!(matches!(WedgeMap::from_entries(2, 1, vec![(1, 1, vec![q(1)])]), Err(Error::NotAlternating(1, 1))));
    }

    #[test]
    fn split_and_rebuild_sec41() {
        let s = sec41();
        let ideal = Subspace::coordinate(4, &[1, 2, 3]);
        let e = ExtensionData::from_split(&s, &ideal, &[unit(4, 0)]).unwrap();
        validate_extension(&e).unwrap();
        assert!(same_brackets(&build_extension(&e).unwrap(), &s));
    }

    #[test]
    fn central_rho_extension() {
        // a = Q^2, h = h3, ρ(X1 ∧ X2) = z, α = 0
        let a = LieAlgebra::abelian(2);
        let rho = WedgeMap::from_entries(2, 3, vec![(0, 1, vec![q(0), q(0), q(1)])]).unwrap();
        let e = ExtensionData::new(a, h3(), vec![RatMatrix::zeros(3, 3); 2], rho);
        let g = build_extension(&e).unwrap();
        assert_eq!(g.dim(), 5);
        assert!(g.is_nilpotent());
        let bad = ExtensionData { alpha: vec![RatMatrix::identity(3), RatMatrix::zeros(3, 3)], ..e };
        assert!(matches!(validate_extension(&bad), Err(Error::NotADerivation(0))));
    }

    #[test]
    fn prop62_one_dimensional_is_vacuous() {
        let s = sec41();
        let e = ExtensionData::from_split(&s, &Subspace::coordinate(4, &[1, 2, 3]), &[unit(4, 0)]).unwrap();
        let beta = vec![RatMatrix::from_i64_rows(&[&[0, 1, 0], &[0, 0, 0], &[0, 0, 0]])];
        let d = DeformationDirection::with_zero_tau(&e, beta).unwrap();
        let rep = check_prop62(&e, &d).unwrap();
        assert!(rep.all_pass() && rep.consistent());
    }

    #[test]
    fn prop62_detects_noncommuting_beta() {
        let a = LieAlgebra::abelian(2);
        let h = LieAlgebra::abelian(2);
        let e = ExtensionData::new(a, h, vec![RatMatrix::zeros(2, 2); 2], WedgeMap::zero(2, 2));
        let beta = vec![
            RatMatrix::from_i64_rows(&[&[0, 1], &[0, 0]]),
            RatMatrix::from_i64_rows(&[&[0, 0], &[1, 0]]),
        ];
        let d = DeformationDirection::with_zero_tau(&e, beta).unwrap();
        let rep = check_prop62(&e, &d).unwrap();
        assert!(!rep.conditions[0]);
        assert!(rep.consistent());
    }

    #[test]
    fn elementary_examples() {
        let s = sec41();
        let e = ExtensionData::from_split(&s, &Subspace::coordinate(4, &[1, 2, 3]), &[unit(4, 0)]).unwrap();
        let zero = DeformationDirection::with_zero_tau(&e, vec![RatMatrix::zeros(3, 3)]).unwrap();
        assert!(is_elementary(&e, &zero).unwrap());
        let ss = DeformationDirection::with_zero_tau(&e, vec![semisimple_part(&e.alpha[0]).unwrap()]).unwrap();
        assert!(is_elementary(&e, &ss).unwrap());
        // a nilpotent derivation not commuting with α
        let n = RatMatrix::from_i64_rows(&[&[0, 0, 0], &[0, 0, 0], &[1, 0, 0]]);
        assert!(e.h.is_derivation(&n));
        let d = DeformationDirection::with_zero_tau(&e, vec![n]).unwrap();
        assert!(!is_elementary(&e, &d).unwrap());
        let tau = WedgeMap::zero(1, 3);
        let withtau = DeformationDirection { beta: vec![RatMatrix::zeros(3, 3)], tau };
        assert!(is_elementary(&e, &withtau).unwrap());
    }

    #[test]
    fn split_on_two_dimensional_toral() {
        let h = LieAlgebra::abelian(2);
        let alpha = vec![RatMatrix::diagonal(&[q(1), q(0)]), RatMatrix::diagonal(&[q(0), q(1)])];
        let e = ExtensionData::new(LieAlgebra::abelian(2), h, alpha, WedgeMap::zero(2, 2));
        let beta = vec![RatMatrix::diagonal(&[q(2), q(3)]), RatMatrix::diagonal(&[q(-1), q(1)])];
        let d = DeformationDirection::with_zero_tau(&e, beta).unwrap();
        let cert = split_elementary(&e, &d, &[0]).unwrap();
        assert!(cert.all_pass());
        assert_eq!(cert.corners.len(), 8);
        let one = split_elementary(&e, &d, &[0, 1]).unwrap();
        assert_eq!(one.d1, d);
    }

    #[test]
    fn infinitesimal_deformations() {
        let mu = sec41();
        assert!(is_infinitesimal_deformation(&mu, &mu).unwrap().is_deformation);
        let zero = LieAlgebra::abelian(4);
        assert!(is_infinitesimal_deformation(&mu, &zero).unwrap().is_deformation);
        // σ = [x, u] = z is Lie but not a cocycle of h3 ⊕ span(u)
        let base = direct_sum(&h3(), &LieAlgebra::abelian(1));
        let sigma = LieAlgebra::new_unchecked(default_labels("x", 4), vec![(0, 3, vec![(0, q(1))])]).unwrap();
        let c = is_infinitesimal_deformation(&base, &sigma).unwrap();
        assert!(c.sigma_is_lie);
        assert!(!c.is_deformation);
        assert!(c.cocycle_residual.is_some());
        assert!(combine_brackets(&q(1), &base, &q(1), &sigma).validate().is_err());
    }

    #[test]
    fn nilshadow_of_sec41() {
        let s = sec41();
        let ns = nilshadow(&s).unwrap();
        assert!(same_brackets(&ns.shadow, &direct_sum(&LieAlgebra::abelian(1), &h3())));
        assert_eq!(ns.change_log.len(), 3);
        assert_eq!(cohomology_dims(&ns.shadow, &LieModule::trivial(&ns.shadow)).unwrap(), vec![1, 3, 4, 3, 1]);
        let inv = verify_th_invariance(&s).unwrap();
        assert_eq!(inv.total, vec![1, 3, 4, 3, 1]);
        assert_eq!(inv.presentations.len(), 1);
    }

    #[test]
    fn nilshadow_trivial_cases() {
        let two = LieAlgebra::new(default_labels("x", 2), vec![(0, 1, vec![(1, q(1))])]).unwrap();
        assert!(nilshadow(&two).unwrap().shadow.is_abelian());
        let h = h3();
        let ns = nilshadow(&h).unwrap();
        assert_eq!(ns.shadow, h);
        assert!(ns.complement.is_empty());
        assert!(ns.change_log.is_empty());
    }

    #[test]
    fn plane_for_sec41() {
        let s = sec41();
        let n = s.nilradical().unwrap();
        let a = cartan_complement(&s, &n).unwrap();
        let plane = deformation_plane(&s, &n, &a).unwrap();
        assert!(plane.b_basis.len() >= 1);
        assert_eq!(plane.toral.len(), 1);
        assert_eq!(plane.samples.len(), 3);
        assert!(plane.samples.iter().all(|x| x.total == vec![1, 3, 4, 3, 1]));
    }

    #[test]
    fn perturbation_by_commuting_semisimple() {
        let d = RatMatrix::from_i64_rows(&[&[1, 1, 0], &[0, 1, 0], &[0, 0, 2]]);
        let s0 = RatMatrix::diagonal(&[q(3), q(3), q(-1)]);
        let (a, b) = semisimple_perturbation_totals(&LieAlgebra::abelian(3), &d, &s0).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn grid_sizes() {
        assert_eq!(grid(0, 0).len(), 1);
        assert_eq!(grid(2, 0).len(), 9);
        assert_eq!(grid(3, 0).len(), 27);
        let g = grid(4, 0);
        assert_eq!(g.len(), 27);
        assert_eq!(g[0], vec![0; 4]);
    }
}
