//! The standard filiform algebras `f_n`, their toral extensions `s_n`, and
//! the weight diagrams of `H*(f_n)`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::cohomology::{cohomology, joint_weight_multiplicities, lie_derivative_on_cochains, ExteriorBasis};
use crate::error::{Error, Result};
use crate::gamma::{total_cohomology, GammaReport};
use crate::liealg::{semidirect, LieAlgebra};
use crate::linalg::sparse::dense_to_sparse;
use crate::linalg::RatMatrix;
use crate::module::{Character, LieModule};
use crate::rational::Rational;

/// Largest `n` for which the diagram is computed.
pub const MAX_DIAGRAM_N: usize = 8;
/// Largest `n` for which `Γ∘(s_n)` is computed both ways.
pub const MAX_SN: usize = 7;

/// Integer Laurent polynomial in `q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct LaurentPoly(BTreeMap<i64, i64>);

impl LaurentPoly {
    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut p = LaurentPoly::default();
        p.add_term(exp, coeff);
        p
    }

    fn add_term(&mut self, exp: i64, coeff: i64) {
        let c = self.0.entry(exp).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.0.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.0.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.0.iter().map(|(e, c)| (*e, *c))
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in other.terms() {
            out.add_term(e, c);
        }
        out
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::default();
        for (e1, c1) in self.terms() {
            for (e2, c2) in other.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly(self.0.iter().map(|(e, c)| (e + k, *c)).collect())
    }

    /// Invariant under `q ↦ q⁻¹`.
    pub fn is_palindromic(&self) -> bool {
        self.terms().all(|(e, c)| self.coeff(-e) == c)
    }

    pub fn value_at_one(&self) -> i64 {
        self.0.values().sum()
    }
}

/// Gaussian binomial `[m choose k]` in the variable `q^step`.
pub fn gaussian_binomial(m: usize, k: usize, step: i64) -> LaurentPoly {
    if k > m {
        return LaurentPoly::default();
    }
    // row[j] = [i choose j]
    let mut row = vec![LaurentPoly::monomial(0, 1)];
    for i in 1..=m {
        let mut next = vec![LaurentPoly::default(); (i + 1).min(k + 1)];
        for (j, slot) in next.iter_mut().enumerate() {
            let mut v = LaurentPoly::default();
            if j >= 1 {
                v = v.add(&row[j - 1]);
            }
            if j < row.len() && j < i {
                v = v.add(&row[j].shift(step * j as i64));
            }
            *slot = v;
        }
        row = next;
    }
    row.get(k).cloned().unwrap_or_default()
}

/// `sl(2)`-character of `Λ^p V_n`.
pub fn exterior_character(n: usize, p: usize) -> Result<LaurentPoly> {
    if p > n + 1 {
        return Err(Error::OutOfRange(format!("p = {p} exceeds n + 1 = {}", n + 1)));
    }
    let shift = -((p * (n + 1 - p)) as i64);
    Ok(gaussian_binomial(n + 1, p, 2).shift(shift))
}

/// Multiplicity of each highest weight `w ≥ 0` in `Λ^p V_n`.
pub fn highest_weight_multiplicities(n: usize, p: usize) -> Result<BTreeMap<i64, usize>> {
    let ch = exterior_character(n, p)?;
    let mut out = BTreeMap::new();
    for (w, c) in ch.terms() {
        if w < 0 {
            continue;
        }
        let m = c - ch.coeff(w + 2);
        if m < 0 {
            return Err(Error::Internal("character coefficients are not unimodal".into()));
        }
        if m > 0 {
            out.insert(w, m as usize);
        }
    }
    Ok(out)
}

/// `sl(2)`-weights `n, n-2, ..., -n` of `V_n`, in basis order.
pub fn vn_weights(n: usize) -> Vec<i64> {
    (0..=n).map(|k| n as i64 - 2 * k as i64).collect()
}

fn weight_label(w: i64) -> String {
    format!("e{w}")
}

/// `f_n` with basis `(E, e_n, e_{n-2}, ..., e_{-n})` and `[E, e_{n-2k}] = e_{n-2k+2}`.
pub fn filiform(n: usize) -> Result<LieAlgebra> {
    if n == 0 {
        return Err(Error::OutOfRange("filiform algebras need n ≥ 1".into()));
    }
    let mut labels = vec!["E".to_string()];
    labels.extend(vn_weights(n).into_iter().map(weight_label));
    let entries = (1..=n).map(|k| (0, 1 + k, vec![(k, Rational::one())]));
    LieAlgebra::new(labels, entries)
}

/// Derivations of `f_n` giving the actions of `H` and `I`.
pub fn toral_derivations(n: usize) -> (RatMatrix, RatMatrix) {
    let mut h = vec![Rational::from(2)];
    h.extend(vn_weights(n).into_iter().map(Rational::from));
    let mut i = vec![Rational::zero()];
    i.extend((0..=n).map(|_| Rational::one()));
    (RatMatrix::diagonal(&h), RatMatrix::diagonal(&i))
}

/// `s_n = span(H, I) ⋉ f_n`, basis `(H, I, E, e_n, ..., e_{-n})`.
pub fn s_n_algebra(n: usize) -> Result<LieAlgebra> {
    let f = filiform(n)?;
    let (h, i) = toral_derivations(n);
    semidirect(&[h, i], &f, Some(vec!["H".into(), "I".into()]))
}

/// `(λ(H), λ(I))` as a character of `s_n`.
pub fn s_n_character(n: usize, w: (i64, i64)) -> Character {
    let mut v = vec![Rational::zero(); n + 4];
    v[0] = Rational::from(w.0);
    v[1] = Rational::from(w.1);
    Character::from_values_unchecked(v)
}

fn pair_of(c: &Character) -> Result<(i64, i64)> {
    let v = c.values();
    if v[2..].iter().any(|x| !x.is_zero()) {
        return Err(Error::Internal("character of s_n does not vanish on f_n".into()));
    }
    let get = |x: &Rational| x.to_i64().ok_or_else(|| Error::Internal("non-integral weight".into()));
    Ok((get(&v[0])?, get(&v[1])?))
}

/// Vertices `0, α, α+β₀, ..., α+β₀+…+β_n, β₀+…+β_n, ..., β_n` of `P_n`.
pub fn polygon_vertices(n: usize) -> Vec<(i64, i64)> {
    let beta = |k: usize| (n as i64 - 2 * k as i64, 1i64);
    let add = |a: (i64, i64), b: (i64, i64)| (a.0 + b.0, a.1 + b.1);
    let mut out = vec![(0, 0), (2, 0)];
    let mut acc = (2, 0);
    for k in 0..=n {
        acc = add(acc, beta(k));
        out.push(acc);
    }
    for start in 0..=n {
        out.push((start..=n).fold((0, 0), |s, k| add(s, beta(k))));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Marker {
    Diamond,
    Bullet,
    Both,
}

impl Marker {
    fn from_counts(d: usize, b: usize) -> Option<Marker> {
        match (d > 0, b > 0) {
            (true, true) => Some(Marker::Both),
            (true, false) => Some(Marker::Diamond),
            (false, true) => Some(Marker::Bullet),
            (false, false) => None,
        }
    }

    fn symbol(self) -> char {
        match self {
            Marker::Diamond => 'D',
            Marker::Bullet => 'o',
            Marker::Both => 'B',
        }
    }
}

/// A negated `a`-weight of `H^p(f_n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DiagramPoint {
    pub degree: usize,
    pub weight: (i64, i64),
    pub multiplicity: usize,
    pub diamonds: usize,
    pub bullets: usize,
    pub marker: Marker,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiliformDiagram {
    pub n: usize,
    pub betti: Vec<usize>,
    pub points: Vec<DiagramPoint>,
}

impl FiliformDiagram {
    pub fn weights(&self) -> BTreeSet<(i64, i64)> {
        self.points.iter().map(|p| p.weight).collect()
    }

    pub fn weights_with(&self, marker: Marker) -> BTreeSet<(i64, i64)> {
        self.points
            .iter()
            .filter(|p| p.marker == marker || p.marker == Marker::Both)
            .map(|p| p.weight)
            .collect()
    }

    /// Multiplicity of weight `w` in degree `p`.
    pub fn multiplicity(&self, p: usize, w: (i64, i64)) -> usize {
        self.points.iter().filter(|x| x.degree == p && x.weight == w).map(|x| x.multiplicity).sum()
    }

    /// Points merged over degrees.
    pub fn merged(&self) -> BTreeMap<(i64, i64), (usize, Marker)> {
        let mut acc: BTreeMap<(i64, i64), (usize, usize, usize)> = BTreeMap::new();
        for p in &self.points {
            let e = acc.entry(p.weight).or_default();
            e.0 += p.multiplicity;
            e.1 += p.diamonds;
            e.2 += p.bullets;
        }
        acc.into_iter()
            .map(|(w, (m, d, b))| (w, (m, Marker::from_counts(d, b).expect("nonempty"))))
            .collect()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("degree,h,i,multiplicity,marker\n");
        for p in &self.points {
            let marker = serde_json::to_value(p.marker).expect("marker");
            let _ = writeln!(out, "{},{},{},{},{}", p.degree, p.weight.0, p.weight.1, p.multiplicity, marker.as_str().unwrap_or(""));
        }
        out
    }

    /// Text rendering: rows are `λ(I)` from the top, columns `λ(H)`; `D`
    /// diamond, `o` bullet, `B` both, followed by the multiplicity when it exceeds one.
    pub fn text_grid(&self) -> String {
        let merged = self.merged();
        render_grid(merged.iter().map(|(w, (m, mk))| (*w, format!("{}{}", mk.symbol(), if *m > 1 { m.to_string() } else { String::new() }))))
    }
}

/// Renders labelled integer points, first coordinate across.
pub fn render_grid<I: IntoIterator<Item = ((i64, i64), String)>>(cells: I) -> String {
    let cells: BTreeMap<(i64, i64), String> = cells.into_iter().collect();
    if cells.is_empty() {
        return String::new();
    }
    let xs = cells.keys().map(|k| k.0);
    let (x0, x1) = (xs.clone().min().unwrap_or(0), xs.max().unwrap_or(0));
    let ys = cells.keys().map(|k| k.1);
    let (y0, y1) = (ys.clone().min().unwrap_or(0), ys.max().unwrap_or(0));
    let width = cells.values().map(String::len).max().unwrap_or(1).max(1);
    let mut out = String::new();
    for y in (y0..=y1).rev() {
        let _ = write!(out, "{y:>3} |");
        for x in x0..=x1 {
            let cell = cells.get(&(x, y)).map_or(".", String::as_str);
            let _ = write!(out, " {cell:>width$}");
        }
        out.push('\n');
    }
    let _ = write!(out, "    +");
    for x in x0..=x1 {
        let _ = write!(out, " {:>width$}", x);
    }
    out.push('\n');
    out
}

/// Negated `a`-weight `Σ (w_s, 1)` of the basis form `e*_S` on `V_n`.
fn form_weight(mask: u32, weights: &[i64]) -> (i64, i64) {
    let mut h = 0;
    let mut c = 0;
    for (s, w) in weights.iter().enumerate() {
        if mask >> s & 1 == 1 {
            h += w;
            c += 1;
        }
    }
    (h, c)
}

/// Per degree of `ΛV_n*`: negated weights of `E`-invariants and of `E`-coinvariants.
fn invariant_coinvariant_weights(n: usize) -> Result<Vec<(BTreeMap<(i64, i64), usize>, BTreeMap<(i64, i64), usize>)>> {
    let v = LieAlgebra::abelian(n + 1);
    let weights = vn_weights(n);
    // ad E on V_n: e_{n-2k} ↦ e_{n-2k+2}
    let mut raise = RatMatrix::zeros(n + 1, n + 1);
    for k in 1..=n {
        raise[(k - 1, k)] = Rational::one();
    }
    let ext = ExteriorBasis::new(n + 1)?;
    let trivial = LieModule::trivial(&v);
    (0..=n + 1)
        .into_par_iter()
        .map(|p| {
            let theta = lie_derivative_on_cochains(&v, &raise, &RatMatrix::zeros(1, 1), &trivial, p)?;
            let subsets = ext.subsets(p);
            let mut blocks: BTreeMap<(i64, i64), Vec<usize>> = BTreeMap::new();
            for (idx, &m) in subsets.iter().enumerate() {
                blocks.entry(form_weight(m, &weights)).or_default().push(idx);
            }
            let mut inv = BTreeMap::new();
            let mut coinv = BTreeMap::new();
            for (w, idx) in &blocks {
                let cols: Vec<Vec<Rational>> = idx.iter().map(|&j| theta.column(j)).collect();
                let kernel = idx.len() - RatMatrix::from_columns(theta.rows(), &cols).rank();
                let rows: Vec<Vec<Rational>> = idx.iter().map(|&i| theta.row(i).to_vec()).collect();
                let cokernel = idx.len() - RatMatrix::from_rows(rows).rank();
                if kernel > 0 {
                    inv.insert(*w, kernel);
                }
                if cokernel > 0 {
                    coinv.insert(*w, cokernel);
                }
            }
            Ok((inv, coinv))
        })
        .collect()
}

/// Basis mask of `e*_{w_1} ∧ ... ` on `f_n` (index 0 is `E`).
fn f_mask(n: usize, ws: &[i64], with_e: bool) -> u32 {
    let mut m = u32::from(with_e);
    for w in ws {
        let k = (n as i64 - w) / 2;
        m |= 1 << (1 + k);
    }
    m
}

pub fn filiform_cohomology_diagram(n: usize) -> Result<FiliformDiagram> {
    if n == 0 || n > MAX_DIAGRAM_N {
        return Err(Error::OutOfRange(format!("diagram needs 1 ≤ n ≤ {MAX_DIAGRAM_N}")));
    }
    let f = filiform(n)?;
    let triv = LieModule::trivial(&f);
    let coh = cohomology(&f, &triv)?;
    let (dh, di) = toral_derivations(n);
    let zero = RatMatrix::zeros(1, 1);
    let th = coh.induced_theta(&dh, &zero)?;
    let ti = coh.induced_theta(&di, &zero)?;
    let betti = coh.dims();
    // direct route: joint θ₀ weights on H^p(f_n), negated
    let direct: Vec<BTreeMap<(i64, i64), usize>> = (0..betti.len())
        .map(|p| {
            let w = joint_weight_multiplicities(&[th[p].clone(), ti[p].clone()], betti[p])?;
            w.into_iter()
                .map(|(k, m)| {
                    let h = k[0].to_i64().ok_or_else(|| Error::Internal("non-integral weight".into()))?;
                    let i = k[1].to_i64().ok_or_else(|| Error::Internal("non-integral weight".into()))?;
                    Ok(((-h, -i), m))
                })
                .collect()
        })
        .collect::<Result<_>>()?;
    let split = invariant_coinvariant_weights(n)?;
    let mut points = Vec::new();
    for p in 0..betti.len() {
        let diamonds = if p <= n + 1 { split[p].0.clone() } else { BTreeMap::new() };
        let bullets: BTreeMap<(i64, i64), usize> = if p >= 1 {
            split[p - 1].1.iter().map(|((h, i), m)| ((h + 2, *i), *m)).collect()
        } else {
            BTreeMap::new()
        };
        let mut keys: BTreeSet<(i64, i64)> = diamonds.keys().copied().collect();
        keys.extend(bullets.keys().copied());
        let mut combined = BTreeMap::new();
        for w in keys {
            let d = diamonds.get(&w).copied().unwrap_or(0);
            let b = bullets.get(&w).copied().unwrap_or(0);
            combined.insert(w, d + b);
            points.push(DiagramPoint {
                degree: p,
                weight: w,
                multiplicity: d + b,
                diamonds: d,
                bullets: b,
                marker: Marker::from_counts(d, b).expect("nonempty"),
            });
        }
        if combined != direct[p] {
            return Err(Error::TheoremCheck(format!("H^{p}(f_{n}) weights disagree with the invariant/coinvariant split")));
        }
        // highest weights of Λ^p V_n and lowest weights of Λ^{p-1} V_n from the character
        let mut expect_d = BTreeMap::new();
        if p <= n + 1 {
            for (w, m) in highest_weight_multiplicities(n, p)? {
                expect_d.insert((-w, p as i64), m);
            }
        }
        let mut expect_b = BTreeMap::new();
        if p >= 1 {
            for (w, m) in highest_weight_multiplicities(n, p - 1)? {
                expect_b.insert((w + 2, p as i64 - 1), m);
            }
        }
        if expect_d != diamonds || expect_b != bullets {
            return Err(Error::TheoremCheck(format!("H^{p}(f_{n}) markers disagree with the character formula")));
        }
    }
    // the two explicit families of classes
    for p in 1..betti.len() {
        let mut checks = Vec::new();
        if p <= n + 1 {
            let ws: Vec<i64> = (0..p as i64).map(|k| -(n as i64) + 2 * k).collect();
            let weight = (ws.iter().sum::<i64>(), p as i64);
            checks.push((f_mask(n, &ws, false), weight));
        }
        let ws: Vec<i64> = (0..p as i64 - 1).map(|k| n as i64 - 2 * k).collect();
        let weight = (ws.iter().sum::<i64>() + 2, p as i64 - 1);
        checks.push((f_mask(n, &ws, true), weight));
        for (mask, weight) in checks {
            let idx = coh.complex.cochain_index(mask, 0);
            let v = dense_to_sparse(&{
                let mut d = vec![Rational::zero(); coh.complex.degree_dim(p)];
                d[idx] = Rational::one();
                d
            });
            let coords = coh.spaces[p].coordinates(&v)?;
            if coords.iter().all(Rational::is_zero) {
                return Err(Error::TheoremCheck(format!("explicit class of degree {p} is a coboundary")));
            }
            if direct[p].get(&weight).copied().unwrap_or(0) == 0 {
                return Err(Error::TheoremCheck(format!("weight {weight:?} missing from H^{p}(f_{n})")));
            }
        }
    }
    Ok(FiliformDiagram { n, betti, points })
}

fn weight_maps<S: serde::Serializer>(
    ms: &[BTreeMap<(i64, i64), usize>],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(ms.iter().map(|m| m.iter().collect::<Vec<_>>()))
}

/// `Γ∘(s_n)` computed directly and from the diagram of `f_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SnGamma {
    pub n: usize,
    pub report: GammaReport,
    /// `dim H^p(s_n, λ)` from `m_p(-λ) + 2 m_{p-1}(-λ) + m_{p-2}(-λ)`.
    #[serde(serialize_with = "weight_maps")]
    pub from_diagram: Vec<BTreeMap<(i64, i64), usize>>,
    pub vertices: Vec<(i64, i64)>,
}

impl SnGamma {
    pub fn gamma_union(&self) -> BTreeSet<(i64, i64)> {
        self.from_diagram.iter().flat_map(|m| m.keys().copied()).collect()
    }
}

pub fn gamma_s_n(n: usize) -> Result<SnGamma> {
    if n == 0 || n > MAX_SN {
        return Err(Error::OutOfRange(format!("s_n needs 1 ≤ n ≤ {MAX_SN}")));
    }
    let s = s_n_algebra(n)?;
    let report = total_cohomology(&s)?;
    let diagram = filiform_cohomology_diagram(n)?;
    let mut from_diagram = Vec::new();
    for p in 0..=s.dim() {
        let mut m: BTreeMap<(i64, i64), usize> = BTreeMap::new();
        for (shift, factor) in [(0usize, 1usize), (1, 2), (2, 1)] {
            if p < shift {
                continue;
            }
            for pt in diagram.points.iter().filter(|x| x.degree == p - shift) {
                *m.entry(pt.weight).or_insert(0) += factor * pt.multiplicity;
            }
        }
        from_diagram.push(m);
    }
    for (p, expect) in from_diagram.iter().enumerate() {
        let direct: BTreeMap<(i64, i64), usize> = report.degrees[p]
            .survivors
            .iter()
            .map(|(c, d)| Ok((pair_of(c)?, *d)))
            .collect::<Result<_>>()?;
        if &direct != expect {
            return Err(Error::TheoremCheck(format!("Γ∘^{p}(s_{n}) differs between the two routes")));
        }
    }
    let vertices = polygon_vertices(n);
    let union: BTreeSet<(i64, i64)> = from_diagram.iter().flat_map(|m| m.keys().copied()).collect();
    if let Some(v) = vertices.iter().find(|v| !union.contains(v)) {
        return Err(Error::TheoremCheck(format!("vertex {v:?} of P_{n} is not in Γ∘(s_{n})")));
    }
    Ok(SnGamma { n, report, from_diagram, vertices })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sn_gamma_serializes_to_json() {
        let g = gamma_s_n(2).unwrap();
        let v = serde_json::to_value(&g).unwrap();
        assert_eq!(v["from_diagram"].as_array().unwrap().len(), g.from_diagram.len());
    }
    use crate::weights::adjoint_characters;

    fn brute(n: usize, p: usize) -> BTreeMap<i64, i64> {
        let ws = vn_weights(n);
        let mut out = BTreeMap::new();
        for m in 0u32..(1 << (n + 1)) {
            if m.count_ones() as usize == p {
                *out.entry(form_weight(m, &ws).0).or_insert(0) += 1;
            }
        }
        out
    }

    #[test]
    fn character_examples() {
        assert_eq!(exterior_character(4, 0).unwrap(), LaurentPoly::monomial(0, 1));
        let ch = exterior_character(4, 1).unwrap();
        assert_eq!(ch.terms().collect::<Vec<_>>(), vec![(-4, 1), (-2, 1), (0, 1), (2, 1), (4, 1)]);
        let ch2 = exterior_character(4, 2).unwrap();
        let coeffs: Vec<i64> = (-3..=3).map(|k| ch2.coeff(2 * k)).collect();
        assert_eq!(coeffs, vec![1, 1, 2, 2, 2, 1, 1]);
        assert!(matches!(exterior_character(2, 4), Err(Error::OutOfRange(_))));
    }

    #[test]
    fn character_matches_subsets() {
        for n in 1..=6 {
            for p in 0..=n + 1 {
                let ch = exterior_character(n, p).unwrap();
                let b = brute(n, p);
                assert_eq!(ch.terms().collect::<BTreeMap<_, _>>(), b);
                assert!(ch.is_palindromic());
            }
        }
    }

    #[test]
    fn highest_weights() {
        assert_eq!(highest_weight_multiplicities(4, 1).unwrap(), [(4, 1)].into_iter().collect());
        assert_eq!(highest_weight_multiplicities(4, 2).unwrap(), [(2, 1), (6, 1)].into_iter().collect());
    }

    #[test]
    fn filiform_basics() {
        let f1 = filiform(1).unwrap();
        assert_eq!(f1.dim(), 3);
        assert_eq!(f1.structure_constants().len(), 1);
        let f4 = filiform(4).unwrap();
        assert!(f4.is_nilpotent());
        assert_eq!(f4.lower_central_series().len(), 6);
        let f2 = filiform(2).unwrap();
        let b = crate::cohomology::cohomology_dims(&f2, &LieModule::trivial(&f2)).unwrap();
        assert_eq!(b, vec![1, 2, 2, 2, 1]);
    }

    #[test]
    fn s_n_roots() {
        let s = s_n_algebra(4).unwrap();
        let chars: BTreeSet<(i64, i64)> = adjoint_characters(&s).unwrap().iter().map(|c| pair_of(c).unwrap()).collect();
        let expect: BTreeSet<(i64, i64)> = [(0, 0), (2, 0), (4, 1), (2, 1), (0, 1), (-2, 1), (-4, 1)].into_iter().collect();
        assert_eq!(chars, expect);
        assert_eq!(s.derived_algebra().dim(), 6);
        assert_eq!(s.cartan_subalgebra().unwrap().dim(), 2);
    }

    #[test]
    fn f4_diagram() {
        let d = filiform_cohomology_diagram(4).unwrap();
        let diamonds: BTreeSet<(i64, i64)> =
            [(0, 0), (-4, 1), (-6, 2), (-2, 2), (-6, 3), (-2, 3), (-4, 4), (0, 5)].into_iter().collect();
        let bullets: BTreeSet<(i64, i64)> =
            [(2, 0), (6, 1), (8, 2), (4, 2), (8, 3), (4, 3), (6, 4), (2, 5)].into_iter().collect();
        assert_eq!(d.weights_with(Marker::Diamond), diamonds);
        assert_eq!(d.weights_with(Marker::Bullet), bullets);
        assert!(d.text_grid().contains('D'));
    }

    #[test]
    fn polygon() {
        let v = polygon_vertices(4);
        assert_eq!(v.len(), 12);
        assert_eq!(v[2], (6, 1));
        assert_eq!(v[11], (-4, 1));
    }

    #[test]
    fn gamma_s1_and_s2() {
        for n in 1..=2 {
            let g = gamma_s_n(n).unwrap();
            assert!(g.report.violations.is_empty());
        }
    }
}
