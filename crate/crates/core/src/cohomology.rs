//! Chevalley–Eilenberg complexes, cohomology, and the Lie derivative action.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::liealg::{LieAlgebra, Subspace};
use crate::linalg::sparse::{dense_to_sparse, sparse_to_dense};
use crate::linalg::{is_semisimple, rational_eigenvalues, EchelonBasis, RatMatrix, SparseMatrix, SparseVec};
use crate::module::LieModule;
use crate::rational::Rational;

pub use crate::module::Character;

/// Largest algebra dimension accepted by the cochain machinery.
pub const MAX_DIM: usize = 16;

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut r: usize = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

/// Lexicographically ordered `p`-subsets of `{0, .., n-1}` as bitmasks.
#[derive(Debug)]
pub struct ExteriorBasis {
    n: usize,
    by_degree: Vec<Vec<u32>>,
    index: Vec<u32>,
}

impl ExteriorBasis {
    pub fn new(n: usize) -> Result<Self> {
        if n > MAX_DIM {
            return Err(Error::TooLarge(n));
        }
        let mut by_degree = vec![Vec::new(); n + 1];
        let mut index = vec![0u32; 1 << n];
        for (p, list) in by_degree.iter_mut().enumerate() {
            let mut combo: Vec<usize> = (0..p).collect();
            loop {
                let mask = combo.iter().fold(0u32, |m, &i| m | (1 << i));
                index[mask as usize] = list.len() as u32;
                list.push(mask);
                // next combination in lexicographic order
                let mut i = p;
                loop {
                    if i == 0 {
                        break;
                    }
                    i -= 1;
                    if combo[i] < n - p + i {
                        combo[i] += 1;
                        for j in i + 1..p {
                            combo[j] = combo[j - 1] + 1;
                        }
                        i = usize::MAX;
                        break;
                    }
                }
                if i != usize::MAX {
                    break;
                }
            }
        }
        Ok(ExteriorBasis { n, by_degree, index })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn subsets(&self, p: usize) -> &[u32] {
        &self.by_degree[p]
    }

    pub fn count(&self, p: usize) -> usize {
        self.by_degree.get(p).map_or(0, Vec::len)
    }

    pub fn index_of(&self, mask: u32) -> usize {
        self.index[mask as usize] as usize
    }
}

fn elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).collect()
}

fn sign(exp: usize) -> Rational {
    if exp % 2 == 0 {
        Rational::one()
    } else {
        Rational::from(-1)
    }
}

fn below(mask: u32, k: usize) -> usize {
    (mask & ((1u32 << k) - 1)).count_ones() as usize
}

/// Graded cochain spaces `Λ^p g* ⊗ V` with their coboundaries.
#[derive(Debug, Clone)]
pub struct CochainComplex {
    ext: Arc<ExteriorBasis>,
    module_dim: usize,
    d: Vec<SparseMatrix>,
}

impl CochainComplex {
    pub fn algebra_dim(&self) -> usize {
        self.ext.n()
    }

    pub fn module_dim(&self) -> usize {
        self.module_dim
    }

    pub fn degree_dim(&self, p: usize) -> usize {
        self.ext.count(p) * self.module_dim
    }

    pub fn degree_dims(&self) -> Vec<usize> {
        (0..=self.algebra_dim()).map(|p| self.degree_dim(p)).collect()
    }

    /// `d_p : C^p -> C^{p+1}`; for `p = dim` this is the zero map to a zero space.
    pub fn d(&self, p: usize) -> &SparseMatrix {
        &self.d[p]
    }

    pub fn exterior(&self) -> &ExteriorBasis {
        &self.ext
    }

    /// Index of basis cochain `e^S ⊗ v_a`.
    pub fn cochain_index(&self, mask: u32, a: usize) -> usize {
        self.ext.index_of(mask) * self.module_dim + a
    }

    /// Ranks of all coboundaries, computed per degree in parallel.
    pub fn ranks(&self) -> Vec<usize> {
        self.d.par_iter().map(SparseMatrix::rank).collect()
    }

    /// Cohomology dimensions, with the Euler characteristic checked.
    pub fn cohomology_dims(&self) -> Result<Vec<usize>> {
        let ranks = self.ranks();
        let n = self.algebra_dim();
        let dims: Vec<usize> = (0..=n)
            .map(|p| self.degree_dim(p) - ranks[p] - if p > 0 { ranks[p - 1] } else { 0 })
            .collect();
        check_euler(&dims, &self.degree_dims())?;
        Ok(dims)
    }
}

fn check_euler(dims: &[usize], chain_dims: &[usize]) -> Result<()> {
    let alt = |v: &[usize]| -> i64 {
        v.iter()
            .enumerate()
            .map(|(p, &x)| if p % 2 == 0 { x as i64 } else { -(x as i64) })
            .sum()
    };
    if alt(dims) != alt(chain_dims) {
        return Err(Error::Internal("Euler characteristic mismatch".into()));
    }
    Ok(())
}

/// Assembles the coboundary matrices and checks `d ∘ d = 0`.
pub fn build_complex(l: &LieAlgebra, v: &LieModule) -> Result<CochainComplex> {
    let n = l.dim();
    let ext = Arc::new(ExteriorBasis::new(n)?);
    v.validate(l)?;
    let m = v.dim();
    let d: Vec<SparseMatrix> = (0..=n).into_par_iter().map(|p| coboundary(l, v, &ext, p)).collect();
    let complex = CochainComplex { ext, module_dim: m, d };
    verify_dd(&complex)?;
    COMPLEXES_VERIFIED.fetch_add(1, Ordering::Relaxed);
    Ok(complex)
}

static COMPLEXES_VERIFIED: AtomicUsize = AtomicUsize::new(0);

/// Number of complexes built so far in this process, each with `d ∘ d = 0` checked.
pub fn complexes_verified() -> usize {
    COMPLEXES_VERIFIED.load(Ordering::Relaxed)
}

fn verify_dd(c: &CochainComplex) -> Result<()> {
    let n = c.algebra_dim();
    let bad = (0..n).into_par_iter().find_any(|&p| !c.d[p + 1].mul(&c.d[p]).is_zero());
    match bad {
        Some(p) => Err(Error::Internal(format!("d∘d ≠ 0 in degree {p}"))),
        None => Ok(()),
    }
}

fn coboundary(l: &LieAlgebra, v: &LieModule, ext: &ExteriorBasis, p: usize) -> SparseMatrix {
    let n = l.dim();
    let m = v.dim();
    let cols = ext.count(p) * m;
    if p == n {
        return SparseMatrix::zeros(0, cols);
    }
    let rows = ext.count(p + 1) * m;
    let mut d = SparseMatrix::zeros(rows, cols);
    let rho_sparse: Vec<Vec<(usize, usize, Rational)>> = v
        .rho()
        .iter()
        .map(|r| {
            let mut out = Vec::new();
            for a in 0..m {
                for b in 0..m {
                    if !r[(a, b)].is_zero() {
                        out.push((a, b, r[(a, b)].clone()));
                    }
                }
            }
            out
        })
        .collect();
    for (ti, &t) in ext.subsets(p + 1).iter().enumerate() {
        let els = elements(t);
        for (i, &x) in els.iter().enumerate() {
            let s = t & !(1 << x);
            let si = ext.index_of(s);
            let sg = sign(i);
            for (a, b, val) in &rho_sparse[x] {
                d.add_entry(ti * m + a, si * m + b, &sg * val);
            }
        }
        for i in 0..els.len() {
            for j in i + 1..els.len() {
                let r = t & !(1 << els[i]) & !(1 << els[j]);
                for (k, c) in l.bracket_basis(els[i], els[j]) {
                    if r & (1 << k) != 0 {
                        continue;
                    }
                    let s = r | (1 << k);
                    let si = ext.index_of(s);
                    let val = &sign(i + j + below(r, *k)) * c;
                    for a in 0..m {
                        d.add_entry(ti * m + a, si * m + a, val.clone());
                    }
                }
            }
        }
    }
    d
}

/// `θ_ρ(D)` on `Λ^p h* ⊗ V`: `-D̄ᵗ ⊗ Id + Id ⊗ ρ(D)`.
fn theta_matrix(ext: &ExteriorBasis, m: usize, d: &RatMatrix, rho_d: &RatMatrix, p: usize) -> SparseMatrix {
    let n = ext.n();
    let size = ext.count(p) * m;
    let mut out = SparseMatrix::zeros(size, size);
    for (ti, &t) in ext.subsets(p).iter().enumerate() {
        let els = elements(t);
        for (i, &x) in els.iter().enumerate() {
            let rest = t & !(1 << x);
            for k in 0..n {
                let dk = &d[(k, x)];
                if dk.is_zero() {
                    continue;
                }
                if k == x {
                    for a in 0..m {
                        out.add_entry(ti * m + a, ti * m + a, -dk);
                    }
                } else if rest & (1 << k) == 0 {
                    let s = rest | (1 << k);
                    let si = ext.index_of(s);
                    let val = -(&sign(i + below(rest, k)) * dk);
                    for a in 0..m {
                        out.add_entry(ti * m + a, si * m + a, val.clone());
                    }
                }
            }
        }
        for a in 0..m {
            for b in 0..m {
                if !rho_d[(a, b)].is_zero() {
                    out.add_entry(ti * m + a, ti * m + b, rho_d[(a, b)].clone());
                }
            }
        }
    }
    out
}

/// Matrix of the Lie derivative `θ_ρ(D)` on `Λ^p h* ⊗ V`, checked to commute
/// with the coboundary of `h`.
pub fn lie_derivative_on_cochains(
    h: &LieAlgebra,
    d: &RatMatrix,
    rho_d: &RatMatrix,
    v: &LieModule,
    p: usize,
) -> Result<RatMatrix> {
    if p > h.dim() {
        return Err(Error::OutOfRange(format!("degree {p} exceeds dimension {}", h.dim())));
    }
    if !h.is_derivation(d) {
        return Err(Error::NotADerivation(0));
    }
    let complex = build_complex(h, v)?;
    let thetas = theta_all(&complex, d, rho_d)?;
    Ok(thetas[p].to_dense())
}

fn theta_all(c: &CochainComplex, d: &RatMatrix, rho_d: &RatMatrix) -> Result<Vec<SparseMatrix>> {
    let n = c.algebra_dim();
    if rho_d.rows() != c.module_dim() || rho_d.cols() != c.module_dim() {
        return Err(Error::ModuleMismatch("ρ(D) has the wrong shape".into()));
    }
    let thetas: Vec<SparseMatrix> = (0..=n)
        .into_par_iter()
        .map(|p| theta_matrix(&c.ext, c.module_dim, d, rho_d, p))
        .collect();
    for p in 0..n {
        let lhs = c.d(p).mul(&thetas[p]);
        let rhs = thetas[p + 1].mul(c.d(p));
        if !lhs.sub(&rhs).is_zero() {
            return Err(Error::CommutationFailure(p));
        }
    }
    Ok(thetas)
}

/// `H^p` with representative cocycles.
#[derive(Clone, Debug)]
pub struct CohomologySpace {
    pub degree: usize,
    pub representatives: Vec<SparseVec>,
    cochain_dim: usize,
    reducer: EchelonBasis,
}

impl CohomologySpace {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of `cocycle` on the representatives.
    pub fn coordinates(&self, cocycle: &SparseVec) -> Result<Vec<Rational>> {
        let (rem, tags) = self.reducer.reduce(cocycle);
        if !rem.is_empty() {
            return Err(Error::Internal("vector is not a cocycle".into()));
        }
        Ok(sparse_to_dense(&tags, self.dim()))
    }

    pub fn representatives_dense(&self) -> Vec<Vec<Rational>> {
        self.representatives.iter().map(|r| sparse_to_dense(r, self.cochain_dim)).collect()
    }
}

#[derive(Serialize)]
struct CohomologySpaceDoc {
    degree: usize,
    dim: usize,
    representatives: Vec<Vec<Rational>>,
}

impl Serialize for CohomologySpace {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CohomologySpaceDoc { degree: self.degree, dim: self.dim(), representatives: self.representatives_dense() }
            .serialize(s)
    }
}

fn cohomology_space(c: &CochainComplex, p: usize) -> CohomologySpace {
    let mut reducer = EchelonBasis::new();
    if p > 0 {
        for col in c.d(p - 1).columns() {
            if !col.is_empty() {
                reducer.insert(&col, None);
            }
        }
    }
    let kernel: Vec<SparseVec> = if c.d(p).prefers_sparse() {
        c.d(p).kernel_basis_blocked()
    } else {
        c.d(p).to_dense().kernel_basis().iter().map(|v| dense_to_sparse(v)).collect()
    };
    let mut reps = Vec::new();
    for z in kernel {
        if reducer.insert(&z, Some(reps.len())) {
            reps.push(z);
        }
    }
    CohomologySpace { degree: p, representatives: reps, cochain_dim: c.degree_dim(p), reducer }
}

/// Cohomology of `L` with coefficients in `V` in every degree, with representatives.
#[derive(Clone, Debug)]
pub struct Cohomology {
    pub complex: CochainComplex,
    pub spaces: Vec<CohomologySpace>,
}

impl Cohomology {
    pub fn dims(&self) -> Vec<usize> {
        self.spaces.iter().map(CohomologySpace::dim).collect()
    }

    /// Matrices of the operator induced by `θ_ρ(D)` on each `H^p`.
    pub fn induced_theta(&self, d: &RatMatrix, rho_d: &RatMatrix) -> Result<Vec<RatMatrix>> {
        let thetas = theta_all(&self.complex, d, rho_d)?;
        self.spaces
            .par_iter()
            .zip(thetas.par_iter())
            .map(|(sp, th)| {
                let cols = sp
                    .representatives
                    .iter()
                    .map(|r| sp.coordinates(&th.mul_sparse_vec(r)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(RatMatrix::from_columns(sp.dim(), &cols))
            })
            .collect()
    }
}

pub fn cohomology(l: &LieAlgebra, v: &LieModule) -> Result<Cohomology> {
    let complex = build_complex(l, v)?;
    let spaces: Vec<CohomologySpace> =
        (0..=l.dim()).into_par_iter().map(|p| cohomology_space(&complex, p)).collect();
    let dims: Vec<usize> = spaces.iter().map(CohomologySpace::dim).collect();
    check_euler(&dims, &complex.degree_dims())?;
    let expected = complex.cohomology_dims()?;
    if dims != expected {
        return Err(Error::Internal("representative count disagrees with rank count".into()));
    }
    Ok(Cohomology { complex, spaces })
}

pub fn cohomology_dims(l: &LieAlgebra, v: &LieModule) -> Result<Vec<usize>> {
    build_complex(l, v)?.cohomology_dims()
}

pub fn character_cohomology_dims(l: &LieAlgebra, c: &Character) -> Result<Vec<usize>> {
    cohomology_dims(l, &LieModule::from_character(c))
}

/// Operator induced by `θ_ρ(D)` on `H^p(h, V)`.
pub fn induced_theta_on_h(
    d: &RatMatrix,
    h: &LieAlgebra,
    v: &LieModule,
    rho_d: &RatMatrix,
    p: usize,
) -> Result<RatMatrix> {
    if !h.is_derivation(d) {
        return Err(Error::NotADerivation(0));
    }
    let coh = cohomology(h, v)?;
    let mut all = coh.induced_theta(d, rho_d)?;
    if p >= all.len() {
        return Err(Error::OutOfRange(format!("degree {p}")));
    }
    Ok(all.swap_remove(p))
}

/// Joint eigenvalue multiplicities of commuting diagonalizable operators.
pub fn joint_weight_multiplicities(ops: &[RatMatrix], dim: usize) -> Result<BTreeMap<Vec<Rational>, usize>> {
    let mut parts: Vec<(Subspace, Vec<Rational>)> = vec![(Subspace::full(dim), Vec::new())];
    for (t, op) in ops.iter().enumerate() {
        let mut next = Vec::new();
        for (u, prefix) in parts {
            if u.is_zero() {
                continue;
            }
            let cols = u
                .basis()
                .iter()
                .map(|b| u.coordinates(&op.mul_vec(b)).ok_or(Error::NotCommuting(0, t)))
                .collect::<Result<Vec<_>>>()?;
            let restricted = RatMatrix::from_columns(u.dim(), &cols);
            let spec = rational_eigenvalues(&restricted)?;
            if !spec.is_split {
                return Err(Error::NonSplit(format!("operator {t} has irrational eigenvalues")));
            }
            let mut found = 0;
            for z in spec.distinct() {
                let ker = restricted.shift(&z).kernel_basis();
                found += ker.len();
                let vs: Vec<Vec<Rational>> = ker.iter().map(|c| u.vector(c)).collect();
                let mut key = prefix.clone();
                key.push(z);
                next.push((Subspace::span(dim, &vs), key));
            }
            if found != u.dim() {
                return Err(Error::NotSemisimple(t));
            }
        }
        parts = next;
    }
    let mut out = BTreeMap::new();
    for (u, key) in parts {
        if !u.is_zero() {
            *out.entry(key).or_insert(0) += u.dim();
        }
    }
    Ok(out)
}

/// Restriction data for an ideal `H` of `G` and an element `D`:
/// the algebra `H` in its canonical basis, `ad(D)|_H`, `V|_H` and `ρ(D)`.
pub struct IdealPresentation {
    pub h: LieAlgebra,
    pub d: RatMatrix,
    pub module: LieModule,
    pub rho_d: RatMatrix,
}

pub fn ideal_presentation(
    g: &LieAlgebra,
    ideal: &Subspace,
    d: &[Rational],
    v: &LieModule,
) -> Result<IdealPresentation> {
    if !g.is_ideal(ideal) {
        return Err(Error::NotAnIdeal);
    }
    let h = g.restrict(ideal)?;
    let cols = ideal
        .basis()
        .iter()
        .map(|b| ideal.coordinates(&g.bracket(d, b)).ok_or(Error::NotAnIdeal))
        .collect::<Result<Vec<_>>>()?;
    let dm = RatMatrix::from_columns(ideal.dim(), &cols);
    Ok(IdealPresentation { h, d: dm, module: v.restrict(ideal), rho_d: v.act(d) })
}

/// Cohomology dimensions of `G` via a codimension-one ideal `H` and `D ∉ H`:
/// `dim H^p(G) = dim H^p(h)^θ + dim H^{p-1}(h)_θ`.
pub fn hs_codim1_dims(g: &LieAlgebra, ideal: &Subspace, d: &[Rational], v: &LieModule) -> Result<Vec<usize>> {
    let codim = g.dim() - ideal.dim();
    if codim != 1 {
        return Err(Error::WrongCodimension(codim));
    }
    if ideal.contains(d) {
        return Err(Error::DimensionMismatch("D lies in the ideal".into()));
    }
    let pres = ideal_presentation(g, ideal, d, v)?;
    let coh = cohomology(&pres.h, &pres.module)?;
    let thetas = coh.induced_theta(&pres.d, &pres.rho_d)?;
    let hd = coh.dims();
    let ranks: Vec<usize> = thetas.iter().map(RatMatrix::rank).collect();
    Ok((0..=g.dim())
        .map(|p| {
            let inv = if p < hd.len() { hd[p] - ranks[p] } else { 0 };
            let coinv = if p >= 1 && p - 1 < hd.len() { hd[p - 1] - ranks[p - 1] } else { 0 };
            inv + coinv
        })
        .collect())
}

/// Cohomology dimensions of `a ⋉ h` for an abelian family of commuting
/// semisimple derivations: `H*(h, V)^a ⊗ Λa*`. For a character `V = λ` with
/// `h ⊆ ker λ`, the invariants are the `(-λ)`-isotypic part of `H*(h)`.
pub fn prop21_dims(
    h: &LieAlgebra,
    family: &[RatMatrix],
    rho_family: &[RatMatrix],
    v: &LieModule,
) -> Result<Vec<usize>> {
    let r = family.len();
    if rho_family.len() != r {
        return Err(Error::DimensionMismatch("one ρ matrix per derivation is required".into()));
    }
    for (i, d) in family.iter().enumerate() {
        if !h.is_derivation(d) {
            return Err(Error::NotADerivation(i));
        }
        if !is_semisimple(d)? || !is_semisimple(&rho_family[i])? {
            return Err(Error::NotSemisimple(i));
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            if !family[i].commutator(&family[j]).is_zero() || !rho_family[i].commutator(&rho_family[j]).is_zero() {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }
    let coh = cohomology(h, v)?;
    let hd = coh.dims();
    let thetas: Vec<Vec<RatMatrix>> = family
        .iter()
        .zip(rho_family)
        .map(|(d, rd)| coh.induced_theta(d, rd))
        .collect::<Result<_>>()?;
    let invariants: Vec<usize> = (0..hd.len())
        .map(|p| {
            if r == 0 || hd[p] == 0 {
                return hd[p];
            }
            let mut rows = Vec::new();
            for th in &thetas {
                rows.extend(th[p].row_vectors());
            }
            hd[p] - RatMatrix::from_rows(rows).rank()
        })
        .collect();
    Ok((0..=h.dim() + r)
        .map(|p| {
            (0..=r.min(p))
                .map(|i| if p - i < invariants.len() { binomial(r, i) * invariants[p - i] } else { 0 })
                .sum()
        })
        .collect())
}

/// [`prop21_dims`] for an algebra whose first `r` basis vectors span an
/// abelian subalgebra complementing the ideal spanned by the others.
pub fn prop21_semidirect(g: &LieAlgebra, r: usize, v: &LieModule) -> Result<Vec<usize>> {
    let n = g.dim();
    let ideal = Subspace::coordinate(n, &(r..n).collect::<Vec<_>>());
    if !g.is_ideal(&ideal) {
        return Err(Error::NotAnIdeal);
    }
    let h = g.restrict(&ideal)?;
    let mut family = Vec::new();
    let mut rho_family = Vec::new();
    for k in 0..r {
        for j in 0..r {
            if !g.bracket_basis(k, j).is_empty() {
                return Err(Error::NotCommuting(k, j));
            }
        }
        let x = crate::liealg::unit(n, k);
        let pres = ideal_presentation(g, &ideal, &x, v)?;
        family.push(pres.d);
        rho_family.push(pres.rho_d);
    }
    prop21_dims(&h, &family, &rho_family, &v.restrict(&ideal))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::{default_labels, semidirect};

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn heis() -> LieAlgebra {
        LieAlgebra::new(default_labels("x", 3), vec![(0, 1, vec![(2, q(1))])]).unwrap()
    }

    fn sec41() -> LieAlgebra {
        semidirect(&[RatMatrix::diagonal(&[q(1), q(1), q(2)])], &heis(), None).unwrap()
    }

    fn lam(a: i64) -> Character {
        Character::dual_basis(4, 0, q(a))
    }

    #[test]
    fn exterior_basis_is_lexicographic() {
        let e = ExteriorBasis::new(4).unwrap();
        assert_eq!(e.subsets(2), &[0b0011, 0b0101, 0b1001, 0b0110, 0b1010, 0b1100]);
        assert_eq!(e.index_of(0b1010), 4);
        assert!(matches!(ExteriorBasis::new(17), Err(Error::TooLarge(17))));
    }

    #[test]
    fn abelian_complex_is_zero() {
        let a = LieAlgebra::abelian(3);
        let c = build_complex(&a, &LieModule::trivial(&a)).unwrap();
        assert!((0..=3).all(|p| c.d(p).is_zero()));
        assert_eq!(c.cohomology_dims().unwrap(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn heisenberg_differential() {
        let h = heis();
        let c = build_complex(&h, &LieModule::trivial(&h)).unwrap();
        assert_eq!(c.d(1).rank(), 1);
        // d z* = -x* ∧ y*
        let dz = c.d(1).column(2);
        assert_eq!(dz, vec![(0, q(-1))]);
        assert_eq!(c.cohomology_dims().unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn sec41_table_columns() {
        let s = sec41();
        assert_eq!(build_complex(&s, &LieModule::trivial(&s)).unwrap().degree_dims(), vec![1, 4, 6, 4, 1]);
        assert_eq!(character_cohomology_dims(&s, &lam(1)).unwrap(), vec![0, 2, 2, 0, 0]);
        assert_eq!(character_cohomology_dims(&s, &lam(2)).unwrap(), vec![0; 5]);
        let two = LieAlgebra::new(default_labels("x", 2), vec![(0, 1, vec![(1, q(1))])]).unwrap();
        assert_eq!(cohomology_dims(&two, &LieModule::trivial(&two)).unwrap(), vec![1, 1, 0]);
    }

    #[test]
    fn representatives_are_cocycles() {
        let s = sec41();
        let coh = cohomology(&s, &LieModule::from_character(&lam(3))).unwrap();
        assert_eq!(coh.dims(), vec![0, 0, 2, 2, 0]);
        for sp in &coh.spaces {
            for r in &sp.representatives {
                assert!(coh.complex.d(sp.degree).mul_sparse_vec(r).is_empty());
            }
        }
    }

    #[test]
    fn theta_on_abelian() {
        let a = LieAlgebra::abelian(2);
        let d = RatMatrix::diagonal(&[q(1), q(2)]);
        let v = LieModule::trivial(&a);
        let zero = RatMatrix::zeros(1, 1);
        assert_eq!(lie_derivative_on_cochains(&a, &d, &zero, &v, 1).unwrap(), RatMatrix::diagonal(&[q(-1), q(-2)]));
        assert_eq!(lie_derivative_on_cochains(&a, &d, &zero, &v, 2).unwrap(), RatMatrix::diagonal(&[q(-3)]));
        let th = lie_derivative_on_cochains(&a, &RatMatrix::zeros(2, 2), &zero, &v, 1).unwrap();
        assert!(th.is_zero());
    }

    #[test]
    fn inner_derivations_act_trivially() {
        let h = heis();
        let v = LieModule::trivial(&h);
        for i in 0..3 {
            for p in 0..=3 {
                let th = induced_theta_on_h(&h.ad_basis(i), &h, &v, &RatMatrix::zeros(1, 1), p).unwrap();
                assert!(th.is_zero());
            }
        }
    }

    #[test]
    fn codim1_matches_direct() {
        let s = sec41();
        let ideal = Subspace::coordinate(4, &[1, 2, 3]);
        let u = crate::liealg::unit(4, 0);
        for a in 0..=4 {
            let v = LieModule::from_character(&lam(a));
            assert_eq!(hs_codim1_dims(&s, &ideal, &u, &v).unwrap(), cohomology_dims(&s, &v).unwrap());
        }
        let ab = LieAlgebra::abelian(2);
        let dims = hs_codim1_dims(&ab, &Subspace::coordinate(2, &[1]), &crate::liealg::unit(2, 0), &LieModule::trivial(&ab));
        assert_eq!(dims.unwrap(), vec![1, 2, 1]);
    }

    #[test]
    fn prop21_matches_direct() {
        let s = sec41();
        for a in 0..=4 {
            let v = LieModule::from_character(&lam(a));
            assert_eq!(prop21_semidirect(&s, 1, &v).unwrap(), cohomology_dims(&s, &v).unwrap());
        }
        let h = heis();
        assert_eq!(prop21_dims(&h, &[], &[], &LieModule::trivial(&h)).unwrap(), vec![1, 2, 2, 1]);
    }

    #[test]
    fn module_mismatch_is_reported() {
        let h = heis();
        let bad = LieModule::new_unchecked(1, vec![RatMatrix::zeros(1, 1); 2]);
        assert!(matches!(build_complex(&h, &bad), Err(Error::ModuleMismatch(_))));
    }
}
