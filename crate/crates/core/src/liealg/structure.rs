use super::{default_labels, unit, LieAlgebra, Subspace};
use crate::error::{Error, Result};
use crate::linalg::{dot, RatMatrix, SparseMatrix};
use crate::rational::Rational;

impl LieAlgebra {
    /// `[A, B]` as a subspace.
    pub fn bracket_span(&self, a: &Subspace, b: &Subspace) -> Subspace {
        let mut vs = Vec::new();
        for x in a.basis() {
            for y in b.basis() {
                let z = self.bracket(x, y);
                if !crate::linalg::is_zero_vector(&z) {
                    vs.push(z);
                }
            }
        }
        Subspace::span(self.dim(), &vs)
    }

    pub fn derived_algebra(&self) -> Subspace {
        let full = Subspace::full(self.dim());
        self.bracket_span(&full, &full)
    }

    /// `g, g', g'', ...` until the chain stabilizes.
    pub fn derived_series(&self) -> Vec<Subspace> {
        let mut out = vec![Subspace::full(self.dim())];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_span(last, last);
            if next.dim() == last.dim() {
                return out;
            }
            out.push(next);
        }
    }

    /// `g, [g, g], [g, [g, g]], ...` until the chain stabilizes.
    pub fn lower_central_series(&self) -> Vec<Subspace> {
        let full = Subspace::full(self.dim());
        let mut out = vec![full.clone()];
        loop {
            let last = out.last().unwrap();
            let next = self.bracket_span(&full, last);
            if next.dim() == last.dim() {
                return out;
            }
            out.push(next);
        }
    }

    pub fn is_solvable(&self) -> bool {
        self.derived_series().last().unwrap().is_zero()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.lower_central_series().last().unwrap().is_zero()
    }

    pub fn is_subalgebra(&self, a: &Subspace) -> bool {
        a.contains_subspace(&self.bracket_span(a, a))
    }

    pub fn is_ideal(&self, a: &Subspace) -> bool {
        a.contains_subspace(&self.bracket_span(&Subspace::full(self.dim()), a))
    }

    /// `{x : [x, A] ⊆ A}`.
    pub fn normalizer(&self, a: &Subspace) -> Subspace {
        let n = self.dim();
        let ann = a.annihilator();
        if ann.is_empty() {
            return Subspace::full(n);
        }
        let mut rows = Vec::new();
        for w in &ann {
            for b in a.basis() {
                let row: Vec<Rational> = (0..n).map(|m| dot(w, &self.bracket(&unit(n, m), b))).collect();
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return Subspace::full(n);
        }
        Subspace::span(n, &RatMatrix::from_rows(rows).kernel_basis())
    }

    pub fn center(&self) -> Subspace {
        let n = self.dim();
        let rows: Vec<Vec<Rational>> = (0..n).flat_map(|m| self.ad_basis(m).row_vectors()).collect();
        // [x, e_m] = -ad(e_m) x must vanish for all m
        Subspace::span(n, &RatMatrix::from_rows(rows).kernel_basis())
    }

    /// Structure constants of a subalgebra in its canonical basis.
    pub fn restrict(&self, a: &Subspace) -> Result<LieAlgebra> {
        if !self.is_subalgebra(a) {
            return Err(Error::DimensionMismatch("subspace is not a subalgebra".into()));
        }
        let labels = subspace_labels(self, a);
        LieAlgebra::from_fn(labels, |i, j| {
            a.coordinates(&self.bracket(&a.basis()[i], &a.basis()[j])).expect("closed")
        })
    }

    /// Quotient by an ideal, using the complementary standard basis vectors as basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(LieAlgebra, Vec<usize>)> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal);
        }
        let comp = ideal.complement_indices();
        let labels = comp.iter().map(|&i| self.labels()[i].clone()).collect();
        let q = LieAlgebra::from_fn(labels, |i, j| {
            project_mod(&self.bracket_basis_dense(comp[i], comp[j]), ideal, &comp)
        })?;
        Ok((q, comp))
    }

    /// Gram matrix of the Killing form.
    pub fn killing_matrix(&self) -> RatMatrix {
        let n = self.dim();
        let ads: Vec<RatMatrix> = (0..n).map(|i| self.ad_basis(i)).collect();
        let mut k = RatMatrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let t = ads[i].mul(&ads[j]).trace();
                k[(i, j)] = t.clone();
                k[(j, i)] = t;
            }
        }
        k
    }

    /// Nilradical of a split solvable algebra as the radical of the Killing
    /// form, verified to be a nilpotent ideal of ad-nilpotent elements.
    pub fn nilradical(&self) -> Result<Subspace> {
        if !self.is_solvable() {
            return Err(Error::NotSolvable);
        }
        let n = self.dim();
        let rad = Subspace::span(n, &self.killing_matrix().kernel_basis());
        if !self.is_ideal(&rad) {
            return Err(Error::NonSplit("Killing radical is not an ideal".into()));
        }
        if !self.restrict(&rad)?.is_nilpotent() {
            return Err(Error::NonSplit("Killing radical is not nilpotent".into()));
        }
        if rad.basis().iter().any(|v| !self.ad_matrix(v).is_nilpotent()) {
            return Err(Error::NonSplit("Killing radical contains a non ad-nilpotent element".into()));
        }
        if !rad.contains_subspace(&self.derived_algebra()) {
            return Err(Error::NonSplit("derived algebra escapes the Killing radical".into()));
        }
        Ok(rad)
    }

    /// Fitting null component `ker ad(v)^dim`.
    pub fn fitting_null(&self, v: &[Rational]) -> Subspace {
        let n = self.dim();
        Subspace::span(n, &self.ad_matrix(v).pow(n.max(1)).kernel_basis())
    }

    /// Deterministic candidates for a regular element: basis vectors, then
    /// `x_i + k x_j` for `i < j` and `k = 1..=dim`, truncated to `budget`.
    pub fn regular_candidates(&self, budget: usize) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let mut out: Vec<Vec<Rational>> = (0..n).map(|i| unit(n, i)).collect();
        'outer: for i in 0..n {
            for j in i + 1..n {
                for k in 1..=n {
                    if out.len() >= budget {
                        break 'outer;
                    }
                    let mut v = unit(n, i);
                    v[j] = Rational::from(k);
                    out.push(v);
                }
            }
        }
        out.truncate(budget);
        out
    }

    /// A Cartan subalgebra as the Fitting null component of the first
    /// candidate element for which it is nilpotent and self-normalizing.
    pub fn cartan_subalgebra(&self) -> Result<Subspace> {
        Ok(self.cartan_with_element()?.0)
    }

    pub fn cartan_with_element(&self) -> Result<(Subspace, Vec<Rational>)> {
        if !self.is_solvable() {
            return Err(Error::NotSolvable);
        }
        let n = self.dim();
        if n == 0 {
            return Ok((Subspace::zero(0), Vec::new()));
        }
        let budget = (n * n).max(n);
        for v in self.regular_candidates(budget) {
            let f = self.fitting_null(&v);
            if self.restrict(&f)?.is_nilpotent() && self.normalizer(&f) == f {
                return Ok((f, v));
            }
        }
        Err(Error::SearchExhausted(budget))
    }

    /// Basis of `Der(L)` as the kernel of the derivation equations.
    pub fn derivation_space(&self) -> Vec<RatMatrix> {
        let n = self.dim();
        if n == 0 {
            return Vec::new();
        }
        // unknown D[a][b] at column a * n + b; D e_b = sum_a D[a][b] e_a
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        let mut sys = SparseMatrix::zeros(pairs.len() * n, n * n);
        for (p, &(i, j)) in pairs.iter().enumerate() {
            for (m, c) in self.bracket_basis(i, j) {
                for k in 0..n {
                    sys.add_entry(p * n + k, k * n + m, c.clone());
                }
            }
            for a in 0..n {
                for (k, c) in self.bracket_basis(a, j) {
                    sys.add_entry(p * n + k, a * n + i, -c);
                }
                for (k, c) in self.bracket_basis(i, a) {
                    sys.add_entry(p * n + k, a * n + j, -c);
                }
            }
        }
        sys.kernel_basis()
            .into_iter()
            .map(|v| RatMatrix::from_rows(v.chunks(n).map(|r| r.to_vec()).collect()))
            .collect()
    }
}

/// Reduces `v` modulo `ideal` and returns its coordinates on `comp`.
pub fn project_mod(v: &[Rational], ideal: &Subspace, comp: &[usize]) -> Vec<Rational> {
    let mut r = v.to_vec();
    for (b, &p) in ideal.basis().iter().zip(ideal.pivots()) {
        if !r[p].is_zero() {
            let c = &r[p] / &b[p];
            crate::linalg::add_scaled(&mut r, &-c, b);
        }
    }
    comp.iter().map(|&i| r[i].clone()).collect()
}

fn subspace_labels(l: &LieAlgebra, a: &Subspace) -> Vec<String> {
    a.basis()
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let nz: Vec<usize> = (0..v.len()).filter(|&i| !v[i].is_zero()).collect();
            if nz.len() == 1 && v[nz[0]].is_one() {
                l.labels()[nz[0]].clone()
            } else {
                format!("v{}", k + 1)
            }
        })
        .collect()
}

/// Semidirect product `a ⋉ H` for a commuting family of derivations of `H`.
/// The basis is the `a` basis (labelled by `a_labels`) followed by that of `H`.
pub fn semidirect(family: &[RatMatrix], h: &LieAlgebra, a_labels: Option<Vec<String>>) -> Result<LieAlgebra> {
    let r = family.len();
    let n = h.dim();
    for (i, d) in family.iter().enumerate() {
        if !h.is_derivation(d) {
            return Err(Error::NotADerivation(i));
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            if !family[i].commutator(&family[j]).is_zero() {
                return Err(Error::NotCommuting(i, j));
            }
        }
    }
    let mut labels = a_labels.unwrap_or_else(|| default_labels("a", r));
    assert_eq!(labels.len(), r);
    labels.extend(h.labels().iter().cloned());
    let mut entries = Vec::new();
    for (i, d) in family.iter().enumerate() {
        for j in 0..n {
            let col = d.column(j);
            let v = col
                .into_iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(k, x)| (r + k, x))
                .collect();
            entries.push((i, r + j, v));
        }
    }
    for (i, j, k, c) in h.structure_constants() {
        entries.push((r + i, r + j, vec![(r + k, c)]));
    }
    LieAlgebra::new(labels, entries)
}

/// Direct sum with block-diagonal structure constants.
pub fn direct_sum(a: &LieAlgebra, b: &LieAlgebra) -> LieAlgebra {
    let off = a.dim();
    let mut labels = a.labels().to_vec();
    labels.extend(b.labels().iter().cloned());
    let mut entries = Vec::new();
    for (i, j, k, c) in a.structure_constants() {
        entries.push((i, j, vec![(k, c)]));
    }
    for (i, j, k, c) in b.structure_constants() {
        entries.push((off + i, off + j, vec![(off + k, c)]));
    }
    LieAlgebra::new_unchecked(labels, entries).expect("direct sum of valid algebras")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn labels(xs: &[&str]) -> Vec<String> {
        xs.iter().map(|s| s.to_string()).collect()
    }

    fn heis() -> LieAlgebra {
        LieAlgebra::new(labels(&["x", "y", "z"]), vec![(0, 1, vec![(2, q(1))])]).unwrap()
    }

    fn sec41() -> LieAlgebra {
        let d = RatMatrix::diagonal(&[q(1), q(1), q(2)]);
        semidirect(&[d], &heis(), Some(labels(&["u"]))).unwrap()
    }

    fn two_dim() -> LieAlgebra {
        LieAlgebra::new(labels(&["u", "x"]), vec![(0, 1, vec![(1, q(1))])]).unwrap()
    }

    #[test]
    fn series_examples() {
        let ab = LieAlgebra::abelian(3);
        let ds = ab.derived_series();
        assert_eq!(ds.len(), 2);
        assert!(ds[1].is_zero());
        let s = sec41();
        let ds = s.derived_series();
        assert_eq!(ds.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![4, 3, 1, 0]);
        assert_eq!(ds[1], Subspace::coordinate(4, &[1, 2, 3]));
        assert_eq!(ds[2], Subspace::coordinate(4, &[3]));
        let lc = heis().lower_central_series();
        assert_eq!(lc.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![3, 1, 0]);
    }

    #[test]
    fn solvable_nilpotent_flags() {
        assert!(sec41().is_solvable());
        assert!(!sec41().is_nilpotent());
        assert!(heis().is_solvable() && heis().is_nilpotent());
        let sl2 = LieAlgebra::new(
            labels(&["h", "e", "f"]),
            vec![(0, 1, vec![(1, q(2))]), (0, 2, vec![(2, q(-2))]), (1, 2, vec![(0, q(1))])],
        )
        .unwrap();
        assert!(!sl2.is_solvable() && !sl2.is_nilpotent());
        assert!(matches!(sl2.nilradical(), Err(Error::NotSolvable)));
    }

    #[test]
    fn killing_and_nilradical() {
        let s = sec41();
        let k = s.killing_matrix();
        let mut expect = RatMatrix::zeros(4, 4);
        expect[(0, 0)] = q(6);
        assert_eq!(k, expect);
        assert_eq!(s.nilradical().unwrap(), Subspace::coordinate(4, &[1, 2, 3]));
        assert_eq!(two_dim().killing_matrix()[(0, 0)], q(1));
        assert_eq!(two_dim().nilradical().unwrap(), Subspace::coordinate(2, &[1]));
        assert_eq!(heis().nilradical().unwrap(), Subspace::full(3));
    }

    #[test]
    fn cartan_examples() {
        assert_eq!(heis().cartan_subalgebra().unwrap(), Subspace::full(3));
        assert_eq!(sec41().cartan_subalgebra().unwrap(), Subspace::coordinate(4, &[0]));
        let d = RatMatrix::diagonal(&[q(1), q(2)]);
        let s = semidirect(&[d], &LieAlgebra::abelian(2), None).unwrap();
        assert_eq!(s.cartan_subalgebra().unwrap(), Subspace::coordinate(3, &[0]));
    }

    #[test]
    fn derivation_dimensions() {
        assert_eq!(LieAlgebra::abelian(2).derivation_space().len(), 4);
        assert_eq!(heis().derivation_space().len(), 6);
        let s = sec41();
        let der = s.derivation_space();
        for d in &der {
            assert!(s.is_derivation(d));
        }
        // inner derivations embed: ad is injective since the center is trivial
        assert!(s.center().is_zero());
        let inner = RatMatrix::from_rows((0..4).map(|i| {
            let a = s.ad_basis(i);
            (0..4).flat_map(|r| a.row(r).to_vec()).collect()
        }).collect());
        assert_eq!(inner.rank(), 4);
        assert!(der.len() >= 4);
    }

    #[test]
    fn direct_sum_and_semidirect() {
        let ab = direct_sum(&LieAlgebra::abelian(1), &LieAlgebra::abelian(2));
        assert!(ab.is_abelian());
        let hh = direct_sum(&heis(), &heis());
        assert_eq!(hh.dim(), 6);
        assert_eq!(hh.lower_central_series().len(), 3);
        let zero = semidirect(&[RatMatrix::zeros(2, 2)], &LieAlgebra::abelian(2), None).unwrap();
        assert!(zero.is_abelian());
        let bad = RatMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
        assert!(matches!(semidirect(&[bad], &heis(), None), Err(Error::NotADerivation(0))));
    }

    #[test]
    fn quotient_by_center() {
        let (q3, comp) = heis().quotient(&Subspace::coordinate(3, &[2])).unwrap();
        assert_eq!(comp, vec![0, 1]);
        assert!(q3.is_abelian());
    }
}
