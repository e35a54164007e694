//! Sparse rational matrices and incremental echelon bases.
//!
//! Large cochain matrices are block diagonal up to a permutation (they respect
//! every grading the algebra carries). The sparse path finds the connected
//! components of the row/column incidence graph and eliminates each block
//! densely, so ranks and kernels agree exactly with the dense path.

use std::collections::{BTreeMap, HashMap};

use super::matrix::{kernel_from_rref, RatMatrix};
use crate::rational::{primitive_integer_vector, Rational};

/// Sparse vector: `(index, value)` pairs with strictly increasing indices and no zeros.
pub type SparseVec = Vec<(usize, Rational)>;

/// Matrices with more than this many cells are candidates for the sparse path.
pub const SPARSE_MIN_CELLS: usize = 200 * 200;
/// Maximum fill ratio (nonzeros / cells) for the sparse path.
pub const SPARSE_MAX_DENSITY: f64 = 0.05;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseVec>,
}

/// One connected block of a sparse matrix.
#[derive(Clone, Debug)]
pub struct Block {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

fn push_sorted(row: &mut SparseVec, col: usize, value: Rational) {
    if value.is_zero() {
        return;
    }
    match row.binary_search_by_key(&col, |(c, _)| *c) {
        Ok(pos) => {
            let sum = &row[pos].1 + &value;
            if sum.is_zero() {
                row.remove(pos);
            } else {
                row[pos].1 = sum;
            }
        }
        Err(pos) => row.insert(pos, (col, value)),
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, data: vec![Vec::new(); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `value` to entry `(i, j)`.
    pub fn add_entry(&mut self, i: usize, j: usize, value: Rational) {
        assert!(i < self.rows && j < self.cols);
        push_sorted(&mut self.data[i], j, value);
    }

    pub fn row(&self, i: usize) -> &SparseVec {
        &self.data[i]
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        match self.data[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(p) => self.data[i][p].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn density(&self) -> f64 {
        let cells = self.rows * self.cols;
        if cells == 0 {
            0.0
        } else {
            self.nnz() as f64 / cells as f64
        }
    }

    /// Whether rank and kernel computations take the blocked sparse path.
    pub fn prefers_sparse(&self) -> bool {
        self.rows * self.cols > SPARSE_MIN_CELLS && self.density() <= SPARSE_MAX_DENSITY
    }

    pub fn from_dense(m: &RatMatrix) -> Self {
        let mut s = Self::zeros(m.rows(), m.cols());
        for i in 0..m.rows() {
            s.data[i] = m
                .row(i)
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect();
        }
        s
    }

    pub fn to_dense(&self) -> RatMatrix {
        let mut m = RatMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                m[(i, *j)] = x.clone();
            }
        }
        m
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                t.data[*j].push((i, x.clone()));
            }
        }
        t
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &other.data[*k] {
                    let e = acc.entry(*j).or_insert_with(Rational::zero);
                    *e += &(a * b);
                }
            }
            out.data[i] = acc.into_iter().filter(|(_, x)| !x.is_zero()).collect();
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let mut out = self.clone();
        for (i, row) in other.data.iter().enumerate() {
            for (j, x) in row {
                push_sorted(&mut out.data[i], *j, -x);
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.data
            .iter()
            .map(|row| {
                let mut acc = Rational::zero();
                for (j, x) in row {
                    if !v[*j].is_zero() {
                        acc += &(x * &v[*j]);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn mul_sparse_vec(&self, v: &SparseVec) -> SparseVec {
        let lookup: HashMap<usize, &Rational> = v.iter().map(|(i, x)| (*i, x)).collect();
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            let mut acc = Rational::zero();
            for (j, x) in row {
                if let Some(y) = lookup.get(j) {
                    acc += &(x * *y);
                }
            }
            if !acc.is_zero() {
                out.push((i, acc));
            }
        }
        out
    }

    /// Column `j` as a sparse vector.
    pub fn column(&self, j: usize) -> SparseVec {
        let mut out = Vec::new();
        for (i, row) in self.data.iter().enumerate() {
            if let Ok(p) = row.binary_search_by_key(&j, |(c, _)| *c) {
                out.push((i, row[p].1.clone()));
            }
        }
        out
    }

    /// All columns as sparse vectors (one pass).
    pub fn columns(&self) -> Vec<SparseVec> {
        let mut cols = vec![Vec::new(); self.cols];
        for (i, row) in self.data.iter().enumerate() {
            for (j, x) in row {
                cols[*j].push((i, x.clone()));
            }
        }
        cols
    }

    /// Connected components of the bipartite row/column incidence graph.
    /// Blocks are ordered by their smallest column; columns that meet no
    /// nonzero entry form blocks with no rows.
    pub fn blocks(&self) -> Vec<Block> {
        let mut parent: Vec<usize> = (0..self.cols).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for row in &self.data {
            if let Some((first, _)) = row.first() {
                let a = find(&mut parent, *first);
                for (j, _) in &row[1..] {
                    let b = find(&mut parent, *j);
                    if a != b {
                        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                        parent[hi] = lo;
                    }
                }
            }
        }
        let mut index_of_root: HashMap<usize, usize> = HashMap::new();
        let mut blocks: Vec<Block> = Vec::new();
        for c in 0..self.cols {
            let r = find(&mut parent, c);
            let idx = *index_of_root.entry(r).or_insert_with(|| {
                blocks.push(Block { rows: Vec::new(), cols: Vec::new() });
                blocks.len() - 1
            });
            blocks[idx].cols.push(c);
        }
        for (i, row) in self.data.iter().enumerate() {
            if let Some((first, _)) = row.first() {
                let r = find(&mut parent, *first);
                blocks[index_of_root[&r]].rows.push(i);
            }
        }
        blocks
    }

    fn block_dense(&self, b: &Block) -> RatMatrix {
        let local: HashMap<usize, usize> = b.cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let mut m = RatMatrix::zeros(b.rows.len(), b.cols.len());
        for (li, &i) in b.rows.iter().enumerate() {
            for (j, x) in &self.data[i] {
                m[(li, local[j])] = x.clone();
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        if self.prefers_sparse() {
            self.rank_blocked()
        } else {
            self.to_dense().rank()
        }
    }

    pub fn rank_blocked(&self) -> usize {
        self.blocks()
            .iter()
            .filter(|b| !b.rows.is_empty())
            .map(|b| self.block_dense(b).rank())
            .sum()
    }

    /// Kernel basis in the same canonical form as [`RatMatrix::kernel_basis`].
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        if self.prefers_sparse() {
            self.kernel_basis_blocked()
                .into_iter()
                .map(|v| sparse_to_dense(&v, self.cols))
                .collect()
        } else {
            self.to_dense().kernel_basis()
        }
    }

    /// Kernel basis as sparse vectors, computed block by block and emitted in
    /// ascending free-column order.
    pub fn kernel_basis_blocked(&self) -> Vec<SparseVec> {
        let mut tagged: Vec<(usize, SparseVec)> = Vec::new();
        for b in self.blocks() {
            if b.rows.is_empty() {
                for &c in &b.cols {
                    tagged.push((c, vec![(c, Rational::one())]));
                }
                continue;
            }
            let m = self.block_dense(&b);
            let rref = m.rref();
            let mut is_pivot = vec![false; b.cols.len()];
            for &p in &rref.pivots {
                is_pivot[p] = true;
            }
            let frees: Vec<usize> = (0..b.cols.len()).filter(|&c| !is_pivot[c]).collect();
            let local = kernel_from_rref(&rref.matrix, &rref.pivots, b.cols.len());
            for (free, v) in frees.into_iter().zip(local) {
                let sv: SparseVec = v
                    .into_iter()
                    .enumerate()
                    .filter(|(_, x)| !x.is_zero())
                    .map(|(k, x)| (b.cols[k], x))
                    .collect();
                tagged.push((b.cols[free], sv));
            }
        }
        tagged.sort_by_key(|(c, _)| *c);
        tagged.into_iter().map(|(_, v)| v).collect()
    }
}

pub fn sparse_to_dense(v: &SparseVec, len: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn dense_to_sparse(v: &[Rational]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Scales a sparse vector like [`primitive_integer_vector`].
pub fn primitive_sparse(v: &SparseVec) -> SparseVec {
    let vals: Vec<Rational> = v.iter().map(|(_, x)| x.clone()).collect();
    let p = primitive_integer_vector(&vals);
    v.iter().zip(p).map(|((i, _), x)| (*i, x)).collect()
}

/// An incrementally built echelon basis of a subspace of `Q^dim`.
///
/// Every stored row has a distinct leading column with coefficient 1.
/// Rows inserted with a tag remember which tagged inputs they are built from,
/// so a vector in the span can be expressed in terms of tagged inputs modulo
/// the untagged ones.
#[derive(Clone, Debug, Default)]
pub struct EchelonBasis {
    rows: Vec<SparseVec>,
    tags: Vec<SparseVec>,
    pivot_row: BTreeMap<usize, usize>,
}

impl EchelonBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Reduces `v` against the basis, returning the remainder and the
    /// accumulated tag combination `t` with `v = remainder + sum t_k * input_k`
    /// modulo untagged inputs.
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut work: BTreeMap<usize, Rational> = v.iter().cloned().collect();
        let mut tag_acc: BTreeMap<usize, Rational> = BTreeMap::new();
        let mut cursor = 0;
        loop {
            let next = work
                .range(cursor..)
                .map(|(k, _)| *k)
                .find(|k| self.pivot_row.contains_key(k));
            let Some(col) = next else { break };
            let r = self.pivot_row[&col];
            let coeff = work[&col].clone();
            for (j, x) in &self.rows[r] {
                let e = work.entry(*j).or_insert_with(Rational::zero);
                *e -= &(&coeff * x);
                if e.is_zero() {
                    work.remove(j);
                }
            }
            for (t, x) in &self.tags[r] {
                let e = tag_acc.entry(*t).or_insert_with(Rational::zero);
                *e += &(&coeff * x);
                if e.is_zero() {
                    tag_acc.remove(t);
                }
            }
            cursor = col + 1;
        }
        (work.into_iter().collect(), tag_acc.into_iter().collect())
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Inserts `v`; returns `true` if it was independent of the current span.
    pub fn insert(&mut self, v: &SparseVec, tag: Option<usize>) -> bool {
        let (rem, tag_comb) = self.reduce(v);
        if rem.is_empty() {
            return false;
        }
        // new row = (v - combination) / lead
        let lead_inv = rem[0].1.recip();
        let row: SparseVec = rem.iter().map(|(j, x)| (*j, x * &lead_inv)).collect();
        let mut tag_row: BTreeMap<usize, Rational> = BTreeMap::new();
        if let Some(t) = tag {
            tag_row.insert(t, Rational::one());
        }
        for (t, x) in tag_comb {
            let e = tag_row.entry(t).or_insert_with(Rational::zero);
            *e -= &x;
            if e.is_zero() {
                tag_row.remove(&t);
            }
        }
        let tag_row: SparseVec = tag_row.into_iter().map(|(t, x)| (t, x * &lead_inv)).collect();
        self.pivot_row.insert(row[0].0, self.rows.len());
        self.rows.push(row);
        self.tags.push(tag_row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn block_diag_example() -> SparseMatrix {
        // two interleaved blocks: columns {0,2} and {1,3}, plus isolated column 4
        let mut m = SparseMatrix::zeros(4, 5);
        m.add_entry(0, 0, q(1));
        m.add_entry(0, 2, q(2));
        m.add_entry(1, 0, q(2));
        m.add_entry(1, 2, q(4));
        m.add_entry(2, 1, q(1));
        m.add_entry(3, 3, q(-3));
        m
    }

    #[test]
    fn blocked_matches_dense() {
        let m = block_diag_example();
        assert_eq!(m.rank_blocked(), m.to_dense().rank());
        let blocked: Vec<Vec<Rational>> = m
            .kernel_basis_blocked()
            .iter()
            .map(|v| sparse_to_dense(v, 5))
            .collect();
        assert_eq!(blocked, m.to_dense().kernel_basis());
    }

    #[test]
    fn product_and_transpose() {
        let m = block_diag_example();
        let d = m.to_dense();
        assert_eq!(m.mul(&m.transpose()).to_dense(), d.mul(&d.transpose()));
        assert_eq!(m.column(2), vec![(0, q(2)), (1, q(4))]);
    }

    #[test]
    fn echelon_tags_track_combinations() {
        let mut e = EchelonBasis::new();
        // untagged image vector
        assert!(e.insert(&vec![(0, q(1)), (1, q(1))], None));
        // tagged representative
        assert!(e.insert(&vec![(1, q(1))], Some(0)));
        assert!(!e.insert(&vec![(0, q(2))], Some(1)));
        // (3, 5) = 3*(1,1) + 2*(0,1): tag 0 coefficient 2
        let (rem, tags) = e.reduce(&vec![(0, q(3)), (1, q(5))]);
        assert!(rem.is_empty());
        assert_eq!(tags, vec![(0, q(2))]);
    }
}
