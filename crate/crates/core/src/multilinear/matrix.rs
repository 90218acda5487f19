//! Exact sparse matrices over `F_p`.
//!
//! Matrices are stored column by column: column `c` is the image of source basis
//! vector `c`. Every stored entry is a nonzero residue.

use std::fmt;

use crate::ffield::{FpElement, Prime};

/// Sparse vector: strictly increasing indices, nonzero residues.
pub type SparseVec = Vec<(usize, u32)>;

#[derive(Clone, PartialEq, Eq)]
pub struct FpSparseMatrix {
    p: Prime,
    rows: usize,
    cols: usize,
    columns: Vec<SparseVec>,
}

impl FpSparseMatrix {
    pub fn zero(p: Prime, rows: usize, cols: usize) -> Self {
        FpSparseMatrix { p, rows, cols, columns: vec![Vec::new(); cols] }
    }

    pub fn identity(p: Prime, n: usize) -> Self {
        let columns = (0..n).map(|i| vec![(i, 1 % p.value())]).collect();
        FpSparseMatrix { p, rows: n, cols: n, columns }
    }

    /// Builds a matrix from `(row, col, value)` triples; repeated positions accumulate.
    pub fn from_triplets<I>(p: Prime, rows: usize, cols: usize, triplets: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        let mut buckets: Vec<Vec<(usize, u32)>> = vec![Vec::new(); cols];
        for (r, c, v) in triplets {
            assert!(r < rows && c < cols, "entry ({r}, {c}) outside {rows}x{cols}");
            buckets[c].push((r, p.reduce(v)));
        }
        let columns = buckets.into_iter().map(|col| canonicalize(p, col)).collect();
        FpSparseMatrix { p, rows, cols, columns }
    }

    /// Builds a matrix from dense columns.
    pub fn from_dense_columns(p: Prime, rows: usize, columns: &[Vec<u32>]) -> Self {
        let columns: Vec<SparseVec> = columns
            .iter()
            .map(|col| {
                assert_eq!(col.len(), rows);
                sparsify(col)
            })
            .collect();
        FpSparseMatrix { p, rows, cols: columns.len(), columns }
    }

    pub(crate) fn from_sparse_columns(p: Prime, rows: usize, columns: Vec<SparseVec>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(columns.iter().flatten().all(|&(r, v)| r < rows && v != 0));
        FpSparseMatrix { p, rows, cols: columns.len(), columns }
    }

    #[inline]
    pub fn prime(&self) -> Prime {
        self.p
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }

    pub fn column(&self, c: usize) -> &[(usize, u32)] {
        &self.columns[c]
    }

    pub fn get(&self, r: usize, c: usize) -> FpElement {
        let v = self.columns[c]
            .binary_search_by_key(&r, |&(i, _)| i)
            .map(|pos| self.columns[c][pos].1)
            .unwrap_or(0);
        FpElement::from_residue(v, self.p)
    }

    /// Overwrites one entry. Used to build negative controls.
    pub fn set(&mut self, r: usize, c: usize, value: i64) {
        assert!(r < self.rows && c < self.cols);
        let v = self.p.reduce(value);
        let col = &mut self.columns[c];
        match col.binary_search_by_key(&r, |&(i, _)| i) {
            Ok(pos) if v == 0 => {
                col.remove(pos);
            }
            Ok(pos) => col[pos].1 = v,
            Err(pos) if v != 0 => col.insert(pos, (r, v)),
            Err(_) => {}
        }
    }

    /// Nonzero entries in column-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, FpElement)> + '_ {
        self.columns.iter().enumerate().flat_map(move |(c, col)| {
            col.iter().map(move |&(r, v)| (r, c, FpElement::from_residue(v, self.p)))
        })
    }

    pub fn apply(&self, x: &[u32]) -> Vec<u32> {
        assert_eq!(x.len(), self.cols);
        let mut out = vec![0u32; self.rows];
        for (c, &xc) in x.iter().enumerate() {
            if xc != 0 {
                axpy_dense(self.p, &mut out, xc, &self.columns[c]);
            }
        }
        out
    }

    /// Applies the matrix to a sparse vector.
    pub fn apply_sparse(&self, x: &[(usize, u32)]) -> Vec<u32> {
        let mut out = vec![0u32; self.rows];
        for &(c, xc) in x {
            axpy_dense(self.p, &mut out, xc, &self.columns[c]);
        }
        out
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &FpSparseMatrix) -> FpSparseMatrix {
        assert_eq!(self.p, rhs.p, "mixed characteristics");
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let columns = rhs.columns.iter().map(|col| sparsify(&self.apply_sparse(col))).collect();
        FpSparseMatrix { p: self.p, rows: self.rows, cols: rhs.cols, columns }
    }

    pub fn sub(&self, rhs: &FpSparseMatrix) -> FpSparseMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| {
                let mut dense = vec![0u32; self.rows];
                axpy_dense(self.p, &mut dense, 1, a);
                axpy_dense(self.p, &mut dense, self.p.neg(1 % self.p.value()), b);
                sparsify(&dense)
            })
            .collect();
        FpSparseMatrix { p: self.p, rows: self.rows, cols: self.cols, columns }
    }

    pub fn select_columns(&self, cols: &[usize]) -> FpSparseMatrix {
        let columns = cols.iter().map(|&c| self.columns[c].clone()).collect();
        FpSparseMatrix { p: self.p, rows: self.rows, cols: cols.len(), columns }
    }

    pub fn rank(&self) -> usize {
        let mut ech = Echelon::new(self.p, self.rows);
        for col in &self.columns {
            ech.insert(col);
        }
        ech.rank()
    }

    /// A basis of the column space, in echelon form.
    pub fn image_basis(&self) -> Vec<SparseVec> {
        let mut ech = Echelon::new(self.p, self.rows);
        for col in &self.columns {
            ech.insert(col);
        }
        ech.into_rows()
    }

    /// A basis of the null space, as dense vectors of length `cols`.
    pub fn kernel_basis(&self) -> Vec<Vec<u32>> {
        let mut ech = TrackedEchelon::new(self.p, self.rows, self.cols);
        let mut kernel = Vec::new();
        for (c, col) in self.columns.iter().enumerate() {
            if let Some(k) = ech.insert_column(col, c) {
                kernel.push(k);
            }
        }
        kernel
    }

    /// Some `x` with `self * x = b`, or `None` when `b` is outside the column space.
    pub fn solve(&self, b: &[u32]) -> Option<Vec<u32>> {
        self.solve_many(std::slice::from_ref(&b.to_vec())).pop().flatten()
    }

    /// Solves against several right-hand sides, sharing one elimination.
    pub fn solve_many(&self, rhs: &[Vec<u32>]) -> Vec<Option<Vec<u32>>> {
        let mut ech = TrackedEchelon::new(self.p, self.rows, self.cols);
        for (c, col) in self.columns.iter().enumerate() {
            ech.insert_column(col, c);
        }
        rhs.iter().map(|b| ech.preimage(b)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<u32>> {
        let mut out = vec![vec![0u32; self.cols]; self.rows];
        for (c, col) in self.columns.iter().enumerate() {
            for &(r, v) in col {
                out[r][c] = v;
            }
        }
        out
    }
}

impl fmt::Debug for FpSparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpSparseMatrix {}x{} over F_{} ({} nonzero)", self.rows, self.cols, self.p, self.nnz())?;
        if self.rows * self.cols <= 400 {
            for row in self.to_dense() {
                writeln!(f, "  {row:?}")?;
            }
        }
        Ok(())
    }
}

fn canonicalize(p: Prime, mut col: Vec<(usize, u32)>) -> SparseVec {
    col.sort_unstable_by_key(|&(r, _)| r);
    let mut out: SparseVec = Vec::with_capacity(col.len());
    for (r, v) in col {
        match out.last_mut() {
            Some(last) if last.0 == r => last.1 = p.add(last.1, v),
            _ => out.push((r, v)),
        }
    }
    out.retain(|&(_, v)| v != 0);
    out
}

pub(crate) fn sparsify(dense: &[u32]) -> SparseVec {
    dense.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect()
}

/// `y += a * x` for dense `y` and sparse `x`.
#[inline]
pub(crate) fn axpy_dense(p: Prime, y: &mut [u32], a: u32, x: &[(usize, u32)]) {
    if a == 0 {
        return;
    }
    for &(i, v) in x {
        y[i] = p.add(y[i], p.mul(a, v));
    }
}

/// Row-echelon basis of a subspace of `F_p^dim`.
///
/// Each stored vector has leading (smallest) index equal to its pivot, with coefficient 1
/// there. Reducing a vector in increasing coordinate order clears every pivot coordinate,
/// so [`Echelon::reduce`] returns the unique coset representative supported off the pivots.
#[derive(Debug, Clone)]
pub struct Echelon {
    p: Prime,
    dim: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
}

impl Echelon {
    pub fn new(p: Prime, dim: usize) -> Self {
        Echelon { p, dim, pivot_row: vec![None; dim], rows: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivot_row[i].is_some()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.iter().enumerate().filter_map(|(i, r)| r.map(|_| i))
    }

    pub fn non_pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivot_row.iter().enumerate().filter_map(|(i, r)| if r.is_none() { Some(i) } else { None })
    }

    pub fn rows(&self) -> &[SparseVec] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<SparseVec> {
        self.rows
    }

    /// Reduces a dense vector in place modulo the stored subspace.
    pub fn reduce(&self, x: &mut [u32]) {
        assert_eq!(x.len(), self.dim);
        for i in 0..self.dim {
            let c = x[i];
            if c == 0 {
                continue;
            }
            if let Some(r) = self.pivot_row[i] {
                axpy_dense(self.p, x, self.p.neg(c), &self.rows[r]);
            }
        }
    }

    /// Adds a vector to the spanning set. Returns whether the rank grew.
    pub fn insert(&mut self, v: &[(usize, u32)]) -> bool {
        let mut x = vec![0u32; self.dim];
        axpy_dense(self.p, &mut x, 1, v);
        self.insert_dense(x)
    }

    pub fn insert_dense(&mut self, mut x: Vec<u32>) -> bool {
        self.reduce(&mut x);
        let Some(lead) = x.iter().position(|&v| v != 0) else {
            return false;
        };
        let scale = self.p.inv(x[lead]);
        let row: SparseVec = x
            .iter()
            .enumerate()
            .skip(lead)
            .filter(|(_, &v)| v != 0)
            .map(|(i, &v)| (i, self.p.mul(v, scale)))
            .collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut x = v.to_vec();
        self.reduce(&mut x);
        x.iter().all(|&c| c == 0)
    }
}

/// Echelon form that also records, for each stored row, which combination of the
/// inserted columns produced it.
struct TrackedEchelon {
    p: Prime,
    dim: usize,
    ncols: usize,
    pivot_row: Vec<Option<usize>>,
    rows: Vec<SparseVec>,
    combos: Vec<SparseVec>,
}

impl TrackedEchelon {
    fn new(p: Prime, dim: usize, ncols: usize) -> Self {
        TrackedEchelon { p, dim, ncols, pivot_row: vec![None; dim], rows: Vec::new(), combos: Vec::new() }
    }

    fn reduce(&self, x: &mut [u32], combo: &mut [u32]) {
        for i in 0..self.dim {
            let c = x[i];
            if c == 0 {
                continue;
            }
            if let Some(r) = self.pivot_row[i] {
                let f = self.p.neg(c);
                axpy_dense(self.p, x, f, &self.rows[r]);
                axpy_dense(self.p, combo, f, &self.combos[r]);
            }
        }
    }

    /// Inserts column `index`; returns a kernel vector when it is dependent.
    fn insert_column(&mut self, col: &[(usize, u32)], index: usize) -> Option<Vec<u32>> {
        let mut x = vec![0u32; self.dim];
        axpy_dense(self.p, &mut x, 1, col);
        let mut combo = vec![0u32; self.ncols];
        combo[index] = 1 % self.p.value();
        self.reduce(&mut x, &mut combo);
        match x.iter().position(|&v| v != 0) {
            None => Some(combo),
            Some(lead) => {
                let scale = self.p.inv(x[lead]);
                let row = sparsify(&x).into_iter().map(|(i, v)| (i, self.p.mul(v, scale))).collect();
                let combo = sparsify(&combo).into_iter().map(|(i, v)| (i, self.p.mul(v, scale))).collect();
                self.pivot_row[lead] = Some(self.rows.len());
                self.rows.push(row);
                self.combos.push(combo);
                None
            }
        }
    }

    fn preimage(&self, b: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(b.len(), self.dim);
        let mut x = b.to_vec();
        let mut combo = vec![0u32; self.ncols];
        self.reduce(&mut x, &mut combo);
        if x.iter().any(|&v| v != 0) {
            return None;
        }
        // b + A*combo == 0
        Some(combo.into_iter().map(|v| self.p.neg(v)).collect())
    }
}
