use super::bitvec::BitVec;
use crate::error::{Error, Result};

/// Dense GF(2) matrix stored as packed rows.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DenseMatrix {
    cols: usize,
    rows: Vec<BitVec>,
}

impl DenseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![BitVec::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(cols: usize, rows: Vec<BitVec>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch {
                expected: cols,
                actual: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    /// Parses rows of `0`/`1` characters, one row per string.
    pub fn from_strs(rows: &[&str]) -> Result<Self> {
        let rows = rows
            .iter()
            .map(|r| BitVec::parse(r))
            .collect::<Result<Vec<_>>>()?;
        let cols = rows.first().map_or(0, BitVec::len);
        Self::from_rows(cols, rows)
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, r: usize) -> &BitVec {
        &self.rows[r]
    }

    pub fn row_vecs(&self) -> &[BitVec] {
        &self.rows
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.rows[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        self.rows[r].set(c, v)
    }

    pub fn column(&self, c: usize) -> BitVec {
        BitVec::from_fn(self.rows(), |r| self.get(r, c))
    }

    pub fn transpose(&self) -> DenseMatrix {
        let mut t = DenseMatrix::zeros(self.cols, self.rows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Computes `M · vᵗ`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        check_len(self.cols, v.len())?;
        Ok(BitVec::from_fn(self.rows(), |r| self.rows[r].dot(v)))
    }

    /// Computes `self · other` over GF(2).
    pub fn mul(&self, other: &DenseMatrix) -> Result<DenseMatrix> {
        check_len(self.cols, other.rows())?;
        let mut out = DenseMatrix::zeros(self.rows(), other.cols());
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.iter_ones() {
                out.rows[r] ^= &other.rows[k];
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        let order: Vec<usize> = (0..self.cols).collect();
        systematize(self, &order).pivots.len()
    }

    /// Basis of the right null space `{x : M·xᵗ = 0}`, one vector per row.
    pub fn null_space(&self) -> DenseMatrix {
        let order: Vec<usize> = (0..self.cols).collect();
        let sys = systematize(self, &order);
        let mut is_pivot = vec![false; self.cols];
        for &p in &sys.pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in sys.pivots.iter().enumerate() {
                if sys.matrix.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        DenseMatrix {
            cols: self.cols,
            rows: basis,
        }
    }
}

/// Sparse GF(2) matrix with row and column adjacency lists.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    row_adj: Vec<Vec<usize>>,
    col_adj: Vec<Vec<usize>>,
}

impl SparseMatrix {
    /// Builds from `(row, col)` entries. Duplicate entries are rejected.
    pub fn from_entries(rows: usize, cols: usize, entries: &[(usize, usize)]) -> Result<Self> {
        let mut row_adj = vec![Vec::new(); rows];
        let mut col_adj = vec![Vec::new(); cols];
        for &(r, c) in entries {
            if r >= rows || c >= cols {
                return Err(Error::InvalidParameter(format!(
                    "entry ({r}, {c}) outside {rows}x{cols}"
                )));
            }
            row_adj[r].push(c);
            col_adj[c].push(r);
        }
        for adj in row_adj.iter_mut() {
            adj.sort_unstable();
            if adj.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidParameter("duplicate matrix entry".into()));
            }
        }
        for adj in col_adj.iter_mut() {
            adj.sort_unstable();
        }
        Ok(Self {
            rows,
            cols,
            row_adj,
            col_adj,
        })
    }

    pub fn from_dense(m: &DenseMatrix) -> Self {
        let entries: Vec<_> = (0..m.rows())
            .flat_map(|r| m.row(r).iter_ones().map(move |c| (r, c)))
            .collect();
        Self::from_entries(m.rows(), m.cols(), &entries).expect("dense matrix has no duplicates")
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Column indices of the ones in row `r`, increasing.
    #[inline]
    pub fn row_support(&self, r: usize) -> &[usize] {
        &self.row_adj[r]
    }

    /// Row indices of the ones in column `c`, increasing.
    #[inline]
    pub fn col_support(&self, c: usize) -> &[usize] {
        &self.col_adj[c]
    }

    pub fn edge_count(&self) -> usize {
        self.row_adj.iter().map(Vec::len).sum()
    }

    pub fn row_weights(&self) -> Vec<usize> {
        self.row_adj.iter().map(Vec::len).collect()
    }

    pub fn col_weights(&self) -> Vec<usize> {
        self.col_adj.iter().map(Vec::len).collect()
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        check_len(self.cols, v.len())?;
        Ok(BitVec::from_fn(self.rows, |r| {
            self.row_adj[r].iter().filter(|&&c| v.get(c)).count() & 1 == 1
        }))
    }

    pub fn to_dense(&self) -> DenseMatrix {
        let mut m = DenseMatrix::zeros(self.rows, self.cols);
        for (r, adj) in self.row_adj.iter().enumerate() {
            for &c in adj {
                m.set(r, c, true);
            }
        }
        m
    }
}

/// A GF(2) matrix in either storage form.
#[derive(Clone, Debug)]
pub enum Gf2Matrix {
    Dense(DenseMatrix),
    Sparse(SparseMatrix),
}

impl Gf2Matrix {
    pub fn rows(&self) -> usize {
        match self {
            Gf2Matrix::Dense(m) => m.rows(),
            Gf2Matrix::Sparse(m) => m.rows(),
        }
    }

    pub fn cols(&self) -> usize {
        match self {
            Gf2Matrix::Dense(m) => m.cols(),
            Gf2Matrix::Sparse(m) => m.cols(),
        }
    }

    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        match self {
            Gf2Matrix::Dense(m) => m.mul_vec(v),
            Gf2Matrix::Sparse(m) => m.mul_vec(v),
        }
    }

    pub fn to_dense(&self) -> DenseMatrix {
        match self {
            Gf2Matrix::Dense(m) => m.clone(),
            Gf2Matrix::Sparse(m) => m.to_dense(),
        }
    }
}

impl From<DenseMatrix> for Gf2Matrix {
    fn from(m: DenseMatrix) -> Self {
        Gf2Matrix::Dense(m)
    }
}

impl From<SparseMatrix> for Gf2Matrix {
    fn from(m: SparseMatrix) -> Self {
        Gf2Matrix::Sparse(m)
    }
}

/// Syndrome `H · yᵗ` of `y` with respect to parity-check matrix `h`.
pub fn syndrome(y: &BitVec, h: &Gf2Matrix) -> Result<BitVec> {
    h.mul_vec(y)
}

/// Result of [`systematize`].
#[derive(Clone, Debug)]
pub struct Systematized {
    /// Reduced row echelon form; rows beyond `pivots.len()` are zero.
    pub matrix: DenseMatrix,
    /// `pivots[r]` is the column holding the leading one of row `r`.
    pub pivots: Vec<usize>,
    /// The right-hand side after the same row operations, when one was given.
    pub rhs: Option<BitVec>,
}

/// Gauss-Jordan elimination choosing pivots greedily in `column_priority`
/// order. Each pivot column of the result is a unit vector.
pub fn systematize(h: &DenseMatrix, column_priority: &[usize]) -> Systematized {
    systematize_with_rhs(h, column_priority, None)
}

/// Like [`systematize`], also applying every row operation to `rhs`.
pub fn systematize_with_rhs(
    h: &DenseMatrix,
    column_priority: &[usize],
    rhs: Option<&BitVec>,
) -> Systematized {
    if let Some(b) = rhs {
        assert_eq!(b.len(), h.rows(), "rhs length must equal row count");
    }
    let mut rows = h.rows.clone();
    let mut rhs = rhs.cloned();
    let mut pivots = Vec::with_capacity(rows.len().min(h.cols));
    for &col in column_priority {
        let rank = pivots.len();
        if rank == rows.len() {
            break;
        }
        let Some(found) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, found);
        if let Some(b) = rhs.as_mut() {
            let (x, y) = (b.get(rank), b.get(found));
            b.set(rank, y);
            b.set(found, x);
        }
        let (head, tail) = rows.split_at_mut(rank);
        let (pivot_row, tail) = tail.split_first_mut().expect("rank < rows");
        let pivot_bit = rhs.as_ref().is_some_and(|b| b.get(rank));
        for (r, row) in head.iter_mut().enumerate().chain(
            tail.iter_mut()
                .enumerate()
                .map(|(i, row)| (rank + 1 + i, row)),
        ) {
            if row.get(col) {
                *row ^= &*pivot_row;
                if pivot_bit {
                    if let Some(b) = rhs.as_mut() {
                        b.flip(r);
                    }
                }
            }
        }
        pivots.push(col);
    }
    Systematized {
        matrix: DenseMatrix { cols: h.cols, rows },
        pivots,
        rhs,
    }
}

fn check_len(expected: usize, actual: usize) -> Result<()> {
    if expected == actual {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, actual })
    }
}
