//! Dense exact matrices over [`Scalar`].
//!
//! Row-major storage, one field per matrix. Sizes stay small here (a few
//! thousand rows at the largest tensor powers), so there is no sparse format
//! and no attempt at asymptotically fast multiplication; exactness and
//! determinism are what matter.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

/// Dense `rows × cols` matrix with exact entries from a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn from_fn(
        field: FieldSpec,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Mat {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let s = f(r, c);
                assert_eq!(s.field(), field, "entry field differs from matrix field");
                entries.push(s);
            }
        }
        Mat {
            rows,
            cols,
            field,
            entries,
        }
    }

    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Mat {
        Mat::from_fn(field, rows, cols, |_, _| field.zero())
    }

    pub fn identity(field: FieldSpec, n: usize) -> Mat {
        Mat::from_fn(
            field,
            n,
            n,
            |r, c| if r == c { field.one() } else { field.zero() },
        )
    }

    /// Convenience constructor from integer rows (tests, examples, docs).
    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Mat::from_fn(field, r, c, |i, j| rows[i][j].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        assert!(r < self.rows && c < self.cols, "index out of range");
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        assert!(r < self.rows && c < self.cols, "index out of range");
        assert_eq!(s.field(), self.field, "entry field differs");
        self.entries[r * self.cols + c] = s;
    }

    pub fn row(&self, r: usize) -> Vec<Scalar> {
        (0..self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..r).all(|c| self.at(r, c) == self.at(c, r)))
    }

    pub fn is_diagonal(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| (0..self.cols).all(|c| r == c || self.at(r, c).is_zero()))
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.at(c, r).clone()
        })
    }

    pub fn add(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.at(r, c).add(other.at(r, c))
        })
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "shape");
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.at(r, c).sub(other.at(r, c))
        })
    }

    pub fn scale(&self, s: &Scalar) -> Mat {
        Mat::from_fn(self.field, self.rows, self.cols, |r, c| {
            self.at(r, c).mul(s)
        })
    }

    /// Exact matrix product. Panics on a dimension mismatch.
    pub fn mul(&self, other: &Mat) -> Mat {
        assert_eq!(
            self.cols, other.rows,
            "product dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        assert_eq!(self.field, other.field, "product field mismatch");
        let mut out = Mat::zeros(self.field, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.at(r, c).add(&a.mul(b));
                    out.set(r, c, v);
                }
            }
        }
        out
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Scalar {
        assert!(self.is_square(), "trace of a non-square matrix");
        let mut t = self.field.zero();
        for i in 0..self.rows {
            t = t.add(self.at(i, i));
        }
        t
    }

    /// Kronecker product: block layout `a_11·B, a_12·B, ...`, so the entry at
    /// `(i·p' + i', j·q' + j')` is `a[i,j] · b[i',j']`.
    pub fn kron(&self, other: &Mat) -> Mat {
        assert_eq!(self.field, other.field, "kron field mismatch");
        let (p, q) = (self.rows, self.cols);
        let (pp, qq) = (other.rows, other.cols);
        Mat::from_fn(self.field, p * pp, q * qq, |r, c| {
            self.at(r / pp, c / qq).mul(other.at(r % pp, c % qq))
        })
    }

    /// Iterated Kronecker power; `k = 0` gives the 1×1 identity.
    pub fn kron_pow(&self, k: usize) -> Mat {
        let mut out = Mat::identity(self.field, 1);
        for _ in 0..k {
            out = out.kron(self);
        }
        out
    }

    /// Horizontal concatenation of equally tall blocks.
    pub fn hconcat(parts: &[Mat]) -> Mat {
        assert!(!parts.is_empty(), "hconcat of nothing");
        let field = parts[0].field;
        let rows = parts[0].rows;
        assert!(parts.iter().all(|p| p.rows == rows && p.field == field));
        let cols: usize = parts.iter().map(|p| p.cols).sum();
        let mut out = Mat::zeros(field, rows, cols);
        let mut base = 0;
        for p in parts {
            for r in 0..rows {
                for c in 0..p.cols {
                    out.set(r, base + c, p.at(r, c).clone());
                }
            }
            base += p.cols;
        }
        out
    }

    /// Vertical concatenation of equally wide blocks.
    pub fn vconcat(parts: &[Mat]) -> Mat {
        assert!(!parts.is_empty(), "vconcat of nothing");
        let t: Vec<Mat> = parts.iter().map(Mat::transpose).collect();
        Mat::hconcat(&t).transpose()
    }

    /// The `rows × cols` block starting at `(r0, c0)`.
    pub fn submatrix(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Mat {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols);
        Mat::from_fn(self.field, rows, cols, |r, c| {
            self.at(r0 + r, c0 + c).clone()
        })
    }

    /// Rank over the exact field, by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let pivot = (rank..m.rows).find(|&r| !m.at(r, col).is_zero());
            let Some(pr) = pivot else { continue };
            m.swap_rows(rank, pr);
            let inv = m.at(rank, col).inv().expect("pivot nonzero");
            for r in rank + 1..m.rows {
                if m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).mul(&inv);
                m.row_sub(r, rank, &f, col);
            }
            rank += 1;
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// `row[r] -= f * row[src]`, starting from column `from`.
    fn row_sub(&mut self, r: usize, src: usize, f: &Scalar, from: usize) {
        for c in from..self.cols {
            let v = self.at(r, c).sub(&f.mul(self.at(src, c)));
            self.set(r, c, v);
        }
    }

    /// Exact inverse by Gauss–Jordan elimination on `[self | I]`.
    pub fn inverse(&self) -> Result<Mat> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let mut m = self.clone();
        let mut inv = Mat::identity(self.field, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !m.at(r, col).is_zero());
            let Some(pr) = pivot else {
                return Err(Error::SingularMatrix);
            };
            m.swap_rows(col, pr);
            inv.swap_rows(col, pr);
            let d = m.at(col, col).inv().expect("pivot nonzero");
            for c in 0..n {
                let v = m.at(col, c).mul(&d);
                m.set(col, c, v);
                let w = inv.at(col, c).mul(&d);
                inv.set(col, c, w);
            }
            for r in 0..n {
                if r == col || m.at(r, col).is_zero() {
                    continue;
                }
                let f = m.at(r, col).clone();
                m.row_sub(r, col, &f, 0);
                inv.row_sub(r, col, &f, 0);
            }
        }
        Ok(inv)
    }

    /// Diagonalizes a symmetric matrix by congruence: returns `(Q, D)` with
    /// `Q` nonsingular, `D` diagonal and `(Q⁻¹)ᵗ · S · Q⁻¹ = D` exactly.
    ///
    /// The elimination is deterministic: pivots are scanned in index order,
    /// and a zero diagonal pivot with a nonzero entry in its row is repaired
    /// with the congruence "add row/column j into row/column i" (smallest
    /// such j; applied twice in the rare case where one application leaves
    /// the pivot zero, which forces it nonzero in characteristic ≠ 2). Rows
    /// that are entirely zero stay as zero diagonal entries. An input that is
    /// already diagonal therefore gets `Q = I`.
    pub fn congruence_diagonalize(&self) -> Result<(Mat, Mat)> {
        if !self.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        let n = self.rows;
        let mut m = self.clone();
        // Row-operation accumulator: at every step m = l · self · lᵗ.
        let mut l = Mat::identity(self.field, n);

        let add_rowcol = |m: &mut Mat, l: &mut Mat, i: usize, j: usize| {
            for c in 0..n {
                let v = m.at(i, c).add(m.at(j, c));
                m.set(i, c, v);
            }
            for r in 0..n {
                let v = m.at(r, i).add(m.at(r, j));
                m.set(r, i, v);
            }
            for c in 0..n {
                let v = l.at(i, c).add(l.at(j, c));
                l.set(i, c, v);
            }
        };

        for i in 0..n {
            if m.at(i, i).is_zero() {
                if let Some(j) = (i + 1..n).find(|&j| !m.at(i, j).is_zero()) {
                    add_rowcol(&mut m, &mut l, i, j);
                    if m.at(i, i).is_zero() {
                        // 2·S_ij + S_jj = 0 here; repeating the same move
                        // lands on -4·S_ij ≠ 0.
                        add_rowcol(&mut m, &mut l, i, j);
                    }
                    debug_assert!(!m.at(i, i).is_zero());
                }
            }
            if m.at(i, i).is_zero() {
                continue;
            }
            let inv = m.at(i, i).inv().expect("pivot nonzero");
            for k in i + 1..n {
                if m.at(k, i).is_zero() {
                    continue;
                }
                let f = m.at(k, i).mul(&inv);
                for c in 0..n {
                    let v = m.at(k, c).sub(&f.mul(m.at(i, c)));
                    m.set(k, c, v);
                }
                for r in 0..n {
                    let v = m.at(r, k).sub(&f.mul(m.at(r, i)));
                    m.set(r, k, v);
                }
                for c in 0..n {
                    let v = l.at(k, c).sub(&f.mul(l.at(i, c)));
                    l.set(k, c, v);
                }
            }
        }

        debug_assert!(m.is_diagonal());
        // m = l·S·lᵗ, so Q with (Q⁻¹)ᵗ·S·Q⁻¹ = D is (l⁻¹)ᵗ.
        let q = l
            .inverse()
            .expect("product of elementary congruences is invertible")
            .transpose();
        Ok((q, m))
    }
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.at(r, c))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Incremental row-rank tracker: keeps an echelonized basis of the rows seen
/// so far and accepts a new row only if it enlarges the span.
pub(crate) struct RowBasis {
    cols: usize,
    // (pivot column, reduced row) sorted by pivot column.
    reduced: Vec<(usize, Vec<Scalar>)>,
}

impl RowBasis {
    pub fn new(cols: usize) -> RowBasis {
        RowBasis {
            cols,
            reduced: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    /// The remainder of `row` after reduction against the basis, with its
    /// pivot column; `None` when the row lies in the span.
    fn remainder(&self, row: &Mat) -> Option<(usize, Vec<Scalar>)> {
        assert_eq!(row.rows(), 1);
        assert_eq!(row.cols(), self.cols);
        let mut v: Vec<Scalar> = (0..self.cols).map(|c| row.at(0, c).clone()).collect();
        for (pivot, basis_row) in &self.reduced {
            if v[*pivot].is_zero() {
                continue;
            }
            let f = v[*pivot]
                .div(&basis_row[*pivot])
                .expect("basis pivots are nonzero");
            for c in 0..self.cols {
                v[c] = v[c].sub(&f.mul(&basis_row[c]));
            }
        }
        let pivot = v.iter().position(|s| !s.is_zero())?;
        Some((pivot, v))
    }

    /// Whether `row` would enlarge the span.
    pub fn accepts(&self, row: &Mat) -> bool {
        self.remainder(row).is_some()
    }

    /// Adds `row` if it enlarges the span; returns whether it did.
    pub fn try_add(&mut self, row: &Mat) -> bool {
        match self.remainder(row) {
            Some(entry) => {
                self.reduced.push(entry);
                self.reduced.sort_by_key(|(p, _)| *p);
                true
            }
            None => false,
        }
    }
}
