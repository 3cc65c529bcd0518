//! Dense matrices over the polynomial ring, with fraction-free
//! determinants and Kronecker products.
//!
//! # Design Notes
//!
//! The default determinant is Bareiss elimination: every division along the
//! way is by a previous pivot and is exact, so no rational functions ever
//! appear. A memoized Laplace expansion is kept alongside it as an
//! independent oracle; the two are cross-checked in tests on randomized
//! inputs. The Laplace expansion is generic over a minimal ring interface
//! because other matrix entry types reuse it.

use super::poly::{Assignment, AssignmentF64, MultiPoly};
use super::{ExactError, Rational};
use std::collections::HashMap;

/// Minimal commutative-ring interface for the generic Laplace expansion.
pub trait RingOps: Clone {
    /// Additive identity.
    fn ring_zero() -> Self;
    /// True if the element is the additive identity.
    fn ring_is_zero(&self) -> bool;
    /// Sum.
    fn ring_add(&self, other: &Self) -> Self;
    /// Additive inverse.
    fn ring_neg(&self) -> Self;
    /// Product.
    fn ring_mul(&self, other: &Self) -> Self;
}

impl RingOps for MultiPoly {
    fn ring_zero() -> Self {
        MultiPoly::zero()
    }
    fn ring_is_zero(&self) -> bool {
        self.is_zero()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self.add(other)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self.mul(other)
    }
}

/// Determinant of a square matrix given by an entry accessor, via Laplace
/// expansion along columns with minors memoized by row subset.
///
/// The order must be small (the memo table holds one entry per subset of
/// rows); intended for cross-checking and for entry types without exact
/// division.
pub fn det_laplace_generic<T: RingOps>(n: usize, entry: &dyn Fn(usize, usize) -> T) -> T {
    assert!((1..=20).contains(&n), "Laplace expansion needs order 1..=20");
    let full: u32 = (1u32 << n) - 1;
    let mut memo: HashMap<u32, T> = HashMap::new();
    det_laplace_rec(n, entry, full, &mut memo)
}

fn det_laplace_rec<T: RingOps>(
    n: usize,
    entry: &dyn Fn(usize, usize) -> T,
    rows: u32,
    memo: &mut HashMap<u32, T>,
) -> T {
    let k = rows.count_ones() as usize;
    let col = n - k;
    if k == 1 {
        let i = rows.trailing_zeros() as usize;
        return entry(i, col);
    }
    if let Some(v) = memo.get(&rows) {
        return v.clone();
    }
    let mut acc = T::ring_zero();
    let mut sign_flip = false;
    for i in 0..n {
        if rows & (1 << i) == 0 {
            continue;
        }
        let a = entry(i, col);
        if !a.ring_is_zero() {
            let minor = det_laplace_rec(n, entry, rows & !(1 << i), memo);
            let term = a.ring_mul(&minor);
            acc = if sign_flip {
                acc.ring_add(&term.ring_neg())
            } else {
                acc.ring_add(&term)
            };
        }
        sign_flip = !sign_flip;
    }
    memo.insert(rows, acc.clone());
    acc
}

/// Dense row-major matrix of multivariate polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    /// Builds a matrix from row-major entries. Panics if the entry count is
    /// not rows*cols.
    pub fn new(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> PolyMatrix {
        assert_eq!(
            entries.len(),
            rows * cols,
            "entry count must equal rows*cols"
        );
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix entrywise from a function of (row, col).
    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> MultiPoly,
    ) -> PolyMatrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        PolyMatrix {
            rows,
            cols,
            entries,
        }
    }

    /// Zero matrix.
    pub fn zero(rows: usize, cols: usize) -> PolyMatrix {
        PolyMatrix::from_fn(rows, cols, |_, _| MultiPoly::zero())
    }

    /// Identity matrix.
    pub fn identity(n: usize) -> PolyMatrix {
        PolyMatrix::from_fn(n, n, |i, j| {
            if i == j {
                MultiPoly::one()
            } else {
                MultiPoly::zero()
            }
        })
    }

    /// Row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at (row, col), zero-based.
    pub fn at(&self, row: usize, col: usize) -> &MultiPoly {
        assert!(row < self.rows && col < self.cols, "index out of range");
        &self.entries[row * self.cols + col]
    }

    /// Replaces the entry at (row, col), zero-based.
    pub fn set(&mut self, row: usize, col: usize, value: MultiPoly) {
        assert!(row < self.rows && col < self.cols, "index out of range");
        self.entries[row * self.cols + col] = value;
    }

    /// A row as a vector of polynomials.
    pub fn row(&self, i: usize) -> Vec<MultiPoly> {
        (0..self.cols).map(|j| self.at(i, j).clone()).collect()
    }

    /// A column as a vector of polynomials.
    pub fn col(&self, j: usize) -> Vec<MultiPoly> {
        (0..self.rows).map(|i| self.at(i, j).clone()).collect()
    }

    /// Matrix sum. Panics on dimension mismatch.
    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) + other.at(i, j))
    }

    /// Matrix difference. Panics on dimension mismatch.
    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) - other.at(i, j))
    }

    /// Scales every entry by a polynomial.
    pub fn scale(&self, p: &MultiPoly) -> PolyMatrix {
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| self.at(i, j) * p)
    }

    /// Matrix product. Panics on dimension mismatch.
    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(
            self.cols, other.rows,
            "matrix product dimension mismatch"
        );
        PolyMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = MultiPoly::zero();
            for k in 0..self.cols {
                let a = self.at(i, k);
                if !a.is_zero() {
                    acc = acc.add(&a.mul(other.at(k, j)));
                }
            }
            acc
        })
    }

    /// Matrix power for square matrices.
    pub fn pow(&self, exp: u32) -> PolyMatrix {
        assert_eq!(self.rows, self.cols, "power of a non-square matrix");
        let mut result = PolyMatrix::identity(self.rows);
        for _ in 0..exp {
            result = result.mul(self);
        }
        result
    }

    /// Transpose.
    pub fn transpose(&self) -> PolyMatrix {
        PolyMatrix::from_fn(self.cols, self.rows, |i, j| self.at(j, i).clone())
    }

    /// Kronecker product: block (i1, j1) is self[i1][j1] * other.
    pub fn kron(&self, other: &PolyMatrix) -> PolyMatrix {
        PolyMatrix::from_fn(
            self.rows * other.rows,
            self.cols * other.cols,
            |i, j| {
                let (i1, i2) = (i / other.rows, i % other.rows);
                let (j1, j2) = (j / other.cols, j % other.cols);
                self.at(i1, j1) * other.at(i2, j2)
            },
        )
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> MultiPoly {
        assert_eq!(self.rows, self.cols, "trace of a non-square matrix");
        let mut acc = MultiPoly::zero();
        for i in 0..self.rows {
            acc = acc.add(self.at(i, i));
        }
        acc
    }

    /// Deletes one row and one column (zero-based indices).
    pub fn minor_matrix(&self, drop_row: usize, drop_col: usize) -> PolyMatrix {
        assert!(drop_row < self.rows && drop_col < self.cols);
        PolyMatrix::from_fn(self.rows - 1, self.cols - 1, |i, j| {
            let si = if i < drop_row { i } else { i + 1 };
            let sj = if j < drop_col { j } else { j + 1 };
            self.at(si, sj).clone()
        })
    }

    /// Deletes one row (zero-based).
    pub fn delete_row(&self, drop_row: usize) -> PolyMatrix {
        assert!(drop_row < self.rows);
        PolyMatrix::from_fn(self.rows - 1, self.cols, |i, j| {
            let si = if i < drop_row { i } else { i + 1 };
            self.at(si, j).clone()
        })
    }

    /// Deletes one column (zero-based).
    pub fn delete_col(&self, drop_col: usize) -> PolyMatrix {
        assert!(drop_col < self.cols);
        PolyMatrix::from_fn(self.rows, self.cols - 1, |i, j| {
            let sj = if j < drop_col { j } else { j + 1 };
            self.at(i, sj).clone()
        })
    }

    /// Returns a copy with column `col` replaced by `column`.
    pub fn replace_col(&self, col: usize, column: &[MultiPoly]) -> PolyMatrix {
        assert!(col < self.cols);
        assert_eq!(column.len(), self.rows, "replacement column length");
        PolyMatrix::from_fn(self.rows, self.cols, |i, j| {
            if j == col {
                column[i].clone()
            } else {
                self.at(i, j).clone()
            }
        })
    }

    /// Determinant by fraction-free (Bareiss) elimination: all intermediate
    /// divisions are by previous pivots and are exact.
    pub fn det_fraction_free(&self) -> Result<MultiPoly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(MultiPoly::one());
        }
        let mut m: Vec<Vec<MultiPoly>> = (0..n).map(|i| self.row(i)).collect();
        let mut sign_neg = false;
        let mut prev_pivot = MultiPoly::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                let swap = (k + 1..n).find(|&r| !m[r][k].is_zero());
                match swap {
                    Some(r) => {
                        m.swap(k, r);
                        sign_neg = !sign_neg;
                    }
                    None => return Ok(MultiPoly::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = num
                        .div_exact(&prev_pivot)
                        .expect("fraction-free elimination divides exactly");
                }
                m[i][k] = MultiPoly::zero();
            }
            prev_pivot = m[k][k].clone();
        }
        let det = m[n - 1][n - 1].clone();
        Ok(if sign_neg { det.neg() } else { det })
    }

    /// Determinant by memoized Laplace expansion; independent oracle for
    /// `det_fraction_free`.
    pub fn det_cofactor(&self) -> Result<MultiPoly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if self.rows == 0 {
            return Ok(MultiPoly::one());
        }
        Ok(det_laplace_generic(self.rows, &|i, j| self.at(i, j).clone()))
    }

    /// Evaluates every entry exactly at an assignment.
    pub fn eval(&self, at: &Assignment) -> Result<Vec<Vec<Rational>>, ExactError> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).eval(at)).collect())
            .collect()
    }

    /// Evaluates every entry in floating point.
    pub fn eval_f64(&self, at: &AssignmentF64) -> Result<Vec<Vec<f64>>, ExactError> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.at(i, j).eval_f64(at)).collect())
            .collect()
    }

    /// Maximum rank over a nonempty list of sample assignments. The rank of
    /// a polynomial matrix equals the sampled rank away from a measure-zero
    /// set, so the maximum over independent samples is a high-confidence
    /// lower bound that the callers treat as the generic rank.
    pub fn rank_at_points(&self, samples: &[Assignment]) -> Result<usize, ExactError> {
        if samples.is_empty() {
            return Err(ExactError::EmptySampleList);
        }
        let mut best = 0;
        for at in samples {
            let m = self.eval(at)?;
            best = best.max(super::linalg::rank_exact(&m));
        }
        Ok(best)
    }

    /// Canonical text form: one bracketed row per line, entries in the
    /// canonical polynomial rendering.
    pub fn render(&self) -> String {
        (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = (0..self.cols).map(|j| self.at(i, j).render()).collect();
                format!("[{}]", cells.join(", "))
            })
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// Product of a matrix with a column vector.
pub fn matrix_times_column(m: &PolyMatrix, col: &[MultiPoly]) -> Vec<MultiPoly> {
    assert_eq!(col.len(), m.cols(), "matrix-column dimension mismatch");
    (0..m.rows())
        .map(|i| {
            let mut acc = MultiPoly::zero();
            for (k, c) in col.iter().enumerate() {
                let a = m.at(i, k);
                if !a.is_zero() && !c.is_zero() {
                    acc = acc.add(&a.mul(c));
                }
            }
            acc
        })
        .collect()
}

/// Product of a row vector with a matrix; used for iterated first-row
/// actions without forming matrix powers.
pub fn row_times_matrix(row: &[MultiPoly], m: &PolyMatrix) -> Vec<MultiPoly> {
    assert_eq!(row.len(), m.rows(), "row-vector product dimension mismatch");
    (0..m.cols())
        .map(|j| {
            let mut acc = MultiPoly::zero();
            for (k, r) in row.iter().enumerate() {
                if !r.is_zero() {
                    acc = acc.add(&r.mul(m.at(k, j)));
                }
            }
            acc
        })
        .collect()
}
