//! Dense exact matrices and the elimination kernels everything else is built on.

use std::fmt;
use std::ops::{Index, IndexMut};
use std::sync::atomic::{AtomicUsize, Ordering};

use crate::scalar::Field;

static DIMENSION_CAP: AtomicUsize = AtomicUsize::new(512);

/// Largest module / unknown count operations accept before refusing.
pub fn dimension_cap() -> usize {
    DIMENSION_CAP.load(Ordering::Relaxed)
}

pub fn set_dimension_cap(cap: usize) {
    DIMENSION_CAP.store(cap.max(1), Ordering::Relaxed);
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LinalgError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("inconsistent linear system")]
    Inconsistent,
    #[error("dimension {0} exceeds the configured cap {1}")]
    DimensionCap(usize, usize),
}

pub fn check_cap(n: usize) -> Result<(), LinalgError> {
    let cap = dimension_cap();
    if n > cap {
        Err(LinalgError::DimensionCap(n, cap))
    } else {
        Ok(())
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

impl<F: Field> Matrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = F::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&v| F::from_i64(v)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, cols: &[Vec<F>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        m
    }

    pub fn column_vector(v: &[F]) -> Self {
        Matrix { rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<F>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    /// Row-major flattening.
    pub fn as_slice(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = &self[(i, j)];
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn scale(&self, s: &F) -> Self {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add: shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() + b.clone()).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub: shape");
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.clone() - b.clone()).collect(),
        }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &F, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add_scaled: shape");
        if s.is_zero() {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !b.is_zero() {
                *a += s.clone() * b.clone();
            }
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul: inner dimension {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i * self.cols + k];
                if a.is_zero() {
                    continue;
                }
                let orow = &other.data[k * other.cols..(k + 1) * other.cols];
                let dst = &mut out.data[i * other.cols..(i + 1) * other.cols];
                for (d, b) in dst.iter_mut().zip(orow) {
                    if !b.is_zero() {
                        *d += a.clone() * b.clone();
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "mul_vec: length");
        (0..self.rows)
            .map(|i| {
                let mut acc = F::zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += a.clone() * b.clone();
                    }
                }
                acc
            })
            .collect()
    }

    pub fn hstack(blocks: &[&Self]) -> Self {
        let rows = blocks.first().map_or(0, |b| b.rows);
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack: rows");
            out.set_block(0, off, b);
            off += b.cols;
        }
        out
    }

    pub fn vstack(blocks: &[&Self]) -> Self {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let rows = blocks.iter().map(|b| b.rows).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack: cols");
            out.set_block(off, 0, b);
            off += b.rows;
        }
        out
    }

    /// Block-diagonal sum.
    pub fn direct_sum(blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.set_block(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    pub fn set_block(&mut self, r0: usize, c0: usize, b: &Self) {
        assert!(r0 + b.rows <= self.rows && c0 + b.cols <= self.cols, "set_block: out of range");
        for i in 0..b.rows {
            for j in 0..b.cols {
                self[(r0 + i, c0 + j)] = b[(i, j)].clone();
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |i, j| self[(r0 + i, c0 + j)].clone())
    }

    pub fn select_cols(&self, cols: &[usize]) -> Self {
        Self::from_fn(self.rows, cols.len(), |i, j| self[(i, cols[j])].clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(rows.len(), self.cols, |i, j| self[(rows[i], j)].clone())
    }

    /// Kronecker product.
    pub fn kron(&self, other: &Self) -> Self {
        Self::from_fn(self.rows * other.rows, self.cols * other.cols, |i, j| {
            let a = &self[(i / other.rows, j / other.cols)];
            if a.is_zero() {
                F::zero()
            } else {
                a.clone() * other[(i % other.rows, j % other.cols)].clone()
            }
        })
    }

    /// Gaussian elimination in place.  With `reduced` the result is the reduced
    /// row echelon form.  Returns the pivot columns.
    fn eliminate(&mut self, reduced: bool) -> Vec<usize> {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.data[i * cols + c].is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.data.swap(p * cols + j, r * cols + j);
                }
            }
            let inv = self.data[r * cols + c].inverse().expect("nonzero pivot");
            if !inv.is_one() {
                for j in c..cols {
                    let v = &mut self.data[r * cols + j];
                    if !v.is_zero() {
                        *v = v.clone() * inv.clone();
                    }
                }
            }
            let pivot_row: Vec<(usize, F)> = (c..cols)
                .filter_map(|j| {
                    let v = &self.data[r * cols + j];
                    (!v.is_zero()).then(|| (j, v.clone()))
                })
                .collect();
            let start = if reduced { 0 } else { r + 1 };
            for i in start..rows {
                if i == r {
                    continue;
                }
                let f = self.data[i * cols + c].clone();
                if f.is_zero() {
                    continue;
                }
                for (j, v) in &pivot_row {
                    let d = &mut self.data[i * cols + j];
                    *d -= f.clone() * v.clone();
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let p = m.eliminate(true);
        (m, p)
    }

    pub fn rank(&self) -> usize {
        if self.rows > self.cols {
            return self.transpose().rank();
        }
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// Basis of the null space, as the columns of the returned matrix.
    pub fn kernel(&self) -> Self {
        let (r, pivots) = self.rref();
        kernel_from_rref(&r, &pivots)
    }

    /// Pivot-column basis of the column space (a subset of the columns).
    pub fn column_space(&self) -> Self {
        let (_, p) = self.rref();
        self.select_cols(&p)
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.eliminate(false)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Self::zeros(0, 0));
        }
        let aug = Self::hstack(&[self, &Self::identity(n)]);
        let (r, p) = aug.rref();
        if p.len() < n || p[n - 1] != n - 1 {
            return None;
        }
        Some(r.block(0, n, n, n))
    }

    /// One solution of `self · x = rhs`, or `None` when inconsistent.
    pub fn solve(&self, rhs: &[F]) -> Option<Vec<F>> {
        assert_eq!(rhs.len(), self.rows, "solve: rhs length");
        let aug = Self::hstack(&[self, &Self::column_vector(rhs)]);
        let (r, p) = aug.rref();
        if p.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &c) in p.iter().enumerate() {
            x[c] = r[(i, self.cols)].clone();
        }
        Some(x)
    }
}

fn kernel_from_rref<F: Field>(r: &Matrix<F>, pivots: &[usize]) -> Matrix<F> {
    let cols = r.cols();
    let mut is_pivot = vec![false; cols];
    for &p in pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..cols).filter(|&c| !is_pivot[c]).collect();
    let mut k = Matrix::zeros(cols, free.len());
    for (t, &f) in free.iter().enumerate() {
        k[(f, t)] = F::one();
        for (i, &p) in pivots.iter().enumerate() {
            let v = &r[(i, f)];
            if !v.is_zero() {
                k[(p, t)] = -v.clone();
            }
        }
    }
    k
}

impl<F> Index<(usize, usize)> for Matrix<F> {
    type Output = F;
    fn index(&self, (i, j): (usize, usize)) -> &F {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<F> IndexMut<(usize, usize)> for Matrix<F> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut F {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<F: fmt::Debug> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| format!("{:?}", self.data[i * self.cols + j])).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Everything one usually wants from a single elimination.
#[derive(Debug, Clone)]
pub struct LinearToolkit<F> {
    pub rank: usize,
    pub kernel_basis: Vec<Vec<F>>,
    /// One solution per right-hand-side column, as columns of a matrix.
    pub particular_solution: Option<Matrix<F>>,
    pub rref: Matrix<F>,
    pub pivots: Vec<usize>,
}

/// Rank, kernel, rref and (optionally) a particular solution of `m · x = rhs`.
pub fn linear_toolkit<F: Field>(m: &Matrix<F>, rhs: Option<&Matrix<F>>) -> Result<LinearToolkit<F>, LinalgError> {
    check_cap(m.cols())?;
    if let Some(b) = rhs {
        if b.rows() != m.rows() {
            return Err(LinalgError::DimensionMismatch(format!(
                "matrix has {} rows but right-hand side has {}",
                m.rows(),
                b.rows()
            )));
        }
    }
    let (rref, pivots) = m.rref();
    let kernel = kernel_from_rref(&rref, &pivots);
    let particular_solution = match rhs {
        None => None,
        Some(b) => {
            let aug = Matrix::hstack(&[m, b]);
            let (r, p) = aug.rref();
            if p.iter().any(|&c| c >= m.cols()) {
                return Err(LinalgError::Inconsistent);
            }
            let mut x = Matrix::zeros(m.cols(), b.cols());
            for (i, &c) in p.iter().enumerate() {
                for j in 0..b.cols() {
                    x[(c, j)] = r[(i, m.cols() + j)].clone();
                }
            }
            Some(x)
        }
    };
    Ok(LinearToolkit { rank: pivots.len(), kernel_basis: kernel.columns(), particular_solution, rref, pivots })
}

/// A full-column-rank matrix together with a fast left inverse, used to read
/// off coordinates of vectors lying in its column space.
#[derive(Clone, Debug)]
pub struct ColumnBasis<F> {
    basis: Matrix<F>,
    rows: Vec<usize>,
    inv: Matrix<F>,
}

impl<F: Field> ColumnBasis<F> {
    /// Panics if the columns are dependent.
    pub fn new(basis: Matrix<F>) -> Self {
        let r = basis.cols();
        let rows = basis.transpose().pivot_columns();
        assert_eq!(rows.len(), r, "ColumnBasis: columns are linearly dependent");
        let inv = basis.select_rows(&rows).inverse().expect("selected rows invertible");
        ColumnBasis { basis, rows, inv }
    }

    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.rows()
    }

    /// Coordinates of `v`, assuming it lies in the span.
    pub fn coords(&self, v: &[F]) -> Vec<F> {
        let sel: Vec<F> = self.rows.iter().map(|&i| v[i].clone()).collect();
        self.inv.mul_vec(&sel)
    }

    /// Coordinates of `v`, or `None` if `v` is not in the span.
    pub fn coords_checked(&self, v: &[F]) -> Option<Vec<F>> {
        let c = self.coords(v);
        (self.basis.mul_vec(&c) == v).then_some(c)
    }

    /// Coordinates of every column of `m`.
    pub fn coords_matrix(&self, m: &Matrix<F>) -> Matrix<F> {
        self.inv.mul(&m.select_rows(&self.rows))
    }

    pub fn contains(&self, v: &[F]) -> bool {
        self.coords_checked(v).is_some()
    }
}

/// Coordinates (indices of standard basis vectors) complementing the span of
/// the columns of `sub`, chosen as the non-pivot coordinates of its row space.
pub fn complement_coordinates<F: Field>(sub: &Matrix<F>) -> Vec<usize> {
    let n = sub.rows();
    let piv = sub.transpose().pivot_columns();
    let mut is_p = vec![false; n];
    for p in piv {
        is_p[p] = true;
    }
    (0..n).filter(|&i| !is_p[i]).collect()
}

/// Projection `V → V / span(sub)` onto the complement coordinates returned by
/// [`complement_coordinates`]; returns `(projection, section)` with
/// `projection · section = I`.
pub fn quotient_projection<F: Field>(sub: &Matrix<F>) -> (Matrix<F>, Matrix<F>) {
    let n = sub.rows();
    let (r, piv) = sub.transpose().rref();
    let mut is_p = vec![false; n];
    for &p in &piv {
        is_p[p] = true;
    }
    let comp: Vec<usize> = (0..n).filter(|&i| !is_p[i]).collect();
    let mut pos = vec![usize::MAX; n];
    for (t, &c) in comp.iter().enumerate() {
        pos[c] = t;
    }
    let mut proj = Matrix::zeros(comp.len(), n);
    for (t, &c) in comp.iter().enumerate() {
        proj[(t, c)] = F::one();
    }
    // A pivot coordinate e_p is congruent to -Σ r[i][c] e_c over free c.
    for (i, &p) in piv.iter().enumerate() {
        for &c in &comp {
            let v = &r[(i, c)];
            if !v.is_zero() {
                proj[(pos[c], p)] = -v.clone();
            }
        }
    }
    let mut sec = Matrix::zeros(n, comp.len());
    for (t, &c) in comp.iter().enumerate() {
        sec[(c, t)] = F::one();
    }
    (proj, sec)
}

/// Projection onto a prescribed complement: `[sub | comp]` must be invertible.
/// Returns `(projection, section)` where the section is `comp` itself.
pub fn quotient_projection_onto<F: Field>(sub: &Matrix<F>, comp: &Matrix<F>) -> Option<(Matrix<F>, Matrix<F>)> {
    let n = sub.rows();
    let full = Matrix::hstack(&[sub, comp]);
    let inv = full.inverse()?;
    let k = sub.cols();
    Some((inv.block(k, 0, n - k, n), comp.clone()))
}

/// Basis (as columns) of the intersection of two column spans.
pub fn intersection<F: Field>(a: &Matrix<F>, b: &Matrix<F>) -> Matrix<F> {
    let a = a.column_space();
    let b = b.column_space();
    let joint = Matrix::hstack(&[&a, &b.scale(&-F::one())]);
    let k = joint.kernel();
    let coeffs = k.block(0, 0, a.cols(), k.cols());
    a.mul(&coeffs).column_space()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{Fp, Rational};

    type Q = Rational;

    #[test]
    fn toolkit_examples() {
        let id = Matrix::<Q>::identity(3);
        let t = linear_toolkit(&id, None).unwrap();
        assert_eq!(t.rank, 3);
        assert!(t.kernel_basis.is_empty());

        let z = Matrix::<Q>::zeros(2, 3);
        let t = linear_toolkit(&z, None).unwrap();
        assert_eq!((t.rank, t.kernel_basis.len()), (0, 3));

        let m = Matrix::<Q>::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let t = linear_toolkit(&m, None).unwrap();
        assert_eq!(t.rank, 1);
        assert_eq!(t.kernel_basis, vec![vec![Q::from_i64(-2), Q::from_i64(1)]]);
    }

    #[test]
    fn inconsistent_is_distinct_from_mismatch() {
        let m = Matrix::<Q>::from_i64_rows(&[&[1, 2], &[2, 4]]);
        let rhs = Matrix::<Q>::from_i64_rows(&[&[1], &[0]]);
        assert_eq!(linear_toolkit(&m, Some(&rhs)).unwrap_err(), LinalgError::Inconsistent);
        let bad = Matrix::<Q>::from_i64_rows(&[&[1]]);
        assert!(matches!(linear_toolkit(&m, Some(&bad)).unwrap_err(), LinalgError::DimensionMismatch(_)));
        let ok = Matrix::<Q>::from_i64_rows(&[&[3], &[6]]);
        let t = linear_toolkit(&m, Some(&ok)).unwrap();
        assert_eq!(m.mul(t.particular_solution.as_ref().unwrap()), ok);
    }

    #[test]
    fn inverse_and_quotients() {
        let m = Matrix::<Fp<7>>::from_i64_rows(&[&[1, 2], &[3, 4]]);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        let sub = Matrix::<Q>::from_i64_rows(&[&[1], &[1], &[0]]);
        let (p, s) = quotient_projection(&sub);
        assert!(p.mul(&s).is_identity());
        assert!(p.mul(&sub).is_zero());
    }

    #[test]
    fn intersection_of_planes() {
        let a = Matrix::<Q>::from_i64_rows(&[&[1, 0], &[0, 1], &[0, 0]]);
        let b = Matrix::<Q>::from_i64_rows(&[&[0, 0], &[1, 0], &[0, 1]]);
        assert_eq!(intersection(&a, &b).cols(), 1);
    }
}
