//! Exact linear algebra over the rationals.
//!
//! Dense matrices are used for representation data; systems with many
//! unknowns (Hom spaces) go through the sparse eliminator in [`Sparse`].

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// The scalar field.
pub type Q = BigRational;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `3`, `-2/3`, `+1`.
pub fn parse_q(s: &str) -> Option<Q> {
    let s = s.trim();
    let s = s.strip_prefix('+').unwrap_or(s);
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Q::new(n, d))
        }
        None => Some(Q::from_integer(s.parse().ok()?)),
    }
}

pub fn fmt_q(x: &Q) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Q>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| fmt_q(self.get(r, c))).collect();
            writeln!(f, "  [{}]", row.join(" "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Q::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Q::one());
        }
        m
    }

    pub fn from_rows(rows: usize, cols: usize, entries: Vec<Vec<Q>>) -> Self {
        assert_eq!(entries.len(), rows, "row count");
        let mut data = Vec::with_capacity(rows * cols);
        for row in entries {
            assert_eq!(row.len(), cols, "column count");
            data.extend(row);
        }
        Matrix { rows, cols, data }
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols);
        Matrix { rows, cols, data: entries.iter().map(|&x| q(x)).collect() }
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Q>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (c, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (r, x) in col.iter().enumerate() {
                m.set(r, c, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, r: usize, c: usize) -> &Q {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Q) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> Vec<Q> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }

    pub fn column(&self, c: usize) -> Vec<Q> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Q>> {
        (0..self.cols).map(|c| self.column(c)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "shape mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        let idx = r * out.cols + c;
                        out.data[idx] = &out.data[idx] + a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Q]) -> Vec<Q> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| {
                let mut acc = Q::zero();
                for (c, x) in v.iter().enumerate() {
                    let a = self.get(r, c);
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.shape(), other.shape());
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, s: &Q) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * s).collect() }
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, other: &Matrix) -> Matrix {
        let mut m = Self::zeros(self.rows + other.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, self.cols, other);
        m
    }

    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows);
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        m.paste(0, 0, self);
        m.paste(0, self.cols, other);
        m
    }

    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut m = Self::zeros(self.rows + other.rows, self.cols);
        m.paste(0, 0, self);
        m.paste(self.rows, 0, other);
        m
    }

    pub fn paste(&mut self, r0: usize, c0: usize, block: &Matrix) {
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (i, r) in rows.clone().enumerate() {
            for (j, c) in cols.clone().enumerate() {
                m.set(i, j, self.get(r, c).clone());
            }
        }
        m
    }

    fn sparse_rows(&self) -> Vec<Vec<(usize, Q)>> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .filter_map(|c| {
                        let x = self.get(r, c);
                        (!x.is_zero()).then(|| (c, x.clone()))
                    })
                    .collect()
            })
            .collect()
    }

    pub fn rank(&self) -> usize {
        let mut s = Sparse::new(self.cols);
        for row in self.sparse_rows() {
            s.push(row);
        }
        s.rank()
    }

    /// Reduced row echelon form together with the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut s = Sparse::new(self.cols);
        for row in self.sparse_rows() {
            s.push(row);
        }
        s.reduce_fully();
        let pivots = s.pivot_columns();
        let mut m = Self::zeros(self.rows, self.cols);
        for (i, p) in pivots.iter().enumerate() {
            for (c, x) in s.pivot_row(*p) {
                m.set(i, *c, x.clone());
            }
        }
        (m, pivots)
    }

    /// Basis of the right kernel, as column vectors.
    pub fn kernel(&self) -> Vec<Vec<Q>> {
        let mut s = Sparse::new(self.cols);
        for row in self.sparse_rows() {
            s.push(row);
        }
        s.kernel()
    }

    /// Some solution of `self * x = b`, if one exists.
    pub fn solve(&self, b: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(b.len(), self.rows);
        let aug = self.hstack(&Matrix::from_columns(self.rows, &[b.to_vec()]));
        let mut s = Sparse::new(aug.cols);
        for row in aug.sparse_rows() {
            s.push(row);
        }
        s.reduce_fully();
        if s.is_pivot(self.cols) {
            return None;
        }
        let mut x = vec![Q::zero(); self.cols];
        for p in s.pivot_columns() {
            let row = s.pivot_row(p);
            if let Some((_, v)) = row.iter().find(|(c, _)| *c == self.cols) {
                x[p] = v.clone();
            }
        }
        Some(x)
    }

    /// Solve `self * X = B` column by column.
    pub fn solve_matrix(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(b.rows, self.rows);
        let mut cols = Vec::with_capacity(b.cols);
        for c in 0..b.cols {
            cols.push(self.solve(&b.column(c))?);
        }
        Some(Matrix::from_columns(self.cols, &cols))
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        if n == 0 {
            return Some(Matrix::zeros(0, 0));
        }
        let aug = self.hstack(&Matrix::identity(n));
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(r.submatrix(0..n, n..2 * n))
    }

    pub fn determinant(&self) -> Q {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut a = self.clone();
        let mut det = Q::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Q::zero();
            };
            if p != col {
                for c in 0..n {
                    let tmp = a.get(p, c).clone();
                    a.set(p, c, a.get(col, c).clone());
                    a.set(col, c, tmp);
                }
                det = -det;
            }
            let piv = a.get(col, col).clone();
            det *= &piv;
            for r in col + 1..n {
                let f = a.get(r, col) / &piv;
                if f.is_zero() {
                    continue;
                }
                for c in col..n {
                    let v = a.get(r, c) - &f * a.get(col, c);
                    a.set(r, c, v);
                }
            }
        }
        det
    }

    /// Largest absolute numerator or denominator, for diagnostics.
    pub fn height(&self) -> BigInt {
        self.data
            .iter()
            .map(|x| x.numer().abs().max(x.denom().abs()))
            .max()
            .unwrap_or_else(BigInt::zero)
    }
}

/// Column-space basis helpers.
pub fn span_rank(vectors: &[Vec<Q>], dim: usize) -> usize {
    let mut s = Sparse::new(dim);
    for v in vectors {
        s.push(to_sparse(v));
    }
    s.rank()
}

pub fn to_sparse(v: &[Q]) -> Vec<(usize, Q)> {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Indices `k` such that the standard vectors `e_k` extend a basis of
/// `span(vectors)` to the whole space, chosen greedily in index order.
pub fn complement_indices(vectors: &[Vec<Q>], dim: usize) -> Vec<usize> {
    let mut s = Sparse::new(dim);
    for v in vectors {
        s.push(to_sparse(v));
    }
    let mut out = Vec::new();
    for k in 0..dim {
        if s.push(vec![(k, Q::one())]) {
            out.push(k);
        }
    }
    out
}

/// Incremental sparse row echelon form.
///
/// Each stored row is normalized so that its leading entry is 1 and its
/// leading column is unique among stored rows.
#[derive(Clone, Debug)]
pub struct Sparse {
    ncols: usize,
    rows: Vec<Vec<(usize, Q)>>,
    pivot_of: Vec<Option<usize>>,
    fully_reduced: bool,
}

impl Sparse {
    pub fn new(ncols: usize) -> Self {
        Sparse { ncols, rows: Vec::new(), pivot_of: vec![None; ncols], fully_reduced: true }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, c: usize) -> bool {
        self.pivot_of[c].is_some()
    }

    /// Reduce `row` against the stored rows (leading-term reduction only).
    pub fn reduce(&self, mut row: Vec<(usize, Q)>) -> Vec<(usize, Q)> {
        row.sort_by_key(|(c, _)| *c);
        row.retain(|(_, x)| !x.is_zero());
        let mut i = 0;
        while i < row.len() {
            let (c, ref x) = row[i];
            match self.pivot_of[c] {
                Some(p) => {
                    let f = x.clone();
                    row = axpy(&row, &self.rows[p], &-f);
                }
                None => i += 1,
            }
        }
        row
    }

    /// Insert a row; returns true when it increased the rank.
    pub fn push(&mut self, row: Vec<(usize, Q)>) -> bool {
        let mut row = self.reduce(row);
        if row.is_empty() {
            return false;
        }
        let lead = row[0].1.clone();
        if !lead.is_one() {
            for (_, x) in row.iter_mut() {
                *x /= &lead;
            }
        }
        let c = row[0].0;
        self.pivot_of[c] = Some(self.rows.len());
        self.rows.push(row);
        self.fully_reduced = false;
        true
    }

    /// Back-substitute so every pivot column is zero outside its own row.
    pub fn reduce_fully(&mut self) {
        if self.fully_reduced {
            return;
        }
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i][0].0));
        for &i in &order {
            let mut row = std::mem::take(&mut self.rows[i]);
            let lead = row[0].0;
            let mut k = 1;
            while k < row.len() {
                let (c, ref x) = row[k];
                match self.pivot_of[c] {
                    Some(p) if p != i => {
                        debug_assert!(c > lead);
                        let f = x.clone();
                        row = axpy(&row, &self.rows[p], &-f);
                    }
                    _ => k += 1,
                }
            }
            self.rows[i] = row;
        }
        self.fully_reduced = true;
    }

    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.rows.iter().map(|r| r[0].0).collect();
        v.sort_unstable();
        v
    }

    pub fn pivot_row(&self, c: usize) -> &[(usize, Q)] {
        &self.rows[self.pivot_of[c].expect("not a pivot column")]
    }

    pub fn kernel(&mut self) -> Vec<Vec<Q>> {
        self.reduce_fully();
        let mut out = Vec::new();
        for f in 0..self.ncols {
            if self.pivot_of[f].is_some() {
                continue;
            }
            let mut v = vec![Q::zero(); self.ncols];
            v[f] = Q::one();
            for row in &self.rows {
                if let Some((_, x)) = row.iter().find(|(c, _)| *c == f) {
                    v[row[0].0] = -x.clone();
                }
            }
            out.push(v);
        }
        out
    }
}

/// `a + s * b` for sorted sparse rows.
fn axpy(a: &[(usize, Q)], b: &[(usize, Q)], s: &Q) -> Vec<(usize, Q)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let ca = a.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cb = b.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ca < cb {
            out.push(a[i].clone());
            i += 1;
        } else if cb < ca {
            out.push((cb, s * &b[j].1));
            j += 1;
        } else {
            let v = &a[i].1 + s * &b[j].1;
            if !v.is_zero() {
                out.push((ca, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernel_of_rank_one() {
        let m = Matrix::from_i64(2, 3, &[1, 2, 3, 2, 4, 6]);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in &k {
            assert!(m.mul_vec(v).iter().all(Zero::is_zero));
        }
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn inverse_and_determinant() {
        let m = Matrix::from_i64(3, 3, &[1, 0, 0, 1, 1, 0, 2, 1, 1]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Matrix::identity(3));
        assert_eq!(m.determinant(), q(1));
        let s = Matrix::from_i64(2, 2, &[1, 2, 2, 4]);
        assert!(s.inverse().is_none());
        assert_eq!(s.determinant(), q(0));
    }

    #[test]
    fn solve_consistent_and_not() {
        let m = Matrix::from_i64(2, 2, &[1, 1, 1, -1]);
        let x = m.solve(&[q(3), q(1)]).unwrap();
        assert_eq!(x, vec![q(2), q(1)]);
        let s = Matrix::from_i64(2, 2, &[1, 1, 1, 1]);
        assert!(s.solve(&[q(1), q(2)]).is_none());
    }

    #[test]
    fn parse_and_format() {
        assert_eq!(parse_q("-2/3"), Some(q_frac(-2, 3)));
        assert_eq!(parse_q("+4"), Some(q(4)));
        assert_eq!(parse_q("1/0"), None);
        assert_eq!(fmt_q(&q_frac(6, 4)), "3/2");
    }

    #[test]
    fn complement_extends_basis() {
        let v = vec![vec![q(1), q(1), q(0)]];
        let c = complement_indices(&v, 3);
        assert_eq!(c, vec![0, 2]);
    }
}
