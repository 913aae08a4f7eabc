//! Dense exact linear algebra over F2 and GF(4).
//!
//! Vectors are bit-packed into `u64` words. Over F2 only the `lo` plane is
//! used; over GF(4) an entry `a + b*w` stores `a` in `lo` and `b` in `hi`.
//! Matrices are lists of row vectors and act on column vectors, so a matrix
//! with `r` rows and `c` columns is a linear map `F^c -> F^r`.
//!
//! Reduced row echelon forms use leftmost pivots normalised to one, which
//! makes [`Subspace`] a canonical representative: equal subspaces compare
//! equal bit for bit.

use std::fmt;

use rand::Rng;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

const WORD: usize = 64;

fn words_for(len: usize) -> usize {
    len.div_ceil(WORD)
}

/// A bit-packed vector over F2 or GF(4).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vector {
    field: Field,
    len: usize,
    lo: Vec<u64>,
    hi: Vec<u64>,
}

impl Vector {
    pub fn zeros(field: Field, len: usize) -> Vector {
        let w = words_for(len);
        Vector {
            field,
            len,
            lo: vec![0; w],
            hi: if field == Field::F4 { vec![0; w] } else { Vec::new() },
        }
    }

    /// Standard basis vector `e_i`.
    pub fn unit(field: Field, len: usize, i: usize) -> Vector {
        let mut v = Vector::zeros(field, len);
        v.set(i, Scalar::ONE);
        v
    }

    pub fn from_scalars(field: Field, entries: &[Scalar]) -> Result<Vector> {
        let mut v = Vector::zeros(field, entries.len());
        for (i, &s) in entries.iter().enumerate() {
            v.set(i, field.check(s)?);
        }
        Ok(v)
    }

    /// F2 vector from 0/1 entries.
    pub fn from_bits(bits: &[u8]) -> Vector {
        let mut v = Vector::zeros(Field::F2, bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b & 1 == 1 {
                v.set(i, Scalar::ONE);
            }
        }
        v
    }

    pub fn random<R: Rng + ?Sized>(field: Field, len: usize, rng: &mut R) -> Vector {
        let mut v = Vector::zeros(field, len);
        for i in 0..len {
            v.set(i, Scalar::from_bits(rng.gen(), field == Field::F4 && rng.gen()));
        }
        v
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> Scalar {
        debug_assert!(i < self.len);
        let (w, b) = (i / WORD, i % WORD);
        let lo = (self.lo[w] >> b) & 1 == 1;
        let hi = self.field == Field::F4 && (self.hi[w] >> b) & 1 == 1;
        Scalar::from_bits(lo, hi)
    }

    pub fn set(&mut self, i: usize, s: Scalar) {
        debug_assert!(i < self.len);
        debug_assert!(self.field.contains(s));
        let (w, b) = (i / WORD, i % WORD);
        let mask = 1u64 << b;
        if s.lo() {
            self.lo[w] |= mask;
        } else {
            self.lo[w] &= !mask;
        }
        if self.field == Field::F4 {
            if s.hi() {
                self.hi[w] |= mask;
            } else {
                self.hi[w] &= !mask;
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.lo.iter().all(|&w| w == 0) && self.hi.iter().all(|&w| w == 0)
    }

    /// Index of the first nonzero entry.
    pub fn leading(&self) -> Option<usize> {
        self.leading_from(0)
    }

    fn leading_from(&self, start: usize) -> Option<usize> {
        let first = start / WORD;
        for w in first..self.lo.len() {
            let mut word = self.lo[w] | self.hi.get(w).copied().unwrap_or(0);
            if w == first {
                word &= !0u64 << (start % WORD);
            }
            if word != 0 {
                return Some(w * WORD + word.trailing_zeros() as usize);
            }
        }
        None
    }

    /// Indices of nonzero entries, ascending.
    pub fn support(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for w in 0..self.lo.len() {
            let mut word = self.lo[w] | self.hi.get(w).copied().unwrap_or(0);
            while word != 0 {
                let b = word.trailing_zeros() as usize;
                out.push(w * WORD + b);
                word &= word - 1;
            }
        }
        out
    }

    pub fn to_scalars(&self) -> Vec<Scalar> {
        (0..self.len).map(|i| self.get(i)).collect()
    }

    fn same_shape(&self, other: &Vector) {
        debug_assert_eq!(self.len, other.len, "vector length mismatch");
        debug_assert_eq!(self.field, other.field, "vector field mismatch");
    }

    pub fn add_assign(&mut self, other: &Vector) {
        self.same_shape(other);
        for (a, b) in self.lo.iter_mut().zip(&other.lo) {
            *a ^= b;
        }
        for (a, b) in self.hi.iter_mut().zip(&other.hi) {
            *a ^= b;
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, c: Scalar, other: &Vector) {
        self.add_scaled_from(c, other, 0);
    }

    /// `self += c * other`, touching only words from `start_word` on.
    fn add_scaled_from(&mut self, c: Scalar, other: &Vector, start_word: usize) {
        self.same_shape(other);
        match self.field {
            Field::F2 => {
                if c.lo() {
                    for (a, b) in self.lo[start_word..].iter_mut().zip(&other.lo[start_word..]) {
                        *a ^= b;
                    }
                }
            }
            Field::F4 => {
                // (a + bw)(x + yw) = (ax + by) + (ay + bx + by)w
                let (a, b) = (c.lo(), c.hi());
                for w in start_word..self.lo.len() {
                    let (x, y) = (other.lo[w], other.hi[w]);
                    let mut dl = 0;
                    let mut dh = 0;
                    if a {
                        dl ^= x;
                        dh ^= y;
                    }
                    if b {
                        dl ^= y;
                        dh ^= x ^ y;
                    }
                    self.lo[w] ^= dl;
                    self.hi[w] ^= dh;
                }
            }
        }
    }

    pub fn scale(&mut self, c: Scalar) {
        if c == Scalar::ONE {
            return;
        }
        if c.is_zero() {
            self.lo.iter_mut().for_each(|w| *w = 0);
            self.hi.iter_mut().for_each(|w| *w = 0);
            return;
        }
        let src = self.clone();
        self.scale(Scalar::ZERO);
        self.add_scaled(c, &src);
    }

    pub fn scaled(&self, c: Scalar) -> Vector {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    pub fn sum(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_assign(other);
        v
    }

    /// Bilinear pairing `sum_i self_i * other_i`.
    pub fn dot(&self, other: &Vector) -> Scalar {
        self.same_shape(other);
        let mut lo = 0u32;
        let mut hi = 0u32;
        match self.field {
            Field::F2 => {
                for (a, b) in self.lo.iter().zip(&other.lo) {
                    lo += (a & b).count_ones();
                }
            }
            Field::F4 => {
                for w in 0..self.lo.len() {
                    let (a, b) = (self.lo[w], self.hi[w]);
                    let (c, d) = (other.lo[w], other.hi[w]);
                    lo += ((a & c) ^ (b & d)).count_ones();
                    hi += ((a & d) ^ (b & c) ^ (b & d)).count_ones();
                }
            }
        }
        Scalar::from_bits(lo & 1 == 1, hi & 1 == 1)
    }

    /// Concatenation `(self | other)`.
    pub fn concat(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.field, other.field);
        let mut v = Vector::zeros(self.field, self.len + other.len);
        for i in self.support() {
            v.set(i, self.get(i));
        }
        for i in other.support() {
            v.set(self.len + i, other.get(i));
        }
        v
    }

    /// Entries `start..start+len`.
    pub fn slice(&self, start: usize, len: usize) -> Vector {
        let mut v = Vector::zeros(self.field, len);
        for i in self.support() {
            if i >= start && i < start + len {
                v.set(i - start, self.get(i));
            }
        }
        v
    }

    /// Re-embed into a different field (F2 -> GF(4), or GF(4) -> F2 when
    /// every entry lies in F2).
    pub fn to_field(&self, field: Field) -> Result<Vector> {
        let mut v = Vector::zeros(field, self.len);
        for i in self.support() {
            v.set(i, field.check(self.get(i))?);
        }
        Ok(v)
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.len {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.get(i))?;
        }
        write!(f, "]")
    }
}

/// Dense matrix stored as row vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    cols: usize,
    rows: Vec<Vector>,
}

impl Matrix {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, cols, rows: vec![Vector::zeros(field, cols); rows] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        let mut m = Matrix::zero(field, n, n);
        for i in 0..n {
            m.rows[i].set(i, Scalar::ONE);
        }
        m
    }

    pub fn from_rows(field: Field, cols: usize, rows: Vec<Vector>) -> Matrix {
        for r in &rows {
            assert_eq!(r.len(), cols, "row length mismatch");
            assert_eq!(r.field(), field, "row field mismatch");
        }
        Matrix { field, cols, rows }
    }

    /// The matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(field: Field, nrows: usize, columns: &[Vector]) -> Matrix {
        Matrix::from_rows(field, nrows, columns.to_vec()).transpose()
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, f: impl Fn(usize, usize) -> Scalar) -> Matrix {
        let mut m = Matrix::zero(field, rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                let s = f(r, c);
                if !s.is_zero() {
                    m.rows[r].set(c, s);
                }
            }
        }
        m
    }

    /// Parse an F2 matrix from 0/1 rows.
    pub fn from_bit_rows(cols: usize, rows: &[&[u8]]) -> Matrix {
        Matrix::from_rows(Field::F2, cols, rows.iter().map(|r| Vector::from_bits(r)).collect())
    }

    pub fn random<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
        Matrix {
            field,
            cols,
            rows: (0..rows).map(|_| Vector::random(field, cols, rng)).collect(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.rows[r].get(c)
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        self.rows[r].set(c, s)
    }

    pub fn row(&self, r: usize) -> &Vector {
        &self.rows[r]
    }

    pub fn rows(&self) -> &[Vector] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vector> {
        self.rows
    }

    pub fn column(&self, c: usize) -> Vector {
        let mut v = Vector::zeros(self.field, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            let s = row.get(c);
            if !s.is_zero() {
                v.set(r, s);
            }
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vector::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zero(self.field, self.cols, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            for c in row.support() {
                t.rows[c].set(r, row.get(c));
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &Vector) -> Vector {
        assert_eq!(v.len(), self.cols, "mul_vec: length mismatch");
        let mut out = Vector::zeros(self.field, self.nrows());
        for (r, row) in self.rows.iter().enumerate() {
            let s = row.dot(v);
            if !s.is_zero() {
                out.set(r, s);
            }
        }
        out
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.nrows(), "mul: inner dimension mismatch");
        assert_eq!(self.field, other.field, "mul: field mismatch");
        let mut out = Matrix::zero(self.field, self.nrows(), other.cols);
        for (r, row) in self.rows.iter().enumerate() {
            for k in row.support() {
                out.rows[r].add_scaled(row.get(k), &other.rows[k]);
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols), "add: shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.add_assign(b);
        }
        out
    }

    pub fn scaled(&self, c: Scalar) -> Matrix {
        Matrix {
            field: self.field,
            cols: self.cols,
            rows: self.rows.iter().map(|r| r.scaled(c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Matrix {
        assert!(self.is_square());
        let mut acc = Matrix::identity(self.field, self.cols);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Block matrix `[self | other]`.
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.nrows(), other.nrows());
        Matrix {
            field: self.field,
            cols: self.cols + other.cols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a.concat(b)).collect(),
        }
    }

    /// Block matrix `[self; other]`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Matrix { field: self.field, cols: self.cols, rows }
    }

    /// Block diagonal `diag(self, other)`.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let top = self.hstack(&Matrix::zero(self.field, self.nrows(), other.cols));
        let bottom = Matrix::zero(self.field, other.nrows(), self.cols).hstack(other);
        top.vstack(&bottom)
    }

    /// Kronecker product `self (x) other`.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let (r2, c2) = (other.nrows(), other.cols);
        Matrix::from_fn(self.field, self.nrows() * r2, self.cols * c2, |r, c| {
            self.get(r / r2, c / c2) * other.get(r % r2, c % c2)
        })
    }

    /// Sub-block with the given row and column ranges.
    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Matrix {
        let width = cols.end - cols.start;
        Matrix {
            field: self.field,
            cols: width,
            rows: self.rows[rows].iter().map(|r| r.slice(cols.start, width)).collect(),
        }
    }

    pub fn to_field(&self, field: Field) -> Result<Matrix> {
        Ok(Matrix {
            field,
            cols: self.cols,
            rows: self.rows.iter().map(|r| r.to_field(field)).collect::<Result<_>>()?,
        })
    }

    /// Bring into reduced row echelon form in place; returns pivot columns.
    /// Zero rows are moved to the bottom.
    pub fn rref_in_place(&mut self) -> Vec<usize> {
        self.eliminate(true)
    }

    /// Gaussian elimination. With `reduced`, pivot columns are cleared above
    /// the pivot as well.
    fn eliminate(&mut self, reduced: bool) -> Vec<usize> {
        let n = self.rows.len();
        let mut pivots = Vec::new();
        let mut r = 0;
        let mut c = 0;
        while r < n && c < self.cols {
            // Smallest leading column among remaining rows.
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in self.rows.iter().enumerate().skip(r) {
                if let Some(l) = row.leading_from(c) {
                    if best.is_none_or(|(_, bl)| l < bl) {
                        best = Some((i, l));
                        if l == c {
                            break;
                        }
                    }
                }
            }
            let Some((i, col)) = best else { break };
            self.rows.swap(r, i);
            let lead = self.rows[r].get(col);
            if lead != Scalar::ONE {
                self.rows[r].scale(lead.inv().expect("nonzero pivot"));
            }
            let pivot_row = std::mem::replace(&mut self.rows[r], Vector::zeros(self.field, 0));
            let start = col / WORD;
            let range = if reduced { 0..n } else { r + 1..n };
            for k in range {
                if k == r {
                    continue;
                }
                let s = self.rows[k].get(col);
                if !s.is_zero() {
                    self.rows[k].add_scaled_from(s, &pivot_row, start);
                }
            }
            self.rows[r] = pivot_row;
            pivots.push(col);
            r += 1;
            c = col + 1;
        }
        pivots
    }

    pub fn rref(&self) -> Matrix {
        let mut m = self.clone();
        m.rref_in_place();
        m
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(false).len()
    }

    /// Null space `{ x : self * x = 0 }`.
    pub fn kernel(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = Vector::unit(self.field, self.cols, free);
            for (i, &p) in pivots.iter().enumerate() {
                let s = m.rows[i].get(free);
                if !s.is_zero() {
                    // char 2: -s = s
                    v.set(p, s);
                }
            }
            basis.push(v);
        }
        Subspace::from_spanning(self.field, self.cols, basis)
    }

    /// Column space (image of the map).
    pub fn image(&self) -> Subspace {
        Subspace::from_spanning(self.field, self.nrows(), self.transpose().rows)
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_spanning(self.field, self.cols, self.rows.clone())
    }

    /// Some `x` with `self * x = b`.
    pub fn solve(&self, b: &Vector) -> Result<Vector> {
        if b.len() != self.nrows() {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, matrix has {} rows",
                b.len(),
                self.nrows()
            )));
        }
        let column = Matrix::from_columns(self.field, self.nrows(), std::slice::from_ref(b));
        let mut aug = self.hstack(&column);
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Vector::zeros(self.field, self.cols);
        for (i, &p) in pivots.iter().enumerate() {
            x.set(p, aug.rows[i].get(self.cols));
        }
        Ok(x)
    }

    /// Inverse of a square matrix, if it exists.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.cols;
        let mut aug = self.hstack(&Matrix::identity(self.field, n));
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.submatrix(0..n, n..2 * n))
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.nrows(), self.cols, self.field)?;
        for r in &self.rows {
            writeln!(f, "  {r:?}")?;
        }
        Ok(())
    }
}

/// A linear subspace of `F^ambient`, stored as the nonzero rows of its RREF.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    basis: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Subspace {
        Subspace { field, ambient, basis: Vec::new(), pivots: Vec::new() }
    }

    pub fn full(field: Field, ambient: usize) -> Subspace {
        Subspace {
            field,
            ambient,
            basis: (0..ambient).map(|i| Vector::unit(field, ambient, i)).collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn from_spanning(field: Field, ambient: usize, vectors: Vec<Vector>) -> Subspace {
        let mut m = Matrix::from_rows(field, ambient, vectors);
        let pivots = m.rref_in_place();
        let mut basis = m.into_rows();
        basis.truncate(pivots.len());
        Subspace { field, ambient, basis, pivots }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn codim(&self) -> usize {
        self.ambient - self.dim()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Canonical basis (rows of the RREF).
    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn as_matrix(&self) -> Matrix {
        Matrix::from_rows(self.field, self.ambient, self.basis.clone())
    }

    /// Canonical residue of `v` modulo this subspace: all pivot
    /// coordinates cleared.
    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut r = v.clone();
        for (b, &p) in self.basis.iter().zip(&self.pivots) {
            let s = r.get(p);
            if !s.is_zero() {
                r.add_scaled(s, b);
            }
        }
        r
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the canonical basis, or `None` when `v` is not
    /// in the subspace.
    pub fn coords(&self, v: &Vector) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v.get(p)).collect();
        let mut r = v.clone();
        for (b, &s) in self.basis.iter().zip(&c) {
            if !s.is_zero() {
                r.add_scaled(s, b);
            }
        }
        r.is_zero().then_some(c)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.basis.iter().all(|b| other.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut vs = self.basis.clone();
        vs.extend(other.basis.iter().cloned());
        Subspace::from_spanning(self.field, self.ambient, vs)
    }

    /// Intersection via the Zassenhaus construction.
    pub fn intersection(&self, other: &Subspace) -> Subspace {
        let n = self.ambient;
        let zero = Vector::zeros(self.field, n);
        let mut rows: Vec<Vector> = self.basis.iter().map(|u| u.concat(u)).collect();
        rows.extend(other.basis.iter().map(|w| w.concat(&zero)));
        let mut m = Matrix::from_rows(self.field, 2 * n, rows);
        let pivots = m.rref_in_place();
        let out = pivots
            .iter()
            .enumerate()
            .filter(|(_, &p)| p >= n)
            .map(|(i, _)| m.rows()[i].slice(n, n))
            .collect();
        Subspace::from_spanning(self.field, n, out)
    }

    /// Image under a linear map whose domain is the ambient space.
    pub fn map(&self, a: &Matrix) -> Subspace {
        assert_eq!(a.ncols(), self.ambient);
        Subspace::from_spanning(self.field, a.nrows(), self.basis.iter().map(|b| a.mul_vec(b)).collect())
    }

    /// Preimage `{ x : a x in self }` under a map into the ambient space.
    pub fn preimage(&self, a: &Matrix) -> Subspace {
        assert_eq!(a.nrows(), self.ambient);
        // x with a x in self  <=>  (projection to a complement) a x = 0.
        let rows: Vec<Vector> = self.complement_functionals().iter().map(|f| a.transpose().mul_vec(f)).collect();
        Matrix::from_rows(self.field, a.ncols(), rows).kernel()
    }

    /// Linear functionals vanishing exactly on this subspace (a basis of the
    /// annihilator).
    pub fn complement_functionals(&self) -> Vec<Vector> {
        self.as_matrix().kernel().basis
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}", self.dim(), self.ambient)?;
        for b in &self.basis {
            write!(f, ", {b:?}")?;
        }
        write!(f, ")")
    }
}

/// Coset representatives of `W / U` for `U` contained in `W`.
///
/// The representatives are canonical: they vanish on the pivot columns of
/// `U` and are in RREF among themselves.
pub fn quotient_basis(w: &Subspace, u: &Subspace) -> Result<Vec<Vector>> {
    Ok(Quotient::new(w, u)?.reps)
}

/// The quotient `W / U` with canonical representatives and a coordinate map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    numerator: Subspace,
    denominator: Subspace,
    reps: Vec<Vector>,
    rep_pivots: Vec<usize>,
}

impl Quotient {
    pub fn new(w: &Subspace, u: &Subspace) -> Result<Quotient> {
        if w.ambient != u.ambient || w.field != u.field {
            return Err(Error::Dimension("quotient of subspaces in different spaces".into()));
        }
        if !u.is_subspace_of(w) {
            return Err(Error::NotContained);
        }
        let residues: Vec<Vector> = w.basis.iter().map(|b| u.reduce(b)).collect();
        let reduced = Subspace::from_spanning(w.field, w.ambient, residues);
        debug_assert_eq!(reduced.dim() + u.dim(), w.dim());
        Ok(Quotient {
            numerator: w.clone(),
            denominator: u.clone(),
            rep_pivots: reduced.pivots,
            reps: reduced.basis,
        })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn reps(&self) -> &[Vector] {
        &self.reps
    }

    pub fn numerator(&self) -> &Subspace {
        &self.numerator
    }

    pub fn denominator(&self) -> &Subspace {
        &self.denominator
    }

    /// Coordinates of the class of `v`; errors if `v` is not in `W`.
    pub fn coords(&self, v: &Vector) -> Result<Vec<Scalar>> {
        let r = self.denominator.reduce(v);
        let c: Vec<Scalar> = self.rep_pivots.iter().map(|&p| r.get(p)).collect();
        let mut check = r;
        for (b, &s) in self.reps.iter().zip(&c) {
            if !s.is_zero() {
                check.add_scaled(s, b);
            }
        }
        if check.is_zero() {
            Ok(c)
        } else {
            Err(Error::NotContained)
        }
    }

    pub fn coords_vector(&self, v: &Vector) -> Result<Vector> {
        Vector::from_scalars(self.numerator.field, &self.coords(v)?)
    }

    /// Matrix of the map induced on this quotient by `a`, landing in
    /// `target`. Errors if `a` does not descend.
    pub fn induced_map(&self, a: &Matrix, target: &Quotient) -> Result<Matrix> {
        for u in self.denominator.basis() {
            let img = a.mul_vec(u);
            if !target.denominator.contains(&img) {
                return Err(Error::NotContained);
            }
        }
        let cols = self
            .reps
            .iter()
            .map(|r| target.coords_vector(&a.mul_vec(r)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix::from_columns(self.numerator.field, target.dim(), &cols))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn rref_examples() {
        let z = Matrix::zero(Field::F2, 3, 3);
        assert_eq!(z.rref(), z);
        let id = Matrix::identity(Field::F4, 4);
        assert_eq!(id.rref(), id);
        let a = Matrix::from_bit_rows(2, &[&[1, 1], &[1, 1]]);
        assert_eq!(a.rref(), Matrix::from_bit_rows(2, &[&[1, 1], &[0, 0]]));
    }

    #[test]
    fn kernel_examples() {
        assert!(Matrix::identity(Field::F2, 5).kernel().is_zero());
        assert_eq!(Matrix::zero(Field::F2, 4, 4).kernel().dim(), 4);
        let k = Matrix::from_bit_rows(2, &[&[1, 1]]).kernel();
        assert_eq!(k.basis(), &[Vector::from_bits(&[1, 1])]);
    }

    #[test]
    fn solve_examples() {
        let b = Vector::from_bits(&[1, 0, 1]);
        assert_eq!(Matrix::identity(Field::F2, 3).solve(&b).unwrap(), b);
        assert_eq!(Matrix::zero(Field::F2, 3, 3).solve(&b), Err(Error::NoSolution));
        let a = Matrix::from_bit_rows(2, &[&[1, 1], &[0, 1]]);
        assert_eq!(a.solve(&Vector::from_bits(&[0, 1])).unwrap(), Vector::from_bits(&[1, 1]));
    }

    #[test]
    fn quotient_examples() {
        let w = Subspace::full(Field::F2, 2);
        assert!(quotient_basis(&w, &w).unwrap().is_empty());
        let zero = Subspace::zero(Field::F2, 2);
        assert_eq!(quotient_basis(&w, &zero).unwrap().len(), 2);
        let u = Subspace::from_spanning(Field::F2, 2, vec![Vector::from_bits(&[1, 0])]);
        let reps = quotient_basis(&w, &u).unwrap();
        assert_eq!(reps.len(), 1);
        assert!(u.contains(&reps[0].sum(&Vector::from_bits(&[0, 1]))));
        assert_eq!(quotient_basis(&u, &w), Err(Error::NotContained));
    }

    #[test]
    fn gf4_solve_and_inverse() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let a = Matrix::random(Field::F4, 6, 6, &mut rng);
            if let Some(inv) = a.inverse() {
                assert_eq!(a.mul(&inv), Matrix::identity(Field::F4, 6));
            } else {
                assert!(a.rank() < 6);
            }
            let x = Vector::random(Field::F4, 6, &mut rng);
            let b = a.mul_vec(&x);
            let y = a.solve(&b).unwrap();
            assert_eq!(a.mul_vec(&y), b);
        }
    }

    #[test]
    fn intersection_matches_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [Field::F2, Field::F4] {
            for _ in 0..40 {
                let u = Matrix::random(field, 3, 7, &mut rng).row_space();
                let w = Matrix::random(field, 4, 7, &mut rng).row_space();
                let i = u.intersection(&w);
                assert!(i.is_subspace_of(&u) && i.is_subspace_of(&w));
                assert_eq!(i.dim() + u.sum(&w).dim(), u.dim() + w.dim());
            }
        }
    }

    #[test]
    fn wide_matrices_cross_word_boundaries() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for field in [Field::F2, Field::F4] {
            let a = Matrix::random(field, 90, 150, &mut rng);
            let k = a.kernel();
            assert_eq!(a.rank() + k.dim(), 150);
            for b in k.basis() {
                assert!(a.mul_vec(b).is_zero());
            }
            assert_eq!(a.rref().rref(), a.rref());
        }
    }

    #[test]
    fn preimage_is_correct() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = Matrix::random(Field::F2, 6, 8, &mut rng);
        let s = Matrix::random(Field::F2, 2, 6, &mut rng).row_space();
        let p = s.preimage(&a);
        for b in p.basis() {
            assert!(s.contains(&a.mul_vec(b)));
        }
        let expected = a.image().intersection(&s).dim() + a.kernel().dim();
        assert_eq!(p.dim(), expected);
    }
}
