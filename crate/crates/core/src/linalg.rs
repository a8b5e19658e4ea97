//! Dense linear algebra over GF(q).
//!
//! Entries are field-element encodings (`u32`). A [`Subspace`] always
//! stores its basis in reduced row-echelon form, so two subspaces are
//! equal as sets exactly when their stored bases are identical.

use std::fmt;

use crate::gf::{Field, FieldElem};
use crate::{Error, Limits, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Matrix {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: &Field, n: usize) -> Matrix {
        let mut m = Matrix::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Builds a `rows.len() x cols` matrix, rejecting ragged input and
    /// unreduced entries.
    pub fn from_rows(field: &Field, cols: usize, rows: &[Vec<u32>]) -> Result<Matrix> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::RaggedMatrix {
                    row: i,
                    expected: cols,
                    found: row.len(),
                });
            }
            if let Some(&e) = row.iter().find(|&&e| e >= field.q()) {
                return Err(Error::ElementOutOfRange {
                    enc: e as u64,
                    q: field.q() as u64,
                });
            }
            data.extend_from_slice(row);
        }
        Ok(Matrix {
            field: field.clone(),
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn num_rows(&self) -> usize {
        self.rows
    }

    pub fn num_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        self.rows().map(<[u32]>::to_vec).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&e| e == 0)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Gauss-Jordan in place; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == self.rows {
                break;
            }
            let Some(pr) = (r..self.rows).find(|&i| self.data[i * cols + c] != 0) else {
                continue;
            };
            self.swap_rows(r, pr);
            let inv = f.inv(self.data[r * cols + c]).unwrap();
            for j in c..cols {
                self.data[r * cols + j] = f.mul(self.data[r * cols + j], inv);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let factor = self.data[i * cols + c];
                if factor == 0 {
                    continue;
                }
                for j in c..cols {
                    let t = f.mul(factor, self.data[r * cols + j]);
                    self.data[i * cols + j] = f.sub(self.data[i * cols + j], t);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Basis (as rows) of the right kernel `{x : M x = 0}`.
    pub fn nullspace(&self) -> Matrix {
        let mut r = self.clone();
        let pivots = r.rref_in_place();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Matrix::zeros(&self.field, free.len(), self.cols);
        for (row, &fc) in free.iter().enumerate() {
            out.data[row * self.cols + fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                out.data[row * self.cols + pc] = self.field.neg(r.get(i, fc));
            }
        }
        out
    }

    /// Inverse of a square matrix, if it is invertible.
    pub fn inverse(&self) -> Option<Matrix> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let mut aug = Matrix::zeros(&self.field, n, 2 * n);
        for i in 0..n {
            aug.data[i * 2 * n..i * 2 * n + n].copy_from_slice(self.row(i));
            aug.data[i * 2 * n + n + i] = 1;
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(&self.field, n, n);
        for i in 0..n {
            inv.data[i * n..(i + 1) * n].copy_from_slice(&aug.row(i)[n..]);
        }
        Some(inv)
    }

    /// Row vector times matrix.
    pub fn left_mul(&self, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![0u32; self.cols];
        for (i, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &e) in out.iter_mut().zip(self.row(i)) {
                *o = self.field.add(*o, self.field.mul(c, e));
            }
        }
        out
    }

    /// Matrix times column vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        debug_assert_eq!(v.len(), self.cols);
        self.rows()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| self.field.add(acc, self.field.mul(a, b)))
            })
            .collect()
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "Matrix {}x{} over {:?}",
            self.rows, self.cols, self.field
        )?;
        for row in self.rows() {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Unique RREF of `m` (same shape, zero rows last) and its rank.
pub fn rref(m: &Matrix) -> (Matrix, usize) {
    let mut r = m.clone();
    let rank = r.rref_in_place().len();
    (r, rank)
}

/// A vector of F_q^n.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FqVec {
    field: Field,
    entries: Vec<u32>,
}

impl FqVec {
    pub fn new(field: &Field, entries: Vec<u32>) -> Result<FqVec> {
        if let Some(&e) = entries.iter().find(|&&e| e >= field.q()) {
            return Err(Error::ElementOutOfRange {
                enc: e as u64,
                q: field.q() as u64,
            });
        }
        Ok(FqVec {
            field: field.clone(),
            entries,
        })
    }

    pub fn from_elems(elems: &[FieldElem]) -> Result<FqVec> {
        let Some(first) = elems.first() else {
            return Err(Error::Malformed(
                "empty vector needs an explicit field".into(),
            ));
        };
        for e in elems {
            first.field().ensure_same(e.field())?;
        }
        Ok(FqVec {
            field: first.field().clone(),
            entries: elems.iter().map(FieldElem::enc).collect(),
        })
    }

    pub fn zero(field: &Field, n: usize) -> FqVec {
        FqVec {
            field: field.clone(),
            entries: vec![0; n],
        }
    }

    pub fn unit(field: &Field, n: usize, i: usize) -> FqVec {
        let mut v = FqVec::zero(field, n);
        v.entries[i] = 1;
        v
    }

    /// Inverse of [`FqVec::encode`].
    pub fn decode(field: &Field, n: usize, mut enc: u64) -> FqVec {
        let q = field.q() as u64;
        let entries = (0..n)
            .map(|_| {
                let e = (enc % q) as u32;
                enc /= q;
                e
            })
            .collect();
        FqVec {
            field: field.clone(),
            entries,
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn elem(&self, i: usize) -> FieldElem {
        self.field.elem(self.entries[i]).unwrap()
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&e| e == 0)
    }

    /// `sum entries[i] * q^i`, a bijection F_q^n -> [0, q^n).
    pub fn encode(&self) -> u64 {
        encode_entries(self.field.q(), &self.entries)
    }

    pub fn add(&self, other: &FqVec) -> Result<FqVec> {
        self.check_compatible(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(&a, &b)| self.field.add(a, b))
            .collect();
        Ok(FqVec {
            field: self.field.clone(),
            entries,
        })
    }

    pub fn scale(&self, c: u32) -> FqVec {
        FqVec {
            field: self.field.clone(),
            entries: self.entries.iter().map(|&e| self.field.mul(c, e)).collect(),
        }
    }

    fn check_compatible(&self, other: &FqVec) -> Result<()> {
        self.field.ensure_same(&other.field)?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for FqVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.entries)
    }
}

pub(crate) fn encode_entries(q: u32, entries: &[u32]) -> u64 {
    entries
        .iter()
        .rev()
        .fold(0u64, |acc, &e| acc * q as u64 + e as u64)
}

/// A subspace of F_q^n held as a canonical RREF basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    n: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, n: usize) -> Subspace {
        Subspace {
            n,
            basis: Matrix::zeros(field, 0, n),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: &Field, n: usize) -> Subspace {
        Subspace {
            n,
            basis: Matrix::identity(field, n),
            pivots: (0..n).collect(),
        }
    }

    /// Span of the standard basis vectors `e_i` for `i` in `coords`.
    pub fn coordinate(
        field: &Field,
        n: usize,
        coords: impl IntoIterator<Item = usize>,
    ) -> Subspace {
        let rows = coords
            .into_iter()
            .map(|i| {
                let mut r = vec![0; n];
                r[i] = 1;
                r
            })
            .collect::<Vec<_>>();
        Subspace::from_rows(field, n, &rows).expect("coordinate rows are well formed")
    }

    pub fn from_generators(field: &Field, n: usize, vectors: &[FqVec]) -> Result<Subspace> {
        for v in vectors {
            field.ensure_same(v.field())?;
            if v.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: v.dim(),
                });
            }
        }
        let rows: Vec<Vec<u32>> = vectors.iter().map(|v| v.entries.clone()).collect();
        Subspace::from_rows(field, n, &rows)
    }

    /// Span of raw rows of length `n`.
    pub fn from_rows(field: &Field, n: usize, rows: &[Vec<u32>]) -> Result<Subspace> {
        Ok(Subspace::from_matrix(Matrix::from_rows(field, n, rows)?))
    }

    pub fn from_matrix(mut m: Matrix) -> Subspace {
        let pivots = m.rref_in_place();
        m.rows = pivots.len();
        m.data.truncate(m.rows * m.cols);
        Subspace {
            n: m.cols,
            basis: m,
            pivots,
        }
    }

    /// Accepts `rows` only if they already form an RREF basis.
    pub fn from_rref_rows(field: &Field, n: usize, rows: &[Vec<u32>]) -> Result<Subspace> {
        let m = Matrix::from_rows(field, n, rows)?;
        let s = Subspace::from_matrix(m.clone());
        if s.basis != m {
            return Err(Error::Malformed(
                "basis rows are not a reduced row-echelon basis".into(),
            ));
        }
        Ok(s)
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn codim(&self) -> usize {
        self.n - self.dim()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check_vec(&self, v: &FqVec) -> Result<()> {
        self.field().ensure_same(v.field())?;
        if v.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: v.dim(),
            });
        }
        Ok(())
    }

    fn check_same_ambient(&self, other: &Subspace) -> Result<()> {
        self.field().ensure_same(other.field())?;
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Reduces `v` against the basis; the residual vanishes on every
    /// pivot column and is zero iff `v` lies in the subspace.
    pub(crate) fn reduce(&self, v: &mut [u32]) {
        let f = self.field();
        for (i, &pc) in self.pivots.iter().enumerate() {
            let c = v[pc];
            if c == 0 {
                continue;
            }
            for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                if b != 0 {
                    *x = f.sub(*x, f.mul(c, b));
                }
            }
        }
    }

    pub(crate) fn contains_raw(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&e| e == 0)
    }

    pub fn contains(&self, v: &FqVec) -> Result<bool> {
        self.check_vec(v)?;
        Ok(self.contains_raw(&v.entries))
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_same_ambient(other)?;
        Ok(self.basis.rows().all(|r| other.contains_raw(r)))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let mut rows = self.basis.to_rows();
        rows.extend(other.basis.to_rows());
        Subspace::from_rows(self.field(), self.n, &rows)
    }

    /// Vectors orthogonal to the subspace under the standard form.
    pub fn annihilator(&self) -> Subspace {
        Subspace::from_matrix(self.basis.nullspace())
    }

    /// `S ∩ T = (S^⊥ + T^⊥)^⊥`, the kernel of the stacked dual system.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same_ambient(other)?;
        let mut rows = self.annihilator().basis.to_rows();
        rows.extend(other.annihilator().basis.to_rows());
        let stacked = Matrix::from_rows(self.field(), self.n, &rows)?;
        Ok(Subspace::from_matrix(stacked.nullspace()))
    }

    /// Image under the inclusion F^n -> F^big_n onto the first n coordinates.
    pub fn pad_to(&self, big_n: usize) -> Subspace {
        assert!(big_n >= self.n);
        let rows: Vec<Vec<u32>> = self
            .basis
            .rows()
            .map(|r| {
                let mut v = r.to_vec();
                v.resize(big_n, 0);
                v
            })
            .collect();
        // zero padding keeps the basis in RREF
        Subspace {
            n: big_n,
            basis: Matrix::from_rows(self.field(), big_n, &rows).unwrap(),
            pivots: self.pivots.clone(),
        }
    }

    /// Number of vectors, `q^dim`, if it fits in u64.
    pub fn size(&self) -> Option<u64> {
        crate::limits::checked_pow(self.field().q() as u64, self.dim())
    }

    /// Calls `visit` on every vector of the subspace exactly once, ordered
    /// by coefficient tuple (first basis row most significant).
    pub(crate) fn for_each_vector(&self, mut visit: impl FnMut(&[u32])) {
        let f = self.field();
        let q = f.q();
        let r = self.dim();
        let mut coeffs = vec![0u32; r];
        let mut v = vec![0u32; self.n];
        loop {
            v.iter_mut().for_each(|x| *x = 0);
            for (i, &c) in coeffs.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for (x, &b) in v.iter_mut().zip(self.basis.row(i)) {
                    *x = f.add(*x, f.mul(c, b));
                }
            }
            visit(&v);
            let mut i = r;
            loop {
                if i == 0 {
                    return;
                }
                i -= 1;
                coeffs[i] += 1;
                if coeffs[i] < q {
                    break;
                }
                coeffs[i] = 0;
            }
        }
    }

    pub fn enumerate_vectors(&self, limits: &Limits) -> Result<Vec<FqVec>> {
        limits.check_q_pow(self.field().q() as u64, self.dim())?;
        let mut out = Vec::new();
        self.for_each_vector(|v| {
            out.push(FqVec {
                field: self.field().clone(),
                entries: v.to_vec(),
            })
        });
        Ok(out)
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace(dim {} in {:?}^{}, basis {:?})",
            self.dim(),
            self.field(),
            self.n,
            self.basis.to_rows()
        )
    }
}

/// The projection F^n -> F^n / V0 ≅ F^t.
///
/// Quotient coordinates are the non-pivot columns of V0's RREF, in
/// increasing order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearQuotient {
    kernel: Subspace,
    coords: Vec<usize>,
    coordinate_map: Matrix,
}

impl LinearQuotient {
    pub fn new(kernel: &Subspace) -> Result<LinearQuotient> {
        if kernel.codim() == 0 {
            return Err(Error::InvalidParameter(
                "quotient kernel must be a proper subspace".into(),
            ));
        }
        let n = kernel.ambient_dim();
        let f = kernel.field();
        let coords: Vec<usize> = (0..n).filter(|c| !kernel.pivots.contains(c)).collect();
        let mut map = Matrix::zeros(f, coords.len(), n);
        // project(v)_j = v_j - sum_i v_{pivot_i} R[i][j]
        for (row, &j) in coords.iter().enumerate() {
            map.data[row * n + j] = 1;
            for (i, &pc) in kernel.pivots.iter().enumerate() {
                map.data[row * n + pc] = f.neg(kernel.basis.get(i, j));
            }
        }
        Ok(LinearQuotient {
            kernel: kernel.clone(),
            coords,
            coordinate_map: map,
        })
    }

    pub fn kernel(&self) -> &Subspace {
        &self.kernel
    }

    pub fn ambient_dim(&self) -> usize {
        self.kernel.ambient_dim()
    }

    pub fn quotient_dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coordinate_map(&self) -> &Matrix {
        &self.coordinate_map
    }

    pub fn complement_coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn project(&self, v: &FqVec) -> Result<FqVec> {
        self.kernel.check_vec(v)?;
        Ok(FqVec {
            field: v.field.clone(),
            entries: self.coordinate_map.apply(&v.entries),
        })
    }

    /// Full preimage of a subspace of the quotient.
    pub fn lift(&self, sub: &Subspace) -> Result<Subspace> {
        self.kernel.field().ensure_same(sub.field())?;
        if sub.ambient_dim() != self.quotient_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.quotient_dim(),
                found: sub.ambient_dim(),
            });
        }
        let n = self.ambient_dim();
        let mut rows = self.kernel.basis.to_rows();
        for r in sub.basis.rows() {
            let mut v = vec![0u32; n];
            for (&c, &j) in r.iter().zip(&self.coords) {
                v[j] = c;
            }
            rows.push(v);
        }
        Subspace::from_rows(self.kernel.field(), n, &rows)
    }
}

pub fn quotient(kernel: &Subspace) -> Result<LinearQuotient> {
    LinearQuotient::new(kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f2() -> Field {
        Field::new(2, 1).unwrap()
    }

    fn v(field: &Field, e: &[u32]) -> FqVec {
        FqVec::new(field, e.to_vec()).unwrap()
    }

    #[test]
    fn rref_examples() {
        let f = f2();
        let id = Matrix::identity(&f, 3);
        assert_eq!(rref(&id), (id.clone(), 3));
        let m = Matrix::from_rows(&f, 3, &[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        let (r, rank) = rref(&m);
        assert_eq!(rank, 2);
        assert_eq!(
            r.to_rows(),
            vec![vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 0]]
        );
        let z = Matrix::zeros(&f, 2, 3);
        assert_eq!(rref(&z), (z.clone(), 0));
        assert!(matches!(
            Matrix::from_rows(&f, 3, &[vec![1, 0, 0], vec![1, 0]]),
            Err(Error::RaggedMatrix { row: 1, .. })
        ));
    }

    #[test]
    fn lines_of_the_plane_are_distinct() {
        for (p, m) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = Field::new(p, m).unwrap();
            let mut lines: Vec<Subspace> = (0..f.q())
                .map(|a| Subspace::from_rows(&f, 2, &[vec![1, a]]).unwrap())
                .collect();
            lines.push(Subspace::from_rows(&f, 2, &[vec![0, 1]]).unwrap());
            for i in 0..lines.len() {
                for j in i + 1..lines.len() {
                    assert_ne!(lines[i], lines[j]);
                    assert_eq!(lines[i].intersect(&lines[j]).unwrap().dim(), 0);
                    assert_eq!(lines[i].sum(&lines[j]).unwrap().dim(), 2);
                }
            }
            assert_eq!(lines.len() as u32, f.q() + 1);
        }
    }

    #[test]
    fn generators_and_membership() {
        let f = f2();
        let s = Subspace::from_generators(
            &f,
            3,
            &[v(&f, &[1, 0, 1]), v(&f, &[0, 1, 1]), v(&f, &[1, 1, 0])],
        )
        .unwrap();
        assert_eq!(s.dim(), 2);
        assert_eq!(s.basis().to_rows(), vec![vec![1, 0, 1], vec![0, 1, 1]]);
        assert!(s.contains(&v(&f, &[1, 1, 0])).unwrap());
        assert!(!s.contains(&v(&f, &[1, 1, 1])).unwrap());
        assert!(s.contains(&FqVec::zero(&f, 3)).unwrap());
        assert_eq!(Subspace::from_generators(&f, 3, &[]).unwrap().dim(), 0);
        assert!(matches!(
            Subspace::from_generators(&f, 3, &[v(&f, &[1, 0])]),
            Err(Error::DimensionMismatch { .. })
        ));
        assert!(matches!(
            s.contains(&v(&Field::new(3, 1).unwrap(), &[1, 1, 0])),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn hyperplanes_of_f2_4_meet_in_a_plane() {
        let f = f2();
        let h1 = Subspace::from_rows(
            &f,
            4,
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 0]],
        )
        .unwrap();
        let h2 = Subspace::from_rows(
            &f,
            4,
            &[vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        )
        .unwrap();
        let i = h1.intersect(&h2).unwrap();
        assert_eq!(i.dim(), 2);
        assert_eq!(i, Subspace::coordinate(&f, 4, [1, 2]));
        assert_eq!(h1.intersect(&h1).unwrap(), h1);
        assert_eq!(h1.sum(&h1).unwrap(), h1);
    }

    #[test]
    fn quotient_and_lift_examples() {
        let f = f2();
        let q0 = quotient(&Subspace::zero(&f, 3)).unwrap();
        assert_eq!(q0.coordinate_map(), &Matrix::identity(&f, 3));

        let q = quotient(&Subspace::from_rows(&f, 2, &[vec![1, 0]]).unwrap()).unwrap();
        assert_eq!(q.project(&v(&f, &[0, 1])).unwrap().entries(), &[1]);
        assert_eq!(q.project(&v(&f, &[1, 0])).unwrap().entries(), &[0]);

        let v0 = Subspace::coordinate(&f, 4, [2, 3]);
        let q = quotient(&v0).unwrap();
        assert_eq!(q.lift(&Subspace::zero(&f, 2)).unwrap(), v0);
        assert_eq!(
            q.lift(&Subspace::full(&f, 2)).unwrap(),
            Subspace::full(&f, 4)
        );
        let l = q
            .lift(&Subspace::from_rows(&f, 2, &[vec![1, 1]]).unwrap())
            .unwrap();
        assert_eq!(l.dim(), 3);
        for e in [[0, 0, 1, 0], [0, 0, 0, 1], [1, 1, 0, 0]] {
            assert!(l.contains(&v(&f, &e)).unwrap());
        }
        assert!(quotient(&Subspace::full(&f, 2)).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let lim = Limits::default();
        let f3 = Field::new(3, 1).unwrap();
        assert_eq!(
            Subspace::zero(&f3, 2)
                .enumerate_vectors(&lim)
                .unwrap()
                .len(),
            1
        );
        let line = Subspace::from_rows(&f3, 2, &[vec![1, 2]]).unwrap();
        assert_eq!(line.enumerate_vectors(&lim).unwrap().len(), 3);
        let plane = Subspace::coordinate(&f2(), 3, [0, 2]);
        let vs = plane.enumerate_vectors(&lim).unwrap();
        assert_eq!(vs.len(), 4);
        let mut encs: Vec<u64> = vs.iter().map(FqVec::encode).collect();
        encs.dedup();
        assert_eq!(encs.len(), 4);
        let tight = Limits::default().with_max_q_pow(2);
        assert!(plane.enumerate_vectors(&tight).is_err());
    }

    #[test]
    fn rref_rows_are_validated() {
        let f = f2();
        assert!(Subspace::from_rref_rows(&f, 3, &[vec![1, 0, 1], vec![0, 1, 1]]).is_ok());
        assert!(Subspace::from_rref_rows(&f, 3, &[vec![1, 1, 0], vec![0, 1, 1]]).is_err());
        assert!(Subspace::from_rref_rows(&f, 3, &[vec![0, 1, 1], vec![1, 0, 1]]).is_err());
    }

    // Random generator families over GF(3) in dimension 5.
    fn gens() -> impl Strategy<Value = Vec<Vec<u32>>> {
        prop::collection::vec(prop::collection::vec(0u32..3, 5), 0..5)
    }

    fn span(rows: &[Vec<u32>]) -> Subspace {
        Subspace::from_rows(&Field::new(3, 1).unwrap(), 5, rows).unwrap()
    }

    proptest! {
        #[test]
        fn canonical_form_ignores_generator_choice(rows in gens(), mix in prop::collection::vec(0u32..3, 25)) {
            let f = Field::new(3, 1).unwrap();
            let s = span(&rows);
            // random combinations of the original generators plus the originals reversed
            let mut other: Vec<Vec<u32>> = rows.iter().rev().cloned().collect();
            for k in 0..rows.len() {
                let mut acc = vec![0u32; 5];
                for (j, r) in rows.iter().enumerate() {
                    let c = mix[(k * 5 + j) % mix.len()];
                    for (a, &b) in acc.iter_mut().zip(r) {
                        *a = f.add(*a, f.mul(c, b));
                    }
                }
                other.push(acc);
            }
            prop_assert_eq!(span(&other), s);
        }

        #[test]
        fn dimension_formula(a in gens(), b in gens()) {
            let (s, t) = (span(&a), span(&b));
            let i = s.intersect(&t).unwrap();
            let u = s.sum(&t).unwrap();
            prop_assert_eq!(s.dim() + t.dim(), i.dim() + u.dim());
            prop_assert!(i.codim() <= s.codim() + t.codim());
            prop_assert!(i.is_subspace_of(&s).unwrap() && i.is_subspace_of(&t).unwrap());
        }

        #[test]
        fn closed_under_combination(a in gens(), x in 0usize..243, y in 0usize..243, c in 0u32..3) {
            let f = Field::new(3, 1).unwrap();
            let s = span(&a);
            let vs = s.enumerate_vectors(&Limits::default()).unwrap();
            let u = &vs[x % vs.len()];
            let w = &vs[y % vs.len()];
            prop_assert!(s.contains(&u.add(&w.scale(c)).unwrap()).unwrap());
            let _ = f;
        }

        #[test]
        fn lift_project_adjunction(k in gens(), sb in prop::collection::vec(prop::collection::vec(0u32..3, 5), 0..3), enc in 0u64..243) {
            let f = Field::new(3, 1).unwrap();
            let v0 = span(&k);
            prop_assume!(v0.codim() > 0);
            let q = quotient(&v0).unwrap();
            let t = q.quotient_dim();
            let rows: Vec<Vec<u32>> = sb.iter().map(|r| r[..t].to_vec()).collect();
            let sbar = Subspace::from_rows(&f, t, &rows).unwrap();
            let lifted = q.lift(&sbar).unwrap();
            prop_assert_eq!(lifted.dim(), sbar.dim() + v0.dim());
            let v = FqVec::decode(&f, 5, enc);
            let pv = q.project(&v).unwrap();
            prop_assert_eq!(lifted.contains(&v).unwrap(), sbar.contains(&pv).unwrap());
            prop_assert_eq!(pv.is_zero(), v0.contains(&v).unwrap());
            for r in v0.basis().rows() {
                prop_assert!(q.coordinate_map().apply(r).iter().all(|&e| e == 0));
            }
        }
    }
}
