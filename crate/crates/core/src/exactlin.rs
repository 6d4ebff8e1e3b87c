//! Exact arithmetic over prime fields GF(p) and canonical linear algebra.
//!
//! Scalars are `u64` residues in `0..p`. The modulus is kept below 2^32 so a
//! product of two residues never overflows before reduction. Subspaces are
//! stored by their reduced row-echelon basis, which makes structural equality
//! the same thing as equality of subspaces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A residue modulo the field characteristic.
pub type Scalar = u64;

/// The prime field GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Largest accepted modulus (exclusive).
    pub const MODULUS_LIMIT: u64 = 1 << 32;

    pub fn new(p: u64) -> Result<Self> {
        if p >= Self::MODULUS_LIMIT {
            return Err(Error::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Self { p })
    }

    /// The characteristic p.
    pub fn modulus(self) -> u64 {
        self.p
    }

    pub fn order(self) -> u64 {
        self.p
    }

    pub fn reduce(self, v: u64) -> Scalar {
        v % self.p
    }

    /// Reduce a signed integer into `0..p`.
    pub fn from_i64(self, v: i64) -> Scalar {
        v.rem_euclid(self.p as i64) as u64
    }

    pub fn add(self, a: Scalar, b: Scalar) -> Scalar {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(self, a: Scalar, b: Scalar) -> Scalar {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(self, a: Scalar, b: Scalar) -> Scalar {
        (a * b) % self.p
    }

    pub fn pow(self, mut base: Scalar, mut exp: u64) -> Scalar {
        let mut acc = 1 % self.p;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(self, a: Scalar) -> Option<Scalar> {
        let a = a % self.p;
        if a == 0 {
            return None;
        }
        // Fermat: a^(p-2) = a^-1.
        Some(self.pow(a, self.p - 2))
    }

    /// `a - c*b` in place over two equal-length slices.
    fn axpy_neg(self, target: &mut [Scalar], c: Scalar, source: &[Scalar]) {
        if c == 0 {
            return;
        }
        for (t, &s) in target.iter_mut().zip(source) {
            if s != 0 {
                *t = self.sub(*t, self.mul(c, s));
            }
        }
    }
}

/// Trial division; inputs are desk-scale.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Dense row-major matrix over a prime field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: PrimeField,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Output of [`Matrix::rref`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(field: PrimeField, rows: usize, cols: usize) -> Self {
        Self {
            field,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(field: PrimeField, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    /// Build from explicit rows of width `cols`; entries are reduced mod p.
    pub fn from_rows<R: AsRef<[Scalar]>>(
        field: PrimeField,
        cols: usize,
        rows: &[R],
    ) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, r) in rows.iter().enumerate() {
            let r = r.as_ref();
            if r.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "row {i} has length {}, expected {cols}",
                    r.len()
                )));
            }
            data.extend(r.iter().map(|&v| field.reduce(v)));
        }
        Ok(Self {
            field,
            rows: rows.len(),
            cols,
            data,
        })
    }

    /// Build from columns of height `rows`.
    pub fn from_columns<C: AsRef<[Scalar]>>(
        field: PrimeField,
        rows: usize,
        cols: &[C],
    ) -> Result<Self> {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            let c = c.as_ref();
            if c.len() != rows {
                return Err(Error::ShapeMismatch(format!(
                    "column {j} has length {}, expected {rows}",
                    c.len()
                )));
            }
            for (i, &v) in c.iter().enumerate() {
                m.data[i * m.cols + j] = field.reduce(v);
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Scalar {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = self.field.reduce(v);
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j);
            }
        }
        t
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::ShapeMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let f = self.field;
        Ok(self
            .row_iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch {
                left: self.field.p,
                right: other.field.p,
            });
        }
        let f = self.field;
        let mut out = Matrix::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b != 0 {
                        let idx = i * out.cols + j;
                        out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                    }
                }
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form. Pivots are taken as the first nonzero entry
    /// scanning columns left to right and rows top to bottom.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut prow = 0;
        for col in 0..m.cols {
            if prow == m.rows {
                break;
            }
            let Some(r) = (prow..m.rows).find(|&r| m.get(r, col) != 0) else {
                continue;
            };
            m.swap_rows(r, prow);
            let inv = f.inv(m.get(prow, col)).expect("pivot is nonzero");
            for j in col..m.cols {
                let idx = prow * m.cols + j;
                m.data[idx] = f.mul(m.data[idx], inv);
            }
            let pivot_row = m.row(prow).to_vec();
            for r in 0..m.rows {
                if r != prow {
                    let c = m.get(r, col);
                    if c != 0 {
                        let start = r * m.cols;
                        f.axpy_neg(&mut m.data[start..start + m.cols], c, &pivot_row);
                    }
                }
            }
            pivots.push(col);
            prow += 1;
        }
        let rank = pivots.len();
        m.data.truncate(rank * m.cols);
        m.rows = rank;
        Rref {
            matrix: m,
            rank,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space `{x : self * x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let Rref { matrix, pivots, .. } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![0; self.cols];
                v[free] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(matrix.get(r, free));
                }
                v
            })
            .collect()
    }

    /// Span of the columns, as a subspace of `F^rows`.
    pub fn column_space(&self) -> Subspace {
        Subspace::from_matrix_rows(&self.transpose())
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix_rows(self)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

/// One solution of `a * x = b`, with free variables set to zero; `None` when
/// the system is inconsistent.
pub fn solve(a: &Matrix, b: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
    if b.len() != a.rows {
        return Err(Error::ShapeMismatch(format!(
            "right-hand side of length {} for {} equations",
            b.len(),
            a.rows
        )));
    }
    let f = a.field;
    let n = a.cols;
    let mut aug = Matrix::zeros(f, a.rows, n + 1);
    for i in 0..a.rows {
        for j in 0..n {
            aug.data[i * (n + 1) + j] = a.get(i, j);
        }
        aug.data[i * (n + 1) + n] = f.reduce(b[i]);
    }
    let Rref { matrix, pivots, .. } = aug.rref();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = vec![0; n];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = matrix.get(r, n);
    }
    Ok(Some(x))
}

/// A subspace of `F^ambient`, held by its canonical RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: PrimeField, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::zeros(field, 0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: PrimeField, ambient: usize) -> Self {
        Self {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn from_rows<R: AsRef<[Scalar]>>(
        field: PrimeField,
        ambient: usize,
        rows: &[R],
    ) -> Result<Self> {
        Ok(Self::from_matrix_rows(&Matrix::from_rows(
            field, ambient, rows,
        )?))
    }

    pub fn from_matrix_rows(m: &Matrix) -> Self {
        let Rref { matrix, pivots, .. } = m.rref();
        Self {
            ambient: m.cols,
            basis: matrix,
            pivots,
        }
    }

    /// Span of standard basis vectors `e_i` for the given coordinates.
    pub fn coordinate(field: PrimeField, ambient: usize, coords: &[usize]) -> Self {
        let rows: Vec<Vec<Scalar>> = coords
            .iter()
            .map(|&c| {
                let mut v = vec![0; ambient];
                v[c] = 1;
                v
            })
            .collect();
        Self::from_rows(field, ambient, &rows).expect("coordinate rows have ambient width")
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> impl Iterator<Item = &[Scalar]> + '_ {
        self.basis.row_iter()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// The residue of `v` after clearing every pivot coordinate.
    pub fn reduce(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        self.check_len(v.len())?;
        let f = self.field();
        let mut out: Vec<Scalar> = v.iter().map(|&x| f.reduce(x)).collect();
        for (r, &pc) in self.pivots.iter().enumerate() {
            let c = out[pc];
            f.axpy_neg(&mut out, c, self.basis.row(r));
        }
        Ok(out)
    }

    pub fn contains(&self, v: &[Scalar]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|&x| x == 0))
    }

    /// Coordinates of `v` in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if !self.contains(v)? {
            return Ok(None);
        }
        let f = self.field();
        Ok(Some(
            self.pivots.iter().map(|&pc| f.reduce(v[pc])).collect(),
        ))
    }

    /// The vector with the given coordinates in the canonical basis.
    pub fn combine(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let f = self.field();
        let mut out = vec![0; self.ambient];
        for (r, &c) in coords.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(self.basis.row(r)) {
                *o = f.add(*o, f.mul(c, b));
            }
        }
        out
    }

    /// Extend the span by `v`, keeping the basis canonical. Returns `true`
    /// when the dimension grew.
    pub fn insert(&mut self, v: &[Scalar]) -> Result<bool> {
        let residue = self.reduce(v)?;
        let Some(pc) = residue.iter().position(|&x| x != 0) else {
            return Ok(false);
        };
        let f = self.field();
        let inv = f.inv(residue[pc]).expect("leading entry is nonzero");
        let new_row: Vec<Scalar> = residue.iter().map(|&x| f.mul(x, inv)).collect();
        let mut rows: Vec<Vec<Scalar>> = self.basis.row_iter().map(<[Scalar]>::to_vec).collect();
        for row in rows.iter_mut() {
            let c = row[pc];
            f.axpy_neg(row, c, &new_row);
        }
        let at = self.pivots.partition_point(|&p| p < pc);
        rows.insert(at, new_row);
        self.pivots.insert(at, pc);
        self.basis = Matrix::from_rows(f, self.ambient, &rows)?;
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let rows: Vec<&[Scalar]> = self.basis_vectors().chain(other.basis_vectors()).collect();
        Subspace::from_rows(self.field(), self.ambient, &rows)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_compatible(other)?;
        let f = self.field();
        let a = self.dim();
        let rows: Vec<&[Scalar]> = self.basis_vectors().chain(other.basis_vectors()).collect();
        let stacked = Matrix::from_rows(f, self.ambient, &rows)?;
        // Left kernel vectors (c_A, c_B) with c_A*A + c_B*B = 0 give c_A*A in A ∩ B.
        let meets: Vec<Vec<Scalar>> = stacked
            .transpose()
            .kernel()
            .into_iter()
            .map(|c| self.combine(&c[..a]))
            .collect();
        Subspace::from_rows(f, self.ambient, &meets)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> Result<bool> {
        self.check_compatible(other)?;
        for v in self.basis_vectors() {
            if !other.contains(v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every vector of the subspace, `p^dim` of them.
    pub fn elements(&self) -> SubspaceElements<'_> {
        SubspaceElements {
            space: self,
            coords: vec![0; self.dim()],
            done: false,
        }
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.ambient {
            return Err(Error::AmbientMismatch {
                left: self.ambient,
                right: len,
            });
        }
        Ok(())
    }

    fn check_compatible(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch {
                left: self.field().modulus(),
                right: other.field().modulus(),
            });
        }
        self.check_len(other.ambient)
    }
}

/// Iterator over all vectors of a subspace, in lexicographic coordinate order
/// (least significant coordinate first) starting from zero.
pub struct SubspaceElements<'a> {
    space: &'a Subspace,
    coords: Vec<Scalar>,
    done: bool,
}

impl Iterator for SubspaceElements<'_> {
    type Item = Vec<Scalar>;

    fn next(&mut self) -> Option<Vec<Scalar>> {
        if self.done {
            return None;
        }
        let out = self.space.combine(&self.coords);
        let p = self.space.field().modulus();
        self.done = true;
        for c in self.coords.iter_mut() {
            *c += 1;
            if *c < p {
                self.done = false;
                break;
            }
            *c = 0;
        }
        Some(out)
    }
}
