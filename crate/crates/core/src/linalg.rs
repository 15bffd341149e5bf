//! Exact linear algebra over a `Field`: echelon forms, kernels, affine solves.

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

pub type Vector = Vec<Elem>;

pub fn zero_vec(f: &Field, n: usize) -> Vector {
    vec![f.zero(); n]
}

pub fn unit_vec(f: &Field, n: usize, i: usize) -> Vector {
    let mut v = zero_vec(f, n);
    v[i] = f.one();
    v
}

pub fn vadd(f: &Field, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
}

pub fn vsub(f: &Field, a: &[Elem], b: &[Elem]) -> Vector {
    a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
}

pub fn vneg(f: &Field, a: &[Elem]) -> Vector {
    a.iter().map(|x| f.neg(x)).collect()
}

pub fn vscale(f: &Field, c: &Elem, a: &[Elem]) -> Vector {
    a.iter().map(|x| f.mul(c, x)).collect()
}

/// acc += c * a
pub fn axpy(f: &Field, acc: &mut [Elem], c: &Elem, a: &[Elem]) {
    if f.is_zero(c) {
        return;
    }
    for (s, x) in acc.iter_mut().zip(a) {
        if !f.is_zero(x) {
            *s = f.add(s, &f.mul(c, x));
        }
    }
}

pub fn is_zero_vec(f: &Field, a: &[Elem]) -> bool {
    a.iter().all(|x| f.is_zero(x))
}

pub fn dot(f: &Field, a: &[Elem], b: &[Elem]) -> Elem {
    let mut s = f.zero();
    for (x, y) in a.iter().zip(b) {
        if !f.is_zero(x) && !f.is_zero(y) {
            s = f.add(&s, &f.mul(x, y));
        }
    }
    s
}

/// Dense matrix, row-major. Column j is the image of the j-th basis vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<Elem>,
}

impl Matrix {
    pub fn zeros(f: &Field, rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![f.zero(); rows * cols] }
    }

    pub fn identity(f: &Field, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_cols(f: &Field, rows: usize, cols: &[Vector]) -> Self {
        let mut m = Self::zeros(f, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn from_rows(f: &Field, cols: usize, rows: &[Vector]) -> Self {
        let mut m = Self::zeros(f, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row length");
            for (j, x) in r.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn col(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vector {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn cols_vec(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn rows_vec(&self) -> Vec<Vector> {
        (0..self.rows).map(|i| self.row(i)).collect()
    }

    pub fn apply(&self, f: &Field, v: &[Elem]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length");
        let mut out = zero_vec(f, self.rows);
        for (j, x) in v.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let m = self.get(i, j);
                if !f.is_zero(m) {
                    *o = f.add(o, &f.mul(m, x));
                }
            }
        }
        out
    }

    /// self * other, i.e. the composite "self after other".
    pub fn mul(&self, f: &Field, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let cols: Vec<Vector> = (0..other.cols).map(|j| self.apply(f, &other.col(j))).collect();
        Matrix::from_cols(f, self.rows, &cols)
    }

    pub fn add(&self, f: &Field, other: &Matrix) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: vadd(f, &self.data, &other.data) }
    }

    pub fn sub(&self, f: &Field, other: &Matrix) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: vsub(f, &self.data, &other.data) }
    }

    pub fn neg(&self, f: &Field) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: vneg(f, &self.data) }
    }

    pub fn scale(&self, f: &Field, c: &Elem) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: vscale(f, c, &self.data) }
    }

    pub fn transpose(&self) -> Matrix {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn is_zero(&self, f: &Field) -> bool {
        is_zero_vec(f, &self.data)
    }

    pub fn is_identity(&self, f: &Field) -> bool {
        self.rows == self.cols && *self == Matrix::identity(f, self.rows)
    }

    pub fn rank(&self, f: &Field) -> usize {
        let mut rows = self.rows_vec();
        rref(f, &mut rows).len()
    }

    pub fn inverse(&self, f: &Field) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug: Vec<Vector> = (0..n)
            .map(|i| {
                let mut r = self.row(i);
                r.extend(unit_vec(f, n, i));
                r
            })
            .collect();
        let piv = rref(f, &mut aug);
        if piv.len() < n || piv[n - 1] >= n {
            return None;
        }
        let rows: Vec<Vector> = aug.iter().map(|r| r[n..].to_vec()).collect();
        Some(Matrix::from_rows(f, n, &rows))
    }

    pub fn is_invertible(&self, f: &Field) -> bool {
        self.rows == self.cols && self.rank(f) == self.rows
    }

    /// Unit matrices with a single 1 at (i, j).
    pub fn elementary(f: &Field, rows: usize, cols: usize, i: usize, j: usize) -> Matrix {
        let mut m = Self::zeros(f, rows, cols);
        m.set(i, j, f.one());
        m
    }
}

/// Reduced row echelon form in place, leftmost pivots. Zero rows are removed.
/// Returns the pivot columns.
pub fn rref(f: &Field, rows: &mut Vec<Vector>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        rows[r] = vscale(f, &inv, &rows[r]);
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !f.is_zero(&row[c]) {
                let factor = f.neg(&row[c]);
                axpy(f, row, &factor, &pivot_row);
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Canonical basis (RREF rows) of the span of `vecs`.
pub fn span_basis(f: &Field, vecs: &[Vector]) -> Vec<Vector> {
    let mut rows = vecs.to_vec();
    rref(f, &mut rows);
    rows
}

pub fn rank_of(f: &Field, vecs: &[Vector]) -> usize {
    span_basis(f, vecs).len()
}

/// Basis of { x : m x = 0 }.
pub fn nullspace(f: &Field, m: &Matrix) -> Vec<Vector> {
    let mut rows = m.rows_vec();
    let piv = rref(f, &mut rows);
    let free: Vec<usize> = (0..m.cols).filter(|c| !piv.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = zero_vec(f, m.cols);
            v[fc] = f.one();
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg(&rows[r][fc]);
            }
            v
        })
        .collect()
}

/// Solution set { particular + span(directions) } of an affine system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineSpace {
    pub particular: Vector,
    pub directions: Vec<Vector>,
}

impl AffineSpace {
    pub fn dim(&self) -> usize {
        self.directions.len()
    }

    /// All points over a finite field, in lexicographic order of the
    /// direction coefficients (first coefficient most significant).
    pub fn points(&self, f: &Field) -> Result<Vec<Vector>> {
        let coeffs = all_vectors(f, self.directions.len())?;
        Ok(coeffs
            .iter()
            .map(|c| {
                let mut p = self.particular.clone();
                for (ci, d) in c.iter().zip(&self.directions) {
                    axpy(f, &mut p, ci, d);
                }
                p
            })
            .collect())
    }
}

/// Solves m x = b.
pub fn solve(f: &Field, m: &Matrix, b: &[Elem]) -> Option<AffineSpace> {
    let n = m.cols;
    let mut aug: Vec<Vector> = (0..m.rows)
        .map(|i| {
            let mut r = m.row(i);
            r.push(b[i].clone());
            r
        })
        .collect();
    let piv = rref(f, &mut aug);
    if piv.last() == Some(&n) {
        return None;
    }
    let mut particular = zero_vec(f, n);
    for (r, &pc) in piv.iter().enumerate() {
        particular[pc] = aug[r][n].clone();
    }
    Some(AffineSpace { particular, directions: nullspace(f, m) })
}

/// Solves residual(x) = 0 for a residual that is affine in x.
///
/// The coefficient matrix is recovered by probing the residual at 0 and at
/// the unit vectors.
pub fn affine_solve(f: &Field, unknowns: usize, residual: impl Fn(&[Elem]) -> Vector) -> Option<AffineSpace> {
    let zero = zero_vec(f, unknowns);
    let r0 = residual(&zero);
    let cols: Vec<Vector> = (0..unknowns).map(|u| vsub(f, &residual(&unit_vec(f, unknowns, u)), &r0)).collect();
    let m = Matrix::from_cols(f, r0.len(), &cols);
    solve(f, &m, &vneg(f, &r0))
}

/// Coordinates of v in the given (independent) vectors, if v lies in their span.
pub fn coords(f: &Field, basis: &[Vector], v: &[Elem]) -> Option<Vector> {
    if basis.is_empty() {
        return is_zero_vec(f, v).then(Vec::new);
    }
    let m = Matrix::from_cols(f, v.len(), basis);
    solve(f, &m, v).map(|s| s.particular)
}

/// Incremental echelon basis for membership and independence tests.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<(usize, Vector)>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon { rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn reduce(&self, f: &Field, v: &[Elem]) -> Vector {
        let mut v = v.to_vec();
        for (p, r) in &self.rows {
            if !f.is_zero(&v[*p]) {
                let c = f.neg(&v[*p]);
                axpy(f, &mut v, &c, r);
            }
        }
        v
    }

    pub fn contains(&self, f: &Field, v: &[Elem]) -> bool {
        is_zero_vec(f, &self.reduce(f, v))
    }

    /// Adds v; returns false if it was already in the span.
    pub fn insert(&mut self, f: &Field, v: &[Elem]) -> bool {
        let r = self.reduce(f, v);
        let Some(p) = r.iter().position(|x| !f.is_zero(x)) else {
            return false;
        };
        let inv = f.inv(&r[p]);
        self.rows.push((p, vscale(f, &inv, &r)));
        true
    }

    pub fn pop(&mut self) {
        self.rows.pop();
    }
}

/// All vectors of k^n for finite k, lexicographic with the last coordinate fastest.
pub fn all_vectors(f: &Field, n: usize) -> Result<Vec<Vector>> {
    let elems = f.elements()?;
    let q = elems.len() as u128;
    let total = q
        .checked_pow(n as u32)
        .filter(|&t| t <= 1 << 24)
        .ok_or(Error::BudgetExceeded { candidates: q.saturating_pow(n as u32), budget: 1 << 24 })?;
    let mut out = Vec::with_capacity(total as usize);
    for mut idx in 0..total {
        let mut v = vec![f.zero(); n];
        for i in (0..n).rev() {
            v[i] = elems[(idx % q) as usize].clone();
            idx /= q;
        }
        out.push(v);
    }
    Ok(out)
}

/// All invertible n x n matrices over a finite field, in lexicographic order
/// of their row-major entries.
pub fn general_linear(f: &Field, n: usize) -> Result<Vec<Matrix>> {
    let cols = all_vectors(f, n)?;
    let mut out = Vec::new();
    let mut chosen: Vec<Vector> = Vec::new();
    gl_rec(f, n, &cols, &mut Echelon::new(), &mut chosen, &mut out);
    out.sort();
    Ok(out)
}

fn gl_rec(f: &Field, n: usize, cols: &[Vector], ech: &mut Echelon, chosen: &mut Vec<Vector>, out: &mut Vec<Matrix>) {
    if chosen.len() == n {
        out.push(Matrix::from_cols(f, n, chosen));
        return;
    }
    for c in cols {
        if ech.insert(f, c) {
            chosen.push(c.clone());
            gl_rec(f, n, cols, ech, chosen, out);
            chosen.pop();
            ech.pop();
        }
    }
}
