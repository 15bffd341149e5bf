//! Structure-constant algebras and structural queries on them.

mod presentation;
mod search;
mod structure;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, coords, unit_vec, zero_vec, Echelon, Matrix, Vector};

pub use presentation::{format_presentation, parse_element, parse_presentation, split_elements};
pub use search::HomSearch;
pub use structure::{automorphisms_fixing, characters, is_isomorphic, is_supersolvable, Character, Invariants};

/// Finite-dimensional algebra given by structure constants:
/// `table[(i * dim + j) * dim + k]` is the coefficient of e_k in e_i e_j.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Algebra {
    field: Field,
    dim: usize,
    table: Vec<Elem>,
    unit: Vector,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Basis triples (i, j, l) with (e_i e_j) e_l != e_i (e_j e_l).
    pub associativity_failures: Vec<(usize, usize, usize)>,
    /// Basis indices i with 1 e_i != e_i or e_i 1 != e_i.
    pub unit_failures: Vec<usize>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.associativity_failures.is_empty() && self.unit_failures.is_empty()
    }
}

impl Algebra {
    pub fn new(field: Field, dim: usize, table: Vec<Vec<Vector>>, unit: Vector) -> Result<Self> {
        if dim == 0 {
            return Err(Error::ShapeMismatch("dimension must be positive".into()));
        }
        if unit.len() != dim {
            return Err(Error::ShapeMismatch(format!("unit has length {}, expected {dim}", unit.len())));
        }
        if table.len() != dim || table.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
            return Err(Error::ShapeMismatch(format!("table must be {dim} x {dim} x {dim}")));
        }
        let flat = table.into_iter().flatten().flatten().collect();
        Ok(Algebra { field, dim, table: flat, unit })
    }

    /// Builds the table from a product rule on basis indices.
    pub fn from_fn(field: Field, dim: usize, unit: Vector, mut prod: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut table = Vec::with_capacity(dim * dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                let v = prod(i, j);
                assert_eq!(v.len(), dim, "product vector length");
                table.extend(v);
            }
        }
        Algebra { field, dim, table, unit }
    }

    /// The one-dimensional algebra k.
    pub fn ground(field: &Field) -> Self {
        Self::from_fn(field.clone(), 1, vec![field.one()], |_, _| vec![field.one()])
    }

    /// k_(a,b): basis {1, x} with x^2 = a + b x.
    pub fn two_dim(field: &Field, a: &Elem, b: &Elem) -> Self {
        let f = field.clone();
        Self::from_fn(f.clone(), 2, unit_vec(&f, 2, 0), |i, j| match (i, j) {
            (0, j) => unit_vec(&f, 2, j),
            (i, 0) => unit_vec(&f, 2, i),
            _ => vec![a.clone(), b.clone()],
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &Vector {
        &self.unit
    }

    pub fn product(&self, i: usize, j: usize) -> &[Elem] {
        let s = (i * self.dim + j) * self.dim;
        &self.table[s..s + self.dim]
    }

    pub fn table(&self) -> Vec<Vec<Vector>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.product(i, j).to_vec()).collect()).collect()
    }

    pub fn flat_table(&self) -> &[Elem] {
        &self.table
    }

    pub fn basis_vec(&self, i: usize) -> Vector {
        unit_vec(&self.field, self.dim, i)
    }

    pub fn zero_vec(&self) -> Vector {
        zero_vec(&self.field, self.dim)
    }

    /// Bilinear extension of the table; panics on length mismatch.
    pub fn mul(&self, u: &[Elem], v: &[Elem]) -> Vector {
        let f = &self.field;
        assert!(u.len() == self.dim && v.len() == self.dim, "vector length");
        let mut out = self.zero_vec();
        for (i, a) in u.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                let c = f.mul(a, b);
                linalg::axpy(f, &mut out, &c, self.product(i, j));
            }
        }
        out
    }

    pub fn multiply(&self, u: &[Elem], v: &[Elem]) -> Result<Vector> {
        if u.len() != self.dim || v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {} in an algebra of dimension {}",
                u.len(),
                v.len(),
                self.dim
            )));
        }
        Ok(self.mul(u, v))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let n = self.dim;
        for i in 0..n {
            let e = self.basis_vec(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                report.unit_failures.push(i);
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = self.product(i, j).to_vec();
                for l in 0..n {
                    let left = self.mul(&ij, &self.basis_vec(l));
                    let right = self.mul(&self.basis_vec(i), self.product(j, l));
                    if left != right {
                        report.associativity_failures.push((i, j, l));
                    }
                }
            }
        }
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.dim).all(|i| (0..i).all(|j| self.product(i, j) == self.product(j, i)))
    }

    /// b^k
    pub fn power(&self, b: &[Elem], k: usize) -> Vector {
        let mut acc = self.unit.clone();
        for _ in 0..k {
            acc = self.mul(&acc, b);
        }
        acc
    }

    /// Minimal polynomial of b: coefficients c with b^d = sum c_i b^i, i < d.
    pub fn min_poly(&self, b: &[Elem]) -> Vector {
        let f = &self.field;
        let mut powers: Vec<Vector> = vec![self.unit.clone()];
        loop {
            let next = self.mul(powers.last().unwrap(), b);
            if let Some(c) = coords(f, &powers, &next) {
                return c;
            }
            powers.push(next);
        }
    }

    /// Structure constants in the basis `basis` of this algebra (columns of the
    /// returned matrix are the new basis in old coordinates).
    pub fn rebase(&self, basis: &[Vector]) -> Result<(Algebra, Matrix)> {
        let f = &self.field;
        if basis.len() != self.dim || linalg::rank_of(f, basis) != self.dim {
            return Err(Error::ShapeMismatch("rebase needs a basis".into()));
        }
        let p = Matrix::from_cols(f, self.dim, basis);
        let pinv = p.inverse(f).expect("basis is invertible");
        let new = Algebra::from_fn(f.clone(), self.dim, pinv.apply(f, &self.unit), |i, j| {
            pinv.apply(f, &self.mul(&basis[i], &basis[j]))
        });
        Ok((new, p))
    }

    /// Whether span(basis) is closed under multiplication (unit not required).
    pub fn is_closed(&self, basis: &[Vector]) -> bool {
        let f = &self.field;
        let mut ech = Echelon::new();
        for b in basis {
            ech.insert(f, b);
        }
        basis.iter().all(|x| basis.iter().all(|y| ech.contains(f, &self.mul(x, y))))
    }

    /// Whether span(basis) is a unital subalgebra.
    pub fn is_subalgebra(&self, basis: &[Vector]) -> bool {
        let f = &self.field;
        let mut ech = Echelon::new();
        for b in basis {
            if b.len() != self.dim {
                return false;
            }
            ech.insert(f, b);
        }
        ech.contains(f, &self.unit) && self.is_closed(basis)
    }

    /// Basis (RREF) of the smallest unital subalgebra containing `gens`.
    pub fn subalgebra_generated(&self, gens: &[Vector]) -> Vec<Vector> {
        let f = &self.field;
        let mut basis: Vec<Vector> = Vec::new();
        let mut ech = Echelon::new();
        for g in std::iter::once(&self.unit).chain(gens) {
            if ech.insert(f, g) {
                basis.push(g.clone());
            }
        }
        let mut i = 0;
        while i < basis.len() {
            for j in 0..=i {
                for (a, b) in [(i, j), (j, i)] {
                    let p = self.mul(&basis[a], &basis[b]);
                    if ech.insert(f, &p) {
                        basis.push(p);
                    }
                }
            }
            i += 1;
        }
        linalg::span_basis(f, &basis)
    }

    /// The subalgebra span(basis) as an algebra in the given basis.
    pub fn restrict(&self, basis: &[Vector]) -> Result<Algebra> {
        let f = &self.field;
        if !self.is_subalgebra(basis) || linalg::rank_of(f, basis) != basis.len() {
            return Err(Error::NotASubalgebra("span is not a unital subalgebra with the given basis".into()));
        }
        let coord = |v: &[Elem]| coords(f, basis, v).expect("closed span");
        Ok(Algebra::from_fn(f.clone(), basis.len(), coord(&self.unit), |i, j| coord(&self.mul(&basis[i], &basis[j]))))
    }

    pub fn center_dim(&self) -> usize {
        let f = &self.field;
        let n = self.dim;
        let sol = linalg::affine_solve(f, n, |z| {
            let mut r = Vec::new();
            for i in 0..n {
                let e = self.basis_vec(i);
                r.extend(linalg::vsub(f, &self.mul(z, &e), &self.mul(&e, z)));
            }
            r
        })
        .expect("homogeneous system");
        sol.dim()
    }

    /// Left multiplication by a, as a matrix.
    pub fn left_mult(&self, a: &[Elem]) -> Matrix {
        let cols: Vec<Vector> = (0..self.dim).map(|j| self.mul(a, &self.basis_vec(j))).collect();
        Matrix::from_cols(&self.field, self.dim, &cols)
    }

    /// Whether a linear map A -> B is a unital algebra map.
    pub fn is_hom_to(&self, target: &Algebra, map: &Matrix) -> bool {
        let f = &self.field;
        if map.cols != self.dim || map.rows != target.dim {
            return false;
        }
        if map.apply(f, &self.unit) != target.unit {
            return false;
        }
        let imgs = map.cols_vec();
        (0..self.dim).all(|i| (0..self.dim).all(|j| map.apply(f, self.product(i, j)) == target.mul(&imgs[i], &imgs[j])))
    }

    /// Direct product A x B with basis (A basis, B basis).
    pub fn direct_product(&self, other: &Algebra) -> Algebra {
        let f = self.field.clone();
        let (n, m) = (self.dim, other.dim);
        let mut unit = self.unit.clone();
        unit.extend(other.unit.iter().cloned());
        Algebra::from_fn(f.clone(), n + m, unit, |i, j| {
            let mut v = zero_vec(&f, n + m);
            if i < n && j < n {
                v[..n].clone_from_slice(self.product(i, j));
            } else if i >= n && j >= n {
                v[n..].clone_from_slice(other.product(i - n, j - n));
            }
            v
        })
    }

    /// Tensor product A (x) B with basis e_i (x) e'_j at index i * dim B + j.
    pub fn tensor(&self, other: &Algebra) -> Algebra {
        let f = self.field.clone();
        let (n, m) = (self.dim, other.dim);
        let mut unit = zero_vec(&f, n * m);
        for i in 0..n {
            for j in 0..m {
                unit[i * m + j] = f.mul(&self.unit[i], &other.unit[j]);
            }
        }
        Algebra::from_fn(f.clone(), n * m, unit, |a, b| {
            let (i1, j1, i2, j2) = (a / m, a % m, b / m, b % m);
            let (p, q) = (self.product(i1, i2), other.product(j1, j2));
            let mut v = zero_vec(&f, n * m);
            for i in 0..n {
                for j in 0..m {
                    v[i * m + j] = f.mul(&p[i], &q[j]);
                }
            }
            v
        })
    }

    /// Full matrix algebra M_n(k), basis e_ij at index i * n + j.
    pub fn matrix_algebra(field: &Field, n: usize) -> Algebra {
        let f = field.clone();
        let mut unit = zero_vec(&f, n * n);
        for i in 0..n {
            unit[i * n + i] = f.one();
        }
        Algebra::from_fn(f.clone(), n * n, unit, |a, b| {
            let (i, j, k, l) = (a / n, a % n, b / n, b % n);
            if j == k {
                unit_vec(&f, n * n, i * n + l)
            } else {
                zero_vec(&f, n * n)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k01_and_gf4() {
        let f = Field::prime(2).unwrap();
        let k01 = Algebra::two_dim(&f, &f.zero(), &f.one());
        assert!(k01.is_valid());
        let x = k01.basis_vec(1);
        assert_eq!(k01.mul(&x, &x), x);
        let gf4 = Algebra::two_dim(&f, &f.one(), &f.one());
        assert!(gf4.is_valid());
    }

    #[test]
    fn unit_failure_reported() {
        let f = Field::prime(2).unwrap();
        let a = Algebra::from_fn(f.clone(), 2, vec![f.zero(), f.one()], |i, j| {
            if i == 1 && j == 1 {
                unit_vec(&f, 2, 0)
            } else {
                zero_vec(&f, 2)
            }
        });
        let r = a.validate();
        assert!(!r.unit_failures.is_empty());
    }

    #[test]
    fn generated_subalgebras() {
        let f = Field::prime(2).unwrap();
        let m2 = Algebra::matrix_algebra(&f, 2);
        assert!(m2.is_valid());
        assert_eq!(m2.subalgebra_generated(&[]).len(), 1);
        assert_eq!(m2.subalgebra_generated(&[m2.basis_vec(0)]).len(), 2);
        let all: Vec<Vector> = (0..4).map(|i| m2.basis_vec(i)).collect();
        assert_eq!(m2.subalgebra_generated(&all).len(), 4);
        assert_eq!(m2.center_dim(), 1);
    }

    #[test]
    fn min_poly_of_generator() {
        let f = Field::prime(3).unwrap();
        let a = Algebra::two_dim(&f, &f.from_int(2), &f.zero());
        assert_eq!(a.min_poly(&a.basis_vec(1)), vec![f.from_int(2), f.zero()]);
        assert_eq!(a.min_poly(&a.unit().clone()), vec![f.one()]);
    }
}
