//! Extending datums, their axioms and the unified product.

mod axioms;
mod commutative;
mod crossed;
mod morphism;
mod special;

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, axpy, coords, is_zero_vec, nullspace, unit_vec, zero_vec, Matrix, Vector};

pub use axioms::{check_axioms, AxiomReport, AxiomStatus};
pub use commutative::{commutative_check, CommutativeDatum, CommutativeReport};
pub use crossed::{crossed_product, extract_crossed_datum, CrossedProductInput, GroupTable};
pub use morphism::{
    find_cohomologous, find_equivalence, morphism_check, morphisms_with_v, psi_map, transport_datum, MorphismPair,
};
pub use special::{
    bicrossed_product, classify_special, factorize, matched_pair_check, MatchedPair, MatchedPairReport, SpecialTag,
};

/// Bilinear map k^left x k^right -> k^out given by its values on basis pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bilinear {
    pub left: usize,
    pub right: usize,
    pub out: usize,
    data: Vec<Elem>,
}

impl Bilinear {
    pub fn zero(f: &Field, left: usize, right: usize, out: usize) -> Self {
        Bilinear { left, right, out, data: vec![f.zero(); left * right * out] }
    }

    pub fn from_fn(left: usize, right: usize, out: usize, mut g: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut data = Vec::with_capacity(left * right * out);
        for i in 0..left {
            for j in 0..right {
                let v = g(i, j);
                assert_eq!(v.len(), out, "bilinear value length");
                data.extend(v);
            }
        }
        Bilinear { left, right, out, data }
    }

    /// From a nested tensor t[i][j] = value on (e_i, e_j).
    pub fn from_tensor(left: usize, right: usize, out: usize, t: Vec<Vec<Vector>>) -> Result<Self> {
        if t.len() != left || t.iter().any(|r| r.len() != right || r.iter().any(|v| v.len() != out)) {
            return Err(Error::ShapeMismatch(format!("expected a {left} x {right} x {out} tensor")));
        }
        Ok(Bilinear { left, right, out, data: t.into_iter().flatten().flatten().collect() })
    }

    pub fn tensor(&self) -> Vec<Vec<Vector>> {
        (0..self.left).map(|i| (0..self.right).map(|j| self.at(i, j).to_vec()).collect()).collect()
    }

    pub fn at(&self, i: usize, j: usize) -> &[Elem] {
        let s = (i * self.right + j) * self.out;
        &self.data[s..s + self.out]
    }

    pub fn set(&mut self, i: usize, j: usize, v: &[Elem]) {
        let s = (i * self.right + j) * self.out;
        self.data[s..s + self.out].clone_from_slice(v);
    }

    pub fn data_mut(&mut self) -> &mut [Elem] {
        &mut self.data
    }

    pub fn data(&self) -> &[Elem] {
        &self.data
    }

    pub fn apply(&self, f: &Field, u: &[Elem], v: &[Elem]) -> Vector {
        let mut out = zero_vec(f, self.out);
        for (i, a) in u.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in v.iter().enumerate() {
                if f.is_zero(b) {
                    continue;
                }
                axpy(f, &mut out, &f.mul(a, b), self.at(i, j));
            }
        }
        out
    }

    pub fn is_zero(&self, f: &Field) -> bool {
        is_zero_vec(f, &self.data)
    }

    fn shape(&self) -> (usize, usize, usize) {
        (self.left, self.right, self.out)
    }
}

/// The six maps (lact, ract, lhar, rhar, cocycle, vmult) relating an algebra
/// A and a vector space V of dimension `v_dim`:
///
/// - lact: V x A -> V, x ◁ a
/// - ract: V x A -> A, x ▷ a
/// - lhar: A x V -> A, a ↼ x
/// - rhar: A x V -> V, a ⇀ x
/// - cocycle: V x V -> A, f(x, y)
/// - vmult: V x V -> V, x · y
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendingDatum {
    pub a: Algebra,
    pub v_dim: usize,
    pub lact: Bilinear,
    pub ract: Bilinear,
    pub lhar: Bilinear,
    pub rhar: Bilinear,
    pub cocycle: Bilinear,
    pub vmult: Bilinear,
}

impl ExtendingDatum {
    /// All maps zero except the bimodule structure x ◁ a = χ(a) x and
    /// a ⇀ x = χ'(a) x given by two characters.
    pub fn with_characters(a: &Algebra, v_dim: usize, right: &[Elem], left: &[Elem]) -> Self {
        let f = a.field();
        let (n, m) = (a.dim(), v_dim);
        ExtendingDatum {
            a: a.clone(),
            v_dim,
            lact: Bilinear::from_fn(m, n, m, |x, i| linalg::vscale(f, &right[i], &unit_vec(f, m, x))),
            ract: Bilinear::zero(f, m, n, n),
            lhar: Bilinear::zero(f, n, m, n),
            rhar: Bilinear::from_fn(n, m, m, |i, x| linalg::vscale(f, &left[i], &unit_vec(f, m, x))),
            cocycle: Bilinear::zero(f, m, m, n),
            vmult: Bilinear::zero(f, m, m, m),
        }
    }

    pub fn field(&self) -> &Field {
        self.a.field()
    }

    pub fn check_shapes(&self) -> Result<()> {
        let (n, m) = (self.a.dim(), self.v_dim);
        let expect = [
            ("lact", self.lact.shape(), (m, n, m)),
            ("ract", self.ract.shape(), (m, n, n)),
            ("lhar", self.lhar.shape(), (n, m, n)),
            ("rhar", self.rhar.shape(), (n, m, m)),
            ("cocycle", self.cocycle.shape(), (m, m, n)),
            ("vmult", self.vmult.shape(), (m, m, m)),
        ];
        for (name, got, want) in expect {
            if got != want {
                return Err(Error::ShapeMismatch(format!("{name} has shape {got:?}, expected {want:?}")));
            }
        }
        Ok(())
    }

    pub fn v_basis_vec(&self, i: usize) -> Vector {
        unit_vec(self.field(), self.v_dim, i)
    }

    pub(crate) fn is_zero_a(&self, v: &[Elem]) -> bool {
        is_zero_vec(self.field(), v)
    }

    pub fn lact(&self, x: &[Elem], a: &[Elem]) -> Vector {
        self.lact.apply(self.field(), x, a)
    }

    pub fn ract(&self, x: &[Elem], a: &[Elem]) -> Vector {
        self.ract.apply(self.field(), x, a)
    }

    pub fn lhar(&self, a: &[Elem], x: &[Elem]) -> Vector {
        self.lhar.apply(self.field(), a, x)
    }

    pub fn rhar(&self, a: &[Elem], x: &[Elem]) -> Vector {
        self.rhar.apply(self.field(), a, x)
    }

    pub fn cocycle(&self, x: &[Elem], y: &[Elem]) -> Vector {
        self.cocycle.apply(self.field(), x, y)
    }

    pub fn vmult(&self, x: &[Elem], y: &[Elem]) -> Vector {
        self.vmult.apply(self.field(), x, y)
    }

    /// Product of (a, x) and (b, y) on A x V.
    pub fn product(&self, a: &[Elem], x: &[Elem], b: &[Elem], y: &[Elem]) -> (Vector, Vector) {
        let f = self.field();
        let mut left = self.a.mul(a, b);
        for t in [self.lhar(a, y), self.ract(x, b), self.cocycle(x, y)] {
            left = linalg::vadd(f, &left, &t);
        }
        let mut right = self.rhar(a, y);
        for t in [self.lact(x, b), self.vmult(x, y)] {
            right = linalg::vadd(f, &right, &t);
        }
        (left, right)
    }
}

/// The algebra on A x V with basis (A basis, V basis) and unit (1, 0), whether
/// or not the axioms hold.
pub fn unified_product_unchecked(d: &ExtendingDatum) -> Algebra {
    let f = d.field().clone();
    let (n, m) = (d.a.dim(), d.v_dim);
    let split = |i: usize| -> (Vector, Vector) {
        if i < n {
            (unit_vec(&f, n, i), zero_vec(&f, m))
        } else {
            (zero_vec(&f, n), unit_vec(&f, m, i - n))
        }
    };
    let mut unit = d.a.unit().clone();
    unit.extend(zero_vec(&f, m));
    Algebra::from_fn(f.clone(), n + m, unit, |i, j| {
        let ((a, x), (b, y)) = (split(i), split(j));
        let (l, r) = d.product(&a, &x, &b, &y);
        let mut v = l;
        v.extend(r);
        v
    })
}

/// The unified product; fails with the axiom report when A1-A12 do not hold.
pub fn unified_product(d: &ExtendingDatum) -> Result<Algebra> {
    let report = check_axioms(d)?;
    if !report.all_hold() {
        return Err(Error::AxiomsFailed(Box::new(report)));
    }
    Ok(unified_product_unchecked(d))
}

/// Extending datum of E relative to a subalgebra span(a_basis) and a
/// retraction p: E -> A (matrix in a_basis coordinates).
///
/// V is the kernel of p. Returns the datum and the isomorphism
/// (a, x) -> a + x from the unified product onto E.
pub fn datum_from_retraction(e: &Algebra, a_basis: &[Vector], p: &Matrix) -> Result<(ExtendingDatum, Matrix)> {
    let f = e.field();
    let n = a_basis.len();
    if p.rows != n || p.cols != e.dim() {
        return Err(Error::ShapeMismatch(format!("retraction must be {n} x {}", e.dim())));
    }
    if linalg::rank_of(f, a_basis) != n || !e.is_subalgebra(a_basis) {
        return Err(Error::NotASubalgebra("span of the given vectors is not a unital subalgebra".into()));
    }
    let incl = Matrix::from_cols(f, e.dim(), a_basis);
    if !p.mul(f, &incl).is_identity(f) {
        return Err(Error::NotARetraction("p does not restrict to the identity on A".into()));
    }
    let v_basis = nullspace(f, p);
    datum_from_complement(e, a_basis, &v_basis, p)
}

/// Datum of E relative to span(a_basis), using the complement spanned by the
/// first standard basis vectors that extend it.
pub fn datum_from_subalgebra(e: &Algebra, a_basis: &[Vector]) -> Result<(ExtendingDatum, Matrix)> {
    let f = e.field();
    let n = a_basis.len();
    if linalg::rank_of(f, a_basis) != n || !e.is_subalgebra(a_basis) {
        return Err(Error::NotASubalgebra("span of the given vectors is not a unital subalgebra".into()));
    }
    let mut ech = linalg::Echelon::new();
    for v in a_basis {
        ech.insert(f, v);
    }
    let v_basis: Vec<Vector> = (0..e.dim()).map(|i| unit_vec(f, e.dim(), i)).filter(|v| ech.insert(f, v)).collect();
    let mut cols = a_basis.to_vec();
    cols.extend(v_basis.iter().cloned());
    let inv = Matrix::from_cols(f, e.dim(), &cols).inverse(f).expect("basis of E");
    let mut p = Matrix::zeros(f, n, e.dim());
    for i in 0..n {
        for j in 0..e.dim() {
            p.set(i, j, inv.get(i, j).clone());
        }
    }
    datum_from_complement(e, a_basis, &v_basis, &p)
}

/// Datum of E with respect to A = span(a_basis), the complement
/// span(v_basis) and the projection p onto A along it.
pub(crate) fn datum_from_complement(
    e: &Algebra,
    a_basis: &[Vector],
    v_basis: &[Vector],
    p: &Matrix,
) -> Result<(ExtendingDatum, Matrix)> {
    let f = e.field();
    let n = a_basis.len();
    let incl = Matrix::from_cols(f, e.dim(), a_basis);
    let a = e.restrict(a_basis)?;
    let m = v_basis.len();
    let incl_a = |c: &[Elem]| incl.apply(f, c);
    let v_coords = |w: &[Elem]| coords(f, v_basis, w).expect("kernel vector");
    // split w = i(p(w)) + (w - i(p(w)))
    let split = |w: Vector| -> (Vector, Vector) {
        let pa = p.apply(f, &w);
        let rest = linalg::vsub(f, &w, &incl_a(&pa));
        (pa, v_coords(&rest))
    };
    let prod = |u: &Vector, v: &Vector| split(e.mul(u, v));
    let mut d = ExtendingDatum {
        a,
        v_dim: m,
        lact: Bilinear::zero(f, m, n, m),
        ract: Bilinear::zero(f, m, n, n),
        lhar: Bilinear::zero(f, n, m, n),
        rhar: Bilinear::zero(f, n, m, m),
        cocycle: Bilinear::zero(f, m, m, n),
        vmult: Bilinear::zero(f, m, m, m),
    };
    for (xi, x) in v_basis.iter().enumerate() {
        for (ai, av) in a_basis.iter().enumerate() {
            let (pa, va) = prod(x, av);
            d.ract.set(xi, ai, &pa);
            d.lact.set(xi, ai, &va);
            let (pa, va) = prod(av, x);
            d.lhar.set(ai, xi, &pa);
            d.rhar.set(ai, xi, &va);
        }
        for (yi, y) in v_basis.iter().enumerate() {
            let (pa, va) = prod(x, y);
            d.cocycle.set(xi, yi, &pa);
            d.vmult.set(xi, yi, &va);
        }
    }
    let mut cols = a_basis.to_vec();
    cols.extend(v_basis.iter().cloned());
    Ok((d, Matrix::from_cols(f, e.dim(), &cols)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_extension_of_ground_field() {
        let f = Field::prime(3).unwrap();
        let k = Algebra::ground(&f);
        let d = ExtendingDatum::with_characters(&k, 1, &[f.one()], &[f.one()]);
        let report = check_axioms(&d).unwrap();
        assert!(report.all_hold(), "{:?}", report.failing());
        let e = unified_product(&d).unwrap();
        assert!(e.is_valid());
        assert_eq!(e, Algebra::two_dim(&f, &f.zero(), &f.zero()));
    }

    #[test]
    fn k01_from_ground_datum() {
        let f = Field::prime(2).unwrap();
        let k = Algebra::ground(&f);
        let mut d = ExtendingDatum::with_characters(&k, 1, &[f.one()], &[f.one()]);
        d.vmult.set(0, 0, &[f.one()]);
        assert_eq!(unified_product(&d).unwrap(), Algebra::two_dim(&f, &f.zero(), &f.one()));
    }

    #[test]
    fn broken_normalization_is_reported() {
        let f = Field::prime(2).unwrap();
        let k = Algebra::ground(&f);
        let d = ExtendingDatum::with_characters(&k, 1, &[f.zero()], &[f.one()]);
        let r = check_axioms(&d).unwrap();
        assert!(!r.get("normalization").unwrap().holds);
        assert!(matches!(unified_product(&d), Err(Error::AxiomsFailed(_))));
    }

    #[test]
    fn retraction_round_trip_on_matrices() {
        let f = Field::prime(2).unwrap();
        let m2 = Algebra::matrix_algebra(&f, 2);
        // A = diagonal matrices, p = diagonal projection
        let a_basis = vec![m2.basis_vec(0), m2.basis_vec(3)];
        let p = Matrix::from_rows(
            &f,
            4,
            &[vec![f.one(), f.zero(), f.zero(), f.zero()], vec![f.zero(), f.zero(), f.zero(), f.one()]],
        );
        let (d, phi) = datum_from_retraction(&m2, &a_basis, &p).unwrap();
        assert!(check_axioms(&d).unwrap().all_hold());
        let prod = unified_product(&d).unwrap();
        assert!(prod.is_hom_to(&m2, &phi));
        assert!(phi.is_invertible(&f));
    }
}
