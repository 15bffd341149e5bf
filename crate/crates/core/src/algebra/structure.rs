use std::collections::{BTreeMap, HashSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Algebra, HomSearch};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, FieldSpec};
use crate::linalg::{self, coords, dot, span_basis, Matrix, Vector};

/// Unital multiplicative functional, stored by its values on the basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Character {
    pub values: Vector,
}

impl Character {
    pub fn apply(&self, f: &Field, v: &[Elem]) -> Elem {
        dot(f, &self.values, v)
    }

    pub fn is_character_of(&self, a: &Algebra) -> bool {
        let f = a.field();
        if self.values.len() != a.dim() || !f.is_one(&self.apply(f, a.unit())) {
            return false;
        }
        (0..a.dim())
            .all(|i| (0..a.dim()).all(|j| self.apply(f, a.product(i, j)) == f.mul(&self.values[i], &self.values[j])))
    }
}

/// All characters A -> k, sorted by their values.
pub fn characters(a: &Algebra) -> Result<Vec<Character>> {
    let f = a.field();
    if a.dim() == 1 {
        let c = Character { values: vec![f.inv(&a.unit()[0])] };
        return Ok(vec![c]);
    }
    let mut out: Vec<Character> = if f.is_finite() {
        let k = Algebra::ground(f);
        let maps = HomSearch::new(a, &k).run()?;
        maps.into_iter().map(|m| Character { values: m.row(0) }).collect()
    } else if *f.spec() == FieldSpec::Rationals {
        monogenic_rational_characters(a)?
    } else {
        return Err(Error::UnsupportedOverInfiniteField("characters of a non-monogenic algebra".into()));
    };
    out.sort();
    Ok(out)
}

fn as_rat(e: &Elem) -> &BigRational {
    match e {
        Elem::Rat(r) => r,
        _ => unreachable!("rational field element"),
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            out.push(d.clone());
            out.push(&n / &d);
        }
        d += 1;
    }
    out.sort();
    out.dedup();
    out
}

fn monogenic_rational_characters(a: &Algebra) -> Result<Vec<Character>> {
    let f = a.field();
    let n = a.dim();
    let mut gens: Vec<Vector> = (0..n).map(|i| a.basis_vec(i)).collect();
    for i in 0..n {
        for j in i + 1..n {
            gens.push(linalg::vadd(f, &a.basis_vec(i), &a.basis_vec(j)));
        }
    }
    let Some(g) = gens.into_iter().find(|g| a.min_poly(g).len() == n) else {
        return Err(Error::UnsupportedOverInfiniteField("characters of a non-monogenic Q-algebra".into()));
    };
    let powers: Vec<Vector> = (0..n).map(|k| a.power(&g, k)).collect();
    // X^n - sum c_i X^i, scaled to integer coefficients (low to high)
    let mp = a.min_poly(&g);
    let mut poly: Vec<BigRational> = mp.iter().map(|c| -as_rat(c).clone()).collect();
    poly.push(BigRational::one());
    let lcm = poly.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let mut ints: Vec<BigInt> =
        poly.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots: Vec<BigRational> = Vec::new();
    if ints[0].is_zero() {
        roots.push(BigRational::zero());
        while ints.len() > 1 && ints[0].is_zero() {
            ints.remove(0);
        }
    }
    if ints.len() > 1 {
        let eval = |r: &BigRational| {
            ints.iter().rev().fold(BigRational::zero(), |acc, c| acc * r + BigRational::from_integer(c.clone()))
        };
        for s in divisors(&ints[0]) {
            for t in divisors(ints.last().unwrap()) {
                for sign in [1, -1] {
                    let r = BigRational::new(BigInt::from(sign) * &s, t.clone());
                    if eval(&r).is_zero() && !roots.contains(&r) {
                        roots.push(r);
                    }
                }
            }
        }
    }
    let mut out = Vec::new();
    for r in roots {
        let rp: Vec<Elem> = (0..n).map(|k| Elem::Rat(Box::new(num_traits::pow(r.clone(), k)))).collect();
        let values: Vector = (0..n)
            .map(|j| {
                let c = coords(f, &powers, &a.basis_vec(j)).expect("power basis");
                dot(f, &c, &rp)
            })
            .collect();
        let ch = Character { values };
        debug_assert!(ch.is_character_of(a));
        out.push(ch);
    }
    Ok(out)
}

/// Cheap isomorphism invariants of an algebra over a finite field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Invariants {
    pub dim: usize,
    pub commutative: bool,
    pub center_dim: usize,
    pub idempotents: usize,
    pub square_zero: usize,
    /// Multiset of minimal polynomials over all elements.
    pub min_poly_profile: Vec<(Vector, usize)>,
}

impl Invariants {
    pub fn of(a: &Algebra) -> Result<Self> {
        let f = a.field();
        let mut idempotents = 0;
        let mut square_zero = 0;
        let mut profile: BTreeMap<Vector, usize> = BTreeMap::new();
        for v in linalg::all_vectors(f, a.dim())? {
            let sq = a.mul(&v, &v);
            if sq == v {
                idempotents += 1;
            }
            if linalg::is_zero_vec(f, &sq) {
                square_zero += 1;
            }
            *profile.entry(a.min_poly(&v)).or_default() += 1;
        }
        Ok(Invariants {
            dim: a.dim(),
            commutative: a.is_commutative(),
            center_dim: a.center_dim(),
            idempotents,
            square_zero,
            min_poly_profile: profile.into_iter().collect(),
        })
    }
}

/// A unital algebra isomorphism A -> B, if one exists.
pub fn is_isomorphic(a: &Algebra, b: &Algebra) -> Result<Option<Matrix>> {
    if a.field() != b.field() {
        return Err(Error::ShapeMismatch("algebras over different fields".into()));
    }
    if a.dim() != b.dim() {
        return Ok(None);
    }
    let f = a.field();
    if f.is_finite() {
        if a.dim() > 2 && Invariants::of(a)? != Invariants::of(b)? {
            return Ok(None);
        }
        return HomSearch::new(a, b).injective(true).first();
    }
    match a.dim() {
        1 => Ok(Some(Matrix::from_rows(f, 1, &[vec![f.div(&b.unit()[0], &a.unit()[0])]]))),
        2 if f.characteristic() != 2 => Ok(iso_dim2_odd(a, b)),
        _ => Err(Error::UnsupportedOverInfiniteField(format!("isomorphism test in dimension {}", a.dim()))),
    }
}

/// Normal form y^2 = delta with y = x - b/2; returns (y, delta).
fn completed_square(a: &Algebra) -> (Vector, Elem) {
    let f = a.field();
    let x = (0..2).map(|i| a.basis_vec(i)).find(|v| coords(f, &[a.unit().clone()], v).is_none()).unwrap();
    let mp = a.min_poly(&x);
    let half_b = f.div(&mp[1], &f.from_int(2));
    let y = linalg::vsub(f, &x, &linalg::vscale(f, &half_b, a.unit()));
    let delta = f.add(&mp[0], &f.mul(&half_b, &half_b));
    (y, delta)
}

fn iso_dim2_odd(a: &Algebra, b: &Algebra) -> Option<Matrix> {
    let f = a.field();
    let (ya, da) = completed_square(a);
    let (yb, db) = completed_square(b);
    let s = match (f.is_zero(&da), f.is_zero(&db)) {
        (true, true) => f.one(),
        (false, false) => f.sqrt(&f.div(&da, &db))?,
        _ => return None,
    };
    // unit -> unit, ya -> s yb
    let src = Matrix::from_cols(f, 2, &[a.unit().clone(), ya]);
    let dst = Matrix::from_cols(f, 2, &[b.unit().clone(), linalg::vscale(f, &s, &yb)]);
    let m = dst.mul(f, &src.inverse(f)?);
    debug_assert!(a.is_hom_to(b, &m));
    Some(m)
}

/// All automorphisms of B fixing span(a_basis) pointwise, sorted.
pub fn automorphisms_fixing(b: &Algebra, a_basis: &[Vector]) -> Result<Vec<Matrix>> {
    if !b.is_subalgebra(a_basis) {
        return Err(Error::NotASubalgebra("the fixed span is not a unital subalgebra".into()));
    }
    if !b.field().is_finite() {
        return Err(Error::UnsupportedOverInfiniteField("automorphism search".into()));
    }
    let mut s = HomSearch::new(b, b).injective(true);
    for v in a_basis {
        s = s.prescribe(v.clone(), v.clone());
    }
    let mut out = s.run()?;
    out.sort();
    Ok(out)
}

/// A chain k = E_0 < E_1 < ... < E_m = E of unital subalgebras with
/// codimension-1 steps, each given by its RREF basis.
pub fn is_supersolvable(e: &Algebra) -> Result<Option<Vec<Vec<Vector>>>> {
    let f = e.field();
    let n = e.dim();
    let start = span_basis(f, &[e.unit().clone()]);
    if n <= 2 {
        let mut tower = vec![start];
        if n == 2 {
            tower.push(span_basis(f, &[e.basis_vec(0), e.basis_vec(1)]));
        }
        return Ok(Some(tower));
    }
    if !f.is_finite() {
        return Err(Error::UnsupportedOverInfiniteField(format!("supersolvability in dimension {n}")));
    }
    let vectors = linalg::all_vectors(f, n)?;
    let mut dead: HashSet<Vec<Vector>> = HashSet::new();
    let mut tower = vec![start];
    if tower_dfs(e, &vectors, &mut tower, &mut dead) {
        Ok(Some(tower))
    } else {
        Ok(None)
    }
}

fn tower_dfs(e: &Algebra, vectors: &[Vector], tower: &mut Vec<Vec<Vector>>, dead: &mut HashSet<Vec<Vector>>) -> bool {
    let f = e.field();
    let cur = tower.last().unwrap().clone();
    if cur.len() == e.dim() {
        return true;
    }
    let mut tried: HashSet<Vec<Vector>> = HashSet::new();
    for v in vectors {
        let mut rows = cur.clone();
        rows.push(v.clone());
        let w = span_basis(f, &rows);
        if w.len() != cur.len() + 1 || dead.contains(&w) || !tried.insert(w.clone()) {
            continue;
        }
        if !e.is_closed(&w) {
            continue;
        }
        tower.push(w.clone());
        if tower_dfs(e, vectors, tower, dead) {
            return true;
        }
        tower.pop();
        dead.insert(w);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn character_counts() {
        let f3 = Field::prime(3).unwrap();
        let k01 = Algebra::two_dim(&f3, &f3.zero(), &f3.one());
        assert_eq!(characters(&k01).unwrap().len(), 2);
        let gf9 = Algebra::two_dim(&f3, &f3.from_int(2), &f3.zero());
        assert!(characters(&gf9).unwrap().is_empty());
        let f2 = Field::prime(2).unwrap();
        assert!(characters(&Algebra::matrix_algebra(&f2, 2)).unwrap().is_empty());
    }

    #[test]
    fn rational_characters() {
        let q = Field::rationals();
        // x^2 = 4: roots 2, -2
        let a = Algebra::two_dim(&q, &q.from_int(4), &q.zero());
        let ch = characters(&a).unwrap();
        assert_eq!(ch.len(), 2);
        assert!(ch.iter().all(|c| c.is_character_of(&a)));
        let b = Algebra::two_dim(&q, &q.from_int(2), &q.zero());
        assert!(characters(&b).unwrap().is_empty());
    }

    #[test]
    fn isomorphism_dim2() {
        let f3 = Field::prime(3).unwrap();
        let k10 = Algebra::two_dim(&f3, &f3.one(), &f3.zero());
        let k01 = Algebra::two_dim(&f3, &f3.zero(), &f3.one());
        let k20 = Algebra::two_dim(&f3, &f3.from_int(2), &f3.zero());
        let m = is_isomorphic(&k10, &k01).unwrap().unwrap();
        assert!(k10.is_hom_to(&k01, &m));
        assert!(is_isomorphic(&k20, &k01).unwrap().is_none());
        assert!(is_isomorphic(&k01, &k01).unwrap().is_some());
        let q = Field::rationals();
        let a = Algebra::two_dim(&q, &q.from_int(2), &q.zero());
        let b = Algebra::two_dim(&q, &q.from_int(8), &q.zero());
        let c = Algebra::two_dim(&q, &q.from_int(3), &q.zero());
        assert!(is_isomorphic(&a, &b).unwrap().is_some());
        assert!(is_isomorphic(&a, &c).unwrap().is_none());
    }

    #[test]
    fn matrix_algebra_tower() {
        let f2 = Field::prime(2).unwrap();
        let m2 = Algebra::matrix_algebra(&f2, 2);
        let t = is_supersolvable(&m2).unwrap().unwrap();
        assert_eq!(t.iter().map(|s| s.len()).collect::<Vec<_>>(), vec![1, 2, 3, 4]);
        for s in &t {
            assert!(m2.is_subalgebra(s));
        }
    }
}
