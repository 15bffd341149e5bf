//! Representative systems for the square classes S, the Artin-Schreier
//! classes T and the char-2 mixed classes R.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Backend, Elem, Field, Gf2Poly, RatFn};
use crate::error::{Error, Result};
use crate::util::UnionFind;

/// Default numerator/denominator degree bound for GF(2)(t).
pub const DEFAULT_DEGREE_BOUND: usize = 2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassSystem {
    /// Exhaustive list of squares for finite fields; squares among the
    /// enumerated elements for bounded infinite fields.
    pub squares: Vec<Elem>,
    /// Representatives of k \ k^2 under d ~ q^2 d'.
    pub s_reps: Vec<Elem>,
    /// Representatives of c ~ c + a^2 - a, with 0 first.
    pub t_reps: Vec<Elem>,
    /// Representatives of d ~ d' iff d - q^2 d' is a square (char 2, k != k^2).
    pub r_reps: Vec<Elem>,
    /// True when the lists are complete (finite fields).
    pub complete: bool,
    /// [k* : (k*)^2] when finite.
    pub square_class_index: Option<u64>,
}

/// Class system of a finite field, or of GF(2)(t) up to the default degree bound.
pub fn class_system(f: &Field) -> Result<ClassSystem> {
    match &f.0.backend {
        Backend::Rational => Err(Error::InfiniteClassSet("S")),
        Backend::Gf2Rf => class_system_bounded(f, DEFAULT_DEGREE_BOUND),
        _ => finite_system(f),
    }
}

/// Like `class_system`, but infinite fields are enumerated up to `bound`:
/// the polynomial degree for GF(2)(t), the absolute value of squarefree
/// integers for Q.
pub fn class_system_bounded(f: &Field, bound: usize) -> Result<ClassSystem> {
    match &f.0.backend {
        Backend::Rational => Ok(rational_system(f, bound)),
        Backend::Gf2Rf => gf2t_system(f, bound),
        _ => finite_system(f),
    }
}

fn finite_system(f: &Field) -> Result<ClassSystem> {
    let elems = f.elements()?;
    let q = elems.len();
    let squares: Vec<Elem> = {
        let mut sq: Vec<Elem> = elems.iter().map(|a| f.mul(a, a)).collect();
        sq.sort();
        sq.dedup();
        sq
    };
    let nonzero_squares: Vec<&Elem> = squares.iter().filter(|s| !f.is_zero(s)).collect();

    let mut covered = vec![false; q];
    for s in &squares {
        covered[s.fin() as usize] = true;
    }
    let mut s_reps = Vec::new();
    for d in &elems {
        if covered[d.fin() as usize] {
            continue;
        }
        s_reps.push(d.clone());
        for s in &nonzero_squares {
            covered[f.mul(s, d).fin() as usize] = true;
        }
    }

    let mut uf = UnionFind::new(q);
    let shifts: Vec<Elem> = elems.iter().map(|a| f.sub(&f.mul(a, a), a)).collect();
    for c in &elems {
        for s in &shifts {
            uf.union(c.fin() as usize, f.add(c, s).fin() as usize);
        }
    }
    let mut seen = vec![false; q];
    let mut t_reps = Vec::new();
    for c in &elems {
        let root = uf.find(c.fin() as usize);
        if !seen[root] {
            seen[root] = true;
            t_reps.push(c.clone());
        }
    }

    let index = ((q - 1) / nonzero_squares.len()) as u64;
    Ok(ClassSystem { squares, s_reps, t_reps, r_reps: Vec::new(), complete: true, square_class_index: Some(index) })
}

fn squarefree(n: u64) -> bool {
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d * d) {
            return false;
        }
        d += 1;
    }
    true
}

fn rational_system(f: &Field, bound: usize) -> ClassSystem {
    let int = |n: i64| Elem::Rat(Box::new(BigRational::from_integer(BigInt::from(n))));
    let mut s_reps = Vec::new();
    for n in 1..=bound as u64 {
        if !squarefree(n) {
            continue;
        }
        if n > 1 {
            s_reps.push(int(n as i64));
        }
        s_reps.push(int(-(n as i64)));
    }
    let squares = (0..=bound as i64).filter(|n| n * n <= bound as i64).map(|n| int(n * n)).collect();
    let _ = f;
    ClassSystem { squares, s_reps, t_reps: Vec::new(), r_reps: Vec::new(), complete: false, square_class_index: None }
}

/// Solves a^2 + a*b = n over GF(2)[t] for a; a -> a^2 + ab is GF(2)-linear.
fn solve_as_poly(n: &Gf2Poly, b: &Gf2Poly) -> Option<Gf2Poly> {
    let dn = n.degree().unwrap_or(0);
    let bound = dn.div_ceil(2) + b.degree().unwrap_or(0) + 1;
    // Gaussian elimination over GF(2) on columns (t^i)^2 + t^i b.
    let mut basis: Vec<(Gf2Poly, Gf2Poly)> = Vec::new(); // (image, combination)
    for i in 0..=bound {
        let ti = Gf2Poly::monomial(i);
        let mut img = ti.mul(&ti).add(&ti.mul(b));
        let mut comb = ti;
        for (bi, bc) in &basis {
            if let (Some(d1), Some(d2)) = (img.degree(), bi.degree()) {
                if img.bit(d2) && d1 >= d2 {
                    img = img.add(bi);
                    comb = comb.add(bc);
                }
            }
        }
        if !img.is_zero() {
            basis.push((img, comb));
            basis.sort_by_key(|b| std::cmp::Reverse(b.0.degree()));
        }
    }
    let mut target = n.clone();
    let mut comb = Gf2Poly::zero();
    for (bi, bc) in &basis {
        let d = bi.degree().unwrap();
        if target.bit(d) {
            target = target.add(bi);
            comb = comb.add(bc);
        }
    }
    target.is_zero().then_some(comb)
}

/// Whether `g` lies in { a^2 + a : a in GF(2)(t) }.
fn gf2t_is_artin_schreier(g: &RatFn) -> bool {
    // a = x/y reduced gives a^2 + a = (x^2 + xy)/y^2, already reduced.
    let Some(y) = g.den.sqrt() else { return false };
    solve_as_poly(&g.num, &y).is_some()
}

fn gf2t_system(f: &Field, bound: usize) -> Result<ClassSystem> {
    let elems = f.bounded_elements(bound)?;
    let rf = |e: &Elem| -> RatFn {
        match e {
            Elem::Rf(r) => (**r).clone(),
            _ => unreachable!(),
        }
    };
    let squares: Vec<Elem> = elems.iter().filter(|e| f.is_square(e)).cloned().collect();
    let mut s_reps: Vec<Elem> = Vec::new();
    let mut t_reps: Vec<Elem> = Vec::new();
    let mut r_reps: Vec<Elem> = Vec::new();
    for e in &elems {
        if !f.is_square(e) {
            if !s_reps.iter().any(|s| f.is_square(&f.div(e, s))) {
                s_reps.push(e.clone());
            }
            // non-squares A^2 + t B^2 and A'^2 + t B'^2 are related by q = B/B'
            if r_reps.is_empty() {
                r_reps.push(e.clone());
            }
        }
        if !t_reps.iter().any(|c| gf2t_is_artin_schreier(&rf(&f.sub(e, c)))) {
            t_reps.push(e.clone());
        }
    }
    Ok(ClassSystem { squares, s_reps, t_reps, r_reps, complete: false, square_class_index: None })
}

/// d ~ d' iff d = q^2 d' for a nonzero q (both nonzero).
pub fn s_equivalent(f: &Field, d: &Elem, d2: &Elem) -> bool {
    !f.is_zero(d) && !f.is_zero(d2) && f.is_square(&f.div(d, d2))
}

/// c ~ c' iff c - c' = a^2 - a for some a.
pub fn t_equivalent(f: &Field, c: &Elem, c2: &Elem) -> Result<bool> {
    let diff = f.sub(c, c2);
    match &diff {
        Elem::Rf(r) => Ok(gf2t_is_artin_schreier(r)),
        Elem::Fin(_) => Ok(finite_t_related(f, c, c2)),
        Elem::Rat(_) => Err(Error::InfiniteClassSet("T")),
    }
}

fn finite_t_related(f: &Field, x: &Elem, rep: &Elem) -> bool {
    // closure of the one-step relation, recomputed on the (small) field
    let elems = f.elements().unwrap();
    let mut uf = UnionFind::new(elems.len());
    for c in &elems {
        for a in &elems {
            uf.union(c.fin() as usize, f.add(c, &f.sub(&f.mul(a, a), a)).fin() as usize);
        }
    }
    uf.find(x.fin() as usize) == uf.find(rep.fin() as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fmt_all(f: &Field, v: &[Elem]) -> Vec<String> {
        v.iter().map(|e| f.format(e)).collect()
    }

    #[test]
    fn gf2() {
        let f = Field::prime(2).unwrap();
        let c = class_system(&f).unwrap();
        assert_eq!(fmt_all(&f, &c.squares), ["0", "1"]);
        assert!(c.s_reps.is_empty() && c.r_reps.is_empty());
        assert_eq!(fmt_all(&f, &c.t_reps), ["0", "1"]);
    }

    #[test]
    fn odd_prime_fields() {
        let f3 = Field::prime(3).unwrap();
        let c = class_system(&f3).unwrap();
        assert_eq!(fmt_all(&f3, &c.s_reps), ["2"]);
        assert_eq!(c.square_class_index, Some(2));
        assert_eq!(fmt_all(&f3, &c.t_reps), ["0"]);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(fmt_all(&f5, &class_system(&f5).unwrap().s_reps), ["2"]);
    }

    #[test]
    fn gf4_artin_schreier() {
        let f = Field::parse("GF(4)").unwrap();
        let c = class_system(&f).unwrap();
        assert_eq!(c.t_reps.len(), 2);
        assert_eq!(c.t_reps[0], f.zero());
    }

    #[test]
    fn rationals_need_a_bound() {
        let q = Field::rationals();
        assert!(matches!(class_system(&q), Err(Error::InfiniteClassSet(_))));
        let c = class_system_bounded(&q, 5).unwrap();
        assert_eq!(fmt_all(&q, &c.s_reps), ["-1", "2", "-2", "3", "-3", "5", "-5"]);
    }

    #[test]
    fn rational_function_field() {
        let r = Field::gf2t();
        let c = class_system(&r).unwrap();
        assert_eq!(fmt_all(&r, &c.r_reps), ["t"]);
        assert_eq!(c.t_reps[0], r.zero());
        assert_eq!(c.t_reps[1], r.one());
        // t^2 + t = a^2 - a for a = t, while t is not of that form
        let t = r.generator().unwrap();
        let t2t = r.parse_elem("t^2+t").unwrap();
        assert!(t_equivalent(&r, &t2t, &r.zero()).unwrap());
        assert!(!t_equivalent(&r, &t, &r.zero()).unwrap());
        assert!(!c.t_reps.contains(&t2t));
    }
}
