//! Galois groups of extensions A ⊆ B: by brute-force automorphism search,
//! from the (r, σ) pairs of an extending datum, and from the (α, q) pairs of
//! a flag datum.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::algebra::{automorphisms_fixing, Algebra};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::flag::{flag_check, transform, Certificate, FlagDatum};
use crate::linalg::{self, affine_solve, span_basis, vsub, Matrix, Vector};
use crate::unified::{check_axioms, morphisms_with_v, psi_map, ExtendingDatum, MorphismPair};

/// Largest dimension of B accepted by the brute-force search.
pub const MAX_BRUTE_DIM: usize = 5;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementData {
    Automorphism,
    Pair { r: Matrix, sigma: Matrix },
    Codim1 { alpha: Vector, q: Elem },
}

/// A group element together with its matrix on B.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement {
    pub data: ElementData,
    pub action: Matrix,
}

/// A finite group with elements sorted by their action matrices; `table[i][j]`
/// is the index of the product of elements i and j.
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    pub field: Field,
    pub elements: Vec<GroupElement>,
    pub table: Vec<Vec<usize>>,
    pub identity: usize,
}

impl FiniteGroup {
    /// Table from a multiplication law on element data; fails if the set is
    /// not closed under it.
    fn from_law(
        field: &Field,
        mut elements: Vec<GroupElement>,
        mul: impl Fn(&ElementData, &ElementData) -> ElementData + Sync,
    ) -> Result<Self> {
        elements.sort_by(|a, b| a.action.cmp(&b.action));
        let index: HashMap<&ElementData, usize> = elements.iter().enumerate().map(|(i, e)| (&e.data, i)).collect();
        let n = elements.len();
        let table: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let p = mul(&elements[i].data, &elements[j].data);
                        index.get(&p).copied().ok_or_else(|| Error::NotAGroup("product leaves the element set".into()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        Self::finish(field, elements, table)
    }

    /// Table from composition of the action matrices.
    fn from_actions(field: &Field, mut elements: Vec<GroupElement>) -> Result<Self> {
        elements.sort_by(|a, b| a.action.cmp(&b.action));
        let index: HashMap<&Matrix, usize> = elements.iter().enumerate().map(|(i, e)| (&e.action, i)).collect();
        let n = elements.len();
        let table: Vec<Vec<usize>> = (0..n)
            .into_par_iter()
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let p = elements[i].action.mul(field, &elements[j].action);
                        index
                            .get(&p)
                            .copied()
                            .ok_or_else(|| Error::NotAGroup("composition leaves the element set".into()))
                    })
                    .collect::<Result<Vec<usize>>>()
            })
            .collect::<Result<_>>()?;
        Self::finish(field, elements, table)
    }

    fn finish(field: &Field, elements: Vec<GroupElement>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = elements.len();
        let identity = (0..n)
            .find(|&e| (0..n).all(|g| table[e][g] == g && table[g][e] == g))
            .ok_or_else(|| Error::NotAGroup("no identity".into()))?;
        Ok(FiniteGroup { field: field.clone(), elements, table, identity })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|i| (0..i).all(|j| self.table[i][j] == self.table[j][i]))
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.table[g][h] == self.identity).expect("group element without inverse")
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut x = g;
        let mut k = 1;
        while x != self.identity {
            x = self.table[x][g];
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn element_orders(&self) -> Vec<usize> {
        let mut v: Vec<usize> = (0..self.order()).map(|g| self.element_order(g)).collect();
        v.sort();
        v
    }

    /// Full check of identity, inverses and associativity.
    pub fn check_group_axioms(&self) -> bool {
        let n = self.order();
        let t = &self.table;
        let e = self.identity;
        (0..n).all(|g| t[e][g] == g && t[g][e] == g)
            && (0..n).all(|g| (0..n).any(|h| t[g][h] == e && t[h][g] == e))
            && (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])))
    }

    /// True when composing action matrices reproduces the table.
    pub fn actions_compose(&self) -> bool {
        let n = self.order();
        let el = &self.elements;
        (0..n).all(|i| (0..n).all(|j| el[i].action.mul(&self.field, &el[j].action) == el[self.table[i][j]].action))
    }

    pub fn actions(&self) -> Vec<&Matrix> {
        self.elements.iter().map(|e| &e.action).collect()
    }

    /// Whether `sub` (matched by action matrices) is a normal subgroup.
    pub fn is_normal_subgroup(&self, sub: &FiniteGroup) -> bool {
        let pos: HashMap<&Matrix, usize> = self.elements.iter().enumerate().map(|(i, e)| (&e.action, i)).collect();
        let Some(members) = sub.elements.iter().map(|e| pos.get(&e.action).copied()).collect::<Option<Vec<usize>>>()
        else {
            return false;
        };
        let inside: HashSet<usize> = members.iter().copied().collect();
        let closed = members.iter().all(|&a| members.iter().all(|&b| inside.contains(&self.table[a][b])));
        closed
            && (0..self.order()).all(|g| {
                let gi = self.inverse(g);
                members.iter().all(|&h| inside.contains(&self.table[self.table[g][h]][gi]))
            })
    }

    /// Heuristic isomorphism type from the order, commutativity and element
    /// orders.
    pub fn describe(&self) -> String {
        let n = self.order();
        let orders = self.element_orders();
        let max = *orders.last().unwrap_or(&1);
        let involutions = orders.iter().filter(|&&o| o == 2).count();
        if n == 1 {
            return "1".into();
        }
        if self.is_abelian() {
            if max == n {
                return format!("Z/{n}");
            }
            if max == 2 {
                return vec!["Z/2"; n.trailing_zeros() as usize].join(" x ");
            }
            return format!("abelian of order {n}");
        }
        match (n, max, involutions) {
            (6, _, _) => "S3 = GL(2,2)".into(),
            (8, _, 5) => "D4".into(),
            (8, _, _) => "Q8".into(),
            (48, 8, 13) => "GL(2,3)".into(),
            _ => format!("non-abelian of order {n}"),
        }
    }
}

fn brute_elements(b: &Algebra, a_basis: &[Vector]) -> Result<Vec<GroupElement>> {
    if b.dim() > MAX_BRUTE_DIM {
        return Err(Error::DimensionBoundExceeded { dim: b.dim(), bound: MAX_BRUTE_DIM });
    }
    Ok(automorphisms_fixing(b, a_basis)?
        .into_iter()
        .map(|m| GroupElement { data: ElementData::Automorphism, action: m })
        .collect())
}

/// All automorphisms of B fixing span(A_basis) pointwise, under composition.
pub fn galois_group_brute(b: &Algebra, a_basis: &[Vector]) -> Result<FiniteGroup> {
    FiniteGroup::from_actions(b.field(), brute_elements(b, a_basis)?)
}

fn pair_elements(d: &ExtendingDatum, identity_only: bool) -> Result<Vec<GroupElement>> {
    let report = check_axioms(d)?;
    if !report.all_hold() {
        return Err(Error::AxiomsFailed(Box::new(report)));
    }
    let f = d.field();
    if !f.is_finite() {
        return Err(Error::UnsupportedOverInfiniteField("Galois group of a datum".into()));
    }
    let sigmas = if identity_only { vec![Matrix::identity(f, d.v_dim)] } else { linalg::general_linear(f, d.v_dim)? };
    let per_sigma: Vec<Vec<MorphismPair>> =
        sigmas.par_iter().map(|s| morphisms_with_v(d, d, s)).collect::<Result<_>>()?;
    Ok(per_sigma
        .into_iter()
        .flatten()
        .map(|p| GroupElement { action: psi_map(d, &p), data: ElementData::Pair { r: p.r, sigma: p.v } })
        .collect())
}

/// (r, σ)(r', σ') = (r' + r∘σ', σ∘σ').
fn pair_law(f: &Field) -> impl Fn(&ElementData, &ElementData) -> ElementData + Sync + '_ {
    move |x, y| match (x, y) {
        (ElementData::Pair { r, sigma }, ElementData::Pair { r: r2, sigma: s2 }) => {
            ElementData::Pair { r: r2.add(f, &r.mul(f, s2)), sigma: sigma.mul(f, s2) }
        }
        _ => unreachable!("pair law applied to non-pair data"),
    }
}

/// The pairs (r, σ), σ invertible, satisfying the morphism conditions from
/// the datum to itself; each acts on A ⊕ V by (a, x) -> (a + r(x), σ(x)).
pub fn galois_group_unified(d: &ExtendingDatum) -> Result<FiniteGroup> {
    let f = d.field();
    FiniteGroup::from_law(f, pair_elements(d, false)?, pair_law(f))
}

/// The pairs with σ = id: automorphisms that also fix V modulo A.
pub fn stabilizing_costabilizing_subgroup(d: &ExtendingDatum) -> Result<FiniteGroup> {
    let f = d.field();
    FiniteGroup::from_law(f, pair_elements(d, true)?, pair_law(f))
}

fn codim1_action(f: &Field, n: usize, alpha: &[Elem], q: &Elem) -> Matrix {
    let mut m = Matrix::identity(f, n + 1);
    for (i, a) in alpha.iter().enumerate() {
        m.set(i, n, a.clone());
    }
    m.set(n, n, q.clone());
    m
}

/// Pairs (α, q) ∈ A x k* whose map x -> α + q x is an automorphism of the
/// flag extension, with (α, q)(α', q') = (α' + q'α, qq').
pub fn galois_group_codim1(a: &Algebra, fd: &FlagDatum) -> Result<FiniteGroup> {
    let report = flag_check(a, fd)?;
    if !report.all_hold() {
        return Err(Error::FlagCheckFailed(report.failing().join(", ")));
    }
    let f = a.field();
    if !f.is_finite() {
        return Err(Error::UnsupportedOverInfiniteField("Galois group of a flag datum".into()));
    }
    let n = a.dim();
    let mut elements = Vec::new();
    for q in f.units()? {
        let lin = |alpha: &[Elem]| {
            let t = transform(a, fd, &Certificate { q: q.clone(), alpha: alpha.to_vec() });
            let mut r = vsub(f, &t.big_d.data, &fd.big_d.data);
            r.extend(vsub(f, &t.d.data, &fd.d.data));
            r.push(f.sub(&t.u, &fd.u));
            r
        };
        let Some(space) = affine_solve(f, n, lin) else { continue };
        for alpha in space.points(f)? {
            if transform(a, fd, &Certificate { q: q.clone(), alpha: alpha.clone() }) == *fd {
                let action = codim1_action(f, n, &alpha, &q);
                elements.push(GroupElement { data: ElementData::Codim1 { alpha, q: q.clone() }, action });
            }
        }
    }
    let law = |x: &ElementData, y: &ElementData| match (x, y) {
        (ElementData::Codim1 { alpha, q }, ElementData::Codim1 { alpha: a2, q: q2 }) => {
            ElementData::Codim1 { alpha: linalg::vadd(f, a2, &linalg::vscale(f, q2, alpha)), q: f.mul(q, q2) }
        }
        _ => unreachable!("codim-1 law applied to other data"),
    };
    FiniteGroup::from_law(f, elements, law)
}

/// Basis of the subalgebra fixed by Gal(B/A), and whether it equals A.
pub fn invariants_and_galois_test(b: &Algebra, a_basis: &[Vector]) -> Result<(Vec<Vector>, bool)> {
    let f = b.field();
    let g = galois_group_brute(b, a_basis)?;
    let n = b.dim();
    let mut rows = Vec::new();
    for e in &g.elements {
        let m = e.action.sub(f, &Matrix::identity(f, n));
        rows.extend(m.rows_vec());
    }
    let fixed = if rows.is_empty() {
        span_basis(f, &(0..n).map(|i| b.basis_vec(i)).collect::<Vec<_>>())
    } else {
        span_basis(f, &linalg::nullspace(f, &Matrix::from_rows(f, n, &rows)))
    };
    debug_assert!(b.is_closed(&fixed));
    let is_galois = fixed.len() == linalg::rank_of(f, a_basis);
    Ok((fixed, is_galois))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_presentation;
    use crate::flag::{datum_from_flag, enumerate_flag_datums, flag_extension};

    fn sub_basis(b: &Algebra, idx: &[usize]) -> Vec<Vector> {
        idx.iter().map(|&i| b.basis_vec(i)).collect()
    }

    #[test]
    fn first_example_over_gf3() {
        let f = Field::prime(3).unwrap();
        let b = parse_presentation(&f, "x^2 = 0, y^2 = y, xy = x, yx = 0").unwrap();
        let g = galois_group_brute(&b, &sub_basis(&b, &[0, 1])).unwrap();
        assert_eq!(g.order(), 3);
        assert!(g.is_abelian() && g.check_group_axioms());
        assert_eq!(g.describe(), "Z/3");
        let (_, galois) = invariants_and_galois_test(&b, &sub_basis(&b, &[0, 1])).unwrap();
        assert!(galois);
    }

    #[test]
    fn ground_field_flag_groups() {
        let f = Field::prime(3).unwrap();
        let k = Algebra::ground(&f);
        for fd in enumerate_flag_datums(&k).unwrap() {
            let b = flag_extension(&k, &fd).unwrap();
            let brute = galois_group_brute(&b, &sub_basis(&b, &[0])).unwrap();
            let c1 = galois_group_codim1(&k, &fd).unwrap();
            let pairs = galois_group_unified(&datum_from_flag(&k, &fd)).unwrap();
            assert_eq!(brute.actions(), c1.actions());
            assert_eq!(brute.actions(), pairs.actions());
            assert!(c1.actions_compose() && pairs.actions_compose());
        }
    }

    #[test]
    fn dual_numbers_group() {
        let f = Field::prime(3).unwrap();
        let k = Algebra::ground(&f);
        let fd = enumerate_flag_datums(&k).unwrap().into_iter().next().unwrap();
        assert!(f.is_zero(&fd.a0[0]) && f.is_zero(&fd.u));
        let g = galois_group_codim1(&k, &fd).unwrap();
        assert_eq!(g.order(), 2);
        assert!(g
            .elements
            .iter()
            .all(|e| matches!(&e.data, ElementData::Codim1 { alpha, .. } if f.is_zero(&alpha[0]))));
    }

    #[test]
    fn subgroup_h_is_abelian_and_normal() {
        let f = Field::prime(2).unwrap();
        let k00 = Algebra::two_dim(&f, &f.zero(), &f.zero());
        for fd in enumerate_flag_datums(&k00).unwrap() {
            let d = datum_from_flag(&k00, &fd);
            let g = galois_group_unified(&d).unwrap();
            let h = stabilizing_costabilizing_subgroup(&d).unwrap();
            assert!(h.is_abelian());
            assert!(g.is_normal_subgroup(&h));
        }
    }

    #[test]
    fn trivial_group_means_not_galois() {
        let f = Field::prime(2).unwrap();
        let b = Algebra::two_dim(&f, &f.one(), &f.one());
        let g = galois_group_brute(&b, &sub_basis(&b, &[0])).unwrap();
        // x -> x + 1 is the nontrivial automorphism of GF(4)
        assert_eq!(g.order(), 2);
        let k00 = Algebra::two_dim(&f, &f.zero(), &f.zero());
        let (fixed, galois) = invariants_and_galois_test(&k00, &sub_basis(&k00, &[0])).unwrap();
        assert_eq!(fixed.len(), 2);
        assert!(!galois);
    }
}
