//! Exhaustive enumeration of small algebras and codimension-1 extensions,
//! used as ground truth for the flag classification.

use std::collections::HashMap;

use rayon::prelude::*;

use crate::algebra::{is_supersolvable, Algebra, HomSearch, Invariants};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{self, unit_vec, Matrix, Vector};

/// Default cap on the number of candidate tables.
pub const DEFAULT_BUDGET: u128 = 1 << 24;

#[derive(Clone, Debug)]
pub struct EnumerationTask {
    pub field: Field,
    pub dim: usize,
    pub commutative: bool,
    pub supersolvable: bool,
    /// Keep only algebras admitting a unital embedding of this algebra.
    pub contains: Option<Algebra>,
    pub budget: u128,
}

impl EnumerationTask {
    pub fn new(field: &Field, dim: usize) -> Self {
        EnumerationTask {
            field: field.clone(),
            dim,
            commutative: false,
            supersolvable: false,
            contains: None,
            budget: DEFAULT_BUDGET,
        }
    }

    /// |k|^(dim (dim-1)^2): the free products e_i e_j with i, j >= 1.
    pub fn candidate_count(&self) -> Result<u128> {
        let q = self.field.order().ok_or_else(|| Error::UnsupportedOverInfiniteField("algebra enumeration".into()))?;
        let slots = (self.dim * (self.dim.saturating_sub(1)).pow(2)) as u32;
        Ok((q as u128).checked_pow(slots).unwrap_or(u128::MAX))
    }
}

fn check_budget(candidates: u128, budget: u128) -> Result<()> {
    if candidates > budget {
        Err(Error::BudgetExceeded { candidates, budget })
    } else {
        Ok(())
    }
}

/// Base-|k| digits of `idx`, least significant first.
fn digits(elems: &[Elem], mut idx: u128, len: usize) -> Vec<Elem> {
    let q = elems.len() as u128;
    (0..len)
        .map(|_| {
            let d = (idx % q) as usize;
            idx /= q;
            elems[d].clone()
        })
        .collect()
}

fn passes_filters(task: &EnumerationTask, a: &Algebra) -> Result<bool> {
    if task.commutative && !a.is_commutative() {
        return Ok(false);
    }
    if let Some(sub) = &task.contains {
        if HomSearch::new(sub, a).injective(true).first()?.is_none() {
            return Ok(false);
        }
    }
    if task.supersolvable && is_supersolvable(a)?.is_none() {
        return Ok(false);
    }
    Ok(true)
}

/// All associative tables with e_0 the unit that pass the filters, in
/// lexicographic order of the free products.
pub fn enumerate_algebras(task: &EnumerationTask) -> Result<Vec<Algebra>> {
    let candidates = task.candidate_count()?;
    check_budget(candidates, task.budget)?;
    let f = &task.field;
    let n = task.dim;
    if n == 0 {
        return Err(Error::Usage("dimension must be at least 1".into()));
    }
    let elems = f.elements()?;
    let free = (n - 1) * (n - 1);
    let found: Vec<Option<Algebra>> = (0..candidates)
        .into_par_iter()
        .map(|idx| -> Result<Option<Algebra>> {
            let d = digits(&elems, idx, free * n);
            let a = Algebra::from_fn(f.clone(), n, unit_vec(f, n, 0), |i, j| match (i, j) {
                (0, j) => unit_vec(f, n, j),
                (i, 0) => unit_vec(f, n, i),
                _ => {
                    let s = ((i - 1) * (n - 1) + (j - 1)) * n;
                    d[s..s + n].to_vec()
                }
            });
            if a.is_valid() && passes_filters(task, &a)? {
                Ok(Some(a))
            } else {
                Ok(None)
            }
        })
        .collect::<Result<_>>()?;
    Ok(found.into_iter().flatten().collect())
}

#[derive(Clone, Debug)]
pub struct IsoClasses {
    /// First member of each class in input order.
    pub representatives: Vec<Algebra>,
    /// Class index of every input algebra.
    pub class_of: Vec<usize>,
    pub sizes: Vec<usize>,
}

/// Partition under `is`, bucketed by cheap invariants; each input is tested
/// against the representatives already in its bucket.
fn partition(
    algs: &[Algebra],
    key: impl Fn(&Algebra) -> Result<Invariants> + Sync,
    is: impl Fn(&Algebra, &Algebra) -> Result<bool>,
) -> Result<IsoClasses> {
    let keys: Vec<Invariants> = algs.par_iter().map(&key).collect::<Result<_>>()?;
    let mut buckets: HashMap<Invariants, Vec<usize>> = HashMap::new();
    let mut reps: Vec<usize> = Vec::new();
    let mut class_of = Vec::with_capacity(algs.len());
    let mut sizes = Vec::new();
    'next: for (i, k) in keys.into_iter().enumerate() {
        let bucket = buckets.entry(k).or_default();
        for &c in bucket.iter() {
            if is(&algs[reps[c]], &algs[i])? {
                class_of.push(c);
                sizes[c] += 1;
                continue 'next;
            }
        }
        bucket.push(reps.len());
        class_of.push(reps.len());
        reps.push(i);
        sizes.push(1);
    }
    Ok(IsoClasses { representatives: reps.into_iter().map(|i| algs[i].clone()).collect(), class_of, sizes })
}

/// Isomorphism classes of a list of algebras over one finite field.
pub fn iso_classes(algs: &[Algebra]) -> Result<IsoClasses> {
    partition(algs, Invariants::of, |a, b| Ok(crate::algebra::is_isomorphic(a, b)?.is_some()))
}

#[derive(Clone, Debug)]
pub struct ExtensionClass {
    pub algebra: Algebra,
    /// Matrix of the inclusion of A (original coordinates) into E.
    pub embedding: Matrix,
    pub size: usize,
}

/// Basis of A starting with the unit, completed by standard vectors.
fn unit_first_basis(a: &Algebra) -> Vec<Vector> {
    let f = a.field();
    let mut ech = linalg::Echelon::new();
    let mut basis = vec![a.unit().clone()];
    ech.insert(f, a.unit());
    for i in 0..a.dim() {
        let e = a.basis_vec(i);
        if ech.insert(f, &e) {
            basis.push(e);
        }
    }
    basis
}

/// Every algebra E = A ⊕ kx extending A's table, up to isomorphisms that
/// restrict to the identity on A.
pub fn brute_extensions_codim1(a: &Algebra) -> Result<Vec<ExtensionClass>> {
    brute_extensions_codim1_with_budget(a, DEFAULT_BUDGET)
}

/// Number of candidate tables for the extensions of A by one dimension:
/// e_i x and x e_i for i >= 1 and x x are free.
pub fn codim1_candidate_count(a: &Algebra) -> Result<u128> {
    let q = a.field().order().ok_or_else(|| Error::UnsupportedOverInfiniteField("extension enumeration".into()))?;
    let n = a.dim();
    let free = 2 * (n - 1) + 1;
    Ok((q as u128).checked_pow((free * (n + 1)) as u32).unwrap_or(u128::MAX))
}

pub fn brute_extensions_codim1_with_budget(a: &Algebra, budget: u128) -> Result<Vec<ExtensionClass>> {
    let f = a.field();
    let candidates = codim1_candidate_count(a)?;
    if a.dim() > 3 {
        return Err(Error::DimensionBoundExceeded { dim: a.dim(), bound: 3 });
    }
    let (base, p) = a.rebase(&unit_first_basis(a))?;
    let n = base.dim();
    let free = 2 * (n - 1) + 1;
    check_budget(candidates, budget)?;
    let elems = f.elements()?;
    let x = n;
    let mut unit = base.unit().clone();
    unit.push(f.zero());
    let tables: Vec<Option<Algebra>> = (0..candidates)
        .into_par_iter()
        .map(|idx| {
            let d = digits(&elems, idx, free * (n + 1));
            let slot = |s: usize| d[s * (n + 1)..(s + 1) * (n + 1)].to_vec();
            let e = Algebra::from_fn(f.clone(), n + 1, unit.clone(), |i, j| match (i, j) {
                (i, j) if i < n && j < n => {
                    let mut v = base.product(i, j).to_vec();
                    v.push(f.zero());
                    v
                }
                (0, _) | (_, 0) => unit_vec(f, n + 1, i + j),
                (i, j) if j == x && i < n => slot(i - 1),
                (i, j) if i == x && j < n => slot(n - 1 + j - 1),
                _ => slot(free - 1),
            });
            e.is_valid().then_some(e)
        })
        .collect();
    let valid: Vec<Algebra> = tables.into_iter().flatten().collect();
    let fixed: Vec<Vector> = (0..n).map(|i| unit_vec(f, n + 1, i)).collect();
    let classes = partition(&valid, Invariants::of, |e1, e2| {
        let mut s = HomSearch::new(e1, e2).injective(true);
        for v in &fixed {
            s = s.prescribe(v.clone(), v.clone());
        }
        Ok(s.first()?.is_some())
    })?;
    // inclusion A -> E: a -> (p^-1 a, 0)
    let pinv = p.inverse(f).expect("rebase matrix is invertible");
    let mut embedding = Matrix::zeros(f, n + 1, n);
    for i in 0..n {
        for j in 0..n {
            embedding.set(i, j, pinv.get(i, j).clone());
        }
    }
    Ok(classes
        .representatives
        .into_iter()
        .zip(classes.sizes)
        .map(|(algebra, size)| ExtensionClass { algebra, embedding: embedding.clone(), size })
        .collect())
}

/// Number of valid extension tables (flag datums) found by brute force.
pub fn brute_extension_table_count(a: &Algebra) -> Result<usize> {
    Ok(brute_extensions_codim1(a)?.iter().map(|c| c.size).sum())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flag::{classify_codim1, EquivMode};

    #[test]
    fn dimension_two_tables() {
        for (p, count) in [(2, 4), (3, 9)] {
            let f = Field::prime(p).unwrap();
            let all = enumerate_algebras(&EnumerationTask::new(&f, 2)).unwrap();
            assert_eq!(all.len(), count);
            assert_eq!(iso_classes(&all).unwrap().representatives.len(), 3);
        }
    }

    #[test]
    fn budget_is_enforced() {
        let f = Field::prime(2).unwrap();
        let mut task = EnumerationTask::new(&f, 3);
        task.budget = 100;
        assert!(matches!(enumerate_algebras(&task), Err(Error::BudgetExceeded { candidates: 4096, .. })));
    }

    #[test]
    fn extensions_of_ground_field() {
        let f = Field::prime(2).unwrap();
        let k = Algebra::ground(&f);
        let classes = brute_extensions_codim1(&k).unwrap();
        assert_eq!(classes.len(), 3);
        assert_eq!(classes.iter().map(|c| c.size).sum::<usize>(), 4);
    }

    #[test]
    fn oracle_matches_flag_classification() {
        for p in [2, 3] {
            let f = Field::prime(p).unwrap();
            for a in [Algebra::ground(&f), Algebra::two_dim(&f, &f.zero(), &f.zero())] {
                let brute = brute_extensions_codim1(&a).unwrap();
                let fam = classify_codim1(&a, EquivMode::Equivalent).unwrap();
                assert_eq!(brute.len(), fam.classes.len());
                assert_eq!(brute.iter().map(|c| c.size).sum::<usize>(), fam.datum_count());
            }
        }
    }

    #[test]
    fn quadratic_field_has_no_extensions() {
        let f = Field::prime(3).unwrap();
        let a = Algebra::two_dim(&f, &f.from_int(2), &f.zero());
        assert!(brute_extensions_codim1(&a).unwrap().is_empty());
    }
}
