//! Backtracking search for unital algebra maps between finite-dimensional
//! algebras over a finite field.

use std::collections::HashMap;

use super::Algebra;
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{self, axpy, coords, unit_vec, Echelon, Matrix, Vector};

type Filter<'a> = Box<dyn Fn(&[Elem], &[Elem]) -> bool + Sync + 'a>;

/// Search for algebra maps src -> dst with some images prescribed.
///
/// The source is rebased so the prescribed vectors come first; remaining basis
/// vectors get candidate images killed by their minimal polynomial, and every
/// basis product is checked as soon as all vectors it involves are assigned.
pub struct HomSearch<'a> {
    src: &'a Algebra,
    dst: &'a Algebra,
    prescribed: Vec<(Vector, Vector)>,
    injective: bool,
    filter: Option<Filter<'a>>,
    limit: Option<usize>,
}

struct Plan {
    basis: Vec<Vector>,
    fixed: usize,
    images: Vec<Option<Vector>>,
    checks: Vec<Vec<(usize, usize, Vector)>>,
    candidates: Vec<Vec<Vector>>,
}

impl<'a> HomSearch<'a> {
    /// A unital search: the unit is always prescribed to go to the unit.
    pub fn new(src: &'a Algebra, dst: &'a Algebra) -> Self {
        HomSearch {
            src,
            dst,
            prescribed: vec![(src.unit().clone(), dst.unit().clone())],
            injective: false,
            filter: None,
            limit: None,
        }
    }

    pub fn prescribe(mut self, v: Vector, image: Vector) -> Self {
        self.prescribed.push((v, image));
        self
    }

    pub fn injective(mut self, yes: bool) -> Self {
        self.injective = yes;
        self
    }

    pub fn limit(mut self, n: usize) -> Self {
        self.limit = Some(n);
        self
    }

    /// Restricts candidate images: called with a free source basis vector (in
    /// source coordinates) and a proposed image.
    pub fn filter(mut self, f: impl Fn(&[Elem], &[Elem]) -> bool + Sync + 'a) -> Self {
        self.filter = Some(Box::new(f));
        self
    }

    fn plan(&self) -> Result<Option<Plan>> {
        let f = self.src.field();
        if !f.is_finite() {
            return Err(Error::UnsupportedOverInfiniteField("homomorphism search".into()));
        }
        if self.dst.field() != f {
            return Err(Error::ShapeMismatch("algebras over different fields".into()));
        }
        let n = self.src.dim();
        let mut basis: Vec<Vector> = Vec::new();
        let mut images: Vec<Option<Vector>> = Vec::new();
        for (v, w) in &self.prescribed {
            if v.len() != n || w.len() != self.dst.dim() {
                return Err(Error::DimensionMismatch("prescribed vector length".into()));
            }
            match coords(f, &basis, v) {
                Some(c) => {
                    let mut img = self.dst.zero_vec();
                    for (ci, im) in c.iter().zip(&images) {
                        axpy(f, &mut img, ci, im.as_ref().unwrap());
                    }
                    if img != *w {
                        return Ok(None);
                    }
                }
                None => {
                    basis.push(v.clone());
                    images.push(Some(w.clone()));
                }
            }
        }
        let fixed = basis.len();
        for i in 0..n {
            let e = unit_vec(f, n, i);
            if coords(f, &basis, &e).is_none() {
                basis.push(e);
                images.push(None);
            }
        }
        let (rebased, _) = self.src.rebase(&basis)?;

        let mut checks: Vec<Vec<(usize, usize, Vector)>> = vec![Vec::new(); n];
        for i in 0..n {
            for l in 0..n {
                let c = rebased.product(i, l).to_vec();
                let top = c.iter().rposition(|x| !f.is_zero(x)).unwrap_or(0);
                checks[i.max(l).max(top).max(fixed.saturating_sub(1))].push((i, l, c));
            }
        }

        let dst_elems = linalg::all_vectors(f, self.dst.dim())?;
        let mut by_poly: HashMap<Vector, Vec<Vector>> = HashMap::new();
        if self.injective {
            for e in &dst_elems {
                by_poly.entry(self.dst.min_poly(e)).or_default().push(e.clone());
            }
        }
        let mut candidates = vec![Vec::new(); n];
        for k in fixed..n {
            let mp = rebased.min_poly(&rebased.basis_vec(k));
            let mut cand: Vec<Vector> = if self.injective {
                by_poly.get(&mp).cloned().unwrap_or_default()
            } else {
                dst_elems.iter().filter(|e| annihilates(self.dst, &mp, e)).cloned().collect()
            };
            if let Some(flt) = &self.filter {
                cand.retain(|e| flt(&basis[k], e));
            }
            candidates[k] = cand;
        }
        Ok(Some(Plan { basis, fixed, images, checks, candidates }))
    }

    /// All maps found, as matrices in the original source coordinates.
    pub fn run(&self) -> Result<Vec<Matrix>> {
        let Some(mut plan) = self.plan()? else {
            return Ok(Vec::new());
        };
        let f = self.src.field();
        let n = self.src.dim();
        if self.injective && self.dst.dim() < n {
            return Ok(Vec::new());
        }
        let mut ech = Echelon::new();
        for img in plan.images.iter().take(plan.fixed) {
            if !ech.insert(f, img.as_ref().unwrap()) && self.injective {
                return Ok(Vec::new());
            }
        }
        if plan.fixed > 0 && !self.depth_ok(&plan, plan.fixed - 1) {
            return Ok(Vec::new());
        }
        let mut out = Vec::new();
        let p = Matrix::from_cols(f, n, &plan.basis);
        let pinv = p.inverse(f).expect("basis");
        let start = plan.fixed;
        self.dfs(&mut plan, start, &mut ech, &mut out, &pinv);
        Ok(out)
    }

    pub fn first(self) -> Result<Option<Matrix>> {
        Ok(self.limit(1).run()?.into_iter().next())
    }

    fn depth_ok(&self, plan: &Plan, depth: usize) -> bool {
        let f = self.src.field();
        plan.checks[depth].iter().all(|(i, l, c)| {
            let lhs = self.dst.mul(plan.images[*i].as_ref().unwrap(), plan.images[*l].as_ref().unwrap());
            let mut rhs = self.dst.zero_vec();
            for (k, ck) in c.iter().enumerate() {
                if !f.is_zero(ck) {
                    axpy(f, &mut rhs, ck, plan.images[k].as_ref().unwrap());
                }
            }
            lhs == rhs
        })
    }

    fn dfs(&self, plan: &mut Plan, k: usize, ech: &mut Echelon, out: &mut Vec<Matrix>, pinv: &Matrix) {
        if self.limit.is_some_and(|l| out.len() >= l) {
            return;
        }
        let f = self.src.field();
        let n = self.src.dim();
        if k == n {
            let cols: Vec<Vector> = plan.images.iter().map(|x| x.clone().unwrap()).collect();
            let m = Matrix::from_cols(f, self.dst.dim(), &cols);
            out.push(m.mul(f, pinv));
            return;
        }
        for ci in 0..plan.candidates[k].len() {
            let c = plan.candidates[k][ci].clone();
            if self.injective && !ech.insert(f, &c) {
                continue;
            }
            plan.images[k] = Some(c);
            if self.depth_ok(plan, k) {
                self.dfs(plan, k + 1, ech, out, pinv);
            }
            plan.images[k] = None;
            if self.injective {
                ech.pop();
            }
            if self.limit.is_some_and(|l| out.len() >= l) {
                return;
            }
        }
    }
}

/// Whether m(e) = 0 where b^d = sum c_i b^i defines m.
fn annihilates(alg: &Algebra, c: &[Elem], e: &[Elem]) -> bool {
    let f = alg.field();
    let mut pw = alg.unit().clone();
    let mut acc = alg.zero_vec();
    for ci in c {
        axpy(f, &mut acc, ci, &pw);
        pw = alg.mul(&pw, e);
    }
    pw == acc
}
