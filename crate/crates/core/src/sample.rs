//! Seeded random generators for datums, morphisms, factorizations and
//! crossed products over finite fields.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{automorphisms_fixing, characters, Algebra};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::flag::{
    enumerate_flag_datums, flag_extension, flag_map_space, flag_rest_space, flag_skeleton, with_maps, with_rest,
    FlagDatum,
};
use crate::linalg::{self, unit_vec, AffineSpace, Matrix, Vector};
use crate::unified::{
    datum_from_subalgebra, transport_datum, Bilinear, CommutativeDatum, CrossedProductInput, ExtendingDatum,
    GroupTable, MorphismPair,
};

pub struct Sampler {
    field: Field,
    elems: Vec<Elem>,
    rng: ChaCha8Rng,
    flags: HashMap<(Vec<Elem>, Vector), Vec<FlagDatum>>,
}

impl Sampler {
    pub fn new(f: &Field, seed: u64) -> Result<Self> {
        Ok(Sampler {
            field: f.clone(),
            elems: f.elements()?,
            rng: ChaCha8Rng::seed_from_u64(seed),
            flags: HashMap::new(),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.rng.gen_bool(p)
    }

    pub fn index(&mut self, n: usize) -> usize {
        self.rng.gen_range(0..n)
    }

    pub fn pick<'a, T>(&mut self, xs: &'a [T]) -> &'a T {
        &xs[self.index(xs.len())]
    }

    pub fn elem(&mut self) -> Elem {
        let i = self.index(self.elems.len());
        self.elems[i].clone()
    }

    pub fn nonzero(&mut self) -> Elem {
        loop {
            let x = self.elem();
            if !self.field.is_zero(&x) {
                return x;
            }
        }
    }

    pub fn vector(&mut self, n: usize) -> Vector {
        (0..n).map(|_| self.elem()).collect()
    }

    pub fn matrix(&mut self, rows: usize, cols: usize) -> Matrix {
        let cs: Vec<Vector> = (0..cols).map(|_| self.vector(rows)).collect();
        Matrix::from_cols(&self.field, rows, &cs)
    }

    pub fn invertible(&mut self, n: usize) -> Matrix {
        loop {
            let m = self.matrix(n, n);
            if m.is_invertible(&self.field) {
                return m;
            }
        }
    }

    pub fn bilinear(&mut self, left: usize, right: usize, out: usize) -> Bilinear {
        Bilinear::from_fn(left, right, out, |_, _| self.vector(out))
    }

    fn symmetric(&mut self, m: usize, out: usize) -> Bilinear {
        let mut b = Bilinear::zero(&self.field, m, m, out);
        for i in 0..m {
            for j in i..m {
                let v = self.vector(out);
                b.set(i, j, &v);
                b.set(j, i, &v);
            }
        }
        b
    }

    fn flags_of(&mut self, a: &Algebra) -> Result<&[FlagDatum]> {
        let key = (a.flat_table().to_vec(), a.unit().clone());
        if !self.flags.contains_key(&key) {
            let fds = enumerate_flag_datums(a)?;
            self.flags.insert(key.clone(), fds);
        }
        Ok(&self.flags[&key])
    }

    /// A normalized datum with every free entry uniform. The unit of A must
    /// be e_0.
    pub fn random_datum(&mut self, a: &Algebra, m: usize) -> ExtendingDatum {
        let f = self.field.clone();
        let n = a.dim();
        assert_eq!(a.unit(), &unit_vec(&f, n, 0), "sampler needs e_0 = 1");
        let mut d = ExtendingDatum {
            a: a.clone(),
            v_dim: m,
            lact: self.bilinear(m, n, m),
            ract: self.bilinear(m, n, n),
            lhar: self.bilinear(n, m, n),
            rhar: self.bilinear(n, m, m),
            cocycle: self.bilinear(m, m, n),
            vmult: self.bilinear(m, m, m),
        };
        normalize(&f, &mut d);
        d
    }

    fn point(&mut self, space: &AffineSpace) -> Vector {
        let f = self.field.clone();
        let mut p = space.particular.clone();
        for d in &space.directions {
            let c = self.elem();
            linalg::axpy(&f, &mut p, &c, d);
        }
        p
    }

    /// One flag datum of E from a random character pair and random points of
    /// the two solution spaces. Not uniform over all flag datums, but avoids
    /// enumerating them. None when every attempt hits an empty space.
    pub fn random_flag(&mut self, e: &Algebra) -> Result<Option<FlagDatum>> {
        let chars = characters(e)?;
        if chars.is_empty() {
            return Ok(None);
        }
        for _ in 0..16 {
            let big_lambda = self.pick(&chars).clone();
            let lambda = self.pick(&chars).clone();
            let Some(maps) = flag_map_space(e, &big_lambda, &lambda) else { continue };
            let fd0 = with_maps(e, &flag_skeleton(e, &big_lambda, &lambda), &self.point(&maps));
            let Some(rest) = flag_rest_space(e, &fd0) else { continue };
            return Ok(Some(with_rest(&fd0, &self.point(&rest))));
        }
        Ok(None)
    }

    /// A datum that passes the axioms: m successive random flag extensions
    /// of A, read back relative to A and moved by a random isomorphism.
    /// Commutative towers pick among all commutative extensions. None when
    /// some stage has no suitable flag datum.
    pub fn tower_datum(&mut self, a: &Algebra, m: usize, commutative: bool) -> Result<Option<ExtendingDatum>> {
        let n = a.dim();
        let mut e = a.clone();
        for _ in 0..m {
            if commutative {
                let fds: Vec<FlagDatum> = self.flags_of(&e)?.to_vec();
                let mut options: Vec<Algebra> = Vec::new();
                for fd in &fds {
                    let x = flag_extension(&e, fd)?;
                    if x.is_commutative() {
                        options.push(x);
                    }
                }
                if options.is_empty() {
                    return Ok(None);
                }
                e = self.pick(&options).clone();
            } else {
                let Some(fd) = self.random_flag(&e)? else { return Ok(None) };
                e = flag_extension(&e, &fd)?;
            }
        }
        let a_basis: Vec<Vector> = (0..n).map(|i| e.basis_vec(i)).collect();
        let (d, _) = datum_from_subalgebra(&e, &a_basis)?;
        let pair = self.morphism_pair(n, m, true);
        Ok(Some(transport_datum(&d, &pair)?))
    }

    /// Changes one entry of one map, leaving the normalization intact.
    pub fn perturb(&mut self, d: &ExtendingDatum) -> ExtendingDatum {
        let f = self.field.clone();
        let mut out = d.clone();
        // with A = k every action slot is fixed by normalization
        let which = if d.a.dim() == 1 { 4 + self.index(2) } else { self.index(6) };
        let map = match which {
            0 => &mut out.lact,
            1 => &mut out.ract,
            2 => &mut out.lhar,
            3 => &mut out.rhar,
            4 => &mut out.cocycle,
            _ => &mut out.vmult,
        };
        let (left, right) = (map.left, map.right);
        let (i, j) = match which {
            0 | 1 => (self.rng.gen_range(0..left), self.rng.gen_range(1..right)),
            2 | 3 => (self.rng.gen_range(1..left), self.rng.gen_range(0..right)),
            _ => (self.rng.gen_range(0..left), self.rng.gen_range(0..right)),
        };
        let mut v = map.at(i, j).to_vec();
        let k = self.rng.gen_range(0..v.len());
        let delta = self.nonzero();
        v[k] = f.add(&v[k], &delta);
        map.set(i, j, &v);
        out
    }

    /// One third valid towers, one third perturbed towers, one third
    /// uniform datums.
    pub fn mixed_datum(&mut self, a: &Algebra, m: usize) -> Result<ExtendingDatum> {
        let roll = self.index(3);
        if roll < 2 {
            if let Some(d) = self.tower_datum(a, m, false)? {
                return Ok(if roll == 0 { d } else { self.perturb(&d) });
            }
        }
        Ok(self.random_datum(a, m))
    }

    pub fn morphism_pair(&mut self, n: usize, m: usize, invertible: bool) -> MorphismPair {
        let r = self.matrix(n, m);
        let v = if invertible { self.invertible(m) } else { self.matrix(m, m) };
        MorphismPair { r, v }
    }

    /// A commutative datum over a commutative A with e_0 = 1: valid towers,
    /// perturbed towers and uniform symmetric datums in equal shares.
    pub fn commutative_datum(&mut self, a: &Algebra, m: usize) -> Result<CommutativeDatum> {
        let n = a.dim();
        let roll = self.index(3);
        if roll < 2 {
            if let Some(d) = self.tower_datum(a, m, true)? {
                let mut c = CommutativeDatum {
                    a: d.a,
                    v_dim: m,
                    lact: d.lact,
                    ract: d.ract,
                    cocycle: d.cocycle,
                    vmult: d.vmult,
                };
                if roll == 1 {
                    self.perturb_commutative(&mut c);
                }
                return Ok(c);
            }
        }
        let d = self.random_datum(a, m);
        Ok(CommutativeDatum {
            a: d.a,
            v_dim: m,
            lact: d.lact,
            ract: d.ract,
            cocycle: self.symmetric(m, n),
            vmult: self.symmetric(m, m),
        })
    }

    fn perturb_commutative(&mut self, c: &mut CommutativeDatum) {
        let f = self.field.clone();
        let (n, m) = (c.a.dim(), c.v_dim);
        let choice = self.index(4);
        let delta = self.nonzero();
        let bump = |v: &mut Vector, k: usize| v[k] = f.add(&v[k], &delta);
        match choice {
            0 | 1 if n > 1 => {
                let map = if choice == 0 { &mut c.lact } else { &mut c.ract };
                let (x, i) = (self.rng.gen_range(0..m), self.rng.gen_range(1..n));
                let mut v = map.at(x, i).to_vec();
                let k = self.rng.gen_range(0..v.len());
                bump(&mut v, k);
                map.set(x, i, &v);
            }
            _ => {
                let map = if self.rng.gen_bool(0.5) { &mut c.cocycle } else { &mut c.vmult };
                let (x, y) = (self.rng.gen_range(0..m), self.rng.gen_range(0..m));
                let mut v = map.at(x, y).to_vec();
                let k = self.rng.gen_range(0..v.len());
                bump(&mut v, k);
                map.set(x, y, &v);
                map.set(y, x, &v);
            }
        }
    }

    /// A random unital subalgebra of E: generated by the unit and up to
    /// `gens` random elements.
    pub fn subalgebra(&mut self, e: &Algebra, gens: usize) -> Vec<Vector> {
        let mut g = vec![e.unit().clone()];
        for _ in 0..gens {
            g.push(self.vector(e.dim()));
        }
        e.subalgebra_generated(&g)
    }

    /// Tries random complements of span(a_basis) for one closed under
    /// multiplication.
    pub fn closed_complement(&mut self, e: &Algebra, a_basis: &[Vector], tries: usize) -> Option<Vec<Vector>> {
        let f = self.field.clone();
        let (n, m) = (a_basis.len(), e.dim() - a_basis.len());
        if m == 0 {
            return None;
        }
        for _ in 0..tries {
            let v: Vec<Vector> = (0..m).map(|_| self.vector(e.dim())).collect();
            let mut all = a_basis.to_vec();
            all.extend(v.iter().cloned());
            if linalg::rank_of(&f, &all) == n + m && e.is_closed(&v) {
                return Some(v);
            }
        }
        None
    }

    /// A crossed product of A by a cyclic group of order `order`: a random
    /// automorphism of order dividing it, twisted by random units c_g
    /// (action c_g σ_g(b) c_g^-1 and cocycle c_g σ_g(c_h) c_gh^-1).
    pub fn crossed_input(&mut self, a: &Algebra, order: usize) -> Result<Option<CrossedProductInput>> {
        let f = self.field.clone();
        let n = a.dim();
        let auts = automorphisms_fixing(a, &[a.unit().clone()])?;
        let id = Matrix::identity(&f, n);
        let good: Vec<Matrix> = auts
            .into_iter()
            .filter(|s| {
                let mut p = id.clone();
                for _ in 0..order {
                    p = p.mul(&f, s);
                }
                p == id
            })
            .collect();
        if good.is_empty() {
            return Ok(None);
        }
        let sigma = self.pick(&good).clone();
        let group = GroupTable::cyclic(order);
        let mut powers = vec![id.clone()];
        for g in 1..order {
            powers.push(sigma.mul(&f, &powers[g - 1]));
        }
        let units: Vec<Vector> = all_units(a)?;
        let mut c: Vec<Vector> = vec![a.unit().clone()];
        for _ in 1..order {
            c.push(self.pick(&units).clone());
        }
        let inv = |x: &Vector| -> Vector {
            let lm = a.left_mult(x).inverse(&f).expect("unit");
            lm.apply(&f, a.unit())
        };
        let action: Vec<Matrix> = (0..order)
            .map(|g| {
                let cols: Vec<Vector> = (0..n)
                    .map(|i| a.mul(&a.mul(&c[g], &powers[g].apply(&f, &unit_vec(&f, n, i))), &inv(&c[g])))
                    .collect();
                Matrix::from_cols(&f, n, &cols)
            })
            .collect();
        let cocycle: Vec<Vec<Vector>> = (0..order)
            .map(|g| {
                (0..order)
                    .map(|h| {
                        let gh = group.mul(g, h);
                        a.mul(&a.mul(&c[g], &powers[g].apply(&f, &c[h])), &inv(&c[gh]))
                    })
                    .collect()
            })
            .collect();
        Ok(Some(CrossedProductInput { a: a.clone(), group, action, cocycle }))
    }
}

/// Invertible elements of A.
pub fn all_units(a: &Algebra) -> Result<Vec<Vector>> {
    let f = a.field();
    Ok(linalg::all_vectors(f, a.dim())?.into_iter().filter(|v| a.left_mult(v).is_invertible(f)).collect())
}

/// Forces x◁1 = x, x▷1 = 0, 1↼x = 0 and 1⇀x = x for 1 = e_0.
fn normalize(f: &Field, d: &mut ExtendingDatum) {
    let (n, m) = (d.a.dim(), d.v_dim);
    for x in 0..m {
        d.lact.set(x, 0, &unit_vec(f, m, x));
        d.ract.set(x, 0, &linalg::zero_vec(f, n));
        d.lhar.set(0, x, &linalg::zero_vec(f, n));
        d.rhar.set(0, x, &unit_vec(f, m, x));
    }
}

/// Checks that `e` has e_0 as its unit.
pub fn require_unit_first(a: &Algebra) -> Result<()> {
    if a.unit() != &unit_vec(a.field(), a.dim(), 0) {
        return Err(Error::Usage("the base algebra must have e_0 as its unit".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::unified::{check_axioms, crossed_product};

    #[test]
    fn towers_pass_and_are_normalized() {
        let f = Field::prime(3).unwrap();
        let a = Algebra::two_dim(&f, &f.zero(), &f.one());
        let mut s = Sampler::new(&f, 7).unwrap();
        for _ in 0..20 {
            let d = s.tower_datum(&a, 2, false).unwrap().unwrap();
            assert!(check_axioms(&d).unwrap().all_hold());
            let mut n = d.clone();
            normalize(&f, &mut n);
            assert_eq!(n, d);
        }
    }

    #[test]
    fn random_flags_are_flag_datums() {
        let f = Field::prime(2).unwrap();
        let a = Algebra::matrix_algebra(&f, 2);
        let b = Algebra::two_dim(&f, &f.zero(), &f.zero()).tensor(&Algebra::two_dim(&f, &f.zero(), &f.one()));
        let mut s = Sampler::new(&f, 5).unwrap();
        // M2(k) has no characters
        assert!(s.random_flag(&a).unwrap().is_none());
        for _ in 0..20 {
            let fd = s.random_flag(&b).unwrap().unwrap();
            assert!(crate::flag::flag_check(&b, &fd).unwrap().all_hold());
        }
    }

    #[test]
    fn same_seed_same_stream() {
        let f = Field::prime(2).unwrap();
        let a = Algebra::two_dim(&f, &f.zero(), &f.zero());
        let mut s1 = Sampler::new(&f, 11).unwrap();
        let mut s2 = Sampler::new(&f, 11).unwrap();
        for _ in 0..10 {
            assert_eq!(s1.mixed_datum(&a, 2).unwrap(), s2.mixed_datum(&a, 2).unwrap());
        }
    }

    #[test]
    fn twisted_crossed_products_are_valid() {
        let f = Field::prime(3).unwrap();
        let a = Algebra::two_dim(&f, &f.zero(), &f.one());
        let mut s = Sampler::new(&f, 3).unwrap();
        for _ in 0..10 {
            let input = s.crossed_input(&a, 2).unwrap().unwrap();
            assert!(crossed_product(&input).unwrap().is_valid());
        }
    }
}
