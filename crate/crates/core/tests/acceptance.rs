//! Acceptance run: one PASS/FAIL line per criterion. Built with
//! `harness = false` so the lines show up in plain `cargo test` output.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use extalg::algebra::{is_isomorphic, parse_element, split_elements, Algebra};
use extalg::field::Field;
use extalg::flag::{
    datum_from_flag, enumerate_flag_datums, flag_extension, flag_family_generators, paper_catalog_dim2,
    paper_catalog_dim3, supersolvable_catalog, FamilyBase,
};
use extalg::galois::{galois_group_brute, galois_group_codim1, galois_group_unified, invariants_and_galois_test};
use extalg::json::{read_json, AlgebraJson};
use extalg::linalg::{Matrix, Vector};
use extalg::oracle::{enumerate_algebras, iso_classes, EnumerationTask};
use extalg::sample::{all_units, Sampler};
use extalg::unified::{
    bicrossed_product, check_axioms, classify_special, commutative_check, crossed_product, datum_from_retraction,
    extract_crossed_datum, factorize, morphism_check, morphisms_with_v, psi_map, transport_datum, unified_product,
    unified_product_unchecked, ExtendingDatum, MorphismPair, SpecialTag,
};
use extalg::Result;

/// Criterion 6 over GF(2): the affine group k x k* has order 2 there and an
/// involution of a 3-dimensional GF(2)-space fixes at least a plane, and
/// k* x k* is trivial, so these two extensions cannot have A as fixed
/// subalgebra.
const UNATTAINABLE: [&str; 2] = ["GF(2) affine is_galois", "GF(2) torus is_galois"];

struct Verdict {
    pass: bool,
    detail: String,
    /// Failed sub-checks, by name.
    failures: Vec<String>,
}

impl Verdict {
    fn new(failures: Vec<String>, detail: String) -> Self {
        Verdict { pass: failures.is_empty(), detail, failures }
    }
}

fn gf(p: u64) -> Field {
    Field::prime(p).unwrap()
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data").join(name)
}

fn first_basis(e: &Algebra, n: usize) -> Vec<Vector> {
    (0..n).map(|i| e.basis_vec(i)).collect()
}

fn all_algebras(f: &Field, dim: usize) -> Vec<Algebra> {
    enumerate_algebras(&EnumerationTask::new(f, dim)).unwrap()
}

/// Pools of algebras with e_0 = 1, by dimension 1..=3.
struct Pools {
    field: Field,
    by_dim: Vec<Vec<Algebra>>,
}

impl Pools {
    fn new(f: &Field) -> Self {
        Pools { field: f.clone(), by_dim: (1..=3).map(|n| all_algebras(f, n)).collect() }
    }

    fn dim(&self, n: usize) -> &[Algebra] {
        &self.by_dim[n - 1]
    }
}

/// A datum satisfying the axioms over some algebra of the given dimension.
fn valid_datum(s: &mut Sampler, pool: &[Algebra], m: usize) -> ExtendingDatum {
    loop {
        let a = s.pick(pool).clone();
        if let Some(d) = s.tower_datum(&a, m, false).unwrap() {
            return d;
        }
    }
}

fn criterion1(pools: &[Pools]) -> Result<Verdict> {
    let mut failures = Vec::new();
    let mut passing = 0usize;
    let mut total = 0usize;
    for (pi, pool) in pools.iter().enumerate() {
        for n in 1..=3 {
            for m in 1..=2 {
                let mut s = Sampler::new(&pool.field, 1000 + (pi * 100 + n * 10 + m) as u64)?;
                for i in 0..1000 {
                    let a = s.pick(pool.dim(n)).clone();
                    let d = s.mixed_datum(&a, m)?;
                    let axioms = check_axioms(&d)?.all_hold();
                    let direct = unified_product_unchecked(&d).is_valid();
                    total += 1;
                    passing += axioms as usize;
                    if axioms != direct {
                        failures.push(format!("{} dim A {n} dim V {m} sample {i}", pool.field));
                    }
                }
            }
        }
    }
    Ok(Verdict::new(failures, format!("{total} datums, {passing} satisfy the axioms, 0 discrepancies expected")))
}

fn criterion2() -> Result<Verdict> {
    let mut failures = Vec::new();
    let mut counts = Vec::new();
    for p in [2u64, 3, 5] {
        let f = gf(p);
        let oracle = iso_classes(&all_algebras(&f, 2))?.representatives;
        let catalog = supersolvable_catalog(&f, 2)?;
        let named: Vec<Algebra> =
            paper_catalog_dim2(&f, None)?.into_iter().map(|e| e.algebra.expect("finite field entry")).collect();
        counts.push(format!("GF({p}) oracle {} catalog {}", oracle.len(), catalog.len()));
        if oracle.len() != 3 || catalog.len() != 3 || named.len() != 3 {
            failures.push(format!("GF({p}) class counts"));
            continue;
        }
        // k_(0,0), k_(0,1) and a quadratic field extension, in catalog order
        let expected = [Algebra::two_dim(&f, &f.zero(), &f.zero()), Algebra::two_dim(&f, &f.zero(), &f.one())];
        for ((e, got), name) in expected.iter().zip(&named).zip(["k_(0,0)", "k_(0,1)"]) {
            if is_isomorphic(e, got)?.is_none() {
                failures.push(format!("GF({p}) catalog entry {name}"));
            }
        }
        let third = &named[2];
        if all_units(third)?.len() as u64 != p * p - 1 {
            failures.push(format!("GF({p}) third normal form is not GF({})", p * p));
        }
        let targets = [expected[0].clone(), expected[1].clone(), third.clone()];
        for list in [&oracle, &catalog] {
            let mut hit = [0usize; 3];
            for r in list.iter() {
                for (t, h) in targets.iter().zip(hit.iter_mut()) {
                    if is_isomorphic(r, t)?.is_some() {
                        *h += 1;
                    }
                }
            }
            if hit != [1, 1, 1] {
                failures.push(format!("GF({p}) representatives {hit:?}"));
            }
        }
    }
    Ok(Verdict::new(failures, counts.join(", ")))
}

fn criterion3() -> Result<Verdict> {
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for (p, named) in [(2u64, 12usize), (3, 13)] {
        let f = gf(p);
        let mut task = EnumerationTask::new(&f, 3);
        task.supersolvable = true;
        let tables = enumerate_algebras(&task)?;
        let oracle = iso_classes(&tables)?.representatives;
        let catalog: Vec<Algebra> =
            paper_catalog_dim3(&f, None)?.into_iter().map(|e| e.algebra.expect("finite field entry")).collect();
        let classes = supersolvable_catalog(&f, 3)?;
        if catalog.len() != named {
            failures.push(format!("GF({p}) has {} named presentations", catalog.len()));
        }
        for (i, t) in tables.iter().enumerate() {
            let mut found = false;
            for c in &catalog {
                if is_isomorphic(t, c)?.is_some() {
                    found = true;
                    break;
                }
            }
            if !found {
                failures.push(format!("GF({p}) oracle table {i} outside the catalog"));
            }
        }
        let mut matched = vec![0usize; oracle.len()];
        for c in &classes {
            let mut hits = 0;
            for (j, r) in oracle.iter().enumerate() {
                if is_isomorphic(c, r)?.is_some() {
                    matched[j] += 1;
                    hits += 1;
                }
            }
            if hits != 1 {
                failures.push(format!("GF({p}) catalog class matched {hits} oracle classes"));
            }
        }
        if classes.len() != oracle.len() || matched.iter().any(|&h| h != 1) {
            failures.push(format!("GF({p}) class lists differ: oracle {} catalog {}", oracle.len(), classes.len()));
        }
        let cross = iso_classes(&catalog)?.representatives.len();
        detail.push(format!(
            "GF({p}): {} tables, {} oracle classes, {} catalog classes, {} presentations in {cross} iso classes",
            tables.len(),
            oracle.len(),
            classes.len(),
            catalog.len()
        ));
    }
    Ok(Verdict::new(failures, detail.join("; ")))
}

fn criterion4() -> Result<Verdict> {
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    let (f2, f3) = (gf(2), gf(3));
    let cases: [(&str, Field, Algebra, Option<FamilyBase>, usize); 6] = [
        ("k", f2.clone(), Algebra::ground(&f2), None, 4),
        ("k", f3.clone(), Algebra::ground(&f3), None, 9),
        ("k_(0,0)", f2.clone(), FamilyBase::K00.algebra(&f2), Some(FamilyBase::K00), 10),
        ("k_(0,0)", f3.clone(), FamilyBase::K00.algebra(&f3), Some(FamilyBase::K00), 33),
        ("k_(0,1)", f3.clone(), FamilyBase::K01.algebra(&f3), Some(FamilyBase::K01), 72),
        ("k_(2,0)", f3.clone(), Algebra::two_dim(&f3, &f3.from_int(2), &f3.zero()), None, 0),
    ];
    for (name, f, a, base, expected) in cases {
        let mut found = enumerate_flag_datums(&a)?;
        found.sort();
        let label = format!("F({name}) over {}", f);
        if let Some(base) = base {
            let mut fam: Vec<_> = flag_family_generators(base, &f)?.into_iter().flat_map(|g| g.datums).collect();
            fam.sort();
            fam.dedup();
            if fam != found {
                failures.push(format!("{label}: families give {}, enumeration {}", fam.len(), found.len()));
            }
        }
        if found.len() != expected {
            failures.push(format!("{label} = {} (expected {expected})", found.len()));
        }
        detail.push(format!("{label} = {}", found.len()));
    }
    Ok(Verdict::new(failures, detail.join(", ")))
}

fn criterion5() -> Result<Verdict> {
    let mut failures = Vec::new();
    let mut total = 0;
    for p in [2u64, 3] {
        let f = gf(p);
        let bases = [
            ("k", Algebra::ground(&f)),
            ("k_(0,0)", FamilyBase::K00.algebra(&f)),
            ("k_(0,1)", FamilyBase::K01.algebra(&f)),
        ];
        for (name, a) in bases {
            for (i, fd) in enumerate_flag_datums(&a)?.iter().enumerate() {
                total += 1;
                let b = flag_extension(&a, fd)?;
                let brute = galois_group_brute(&b, &first_basis(&b, a.dim()))?;
                let pairs = galois_group_unified(&datum_from_flag(&a, fd))?;
                let codim1 = galois_group_codim1(&a, fd)?;
                let orders = (brute.order(), pairs.order(), codim1.order());
                if orders.0 != orders.1 || orders.0 != orders.2 {
                    failures.push(format!("GF({p}) {name} datum {i}: orders {orders:?}"));
                } else if brute.actions() != pairs.actions() || brute.actions() != codim1.actions() {
                    failures.push(format!("GF({p}) {name} datum {i}: actions differ"));
                }
            }
        }
    }
    Ok(Verdict::new(failures, format!("{total} flag datums")))
}

fn criterion6() -> Result<Verdict> {
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for p in [2u64, 3] {
        let f = gf(p);
        let gl2 = (p * p - 1) * (p * p - p);
        let cases = [
            ("dual", "gal_dual.json", "1, x", p),
            ("affine", "gal_affine.json", "1", p * (p - 1)),
            ("torus", "gal_torus.json", "[1,0,0,0], [0,1,0,0]", (p - 1) * (p - 1)),
            ("gl2", "gal_gl2.json", "[1,0,0,0], [0,1,0,0]", gl2),
        ];
        for (name, file, sub, order) in cases {
            let b = read_json::<AlgebraJson>(&data(file))?.to_algebra(Some(&f))?;
            let a_basis: Vec<Vector> =
                split_elements(sub).iter().map(|s| parse_element(&b, s)).collect::<Result<_>>()?;
            let g = galois_group_brute(&b, &a_basis)?;
            let (_, galois) = invariants_and_galois_test(&b, &a_basis)?;
            if g.order() as u64 != order {
                failures.push(format!("GF({p}) {name} order"));
            }
            if !galois {
                failures.push(format!("GF({p}) {name} is_galois"));
            }
            detail.push(format!("GF({p}) {name}: |Gal| = {} ({}), Galois {galois}", g.order(), g.describe()));
        }
    }
    Ok(Verdict::new(failures, detail.join("; ")))
}

/// Random change of basis of E keeping the unit as first vector.
fn rebase_randomly(s: &mut Sampler, e: &Algebra) -> (Algebra, Matrix) {
    let f = s.field().clone();
    loop {
        let mut cols = vec![e.unit().clone()];
        for _ in 1..e.dim() {
            cols.push(s.vector(e.dim()));
        }
        if extalg::linalg::rank_of(&f, &cols) == e.dim() {
            return e.rebase(&cols).unwrap();
        }
    }
}

fn criterion7(pools: &[Pools]) -> Result<Verdict> {
    let mut failures = Vec::new();
    let (mut morph_true, mut singular) = (0, 0);
    for (pi, pool) in pools.iter().enumerate() {
        let f = pool.field.clone();
        let mut s = Sampler::new(&f, 7000 + pi as u64)?;
        for i in 0..500 {
            let n = 1 + s.index(3);
            let m = 1 + s.index(2);
            let d = valid_datum(&mut s, pool.dim(n), m);
            let e = unified_product(&d)?;
            let tag = format!("{} case {i}", f);

            // reconstruction from a random retraction, in random coordinates
            let (e2, change) = rebase_randomly(&mut s, &e);
            let back = change.inverse(&f).expect("basis change");
            let a_basis: Vec<Vector> = first_basis(&e, n).iter().map(|v| back.apply(&f, v)).collect();
            let mut p = Matrix::zeros(&f, n, n + m);
            for r in 0..n {
                p.set(r, r, f.one());
                for c in n..n + m {
                    p.set(r, c, s.elem());
                }
            }
            let (d2, phi) = datum_from_retraction(&e2, &a_basis, &p.mul(&f, &change))?;
            let rebuilt = unified_product(&d2)?;
            if !phi.is_invertible(&f) || !rebuilt.is_hom_to(&e2, &phi) {
                failures.push(format!("{tag}: retraction reconstruction"));
            }

            // morphism conditions against multiplicativity of psi
            let (target, pair) = match s.index(3) {
                0 => {
                    let pair = s.morphism_pair(n, m, true);
                    (transport_datum(&d, &pair)?, pair)
                }
                1 => {
                    let pair = s.morphism_pair(n, m, true);
                    let target = transport_datum(&d, &pair)?;
                    let mut bent = pair.clone();
                    let (r, c) = (s.index(n), s.index(m));
                    bent.r.set(r, c, f.add(bent.r.get(r, c), &s.nonzero()));
                    (target, bent)
                }
                _ => {
                    let other = s.tower_datum(&d.a, m, false)?.unwrap_or_else(|| d.clone());
                    let v = s.matrix(m, m);
                    let found = morphisms_with_v(&d, &other, &v)?;
                    let pair =
                        if found.is_empty() { MorphismPair { r: s.matrix(n, m), v } } else { s.pick(&found).clone() };
                    (other, pair)
                }
            };
            let checked = morphism_check(&d, &target, &pair)?;
            let direct = e.is_hom_to(&unified_product(&target)?, &psi_map(&d, &pair));
            morph_true += checked as usize;
            if checked != direct {
                failures.push(format!("{tag}: morphism_check {checked}, direct {direct}"));
            }

            // psi bijective iff v bijective, on endomorphisms and raw pairs
            let v = if s.chance(0.5) { s.invertible(m) } else { s.matrix(m, m) };
            let mut pairs = morphisms_with_v(&d, &d, &v)?;
            pairs.push(MorphismPair { r: s.matrix(n, m), v: v.clone() });
            for pair in &pairs {
                singular += !v.is_invertible(&f) as usize;
                if psi_map(&d, pair).is_invertible(&f) != pair.v.is_invertible(&f) {
                    failures.push(format!("{tag}: psi bijectivity"));
                }
            }
        }
    }
    Ok(Verdict::new(
        failures,
        format!("1000 cases per suite over GF(2) and GF(3), {morph_true} morphisms, {singular} pairs with singular v"),
    ))
}

/// Algebras of dimension <= 4 to factorize, in random coordinates.
fn factorization_pool(pool: &Pools) -> Vec<Algebra> {
    let f = &pool.field;
    let mut out: Vec<Algebra> = pool.dim(2).to_vec();
    out.extend(supersolvable_catalog(f, 3).unwrap());
    out.extend(iso_classes(pool.dim(3)).unwrap().representatives);
    let two: Vec<Algebra> = iso_classes(pool.dim(2)).unwrap().representatives;
    for x in &two {
        for y in &two {
            out.push(x.direct_product(y));
            out.push(x.tensor(y));
        }
    }
    out.push(Algebra::matrix_algebra(f, 2));
    out
}

fn criterion8(pools: &[Pools]) -> Result<Verdict> {
    let mut failures = Vec::new();
    let mut detail = Vec::new();
    for (pi, pool) in pools.iter().enumerate() {
        let f = pool.field.clone();
        let algs = factorization_pool(pool);
        let mut s = Sampler::new(&f, 8000 + pi as u64)?;
        let (mut done, mut attempts) = (0, 0);
        while done < 100 && attempts < 20_000 {
            attempts += 1;
            let base = s.pick(&algs).clone();
            let (e, _) = rebase_randomly(&mut s, &base);
            let gens = 1 + s.index(2);
            let a_basis = s.subalgebra(&e, gens);
            let Some(v_basis) = s.closed_complement(&e, &a_basis, 40) else { continue };
            done += 1;
            let mp = factorize(&e, &a_basis, &v_basis)?;
            let all: Vec<Vector> = a_basis.iter().chain(&v_basis).cloned().collect();
            let (expected, _) = e.rebase(&all)?;
            match bicrossed_product(&mp) {
                Ok(b) if b == expected => {}
                _ => failures.push(format!("{} factorization {done}", f)),
            }
        }
        if done < 100 {
            failures.push(format!("{} only {done} factorizations found", f));
        }

        let bases: Vec<Algebra> =
            pool.dim(1).iter().chain(pool.dim(2)).cloned().chain(supersolvable_catalog(&f, 3)?).collect();
        let mut crossed = 0;
        for _ in 0..400 {
            if crossed == 60 {
                break;
            }
            let a = s.pick(&bases).clone();
            let order = 2 + s.index(2);
            let Some(input) = s.crossed_input(&a, order)? else { continue };
            crossed += 1;
            let e = crossed_product(&input)?;
            let (d, _) = extract_crossed_datum(&input)?;
            if !e.is_valid() || !classify_special(&d)?.contains(&SpecialTag::LeftSplit) {
                failures.push(format!("{} crossed product {crossed} not left-split", f));
            }
        }
        detail.push(format!("{}: {done} factorizations, {crossed} crossed products", f));
    }
    Ok(Verdict::new(failures, detail.join("; ")))
}

fn criterion9() -> Result<Verdict> {
    let f = gf(3);
    let bases = [
        Algebra::ground(&f),
        Algebra::two_dim(&f, &f.zero(), &f.zero()),
        Algebra::two_dim(&f, &f.zero(), &f.one()),
        Algebra::two_dim(&f, &f.from_int(2), &f.zero()),
    ];
    let mut s = Sampler::new(&f, 9000)?;
    let mut failures = Vec::new();
    let mut passing = 0;
    for i in 0..500 {
        let a = s.pick(&bases).clone();
        let m = 1 + s.index(2);
        let c = s.commutative_datum(&a, m)?;
        let reduced = commutative_check(&c)?.all_hold();
        let expanded = check_axioms(&c.expand())?.all_hold();
        let product = unified_product_unchecked(&c.expand());
        let commutative_algebra = product.is_valid() && product.is_commutative();
        passing += reduced as usize;
        if reduced != expanded || reduced != commutative_algebra {
            failures.push(format!("sample {i}: reduced {reduced}, expanded {expanded}, product {commutative_algebra}"));
        }
    }
    Ok(Verdict::new(failures, format!("500 datums, {passing} pass")))
}

fn main() -> ExitCode {
    let pools: Vec<Pools> = [2u64, 3].iter().map(|&p| Pools::new(&gf(p))).collect();
    type Run<'a> = Box<dyn Fn() -> Result<Verdict> + 'a>;
    let runs: Vec<(usize, Option<u64>, Run)> = vec![
        (1, Some(60), Box::new(|| criterion1(&pools))),
        (2, Some(5), Box::new(criterion2)),
        (3, Some(120), Box::new(criterion3)),
        (4, Some(30), Box::new(criterion4)),
        (5, Some(120), Box::new(criterion5)),
        (6, None, Box::new(criterion6)),
        (7, None, Box::new(|| criterion7(&pools))),
        (8, None, Box::new(|| criterion8(&pools))),
        (9, None, Box::new(criterion9)),
    ];
    let mut ok = true;
    let mut passed = 0;
    for (n, limit, run) in runs {
        let t = Instant::now();
        let mut v = run().unwrap_or_else(|e| Verdict::new(vec![format!("error: {e}")], String::new()));
        let elapsed = t.elapsed();
        if let Some(secs) = limit {
            if elapsed > Duration::from_secs(secs) {
                v.pass = false;
                v.failures.push(format!("took {elapsed:.1?}, limit {secs} s"));
            }
        }
        let limit_text = limit.map(|s| format!(", limit {s} s")).unwrap_or_default();
        println!("{} criterion {n}: {} [{elapsed:.2?}{limit_text}]", if v.pass { "PASS" } else { "FAIL" }, v.detail);
        for f in &v.failures {
            println!("    failed: {f}");
        }
        if v.pass {
            passed += 1;
        } else if n == 6 && v.failures.iter().map(String::as_str).eq(UNATTAINABLE) {
            println!("    known: these GF(2) sub-cases cannot hold, see README");
        } else {
            ok = false;
        }
    }
    println!("{passed}/9 criteria pass");
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
