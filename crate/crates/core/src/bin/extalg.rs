use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use extalg::algebra::{format_presentation, is_isomorphic, parse_element, split_elements, Algebra};
use extalg::flag::{
    classify_codim1, enumerate_flag_datums, flag_check, flag_from_datum, paper_catalog_dim2, paper_catalog_dim3,
    supersolvable_catalog, EquivMode,
};
use extalg::galois::{
    galois_group_brute, galois_group_codim1, galois_group_unified, invariants_and_galois_test, FiniteGroup,
};
use extalg::json::*;
use extalg::oracle::{
    brute_extensions_codim1_with_budget, codim1_candidate_count, enumerate_algebras, iso_classes, EnumerationTask,
    DEFAULT_BUDGET,
};
use extalg::sample::{require_unit_first, Sampler};
use extalg::unified::{
    bicrossed_product, check_axioms, classify_special, crossed_product, datum_from_subalgebra, factorize,
    matched_pair_check, unified_product, unified_product_unchecked,
};
use extalg::{Error, Field, Result};

#[derive(Parser)]
#[command(name = "extalg", version, about = "Unified products, flag datums and Galois groups of small algebras")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Field for the run, e.g. GF(2), GF(9), "GF(4, t^2+t+1)", Q, GF(2)(t).
    /// Overrides the field named in input files.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Worker threads; defaults to all cores.
    #[arg(long, env = "EXTALG_THREADS", global = true)]
    threads: Option<usize>,
    /// Seed for sampled checks.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ProductKind {
    Unified,
    Bicrossed,
    Crossed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Brute,
    Unified,
    Codim1,
    All,
}

fn parse_mode(s: &str) -> std::result::Result<EquivMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra, extending datum, flag datum or matched pair.
    #[command(group(ArgGroup::new("what").required(true).args(["algebra", "datum", "flag", "matched_pair", "sample"])))]
    Verify {
        #[arg(long)]
        algebra: Option<PathBuf>,
        #[arg(long)]
        datum: Option<PathBuf>,
        /// Flag datum file; needs --base.
        #[arg(long, requires = "base")]
        flag: Option<PathBuf>,
        #[arg(long)]
        matched_pair: Option<PathBuf>,
        /// Compare the axiom check with direct associativity on this many
        /// seeded datums over --base; needs --v-dim.
        #[arg(long, requires_all = ["base", "v_dim"])]
        sample: Option<usize>,
        #[arg(long)]
        base: Option<PathBuf>,
        #[arg(long)]
        v_dim: Option<usize>,
    },
    /// Build a unified, bicrossed or crossed product.
    Product {
        #[arg(long, value_enum)]
        kind: ProductKind,
        #[arg(long)]
        input: PathBuf,
    },
    /// Extract the matched pair of a factorization E = A + V.
    Factorize {
        #[arg(long)]
        input: PathBuf,
    },
    /// List every flag datum of an algebra.
    FlagEnum {
        #[arg(long)]
        base: PathBuf,
    },
    /// Classify extensions of an algebra.
    Classify {
        /// Codimension-1 extensions (the only kind available).
        #[arg(long)]
        codim1: bool,
        #[arg(long)]
        base: PathBuf,
        #[arg(long, value_parser = parse_mode, default_value = "equivalent")]
        mode: EquivMode,
    },
    /// Supersolvable algebras of a dimension up to isomorphism.
    Supersolvable {
        #[arg(long)]
        dim: usize,
    },
    /// Named presentations of the 2- and 3-dimensional supersolvable algebras.
    Catalog {
        #[arg(long)]
        dim: usize,
        /// Bound on the listed S and T representatives for infinite fields.
        #[arg(long)]
        bound: Option<usize>,
        /// Compare with the exhaustive enumeration.
        #[arg(long)]
        check: bool,
    },
    /// Galois group of B over a subalgebra A.
    Galois {
        #[arg(long)]
        algebra: PathBuf,
        /// Spanning elements of A, e.g. "1,x" or "[1,0,0],[0,1,0]".
        #[arg(long)]
        sub: String,
        #[arg(long, value_enum, default_value_t = Method::All)]
        method: Method,
    },
    /// Exhaustive enumeration of algebras or of codimension-1 extensions.
    Oracle {
        #[arg(long, required_unless_present = "extensions_of")]
        dim: Option<usize>,
        #[arg(long)]
        commutative: bool,
        #[arg(long)]
        supersolvable: bool,
        /// Keep algebras containing this one.
        #[arg(long)]
        contains: Option<PathBuf>,
        /// Enumerate the extensions A ⊂ E with dim E = dim A + 1 instead.
        #[arg(long, conflicts_with = "dim")]
        extensions_of: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u128,
    },
}

struct Outcome {
    ok: bool,
    json: Value,
    human: String,
}

impl Outcome {
    fn new(ok: bool, json: impl Serialize, human: String) -> Self {
        Outcome { ok, json: serde_json::to_value(json).expect("serializable report"), human }
    }
}

struct Ctx {
    field: Option<Field>,
    seed: u64,
}

impl Ctx {
    fn field(&self) -> Result<&Field> {
        self.field.as_ref().ok_or_else(|| Error::Usage("--field is required for this command".into()))
    }

    fn algebra(&self, path: &Path) -> Result<Algebra> {
        let a: AlgebraJson = read_json(path)?;
        a.to_algebra(self.field.as_ref())
    }
}

fn ok_word(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn describe_algebra(a: &Algebra) -> String {
    match format_presentation(a) {
        Some(p) if p.is_empty() => "k".into(),
        Some(p) => p,
        None => format!("dim {} algebra (unit not e0)", a.dim()),
    }
}

fn report_human(r: &ReportJson) -> String {
    let mut s = String::new();
    for st in &r.statuses {
        s.push_str(&format!("  {:<8} {}", st.name, if st.holds { "ok" } else { "fails" }));
        if let Some(w) = &st.witness {
            s.push_str(&format!("  ({w})"));
        }
        s.push('\n');
    }
    let failing: Vec<&str> = r.statuses.iter().filter(|s| !s.holds).map(|s| s.name.as_str()).collect();
    if failing.is_empty() {
        s.push_str("all conditions hold");
    } else {
        s.push_str(&format!("failing: {}", failing.join(", ")));
    }
    s
}

fn verify(
    ctx: &Ctx,
    algebra: Option<PathBuf>,
    datum: Option<PathBuf>,
    matched_pair: Option<PathBuf>,
    sample: Option<(usize, PathBuf, usize)>,
) -> Result<Outcome> {
    if let Some(p) = algebra {
        let a = ctx.algebra(&p)?;
        let v = a.validate();
        let ok = v.is_valid();
        let human = if ok {
            format!("valid unital associative algebra of dimension {}", a.dim())
        } else {
            format!(
                "invalid: {} associativity failures (first {:?}), {} unit failures",
                v.associativity_failures.len(),
                v.associativity_failures.first(),
                v.unit_failures.len()
            )
        };
        let json = json!({
            "ok": ok,
            "associativity_failures": v.associativity_failures,
            "unit_failures": v.unit_failures,
        });
        return Ok(Outcome::new(ok, json, human));
    }
    if let Some(p) = datum {
        let d: DatumJson = read_json(&p)?;
        let d = d.to_datum(ctx.field.as_ref())?;
        let r = ReportJson::from_report(&check_axioms(&d)?);
        return Ok(Outcome::new(r.all_hold, &r, report_human(&r)));
    }
    if let Some(p) = matched_pair {
        let mp: MatchedPairJson = read_json(&p)?;
        let r = ReportJson::from_report(&matched_pair_check(&mp.to_pair(ctx.field.as_ref())?)?);
        return Ok(Outcome::new(r.all_hold, &r, report_human(&r)));
    }
    let (count, base, m) = sample.expect("clap requires one input");
    let a = ctx.algebra(&base)?;
    require_unit_first(&a)?;
    let mut s = Sampler::new(a.field(), ctx.seed)?;
    let (mut passing, mut discrepancies) = (0usize, Vec::new());
    for i in 0..count {
        let d = s.mixed_datum(&a, m)?;
        let axioms = check_axioms(&d)?.all_hold();
        let direct = unified_product_unchecked(&d).is_valid();
        passing += axioms as usize;
        if axioms != direct {
            discrepancies.push(i);
        }
    }
    let ok = discrepancies.is_empty();
    let human = format!(
        "{count} datums (seed {}): {passing} pass the axioms, {} discrepancies with direct associativity: {}",
        ctx.seed,
        discrepancies.len(),
        ok_word(ok)
    );
    let json =
        json!({"ok": ok, "samples": count, "seed": ctx.seed, "passing": passing, "discrepancies": discrepancies});
    Ok(Outcome::new(ok, json, human))
}

fn verify_flag(ctx: &Ctx, flag: &Path, base: &Path) -> Result<Outcome> {
    let a = ctx.algebra(base)?;
    let fd: FlagDatumJson = read_json(flag)?;
    let fd = fd.to_datum(&a)?;
    let r = ReportJson::from_report(&flag_check(&a, &fd)?);
    Ok(Outcome::new(r.all_hold, &r, report_human(&r)))
}

fn algebra_outcome(e: &Algebra, extra: Value) -> Outcome {
    let mut json = serde_json::to_value(AlgebraJson::from_algebra(e)).expect("serializable");
    if let Some(p) = format_presentation(e) {
        json["presentation"] = Value::String(p);
    }
    let mut human = format!("dimension {} over {}\n{}", e.dim(), e.field(), describe_algebra(e));
    if let Value::Object(m) = extra {
        for (k, v) in m {
            human.push_str(&format!("\n{k}: {v}"));
            json[k] = v;
        }
    }
    Outcome::new(true, json, human)
}

fn product(ctx: &Ctx, kind: ProductKind, input: &Path) -> Result<Outcome> {
    match kind {
        ProductKind::Unified => {
            let d: DatumJson = read_json(input)?;
            let d = d.to_datum(ctx.field.as_ref())?;
            let e = unified_product(&d)?;
            let tags: Vec<&str> = classify_special(&d)?.into_iter().map(|t| t.as_str()).collect();
            Ok(algebra_outcome(&e, json!({ "special": tags })))
        }
        ProductKind::Bicrossed => {
            let mp: MatchedPairJson = read_json(input)?;
            let e = bicrossed_product(&mp.to_pair(ctx.field.as_ref())?)?;
            Ok(algebra_outcome(&e, json!({})))
        }
        ProductKind::Crossed => {
            let c: CrossedJson = read_json(input)?;
            let e = crossed_product(&c.to_input(ctx.field.as_ref())?)?;
            Ok(algebra_outcome(&e, json!({})))
        }
    }
}

fn factorize_cmd(ctx: &Ctx, input: &Path) -> Result<Outcome> {
    let fj: FactorizeJson = read_json(input)?;
    let (e, a_basis, v_basis) = fj.parse(ctx.field.as_ref())?;
    let mp = factorize(&e, &a_basis, &v_basis)?;
    let report = ReportJson::from_report(&matched_pair_check(&mp)?);
    let all: Vec<_> = a_basis.iter().chain(&v_basis).cloned().collect();
    let (rebased, _) = e.rebase(&all)?;
    let round_trip = bicrossed_product(&mp).map(|b| b == rebased).unwrap_or(false);
    let ok = report.all_hold && round_trip;
    let human = format!(
        "matched pair with dim A = {}, dim V = {}\nA: {}\n{}\nbicrossed product reproduces E: {}",
        mp.a.dim(),
        mp.v_dim,
        describe_algebra(&mp.a),
        report_human(&report),
        round_trip
    );
    let json =
        json!({"ok": ok, "matched_pair": MatchedPairJson::from_pair(&mp), "report": report, "round_trip": round_trip});
    Ok(Outcome::new(ok, json, human))
}

fn flag_enum(ctx: &Ctx, base: &Path) -> Result<Outcome> {
    let a = ctx.algebra(base)?;
    let f = a.field();
    let fds = enumerate_flag_datums(&a)?;
    let list: Vec<FlagDatumJson> = fds.iter().map(|fd| FlagDatumJson::from_datum(f, fd)).collect();
    let mut human = format!("{} flag datums of {} over {f}", fds.len(), describe_algebra(&a));
    for fd in &list {
        human.push_str(&format!(
            "\n  Lambda={:?} lambda={:?} D={:?} d={:?} a0={:?} u={}",
            fd.big_lambda, fd.lambda, fd.big_d, fd.d, fd.a0, fd.u
        ));
    }
    Ok(Outcome::new(true, json!({"count": fds.len(), "datums": list}), human))
}

fn classify(ctx: &Ctx, codim1: bool, base: &Path, mode: EquivMode) -> Result<Outcome> {
    if !codim1 {
        return Err(Error::Usage("only codimension-1 classification is available; pass --codim1".into()));
    }
    let a = ctx.algebra(base)?;
    let fam = classify_codim1(&a, mode)?;
    let cj = ClassifiedJson::from_family(&a, &fam);
    let mut human = format!(
        "{} flag datums of {} fall into {} {} classes",
        cj.datum_count,
        describe_algebra(&a),
        cj.class_count,
        cj.mode
    );
    for (i, c) in cj.classes.iter().enumerate() {
        human.push_str(&format!(
            "\n[{i}] {} ({} members)\n    representative: Lambda={:?} lambda={:?} D={:?} d={:?} a0={:?} u={}",
            c.presentation.as_deref().unwrap_or("?"),
            c.members.len(),
            c.representative.big_lambda,
            c.representative.lambda,
            c.representative.big_d,
            c.representative.d,
            c.representative.a0,
            c.representative.u
        ));
        for m in &c.members {
            human.push_str(&format!(
                "\n    member a0={:?} u={} via q={} alpha={:?}",
                m.datum.a0, m.datum.u, m.q, m.alpha
            ));
        }
    }
    Ok(Outcome::new(true, &cj, human))
}

fn algebra_list(algs: &[Algebra]) -> Vec<Value> {
    algs.iter()
        .map(|a| {
            let mut v = serde_json::to_value(AlgebraJson::from_algebra(a)).expect("serializable");
            if let Some(p) = format_presentation(a) {
                v["presentation"] = Value::String(p);
            }
            v
        })
        .collect()
}

fn supersolvable(ctx: &Ctx, dim: usize) -> Result<Outcome> {
    let f = ctx.field()?;
    let algs = supersolvable_catalog(f, dim)?;
    let mut human = format!("{} supersolvable algebras of dimension {dim} over {f}", algs.len());
    for a in &algs {
        human.push_str(&format!("\n  {}", describe_algebra(a)));
    }
    Ok(Outcome::new(
        true,
        json!({"field": f.to_string(), "dim": dim, "count": algs.len(), "algebras": algebra_list(&algs)}),
        human,
    ))
}

/// Oracle classes of supersolvable algebras, and whether each is matched by
/// an entry of the list and the list has no extra iso classes.
fn catalog_check(f: &Field, dim: usize, entries: &[Algebra]) -> Result<(bool, Value, String)> {
    let mut task = EnumerationTask::new(f, dim);
    task.supersolvable = true;
    let found = enumerate_algebras(&task)?;
    let classes = iso_classes(&found)?;
    let mut unmatched = 0;
    for r in &classes.representatives {
        let mut hit = false;
        for e in entries {
            if is_isomorphic(r, e)?.is_some() {
                hit = true;
                break;
            }
        }
        unmatched += (!hit) as usize;
    }
    let listed = iso_classes(entries)?.representatives.len();
    let staged = supersolvable_catalog(f, dim)?.len();
    let ok = unmatched == 0 && listed == classes.representatives.len() && staged == listed;
    let json = json!({
        "oracle_tables": found.len(),
        "oracle_classes": classes.representatives.len(),
        "catalog_classes": listed,
        "supersolvable_catalog": staged,
        "unmatched_oracle_classes": unmatched,
        "result": ok_word(ok),
    });
    let human = format!(
        "oracle: {} tables in {} classes; catalog entries form {listed} classes; staged extensions give {staged}; unmatched {unmatched}: oracle {}",
        found.len(),
        classes.representatives.len(),
        ok_word(ok)
    );
    Ok((ok, json, human))
}

fn catalog(ctx: &Ctx, dim: usize, bound: Option<usize>, check: bool) -> Result<Outcome> {
    let f = ctx.field()?;
    let entries = match dim {
        2 => paper_catalog_dim2(f, bound)?,
        3 => paper_catalog_dim3(f, bound)?,
        _ => return Err(Error::Usage("catalogs exist for dimensions 2 and 3".into())),
    };
    let mut human = format!("{} entries for dimension {dim} over {f}", entries.len());
    for e in &entries {
        human.push_str(&format!("\n  {:<12} {}", e.name, e.presentation));
        if let Some(n) = &e.note {
            human.push_str(&format!("  [{n}]"));
        }
    }
    let list: Vec<CatalogEntryJson> = entries.iter().map(CatalogEntryJson::from_entry).collect();
    let mut json = json!({"field": f.to_string(), "dim": dim, "count": entries.len(), "entries": list});
    let mut ok = true;
    if check {
        if !f.is_finite() {
            return Err(Error::UnsupportedOverInfiniteField("catalog check".into()));
        }
        let algs: Vec<Algebra> = entries.iter().filter_map(|e| e.algebra.clone()).collect();
        let (pass, cj, ch) = catalog_check(f, dim, &algs)?;
        ok = pass;
        json["check"] = cj;
        human.push('\n');
        human.push_str(&ch);
    }
    Ok(Outcome::new(ok, json, human))
}

#[derive(Serialize)]
struct GaloisReport {
    order: usize,
    abelian: bool,
    description: String,
    is_galois: bool,
    fixed_subalgebra: Vec<JsonVec>,
    methods_agree: bool,
    groups: BTreeMap<&'static str, GroupJson>,
}

fn galois(ctx: &Ctx, algebra: &Path, sub: &str, method: Method) -> Result<Outcome> {
    let b = ctx.algebra(algebra)?;
    let f = b.field().clone();
    let a_basis: Vec<_> = split_elements(sub).iter().map(|s| parse_element(&b, s)).collect::<Result<_>>()?;
    let mut groups: Vec<(&'static str, FiniteGroup)> = Vec::new();
    if matches!(method, Method::Brute | Method::All) {
        groups.push(("brute", galois_group_brute(&b, &a_basis)?));
    }
    if matches!(method, Method::Unified | Method::Codim1 | Method::All) {
        let (d, _) = datum_from_subalgebra(&b, &a_basis)?;
        if method != Method::Codim1 {
            groups.push(("unified", galois_group_unified(&d)?));
        }
        if method == Method::Codim1 || (method == Method::All && d.v_dim == 1) {
            let fd = flag_from_datum(&d)?;
            groups.push(("codim1", galois_group_codim1(&d.a, &fd)?));
        }
    }
    let (fixed, is_galois) = invariants_and_galois_test(&b, &a_basis)?;
    let g = &groups[0].1;
    let agree = groups.iter().all(|(_, h)| h.order() == g.order());
    let report = GaloisReport {
        order: g.order(),
        abelian: g.is_abelian(),
        description: g.describe(),
        is_galois,
        fixed_subalgebra: fixed.iter().map(|v| vec_to_json(&f, v)).collect(),
        methods_agree: agree,
        groups: groups.iter().map(|(n, h)| (*n, GroupJson::from_group(h))).collect(),
    };
    let mut human = format!(
        "Gal(B/A): order {}, {}, {}\nfixed subalgebra has dimension {} (A has {}): {}",
        report.order,
        report.description,
        if report.abelian { "abelian" } else { "non-abelian" },
        fixed.len(),
        a_basis.len(),
        if is_galois { "Galois" } else { "not Galois" }
    );
    for (n, h) in &groups {
        human.push_str(&format!("\n  {n:<8} order {} element orders {:?}", h.order(), h.element_orders()));
    }
    if groups.len() > 1 {
        human.push_str(&format!("\nmethods agree: {agree}"));
    }
    Ok(Outcome::new(agree, &report, human))
}

fn oracle(
    ctx: &Ctx,
    dim: Option<usize>,
    commutative: bool,
    supersolvable: bool,
    contains: Option<PathBuf>,
    extensions_of: Option<PathBuf>,
    budget: u128,
) -> Result<Outcome> {
    let (field, dim, total, valid, reps): (Field, usize, u128, usize, Vec<(Algebra, usize)>) = match extensions_of {
        Some(p) => {
            let a = ctx.algebra(&p)?;
            let total = codim1_candidate_count(&a)?;
            let classes = brute_extensions_codim1_with_budget(&a, budget)?;
            let valid = classes.iter().map(|c| c.size).sum();
            let reps = classes.into_iter().map(|c| (c.algebra, c.size)).collect();
            (a.field().clone(), a.dim() + 1, total, valid, reps)
        }
        None => {
            let f = ctx.field()?.clone();
            let dim = dim.expect("clap requires --dim");
            let mut task = EnumerationTask::new(&f, dim);
            task.commutative = commutative;
            task.supersolvable = supersolvable;
            task.budget = budget;
            if let Some(p) = contains {
                task.contains = Some(ctx.algebra(&p)?);
            }
            let total = task.candidate_count()?;
            let algs = enumerate_algebras(&task)?;
            let classes = iso_classes(&algs)?;
            let reps = classes.representatives.into_iter().zip(classes.sizes).collect();
            (f, dim, total, algs.len(), reps)
        }
    };
    let report = OracleReportJson {
        field: field.to_string(),
        dim,
        total_tables: total.to_string(),
        valid,
        classes: reps
            .iter()
            .map(|(a, size)| OracleClassJson {
                representative: AlgebraJson::from_algebra(a),
                presentation: format_presentation(a),
                size: *size,
            })
            .collect(),
    };
    let mut human = format!("{total} candidate tables over {field}, {valid} valid, {} classes", reps.len());
    for (a, size) in &reps {
        human.push_str(&format!("\n  {:>6}  {}", size, describe_algebra(a)));
    }
    Ok(Outcome::new(true, &report, human))
}

fn run(cli: Cli) -> Result<Outcome> {
    if let Some(n) = cli.threads {
        if n == 0 {
            return Err(Error::Usage("--threads must be positive".into()));
        }
        // a second initialization only happens in tests and is harmless
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    let field = cli.field.as_deref().map(Field::parse).transpose()?;
    let ctx = Ctx { field, seed: cli.seed };
    match cli.command {
        Command::Verify { algebra, datum, flag, matched_pair, sample, base, v_dim } => {
            if let Some(fl) = &flag {
                return verify_flag(&ctx, fl, base.as_deref().expect("clap requires --base"));
            }
            let sample =
                sample.map(|n| (n, base.clone().expect("clap requires --base"), v_dim.expect("clap requires --v-dim")));
            verify(&ctx, algebra, datum, matched_pair, sample)
        }
        Command::Product { kind, input } => product(&ctx, kind, &input),
        Command::Factorize { input } => factorize_cmd(&ctx, &input),
        Command::FlagEnum { base } => flag_enum(&ctx, &base),
        Command::Classify { codim1, base, mode } => classify(&ctx, codim1, &base, mode),
        Command::Supersolvable { dim } => supersolvable(&ctx, dim),
        Command::Catalog { dim, bound, check } => catalog(&ctx, dim, bound, check),
        Command::Galois { algebra, sub, method } => galois(&ctx, &algebra, &sub, method),
        Command::Oracle { dim, commutative, supersolvable, contains, extensions_of, budget } => {
            oracle(&ctx, dim, commutative, supersolvable, contains, extensions_of, budget)
        }
    }
}

/// Writes to stdout; a reader that went away (e.g. `| head`) is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let format = cli.format;
    match run(cli) {
        Ok(out) => {
            match format {
                Format::Json => emit(&serde_json::to_string_pretty(&out.json).expect("serializable")),
                Format::Human => emit(&out.human),
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let mut doc = json!({"error": e.name(), "message": e.to_string()});
            if let Error::AxiomsFailed(r) = &e {
                doc["failing"] = json!(r.failing());
            }
            match format {
                Format::Json => emit(&serde_json::to_string_pretty(&doc).expect("serializable")),
                Format::Human => eprintln!("error[{}]: {e}", e.name()),
            }
            ExitCode::from(if e.is_usage() { 2 } else { 1 })
        }
    }
}
