//! The `golod-lab` command line.
//!
//! Every command builds one serializable report; `--format json` prints it
//! as JSON and the text mode renders the same fields.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::field::{Field, FieldChoice, PrimeField, Rationals};
use crate::golod::{golod_decide, golod_decide_labeled, choose_backend, Backend, ClassSummary, GolodStatus, GolodVerdict};
use crate::homology::{BettiData, HomologyClass, HomologyEngine};
use crate::massey::{all_products_trivial, ternary_massey, ternary_massey_generators};
use crate::monomial::{paper_example, Monomial, MonomialIdeal, PAPER_EXAMPLE_LABELS};
use crate::search::{minimality_report, paper_seed, pattern_check, search, RoleAssignment, SearchConfig};
use crate::series::{p_series, q_series, series_compare};
use crate::simplicial::SimplicialComplex;
use crate::taylor::{fiber_complex, generators_below, TaylorDga};

#[derive(Debug, Parser)]
#[command(name = "golod-lab", version, about = "Koszul homology, Massey products and the Golod property of monomial ideals")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum, PartialEq, Eq)]
pub enum Example {
    /// The 8-generator ideal in k[x1,x2,y1,y2,z].
    Paper,
    /// Its polarization, in 9 variables.
    PaperPolarized,
}

#[derive(Debug, Args)]
struct Common {
    /// Input file (`-` for stdin).
    file: Option<PathBuf>,
    /// Built-in example instead of a file.
    #[arg(long, value_enum, conflicts_with = "file")]
    example: Option<Example>,
    /// Coefficient field: `q` or `fp:<prime>`.
    #[arg(long, default_value = "q", value_parser = parse_field)]
    field: FieldChoice,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

fn parse_field(s: &str) -> std::result::Result<FieldChoice, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Multigraded and graded Betti numbers of S/I.
    Betti(Common),
    /// Exhaustive check that all products on Koszul homology vanish.
    Products(Common),
    /// Ternary Massey products of generator classes.
    Massey3 {
        #[command(flatten)]
        common: Common,
        /// Three generators: labels, indices or monomials.
        #[arg(long, value_delimiter = ',', conflicts_with = "all")]
        gens: Vec<String>,
        /// Every ordered triple of pairwise coprime generators.
        #[arg(long)]
        all: bool,
    },
    /// Golod decision with reason and witness.
    Golod {
        #[command(flatten)]
        common: Common,
        /// Compare P and Q to this order when no criterion decides.
        #[arg(long)]
        series_order: Option<usize>,
    },
    /// Fiber complex of a multidegree of the lcm-lattice.
    Fiber {
        #[command(flatten)]
        common: Common,
        /// Exponent vector, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        mdeg: Vec<u32>,
    },
    /// Truncated Poincare-Betti series P and Serre's bound Q.
    Series {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 5)]
        trunc: usize,
    },
    /// Standard polarization.
    Polarize(Common),
    /// Stanley-Reisner ideal of a simplicial complex.
    Sr(Common),
    /// Simplicial complex of a squarefree ideal.
    Complex(Common),
    /// k-skeleton of a simplicial complex.
    Skeleton {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        dim: i64,
    },
    /// Necessary combinatorial conditions for role assignments.
    PatternCheck {
        #[command(flatten)]
        common: Common,
        /// `a=0,b=3,...` with indices or labels; defaults to the example's roles.
        #[arg(long)]
        roles: Option<String>,
    },
    /// Search squarefree role patterns for trivial-product non-Golod ideals.
    Search {
        #[arg(long, default_value_t = 9)]
        nvars: usize,
        #[arg(long, default_value_t = 8)]
        max_gens: usize,
        /// Maximum number of candidate ideals.
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        /// Try the polarized built-in example pattern first.
        #[arg(long)]
        seed_paper: bool,
        #[arg(long, default_value_t = 1)]
        max_survivors: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

/// Exit code and printed output of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommandResult {
    /// 0 success, 1 mathematical negative, 2 usage or input error,
    /// 3 degree cap or budget exhausted.
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args` (including the program name).
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let (stdout, stderr) = if code == 0 { (text, String::new()) } else { (String::new(), text) };
            return CommandResult { code, stdout, stderr };
        }
    };
    match dispatch(cli.command) {
        Ok(out) => CommandResult {
            code: out.code,
            stdout: out.text,
            stderr: String::new(),
        },
        Err(e) => CommandResult {
            code: error_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn error_code(e: &Error) -> i32 {
    match e {
        Error::CapInsufficient(_) | Error::TooLarge { .. } => 3,
        _ => 2,
    }
}

struct Output {
    code: i32,
    text: String,
}

fn emit(format: Format, code: i32, value: &Value, text: String) -> Result<Output> {
    let text = match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Parse(e.to_string()))?;
            s.push('\n');
            s
        }
        Format::Text => text,
    };
    Ok(Output { code, text })
}

/// Integers as JSON numbers when they fit in `i64`, else as strings.
pub fn big_json(x: &BigInt) -> Value {
    match x.to_i64() {
        Some(v) => json!(v),
        None => json!(x.to_string()),
    }
}

macro_rules! with_field {
    ($choice:expr, |$f:ident| $body:expr) => {
        match $choice {
            FieldChoice::Rational => {
                let $f = Rationals;
                $body
            }
            FieldChoice::Prime(p) => {
                let $f = PrimeField::new(p)?;
                $body
            }
        }
    };
}

fn read_input(common: &Common) -> Result<String> {
    match &common.file {
        None => Err(Error::Parse("no input: give a file or --example".into())),
        Some(p) if p.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
                .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            Ok(s)
        }
        Some(p) => std::fs::read_to_string(p).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
    }
}

/// The input ideal and the labels of its generators.
fn load_ideal(common: &Common) -> Result<(MonomialIdeal, Vec<String>)> {
    let paper_labels = || PAPER_EXAMPLE_LABELS.iter().map(|s| s.to_string()).collect();
    match common.example {
        Some(Example::Paper) => Ok((paper_example(), paper_labels())),
        Some(Example::PaperPolarized) => Ok((paper_example().polarize().0, paper_labels())),
        None => {
            let ideal = MonomialIdeal::parse(&read_input(common)?)?;
            let labels = (0..ideal.ngens()).map(|i| ideal.render_gen(i)).collect();
            Ok((ideal, labels))
        }
    }
}

/// A complex file, or the complex of an example ideal.
fn load_complex(common: &Common) -> Result<SimplicialComplex> {
    match common.example {
        Some(_) => SimplicialComplex::complex_of(&load_ideal(common)?.0),
        None => SimplicialComplex::parse(&read_input(common)?),
    }
}

fn labeled_engine<F: Field>(ideal: &MonomialIdeal, labels: &[String], field: F) -> Result<HomologyEngine<TaylorDga, F>> {
    Ok(HomologyEngine::new(
        TaylorDga::new(ideal.clone())?.with_labels(labels.to_vec()),
        field,
    ))
}

fn dispatch(command: Command) -> Result<Output> {
    match command {
        Command::Betti(c) => with_field!(c.field, |f| cmd_betti(&c, f)),
        Command::Products(c) => with_field!(c.field, |f| cmd_products(&c, f)),
        Command::Massey3 { common, gens, all } => {
            with_field!(common.field, |f| cmd_massey3(&common, f, &gens, all))
        }
        Command::Golod { common, series_order } => {
            with_field!(common.field, |f| cmd_golod(&common, f, series_order))
        }
        Command::Fiber { common, mdeg } => with_field!(common.field, |f| cmd_fiber(&common, f, &mdeg)),
        Command::Series { common, trunc } => with_field!(common.field, |f| cmd_series(&common, f, trunc)),
        Command::Polarize(c) => cmd_polarize(&c),
        Command::Sr(c) => {
            let ideal = load_complex(&c)?.stanley_reisner_ideal()?;
            let value = json!({
                "vars": ideal.vars(),
                "generators": (0..ideal.ngens()).map(|i| ideal.render_gen(i)).collect::<Vec<_>>(),
            });
            emit(c.format, 0, &value, ideal.render())
        }
        Command::Complex(c) => {
            let complex = SimplicialComplex::complex_of(&load_ideal(&c)?.0)?;
            emit(c.format, 0, &complex_json(&complex), complex.render())
        }
        Command::Skeleton { common, dim } => {
            let complex = load_complex(&common)?.skeleton(dim);
            emit(common.format, 0, &complex_json(&complex), complex.render())
        }
        Command::PatternCheck { common, roles } => cmd_pattern(&common, roles.as_deref()),
        Command::Search {
            nvars,
            max_gens,
            budget,
            seed_paper,
            max_survivors,
            format,
        } => cmd_search(
            SearchConfig {
                nvars,
                max_gens,
                budget,
                seed: seed_paper.then(paper_seed),
                max_survivors,
            },
            format,
        ),
    }
}

fn complex_json(complex: &SimplicialComplex) -> Value {
    json!({
        "vertices": complex.labels(),
        "dim": complex.dim(),
        "facets": complex
            .facets()
            .into_iter()
            .filter(|&f| f != 0)
            .map(|f| complex.face_labels(f))
            .collect::<Vec<_>>(),
    })
}

fn betti_json(betti: &BettiData, field: &str) -> Value {
    let multigraded: Vec<Value> = betti
        .multigraded
        .iter()
        .map(|((i, m), &count)| json!({"i": i, "multidegree": m.exponents(), "count": count}))
        .collect();
    let coarse: Vec<Value> = betti
        .coarse()
        .iter()
        .map(|(&(i, j), &count)| json!({"i": i, "j": j, "count": count}))
        .collect();
    json!({
        "field": field,
        "totals": betti.totals(),
        "regularity": betti.regularity(),
        "projective_dimension": betti.projective_dimension(),
        "coarse": coarse,
        "multigraded": multigraded,
    })
}

fn fmt_vec<T: std::fmt::Display>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

fn cmd_betti<F: Field>(c: &Common, field: F) -> Result<Output> {
    let (ideal, _) = load_ideal(c)?;
    let betti = HomologyEngine::taylor(&ideal, field.clone())?.betti()?;
    let mut text = betti.render_table();
    let _ = writeln!(text, "field: {}", field.name());
    let _ = writeln!(text, "regularity: {}", betti.regularity());
    let _ = writeln!(text, "projective dimension: {}", betti.projective_dimension());
    let _ = writeln!(text, "multigraded:");
    for ((i, m), count) in &betti.multigraded {
        let _ = writeln!(text, "  {i} {} {count}", fmt_vec(m.exponents()));
    }
    emit(c.format, 0, &betti_json(&betti, &field.name()), text)
}

fn class_json<D: crate::dga::MonomialDga, F: Field>(
    engine: &HomologyEngine<D, F>,
    class: &HomologyClass<F>,
) -> Result<Value> {
    let s = ClassSummary::of(engine, class)?;
    let terms: Vec<Value> = engine
        .terms(&class.representative)?
        .into_iter()
        .map(|(cell, x)| json!({"cell": engine.dga().describe(cell), "coefficient": x.to_string()}))
        .collect();
    Ok(json!({
        "multidegree": s.multidegree,
        "homological_degree": s.homological_degree,
        "internal_degree": s.internal_degree,
        "coordinates": class.coords.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "representative": s.representative,
        "terms": terms,
    }))
}

fn cmd_products<F: Field>(c: &Common, field: F) -> Result<Output> {
    let (ideal, labels) = load_ideal(c)?;
    let engine = labeled_engine(&ideal, &labels, field.clone())?;
    let basis = engine.positive_basis()?;
    let report = all_products_trivial(&engine)?;
    let witness = match &report.witness {
        Some((a, b, p)) => Some(json!({
            "left": class_json(&engine, a)?,
            "right": class_json(&engine, b)?,
            "product": class_json(&engine, p)?,
        })),
        None => None,
    };
    let value = json!({
        "field": field.name(),
        "trivial": report.trivial,
        "basis_size": basis.len(),
        "pairs": report.pairs,
        "computed": report.computed,
        "witness": witness,
    });
    let mut text = String::new();
    let _ = writeln!(text, "field: {}", field.name());
    let _ = writeln!(text, "trivial: {}", report.trivial);
    let _ = writeln!(text, "basis size: {}", basis.len());
    let _ = writeln!(text, "pairs: {}", report.pairs);
    let _ = writeln!(text, "computed: {}", report.computed);
    if let Some((a, b, p)) = &report.witness {
        let _ = writeln!(
            text,
            "witness: [{}] * [{}] = [{}]",
            engine.describe(&a.representative)?,
            engine.describe(&b.representative)?,
            engine.describe(&p.representative)?
        );
    }
    emit(c.format, if report.trivial { 0 } else { 1 }, &value, text)
}

/// Resolves a generator given by label, index or monomial.
fn generator_index(ideal: &MonomialIdeal, labels: &[String], token: &str) -> Result<usize> {
    let token = token.trim();
    if let Some(i) = labels.iter().position(|l| l == token) {
        return Ok(i);
    }
    if let Ok(i) = token.parse::<usize>() {
        if i < ideal.ngens() {
            return Ok(i);
        }
        return Err(Error::Parse(format!("generator index {i} out of range")));
    }
    let m = Monomial::parse(token, ideal.vars())?;
    ideal
        .position(&m)
        .ok_or_else(|| Error::Parse(format!("`{token}` is not a generator")))
}

fn massey_value_json<F: Field>(
    engine: &HomologyEngine<TaylorDga, F>,
    labels: &[String],
    gens: [usize; 3],
    unique: bool,
) -> Result<(Value, String, bool)> {
    let field = engine.field();
    let class = |k: usize| engine.class_of(&engine.cell_chain(1 << k)?);
    let (a, b, c) = (class(gens[0])?, class(gens[1])?, class(gens[2])?);
    let general = ternary_massey(engine, &a, &b, &c, unique)?;
    let comb = ternary_massey_generators(engine, gens[0], gens[1], gens[2], unique)?;
    let names: Vec<&str> = gens.iter().map(|&k| labels[k].as_str()).collect();
    let mut text = String::new();
    let _ = writeln!(text, "gens: {}", names.join(","));
    let _ = writeln!(text, "defined: {}", general.defined);
    let _ = writeln!(text, "unique: {}", general.unique);
    let nonzero = general.is_nonzero(field);
    let _ = writeln!(text, "nonzero: {nonzero}");
    let mut value = json!({
        "gens": names,
        "defined": general.defined,
        "unique": general.unique,
        "nonzero": nonzero,
        "note": general.note,
    });
    if let Some(v) = &general.value {
        let group = engine.homology_dim(v.mdeg(), v.degree())?;
        let mut vj = class_json(engine, v)?;
        vj["group_dimension"] = json!(group);
        value["value"] = vj;
        let _ = writeln!(text, "multidegree: {}", fmt_vec(v.mdeg().exponents()));
        let _ = writeln!(text, "homological degree: {}", v.degree());
        let _ = writeln!(text, "group dimension: {group}");
        let coords: Vec<String> = v.coords.iter().map(|x| x.to_string()).collect();
        let _ = writeln!(text, "coordinates: {}", fmt_vec(&coords));
        let _ = writeln!(text, "representative: {}", engine.describe(&v.representative)?);
    }
    if let Some(note) = &general.note {
        let _ = writeln!(text, "note: {note}");
    }
    match (&general.value, &comb.value) {
        (Some(g), Some(k)) => {
            let agrees = g.mdeg() == k.mdeg() && g.degree() == k.degree() && g.coords == k.coords;
            let rep = engine.describe(&k.representative)?;
            value["combinatorial"] = json!({"representative": rep, "agrees": agrees});
            let _ = writeln!(text, "combinatorial representative: {rep}");
            let _ = writeln!(text, "agrees: {agrees}");
        }
        _ => {
            value["combinatorial"] = json!({"note": comb.note});
        }
    }
    Ok((value, text, nonzero))
}

fn cmd_massey3<F: Field>(c: &Common, field: F, gens: &[String], all: bool) -> Result<Output> {
    let (ideal, labels) = load_ideal(c)?;
    let engine = labeled_engine(&ideal, &labels, field.clone())?;
    let unique = all_products_trivial(&engine)?.trivial;
    let triples: Vec<[usize; 3]> = if all {
        let g = ideal.gens();
        let n = g.len();
        let mut out = Vec::new();
        for a in 0..n {
            for b in 0..n {
                for d in 0..n {
                    let distinct = a != b && b != d && a != d;
                    if distinct && g[a].coprime(&g[b])? && g[b].coprime(&g[d])? && g[a].coprime(&g[d])? {
                        out.push([a, b, d]);
                    }
                }
            }
        }
        out
    } else {
        if gens.len() != 3 {
            return Err(Error::Parse("give --gens a,b,c or --all".into()));
        }
        let idx = gens
            .iter()
            .map(|t| generator_index(&ideal, &labels, t))
            .collect::<Result<Vec<_>>>()?;
        vec![[idx[0], idx[1], idx[2]]]
    };
    let mut values = Vec::new();
    let mut text = format!("field: {}\n", field.name());
    for (k, t) in triples.iter().enumerate() {
        let (v, s, _) = massey_value_json(&engine, &labels, *t, unique)?;
        if k > 0 {
            text.push('\n');
        }
        text.push_str(&s);
        values.push(v);
    }
    let value = if all {
        json!({"field": field.name(), "products": values})
    } else {
        let mut v = values.pop().expect("one triple");
        v["field"] = json!(field.name());
        v
    };
    emit(c.format, 0, &value, text)
}

fn verdict_text(v: &GolodVerdict, field: &str) -> String {
    let mut text = String::new();
    let _ = writeln!(text, "field: {field}");
    let _ = writeln!(text, "status: {:?}", v.status);
    let _ = writeln!(text, "route: {}", serde_json::to_value(v.route).unwrap_or_default().as_str().unwrap_or(""));
    let _ = writeln!(text, "reason: {}", v.reason);
    let _ = writeln!(text, "regularity: {}", v.regularity);
    let _ = writeln!(text, "projective dimension: {}", v.projective_dimension);
    let _ = writeln!(text, "backend: {}", v.backend);
    if let Some(b) = &v.arity_bound {
        let _ = writeln!(text, "arity bound: r = {} ({})", b.r, b.via);
    }
    for c in &v.criteria {
        let _ = writeln!(text, "criterion: {}", c.description());
    }
    match &v.witness {
        Some(crate::golod::Witness::Massey { factors, value }) => {
            let f: Vec<String> = factors.iter().map(|c| format!("[{}]", c.representative)).collect();
            let _ = writeln!(text, "witness: mu3({}) = [{}]", f.join(", "), value.representative);
            let _ = writeln!(text, "witness multidegree: {}", fmt_vec(&value.multidegree));
            let _ = writeln!(text, "witness degree: {}", value.homological_degree);
        }
        Some(crate::golod::Witness::Product { left, right, product }) => {
            let _ = writeln!(
                text,
                "witness: [{}] * [{}] = [{}]",
                left.representative, right.representative, product.representative
            );
        }
        Some(crate::golod::Witness::Series { index, p, q }) => {
            let _ = writeln!(text, "witness: P_{index} = {p} < Q_{index} = {q}");
        }
        None => {}
    }
    if let Some(e) = &v.evidence {
        let _ = writeln!(text, "P: {}", e.p.join(", "));
        let _ = writeln!(text, "Q: {}", e.q.join(", "));
    }
    text
}

fn cmd_golod<F: Field>(c: &Common, field: F, order: Option<usize>) -> Result<Output> {
    let (ideal, labels) = load_ideal(c)?;
    let name = field.name();
    let verdict = if c.example.is_some() && choose_backend(&ideal) == Backend::Taylor {
        golod_decide_labeled(&ideal, labels, field, order)?
    } else {
        golod_decide(&ideal, field, order)?
    };
    let mut value = serde_json::to_value(&verdict).map_err(|e| Error::Parse(e.to_string()))?;
    value["field"] = json!(name);
    let code = if verdict.status == GolodStatus::NotGolod { 1 } else { 0 };
    emit(c.format, code, &value, verdict_text(&verdict, &name))
}

fn cmd_fiber<F: Field>(c: &Common, field: F, mdeg: &[u32]) -> Result<Output> {
    let (ideal, labels) = load_ideal(c)?;
    if mdeg.len() != ideal.nvars() {
        return Err(Error::Parse(format!(
            "--mdeg has {} entries, the ring has {} variables",
            mdeg.len(),
            ideal.nvars()
        )));
    }
    let u = Monomial::new(mdeg.to_vec());
    let complex = fiber_complex(&ideal, &u)?;
    let below = generators_below(&ideal, &u);
    let gens: Vec<String> = (0..ideal.ngens())
        .filter(|k| below >> k & 1 == 1)
        .map(|k| labels[k].clone())
        .collect();
    let cohomology = complex.reduced_cohomology_dims(&field);
    let engine = labeled_engine(&ideal, &labels, field.clone())?;
    let top = gens.len();
    let strand: Vec<usize> = (0..=top)
        .map(|i| engine.homology_dim(&u, i))
        .collect::<Result<_>>()?;
    let mut value = complex_json(&complex);
    value["multidegree"] = json!(mdeg);
    value["generators"] = json!(gens);
    value["reduced_cohomology"] = json!(cohomology);
    value["strand_homology"] = json!(strand);
    value["field"] = json!(field.name());
    let mut text = String::new();
    let _ = writeln!(text, "field: {}", field.name());
    let _ = writeln!(text, "multidegree: {}", fmt_vec(mdeg));
    let _ = writeln!(text, "generators: {}", gens.join(", "));
    let _ = writeln!(text, "reduced cohomology: {}", fmt_vec(&cohomology));
    let _ = writeln!(text, "strand homology: {}", fmt_vec(&strand));
    let _ = writeln!(text, "facets:");
    for f in complex.facets().into_iter().filter(|&f| f != 0) {
        let _ = writeln!(text, "  {}", complex.face_labels(f).join(" "));
    }
    emit(c.format, 0, &value, text)
}

fn cmd_series<F: Field>(c: &Common, field: F, trunc: usize) -> Result<Output> {
    let (ideal, _) = load_ideal(c)?;
    let betti = HomologyEngine::taylor(&ideal, field.clone())?.betti()?;
    let q = q_series(&betti, trunc);
    let (p, report) = p_series(&ideal, &field, trunc, None)?;
    let d = series_compare(&p, &q);
    let big = |s: &crate::series::SeriesTrunc| s.coeffs.iter().map(big_json).collect::<Vec<_>>();
    let value = json!({
        "field": field.name(),
        "trunc": trunc,
        "p": big(&p),
        "q": big(&q),
        "divergence": d.as_ref().map(|d| json!({
            "index": d.index,
            "p": big_json(&d.p),
            "q": big_json(&d.q),
            "p_less": d.p_less(),
        })),
        "cap": report,
    });
    let mut text = String::new();
    let _ = writeln!(text, "field: {}", field.name());
    let _ = writeln!(text, "P: {}", p.to_strings().join(", "));
    let _ = writeln!(text, "Q: {}", q.to_strings().join(", "));
    match &d {
        Some(d) => {
            let rel = if d.p_less() { "<" } else { ">" };
            let _ = writeln!(text, "divergence: {} (P = {} {rel} Q = {})", d.index, d.p, d.q);
        }
        None => {
            let _ = writeln!(text, "divergence: none");
        }
    }
    for s in &report.steps {
        let _ = writeln!(
            text,
            "cap: step {} cap {} generators {} max degree {}",
            s.module, s.cap, s.generators, s.max_generator_degree
        );
    }
    emit(c.format, 0, &value, text)
}

fn cmd_polarize(c: &Common) -> Result<Output> {
    let (ideal, _) = load_ideal(c)?;
    let (pol, map) = ideal.polarize();
    let value = json!({
        "vars": pol.vars(),
        "generators": (0..pol.ngens()).map(|i| pol.render_gen(i)).collect::<Vec<_>>(),
        "blocks": map.blocks,
    });
    emit(c.format, 0, &value, pol.render())
}

fn cmd_pattern(c: &Common, roles: Option<&str>) -> Result<Output> {
    let (ideal, labels) = load_ideal(c)?;
    let assignment = match (roles, c.example) {
        (Some(r), _) => RoleAssignment::parse(r, &labels)?,
        (None, Some(_)) => RoleAssignment::paper(),
        (None, None) => return Err(Error::Parse("--roles is required for file input".into())),
    };
    let report = pattern_check(&ideal, &assignment)?;
    let minimality = minimality_report(&ideal);
    let value = json!({
        "assignment": assignment,
        "conditions": report,
        "all_hold": report.all_hold(),
        "minimality": minimality,
    });
    let name = |k: Option<usize>| k.map_or("none".to_string(), |k| labels[k].clone());
    let mut text = String::new();
    let _ = writeln!(text, "disjoint: {}", report.disjoint);
    let _ = writeln!(text, "ab between a and b: {}", report.ab_between);
    let _ = writeln!(text, "bc between b and c: {}", report.bc_between);
    let _ = writeln!(text, "ca between c and a: {}", report.ca_between);
    let _ = writeln!(text, "b in ab + bc: {}", report.eq_b);
    let _ = writeln!(text, "a in ab + ca or c in bc + ca: {}", report.eq_a);
    let _ = writeln!(text, "ab#c: {}", name(report.ab_c));
    let _ = writeln!(text, "bc#a: {}", name(report.bc_a));
    let _ = writeln!(text, "ca#b: {}", name(report.ca_b));
    let _ = writeln!(text, "distinct: {}", report.distinct);
    let _ = writeln!(text, "bc#a = ca#b: {}", report.coincidence);
    let _ = writeln!(text, "all hold: {}", report.all_hold());
    let _ = writeln!(text, "variables: {}", minimality.nvars);
    let _ = writeln!(text, "generators: {}", minimality.ngens);
    let _ = writeln!(text, "meets bounds: {}", minimality.meets_bounds);
    let _ = writeln!(text, "equality: {}", minimality.equality);
    emit(c.format, if report.all_hold() { 0 } else { 1 }, &value, text)
}

fn cmd_search(config: SearchConfig, format: Format) -> Result<Output> {
    let outcome = search(&config)?;
    let code = if outcome.partial { 3 } else { 0 };
    let summary = json!({
        "examined": outcome.examined,
        "fast_passes": outcome.fast_passes,
        "survivors": outcome.survivors.len(),
        "partial": outcome.partial,
    });
    let text = match format {
        // one JSON document per line: survivors, then the summary
        Format::Json => {
            let mut s = String::new();
            for v in &outcome.survivors {
                let line = serde_json::to_string(v).map_err(|e| Error::Parse(e.to_string()))?;
                let _ = writeln!(s, "{line}");
            }
            let _ = writeln!(s, "{summary}");
            s
        }
        Format::Text => {
            let mut s = String::new();
            for v in &outcome.survivors {
                let _ = writeln!(s, "survivor {} ({} variables, {} generators)", v.serial, v.nvars, v.ngens);
                for line in v.ideal.lines() {
                    let _ = writeln!(s, "  {line}");
                }
                let _ = writeln!(s, "  mu3 = [{}]", v.massey_value);
            }
            let _ = writeln!(s, "examined: {}", outcome.examined);
            let _ = writeln!(s, "fast passes: {}", outcome.fast_passes);
            let _ = writeln!(s, "survivors: {}", outcome.survivors.len());
            let _ = writeln!(s, "partial: {}", outcome.partial);
            s
        }
    };
    Ok(Output { code, text })
}
