use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use difforge::algebra::{AbelianGroup, FiniteField};
use difforge::catalog::{
    catalog_get, catalog_list, paley_sdf_1, paley_sdf_2, paley_sdf_3, singer_sdf, twin_prime_sdf, z4_4_6p,
    CatalogEntry, EntryKind, Payload,
};
use difforge::designs::{cycle_structure, develop, rotational_bibd, verify_bibd, verify_gdd, Permutation};
use difforge::differences::{
    field_fiber_subgroup, infer_type2_pattern, infer_type4_pattern, verify_relative_df, RelativeDifferenceFamily,
    StrongDifferenceFamily,
};
use difforge::format::{verify_file, DesignFile};
use difforge::lifting::{
    build_type2_template, build_type4_template, fix_permutation, lift_to_df, qbound, solve_assignment_with,
    verify_type_witness, SolveOutcome, SolverOptions,
};
use difforge::ooc::{
    compose_ooc, is_optimal_ooc, search_ooc_exhaustive, search_relative_df_exhaustive, verify_ooc, SearchOptions,
    SearchOutcome,
};
use difforge::Error;

const OK: u8 = 0;
const FAILED: u8 = 1;
const MALFORMED: u8 = 2;
const UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(
    name = "difforge",
    version,
    about = "Strong difference families, lifted DFs, GDDs, rotational BIBDs and OOCs"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Verify a design file, or a catalog entry given as catalog://ID.
    Verify { source: String },
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Solve the witness template of an SDF over F_q and lift it to a DF.
    Lift(LiftArgs),
    #[command(subcommand)]
    Construct(ConstructCmd),
    #[command(subcommand)]
    Search(SearchCmd),
    /// Evaluate the cyclotomic bound Q(d, m).
    Qbound {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        m: u32,
    },
    /// Class permutation π with π(α(x)) - π(x) ≠ a for all x in Z_r.
    Fixperm {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        a: usize,
        /// α in cycle notation on 0..r, e.g. "(0 1 2)(3 4)".
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List {
        #[arg(long)]
        kind: Option<String>,
    },
    Show {
        id: String,
    },
    Export {
        id: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct LiftArgs {
    /// Catalog id or design file of the SDF.
    #[arg(long)]
    sdf: String,
    #[arg(long)]
    q: u32,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long)]
    e: Option<u32>,
    /// Ascending coefficients of a monic primitive polynomial.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    modulus: Option<Vec<i64>>,
    /// Pattern type to lift with; defaults to 4 when annotated, else 2.
    #[arg(long = "type")]
    type_d: Option<u32>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long, env = "DIFFORGE_NODE_BUDGET")]
    budget: Option<u64>,
    /// Write the lifted DF here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write the witness collection here.
    #[arg(long)]
    witness_out: Option<PathBuf>,
}

#[derive(Args)]
struct Out {
    /// Write the design file here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum ConstructCmd {
    Paley1 {
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        out: Out,
    },
    Paley2 {
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        out: Out,
    },
    Paley3 {
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        out: Out,
    },
    Twinprime {
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        out: Out,
    },
    Singer {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: u32,
        #[command(flatten)]
        out: Out,
    },
    #[command(name = "z4-4-6p")]
    Z446p {
        #[arg(long)]
        p: u32,
        #[command(flatten)]
        out: Out,
    },
    /// Develop a relative DF into a GDD.
    GddDev {
        #[arg(long)]
        df: String,
        #[command(flatten)]
        out: Out,
    },
    /// r-rotational (30q+1, 6, 1)-BIBD from a (Z30 × F_q)-DF.
    RotationalBibd {
        #[arg(long)]
        q: u32,
        #[arg(long)]
        r: u32,
        /// DF over Z30 × F_q or Z_30q; defaults to the catalog DF at q = 7
        /// and to a lift of sdf/z30-6-6 otherwise.
        #[arg(long)]
        df: Option<String>,
        #[command(flatten)]
        out: Out,
    },
    /// Cyclic DF plus a filler OOC on its missing differences.
    OocCompose {
        #[arg(long)]
        df: String,
        #[arg(long)]
        filler: String,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long, env = "DIFFORGE_NODE_BUDGET")]
    budget: Option<u64>,
    /// Worker count; 0 uses every core.
    #[arg(long, default_value_t = 0)]
    threads: usize,
}

#[derive(Subcommand)]
enum SearchCmd {
    /// (v, k, 1)-OOC with a single codeword.
    Ooc {
        #[arg(long)]
        v: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        count: usize,
        #[command(flatten)]
        opts: SearchArgs,
    },
    /// Relative DF over a group such as "Z5,F13", relative to G × {0}.
    Df {
        #[arg(long)]
        group: String,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        opts: SearchArgs,
    },
}

/// What a command prints and how it exits.
struct Report {
    code: u8,
    text: String,
    json: Value,
}

impl Report {
    fn new(code: u8, text: impl Into<String>, json: Value) -> Self {
        Report { code, text: text.into(), json }
    }
}

/// Failure before any verdict: unreadable or inconsistent input.
struct Malformed(String);

impl From<Error> for Malformed {
    fn from(e: Error) -> Self {
        Malformed(e.to_string())
    }
}

type CmdResult = std::result::Result<Report, Malformed>;

fn load_file(source: &str) -> std::result::Result<DesignFile, Malformed> {
    if let Some(id) = source.strip_prefix("catalog://") {
        let entry = catalog_get(id)?;
        return entry.file().cloned().ok_or_else(|| Malformed(format!("{id} has no design file payload")));
    }
    let text = std::fs::read_to_string(source).map_err(|e| Malformed(format!("cannot read {source}: {e}")))?;
    Ok(DesignFile::from_json(&text)?)
}

fn load_sdf(source: &str) -> std::result::Result<StrongDifferenceFamily, Malformed> {
    // Bare catalog ids are accepted alongside catalog:// and file paths.
    let source = if catalog_get(source).is_ok() { format!("catalog://{source}") } else { source.to_string() };
    Ok(load_file(&source)?.to_sdf()?)
}

fn write_out(path: &PathBuf, text: &str) -> std::result::Result<(), Malformed> {
    std::fs::write(path, text).map_err(|e| Malformed(format!("cannot write {}: {e}", path.display())))
}

fn verify(source: &str) -> CmdResult {
    if let Some(id) = source.strip_prefix("catalog://") {
        let entry = match catalog_get(id) {
            Ok(e) => e,
            Err(Error::UnknownId(id)) => return Err(Malformed(format!("unknown catalog id `{id}`"))),
            Err(e) => return Ok(Report::new(FAILED, e.to_string(), json!({ "ok": false, "detail": e.to_string() }))),
        };
        if entry.file().is_none() {
            let detail = format!("{id}: {} verified at load", entry.kind);
            return Ok(Report::new(OK, detail.clone(), json!({ "ok": true, "detail": detail })));
        }
    }
    let file = load_file(source)?;
    let v = verify_file(&file)?;
    Ok(Report::new(if v.ok { OK } else { FAILED }, v.detail.clone(), json!({ "ok": v.ok, "detail": v.detail })))
}

fn summarize(e: &CatalogEntry) -> String {
    match &e.payload {
        Payload::File(f) => {
            let group = f.group.build().map(|g| g.to_string()).unwrap_or_else(|_| "?".into());
            let mut s = format!("{group}, k = {}, {} blocks", f.params.k, f.blocks.len());
            if let Some(mu) = f.params.mu {
                s += &format!(", mu = {mu}");
            }
            s
        }
        Payload::Permutation { points, cycles } => format!("permutation on {points} points {cycles}"),
        Payload::Polynomial(f) => format!("modulus {:?} over F_{}, degree {}", f.modulus, f.p, f.e),
    }
}

fn entry_json(e: &CatalogEntry) -> Value {
    json!({
        "id": e.id,
        "kind": e.kind.as_str(),
        "provenance": e.provenance,
        "declared_type": e.declared_type,
        "type_checked": e.type_checked(),
        "summary": summarize(e),
    })
}

fn catalog(cmd: &CatalogCmd) -> CmdResult {
    match cmd {
        CatalogCmd::List { kind } => {
            let kind = kind.as_deref().map(str::parse::<EntryKind>).transpose()?;
            let entries = catalog_list(kind);
            let text =
                entries.iter().map(|e| format!("{:<26} {:<14} {}", e.id, e.kind, summarize(e))).collect::<Vec<_>>();
            Ok(Report::new(OK, text.join("\n"), Value::Array(entries.iter().map(|e| entry_json(e)).collect())))
        }
        CatalogCmd::Show { id } => {
            let e = catalog_get(id)?;
            let typ = match e.declared_type {
                Some(d) if e.type_checked() => format!("type {d} (checked)\n"),
                Some(d) => format!("type {d} (label only)\n"),
                None => String::new(),
            };
            let text =
                format!("{}\n{}\n{}provenance: {}\n{}", e.id, summarize(&e), typ, e.provenance, e.to_json().trim_end());
            let mut j = entry_json(&e);
            j["payload"] = serde_json::from_str(&e.to_json()).unwrap_or(Value::Null);
            Ok(Report::new(OK, text, j))
        }
        CatalogCmd::Export { id, out } => {
            let e = catalog_get(id)?;
            let body = e.to_json();
            match out {
                Some(path) => {
                    write_out(path, &body)?;
                    let msg = format!("wrote {id} to {}", path.display());
                    Ok(Report::new(OK, msg, json!({ "ok": true, "id": id, "path": path })))
                }
                None => Ok(Report::new(OK, body.trim_end(), serde_json::from_str(&body).unwrap_or(Value::Null))),
            }
        }
    }
}

fn field_for(a: &LiftArgs) -> std::result::Result<FiniteField, Malformed> {
    match (&a.modulus, a.p, a.e) {
        (None, None, None) => Ok(FiniteField::of_order(a.q)?),
        (Some(m), Some(p), Some(e)) => {
            let f = FiniteField::new(p, e, Some(m))?;
            if f.order() != a.q {
                return Err(Malformed(format!("{p}^{e} != q = {}", a.q)));
            }
            Ok(f)
        }
        _ => Err(Malformed("--modulus needs --p and --e".into())),
    }
}

fn lift(a: &LiftArgs) -> CmdResult {
    let mut s = load_sdf(&a.sdf)?;
    if s.type2.is_none() {
        s.type2 = infer_type2_pattern(&s);
    }
    if s.type4.is_none() {
        s.type4 = infer_type4_pattern(&s);
    }
    let field = Arc::new(field_for(a)?);
    let d = a.type_d.unwrap_or(if s.type4.is_some() { 4 } else { 2 });
    let template = match d {
        2 => build_type2_template(&s)?,
        4 => build_type4_template(&s, &field)?,
        _ => return Err(Malformed(format!("templates exist for types 2 and 4, not {d}"))),
    };
    let opts = SolverOptions { seed: a.seed, threads: a.threads, node_budget: a.budget, ..Default::default() };
    let report = solve_assignment_with(&template, field.clone(), &opts)?;
    let name = format!("({}, {}, {})-SDF over F_{}", s.group, s.k, s.mu, field.order());
    let nodes = report.nodes;
    Ok(match report.outcome {
        SolveOutcome::Unsat => Report::new(
            FAILED,
            format!("{name}: UNSAT, fully explored ({nodes} nodes)"),
            json!({ "outcome": "unsat", "nodes": nodes }),
        ),
        SolveOutcome::Unknown => Report::new(
            UNKNOWN,
            format!("{name}: UNKNOWN, budget exhausted after {nodes} nodes"),
            json!({ "outcome": "unknown", "nodes": nodes }),
        ),
        SolveOutcome::Sat { values, witness } => {
            if !verify_type_witness(&witness, &s, d) {
                return Ok(Report::new(
                    FAILED,
                    format!("{name}: witness fails the type-{d} check"),
                    json!({ "outcome": "invalid" }),
                ));
            }
            let df = lift_to_df(&witness, d)?;
            let ok = verify_relative_df(&df)?.is_ok();
            if let Some(path) = &a.witness_out {
                write_out(path, &DesignFile::from_witness(&witness).to_json())?;
            }
            let file = DesignFile::from_df(&df);
            if let Some(path) = &a.out {
                write_out(path, &file.to_json())?;
            }
            let text = format!(
                "{name}: witness found ({nodes} nodes), lifted to {} base blocks, DF {}",
                df.blocks.len(),
                if ok { "verified" } else { "FAILS verification" }
            );
            Report::new(
                if ok { OK } else { FAILED },
                text,
                json!({ "outcome": "sat", "nodes": nodes, "values": values, "verified": ok, "blocks": df.blocks.len() }),
            )
        }
    })
}

/// Writes or prints a constructed design file.
fn emit(file: &DesignFile, out: &Out, summary: String, fmt: Format) -> CmdResult {
    let body = file.to_json();
    match &out.out {
        Some(path) => {
            write_out(path, &body)?;
            Ok(Report::new(OK, summary.clone(), json!({ "ok": true, "summary": summary, "path": path })))
        }
        None if fmt == Format::Json => {
            let f: Value = serde_json::from_str(&body).unwrap_or(Value::Null);
            Ok(Report::new(OK, String::new(), json!({ "ok": true, "summary": summary, "file": f })))
        }
        None => {
            eprintln!("{summary}");
            Ok(Report::new(OK, body.trim_end(), Value::Null))
        }
    }
}

fn sdf_summary(s: &StrongDifferenceFamily) -> String {
    format!("verified ({}, {}, {})-SDF with {} base blocks", s.group, s.k, s.mu, s.blocks.len())
}

fn load_df(source: &str) -> std::result::Result<RelativeDifferenceFamily, Malformed> {
    Ok(load_file(source)?.to_df()?)
}

fn default_rotational_df(q: u32) -> std::result::Result<RelativeDifferenceFamily, Malformed> {
    if q == 7 {
        return Ok(catalog_get("df/30x7-6")?.df()?);
    }
    let s = catalog_get("sdf/z30-6-6")?.sdf()?;
    let field = Arc::new(FiniteField::of_order(q)?);
    let t = build_type2_template(&s)?;
    let report = solve_assignment_with(&t, field, &SolverOptions::default())?;
    let w = report.witness().ok_or_else(|| Malformed(format!("no type-2 witness for (Z30, 6, 6) at q = {q}")))?;
    Ok(lift_to_df(w, 2)?)
}

fn construct(cmd: &ConstructCmd, fmt: Format) -> CmdResult {
    let sdf = |s: StrongDifferenceFamily, out: &Out| emit(&DesignFile::from_sdf(&s), out, sdf_summary(&s), fmt);
    match cmd {
        ConstructCmd::Paley1 { p, out } => sdf(paley_sdf_1(*p)?, out),
        ConstructCmd::Paley2 { p, out } => sdf(paley_sdf_2(*p)?, out),
        ConstructCmd::Paley3 { p, out } => sdf(paley_sdf_3(*p)?, out),
        ConstructCmd::Twinprime { p, out } => sdf(twin_prime_sdf(*p)?, out),
        ConstructCmd::Singer { p, d, out } => sdf(singer_sdf(*p, *d)?, out),
        ConstructCmd::Z446p { p, out } => sdf(z4_4_6p(*p)?, out),
        ConstructCmd::GddDev { df, out } => {
            let df = load_df(df)?;
            let design = develop(&df)?;
            let verdict = verify_gdd(&design, &[df.k]);
            let summary = format!("{}-GDD of type {} on {} points", df.k, design.type_string(), design.points);
            if let Err(v) = verdict {
                return Ok(Report::new(
                    FAILED,
                    format!("{summary} fails: {v}"),
                    json!({ "ok": false, "detail": v.to_string() }),
                ));
            }
            emit(&DesignFile::from_design(&design, df.k), out, format!("verified {summary}"), fmt)
        }
        ConstructCmd::RotationalBibd { q, r, df, out } => {
            let df = match df {
                Some(src) => load_df(src)?,
                None => default_rotational_df(*q)?,
            };
            let plane = catalog_get("bibd/31-6-1")?.design()?;
            let rho_id = if *r == 6 { "aut/31-6-1-order5" } else { "aut/31-6-1-order3" };
            let rho = catalog_get(rho_id)?.permutation()?;
            let rb = rotational_bibd(*q, *r, &df, &plane, &rho)?;
            let ok = verify_bibd(&rb.design, 6).is_ok();
            let cycles = cycle_structure(&rb.gamma);
            let summary = format!(
                "{r}-rotational ({}, 6, 1)-BIBD {}, automorphism cycle lengths {} x {} plus one fixed point",
                rb.design.points,
                if ok { "verified" } else { "FAILS verification" },
                cycles.len() - 1,
                cycles.last().copied().unwrap_or(0)
            );
            if !ok {
                return Ok(Report::new(FAILED, summary, json!({ "ok": false })));
            }
            emit(&DesignFile::from_design(&rb.design, 6), out, summary, fmt)
        }
        ConstructCmd::OocCompose { df, filler, out } => {
            let df = load_df(df)?;
            let filler = load_file(filler)?.to_ooc()?;
            let code = compose_ooc(&df, &filler)?;
            let report = verify_ooc(&code);
            let summary = format!(
                "optimal ({}, {}, 1)-OOC with {} codewords and {} missing differences{}",
                code.v,
                code.k,
                code.codewords.len(),
                report.missing.len(),
                if is_optimal_ooc(&code) { "" } else { " (NOT optimal)" }
            );
            emit(&DesignFile::from_ooc(&code), out, summary, fmt)
        }
    }
}

fn parse_group(spec: &str) -> std::result::Result<AbelianGroup, Malformed> {
    let mut orders = Vec::new();
    let mut field = None;
    for part in spec.split([',', 'x', '×']).map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Malformed(format!("bad group factor `{part}`; use Zn or Fq"));
        let (tag, n) = part.split_at(1);
        let n: u32 = n.parse().map_err(|_| bad())?;
        match tag {
            "Z" | "z" => orders.push(n),
            "F" | "f" if field.is_none() => field = Some(Arc::new(FiniteField::of_order(n)?)),
            _ => return Err(bad()),
        }
    }
    let g = AbelianGroup::product(&orders)?;
    Ok(match field {
        Some(f) => g.with_field(f)?,
        None => g,
    })
}

fn outcome_report<T>(
    what: &str,
    outcome: SearchOutcome<T>,
    nodes: u64,
    found: impl Fn(&T) -> (String, Value),
) -> Report {
    match outcome {
        SearchOutcome::Found(x) => {
            let (text, j) = found(&x);
            Report::new(
                OK,
                format!("{what}: found ({nodes} nodes)\n{text}"),
                json!({ "outcome": "found", "nodes": nodes, "result": j }),
            )
        }
        SearchOutcome::NoneFullyExplored => Report::new(
            FAILED,
            format!("{what}: NONE, fully explored ({nodes} nodes)"),
            json!({ "outcome": "none", "fully_explored": true, "nodes": nodes }),
        ),
        SearchOutcome::Unknown => Report::new(
            UNKNOWN,
            format!("{what}: UNKNOWN, budget exhausted after {nodes} nodes"),
            json!({ "outcome": "unknown", "nodes": nodes }),
        ),
    }
}

fn search(cmd: &SearchCmd) -> CmdResult {
    let opts = |a: &SearchArgs| SearchOptions { node_budget: a.budget, threads: a.threads };
    match cmd {
        SearchCmd::Ooc { v, k, count, opts: a } => {
            let r = search_ooc_exhaustive(*v, *k, *count, &opts(a))?;
            Ok(outcome_report(&format!("({v}, {k}, 1)-OOC with {count} codeword"), r.outcome, r.nodes, |w| {
                (format!("{w:?}"), json!(w))
            }))
        }
        SearchCmd::Df { group, k, opts: a } => {
            let g = parse_group(group)?;
            let forbidden = if g.field().is_some() { field_fiber_subgroup(&g) } else { vec![0] };
            let r = search_relative_df_exhaustive(&g, &forbidden, *k, &opts(a))?;
            let what = format!("({g}, |N| = {}, {k}, 1)-DF", forbidden.len());
            Ok(outcome_report(&what, r.outcome, r.nodes, |df| {
                let f = DesignFile::from_df(df);
                (f.to_json().trim_end().to_string(), serde_json::from_str(&f.to_json()).unwrap_or(Value::Null))
            }))
        }
    }
}

fn qbound_cmd(d: u32, m: u32) -> CmdResult {
    if d == 0 || m == 0 {
        return Err(Malformed("qbound needs d, m >= 1".into()));
    }
    let q = qbound(d, m);
    let exact = q.exact_integer().map(|n| n.to_string());
    let text = match &exact {
        Some(n) => n.clone(),
        None => format!("{:.6}", q.to_f64()),
    };
    let j = json!({
        "d": d, "m": m, "u": q.u.to_string(), "radicand": q.radicand.to_string(),
        "exact": exact, "approx": q.to_f64(),
    });
    Ok(Report::new(OK, text, j))
}

fn fixperm_cmd(r: usize, a: usize, alpha: &str) -> CmdResult {
    let perm = Permutation::parse_cycles(alpha, r as u32)?;
    let alpha: Vec<usize> = perm.images().iter().map(|&x| x as usize).collect();
    let pi = fix_permutation(r, a, &alpha)?;
    let text = pi.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ");
    Ok(Report::new(OK, text, json!({ "pi": pi })))
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Verify { source } => verify(source),
        Command::Catalog(c) => catalog(c),
        Command::Lift(a) => lift(a),
        Command::Construct(c) => construct(c, cli.format),
        Command::Search(s) => search(s),
        Command::Qbound { d, m } => qbound_cmd(*d, *m),
        Command::Fixperm { r, a, alpha } => fixperm_cmd(*r, *a, alpha),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = run(&cli)
        .unwrap_or_else(|Malformed(why)| Report::new(MALFORMED, format!("error: {why}"), json!({ "error": why })));
    match cli.format {
        Format::Json if !report.json.is_null() => println!("{}", report.json),
        Format::Text if report.code == MALFORMED => eprintln!("{}", report.text),
        _ if !report.text.is_empty() => println!("{}", report.text),
        _ => {}
    }
    ExitCode::from(report.code)
}
