//! Command-line front end: load an algebra description, run enumerations,
//! closure computations, and verification suites, and emit deterministic
//! text, JSON, or DOT reports.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use siltlab::context::{Context, MAX_SKELETON};
use siltlab::cotorsion::{self, enumerate_cotorsion_pairs, pair_leq, verify_thm2};
use siltlab::error::Error;
use siltlab::lemmas::verify_lemmas;
use siltlab::report::Report;
use siltlab::silting::{
    enumerate_silting, verify_ar, verify_frobenius, verify_silting_order, verify_thm1,
    verify_thm3,
};
use siltlab::specfile::load_algebra_spec;
use siltlab::subcat::{self, Subcategory};

#[derive(Parser)]
#[command(
    name = "siltlab",
    about = "Exact-category structure on module categories of representation-finite \
             path algebras: Ext tables, cotorsion-pair and silting enumeration, and \
             exhaustive verification of the correspondences between them."
)]
struct Cli {
    /// Algebra description file (TOML).
    #[arg(long, global = true)]
    spec: Option<PathBuf>,

    /// Multiplicity bound for the bounded search operators (star, thick).
    #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u32).range(1..))]
    mult_bound: u32,

    /// Refuse algebras with more indecomposables than this.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u32).range(1..=MAX_SKELETON as i64))]
    max_skeleton: u32,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads (also settable via SILTLAB_THREADS).
    #[arg(long)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize the algebra: dimensions, global dimension, skeleton.
    Info,
    /// Print Hom and Ext dimension tables over the skeleton.
    ExtTable,
    /// Enumerate cotorsion pairs or silting subcategories.
    Enumerate(EnumerateArgs),
    /// Compute a closure or orthogonal of a named additive subcategory.
    Closure(ClosureArgs),
    /// Run a verification suite; exit 0 only if every check passes.
    Verify(VerifyArgs),
    /// Print the cotorsion-pair poset (Hasse diagram with --emit-dot).
    Poset {
        #[arg(long)]
        emit_dot: bool,
    },
}

#[derive(Args)]
struct EnumerateArgs {
    #[arg(value_enum)]
    what: EnumerateWhat,
    /// Keep only hereditary cotorsion pairs.
    #[arg(long)]
    hereditary: bool,
    /// Keep only pairs with vanishing degree-2 extensions.
    #[arg(long)]
    s: bool,
    /// Keep only bounded cotorsion pairs.
    #[arg(long)]
    bounded: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EnumerateWhat {
    Cotorsion,
    Silting,
}

#[derive(Args)]
struct ClosureArgs {
    #[arg(value_enum)]
    kind: ClosureKind,
    /// Comma-separated indecomposable names, e.g. --members P1,P2.
    #[arg(long, value_delimiter = ',', required = true)]
    members: Vec<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClosureKind {
    /// Iterated-cone tower of X.
    Hat,
    /// Iterated-cocone tower of X.
    Check,
    /// Smallest thick subcategory containing X.
    Thick,
    /// check(hat(X)).
    Tilde,
    /// Higher-degree orthogonals of X on both sides.
    Perp,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// RNG seed for the randomized conflation checks (lemmas suite).
    #[arg(long, default_value_t = 7)]
    seed: u64,
    /// Number of random conflations to exercise (lemmas suite).
    #[arg(long, default_value_t = 100)]
    conflations: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Thm1,
    Thm2,
    Thm3,
    Ar,
    Frobenius,
    Lemmas,
}

/// Exit codes: 0 success, 1 verification failure, 2 input/contract error,
/// 3 indeterminate (a search bound truncated the computation).
fn code_of(e: &Error) -> u8 {
    match e {
        Error::Indeterminate(_) => 3,
        _ => 2,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let threads = cli
        .threads
        .or_else(|| std::env::var("SILTLAB_THREADS").ok().and_then(|s| s.parse().ok()));
    if let Some(n) = threads {
        // Ignore failure: the global pool can only be configured once.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(code_of(&e))
        }
    }
}

fn load_context(cli: &Cli) -> siltlab::Result<Context> {
    let path = cli.spec.as_ref().ok_or_else(|| {
        Error::Parse("no algebra given: pass --spec <file>".into())
    })?;
    let alg = load_algebra_spec(path)?;
    let ctx = Context::new(alg)?;
    if ctx.skeleton_size() > cli.max_skeleton as usize {
        return Err(Error::Contract(format!(
            "skeleton has {} indecomposables, above the requested cap {}",
            ctx.skeleton_size(),
            cli.max_skeleton
        )));
    }
    Ok(ctx)
}

fn run(cli: &Cli) -> siltlab::Result<u8> {
    let ctx = load_context(cli)?;
    let bound = cli.mult_bound as usize;
    match &cli.command {
        Command::Info => cmd_info(&ctx, cli.format),
        Command::ExtTable => cmd_ext_table(&ctx, cli.format),
        Command::Enumerate(args) => cmd_enumerate(&ctx, cli, args),
        Command::Closure(args) => cmd_closure(&ctx, cli.format, bound, args),
        Command::Verify(args) => cmd_verify(&ctx, cli.format, bound, args),
        Command::Poset { emit_dot } => cmd_poset(&ctx, cli.format, *emit_dot),
    }
}

fn emit_json<T: Serialize>(value: &T) -> siltlab::Result<u8> {
    println!(
        "{}",
        serde_json::to_string_pretty(value)
            .map_err(|e| Error::Contract(format!("serialization failed: {e}")))?
    );
    Ok(0)
}

#[derive(Serialize)]
struct IndecSummary {
    name: String,
    aliases: Vec<String>,
    dims: Vec<usize>,
    pd: Option<usize>,
    id: Option<usize>,
}

#[derive(Serialize)]
struct InfoSummary {
    field_modulus: u32,
    vertices: usize,
    algebra_dimension: usize,
    global_dimension: Option<usize>,
    skeleton: Vec<IndecSummary>,
    projectives: Vec<String>,
    injectives: Vec<String>,
}

fn info_summary(ctx: &Context) -> InfoSummary {
    let t = ctx.table();
    let skeleton = (0..ctx.skeleton_size())
        .map(|i| IndecSummary {
            name: ctx.name(i).to_string(),
            aliases: ctx.data.aliases[i].clone(),
            dims: ctx.data.indecs[i].dims.clone(),
            pd: t.pd(i),
            id: t.id(i),
        })
        .collect();
    InfoSummary {
        field_modulus: ctx.data.alg.p,
        vertices: ctx.data.alg.vertex_count(),
        algebra_dimension: ctx.data.alg.dim(),
        global_dimension: ctx.global_dimension(),
        skeleton,
        projectives: ctx.data.projectives.iter().map(|&i| ctx.name(i).to_string()).collect(),
        injectives: ctx.data.injectives.iter().map(|&i| ctx.name(i).to_string()).collect(),
    }
}

fn cmd_info(ctx: &Context, format: Format) -> siltlab::Result<u8> {
    let s = info_summary(ctx);
    if format == Format::Structured {
        return emit_json(&s);
    }
    println!(
        "algebra over F_{}: {} vertices, dimension {}, global dimension {}",
        s.field_modulus,
        s.vertices,
        s.algebra_dimension,
        s.global_dimension.map_or("infinite".to_string(), |d| d.to_string())
    );
    println!("skeleton ({} indecomposables):", s.skeleton.len());
    for m in &s.skeleton {
        let alias = if m.aliases.is_empty() {
            String::new()
        } else {
            format!(" (= {})", m.aliases.join(" = "))
        };
        println!(
            "  {}{alias}: dims {:?}, pd {}, id {}",
            m.name,
            m.dims,
            m.pd.map_or("inf".to_string(), |d| d.to_string()),
            m.id.map_or("inf".to_string(), |d| d.to_string())
        );
    }
    println!("projectives: {}", s.projectives.join(", "));
    println!("injectives:  {}", s.injectives.join(", "));
    Ok(0)
}

#[derive(Serialize)]
struct ExtTableOut {
    names: Vec<String>,
    /// hom[i][j] = dim Hom(indec i, indec j).
    hom: Vec<Vec<usize>>,
    /// ext[k-1][i][j] = dim Ext^k(indec i, indec j) for k = 1, 2, 3.
    ext: Vec<Vec<Vec<usize>>>,
}

fn cmd_ext_table(ctx: &Context, format: Format) -> siltlab::Result<u8> {
    let n = ctx.skeleton_size();
    let t = ctx.table();
    let names: Vec<String> = (0..n).map(|i| ctx.name(i).to_string()).collect();
    let hom: Vec<Vec<usize>> =
        (0..n).map(|i| (0..n).map(|j| t.hom[i][j]).collect()).collect();
    let ext: Vec<Vec<Vec<usize>>> = (1..=3)
        .map(|k| (0..n).map(|i| (0..n).map(|j| t.ext_k(i, j, k)).collect()).collect())
        .collect();
    let out = ExtTableOut { names, hom, ext };
    if format == Format::Structured {
        return emit_json(&out);
    }
    let width = out.names.iter().map(|s| s.len()).max().unwrap_or(2).max(2);
    let header = |title: &str| {
        println!("{title}");
        print!("{:width$} ", "");
        for nm in &out.names {
            print!("{nm:>width$} ");
        }
        println!();
    };
    let table = |rows: &Vec<Vec<usize>>| {
        for (i, row) in rows.iter().enumerate() {
            print!("{:>width$} ", out.names[i]);
            for v in row {
                print!("{v:>width$} ");
            }
            println!();
        }
    };
    header("Hom dimensions (row = source, column = target):");
    table(&out.hom);
    for (k, m) in out.ext.iter().enumerate() {
        header(&format!("Ext^{} dimensions:", k + 1));
        table(m);
    }
    Ok(0)
}

fn cmd_enumerate(ctx: &Context, cli: &Cli, args: &EnumerateArgs) -> siltlab::Result<u8> {
    match args.what {
        EnumerateWhat::Cotorsion => {
            let poset = enumerate_cotorsion_pairs(ctx)?;
            let kept: Vec<_> = poset
                .pairs
                .iter()
                .filter(|p| {
                    (!args.hereditary || p.is_hereditary == Some(true))
                        && (!args.s || p.is_s == Some(true))
                        && (!args.bounded || p.is_bounded == Some(true))
                })
                .collect();
            if cli.format == Format::Structured {
                let out: Vec<_> = kept.iter().map(|p| p.summary()).collect();
                return emit_json(&out);
            }
            println!("{} cotorsion pair(s):", kept.len());
            for p in kept {
                let s = p.summary();
                let flag = |v: Option<bool>| match v {
                    Some(true) => "yes",
                    Some(false) => "no",
                    None => "unresolved",
                };
                println!(
                    "  (add{{{}}}, add{{{}}})  s: {}, hereditary: {}, bounded: {}",
                    s.x.join(","),
                    s.y.join(","),
                    flag(s.is_s),
                    flag(s.is_hereditary),
                    flag(s.is_bounded)
                );
            }
            Ok(0)
        }
        EnumerateWhat::Silting => {
            let records = enumerate_silting(ctx, cli.mult_bound as usize)?;
            if cli.format == Format::Structured {
                #[derive(Serialize)]
                struct SiltingOut {
                    members: Vec<String>,
                    pd_bound: Option<usize>,
                    decided_exactly: bool,
                }
                let out: Vec<_> = records
                    .iter()
                    .map(|r| SiltingOut {
                        members: r.m.member_names(),
                        pd_bound: r.pd_bound,
                        decided_exactly: r.via_char,
                    })
                    .collect();
                return emit_json(&out);
            }
            println!("{} silting subcategor(ies):", records.len());
            for r in &records {
                println!(
                    "  add{{{}}}  max pd {}",
                    r.m.member_names().join(","),
                    r.pd_bound.map_or("inf".to_string(), |d| d.to_string())
                );
            }
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct ClosureOut {
    input: Vec<String>,
    results: Vec<(String, Vec<String>)>,
    bound_limited: bool,
}

fn cmd_closure(
    ctx: &Context,
    format: Format,
    bound: usize,
    args: &ClosureArgs,
) -> siltlab::Result<u8> {
    let names: Vec<&str> = args.members.iter().map(|s| s.as_str()).collect();
    let x = Subcategory::from_names(ctx, &names)?;
    let mut results: Vec<(String, Vec<String>)> = Vec::new();
    let mut bound_limited = false;
    match args.kind {
        ClosureKind::Hat => {
            let o = subcat::hat(&x)?;
            results.push(("hat".into(), o.sub.member_names()));
        }
        ClosureKind::Check => {
            let o = subcat::check(&x)?;
            results.push(("check".into(), o.sub.member_names()));
        }
        ClosureKind::Tilde => {
            let o = subcat::tilde(&x)?;
            results.push(("tilde".into(), o.sub.member_names()));
        }
        ClosureKind::Thick => {
            let o = subcat::thick_closure(&x, bound)?;
            bound_limited = o.bound_limited;
            results.push(("thick".into(), o.sub.member_names()));
        }
        ClosureKind::Perp => {
            results.push(("left_perp".into(), subcat::left_perp(&x)?.member_names()));
            results.push(("right_perp".into(), subcat::right_perp(&x)?.member_names()));
        }
    }
    let out = ClosureOut { input: x.member_names(), results, bound_limited };
    if format == Format::Structured {
        emit_json(&out)?;
    } else {
        for (label, members) in &out.results {
            println!("{label}(add{{{}}}) = add{{{}}}", out.input.join(","), members.join(","));
        }
        if out.bound_limited {
            println!("warning: result truncated by the multiplicity bound (indeterminate)");
        }
    }
    Ok(if out.bound_limited { 3 } else { 0 })
}

/// Verify the interval correspondence over every comparable ordered pair of
/// s-cotorsion-pair endpoints in the poset.
fn thm2_over_poset(ctx: &Context, bound: usize) -> siltlab::Result<Report> {
    let poset = enumerate_cotorsion_pairs(ctx)?;
    let mut rep = Report::new("interval correspondence over all comparable endpoint pairs");
    let mut intervals = 0usize;
    for a in &poset.pairs {
        for b in &poset.pairs {
            if a.is_s != Some(true) || b.is_s != Some(true) || !pair_leq(a, b) {
                continue;
            }
            intervals += 1;
            let label = format!("[{a:?} .. {b:?}]");
            let sub = verify_thm2(ctx, a, b, bound)?;
            rep.absorb(&label, sub);
        }
    }
    rep.note(format!("{intervals} comparable ordered pair(s) of s-cotorsion pairs"));
    Ok(rep)
}

fn cmd_verify(
    ctx: &Context,
    format: Format,
    bound: usize,
    args: &VerifyArgs,
) -> siltlab::Result<u8> {
    let report = match args.suite {
        Suite::Thm1 => verify_thm1(ctx, bound)?,
        Suite::Thm2 => thm2_over_poset(ctx, bound)?,
        Suite::Thm3 => verify_thm3(ctx, bound)?,
        Suite::Ar => verify_ar(ctx, bound)?,
        Suite::Frobenius => verify_frobenius(ctx, bound)?,
        Suite::Lemmas => {
            let mut rep = verify_lemmas(ctx, bound, args.seed, args.conflations)?;
            rep.absorb("silting order", verify_silting_order(ctx, bound)?);
            rep
        }
    };
    if format == Format::Structured {
        emit_json(&report)?;
    } else {
        print!("{}", report.render_text());
    }
    Ok(if report.passed() { 0 } else { 1 })
}

fn cmd_poset(ctx: &Context, format: Format, emit_dot: bool) -> siltlab::Result<u8> {
    let poset = enumerate_cotorsion_pairs(ctx)?;
    if emit_dot || format == Format::Dot {
        print!("{}", poset.to_dot());
        return Ok(0);
    }
    if format == Format::Structured {
        #[derive(Serialize)]
        struct PosetOut {
            pairs: Vec<cotorsion::PairSummary>,
            hasse_edges: Vec<(usize, usize)>,
        }
        return emit_json(&PosetOut {
            pairs: poset.pairs.iter().map(|p| p.summary()).collect(),
            hasse_edges: poset.hasse_edges(),
        });
    }
    println!("{} cotorsion pair(s); covering relations:", poset.pairs.len());
    for (i, j) in poset.hasse_edges() {
        println!("  {:?} < {:?}", poset.pairs[i], poset.pairs[j]);
    }
    Ok(0)
}
