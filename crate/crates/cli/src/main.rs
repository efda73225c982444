//! `klrel`: group facts, orbit tables and relation verification from the
//! command line.
//!
//! Exit codes: 0 all checks pass, 1 numerical failure, 2 structural or count
//! mismatch, 3 usage or I/O error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use klrel::classification::{orbits, Composition, Family, OrbitReport, TypeSymbol};
use klrel::group::{generators, gk_generators, gl_generators, structure, subgroup, Generator, GroupElement, Side};
use klrel::relations::{
    catalog, find, random_transports, relative_residual, report_from, structural_violations, Relation, Sampler,
    VerificationReport, DEFAULT_TOLERANCE,
};
use klrel::series::SeriesOptions;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_NUMERICAL: u8 = 1;
const EXIT_STRUCTURAL: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(name = "klrel", version, about = "Three-term relations for the K and L hypergeometric functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Group orders, coset counts, central involution and Coxeter relations.
    GroupInfo(OutputArgs),
    /// Orbits of M on a family of three-element coset sets.
    Orbits {
        /// One of K3, L3, KL2, LK2, T3.
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Numerically verify catalog relations and random transports of them.
    Verify(VerifyArgs),
    /// List the relation catalog with coefficients.
    Catalog(OutputArgs),
    /// Write the group and coset tables as JSON.
    DumpTables {
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Verify every catalog relation.
    #[arg(long, conflicts_with = "family")]
    all: bool,
    /// Verify one catalog relation by name, e.g. Orbit7_LKK.
    #[arg(long)]
    family: Option<String>,
    #[arg(long, default_value_t = 25, value_parser = clap::value_parser!(u32).range(1..))]
    points: u32,
    #[arg(long, default_value_t = DEFAULT_TOLERANCE, value_parser = positive)]
    tolerance: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Also verify this many randomly transported relations.
    #[arg(long, default_value_t = 0)]
    transport: usize,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("{s:?} is not a positive number")),
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn new(code: u8, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }
}

/// Rendered output plus the exit code it implies.
struct Outcome {
    text: String,
    code: u8,
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce() -> String) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => text(),
    }
}

fn emit(output: &Option<PathBuf>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct GroupInfo {
    order: usize,
    gk_order: usize,
    gl_order: usize,
    gk_cosets: usize,
    gl_cosets: usize,
    w0: String,
    w0_central: bool,
    w0_involution: bool,
    coxeter_pairs: usize,
    coxeter_pairs_holding: usize,
}

impl GroupInfo {
    fn healthy(&self) -> bool {
        self.order == 23_040
            && self.gk_order == 720
            && self.gl_order == 1920
            && self.gk_cosets == 32
            && self.gl_cosets == 12
            && self.w0_central
            && self.w0_involution
            && self.coxeter_pairs_holding == self.coxeter_pairs
    }
}

fn group_info() -> Result<GroupInfo, Failure> {
    let st = structure();
    let order_of = |gens: &[GroupElement]| {
        subgroup(gens).map(|g| g.len()).map_err(|e| Failure::new(EXIT_STRUCTURAL, e.to_string()))
    };
    let (gk_order, gl_order) = (order_of(&gk_generators())?, order_of(&gl_generators())?);
    let w0 = st.w0();
    let identity = GroupElement::identity();
    let mut pairs = 0;
    let mut holding = 0;
    for (n, &i) in Generator::ALL.iter().enumerate() {
        for &j in &Generator::ALL[n + 1..] {
            let m = i.coxeter_m(j);
            let prod = i.element().mul(&j.element());
            pairs += 1;
            if prod.pow(m) == identity && (1..m).all(|k| prod.pow(k) != identity) {
                holding += 1;
            }
        }
    }
    Ok(GroupInfo {
        order: st.order(),
        gk_order,
        gl_order,
        gk_cosets: st.order() / gk_order,
        gl_cosets: st.order() / gl_order,
        w0: w0.to_string(),
        w0_central: generators().iter().all(|g| w0.mul(g) == g.mul(w0)),
        w0_involution: *w0 != identity && w0.mul(w0) == identity,
        coxeter_pairs: pairs,
        coxeter_pairs_holding: holding,
    })
}

fn cmd_group_info(args: &OutputArgs) -> Result<Outcome, Failure> {
    let info = group_info()?;
    let text = render(args.format, &info, || {
        let yes = |b: bool| if b { "yes" } else { "NO" };
        format!(
            "|M| = {}\n|G_K| = {}\n|G_L| = {}\ncosets(G_K) = {}\ncosets(G_L) = {}\nw0 = {}\nw0 central: {}\nw0 involution: {}\nCoxeter relations: {}/{} hold\n",
            info.order,
            info.gk_order,
            info.gl_order,
            info.gk_cosets,
            info.gl_cosets,
            info.w0,
            yes(info.w0_central),
            yes(info.w0_involution),
            info.coxeter_pairs_holding,
            info.coxeter_pairs
        )
    });
    Ok(Outcome { text, code: if info.healthy() { 0 } else { EXIT_STRUCTURAL } })
}

/// Compares a report with the known orbit tables.
fn orbit_mismatch(report: &OrbitReport) -> Option<String> {
    let mut sizes: Vec<usize> = report.orbits.iter().map(|o| o.size).collect();
    sizes.sort();
    let expected: &[usize] = match report.family {
        Family::L3 => &[60, 160],
        Family::KL2 => &[192, 480, 480, 960],
        Family::LK2 => &[192, 480, 480, 960, 960, 960, 1920],
        Family::K3 => {
            let mut types: Vec<TypeSymbol> = report.orbits.iter().map(|o| o.type_symbol).collect();
            types.sort();
            let ok = report.total == 4960 && types == TypeSymbol::ALLOWED;
            return (!ok).then(|| format!("{} sets with types {types:?}, expected 4960 over the five types", report.total));
        }
        Family::T3 => {
            let count = |c: Composition| report.orbits.iter().filter(|o| o.composition == c).count();
            let split =
                [count(Composition::LLL), count(Composition::KLL), count(Composition::LKK), count(Composition::KKK)];
            return (split != [2, 4, 7, 5]).then(|| format!("composition split {split:?}, expected [2, 4, 7, 5]"));
        }
    };
    (sizes != expected).then(|| format!("orbit sizes {sizes:?}, expected {expected:?}"))
}

fn cmd_orbits(family: Family, args: &OutputArgs) -> Result<Outcome, Failure> {
    let report = orbits(family);
    let mismatch = orbit_mismatch(&report);
    let text = render(args.format, &report, || {
        let mut s = format!("{}: {} orbits, {} sets\n", family.name(), report.orbits.len(), report.total);
        for (i, o) in report.orbits.iter().enumerate() {
            let _ = writeln!(s, "{:>3}  {:<18} size {:>5}  type {}  {:?}", i + 1, o.representative, o.size, o.type_symbol, o.composition);
        }
        s
    });
    if let Some(m) = &mismatch {
        eprintln!("mismatch: {m}");
    }
    Ok(Outcome { text, code: if mismatch.is_some() { EXIT_STRUCTURAL } else { 0 } })
}

fn sweep(r: &Relation, points: usize, seed: u64, tolerance: f64) -> Result<VerificationReport, Failure> {
    let sample = Sampler::for_relations([r])
        .sample_many(points, seed)
        .map_err(|e| Failure::new(EXIT_NUMERICAL, format!("{}: {e}", r.family)))?;
    let opts = SeriesOptions::default();
    let outcomes: Vec<_> = sample.par_iter().map(|x| relative_residual(r, x, &opts)).collect();
    Ok(report_from(r, &outcomes, tolerance))
}

#[derive(Serialize)]
struct TransportReport {
    /// Index of `ρ` in the enumeration of M.
    element: usize,
    report: VerificationReport,
}

#[derive(Serialize)]
struct VerifySummary {
    seed: u64,
    points: usize,
    tolerance: f64,
    pass: bool,
    relations: Vec<VerificationReport>,
    transports: Vec<TransportReport>,
}

fn report_line(out: &mut String, r: &VerificationReport, suffix: &str) {
    let cosets: Vec<String> = r.cosets.iter().map(|c| c.label()).collect();
    let _ = writeln!(
        out,
        "{} {:<15} type {} {{{}}} max residual {:.2e} at {} points{suffix}",
        if r.pass { "PASS" } else { "FAIL" },
        r.family,
        r.type_symbol,
        cosets.join(","),
        r.max_rel_residual,
        r.points
    );
    for f in &r.failures {
        let _ = writeln!(out, "    point {}: {}", f.index, f.message);
    }
}

fn cmd_verify(args: &VerifyArgs) -> Result<Outcome, Failure> {
    let selected: Vec<&Relation> = match (&args.family, args.all) {
        (Some(name), _) => {
            vec![find(name).ok_or_else(|| Failure::new(EXIT_USAGE, format!("unknown relation {name:?}")))?]
        }
        (None, true) => catalog().iter().collect(),
        (None, false) if args.transport > 0 => vec![],
        (None, false) => return Err(Failure::new(EXIT_USAGE, "give --all, --family NAME or --transport N")),
    };
    let points = args.points as usize;
    let st = structure();
    for r in &selected {
        let v = structural_violations(r);
        if !v.is_empty() {
            return Err(Failure::new(EXIT_STRUCTURAL, format!("{}: {}", r.family, v.join("; "))));
        }
    }
    let relations = selected
        .iter()
        .map(|r| sweep(r, points, args.seed, args.tolerance))
        .collect::<Result<Vec<_>, _>>()?;
    let mut transports = Vec::with_capacity(args.transport);
    for (n, (i, e)) in random_transports(args.transport, args.seed).into_iter().enumerate() {
        let moved = catalog()[i].transport(st.element(e));
        let v = structural_violations(&moved);
        if !v.is_empty() {
            return Err(Failure::new(EXIT_STRUCTURAL, format!("transport of {}: {}", moved.family, v.join("; "))));
        }
        let report = sweep(&moved, points, args.seed.wrapping_add(1 + n as u64), args.tolerance)?;
        transports.push(TransportReport { element: e, report });
    }
    let pass = relations.iter().chain(transports.iter().map(|t| &t.report)).all(|r| r.pass);
    let summary = VerifySummary { seed: args.seed, points, tolerance: args.tolerance, pass, relations, transports };
    let text = render(args.out.format, &summary, || {
        let mut s = String::new();
        for r in &summary.relations {
            report_line(&mut s, r, "");
        }
        for t in &summary.transports {
            report_line(&mut s, &t.report, &format!(" (transported by element {})", t.element));
        }
        let total = summary.relations.len() + summary.transports.len();
        let passed = summary.relations.iter().chain(summary.transports.iter().map(|t| &t.report)).filter(|r| r.pass).count();
        let _ = writeln!(s, "{passed}/{total} relations pass at tolerance {:e}", summary.tolerance);
        s
    });
    Ok(Outcome { text, code: if pass { 0 } else { EXIT_NUMERICAL } })
}

fn cmd_catalog(args: &OutputArgs) -> Result<Outcome, Failure> {
    let relations = catalog();
    let text = render(args.format, &relations, || {
        let mut s = String::new();
        for r in relations {
            let _ = writeln!(s, "{} (type {}, {:?})", r.family, r.type_symbol, r.composition());
            for t in &r.terms {
                let side = if t.coset.side() == Side::K { "K" } else { "L" };
                let _ = writeln!(s, "    {} · {side}[{}]", t.coeff, t.coset);
            }
        }
        s
    });
    Ok(Outcome { text, code: 0 })
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let (outcome, output) = match &cli.command {
        Command::GroupInfo(out) => (cmd_group_info(out)?, &out.output),
        Command::Orbits { family, out } => (cmd_orbits(*family, out)?, &out.output),
        Command::Verify(args) => (cmd_verify(args)?, &args.out.output),
        Command::Catalog(out) => (cmd_catalog(out)?, &out.output),
        Command::DumpTables { output } => (Outcome { text: structure().to_tables().to_json() + "\n", code: 0 }, output),
    };
    emit(output, &outcome.text)?;
    Ok(outcome.code)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
