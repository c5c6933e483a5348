//! Command-line front end. `run` parses arguments, executes one command and
//! returns the process exit code:
//!
//! * `0` success (for `enumerate`: the walk was exhaustive),
//! * `1` usage or IO error,
//! * `2` an enumeration or subtree cap was reached,
//! * `3` an audit or oracle check failed.

use std::ffi::OsString;
use std::fs;
use std::io::{BufReader, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{derived_bounds, symbolic_sc, to_csv, BoundJson};
use crate::catalan::{catalan, catalan_double_prime, catalan_generalized, catalan_prime};
use crate::charging::{
    audit, build_flip_tree, charge, AuditJson, AuditOptions, ChargeJson, ChargingError, FlipTreeError, SupportCache,
    DEFAULT_SUBTREE_CAP,
};
use crate::enumerate::{check_v3_recursion, EnumerateError, EnumerationResult, Enumerator, V3RecursionReport};
use crate::geom::{augment, gen_convex, gen_convex_arc_in_triangle, gen_random, AugmentedPointSet, PointSet};
use crate::number::{decimal_round, mixed, Fraction, Rational};
use crate::polygon::{brute_force_count, count_triangulations, SimplePolygon, BRUTE_FORCE_MAX};
use crate::triangulation::{Fingerprint, Triangulation};

/// Environment variable holding the worker thread count.
pub const THREADS_ENV: &str = "TRICHOR_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CAPPED: i32 = 2;
pub const EXIT_VIOLATION: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "trichor", version, about = "Triangulation enumeration and charging audits")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Dot,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenerateKind {
    /// `n` points in convex position.
    Convex,
    /// `n` points on a convex arc, plus a bounding triangle.
    Arc,
    /// `n` uniform grid points in general position.
    Random,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CatalanKind {
    /// `C_m`.
    C,
    /// `C'_n`.
    C1,
    /// `C''_n`.
    C2,
    /// `C^(r)_n`, arguments `n r`.
    Cr,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    /// Every triangulation with its edges and degrees.
    Triangulations,
    /// The charge of every 3-vint.
    Charges,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a point-set file.
    Generate {
        #[arg(value_enum)]
        kind: GenerateKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count triangulations and tally vertex degrees. A set whose hull is a
    /// triangle is read as already framed; any other set is counted as given
    /// unless `--frame` is passed.
    Enumerate {
        input: PathBuf,
        /// Wrap the set in a bounding triangle, as `audit` and `export` do.
        #[arg(long)]
        frame: bool,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
        /// Include the fingerprint of every triangulation.
        #[arg(long)]
        fingerprints: bool,
    },
    /// Charge every 3-vint of every triangulation and check the invariants.
    Audit {
        input: PathBuf,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
        #[arg(long, default_value_t = DEFAULT_SUBTREE_CAP, value_parser = clap::value_parser!(u64).range(1..))]
        subtree_cap: u64,
        /// Skip the structural rule checks.
        #[arg(long)]
        no_rules: bool,
        /// Skip the degree-3 recursion identity.
        #[arg(long)]
        no_recursion: bool,
    },
    /// Render the flip-tree of a 3-vint.
    Fliptree {
        input: PathBuf,
        /// Fingerprint of the triangulation, as printed by
        /// `enumerate --frame --fingerprints`.
        #[arg(long)]
        triangulation: String,
        /// Index of the degree-3 point.
        #[arg(long)]
        point: usize,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
    },
    /// Print a Catalan-type number.
    Catalan {
        #[arg(value_enum)]
        which: CatalanKind,
        #[arg(required = true, num_args = 1..=2)]
        args: Vec<u32>,
    },
    /// Bounds for other crossing-free structures from a triangulation base.
    Bounds {
        /// Integer, decimal or `p/q`.
        #[arg(long, default_value = "30")]
        base: String,
        /// Also print the spanning-cycle base with `30^(1/4)` kept exact.
        #[arg(long)]
        symbolic: bool,
    },
    /// Count triangulations of a simple polygon.
    PolygonCount {
        input: PathBuf,
        /// Cross-check against ear recursion (small polygons only).
        #[arg(long)]
        brute_force: bool,
    },
    /// Dump per-triangulation or per-3-vint data for external tools.
    Export {
        input: PathBuf,
        #[arg(long, value_enum)]
        what: ExportKind,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        cap: Option<u64>,
    },
}

/// Failure with its exit code and message. `output` is still emitted.
struct Failure {
    code: i32,
    message: String,
    output: Option<String>,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: EXIT_USAGE, message: message.into(), output: None }
    }
}

impl From<EnumerateError> for Failure {
    fn from(e: EnumerateError) -> Self {
        let code = if matches!(e, EnumerateError::CapExceeded(_)) { EXIT_CAPPED } else { EXIT_USAGE };
        Failure { code, message: e.to_string(), output: None }
    }
}

impl From<ChargingError> for Failure {
    fn from(e: ChargingError) -> Self {
        let code = match &e {
            ChargingError::Enumerate(EnumerateError::CapExceeded(_)) => EXIT_CAPPED,
            ChargingError::FlipTree(FlipTreeError::CapExceeded { .. }) => EXIT_CAPPED,
            _ => EXIT_USAGE,
        };
        Failure { code, message: e.to_string(), output: None }
    }
}

type CmdResult = Result<String, Failure>;

/// Parses `args` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(stderr, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(stdout, "{text}");
                EXIT_OK
            };
        }
    };
    if let Err(msg) = configure_threads() {
        let _ = writeln!(stderr, "error: {msg}");
        return EXIT_USAGE;
    }
    let (code, output) = match execute(&cli) {
        Ok(out) => (EXIT_OK, Some(out)),
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            (f.code, f.output)
        }
    };
    if let Some(text) = output {
        if let Err(e) = emit(cli.out.as_deref(), &text, stdout) {
            let _ = writeln!(stderr, "error: {e}");
            return EXIT_USAGE;
        }
    }
    code
}

/// Sizes the global rayon pool from `TRICHOR_THREADS`. A pool that already
/// exists is kept.
fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => stdout.write_all(text.as_bytes()),
    }
}

fn execute(cli: &Cli) -> CmdResult {
    let fmt = cli.format;
    match &cli.command {
        Command::Generate { kind, n, seed } => cmd_generate(*kind, *n, *seed, fmt),
        Command::Enumerate { input, frame, cap, fingerprints } => {
            cmd_enumerate(input, *frame, *cap, *fingerprints, fmt)
        }
        Command::Audit { input, cap, subtree_cap, no_rules, no_recursion } => {
            let opts = AuditOptions {
                enumeration_cap: *cap,
                subtree_cap: *subtree_cap,
                parallel: true,
                check_rules: !no_rules,
            };
            cmd_audit(input, &opts, !no_recursion, fmt)
        }
        Command::Fliptree { input, triangulation, point, cap } => cmd_fliptree(input, triangulation, *point, *cap, fmt),
        Command::Catalan { which, args } => cmd_catalan(*which, args, fmt),
        Command::Bounds { base, symbolic } => cmd_bounds(base, *symbolic, fmt),
        Command::PolygonCount { input, brute_force } => cmd_polygon_count(input, *brute_force, fmt),
        Command::Export { input, what, cap } => cmd_export(input, *what, *cap, fmt),
    }
}

fn pick(fmt: Option<Format>, default: Format, allowed: &[Format]) -> Result<Format, Failure> {
    let f = fmt.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(Failure::usage(format!("format {f:?} is not supported by this command").to_lowercase()))
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report types serialize");
    s.push('\n');
    s
}

fn read_point_set(path: &Path) -> Result<PointSet, Failure> {
    let file = fs::File::open(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    PointSet::read_text(BufReader::new(file)).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}

/// A file whose hull is a triangle already is `S⁺` (hull corners become the
/// frame); anything else is wrapped in a bounding triangle.
fn read_augmented(path: &Path) -> Result<AugmentedPointSet, Failure> {
    let set = read_point_set(path)?;
    Ok(AugmentedPointSet::from_triangular_hull(&set).unwrap_or_else(|| augment(&set)))
}

fn cmd_generate(kind: GenerateKind, n: usize, seed: u64, fmt: Option<Format>) -> CmdResult {
    pick(fmt, Format::Text, &[Format::Text])?;
    let set = match kind {
        GenerateKind::Convex => gen_convex(n),
        GenerateKind::Arc => gen_convex_arc_in_triangle(n).map(|a| a.as_point_set()),
        GenerateKind::Random => gen_random(n, seed),
    }
    .map_err(|e| Failure::usage(e.to_string()))?;
    Ok(set.to_text())
}

fn render_enumeration(r: &EnumerationResult, fmt: Format) -> String {
    match fmt {
        Format::Json => to_json(&r.to_json()),
        Format::Csv => {
            let mut s = String::from("degree,total\n");
            for (d, t) in &r.degree_totals {
                s.push_str(&format!("{d},{t}\n"));
            }
            s
        }
        _ => {
            let mut s = format!("points: {}\ntriangulations: {}\nexhaustive: {}\n", r.n, r.count, r.exhaustive);
            s.push_str(&format!("vhat3: {}\n", mixed(&r.vhat(3))));
            for (d, t) in &r.degree_totals {
                s.push_str(&format!("degree {d}: {t}\n"));
            }
            s
        }
    }
}

fn cmd_enumerate(input: &Path, frame: bool, cap: Option<u64>, fingerprints: bool, fmt: Option<Format>) -> CmdResult {
    let fmt = pick(fmt, Format::Json, &[Format::Json, Format::Csv, Format::Text])?;
    let e = Enumerator::new().cap(cap).parallel(true).keep_fingerprints(fingerprints);
    let result = if frame {
        e.run(&read_augmented(input)?)
    } else {
        let set = read_point_set(input)?;
        match AugmentedPointSet::from_triangular_hull(&set) {
            Some(aug) if aug.interior_count() > 0 => e.run(&aug),
            _ => e.run(&set),
        }
    };
    match result {
        Ok(r) => Ok(render_enumeration(&r, fmt)),
        Err(EnumerateError::CapExceeded(partial)) => Err(Failure {
            code: EXIT_CAPPED,
            message: format!("cap reached after {} triangulations; output is partial", partial.count),
            output: Some(render_enumeration(&partial, fmt)),
        }),
        Err(e) => Err(e.into()),
    }
}

#[derive(Serialize)]
struct AuditOutput {
    #[serde(flatten)]
    audit: AuditJson,
    v3_recursion: Option<V3RecursionReport>,
    all_checks_passed: bool,
}

fn cmd_audit(input: &Path, opts: &AuditOptions, recursion: bool, fmt: Option<Format>) -> CmdResult {
    let fmt = pick(fmt, Format::Json, &[Format::Json, Format::Text])?;
    let aug = read_augmented(input)?;
    let report = audit(&aug, opts)?;
    let v3 = if recursion && aug.interior_count() > 0 {
        Some(check_v3_recursion(&aug, opts.enumeration_cap)?)
    } else {
        None
    };
    let ok = report.passed() && v3.as_ref().is_none_or(|r| r.holds);
    let json = report.to_json();
    let text = match fmt {
        Format::Json => to_json(&AuditOutput { audit: json, v3_recursion: v3, all_checks_passed: ok }),
        _ => {
            let mut s =
                format!("points: {}\ntriangulations: {}\n3-vints: {}\n", json.n, json.triangulations, json.three_vints);
            if let (Some(m), Some(d)) = (&json.max_charge_mixed, &json.max_charge_decimal) {
                s.push_str(&format!("max charge: {m} ({d})\n"));
            }
            s.push_str(&format!("conservation: {}\n", json.conservation.holds));
            s.push_str(&format!("vhat3: {}\n", mixed(&report.vhat3)));
            if let Some(r) = &v3 {
                s.push_str(&format!("v3 recursion: {} = {} ({})\n", r.lhs, r.rhs, r.holds));
            }
            if let Some(r) = &json.rules {
                s.push_str(&format!("structural rules: {}\n", r.holds));
            }
            s.push_str(&format!("above 28 17/28: {}\n", json.above_28_17_28.len()));
            for v in &json.violations {
                s.push_str(&format!("violation: {v}\n"));
            }
            s.push_str(if ok { "PASS\n" } else { "FAIL\n" });
            s
        }
    };
    if ok {
        Ok(text)
    } else {
        Err(Failure { code: EXIT_VIOLATION, message: "audit found violations".into(), output: Some(text) })
    }
}

fn find_triangulation(aug: &AugmentedPointSet, fp: Fingerprint, cap: Option<u64>) -> Result<Triangulation, Failure> {
    let mut found = None;
    let (exhaustive, _) = Enumerator::new().cap(cap).walk(aug, |t| {
        if found.is_none() && t.fingerprint() == fp {
            found = Some(t.clone());
        }
    });
    found.ok_or_else(|| {
        let code = if exhaustive { EXIT_USAGE } else { EXIT_CAPPED };
        Failure { code, message: format!("no triangulation with fingerprint {fp}"), output: None }
    })
}

fn cmd_fliptree(input: &Path, fingerprint: &str, point: usize, cap: Option<u64>, fmt: Option<Format>) -> CmdResult {
    pick(fmt, Format::Dot, &[Format::Dot])?;
    let fp =
        Fingerprint::parse(fingerprint).ok_or_else(|| Failure::usage(format!("bad fingerprint {fingerprint:?}")))?;
    let aug = read_augmented(input)?;
    let t = find_triangulation(&aug, fp, cap)?;
    let tree = build_flip_tree(&t, point).map_err(|e| Failure::usage(e.to_string()))?;
    Ok(tree.to_dot())
}

#[derive(Serialize)]
struct CatalanJson<'a> {
    which: &'a str,
    args: &'a [u32],
    value: String,
}

fn cmd_catalan(which: CatalanKind, args: &[u32], fmt: Option<Format>) -> CmdResult {
    let fmt = pick(fmt, Format::Text, &[Format::Text, Format::Json])?;
    let arity = if which == CatalanKind::Cr { 2 } else { 1 };
    if args.len() != arity {
        return Err(Failure::usage(format!("expected {arity} argument(s), got {}", args.len())));
    }
    let range = |e: crate::catalan::OutOfRange| Failure::usage(e.to_string());
    let (name, value) = match which {
        CatalanKind::C => ("c", catalan(args[0])),
        CatalanKind::C1 => ("c1", catalan_prime(args[0]).map_err(range)?),
        CatalanKind::C2 => ("c2", catalan_double_prime(args[0]).map_err(range)?),
        CatalanKind::Cr => ("cr", catalan_generalized(args[0], args[1]).map_err(range)?),
    };
    Ok(match fmt {
        Format::Json => to_json(&CatalanJson { which: name, args, value: value.to_string() }),
        _ => format!("{value}\n"),
    })
}

/// Parses `"30"`, `"2.5"` or `"7/2"` exactly.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(Rational::new(p.trim().parse().ok()?, q));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let negative = whole.starts_with('-');
        let whole: BigInt = if whole.is_empty() || whole == "-" { BigInt::zero() } else { whole.parse().ok()? };
        let scale = BigInt::from(10u32).pow(frac.len() as u32);
        let frac: BigInt = frac.parse().ok()?;
        let magnitude = Rational::from_integer(whole.magnitude().clone().into()) + Rational::new(frac, scale);
        return Some(if negative { -magnitude } else { magnitude });
    }
    Some(Rational::from_integer(s.parse().ok()?))
}

#[derive(Serialize)]
struct BoundsOutput {
    base: Fraction,
    bounds: Vec<BoundJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sc_symbolic: Option<String>,
}

fn cmd_bounds(base: &str, symbolic: bool, fmt: Option<Format>) -> CmdResult {
    let fmt = pick(fmt, Format::Text, &[Format::Text, Format::Csv, Format::Json])?;
    let tr = parse_rational(base).ok_or_else(|| Failure::usage(format!("bad base {base:?}")))?;
    let entries = derived_bounds(&tr).map_err(|e| Failure::usage(e.to_string()))?;
    let sym = symbolic.then(|| symbolic_sc(&tr));
    Ok(match fmt {
        Format::Csv => {
            let mut s = to_csv(&entries);
            if let Some(v) = &sym {
                s.push_str(&format!("sc_symbolic,{v},,30^(1/4),\"spanning cycles with 30^(1/4) exact\"\n"));
            }
            s
        }
        Format::Json => to_json(&BoundsOutput {
            base: Fraction::from(&tr),
            bounds: entries.iter().map(|e| e.to_json()).collect(),
            sc_symbolic: sym,
        }),
        _ => {
            let mut s = String::new();
            for e in &entries {
                s.push_str(&format!("{:<6} {:>12}  = {}\n", e.quantity.name(), e.display(), mixed(&e.base)));
            }
            if let Some(v) = &sym {
                s.push_str(&format!("{:<6} {:>12}  (30^(1/4) exact)\n", "sc*", v));
            }
            s
        }
    })
}

#[derive(Serialize)]
struct PolygonCountJson {
    vertices: usize,
    count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    brute_force: Option<String>,
}

fn cmd_polygon_count(input: &Path, brute: bool, fmt: Option<Format>) -> CmdResult {
    let fmt = pick(fmt, Format::Text, &[Format::Text, Format::Json])?;
    let file = fs::File::open(input).map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
    let poly = SimplePolygon::read_text(BufReader::new(file))
        .map_err(|e| Failure::usage(format!("{}: {e}", input.display())))?;
    let count = count_triangulations(&poly);
    let oracle = if brute {
        if poly.len() > BRUTE_FORCE_MAX {
            return Err(Failure::usage(format!("brute force is limited to {BRUTE_FORCE_MAX} vertices")));
        }
        Some(brute_force_count(&poly).map_err(|e| Failure::usage(e.to_string()))?)
    } else {
        None
    };
    let text = match fmt {
        Format::Json => to_json(&PolygonCountJson {
            vertices: poly.len(),
            count: count.to_string(),
            brute_force: oracle.as_ref().map(|c| c.to_string()),
        }),
        _ => match &oracle {
            Some(b) => format!("{count}\nbrute force: {b}\n"),
            None => format!("{count}\n"),
        },
    };
    match oracle {
        Some(b) if b != count => Err(Failure {
            code: EXIT_VIOLATION,
            message: format!("dynamic program gives {count}, brute force {b}"),
            output: Some(text),
        }),
        _ => Ok(text),
    }
}

#[derive(Serialize)]
struct TriangulationRow {
    fingerprint: String,
    edges: Vec<[usize; 2]>,
    degrees: Vec<usize>,
}

fn cmd_export(input: &Path, what: ExportKind, cap: Option<u64>, fmt: Option<Format>) -> CmdResult {
    let aug = read_augmented(input)?;
    let ts = Enumerator::new().cap(cap).parallel(true).collect(&aug)?;
    let n = aug.interior_count();
    match what {
        ExportKind::Triangulations => {
            let fmt = pick(fmt, Format::Json, &[Format::Json, Format::Csv])?;
            if fmt == Format::Csv {
                let mut s = String::from("fingerprint,point,degree\n");
                for t in &ts {
                    for (p, d) in t.degrees().iter().enumerate().take(n) {
                        s.push_str(&format!("{},{p},{d}\n", t.fingerprint()));
                    }
                }
                return Ok(s);
            }
            let rows: Vec<TriangulationRow> = ts
                .iter()
                .map(|t| TriangulationRow {
                    fingerprint: t.fingerprint().to_string(),
                    edges: t.to_json().edges,
                    degrees: t.degrees(),
                })
                .collect();
            Ok(to_json(&rows))
        }
        ExportKind::Charges => {
            let fmt = pick(fmt, Format::Csv, &[Format::Json, Format::Csv])?;
            let per: Vec<Result<Vec<ChargeJson>, ChargingError>> = ts
                .par_iter()
                .map_init(SupportCache::new, |cache, t| {
                    let mut out = Vec::new();
                    for p in (0..n).filter(|&p| t.degree(p) == 3) {
                        let tree = build_flip_tree(t, p)?;
                        out.push(charge(&tree, cache, DEFAULT_SUBTREE_CAP)?.to_json());
                    }
                    Ok(out)
                })
                .collect();
            let mut charges = Vec::new();
            for r in per {
                charges.extend(r?);
            }
            if fmt == Format::Json {
                return Ok(to_json(&charges));
            }
            let mut s = String::from("fingerprint,point,charge_num,charge_den,charge,chargers\n");
            for c in &charges {
                let r = c.total.to_rational().expect("charge fractions are well formed");
                s.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    c.fingerprint,
                    c.point,
                    c.total.num,
                    c.total.den,
                    decimal_round(&r, 6),
                    c.contributions.len()
                ));
            }
            Ok(s)
        }
    }
}
