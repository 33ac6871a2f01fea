//! Argument handling for the `permsplit` binary. [`run`] never exits the process, so tests
//! drive it directly.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use permsplit::lpm::{flag_of_interval, lpfm_interval, quotient_chain, LatticePathMatroid, LpfmFlag};
use permsplit::matroid::{is_quotient, QuotientCriterion, SetMatroid};
use permsplit::perm::{bruhat_interval, bruhat_leq, BruhatInterval, Permutation};
use permsplit::polytope::flag_polytope_vertices;
use permsplit::rational::{parse_rational, Rational, RationalMatrix};
use permsplit::splits::{check_split, dual_hyperplane, scan, theorem_hyperplanes, ScanLevels, SplitHyperplane, SplitReport};
use permsplit::subdivision::{build_poset, export_poset, ExportFormat, SubdivisionPoset};
use permsplit::subset::{parse_element_set, ElementSet};
use permsplit::verify::verify;
use permsplit::Error;

/// Exit code and the text to print.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub text: String,
    /// Error messages go to stderr; reports (even failing ones) go to stdout.
    pub stderr: bool,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

type Res<T> = std::result::Result<T, Failure>;

fn usage(e: impl std::fmt::Display) -> Failure {
    Failure::Usage(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Dot,
}

#[derive(Parser, Debug)]
#[command(name = "permsplit", version, about = "Splits and subdivisions of the permutahedron, computed exactly")]
struct Cli {
    /// Output format. Tables by default; `dot` only applies to posets.
    #[arg(long, global = true, value_enum, default_value = "table")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bruhat order on S_n.
    #[command(subcommand)]
    Bruhat(BruhatCmd),
    /// Lattice path matroids, written `U:L` (for example `13:24`).
    #[command(subcommand)]
    Lpm(LpmCmd),
    /// Matroids given by bases, written as one space-separated string (`"12 13 23"`).
    #[command(subcommand)]
    Matroid(MatroidCmd),
    /// Lattice path flag matroids and their Bruhat intervals.
    #[command(subcommand)]
    Flag(FlagCmd),
    /// Split hyperplanes such as `x1+x2=4` or `x_{1,3}=7`.
    #[command(subcommand)]
    Split(SplitCmd),
    /// The poset of split-refinement subdivisions.
    #[command(subcommand)]
    Poset(PosetCmd),
    /// Run the self-checks for one n.
    Verify {
        #[arg(short)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Rewrite the golden JSON files.
    Fixtures {
        #[arg(long, default_value = "fixtures")]
        dir: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum BruhatCmd {
    Leq { u: String, v: String },
    Interval { u: String, v: String },
    /// Dual of a permutation, or of the interval `[u, v]`.
    Dual { u: String, v: Option<String> },
}

#[derive(Args, Debug)]
struct LpmArg {
    #[arg(short)]
    n: usize,
    lpm: String,
}

#[derive(Subcommand, Debug)]
enum LpmCmd {
    Bases(LpmArg),
    GoodPairs(LpmArg),
    /// Removes `u` from U and `l` from L.
    Quotient {
        #[command(flatten)]
        m: LpmArg,
        u: usize,
        l: usize,
    },
    /// Elementary quotients leading from `hi` down to `lo`.
    Chain {
        #[arg(short)]
        n: usize,
        lo: String,
        hi: String,
    },
}

#[derive(Args, Debug)]
struct MatroidArg {
    #[arg(short)]
    n: usize,
    bases: String,
}

#[derive(Subcommand, Debug)]
enum MatroidCmd {
    Validate(MatroidArg),
    Circuits(MatroidArg),
    Flats(MatroidArg),
    /// Is `small` a quotient of `big`?
    QuotientCheck {
        #[arg(short)]
        n: usize,
        small: String,
        big: String,
        /// 1 (circuits), 2 (flats) or 3 (bases); all three when omitted.
        #[arg(long)]
        criterion: Option<u8>,
    },
    /// Column matroid of a matrix written `1,0,1;0,1,1`.
    FromMatrix { matrix: String },
}

#[derive(Args, Debug)]
struct FlagArg {
    #[arg(short)]
    n: usize,
    /// Constituents of ranks 1..n-1, each `U:L`.
    #[arg(required = true)]
    lpms: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum FlagCmd {
    Interval(FlagArg),
    Polytope(FlagArg),
    OfInterval { lo: String, hi: String },
}

#[derive(Subcommand, Debug)]
enum SplitCmd {
    Check {
        #[arg(short)]
        n: usize,
        hyperplane: String,
    },
    Scan {
        #[arg(short)]
        n: usize,
        /// Also try every half-integer level.
        #[arg(long)]
        half_integer: bool,
    },
    Theorem {
        #[arg(short)]
        n: usize,
    },
    Dual {
        #[arg(short)]
        n: usize,
        hyperplane: String,
    },
}

#[derive(Subcommand, Debug)]
enum PosetCmd {
    Build {
        #[arg(short)]
        n: usize,
    },
    /// Writes DOT (default) or JSON, to `--out` or stdout.
    Export {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parses a hyperplane argument; any syntax or bounds problem is a usage error.
pub fn parse_hyperplane(text: &str, n: usize) -> Result<SplitHyperplane, String> {
    permsplit::splits::parse_hyperplane(text, n).map_err(|e| e.to_string())
}

/// Runs one invocation.
pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return Output { code, text: e.render().to_string(), stderr: code != 0 };
        }
    };
    match dispatch(cli.command, cli.format) {
        Ok((code, text)) => Output { code, text, stderr: false },
        Err(Failure::Usage(m)) => Output { code: 2, text: format!("usage error: {m}\n"), stderr: true },
        Err(Failure::Domain(e)) => Output { code: 1, text: format!("error: {e}\n"), stderr: true },
    }
}

fn dispatch(cmd: Command, format: Format) -> Res<(i32, String)> {
    let ok = |s: String| Ok((0, s));
    match cmd {
        Command::Bruhat(c) => ok(bruhat(c, format)?),
        Command::Lpm(c) => ok(lpm(c, format)?),
        Command::Matroid(c) => ok(matroid(c, format)?),
        Command::Flag(c) => ok(flag(c, format)?),
        Command::Split(c) => ok(split(c, format)?),
        Command::Poset(c) => ok(poset(c, format)?),
        Command::Verify { n, seed } => {
            check_n(n, 1, 9)?;
            let report = verify(n, seed);
            let code = if report.passed() { 0 } else { 1 };
            let text = match format {
                Format::Json => to_json(&report)?,
                _ => {
                    let mut s: String = report.checks.iter().map(|c| format!("{c}\n")).collect();
                    let failed = report.checks.iter().filter(|c| c.status == permsplit::verify::Status::Fail).count();
                    let _ = writeln!(s, "{} checks, {failed} failed (n = {n}, seed = {seed})", report.checks.len());
                    s
                }
            };
            Ok((code, text))
        }
        Command::Fixtures { dir } => ok(write_fixtures(&dir)?),
    }
}

fn check_n(n: usize, lo: usize, hi: usize) -> Res<()> {
    if (lo..=hi).contains(&n) {
        Ok(())
    } else {
        Err(usage(format!("-n must be between {lo} and {hi}, got {n}")))
    }
}

fn to_json<T: Serialize + ?Sized>(v: &T) -> Res<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(Error::from)?;
    s.push('\n');
    Ok(s)
}

/// Left-aligned columns separated by two spaces.
fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (w, cell) in widths.iter_mut().zip(r) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> =
            cells.iter().zip(&widths).map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count()))).collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut out = line(headers.to_vec());
    for r in rows {
        out.push_str(&line(r.iter().map(String::as_str).collect()));
    }
    out
}

fn render<T: Serialize + ?Sized>(format: Format, value: &T, headers: &[&str], rows: Vec<Vec<String>>) -> Res<String> {
    match format {
        Format::Json => to_json(value),
        Format::Table => Ok(table(headers, &rows)),
        Format::Dot => Err(usage("--format dot only applies to posets")),
    }
}

fn perm(text: &str) -> Res<Permutation> {
    text.parse().map_err(|e: Error| usage(format!("{e} in {text:?}")))
}

fn same_n(u: &Permutation, v: &Permutation) -> Res<()> {
    if u.n() == v.n() {
        Ok(())
    } else {
        Err(usage(format!("{u} and {v} have different sizes")))
    }
}

fn bruhat(c: BruhatCmd, format: Format) -> Res<String> {
    match c {
        BruhatCmd::Leq { u, v } => {
            let (u, v) = (perm(&u)?, perm(&v)?);
            same_n(&u, &v)?;
            let leq = bruhat_leq(&u, &v)?;
            render(format, &json!({"u": u, "v": v, "leq": leq}), &["u", "v", "leq"], vec![vec![u.to_string(), v.to_string(), leq.to_string()]])
        }
        BruhatCmd::Interval { u, v } => {
            let (u, v) = (perm(&u)?, perm(&v)?);
            same_n(&u, &v)?;
            let elems = bruhat_interval(&u, &v)?;
            let rows = elems.iter().map(|z| vec![z.to_string(), z.length().to_string()]).collect();
            render(format, &elems, &["z", "length"], rows)
        }
        BruhatCmd::Dual { u, v } => {
            let u = perm(&u)?;
            match v {
                None => {
                    let d = u.dual();
                    render(format, &json!({"u": u, "dual": d}), &["u", "dual"], vec![vec![u.to_string(), d.to_string()]])
                }
                Some(v) => {
                    let v = perm(&v)?;
                    same_n(&u, &v)?;
                    let i = BruhatInterval::new(u, v)?;
                    let d = i.dual();
                    render(format, &json!({"interval": i, "dual": d}), &["interval", "dual"], vec![vec![i.to_string(), d.to_string()]])
                }
            }
        }
    }
}

fn set_arg(text: &str, n: usize) -> Res<ElementSet> {
    parse_element_set(text, n).map_err(|e| usage(format!("{e} in {text:?}")))
}

fn lpm_arg(text: &str, n: usize) -> Res<LatticePathMatroid> {
    let (u, l) = text.split_once(':').ok_or_else(|| usage(format!("expected U:L, missing ':' in {text:?}")))?;
    Ok(LatticePathMatroid::new(n, set_arg(u, n)?, set_arg(l, n)?)?)
}

fn set_rows(sets: &[ElementSet]) -> Vec<Vec<String>> {
    sets.iter().map(|s| vec![s.to_string()]).collect()
}

fn lpm(c: LpmCmd, format: Format) -> Res<String> {
    match c {
        LpmCmd::Bases(a) => {
            let m = lpm_arg(&a.lpm, a.n)?;
            let bases = m.bases();
            render(format, &bases, &["basis"], set_rows(&bases))
        }
        LpmCmd::GoodPairs(a) => {
            let m = lpm_arg(&a.lpm, a.n)?;
            let pairs = m.good_pairs();
            let rows = pairs
                .iter()
                .map(|p| vec![p.j.to_string(), p.i.to_string(), p.u.to_string(), p.l.to_string(), m.elementary_quotient(p.u, p.l).map(|q| q.to_string()).unwrap_or_default()])
                .collect();
            render(format, &pairs, &["j", "i", "u", "l", "quotient"], rows)
        }
        LpmCmd::Quotient { m, u, l } => {
            let m = lpm_arg(&m.lpm, m.n)?;
            let q = m.elementary_quotient(u, l)?;
            render(format, &q, &["from", "u", "l", "quotient"], vec![vec![m.to_string(), u.to_string(), l.to_string(), q.to_string()]])
        }
        LpmCmd::Chain { n, lo, hi } => {
            let (lo, hi) = (lpm_arg(&lo, n)?, lpm_arg(&hi, n)?);
            let steps = quotient_chain(&lo, &hi)
                .ok_or_else(|| Error::Parse(format!("{lo} is not reached from {hi} by elementary quotients")))?;
            let rows = steps.iter().map(|s| vec![s.pair.u.to_string(), s.pair.l.to_string(), s.result.to_string()]).collect();
            render(format, &steps, &["u", "l", "result"], rows)
        }
    }
}

fn matroid_arg(text: &str, n: usize) -> Res<Vec<ElementSet>> {
    text.split_whitespace().map(|t| set_arg(t, n)).collect::<Res<Vec<_>>>().and_then(|v| {
        if v.is_empty() {
            Err(usage("no bases given (write the empty basis as {})"))
        } else {
            Ok(v)
        }
    })
}

fn matroid(c: MatroidCmd, format: Format) -> Res<String> {
    match c {
        MatroidCmd::Validate(a) => {
            let m = SetMatroid::from_bases(a.n, matroid_arg(&a.bases, a.n)?)?;
            let rows = vec![vec![m.n().to_string(), m.rank().to_string(), m.bases().len().to_string()]];
            render(format, &json!({"valid": true, "matroid": m}), &["n", "rank", "bases"], rows)
        }
        MatroidCmd::Circuits(a) => {
            let m = SetMatroid::from_bases(a.n, matroid_arg(&a.bases, a.n)?)?;
            render(format, m.circuits(), &["circuit"], set_rows(m.circuits()))
        }
        MatroidCmd::Flats(a) => {
            let m = SetMatroid::from_bases(a.n, matroid_arg(&a.bases, a.n)?)?;
            let rows = m.flats().iter().map(|&f| vec![f.to_string(), m.rank_of(f).to_string()]).collect();
            render(format, m.flats(), &["flat", "rank"], rows)
        }
        MatroidCmd::QuotientCheck { n, small, big, criterion } => {
            let small = SetMatroid::from_bases(n, matroid_arg(&small, n)?)?;
            let big = SetMatroid::from_bases(n, matroid_arg(&big, n)?)?;
            let criteria = match criterion {
                Some(k) => vec![(k, QuotientCriterion::from_number(k).map_err(usage)?)],
                None => (1..=3).zip(QuotientCriterion::ALL).collect(),
            };
            let verdicts: Vec<(u8, bool)> =
                criteria.into_iter().map(|(k, c)| Ok((k, is_quotient(&small, &big, c)?))).collect::<Res<_>>()?;
            let value: Vec<_> = verdicts.iter().map(|&(k, q)| json!({"criterion": k, "quotient": q})).collect();
            let rows = verdicts.iter().map(|(k, q)| vec![k.to_string(), q.to_string()]).collect();
            render(format, &value, &["criterion", "quotient"], rows)
        }
        MatroidCmd::FromMatrix { matrix } => {
            let a = parse_matrix(&matrix)?;
            let m = SetMatroid::from_rational_matrix(&a)?;
            render(format, &m, &["basis"], set_rows(m.bases()))
        }
    }
}

fn parse_matrix(text: &str) -> Res<RationalMatrix> {
    let rows: Vec<Vec<Rational>> = text
        .split(';')
        .map(|r| r.split(',').map(|e| parse_rational(e.trim()).map_err(|err| usage(format!("{err} in {text:?}")))).collect())
        .collect::<Res<_>>()?;
    RationalMatrix::new(rows).map_err(usage)
}

fn flag_arg(a: &FlagArg) -> Res<LpfmFlag> {
    let lpms = a.lpms.iter().map(|t| lpm_arg(t, a.n)).collect::<Res<Vec<_>>>()?;
    Ok(LpfmFlag::new(a.n, lpms)?)
}

fn flag(c: FlagCmd, format: Format) -> Res<String> {
    match c {
        FlagCmd::Interval(a) => {
            let i = lpfm_interval(&flag_arg(&a)?)?;
            render(format, &i, &["lo", "hi"], vec![vec![i.lo().to_string(), i.hi().to_string()]])
        }
        FlagCmd::Polytope(a) => {
            let pts = flag_polytope_vertices(&flag_arg(&a)?.matroids())?;
            let rows = pts.iter().map(|p| vec![p.to_string()]).collect();
            render(format, &pts, &["vertex"], rows)
        }
        FlagCmd::OfInterval { lo, hi } => {
            let (lo, hi) = (perm(&lo)?, perm(&hi)?);
            same_n(&lo, &hi)?;
            let f = flag_of_interval(&BruhatInterval::new(lo, hi)?)?;
            let value = json!({
                "constituents": f.constituents,
                "lpms": f.lpms,
                "quotients": f.quotients,
                "is_lpfm": f.is_lpfm,
            });
            let rows = f
                .constituents
                .iter()
                .zip(&f.lpms)
                .map(|(m, l)| {
                    let bases: Vec<String> = m.bases().iter().map(|b| b.to_string()).collect();
                    vec![m.rank().to_string(), l.map(|l| l.to_string()).unwrap_or_else(|| "-".into()), bases.join(" ")]
                })
                .collect();
            let mut s = render(format, &value, &["rank", "lpm", "bases"], rows)?;
            if format == Format::Table {
                let _ = writeln!(s, "lpfm: {}", f.is_lpfm);
            }
            Ok(s)
        }
    }
}

fn hyperplane_arg(text: &str, n: usize) -> Res<SplitHyperplane> {
    parse_hyperplane(text, n).map_err(Failure::Usage)
}

fn report_rows(reports: &[SplitReport]) -> Vec<Vec<String>> {
    reports
        .iter()
        .map(|r| {
            let cells = r.cells.as_ref().map(|[a, b]| format!("{a} {b}")).unwrap_or_default();
            vec![r.hyperplane.to_string(), r.verdict.to_string(), cells]
        })
        .collect()
}

fn split(c: SplitCmd, format: Format) -> Res<String> {
    match c {
        SplitCmd::Check { n, hyperplane } => {
            check_n(n, 2, 8)?;
            let r = check_split(&hyperplane_arg(&hyperplane, n)?);
            let rows = report_rows(std::slice::from_ref(&r));
            render(format, &r, &["hyperplane", "verdict", "cells"], rows)
        }
        SplitCmd::Scan { n, half_integer } => {
            check_n(n, 2, 7)?;
            let levels = if half_integer { ScanLevels::HalfInteger } else { ScanLevels::Integer };
            let good: Vec<SplitReport> = scan(n, levels).into_iter().filter(SplitReport::is_good).collect();
            let rows = report_rows(&good);
            match format {
                Format::Json => to_json(&good.iter().map(|r| &r.hyperplane).collect::<Vec<_>>()),
                _ => render(format, &good, &["hyperplane", "verdict", "cells"], rows),
            }
        }
        SplitCmd::Theorem { n } => {
            check_n(n, 3, 12)?;
            let hs = theorem_hyperplanes(n);
            let rows = hs.iter().map(|h| vec![h.to_string()]).collect();
            render(format, &hs, &["hyperplane"], rows)
        }
        SplitCmd::Dual { n, hyperplane } => {
            check_n(n, 2, 8)?;
            let h = hyperplane_arg(&hyperplane, n)?;
            let d = dual_hyperplane(&h)?;
            render(format, &json!({"hyperplane": h, "dual": d}), &["hyperplane", "dual"], vec![vec![h.to_string(), d.to_string()]])
        }
    }
}

fn poset_table(p: &SubdivisionPoset) -> String {
    let rows: Vec<Vec<String>> = p
        .elements()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let hs: Vec<String> = s.hyperplanes().iter().map(|h| h.to_string()).collect();
            let cells: Vec<String> = s.intervals().iter().map(|c| c.to_string()).collect();
            vec![format!("s{i}"), hs.join(", "), cells.join(" ")]
        })
        .collect();
    let mut out = table(&["id", "hyperplanes", "cells"], &rows);
    let covers: Vec<String> = p.covers().iter().map(|(a, b)| format!("s{a}<s{b}")).collect();
    let _ = writeln!(out, "covers: {}", covers.join(" "));
    let ids = |v: Vec<usize>| v.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ");
    let _ = writeln!(out, "minimal: {}", ids(p.minimal()));
    let _ = writeln!(out, "maximal: {}", ids(p.maximal()));
    out
}

fn poset(c: PosetCmd, format: Format) -> Res<String> {
    match c {
        PosetCmd::Build { n } => {
            check_n(n, 3, 5)?;
            let p = build_poset(n)?;
            Ok(match format {
                Format::Table => poset_table(&p),
                Format::Json => export_poset(&p, ExportFormat::Json)? + "\n",
                Format::Dot => export_poset(&p, ExportFormat::Dot)?,
            })
        }
        PosetCmd::Export { n, out } => {
            check_n(n, 3, 5)?;
            let f = if format == Format::Json { ExportFormat::Json } else { ExportFormat::Dot };
            let text = export_poset(&build_poset(n)?, f)?;
            match out {
                Some(path) => {
                    fs::write(&path, &text).map_err(|e| Error::Json(format!("{}: {e}", path.display())))?;
                    Ok(format!("wrote {}\n", path.display()))
                }
                None => Ok(text),
            }
        }
    }
}

/// File names and contents of the golden files.
fn fixtures() -> Res<Vec<(String, String)>> {
    let mut files = Vec::new();
    for n in 3..=5 {
        let hs: Vec<SplitHyperplane> =
            scan(n, ScanLevels::Integer).into_iter().filter(SplitReport::is_good).map(|r| r.hyperplane).collect();
        files.push((format!("scan_{n}.json"), to_json(&hs)?));
        files.push((format!("theorem_{n}.json"), to_json(&theorem_hyperplanes(n))?));
    }
    for n in 3..=4 {
        files.push((format!("poset_{n}.json"), export_poset(&build_poset(n)?, ExportFormat::Json)? + "\n"));
    }
    Ok(files)
}

fn write_fixtures(dir: &Path) -> Res<String> {
    let io = |e: std::io::Error| Error::Json(format!("{}: {e}", dir.display()));
    fs::create_dir_all(dir).map_err(io)?;
    let mut out = String::new();
    for (name, text) in fixtures()? {
        fs::write(dir.join(&name), text).map_err(io)?;
        let _ = writeln!(out, "wrote {}", dir.join(&name).display());
    }
    Ok(out)
}

/// Golden files paired with the text currently produced for them.
pub fn fixture_contents() -> Result<Vec<(String, String)>, String> {
    fixtures().map_err(|f| match f {
        Failure::Usage(m) => m,
        Failure::Domain(e) => e.to_string(),
    })
}
