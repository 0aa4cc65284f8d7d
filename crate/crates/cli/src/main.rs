use std::io::{self, Write};
use std::ops::RangeInclusive;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use bruhat_core::bgg::{build_sign_assignment_with, grade_with, signs::DEFAULT_MAX_DEGREE, GradeOptions, GradeReport, SignSolver};
use bruhat_core::bruhat::DEFAULT_IDEAL_CAP;
use bruhat_core::intersect::intersection_maximal_closed_form;
use bruhat_core::matching::{build_matching, verify_matching, MatchingKind};
use bruhat_core::oracle::is_boolean_by_words_with;
use bruhat_core::rs::{a_function, rs_shape};
use bruhat_core::runs::{optimal_partner, partner_word, run_decompose, unmatched_element};
use bruhat_core::selfish::maximal_selfish;
use bruhat_core::verify::{run_check, Check, SweepConfig};
use bruhat_core::word::{canonical_reduced_word, DEFAULT_WORD_CAP};
use bruhat_core::{intersect_ideals, Error, Permutation, ReducedWord, SupportSet};

#[derive(Parser)]
#[command(name = "bruhat", version, about = "Boolean permutations, Bruhat ideal intersections and BGG grades")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Read permutation arguments as reduced words instead of one-line notation.
    #[arg(long, global = true)]
    rw: bool,
    /// Degree for `--rw` input; defaults to one more than the largest letter.
    #[arg(long, global = true)]
    degree: Option<usize>,
    /// Largest ideal materialized before giving up.
    #[arg(long, env = "BRUHAT_IDEAL_CAP", default_value_t = DEFAULT_IDEAL_CAP, global = true)]
    ideal_cap: usize,
    /// Largest number of reduced words enumerated before giving up.
    #[arg(long, env = "BRUHAT_WORD_CAP", default_value_t = DEFAULT_WORD_CAP, global = true)]
    word_cap: usize,
    /// Largest n for which the BGG complex of S_n is built.
    #[arg(long, env = "BRUHAT_MAX_DEGREE", default_value_t = DEFAULT_MAX_DEGREE, global = true)]
    max_degree: usize,
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Boolean test by length, by patterns and by reduced words.
    Boolean { w: String },
    /// Maximal elements of B(v) ∩ B(w) for boolean v.
    Intersect {
        v: String,
        w: String,
        #[arg(long, group = "method")]
        closed_form: bool,
        #[arg(long, group = "method")]
        enumerate: bool,
        /// Compute both ways and fail on any disagreement.
        #[arg(long, group = "method")]
        both: bool,
    },
    /// Grade of L_w, or the table for all of S_n.
    Grade {
        #[arg(required_unless_present = "all")]
        w: Option<String>,
        #[arg(long, value_name = "N", conflicts_with = "w")]
        all: Option<usize>,
        /// Record the first nonzero depth for every u.
        #[arg(long)]
        per_u: bool,
    },
    /// Optimal rank and an optimal run word of a boolean v.
    Ork { v: String },
    /// Optimal partner of a boolean v, with its verified matching.
    Partner { v: String },
    /// Robinson–Schensted shape.
    Rs { w: String },
    /// Lusztig's a-function.
    Afun { w: String },
    /// Maximal selfish subsets of [1, k] or of a given set of letters.
    Selfish {
        #[arg(required_unless_present = "universe")]
        k: Option<usize>,
        /// Comma-separated letters.
        #[arg(long, conflicts_with = "k")]
        universe: Option<String>,
    },
    /// Run a verification sweep; exits 1 on any counterexample.
    Verify {
        /// Check name or short id; `list` prints them all.
        check: String,
        /// Degrees, as `4` or `3..5`.
        #[arg(long, default_value = "1..5")]
        n: String,
        /// Largest k, or a range, for the selfish check.
        #[arg(long, default_value = "15")]
        k: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Check every case at every degree.
        #[arg(long)]
        exhaustive: bool,
        /// Sample size above degree 5.
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
    /// DOT drawing of B(v) ∩ B(w).
    Export {
        v: String,
        w: String,
        /// Bold the matched covers and circle the unmatched element.
        #[arg(long)]
        matched: bool,
    },
}

enum Failure {
    Usage(String),
    Lib(Error),
    Counterexample(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult<T = ()> = Result<T, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.global.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let mut out = String::new();
    let result = run(&cli, &mut out);
    // A closed pipe (`| head`) is not an error.
    let _ = io::stdout().write_all(out.as_bytes()).and_then(|_| io::stdout().flush());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample(msg)) => {
            eprintln!("counterexample: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

impl Global {
    /// Parses permutation arguments, sharing one degree across `--rw` words.
    fn perms(&self, args: &[&str]) -> CliResult<Vec<Permutation>> {
        if self.rw {
            let words: Vec<Vec<usize>> = args
                .iter()
                .map(|a| ReducedWord::parse(bruhat_core::perm::MAX_DEGREE, a).map(|w| w.letters().to_vec()))
                .collect::<Result<_, _>>()?;
            let n = match self.degree {
                Some(n) => n,
                None => words.iter().flatten().max().map_or(1, |m| m + 1),
            };
            return args
                .iter()
                .map(|a| Ok(ReducedWord::parse(n, a)?.eval()))
                .collect();
        }
        args.iter()
            .map(|a| {
                let a = a.trim();
                if !a.contains(',') && a != "1" {
                    return Err(Failure::Usage(format!(
                        "`{a}`: give one-line notation separated by commas, or use --rw"
                    )));
                }
                Ok(Permutation::parse(a)?)
            })
            .collect()
    }

    fn perm(&self, arg: &str) -> CliResult<Permutation> {
        Ok(self.perms(&[arg])?.remove(0))
    }

    fn pair(&self, a: &str, b: &str) -> CliResult<(Permutation, Permutation)> {
        let mut p = self.perms(&[a, b])?;
        let w = p.pop().unwrap();
        Ok((p.pop().unwrap(), w))
    }
}

fn parse_range(s: &str) -> CliResult<RangeInclusive<usize>> {
    let bad = || Failure::Usage(format!("bad range `{s}`; expected `4` or `3..5`"));
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
    let range = match s.split_once("..") {
        Some((a, b)) => num(a)?..=num(b.trim_start_matches('='))?,
        None => {
            let x = num(s)?;
            x..=x
        }
    };
    if range.is_empty() {
        return Err(bad());
    }
    Ok(range)
}

macro_rules! emit {
    ($out:expr, $($arg:tt)*) => {{
        $out.push_str(&format!($($arg)*));
        $out.push('\n');
    }};
}

fn print_json<T: Serialize>(out: &mut String, value: &T) -> CliResult {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    emit!(out, "{text}");
    Ok(())
}

fn unsupported(format: Format, cmd: &str) -> Failure {
    let name = format.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    Failure::Usage(format!("--format {name} is not available for `{cmd}`"))
}

fn word_of(w: &Permutation) -> String {
    format!("[{}]", canonical_reduced_word(w).compact())
}

#[derive(Serialize)]
struct BooleanReport {
    w: Permutation,
    length: usize,
    support: SupportSet,
    boolean: bool,
    by_patterns: bool,
    /// Absent when the reduced words exceed the caps.
    by_words: Option<bool>,
}

#[derive(Serialize)]
struct IntersectReport {
    v: Permutation,
    w: Permutation,
    method: &'static str,
    maximal: Vec<Permutation>,
}

#[derive(Serialize)]
struct OrkReport {
    v: Permutation,
    length: usize,
    runs: usize,
    ork: usize,
    run_word: String,
}

#[derive(Serialize)]
struct PartnerReport {
    v: Permutation,
    partner: Permutation,
    partner_word: String,
    unmatched: Permutation,
    ork: usize,
    matching: MatchingKind,
}

#[derive(Serialize)]
struct ShapeReport {
    w: Permutation,
    shape: bruhat_core::rs::YoungShape,
    a: usize,
}

#[derive(Serialize)]
struct SelfishReport {
    universe: SupportSet,
    count: usize,
    members: Vec<SupportSet>,
}

#[derive(Serialize)]
struct GradeRow<'a> {
    w: &'a Permutation,
    length: usize,
    a: usize,
    grade: usize,
    perfect: bool,
    witness_u: &'a Permutation,
}

impl<'a> From<&'a GradeReport> for GradeRow<'a> {
    fn from(r: &'a GradeReport) -> Self {
        GradeRow {
            w: &r.w,
            length: r.w.length(),
            a: r.a_value,
            grade: r.grade,
            perfect: r.perfect,
            witness_u: &r.witness_u,
        }
    }
}

/// Runs the command, appending its output to `out`.
fn run(cli: &Cli, out: &mut String) -> CliResult {
    let g = &cli.global;
    let limits = bruhat_core::WordLimits { cap: g.word_cap, ..Default::default() };
    match &cli.command {
        Command::Boolean { w } => {
            let w = g.perm(w)?;
            let by_words = match is_boolean_by_words_limited(&w, limits) {
                Ok(b) => Some(b),
                Err(Error::CapExceeded { .. } | Error::LengthGuard { .. }) => None,
                Err(e) => return Err(e.into()),
            };
            let r = BooleanReport {
                length: w.length(),
                support: w.support(),
                boolean: w.is_boolean(),
                by_patterns: w.is_boolean_by_patterns(),
                by_words,
                w,
            };
            match g.format {
                Format::Json => print_json(out, &r)?,
                Format::Text => {
                    emit!(out, "w          {} = {}", r.w, word_of(&r.w));
                    emit!(out, "length     {}", r.length);
                    emit!(out, "support    {}", r.support);
                    emit!(out, "boolean    {}", r.boolean);
                    emit!(out, "patterns   {}", r.by_patterns);
                    match r.by_words {
                        Some(b) => emit!(out, "words      {b}"),
                        None => emit!(out, "words      skipped (cap)"),
                    }
                }
                f => return Err(unsupported(f, "boolean")),
            }
            if r.by_words.is_some_and(|b| b != r.boolean) || r.by_patterns != r.boolean {
                return Err(Failure::Counterexample(format!("characterizations disagree on {}", r.w)));
            }
        }
        Command::Intersect { v, w, enumerate, both, .. } => {
            let (v, w) = g.pair(v, w)?;
            let enumerated = || -> CliResult<Vec<Permutation>> {
                let mut m = intersect_ideals(&v, &w, g.ideal_cap)?.maximal_elements();
                m.sort();
                Ok(m)
            };
            let (method, maximal) = if *enumerate {
                ("enumerate", enumerated()?)
            } else {
                let closed = intersection_maximal_closed_form(&v, &w)?;
                if *both {
                    let e = enumerated()?;
                    if e != closed {
                        return Err(Failure::Counterexample(format!(
                            "closed form {closed:?} but enumeration {e:?} for v = {v}, w = {w}"
                        )));
                    }
                    ("both", closed)
                } else {
                    ("closed-form", closed)
                }
            };
            match g.format {
                Format::Json => print_json(out, &IntersectReport { v, w, method, maximal })?,
                Format::Text => {
                    for m in &maximal {
                        emit!(out, "{m}  {}", word_of(m));
                    }
                }
                Format::Dot => out.push_str(&intersect_ideals(&v, &w, g.ideal_cap)?.to_dot()),
                f => return Err(unsupported(f, "intersect")),
            }
        }
        Command::Grade { w, all, per_u } => {
            let opts = GradeOptions { per_u_table: *per_u, ..GradeOptions::default() };
            let ws: Vec<Permutation> = match (w, all) {
                (Some(w), _) => vec![g.perm(w)?],
                (None, Some(n)) => Permutation::all(*n).collect(),
                (None, None) => unreachable!("clap requires one of them"),
            };
            let n = ws[0].degree();
            let signs = build_sign_assignment_with(n, SignSolver::Layered, g.max_degree)?;
            let reports: Vec<GradeReport> = ws.iter().map(|w| grade_with(w, &signs, opts)).collect::<Result<_, _>>()?;
            match g.format {
                Format::Json if all.is_some() => print_json(out, &reports)?,
                Format::Json => print_json(out, &reports[0])?,
                Format::Csv => {
                    let mut w = csv::Writer::from_writer(Vec::new());
                    for r in &reports {
                        w.serialize(GradeRow::from(r))?;
                    }
                    let bytes = w.into_inner().map_err(|e| Failure::Usage(e.to_string()))?;
                    out.push_str(&String::from_utf8_lossy(&bytes));
                }
                Format::Text => {
                    emit!(out, "{:<24} {:>3} {:>3} {:>5} {:>7}  witness_u", "w", "len", "a", "grade", "perfect");
                    for r in &reports {
                        let row = GradeRow::from(r);
                        emit!(
                            out,
                            "{:<24} {:>3} {:>3} {:>5} {:>7}  {}",
                            row.w.to_string(),
                            row.length,
                            row.a,
                            row.grade,
                            row.perfect,
                            row.witness_u
                        );
                        if let Some(table) = &r.per_u_exactness {
                            for e in table {
                                let d = e.first_nonzero_depth.map_or("exact".into(), |d| (-(d as i64)).to_string());
                                emit!(out, "    u = {:<20} {d}", e.u.to_string());
                            }
                        }
                    }
                }
                f => return Err(unsupported(f, "grade")),
            }
        }
        Command::Ork { v } => {
            let v = g.perm(v)?;
            let d = run_decompose(&v)?;
            let r = OrkReport {
                length: v.length(),
                runs: d.count,
                ork: v.length() - d.count,
                run_word: d.runs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join("|"),
                v,
            };
            match g.format {
                Format::Json => print_json(out, &r)?,
                Format::Text => {
                    emit!(out, "ork {}", r.ork);
                    emit!(out, "runs {} ({})", r.runs, r.run_word);
                    emit!(out, "length {}", r.length);
                }
                f => return Err(unsupported(f, "ork")),
            }
        }
        Command::Partner { v } => {
            let v = g.perm(v)?;
            let partner = optimal_partner(&v)?;
            let cert = build_matching(&v, &partner, g.ideal_cap)?;
            let matching = verify_matching(&cert)
                .map_err(|e| Failure::Counterexample(format!("matching for {v} rejected: {e}")))?;
            let ork = v.length() - run_decompose(&v)?.count;
            if matching.singleton_rank() != Some(ork) {
                return Err(Failure::Counterexample(format!("unexpected matching {matching:?} for {v}")));
            }
            let r = PartnerReport {
                partner_word: ReducedWord::new(v.degree(), partner_word(&v)?)?.compact(),
                unmatched: unmatched_element(&v)?,
                partner,
                ork,
                matching,
                v,
            };
            match g.format {
                Format::Json => print_json(out, &r)?,
                Format::Text => {
                    emit!(out, "partner   {} = [{}]", r.partner, r.partner_word);
                    emit!(out, "unmatched {} = {}", r.unmatched, word_of(&r.unmatched));
                    emit!(out, "ork       {}", r.ork);
                }
                Format::Dot => out.push_str(&cert.to_dot()),
                f => return Err(unsupported(f, "partner")),
            }
        }
        Command::Rs { w } | Command::Afun { w } => {
            let w = g.perm(w)?;
            let r = ShapeReport { shape: rs_shape(&w), a: a_function(&w), w };
            let afun = matches!(cli.command, Command::Afun { .. });
            match (g.format, afun) {
                (Format::Json, _) => print_json(out, &r)?,
                (Format::Text, false) => emit!(out, "{}", r.shape),
                (Format::Text, true) => emit!(out, "{}", r.a),
                (f, _) => return Err(unsupported(f, if afun { "afun" } else { "rs" })),
            }
        }
        Command::Selfish { k, universe } => {
            let universe: SupportSet = match (k, universe) {
                (Some(k), _) => SupportSet::interval(1, *k),
                (None, Some(u)) => u
                    .split(',')
                    .map(|t| t.trim().parse::<usize>().ok().filter(|&x| (1..64).contains(&x)))
                    .collect::<Option<SupportSet>>()
                    .ok_or_else(|| Failure::Usage(format!("bad letter set `{u}`")))?,
                (None, None) => unreachable!("clap requires one of them"),
            };
            if universe.max().is_some_and(|m| m > 40) {
                return Err(Failure::Usage("letters above 40 make the family too large".into()));
            }
            let fam = maximal_selfish(universe);
            let r = SelfishReport { universe, count: fam.len(), members: fam.members };
            match g.format {
                Format::Json => print_json(out, &r)?,
                Format::Text => {
                    emit!(out, "{} maximal selfish subsets of {}", r.count, r.universe);
                    for m in &r.members {
                        emit!(out, "{m}");
                    }
                }
                f => return Err(unsupported(f, "selfish")),
            }
        }
        Command::Verify { check, n, k, seed, exhaustive, samples } => {
            if check == "list" {
                for c in Check::ALL {
                    let alias = c.alias().map(|a| format!(" ({a})")).unwrap_or_default();
                    emit!(out, "{}{alias}: {}", c.name(), c.description());
                }
                return Ok(());
            }
            let check: Check = check.parse().map_err(|e: Error| Failure::Usage(e.to_string()))?;
            let cfg = SweepConfig {
                n: parse_range(n)?,
                // A single k means every k up to it.
                k: match parse_range(k)? {
                    r if r.start() == r.end() => 1..=*r.end(),
                    r => r,
                },
                seed: *seed,
                exhaustive: *exhaustive,
                samples: *samples,
                ..SweepConfig::default()
            };
            let needs_bgg = matches!(
                check,
                Check::PerfectMatchingExact
                    | Check::AlmostPerfectHomology
                    | Check::OptimalPartner
                    | Check::GradeEqualsA
                    | Check::ParabolicGrade
                    | Check::PerfectModules
                    | Check::BggStructure
            );
            if needs_bgg && *cfg.n.end() > g.max_degree {
                return Err(Failure::Usage(format!(
                    "degree {} exceeds the BGG limit {} (BRUHAT_MAX_DEGREE)",
                    cfg.n.end(),
                    g.max_degree
                )));
            }
            let report = run_check(check, &cfg)?;
            match g.format {
                Format::Json => print_json(out, &report)?,
                Format::Text => emit!(out, "{report}"),
                f => return Err(unsupported(f, "verify")),
            }
            if !report.passed() {
                return Err(Failure::Counterexample(format!("{} failed on {} cases", report.check, report.failure_count)));
            }
        }
        Command::Export { v, w, matched } => {
            let (v, w) = g.pair(v, w)?;
            match g.format {
                Format::Dot | Format::Text => {}
                f => return Err(unsupported(f, "export")),
            }
            if *matched {
                let cert = build_matching(&v, &w, g.ideal_cap)?;
                verify_matching(&cert).map_err(|e| Failure::Counterexample(format!("matching rejected: {e}")))?;
                out.push_str(&cert.to_dot());
            } else {
                out.push_str(&intersect_ideals(&v, &w, g.ideal_cap)?.to_dot());
            }
        }
    }
    Ok(())
}

fn is_boolean_by_words_limited(w: &Permutation, limits: bruhat_core::WordLimits) -> Result<bool, Error> {
    // Any word longer than the number of letters repeats one.
    if w.length() >= w.degree().max(1) {
        return Ok(false);
    }
    is_boolean_by_words_with(w, limits)
}
