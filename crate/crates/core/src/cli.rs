//! Batch verification front end. Every flag can also be set through an
//! environment variable named `CATALAN_<FLAG>`, e.g. `CATALAN_NORM_MAX`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use crate::analytic::denominator::{cassels_lower_bound, theorem3_bound, theorem3_exponent_scan, SPECIAL_PAIRS};
use crate::analytic::interval::{DEFAULT_PRECISION, MAX_PRECISION};
use crate::analytic::root_gap::theorem1_sweep;
use crate::analytic::tails::{random_grid, sweep};
use crate::criteria::{lemma2_verify, lemma4_sweep, remark1_witness, GcdSign};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::ideal::{split_type, SplitType};
use crate::primes::is_prime;
use crate::report::{exit_code, render, Format, Record, Verdict, EXIT_ERROR, EXIT_PASS, EXIT_USAGE};
use crate::search::{enumerate_by_norm, search_catalan_with, search_equal_exponent_with, SearchOptions, SearchReport};

/// Exponent pair `p,q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pair {
    pub p: u64,
    pub q: u64,
}

impl FromStr for Pair {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let (p, q) = s.split_once(',').ok_or_else(|| format!("expected p,q but got {s:?}"))?;
        let p: u64 = p.trim().parse().map_err(|e| format!("bad p in {s:?}: {e}"))?;
        let q: u64 = q.trim().parse().map_err(|e| format!("bad q in {s:?}: {e}"))?;
        if !is_prime(p) || !is_prime(q) {
            return Err(format!("{p},{q}: both exponents must be prime"));
        }
        if !(p > q && q >= 3) {
            return Err(format!("{p},{q}: need p > q >= 3"));
        }
        Ok(Pair { p, q })
    }
}

impl std::fmt::Display for Pair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{},{}", self.p, self.q)
    }
}

fn parse_field(s: &str) -> std::result::Result<FieldSpec, String> {
    let d: i64 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    FieldSpec::new(d).map_err(|e| e.to_string())
}

fn parse_prime(s: &str) -> std::result::Result<u64, String> {
    let p: u64 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if is_prime(p) {
        Ok(p)
    } else {
        Err(format!("{p} is not prime"))
    }
}

fn parse_precision(s: &str) -> std::result::Result<u32, String> {
    let bits: u32 = s.trim().parse().map_err(|e| format!("{s:?}: {e}"))?;
    if (32..=MAX_PRECISION).contains(&bits) {
        Ok(bits)
    } else {
        Err(format!("precision must lie in 32..={MAX_PRECISION}"))
    }
}

#[derive(Debug, Parser)]
#[command(name = "catalan", version, about = "Certify results on x^p - y^q = 1 over imaginary quadratic fields of class number one")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json, env = "CATALAN_FORMAT")]
    pub format: Format,

    /// Starting working precision in bits; doubled on inconclusive results.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION, value_parser = parse_precision, env = "CATALAN_PRECISION_BITS")]
    pub precision_bits: u32,
}

#[derive(Debug, Args)]
pub struct FieldArg {
    /// Radicand d of Q(sqrt(d)); all nine fields when omitted.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_field, env = "CATALAN_D")]
    pub d: Option<FieldSpec>,
}

impl FieldArg {
    fn fields(&self) -> Vec<FieldSpec> {
        self.d.map_or_else(FieldSpec::all, |f| vec![f])
    }
}

#[derive(Debug, Args)]
pub struct PairArgs {
    #[arg(long, value_parser = parse_prime, requires = "q", env = "CATALAN_P")]
    pub p: Option<u64>,
    #[arg(long, value_parser = parse_prime, requires = "p", env = "CATALAN_Q")]
    pub q: Option<u64>,
    /// Exponent pairs like `5,3`; repeat the flag or separate with `;`.
    #[arg(long, value_delimiter = ';', env = "CATALAN_PAIRS")]
    pub pairs: Vec<Pair>,
}

impl PairArgs {
    fn resolve(&self, default: &[(u64, u64)]) -> std::result::Result<Vec<Pair>, String> {
        let mut out = self.pairs.clone();
        if let (Some(p), Some(q)) = (self.p, self.q) {
            out.push(format!("{p},{q}").parse()?);
        }
        if out.is_empty() {
            out = default.iter().map(|&(p, q)| Pair { p, q }).collect();
        }
        Ok(out)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// No unit other than 1 is congruent to 1 modulo a prime above p >= 3.
    VerifyLemma2 {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, default_value_t = 97, env = "CATALAN_P_MAX")]
        p_max: u64,
    },
    /// 3 splits only in Q(sqrt(-11)) and ramifies only in Q(sqrt(-3)).
    VerifyLemma3 {
        #[command(flatten)]
        field: FieldArg,
    },
    /// gcd((x^p +- 1)/(x +- 1), x +- 1) is trivial or divides p.
    VerifyLemma4 {
        #[command(flatten)]
        field: FieldArg,
        /// Single prime to check; 3, 5, 7, 11 and 13 when omitted.
        #[arg(long, value_parser = parse_prime, env = "CATALAN_P")]
        p: Option<u64>,
        /// Every x with norm up to this bound is checked.
        #[arg(long, default_value_t = 200, env = "CATALAN_NORM_MAX")]
        norm_max: u64,
    },
    /// Binomial tail chain |E1| <= E2 <= majorant on a seeded grid.
    VerifyTails {
        #[arg(long, default_value_t = 2000, env = "CATALAN_SAMPLES")]
        samples: usize,
        #[arg(long, default_value_t = 1, env = "CATALAN_SEED")]
        seed: u64,
    },
    /// 0 < |((b^p-1)^q+1)^(1/p) - b^q| <= 1/2 for 4 <= N(b) <= norm-max.
    VerifyTheorem1 {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        pairs: PairArgs,
        #[arg(long, default_value_t = 100, env = "CATALAN_NORM_MAX")]
        norm_max: u64,
    },
    /// Denominator bounds below 1 and the sign scan of the exponent.
    Theorem3Bounds {
        #[command(flatten)]
        pairs: PairArgs,
        #[arg(long, default_value_t = 97, env = "CATALAN_P_MAX")]
        p_max: u64,
        #[arg(long, default_value_t = 97, env = "CATALAN_Q_MAX")]
        q_max: u64,
    },
    /// Exhaustive search for x^p - y^q = 1 with N(x) <= norm-max.
    Search {
        #[command(flatten)]
        field: FieldArg,
        #[command(flatten)]
        pairs: PairArgs,
        #[command(flatten)]
        scan: ScanArgs,
    },
    /// Exhaustive search for x^p - y^p = 1 with N(x) <= norm-max.
    SearchEqualExp {
        #[command(flatten)]
        field: FieldArg,
        #[arg(long, value_parser = parse_prime, default_value_t = 3, env = "CATALAN_P")]
        p: u64,
        #[command(flatten)]
        scan: ScanArgs,
    },
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, default_value_t = 10_000, env = "CATALAN_NORM_MAX")]
    pub norm_max: u64,
    /// Norm-range shards; 0 picks a multiple of the thread count.
    #[arg(long, default_value_t = 0, env = "CATALAN_SHARDS")]
    pub shards: usize,
    /// Resume file listing already scanned elements; needs a single field and pair.
    #[arg(long, env = "CATALAN_CHECKPOINT")]
    pub checkpoint: Option<PathBuf>,
}

impl ScanArgs {
    fn options(&self) -> SearchOptions {
        SearchOptions {
            shards: self.shards,
            checkpoint: self.checkpoint.clone(),
        }
    }
}

const THEOREM1_PAIRS: [(u64, u64); 6] = [(5, 3), (7, 3), (7, 5), (11, 3), (11, 5), (11, 7)];

fn usage(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

fn lemma2(fields: &[FieldSpec], p_max: u64) -> Result<Vec<Record>> {
    fields
        .iter()
        .map(|&f| {
            let r = lemma2_verify(f, p_max)?;
            let witness = r
                .witnesses
                .first()
                .map(|w| format!("unit={} p={} prime={}", w.unit, w.p, w.prime));
            Ok(Record::new(format!("lemma2/d={}", f.d()), "Lemma 2", Verdict::from_bool(r.holds()))
                .param("d", f.d())
                .param("p_max", p_max)
                .param("checked", r.checked)
                .param("witnesses", r.witnesses.len())
                .witness(witness))
        })
        .collect()
}

fn lemma3(fields: &[FieldSpec]) -> Result<Vec<Record>> {
    fields
        .iter()
        .map(|&f| {
            let st = split_type(f, 3)?;
            let expected = match f.d() {
                -11 => "split",
                -3 => "ramified",
                _ => "inert",
            };
            let ok = st.kind() == expected;
            let witness = match (&st, ok) {
                (SplitType::Split(a, b), false) => Some(format!("3 = {a} * {b}")),
                _ => None,
            };
            Ok(Record::new(format!("lemma3/d={}", f.d()), "Lemma 3", Verdict::from_bool(ok))
                .param("d", f.d())
                .param("split_type", st.kind())
                .param("expected", expected)
                .witness(witness))
        })
        .collect()
}

fn lemma4(fields: &[FieldSpec], prime: Option<u64>, norm_max: u64) -> Result<Vec<Record>> {
    let primes = prime.map_or_else(|| vec![3, 5, 7, 11, 13], |p| vec![p]);
    let mut out = Vec::new();
    for &f in fields {
        let xs = enumerate_by_norm(f, norm_max);
        for &p in &primes {
            let triples: Vec<_> = xs
                .iter()
                .flat_map(|x| [(x.clone(), p, GcdSign::Minus), (x.clone(), p, GcdSign::Plus)])
                .filter(|(_, p, s)| *p > 2 || *s == GcdSign::Minus)
                .collect();
            let s = lemma4_sweep(&triples)?;
            let witness = s
                .failures
                .first()
                .map(|w| format!("x={} sign={} gcd={}", w.x, w.sign, w.gcd));
            out.push(
                Record::new(format!("lemma4/d={}/p={p}", f.d()), "Lemma 4", Verdict::from_bool(s.holds()))
                    .param("d", f.d())
                    .param("p", p)
                    .param("norm_max", norm_max)
                    .param("checked", s.checked)
                    .param("degenerate", s.degenerate)
                    .witness(witness),
            );
            if matches!(split_type(f, p)?, SplitType::Inert(_)) {
                continue;
            }
            let w = remark1_witness(f, p, norm_max)?;
            out.push(
                Record::new(format!("remark1/d={}/p={p}", f.d()), "Remark 1", Verdict::from_bool(w.is_some()))
                    .param("d", f.d())
                    .param("p", p)
                    .param("norm_max", norm_max)
                    .witness(w.map(|w| format!("x={} sign={} gcd={}", w.x, w.sign, w.gcd))),
            );
        }
    }
    Ok(out)
}

fn tails(samples: usize, seed: u64, prec: u32) -> Result<Vec<Record>> {
    let grid = random_grid(samples, seed);
    let s = sweep(&grid, prec)?;
    let verdict = if !s.refuted.is_empty() {
        Verdict::Fail
    } else if !s.inconclusive.is_empty() {
        Verdict::Inconclusive
    } else {
        Verdict::Pass
    };
    let witness = s
        .refuted
        .first()
        .or(s.inconclusive.first())
        .map(|t| format!("a={} |z|={} m={}", t.a, t.radius, t.m));
    Ok(vec![Record::new(format!("tails/seed={seed}"), "Lemmas 5-6", verdict)
        .param("samples", s.points)
        .param("certified", s.certified)
        .param("inconclusive", s.inconclusive.len())
        .param("refuted", s.refuted.len())
        .param("max_doublings", s.max_doublings)
        .param("precision_bits", prec)
        .witness(witness)])
}

fn theorem1(fields: &[FieldSpec], pairs: &[Pair], norm_max: u64, prec: u32) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for &f in fields {
        for pair in pairs {
            let s = theorem1_sweep(f, pair.p as u32, pair.q as u32, norm_max, prec)?;
            let verdict = if !s.failures.is_empty() {
                Verdict::Fail
            } else if !s.inconclusive.is_empty() {
                Verdict::Inconclusive
            } else {
                Verdict::Pass
            };
            let witness = s.failures.first().or(s.inconclusive.first()).map(|b| format!("b={b}"));
            out.push(
                Record::new(format!("theorem1/d={}/p={},q={}", f.d(), pair.p, pair.q), "Theorem 1", verdict)
                    .param("d", f.d())
                    .param("p", pair.p)
                    .param("q", pair.q)
                    .param("norm_max", norm_max)
                    .param("checked", s.checked)
                    .param("certified", s.certified)
                    .param("max_eps", format!("{:.6}", s.max_eps))
                    .param("max_bits", s.max_bits)
                    .witness(witness),
            );
        }
    }
    Ok(out)
}

fn theorem3(pairs: &[Pair], p_max: u64, q_max: u64, prec: u32) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for pair in pairs {
        let x = cassels_lower_bound(pair.p, pair.q, prec)?;
        let b = theorem3_bound(pair.p, pair.q, &x, prec)?;
        out.push(
            Record::new(format!("theorem3/p={},q={}", pair.p, pair.q), "Theorem 3", Verdict::from_bool(b.below_one()))
                .param("p", pair.p)
                .param("q", pair.q)
                .param("m", b.m)
                .param("t", b.t)
                .param("t_closed_form", &b.t_closed_form)
                .param("exponent", &b.exponent)
                .param("special_case", format!("{:?}", b.special_case).to_lowercase())
                .param("bound", format!("{:.6}", b.final_bound.mid().to_f64()))
                .param("bound_upper", format!("{:.6e}", b.final_bound.hi().to_f64())),
        );
    }
    let scan = theorem3_exponent_scan(p_max, q_max, prec)?;
    let list = |v: &[(u64, u64)]| {
        v.iter()
            .map(|(p, q)| format!("({p},{q})"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let q_gt5 = Record::new("theorem3-scan/q>5", "Theorem 3", Verdict::from_bool(scan.violations_q_gt5.is_empty()))
        .param("p_max", p_max)
        .param("q_max", q_max)
        .param("pairs_checked", scan.pairs_checked)
        .witness((!scan.violations_q_gt5.is_empty()).then(|| list(&scan.violations_q_gt5)));
    let extra: Vec<(u64, u64)> = scan
        .exceptional
        .iter()
        .copied()
        .filter(|pq| !SPECIAL_PAIRS.contains(pq))
        .collect();
    let exceptions = Record::new(
        "theorem3-scan/exceptions",
        "Theorem 3",
        Verdict::from_bool(scan.exceptions_match_special_pairs()),
    )
    .param("p_max", p_max)
    .param("q_max", q_max)
    .param("exceptional", scan.exceptional.len())
    .param("closed_form_exceptional", scan.exceptional_closed_form.len())
    .param("closed_form_disagreements", scan.closed_form_disagreements)
    .witness((!extra.is_empty()).then(|| format!("unexpected nonnegative exponents: {}", list(&extra))));
    let refined = Record::new(
        "theorem3-scan/refined-bounds",
        "Theorem 3",
        Verdict::from_bool(scan.refined_not_below_one.is_empty()),
    )
    .param("exceptional", scan.exceptional.len())
    .witness((!scan.refined_not_below_one.is_empty()).then(|| list(&scan.refined_not_below_one)));
    out.extend([q_gt5, exceptions, refined]);
    Ok(out)
}

fn search_record(kind: &str, anchor: &str, r: &SearchReport) -> Record {
    let id = if r.p == r.q {
        format!("{kind}/d={}/p={}", r.field.d(), r.p)
    } else {
        format!("{kind}/d={}/p={},q={}", r.field.d(), r.p, r.q)
    };
    let witness = r.solutions.first().map(|s| {
        let mut w = format!("x={} y={}", s.x, s.y);
        if let Some(c) = &s.cassels {
            w.push_str(&format!(" q_divides_x={} bound={}", c.q_divides_x, c.bound_thm2));
        }
        w
    });
    Record::new(id, anchor, Verdict::from_bool(r.solutions.is_empty()))
        .param("d", r.field.d())
        .param("p", r.p)
        .param("q", r.q)
        .param("norm_max", r.norm_bound)
        .param("scanned", r.candidates_scanned)
        .param("solutions", r.solutions.len())
        .param("near_misses", r.near_misses.len())
        .param("inconsistent", r.inconsistent_solutions().len())
        .witness(witness)
}

fn check_checkpoint(scan: &ScanArgs, runs: usize) -> Result<()> {
    if scan.checkpoint.is_some() && runs != 1 {
        return Err(usage("--checkpoint needs exactly one field and one exponent pair"));
    }
    Ok(())
}

/// Run a parsed command and collect its records.
pub fn execute(cli: &Cli) -> Result<Vec<Record>> {
    let prec = cli.precision_bits;
    match &cli.command {
        Command::VerifyLemma2 { field, p_max } => lemma2(&field.fields(), *p_max),
        Command::VerifyLemma3 { field } => lemma3(&field.fields()),
        Command::VerifyLemma4 { field, p, norm_max } => lemma4(&field.fields(), *p, *norm_max),
        Command::VerifyTails { samples, seed } => tails(*samples, *seed, prec),
        Command::VerifyTheorem1 { field, pairs, norm_max } => {
            let pairs = pairs.resolve(&THEOREM1_PAIRS).map_err(usage)?;
            theorem1(&field.fields(), &pairs, *norm_max, prec)
        }
        Command::Theorem3Bounds { pairs, p_max, q_max } => {
            let pairs = pairs.resolve(&SPECIAL_PAIRS).map_err(usage)?;
            theorem3(&pairs, *p_max, *q_max, prec)
        }
        Command::Search { field, pairs, scan } => {
            let pairs = pairs.resolve(&SPECIAL_PAIRS).map_err(usage)?;
            let fields = field.fields();
            check_checkpoint(scan, fields.len() * pairs.len())?;
            let mut out = Vec::new();
            for &f in &fields {
                for pair in &pairs {
                    let r = search_catalan_with(f, pair.p, pair.q, scan.norm_max, &scan.options())?;
                    out.push(search_record("search", "Theorem 2", &r));
                }
            }
            Ok(out)
        }
        Command::SearchEqualExp { field, p, scan } => {
            let fields = field.fields();
            check_checkpoint(scan, fields.len())?;
            fields
                .iter()
                .map(|&f| {
                    let r = search_equal_exponent_with(f, *p, scan.norm_max, &scan.options())?;
                    Ok(search_record("search-equal-exp", "Lemma 1", &r))
                })
                .collect()
        }
    }
}

/// Parse `args`, run, write the report to `out` and return the exit code.
pub fn run_from<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return if code == 0 { EXIT_PASS } else { EXIT_USAGE };
        }
    };
    match execute(&cli) {
        Ok(records) => {
            if out.write_all(render(&records, cli.format).as_bytes()).is_err() {
                return EXIT_ERROR;
            }
            exit_code(&records)
        }
        Err(Error::Parse(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
    }
}

/// Entry point for the `catalan` binary.
pub fn run() -> i32 {
    run_from(std::env::args_os(), &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
