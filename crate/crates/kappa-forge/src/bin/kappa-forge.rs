//! Command-line front end: polynomial analysis, theorem verification,
//! `R`-function CSV sampling, and conjecture falsification searches.
//!
//! Exit codes: 0 pass/computed, 1 claim falsified or violation found,
//! 2 usage or parse error, 3 precondition unmet, 4 I/O error.

use clap::{Parser, Subcommand};
use kappa_forge::conjectures::{self, ConjectureId, SearchConfig};
use kappa_forge::diffpoly::{self, KappaKind};
use kappa_forge::polycore::{rat, rat_int, Rat};
use kappa_forge::report::RunReport;
use kappa_forge::rootcount::{self, IntervalQ};
use kappa_forge::specfile::PolySpecFile;
use kappa_forge::theoremlab::{self, VerificationResult};
use kappa_forge::Error;
use num::{BigInt, Signed};
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "kappa-forge", version, about = "Exact analysis of p*p'' - k*(p')^2")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Classify kappa, split trivial from non-trivial zeroes, count them.
    Analyze {
        /// Polynomial file (JSON), or "-" for stdin.
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: String,
    },
    /// Check one counting claim against the polynomial.
    Verify {
        poly: String,
        /// Claim id: 2.1, 2.2, 2.3, 3.1, 3.2, 3.5, 3.8, 4.1, 4.2, 4.3,
        /// 4.5, 4.6, 4.12, A.1, A.3, or conjecture1.
        #[arg(long)]
        theorem: String,
        #[arg(long, allow_hyphen_values = true)]
        kappa: Option<String>,
        /// Two rational endpoints a b.
        #[arg(long, num_args = 2, allow_hyphen_values = true)]
        interval: Option<Vec<String>>,
    },
    /// Sample R = p*p''/(p')^2 on an exact rational grid into a CSV file.
    SampleR {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long)]
        points: usize,
        #[arg(long)]
        out: PathBuf,
        /// Render values with this many decimal digits instead of "p/q".
        #[arg(long)]
        decimal: Option<u32>,
    },
    /// Seeded randomized falsification search.
    Search {
        #[arg(long)]
        conjecture: u8,
        #[arg(long)]
        trials: usize,
        #[arg(long)]
        seed: u64,
        /// Degree range "lo..hi".
        #[arg(long)]
        degrees: Option<String>,
        /// Seed the known counterexample family at this parameter as trial 0.
        #[arg(long = "inject-family", allow_hyphen_values = true)]
        inject_family: Option<String>,
    },
}

const EXIT_FALSIFIED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_PRECONDITION: u8 = 3;
const EXIT_IO: u8 = 4;

fn usage_err(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_USAGE)
}

fn core_err(e: Error) -> ExitCode {
    eprintln!("error: {e}");
    match e {
        Error::Io(_) => ExitCode::from(EXIT_IO),
        _ => ExitCode::from(EXIT_PRECONDITION),
    }
}

fn parse_rat_arg(s: &str) -> Result<Rat, ExitCode> {
    Rat::from_str(s.trim()).map_err(|e| usage_err(format!("bad rational {s:?}: {e}")))
}

/// Reads and parses a polynomial file; parse problems are usage errors.
fn load(path: &str) -> Result<(PolySpecFile, Vec<u8>), ExitCode> {
    let bytes = if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .map_err(|e| usage_err(e))?;
        buf
    } else {
        std::fs::read(path).map_err(|e| {
            eprintln!("error: {path}: {e}");
            ExitCode::from(EXIT_IO)
        })?
    };
    let text = String::from_utf8(bytes.clone()).map_err(|e| usage_err(e))?;
    let file = PolySpecFile::parse(&text).map_err(|e| usage_err(e))?;
    Ok((file, bytes))
}

fn check_thread_cap() -> Result<(), ExitCode> {
    match std::env::var("KAPPA_FORGE_THREADS") {
        Err(_) => Ok(()),
        Ok(v) => match v.trim().parse::<u64>() {
            Ok(n) if n >= 1 => Ok(()),
            _ => Err(usage_err(format!(
                "KAPPA_FORGE_THREADS must be a positive integer, got {v:?}"
            ))),
        },
    }
}

fn main() -> ExitCode {
    if let Err(code) = check_thread_cap() {
        return code;
    }
    match Cli::parse().cmd {
        Cmd::Analyze { poly, kappa } => cmd_analyze(&poly, &kappa),
        Cmd::Verify {
            poly,
            theorem,
            kappa,
            interval,
        } => cmd_verify(&poly, &theorem, kappa.as_deref(), interval.as_deref()),
        Cmd::SampleR {
            poly,
            from,
            to,
            points,
            out,
            decimal,
        } => cmd_sample_r(&poly, &from, &to, points, &out, decimal),
        Cmd::Search {
            conjecture,
            trials,
            seed,
            degrees,
            inject_family,
        } => cmd_search(conjecture, trials, seed, degrees.as_deref(), inject_family.as_deref()),
    }
}

fn cmd_analyze(path: &str, kappa: &str) -> ExitCode {
    let (file, bytes) = match load(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let kappa = match parse_rat_arg(kappa) {
        Ok(k) => k,
        Err(code) => return code,
    };
    let run = || -> kappa_forge::Result<RunReport> {
        let p = file.to_poly()?;
        let n = p
            .degree()
            .filter(|n| *n >= 2)
            .ok_or_else(|| Error::Precondition("analysis needs degree >= 2".into()))?;
        let d = kappa_forge::polycore::distinct_zero_count(&p)?;
        let class = diffpoly::kappa_classify(&kappa, n)?;
        let report = diffpoly::nontrivial_zeros(&p, &kappa)?;
        let mut out = RunReport::new("analyze");
        out.push_digest(&bytes);
        out.push("p", &p);
        out.push("kappa", &kappa);
        out.push("n", n);
        out.push("d", d);
        out.push(
            "ladder-class",
            match class.kind {
                KappaKind::NonCritical => "non-critical".to_string(),
                KappaKind::Critical(k) => format!("critical-step-{k}"),
                KappaKind::TopCritical => "top-critical".to_string(),
            },
        );
        if report.identically_zero {
            out.push("f-kappa", "identically zero");
            return Ok(out);
        }
        out.push("z-nt", report.z_nt);
        out.push("z-real-nt", report.z_real_nt);
        out.push("z-nonreal-nt", report.z_nonreal_nt);
        for entry in &report.trivial_ledger {
            out.push(
                &format!("trivial-multiplicity-{}", entry.multiplicity),
                format!("{} distinct zeroes (factor {})", entry.root_count(), entry.factor),
            );
        }
        Ok(out)
    };
    match run() {
        Ok(report) => {
            print!("{}", report.render());
            ExitCode::SUCCESS
        }
        Err(e) => core_err(e),
    }
}

fn verify_dispatch(
    file: &PolySpecFile,
    theorem: &str,
    kappa: Option<&Rat>,
    interval: Option<&IntervalQ>,
) -> kappa_forge::Result<Vec<VerificationResult>> {
    let p = file.to_poly()?;
    let spec = file.to_root_spec()?;
    let need_spec = || {
        spec.clone().ok_or_else(|| {
            Error::Precondition("this claim needs the polynomial in roots form".into())
        })
    };
    let need_kappa = || {
        kappa
            .cloned()
            .ok_or_else(|| Error::Precondition("this claim needs --kappa".into()))
    };
    let need_interval = || {
        interval
            .cloned()
            .ok_or_else(|| Error::Precondition("this claim needs --interval".into()))
    };
    let n = p
        .degree()
        .filter(|n| *n >= 2)
        .ok_or_else(|| Error::Precondition("verification needs degree >= 2".into()))? as i64;
    match theorem {
        "2.1" | "2.2" | "2.3" => {
            let spec = need_spec()?;
            if let Some(kappa) = kappa {
                Ok(vec![theoremlab::verify_main_bounds(&spec, kappa)?])
            } else {
                let sweep = theoremlab::kappa_sweep(&spec)?;
                let mut out: Vec<VerificationResult> = sweep
                    .windows
                    .iter()
                    .map(|w| {
                        VerificationResult::bracket(
                            format!("{}@{}", w.claim_id, w.kappa),
                            w.z_c as i64,
                            w.lower,
                            w.upper,
                            format!("kappa = {}", w.kappa),
                        )
                    })
                    .collect();
                out.push(VerificationResult {
                    claim_id: "sweep-monotone".into(),
                    pass: sweep.monotone,
                    observed: 0,
                    lower: 0,
                    upper: 0,
                    witness: "Z_C non-decreasing along the ladder sweep".into(),
                });
                Ok(out)
            }
        }
        "3.1" | "3.2" => Ok(vec![theoremlab::verify_total_nontrivial(&p, &need_kappa()?)?]),
        "3.5" => Ok(vec![theoremlab::verify_degree_drop(&p)?]),
        "3.8" => Ok(vec![theoremlab::verify_distinct_bound_of(&p)?]),
        "4.1" => Ok(vec![theoremlab::verify_r_structure(&need_spec()?, &rat(1, 64))?]),
        "4.2" => Ok(vec![theoremlab::verify_r_zero_layout(&need_spec()?)?]),
        "4.3" => Ok(vec![theoremlab::verify_equation_solution_count(
            &need_spec()?,
            &need_kappa()?,
        )?]),
        "4.5" => Ok(vec![theoremlab::verify_main_bounds(
            &need_spec()?,
            &rat(-1, 1000),
        )?]),
        "4.6" => Ok(vec![theoremlab::verify_main_bounds(
            &need_spec()?,
            &(rat(n - 1, n) + rat(1, 1000)),
        )?]),
        "4.12" => Ok(vec![theoremlab::verify_global_inequality(
            &need_spec()?,
            &need_kappa()?,
        )?]),
        "A.1" => Ok(vec![theoremlab::verify_sign_lemma(
            &p,
            &need_kappa()?,
            &need_interval()?,
        )?]),
        "A.3" => Ok(vec![theoremlab::verify_interval_inequality(
            &p,
            &need_kappa()?,
            &need_interval()?,
        )?]),
        "conjecture1" => {
            let top = diffpoly::ladder_value(n as usize);
            let z_c = rootcount::nonreal_count(&p)? as i64;
            let report = diffpoly::nontrivial_zeros(&p, &top)?;
            let z_r = report.z_real_nt as i64;
            Ok(vec![VerificationResult::bracket(
                "conjecture-1",
                z_r,
                0,
                z_c,
                format!("Z_R = {z_r} vs Z_C(p) = {z_c} at kappa = {top}"),
            )])
        }
        other => Err(Error::InvalidInput(format!("unknown claim id {other:?}"))),
    }
}

fn cmd_verify(
    path: &str,
    theorem: &str,
    kappa: Option<&str>,
    interval: Option<&[String]>,
) -> ExitCode {
    let (file, bytes) = match load(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let kappa = match kappa.map(parse_rat_arg).transpose() {
        Ok(k) => k,
        Err(code) => return code,
    };
    let interval = match interval {
        None => None,
        Some(ends) => {
            let a = match parse_rat_arg(&ends[0]) {
                Ok(v) => v,
                Err(code) => return code,
            };
            let b = match parse_rat_arg(&ends[1]) {
                Ok(v) => v,
                Err(code) => return code,
            };
            match IntervalQ::finite(a, b) {
                Ok(iv) => Some(iv),
                Err(e) => return usage_err(e),
            }
        }
    };
    let known = [
        "2.1", "2.2", "2.3", "3.1", "3.2", "3.5", "3.8", "4.1", "4.2", "4.3", "4.5", "4.6",
        "4.12", "A.1", "A.3", "conjecture1",
    ];
    if !known.contains(&theorem) {
        return usage_err(format!("unknown claim id {theorem:?}"));
    }
    match verify_dispatch(&file, theorem, kappa.as_ref(), interval.as_ref()) {
        Ok(results) => {
            let mut out = RunReport::new("verify");
            out.push_digest(&bytes);
            out.push("claim", theorem);
            let mut all_pass = true;
            for r in &results {
                all_pass &= r.pass;
                out.push(
                    &format!("result-{}", r.claim_id),
                    format!(
                        "{} observed {} in [{}, {}]; {}",
                        if r.pass { "pass" } else { "FAIL" },
                        r.observed,
                        r.lower,
                        r.upper,
                        r.witness
                    ),
                );
            }
            out.push("verdict", if all_pass { "pass" } else { "falsified" });
            print!("{}", out.render());
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FALSIFIED)
            }
        }
        Err(e) => core_err(e),
    }
}

/// Fixed-precision decimal rendering of an exact rational, round half away
/// from zero.
fn decimal_string(x: &Rat, digits: u32) -> String {
    let scale = BigInt::from(10u32).pow(digits);
    let scaled = (x * Rat::from_integer(scale.clone())).round();
    let v = scaled.numer().clone();
    let sign = if v.is_negative() { "-" } else { "" };
    let mag = v.abs();
    let (int, frac) = (mag.clone() / &scale, mag % &scale);
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac:0>width$}", width = digits as usize)
    }
}

fn cmd_sample_r(
    path: &str,
    from: &str,
    to: &str,
    points: usize,
    out: &PathBuf,
    decimal: Option<u32>,
) -> ExitCode {
    let (file, bytes) = match load(path) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let from = match parse_rat_arg(from) {
        Ok(v) => v,
        Err(code) => return code,
    };
    let to = match parse_rat_arg(to) {
        Ok(v) => v,
        Err(code) => return code,
    };
    if from >= to || points < 2 {
        return usage_err("need from < to and at least 2 points");
    }
    let run = || -> kappa_forge::Result<(String, usize)> {
        let p = file.to_poly()?;
        let step = (&to - &from) / rat_int(points as i64 - 1);
        let grid: Vec<Rat> = (0..points)
            .map(|i| &from + &step * rat_int(i as i64))
            .collect();
        let samples = diffpoly::sample_r(&p, &grid)?;
        let mut csv = String::from("x,R\n");
        let mut poles = 0usize;
        let fmt = |v: &Rat| match decimal {
            Some(d) => decimal_string(v, d),
            None => v.to_string(),
        };
        for (x, s) in &samples {
            match s {
                diffpoly::RSample::Value(v) => {
                    csv.push_str(&format!("{},{}\n", fmt(x), fmt(v)));
                }
                diffpoly::RSample::Pole => {
                    poles += 1;
                    csv.push_str(&format!("{},pole\n", fmt(x)));
                }
            }
        }
        std::fs::write(out, &csv)?;
        Ok((csv, poles))
    };
    match run() {
        Ok((csv, poles)) => {
            let mut rep = RunReport::new("sample-r");
            rep.push_digest(&bytes);
            rep.push("points", points);
            rep.push("poles", poles);
            rep.push("out", out.display());
            rep.push("csv-digest", kappa_forge::report::sha256_hex(csv.as_bytes()));
            print!("{}", rep.render());
            ExitCode::SUCCESS
        }
        Err(e) => core_err(e),
    }
}

fn cmd_search(
    conjecture: u8,
    trials: usize,
    seed: u64,
    degrees: Option<&str>,
    inject_family: Option<&str>,
) -> ExitCode {
    let id = match conjecture {
        1 => ConjectureId::C1,
        2 => ConjectureId::C2,
        3 => ConjectureId::C3,
        other => return usage_err(format!("unknown conjecture {other}")),
    };
    let build = || -> kappa_forge::Result<SearchConfig> {
        let mut cfg = SearchConfig::new(id, trials, seed)?;
        if let Some(spec) = degrees {
            let (lo, hi) = spec
                .split_once("..")
                .ok_or_else(|| Error::InvalidInput("degrees must look like lo..hi".into()))?;
            let lo = lo
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput("bad degree bound".into()))?;
            let hi = hi
                .trim()
                .parse()
                .map_err(|_| Error::InvalidInput("bad degree bound".into()))?;
            cfg = cfg.with_degrees(lo, hi)?;
        }
        if let Some(a) = inject_family {
            cfg.inject_family = Some(
                Rat::from_str(a.trim())
                    .map_err(|e| Error::InvalidInput(format!("bad parameter {a:?}: {e}")))?,
            );
        }
        Ok(cfg)
    };
    let cfg = match build() {
        Ok(cfg) => cfg,
        Err(e) => return usage_err(e),
    };
    match conjectures::random_search(&cfg) {
        Ok(report) => {
            let mut out = RunReport::new("search");
            out.push("conjecture", conjecture);
            out.push("trials", report.trials_run);
            out.push("seed", report.seed);
            out.push(
                "degrees",
                format!("{}..{}", cfg.degree_range.0, cfg.degree_range.1),
            );
            if let Some(a) = &cfg.inject_family {
                out.push("inject-family", a);
            }
            out.push("violations", report.violations.len());
            for v in &report.violations {
                out.push(
                    &format!("violation-{}", v.trial),
                    format!("p = {}, kappa = {}: {}", v.p, v.kappa, v.detail),
                );
            }
            print!("{}", out.render());
            if report.violations.is_empty() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(EXIT_FALSIFIED)
            }
        }
        Err(e) => core_err(e),
    }
}
