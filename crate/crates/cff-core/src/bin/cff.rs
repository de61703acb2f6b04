//! Command-line front end: evaluate terms, emit formulas, compute chi/omega,
//! factor, run verification suites, and benchmark bit growth.
//!
//! Exit codes: 0 on success, 1 on a verification mismatch (the math failed),
//! 2 on usage, parse, domain or capacity errors — so CI can tell a wrong
//! result from a misused harness.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

use cff_core::budget::BitBudget;
use cff_core::error::Error;
use cff_core::factoring::{self, FactorReport};
use cff_core::formulas::{emit, EvalBackend, FormulaId};
use cff_core::hypercube::{self, HypercubeSpec, HypercubeSpecDto};
use cff_core::term::{evaluate_bounded, parse, Env};
use cff_core::verify::{self, BenchFormula, ReportLine, Suite};

#[derive(Parser)]
#[command(name = "cff", about = "Closed-form factoring toolkit", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    /// Full term when its M fits the bit ceiling, native beyond it.
    Auto,
    /// Conventional algorithms (factorization, popcount).
    Native,
    /// Full closed-form evaluation.
    Term,
    /// Closed forms with named native subcalls where expansion is infeasible.
    Layered,
}

impl BackendArg {
    /// Resolves `auto` against the dominant requirement of the command.
    fn resolve(self, required_bits: u128, budget: BitBudget) -> EvalBackend {
        match self {
            BackendArg::Auto => hypercube::default_backend(required_bits, budget),
            BackendArg::Native => EvalBackend::Native,
            BackendArg::Term => EvalBackend::FullTerm,
            BackendArg::Layered => EvalBackend::Layered,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    T,
    U,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchFormulaArg {
    Chi,
    Omega,
}

#[derive(Args)]
struct Bindings {
    /// Variable binding `name=value` (repeatable).
    #[arg(short, long = "bind", value_name = "NAME=VALUE")]
    bind: Vec<String>,
}

impl Bindings {
    fn env(&self) -> Result<Env, Error> {
        let mut env = Env::new();
        for raw in &self.bind {
            let (name, value) = raw.split_once('=').ok_or_else(|| {
                Error::Domain(format!("binding `{raw}` is not of the form name=value"))
            })?;
            let value = BigUint::parse_bytes(value.as_bytes(), 10).ok_or_else(|| {
                Error::Domain(format!("binding `{raw}` needs a decimal natural value"))
            })?;
            env = env.bind(name.trim(), value);
        }
        Ok(env)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term given inline or from a file; prints the exact decimal value.
    Eval {
        /// Term text; omit when using --file.
        term: Option<String>,
        /// Read the term from a file instead ("-" for stdin).
        #[arg(short, long)]
        file: Option<String>,
        #[command(flatten)]
        bindings: Bindings,
    },
    /// Compute a non-trivial divisor of n via T(n) or U(n).
    Factor {
        n: u64,
        #[arg(long, value_enum, ignore_case = true, default_value = "t")]
        method: MethodArg,
        /// Backend for chi/omega; root, factorial and gcd always run natively.
        #[arg(long, value_enum, ignore_case = true, default_value = "auto")]
        backend: BackendArg,
        /// Also print the report as a single JSON line.
        #[arg(long)]
        json: bool,
    },
    /// chi(n): the largest s whose square divides n.
    Chi {
        n: u64,
        #[arg(long, value_enum, ignore_case = true, default_value = "auto")]
        backend: BackendArg,
    },
    /// omega(n): the number of distinct prime divisors.
    Omega {
        n: u64,
        #[arg(long, value_enum, ignore_case = true, default_value = "auto")]
        backend: BackendArg,
    },
    /// Emit a formula as canonical term text.
    Emit {
        /// One of: hw, nu2, gcd, binom1, binom2, factorial, delta, gseries,
        /// pow, chi, omega.
        #[arg(long)]
        formula: String,
        /// Series weight for --formula gseries (0, 1, 2 or 4).
        #[arg(long)]
        r: Option<u64>,
        /// Also print node count, depth and pow count.
        #[arg(long)]
        stats: bool,
        #[command(flatten)]
        bindings: Bindings,
    },
    /// Count zeros of an exponential polynomial from a JSON spec file
    /// {"k":…, "t":…, "u":…, "c0":…, "monomials":[{"c":…, "v":[…], "r":[…]}]}.
    Count {
        /// Path to the spec ("-" for stdin).
        spec: String,
    },
    /// Run a verification suite over a range.
    Verify {
        /// One of: chi, omega, gcd, nu2, hw, binom, factorial, pow, gseries,
        /// hypercube-random, systems, residues, root-conjecture, factor, witness.
        #[arg(long)]
        suite: String,
        /// Inclusive range `a..b`; defaults to the suite's verified envelope.
        #[arg(long)]
        range: Option<String>,
        /// Emit one JSON object per report line on stdout.
        #[arg(long)]
        json: bool,
    },
    /// Measure bit growth of the hypercube integer M per n.
    Bench {
        #[arg(long, value_enum)]
        formula: BenchFormulaArg,
        #[arg(long)]
        max_n: u64,
        /// Also write rows as CSV (header `n,bits,micros`).
        #[arg(long)]
        csv: Option<String>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = BitBudget::from_env();
    match run(cli.command, budget) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        // A failed mathematical property is a verification failure; anything
        // else is a usage or capacity problem.
        Error::PropertyViolation(_) => 1,
        _ => 2,
    }
}

fn run(command: Command, budget: BitBudget) -> Result<ExitCode, Error> {
    match command {
        Command::Eval {
            term,
            file,
            bindings,
        } => {
            let text = match (term, file) {
                (Some(t), None) => t,
                (None, Some(path)) => read_input(&path)?,
                _ => {
                    return Err(Error::Domain(
                        "pass a term inline or via --file, not both".into(),
                    ))
                }
            };
            let term = parse(&text)?;
            let value = evaluate_bounded(&term, &bindings.env()?, budget)?;
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Factor {
            n,
            method,
            backend,
            json,
        } => {
            // omega's M dominates chi's at every n.
            let backend = backend.resolve(hypercube::omega_full_term_bits(n), budget);
            let report = match method {
                MethodArg::T => factoring::factor_t(n, backend, budget)?,
                MethodArg::U => factoring::factor_u(n, backend, budget)?,
            };
            print_factor_report(&report);
            if json {
                println!("{}", factor_report_json(&report));
            }
            if report.proper || cff_core::oracles::is_prime(n) {
                Ok(ExitCode::SUCCESS)
            } else {
                // Contract violation: composite input without a proper divisor.
                Ok(ExitCode::from(1))
            }
        }
        Command::Chi { n, backend } => {
            let backend = backend.resolve(hypercube::chi_full_term_bits(n), budget);
            println!("{}", hypercube::chi(n, backend, budget)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Omega { n, backend } => {
            let backend = backend.resolve(hypercube::omega_full_term_bits(n), budget);
            println!("{}", hypercube::omega(n, backend, budget)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Emit {
            formula,
            r,
            stats,
            bindings,
        } => {
            let id = formula_id(&formula, r)?;
            let term = emit::emit_term(id)?;
            println!("{term}");
            if stats {
                let s = term.stats();
                println!("nodes = {}", s.node_count);
                println!("depth = {}", s.depth);
                println!("pow_nodes = {}", s.pow_count);
            }
            let env = bindings.env()?;
            if !bindings.bind.is_empty() {
                println!("value = {}", evaluate_bounded(&term, &env, budget)?);
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Count { spec } => {
            let text = read_input(&spec)?;
            let dto: HypercubeSpecDto = serde_json::from_str(&text)
                .map_err(|e| Error::Domain(format!("invalid spec JSON: {e}")))?;
            let spec = HypercubeSpec::from(dto);
            spec.validate()?;
            println!("{}", hypercube::count_solutions(&spec, budget)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, range, json } => {
            let suite = Suite::from_name(&suite)
                .ok_or_else(|| Error::Domain(format!("unknown suite `{suite}`")))?;
            let range = match range {
                Some(r) => parse_range(&r)?,
                None => suite.default_range(),
            };
            let started = std::time::Instant::now();
            let lines = verify::run_suite(suite, range, budget)?;
            let failed = lines.iter().filter(|l| !l.ok).count();
            if json {
                for line in &lines {
                    println!("{}", serde_json::to_string(line).expect("plain fields"));
                }
            } else {
                print_human_lines(suite, &lines);
            }
            let summary = format!(
                "suite {}: {}/{} ok over {}..{} in {:.2?}",
                suite.name(),
                lines.len() - failed,
                lines.len(),
                range.0,
                range.1,
                started.elapsed()
            );
            if json {
                eprintln!("{summary}");
            } else {
                println!("{summary}");
            }
            if failed == 0 || suite.advisory() {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
        Command::Bench {
            formula,
            max_n,
            csv,
        } => {
            let formula = match formula {
                BenchFormulaArg::Chi => BenchFormula::Chi,
                BenchFormulaArg::Omega => BenchFormula::Omega,
            };
            let rows = verify::bench(formula, max_n, budget)?;
            println!(
                "{:>6} {:>8} {:>12} {:>10} {:>6}",
                "n", "value", "bits", "micros", "ok"
            );
            for row in &rows {
                println!(
                    "{:>6} {:>8} {:>12} {:>10} {:>6}",
                    row.n, row.value, row.bits, row.micros, row.bits_ok
                );
            }
            if let Some(path) = csv {
                let mut out = String::from("n,bits,micros\n");
                for row in &rows {
                    out.push_str(&format!("{},{},{}\n", row.n, row.bits, row.micros));
                }
                std::fs::write(&path, out)
                    .map_err(|e| Error::Domain(format!("cannot write {path}: {e}")))?;
            }
            if rows.iter().all(|r| r.bits_ok) {
                Ok(ExitCode::SUCCESS)
            } else {
                Ok(ExitCode::from(1))
            }
        }
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|e| Error::Domain(format!("cannot read stdin: {e}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::Domain(format!("cannot read {path}: {e}")))
    }
}

fn formula_id(name: &str, r: Option<u64>) -> Result<FormulaId, Error> {
    let id =
        match name {
            "hw" => FormulaId::Hw,
            "nu2" => FormulaId::Nu2,
            "gcd" => FormulaId::GcdTerm,
            "binom1" => FormulaId::Binom1,
            "binom2" => FormulaId::Binom2,
            "factorial" => FormulaId::FactorialTerm,
            "delta" => FormulaId::Delta,
            "pow" => FormulaId::PowLemma,
            "chi" => FormulaId::Chi,
            "omega" => FormulaId::Omega,
            "gseries" => FormulaId::GSeries(r.ok_or_else(|| {
                Error::Domain("--formula gseries needs --r (0, 1, 2 or 4)".into())
            })?),
            other => return Err(Error::Domain(format!("unknown formula `{other}`"))),
        };
    Ok(id)
}

fn parse_range(raw: &str) -> Result<(u64, u64), Error> {
    let (lo, hi) = raw
        .split_once("..")
        .ok_or_else(|| Error::Domain(format!("range `{raw}` is not of the form a..b")))?;
    let lo = lo
        .trim()
        .parse()
        .map_err(|_| Error::Domain(format!("bad range start in `{raw}`")))?;
    let hi = hi
        .trim()
        .parse()
        .map_err(|_| Error::Domain(format!("bad range end in `{raw}`")))?;
    Ok((lo, hi))
}

fn print_factor_report(r: &FactorReport) {
    let verdict = if r.proper {
        "proper divisor"
    } else {
        "no proper divisor found (n is prime unless something is wrong)"
    };
    println!("{}({}) = {} ({verdict})", r.method, r.n, r.divisor);
    println!(
        "  {} = {} * {}   chi = {}   omega = {}   root = {}",
        r.n, r.divisor, r.cofactor, r.chi, r.omega, r.root
    );
    println!(
        "  chi/omega backend = {}; root, factorial, gcd native; elapsed = {:.2?}",
        r.backend, r.elapsed
    );
}

fn factor_report_json(r: &FactorReport) -> String {
    serde_json::json!({
        "n": r.n,
        "method": r.method.to_string(),
        "divisor": r.divisor,
        "cofactor": r.cofactor,
        "chi": r.chi,
        "omega": r.omega,
        "root": r.root,
        "backend": r.backend.name(),
        "elapsed_micros": r.elapsed.as_micros() as u64,
        "proper": r.proper,
    })
    .to_string()
}

fn print_human_lines(suite: Suite, lines: &[ReportLine]) {
    let verbose = lines.len() <= 200;
    let mut suppressed = 0usize;
    for line in lines {
        if line.ok && !verbose {
            suppressed += 1;
            continue;
        }
        let mark = match (line.ok, suite.advisory()) {
            (true, _) => "ok  ",
            (false, true) => "CONJECTURE",
            (false, false) => "FAIL",
        };
        println!(
            "{mark} [{}] {}: expected {}, got {} ({} bits, {} us)",
            line.suite, line.input, line.expected, line.got, line.bits, line.micros
        );
    }
    if suppressed > 0 {
        println!("({suppressed} passing lines suppressed; use --json for all lines)");
    }
}
