use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use witt_invariants::cohomology::field_ref;
use witt_invariants::divided::Mode;
use witt_invariants::gw::GwElement;
use witt_invariants::invariant::SymbolicInvariant;
use witt_invariants::series::{build_h, build_x, TruncSeries};
use witt_invariants::verify::{run_suite, Report, RunConfig, SUITES};
use witt_invariants::Error;

#[derive(Parser)]
#[command(name = "winv", version, about = "Divided-power invariants of Witt classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the coefficients of x_n, h_n and the even and odd parts of x_n.
    Series {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 8)]
        prec: usize,
    },
    /// Evaluate an invariant such as `f[1,2] + eps*g[1,1]` at a form.
    Eval {
        #[arg(long)]
        inv: String,
        #[arg(long)]
        form: String,
        #[arg(long)]
        field: String,
        #[arg(long, default_value = "W", value_parser = parse_mode)]
        mode: Mode,
    },
    /// Run an identity suite and print a report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        field: Option<String>,
        #[arg(long, default_value_t = 32)]
        prec: usize,
        #[arg(long, default_value_t = 3)]
        n_max: u32,
        #[arg(long, default_value_t = 6)]
        d_max: u32,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_parser = parse_mode)]
        mode: Option<Mode>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

fn parse_mode(s: &str) -> Result<Mode, String> {
    Mode::parse(s).map_err(|e| e.to_string())
}

fn fail(code: u8, msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("winv: {msg}");
    ExitCode::from(code)
}

fn row(name: &str, s: &TruncSeries<num_bigint::BigInt>) -> String {
    let cells: Vec<String> = s.coeffs().iter().map(|c| c.to_string()).collect();
    format!("{name}: {}", cells.join(","))
}

fn cmd_series(n: u32, prec: usize) -> ExitCode {
    let (x, h) = match (build_x(n, prec), build_h(n, prec)) {
        (Ok(x), Ok(h)) => (x, h),
        (Err(e), _) | (_, Err(e)) => return fail(1, e),
    };
    let (a, b) = x.even_odd_split();
    for (name, s) in [("x", &x), ("h", &h), ("a", &a), ("b", &b)] {
        println!("{}", row(name, s));
    }
    ExitCode::SUCCESS
}

fn cmd_eval(inv: &str, form: &str, field: &str, mode: Mode) -> ExitCode {
    let parsed = field_ref(field).and_then(|k| Ok((SymbolicInvariant::parse(inv, mode)?, GwElement::parse(&k, form)?)));
    let (alpha, q) = match parsed {
        Ok(p) => p,
        Err(e) => return fail(2, e),
    };
    match alpha.evaluate(&q.witt()) {
        Ok(v) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Err(e @ Error::NotInIdeal(_)) => fail(3, e),
        Err(e) => fail(1, e),
    }
}

fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("reports serialize"),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let f = report.first_failure.as_ref();
            let (inputs, expected, got) = f.map_or(("", "", ""), |f| (&f.inputs, &f.expected, &f.got));
            w.write_record(["suite", "cases_total", "cases_failed", "passed", "inputs", "expected", "got"])
                .and_then(|_| {
                    w.write_record([
                        report.suite.as_str(),
                        &report.cases_total.to_string(),
                        &report.cases_failed.to_string(),
                        &report.passed().to_string(),
                        inputs,
                        expected,
                        got,
                    ])
                })
                .expect("in-memory writer");
            String::from_utf8(w.into_inner().expect("in-memory writer")).expect("utf-8 input")
        }
        Format::Text => {
            let status = if report.passed() { "PASS" } else { "FAIL" };
            let mut out = format!(
                "{}: {status} ({} cases, {} failed)",
                report.suite, report.cases_total, report.cases_failed
            );
            if let Some(f) = &report.first_failure {
                out.push_str(&format!("\n  inputs:   {}\n  expected: {}\n  got:      {}", f.inputs, f.expected, f.got));
            }
            out
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Series { n, prec } => cmd_series(n, prec),
        Command::Eval { inv, form, field, mode } => cmd_eval(&inv, &form, &field, mode),
        Command::Verify { suite, field, prec, n_max, d_max, samples, seed, mode, format } => {
            if !SUITES.contains(&suite.as_str()) {
                return fail(2, format!("unknown suite {suite:?}; known: {}", SUITES.join(", ")));
            }
            let cfg = RunConfig { field, prec, n_max, d_max, samples, seed, mode };
            match run_suite(&suite, &cfg) {
                Ok(report) => {
                    println!("{}", render(&report, format).trim_end());
                    if report.passed() {
                        ExitCode::SUCCESS
                    } else {
                        ExitCode::from(1)
                    }
                }
                Err(e) => fail(2, e),
            }
        }
    }
}
