//! `tower`: build the recursive field towers, reproduce the reference
//! tables, run the verification suites, and compare against the
//! root-of-unity lower bound.
//!
//! Exit codes: 0 pass, 1 verification failure, 2 configuration error,
//! 3 factoring-budget exhaustion.

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_traits::ToPrimitive;

use fieldtower::numtheory::{curve_count, gcd_pair_check, prime_bound_check, PrimeBoundOutcome};
use fieldtower::orderengine::DEFAULT_FACTOR_BUDGET;
use fieldtower::report::{
    rows_to_csv, suite_passed, table_rows, verify_suite, CheckLine, CheckStatus,
};
use fieldtower::voloch::crossover_compare;
use fieldtower::{make_field, Error, FieldSpec, Tower, TowerKind};

#[derive(Parser)]
#[command(name = "tower", version, about = "Recursive finite-field towers and high-order elements")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a tower and emit per-level order/bound table rows
    Table(TableArgs),
    /// Run degree, norm-identity, theorem-clause, and lemma checks
    Verify(VerifyArgs),
    /// Compare the tower bound against the root-of-unity bound
    Voloch(VolochArgs),
    /// Run the power-sum, prime-bound, and curve-count lemma suite
    Lemmas(LemmasArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    Quadratic,
    Cubic,
}

impl From<KindArg> for TowerKind {
    fn from(k: KindArg) -> TowerKind {
        match k {
            KindArg::Quadratic => TowerKind::Quadratic,
            KindArg::Cubic => TowerKind::Cubic,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic of the base field
    #[arg(long)]
    p: u64,
    /// Extension degree of the base field over its prime field
    #[arg(long, default_value_t = 1)]
    m: usize,
    /// Base-field modulus coefficients, constant first, comma-separated
    /// (e.g. "1,0,1" for x^2+1); defaults to the lexicographically
    /// smallest irreducible
    #[arg(long)]
    modulus: Option<String>,
    /// Tower starter coordinates in the base field, constant first,
    /// comma-separated; defaults to the first valid element
    #[arg(long)]
    starter: Option<String>,
    #[arg(long, value_enum)]
    kind: KindArg,
    /// Highest tower level to build
    #[arg(long, default_value_t = 2)]
    n_max: u32,
    /// Iteration budget for integer factoring
    #[arg(long, default_value_t = DEFAULT_FACTOR_BUDGET)]
    factor_budget: u64,
}

#[derive(Args)]
struct TableArgs {
    #[command(flatten)]
    field: FieldArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Emit rows whose orders are only certified divisors instead of
    /// failing when the factoring budget runs out
    #[arg(long)]
    allow_inexact: bool,
    /// Compute rows concurrently (output order unchanged)
    #[arg(long)]
    parallel: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    field: FieldArgs,
    /// Treat WARN outcomes (bound attained exactly, incomplete
    /// factorizations) as failures
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct VolochArgs {
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    #[arg(long, default_value_t = 0.0)]
    eta: f64,
    /// Allow the boundary diagnostic epsilon=1 / eta=0
    #[arg(long, action = clap::ArgAction::Set, default_value_t = true)]
    bypass: bool,
    /// Assumed 2-adic valuation of q-1
    #[arg(long, default_value_t = 1)]
    ord: u32,
    #[arg(long, default_value_t = 16)]
    n_max: u32,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct LemmasArgs {
    /// Largest base b for the power-sum lemmas
    #[arg(long, default_value_t = 200)]
    b_max: u64,
    /// Largest exponent index N for the gcd-pair lemma
    #[arg(long, default_value_t = 3)]
    pair_n_max: u32,
    /// Largest exponent index N for the prime-bound lemma
    #[arg(long, default_value_t = 2)]
    prime_n_max: u32,
    /// Largest prime power q for the curve-count checks
    #[arg(long, default_value_t = 121)]
    q_max: u64,
    #[arg(long, default_value_t = 1 << 16)]
    factor_budget: u64,
}

struct CliError {
    code: u8,
    msg: String,
}

fn config_err(msg: impl Into<String>) -> CliError {
    CliError {
        code: 2,
        msg: msg.into(),
    }
}

fn map_build_error(e: Error) -> CliError {
    let msg = match &e {
        Error::QIsFour => {
            "the cubic tower requires q = 1 (mod 3) and q != 4; q = 4 is excluded \
             (every b^3 - 1 there is a cube)"
                .to_string()
        }
        other => other.to_string(),
    };
    config_err(format!("invalid configuration: {msg}"))
}

fn parse_coeffs(s: &str) -> Result<Vec<u64>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| config_err(format!("bad coefficient list {s:?}")))
        })
        .collect()
}

fn build_field(a: &FieldArgs) -> Result<FieldSpec, CliError> {
    let modulus = match &a.modulus {
        Some(s) => Some(parse_coeffs(s)?),
        None => None,
    };
    make_field(a.p, a.m, modulus).map_err(map_build_error)
}

fn build_tower(a: &FieldArgs) -> Result<Tower, CliError> {
    let f = build_field(a)?;
    let starter = match &a.starter {
        Some(s) => {
            let coords = parse_coeffs(s)?;
            Some(f.element_from_coeffs(&coords).map_err(map_build_error)?)
        }
        None => None,
    };
    let t = Tower::build(a.kind.into(), f, starter).map_err(map_build_error)?;
    t.extend_to(a.n_max as usize).map_err(map_build_error)
}

fn cmd_table(a: &TableArgs) -> Result<u8, CliError> {
    let t = build_tower(&a.field)?;
    let rows = table_rows(&t, a.field.n_max, a.field.factor_budget, a.parallel)
        .map_err(map_build_error)?;
    let inexact = rows
        .iter()
        .any(|r| !(r.group.exact && r.gen.exact && r.marked.exact && r.bound.exact));
    match a.format {
        Format::Csv => print!("{}", rows_to_csv(&rows)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(&rows).map_err(|e| config_err(e.to_string()))?
        ),
    }
    if inexact && !a.allow_inexact {
        eprintln!("error: factoring budget exhausted; rerun with --allow-inexact or a larger --factor-budget");
        return Ok(3);
    }
    Ok(0)
}

fn lemma_lines_for_tower(t: &Tower, budget: u64) -> Vec<CheckLine> {
    let mut lines = Vec::new();
    let ell = t.kind().ell();
    let q = t.base().q();
    for m_exp in 0..3u32 {
        for n_exp in (m_exp + 1)..=3 {
            let g = gcd_pair_check(ell, q, m_exp, n_exp).expect("q = 1 mod ell");
            lines.push(CheckLine {
                name: format!("power-sum gcd l={ell} M={m_exp} N={n_exp}"),
                status: if g == BigUint::from(ell) {
                    CheckStatus::Pass
                } else {
                    CheckStatus::Fail
                },
                detail: format!("gcd = {g}"),
            });
        }
    }
    for n_exp in 1..=2u32 {
        let r = prime_bound_check(ell, q, n_exp, budget).expect("q = 1 mod ell");
        let status = match r.outcome {
            PrimeBoundOutcome::Pass => CheckStatus::Pass,
            PrimeBoundOutcome::Indeterminate => CheckStatus::Warn,
            PrimeBoundOutcome::Fail => CheckStatus::Fail,
        };
        lines.push(CheckLine {
            name: format!("prime bound l={ell} N={n_exp}"),
            status,
            detail: format!("primes of {} must exceed {}", r.value, r.threshold),
        });
    }
    if q.to_u64().map(|v| v <= 1024).unwrap_or(false) {
        let r = curve_count(t.base(), ell as u32).expect("degree 2 or 3");
        lines.push(CheckLine {
            name: format!("curve count degree {ell}"),
            status: if r.holds { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: format!("{} affine points over q={}", r.count, r.q),
        });
    }
    lines
}

fn print_lines(lines: &[CheckLine]) {
    for l in lines {
        let tag = match l.status {
            CheckStatus::Pass => "PASS",
            CheckStatus::Warn => "WARN",
            CheckStatus::Fail => "FAIL",
        };
        println!("{tag} {} — {}", l.name, l.detail);
    }
}

fn cmd_verify(a: &VerifyArgs) -> Result<u8, CliError> {
    let t = build_tower(&a.field)?;
    let mut lines =
        verify_suite(&t, a.field.n_max, a.field.factor_budget).map_err(map_build_error)?;
    lines.extend(lemma_lines_for_tower(&t, a.field.factor_budget));
    print_lines(&lines);
    if suite_passed(&lines, a.strict) {
        println!("verification passed");
        Ok(0)
    } else {
        println!("verification FAILED");
        Ok(1)
    }
}

fn cmd_voloch(a: &VolochArgs) -> Result<u8, CliError> {
    let table = crossover_compare(a.ord, a.epsilon, a.eta, a.bypass, a.n_max)
        .map_err(map_build_error)?;
    match a.format {
        Format::Csv => {
            println!("n,tower_log2_bound,voloch_log2_bound,dominator");
            for r in &table.rows {
                println!(
                    "{},{:.4},{:.4},{}",
                    r.n,
                    r.tower_log2,
                    r.voloch_log2,
                    if r.tower_dominates { "tower" } else { "voloch" }
                );
            }
            match table.crossover {
                Some(n) => println!("crossover: {n}"),
                None => println!("crossover: none"),
            }
        }
        Format::Json => {
            let rows: Vec<_> = table
                .rows
                .iter()
                .map(|r| {
                    serde_json::json!({
                        "n": r.n,
                        "tower_log2_bound": r.tower_log2,
                        "voloch_log2_bound": r.voloch_log2,
                        "dominator": if r.tower_dominates { "tower" } else { "voloch" },
                    })
                })
                .collect();
            println!(
                "{}",
                serde_json::json!({ "rows": rows, "crossover": table.crossover })
            );
        }
    }
    Ok(0)
}

fn cmd_lemmas(a: &LemmasArgs) -> Result<u8, CliError> {
    let mut lines = Vec::new();
    for ell in [2u64, 3] {
        let mut b = 1 + ell;
        while b <= a.b_max {
            let bq = BigUint::from(b);
            for m_exp in 0..a.pair_n_max {
                for n_exp in (m_exp + 1)..=a.pair_n_max {
                    let g = gcd_pair_check(ell, &bq, m_exp, n_exp).expect("b = 1 mod ell");
                    if g != BigUint::from(ell) {
                        lines.push(CheckLine {
                            name: format!("power-sum gcd l={ell} b={b} M={m_exp} N={n_exp}"),
                            status: CheckStatus::Fail,
                            detail: format!("gcd = {g}, expected {ell}"),
                        });
                    }
                }
            }
            for n_exp in 1..=a.prime_n_max {
                let r = prime_bound_check(ell, &bq, n_exp, a.factor_budget)
                    .expect("b = 1 mod ell");
                match r.outcome {
                    PrimeBoundOutcome::Pass => {}
                    PrimeBoundOutcome::Indeterminate => lines.push(CheckLine {
                        name: format!("prime bound l={ell} b={b} N={n_exp}"),
                        status: CheckStatus::Warn,
                        detail: "budget exhausted; no violating prime found".into(),
                    }),
                    PrimeBoundOutcome::Fail => lines.push(CheckLine {
                        name: format!("prime bound l={ell} b={b} N={n_exp}"),
                        status: CheckStatus::Fail,
                        detail: format!("prime at or below {}", r.threshold),
                    }),
                }
            }
            b += ell;
        }
    }
    let mut count_pass = 0u64;
    for q in 2..=a.q_max {
        let Some((p, m)) = prime_power(q) else { continue };
        let f = make_field(p, m, None).map_err(map_build_error)?;
        if q % 2 == 1 {
            let r = curve_count(&f, 2).expect("degree 2");
            if r.holds {
                count_pass += 1;
            } else {
                lines.push(CheckLine {
                    name: format!("curve count degree 2 q={q}"),
                    status: CheckStatus::Fail,
                    detail: format!("{} points, expected {}", r.count, q - 1),
                });
            }
        }
        let r = curve_count(&f, 3).expect("degree 3");
        if r.holds {
            count_pass += 1;
        } else {
            lines.push(CheckLine {
                name: format!("curve count degree 3 q={q}"),
                status: CheckStatus::Fail,
                detail: format!("{} points vs q-2 = {}", r.count, q - 2),
            });
        }
    }
    print_lines(&lines);
    let fails = lines.iter().filter(|l| l.status == CheckStatus::Fail).count();
    let warns = lines.iter().filter(|l| l.status == CheckStatus::Warn).count();
    println!(
        "lemma suite: {count_pass} curve-count checks passed, {warns} indeterminate, {fails} failures"
    );
    Ok(if fails == 0 { 0 } else { 1 })
}

fn prime_power(q: u64) -> Option<(u64, usize)> {
    for p in 2..=q {
        if q % p == 0 {
            // p is the least divisor > 1, hence prime
            let mut v = q;
            let mut m = 0usize;
            while v % p == 0 {
                v /= p;
                m += 1;
            }
            return if v == 1 { Some((p, m)) } else { None };
        }
    }
    None
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match &cli.cmd {
        Cmd::Table(a) => cmd_table(a),
        Cmd::Verify(a) => cmd_verify(a),
        Cmd::Voloch(a) => cmd_voloch(a),
        Cmd::Lemmas(a) => cmd_lemmas(a),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}
