use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use cyclofact::cyclotomic::cyclotomic_poly;
use cyclofact::explicit::{FactorOptions, Factorizer, DEGREE_BUDGET};
use cyclofact::numtheory::divisors;
use cyclofact::oracle::full_factor;
use cyclofact::report::{
    elem_to_json, factors_to_json, format_product, OracleJson, PhiJson, ReportJson,
};
use cyclofact::reproduce::reproduce_examples;
use cyclofact::{Error, FieldCtx, Poly, PolyRing};

mod encoding;

use encoding::{field_from_order, parse_fq, parse_fq2, parse_poly};

#[derive(Parser)]
#[command(name = "cyclofact", version, about = "Explicit factorization of x^(2^n*d) - 1 over odd finite fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor x^(2^n*d) - 1 over F_q for an odd divisor d of q+1
    Factor {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        n: u32,
        /// Also check irreducibility of every factor and compare with the generic factorizer
        #[arg(long)]
        verify: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        choices: Choices,
    },
    /// Factor Phi_(2^k)(x^d) over F_q
    Phi {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        d: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        choices: Choices,
    },
    /// Factor an arbitrary polynomial with the generic factorizer
    Oracle {
        #[command(flatten)]
        field: FieldArgs,
        /// Comma-separated coefficients, constant term first
        #[arg(long, allow_hyphen_values = true)]
        poly: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Reproduce the worked examples and run a small verified sweep
    Selftest,
}

#[derive(Args)]
struct FieldArgs {
    /// Field order, a power of an odd prime
    #[arg(long)]
    q: u64,
    /// Extension degree over the prime field (inferred from q when omitted)
    #[arg(long)]
    e: Option<u32>,
}

#[derive(Args)]
struct Choices {
    /// Primitive d-th root of unity in F_(q^2), written a,b for a + b*w
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Generator of F_(q^2)^*, written a,b; fixes every beta root of unity
    #[arg(long, allow_hyphen_values = true)]
    generator: Option<String>,
    /// Nonsquare w^2 defining F_(q^2) = F_q(w)
    #[arg(long, allow_hyphen_values = true)]
    nonsquare: Option<String>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exit status for a failed check, as opposed to bad input.
const VERIFY_FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;

enum Failure {
    Input(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(msg) => Failure::Check(msg),
            other => Failure::Input(other),
        }
    }
}

fn build_field(field: &FieldArgs, choices: Option<&Choices>) -> Result<FieldCtx, Failure> {
    let mut ctx = field_from_order(field.q, field.e)?;
    if let Some(c) = choices {
        if let Some(ns) = &c.nonsquare {
            let ns = parse_fq(&ctx, ns)?;
            ctx = ctx.with_nonsquare(ns)?;
        }
        if let Some(g) = &c.generator {
            let g = parse_fq2(&ctx, g)?;
            ctx = ctx.with_gen_q2(g)?;
        }
    }
    Ok(ctx)
}

fn factorizer<'a>(ctx: &'a FieldCtx, d: u64, choices: &Choices) -> Result<Factorizer<'a>, Failure> {
    Ok(match &choices.gamma {
        Some(g) => Factorizer::with_gamma(ctx, d, parse_fq2(ctx, g)?)?,
        None => Factorizer::new(ctx, d)?,
    })
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Factor {
            field,
            d,
            n,
            verify,
            format,
            seed,
            choices,
        } => {
            let ctx = build_field(&field, Some(&choices))?;
            let report = factorizer(&ctx, d, &choices)?.x2nd_minus_1(n, &FactorOptions { verify, seed })?;
            match format {
                Format::Json => println!("{}", to_json(&ReportJson::from_report(&ctx, &report))),
                Format::Text => {
                    println!("{}", format_product(&ctx, &report.factors));
                    if verify {
                        let c = report.checks;
                        println!(
                            "checks: product_ok={} all_irreducible={} count_ok={} oracle_match={}",
                            c.product_ok, c.all_irreducible, c.count_ok, c.oracle_match
                        );
                    }
                }
            }
            if !report.ok() {
                return Err(Failure::Check(report.diagnostics.join("\n")));
            }
        }
        Command::Phi {
            field,
            k,
            d,
            format,
            choices,
        } => {
            let ctx = build_field(&field, Some(&choices))?;
            let fz = factorizer(&ctx, d, &choices)?;
            if k > 20 || (1u64 << k) * d > 2 * DEGREE_BUDGET {
                return Err(Failure::Input(Error::Hypothesis(format!(
                    "2^k·d must not exceed {} (got k = {k}, d = {d})",
                    2 * DEGREE_BUDGET
                ))));
            }
            let list = fz.phi2k_xd(k)?;
            let ring = PolyRing::new(&ctx);
            let target = cyclotomic_poly(&ctx, 1u64 << k)?.substitute_power(d as usize);
            match format {
                Format::Json => println!(
                    "{}",
                    to_json(&PhiJson {
                        q: ctx.q(),
                        e: ctx.e(),
                        k,
                        d,
                        degree: target.degree().unwrap_or(0) as u64,
                        factors: factors_to_json(&ctx, &list),
                    })
                ),
                Format::Text => println!("{}", format_product(&ctx, &list)),
            }
            if ring.product(&list) != target {
                return Err(Failure::Check(format!("factors do not multiply to Phi_(2^{k})(x^{d})")));
            }
        }
        Command::Oracle {
            field,
            poly,
            seed,
            format,
        } => {
            let ctx = build_field(&field, None)?;
            let f = Poly::new(parse_poly(&ctx, &poly)?);
            let list = full_factor(&ctx, &f, seed)?;
            match format {
                Format::Json => println!(
                    "{}",
                    to_json(&OracleJson {
                        q: ctx.q(),
                        e: ctx.e(),
                        input: f.coeffs().iter().map(|&c| elem_to_json(&ctx, c)).collect(),
                        factors: factors_to_json(&ctx, &list),
                    })
                ),
                Format::Text => println!("{}", format_product(&ctx, &list)),
            }
        }
        Command::Selftest => selftest()?,
    }
    Ok(())
}

fn selftest() -> Result<(), Failure> {
    let mut failed = Vec::new();
    for check in reproduce_examples()? {
        if check.passed {
            println!("PASS {}", check.name);
        } else {
            println!("FAIL {}: {}", check.name, check.detail.join("; "));
            failed.push(check.name.to_string());
        }
    }
    let mut instances = 0;
    for q in (3..=61u64).filter(|&q| cyclofact::numtheory::is_prime(q)) {
        let ctx = FieldCtx::new(q, 1)?;
        for d in divisors(q + 1).into_iter().filter(|d| d % 2 == 1) {
            let fz = Factorizer::new(&ctx, d)?;
            let mut n = 0;
            while (1u64 << n) * d <= 128 {
                let report = fz.x2nd_minus_1(n, &FactorOptions { verify: true, seed: q })?;
                if !report.ok() {
                    failed.push(format!("q={q} d={d} n={n}"));
                }
                instances += 1;
                n += 1;
            }
        }
    }
    let bad = failed.len();
    println!(
        "{} sweep: {instances} verified factorizations of x^(2^n*d) - 1 for q <= 61, 2^n*d <= 128",
        if bad == 0 { "PASS" } else { "FAIL" }
    );
    if bad == 0 {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed: {}", failed.join(", "))))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let sub = match &cli.command {
        Command::Factor { .. } => "factor",
        Command::Phi { .. } => "phi",
        Command::Oracle { .. } => "oracle",
        Command::Selftest => "selftest",
    };
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(VERIFY_FAILED)
        }
        Err(Failure::Input(err)) => {
            eprintln!("error: {err}");
            let mut cmd = Cli::command();
            if let Some(sc) = cmd.find_subcommand_mut(sub) {
                eprintln!("{}", sc.render_usage());
            }
            ExitCode::from(BAD_INPUT)
        }
    }
}
