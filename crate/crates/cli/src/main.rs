//! `tcn`: bounds, oracle runs, certificate generation and verification.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid input,
//! 3 resource limit.

use std::fs;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use tcn_core::algebra::binom_mod2;
use tcn_core::bounds::{cat_bounds, eqtc_bounds, tc_bounds, BoundReport, Group, TcOptions};
use tcn_core::certfile::{parse_certificate, print_certificate};
use tcn_core::certgen::ConstructionId;
use tcn_core::cuplength::{cup_exact, verify_certificate, OracleConfig, DEFAULT_MAX_TOTAL};
use tcn_core::par::{self, Exec};
use tcn_core::report::{emit_report, Format};
use tcn_core::space::{cohomology_of, SpaceDescriptor};
use tcn_core::tensor::DEFAULT_MAX_SLICE;
use tcn_core::Error;

#[derive(Parser)]
#[command(name = "tcn", version, about = "Cup-length and higher topological complexity bounds")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantityArg {
    Cat,
    Tc,
    Eqtc,
}

#[derive(Clone, Copy, ValueEnum)]
enum GroupArg {
    Z2,
    S1,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Z2 => Group::Z2,
            GroupArg::S1 => Group::Circle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Md,
    Csv,
    Json,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Md => Format::Markdown,
            FormatArg::Csv => Format::Csv,
            FormatArg::Json => Format::Json,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Case1,
    Case2,
    R2t,
    Proj,
    Cat,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Rh,
    Ch,
    Rp,
}

#[derive(clap::Args)]
struct OracleArgs {
    /// Largest degree slice the oracle may build.
    #[arg(long, default_value_t = DEFAULT_MAX_SLICE)]
    max_slice: usize,
    /// Largest total tensor dimension the oracle may handle.
    #[arg(long, default_value_t = DEFAULT_MAX_TOTAL)]
    max_total: u128,
    #[arg(long)]
    sequential: bool,
}

impl OracleArgs {
    fn config(&self) -> OracleConfig {
        OracleConfig {
            max_slice: self.max_slice,
            max_total: self.max_total,
            exec: if self.sequential { Exec::Sequential } else { Exec::default() },
            ..OracleConfig::default()
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Bound report for one space.
    Bounds {
        #[arg(long)]
        space: SpaceDescriptor,
        #[arg(long, value_enum)]
        quantity: QuantityArg,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        group: Option<GroupArg>,
        #[arg(long)]
        use_oracle: bool,
        #[arg(long)]
        no_certs: bool,
        #[arg(long)]
        no_monotonicity: bool,
        #[arg(long, value_enum, default_value = "md")]
        format: FormatArg,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Exact zero-divisor cup-length.
    Cup {
        #[arg(long)]
        space: SpaceDescriptor,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Verify a certificate file.
    Verify {
        #[arg(long)]
        cert: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Write a generated certificate.
    GenCert {
        #[arg(long, value_enum)]
        method: MethodArg,
        /// Comma-separated parameters: case1 `t1,t2`, case2 `p1,p2`, r2t `s,t`, proj `t`.
        #[arg(long, value_delimiter = ',')]
        params: Vec<u32>,
        /// Space for `cat`.
        #[arg(long)]
        space: Option<SpaceDescriptor>,
        #[arg(long)]
        n: usize,
        /// Output path; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bound reports over a parameter grid. For `rp`, `--r` ranges over m.
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, value_parser = parse_range)]
        r: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range, default_value = "0..0")]
        s: RangeInclusive<u32>,
        #[arg(long, value_parser = parse_range)]
        n: RangeInclusive<u32>,
        #[arg(long, value_enum, default_value = "tc")]
        quantity: QuantityArg,
        #[arg(long)]
        use_oracle: bool,
        #[arg(long, value_enum, default_value = "md")]
        format: FormatArg,
        #[command(flatten)]
        oracle: OracleArgs,
    },
    /// Parity of a binomial coefficient.
    Lucas {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
}

fn parse_range(text: &str) -> Result<RangeInclusive<u32>, String> {
    let bad = || format!("expected `A..B` or `A`, got `{text}`");
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.trim_start_matches('=')),
        None => (text, text),
    };
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok(a..=b)
}

enum Failure {
    Core(Error),
    Io(PathBuf, std::io::Error),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

fn tc_options(use_oracle: bool, certs: bool, monotone: bool, oracle: &OracleArgs) -> TcOptions {
    TcOptions {
        use_oracle,
        use_certs: certs,
        use_monotonicity: monotone,
        oracle: oracle.config(),
        ..TcOptions::default()
    }
}

fn one_report(
    space: &SpaceDescriptor,
    quantity: QuantityArg,
    n: usize,
    group: Option<Group>,
    opts: &TcOptions,
) -> Result<BoundReport, Error> {
    match quantity {
        QuantityArg::Cat => cat_bounds(space, n),
        QuantityArg::Tc => tc_bounds(space, n, opts),
        QuantityArg::Eqtc => {
            let group = group.ok_or_else(|| Error::invalid("--group is required for eqtc"))?;
            eqtc_bounds(space, group, n, opts)
        }
    }
}

fn construction(method: MethodArg, params: &[u32], space: Option<SpaceDescriptor>) -> Result<ConstructionId, Error> {
    let want = |k: usize| {
        if params.len() == k {
            Ok(())
        } else {
            Err(Error::invalid(format!("expected {k} parameter(s), got {}", params.len())))
        }
    };
    Ok(match method {
        MethodArg::Case1 => {
            want(2)?;
            ConstructionId::Case1 { t1: params[0], t2: params[1] }
        }
        MethodArg::Case2 => {
            want(2)?;
            ConstructionId::Case2 { p1: params[0], p2: params[1] }
        }
        MethodArg::R2t => {
            want(2)?;
            ConstructionId::R2t { s: params[0], t: params[1] }
        }
        MethodArg::Proj => {
            want(1)?;
            ConstructionId::Proj { t: params[0] }
        }
        MethodArg::Cat => {
            want(0)?;
            ConstructionId::CatTopClass {
                space: space.ok_or_else(|| Error::invalid("--space is required for cat"))?,
            }
        }
    })
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Bounds {
            space,
            quantity,
            n,
            group,
            use_oracle,
            no_certs,
            no_monotonicity,
            format,
            oracle,
        } => {
            let opts = tc_options(use_oracle, !no_certs, !no_monotonicity, &oracle);
            let report = one_report(&space, quantity, n, group.map(Group::from), &opts)?;
            print!("{}", emit_report(&[report], format.into()));
        }
        Command::Cup { space, n, json, oracle } => {
            let pres = cohomology_of(&space)?;
            let c = cup_exact(&pres, n, &oracle.config())?;
            if json {
                println!("{}", serde_json::to_string_pretty(&c).expect("serializes"));
            } else {
                println!("space: {space}");
                println!("n: {n}");
                println!("tensorDimension: {}", c.tensor_dimension);
                println!("chain: {:?}", c.chain);
                println!("cup: {}", c.value);
                println!("tcLower: {}", c.value + 1);
            }
        }
        Command::Verify { cert, json } => {
            let text = fs::read_to_string(&cert).map_err(|e| Failure::Io(cert.clone(), e))?;
            let c = parse_certificate(&text)?;
            let report = verify_certificate(&c)?;
            if json {
                println!("{}", serde_json::to_string_pretty(&report).expect("serializes"));
            } else {
                println!("space: {}", report.space);
                println!("n: {}", report.n);
                for f in &report.per_factor {
                    let degree = f.degree.map_or("-".to_string(), |d| d.to_string());
                    println!(
                        "factor: ({})^{}  zeroDivisor: {}  degree: {degree}",
                        f.expression, f.multiplicity, f.is_zero_divisor
                    );
                }
                println!("productNonzero: {}", report.product_nonzero);
                println!("verdict: {:?}", report.verdict);
                match report.verified_cup {
                    Some(v) => {
                        println!("verifiedCup: {v}");
                        println!("verifiedTcLower: {}", v + 1);
                    }
                    None => println!("verifiedCup: none (claimed {})", c.claimed_cup),
                }
            }
            if !report.is_verified() {
                return Err(Failure::Verification);
            }
        }
        Command::GenCert {
            method,
            params,
            space,
            n,
            out,
        } => {
            let cert = construction(method, &params, space)?.generate(n)?;
            let text = print_certificate(&cert);
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| Failure::Io(path, e))?,
                None => print!("{text}"),
            }
        }
        Command::Table {
            family,
            r,
            s,
            n,
            quantity,
            use_oracle,
            format,
            oracle,
        } => {
            let opts = tc_options(use_oracle, true, true, &oracle);
            let mut cells = Vec::new();
            for r in r.clone() {
                let s_range = match family {
                    FamilyArg::Rp => 0..=0,
                    _ => s.clone(),
                };
                for s in s_range {
                    let space = match family {
                        FamilyArg::Rh => SpaceDescriptor::RealMilnor { r, s },
                        FamilyArg::Ch => SpaceDescriptor::ComplexMilnor { r, s },
                        FamilyArg::Rp => SpaceDescriptor::RealProj(r),
                    };
                    if space.validate().is_err() {
                        continue;
                    }
                    for n in n.clone() {
                        cells.push((space.clone(), n as usize));
                    }
                }
            }
            let group = matches!(quantity, QuantityArg::Eqtc).then_some(Group::Z2);
            let results = par::map(opts.oracle.exec, &cells, |(space, n)| {
                one_report(space, quantity, *n, group, &opts)
            });
            let mut reports = Vec::new();
            for res in results {
                match res {
                    Ok(rep) => reports.push(rep),
                    Err(Error::NoFreeAction(_)) => {}
                    Err(e) => return Err(e.into()),
                }
            }
            reports.sort_by_key(|r| (r.space.to_string(), r.n));
            print!("{}", emit_report(&reports, format.into()));
        }
        Command::Lucas { n, k } => println!("{}", binom_mod2(n, k)),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Io(path, e)) => {
            eprintln!("error: {}: {e}", path.display());
            ExitCode::from(2)
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_resource_limit() { 3 } else { 2 })
        }
    }
}
