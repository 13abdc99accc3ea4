use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use num_rational::BigRational;
use clap::{Args, Parser, Subcommand, ValueEnum};
use reidemeister::automorphism::FieldState;
use reidemeister::certificate::{verify_certificate, Certificate, MatrixText, TowerText};
use reidemeister::finite::{AutoDescriptor, FiniteAutomorphism, FiniteGroup, FiniteReport, GroupKind, GroupType, DEFAULT_CAP};
use reidemeister::linalg::Matrix;
use reidemeister::par::Execution;
use reidemeister::selftest;
use reidemeister::twisted::{class_witness, distinct_shift, factor3, FactorConfig, ShiftConfig};
use reidemeister::tower::{FieldTower, TowerElement};
use reidemeister::Error;
use serde_json::json;

const OK: u8 = 0;
const NOT_VERIFIED: u8 = 1;
const UNSUPPORTED: u8 = 2;
const BAD_INPUT: u8 = 3;
const RESOURCE_CAP: u8 = 4;

#[derive(Parser)]
#[command(name = "reidemeister", version)]
#[command(about = "Exact twisted-conjugacy witnesses, factorization certificates and finite Reidemeister counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Adjoin a class witness T with T^-1 φ(T) = X.
    Witness {
        matrix: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Factor an invertible rational matrix into at most three twisted-class elements.
    Factor {
        matrix: PathBuf,
        #[command(flatten)]
        seed: SeedArgs,
        /// Write the certificate here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Find an integer diagonal D making A·D have distinct eigenvalues.
    Shift {
        matrix: PathBuf,
        #[command(flatten)]
        seed: SeedArgs,
    },
    /// Check a certificate. Exit 0 when it verifies, 1 when it does not.
    Verify { certificate: PathBuf },
    /// Brute-force oracles over GL_n(q) and SL_n(q).
    #[command(subcommand)]
    Finite(FiniteCommand),
    /// Seeded pass over the main identities.
    Selftest {
        #[arg(long, env = "REIDEMEISTER_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
}

#[derive(Args)]
struct SeedArgs {
    #[arg(long, env = "REIDEMEISTER_SEED", default_value_t = 0)]
    seed: u64,
    /// Diagonal entries are drawn from 1..=range.
    #[arg(long, default_value_t = 16)]
    range: u64,
}

#[derive(Subcommand)]
enum FiniteCommand {
    /// Twisted classes, the determinant quotient bound and the unit class.
    Reidemeister(FiniteArgs),
    /// How many products of the unit class and its inverses cover the group.
    Width(FiniteArgs),
}

#[derive(Args)]
struct FiniteArgs {
    #[arg(long, default_value = "GL")]
    kind: String,
    #[arg(long)]
    n: usize,
    #[arg(long)]
    p: u32,
    #[arg(long, default_value_t = 1)]
    k: u32,
    /// id, frobenius:<f>, inner:<id>, transpose-inverse or compose:<d1>,<d2>,...
    #[arg(long, default_value = "id")]
    auto: String,
    /// Refuse groups larger than this.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u128,
    /// Worker threads; 0 uses every core, 1 runs sequentially.
    #[arg(long, default_value_t = 0)]
    threads: usize,
    /// Allow automorphisms outside the supported family (transpose-inverse).
    #[arg(long)]
    exploratory: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

enum Failure {
    Engine(Error),
    Input(String),
    NotVerified,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Engine(e)
    }
}

type Outcome = Result<(), Failure>;

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::UnsupportedSplitting(_)
        | Error::UnsupportedField { .. }
        | Error::ShiftNotFound(_)
        | Error::RepeatedEigenvalues => UNSUPPORTED,
        Error::EnumerationCapExceeded { .. } | Error::DegreeCapExceeded { .. } => RESOURCE_CAP,
        Error::IdentityViolated(_) => NOT_VERIFIED,
        _ => BAD_INPUT,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Witness { matrix, format } => witness(&matrix, format),
        Command::Factor { matrix, seed, out } => factor(&matrix, &seed, out.as_deref()),
        Command::Shift { matrix, seed } => shift(&matrix, &seed),
        Command::Verify { certificate } => verify(&certificate),
        Command::Finite(cmd) => finite(cmd),
        Command::Selftest { seed, format } => run_selftest(seed, format),
    };
    match res {
        Ok(()) => ExitCode::from(OK),
        Err(Failure::NotVerified) => ExitCode::from(NOT_VERIFIED),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(BAD_INPUT)
        }
        Err(Failure::Engine(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_matrix(path: &Path) -> Result<Matrix<TowerElement>, Failure> {
    let text: MatrixText =
        serde_json::from_str(&read(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Ok(text.parse(&FieldTower::new())?)
}

fn read_rational(path: &Path) -> Result<Matrix<BigRational>, Failure> {
    read_matrix(path)?.try_map(|e| {
        e.as_constant()
            .and_then(|c| c.as_rational().cloned())
            .ok_or_else(|| Error::InvalidInput(format!("entry {e:?} is not rational")))
    }).map_err(Failure::from)
}

fn print_json(v: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json values serialize"));
}

/// Writes through a temporary file in the target directory, so a
/// certificate on disk is either complete or absent.
fn write_atomic(path: &Path, contents: &str) -> Outcome {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let io = |e: std::io::Error| Failure::Input(format!("{}: {e}", path.display()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(contents.as_bytes()).map_err(io)?;
    tmp.persist(path).map_err(|e| io(e.error))?;
    Ok(())
}

fn witness(path: &Path, format: Format) -> Outcome {
    let x = read_matrix(path)?;
    let mut state = FieldState::new();
    let w = class_witness(&x, &mut state)?;
    let tower = state.tower();
    let t = MatrixText::print(&w.t, tower);
    let phi_t = MatrixText::print(&state.apply_matrix(&w.t)?, tower);
    match format {
        Format::Json => print_json(&json!({
            "t": t,
            "phiT": phi_t,
            "tower": TowerText::print(&state),
            "towerVersion": w.version,
        })),
        Format::Table => {
            println!("T:");
            print_rows(&t);
            println!("phi(T) = T X:");
            print_rows(&phi_t);
        }
    }
    Ok(())
}

fn print_rows(m: &MatrixText) {
    for row in m.entries.chunks(m.n.max(1)) {
        println!("  [{}]", row.join(", "));
    }
}

fn factor(path: &Path, args: &SeedArgs, out: Option<&Path>) -> Outcome {
    let a = read_rational(path)?;
    let cfg = FactorConfig {
        shift: ShiftConfig {
            seed: args.seed,
            range: args.range,
            ..ShiftConfig::default()
        },
        ..FactorConfig::default()
    };
    let mut state = FieldState::new();
    let fac = factor3(&a, &mut state, &cfg)?;
    let cert = Certificate::new(&fac, &state, args.seed)?;
    let text = cert.to_json();
    match out {
        Some(p) => write_atomic(p, &text)?,
        None => println!("{text}"),
    }
    Ok(())
}

fn shift(path: &Path, args: &SeedArgs) -> Outcome {
    let a = read_rational(path)?;
    let cfg = ShiftConfig {
        seed: args.seed,
        range: args.range,
        ..ShiftConfig::default()
    };
    let s = distinct_shift(&a, &cfg)?;
    let diagonal: Vec<String> = s.diagonal.iter().map(|d| d.to_string()).collect();
    print_json(&json!({ "diagonal": diagonal, "attempts": s.attempts, "seed": args.seed }));
    Ok(())
}

fn verify(path: &Path) -> Outcome {
    let cert = Certificate::from_json(&read(path)?)?;
    if verify_certificate(&cert)? {
        println!("verified");
        Ok(())
    } else {
        println!("not verified");
        Err(Failure::NotVerified)
    }
}

fn finite(cmd: FiniteCommand) -> Outcome {
    let (args, width) = match cmd {
        FiniteCommand::Reidemeister(a) => (a, false),
        FiniteCommand::Width(a) => (a, true),
    };
    let kind: GroupKind = args.kind.parse()?;
    let desc: AutoDescriptor = args.auto.parse()?;
    if desc.is_exploratory() && !args.exploratory {
        return Err(Failure::Input(format!("{desc} needs --exploratory")));
    }
    let group = FiniteGroup::with_cap(GroupType::new(kind, args.n, args.p, args.k), args.cap)?;
    let phi = FiniteAutomorphism::new(&group, &desc)?;
    let exec = match args.threads {
        1 => Execution::Sequential,
        t => Execution::Parallel { threads: t },
    };
    let report = if width {
        FiniteReport::width(&phi, exec)
    } else {
        FiniteReport::reidemeister(&phi, exec)
    };
    match args.format {
        Format::Json => print_json(&serde_json::to_value(&report).expect("report serializes")),
        Format::Table => print!("{}", report_table(&report)),
    }
    Ok(())
}

fn report_table(r: &FiniteReport) -> String {
    let mut rows = vec![
        ("group", r.group.to_string()),
        ("order", r.order.to_string()),
        ("automorphism", r.automorphism.clone()),
        ("R", format!("R = {}", r.reidemeister_number)),
        ("class sizes", format!("{:?}", r.class_sizes)),
    ];
    if let Some(q) = &r.quotient {
        rows.push((
            "quotient bound",
            format!("R(G) = {} >= R(quotient) = {}: {}", q.r_group, q.r_quotient, q.holds),
        ));
    }
    if let Some(u) = &r.unit_class_subgroup {
        rows.push(("unit class", u.class_size.to_string()));
        rows.push((
            "generated subgroup",
            format!("order {}, index {}, normal {}", u.subgroup_order, u.index, u.is_normal),
        ));
    }
    if let Some(w) = &r.width {
        let width = w.width.map_or("none".to_string(), |k| k.to_string());
        rows.push(("width", width));
        rows.push(("layer sizes", format!("{:?}", w.layer_sizes)));
    }
    let pad = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<pad$}  {v}\n")).collect()
}

fn run_selftest(seed: u64, format: Format) -> Outcome {
    let checks = selftest::run(seed, Execution::default());
    match format {
        Format::Json => print_json(&serde_json::to_value(&checks).expect("checks serialize")),
        Format::Table => print!("{}", selftest::table(&checks)),
    }
    if checks.iter().all(|c| c.passed) {
        Ok(())
    } else {
        Err(Failure::NotVerified)
    }
}
