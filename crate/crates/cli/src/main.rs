use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use facelattice::chains::{self, build_chain, replay_remark_cop_order, replay_remark_dual_ddplus};
use facelattice::cones::DEFAULT_ENUMERATION_LIMIT;
use facelattice::diagram::render_diagram;
use facelattice::geometry::{bounds_table, compute_bounds, DEFAULT_RAY_COUNT};
use facelattice::report::{build_report, ReportOptions};
use facelattice::{ChainOrdering, ConeId, ConeKind, Side, SymMatrix};

#[derive(Parser)]
#[command(
    name = "facelattice",
    version,
    about = "Exact face chains of matrix cones"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Cp,
    Cop,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Self {
        match s {
            SideArg::Cp => Side::Cp,
            SideArg::Cop => Side::Cop,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderingArg {
    Paper,
    Legacy,
}

impl From<OrderingArg> for ChainOrdering {
    fn from(o: OrderingArg) -> Self {
        match o {
            OrderingArg::Paper => ChainOrdering::Paper,
            OrderingArg::Legacy => ChainOrdering::Legacy,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    DualDdpFace,
    CopOrdering,
}

#[derive(clap::Args)]
struct ChainArgs {
    #[arg(long, value_enum)]
    side: SideArg,
    #[arg(long)]
    n: usize,
    /// n, ddp, sddp, ddp-dual, sddp-dual, psd, dnn, cop, spn4, cp4
    #[arg(long)]
    cone: String,
    #[arg(long, value_enum, default_value = "paper")]
    ordering: OrderingArg,
    /// Copositivity enumeration limit (cost grows as 2^n).
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
    limit: usize,
    /// Extreme rays used to certify each non-polyhedral face.
    #[arg(long, default_value_t = DEFAULT_RAY_COUNT)]
    rays: usize,
    #[arg(long, env = "FACELATTICE_SEED", default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Decide membership of a symmat file (`-` reads stdin).
    Member {
        #[arg(long)]
        cone: String,
        file: PathBuf,
        #[arg(long, default_value_t = DEFAULT_ENUMERATION_LIMIT)]
        limit: usize,
    },
    /// Build a chain and print its per-face table.
    Chain {
        #[command(flatten)]
        args: ChainArgs,
        /// Re-check every witness.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Check witnesses, the face axiom on every face, and the replays.
    Verify {
        #[command(flatten)]
        args: ChainArgs,
        /// Pairs per face for the face-axiom test.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Replay one of the two non-face constructions.
    Counterexample {
        #[arg(value_enum)]
        which: Which,
        #[arg(long)]
        n: usize,
        /// Host cone for cop-ordering (spn4, cop, sddp-dual, psd).
        #[arg(long, default_value = "sddp-dual")]
        cone: String,
        #[arg(long)]
        json: bool,
    },
    /// Draw the zero pattern of `K[I_ij]` or `K[J_ij]`.
    Diagram {
        #[arg(long, value_enum)]
        side: SideArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        i: usize,
        #[arg(long)]
        j: usize,
        #[arg(long, value_enum, default_value = "ascii")]
        format: Format,
        /// Shade the support of the witness that leaves this face.
        #[arg(long)]
        witness: bool,
    },
    /// Chain length, distance to polyhedrality and derived bounds.
    Bounds {
        /// Orders to tabulate.
        #[arg(long, num_args = 1.., required = true)]
        n: Vec<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Full JSON report of a chain.
    Report {
        #[command(flatten)]
        args: ChainArgs,
        /// Pairs per face for the face-axiom test; 0 skips it.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
}

const EXIT_NEGATIVE: u8 = 1;
const EXIT_ERROR: u8 = 2;

fn parse_cone(name: &str, n: usize, limit: usize) -> Result<ConeId> {
    let kind = ConeKind::from_cli_name(name).with_context(|| {
        let names: Vec<_> = ConeKind::ALL.iter().map(|k| k.cli_name()).collect();
        format!(
            "unknown cone {name:?}; expected one of {}",
            names.join(", ")
        )
    })?;
    if limit > DEFAULT_ENUMERATION_LIMIT && matches!(kind, ConeKind::Cop | ConeKind::Spn) {
        eprintln!(
            "warning: enumeration limit {limit} exceeds the default {DEFAULT_ENUMERATION_LIMIT}; \
             copositivity checks visit up to 2^{limit} supports"
        );
    }
    Ok(ConeId::new(kind, n)?.with_enumeration_limit(limit))
}

fn read_matrix(path: &PathBuf) -> Result<SymMatrix> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    Ok(SymMatrix::parse_symmat(&text)?)
}

fn json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("values serialize")
}

fn report_for(
    args: &ChainArgs,
    verify: bool,
    samples: Option<usize>,
) -> Result<facelattice::report::ChainReport> {
    let cone = parse_cone(&args.cone, args.n, args.limit)?;
    let chain = build_chain(args.side.into(), &cone, args.ordering.into())?;
    let opts = ReportOptions {
        verify,
        face_axiom_samples: samples,
        seed: args.seed,
        ray_count: args.rays,
        counterexamples: true,
    };
    Ok(build_report(&chain, &opts)?)
}

fn run(cli: Cli, out: &mut String) -> Result<u8> {
    match cli.command {
        Command::Member { cone, file, limit } => {
            let a = read_matrix(&file)?;
            let cone = parse_cone(&cone, a.order(), limit)?;
            let cert = cone.member(&a)?;
            writeln!(out, "{}", json(&cert))?;
            Ok(if cert.is_member() { 0 } else { EXIT_NEGATIVE })
        }
        Command::Chain {
            args,
            verify,
            json: as_json,
        } => {
            let report = report_for(&args, verify, None)?;
            if as_json {
                writeln!(out, "{}", report.to_json())?;
            } else {
                write!(out, "{}", report.to_table())?;
            }
            Ok(if report.consistent() {
                0
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Verify { args, samples } => {
            let report = report_for(&args, true, Some(samples))?;
            for f in &report.faces {
                let axiom = f.face_axiom.as_ref().expect("requested");
                let status = match (&axiom.skipped, axiom.violations) {
                    (Some(note), _) => format!("skipped ({note})"),
                    (None, 0) => format!("{} pairs, no violation", axiom.pairs_tested),
                    (None, v) => format!("{} pairs, {v} VIOLATIONS", axiom.pairs_tested),
                };
                let witness = match f.witness_ok {
                    Some(true) => "witness ok",
                    Some(false) => "witness FAILED",
                    None => "top face",
                };
                writeln!(
                    out,
                    "F_{:<3} {:<24} {witness:<15} face axiom: {status}",
                    f.index,
                    f.pattern.to_string()
                )?;
            }
            for c in &report.counterexamples {
                writeln!(
                    out,
                    "counterexample {}: {}",
                    c.name,
                    if c.confirmed {
                        "confirmed"
                    } else {
                        "NOT confirmed"
                    }
                )?;
            }
            let ok = report.consistent();
            writeln!(
                out,
                "length {}  l_poly {}  {}",
                report.length,
                report.l_poly,
                if ok {
                    "all checks passed"
                } else {
                    "CHECKS FAILED"
                }
            )?;
            Ok(if ok { 0 } else { EXIT_NEGATIVE })
        }
        Command::Counterexample {
            which,
            n,
            cone,
            json: as_json,
        } => {
            if n < 2 {
                bail!("the construction needs n >= 2, got n = {n}");
            }
            let verdict = match which {
                Which::DualDdpFace => replay_remark_dual_ddplus(n)?,
                Which::CopOrdering => {
                    replay_remark_cop_order(n, &parse_cone(&cone, n, DEFAULT_ENUMERATION_LIMIT)?)?
                }
            };
            if as_json {
                writeln!(out, "{}", json(&verdict))?;
            } else {
                writeln!(
                    out,
                    "{} in {} with n = {}: pattern {}",
                    verdict.name, verdict.cone, verdict.n, verdict.pattern
                )?;
                writeln!(out, "A     = {}", verdict.a)?;
                writeln!(out, "B     = {}", verdict.b)?;
                writeln!(out, "A + B = {}", verdict.sum)?;
                for f in &verdict.facts {
                    writeln!(
                        out,
                        "  [{}] {}",
                        if f.holds { "ok" } else { "FAIL" },
                        f.statement
                    )?;
                }
                writeln!(
                    out,
                    "{}",
                    if verdict.confirmed {
                        "confirmed: the pattern face is not a face"
                    } else {
                        "NOT confirmed"
                    }
                )?;
            }
            Ok(if verdict.confirmed { 0 } else { EXIT_NEGATIVE })
        }
        Command::Diagram {
            side,
            n,
            i,
            j,
            format,
            witness,
        } => {
            let side: Side = side.into();
            let pattern = chains::chain_pattern(side, n, i, j)?;
            let w = if witness {
                Some(chains::step_witness(side, n, i, j)?)
            } else {
                None
            };
            let d = render_diagram(&pattern, w.as_ref())?;
            match format {
                Format::Ascii => write!(out, "{}", d.to_ascii())?,
                Format::Svg => write!(out, "{}", d.to_svg())?,
            }
            Ok(0)
        }
        Command::Bounds { n, json: as_json } => {
            if as_json {
                let all = n
                    .iter()
                    .flat_map(|&k| [Side::Cp, Side::Cop].map(move |s| compute_bounds(k, s)))
                    .collect::<facelattice::Result<Vec<_>>>()?;
                writeln!(out, "{}", json(&all))?;
            } else {
                write!(out, "{}", bounds_table(&n)?)?;
            }
            Ok(0)
        }
        Command::Report { args, samples } => {
            let report = report_for(&args, true, (samples > 0).then_some(samples))?;
            writeln!(out, "{}", report.to_json())?;
            Ok(if report.consistent() {
                0
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let code = match run(cli, &mut out) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_ERROR
        }
    };
    // A closed pipe (`| head`) is not an error worth reporting.
    match io::stdout().lock().write_all(out.as_bytes()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => {
            eprintln!("error: writing output: {e}");
            ExitCode::from(EXIT_ERROR)
        }
        _ => ExitCode::from(code),
    }
}
