//! `replab` command line.
//!
//! Exit codes: 0 success, 1 computational mismatch, 2 usage error.

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use replab::char_ring::{branch_sp, hom_dim};
use replab::expr::{parse, RepExpr};
use replab::johnson::{bracket_check_random, cup_image_boundary, cup_image_closed, tau1_image_span, tau2_image_span};
use replab::mmclasses::{comparison_table, table_json, table_text};
use replab::suite::{run_all, suite_json};
use replab::symp_linalg::maps::{certify1, certify2};
use replab::{Error, GroupFamily, SCHEMA};

#[derive(Parser)]
#[command(name = "replab", version, about = "Exact representation theory for Torelli group computations")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Group {
    Sp,
    Sl,
}

#[derive(Clone, Copy, ValueEnum)]
enum Case {
    Boundary,
    Closed,
}

#[derive(clap::Args)]
struct GroupArgs {
    #[arg(long, value_enum, default_value = "sp")]
    group: Group,
    /// g for Sp_2g, n for SL_n.
    #[arg(long)]
    rank: usize,
}

impl GroupArgs {
    fn family(&self) -> Result<GroupFamily, Error> {
        match self.group {
            Group::Sp => GroupFamily::sp(self.rank),
            Group::Sl => GroupFamily::sl(self.rank),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a representation expression into irreducibles.
    Decompose {
        #[command(flatten)]
        group: GroupArgs,
        expr: String,
        /// Verify that the decomposition accounts for the full dimension.
        #[arg(long)]
        check_dims: bool,
    },
    /// Dimension of a representation expression.
    Dim {
        #[command(flatten)]
        group: GroupArgs,
        expr: String,
    },
    /// Dimension of the space of equivariant maps between two expressions.
    Hom {
        #[command(flatten)]
        group: GroupArgs,
        source: String,
        target: String,
    },
    /// Restrict an Sp_2g irreducible to Sp_2(g-1).
    Branch {
        #[arg(long)]
        rank: usize,
        irrep: String,
    },
    /// Johnson homomorphism computations.
    Johnson {
        #[command(subcommand)]
        command: JohnsonCommand,
    },
    /// Print the certificate vectors used to detect cup product summands.
    Certify {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
        which: u8,
        #[arg(long)]
        g: usize,
    },
    /// Morita-Mumford class computations.
    Mm {
        #[command(subcommand)]
        command: MmCommand,
    },
    /// Run every reproduction criterion.
    PaperSuite,
}

#[derive(Subcommand)]
enum JohnsonCommand {
    /// Dimension of the span of the first Johnson image.
    Tau1Span {
        #[arg(long)]
        g: usize,
    },
    /// Dimension of the span of the second Johnson image.
    Tau2Span {
        #[arg(long)]
        g: usize,
    },
    /// Image of the cup product in the second cohomology.
    CupImage {
        #[arg(long)]
        g: usize,
        #[arg(long, value_enum)]
        case: Case,
    },
    /// Check the bracket condition on random Johnson values.
    BracketCheck {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: usize,
    },
}

#[derive(Subcommand)]
enum MmCommand {
    /// Compare the trivial-plus-Hom counts against Kawazumi's basis.
    Table {
        #[arg(long)]
        g: usize,
        #[arg(long, default_value_t = 6)]
        dmax: usize,
    },
}

/// Failure of a command, with its exit code.
enum Failure {
    Usage(String),
    Mismatch(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::TableMismatch { .. }
            | Error::DimensionMismatch { .. }
            | Error::NotARepresentation { .. }
            | Error::NonGenuineCharacter
            | Error::ZeroVector => Failure::Mismatch(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

enum Output {
    Text(String),
    Json(Value),
}

fn parse_expr(s: &str) -> Result<RepExpr, Failure> {
    parse(s).map_err(|e| match e {
        Error::Syntax { offset, .. } => Failure::Usage(format!("{e}\n  {s}\n  {}^", " ".repeat(offset))),
        e => e.into(),
    })
}

fn span(n: usize, json: bool) -> Output {
    if json {
        Output::Json(json!({ "schema": SCHEMA, "span_dim": n }))
    } else {
        Output::Text(format!("span_dim = {n}"))
    }
}

fn run(cli: Cli) -> Result<(Output, bool), Failure> {
    let json = cli.json;
    let out = match cli.command {
        Command::Decompose { group, expr, check_dims } => {
            let e = parse_expr(&expr)?;
            let grp = group.family()?;
            let chr = e.character(grp)?;
            let dec = e.decompose(grp)?;
            if check_dims && dec.total_dim() != chr.dimension() {
                return Err(Error::DimensionMismatch {
                    expected: chr.dimension().to_string(),
                    found: dec.total_dim().to_string(),
                }
                .into());
            }
            if json {
                Output::Json(dec.to_json())
            } else {
                let mut s = format!("{dec}\ndim = {}", dec.total_dim());
                if !dec.stable {
                    s.push_str("\n(rank below the stable range)");
                }
                Output::Text(s)
            }
        }
        Command::Dim { group, expr } => {
            let grp = group.family()?;
            let d = parse_expr(&expr)?.dimension(grp)?;
            if json {
                Output::Json(json!({ "schema": SCHEMA, "group": grp.name(), "rank": grp.rank(), "dim": d.to_string() }))
            } else {
                Output::Text(d.to_string())
            }
        }
        Command::Hom { group, source, target } => {
            let grp = group.family()?;
            let a = parse_expr(&source)?.character(grp)?;
            let b = parse_expr(&target)?.character(grp)?;
            let h = hom_dim(&a, &b)?;
            if json {
                Output::Json(json!({ "schema": SCHEMA, "group": grp.name(), "rank": grp.rank(), "hom_dim": h.to_string() }))
            } else {
                Output::Text(h.to_string())
            }
        }
        Command::Branch { rank, irrep } => {
            let RepExpr::V(lam) = parse_expr(&irrep)? else {
                return Err(Failure::Usage(format!("expected an irreducible V[...], found {irrep}")));
            };
            let dec = branch_sp(&lam, rank)?;
            if json {
                Output::Json(dec.to_json())
            } else {
                Output::Text(dec.to_string())
            }
        }
        Command::Johnson { command } => match command {
            JohnsonCommand::Tau1Span { g } => span(tau1_image_span(g)?, json),
            JohnsonCommand::Tau2Span { g } => span(tau2_image_span(g)?, json),
            JohnsonCommand::CupImage { g, case } => {
                let dec = match case {
                    Case::Boundary => cup_image_boundary(g)?,
                    Case::Closed => cup_image_closed(g)?,
                };
                let dim = dec.total_dim();
                if json {
                    let mut v = dec.to_json();
                    v["span_dim"] = json!(dim.to_string());
                    Output::Json(v)
                } else {
                    Output::Text(format!("{dec}\nspan_dim = {dim}"))
                }
            }
            JohnsonCommand::BracketCheck { seed, count } => {
                let r = bracket_check_random(seed, count)?;
                let out = if json {
                    Output::Json(json!({ "schema": SCHEMA, "seed": seed, "checked": r.checked, "passed": r.passed }))
                } else {
                    Output::Text(format!("{}/{} values satisfy the bracket condition", r.passed, r.checked))
                };
                return Ok((out, r.passed == r.checked));
            }
        },
        Command::Certify { which, g } => {
            let v = if which == 1 { certify1(g)? } else { certify2(g)? };
            if json {
                Output::Json(v.to_json())
            } else {
                Output::Text(v.to_string())
            }
        }
        Command::Mm { command: MmCommand::Table { g, dmax } } => {
            let cup = cup_image_boundary(6)?;
            let rows = comparison_table(g, dmax, &cup)?;
            if json {
                Output::Json(table_json(g, &rows))
            } else {
                Output::Text(table_text(&rows).trim_end().to_string())
            }
        }
        Command::PaperSuite => {
            let reports = run_all();
            let ok = reports.iter().all(|r| r.passed());
            let out = if json {
                Output::Json(suite_json(&reports))
            } else {
                let lines: Vec<String> = reports.iter().map(|r| r.to_string()).collect();
                let passed = reports.iter().filter(|r| r.passed()).count();
                Output::Text(format!("{}\n{passed}/{} criteria pass", lines.join("\n"), reports.len()))
            };
            return Ok((out, ok));
        }
    };
    Ok((out, true))
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(v) = std::env::var("REPLAB_THREADS") else { return Ok(()) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| Failure::Usage(format!("REPLAB_THREADS must be an integer >= 1, found {v:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli));
    match result {
        Ok((out, ok)) => {
            match out {
                Output::Text(s) => println!("{s}"),
                Output::Json(v) => println!("{}", serde_json::to_string_pretty(&v).expect("json")),
            }
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Mismatch(msg)) => {
            eprintln!("mismatch: {msg}");
            ExitCode::from(1)
        }
    }
}
