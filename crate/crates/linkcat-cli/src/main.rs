//! Command-line front end: compose linking files, check family
//! membership, enumerate the diagram monoids, render diagrams, and work
//! with proof nets.
//!
//! Exit codes: 0 success (member / correct), 1 parse or validation error,
//! 2 interface mismatch, 3 non-member or incorrect net.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use linkcat::compose::ComposeError;
use linkcat::families::{
    default_cap, enumerate_with_cap, membership_report, multiplication_table, FamilyTag,
};
use linkcat::json::{linking_from_json, net_from_json, net_to_json, LinkingRepr};
use linkcat::linking::Linking;
use linkcat::mll::{dr_correct, Formula, MllError, ProofNet};
use linkcat::render::{render_ascii, render_svg};

const EXIT_OK: u8 = 0;
const EXIT_PARSE: u8 = 1;
const EXIT_INTERFACE: u8 = 2;
const EXIT_NEGATIVE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "linkcat",
    version,
    about = "Linking diagrams composed by pullback"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose two linking files, applying FIRST and then SECOND.
    Compose {
        first: PathBuf,
        second: PathBuf,
        /// Emit the flattened (loopless) composite.
        #[arg(long)]
        flat: bool,
    },
    /// Check a linking file for family membership.
    Check {
        file: PathBuf,
        /// One of link, part, brau, tlieb, nat-plus, with an optional
        /// -flat suffix for the loopless variant.
        #[arg(long)]
        family: String,
    },
    /// Enumerate the loopless endomorphism monoid of a family on {0..n}.
    ///
    /// The elements listed are always the loopless ones (that is what the
    /// classical monoids are), so `brau` and `brau-flat` agree here. The
    /// per-family cap on n can be overridden with LINKCAT_MAX_ENUM.
    Enumerate {
        #[arg(long)]
        family: String,
        #[arg(long)]
        n: usize,
        /// Also emit the multiplication table as [i, j, k, lambda] rows,
        /// where composing element i and then element j gives element k
        /// while forming lambda loops.
        #[arg(long)]
        table: bool,
    },
    /// Render a linking file.
    Render {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
    /// Proof-net operations.
    Mll {
        #[command(subcommand)]
        command: MllCommand,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Ascii,
    Svg,
}

#[derive(Subcommand)]
enum MllCommand {
    /// Check a proof structure on a formula for correctness.
    Check {
        formula: String,
        /// Axiom pairs over the formula's leaves, e.g. "0-3,1-2".
        #[arg(long)]
        axioms: String,
    },
    /// Compose two net files, applying FIRST and then SECOND.
    Compose { first: PathBuf, second: PathBuf },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(message: impl Into<String>) -> Failure {
        Failure {
            code: EXIT_PARSE,
            message: message.into(),
        }
    }
}

fn load_linking(path: &Path) -> Result<Linking, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    linking_from_json(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn load_net(path: &Path) -> Result<ProofNet, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::parse(format!("{}: {e}", path.display())))?;
    net_from_json(&text).map_err(|e| Failure::parse(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Compose {
            first,
            second,
            flat,
        } => {
            let a = load_linking(&first)?;
            let b = load_linking(&second)?;
            let pb = a.then(&b).map_err(|e| Failure {
                code: match e {
                    ComposeError::InterfaceMismatch { .. } => EXIT_INTERFACE,
                    _ => EXIT_PARSE,
                },
                message: e.to_string(),
            })?;
            let result = if flat {
                pb.linking.flatten()
            } else {
                pb.linking
            };
            let out = json!({
                "linking": LinkingRepr::of_linking(&result),
                "newLoops": pb.new_loops,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("serialisable")
            );
            Ok(EXIT_OK)
        }
        Command::Check { file, family } => {
            let tag = FamilyTag::parse(&family).map_err(|e| Failure::parse(e.to_string()))?;
            let linking = load_linking(&file)?;
            let failed = membership_report(&linking, tag);
            let out = json!({
                "family": tag.to_string(),
                "member": failed.is_empty(),
                "failed": failed,
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("serialisable")
            );
            Ok(if failed.is_empty() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Command::Enumerate { family, n, table } => {
            let tag = FamilyTag::parse(&family).map_err(|e| Failure::parse(e.to_string()))?;
            let tag = FamilyTag::new(tag.family, true);
            let cap = match std::env::var("LINKCAT_MAX_ENUM") {
                Ok(value) => value.parse().map_err(|_| {
                    Failure::parse(format!("LINKCAT_MAX_ENUM={value} is not a number"))
                })?,
                Err(_) => default_cap(tag.family),
            };
            let elements =
                enumerate_with_cap(tag, n, cap).map_err(|e| Failure::parse(e.to_string()))?;
            let reprs: Vec<LinkingRepr> = elements.iter().map(LinkingRepr::of_linking).collect();
            let out = if table {
                let rows =
                    multiplication_table(&elements).map_err(|e| Failure::parse(e.to_string()))?;
                json!({ "elements": reprs, "table": rows })
            } else {
                json!({ "elements": reprs })
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&out).expect("serialisable")
            );
            Ok(EXIT_OK)
        }
        Command::Render { file, format } => {
            let linking = load_linking(&file)?;
            match format {
                RenderFormat::Ascii => print!("{}", render_ascii(&linking)),
                RenderFormat::Svg => print!("{}", render_svg(&linking)),
            }
            Ok(EXIT_OK)
        }
        Command::Mll { command } => match command {
            MllCommand::Check { formula, axioms } => {
                let formula =
                    Formula::parse(&formula).map_err(|e| Failure::parse(e.to_string()))?;
                let pairs = parse_axiom_pairs(&axioms)?;
                let correct =
                    dr_correct(&formula, &pairs).map_err(|e| Failure::parse(e.to_string()))?;
                let out = json!({
                    "formula": formula.to_string(),
                    "correct": correct,
                });
                println!(
                    "{}",
                    serde_json::to_string_pretty(&out).expect("serialisable")
                );
                Ok(if correct { EXIT_OK } else { EXIT_NEGATIVE })
            }
            MllCommand::Compose { first, second } => {
                let a = load_net(&first)?;
                let b = load_net(&second)?;
                let composite = a.then(&b).map_err(|e| Failure {
                    code: match e {
                        MllError::FormulaMismatch { .. } => EXIT_INTERFACE,
                        _ => EXIT_PARSE,
                    },
                    message: e.to_string(),
                })?;
                println!("{}", net_to_json(&composite));
                Ok(EXIT_OK)
            }
        },
    }
}

fn parse_axiom_pairs(text: &str) -> Result<Vec<(usize, usize)>, Failure> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|chunk| {
            let (i, j) = chunk
                .trim()
                .split_once('-')
                .ok_or_else(|| Failure::parse(format!("axiom pair {chunk:?} is not i-j")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Failure::parse(format!("axiom pair {chunk:?} is not i-j")))
            };
            Ok((parse(i)?, parse(j)?))
        })
        .collect()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
