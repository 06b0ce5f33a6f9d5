//! `ternop`: check, classify, construct, compare and enumerate finite
//! groupoids and ternary operations.
//!
//! Exit status: 0 on success or when a property holds, 1 when it fails or no
//! isomorphism exists, 2 on usage, parse or precondition errors.

mod commands;
mod select;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "ternop",
    version,
    about = "Finite groupoid and ternary operation workbench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Operation bindings and extra constants shared by most verbs.
#[derive(Args, Clone, Default)]
pub struct BindArgs {
    /// Rebind a clause symbol: `mul=OP`, `t=OP`, `star=OP`, `hat=OP` or `unit=ELEM`
    #[arg(long = "bind", value_name = "KEY=VALUE")]
    pub bind: Vec<String>,
    /// Element (or constant) playing the distinguished unit `l`
    #[arg(long)]
    pub unit: Option<String>,
    /// Add a constant to the loaded structure: `NAME=ELEM`
    #[arg(long = "const", value_name = "NAME=ELEM")]
    pub consts: Vec<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a catalog property or a clause on one structure
    Check {
        /// `file.alg` or `file.alg#structure`
        selector: String,
        /// Structure name inside the file
        #[arg(short = 's', long = "structure")]
        structure: Option<String>,
        /// Catalog property token, e.g. `right-modular`
        #[arg(long, conflicts_with_all = ["clause", "clifford"])]
        prop: Option<String>,
        /// Clause text, e.g. `(x*y)*z = (z*y)*x`
        #[arg(long, conflicts_with = "clifford")]
        clause: Option<String>,
        /// Decompose the bound product as a semilattice of groups
        #[arg(long)]
        clifford: bool,
        #[command(flatten)]
        bind: BindArgs,
        #[arg(long)]
        json: bool,
    },
    /// List every catalog property that holds
    Classify {
        selector: String,
        #[arg(short = 's', long = "structure")]
        structure: Option<String>,
        #[command(flatten)]
        bind: BindArgs,
        #[arg(long)]
        json: bool,
    },
    /// Build a new structure from an existing one
    Construct {
        /// One of: natural-ternary, star-ternary, dual, pi-ternary, gamma,
        /// reconstruct, psi, omega, pi-map, lambda, gamma-wq, phi-g, theta,
        /// sigma, alpha-map, beta-map, standard-ternary, inverse, gh-to-inv,
        /// natural-to-inv, alpha-determined, twin-natural-pair
        what: String,
        /// Input structure (not used by twin-natural-pair)
        selector: Option<String>,
        #[arg(short = 's', long = "structure")]
        structure: Option<String>,
        /// Distinguished element for omega, pi-map, sigma, alpha-map, beta-map
        #[arg(long, value_name = "ELEM")]
        e: Option<String>,
        /// Argument permutation for pi-ternary, e.g. `(1,3,2)`
        #[arg(long)]
        perm: Option<String>,
        /// Reconstruction scheme
        #[arg(long)]
        scheme: Option<String>,
        /// Unary operation name for star-ternary
        #[arg(long, value_name = "OP")]
        unary: Option<String>,
        /// Unary operation name for alpha-determined
        #[arg(long, value_name = "OP")]
        alpha: Option<String>,
        /// Order for twin-natural-pair
        #[arg(long)]
        order: Option<usize>,
        /// Name of the output structure
        #[arg(long)]
        name: Option<String>,
        #[command(flatten)]
        bind: BindArgs,
        /// Write to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for an isomorphism between two structures
    Iso {
        left: String,
        right: String,
        /// binary, ternary or binary-with-unary
        #[arg(long, default_value = "binary")]
        kind: String,
        #[command(flatten)]
        bind: BindArgs,
        #[arg(long)]
        json: bool,
    },
    /// List automorphisms, optionally those satisfying a clause in which `'` is the automorphism
    Automorphisms {
        selector: String,
        #[arg(short = 's', long = "structure")]
        structure: Option<String>,
        #[arg(long, default_value = "binary")]
        kind: String,
        #[arg(long)]
        constraint: Option<String>,
        #[command(flatten)]
        bind: BindArgs,
        #[arg(long)]
        json: bool,
    },
    /// Generate every table of a given order satisfying constraints
    Enumerate {
        #[arg(long)]
        order: usize,
        /// Comma-separated: binary, ternary, unary, hat
        #[arg(long, default_value = "binary")]
        signature: String,
        /// Comma-separated catalog property tokens
        #[arg(long, default_value = "")]
        props: String,
        #[arg(long)]
        clause: Vec<String>,
        #[arg(long)]
        up_to_iso: bool,
        /// Pin a constant: `l=0`
        #[arg(long, value_name = "NAME=INDEX")]
        pin: Vec<String>,
        #[arg(long)]
        count_only: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in regression checks
    Regress {
        /// Only checks whose id starts with this prefix
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
