//! `nillat`: JSON front end for nillat-core.
//!
//! Exit codes: 0 success, 1 a negative answer to a yes/no question
//! (isomorphism, Anosov, commensurability), 2 input error, 3 precondition
//! error, 4 structural error.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use nillat_core::Error;
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "nillat", version, about = "Exact computations with nilpotent Lie algebras and their lattices")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Read the request document from a file.
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Inline request document.
    #[arg(long, global = true)]
    pub json: Option<String>,
    /// Budget for bounded searches.
    #[arg(long, global = true)]
    pub bound: Option<i64>,
    /// Seed for fixed-seed sampling.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    pub seed: u64,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the Jacobi identity of a Lie algebra.
    ValidateLie,
    /// Lower and upper central series.
    CentralSeries,
    /// Basis of the scalar 2-cocycles.
    Cocycles,
    /// Classify a 6-dimensional 2-step algebra with 2-dimensional center.
    Classify6,
    /// Whether two 6-dimensional algebras give commensurable lattices.
    Commensurable {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    /// Center over derived subgroup for a two-step group model.
    TridInvariants {
        /// Invariants as "d1,d2,d3".
        #[arg(long)]
        d: Option<String>,
    },
    /// Lattices in filiform groups.
    Filiform {
        #[command(subcommand)]
        op: FiliformOp,
    },
    /// Product of two elements of a group model.
    Multiply,
    /// Check presentation relations in a group model.
    Relations,
    /// Symplectic structures on Heisenberg algebras over commutative algebras.
    Symplectic {
        #[command(subcommand)]
        op: SymplecticOp,
    },
    /// Moment map of a symplectic cocycle and its cocycle identity.
    MomentMap,
    /// Left-symmetric product from an abelian ideal of codimension one.
    Theorem6,
    /// Orthogonal of a subalgebra under a cocycle.
    Orthogonal,
    /// The six-dimensional example: exp, log and the lattice case analysis.
    Example5,
    /// Classical Yang-Baxter check for r.
    Cybe,
    /// Double of r compared with the cotangent algebra.
    DoubleTheta,
    /// Units of the ring of integers of Q(sqrt m).
    Units {
        #[arg(short = 'm', long = "m", allow_hyphen_values = true)]
        m: Option<i64>,
    },
    /// Anosov decision for an integer matrix.
    Anosov {
        /// Rows separated by ';', entries by ','.
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// Characteristic polynomials of B and A = det(B) B^-1.
    Charpoly {
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
    },
    /// Diagonal automorphism (x, y, z) -> (ax, by, abz) over a quadratic ring.
    PhiAut {
        #[arg(short = 'm', long = "m", allow_hyphen_values = true)]
        m: Option<i64>,
        /// Unit as "a,b" meaning a + b w.
        #[arg(long, allow_hyphen_values = true)]
        alpha: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        beta: Option<String>,
    },
}

#[derive(Subcommand, Debug)]
pub enum FiliformOp {
    Normalize,
    Isom {
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
    },
    Theta,
    Quotients,
}

#[derive(Subcommand, Debug)]
pub enum SymplecticOp {
    Decide,
    Construct,
    HkCheck {
        #[arg(short = 'k', long)]
        k: Option<usize>,
    },
}

/// A successful run: the document plus whether a yes/no answer was negative.
pub struct Outcome {
    pub value: Value,
    pub negative: bool,
}

impl Outcome {
    pub fn ok(value: Value) -> Self {
        Outcome { value, negative: false }
    }

    pub fn answer(value: Value, yes: bool) -> Self {
        Outcome { value, negative: !yes }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) => 2,
        Error::Precondition(_) => 3,
        Error::Structural(_) => 4,
    }
}

fn emit(v: &Value) {
    use std::io::Write;
    // a closed pipe downstream is not an error worth reporting
    let _ = writeln!(std::io::stdout().lock(), "{}", serde_json::to_string(v).expect("serializable"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let msg = e.render().to_string();
            let first = msg.lines().next().unwrap_or("invalid arguments").trim_start_matches("error: ");
            emit(&json!({"error": {"kind": "input", "message": first}}));
            return ExitCode::from(2);
        }
    };
    match commands::run(&cli) {
        Ok(out) => {
            emit(&out.value);
            ExitCode::from(if out.negative { 1 } else { 0 })
        }
        Err(e) => {
            let msg = match &e {
                Error::Input(m) | Error::Precondition(m) | Error::Structural(m) => m.clone(),
            };
            emit(&json!({"error": {"kind": e.kind(), "message": msg}}));
            ExitCode::from(exit_code(&e))
        }
    }
}
