//! `hypermatch`: batch front end. JSON goes to stdout with sorted keys,
//! diagnostics to stderr.
//!
//! Exit codes: 0 success or verified, 1 verification failed, 2 input error,
//! 3 resource limit.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "hypermatch", version, about = "Matching polynomials of uniform hypergraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Size, degrees, connectivity and matching number.
    Info { file: PathBuf },
    /// The matching polynomial as exact JSON.
    Matchpoly {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Enum)]
        method: Method,
    },
    /// The path tree rooted at a vertex, as HGR on stdout.
    Pathtree {
        file: PathBuf,
        #[arg(long)]
        root: usize,
        #[arg(long, default_value_t = hypermatch::pathtree::DEFAULT_MAX_TREE_VERTICES)]
        max_vertices: usize,
        /// Write the vertex-to-path label map here.
        #[arg(long)]
        labels: Option<PathBuf>,
        #[command(flatten)]
        tree: TreeArg,
    },
    /// Rigorous enclosure of the largest zero.
    Lambda {
        file: PathBuf,
        /// Width bound on the enclosure; decimal or p/q, taken exactly.
        #[arg(long)]
        tol: Option<String>,
    },
    /// All zeros, floating point.
    Roots {
        file: PathBuf,
        #[arg(long)]
        csv: bool,
        #[arg(long, default_value_t = hypermatch::zeros::DEFAULT_PRECISION)]
        precision: f64,
    },
    /// Cyclic index of the matching polynomial and simplicity of the largest zero.
    Cyclic { file: PathBuf },
    /// Maximum-degree bounds on the largest zero.
    Bounds { file: PathBuf },
    /// Spectral radius of the adjacency tensor by power iteration.
    Rho {
        file: PathBuf,
        #[arg(long, default_value_t = hypermatch::tensor::DEFAULT_RHO_TOL)]
        tol: f64,
        #[arg(long, default_value_t = hypermatch::tensor::DEFAULT_MAX_ITER)]
        max_iter: usize,
    },
    /// Alpha-normal labelling of a k-tree with uniform edge weight.
    Alphanormal(AlphaArgs),
    /// Check one identity; exit 0 when it holds, 1 when it does not.
    Verify {
        #[arg(value_enum)]
        check: Check,
        file: PathBuf,
        #[arg(long, default_value_t = 0)]
        root: usize,
        #[command(flatten)]
        tree: TreeArg,
        /// Vertices to delete (mono).
        #[arg(long = "delete-vertex")]
        delete_vertex: Vec<usize>,
        /// Edges to delete (mono).
        #[arg(long = "delete-edge")]
        delete_edge: Vec<usize>,
    },
    /// Seeded random hypergraphs, as HGR.
    Gen {
        #[arg(value_enum)]
        family: Family,
        #[arg(long)]
        k: usize,
        /// Vertex count (kgraph only).
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        edges: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Run the bundled acceptance checks.
    Selftest {
        /// Only checks whose name contains this.
        #[arg(long)]
        filter: Option<String>,
        /// Swap in a broken recursion for the matching polynomial.
        #[arg(long, hide = true)]
        sabotage_mu: bool,
    },
}

#[derive(Args, Debug)]
pub struct TreeArg {
    /// Path-tree construction.
    #[arg(long = "tree", value_enum, default_value_t = TreeKind::Nonbacktracking)]
    pub kind: TreeKind,
}

#[derive(Args, Debug)]
pub struct AlphaArgs {
    pub file: PathBuf,
    /// Exact weight, decimal or p/q.
    #[arg(long, conflicts_with_all = ["from_lambda", "check"])]
    pub alpha: Option<String>,
    /// Use a rational surrogate of lambda^-k.
    #[arg(long, conflicts_with = "check")]
    pub from_lambda: bool,
    /// Precision of the surrogate.
    #[arg(long, default_value = "1e-20", requires = "from_lambda")]
    pub precision: String,
    /// Verify this certificate instead of constructing one.
    #[arg(long)]
    pub check: Option<PathBuf>,
    /// Tolerance for --check, decimal or p/q.
    #[arg(long, default_value = "0", requires = "check")]
    pub tau: String,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Method {
    Enum,
    Recursive,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum TreeKind {
    Nonbacktracking,
    DeletionOrdered,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Check {
    Godsil,
    Divides,
    Derivative,
    Rotation,
    Decomposition,
    Mono,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
pub enum Family {
    Ktree,
    Kgraph,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match commands::run(cli.command) {
        Ok(out) => {
            print!("{}", out.stdout);
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
