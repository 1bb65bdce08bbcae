mod cache;
mod commands;
mod io;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

/// Exact combinatorics and moment-angle cohomology of simple 3-polytopes.
#[derive(Parser)]
#[command(name = "polykit", version, about)]
pub struct Cli {
    /// Coefficient field for ring computations
    #[arg(long, global = true, default_value = "q", value_parser = ["q", "z2"])]
    pub field: String,
    /// Bound on the face count for 2^m subset computations
    #[arg(long, global = true, default_value_t = 20)]
    pub max_m: usize,
    /// Cache directory (falls back to the POLYKIT_CACHE environment variable)
    #[arg(long, global = true)]
    pub cache_dir: Option<std::path::PathBuf>,
    /// Seed for randomized reports
    #[arg(long, global = true, default_value_t = 20240101)]
    pub seed: u64,
    /// Write output here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    /// Output format
    #[arg(long, global = true, default_value = "json", value_parser = ["json", "text", "csv"])]
    pub format: String,
    /// Worker threads for data-parallel computations (0 = automatic)
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Build named polytopes, corpora and derived objects, writing .poly
    /// snapshot files
    Construct {
        /// what to build: a name (simplex, cube, prism:K, pyramid:K,
        /// antiprism:K, m5xi, as3, pe3, p8, dodecahedron), or
        /// truncate-full:NAME, ideal:antiprism:K, exhaustive:M, apog:M:CAP
        spec: String,
        /// output directory for snapshot files
        #[arg(long, default_value = ".")]
        out_dir: std::path::PathBuf,
        /// also write a planar-code stream next to the .poly files
        #[arg(long)]
        planar_code: bool,
    },
    /// Classify a polytope (flag / Pogorelov / almost Pogorelov / ideal)
    Classify {
        /// input: a .poly file, planar-code file, or a construction name
        input: String,
    },
    /// Enumerate k-belts, with optional through/forbidden face filters
    Belts {
        input: String,
        #[arg(long)]
        k: Option<usize>,
        /// comma-separated 1-based face ids the belts must contain
        #[arg(long)]
        through: Option<String>,
        /// comma-separated 1-based face ids the belts must avoid
        #[arg(long)]
        forbidden: Option<String>,
    },
    /// Bigraded Betti table and the scalar rank invariants
    Invariants {
        input: String,
        /// include the full bigraded table in the output
        #[arg(long)]
        bigraded: bool,
        /// write a CSV of (i, j, rank) rows to this path
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
    },
    /// Colorings, the canonical characteristic map and face-ring dimensions
    Toric {
        input: String,
        #[arg(long, default_value = "small-cover", value_parser = ["small-cover", "quasitoric", "quasitoric-z2"])]
        mode: String,
    },
    /// Run one named criterion over a corpus and report agreement
    Verify {
        /// flag_h4 | apog_ranks | ideal_b4 | scc_equiv | pogorelov_h3h3
        #[arg(long)]
        criterion: String,
        /// corpus: named | exhaustive:M | apog:M:CAP | a directory of .poly
        /// files
        #[arg(long, default_value = "named")]
        corpus: String,
    },
    /// Compare two polytopes: isomorphism and fingerprints
    Compare { a: String, b: String },
    /// The full invariant fingerprint
    Fingerprint { input: String },
    /// Cache maintenance: stats | clear | self-check
    Cache {
        #[arg(value_parser = ["stats", "clear", "self-check"])]
        action: String,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .ok();
    }
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
