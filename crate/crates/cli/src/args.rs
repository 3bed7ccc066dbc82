//! Command-line grammar.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use robin_square::robin1d::RobinParam;
use robin_square::spectrum2d::ModeLabel;

#[derive(Debug, Parser)]
#[command(
    name = "robin-square",
    version,
    about = "Robin eigenvalues, curve crossings and nodal domains of the square"
)]
pub struct Cli {
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file, or directory for `figures`. Defaults to
    /// $ROBIN_SQUARE_OUT, then stdout (or the current directory).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run every kernel on the calling thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Which {
    Neumann,
    Dirichlet,
    Both,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ordered spectrum with labels and multiplicity ranges. At h = inf the
    /// labels are shifted to the 1-based Dirichlet convention.
    Spectrum {
        /// Robin parameter: a number >= 0 or "inf".
        #[arg(long)]
        h: RobinParam,
        /// Largest eigenvalue to list.
        #[arg(long, required_unless_present = "count")]
        lmax: Option<f64>,
        /// Number of eigenvalues to list.
        #[arg(long, conflicts_with = "lmax")]
        count: Option<usize>,
    },
    /// Crossings of eigenvalue curves.
    Crossings {
        #[command(subcommand)]
        action: CrossingsCommand,
    },
    /// Nodal census of cos θ u_p(x)u_q(y) + sin θ u_p(y)u_q(x).
    Nodal {
        #[arg(long)]
        h: RobinParam,
        #[arg(long, allow_hyphen_values = true)]
        theta: f64,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        q: u32,
        /// Coarse grid cells per side.
        #[arg(long, default_value_t = 1024, value_parser = clap::value_parser!(u32).range(64..=8192))]
        resolution: u32,
    },
    /// Disc ground state and Pleijel-type checks.
    Fk {
        #[command(subcommand)]
        action: FkCommand,
    },
    /// Integer Neumann and Dirichlet tables up to k = 129.
    Tables {
        #[arg(long, value_enum, default_value = "both")]
        which: Which,
    },
    /// Data and SVG plot for one of the six figures.
    Figures {
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=6))]
        id: u8,
    },
    /// Run the acceptance criteria; exit status 1 if any fails.
    Verify {
        /// Restrict to one group (robin1d, spectrum, crossings, nodal,
        /// faberkrahn, properties) or one criterion number.
        #[arg(long)]
        only: Option<String>,
        /// Replace the branch solver by plain bisection to this width.
        #[arg(long)]
        inject_alpha_tol: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum CrossingsCommand {
    /// The crossing of two curves, if any.
    Pair {
        a: ModeLabel,
        b: ModeLabel,
        #[arg(long, default_value_t = 1e-3)]
        h_lo: f64,
        #[arg(long, default_value_t = 1e3)]
        h_hi: f64,
    },
    /// Every crossing among a set of curves.
    Scan {
        #[arg(required = true, num_args = 2..)]
        labels: Vec<ModeLabel>,
        #[arg(long, default_value_t = 1e-3)]
        h_lo: f64,
        #[arg(long, default_value_t = 1e3)]
        h_hi: f64,
    },
    /// The h above which each curve exceeds a level.
    Threshold {
        #[arg(long)]
        level: f64,
        #[arg(required = true, num_args = 1..)]
        labels: Vec<ModeLabel>,
    },
    /// Curves sampled on [0, h_max].
    Curves {
        #[arg(required = true, num_args = 1..)]
        labels: Vec<ModeLabel>,
        #[arg(long, default_value_t = 12.0)]
        h_max: f64,
        #[arg(long, default_value_t = 241)]
        points: usize,
    },
}

#[derive(Debug, Subcommand)]
pub enum FkCommand {
    /// First Robin eigenvalue of the disc of the given area.
    Disc {
        #[arg(long)]
        h: RobinParam,
        #[arg(long, default_value_t = 1.0)]
        area: f64,
    },
    /// Pleijel-type exclusion test for λ_n.
    Pleijel {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        lambda: f64,
    },
    /// Dirichlet indices surviving the quotient and Weyl tests.
    Candidates,
}
