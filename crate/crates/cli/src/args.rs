use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

#[derive(Debug, Parser)]
#[command(
    name = "updyn",
    version,
    about = "Unpredictable points of the shift: generation, certificates, conjugate models"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Sequence space, when not given positionally.
    #[arg(id = "space_flag", long = "space", global = true, value_enum)]
    pub space: Option<Space>,
    /// Certificate depth, when not given positionally.
    #[arg(id = "n_max_flag", long = "n-max", global = true)]
    pub n_max: Option<u64>,
    #[arg(id = "mode_flag", long = "mode", global = true, value_enum)]
    pub mode: Option<Mode>,
    #[arg(id = "format_flag", long = "format", global = true, value_enum)]
    pub format: Option<Format>,
    /// Search horizon in shift steps (default 2^20).
    #[arg(long, global = true)]
    pub horizon: Option<u64>,
    /// Bits kept by rounded square roots in the logistic model.
    #[arg(long, global = true, default_value_t = 64)]
    pub precision: u32,
    /// Lift the caps on depth, window length and horizon.
    #[arg(long, global = true)]
    pub unsafe_limits: bool,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Space {
    OneSided,
    BiInfinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Minimal,
    Canonical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Sign {
    Positive,
    Negative,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Strategy {
    Block,
    Scan,
}

fn big_int(s: &str) -> Result<BigInt, String> {
    s.parse().map_err(|_| format!("not an integer: {s}"))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print symbols of s* from a start index.
    #[command(allow_negative_numbers = true)]
    Gen {
        #[arg(value_enum)]
        space: Space,
        #[arg(value_parser = big_int)]
        start: BigInt,
        count: u64,
        /// Mark block boundaries with '|'.
        #[arg(long)]
        blocks: bool,
    },
    /// Certify unpredictability of s* up to a depth.
    Certify {
        #[arg(value_enum)]
        space: Option<Space>,
        n_max: Option<u64>,
        #[arg(value_enum)]
        mode: Option<Mode>,
        #[arg(value_enum)]
        format: Option<Format>,
    },
    /// Locate every window pattern of a given length on the orbit of s*.
    Density {
        #[arg(value_enum)]
        space: Space,
        length: usize,
        #[arg(long, value_enum, default_value_t = Strategy::Block)]
        strategy: Strategy,
    },
    /// Monotone return times of s* toward itself.
    Poisson {
        #[arg(value_enum)]
        space: Option<Space>,
        #[arg(value_enum, default_value_t = Sign::Positive)]
        direction: Sign,
        n_max: Option<u64>,
        #[arg(value_enum)]
        format: Option<Format>,
    },
    /// Sensitivity witnesses at delta = 2^-k for points along the orbit.
    Sensitivity {
        #[arg(value_enum)]
        space: Space,
        delta_exponent: u32,
        samples: u64,
    },
    /// The logistic map and its invariant Cantor set.
    Logistic {
        #[command(subcommand)]
        action: LogisticAction,
    },
    /// Iterate the Hénon map and check the horseshoe parameter region.
    #[command(allow_negative_numbers = true)]
    Henon {
        alpha: String,
        beta: String,
        steps: usize,
        #[arg(long, default_value = "0")]
        x: String,
        #[arg(long, default_value = "0")]
        y: String,
    },
    /// The affine Smale horseshoe.
    Horseshoe {
        #[arg(long, default_value = "1/3")]
        lambda: String,
        #[arg(long, default_value = "3")]
        expansion: String,
        #[command(subcommand)]
        action: HorseshoeAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum LogisticAction {
    /// Branch coding of the interval [lo, hi] (or the point lo).
    #[command(allow_negative_numbers = true)]
    Itinerary {
        mu: String,
        lo: String,
        length: usize,
        #[arg(long)]
        hi: Option<String>,
    },
    /// Enclosures of the cylinder of a word.
    Point { mu: String, word: String },
    /// Enclosure of the point coded by the one-sided s*.
    Transport { mu: String, depth: usize },
    /// Check stepping cylinders against the shift on random words.
    Commute {
        mu: String,
        length: usize,
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Debug, Subcommand)]
pub enum HorseshoeAction {
    /// Box of points whose itinerary matches a dotted word like 01.000.
    Box { word: String },
    /// Itinerary of a point.
    Itinerary {
        x: String,
        y: String,
        past: usize,
        future: usize,
    },
    /// Box coding the central window of bi-infinite s*.
    Star { radius: usize },
}
