use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Closed,
    Maxr,
    Oracle,
    All,
}

/// Parsed command line.
#[derive(Debug, Parser)]
#[command(
    name = "frobsq",
    version,
    about = "Frobenius numbers of shifted-square numerical semigroups ⟨a, a+1², a+2², …⟩"
)]
pub struct CliConfig {
    /// Output format. Defaults to csv for `scan` and plain otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Write data to this file instead of stdout.
    #[arg(long, global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal number of positive squares summing to n, with a witness.
    Iota { n: u64 },

    /// Square class of n and the facts that decide it.
    Classify { n: u64 },

    /// Frobenius number of the shifted-square semigroup for shift a.
    Frobenius {
        #[arg(long)]
        a: u64,
        #[arg(long, value_enum, default_value_t = MethodArg::All)]
        method: MethodArg,
    },

    /// Apéry set of a semigroup.
    Apery {
        #[command(flatten)]
        semigroup: SemigroupArgs,
        /// Modulus (an element of the semigroup); defaults to the multiplicity.
        #[arg(long)]
        modulus: Option<u64>,
    },

    /// Gaps (non-members) of a semigroup.
    Gaps {
        #[command(flatten)]
        semigroup: SemigroupArgs,
    },

    /// Compare closed form, max-r characterization and oracle over a range.
    Scan {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
        #[arg(long, default_value_t = 1)]
        step: u64,
        /// Comma-separated residues mod 8 to keep.
        #[arg(long, value_delimiter = ',', value_name = "LIST")]
        mod8: Option<Vec<u8>>,
        /// Also run the brute-force oracle.
        #[arg(long)]
        oracle: bool,
        /// Worker threads; defaults to the logical core count.
        #[arg(long)]
        jobs: Option<usize>,
    },

    /// Histogram of a - max_r(a) per residue class mod 8.
    Profile {
        #[arg(long)]
        from: u64,
        #[arg(long)]
        to: u64,
    },
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct SemigroupArgs {
    /// Shift of the shifted-square sequence.
    #[arg(long)]
    pub a: Option<u64>,
    /// Explicit comma-separated generators.
    #[arg(long, value_delimiter = ',', value_name = "LIST")]
    pub generators: Option<Vec<u64>>,
}
