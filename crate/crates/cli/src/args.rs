use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "specsupp", version, about = "Supports and Boolean spectra of finite-dimensional algebras")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Algebra file, or a built-in name (a2, dual_numbers, k_times_k).
    #[arg(long, global = true)]
    pub algebra: Option<String>,
    /// Module file, or a module name such as S1, I1^2+I2, Lambda.
    #[arg(long, global = true)]
    pub module: Option<String>,
    /// Overrides the field of the algebra file.
    #[arg(long = "field-p", global = true)]
    pub field_p: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long = "dim-cap", global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub dim_cap: u64,
    #[arg(long = "max-terms", global = true, default_value_t = 64, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_terms: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write the output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The indecomposable injectives.
    Spectrum,
    Supp,
    Suppex,
    /// Decomposition lattice of an injective module.
    Dlattice,
    /// Splits an injective module along a partition of its support.
    Realize {
        /// One block of the partition as a comma-separated list; repeat per block.
        #[arg(long, required = true)]
        partition: Vec<String>,
    },
    /// Bounded localising closure of a family of modules.
    Closure {
        /// Comma-separated module names or files; defaults to --module.
        #[arg(long, value_delimiter = ',')]
        generators: Vec<String>,
    },
    Datum {
        #[command(subcommand)]
        action: DatumAction,
    },
    /// Indecomposables up to a dimension bound.
    Ziegler {
        #[arg(long, default_value_t = 4)]
        dmax: usize,
        /// Also run the definable-subcategory correspondence check.
        #[arg(long)]
        check: bool,
        /// Random free-module quotients added to the check corpus.
        #[arg(long, default_value_t = 8)]
        random: usize,
    },
    Stone {
        #[command(subcommand)]
        action: StoneAction,
    },
    /// Runs the shipped worked examples against the committed expectations.
    Golden,
}

#[derive(Subcommand, Debug)]
pub enum DatumAction {
    /// Checks the support-datum axioms.
    Verify {
        #[arg(long)]
        datum: PathBuf,
    },
    /// The induced map to the spectrum, with an exhaustive uniqueness check.
    Map {
        #[arg(long)]
        datum: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct RingArgs {
    /// Boolean ring file `{"atoms": [...]}`.
    #[arg(long, conflicts_with = "atoms")]
    pub ring: Option<PathBuf>,
    /// Use the ring with this many atoms.
    #[arg(long)]
    pub atoms: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum StoneAction {
    /// Points of the Stone spectrum.
    Spec(RingArgs),
    /// The unit `A -> Clop(Spec A)`.
    Unit(RingArgs),
    /// Stone transpose of a ring map.
    Adjoint {
        /// `{"source", "target", "images"}` with atom images as index lists.
        #[arg(long)]
        hom: PathBuf,
    },
    /// Disjoint refinement of a covering family.
    Disjointify {
        /// `{"ring", "x", "family"}`.
        #[arg(long)]
        input: PathBuf,
    },
}
