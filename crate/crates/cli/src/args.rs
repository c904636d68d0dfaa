use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(
    name = "polyszego",
    version,
    about = "Exact Szegő projections and Dirichlet solutions for polynomials on ellipses"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: OutputArgs,
}

#[derive(Args, Debug)]
pub struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Leave runtimes out of reports so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub no_timestamp: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Harmonic extension of polynomial boundary data on an ellipse or ellipsoid.
    Dirichlet {
        #[command(flatten)]
        domain: DomainArgs,
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Exact weighted Szegő projection with its decomposition certificate.
    Szego {
        #[command(flatten)]
        ellipse: EllipseArg,
        #[command(flatten)]
        poly: PolyArgs,
    },
    /// Exact projection against the boundary least-squares projection.
    Verify {
        #[command(flatten)]
        ellipse: EllipseArg,
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Largest accepted coefficient deviation.
        #[arg(long, default_value_t = 1e-8, value_parser = positive)]
        tol: f64,
    },
    /// Numerical experiments.
    #[command(subcommand)]
    Experiment(Experiment),
    /// Run the full acceptance suite.
    Suite {
        /// Seed for the random inputs.
        #[arg(long)]
        seed: Option<u64>,
        #[command(flatten)]
        grid: GridArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum Experiment {
    /// Unweighted S(zbar): constant on discs, not on eccentric ellipses.
    Szbar {
        #[command(flatten)]
        ellipse: EllipseArg,
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Szegő against Bergman projection of a harmonic polynomial on a disc.
    Harmonic {
        #[command(flatten)]
        ellipse: EllipseArg,
        #[command(flatten)]
        poly: PolyArgs,
        #[command(flatten)]
        grid: GridArgs,
        /// Largest accepted coefficient deviation.
        #[arg(long, default_value_t = 1e-8, value_parser = positive)]
        tol: f64,
    },
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct DomainArgs {
    /// Ellipse `a,b,h,k`: semi-axes a, b and center (h, k), rationals allowed.
    #[arg(long, allow_hyphen_values = true)]
    pub ellipse: Option<String>,
    /// JSON ellipsoid: `{"dim", "Q", "center"}` or `{"a", "b", "h", "k"}`.
    #[arg(long)]
    pub ellipsoid: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct EllipseArg {
    /// Ellipse `a,b,h,k`: semi-axes a, b and center (h, k), rationals allowed.
    #[arg(long, allow_hyphen_values = true)]
    pub ellipse: String,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
pub struct PolyArgs {
    /// Polynomial text, e.g. "zbar", "x^2 - 1/3*y", "(1+2i)*z^2*zbar".
    #[arg(long, allow_hyphen_values = true)]
    pub poly: Option<String>,
    /// File holding the polynomial text.
    #[arg(long)]
    pub poly_file: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GridArgs {
    /// Boundary nodes (even, at least 16).
    #[arg(long, value_parser = nodes)]
    pub nodes: Option<usize>,
    /// Degree of the numerical holomorphic basis.
    #[arg(long)]
    pub degree: Option<usize>,
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

fn nodes(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(m) if m >= 16 && m.is_multiple_of(2) => Ok(m),
        _ => Err(format!("`{s}` is not an even node count of at least 16")),
    }
}
