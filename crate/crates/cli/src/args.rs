use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use syzlab_core::koszul::StrandMethod;
use syzlab_core::{DEFAULT_PRIME, SECOND_PRIME};

#[derive(Parser, Debug, Clone)]
#[command(
    name = "syzlab",
    version,
    about = "Linear syzygies of canonical curves over prime fields"
)]
pub struct Cli {
    /// Prime to compute over; repeat for several. Defaults to 32003 and 31013.
    #[arg(long = "prime", global = true)]
    pub primes: Vec<u32>,
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Write the JSON report here.
    #[arg(long, global = true)]
    pub json: Option<PathBuf>,
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Directory for cached multiplication tensors.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Linear strand and Betti table of a canonical curve.
    Betti(CurveArgs),
    /// Full pipeline for the extremal syzygy count `m (g - k)`.
    VerifyExtremal(ExtremalArgs),
    /// Scroll strands against the Eagon-Northcott formula, or the scrolls of a curve.
    Scrolls(ScrollArgs),
    /// Rank-four quadrics of the pencils and the iterated projection test.
    Quadrics(QuadricArgs),
    /// Lattice certificates on a K3 surface with two elliptic pencils.
    K3cert(K3Args),
    /// Divisor class identities on the Hurwitz space.
    Hurcalc {
        #[command(subcommand)]
        action: HurAction,
    },
    /// Run one command per line of a file.
    Batch { file: PathBuf },
}

#[derive(Args, Debug, Clone, Default)]
pub struct CurveArgs {
    /// Plane curve of this degree.
    #[arg(long, conflicts_with_all = ["bidegree", "curve"])]
    pub plane: Option<i32>,
    /// Curve of this bidegree on P1xP1.
    #[arg(long, num_args = 2, value_names = ["A", "B"], conflicts_with = "curve")]
    pub bidegree: Option<Vec<i32>>,
    /// Curve file in JSON.
    #[arg(long)]
    pub curve: Option<PathBuf>,
    /// Number of ordinary nodes imposed on a generated curve.
    #[arg(long, default_value_t = 0)]
    pub nodes: usize,
    #[arg(long, value_enum, default_value_t = Method::Reduced)]
    pub method: Method,
}

impl CurveArgs {
    pub fn given(&self) -> bool {
        self.plane.is_some() || self.bidegree.is_some() || self.curve.is_some()
    }
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    #[default]
    Reduced,
    Full,
}

impl From<Method> for StrandMethod {
    fn from(m: Method) -> Self {
        match m {
            Method::Reduced => StrandMethod::Reduced,
            Method::Full => StrandMethod::Full,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct ExtremalArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Gonality; read off the model when omitted.
    #[arg(long)]
    pub gonality: Option<usize>,
    /// Number of minimal pencils; read off the model when omitted.
    #[arg(long)]
    pub pencils: Option<usize>,
    #[arg(long)]
    pub skip_scrolls: bool,
    #[arg(long)]
    pub skip_quadrics: bool,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
}

#[derive(Args, Debug, Clone)]
pub struct ScrollArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    /// Scroll type `e1,e2,...`.
    #[arg(long, value_delimiter = ',')]
    pub parts: Option<Vec<usize>>,
    /// Sweep of scroll degrees, e.g. `2..8`.
    #[arg(long)]
    pub en_range: Option<String>,
}

#[derive(Args, Debug, Clone)]
pub struct QuadricArgs {
    #[command(flatten)]
    pub curve: CurveArgs,
    #[arg(long, default_value_t = 50)]
    pub samples: usize,
}

#[derive(Args, Debug, Clone)]
pub struct K3Args {
    #[arg(long, visible_alias = "g")]
    pub genus: i64,
    #[arg(long, visible_alias = "k")]
    pub gonality: i64,
    /// Also search a box of a up to 6 and b up to 3k.
    #[arg(long)]
    pub wide: bool,
}

#[derive(Subcommand, Debug, Clone)]
pub enum HurAction {
    Verify {
        /// alternating-sum, bundle-sum, rank, normal-bundle, base-case, hur-class,
        /// lambda-relation, grr, grr-forensics or all.
        #[arg(long, default_value = "all")]
        identity: String,
        #[arg(long, default_value = "3..50")]
        k_range: String,
        /// Reading of the pushforward coefficients for `grr`.
        #[arg(long)]
        reading: Option<String>,
    },
}

/// Settings shared by every command of a run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub primes: Vec<u32>,
    pub primes_given: bool,
    pub seed: u64,
    pub cache: Option<PathBuf>,
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> anyhow::Result<Self> {
        let primes_given = !cli.primes.is_empty();
        let primes = if primes_given {
            cli.primes.clone()
        } else {
            vec![DEFAULT_PRIME, SECOND_PRIME]
        };
        for &p in &primes {
            anyhow::ensure!(
                p > 1000 && p % 2 == 1,
                "prime {p} must be odd and above 1000"
            );
        }
        Ok(RunConfig {
            primes,
            primes_given,
            seed: cli.seed,
            cache: cli.cache.clone(),
        })
    }
}

pub fn parse_range(s: &str) -> anyhow::Result<std::ops::RangeInclusive<i64>> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| anyhow::anyhow!("range {s:?} should look like a..b"))?;
    let b = b.trim_start_matches('=');
    let (a, b): (i64, i64) = (a.trim().parse()?, b.trim().parse()?);
    anyhow::ensure!(a <= b, "empty range {s:?}");
    Ok(a..=b)
}
