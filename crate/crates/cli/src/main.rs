//! `tritile` command-line tool.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

#[derive(Parser)]
#[command(name = "tritile", version, about = "Exact three-polygon simulation of Wang tiles")]
struct Cli {
    /// Print a machine-readable JSON report on stdout.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
pub struct SideArgs {
    /// Space before the first and after the last gadget on each side.
    #[arg(long, default_value_t = 5)]
    margin: i64,
    /// Space between consecutive gadgets.
    #[arg(long, default_value_t = 4)]
    gap: i64,
}

#[derive(Subcommand)]
enum Command {
    /// Turn an unsigned tile set into an equivalent signed-free one.
    Sign {
        input: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Build the wheel, shuriken and staple for a signed tile set.
    Build {
        input: PathBuf,
        #[command(flatten)]
        side: SideArgs,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Angle inventory of a prototile.
    Angles {
        input: PathBuf,
        /// Report which angle classes are multiples of π/(2n).
        #[arg(long)]
        n: Option<i64>,
    },
    /// Ways to fill an angle with inventory angles.
    Fill {
        /// Target angle as a multiple of π, e.g. `9/10`.
        #[arg(long)]
        target: String,
        /// `label=p/q` angles or prototile JSON files (their convex angles are used).
        #[arg(long, num_args = 1.., required = true)]
        inventory: Vec<String>,
        /// Also allow straight angles from tiles passing through the vertex.
        #[arg(long)]
        flat: bool,
    },
    /// Look for a periodic tiling of a k1 × k2 torus.
    SolveTorus {
        input: PathBuf,
        #[arg(long)]
        k1: usize,
        #[arg(long)]
        k2: usize,
        #[arg(long, default_value_t = tritile::wang::DEFAULT_NODE_BUDGET)]
        budget: u64,
    },
    /// Assemble the carpet for a block of a signed tile set.
    Assemble {
        set: PathBuf,
        block: PathBuf,
        #[command(flatten)]
        side: SideArgs,
        /// Skip the glue check on the block.
        #[arg(long)]
        unchecked: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Check a carpet, and optionally its neatness around the anchor.
    Validate {
        input: PathBuf,
        /// Rational `p/q` or a cyclotomic number as JSON.
        #[arg(long)]
        neat_radius: Option<String>,
    },
    /// Grow seamless carpets looking for one neat within a radius.
    Search {
        #[arg(required = true)]
        prototiles: Vec<PathBuf>,
        #[arg(long)]
        max_tiles: usize,
        #[arg(long)]
        radius: String,
        #[arg(long)]
        budget: u64,
        #[arg(long, env = "TRITILE_THREADS")]
        threads: Option<usize>,
        /// Only use the prototiles as given, never mirrored.
        #[arg(long)]
        no_reflections: bool,
        /// Write the witness carpet here when one is found.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Draw a carpet or a prototile as SVG.
    Render {
        input: PathBuf,
        #[arg(long, default_value_t = tritile::render::DEFAULT_BITS)]
        bits: u32,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let json = cli.json;
    let result = match cli.command {
        Command::Sign { input, output } => commands::sign(&input, &output),
        Command::Build { input, side, output } => commands::build(&input, side.into(), &output),
        Command::Angles { input, n } => commands::angles(&input, n),
        Command::Fill { target, inventory, flat } => commands::fill(&target, &inventory, flat),
        Command::SolveTorus { input, k1, k2, budget } => commands::solve_torus(&input, k1, k2, budget),
        Command::Assemble { set, block, side, unchecked, output } => {
            commands::assemble(&set, &block, side.into(), unchecked, &output)
        }
        Command::Validate { input, neat_radius } => commands::validate(&input, neat_radius.as_deref()),
        Command::Search { prototiles, max_tiles, radius, budget, threads, no_reflections, output } => {
            commands::search(&prototiles, max_tiles, &radius, budget, threads, !no_reflections, output.as_deref())
        }
        Command::Render { input, bits, output } => commands::render(&input, bits, &output),
    };
    let report = result.unwrap_or_else(commands::Report::error);
    report.emit(json)
}

impl From<SideArgs> for tritile::prototiles::SideParams {
    fn from(a: SideArgs) -> Self {
        tritile::prototiles::SideParams { margin: a.margin, gap: a.gap }
    }
}
