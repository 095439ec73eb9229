//! `blanks` command line. Exit codes: 0 success, 1 a check failed,
//! 2 bad usage or unreadable input.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use blanks::analyze::{analyze, default_bound};
use blanks::bounds::{four_vertex_census, BoundName};
use blanks::expansion::{greedy_expand, identity_order, is_maximal, Maximality, TieBreak};
use blanks::format::{decode, encode_arrangement, encode_report, read_arrangement, Decoded};
use blanks::fuzz::run_fuzz;
use blanks::generators::{
    fixtures, gen_convex_fixture, gen_grid, gen_plane_longbox, gen_random_item, gen_staircase, CakeKind, FuzzConfig,
};
use blanks::holes::extract_holes;
use blanks::par::Execution;
use blanks::render::{render_arrangement, render_report, DEFAULT_WIDTH};
use blanks::transforms::{absorb_holes, contract_all, saturate_to_grid};
use blanks::{Arrangement, Cake, Error};

#[derive(Parser)]
#[command(name = "blanks", version, about = "Toppings, maximal expansion and blank counting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Grid,
    Staircase,
    Longbox,
    Convex,
    Pinwheel,
    NonMaximal,
    GreedyTie,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum Tie {
    Lexicographic,
    Down,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Rectangle,
    Rectilinear,
    Plane,
    Convex,
}

#[derive(Subcommand)]
enum Command {
    /// Write a constructed arrangement.
    Generate {
        #[arg(value_enum)]
        which: Option<Construction>,
        #[arg(long, value_enum, conflicts_with = "which")]
        construction: Option<Construction>,
        #[arg(long, default_value_t = 16)]
        m: usize,
        /// Staircase steps, or notch reflex vertices for random rectilinear cakes.
        #[arg(long = "T", short = 'T', default_value_t = 1)]
        t: usize,
        /// Overridden by BLANKS_SEED when set.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long = "cake", value_enum, default_value = "rectangle")]
        cake: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Greedy maximal expansion in file order or a given order.
    Expand {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Comma-separated topping indices, 0-based.
        #[arg(long, value_delimiter = ',')]
        order: Option<Vec<usize>>,
        #[arg(long, value_enum, default_value = "lexicographic")]
        tie_break: Tie,
    },
    /// Count blanks and check them against a bound.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        bound: Option<BoundName>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check maximality and the hole structure it implies.
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Cut every hole into rectangles along horizontal chords.
    PartitionHoles {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Merge every hole into an adjacent topping.
    Absorb {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Contract all holes of a maximal arrangement into 4-vertices.
    Contract {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also saturate the resulting tiling to a grid and print it.
        #[arg(long)]
        saturate: bool,
    },
    /// Draw an arrangement or a report as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = DEFAULT_WIDTH)]
        width: u32,
    },
    /// Random arrangements through expansion and analysis.
    Fuzz {
        /// Overridden by BLANKS_SEED when set.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 100)]
        iters: usize,
        #[arg(long = "cake", alias = "cake-kind", value_enum, default_value = "rectangle")]
        cake: Kind,
        #[arg(long = "T", short = 'T', default_value_t = 2)]
        t: usize,
        #[arg(long, default_value_t = 12)]
        grid_extent: i64,
        #[arg(long)]
        bound: Option<BoundName>,
        /// Where the first counterexample is written.
        #[arg(long, default_value = "fuzz-failure.arr.json")]
        failure_out: PathBuf,
        #[arg(long)]
        sequential: bool,
    },
}

fn cake_kind(k: Kind, t: usize) -> CakeKind {
    match k {
        Kind::Rectangle => CakeKind::Rectangle,
        Kind::Rectilinear => CakeKind::Rectilinear(t),
        Kind::Plane => CakeKind::Plane,
        Kind::Convex => CakeKind::Convex,
    }
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Error> {
    match out {
        Some(p) => std::fs::write(p, bytes)?,
        None => std::io::stdout().write_all(bytes)?,
    }
    Ok(())
}

fn seed_override(seed: u64) -> Result<u64, Error> {
    match std::env::var("BLANKS_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Error::InvalidArgument(format!("BLANKS_SEED is not a u64: {s:?}"))),
        Err(_) => Ok(seed),
    }
}

fn generate(which: Construction, m: usize, t: usize, seed: u64, cake: Kind) -> Result<Arrangement, Error> {
    Ok(match which {
        Construction::Grid => gen_grid(m)?,
        Construction::Staircase => gen_staircase(m, t)?,
        Construction::Longbox => gen_plane_longbox(m)?,
        Construction::Convex => gen_convex_fixture(m)?,
        Construction::Pinwheel => fixtures::pinwheel(),
        Construction::NonMaximal => fixtures::non_maximal(),
        Construction::GreedyTie => fixtures::greedy_tie(),
        Construction::Random => gen_random_item(&FuzzConfig::new(seed, m, cake_kind(cake, t)), 0),
    })
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Generate { which, construction, m, t, seed, cake, out } => {
            let which = which.or(construction).ok_or_else(|| Error::InvalidArgument("name a construction".into()))?;
            let a = generate(which, m, t, seed_override(seed)?, cake)?;
            emit(out.as_deref(), &encode_arrangement(&a))?;
        }
        Command::Expand { input, out, order, tie_break } => {
            let a = read_arrangement(&input)?;
            let order = order.unwrap_or_else(|| identity_order(a.m()));
            let tie = match tie_break {
                Tie::Lexicographic => TieBreak::Lexicographic,
                Tie::Down => TieBreak::Down,
            };
            emit(out.as_deref(), &encode_arrangement(&greedy_expand(&a, &order, tie)?))?;
        }
        Command::Analyze { input, bound, out } => {
            let a = read_arrangement(&input)?;
            let bound = bound.unwrap_or_else(|| default_bound(&a));
            let r = analyze(&a, bound)?;
            let observed = r.holes.map_or(format!("b={}", r.b), |h| format!("holes={h}"));
            eprintln!(
                "{observed} limit={} bound={bound} {}{}",
                r.bound.value,
                if r.satisfied { "satisfied" } else { "VIOLATED" },
                if r.tight { " tight" } else { "" }
            );
            if let Some(s) = r.structure.as_ref().filter(|s| !s.passed()) {
                for v in &s.violations {
                    eprintln!("structure: {} on hole {}: {}", v.rule, v.hole, v.detail);
                }
            }
            emit(out.as_deref(), &encode_report(&r))?;
            if !r.satisfied {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Verify { input } => {
            let a = read_arrangement(&input)?;
            match is_maximal(&a)? {
                Maximality::Expandable { index, direction, larger } => {
                    println!("not maximal: topping {} ({}) can grow {direction} to {larger:?}", index, a.label(index));
                    return Ok(ExitCode::from(1));
                }
                Maximality::Maximal(_) => println!("maximal"),
            }
            let holes = extract_holes(&a)?;
            let s = blanks::holes::structure_of(&a, &holes);
            println!("holes: {} inner, {} boundary", s.inner_holes(), s.boundary_holes());
            if !s.passed() {
                for v in &s.violations {
                    println!("violation: {} on hole {}: {}", v.rule, v.hole, v.detail);
                }
                return Ok(ExitCode::from(1));
            }
            println!("structure: ok");
        }
        Command::PartitionHoles { input, out } => {
            let a = read_arrangement(&input)?;
            let r = analyze(&a, BoundName::Thm8)?;
            eprintln!("{} blanks, limit {}", r.b, r.bound.value);
            emit(out.as_deref(), &encode_report(&r))?;
        }
        Command::Absorb { input, out } => {
            let r = absorb_holes(&read_arrangement(&input)?)?;
            emit(out.as_deref(), &encode_report(&r))?;
        }
        Command::Contract { input, out, saturate } => {
            let a = read_arrangement(&input)?;
            let (c, n) = contract_all(&a)?;
            let Cake::Rect(cake) = &c.cake else { unreachable!("contraction needs a rectangle cake") };
            let census = four_vertex_census(cake, c.rects()?)?;
            eprintln!("contracted {n} holes; {} four-vertices", census.four_vertices);
            if saturate {
                let g = saturate_to_grid(cake, c.rects()?)?;
                eprintln!("grid {} x {}, t = {}, m = {}", g.k1, g.k2, g.t, g.k1 * g.k2 - g.t);
            }
            emit(out.as_deref(), &encode_arrangement(&c))?;
        }
        Command::Render { input, out, width } => {
            let svg = match decode(&std::fs::read(&input)?)? {
                Decoded::Arrangement(a) => render_arrangement(&a, width)?,
                Decoded::Report(r) => render_report(&r, width),
            };
            emit(out.as_deref(), svg.as_bytes())?;
        }
        Command::Fuzz { seed, m, iters, cake, t, grid_extent, bound, failure_out, sequential } => {
            let kind = cake_kind(cake, t);
            let cfg = FuzzConfig { seed: seed_override(seed)?, m, grid_extent, cake_kind: kind, iterations: iters };
            let bound = bound.unwrap_or(match kind {
                CakeKind::Rectangle => BoundName::Thm3,
                CakeKind::Rectilinear(_) => BoundName::Thm8,
                CakeKind::Plane => BoundName::Thm3prime,
                CakeKind::Convex => BoundName::Thm2prime,
            });
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            let outcome = run_fuzz(&cfg, bound, exec)?;
            match outcome.failure {
                None => println!("{} arrangements, seed {}, bound {bound}: no violation", outcome.checked, cfg.seed),
                Some(f) => {
                    std::fs::write(&failure_out, encode_arrangement(&f.input))?;
                    println!("item {} failed: {}; input written to {}", f.index, f.reason, failure_out.display());
                    return Ok(ExitCode::from(1));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
