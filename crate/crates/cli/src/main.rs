use std::fs;
use std::io::IsTerminal;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use rainbow::generate::{generate, GenConfig, GenKind};
use rainbow::greedy::{peel_general, peel_proper, reconstruct, PeelMode};
use rainbow::hunt::{hunt_exhaustive_with, hunt_random, HuntReport, RandomHuntConfig};
use rainbow::instance::{emit_instance, parse_instance};
use rainbow::verify::{check_hypotheses, verify_theorem, Conclusion, TheoremId};
use rainbow::{max_rainbow_matching, reduce_to_star_forests, EdgeColoredGraph, NodeBudget};

const OK: u8 = 0;
const FAILED: u8 = 1;
const BAD_INPUT: u8 = 2;
const UNKNOWN: u8 = 3;

#[derive(Parser)]
#[command(name = "rainbow", version, about = "Rainbow matchings in edge-colored graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximum rainbow matching by exact search
    Solve {
        file: PathBuf,
        /// Node budget for the search
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Greedy peel and reconstruction
    Greedy {
        file: PathBuf,
        #[arg(long)]
        mode: PeelMode,
        #[arg(long)]
        m: usize,
        /// Write the peel trace here
        #[arg(long)]
        trace: Option<PathBuf>,
    },
    /// Structural predicates (exit 0 if the property holds, 1 if not)
    Check {
        file: PathBuf,
        #[arg(long)]
        property: Property,
    },
    /// Reduce every color class to a star forest
    Reduce {
        file: PathBuf,
        #[arg(short = 'o', long = "output")]
        output: PathBuf,
    },
    /// Check a theorem's hypotheses and conclusion on one instance
    Verify {
        file: PathBuf,
        #[arg(long)]
        theorem: TheoremId,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Generate a seeded instance
    Gen {
        #[arg(long)]
        kind: GenKind,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 3)]
        colors: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Target m for near-threshold instances
        #[arg(long)]
        m: Option<usize>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Search for counterexamples to the 2mn conjecture
    Hunt {
        #[arg(long)]
        mode: HuntModeArg,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 3)]
        colors_max: usize,
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 4)]
        n_min: usize,
        #[arg(long, default_value_t = 1)]
        m_min: usize,
        #[arg(long, default_value_t = 3)]
        m_max: usize,
        #[arg(long)]
        budget: Option<u64>,
        /// Ask for size m + 1 instead of m
        #[arg(long)]
        plus_one: bool,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Property {
    TriangleFree,
    C4Free,
    Proper,
    StarForest,
}

#[derive(Clone, Copy, ValueEnum)]
enum HuntModeArg {
    Exhaustive,
    Random,
}

struct Paint(bool);

impl Paint {
    fn from_env() -> Self {
        match std::env::var("ECG_COLOR").as_deref() {
            Ok("1") => Paint(true),
            Ok("0") => Paint(false),
            _ => Paint(std::io::stdout().is_terminal()),
        }
    }

    fn good(&self, s: &str) -> String {
        self.wrap("32", s)
    }

    fn bad(&self, s: &str) -> String {
        self.wrap("31", s)
    }

    fn wrap(&self, code: &str, s: &str) -> String {
        if self.0 {
            format!("\x1b[{code}m{s}\x1b[0m")
        } else {
            s.to_string()
        }
    }
}

fn budget(limit: Option<u64>) -> NodeBudget {
    NodeBudget::from(limit)
}

fn load(path: &Path) -> Result<EdgeColoredGraph, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_instance(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn write_out(path: &Path, text: &str) -> Result<(), String> {
    fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(cli: Cli, paint: &Paint) -> Result<u8, String> {
    match cli.command {
        Command::Solve { file, budget: limit } => {
            let g = load(&file)?;
            let r = max_rainbow_matching(&g, budget(limit));
            println!("size {}", r.size);
            println!("witness {}", r.witness);
            println!("nodes {}", r.nodes_explored);
            if r.budget_exhausted {
                println!("{}", paint.bad("budget exhausted: size is a lower bound"));
                return Ok(UNKNOWN);
            }
            Ok(OK)
        }
        Command::Greedy { file, mode, m, trace } => {
            let g = load(&file)?;
            let (g, t) = match mode {
                PeelMode::Proper => {
                    let t = peel_proper(&g, m);
                    (g, t)
                }
                PeelMode::General => {
                    eprintln!("note: reducing color classes to star forests before the general peel");
                    let r = reduce_to_star_forests(&g);
                    let t = peel_general(&r, m).map_err(|e| e.to_string())?;
                    (r, t)
                }
            };
            let matching = reconstruct(&g, &t).map_err(|e| e.to_string())?;
            let theorem = match mode {
                PeelMode::Proper => TheoremId::ProperColored,
                PeelMode::General => TheoremId::General,
            };
            let hyp = check_hypotheses(&g, m, theorem);
            println!("k {}", t.k());
            println!("matching {matching}");
            let status = if hyp.all_met() {
                paint.good("met")
            } else {
                paint.bad("unmet")
            };
            println!("hypotheses {status}");
            if let Some(path) = trace {
                write_out(&path, &t.to_string())?;
            }
            Ok(OK)
        }
        Command::Check { file, property } => {
            let g = load(&file)?;
            let (name, holds) = match property {
                Property::TriangleFree => ("triangle-free", g.is_triangle_free()),
                Property::C4Free => ("c4-free", g.is_c4_free()),
                Property::Proper => ("proper", g.is_properly_colored()),
                Property::StarForest => match g.first_non_star_forest_color() {
                    None => ("star-forest", true),
                    Some(c) => {
                        println!("color {c} is not a star forest");
                        ("star-forest", false)
                    }
                },
            };
            let verdict = if holds { paint.good("yes") } else { paint.bad("no") };
            println!("{name} {verdict}");
            Ok(if holds { OK } else { FAILED })
        }
        Command::Reduce { file, output } => {
            let g = load(&file)?;
            let r = reduce_to_star_forests(&g);
            eprintln!("removed {} edges", g.edge_count() - r.edge_count());
            write_out(&output, &emit_instance(&r))?;
            Ok(OK)
        }
        Command::Verify {
            file,
            theorem,
            m,
            budget: limit,
        } => {
            let g = load(&file)?;
            let report = verify_theorem(&g, m, theorem, budget(limit));
            print!("{report}");
            if !report.hypotheses.all_met() {
                println!("hypotheses unmet");
            }
            if report.is_violation() {
                println!("{}", paint.bad("violating instance:"));
                print!("{}", emit_instance(&g));
                return Ok(FAILED);
            }
            if report.hypotheses.all_met() && report.conclusion == Conclusion::Unknown {
                return Ok(UNKNOWN);
            }
            Ok(OK)
        }
        Command::Gen {
            kind,
            n,
            p,
            colors,
            seed,
            m,
            output,
        } => {
            let mut config = GenConfig::new(kind, n, p, colors, seed);
            if let Some(m) = m {
                config = config.with_m(m);
            }
            let g = generate(&config).map_err(|e| e.to_string())?;
            let text = emit_instance(&g);
            match output {
                Some(path) => write_out(&path, &text)?,
                None => print!("{text}"),
            }
            Ok(OK)
        }
        Command::Hunt {
            mode,
            n_max,
            colors_max,
            trials,
            seed,
            n_min,
            m_min,
            m_max,
            budget: limit,
            plus_one,
            out_dir,
            jobs,
        } => {
            let offset = usize::from(plus_one);
            let report: HuntReport = match mode {
                HuntModeArg::Exhaustive => hunt_exhaustive_with(n_max.unwrap_or(4), colors_max, offset, jobs),
                HuntModeArg::Random => {
                    let config = RandomHuntConfig {
                        seed,
                        trials,
                        n_min,
                        n_max: n_max.unwrap_or(12),
                        m_min,
                        m_max,
                        budget: budget(limit),
                        target_offset: offset,
                        ..RandomHuntConfig::default()
                    };
                    hunt_random(&config, jobs)
                }
            };
            print!("{}", report.render());
            eprintln!("elapsed {:.3}s", report.elapsed.as_secs_f64());
            if let Some(dir) = out_dir {
                let written = report
                    .write_artifacts(&dir)
                    .map_err(|e| format!("{}: {e}", dir.display()))?;
                for path in written {
                    eprintln!("wrote {}", path.display());
                }
            }
            if report.counterexample.is_some() {
                println!("{}", paint.bad("counterexample found"));
                return Ok(FAILED);
            }
            if report.unknown > 0 {
                return Ok(UNKNOWN);
            }
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let paint = Paint::from_env();
    match run(cli, &paint) {
        Ok(code) => ExitCode::from(code),
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(BAD_INPUT)
        }
    }
}
