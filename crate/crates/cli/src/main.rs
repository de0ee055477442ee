use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use lsk_cli::*;
use lsk_core::oracle::Bounds;
use lsk_core::{Error, Result};

/// L-space surgeries on 2-component L-space links.
#[derive(Parser)]
#[command(name = "lsk", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the H-function on a square window.
    Hfun {
        /// Link file, or a catalog name.
        link: String,
        /// Window bounds, integers or half-integers such as -3/2.
        #[arg(long, num_args = 2, value_names = ["A", "B"], allow_hyphen_values = true)]
        window: Option<Vec<String>>,
        #[arg(long)]
        json: bool,
    },
    /// Print genera, thresholds b, type and maximal points.
    Classify {
        link: String,
        #[arg(long)]
        json: bool,
    },
    /// Decide whether one surgery is an L-space.
    Surgery {
        link: String,
        #[arg(allow_hyphen_values = true)]
        d1: i64,
        #[arg(allow_hyphen_values = true)]
        d2: i64,
        #[command(flatten)]
        mode: ModeArgs,
        #[arg(long)]
        json: bool,
    },
    /// Map verdicts over a box of surgery coefficients.
    Region {
        link: String,
        #[arg(long = "box", num_args = 4, value_names = ["D1MIN", "D1MAX", "D2MIN", "D2MAX"], allow_hyphen_values = true)]
        bounds: Vec<i64>,
        #[command(flatten)]
        mode: ModeArgs,
        /// Also write an SVG picture.
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: bool,
    },
    /// Cable one component and write the new link file.
    Cable {
        link: String,
        p: i64,
        q: i64,
        /// Component to cable, 1 or 2.
        component: u8,
        /// Output file; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// List catalog links, or print one as a link file.
    Catalog { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Direct,
    Theorems,
    Both,
}

#[derive(Args)]
struct ModeArgs {
    #[arg(long, value_enum, conflicts_with_all = ["direct", "theorems", "both"])]
    mode: Option<ModeArg>,
    #[arg(long, conflicts_with_all = ["theorems", "both"])]
    direct: bool,
    #[arg(long, conflicts_with = "both")]
    theorems: bool,
    #[arg(long)]
    both: bool,
}

impl ModeArgs {
    fn resolve(&self) -> SurgeryMode {
        match (self.mode, self.direct, self.theorems) {
            (Some(ModeArg::Direct), ..) | (None, true, _) => SurgeryMode::Direct,
            (Some(ModeArg::Theorems), ..) | (None, _, true) => SurgeryMode::Theorems,
            _ => SurgeryMode::Both,
        }
    }
}

fn write(path: &PathBuf, text: &str) -> Result<()> {
    std::fs::write(path, text)
        .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<String> {
    match cli.command {
        Command::Hfun { link, window, json } => {
            let (lo, hi) = match window.as_deref() {
                Some([a, b]) => (parse_halfint(a)?, parse_halfint(b)?),
                _ => (lsk_core::HalfInt::int(-2), lsk_core::HalfInt::int(2)),
            };
            cmd_hfun(&load(&link)?, lo, hi, json)
        }
        Command::Classify { link, json } => cmd_classify(&load(&link)?, json),
        Command::Surgery {
            link,
            d1,
            d2,
            mode,
            json,
        } => cmd_surgery(&load(&link)?, d1, d2, mode.resolve(), json),
        Command::Region {
            link,
            bounds,
            mode,
            svg,
            json,
        } => {
            let b = Bounds::new(bounds[0], bounds[1], bounds[2], bounds[3])?;
            let out = cmd_region(&load(&link)?, b, mode.resolve(), json)?;
            if let Some(path) = svg {
                write(&path, &out.svg)?;
            }
            Ok(out.text)
        }
        Command::Cable {
            link,
            p,
            q,
            component,
            output,
        } => {
            let out = cmd_cable(&load(&link)?, p, q, component)?;
            let json = out.file.to_json() + "\n";
            match output {
                Some(path) => {
                    write(&path, &json)?;
                    Ok(out.report)
                }
                None => {
                    eprint!("{}", out.report);
                    Ok(json)
                }
            }
        }
        Command::Catalog { name } => cmd_catalog(name.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = std::env::var("LSK_THREADS")
        .ok()
        .and_then(|v| v.parse().ok())
    {
        // Fails only if the pool was already initialised.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global();
    }
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
