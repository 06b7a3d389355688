use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use ribbonforge::cli_io::{
    cmd_analyze, cmd_construct, cmd_enumerate, cmd_optimize, cmd_svg, parse_document_with, serialize_document,
    AnalyzeOptions, CliError,
};
use ribbonforge::constructions::{ConstructionKind, ConstructionSpec, Sign};
use ribbonforge::tolerances::EPS_GEOM;

#[derive(Parser)]
#[command(name = "ribbonforge", version, about = "Folded ribbon knots over polygonal diagrams")]
struct Cli {
    /// Geometric tolerance for collinearity, intersection and angle tests.
    #[arg(long, global = true, default_value_t = EPS_GEOM)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Report Rib, Lk, Tw, Wr and fold signs of a diagram document.
    Analyze {
        /// Input document, `-` for stdin.
        input: PathBuf,
        #[arg(long)]
        json: bool,
        /// Check Lk = Tw + Wr and compare with the boundary-crossing count.
        #[arg(long)]
        check_identity: bool,
        /// Ribbon width; defaults to the document's, else the largest feasible.
        #[arg(long)]
        width: Option<f64>,
    },
    /// Emit a constructed diagram as a document.
    Construct {
        #[arg(value_enum)]
        kind: Kind,
        #[arg(long, allow_negative_numbers = true)]
        n: Option<i64>,
        /// Use the negative-sign variant.
        #[arg(long)]
        negative: bool,
        #[arg(long, default_value_t = 1.0)]
        width: f64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Linking number for regular-ngon and connected-sum.
        #[arg(long, allow_negative_numbers = true)]
        lk: Option<i64>,
        /// Splice vertex for connected-sum.
        #[arg(long)]
        vertex: Option<usize>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Minimize the sum of tan(alpha_i/2) subject to sum alpha_i = (n-2) pi.
    Optimize {
        n: usize,
        #[arg(long, default_value_t = 32)]
        seeds: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate linking numbers over all foldings of the regular n-gon.
    Enumerate {
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Render a diagram document as SVG.
    Svg {
        input: PathBuf,
        #[arg(long)]
        width: Option<f64>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    TwoStick,
    RegularNgon,
    FourStick,
    Annulus,
    Pentagram,
    ConnectedSum,
}

impl From<Kind> for ConstructionKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::TwoStick => ConstructionKind::TwoStick,
            Kind::RegularNgon => ConstructionKind::RegularNGon,
            Kind::FourStick => ConstructionKind::FourStickLk1,
            Kind::Annulus => ConstructionKind::AnnulusLkN,
            Kind::Pentagram => ConstructionKind::PentagramTrefoil,
            Kind::ConnectedSum => ConstructionKind::ConnectedSum,
        }
    }
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool, CliError> {
    let eps = cli.tolerance;
    match cli.command {
        Command::Analyze { input, json, check_identity, width } => {
            let doc = parse_document_with(&read_input(&input)?, eps)?;
            let out = cmd_analyze(&doc, AnalyzeOptions { json, check_identity, width, tolerance: eps })?;
            write_output(None, &out.text)?;
            Ok(out.ok)
        }
        Command::Construct { kind, n, negative, width, scale, lk, vertex, output } => {
            let mut spec = ConstructionSpec::new(kind.into());
            spec.n = n;
            spec.sign = if negative { Sign::Minus } else { Sign::Plus };
            spec.width = width;
            spec.scale = scale;
            spec.lk_target = lk;
            spec.vertex = vertex;
            let (doc, summary) = cmd_construct(&spec)?;
            let text = serialize_document(&doc)?;
            match output {
                Some(p) => {
                    fs::write(&p, text)?;
                    eprint!("{}", summary.text);
                }
                None => write_output(None, &text)?,
            }
            Ok(summary.ok)
        }
        Command::Optimize { n, seeds, seed, json } => {
            let out = cmd_optimize(n, seeds, seed, json)?;
            write_output(None, &out.text)?;
            Ok(out.ok)
        }
        Command::Enumerate { n, json } => {
            let out = cmd_enumerate(n, json, eps)?;
            write_output(None, &out.text)?;
            Ok(out.ok)
        }
        Command::Svg { input, width, output } => {
            let doc = parse_document_with(&read_input(&input)?, eps)?;
            write_output(output.as_ref(), &cmd_svg(&doc, width, eps)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
