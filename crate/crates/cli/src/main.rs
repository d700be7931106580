use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use deldec_core::catalog::{catalog, catalog_entries, default_sample, sample_interior};
use deldec_core::delaunay::{certify_cell, delaunay_star};
use deldec_core::exact::parse_rational;
use deldec_core::faces::{enumerate_faces, group_generators, orbit_classify};
use deldec_core::generation::{is_simplicially_generating, is_totally_generating};
use deldec_core::io;
use deldec_core::verify::{fusion_check, reproduce_table, run_suites, Sampling, StarCache};

/// Lattice Delaunay decompositions of forms of rank at most four.
#[derive(Parser)]
#[command(name = "deldec", version)]
struct Cli {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Maximal Delaunay cells through the origin of a form.
    Del {
        #[arg(long)]
        form: PathBuf,
        /// Only one cell per lattice translation class.
        #[arg(long)]
        mod_translation: bool,
    },
    /// Named cones of forms.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// An interior form of a named cone.
    Sample {
        #[arg(long)]
        cone: String,
        /// Comma separated positive rationals, one per generator.
        #[arg(long)]
        weights: Option<String>,
    },
    /// Fusion of the cells of a cone onto one of its faces.
    Fuse {
        #[arg(long)]
        coarse: String,
        #[arg(long)]
        fine: String,
    },
    /// Total or simplicial generation of a cell through the origin.
    Gen {
        #[arg(long)]
        cell: PathBuf,
        #[arg(long)]
        form: PathBuf,
        #[arg(long)]
        pieces: Option<PathBuf>,
    },
    /// Recompute a fusion table and compare it with the published rows.
    Tables {
        #[arg(long, value_parser = ["1", "2"])]
        which: String,
    },
    /// The facets of the perfect cone with their orbits and types.
    Faces,
    /// Run verification suites.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
    },
}

#[derive(Subcommand)]
enum CatalogAction {
    /// Names of all cones.
    List,
    /// Generators of one cone.
    Show { name: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    All,
    Dim2,
    Dim3,
    Dim4,
    Tables,
    Faces,
    Theorem,
}

impl Suite {
    fn name(self) -> &'static str {
        match self {
            Suite::All => "all",
            Suite::Dim2 => "dim2",
            Suite::Dim3 => "dim3",
            Suite::Dim4 => "dim4",
            Suite::Tables => "tables",
            Suite::Faces => "faces",
            Suite::Theorem => "theorem",
        }
    }
}

/// A failure that maps to an exit code.
enum Failure {
    Input(String),
    Internal(String),
}

impl From<deldec_core::Error> for Failure {
    fn from(e: deldec_core::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load<T>(path: &Path, parse: impl Fn(&str) -> deldec_core::Result<T>) -> Result<T, Failure> {
    let text = read(path)?;
    parse(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn input<T>(r: deldec_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::Input(e.to_string()))
}

/// Output text and whether the run counts as passing.
fn run(cli: &Cli) -> Result<(String, bool), Failure> {
    match &cli.command {
        Command::Del { form, mod_translation } => {
            let form = load(form, io::form_from_json)?;
            let star = input(delaunay_star(&form))?;
            Ok((io::star_to_json(&star, *mod_translation), true))
        }
        Command::Catalog { action } => match action {
            CatalogAction::List => {
                let mut out = String::new();
                for c in catalog_entries() {
                    out.push_str(&c.name);
                    out.push('\n');
                }
                Ok((out, true))
            }
            CatalogAction::Show { name } => Ok((io::cone_to_json(&input(catalog(name))?), true)),
        },
        Command::Sample { cone, weights } => {
            let cone = input(catalog(cone))?;
            let form = match weights {
                None => default_sample(&cone),
                Some(w) => {
                    let ws = w
                        .split(',')
                        .map(parse_rational)
                        .collect::<deldec_core::Result<Vec<_>>>();
                    input(sample_interior(&cone, &input(ws)?))?
                }
            };
            Ok((io::form_to_json(&form), true))
        }
        Command::Fuse { coarse, fine } => {
            let cache = StarCache::new(Sampling::Ones);
            let report = match fusion_check(coarse, fine, &cache) {
                Err(e @ (deldec_core::Error::UnknownCone(_) | deldec_core::Error::Fusion(_))) => {
                    return Err(Failure::Input(e.to_string()))
                }
                r => r?,
            };
            Ok((io::fusion_to_json(&report), report.passed()))
        }
        Command::Gen { cell, form, pieces } => {
            let form = load(form, io::form_from_json)?;
            let cell = load(cell, io::cell_from_json)?;
            if cell.rank() != form.rank() {
                return Err(Failure::Input(format!(
                    "cell has rank {} but the form has rank {}",
                    cell.rank(),
                    form.rank()
                )));
            }
            let cert = certify_cell(&form, &cell);
            if !cert.passed() {
                let why: Vec<String> = cert.violations.iter().map(ToString::to_string).collect();
                return Err(Failure::Input(format!("not a Delaunay cell of the form: {}", why.join("; "))));
            }
            let report = match pieces {
                None => input(is_totally_generating(&cell))?,
                Some(p) => {
                    let pieces = load(p, io::cells_from_json)?;
                    input(is_simplicially_generating(&cell, &pieces))?
                }
            };
            Ok((io::generation_to_json(&report), true))
        }
        Command::Tables { which } => {
            let which: u8 = which.parse().expect("checked by the parser");
            let diff = reproduce_table(which, &StarCache::new(Sampling::Ones))?;
            Ok((io::report_to_json(&diff), diff.passed()))
        }
        Command::Faces => {
            let faces = enumerate_faces();
            let orbits = orbit_classify(&faces, &group_generators())?;
            Ok((io::faces_to_json(&io::face_records(&faces, &orbits)), true))
        }
        Command::Verify { suite } => {
            let reports = run_suites(&[suite.name()], &StarCache::new(Sampling::Ones))?;
            let pass = reports.iter().all(|r| r.pass);
            Ok((io::report_to_json(&reports), pass))
        }
    }
}

fn emit(path: Option<&Path>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, pass)) => {
            if let Err(e) = emit(cli.output.as_deref(), &text) {
                eprintln!("error: cannot write output: {e}");
                return ExitCode::from(2);
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
