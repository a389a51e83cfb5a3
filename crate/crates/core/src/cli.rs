//! Command-line interface.
//!
//! Exit codes: 0 success, 1 a `--check`ed property is false, 2 usage or
//! input error, 3 computation error.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::algebra::EvolutionAlgebra;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::io::{parse_algebra, parse_basis, parse_vector, parse_vectors, AlgebraFile};
use crate::nilpotency::default_max_subset_size;
use crate::oracle::MAX_SEARCH;
use crate::random::{self, Constraints};
use crate::report::{self, Report};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_COMPUTATION: i32 = 3;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "evoalg", version, about = "Exact analysis of evolution algebras over Q and GF(p)")]
pub struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Exit with status 1 when the command's property is false.
    #[arg(long, global = true)]
    pub check: bool,
    /// Worker threads (0 or unset: one per core).
    #[arg(long, global = true, env = "EVOALG_THREADS")]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Summary of the main structural properties.
    Analyze { input: PathBuf },
    /// Whether a vector belongs to some natural basis.
    Natural {
        input: PathBuf,
        /// Comma-separated coordinates.
        #[arg(long, allow_hyphen_values = true)]
        vector: String,
    },
    /// Extend an orthogonal family of natural vectors to a natural basis.
    Extend {
        input: PathBuf,
        /// Vectors separated by `;`, coordinates by `,`.
        #[arg(long, allow_hyphen_values = true)]
        vectors: String,
    },
    /// Annihilator plus rank-one components.
    Decompose {
        input: PathBuf,
        /// Natural basis file, one vector per line.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Annihilator chain, type and power spaces.
    Nilpotency { input: PathBuf },
    /// Search for a vanishing-minor witness `u(vw) = 0`.
    Minors {
        input: PathBuf,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Search for `u ≠ 0` with `u³ = 0` through vanishing principal minors.
    CubeNilpotent {
        input: PathBuf,
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Ideal lattice (perfect) or basic ideals (otherwise).
    Ideals { input: PathBuf },
    /// Simplicity and basic simplicity.
    Simple { input: PathBuf },
    /// The adjoint algebra and the properties it shares with the algebra.
    Adjoint { input: PathBuf },
    /// Persistent and transient generators with the 0th decomposition.
    Classify {
        input: PathBuf,
        /// Natural basis file, one vector per line.
        #[arg(long)]
        basis: Option<PathBuf>,
    },
    /// Iterated 0th decompositions.
    Hierarchy { input: PathBuf },
    /// Seeded random algebra.
    Random {
        #[arg(long)]
        dim: usize,
        /// `q`, `gf5`, `gf 5`, ...
        #[arg(long)]
        field: String,
        #[arg(long)]
        perfect: bool,
        #[arg(long)]
        nondegenerate: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Compare a fast path against its brute-force oracle.
    Oracle {
        /// One of natural-vectors, basic-simple, simple, triples, cube-zero, nil, ideals.
        name: String,
        /// Algebra files.
        inputs: Vec<PathBuf>,
        /// Enumerate every algebra of this field and dimension instead.
        #[arg(long, requires = "dim")]
        field: Option<String>,
        #[arg(long, requires = "field")]
        dim: Option<usize>,
        /// Draw this many seeded random algebras instead of enumerating.
        #[arg(long, requires = "field")]
        sample: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn read(path: &Path) -> Result<String> {
    let io_err = |e: std::io::Error| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(io_err)
    }
}

fn load(path: &Path) -> Result<EvolutionAlgebra> {
    parse_algebra(&read(path)?)
}

/// Every algebra of `field^{n×n}` in residue order.
fn enumerate(field: Field, n: usize) -> Result<Vec<EvolutionAlgebra>> {
    let q = field
        .order()
        .ok_or_else(|| Error::InvalidArgument("exhaustive enumeration needs a finite field".into()))?;
    let total = q
        .checked_pow((n * n) as u32)
        .filter(|&t| t <= MAX_SEARCH)
        .ok_or_else(|| Error::InvalidArgument(format!("{q}^{} algebras is too many; use --sample", n * n)))?;
    (0..total)
        .map(|mut code| {
            let data = (0..n * n)
                .map(|_| {
                    let d = code % q;
                    code /= q;
                    field.from_i64(d as i64)
                })
                .collect();
            EvolutionAlgebra::new(crate::linalg::Matrix::new(field, n, n, data)?)
        })
        .collect()
}

pub fn run(cli: &Cli) -> Result<Report> {
    let max = |a: &EvolutionAlgebra, m: Option<usize>| m.unwrap_or_else(|| default_max_subset_size(a.dim()));
    match &cli.command {
        Command::Analyze { input } => Ok(report::analyze(&load(input)?)),
        Command::Natural { input, vector } => {
            let a = load(input)?;
            report::natural(&a, &parse_vector(a.field(), a.dim(), vector)?)
        }
        Command::Extend { input, vectors } => {
            let a = load(input)?;
            report::extend(&a, &parse_vectors(a.field(), a.dim(), vectors)?)
        }
        Command::Decompose { input, basis } => {
            let a = load(input)?;
            let c = basis.as_deref().map(|p| parse_basis(a.field(), a.dim(), &read(p)?)).transpose()?;
            report::decomposition(&a, c.as_ref())
        }
        Command::Nilpotency { input } => report::nilpotency(&load(input)?),
        Command::Minors { input, max_size } => {
            let a = load(input)?;
            report::minors(&a, max(&a, *max_size))
        }
        Command::CubeNilpotent { input, max_size } => {
            let a = load(input)?;
            report::cube_nilpotent(&a, max(&a, *max_size))
        }
        Command::Ideals { input } => report::ideals(&load(input)?),
        Command::Simple { input } => report::simple(&load(input)?),
        Command::Adjoint { input } => Ok(report::adjoint_report(&load(input)?)),
        Command::Classify { input, basis } => {
            let a = load(input)?;
            let c = basis.as_deref().map(|p| parse_basis(a.field(), a.dim(), &read(p)?)).transpose()?;
            report::classify(&a, c.as_ref())
        }
        Command::Hierarchy { input } => Ok(report::hierarchy_report(&load(input)?)),
        Command::Random {
            dim,
            field,
            perfect,
            nondegenerate,
            seed,
        } => {
            let c = Constraints {
                perfect: *perfect,
                nondegenerate: *nondegenerate,
            };
            let a = random::algebra(&mut random::rng(*seed), field.parse()?, *dim, c)?;
            Ok(report::algebra(&a))
        }
        Command::Oracle {
            name,
            inputs,
            field,
            dim,
            sample,
            seed,
        } => {
            let mut corpus = Vec::new();
            for p in inputs {
                corpus.push((p.display().to_string(), load(p)?));
            }
            if let (Some(f), Some(n)) = (field, dim) {
                let f: Field = f.parse()?;
                let generated = match sample {
                    Some(k) => {
                        let mut rng = random::rng(*seed);
                        (0..*k)
                            .map(|_| random::algebra(&mut rng, f, *n, Constraints::default()))
                            .collect::<Result<Vec<_>>>()?
                    }
                    None => enumerate(f, *n)?,
                };
                corpus.extend(generated.into_iter().enumerate().map(|(k, a)| (format!("#{}", k + 1), a)));
            }
            if corpus.is_empty() {
                return Err(Error::InvalidArgument("no algebras: give files or --field and --dim".into()));
            }
            report::oracle_report(name, &corpus)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse { .. }
        | Error::NonPrimeModulus(_)
        | Error::NonSquareMatrix(_)
        | Error::Io { .. }
        | Error::InvalidArgument(_)
        | Error::ShapeMismatch(_)
        | Error::ZeroVector
        | Error::IndexOutOfRange { .. } => EXIT_USAGE,
        _ => EXIT_COMPUTATION,
    }
}

fn render(cli: &Cli, r: &Report) -> String {
    match (&cli.command, cli.format) {
        (Command::Random { .. }, Format::Text) => {
            AlgebraFile::parse_json(&r.body.to_string()).expect("own output").emit()
        }
        (_, Format::Text) => r.to_text(),
        (_, Format::Json) => r.to_json(),
    }
}

/// Parse `args`, run, write the report and return the exit code.
pub fn main_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    if let Some(n) = cli.threads {
        // a second call in the same process keeps the first pool
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    match run(&cli) {
        Ok(r) => {
            let _ = out.write_all(render(&cli, &r).as_bytes());
            if cli.check && r.holds == Some(false) {
                EXIT_FALSE
            } else {
                EXIT_OK
            }
        }
        Err(e) => {
            match cli.format {
                Format::Json => {
                    let body = json!({ "error": { "code": e.code(), "message": e.to_string() } });
                    let _ = writeln!(out, "{}", serde_json::to_string_pretty(&body).expect("serializes"));
                }
                Format::Text => {
                    let _ = writeln!(err, "error[{}]: {e}", e.code());
                }
            }
            exit_code(&e)
        }
    }
}
