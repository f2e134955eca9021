//! Command-line front end.

mod render;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use zariski_core::alexander::{alexander_poly, alexander_poly_numeric};
use zariski_core::config::CurveConfiguration;
use zariski_core::cover::{
    alex_table, alex_table_numeric, cov_table, distinguish, knt_distinguish, partitions_of, KntData, TagLattice,
};
use zariski_core::data::{self, DataError, SurfaceData};
use zariski_core::elliptic::{classify_fibers, enumerate_roots, gram_matrix, is_narrow};
use zariski_core::geometry::{resolve, verify_configuration};

#[derive(Parser)]
#[command(name = "zariski", version, about = "Invariants of conic-quartic configurations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for the random projections used in intersection computations.
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Invariant {
    Cov,
    Alex,
}

#[derive(Subcommand)]
enum Command {
    /// Singular fibers of an elliptic surface.
    Fibers {
        #[arg(default_value = "paper_surface.json")]
        surface: String,
    },
    /// Height pairing matrices of the basis and of the narrow generators.
    Gram {
        #[arg(default_value = "paper_surface.json")]
        surface: String,
    },
    /// Narrow lattice membership of the basis and the narrow generators.
    Narrow {
        #[arg(default_value = "paper_surface.json")]
        surface: String,
    },
    /// Roots (norm 2 vectors) of the narrow lattice.
    Roots {
        #[arg(default_value = "paper_surface.json")]
        surface: String,
    },
    /// Alexander polynomial of a configuration.
    Alex {
        config: String,
        /// Use certified numeric ranks with this many bits.
        #[arg(long)]
        bits: Option<u32>,
    },
    /// Dihedral cover existence table.
    CovTable {
        #[arg(required = true)]
        configs: Vec<String>,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Alexander polynomials of all sub-configurations.
    AlexTable {
        #[arg(required = true)]
        configs: Vec<String>,
        #[arg(long)]
        bits: Option<u32>,
    },
    /// Search for a component bijection identifying the tables of two configurations.
    Distinguish {
        first: String,
        second: String,
        #[arg(long, value_enum, default_value_t = Invariant::Cov)]
        invariant: Invariant,
        #[arg(long, default_value_t = 3)]
        p: u64,
    },
    /// Check the geometric hypotheses of a configuration.
    Verify { config: String },
    /// Pairwise verdicts for the configurations built from three conic families.
    Knt {
        #[arg(long)]
        k: usize,
        /// Partitions such as `3,1,1`; all partitions of k when omitted.
        #[arg(long, value_delimiter = ';')]
        partitions: Vec<String>,
        #[arg(long, default_value_t = 3)]
        p: u64,
        #[arg(long, default_value = "knt.json")]
        data: String,
    },
}

enum Failure {
    Parse(String),
    Math(String),
}

impl From<DataError> for Failure {
    fn from(e: DataError) -> Self {
        Failure::Parse(e.to_string())
    }
}

fn math<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Math(e.to_string())
}

fn load_surface(name: &str) -> Result<SurfaceData, Failure> {
    Ok(SurfaceData::load(&data::resolve(name))?)
}

fn load_config(name: &str) -> Result<(CurveConfiguration, PathBuf), Failure> {
    let path = data::resolve(name);
    let c = CurveConfiguration::load(&path)?;
    Ok((c, path))
}

fn lattice_for(c: &CurveConfiguration, path: &Path) -> Result<TagLattice, Failure> {
    let name = c
        .lattice
        .as_deref()
        .ok_or_else(|| Failure::Math(format!("configuration {} names no lattice", c.name)))?;
    let local = path.parent().unwrap_or(Path::new(".")).join(name);
    let file = if local.exists() { local } else { data::resolve(name) };
    Ok(TagLattice::load(&file)?)
}

fn parse_partition(s: &str) -> Result<[usize; 3], Failure> {
    let v: Vec<usize> = s
        .split(',')
        .map(|x| x.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Parse(format!("cannot parse partition {s:?}")))?;
    v.try_into().map_err(|_| Failure::Parse(format!("partition {s:?} needs three parts")))
}

/// Runs a command, returning its JSON value and text rendering.
fn run(cli: &Cli) -> Result<(Value, String), Failure> {
    let seed = cli.seed;
    Ok(match &cli.command {
        Command::Fibers { surface } => {
            let s = load_surface(surface)?;
            let fibers = classify_fibers(&s.model).map_err(math)?;
            (json!(fibers), render::fibers(&fibers))
        }
        Command::Gram { surface } => {
            let s = load_surface(surface)?;
            let basis = gram_matrix(&s.model, &s.basis_sections()).map_err(math)?;
            let narrow = gram_matrix(&s.model, &s.narrow_sections().map_err(math)?).map_err(math)?;
            let bn: Vec<String> = s.basis.iter().map(|b| b.name.clone()).collect();
            let nn: Vec<String> = s.narrow.iter().map(|b| b.name.clone()).collect();
            let text = format!("{}\n{}", render::matrix(&bn, &basis), render::matrix(&nn, &narrow));
            (json!({"basis": {"names": bn, "gram": basis}, "narrow": {"names": nn, "gram": narrow}}), text)
        }
        Command::Narrow { surface } => {
            let s = load_surface(surface)?;
            let sections = s.basis.iter().map(|b| (b.name.clone(), b.section.clone()));
            let narrow = s.narrow.iter().map(|c| c.name.clone()).zip(s.narrow_sections().map_err(math)?);
            let mut rows = Vec::new();
            for (name, sec) in sections.chain(narrow) {
                rows.push((name, is_narrow(&s.model, &sec).map_err(math)?));
            }
            let text = rows.iter().map(|(n, b)| format!("{n}\t{b}\n")).collect();
            let value = rows.iter().map(|(n, b)| json!({"name": n, "narrow": b})).collect();
            (Value::Array(value), text)
        }
        Command::Roots { surface } => {
            let s = load_surface(surface)?;
            let gram = gram_matrix(&s.model, &s.narrow_sections().map_err(math)?).map_err(math)?;
            let roots = enumerate_roots(&gram).map_err(math)?;
            let mut text = format!("{} roots\n", roots.len());
            for r in &roots {
                text += &format!("{r:?}\n");
            }
            (json!({"count": roots.len(), "roots": roots}), text)
        }
        Command::Alex { config, bits } => {
            let (c, _) = load_config(config)?;
            let c = resolve(&c, seed).map_err(math)?;
            match bits {
                None => {
                    let a = alexander_poly(&c).map_err(math)?;
                    (json!(a), format!("{}\n", a))
                }
                Some(b) => {
                    let (a, certified) = alexander_poly_numeric(&c, *b).map_err(math)?;
                    (json!({"alexander": a, "certified": certified}), format!("{a}\ncertified: {certified}\n"))
                }
            }
        }
        Command::CovTable { configs, p } => {
            let mut tables = Vec::new();
            for name in configs {
                let (c, path) = load_config(name)?;
                let lattice = lattice_for(&c, &path)?;
                tables.push((c.name.clone(), cov_table(&c, &lattice, *p).map_err(math)?));
            }
            let value = tables.iter().map(|(n, t)| json!({"name": n, "table": t})).collect();
            (Value::Array(value), render::cov_tables(&tables, *p))
        }
        Command::AlexTable { configs, bits } => {
            let mut tables = Vec::new();
            let mut certified = true;
            for name in configs {
                let (c, _) = load_config(name)?;
                let c = resolve(&c, seed).map_err(math)?;
                let t = match bits {
                    None => alex_table(&c).map_err(math)?,
                    Some(b) => {
                        let (t, ok) = alex_table_numeric(&c, *b).map_err(math)?;
                        certified &= ok;
                        t
                    }
                };
                tables.push((c.name.clone(), t));
            }
            let mut value = json!(tables.iter().map(|(n, t)| json!({"name": n, "table": t})).collect::<Vec<_>>());
            let mut text = render::alex_tables(&tables);
            if bits.is_some() {
                value = json!({"tables": value, "certified": certified});
                text += &format!("certified: {certified}\n");
            }
            (value, text)
        }
        Command::Distinguish { first, second, invariant, p } => {
            let (a, pa) = load_config(first)?;
            let (b, pb) = load_config(second)?;
            let verdict = match invariant {
                Invariant::Cov => {
                    let ta = cov_table(&a, &lattice_for(&a, &pa)?, *p).map_err(math)?;
                    let tb = cov_table(&b, &lattice_for(&b, &pb)?, *p).map_err(math)?;
                    distinguish(&ta, &tb).map_err(math)?
                }
                Invariant::Alex => {
                    let ta = alex_table(&resolve(&a, seed).map_err(math)?).map_err(math)?;
                    let tb = alex_table(&resolve(&b, seed).map_err(math)?).map_err(math)?;
                    distinguish(&ta, &tb).map_err(math)?
                }
            };
            let text = render::verdict(&verdict);
            (json!(verdict), text)
        }
        Command::Verify { config } => {
            let (c, _) = load_config(config)?;
            let report = verify_configuration(&c, seed).map_err(math)?;
            let text = render::report(&report);
            if !report.passed() {
                print_output(cli.format, &json!(report), &text);
                return Err(Failure::Math("verification failed".into()));
            }
            (json!(report), text)
        }
        Command::Knt { k, partitions, p, data: file } => {
            let knt = KntData::load(&data::resolve(file))?;
            let parts = if partitions.is_empty() {
                partitions_of(*k)
            } else {
                partitions.iter().map(|s| parse_partition(s)).collect::<Result<_, _>>()?
            };
            let verdicts = knt_distinguish(*k, &parts, &knt, *p).map_err(math)?;
            let value = json!({
                "k": k,
                "partitions": parts,
                "verdicts": verdicts.iter().map(|row| row.iter().map(|v| v.verdict).collect::<Vec<_>>()).collect::<Vec<_>>(),
            });
            (value, render::knt(&parts, &verdicts))
        }
    })
}

/// Writes the result; a closed pipe (as with `| head`) is not an error.
fn print_output(format: Format, value: &Value, text: &str) {
    let out = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("serializable") + "\n",
        Format::Text => text.to_string(),
    };
    let _ = std::io::stdout().lock().write_all(out.as_bytes());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((value, text)) => {
            print_output(cli.format, &value, &text);
            ExitCode::SUCCESS
        }
        Err(Failure::Parse(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Math(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
