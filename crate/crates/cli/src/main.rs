//! `dcp`: homology of real wonderful models from the command line.

mod cache;
mod output;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use dcp_core::dcphom::{graded_homology_with, integral_synthesis_with, mod2_betti_with};
use dcp_core::poset::{gm_complement_homology, whitney_homology, PosetView};
use dcp_core::{parse_arrangement, Arrangement, BuildingSet, Error, Result, DEFAULT_LATTICE_GUARD};
use serde::Serialize;

use cache::{arrangement_key, Cache};
use output::{
    count_row, group_row, group_total, ElementList, ElementRow, Table, Total, VerifyReport,
};

#[derive(Parser)]
#[command(
    name = "dcp",
    version,
    about = "Integral homology of real wonderful models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Refuse lattices with more elements than this.
    #[arg(long, default_value_t = DEFAULT_LATTICE_GUARD, global = true)]
    max_lattice: usize,
    /// Directory for cached lattice and forest enumerations.
    #[arg(long, env = "DCP_CACHE_DIR", global = true)]
    cache: Option<PathBuf>,
    /// Seed for every sampled check.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Chain,
    Operad,
    Kunneth,
    Bockstein,
}

#[derive(Subcommand)]
enum Command {
    /// Building-set closure of the arrangement.
    Closure { file: PathBuf },
    /// Intersection lattice with component decompositions.
    Lattice { file: PathBuf },
    /// Interval homology of the poset of m-divisible elements.
    Poset {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Graded 2H table.
    Homology { file: PathBuf },
    /// Mod-2 Betti numbers by grade.
    Mod2 { file: PathBuf },
    /// Full integral homology.
    Full { file: PathBuf },
    /// Homology of the complement of the arrangement.
    Gm { file: PathBuf },
    /// Run self-checks.
    Verify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

impl Command {
    fn file(&self) -> &PathBuf {
        match self {
            Command::Closure { file }
            | Command::Lattice { file }
            | Command::Poset { file, .. }
            | Command::Homology { file }
            | Command::Mod2 { file }
            | Command::Full { file }
            | Command::Gm { file }
            | Command::Verify { file, .. } => file,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Input(_) => 2,
        Error::Resource(_) => 3,
        Error::Structural(_) | Error::Consistency(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok((text, ok)) => {
            print!("{text}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(4)
            }
        }
        Err(e) => {
            eprintln!("dcp: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn render<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Text => text(value),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(value).expect("output documents serialize");
            s.push('\n');
            s
        }
    }
}

/// Output text and whether every check passed.
fn run(cli: &Cli) -> Result<(String, bool)> {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .map_err(|e| Error::Input(format!("cannot start {jobs} workers: {e}")))?;
    }
    let path = cli.command.file();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let arrangement = parse_arrangement(&text)?;
    let key = arrangement_key(&arrangement);
    let mut cache = Cache::open(cli.cache.as_deref(), &arrangement)?;
    let bs = cache.building_set(&arrangement, cli.max_lattice)?;
    let f = cli.format;

    let out = match &cli.command {
        Command::Closure { .. } => {
            let list = ElementList {
                arrangement_key: key,
                elements: bs.elements().iter().map(|s| element_row(s, None)).collect(),
            };
            render(f, &list, |l| l.to_text("building set"))
        }
        Command::Lattice { .. } => {
            let lat = bs.lattice();
            let elements = (0..lat.len())
                .map(|i| {
                    let parts = bs
                        .components_of(i)
                        .iter()
                        .map(|&g| bs.element(g).key().to_string())
                        .collect();
                    element_row(lat.element(i), Some(parts))
                })
                .collect();
            let list = ElementList {
                arrangement_key: key,
                elements,
            };
            render(f, &list, |l| l.to_text("lattice"))
        }
        Command::Poset { m, .. } => {
            let view = PosetView::new(&bs, *m)?;
            let homology = whitney_homology(&bs, *m)?;
            let lat = bs.lattice();
            let graded = view
                .members()
                .into_iter()
                .map(|a| group_row(lat.element(a), &homology[&a]))
                .collect();
            let len = homology.values().map(Vec::len).max().unwrap_or(0);
            let mut total = vec![dcp_core::HomologyGroup::zero(); len];
            for groups in homology.values() {
                for (k, g) in groups.iter().enumerate() {
                    total[k] = total[k].plus(g);
                }
            }
            let table = Table {
                arrangement_key: key,
                m: Some(*m),
                graded,
                total: group_total(&total),
            };
            render(f, &table, |t| t.to_text("interval homology"))
        }
        Command::Homology { .. } => {
            let t = graded_homology_with(&cache.forest_index(&bs, 2)?)?;
            let table = Table {
                arrangement_key: key,
                m: None,
                graded: t
                    .entries
                    .iter()
                    .map(|e| group_row(&e.subspace, &e.groups))
                    .collect(),
                total: group_total(&t.total),
            };
            render(f, &table, |t| t.to_text("2H"))
        }
        Command::Mod2 { .. } => {
            let t = mod2_betti_with(&cache.forest_index(&bs, 1)?)?;
            let table = Table {
                arrangement_key: key,
                m: None,
                graded: t
                    .entries
                    .iter()
                    .map(|e| count_row(&e.subspace, &e.dims))
                    .collect(),
                total: Total::Counts(t.total.clone()),
            };
            render(f, &table, |t| t.to_text("mod-2 Betti numbers"))
        }
        Command::Full { .. } => {
            let full = cache.forest_index(&bs, 1)?;
            let even = cache.forest_index(&bs, 2)?;
            let h = integral_synthesis_with(&full, &even)?;
            let table = Table {
                arrangement_key: key,
                m: None,
                graded: h
                    .integral
                    .entries
                    .iter()
                    .map(|e| group_row(&e.subspace, &e.groups))
                    .collect(),
                total: group_total(&h.integral.total),
            };
            render(f, &table, |t| t.to_text("integral homology"))
        }
        Command::Gm { .. } => {
            let total = gm_complement_homology(&bs)?;
            let table = Table {
                arrangement_key: key,
                m: None,
                graded: Vec::new(),
                total: group_total(&total),
            };
            render(f, &table, |t| t.to_text("complement homology"))
        }
        Command::Verify { suite, .. } => {
            let report = verify_all(cli, &arrangement, &bs, &mut cache, key, *suite)?;
            let ok = report.passed();
            return Ok((render(f, &report, VerifyReport::to_text), ok));
        }
    };
    Ok((out, true))
}

fn element_row(s: &dcp_core::Subspace, components: Option<Vec<String>>) -> ElementRow {
    ElementRow {
        subspace: s.key().to_string(),
        dim: s.dim(),
        components,
    }
}

fn verify_all(
    cli: &Cli,
    arrangement: &Arrangement,
    bs: &BuildingSet,
    cache: &mut Cache,
    key: String,
    suite: Suite,
) -> Result<VerifyReport> {
    let names: Vec<&str> = match suite {
        Suite::All => verify::SUITES.to_vec(),
        Suite::Chain => vec!["chain"],
        Suite::Operad => vec!["operad"],
        Suite::Kunneth => vec!["kunneth"],
        Suite::Bockstein => vec!["bockstein"],
    };
    let full = cache.forest_index(bs, 1)?;
    let even = cache.forest_index(bs, 2)?;
    let ctx = verify::Context {
        arrangement,
        bs,
        full: &full,
        even: &even,
        guard: cli.max_lattice,
        seed: cli.seed,
    };
    let suites = names
        .into_iter()
        .map(|n| verify::run(n, &ctx))
        .collect::<Result<_>>()?;
    Ok(VerifyReport {
        arrangement_key: key,
        suites,
    })
}
