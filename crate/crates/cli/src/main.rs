//! `toroidal`: verify catalog entries of twisted toroidal Lie algebras.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use toroidal_core::catalog::{self, grade_key, CatalogEntry, Report, RunOptions, Status};
use toroidal_core::exactfield::CycNum;
use toroidal_core::{Error, Result};

#[derive(Parser)]
#[command(name = "toroidal", version, about = "Build and verify twisted toroidal Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the built-in recipes and their ranks.
    List,
    /// Run every check on one entry.
    Verify {
        #[command(flatten)]
        sel: Select,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        json: bool,
    },
    /// Run every check on every entry at the given ranks.
    VerifyAll {
        /// Comma-separated ranks; fixed-rank recipes are always included.
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3])]
        ranks: Vec<usize>,
        /// Verify the entries of this file instead of the built-in catalog.
        #[arg(long)]
        file: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
        #[arg(long)]
        json: bool,
    },
    /// Print grade dimensions, the fixed algebra and module structure.
    Decompose {
        #[command(flatten)]
        sel: Select,
        #[arg(long)]
        json: bool,
    },
    /// Print the root support on an exponent box.
    Support {
        #[command(flatten)]
        sel: Select,
        #[arg(long, default_value_t = 2)]
        window: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct Select {
    /// Entry name (`B2^(2,2)`) or recipe (`B^(2,2)` with `--rank`).
    entry: String,
    #[arg(long)]
    rank: Option<usize>,
    /// Look the entry up in a JSON or TOML file.
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct RunArgs {
    /// Half-width of the exponent box for the support comparison.
    #[arg(long, default_value_t = 4)]
    window: i64,
    /// Random samples for closure and for each Jacobi cocycle.
    #[arg(long, default_value_t = 200)]
    samples: usize,
    /// Cocycle `mu,nu`; repeat for several. Defaults to 0,0 1,0 0,1 2,3.
    #[arg(long = "cocycle", value_parser = parse_cocycle)]
    cocycles: Vec<(CycNum, CycNum)>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn parse_cocycle(s: &str) -> std::result::Result<(CycNum, CycNum), String> {
    let (m, n) = s.split_once(',').ok_or("expected mu,nu")?;
    Ok((m.trim().parse().map_err(|e: Error| e.to_string())?, n.trim().parse().map_err(|e: Error| e.to_string())?))
}

impl RunArgs {
    fn options(&self) -> RunOptions {
        let mut o = RunOptions { window: self.window, samples: self.samples, seed: self.seed, ..RunOptions::default() };
        if !self.cocycles.is_empty() {
            o.cocycles = self.cocycles.clone();
        }
        o
    }
}

fn select(sel: &Select) -> Result<CatalogEntry> {
    match &sel.file {
        None => catalog::find_entry(&sel.entry, sel.rank),
        Some(path) => catalog::load_entries(path)?
            .into_iter()
            .find(|e| (e.name == sel.entry || e.recipe == sel.entry) && sel.rank.is_none_or(|r| r == e.rank))
            .ok_or_else(|| Error::UnknownEntry(sel.entry.clone())),
    }
}

fn print_reports(reports: &[Report], json: bool) {
    if json {
        println!("{}", serde_json::to_string_pretty(reports).expect("reports serialize"));
    } else {
        for r in reports {
            print!("{r}");
        }
        if reports.len() > 1 {
            let count = |s| reports.iter().filter(|r| r.verdict() == s).count();
            println!("{} entries: {} pass, {} flagged, {} fail", reports.len(), count(Status::Pass), count(Status::Flagged), count(Status::Fail));
        }
    }
}

fn exit_for(reports: &[Report]) -> ExitCode {
    if reports.iter().any(|r| r.verdict() == Status::Fail) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn decompose(e: &CatalogEntry, json: bool) -> Result<()> {
    let a = catalog::analyze_entry(e)?;
    let types: Vec<String> = a.fixed.classification.types().iter().map(|(k, r)| format!("{k}{r}")).collect();
    let centre = a.fixed.classification.center_dim;
    if json {
        let grades: Vec<_> = a
            .decomposition
            .dims()
            .iter()
            .map(|(g, d)| {
                let modules = a.modules.get(g).map(|m| m.summands.clone()).unwrap_or_default();
                serde_json::json!({ "grade": g, "dim": d, "summands": modules })
            })
            .collect();
        let out = serde_json::json!({ "entry": e.name, "fixed_type": types, "centre": centre, "grades": grades });
        println!("{}", serde_json::to_string_pretty(&out).expect("json"));
        return Ok(());
    }
    println!("{} [{}], base {} of dimension {}", e.name, e.family, a.built.base.algebra().name(), a.built.base.algebra().dim());
    println!("fixed algebra: {} with centre of dimension {centre}", if types.is_empty() { "0".into() } else { types.join(" + ") });
    for (g, d) in a.decomposition.dims() {
        let summands = a.modules.get(&g).map(|m| {
            m.summands.iter().map(|s| format!("{:?}:{}", s.highest_weight, s.dim)).collect::<Vec<_>>().join(" + ")
        });
        println!("  {:<10} {:>5}  {}", grade_key(&g), d, summands.unwrap_or_default());
    }
    Ok(())
}

fn support(e: &CatalogEntry, window: i64, json: bool) -> Result<()> {
    let a = catalog::analyze_entry(e)?;
    let s = catalog::entry_support(&a, window)?;
    let points = s.to_points();
    if json {
        println!("{}", serde_json::to_string_pretty(&points).expect("json"));
        return Ok(());
    }
    println!("{}: {} points, {} isotropic, classes {:?}", e.name, points.len(), s.isotropic.len(), s.classes());
    for p in &points {
        let fin: Vec<String> = p.finite_part.iter().map(ToString::to_string).collect();
        println!("  [{}] class {} at {:?}", fin.join(", "), p.length_class, p.exponents);
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::List => {
            for (recipe, ranks) in catalog::recipes() {
                let ranks: Vec<String> = ranks.iter().map(ToString::to_string).collect();
                println!("{recipe:<18} ranks {}", ranks.join(","));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { sel, run, json } => {
            let reports = vec![catalog::run_entry(&select(&sel)?, &run.options())];
            print_reports(&reports, json);
            Ok(exit_for(&reports))
        }
        Command::VerifyAll { ranks, file, run, json } => {
            let entries = match file {
                Some(p) => catalog::load_entries(&p)?,
                None => catalog::catalog_entries(&ranks)?,
            };
            let reports = catalog::run_all(&entries, &run.options());
            print_reports(&reports, json);
            Ok(exit_for(&reports))
        }
        Command::Decompose { sel, json } => decompose(&select(&sel)?, json).map(|_| ExitCode::SUCCESS),
        Command::Support { sel, window, json } => support(&select(&sel)?, window, json).map(|_| ExitCode::SUCCESS),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
