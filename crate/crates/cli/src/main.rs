use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ftv_core::ahp::derive_weights;
use ftv_core::pipeline::{self, read_pairwise, RunConfig, RunSummary, RESULTS_CSV};
use ftv_core::{Error, ErrorClass, RangePolicy};
use serde_json::json;

/// Fuzzy experiential tourism valuation and walking-tour planning.
#[derive(Parser)]
#[command(name = "ftv", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Options,
}

#[derive(Args)]
struct Options {
    /// Run configuration (TOML).
    #[arg(long, global = true, value_name = "PATH")]
    config: Option<PathBuf>,
    /// Output directory, overriding `[output] dir`.
    #[arg(long, global = true, value_name = "DIR")]
    out: Option<PathBuf>,
    /// Clamp out-of-range scores into their source range instead of failing.
    #[arg(long, global = true)]
    clamp: bool,
    /// Accept pairwise weights whose consistency ratio exceeds 0.1.
    #[arg(long, global = true)]
    allow_inconsistent: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Check configuration and input files without writing anything.
    Validate,
    /// Derive factor weights from a pairwise comparison matrix.
    Weights {
        /// Square CSV matrix with a header row of factor ids.
        matrix: PathBuf,
    },
    /// Valuation only: results.csv and results.json.
    Ftv,
    /// Full pipeline: valuation, hot spots, tour and map.
    Run,
    /// Spatial stage only, from the results of an earlier run.
    Tour {
        /// Prior results file; defaults to results.csv in the output directory.
        #[arg(long, value_name = "PATH")]
        results: Option<PathBuf>,
    },
}

fn load_config(opts: &Options) -> Result<RunConfig, Error> {
    let path = opts
        .config
        .as_deref()
        .ok_or_else(|| Error::Config("--config is required for this command".into()))?;
    let mut cfg = RunConfig::load(path)?;
    if let Some(out) = &opts.out {
        // Relative to the working directory, not the config file.
        cfg.output.dir = std::path::absolute(out).map_err(|e| Error::Io { path: out.clone(), source: e })?;
    }
    if opts.clamp {
        cfg.valuation.out_of_range = RangePolicy::Clamp;
    }
    cfg.allow_inconsistent |= opts.allow_inconsistent;
    cfg.validate()?;
    Ok(cfg)
}

fn print_summary(summary: &RunSummary) {
    let v = &summary.valuation;
    println!("valuated {} attractions, {} retained", v.ranked.len(), v.retained.len());
    for (i, r) in v.ranked.iter().enumerate() {
        let tier = r.tier.map_or("-", |t| t.as_str());
        println!("{:>4}  {:<24} {:>10.4}  {}", i + 1, r.attraction_id, r.crisp, tier);
    }
    if let Some(tour) = summary.spatial.as_ref().and_then(|s| s.tour.as_ref()) {
        print_tour(tour);
    }
    for p in &summary.written {
        println!("wrote {}", p.display());
    }
}

fn print_tour(tour: &ftv_core::spatial::Tour) {
    print!("tour {} ({:.3} km", tour.labels().join(" -> "), tour.length_km);
    if let Some(d) = &tour.duration_hours {
        print!(", {:.2}-{:.2} h", d.min, d.max);
    }
    println!(")");
}

fn weights(matrix: &Path, allow_inconsistent: bool) -> Result<(), Error> {
    let (ids, m) = read_pairwise(matrix)?;
    let report = derive_weights(&m)?;
    let doc = json!({
        "factors": ids,
        "report": report,
    });
    println!("{}", serde_json::to_string_pretty(&doc).expect("report serialises"));
    if report.inconsistent && !allow_inconsistent {
        return Err(Error::Config(format!(
            "consistency ratio {:.4} exceeds 0.1; pass --allow-inconsistent to accept these weights",
            report.consistency_ratio
        )));
    }
    Ok(())
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Weights { matrix } => weights(&matrix, cli.opts.allow_inconsistent),
        Command::Validate => {
            let cfg = load_config(&cli.opts)?;
            let data = pipeline::ingest(&cfg)?;
            println!(
                "ok: {} factors, {} attractions, {} expert rows, weight sum {:.4}",
                data.catalogue.len(),
                data.evaluations.len(),
                data.raw_rows,
                data.catalogue.weight_sum()
            );
            Ok(())
        }
        Command::Ftv => {
            let cfg = load_config(&cli.opts)?;
            print_summary(&pipeline::run_valuation(&cfg)?);
            Ok(())
        }
        Command::Run => {
            let cfg = load_config(&cli.opts)?;
            print_summary(&pipeline::run_pipeline(&cfg)?);
            Ok(())
        }
        Command::Tour { results } => {
            let cfg = load_config(&cli.opts)?;
            let results = results.unwrap_or_else(|| cfg.output_dir().join(RESULTS_CSV));
            let (spatial, path) = pipeline::run_tour(&cfg, &results)?;
            println!("{} hot spots", spatial.hotspots.len());
            if let Some(t) = &spatial.tour {
                print_tour(t);
            }
            println!("wrote {}", path.display());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Input => 2,
                ErrorClass::Config => 3,
                ErrorClass::Numeric => 4,
            })
        }
    }
}
