use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use cospec::census::{check_pair, CensusReport, CensusSource};
use cospec::similarity::{cubic_control_bases, gm_corpus};
use cospec::{run_census, run_census_cached, CensusError, CensusOptions, GenSpec, ReportCache};

#[derive(Parser)]
#[command(
    name = "cospec",
    version,
    about = "Census of cospectral regular graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate or read regular graphs, group them by spectrum and annotate
    /// cospectral mates.
    Census(CensusArgs),
    /// Check an order-16 cubic census report for the pair with different
    /// chromatic indexes.
    VerifyPair {
        /// Report written by `census --format json`.
        #[arg(long)]
        report: PathBuf,
    },
    /// Build switched cospectral pairs and check that none is reported as
    /// having no rational similarity.
    GmCorpus {
        /// Smallest cubic base order.
        #[arg(long, default_value_t = 8)]
        min_order: usize,
        /// Largest cubic base order.
        #[arg(long, default_value_t = 14)]
        max_order: usize,
        /// Minimum number of non-isomorphic pairs required.
        #[arg(long, default_value_t = 100)]
        min_pairs: usize,
        #[arg(long, default_value_t = 0)]
        jobs: usize,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct CensusArgs {
    #[arg(long, short = 'n')]
    order: usize,
    #[arg(long, short = 'k', default_value_t = 3)]
    degree: usize,
    /// Only connected graphs (default).
    #[arg(long, conflicts_with = "all")]
    connected_only: bool,
    /// Include disconnected graphs.
    #[arg(long)]
    all: bool,
    /// Read graphs from a graph6 file instead of generating them.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Worker threads (0 = one per core).
    #[arg(long, short = 'j', default_value_t = 0)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Reuse and store reports in this directory.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Annotate every graph, not only cospectral mates.
    #[arg(long)]
    full_annotation: bool,
    /// Include wall-clock runtime in the JSON report.
    #[arg(long)]
    timing: bool,
    /// Write the report here instead of stdout.
    #[arg(long, short = 'o')]
    output: Option<PathBuf>,
}

/// Any error that ends the run with exit code 2.
#[derive(Debug)]
struct InputError(anyhow::Error);

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {:#}", e.0);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, InputError> {
    match cli.command {
        Command::Census(args) => census(args).map(|()| true),
        Command::VerifyPair { report } => verify_pair(&report),
        Command::GmCorpus {
            min_order,
            max_order,
            min_pairs,
            jobs,
        } => gm(min_order, max_order, min_pairs, jobs),
    }
}

fn census(args: CensusArgs) -> Result<(), InputError> {
    let spec = GenSpec {
        n: args.order,
        k: args.degree,
        connected_only: !args.all,
    };
    let source = match args.input {
        Some(p) => CensusSource::Graph6File(p),
        None => CensusSource::Generate,
    };
    let options = CensusOptions {
        full_annotation: args.full_annotation,
        jobs: args.jobs,
    };
    let report = match &args.cache_dir {
        Some(dir) => {
            let cache = ReportCache::open(dir)
                .with_context(|| format!("opening cache {}", dir.display()))
                .map_err(InputError)?;
            run_census_cached(spec, &source, &options, &cache)
        }
        None => run_census(spec, &source, &options),
    }
    .map_err(census_error)?;
    log::info!(
        "{} graphs, {} classes, {} pairs, {} triples",
        report.total_graphs,
        report.class_count,
        report.pair_count,
        report.triple_count
    );
    let text = match args.format {
        Format::Json => report.to_json(args.timing),
        Format::Csv => report.to_csv(),
    };
    emit(args.output.as_deref(), &text)
}

fn census_error(e: CensusError) -> InputError {
    InputError(anyhow::Error::new(e))
}

fn emit(path: Option<&std::path::Path>, text: &str) -> Result<(), InputError> {
    match path {
        Some(p) => std::fs::write(p, text)
            .with_context(|| format!("writing {}", p.display()))
            .map_err(InputError),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn verify_pair(path: &std::path::Path) -> Result<bool, InputError> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading {}", path.display()))
        .map_err(InputError)?;
    let report = CensusReport::from_json(&text)
        .with_context(|| format!("parsing {}", path.display()))
        .map_err(InputError)?;
    let check = check_pair(&report).map_err(|e| InputError(e.into()))?;
    let line = |ok: bool, what: &str| println!("{} {what}", if ok { "ok  " } else { "FAIL" });
    line(
        check.unique_differing_pair,
        "unique pair with chromatic indexes 3 and 4",
    );
    line(
        check.charpoly_matches,
        "characteristic polynomial matches the product form",
    );
    line(
        check.class2_member_is_petersen_construction,
        "index-4 member is Petersen with a 3-path replaced by triangles",
    );
    line(
        check.class1_member_hamiltonian,
        "index-3 member is Hamiltonian",
    );
    line(
        check.class2_member_not_hamiltonian,
        "index-4 member is not Hamiltonian",
    );
    let norms = check
        .kernel_normsq
        .as_ref()
        .map(|(a, b)| format!(" ({a}, {b})"))
        .unwrap_or_default();
    line(
        check.kernel_normsq_match,
        &format!("kernel norms at 0 are 8 and 24{norms}"),
    );
    line(
        check.verdict_matches,
        "no rational similarity at eigenvalue 0, ratio 3",
    );
    Ok(check.passed())
}

fn gm(
    min_order: usize,
    max_order: usize,
    min_pairs: usize,
    jobs: usize,
) -> Result<bool, InputError> {
    if min_order > max_order || max_order > 16 || min_order % 2 == 1 || max_order % 2 == 1 {
        return Err(InputError(anyhow::anyhow!(
            "cubic base orders must be even and within 4..=16"
        )));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| InputError(e.into()))?;
    let (pairs, summary) = pool.install(|| {
        let bases = cubic_control_bases((min_order.max(4)..=max_order).step_by(2));
        gm_corpus(&bases, &[4, 6])
    });
    println!("base graphs:            {}", summary.base_graphs);
    println!("valid partitions:       {}", summary.validated_partitions);
    println!("non-isomorphic pairs:   {}", pairs.len());
    println!("cospectral violations:  {}", summary.cospectral_violations);
    println!("obstruction violations: {}", summary.obstruction_violations);
    let ok = pairs.len() >= min_pairs
        && summary.cospectral_violations == 0
        && summary.obstruction_violations == 0;
    println!("{}", if ok { "ok" } else { "FAIL" });
    Ok(ok)
}
