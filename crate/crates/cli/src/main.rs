use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use klcells::cells::EdgeConvention;
use klcells::coxeter::CoxeterSystem;
use klcells::reps::generate;
use klcells::weights::{scan_equivalence_classes, ScanOptions};
use klcells_cli::archive::{self, to_json_bytes, CellsFile};
use klcells_cli::config::{parse_list, RunConfig};
use klcells_cli::pipeline::{self, format_results, refinement_check, Status, ALL_CHECKS};
use klcells_cli::CliError;

#[derive(Parser)]
#[command(name = "klcells", version, about = "Kazhdan-Lusztig cells with unequal parameters")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute P- and M-polynomials and cells, and store them in the archive.
    Compute(Common),
    /// Find the equivalence classes of weight functions of a two-class system.
    Scan(ScanArgs),
    /// Compute and run every check.
    Check(CheckArgs),
    /// Copy files of an archived run.
    Export(ExportArgs),
    /// Print one artifact to stdout.
    Dump(DumpArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Convention {
    ModuleClosure,
    Verbatim,
}

#[derive(Args, Clone)]
struct Common {
    /// Coxeter type, e.g. F4, B3, I2(6), A1xA1.
    #[arg(long = "type")]
    system: Option<String>,
    /// Weight per generator or per generator class, e.g. 1,2.
    #[arg(long, allow_hyphen_values = true)]
    weight: Option<String>,
    /// Monomial order as functionals, e.g. "0,1;1,0".
    #[arg(long, allow_hyphen_values = true)]
    order: Option<String>,
    /// JSON run configuration; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Directory of character tables and reference data.
    #[arg(long)]
    data: Option<PathBuf>,
    #[arg(long)]
    threads: Option<usize>,
    #[arg(long, value_enum)]
    convention: Option<Convention>,
    /// Comma-separated checks to run and store.
    #[arg(long)]
    checks: Option<String>,
    /// Comma-separated table formats to store: tsv, json.
    #[arg(long)]
    dump: Option<String>,
    #[arg(long)]
    seed: Option<u64>,
    /// Number of elements sampled for the R-identity (0 = all).
    #[arg(long)]
    r_sample: Option<usize>,
    #[arg(long)]
    progress: bool,
    /// Recompute even if the archive has the entry.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
struct ScanArgs {
    #[command(flatten)]
    common: Common,
    /// Recompute breakpoints with both tiebreaks of the weighted order.
    #[arg(long)]
    cross_check: bool,
    /// Compare each open region with direct weight computations.
    #[arg(long)]
    verify: bool,
    /// Scan all ratios even when a diagram automorphism swaps the classes.
    #[arg(long)]
    no_mirror: bool,
}

#[derive(Args)]
struct CheckArgs {
    #[command(flatten)]
    common: Common,
    /// Weights whose left and two-sided cells must refine those of this run.
    #[arg(long, allow_hyphen_values = true)]
    finer: Vec<String>,
}

#[derive(Args)]
struct ExportArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_parser = ["dot", "tsv", "json"])]
    format: String,
    #[arg(long)]
    dest: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    System,
    P,
    Mu,
    Cells,
    Chartable,
}

#[derive(Args)]
struct DumpArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long, value_enum)]
    what: What,
}

impl Common {
    fn config(&self) -> Result<RunConfig, CliError> {
        let mut c = match &self.config {
            Some(p) => RunConfig::load(p)?,
            None => RunConfig::default(),
        };
        if let Some(s) = &self.system {
            c.system = s.clone();
        }
        if let Some(w) = &self.weight {
            c.weight = Some(parse_list(w)?);
            c.order = None;
        }
        if let Some(o) = &self.order {
            c.order = Some(o.clone());
            c.weight = None;
        }
        if let Some(o) = &self.out {
            c.out = o.clone();
        }
        if let Some(d) = &self.data {
            c.data = Some(d.clone());
        }
        if let Some(t) = self.threads {
            c.threads = Some(t);
        }
        if let Some(v) = self.convention {
            c.convention = match v {
                Convention::ModuleClosure => EdgeConvention::ModuleClosure,
                Convention::Verbatim => EdgeConvention::Verbatim,
            };
        }
        if let Some(s) = &self.checks {
            c.checks = split(s);
        }
        if let Some(d) = &self.dump {
            c.dump = split(d);
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(r) = self.r_sample {
            c.r_sample = r;
        }
        c.progress |= self.progress;
        c.force |= self.force;
        if let Some(n) = c.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Config(format!("threads: {e}")))?;
        }
        Ok(c)
    }
}

fn split(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

fn compute(common: &Common) -> Result<ExitCode, CliError> {
    let config = common.config()?;
    let stored = archive::compute_and_store(&config)?;
    println!(
        "{} {}",
        if stored.cached { "cached" } else { "stored" },
        stored.dir.display()
    );
    if let Some(run) = &stored.run {
        println!(
            "{} elements: {} P entries, {} M entries; {} left, {} right, {} two-sided cells",
            run.sys.size(),
            run.data.kl.entry_count(),
            run.data.mu.len(),
            run.cells.left.len(),
            run.cells.right.len(),
            run.cells.two_sided.len()
        );
    }
    print!("{}", format_results(&stored.checks));
    Ok(exit_for(&stored.checks))
}

fn exit_for(results: &[pipeline::CheckResult]) -> ExitCode {
    if results.iter().any(|r| r.status == Status::Fail) {
        ExitCode::FAILURE
    } else {
        ExitCode::SUCCESS
    }
}

fn scan(args: &ScanArgs) -> Result<ExitCode, CliError> {
    let config = args.common.config()?;
    let sys = config.system()?;
    let opts = ScanOptions {
        cross_check: args.cross_check || config.cross_check,
        verify_specialization: args.verify,
        no_mirror: args.no_mirror,
        convention: config.convention,
    };
    let report = scan_equivalence_classes(&sys, &opts)?;
    let dir = archive::write_scan(&config.out, &report)?;
    print!("{}", report.summary());
    println!("wrote {}", dir.display());
    Ok(ExitCode::SUCCESS)
}

fn check(args: &CheckArgs) -> Result<ExitCode, CliError> {
    let mut config = args.common.config()?;
    if config.checks.is_empty() {
        config.checks = ALL_CHECKS.iter().map(|s| s.to_string()).collect();
    }
    config.force = true;
    let stored = archive::compute_and_store(&config)?;
    let run = stored.run.expect("forced runs compute");
    let mut results = stored.checks;
    for w in &args.finer {
        let mut fine = config.clone();
        fine.weight = Some(parse_list(w)?);
        fine.order = None;
        fine.checks = Vec::new();
        let f = pipeline::run(&fine)?;
        results.extend(refinement_check(
            &run.cells.left,
            &[(format!("left at {w}"), f.cells.left.clone())],
        ));
        results.extend(refinement_check(
            &run.cells.two_sided,
            &[(format!("two-sided at {w}"), f.cells.two_sided.clone())],
        ));
    }
    println!("stored {}", stored.dir.display());
    print!("{}", format_results(&results));
    Ok(exit_for(&results))
}

fn export(args: &ExportArgs) -> Result<ExitCode, CliError> {
    let config = args.common.config()?;
    let sys = config.system()?;
    let params = config.params(&sys)?;
    let key = archive::key(&sys, &params, config.convention);
    let entry = archive::entry_dir(&config.out, &key);
    let copied = archive::export(&entry, &args.format, &args.dest)?;
    for name in copied {
        println!("{}", args.dest.join(name).display());
    }
    Ok(ExitCode::SUCCESS)
}

fn dump(args: &DumpArgs) -> Result<ExitCode, CliError> {
    let config = args.common.config()?;
    let sys = config.system()?;
    let bytes = match args.what {
        What::System => to_json_bytes(&sys.summary_json()),
        What::Chartable => {
            let table = chartable(&sys)?;
            to_json_bytes(&table.to_file(&sys))
        }
        What::P | What::Mu | What::Cells => {
            let run = pipeline::run(&config)?;
            match args.what {
                What::P => run.data.p_tsv(&sys).into_bytes(),
                What::Mu => run.data.mu_tsv(&sys).into_bytes(),
                _ => to_json_bytes(&CellsFile::new(&sys, &run.cells, config.convention)),
            }
        }
    };
    print!("{}", String::from_utf8_lossy(&bytes));
    Ok(ExitCode::SUCCESS)
}

fn chartable(sys: &CoxeterSystem) -> Result<klcells::reps::CharacterTable, CliError> {
    let dihedral = sys.rank() == 2 && !matches!(sys.spec().m(0, 1), 2 | 3 | 4 | 6);
    Ok(if dihedral {
        generate::dihedral_table(sys)?
    } else {
        generate::weyl_table(sys)?
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Compute(c) => compute(c),
        Command::Scan(a) => scan(a),
        Command::Check(a) => check(a),
        Command::Export(a) => export(a),
        Command::Dump(a) => dump(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
