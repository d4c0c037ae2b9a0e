use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, ValueEnum};

use mapgen::automorphism::DEFAULT_GROUP_CAP;
use mapgen::embedder::{SearchTarget, DEFAULT_LIST_CAP, DEFAULT_ORACLE_CAP};
use mapgen::generate::ClassFilter;
use mapgen::run::{load_input, run_graphs, InputSource, RunConfig, RunMode};
use mapgen::Error;

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    /// canonicity test of completed maps
    Final,
    /// prefix comparisons during construction
    Incremental,
    /// set of emitted canonical strings
    List,
    /// all rotation systems, grouped by class (slow reference)
    Exhaustive,
}

/// Generate pairwise non-isomorphic maps (rotation systems) of given genus
/// or face count, for graphs read as graph6 or generated on the fly.
#[derive(Debug, Parser)]
#[command(name = "mapgen", version)]
#[command(group(ArgGroup::new("target").required(true).args(["genus", "faces"])))]
#[command(group(ArgGroup::new("source").required(true).args(["input", "gen"])))]
struct Args {
    /// Target genus
    #[arg(long)]
    genus: Option<usize>,
    /// Target number of faces
    #[arg(long)]
    faces: Option<usize>,
    #[arg(long, value_enum, default_value = "final")]
    mode: ModeArg,
    /// graph6 file, one graph per line (`-` for standard input)
    #[arg(long, value_name = "PATH")]
    input: Option<PathBuf>,
    /// Generate all connected graphs with this many vertices
    #[arg(long, value_name = "N")]
    gen: Option<usize>,
    /// Only r-regular graphs (with --gen)
    #[arg(long, value_name = "R", requires = "gen")]
    regular: Option<usize>,
    /// Only bipartite graphs (with --gen)
    #[arg(long, requires = "gen")]
    bipartite: bool,
    /// Only graphs with this degree sequence, comma separated (with --gen)
    #[arg(long, value_name = "D1,D2,..", value_delimiter = ',', requires = "gen")]
    degseq: Option<Vec<usize>>,
    /// Minimum degree (with --gen)
    #[arg(long, value_name = "D", requires = "gen")]
    min_degree: Option<usize>,
    /// Maximum degree (with --gen)
    #[arg(long, value_name = "D", requires = "gen")]
    max_degree: Option<usize>,
    /// Write the input graphs as graph6 to PATH
    #[arg(long, value_name = "PATH")]
    export_graph6: Option<PathBuf>,
    /// Count maps without writing them
    #[arg(long)]
    count_only: bool,
    /// Write maps to PATH instead of standard output
    #[arg(long, value_name = "PATH", conflicts_with = "count_only")]
    output: Option<PathBuf>,
    /// Print a labeled summary block as well
    #[arg(long)]
    stats: bool,
    /// Stop after N maps
    #[arg(long, value_name = "N", value_parser = clap::value_parser!(u64).range(1..))]
    limit: Option<u64>,
    /// Worker threads; output order does not depend on it
    #[arg(long, value_name = "K", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Cap on the size of automorphism groups
    #[arg(long, value_name = "N", default_value_t = DEFAULT_GROUP_CAP)]
    aut_cap: u64,
    /// Cap on the number of strings kept in list mode
    #[arg(long, value_name = "N", default_value_t = DEFAULT_LIST_CAP)]
    list_cap: usize,
    /// Cap on the rotation systems visited in exhaustive mode
    #[arg(long, value_name = "N", default_value_t = DEFAULT_ORACLE_CAP)]
    oracle_cap: u64,
}

fn config(args: &Args) -> RunConfig {
    let target = match (args.genus, args.faces) {
        (Some(g), _) => SearchTarget::Genus(g),
        (_, Some(f)) => SearchTarget::Faces(f),
        _ => unreachable!("clap enforces a target"),
    };
    let input = match (&args.input, args.gen) {
        (Some(path), _) => InputSource::Graph6(path.clone()),
        (_, Some(n)) => InputSource::Generated(ClassFilter {
            n,
            regular: args.regular,
            degree_sequence: args.degseq.clone(),
            bipartite: args.bipartite,
            min_degree: args.min_degree,
            max_degree: args.max_degree,
        }),
        _ => unreachable!("clap enforces an input"),
    };
    RunConfig {
        target,
        mode: match args.mode {
            ModeArg::Final => RunMode::Final,
            ModeArg::Incremental => RunMode::Incremental,
            ModeArg::List => RunMode::List,
            ModeArg::Exhaustive => RunMode::Exhaustive,
        },
        input,
        count_only: args.count_only,
        limit: args.limit,
        workers: args.workers as usize,
        aut_cap: args.aut_cap,
        list_cap: args.list_cap,
        oracle_cap: args.oracle_cap,
    }
}

fn execute(args: &Args) -> Result<(), Error> {
    let config = config(args);
    let graphs = load_input(&config.input)?;
    if let Some(path) = &args.export_graph6 {
        let mut out = BufWriter::new(File::create(path)?);
        for g in &graphs {
            writeln!(out, "{}", g.to_graph6())?;
        }
        out.flush()?;
    }
    let stdout = std::io::stdout();
    let mut out: Box<dyn Write> = match &args.output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(stdout.lock())),
    };
    let summary = run_graphs(&graphs, &config, &mut |text| {
        out.write_all(text.as_bytes())?;
        Ok(())
    })?;
    out.flush()?;
    drop(out);

    // records own standard output unless they go elsewhere
    let mut report = String::new();
    report.push_str(&summary.tsv_line());
    report.push('\n');
    if args.stats {
        report.push_str(&summary.stats_block());
    }
    if args.count_only || args.output.is_some() {
        print!("{report}");
    } else {
        eprint!("{report}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let args = Args::parse();
    match execute(&args) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mapgen: {e}");
            if e.is_resource() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
