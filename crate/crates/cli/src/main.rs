use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use fieldgraph::algo::is_connected;
use fieldgraph::canon::IsoMode;
use fieldgraph::census::{classify, export_dot, report, Cache, ClassifyOptions, DEFAULT_LIMIT};
use fieldgraph::field::parse_poly;
use fieldgraph::graph::{build_cover, build_digraph, deck_transform, to_undirected, verify_covering, Variant};
use fieldgraph::spectral::{expander_report, format_sig, model_spectrum};
use fieldgraph::{Error, FieldModel};

#[derive(Parser)]
#[command(name = "fieldgraph", version, about = "Graphs of finite field models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Default,
    Strict,
    Simple,
}

impl From<Mode> for IsoMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Default => IsoMode::Default,
            Mode::Strict => IsoMode::Strict,
            Mode::Simple => IsoMode::Simple,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Classify all irreducible monic polynomials of degree k over F_p.
    Census {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value = "default")]
        mode: Mode,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        /// Cache directory (falls back to $FIELDGRAPH_CACHE).
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        verify_cache: bool,
        #[arg(long, default_value_t = DEFAULT_LIMIT)]
        limit: u64,
    },
    /// Structural, spectral and symmetry report for one model.
    Report {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        f: String,
        #[arg(long)]
        json: bool,
    },
    /// Graphviz drawing of a graph variant.
    Dot {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        f: String,
        /// full, additive, multiplicative, core(i) or cover
        #[arg(long, default_value = "full")]
        variant: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Laplacian spectrum of the undirected graph.
    Spectrum {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        f: String,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// λ1 of the x^2+1 family beside 8 sin^2(π/p).
    Expander {
        #[arg(long, value_delimiter = ',', default_value = "3,7,11,19,23")]
        primes: Vec<u32>,
    },
    /// Covering graph summary.
    Cover {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        f: String,
        /// Verify the covering map and every deck transformation.
        #[arg(long)]
        check: bool,
    },
}

enum Failure {
    Validation(String),
    Limit(String),
    CacheMismatch(String),
    Other(anyhow::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::LimitExceeded { .. } => Failure::Limit(e.to_string()),
            Error::Io(_) => Failure::Other(e.into()),
            _ => Failure::Validation(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Other(e.into())
    }
}

fn emit(out: Option<&PathBuf>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn model(p: u32, f: &str) -> Result<FieldModel, Failure> {
    Ok(FieldModel::new(&parse_poly(f, p)?)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Census {
            p,
            k,
            mode,
            out,
            format,
            cache,
            verify_cache,
            limit,
        } => {
            let opts = ClassifyOptions {
                mode: mode.into(),
                limit,
                cache: Cache::resolve(cache.as_deref())?,
                verify_cache,
            };
            if verify_cache && opts.cache.is_none() {
                return Err(Failure::Validation("--verify-cache needs a cache directory".into()));
            }
            let census = classify(p, k, &opts)?;
            let text = match format {
                Format::Csv => census.to_csv(),
                Format::Md => census.to_markdown(),
            };
            emit(out.as_ref(), &text)?;
            for f in &census.findings {
                eprintln!("finding: {f}");
            }
            if !census.cache_mismatches.is_empty() {
                for key in &census.cache_mismatches {
                    eprintln!("cache mismatch: {key}");
                }
                return Err(Failure::CacheMismatch(format!(
                    "{} cache entries disagree with recomputation",
                    census.cache_mismatches.len()
                )));
            }
        }
        Command::Report { p, f, json } => {
            let r = report(p, &f)?;
            print!("{}", if json { r.to_json() + "\n" } else { r.to_text() });
        }
        Command::Dot { p, f, variant, out } => {
            let v: Variant = variant.parse()?;
            emit(out.as_ref(), &export_dot(p, &f, v)?)?;
        }
        Command::Spectrum { p, f, csv } => {
            let s = model_spectrum(&model(p, &f)?)?;
            match csv {
                Some(path) => std::fs::write(path, s.to_csv())?,
                None => {
                    println!("n        {}", s.eigenvalues.len());
                    if let Some(l1) = s.lambda1() {
                        println!("lambda1  {}", format_sig(l1, 12));
                    }
                    if let Some(max) = s.eigenvalues.last() {
                        println!("max      {}", format_sig(*max, 12));
                    }
                }
            }
        }
        Command::Expander { primes } => {
            println!("p,lambda1,explicit");
            for row in expander_report(&primes)? {
                println!("{},{},{}", row.p, format_sig(row.lambda1, 12), format_sig(row.explicit, 12));
            }
        }
        Command::Cover { p, f, check } => {
            let m = model(p, &f)?;
            let cover = build_cover(&m);
            println!("vertices   {}", cover.graph.n);
            println!("edges      {}", cover.graph.edges.len());
            println!("connected  {}", is_connected(&to_undirected(&cover.graph)));
            println!("primitive  {}", m.is_primitive());
            if check {
                let base = build_digraph(&m);
                let covering = verify_covering(&cover, &base)?;
                let deck_ok = (1..m.order()).all(|a| {
                    deck_transform(&cover, a).is_ok_and(|perm| {
                        cover.graph.preserves_edges(&perm)
                            && perm.iter().enumerate().all(|(v, &w)| cover.project(v) == cover.project(w))
                    })
                });
                println!("covering   {covering}");
                println!("deck       {deck_ok}");
                if !(covering && deck_ok) {
                    return Err(Failure::Validation("covering check failed".into()));
                }
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Validation(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Limit(msg)) => {
            eprintln!("error: {msg} (raise --limit for larger fields)");
            ExitCode::from(3)
        }
        Err(Failure::CacheMismatch(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(4)
        }
        Err(Failure::Other(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
