//! `bicay`: build Sigma graphs, analyze edge lists and run the verification
//! suites.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
//! 3 I/O or parse error.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use bicay_core::bicayley::{build_sigma, BiCayleyError};
use bicay_core::graphalg::{are_isomorphic, automorphism_group, basic_report, classify_with_group, Graph, GraphError};
use bicay_core::pgroup::{GroupAutomorphism, GroupError, GroupParams};
use bicay_core::verify::{self, Suite};
use clap::{Parser, Subcommand, ValueEnum};
use rand::rngs::StdRng;
use rand::SeedableRng;
use serde_json::json;

/// Environment variable capping the worker threads (positive integer).
const THREADS_ENV: &str = "BICAY_THREADS";

#[derive(Parser)]
#[command(name = "bicay", version, about = "Cubic bi-Cayley graphs over inner-abelian p-groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write Sigma(p,t,s,k) as an edge list or JSON.
    Sigma {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        s: u32,
        /// Root of k^2 - k + 1 mod p^(t-s); defaults to the smallest one.
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        /// Output file (stdout when absent).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Automorphism group and arc-regularity report of an edge-list file.
    Analyze { graph: PathBuf },
    /// Run a verification suite.
    Verify {
        #[arg(long, value_enum, default_value_t = SuiteArg::Fast)]
        suite: SuiteArg,
    },
    /// Decide whether two edge-list graphs are isomorphic.
    Iso { first: PathBuf, second: PathBuf },
    /// Arithmetic in H(p,t,s).
    Group {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        t: u32,
        #[arg(long)]
        s: u32,
        #[command(subcommand)]
        action: GroupAction,
    },
}

#[derive(Subcommand)]
enum GroupAction {
    /// Oracle-equivalence and property checks for this parameter set.
    Selftest,
    /// Normal form of a word such as "a^2*b^-1".
    Word { word: String },
    /// Order of the element a word evaluates to.
    Order { word: String },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Edgelist,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SuiteArg {
    Fast,
    Full,
}

/// An error with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn invalid(message: impl ToString) -> Self {
        Failure { code: 2, message: message.to_string() }
    }

    fn io(message: impl ToString) -> Self {
        Failure { code: 3, message: message.to_string() }
    }
}

impl From<BiCayleyError> for Failure {
    fn from(e: BiCayleyError) -> Self {
        Failure::invalid(e)
    }
}

impl From<GroupError> for Failure {
    fn from(e: GroupError) -> Self {
        match e {
            GroupError::Syntax { .. } | GroupError::UnknownGenerator { .. } => Failure::io(e),
            _ => Failure::invalid(e),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::io(e)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(f) = configure_threads() {
        eprintln!("error: {}", f.message);
        return ExitCode::from(f.code);
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var(THREADS_ENV) else { return Ok(()) };
    let threads: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::invalid(format!("{THREADS_ENV} must be a positive integer, got '{value}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| Failure::invalid(format!("cannot configure thread pool: {e}")))
}

fn run(command: Command) -> Result<u8, Failure> {
    match command {
        Command::Sigma { p, t, s, k, format, output } => cmd_sigma(p, t, s, k, format, output.as_deref()),
        Command::Analyze { graph } => cmd_analyze(&graph),
        Command::Verify { suite } => cmd_verify(match suite {
            SuiteArg::Fast => Suite::Fast,
            SuiteArg::Full => Suite::Full,
        }),
        Command::Iso { first, second } => cmd_iso(&first, &second),
        Command::Group { p, t, s, action } => cmd_group(GroupParams::new(p, t, s)?, action),
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Failure> {
    match output {
        Some(path) => fs::write(path, text).map_err(|e| Failure::io(format!("{}: {e}", path.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn cmd_sigma(p: u64, t: u32, s: u32, k: Option<u64>, format: Format, output: Option<&Path>) -> Result<u8, Failure> {
    let sigma = build_sigma(p, t, s, k)?;
    let header = sigma.header();
    let text = match format {
        Format::Edgelist => {
            format!("# {}\n{}", serde_json::to_string(&header).expect("header serializes"), sigma.graph().to_edge_list())
        }
        Format::Json => {
            let edges: Vec<[usize; 2]> = sigma.graph().edges().map(|(u, v)| [u, v]).collect();
            let mut text = serde_json::to_string(&json!({ "header": header, "edges": edges })).expect("graph serializes");
            text.push('\n');
            text
        }
    };
    emit(output, &text)?;
    Ok(0)
}

fn read_graph(path: &Path) -> Result<Graph, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::io(format!("{}: {e}", path.display())))?;
    Graph::parse_edge_list(&text).map_err(|e| Failure::io(format!("{}: {e}", path.display())))
}

fn cmd_analyze(path: &Path) -> Result<u8, Failure> {
    let graph = read_graph(path)?;
    let aut = automorphism_group(&graph);
    let report = match classify_with_group(&graph, &aut) {
        Ok(report) => report,
        Err(e @ (GraphError::NotCubic | GraphError::Disconnected)) => {
            eprintln!("note: no arc-regularity classification: {e}");
            basic_report(&graph, &aut)
        }
        Err(e) => return Err(Failure::invalid(e)),
    };
    println!("{}", serde_json::to_string(&report).expect("report serializes"));
    Ok(0)
}

fn cmd_verify(suite: Suite) -> Result<u8, Failure> {
    let reports = verify::run_suite(suite, |r| {
        eprintln!("{:<32} {} {:.2?}", r.name, if r.pass { "pass" } else { "FAIL" }, r.runtime);
    });
    emit(None, &verify::render_report(&reports))?;
    Ok(if reports.iter().all(|r| r.pass) { 0 } else { 1 })
}

fn cmd_iso(first: &Path, second: &Path) -> Result<u8, Failure> {
    let g1 = read_graph(first)?;
    let g2 = read_graph(second)?;
    let mut out = String::new();
    match are_isomorphic(&g1, &g2) {
        Some(perm) => {
            out.push_str("isomorphic\n");
            for (v, w) in perm.images().enumerate() {
                out.push_str(&format!("{v} {w}\n"));
            }
        }
        None => out.push_str("non-isomorphic\n"),
    }
    emit(None, &out)?;
    Ok(0)
}

fn cmd_group(h: GroupParams, action: GroupAction) -> Result<u8, Failure> {
    match action {
        GroupAction::Word { word } => {
            println!("{}", h.parse_word(&word)?);
            Ok(0)
        }
        GroupAction::Order { word } => {
            println!("{}", h.element_order(&h.parse_word(&word)?));
            Ok(0)
        }
        GroupAction::Selftest => {
            let results = selftest(&h);
            let mut ok = true;
            for (name, failures) in &results {
                println!("{name:<28} {}", if *failures == 0 { "ok".to_string() } else { format!("{failures} failures") });
                ok &= *failures == 0;
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

/// Named checks with their failure counts.
fn selftest(h: &GroupParams) -> Vec<(&'static str, usize)> {
    let mut rng = StdRng::seed_from_u64(verify::SEED);
    let sample = |rng: &mut StdRng| verify::random_element(h, rng);
    let mut results = Vec::new();

    // Oracle equivalence: the full table when small, random products otherwise.
    let oracle = if h.order() <= 243 {
        verify::group_law_mismatches(h)
    } else {
        (0..10_000)
            .filter(|_| {
                let (x, y) = (sample(&mut rng), sample(&mut rng));
                h.multiply(&x, &y) != bicay_core::pgroup::oracle::multiply(h, &x, &y)
            })
            .count()
    };
    results.push(("oracle_equivalence", oracle));

    let assoc = (0..10_000)
        .filter(|_| {
            let (x, y, z) = (sample(&mut rng), sample(&mut rng), sample(&mut rng));
            h.multiply(&h.multiply(&x, &y), &z) != h.multiply(&x, &h.multiply(&y, &z))
        })
        .count();
    results.push(("associativity", assoc));
    results.push(("power_law", verify::power_law_failures(h, 10_000, &mut rng)));

    let derived = (0..10_000)
        .filter(|_| {
            let c = h.commutator(&sample(&mut rng), &sample(&mut rng));
            c.x() != 0 || c.y() != 0
        })
        .count();
    results.push(("derived_subgroup_in_c", derived));

    let naive = (0..1_000)
        .filter(|_| {
            let x = sample(&mut rng);
            h.element_order(&x) != h.element_order_naive(&x)
        })
        .count();
    results.push(("element_order", naive));

    let (count, index_ok) = if h.order() <= 100_000 {
        verify::maximal_subgroup_summary(h)
    } else {
        (h.maximal_subgroups().len(), true)
    };
    results.push(("maximal_subgroups", usize::from(count as u64 != h.p() + 1 || !index_ok)));

    // Random automorphisms are homomorphisms and preserve orders.
    let mut hom = 0;
    let mut found = 0;
    while found < 20 {
        let Ok(phi) = GroupAutomorphism::from_images(*h, sample(&mut rng), sample(&mut rng)) else { continue };
        found += 1;
        for _ in 0..200 {
            let (x, y) = (sample(&mut rng), sample(&mut rng));
            if phi.apply(&h.multiply(&x, &y)) != h.multiply(&phi.apply(&x), &phi.apply(&y))
                || h.element_order(&phi.apply(&x)) != h.element_order(&x)
            {
                hom += 1;
            }
        }
    }
    results.push(("automorphism_homomorphism", hom));
    results
}
