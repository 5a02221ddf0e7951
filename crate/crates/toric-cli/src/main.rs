//! `toric` — explore toggle dynamics on graph labelings from the shell.
//!
//! Exit codes: 0 on success (including conjecture-mismatch findings),
//! 1 when a verification suite contradicts a proven statement, 2 on usage
//! or descriptor errors.

mod parse;

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use toric::orbit::{census, orbit, CensusReport};
use toric::orient::{double_flip_classes, flip_classes, OrientationPartition};
use toric::verify::{
    verify_cpro_order, verify_forest_theorem, verify_fs_structure, verify_operator_identities,
    zeta_survey,
};
use toric::{Caps, Graph, IdentityScope, Labeling, VerificationScope};

#[derive(Parser)]
#[command(
    name = "toric",
    version,
    about = "Toggle dynamics on graph labelings: promotion operators, orbit censuses, \
             orientation flips, friends-and-strangers components, and verification suites.",
    after_help = "Graphs: path:N | cycle:N | star:N | complete:N | prufer:a,b,... | \
                  edges:N;u-v,... | file:PATH\n\
                  Operators: pro | tpro | cpro | c:K | tpro-pi:PERM | zeta:H | toggles:i-j,...\n\
                  The TORIC_MAX_N environment variable overrides every vertex-count cap."
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Worker threads for censuses and sweeps (default: all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// RNG seed for sampled scopes, recorded in reports
    #[arg(long, global = true, default_value_t = toric::DEFAULT_SEED)]
    seed: u64,

    /// Override every vertex-count enumeration cap
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Apply an operator to a labeling one or more times
    Step {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        op: String,
        #[arg(long)]
        labeling: String,
        /// Number of applications
        #[arg(long, default_value_t = 1)]
        steps: u64,
    },
    /// List the orbit of a labeling under an operator
    Orbit {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        op: String,
        #[arg(long)]
        labeling: String,
    },
    /// Orbit-size census of an operator over all labelings
    Census {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        op: String,
    },
    /// Operator order: the lcm of all orbit sizes
    Order {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        op: String,
    },
    /// Flip equivalence classes of the acyclic orientations
    FlipClasses {
        #[arg(long)]
        graph: String,
    },
    /// Double-flip equivalence classes of the acyclic orientations
    DoubleFlipClasses {
        #[arg(long)]
        graph: String,
    },
    /// Components of the friends-and-strangers graph of the complement and
    /// the cycle on label space (i.e. the toggle components)
    FsComponents {
        #[arg(long)]
        graph: String,
    },
    /// Run a verification suite
    Verify {
        #[arg(long, value_enum)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    /// Orbit sizes on all small trees (exhaustive) plus sampled larger ones
    Trees,
    /// Orbit-size formula on all small forests
    Forests,
    /// Shift-after-promotion orbit sizes on trees
    Cpro,
    /// Operator identities on paths, stars, and random trees
    Identities,
    /// Orders of the reordered toric promotions on paths
    Zeta,
    /// Flip-class and component structure on all small graphs
    Fs,
    /// Everything above
    All,
}

struct Rendered {
    text: String,
    json: Value,
    csv: String,
    theorem_failure: bool,
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let mut caps = Caps::from_env();
    if let Some(n) = cli.max_n {
        caps.set_max_n(n);
    }
    let threads = cli
        .threads
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |p| p.get()))
        .max(1);

    let rendered = match dispatch(&cli.command, &caps, threads, cli.seed) {
        Ok(r) => r,
        Err(message) => {
            eprintln!("error: {message}");
            return 2;
        }
    };

    let output = match cli.format {
        Format::Text => rendered.text,
        Format::Json => format!("{}\n", serde_json::to_string_pretty(&rendered.json).unwrap()),
        Format::Csv => rendered.csv,
    };
    match &cli.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, output) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{output}"),
    }
    if rendered.theorem_failure {
        1
    } else {
        0
    }
}

fn dispatch(command: &Command, caps: &Caps, threads: usize, seed: u64) -> Result<Rendered, String> {
    match command {
        Command::Step {
            graph,
            op,
            labeling,
            steps,
        } => {
            let g = parse::parse_graph(graph)?;
            let spec = parse::parse_operator(op, g.n())?;
            let start = Labeling::parse(labeling, g.n()).map_err(|e| e.to_string())?;
            let compiled = spec.compile(g.n()).map_err(|e| e.to_string())?;
            let mut current = start.clone();
            for _ in 0..*steps {
                current = compiled.apply(&g, &current);
            }
            let word = current.word();
            Ok(Rendered {
                text: format!("{word}\n"),
                json: json!({
                    "graph": graph,
                    "operator": op,
                    "labeling": start.word(),
                    "steps": steps,
                    "result": word,
                }),
                csv: format!("result\n{word}\n"),
                theorem_failure: false,
            })
        }
        Command::Orbit { graph, op, labeling } => {
            let g = parse::parse_graph(graph)?;
            let spec = parse::parse_operator(op, g.n())?;
            let start = Labeling::parse(labeling, g.n()).map_err(|e| e.to_string())?;
            let words: Vec<String> = orbit(&g, &spec, &start)
                .map_err(|e| e.to_string())?
                .iter()
                .map(|l| l.word())
                .collect();
            let mut text = String::new();
            for w in &words {
                writeln!(text, "{w}").unwrap();
            }
            writeln!(text, "size: {}", words.len()).unwrap();
            let mut csv = String::from("index,labeling\n");
            for (i, w) in words.iter().enumerate() {
                writeln!(csv, "{i},{w}").unwrap();
            }
            Ok(Rendered {
                text,
                json: json!({
                    "graph": graph,
                    "operator": op,
                    "labeling": start.word(),
                    "orbit": words,
                    "size": words.len(),
                }),
                csv,
                theorem_failure: false,
            })
        }
        Command::Census { graph, op } => {
            let g = parse::parse_graph(graph)?;
            let spec = parse::parse_operator(op, g.n())?;
            let result = census(&g, &spec, caps, threads).map_err(|e| e.to_string())?;
            let report = CensusReport::new(graph.clone(), op.clone(), &result, Vec::new(), seed);
            Ok(Rendered {
                text: format!("{report}"),
                json: serde_json::to_value(&report).unwrap(),
                csv: report.to_csv(),
                theorem_failure: false,
            })
        }
        Command::Order { graph, op } => {
            let g = parse::parse_graph(graph)?;
            let spec = parse::parse_operator(op, g.n())?;
            let result = census(&g, &spec, caps, threads).map_err(|e| e.to_string())?;
            let order = result.order.to_string();
            Ok(Rendered {
                text: format!("{order}\n"),
                json: json!({
                    "graph": graph,
                    "operator": op,
                    "order": order,
                    "labelings": result.labelings,
                }),
                csv: format!("order\n{order}\n"),
                theorem_failure: false,
            })
        }
        Command::FlipClasses { graph } => {
            let g = parse::parse_graph(graph)?;
            let part = flip_classes(&g, caps).map_err(|e| e.to_string())?;
            Ok(render_partition(graph, &g, &part, "flip"))
        }
        Command::DoubleFlipClasses { graph } => {
            let g = parse::parse_graph(graph)?;
            let part = double_flip_classes(&g, caps).map_err(|e| e.to_string())?;
            Ok(render_partition(graph, &g, &part, "double-flip"))
        }
        Command::FsComponents { graph } => {
            let g = parse::parse_graph(graph)?;
            let components =
                toric::fs::toggle_components(&g, caps).map_err(|e| e.to_string())?;
            let blocks: Vec<Vec<String>> = components
                .iter()
                .map(|c| c.iter().map(|l| l.word()).collect())
                .collect();
            let mut text = format!("{} components\n", blocks.len());
            for (i, block) in blocks.iter().enumerate() {
                writeln!(text, "component {i} (size {}): {}", block.len(), block.join(" "))
                    .unwrap();
            }
            let mut csv = String::from("component,labeling\n");
            for (i, block) in blocks.iter().enumerate() {
                for w in block {
                    writeln!(csv, "{i},{w}").unwrap();
                }
            }
            Ok(Rendered {
                text,
                json: json!({
                    "graph": graph,
                    "n": g.n(),
                    "count": blocks.len(),
                    "components": blocks,
                }),
                csv,
                theorem_failure: false,
            })
        }
        Command::Verify { suite } => run_verify(*suite, caps, threads, seed),
    }
}

fn render_partition(
    descriptor: &str,
    g: &Graph,
    part: &OrientationPartition,
    kind: &str,
) -> Rendered {
    let classes: Vec<Vec<String>> = part
        .classes()
        .iter()
        .map(|class| class.iter().map(|alpha| alpha.render(g)).collect())
        .collect();
    let total: usize = classes.iter().map(|c| c.len()).sum();
    let mut text = format!("{} {kind} classes over {total} acyclic orientations\n", classes.len());
    for (i, class) in classes.iter().enumerate() {
        writeln!(text, "class {i} (size {}):", class.len()).unwrap();
        for rendering in class {
            writeln!(text, "  {rendering}").unwrap();
        }
    }
    let mut csv = String::from("class,orientation\n");
    for (i, class) in classes.iter().enumerate() {
        for rendering in class {
            writeln!(csv, "{i},{rendering}").unwrap();
        }
    }
    Rendered {
        text,
        json: json!({
            "graph": descriptor,
            "n": g.n(),
            "kind": kind,
            "orientations": total,
            "count": classes.len(),
            "classes": classes,
        }),
        csv,
        theorem_failure: false,
    }
}

fn run_verify(suite: Suite, caps: &Caps, threads: usize, seed: u64) -> Result<Rendered, String> {
    let suites: Vec<Suite> = match suite {
        Suite::All => vec![
            Suite::Trees,
            Suite::Forests,
            Suite::Cpro,
            Suite::Identities,
            Suite::Zeta,
            Suite::Fs,
        ],
        one => vec![one],
    };

    let mut text = String::new();
    let mut jsons = Vec::new();
    let mut csv = String::from("suite,check,pass,counterexample\n");
    let mut failure = false;

    for s in suites {
        match s {
            Suite::Trees => {
                let scope = VerificationScope::trees(7.min(caps.max_tree_n), seed);
                let report =
                    verify_forest_theorem(&scope, caps, threads).map_err(|e| e.to_string())?;
                failure |= !report.pass;
                writeln!(text, "{report}").unwrap();
                push_verdict_rows(&mut csv, &report.suite, &report.verdicts);
                jsons.push(serde_json::to_value(&report).unwrap());
            }
            Suite::Forests => {
                let scope = VerificationScope::forests(5.min(caps.max_forest_n), seed);
                let report =
                    verify_forest_theorem(&scope, caps, threads).map_err(|e| e.to_string())?;
                failure |= !report.pass;
                writeln!(text, "{report}").unwrap();
                push_verdict_rows(&mut csv, &report.suite, &report.verdicts);
                jsons.push(serde_json::to_value(&report).unwrap());
            }
            Suite::Cpro => {
                let scope = VerificationScope::trees(7.min(caps.max_tree_n), seed);
                let report =
                    verify_cpro_order(&scope, caps, threads).map_err(|e| e.to_string())?;
                failure |= !report.pass;
                writeln!(text, "{report}").unwrap();
                push_verdict_rows(&mut csv, &report.suite, &report.verdicts);
                jsons.push(serde_json::to_value(&report).unwrap());
            }
            Suite::Identities => {
                let max_n = 7.min(caps.max_census_n);
                let scope = IdentityScope {
                    max_n,
                    exhaustive_max_n: 5.min(max_n),
                    seed,
                    ..IdentityScope::default()
                };
                let report =
                    verify_operator_identities(&scope, caps).map_err(|e| e.to_string())?;
                failure |= !report.pass;
                writeln!(text, "{report}").unwrap();
                push_verdict_rows(&mut csv, &report.suite, &report.verdicts);
                jsons.push(serde_json::to_value(&report).unwrap());
            }
            Suite::Zeta => {
                let report = zeta_survey(4, 8.min(caps.max_census_n), caps, threads)
                    .map_err(|e| e.to_string())?;
                failure |= !report.pass;
                writeln!(text, "{report}").unwrap();
                for row in &report.rows {
                    writeln!(
                        csv,
                        "{},n={} h={},{},computed={} expected={}",
                        report.suite, row.n, row.h, row.matches, row.computed_order,
                        row.expected_order
                    )
                    .unwrap();
                }
                jsons.push(serde_json::to_value(&report).unwrap());
            }
            Suite::Fs => {
                let max_n = 5.min(caps.max_fs_n);
                let report = verify_fs_structure(max_n, max_n, caps, threads)
                    .map_err(|e| e.to_string())?;
                failure |= !report.pass;
                writeln!(text, "{report}").unwrap();
                push_verdict_rows(&mut csv, &report.suite, &report.verdicts);
                jsons.push(serde_json::to_value(&report).unwrap());
            }
            Suite::All => unreachable!("expanded above"),
        }
    }

    let json = if jsons.len() == 1 {
        jsons.pop().unwrap()
    } else {
        json!({ "reports": jsons })
    };
    Ok(Rendered {
        text,
        json,
        csv,
        theorem_failure: failure,
    })
}

fn push_verdict_rows(csv: &mut String, suite: &str, verdicts: &[toric::Verdict]) {
    for v in verdicts {
        writeln!(
            csv,
            "{suite},{},{},{}",
            v.name,
            v.pass,
            v.counterexample.clone().unwrap_or_default().replace(',', ";")
        )
        .unwrap();
    }
}
