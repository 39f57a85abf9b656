mod output;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand};
use metrized_green::verify::{verify, VerifyConfig};
use metrized_green::{
    green_can, parse_graph, resistance_points, tau_constant, value_matrix, Divisor, DivisorGreen,
    Error, MetrizedGraph, Network, Point, Rational, Scalar,
};
use output::{envelope, matrix_csv, matrix_json, matrix_pretty, Format};
use serde_json::{json, Value};

const THREADS_VAR: &str = "METRIZED_GREEN_THREADS";

/// Resistance function, tau constant and Green's functions of a metrized graph.
#[derive(Parser, Debug)]
#[command(name = "metrized-green", version)]
struct Cli {
    /// Graph file: {"vertices": [...], "edges": [{"id", "from", "to", "length"}]}
    #[arg(short = 'g', long = "graph", global = true, value_name = "FILE")]
    graph: Option<PathBuf>,

    /// Exact rational arithmetic instead of f64.
    #[arg(long, global = true)]
    exact: bool,

    #[arg(long, global = true, value_enum, default_value_t = Format::Pretty)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Vertex, edge and bridge summary.
    Info,
    /// Discrete Laplacian of the adequate refinement.
    Laplacian,
    /// Pseudoinverse of the Laplacian.
    Pinv,
    /// Effective resistance between every pair of vertices.
    ResistanceMatrix,
    /// Effective resistance r(x, y).
    Resistance(PointPair),
    /// The tau constant.
    Tau,
    /// Canonical Green's function g(x, y).
    Green(PointPair),
    /// Green's function forms for every pair of edges.
    ValueMatrix,
    /// Green's function attached to a divisor.
    GreenD {
        /// JSON map of vertex to coefficient, e.g. {"v1": 1, "v3": -2}
        #[arg(long, value_name = "FILE")]
        divisor: PathBuf,
        #[command(flatten)]
        points: PointPair,
    },
    /// Cross-check closed-form results against the subdivision oracles.
    Verify {
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long = "tau-k", default_value_t = 100)]
        tau_k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args, Debug)]
struct PointPair {
    /// `<vertex-id>` or `<edge-id>:<offset>`; give exactly two.
    #[arg(long = "at", value_name = "POINT", required = true, num_args = 1..)]
    at: Vec<String>,
}

/// Errors that map to exit code 2.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct UsageError(String);

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    configure_threads();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            if !text.ends_with('\n') {
                println!();
            }
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<UsageError>().is_some() {
        return 2;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::PointSyntax(_)) => 2,
        _ => 1,
    }
}

fn configure_threads() {
    let Ok(value) = std::env::var(THREADS_VAR) else {
        return;
    };
    match value.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            if let Err(e) = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
            {
                log::warn!("could not size thread pool: {e}");
            }
        }
        _ => log::warn!("ignoring {THREADS_VAR}={value:?}; expected a positive integer"),
    }
}

fn run(cli: &Cli) -> anyhow::Result<String> {
    let path = cli
        .graph
        .as_deref()
        .ok_or_else(|| UsageError("a graph file is required (-g <FILE>)".into()))?;
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read graph file {}", path.display()))?;
    if cli.exact {
        execute::<Rational>(cli, &text)
    } else {
        execute::<f64>(cli, &text)
    }
}

fn execute<S: Scalar>(cli: &Cli, text: &str) -> anyhow::Result<String> {
    let graph: MetrizedGraph<S> = parse_graph(text)?;
    let net = Network::from_graph(&graph)?;
    log::info!(
        "{} vertices, {} edges after refinement ({} mode)",
        net.graph().vertex_count(),
        net.graph().edge_count(),
        S::MODE
    );
    let fmt = cli.format;
    match &cli.command {
        Command::Info => Ok(info(&graph, &net, fmt)),
        Command::Laplacian => Ok(matrix("laplacian", &net, net.laplacian().matrix(), fmt)),
        Command::Pinv => Ok(matrix("pinv", &net, net.pseudo_inverse().matrix(), fmt)),
        Command::ResistanceMatrix => Ok(matrix(
            "resistance-matrix",
            &net,
            net.resistance_matrix().matrix(),
            fmt,
        )),
        Command::Resistance(pair) => {
            let (x, y) = points(&net, pair)?;
            let r = resistance_points(&net, &x, &y)?;
            Ok(scalar("resistance", &net, &[&x, &y], &r, fmt))
        }
        Command::Tau => {
            let tau = tau_constant(&net);
            Ok(scalar("tau", &net, &[], &tau, fmt))
        }
        Command::Green(pair) => {
            let (x, y) = points(&net, pair)?;
            let tau = tau_constant(&net);
            let g = green_can(&net, &tau, &x, &y)?;
            Ok(scalar("green", &net, &[&x, &y], &g, fmt))
        }
        Command::ValueMatrix => Ok(value_matrix_output(&net, fmt)),
        Command::GreenD {
            divisor,
            points: pair,
        } => {
            let (x, y) = points(&net, pair)?;
            let divisor = read_divisor(net.graph(), divisor)?;
            let tau = tau_constant(&net);
            let green = DivisorGreen::new(&net, &tau, divisor)?;
            let g = green.evaluate(&net, &x, &y)?;
            if fmt == Format::Json {
                let payload = json!({
                    "points": [net.graph().describe_point(&x), net.graph().describe_point(&y)],
                    "value": g.to_text(),
                    "constant": green.constant().to_text(),
                    "degree": green.divisor().degree().to_text(),
                });
                return Ok(envelope("green-d", S::MODE, payload));
            }
            Ok(g.to_text())
        }
        Command::Verify { pairs, tau_k, seed } => {
            let config = VerifyConfig {
                pairs: *pairs,
                tau_k: *tau_k,
                seed: *seed,
            };
            let report = verify(&net, &config)?;
            let tolerance = if S::EXACT { 0.0 } else { 1e-9 };
            // secant quadrature error is at most ℓ/(12k²) and τ ≥ ℓ/108, so 9/k² bounds it
            let ok = report.passes(tolerance, 10.0 / (*tau_k as f64).powi(2));
            let out = if fmt == Format::Json {
                let mut payload = serde_json::to_value(&report)?;
                payload["passed"] = Value::Bool(ok);
                envelope("verify", S::MODE, payload)
            } else {
                verify_pretty(&report, ok)
            };
            if ok {
                Ok(out)
            } else {
                print!("{out}");
                anyhow::bail!("verification found deviations beyond tolerance")
            }
        }
    }
}

fn points<S: Scalar>(net: &Network<S>, pair: &PointPair) -> anyhow::Result<(Point<S>, Point<S>)> {
    let [x, y] = pair.at.as_slice() else {
        return Err(UsageError(format!(
            "expected exactly two --at points, got {}",
            pair.at.len()
        ))
        .into());
    };
    let graph = net.graph();
    Ok((graph.parse_point(x)?, graph.parse_point(y)?))
}

fn read_divisor<S: Scalar>(graph: &MetrizedGraph<S>, path: &Path) -> anyhow::Result<Divisor<S>> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("cannot read divisor file {}", path.display()))?;
    Ok(Divisor::from_json(graph, &text)?)
}

fn scalar<S: Scalar>(
    command: &str,
    net: &Network<S>,
    at: &[&Point<S>],
    value: &S,
    fmt: Format,
) -> String {
    match fmt {
        Format::Json => {
            let described: Vec<String> = at.iter().map(|p| net.graph().describe_point(p)).collect();
            let mut payload = json!({ "value": value.to_text() });
            if !described.is_empty() {
                payload["points"] = json!(described);
            }
            envelope(command, S::MODE, payload)
        }
        Format::Csv | Format::Pretty => value.to_text(),
    }
}

fn matrix<S: Scalar>(
    command: &str,
    net: &Network<S>,
    m: &metrized_green::DenseMatrix<S>,
    fmt: Format,
) -> String {
    let labels = net.graph().vertices();
    match fmt {
        Format::Json => envelope(command, S::MODE, matrix_json(labels, m)),
        Format::Csv => matrix_csv(labels, m),
        Format::Pretty => matrix_pretty(labels, m),
    }
}

fn info<S: Scalar>(graph: &MetrizedGraph<S>, net: &Network<S>, fmt: Format) -> String {
    let refined = net.graph();
    let bridges: Vec<&str> = (0..refined.edge_count())
        .filter(|&e| net.is_bridge(e))
        .map(|e| refined.edge(e).label.as_str())
        .collect();
    let genus = refined.edge_count() + 1 - refined.vertex_count();
    if fmt == Format::Json {
        let payload = json!({
            "vertices": graph.vertex_count(),
            "edges": graph.edge_count(),
            "refined_vertices": refined.vertex_count(),
            "refined_edges": refined.edge_count(),
            "total_length": graph.total_length().to_text(),
            "genus": genus,
            "bridges": bridges,
            "adequate": graph.is_adequate(),
        });
        return envelope("info", S::MODE, payload);
    }
    let mut lines = vec![
        format!("vertices      {}", graph.vertex_count()),
        format!("edges         {}", graph.edge_count()),
        format!("total length  {}", graph.total_length().to_text()),
        format!("genus         {genus}"),
        format!(
            "bridges       {}",
            if bridges.is_empty() {
                "none".into()
            } else {
                bridges.join(" ")
            }
        ),
    ];
    if !graph.is_adequate() {
        lines.push(format!(
            "refined       {} vertices, {} edges",
            refined.vertex_count(),
            refined.edge_count()
        ));
    }
    lines.join("\n")
}

fn value_matrix_output<S: Scalar>(net: &Network<S>, fmt: Format) -> String {
    let tau = tau_constant(net);
    let z = value_matrix(net, &tau);
    match fmt {
        Format::Json => envelope(
            "value-matrix",
            S::MODE,
            serde_json::to_value(z.to_wire()).expect("wire form serializes"),
        ),
        Format::Csv => {
            use metrized_green::green::WireForm;
            let labels: Vec<&str> = net
                .graph()
                .edges()
                .iter()
                .map(|e| e.label.as_str())
                .collect();
            let mut out = String::from("x_edge,y_edge,kind,abs,quad,xx,yy,xy,x,y,constant\n");
            for (i, row) in z.to_wire().entries.iter().enumerate() {
                for (j, form) in row.iter().enumerate() {
                    let cells = match form {
                        WireForm::SameEdge {
                            abs,
                            quad,
                            constant,
                        } => {
                            format!("same_edge,{abs},{quad},,,,,,{constant}")
                        }
                        WireForm::CrossEdge {
                            xx,
                            yy,
                            xy,
                            x,
                            y,
                            constant,
                        } => {
                            format!("cross_edge,,,{xx},{yy},{xy},{x},{y},{constant}")
                        }
                    };
                    out.push_str(&format!("{},{},{cells}\n", labels[i], labels[j]));
                }
            }
            out
        }
        Format::Pretty => {
            let graph = net.graph();
            let mut out = format!("tau = {}\n", tau.to_text());
            for i in 0..z.size() {
                for j in 0..z.size() {
                    out.push_str(&format!(
                        "z[{}, {}] = {}\n",
                        graph.edge(i).label,
                        graph.edge(j).label,
                        z.entry(i, j).pretty(&tau)
                    ));
                }
            }
            out
        }
    }
}

fn verify_pretty(report: &metrized_green::verify::VerificationReport, ok: bool) -> String {
    [
        format!("mode                        {}", report.mode),
        format!("point pairs                 {}", report.pairs),
        format!(
            "resistance vs oracle        {:e}",
            report.max_resistance_deviation
        ),
        format!(
            "symmetry                    {:e}",
            report.max_symmetry_deviation
        ),
        format!(
            "value matrix vs tau - r/2   {:e}",
            report.max_value_matrix_deviation
        ),
        format!(
            "tau base independence       {:e}",
            report.max_tau_base_deviation
        ),
        format!("tau                         {}", report.tau),
        format!(
            "oracle tau (k = {})         {} (rel. error {:e}, {:e} at 2k)",
            report.tau_k,
            report.oracle_tau,
            report.oracle_tau_relative_error,
            report.oracle_tau_relative_error_double_k
        ),
        format!(
            "status                      {}",
            if ok { "ok" } else { "FAILED" }
        ),
    ]
    .join("\n")
        + "\n"
}
