//! The `qspex` command line. Every subcommand is a thin adapter over one
//! library call.
//!
//! Graphs are graph6 strings; `-` reads one graph per line from standard
//! input. Exit codes: 0 on success, 1 on a domain error (bad graph6, infeasible
//! query, rejected move), 2 on a usage error.

use std::ffi::OsString;
use std::io::{BufRead, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::family::{extremal_beta1, extremal_params, predicted_extremal};
use crate::graph::{edge, from_graph6, Edge, Graph};
use crate::matching::matching_number;
use crate::search::{
    enumerate_graphs, hill_climb, EnumerationQuery, Mode, SearchConfig, DEFAULT_GUARD,
};
use crate::spectral::{q_radius, q_radius_with, SolverConfig};
use crate::transform::{kelmans_swap, pendant_collapse, rotate, RewireResult};
use crate::verify::{
    emit_report, round12, verify_theorem1, ReportFormat, VerificationReport, VerifyError,
};

/// Environment variable overriding the enumeration guard.
pub const GUARD_ENV: &str = "QSPEX_GUARD";

/// Largest guard the command line accepts.
pub const MAX_GUARD: usize = 12;

pub const TOLERANCE_RANGE: (f64, f64) = (1e-14, 1e-6);

#[derive(Debug, Parser)]
#[command(
    name = "qspex",
    version,
    about = "Signless Laplacian spectral radius and matching number toolkit"
)]
pub struct Cli {
    #[command(flatten)]
    pub options: GlobalOptions,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOptions {
    /// Largest m accepted by enumerate and verify (at most 12).
    #[arg(long, global = true)]
    pub guard: Option<usize>,
    /// Worker threads for enumeration.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<OutputFormat>,
    /// Write output to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Residual tolerance of the eigensolver, in [1e-14, 1e-6].
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ClimbMode {
    Exact,
    AtLeast,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Spectral radius, principal eigenvector and residual.
    Q { graph: String },
    /// Matching number.
    Beta { graph: String },
    /// Predicted maximizer for m edges and matching number beta.
    Extremal {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        beta: usize,
    },
    /// Every graph with m edges and matching number beta, one per class.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        beta: usize,
        /// Matching number at least beta instead of exactly beta.
        #[arg(long)]
        at_least: bool,
    },
    /// Compare the brute-force maximizers with the prediction.
    Verify {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        beta: usize,
    },
    /// Steepest ascent over q-increasing rewirings.
    Climb {
        #[arg(long)]
        start: String,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        beta: usize,
        #[arg(long, value_enum, default_value = "at-least")]
        mode: ClimbMode,
        #[arg(long, default_value_t = 100)]
        max_steps: usize,
    },
    /// Replace edge `remove` by non-edge `add`.
    Rotate {
        graph: String,
        #[arg(long, value_parser = parse_pair)]
        remove: (usize, usize),
        #[arg(long, value_parser = parse_pair)]
        add: (usize, usize),
    },
    /// Replace u_i v_i and u_j v_j by u_i u_j and v_i v_j.
    Swap {
        graph: String,
        /// `u_i,v_i`
        #[arg(long, value_parser = parse_pair)]
        first: (usize, usize),
        /// `u_j,v_j`
        #[arg(long, value_parser = parse_pair)]
        second: (usize, usize),
    },
    /// Turn each listed edge into a new pendant edge at the center.
    Collapse {
        graph: String,
        #[arg(long)]
        center: usize,
        #[arg(long = "edge", value_parser = parse_pair, required = true)]
        edges: Vec<(usize, usize)>,
    },
}

fn parse_pair(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once([',', '-'])
        .ok_or_else(|| format!("expected two vertices like 0,1, got {s:?}"))?;
    let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("{t:?}: {e}"));
    Ok((parse(a)?, parse(b)?))
}

/// Validated global settings.
#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub tolerance: Option<f64>,
    pub guard: usize,
    pub workers: Option<usize>,
    pub format: Option<OutputFormat>,
    pub output: Option<PathBuf>,
}

impl CliConfig {
    /// The `--guard` flag wins over the environment value.
    pub fn resolve(options: &GlobalOptions, env_guard: Option<&str>) -> Result<Self, String> {
        let guard = match (options.guard, env_guard) {
            (Some(g), _) => g,
            (None, Some(text)) => text
                .trim()
                .parse()
                .map_err(|_| format!("{GUARD_ENV}={text:?} is not a number"))?,
            (None, None) => DEFAULT_GUARD,
        };
        if guard > MAX_GUARD {
            return Err(format!("guard {guard} exceeds {MAX_GUARD}"));
        }
        if let Some(t) = options.tolerance {
            if !(TOLERANCE_RANGE.0..=TOLERANCE_RANGE.1).contains(&t) {
                return Err(format!("tolerance {t} outside [1e-14, 1e-6]"));
            }
        }
        if options.workers == Some(0) {
            return Err("--workers must be at least 1".into());
        }
        Ok(Self {
            tolerance: options.tolerance,
            guard,
            workers: options.workers,
            format: options.format,
            output: options.output.clone(),
        })
    }

    fn search(&self) -> SearchConfig {
        SearchConfig {
            guard: self.guard,
            workers: self.workers,
        }
    }

    fn solver(&self) -> SolverConfig {
        let mut s = SolverConfig::default();
        if let Some(t) = self.tolerance {
            s.residual_tolerance = t;
        }
        s
    }
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn domain(e: impl std::fmt::Display) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Numbers at 12 significant digits.
pub fn fmt_num(v: f64) -> String {
    round12(v).to_string()
}

fn round_json(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => json!(round12(n.as_f64().expect("f64 number"))),
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => {
            Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect())
        }
        other => other,
    }
}

fn json_line(v: Value) -> String {
    let mut s = round_json(v).to_string();
    s.push('\n');
    s
}

/// Parses argv, runs the subcommand and returns the exit code. `input` backs
/// the `-` graph argument.
pub fn run<I, T>(args: I, input: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let env_guard = std::env::var(GUARD_ENV).ok();
    run_with_env(args, env_guard.as_deref(), input, out, err)
}

/// [`run`] with the guard environment value passed in explicitly.
pub fn run_with_env<I, T>(
    args: I,
    env_guard: Option<&str>,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let result = CliConfig::resolve(&cli.options, env_guard)
        .map_err(Failure::Usage)
        .and_then(|config| {
            let mut text = String::new();
            let status = execute(&cli.command, &config, input, &mut text);
            match &config.output {
                Some(path) => std::fs::write(path, &text)
                    .map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))?,
                None => out
                    .write_all(text.as_bytes())
                    .map_err(|e| Failure::Domain(e.to_string()))?,
            }
            status
        });
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Domain(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn read_graphs(arg: &str, input: &mut dyn BufRead) -> Result<Vec<Graph>, Failure> {
    if arg != "-" {
        return from_graph6(arg)
            .map(|g| vec![g])
            .map_err(|e| Failure::domain(format!("{arg:?}: {e}")));
    }
    let mut graphs = Vec::new();
    for line in input.lines() {
        let line = line.map_err(Failure::domain)?;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        graphs.push(from_graph6(line).map_err(|e| Failure::domain(format!("{line:?}: {e}")))?);
    }
    Ok(graphs)
}

fn json_mode(config: &CliConfig) -> bool {
    config.format == Some(OutputFormat::Json)
}

/// Writes everything produced before a failure, so batch output stays usable.
fn execute(
    command: &Command,
    config: &CliConfig,
    input: &mut dyn BufRead,
    text: &mut String,
) -> Result<(), Failure> {
    match command {
        Command::Q { graph } => {
            for g in read_graphs(graph, input)? {
                let s = q_radius_with(&g, &config.solver());
                if json_mode(config) {
                    text.push_str(&json_line(json!({
                        "graph": g.to_string(), "q": s.q, "x": s.x, "residual": s.residual,
                    })));
                } else {
                    let x: Vec<String> = s.x.iter().map(|&v| fmt_num(v)).collect();
                    text.push_str(&format!(
                        "graph {g}\nq {}\nresidual {}\nx {}\n",
                        fmt_num(s.q),
                        fmt_num(s.residual),
                        x.join(" ")
                    ));
                }
            }
        }
        Command::Beta { graph } => {
            for g in read_graphs(graph, input)? {
                let beta = matching_number(&g);
                if json_mode(config) {
                    text.push_str(&json_line(json!({ "graph": g.to_string(), "beta": beta })));
                } else {
                    text.push_str(&format!("graph {g}\nbeta {beta}\n"));
                }
            }
        }
        Command::Extremal { m, beta } => extremal(*m, *beta, config, text)?,
        Command::Enumerate { m, beta, at_least } => {
            let mode = if *at_least {
                Mode::AtLeast
            } else {
                Mode::Exact
            };
            let query = EnumerationQuery {
                m: *m,
                beta: *beta,
                mode,
            };
            let graphs = enumerate_graphs(&query, &config.search()).map_err(Failure::domain)?;
            if json_mode(config) {
                let list: Vec<String> = graphs.iter().map(Graph::to_string).collect();
                text.push_str(&json_line(json!(list)));
            } else {
                for g in graphs {
                    text.push_str(&format!("{g}\n"));
                }
            }
        }
        Command::Verify { m, beta } => {
            let format = match config.format {
                Some(OutputFormat::Csv) => ReportFormat::Csv,
                _ => ReportFormat::Json,
            };
            match verify_theorem1(*m, *beta, &config.search()) {
                Ok(report) => text.push_str(&emit_report(&report, format)),
                Err(VerifyError::Infeasible { m, beta }) => {
                    text.push_str(&emit_report(
                        &VerificationReport::infeasible(m, beta),
                        format,
                    ));
                    return Err(Failure::Domain(format!(
                        "no graph has {m} edges and matching number {beta}"
                    )));
                }
                Err(e) => return Err(Failure::domain(e)),
            }
        }
        Command::Climb {
            start,
            m,
            beta,
            mode,
            max_steps,
        } => {
            let g = from_graph6(start).map_err(|e| Failure::domain(format!("{start:?}: {e}")))?;
            let mode = match mode {
                ClimbMode::Exact => Mode::Exact,
                ClimbMode::AtLeast => Mode::AtLeast,
            };
            let query = EnumerationQuery {
                m: *m,
                beta: *beta,
                mode,
            };
            let trace = hill_climb(&g, &query, *max_steps).map_err(Failure::domain)?;
            if json_mode(config) {
                text.push_str(&json_line(
                    serde_json::to_value(&trace).expect("trace serializes"),
                ));
            } else {
                text.push_str(&format!(
                    "start {} q {}\n",
                    trace.start,
                    fmt_num(trace.q_start)
                ));
                for (i, step) in trace.steps.iter().enumerate() {
                    let kind = serde_json::to_value(step.kind).expect("kind serializes");
                    text.push_str(&format!(
                        "step {} {} {} q {}\n",
                        i + 1,
                        kind.as_str().unwrap_or_default(),
                        step.result.graph,
                        fmt_num(step.result.q_after)
                    ));
                }
                text.push_str(&format!("end {} q {}\n", trace.end, fmt_num(trace.q_end)));
                text.push_str(&format!(
                    "converged_to_prediction {}\n",
                    trace.converged_to_prediction
                ));
                if trace.hit_step_cap {
                    text.push_str("hit_step_cap true\n");
                }
            }
        }
        Command::Rotate { graph, remove, add } => rewire(graph, input, config, text, |g, x| {
            rotate(g, x, edge(remove.0, remove.1), edge(add.0, add.1))
        })?,
        Command::Swap {
            graph,
            first,
            second,
        } => rewire(graph, input, config, text, |g, x| {
            kelmans_swap(g, x, *first, *second)
        })?,
        Command::Collapse {
            graph,
            center,
            edges,
        } => {
            let moved: Vec<Edge> = edges.iter().map(|&(a, b)| edge(a, b)).collect();
            rewire(graph, input, config, text, |g, _| {
                pendant_collapse(g, *center, &moved)
            })?
        }
    }
    Ok(())
}

fn rewire<F>(
    graph: &str,
    input: &mut dyn BufRead,
    config: &CliConfig,
    text: &mut String,
    apply: F,
) -> Result<(), Failure>
where
    F: Fn(&Graph, &[f64]) -> Result<RewireResult, crate::transform::TransformError>,
{
    for g in read_graphs(graph, input)? {
        let x = q_radius(&g).x;
        let r = apply(&g, &x).map_err(Failure::domain)?;
        if json_mode(config) {
            let mut v = serde_json::to_value(&r).expect("result serializes");
            v["delta"] = json!(r.delta());
            text.push_str(&json_line(v));
        } else {
            text.push_str(&format!(
                "graph {}\nq_before {}\nq_after {}\ndelta {}\n",
                r.graph,
                fmt_num(r.q_before),
                fmt_num(r.q_after),
                fmt_num(r.delta())
            ));
        }
    }
    Ok(())
}

fn extremal(m: usize, beta: usize, config: &CliConfig, text: &mut String) -> Result<(), Failure> {
    if beta == 1 {
        let (q, graphs) = extremal_beta1(m).map_err(Failure::domain)?;
        let list: Vec<String> = graphs.iter().map(Graph::to_string).collect();
        if json_mode(config) {
            text.push_str(&json_line(
                json!({ "m": m, "beta": beta, "params": null, "graphs": list, "q": q }),
            ));
        } else {
            for g in &list {
                text.push_str(&format!("graph {g}\n"));
            }
            text.push_str(&format!("q {}\n", fmt_num(q)));
        }
        return Ok(());
    }
    let p = extremal_params(m, beta).map_err(Failure::domain)?;
    let g = predicted_extremal(m, beta).map_err(Failure::domain)?;
    let q = q_radius(&g).q;
    if json_mode(config) {
        text.push_str(&json_line(json!({
            "m": m, "beta": beta, "params": p, "graphs": [g.to_string()], "q": q,
        })));
    } else {
        text.push_str(&format!(
            "params {} {} {} {}\ngraph {g}\nq {}\n",
            p.a,
            p.b,
            p.c,
            p.d,
            fmt_num(q)
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str], stdin: &str) -> (i32, String, String) {
        let mut input = stdin.as_bytes();
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let argv = std::iter::once("qspex").chain(args.iter().copied());
        let code = run_with_env(argv, None, &mut input, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn q_of_k2() {
        let (code, out, _) = call(&["q", "A_"], "");
        assert_eq!(code, 0);
        assert!(out.contains("q 2\n"), "{out}");
    }

    #[test]
    fn stdin_batch() {
        let (code, out, _) = call(&["beta", "-"], "A_\nC`\n\nBw\n");
        assert_eq!(code, 0);
        assert_eq!(
            out,
            "graph A_\nbeta 1\ngraph C`\nbeta 2\ngraph Bw\nbeta 1\n"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(call(&["q", "not graph6!"], "").0, 1);
        assert_eq!(call(&["bogus"], "").0, 2);
        assert_eq!(call(&["q"], "").0, 2);
        assert_eq!(
            call(
                &["--guard", "13", "enumerate", "--m", "3", "--beta", "1"],
                ""
            )
            .0,
            2
        );
        assert_eq!(call(&["--tolerance", "1e-3", "q", "A_"], "").0, 2);
        assert_eq!(call(&["extremal", "--m", "2", "--beta", "3"], "").0, 1);
        assert_eq!(call(&["--help"], "").0, 0);
    }

    #[test]
    fn guard_from_environment() {
        let options = GlobalOptions {
            guard: None,
            workers: None,
            format: None,
            output: None,
            tolerance: None,
        };
        assert_eq!(CliConfig::resolve(&options, Some("7")).unwrap().guard, 7);
        assert_eq!(
            CliConfig::resolve(&options, None).unwrap().guard,
            DEFAULT_GUARD
        );
        assert!(CliConfig::resolve(&options, Some("x")).is_err());
        let flagged = GlobalOptions {
            guard: Some(4),
            ..options
        };
        assert_eq!(CliConfig::resolve(&flagged, Some("7")).unwrap().guard, 4);
    }

    #[test]
    fn edge_pairs() {
        assert_eq!(parse_pair("3,4"), Ok((3, 4)));
        assert_eq!(parse_pair("3-4"), Ok((3, 4)));
        assert!(parse_pair("34").is_err());
    }
}
