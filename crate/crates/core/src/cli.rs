//! Command-line front end. [`run`] parses arguments and writes to the given
//! streams so the binary stays a two-line shim and tests can drive it.
//!
//! Exit codes: 0 colored / accepted, 1 usage or parse error, 2 verification
//! rejection, 3 odd-minor certificate emitted.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::certificate::{verify_certificate, OddExpansionCertificate};
use crate::coloring::{verify_coloring, ClusteredColoring, ColoringReport};
use crate::decompose::DecomposeOutcome;
use crate::dot;
use crate::generators;
use crate::graph::{Graph, Vertex, VertexSet};
use crate::io::{self as gio, Format};
use crate::oracle::{has_odd_expansion, OracleBudget};
use crate::par::Parallelism;
use crate::pipeline::{color_graph, ColorRun, Verdict};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_REJECTED: i32 = 2;
pub const EXIT_CERTIFICATE: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "oddcolor",
    version,
    about = "Clustered coloring or odd clique minor certificate"
)]
pub struct Cli {
    /// More progress output on stderr.
    #[arg(short, long, action = clap::ArgAction::Count, global = true)]
    pub verbose: u8,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GraphInput {
    /// Graph file.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value_t = Format::Edgelist)]
    pub format: Format,
}

impl GraphInput {
    fn load(&self) -> anyhow::Result<Graph> {
        let text = fs::read_to_string(&self.input)
            .with_context(|| format!("reading {}", self.input.display()))?;
        gio::parse(&text, self.format).with_context(|| format!("parsing {}", self.input.display()))
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Color the graph, or emit a certificate that it has an odd K_t minor.
    Color {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Decompose components in parallel.
        #[arg(long)]
        parallel: bool,
    },
    /// Print the decomposition of every component.
    Decompose {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Check a coloring or certificate against a graph.
    Verify {
        #[command(flatten)]
        graph: GraphInput,
        /// Coloring or certificate JSON.
        #[arg(long)]
        artifact: PathBuf,
        /// Overrides the artifact's t.
        #[arg(long)]
        t: Option<usize>,
    },
    /// Write a generated graph.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: Option<usize>,
        /// Second dimension: grid columns, or the smaller side of complete-bipartite.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        p: Option<f64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Format::Edgelist)]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Graphviz rendering, optionally overlaid with a coloring or certificate.
    Dot {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        artifact: Option<PathBuf>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Exhaustive odd K_t minor test for tiny graphs.
    Oracle {
        #[command(flatten)]
        graph: GraphInput,
        #[arg(long)]
        t: usize,
        #[arg(long = "budget-n")]
        budget_n: Option<usize>,
        #[arg(long = "budget-t")]
        budget_t: Option<usize>,
        #[arg(long)]
        parallel: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Family {
    /// Erdős–Rényi G(n, p).
    Gnp,
    /// G(n, p) with components linked into one.
    ConnectedGnp,
    /// Connected random bipartite graph.
    Bipartite,
    CompleteBipartite,
    Cycle,
    Path,
    Complete,
    Grid,
    Petersen,
}

/// Coloring artifact as written by `color`: the coloring plus its report.
#[derive(Debug, Serialize)]
pub struct ColoredArtifact<'a> {
    #[serde(flatten)]
    pub coloring: &'a ClusteredColoring,
    pub report: &'a ColoringReport,
}

/// What a color run prints, and the exit code that goes with it.
pub fn render_verdict(run: &ColorRun) -> (String, i32) {
    match &run.verdict {
        Verdict::Colored { coloring, report } => {
            let art = ColoredArtifact { coloring, report };
            (serde_json::to_string(&art).unwrap(), EXIT_OK)
        }
        Verdict::Certified(cert) => (serde_json::to_string(cert).unwrap(), EXIT_CERTIFICATE),
    }
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
    verbose: u8,
}

impl Io<'_> {
    fn emit(&mut self, text: &str, output: Option<&Path>) -> anyhow::Result<()> {
        let mut text = text.to_string();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        match output {
            Some(path) => {
                fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
            }
            None => self.out.write_all(text.as_bytes())?,
        }
        Ok(())
    }

    fn note(&mut self, level: u8, msg: impl AsRef<str>) {
        if self.verbose >= level {
            let _ = writeln!(self.err, "{}", msg.as_ref());
        }
    }
}

/// Entry point. `args` includes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    let mut io = Io {
        out,
        err,
        verbose: cli.verbose,
    };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e:#}");
            EXIT_USAGE
        }
    }
}

fn dispatch(cmd: Command, io: &mut Io<'_>) -> anyhow::Result<i32> {
    match cmd {
        Command::Color {
            graph,
            t,
            output,
            parallel,
        } => cmd_color(&graph, t, output.as_deref(), parallel, io),
        Command::Decompose { graph, t, output } => cmd_decompose(&graph, t, output.as_deref(), io),
        Command::Verify { graph, artifact, t } => cmd_verify(&graph, &artifact, t, io),
        Command::Gen {
            family,
            n,
            m,
            p,
            seed,
            format,
            output,
        } => {
            let g = generate(family, n, m, p, seed)?;
            io.emit(&gio::write(&g, format), output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Dot {
            graph,
            artifact,
            output,
        } => cmd_dot(&graph, artifact.as_deref(), output.as_deref(), io),
        Command::Oracle {
            graph,
            t,
            budget_n,
            budget_t,
            parallel,
        } => {
            let g = graph.load()?;
            let defaults = OracleBudget::default();
            let budget = OracleBudget {
                max_n: budget_n.unwrap_or(defaults.max_n),
                max_t: budget_t.unwrap_or(defaults.max_t),
                ..defaults
            };
            let found = has_odd_expansion(&g, t, budget, Parallelism::from_flag(parallel))?;
            io.emit(&json!({"odd_minor": found, "t": t}).to_string(), None)?;
            Ok(EXIT_OK)
        }
    }
}

fn cmd_color(
    input: &GraphInput,
    t: usize,
    output: Option<&Path>,
    parallel: bool,
    io: &mut Io<'_>,
) -> anyhow::Result<i32> {
    if t < 3 {
        bail!("--t must be at least 3");
    }
    let g = input.load()?;
    io.note(1, format!("graph: n={} m={}, t={t}", g.n(), g.edge_count()));
    let run = match color_graph(&g, t, Parallelism::from_flag(parallel)) {
        Ok(run) => run,
        Err(e) if e.is_verification() => {
            let _ = writeln!(io.err, "self-verification failed: {e}");
            return Ok(EXIT_REJECTED);
        }
        Err(e) => return Err(e.into()),
    };
    for (i, c) in run.components.iter().enumerate() {
        let d = c.outcome.decomposition();
        io.note(
            2,
            format!("component {i}: {} vertices, {} parts", c.graph.n(), d.len()),
        );
    }
    let (text, code) = render_verdict(&run);
    io.note(
        1,
        if code == EXIT_OK {
            "colored"
        } else {
            "odd minor certificate"
        },
    );
    io.emit(&text, output)?;
    Ok(code)
}

fn cmd_decompose(
    input: &GraphInput,
    t: usize,
    output: Option<&Path>,
    io: &mut Io<'_>,
) -> anyhow::Result<i32> {
    if t < 3 {
        bail!("--t must be at least 3");
    }
    let g = input.load()?;
    let mut components = Vec::new();
    let mut stuck_any = false;
    for piece in g.connected_components(None) {
        let (local, to_global) = g.induced_subgraph(&piece);
        let outcome = crate::decompose::decompose(&local, t)?;
        let lift = |s: &VertexSet| s.iter().map(|v| to_global[v]).collect::<Vec<Vertex>>();
        let d = outcome.decomposition();
        let parts: Vec<Value> = d
            .parts
            .iter()
            .map(|p| {
                json!({"index": p.index, "H": lift(&p.vertices), "A": lift(&p.side_a), "B": lift(&p.side_b)})
            })
            .collect();
        let mut entry = json!({"t": t, "parts": parts});
        if let DecomposeOutcome::Stuck(s) = &outcome {
            stuck_any = true;
            entry["stuck"] = json!({
                "component": lift(&s.component),
                "adjacent_parts": s.adjacent_parts,
            });
        }
        components.push(entry);
    }
    io.emit(&json!({ "components": components }).to_string(), output)?;
    Ok(if stuck_any { EXIT_CERTIFICATE } else { EXIT_OK })
}

fn cmd_verify(
    input: &GraphInput,
    artifact: &Path,
    t_override: Option<usize>,
    io: &mut Io<'_>,
) -> anyhow::Result<i32> {
    let g = input.load()?;
    let text =
        fs::read_to_string(artifact).with_context(|| format!("reading {}", artifact.display()))?;
    let value: Value = serde_json::from_str(&text).context("artifact is not JSON")?;
    if value.get("trees").is_some() {
        let mut cert: OddExpansionCertificate =
            serde_json::from_value(value).context("malformed certificate")?;
        if let Some(t) = t_override {
            cert.t = t;
        }
        match verify_certificate(&g, &cert) {
            Ok(()) => {
                io.emit(
                    &json!({"valid": true, "kind": "certificate", "t": cert.t}).to_string(),
                    None,
                )?;
                Ok(EXIT_OK)
            }
            Err(r) if r.is_mismatch() => Err(anyhow!("certificate does not fit the graph: {r}")),
            Err(r) => {
                let _ = writeln!(io.err, "rejected: {r}");
                Ok(EXIT_REJECTED)
            }
        }
    } else if value.get("colors").is_some() {
        let coloring: ClusteredColoring =
            serde_json::from_value(value).context("malformed coloring")?;
        let t = t_override.unwrap_or(coloring.t);
        match verify_coloring(&g, &coloring, t) {
            Ok(report) => {
                io.emit(&serde_json::to_string(&report)?, None)?;
                Ok(EXIT_OK)
            }
            Err(r) if r.is_mismatch() => Err(anyhow!("coloring does not fit the graph: {r}")),
            Err(r) => {
                let _ = writeln!(io.err, "rejected: {r}");
                Ok(EXIT_REJECTED)
            }
        }
    } else {
        bail!("artifact is neither a coloring nor a certificate")
    }
}

fn cmd_dot(
    input: &GraphInput,
    artifact: Option<&Path>,
    output: Option<&Path>,
    io: &mut Io<'_>,
) -> anyhow::Result<i32> {
    let g = input.load()?;
    let text = match artifact {
        None => dot::plain(&g),
        Some(path) => {
            let value: Value =
                serde_json::from_str(&fs::read_to_string(path)?).context("artifact is not JSON")?;
            if value.get("trees").is_some() {
                let cert: OddExpansionCertificate = serde_json::from_value(value)?;
                let out_of_range = cert
                    .trees
                    .iter()
                    .flat_map(|t| t.vertices.iter())
                    .chain(cert.joins.iter().flat_map(|j| [j.edge.0, j.edge.1]))
                    .any(|v| v >= g.n());
                if out_of_range {
                    bail!("certificate names vertices outside the graph");
                }
                dot::with_certificate(&g, &cert)
            } else {
                let coloring: ClusteredColoring = serde_json::from_value(value)?;
                if coloring.colors.len() != g.n() {
                    bail!("coloring length does not match the graph");
                }
                dot::with_coloring(&g, &coloring)
            }
        }
    };
    io.emit(&text, output)?;
    Ok(EXIT_OK)
}

pub fn generate(
    family: Family,
    n: Option<usize>,
    m: Option<usize>,
    p: Option<f64>,
    seed: u64,
) -> anyhow::Result<Graph> {
    let need_n = || n.ok_or_else(|| anyhow!("--n is required for this family"));
    let need_p = || {
        let p = p.ok_or_else(|| anyhow!("--p is required for this family"))?;
        if !(0.0..=1.0).contains(&p) {
            bail!("--p must lie in [0, 1]");
        }
        Ok(p)
    };
    Ok(match family {
        Family::Gnp => generators::gnp(need_n()?, need_p()?, seed),
        Family::ConnectedGnp => generators::connected_gnp(need_n()?, need_p()?, seed),
        Family::Bipartite => generators::connected_bipartite(need_n()?, need_p()?, seed),
        Family::CompleteBipartite => {
            generators::complete_bipartite(need_n()?, m.unwrap_or(n.unwrap_or(0)))
        }
        Family::Cycle => {
            let n = need_n()?;
            if n < 3 {
                bail!("a cycle needs --n >= 3");
            }
            generators::cycle(n)
        }
        Family::Path => generators::path(need_n()?),
        Family::Complete => generators::complete(need_n()?),
        Family::Grid => {
            let rows = need_n()?;
            generators::grid(rows, m.unwrap_or(rows))
        }
        Family::Petersen => generators::petersen(),
    })
}
