//! Command-line interface for the surfarc engine.
//!
//! A job is described by a JSON config file naming the surface, the
//! context arcs, and command-specific data; the subcommand selects the
//! operation.  Exit codes: 0 success, 2 config error, 3 limit exceeded,
//! 4 invariant violation.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use surfarc::laminate::elementary_laminate;
use surfarc::shear::shear_vector;
use surfarc::triang::PartialTaggedTriangulation;
use surfarc::{
    build_surface, check_connected, enumerate_arcs, enumerate_dissections,
    enumerate_standard_arcs, flip, is_costandard, is_standard,
    mutation_direction, skew_tiling_presentation, tiling_presentation, validate_skew_gentle,
    AlgebraError, Corner, Curve, End, ExchangeGraph, FlipError, GraphEdge, GraphError,
    GraphLimits, MutationDirection, Slot, SurfaceModel, SurfaceSpec, TaggedArc,
};

/// Combinatorics of tagged arcs, dissections, flips and exchange graphs
/// on punctured marked surfaces.
#[derive(Parser)]
#[command(name = "surfarc", version)]
pub struct Cli {
    /// Path to the JSON job config.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Worker threads for graph search; defaults to SURFARC_THREADS or 1.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Artifact format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Directory to write artifacts into; stdout when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    /// Check that the configured context is a valid dissection.
    Validate,
    /// Shear coordinate (index) vectors of the probe arcs over the context.
    Shear,
    /// Standardness and co-standardness of the probe arcs.
    Standard,
    /// Flip the configured dissection at one arc.
    Flip,
    /// Breadth-first exchange graph of the context.
    Graph,
    /// Exchange graph connectivity against the enumeration oracle.
    CheckConnected,
    /// Skew-tiling presentation of an admissible context.
    Algebra,
    /// Enumerate arcs, standard arcs and dissections within limits.
    Enumerate,
    /// Run the built-in fixture checks.
    Selftest,
}

impl Command {
    fn name(self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::Shear => "shear",
            Command::Standard => "standard",
            Command::Flip => "flip",
            Command::Graph => "graph",
            Command::CheckConnected => "check-connected",
            Command::Algebra => "algebra",
            Command::Enumerate => "enumerate",
            Command::Selftest => "selftest",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Dot,
    Text,
}

/// A job description as stored in the config file.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct JobConfig {
    pub surface: SurfaceLit,
    #[serde(default)]
    pub r: Vec<ArcLit>,
    /// Optional command name; must match the subcommand when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    /// Probe arcs for shear/standard.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub arcs: Vec<ArcLit>,
    /// The dissection to flip; defaults to the context.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dissection: Option<Vec<ArcLit>>,
    /// The member arc to flip away.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flip_arc: Option<ArcLit>,
    #[serde(default)]
    pub limits: Limits,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct SurfaceLit {
    pub genus: u32,
    pub boundary: Vec<u32>,
    pub punctures: u32,
}

/// A tagged arc literal: corner ends, exit-slot crossing word, end tags.
#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ArcLit {
    pub start: (u32, u8),
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub steps: Vec<(u32, u8)>,
    pub end: (u32, u8),
    #[serde(default = "plain_tags")]
    pub tags: [i8; 2],
}

fn plain_tags() -> [i8; 2] {
    [1, 1]
}

#[derive(Serialize, Deserialize, Debug, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct Limits {
    #[serde(default = "default_max_vertices")]
    pub max_vertices: usize,
    #[serde(default = "default_max_word_length")]
    pub max_word_length: u32,
    #[serde(default = "default_margin")]
    pub bound_stabilization_margin: u32,
}

fn default_max_vertices() -> usize {
    10_000
}
fn default_max_word_length() -> u32 {
    8
}
fn default_margin() -> u32 {
    2
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            max_vertices: default_max_vertices(),
            max_word_length: default_max_word_length(),
            bound_stabilization_margin: default_margin(),
        }
    }
}

/// Failure carrying the process exit code.
#[derive(Debug)]
pub enum CliError {
    /// Exit 2: the config or its arc literals are unusable.
    Config(String),
    /// Exit 3: a search limit was hit; a partial artifact may exist.
    Limit(String),
    /// Exit 4: a structural invariant failed.
    Invariant(String),
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Limit(_) => 3,
            CliError::Invariant(_) => 4,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Limit(m) => write!(f, "limit exceeded: {m}"),
            CliError::Invariant(m) => write!(f, "invariant violation: {m}"),
        }
    }
}

fn cfg_err<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Config(e.to_string())
}

impl ArcLit {
    pub fn to_arc(&self, model: &SurfaceModel) -> Result<TaggedArc, CliError> {
        let curve = Curve::new(
            End::Corner(Corner::new(self.start.0, self.start.1)),
            self.steps.iter().map(|&(t, s)| Slot::new(t, s)).collect(),
            End::Corner(Corner::new(self.end.0, self.end.1)),
        );
        TaggedArc::normalize(model, &curve, self.tags)
            .map_err(|e| CliError::Config(format!("bad arc literal: {e:?}")))
    }

    pub fn from_arc(a: &TaggedArc) -> ArcLit {
        let corner = |e: End| match e {
            End::Corner(c) => (c.tri, c.corner),
            End::Boundary(_) => unreachable!("arcs end at corners"),
        };
        ArcLit {
            start: corner(a.curve.start),
            steps: a.curve.steps.iter().map(|s| (s.tri, s.side)).collect(),
            end: corner(a.curve.end),
            tags: a.tags,
        }
    }
}

/// A loaded job: the model plus the normalized context.
pub struct Job {
    pub config: JobConfig,
    pub model: SurfaceModel,
    pub r_arcs: Vec<TaggedArc>,
}

impl Job {
    pub fn load(path: &Path, cmd: Command) -> Result<Job, CliError> {
        let text = std::fs::read_to_string(path).map_err(cfg_err)?;
        let config: JobConfig = serde_json::from_str(&text).map_err(cfg_err)?;
        if let Some(name) = &config.command {
            if name != cmd.name() {
                return Err(CliError::Config(format!(
                    "config is for command {name}, not {}",
                    cmd.name()
                )));
            }
        }
        if config.limits.max_vertices == 0 || config.limits.max_word_length == 0 {
            return Err(CliError::Config("limits must be positive".into()));
        }
        let spec = SurfaceSpec::new(
            config.surface.genus,
            config.surface.boundary.clone(),
            config.surface.punctures,
        );
        let model = build_surface(&spec).map_err(|e| CliError::Config(format!("{e:?}")))?;
        let r_arcs = config
            .r
            .iter()
            .map(|l| l.to_arc(&model))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Job {
            config,
            model,
            r_arcs,
        })
    }

    pub fn context(&self) -> Result<PartialTaggedTriangulation, CliError> {
        PartialTaggedTriangulation::new(&self.model, self.r_arcs.clone())
            .map_err(|e| CliError::Invariant(format!("context is not a dissection: {e:?}")))
    }
}

/// Where rendered artifacts go.
pub struct Sink {
    out: Option<PathBuf>,
}

impl Sink {
    pub fn new(out: Option<PathBuf>) -> Sink {
        Sink { out }
    }

    /// Write an artifact; under --out the file is named after the command.
    pub fn emit(&self, name: &str, bytes: &str) -> Result<(), CliError> {
        match &self.out {
            None => {
                print!("{bytes}");
                Ok(())
            }
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(cfg_err)?;
                std::fs::write(dir.join(name), bytes).map_err(cfg_err)
            }
        }
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable artifact");
    s.push('\n');
    s
}

// ---------------------------------------------------------------------
// Serializable artifacts.

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ValidateReport {
    pub ok: bool,
    pub rank: i64,
    pub arc_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ShearReport {
    pub entries: Vec<ShearEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ShearEntry {
    pub arc: ArcLit,
    pub standard: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vector: Option<Vec<i64>>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct StandardReport {
    pub entries: Vec<StandardEntry>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct StandardEntry {
    pub arc: ArcLit,
    pub standard: bool,
    pub costandard: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct FlipReport {
    pub arcs: Vec<ArcLit>,
    pub new_arc: ArcLit,
    pub sign: i8,
    pub direction: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct GraphSummary {
    pub vertices: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub regular: Option<usize>,
    pub connected: bool,
    pub truncated: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct GraphArtifact {
    pub summary: GraphSummary,
    pub vertices: Vec<Vec<ArcLit>>,
    pub edges: Vec<EdgeLit>,
    pub depth: Vec<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct EdgeLit {
    pub from: usize,
    pub to: usize,
    pub flipped: ArcLit,
    pub new_arc: ArcLit,
    pub sign: i8,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ConnectedReport {
    pub vertices: usize,
    pub edges: usize,
    pub connected: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle_count: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub count_matches: Option<bool>,
    pub ok: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct AlgebraArtifact {
    pub vertices: usize,
    pub arrows: Vec<ArrowLit>,
    pub special: Vec<String>,
    pub relations: Vec<[String; 2]>,
    pub mode: String,
    pub valid: bool,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct ArrowLit {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
#[serde(rename_all = "camelCase")]
pub struct EnumerateReport {
    pub arc_count: usize,
    pub standard_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dissection_count: Option<usize>,
    pub stable: bool,
    pub arcs: Vec<ArcLit>,
}

// ---------------------------------------------------------------------
// Parallel exchange-graph search.

/// Frontier-parallel BFS over flips.  Each level is expanded with rayon
/// and merged sequentially; the canonical post-sort makes the artifact
/// independent of thread count and discovery order.
pub fn parallel_exchange_graph(
    model: &SurfaceModel,
    r: &PartialTaggedTriangulation,
    limits: GraphLimits,
) -> Result<ExchangeGraph, GraphError> {
    use rayon::prelude::*;

    let mut root = r.arcs.clone();
    root.sort();
    let mut index: BTreeMap<Vec<TaggedArc>, usize> = BTreeMap::new();
    index.insert(root.clone(), 0);
    let mut vertices = vec![root];
    let mut depth = vec![0usize];
    let mut edges: Vec<GraphEdge> = Vec::new();
    let mut frontier = vec![0usize];
    let mut truncated = false;
    let mut level = 0usize;
    while !frontier.is_empty() {
        level += 1;
        let moves: Vec<(usize, Result<surfarc::Flip, FlipError>)> = frontier
            .par_iter()
            .flat_map_iter(|&vi| {
                let u = vertices[vi].clone();
                let model = &model;
                let r = &r;
                u.clone()
                    .into_iter()
                    .map(move |l| (vi, flip(model, r, &u, &l)))
                    .collect::<Vec<_>>()
                    .into_iter()
            })
            .collect();
        let mut next = Vec::new();
        for (vi, f) in moves {
            let f = f.map_err(GraphError::Flip)?;
            let to = match index.get(&f.arcs) {
                Some(&t) => t,
                None => {
                    if vertices.len() >= limits.max_vertices {
                        truncated = true;
                        continue;
                    }
                    let t = vertices.len();
                    index.insert(f.arcs.clone(), t);
                    vertices.push(f.arcs.clone());
                    depth.push(level);
                    next.push(t);
                    t
                }
            };
            let flipped = vertices[vi]
                .iter()
                .find(|a| !f.arcs.contains(a))
                .expect("flip changes one arc")
                .clone();
            edges.push(GraphEdge {
                from: vi,
                to,
                flipped,
                new_arc: f.new_arc,
                sign: f.sign,
            });
        }
        frontier = next;
    }
    let mut order: Vec<usize> = (0..vertices.len()).collect();
    order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
    let mut rank = vec![0usize; order.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let vertices: Vec<Vec<TaggedArc>> = order.iter().map(|&o| vertices[o].clone()).collect();
    let depth: Vec<usize> = order.iter().map(|&o| depth[o]).collect();
    let mut edges: Vec<GraphEdge> = edges
        .into_iter()
        .map(|e| GraphEdge {
            from: rank[e.from],
            to: rank[e.to],
            ..e
        })
        .collect();
    edges.sort_by(|a, b| (a.from, a.to, &a.flipped).cmp(&(b.from, b.to, &b.flipped)));
    let g = ExchangeGraph {
        vertices,
        edges,
        depth,
    };
    if truncated {
        Err(GraphError::LimitExceeded(g))
    } else {
        Ok(g)
    }
}

// ---------------------------------------------------------------------
// Rendering.

fn graph_artifact(g: &ExchangeGraph, truncated: bool) -> GraphArtifact {
    let degrees: Vec<usize> = (0..g.vertices.len()).map(|v| g.degree(v)).collect();
    let regular = match (degrees.iter().min(), degrees.iter().max()) {
        (Some(&lo), Some(&hi)) if lo == hi => Some(lo),
        _ => None,
    };
    let connected = check_connected(g, None).connected;
    GraphArtifact {
        summary: GraphSummary {
            vertices: g.vertices.len(),
            regular,
            connected,
            truncated,
        },
        vertices: g
            .vertices
            .iter()
            .map(|u| u.iter().map(ArcLit::from_arc).collect())
            .collect(),
        edges: g
            .edges
            .iter()
            .map(|e| EdgeLit {
                from: e.from,
                to: e.to,
                flipped: ArcLit::from_arc(&e.flipped),
                new_arc: ArcLit::from_arc(&e.new_arc),
                sign: e.sign,
            })
            .collect(),
        depth: g.depth.clone(),
    }
}

fn graph_dot(g: &ExchangeGraph) -> String {
    let mut s = String::from("graph exchange {\n");
    for v in 0..g.vertices.len() {
        s.push_str(&format!("  {v} [label=\"{v}\"];\n"));
    }
    for e in &g.edges {
        if e.from < e.to {
            s.push_str(&format!("  {} -- {};\n", e.from, e.to));
        }
    }
    s.push_str("}\n");
    s
}

fn graph_text(a: &GraphArtifact) -> String {
    format!(
        "vertices: {}\nregular: {}\nconnected: {}\ntruncated: {}\n",
        a.summary.vertices,
        a.summary
            .regular
            .map_or_else(|| "no".to_string(), |d| d.to_string()),
        a.summary.connected,
        a.summary.truncated
    )
}

// ---------------------------------------------------------------------
// Command implementations.

fn cmd_validate(job: &Job, sink: &Sink, format: Format) -> Result<(), CliError> {
    let report = match PartialTaggedTriangulation::new(&job.model, job.r_arcs.clone()) {
        Ok(r) => ValidateReport {
            ok: true,
            rank: job.model.rank(),
            arc_count: r.arcs.len(),
            error: None,
        },
        Err(e) => ValidateReport {
            ok: false,
            rank: job.model.rank(),
            arc_count: job.r_arcs.len(),
            error: Some(format!("{e:?}")),
        },
    };
    let body = match format {
        Format::Json => to_json(&report),
        _ => format!(
            "ok: {}\nrank: {}\narcs: {}\n",
            report.ok, report.rank, report.arc_count
        ),
    };
    sink.emit("validate.json", &body)?;
    if report.ok {
        Ok(())
    } else {
        Err(CliError::Invariant(report.error.unwrap_or_default()))
    }
}

fn cmd_shear(job: &Job, sink: &Sink, format: Format) -> Result<(), CliError> {
    let r = job.context()?;
    if job.config.arcs.is_empty() {
        return Err(CliError::Config("shear needs probe arcs".into()));
    }
    let mut entries = Vec::new();
    for lit in &job.config.arcs {
        let a = lit.to_arc(&job.model)?;
        let lam = elementary_laminate(&job.model, &a);
        let vector = shear_vector(&job.model, &lam, &r).ok().map(|v| v.entries);
        entries.push(ShearEntry {
            arc: ArcLit::from_arc(&a),
            standard: vector.is_some(),
            vector,
        });
    }
    let report = ShearReport { entries };
    let body = match format {
        Format::Json => to_json(&report),
        _ => {
            let mut s = String::new();
            for e in &report.entries {
                s.push_str(&format!(
                    "standard: {} vector: {:?}\n",
                    e.standard,
                    e.vector.as_deref().unwrap_or(&[])
                ));
            }
            s
        }
    };
    sink.emit("shear.json", &body)
}

fn cmd_standard(job: &Job, sink: &Sink, format: Format) -> Result<(), CliError> {
    let r = job.context()?;
    if job.config.arcs.is_empty() {
        return Err(CliError::Config("standard needs probe arcs".into()));
    }
    let mut entries = Vec::new();
    for lit in &job.config.arcs {
        let a = lit.to_arc(&job.model)?;
        entries.push(StandardEntry {
            arc: ArcLit::from_arc(&a),
            standard: is_standard(&job.model, &a, &r),
            costandard: is_costandard(&job.model, &a, &r),
        });
    }
    let report = StandardReport { entries };
    let body = match format {
        Format::Json => to_json(&report),
        _ => {
            let mut s = String::new();
            for e in &report.entries {
                s.push_str(&format!(
                    "standard: {} costandard: {}\n",
                    e.standard, e.costandard
                ));
            }
            s
        }
    };
    sink.emit("standard.json", &body)
}

fn map_flip_err(e: FlipError) -> CliError {
    match e {
        FlipError::NotMember | FlipError::InvalidDissection => {
            CliError::Config(format!("{e:?}"))
        }
        other => CliError::Invariant(format!("{other:?}")),
    }
}

fn cmd_flip(job: &Job, sink: &Sink, format: Format) -> Result<(), CliError> {
    let r = job.context()?;
    let u: Vec<TaggedArc> = match &job.config.dissection {
        Some(lits) => lits
            .iter()
            .map(|l| l.to_arc(&job.model))
            .collect::<Result<_, _>>()?,
        None => job.r_arcs.clone(),
    };
    let l = job
        .config
        .flip_arc
        .as_ref()
        .ok_or_else(|| CliError::Config("flip needs flipArc".into()))?
        .to_arc(&job.model)?;
    let f = flip(&job.model, &r, &u, &l).map_err(map_flip_err)?;
    let uptt = PartialTaggedTriangulation::new(&job.model, u.clone())
        .map_err(|e| CliError::Config(format!("{e:?}")))?;
    let dir = mutation_direction(&job.model, &r, &uptt, &l).map_err(map_flip_err)?;
    let report = FlipReport {
        arcs: f.arcs.iter().map(ArcLit::from_arc).collect(),
        new_arc: ArcLit::from_arc(&f.new_arc),
        sign: f.sign,
        direction: match dir {
            MutationDirection::Left => "left".into(),
            MutationDirection::Right => "right".into(),
        },
    };
    let body = match format {
        Format::Json => to_json(&report),
        _ => format!("sign: {}\ndirection: {}\n", report.sign, report.direction),
    };
    sink.emit("flip.json", &body)
}

fn run_graph(job: &Job) -> Result<(ExchangeGraph, bool), CliError> {
    let r = job.context()?;
    let limits = GraphLimits {
        max_vertices: job.config.limits.max_vertices,
    };
    match parallel_exchange_graph(&job.model, &r, limits) {
        Ok(g) => Ok((g, false)),
        Err(GraphError::LimitExceeded(g)) => Ok((g, true)),
        Err(GraphError::Flip(e)) => Err(map_flip_err(e)),
    }
}

fn cmd_graph(job: &Job, sink: &Sink, format: Format) -> Result<(), CliError> {
    let (g, truncated) = run_graph(job)?;
    let artifact = graph_artifact(&g, truncated);
    let (name, body) = match format {
        Format::Json => ("graph.json", to_json(&artifact)),
        Format::Dot => ("graph.dot", graph_dot(&g)),
        Format::Text => ("graph.txt", graph_text(&artifact)),
    };
    sink.emit(name, &body)?;
    if truncated {
        Err(CliError::Limit(format!(
            "stopped at {} vertices",
            g.vertices.len()
        )))
    } else {
        Ok(())
    }
}

/// Dissection count by enumeration, with the stabilization margin check.
fn oracle_count(job: &Job, r: &PartialTaggedTriangulation) -> (Option<usize>, bool) {
    let lim = &job.config.limits;
    let short = lim.max_word_length as usize;
    let long = short + lim.bound_stabilization_margin as usize;
    let base = enumerate_standard_arcs(&job.model, r, short);
    let wide = enumerate_standard_arcs(&job.model, r, long);
    if base.len() != wide.len() {
        return (None, false);
    }
    (
        Some(enumerate_dissections(&job.model, r, &base).len()),
        true,
    )
}

fn cmd_check_connected(job: &Job, sink: &Sink, format: Format) -> Result<(), CliError> {
    let r = job.context()?;
    let (g, truncated) = run_graph(job)?;
    let (oracle, _stable) = oracle_count(job, &r);
    let rep = check_connected(&g, oracle);
    let report = ConnectedReport {
        vertices: rep.vertices,
        edges: rep.edges,
        connected: rep.connected,
        oracle_count: rep.oracle_count,
        count_matches: rep.count_matches,
        ok: rep.ok() && !truncated,
    };
    let body = match format {
        Format::Json => to_json(&report),
        _ => format!(
            "vertices: {}\nconnected: {}\noracle: {:?}\nok: {}\n",
            report.vertices, report.connected, report.oracle_count, report.ok
        ),
    };
    sink.emit("check-connected.json", &body)?;
    if truncated {
        return Err(CliError::Limit("graph truncated".into()));
    }
    if !report.ok {
        return Err(CliError::Invariant("graph fails connectivity".into()));
    }
    Ok(())
}

fn cmd_algebra(job: &Job, sink: &Sink, format: Format) -> Result<(), CliError> {
    let r = job.context()?;
    let p = skew_tiling_presentation(&job.model, &r).map_err(|e| match e {
        AlgebraError::NotAdmissible => CliError::Config("context is not admissible".into()),
        other => CliError::Invariant(format!("{other:?}")),
    })?;
    let valid = validate_skew_gentle(&p).is_ok();
    let body = match format {
        Format::Json => {
            let artifact = AlgebraArtifact {
                vertices: p.vertices.len(),
                arrows: p
                    .arrows
                    .iter()
                    .enumerate()
                    .map(|(i, a)| ArrowLit {
                        name: format!("a{i}"),
                        source: a.source,
                        target: a.target,
                    })
                    .collect(),
                special: p.special_loops.iter().map(|l| format!("a{l}")).collect(),
                relations: p
                    .relations
                    .iter()
                    .map(|&[a, b]| [format!("a{a}"), format!("a{b}")])
                    .collect(),
                mode: "skew-tiling".into(),
                valid,
            };
            to_json(&artifact)
        }
        _ => p.to_text(),
    };
    sink.emit("algebra.json", &body)?;
    if valid {
        Ok(())
    } else {
        Err(CliError::Invariant("presentation fails the axioms".into()))
    }
}

fn cmd_enumerate(job: &Job, sink: &Sink, format: Format) -> Result<(), CliError> {
    let lim = &job.config.limits;
    let short = lim.max_word_length as usize;
    let long = short + lim.bound_stabilization_margin as usize;
    let arcs = enumerate_arcs(&job.model, short);
    let wide = enumerate_arcs(&job.model, long);
    let stable = arcs.len() == wide.len();
    let standard_count = if job.r_arcs.is_empty() {
        arcs.len()
    } else {
        let r = job.context()?;
        arcs.iter()
            .filter(|a| is_standard(&job.model, a, &r))
            .count()
    };
    let dissection_count = if job.r_arcs.is_empty() {
        None
    } else {
        let r = job.context()?;
        let std_arcs = enumerate_standard_arcs(&job.model, &r, short);
        Some(enumerate_dissections(&job.model, &r, &std_arcs).len())
    };
    let report = EnumerateReport {
        arc_count: arcs.len(),
        standard_count,
        dissection_count,
        stable,
        arcs: arcs.iter().map(ArcLit::from_arc).collect(),
    };
    let body = match format {
        Format::Json => to_json(&report),
        _ => format!(
            "arcs: {}\nstandard: {}\ndissections: {:?}\nstable: {}\n",
            report.arc_count, report.standard_count, report.dissection_count, report.stable
        ),
    };
    sink.emit("enumerate.json", &body)
}

// ---------------------------------------------------------------------
// Selftest fixtures.

fn fixture(model: &SurfaceModel, lits: &[ArcLit]) -> PartialTaggedTriangulation {
    let arcs: Vec<TaggedArc> = lits
        .iter()
        .map(|l| l.to_arc(model).expect("fixture arc"))
        .collect();
    PartialTaggedTriangulation::new(model, arcs).expect("fixture dissection")
}

fn lit(start: (u32, u8), steps: &[(u32, u8)], end: (u32, u8), tags: [i8; 2]) -> ArcLit {
    ArcLit {
        start,
        steps: steps.to_vec(),
        end,
        tags,
    }
}

fn chart_fan(model: &SurfaceModel) -> Vec<ArcLit> {
    model
        .chart_arcs()
        .into_iter()
        .map(|e| {
            lit(
                (e.tri, e.side),
                &[],
                (e.tri, (e.side + 1) % 3),
                [1, 1],
            )
        })
        .collect()
}

fn selftest_graph(
    spec: SurfaceSpec,
    r_lits: &[ArcLit],
    want_vertices: usize,
    want_degree: usize,
) -> Result<(), String> {
    let model = build_surface(&spec).map_err(|e| format!("{e:?}"))?;
    let r = fixture(&model, r_lits);
    let g = parallel_exchange_graph(&model, &r, GraphLimits::default())
        .map_err(|e| format!("{e:?}"))?;
    if g.vertices.len() != want_vertices {
        return Err(format!(
            "expected {want_vertices} vertices, got {}",
            g.vertices.len()
        ));
    }
    if !g.is_regular(want_degree) {
        return Err(format!("graph is not {want_degree}-regular"));
    }
    if !check_connected(&g, Some(want_vertices)).ok() {
        return Err("graph is not connected".into());
    }
    Ok(())
}

fn punctured_square_context() -> Vec<ArcLit> {
    vec![
        lit((0, 0), &[], (0, 2), [1, 1]),
        lit((0, 0), &[], (0, 2), [1, -1]),
        lit((0, 0), &[(0, 1)], (1, 1), [1, 1]),
        lit((3, 1), &[(3, 2)], (2, 0), [1, 1]),
    ]
}

fn cmd_selftest(sink: &Sink) -> Result<(), CliError> {
    let mut failures = 0;
    let mut lines = String::new();
    let mut check = |name: &str, r: Result<(), String>| {
        match r {
            Ok(()) => lines.push_str(&format!("ok   {name}\n")),
            Err(e) => {
                failures += 1;
                lines.push_str(&format!("FAIL {name}: {e}\n"));
            }
        }
    };
    let hex = SurfaceSpec::new(0, vec![6], 0);
    let hex_model = build_surface(&hex).expect("hexagon");
    check(
        "hexagon graph 14 / 3-regular / connected",
        selftest_graph(hex.clone(), &chart_fan(&hex_model), 14, 3),
    );
    let hept = SurfaceSpec::new(0, vec![7], 0);
    let hept_model = build_surface(&hept).expect("heptagon");
    check(
        "heptagon graph 42 / 4-regular / connected",
        selftest_graph(hept, &chart_fan(&hept_model), 42, 4),
    );
    let ptr = SurfaceSpec::new(0, vec![3], 1);
    let ptr_model = build_surface(&ptr).expect("punctured triangle");
    check(
        "punctured triangle graph 14 / 3-regular / connected",
        selftest_graph(ptr, &chart_fan(&ptr_model), 14, 3),
    );
    check(
        "punctured square graph 50 / 4-regular / connected",
        selftest_graph(
            SurfaceSpec::new(0, vec![4], 1),
            &punctured_square_context(),
            50,
            4,
        ),
    );
    check("pentagon fan presentation", {
        let model = build_surface(&SurfaceSpec::new(0, vec![5], 0)).expect("pentagon");
        let r = fixture(&model, &chart_fan(&model));
        match tiling_presentation(&model, &r) {
            Ok(p) => {
                let want = "vertices: 0 1\narrows: a0: 0 -> 1\nspecial: {}\nrelations: []\n";
                if p.to_text() == want {
                    Ok(())
                } else {
                    Err(format!("unexpected presentation:\n{}", p.to_text()))
                }
            }
            Err(e) => Err(format!("{e:?}")),
        }
    });
    check("punctured square admissible context validates", {
        let model = build_surface(&SurfaceSpec::new(0, vec![4], 1)).expect("square");
        let r = fixture(
            &model,
            &[
                lit((0, 0), &[], (0, 2), [1, 1]),
                lit((0, 0), &[], (0, 2), [1, -1]),
                lit((0, 0), &[(0, 1)], (1, 1), [1, 1]),
            ],
        );
        skew_tiling_presentation(&model, &r)
            .map_err(|e| format!("{e:?}"))
            .and_then(|p| {
                validate_skew_gentle(&p)
                    .map(|_| ())
                    .map_err(|e| format!("{e:?}"))
            })
    });
    check("hexagon flip involution on all moves", {
        let r = fixture(&hex_model, &chart_fan(&hex_model));
        parallel_exchange_graph(&hex_model, &r, GraphLimits::default())
            .map_err(|e| format!("{e:?}"))
            .and_then(|g| {
                for e in &g.edges {
                    let back = flip(&hex_model, &r, &g.vertices[e.to], &e.new_arc)
                        .map_err(|err| format!("{err:?}"))?;
                    if back.arcs != g.vertices[e.from] {
                        return Err("flip is not involutive".into());
                    }
                }
                Ok(())
            })
    });
    sink.emit("selftest.txt", &lines)?;
    if failures == 0 {
        Ok(())
    } else {
        Err(CliError::Invariant(format!("{failures} selftest failures")))
    }
}

// ---------------------------------------------------------------------
// Entry point.

fn thread_count(cli: &Cli) -> usize {
    cli.threads
        .or_else(|| {
            std::env::var("SURFARC_THREADS")
                .ok()
                .and_then(|v| v.parse().ok())
        })
        .unwrap_or(1)
        .max(1)
}

fn run_inner(cli: &Cli) -> Result<(), CliError> {
    let format = cli.format.unwrap_or(Format::Json);
    let sink = Sink::new(cli.out.clone());
    if cli.command == Command::Selftest {
        return cmd_selftest(&sink);
    }
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Config("--config is required".into()))?;
    let job = Job::load(path, cli.command)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count(cli))
        .build()
        .map_err(cfg_err)?;
    pool.install(|| match cli.command {
        Command::Validate => cmd_validate(&job, &sink, format),
        Command::Shear => cmd_shear(&job, &sink, format),
        Command::Standard => cmd_standard(&job, &sink, format),
        Command::Flip => cmd_flip(&job, &sink, format),
        Command::Graph => cmd_graph(&job, &sink, format),
        Command::CheckConnected => cmd_check_connected(&job, &sink, format),
        Command::Algebra => cmd_algebra(&job, &sink, format),
        Command::Enumerate => cmd_enumerate(&job, &sink, format),
        Command::Selftest => unreachable!(),
    })
}

/// Run the CLI with arguments from the environment; returns the process
/// exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let start = std::time::Instant::now();
    let result = run_inner(&cli);
    eprintln!(
        "{}: {} ms",
        cli.command.name(),
        start.elapsed().as_millis()
    );
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("{e}");
            e.code()
        }
    }
}
