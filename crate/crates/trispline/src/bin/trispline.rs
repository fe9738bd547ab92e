//! Command-line front end: mesh ingestion, built-in example meshes, bound
//! and homology computations, the exact-dimension oracle, and table output
//! in text, CSV or JSON.

use std::fmt;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use trispline::bounds::{
    edge_plane_counts, lower_bound, search_orderings, upper_bound, upper_bound_free,
    vertex_plane_counts,
};
use trispline::builtin;
use trispline::forms::{triangle_planes, LinearForm};
use trispline::homology::{assemble_slice, homology_dims, spline_dim_for_slice};
use trispline::mesh::{
    build_face_tables, check_ball_hypothesis, input_edge_ordering, input_vertex_ordering,
    parse_mesh, FaceTables, MeshError, SimplicialComplex3,
};
use trispline::oracle::spline_dim;
use trispline::report::{build_report, MeshData, OrderingStrategy};

#[derive(Parser)]
#[command(
    name = "trispline",
    about = "Exact dimension bounds and homology for piecewise polynomial \
             spaces on tetrahedral partitions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in example mesh in TETMESH format.
    Example {
        /// One of: clough-tocher, octahedron-regular, octahedron-generic.
        name: String,
    },
    /// Print face counts, interiority, per-edge and per-vertex plane counts,
    /// and topological diagnostics.
    Analyze {
        /// Mesh file path, or `builtin:<name>`.
        mesh: String,
    },
    /// Evaluate the lower and upper dimension bounds at one degree.
    Bounds {
        mesh: String,
        #[command(flatten)]
        rk: SmoothnessDegree,
        #[arg(long, value_enum, default_value_t = OrderingArg::Lex)]
        ordering: OrderingArg,
        /// Orderings examined by `--ordering search` (beyond the exhaustive
        /// regime).
        #[arg(long, default_value_t = 5040)]
        budget: usize,
    },
    /// Homology dimensions of the ideal chain complex at one degree.
    Homology {
        mesh: String,
        #[command(flatten)]
        rk: SmoothnessDegree,
    },
    /// Exact spline space dimension from the smoothness constraint system.
    Dim {
        mesh: String,
        #[command(flatten)]
        rk: SmoothnessDegree,
    },
    /// Bounds, homology, and optionally exact dimensions over a degree range.
    Table {
        mesh: String,
        /// Smoothness order.
        #[arg(long)]
        r: u32,
        /// Degree range `A..B` (inclusive) or a single degree.
        #[arg(long)]
        k: String,
        /// Also compute the exact dimension (slow at high degrees).
        #[arg(long)]
        oracle: bool,
        #[arg(long, value_enum, default_value_t = FormatArg::Text)]
        format: FormatArg,
        #[arg(long, value_enum, default_value_t = OrderingArg::Lex)]
        ordering: OrderingArg,
        #[arg(long, default_value_t = 5040)]
        budget: usize,
    },
}

#[derive(Args)]
struct SmoothnessDegree {
    /// Smoothness order.
    #[arg(long)]
    r: u32,
    /// Polynomial degree.
    #[arg(long)]
    k: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum OrderingArg {
    Input,
    Lex,
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Csv,
    Json,
}

/// Error categories surfaced on stderr as `error[category]: ...`; each maps
/// to a distinct exit code.
enum AppError {
    Usage(String),
    Io(String),
    Parse(String),
    Mesh(String),
}

impl AppError {
    fn category(&self) -> &'static str {
        match self {
            Self::Usage(_) => "usage",
            Self::Io(_) => "io",
            Self::Parse(_) => "parse",
            Self::Mesh(_) => "mesh",
        }
    }

    fn exit_code(&self) -> u8 {
        match self {
            Self::Usage(_) => 2,
            Self::Io(_) => 3,
            Self::Parse(_) => 4,
            Self::Mesh(_) => 5,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Usage(m) | Self::Io(m) | Self::Parse(m) | Self::Mesh(m) => write!(f, "{m}"),
        }
    }
}

impl From<MeshError> for AppError {
    fn from(err: MeshError) -> Self {
        match err {
            MeshError::Syntax { .. } => Self::Parse(err.to_string()),
            other => Self::Mesh(other.to_string()),
        }
    }
}

struct LoadedMesh {
    name: String,
    complex: SimplicialComplex3,
    tables: FaceTables,
    forms: Vec<LinearForm>,
}

fn load_mesh(source: &str) -> Result<LoadedMesh, AppError> {
    let text = if let Some(name) = source.strip_prefix("builtin:") {
        builtin::builtin(name).ok_or_else(|| {
            AppError::Usage(format!(
                "unknown builtin `{name}`; available: {}",
                builtin::NAMES.join(", ")
            ))
        })?
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| AppError::Io(format!("cannot read `{source}`: {e}")))?
    };
    let complex = parse_mesh(&text)?;
    let tables = build_face_tables(&complex)?;
    let diag = check_ball_hypothesis(&tables);
    if !diag.pass() {
        eprintln!("warning: mesh may not be a topological ball: {diag}");
    }
    let forms = triangle_planes(&complex, &tables);
    Ok(LoadedMesh {
        name: source.to_string(),
        complex,
        tables,
        forms,
    })
}

fn parse_k_range(text: &str) -> Result<(u32, u32), AppError> {
    let bad = || {
        AppError::Usage(format!(
            "invalid degree range `{text}`; expected `K` or `A..B`"
        ))
    };
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: u32 = lo.parse().map_err(|_| bad())?;
        let hi: u32 = hi.parse().map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        Ok((lo, hi))
    } else {
        let k: u32 = text.parse().map_err(|_| bad())?;
        Ok((k, k))
    }
}

fn strategy(arg: OrderingArg, budget: usize) -> Result<OrderingStrategy, AppError> {
    if budget == 0 {
        return Err(AppError::Usage("budget must be at least 1".into()));
    }
    Ok(match arg {
        OrderingArg::Input => OrderingStrategy::Input,
        OrderingArg::Lex => OrderingStrategy::Lex,
        OrderingArg::Search => OrderingStrategy::Search { budget },
    })
}

fn cmd_example(name: &str) -> Result<(), AppError> {
    let text = builtin::builtin(name).ok_or_else(|| {
        AppError::Usage(format!(
            "unknown builtin `{name}`; available: {}",
            builtin::NAMES.join(", ")
        ))
    })?;
    print!("{text}");
    Ok(())
}

fn cmd_analyze(mesh: &LoadedMesh) -> Result<(), AppError> {
    let tables = &mesh.tables;
    println!("mesh: {}", mesh.name);
    println!(
        "faces      f  = ({}, {}, {}, {})",
        tables.f(0),
        tables.f(1),
        tables.f(2),
        tables.f(3)
    );
    println!(
        "interior   f0 = ({}, {}, {}, {})",
        tables.f0(0),
        tables.f0(1),
        tables.f0(2),
        tables.f0(3)
    );
    let diag = check_ball_hypothesis(tables);
    println!("diagnostics: {diag}");

    let edge_counts = edge_plane_counts(tables, &mesh.forms);
    println!("interior edges ({}):", edge_counts.len());
    for (e, s) in edge_counts {
        let [a, b] = tables.edges()[e];
        println!("  edge ({a}, {b}): s = {s}");
    }
    let vertex_counts = vertex_plane_counts(tables, &mesh.forms);
    println!("interior vertices ({}):", vertex_counts.len());
    for (v, t) in vertex_counts {
        println!("  vertex {}: t = {t}", tables.vertices()[v]);
    }
    Ok(())
}

fn cmd_bounds(
    mesh: &LoadedMesh,
    r: u32,
    k: u32,
    ordering: OrderingArg,
    budget: usize,
) -> Result<(), AppError> {
    let tables = &mesh.tables;
    let forms = &mesh.forms;
    let strategy = strategy(ordering, budget)?;
    println!("mesh: {}  r={r} k={k}  ordering={strategy}", mesh.name);
    match strategy {
        OrderingStrategy::Search { budget } => {
            let result = search_orderings(tables, forms, r, k, budget);
            println!("lower bound        : {}", result.lower);
            println!("upper bound        : {}", result.upper_ordered);
            println!(
                "upper bound (free) : {} ({})",
                result.upper_free, result.freeness
            );
            let edge_keys: Vec<String> = result
                .edge_ordering
                .iter()
                .map(|&e| format!("{:?}", tables.edges()[e]))
                .collect();
            println!("edge ordering      : {}", edge_keys.join(" "));
            let vertex_ids: Vec<String> = result
                .vertex_ordering
                .iter()
                .map(|&v| tables.vertices()[v].to_string())
                .collect();
            println!("vertex ordering    : {}", vertex_ids.join(" "));
        }
        _ => {
            let (edges, vertices) = match strategy {
                OrderingStrategy::Input => (
                    input_edge_ordering(&mesh.complex, tables),
                    input_vertex_ordering(&mesh.complex, tables),
                ),
                _ => (tables.interior_edges(), tables.interior_vertices()),
            };
            println!(
                "lower bound        : {}",
                lower_bound(tables, forms, r, k, &vertices)
            );
            println!(
                "upper bound        : {}",
                upper_bound(tables, forms, r, k, &edges)
            );
            println!(
                "upper bound (free) : {} (unconfirmed)",
                upper_bound_free(tables, forms, r, k)
            );
        }
    }
    Ok(())
}

fn cmd_homology(mesh: &LoadedMesh, r: u32, k: u32) -> Result<(), AppError> {
    let slice = assemble_slice(&mesh.tables, &mesh.forms, r, k);
    let (h0, h1, h2) = homology_dims(&slice);
    println!("mesh: {}  r={r} k={k}", mesh.name);
    println!(
        "ideal piece dims: triangles={} edges={} vertices={}",
        slice.triangle_dim_sum(),
        slice.edge_dim_sum(),
        slice.vertex_dim_sum()
    );
    println!("h0 = {h0}");
    println!("h1 = {h1}");
    println!("h2 = {h2}");
    println!("spline dimension via h2 = {}", spline_dim_for_slice(&slice));
    Ok(())
}

fn cmd_dim(mesh: &LoadedMesh, r: u32, k: u32) -> Result<(), AppError> {
    println!("{}", spline_dim(&mesh.tables, &mesh.forms, r, k));
    Ok(())
}

fn cmd_table(
    mesh: &LoadedMesh,
    r: u32,
    k: &str,
    oracle: bool,
    format: FormatArg,
    ordering: OrderingArg,
    budget: usize,
) -> Result<(), AppError> {
    let k_range = parse_k_range(k)?;
    let strategy = strategy(ordering, budget)?;
    let report = build_report(
        &MeshData {
            name: &mesh.name,
            complex: &mesh.complex,
            tables: &mesh.tables,
            forms: &mesh.forms,
        },
        r,
        k_range,
        strategy,
        oracle,
    );
    match format {
        FormatArg::Text => print!("{}", report.to_text()),
        FormatArg::Csv => print!("{}", report.to_csv()),
        FormatArg::Json => println!("{}", report.to_json()),
    }
    Ok(())
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.command {
        Command::Example { name } => cmd_example(&name),
        Command::Analyze { mesh } => cmd_analyze(&load_mesh(&mesh)?),
        Command::Bounds {
            mesh,
            rk,
            ordering,
            budget,
        } => cmd_bounds(&load_mesh(&mesh)?, rk.r, rk.k, ordering, budget),
        Command::Homology { mesh, rk } => cmd_homology(&load_mesh(&mesh)?, rk.r, rk.k),
        Command::Dim { mesh, rk } => cmd_dim(&load_mesh(&mesh)?, rk.r, rk.k),
        Command::Table {
            mesh,
            r,
            k,
            oracle,
            format,
            ordering,
            budget,
        } => cmd_table(&load_mesh(&mesh)?, r, &k, oracle, format, ordering, budget),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error[{}]: {err}", err.category());
            ExitCode::from(err.exit_code())
        }
    }
}
