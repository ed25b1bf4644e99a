//! Command-line front end. Every number printed here comes from a library
//! call; this module only reads files and formats results.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::analysis::{analyze, fmt_f64};
use crate::cy_series::{
    build_q, dim3_normal_criterion_with_tol, hypocycloid_boundary_scaled, region_scale, BoundaryPoint,
};
use crate::error::{Error, Result};
use crate::oracle::{
    build_mesh_relations, build_semipotential_relations, check_against_series, graded_dims, redundant_relations,
    truncated_socle_trivial, DimTable, GradedPresentation, MeshData, OracleInput, SeriesComparison, Semipotential,
    Side, SocleReport,
};
use crate::oracle::parse_rational;
use crate::polyalg::{invert_as_series, MatSeries};
use crate::quiver::{CyDatum, QuiverFile};
use crate::search::{search, SearchBounds, SearchHit};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "cygrowth",
    version,
    about = "Matrix Hilbert series, growth and Calabi-Yau checks for weighted quivers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Truncation degree for series and dimension tables.
    #[arg(long, global = true, default_value_t = 12)]
    pub degree: usize,
    /// Tolerance for floating-point eigenvalue and root tests.
    #[arg(long, global = true, default_value_t = 1e-8)]
    pub tol: f64,
    /// Output format; defaults to csv for `series` and `plot-data`, text otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// q(t), det q, growth class, functional equation and spectral criteria.
    Analyze { quiver: PathBuf },
    /// Coefficients of q(t)^-1 up to --degree.
    Series { quiver: PathBuf },
    /// Compare brute-force graded dimensions of kQ/I with q(t)^-1.
    Check { quiver: PathBuf, relations: PathBuf },
    /// Enumerate small unweighted quivers passing the finite-growth tests.
    Search(SearchArgs),
    /// Hypocycloid boundary samples, optionally with eigenvalues of a quiver.
    PlotData(PlotArgs),
}

#[derive(Debug, Args)]
pub struct SearchArgs {
    #[arg(long, default_value_t = 3)]
    pub dimension: u8,
    #[arg(long, default_value_t = 3)]
    pub max_vertices: usize,
    #[arg(long, default_value_t = 3)]
    pub max_mult: u32,
    #[arg(long, default_value_t = 3)]
    pub ell_min: i64,
    #[arg(long, default_value_t = 4)]
    pub ell_max: i64,
}

#[derive(Debug, Args)]
pub struct PlotArgs {
    /// Hypocycloid order (3 deltoid, 4 astroid); taken from the quiver's ell if omitted.
    #[arg(long, value_parser = clap::value_parser!(u32).range(3..=4))]
    pub k: Option<u32>,
    #[arg(long, default_value_t = 360, value_parser = clap::value_parser!(u64).range(3..))]
    pub samples: u64,
    pub quiver: Option<PathBuf>,
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

fn load_quiver(path: &Path) -> Result<(QuiverFile, CyDatum)> {
    let file = QuiverFile::from_json(&read(path)?)?;
    let cy = file
        .cy
        .clone()
        .ok_or_else(|| Error::InvalidDatum(format!("{}: field \"cy\" is missing", path.display())))?;
    Ok((file, cy))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

pub fn run(cli: &Cli) -> Result<String> {
    if !(cli.tol > 0.0 && cli.tol.is_finite()) {
        return Err(Error::Parse(format!("--tol must be positive, got {}", cli.tol)));
    }
    match &cli.command {
        Command::Analyze { quiver } => cmd_analyze(cli, quiver),
        Command::Series { quiver } => cmd_series(cli, quiver),
        Command::Check { quiver, relations } => cmd_check(cli, quiver, relations),
        Command::Search(args) => cmd_search(cli, args),
        Command::PlotData(args) => cmd_plot_data(cli, args),
    }
}

fn cmd_analyze(cli: &Cli, path: &Path) -> Result<String> {
    let (file, cy) = load_quiver(path)?;
    let a = analyze(&file.quiver, &cy, cli.tol)?;
    Ok(match cli.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&a),
        Format::Text => a.to_text(),
        Format::Csv => {
            let mut s = String::from("field,value\n");
            let g = &a.growth;
            let rows = [
                ("det_q", g.det_q.to_string()),
                ("cyclotomic", g.cyclotomic.to_string()),
                ("growth", g.growth_class.to_string()),
                ("gk_dimension", g.gk_dimension.map_or(String::new(), |d| d.to_string())),
                ("total_series", a.total.series.clone()),
                ("total_eps", a.total.eps.clone()),
                ("functional_equation", a.functional_equation.holds().to_string()),
                (
                    "criterion",
                    a.spectral.as_ref().map_or(String::new(), |r| r.verdict.to_string()),
                ),
            ];
            for (k, v) in rows {
                let _ = writeln!(s, "{k},\"{v}\"");
            }
            s
        }
    })
}

fn series_csv(s: &MatSeries) -> String {
    let mut out = String::from("i,j,n,coeff\n");
    let n = s.size();
    for i in 0..n {
        for j in 0..n {
            for k in 0..=s.degree() {
                let _ = writeln!(out, "{},{},{},{}", i + 1, j + 1, k, s.coeff(i, j, k));
            }
        }
    }
    out
}

fn cmd_series(cli: &Cli, path: &Path) -> Result<String> {
    let (file, cy) = load_quiver(path)?;
    let model = build_q(&file.quiver, &cy)?;
    let s = invert_as_series(&model.q, cli.degree)?;
    Ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => series_csv(&s),
        Format::Json => to_json(&s),
        Format::Text => {
            let mut out = String::new();
            for k in 0..=s.degree() {
                let m = s.coeff_matrix(k);
                let n = s.size();
                let rows: Vec<String> = (0..n)
                    .map(|i| {
                        let r: Vec<String> = m[i * n..(i + 1) * n].iter().map(|c| c.to_string()).collect();
                        format!("[{}]", r.join(", "))
                    })
                    .collect();
                let _ = writeln!(out, "t^{k}: {}", rows.join(" "));
            }
            out
        }
    })
}

#[derive(Debug, Serialize)]
struct CheckReport {
    kind: &'static str,
    relations: Vec<String>,
    table: DimTable,
    comparison: SeriesComparison,
    column_relations_agree: Option<bool>,
    right_socle: SocleReport,
    left_socle: SocleReport,
    redundant_relations: Vec<usize>,
    caveat: &'static str,
}

const CAVEAT: &str = "agreement is certified only up to the truncation degree";

fn cmd_check(cli: &Cli, qpath: &Path, rpath: &Path) -> Result<String> {
    let (file, cy) = load_quiver(qpath)?;
    let quiver = &file.quiver;
    let model = build_q(quiver, &cy)?;
    let input = OracleInput::from_json(&read(rpath)?)?;
    let (kind, pres, cols): (&str, GradedPresentation, Option<GradedPresentation>) = match input {
        OracleInput::Relations(rels) => {
            let rels = rels.iter().map(|r| r.to_relation(quiver)).collect::<Result<Vec<_>>>()?;
            ("relations", GradedPresentation::new(quiver.clone(), rels)?, None)
        }
        OracleInput::Mesh(map) => {
            let tau = MeshData::from_json_map(&map)?;
            ("mesh", build_mesh_relations(quiver, &cy, &tau)?, None)
        }
        OracleInput::Potential(terms) => {
            let terms = terms
                .iter()
                .map(|t| {
                    let path = t
                        .path
                        .iter()
                        .map(|id| {
                            quiver
                                .arrows
                                .iter()
                                .position(|a| &a.id == id)
                                .ok_or_else(|| Error::Parse(format!("potential: unknown arrow id {id:?}")))
                        })
                        .collect::<Result<Vec<_>>>()?;
                    Ok(crate::oracle::Term::new(parse_rational(&t.coeff)?, path))
                })
                .collect::<Result<Vec<_>>>()?;
            let sp = Semipotential::from_potential(quiver, &terms)?;
            let rel = build_semipotential_relations(quiver, &cy, &sp)?;
            ("potential", rel.rows, Some(rel.cols))
        }
    };
    let d = cli.degree;
    let table = graded_dims(&pres, d)?;
    let comparison = check_against_series(&table, &model.q)?;
    let column_relations_agree = match &cols {
        Some(c) => Some(graded_dims(c, d)? == table),
        None => None,
    };
    let report = CheckReport {
        kind,
        relations: pres.relations.iter().map(|r| r.render(quiver)).collect(),
        comparison,
        column_relations_agree,
        right_socle: truncated_socle_trivial(&pres, Side::Right, d)?,
        left_socle: truncated_socle_trivial(&pres, Side::Left, d)?,
        redundant_relations: redundant_relations(&pres, d)?,
        table,
        caveat: CAVEAT,
    };
    Ok(match cli.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&report),
        Format::Csv => report.table.to_csv(),
        Format::Text => check_text(&report),
    })
}

fn socle_line(r: &SocleReport) -> String {
    let side = match r.side {
        Side::Left => "left",
        Side::Right => "right",
    };
    match r.checked_up_to {
        None => format!("{side} socle: no degree checked (degree below the largest arrow weight)"),
        Some(top) if r.trivial => format!("{side} socle: trivial in degrees 0..={top}"),
        Some(top) => {
            let w = &r.witnesses[0];
            format!(
                "{side} socle: nontrivial in degrees 0..={top}; {} witness(es), first {} in e{} A_{} e{}",
                r.witnesses.len(),
                w.element,
                w.source,
                w.degree,
                w.target
            )
        }
    }
}

fn check_text(r: &CheckReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "input: {} ({} relation(s))", r.kind, r.relations.len());
    for rel in &r.relations {
        let _ = writeln!(s, "  {rel}");
    }
    let t = &r.table;
    let totals: Vec<String> = (0..=t.degree).map(|n| t.total(n).to_string()).collect();
    let _ = writeln!(s, "dim A_n for n = 0..={}: {}", t.degree, totals.join(", "));
    match &r.comparison.first_mismatch {
        None if r.comparison.matches => {
            let _ = writeln!(s, "series comparison: match up to degree {}", t.degree);
        }
        None => {
            let _ = writeln!(s, "series comparison: vertex count differs from q(t)");
        }
        Some(m) => {
            let _ = writeln!(
                s,
                "series comparison: mismatch at (i, j, n) = ({}, {}, {}): expected {}, found {}",
                m.i, m.j, m.n, m.expected, m.found
            );
        }
    }
    if let Some(agree) = r.column_relations_agree {
        let _ = writeln!(
            s,
            "row and column relations give equal dimensions: {}",
            if agree { "yes" } else { "no" }
        );
    }
    let _ = writeln!(s, "{}", socle_line(&r.right_socle));
    let _ = writeln!(s, "{}", socle_line(&r.left_socle));
    if r.redundant_relations.is_empty() {
        let _ = writeln!(s, "redundant relations: none");
    } else {
        let _ = writeln!(s, "redundant relations: {:?}", r.redundant_relations);
    }
    let _ = writeln!(s, "note: {}", r.caveat);
    s
}

fn cmd_search(cli: &Cli, a: &SearchArgs) -> Result<String> {
    let mut bounds = SearchBounds::new(a.dimension, a.max_vertices, a.max_mult, a.ell_min, a.ell_max);
    bounds.series_degree = cli.degree;
    let hits = search(&bounds)?;
    Ok(match cli.format.unwrap_or(Format::Text) {
        Format::Json => to_json(&hits),
        Format::Csv => {
            let mut s = String::from("vertices,incidence,mu,ell,det_q,factorization,gk\n");
            for h in &hits {
                let _ = writeln!(
                    s,
                    "{},\"{:?}\",\"{:?}\",{},\"{}\",\"{}\",{}",
                    h.vertices,
                    h.incidence,
                    h.mu,
                    h.ell,
                    h.det_q,
                    h.factorization,
                    h.gk_dimension.map_or(String::new(), |g| g.to_string())
                );
            }
            s
        }
        Format::Text => search_text(&bounds, &hits),
    })
}

fn search_text(b: &SearchBounds, hits: &[SearchHit]) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "search: dimension {}, up to {} vertices, multiplicity <= {}, ell in {}..={}",
        b.dimension, b.max_vertices, b.max_mult, b.ell_min, b.ell_max
    );
    let _ = writeln!(s, "{} candidate(s)", hits.len());
    for h in hits {
        let _ = writeln!(
            s,
            "M = {:?}  mu = {:?}  ell = {}  GK = {}  det q = {}  [{}]",
            h.incidence,
            h.mu,
            h.ell,
            h.gk_dimension.map_or("-".to_string(), |g| g.to_string()),
            h.det_q,
            h.factorization
        );
    }
    s
}

#[derive(Debug, Serialize)]
struct PlotPoint {
    theta: f64,
    re: f64,
    im: f64,
}

#[derive(Debug, Serialize)]
struct Overlay {
    re: f64,
    im: f64,
    verdict: &'static str,
}

#[derive(Debug, Serialize)]
struct PlotData {
    k: u32,
    boundary: Vec<PlotPoint>,
    scaled_boundary: Option<Vec<PlotPoint>>,
    eigenvalues: Vec<Overlay>,
}

fn points(b: Vec<BoundaryPoint>) -> Vec<PlotPoint> {
    b.into_iter()
        .map(|p| PlotPoint {
            theta: p.theta,
            re: p.point.re,
            im: p.point.im,
        })
        .collect()
}

fn cmd_plot_data(cli: &Cli, a: &PlotArgs) -> Result<String> {
    let model = match &a.quiver {
        Some(p) => {
            let (file, cy) = load_quiver(p)?;
            Some(build_q(&file.quiver, &cy)?)
        }
        None => None,
    };
    let model_ell = model.as_ref().and_then(|m| m.cy.ell.first().copied());
    let k = match (a.k, model_ell) {
        (Some(k), Some(l)) if i64::from(k) != l => {
            return Err(Error::InvalidDatum(format!("--k {k} differs from the quiver's ell = {l}")));
        }
        (Some(k), _) => k,
        (None, Some(l)) if l == 3 || l == 4 => l as u32,
        (None, Some(l)) => return Err(Error::InvalidDatum(format!("ell = {l}: no hypocycloid to plot"))),
        (None, None) => return Err(Error::Parse("--k is required without a quiver file".into())),
    };
    let mut eigenvalues = Vec::new();
    if let Some(m) = &model {
        let r = dim3_normal_criterion_with_tol(m, cli.tol);
        for p in &r.eigen_pairs {
            // rotate into the frame of the unrotated region
            let z = p.delta * num_complex::Complex64::from_polar(1.0, -p.zeta.arg() / f64::from(k));
            eigenvalues.push(Overlay {
                re: z.re,
                im: z.im,
                verdict: if p.inside { "inside" } else { "outside" },
            });
        }
    }
    let data = PlotData {
        k,
        boundary: points(hypocycloid_boundary_scaled(k, a.samples as usize, 1.0)),
        scaled_boundary: (region_scale(k) != 1.0)
            .then(|| points(hypocycloid_boundary_scaled(k, a.samples as usize, region_scale(k)))),
        eigenvalues,
    };
    Ok(match cli.format.unwrap_or(Format::Csv) {
        Format::Json => to_json(&data),
        Format::Csv | Format::Text => {
            let mut s = String::new();
            let mut section = |pts: &[PlotPoint]| {
                if !s.is_empty() {
                    s.push('\n');
                }
                s.push_str("theta,re,im\n");
                for p in pts {
                    let _ = writeln!(s, "{:.9},{:.9},{:.9}", p.theta, p.re, p.im);
                }
            };
            section(&data.boundary);
            if let Some(sc) = &data.scaled_boundary {
                section(sc);
            }
            if !data.eigenvalues.is_empty() {
                s.push_str("\nre,im,verdict\n");
                for e in &data.eigenvalues {
                    let _ = writeln!(s, "{},{},{}", fmt_f64(e.re), fmt_f64(e.im), e.verdict);
                }
            }
            s
        }
    })
}

/// Parse arguments, run, print, and return the process exit status.
pub fn main_from_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(&cli) {
        Ok(out) => match &cli.out {
            Some(path) => match std::fs::write(path, out) {
                Ok(()) => 0,
                Err(e) => {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    1
                }
            },
            None => {
                print!("{out}");
                0
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
