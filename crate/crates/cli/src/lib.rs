pub mod report;
pub mod svg;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use pfh_core::cylinder::{
    cd_filtration_pages, differential, dual_differential, e_generator, verify_theorem_cylinder, CylinderProblem,
};
use pfh_core::surface::{build_delta0, verify_surface};
use pfh_core::torus::{delta0, eh_filtration_pages, verify_lemma_eta0, wrapping_check};
use pfh_core::{suite, Bound, Error, OrbitSet, SpectralPages, SurfaceConfig, SurfaceKind, TorusSector};

use report::Report;
use svg::{render_svg, Figure};

#[derive(Parser, Debug)]
#[command(name = "pfh", version, about = "Chain complexes for periodic Floer homology of Dehn twists over F2")]
pub struct Cli {
    /// Write a JSON report here.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// The rounding complex of a cylinder window.
    Cylinder {
        #[command(flatten)]
        window: Window,
        /// Draw the E path and its parallelogram.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        #[arg(value_enum, default_value = "homology")]
        action: CylinderAction,
    },
    /// The wrapping-zero complex of a torus sector.
    Torus {
        #[arg(long)]
        n: i64,
        #[arg(long)]
        d: i64,
        #[arg(long, default_value_t = 0)]
        sector: i64,
        #[arg(value_enum, default_value = "homology")]
        action: TorusAction,
    },
    /// A single Dehn twist on a closed surface.
    Surface {
        #[command(subcommand)]
        kind: SurfaceCommand,
    },
    /// Run checks.
    Verify {
        #[arg(value_enum)]
        what: VerifyTarget,
    },
    /// Draw lattice paths as SVG.
    Render {
        /// Orbit sets such as "e[1/2]" or "e[1] h[0]"; each becomes a path.
        #[arg(long = "orbits", value_name = "SET", allow_hyphen_values = true)]
        orbits: Vec<String>,
        /// Also draw the E path of this window: `--x1 --x2 --P --Q` together.
        #[arg(long, allow_hyphen_values = true, requires_all = ["x2", "p", "q"])]
        x1: Option<Bound>,
        #[arg(long, allow_hyphen_values = true, requires = "x1")]
        x2: Option<Bound>,
        #[arg(long = "P", allow_hyphen_values = true, requires = "x1")]
        p: Option<i64>,
        #[arg(long = "Q", requires = "x1")]
        q: Option<i64>,
        #[arg(long, value_name = "PATH")]
        svg: PathBuf,
    },
}

#[derive(Args, Debug, Clone)]
pub struct Window {
    /// Left bound, `<int>[/<int>][+eps|-eps]`.
    #[arg(long, allow_hyphen_values = true)]
    pub x1: Bound,
    #[arg(long, allow_hyphen_values = true)]
    pub x2: Bound,
    #[arg(long = "P", allow_hyphen_values = true)]
    pub p: i64,
    #[arg(long = "Q")]
    pub q: i64,
}

#[derive(Subcommand, Debug)]
pub enum SurfaceCommand {
    Nonseparating {
        #[arg(long)]
        g: u32,
        #[arg(long)]
        d: u32,
    },
    Separating {
        #[arg(long)]
        g0: u32,
        #[arg(long)]
        g1: u32,
        #[arg(long)]
        d: u32,
        /// Restrict to one numerator sector.
        #[arg(long)]
        sector: Option<i64>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum CylinderAction {
    Homology,
    Differential,
    Dual,
    Pages,
    Verify,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum TorusAction {
    Homology,
    Pages,
    WrappingCheck,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerifyTarget {
    All,
}

/// Exit codes.
pub const OK: i32 = 0;
pub const CHECK_FAILED: i32 = 1;
pub const USAGE: i32 = 2;

/// Errors from bad input rather than from a broken computation.
fn is_usage(e: &Error) -> bool {
    !matches!(
        e,
        Error::DifferentialNotSquareZero(..) | Error::GradingViolated(..) | Error::FiltrationViolated(..) | Error::BadEntry(..)
    )
}

/// Parses `args` (program name first), runs, and returns the exit code.
/// Normal output goes to `out`, diagnostics to stderr.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { USAGE } else { OK };
            let _ = e.print();
            return code;
        }
    };
    configure_threads();
    match execute(&cli, out) {
        Ok(report) => {
            if let Some(path) = &cli.json {
                if let Err(e) = report.write(path) {
                    eprintln!("error: {e:#}");
                    return CHECK_FAILED;
                }
            }
            if report.all_pass() {
                OK
            } else {
                CHECK_FAILED
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(core) if is_usage(core) => USAGE,
                _ => CHECK_FAILED,
            }
        }
    }
}

/// `PFH_THREADS` caps the worker pool; 0 or unset lets rayon decide.
fn configure_threads() {
    let n = std::env::var("PFH_THREADS").ok().and_then(|s| s.trim().parse::<usize>().ok()).unwrap_or(0);
    if n > 0 {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> anyhow::Result<Report> {
    match &cli.command {
        Command::Cylinder { window, svg, action } => cylinder(window, svg.as_ref(), *action, out),
        Command::Torus { n, d, sector, action } => torus(*n, *d, *sector, *action, out),
        Command::Surface { kind } => surface(kind, out),
        Command::Verify { what: VerifyTarget::All } => verify_all(out),
        Command::Render { orbits, x1, x2, p, q, svg } => {
            let window = match (x1, x2, p, q) {
                (Some(x1), Some(x2), Some(p), Some(q)) => Some(Window { x1: *x1, x2: *x2, p: *p, q: *q }),
                _ => None,
            };
            render(orbits, window.as_ref(), svg, out)
        }
    }
}

fn problem(w: &Window) -> pfh_core::Result<CylinderProblem> {
    CylinderProblem::new(w.x1, w.x2, w.p, w.q)
}

fn print_betti(out: &mut dyn Write, r: &Report) -> anyhow::Result<()> {
    let b: Vec<String> = r.betti.iter().map(|e| format!("{}: {}", e.grade, e.dim)).collect();
    writeln!(out, "{}", r.problem)?;
    writeln!(out, "generators: {}, differential entries: {}", r.generators.len(), r.differential.len())?;
    writeln!(out, "betti: {{{}}}", b.join(", "))?;
    Ok(())
}

fn print_checks(out: &mut dyn Write, r: &Report) -> anyhow::Result<()> {
    for c in &r.checks {
        writeln!(out, "[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.details)?;
    }
    Ok(())
}

fn print_pages(out: &mut dyn Write, pages: &SpectralPages) -> anyhow::Result<()> {
    for r in 1..=pages.pages.len() {
        if r > 1 && pages.page(r) == pages.page(r - 1) {
            writeln!(out, "E{r} onward: same as E{}", r - 1)?;
            break;
        }
        writeln!(out, "E{r}:")?;
        let mut levels: BTreeMap<i64, Vec<String>> = BTreeMap::new();
        for (&(level, grade), &dim) in pages.page(r) {
            if dim > 0 {
                levels.entry(level).or_default().push(format!("{grade}: {dim}"));
            }
        }
        for (level, cells) in levels {
            writeln!(out, "  level {level}: {{{}}}", cells.join(", "))?;
        }
    }
    Ok(())
}

fn cylinder(w: &Window, svg_path: Option<&PathBuf>, action: CylinderAction, out: &mut dyn Write) -> anyhow::Result<Report> {
    let prob = problem(w)?;
    let c = if action == CylinderAction::Dual { dual_differential(&prob)? } else { differential(&prob)? };
    let mut report = Report::new(format!("cylinder {prob}")).with_complex(&c.complex)?;
    match action {
        CylinderAction::Homology | CylinderAction::Dual => print_betti(out, &report)?,
        CylinderAction::Differential => {
            print_betti(out, &report)?;
            for [s, t] in &report.differential {
                writeln!(out, "{} -> {}", report.generators[*s].text, report.generators[*t].text)?;
            }
        }
        CylinderAction::Pages => {
            print_betti(out, &report)?;
            if prob.total_inside() {
                print_pages(out, &cd_filtration_pages(&prob)?)?;
            }
        }
        CylinderAction::Verify => {
            report = report.with_checks(&verify_theorem_cylinder(&prob)?);
            print_betti(out, &report)?;
            print_checks(out, &report)?;
        }
    }
    if let Some(path) = svg_path {
        write_svg(path, &window_figures(&prob)?)?;
    }
    Ok(report)
}

/// The E path of the window with its parallelogram, dashed.
fn window_figures(prob: &CylinderProblem) -> anyhow::Result<Vec<Figure>> {
    let mut figs = Vec::new();
    if !prob.total_inside() {
        return Ok(figs);
    }
    let (x1, x2) = (prob.x1.value, prob.x2.value);
    let to_f = |x: pfh_core::Frac| *x.numer() as f64 / *x.denom() as f64;
    let (p, q) = (prob.p as f64, prob.q as f64);
    // Corner reached from the origin along slope x1, then along x2.
    let t = to_f((pfh_core::Frac::from(prob.p) - x2 * prob.q) / (x1 - x2));
    let (a, b) = (to_f(x1), to_f(x2));
    figs.push(Figure {
        points: vec![(0.0, 0.0), (a * t, t), (p, q), (b * (q - t), q - t), (0.0, 0.0)],
        label: String::new(),
        dashed: true,
    });
    let e = e_generator(prob)?;
    figs.push(Figure::from_path(&e.path(), e.to_string()));
    Ok(figs)
}

fn write_svg(path: &PathBuf, figs: &[Figure]) -> anyhow::Result<()> {
    fs::write(path, render_svg(figs)).with_context(|| format!("writing figure to {}", path.display()))
}

fn torus(n: i64, d: i64, class: i64, action: TorusAction, out: &mut dyn Write) -> anyhow::Result<Report> {
    let s = TorusSector::new(n, d, class)?;
    let t = delta0(&s)?;
    let report = Report::new(format!("torus {s}")).with_complex(&t.complex)?;
    let report = match action {
        TorusAction::Homology => report.with_checks(&verify_lemma_eta0(&s)?),
        TorusAction::Pages => {
            print_betti(out, &report)?;
            print_pages(out, &eh_filtration_pages(&s)?)?;
            return Ok(report);
        }
        TorusAction::WrappingCheck => {
            let w = wrapping_check(&s)?;
            let terms: Vec<String> = w.known_part.iter().map(|a| pfh_core::torus::TorusText(a).to_string()).collect();
            writeln!(out, "known part: {}", if terms.is_empty() { "0".to_string() } else { terms.join(" + ") })?;
            report.with_checks(&w.checks)
        }
    };
    print_betti(out, &report)?;
    print_checks(out, &report)?;
    Ok(report)
}

fn surface(kind: &SurfaceCommand, out: &mut dyn Write) -> anyhow::Result<Report> {
    let (cfg, sector) = match *kind {
        SurfaceCommand::Nonseparating { g, d } => (SurfaceConfig::new(SurfaceKind::Nonseparating { g }, d)?, None),
        SurfaceCommand::Separating { g0, g1, d, sector } => (SurfaceConfig::new(SurfaceKind::Separating { g0, g1 }, d)?, sector),
    };
    let c = build_delta0(&cfg, sector)?;
    let name = match sector {
        Some(p) => format!("surface {cfg} sector {p}"),
        None => format!("surface {cfg}"),
    };
    let mut report = Report::new(name).with_complex(&c.complex)?;
    if sector.is_none() {
        report = report.with_checks(&verify_surface(&cfg)?);
    }
    print_betti(out, &report)?;
    print_checks(out, &report)?;
    Ok(report)
}

fn verify_all(out: &mut dyn Write) -> anyhow::Result<Report> {
    let mut report = Report::new("acceptance suite");
    for r in suite::run_all() {
        writeln!(out, "{}", r.summary())?;
        let checks: Vec<pfh_core::Check> = r
            .checks
            .iter()
            .map(|c| pfh_core::Check { name: format!("criterion {}: {}", r.id, c.name), ..c.clone() })
            .collect();
        report = report.with_checks(&checks);
    }
    Ok(report)
}

fn render(orbits: &[String], window: Option<&Window>, path: &PathBuf, out: &mut dyn Write) -> anyhow::Result<Report> {
    let mut figs = Vec::new();
    let mut name = Vec::new();
    if let Some(w) = window {
        let prob = problem(w)?;
        figs.extend(window_figures(&prob)?);
        name.push(format!("window {prob}"));
    }
    for s in orbits {
        let a: OrbitSet = s.parse()?;
        figs.push(Figure::from_path(&a.path(), a.to_string()));
        name.push(a.to_string());
    }
    write_svg(path, &figs)?;
    writeln!(out, "wrote {} ({} paths)", path.display(), figs.len())?;
    Ok(Report::new(format!("render {}", name.join("; "))))
}
