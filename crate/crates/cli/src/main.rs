//! Batch driver for the kernel: evaluate families, run check suites, emit
//! rescaled limits, holonomy reports, and plot data.
//!
//! Exit codes: 0 success, 1 failed checks, 2 usage errors (including
//! unknown families/schemes), 3 internal errors. The default tolerance is
//! overridable through the `TRANSITION_LAB_TOL` environment variable.

use clap::{Args, Parser, Subcommand, ValueEnum};
use std::path::PathBuf;
use std::process::ExitCode;
use transition_lab::acceptance::run_all;
use transition_lab::gallery::{
    family_names, make_family, pairing_scheme, scheme_names, GalleryError,
};
use transition_lab::holonomy::{detect_singularity, holonomy, LoopWord, Singularity};
use transition_lab::param::{RescaleKind, Side};
use transition_lab::polytope::{adjacency, enumerate_vertices};
use transition_lab::report::{
    family_check_report, family_limit_report, fmt_float, report_to_json,
};

#[derive(Parser)]
#[command(
    name = "transition-lab",
    version,
    about = "Polytope families in projective models, their rescaled limits, and the checks behind them"
)]
struct Cli {
    /// Seed for the sampling oracles.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum RescaleArg {
    Gamma,
    Eta,
}

impl From<RescaleArg> for RescaleKind {
    fn from(r: RescaleArg) -> RescaleKind {
        match r {
            RescaleArg::Gamma => RescaleKind::Gamma,
            RescaleArg::Eta => RescaleKind::Eta,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    Pos,
    Neg,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::Pos => Side::Pos,
            SideArg::Neg => Side::Neg,
        }
    }
}

#[derive(Args)]
struct CheckArgs {
    /// Family name (see `list`).
    family: String,
    /// Deformation parameter.
    #[arg(long, allow_negative_numbers = true)]
    t: f64,
    /// Re-run the enumeration over ℚ(√2); `t` must be a small rational.
    #[arg(long)]
    exact: bool,
    /// Also include the rescaled limits of this kind in the report.
    #[arg(long)]
    limits: Option<RescaleArg>,
}

#[derive(Subcommand)]
enum Command {
    /// List the catalog families and pairing schemes.
    List,
    /// Evaluate a family at a parameter, run its checks, print the report
    /// as canonical JSON.
    Check(CheckArgs),
    /// One-sided rescaled limits of a family's walls.
    Limit {
        family: String,
        #[arg(long, value_enum)]
        rescale: RescaleArg,
        #[arg(long, value_enum, default_value = "pos")]
        side: SideArg,
    },
    /// Holonomy of a word in a pairing scheme's generators.
    Holonomy {
        scheme: String,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Comma-separated generator word, e.g. "lr,tb,lr^-1,tb^-1";
        /// defaults to the commutator of the first two generators.
        #[arg(long = "loop")]
        word: Option<String>,
    },
    /// Run the full acceptance suite; one line per criterion.
    Suite,
    /// Write CSV plot data (vertices and edge traces in the affine chart).
    Plot {
        family: String,
        #[arg(long, allow_negative_numbers = true)]
        t: f64,
        /// Chart normalization coordinate; only "x0" is supported.
        #[arg(long, default_value = "x0")]
        chart: String,
        #[arg(long)]
        out: PathBuf,
    },
}

fn tolerance() -> Result<f64, String> {
    match std::env::var("TRANSITION_LAB_TOL") {
        Ok(v) => v
            .parse::<f64>()
            .map_err(|_| format!("TRANSITION_LAB_TOL={v:?} is not a number")),
        Err(_) => Ok(transition_lab::DEFAULT_TOL),
    }
}

/// Distinguish bad user input (exit 2) from real failures.
fn is_usage(e: &GalleryError) -> bool {
    matches!(
        e,
        GalleryError::UnknownFamily(_)
            | GalleryError::UnknownScheme(_)
            | GalleryError::UnknownWall { .. }
            | GalleryError::NoBranch { .. }
            | GalleryError::Param(transition_lab::param::ParamError::OutsideDomain { .. })
    )
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let tol = match tolerance() {
        Ok(t) => t,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let code = match run(cli, tol) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("check failure: {msg}");
            1
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            3
        }
    };
    ExitCode::from(code)
}

enum CliError {
    Usage(String),
    Failed(String),
    Internal(String),
}

impl From<GalleryError> for CliError {
    fn from(e: GalleryError) -> Self {
        if is_usage(&e) {
            CliError::Usage(e.to_string())
        } else {
            CliError::Internal(e.to_string())
        }
    }
}

fn run(cli: Cli, tol: f64) -> Result<u8, CliError> {
    match cli.command {
        Command::List => {
            println!("families:");
            for name in family_names() {
                let fam = make_family(name).map_err(CliError::from)?;
                println!(
                    "  {name} (dim {}, {} walls, {}/{})",
                    fam.dim,
                    fam.labels.len(),
                    fam.geometry_neg.label(),
                    fam.geometry_pos.label(),
                );
            }
            println!("pairing schemes:");
            for name in scheme_names() {
                let s = pairing_scheme(name).map_err(CliError::from)?;
                let gens: Vec<&str> = s.pairings.iter().map(|p| p.label.as_str()).collect();
                println!("  {name} (family {}, generators {})", s.family, gens.join(","));
            }
            Ok(0)
        }
        Command::Check(args) => {
            let mut report = family_check_report(&args.family, args.t, args.exact, cli.seed, tol)
                .map_err(CliError::from)?;
            if let Some(kind) = args.limits {
                report.limits = Some(
                    family_limit_report(&args.family, kind.into(), Side::Pos)
                        .map_err(CliError::from)?,
                );
            }
            println!("{}", report_to_json(&report));
            if report.all_checks_pass() {
                Ok(0)
            } else {
                Err(CliError::Failed(format!(
                    "{} of {} checks failed",
                    report.checks.iter().filter(|c| !c.passed).count(),
                    report.checks.len()
                )))
            }
        }
        Command::Limit {
            family,
            rescale,
            side,
        } => {
            let fam = make_family(&family).map_err(CliError::from)?;
            let lr = family_limit_report(&family, rescale.into(), side.into())
                .map_err(CliError::from)?;
            println!(
                "# rescaled limits of {family} under {} (side {}) — {}",
                lr.rescale, lr.side, fam.provenance
            );
            for w in &lr.walls {
                let coeffs: Vec<String> = w.coeffs.iter().map(|c| format!("{c:.12}")).collect();
                println!(
                    "{:>6} : ({}){}",
                    w.label,
                    coeffs.join(" : "),
                    if w.degenerate { "  [degenerate]" } else { "" }
                );
            }
            println!("# {} projectively distinct limit walls", lr.distinct.len());
            Ok(0)
        }
        Command::Holonomy { scheme, t, word } => {
            let s = pairing_scheme(&scheme).map_err(CliError::from)?;
            let fam = make_family(&s.family).map_err(CliError::from)?;
            let word = match word {
                Some(w) => LoopWord::parse(&w).map_err(CliError::Usage)?,
                None => {
                    if s.pairings.len() < 2 {
                        return Err(CliError::Usage(
                            "scheme has fewer than two generators; pass --loop".into(),
                        ));
                    }
                    LoopWord::commutator(&s.pairings[0].label, &s.pairings[1].label)
                }
            };
            let h = holonomy(&word, s, t, tol).map_err(|e| CliError::Internal(e.to_string()))?;
            let geometry = fam.geometry(t);
            println!("# holonomy of {:?} in {scheme} at t = {t}", word.0);
            for i in 0..h.dim() {
                let row: Vec<String> = (0..h.dim())
                    .map(|j| format!("{:+.12}", h.matrix()[(i, j)]))
                    .collect();
                println!("  [{}]", row.join(", "));
            }
            let sing = detect_singularity(&h, geometry, tol);
            match &sing {
                Singularity::Trivial => println!("classification: trivial"),
                Singularity::Cone { angle } => {
                    println!("classification: cone, rotation angle {angle:.12}")
                }
                Singularity::HpCone { magnitude } => println!(
                    "classification: half-pipe cone, translation magnitude {magnitude:.12} \
                     (Minkowski length convention)"
                ),
                Singularity::Other { descriptor } => {
                    println!("classification: other ({descriptor})")
                }
            }
            Ok(0)
        }
        Command::Suite => {
            let outcomes = run_all(cli.seed);
            let mut failed = 0;
            for c in &outcomes {
                println!(
                    "criterion {:2} [{}] {} — {}",
                    c.id,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.title,
                    c.detail
                );
                if !c.passed {
                    failed += 1;
                }
            }
            println!(
                "{} of {} criteria passed",
                outcomes.len() - failed,
                outcomes.len()
            );
            Ok(if failed == 0 { 0 } else { 1 })
        }
        Command::Plot {
            family,
            t,
            chart,
            out,
        } => {
            if chart != "x0" {
                return Err(CliError::Usage(format!(
                    "unsupported chart {chart:?}; only \"x0\" is available"
                )));
            }
            let csv = plot_csv(&family, t, tol).map_err(CliError::from)?;
            std::fs::write(&out, csv)
                .map_err(|e| CliError::Internal(format!("writing {}: {e}", out.display())))?;
            eprintln!("wrote {}", out.display());
            Ok(0)
        }
    }
}

/// CSV rows `object,kind,x0,x1,x2,x3,x4`: polytope vertices and sampled
/// edge chords in the affine chart (chords are geodesics in the projective
/// model).
fn plot_csv(family: &str, t: f64, tol: f64) -> Result<String, GalleryError> {
    let fam = make_family(family)?;
    let p = fam.polytope_at(t, tol)?;
    let vs = enumerate_vertices(&p, tol.max(1e-9))?;
    let adj = adjacency(&p, &vs, 1e-7);
    let mut csv = String::from("object,kind,x0,x1,x2,x3,x4\n");
    let push_row = |csv: &mut String, object: &str, kind: &str, coords: &[f64]| {
        let mut cols: Vec<String> = coords.iter().map(|c| fmt_float(*c)).collect();
        while cols.len() < 5 {
            cols.push(String::new());
        }
        csv.push_str(&format!("{object},{kind},{}\n", cols.join(",")));
    };
    let all: Vec<_> = vs.all().collect();
    for (i, v) in all.iter().enumerate() {
        let c = v.point.canonical();
        let kind = if (transition_lab::forms::eval_form(&p.point_form(), c.coords()).unwrap())
            .abs()
            < 1e-8
        {
            "ideal_vertex"
        } else {
            "vertex"
        };
        match c.chart() {
            Some(chart) => {
                let mut coords = vec![1.0];
                coords.extend(chart);
                push_row(&mut csv, &format!("v{i}"), kind, &coords);
            }
            None => push_row(&mut csv, &format!("v{i}"), "direction", c.coords()),
        }
    }
    // Edge traces: chords between vertex pairs are geodesics of the model
    // in this chart. In the plane each wall is itself an edge; in higher
    // dimension the codimension-2 faces come from adjacent wall pairs.
    let chords: Vec<(String, usize, usize)> = if p.dim() == 2 {
        p.walls()
            .iter()
            .enumerate()
            .filter_map(|(wi, w)| {
                let on_wall: Vec<usize> = all
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| v.incident_walls.contains(&wi))
                    .map(|(k, _)| k)
                    .collect();
                (on_wall.len() >= 2).then(|| (w.label.clone(), on_wall[0], on_wall[1]))
            })
            .collect()
    } else {
        adj.iter()
            .filter_map(|&(a, b)| {
                let shared: Vec<usize> = all
                    .iter()
                    .enumerate()
                    .filter(|(_, v)| {
                        v.incident_walls.contains(&a) && v.incident_walls.contains(&b)
                    })
                    .map(|(k, _)| k)
                    .collect();
                (shared.len() >= 2).then(|| {
                    (
                        format!("{}|{}", p.walls()[a].label, p.walls()[b].label),
                        shared[0],
                        shared[1],
                    )
                })
            })
            .collect()
    };
    for (object, ia, ib) in chords {
        let pa = all[ia].point.canonical();
        let pb = all[ib].point.canonical();
        let samples = 16;
        for k in 0..=samples {
            let s = k as f64 / samples as f64;
            let coords: Vec<f64> = pa
                .coords()
                .iter()
                .zip(pb.coords())
                .map(|(x, y)| (1.0 - s) * x + s * y)
                .collect();
            let x0 = coords[0];
            if x0.abs() < 1e-9 {
                continue;
            }
            let chart: Vec<f64> = coords.iter().map(|c| c / x0).collect();
            push_row(&mut csv, &object, "edge", &chart);
        }
    }
    Ok(csv)
}
