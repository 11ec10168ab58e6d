//! Structured reports for the batch driver, with a canonical JSON emitter.
//!
//! The emitter is deterministic: keys appear in a fixed order and every
//! float is written with 17 significant digits in exponent form, so parsing
//! a report and re-emitting it reproduces the bytes.

use crate::forms::{pairing, DualHalfSpace};
use crate::gallery::{make_family, stated_symmetries, preserves_wall_set, GalleryError};
use crate::param::{RescaleKind, Side};
use crate::polytope::{
    adjacency, enumerate_vertices, gram_matrix, wall_relation, WallRelation,
};
use crate::scalar::Rational;
use std::fmt::Write as _;

#[derive(Debug, Clone)]
pub struct WallReport {
    pub label: String,
    pub coeffs: Vec<f64>,
    pub dual_norm: f64,
}

#[derive(Debug, Clone)]
pub struct VertexReport {
    pub kind: &'static str, // "finite" | "ideal" | "hyperideal"
    pub coords: Vec<f64>,
    pub incident_walls: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct AngleReport {
    pub walls: (usize, usize),
    pub kind: String,
    pub value: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    pub tolerance: f64,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct LimitWallReport {
    pub label: String,
    pub coeffs: Vec<f64>,
    pub degenerate: bool,
}

#[derive(Debug, Clone)]
pub struct LimitReport {
    pub rescale: String,
    pub side: String,
    pub walls: Vec<LimitWallReport>,
    /// Projectively distinct limit walls.
    pub distinct: Vec<Vec<f64>>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub family: String,
    pub t: f64,
    pub geometry: String,
    pub exact: bool,
    pub seed: u64,
    pub tolerance: f64,
    pub provenance: String,
    pub walls: Vec<WallReport>,
    pub vertices: Vec<VertexReport>,
    pub adjacency: Vec<(usize, usize)>,
    pub angles: Vec<AngleReport>,
    pub orthogonality: Vec<Vec<f64>>,
    pub limits: Option<LimitReport>,
    pub checks: Vec<CheckReport>,
}

impl Report {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Build the check report for a catalog family at parameter `t`.
#[allow(clippy::needless_range_loop)]
pub fn family_check_report(
    name: &str,
    t: f64,
    exact: bool,
    seed: u64,
    tol: f64,
) -> Result<Report, GalleryError> {
    let fam = make_family(name)?;
    let poly = fam.polytope_at(t, tol)?;
    let geometry = poly.geometry();
    let dual = poly.dual_form();

    let mut checks: Vec<CheckReport> = Vec::new();

    let walls: Vec<WallReport> = poly
        .walls()
        .iter()
        .map(|w| {
            let c = w.half_space.canonical();
            WallReport {
                label: w.label.clone(),
                coeffs: c.coeffs().to_vec(),
                dual_norm: pairing(&dual, w.half_space.coeffs(), w.half_space.coeffs())
                    .map(|v| {
                        let s: f64 = w.half_space.coeffs().iter().map(|x| x * x).sum();
                        v / s
                    })
                    .unwrap_or(f64::NAN),
            }
        })
        .collect();

    // Vertices: exact mode recomputes over ℚ(√2) when the parameter is
    // rational and every radical stays in the field.
    let vs = enumerate_vertices(&poly, tol)?;
    let mut vertices = Vec::new();
    let mut max_residual: f64 = 0.0;
    for (kind, list) in [
        ("finite", &vs.finite),
        ("ideal", &vs.ideal),
        ("hyperideal", &vs.hyperideal),
    ] {
        for v in list {
            let c = v.point.canonical();
            for &wi in &v.incident_walls {
                let r = poly.walls()[wi].half_space.evaluate(c.coords()).abs();
                max_residual = max_residual.max(r);
            }
            vertices.push(VertexReport {
                kind,
                coords: c.coords().to_vec(),
                incident_walls: v.incident_walls.clone(),
            });
        }
    }
    checks.push(CheckReport {
        name: "vertex_residuals".into(),
        passed: max_residual < 1e-10,
        tolerance: 1e-10,
        detail: format!("max |α(v)| over incident walls = {max_residual:.3e}"),
    });

    if exact {
        match approx_rational(t) {
            Some(tr) => match fam.polytope_at_exact(tr) {
                Ok(pe) => {
                    let evs = enumerate_vertices(&pe, 0.0)?;
                    checks.push(CheckReport {
                        name: "exact_vertex_count".into(),
                        passed: evs.count() == vs.count(),
                        tolerance: 0.0,
                        detail: format!(
                            "exact enumeration finds {} vertices, float finds {}",
                            evs.count(),
                            vs.count()
                        ),
                    });
                }
                Err(e) => checks.push(CheckReport {
                    name: "exact_vertex_count".into(),
                    passed: false,
                    tolerance: 0.0,
                    detail: format!("{e}"),
                }),
            },
            None => checks.push(CheckReport {
                name: "exact_vertex_count".into(),
                passed: false,
                tolerance: 0.0,
                detail: format!("t = {t} is not rational; exact mode unavailable"),
            }),
        }
    }

    let adj = adjacency(&poly, &vs, tol.max(1e-8));
    let mut angles = Vec::new();
    let mut right_angle_residual: f64 = 0.0;
    let mut right_angles = 0usize;
    for &(i, j) in &adj {
        let rel = wall_relation(
            &dual,
            &poly.walls()[i].half_space,
            &poly.walls()[j].half_space,
            tol,
        );
        let (kind, value) = match rel {
            Ok(WallRelation::Angle {
                theta,
                normalized_pairing,
            }) => {
                if normalized_pairing.abs() < 1e-6 {
                    right_angles += 1;
                    right_angle_residual = right_angle_residual.max(normalized_pairing.abs());
                }
                ("angle".to_string(), Some(theta))
            }
            Ok(WallRelation::AsymptoticallyParallel { .. }) => {
                ("asymptotically_parallel".to_string(), None)
            }
            Ok(WallRelation::Ultraparallel { distance }) => {
                ("ultraparallel".to_string(), Some(distance))
            }
            Ok(WallRelation::TimelikeSeparation { distance }) => {
                ("timelike_separation".to_string(), Some(distance))
            }
            Ok(WallRelation::Mixed { pairing }) => ("mixed".to_string(), Some(pairing)),
            Err(_) => ("degenerate".to_string(), None),
        };
        angles.push(AngleReport {
            walls: (i, j),
            kind,
            value,
        });
    }
    if right_angles > 0 {
        checks.push(CheckReport {
            name: "right_angle_residuals".into(),
            passed: right_angle_residual < 1e-10,
            tolerance: 1e-10,
            detail: format!(
                "{right_angles} right angles, max |normalized pairing| = {right_angle_residual:.3e}"
            ),
        });
    }

    // Raw dual pairings.
    let k = poly.walls().len();
    let mut orth = vec![vec![0.0; k]; k];
    for i in 0..k {
        for j in 0..k {
            orth[i][j] = pairing(
                &dual,
                poly.walls()[i].half_space.coeffs(),
                poly.walls()[j].half_space.coeffs(),
            )
            .unwrap_or(f64::NAN);
        }
    }

    // Stated symmetries.
    let syms = stated_symmetries(name)?;
    if !syms.is_empty() {
        let ok = syms
            .iter()
            .map(|m| preserves_wall_set(fam, t, m, tol.max(1e-9)))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .all(|b| b);
        checks.push(CheckReport {
            name: "stated_symmetries".into(),
            passed: ok,
            tolerance: tol.max(1e-9),
            detail: format!("{} coordinate symmetries preserve the wall set", syms.len()),
        });
    }

    // Gram against itself sanity (identity permutation exists).
    let _ = gram_matrix(&poly);

    Ok(Report {
        family: name.to_string(),
        t,
        geometry: geometry.label().to_string(),
        exact,
        seed,
        tolerance: tol,
        provenance: fam.provenance.clone(),
        walls,
        vertices,
        adjacency: adj,
        angles,
        orthogonality: orth,
        limits: None,
        checks,
    })
}

/// Build the limit report for a family under a rescaling.
pub fn family_limit_report(
    name: &str,
    kind: RescaleKind,
    side: Side,
) -> Result<LimitReport, GalleryError> {
    let fam = make_family(name)?;
    let mut walls = Vec::new();
    let mut distinct: Vec<DualHalfSpace<f64>> = Vec::new();
    for label in &fam.labels {
        let lim = fam.wall_limit(label, kind, side)?;
        let canonical = lim.wall.canonical();
        let degenerate = match kind {
            RescaleKind::Eta => {
                crate::halfpipe::hp_wall_is_degenerate(&canonical, 1e-10)
            }
            RescaleKind::Gamma => false,
        };
        if !distinct.iter().any(|d| d.approx_eq(&canonical, 1e-10)) {
            distinct.push(canonical.clone());
        }
        walls.push(LimitWallReport {
            label: label.clone(),
            coeffs: canonical.coeffs().to_vec(),
            degenerate,
        });
    }
    Ok(LimitReport {
        rescale: match kind {
            RescaleKind::Gamma => "gamma".into(),
            RescaleKind::Eta => "eta".into(),
        },
        side: match side {
            Side::Pos => "pos".into(),
            Side::Neg => "neg".into(),
        },
        walls,
        distinct: distinct.into_iter().map(|d| d.coeffs().to_vec()).collect(),
    })
}

/// Parse a float that is an exact small rational, for exact-mode requests.
pub fn approx_rational(t: f64) -> Option<Rational> {
    for den in 1..=64i128 {
        let num = (t * den as f64).round() as i128;
        if (num as f64 / den as f64 - t).abs() < 1e-15 {
            return Some(Rational::new(num, den));
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Canonical JSON
// ---------------------------------------------------------------------------

/// 17-significant-digit float formatting; reparsing recovers the bits.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn esc(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\t' => out.push_str("\\t"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 => {
                let _ = write!(out, "\\u{:04x}", c as u32);
            }
            c => out.push(c),
        }
    }
    out
}

struct Json {
    buf: String,
}

impl Json {
    fn new() -> Self {
        Json { buf: String::new() }
    }
    fn raw(&mut self, s: &str) {
        self.buf.push_str(s);
    }
    fn string(&mut self, s: &str) {
        let _ = write!(self.buf, "\"{}\"", esc(s));
    }
    fn float(&mut self, x: f64) {
        self.buf.push_str(&fmt_float(x));
    }
    fn int(&mut self, x: usize) {
        let _ = write!(self.buf, "{x}");
    }
    fn bool(&mut self, b: bool) {
        self.buf.push_str(if b { "true" } else { "false" });
    }
    fn float_array(&mut self, xs: &[f64]) {
        self.raw("[");
        for (i, x) in xs.iter().enumerate() {
            if i > 0 {
                self.raw(",");
            }
            self.float(*x);
        }
        self.raw("]");
    }
    fn int_array(&mut self, xs: &[usize]) {
        self.raw("[");
        for (i, x) in xs.iter().enumerate() {
            if i > 0 {
                self.raw(",");
            }
            self.int(*x);
        }
        self.raw("]");
    }
}

/// Serialize a report with canonical key order and float formatting.
pub fn report_to_json(r: &Report) -> String {
    let mut j = Json::new();
    j.raw("{");
    j.raw("\"family\":");
    j.string(&r.family);
    j.raw(",\"t\":");
    j.float(r.t);
    j.raw(",\"geometry\":");
    j.string(&r.geometry);
    j.raw(",\"exact\":");
    j.bool(r.exact);
    j.raw(",\"seed\":");
    j.int(r.seed as usize);
    j.raw(",\"tolerance\":");
    j.float(r.tolerance);
    j.raw(",\"provenance\":");
    j.string(&r.provenance);
    j.raw(",\"walls\":[");
    for (i, w) in r.walls.iter().enumerate() {
        if i > 0 {
            j.raw(",");
        }
        j.raw("{\"label\":");
        j.string(&w.label);
        j.raw(",\"coeffs\":");
        j.float_array(&w.coeffs);
        j.raw(",\"dual_norm\":");
        j.float(w.dual_norm);
        j.raw("}");
    }
    j.raw("],\"vertices\":[");
    for (i, v) in r.vertices.iter().enumerate() {
        if i > 0 {
            j.raw(",");
        }
        j.raw("{\"kind\":");
        j.string(v.kind);
        j.raw(",\"coords\":");
        j.float_array(&v.coords);
        j.raw(",\"incident_walls\":");
        j.int_array(&v.incident_walls);
        j.raw("}");
    }
    j.raw("],\"adjacency\":[");
    for (i, (a, b)) in r.adjacency.iter().enumerate() {
        if i > 0 {
            j.raw(",");
        }
        j.int_array(&[*a, *b]);
    }
    j.raw("],\"angles\":[");
    for (i, a) in r.angles.iter().enumerate() {
        if i > 0 {
            j.raw(",");
        }
        j.raw("{\"walls\":");
        j.int_array(&[a.walls.0, a.walls.1]);
        j.raw(",\"kind\":");
        j.string(&a.kind);
        j.raw(",\"value\":");
        match a.value {
            Some(v) => j.float(v),
            None => j.raw("null"),
        }
        j.raw("}");
    }
    j.raw("],\"orthogonality\":[");
    for (i, row) in r.orthogonality.iter().enumerate() {
        if i > 0 {
            j.raw(",");
        }
        j.float_array(row);
    }
    j.raw("],\"limits\":");
    match &r.limits {
        None => j.raw("null"),
        Some(l) => {
            j.raw("{\"rescale\":");
            j.string(&l.rescale);
            j.raw(",\"side\":");
            j.string(&l.side);
            j.raw(",\"walls\":[");
            for (i, w) in l.walls.iter().enumerate() {
                if i > 0 {
                    j.raw(",");
                }
                j.raw("{\"label\":");
                j.string(&w.label);
                j.raw(",\"coeffs\":");
                j.float_array(&w.coeffs);
                j.raw(",\"degenerate\":");
                j.bool(w.degenerate);
                j.raw("}");
            }
            j.raw("],\"distinct\":[");
            for (i, d) in l.distinct.iter().enumerate() {
                if i > 0 {
                    j.raw(",");
                }
                j.float_array(d);
            }
            j.raw("]}");
        }
    }
    j.raw(",\"checks\":[");
    for (i, c) in r.checks.iter().enumerate() {
        if i > 0 {
            j.raw(",");
        }
        j.raw("{\"name\":");
        j.string(&c.name);
        j.raw(",\"passed\":");
        j.bool(c.passed);
        j.raw(",\"tolerance\":");
        j.float(c.tolerance);
        j.raw(",\"detail\":");
        j.string(&c.detail);
        j.raw("}");
    }
    j.raw("]}");
    j.buf
}
