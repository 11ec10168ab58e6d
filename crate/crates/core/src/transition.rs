//! Rescaling maps, limits of rescaled geometries, and limits of conjugated
//! isometry paths.
//!
//! Two rescalings appear: the zoom `γ` fixing the basepoint and stretching
//! every other direction, and the fiber rescaling `η` stretching only the
//! last direction. Conjugating an isometry path by the rescaling and
//! letting the parameter go to zero is how the limit transformation groups
//! are computed.
//!
//! Limits are taken two ways. Paths given in closed form over the
//! expression atoms get an exact answer: conjugation multiplies the matrix
//! entry `(i, j)` by `s^(e_j − e_i)` with `e` the rescaled-coordinate mask
//! and `s = |t|`, so entrywise series expansion plus leading-order
//! extraction at the minimal valuation is the limit. Sampled paths are
//! evaluated at `t ∈ {1e-3, 1e-4, 1e-5}` and must contract by at least 5×
//! between successive differences; that schedule rejects logarithmic or
//! oscillatory non-limits. When both routes are available the symbolic one
//! wins.

use crate::forms::{eval_form, GeometryKind, ProjectivePoint, ProjectiveMap, QuadraticForm};
use crate::linalg::Matrix;
use crate::param::{ParamScalar, RescaleKind, Side};
use crate::scalar::Exact;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum TransitionError {
    NoTransitionalLimit(String),
    ZeroParameter,
    UnsupportedCombination { model: GeometryKind, kind: RescaleKind },
}

impl fmt::Display for TransitionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TransitionError::NoTransitionalLimit(msg) => {
                write!(f, "no transitional limit: {msg}")
            }
            TransitionError::ZeroParameter => write!(f, "rescaling parameter must be nonzero"),
            TransitionError::UnsupportedCombination { model, kind } => write!(
                f,
                "no rescaled limit locus implemented for {} under {:?}",
                model.label(),
                kind
            ),
        }
    }
}

impl std::error::Error for TransitionError {}

/// The diagonal rescaling `γ_t = diag(1, 1/t, …, 1/t)` or
/// `η_t = diag(1, …, 1, 1/t)`, with `t ≠ 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RescalingMap {
    pub kind: RescaleKind,
    pub t: f64,
    pub dim: usize,
}

impl RescalingMap {
    pub fn new(kind: RescaleKind, t: f64, dim: usize) -> Result<Self, TransitionError> {
        if t == 0.0 {
            return Err(TransitionError::ZeroParameter);
        }
        Ok(RescalingMap { kind, t, dim })
    }

    /// Mask of coordinates stretched by `1/t`.
    fn stretched(&self, i: usize) -> bool {
        match self.kind {
            RescaleKind::Gamma => i >= 1,
            RescaleKind::Eta => i == self.dim,
        }
    }

    pub fn matrix(&self) -> ProjectiveMap<f64> {
        let entries: Vec<f64> = (0..=self.dim)
            .map(|i| if self.stretched(i) { 1.0 / self.t } else { 1.0 })
            .collect();
        ProjectiveMap::diagonal(&entries)
    }

    pub fn inverse_matrix(&self) -> ProjectiveMap<f64> {
        let entries: Vec<f64> = (0..=self.dim)
            .map(|i| if self.stretched(i) { self.t } else { 1.0 })
            .collect();
        ProjectiveMap::diagonal(&entries)
    }

    /// Conjugate a map by this rescaling.
    pub fn conjugate(&self, m: &ProjectiveMap<f64>) -> ProjectiveMap<f64> {
        self.matrix().compose(m).compose(&self.inverse_matrix())
    }
}

/// Apply the rescaling to a point and canonicalize.
pub fn rescale_point(r: &RescalingMap, x: &ProjectivePoint<f64>) -> ProjectivePoint<f64> {
    r.matrix().act_point(x).canonical()
}

/// A one-parameter family of isometries on a punctured one-sided
/// neighborhood of `t = 0`.
///
/// `closed_form` is an optional matrix of expressions projectively equal to
/// the path (an overall positive factor is irrelevant); it unlocks the
/// exact limit route.
pub struct IsometryPath {
    eval: Box<dyn Fn(f64) -> ProjectiveMap<f64> + Send + Sync>,
    closed_form: Option<Vec<Vec<ParamScalar>>>,
}

impl IsometryPath {
    pub fn from_fn(f: impl Fn(f64) -> ProjectiveMap<f64> + Send + Sync + 'static) -> Self {
        IsometryPath {
            eval: Box::new(f),
            closed_form: None,
        }
    }

    pub fn from_symbolic(rows: Vec<Vec<ParamScalar>>) -> Self {
        let rows_for_eval = rows.clone();
        IsometryPath {
            eval: Box::new(move |t| {
                ProjectiveMap::from_rows(
                    rows_for_eval
                        .iter()
                        .map(|r| r.iter().map(|e| e.eval_f64(t)).collect())
                        .collect(),
                )
            }),
            closed_form: Some(rows),
        }
    }

    /// The reflection path in a family wall, as a symbolic matrix: the
    /// reflection is scaled by the dual norm `q*(α_t, α_t)` so the entries
    /// stay polynomial in the atoms, which does not change it projectively.
    #[allow(clippy::needless_range_loop)]
    pub fn reflection_in_wall(coeffs: &[ParamScalar], form: &QuadraticForm) -> Self {
        assert!(
            !form.is_degenerate(),
            "reflection paths need a non-degenerate ambient form"
        );
        let n = form.dim();
        assert_eq!(coeffs.len(), n);
        // norm = Σ signs[i]·α_i²
        let mut norm: Option<ParamScalar> = None;
        for i in 0..n {
            if form.signs()[i] == 0 {
                continue;
            }
            let sq = coeffs[i].clone() * coeffs[i].clone();
            let term = if form.signs()[i] == 1 { sq } else { -sq };
            norm = Some(match norm {
                Some(acc) => acc + term,
                None => term,
            });
        }
        let norm = norm.expect("form has at least one nonzero sign");
        let mut rows = Vec::with_capacity(n);
        for i in 0..n {
            let mut row = Vec::with_capacity(n);
            for j in 0..n {
                let diag = if i == j {
                    norm.clone()
                } else {
                    ParamScalar::integer(0)
                };
                let prod = coeffs[i].clone() * coeffs[j].clone() * ParamScalar::integer(2);
                let signed = match form.signs()[i] {
                    1 => prod,
                    -1 => -prod,
                    _ => unreachable!(),
                };
                row.push(diag - signed);
            }
            rows.push(row);
        }
        IsometryPath::from_symbolic(rows)
    }

    pub fn at(&self, t: f64) -> ProjectiveMap<f64> {
        (self.eval)(t)
    }

    pub fn has_closed_form(&self) -> bool {
        self.closed_form.is_some()
    }
}

/// A computed limit of a conjugated path.
#[derive(Debug, Clone)]
pub struct ConjugationLimit {
    pub map: ProjectiveMap<f64>,
    /// Exact limit matrix when the path had a closed form.
    pub exact: Option<Matrix<Exact>>,
}

/// Limit of `r(|t|) · p(t) · r(|t|)⁻¹` as `t → 0` from the given side.
pub fn limit_conjugated_isometry(
    path: &IsometryPath,
    kind: RescaleKind,
    side: Side,
    dim: usize,
) -> Result<ConjugationLimit, TransitionError> {
    let symbolic = match &path.closed_form {
        Some(rows) => Some(symbolic_conjugation_limit(rows, kind, side, dim)?),
        None => None,
    };

    // Numeric route: three samples with a contraction requirement.
    let ts = [1e-3, 1e-4, 1e-5];
    let mut samples = Vec::with_capacity(3);
    for &s in &ts {
        let t = side.sign() * s;
        let r = RescalingMap::new(kind, s, dim)?;
        samples.push(r.conjugate(&path.at(t)).canonical_scale());
    }
    let d1 = samples[1].matrix().sub(samples[0].matrix()).max_abs();
    let d2 = samples[2].matrix().sub(samples[1].matrix()).max_abs();
    if d1 > 1e-12 && d2 > d1 / 5.0 {
        return Err(TransitionError::NoTransitionalLimit(format!(
            "sample differences {d1:.3e} → {d2:.3e} do not contract"
        )));
    }

    match symbolic {
        Some(exact) => {
            let map = ProjectiveMap::new(exact.map(|e| e.to_f64()))
                .expect("square matrix")
                .canonical_scale();
            // The numeric estimate guards the exact extraction.
            let dev = map.matrix().sub(samples[2].matrix()).max_abs();
            if dev > 1e-6 {
                return Err(TransitionError::NoTransitionalLimit(format!(
                    "symbolic limit deviates from numeric samples by {dev:.3e}"
                )));
            }
            Ok(ConjugationLimit {
                map,
                exact: Some(exact),
            })
        }
        None => Ok(ConjugationLimit {
            map: samples.into_iter().nth(2).unwrap(),
            exact: None,
        }),
    }
}

fn symbolic_conjugation_limit(
    rows: &[Vec<ParamScalar>],
    kind: RescaleKind,
    side: Side,
    dim: usize,
) -> Result<Matrix<Exact>, TransitionError> {
    let n = dim + 1;
    assert_eq!(rows.len(), n);
    let stretched = |i: usize| match kind {
        RescaleKind::Gamma => i >= 1,
        RescaleKind::Eta => i == dim,
    };
    // (r M r⁻¹)_{ij} = M_{ij} · s^{e_j − e_i}.
    let mut series = Vec::with_capacity(n * n);
    let mut min_val: Option<i64> = None;
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), n);
        for (j, entry) in row.iter().enumerate() {
            let s = entry.series(side);
            let shift = (stretched(j) as i64) - (stretched(i) as i64);
            if let Some((d, _)) = s.leading() {
                let v = d as i64 + shift;
                min_val = Some(min_val.map_or(v, |m: i64| m.min(v)));
            }
            series.push((s, shift));
        }
    }
    let Some(m) = min_val else {
        return Err(TransitionError::NoTransitionalLimit(
            "path matrix vanishes identically".into(),
        ));
    };
    let mut out = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let (s, shift) = &series[i * n + j];
            let d = m - shift;
            out[(i, j)] = if d >= 0 {
                s.coeff(d as usize)
            } else {
                Exact::integer(0)
            };
        }
    }
    // A projective limit must stay invertible.
    if out.inverse(0.0).is_err() {
        return Err(TransitionError::NoTransitionalLimit(
            "leading matrix is singular; the conjugated path degenerates".into(),
        ));
    }
    Ok(out)
}

/// Maximum deviation of sampled points of the rescaled model surface from
/// its limit locus, over a fixed compact window.
///
/// Supported combinations: hyperbolic or spherical under `γ` (limit locus:
/// the affine chart `x₀ = 1`), hyperbolic or Anti-de Sitter under `η`
/// (limit locus: the cylinder `−x₀² + x₁² + … + x_{n−1}² = −1`). The
/// deviation decays like `t²` in the window.
pub fn surface_limit_check(
    model: GeometryKind,
    kind: RescaleKind,
    t: f64,
    samples: usize,
) -> Result<f64, TransitionError> {
    if t == 0.0 {
        return Err(TransitionError::ZeroParameter);
    }
    let samples = samples.max(1);
    let grid: Vec<f64> = (0..=samples)
        .map(|k| -1.0 + 2.0 * k as f64 / samples as f64)
        .collect();
    let mut max_dev: f64 = 0.0;
    match (model, kind) {
        (GeometryKind::Hyperbolic, RescaleKind::Gamma)
        | (GeometryKind::Spherical, RescaleKind::Gamma) => {
            let spherical = model == GeometryKind::Spherical;
            for &y1 in &grid {
                for &y2 in &grid {
                    let r2 = t * t * (y1 * y1 + y2 * y2);
                    let x0 = if spherical {
                        if r2 >= 1.0 {
                            return Err(TransitionError::NoTransitionalLimit(
                                "window leaves the sphere at this t".into(),
                            ));
                        }
                        (1.0 - r2).sqrt()
                    } else {
                        (1.0 + r2).sqrt()
                    };
                    max_dev = max_dev.max((x0 - 1.0).abs());
                }
            }
        }
        (GeometryKind::Hyperbolic, RescaleKind::Eta)
        | (GeometryKind::AntiDeSitter, RescaleKind::Eta) => {
            let ads = model == GeometryKind::AntiDeSitter;
            for &y in &grid {
                for &u in &grid {
                    let z2 = t * t * u * u;
                    let arg = 1.0 + y * y + if ads { -z2 } else { z2 };
                    if arg <= 0.0 {
                        return Err(TransitionError::NoTransitionalLimit(
                            "window leaves the quadric at this t".into(),
                        ));
                    }
                    let x0 = arg.sqrt();
                    let locus = (1.0 + y * y).sqrt();
                    max_dev = max_dev.max((x0 - locus).abs());
                }
            }
        }
        _ => return Err(TransitionError::UnsupportedCombination { model, kind }),
    }
    Ok(max_dev)
}

/// Check that a limit map preserves the chart `x₀ = 1` and acts there as a
/// Euclidean isometry; returns the orthogonality defect of the linear part.
pub fn euclidean_limit_defect(m: &ProjectiveMap<f64>) -> f64 {
    let n = m.dim() - 1;
    // Normalize so the chart-preserving entry is 1.
    let pivot = m.matrix()[(0, 0)];
    if pivot.abs() < 1e-12 {
        return f64::INFINITY;
    }
    let mat = m.matrix().map(|x| x / pivot);
    let mut defect: f64 = 0.0;
    for j in 1..=n {
        defect = defect.max(mat[(0, j)].abs());
    }
    // rᵀ r = id on the chart block.
    for i in 1..=n {
        for j in 1..=n {
            let mut acc = 0.0;
            for k in 1..=n {
                acc += mat[(k, i)] * mat[(k, j)];
            }
            let want = if i == j { 1.0 } else { 0.0 };
            defect = defect.max((acc - want).abs());
        }
    }
    defect
}

/// The point form of the model on the sign-`t` side of a transition family,
/// used when sampling paths of isometries.
pub fn ambient_form(geometry: GeometryKind, n: usize) -> QuadraticForm {
    geometry.point_form(n)
}

/// Deviation of a sampled point from the model quadric, for diagnostics.
pub fn quadric_residual(q: &QuadraticForm, x: &ProjectivePoint<f64>) -> f64 {
    eval_form(q, x.coords()).map(|v| (v + 1.0).abs()).unwrap_or(f64::INFINITY)
}
