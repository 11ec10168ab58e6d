//! The catalog of named polytope families and face-pairing schemes.
//!
//! Wall data lives in `data/families.txt`, one prefix expression per dual
//! coordinate, and is parsed once at first use; that file is the single
//! source of truth for the golden tests. A wall may carry several branches
//! with disjoint parameter domains (the spherical continuation of the
//! point-collapse octahedron flips orientations across `t = 0`).

use crate::forms::{DualHalfSpace, GeometryKind, ProjectiveMap, ProjectivePoint};
use crate::param::{
    self, family_eval, family_eval_exact, Domain, HalfSpaceFamily, ParamError, RescaleKind,
    RescaledLimit, Side,
};
use crate::polytope::{Polytope, PolytopeError};
use crate::scalar::{Exact, Rational, Scalar};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

const FAMILY_DATA: &str = include_str!("../data/families.txt");

#[derive(Debug, Clone, PartialEq)]
pub enum GalleryError {
    UnknownFamily(String),
    UnknownScheme(String),
    UnknownWall { family: String, label: String },
    NoBranch { family: String, label: String, t: f64 },
    Data(String),
    Param(ParamError),
    Polytope(PolytopeError),
    ExactUnavailable { label: String },
    OutOfRange(String),
}

impl fmt::Display for GalleryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GalleryError::UnknownFamily(n) => write!(f, "unknown family {n:?}"),
            GalleryError::UnknownScheme(n) => write!(f, "unknown pairing scheme {n:?}"),
            GalleryError::UnknownWall { family, label } => {
                write!(f, "family {family:?} has no wall {label:?}")
            }
            GalleryError::NoBranch { family, label, t } => {
                write!(f, "wall {label:?} of {family:?} has no branch containing t = {t}")
            }
            GalleryError::Data(msg) => write!(f, "family data error: {msg}"),
            GalleryError::Param(e) => write!(f, "{e}"),
            GalleryError::Polytope(e) => write!(f, "{e}"),
            GalleryError::ExactUnavailable { label } => {
                write!(f, "wall {label:?} does not evaluate inside Q(sqrt2) at this t")
            }
            GalleryError::OutOfRange(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for GalleryError {}

impl From<ParamError> for GalleryError {
    fn from(e: ParamError) -> Self {
        GalleryError::Param(e)
    }
}

impl From<PolytopeError> for GalleryError {
    fn from(e: PolytopeError) -> Self {
        GalleryError::Polytope(e)
    }
}

/// A named family: geometry per sign of the parameter, labeled walls with
/// their branches, provenance string.
#[derive(Debug, Clone)]
pub struct FamilyRecord {
    pub name: String,
    pub dim: usize,
    pub geometry_neg: GeometryKind,
    pub geometry_pos: GeometryKind,
    /// Wall labels in catalog order.
    pub labels: Vec<String>,
    branches: Vec<HalfSpaceFamily>,
    pub provenance: String,
}

impl FamilyRecord {
    pub fn geometry(&self, t: f64) -> GeometryKind {
        if t < 0.0 {
            self.geometry_neg
        } else {
            self.geometry_pos
        }
    }

    pub fn branches(&self) -> &[HalfSpaceFamily] {
        &self.branches
    }

    pub fn wall_branch(&self, label: &str, t: f64) -> Result<&HalfSpaceFamily, GalleryError> {
        let mut found_label = false;
        for b in &self.branches {
            if b.label == label {
                found_label = true;
                if b.domain.contains(t) {
                    return Ok(b);
                }
            }
        }
        if found_label {
            Err(GalleryError::NoBranch {
                family: self.name.clone(),
                label: label.to_string(),
                t,
            })
        } else {
            Err(GalleryError::UnknownWall {
                family: self.name.clone(),
                label: label.to_string(),
            })
        }
    }

    pub fn wall_branch_side(
        &self,
        label: &str,
        side: Side,
    ) -> Result<&HalfSpaceFamily, GalleryError> {
        self.wall_branch(label, side.sign() * 1e-6)
    }

    /// All walls evaluated at `t`, in catalog order.
    pub fn walls_at(&self, t: f64) -> Result<Vec<(String, DualHalfSpace<f64>)>, GalleryError> {
        self.labels
            .iter()
            .map(|l| {
                let b = self.wall_branch(l, t)?;
                Ok((l.clone(), family_eval(b, t)?))
            })
            .collect()
    }

    /// Exact walls at rational `t`; fails if any radical leaves ℚ(√2).
    pub fn walls_at_exact(
        &self,
        t: Rational,
    ) -> Result<Vec<(String, DualHalfSpace<Exact>)>, GalleryError> {
        self.labels
            .iter()
            .map(|l| {
                let b = self.wall_branch(l, t.to_f64())?;
                match family_eval_exact(b, t)? {
                    Some(w) => Ok((l.clone(), w)),
                    None => Err(GalleryError::ExactUnavailable { label: l.clone() }),
                }
            })
            .collect()
    }

    /// The polytope at `t`, with the basepoint as interior point.
    pub fn polytope_at(&self, t: f64, tol: f64) -> Result<Polytope<f64>, GalleryError> {
        let walls = self.walls_at(t)?;
        let mut e0 = vec![0.0; self.dim + 1];
        e0[0] = 1.0;
        Ok(Polytope::new(
            self.geometry(t),
            walls,
            ProjectivePoint::new(e0),
            tol,
        )?)
    }

    /// Exact-mode polytope at rational `t`.
    pub fn polytope_at_exact(&self, t: Rational) -> Result<Polytope<Exact>, GalleryError> {
        let walls = self.walls_at_exact(t)?;
        let mut e0 = vec![Exact::integer(0); self.dim + 1];
        e0[0] = Exact::integer(1);
        Ok(Polytope::new(
            self.geometry(t.to_f64()),
            walls,
            ProjectivePoint::new(e0),
            0.0,
        )?)
    }

    /// One-sided rescaled limit of one wall.
    pub fn wall_limit(
        &self,
        label: &str,
        kind: RescaleKind,
        side: Side,
    ) -> Result<RescaledLimit, GalleryError> {
        let b = self.wall_branch_side(label, side)?;
        Ok(param::rescaled_limit(b, kind, side)?)
    }
}

fn catalog() -> &'static BTreeMap<String, FamilyRecord> {
    static CATALOG: OnceLock<BTreeMap<String, FamilyRecord>> = OnceLock::new();
    CATALOG.get_or_init(|| parse_catalog(FAMILY_DATA).expect("shipped family data must parse"))
}

/// Look up a family by name.
pub fn make_family(name: &str) -> Result<&'static FamilyRecord, GalleryError> {
    catalog()
        .get(name)
        .ok_or_else(|| GalleryError::UnknownFamily(name.to_string()))
}

pub fn family_names() -> Vec<&'static str> {
    catalog().keys().map(|s| s.as_str()).collect()
}

fn parse_geometry(tok: &str) -> Result<(GeometryKind, GeometryKind), GalleryError> {
    let one = |s: &str| -> Result<GeometryKind, GalleryError> {
        match s {
            "hyp" => Ok(GeometryKind::Hyperbolic),
            "sph" => Ok(GeometryKind::Spherical),
            "ads" => Ok(GeometryKind::AntiDeSitter),
            "eucl" => Ok(GeometryKind::Euclidean),
            "hp" => Ok(GeometryKind::HalfPipe),
            other => Err(GalleryError::Data(format!("unknown geometry {other:?}"))),
        }
    };
    match tok.split_once('/') {
        Some((neg, pos)) => Ok((one(neg)?, one(pos)?)),
        None => {
            let g = one(tok)?;
            Ok((g, g))
        }
    }
}

fn parse_bound(tok: &str) -> Result<f64, GalleryError> {
    match tok {
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        "1/sqrt3" => Ok(1.0 / 3.0f64.sqrt()),
        "-1/sqrt3" => Ok(-1.0 / 3.0f64.sqrt()),
        _ => param::parse_rational(tok)
            .map(|r| r.to_f64())
            .or_else(|| tok.parse::<f64>().ok())
            .ok_or_else(|| GalleryError::Data(format!("bad domain bound {tok:?}"))),
    }
}

fn parse_domain(tok: &str) -> Result<Domain, GalleryError> {
    let bytes = tok.as_bytes();
    if bytes.len() < 5 {
        return Err(GalleryError::Data(format!("bad domain {tok:?}")));
    }
    let lo_inclusive = match bytes[0] {
        b'(' => false,
        b'[' => true,
        _ => return Err(GalleryError::Data(format!("bad domain {tok:?}"))),
    };
    let hi_inclusive = match bytes[bytes.len() - 1] {
        b')' => false,
        b']' => true,
        _ => return Err(GalleryError::Data(format!("bad domain {tok:?}"))),
    };
    let inner = &tok[1..tok.len() - 1];
    let (lo, hi) = inner
        .split_once(',')
        .ok_or_else(|| GalleryError::Data(format!("bad domain {tok:?}")))?;
    Ok(Domain {
        lo: parse_bound(lo)?,
        lo_inclusive,
        hi: parse_bound(hi)?,
        hi_inclusive,
    })
}

fn parse_catalog(data: &str) -> Result<BTreeMap<String, FamilyRecord>, GalleryError> {
    let mut out = BTreeMap::new();
    let mut current: Option<FamilyRecord> = None;
    let mut default_domain: Option<Domain> = None;
    let mut version: Option<u32> = None;
    for (lineno, raw) in data.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let err = |msg: String| GalleryError::Data(format!("line {}: {msg}", lineno + 1));
        if let Some(v) = line.strip_prefix("version ") {
            version = Some(
                v.trim()
                    .parse()
                    .map_err(|_| err(format!("bad version {v:?}")))?,
            );
        } else if let Some(rest) = line.strip_prefix("family ") {
            if let Some(fam) = current.take() {
                out.insert(fam.name.clone(), fam);
            }
            let mut name = None;
            let mut dim = None;
            let mut geom = None;
            let mut domain = None;
            for tok in rest.split_whitespace() {
                if let Some(v) = tok.strip_prefix("dim=") {
                    dim = Some(v.parse::<usize>().map_err(|_| err("bad dim".into()))?);
                } else if let Some(v) = tok.strip_prefix("geom=") {
                    geom = Some(parse_geometry(v)?);
                } else if let Some(v) = tok.strip_prefix("domain=") {
                    domain = Some(parse_domain(v)?);
                } else if name.is_none() {
                    name = Some(tok.to_string());
                } else {
                    return Err(err(format!("unexpected token {tok:?}")));
                }
            }
            let name = name.ok_or_else(|| err("family needs a name".into()))?;
            let (geometry_neg, geometry_pos) =
                geom.ok_or_else(|| err("family needs geom=".into()))?;
            let v = version.ok_or_else(|| err("version line must come first".into()))?;
            default_domain = domain;
            current = Some(FamilyRecord {
                provenance: format!("families.txt v{v}, family {name}"),
                name,
                dim: dim.ok_or_else(|| err("family needs dim=".into()))?,
                geometry_neg,
                geometry_pos,
                labels: Vec::new(),
                branches: Vec::new(),
            });
        } else if let Some(rest) = line.strip_prefix("wall ") {
            let fam = current
                .as_mut()
                .ok_or_else(|| err("wall outside a family".into()))?;
            let (head, exprs) = rest
                .split_once(':')
                .ok_or_else(|| err("wall needs a ':'".into()))?;
            let mut label = None;
            let mut domain = default_domain;
            for tok in head.split_whitespace() {
                if let Some(v) = tok.strip_prefix("domain=") {
                    domain = Some(parse_domain(v)?);
                } else if label.is_none() {
                    label = Some(tok.to_string());
                } else {
                    return Err(err(format!("unexpected token {tok:?}")));
                }
            }
            let label = label.ok_or_else(|| err("wall needs a label".into()))?;
            let domain = domain.ok_or_else(|| err("wall needs a domain".into()))?;
            let coeffs: Result<Vec<_>, _> = exprs
                .split(';')
                .map(|e| param::parse_expression(e.trim()))
                .collect();
            let coeffs = coeffs.map_err(GalleryError::Param)?;
            if coeffs.len() != fam.dim + 1 {
                return Err(err(format!(
                    "wall {label} has {} coordinates, expected {}",
                    coeffs.len(),
                    fam.dim + 1
                )));
            }
            if !fam.labels.contains(&label) {
                fam.labels.push(label.clone());
            }
            fam.branches.push(HalfSpaceFamily {
                label,
                coeffs,
                domain,
            });
        } else {
            return Err(err(format!("unrecognized line {line:?}")));
        }
    }
    if let Some(fam) = current.take() {
        out.insert(fam.name.clone(), fam);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Shrunk quadrilateral vertices
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    Hyperbolic,
    Spherical,
}

/// The four vertices `cosh(t)·e₀ + sinh(t)·vᵢ` (hyperbolic) or
/// `cos(t)·e₀ + sin(t)·vᵢ` (spherical) with `vᵢ = (0, ±√2/2, ±√2/2)`.
pub fn exp_deform_vertices(
    t: f64,
    curvature: Curvature,
) -> Result<Vec<ProjectivePoint<f64>>, GalleryError> {
    let (c, s) = match curvature {
        Curvature::Hyperbolic => {
            if t <= 0.0 {
                return Err(GalleryError::OutOfRange(format!(
                    "hyperbolic deformation needs t > 0, got {t}"
                )));
            }
            (t.cosh(), t.sinh())
        }
        Curvature::Spherical => {
            if t <= 0.0 || t >= std::f64::consts::PI {
                return Err(GalleryError::OutOfRange(format!(
                    "spherical deformation needs 0 < t < π, got {t}"
                )));
            }
            (t.cos(), t.sin())
        }
    };
    let h = std::f64::consts::SQRT_2 / 2.0;
    Ok([(1.0, 1.0), (1.0, -1.0), (-1.0, 1.0), (-1.0, -1.0)]
        .into_iter()
        .map(|(s1, s2)| ProjectivePoint::new(vec![c, s * s1 * h, s * s2 * h]))
        .collect())
}

/// Map the geodesic exponent time to the catalog parameter of
/// `exp_quadrilateral` (corner offset in the chart): `tanh` on the
/// hyperbolic side, `−tan` on the spherical side.
pub fn quad_param_from_exp_time(t: f64, curvature: Curvature) -> f64 {
    match curvature {
        Curvature::Hyperbolic => t.tanh(),
        Curvature::Spherical => -t.tan(),
    }
}

// ---------------------------------------------------------------------------
// Pairing schemes
// ---------------------------------------------------------------------------

/// One step of a pairing recipe, applied left to right.
#[derive(Debug, Clone, PartialEq)]
pub enum RecipeStep {
    /// Sign flip of one coordinate.
    FlipAxis(usize),
    /// Reflection in a named wall of the scheme's family, in the ambient
    /// geometry at the evaluation parameter.
    ReflectWall(String),
}

/// A face identification: the recipe maps the source wall onto the target
/// wall (sending the polytope to the neighboring copy, so the transported
/// source half-space is the complement of the target half-space).
#[derive(Debug, Clone)]
pub struct Pairing {
    pub label: String,
    pub source: String,
    pub target: String,
    pub recipe: Vec<RecipeStep>,
}

/// A combinatorially closed cycle of edges: entries `(copy, (wall, wall))`.
#[derive(Debug, Clone)]
pub struct EdgeCycleDef {
    pub name: String,
    pub entries: Vec<(usize, (String, String))>,
}

#[derive(Debug, Clone)]
pub struct PairingScheme {
    pub name: String,
    pub family: String,
    pub pairings: Vec<Pairing>,
    pub cycles: Vec<EdgeCycleDef>,
}

impl PairingScheme {
    pub fn pairing(&self, label: &str) -> Option<&Pairing> {
        self.pairings.iter().find(|p| p.label == label)
    }

    pub fn cycle(&self, name: &str) -> Option<&EdgeCycleDef> {
        self.cycles.iter().find(|c| c.name == name)
    }
}

fn schemes() -> &'static BTreeMap<String, PairingScheme> {
    static SCHEMES: OnceLock<BTreeMap<String, PairingScheme>> = OnceLock::new();
    SCHEMES.get_or_init(|| {
        let mut out = BTreeMap::new();
        let pairing = |label: &str, src: &str, dst: &str, recipe: Vec<RecipeStep>| Pairing {
            label: label.into(),
            source: src.into(),
            target: dst.into(),
            recipe,
        };
        let quad_pairings = vec![
            pairing(
                "lr",
                "left",
                "right",
                vec![RecipeStep::FlipAxis(1), RecipeStep::ReflectWall("right".into())],
            ),
            pairing(
                "tb",
                "top",
                "bottom",
                vec![RecipeStep::FlipAxis(2), RecipeStep::ReflectWall("bottom".into())],
            ),
        ];
        let puncture = EdgeCycleDef {
            name: "puncture".into(),
            entries: vec![
                (0, ("right".into(), "top".into())),
                (0, ("top".into(), "left".into())),
                (0, ("left".into(), "bottom".into())),
                (0, ("bottom".into(), "right".into())),
            ],
        };
        out.insert(
            "torus_from_quadrilateral".to_string(),
            PairingScheme {
                name: "torus_from_quadrilateral".into(),
                family: "exp_quadrilateral".into(),
                pairings: quad_pairings.clone(),
                cycles: vec![puncture.clone()],
            },
        );
        out.insert(
            "torus_from_quad_prime".to_string(),
            PairingScheme {
                name: "torus_from_quad_prime".into(),
                family: "quad_prime".into(),
                pairings: quad_pairings,
                cycles: vec![puncture],
            },
        );
        out.insert(
            "borromean_double".to_string(),
            PairingScheme {
                name: "borromean_double".into(),
                family: "oct_collapse".into(),
                pairings: vec![
                    pairing(
                        "r13",
                        "R1",
                        "R3",
                        vec![RecipeStep::FlipAxis(1), RecipeStep::ReflectWall("R3".into())],
                    ),
                    pairing(
                        "r24",
                        "R2",
                        "R4",
                        vec![RecipeStep::FlipAxis(2), RecipeStep::ReflectWall("R4".into())],
                    ),
                    pairing("d1", "L1", "L1", vec![RecipeStep::ReflectWall("L1".into())]),
                    pairing("d2", "L2", "L2", vec![RecipeStep::ReflectWall("L2".into())]),
                    pairing("d3", "L3", "L3", vec![RecipeStep::ReflectWall("L3".into())]),
                    pairing("d4", "L4", "L4", vec![RecipeStep::ReflectWall("L4".into())]),
                ],
                cycles: vec![
                    EdgeCycleDef {
                        name: "lower_edge".into(),
                        entries: vec![
                            (0, ("L1".into(), "L3".into())),
                            (1, ("L1".into(), "L3".into())),
                        ],
                    },
                    EdgeCycleDef {
                        name: "upper_edge".into(),
                        entries: vec![
                            (0, ("L2".into(), "L4".into())),
                            (1, ("L2".into(), "L4".into())),
                        ],
                    },
                ],
            },
        );
        out.insert(
            "three_torus_translations".to_string(),
            PairingScheme {
                name: "three_torus_translations".into(),
                family: "eucl_parallelepiped".into(),
                pairings: vec![
                    pairing(
                        "tx1",
                        "x1lo",
                        "x1hi",
                        vec![RecipeStep::FlipAxis(1), RecipeStep::ReflectWall("x1hi".into())],
                    ),
                    pairing(
                        "tx2",
                        "x2lo",
                        "x2hi",
                        vec![RecipeStep::FlipAxis(2), RecipeStep::ReflectWall("x2hi".into())],
                    ),
                    pairing(
                        "tx3",
                        "x3lo",
                        "x3hi",
                        vec![RecipeStep::FlipAxis(3), RecipeStep::ReflectWall("x3hi".into())],
                    ),
                ],
                cycles: vec![EdgeCycleDef {
                    name: "edge_x2x3".into(),
                    entries: vec![
                        (0, ("x2hi".into(), "x3hi".into())),
                        (1, ("x2lo".into(), "x3hi".into())),
                        (2, ("x2lo".into(), "x3lo".into())),
                        (3, ("x2hi".into(), "x3lo".into())),
                    ],
                }],
            },
        );
        out
    })
}

pub fn pairing_scheme(name: &str) -> Result<&'static PairingScheme, GalleryError> {
    schemes()
        .get(name)
        .ok_or_else(|| GalleryError::UnknownScheme(name.to_string()))
}

pub fn scheme_names() -> Vec<&'static str> {
    schemes().keys().map(|s| s.as_str()).collect()
}

// ---------------------------------------------------------------------------
// Stated symmetries
// ---------------------------------------------------------------------------

fn flip<S: Scalar>(dim: usize, axis: usize) -> ProjectiveMap<S> {
    ProjectiveMap::coordinate_flip(dim + 1, axis)
}

fn swap12<S: Scalar>(dim: usize) -> ProjectiveMap<S> {
    let n = dim + 1;
    let mut rows = vec![vec![S::zero(); n]; n];
    for (i, row) in rows.iter_mut().enumerate() {
        let j = match i {
            1 => 2,
            2 => 1,
            _ => i,
        };
        row[j] = S::one();
    }
    ProjectiveMap::from_rows(rows)
}

/// The coordinate symmetries each family is asserted to have: sign flips
/// where the wall set is literally invariant, and composites (a flip of the
/// collapse direction combined with the diagonal swap, or paired flips for
/// the 22-wall family) where the deformation breaks the single flip.
pub fn stated_symmetries(name: &str) -> Result<Vec<ProjectiveMap<f64>>, GalleryError> {
    let fam = make_family(name)?;
    let d = fam.dim;
    let f = |a| flip::<f64>(d, a);
    Ok(match name {
        "ideal_quadrilateral" | "exp_quadrilateral" => {
            vec![f(1), f(2), swap12(d)]
        }
        "quad_prime" => vec![f(1), f(2)],
        "ideal_octahedron" | "eucl_parallelepiped" | "cuboctahedron" => {
            vec![f(1), f(2), f(3), swap12(d)]
        }
        "oct_collapse" | "oct_prime" | "hp_oct_limit" => {
            vec![f(1), f(2), f(3).compose(&swap12(d))]
        }
        "ks_polytope" => vec![
            f(1).compose(&f(2)),
            f(2).compose(&f(3)),
            f(1).compose(&f(4)),
            f(2).compose(&f(4)),
            f(3).compose(&f(4)),
        ],
        _ => vec![],
    })
}

/// Does the map send the family's wall set at `t` to itself (projective
/// dual equality after canonicalization)?
pub fn preserves_wall_set(
    fam: &FamilyRecord,
    t: f64,
    m: &ProjectiveMap<f64>,
    tol: f64,
) -> Result<bool, GalleryError> {
    let walls = fam.walls_at(t)?;
    for (_, w) in &walls {
        let moved = m
            .act_dual(w, 1e-12)
            .map_err(|e| GalleryError::Polytope(PolytopeError::Forms(e)))?;
        if !walls.iter().any(|(_, other)| moved.approx_eq(other, tol)) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::pairing as form_pairing;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    #[test]
    fn catalog_parses_and_contains_everything() {
        let names = family_names();
        for want in [
            "ideal_quadrilateral",
            "exp_quadrilateral",
            "ideal_octahedron",
            "oct_collapse",
            "quad_prime",
            "oct_prime",
            "hp_oct_limit",
            "ks_polytope",
            "eucl_parallelepiped",
            "cuboctahedron",
        ] {
            assert!(names.contains(&want), "missing family {want}");
        }
        assert!(make_family("nosuchfamily").is_err());
    }

    #[test]
    fn octahedron_at_one_matches_collapse_and_prime_families() {
        // Both deformations pass through the ideal octahedron at t = 1.
        let oct = make_family("ideal_octahedron").unwrap();
        let oct_walls = oct.walls_at(1.0).unwrap();
        for name in ["oct_collapse", "oct_prime"] {
            let fam = make_family(name).unwrap();
            let walls = fam.walls_at(1.0).unwrap();
            for (_, w) in &walls {
                assert!(
                    oct_walls.iter().any(|(_, o)| o.approx_eq(w, 1e-12)),
                    "{name} wall {:?} not an octahedron wall",
                    w.coeffs()
                );
            }
        }
    }

    #[test]
    fn exact_golden_rows() {
        // Frozen entries: the collapse family at t = 1/2, exactly.
        let fam = make_family("oct_collapse").unwrap();
        let walls = fam.walls_at_exact(Rational::new(1, 2)).unwrap();
        let l1 = &walls.iter().find(|(l, _)| l == "L1").unwrap().1;
        // (−1/2 : −√2/4 : 0 : −1)
        let want = [
            Exact::rational(Rational::new(-1, 2)),
            Exact::new(Rational::ZERO, Rational::new(-1, 4)),
            Exact::integer(0),
            Exact::integer(-1),
        ];
        assert_eq!(l1.coeffs(), &want);
        let r1 = &walls.iter().find(|(l, _)| l == "R1").unwrap().1;
        let want = [
            Exact::rational(Rational::new(-1, 2)),
            -Exact::sqrt2(),
            Exact::integer(0),
            Exact::rational(Rational::new(1, 4)),
        ];
        assert_eq!(r1.coeffs(), &want);
    }

    #[test]
    fn spherical_branch_keeps_basepoint_interior_and_orthogonality() {
        let fam = make_family("oct_collapse").unwrap();
        let t = -0.5;
        let p = fam.polytope_at(t, 1e-10).unwrap();
        assert_eq!(p.geometry(), GeometryKind::Spherical);
        // Row pairs stay orthogonal across the continuation.
        let dual = p.dual_form();
        for (a, b) in [("L1", "R1"), ("L2", "R2"), ("L3", "R3"), ("L4", "R4")] {
            let wa = &p.wall(a).unwrap().half_space;
            let wb = &p.wall(b).unwrap().half_space;
            let q = form_pairing(&dual, wa.coeffs(), wb.coeffs()).unwrap();
            assert!(q.abs() < 1e-12, "{a}/{b}: {q}");
        }
    }

    #[test]
    fn quad_prime_no_branch_at_wrong_side() {
        let fam = make_family("quad_prime").unwrap();
        assert!(fam.wall_branch("top", 0.5).is_ok());
        assert!(fam.wall_branch("top", -0.5).is_ok());
        // The two branches differ.
        let pos = family_eval(fam.wall_branch("top", 0.5).unwrap(), 0.5).unwrap();
        let neg = family_eval(fam.wall_branch("top", -0.5).unwrap(), -0.5).unwrap();
        assert!(!pos.approx_eq(&neg, 1e-6));
        assert!(matches!(
            fam.wall_branch("nosuch", 0.5),
            Err(GalleryError::UnknownWall { .. })
        ));
    }

    #[test]
    fn shrunk_vertices_match_family_walls() {
        // The vertices of the shrunk quadrilateral lie on the evaluated
        // walls at the corner-offset parameter.
        let t = 0.7;
        let tau = quad_param_from_exp_time(t, Curvature::Hyperbolic);
        let fam = make_family("exp_quadrilateral").unwrap();
        let walls = fam.walls_at(tau).unwrap();
        for v in exp_deform_vertices(t, Curvature::Hyperbolic).unwrap() {
            let on = walls
                .iter()
                .filter(|(_, w)| {
                    let val: f64 = w
                        .coeffs()
                        .iter()
                        .zip(v.coords())
                        .map(|(c, x)| c * x)
                        .sum();
                    val.abs() < 1e-12
                })
                .count();
            assert_eq!(on, 2, "each corner lies on exactly two walls");
        }
        // Large exponent time: the corners approach the ideal vertices.
        let tau = quad_param_from_exp_time(20.0, Curvature::Hyperbolic);
        assert!((tau - 1.0).abs() < 1e-12);
        let v = exp_deform_vertices(20.0, Curvature::Hyperbolic).unwrap();
        let ideal = ProjectivePoint::new(vec![1.0, SQRT2 / 2.0, SQRT2 / 2.0]);
        assert!(v[0].approx_eq(&ideal, 1e-8));
        // Spherical equator at t = π/2.
        let v = exp_deform_vertices(std::f64::consts::FRAC_PI_2, Curvature::Spherical).unwrap();
        assert!(v[0].coords()[0].abs() < 1e-12);
        assert!(exp_deform_vertices(-0.1, Curvature::Hyperbolic).is_err());
    }

    #[test]
    fn stated_symmetries_preserve_wall_sets() {
        for (name, ts) in [
            ("ideal_quadrilateral", vec![1.0]),
            ("exp_quadrilateral", vec![0.4, -0.4]),
            ("ideal_octahedron", vec![1.0]),
            ("oct_collapse", vec![0.5, -0.5]),
            ("quad_prime", vec![0.5, -0.5]),
            ("oct_prime", vec![0.5, -0.5]),
            ("hp_oct_limit", vec![0.3]),
            ("ks_polytope", vec![0.3, -0.3]),
            ("eucl_parallelepiped", vec![0.3]),
            ("cuboctahedron", vec![0.3]),
        ] {
            let fam = make_family(name).unwrap();
            for m in stated_symmetries(name).unwrap() {
                for &t in &ts {
                    assert!(
                        preserves_wall_set(fam, t, &m, 1e-9).unwrap(),
                        "{name} at t = {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn pairing_recipes_map_source_to_target() {
        use crate::forms::reflection_in_hyperplane;
        // Evaluate each recipe of each scheme at a parameter and check the
        // transported source half-space is the complement of the target.
        for scheme_name in scheme_names() {
            let scheme = pairing_scheme(scheme_name).unwrap();
            let fam = make_family(&scheme.family).unwrap();
            let ts: Vec<f64> = match scheme.family.as_str() {
                "eucl_parallelepiped" => vec![0.3],
                _ => vec![0.6, 0.35],
            };
            for &t in &ts {
                let p = fam.polytope_at(t, 1e-10).unwrap();
                let dual = p.dual_form();
                for pr in &scheme.pairings {
                    let mut m = ProjectiveMap::identity(fam.dim + 1);
                    for step in &pr.recipe {
                        let step_m = match step {
                            RecipeStep::FlipAxis(a) => {
                                ProjectiveMap::coordinate_flip(fam.dim + 1, *a)
                            }
                            RecipeStep::ReflectWall(l) => {
                                let w = &p.wall(l).unwrap().half_space;
                                if p.geometry() == GeometryKind::Euclidean {
                                    crate::forms::euclidean_reflection(w).unwrap()
                                } else {
                                    reflection_in_hyperplane(&p.point_form(), w, 1e-12).unwrap()
                                }
                            }
                        };
                        m = step_m.compose(&m);
                    }
                    let src = &p.wall(&pr.source).unwrap().half_space;
                    let dst = &p.wall(&pr.target).unwrap().half_space;
                    let moved = m.act_dual(src, 1e-12).unwrap();
                    assert!(
                        moved.approx_eq(&dst.complement(), 1e-9),
                        "{scheme_name}/{} at t = {t}",
                        pr.label
                    );
                    let _ = dual;
                }
            }
        }
    }
}
