//! Words in pairing isometries, edge-cycle angle sums, and singularity
//! detection across the transition.
//!
//! Cone angles are computed as angle sums along edge cycles, not as
//! holonomy logarithms; the rotation angle extracted from the holonomy is
//! used as a cross-check where the fixed axis is well conditioned. In the
//! half-pipe regime "cone singularity" means the holonomy is the rotation
//! analogue — a spacelike Minkowski translation under the dictionary — and
//! its magnitude is reported with the `√q(b)` convention from
//! [`crate::halfpipe`], which assigns the rotation analogue no angle, only
//! a translation length.

use crate::forms::{
    euclidean_reflection, reflection_in_hyperplane, GeometryKind, ProjectiveMap,
};
use crate::gallery::{
    make_family, EdgeCycleDef, GalleryError, PairingScheme, RecipeStep,
};
use crate::halfpipe::{classify_hp, hp_from_projective, HpClass};
use crate::linalg::eig3;
use crate::param::{ParamScalar, Side};
use crate::polytope::{wall_relation, PolytopeError, WallRelation};
use crate::transition::IsometryPath;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum HolonomyError {
    UnknownPairing { scheme: String, label: String },
    UnknownCycle { scheme: String, name: String },
    UnsupportedGeometry(GeometryKind),
    NoAngle { walls: (String, String), detail: String },
    Gallery(GalleryError),
    Polytope(PolytopeError),
}

impl fmt::Display for HolonomyError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HolonomyError::UnknownPairing { scheme, label } => {
                write!(f, "scheme {scheme:?} has no pairing {label:?}")
            }
            HolonomyError::UnknownCycle { scheme, name } => {
                write!(f, "scheme {scheme:?} has no edge cycle {name:?}")
            }
            HolonomyError::UnsupportedGeometry(g) => {
                write!(f, "recipes cannot be evaluated directly in {} geometry", g.label())
            }
            HolonomyError::NoAngle { walls, detail } => {
                write!(f, "no dihedral angle between {} and {}: {detail}", walls.0, walls.1)
            }
            HolonomyError::Gallery(e) => write!(f, "{e}"),
            HolonomyError::Polytope(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for HolonomyError {}

impl From<GalleryError> for HolonomyError {
    fn from(e: GalleryError) -> Self {
        HolonomyError::Gallery(e)
    }
}

impl From<PolytopeError> for HolonomyError {
    fn from(e: PolytopeError) -> Self {
        HolonomyError::Polytope(e)
    }
}

/// A word in the pairing generators, with exponents ±1.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopWord(pub Vec<(String, i8)>);

impl LoopWord {
    pub fn empty() -> Self {
        LoopWord(Vec::new())
    }

    pub fn commutator(a: &str, b: &str) -> Self {
        LoopWord(vec![
            (a.to_string(), 1),
            (b.to_string(), 1),
            (a.to_string(), -1),
            (b.to_string(), -1),
        ])
    }

    /// Parse `"lr,tb,lr^-1,tb^-1"`.
    pub fn parse(s: &str) -> Result<Self, String> {
        let mut out = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            match part.strip_suffix("^-1") {
                Some(base) => out.push((base.to_string(), -1)),
                None => out.push((part.to_string(), 1)),
            }
        }
        Ok(LoopWord(out))
    }

    pub fn concat(&self, other: &LoopWord) -> LoopWord {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        LoopWord(v)
    }
}

/// The matrix of one pairing recipe at parameter `t`.
pub fn recipe_matrix(
    scheme: &PairingScheme,
    label: &str,
    t: f64,
    tol: f64,
) -> Result<ProjectiveMap<f64>, HolonomyError> {
    let pairing = scheme
        .pairing(label)
        .ok_or_else(|| HolonomyError::UnknownPairing {
            scheme: scheme.name.clone(),
            label: label.to_string(),
        })?;
    let fam = make_family(&scheme.family)?;
    let geometry = fam.geometry(t);
    let mut m = ProjectiveMap::identity(fam.dim + 1);
    for step in &pairing.recipe {
        let step_m = match step {
            RecipeStep::FlipAxis(a) => ProjectiveMap::coordinate_flip(fam.dim + 1, *a),
            RecipeStep::ReflectWall(wl) => {
                let branch = fam.wall_branch(wl, t)?;
                let wall = crate::param::family_eval(branch, t).map_err(GalleryError::Param)?;
                match geometry {
                    GeometryKind::Euclidean => euclidean_reflection(&wall)
                        .map_err(|e| HolonomyError::Polytope(PolytopeError::Forms(e)))?,
                    GeometryKind::HalfPipe => {
                        return Err(HolonomyError::UnsupportedGeometry(geometry))
                    }
                    _ => reflection_in_hyperplane(&geometry.point_form(fam.dim), &wall, tol)
                        .map_err(|e| HolonomyError::Polytope(PolytopeError::Forms(e)))?,
                }
            }
        };
        m = step_m.compose(&m);
    }
    Ok(m)
}

/// Ordered product of recipe matrices for a word.
pub fn holonomy(
    word: &LoopWord,
    scheme: &PairingScheme,
    t: f64,
    tol: f64,
) -> Result<ProjectiveMap<f64>, HolonomyError> {
    let fam = make_family(&scheme.family)?;
    let mut m = ProjectiveMap::identity(fam.dim + 1);
    for (label, exp) in &word.0 {
        let g = recipe_matrix(scheme, label, t, tol)?;
        let g = if *exp == 1 {
            g
        } else {
            g.inverse(tol)
                .map_err(|e| HolonomyError::Polytope(PolytopeError::Forms(e)))?
        };
        m = m.compose(&g);
    }
    Ok(m)
}

/// Symbolic path `t ↦ recipe matrix` on one side of 0, for limit taking.
/// Sign flips contribute constant blocks; wall reflections contribute their
/// dual-norm-scaled polynomial form. Positive rescalings of each factor do
/// not change the projective class of the product up to overall sign, which
/// the limit machinery normalizes away.
pub fn recipe_limit_path(
    scheme: &PairingScheme,
    label: &str,
    side: Side,
) -> Result<IsometryPath, HolonomyError> {
    let pairing = scheme
        .pairing(label)
        .ok_or_else(|| HolonomyError::UnknownPairing {
            scheme: scheme.name.clone(),
            label: label.to_string(),
        })?;
    let fam = make_family(&scheme.family)?;
    let geometry = match side {
        Side::Pos => fam.geometry_pos,
        Side::Neg => fam.geometry_neg,
    };
    if geometry == GeometryKind::Euclidean || geometry == GeometryKind::HalfPipe {
        return Err(HolonomyError::UnsupportedGeometry(geometry));
    }
    let n = fam.dim + 1;
    let mut acc: Option<Vec<Vec<ParamScalar>>> = None;
    for step in &pairing.recipe {
        let step_rows: Vec<Vec<ParamScalar>> = match step {
            RecipeStep::FlipAxis(a) => (0..n)
                .map(|i| {
                    (0..n)
                        .map(|j| {
                            ParamScalar::integer(if i != j {
                                0
                            } else if i == *a {
                                -1
                            } else {
                                1
                            })
                        })
                        .collect()
                })
                .collect(),
            RecipeStep::ReflectWall(wl) => {
                let branch = fam.wall_branch_side(wl, side)?;
                reflection_rows(&branch.coeffs, &geometry.point_form(fam.dim))
                    .expect("non-degenerate ambient form")
            }
        };
        acc = Some(match acc {
            None => step_rows,
            Some(prev) => symbolic_matmul(&step_rows, &prev),
        });
    }
    Ok(IsometryPath::from_symbolic(acc.expect("recipes are nonempty")))
}

#[allow(clippy::needless_range_loop)]
fn reflection_rows(
    coeffs: &[ParamScalar],
    form: &crate::forms::QuadraticForm,
) -> Option<Vec<Vec<ParamScalar>>> {
    if form.is_degenerate() {
        return None;
    }
    let n = form.dim();
    let mut norm: Option<ParamScalar> = None;
    for i in 0..n {
        let sq = coeffs[i].clone() * coeffs[i].clone();
        let term = if form.signs()[i] == 1 { sq } else { -sq };
        norm = Some(match norm {
            Some(acc) => acc + term,
            None => term,
        });
    }
    let norm = norm?;
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
            let signed = if form.signs()[i] == 1 { prod } else { -prod };
            row.push(diag - signed);
        }
        rows.push(row);
    }
    Some(rows)
}

fn symbolic_matmul(
    a: &[Vec<ParamScalar>],
    b: &[Vec<ParamScalar>],
) -> Vec<Vec<ParamScalar>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc: Option<ParamScalar> = None;
                    for k in 0..n {
                        let term = a[i][k].clone() * b[k][j].clone();
                        acc = Some(match acc {
                            Some(s) => s + term,
                            None => term,
                        });
                    }
                    acc.unwrap()
                })
                .collect()
        })
        .collect()
}

/// Sum of dihedral angles around an edge cycle.
///
/// An asymptotically parallel pair (the edge has retreated to an ideal
/// point) contributes zero; disjoint or mixed-signature pairs are errors.
pub fn cone_angle(
    cycle: &EdgeCycleDef,
    scheme: &PairingScheme,
    t: f64,
    tol: f64,
) -> Result<f64, HolonomyError> {
    let fam = make_family(&scheme.family)?;
    let geometry = fam.geometry(t);
    let dual = geometry.dual_form(fam.dim);
    let mut sum = 0.0;
    for (_, (la, lb)) in &cycle.entries {
        let wa = crate::param::family_eval(fam.wall_branch(la, t)?, t)
            .map_err(GalleryError::Param)?;
        let wb = crate::param::family_eval(fam.wall_branch(lb, t)?, t)
            .map_err(GalleryError::Param)?;
        match wall_relation(&dual, &wa, &wb, tol)? {
            WallRelation::Angle { theta, .. } => sum += theta,
            WallRelation::AsymptoticallyParallel { self_pair: false } => {}
            other => {
                return Err(HolonomyError::NoAngle {
                    walls: (la.clone(), lb.clone()),
                    detail: format!("{other:?}"),
                })
            }
        }
    }
    Ok(sum)
}

/// Classification of a holonomy element.
#[derive(Debug, Clone, PartialEq)]
pub enum Singularity {
    Trivial,
    /// Riemannian cone point: the rotation angle around the fixed axis.
    Cone { angle: f64 },
    /// Half-pipe cone point: the holonomy is a rotation analogue; the
    /// magnitude is the Minkowski length of its translation part (a
    /// convention, not an angle).
    HpCone { magnitude: f64 },
    Other { descriptor: String },
}

/// Detect the singularity type of a holonomy element.
pub fn detect_singularity(
    h: &ProjectiveMap<f64>,
    geometry: GeometryKind,
    tol: f64,
) -> Singularity {
    if h.is_identity(tol.max(1e-12)) {
        return Singularity::Trivial;
    }
    match geometry {
        GeometryKind::HalfPipe => match hp_from_projective(h, 1e-8) {
            Ok(hp) => match classify_hp(&hp, 1e-8) {
                Ok(HpClass::Identity) => Singularity::Trivial,
                Ok(HpClass::HpRotation { magnitude, .. }) => Singularity::HpCone { magnitude },
                Ok(other) => Singularity::Other {
                    descriptor: format!("{other:?}"),
                },
                Err(e) => Singularity::Other {
                    descriptor: format!("{e}"),
                },
            },
            Err(e) => Singularity::Other {
                descriptor: format!("{e}"),
            },
        },
        _ if h.dim() == 3 => {
            let m = h.canonical_scale();
            let (_, pair) = eig3(m.matrix());
            match pair {
                Some((re, im)) => Singularity::Cone {
                    angle: im.abs().atan2(re).abs(),
                },
                None => Singularity::Other {
                    descriptor: "real spectrum; not a rotation".into(),
                },
            }
        }
        _ => Singularity::Other {
            descriptor: format!(
                "no rotation-angle extraction implemented for {} in dimension {}",
                geometry.label(),
                h.dim() - 1
            ),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{eval_form, QuadraticForm};
    use crate::gallery::pairing_scheme;
    use crate::linalg::Matrix;

    #[test]
    fn empty_word_is_identity() {
        let scheme = pairing_scheme("torus_from_quadrilateral").unwrap();
        let h = holonomy(&LoopWord::empty(), scheme, 0.5, 1e-12).unwrap();
        assert!(h.is_identity(1e-12));
    }

    #[test]
    fn holonomy_is_a_homomorphism() {
        let scheme = pairing_scheme("torus_from_quadrilateral").unwrap();
        let t = 0.6;
        let w1 = LoopWord::parse("lr,tb").unwrap();
        let w2 = LoopWord::parse("tb^-1,lr").unwrap();
        let lhs = holonomy(&w1.concat(&w2), scheme, t, 1e-12).unwrap();
        let rhs = holonomy(&w1, scheme, t, 1e-12)
            .unwrap()
            .compose(&holonomy(&w2, scheme, t, 1e-12).unwrap());
        assert!(lhs.approx_eq(&rhs, 1e-11));
    }

    #[test]
    fn quadrilateral_commutator_is_elliptic() {
        // The puncture holonomy fixes a timelike axis and rotates by the
        // cone angle.
        let scheme = pairing_scheme("torus_from_quadrilateral").unwrap();
        let tau = 0.8f64.tanh();
        let h = holonomy(&LoopWord::commutator("lr", "tb"), scheme, tau, 1e-12).unwrap();
        // The recipe product is an honest Lorentz matrix, so its spectrum
        // sits on the unit circle.
        let (real, pair) = eig3(h.matrix());
        let (re, im) = pair.expect("elliptic commutator has a complex pair");
        // Fixed axis: eigenvector of the real eigenvalue, timelike.
        let lam = real[0];
        let mut shifted = h.matrix().clone();
        for i in 0..3 {
            shifted[(i, i)] -= lam;
        }
        let axis = shifted.nullspace(1e-7);
        assert_eq!(axis.len(), 1);
        let q = QuadraticForm::hyperbolic(2);
        assert!(eval_form(&q, &axis[0]).unwrap() < 0.0, "axis must be timelike");
        // Rotation angle agrees with the angle sum around the puncture.
        let cycle = scheme.cycle("puncture").unwrap();
        let angle = cone_angle(cycle, scheme, tau, 1e-10).unwrap();
        let holo_angle = im.abs().atan2(re).abs();
        let norm = (re * re + im * im).sqrt();
        assert!((norm - 1.0).abs() < 1e-9);
        assert!(
            (holo_angle - (2.0 * std::f64::consts::PI - angle)).abs() < 1e-9,
            "rotation by the angle defect: {holo_angle} vs 2π − {angle}"
        );
        match detect_singularity(&h, GeometryKind::Hyperbolic, 1e-10) {
            Singularity::Cone { angle: a } => assert!((a - holo_angle).abs() < 1e-9),
            other => panic!("expected a cone, got {other:?}"),
        }
    }

    #[test]
    fn three_torus_commutators_are_trivial() {
        let scheme = pairing_scheme("three_torus_translations").unwrap();
        for (a, b) in [("tx1", "tx2"), ("tx1", "tx3"), ("tx2", "tx3")] {
            let h = holonomy(&LoopWord::commutator(a, b), scheme, 0.0, 1e-12).unwrap();
            assert!(h.is_identity(1e-12));
            assert_eq!(
                detect_singularity(&h, GeometryKind::Euclidean, 1e-12),
                Singularity::Trivial
            );
        }
        // And the parallelepiped edge cycle closes with angle 2π.
        let cycle = scheme.cycle("edge_x2x3").unwrap();
        let angle = cone_angle(cycle, scheme, 0.0, 1e-10).unwrap();
        assert!((angle - 2.0 * std::f64::consts::PI).abs() < 1e-12);
    }

    #[test]
    fn borromean_edge_angle_curve() {
        let scheme = pairing_scheme("borromean_double").unwrap();
        let cycle = scheme.cycle("lower_edge").unwrap();
        // Ideal at t = 1: the edge angle sum is empty.
        let at_one = cone_angle(cycle, scheme, 1.0, 1e-9).unwrap();
        assert_eq!(at_one, 0.0);
        // Strictly increasing toward 2π as t decreases to 0.
        let grid = [0.8, 0.6, 0.4, 0.2, 0.1];
        let mut prev = at_one;
        for &t in &grid {
            let a = cone_angle(cycle, scheme, t, 1e-9).unwrap();
            assert!(a > prev, "monotone at t = {t}");
            prev = a;
        }
        assert!(prev < 2.0 * std::f64::consts::PI);
        assert!(2.0 * std::f64::consts::PI - prev < 0.1);
    }

    #[test]
    fn quad_prime_recipe_limits_under_eta() {
        use crate::halfpipe::{hp_to_mink, hp_translation_length_on_h1};
        use crate::param::RescaleKind;
        use crate::transition::limit_conjugated_isometry;
        let scheme = pairing_scheme("torus_from_quad_prime").unwrap();
        // Left-right: the limit is a boost translating the unit hyperbola
        // by 2·arcsinh(1).
        let path = recipe_limit_path(scheme, "lr", Side::Pos).unwrap();
        let lim = limit_conjugated_isometry(&path, RescaleKind::Eta, Side::Pos, 2).unwrap();
        let hp = hp_from_projective(&lim.map, 1e-8).unwrap();
        let ell = hp_translation_length_on_h1(&hp).unwrap();
        assert!((ell - 2.0 * 1.0f64.asinh()).abs() < 1e-9);
        // Top-bottom: the limit is the fiber translation moving the top
        // wall to the bottom wall; its Minkowski vector has length 2 in
        // the timelike direction.
        let path = recipe_limit_path(scheme, "tb", Side::Pos).unwrap();
        let lim = limit_conjugated_isometry(&path, RescaleKind::Eta, Side::Pos, 2).unwrap();
        let hp = hp_from_projective(&lim.map, 1e-8).unwrap();
        let m = hp_to_mink(&hp, 1e-9);
        assert!(m.linear().sub(&Matrix::identity(2)).max_abs() < 1e-9);
        let b = m.translation();
        assert!((b[0] - 2.0).abs() < 1e-9 && b[1].abs() < 1e-9, "b = {b:?}");
    }

    #[test]
    fn right_angled_limit_reflections_commute() {
        use crate::param::RescaleKind;
        use crate::transition::{limit_conjugated_isometry, IsometryPath};
        // Walls of the plane-collapse octahedron that meet at right angles
        // have commuting limit reflections.
        let fam = make_family("oct_prime").unwrap();
        let form = GeometryKind::Hyperbolic.point_form(3);
        let mut limits = Vec::new();
        for label in ["L1", "R2"] {
            let branch = fam.wall_branch_side(label, Side::Pos).unwrap();
            let path = IsometryPath::reflection_in_wall(&branch.coeffs, &form);
            limits.push(
                limit_conjugated_isometry(&path, RescaleKind::Eta, Side::Pos, 3)
                    .unwrap()
                    .map,
            );
        }
        let ab = limits[0].compose(&limits[1]);
        let ba = limits[1].compose(&limits[0]);
        assert!(ab.approx_eq(&ba, 1e-9));
    }
}
