//! Finite half-space intersections in the projective models: vertex
//! enumeration, adjacency, dihedral data, wall separations, cross-sections,
//! and Gram-matrix comparison up to wall permutation.
//!
//! Vertex enumeration is deliberately exhaustive: every rank-n subset of
//! wall hyperplanes is solved and filtered. At the sizes this crate handles
//! (at most 22 walls in ambient dimension 4) that is a few thousand small
//! eliminations, robust, and works unchanged in exact mode.

use crate::forms::{
    eval_form, pairing, DualHalfSpace, FormsError, GeometryKind, ProjectivePoint, QuadraticForm,
};
use crate::linalg::Matrix;
use crate::rng::Rng;
use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum PolytopeError {
    BadDimension { n: usize },
    TooManyWalls { count: usize },
    InteriorNotStrict { label: String },
    DuplicateWalls { a: String, b: String },
    NonSimple { walls: Vec<String> },
    DegenerateWall { label: String },
    NotUltraparallel,
    EmptySection,
    DegenerateSlice,
    Forms(FormsError),
}

impl fmt::Display for PolytopeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolytopeError::BadDimension { n } => {
                write!(f, "ambient dimension {n} outside the supported range 2..=4")
            }
            PolytopeError::TooManyWalls { count } => {
                write!(f, "{count} walls exceed the supported maximum of 32")
            }
            PolytopeError::InteriorNotStrict { label } => {
                write!(f, "interior point is not strictly inside wall {label}")
            }
            PolytopeError::DuplicateWalls { a, b } => {
                write!(f, "walls {a} and {b} coincide projectively")
            }
            PolytopeError::NonSimple { walls } => {
                write!(
                    f,
                    "non-simple degenerate configuration at walls {}",
                    walls.join(", ")
                )
            }
            PolytopeError::DegenerateWall { label } => {
                write!(f, "wall {label} has degenerate dual norm")
            }
            PolytopeError::NotUltraparallel => {
                write!(f, "walls intersect or are tangent; no distance is defined")
            }
            PolytopeError::EmptySection => write!(f, "cross-section has empty interior"),
            PolytopeError::DegenerateSlice => {
                write!(f, "slicing hyperplane is degenerate for this form")
            }
            PolytopeError::Forms(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for PolytopeError {}

impl From<FormsError> for PolytopeError {
    fn from(e: FormsError) -> Self {
        PolytopeError::Forms(e)
    }
}

/// A labeled wall.
#[derive(Debug, Clone)]
pub struct Wall<S> {
    pub label: String,
    pub half_space: DualHalfSpace<S>,
}

/// A finite intersection of half-spaces with a designated interior point.
#[derive(Debug, Clone)]
pub struct Polytope<S> {
    geometry: GeometryKind,
    walls: Vec<Wall<S>>,
    interior: ProjectivePoint<S>,
}

impl<S: Scalar> Polytope<S> {
    pub fn new(
        geometry: GeometryKind,
        walls: Vec<(String, DualHalfSpace<S>)>,
        interior: ProjectivePoint<S>,
        tol: f64,
    ) -> Result<Self, PolytopeError> {
        for (label, hs) in &walls {
            let v = hs.evaluate(interior.coords());
            let scale: f64 = hs.coeffs().iter().map(|c| c.to_f64().abs()).sum::<f64>()
                * interior
                    .coords()
                    .iter()
                    .map(|c| c.to_f64().abs())
                    .fold(0.0, f64::max);
            if v.is_positive() || v.is_zero_tol(tol * scale.max(1.0)) {
                return Err(PolytopeError::InteriorNotStrict {
                    label: label.clone(),
                });
            }
        }
        for i in 0..walls.len() {
            for j in i + 1..walls.len() {
                if walls[i].1.approx_eq(&walls[j].1, tol) {
                    return Err(PolytopeError::DuplicateWalls {
                        a: walls[i].0.clone(),
                        b: walls[j].0.clone(),
                    });
                }
            }
        }
        Ok(Polytope {
            geometry,
            walls: walls
                .into_iter()
                .map(|(label, half_space)| Wall { label, half_space })
                .collect(),
            interior,
        })
    }

    pub fn geometry(&self) -> GeometryKind {
        self.geometry
    }

    /// Ambient projective dimension n (walls live on ℝ^{n+1}).
    pub fn dim(&self) -> usize {
        self.walls[0].half_space.dim() - 1
    }

    pub fn walls(&self) -> &[Wall<S>] {
        &self.walls
    }

    pub fn wall(&self, label: &str) -> Option<&Wall<S>> {
        self.walls.iter().find(|w| w.label == label)
    }

    pub fn interior(&self) -> &ProjectivePoint<S> {
        &self.interior
    }

    pub fn point_form(&self) -> QuadraticForm {
        self.geometry.point_form(self.dim())
    }

    pub fn dual_form(&self) -> QuadraticForm {
        self.geometry.dual_form(self.dim())
    }
}

/// A vertex together with the indices of the walls vanishing on it.
#[derive(Debug, Clone)]
pub struct Vertex<S> {
    pub point: ProjectivePoint<S>,
    pub incident_walls: Vec<usize>,
}

/// Enumerated vertices, classified by the sign of the point form.
#[derive(Debug, Clone)]
pub struct VertexSet<S> {
    pub finite: Vec<Vertex<S>>,
    pub ideal: Vec<Vertex<S>>,
    /// Solutions outside the model (positive point form); empty for the
    /// shipped families but kept for transparency.
    pub hyperideal: Vec<Vertex<S>>,
}

impl<S: Scalar> VertexSet<S> {
    pub fn all(&self) -> impl Iterator<Item = &Vertex<S>> {
        self.finite
            .iter()
            .chain(self.ideal.iter())
            .chain(self.hyperideal.iter())
    }

    pub fn count(&self) -> usize {
        self.finite.len() + self.ideal.len() + self.hyperideal.len()
    }
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(idx.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Solve every rank-n subset of wall equations, keep solutions satisfying
/// all wall inequalities, deduplicate projectively, and classify by the
/// sign of the point form.
pub fn enumerate_vertices<S: Scalar>(
    p: &Polytope<S>,
    tol: f64,
) -> Result<VertexSet<S>, PolytopeError> {
    let n = p.dim();
    if !(2..=4).contains(&n) {
        return Err(PolytopeError::BadDimension { n });
    }
    if p.walls.len() > 32 {
        return Err(PolytopeError::TooManyWalls {
            count: p.walls.len(),
        });
    }
    let mut points: Vec<ProjectivePoint<S>> = Vec::new();
    for combo in combinations(p.walls.len(), n) {
        let rows: Vec<Vec<S>> = combo
            .iter()
            .map(|&i| p.walls[i].half_space.coeffs().to_vec())
            .collect();
        let m = Matrix::from_rows(rows);
        let ns = m.nullspace(tol);
        if ns.len() != 1 {
            continue;
        }
        let v = ns.into_iter().next().unwrap();
        let vm: f64 = v.iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
        let candidate_ok = |cand: &[S]| {
            p.walls.iter().all(|w| {
                let val = w.half_space.evaluate(cand);
                let ws: f64 = w
                    .half_space
                    .coeffs()
                    .iter()
                    .map(|c| c.to_f64().abs())
                    .fold(0.0, f64::max);
                !val.is_positive() || val.is_zero_tol(tol * (ws * vm).max(1e-30))
            })
        };
        let neg: Vec<S> = v.iter().map(|c| -c.clone()).collect();
        let chosen = if candidate_ok(&v) {
            Some(v)
        } else if candidate_ok(&neg) {
            Some(neg)
        } else {
            None
        };
        let Some(cand) = chosen else { continue };
        let pt = ProjectivePoint::new(cand);
        if !points.iter().any(|q| q.approx_eq(&pt, 1e-7)) {
            points.push(pt);
        }
    }

    let form = p.point_form();
    let mut out = VertexSet {
        finite: Vec::new(),
        ideal: Vec::new(),
        hyperideal: Vec::new(),
    };
    for pt in points {
        let vm: f64 = pt.coords().iter().map(|c| c.to_f64().abs()).fold(0.0, f64::max);
        let incident: Vec<usize> = p
            .walls
            .iter()
            .enumerate()
            .filter(|(_, w)| {
                let ws: f64 = w
                    .half_space
                    .coeffs()
                    .iter()
                    .map(|c| c.to_f64().abs())
                    .fold(0.0, f64::max);
                w.half_space
                    .evaluate(pt.coords())
                    .is_zero_tol((tol * ws * vm).max(1e-30))
            })
            .map(|(i, _)| i)
            .collect();
        let rows: Vec<Vec<S>> = incident
            .iter()
            .map(|&i| p.walls[i].half_space.coeffs().to_vec())
            .collect();
        let rank = Matrix::from_rows(rows).rank(tol);
        if rank < n {
            return Err(PolytopeError::NonSimple {
                walls: incident
                    .iter()
                    .map(|&i| p.walls[i].label.clone())
                    .collect(),
            });
        }
        let value = eval_form(&form, pt.coords())?;
        let norm2: f64 = pt
            .coords()
            .iter()
            .map(|c| c.to_f64() * c.to_f64())
            .sum();
        let vertex = Vertex {
            point: pt,
            incident_walls: incident,
        };
        if value.is_zero_tol(tol * norm2.max(1.0)) {
            out.ideal.push(vertex);
        } else if value.is_positive() {
            out.hyperideal.push(vertex);
        } else {
            out.finite.push(vertex);
        }
    }
    Ok(out)
}

/// Wall pairs sharing a codimension-2 face: the vertices incident to both
/// walls span a projective subspace of dimension n−2.
pub fn adjacency<S: Scalar>(p: &Polytope<S>, vs: &VertexSet<S>, tol: f64) -> Vec<(usize, usize)> {
    let n = p.dim();
    let mut pairs = Vec::new();
    for i in 0..p.walls.len() {
        for j in i + 1..p.walls.len() {
            let shared: Vec<&Vertex<S>> = vs
                .all()
                .filter(|v| v.incident_walls.contains(&i) && v.incident_walls.contains(&j))
                .collect();
            if shared.is_empty() {
                continue;
            }
            let rows: Vec<Vec<S>> = shared
                .iter()
                .map(|v| v.point.coords().to_vec())
                .collect();
            if Matrix::from_rows(rows).rank(tol) >= n - 1 {
                pairs.push((i, j));
            }
        }
    }
    pairs
}

/// Classified relation between two walls under the dual pairing.
#[derive(Debug, Clone, PartialEq)]
pub enum WallRelation {
    /// Both walls genuine and intersecting: the dihedral angle in (0, π).
    Angle { theta: f64, normalized_pairing: f64 },
    /// |normalized pairing| = 1 within tolerance (includes self-pairs).
    AsymptoticallyParallel { self_pair: bool },
    /// Disjoint genuine walls, with the distance between them.
    Ultraparallel { distance: f64 },
    /// Two timelike-dual walls: the timelike separation between spacelike
    /// planes (Anti-de Sitter side).
    TimelikeSeparation { distance: f64 },
    /// Spacelike-dual against timelike-dual: no Riemannian angle; the raw
    /// invariant is reported instead.
    Mixed { pairing: f64 },
}

/// Classify the pair `(a, b)` under the dual form.
pub fn wall_relation(
    dual: &QuadraticForm,
    a: &DualHalfSpace<f64>,
    b: &DualHalfSpace<f64>,
    tol: f64,
) -> Result<WallRelation, PolytopeError> {
    let na = pairing(dual, a.coeffs(), a.coeffs())?;
    let nb = pairing(dual, b.coeffs(), b.coeffs())?;
    let sa: f64 = a.coeffs().iter().map(|c| c * c).sum();
    let sb: f64 = b.coeffs().iter().map(|c| c * c).sum();
    if na.abs() <= tol * sa {
        return Err(PolytopeError::DegenerateWall {
            label: format!("{:?}", a.canonical().coeffs()),
        });
    }
    if nb.abs() <= tol * sb {
        return Err(PolytopeError::DegenerateWall {
            label: format!("{:?}", b.canonical().coeffs()),
        });
    }
    let ab = pairing(dual, a.coeffs(), b.coeffs())?;
    let c = ab / (na.abs() * nb.abs()).sqrt();
    if na > 0.0 && nb > 0.0 {
        if (c.abs() - 1.0).abs() <= tol {
            Ok(WallRelation::AsymptoticallyParallel {
                self_pair: a.approx_eq(b, 1e-9),
            })
        } else if c.abs() < 1.0 {
            Ok(WallRelation::Angle {
                theta: (-c).acos(),
                normalized_pairing: c,
            })
        } else {
            Ok(WallRelation::Ultraparallel {
                distance: c.abs().acosh(),
            })
        }
    } else if na < 0.0 && nb < 0.0 {
        Ok(WallRelation::TimelikeSeparation {
            distance: c.clamp(-1.0, 1.0).acos(),
        })
    } else {
        Ok(WallRelation::Mixed { pairing: ab })
    }
}

/// Distance between ultraparallel walls, by the dual-pairing formula.
pub fn wall_distance(
    dual: &QuadraticForm,
    a: &DualHalfSpace<f64>,
    b: &DualHalfSpace<f64>,
    tol: f64,
) -> Result<f64, PolytopeError> {
    match wall_relation(dual, a, b, tol)? {
        WallRelation::Ultraparallel { distance } => Ok(distance),
        _ => Err(PolytopeError::NotUltraparallel),
    }
}

/// Independent oracle for [`wall_distance`]: minimize the hyperbolic
/// distance between points sampled on the two hyperplanes, by seeded
/// multistart followed by coordinate descent on the hyperboloid.
pub fn wall_distance_sampled(
    point_form: &QuadraticForm,
    a: &DualHalfSpace<f64>,
    b: &DualHalfSpace<f64>,
    seed: u64,
) -> Result<f64, PolytopeError> {
    let basis_a = hyperplane_basis(a);
    let basis_b = hyperplane_basis(b);
    let mut rng = Rng::seeded(seed);
    let dim_a = basis_a.len();
    let dim_b = basis_b.len();

    // Objective: the Minkowski pairing of the two normalized points; its
    // arccosh of the negative is the distance.
    let project = |basis: &[Vec<f64>], u: &[f64]| -> Option<Vec<f64>> {
        let n = basis[0].len();
        let mut v = vec![0.0; n];
        for (c, bvec) in u.iter().zip(basis) {
            for i in 0..n {
                v[i] += c * bvec[i];
            }
        }
        let q = eval_form(point_form, &v).ok()?;
        if q >= -1e-12 {
            return None;
        }
        let s = (-q).sqrt();
        let sign = if v[0] < 0.0 { -1.0 } else { 1.0 };
        Some(v.iter().map(|x| sign * x / s).collect())
    };
    let cost = |u: &[f64]| -> Option<f64> {
        let pa = project(&basis_a, &u[..dim_a])?;
        let pb = project(&basis_b, &u[dim_a..])?;
        Some(-pairing(point_form, &pa, &pb).ok()?)
    };

    let mut best: Option<(Vec<f64>, f64)> = None;
    for _ in 0..400 {
        let u: Vec<f64> = (0..dim_a + dim_b).map(|_| rng.symmetric(1.0)).collect();
        if let Some(v) = cost(&u) {
            if best.as_ref().is_none_or(|(_, bv)| v < *bv) {
                best = Some((u, v));
            }
        }
    }
    let (mut u, mut value) = best.ok_or(PolytopeError::NotUltraparallel)?;

    // Coordinate descent with shrinking steps; the objective is smooth and
    // the minimizer interior, so this converges well past 1e-10.
    let mut step = 0.5;
    while step > 1e-9 {
        let mut improved = false;
        for i in 0..u.len() {
            for dir in [-1.0, 1.0] {
                let mut cand = u.clone();
                cand[i] += dir * step;
                if let Some(v) = cost(&cand) {
                    if v < value - 1e-15 {
                        u = cand;
                        value = v;
                        improved = true;
                    }
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    if value < 1.0 {
        return Err(PolytopeError::NotUltraparallel);
    }
    Ok(value.acosh())
}

fn hyperplane_basis(a: &DualHalfSpace<f64>) -> Vec<Vec<f64>> {
    Matrix::from_rows(vec![a.coeffs().to_vec()]).nullspace(1e-12)
}

/// Cross-section of the polytope by the hyperplane `ker h`.
///
/// Builds an orthonormal basis of `ker h` for the ambient point form,
/// restricts every wall, drops redundant restrictions (decided by seeded
/// rejection sampling), and returns the lower-dimensional polytope with the
/// induced geometry.
pub fn cross_section(
    p: &Polytope<f64>,
    h: &DualHalfSpace<f64>,
    tol: f64,
    seed: u64,
) -> Result<Polytope<f64>, PolytopeError> {
    let dual = p.dual_form();
    let hn = pairing(&dual, h.coeffs(), h.coeffs())?;
    let hs: f64 = h.coeffs().iter().map(|c| c * c).sum();
    if hn.abs() <= tol * hs {
        return Err(PolytopeError::DegenerateSlice);
    }
    let form = p.point_form();
    let raw_basis = hyperplane_basis(h);

    // Signature-adapted Gram–Schmidt over the point form.
    let mut remaining = raw_basis;
    let mut basis: Vec<Vec<f64>> = Vec::new();
    let mut signs: Vec<i8> = Vec::new();
    while !remaining.is_empty() {
        // Orthogonalize every remaining vector against the chosen ones,
        // then take the one with the largest |q|.
        let mut best: Option<(usize, Vec<f64>, f64)> = None;
        for (i, v) in remaining.iter().enumerate() {
            let mut w = v.clone();
            for (bvec, &s) in basis.iter().zip(&signs) {
                let c = pairing(&form, &w, bvec).unwrap() * (s as f64);
                for k in 0..w.len() {
                    w[k] -= c * bvec[k];
                }
            }
            let q = eval_form(&form, &w).unwrap();
            if best.as_ref().is_none_or(|(_, _, bq)| q.abs() > bq.abs()) {
                best = Some((i, w, q));
            }
        }
        let (ix, w, q) = best.unwrap();
        remaining.remove(ix);
        if q.abs() <= 1e-12 {
            return Err(PolytopeError::DegenerateSlice);
        }
        let scale = q.abs().sqrt();
        let mut unit: Vec<f64> = w.iter().map(|x| x / scale).collect();
        // Keep timelike basis vectors future-pointing when they see x₀.
        if q < 0.0 && unit[0] < 0.0 {
            for x in unit.iter_mut() {
                *x = -*x;
            }
        }
        basis.push(unit);
        signs.push(if q > 0.0 { 1 } else { -1 });
    }
    // Order: one timelike direction first, spacelike in the middle, any
    // second timelike direction last, matching the recognized patterns.
    let mut order: Vec<usize> = Vec::new();
    if let Some(first_neg) = signs.iter().position(|&s| s == -1) {
        order.push(first_neg);
    }
    for (i, &s) in signs.iter().enumerate() {
        if s == 1 {
            order.push(i);
        }
    }
    for (i, &s) in signs.iter().enumerate() {
        if s == -1 && Some(i) != order.first().copied() {
            order.push(i);
        }
    }
    if order.len() < signs.len() {
        for i in 0..signs.len() {
            if !order.contains(&i) {
                order.push(i);
            }
        }
    }
    let basis: Vec<Vec<f64>> = order.iter().map(|&i| basis[i].clone()).collect();
    let signs: Vec<i8> = order.iter().map(|&i| signs[i]).collect();
    let induced = QuadraticForm::from_signs(signs.iter().copied());
    let geometry = GeometryKind::from_point_form(&induced)
        .ok_or(PolytopeError::DegenerateSlice)?;

    // Restrict walls.
    let mut restricted: Vec<(String, DualHalfSpace<f64>)> = Vec::new();
    for w in &p.walls {
        let coeffs: Vec<f64> = basis
            .iter()
            .map(|bvec| w.half_space.evaluate(bvec))
            .collect();
        let mag = coeffs.iter().map(|c| c.abs()).fold(0.0, f64::max);
        let wmag: f64 = w
            .half_space
            .coeffs()
            .iter()
            .map(|c| c.abs())
            .fold(0.0, f64::max);
        if mag <= 1e-9 * wmag.max(1.0) {
            // The wall contains the slice hyperplane (it is ±h); skip.
            continue;
        }
        let restriction = DualHalfSpace::new(coeffs);
        if !restricted.iter().any(|(_, r)| r.approx_eq(&restriction, 1e-9)) {
            restricted.push((w.label.clone(), restriction));
        }
    }
    if restricted.is_empty() {
        return Err(PolytopeError::EmptySection);
    }

    // Seeded sampling in the slice chart: interior point and redundancy.
    let m = basis.len() - 1;
    let mut rng = Rng::seeded(seed);
    let samples: Vec<Vec<f64>> = (0..10_000)
        .map(|_| {
            let mut v = vec![1.0];
            v.extend((0..m).map(|_| rng.symmetric(1.2)));
            v
        })
        .collect();
    let margin = |u: &[f64]| -> f64 {
        restricted
            .iter()
            .map(|(_, r)| {
                let norm: f64 = r.coeffs().iter().map(|c| c * c).sum::<f64>().sqrt();
                -r.evaluate(u) / norm
            })
            .fold(f64::INFINITY, f64::min)
    };
    let interior_chart = samples
        .iter()
        .max_by(|a, b| margin(a).total_cmp(&margin(b)))
        .cloned()
        .ok_or(PolytopeError::EmptySection)?;
    if margin(&interior_chart) <= tol.max(1e-9) {
        return Err(PolytopeError::EmptySection);
    }

    let essential: Vec<(String, DualHalfSpace<f64>)> = restricted
        .iter()
        .enumerate()
        .filter(|(k, (_, rk))| {
            samples.iter().any(|u| {
                rk.evaluate(u) > 1e-9
                    && restricted
                        .iter()
                        .enumerate()
                        .all(|(j, (_, rj))| j == *k || rj.evaluate(u) <= 0.0)
            })
        })
        .map(|(_, wl)| wl.clone())
        .collect();
    if essential.is_empty() {
        return Err(PolytopeError::EmptySection);
    }
    Polytope::new(
        geometry,
        essential,
        ProjectivePoint::new(interior_chart),
        tol,
    )
}

/// Normalized Gram matrix of the walls: `q*(αᵢ, αⱼ) / √(|q*ᵢᵢ||q*ⱼⱼ|)`.
pub fn gram_matrix(p: &Polytope<f64>) -> Result<Matrix<f64>, PolytopeError> {
    let dual = p.dual_form();
    let k = p.walls.len();
    let mut norms = Vec::with_capacity(k);
    for w in &p.walls {
        let nrm = pairing(&dual, w.half_space.coeffs(), w.half_space.coeffs())?;
        if nrm.abs() < 1e-12 {
            return Err(PolytopeError::DegenerateWall {
                label: w.label.clone(),
            });
        }
        norms.push(nrm);
    }
    let mut g = Matrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            let ab = pairing(
                &dual,
                p.walls[i].half_space.coeffs(),
                p.walls[j].half_space.coeffs(),
            )?;
            g[(i, j)] = ab / (norms[i].abs() * norms[j].abs()).sqrt();
        }
    }
    Ok(g)
}

/// Search for a wall permutation making the normalized Gram matrices equal
/// within `tol`. Candidates are pruned by the sign of the dual norm and the
/// adjacency degree before backtracking.
pub fn gram_compare(
    p: &Polytope<f64>,
    q: &Polytope<f64>,
    tol: f64,
) -> Result<Option<Vec<usize>>, PolytopeError> {
    if p.walls.len() != q.walls.len() {
        return Ok(None);
    }
    let gp = gram_matrix(p)?;
    let gq = gram_matrix(q)?;
    let k = p.walls.len();

    let degree = |poly: &Polytope<f64>| -> Result<Vec<usize>, PolytopeError> {
        let vs = enumerate_vertices(poly, 1e-9)?;
        let adj = adjacency(poly, &vs, 1e-7);
        let mut deg = vec![0usize; poly.walls.len()];
        for (i, j) in adj {
            deg[i] += 1;
            deg[j] += 1;
        }
        Ok(deg)
    };
    let dp = degree(p)?;
    let dq = degree(q)?;
    let sig = |g: &Matrix<f64>, d: &[usize], i: usize| (g[(i, i)].signum() as i64, d[i]);

    let mut perm: Vec<usize> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    #[allow(clippy::too_many_arguments)]
    fn backtrack(
        i: usize,
        k: usize,
        gp: &Matrix<f64>,
        gq: &Matrix<f64>,
        sig_ok: &dyn Fn(usize, usize) -> bool,
        perm: &mut Vec<usize>,
        used: &mut Vec<bool>,
        tol: f64,
    ) -> bool {
        if i == k {
            return true;
        }
        for cand in 0..k {
            if used[cand] || !sig_ok(i, cand) {
                continue;
            }
            let consistent = (0..i).all(|j| {
                (gp[(i, j)] - gq[(cand, perm[j])]).abs() <= tol
                    && (gp[(j, i)] - gq[(perm[j], cand)]).abs() <= tol
            });
            if !consistent {
                continue;
            }
            perm.push(cand);
            used[cand] = true;
            if backtrack(i + 1, k, gp, gq, sig_ok, perm, used, tol) {
                return true;
            }
            perm.pop();
            used[cand] = false;
        }
        false
    }
    let sig_ok = |i: usize, cand: usize| sig(&gp, &dp, i) == sig(&gq, &dq, cand);
    if backtrack(0, k, &gp, &gq, &sig_ok, &mut perm, &mut used, tol) {
        Ok(Some(perm))
    } else {
        Ok(None)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::ProjectiveMap;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn ideal_quadrilateral() -> Polytope<f64> {
        let walls = vec![
            ("left".into(), DualHalfSpace::new(vec![-1.0, -SQRT2, 0.0])),
            ("right".into(), DualHalfSpace::new(vec![-1.0, SQRT2, 0.0])),
            ("bottom".into(), DualHalfSpace::new(vec![-1.0, 0.0, -SQRT2])),
            ("top".into(), DualHalfSpace::new(vec![-1.0, 0.0, SQRT2])),
        ];
        Polytope::new(
            GeometryKind::Hyperbolic,
            walls,
            ProjectivePoint::new(vec![1.0, 0.0, 0.0]),
            1e-10,
        )
        .unwrap()
    }

    #[test]
    fn quadrilateral_vertices() {
        let p = ideal_quadrilateral();
        let vs = enumerate_vertices(&p, 1e-10).unwrap();
        assert_eq!(vs.finite.len(), 0);
        assert_eq!(vs.ideal.len(), 4);
        for v in &vs.ideal {
            assert_eq!(v.incident_walls.len(), 2);
            let chart = v.point.chart().unwrap();
            assert!((chart[0].abs() - SQRT2 / 2.0).abs() < 1e-12);
            assert!((chart[1].abs() - SQRT2 / 2.0).abs() < 1e-12);
        }
        let adj = adjacency(&p, &vs, 1e-8);
        assert_eq!(adj.len(), 4);
    }

    #[test]
    fn interior_point_must_be_strict() {
        let walls = vec![
            ("w".to_string(), DualHalfSpace::new(vec![0.0, 1.0, 0.0])),
            ("v".to_string(), DualHalfSpace::new(vec![-1.0, 0.0, 1.0])),
        ];
        let r = Polytope::new(
            GeometryKind::Hyperbolic,
            walls,
            ProjectivePoint::new(vec![1.0, 0.0, 0.0]),
            1e-10,
        );
        assert!(matches!(r, Err(PolytopeError::InteriorNotStrict { .. })));
    }

    #[test]
    fn wall_relation_branches() {
        let p = ideal_quadrilateral();
        let dual = p.dual_form();
        // Sides of an ideal polygon meet at infinity: no interior angle.
        let rel = wall_relation(
            &dual,
            &p.wall("left").unwrap().half_space,
            &p.wall("top").unwrap().half_space,
            1e-10,
        )
        .unwrap();
        assert!(matches!(
            rel,
            WallRelation::AsymptoticallyParallel { self_pair: false }
        ));
        // A wall against itself is flagged.
        let rel = wall_relation(
            &dual,
            &p.wall("left").unwrap().half_space,
            &p.wall("left").unwrap().half_space,
            1e-10,
        )
        .unwrap();
        assert!(matches!(
            rel,
            WallRelation::AsymptoticallyParallel { self_pair: true }
        ));
        // Adjacent octahedron faces are at right angles.
        let dual3 = QuadraticForm::hyperbolic(3);
        let f5 = DualHalfSpace::new(vec![-1.0, SQRT2, 0.0, -1.0]);
        let f6 = DualHalfSpace::new(vec![-1.0, SQRT2, 0.0, 1.0]);
        match wall_relation(&dual3, &f5, &f6, 1e-10).unwrap() {
            WallRelation::Angle { theta, .. } => {
                assert!((theta - std::f64::consts::FRAC_PI_2).abs() < 1e-12)
            }
            other => panic!("expected an angle, got {other:?}"),
        }
    }

    #[test]
    fn ultraparallel_distance_matches_sampled_oracle() {
        // Two disjoint vertical geodesics in the hyperbolic plane.
        let a = DualHalfSpace::new(vec![-1.0, 2.0, 0.0]);
        let b = DualHalfSpace::new(vec![-1.0, -2.0, 0.0]);
        let q = QuadraticForm::hyperbolic(2);
        let d = wall_distance(&q, &a, &b, 1e-10).unwrap();
        let oracle = wall_distance_sampled(&q, &a, &b, 0).unwrap();
        assert!(
            (d - oracle).abs() < 1e-6,
            "formula {d} vs oracle {oracle}"
        );
    }

    #[test]
    fn angles_invariant_under_isometry() {
        // A boosted pair of intersecting geodesics keeps its angle.
        let dual = QuadraticForm::hyperbolic(2);
        let a = DualHalfSpace::new(vec![-0.2, 1.0, 0.0]);
        let b = DualHalfSpace::new(vec![-0.1, 0.3, 1.0]);
        let (ch, sh) = (0.8f64.cosh(), 0.8f64.sinh());
        let boost = ProjectiveMap::from_rows(vec![
            vec![ch, sh, 0.0],
            vec![sh, ch, 0.0],
            vec![0.0, 0.0, 1.0],
        ]);
        let a2 = boost.act_dual(&a, 1e-12).unwrap();
        let b2 = boost.act_dual(&b, 1e-12).unwrap();
        let r1 = wall_relation(&dual, &a, &b, 1e-10).unwrap();
        let r2 = wall_relation(&dual, &a2, &b2, 1e-10).unwrap();
        match (r1, r2) {
            (WallRelation::Angle { theta: t1, .. }, WallRelation::Angle { theta: t2, .. }) => {
                assert!((t1 - t2).abs() < 1e-10)
            }
            other => panic!("unexpected relations {other:?}"),
        }
    }

    #[test]
    fn gram_compare_identity_and_flip() {
        let p = ideal_quadrilateral();
        let perm = gram_compare(&p, &p, 1e-9).unwrap().unwrap();
        assert_eq!(perm, vec![0, 1, 2, 3]);
    }
}
