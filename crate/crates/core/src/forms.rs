//! Diagonal quadratic forms on ℝ^{n+1} and the projective objects built on
//! them: points of the projective sphere, half-spaces encoded as linear
//! forms, and projective maps.
//!
//! Conventions used throughout the crate:
//!
//! * Points and linear forms are considered up to multiplication by a
//!   *positive* scalar (the projective sphere, a 2-to-1 cover of projective
//!   space). A half-space is `{x : α(x) ≤ 0}`.
//! * The dual pairing of two linear forms reuses the primal diagonal:
//!   `q*(α, β) = Σ signs[i]·α[i]·β[i]`. Under this convention a linear form
//!   cuts a genuine half-space of the hyperbolic locus exactly when
//!   `q*(α, α) > 0`. Some texts state the analogous condition with the
//!   opposite sign, which corresponds to a different normalization of the
//!   dual basis; the predicate here is validated against the shipped
//!   octahedron data, where every wall satisfies `q*(α, α) = 1` after
//!   normalization.

use crate::linalg::Matrix;
use crate::scalar::{Exact, Scalar};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FormsError {
    DimensionMismatch { expected: usize, got: usize },
    ZeroVector,
    DegenerateHyperplane,
    DegenerateForm,
    SingularMap,
}

impl fmt::Display for FormsError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FormsError::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            FormsError::ZeroVector => write!(f, "zero vector has no direction class"),
            FormsError::DegenerateHyperplane => {
                write!(f, "lightlike/degenerate hyperplane has no canonical reflection")
            }
            FormsError::DegenerateForm => {
                write!(f, "operation requires a non-degenerate quadratic form")
            }
            FormsError::SingularMap => write!(f, "projective map must be invertible"),
        }
    }
}

impl std::error::Error for FormsError {}

/// Geometry contexts that appear along the transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeometryKind {
    Hyperbolic,
    Spherical,
    Euclidean,
    AntiDeSitter,
    HalfPipe,
}

impl GeometryKind {
    /// Diagonal of the form whose sign classifies points (finite vs ideal).
    pub fn point_form(self, n: usize) -> QuadraticForm {
        match self {
            GeometryKind::Hyperbolic => QuadraticForm::hyperbolic(n),
            GeometryKind::Spherical => QuadraticForm::spherical(n),
            // The affine chart x₀ = 1: only the x₀ coordinate matters for
            // finiteness.
            GeometryKind::Euclidean => {
                QuadraticForm::from_signs([-1].into_iter().chain(std::iter::repeat_n(0, n)))
            }
            GeometryKind::AntiDeSitter => QuadraticForm::ads_transition(n),
            GeometryKind::HalfPipe => QuadraticForm::half_pipe(n),
        }
    }

    /// Diagonal of the pairing used between wall coefficient vectors.
    pub fn dual_form(self, n: usize) -> QuadraticForm {
        match self {
            // For the non-degenerate geometries the dual diagonal equals the
            // primal one.
            GeometryKind::Hyperbolic => QuadraticForm::hyperbolic(n),
            GeometryKind::Spherical => QuadraticForm::spherical(n),
            GeometryKind::AntiDeSitter => QuadraticForm::ads_transition(n),
            // Euclidean walls pair through their chart normals only.
            GeometryKind::Euclidean => {
                QuadraticForm::from_signs([0].into_iter().chain(std::iter::repeat_n(1, n)))
            }
            GeometryKind::HalfPipe => QuadraticForm::half_pipe(n),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            GeometryKind::Hyperbolic => "hyperbolic",
            GeometryKind::Spherical => "spherical",
            GeometryKind::Euclidean => "euclidean",
            GeometryKind::AntiDeSitter => "anti-de-sitter",
            GeometryKind::HalfPipe => "half-pipe",
        }
    }

    /// Recognize the geometry from a point-form sign pattern, as produced by
    /// the orthonormalization step of a cross-section.
    pub fn from_point_form(q: &QuadraticForm) -> Option<GeometryKind> {
        let s = q.signs();
        let n = s.len() - 1;
        if *q == QuadraticForm::spherical(n) {
            Some(GeometryKind::Spherical)
        } else if *q == QuadraticForm::hyperbolic(n) {
            Some(GeometryKind::Hyperbolic)
        } else if n >= 1 && *q == QuadraticForm::ads_transition(n) {
            Some(GeometryKind::AntiDeSitter)
        } else if n >= 1 && *q == QuadraticForm::half_pipe(n) {
            Some(GeometryKind::HalfPipe)
        } else if *q == GeometryKind::Euclidean.point_form(n) {
            Some(GeometryKind::Euclidean)
        } else {
            None
        }
    }
}

/// A diagonal quadratic form, stored as its sign vector.
///
/// Entries are −1, 0 or +1. Zero entries encode the degenerate forms used by
/// the half-pipe and affine-chart contexts; constructions that require a
/// non-degenerate form reject them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticForm {
    signs: Vec<i8>,
}

impl QuadraticForm {
    pub fn from_signs(signs: impl IntoIterator<Item = i8>) -> Self {
        let signs: Vec<i8> = signs.into_iter().collect();
        assert!(signs.len() >= 2, "need at least two coordinates");
        assert!(signs.iter().all(|s| (-1..=1).contains(s)));
        QuadraticForm { signs }
    }

    /// `(−, +, …, +)` on ℝ^{n+1}: the hyperboloid form.
    pub fn hyperbolic(n: usize) -> Self {
        Self::from_signs([-1].into_iter().chain(std::iter::repeat_n(1, n)))
    }

    /// `(+, …, +)` on ℝ^{n+1}: the round sphere.
    pub fn spherical(n: usize) -> Self {
        Self::from_signs(std::iter::repeat_n(1, n + 1))
    }

    /// Two leading minus signs: the standard quadric of signature (2, n−1).
    pub fn ads_leading(n: usize) -> Self {
        Self::from_signs(
            [-1, -1]
                .into_iter()
                .chain(std::iter::repeat_n(1, n - 1)),
        )
    }

    /// `(−, +, …, +, −)`: the Anti-de Sitter form with the timelike
    /// coordinate moved last, matching the direction rescaled by `η`.
    pub fn ads_transition(n: usize) -> Self {
        Self::from_signs(
            [-1].into_iter()
                .chain(std::iter::repeat_n(1, n - 1))
                .chain([-1]),
        )
    }

    /// `(−, +, …, +, 0)`: the degenerate half-pipe form.
    pub fn half_pipe(n: usize) -> Self {
        Self::from_signs(
            [-1].into_iter()
                .chain(std::iter::repeat_n(1, n - 1))
                .chain([0]),
        )
    }

    pub fn dim(&self) -> usize {
        self.signs.len()
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn is_degenerate(&self) -> bool {
        self.signs.contains(&0)
    }

    pub fn negative_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s == -1).count()
    }

    pub fn diagonal_matrix<S: Scalar>(&self) -> Matrix<S> {
        Matrix::diagonal(
            &self
                .signs
                .iter()
                .map(|&s| S::from_int(s as i64))
                .collect::<Vec<_>>(),
        )
    }
}

/// `q(x) = Σ signs[i]·x[i]²`.
pub fn eval_form<S: Scalar>(q: &QuadraticForm, x: &[S]) -> Result<S, FormsError> {
    pairing(q, x, x)
}

/// The bilinear companion `Σ signs[i]·x[i]·y[i]`, also used as the dual
/// pairing of wall coefficient vectors.
pub fn pairing<S: Scalar>(q: &QuadraticForm, x: &[S], y: &[S]) -> Result<S, FormsError> {
    if x.len() != q.dim() || y.len() != q.dim() {
        return Err(FormsError::DimensionMismatch {
            expected: q.dim(),
            got: if x.len() != q.dim() { x.len() } else { y.len() },
        });
    }
    let mut acc = S::zero();
    for i in 0..q.dim() {
        match q.signs[i] {
            0 => {}
            1 => acc = acc + x[i].clone() * y[i].clone(),
            _ => acc = acc - x[i].clone() * y[i].clone(),
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DirectionClass {
    Negative,
    Null,
    Positive,
}

/// Sign of `q(x)`, with `|q(x)| ≤ tol·‖x‖²` reported as null.
pub fn classify_direction<S: Scalar>(
    q: &QuadraticForm,
    x: &[S],
    tol: f64,
) -> Result<DirectionClass, FormsError> {
    if x.iter().all(|c| c.is_zero_tol(0.0)) {
        return Err(FormsError::ZeroVector);
    }
    let v = eval_form(q, x)?;
    let norm2: f64 = x.iter().map(|c| c.to_f64() * c.to_f64()).sum();
    if v.is_zero_tol(tol * norm2) {
        Ok(DirectionClass::Null)
    } else if v.is_positive() {
        Ok(DirectionClass::Positive)
    } else {
        Ok(DirectionClass::Negative)
    }
}

fn canonical_vec<S: Scalar>(v: &[S]) -> Vec<S> {
    // Scale by the reciprocal of the largest absolute entry (a positive
    // number, so the projective-sphere class is preserved). The first entry
    // of maximal magnitude becomes ±1.
    let mut best = 0;
    for i in 1..v.len() {
        if (v[i].abs() - v[best].abs()).is_positive() {
            best = i;
        }
    }
    let m = v[best].abs();
    assert!(!m.is_zero_tol(0.0), "cannot canonicalize the zero vector");
    v.iter().map(|c| c.clone() / m.clone()).collect()
}

fn approx_eq_vec<S: Scalar>(a: &[S], b: &[S], tol: f64) -> bool {
    a.len() == b.len()
        && canonical_vec(a)
            .iter()
            .zip(canonical_vec(b).iter())
            .all(|(x, y)| (x.clone() - y.clone()).is_zero_tol(tol))
}

/// A point of the projective sphere: a nonzero vector up to positive scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint<S> {
    coords: Vec<S>,
}

impl<S: Scalar> ProjectivePoint<S> {
    pub fn new(coords: Vec<S>) -> Self {
        assert!(
            coords.iter().any(|c| !c.is_zero_tol(0.0)),
            "projective point needs a nonzero vector"
        );
        ProjectivePoint { coords }
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Representative scaled so the largest-magnitude coordinate is ±1.
    pub fn canonical(&self) -> ProjectivePoint<S> {
        ProjectivePoint {
            coords: canonical_vec(&self.coords),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        approx_eq_vec(&self.coords, &other.coords, tol)
    }

    pub fn antipode(&self) -> Self {
        ProjectivePoint {
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn to_f64(&self) -> ProjectivePoint<f64> {
        ProjectivePoint {
            coords: self.coords.iter().map(|c| c.to_f64()).collect(),
        }
    }
}

impl ProjectivePoint<f64> {
    /// Chart coordinates `x_i / x_0`; requires `x_0` away from zero.
    pub fn chart(&self) -> Option<Vec<f64>> {
        let x0 = self.coords[0];
        if x0.abs() < 1e-12 {
            return None;
        }
        Some(self.coords[1..].iter().map(|c| c / x0).collect())
    }
}

/// A linear form up to positive scale; the half-space it cuts is
/// `{x : α(x) ≤ 0}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DualHalfSpace<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> DualHalfSpace<S> {
    pub fn new(coeffs: Vec<S>) -> Self {
        assert!(
            coeffs.iter().any(|c| !c.is_zero_tol(0.0)),
            "half-space needs a nonzero linear form"
        );
        DualHalfSpace { coeffs }
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn dim(&self) -> usize {
        self.coeffs.len()
    }

    pub fn evaluate(&self, x: &[S]) -> S {
        assert_eq!(x.len(), self.coeffs.len());
        let mut acc = S::zero();
        for (c, v) in self.coeffs.iter().zip(x) {
            acc = acc + c.clone() * v.clone();
        }
        acc
    }

    pub fn canonical(&self) -> DualHalfSpace<S> {
        DualHalfSpace {
            coeffs: canonical_vec(&self.coeffs),
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        approx_eq_vec(&self.coeffs, &other.coeffs, tol)
    }

    /// The complementary half-space (same hyperplane, flipped side).
    pub fn complement(&self) -> Self {
        DualHalfSpace {
            coeffs: self.coeffs.iter().map(|c| -c.clone()).collect(),
        }
    }

    pub fn to_f64(&self) -> DualHalfSpace<f64> {
        DualHalfSpace {
            coeffs: self.coeffs.iter().map(|c| c.to_f64()).collect(),
        }
    }
}

/// An invertible (n+1)×(n+1) matrix up to positive scale.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectiveMap<S> {
    m: Matrix<S>,
}

impl<S: Scalar> ProjectiveMap<S> {
    pub fn new(m: Matrix<S>) -> Result<Self, FormsError> {
        assert_eq!(m.nrows(), m.ncols(), "projective map must be square");
        // Invertibility is checked lazily by the operations that need the
        // inverse; constructing from a table of entries stays cheap.
        Ok(ProjectiveMap { m })
    }

    pub fn from_rows(rows: Vec<Vec<S>>) -> Self {
        ProjectiveMap {
            m: Matrix::from_rows(rows),
        }
    }

    pub fn identity(dim: usize) -> Self {
        ProjectiveMap {
            m: Matrix::identity(dim),
        }
    }

    pub fn diagonal(entries: &[S]) -> Self {
        ProjectiveMap {
            m: Matrix::diagonal(entries),
        }
    }

    /// Sign flip of one coordinate; an isometry of every diagonal form.
    pub fn coordinate_flip(dim: usize, axis: usize) -> Self {
        let mut entries = vec![S::one(); dim];
        entries[axis] = -S::one();
        Self::diagonal(&entries)
    }

    pub fn matrix(&self) -> &Matrix<S> {
        &self.m
    }

    pub fn dim(&self) -> usize {
        self.m.nrows()
    }

    pub fn compose(&self, other: &Self) -> Self {
        ProjectiveMap {
            m: self.m.mul(&other.m),
        }
    }

    pub fn inverse(&self, tol: f64) -> Result<Self, FormsError> {
        Ok(ProjectiveMap {
            m: self.m.inverse(tol).map_err(|_| FormsError::SingularMap)?,
        })
    }

    pub fn act_point(&self, p: &ProjectivePoint<S>) -> ProjectivePoint<S> {
        ProjectivePoint::new(self.m.mul_vec(p.coords()))
    }

    /// Action on half-spaces: precomposition with the inverse.
    pub fn act_dual(&self, a: &DualHalfSpace<S>, tol: f64) -> Result<DualHalfSpace<S>, FormsError> {
        let inv = self.m.inverse(tol).map_err(|_| FormsError::SingularMap)?;
        // Row vector times matrix: coefficients of α∘M⁻¹.
        let coeffs = (0..inv.ncols())
            .map(|j| {
                let mut acc = S::zero();
                for i in 0..inv.nrows() {
                    acc = acc + a.coeffs()[i].clone() * inv[(i, j)].clone();
                }
                acc
            })
            .collect();
        Ok(DualHalfSpace::new(coeffs))
    }

    pub fn to_f64(&self) -> ProjectiveMap<f64> {
        ProjectiveMap {
            m: self.m.map(|x| x.to_f64()),
        }
    }
}

impl ProjectiveMap<f64> {
    /// Scale normalization for limit comparisons: divide by the largest
    /// absolute entry, then fix the overall sign so the (0,0) entry is
    /// positive when nonzero, else the first nonzero entry.
    pub fn canonical_scale(&self) -> ProjectiveMap<f64> {
        let m = self.m.max_abs();
        assert!(m > 0.0, "zero matrix cannot be scale-normalized");
        let mut out = self.m.map(|x| x / m);
        let n = out.nrows();
        let mut sign = 0.0;
        'outer: for i in 0..n {
            for j in 0..n {
                if out[(i, j)].abs() > 1e-13 {
                    sign = out[(i, j)].signum();
                    break 'outer;
                }
            }
        }
        if out[(0, 0)].abs() > 1e-13 {
            sign = out[(0, 0)].signum();
        }
        if sign < 0.0 {
            out = out.map(|x| -x);
        }
        ProjectiveMap { m: out }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let a = self.canonical_scale();
        let b = other.canonical_scale();
        a.m.sub(&b.m).max_abs() <= tol
    }

    /// Projectively the identity?
    pub fn is_identity(&self, tol: f64) -> bool {
        self.approx_eq(&ProjectiveMap::identity(self.dim()), tol)
    }
}

/// Reflection in the hyperplane `ker α`:
/// `ρ = id − 2·J·α·αᵀ / q*(α, α)` with `J = diag(signs)`.
///
/// Requires both the form and the hyperplane to be non-degenerate; the
/// reflection then fixes `ker α` pointwise, squares to the identity and
/// preserves `q`.
pub fn reflection_in_hyperplane<S: Scalar>(
    q: &QuadraticForm,
    alpha: &DualHalfSpace<S>,
    tol: f64,
) -> Result<ProjectiveMap<S>, FormsError> {
    if q.is_degenerate() {
        return Err(FormsError::DegenerateForm);
    }
    if alpha.dim() != q.dim() {
        return Err(FormsError::DimensionMismatch {
            expected: q.dim(),
            got: alpha.dim(),
        });
    }
    let norm = pairing(q, alpha.coeffs(), alpha.coeffs())?;
    let scale: f64 = alpha.coeffs().iter().map(|c| c.to_f64().powi(2)).sum();
    if norm.is_zero_tol(tol * scale) {
        return Err(FormsError::DegenerateHyperplane);
    }
    let n = q.dim();
    let mut m: Matrix<S> = Matrix::identity(n);
    let two = S::from_int(2);
    for i in 0..n {
        let ji = S::from_int(q.signs()[i] as i64);
        for j in 0..n {
            let term = two.clone() * ji.clone() * alpha.coeffs()[i].clone()
                * alpha.coeffs()[j].clone()
                / norm.clone();
            m[(i, j)] = m[(i, j)].clone() - term;
        }
    }
    Ok(ProjectiveMap { m })
}

/// Affine reflection of the chart `x₀ = 1` in the wall `α`, as a projective
/// matrix. This is the Euclidean-geometry counterpart of
/// [`reflection_in_hyperplane`]; the wall's chart normal is `(α₁, …, αₙ)`.
pub fn euclidean_reflection(alpha: &DualHalfSpace<f64>) -> Result<ProjectiveMap<f64>, FormsError> {
    let n = alpha.dim() - 1;
    let a = &alpha.coeffs()[1..];
    let norm2: f64 = a.iter().map(|x| x * x).sum();
    if norm2 < 1e-15 {
        return Err(FormsError::DegenerateHyperplane);
    }
    let a0 = alpha.coeffs()[0];
    let mut m = Matrix::zeros(n + 1, n + 1);
    m[(0, 0)] = 1.0;
    for i in 0..n {
        m[(i + 1, 0)] = -2.0 * a0 * a[i] / norm2;
        for j in 0..n {
            m[(i + 1, j + 1)] =
                if i == j { 1.0 } else { 0.0 } - 2.0 * a[i] * a[j] / norm2;
        }
    }
    Ok(ProjectiveMap { m })
}

/// Outcome of the isometry membership test.
#[derive(Debug, Clone, PartialEq)]
pub struct IsometryReport {
    pub preserves_form: bool,
    /// The positive λ with `MᵀJM = λJ` when the test passes.
    pub scale: Option<f64>,
    /// Whether the upper sheet `x₀ > 0` is preserved; reported only for
    /// forms with exactly one negative sign.
    pub sheet_preserving: Option<bool>,
}

/// Tests `MᵀJM = λJ` for some `λ > 0`, entrywise within `tol` (relative to
/// the matrix scale). Degenerate forms are allowed: the test then checks
/// preservation of the degenerate pairing.
pub fn is_isometry<S: Scalar>(
    q: &QuadraticForm,
    m: &ProjectiveMap<S>,
    tol: f64,
) -> IsometryReport {
    let j = q.diagonal_matrix::<S>();
    let g = m.matrix().transpose().mul(&j).mul(m.matrix());
    let lambda = q
        .signs()
        .iter()
        .position(|&s| s != 0)
        .map(|i| g[(i, i)].clone() / S::from_int(q.signs()[i] as i64));
    let Some(lambda) = lambda else {
        return IsometryReport {
            preserves_form: false,
            scale: None,
            sheet_preserving: None,
        };
    };
    if !lambda.is_positive() {
        return IsometryReport {
            preserves_form: false,
            scale: None,
            sheet_preserving: None,
        };
    }
    let scale_bound = g.max_abs().max(lambda.to_f64().abs()).max(1.0);
    let n = q.dim();
    let mut ok = true;
    for i in 0..n {
        for j_ix in 0..n {
            let want = if i == j_ix {
                lambda.clone() * S::from_int(q.signs()[i] as i64)
            } else {
                S::zero()
            };
            let diff = g[(i, j_ix)].clone() - want;
            if !diff.is_zero_tol(tol * scale_bound) {
                ok = false;
            }
        }
    }
    let sheet = if ok && q.negative_count() == 1 && q.signs()[0] == -1 {
        Some(m.matrix()[(0, 0)].is_positive())
    } else {
        None
    };
    IsometryReport {
        preserves_form: ok,
        scale: if ok { Some(lambda.to_f64()) } else { None },
        sheet_preserving: sheet,
    }
}

/// Convenience constructors for exact vectors.
pub fn exact_vec(entries: &[(i64, i64, i64, i64)]) -> Vec<Exact> {
    use crate::scalar::Rational;
    entries
        .iter()
        .map(|&(an, ad, bn, bd)| Exact::new(Rational::new(an as i128, ad as i128), Rational::new(bn as i128, bd as i128)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rational;

    fn sqrt2() -> Exact {
        Exact::sqrt2()
    }

    #[test]
    fn eval_form_basics() {
        let q13 = QuadraticForm::hyperbolic(3);
        assert_eq!(
            eval_form(&q13, &[1.0, 0.0, 0.0, 0.0]).unwrap(),
            -1.0
        );
        let q12 = QuadraticForm::hyperbolic(2);
        let s = std::f64::consts::SQRT_2 / 2.0;
        let v = eval_form(&q12, &[1.0, s, s]).unwrap();
        assert!(v.abs() < 1e-15, "ideal vertex must be null, got {v}");
        let q22 = QuadraticForm::ads_transition(3);
        assert_eq!(eval_form(&q22, &[1.0, 0.0, 0.0, 1.0]).unwrap(), -2.0);
    }

    #[test]
    fn eval_form_dimension_mismatch() {
        let q = QuadraticForm::hyperbolic(2);
        assert!(matches!(
            eval_form(&q, &[1.0, 0.0]),
            Err(FormsError::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn classify_directions() {
        let q12 = QuadraticForm::hyperbolic(2);
        assert_eq!(
            classify_direction(&q12, &[0.0, 1.0, 0.0], 1e-10).unwrap(),
            DirectionClass::Positive
        );
        assert_eq!(
            classify_direction(&q12, &[1.0, 1.0, 0.0], 1e-10).unwrap(),
            DirectionClass::Null
        );
        assert!(classify_direction(&q12, &[0.0, 0.0, 0.0], 1e-10).is_err());
        // A wall of the ideal octahedron is a genuine hyperbolic hyperplane:
        // its dual norm is positive.
        let q13 = QuadraticForm::hyperbolic(3);
        let alpha = [-1.0, -std::f64::consts::SQRT_2, 0.0, -1.0];
        assert_eq!(
            classify_direction(&q13, &alpha, 1e-10).unwrap(),
            DirectionClass::Positive
        );
    }

    #[test]
    fn coordinate_reflections() {
        let q12 = QuadraticForm::hyperbolic(2);
        let e1 = DualHalfSpace::new(vec![0.0, 1.0, 0.0]);
        let r = reflection_in_hyperplane(&q12, &e1, 1e-12).unwrap();
        let want = ProjectiveMap::diagonal(&[1.0, -1.0, 1.0]);
        assert!(r.approx_eq(&want, 1e-12));

        let q03 = QuadraticForm::spherical(2);
        let e2 = DualHalfSpace::new(vec![0.0, 0.0, 1.0]);
        let r = reflection_in_hyperplane(&q03, &e2, 1e-12).unwrap();
        let want = ProjectiveMap::diagonal(&[1.0, 1.0, -1.0]);
        assert!(r.approx_eq(&want, 1e-12));
    }

    #[test]
    fn quadrilateral_wall_reflection_identities() {
        // Reflection in the right wall of the ideal quadrilateral: an
        // involution, an isometry, and it fixes both ideal endpoints.
        let q = QuadraticForm::hyperbolic(2);
        let s2 = std::f64::consts::SQRT_2;
        let alpha = DualHalfSpace::new(vec![-1.0, s2, 0.0]);
        let r = reflection_in_hyperplane(&q, &alpha, 1e-12).unwrap();
        let sq = r.compose(&r);
        assert!(sq.is_identity(1e-12));
        assert!(is_isometry(&q, &r, 1e-12).preserves_form);
        for sign in [1.0, -1.0] {
            let p = ProjectivePoint::new(vec![1.0, s2 / 2.0, sign * s2 / 2.0]);
            assert!(r.act_point(&p).approx_eq(&p, 1e-12));
        }
    }

    #[test]
    fn degenerate_wall_has_no_reflection() {
        let q = QuadraticForm::hyperbolic(2);
        let lightlike = DualHalfSpace::new(vec![1.0, 1.0, 0.0]);
        assert_eq!(
            reflection_in_hyperplane(&q, &lightlike, 1e-12),
            Err(FormsError::DegenerateHyperplane)
        );
    }

    #[test]
    fn rescaling_is_not_an_isometry() {
        let q = QuadraticForm::hyperbolic(2);
        let t = 0.3;
        let g = ProjectiveMap::diagonal(&[1.0, 1.0 / t, 1.0 / t]);
        assert!(!is_isometry(&q, &g, 1e-10).preserves_form);
        let flip = ProjectiveMap::diagonal(&[1.0, -1.0, 1.0]);
        let rep = is_isometry(&q, &flip, 1e-10);
        assert!(rep.preserves_form);
        assert_eq!(rep.sheet_preserving, Some(true));
    }

    #[test]
    fn half_pipe_block_matrices_preserve_degenerate_form() {
        // [[A, 0], [v, ±1]] with A a Lorentz boost preserves (−1, 1, 0).
        let q = QuadraticForm::half_pipe(2);
        let (c, s) = (1.25f64.cosh(), 1.25f64.sinh());
        let m = ProjectiveMap::from_rows(vec![
            vec![c, s, 0.0],
            vec![s, c, 0.0],
            vec![0.7, -0.2, -1.0],
        ]);
        let rep = is_isometry(&q, &m, 1e-12);
        assert!(rep.preserves_form);
    }

    #[test]
    fn canonicalization_idempotent_and_scale_invariant() {
        let p = ProjectivePoint::new(vec![0.5, -2.0, 1.0]);
        let c1 = p.canonical();
        let c2 = c1.canonical();
        assert!(c1.approx_eq(&c2, 1e-15));
        let scaled = ProjectivePoint::new(vec![0.5 * 3.7, -2.0 * 3.7, 1.0 * 3.7]);
        assert!(p.approx_eq(&scaled, 1e-12));
        // But not under negative scale: the projective sphere is oriented.
        assert!(!p.approx_eq(&p.antipode(), 1e-12));
    }

    #[test]
    fn exact_reflection_squares_to_identity() {
        let q = QuadraticForm::hyperbolic(2);
        let alpha = DualHalfSpace::new(vec![-Exact::integer(1), sqrt2(), Exact::integer(0)]);
        let r = reflection_in_hyperplane(&q, &alpha, 0.0).unwrap();
        let sq = r.compose(&r);
        assert_eq!(sq.matrix(), ProjectiveMap::identity(3).matrix());
        let rep = is_isometry(&q, &r, 0.0);
        assert!(rep.preserves_form);
        assert_eq!(rep.scale, Some(1.0));
    }

    #[test]
    fn dual_action_moves_walls_correctly() {
        // The x₁-flip swaps the left and right quadrilateral walls.
        let flip = ProjectiveMap::coordinate_flip(3, 1);
        let s2 = std::f64::consts::SQRT_2;
        let right = DualHalfSpace::new(vec![-1.0, s2, 0.0]);
        let left = DualHalfSpace::new(vec![-1.0, -s2, 0.0]);
        let moved = flip.act_dual(&right, 1e-12).unwrap();
        assert!(moved.approx_eq(&left, 1e-12));
    }

    #[test]
    fn exact_vec_helper() {
        let v = exact_vec(&[(1, 1, 0, 1), (0, 1, 1, 2)]);
        assert_eq!(v[0], Exact::integer(1));
        assert_eq!(v[1], Exact::new(Rational::ZERO, Rational::new(1, 2)));
    }
}
