//! Half-pipe geometry as the space of spacelike hyperplanes of Minkowski
//! space.
//!
//! A half-pipe point `(x̄, h)` stands for the spacelike hyperplane of 𝕄ⁿ
//! with future unit normal `x̄` and signed offset `h` along that normal.
//! Under this duality the half-pipe transformation group — block matrices
//! `[[A, 0], [v, ±1]]` with `A` a sheet-preserving Lorentz matrix — is
//! isomorphic to `Isom(𝕄ⁿ) = O(1, n−1) ⋉ ℝⁿ`, and the three generator
//! correspondences pin the isomorphism:
//!
//! * sheet-preserving linear `y ↦ Ay`  ↔  `[[A, 0], [0, 1]]`;
//! * the central `y ↦ −y`             ↔  `[[id, 0], [0, −1]]`;
//! * translations `y ↦ y + b`         ↔  `[[id, 0], [bᵀJ, 1]]`.
//!
//! Reflections of half-pipe space come in two kinds: the reflection in a
//! non-degenerate hyperplane is unique (it is `y ↦ −y + v` downstairs,
//! fixing the wall dual to `v/2`), while a degenerate hyperplane admits a
//! one-parameter family of reflections, indexed by the translation
//! component along the spacelike normal of the corresponding timelike
//! hyperplane of 𝕄ⁿ.

use crate::forms::{pairing, DualHalfSpace, ProjectiveMap, QuadraticForm};
use crate::linalg::{eig2_real, Matrix};
use crate::scalar::Scalar;
use std::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum HalfPipeError {
    NotLorentz,
    NotHalfPipeShape(String),
    NotABoost(String),
    NotTimelikeHyperplane,
    AmbiguousClass(Vec<&'static str>),
    BadDimension { expected: usize, got: usize },
}

impl fmt::Display for HalfPipeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HalfPipeError::NotLorentz => {
                write!(f, "linear part does not preserve the Minkowski form")
            }
            HalfPipeError::NotHalfPipeShape(msg) => {
                write!(f, "matrix is not of half-pipe block shape: {msg}")
            }
            HalfPipeError::NotABoost(msg) => write!(f, "linear part is not a boost: {msg}"),
            HalfPipeError::NotTimelikeHyperplane => {
                write!(f, "hyperplane normal must be spacelike")
            }
            HalfPipeError::AmbiguousClass(cs) => {
                write!(f, "classification ambiguous between {}", cs.join(" and "))
            }
            HalfPipeError::BadDimension { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
        }
    }
}

impl std::error::Error for HalfPipeError {}

fn mink_form(n: usize) -> QuadraticForm {
    QuadraticForm::hyperbolic(n - 1)
}

/// An isometry `y ↦ Ly + b` of n-dimensional Minkowski space.
#[derive(Debug, Clone, PartialEq)]
pub struct MinkIsometry<S> {
    linear: Matrix<S>,
    translation: Vec<S>,
}

impl<S: Scalar> MinkIsometry<S> {
    pub fn new(linear: Matrix<S>, translation: Vec<S>, tol: f64) -> Result<Self, HalfPipeError> {
        let n = translation.len();
        if linear.nrows() != n || linear.ncols() != n {
            return Err(HalfPipeError::BadDimension {
                expected: n,
                got: linear.nrows(),
            });
        }
        let j = mink_form(n).diagonal_matrix::<S>();
        let g = linear.transpose().mul(&j).mul(&linear);
        for i in 0..n {
            for k in 0..n {
                let diff = g[(i, k)].clone() - j[(i, k)].clone();
                if !diff.is_zero_tol(tol * g.max_abs().max(1.0)) {
                    return Err(HalfPipeError::NotLorentz);
                }
            }
        }
        Ok(MinkIsometry {
            linear,
            translation,
        })
    }

    pub fn identity(n: usize) -> Self {
        MinkIsometry {
            linear: Matrix::identity(n),
            translation: vec![S::zero(); n],
        }
    }

    pub fn translation_by(b: Vec<S>) -> Self {
        MinkIsometry {
            linear: Matrix::identity(b.len()),
            translation: b,
        }
    }

    /// `y ↦ −y + v`: the point reflection fixing `v/2`.
    pub fn point_reflection(v: Vec<S>) -> Self {
        let n = v.len();
        MinkIsometry {
            linear: Matrix::<S>::identity(n).map(|x| -x.clone()),
            translation: v,
        }
    }

    pub fn linear(&self) -> &Matrix<S> {
        &self.linear
    }

    pub fn translation(&self) -> &[S] {
        &self.translation
    }

    pub fn dim(&self) -> usize {
        self.translation.len()
    }

    pub fn apply(&self, y: &[S]) -> Vec<S> {
        let mut out = self.linear.mul_vec(y);
        for (o, b) in out.iter_mut().zip(&self.translation) {
            *o = o.clone() + b.clone();
        }
        out
    }

    pub fn compose(&self, other: &Self) -> Self {
        // (L1, b1)∘(L2, b2): y ↦ L1 L2 y + (L1 b2 + b1).
        let linear = self.linear.mul(&other.linear);
        let mut translation = self.linear.mul_vec(&other.translation);
        for (t, b) in translation.iter_mut().zip(&self.translation) {
            *t = t.clone() + b.clone();
        }
        MinkIsometry {
            linear,
            translation,
        }
    }

    pub fn inverse(&self, tol: f64) -> Self {
        let inv = self
            .linear
            .inverse(tol)
            .expect("Lorentz matrices are invertible");
        let translation = inv
            .mul_vec(&self.translation)
            .into_iter()
            .map(|x| -x)
            .collect();
        MinkIsometry {
            linear: inv,
            translation,
        }
    }

    pub fn to_f64(&self) -> MinkIsometry<f64> {
        MinkIsometry {
            linear: self.linear.map(|x| x.to_f64()),
            translation: self.translation.iter().map(|x| x.to_f64()).collect(),
        }
    }
}

/// A half-pipe group element `(A, ε, v)`, assembled as `[[A, 0], [v, ε]]`.
#[derive(Debug, Clone, PartialEq)]
pub struct HpIsometry<S> {
    a: Matrix<S>,
    eps: i8,
    v: Vec<S>,
}

impl<S: Scalar> HpIsometry<S> {
    pub fn new(a: Matrix<S>, eps: i8, v: Vec<S>, tol: f64) -> Result<Self, HalfPipeError> {
        assert!(eps == 1 || eps == -1);
        let n = v.len();
        if a.nrows() != n || a.ncols() != n {
            return Err(HalfPipeError::BadDimension {
                expected: n,
                got: a.nrows(),
            });
        }
        if !a[(0, 0)].is_positive() {
            return Err(HalfPipeError::NotHalfPipeShape(
                "Lorentz block must preserve the upper sheet".into(),
            ));
        }
        // Validate the Lorentz block by round-tripping through MinkIsometry.
        MinkIsometry::new(a.clone(), vec![S::zero(); n], tol)?;
        Ok(HpIsometry { a, eps, v })
    }

    pub fn identity(n: usize) -> Self {
        HpIsometry {
            a: Matrix::identity(n),
            eps: 1,
            v: vec![S::zero(); n],
        }
    }

    pub fn lorentz_block(&self) -> &Matrix<S> {
        &self.a
    }

    pub fn eps(&self) -> i8 {
        self.eps
    }

    pub fn fiber_part(&self) -> &[S] {
        &self.v
    }

    pub fn dim(&self) -> usize {
        self.v.len()
    }

    /// The assembled (n+1)×(n+1) matrix.
    pub fn assembled(&self) -> Matrix<S> {
        let n = self.dim();
        let mut m = Matrix::zeros(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = self.a[(i, j)].clone();
            }
        }
        for j in 0..n {
            m[(n, j)] = self.v[j].clone();
        }
        m[(n, n)] = S::from_int(self.eps as i64);
        m
    }

    pub fn as_projective(&self) -> ProjectiveMap<S> {
        ProjectiveMap::new(self.assembled()).expect("assembled matrix is square")
    }

    #[allow(clippy::needless_range_loop)]
    pub fn compose(&self, other: &Self) -> Self {
        // [[A1,0],[v1,e1]]·[[A2,0],[v2,e2]] = [[A1A2, 0],[v1A2 + e1v2, e1e2]]
        let a = self.a.mul(&other.a);
        let n = self.dim();
        let mut v = vec![S::zero(); n];
        for j in 0..n {
            let mut acc = S::zero();
            for k in 0..n {
                acc = acc + self.v[k].clone() * other.a[(k, j)].clone();
            }
            acc = acc + S::from_int(self.eps as i64) * other.v[j].clone();
            v[j] = acc;
        }
        HpIsometry {
            a,
            eps: self.eps * other.eps,
            v,
        }
    }

    pub fn inverse(&self, tol: f64) -> Self {
        let a_inv = self.a.inverse(tol).expect("Lorentz block is invertible");
        let n = self.dim();
        // Inverse of [[A,0],[v,e]] is [[A⁻¹,0],[−e·vA⁻¹, e]].
        let mut v = vec![S::zero(); n];
        for j in 0..n {
            let mut acc = S::zero();
            for k in 0..n {
                acc = acc + self.v[k].clone() * a_inv[(k, j)].clone();
            }
            v[j] = -(S::from_int(self.eps as i64) * acc);
        }
        HpIsometry {
            a: a_inv,
            eps: self.eps,
            v,
        }
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.eps == other.eps
            && self.a.sub(&other.a).max_abs() <= tol
            && self
                .v
                .iter()
                .zip(&other.v)
                .all(|(x, y)| (x.clone() - y.clone()).is_zero_tol(tol))
    }

    pub fn to_f64(&self) -> HpIsometry<f64> {
        HpIsometry {
            a: self.a.map(|x| x.to_f64()),
            eps: self.eps,
            v: self.v.iter().map(|x| x.to_f64()).collect(),
        }
    }
}

/// The group isomorphism `Isom(𝕄ⁿ) → HP(n)`.
pub fn mink_to_hp<S: Scalar>(m: &MinkIsometry<S>) -> HpIsometry<S> {
    let n = m.dim();
    let sheet = m.linear[(0, 0)].is_positive();
    let (a, eps) = if sheet {
        (m.linear.clone(), 1i8)
    } else {
        (m.linear.map(|x| -x.clone()), -1i8)
    };
    // v = bᵀ J A.
    let j = mink_form(n).diagonal_matrix::<S>();
    let jb = j.mul_vec(&m.translation);
    let mut v = vec![S::zero(); n];
    for col in 0..n {
        let mut acc = S::zero();
        for k in 0..n {
            acc = acc + jb[k].clone() * a[(k, col)].clone();
        }
        v[col] = acc;
    }
    HpIsometry { a, eps, v }
}

/// The inverse isomorphism.
pub fn hp_to_mink<S: Scalar>(h: &HpIsometry<S>, tol: f64) -> MinkIsometry<S> {
    let n = h.dim();
    let linear = if h.eps == 1 {
        h.a.clone()
    } else {
        h.a.map(|x| -x.clone())
    };
    // b = A J vᵀ.
    let j = mink_form(n).diagonal_matrix::<S>();
    let jv = j.mul_vec(&h.v);
    let translation = h.a.mul_vec(&jv);
    let _ = tol;
    MinkIsometry {
        linear,
        translation,
    }
}

/// A point of half-pipe space: future unit normal and signed offset.
#[derive(Debug, Clone, PartialEq)]
pub struct HpPoint {
    pub xbar: Vec<f64>,
    pub height: f64,
}

impl HpPoint {
    pub fn new(xbar: Vec<f64>, height: f64, tol: f64) -> Result<Self, HalfPipeError> {
        let q = mink_form(xbar.len());
        let norm = pairing(&q, &xbar, &xbar).map_err(|_| HalfPipeError::BadDimension {
            expected: 2,
            got: xbar.len(),
        })?;
        if (norm + 1.0).abs() > tol || xbar[0] <= 0.0 {
            return Err(HalfPipeError::NotHalfPipeShape(
                "normal must lie on the upper unit hyperboloid".into(),
            ));
        }
        Ok(HpPoint { xbar, height })
    }

    pub fn basepoint(n: usize) -> Self {
        let mut xbar = vec![0.0; n];
        xbar[0] = 1.0;
        HpPoint { xbar, height: 0.0 }
    }
}

/// A spacelike hyperplane of 𝕄ⁿ: `{y : ⟨ν, y⟩ = offset}` with future unit
/// normal `ν`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacelikePlane {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl SpacelikePlane {
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.normal
            .iter()
            .zip(&other.normal)
            .all(|(a, b)| (a - b).abs() <= tol)
            && (self.offset - other.offset).abs() <= tol
    }
}

/// The duality: a half-pipe point is a spacelike hyperplane of 𝕄ⁿ.
pub fn hp_point_to_plane(p: &HpPoint) -> SpacelikePlane {
    SpacelikePlane {
        normal: p.xbar.clone(),
        offset: p.height,
    }
}

/// Action of a Minkowski isometry on spacelike hyperplanes.
pub fn transport_plane(m: &MinkIsometry<f64>, plane: &SpacelikePlane) -> SpacelikePlane {
    let q = mink_form(m.dim());
    // Image of {⟨ν, y⟩ = h} under y ↦ Ly + b is {⟨Lν, z⟩ = h + ⟨Lν, b⟩}.
    let lnu = m.linear.mul_vec(&plane.normal);
    let offset = plane.offset + pairing(&q, &lnu, &m.translation).unwrap();
    if lnu[0] < 0.0 {
        SpacelikePlane {
            normal: lnu.iter().map(|x| -x).collect(),
            offset: -offset,
        }
    } else {
        SpacelikePlane {
            normal: lnu,
            offset,
        }
    }
}

/// Action of a half-pipe isometry on half-pipe points.
pub fn hp_act(h: &HpIsometry<f64>, p: &HpPoint) -> HpPoint {
    let xbar = h.a.mul_vec(&p.xbar);
    let mut height = (h.eps as f64) * p.height;
    for (vk, xk) in h.v.iter().zip(&p.xbar) {
        height += vk * xk;
    }
    HpPoint { xbar, height }
}

/// The dual correspondence: a point `w` of 𝕄ⁿ determines the wall of
/// half-pipe space consisting of all spacelike hyperplanes through `w`; as
/// a linear form it is `α(x) = ⟨w, x̄⟩ − xₙ`.
pub fn mink_point_to_hp_wall<S: Scalar>(w: &[S]) -> DualHalfSpace<S> {
    let mut coeffs = Vec::with_capacity(w.len() + 1);
    coeffs.push(-w[0].clone());
    for x in &w[1..] {
        coeffs.push(x.clone());
    }
    coeffs.push(-S::one());
    DualHalfSpace::new(coeffs)
}

/// Is a half-pipe wall degenerate (contains the fiber direction)?
pub fn hp_wall_is_degenerate(alpha: &DualHalfSpace<f64>, tol: f64) -> bool {
    let n = alpha.dim() - 1;
    let scale = alpha
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .fold(0.0, f64::max);
    alpha.coeffs()[n].abs() <= tol * scale.max(1.0)
}

/// Extract the `(A, ε, v)` data from a projective matrix that should have
/// the half-pipe block shape, normalizing scale and overall sign.
pub fn hp_from_projective(
    m: &ProjectiveMap<f64>,
    tol: f64,
) -> Result<HpIsometry<f64>, HalfPipeError> {
    let n = m.dim() - 1;
    let mat = m.canonical_scale();
    let mat = mat.matrix();
    let scale = mat.max_abs();
    // Top-right block must vanish.
    for i in 0..n {
        if mat[(i, n)].abs() > tol * scale {
            return Err(HalfPipeError::NotHalfPipeShape(format!(
                "entry ({i}, {n}) = {:.3e} is nonzero",
                mat[(i, n)]
            )));
        }
    }
    // Determine λ with A'ᵀ J̄ A' = λ J̄ from the (0,0) entry.
    let j = mink_form(n);
    let mut a = Matrix::zeros(n, n);
    for i in 0..n {
        for k in 0..n {
            a[(i, k)] = mat[(i, k)];
        }
    }
    let g = a.transpose().mul(&j.diagonal_matrix::<f64>()).mul(&a);
    let lambda = -g[(0, 0)];
    if lambda <= 0.0 {
        return Err(HalfPipeError::NotHalfPipeShape(
            "Lorentz block has non-positive scale".into(),
        ));
    }
    let s = lambda.sqrt();
    let mut a = a.map(|x| x / s);
    let mut eps_val = mat[(n, n)] / s;
    let mut v: Vec<f64> = (0..n).map(|jx| mat[(n, jx)] / s).collect();
    if a[(0, 0)] < 0.0 {
        a = a.map(|x| -x);
        eps_val = -eps_val;
        v = v.iter().map(|x| -x).collect();
    }
    if (eps_val.abs() - 1.0).abs() > tol {
        return Err(HalfPipeError::NotHalfPipeShape(format!(
            "corner entry {eps_val:.6} is not ±1 after normalization"
        )));
    }
    let eps = if eps_val > 0.0 { 1 } else { -1 };
    HpIsometry::new(a, eps, v, tol)
}

/// Classification of a half-pipe isometry, through the dictionary.
#[derive(Debug, Clone, PartialEq)]
pub enum HpClass {
    Identity,
    /// Reflection in a non-degenerate hyperplane: the fixed wall.
    NondegenerateReflection { wall: DualHalfSpace<f64> },
    /// The analogue of a rotation: a spacelike Minkowski translation.
    /// The magnitude convention is the Minkowski length `√q(b)` of the
    /// translation part; the axis is reported as the unit translation
    /// direction.
    HpRotation { magnitude: f64, axis: Vec<f64> },
    /// A member of the one-parameter family of reflections in a degenerate
    /// wall, with its family parameter.
    DegenerateReflection {
        wall: DualHalfSpace<f64>,
        parameter: f64,
    },
    Other { descriptor: String },
}

/// Classify through `hp_to_mink`. A tolerance-ambiguous input (two branch
/// defects both under `tol`) is an error listing the candidates.
pub fn classify_hp(h: &HpIsometry<f64>, tol: f64) -> Result<HpClass, HalfPipeError> {
    let n = h.dim();
    let m = hp_to_mink(h, tol);
    let l = m.linear();
    let b = m.translation();
    let q = mink_form(n);
    let id = Matrix::<f64>::identity(n);
    let b_norm: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    let qb = pairing(&q, b, b).unwrap();

    let mut matches: Vec<(&'static str, HpClass)> = Vec::new();

    // identity
    if l.sub(&id).max_abs() <= tol && b_norm <= tol {
        matches.push(("identity", HpClass::Identity));
    }
    // nondegenerate reflection: L = −id
    if l.add(&id).max_abs() <= tol {
        let half: Vec<f64> = b.iter().map(|x| x / 2.0).collect();
        matches.push((
            "nondegenerate_reflection",
            HpClass::NondegenerateReflection {
                wall: mink_point_to_hp_wall(&half),
            },
        ));
    }
    // rotation analogue: L = id, b nonzero spacelike
    if l.sub(&id).max_abs() <= tol && b_norm > tol && qb > tol * b_norm * b_norm {
        let mag = qb.sqrt();
        matches.push((
            "hp_rotation",
            HpClass::HpRotation {
                magnitude: mag,
                axis: b.iter().map(|x| x / mag).collect(),
            },
        ));
    }
    // degenerate reflection: L a reflection in a timelike hyperplane with
    // b along its spacelike normal.
    let l2 = l.mul(l);
    if l2.sub(&id).max_abs() <= tol
        && l.sub(&id).max_abs() > tol
        && l.add(&id).max_abs() > tol
    {
        // −1 eigenspace projector.
        let proj = id.sub(l).map(|x| x / 2.0);
        // Must be rank one with spacelike image.
        let mut u: Option<Vec<f64>> = None;
        for c in 0..n {
            let col: Vec<f64> = (0..n).map(|r| proj[(r, c)]).collect();
            let mag: f64 = col.iter().map(|x| x * x).sum::<f64>().sqrt();
            if mag > tol && u.is_none() {
                u = Some(col.iter().map(|x| x / mag).collect());
            }
        }
        if let Some(u) = u {
            let rank = proj.rank(1e-8);
            let qu = pairing(&q, &u, &u).unwrap();
            if rank == 1 && qu > tol {
                let unit: Vec<f64> = u.iter().map(|x| x / qu.sqrt()).collect();
                // b must be parallel to the normal.
                let comp = pairing(&q, b, &unit).unwrap();
                let residual: f64 = b
                    .iter()
                    .zip(&unit)
                    .map(|(bi, ui)| (bi - comp * ui).powi(2))
                    .sum::<f64>()
                    .sqrt();
                if residual <= tol * (1.0 + b_norm) {
                    let mut coeffs = Vec::with_capacity(n + 1);
                    coeffs.push(-unit[0]);
                    for x in &unit[1..] {
                        coeffs.push(*x);
                    }
                    coeffs.push(0.0);
                    matches.push((
                        "degenerate_reflection",
                        HpClass::DegenerateReflection {
                            wall: DualHalfSpace::new(coeffs),
                            parameter: comp,
                        },
                    ));
                }
            }
        }
    }

    match matches.len() {
        0 => Ok(HpClass::Other {
            descriptor: format!(
                "linear part with trace {:.6}, translation norm {:.6}",
                (0..n).map(|i| l[(i, i)]).sum::<f64>(),
                b_norm
            ),
        }),
        1 => Ok(matches.into_iter().next().unwrap().1),
        _ => Err(HalfPipeError::AmbiguousClass(
            matches.iter().map(|(name, _)| *name).collect(),
        )),
    }
}

/// The one-parameter family of half-pipe reflections in a degenerate wall.
///
/// `normal` is the spacelike normal of the timelike hyperplane of 𝕄ⁿ whose
/// unit normals sweep the wall; the member at parameter `s` is the
/// Minkowski isometry with linear part the reflection in that hyperplane
/// and translation `s·normal̂`. Every member fixes the wall setwise and is
/// an involution; `s = 0` is the unique member fixing the zero section.
pub fn degenerate_reflection_family(
    normal: &[f64],
    s: f64,
    tol: f64,
) -> Result<HpIsometry<f64>, HalfPipeError> {
    let n = normal.len();
    let q = mink_form(n);
    let qn = pairing(&q, normal, normal).unwrap();
    if qn <= tol {
        return Err(HalfPipeError::NotTimelikeHyperplane);
    }
    let unit: Vec<f64> = normal.iter().map(|x| x / qn.sqrt()).collect();
    // Minkowski reflection in unit^⊥: y ↦ y − 2⟨y, û⟩û.
    let mut l = Matrix::identity(n);
    for i in 0..n {
        for jx in 0..n {
            let sign_j = q.signs()[jx] as f64;
            l[(i, jx)] -= 2.0 * unit[i] * sign_j * unit[jx];
        }
    }
    let translation: Vec<f64> = unit.iter().map(|x| s * x).collect();
    let m = MinkIsometry::new(l, translation, 1e-9)?;
    Ok(mink_to_hp(&m))
}

/// Translation length on the hyperbola of unit timelike vectors, for a
/// half-pipe element whose Minkowski linear part is a boost of 𝕄².
pub fn hp_translation_length_on_h1(h: &HpIsometry<f64>) -> Result<f64, HalfPipeError> {
    if h.dim() != 2 {
        return Err(HalfPipeError::BadDimension {
            expected: 2,
            got: h.dim(),
        });
    }
    let m = hp_to_mink(h, 1e-12);
    let l = m.linear();
    let det = l[(0, 0)] * l[(1, 1)] - l[(0, 1)] * l[(1, 0)];
    let trace = l[(0, 0)] + l[(1, 1)];
    if (det - 1.0).abs() > 1e-9 || trace <= 2.0 + 1e-12 {
        return Err(HalfPipeError::NotABoost(format!(
            "det {det:.6}, trace {trace:.6}"
        )));
    }
    // Eigenvalues λ, 1/λ with λ = e^ℓ: trace = 2 cosh ℓ.
    let ell = (trace / 2.0).acosh();
    debug_assert!(eig2_real(l).is_some());
    Ok(ell)
}

/// Independent oracle for the wall-incidence criterion: the walls dual to
/// `v` and `v'` meet in half-pipe space iff the Minkowski-orthogonal
/// complement of `v − v'` contains a timelike direction. Decided here by
/// the sign of the restricted Gram form, not by the classifying inequality.
pub fn hp_walls_intersect_oracle(v: &[f64], vprime: &[f64]) -> Option<bool> {
    let n = v.len();
    let q = mink_form(n);
    let w: Vec<f64> = v.iter().zip(vprime).map(|(a, b)| a - b).collect();
    let wn: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    if wn < 1e-12 {
        return None; // identical walls
    }
    // Basis of w^⊥ (Minkowski): kernel of the row (Jw)ᵀ.
    let jw: Vec<f64> = q
        .signs()
        .iter()
        .zip(&w)
        .map(|(&s, x)| s as f64 * x)
        .collect();
    let basis = Matrix::from_rows(vec![jw]).nullspace(1e-12);
    let k = basis.len();
    let mut gram = Matrix::zeros(k, k);
    for i in 0..k {
        for jx in 0..k {
            gram[(i, jx)] = pairing(&q, &basis[i], &basis[jx]).unwrap();
        }
    }
    let has_negative = match k {
        1 => gram[(0, 0)] < -1e-12,
        2 => {
            let det = gram[(0, 0)] * gram[(1, 1)] - gram[(0, 1)] * gram[(1, 0)];
            let tr = gram[(0, 0)] + gram[(1, 1)];
            det < -1e-12 || (det >= -1e-12 && tr < -1e-12)
        }
        _ => {
            // Higher dimensions: diagonalize by brute sampling.
            let mut found = false;
            for trial in 0..1000 {
                let mut x = vec![0.0; k];
                for (ix, xi) in x.iter_mut().enumerate() {
                    *xi = ((trial * 31 + ix * 17) % 101) as f64 / 50.0 - 1.0;
                }
                let val: f64 = (0..k)
                    .flat_map(|i| (0..k).map(move |jx| (i, jx)))
                    .map(|(i, jx)| gram[(i, jx)] * x[i] * x[jx])
                    .sum();
                if val < -1e-9 {
                    found = true;
                    break;
                }
            }
            found
        }
    };
    Some(has_negative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Exact;

    const SQRT2: f64 = std::f64::consts::SQRT_2;

    fn boost(eta: f64) -> Matrix<f64> {
        Matrix::from_rows(vec![
            vec![eta.cosh(), eta.sinh()],
            vec![eta.sinh(), eta.cosh()],
        ])
    }

    #[test]
    fn translation_dictionary() {
        let m = MinkIsometry::<f64>::translation_by(vec![1.0, 0.0]);
        let h = mink_to_hp(&m);
        assert_eq!(h.eps(), 1);
        assert_eq!(h.fiber_part(), &[-1.0, 0.0]);
        let back = hp_to_mink(&h, 1e-12);
        assert_eq!(back.translation(), &[1.0, 0.0]);
    }

    #[test]
    fn point_reflection_dictionary() {
        // y ↦ −y + v assembles as [[id, 0], [vᵀJ, −1]].
        let m = MinkIsometry::<f64>::point_reflection(vec![1.0, 0.0]);
        let h = mink_to_hp(&m);
        assert_eq!(h.eps(), -1);
        assert_eq!(h.fiber_part(), &[-1.0, 0.0]);
        assert_eq!(h.lorentz_block(), &Matrix::identity(2));
        // It fixes the wall dual to v/2.
        match classify_hp(&h, 1e-10).unwrap() {
            HpClass::NondegenerateReflection { wall } => {
                let want = mink_point_to_hp_wall(&[0.5, 0.0]);
                assert!(wall.approx_eq(&want, 1e-12));
            }
            other => panic!("expected a reflection, got {other:?}"),
        }
    }

    #[test]
    fn homomorphism_on_random_pairs() {
        let mut rng = crate::rng::Rng::seeded(3);
        for n in [2usize, 3] {
            for _ in 0..50 {
                let m1 = random_mink(&mut rng, n);
                let m2 = random_mink(&mut rng, n);
                let lhs = mink_to_hp(&m1.compose(&m2));
                let rhs = mink_to_hp(&m1).compose(&mink_to_hp(&m2));
                assert!(lhs.approx_eq(&rhs, 1e-11));
            }
        }
    }

    fn random_mink(rng: &mut crate::rng::Rng, n: usize) -> MinkIsometry<f64> {
        // Random products of boosts, rotations/flips and a translation.
        let mut l = Matrix::identity(n);
        let b2 = boost(rng.symmetric(1.5));
        for i in 0..2 {
            for j in 0..2 {
                l[(i, j)] = b2[(i, j)];
            }
        }
        if n == 3 {
            let th = rng.symmetric(std::f64::consts::PI);
            let rot = Matrix::from_rows(vec![
                vec![1.0, 0.0, 0.0],
                vec![0.0, th.cos(), -th.sin()],
                vec![0.0, th.sin(), th.cos()],
            ]);
            l = rot.mul(&l);
        }
        if rng.unit() < 0.5 {
            l = l.map(|x| -x); // central element
        }
        if rng.unit() < 0.5 {
            // spatial flip
            let mut f = Matrix::identity(n);
            f[(1, 1)] = -1.0;
            l = l.mul(&f);
        }
        let translation: Vec<f64> = (0..n).map(|_| rng.symmetric(2.0)).collect();
        MinkIsometry::new(l, translation, 1e-9).unwrap()
    }

    #[test]
    fn exact_dictionary_roundtrip() {
        // The √2-boost [[3, 2√2], [2√2, 3]] with an exact translation.
        let s2 = Exact::sqrt2();
        let three = Exact::integer(3);
        let two_s2 = Exact::integer(2) * s2;
        let l = Matrix::from_rows(vec![vec![three, two_s2], vec![two_s2, three]]);
        let m = MinkIsometry::new(l, vec![Exact::integer(1), s2], 0.0).unwrap();
        let h = mink_to_hp(&m);
        let back = hp_to_mink(&h, 0.0);
        assert_eq!(back, m);
        // Composition is exact too.
        let c = mink_to_hp(&m.compose(&m));
        let c2 = h.compose(&h);
        assert!(c.approx_eq(&c2, 0.0));
    }

    #[test]
    fn plane_duality_equivariance() {
        let mut rng = crate::rng::Rng::seeded(11);
        for _ in 0..50 {
            let m = random_mink(&mut rng, 2);
            let x1 = rng.symmetric(1.0);
            let p = HpPoint::new(
                vec![(1.0 + x1 * x1).sqrt(), x1],
                rng.symmetric(2.0),
                1e-9,
            )
            .unwrap();
            let lhs = hp_point_to_plane(&hp_act(&mink_to_hp(&m).to_f64(), &p));
            let rhs = transport_plane(&m, &hp_point_to_plane(&p));
            assert!(lhs.approx_eq(&rhs, 1e-9), "lhs {lhs:?} rhs {rhs:?}");
        }
    }

    #[test]
    fn basepoint_plane_is_through_origin() {
        let p = HpPoint::basepoint(2);
        let plane = hp_point_to_plane(&p);
        assert_eq!(plane.normal, vec![1.0, 0.0]);
        assert_eq!(plane.offset, 0.0);
        // Offset h moves the plane to signed distance h along the normal.
        let p = HpPoint::new(vec![1.0, 0.0], 0.75, 1e-12).unwrap();
        let plane = hp_point_to_plane(&p);
        assert_eq!(plane.offset, 0.75);
    }

    #[test]
    fn zero_section_wall() {
        let w = mink_point_to_hp_wall(&[0.0f64, 0.0]);
        assert_eq!(w.coeffs(), &[0.0, 0.0, -1.0]);
        assert!(hp_wall_is_degenerate(
            &DualHalfSpace::new(vec![-1.0, SQRT2, 0.0]),
            1e-12
        ));
        assert!(!hp_wall_is_degenerate(&w, 1e-12));
    }

    #[test]
    fn incidence_oracle_matches_spacelike_criterion() {
        let mut rng = crate::rng::Rng::seeded(5);
        let q = mink_form(2);
        let mut seen = [false, false];
        for _ in 0..100 {
            let v = [rng.symmetric(2.0), rng.symmetric(2.0)];
            let vp = [rng.symmetric(2.0), rng.symmetric(2.0)];
            let w: Vec<f64> = v.iter().zip(&vp).map(|(a, b)| a - b).collect();
            let qw = pairing(&q, &w, &w).unwrap();
            if qw.abs() < 1e-6 {
                continue;
            }
            let Some(meet) = hp_walls_intersect_oracle(&v, &vp) else {
                continue;
            };
            assert_eq!(meet, qw > 0.0, "w = {w:?}");
            seen[(qw > 0.0) as usize] = true;
        }
        assert!(seen[0] && seen[1], "both branches should occur");
    }

    #[test]
    fn classify_translation_as_rotation_analogue() {
        // Spacelike translation: the analogue of a rotation.
        let m = MinkIsometry::<f64>::translation_by(vec![0.3, 2.0]);
        match classify_hp(&mink_to_hp(&m), 1e-10).unwrap() {
            HpClass::HpRotation { magnitude, .. } => {
                let want = (2.0f64 * 2.0 - 0.3 * 0.3).sqrt();
                assert!((magnitude - want).abs() < 1e-12);
            }
            other => panic!("expected a rotation analogue, got {other:?}"),
        }
        // Timelike translation is not one.
        let m = MinkIsometry::<f64>::translation_by(vec![2.0, 0.3]);
        assert!(matches!(
            classify_hp(&mink_to_hp(&m), 1e-10).unwrap(),
            HpClass::Other { .. }
        ));
        // Identity.
        assert_eq!(
            classify_hp(&HpIsometry::<f64>::identity(2), 1e-10).unwrap(),
            HpClass::Identity
        );
    }

    #[test]
    fn degenerate_family_members_are_involutions() {
        for s in [-1.5, 0.0, 0.4, 2.0] {
            let h = degenerate_reflection_family(&[0.0, 1.0], s, 1e-12).unwrap();
            let sq = h.compose(&h);
            assert!(sq.approx_eq(&HpIsometry::identity(2), 1e-12), "s = {s}");
            match classify_hp(&h, 1e-9).unwrap() {
                HpClass::DegenerateReflection { parameter, wall } => {
                    assert!((parameter - s).abs() < 1e-12);
                    assert!(hp_wall_is_degenerate(&wall, 1e-12));
                }
                HpClass::Other { .. } if s == 0.0 => panic!("s = 0 must classify"),
                other => panic!("unexpected class {other:?} at s = {s}"),
            }
        }
        // The member at s = 0 with normal e1 is the pure linear reflection.
        let h = degenerate_reflection_family(&[0.0, 1.0], 0.0, 1e-12).unwrap();
        let mut want = Matrix::identity(2);
        want[(1, 1)] = -1.0;
        assert_eq!(h.eps(), 1);
        assert!(h.lorentz_block().sub(&want).max_abs() < 1e-14);
    }

    #[test]
    fn vertical_wall_composition_is_the_unit_boost() {
        // Reflections in the timelike lines y₁ = 0 and y₀ = √2·y₁ compose
        // to a boost translating the unit hyperbola by 2 arcsinh(1).
        let r1 = degenerate_reflection_family(&[0.0, 1.0], 0.0, 1e-12).unwrap();
        // The line y₀ = √2 y₁ is spanned by (√2, 1); its spacelike normal
        // is (1, √2) (Minkowski-orthogonal).
        let r2 = degenerate_reflection_family(&[1.0, SQRT2], 0.0, 1e-12).unwrap();
        let composite = r2.compose(&r1);
        let ell = hp_translation_length_on_h1(&composite).unwrap();
        let want = 2.0 * 1.0f64.asinh();
        assert!((ell - want).abs() < 1e-12, "length {ell} vs {want}");
    }

    #[test]
    fn boost_length_by_eigenvalue() {
        let l = boost(1.0);
        let m = MinkIsometry::new(l, vec![0.0, 0.0], 1e-12).unwrap();
        let ell = hp_translation_length_on_h1(&mink_to_hp(&m)).unwrap();
        assert!((ell - 1.0).abs() < 1e-12);
        // The identity has no boost length.
        assert!(hp_translation_length_on_h1(&HpIsometry::identity(2)).is_err());
    }

    #[test]
    fn hp_shape_extraction_handles_scale_and_sign() {
        let b = boost(0.8);
        let mut rows = vec![
            vec![b[(0, 0)], b[(0, 1)], 0.0],
            vec![b[(1, 0)], b[(1, 1)], 0.0],
            vec![0.4, -0.7, -1.0],
        ];
        for r in rows.iter_mut() {
            for x in r.iter_mut() {
                *x *= -2.5; // arbitrary projective scale and sign
            }
        }
        let m = ProjectiveMap::from_rows(rows);
        let h = hp_from_projective(&m, 1e-9).unwrap();
        assert_eq!(h.eps(), -1);
        assert!((h.fiber_part()[0] - 0.4).abs() < 1e-12);
        assert!(h.lorentz_block().sub(&boost(0.8)).max_abs() < 1e-12);
        // A matrix with a nonzero top-right block is rejected.
        let bad = ProjectiveMap::from_rows(vec![
            vec![1.0, 0.0, 0.3],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ]);
        assert!(hp_from_projective(&bad, 1e-9).is_err());
    }
}
