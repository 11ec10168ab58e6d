//! The end-to-end check suite.
//!
//! Eleven criteria cover the whole pipeline: golden-table fidelity, the
//! zoom and fiber limits, the reflection transitions on both sides, the
//! Minkowski dictionary, the puncture singularity, the 22-wall family, the
//! cone-angle curves, the surface-limit decay rate, and the measured
//! inter-edge distance curve. Every tolerance is pinned here; the
//! command-line driver and the integration test target both run this list.

use crate::forms::{
    eval_form, exact_vec, pairing, DualHalfSpace, GeometryKind, ProjectiveMap, QuadraticForm,
};
use crate::gallery::{make_family, pairing_scheme, quad_param_from_exp_time, Curvature};
use crate::halfpipe::{
    classify_hp, hp_from_projective, hp_to_mink, hp_translation_length_on_h1,
    hp_walls_intersect_oracle, mink_to_hp, HpClass, HpIsometry, MinkIsometry,
};
use crate::holonomy::{cone_angle, holonomy, recipe_limit_path, LoopWord};
use crate::linalg::Matrix;
use crate::param::{RescaleKind, Side};
use crate::polytope::{
    adjacency, cross_section, enumerate_vertices, gram_compare, wall_distance,
    wall_distance_sampled, wall_relation, WallRelation,
};
use crate::report::family_check_report;
use crate::rng::Rng;
use crate::scalar::{Exact, Rational};
use crate::transition::{
    euclidean_limit_defect, limit_conjugated_isometry, surface_limit_check, IsometryPath,
};

const SQRT2: f64 = std::f64::consts::SQRT_2;
const PI: f64 = std::f64::consts::PI;

#[derive(Debug, Clone)]
pub struct CriterionOutcome {
    pub id: usize,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

type CheckResult = Result<String, String>;

fn outcome(id: usize, title: &'static str, r: CheckResult) -> CriterionOutcome {
    match r {
        Ok(detail) => CriterionOutcome {
            id,
            title,
            passed: true,
            detail,
        },
        Err(detail) => CriterionOutcome {
            id,
            title,
            passed: false,
            detail,
        },
    }
}

pub const CRITERIA: [(usize, &str); 11] = [
    (1, "golden-table fidelity"),
    (2, "euclidean zoom limit of the point collapse"),
    (3, "reflection transition through the zoom"),
    (4, "half-pipe limit of the plane collapse"),
    (5, "collapsing quadrilateral metrics"),
    (6, "half-pipe/Minkowski dictionary"),
    (7, "punctured-torus half-pipe singularity"),
    (8, "22-wall family sections and limits"),
    (9, "cone-angle behaviour"),
    (10, "surface-limit decay rate"),
    (11, "inter-edge distance curve"),
];

/// Run one criterion by id.
pub fn run_criterion(id: usize, seed: u64) -> CriterionOutcome {
    let title = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, t)| *t)
        .unwrap_or("unknown criterion");
    let result = match id {
        1 => criterion_1(seed),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(seed),
        6 => criterion_6(seed),
        7 => criterion_7(),
        8 => criterion_8(seed),
        9 => criterion_9(),
        10 => criterion_10(),
        11 => criterion_11(seed),
        _ => Err(format!("no criterion with id {id}")),
    };
    outcome(id, title, result)
}

/// Run the whole suite with the given seed for the sampling oracles.
pub fn run_all(seed: u64) -> Vec<CriterionOutcome> {
    CRITERIA
        .iter()
        .map(|(id, _)| run_criterion(*id, seed))
        .collect()
}

fn err<T>(msg: impl std::fmt::Display) -> Result<T, String> {
    Err(msg.to_string())
}

fn exact_walls_match(
    got: &[(String, DualHalfSpace<Exact>)],
    want: &[(&str, Vec<Exact>)],
) -> Result<(), String> {
    if got.len() != want.len() {
        return err(format!("{} walls, expected {}", got.len(), want.len()));
    }
    for ((gl, gw), (wl, ww)) in got.iter().zip(want) {
        if gl != wl {
            return err(format!("wall order mismatch: {gl} vs {wl}"));
        }
        let a = crate::param::canonical_exact(gw.coeffs());
        let b = crate::param::canonical_exact(ww);
        if a != b {
            return err(format!("wall {gl} is {a:?}, expected {b:?}"));
        }
    }
    Ok(())
}

fn ev(rows: &[&[(i64, i64, i64, i64)]]) -> Vec<Vec<Exact>> {
    rows.iter().map(|r| exact_vec(r)).collect()
}

// Criterion 1: the gallery reproduces the shipped tables exactly (exact
// mode), and the ideal octahedron report shows the six ideal vertices and
// twelve right angles with residual < 1e−12.
fn criterion_1(seed: u64) -> CheckResult {
    // Ideal octahedron walls, frozen.
    let oct_rows = ev(&[
        &[(-1, 1, 0, 1), (0, 1, -1, 1), (0, 1, 0, 1), (-1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, -1, 1), (0, 1, 0, 1), (1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, -1, 1), (1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, -1, 1), (-1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, 0, 1), (-1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, 0, 1), (1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, 1, 1), (1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, 1, 1), (-1, 1, 0, 1)],
    ]);
    let oct_labels = ["f1", "f2", "f3", "f4", "f5", "f6", "f7", "f8"];
    let oct = make_family("ideal_octahedron").map_err(|e| e.to_string())?;
    let got = oct.walls_at_exact(Rational::ONE).map_err(|e| e.to_string())?;
    let want: Vec<(&str, Vec<Exact>)> = oct_labels.iter().copied().zip(oct_rows.clone()).collect();
    exact_walls_match(&got, &want)?;

    // Both octahedron deformations pass through the same table at t = 1.
    for name in ["oct_collapse", "oct_prime"] {
        let fam = make_family(name).map_err(|e| e.to_string())?;
        let got = fam.walls_at_exact(Rational::ONE).map_err(|e| e.to_string())?;
        for (label, w) in &got {
            let cw = crate::param::canonical_exact(w.coeffs());
            if !oct_rows
                .iter()
                .any(|r| crate::param::canonical_exact(r) == cw)
            {
                return err(format!("{name} wall {label} at t=1 not an octahedron wall"));
            }
        }
    }

    // Point-collapse table at t = 1/2, frozen.
    let collapse_half = ev(&[
        &[(-1, 2, 0, 1), (0, 1, -1, 4), (0, 1, 0, 1), (-1, 1, 0, 1)],
        &[(-1, 2, 0, 1), (0, 1, -1, 1), (0, 1, 0, 1), (1, 4, 0, 1)],
        &[(-1, 2, 0, 1), (0, 1, 0, 1), (0, 1, -1, 4), (1, 1, 0, 1)],
        &[(-1, 2, 0, 1), (0, 1, 0, 1), (0, 1, -1, 1), (-1, 4, 0, 1)],
        &[(-1, 2, 0, 1), (0, 1, 1, 4), (0, 1, 0, 1), (-1, 1, 0, 1)],
        &[(-1, 2, 0, 1), (0, 1, 1, 1), (0, 1, 0, 1), (1, 4, 0, 1)],
        &[(-1, 2, 0, 1), (0, 1, 0, 1), (0, 1, 1, 4), (1, 1, 0, 1)],
        &[(-1, 2, 0, 1), (0, 1, 0, 1), (0, 1, 1, 1), (-1, 4, 0, 1)],
    ]);
    let labels = ["L1", "R1", "L2", "R2", "L3", "R3", "L4", "R4"];
    let fam = make_family("oct_collapse").map_err(|e| e.to_string())?;
    let got = fam
        .walls_at_exact(Rational::new(1, 2))
        .map_err(|e| e.to_string())?;
    exact_walls_match(
        &got,
        &labels.iter().copied().zip(collapse_half).collect::<Vec<_>>(),
    )?;

    // Plane-collapse table at t = 1/2, frozen.
    let prime_half = ev(&[
        &[(-1, 2, 0, 1), (0, 1, -1, 2), (0, 1, 0, 1), (-1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, -1, 1), (0, 1, 0, 1), (1, 2, 0, 1)],
        &[(-1, 2, 0, 1), (0, 1, 0, 1), (0, 1, -1, 2), (1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, -1, 1), (-1, 2, 0, 1)],
        &[(-1, 2, 0, 1), (0, 1, 1, 2), (0, 1, 0, 1), (-1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, 0, 1), (1, 2, 0, 1)],
        &[(-1, 2, 0, 1), (0, 1, 0, 1), (0, 1, 1, 2), (1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, 1, 1), (-1, 2, 0, 1)],
    ]);
    let fam = make_family("oct_prime").map_err(|e| e.to_string())?;
    let got = fam
        .walls_at_exact(Rational::new(1, 2))
        .map_err(|e| e.to_string())?;
    exact_walls_match(
        &got,
        &labels.iter().copied().zip(prime_half).collect::<Vec<_>>(),
    )?;

    // Half-pipe limit table, frozen (constant family).
    let hp_rows = ev(&[
        &[(-1, 1, 0, 1), (0, 1, -1, 1), (0, 1, 0, 1), (-1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, -1, 1), (0, 1, 0, 1), (0, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, -1, 1), (1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, -1, 1), (0, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, 0, 1), (-1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, 0, 1), (0, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, 1, 1), (1, 1, 0, 1)],
        &[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, 1, 1), (0, 1, 0, 1)],
    ]);
    let fam = make_family("hp_oct_limit").map_err(|e| e.to_string())?;
    let got = fam
        .walls_at_exact(Rational::new(1, 2))
        .map_err(|e| e.to_string())?;
    exact_walls_match(
        &got,
        &labels.iter().copied().zip(hp_rows).collect::<Vec<_>>(),
    )?;

    // 22-wall family at t = 1/3, frozen.
    let ks_rows: Vec<(&str, Vec<Exact>)> = vec![
        ("p0", exact_vec(&[(0, 1, -1, 3), (1, 3, 0, 1), (1, 3, 0, 1), (1, 3, 0, 1), (1, 1, 0, 1)])),
        ("m0", exact_vec(&[(0, 1, -1, 1), (1, 1, 0, 1), (1, 1, 0, 1), (1, 1, 0, 1), (-1, 3, 0, 1)])),
        ("p1", exact_vec(&[(0, 1, -1, 3), (1, 3, 0, 1), (-1, 3, 0, 1), (1, 3, 0, 1), (-1, 1, 0, 1)])),
        ("m1", exact_vec(&[(0, 1, -1, 1), (1, 1, 0, 1), (-1, 1, 0, 1), (1, 1, 0, 1), (1, 3, 0, 1)])),
        ("p2", exact_vec(&[(0, 1, -1, 3), (1, 3, 0, 1), (-1, 3, 0, 1), (-1, 3, 0, 1), (1, 1, 0, 1)])),
        ("m2", exact_vec(&[(0, 1, -1, 1), (1, 1, 0, 1), (-1, 1, 0, 1), (-1, 1, 0, 1), (-1, 3, 0, 1)])),
        ("p3", exact_vec(&[(0, 1, -1, 3), (1, 3, 0, 1), (1, 3, 0, 1), (-1, 3, 0, 1), (-1, 1, 0, 1)])),
        ("m3", exact_vec(&[(0, 1, -1, 1), (1, 1, 0, 1), (1, 1, 0, 1), (-1, 1, 0, 1), (1, 3, 0, 1)])),
        ("p4", exact_vec(&[(0, 1, -1, 3), (-1, 3, 0, 1), (1, 3, 0, 1), (-1, 3, 0, 1), (1, 1, 0, 1)])),
        ("m4", exact_vec(&[(0, 1, -1, 1), (-1, 1, 0, 1), (1, 1, 0, 1), (-1, 1, 0, 1), (-1, 3, 0, 1)])),
        ("p5", exact_vec(&[(0, 1, -1, 3), (-1, 3, 0, 1), (1, 3, 0, 1), (1, 3, 0, 1), (-1, 1, 0, 1)])),
        ("m5", exact_vec(&[(0, 1, -1, 1), (-1, 1, 0, 1), (1, 1, 0, 1), (1, 1, 0, 1), (1, 3, 0, 1)])),
        ("p6", exact_vec(&[(0, 1, -1, 3), (-1, 3, 0, 1), (-1, 3, 0, 1), (1, 3, 0, 1), (1, 1, 0, 1)])),
        ("m6", exact_vec(&[(0, 1, -1, 1), (-1, 1, 0, 1), (-1, 1, 0, 1), (1, 1, 0, 1), (-1, 3, 0, 1)])),
        ("p7", exact_vec(&[(0, 1, -1, 3), (-1, 3, 0, 1), (-1, 3, 0, 1), (-1, 3, 0, 1), (-1, 1, 0, 1)])),
        ("m7", exact_vec(&[(0, 1, -1, 1), (-1, 1, 0, 1), (-1, 1, 0, 1), (-1, 1, 0, 1), (1, 3, 0, 1)])),
        ("lA", exact_vec(&[(-1, 1, 0, 1), (0, 1, 1, 1), (0, 1, 0, 1), (0, 1, 0, 1), (0, 1, 0, 1)])),
        ("lB", exact_vec(&[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, 1, 1), (0, 1, 0, 1), (0, 1, 0, 1)])),
        ("lC", exact_vec(&[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, 0, 1), (0, 1, 1, 1), (0, 1, 0, 1)])),
        ("lD", exact_vec(&[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, 0, 1), (0, 1, -1, 1), (0, 1, 0, 1)])),
        ("lE", exact_vec(&[(-1, 1, 0, 1), (0, 1, 0, 1), (0, 1, -1, 1), (0, 1, 0, 1), (0, 1, 0, 1)])),
        ("lF", exact_vec(&[(-1, 1, 0, 1), (0, 1, -1, 1), (0, 1, 0, 1), (0, 1, 0, 1), (0, 1, 0, 1)])),
    ];
    let fam = make_family("ks_polytope").map_err(|e| e.to_string())?;
    let got = fam
        .walls_at_exact(Rational::new(1, 3))
        .map_err(|e| e.to_string())?;
    exact_walls_match(&got, &ks_rows)?;

    // The octahedron report: six ideal vertices, four walls through each,
    // twelve right angles with residual below 1e−12.
    let r = family_check_report("ideal_octahedron", 1.0, true, seed, 1e-10)
        .map_err(|e| e.to_string())?;
    if r.vertices.len() != 6 || !r.vertices.iter().all(|v| v.kind == "ideal") {
        return err("expected exactly 6 ideal vertices");
    }
    if !r.vertices.iter().all(|v| v.incident_walls.len() == 4) {
        return err("each ideal vertex must lie on exactly 4 walls");
    }
    if r.adjacency.len() != 12 {
        return err(format!("expected 12 adjacent wall pairs, got {}", r.adjacency.len()));
    }
    let mut max_res: f64 = 0.0;
    for a in &r.angles {
        match a.value {
            Some(v) if a.kind == "angle" => max_res = max_res.max((v - PI / 2.0).abs()),
            _ => return err("non-angle relation between adjacent walls"),
        }
    }
    if max_res >= 1e-12 {
        return err(format!("right-angle residual {max_res:.3e} ≥ 1e-12"));
    }
    // Exact vertex set.
    let oct = make_family("ideal_octahedron").map_err(|e| e.to_string())?;
    let pe = oct.polytope_at_exact(Rational::ONE).map_err(|e| e.to_string())?;
    let evs = enumerate_vertices(&pe, 0.0).map_err(|e| e.to_string())?;
    let frozen = [
        exact_vec(&[(1, 1, 0, 1), (0, 1, 1, 2), (0, 1, 1, 2), (0, 1, 0, 1)]),
        exact_vec(&[(1, 1, 0, 1), (0, 1, 1, 2), (0, 1, -1, 2), (0, 1, 0, 1)]),
        exact_vec(&[(1, 1, 0, 1), (0, 1, -1, 2), (0, 1, 1, 2), (0, 1, 0, 1)]),
        exact_vec(&[(1, 1, 0, 1), (0, 1, -1, 2), (0, 1, -1, 2), (0, 1, 0, 1)]),
        exact_vec(&[(1, 1, 0, 1), (0, 1, 0, 1), (0, 1, 0, 1), (1, 1, 0, 1)]),
        exact_vec(&[(1, 1, 0, 1), (0, 1, 0, 1), (0, 1, 0, 1), (-1, 1, 0, 1)]),
    ];
    if evs.ideal.len() != 6 || !evs.finite.is_empty() {
        return err("exact enumeration must find exactly the 6 ideal vertices");
    }
    for want in &frozen {
        let wc = crate::param::canonical_exact(want);
        if !evs
            .ideal
            .iter()
            .any(|v| crate::param::canonical_exact(v.point.coords()) == wc)
        {
            return err(format!("missing ideal vertex {want:?}"));
        }
    }
    Ok(format!(
        "tables reproduced exactly; 6 ideal vertices, 12 right angles, max residual {max_res:.1e}"
    ))
}

// Criterion 2: the zoom limit of the point collapse is exactly the six
// parallelepiped forms (projective tolerance 1e−10; the symbolic limits are
// in fact exact).
fn criterion_2() -> CheckResult {
    let fam = make_family("oct_collapse").map_err(|e| e.to_string())?;
    let mut distinct: Vec<DualHalfSpace<f64>> = Vec::new();
    for label in &fam.labels {
        let lim = fam
            .wall_limit(label, RescaleKind::Gamma, Side::Pos)
            .map_err(|e| e.to_string())?;
        let c = lim.wall.canonical();
        if !distinct.iter().any(|d| d.approx_eq(&c, 1e-10)) {
            distinct.push(c);
        }
    }
    let want = [
        vec![-1.0, 0.0, 0.0, -1.0],
        vec![-1.0, 0.0, 0.0, 1.0],
        vec![-1.0, -SQRT2, 0.0, 0.0],
        vec![-1.0, SQRT2, 0.0, 0.0],
        vec![-1.0, 0.0, -SQRT2, 0.0],
        vec![-1.0, 0.0, SQRT2, 0.0],
    ];
    if distinct.len() != want.len() {
        return err(format!("{} distinct limit walls, expected 6", distinct.len()));
    }
    for w in &want {
        let hw = DualHalfSpace::new(w.clone());
        if !distinct.iter().any(|d| d.approx_eq(&hw, 1e-10)) {
            return err(format!("missing limit wall {w:?}"));
        }
    }
    // They cut exactly the parallelepiped |x₁|,|x₂| ≤ √2/2, |x₃| ≤ 1.
    let eucl = make_family("eucl_parallelepiped").map_err(|e| e.to_string())?;
    let ew = eucl.walls_at(0.0).map_err(|e| e.to_string())?;
    for (_, w) in &ew {
        if !distinct.iter().any(|d| d.approx_eq(w, 1e-10)) {
            return err("limit set differs from the parallelepiped walls");
        }
    }
    Ok("six distinct zoom-limit walls, equal to the parallelepiped's".into())
}

// Criterion 3: reflections in the sides of the shrinking quadrilateral,
// conjugated by the zoom, tend to the affine reflections in the sides of
// the limit square; hyperbolic and spherical sides agree within 1e−8.
fn criterion_3() -> CheckResult {
    let fam = make_family("exp_quadrilateral").map_err(|e| e.to_string())?;
    // Expected block matrices [[1, 0], [w, r]]: r flips the wall's axis and
    // w has length √2 = 2·(√2/2) along it.
    let expected = |axis: usize, sign: f64| -> ProjectiveMap<f64> {
        let mut rows = vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ];
        rows[axis][axis] = -1.0;
        rows[axis][0] = sign * SQRT2;
        ProjectiveMap::from_rows(rows)
    };
    let cases = [
        ("right", 1usize, 1.0),
        ("left", 1usize, -1.0),
        ("top", 2usize, 1.0),
        ("bottom", 2usize, -1.0),
    ];
    for (label, axis, sign) in cases {
        let mut limits = Vec::new();
        for (side, form) in [
            (Side::Pos, QuadraticForm::hyperbolic(2)),
            (Side::Neg, QuadraticForm::spherical(2)),
        ] {
            let branch = fam.wall_branch_side(label, side).map_err(|e| e.to_string())?;
            let path = IsometryPath::reflection_in_wall(&branch.coeffs, &form);
            let lim = limit_conjugated_isometry(&path, RescaleKind::Gamma, side, 2)
                .map_err(|e| e.to_string())?;
            limits.push(lim.map);
        }
        let want = expected(axis, sign);
        for (side_name, lim) in [("hyperbolic", &limits[0]), ("spherical", &limits[1])] {
            if !lim.approx_eq(&want, 1e-8) {
                return err(format!(
                    "{side_name} zoom limit of the {label} reflection deviates from the block matrix"
                ));
            }
            let defect = euclidean_limit_defect(lim);
            if defect > 1e-8 {
                return err(format!("{label}: euclidean defect {defect:.3e}"));
            }
        }
        if !limits[0].approx_eq(&limits[1], 1e-8) {
            return err(format!("{label}: the two sides disagree"));
        }
        // Independent oracle: the limit must be the affine reflection in
        // the zoom limit of the wall itself.
        let lim_wall = fam
            .wall_limit(label, RescaleKind::Gamma, Side::Pos)
            .map_err(|e| e.to_string())?;
        let oracle = crate::forms::euclidean_reflection(&lim_wall.wall)
            .map_err(|e| e.to_string())?;
        if !limits[0].approx_eq(&oracle, 1e-8) {
            return err(format!("{label}: disagrees with the affine reflection oracle"));
        }
    }
    Ok("four side reflections transition to the square's affine reflections from both sides".into())
}

// Criterion 4: the fiber-rescaled limits of the plane collapse are exactly
// the eight half-pipe table walls, and every wall reflection limit has the
// half-pipe block shape within 1e−8.
fn criterion_4() -> CheckResult {
    let fam = make_family("oct_prime").map_err(|e| e.to_string())?;
    let hp = make_family("hp_oct_limit").map_err(|e| e.to_string())?;
    let hp_walls = hp
        .walls_at_exact(Rational::new(1, 2))
        .map_err(|e| e.to_string())?;
    for side in [Side::Pos, Side::Neg] {
        for label in &fam.labels {
            let lim = fam
                .wall_limit(label, RescaleKind::Eta, side)
                .map_err(|e| e.to_string())?;
            let want = &hp_walls.iter().find(|(l, _)| l == label).unwrap().1;
            let wc = crate::param::canonical_exact(want.coeffs());
            if crate::param::canonical_exact(&lim.exact) != wc {
                return err(format!("{label} limit ({side:?}) differs from the table"));
            }
        }
    }
    // Reflection limits: non-degenerate walls must give block matrices;
    // the two sides must agree.
    for label in ["L1", "L2", "L3", "L4", "R1", "R2", "R3", "R4"] {
        let mut per_side = Vec::new();
        for (side, form) in [
            (Side::Pos, QuadraticForm::hyperbolic(3)),
            (Side::Neg, QuadraticForm::ads_transition(3)),
        ] {
            let branch = fam.wall_branch_side(label, side).map_err(|e| e.to_string())?;
            let path = IsometryPath::reflection_in_wall(&branch.coeffs, &form);
            let lim = limit_conjugated_isometry(&path, RescaleKind::Eta, side, 3)
                .map_err(|e| format!("{label} ({side:?}): {e}"))?;
            hp_from_projective(&lim.map, 1e-8)
                .map_err(|e| format!("{label} ({side:?}): {e}"))?;
            per_side.push(lim.map);
        }
        if !per_side[0].approx_eq(&per_side[1], 1e-8) {
            return err(format!("{label}: hyperbolic and AdS reflection limits differ"));
        }
    }
    Ok("eight limit walls match the table; all reflection limits are half-pipe block matrices".into())
}

// Criterion 5: collapsing quadrilateral metrics — vertex angle arccos(t),
// horizontal separation 2·arcsinh(t), and the timelike separation
// 2·arcsin(|t|) on the Anti-de Sitter side, all within 1e−9.
fn criterion_5(seed: u64) -> CheckResult {
    let fam = make_family("quad_prime").map_err(|e| e.to_string())?;
    for &t in &[0.25, 0.5, 0.75] {
        let p = fam.polytope_at(t, 1e-10).map_err(|e| e.to_string())?;
        let dual = p.dual_form();
        let left = &p.wall("left").unwrap().half_space;
        let top = &p.wall("top").unwrap().half_space;
        let bottom = &p.wall("bottom").unwrap().half_space;
        match wall_relation(&dual, left, top, 1e-10).map_err(|e| e.to_string())? {
            WallRelation::Angle { theta, .. } => {
                if (theta - t.acos()).abs() > 1e-9 {
                    return err(format!("vertex angle at t={t}: {theta} vs {}", t.acos()));
                }
            }
            other => return err(format!("expected an angle at t={t}, got {other:?}")),
        }
        let d = wall_distance(&dual, top, bottom, 1e-10).map_err(|e| e.to_string())?;
        let want = 2.0 * t.asinh();
        if (d - want).abs() > 1e-9 {
            return err(format!("separation at t={t}: {d} vs {want}"));
        }
        let oracle = wall_distance_sampled(&p.point_form(), top, bottom, seed)
            .map_err(|e| e.to_string())?;
        if (d - oracle).abs() > 1e-6 {
            return err(format!("sampled-distance oracle off by {:.3e}", (d - oracle).abs()));
        }
    }
    for &t in &[-0.25, -0.5] {
        let p = fam.polytope_at(t, 1e-10).map_err(|e| e.to_string())?;
        let dual = p.dual_form();
        let top = &p.wall("top").unwrap().half_space;
        let bottom = &p.wall("bottom").unwrap().half_space;
        match wall_relation(&dual, top, bottom, 1e-10).map_err(|e| e.to_string())? {
            WallRelation::TimelikeSeparation { distance } => {
                let want = 2.0 * t.abs().asin();
                if (distance - want).abs() > 1e-9 {
                    return err(format!("timelike separation at t={t}: {distance} vs {want}"));
                }
            }
            other => return err(format!("expected timelike separation at t={t}, got {other:?}")),
        }
    }
    Ok("arccos(t) vertex angles, 2·arcsinh(t) separations, 2·arcsin|t| timelike separations".into())
}

fn random_mink(rng: &mut Rng, n: usize) -> MinkIsometry<f64> {
    let eta = rng.symmetric(1.5);
    let mut l = Matrix::identity(n);
    l[(0, 0)] = eta.cosh();
    l[(0, 1)] = eta.sinh();
    l[(1, 0)] = eta.sinh();
    l[(1, 1)] = eta.cosh();
    if n == 3 {
        let th = rng.symmetric(PI);
        let rot = Matrix::from_rows(vec![
            vec![1.0, 0.0, 0.0],
            vec![0.0, th.cos(), -th.sin()],
            vec![0.0, th.sin(), th.cos()],
        ]);
        l = rot.mul(&l);
    }
    if rng.unit() < 0.5 {
        l = l.map(|x| -x);
    }
    if rng.unit() < 0.5 {
        let mut f = Matrix::identity(n);
        f[(1, 1)] = -1.0;
        l = l.mul(&f);
    }
    let b: Vec<f64> = (0..n).map(|_| rng.symmetric(2.0)).collect();
    MinkIsometry::new(l, b, 1e-9).expect("constructed Lorentz matrix")
}

// Criterion 6: the dictionary is a homomorphism (200 seeded pairs, dims 2
// and 3, tol 1e−12), the generator correspondences hold exactly in exact
// mode, and the wall-incidence criterion holds in both directions on 100
// seeded pairs.
fn criterion_6(seed: u64) -> CheckResult {
    let mut rng = Rng::seeded(seed);
    for n in [2usize, 3] {
        for k in 0..100 {
            let m1 = random_mink(&mut rng, n);
            let m2 = random_mink(&mut rng, n);
            let lhs = mink_to_hp(&m1.compose(&m2)).assembled();
            let rhs = mink_to_hp(&m1).compose(&mink_to_hp(&m2)).assembled();
            let dev = lhs.sub(&rhs).max_abs();
            if dev > 1e-12 {
                return err(format!("homomorphism defect {dev:.3e} at pair {k} (dim {n})"));
            }
        }
    }

    // Exact generator correspondences.
    let s2 = Exact::sqrt2();
    let boost = Matrix::from_rows(vec![
        vec![Exact::integer(3), Exact::integer(2) * s2],
        vec![Exact::integer(2) * s2, Exact::integer(3)],
    ]);
    let lin = MinkIsometry::new(boost.clone(), vec![Exact::integer(0); 2], 0.0)
        .map_err(|e| e.to_string())?;
    let h = mink_to_hp(&lin);
    if h.eps() != 1
        || h.lorentz_block() != &boost
        || h.fiber_part().iter().any(|x| !x.is_zero())
    {
        return err("sheet-preserving linear part must embed as [[A,0],[0,1]]");
    }
    let center = MinkIsometry::<Exact>::point_reflection(vec![Exact::integer(0); 2]);
    let h = mink_to_hp(&center);
    if h.eps() != -1 || h.lorentz_block() != &Matrix::identity(2) {
        return err("the central element must embed as [[id,0],[0,-1]]");
    }
    let b = vec![Exact::integer(1), s2];
    let transl = MinkIsometry::<Exact>::translation_by(b.clone());
    let h = mink_to_hp(&transl);
    if h.eps() != 1 || h.fiber_part() != [-b[0], b[1]] {
        return err("translations must embed with bottom row bᵀJ");
    }
    // Round trip is the identity, exactly.
    for m in [lin, center, transl] {
        if hp_to_mink(&mink_to_hp(&m), 0.0) != m {
            return err("exact round trip through the dictionary failed");
        }
    }

    // Incidence, both directions.
    let q2 = QuadraticForm::hyperbolic(1);
    let mut branch_counts = [0usize; 2];
    let mut checked = 0;
    while checked < 100 {
        let v = [rng.symmetric(2.0), rng.symmetric(2.0)];
        let vp = [rng.symmetric(2.0), rng.symmetric(2.0)];
        let w = [v[0] - vp[0], v[1] - vp[1]];
        let qw = pairing(&q2, &w, &w).unwrap();
        if qw.abs() < 1e-6 {
            continue;
        }
        let Some(meet) = hp_walls_intersect_oracle(&v, &vp) else {
            continue;
        };
        if meet != (qw > 0.0) {
            return err(format!("incidence mismatch at v={v:?}, v'={vp:?}"));
        }
        branch_counts[(qw > 0.0) as usize] += 1;
        checked += 1;
    }
    if branch_counts[0] == 0 || branch_counts[1] == 0 {
        return err("incidence test must exercise both directions");
    }
    Ok(format!(
        "homomorphism on 200 pairs; exact generator identities; incidence {}/{} split",
        branch_counts[1], branch_counts[0]
    ))
}

// Criterion 7: the puncture holonomy of the half-pipe torus. Pinned
// expectation: the commutator of the limit identifications equals the
// dictionary image of y ↦ y + ℛv − v with v = (1, 0). The boost length and
// the spacelike check are also pinned.
fn criterion_7() -> CheckResult {
    let scheme = pairing_scheme("torus_from_quad_prime").map_err(|e| e.to_string())?;
    let mut gens: Vec<HpIsometry<f64>> = Vec::new();
    for label in ["lr", "tb"] {
        let path = recipe_limit_path(scheme, label, Side::Pos).map_err(|e| e.to_string())?;
        let lim = limit_conjugated_isometry(&path, RescaleKind::Eta, Side::Pos, 2)
            .map_err(|e| e.to_string())?;
        gens.push(hp_from_projective(&lim.map, 1e-8).map_err(|e| e.to_string())?);
    }
    let boost_len = hp_translation_length_on_h1(&gens[0]).map_err(|e| e.to_string())?;
    let want_len = 2.0 * 1.0f64.asinh();
    if (boost_len - want_len).abs() > 1e-12 {
        return err(format!("boost length {boost_len} vs 2·arcsinh(1) = {want_len}"));
    }
    let commutator = gens[0]
        .compose(&gens[1])
        .compose(&gens[0].inverse(1e-12))
        .compose(&gens[1].inverse(1e-12));
    let m = hp_to_mink(&commutator, 1e-12);
    if m.linear().sub(&Matrix::identity(2)).max_abs() > 1e-9 {
        return err("commutator is not a pure Minkowski translation");
    }
    let u = m.translation().to_vec();
    let q = QuadraticForm::hyperbolic(1);
    let qu = pairing(&q, &u, &u).unwrap();
    if qu <= 0.0 {
        return err(format!("commutator translation {u:?} is not spacelike"));
    }
    match classify_hp(&commutator, 1e-9).map_err(|e| e.to_string())? {
        HpClass::HpRotation { .. } => {}
        other => return err(format!("commutator classifies as {other:?}")),
    }
    // The pinned expectation: y ↦ y + ℛv − v with v = (1, 0).
    let r_mat = hp_to_mink(&gens[0], 1e-12).linear().clone();
    let v = [1.0, 0.0];
    let rv = r_mat.mul_vec(&v);
    let expected_u = [rv[0] - v[0], rv[1] - v[1]];
    let expected =
        mink_to_hp(&MinkIsometry::translation_by(expected_u.to_vec())).assembled();
    let dev = commutator.assembled().sub(&expected).max_abs();
    if dev > 1e-9 {
        return err(format!(
            "commutator is the translation by ({:.6}, {:.6}) = ℛv − v for v = (2, 0), {} \
             the pinned expectation uses v = (1, 0) and predicts ({:.6}, {:.6}); \
             deviation {dev:.3e}. The limit identifications themselves force the factor 2: \
             the top-bottom limit translates by (2, 0), moving the wall dual to (−1, 0) to \
             the wall dual to (1, 0).",
            u[0], u[1], "but", expected_u[0], expected_u[1]
        ));
    }
    Ok(format!(
        "commutator = translation by ({:.6}, {:.6}), boost length {boost_len:.12}",
        u[0], u[1]
    ))
}

// Criterion 8: the 22-wall family — orthogonal wall pairs, the constant
// horizontal section, the slice isometric to the plane collapse, and the
// fiber-limit degeneracy pattern.
fn criterion_8(seed: u64) -> CheckResult {
    let fam = make_family("ks_polytope").map_err(|e| e.to_string())?;
    let ts = [0.1, 0.3, 0.5, -0.1, -0.3];

    // (a) each pair (p_i, m_i) orthogonal.
    for &t in &ts {
        let p = fam.polytope_at(t, 1e-10).map_err(|e| e.to_string())?;
        let dual = p.dual_form();
        for i in 0..8 {
            let pw = &p.wall(&format!("p{i}")).unwrap().half_space;
            let mw = &p.wall(&format!("m{i}")).unwrap().half_space;
            // Normalized by the coefficient scale so the threshold is
            // meaningful across t.
            let raw = pairing(&dual, pw.coeffs(), mw.coeffs()).unwrap();
            let sa: f64 = pw.coeffs().iter().map(|c| c * c).sum::<f64>().sqrt();
            let sb: f64 = mw.coeffs().iter().map(|c| c * c).sum::<f64>().sqrt();
            if (raw / (sa * sb)).abs() > 1e-10 {
                return err(format!("p{i}/m{i} not orthogonal at t={t}: {raw:.3e}"));
            }
        }
    }

    // (b) the horizontal section is independent of t, and right-angled.
    let h = DualHalfSpace::new(vec![0.0, 0.0, 0.0, 0.0, 1.0]);
    let mut reference: Option<Vec<DualHalfSpace<f64>>> = None;
    for &t in &ts {
        let p = fam.polytope_at(t, 1e-10).map_err(|e| e.to_string())?;
        let sec = cross_section(&p, &h, 1e-9, seed).map_err(|e| format!("t={t}: {e}"))?;
        let walls: Vec<DualHalfSpace<f64>> = sec
            .walls()
            .iter()
            .map(|w| w.half_space.canonical())
            .collect();
        match &reference {
            None => {
                // Right angles at all adjacencies of the first section.
                let vs = enumerate_vertices(&sec, 1e-9).map_err(|e| e.to_string())?;
                let adj = adjacency(&sec, &vs, 1e-7);
                if walls.len() != 14 || vs.ideal.len() != 12 {
                    return err(format!(
                        "section has {} walls and {} ideal vertices; expected 14 and 12",
                        walls.len(),
                        vs.ideal.len()
                    ));
                }
                let dual = sec.dual_form();
                for &(i, j) in &adj {
                    match wall_relation(
                        &dual,
                        &sec.walls()[i].half_space,
                        &sec.walls()[j].half_space,
                        1e-10,
                    )
                    .map_err(|e| e.to_string())?
                    {
                        WallRelation::Angle {
                            normalized_pairing, ..
                        } if normalized_pairing.abs() < 1e-10 => {}
                        other => {
                            return err(format!("section adjacency {i},{j} not right: {other:?}"))
                        }
                    }
                }
                reference = Some(walls);
            }
            Some(rw) => {
                if rw.len() != walls.len()
                    || !rw
                        .iter()
                        .all(|r| walls.iter().any(|w| w.approx_eq(r, 1e-10)))
                {
                    return err(format!("section at t={t} differs from the reference section"));
                }
            }
        }
    }

    // (c) the letter-wall slice is isometric to the plane collapse.
    let oct_prime = make_family("oct_prime").map_err(|e| e.to_string())?;
    for &t in &ts {
        let p = fam.polytope_at(t, 1e-10).map_err(|e| e.to_string())?;
        let la = p.wall("lA").unwrap().half_space.clone();
        let slice = cross_section(&p, &la, 1e-9, seed).map_err(|e| format!("t={t}: {e}"))?;
        let target = oct_prime.polytope_at(t, 1e-10).map_err(|e| e.to_string())?;
        match gram_compare(&slice, &target, 1e-8).map_err(|e| e.to_string())? {
            Some(_) => {}
            None => return err(format!("no Gram matching between the slice and the collapse at t={t}")),
        }
    }

    // (d) fiber-limit degeneracy pattern.
    for label in &fam.labels {
        let lim = fam
            .wall_limit(label, RescaleKind::Eta, Side::Pos)
            .map_err(|e| e.to_string())?;
        let degenerate = crate::halfpipe::hp_wall_is_degenerate(&lim.wall, 1e-10);
        let should_be = !label.starts_with('p');
        if degenerate != should_be {
            return err(format!(
                "limit wall {label} degeneracy {degenerate}, expected {should_be}"
            ));
        }
    }
    Ok("orthogonal pairs, constant right-angled section, isometric slice, degeneracy pattern".into())
}

// Criterion 9: cone-angle behaviour on the published grids.
fn criterion_9() -> CheckResult {
    let quad = pairing_scheme("torus_from_quadrilateral").map_err(|e| e.to_string())?;
    let puncture = quad.cycle("puncture").unwrap();
    let mut prev = f64::INFINITY;
    let mut first = None;
    let mut last = None;
    for &texp in &[0.25, 0.5, 1.0, 2.0, 4.0] {
        let tau = quad_param_from_exp_time(texp, Curvature::Hyperbolic);
        let a = cone_angle(puncture, quad, tau, 1e-10).map_err(|e| e.to_string())?;
        if a >= prev {
            return err(format!("puncture angle not strictly decreasing at {texp}"));
        }
        prev = a;
        if first.is_none() {
            first = Some(a);
        }
        last = Some(a);
    }
    let first = first.unwrap();
    let last = last.unwrap();
    if (2.0 * PI - first).abs() > 0.15 {
        return err(format!("angle at exponent time 0.25 is {first}, not within 0.15 of 2π"));
    }
    if last >= 0.5 {
        return err(format!("angle at exponent time 4 is {last}, expected < 0.5"));
    }
    // Spherical side: angles exceed 2π.
    for &texp in &[0.3, 0.6] {
        let tau = quad_param_from_exp_time(texp, Curvature::Spherical);
        let a = cone_angle(puncture, quad, tau, 1e-10).map_err(|e| e.to_string())?;
        if a <= 2.0 * PI {
            return err(format!("spherical angle {a} at exponent time {texp} not above 2π"));
        }
    }
    // The doubled octahedron edge angle increases toward 2π as t → 0⁺.
    let bor = pairing_scheme("borromean_double").map_err(|e| e.to_string())?;
    let lower = bor.cycle("lower_edge").unwrap();
    let mut prev = 0.0;
    for &t in &[0.8, 0.6, 0.4, 0.2, 0.1] {
        let a = cone_angle(lower, bor, t, 1e-10).map_err(|e| e.to_string())?;
        if a <= prev {
            return err(format!("edge angle not strictly increasing at t={t}"));
        }
        prev = a;
    }
    if prev >= 2.0 * PI {
        return err("edge angle overshot 2π");
    }
    // Three-torus commutators are trivial.
    let tt = pairing_scheme("three_torus_translations").map_err(|e| e.to_string())?;
    for (a, b) in [("tx1", "tx2"), ("tx1", "tx3"), ("tx2", "tx3")] {
        let h = holonomy(&LoopWord::commutator(a, b), tt, 0.0, 1e-12)
            .map_err(|e| e.to_string())?;
        if !h.is_identity(1e-12) {
            return err(format!("[{a}, {b}] is not the identity"));
        }
    }
    Ok(format!(
        "puncture angle falls from {first:.4} to {last:.4}; edge angle climbs to {prev:.4}; translations commute"
    ))
}

// Criterion 10: the deviation from the limit locus quarters when t halves.
fn criterion_10() -> CheckResult {
    let combos = [
        (GeometryKind::Hyperbolic, RescaleKind::Gamma),
        (GeometryKind::Spherical, RescaleKind::Gamma),
        (GeometryKind::Hyperbolic, RescaleKind::Eta),
        (GeometryKind::AntiDeSitter, RescaleKind::Eta),
    ];
    let mut parts = Vec::new();
    for (model, kind) in combos {
        let d1 = surface_limit_check(model, kind, 0.1, 16).map_err(|e| e.to_string())?;
        let d2 = surface_limit_check(model, kind, 0.05, 16).map_err(|e| e.to_string())?;
        let ratio = d1 / d2;
        if !(3.5..=4.5).contains(&ratio) {
            return err(format!("{}/{kind:?}: ratio {ratio:.4} outside [3.5, 4.5]", model.label()));
        }
        parts.push(format!("{}:{ratio:.3}", model.label()));
    }
    Ok(format!("quartering ratios {}", parts.join(", ")))
}

/// Measured distance between the two collapsing edges of the point-collapse
/// octahedron, by coordinate descent over the two edge segments.
pub fn measured_edge_distance(t: f64, seed: u64) -> Result<f64, String> {
    let fam = make_family("oct_collapse").map_err(|e| e.to_string())?;
    let p = fam.polytope_at(t, 1e-10).map_err(|e| e.to_string())?;
    let vs = enumerate_vertices(&p, 1e-9).map_err(|e| e.to_string())?;
    let idx = |label: &str| {
        p.walls()
            .iter()
            .position(|w| w.label == label)
            .expect("catalog wall")
    };
    let endpoints = |a: usize, b: usize| -> Result<Vec<Vec<f64>>, String> {
        let pts: Vec<Vec<f64>> = vs
            .all()
            .filter(|v| v.incident_walls.contains(&a) && v.incident_walls.contains(&b))
            .map(|v| v.point.coords().to_vec())
            .collect();
        if pts.len() != 2 {
            return err(format!("edge ({a}, {b}) has {} endpoints", pts.len()));
        }
        Ok(pts)
    };
    let lower = endpoints(idx("L1"), idx("L3"))?;
    let upper = endpoints(idx("L2"), idx("L4"))?;
    let q = p.point_form();
    let point_on = |seg: &[Vec<f64>], s: f64| -> Option<Vec<f64>> {
        let v: Vec<f64> = seg[0]
            .iter()
            .zip(&seg[1])
            .map(|(a, b)| (1.0 - s) * a + s * b)
            .collect();
        let qq = eval_form(&q, &v).ok()?;
        if qq >= -1e-12 {
            return None;
        }
        let scale = (-qq).sqrt();
        let sign = if v[0] < 0.0 { -1.0 } else { 1.0 };
        Some(v.iter().map(|x| sign * x / scale).collect())
    };
    let cost = |u: &[f64]| -> Option<f64> {
        let a = point_on(&lower, u[0].clamp(0.0, 1.0))?;
        let b = point_on(&upper, u[1].clamp(0.0, 1.0))?;
        Some(-pairing(&q, &a, &b).ok()?)
    };
    let mut rng = Rng::seeded(seed);
    let mut best = (vec![0.5, 0.5], cost(&[0.5, 0.5]).ok_or("degenerate edge")?);
    for _ in 0..100 {
        let u = vec![rng.unit(), rng.unit()];
        if let Some(v) = cost(&u) {
            if v < best.1 {
                best = (u, v);
            }
        }
    }
    let (mut u, mut value) = best;
    let mut step = 0.25;
    while step > 1e-10 {
        let mut improved = false;
        for i in 0..2 {
            for dir in [-1.0, 1.0] {
                let mut cand = u.clone();
                cand[i] = (cand[i] + dir * step).clamp(0.0, 1.0);
                if let Some(v) = cost(&cand) {
                    if v < value - 1e-16 {
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
    Ok(value.max(1.0).acosh())
}

// Criterion 11: the measured inter-edge distance curve is continuous on
// (0, 1) and tends to 0 at 0⁺; it is emitted alongside the reference curve
// 2·tanh(t), and any discrepancy is reported, not asserted.
fn criterion_11(seed: u64) -> CheckResult {
    let grid: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
    let mut measured = Vec::new();
    for &t in &grid {
        measured.push(measured_edge_distance(t, seed)?);
    }
    // Continuity at desk scale: jumps bounded, midpoints consistent.
    let mut max_jump: f64 = 0.0;
    for k in 1..measured.len() {
        let jump = (measured[k] - measured[k - 1]).abs();
        max_jump = max_jump.max(jump);
        if jump > 1.0 {
            return err(format!("jump {jump:.3} between t={} and t={}", grid[k - 1], grid[k]));
        }
        let mid = measured_edge_distance((grid[k] + grid[k - 1]) / 2.0, seed)?;
        let (lo, hi) = (
            measured[k - 1].min(measured[k]),
            measured[k - 1].max(measured[k]),
        );
        if mid < lo - 1e-6 || mid > hi + 1e-6 {
            return err(format!("midpoint value {mid:.6} escapes [{lo:.6}, {hi:.6}]"));
        }
    }
    if measured[0] > 0.25 {
        return err(format!("distance {:.4} at t=0.1 is not tending to 0", measured[0]));
    }
    let small = measured_edge_distance(0.02, seed)?;
    if small > 0.06 {
        return err(format!("distance {small:.4} at t=0.02 is not tending to 0"));
    }
    let mut discrepancy: f64 = 0.0;
    let mut rows = String::new();
    for (t, d) in grid.iter().zip(&measured) {
        let reference = 2.0 * t.tanh();
        discrepancy = discrepancy.max((d - reference).abs());
        rows.push_str(&format!(" ({t:.1}: {d:.4} vs {reference:.4})"));
    }
    Ok(format!(
        "curve continuous, → 0 at 0⁺; measured vs 2·tanh(t):{rows}; max discrepancy {discrepancy:.4} (reported, not asserted)"
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn measured_edge_distance_matches_closed_form_probe() {
        // At small t the measured curve hugs both candidate references.
        let d = measured_edge_distance(0.1, 0).unwrap();
        assert!((d - 0.2).abs() < 0.02, "d(0.1) = {d}");
    }
}
