//! Integration tests across the catalog: vertex enumeration on the shipped
//! families, cross-sections, Gram matching, and wall separations.

use transition_lab::forms::{DualHalfSpace, GeometryKind, ProjectiveMap};
use transition_lab::gallery::make_family;
use transition_lab::polytope::{
    adjacency, cross_section, enumerate_vertices, gram_compare, wall_distance,
    wall_distance_sampled, wall_relation, WallRelation,
};

const SQRT2: f64 = std::f64::consts::SQRT_2;

#[test]
fn point_collapse_has_only_finite_vertices_inside() {
    // At t = 1/2 the collapsing octahedron has moved all vertices inside.
    let fam = make_family("oct_collapse").unwrap();
    let p = fam.polytope_at(0.5, 1e-10).unwrap();
    let vs = enumerate_vertices(&p, 1e-9).unwrap();
    assert_eq!(vs.ideal.len(), 0);
    assert!(vs.hyperideal.is_empty());
    assert!(!vs.finite.is_empty());
    // Every vertex satisfies its defining equations to near machine
    // precision.
    for v in &vs.finite {
        let c = v.point.canonical();
        for &wi in &v.incident_walls {
            let r = p.walls()[wi].half_space.evaluate(c.coords()).abs();
            assert!(r < 1e-12, "residual {r}");
        }
        assert!(v.incident_walls.len() >= 3);
    }
}

#[test]
fn octahedron_adjacency_is_three_per_wall() {
    // Eight triangles, twelve edges: each wall touches exactly three
    // others along a codimension-2 face.
    let fam = make_family("ideal_octahedron").unwrap();
    let p = fam.polytope_at(1.0, 1e-10).unwrap();
    let vs = enumerate_vertices(&p, 1e-10).unwrap();
    let adj = adjacency(&p, &vs, 1e-8);
    assert_eq!(adj.len(), 12);
    let mut deg = [0usize; 8];
    for (i, j) in adj {
        deg[i] += 1;
        deg[j] += 1;
    }
    assert!(deg.iter().all(|&d| d == 3), "degrees {deg:?}");
}

#[test]
fn parallelepiped_adjacency_is_four_per_wall() {
    let fam = make_family("eucl_parallelepiped").unwrap();
    let p = fam.polytope_at(0.0, 1e-10).unwrap();
    let vs = enumerate_vertices(&p, 1e-9).unwrap();
    assert_eq!(vs.finite.len(), 8);
    let adj = adjacency(&p, &vs, 1e-8);
    let mut deg = [0usize; 6];
    for (i, j) in adj {
        deg[i] += 1;
        deg[j] += 1;
    }
    assert!(deg.iter().all(|&d| d == 4), "degrees {deg:?}");
}

#[test]
fn ks_polytope_pm_pairs_are_adjacent() {
    let fam = make_family("ks_polytope").unwrap();
    let p = fam.polytope_at(0.25, 1e-10).unwrap();
    let vs = enumerate_vertices(&p, 1e-9).unwrap();
    let adj = adjacency(&p, &vs, 1e-7);
    for i in 0..8 {
        let a = p
            .walls()
            .iter()
            .position(|w| w.label == format!("p{i}"))
            .unwrap();
        let b = p
            .walls()
            .iter()
            .position(|w| w.label == format!("m{i}"))
            .unwrap();
        let (lo, hi) = (a.min(b), a.max(b));
        assert!(
            adj.contains(&(lo, hi)),
            "pair p{i}/m{i} must share a codimension-2 face"
        );
    }
}

#[test]
fn plane_collapse_horizontal_section_is_the_ideal_quadrilateral() {
    // Slicing the plane collapse by its symmetry plane gives the constant
    // ideal quadrilateral at every parameter.
    let fam = make_family("oct_prime").unwrap();
    let quad = make_family("ideal_quadrilateral").unwrap();
    let quad_walls = quad.walls_at(1.0).unwrap();
    let h = DualHalfSpace::new(vec![0.0, 0.0, 0.0, 1.0]);
    let mut reference: Option<Vec<DualHalfSpace<f64>>> = None;
    for &t in &[0.3, 0.7] {
        let p = fam.polytope_at(t, 1e-10).unwrap();
        let sec = cross_section(&p, &h, 1e-9, 0).unwrap();
        assert_eq!(sec.geometry(), GeometryKind::Hyperbolic);
        let walls: Vec<DualHalfSpace<f64>> = sec
            .walls()
            .iter()
            .map(|w| w.half_space.canonical())
            .collect();
        assert_eq!(walls.len(), 4);
        for (_, qw) in &quad_walls {
            assert!(
                walls.iter().any(|w| w.approx_eq(qw, 1e-9)),
                "missing quadrilateral wall at t = {t}"
            );
        }
        if let Some(rw) = &reference {
            for w in &walls {
                assert!(rw.iter().any(|r| r.approx_eq(w, 1e-9)));
            }
        }
        reference = Some(walls);
    }
}

#[test]
fn cross_section_commutes_with_slice_fixing_isometries() {
    // A double sign flip fixes the horizontal hyperplane; the sections of
    // the polytope and of its image have equal Gram matrices.
    let fam = make_family("ks_polytope").unwrap();
    let p = fam.polytope_at(0.3, 1e-10).unwrap();
    let h = DualHalfSpace::new(vec![0.0, 0.0, 0.0, 0.0, 1.0]);
    let sec = cross_section(&p, &h, 1e-9, 0).unwrap();
    let m = ProjectiveMap::coordinate_flip(5, 1)
        .compose(&ProjectiveMap::coordinate_flip(5, 2));
    let moved_walls: Vec<(String, DualHalfSpace<f64>)> = p
        .walls()
        .iter()
        .map(|w| (w.label.clone(), m.act_dual(&w.half_space, 1e-12).unwrap()))
        .collect();
    let moved = transition_lab::polytope::Polytope::new(
        p.geometry(),
        moved_walls,
        p.interior().clone(),
        1e-10,
    )
    .unwrap();
    let sec2 = cross_section(&moved, &h, 1e-9, 0).unwrap();
    let perm = gram_compare(&sec, &sec2, 1e-10).unwrap();
    assert!(perm.is_some(), "sections must be Gram-equivalent");
}

#[test]
fn gram_compare_recovers_a_scrambled_symmetry_image() {
    let fam = make_family("ideal_octahedron").unwrap();
    let p = fam.polytope_at(1.0, 1e-10).unwrap();
    // Image under the x₁ flip, with the wall order scrambled so the
    // identity assignment cannot match by accident.
    let flip = ProjectiveMap::coordinate_flip(4, 1);
    let mut moved_walls: Vec<(String, DualHalfSpace<f64>)> = p
        .walls()
        .iter()
        .map(|w| (w.label.clone(), flip.act_dual(&w.half_space, 1e-12).unwrap()))
        .collect();
    moved_walls.rotate_left(3);
    let q = transition_lab::polytope::Polytope::new(
        p.geometry(),
        moved_walls,
        p.interior().clone(),
        1e-10,
    )
    .unwrap();
    let perm = gram_compare(&p, &q, 1e-9).unwrap().expect("matching exists");
    // The permutation must actually identify projectively equal dual
    // pairings: verify it transports the Gram matrix.
    let gp = transition_lab::polytope::gram_matrix(&p).unwrap();
    let gq = transition_lab::polytope::gram_matrix(&q).unwrap();
    for i in 0..8 {
        for j in 0..8 {
            assert!((gp[(i, j)] - gq[(perm[i], perm[j])]).abs() < 1e-9);
        }
    }
    assert_ne!(perm, (0..8).collect::<Vec<_>>());
}

#[test]
fn collapsing_octahedron_wall_separation_two_ways() {
    // A lower-edge wall against an upper-edge wall at t = 1/2: the
    // dual-pairing distance and the sampled minimization agree.
    let fam = make_family("oct_collapse").unwrap();
    let p = fam.polytope_at(0.5, 1e-10).unwrap();
    let dual = p.dual_form();
    let a = &p.wall("L1").unwrap().half_space;
    let b = &p.wall("L2").unwrap().half_space;
    let d = wall_distance(&dual, a, b, 1e-10).unwrap();
    let oracle = wall_distance_sampled(&p.point_form(), a, b, 0).unwrap();
    assert!((d - oracle).abs() < 1e-6, "{d} vs {oracle}");
    // Parallel walls of the euclidean limit have no hyperbolic distance.
    let eucl = make_family("eucl_parallelepiped").unwrap();
    let pe = eucl.polytope_at(0.0, 1e-10).unwrap();
    let a = &pe.wall("x1lo").unwrap().half_space;
    let b = &pe.wall("x1hi").unwrap().half_space;
    assert!(wall_distance(&pe.dual_form(), a, b, 1e-10).is_err());
}

#[test]
fn collapsing_quadrilateral_vertex_angles_follow_arccos() {
    let fam = make_family("quad_prime").unwrap();
    for &t in &[0.25, 0.5, 0.75] {
        let p = fam.polytope_at(t, 1e-10).unwrap();
        let rel = wall_relation(
            &p.dual_form(),
            &p.wall("right").unwrap().half_space,
            &p.wall("bottom").unwrap().half_space,
            1e-10,
        )
        .unwrap();
        match rel {
            WallRelation::Angle { theta, .. } => {
                assert!((theta - t.acos()).abs() < 1e-12)
            }
            other => panic!("expected an angle, got {other:?}"),
        }
    }
}

#[test]
fn hp_polytope_vertices() {
    // The half-pipe limit polytope has the four ideal quadrilateral
    // vertices and four finite apex vertices.
    let fam = make_family("hp_oct_limit").unwrap();
    let p = fam.polytope_at(0.0, 1e-10).unwrap();
    let vs = enumerate_vertices(&p, 1e-9).unwrap();
    assert_eq!(vs.ideal.len(), 4);
    assert_eq!(vs.finite.len(), 4);
    for v in &vs.ideal {
        let c = v.point.canonical();
        assert!((c.coords()[1].abs() - SQRT2 / 2.0).abs() < 1e-9);
        assert!((c.coords()[2].abs() - SQRT2 / 2.0).abs() < 1e-9);
        assert!(c.coords()[3].abs() < 1e-9);
    }
}

#[test]
fn cuboctahedron_catalog_matches_derived_section() {
    let fam = make_family("ks_polytope").unwrap();
    let p = fam.polytope_at(0.3, 1e-10).unwrap();
    let h = DualHalfSpace::new(vec![0.0, 0.0, 0.0, 0.0, 1.0]);
    let sec = cross_section(&p, &h, 1e-9, 0).unwrap();
    let cat = make_family("cuboctahedron").unwrap();
    let cat_walls = cat.walls_at(0.3).unwrap();
    assert_eq!(sec.walls().len(), cat_walls.len());
    for (_, cw) in &cat_walls {
        assert!(
            sec.walls()
                .iter()
                .any(|w| w.half_space.approx_eq(cw, 1e-9)),
            "catalog wall {:?} missing from the derived section",
            cw.coeffs()
        );
    }
}
