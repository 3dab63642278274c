use digitopo::canon::isomorphic;
use digitopo::classify::{is_minimal_sphere, is_n_manifold, is_n_sphere, minimal_sphere};
use digitopo::generators::{octahedron, torus16};
use digitopo::geometry::{
    brick_tiling_patch, cube_boundary_cover, digitize, format_q, grid_cubes_meeting, is_lcl, is_lump, merge_cover,
    merge_to_minimal, parse_q, q, qf, refined_sphere_cover, refinement_sequence, segmented_kind, torus_cover_4x4, Cover,
    Cuboid, Element, ImplicitSurface, Kind, Q,
};
use digitopo::graph::cycle;
use digitopo::homotopy::{is_contractible, reduce};
use digitopo::invariants::{invariants, trim_betti};
use digitopo::{Budget, Graph, Outcome};

fn budget() -> Budget {
    Budget::new(200)
}

fn cover(dim: usize, periods: Vec<Option<Q>>, boxes: &[(&str, Vec<(Q, Q)>)]) -> Cover {
    let elements = boxes
        .iter()
        .map(|(name, iv)| Element::new(*name, vec![Cuboid::new(iv.iter().map(|&(a, b)| [a, b]).collect()).unwrap()]))
        .collect();
    Cover::new(dim, periods, elements).unwrap()
}

fn int_cover(dim: usize, boxes: &[(&str, &[(i64, i64)])]) -> Cover {
    let elements = boxes.iter().map(|(name, iv)| Element::new(*name, vec![Cuboid::int(iv)])).collect();
    Cover::new(dim, vec![None; dim], elements).unwrap()
}

/// Elements none of whose boxes touch the outer hull of the cover.
fn inner_elements(c: &Cover) -> Vec<String> {
    let d = c.dim();
    let mut lo = vec![None::<Q>; d];
    let mut hi = vec![None::<Q>; d];
    for e in c.elements() {
        for b in &e.boxes {
            for (a, iv) in b.intervals().iter().enumerate() {
                lo[a] = Some(lo[a].map_or(iv[0], |x: Q| x.min(iv[0])));
                hi[a] = Some(hi[a].map_or(iv[1], |x: Q| x.max(iv[1])));
            }
        }
    }
    c.elements()
        .iter()
        .filter(|e| {
            e.boxes.iter().all(|b| {
                b.intervals().iter().enumerate().all(|(a, iv)| Some(iv[0]) != lo[a] && Some(iv[1]) != hi[a])
            })
        })
        .map(|e| e.name.clone())
        .collect()
}

#[test]
fn intersect_examples() {
    let c = int_cover(2, &[("a", &[(0, 1), (0, 1)]), ("b", &[(1, 2), (0, 1)]), ("c", &[(3, 4), (3, 4)])]);
    assert_eq!(c.intersect(0, 1).unwrap().dim, 1);
    assert!(c.intersect(0, 2).is_none());
    let c = int_cover(2, &[("bottom", &[(0, 1), (0, 0)]), ("right", &[(1, 1), (0, 1)])]);
    let m = c.intersect(0, 1).unwrap();
    assert_eq!(m.dim, 0);
    assert_eq!(m.boxes, vec![Cuboid::int(&[(1, 1), (0, 0)])]);
}

#[test]
fn intersect_wraps_on_periodic_axes() {
    let c = cover(1, vec![Some(q(3))], &[("x", vec![(q(0), q(1))]), ("y", vec![(q(2), q(3))])]);
    let m = c.intersect(0, 1).unwrap();
    assert_eq!(m.dim, 0);
    assert!(Cover::new(1, vec![Some(q(3))], vec![Element::new("w", vec![Cuboid::int(&[(0, 3)])])]).is_err());
}

#[test]
fn lump_examples() {
    let b = budget();
    let cube = cube_boundary_cover(2).unwrap();
    let names: Vec<String> = cube.elements().iter().map(|e| e.name.clone()).collect();
    let adjacent: Vec<&String> =
        names.iter().filter(|n| n.starts_with("F0") || n.starts_with("F1")).take(3).step_by(2).collect();
    assert!(cube.intersect(cube.index(adjacent[0]).unwrap(), cube.index(adjacent[1]).unwrap()).is_some());
    assert!(is_lump(&cube, &adjacent, &b).unwrap().is_yes());
    let four: Vec<&String> = names.iter().take(4).collect();
    assert!(is_lump(&cube, &four, &b).unwrap().is_no());
    let thick = int_cover(2, &[("a", &[(0, 2), (0, 2)]), ("b", &[(1, 3), (0, 2)])]);
    assert!(is_lump(&thick, &["a", "b"], &b).unwrap().is_no());
}

#[test]
fn lcl_examples() {
    let b = budget();
    assert!(is_lcl(&cube_boundary_cover(2).unwrap(), &b).is_yes());
    let arcs = cover(
        1,
        vec![Some(q(3))],
        &[("p", vec![(q(0), qf(3, 2))]), ("r", vec![(q(1), qf(5, 2))]), ("s", vec![(q(2), qf(7, 2))])],
    );
    let n = arcs.nerve();
    assert_eq!(n.m(), 3);
    assert!(arcs.common(&[0, 1, 2]).is_none());
    assert!(is_lcl(&arcs, &b).is_no());
    let grid = int_cover(
        2,
        &[("g00", &[(0, 1), (0, 1)]), ("g01", &[(0, 1), (1, 2)]), ("g10", &[(1, 2), (0, 1)]), ("g11", &[(1, 2), (1, 2)])],
    );
    assert!(is_lcl(&grid, &b).is_no());
}

#[test]
fn cube_covers_have_minimal_sphere_nerves() {
    let b = budget();
    for n in 1..=3 {
        let c = cube_boundary_cover(n).unwrap();
        assert_eq!(c.len(), 2 * n + 2);
        assert!(is_lcl(&c, &b).is_yes());
        assert_eq!(is_minimal_sphere(&c.nerve()), Some(n));
    }
    assert!(isomorphic(&cube_boundary_cover(1).unwrap().nerve(), &cycle(4)).unwrap());
    assert!(isomorphic(&cube_boundary_cover(2).unwrap().nerve(), &octahedron()).unwrap());
}

#[test]
fn torus_cover_nerve_is_t16() {
    let c = torus_cover_4x4();
    let g = c.nerve();
    assert_eq!((g.n(), g.m()), (16, 48));
    for v in 0..16 {
        assert!(isomorphic(&g.induced(g.neighbors(v)), &cycle(6)).unwrap());
    }
    assert!(isomorphic(&g, &torus16()).unwrap());
    assert!(is_lcl(&c, &budget()).is_yes());
    let (_, steps) = merge_to_minimal(&c, 2, &budget(), 0).unwrap();
    assert!(steps.is_empty());
}

#[test]
fn brick_patches() {
    let b = budget();
    let p = brick_tiling_patch(2, &[4, 4]).unwrap();
    assert!(is_lcl(&p, &b).is_yes());
    let g = p.nerve();
    assert!(is_contractible(&g, &b).is_yes());
    let inner = inner_elements(&p);
    assert!(!inner.is_empty());
    for name in &inner {
        let rim = g.rim(name).unwrap();
        assert!(isomorphic(&rim, &cycle(6)).unwrap(), "{name}");
    }
    let p3 = brick_tiling_patch(3, &[3, 3, 3]).unwrap();
    assert!(is_lcl(&p3, &b).is_yes());
    let g3 = p3.nerve();
    let inner = inner_elements(&p3);
    assert!(!inner.is_empty());
    for name in &inner {
        assert_eq!(is_n_sphere(&g3.rim(name).unwrap(), 2, &b).outcome(), Outcome::Yes, "{name}");
    }
}

#[test]
fn grid_cubes_meeting_a_box_have_contractible_nerves() {
    let b = budget();
    let target = Cuboid::new(vec![[qf(1, 3), qf(7, 5)], [qf(-1, 2), qf(2, 3)], [q(0), qf(5, 4)]]).unwrap();
    for h in [qf(1, 2), qf(1, 4)] {
        let c = grid_cubes_meeting(&target, h).unwrap();
        let g = c.nerve();
        let v = is_contractible(&g, &b);
        let tr = v.witness().expect("contractible");
        assert_eq!(tr.replay(&g, &b).unwrap().n(), 1);
    }
}

#[test]
fn cover_json_round_trip() {
    for c in [torus_cover_4x4(), brick_tiling_patch(2, &[3, 3]).unwrap(), refined_sphere_cover(2, 3).unwrap()] {
        let back = Cover::parse_json(&c.to_json_string()).unwrap();
        assert_eq!(back, c);
    }
    let text = r#"{"dim":1,"periods":[3],"elements":[{"name":"a","boxes":[[["0","1.5"]]]}]}"#;
    let c = Cover::parse_json(text).unwrap();
    assert_eq!(c.periods()[0], Some(q(3)));
    assert_eq!(c.elements()[0].boxes[0].intervals()[0][1], qf(3, 2));
}

#[test]
fn rational_format_round_trip() {
    for x in [q(0), q(-3), qf(1, 2), qf(-7, 8), qf(1, 3), qf(22, 7)] {
        assert_eq!(parse_q(&format_q(&x)).unwrap(), x);
    }
    assert_eq!(format_q(&qf(5, 4)), "1.25");
    assert!(parse_q("1/0").is_err());
    assert!(parse_q("abc").is_err());
}

#[test]
fn segmented_kinds() {
    let b = budget();
    let c = cube_boundary_cover(2).unwrap();
    let one = segmented_kind(&c, &["F0-"], 2, &b).unwrap();
    assert_eq!((one.kind, one.dim), (Kind::Disk, 0));
    let g = c.nerve();
    let mut star: Vec<String> = g.ball(c.elements()[0].name.as_str()).unwrap().names().to_vec();
    star.sort();
    let s = segmented_kind(&c, &star, 2, &b).unwrap();
    assert_eq!(s.kind, Kind::Disk);
    assert_eq!(s.interior, vec![c.elements()[0].name.clone()]);
    let all: Vec<String> = c.elements().iter().map(|e| e.name.clone()).collect();
    assert_eq!(segmented_kind(&c, &all, 2, &b).unwrap().kind, Kind::Sphere);
}

#[test]
fn merging_a_refined_cover() {
    let b = budget();
    let c = refined_sphere_cover(2, 3).unwrap();
    assert!(c.len() >= 14);
    let (end, steps) = merge_to_minimal(&c, 2, &b, 1).unwrap();
    assert_eq!(end.len(), 6);
    assert!(!steps.is_empty());
    for s in &steps {
        assert_eq!(s.after, s.before + 1 - s.interior.len());
        assert!(is_lcl(&s.cover, &b).is_yes());
    }
    assert!(isomorphic(&end.nerve(), &minimal_sphere(2)).unwrap());
}

#[test]
fn merge_cover_rejects_non_disks() {
    let b = budget();
    let c = cube_boundary_cover(2).unwrap();
    let all: Vec<String> = c.elements().iter().map(|e| e.name.clone()).collect();
    assert!(merge_cover(&c, &all, 2, &b).is_err());
}

#[test]
fn closed_cover_nerves_are_manifolds() {
    let b = budget();
    let closed: Vec<(Cover, usize)> = vec![
        (cube_boundary_cover(1).unwrap(), 1),
        (cube_boundary_cover(2).unwrap(), 2),
        (cube_boundary_cover(3).unwrap(), 3),
        (refined_sphere_cover(1, 3).unwrap(), 1),
        (refined_sphere_cover(2, 3).unwrap(), 2),
        (torus_cover_4x4(), 2),
    ];
    for (c, n) in &closed {
        assert!(is_n_manifold(&c.nerve(), *n, &b).is_yes());
        assert!(c.len() >= 2 * n + 2);
    }
    let open = brick_tiling_patch(2, &[4, 4]).unwrap();
    assert!(!is_n_manifold(&open.nerve(), 2, &b).is_yes());
}

#[test]
fn digitize_examples() {
    let b = budget();
    let plane = digitize(&ImplicitSurface::plane_patch(), qf(1, 2), 3).unwrap();
    assert_eq!(reduce(&plane.graph, &b).0.n(), 1);

    let sphere = digitize(&ImplicitSurface::sphere(q(1)), qf(1, 4), 3).unwrap();
    let red = reduce(&sphere.graph, &b).0;
    let inv = invariants(&red);
    assert_eq!((inv.chi, trim_betti(&inv.betti)), (2, vec![1, 0, 1]));

    let circle = digitize(&ImplicitSurface::circle(q(1)), qf(1, 4), 3).unwrap();
    let red: Graph = reduce(&circle.graph, &b).0;
    assert!(red.n() >= 4);
    assert!((0..red.n()).all(|v| red.degree(v) == 2));
    assert_eq!(is_n_sphere(&red, 1, &b).outcome(), Outcome::Yes);
}

#[test]
fn refinement_examples() {
    let b = budget();
    let s = refinement_sequence(&ImplicitSurface::sphere(q(1)), qf(1, 2), 3, 3, &b).unwrap();
    assert!(s.stable_from.is_some());
    let last = s.levels.last().unwrap();
    assert_eq!((last.chi, last.betti.clone()), (2, vec![1, 0, 1]));

    let t = refinement_sequence(&ImplicitSurface::torus(q(1), qf(1, 2)), qf(1, 4), 2, 3, &b).unwrap();
    let last = t.levels.last().unwrap();
    assert_eq!((last.chi, last.betti.clone()), (0, vec![1, 2, 1]));

    let p = refinement_sequence(&ImplicitSurface::plane_patch(), qf(1, 2), 2, 3, &b).unwrap();
    assert!(p.levels.iter().all(|l| l.chi == 1 && l.betti == vec![1]));
    assert_eq!(p.stable_from, Some(0));

    assert!(refinement_sequence(&ImplicitSurface::plane_patch(), qf(1, 2), 1, 3, &b).is_err());
    assert!(digitize(&ImplicitSurface::plane_patch(), q(0), 3).is_err());
}
