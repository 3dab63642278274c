use digitopo::canon::{canonical_key, is_isomorphic, isomorphic};
use digitopo::classify::minimal_sphere;
use digitopo::generators::{minimal_disk, octahedron};
use digitopo::graph::{complete, cone, connected_sum, cycle, intersection_graph, join, path};
use digitopo::{Graph, Outcome};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c4() -> Graph {
    Graph::from_edges("C4", &["a", "b", "c", "d"], &[("a", "c"), ("c", "b"), ("b", "d"), ("d", "a")]).unwrap()
}

fn s0(a: &str, b: &str) -> Graph {
    Graph::from_edges::<&str>("S0", &[a, b], &[]).unwrap()
}

fn point(v: &str) -> Graph {
    Graph::from_edges::<&str>("pt", &[v], &[]).unwrap()
}

fn iso(g: &Graph, h: &Graph) -> bool {
    isomorphic(g, h).unwrap()
}

#[test]
fn rim_examples() {
    let r = c4().rim("a").unwrap();
    assert_eq!(r.n(), 2);
    assert_eq!(r.m(), 0);
    assert!(r.contains("c") && r.contains("d"));
    assert!(iso(&complete(4).rim("k0").unwrap(), &complete(3)));
    let oct = octahedron();
    for v in oct.names() {
        assert!(iso(&oct.rim(v).unwrap(), &cycle(4)));
    }
    assert!(c4().rim("z").is_err());
}

#[test]
fn ball_examples() {
    let b = point("v").ball("v").unwrap();
    assert_eq!((b.n(), b.m()), (1, 0));
    let b = c4().ball("a").unwrap();
    assert_eq!((b.n(), b.m()), (3, 2));
    assert!(!b.adjacent_names("c", "d").unwrap());
    let oct = octahedron();
    let b = oct.ball(oct.vname(0)).unwrap();
    assert!(iso(&b, &cone("hub", &cycle(4))));
}

#[test]
fn joint_rim_examples() {
    let oct = octahedron();
    let (u, v) = oct.edges().next().unwrap();
    let jr = oct.joint_rim(&[oct.vname(u), oct.vname(v)]).unwrap();
    assert_eq!((jr.n(), jr.m()), (2, 0));
    let jr = c4().joint_rim(&["a", "b"]).unwrap();
    assert_eq!(jr.names(), &["c".to_string(), "d".to_string()]);
    assert_eq!(jr.m(), 0);
    let jr = complete(4).joint_rim(&["k0", "k1"]).unwrap();
    assert_eq!((jr.n(), jr.m()), (2, 1));
    assert!(c4().joint_rim(&[] as &[&str]).is_err());
}

#[test]
fn join_examples() {
    assert!(iso(&join(&s0("a", "b"), &s0("c", "d")), &cycle(4)));
    let g = cycle(5);
    let c = join(&point("v"), &g);
    assert_eq!(c.n(), 6);
    assert_eq!(c.degree(c.id("v").unwrap()), 5);
    assert!(iso(&c, &cone("w", &g)));
    let o = join(&join(&s0("a", "b"), &s0("c", "d")), &s0("e", "f"));
    assert_eq!((o.n(), o.m()), (6, 12));
    for v in 0..6 {
        assert_eq!(o.degree(v), 4);
    }
}

#[test]
fn join_renames_clashes_deterministically() {
    let j1 = join(&s0("a", "b"), &s0("a", "b"));
    let j2 = join(&s0("a", "b"), &s0("a", "b"));
    assert_eq!(j1, j2);
    assert_eq!(j1.n(), 4);
}

#[test]
fn connected_sum_examples() {
    let p = Graph::from_edges("P", &["a", "b"], &[("a", "b")]).unwrap();
    let pairs = vec![("a".to_string(), "a".to_string()), ("b".to_string(), "b".to_string())];
    let g = connected_sum(&p, &p, &pairs).unwrap();
    assert_eq!((g.n(), g.m()), (2, 1));

    let d1 = minimal_disk(2);
    let d2 = d1.relabel(|s| if s == "x" { "y".into() } else { s.into() }).unwrap();
    let boundary: Vec<(String, String)> =
        d1.names().iter().filter(|s| *s != "x").map(|s| (s.clone(), s.clone())).collect();
    let s = connected_sum(&d1, &d2, &boundary).unwrap();
    assert!(iso(&s, &octahedron()));

    assert!(connected_sum(&p, &p, &[]).is_err());
}

#[test]
fn connected_sum_rejects_non_isomorphic_gluing() {
    let p = Graph::from_edges("P", &["a", "b"], &[("a", "b")]).unwrap();
    let q = s0("a", "b");
    let pairs = vec![("a".to_string(), "a".to_string()), ("b".to_string(), "b".to_string())];
    assert!(connected_sum(&p, &q, &pairs).is_err());
}

#[test]
fn isomorphism_examples() {
    assert_eq!(is_isomorphic(&cycle(4), &complete(4)).outcome(), Outcome::No);
    let o = join(&join(&s0("a", "b"), &s0("c", "d")), &s0("e", "f"));
    let v = is_isomorphic(&octahedron(), &o);
    let map = v.witness().expect("isomorphic");
    let oct = octahedron();
    for (x, y) in map {
        for (x2, y2) in map {
            assert_eq!(oct.adjacent_names(x, x2).unwrap(), o.adjacent_names(y, y2).unwrap());
        }
    }
    let mut edges = Vec::new();
    for i in 0..8 {
        for j in i + 1..8 {
            if i / 2 != j / 2 {
                edges.push((i, j));
            }
        }
    }
    let k2222 = Graph::from_index_edges("K2222", 8, &edges).unwrap();
    assert!(is_isomorphic(&minimal_sphere(3), &k2222).is_yes());
}

#[test]
fn isomorphism_over_cap_is_unknown() {
    assert_eq!(is_isomorphic(&complete(70), &complete(70)).outcome(), Outcome::Unknown);
}

#[test]
fn intersection_graph_examples() {
    let fam = vec![("i0".to_string(), (0.0, 1.0)), ("i1".to_string(), (0.5, 1.5)), ("i2".to_string(), (1.2, 2.0))];
    let g = intersection_graph(&fam, |a: &(f64, f64), b: &(f64, f64)| a.0 <= b.1 && b.0 <= a.1).unwrap();
    assert!(iso(&g, &path(3)));

    let mut facets = Vec::new();
    for axis in 0..3 {
        for side in [0, 1] {
            facets.push((format!("F{axis}{side}"), (axis, side)));
        }
    }
    let g = intersection_graph(&facets, |a: &(usize, i32), b: &(usize, i32)| a.0 != b.0).unwrap();
    assert!(iso(&g, &octahedron()));

    let fam = vec![("x".to_string(), 0), ("y".to_string(), 1), ("z".to_string(), 2)];
    let g = intersection_graph(&fam, |a: &i32, b: &i32| a == b).unwrap();
    assert_eq!(g.m(), 0);
}

#[test]
fn canonical_key_examples() {
    let c = c4();
    let r = c.relabel(|s| format!("{s}x")).unwrap();
    assert_eq!(canonical_key(&c).unwrap(), canonical_key(&r).unwrap());
    assert_ne!(canonical_key(&cycle(4)).unwrap(), canonical_key(&path(4)).unwrap());
    let oct = octahedron();
    let k = canonical_key(&oct).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let mut perm: Vec<usize> = (0..oct.n()).collect();
        perm.shuffle(&mut rng);
        assert_eq!(canonical_key(&oct.permuted(&perm)).unwrap(), k);
    }
    assert!(canonical_key(&complete(65)).is_err());
}

#[test]
fn json_round_trip() {
    let g = octahedron();
    let back = Graph::parse_json(&g.to_json_string()).unwrap();
    assert_eq!(back, g);
}

#[test]
fn edge_list_round_trip() {
    let g = c4();
    let back = Graph::parse_edge_list("C4", &g.to_edge_list()).unwrap();
    assert!(iso(&back, &g));
    assert_eq!(back.edge_names().len(), 4);
    let commented = Graph::parse_edge_list("t", "# square\na b\nb c\n\nc d # last\nd a\n").unwrap();
    assert!(iso(&commented, &cycle(4)));
}

#[test]
fn json_reader_rejects_violations() {
    let self_loop = r#"{"name":"x","vertices":["a"],"edges":[["a","a"]]}"#;
    let duplicate = r#"{"name":"x","vertices":["a","b"],"edges":[["a","b"],["b","a"]]}"#;
    let unknown = r#"{"name":"x","vertices":["a"],"edges":[["a","b"]]}"#;
    for s in [self_loop, duplicate, unknown, "{", "[]"] {
        assert!(Graph::parse_json(s).is_err(), "{s}");
    }
}
