//! Corpus graphs: the 16-point torus, randomly subdivided spheres and a few
//! small named spaces.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::classify::minimal_sphere;
use crate::graph::{cone, cycle, join, Graph, GraphBuilder};

/// Triangulated 4x4 torus: `(i, j)` mod 4, adjacent for differences
/// (±1,0), (0,±1), (1,1), (-1,-1). Vertex `(i, j)` is named `t<i><j>`.
pub fn torus16() -> Graph {
    let mut b = GraphBuilder::new("T16");
    for i in 0..4 {
        for j in 0..4 {
            b.vertex(format!("t{i}{j}")).expect("fresh");
        }
    }
    let id = |i: usize, j: usize| (i % 4) * 4 + (j % 4);
    for i in 0..4 {
        for j in 0..4 {
            for (di, dj) in [(1, 0), (0, 1), (1, 1)] {
                b.edge_ids(id(i, j), id(i + di, j + dj)).expect("48 distinct edges");
            }
        }
    }
    b.build()
}

/// Edge subdivision: a new point `s` adjacent to both ends of `u-v` and to
/// their common neighbours; the edge itself is removed.
pub fn subdivide_edge(g: &Graph, u: usize, v: usize, s: &str) -> Graph {
    let mut nb = g.joint_rim_ids(&[u, v]);
    nb.push(u);
    nb.push(v);
    g.without_edge(u, v).with_vertex(s, &nb).expect("fresh name")
}

/// Minimal n-sphere refined by `steps` seeded random edge subdivisions.
pub fn subdivided_sphere(n: usize, steps: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = minimal_sphere(n);
    for _ in 0..steps {
        let edges: Vec<(usize, usize)> = g.edges().collect();
        let (u, v) = edges[rng.gen_range(0..edges.len())];
        let s = g.fresh_name("s");
        g = subdivide_edge(&g, u, v, &s);
    }
    g.with_name(format!("S{n}sub{steps}s{seed}"))
}

/// Octahedron: the minimal 2-sphere.
pub fn octahedron() -> Graph {
    minimal_sphere(2)
}

/// Cone over the minimal (n-1)-sphere: the minimal n-disk.
pub fn minimal_disk(n: usize) -> Graph {
    cone("x", &minimal_sphere(n - 1))
}

pub fn wheel(k: usize) -> Graph {
    cone("hub", &cycle(k))
}

/// Two-point suspension of `g`.
pub fn suspension(g: &Graph) -> Graph {
    let s0 = Graph::from_edges::<&str>("S0", &["north", "south"], &[]).expect("two points");
    join(&s0, g)
}
