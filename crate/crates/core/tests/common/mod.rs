//! Brute-force oracles and fixtures shared by the integration tests. The
//! oracles do not call the library's search or linear algebra.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use digitopo::canon::canonical_key;
use digitopo::dtransform::split_vertex;
use digitopo::generators::{octahedron, subdivided_sphere};
use digitopo::{Budget, Graph};

/// Adjacency bitmasks over at most 8 vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Tiny {
    pub n: usize,
    pub adj: Vec<u32>,
}

impl Tiny {
    pub fn from_graph(g: &Graph) -> Tiny {
        let mut adj = vec![0u32; g.n()];
        for (u, v) in g.edges() {
            adj[u] |= 1 << v;
            adj[v] |= 1 << u;
        }
        Tiny { n: g.n(), adj }
    }

    pub fn to_graph(&self) -> Graph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in u + 1..self.n {
                if self.adj[u] >> v & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_index_edges("tiny", self.n, &edges).unwrap()
    }

    fn sub(&self, keep: &[usize]) -> Tiny {
        let mut adj = vec![0u32; keep.len()];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                if self.adj[a] >> b & 1 == 1 {
                    adj[i] |= 1 << j;
                }
            }
        }
        Tiny { n: keep.len(), adj }
    }

    fn members(mask: u32, n: usize) -> Vec<usize> {
        (0..n).filter(|&i| mask >> i & 1 == 1).collect()
    }

    fn common(&self, u: usize, v: usize) -> Tiny {
        self.sub(&Self::members(self.adj[u] & self.adj[v], self.n))
    }

    /// Smallest upper-triangle bit string over all vertex orders.
    pub fn brute_key(&self) -> (usize, u64) {
        let mut perm: Vec<usize> = (0..self.n).collect();
        let mut best = u64::MAX;
        permute(&mut perm, 0, &mut |p| {
            let mut bits = 0u64;
            let mut k = 0;
            for i in 0..self.n {
                for j in i + 1..self.n {
                    if self.adj[p[i]] >> p[j] & 1 == 1 {
                        bits |= 1 << k;
                    }
                    k += 1;
                }
            }
            best = best.min(bits);
        });
        (self.n, best)
    }
}

fn permute(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permute(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Contractibility by breadth-first search over sequences of the four
/// moves, never exceeding the start's vertex count and at most `depth`
/// moves deep. Move legality recurses on strictly smaller graphs.
pub struct MoveOracle {
    depth: usize,
    memo: HashMap<(usize, u64), bool>,
}

impl MoveOracle {
    pub fn new(depth: usize) -> MoveOracle {
        MoveOracle { depth, memo: HashMap::new() }
    }

    pub fn contractible(&mut self, g: &Tiny) -> bool {
        if g.n == 0 {
            return false;
        }
        if g.n == 1 {
            return true;
        }
        let key = g.brute_key();
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        let cap = g.n;
        let mut seen: HashSet<(usize, u64)> = HashSet::from([key]);
        let mut queue = VecDeque::from([(g.clone(), 0usize)]);
        let mut found = false;
        'bfs: while let Some((s, d)) = queue.pop_front() {
            if d == self.depth {
                continue;
            }
            for next in self.successors(&s, cap) {
                if next.n == 1 {
                    found = true;
                    break 'bfs;
                }
                if seen.insert(next.brute_key()) {
                    queue.push_back((next, d + 1));
                }
            }
        }
        self.memo.insert(key, found);
        found
    }

    fn successors(&mut self, s: &Tiny, cap: usize) -> Vec<Tiny> {
        let mut out = Vec::new();
        let n = s.n;
        for v in 0..n {
            let rim = s.sub(&Tiny::members(s.adj[v], n));
            if self.contractible(&rim) {
                let keep: Vec<usize> = (0..n).filter(|&x| x != v).collect();
                out.push(s.sub(&keep));
            }
        }
        if n < cap {
            for mask in 1u32..(1 << n) {
                let att = s.sub(&Tiny::members(mask, n));
                if self.contractible(&att) {
                    let mut adj = s.adj.clone();
                    for (i, a) in adj.iter_mut().enumerate() {
                        if mask >> i & 1 == 1 {
                            *a |= 1 << n;
                        }
                    }
                    adj.push(mask);
                    out.push(Tiny { n: n + 1, adj });
                }
            }
        }
        for u in 0..n {
            for v in u + 1..n {
                let jr = s.common(u, v);
                if self.contractible(&jr) {
                    let mut adj = s.adj.clone();
                    adj[u] ^= 1 << v;
                    adj[v] ^= 1 << u;
                    out.push(Tiny { n, adj });
                }
            }
        }
        out
    }
}

/// A digital 1-sphere by definition: a connected cycle of length at least 4
/// with every point of degree two, so induced and chordless.
pub fn is_chordless_cycle(g: &Graph) -> bool {
    g.n() >= 4 && g.is_connected() && (0..g.n()).all(|v| g.degree(v) == 2)
}

/// Every graph on `n` vertices up to isomorphism, by adding one vertex to
/// each graph on `n - 1` vertices in every possible way.
pub fn all_graphs(max_n: usize) -> Vec<Vec<Graph>> {
    let mut levels: Vec<Vec<Graph>> = vec![vec![Graph::from_index_edges("g", 1, &[]).unwrap()]];
    for n in 2..=max_n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &levels[n - 2] {
            let t = Tiny::from_graph(g);
            for mask in 0u32..(1 << (n - 1)) {
                let mut adj = t.adj.clone();
                for (i, a) in adj.iter_mut().enumerate() {
                    if mask >> i & 1 == 1 {
                        *a |= 1 << (n - 1);
                    }
                }
                adj.push(mask);
                let h = Tiny { n, adj }.to_graph();
                if seen.insert(canonical_key(&h).unwrap()) {
                    next.push(h);
                }
            }
        }
        levels.push(next);
    }
    levels
}

/// Rank over the 2-element field by counting the span: the span of r
/// independent rows has 2^r members.
pub fn span_rank(rows: &[u64]) -> usize {
    let mut span: HashSet<u64> = HashSet::from([0]);
    for &r in rows {
        let more: Vec<u64> = span.iter().map(|x| x ^ r).collect();
        span.extend(more);
    }
    span.len().trailing_zeros() as usize
}

/// Cliques by checking every vertex subset; only for small graphs.
pub fn brute_cliques(g: &Graph) -> Vec<Vec<Vec<usize>>> {
    let n = g.n();
    assert!(n <= 20);
    let mut by_size: Vec<Vec<Vec<usize>>> = Vec::new();
    for mask in 1u32..(1 << n) {
        let vs: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let clique = vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| g.adjacent(a, b)));
        if clique {
            let k = vs.len();
            if by_size.len() < k {
                by_size.resize(k, Vec::new());
            }
            by_size[k - 1].push(vs);
        }
    }
    by_size
}

/// Rank over the 2-element field by row reduction of a dense 0/1 matrix.
pub fn dense_rank(mut m: Vec<Vec<u8>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] == 1) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] == 1 {
                let pivot = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(pivot) {
                    *x ^= y;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Euler characteristic and mod-2 Betti numbers of the clique complex from
/// brute-force cliques and dense boundary matrices.
pub fn brute_invariants(g: &Graph) -> (i64, Vec<usize>) {
    let cx = brute_cliques(g);
    let chi = cx.iter().enumerate().map(|(k, s)| if k % 2 == 0 { s.len() as i64 } else { -(s.len() as i64) }).sum();
    let mut rank = vec![0usize; cx.len() + 1];
    for k in 1..cx.len() {
        let index: HashMap<&Vec<usize>, usize> = cx[k - 1].iter().enumerate().map(|(i, f)| (f, i)).collect();
        let rows: Vec<Vec<u8>> = cx[k]
            .iter()
            .map(|s| {
                let mut row = vec![0u8; cx[k - 1].len()];
                for skip in 0..s.len() {
                    let face: Vec<usize> = s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v).collect();
                    row[index[&face]] = 1;
                }
                row
            })
            .collect();
        rank[k] = dense_rank(rows);
    }
    let betti = (0..cx.len()).map(|k| cx[k].len() - rank[k] - rank[k + 1]).collect();
    (chi, betti)
}

/// Vertex names of a cycle graph in walking order.
pub fn cycle_order(c: &Graph) -> Vec<String> {
    let mut order = vec![0usize];
    while order.len() < c.n() {
        let last = *order.last().unwrap();
        let next = c.neighbors(last).iter().copied().find(|x| !order.contains(x)).unwrap();
        order.push(next);
    }
    c.names_of(&order)
}

/// Pairs `b0..b3` with the square rim of `v`, in cycle order.
pub fn square_map(g: &Graph, v: &str) -> Vec<(String, String)> {
    let rim = g.rim(v).unwrap();
    assert_eq!(rim.n(), 4);
    cycle_order(&rim).into_iter().enumerate().map(|(i, r)| (format!("b{i}"), r)).collect()
}

/// 2-disk bounded by the square b0-b1-b2-b3 with two adjacent interior points.
pub fn two_point_disk() -> Graph {
    let e = [
        ("b0", "b1"),
        ("b1", "b2"),
        ("b2", "b3"),
        ("b3", "b0"),
        ("x", "y"),
        ("x", "b0"),
        ("x", "b1"),
        ("x", "b2"),
        ("y", "b2"),
        ("y", "b3"),
        ("y", "b0"),
    ];
    Graph::from_edges("D", &["b0", "b1", "b2", "b3", "x", "y"], &e).unwrap()
}

/// A 10-point 2-sphere minus a degree-4 point: a 2-disk with a square
/// boundary b0..b3 and five interior points.
pub fn five_point_disk() -> Graph {
    for seed in 0..200 {
        let s = subdivided_sphere(2, 4, seed);
        let Some(w) = (0..s.n()).find(|&w| s.degree(w) == 4) else { continue };
        let map = square_map(&s, s.vname(w));
        let d = s.without_vertex(w);
        return d
            .relabel(|x| map.iter().find(|(_, r)| r == x).map(|(b, _)| b.clone()).unwrap_or_else(|| format!("i{x}")))
            .unwrap();
    }
    panic!("no degree-4 point in the seeds tried");
}

/// The octahedron with its first point split into the interior of `disk`.
pub fn split_octahedron(disk: &Graph) -> Graph {
    let oct = octahedron();
    let v = oct.vname(0).to_string();
    let (g, _) = split_vertex(&oct, &v, disk, &square_map(&oct, &v), 2, &Budget::new(200)).unwrap();
    g
}
