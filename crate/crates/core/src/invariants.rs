//! Clique-complex Euler characteristic and mod-2 homology.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::Graph;

/// Cliques grouped by size: `by_size[k]` holds the cliques with `k + 1` vertices,
/// each sorted, in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueComplex {
    pub by_size: Vec<Vec<Vec<usize>>>,
}

impl CliqueComplex {
    pub fn counts(&self) -> Vec<usize> {
        self.by_size.iter().map(Vec::len).collect()
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// All cliques with at most `max_size` vertices (`None` for no limit).
pub fn cliques(g: &Graph, max_size: Option<usize>) -> CliqueComplex {
    let cap = max_size.unwrap_or(usize::MAX);
    let mut by_size: Vec<Vec<Vec<usize>>> = Vec::new();
    if cap == 0 {
        return CliqueComplex { by_size };
    }
    fn grow(g: &Graph, cur: &mut Vec<usize>, cand: &[usize], cap: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        let k = cur.len() - 1;
        if out.len() <= k {
            out.push(Vec::new());
        }
        out[k].push(cur.clone());
        if cur.len() == cap {
            return;
        }
        for (idx, &w) in cand.iter().enumerate() {
            let next = intersect(&cand[idx + 1..], g.neighbors(w));
            cur.push(w);
            grow(g, cur, &next, cap, out);
            cur.pop();
        }
    }
    for v in 0..g.n() {
        let higher: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
        let mut cur = vec![v];
        grow(g, &mut cur, &higher, cap, &mut by_size);
    }
    for layer in &mut by_size {
        layer.sort();
    }
    CliqueComplex { by_size }
}

/// Maximal cliques by Bron–Kerbosch with pivoting, each sorted.
pub fn maximal_cliques(g: &Graph) -> Vec<Vec<usize>> {
    fn bk(g: &Graph, r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if p.is_empty() {
            if x.is_empty() {
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return;
        }
        let pivot = p
            .iter()
            .chain(x.iter())
            .copied()
            .max_by_key(|&u| intersect(&p, g.neighbors(u)).len())
            .expect("p non-empty");
        let skip = g.neighbors(pivot);
        let mut p = p;
        let mut x = x;
        let branch: Vec<usize> = p.iter().copied().filter(|v| skip.binary_search(v).is_err()).collect();
        for v in branch {
            let nv = g.neighbors(v);
            r.push(v);
            bk(g, r, intersect(&p, nv), intersect(&x, nv), out);
            r.pop();
            p.retain(|&w| w != v);
            let pos = x.binary_search(&v).unwrap_or_else(|e| e);
            x.insert(pos, v);
        }
    }
    let mut out = Vec::new();
    let all: Vec<usize> = (0..g.n()).collect();
    bk(g, &mut Vec::new(), all, Vec::new(), &mut out);
    out.sort();
    out
}

/// Alternating count of cliques: vertices minus edges plus triangles ...
pub fn euler_characteristic(g: &Graph) -> i64 {
    euler_from_counts(&cliques(g, None).counts())
}

pub fn euler_from_counts(counts: &[usize]) -> i64 {
    counts.iter().enumerate().map(|(k, &c)| if k % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

/// Rank over the two-element field of the rows given as bitsets.
pub fn gf2_rank(rows: Vec<Vec<u64>>) -> usize {
    let mut pivots: HashMap<usize, Vec<u64>> = HashMap::new();
    let mut rank = 0;
    for mut row in rows {
        loop {
            let Some(lead) = lowest_bit(&row) else { break };
            match pivots.get(&lead) {
                Some(p) => {
                    for (a, b) in row.iter_mut().zip(p.iter()) {
                        *a ^= *b;
                    }
                }
                None => {
                    pivots.insert(lead, row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

fn lowest_bit(row: &[u64]) -> Option<usize> {
    row.iter().enumerate().find(|(_, w)| **w != 0).map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Betti {
    pub betti: Vec<usize>,
    /// Simplices exist above the requested dimension.
    pub truncated: bool,
}

/// Mod-2 Betti numbers of the clique complex up to dimension `max_dim`
/// (`None`: up to the top dimension).
pub fn betti_mod2(g: &Graph, max_dim: Option<usize>) -> Betti {
    let cap = max_dim.map(|d| d + 2);
    let cx = cliques(g, cap);
    betti_of_complex(&cx, max_dim)
}

pub fn betti_of_complex(cx: &CliqueComplex, max_dim: Option<usize>) -> Betti {
    let top = cx.by_size.len();
    if top == 0 {
        return Betti { betti: Vec::new(), truncated: false };
    }
    let dims = match max_dim {
        Some(d) => (d + 1).min(top),
        None => top,
    };
    let truncated = max_dim.is_some_and(|d| top > d + 1);
    // rank[k] = rank of the boundary map from k-simplices to (k-1)-simplices
    let mut rank = vec![0usize; dims + 1];
    for k in 1..=dims {
        if k >= top {
            break;
        }
        let faces = &cx.by_size[k - 1];
        let idx: HashMap<&[usize], usize> = faces.iter().enumerate().map(|(i, f)| (f.as_slice(), i)).collect();
        let words = faces.len().div_ceil(64);
        let rows: Vec<Vec<u64>> = cx.by_size[k]
            .iter()
            .map(|s| {
                let mut row = vec![0u64; words];
                let mut face = Vec::with_capacity(s.len() - 1);
                for skip in 0..s.len() {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|(i, _)| *i != skip).map(|(_, &v)| v));
                    let j = idx[face.as_slice()];
                    row[j / 64] |= 1 << (j % 64);
                }
                row
            })
            .collect();
        rank[k] = gf2_rank(rows);
    }
    let betti = (0..dims).map(|k| cx.by_size[k].len() - rank[k] - rank[k + 1]).collect();
    Betti { betti, truncated }
}

/// Betti numbers with b0 lowered by one; all zero for an acyclic complex.
pub fn reduced(betti: &[usize]) -> Vec<usize> {
    let mut r = betti.to_vec();
    if let Some(b0) = r.first_mut() {
        *b0 = b0.saturating_sub(1);
    }
    r
}

/// Betti numbers without trailing zeros, keeping b0.
pub fn trim_betti(betti: &[usize]) -> Vec<usize> {
    let mut b = betti.to_vec();
    while b.len() > 1 && b.last() == Some(&0) {
        b.pop();
    }
    b
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub chi: i64,
    pub betti: Vec<usize>,
    pub clique_counts: Vec<usize>,
}

pub fn invariants(g: &Graph) -> Invariants {
    let cx = cliques(g, None);
    let counts = cx.counts();
    Invariants { chi: euler_from_counts(&counts), betti: betti_of_complex(&cx, None).betti, clique_counts: counts }
}

/// Invariants agree with a point: connected, χ = 1, no reduced homology.
pub fn is_acyclic(inv: &Invariants) -> bool {
    inv.chi == 1 && reduced(&inv.betti).iter().all(|&b| b == 0)
}
