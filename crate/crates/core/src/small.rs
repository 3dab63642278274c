//! Bitmask graphs on at most 64 vertices, used by the recursive searches.

use crate::graph::Graph;

pub const CAP: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Small {
    pub n: usize,
    pub adj: Vec<u64>,
}

#[inline]
pub fn bit(i: usize) -> u64 {
    1u64 << i
}

/// Iterates the set bits of `m` in increasing order.
pub fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

#[inline]
pub fn full(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Small {
    pub fn from_graph(g: &Graph) -> Option<Small> {
        if g.n() > CAP {
            return None;
        }
        let adj = (0..g.n()).map(|i| g.neighbors(i).iter().fold(0u64, |m, &j| m | bit(j))).collect();
        Some(Small { n: g.n(), adj })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Small {
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Small { n, adj }
    }

    pub fn to_graph(&self, name: &str) -> Graph {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        Graph::from_index_edges(name, self.n, &edges).expect("valid small graph")
    }

    pub fn all(&self) -> u64 {
        full(self.n)
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(|a| a.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| bits(self.adj[u] & !full(u + 1)).map(move |v| (u, v)))
    }

    /// Induced subgraph on `mask`, renumbered in increasing order.
    pub fn sub(&self, mask: u64) -> Small {
        let mut pos = [0u8; 64];
        let mut k = 0usize;
        for i in bits(mask) {
            pos[i] = k as u8;
            k += 1;
        }
        let mut adj = Vec::with_capacity(k);
        for i in bits(mask) {
            let mut row = 0u64;
            for j in bits(self.adj[i] & mask) {
                row |= bit(pos[j] as usize);
            }
            adj.push(row);
        }
        Small { n: k, adj }
    }

    pub fn connected_within(&self, mask: u64) -> bool {
        if mask == 0 {
            return true;
        }
        let mut seen = mask & mask.wrapping_neg();
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in bits(frontier) {
                next |= self.adj[v];
            }
            next &= mask & !seen;
            seen |= next;
            frontier = next;
        }
        seen == mask
    }

    pub fn is_connected(&self) -> bool {
        self.connected_within(self.all())
    }

    /// Components of the subgraph induced on `mask`.
    pub fn components_within(&self, mask: u64) -> Vec<u64> {
        let mut rest = mask;
        let mut out = Vec::new();
        while rest != 0 {
            let mut seen = rest & rest.wrapping_neg();
            let mut frontier = seen;
            while frontier != 0 {
                let mut next = 0u64;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                next &= rest & !seen;
                seen |= next;
                frontier = next;
            }
            out.push(seen);
            rest &= !seen;
        }
        out
    }

    /// A vertex of `mask` adjacent to every other vertex of `mask`.
    pub fn cone_apex(&self, mask: u64) -> Option<usize> {
        bits(mask).find(|&v| (self.adj[v] | bit(v)) & mask == mask)
    }
}
