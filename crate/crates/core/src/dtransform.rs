//! Disk transformations: merging a disk interior into one point, splitting a
//! point into a disk interior, and compression by repeated merges.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{disk_in, is_minimal_sphere, is_n_disk, DiskReport, DiskSpec};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::homotopy::{reduce, Move, Trace};
use crate::invariants::{invariants, trim_betti};
use crate::small::Small;
use crate::verdict::{Budget, Certificate, Verdict};

/// Replaces the interior of `d` by one point adjacent to exactly its
/// boundary. The survivor is `survivor` (a fresh name or an interior point)
/// or, when `None`, the first free `m<k>`.
pub fn merge_disk(g: &Graph, d: &DiskSpec, survivor: Option<&str>) -> Result<Graph> {
    if d.host() != g {
        return Err(Error::Uncertified("disk was certified in a different graph".into()));
    }
    if d.interior().is_empty() {
        return Err(Error::Uncertified("disk has no interior".into()));
    }
    let name = match survivor {
        Some(s) if g.contains(s) && !d.interior().iter().any(|x| x == s) => {
            return Err(Error::Uncertified(format!("survivor `{s}` is neither fresh nor interior")));
        }
        Some(s) => s.to_string(),
        None => g.fresh_name("m"),
    };
    let int = g.ids(d.interior())?;
    let h = g.without(&int);
    let bd = h.ids(d.boundary())?;
    h.with_vertex(&name, &bd)
}

/// The merge as contractible moves: glue the survivor onto the whole disk,
/// then delete the interior points, each of whose rims is then a cone.
pub fn merge_moves(d: &DiskSpec, survivor: &str) -> Vec<Move> {
    let mut moves = vec![Move::GluePoint { vertex: survivor.to_string(), attachment: d.vertices().to_vec() }];
    moves.extend(d.interior().iter().map(|x| Move::DeletePoint { vertex: x.clone() }));
    moves
}

/// Merge with a fresh `m<k>` survivor, returning the result and its moves.
pub fn merge_with_trace(g: &Graph, d: &DiskSpec) -> Result<(Graph, Trace)> {
    let name = g.fresh_name("m");
    let h = merge_disk(g, d, Some(&name))?;
    let moves = merge_moves(d, &name);
    Ok((h.clone(), Trace::sealed(moves, g, &h)))
}

/// Replaces `v` by the interior of the disk `d`, gluing the boundary of `d`
/// onto the rim of `v` along `iso` (pairs of boundary name, rim name).
/// Interior names that clash with `g` get `'` suffixes.
pub fn split_vertex(
    g: &Graph,
    v: &str,
    d: &Graph,
    iso: &[(String, String)],
    n: usize,
    budget: &Budget,
) -> Result<(Graph, Trace)> {
    let vi = g.id_of(v)?;
    let spec = match is_n_disk(d, n, budget) {
        Verdict::Yes(s) => s,
        _ => return Err(Error::Uncertified(format!("inserted graph is not a certified {n}-disk"))),
    };
    let bd: BTreeSet<&str> = spec.boundary().iter().map(String::as_str).collect();
    let rim: BTreeSet<&str> = g.neighbors(vi).iter().map(|&i| g.vname(i)).collect();
    let dom: BTreeSet<&str> = iso.iter().map(|(a, _)| a.as_str()).collect();
    let img: BTreeSet<&str> = iso.iter().map(|(_, b)| b.as_str()).collect();
    if dom != bd || img != rim || dom.len() != iso.len() || img.len() != iso.len() {
        return Err(Error::InvalidIsomorphism("map must pair the disk boundary with the rim".into()));
    }
    for (a1, b1) in iso {
        for (a2, b2) in iso {
            if a1 < a2 && d.adjacent_names(a1, a2)? != g.adjacent_names(b1, b2)? {
                return Err(Error::InvalidIsomorphism(format!("{a1}-{a2} and {b1}-{b2} disagree")));
            }
        }
    }
    // interior names in the result
    let mut used: BTreeSet<String> = g.names().iter().filter(|s| s.as_str() != v).cloned().collect();
    let mut rename = std::collections::HashMap::new();
    for x in spec.interior() {
        let mut cand = x.clone();
        while used.contains(&cand) || cand == v {
            cand.push('\'');
        }
        used.insert(cand.clone());
        rename.insert(x.clone(), cand);
    }
    for (a, b) in iso {
        rename.insert(a.clone(), b.clone());
    }
    // interior points enter in the order the trace glues them
    let mut h = g.without_vertex(vi);
    for x in spec.interior().iter().rev() {
        h = h.with_vertex(&rename[x], &[])?;
    }
    for (a, b) in d.edges() {
        let (na, nb) = (&rename[d.vname(a)], &rename[d.vname(b)]);
        let (ia, ib) = (h.id_of(na)?, h.id_of(nb)?);
        if !h.adjacent(ia, ib) {
            h = h.with_edge(ia, ib);
        }
    }
    // inverse of the merge that would undo this split
    let int_new: Vec<String> = spec.interior().iter().map(|x| rename[x].clone()).collect();
    let mut moves = Vec::new();
    for k in (0..int_new.len()).rev() {
        let x = &int_new[k];
        let earlier: BTreeSet<&str> = int_new[..k].iter().map(String::as_str).collect();
        let xi = h.id_of(x)?;
        let mut att: Vec<String> =
            h.neighbors(xi).iter().map(|&i| h.vname(i).to_string()).filter(|s| !earlier.contains(s.as_str())).collect();
        att.push(v.to_string());
        moves.push(Move::GluePoint { vertex: x.clone(), attachment: att });
    }
    moves.push(Move::DeletePoint { vertex: v.to_string() });
    let tr = Trace::sealed(moves, g, &h);
    Ok((h, tr))
}

/// Looks for an n-disk with at least two interior points among unions of
/// balls: first every adjacent pair (in seeded order), then seeded random
/// growth of ball unions.
pub fn find_disk(g: &Graph, n: usize, budget: &Budget, seed: u64) -> Option<DiskSpec> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let all = g.n();
    let try_set = |set: &BTreeSet<usize>| -> Option<DiskSpec> {
        if set.len() >= all {
            return None;
        }
        let ids: Vec<usize> = set.iter().copied().collect();
        match disk_in(g, &ids, n, budget) {
            Verdict::Yes(d) if d.interior().len() >= 2 => Some(d),
            _ => None,
        }
    };
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    edges.shuffle(&mut rng);
    for (u, v) in edges {
        let set: BTreeSet<usize> = g.ball_ids(u).into_iter().chain(g.ball_ids(v)).collect();
        if let Some(d) = try_set(&set) {
            return Some(d);
        }
    }
    if all == 0 {
        return None;
    }
    for _ in 0..budget.limit() {
        budget.charge(1);
        let s = rng.gen_range(0..all);
        let mut core: BTreeSet<usize> = BTreeSet::from([s]);
        let mut set: BTreeSet<usize> = g.ball_ids(s).into_iter().collect();
        loop {
            let frontier: Vec<usize> =
                core.iter().flat_map(|&c| g.neighbors(c).iter().copied()).filter(|w| !core.contains(w)).collect();
            if frontier.is_empty() {
                break;
            }
            let w = frontier[rng.gen_range(0..frontier.len())];
            core.insert(w);
            set.extend(g.ball_ids(w));
            if set.len() >= all {
                break;
            }
            if core.len() >= 3 {
                if let Some(d) = try_set(&set) {
                    return Some(d);
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MergeStep {
    pub disk: DiskReport,
    pub survivor: String,
    pub before: usize,
    pub after: usize,
}

#[derive(Clone, Debug)]
pub struct Compression {
    pub graph: Graph,
    pub steps: Vec<MergeStep>,
    /// Every merge expanded into contractible moves.
    pub trace: Trace,
}

/// Merges disks found by `find_disk` until none is found.
pub fn compress(g: &Graph, n: usize, budget: &Budget, seed: u64) -> Compression {
    let mut cur = g.clone();
    let mut steps = Vec::new();
    let mut moves = Vec::new();
    let mut round = 0u64;
    while is_minimal_sphere(&cur) != Some(n) {
        let s = seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(round);
        let Some(d) = find_disk(&cur, n, budget, s) else { break };
        let (next, tr) = merge_with_trace(&cur, &d).expect("disk certified in the current graph");
        let survivor = match tr.moves.first() {
            Some(Move::GluePoint { vertex, .. }) => vertex.clone(),
            _ => unreachable!("merge starts with a glue"),
        };
        steps.push(MergeStep { disk: DiskReport::from(&d), survivor, before: cur.n(), after: next.n() });
        moves.extend(tr.moves);
        cur = next;
        round += 1;
    }
    let trace = if g.n() <= crate::small::CAP { Trace::sealed(moves, g, &cur) } else { Trace::new(moves) };
    Compression { graph: cur, steps, trace }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressedWitness {
    pub pairs_scanned: usize,
    pub growth_tries: u64,
    /// Two adjacent points with minimal rims were found and the graph is
    /// the minimal sphere, or no such pair exists.
    pub fast_path_consistent: bool,
}

fn on_four_cycle(g: &Graph, u: usize, v: usize) -> bool {
    let nu = g.neighbors(u);
    let nv = g.neighbors(v);
    nv.iter().filter(|&&x| x != u && !g.adjacent(u, x)).any(|&x| {
        nu.iter().filter(|&&y| y != v && !g.adjacent(v, y)).any(|&y| g.adjacent(x, y))
    })
}

/// No when a mergeable disk is found. Yes when the pair scan and the
/// bounded growth find none and the necessary conditions hold: every edge
/// lies on an induced 4-cycle and no non-adjacent pair has a disk as joint
/// rim. Unknown otherwise.
pub fn is_compressed(g: &Graph, n: usize, budget: &Budget) -> Verdict<CompressedWitness> {
    if let Some(d) = find_disk(g, n, budget, 0) {
        return Verdict::No(Certificate {
            reason: format!("a {n}-disk with {} interior points is not a ball", d.interior().len()),
            vertices: d.vertices().to_vec(),
            ..Certificate::default()
        });
    }
    for (u, v) in g.edges() {
        if !on_four_cycle(g, u, v) {
            return Verdict::Unknown(budget.spent());
        }
    }
    if n >= 1 {
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if g.adjacent(u, v) {
                    continue;
                }
                let jr = g.joint_rim_ids(&[u, v]);
                if jr.is_empty() {
                    continue;
                }
                let Some(s) = Small::from_graph(&g.induced(&jr)) else { return Verdict::Unknown(budget.spent()) };
                if crate::classify::disk_s(&s, n - 1, budget) != crate::verdict::Outcome::No {
                    return Verdict::Unknown(budget.spent());
                }
            }
        }
    }
    let minimal_rim = |v: usize| is_minimal_sphere(&g.induced(g.neighbors(v))) == Some(n.saturating_sub(1));
    let triggered = g.edges().any(|(u, v)| minimal_rim(u) && minimal_rim(v));
    let fast_path_consistent = !triggered || is_minimal_sphere(g) == Some(n);
    Verdict::Yes(CompressedWitness { pairs_scanned: g.m(), growth_tries: budget.limit(), fast_path_consistent })
}

#[derive(Clone, Debug)]
pub struct ClassReport {
    /// Fewest points reached; an upper bound on the class number.
    pub achieved_min_points: usize,
    pub runs: usize,
    pub best_graph: Graph,
    pub best_trace: Trace,
    pub note: &'static str,
}

/// Runs `runs` seeded compressions in parallel and keeps the smallest result.
pub fn class_number(g: &Graph, n: usize, runs: usize, budget: &Budget, seed: u64) -> ClassReport {
    let results: Vec<Compression> = (0..runs as u64).into_par_iter().map(|r| compress(g, n, budget, seed + r)).collect();
    let best = results.into_iter().min_by_key(|c| c.graph.n()).unwrap_or_else(|| Compression {
        graph: g.clone(),
        steps: Vec::new(),
        trace: Trace::new(Vec::new()),
    });
    ClassReport {
        achieved_min_points: best.graph.n(),
        runs,
        best_graph: best.graph,
        best_trace: best.trace,
        note: "upper bound: fewest points over seeded compressions",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuncturedProfile {
    pub chi: i64,
    /// Trailing zeros trimmed.
    pub betti: Vec<usize>,
    pub reduced_points: usize,
    pub punctured: String,
    /// Every puncture gave the same invariants.
    pub vertex_independent: bool,
}

/// Invariants of the reduced punctured graph, checked over every puncture.
pub fn punctured_profile(g: &Graph, budget: &Budget) -> Option<PuncturedProfile> {
    if g.n() == 0 {
        return None;
    }
    let per: Vec<(i64, Vec<usize>, usize)> = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let (h, _) = reduce(&g.without_vertex(v), budget);
            let inv = invariants(&h);
            (inv.chi, trim_betti(&inv.betti), h.n())
        })
        .collect();
    let (chi, betti, size) = per[0].clone();
    let vertex_independent = per.iter().all(|(c, b, _)| *c == chi && *b == betti);
    Some(PuncturedProfile { chi, betti, reduced_points: size, punctured: g.vname(0).to_string(), vertex_independent })
}
