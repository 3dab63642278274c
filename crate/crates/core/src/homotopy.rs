//! Contractible transformations and the contractibility search.
//!
//! A point may be deleted or glued when its rim is contractible, an edge when
//! the joint rim of its ends is. Contractibility is decided by deleting
//! points greedily; when that stalls on a graph whose invariants look like a
//! point, a bounded depth-first search over edge moves takes over.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::canon::canonical_key;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{invariants, is_acyclic, maximal_cliques};
use crate::memo::{self, Question};
use crate::small::{bit, bits, Small};
use crate::verdict::{Budget, Certificate, Outcome, Verdict};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Move {
    DeletePoint { vertex: String },
    GluePoint { vertex: String, attachment: Vec<String> },
    DeleteEdge { u: String, v: String },
    GlueEdge { u: String, v: String },
}

/// Replayable move sequence. Keys are canonical keys of the start and end
/// graphs when they are small enough to have one.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub moves: Vec<Move>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub start_key: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub end_key: Option<String>,
}

fn key_string(g: &Graph) -> Option<String> {
    canonical_key(g).ok().map(|k| k.to_string())
}

impl Trace {
    pub fn new(moves: Vec<Move>) -> Trace {
        Trace { moves, start_key: None, end_key: None }
    }

    pub fn sealed(moves: Vec<Move>, start: &Graph, end: &Graph) -> Trace {
        Trace { moves, start_key: key_string(start), end_key: key_string(end) }
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Applies every move after validating it; checks the recorded keys.
    pub fn replay(&self, start: &Graph, budget: &Budget) -> Result<Graph> {
        if let (Some(k), Some(s)) = (&self.start_key, key_string(start)) {
            if *k != s {
                return Err(Error::InvalidMove("start graph does not match the trace".into()));
            }
        }
        let mut g = start.clone();
        for m in &self.moves {
            g = apply_move(&g, m, budget)?;
        }
        if let (Some(k), Some(e)) = (&self.end_key, key_string(&g)) {
            if *k != e {
                return Err(Error::InvalidMove("replay ended on a different graph".into()));
            }
        }
        Ok(g)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("trace serializes")
    }

    pub fn parse_json(s: &str) -> Result<Trace> {
        serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// Index-level move on a bitmask graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum SMove {
    Del(usize),
    DelEdge(usize, usize),
    GlueEdge(usize, usize),
}

fn to_moves(g: &Graph, ids: &[usize], ms: &[SMove]) -> Vec<Move> {
    let nm = |i: usize| g.vname(ids[i]).to_string();
    ms.iter()
        .map(|m| match *m {
            SMove::Del(v) => Move::DeletePoint { vertex: nm(v) },
            SMove::DelEdge(u, v) => Move::DeleteEdge { u: nm(u), v: nm(v) },
            SMove::GlueEdge(u, v) => Move::GlueEdge { u: nm(u), v: nm(v) },
        })
        .collect()
}

/// Contractibility of a bitmask graph; memoized on canonical form.
pub(crate) fn contractible_small(g: &Small, budget: &Budget) -> Outcome {
    if let Some(o) = quick(g) {
        return o;
    }
    let (hit, slot) = memo::lookup(Question::Contractible, g);
    if let Some(b) = hit {
        return if b { Outcome::Yes } else { Outcome::No };
    }
    let (o, _, _) = search(g, budget, false);
    match o {
        Outcome::Yes => memo::store(slot, true),
        Outcome::No => memo::store(slot, false),
        Outcome::Unknown => {}
    }
    o
}

fn quick(g: &Small) -> Option<Outcome> {
    match g.n {
        0 => Some(Outcome::No),
        1 => Some(Outcome::Yes),
        _ if !g.is_connected() => Some(Outcome::No),
        _ if g.cone_apex(g.all()).is_some() => Some(Outcome::Yes),
        _ => None,
    }
}

/// Deletes points with contractible rims until none is left or one point
/// remains. A cone is finished off directly.
fn greedy(g: &Small, alive: &mut u64, budget: &Budget, moves: &mut Vec<SMove>) {
    loop {
        if alive.count_ones() <= 1 {
            return;
        }
        if let Some(apex) = g.cone_apex(*alive) {
            for v in bits(*alive & !bit(apex)) {
                moves.push(SMove::Del(v));
            }
            *alive = bit(apex);
            return;
        }
        let mut progressed = false;
        for v in bits(*alive) {
            let rim = g.sub(g.adj[v] & *alive);
            if contractible_small(&rim, budget) == Outcome::Yes {
                moves.push(SMove::Del(v));
                *alive &= !bit(v);
                progressed = true;
            }
        }
        if !progressed {
            return;
        }
    }
}

/// Full search. Returns the outcome, the moves (when `want_moves`) and a
/// certificate on No. Move indices refer to `g`.
fn search(g: &Small, budget: &Budget, want_moves: bool) -> (Outcome, Vec<SMove>, Option<Certificate>) {
    if g.n == 0 {
        return (Outcome::No, Vec::new(), Some(Certificate::reason("empty graph")));
    }
    if !g.is_connected() {
        let k = g.components_within(g.all()).len();
        let cert = Certificate { reason: format!("disconnected: {k} components"), ..Certificate::default() };
        return (Outcome::No, Vec::new(), Some(cert));
    }
    let mut moves = Vec::new();
    let mut alive = g.all();
    greedy(g, &mut alive, budget, &mut moves);
    if alive.count_ones() == 1 {
        return (Outcome::Yes, moves, None);
    }
    let ids: Vec<usize> = bits(alive).collect();
    let h = g.sub(alive);
    let inv = invariants(&h.to_graph("stalled"));
    if !is_acyclic(&inv) {
        let cert = Certificate::invariants("invariants differ from a point", inv.chi, inv.betti);
        return (Outcome::No, moves, Some(cert));
    }
    match fallback(&h, budget) {
        Some(extra) => {
            if want_moves {
                for m in extra {
                    moves.push(match m {
                        SMove::Del(v) => SMove::Del(ids[v]),
                        SMove::DelEdge(u, v) => SMove::DelEdge(ids[u], ids[v]),
                        SMove::GlueEdge(u, v) => SMove::GlueEdge(ids[u], ids[v]),
                    });
                }
            }
            (Outcome::Yes, moves, None)
        }
        None => (Outcome::Unknown, moves, None),
    }
}

/// Depth-first search over edge deletions and gluings, each followed by
/// greedy point deletion. Stops after `budget.limit()` validated moves.
fn fallback(h: &Small, budget: &Budget) -> Option<Vec<SMove>> {
    let mut seen: HashSet<crate::canon::CanonKey> = HashSet::new();
    if let Ok((k, _)) = crate::canon::canon_small(h) {
        seen.insert(k);
    }
    // each frame: adjacency, alive mask, path of moves from h
    let mut stack: Vec<(Small, u64, Vec<SMove>)> = vec![(h.clone(), h.all(), Vec::new())];
    let mut used = 0u64;
    while let Some((g, alive, path)) = stack.pop() {
        let live: Vec<usize> = bits(alive).collect();
        let mut children = Vec::new();
        for (a, &u) in live.iter().enumerate() {
            for &v in &live[a + 1..] {
                if used >= budget.limit() {
                    return None;
                }
                let jr = g.sub(g.adj[u] & g.adj[v] & alive);
                used += 1;
                budget.charge(1);
                if contractible_small(&jr, budget) != Outcome::Yes {
                    continue;
                }
                let mut ng = g.clone();
                let m = if g.adj[u] & bit(v) != 0 {
                    ng.adj[u] &= !bit(v);
                    ng.adj[v] &= !bit(u);
                    SMove::DelEdge(u, v)
                } else {
                    ng.adj[u] |= bit(v);
                    ng.adj[v] |= bit(u);
                    SMove::GlueEdge(u, v)
                };
                let mut nalive = alive;
                let mut npath = path.clone();
                npath.push(m);
                greedy(&ng, &mut nalive, budget, &mut npath);
                if nalive.count_ones() == 1 {
                    return Some(npath);
                }
                let key = crate::canon::canon_small(&ng.sub(nalive)).ok().map(|(k, _)| k);
                if let Some(k) = key {
                    if !seen.insert(k) {
                        continue;
                    }
                }
                children.push((ng, nalive, npath));
            }
        }
        children.reverse();
        stack.extend(children);
    }
    None
}

/// Decides whether `g` reduces to a point. Yes carries a replayable trace.
pub fn is_contractible(g: &Graph, budget: &Budget) -> Verdict<Trace> {
    if g.n() == 0 {
        return Verdict::No(Certificate::reason("empty graph"));
    }
    if let Some(s) = Small::from_graph(g) {
        let (o, ms, cert) = search(&s, budget, true);
        let ids: Vec<usize> = (0..g.n()).collect();
        return match o {
            Outcome::Yes => {
                let moves = to_moves(g, &ids, &ms);
                let end = Trace::new(moves.clone()).replay_unchecked(g);
                Verdict::Yes(Trace::sealed(moves, g, &end))
            }
            Outcome::No => Verdict::No(cert.expect("No carries a certificate")),
            Outcome::Unknown => Verdict::Unknown(budget.spent()),
        };
    }
    if let Some(apex) = dominating(g, &vec![true; g.n()]) {
        let moves = (0..g.n()).filter(|&v| v != apex).map(|v| Move::DeletePoint { vertex: g.vname(v).to_string() }).collect();
        return Verdict::Yes(Trace::new(moves));
    }
    let (h, tr) = reduce(g, budget);
    if h.n() == 1 {
        return Verdict::Yes(Trace::new(tr.moves));
    }
    if let Some(s) = Small::from_graph(&h) {
        let (o, ms, cert) = search(&s, budget, true);
        let ids: Vec<usize> = (0..h.n()).collect();
        return match o {
            Outcome::Yes => {
                let mut moves = tr.moves;
                moves.extend(to_moves(&h, &ids, &ms));
                Verdict::Yes(Trace::new(moves))
            }
            Outcome::No => Verdict::No(cert.expect("No carries a certificate")),
            Outcome::Unknown => Verdict::Unknown(budget.spent()),
        };
    }
    if !h.is_connected() {
        return Verdict::No(Certificate::reason(format!("disconnected: {} components", h.components().len())));
    }
    if maximal_cliques(&h).iter().any(|c| c.len() > MAX_ENUMERATED_CLIQUE) {
        return Verdict::Unknown(budget.spent());
    }
    let inv = invariants(&h);
    if !is_acyclic(&inv) {
        return Verdict::No(Certificate::invariants("invariants differ from a point", inv.chi, inv.betti));
    }
    Verdict::Unknown(budget.spent())
}

/// Outcome only, for callers that do not need the trace.
pub fn contractible_outcome(g: &Graph, budget: &Budget) -> Outcome {
    match Small::from_graph(g) {
        Some(s) => contractible_small(&s, budget),
        None => is_contractible(g, budget).outcome(),
    }
}

impl Trace {
    /// Applies the moves without validating them.
    pub fn replay_unchecked(&self, start: &Graph) -> Graph {
        let mut g = start.clone();
        for m in &self.moves {
            g = apply_structural(&g, m).expect("move fits the graph");
        }
        g
    }
}

/// Largest clique size for which the clique complex is enumerated when
/// looking for a homological obstruction.
const MAX_ENUMERATED_CLIQUE: usize = 20;

/// A live point adjacent to every other live point.
fn dominating(g: &Graph, alive: &[bool]) -> Option<usize> {
    let live = alive.iter().filter(|&&a| a).count();
    (0..g.n()).find(|&v| alive[v] && g.neighbors(v).iter().filter(|&&w| alive[w]).count() + 1 == live)
}

/// Rim contractibility check on a large graph: rims above the bitmask cap
/// are deletable only when they are cones.
fn rim_contractible(g: &Graph, alive: &[bool], v: usize, budget: &Budget) -> bool {
    let rim: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
    if rim.len() > crate::small::CAP {
        let mut in_rim = vec![false; g.n()];
        for &w in &rim {
            in_rim[w] = true;
        }
        return dominating(g, &in_rim).is_some();
    }
    let mut adj = vec![0u64; rim.len()];
    for a in 0..rim.len() {
        for b in a + 1..rim.len() {
            if g.adjacent(rim[a], rim[b]) {
                adj[a] |= bit(b);
                adj[b] |= bit(a);
            }
        }
    }
    contractible_small(&Small { n: rim.len(), adj }, budget) == Outcome::Yes
}

/// Deletes points with contractible rims, smallest index first, re-examining
/// the neighbours of every deleted point. Deterministic and idempotent.
pub fn reduce(g: &Graph, budget: &Budget) -> (Graph, Trace) {
    let mut alive = vec![true; g.n()];
    let mut queue: BTreeSet<usize> = (0..g.n()).collect();
    let mut moves = Vec::new();
    let mut left = g.n();
    while let Some(v) = queue.pop_first() {
        if !alive[v] || left <= 1 {
            continue;
        }
        if rim_contractible(g, &alive, v, budget) {
            alive[v] = false;
            left -= 1;
            moves.push(Move::DeletePoint { vertex: g.vname(v).to_string() });
            for &w in g.neighbors(v) {
                if alive[w] {
                    queue.insert(w);
                }
            }
        }
    }
    let keep: Vec<usize> = (0..g.n()).filter(|&i| alive[i]).collect();
    let h = g.induced(&keep);
    let tr = if g.n() <= crate::small::CAP { Trace::sealed(moves, g, &h) } else { Trace::new(moves) };
    (h, tr)
}

fn check_absent(g: &Graph, v: &str) -> Result<()> {
    if g.contains(v) {
        Err(Error::MalformedMove(format!("vertex `{v}` already exists")))
    } else {
        Ok(())
    }
}

/// Yes iff the rim, attachment or joint rim governing `m` is contractible.
pub fn validate_move(g: &Graph, m: &Move, budget: &Budget) -> Result<Verdict<()>> {
    let sub = match m {
        Move::DeletePoint { vertex } => {
            let i = g.id(vertex).ok_or_else(|| Error::MalformedMove(format!("unknown vertex `{vertex}`")))?;
            g.induced(g.neighbors(i))
        }
        Move::GluePoint { vertex, attachment } => {
            check_absent(g, vertex)?;
            let ids = g.ids(attachment).map_err(|e| Error::MalformedMove(e.to_string()))?;
            let set: BTreeSet<usize> = ids.iter().copied().collect();
            if set.len() != ids.len() {
                return Err(Error::MalformedMove("attachment repeats a vertex".into()));
            }
            g.induced(&ids)
        }
        Move::DeleteEdge { u, v } | Move::GlueEdge { u, v } => {
            let a = g.id(u).ok_or_else(|| Error::MalformedMove(format!("unknown vertex `{u}`")))?;
            let b = g.id(v).ok_or_else(|| Error::MalformedMove(format!("unknown vertex `{v}`")))?;
            if a == b {
                return Err(Error::MalformedMove("edge endpoints coincide".into()));
            }
            let want_edge = matches!(m, Move::DeleteEdge { .. });
            if g.adjacent(a, b) != want_edge {
                return Err(Error::MalformedMove(if want_edge {
                    format!("`{u}`-`{v}` is not an edge")
                } else {
                    format!("`{u}`-`{v}` is already an edge")
                }));
            }
            g.induced(&g.joint_rim_ids(&[a, b]))
        }
    };
    Ok(is_contractible(&sub, budget).map(|_| ()))
}

fn apply_structural(g: &Graph, m: &Move) -> Result<Graph> {
    Ok(match m {
        Move::DeletePoint { vertex } => g.without_vertex(g.id_of(vertex)?),
        Move::GluePoint { vertex, attachment } => g.with_vertex(vertex, &g.ids(attachment)?)?,
        Move::DeleteEdge { u, v } => g.without_edge(g.id_of(u)?, g.id_of(v)?),
        Move::GlueEdge { u, v } => g.with_edge(g.id_of(u)?, g.id_of(v)?),
    })
}

/// Applies `m` after validating it.
pub fn apply_move(g: &Graph, m: &Move, budget: &Budget) -> Result<Graph> {
    match validate_move(g, m, budget)? {
        Verdict::Yes(()) => apply_structural(g, m),
        Verdict::No(c) => Err(Error::InvalidMove(format!("{m:?}: {}", c.reason))),
        Verdict::Unknown(_) => Err(Error::InvalidMove(format!("{m:?}: could not be validated within budget"))),
    }
}
