//! Recognizers for normal spaces, digital manifolds, disks and spheres, and
//! the disk-bounding checks built on them.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::graph::{join, Graph};
use crate::homotopy::{contractible_small, is_contractible, Trace};
use crate::invariants::invariants;
use crate::memo::{self, Question};
use crate::small::{bit, Small};
use crate::verdict::{Budget, Certificate, Outcome, Verdict};

/// Join of `n + 1` copies of the 0-sphere; partners are `a<i>` and `b<i>`.
pub fn minimal_sphere(n: usize) -> Graph {
    let mut g = zero_sphere(0);
    for i in 1..=n {
        g = join(&g, &zero_sphere(i));
    }
    g.with_name(format!("S{n}min"))
}

fn zero_sphere(i: usize) -> Graph {
    let a = format!("a{i}");
    let b = format!("b{i}");
    Graph::from_edges("S0", &[a.as_str(), b.as_str()], &[]).expect("two points")
}

/// `Some(n)` iff `g` has `2n + 2` vertices, each missing exactly one other.
pub fn is_minimal_sphere(g: &Graph) -> Option<usize> {
    let k = g.n();
    if k < 2 || k % 2 == 1 {
        return None;
    }
    if (0..k).all(|v| g.degree(v) == k - 2) {
        Some(k / 2 - 1)
    } else {
        None
    }
}

fn minimal_small(g: &Small) -> Option<usize> {
    let k = g.n;
    if k < 2 || k % 2 == 1 {
        return None;
    }
    if g.adj.iter().all(|a| a.count_ones() as usize == k - 2) {
        Some(k / 2 - 1)
    } else {
        None
    }
}

fn cached(q: Question, g: &Small, f: impl FnOnce() -> Outcome) -> Outcome {
    let (hit, slot) = memo::lookup(q, g);
    if let Some(b) = hit {
        return if b { Outcome::Yes } else { Outcome::No };
    }
    let o = f();
    match o {
        Outcome::Yes => memo::store(slot, true),
        Outcome::No => memo::store(slot, false),
        Outcome::Unknown => {}
    }
    o
}

fn rim(g: &Small, v: usize) -> Small {
    g.sub(g.adj[v])
}

/// Sphere test by rims and one contractible puncture.
pub(crate) fn sphere_s(g: &Small, n: usize, budget: &Budget) -> Outcome {
    if n == 0 {
        return if g.n == 2 && g.adj[0] == 0 { Outcome::Yes } else { Outcome::No };
    }
    if g.n < 2 * n + 2 || !g.is_connected() {
        return Outcome::No;
    }
    if minimal_small(g) == Some(n) {
        return Outcome::Yes;
    }
    cached(Question::Sphere(n as u8), g, || {
        let mut unknown = false;
        for v in 0..g.n {
            match sphere_s(&rim(g, v), n - 1, budget) {
                Outcome::Yes => {}
                Outcome::No => return Outcome::No,
                Outcome::Unknown => unknown = true,
            }
        }
        if unknown {
            return Outcome::Unknown;
        }
        puncture(g, budget)
    })
}

/// For a manifold: Yes if some puncture is contractible, No if one is not.
fn puncture(g: &Small, budget: &Budget) -> Outcome {
    for v in 0..g.n {
        match contractible_small(&g.sub(g.all() & !bit(v)), budget) {
            Outcome::Yes => return Outcome::Yes,
            Outcome::No => return Outcome::No,
            Outcome::Unknown => {}
        }
    }
    Outcome::Unknown
}

/// Manifold-with-boundary test; on Yes also returns the boundary mask.
pub(crate) fn boundary_s(g: &Small, n: usize, budget: &Budget) -> (Outcome, u64) {
    if n == 0 || g.n == 0 || !g.is_connected() {
        return (Outcome::No, 0);
    }
    let mut bd = 0u64;
    let mut unknown = false;
    for v in 0..g.n {
        let r = rim(g, v);
        let s = sphere_s(&r, n - 1, budget);
        if s == Outcome::Yes {
            continue;
        }
        match disk_s(&r, n - 1, budget) {
            Outcome::Yes => bd |= bit(v),
            Outcome::No if s == Outcome::No => return (Outcome::No, 0),
            _ => unknown = true,
        }
    }
    if unknown {
        return (Outcome::Unknown, 0);
    }
    if bd == 0 {
        return (Outcome::No, 0);
    }
    match sphere_s(&g.sub(bd), n - 1, budget) {
        Outcome::Yes => (Outcome::Yes, bd),
        o => (o, 0),
    }
}

pub(crate) fn disk_s(g: &Small, n: usize, budget: &Budget) -> Outcome {
    if n == 0 {
        return if g.n == 1 { Outcome::Yes } else { Outcome::No };
    }
    if g.n < 2 * n + 1 || !g.is_connected() {
        return Outcome::No;
    }
    cached(Question::Disk(n as u8), g, || match boundary_s(g, n, budget).0 {
        Outcome::Yes => contractible_small(g, budget),
        o => o,
    })
}

pub(crate) fn normal_s(g: &Small, n: usize) -> Outcome {
    if n == 0 {
        return if g.n == 2 && g.adj[0] == 0 { Outcome::Yes } else { Outcome::No };
    }
    if g.n == 0 || !g.is_connected() {
        return Outcome::No;
    }
    cached(Question::Normal(n as u8), g, || {
        for v in 0..g.n {
            if normal_s(&rim(g, v), n - 1) == Outcome::No {
                return Outcome::No;
            }
        }
        Outcome::Yes
    })
}

fn small_rim(g: &Graph, v: usize) -> Option<Small> {
    Small::from_graph(&g.induced(g.neighbors(v)))
}

/// Connected and every rim a normal space one dimension down.
pub fn is_normal_space(g: &Graph, n: usize) -> Verdict<()> {
    if n == 0 {
        return if g.n() == 2 && g.m() == 0 {
            Verdict::Yes(())
        } else {
            Verdict::No(Certificate::reason("a normal 0-space is two non-adjacent points"))
        };
    }
    if g.n() == 0 || !g.is_connected() {
        return Verdict::No(Certificate::reason("not connected"));
    }
    for v in 0..g.n() {
        let Some(r) = small_rim(g, v) else { return Verdict::Unknown(0) };
        if normal_s(&r, n - 1) == Outcome::No {
            return Verdict::No(Certificate::at(format!("rim is not a normal {}-space", n - 1), g.vname(v)));
        }
    }
    Verdict::Yes(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RimCertificate {
    pub vertex: String,
    pub rim: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManifoldWitness {
    pub dim: usize,
    pub rims: Vec<RimCertificate>,
}

pub type ManifoldVerdict = Verdict<ManifoldWitness>;

/// Connected and every rim an `(n-1)`-sphere.
pub fn is_n_manifold(g: &Graph, n: usize, budget: &Budget) -> ManifoldVerdict {
    if n == 0 {
        return Verdict::No(Certificate::reason("manifold dimension must be at least 1"));
    }
    if g.n() == 0 || !g.is_connected() {
        return Verdict::No(Certificate::reason("not connected"));
    }
    let mut rims = Vec::with_capacity(g.n());
    let mut unknown = false;
    for v in 0..g.n() {
        let Some(r) = small_rim(g, v) else { return Verdict::Unknown(budget.spent()) };
        match sphere_s(&r, n - 1, budget) {
            Outcome::Yes => rims.push(RimCertificate { vertex: g.vname(v).into(), rim: g.names_of(g.neighbors(v)) }),
            Outcome::No => {
                return Verdict::No(Certificate::at(format!("rim is not a {}-sphere", n - 1), g.vname(v)));
            }
            Outcome::Unknown => unknown = true,
        }
    }
    if unknown {
        return Verdict::Unknown(budget.spent());
    }
    Verdict::Yes(ManifoldWitness { dim: n, rims })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub boundary: Vec<String>,
    pub interior: Vec<String>,
}

/// Connected; every rim an `(n-1)`-sphere (interior point) or `(n-1)`-disk
/// (boundary point); the boundary is non-empty and an `(n-1)`-sphere.
pub fn is_n_manifold_with_boundary(g: &Graph, n: usize, budget: &Budget) -> Verdict<Partition> {
    if n == 0 {
        return Verdict::No(Certificate::reason("dimension must be at least 1"));
    }
    if g.n() == 0 || !g.is_connected() {
        return Verdict::No(Certificate::reason("not connected"));
    }
    let mut boundary = Vec::new();
    let mut interior = Vec::new();
    let mut unknown = false;
    for v in 0..g.n() {
        let Some(r) = small_rim(g, v) else { return Verdict::Unknown(budget.spent()) };
        let s = sphere_s(&r, n - 1, budget);
        if s == Outcome::Yes {
            interior.push(v);
            continue;
        }
        match disk_s(&r, n - 1, budget) {
            Outcome::Yes => boundary.push(v),
            Outcome::No if s == Outcome::No => {
                return Verdict::No(Certificate::at(
                    format!("rim is neither a {0}-sphere nor a {0}-disk", n - 1),
                    g.vname(v),
                ));
            }
            _ => unknown = true,
        }
    }
    if unknown {
        return Verdict::Unknown(budget.spent());
    }
    if boundary.is_empty() {
        return Verdict::No(Certificate::reason("no boundary points"));
    }
    let bd = g.induced(&boundary);
    let Some(bs) = Small::from_graph(&bd) else { return Verdict::Unknown(budget.spent()) };
    match sphere_s(&bs, n - 1, budget) {
        Outcome::Yes => Verdict::Yes(Partition { boundary: g.names_of(&boundary), interior: g.names_of(&interior) }),
        Outcome::No => Verdict::No(Certificate {
            reason: format!("boundary is not a {}-sphere", n - 1),
            vertices: g.names_of(&boundary),
            ..Certificate::default()
        }),
        Outcome::Unknown => Verdict::Unknown(budget.spent()),
    }
}

/// A certified digital disk inside a host graph. Only the recognizers in
/// this crate construct one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiskSpec {
    host: Graph,
    vertices: Vec<String>,
    boundary: Vec<String>,
    interior: Vec<String>,
    dim: usize,
    trace: Trace,
}

impl DiskSpec {
    pub fn host(&self) -> &Graph {
        &self.host
    }
    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }
    pub fn boundary(&self) -> &[String] {
        &self.boundary
    }
    pub fn interior(&self) -> &[String] {
        &self.interior
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    /// Deletion trace reducing the disk to a point.
    pub fn trace(&self) -> &Trace {
        &self.trace
    }
    pub fn graph(&self) -> Graph {
        self.host.induced_names(&self.vertices).expect("disk vertices lie in the host")
    }

    /// The same disk seen inside a larger host that induces the same subgraph.
    pub(crate) fn rehost(mut self, host: &Graph) -> Option<DiskSpec> {
        let d = host.induced_names(&self.vertices).ok()?;
        if d != self.graph() {
            return None;
        }
        self.host = host.clone();
        Some(self)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiskReport {
    pub vertices: Vec<String>,
    pub boundary: Vec<String>,
    pub interior: Vec<String>,
    pub dim: usize,
}

impl From<&DiskSpec> for DiskReport {
    fn from(d: &DiskSpec) -> Self {
        DiskReport { vertices: d.vertices.clone(), boundary: d.boundary.clone(), interior: d.interior.clone(), dim: d.dim }
    }
}

/// Manifold with boundary that is also contractible. `n = 0` is the single point.
pub fn is_n_disk(g: &Graph, n: usize, budget: &Budget) -> Verdict<DiskSpec> {
    if n == 0 {
        return if g.n() == 1 {
            Verdict::Yes(DiskSpec {
                host: g.clone(),
                vertices: g.names().to_vec(),
                boundary: Vec::new(),
                interior: g.names().to_vec(),
                dim: 0,
                trace: Trace::new(Vec::new()),
            })
        } else {
            Verdict::No(Certificate::reason("a 0-disk is a single point"))
        };
    }
    let part = match is_n_manifold_with_boundary(g, n, budget) {
        Verdict::Yes(p) => p,
        Verdict::No(c) => return Verdict::No(c),
        Verdict::Unknown(s) => return Verdict::Unknown(s),
    };
    match is_contractible(g, budget) {
        Verdict::Yes(trace) => Verdict::Yes(DiskSpec {
            host: g.clone(),
            vertices: g.names().to_vec(),
            boundary: part.boundary,
            interior: part.interior,
            dim: n,
            trace,
        }),
        Verdict::No(c) => Verdict::No(c),
        Verdict::Unknown(s) => Verdict::Unknown(s),
    }
}

/// Disk test on the subgraph induced by `ids`; the returned disk refers to `g`.
pub fn disk_in(g: &Graph, ids: &[usize], n: usize, budget: &Budget) -> Verdict<DiskSpec> {
    let d = g.induced(ids);
    if let Some(s) = Small::from_graph(&d) {
        // cheap rejection before building certificates
        if disk_s(&s, n, budget) == Outcome::No {
            return Verdict::No(Certificate::reason(format!("not a {n}-disk")));
        }
    }
    match is_n_disk(&d, n, budget) {
        Verdict::Yes(spec) => Verdict::Yes(spec.rehost(g).expect("induced subgraph")),
        other => other,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SphereWitness {
    /// Point whose deletion leaves a contractible graph.
    pub punctured: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub puncture_trace: Option<Trace>,
    /// Vertex count reached by compression.
    pub compressed_to: Option<usize>,
}

/// Result of both sphere algorithms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereVerdict {
    pub verdict: Verdict<SphereWitness>,
    pub by_puncture: Outcome,
    pub by_compression: Outcome,
    /// Set when the two algorithms give opposite definite answers.
    pub discrepancy: Option<String>,
}

impl SphereVerdict {
    pub fn outcome(&self) -> Outcome {
        self.verdict.outcome()
    }
}

fn sphere_invariants_ok(g: &Graph, n: usize) -> Result<(), Certificate> {
    let inv = invariants(g);
    let chi = if n % 2 == 0 { 2 } else { 0 };
    let mut betti = vec![0; n + 1];
    betti[0] = 1;
    betti[n] = 1;
    if inv.chi != chi || inv.betti != betti {
        return Err(Certificate::invariants(format!("invariants differ from a {n}-sphere"), inv.chi, inv.betti));
    }
    Ok(())
}

/// Runs the puncture algorithm and the compression algorithm and compares them.
pub fn is_n_sphere(g: &Graph, n: usize, budget: &Budget) -> SphereVerdict {
    if n == 0 {
        let v = if is_minimal_sphere(g) == Some(0) {
            Verdict::Yes(SphereWitness { punctured: None, puncture_trace: None, compressed_to: Some(2) })
        } else {
            Verdict::No(Certificate::reason("a 0-sphere is two non-adjacent points"))
        };
        let o = v.outcome();
        return SphereVerdict { verdict: v, by_puncture: o, by_compression: o, discrepancy: None };
    }
    let mfd = is_n_manifold(g, n, budget);
    if let Verdict::No(c) = mfd {
        return SphereVerdict { verdict: Verdict::No(c), by_puncture: Outcome::No, by_compression: Outcome::No, discrepancy: None };
    }
    if let Verdict::Unknown(s) = mfd {
        return SphereVerdict {
            verdict: Verdict::Unknown(s),
            by_puncture: Outcome::Unknown,
            by_compression: Outcome::Unknown,
            discrepancy: None,
        };
    }
    // algorithm A
    let mut a = Outcome::Unknown;
    let mut a_cert = None;
    let mut punct = None;
    for v in 0..g.n() {
        match is_contractible(&g.without_vertex(v), budget) {
            Verdict::Yes(t) => {
                a = Outcome::Yes;
                punct = Some((g.vname(v).to_string(), t));
                break;
            }
            Verdict::No(mut c) => {
                a = Outcome::No;
                c.vertex = Some(g.vname(v).to_string());
                c.reason = format!("puncture is not contractible: {}", c.reason);
                a_cert = Some(c);
                break;
            }
            Verdict::Unknown(_) => {}
        }
    }
    // algorithm B
    let comp = crate::dtransform::compress(g, n, budget, 0);
    let (b, b_cert) = if is_minimal_sphere(&comp.graph) == Some(n) {
        (Outcome::Yes, None)
    } else {
        match sphere_invariants_ok(&comp.graph, n) {
            Err(c) => (Outcome::No, Some(c)),
            Ok(()) => (Outcome::Unknown, None),
        }
    };
    let witness = || SphereWitness {
        punctured: punct.as_ref().map(|p| p.0.clone()),
        puncture_trace: punct.as_ref().map(|p| p.1.clone()),
        compressed_to: Some(comp.graph.n()),
    };
    let (verdict, discrepancy) = match (a, b) {
        (Outcome::Yes, Outcome::No) | (Outcome::No, Outcome::Yes) => (
            Verdict::Unknown(budget.spent()),
            Some(format!("puncture algorithm says {a:?}, compression algorithm says {b:?}")),
        ),
        (Outcome::Yes, _) | (_, Outcome::Yes) => (Verdict::Yes(witness()), None),
        (Outcome::No, _) => (Verdict::No(a_cert.expect("certificate")), None),
        (_, Outcome::No) => (Verdict::No(b_cert.expect("certificate")), None),
        _ => (Verdict::Unknown(budget.spent()), None),
    };
    SphereVerdict { verdict, by_puncture: a, by_compression: b, discrepancy }
}

/// Induced chordless cycles with `4 <= length <= max_len`, each vertex set
/// once, sorted.
pub fn enumerate_one_spheres(g: &Graph, max_len: usize) -> Vec<Vec<usize>> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    fn extend(g: &Graph, path: &mut Vec<usize>, max_len: usize, found: &mut BTreeSet<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().expect("non-empty");
        let l = path.len();
        for &w in g.neighbors(last) {
            if w <= s || path.contains(&w) {
                continue;
            }
            if l >= 2 && path[1..l - 1].iter().any(|&p| g.adjacent(p, w)) {
                continue;
            }
            if l >= 2 && g.adjacent(s, w) {
                if l + 1 >= 4 {
                    let mut c = path.clone();
                    c.push(w);
                    c.sort_unstable();
                    found.insert(c);
                }
                continue;
            }
            if l + 1 < max_len {
                path.push(w);
                extend(g, path, max_len, found);
                path.pop();
            }
        }
    }
    for s in 0..g.n() {
        let mut path = vec![s];
        extend(g, &mut path, max_len, &mut found);
    }
    found.into_iter().collect()
}

/// Looks for a digital n-disk in `g` whose boundary is exactly `s`.
///
/// In an n-manifold the interior of such a disk is closed under adjacency
/// away from `s`, so it is a union of components of `g - s`; every union is
/// tried, singletons first. A No needs `g` certified as an n-manifold.
pub fn bounds_disk(g: &Graph, s: &[String], n: usize, budget: &Budget) -> Verdict<DiskSpec> {
    let sid = match g.ids(s) {
        Ok(v) => v,
        Err(e) => return Verdict::No(Certificate::reason(e.to_string())),
    };
    let sset: BTreeSet<usize> = sid.iter().copied().collect();
    let sg = g.induced(&sid);
    match Small::from_graph(&sg).map(|x| sphere_s(&x, n - 1, budget)) {
        Some(Outcome::Yes) => {}
        Some(Outcome::No) => return Verdict::No(Certificate::reason(format!("the set is not a {}-sphere", n - 1))),
        _ => return Verdict::Unknown(budget.spent()),
    }
    let rest: Vec<usize> = (0..g.n()).filter(|i| !sset.contains(i)).collect();
    let comps: Vec<Vec<usize>> = g.induced(&rest).components().into_iter().map(|c| c.into_iter().map(|i| rest[i]).collect()).collect();
    let k = comps.len();
    let exhaustive = k <= 16;
    let mut masks: Vec<u32> = (1..(1u32 << k.min(16))).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    let mut unknown = !exhaustive;
    let mut tried = 0u64;
    for m in masks {
        if tried >= budget.limit().max(1) * 16 {
            unknown = true;
            break;
        }
        tried += 1;
        let mut ids = sid.clone();
        for (c, comp) in comps.iter().enumerate() {
            if m & (1 << c) != 0 {
                ids.extend_from_slice(comp);
            }
        }
        match disk_in(g, &ids, n, budget) {
            Verdict::Yes(d) => {
                let bd: BTreeSet<&str> = d.boundary().iter().map(String::as_str).collect();
                let want: BTreeSet<&str> = s.iter().map(String::as_str).collect();
                if bd == want {
                    return Verdict::Yes(d);
                }
            }
            Verdict::Unknown(_) => unknown = true,
            Verdict::No(_) => {}
        }
    }
    if unknown || !is_n_manifold(g, n, budget).is_yes() {
        return Verdict::Unknown(budget.spent());
    }
    Verdict::No(Certificate {
        reason: format!("no union of the {k} complementary components bounds a {n}-disk"),
        vertices: s.to_vec(),
        ..Certificate::default()
    })
}

/// Every 1-sphere of `g` up to `max_len` bounds a 2-disk (the hypothesis of
/// the two-dimensional disk-bounding theorem).
pub fn one_spheres_bound_disks(g: &Graph, max_len: usize, budget: &Budget) -> Verdict<Vec<DiskReport>> {
    let mut out = Vec::new();
    for c in enumerate_one_spheres(g, max_len) {
        let names = g.names_of(&c);
        match bounds_disk(g, &names, 2, budget) {
            Verdict::Yes(d) => out.push(DiskReport::from(&d)),
            Verdict::No(mut cert) => {
                cert.vertices = names;
                return Verdict::No(cert);
            }
            Verdict::Unknown(s) => return Verdict::Unknown(s),
        }
    }
    Verdict::Yes(out)
}

/// Induced paths with `3 <= size <= max_size`, i.e. digital 1-disks.
pub fn induced_paths(g: &Graph, max_size: usize) -> Vec<Vec<usize>> {
    let mut out: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    fn extend(g: &Graph, path: &mut Vec<usize>, max_size: usize, out: &mut BTreeSet<(usize, Vec<usize>)>) {
        let l = path.len();
        if l >= 3 && path[0] < path[l - 1] {
            out.insert((l, path.clone()));
        }
        if l == max_size {
            return;
        }
        let last = path[l - 1];
        for &w in g.neighbors(last) {
            if path.contains(&w) || path[..l - 1].iter().any(|&p| g.adjacent(p, w)) {
                continue;
            }
            path.push(w);
            extend(g, path, max_size, out);
            path.pop();
        }
    }
    for s in 0..g.n() {
        let mut p = vec![s];
        extend(g, &mut p, max_size, &mut out);
    }
    out.into_iter().map(|(_, p)| p).collect()
}

/// Connected vertex subsets of size `2..=max_size` whose induced subgraph is
/// a digital m-disk.
fn disks_up_to(g: &Graph, m: usize, max_size: usize, budget: &Budget) -> (Vec<DiskSpec>, bool) {
    if m == 1 {
        let mut out = Vec::new();
        let mut complete = true;
        for p in induced_paths(g, max_size) {
            match disk_in(g, &p, 1, budget) {
                Verdict::Yes(d) => out.push(d),
                Verdict::Unknown(_) => complete = false,
                Verdict::No(_) => {}
            }
        }
        return (out, complete);
    }
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier: Vec<Vec<usize>> = (0..g.n()).map(|v| vec![v]).collect();
    let mut out = Vec::new();
    let mut complete = true;
    for _ in 1..max_size {
        let mut next = Vec::new();
        for set in &frontier {
            for &v in set {
                for &w in g.neighbors(v) {
                    if set.contains(&w) {
                        continue;
                    }
                    let mut s2 = set.clone();
                    s2.push(w);
                    s2.sort_unstable();
                    if seen.insert(s2.clone()) {
                        next.push(s2);
                    }
                }
            }
        }
        for s in &next {
            match disk_in(g, s, m, budget) {
                Verdict::Yes(d) => out.push(d),
                Verdict::Unknown(_) => complete = false,
                Verdict::No(_) => {}
            }
        }
        frontier = next;
    }
    (out, complete)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Containment {
    pub inner: DiskReport,
    pub outer: DiskReport,
}

/// Searches for an n-disk whose interior holds the interior of `l`. Any
/// such disk holds the balls of those points, so only supersets of their
/// union are tried; exhaustively when at most 16 points lie outside it.
pub fn enclosing_disk(g: &Graph, l: &DiskSpec, n: usize, budget: &Budget) -> Verdict<DiskSpec> {
    let int: Vec<usize> = match g.ids(l.interior()) {
        Ok(v) => v,
        Err(_) => return Verdict::No(Certificate::reason("disk points are not in the graph")),
    };
    let mut forced: BTreeSet<usize> = BTreeSet::new();
    for &x in &int {
        forced.extend(g.ball_ids(x));
    }
    let rest: Vec<usize> = (0..g.n()).filter(|i| !forced.contains(i)).collect();
    let exhaustive = rest.len() <= 16;
    let cap = if exhaustive { 1u64 << rest.len() } else { budget.limit().max(1) * 64 };
    let mut masks: Vec<u64> = (0..cap.min(1 << rest.len().min(63))).collect();
    masks.sort_by_key(|mk| (mk.count_ones(), *mk));
    let mut undecided = !exhaustive;
    for mk in masks {
        let mut ids: Vec<usize> = forced.iter().copied().collect();
        ids.extend(rest.iter().enumerate().filter(|(i, _)| mk & (1 << i) != 0).map(|(_, &v)| v));
        match disk_in(g, &ids, n, budget) {
            Verdict::Yes(u) => {
                let ui: BTreeSet<&String> = u.interior().iter().collect();
                if l.interior().iter().all(|x| ui.contains(x)) {
                    return Verdict::Yes(u);
                }
            }
            Verdict::Unknown(_) => undecided = true,
            Verdict::No(_) => {}
        }
    }
    if undecided {
        Verdict::Unknown(budget.spent())
    } else {
        Verdict::No(Certificate {
            reason: format!("no {n}-disk contains the interior of this {}-point disk", l.vertices().len()),
            vertices: l.vertices().to_vec(),
            ..Certificate::default()
        })
    }
}

/// Every enumerated m-disk sorted by outcome.
#[derive(Clone, Debug, Default)]
pub struct ContainmentSurvey {
    pub contained: Vec<Containment>,
    pub failures: Vec<Vec<String>>,
    pub undecided: Vec<Vec<String>>,
    /// The enumeration of m-disks reached the size bound.
    pub complete: bool,
}

pub fn containment_survey(g: &Graph, m: usize, n: usize, max_size: usize, budget: &Budget) -> ContainmentSurvey {
    let (inner, complete) = disks_up_to(g, m, max_size, budget);
    let mut out = ContainmentSurvey { complete, ..Default::default() };
    for l in inner {
        match enclosing_disk(g, &l, n, budget) {
            Verdict::Yes(u) => out.contained.push(Containment { inner: DiskReport::from(&l), outer: DiskReport::from(&u) }),
            Verdict::No(_) => out.failures.push(l.vertices().to_vec()),
            Verdict::Unknown(_) => out.undecided.push(l.vertices().to_vec()),
        }
    }
    out
}

pub fn disk_containment_hypothesis(
    g: &Graph,
    m: usize,
    n: usize,
    max_size: usize,
    budget: &Budget,
) -> Verdict<Vec<Containment>> {
    if m >= n {
        return Verdict::No(Certificate::reason("inner dimension must be below the outer one"));
    }
    match is_n_manifold(g, n, budget) {
        Verdict::Yes(_) => {}
        Verdict::No(c) => return Verdict::No(c),
        Verdict::Unknown(s) => return Verdict::Unknown(s),
    }
    let (inner, complete) = disks_up_to(g, m, max_size, budget);
    let mut out = Vec::new();
    let mut unknown = !complete;
    for l in inner {
        match enclosing_disk(g, &l, n, budget) {
            Verdict::Yes(u) => out.push(Containment { inner: DiskReport::from(&l), outer: DiskReport::from(&u) }),
            Verdict::No(c) => return Verdict::No(c),
            Verdict::Unknown(_) => unknown = true,
        }
    }
    if unknown {
        return Verdict::Unknown(budget.spent());
    }
    Verdict::Yes(out)
}
