//! Simple undirected graphs with named vertices.
//!
//! Vertices keep the order in which they were inserted; induced subgraphs keep
//! host order. Every derived vertex name is generated deterministically.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Default)]
pub struct Graph {
    name: String,
    names: Vec<String>,
    index: HashMap<String, usize>,
    adj: Vec<Vec<usize>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph({:?}; ", self.name)?;
        write!(f, "{:?}; ", self.names)?;
        let edges: Vec<String> = self.edges().map(|(u, v)| format!("{}-{}", self.names[u], self.names[v])).collect();
        write!(f, "{})", edges.join(" "))
    }
}

/// Incremental constructor that rejects self-loops and duplicate edges.
#[derive(Default)]
pub struct GraphBuilder {
    g: Graph,
    edges: BTreeSet<(usize, usize)>,
}

impl GraphBuilder {
    pub fn new(name: impl Into<String>) -> Self {
        GraphBuilder { g: Graph { name: name.into(), ..Graph::default() }, edges: BTreeSet::new() }
    }

    pub fn vertex(&mut self, name: impl Into<String>) -> Result<usize> {
        let name = name.into();
        if self.g.index.contains_key(&name) {
            return Err(Error::DuplicateVertex(name));
        }
        let id = self.g.names.len();
        self.g.index.insert(name.clone(), id);
        self.g.names.push(name);
        self.g.adj.push(Vec::new());
        Ok(id)
    }

    /// Returns the id of `name`, inserting it if new.
    pub fn ensure(&mut self, name: &str) -> usize {
        match self.g.index.get(name) {
            Some(&i) => i,
            None => self.vertex(name).expect("fresh name"),
        }
    }

    pub fn edge(&mut self, u: &str, v: &str) -> Result<()> {
        let a = self.g.id_of(u)?;
        let b = self.g.id_of(v)?;
        self.edge_ids(a, b)
    }

    pub fn edge_ids(&mut self, a: usize, b: usize) -> Result<()> {
        if a == b {
            return Err(Error::SelfLoop(self.g.names[a].clone()));
        }
        let key = (a.min(b), a.max(b));
        if !self.edges.insert(key) {
            return Err(Error::DuplicateEdge(self.g.names[a].clone(), self.g.names[b].clone()));
        }
        Ok(())
    }

    /// Like `edge_ids` but silently ignores an edge that is already present.
    pub fn edge_ids_lenient(&mut self, a: usize, b: usize) {
        if a != b {
            self.edges.insert((a.min(b), a.max(b)));
        }
    }

    pub fn build(mut self) -> Graph {
        for &(a, b) in &self.edges {
            self.g.adj[a].push(b);
            self.g.adj[b].push(a);
        }
        for list in &mut self.g.adj {
            list.sort_unstable();
        }
        self.g
    }
}

impl Graph {
    pub fn empty(name: impl Into<String>) -> Graph {
        Graph { name: name.into(), ..Graph::default() }
    }

    /// Builds a graph from vertex names and name pairs.
    pub fn from_edges<S: AsRef<str>>(name: &str, vertices: &[S], edges: &[(S, S)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(name);
        for v in vertices {
            b.vertex(v.as_ref())?;
        }
        for (u, v) in edges {
            b.edge(u.as_ref(), v.as_ref())?;
        }
        Ok(b.build())
    }

    /// Builds a graph on vertices `0..n` named by their decimal index.
    pub fn from_index_edges(name: &str, n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(name);
        for i in 0..n {
            b.vertex(i.to_string())?;
        }
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::UnknownVertex(u.max(v).to_string()));
            }
            b.edge_ids(u, v)?;
        }
        Ok(b.build())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Graph {
        self.name = name.into();
        self
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vname(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn id(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn id_of(&self, name: &str) -> Result<usize> {
        self.id(name).ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adj[i].len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adj[a].binary_search(&b).is_ok()
    }

    pub fn adjacent_names(&self, a: &str, b: &str) -> Result<bool> {
        Ok(self.adjacent(self.id_of(a)?, self.id_of(b)?))
    }

    /// Edges as index pairs with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn edge_names(&self) -> Vec<(String, String)> {
        self.edges().map(|(u, v)| (self.names[u].clone(), self.names[v].clone())).collect()
    }

    pub fn ids(&self, names: &[impl AsRef<str>]) -> Result<Vec<usize>> {
        names.iter().map(|s| self.id_of(s.as_ref())).collect()
    }

    pub fn names_of(&self, ids: &[usize]) -> Vec<String> {
        ids.iter().map(|&i| self.names[i].clone()).collect()
    }

    /// Induced subgraph on `ids`, which may be given in any order.
    pub fn induced(&self, ids: &[usize]) -> Graph {
        let mut keep: Vec<usize> = ids.to_vec();
        keep.sort_unstable();
        keep.dedup();
        let mut pos = vec![usize::MAX; self.n()];
        for (k, &i) in keep.iter().enumerate() {
            pos[i] = k;
        }
        let names: Vec<String> = keep.iter().map(|&i| self.names[i].clone()).collect();
        let index = names.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        let adj = keep
            .iter()
            .map(|&i| self.adj[i].iter().filter(|&&j| pos[j] != usize::MAX).map(|&j| pos[j]).collect())
            .collect();
        Graph { name: self.name.clone(), names, index, adj }
    }

    pub fn induced_names(&self, names: &[impl AsRef<str>]) -> Result<Graph> {
        Ok(self.induced(&self.ids(names)?))
    }

    pub fn without(&self, ids: &[usize]) -> Graph {
        let drop: BTreeSet<usize> = ids.iter().copied().collect();
        let keep: Vec<usize> = (0..self.n()).filter(|i| !drop.contains(i)).collect();
        self.induced(&keep)
    }

    pub fn without_vertex(&self, i: usize) -> Graph {
        self.without(&[i])
    }

    /// Adds a fresh vertex adjacent to `nbrs`.
    pub fn with_vertex(&self, name: &str, nbrs: &[usize]) -> Result<Graph> {
        if self.contains(name) {
            return Err(Error::DuplicateVertex(name.to_string()));
        }
        let mut g = self.clone();
        let id = g.names.len();
        g.names.push(name.to_string());
        g.index.insert(name.to_string(), id);
        let mut list: Vec<usize> = nbrs.to_vec();
        list.sort_unstable();
        list.dedup();
        for &j in &list {
            if j >= id {
                return Err(Error::UnknownVertex(j.to_string()));
            }
            g.adj[j].push(id);
        }
        g.adj.push(list);
        Ok(g)
    }

    pub fn with_edge(&self, a: usize, b: usize) -> Graph {
        let mut g = self.clone();
        if a != b && !g.adjacent(a, b) {
            let p = g.adj[a].binary_search(&b).unwrap_err();
            g.adj[a].insert(p, b);
            let p = g.adj[b].binary_search(&a).unwrap_err();
            g.adj[b].insert(p, a);
        }
        g
    }

    pub fn without_edge(&self, a: usize, b: usize) -> Graph {
        let mut g = self.clone();
        if let Ok(p) = g.adj[a].binary_search(&b) {
            g.adj[a].remove(p);
            let p = g.adj[b].binary_search(&a).expect("symmetric adjacency");
            g.adj[b].remove(p);
        }
        g
    }

    /// Renames vertices through `f`; the new names must stay distinct.
    pub fn relabel(&self, f: impl Fn(&str) -> String) -> Result<Graph> {
        let names: Vec<String> = self.names.iter().map(|s| f(s)).collect();
        let mut index = HashMap::new();
        for (k, s) in names.iter().enumerate() {
            if index.insert(s.clone(), k).is_some() {
                return Err(Error::DuplicateVertex(s.clone()));
            }
        }
        Ok(Graph { name: self.name.clone(), names, index, adj: self.adj.clone() })
    }

    /// Same graph with vertices listed in the order `perm` (a permutation of ids).
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        let mut pos = vec![0; self.n()];
        for (k, &i) in perm.iter().enumerate() {
            pos[i] = k;
        }
        let names: Vec<String> = perm.iter().map(|&i| self.names[i].clone()).collect();
        let index = names.iter().enumerate().map(|(k, s)| (s.clone(), k)).collect();
        let adj = perm
            .iter()
            .map(|&i| {
                let mut l: Vec<usize> = self.adj[i].iter().map(|&j| pos[j]).collect();
                l.sort_unstable();
                l
            })
            .collect();
        Graph { name: self.name.clone(), names, index, adj }
    }

    pub fn rim_ids(&self, i: usize) -> Vec<usize> {
        self.adj[i].clone()
    }

    pub fn ball_ids(&self, i: usize) -> Vec<usize> {
        let mut v = self.adj[i].clone();
        let p = v.binary_search(&i).unwrap_err();
        v.insert(p, i);
        v
    }

    /// Common neighbours of every vertex in `ids`.
    pub fn joint_rim_ids(&self, ids: &[usize]) -> Vec<usize> {
        let Some((&first, rest)) = ids.split_first() else { return Vec::new() };
        self.adj[first].iter().copied().filter(|&w| rest.iter().all(|&u| self.adjacent(u, w))).collect()
    }

    /// Induced subgraph on the neighbours of `v`.
    pub fn rim(&self, v: &str) -> Result<Graph> {
        let i = self.id_of(v)?;
        Ok(self.induced(&self.adj[i]))
    }

    /// Induced subgraph on `v` and its neighbours.
    pub fn ball(&self, v: &str) -> Result<Graph> {
        let i = self.id_of(v)?;
        Ok(self.induced(&self.ball_ids(i)))
    }

    /// Induced subgraph on the common neighbours of `vs`.
    pub fn joint_rim(&self, vs: &[impl AsRef<str>]) -> Result<Graph> {
        if vs.is_empty() {
            return Err(Error::EmptyVertexSet);
        }
        let ids = self.ids(vs)?;
        Ok(self.induced(&self.joint_rim_ids(&ids)))
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut stack = vec![s];
            let mut comp = Vec::new();
            while let Some(u) = stack.pop() {
                comp.push(u);
                for &w in &self.adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Smallest `prefix<k>` not already used as a vertex name.
    pub fn fresh_name(&self, prefix: &str) -> String {
        (0..).map(|k| format!("{prefix}{k}")).find(|s| !self.contains(s)).expect("unbounded")
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            name: self.name.clone(),
            vertices: self.names.clone(),
            edges: self.edges().map(|(u, v)| [self.names[u].clone(), self.names[v].clone()]).collect(),
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Graph> {
        let mut b = GraphBuilder::new(j.name.clone());
        for v in &j.vertices {
            b.vertex(v.clone())?;
        }
        for [u, v] in &j.edges {
            b.edge(u, v)?;
        }
        Ok(b.build())
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&self.to_json()).expect("graph serializes")
    }

    pub fn parse_json(s: &str) -> Result<Graph> {
        let j: GraphJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Graph::from_json(&j)
    }

    /// Edge-list text: one `u v` pair per line, `#` starts a comment. A line
    /// with a single token declares an isolated vertex.
    pub fn parse_edge_list(name: &str, text: &str) -> Result<Graph> {
        let mut b = GraphBuilder::new(name);
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                [v] => {
                    b.ensure(v);
                }
                [u, v] => {
                    let a = b.ensure(u);
                    let c = b.ensure(v);
                    b.edge_ids(a, c)?;
                }
                _ => return Err(Error::Parse(format!("line {}: expected `u v`", ln + 1))),
            }
        }
        Ok(b.build())
    }

    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n() {
            if self.adj[i].is_empty() {
                out.push_str(&self.names[i]);
                out.push('\n');
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{} {}\n", self.names[u], self.names[v]));
        }
        out
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphJson {
    #[serde(default)]
    pub name: String,
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
}

/// Names for the second operand of a binary construction: clashing names get
/// the first free `'`-suffix.
fn disjoint_names(g: &Graph, h: &Graph) -> Vec<String> {
    let mut used: BTreeSet<String> = g.names.iter().cloned().collect();
    h.names
        .iter()
        .map(|s| {
            let mut cand = s.clone();
            while used.contains(&cand) {
                cand.push('\'');
            }
            used.insert(cand.clone());
            cand
        })
        .collect()
}

/// Disjoint union of `g` and `h` plus every edge between them.
pub fn join(g: &Graph, h: &Graph) -> Graph {
    let hn = disjoint_names(g, h);
    let mut b = GraphBuilder::new(format!("{}+{}", g.name, h.name));
    for s in g.names.iter().chain(hn.iter()) {
        b.vertex(s.clone()).expect("names made disjoint");
    }
    let off = g.n();
    for (u, v) in g.edges() {
        b.edge_ids(u, v).expect("fresh edge");
    }
    for (u, v) in h.edges() {
        b.edge_ids(off + u, off + v).expect("fresh edge");
    }
    for u in 0..g.n() {
        for v in 0..h.n() {
            b.edge_ids(u, off + v).expect("fresh edge");
        }
    }
    b.build()
}

/// Cone with apex `apex` over `g`.
pub fn cone(apex: &str, g: &Graph) -> Graph {
    let p = Graph::from_edges::<&str>("pt", &[apex], &[]).expect("single point");
    join(&p, g)
}

/// Glues `h` onto `g` by identifying each `(a, b)` pair of `iso` (a in g, b in h).
/// Identified vertices keep g's names; other vertices of h are renamed on clash.
pub fn connected_sum(g: &Graph, h: &Graph, iso: &[(String, String)]) -> Result<Graph> {
    if iso.is_empty() {
        return Err(Error::InvalidIsomorphism("gluing set is empty".into()));
    }
    let a: Vec<usize> = iso.iter().map(|(x, _)| g.id_of(x)).collect::<Result<_>>()?;
    let bs: Vec<usize> = iso.iter().map(|(_, y)| h.id_of(y)).collect::<Result<_>>()?;
    let sa: BTreeSet<usize> = a.iter().copied().collect();
    let sb: BTreeSet<usize> = bs.iter().copied().collect();
    if sa.len() != a.len() || sb.len() != bs.len() {
        return Err(Error::InvalidIsomorphism("gluing map is not a bijection".into()));
    }
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if g.adjacent(a[i], a[j]) != h.adjacent(bs[i], bs[j]) {
                return Err(Error::InvalidIsomorphism(format!(
                    "{}-{} vs {}-{} disagree on adjacency",
                    g.names[a[i]], g.names[a[j]], h.names[bs[i]], h.names[bs[j]]
                )));
            }
        }
    }
    let mut image = vec![usize::MAX; h.n()];
    for (k, &y) in bs.iter().enumerate() {
        image[y] = a[k];
    }
    let mut used: BTreeSet<String> = g.names.iter().cloned().collect();
    let mut b = GraphBuilder::new(format!("{}#{}", g.name, h.name));
    for s in &g.names {
        b.vertex(s.clone())?;
    }
    for y in 0..h.n() {
        if image[y] == usize::MAX {
            let mut cand = h.names[y].clone();
            while used.contains(&cand) {
                cand.push('\'');
            }
            used.insert(cand.clone());
            image[y] = b.vertex(cand)?;
        }
    }
    for (u, v) in g.edges() {
        b.edge_ids_lenient(u, v);
    }
    for (u, v) in h.edges() {
        b.edge_ids_lenient(image[u], image[v]);
    }
    Ok(b.build())
}

/// One vertex per named member, adjacent when `meets` holds for the pair.
pub fn intersection_graph<T>(family: &[(String, T)], meets: impl Fn(&T, &T) -> bool) -> Result<Graph> {
    let mut b = GraphBuilder::new("nerve");
    for (name, _) in family {
        b.vertex(name.clone())?;
    }
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            if meets(&family[i].1, &family[j].1) {
                b.edge_ids(i, j)?;
            }
        }
    }
    Ok(b.build())
}

/// Cycle `c0 - c1 - ... - c(k-1) - c0`.
pub fn cycle(k: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    Graph::from_index_edges(&format!("C{k}"), k, &edges).expect("cycle").relabel(|s| format!("c{s}")).expect("distinct")
}

/// Path on `k` vertices `p0 - ... - p(k-1)`.
pub fn path(k: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (1..k).map(|i| (i - 1, i)).collect();
    Graph::from_index_edges(&format!("P{k}"), k, &edges).expect("path").relabel(|s| format!("p{s}")).expect("distinct")
}

pub fn complete(k: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            edges.push((i, j));
        }
    }
    Graph::from_index_edges(&format!("K{k}"), k, &edges).expect("complete").relabel(|s| format!("k{s}")).expect("distinct")
}
