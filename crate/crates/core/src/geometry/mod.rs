//! Axis-aligned boxes with exact rational endpoints, covers by unions of
//! boxes, and the lump / locally centered checks on them.
//!
//! Periodic axes model tori: a box must be shorter than the period along such
//! an axis, and intersections are taken over every translate, so two boxes may
//! meet in more than one piece.

mod covers;
mod digitize;
mod segmented;

pub use covers::{
    brick_tiling_patch, cube_boundary_cover, grid_cubes_meeting, refined_sphere_cover, torus_cover_4x4,
};
pub use digitize::{digitize, refinement_sequence, Digitization, ImplicitSurface, Level, Shape, Stabilization};
pub use segmented::{merge_cover, merge_to_minimal, segmented_kind, CoverMerge, Kind, SegmentedKind};

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{intersection_graph, Graph};
use crate::homotopy::contractible_outcome;
use crate::verdict::{Budget, Certificate, Outcome, Verdict};

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Finite decimal when the denominator allows it, `p/q` otherwise.
pub fn format_q(x: &Q) -> String {
    let mut d = *x.denom();
    let (mut twos, mut fives) = (0u32, 0u32);
    while d % 2 == 0 {
        d /= 2;
        twos += 1;
    }
    while d % 5 == 0 {
        d /= 5;
        fives += 1;
    }
    if d != 1 {
        return format!("{}/{}", x.numer(), x.denom());
    }
    let digits = twos.max(fives);
    if digits == 0 {
        return x.numer().to_string();
    }
    let scale = 10i128.pow(digits);
    let v = *x.numer() as i128 * scale / *x.denom() as i128;
    let sign = if v < 0 { "-" } else { "" };
    let v = v.abs();
    let s = format!("{}.{:0width$}", v / scale, v % scale, width = digits as usize);
    format!("{sign}{}", s.trim_end_matches('0').trim_end_matches('.'))
}

pub fn parse_q(s: &str) -> Result<Q> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not an exact number: `{s}`"));
    if let Some((a, b)) = s.split_once('/') {
        let a: i64 = a.trim().parse().map_err(|_| bad())?;
        let b: i64 = b.trim().parse().map_err(|_| bad())?;
        if b == 0 {
            return Err(bad());
        }
        return Ok(Q::new(a, b));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(r) => (true, r),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{int}{frac}");
    let num: i64 = digits.parse().map_err(|_| bad())?;
    let den = 10i64.checked_pow(frac.len() as u32).ok_or_else(bad)?;
    let v = Q::new(num, den);
    Ok(if neg { -v } else { v })
}

/// Closed axis-aligned box; degenerate axes (`lo == hi`) are allowed.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cuboid {
    iv: Vec<[Q; 2]>,
}

impl fmt::Debug for Cuboid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iv.iter().map(|[a, b]| format!("[{}, {}]", format_q(a), format_q(b))).collect();
        write!(f, "{}", parts.join("x"))
    }
}

impl Cuboid {
    pub fn new(iv: Vec<[Q; 2]>) -> Result<Cuboid> {
        if iv.iter().any(|[a, b]| a > b) {
            return Err(Error::Geometry("interval with lo > hi".into()));
        }
        Ok(Cuboid { iv })
    }

    /// Box from integer bounds.
    pub fn int(bounds: &[(i64, i64)]) -> Cuboid {
        Cuboid::new(bounds.iter().map(|&(a, b)| [q(a), q(b)]).collect()).expect("ordered bounds")
    }

    pub fn intervals(&self) -> &[[Q; 2]] {
        &self.iv
    }

    pub fn ambient(&self) -> usize {
        self.iv.len()
    }

    /// Number of non-degenerate axes.
    pub fn dim(&self) -> usize {
        self.iv.iter().filter(|[a, b]| a < b).count()
    }

    fn contains_box(&self, o: &Cuboid) -> bool {
        self.iv.iter().zip(&o.iv).all(|([a, b], [c, d])| a <= c && d <= b)
    }
}

fn axis_meet(a: [Q; 2], b: [Q; 2], period: Option<Q>, out: &mut Vec<[Q; 2]>) {
    out.clear();
    match period {
        None => {
            let (lo, hi) = (a[0].max(b[0]), a[1].min(b[1]));
            if lo <= hi {
                out.push([lo, hi]);
            }
        }
        Some(p) => {
            let k0 = ((a[0] - b[0]) / p).floor().to_integer();
            for k in k0 - 1..=k0 + 2 {
                let s = p * q(k);
                let (lo, hi) = (a[0].max(b[0] + s), a[1].min(b[1] + s));
                if lo <= hi && !out.contains(&[lo, hi]) {
                    out.push([lo, hi]);
                }
            }
        }
    }
}

/// Every piece of `a ∩ b`, in the coordinates of `a`.
pub fn box_meet(a: &Cuboid, b: &Cuboid, periods: &[Option<Q>]) -> Vec<Cuboid> {
    let mut acc: Vec<Vec<[Q; 2]>> = vec![Vec::new()];
    let mut pieces = Vec::new();
    for (ax, (&ia, &ib)) in a.iv.iter().zip(&b.iv).enumerate() {
        axis_meet(ia, ib, periods.get(ax).copied().flatten(), &mut pieces);
        if pieces.is_empty() {
            return Vec::new();
        }
        acc = acc
            .into_iter()
            .flat_map(|pre| {
                pieces.iter().map(move |&iv| {
                    let mut v = pre.clone();
                    v.push(iv);
                    v
                })
            })
            .collect();
    }
    acc.into_iter().map(|iv| Cuboid { iv }).collect()
}

fn meet_sets(a: &[Cuboid], b: &[Cuboid], periods: &[Option<Q>]) -> Vec<Cuboid> {
    let mut out = Vec::new();
    for x in a {
        for y in b {
            out.extend(box_meet(x, y, periods));
        }
    }
    simplify(out)
}

/// Drops boxes inside other boxes and fuses pairs that differ on one axis
/// with overlapping or touching intervals there.
pub fn simplify(mut boxes: Vec<Cuboid>) -> Vec<Cuboid> {
    boxes.sort();
    boxes.dedup();
    loop {
        let mut changed = false;
        'outer: for i in 0..boxes.len() {
            for j in 0..boxes.len() {
                if i == j {
                    continue;
                }
                if boxes[i].contains_box(&boxes[j]) {
                    boxes.remove(j);
                    changed = true;
                    break 'outer;
                }
                let diff: Vec<usize> = (0..boxes[i].iv.len()).filter(|&k| boxes[i].iv[k] != boxes[j].iv[k]).collect();
                if let [k] = diff[..] {
                    let ([a, b], [c, d]) = (boxes[i].iv[k], boxes[j].iv[k]);
                    if a <= d && c <= b {
                        boxes[i].iv[k] = [a.min(c), b.max(d)];
                        boxes.remove(j);
                        changed = true;
                        break 'outer;
                    }
                }
            }
        }
        if !changed {
            return boxes;
        }
    }
}

/// Exact intersection of two or more elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Meet {
    pub boxes: Vec<Cuboid>,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Element {
    pub name: String,
    pub boxes: Vec<Cuboid>,
}

impl Element {
    pub fn new(name: impl Into<String>, boxes: Vec<Cuboid>) -> Element {
        Element { name: name.into(), boxes }
    }

    pub fn dim(&self) -> usize {
        self.boxes.iter().map(Cuboid::dim).max().unwrap_or(0)
    }
}

/// Named elements, each a union of boxes in a common ambient space.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    dim: usize,
    periods: Vec<Option<Q>>,
    elements: Vec<Element>,
}

impl Cover {
    pub fn new(dim: usize, periods: Vec<Option<Q>>, elements: Vec<Element>) -> Result<Cover> {
        if periods.len() != dim {
            return Err(Error::Geometry(format!("{} periods for ambient dimension {dim}", periods.len())));
        }
        let mut seen = BTreeSet::new();
        for e in &elements {
            if !seen.insert(e.name.as_str()) {
                return Err(Error::Geometry(format!("duplicate element `{}`", e.name)));
            }
            if e.boxes.is_empty() {
                return Err(Error::Geometry(format!("element `{}` has no boxes", e.name)));
            }
            for b in &e.boxes {
                if b.ambient() != dim {
                    return Err(Error::Geometry(format!("element `{}` has a box of the wrong dimension", e.name)));
                }
                for (iv, p) in b.iv.iter().zip(&periods) {
                    if let Some(p) = p {
                        if !p.is_positive() || iv[1] - iv[0] >= *p {
                            return Err(Error::Geometry(format!("element `{}` wraps a periodic axis", e.name)));
                        }
                    }
                }
            }
        }
        Ok(Cover { dim, periods, elements })
    }

    /// Ambient dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Dimension of the elements, the `n` of the lump conditions.
    pub fn manifold_dim(&self) -> usize {
        self.elements.iter().map(Element::dim).max().unwrap_or(0)
    }

    pub fn periods(&self) -> &[Option<Q>] {
        &self.periods
    }

    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index(&self, name: &str) -> Result<usize> {
        self.elements
            .iter()
            .position(|e| e.name == name)
            .ok_or_else(|| Error::Geometry(format!("no element `{name}`")))
    }

    pub fn element(&self, name: &str) -> Result<&Element> {
        Ok(&self.elements[self.index(name)?])
    }

    pub fn intersect(&self, a: usize, b: usize) -> Option<Meet> {
        self.common(&[a, b])
    }

    /// Common intersection of the listed elements.
    pub fn common(&self, ids: &[usize]) -> Option<Meet> {
        let (&first, rest) = ids.split_first()?;
        let mut acc = simplify(self.elements[first].boxes.clone());
        for &i in rest {
            acc = meet_sets(&acc, &self.elements[i].boxes, &self.periods);
            if acc.is_empty() {
                return None;
            }
        }
        let dim = acc.iter().map(Cuboid::dim).max().unwrap_or(0);
        Some(Meet { boxes: acc, dim })
    }

    pub fn nerve(&self) -> Graph {
        let fam: Vec<(String, &Element)> = self.elements.iter().map(|e| (e.name.clone(), e)).collect();
        let periods = &self.periods;
        intersection_graph(&fam, |a, b| {
            a.boxes.iter().any(|x| b.boxes.iter().any(|y| !box_meet(x, y, periods).is_empty()))
        })
        .expect("element names are unique")
        .with_name("nerve")
    }

    /// Sub-cover on the named elements, in cover order.
    pub fn restrict(&self, names: &[impl AsRef<str>]) -> Result<Cover> {
        let want: BTreeSet<&str> = names.iter().map(AsRef::as_ref).collect();
        for w in &want {
            self.index(w)?;
        }
        let elements = self.elements.iter().filter(|e| want.contains(e.name.as_str())).cloned().collect();
        Cover::new(self.dim, self.periods.clone(), elements)
    }

    pub fn to_json(&self) -> CoverJson {
        CoverJson {
            dim: self.dim,
            periods: self.periods.iter().map(|p| p.as_ref().map(|p| Num::Str(format_q(p)))).collect(),
            elements: self
                .elements
                .iter()
                .map(|e| ElementJson {
                    name: e.name.clone(),
                    boxes: e
                        .boxes
                        .iter()
                        .map(|b| b.iv.iter().map(|[a, c]| [format_q(a), format_q(c)]).collect())
                        .collect(),
                })
                .collect(),
        }
    }

    pub fn from_json(j: &CoverJson) -> Result<Cover> {
        let periods = j.periods.iter().map(|p| p.as_ref().map(Num::to_q).transpose()).collect::<Result<Vec<_>>>()?;
        let mut elements = Vec::new();
        for e in &j.elements {
            let mut boxes = Vec::new();
            for b in &e.boxes {
                let iv = b.iter().map(|[a, c]| Ok([parse_q(a)?, parse_q(c)?])).collect::<Result<Vec<_>>>()?;
                boxes.push(Cuboid::new(iv)?);
            }
            elements.push(Element::new(e.name.clone(), boxes));
        }
        Cover::new(j.dim, periods, elements)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("plain data")
    }

    pub fn parse_json(s: &str) -> Result<Cover> {
        let j: CoverJson = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Cover::from_json(&j)
    }
}

/// A number in cover files: an exact decimal or fraction string, or a JSON
/// number (integers only, to stay exact).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    fn to_q(&self) -> Result<Q> {
        match self {
            Num::Int(i) => Ok(q(*i)),
            Num::Str(s) => parse_q(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub name: String,
    pub boxes: Vec<Vec<[String; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoverJson {
    pub dim: usize,
    pub periods: Vec<Option<Num>>,
    pub elements: Vec<ElementJson>,
}

/// Whether a union of boxes passes as a `d`-disk: every box has dimension
/// `d`, the boxes are connected through meets of dimension `d - 1`, and
/// their intersection graph is contractible. A single box always passes.
fn disk_like(boxes: &[Cuboid], d: usize, periods: &[Option<Q>], budget: &Budget) -> bool {
    if boxes.is_empty() || boxes.iter().any(|b| b.dim() != d) {
        return false;
    }
    if boxes.len() == 1 {
        return true;
    }
    if d == 0 {
        return false;
    }
    let fam: Vec<(String, &Cuboid)> = boxes.iter().enumerate().map(|(i, b)| (format!("p{i}"), b)).collect();
    let meets = |a: &&Cuboid, b: &&Cuboid| !box_meet(a, b, periods).is_empty();
    let faces = |a: &&Cuboid, b: &&Cuboid| box_meet(a, b, periods).iter().any(|m| m.dim() + 1 >= d);
    let nerve = intersection_graph(&fam, meets).expect("generated names");
    let dual = intersection_graph(&fam, faces).expect("generated names");
    dual.is_connected() && contractible_outcome(&nerve, budget) == Outcome::Yes
}

/// Lump check on a subfamily: at most `n + 1` elements, a common point, and
/// every j-wise intersection an `(n - j + 1)`-disk.
pub fn is_lump(c: &Cover, names: &[impl AsRef<str>], budget: &Budget) -> Result<Verdict<()>> {
    let ids: Vec<usize> = names.iter().map(|s| c.index(s.as_ref())).collect::<Result<_>>()?;
    let n = c.manifold_dim();
    let k = ids.len();
    if k == 0 {
        return Err(Error::Geometry("empty subfamily".into()));
    }
    if k > n + 1 {
        return Ok(Verdict::No(Certificate::reason(format!("{k} elements exceed the limit of {}", n + 1))));
    }
    for mask in 1u32..(1 << k) {
        let sub: Vec<usize> = (0..k).filter(|&i| mask & (1 << i) != 0).map(|i| ids[i]).collect();
        if let Some(bad) = lump_failure(c, &sub, n, budget) {
            return Ok(Verdict::No(bad));
        }
    }
    Ok(Verdict::Yes(()))
}

fn lump_failure(c: &Cover, sub: &[usize], n: usize, budget: &Budget) -> Option<Certificate> {
    let names = || sub.iter().map(|&i| c.elements[i].name.clone()).collect::<Vec<_>>();
    let j = sub.len();
    let Some(meet) = c.common(sub) else {
        return Some(Certificate { reason: "empty common intersection".into(), vertices: names(), ..Default::default() });
    };
    if j > n + 1 {
        return Some(Certificate {
            reason: format!("{j} elements share a point, more than {}", n + 1),
            vertices: names(),
            ..Default::default()
        });
    }
    let want = n + 1 - j;
    if !disk_like(&meet.boxes, want, &c.periods, budget) {
        return Some(Certificate {
            reason: format!("intersection of {j} elements is not a {want}-disk (dimension {})", meet.dim),
            vertices: names(),
            ..Default::default()
        });
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LclWitness {
    pub elements: usize,
    pub dim: usize,
    /// Largest family with a common point.
    pub max_lump: usize,
    pub lumps_checked: usize,
}

/// Locally centered lump check: every family of pairwise meeting elements has
/// a common point, and every such family is a lump.
pub fn is_lcl(c: &Cover, budget: &Budget) -> Verdict<LclWitness> {
    let n = c.manifold_dim();
    let g = c.nerve();
    let found: Vec<std::result::Result<(usize, usize), Certificate>> = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let mut stats = (0usize, 0usize);
            let cand: Vec<usize> = g.neighbors(v).iter().copied().filter(|&w| w > v).collect();
            grow(c, &g, &mut vec![v], &cand, n, budget, &mut stats)?;
            Ok(stats)
        })
        .collect();
    let mut w = LclWitness { elements: c.len(), dim: n, max_lump: 0, lumps_checked: 0 };
    for r in found {
        match r {
            Ok((mx, cnt)) => {
                w.max_lump = w.max_lump.max(mx);
                w.lumps_checked += cnt;
            }
            Err(cert) => return Verdict::No(cert),
        }
    }
    Verdict::Yes(w)
}

fn grow(
    c: &Cover,
    g: &Graph,
    clique: &mut Vec<usize>,
    cand: &[usize],
    n: usize,
    budget: &Budget,
    stats: &mut (usize, usize),
) -> std::result::Result<(), Certificate> {
    if let Some(mut cert) = lump_failure(c, clique, n, budget) {
        if cert.reason.starts_with("empty") {
            cert.reason = "pairwise meeting elements without a common point".into();
        }
        return Err(cert);
    }
    stats.0 = stats.0.max(clique.len());
    stats.1 += 1;
    for (i, &w) in cand.iter().enumerate() {
        let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&x| g.adjacent(w, x)).collect();
        clique.push(w);
        let r = grow(c, g, clique, &next, n, budget, stats);
        clique.pop();
        r?;
    }
    Ok(())
}
