//! Subfamilies of covers classified through their nerves, and merging the
//! interior of a segmented disk into one element.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Cover, Element};
use crate::classify::{disk_in, is_minimal_sphere, is_n_disk, is_n_manifold, is_n_sphere};
use crate::dtransform::{find_disk, merge_disk};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::verdict::{Budget, Outcome, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Disk,
    Sphere,
    Manifold,
    Unclassified,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SegmentedKind {
    pub kind: Kind,
    pub dim: usize,
    /// No when every recognizer refuted the nerve, Unknown when one ran out.
    pub outcome: Outcome,
    pub boundary: Vec<String>,
    pub interior: Vec<String>,
}

/// Classifies the nerve of the named subfamily as a k-sphere, k-disk or
/// k-manifold, in that order. A single element is the 0-disk.
pub fn segmented_kind(c: &Cover, sub: &[impl AsRef<str>], k: usize, budget: &Budget) -> Result<SegmentedKind> {
    let names: Vec<String> = sub.iter().map(|s| s.as_ref().to_string()).collect();
    for s in &names {
        c.index(s)?;
    }
    if names.len() == 1 {
        return Ok(SegmentedKind { kind: Kind::Disk, dim: 0, outcome: Outcome::Yes, boundary: vec![], interior: names });
    }
    let g = c.nerve().induced_names(&names)?;
    let mut outcomes = Vec::new();
    if k >= 1 {
        let s = is_n_sphere(&g, k, budget).verdict;
        if s.is_yes() {
            return Ok(SegmentedKind { kind: Kind::Sphere, dim: k, outcome: Outcome::Yes, boundary: vec![], interior: vec![] });
        }
        outcomes.push(s.outcome());
    }
    match is_n_disk(&g, k, budget) {
        Verdict::Yes(d) => {
            return Ok(SegmentedKind {
                kind: Kind::Disk,
                dim: k,
                outcome: Outcome::Yes,
                boundary: d.boundary().to_vec(),
                interior: d.interior().to_vec(),
            })
        }
        v => outcomes.push(v.outcome()),
    }
    if k >= 1 {
        let m = is_n_manifold(&g, k, budget);
        if m.is_yes() {
            return Ok(SegmentedKind { kind: Kind::Manifold, dim: k, outcome: Outcome::Yes, boundary: vec![], interior: vec![] });
        }
        outcomes.push(m.outcome());
    }
    let outcome = if outcomes.iter().all(|&o| o == Outcome::No) { Outcome::No } else { Outcome::Unknown };
    Ok(SegmentedKind { kind: Kind::Unclassified, dim: k, outcome, boundary: vec![], interior: vec![] })
}

#[derive(Clone, Debug)]
pub struct CoverMerge {
    pub cover: Cover,
    pub survivor: String,
    pub interior: Vec<String>,
    pub boundary: Vec<String>,
    pub before: usize,
    pub after: usize,
}

fn edge_set(g: &Graph) -> BTreeSet<(String, String)> {
    g.edge_names().into_iter().map(|(a, b)| if a < b { (a, b) } else { (b, a) }).collect()
}

/// Replaces the interior elements of the segmented n-disk `sub` by their
/// union. Fails unless `sub` is certified, and fails if the nerve of the
/// result differs from merging the same disk in the nerve.
pub fn merge_cover(c: &Cover, sub: &[impl AsRef<str>], n: usize, budget: &Budget) -> Result<CoverMerge> {
    let nerve = c.nerve();
    let ids = nerve.ids(sub)?;
    let d = match disk_in(&nerve, &ids, n, budget) {
        Verdict::Yes(d) if !d.interior().is_empty() => d,
        _ => return Err(Error::Uncertified(format!("subfamily is not a certified segmented {n}-disk"))),
    };
    let survivor = nerve.fresh_name("m");
    let int: BTreeSet<&str> = d.interior().iter().map(String::as_str).collect();
    let mut boxes = Vec::new();
    let mut elements = Vec::new();
    for e in c.elements() {
        if int.contains(e.name.as_str()) {
            boxes.extend(e.boxes.iter().cloned());
        } else {
            elements.push(e.clone());
        }
    }
    elements.push(Element::new(survivor.clone(), boxes));
    let cover = Cover::new(c.dim(), c.periods().to_vec(), elements)?;
    let expected = merge_disk(&nerve, &d, Some(&survivor))?;
    let actual = cover.nerve();
    let same_points: BTreeSet<&String> = expected.names().iter().collect();
    if same_points != actual.names().iter().collect() || edge_set(&expected) != edge_set(&actual) {
        return Err(Error::Geometry("nerve of the merged cover differs from the merged nerve".into()));
    }
    Ok(CoverMerge { cover, survivor, interior: d.interior().to_vec(), boundary: d.boundary().to_vec(), before: c.len(), after: c.len() + 1 - int.len() })
}

/// Merges segmented disks found in the nerve until it is the minimal
/// n-sphere or no disk with two or more interior elements is found.
pub fn merge_to_minimal(c: &Cover, n: usize, budget: &Budget, seed: u64) -> Result<(Cover, Vec<CoverMerge>)> {
    let mut cur = c.clone();
    let mut steps = Vec::new();
    for round in 0u64.. {
        let nerve = cur.nerve();
        if is_minimal_sphere(&nerve) == Some(n) {
            break;
        }
        let Some(d) = find_disk(&nerve, n, budget, seed.wrapping_add(round)) else { break };
        let m = merge_cover(&cur, d.vertices(), n, budget)?;
        cur = m.cover.clone();
        steps.push(m);
    }
    Ok((cur, steps))
}
