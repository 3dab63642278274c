//! Grid digitization of implicit surfaces and refinement sequences.

use std::collections::HashMap;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{format_q, q, qf, Q};
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder};
use crate::homotopy::reduce;
use crate::invariants::{invariants, trim_betti};
use crate::verdict::Budget;

type R = Ratio<i128>;

/// Sample points across all cubes are capped at this count.
const SAMPLE_CAP: usize = 40_000_000;
const CUBE_CAP: usize = 400_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Shape {
    /// `|p| = radius` in 3D.
    Sphere { radius: String },
    /// Torus around the z axis.
    Torus { major: String, minor: String },
    /// `z = 0`, restricted to the bounding box.
    Plane,
    /// Boundary of the cube `max |p_i| = half`.
    BoxBoundary { half: String },
    /// `|p| = radius` in 2D.
    Circle { radius: String },
}

/// Sign field with a bounding box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitSurface {
    shape: Shape,
    params: Vec<R>,
    lo: Vec<Q>,
    hi: Vec<Q>,
}

fn r(x: Q) -> R {
    R::new(*x.numer() as i128, *x.denom() as i128)
}

fn cube_box(d: usize, half: Q) -> (Vec<Q>, Vec<Q>) {
    (vec![-half; d], vec![half; d])
}

impl ImplicitSurface {
    pub fn sphere(radius: Q) -> ImplicitSurface {
        let (lo, hi) = cube_box(3, radius + qf(1, 2));
        ImplicitSurface { shape: Shape::Sphere { radius: format_q(&radius) }, params: vec![r(radius)], lo, hi }
    }

    pub fn torus(major: Q, minor: Q) -> ImplicitSurface {
        let a = major + minor + qf(1, 2);
        let c = minor + qf(1, 2);
        ImplicitSurface {
            shape: Shape::Torus { major: format_q(&major), minor: format_q(&minor) },
            params: vec![r(major), r(minor)],
            lo: vec![-a, -a, -c],
            hi: vec![a, a, c],
        }
    }

    /// The plane `z = 0` over `[-1, 1]^2`.
    pub fn plane_patch() -> ImplicitSurface {
        ImplicitSurface { shape: Shape::Plane, params: vec![], lo: vec![q(-1), q(-1), qf(-1, 2)], hi: vec![q(1), q(1), qf(1, 2)] }
    }

    pub fn box_boundary(half: Q) -> ImplicitSurface {
        let (lo, hi) = cube_box(3, half + qf(1, 2));
        ImplicitSurface { shape: Shape::BoxBoundary { half: format_q(&half) }, params: vec![r(half)], lo, hi }
    }

    pub fn circle(radius: Q) -> ImplicitSurface {
        let (lo, hi) = cube_box(2, radius + qf(1, 2));
        ImplicitSurface { shape: Shape::Circle { radius: format_q(&radius) }, params: vec![r(radius)], lo, hi }
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    /// Exact field value; its sign says which side of the surface `p` is on.
    pub fn value(&self, p: &[R]) -> R {
        let sq = |v: &[R]| v.iter().fold(R::from_integer(0), |acc, x| acc + x * x);
        match self.shape {
            Shape::Sphere { .. } | Shape::Circle { .. } => sq(p) - self.params[0] * self.params[0],
            Shape::Torus { .. } => {
                let (a, b) = (self.params[0], self.params[1]);
                let s = sq(p) + a * a - b * b;
                s * s - R::from_integer(4) * a * a * sq(&p[..2])
            }
            Shape::Plane => p[2],
            Shape::BoxBoundary { .. } => {
                p.iter().map(|x| if *x < R::from_integer(0) { -x } else { *x }).max().expect("nonempty") - self.params[0]
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Digitization {
    pub h: Q,
    /// Grid indices of the selected cubes; cube `k` spans `[k h, (k+1) h]`.
    pub cubes: Vec<Vec<i64>>,
    pub graph: Graph,
}

/// Selects grid cubes of edge `h` on which the field changes sign or
/// vanishes, sampling `samples` evenly spaced points per axis (corners
/// included), and returns their intersection graph: cubes are adjacent when
/// their closed volumes meet.
pub fn digitize(s: &ImplicitSurface, h: Q, samples: usize) -> Result<Digitization> {
    if h <= q(0) {
        return Err(Error::Geometry("grid step must be positive".into()));
    }
    let samples = samples.max(2);
    let d = s.dim();
    let k_lo: Vec<i64> = s.lo.iter().map(|x| (*x / h).floor().to_integer()).collect();
    let k_hi: Vec<i64> = s.hi.iter().map(|x| (*x / h).ceil().to_integer()).collect();
    let cells: Vec<usize> = k_lo.iter().zip(&k_hi).map(|(a, b)| (b - a) as usize).collect();
    let step = samples - 1;
    let lat: Vec<usize> = cells.iter().map(|c| c * step + 1).collect();
    let total: usize = lat.iter().product();
    if total > SAMPLE_CAP {
        return Err(Error::Geometry(format!("{total} sample points exceed the cap of {SAMPLE_CAP}")));
    }
    let fine = r(h) / R::from_integer(step as i128);
    let origin: Vec<R> = k_lo.iter().map(|&k| r(h) * R::from_integer(k as i128)).collect();
    let coords = |mut flat: usize| -> Vec<usize> {
        let mut c = vec![0; d];
        for ax in (0..d).rev() {
            c[ax] = flat % lat[ax];
            flat /= lat[ax];
        }
        c
    };
    let signs: Vec<i8> = (0..total)
        .into_par_iter()
        .map(|f| {
            let c = coords(f);
            let p: Vec<R> = (0..d).map(|ax| origin[ax] + fine * R::from_integer(c[ax] as i128)).collect();
            let v = s.value(&p);
            if v > R::from_integer(0) {
                1
            } else if v < R::from_integer(0) {
                -1
            } else {
                0
            }
        })
        .collect();
    let flat = |c: &[usize]| c.iter().zip(&lat).fold(0usize, |acc, (x, l)| acc * l + x);
    let ncells: usize = cells.iter().product();
    let mut cubes: Vec<Vec<i64>> = (0..ncells)
        .into_par_iter()
        .filter_map(|ci| {
            let mut cc = vec![0usize; d];
            let mut rem = ci;
            for ax in (0..d).rev() {
                cc[ax] = rem % cells[ax];
                rem /= cells[ax];
            }
            let (mut pos, mut neg) = (false, false);
            let mut off = vec![0usize; d];
            loop {
                let p: Vec<usize> = (0..d).map(|ax| cc[ax] * step + off[ax]).collect();
                match signs[flat(&p)] {
                    1 => pos = true,
                    -1 => neg = true,
                    _ => {
                        pos = true;
                        neg = true;
                    }
                }
                if pos && neg {
                    return Some((0..d).map(|ax| k_lo[ax] + cc[ax] as i64).collect());
                }
                let mut ax = 0;
                loop {
                    if ax == d {
                        return None;
                    }
                    off[ax] += 1;
                    if off[ax] <= step {
                        break;
                    }
                    off[ax] = 0;
                    ax += 1;
                }
            }
        })
        .collect();
    if cubes.is_empty() {
        return Err(Error::Geometry("no grid cube meets the surface".into()));
    }
    if cubes.len() > CUBE_CAP {
        return Err(Error::Geometry(format!("{} cubes exceed the cap of {CUBE_CAP}", cubes.len())));
    }
    cubes.sort();
    let graph = king_graph(&cubes);
    Ok(Digitization { h, cubes, graph })
}

fn king_graph(cubes: &[Vec<i64>]) -> Graph {
    let d = cubes[0].len();
    let at: HashMap<&[i64], usize> = cubes.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    let mut b = GraphBuilder::new("digitization");
    for c in cubes {
        b.vertex(format!("q{}", c.iter().map(i64::to_string).collect::<Vec<_>>().join("."))).expect("distinct cubes");
    }
    let offsets: Vec<Vec<i64>> = (0..3usize.pow(d as u32))
        .map(|mut t| {
            (0..d)
                .map(|_| {
                    let o = (t % 3) as i64 - 1;
                    t /= 3;
                    o
                })
                .collect()
        })
        .filter(|o: &Vec<i64>| o.iter().any(|&x| x != 0))
        .collect();
    for (i, c) in cubes.iter().enumerate() {
        for o in &offsets {
            let nb: Vec<i64> = c.iter().zip(o).map(|(a, b)| a + b).collect();
            if let Some(&j) = at.get(nb.as_slice()) {
                if i < j {
                    b.edge_ids(i, j).expect("distinct");
                }
            }
        }
    }
    b.build()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Level {
    pub h: String,
    pub cubes: usize,
    pub reduced_points: usize,
    pub chi: i64,
    pub betti: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stabilization {
    pub levels: Vec<Level>,
    /// First level from which (χ, Betti) stay constant, when at least two
    /// levels agree at the end.
    pub stable_from: Option<usize>,
}

/// Digitizes at `h0, h0/2, ..., h0/2^(k-1)`, reduces each nerve by point
/// deletions and records its invariants.
pub fn refinement_sequence(s: &ImplicitSurface, h0: Q, k: usize, samples: usize, budget: &Budget) -> Result<Stabilization> {
    if k < 2 {
        return Err(Error::Geometry("need at least two levels".into()));
    }
    let mut levels = Vec::new();
    let mut h = h0;
    for _ in 0..k {
        let dg = digitize(s, h, samples)?;
        let (red, _) = reduce(&dg.graph, budget);
        let inv = invariants(&red);
        let betti = trim_betti(&inv.betti);
        levels.push(Level { h: format_q(&h), cubes: dg.cubes.len(), reduced_points: red.n(), chi: inv.chi, betti });
        h /= q(2);
    }
    let key = |l: &Level| (l.chi, l.betti.clone());
    let last = key(levels.last().expect("k >= 2"));
    let mut from = levels.len() - 1;
    while from > 0 && key(&levels[from - 1]) == last {
        from -= 1;
    }
    let stable_from = (from < levels.len() - 1).then_some(from);
    Ok(Stabilization { levels, stable_from })
}
