//! Cover generators: cube boundaries, their strip refinements, running-bond
//! brick patches, the 16-element torus cover and grid cubes meeting a box.

use super::{q, qf, Cover, Cuboid, Element, Q};
use crate::error::{Error, Result};

fn side(s: usize) -> char {
    if s == 0 {
        '-'
    } else {
        '+'
    }
}

/// The 2n+2 facets of the unit (n+1)-cube, named `F<axis><sign>`.
pub fn cube_boundary_cover(n: usize) -> Result<Cover> {
    refined(n, 1, |a, s, _| format!("F{a}{}", side(s)))
}

/// Facets of the (n+1)-cube of side `strips`, each cut into `strips` unit
/// strips across the next axis, so that cuts on neighbouring facets never
/// meet at a common point of a shared edge.
pub fn refined_sphere_cover(n: usize, strips: usize) -> Result<Cover> {
    refined(n, strips, |a, s, i| format!("F{a}{}s{i}", side(s)))
}

fn refined(n: usize, strips: usize, name: impl Fn(usize, usize, usize) -> String) -> Result<Cover> {
    if n == 0 || strips == 0 {
        return Err(Error::Geometry("need n >= 1 and at least one strip".into()));
    }
    let d = n + 1;
    let k = strips as i64;
    let mut elements = Vec::new();
    for a in 0..d {
        for s in 0..2 {
            for i in 0..k {
                let iv = (0..d)
                    .map(|ax| {
                        if ax == a {
                            let c = q(s as i64 * k);
                            [c, c]
                        } else if ax == (a + 1) % d && strips > 1 {
                            [q(i), q(i + 1)]
                        } else {
                            [q(0), q(k)]
                        }
                    })
                    .collect();
                elements.push(Element::new(name(a, s, i as usize), vec![Cuboid::new(iv)?]));
            }
        }
    }
    Cover::new(d, vec![None; d], elements)
}

fn clip(iv: [Q; 2], lo: Q, hi: Q) -> Option<[Q; 2]> {
    let (a, b) = (iv[0].max(lo), iv[1].min(hi));
    (a < b).then_some([a, b])
}

/// Running-bond patch of 2x1 bricks, alternate rows shifted by one unit and
/// clipped to the patch. `extent` is bricks per row and rows for `n = 2`;
/// for `n = 3` it is bricks along x and y and the number of layers, with odd
/// layers turned a quarter and shifted half a unit in x and y.
pub fn brick_tiling_patch(n: usize, extent: &[usize]) -> Result<Cover> {
    if extent.len() != n || extent.iter().any(|&e| e < 2) {
        return Err(Error::Geometry(format!("need {n} extents, each at least 2")));
    }
    match n {
        2 => {
            let (bx, rows) = (extent[0] as i64, extent[1] as i64);
            let mut els = Vec::new();
            for r in 0..rows {
                for i in 0..=bx {
                    let x0 = 2 * i - r % 2;
                    if let Some(x) = clip([q(x0), q(x0 + 2)], q(0), q(2 * bx)) {
                        els.push(Element::new(format!("b{r}.{i}"), vec![Cuboid::new(vec![x, [q(r), q(r + 1)]])?]));
                    }
                }
            }
            Cover::new(2, vec![None; 2], els)
        }
        3 => {
            let (ex, ey, layers) = (extent[0] as i64, extent[1] as i64, extent[2] as i64);
            let (wx, wy) = (q(2 * ex), q(2 * ey));
            let half = qf(1, 2);
            let mut els = Vec::new();
            for l in 0..layers {
                let z = [q(l), q(l + 1)];
                if l % 2 == 0 {
                    for r in 0..2 * ey {
                        for i in 0..=ex {
                            let x0 = 2 * i - r % 2;
                            if let Some(x) = clip([q(x0), q(x0 + 2)], q(0), wx) {
                                let b = Cuboid::new(vec![x, [q(r), q(r + 1)], z])?;
                                els.push(Element::new(format!("b{l}.{r}.{i}"), vec![b]));
                            }
                        }
                    }
                } else {
                    for c in -1..2 * ex {
                        let xs = [q(c) + half, q(c + 1) + half];
                        let Some(x) = clip(xs, q(0), wx) else { continue };
                        for i in -1..=ey {
                            let y0 = q(2 * i - c.rem_euclid(2)) + half;
                            if let Some(y) = clip([y0, y0 + q(2)], q(0), wy) {
                                let b = Cuboid::new(vec![x, y, z])?;
                                els.push(Element::new(format!("b{l}.{c}.{i}"), vec![b]));
                            }
                        }
                    }
                }
            }
            Cover::new(3, vec![None; 3], els)
        }
        _ => Err(Error::Geometry("brick patches exist for n = 2 and n = 3".into())),
    }
}

/// Sixteen two-box staircase tiles on the torus with periods 8 and 4. Tile
/// `(i, j)` is named `t<i><j>`; its nerve is the triangulated 4x4 torus.
pub fn torus_cover_4x4() -> Cover {
    let half = qf(1, 2);
    let mut els = Vec::new();
    for i in 0..4i64 {
        for j in 0..4i64 {
            let (x, y) = (q(2 * i), q(j));
            let low = Cuboid::new(vec![[x, x + q(2)], [y, y + half]]).expect("ordered");
            let high = Cuboid::new(vec![[x + half, x + q(2) + half], [y + half, y + q(1)]]).expect("ordered");
            els.push(Element::new(format!("t{i}{j}"), vec![low, high]));
        }
    }
    Cover::new(2, vec![Some(q(8)), Some(q(4))], els).expect("valid torus cover")
}

/// Closed grid cubes of edge `h` (aligned at the origin) meeting `b`.
pub fn grid_cubes_meeting(b: &Cuboid, h: Q) -> Result<Cover> {
    if h <= q(0) {
        return Err(Error::Geometry("grid step must be positive".into()));
    }
    let ranges: Vec<(i64, i64)> = b
        .intervals()
        .iter()
        .map(|[lo, hi]| ((*lo / h).ceil().to_integer() - 1, (*hi / h).floor().to_integer()))
        .collect();
    let mut idx: Vec<Vec<i64>> = vec![Vec::new()];
    for &(a, z) in &ranges {
        idx = idx.into_iter().flat_map(|p| (a..=z).map(move |k| [p.clone(), vec![k]].concat())).collect();
    }
    let mut els = Vec::new();
    for p in idx {
        let iv: Vec<[Q; 2]> = p.iter().map(|&k| [h * q(k), h * q(k + 1)]).collect();
        let meets = iv.iter().zip(b.intervals()).all(|([a, c], [lo, hi])| a <= hi && lo <= c);
        if meets {
            let name = format!("u{}", p.iter().map(i64::to_string).collect::<Vec<_>>().join("."));
            els.push(Element::new(name, vec![Cuboid::new(iv)?]));
        }
    }
    Cover::new(b.ambient(), vec![None; b.ambient()], els)
}
