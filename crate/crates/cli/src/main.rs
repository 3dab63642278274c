mod check;
mod io;

use std::collections::HashMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use digitopo::canon::is_isomorphic;
use digitopo::classify::{disk_in, minimal_sphere, DiskReport};
use digitopo::dtransform::{compress, merge_with_trace, split_vertex};
use digitopo::generators::{subdivided_sphere, torus16};
use digitopo::geometry::{
    brick_tiling_patch, cube_boundary_cover, digitize, is_lcl, parse_q, refined_sphere_cover, refinement_sequence,
    torus_cover_4x4, ImplicitSurface,
};
use digitopo::graph::cycle;
use digitopo::homotopy::{reduce, Trace};
use digitopo::invariants::invariants;
use digitopo::{Budget, Outcome, Verdict};
use rayon::prelude::*;
use serde::Deserialize;
use serde_json::json;

use check::{run_check, verdict_json, CheckParams, Question};
use io::{emit, load_cover, load_graph, pretty, write_or_print};

/// Exit code for unreadable input or bad parameters.
const EXIT_ERROR: u8 = 3;

#[derive(Parser)]
#[command(name = "digitopo", version, about = "Digital topology on graphs and box covers")]
struct Cli {
    /// Search budget; counts backtracking moves and disk-growth attempts.
    #[arg(long, global = true, env = "DIGITOPO_BUDGET", default_value_t = digitopo::verdict::DEFAULT_BUDGET)]
    budget: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate a graph or a cover.
    Gen {
        kind: GenKind,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cycle length.
        #[arg(long, default_value_t = 5)]
        k: usize,
        #[arg(long, default_value_t = 3)]
        strips: usize,
        /// Brick counts per axis, comma separated.
        #[arg(long, value_delimiter = ',', default_values_t = [4usize, 4])]
        extent: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a property; exit 0 yes, 1 no, 2 unknown, 3 error.
    Check {
        file: PathBuf,
        #[arg(long, value_enum)]
        question: Question,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long, default_value_t = 8)]
        max_size: usize,
    },
    /// Compress, merge a disk, split a point, or replay a trace.
    Transform {
        file: PathBuf,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        compress: bool,
        /// Comma separated disk points whose interior is merged.
        #[arg(long, value_delimiter = ',')]
        merge: Option<Vec<String>>,
        /// Point replaced by the interior of `--disk`.
        #[arg(long, requires_all = ["disk", "map"])]
        split: Option<String>,
        #[arg(long)]
        disk: Option<PathBuf>,
        /// Boundary-to-rim pairs `a=b`, comma separated.
        #[arg(long, value_delimiter = ',')]
        map: Option<Vec<String>>,
        #[arg(long)]
        replay: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Resulting graph.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Euler characteristic, mod-2 Betti numbers and clique counts.
    Invariants { file: PathBuf },
    /// Nerve and LCL check of a cover file.
    Cover {
        file: PathBuf,
        /// Write the nerve graph here.
        #[arg(long)]
        nerve_out: Option<PathBuf>,
    },
    /// Digitize an implicit surface at successive grid steps.
    Digitize {
        #[arg(long, value_enum)]
        shape: ShapeArg,
        /// Coarsest grid step, e.g. 0.25 or 1/4.
        #[arg(long, default_value = "0.5")]
        h: String,
        #[arg(long, default_value_t = 3)]
        levels: usize,
        #[arg(long, default_value_t = 3)]
        samples: usize,
        /// Nerve of the finest level.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the reduced nerve instead.
        #[arg(long)]
        reduced: bool,
    },
    /// Isomorphism between two graphs; exit 0 yes, 1 no, 2 unknown.
    Iso { a: PathBuf, b: PathBuf },
    /// Run checks listed in a manifest, one JSON line per case.
    Batch { manifest: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    MinimalSphere,
    Torus16,
    SubdividedSphere,
    Cycle,
    CubeCover,
    RefinedCover,
    BrickPatch,
    TorusCover,
}

#[derive(Clone, Copy, ValueEnum)]
enum ShapeArg {
    Sphere,
    Torus,
    Plane,
    Box,
    Circle,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn run(cli: Cli) -> Result<u8> {
    let budget_limit = cli.budget;
    match cli.cmd {
        Cmd::Gen { kind, n, steps, seed, k, strips, extent, out } => {
            let text = match kind {
                GenKind::MinimalSphere => minimal_sphere(n).to_json_string(),
                GenKind::Torus16 => torus16().to_json_string(),
                GenKind::SubdividedSphere => subdivided_sphere(n, steps, seed).to_json_string(),
                GenKind::Cycle => cycle(k).to_json_string(),
                GenKind::CubeCover => cube_boundary_cover(n)?.to_json_string(),
                GenKind::RefinedCover => refined_sphere_cover(n, strips)?.to_json_string(),
                GenKind::BrickPatch => brick_tiling_patch(n, &extent)?.to_json_string(),
                GenKind::TorusCover => torus_cover_4x4().to_json_string(),
            };
            write_or_print(out.as_deref(), &text)?;
            Ok(0)
        }
        Cmd::Check { file, question, n, m, max_size } => {
            let p = CheckParams { question, n, m, max_size, budget: None };
            let (outcome, report) = run_check(&file, &p, budget_limit)?;
            emit(&pretty(&report));
            Ok(outcome.exit_code() as u8)
        }
        Cmd::Transform { file, n, compress: do_compress, merge, split, disk, map, replay, seed, out } => {
            let g = load_graph(&file)?;
            let budget = Budget::new(budget_limit);
            let chosen = [do_compress, merge.is_some(), split.is_some(), replay.is_some()].iter().filter(|&&b| b).count();
            if chosen != 1 {
                bail!("choose exactly one of --compress, --merge, --split, --replay");
            }
            let (h, report) = if do_compress {
                let c = compress(&g, n, &budget, seed);
                let r = json!({"steps": c.steps, "trace": c.trace, "points": c.graph.n()});
                (c.graph, r)
            } else if let Some(names) = merge {
                let ids = g.ids(&names)?;
                let d = match disk_in(&g, &ids, n, &budget) {
                    Verdict::Yes(d) => d,
                    other => bail!("points do not form a certified {n}-disk ({:?})", other.outcome()),
                };
                let (h, trace) = merge_with_trace(&g, &d)?;
                (h, json!({"disk": DiskReport::from(&d), "trace": trace}))
            } else if let Some(v) = split {
                let dg = load_graph(disk.as_deref().expect("required by clap"))?;
                let iso = map
                    .expect("required by clap")
                    .iter()
                    .map(|s| s.split_once('=').map(|(a, b)| (a.to_string(), b.to_string())))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| anyhow!("map entries must look like a=b"))?;
                let (h, trace) = split_vertex(&g, &v, &dg, &iso, n, &budget)?;
                (h, json!({"trace": trace}))
            } else {
                let path = replay.expect("chosen");
                let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
                let trace = Trace::parse_json(&text)?;
                let h = trace.replay(&g, &budget)?;
                (h, json!({"moves": trace.len()}))
            };
            let mut report = report;
            report["budget"] = json!(budget_limit);
            report["seed"] = json!(seed);
            report["graph"] = json!(h.to_json());
            if let Some(p) = out.as_deref() {
                write_or_print(Some(p), &h.to_json_string())?;
            }
            emit(&pretty(&report));
            Ok(0)
        }
        Cmd::Invariants { file } => {
            let g = load_graph(&file)?;
            let inv = invariants(&g);
            let r = json!({"name": g.name(), "points": g.n(), "edges": g.m(), "chi": inv.chi, "betti": inv.betti, "clique_counts": inv.clique_counts});
            emit(&pretty(&r));
            Ok(0)
        }
        Cmd::Cover { file, nerve_out } => {
            let c = load_cover(&file)?;
            let budget = Budget::new(budget_limit);
            let nerve = c.nerve();
            if let Some(p) = nerve_out.as_deref() {
                write_or_print(Some(p), &nerve.to_json_string())?;
            }
            let r = json!({
                "elements": c.len(),
                "ambient_dim": c.dim(),
                "dim": c.manifold_dim(),
                "nerve_points": nerve.n(),
                "nerve_edges": nerve.m(),
                "lcl": verdict_json(&is_lcl(&c, &budget)),
                "budget": budget_limit,
            });
            emit(&pretty(&r));
            Ok(0)
        }
        Cmd::Digitize { shape, h, levels, samples, out, reduced } => {
            let h0 = parse_q(&h)?;
            let s = match shape {
                ShapeArg::Sphere => ImplicitSurface::sphere(digitopo::geometry::q(1)),
                ShapeArg::Torus => ImplicitSurface::torus(digitopo::geometry::q(1), digitopo::geometry::qf(1, 2)),
                ShapeArg::Plane => ImplicitSurface::plane_patch(),
                ShapeArg::Box => ImplicitSurface::box_boundary(digitopo::geometry::q(1)),
                ShapeArg::Circle => ImplicitSurface::circle(digitopo::geometry::q(1)),
            };
            let budget = Budget::new(budget_limit);
            let report = if levels >= 2 {
                json!(refinement_sequence(&s, h0, levels, samples, &budget)?)
            } else {
                json!({})
            };
            let finest = h0 / digitopo::geometry::q(1i64 << levels.saturating_sub(1));
            if let Some(p) = out.as_deref() {
                let d = digitize(&s, finest, samples)?;
                let g = if reduced { reduce(&d.graph, &budget).0 } else { d.graph };
                write_or_print(Some(p), &g.to_json_string())?;
            }
            let mut report = report;
            report["shape"] = json!(s.shape());
            report["samples"] = json!(samples);
            report["budget"] = json!(budget_limit);
            emit(&pretty(&report));
            Ok(0)
        }
        Cmd::Iso { a, b } => {
            let (ga, gb) = (load_graph(&a)?, load_graph(&b)?);
            let v = is_isomorphic(&ga, &gb);
            emit(&pretty(&verdict_json(&v)));
            Ok(v.outcome().exit_code() as u8)
        }
        Cmd::Batch { manifest } => batch(&manifest, budget_limit),
    }
}

#[derive(Deserialize)]
struct Case {
    file: PathBuf,
    #[serde(flatten)]
    params: CheckParams,
}

/// A manifest is a JSON array of cases or one case per line.
fn read_manifest(path: &Path) -> Result<Vec<std::result::Result<Case, String>>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if text.trim_start().starts_with('[') {
        let vals: Vec<serde_json::Value> = serde_json::from_str(&text).context("manifest array")?;
        return Ok(vals.into_iter().map(|v| serde_json::from_value(v).map_err(|e| e.to_string())).collect());
    }
    Ok(text
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| serde_json::from_str(l).map_err(|e| e.to_string()))
        .collect())
}

fn batch(manifest: &Path, budget_limit: u64) -> Result<u8> {
    let cases = read_manifest(manifest)?;
    let base = manifest.parent().unwrap_or(Path::new("."));
    let lines: Vec<(Option<Outcome>, String)> = cases
        .into_par_iter()
        .enumerate()
        .map(|(i, c)| match c {
            Err(e) => (None, json!({"case": i, "error": e}).to_string()),
            Ok(c) => {
                let file = if c.file.is_absolute() { c.file.clone() } else { base.join(&c.file) };
                let limit = c.params.budget.unwrap_or(budget_limit);
                match run_check(&file, &c.params, limit) {
                    Ok((o, mut r)) => {
                        r["case"] = json!(i);
                        r["file"] = json!(c.file.display().to_string());
                        (Some(o), r.to_string())
                    }
                    Err(e) => (
                        None,
                        json!({"case": i, "file": c.file.display().to_string(), "error": format!("{e:#}")}).to_string(),
                    ),
                }
            }
        })
        .collect();
    let mut tally: HashMap<&str, usize> = HashMap::new();
    for (o, line) in &lines {
        emit(line);
        let key = match o {
            Some(Outcome::Yes) => "yes",
            Some(Outcome::No) => "no",
            Some(Outcome::Unknown) => "unknown",
            None => "errored",
        };
        *tally.entry(key).or_default() += 1;
    }
    let get = |k: &str| tally.get(k).copied().unwrap_or(0);
    eprintln!(
        "cases: {} yes: {} no: {} unknown: {} errored: {}",
        lines.len(),
        get("yes"),
        get("no"),
        get("unknown"),
        get("errored")
    );
    Ok(if get("errored") > 0 { EXIT_ERROR } else { 0 })
}
