use std::path::Path;

use anyhow::Result;
use clap::ValueEnum;
use digitopo::classify::{
    disk_containment_hypothesis, is_n_disk, is_n_manifold, is_n_sphere, one_spheres_bound_disks, DiskReport,
};
use digitopo::dtransform::is_compressed;
use digitopo::geometry::is_lcl;
use digitopo::homotopy::is_contractible;
use digitopo::{Budget, Outcome, Verdict};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::io::{load_cover, load_graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Question {
    Contractible,
    Manifold,
    Sphere,
    Disk,
    Compressed,
    /// Input is a cover file.
    Lcl,
    /// Every induced 1-sphere bounds a 2-disk.
    SpheresBoundDisks,
    /// Every small m-disk has its interior inside an n-disk's interior.
    DiskContainment,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckParams {
    pub question: Question,
    #[serde(default = "default_n")]
    pub n: usize,
    /// Inner disk dimension for containment; defaults to n - 1.
    #[serde(default)]
    pub m: Option<usize>,
    /// Size bound for enumerated spheres and disks.
    #[serde(default = "default_max_size")]
    pub max_size: usize,
    #[serde(default)]
    pub budget: Option<u64>,
}

fn default_n() -> usize {
    2
}

fn default_max_size() -> usize {
    8
}

pub fn verdict_json<W: Serialize>(v: &Verdict<W>) -> Value {
    match v {
        Verdict::Yes(w) => json!({"outcome": Outcome::Yes, "witness": w}),
        Verdict::No(c) => json!({"outcome": Outcome::No, "certificate": c}),
        Verdict::Unknown(spent) => json!({"outcome": Outcome::Unknown, "spent": spent}),
    }
}

fn with(mut v: Value, key: &str, extra: Value) -> Value {
    v[key] = extra;
    v
}

/// Runs one check and returns its outcome with the JSON report.
pub fn run_check(file: &Path, p: &CheckParams, budget_limit: u64) -> Result<(Outcome, Value)> {
    let budget = Budget::new(budget_limit);
    let n = p.n;
    let body = if p.question == Question::Lcl {
        let c = load_cover(file)?;
        verdict_json(&is_lcl(&c, &budget))
    } else {
        let g = load_graph(file)?;
        match p.question {
            Question::Contractible => verdict_json(&is_contractible(&g, &budget)),
            Question::Manifold => verdict_json(&is_n_manifold(&g, n, &budget)),
            Question::Sphere => {
                let s = is_n_sphere(&g, n, &budget);
                let v = verdict_json(&s.verdict);
                let v = with(v, "by_puncture", json!(s.by_puncture));
                let v = with(v, "by_compression", json!(s.by_compression));
                with(v, "discrepancy", json!(s.discrepancy))
            }
            Question::Disk => verdict_json(&is_n_disk(&g, n, &budget).map(|d| DiskReport::from(&d))),
            Question::Compressed => verdict_json(&is_compressed(&g, n, &budget)),
            Question::SpheresBoundDisks => verdict_json(&one_spheres_bound_disks(&g, p.max_size, &budget)),
            Question::DiskContainment => {
                let m = p.m.unwrap_or(n.saturating_sub(1));
                verdict_json(&disk_containment_hypothesis(&g, m, n, p.max_size, &budget))
            }
            Question::Lcl => unreachable!("handled above"),
        }
    };
    let outcome: Outcome = serde_json::from_value(body["outcome"].clone()).expect("outcome field");
    let mut report = json!({
        "file": file.display().to_string(),
        "question": p.question,
        "n": n,
        "budget": budget_limit,
        "spent": budget.spent(),
    });
    for (k, v) in body.as_object().expect("object") {
        report[k] = v.clone();
    }
    Ok((outcome, report))
}
