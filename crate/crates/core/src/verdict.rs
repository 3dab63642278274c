//! Three-valued results and search budgets.

use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

/// Budget for the backtracking fallback of a single search, counted in
/// validated candidate moves. `spent` accumulates over every search run
/// under this budget and is echoed into reports.
#[derive(Debug)]
pub struct Budget {
    limit: u64,
    spent: AtomicU64,
}

pub const DEFAULT_BUDGET: u64 = 200;

impl Budget {
    pub fn new(limit: u64) -> Budget {
        Budget { limit, spent: AtomicU64::new(0) }
    }

    /// `DIGITOPO_BUDGET` if set and numeric, else the default of 200.
    pub fn from_env() -> Budget {
        let limit = std::env::var("DIGITOPO_BUDGET").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_BUDGET);
        Budget::new(limit)
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn spent(&self) -> u64 {
        self.spent.load(Ordering::Relaxed)
    }

    pub fn charge(&self, k: u64) {
        self.spent.fetch_add(k, Ordering::Relaxed);
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::new(DEFAULT_BUDGET)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Yes,
    No,
    Unknown,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Yes => 0,
            Outcome::No => 1,
            Outcome::Unknown => 2,
        }
    }
}

/// Evidence for a negative answer. Every field that is set can be checked
/// without trusting the search that produced it.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub reason: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub vertex: Option<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub vertices: Vec<String>,
}

impl Certificate {
    pub fn reason(r: impl Into<String>) -> Certificate {
        Certificate { reason: r.into(), ..Certificate::default() }
    }

    pub fn at(r: impl Into<String>, v: &str) -> Certificate {
        Certificate { reason: r.into(), vertex: Some(v.to_string()), ..Certificate::default() }
    }

    pub fn invariants(r: impl Into<String>, chi: i64, betti: Vec<usize>) -> Certificate {
        Certificate { reason: r.into(), chi: Some(chi), betti: Some(betti), ..Certificate::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<W> {
    Yes(W),
    No(Certificate),
    /// Search stopped without an answer; carries the moves spent.
    Unknown(u64),
}

impl<W> Verdict<W> {
    pub fn outcome(&self) -> Outcome {
        match self {
            Verdict::Yes(_) => Outcome::Yes,
            Verdict::No(_) => Outcome::No,
            Verdict::Unknown(_) => Outcome::Unknown,
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Verdict::Yes(_))
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Verdict::No(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Yes(w) => Some(w),
            _ => None,
        }
    }

    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            Verdict::No(c) => Some(c),
            _ => None,
        }
    }

    pub fn map<V>(self, f: impl FnOnce(W) -> V) -> Verdict<V> {
        match self {
            Verdict::Yes(w) => Verdict::Yes(f(w)),
            Verdict::No(c) => Verdict::No(c),
            Verdict::Unknown(s) => Verdict::Unknown(s),
        }
    }
}
