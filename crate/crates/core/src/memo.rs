//! Grow-only verdict cache keyed by canonical form.
//!
//! Only definite answers are stored, so a budget-limited Unknown never leaks
//! into a later call that has more budget.

use dashmap::DashMap;
use once_cell::sync::Lazy;

use crate::canon::{canon_small, CanonKey};
use crate::small::Small;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub(crate) enum Question {
    Contractible,
    Sphere(u8),
    Disk(u8),
    Normal(u8),
}

static MEMO: Lazy<DashMap<(Question, CanonKey), bool>> = Lazy::new(DashMap::new);

/// Graphs smaller than this are cheaper to decide than to key.
const MEMO_MIN: usize = 7;

pub(crate) struct Slot {
    key: Option<(Question, CanonKey)>,
}

pub(crate) fn lookup(q: Question, g: &Small) -> (Option<bool>, Slot) {
    if g.n < MEMO_MIN {
        return (None, Slot { key: None });
    }
    match canon_small(g) {
        Ok((k, _)) => {
            let key = (q, k);
            let hit = MEMO.get(&key).map(|e| *e);
            (hit, Slot { key: Some(key) })
        }
        Err(_) => (None, Slot { key: None }),
    }
}

pub(crate) fn store(slot: Slot, value: bool) {
    if let Some(key) = slot.key {
        MEMO.insert(key, value);
    }
}
