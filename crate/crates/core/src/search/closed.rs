use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::problem::Cost;

/// What to do when a state is re-reached by a strictly cheaper path after
/// it was already expanded.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReopenPolicy {
    /// Expand the cheaper path right away.
    #[default]
    Reopen,
    /// Never expand a state twice; the cheaper path is dropped and counted.
    Ignore,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosedEntry {
    pub g_cost: Cost,
    /// Expansion index at which the entry was last written.
    pub stamp: u64,
}

/// Best known `g_c` of every expanded state.
#[derive(Debug)]
pub struct ClosedMap<S> {
    map: HashMap<S, ClosedEntry>,
}

impl<S: Eq + Hash> Default for ClosedMap<S> {
    fn default() -> Self {
        ClosedMap {
            map: HashMap::new(),
        }
    }
}

impl<S: Eq + Hash> ClosedMap<S> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, state: &S) -> Option<&ClosedEntry> {
        self.map.get(state)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DuplicateOutcome {
    /// First time the state is closed; expand.
    Fresh,
    /// Strictly cheaper path to a closed state; expand again.
    Reopened,
    /// A path at least as cheap was already expanded; drop.
    Dominated,
    /// Strictly cheaper, but the policy forbids a second expansion; drop.
    ReopenSkipped,
}

impl DuplicateOutcome {
    pub fn drop(self) -> bool {
        matches!(self, DuplicateOutcome::Dominated | DuplicateOutcome::ReopenSkipped)
    }
}

/// Consults and updates the closed map for a path to `state` of cost
/// `g_cost`. The entry is written whenever the path is kept.
pub fn duplicate_test<S: Eq + Hash + Clone>(
    closed: &mut ClosedMap<S>,
    state: &S,
    g_cost: Cost,
    stamp: u64,
    policy: ReopenPolicy,
) -> DuplicateOutcome {
    let outcome = match closed.map.get(state) {
        None => DuplicateOutcome::Fresh,
        Some(e) if e.g_cost <= g_cost => return DuplicateOutcome::Dominated,
        Some(_) => match policy {
            ReopenPolicy::Reopen => DuplicateOutcome::Reopened,
            ReopenPolicy::Ignore => return DuplicateOutcome::ReopenSkipped,
        },
    };
    closed
        .map
        .insert(state.clone(), ClosedEntry { g_cost, stamp });
    outcome
}

/// Branch-and-bound test: prune when the admissible estimate through the
/// node cannot beat the incumbent.
pub fn bound_test(g_cost: Cost, h_admissible: Cost, incumbent: Option<Cost>) -> bool {
    match incumbent {
        Some(best) => g_cost + h_admissible >= best,
        None => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bound_boundaries() {
        assert!(bound_test(5, 5, Some(10)));
        assert!(!bound_test(5, 4, Some(10)));
        assert!(!bound_test(u64::MAX / 2, 0, None));
    }

    #[test]
    fn unseen_state_is_kept_and_recorded() {
        let mut closed = ClosedMap::new();
        assert_eq!(
            duplicate_test(&mut closed, &1u32, 4, 0, ReopenPolicy::Reopen),
            DuplicateOutcome::Fresh
        );
        assert_eq!(closed.get(&1).unwrap().g_cost, 4);
    }

    #[test]
    fn costlier_or_equal_path_is_dropped() {
        let mut closed = ClosedMap::new();
        duplicate_test(&mut closed, &1u32, 7, 0, ReopenPolicy::Reopen);
        assert_eq!(
            duplicate_test(&mut closed, &1u32, 9, 1, ReopenPolicy::Reopen),
            DuplicateOutcome::Dominated
        );
        assert_eq!(
            duplicate_test(&mut closed, &1u32, 7, 1, ReopenPolicy::Reopen),
            DuplicateOutcome::Dominated
        );
        assert_eq!(closed.get(&1).unwrap().g_cost, 7);
    }

    #[test]
    fn cheaper_path_reopens_or_is_skipped() {
        let mut closed = ClosedMap::new();
        duplicate_test(&mut closed, &1u32, 9, 0, ReopenPolicy::Reopen);
        assert_eq!(
            duplicate_test(&mut closed, &1u32, 7, 3, ReopenPolicy::Reopen),
            DuplicateOutcome::Reopened
        );
        assert_eq!(closed.get(&1).unwrap(), &ClosedEntry { g_cost: 7, stamp: 3 });

        let mut closed = ClosedMap::new();
        duplicate_test(&mut closed, &1u32, 9, 0, ReopenPolicy::Ignore);
        assert_eq!(
            duplicate_test(&mut closed, &1u32, 7, 3, ReopenPolicy::Ignore),
            DuplicateOutcome::ReopenSkipped
        );
        assert_eq!(closed.get(&1).unwrap().g_cost, 9);
    }
}
