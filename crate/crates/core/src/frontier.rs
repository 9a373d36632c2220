//! Non-dominated sets of (time, energy) costs.
//!
//! A [`CostFrontier`] is the compact form of an element of the Hoare power
//! domain over [`CostPair`]: the down-closed set is represented by its
//! non-dominated members only. Union and pairwise product re-filter, so the
//! frontier invariant holds after every operation.
//!
//! Dominance compares costs only. Witnesses (paths, journeys) ride along and
//! fix the output order, nothing else.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use thiserror::Error;

use crate::semiring::{Cost, CostPair};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum FrontierError {
    #[error("cannot combine a {left} frontier with a {right} frontier")]
    ModeMismatch { left: Dominance, right: Dominance },
}

/// Which pairs count as dominated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Dominance {
    /// `u` dominates `v` iff `u` is strictly smaller in both coordinates.
    #[default]
    Strict,
    /// Textbook Pareto dominance: `≤` in both coordinates, `<` in at least one.
    Weak,
}

impl Dominance {
    pub fn dominates(self, u: &CostPair, v: &CostPair) -> bool {
        match self {
            Dominance::Strict => strictly_dominates(u, v),
            Dominance::Weak => weakly_dominates(u, v),
        }
    }
}

impl fmt::Display for Dominance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dominance::Strict => "strict",
            Dominance::Weak => "weak",
        })
    }
}

impl FromStr for Dominance {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        match s {
            "strict" => Ok(Dominance::Strict),
            "weak" => Ok(Dominance::Weak),
            _ => Err(()),
        }
    }
}

pub fn strictly_dominates(u: &CostPair, v: &CostPair) -> bool {
    u.time < v.time && u.energy < v.energy
}

pub fn weakly_dominates(u: &CostPair, v: &CostPair) -> bool {
    u.time <= v.time && u.energy <= v.energy && (u.time < v.time || u.energy < v.energy)
}

/// A label attached to a frontier element.
///
/// `join` builds the witness of a product element from the witnesses of its
/// two factors.
pub trait Witness: Ord + Clone {
    fn join(&self, other: &Self) -> Self;
}

impl Witness for () {
    fn join(&self, _: &()) {}
}

impl<T: Ord + Clone> Witness for Vec<T> {
    fn join(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.extend(other.iter().cloned());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CostFrontier<W> {
    mode: Dominance,
    items: Vec<(W, CostPair)>,
}

impl<W: Witness> CostFrontier<W> {
    /// The bottom element (empty set).
    pub fn empty(mode: Dominance) -> Self {
        CostFrontier {
            mode,
            items: Vec::new(),
        }
    }

    /// The top element in compact form, `{⟨0,0⟩}`.
    pub fn unit(mode: Dominance, witness: W) -> Self {
        CostFrontier {
            mode,
            items: alloc::vec![(witness, CostPair::ZERO)],
        }
    }

    pub fn mode(&self) -> Dominance {
        self.mode
    }

    pub fn items(&self) -> &[(W, CostPair)] {
        &self.items
    }

    pub fn into_items(self) -> Vec<(W, CostPair)> {
        self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn costs(&self) -> impl Iterator<Item = CostPair> + '_ {
        self.items.iter().map(|(_, c)| *c)
    }

    pub fn witnesses(&self) -> impl Iterator<Item = &W> + '_ {
        self.items.iter().map(|(w, _)| w)
    }

    fn check_mode(&self, other: &Self) -> Result<(), FrontierError> {
        if self.mode == other.mode {
            Ok(())
        } else {
            Err(FrontierError::ModeMismatch {
                left: self.mode,
                right: other.mode,
            })
        }
    }

    /// Formal union, re-filtered.
    pub fn union(&self, other: &Self) -> Result<Self, FrontierError> {
        self.check_mode(other)?;
        let items = self.items.iter().chain(&other.items).cloned().collect();
        Ok(frontier_filter(items, self.mode))
    }

    /// Every element of `self` summed with every element of `other`, re-filtered.
    pub fn times(&self, other: &Self) -> Result<Self, FrontierError> {
        self.check_mode(other)?;
        let mut items = Vec::with_capacity(self.items.len() * other.items.len());
        for (wa, ca) in &self.items {
            for (wb, cb) in &other.items {
                items.push((wa.join(wb), *ca + *cb));
            }
        }
        Ok(frontier_filter(items, self.mode))
    }

    /// Hoare order: every cost of `self` is matched or beaten by some cost of
    /// `other`. Equivalent to `self ⊎ other` having the costs of `other`.
    pub fn leq(&self, other: &Self) -> Result<bool, FrontierError> {
        self.check_mode(other)?;
        Ok(self
            .items
            .iter()
            .all(|(_, c)| other.items.iter().any(|(_, d)| d == c || self.mode.dominates(d, c))))
    }
}

/// Keeps exactly the items that no input item dominates under `mode`.
///
/// Exact duplicates collapse into one entry. The result is sorted by witness
/// (then cost).
pub fn frontier_filter<W: Witness>(mut items: Vec<(W, CostPair)>, mode: Dominance) -> CostFrontier<W> {
    // Sweep in (time, energy) order. `best_before` is the least energy over
    // all items with strictly smaller time; within a run of equal times the
    // run's own minimum matters only for weak dominance.
    let mut order: Vec<usize> = (0..items.len()).collect();
    order.sort_by_key(|&i| (items[i].1.time, items[i].1.energy));

    let mut keep = alloc::vec![false; items.len()];
    let mut best_before: Option<Cost> = None;
    let mut start = 0;
    while start < order.len() {
        let time = items[order[start]].1.time;
        let mut end = start;
        while end < order.len() && items[order[end]].1.time == time {
            end += 1;
        }
        let run_min = items[order[start]].1.energy;
        for &i in &order[start..end] {
            let e = items[i].1.energy;
            let dominated = match mode {
                Dominance::Strict => best_before.is_some_and(|b| b < e),
                Dominance::Weak => best_before.is_some_and(|b| b <= e) || run_min < e,
            };
            keep[i] = !dominated;
        }
        best_before = Some(best_before.map_or(run_min, |b| b.min(run_min)));
        start = end;
    }

    let mut idx = 0;
    items.retain(|_| {
        idx += 1;
        keep[idx - 1]
    });
    items.sort();
    items.dedup();
    CostFrontier { mode, items }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::String;
    use alloc::vec;

    fn p(t: u64, e: u64) -> CostPair {
        CostPair::new(t, e)
    }

    fn path(s: &str) -> Vec<String> {
        s.chars().map(String::from).collect()
    }

    fn unlabeled(costs: &[CostPair], mode: Dominance) -> CostFrontier<()> {
        frontier_filter(costs.iter().map(|c| ((), *c)).collect(), mode)
    }

    #[test]
    fn strict_dominance_examples() {
        assert!(strictly_dominates(&p(4, 8), &p(7, 9)));
        assert!(!strictly_dominates(&p(6, 10), &p(6, 11)));
        assert!(!strictly_dominates(&p(3, 9), &p(3, 9)));
        assert!(weakly_dominates(&p(6, 10), &p(6, 11)));
        assert!(!weakly_dominates(&p(3, 9), &p(3, 9)));
    }

    #[test]
    fn trip_frontier() {
        let items = vec![(path("pt"), p(3, 9)), (path("pqt"), p(4, 8)), (path("pqrst"), p(7, 9))];
        let f = frontier_filter(items, Dominance::Strict);
        let got: Vec<_> = f.items().to_vec();
        assert_eq!(got, vec![(path("pqt"), p(4, 8)), (path("pt"), p(3, 9))]);
    }

    #[test]
    fn journey_costs_survive_strict_filter() {
        let costs = [p(6, 11), p(5, 12), p(7, 9), p(6, 10)];
        assert_eq!(unlabeled(&costs, Dominance::Strict).len(), 4);
        let weak = unlabeled(&costs, Dominance::Weak);
        assert_eq!(weak.costs().collect::<Vec<_>>().len(), 3);
        assert!(!weak.costs().any(|c| c == p(6, 11)));
    }

    #[test]
    fn weak_pair() {
        let f = unlabeled(&[p(6, 11), p(6, 10)], Dominance::Weak);
        assert_eq!(f.costs().collect::<Vec<_>>(), vec![p(6, 10)]);
    }

    #[test]
    fn infinite_costs_are_dominated_by_finite_ones() {
        let inf_energy = CostPair {
            time: Cost::Finite(1),
            energy: Cost::Infinite,
        };
        let f = unlabeled(&[inf_energy, p(0, 5)], Dominance::Strict);
        assert_eq!(f.costs().collect::<Vec<_>>(), vec![p(0, 5)]);
    }

    #[test]
    fn union_and_times() {
        let s = Dominance::Strict;
        let a = unlabeled(&[p(3, 9)], s);
        let b = unlabeled(&[p(4, 8)], s);
        assert_eq!(a.union(&b).unwrap().len(), 2);
        let c = unlabeled(&[p(7, 9)], s);
        assert_eq!(b.union(&c).unwrap(), b);
        assert_eq!(a.union(&CostFrontier::empty(s)).unwrap(), a);

        let x = unlabeled(&[p(2, 7)], s);
        let y = unlabeled(&[p(4, 4)], s);
        assert_eq!(x.times(&y).unwrap().costs().collect::<Vec<_>>(), vec![p(6, 11)]);
        assert_eq!(x.times(&CostFrontier::unit(s, ())).unwrap(), x);
        assert!(x.times(&CostFrontier::empty(s)).unwrap().is_empty());

        let m = unlabeled(&[p(1, 1), p(2, 0)], s);
        let one = unlabeled(&[p(1, 1)], s);
        let mut got: Vec<_> = m.times(&one).unwrap().costs().collect();
        got.sort();
        assert_eq!(got, vec![p(2, 2), p(3, 1)]);
    }

    #[test]
    fn mode_mismatch() {
        let a: CostFrontier<()> = CostFrontier::empty(Dominance::Strict);
        let b = CostFrontier::empty(Dominance::Weak);
        assert_eq!(
            a.union(&b),
            Err(FrontierError::ModeMismatch {
                left: Dominance::Strict,
                right: Dominance::Weak
            })
        );
        assert!(a.times(&b).is_err());
    }

    #[test]
    fn duplicates_collapse() {
        let f = unlabeled(&[p(2, 2), p(2, 2)], Dominance::Strict);
        assert_eq!(f.len(), 1);
    }

    #[test]
    fn hoare_order() {
        let s = Dominance::Strict;
        let low = unlabeled(&[p(7, 9)], s);
        let high = unlabeled(&[p(4, 8), p(3, 9)], s);
        assert!(low.leq(&high).unwrap());
        assert!(!high.leq(&low).unwrap());
        assert!(CostFrontier::<()>::empty(s).leq(&low).unwrap());
    }
}
