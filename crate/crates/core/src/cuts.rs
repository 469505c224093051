// SPDX-License-Identifier: Apache-2.0

//! Priority-cut enumeration with truth tables.
//!
//! Cuts are built bottom-up by merging one cut of each fanin. Every cut
//! carries its function over its leaves (leaf `i` is variable `i`). A node
//! keeps at most `max_cuts` non-trivial cuts, chosen by a caller-supplied
//! ranking, plus its trivial cut.

use std::cmp::Ordering;

use crate::aig::{Aig, Lit};
use crate::truthtable::TruthTable;

/// Largest cut size supported.
pub const MAX_CUT_SIZE: usize = 11;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cut {
    leaves: Vec<u32>,
    signature: u64,
    function: TruthTable,
}

#[inline]
fn leaf_bit(leaf: u32) -> u64 {
    1u64 << (leaf.wrapping_mul(0x9E37_79B9) >> 26)
}

impl Cut {
    /// `leaves` must be sorted and duplicate-free; `function` is over them.
    pub fn new(leaves: Vec<u32>, function: TruthTable) -> Self {
        debug_assert!(leaves.windows(2).all(|w| w[0] < w[1]));
        debug_assert_eq!(leaves.len(), function.num_vars());
        let signature = leaves.iter().fold(0, |s, &l| s | leaf_bit(l));
        Self {
            leaves,
            signature,
            function,
        }
    }

    pub fn trivial(node: usize) -> Self {
        Self::new(vec![node as u32], TruthTable::nth_var(1, 0))
    }

    pub fn leaves(&self) -> &[u32] {
        &self.leaves
    }

    pub fn size(&self) -> usize {
        self.leaves.len()
    }

    pub fn signature(&self) -> u64 {
        self.signature
    }

    pub fn function(&self) -> &TruthTable {
        &self.function
    }

    pub fn is_trivial_for(&self, node: usize) -> bool {
        self.leaves.len() == 1 && self.leaves[0] as usize == node
    }

    /// Whether every leaf of `self` is a leaf of `other`.
    pub fn dominates(&self, other: &Cut) -> bool {
        self.leaves.len() <= other.leaves.len()
            && self.signature & !other.signature == 0
            && is_subset(&self.leaves, &other.leaves)
    }

    /// Drops leaves the function does not depend on.
    pub fn minimize_support(&mut self) {
        let support = self.function.support();
        if support.len() < self.leaves.len() {
            self.function = self.function.project(&support);
            self.leaves = support.iter().map(|&i| self.leaves[i]).collect();
            self.signature = self.leaves.iter().fold(0, |s, &l| s | leaf_bit(l));
        }
    }
}

fn is_subset(a: &[u32], b: &[u32]) -> bool {
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Sorted union, or `None` when it exceeds `limit` leaves.
fn merge_leaves(a: &[u32], b: &[u32], limit: usize) -> Option<Vec<u32>> {
    let mut out = Vec::with_capacity(limit);
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(&x), Some(&y)) => match x.cmp(&y) {
                Ordering::Less => {
                    i += 1;
                    x
                }
                Ordering::Greater => {
                    j += 1;
                    y
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    x
                }
            },
            (Some(&x), None) => {
                i += 1;
                x
            }
            (None, Some(&y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if out.len() == limit {
            return None;
        }
        out.push(next);
    }
    Some(out)
}

/// Re-expresses a cut function over a superset of its leaves.
fn lift(cut: &Cut, leaves: &[u32]) -> TruthTable {
    let mut positions = Vec::with_capacity(cut.leaves.len());
    let mut j = 0;
    for &l in &cut.leaves {
        while leaves[j] != l {
            j += 1;
        }
        positions.push(j);
    }
    cut.function.expand(leaves.len(), &positions)
}

/// Cuts of one node; the trivial cut is stored last.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CutSet {
    pub cuts: Vec<Cut>,
}

impl CutSet {
    pub fn iter(&self) -> impl Iterator<Item = &Cut> {
        self.cuts.iter()
    }

    pub fn len(&self) -> usize {
        self.cuts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cuts.is_empty()
    }

    /// Non-trivial cuts in rank order.
    pub fn ranked(&self, node: usize) -> impl Iterator<Item = &Cut> {
        self.cuts.iter().filter(move |c| !c.is_trivial_for(node))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutParams {
    /// Largest cut size `l`.
    pub max_leaves: usize,
    /// Non-trivial cuts kept per node `C`; `usize::MAX` keeps all.
    pub max_cuts: usize,
    /// Remove leaves outside the functional support of each cut.
    pub minimize_support: bool,
}

impl Default for CutParams {
    fn default() -> Self {
        Self {
            max_leaves: 6,
            max_cuts: 8,
            minimize_support: true,
        }
    }
}

/// Incremental cut enumerator: call [`CutEnumerator::compute`] on AND nodes
/// in topological order, so that ranking can use state derived from the cut
/// sets of earlier nodes.
pub struct CutEnumerator<'a> {
    aig: &'a Aig,
    params: CutParams,
    sets: Vec<CutSet>,
}

impl<'a> CutEnumerator<'a> {
    pub fn new(aig: &'a Aig, params: CutParams) -> Self {
        assert!(
            (2..=MAX_CUT_SIZE).contains(&params.max_leaves),
            "cut size must be in 2..={MAX_CUT_SIZE}"
        );
        assert!(params.max_cuts >= 1);
        let mut sets = vec![CutSet::default(); aig.num_nodes()];
        sets[0].cuts.push(Cut::new(Vec::new(), TruthTable::zero(0)));
        for pi in 1..=aig.num_pis() {
            sets[pi].cuts.push(Cut::trivial(pi));
        }
        Self { aig, params, sets }
    }

    pub fn params(&self) -> CutParams {
        self.params
    }

    pub fn cuts(&self, node: usize) -> &CutSet {
        &self.sets[node]
    }

    pub fn into_sets(self) -> Vec<CutSet> {
        self.sets
    }

    /// All non-dominated merges of the fanin cut sets of `node`.
    pub fn merged_cuts(&self, node: usize) -> Vec<Cut> {
        let and = self.aig.and(node);
        let (f0, f1) = (and.fanin0, and.fanin1);
        let limit = self.params.max_leaves;
        let mut out: Vec<Cut> = Vec::new();
        for c0 in self.sets[f0.node()].iter() {
            for c1 in self.sets[f1.node()].iter() {
                if (c0.signature | c1.signature).count_ones() as usize > limit {
                    continue;
                }
                let Some(leaves) = merge_leaves(&c0.leaves, &c1.leaves, limit) else {
                    continue;
                };
                if out.iter().any(|c| c.leaves == leaves) {
                    continue;
                }
                let function = and_of(lift(c0, &leaves), f0, lift(c1, &leaves), f1);
                let mut cut = Cut::new(leaves, function);
                if self.params.minimize_support {
                    cut.minimize_support();
                    if out.iter().any(|c| c.leaves == cut.leaves) {
                        continue;
                    }
                }
                out.push(cut);
            }
        }
        remove_dominated(&mut out);
        out
    }

    /// Computes and stores the cut set of `node`. `rank` orders cuts by an
    /// ascending key, `None` discards a cut. Returns the stored set.
    pub fn compute<K: Ord>(&mut self, node: usize, mut rank: impl FnMut(&Cut) -> Option<K>) -> &CutSet {
        let merged = self.merged_cuts(node);
        let mut keyed: Vec<(K, Cut)> = merged
            .into_iter()
            .filter(|c| !c.is_trivial_for(node))
            .filter_map(|c| rank(&c).map(|k| (k, c)))
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.truncate(self.params.max_cuts);
        let mut cuts: Vec<Cut> = keyed.into_iter().map(|(_, c)| c).collect();
        cuts.push(Cut::trivial(node));
        self.sets[node] = CutSet { cuts };
        &self.sets[node]
    }

    /// Replaces the stored cuts of `node` (the trivial cut is re-appended).
    pub fn set_cuts(&mut self, node: usize, mut cuts: Vec<Cut>) {
        cuts.retain(|c| !c.is_trivial_for(node));
        cuts.push(Cut::trivial(node));
        self.sets[node] = CutSet { cuts };
    }
}

fn and_of(a: TruthTable, la: Lit, b: TruthTable, lb: Lit) -> TruthTable {
    let a = if la.is_complemented() { !&a } else { a };
    let b = if lb.is_complemented() { !&b } else { b };
    &a & &b
}

/// Removes every cut whose leaves are a superset of another cut's. Among
/// equal leaf sets the first is kept.
fn remove_dominated(cuts: &mut Vec<Cut>) {
    let mut keep = vec![true; cuts.len()];
    for i in 0..cuts.len() {
        for j in 0..cuts.len() {
            if i != j && keep[j] && cuts[j].leaves.len() < cuts[i].leaves.len() && cuts[j].dominates(&cuts[i]) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut it = keep.iter();
    cuts.retain(|_| *it.next().unwrap());
}

/// Enumerates cuts of every node ranked by (size, leaves).
pub fn enumerate_cuts(aig: &Aig, params: CutParams) -> Vec<CutSet> {
    let mut e = CutEnumerator::new(aig, params);
    for n in aig.and_nodes() {
        e.compute(n, |c| Some((c.size(), c.leaves.clone())));
    }
    e.into_sets()
}

/// Function of `root` over `leaves` by cone simulation, or `None` when the
/// leaves do not separate `root` from the primary inputs.
pub fn cut_function(aig: &Aig, root: usize, leaves: &[u32]) -> Option<TruthTable> {
    let n = leaves.len();
    let mut memo: Vec<Option<TruthTable>> = vec![None; aig.num_nodes()];
    for (i, &l) in leaves.iter().enumerate() {
        memo[l as usize] = Some(TruthTable::nth_var(n, i));
    }
    if memo[0].is_none() {
        memo[0] = Some(TruthTable::zero(n));
    }
    let mut stack = vec![root];
    while let Some(&v) = stack.last() {
        if memo[v].is_some() {
            stack.pop();
            continue;
        }
        if !aig.is_and(v) {
            return None;
        }
        let a = aig.and(v);
        let (x, y) = (a.fanin0.node(), a.fanin1.node());
        match (&memo[x], &memo[y]) {
            (Some(fx), Some(fy)) => {
                let t = and_of(fx.clone(), a.fanin0, fy.clone(), a.fanin1);
                memo[v] = Some(t);
                stack.pop();
            }
            _ => {
                if memo[x].is_none() {
                    stack.push(x);
                }
                if memo[y].is_none() {
                    stack.push(y);
                }
            }
        }
    }
    memo[root].take()
}
