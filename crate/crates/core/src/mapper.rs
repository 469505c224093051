// SPDX-License-Identifier: Apache-2.0

//! Delay-driven k-LUT mapping with decomposition of wide cuts.
//!
//! The first pass picks, for every AND node, the cut with the smallest
//! arrival time. Cuts with up to `l > k` leaves take part in this pass when
//! [`crate::acd::evaluate`] finds a two-level decomposition with the latest
//! leaves in the free set; their delay is that of the two LUT levels. The
//! following passes recover area with `k`-feasible cuts only (area flow,
//! then exact area), never exceeding the required times of the current
//! cover and always allowed to keep the previous choice. Realization turns
//! every selected cut into LUTs, decomposing the wide ones.

use std::cmp::Ordering;
use std::collections::HashSet;

use thiserror::Error;

use crate::acd::{self, AcdError, MAX_MULTIPLICITY};
use crate::aig::Aig;
use crate::cuts::{Cut, CutEnumerator, CutParams, MAX_CUT_SIZE};
use crate::lutnet::LutNetwork;
use crate::truthtable::TruthTable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MapParams {
    /// LUT size.
    pub k: usize,
    /// Largest cut size evaluated with decomposition; 0 disables it.
    pub l: usize,
    /// Priority cuts kept per node.
    pub cuts_per_node: usize,
    pub area_flow_passes: usize,
    pub exact_area_passes: usize,
    /// Shrink cuts to their functional support during enumeration.
    pub minimize_support: bool,
}

impl Default for MapParams {
    fn default() -> Self {
        Self {
            k: 6,
            l: 8,
            cuts_per_node: 8,
            area_flow_passes: 2,
            exact_area_passes: 2,
            minimize_support: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("LUT size {0} is not supported (expected 2..=8)")]
    LutSize(usize),
    #[error("cut size {l} must be 0 or satisfy k < l <= {MAX_CUT_SIZE} (k = {k})")]
    CutSize { k: usize, l: usize },
    #[error("at least one cut per node is required")]
    CutsPerNode,
}

impl MapParams {
    pub fn validate(&self) -> Result<(), MapError> {
        if !(2..=8).contains(&self.k) {
            return Err(MapError::LutSize(self.k));
        }
        if self.l != 0 && (self.l <= self.k || self.l > MAX_CUT_SIZE) {
            return Err(MapError::CutSize { k: self.k, l: self.l });
        }
        if self.cuts_per_node == 0 {
            return Err(MapError::CutsPerNode);
        }
        Ok(())
    }

    fn acd_enabled(&self) -> bool {
        self.l > self.k
    }
}

/// Timing of one cut under the unit-delay model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutTiming {
    pub delay: u32,
    /// Delay added on the path from each leaf to the cut root.
    pub increments: Vec<u8>,
    /// Column multiplicity of the decomposition (1 for k-feasible cuts).
    pub mu: usize,
    /// Free-set leaf positions of a wide cut; empty for k-feasible cuts.
    pub fs: Vec<usize>,
}

impl CutTiming {
    pub fn is_wide(&self, k: usize) -> bool {
        self.increments.len() > k
    }
}

/// Delay of a cut given the arrival time of each leaf (in leaf order).
///
/// `k`-feasible cuts add one level. Wider cuts are evaluated for a
/// decomposition with the leaves arriving last in the free set; `None`
/// means the cut must be discarded.
pub fn cut_delay(function: &TruthTable, arrivals: &[u32], k: usize) -> Option<CutTiming> {
    let n = arrivals.len();
    debug_assert_eq!(function.num_vars(), n);
    let max = arrivals.iter().copied().max().unwrap_or(0);
    if n == 0 {
        return Some(CutTiming {
            delay: 0,
            increments: Vec::new(),
            mu: 1,
            fs: Vec::new(),
        });
    }
    if n <= k {
        return Some(CutTiming {
            delay: max + 1,
            increments: vec![1; n],
            mu: 1,
            fs: Vec::new(),
        });
    }
    let late: Vec<usize> = (0..n).filter(|&i| arrivals[i] == max).collect();
    let profile = acd::evaluate(function, k, &late).ok()?;
    if !profile.feasible || profile.mu > MAX_MULTIPLICITY {
        return None;
    }
    let delay = profile.delay(arrivals)?;
    Some(CutTiming {
        delay,
        increments: profile.increments,
        mu: profile.mu,
        fs: profile.fs_vars,
    })
}

/// Estimated LUT count of a cut: 1 when `k`-feasible, otherwise
/// `ceil(log2 mu) + 1`, ignoring any shared set.
pub fn cut_area_estimate(num_leaves: usize, mu: usize, k: usize) -> u32 {
    if num_leaves == 0 {
        0
    } else if num_leaves <= k || mu <= 1 {
        1
    } else {
        (usize::BITS - (mu - 1).leading_zeros()) + 1
    }
}

#[derive(Debug, Clone)]
struct Choice {
    leaves: Vec<u32>,
    function: TruthTable,
    timing: CutTiming,
    area: u32,
}

/// Total order on f64 keys.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Flow(f64);

impl Eq for Flow {}

impl PartialOrd for Flow {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Flow {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0)
    }
}

const UNREQUIRED: u32 = u32::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum AreaMode {
    Flow,
    Exact,
}

/// Summary of a mapping run.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct MapReport {
    /// Largest PO arrival computed by the mapper.
    pub arrival: u32,
    /// Estimated LUT count of the final cover.
    pub area_estimate: u32,
    /// Wide cuts in the final cover.
    pub wide_cuts: usize,
    /// Wide cuts whose decomposition failed at realization and were banned.
    pub acd_fallbacks: usize,
}

/// Where a decomposed wide cut ended up in the realized network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WideCutRecord {
    /// The composition LUT.
    pub root: usize,
    /// Cut leaves in the free set.
    pub fs_leaves: Vec<usize>,
    /// The remaining cut leaves (bound and shared set).
    pub other_leaves: Vec<usize>,
}

impl WideCutRecord {
    /// True when every free-set leaf feeds the root directly and every other
    /// leaf reaches it through at most one bound-set LUT.
    pub fn respects_delay_contract(&self, net: &LutNetwork) -> bool {
        let is_leaf = |x: usize| self.fs_leaves.contains(&x) || self.other_leaves.contains(&x);
        if net.is_pi(self.root) {
            return false;
        }
        net.lut(self.root).fanins.iter().all(|&f| {
            is_leaf(f)
                || (!net.is_pi(f)
                    && net
                        .lut(f)
                        .fanins
                        .iter()
                        .all(|&g| self.other_leaves.contains(&g)))
        })
    }
}

#[derive(Debug, Clone)]
pub struct MapResult {
    pub network: LutNetwork,
    pub report: MapReport,
    pub wide_cuts: Vec<WideCutRecord>,
}

struct Mapper<'a> {
    aig: &'a Aig,
    params: MapParams,
    best: Vec<Option<Choice>>,
    arrival: Vec<u32>,
    required: Vec<u32>,
    area_flow: Vec<f64>,
    est_refs: Vec<f64>,
    map_refs: Vec<u32>,
    banned: HashSet<(usize, Vec<u32>)>,
}

impl<'a> Mapper<'a> {
    fn new(aig: &'a Aig, params: MapParams) -> Self {
        let n = aig.num_nodes();
        Self {
            aig,
            params,
            best: vec![None; n],
            arrival: vec![0; n],
            required: vec![UNREQUIRED; n],
            area_flow: vec![0.0; n],
            est_refs: aig.fanout_counts().iter().map(|&r| (r as f64).max(1.0)).collect(),
            map_refs: vec![0; n],
            banned: HashSet::new(),
        }
    }

    fn leaf_arrivals(&self, leaves: &[u32]) -> Vec<u32> {
        leaves.iter().map(|&l| self.arrival[l as usize]).collect()
    }

    fn flow_of(&self, leaves: &[u32], area: u32, node: usize) -> f64 {
        let sum: f64 = leaves.iter().map(|&l| self.area_flow[l as usize]).sum();
        (area as f64 + sum) / self.est_refs[node]
    }

    fn time(&self, node: usize, cut: &Cut, k_only: bool) -> Option<Choice> {
        let k = self.params.k;
        if cut.size() > k && (k_only || self.banned.contains(&(node, cut.leaves().to_vec()))) {
            return None;
        }
        let timing = cut_delay(cut.function(), &self.leaf_arrivals(cut.leaves()), k)?;
        let area = cut_area_estimate(cut.size(), timing.mu, k);
        Some(Choice {
            leaves: cut.leaves().to_vec(),
            function: cut.function().clone(),
            timing,
            area,
        })
    }

    /// Re-times a previously selected cut with its recorded increments.
    fn retime(&self, c: &Choice) -> Choice {
        let mut c = c.clone();
        c.timing.delay = c
            .leaves
            .iter()
            .zip(&c.timing.increments)
            .map(|(&l, &inc)| self.arrival[l as usize] + inc as u32)
            .max()
            .unwrap_or(0);
        c
    }

    fn commit(&mut self, node: usize, c: Choice) {
        self.arrival[node] = c.timing.delay;
        self.area_flow[node] = self.flow_of(&c.leaves, c.area, node);
        self.best[node] = Some(c);
    }

    fn delay_pass(&mut self) {
        let p = self.params;
        let max_leaves = if p.acd_enabled() { p.l } else { p.k };
        let mut en = CutEnumerator::new(
            self.aig,
            CutParams {
                max_leaves,
                max_cuts: p.cuts_per_node,
                minimize_support: p.minimize_support,
            },
        );
        for n in self.aig.and_nodes() {
            let mut timed: Vec<Choice> = Vec::new();
            let set = en.compute(n, |cut| {
                let c = self.time(n, cut, false)?;
                let key = (
                    c.timing.delay,
                    Flow(self.flow_of(&c.leaves, c.area, n)),
                    c.leaves.len(),
                    c.leaves.clone(),
                );
                timed.push(c);
                Some(key)
            });
            let first = set.ranked(n).next().expect("every AND node has a non-trivial cut");
            let choice = timed
                .into_iter()
                .find(|c| c.leaves == first.leaves())
                .expect("ranked cut was timed");
            self.commit(n, choice);
        }
    }

    fn area_pass(&mut self, mode: AreaMode) {
        let p = self.params;
        let mut en = CutEnumerator::new(
            self.aig,
            CutParams {
                max_leaves: p.k,
                max_cuts: p.cuts_per_node,
                minimize_support: p.minimize_support,
            },
        );
        for n in self.aig.and_nodes() {
            let mut timed: Vec<Choice> = Vec::new();
            en.compute(n, |cut| {
                let c = self.time(n, cut, true)?;
                let key = (
                    Flow(self.flow_of(&c.leaves, c.area, n)),
                    c.timing.delay,
                    c.leaves.len(),
                    c.leaves.clone(),
                );
                timed.push(c);
                Some(key)
            });
            let kept: HashSet<Vec<u32>> = en.cuts(n).ranked(n).map(|c| c.leaves().to_vec()).collect();
            timed.retain(|c| kept.contains(&c.leaves));
            let previous = self.retime(self.best[n].as_ref().expect("node was mapped"));
            if !timed.iter().any(|c| c.leaves == previous.leaves) {
                timed.push(previous);
            }
            let req = self.required[n];
            timed.retain(|c| c.timing.delay <= req);
            let referenced = self.map_refs[n] > 0;
            let choice = match mode {
                AreaMode::Flow => timed
                    .into_iter()
                    .min_by(|a, b| {
                        let ka = (Flow(self.flow_of(&a.leaves, a.area, n)), a.timing.delay, a.leaves.len());
                        let kb = (Flow(self.flow_of(&b.leaves, b.area, n)), b.timing.delay, b.leaves.len());
                        ka.cmp(&kb).then_with(|| a.leaves.cmp(&b.leaves))
                    })
                    .expect("previous choice always meets its required time"),
                AreaMode::Exact => {
                    if referenced {
                        self.deref_node(n);
                    }
                    let mut best: Option<(u32, Choice)> = None;
                    for c in timed {
                        let a = self.ref_leaves(&c.leaves, c.area);
                        self.deref_leaves(&c.leaves, c.area);
                        let better = match &best {
                            None => true,
                            Some((ba, bc)) => (a, c.timing.delay, c.leaves.len(), &c.leaves)
                                < (*ba, bc.timing.delay, bc.leaves.len(), &bc.leaves),
                        };
                        if better {
                            best = Some((a, c));
                        }
                    }
                    best.expect("previous choice always meets its required time").1
                }
            };
            self.commit(n, choice);
            if mode == AreaMode::Exact && referenced {
                self.ref_node(n);
            }
        }
    }

    fn ref_leaves(&mut self, leaves: &[u32], area: u32) -> u32 {
        let mut total = area;
        for &l in leaves {
            let l = l as usize;
            if self.aig.is_and(l) {
                if self.map_refs[l] == 0 {
                    total += self.ref_node(l);
                }
                self.map_refs[l] += 1;
            }
        }
        total
    }

    fn deref_leaves(&mut self, leaves: &[u32], area: u32) -> u32 {
        let mut total = area;
        for &l in leaves {
            let l = l as usize;
            if self.aig.is_and(l) {
                self.map_refs[l] -= 1;
                if self.map_refs[l] == 0 {
                    total += self.deref_node(l);
                }
            }
        }
        total
    }

    fn ref_node(&mut self, n: usize) -> u32 {
        let c = self.best[n].take().expect("node was mapped");
        let a = self.ref_leaves(&c.leaves, c.area);
        self.best[n] = Some(c);
        a
    }

    fn deref_node(&mut self, n: usize) -> u32 {
        let c = self.best[n].take().expect("node was mapped");
        let a = self.deref_leaves(&c.leaves, c.area);
        self.best[n] = Some(c);
        a
    }

    /// Recomputes references of the current cover and required times.
    fn update_cover(&mut self) {
        self.map_refs.iter_mut().for_each(|r| *r = 0);
        for i in 0..self.aig.num_pos() {
            let d = self.aig.pos()[i].node();
            if self.aig.is_and(d) {
                if self.map_refs[d] == 0 {
                    self.ref_node(d);
                }
                self.map_refs[d] += 1;
            }
        }
        let target = self.po_arrival();
        self.required.iter_mut().for_each(|r| *r = UNREQUIRED);
        for po in self.aig.pos() {
            self.required[po.node()] = target;
        }
        for n in self.aig.and_nodes().rev() {
            if self.map_refs[n] == 0 {
                continue;
            }
            let req = self.required[n];
            let c = self.best[n].as_ref().expect("node was mapped");
            for (&l, &inc) in c.leaves.iter().zip(&c.timing.increments) {
                let r = &mut self.required[l as usize];
                *r = (*r).min(req - inc as u32);
            }
        }
        for n in 0..self.est_refs.len() {
            self.est_refs[n] = ((2.0 * self.est_refs[n] + self.map_refs[n] as f64) / 3.0).max(1.0);
        }
    }

    fn po_arrival(&self) -> u32 {
        self.aig
            .pos()
            .iter()
            .map(|&po| {
                let d = po.node();
                if self.aig.is_pi(d) && po.is_complemented() {
                    1
                } else {
                    self.arrival[d]
                }
            })
            .max()
            .unwrap_or(0)
    }

    fn run_passes(&mut self) {
        self.delay_pass();
        self.update_cover();
        for _ in 0..self.params.area_flow_passes {
            self.area_pass(AreaMode::Flow);
            self.update_cover();
        }
        for _ in 0..self.params.exact_area_passes {
            self.area_pass(AreaMode::Exact);
            self.update_cover();
        }
    }

    /// Builds the LUT network for the current cover, or reports the node
    /// whose wide cut could not be decomposed.
    fn realize(&self) -> Result<(LutNetwork, Vec<WideCutRecord>), usize> {
        let aig = self.aig;
        let k = self.params.k;
        let mut net = LutNetwork::new(aig.num_pis());
        net.pi_names = (0..aig.num_pis()).map(|i| aig.pi_name(i)).collect();
        let mut sig: Vec<usize> = vec![usize::MAX; aig.num_nodes()];
        let mut records: Vec<WideCutRecord> = Vec::new();
        for i in 0..aig.num_pis() {
            sig[1 + i] = i;
        }
        for n in aig.and_nodes() {
            if self.map_refs[n] == 0 {
                continue;
            }
            let c = self.best[n].as_ref().expect("covered node was mapped");
            let fanins: Vec<usize> = c.leaves.iter().map(|&l| sig[l as usize]).collect();
            debug_assert!(fanins.iter().all(|&f| f != usize::MAX));
            if c.leaves.len() <= k {
                sig[n] = net.add_lut(fanins, c.function.clone());
                continue;
            }
            let r = match acd::decompose_with_free_set(&c.function, k, &c.timing.fs) {
                Ok(r) => r,
                Err(AcdError::Infeasible | AcdError::NoEncoding | AcdError::Multiplicity(_)) => return Err(n),
                Err(e) => panic!("unexpected decomposition error at node {n}: {e}"),
            };
            let mut comp_fanins: Vec<usize> = r.fs_vars.iter().map(|&v| fanins[v]).collect();
            for bs in &r.bs_functions {
                if bs.is_buffer {
                    comp_fanins.push(fanins[bs.support[0]]);
                } else {
                    let f: Vec<usize> = bs.support.iter().map(|&v| fanins[v]).collect();
                    comp_fanins.push(net.add_lut(f, bs.function.clone()));
                }
            }
            sig[n] = net.add_lut(comp_fanins, r.composition.clone());
            records.push(WideCutRecord {
                root: sig[n],
                fs_leaves: r.fs_vars.iter().map(|&v| fanins[v]).collect(),
                other_leaves: (0..fanins.len()).filter(|v| !r.fs_vars.contains(v)).map(|v| fanins[v]).collect(),
            });
        }
        // POs carry no complement: negate the driving LUT in place when
        // nothing else reads it, otherwise duplicate it.
        let mut positive_use = vec![false; net.num_nodes()];
        for lut in net.luts() {
            for &f in &lut.fanins {
                positive_use[f] = true;
            }
        }
        for po in aig.pos() {
            if !po.is_complemented() && po.node() != 0 {
                positive_use[sig[po.node()]] = true;
            }
        }
        let mut negated: Vec<Option<usize>> = vec![None; net.num_nodes()];
        for (i, po) in aig.pos().iter().enumerate() {
            let name = aig.po_name(i);
            let d = po.node();
            let driver = if d == 0 {
                net.add_lut(Vec::new(), TruthTable::constant(0, po.is_complemented()))
            } else if !po.is_complemented() {
                sig[d]
            } else if let Some(x) = negated[sig[d]] {
                x
            } else {
                let s = sig[d];
                let x = if net.is_pi(s) {
                    net.add_lut(vec![s], TruthTable::from_u64(1, 0b01))
                } else if !positive_use[s] {
                    let lut = net.lut_mut(s);
                    lut.function = !&lut.function;
                    s
                } else {
                    let lut = net.lut(s).clone();
                    let x = net.add_lut(lut.fanins, !&lut.function);
                    if let Some(rec) = records.iter().find(|r| r.root == s).cloned() {
                        records.push(WideCutRecord { root: x, ..rec });
                    }
                    x
                };
                negated.resize(net.num_nodes(), None);
                negated[s] = Some(x);
                x
            };
            net.add_po(driver, name);
        }
        let new_id = net.cleanup();
        let records = records
            .into_iter()
            .filter_map(|r| {
                let keep = |v: &[usize]| v.iter().filter_map(|&x| new_id[x]).collect();
                Some(WideCutRecord {
                    root: new_id[r.root]?,
                    fs_leaves: keep(&r.fs_leaves),
                    other_leaves: keep(&r.other_leaves),
                })
            })
            .collect();
        Ok((net, records))
    }

    fn report(&self, fallbacks: usize) -> MapReport {
        let k = self.params.k;
        let covered = self.aig.and_nodes().filter(|&n| self.map_refs[n] > 0);
        let mut area = 0;
        let mut wide = 0;
        for n in covered {
            let c = self.best[n].as_ref().expect("covered node was mapped");
            area += c.area;
            wide += (c.leaves.len() > k) as usize;
        }
        MapReport {
            arrival: self.po_arrival(),
            area_estimate: area,
            wide_cuts: wide,
            acd_fallbacks: fallbacks,
        }
    }
}

/// Maps `aig` into `k`-LUTs and realizes the result.
pub fn map(aig: &Aig, params: MapParams) -> Result<MapResult, MapError> {
    params.validate()?;
    let mut m = Mapper::new(aig, params);
    let mut fallbacks = 0;
    loop {
        m.run_passes();
        match m.realize() {
            Ok((network, wide_cuts)) => {
                return Ok(MapResult {
                    network,
                    report: m.report(fallbacks),
                    wide_cuts,
                })
            }
            Err(node) => {
                let leaves = m.best[node].as_ref().expect("failed node was mapped").leaves.clone();
                m.banned.insert((node, leaves));
                fallbacks += 1;
                let banned = std::mem::take(&mut m.banned);
                m = Mapper::new(aig, params);
                m.banned = banned;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aig::Lit;
    use crate::lutnet::equiv_check;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn and_tree(n: usize) -> Aig {
        let mut aig = Aig::new(n);
        let mut layer: Vec<Lit> = (0..n).map(|i| aig.pi(i)).collect();
        while layer.len() > 1 {
            let mut next = Vec::new();
            for p in layer.chunks(2) {
                next.push(if p.len() == 2 { aig.add_and(p[0], p[1]) } else { p[0] });
            }
            layer = next;
        }
        aig.add_po(layer[0], None);
        aig
    }

    fn ripple_adder(bits: usize) -> Aig {
        let mut aig = Aig::new(2 * bits);
        let mut carry = Lit::FALSE;
        for i in 0..bits {
            let (a, b) = (aig.pi(i), aig.pi(bits + i));
            let ab = aig.add_and(a, b);
            let nab = aig.add_and(!a, !b);
            let x = aig.add_and(!ab, !nab);
            let xc = aig.add_and(x, carry);
            let nxc = aig.add_and(!x, !carry);
            let sum = aig.add_and(!xc, !nxc);
            aig.add_po(sum, None);
            carry = !aig.add_and(!ab, !xc);
        }
        aig.add_po(carry, None);
        aig
    }

    #[test]
    fn wide_cuts_shorten_ripple_adder() {
        let aig = ripple_adder(16);
        let base = map(&aig, MapParams { l: 0, ..Default::default() }).unwrap();
        let acd = map(&aig, MapParams::default()).unwrap();
        assert_eq!(equiv_check(&acd.network, &aig, 1, 0), Ok(0));
        assert!(acd.report.wide_cuts > 0);
        assert!(acd.network.stats().depth < base.network.stats().depth);
        assert_eq!(acd.network.stats().depth, acd.report.arrival);
        assert!(acd.wide_cuts.iter().all(|w| w.respects_delay_contract(&acd.network)));
    }

    #[test]
    fn delay_of_small_and_wide_cuts() {
        let t = cut_delay(&TruthTable::random(6, &mut ChaCha8Rng::seed_from_u64(0)), &[3, 1, 0, 2, 3, 3], 6).unwrap();
        assert_eq!(t.delay, 4);
        let parity = TruthTable::from_fn(8, |a| a.count_ones() % 2 == 1);
        let t = cut_delay(&parity, &[5, 5, 3, 3, 3, 3, 3, 3], 6).unwrap();
        assert_eq!(t.delay, 6);
        assert!(t.increments[0] == 1 && t.increments[1] == 1);
        // Seven late leaves cannot all be in a free set of at most five.
        let random = TruthTable::random(8, &mut ChaCha8Rng::seed_from_u64(1));
        assert_eq!(cut_delay(&random, &[2, 2, 2, 2, 2, 2, 2, 0], 6), None);
    }

    #[test]
    fn area_estimates() {
        assert_eq!(cut_area_estimate(5, 1, 6), 1);
        assert_eq!(cut_area_estimate(8, 4, 6), 3);
        assert_eq!(cut_area_estimate(8, 16, 6), 5);
        assert_eq!(cut_area_estimate(0, 1, 6), 0);
    }

    #[test]
    fn params_validation() {
        assert!(MapParams { l: 6, ..Default::default() }.validate().is_err());
        assert!(MapParams { l: 12, ..Default::default() }.validate().is_err());
        assert!(MapParams { l: 0, ..Default::default() }.validate().is_ok());
        assert!(MapParams { k: 1, ..Default::default() }.validate().is_err());
    }

    #[test]
    fn and8_depth_two() {
        let aig = and_tree(8);
        let r = map(&aig, MapParams { l: 0, ..Default::default() }).unwrap();
        assert_eq!(r.network.stats().depth, 2);
        assert_eq!(r.report.arrival, 2);
        assert_eq!(equiv_check(&r.network, &aig, 1, 0), Ok(0));
    }

    #[test]
    fn complemented_outputs() {
        let mut aig = Aig::new(3);
        let a = aig.add_and(aig.pi(0), aig.pi(1));
        let b = aig.add_and(a, aig.pi(2));
        aig.add_po(!b, None);
        aig.add_po(b, None);
        aig.add_po(!a, None);
        aig.add_po(!aig.pi(2), None);
        aig.add_po(Lit::TRUE, None);
        aig.add_po(Lit::FALSE, None);
        let r = map(&aig, MapParams::default()).unwrap();
        assert_eq!(equiv_check(&r.network, &aig, 1, 0), Ok(0));
        assert_eq!(r.network.stats().depth, r.report.arrival);
    }

    #[test]
    fn random_aigs_map_correctly() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for i in 0..12 {
            let aig = Aig::random(12 + i, 150, 6, &mut rng);
            for params in [MapParams { l: 0, ..Default::default() }, MapParams::default(), MapParams { k: 4, l: 7, ..Default::default() }] {
                let r = map(&aig, params).unwrap();
                assert_eq!(equiv_check(&r.network, &aig, 16, 3), Ok(0));
                assert!(r.network.max_fanin() <= params.k);
                assert_eq!(r.network.stats().depth, r.report.arrival);
                assert!(r.wide_cuts.iter().all(|w| w.respects_delay_contract(&r.network)));
            }
        }
    }
}
