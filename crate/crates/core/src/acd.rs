// SPDX-License-Identifier: Apache-2.0

//! Ashenhurst-Curtis decomposition into two levels of k-input LUTs.
//!
//! A function `f(x_bs, x_ss, x_fs)` is rewritten as
//! `g(h(x_bs, x_ss), x_ss, x_fs)`: the composition `g` is a multiplexer whose
//! data inputs are the distinct cofactors of `f` over the free set (the FS
//! functions) and whose select inputs are the bound-set functions `h` plus
//! any shared-set variables passed through directly.
//!
//! Two entry points are provided. [`evaluate`] only checks whether a
//! decomposition exists with the late-arriving variables in the free set and
//! reports the resulting per-variable delay increments; it is cheap enough to
//! run on every wide cut during mapping. [`decompose`] additionally solves the
//! encoding problem (candidate BS functions, unate covering, composition) and
//! returns the LUTs.

use std::collections::HashMap;

use thiserror::Error;

use crate::truthtable::{ternary_support_size_word, TernaryTable, TruthTable};

/// Largest function width accepted by [`evaluate`] and [`decompose`].
pub const MAX_ACD_VARS: usize = 11;
/// Largest column multiplicity the encoder handles.
pub const MAX_MULTIPLICITY: usize = 16;
/// Above this multiplicity candidates are enumerated without don't-cares.
pub const DC_MULTIPLICITY_LIMIT: usize = 8;
/// Cap on local-search passes in [`solve_covering`].
const LOCAL_SEARCH_PASSES: usize = 100;
/// Covering problems with at most this many candidates are solved exactly.
const EXACT_COVER_CANDIDATES: usize = 256;
/// Node budget for the exact covering search.
const EXACT_COVER_NODES: usize = 200_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AcdError {
    #[error("LUT size {0} is not supported")]
    LutSize(usize),
    #[error("function has {num_vars} variables, which fits a {k}-LUT")]
    FitsInLut { num_vars: usize, k: usize },
    #[error("function has {0} variables, more than the supported {MAX_ACD_VARS}")]
    TooManyVars(usize),
    #[error("late variable {0} is out of range")]
    LateVar(usize),
    #[error("column multiplicity {0} is outside the supported range")]
    Multiplicity(usize),
    #[error("no decomposition with the late variables in the free set")]
    Infeasible,
    #[error("no encoding of the free-set functions fits in the available LUT inputs")]
    NoEncoding,
    #[error("codes of free-set functions {0} and {1} overlap")]
    DuplicateCodes(usize, usize),
}

/// Distinct free-set cofactors of a function whose free-set variables occupy
/// the `p` least significant positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityResult {
    pub mu: usize,
    /// Positions of the free-set variables (always `0..p`).
    pub fs_vars: Vec<usize>,
    /// Distinct `p`-variable cofactors, in order of first appearance.
    pub fs_functions: Vec<TruthTable>,
    /// For each bound-set assignment, the index of its cofactor.
    pub class_of: Vec<u16>,
    /// Number of bound-set variables.
    pub num_bs_vars: usize,
}

/// A candidate bound-set function, seen as a dichotomy of i-sets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsCandidate {
    pub on_isets: u32,
    pub off_isets: u32,
    /// Bit `pair_index(a, b)` is set when the candidate separates i-sets `a`, `b`.
    pub covered_seeds: u128,
    pub cost: usize,
}

impl BsCandidate {
    /// The incompletely specified function: ON over the `on_isets`, OFF over
    /// the `off_isets`, don't-care elsewhere.
    pub fn function(&self, isets: &[TruthTable]) -> TernaryTable {
        let union = |mask: u32| {
            let mut t = TruthTable::zero(isets[0].num_vars());
            for (i, s) in isets.iter().enumerate() {
                if mask >> i & 1 != 0 {
                    t |= s;
                }
            }
            t
        };
        TernaryTable::new(union(self.on_isets), union(self.on_isets | self.off_isets))
    }
}

/// Which candidate family [`enumerate_bs_candidates`] produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CandidateMode {
    /// ON/OFF/don't-care per i-set, i-set 0 restricted to ON or don't-care.
    DontCare,
    /// ON/OFF only, i-set 0 in ON.
    Complete,
    /// Balanced ON/OFF splits only (all `2^M` codes are needed).
    Balanced,
}

#[derive(Debug, Clone)]
pub struct CandidateSet {
    pub mode: CandidateMode,
    /// Number of assignments visited before dropping non-distinguishing ones.
    pub enumerated: usize,
    pub candidates: Vec<BsCandidate>,
}

/// Result of [`evaluate`]: delay increment per variable of the evaluated
/// function (1 through the composition LUT only, 2 through a BS LUT).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DelayProfile {
    pub feasible: bool,
    /// Empty when infeasible.
    pub increments: Vec<u8>,
    pub mu: usize,
    /// Free-set variables of the best decomposition, ascending.
    pub fs_vars: Vec<usize>,
}

impl DelayProfile {
    fn infeasible() -> Self {
        Self {
            feasible: false,
            increments: Vec::new(),
            mu: 0,
            fs_vars: Vec::new(),
        }
    }

    /// Latest output arrival given input arrival times, if feasible.
    pub fn delay(&self, arrivals: &[u32]) -> Option<u32> {
        if !self.feasible {
            return None;
        }
        arrivals
            .iter()
            .zip(&self.increments)
            .map(|(&a, &inc)| a + inc as u32)
            .max()
    }
}

/// A selected code for one FS function. Bits outside `care` are don't-cares:
/// the corresponding BS function may take either value on that FS function's
/// i-set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Code {
    pub value: u32,
    pub care: u32,
}

impl Code {
    pub fn full(value: u32, width: usize) -> Self {
        Self {
            value,
            care: if width >= 32 { u32::MAX } else { (1 << width) - 1 },
        }
    }

    #[inline]
    pub fn matches(&self, selector: u32) -> bool {
        (selector ^ self.value) & self.care == 0
    }

    /// Two codes overlap when some selector value matches both.
    pub fn overlaps(&self, other: &Code) -> bool {
        (self.value ^ other.value) & self.care & other.care == 0
    }

    fn distance(&self, selector: u32) -> u32 {
        ((selector ^ self.value) & self.care).count_ones()
    }
}

/// One select input of the composition: either a BS LUT or a shared-set
/// variable wired straight through.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BsFunction {
    /// Function over `support.len()` variables (`support[i]` is variable `i`).
    pub function: TruthTable,
    /// Original variables, ascending.
    pub support: Vec<usize>,
    pub is_buffer: bool,
}

/// A two-level decomposition. Variable indices refer to the decomposed
/// function's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcdResult {
    pub num_vars: usize,
    /// Free-set variables; `fs_vars[i]` is input `i` of the composition.
    pub fs_vars: Vec<usize>,
    /// Select inputs; `bs_functions[j]` drives input `fs_vars.len() + j`.
    pub bs_functions: Vec<BsFunction>,
    /// Shared-set variables (the buffer BS functions).
    pub ss_vars: Vec<usize>,
    /// Code of each FS function, indexed like the multiplicity classes.
    pub codes: Vec<Code>,
    pub composition: TruthTable,
    pub mu: usize,
}

impl AcdResult {
    /// LUTs needed: the composition plus one per non-buffer BS function.
    pub fn lut_count(&self) -> usize {
        1 + self.bs_functions.iter().filter(|b| !b.is_buffer).count()
    }

    /// The composed function over the original variables.
    pub fn recompose(&self) -> TruthTable {
        let n = self.num_vars;
        let mut inputs: Vec<TruthTable> = self
            .fs_vars
            .iter()
            .map(|&v| TruthTable::nth_var(n, v))
            .collect();
        for bs in &self.bs_functions {
            inputs.push(bs.function.expand(n, &bs.support));
        }
        self.composition.compose(&inputs)
    }
}

/// Whether `r` reproduces `original` exactly on all assignments.
pub fn verify_acd(r: &AcdResult, original: &TruthTable) -> bool {
    r.num_vars == original.num_vars() && r.recompose() == *original
}

/// Combinations of `k` elements out of `0..n` in revolving-door order:
/// consecutive combinations differ by exchanging one element.
fn revolving_door(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if k == n {
        return vec![(0..n).collect()];
    }
    let mut out = revolving_door(n - 1, k);
    let mut tail = revolving_door(n - 1, k - 1);
    tail.reverse();
    for mut c in tail {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// Every `p`-subset of `0..n` that contains `forced`, each exactly once.
///
/// The first set holds `forced` plus the lowest remaining positions; each
/// later set differs from its predecessor by exchanging one free-set
/// variable with one bound-set variable.
pub fn enumerate_free_sets(n: usize, p: usize, forced: &[usize]) -> Vec<Vec<usize>> {
    assert!(forced.len() <= p && p <= n, "need |forced| <= p <= n");
    let free: Vec<usize> = (0..n).filter(|v| !forced.contains(v)).collect();
    revolving_door(free.len(), p - forced.len())
        .into_iter()
        .map(|combo| {
            let mut set: Vec<usize> = forced.to_vec();
            set.extend(combo.iter().map(|&i| free[i]));
            set.sort_unstable();
            set
        })
        .collect()
}

/// Counts distinct `2^p`-bit slices, giving up once more than `cap` are seen.
fn count_distinct_slices(tt: &TruthTable, p: usize, cap: usize) -> usize {
    let n = tt.num_vars();
    let slices = 1usize << (n - p);
    if p <= 6 {
        let mut seen: Vec<u64> = Vec::with_capacity(cap.min(64) + 1);
        for i in 0..slices {
            let w = tt.slice_word(p, i);
            if !seen.contains(&w) {
                seen.push(w);
                if seen.len() > cap {
                    return seen.len();
                }
            }
        }
        seen.len()
    } else {
        let nb = 1usize << (p - 6);
        let blocks = tt.blocks();
        let mut seen: Vec<&[u64]> = Vec::new();
        for i in 0..slices {
            let s = &blocks[i * nb..(i + 1) * nb];
            if !seen.contains(&s) {
                seen.push(s);
                if seen.len() > cap {
                    return seen.len();
                }
            }
        }
        seen.len()
    }
}

/// Column multiplicity with the free set in positions `0..p`.
pub fn column_multiplicity(tt: &TruthTable, p: usize) -> MultiplicityResult {
    let n = tt.num_vars();
    assert!(p < n, "free set must leave at least one bound-set variable");
    let mut index: HashMap<TruthTable, u16> = HashMap::new();
    let mut fs_functions = Vec::new();
    let class_of = (0..1usize << (n - p))
        .map(|i| {
            let s = tt.slice(p, i);
            *index.entry(s).or_insert_with_key(|s| {
                fs_functions.push(s.clone());
                (fs_functions.len() - 1) as u16
            })
        })
        .collect();
    MultiplicityResult {
        mu: fs_functions.len(),
        fs_vars: (0..p).collect(),
        fs_functions,
        class_of,
        num_bs_vars: n - p,
    }
}

/// Smallest column multiplicity over all free sets of size `p` that contain
/// the `n_late` least significant positions.
///
/// Returns the multiplicity and the free set achieving it (positions in
/// `tt`). Free sets are visited in revolving-door order so that each step
/// costs a single variable swap.
pub fn compute_smallest_multiplicity(tt: &TruthTable, p: usize, n_late: usize) -> (usize, Vec<usize>) {
    smallest_multiplicity(tt, p, n_late, usize::MAX)
}

/// As [`compute_smallest_multiplicity`], but counting stops early once a free
/// set exceeds `cap`; the result is exact whenever it is `<= cap`.
fn smallest_multiplicity(tt: &TruthTable, p: usize, n_late: usize, cap: usize) -> (usize, Vec<usize>) {
    let n = tt.num_vars();
    assert!(n_late <= p && p < n);
    let combos = revolving_door(n - n_late, p - n_late);
    let mut work = tt.clone();
    // slot_var[s] = position (in `tt`) of the variable now in slot s.
    let mut slot_var: Vec<usize> = (0..n).collect();
    let mut current: Vec<usize> = (n_late..p).collect();
    let mut best = (usize::MAX, Vec::new());
    for combo in combos {
        let target: Vec<usize> = combo.iter().map(|&c| c + n_late).collect();
        // Exchange the departing FS variable with the arriving BS variable.
        if let Some(&out) = current.iter().find(|v| !target.contains(v)) {
            let inc = *target.iter().find(|v| !current.contains(v)).unwrap();
            let s_out = slot_var.iter().position(|&v| v == out).unwrap();
            let s_in = slot_var.iter().position(|&v| v == inc).unwrap();
            work.swap_in_place(s_out, s_in);
            slot_var.swap(s_out, s_in);
            current = target;
        }
        let limit = cap.min(best.0.saturating_sub(1));
        let mu = count_distinct_slices(&work, p, limit);
        if mu < best.0 {
            let mut fs: Vec<usize> = slot_var[..p].to_vec();
            fs.sort_unstable();
            best = (mu, fs);
            if mu == 1 {
                break;
            }
        }
    }
    best
}

/// Options for [`evaluate_with`] and [`decompose_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct AcdParams {
    /// Keep growing the free set while the multiplicity does not increase
    /// (instead of requiring a strict decrease).
    pub prefer_larger_fs: bool,
    /// When the scan finds nothing, [`decompose_with`] also tries free sets
    /// leaving more than `k` bound-set variables, accepting the result only
    /// if every BS function minimizes to at most `k` inputs.
    pub wide_bound_set: bool,
}

#[derive(Debug, Clone)]
struct ScanStep {
    mu: usize,
    /// Free set in original variable indices, ascending.
    fs: Vec<usize>,
}

fn check_inputs(tt: &TruthTable, k: usize, late: &[usize]) -> Result<(), AcdError> {
    let n = tt.num_vars();
    if !(2..=8).contains(&k) {
        return Err(AcdError::LutSize(k));
    }
    if n <= k {
        return Err(AcdError::FitsInLut { num_vars: n, k });
    }
    if n > MAX_ACD_VARS {
        return Err(AcdError::TooManyVars(n));
    }
    if let Some(&v) = late.iter().find(|&&v| v >= n) {
        return Err(AcdError::LateVar(v));
    }
    Ok(())
}

/// The free-set size scan. Returns every admitted step, best last.
fn scan(tt: &TruthTable, k: usize, late: &[usize], params: AcdParams) -> Result<Vec<ScanStep>, AcdError> {
    check_inputs(tt, k, late)?;
    let mut late: Vec<usize> = late.to_vec();
    late.sort_unstable();
    late.dedup();
    let n = tt.num_vars();
    let (reordered, perm) = tt.move_vars_to_bottom(&late);
    let mut steps: Vec<ScanStep> = Vec::new();
    let start = n.saturating_sub(k).max(late.len());
    for p in start..k {
        let bound = 1usize << (k - p);
        let best = steps.last().map_or(usize::MAX, |s| s.mu);
        let cap = if params.prefer_larger_fs {
            bound.min(best)
        } else {
            bound.min(best.saturating_sub(1))
        };
        let (mu, fs_pos) = smallest_multiplicity(&reordered, p, late.len(), cap);
        let improves = if params.prefer_larger_fs { mu <= best } else { mu < best };
        if mu <= bound && improves {
            let mut fs: Vec<usize> = fs_pos.iter().map(|&pos| perm.var_at(pos)).collect();
            fs.sort_unstable();
            steps.push(ScanStep { mu, fs });
            continue;
        }
        break;
    }
    Ok(steps)
}

/// Checks for a decomposition into two levels of `k`-LUTs with all `late`
/// variables in the free set.
pub fn evaluate(tt: &TruthTable, k: usize, late: &[usize]) -> Result<DelayProfile, AcdError> {
    evaluate_with(tt, k, late, AcdParams::default())
}

pub fn evaluate_with(
    tt: &TruthTable,
    k: usize,
    late: &[usize],
    params: AcdParams,
) -> Result<DelayProfile, AcdError> {
    let steps = scan(tt, k, late, params)?;
    Ok(match steps.last() {
        None => DelayProfile::infeasible(),
        Some(step) => {
            let mut increments = vec![2u8; tt.num_vars()];
            for &v in &step.fs {
                increments[v] = 1;
            }
            DelayProfile {
                feasible: true,
                increments,
                mu: step.mu,
                fs_vars: step.fs.clone(),
            }
        }
    })
}

/// One-hot indicator functions over the bound-set variables, one per FS function.
pub fn build_isets(m: &MultiplicityResult) -> Vec<TruthTable> {
    let mut isets = vec![TruthTable::zero(m.num_bs_vars); m.mu];
    for (i, &c) in m.class_of.iter().enumerate() {
        isets[c as usize].set_bit(i, true);
    }
    for s in isets.iter_mut() {
        s.normalize();
    }
    isets
}

/// Row index of the seed dichotomy `{a, b}`, `a < b`.
#[inline]
pub fn pair_index(a: usize, b: usize, mu: usize) -> usize {
    debug_assert!(a < b && b < mu);
    a * (2 * mu - a - 1) / 2 + (b - a - 1)
}

/// Masks of the seed pairs involving each i-set.
fn pair_masks(mu: usize) -> Vec<u128> {
    let mut masks = vec![0u128; mu];
    for a in 0..mu {
        for b in a + 1..mu {
            let bit = 1u128 << pair_index(a, b, mu);
            masks[a] |= bit;
            masks[b] |= bit;
        }
    }
    masks
}

/// Builds candidates from (ON, OFF) i-set masks.
struct CandidateBuilder<'a> {
    isets: &'a [TruthTable],
    /// Union of the single-word i-sets for every mask.
    unions: Option<Vec<u64>>,
    pairs: Vec<u128>,
}

impl<'a> CandidateBuilder<'a> {
    fn new(isets: &'a [TruthTable]) -> Self {
        let unions = (isets[0].num_vars() <= 6).then(|| {
            let mut u = vec![0u64; 1 << isets.len()];
            for m in 1..u.len() {
                u[m] = u[m & (m - 1)] | isets[m.trailing_zeros() as usize].blocks()[0];
            }
            u
        });
        Self {
            isets,
            unions,
            pairs: pair_masks(isets.len()),
        }
    }

    fn pairs_touching(&self, mut mask: u32) -> u128 {
        let mut m = 0u128;
        while mask != 0 {
            m |= self.pairs[mask.trailing_zeros() as usize];
            mask &= mask - 1;
        }
        m
    }

    fn build(&self, on: u32, off: u32) -> BsCandidate {
        let n = self.isets[0].num_vars();
        let cost = match &self.unions {
            Some(u) => ternary_support_size_word(u[on as usize], u[(on | off) as usize], n),
            None => {
                let probe = BsCandidate {
                    on_isets: on,
                    off_isets: off,
                    covered_seeds: 0,
                    cost: 0,
                };
                probe.function(self.isets).support_size()
            }
        };
        BsCandidate {
            on_isets: on,
            off_isets: off,
            // ON and OFF are disjoint, so a pair touching both separates them.
            covered_seeds: self.pairs_touching(on) & self.pairs_touching(off),
            cost,
        }
    }
}

/// Enumerates candidate BS functions for the given i-sets.
///
/// `k_minus_p` is the number of composition inputs left for select signals;
/// when `mu == 2^k_minus_p` every code is needed and only balanced splits
/// can appear in a solution.
pub fn enumerate_bs_candidates(
    isets: &[TruthTable],
    mu: usize,
    k_minus_p: usize,
) -> Result<CandidateSet, AcdError> {
    if !(2..=MAX_MULTIPLICITY).contains(&mu) || isets.len() != mu {
        return Err(AcdError::Multiplicity(mu));
    }
    let builder = CandidateBuilder::new(isets);
    let all: u32 = (1u32 << mu) - 1;
    let mut candidates = Vec::new();
    let mut enumerated = 0usize;
    let saturated = mu.is_power_of_two() && k_minus_p < 32 && mu == 1 << k_minus_p;

    let mode = if saturated {
        for on in 0..=all {
            if on & 1 == 0 || on.count_ones() as usize != mu / 2 {
                continue;
            }
            enumerated += 1;
            candidates.push(builder.build(on, all & !on));
        }
        CandidateMode::Balanced
    } else if mu <= DC_MULTIPLICITY_LIMIT {
        // Base-3 digits per i-set: 0 = don't-care, 1 = ON, 2 = OFF. I-set 0
        // only takes 0 or 1.
        let total = 2 * 3usize.pow(mu as u32 - 1);
        for code in 0..total {
            let mut on = 0u32;
            let mut off = 0u32;
            let mut c = code;
            for i in 0..mu {
                let digit = if i == 0 { c % 2 } else { c % 3 };
                c /= if i == 0 { 2 } else { 3 };
                match digit {
                    1 => on |= 1 << i,
                    2 => off |= 1 << i,
                    _ => {}
                }
            }
            enumerated += 1;
            if on != 0 && off != 0 {
                candidates.push(builder.build(on, off));
            }
        }
        CandidateMode::DontCare
    } else {
        for rest in 0..1u32 << (mu - 1) {
            let on = 1 | rest << 1;
            enumerated += 1;
            if on != all {
                candidates.push(builder.build(on, all & !on));
            }
        }
        CandidateMode::Complete
    };
    Ok(CandidateSet {
        mode,
        enumerated,
        candidates,
    })
}

fn full_rows(mu: usize) -> u128 {
    let rows = mu * (mu - 1) / 2;
    if rows == 128 {
        u128::MAX
    } else {
        (1u128 << rows) - 1
    }
}

/// Binary-code cover: column `b` puts the FS functions whose index has bit
/// `b` set on one side. Exists in every candidate family.
fn binary_cover(candidates: &[BsCandidate], mu: usize, max_columns: usize) -> Option<Vec<usize>> {
    let bits = usize::BITS as usize - (mu - 1).leading_zeros() as usize;
    if bits > max_columns {
        return None;
    }
    let all: u32 = (1u32 << mu) - 1;
    (0..bits)
        .map(|b| {
            let mut on: u32 = (0..mu).filter(|a| a >> b & 1 != 0).fold(0, |m, a| m | 1 << a);
            if on & 1 == 0 {
                on = all & !on;
            }
            let off = all & !on;
            candidates.iter().position(|c| c.on_isets == on && c.off_isets == off)
        })
        .collect()
}

/// Minimum-cost unate covering of the seed dichotomies by at most
/// `max_columns` candidates: greedy construction followed by local search.
///
/// Greedy repeatedly takes the column covering the most uncovered rows,
/// breaking ties by lower cost and then lower index. Local search drops
/// redundant columns and replaces single columns by cheaper ones that keep
/// every row covered, until nothing changes. Returns `None` when no cover
/// within `max_columns` is found.
pub fn solve_covering(candidates: &[BsCandidate], mu: usize, max_columns: usize) -> Option<Vec<usize>> {
    if mu < 2 {
        return Some(Vec::new());
    }
    let full = full_rows(mu);
    let mut selected = greedy_cover(candidates, full)
        .filter(|s| s.len() <= max_columns)
        .or_else(|| binary_cover(candidates, mu, max_columns));
    if let Some(sel) = selected.as_mut() {
        local_search(candidates, sel, full);
    }
    if candidates.len() <= EXACT_COVER_CANDIDATES {
        exact_cover(candidates, mu, max_columns, &mut selected);
    }
    selected
}

fn greedy_cover(candidates: &[BsCandidate], full: u128) -> Option<Vec<usize>> {
    let mut selected: Vec<usize> = Vec::new();
    let mut covered = 0u128;
    // Columns that stopped gaining never gain again.
    let mut alive: Vec<usize> = (0..candidates.len()).collect();
    while covered != full {
        let mut best: Option<(u32, usize, usize)> = None;
        alive.retain(|&j| {
            let c = &candidates[j];
            let gain = (c.covered_seeds & !covered).count_ones();
            if gain == 0 {
                return false;
            }
            let better = match best {
                None => true,
                Some((g, cost, _)) => gain > g || (gain == g && c.cost < cost),
            };
            if better {
                best = Some((gain, c.cost, j));
            }
            true
        });
        let (_, _, j) = best?;
        selected.push(j);
        covered |= candidates[j].covered_seeds;
    }
    Some(selected)
}

/// Branch and bound over the uncovered row with the fewest covering columns.
/// Replaces `best` only by strictly cheaper covers.
fn exact_cover(candidates: &[BsCandidate], mu: usize, max_columns: usize, best: &mut Option<Vec<usize>>) {
    struct Search<'a> {
        candidates: &'a [BsCandidate],
        full: u128,
        max_columns: usize,
        best_cost: usize,
        best: Option<Vec<usize>>,
        nodes: usize,
    }
    impl Search<'_> {
        fn run(&mut self, covered: u128, cost: usize, chosen: &mut Vec<usize>) {
            self.nodes += 1;
            if covered == self.full {
                if cost < self.best_cost {
                    self.best_cost = cost;
                    self.best = Some(chosen.clone());
                }
                return;
            }
            if chosen.len() == self.max_columns || self.nodes > EXACT_COVER_NODES {
                return;
            }
            let open = self.full & !covered;
            let mut row_choice: Option<(usize, u32)> = None;
            let mut rows = open;
            while rows != 0 {
                let r = rows.trailing_zeros();
                rows &= rows - 1;
                let count = self.candidates.iter().filter(|c| c.covered_seeds >> r & 1 != 0).count();
                if row_choice.is_none_or(|(n, _)| count < n) {
                    row_choice = Some((count, r));
                }
            }
            let (_, row) = row_choice.unwrap();
            let mut branch: Vec<usize> = (0..self.candidates.len())
                .filter(|&j| self.candidates[j].covered_seeds >> row & 1 != 0)
                .collect();
            branch.sort_by_key(|&j| (self.candidates[j].cost, j));
            for j in branch {
                let c = self.candidates[j].cost;
                if cost + c >= self.best_cost {
                    break;
                }
                chosen.push(j);
                self.run(covered | self.candidates[j].covered_seeds, cost + c, chosen);
                chosen.pop();
            }
        }
    }
    let mut search = Search {
        candidates,
        full: full_rows(mu),
        max_columns,
        best_cost: best
            .as_ref()
            .map_or(usize::MAX, |b| b.iter().map(|&j| candidates[j].cost).sum()),
        best: None,
        nodes: 0,
    };
    search.run(0, 0, &mut Vec::new());
    if search.best.is_some() {
        *best = search.best;
    }
}

fn local_search(candidates: &[BsCandidate], selected: &mut Vec<usize>, full: u128) {
    let coverage_without = |sel: &[usize], skip: usize| {
        sel.iter()
            .enumerate()
            .filter(|&(i, _)| i != skip)
            .fold(0u128, |m, (_, &j)| m | candidates[j].covered_seeds)
    };
    for _ in 0..LOCAL_SEARCH_PASSES {
        let mut improved = false;
        let mut i = 0;
        while i < selected.len() {
            if coverage_without(selected, i) == full {
                selected.remove(i);
                improved = true;
            } else {
                i += 1;
            }
        }
        for i in 0..selected.len() {
            let need = full & !coverage_without(selected, i);
            let current = candidates[selected[i]].cost;
            let replacement = candidates
                .iter()
                .enumerate()
                .filter(|(j, c)| c.cost < current && c.covered_seeds & need == need && !selected.contains(j))
                .min_by_key(|(j, c)| (c.cost, *j));
            if let Some((j, _)) = replacement {
                selected[i] = j;
                improved = true;
            }
        }
        if !improved {
            break;
        }
    }
}

/// Builds the composition function over `p + num_selectors` inputs: FS
/// variables below, select inputs above. For a selector value matching the
/// code of FS function `i`, the `2^p`-bit slice equals `fs_functions[i]`.
/// Selector values matching no code are unreachable and take the FS function
/// of the nearest code (Hamming distance over cared bits, ties to the lower
/// code value).
pub fn compose(
    codes: &[Code],
    fs_functions: &[TruthTable],
    p: usize,
    num_selectors: usize,
) -> Result<TruthTable, AcdError> {
    assert_eq!(codes.len(), fs_functions.len());
    for a in 0..codes.len() {
        for b in a + 1..codes.len() {
            if codes[a].overlaps(&codes[b]) {
                return Err(AcdError::DuplicateCodes(a, b));
            }
        }
    }
    let n = p + num_selectors;
    let mut t = TruthTable::zero(n);
    let slice_bits = 1usize << p;
    for sel in 0..1u32 << num_selectors {
        let owner = codes
            .iter()
            .position(|c| c.matches(sel))
            .unwrap_or_else(|| {
                (0..codes.len())
                    .min_by_key(|&i| (codes[i].distance(sel), codes[i].value, i))
                    .unwrap()
            });
        let g = &fs_functions[owner];
        for b in 0..slice_bits {
            if g.get_bit(b) {
                t.set_bit(sel as usize * slice_bits + b, true);
            }
        }
    }
    t.normalize();
    Ok(t)
}

/// Computes a two-level decomposition with all `late` variables in the free set.
///
/// Free sets admitted by the [`evaluate`] scan are tried best first.
pub fn decompose(tt: &TruthTable, k: usize, late: &[usize]) -> Result<AcdResult, AcdError> {
    decompose_with(tt, k, late, AcdParams::default())
}

pub fn decompose_with(
    tt: &TruthTable,
    k: usize,
    late: &[usize],
    params: AcdParams,
) -> Result<AcdResult, AcdError> {
    let steps = scan(tt, k, late, params)?;
    let mut last_err = AcdError::Infeasible;
    for step in steps.iter().rev() {
        match decompose_with_free_set(tt, k, &step.fs) {
            Ok(r) => return Ok(r),
            Err(e) => last_err = e,
        }
    }
    if params.wide_bound_set {
        let mut late: Vec<usize> = late.to_vec();
        late.sort_unstable();
        late.dedup();
        let n = tt.num_vars();
        let start = n.saturating_sub(k).max(late.len());
        for p in (late.len().max(1)..start.min(k)).rev() {
            let bound = (1usize << (k - p)).min(MAX_MULTIPLICITY);
            let mut sets: Vec<(usize, Vec<usize>)> = enumerate_free_sets(n, p, &late)
                .into_iter()
                .map(|fs| (count_distinct_slices(&tt.move_vars_to_bottom(&fs).0, p, bound), fs))
                .filter(|(mu, _)| *mu <= bound)
                .collect();
            sets.sort();
            for (_, fs) in sets {
                match decompose_with_free_set(tt, k, &fs) {
                    Ok(r) => return Ok(r),
                    Err(e) => last_err = e,
                }
            }
        }
    }
    Err(last_err)
}

/// Decomposition for a fixed free set (original variable indices, ascending).
///
/// With more than `k` bound-set variables only candidates whose minimized
/// support fits a `k`-LUT are considered.
pub fn decompose_with_free_set(tt: &TruthTable, k: usize, fs: &[usize]) -> Result<AcdResult, AcdError> {
    let n = tt.num_vars();
    let p = fs.len();
    if p >= n || p >= k {
        return Err(AcdError::Infeasible);
    }
    let (reordered, perm) = tt.move_vars_to_bottom(fs);
    let m = column_multiplicity(&reordered, p);
    let bs_original: Vec<usize> = (p..n).map(|pos| perm.var_at(pos)).collect();
    if m.mu == 1 {
        return Ok(AcdResult {
            num_vars: n,
            fs_vars: fs.to_vec(),
            bs_functions: Vec::new(),
            ss_vars: Vec::new(),
            codes: vec![Code::full(0, 0)],
            composition: m.fs_functions[0].clone(),
            mu: 1,
        });
    }
    if m.mu > MAX_MULTIPLICITY {
        return Err(AcdError::Multiplicity(m.mu));
    }
    let max_columns = k - p;
    if m.mu > 1 << max_columns {
        return Err(AcdError::Infeasible);
    }
    let isets = build_isets(&m);
    let mut cands = enumerate_bs_candidates(&isets, m.mu, max_columns)?;
    if n - p > k {
        cands.candidates.retain(|c| c.cost <= k);
    }
    let selection = solve_covering(&cands.candidates, m.mu, max_columns).ok_or(AcdError::NoEncoding)?;
    let mut result = assemble(&m, &isets, fs, &bs_original, &cands.candidates, &selection)?;

    // The mapper budgets ceil(log2 mu) + 1 LUTs for this cut; if the
    // cheapest cover needs more, retry with that many columns.
    let min_columns = usize::BITS as usize - (m.mu - 1).leading_zeros() as usize;
    if result.lut_count() > min_columns + 1 && min_columns < max_columns {
        if let Some(sel) = solve_covering(&cands.candidates, m.mu, min_columns) {
            let alt = assemble(&m, &isets, fs, &bs_original, &cands.candidates, &sel)?;
            if alt.lut_count() < result.lut_count() {
                result = alt;
            }
        }
    }
    result.num_vars = n;
    Ok(result)
}

fn assemble(
    m: &MultiplicityResult,
    isets: &[TruthTable],
    fs: &[usize],
    bs_original: &[usize],
    candidates: &[BsCandidate],
    selection: &[usize],
) -> Result<AcdResult, AcdError> {
    let p = fs.len();
    let mut codes = vec![Code { value: 0, care: 0 }; m.mu];
    let mut bs_functions = Vec::with_capacity(selection.len());
    let mut ss_vars = Vec::new();
    for (bit, &j) in selection.iter().enumerate() {
        let cand = &candidates[j];
        let (mut completion, local_support) = cand.function(isets).minimize_support();
        let (mut on, mut off) = (cand.on_isets, cand.off_isets);
        let mut is_buffer = false;
        if local_support.len() == 1 {
            let v = local_support[0];
            let x = TruthTable::nth_var(completion.num_vars(), v);
            if completion == !&x {
                // A complemented buffer: flip the column so the variable can
                // drive the select input directly.
                completion = x;
                std::mem::swap(&mut on, &mut off);
            }
            is_buffer = true;
        }
        for a in 0..m.mu {
            if on >> a & 1 != 0 {
                codes[a].value |= 1 << bit;
                codes[a].care |= 1 << bit;
            } else if off >> a & 1 != 0 {
                codes[a].care |= 1 << bit;
            }
        }
        let support: Vec<usize> = local_support.iter().map(|&v| bs_original[v]).collect();
        // Express the LUT over its support in ascending original order.
        let mut order: Vec<usize> = (0..support.len()).collect();
        order.sort_by_key(|&i| support[i]);
        let sorted_local: Vec<usize> = order.iter().map(|&i| local_support[i]).collect();
        let sorted_support: Vec<usize> = order.iter().map(|&i| support[i]).collect();
        let function = reorder_projection(&completion, &sorted_local);
        if is_buffer {
            ss_vars.push(sorted_support[0]);
        }
        bs_functions.push(BsFunction {
            function,
            support: sorted_support,
            is_buffer,
        });
    }
    let composition = compose(&codes, &m.fs_functions, p, selection.len())?;
    Ok(AcdResult {
        num_vars: 0,
        fs_vars: fs.to_vec(),
        bs_functions,
        ss_vars,
        codes,
        composition,
        mu: m.mu,
    })
}

/// Restricts `t` to the variables `vars` (any order), variable `vars[i]`
/// becoming variable `i`.
fn reorder_projection(t: &TruthTable, vars: &[usize]) -> TruthTable {
    let (moved, _) = t.move_vars_to_bottom(vars);
    let ascending: Vec<usize> = (0..vars.len()).collect();
    moved.project(&ascending)
}
