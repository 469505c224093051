// SPDX-License-Identifier: Apache-2.0

//! Mapped LUT networks: statistics, BLIF output and simulation against the
//! source AIG.

use std::io::{self, Write};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::aig::Aig;
use crate::truthtable::TruthTable;

/// Default number of random 64-bit pattern words for [`equiv_check`].
pub const DEFAULT_SIM_WORDS: usize = 1024;
/// Up to this many PIs [`equiv_check`] simulates exhaustively.
pub const EXHAUSTIVE_PI_LIMIT: usize = 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LutNetError {
    #[error("interface mismatch: network has {net_pis} PIs / {net_pos} POs, AIG has {aig_pis} / {aig_pos}")]
    Interface {
        net_pis: usize,
        net_pos: usize,
        aig_pis: usize,
        aig_pos: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lut {
    pub fanins: Vec<usize>,
    /// Function over `fanins.len()` variables, fanin `i` is variable `i`.
    pub function: TruthTable,
}

/// A DAG of LUTs. Node ids `0..num_pis` are primary inputs, node
/// `num_pis + i` is `luts[i]`. LUTs without fanins are constants.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LutNetwork {
    num_pis: usize,
    luts: Vec<Lut>,
    pos: Vec<usize>,
    pub pi_names: Vec<String>,
    pub po_names: Vec<String>,
    pub model: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
pub struct NetStats {
    /// LUTs with at least one input.
    pub luts: usize,
    pub edges: usize,
    pub depth: u32,
}

impl LutNetwork {
    pub fn new(num_pis: usize) -> Self {
        Self {
            num_pis,
            pi_names: (0..num_pis).map(|i| format!("pi{i}")).collect(),
            model: "top".to_string(),
            ..Default::default()
        }
    }

    pub fn num_pis(&self) -> usize {
        self.num_pis
    }

    pub fn num_nodes(&self) -> usize {
        self.num_pis + self.luts.len()
    }

    pub fn luts(&self) -> &[Lut] {
        &self.luts
    }

    pub fn lut(&self, node: usize) -> &Lut {
        &self.luts[node - self.num_pis]
    }

    pub fn lut_mut(&mut self, node: usize) -> &mut Lut {
        &mut self.luts[node - self.num_pis]
    }

    pub fn is_pi(&self, node: usize) -> bool {
        node < self.num_pis
    }

    pub fn pos(&self) -> &[usize] {
        &self.pos
    }

    /// Adds a LUT; fanins must already exist. Returns its node id.
    pub fn add_lut(&mut self, fanins: Vec<usize>, function: TruthTable) -> usize {
        assert_eq!(fanins.len(), function.num_vars());
        assert!(fanins.iter().all(|&f| f < self.num_nodes()));
        self.luts.push(Lut { fanins, function });
        self.num_nodes() - 1
    }

    pub fn add_po(&mut self, node: usize, name: String) {
        assert!(node < self.num_nodes());
        self.pos.push(node);
        self.po_names.push(name);
    }

    /// LUT level of every node; PIs and constants are at level 0.
    pub fn levels(&self) -> Vec<u32> {
        let mut level = vec![0u32; self.num_nodes()];
        for (i, lut) in self.luts.iter().enumerate() {
            level[self.num_pis + i] = lut.fanins.iter().map(|&f| level[f] + 1).max().unwrap_or(0);
        }
        level
    }

    pub fn stats(&self) -> NetStats {
        let level = self.levels();
        NetStats {
            luts: self.luts.iter().filter(|l| !l.fanins.is_empty()).count(),
            edges: self.luts.iter().map(|l| l.fanins.len()).sum(),
            depth: self.pos.iter().map(|&p| level[p]).max().unwrap_or(0),
        }
    }

    /// Removes LUT inputs outside each function's support, then LUTs that no
    /// PO depends on. Node ids are renumbered, order is preserved. Returns
    /// the new id of every old node (`None` when removed).
    pub fn cleanup(&mut self) -> Vec<Option<usize>> {
        for lut in &mut self.luts {
            let (f, support) = lut.function.shrink_to_support();
            if support.len() < lut.fanins.len() {
                lut.fanins = support.iter().map(|&i| lut.fanins[i]).collect();
                lut.function = f;
            }
        }
        let mut live = vec![false; self.num_nodes()];
        for &p in &self.pos {
            live[p] = true;
        }
        for i in (0..self.luts.len()).rev() {
            if live[self.num_pis + i] {
                for &f in &self.luts[i].fanins {
                    live[f] = true;
                }
            }
        }
        let mut new_id: Vec<usize> = (0..self.num_pis).collect();
        let mut luts = Vec::with_capacity(self.luts.len());
        for (i, lut) in std::mem::take(&mut self.luts).into_iter().enumerate() {
            if live[self.num_pis + i] {
                new_id.push(self.num_pis + luts.len());
                luts.push(Lut {
                    fanins: lut.fanins.iter().map(|&f| new_id[f]).collect(),
                    function: lut.function,
                });
            } else {
                new_id.push(usize::MAX);
            }
        }
        self.luts = luts;
        for p in &mut self.pos {
            *p = new_id[*p];
        }
        new_id.into_iter().map(|i| (i != usize::MAX).then_some(i)).collect()
    }

    /// Largest LUT input count.
    pub fn max_fanin(&self) -> usize {
        self.luts.iter().map(|l| l.fanins.len()).max().unwrap_or(0)
    }

    /// Bit-parallel simulation, one word per node.
    pub fn simulate(&self, inputs: &[u64]) -> Vec<u64> {
        assert_eq!(inputs.len(), self.num_pis);
        let mut val = Vec::with_capacity(self.num_nodes());
        val.extend_from_slice(inputs);
        let mut ins = Vec::new();
        for lut in &self.luts {
            ins.clear();
            ins.extend(lut.fanins.iter().map(|&f| val[f]));
            val.push(eval_words(lut.function.blocks(), lut.fanins.len(), &ins));
        }
        val
    }

    pub fn simulate_pos(&self, inputs: &[u64]) -> Vec<u64> {
        let val = self.simulate(inputs);
        self.pos.iter().map(|&p| val[p]).collect()
    }

    /// Writes the network as combinational BLIF.
    ///
    /// LUT nodes are named `n<id>` unless they drive a PO, in which case they
    /// take the first such PO's name. Further POs on the same driver, and
    /// POs driven by PIs, get buffers. Each cover lists ON-set minterms.
    pub fn write_blif<W: Write>(&self, mut w: W) -> io::Result<()> {
        let mut names: Vec<String> = self.pi_names.clone();
        names.extend((0..self.luts.len()).map(|i| format!("n{}", self.num_pis + i)));
        let mut named_by_po = vec![false; self.num_nodes()];
        for (p, &drv) in self.pos.iter().enumerate() {
            if !self.is_pi(drv) && !named_by_po[drv] {
                named_by_po[drv] = true;
                names[drv] = self.po_names[p].clone();
            }
        }
        writeln!(w, ".model {}", self.model)?;
        write!(w, ".inputs")?;
        for n in &self.pi_names {
            write!(w, " {n}")?;
        }
        writeln!(w)?;
        write!(w, ".outputs")?;
        for n in &self.po_names {
            write!(w, " {n}")?;
        }
        writeln!(w)?;
        for (i, lut) in self.luts.iter().enumerate() {
            write!(w, ".names")?;
            for &f in &lut.fanins {
                write!(w, " {}", names[f])?;
            }
            writeln!(w, " {}", names[self.num_pis + i])?;
            let m = lut.fanins.len();
            for minterm in 0..1usize << m {
                if lut.function.get_bit(minterm) {
                    let cube: String = (0..m).map(|v| if minterm >> v & 1 != 0 { '1' } else { '0' }).collect();
                    if m == 0 {
                        writeln!(w, "1")?;
                    } else {
                        writeln!(w, "{cube} 1")?;
                    }
                }
            }
        }
        for (p, &drv) in self.pos.iter().enumerate() {
            if names[drv] != self.po_names[p] {
                writeln!(w, ".names {} {}", names[drv], self.po_names[p])?;
                writeln!(w, "1 1")?;
            }
        }
        writeln!(w, ".end")
    }

    pub fn to_blif_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_blif(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("BLIF output is UTF-8")
    }
}

/// Evaluates a truth table on word-parallel inputs by Shannon expansion
/// over the most significant variable.
fn eval_words(blocks: &[u64], m: usize, ins: &[u64]) -> u64 {
    if m > 6 {
        let half = blocks.len() / 2;
        let lo = eval_words(&blocks[..half], m - 1, ins);
        let hi = eval_words(&blocks[half..], m - 1, ins);
        let x = ins[m - 1];
        return (x & hi) | (!x & lo);
    }
    eval_word(blocks[0], m, ins)
}

fn eval_word(w: u64, m: usize, ins: &[u64]) -> u64 {
    if m == 0 {
        return 0u64.wrapping_sub(w & 1);
    }
    let half = 1u32 << (m - 1);
    let lo = w & (u64::MAX >> (64 - half));
    let hi = (w >> half) & (u64::MAX >> (64 - half));
    let x = ins[m - 1];
    (x & eval_word(hi, m - 1, ins)) | (!x & eval_word(lo, m - 1, ins))
}

/// Input words for exhaustive simulation of `n` PIs: word `j` of PI `i`.
fn exhaustive_word(i: usize, j: usize) -> u64 {
    const MASKS: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    if i < 6 {
        MASKS[i]
    } else {
        0u64.wrapping_sub((j >> (i - 6) & 1) as u64)
    }
}

/// Simulates `net` and `aig` on the same patterns and returns the number of
/// differing PO bits. With at most [`EXHAUSTIVE_PI_LIMIT`] PIs every input
/// assignment is simulated; otherwise `words` random 64-bit words per PI
/// drawn from `seed`.
pub fn equiv_check(net: &LutNetwork, aig: &Aig, words: usize, seed: u64) -> Result<u64, LutNetError> {
    if net.num_pis() != aig.num_pis() || net.pos().len() != aig.num_pos() {
        return Err(LutNetError::Interface {
            net_pis: net.num_pis(),
            net_pos: net.pos().len(),
            aig_pis: aig.num_pis(),
            aig_pos: aig.num_pos(),
        });
    }
    let n = aig.num_pis();
    let compare = |inputs: &[u64], mask: u64| -> u64 {
        let a = aig.simulate_pos(inputs);
        let b = net.simulate_pos(inputs);
        a.iter().zip(&b).map(|(x, y)| ((x ^ y) & mask).count_ones() as u64).sum()
    };
    if n <= EXHAUSTIVE_PI_LIMIT {
        let total = if n <= 6 { 1 } else { 1usize << (n - 6) };
        let mask = if n >= 6 { u64::MAX } else { u64::MAX >> (64 - (1u32 << n)) };
        return Ok((0..total)
            .into_par_iter()
            .map(|j| {
                let inputs: Vec<u64> = (0..n).map(|i| exhaustive_word(i, j)).collect();
                compare(&inputs, mask)
            })
            .sum());
    }
    Ok((0..words)
        .into_par_iter()
        .map(|j| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (j as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let inputs: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
            compare(&inputs, u64::MAX)
        })
        .sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn and2() -> (Aig, LutNetwork) {
        let mut aig = Aig::new(2);
        let y = aig.add_and(aig.pi(0), aig.pi(1));
        aig.add_po(y, Some("y".into()));
        let mut net = LutNetwork::new(2);
        net.pi_names = vec!["a".into(), "b".into()];
        let l = net.add_lut(vec![0, 1], TruthTable::from_u64(2, 0x8));
        net.add_po(l, "y".into());
        (aig, net)
    }

    #[test]
    fn single_lut_stats() {
        let (_, net) = and2();
        assert_eq!(net.stats(), NetStats { luts: 1, edges: 2, depth: 1 });
    }

    #[test]
    fn blif_and_and_constants() {
        let (_, mut net) = and2();
        assert_eq!(
            net.to_blif_string(),
            ".model top\n.inputs a b\n.outputs y\n.names a b y\n11 1\n.end\n"
        );
        let c0 = net.add_lut(vec![], TruthTable::zero(0));
        net.add_po(c0, "z".into());
        let c1 = net.add_lut(vec![], TruthTable::one(0));
        net.add_po(c1, "o".into());
        net.add_po(0, "a_copy".into());
        let s = net.to_blif_string();
        assert!(s.contains(".names z\n.names o\n1\n"));
        assert!(s.contains(".names a a_copy\n1 1\n"));
        assert_eq!(net.stats().luts, 1);
    }

    #[test]
    fn equivalence_and_perturbation() {
        let (aig, mut net) = and2();
        assert_eq!(equiv_check(&net, &aig, 4, 0), Ok(0));
        net.lut_mut(2).function = TruthTable::from_u64(2, 0x9);
        assert_eq!(equiv_check(&net, &aig, 4, 0), Ok(1));
    }

    #[test]
    fn interface_mismatch() {
        let (aig, _) = and2();
        let net = LutNetwork::new(3);
        assert!(equiv_check(&net, &aig, 4, 0).is_err());
    }

    #[test]
    fn wide_evaluation_matches_table() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for m in 0..=8 {
            let t = TruthTable::random(m, &mut rng);
            let ins: Vec<u64> = (0..m).map(|_| rng.gen()).collect();
            let out = eval_words(t.blocks(), m, &ins);
            for b in 0..64 {
                let idx = (0..m).fold(0, |acc, v| acc | ((ins[v] >> b & 1) as usize) << v);
                assert_eq!(out >> b & 1 != 0, t.eval(idx), "m {m}");
            }
        }
    }

    #[test]
    fn random_mode_detects_difference() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let aig = Aig::random(20, 60, 4, &mut rng);
        let mut net = LutNetwork::new(20);
        // A network computing x0 for every PO differs almost surely.
        for _ in 0..4 {
            net.add_po(0, "p".into());
        }
        assert!(equiv_check(&net, &aig, 16, 1).unwrap() > 0);
    }
}
