// SPDX-License-Identifier: Apache-2.0

//! Bit-parallel truth tables for completely specified Boolean functions of up
//! to 16 variables.
//!
//! Bit `i` of the table is the value of the function under the assignment
//! whose binary encoding is `i`: variable 0 is the least significant bit of
//! the assignment index and toggles fastest, variable `n - 1` is the most
//! significant one.
//!
//! Tables are stored as `max(1, 2^(n-6))` 64-bit blocks. Tables with fewer
//! than six variables use a single block in which the `2^n`-bit pattern is
//! replicated over the whole word, so that the fixed variable masks below
//! apply unchanged to every width.

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use rand::Rng;
use thiserror::Error;

/// Largest supported number of variables.
pub const MAX_VARS: usize = 16;

/// Positive-literal masks of the six in-word variables.
const VAR_MASKS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TruthTableError {
    #[error("{0} variables exceeds the supported maximum of {MAX_VARS}")]
    TooManyVars(usize),
    #[error("expected {expected} hex digits, found {found}")]
    HexLength { expected: usize, found: usize },
    #[error("invalid hex digit {0:?}")]
    HexDigit(char),
    #[error("hex value does not fit in {0} bits")]
    HexOverflow(usize),
    #[error("variable {var} out of range for a {num_vars}-variable table")]
    VarOutOfRange { var: usize, num_vars: usize },
}

/// Number of 64-bit blocks used by a table over `num_vars` variables.
#[inline]
pub fn num_blocks(num_vars: usize) -> usize {
    if num_vars <= 6 {
        1
    } else {
        1 << (num_vars - 6)
    }
}

/// Replicates the low `2^num_vars` bits of `word` over the whole word.
#[inline]
fn replicate(mut word: u64, num_vars: usize) -> u64 {
    if num_vars >= 6 {
        return word;
    }
    let width = 1u32 << num_vars;
    word &= (1u64 << width) - 1;
    let mut w = width;
    while w < 64 {
        word |= word << w;
        w <<= 1;
    }
    word
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TruthTable {
    num_vars: usize,
    blocks: Vec<u64>,
}

impl TruthTable {
    pub fn zero(num_vars: usize) -> Self {
        assert!(num_vars <= MAX_VARS, "too many variables: {num_vars}");
        Self {
            num_vars,
            blocks: vec![0; num_blocks(num_vars)],
        }
    }

    pub fn one(num_vars: usize) -> Self {
        !Self::zero(num_vars)
    }

    pub fn constant(num_vars: usize, value: bool) -> Self {
        if value {
            Self::one(num_vars)
        } else {
            Self::zero(num_vars)
        }
    }

    /// The projection function `f = x_var`.
    pub fn nth_var(num_vars: usize, var: usize) -> Self {
        assert!(var < num_vars, "variable {var} out of range");
        let mut t = Self::zero(num_vars);
        if var < 6 {
            t.blocks.fill(VAR_MASKS[var]);
        } else {
            let stride = 1 << (var - 6);
            for (i, b) in t.blocks.iter_mut().enumerate() {
                if i & stride != 0 {
                    *b = u64::MAX;
                }
            }
        }
        t
    }

    /// Builds a table from an evaluation callback on assignment indices.
    pub fn from_fn(num_vars: usize, mut f: impl FnMut(usize) -> bool) -> Self {
        let mut t = Self::zero(num_vars);
        for i in 0..t.num_bits() {
            if f(i) {
                t.set_bit(i, true);
            }
        }
        t.normalize();
        t
    }

    /// Builds a table from raw blocks, replicating the pattern of small tables.
    pub fn from_blocks(num_vars: usize, blocks: &[u64]) -> Self {
        assert_eq!(blocks.len(), num_blocks(num_vars));
        let mut t = Self {
            num_vars,
            blocks: blocks.to_vec(),
        };
        t.normalize();
        t
    }

    /// Builds a table of at most six variables from the low `2^n` bits of `bits`.
    pub fn from_u64(num_vars: usize, bits: u64) -> Self {
        assert!(num_vars <= 6);
        Self {
            num_vars,
            blocks: vec![replicate(bits, num_vars)],
        }
    }

    pub fn random<R: Rng + ?Sized>(num_vars: usize, rng: &mut R) -> Self {
        let mut t = Self::zero(num_vars);
        for b in t.blocks.iter_mut() {
            *b = rng.gen();
        }
        t.normalize();
        t
    }

    /// Parses a hexadecimal table, most significant digit first.
    ///
    /// Exactly `max(1, 2^(n-2))` digits are required; an optional `0x` prefix
    /// is accepted. For fewer than two variables the single digit holds the
    /// table in its low `2^n` bits.
    pub fn from_hex(hex: &str, num_vars: usize) -> Result<Self, TruthTableError> {
        if num_vars > MAX_VARS {
            return Err(TruthTableError::TooManyVars(num_vars));
        }
        let digits = hex
            .strip_prefix("0x")
            .or_else(|| hex.strip_prefix("0X"))
            .unwrap_or(hex);
        let expected = if num_vars <= 2 { 1 } else { 1 << (num_vars - 2) };
        let found = digits.chars().count();
        if found != expected {
            return Err(TruthTableError::HexLength { expected, found });
        }
        let mut t = Self::zero(num_vars);
        for (pos, c) in digits.chars().rev().enumerate() {
            let nibble = c.to_digit(16).ok_or(TruthTableError::HexDigit(c))? as u64;
            t.blocks[pos / 16] |= nibble << (4 * (pos % 16));
        }
        if num_vars < 2 && t.blocks[0] >> (1 << num_vars) != 0 {
            return Err(TruthTableError::HexOverflow(1 << num_vars));
        }
        t.normalize();
        Ok(t)
    }

    /// Lowercase hexadecimal with `0x` prefix; inverse of [`TruthTable::from_hex`].
    pub fn to_hex(&self) -> String {
        let digits = if self.num_vars <= 2 {
            1
        } else {
            1 << (self.num_vars - 2)
        };
        let mut s = String::with_capacity(digits + 2);
        s.push_str("0x");
        for pos in (0..digits).rev() {
            let mut nibble = (self.blocks[pos / 16] >> (4 * (pos % 16))) & 0xF;
            if self.num_vars < 2 {
                nibble &= (1 << (1 << self.num_vars)) - 1;
            }
            s.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        s
    }

    #[inline]
    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    #[inline]
    pub fn num_bits(&self) -> usize {
        1 << self.num_vars
    }

    #[inline]
    pub fn blocks(&self) -> &[u64] {
        &self.blocks
    }

    /// The low `2^n` bits of a table with at most six variables.
    #[inline]
    pub fn as_u64(&self) -> u64 {
        debug_assert!(self.num_vars <= 6);
        if self.num_vars >= 6 {
            self.blocks[0]
        } else {
            self.blocks[0] & ((1u64 << (1 << self.num_vars)) - 1)
        }
    }

    #[inline]
    pub fn get_bit(&self, index: usize) -> bool {
        debug_assert!(index < self.num_bits());
        (self.blocks[index >> 6] >> (index & 63)) & 1 != 0
    }

    /// Sets one bit. For tables under six variables the caller must call
    /// [`TruthTable::normalize`] afterwards to restore the replicated padding.
    #[inline]
    pub fn set_bit(&mut self, index: usize, value: bool) {
        debug_assert!(index < self.num_bits());
        let mask = 1u64 << (index & 63);
        if value {
            self.blocks[index >> 6] |= mask;
        } else {
            self.blocks[index >> 6] &= !mask;
        }
    }

    /// Restores the replicated padding invariant of small tables.
    #[inline]
    pub fn normalize(&mut self) {
        if self.num_vars < 6 {
            self.blocks[0] = replicate(self.blocks[0], self.num_vars);
        }
    }

    #[cfg(test)]
    fn is_normalized(&self) -> bool {
        self.blocks.len() == num_blocks(self.num_vars)
            && (self.num_vars >= 6 || self.blocks[0] == replicate(self.blocks[0], self.num_vars))
    }

    pub fn count_ones(&self) -> usize {
        if self.num_vars < 6 {
            (self.as_u64().count_ones()) as usize
        } else {
            self.blocks.iter().map(|b| b.count_ones() as usize).sum()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_one(&self) -> bool {
        self.blocks.iter().all(|&b| b == u64::MAX)
    }

    pub fn is_const(&self) -> bool {
        self.is_zero() || self.is_one()
    }

    fn check_var(&self, var: usize) -> Result<(), TruthTableError> {
        if var < self.num_vars {
            Ok(())
        } else {
            Err(TruthTableError::VarOutOfRange {
                var,
                num_vars: self.num_vars,
            })
        }
    }

    /// Cofactor with respect to `var = polarity`, kept at the same width: both
    /// halves of the result hold the selected cofactor.
    pub fn cofactor(&self, var: usize, polarity: bool) -> Result<Self, TruthTableError> {
        self.check_var(var)?;
        let mut t = self.clone();
        t.cofactor_in_place(var, polarity);
        Ok(t)
    }

    pub(crate) fn cofactor_in_place(&mut self, var: usize, polarity: bool) {
        if var < 6 {
            let shift = 1 << var;
            let m = VAR_MASKS[var];
            for b in self.blocks.iter_mut() {
                *b = if polarity {
                    (*b & m) | ((*b & m) >> shift)
                } else {
                    (*b & !m) | ((*b & !m) << shift)
                };
            }
        } else {
            let stride = 1 << (var - 6);
            for i in 0..self.blocks.len() {
                if i & stride == 0 {
                    let j = i | stride;
                    if polarity {
                        self.blocks[i] = self.blocks[j];
                    } else {
                        self.blocks[j] = self.blocks[i];
                    }
                }
            }
        }
    }

    /// Whether the function essentially depends on `var`.
    pub fn has_var(&self, var: usize) -> bool {
        debug_assert!(var < self.num_vars);
        if var < 6 {
            let shift = 1 << var;
            let m = !VAR_MASKS[var];
            self.blocks.iter().any(|&b| ((b >> shift) ^ b) & m != 0)
        } else {
            let stride = 1 << (var - 6);
            (0..self.blocks.len())
                .filter(|i| i & stride == 0)
                .any(|i| self.blocks[i] != self.blocks[i | stride])
        }
    }

    /// Variables the function essentially depends on, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.num_vars).filter(|&v| self.has_var(v)).collect()
    }

    pub fn support_size(&self) -> usize {
        (0..self.num_vars).filter(|&v| self.has_var(v)).count()
    }

    /// Exchanges variables `i` and `j`.
    pub fn swap_vars(&self, i: usize, j: usize) -> Result<Self, TruthTableError> {
        self.check_var(i)?;
        self.check_var(j)?;
        let mut t = self.clone();
        t.swap_in_place(i, j);
        Ok(t)
    }

    pub(crate) fn swap_in_place(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        if j < 6 {
            // Delta swap: positions with a_i = 1, a_j = 0 trade places with
            // their partners at distance 2^j - 2^i.
            let shift = (1 << j) - (1 << i);
            let m = VAR_MASKS[i] & !VAR_MASKS[j];
            for b in self.blocks.iter_mut() {
                let t = ((*b >> shift) ^ *b) & m;
                *b ^= t ^ (t << shift);
            }
        } else if i < 6 {
            let shift = 1 << i;
            let m = VAR_MASKS[i];
            let stride = 1 << (j - 6);
            for lo in 0..self.blocks.len() {
                if lo & stride != 0 {
                    continue;
                }
                let hi = lo | stride;
                let (a, b) = (self.blocks[lo], self.blocks[hi]);
                self.blocks[lo] = (a & !m) | ((b << shift) & m);
                self.blocks[hi] = (b & m) | ((a >> shift) & !m);
            }
        } else {
            let si = 1 << (i - 6);
            let sj = 1 << (j - 6);
            for b in 0..self.blocks.len() {
                if b & si != 0 && b & sj == 0 {
                    self.blocks.swap(b, b - si + sj);
                }
            }
        }
    }

    /// Moves `vars` (in the given order) to positions `0..vars.len()`.
    ///
    /// Returns the reordered table and the permutation recording where each
    /// original variable ended up.
    pub fn move_vars_to_bottom(&self, vars: &[usize]) -> (Self, VarPermutation) {
        let mut t = self.clone();
        let mut perm = VarPermutation::identity(self.num_vars);
        for (target, &v) in vars.iter().enumerate() {
            let pos = perm.position(v);
            if pos != target {
                t.swap_in_place(pos, target);
                perm.swap_positions(pos, target);
            }
        }
        (t, perm)
    }

    /// Applies `perm` to a table expressed in original variable order, giving
    /// the table over permuted positions.
    pub fn permute(&self, perm: &VarPermutation) -> Self {
        let mut t = self.clone();
        let mut cur = VarPermutation::identity(self.num_vars);
        for v in 0..self.num_vars {
            let target = perm.position(v);
            let pos = cur.position(v);
            if pos != target {
                t.swap_in_place(pos, target);
                cur.swap_positions(pos, target);
            }
        }
        t
    }

    /// Re-expresses a table over permuted positions in original variable order.
    pub fn unpermute(&self, perm: &VarPermutation) -> Self {
        self.permute(&perm.inverse())
    }

    /// Re-expresses the function over `new_num_vars` variables, mapping
    /// variable `i` of `self` to variable `positions[i]` of the result.
    ///
    /// `positions` must be strictly increasing.
    pub fn expand(&self, new_num_vars: usize, positions: &[usize]) -> Self {
        debug_assert_eq!(positions.len(), self.num_vars);
        debug_assert!(positions.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(positions.last().is_none_or(|&p| p < new_num_vars));
        let mut t = self.extend_to(new_num_vars);
        for i in (0..self.num_vars).rev() {
            t.swap_in_place(i, positions[i]);
        }
        t
    }

    /// Adds vacuous variables on top, keeping existing variable indices.
    pub fn extend_to(&self, new_num_vars: usize) -> Self {
        assert!(new_num_vars >= self.num_vars && new_num_vars <= MAX_VARS);
        let nb = num_blocks(new_num_vars);
        let mut blocks = Vec::with_capacity(nb);
        let period = self.blocks.len();
        for i in 0..nb {
            blocks.push(self.blocks[i % period]);
        }
        Self {
            num_vars: new_num_vars,
            blocks,
        }
    }

    /// Drops variables the function does not depend on.
    ///
    /// Returns the compacted table and the original indices of its variables.
    pub fn shrink_to_support(&self) -> (Self, Vec<usize>) {
        let support = self.support();
        (self.project(&support), support)
    }

    /// Restricts to the variables `vars` (ascending), which must include the
    /// whole support. Variable `vars[i]` becomes variable `i`.
    pub fn project(&self, vars: &[usize]) -> Self {
        debug_assert!(vars.windows(2).all(|w| w[0] < w[1]));
        let mut t = self.clone();
        for (i, &v) in vars.iter().enumerate() {
            t.swap_in_place(i, v);
        }
        let n = vars.len();
        let mut blocks = t.blocks;
        blocks.truncate(num_blocks(n));
        let mut out = Self { num_vars: n, blocks };
        out.normalize();
        out
    }

    /// Evaluates the function on one assignment index.
    #[inline]
    pub fn eval(&self, assignment: usize) -> bool {
        self.get_bit(assignment & (self.num_bits() - 1))
    }

    /// Substitutes `inputs[i]` for variable `i`; all inputs must share one
    /// width, which becomes the width of the result.
    pub fn compose(&self, inputs: &[TruthTable]) -> TruthTable {
        assert_eq!(inputs.len(), self.num_vars);
        let width = inputs.first().map_or(0, |t| t.num_vars);
        debug_assert!(inputs.iter().all(|t| t.num_vars == width));
        let mut result = TruthTable::zero(width);
        let mut minterm = TruthTable::zero(width);
        for m in 0..self.num_bits() {
            if !self.get_bit(m) {
                continue;
            }
            minterm.blocks.fill(u64::MAX);
            for (i, input) in inputs.iter().enumerate() {
                if m >> i & 1 != 0 {
                    minterm &= input;
                } else {
                    minterm.and_not_assign(input);
                }
            }
            result |= &minterm;
        }
        result
    }

    fn and_not_assign(&mut self, rhs: &TruthTable) {
        for (a, b) in self.blocks.iter_mut().zip(&rhs.blocks) {
            *a &= !b;
        }
    }

    /// Slice of `2^p` bits at offset `index * 2^p`, as a table over `p` variables.
    pub fn slice(&self, p: usize, index: usize) -> TruthTable {
        debug_assert!(p <= self.num_vars);
        if p >= 6 {
            let nb = num_blocks(p);
            TruthTable {
                num_vars: p,
                blocks: self.blocks[index * nb..(index + 1) * nb].to_vec(),
            }
        } else {
            TruthTable::from_u64(p, self.slice_word(p, index))
        }
    }

    /// Raw low bits of a slice of at most 64 bits.
    #[inline]
    pub(crate) fn slice_word(&self, p: usize, index: usize) -> u64 {
        debug_assert!(p <= 6);
        let width = 1usize << p;
        let bit = index * width;
        let word = self.blocks[bit >> 6] >> (bit & 63);
        if width == 64 {
            word
        } else {
            word & ((1u64 << width) - 1)
        }
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruthTable({}, {})", self.num_vars, self.to_hex())
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Not for TruthTable {
    type Output = TruthTable;
    fn not(mut self) -> TruthTable {
        for b in self.blocks.iter_mut() {
            *b = !*b;
        }
        self
    }
}

impl Not for &TruthTable {
    type Output = TruthTable;
    fn not(self) -> TruthTable {
        !self.clone()
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $assign_trait:ident, $assign:ident, $op:tt) => {
        impl $trait<&TruthTable> for &TruthTable {
            type Output = TruthTable;
            fn $method(self, rhs: &TruthTable) -> TruthTable {
                assert_eq!(self.num_vars, rhs.num_vars);
                TruthTable {
                    num_vars: self.num_vars,
                    blocks: self
                        .blocks
                        .iter()
                        .zip(&rhs.blocks)
                        .map(|(a, b)| a $op b)
                        .collect(),
                }
            }
        }

        impl std::ops::$assign_trait<&TruthTable> for TruthTable {
            fn $assign(&mut self, rhs: &TruthTable) {
                assert_eq!(self.num_vars, rhs.num_vars);
                for (a, b) in self.blocks.iter_mut().zip(&rhs.blocks) {
                    *a = *a $op b;
                }
            }
        }
    };
}

binop!(BitAnd, bitand, BitAndAssign, bitand_assign, &);
binop!(BitOr, bitor, BitOrAssign, bitor_assign, |);
binop!(BitXor, bitxor, BitXorAssign, bitxor_assign, ^);

/// A function with don't-cares: `onset` holds the value where `care` is set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TernaryTable {
    pub onset: TruthTable,
    pub care: TruthTable,
}

impl TernaryTable {
    /// Clears onset bits outside the care set.
    pub fn new(onset: TruthTable, care: TruthTable) -> Self {
        assert_eq!(onset.num_vars(), care.num_vars());
        let onset = &onset & &care;
        Self { onset, care }
    }

    pub fn num_vars(&self) -> usize {
        self.onset.num_vars()
    }

    /// Don't-care-aware support minimization.
    ///
    /// A set of variables is removable when the function stays consistent
    /// after merging the two cofactors of each of them, i.e. when no pair of
    /// cared points differing only in those variables disagrees. Removable
    /// sets are closed under subsets, so the largest one is found by scanning
    /// subsets from the largest size down; among equal sizes the numerically
    /// smallest variable mask wins. Returns the completion (don't-cares
    /// resolved to 0) and its support.
    pub fn minimize_support(&self) -> (TruthTable, Vec<usize>) {
        let n = self.num_vars();
        if n <= 6 {
            let (on, _) = minimize_word(self.onset.blocks[0], self.care.blocks[0], n);
            let completion = TruthTable::from_u64(n, on);
            let support = completion.support();
            return (completion, support);
        }
        for size in (0..=n).rev() {
            for mask in masks_of_size(n, size) {
                if let Some((on, _)) = self.merge_vars(mask) {
                    let support = on.support();
                    return (on, support);
                }
            }
        }
        unreachable!("the empty set is always removable")
    }

    fn merge_vars(&self, mask: u32) -> Option<(TruthTable, TruthTable)> {
        let mut on = self.onset.clone();
        let mut care = self.care.clone();
        for v in (0..self.num_vars()).filter(|v| mask >> v & 1 != 0) {
            let (mut on0, mut on1) = (on.clone(), on);
            on0.cofactor_in_place(v, false);
            on1.cofactor_in_place(v, true);
            let (mut care0, mut care1) = (care.clone(), care);
            care0.cofactor_in_place(v, false);
            care1.cofactor_in_place(v, true);
            if !(&(&(&on0 ^ &on1) & &care0) & &care1).is_zero() {
                return None;
            }
            on = &on0 | &on1;
            care = &care0 | &care1;
        }
        Some((on, care))
    }

    /// Size of the support after [`TernaryTable::minimize_support`].
    pub fn support_size(&self) -> usize {
        self.minimize_support().1.len()
    }
}

#[inline]
fn word_cofactor(w: u64, var: usize, polarity: bool) -> u64 {
    let m = VAR_MASKS[var];
    let shift = 1 << var;
    if polarity {
        (w & m) | ((w & m) >> shift)
    } else {
        (w & !m) | ((w & !m) << shift)
    }
}

/// Subsets of `0..n` with `size` elements, in ascending mask order.
fn masks_of_size(n: usize, size: usize) -> impl Iterator<Item = u32> {
    (0u32..1 << n).filter(move |m| m.count_ones() as usize == size)
}

fn merge_word(mut on: u64, mut care: u64, mask: u32, n: usize) -> Option<(u64, u64)> {
    for v in (0..n).filter(|v| mask >> v & 1 != 0) {
        let (on0, on1) = (word_cofactor(on, v, false), word_cofactor(on, v, true));
        let (care0, care1) = (word_cofactor(care, v, false), word_cofactor(care, v, true));
        if (on0 ^ on1) & care0 & care1 != 0 {
            return None;
        }
        on = on0 | on1;
        care = care0 | care1;
    }
    Some((on, care))
}

/// Word-level version of [`TernaryTable::minimize_support`] for at most six
/// variables (replicated padding assumed).
fn minimize_word(on: u64, care: u64, n: usize) -> (u64, u64) {
    let on = on & care;
    // Merging other variables only grows the care set, so a variable that
    // cannot be dropped on its own never can.
    let removable: u32 = (0..n)
        .filter(|&v| merge_word(on, care, 1 << v, n).is_some())
        .fold(0, |m, v| m | 1 << v);
    if let Some(r) = merge_word(on, care, removable, n) {
        return r;
    }
    for size in (0..removable.count_ones() as usize).rev() {
        for mask in masks_of_size(n, size).filter(|m| m & !removable == 0) {
            if let Some(r) = merge_word(on, care, mask, n) {
                return r;
            }
        }
    }
    unreachable!("the empty set is always removable")
}

/// DC-aware support size of a ternary function of at most six variables.
pub(crate) fn ternary_support_size_word(on: u64, care: u64, n: usize) -> usize {
    let on = if care == u64::MAX { on } else { minimize_word(on, care, n).0 };
    (0..n)
        .filter(|&v| word_cofactor(on, v, false) != word_cofactor(on, v, true))
        .count()
}

/// Variable reordering record: `position(v)` is where original variable `v`
/// currently sits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarPermutation {
    perm: Vec<usize>,
}

impl VarPermutation {
    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
        }
    }

    pub fn from_positions(perm: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; perm.len()];
        for &p in &perm {
            if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
                return None;
            }
        }
        Some(Self { perm })
    }

    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    #[inline]
    pub fn position(&self, var: usize) -> usize {
        self.perm[var]
    }

    /// Original variable currently at `pos`.
    pub fn var_at(&self, pos: usize) -> usize {
        self.perm.iter().position(|&p| p == pos).unwrap()
    }

    pub fn positions(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.perm.len()];
        for (v, &p) in self.perm.iter().enumerate() {
            inv[p] = v;
        }
        Self { perm: inv }
    }

    /// Records that the variables at positions `a` and `b` were exchanged.
    pub fn swap_positions(&mut self, a: usize, b: usize) {
        for p in self.perm.iter_mut() {
            if *p == a {
                *p = b;
            } else if *p == b {
                *p = a;
            }
        }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }
}
