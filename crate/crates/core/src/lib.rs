// SPDX-License-Identifier: Apache-2.0

//! Truth-table based Ashenhurst-Curtis decomposition with shared-set support,
//! and a delay-driven k-LUT mapper that evaluates the decomposition on wide
//! cuts while mapping.

pub mod acd;
pub mod aig;
pub mod cli;
pub mod cuts;
pub mod lutnet;
pub mod mapper;
pub mod truthtable;

pub use truthtable::{TernaryTable, TruthTable, TruthTableError, VarPermutation};
