//! Brute-force counting of permitted colourings.
//!
//! This is ground truth for every `x`, including `x < M_{G,r}` where the
//! polynomial need not agree, and shares no code with the recursion.

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::restraint::Restraint;

/// Limits on brute-force work. A call is accepted when `n <= max_n` or
/// `x^n <= max_work`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_n: usize,
    pub max_work: u128,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self {
            max_n: 8,
            max_work: 1_000_000_000,
        }
    }
}

impl OracleBudget {
    fn allows(&self, n: usize, x: u64) -> bool {
        if n <= self.max_n {
            return true;
        }
        let mut work: u128 = 1;
        for _ in 0..n {
            work = work.saturating_mul(x as u128);
            if work > self.max_work {
                return false;
            }
        }
        true
    }
}

/// Number of proper colourings `c: V -> {1..x}` with `c(v) ∉ r(v)`.
pub fn count_colourings(g: &Graph, r: &Restraint, x: u64) -> Result<u64> {
    count_colourings_with(g, r, x, &OracleBudget::default())
}

pub fn count_colourings_with(g: &Graph, r: &Restraint, x: u64, budget: &OracleBudget) -> Result<u64> {
    if r.len() != g.n() {
        return Err(Error::SizeMismatch {
            expected: g.n(),
            got: r.len(),
        });
    }
    if !budget.allows(g.n(), x) {
        return Err(Error::OracleBudget { n: g.n(), x });
    }
    let mut colour = vec![0u64; g.n()];
    Ok(extend(g, r, x, 0, &mut colour))
}

fn extend(g: &Graph, r: &Restraint, x: u64, v: usize, colour: &mut [u64]) -> u64 {
    if v == g.n() {
        return 1;
    }
    let mut total = 0;
    for c in 1..=x {
        if c <= u32::MAX as u64 && r.get(v).contains(&(c as u32)) {
            continue;
        }
        if (0..v).any(|w| colour[w] == c && g.has_edge(v, w)) {
            continue;
        }
        colour[v] = c;
        total += extend(g, r, x, v + 1, colour);
    }
    colour[v] = 0;
    total
}
