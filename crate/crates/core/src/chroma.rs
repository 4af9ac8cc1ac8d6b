//! Restrained chromatic polynomials by edge deletion-contraction.
//!
//! For an edge `uv`,
//!
//! ```text
//! π_r(G, x) = π_r(G - uv, x) - π_{r_uv}(G · uv, x)
//! ```
//!
//! where the merged vertex of `G · uv` is restrained by `r(u) ∪ r(v)`. On an
//! edgeless graph the count is `Π_v (x - |r(v)|)`, valid once `x` reaches the
//! largest forbidden colour. The recursion therefore yields the polynomial
//! that agrees with the permitted-colouring count for all `x >= M_{G,r}`.

use std::collections::HashMap;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Graph};
use crate::polynomial::IntPolynomial;
use crate::restraint::{transport, Restraint};

/// Which edge the recursion splits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PivotRule {
    /// Lexicographically smallest edge.
    #[default]
    Smallest,
    /// Uniformly random edge from a seeded generator.
    Random(u64),
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheStats {
    pub hits: u64,
    pub misses: u64,
    pub peak_entries: usize,
}

type MemoKey = (Graph, Restraint);

/// Deletion-contraction evaluator with an exact labeled memo cache.
pub struct ChromaEngine {
    memo: Option<HashMap<MemoKey, IntPolynomial>>,
    pivot: PivotRule,
    rng: Option<StdRng>,
    stats: CacheStats,
}

impl Default for ChromaEngine {
    fn default() -> Self {
        Self::new()
    }
}

impl ChromaEngine {
    pub fn new() -> Self {
        Self::with_options(PivotRule::Smallest, true)
    }

    pub fn with_options(pivot: PivotRule, cache: bool) -> Self {
        let rng = match pivot {
            PivotRule::Smallest => None,
            PivotRule::Random(seed) => Some(StdRng::seed_from_u64(seed)),
        };
        Self {
            memo: cache.then(HashMap::new),
            pivot,
            rng,
            stats: CacheStats::default(),
        }
    }

    pub fn pivot(&self) -> PivotRule {
        self.pivot
    }

    pub fn stats(&self) -> CacheStats {
        self.stats
    }

    pub fn clear_cache(&mut self) {
        if let Some(m) = self.memo.as_mut() {
            m.clear();
        }
    }

    /// `π_r(G, x)`.
    pub fn restrained_poly(&mut self, g: &Graph, r: &Restraint) -> Result<IntPolynomial> {
        if r.len() != g.n() {
            return Err(Error::SizeMismatch {
                expected: g.n(),
                got: r.len(),
            });
        }
        self.recurse(g, r)
    }

    /// Chromatic polynomial: the restrained polynomial with nothing forbidden.
    pub fn chromatic_poly(&mut self, g: &Graph) -> IntPolynomial {
        self.recurse(g, &Restraint::empty(g.n()))
            .expect("empty restraint matches graph order")
    }

    fn choose_pivot(&mut self, g: &Graph) -> Option<Edge> {
        match self.rng.as_mut() {
            None => g.first_edge(),
            Some(rng) => {
                let m = g.m();
                if m == 0 {
                    None
                } else {
                    g.edges().nth(rng.gen_range(0..m))
                }
            }
        }
    }

    fn recurse(&mut self, g: &Graph, r: &Restraint) -> Result<IntPolynomial> {
        let Some(edge) = self.choose_pivot(g) else {
            return Ok(empty_graph_poly(r));
        };
        if let Some(memo) = self.memo.as_ref() {
            if let Some(p) = memo.get(&(g.clone(), r.clone())) {
                self.stats.hits += 1;
                return Ok(p.clone());
            }
        }
        self.stats.misses += 1;

        let deleted = g.delete_edge(edge)?;
        let (contracted, rel) = g.contract_edge(edge)?;
        let merged = transport(r, &rel)?;
        let keep = self.recurse(&deleted, r)?;
        let drop = self.recurse(&contracted, &merged)?;
        let p = &keep - &drop;

        if let Some(memo) = self.memo.as_mut() {
            memo.insert((g.clone(), r.clone()), p.clone());
            self.stats.peak_entries = self.stats.peak_entries.max(memo.len());
        }
        Ok(p)
    }
}

/// `Π_v (x - |r(v)|)`: the count on an edgeless graph.
pub fn empty_graph_poly(r: &Restraint) -> IntPolynomial {
    IntPolynomial::from_roots(r.sizes())
}

/// `π_r(G, x)` with a fresh default engine.
pub fn restrained_poly(g: &Graph, r: &Restraint) -> Result<IntPolynomial> {
    ChromaEngine::new().restrained_poly(g, r)
}

pub fn chromatic_poly(g: &Graph) -> IntPolynomial {
    ChromaEngine::new().chromatic_poly(g)
}
