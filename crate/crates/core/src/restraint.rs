//! Restraints (per-vertex sets of forbidden colours), their named
//! constructions, equivalence classes, and enumeration up to equivalence.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Relabeling, Vertex};

pub type Colour = u32;
pub type ColourSet = BTreeSet<Colour>;

/// Vertex-indexed forbidden colour sets. Colours are positive integers.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Restraint {
    sets: Vec<ColourSet>,
}

impl Restraint {
    pub fn new(sets: Vec<ColourSet>) -> Result<Self> {
        if sets.iter().flatten().any(|&c| c == 0) {
            return Err(Error::InvalidArgument("colours must be positive integers".into()));
        }
        Ok(Self { sets })
    }

    /// Shorthand for tests and fixtures: `Restraint::from_lists(&[&[1], &[2, 3]])`.
    pub fn from_lists(lists: &[&[Colour]]) -> Result<Self> {
        Self::new(lists.iter().map(|l| l.iter().copied().collect()).collect())
    }

    /// One colour per vertex.
    pub fn simple(colours: &[Colour]) -> Result<Self> {
        Self::new(colours.iter().map(|&c| ColourSet::from([c])).collect())
    }

    /// Every vertex unrestrained.
    pub fn empty(n: usize) -> Self {
        Self {
            sets: vec![ColourSet::new(); n],
        }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn sets(&self) -> &[ColourSet] {
        &self.sets
    }

    pub fn get(&self, v: Vertex) -> &ColourSet {
        &self.sets[v]
    }

    pub fn into_sets(self) -> Vec<ColourSet> {
        self.sets
    }

    /// `|r(v)|` for every vertex.
    pub fn sizes(&self) -> Vec<i64> {
        self.sets.iter().map(|s| s.len() as i64).collect()
    }

    /// The union of all restraint sets.
    pub fn colours(&self) -> ColourSet {
        self.sets.iter().flatten().copied().collect()
    }

    /// Largest forbidden colour, or 0 when every set is empty.
    pub fn m_value(&self) -> u64 {
        self.sets
            .iter()
            .filter_map(|s| s.last())
            .max()
            .map_or(0, |&c| c as u64)
    }

    /// `Ok(())` iff every set has exactly `k` colours drawn from `1..=k·n`.
    pub fn check_k_restraint(&self, k: usize) -> Result<()> {
        let limit = (k * self.len()) as Colour;
        for (v, s) in self.sets.iter().enumerate() {
            if s.len() != k {
                return Err(Error::NotKRestraint(format!(
                    "vertex {v} has {} colours, expected {k}",
                    s.len()
                )));
            }
            if let Some(&c) = s.last() {
                if c > limit {
                    return Err(Error::NotKRestraint(format!(
                        "vertex {v} uses colour {c} above k*n = {limit}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn is_k_restraint(&self, k: usize) -> bool {
        self.check_k_restraint(k).is_ok()
    }

    fn check_len(&self, g: &Graph) -> Result<()> {
        if self.len() != g.n() {
            return Err(Error::SizeMismatch {
                expected: g.n(),
                got: self.len(),
            });
        }
        Ok(())
    }

    /// Restraint seen through a vertex permutation: the result assigns
    /// `self[u]` to vertex `p[u]`.
    pub fn permute(&self, p: &[Vertex]) -> Restraint {
        let mut sets = vec![ColourSet::new(); self.len()];
        for (u, s) in self.sets.iter().enumerate() {
            sets[p[u]] = s.clone();
        }
        Restraint { sets }
    }

    /// Applies a colour renaming. Fails if `f` is not injective on the
    /// colours actually used.
    pub fn rename_colours(&self, f: impl Fn(Colour) -> Colour) -> Result<Restraint> {
        let used = self.colours();
        let image: ColourSet = used.iter().map(|&c| f(c)).collect();
        if image.len() != used.len() {
            return Err(Error::InvalidArgument("colour renaming is not injective".into()));
        }
        Restraint::new(
            self.sets
                .iter()
                .map(|s| s.iter().map(|&c| f(c)).collect())
                .collect(),
        )
    }

    /// Restriction to a vertex subset given as `back[i]` = original vertex.
    pub fn restrict(&self, back: &[Vertex]) -> Restraint {
        Restraint {
            sets: back.iter().map(|&v| self.sets[v].clone()).collect(),
        }
    }
}

impl fmt::Display for Restraint {
    /// `[{1},{2},{1,3}]`
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, c) in s.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "}}")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Restraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Restraint{self}")
    }
}

impl FromStr for Restraint {
    type Err = Error;

    /// Parses the literal syntax `[{1},{2},{1,3}]` (whitespace allowed) or a
    /// JSON array of arrays `[[1],[2],[1,3]]`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.starts_with("[[") || t == "[]" {
            let lists: Vec<Vec<Colour>> = serde_json::from_str(t)
                .map_err(|e| Error::Parse(format!("restraint json: {e}")))?;
            return Restraint::new(lists.into_iter().map(|l| l.into_iter().collect()).collect());
        }
        let inner = t
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::Parse(format!("restraint must look like [{{1}},{{2}}], got `{s}`")))?;
        let mut sets = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let body_start = rest
                .strip_prefix('{')
                .ok_or_else(|| Error::Parse(format!("expected `{{` in restraint near `{rest}`")))?;
            let close = body_start
                .find('}')
                .ok_or_else(|| Error::Parse("unterminated colour set".into()))?;
            let body = body_start[..close].trim();
            let mut set = ColourSet::new();
            if !body.is_empty() {
                for tok in body.split(',') {
                    let c: Colour = tok
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad colour `{}`", tok.trim())))?;
                    if !set.insert(c) {
                        return Err(Error::Parse(format!("colour {c} repeated within a set")));
                    }
                }
            }
            sets.push(set);
            rest = body_start[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
                if rest.is_empty() {
                    return Err(Error::Parse("trailing comma in restraint".into()));
                }
            } else if !rest.is_empty() {
                return Err(Error::Parse(format!("expected `,` in restraint near `{rest}`")));
            }
        }
        Restraint::new(sets).map_err(|e| Error::Parse(e.to_string()))
    }
}

/// `r_c^k`: every vertex forbids `{1..k}`.
pub fn constant_restraint(g: &Graph, k: usize) -> Restraint {
    let set: ColourSet = (1..=k as Colour).collect();
    Restraint {
        sets: vec![set; g.n()],
    }
}

/// Constant `{1..k}` on one side of the bipartition and `{k+1..2k}` on the
/// other. The side containing vertex 0 gets `{1..k}`.
pub fn alternating_restraint(g: &Graph, k: usize) -> Result<Restraint> {
    let (left, right) = g.bipartition()?.ok_or(Error::NotBipartite)?;
    let low: ColourSet = (1..=k as Colour).collect();
    let high: ColourSet = (k as Colour + 1..=2 * k as Colour).collect();
    let mut sets = vec![ColourSet::new(); g.n()];
    for v in left {
        sets[v] = low.clone();
    }
    for v in right {
        sets[v] = high.clone();
    }
    Ok(Restraint { sets })
}

/// Adjacent vertices have disjoint restraint sets.
pub fn is_proper(g: &Graph, r: &Restraint) -> bool {
    g.edges().all(|e| r.get(e.0).is_disjoint(r.get(e.1)))
}

/// Restraint on `G·uv` induced by a contraction: the merged vertex gets
/// `r(u) ∪ r(v)`, every other vertex keeps its set at its new index.
pub fn transport(r: &Restraint, rel: &Relabeling) -> Result<Restraint> {
    let n = r.len();
    if rel.map.len() != n || n == 0 {
        return Err(Error::InconsistentRelabeling(format!(
            "map covers {} vertices, restraint has {n}",
            rel.map.len()
        )));
    }
    if rel.u == rel.v || rel.u >= n || rel.v >= n {
        return Err(Error::InconsistentRelabeling("bad contracted edge".into()));
    }
    if rel.map[rel.u] != rel.merged || rel.map[rel.v] != rel.merged {
        return Err(Error::InconsistentRelabeling(
            "contracted endpoints do not map to the merged vertex".into(),
        ));
    }
    let mut sets: Vec<Option<ColourSet>> = vec![None; n - 1];
    for (old, s) in r.sets.iter().enumerate() {
        if old == rel.u || old == rel.v {
            continue;
        }
        let new = rel.map[old];
        if new >= n - 1 || new == rel.merged || sets[new].is_some() {
            return Err(Error::InconsistentRelabeling(format!(
                "vertex {old} maps to occupied or invalid slot {new}"
            )));
        }
        sets[new] = Some(s.clone());
    }
    sets[rel.merged] = Some(r.get(rel.u) | r.get(rel.v));
    Ok(Restraint {
        sets: sets
            .into_iter()
            .map(|s| s.expect("every slot filled by a bijective map"))
            .collect(),
    })
}

/// Canonical representative of a restraint-equivalence class.
///
/// Two restraints on the same graph are equivalent iff some automorphism
/// combined with some colour bijection carries one onto the other; this
/// holds iff their `canon` fields are equal.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct RestraintClass {
    pub canon: Restraint,
    pub k: usize,
}

impl RestraintClass {
    /// Number of distinct colours in the representative.
    pub fn colour_count(&self) -> usize {
        self.canon.colours().len()
    }
}

impl Ord for RestraintClass {
    /// Fewer colours first, then lexicographic on the representative.
    fn cmp(&self, other: &Self) -> Ordering {
        self.k
            .cmp(&other.k)
            .then(self.colour_count().cmp(&other.colour_count()))
            .then_with(|| self.canon.cmp(&other.canon))
    }
}

impl PartialOrd for RestraintClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RestraintClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.canon.fmt(f)
    }
}

/// Colour-renaming normal form of `r`.
///
/// A colour bijection only permutes the colour classes `{v : c ∈ r(v)}`, so
/// the multiset of those vertex sets is the invariant. The classes are
/// numbered `1, 2, ...` in decreasing order of their characteristic vectors
/// read from vertex 0 upward, which puts colours in first-use order when
/// scanning vertices `0..n`.
pub fn colour_normal_form(r: &Restraint) -> Restraint {
    let mut classes: Vec<u64> = r
        .colours()
        .into_iter()
        .map(|c| {
            (0..r.len())
                .filter(|&v| r.get(v).contains(&c))
                .fold(0u64, |m, v| m | (1 << v))
        })
        .collect();
    classes.sort_unstable_by_key(|m| std::cmp::Reverse(m.reverse_bits()));
    let mut sets = vec![ColourSet::new(); r.len()];
    for (i, &mask) in classes.iter().enumerate() {
        for v in crate::graph::BitIter(mask) {
            sets[v].insert(i as Colour + 1);
        }
    }
    Restraint { sets }
}

/// Canonical form over a precomputed automorphism group.
pub fn canonicalize_with(auts: &[Vec<Vertex>], r: &Restraint) -> Restraint {
    auts.iter()
        .map(|p| colour_normal_form(&r.permute(p)))
        .min()
        .unwrap_or_else(|| colour_normal_form(r))
}

/// The lexicographically least colour-normalized image of `r` under the
/// automorphism group of `g`.
pub fn canonicalize(g: &Graph, r: &Restraint) -> Result<RestraintClass> {
    r.check_len(g)?;
    let auts = g.automorphisms()?;
    Ok(class_of(&auts, r))
}

fn class_of(auts: &[Vec<Vertex>], r: &Restraint) -> RestraintClass {
    let k = r.sets.first().map_or(0, |s| s.len());
    RestraintClass {
        canon: canonicalize_with(auts, r),
        k,
    }
}

/// `r ≃ r'` on `g`.
pub fn equivalent(g: &Graph, r: &Restraint, other: &Restraint) -> Result<bool> {
    Ok(canonicalize(g, r)?.canon == canonicalize(g, other)?.canon)
}

/// Limits on exhaustive enumeration of k-restraint classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationCaps {
    /// `max_n[k-1]` is the largest vertex count enumerated for that `k`;
    /// larger `k` reuse the last entry.
    pub max_n: Vec<usize>,
    pub automorphism_cap: usize,
}

impl Default for EnumerationCaps {
    fn default() -> Self {
        Self {
            max_n: vec![8, 5, 4, 3],
            automorphism_cap: crate::graph::DEFAULT_AUTOMORPHISM_CAP,
        }
    }
}

impl EnumerationCaps {
    pub fn limit_for(&self, k: usize) -> usize {
        let idx = k.saturating_sub(1).min(self.max_n.len().saturating_sub(1));
        self.max_n.get(idx).copied().unwrap_or(0)
    }

    pub fn check(&self, n: usize, k: usize) -> Result<()> {
        let limit = self.limit_for(k);
        if n > limit {
            return Err(Error::EnumerationCap { n, k, limit });
        }
        Ok(())
    }

    /// Same caps with every per-k limit raised to at least `n`.
    pub fn allowing(mut self, n: usize) -> Self {
        for m in &mut self.max_n {
            *m = (*m).max(n);
        }
        self.automorphism_cap = self.automorphism_cap.max(n);
        self
    }
}

/// All k-restraints in colour first-use form: vertex `i` draws its set from
/// the colours already used plus the next fresh ones, fresh colours always
/// taken in increasing order. Every k-restraint is a colour renaming of one
/// of these.
pub fn first_use_candidates(n: usize, k: usize) -> Vec<Restraint> {
    let mut out = Vec::new();
    let mut sets = Vec::with_capacity(n);
    grow_candidates(n, k, 0, &mut sets, &mut out);
    out
}

fn grow_candidates(n: usize, k: usize, used: Colour, sets: &mut Vec<ColourSet>, out: &mut Vec<Restraint>) {
    if sets.len() == n {
        out.push(Restraint { sets: sets.clone() });
        return;
    }
    // `old` colours from 1..=used, then k - old fresh colours used+1..
    for old in (0..=k.min(used as usize)).rev() {
        let fresh = (k - old) as Colour;
        for subset in k_subsets(used, old) {
            let mut set: ColourSet = subset.into_iter().collect();
            set.extend(used + 1..=used + fresh);
            sets.push(set);
            grow_candidates(n, k, used + fresh, sets, out);
            sets.pop();
        }
    }
}

/// All `size`-subsets of `1..=universe`, ascending lexicographic.
fn k_subsets(universe: Colour, size: usize) -> Vec<Vec<Colour>> {
    fn rec(start: Colour, universe: Colour, size: usize, cur: &mut Vec<Colour>, out: &mut Vec<Vec<Colour>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for c in start..=universe {
            cur.push(c);
            rec(c + 1, universe, size, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, universe, size, &mut Vec::new(), &mut out);
    out
}

/// One representative per equivalence class of k-restraints on `g`, sorted
/// by class order.
pub fn enumerate_k_restraints(g: &Graph, k: usize) -> Result<Vec<RestraintClass>> {
    enumerate_k_restraints_with(g, k, &EnumerationCaps::default(), None)
}

/// As [`enumerate_k_restraints`]; `shuffle_seed` permutes the candidate
/// order before deduplication, which must not change the result.
pub fn enumerate_k_restraints_with(
    g: &Graph,
    k: usize,
    caps: &EnumerationCaps,
    shuffle_seed: Option<u64>,
) -> Result<Vec<RestraintClass>> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be at least 1".into()));
    }
    caps.check(g.n(), k)?;
    let auts = g.automorphisms_capped(caps.automorphism_cap)?;
    let mut candidates = first_use_candidates(g.n(), k);
    if let Some(seed) = shuffle_seed {
        use rand::SeedableRng;
        candidates.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
    }
    let canon: HashSet<Restraint> = candidates
        .par_iter()
        .map(|r| canonicalize_with(&auts, r))
        .collect();
    let mut classes: Vec<RestraintClass> = canon
        .into_iter()
        .map(|canon| RestraintClass { canon, k })
        .collect();
    classes.sort();
    Ok(classes)
}

/// Uniformly random k-restraint on `n` vertices with colours in `1..=k·n`.
pub fn random_k_restraint<R: Rng + ?Sized>(n: usize, k: usize, rng: &mut R) -> Restraint {
    let palette: Vec<Colour> = (1..=(k * n) as Colour).collect();
    Restraint {
        sets: (0..n)
            .map(|_| palette.choose_multiple(rng, k).copied().collect())
            .collect(),
    }
}
