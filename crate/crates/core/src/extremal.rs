//! Exhaustive search for the restraints permitting the fewest and the most
//! colourings for all large `x`, and checks of the known extremal results
//! against that search.

use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::NamedGraph;
use crate::chroma::{ChromaEngine, PivotRule};
use crate::coefficients::a7_double_prime;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::to_graph6;
use crate::polynomial::IntPolynomial;
use crate::store::ResultStore;
use crate::restraint::{
    alternating_restraint, canonicalize_with, constant_restraint, enumerate_k_restraints_with,
    first_use_candidates, is_proper, ColourSet, EnumerationCaps, Restraint, RestraintClass,
};

#[derive(Clone, Debug, Default)]
pub struct SearchOptions {
    pub caps: EnumerationCaps,
    pub pivot: PivotRule,
    pub disable_cache: bool,
    /// Shuffles enumeration order; results must not depend on it.
    pub shuffle_seed: Option<u64>,
    /// Finished reports are read from and appended to this store.
    pub store: Option<Arc<ResultStore>>,
}

impl SearchOptions {
    fn engine(&self) -> ChromaEngine {
        ChromaEngine::with_options(self.pivot, !self.disable_cache)
    }
}

/// One enumerated class with its polynomial.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassRecord {
    pub canon: Restraint,
    pub proper: bool,
    pub poly: IntPolynomial,
}

/// Leading term of `winner - loser`, plus a point past which the winner is
/// strictly ahead.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub class: Restraint,
    pub degree: usize,
    pub coefficient: String,
    pub beyond_x: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExtremalReport {
    pub graph_id: String,
    pub graph6: String,
    pub n: usize,
    pub k: usize,
    pub class_count: usize,
    pub min_classes: Vec<RestraintClass>,
    pub max_classes: Vec<RestraintClass>,
    pub min_poly: IntPolynomial,
    pub max_poly: IntPolynomial,
    /// For each class outside `min_classes`: leading term of its excess over the minimum.
    pub min_witnesses: Vec<Witness>,
    /// For each class outside `max_classes`: leading term of its deficit to the maximum.
    pub max_witnesses: Vec<Witness>,
    pub classes: Vec<ClassRecord>,
}

impl ExtremalReport {
    pub fn max_canons(&self) -> BTreeSet<Restraint> {
        self.max_classes.iter().map(|c| c.canon.clone()).collect()
    }

    pub fn min_canons(&self) -> BTreeSet<Restraint> {
        self.min_classes.iter().map(|c| c.canon.clone()).collect()
    }

    pub fn poly_of(&self, canon: &Restraint) -> Option<&IntPolynomial> {
        self.classes.iter().find(|c| &c.canon == canon).map(|c| &c.poly)
    }
}

fn witness(class: &Restraint, ahead: &IntPolynomial, behind: &IntPolynomial) -> Witness {
    let d = ahead - behind;
    Witness {
        class: class.clone(),
        degree: d.degree().expect("losers differ from the winner"),
        coefficient: d.leading_coeff().expect("nonzero").to_string(),
        beyond_x: ahead.separation_point(behind).to_string(),
    }
}

/// R_min and R_max of `g` for k-restraints, by exhaustive enumeration.
pub fn find_extremal(g: &Graph, k: usize) -> Result<ExtremalReport> {
    let id = to_graph6(g)?;
    find_extremal_with(&id, g, k, &SearchOptions::default())
}

/// As [`find_extremal`], consulting `opts.store` first when one is set.
pub fn find_extremal_with(id: &str, g: &Graph, k: usize, opts: &SearchOptions) -> Result<ExtremalReport> {
    match &opts.store {
        Some(store) => store.get_or_compute(&to_graph6(g)?, k, || search(id, g, k, opts)),
        None => search(id, g, k, opts),
    }
}

fn search(id: &str, g: &Graph, k: usize, opts: &SearchOptions) -> Result<ExtremalReport> {
    let classes = enumerate_k_restraints_with(g, k, &opts.caps, opts.shuffle_seed)?;
    let polys: Vec<IntPolynomial> = classes
        .par_iter()
        .map(|c| opts.engine().restrained_poly(g, &c.canon))
        .collect::<Result<_>>()?;

    let max_poly = polys
        .iter()
        .max_by(|a, b| a.eventual_cmp(b))
        .expect("at least one class")
        .clone();
    let min_poly = polys
        .iter()
        .min_by(|a, b| a.eventual_cmp(b))
        .expect("at least one class")
        .clone();

    let mut report = ExtremalReport {
        graph_id: id.to_string(),
        graph6: to_graph6(g)?,
        n: g.n(),
        k,
        class_count: classes.len(),
        min_classes: Vec::new(),
        max_classes: Vec::new(),
        min_poly: min_poly.clone(),
        max_poly: max_poly.clone(),
        min_witnesses: Vec::new(),
        max_witnesses: Vec::new(),
        classes: Vec::with_capacity(classes.len()),
    };
    for (class, poly) in classes.into_iter().zip(polys) {
        if poly == max_poly {
            report.max_classes.push(class.clone());
        } else {
            report.max_witnesses.push(witness(&class.canon, &max_poly, &poly));
        }
        if poly == min_poly {
            report.min_classes.push(class.clone());
        } else {
            report.min_witnesses.push(witness(&class.canon, &poly, &min_poly));
        }
        report.classes.push(ClassRecord {
            proper: is_proper(g, &class.canon),
            canon: class.canon,
            poly,
        });
    }
    Ok(report)
}

/// A failed prediction, recorded rather than raised.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub graph_id: String,
    pub expected: Vec<String>,
    pub found: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub theorem: String,
    pub k: usize,
    pub checked: usize,
    pub skipped: Vec<String>,
    pub violations: Vec<Violation>,
}

impl VerifyReport {
    pub fn new(theorem: &str, k: usize) -> Self {
        Self {
            theorem: theorem.to_string(),
            k,
            checked: 0,
            skipped: Vec::new(),
            violations: Vec::new(),
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    fn absorb(&mut self, other: VerifyReport) {
        self.checked += other.checked;
        self.skipped.extend(other.skipped);
        self.violations.extend(other.violations);
    }
}

fn strings(set: &BTreeSet<Restraint>) -> Vec<String> {
    set.iter().map(|r| r.to_string()).collect()
}

/// Runs `check` on every catalog graph in parallel; cap errors become
/// skip notices, any other error aborts.
fn over_catalog<F>(theorem: &str, catalog: &[NamedGraph], k: usize, check: F) -> Result<VerifyReport>
where
    F: Fn(&NamedGraph) -> Result<VerifyReport> + Sync,
{
    let parts: Vec<Result<VerifyReport>> = catalog.par_iter().map(&check).collect();
    let mut report = VerifyReport::new(theorem, k);
    for (g, part) in catalog.iter().zip(parts) {
        match part {
            Ok(p) => report.absorb(p),
            Err(e) if e.is_cap() => report.skipped.push(format!("{}: {e}", g.id)),
            Err(e) => return Err(e),
        }
    }
    Ok(report)
}

/// Classes of the k-restraints that are constant on every connected
/// component (one k-set per component, components free to differ).
pub fn per_component_constant_classes(g: &Graph, k: usize, caps: &EnumerationCaps) -> Result<BTreeSet<Restraint>> {
    let comps = g.components();
    let auts = g.automorphisms_capped(caps.automorphism_cap)?;
    let mut out = BTreeSet::new();
    for choice in first_use_candidates(comps.len(), k) {
        let mut sets = vec![ColourSet::new(); g.n()];
        for (comp, set) in comps.iter().zip(choice.sets()) {
            for &v in &comp.back {
                sets[v] = set.clone();
            }
        }
        out.insert(canonicalize_with(&auts, &Restraint::new(sets)?));
    }
    Ok(out)
}

/// R_min is exactly the constant restraint (per component when disconnected),
/// and on graphs with an edge the constant class never ties the maximum.
pub fn verify_min_theorem(catalog: &[NamedGraph], k: usize, opts: &SearchOptions) -> Result<VerifyReport> {
    over_catalog("min", catalog, k, |ng| {
        let g = &ng.graph;
        let mut part = VerifyReport::new("min", k);
        let report = find_extremal_with(&ng.id, g, k, opts)?;
        let expected = per_component_constant_classes(g, k, &opts.caps)?;
        let found = report.min_canons();
        part.checked = 1;
        if found != expected {
            part.violations.push(Violation {
                graph_id: ng.id.clone(),
                expected: strings(&expected),
                found: strings(&found),
                detail: "minimizing classes differ from the per-component constant restraint".into(),
            });
        }
        let auts = g.automorphisms_capped(opts.caps.automorphism_cap)?;
        let constant = canonicalize_with(&auts, &constant_restraint(g, k));
        if g.m() > 0 && report.max_canons().contains(&constant) {
            part.violations.push(Violation {
                graph_id: ng.id.clone(),
                expected: vec![],
                found: vec![constant.to_string()],
                detail: "constant class reaches the maximum on a graph with edges".into(),
            });
        }
        Ok(part)
    })
}

/// Every maximizing class is proper.
pub fn verify_properness(catalog: &[NamedGraph], k: usize, opts: &SearchOptions) -> Result<VerifyReport> {
    over_catalog("proper", catalog, k, |ng| {
        let mut part = VerifyReport::new("proper", k);
        let report = find_extremal_with(&ng.id, &ng.graph, k, opts)?;
        part.checked = 1;
        let improper: BTreeSet<Restraint> = report
            .max_classes
            .iter()
            .filter(|c| !is_proper(&ng.graph, &c.canon))
            .map(|c| c.canon.clone())
            .collect();
        if !improper.is_empty() {
            part.violations.push(Violation {
                graph_id: ng.id.clone(),
                expected: vec![],
                found: strings(&improper),
                detail: "maximizing class is not proper".into(),
            });
        }
        Ok(part)
    })
}

/// On connected bipartite graphs R_max is exactly the alternating class.
pub fn verify_bipartite_max(catalog: &[NamedGraph], k: usize, opts: &SearchOptions) -> Result<VerifyReport> {
    let mut skipped = Vec::new();
    let eligible: Vec<NamedGraph> = catalog
        .iter()
        .filter(|ng| {
            let ok = ng.graph.is_connected() && ng.graph.is_bipartite();
            if !ok {
                skipped.push(format!("{}: not a connected bipartite graph", ng.id));
            }
            ok
        })
        .cloned()
        .collect();
    let mut report = over_catalog("bipartite", &eligible, k, |ng| {
        let g = &ng.graph;
        let mut part = VerifyReport::new("bipartite", k);
        let report = find_extremal_with(&ng.id, g, k, opts)?;
        let auts = g.automorphisms_capped(opts.caps.automorphism_cap)?;
        let expected: BTreeSet<Restraint> = [canonicalize_with(&auts, &alternating_restraint(g, k)?)].into();
        let found = report.max_canons();
        part.checked = 1;
        if found != expected {
            part.violations.push(Violation {
                graph_id: ng.id.clone(),
                expected: strings(&expected),
                found: strings(&found),
                detail: "maximizing classes differ from the alternating restraint".into(),
            });
        }
        Ok(part)
    })?;
    skipped.append(&mut report.skipped);
    report.skipped = skipped;
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct A7Entry {
    pub canon: Restraint,
    pub a7_double_prime: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct A7Report {
    pub graph_id: String,
    pub k: usize,
    /// Every proper class with its cross-neighbourhood term.
    pub proper_classes: Vec<A7Entry>,
    pub min_a7_double_prime: Option<i64>,
    /// Proper classes attaining the minimum.
    pub attaining: Vec<Restraint>,
    pub max_classes: Vec<Restraint>,
    /// True when exactly one proper class attains the minimum.
    pub determines_unique_class: bool,
    pub violations: Vec<String>,
}

/// Every maximizing class is proper and minimizes `A_7''` over proper classes.
pub fn verify_a7_condition(id: &str, g: &Graph, k: usize, opts: &SearchOptions) -> Result<A7Report> {
    let report = find_extremal_with(id, g, k, opts)?;
    let mut proper_classes = Vec::new();
    for rec in report.classes.iter().filter(|c| c.proper) {
        proper_classes.push(A7Entry {
            canon: rec.canon.clone(),
            a7_double_prime: a7_double_prime(g, &rec.canon)?,
        });
    }
    let min = proper_classes.iter().map(|e| e.a7_double_prime).min();
    let attaining: Vec<Restraint> = proper_classes
        .iter()
        .filter(|e| Some(e.a7_double_prime) == min)
        .map(|e| e.canon.clone())
        .collect();
    let mut violations = Vec::new();
    for class in &report.max_classes {
        match proper_classes.iter().find(|e| e.canon == class.canon) {
            None => violations.push(format!("maximizing class {} is not proper", class.canon)),
            Some(e) if Some(e.a7_double_prime) != min => violations.push(format!(
                "maximizing class {} has A7'' = {} above the proper minimum {}",
                class.canon,
                e.a7_double_prime,
                min.expect("a proper class exists")
            )),
            Some(_) => {}
        }
    }
    Ok(A7Report {
        graph_id: id.to_string(),
        k,
        determines_unique_class: attaining.len() == 1,
        proper_classes,
        min_a7_double_prime: min,
        attaining,
        max_classes: report.max_classes.iter().map(|c| c.canon.clone()).collect(),
        violations,
    })
}

/// The conjectured maximizer on an odd cycle, following the three index
/// cases literally: each case is the arithmetic progression (step 2) from
/// its first listed index up to its last listed index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjecturedRestraint {
    /// Colour per vertex `v_1..v_n` (index 0 = `v_1`), 0 where no case applies.
    pub colours: Vec<u32>,
    pub issues: Vec<String>,
}

impl ConjecturedRestraint {
    pub fn restraint(&self) -> Option<Restraint> {
        if self.issues.is_empty() {
            Restraint::simple(&self.colours).ok()
        } else {
            None
        }
    }
}

fn progression(first: usize, last: usize) -> impl Iterator<Item = usize> {
    (first..=last).step_by(2)
}

pub fn conjectured_restraint(n: usize) -> Result<ConjecturedRestraint> {
    if n.is_multiple_of(2) || n < 5 {
        return Err(Error::InvalidArgument(format!(
            "conjecture concerns odd cycles with n >= 5, got n = {n}"
        )));
    }
    let mut colours = vec![0u32; n];
    let mut issues = Vec::new();
    let cases: [(u32, Vec<usize>); 3] = [
        (1, progression(1, (n - 1) / 2).collect()),
        (
            2,
            progression(2, (n - 3) / 2).chain(progression((n + 3) / 2, n)).collect(),
        ),
        (3, progression(n.div_ceil(2), n - 1).collect()),
    ];
    for (colour, indices) in &cases {
        for &i in indices {
            let slot = &mut colours[i - 1];
            if *slot != 0 && *slot != *colour {
                issues.push(format!("v_{i} assigned both {} and {colour}", *slot));
            }
            *slot = *colour;
        }
    }
    // the printed endpoint `n` of the second case and `n-1` of the third
    // are only reached when the progressions land on them
    let listed_last = [(2u32, n), (3u32, n - 1)];
    for (colour, i) in listed_last {
        if !cases[colour as usize - 1].1.contains(&i) {
            issues.push(format!("case {colour} lists v_{i} as its last index but its progression skips it"));
        }
    }
    for (i, &c) in colours.iter().enumerate() {
        if c == 0 {
            issues.push(format!("v_{} is not covered by any case", i + 1));
        }
    }
    Ok(ConjecturedRestraint { colours, issues })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub conjectured: ConjecturedRestraint,
    pub conjectured_class: Option<RestraintClass>,
    pub conjectured_proper: Option<bool>,
    pub max_classes: Vec<RestraintClass>,
    pub max_poly: IntPolynomial,
    pub class_count: usize,
    /// R_max is exactly the conjectured class.
    pub conjecture_holds: Option<bool>,
    /// For n = 7 only: whether R_max is exactly the class of
    /// `[{1},{2},{1},{2},{3},{1},{3}]`.
    pub reference_r2_matches: Option<bool>,
    /// For n = 7 only: whether the conjectured restraint lies in that class.
    pub conjectured_equals_reference_r2: Option<bool>,
}

/// Compares the exhaustive R_max(C_n, 1) against the conjectured pattern.
/// Reports; never assumes the conjecture.
pub fn check_conjecture(n: usize, opts: &SearchOptions) -> Result<ConjectureReport> {
    let conjectured = conjectured_restraint(n)?;
    let g = Graph::cycle(n)?;
    let report = find_extremal_with(&format!("C{n}"), &g, 1, opts)?;
    let auts = g.automorphisms_capped(opts.caps.automorphism_cap)?;
    let conjectured_class = conjectured.restraint().map(|r| RestraintClass {
        canon: canonicalize_with(&auts, &r),
        k: 1,
    });
    let max = report.max_canons();
    let conjecture_holds = conjectured_class
        .as_ref()
        .map(|c| max.len() == 1 && max.contains(&c.canon));
    let reference = (n == 7).then(|| {
        let r2 = Restraint::simple(&[1, 2, 1, 2, 3, 1, 3]).expect("valid literal");
        canonicalize_with(&auts, &r2)
    });
    Ok(ConjectureReport {
        n,
        conjectured_proper: conjectured.restraint().map(|r| is_proper(&g, &r)),
        conjectured_class: conjectured_class.clone(),
        conjectured,
        max_classes: report.max_classes.clone(),
        max_poly: report.max_poly.clone(),
        class_count: report.class_count,
        conjecture_holds,
        reference_r2_matches: reference
            .as_ref()
            .map(|r2| max.len() == 1 && max.contains(r2)),
        conjectured_equals_reference_r2: reference
            .as_ref()
            .and_then(|r2| conjectured_class.as_ref().map(|c| &c.canon == r2)),
    })
}
