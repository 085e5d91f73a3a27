//! Extendibility searches over sets of disjoint classes and the constructions
//! of unextendible sets built on them.
//!
//! All searches enumerate maximal commuting classes exhaustively with the
//! bit-mask DFS in [`crate::search`], so every report is exhaustive.

use std::collections::BTreeMap;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class::{disjoint, ClassSet, CommutingClass};
use crate::error::{Error, Result};
use crate::pauli::ProjectivePauli;
use crate::search::{self, OpSet};

/// Histograms as JSON objects keyed by decimal strings. Keys are parsed
/// explicitly so the maps also deserialize inside tagged enums.
mod histogram_keys {
    use std::collections::BTreeMap;

    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(map: &BTreeMap<usize, usize>, s: S) -> Result<S::Ok, S::Error> {
        s.collect_map(map.iter().map(|(k, v)| (k.to_string(), v)))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, usize>, D::Error> {
        BTreeMap::<String, usize>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(D::Error::custom))
            .collect()
    }
}

/// Which operators an extension search may draw from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Universe {
    /// The union of the input classes.
    WithinUnion,
    /// Every nonidentity operator not covered by the input classes.
    RemainingOperators,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExtensionReport {
    pub input: ClassSet,
    pub universe: Universe,
    pub universe_operators: Vec<ProjectivePauli>,
    pub found: Vec<CommutingClass>,
    pub exhaustive: bool,
}

impl ExtensionReport {
    pub fn is_empty(&self) -> bool {
        self.found.is_empty()
    }
}

fn search_in(cs: &ClassSet, universe: Universe) -> Result<ExtensionReport> {
    let n = cs.n();
    search::check_search_qubits(n, "extension search")?;
    let union = cs.union_opset();
    let pool = match universe {
        Universe::WithinUnion => union,
        Universe::RemainingOperators => OpSet::all_nonidentity(n).and_not(&union),
    };
    let found = search::classes_within(n, &pool, None)
        .iter()
        .map(|b| CommutingClass::from_basis_indices(n, b))
        .filter(|c| !cs.classes().contains(c))
        .collect();
    Ok(ExtensionReport {
        input: cs.clone(),
        universe,
        universe_operators: pool
            .iter()
            .map(|i| ProjectivePauli::from_index_unchecked(n, i as usize))
            .collect(),
        found,
        exhaustive: true,
    })
}

/// Every maximal class formable from the union of `cs`, other than the inputs.
pub fn extra_classes_within_union(cs: &ClassSet) -> Result<ExtensionReport> {
    search_in(cs, Universe::WithinUnion)
}

/// Every maximal class formable from the operators `cs` leaves uncovered.
/// An empty report certifies that the set is unextendible.
pub fn extendibility_check(cs: &ClassSet) -> Result<ExtensionReport> {
    search_in(cs, Universe::RemainingOperators)
}

/// Nonidentity operators not covered by `cs`, in canonical order.
pub fn leftover_operators(cs: &ClassSet) -> Vec<ProjectivePauli> {
    let union = cs.union();
    crate::pauli::enumerate_nonidentity(cs.n())
        .expect("class sets have a valid qubit count")
        .into_iter()
        .filter(|p| union.binary_search(p).is_err())
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct UnextendibleSet {
    /// The remaining classes of the complete set followed by the extra class.
    pub classes: ClassSet,
    pub complete: ClassSet,
    pub chosen: Vec<usize>,
    pub extra_class: CommutingClass,
}

/// Replaces the `d/2 + 1` chosen classes of a complete set by the unique
/// extra class formable from their union.
pub fn build_unextendible_set(complete: &ClassSet, chosen: &[usize]) -> Result<UnextendibleSet> {
    if !complete.is_complete() {
        return Err(Error::NotComplete);
    }
    let want = complete.dimension() / 2 + 1;
    if chosen.len() != want {
        return Err(Error::BadSelection(format!(
            "{} classes chosen, expected {want}",
            chosen.len()
        )));
    }
    let picked = complete.select(chosen)?;
    let report = extra_classes_within_union(&picked)?;
    if report.found.len() != 1 {
        return Err(Error::ExtraClassCount(report.found.len()));
    }
    let extra = report.found[0].clone();
    let mut classes: Vec<CommutingClass> = (0..complete.len())
        .filter(|i| !chosen.contains(i))
        .map(|i| complete.classes()[i].clone())
        .collect();
    classes.push(extra.clone());
    let set = ClassSet::new(complete.n(), classes)?;
    if !extendibility_check(&set)?.is_empty() {
        return Err(Error::Extendible);
    }
    Ok(UnextendibleSet { classes: set, complete: complete.clone(), chosen: chosen.to_vec(), extra_class: extra })
}

/// Lexicographic `k`-subsets of `0..m`.
pub fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= m {
        go(0, m, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// How the candidate third classes are produced when checking that two-qubit
/// sets of four classes always extend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FourSetMode {
    /// The three remaining classes plus the unique extra class of their union.
    ViaUniqueness,
    /// Every maximal class inside the remaining operators.
    BruteForce,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairOutcome {
    pub pair: (usize, usize),
    pub candidates: usize,
    pub disjoint_pairs: usize,
    pub recovering_complete: usize,
    pub weakly_unextendible: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FourSetReport {
    pub mode: FourSetMode,
    pub pairs: Vec<PairOutcome>,
    pub holds: bool,
}

/// Checks every pair of classes of a complete two-qubit set against every
/// pair of disjoint classes drawn from the remaining operators.
pub fn four_set_report(complete: &ClassSet, mode: FourSetMode) -> Result<FourSetReport> {
    if complete.n() != 2 || !complete.is_complete() {
        return Err(Error::NotComplete);
    }
    let mut pairs = Vec::new();
    for ij in combinations(complete.len(), 2) {
        let base = complete.select(&ij)?;
        let rest: Vec<usize> = (0..complete.len()).filter(|k| !ij.contains(k)).collect();
        let candidates: Vec<CommutingClass> = match mode {
            FourSetMode::ViaUniqueness => {
                let remaining = complete.select(&rest)?;
                let mut c = remaining.classes().to_vec();
                c.extend(extra_classes_within_union(&remaining)?.found);
                c
            }
            FourSetMode::BruteForce => {
                let pool = OpSet::all_nonidentity(2).and_not(&base.union_opset());
                search::classes_within(2, &pool, None)
                    .iter()
                    .map(|b| CommutingClass::from_basis_indices(2, b))
                    .collect()
            }
        };
        let mut outcome = PairOutcome {
            pair: (ij[0], ij[1]),
            candidates: candidates.len(),
            disjoint_pairs: 0,
            recovering_complete: 0,
            weakly_unextendible: 0,
        };
        for ab in combinations(candidates.len(), 2) {
            let (a, b) = (&candidates[ab[0]], &candidates[ab[1]]);
            if !disjoint(a, b)? {
                continue;
            }
            outcome.disjoint_pairs += 1;
            let mut four = base.classes().to_vec();
            four.push(a.clone());
            four.push(b.clone());
            let four = ClassSet::new(2, four)?;
            if extendibility_check(&four)?.is_empty() {
                outcome.weakly_unextendible += 1;
            } else if complete.position(a).is_some() && complete.position(b).is_some() {
                outcome.recovering_complete += 1;
            }
        }
        pairs.push(outcome);
    }
    let holds = pairs.iter().all(|p| p.weakly_unextendible == 0 && p.disjoint_pairs > 0);
    Ok(FourSetReport { mode, pairs, holds })
}

/// True when no two classes of the complete two-qubit set can be joined by two
/// further classes into an unextendible set of four.
pub fn verify_no_weak_4set_d4(complete: &ClassSet) -> Result<bool> {
    Ok(four_set_report(complete, FourSetMode::ViaUniqueness)?.holds)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub k: usize,
    pub subsets: usize,
    pub max_extra: usize,
    /// Extra-class count → number of subsets with that count.
    #[serde(with = "histogram_keys")]
    pub histogram: BTreeMap<usize, usize>,
    /// Largest number of extra classes that meet every chosen class.
    pub max_spanning: usize,
    #[serde(with = "histogram_keys")]
    pub spanning_histogram: BTreeMap<usize, usize>,
}

/// Over every `k`-subset of a complete three-qubit set, the number of extra
/// classes formable within the union.
pub fn theorem4_census(complete: &ClassSet, k: usize) -> Result<CensusReport> {
    if complete.n() != 3 || !complete.is_complete() {
        return Err(Error::NotComplete);
    }
    if !(2..=7).contains(&k) {
        return Err(Error::OutOfRange(format!("k = {k}, expected 2..=7")));
    }
    let counts: Vec<(usize, usize)> = combinations(complete.len(), k)
        .par_iter()
        .map(|subset| {
            let picked = complete.select(subset)?;
            let found = extra_classes_within_union(&picked)?.found;
            let spanning = found
                .iter()
                .filter(|c| picked.classes().iter().all(|p| c.elements().iter().any(|e| p.contains(e))))
                .count();
            Ok((found.len(), spanning))
        })
        .collect::<Result<_>>()?;
    let mut histogram = BTreeMap::new();
    let mut spanning_histogram = BTreeMap::new();
    for (all, spanning) in &counts {
        *histogram.entry(*all).or_insert(0) += 1;
        *spanning_histogram.entry(*spanning).or_insert(0) += 1;
    }
    Ok(CensusReport {
        k,
        subsets: counts.len(),
        max_extra: counts.iter().map(|c| c.0).max().unwrap_or(0),
        histogram,
        max_spanning: counts.iter().map(|c| c.1).max().unwrap_or(0),
        spanning_histogram,
    })
}

/// Where the products of one two-dimensional subgroup of the first class with
/// its commuting partner in the second class land.
#[derive(Clone, Debug, PartialEq)]
pub struct TripleImage {
    pub triple: [ProjectivePauli; 3],
    pub partner: ProjectivePauli,
    /// Indices into the complete set of the classes holding the three products.
    pub images: [usize; 3],
}

/// For each of the seven triples `{U, V, UV}` of class `first`, the unique
/// element of class `second` commuting with it and the classes its three
/// products fall into.
pub fn triple_distribution(complete: &ClassSet, first: usize, second: usize) -> Result<Vec<TripleImage>> {
    if complete.n() != 3 || !complete.is_complete() {
        return Err(Error::NotComplete);
    }
    if first == second || first >= complete.len() || second >= complete.len() {
        return Err(Error::BadSelection(format!("({first}, {second})")));
    }
    let c1 = complete.classes()[first].sorted_elements();
    let c2 = &complete.classes()[second];
    let locate = |p: &ProjectivePauli| {
        complete.classes().iter().position(|c| c.contains(p)).expect("complete set covers everything")
    };
    let mut out = Vec::new();
    for (a, u) in c1.iter().enumerate() {
        for v in &c1[a + 1..] {
            let uv = u.product(v);
            if uv < *v {
                continue;
            }
            let triple = [*u, *v, uv];
            let partners: Vec<ProjectivePauli> = c2
                .sorted_elements()
                .iter()
                .copied()
                .filter(|w| triple.iter().all(|t| t.commutes_with(w)))
                .collect();
            if partners.len() != 1 {
                return Err(Error::ExtraClassCount(partners.len()));
            }
            let partner = partners[0];
            let images = triple.map(|t| locate(&t.product(&partner)));
            out.push(TripleImage { triple, partner, images });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub n: usize,
    pub budget: usize,
    pub seed: u64,
    pub exhaustive: bool,
    pub subsets_examined: usize,
    /// Extra-class count → number of subsets with that count.
    #[serde(with = "histogram_keys")]
    pub extra_class_histogram: BTreeMap<usize, usize>,
    /// Subsets with exactly one extra class whose replacement set is unextendible.
    pub unextendible_results: usize,
    /// Subsets with exactly one extra class whose replacement set still extends.
    pub extendible_results: usize,
}

/// Evidence scan over `d/2 + 1`-subsets of the canonical complete set: counts
/// extra classes in each union and checks the replacement set for
/// unextendibility. When `budget` covers every subset the scan is exhaustive,
/// otherwise `budget` subsets are sampled from `seed`.
pub fn conjecture_scan(n: usize, budget: usize, seed: u64) -> Result<ConjectureReport> {
    if !(2..=4).contains(&n) {
        return Err(Error::Unsupported { n, operation: "conjecture_scan" });
    }
    if budget == 0 {
        return Err(Error::OutOfRange("budget must be at least 1".into()));
    }
    let complete = crate::class::canonical_complete_set(n)?;
    let m = complete.len();
    let k = (1 << n) / 2 + 1;
    let all = combinations(m, k);
    let exhaustive = budget >= all.len();
    let subsets = if exhaustive {
        all
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..budget)
            .map(|_| {
                let mut s = sample(&mut rng, m, k).into_vec();
                s.sort_unstable();
                s
            })
            .collect()
    };
    let outcomes: Vec<(usize, Option<bool>)> = subsets
        .par_iter()
        .map(|subset| {
            let picked = complete.select(subset)?;
            let found = extra_classes_within_union(&picked)?.found;
            if found.len() != 1 {
                return Ok((found.len(), None));
            }
            let mut classes: Vec<CommutingClass> = (0..m)
                .filter(|i| !subset.contains(i))
                .map(|i| complete.classes()[i].clone())
                .collect();
            classes.extend(found);
            let replaced = ClassSet::new(n, classes)?;
            Ok((1, Some(extendibility_check(&replaced)?.is_empty())))
        })
        .collect::<Result<_>>()?;
    let mut histogram = BTreeMap::new();
    let (mut unext, mut ext) = (0, 0);
    for (count, verdict) in &outcomes {
        *histogram.entry(*count).or_insert(0) += 1;
        match verdict {
            Some(true) => unext += 1,
            Some(false) => ext += 1,
            None => {}
        }
    }
    Ok(ConjectureReport {
        n,
        budget,
        seed,
        exhaustive,
        subsets_examined: outcomes.len(),
        extra_class_histogram: histogram,
        unextendible_results: unext,
        extendible_results: ext,
    })
}
