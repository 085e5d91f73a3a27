//! Maximal commuting classes and sets of mutually disjoint classes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{check_qubits, pauli_from_string, symplectic_rank, PauliOperator, ProjectivePauli};
use crate::search::{self, OpSet};

/// A maximal commuting class: `n` commuting, independent generators and the
/// `2^n - 1` nonidentity elements of the group they generate.
///
/// Equality is set equality of the elements; generator choice and element
/// order are presentation only.
#[derive(Clone, Debug)]
pub struct CommutingClass {
    n: usize,
    generators: Vec<PauliOperator>,
    elements: Vec<ProjectivePauli>,
    sorted: Vec<ProjectivePauli>,
}

impl PartialEq for CommutingClass {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.sorted == other.sorted
    }
}

impl Eq for CommutingClass {}

impl std::hash::Hash for CommutingClass {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.sorted.hash(state);
    }
}

/// Generator subsets in presentation order: all singletons, then pairs, and so
/// on, each size in lexicographic order. Bit `i` of a mask selects generator `i`.
pub(crate) fn closure_masks(n: usize) -> Vec<u32> {
    let mut masks: Vec<u32> = (1..1u32 << n).collect();
    masks.sort_by_key(|&m| {
        let picked: Vec<u32> = (0..n as u32).filter(|i| m >> i & 1 == 1).collect();
        (m.count_ones(), picked)
    });
    masks
}

impl CommutingClass {
    /// Builds the class generated by `gens`. Generators are stored as their
    /// Hermitian representatives.
    pub fn from_generators(gens: &[PauliOperator]) -> Result<Self> {
        let first = gens.first().ok_or(Error::EmptyList)?;
        let n = first.n();
        check_qubits(n)?;
        if let Some(bad) = gens.iter().find(|g| g.n() != n) {
            return Err(Error::QubitMismatch(n, bad.n()));
        }
        if gens.len() != n {
            return Err(Error::GeneratorCount { expected: n, got: gens.len() });
        }
        for (i, a) in gens.iter().enumerate() {
            for b in &gens[i + 1..] {
                if !a.commutes(b)? {
                    return Err(Error::NotCommuting(a.to_string(), b.to_string()));
                }
            }
        }
        let proj: Vec<ProjectivePauli> = gens.iter().map(|g| g.projective()).collect();
        if symplectic_rank(&proj) != n {
            return Err(Error::DependentGenerators);
        }
        let elements = closure_masks(n)
            .into_iter()
            .map(|m| {
                proj.iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .fold(ProjectivePauli::from_index_unchecked(n, 0), |acc, (_, g)| acc.product(g))
            })
            .collect();
        Ok(Self::assemble(n, proj.iter().map(|p| p.hermitian()).collect(), elements))
    }

    pub fn from_generator_strings(gens: &[&str]) -> Result<Self> {
        let ops = gens.iter().map(|s| pauli_from_string(s)).collect::<Result<Vec<_>>>()?;
        Self::from_generators(&ops)
    }

    /// Builds a class from a full element listing, keeping the listed order.
    /// Generators are the first independent elements of the listing.
    pub fn from_elements(elements: &[ProjectivePauli]) -> Result<Self> {
        let first = elements.first().ok_or(Error::EmptyList)?;
        let n = first.n();
        check_qubits(n)?;
        if let Some(bad) = elements.iter().find(|p| p.n() != n) {
            return Err(Error::QubitMismatch(n, bad.n()));
        }
        let mut gens: Vec<ProjectivePauli> = Vec::new();
        for p in elements {
            let mut trial = gens.clone();
            trial.push(*p);
            if symplectic_rank(&trial) == trial.len() {
                gens = trial;
            }
            if gens.len() == n {
                break;
            }
        }
        let ops: Vec<PauliOperator> = gens.iter().map(|g| g.hermitian()).collect();
        let class = Self::from_generators(&ops).map_err(|e| Error::NotAClass(e.to_string()))?;
        let mut listed = elements.to_vec();
        listed.sort();
        listed.dedup();
        if listed.len() != elements.len() || listed != class.sorted {
            return Err(Error::NotAClass(
                elements.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(","),
            ));
        }
        Ok(Self::assemble(n, class.generators, elements.to_vec()))
    }

    pub fn from_element_strings(elements: &[&str]) -> Result<Self> {
        let ops = elements
            .iter()
            .map(|s| s.parse::<ProjectivePauli>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_elements(&ops)
    }

    /// Class spanned by a greedy basis of operator indices.
    pub(crate) fn from_basis_indices(n: usize, basis: &[u16]) -> Self {
        let gens: Vec<PauliOperator> = basis
            .iter()
            .map(|&i| ProjectivePauli::from_index_unchecked(n, i as usize).hermitian())
            .collect();
        Self::from_generators(&gens).expect("search produced an invalid basis")
    }

    fn assemble(n: usize, generators: Vec<PauliOperator>, elements: Vec<ProjectivePauli>) -> Self {
        let mut sorted = elements.clone();
        sorted.sort();
        Self { n, generators, elements, sorted }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[PauliOperator] {
        &self.generators
    }

    /// Elements in presentation order.
    pub fn elements(&self) -> &[ProjectivePauli] {
        &self.elements
    }

    /// Elements in canonical operator order.
    pub fn sorted_elements(&self) -> &[ProjectivePauli] {
        &self.sorted
    }

    pub fn contains(&self, p: &ProjectivePauli) -> bool {
        p.n() == self.n && self.sorted.binary_search(p).is_ok()
    }

    /// Same class with its generators replaced by the greedy canonical basis
    /// and elements listed in closure order.
    pub fn canonical(&self) -> Self {
        let mut basis: Vec<u16> = Vec::new();
        for p in &self.sorted {
            let mut trial: Vec<ProjectivePauli> = basis
                .iter()
                .map(|&i| ProjectivePauli::from_index_unchecked(self.n, i as usize))
                .collect();
            trial.push(*p);
            if symplectic_rank(&trial) == trial.len() {
                basis.push(p.index() as u16);
            }
        }
        Self::from_basis_indices(self.n, &basis)
    }

    pub fn disjoint(&self, other: &Self) -> Result<bool> {
        disjoint(self, other)
    }
}

impl fmt::Display for CommutingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.elements.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", names.join(", "))
    }
}

pub fn class_from_generators(gens: &[PauliOperator]) -> Result<CommutingClass> {
    CommutingClass::from_generators(gens)
}

/// True when the two classes share no element.
pub fn disjoint(c1: &CommutingClass, c2: &CommutingClass) -> Result<bool> {
    if c1.n != c2.n {
        return Err(Error::QubitMismatch(c1.n, c2.n));
    }
    let (mut i, mut j) = (0, 0);
    while i < c1.sorted.len() && j < c2.sorted.len() {
        match c1.sorted[i].cmp(&c2.sorted[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => return Ok(false),
        }
    }
    Ok(true)
}

/// Elements of `c` that commute with `p`, which must lie outside `c`.
pub fn commuting_overlap(p: &PauliOperator, c: &CommutingClass) -> Result<Vec<ProjectivePauli>> {
    if p.n() != c.n {
        return Err(Error::QubitMismatch(p.n(), c.n));
    }
    let pp = p.projective();
    if pp.is_identity() {
        return Err(Error::Identity);
    }
    if c.contains(&pp) {
        return Err(Error::InClass(pp.to_string()));
    }
    Ok(c.elements.iter().copied().filter(|q| q.commutes_with(&pp)).collect())
}

/// An ordered collection of mutually disjoint maximal classes.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassSet {
    n: usize,
    classes: Vec<CommutingClass>,
    complete: bool,
}

impl ClassSet {
    pub fn new(n: usize, classes: Vec<CommutingClass>) -> Result<Self> {
        check_qubits(n)?;
        if let Some(bad) = classes.iter().find(|c| c.n != n) {
            return Err(Error::QubitMismatch(n, bad.n));
        }
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                if !disjoint(a, b)? {
                    return Err(Error::NotDisjoint);
                }
            }
        }
        let complete = classes.len() == (1 << n) + 1;
        Ok(Self { n, classes, complete })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        1 << self.n
    }

    pub fn classes(&self) -> &[CommutingClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// True when the classes partition all `4^n - 1` nonidentity operators.
    pub fn is_complete(&self) -> bool {
        self.complete
    }

    /// Union of all class elements in canonical order.
    pub fn union(&self) -> Vec<ProjectivePauli> {
        let mut all: Vec<ProjectivePauli> =
            self.classes.iter().flat_map(|c| c.sorted.iter().copied()).collect();
        all.sort();
        all
    }

    pub(crate) fn union_opset(&self) -> OpSet {
        self.classes.iter().flat_map(|c| c.sorted.iter().map(|p| p.index() as u16)).collect()
    }

    /// The classes at the given indices, in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<ClassSet> {
        let mut seen = vec![false; self.classes.len()];
        let mut picked = Vec::with_capacity(indices.len());
        for &i in indices {
            if i >= self.classes.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::BadSelection(format!("{indices:?}")));
            }
            picked.push(self.classes[i].clone());
        }
        ClassSet::new(self.n, picked)
    }

    /// Same partition regardless of class order.
    pub fn same_partition(&self, other: &ClassSet) -> bool {
        self.n == other.n
            && self.classes.len() == other.classes.len()
            && self.classes.iter().all(|c| other.classes.contains(c))
    }

    pub fn position(&self, class: &CommutingClass) -> Option<usize> {
        self.classes.iter().position(|c| c == class)
    }
}

fn alignment_d4(c1: &CommutingClass, c2: &CommutingClass) -> Option<ClassSet> {
    let a = c1.sorted_elements();
    let b = c2.sorted_elements();
    let commute = |p: &ProjectivePauli, q: &ProjectivePauli| p.commutes_with(q);
    for &u1 in a {
        for &v1 in a.iter().filter(|v| **v != u1) {
            for &u2 in b {
                for &v2 in b.iter().filter(|v| **v != u2) {
                    let (w1, w2) = (u1.product(&v1), u2.product(&v2));
                    if !(commute(&u1, &u2) && commute(&v1, &v2) && commute(&w1, &w2)) {
                        continue;
                    }
                    let triples = [
                        [u1.product(&v2), u2.product(&v1)],
                        [u1.product(&u2), v1.product(&u2).product(&v2)],
                        [w1.product(&u2), u1.product(&u2).product(&v2)],
                    ];
                    if let Some(set) = assemble_from_two(c1, c2, &triples) {
                        return Some(set);
                    }
                }
            }
        }
    }
    None
}

fn independent_triples(c: &CommutingClass) -> Vec<[ProjectivePauli; 3]> {
    let e = c.sorted_elements();
    let mut out = Vec::new();
    for &a in e {
        for &b in e {
            for &g in e {
                if symplectic_rank(&[a, b, g]) == 3 {
                    out.push([a, b, g]);
                }
            }
        }
    }
    out
}

fn alignment_d8(c1: &CommutingClass, c2: &CommutingClass) -> Option<ClassSet> {
    let triples_a = independent_triples(c1);
    let triples_b = independent_triples(c2);
    for a in &triples_a {
        for b in &triples_b {
            let pattern = [(0, 2), (1, 2), (1, 0), (2, 0), (2, 1), (0, 1)];
            if !pattern.iter().all(|&(i, j)| a[i].commutes_with(&b[j])) {
                continue;
            }
            let [a1, a2, a3] = *a;
            let [b1, b2, b3] = *b;
            let b12 = b1.product(&b2);
            let b13 = b1.product(&b3);
            let b23 = b2.product(&b3);
            let b123 = b12.product(&b3);
            let gens = [
                [a1.product(&b1), a2.product(&b2), a3.product(&b3)],
                [a1.product(&b3), a2.product(&b23), a3.product(&b12)],
                [a1.product(&b2), a3.product(&b23), a2.product(&b123)],
                [a2.product(&b1), a1.product(&b23), a3.product(&b13)],
                [a2.product(&b3), a1.product(&b13), a3.product(&b123)],
                [a3.product(&b1), a2.product(&b12), a1.product(&b123)],
                [a3.product(&b2), a1.product(&b12), a2.product(&b13)],
            ];
            if let Some(set) = assemble_from_two(c1, c2, &gens) {
                return Some(set);
            }
        }
    }
    None
}

fn assemble_from_two<const K: usize>(
    c1: &CommutingClass,
    c2: &CommutingClass,
    generator_lists: &[[ProjectivePauli; K]],
) -> Option<ClassSet> {
    let mut classes = vec![c1.clone(), c2.clone()];
    for gens in generator_lists {
        let ops: Vec<PauliOperator> = gens.iter().map(|g| g.hermitian()).collect();
        classes.push(CommutingClass::from_generators(&ops).ok()?);
    }
    ClassSet::new(c1.n, classes).ok().filter(|s| s.is_complete())
}

/// Completes two disjoint classes to a full partition using the product
/// formulas for two and three qubits. The first two classes of the result are
/// `c1` and `c2`.
pub fn complete_set_from_two(c1: &CommutingClass, c2: &CommutingClass) -> Result<ClassSet> {
    if !disjoint(c1, c2)? {
        return Err(Error::NotDisjoint);
    }
    match c1.n {
        2 => alignment_d4(c1, c2),
        3 => alignment_d8(c1, c2),
        n => return Err(Error::Unsupported { n, operation: "complete_set_from_two" }),
    }
    .ok_or(Error::AlignmentFailed)
}

/// The two-qubit partition into Z-type, X-type and three mixed classes.
pub fn standard_two_qubit_set() -> ClassSet {
    let listing: [[&str; 3]; 5] = [
        ["ZI", "IZ", "ZZ"],
        ["XI", "IX", "XX"],
        ["XZ", "ZY", "YX"],
        ["YI", "IY", "YY"],
        ["YZ", "ZX", "XY"],
    ];
    let classes = listing
        .iter()
        .map(|l| CommutingClass::from_element_strings(l).expect("fixed listing"))
        .collect();
    ClassSet::new(2, classes).expect("fixed listing")
}

fn diagonal_class(n: usize, x_type: bool) -> CommutingClass {
    let gens: Vec<PauliOperator> = (0..n)
        .map(|j| {
            let bit = 1u8 << (n - 1 - j);
            let (x, z) = if x_type { (bit, 0) } else { (0, bit) };
            PauliOperator::new(n, x, z, 0).expect("in range")
        })
        .collect();
    CommutingClass::from_generators(&gens).expect("single-qubit generators")
}

/// Class generated by single-qubit Z operators.
pub fn z_class(n: usize) -> Result<CommutingClass> {
    check_qubits(n)?;
    Ok(diagonal_class(n, false))
}

/// Class generated by single-qubit X operators.
pub fn x_class(n: usize) -> Result<CommutingClass> {
    check_qubits(n)?;
    Ok(diagonal_class(n, true))
}

/// Deterministic complete set for two to four qubits.
pub fn canonical_complete_set(n: usize) -> Result<ClassSet> {
    match n {
        2 => Ok(standard_two_qubit_set()),
        3 => complete_set_from_two(&diagonal_class(3, false), &diagonal_class(3, true)),
        4 => backtrack_partition(4),
        n => Err(Error::Unsupported { n, operation: "canonical_complete_set" }),
    }
}

/// Depth-first partition search: the smallest uncovered operator is placed in
/// each candidate class in turn.
fn backtrack_partition(n: usize) -> Result<ClassSet> {
    fn go(n: usize, uncovered: OpSet, chosen: &mut Vec<Vec<u16>>) -> bool {
        let Some(p) = uncovered.first() else {
            return true;
        };
        for basis in search::classes_within(n, &uncovered, Some(p)) {
            let mut rest = uncovered;
            for e in search::span_elements(&basis) {
                rest.remove(e);
            }
            chosen.push(basis);
            if go(n, rest, chosen) {
                return true;
            }
            chosen.pop();
        }
        false
    }
    search::check_search_qubits(n, "canonical_complete_set")?;
    let mut chosen = Vec::new();
    if !go(n, OpSet::all_nonidentity(n), &mut chosen) {
        return Err(Error::AlignmentFailed);
    }
    let classes = chosen.iter().map(|b| CommutingClass::from_basis_indices(n, b)).collect();
    ClassSet::new(n, classes)
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ClassJson {
    pub n: usize,
    pub generators: Vec<String>,
    pub elements: Vec<String>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ClassSetJson {
    pub n: usize,
    pub classes: Vec<ClassJson>,
    pub complete: bool,
}

impl From<&CommutingClass> for ClassJson {
    fn from(c: &CommutingClass) -> Self {
        Self {
            n: c.n,
            generators: c.generators.iter().map(|g| g.to_string()).collect(),
            elements: c.elements.iter().map(|e| e.to_string()).collect(),
        }
    }
}

impl From<&ClassSet> for ClassSetJson {
    fn from(s: &ClassSet) -> Self {
        Self { n: s.n, classes: s.classes.iter().map(ClassJson::from).collect(), complete: s.complete }
    }
}

impl ClassJson {
    /// Rebuilds the class from its generators and checks the listed elements.
    pub fn rebuild(&self) -> Result<CommutingClass> {
        let gens = self
            .generators
            .iter()
            .map(|s| pauli_from_string(s))
            .collect::<Result<Vec<_>>>()?;
        let class = CommutingClass::from_generators(&gens)?;
        if class.n != self.n {
            return Err(Error::QubitMismatch(self.n, class.n));
        }
        let listed = self
            .elements
            .iter()
            .map(|s| s.parse::<ProjectivePauli>())
            .collect::<Result<Vec<_>>>()?;
        let with_order = CommutingClass::from_elements(&listed)?;
        if with_order != class {
            return Err(Error::NotAClass(self.elements.join(",")));
        }
        Ok(CommutingClass::assemble(class.n, class.generators, listed))
    }
}

impl ClassSetJson {
    pub fn rebuild(&self) -> Result<ClassSet> {
        let classes = self.classes.iter().map(ClassJson::rebuild).collect::<Result<Vec<_>>>()?;
        let set = ClassSet::new(self.n, classes)?;
        if set.complete != self.complete {
            return Err(Error::Malformed("complete flag does not match the classes".into()));
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pauli::enumerate_nonidentity;

    fn class(listing: &[&str]) -> CommutingClass {
        CommutingClass::from_element_strings(listing).unwrap()
    }

    fn op(s: &str) -> PauliOperator {
        pauli_from_string(s).unwrap()
    }

    #[test]
    fn builds_from_generators() {
        let s1 = CommutingClass::from_generator_strings(&["ZI", "IZ"]).unwrap();
        assert_eq!(s1, class(&["ZI", "IZ", "ZZ"]));
        let c3 = CommutingClass::from_generator_strings(&["ZII", "IZZ", "IIZ"]).unwrap();
        assert_eq!(c3, class(&["ZII", "IZZ", "ZZZ", "IIZ", "IZI", "ZIZ", "ZZI"]));
        assert!(matches!(
            CommutingClass::from_generator_strings(&["XI", "ZI"]),
            Err(Error::NotCommuting(..))
        ));
        assert_eq!(
            CommutingClass::from_generator_strings(&["ZZ", "ZZ"]),
            Err(Error::DependentGenerators)
        );
        assert!(CommutingClass::from_generator_strings(&["ZI"]).is_err());
    }

    #[test]
    fn closure_order_follows_generators() {
        let c = CommutingClass::from_generator_strings(&["YY", "IY"]).unwrap();
        let names: Vec<String> = c.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(names, ["YY", "IY", "YI"]);
        assert_eq!(closure_masks(3), [1, 2, 4, 3, 5, 6, 7]);
    }

    #[test]
    fn disjointness() {
        let set = standard_two_qubit_set();
        let (s1, s2) = (&set.classes()[0], &set.classes()[1]);
        assert!(disjoint(s1, s2).unwrap());
        assert!(!disjoint(s1, s1).unwrap());
        let c1 = class(&["YY", "IY", "YI"]);
        let c1p = class(&["YY", "ZX", "XZ"]);
        assert!(!disjoint(&c1, &c1p).unwrap());
    }

    #[test]
    fn overlaps() {
        let s2 = class(&["XI", "IX", "XX"]);
        let got = commuting_overlap(&op("YY"), &s2).unwrap();
        assert_eq!(got, vec!["XX".parse().unwrap()]);
        let c2 = class(&["IXI", "XIX", "XXX", "IXX", "IIX", "XII", "XXI"]);
        assert_eq!(commuting_overlap(&op("IIY"), &c2).unwrap().len(), 3);
        assert!(matches!(commuting_overlap(&op("XX"), &s2), Err(Error::InClass(_))));
        assert_eq!(commuting_overlap(&op("II"), &s2), Err(Error::Identity));
    }

    #[test]
    fn completes_standard_pair() {
        let set = standard_two_qubit_set();
        let built = complete_set_from_two(&set.classes()[0], &set.classes()[1]).unwrap();
        assert!(built.is_complete());
        assert!(built.same_partition(&set));
        assert_eq!(built.classes()[0], set.classes()[0]);
        assert_eq!(built.classes()[1], set.classes()[1]);
    }

    #[test]
    fn rejects_overlapping_pair() {
        let c1 = class(&["YY", "IY", "YI"]);
        let c1p = class(&["YY", "ZX", "XZ"]);
        assert_eq!(complete_set_from_two(&c1, &c1p), Err(Error::NotDisjoint));
    }

    fn assert_partition(set: &ClassSet) {
        assert!(set.is_complete());
        assert_eq!(set.union(), enumerate_nonidentity(set.n()).unwrap());
    }

    #[test]
    fn canonical_sets_are_partitions() {
        for n in 2..=4 {
            let set = canonical_complete_set(n).unwrap();
            assert_eq!(set.len(), (1 << n) + 1);
            assert_partition(&set);
        }
        assert!(canonical_complete_set(5).is_err());
    }

    #[test]
    fn json_rebuild_detects_tampering() {
        let set = standard_two_qubit_set();
        let json = ClassSetJson::from(&set);
        assert_eq!(json.rebuild().unwrap(), set);
        let mut bad = json.clone();
        bad.classes[2].elements[0] = "XX".into();
        assert!(bad.rebuild().is_err());
    }
}
