use mubforge_core::builtin::{strong_d8_set, weak_d4_alternate, weak_d4_triple};
use mubforge_core::class::{
    canonical_complete_set, class_from_generators, commuting_overlap, complete_set_from_two, disjoint,
    standard_two_qubit_set, ClassSet, CommutingClass,
};
use mubforge_core::pauli::{enumerate_nonidentity, independent, pauli_from_string, PauliOperator};
use mubforge_core::unextendible::{combinations, extendibility_check};

fn ops(listing: &[&str]) -> Vec<PauliOperator> {
    listing.iter().map(|s| pauli_from_string(s).unwrap()).collect()
}

fn names(c: &CommutingClass) -> Vec<String> {
    let mut v: Vec<String> = c.elements().iter().map(|p| p.to_string()).collect();
    v.sort();
    v
}

#[test]
fn generator_examples() {
    let s1 = class_from_generators(&ops(&["ZI", "IZ"])).unwrap();
    assert_eq!(names(&s1), ["IZ", "ZI", "ZZ"]);
    assert!(class_from_generators(&ops(&["XI", "ZI"])).is_err());
    let c3 = class_from_generators(&ops(&["ZII", "IZZ", "IIZ"])).unwrap();
    assert_eq!(c3, strong_d8_set().classes()[2]);
    assert!(class_from_generators(&ops(&["ZI", "ZI"])).is_err());
}

#[test]
fn disjointness_examples() {
    let set = standard_two_qubit_set();
    assert!(disjoint(&set.classes()[0], &set.classes()[1]).unwrap());
    assert!(!disjoint(&set.classes()[0], &set.classes()[0]).unwrap());
    assert!(!disjoint(&weak_d4_triple().classes()[0], &weak_d4_alternate().classes()[0]).unwrap());
}

#[test]
fn standard_set_generators_are_independent() {
    let set = standard_two_qubit_set();
    let pooled: Vec<PauliOperator> =
        set.classes()[0].generators().iter().chain(set.classes()[1].generators()).copied().collect();
    assert!(independent(&pooled).unwrap());
}

#[test]
fn overlap_sizes_in_complete_sets() {
    for n in 2..=3 {
        let set = canonical_complete_set(n).unwrap();
        let want = (1 << (n - 1)) - 1;
        for (i, a) in set.classes().iter().enumerate() {
            for (j, b) in set.classes().iter().enumerate() {
                if i == j {
                    continue;
                }
                let mut seen = Vec::new();
                for p in a.elements() {
                    let overlap = commuting_overlap(&p.hermitian(), b).unwrap();
                    assert_eq!(overlap.len(), want);
                    // No two elements of one class commute with the same subset of another.
                    assert!(!seen.contains(&overlap));
                    seen.push(overlap);
                }
            }
        }
    }
    let yy = pauli_from_string("YY").unwrap();
    let standard = standard_two_qubit_set();
    let s2 = &standard.classes()[1];
    assert_eq!(commuting_overlap(&yy, s2).unwrap().iter().map(|p| p.to_string()).collect::<Vec<_>>(), ["XX"]);
    assert!(commuting_overlap(&pauli_from_string("XX").unwrap(), s2).is_err());
    assert!(commuting_overlap(&pauli_from_string("II").unwrap(), s2).is_err());
}

#[test]
fn every_pair_regenerates_the_standard_partition() {
    let set = standard_two_qubit_set();
    for pair in combinations(5, 2) {
        let (a, b) = (&set.classes()[pair[0]], &set.classes()[pair[1]]);
        let rebuilt = complete_set_from_two(a, b).unwrap();
        assert!(rebuilt.same_partition(&set), "{pair:?}");
        assert_eq!(&rebuilt.classes()[0], a);
        assert_eq!(&rebuilt.classes()[1], b);
    }
}

#[test]
fn every_pair_of_the_three_qubit_set_completes() {
    let set = canonical_complete_set(3).unwrap();
    for pair in combinations(9, 2) {
        let rebuilt = complete_set_from_two(&set.classes()[pair[0]], &set.classes()[pair[1]]).unwrap();
        assert!(rebuilt.is_complete());
        assert_eq!(rebuilt.union(), enumerate_nonidentity(3).unwrap());
    }
}

#[test]
fn completion_from_two_strong_classes() {
    let strong = strong_d8_set();
    let full = complete_set_from_two(&strong.classes()[2], &strong.classes()[1]).unwrap();
    assert!(full.is_complete());
    assert_eq!(full.union(), enumerate_nonidentity(3).unwrap());
    // The five listed classes admit no further class at all, so no complete
    // set contains every one of them; this completion contains four.
    assert!(extendibility_check(&strong).unwrap().is_empty());
    let contained: Vec<usize> = (0..5).filter(|&i| full.position(&strong.classes()[i]).is_some()).collect();
    assert_eq!(contained, [0, 1, 2, 4]);
}

#[test]
fn generator_choice_does_not_matter() {
    for n in 2..=3 {
        for class in canonical_complete_set(n).unwrap().classes() {
            let elems: Vec<PauliOperator> = class.elements().iter().map(|p| p.hermitian()).collect();
            for pick in combinations(elems.len(), n) {
                let gens: Vec<PauliOperator> = pick.iter().map(|&i| elems[i]).collect();
                if independent(&gens).unwrap() {
                    assert_eq!(&class_from_generators(&gens).unwrap(), class);
                } else {
                    assert!(class_from_generators(&gens).is_err());
                }
            }
        }
    }
}

#[test]
fn canonical_sets() {
    let two = canonical_complete_set(2).unwrap();
    assert_eq!(two, standard_two_qubit_set());
    let listed: Vec<Vec<String>> =
        two.classes().iter().map(|c| c.elements().iter().map(|p| p.to_string()).collect()).collect();
    assert_eq!(listed[2], ["XZ", "ZY", "YX"]);
    for (n, size) in [(2, 5), (3, 9), (4, 17)] {
        let set = canonical_complete_set(n).unwrap();
        assert_eq!(set.len(), size);
        assert!(set.is_complete());
        assert_eq!(set.union(), enumerate_nonidentity(n).unwrap());
        assert_eq!(set, canonical_complete_set(n).unwrap());
    }
    assert!(canonical_complete_set(1).is_err());
    assert!(canonical_complete_set(5).is_err());
}

#[test]
fn class_set_rejects_overlap() {
    let a = CommutingClass::from_element_strings(&["YY", "IY", "YI"]).unwrap();
    let b = CommutingClass::from_element_strings(&["YY", "ZX", "XZ"]).unwrap();
    assert!(ClassSet::new(2, vec![a, b]).is_err());
}
