use mubforge_core::analysis::{
    check_transversal, collision_entropy, d8_double_partition_verify, eigenbases, eur_bound, eur_check, eur_random_min,
    groupings, ks_alternate_partition, ks_sign_verify, residual, strong_unext_search, SearchConfig, STRONG_FLOOR,
    WITNESS_TOLERANCE,
};
use mubforge_core::builtin::{d8_alternate_partition, strong_d4_triple, strong_d8_set, weak_d4_triple};
use mubforge_core::class::{standard_two_qubit_set, ClassSet, CommutingClass};
use mubforge_core::mub::{eigenbasis, inner};
use mubforge_core::pauli::{enumerate_nonidentity, ProjectivePauli};
use mubforge_core::unextendible::{combinations, extendibility_check, extra_classes_within_union};
use mubforge_core::Error;

/// All maximal two-qubit classes, found by brute force.
fn all_two_qubit_classes() -> Vec<CommutingClass> {
    let ops = enumerate_nonidentity(2).unwrap();
    combinations(ops.len(), 3)
        .into_iter()
        .filter(|t| {
            let (a, b, c) = (ops[t[0]], ops[t[1]], ops[t[2]]);
            a.commutes_with(&b) && a.product(&b) == c
        })
        .map(|t| CommutingClass::from_elements(&t.iter().map(|&i| ops[i]).collect::<Vec<_>>()).unwrap())
        .collect()
}

fn disjoint_triples() -> Vec<ClassSet> {
    let classes = all_two_qubit_classes();
    combinations(classes.len(), 3)
        .into_iter()
        .filter_map(|t| ClassSet::new(2, t.iter().map(|&i| classes[i].clone()).collect()).ok())
        .collect()
}

#[test]
fn two_qubit_class_census() {
    let classes = all_two_qubit_classes();
    assert_eq!(classes.len(), 15);
    let triples = disjoint_triples();
    let unextendible = triples.iter().filter(|t| extendibility_check(t).unwrap().is_empty()).count();
    assert_eq!(triples.len(), 80);
    // Six complete sets contribute ten triples each; each of those extends by
    // exactly its two missing classes. The rest extend by nothing.
    assert_eq!(unextendible, 20);
    for t in &triples {
        assert!(matches!(extendibility_check(t).unwrap().found.len(), 0 | 2));
    }
}

#[test]
fn entropies_saturate_for_every_transversal_class() {
    let mut checked = 0;
    for triple in disjoint_triples() {
        let bases = eigenbases(&triple).unwrap();
        for extra in extra_classes_within_union(&triple).unwrap().found {
            if check_transversal(&triple, &extra).is_err() {
                continue;
            }
            let report = eur_check(&triple, &extra).unwrap();
            assert!((report.bound - 1.0).abs() < 1e-15);
            assert!(report.saturated && report.each_entropy_one);
            assert_eq!(report.states.len(), 4);
            checked += 1;
        }
        let floor = eur_random_min(&bases, 10_000, checked as u64).unwrap();
        assert!(floor >= eur_bound(3, 4) - 1e-12, "random state below the bound: {floor}");
    }
    assert!(checked > 0);
}

#[test]
fn entropy_bound_values() {
    assert!((eur_bound(5, 4) - (-(8.0f64 / 20.0).log2())).abs() < 1e-15);
    assert!((eur_bound(1, 8) - 0.0).abs() < 1e-15);
    let z = eigenbasis(&standard_two_qubit_set().classes()[0]).unwrap();
    let own = &z.vectors()[2].amplitudes;
    assert!(collision_entropy(&z, own).unwrap().abs() < 1e-12);
    let x = eigenbasis(&standard_two_qubit_set().classes()[1]).unwrap();
    assert!((collision_entropy(&x, own).unwrap() - 2.0).abs() < 1e-12);
    assert!(collision_entropy(&x, &own[..2]).is_err());
}

#[test]
fn non_transversal_classes_are_rejected() {
    let set = standard_two_qubit_set();
    let triple = set.select(&[0, 1, 2]).unwrap();
    assert!(eur_check(&triple, &set.classes()[3]).is_err());
    assert!(eur_check(&set.select(&[0, 1]).unwrap(), &set.classes()[3]).is_err());
}

#[test]
fn sign_parity_holds_for_every_unextendible_triple() {
    let mut checked = 0;
    for triple in disjoint_triples() {
        let extendible = !extendibility_check(&triple).unwrap().is_empty();
        match ks_alternate_partition(&triple) {
            Err(Error::Extendible) => {
                assert!(extendible);
                continue;
            }
            Err(e) => panic!("{e}"),
            Ok(ctx) => {
                assert!(!extendible);
                assert_eq!(ctx.operators.len(), 9);
                assert_eq!(ctx.first.union(), ctx.second.union());
                for c in ctx.second.classes() {
                    check_transversal(&triple, c).unwrap();
                }
                let r = ks_sign_verify(&ctx).unwrap();
                assert_eq!(r.contexts.len(), 6);
                assert_eq!(r.minus_identity % 2, 1);
                assert!(r.odd_parity && r.each_operator_twice && r.total_product_identity && r.order_independent);
                assert_eq!(r.context_product_sign, -1);
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 20);
}

#[test]
fn double_partition_of_eight_dimensional_set() {
    let first = groupings(&strong_d8_set());
    let second = groupings(&d8_alternate_partition());
    assert!(d8_double_partition_verify(&first, &second).unwrap());
    assert!(!d8_double_partition_verify(&first, &first).unwrap());
    // Moving one operator between two classes breaks the class structure.
    let mut broken = second.clone();
    let moved: ProjectivePauli = broken[0].pop().unwrap();
    let back = broken[1].pop().unwrap();
    broken[0].push(back);
    broken[1].push(moved);
    assert!(!d8_double_partition_verify(&first, &broken).unwrap());
    let mut fewer = second.clone();
    fewer.pop();
    assert!(matches!(d8_double_partition_verify(&first, &fewer), Err(Error::OperatorSetMismatch)));
}

fn config(starts: usize, seed: u64) -> SearchConfig {
    SearchConfig { starts, seed, ..SearchConfig::default() }
}

#[test]
fn strong_search_calibration() {
    for set in [strong_d4_triple(), weak_d4_triple()] {
        let out = strong_unext_search(&eigenbases(&set).unwrap(), &config(200, 0)).unwrap();
        assert!(out.is_floor() && out.min_residual >= STRONG_FLOOR, "{}", out.min_residual);
    }
    let d8 = strong_unext_search(&eigenbases(&strong_d8_set()).unwrap(), &config(100, 0)).unwrap();
    assert!(d8.min_residual >= STRONG_FLOOR);

    let complete = standard_two_qubit_set();
    for chosen in combinations(5, 3) {
        let bases = eigenbases(&complete.select(&chosen).unwrap()).unwrap();
        let out = strong_unext_search(&bases, &config(50, 1)).unwrap();
        assert!(out.is_witness() && out.min_residual < WITNESS_TOLERANCE, "{chosen:?}: {}", out.min_residual);
        assert!((residual(&out.best_vector, &bases).unwrap() - out.min_residual).abs() < 1e-12);
        for &k in chosen.iter() {
            for v in eigenbasis(&complete.classes()[k]).unwrap().vectors() {
                assert!((inner(&v.amplitudes, &out.best_vector).norm_sqr() - 0.25).abs() < 1e-6);
            }
        }
    }
}

#[test]
fn search_is_deterministic() {
    let bases = eigenbases(&strong_d4_triple()).unwrap();
    let a = strong_unext_search(&bases, &config(30, 9)).unwrap();
    let b = strong_unext_search(&bases, &config(30, 9)).unwrap();
    assert_eq!(a, b);
    assert!(strong_unext_search(&bases, &config(0, 9)).is_err());
}
