use mubforge_core::pauli::{enumerate_nonidentity, pauli_from_string, PauliOperator, ProjectivePauli};
use num_complex::Complex64;
use proptest::prelude::*;

fn matmul(a: &[Complex64], b: &[Complex64], d: usize) -> Vec<Complex64> {
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        for k in 0..d {
            let aik = a[i * d + k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..d {
                out[i * d + j] += aik * b[k * d + j];
            }
        }
    }
    out
}

fn same(a: &[Complex64], b: &[Complex64]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() < 1e-12)
}

fn with_phase(p: &ProjectivePauli, phase: u8) -> PauliOperator {
    PauliOperator::new(p.n(), p.x(), p.z(), phase).unwrap()
}

fn letters(n: usize) -> Vec<String> {
    (0..4usize.pow(n as u32))
        .map(|mut k| {
            (0..n)
                .map(|_| {
                    let c = ['I', 'X', 'Y', 'Z'][k % 4];
                    k /= 4;
                    c
                })
                .collect()
        })
        .collect()
}

#[test]
fn commuting_partner_census() {
    for (n, expected) in [(2usize, 6usize), (3, 30)] {
        let all = enumerate_nonidentity(n).unwrap();
        for p in &all {
            let count = all.iter().filter(|q| *q != p && p.commutes_with(q)).count();
            assert_eq!(count, expected, "{p}");
            assert_eq!(count, 4usize.pow(n as u32) / 2 - 2);
        }
    }
}

#[test]
fn products_match_dense_matrices_at_two_qubits() {
    let all: Vec<ProjectivePauli> =
        std::iter::once(ProjectivePauli::new(2, 0, 0).unwrap()).chain(enumerate_nonidentity(2).unwrap()).collect();
    for a in &all {
        for b in &all {
            for (pa, pb) in [(0u8, 0u8), (1, 2), (3, 1), (2, 3)] {
                let (a, b) = (with_phase(a, pa), with_phase(b, pb));
                let prod = a.multiply(&b).unwrap();
                assert!(same(&prod.to_dense(), &matmul(&a.to_dense(), &b.to_dense(), 4)), "{a} * {b}");
                let (ab, ba) = (prod, b.multiply(&a).unwrap());
                assert_eq!(a.commutes(&b).unwrap(), ab.phase() == ba.phase(), "{a} {b}");
                assert_eq!(ab.projective(), ba.projective());
            }
        }
    }
}

#[test]
fn letter_strings_round_trip() {
    for n in 1..=3 {
        for s in letters(n) {
            let p = pauli_from_string(&s).unwrap();
            assert_eq!(p.to_string(), s);
            let dense = p.to_dense();
            assert!(same(&matmul(&dense, &dense, 1 << n), &PauliOperator::identity(n).unwrap().to_dense()));
        }
    }
}

#[test]
fn canonical_order_is_lexicographic_on_x_then_z() {
    let all = enumerate_nonidentity(3).unwrap();
    let keys: Vec<(u8, u8)> = all.iter().map(|p| (p.x(), p.z())).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    assert_eq!(all.iter().map(|p| p.index()).collect::<Vec<_>>(), (1..64).collect::<Vec<_>>());
}

fn operator(n: usize) -> impl Strategy<Value = PauliOperator> {
    let max = 1u8 << n;
    (0..max, 0..max, 0u8..4).prop_map(move |(x, z, ph)| PauliOperator::new(n, x, z, ph).unwrap())
}

proptest! {
    #[test]
    fn associative_and_phase_exact_at_three_qubits(a in operator(3), b in operator(3), c in operator(3)) {
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let dense = matmul(&matmul(&a.to_dense(), &b.to_dense(), 8), &c.to_dense(), 8);
        prop_assert!(same(&left.to_dense(), &dense));
    }

    #[test]
    fn commutation_is_phase_agreement(a in operator(3), b in operator(3)) {
        let ab = a.multiply(&b).unwrap();
        let ba = b.multiply(&a).unwrap();
        prop_assert_eq!(a.commutes(&b).unwrap(), ab.phase() == ba.phase());
        let commutator_zero = same(&ab.to_dense(), &ba.to_dense());
        prop_assert_eq!(a.commutes(&b).unwrap(), commutator_zero);
    }

    #[test]
    fn json_round_trip(a in operator(4)) {
        let text = serde_json::to_string(&a).unwrap();
        let back: PauliOperator = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, a);
    }
}
