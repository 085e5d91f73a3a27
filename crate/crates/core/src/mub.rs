//! Joint eigenbases of maximal commuting classes.
//!
//! The projector onto the joint eigenvector with label `e` is
//! `P_e = (1/d) Σ_m (-1)^{e·m} g_m`, where `g_m` is the product of the
//! generators selected by the mask `m`. The signs of the `g_m` come from exact
//! Pauli multiplication, so no stabilizer sign convention has to be chosen.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::class::{ClassJson, CommutingClass};
use crate::error::{Error, Result};
use crate::pauli::{i_power, PauliOperator};

pub const TOLERANCE: f64 = 1e-12;
const MAX_BASIS_QUBITS: usize = 4;

/// The `2^n` products of a class's generators, indexed by generator mask.
#[derive(Clone, Debug, PartialEq)]
pub struct SignedGroup {
    members: Vec<PauliOperator>,
}

impl SignedGroup {
    pub fn new(class: &CommutingClass) -> Self {
        let n = class.n();
        let gens = class.generators();
        let members = (0..1u32 << n)
            .map(|m| {
                gens.iter()
                    .enumerate()
                    .filter(|(i, _)| m >> i & 1 == 1)
                    .fold(PauliOperator::identity(n).expect("valid n"), |acc, (_, g)| {
                        acc.mul_unchecked(g)
                    })
            })
            .collect();
        Self { members }
    }

    /// Member for a generator mask.
    pub fn member(&self, mask: u32) -> &PauliOperator {
        &self.members[mask as usize]
    }

    pub fn members(&self) -> &[PauliOperator] {
        &self.members
    }

    /// `+1` or `-1` relating a member to its Hermitian letter form.
    pub fn sign(&self, mask: u32) -> i8 {
        if self.members[mask as usize].relative_phase() == 0 {
            1
        } else {
            -1
        }
    }

    fn mask_of(&self, p: &crate::pauli::ProjectivePauli) -> u32 {
        self.members.iter().position(|g| g.projective() == *p).expect("element of the class") as u32
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BasisVector {
    /// Character label: bit `i` is the exponent paired with generator `i`.
    pub label: u32,
    /// Eigenvalue pattern over the class elements in presentation order: bit
    /// `j` is set when element `j` has eigenvalue `-1`.
    pub signs: u32,
    pub amplitudes: Vec<Complex64>,
}

/// An orthonormal joint eigenbasis of a class, ordered by label.
#[derive(Clone, Debug, PartialEq)]
pub struct MubBasis {
    n: usize,
    vectors: Vec<BasisVector>,
    source: CommutingClass,
}

impl MubBasis {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        1 << self.n
    }

    pub fn vectors(&self) -> &[BasisVector] {
        &self.vectors
    }

    pub fn source(&self) -> &CommutingClass {
        &self.source
    }

    /// Label as a bit string, generator 0 first.
    pub fn label_string(&self, label: u32) -> String {
        (0..self.n).map(|i| if label >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// Sign pattern as a bit string, element 0 first.
    pub fn signs_string(&self, signs: u32) -> String {
        let width = (1usize << self.n) - 1;
        (0..width).map(|j| if signs >> j & 1 == 1 { '1' } else { '0' }).collect()
    }

    /// Largest deviation of the Gram matrix from the identity.
    pub fn orthonormality_error(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.vectors.iter().enumerate() {
            for (j, b) in self.vectors.iter().enumerate() {
                let ip = inner(&a.amplitudes, &b.amplitudes);
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((ip - target).norm());
            }
        }
        worst
    }
}

/// `⟨a|b⟩`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// Rotates `v` so its first non-negligible amplitude is real and positive.
pub fn fix_global_phase(v: &mut [Complex64]) {
    if let Some(a) = v.iter().copied().find(|a| a.norm() > 1e-9) {
        let rot = a.conj() / a.norm();
        for x in v.iter_mut() {
            *x *= rot;
        }
    }
}

/// Column `j` of the projector for label `e`.
fn projector_column(group: &SignedGroup, n: usize, e: u32, j: usize) -> Vec<Complex64> {
    let d = 1usize << n;
    let mut col = vec![Complex64::new(0.0, 0.0); d];
    for (m, g) in group.members().iter().enumerate() {
        let chi = if (e & m as u32).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        let sign = if (g.z() as usize & j).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
        col[j ^ g.x() as usize] += i_power(g.phase()) * (chi * sign / d as f64);
    }
    col
}

/// Dense projector for label `e`, row-major.
pub fn projector(class: &CommutingClass, e: u32) -> Vec<Complex64> {
    let n = class.n();
    let d = 1usize << n;
    let group = SignedGroup::new(class);
    let mut out = vec![Complex64::new(0.0, 0.0); d * d];
    for j in 0..d {
        for (r, v) in projector_column(&group, n, e, j).into_iter().enumerate() {
            out[r * d + j] = v;
        }
    }
    out
}

/// Joint eigenbasis of a class, one vector per character label.
pub fn eigenbasis(class: &CommutingClass) -> Result<MubBasis> {
    let n = class.n();
    if n > MAX_BASIS_QUBITS {
        return Err(Error::Unsupported { n, operation: "eigenbasis" });
    }
    let d = 1usize << n;
    let group = SignedGroup::new(class);
    let masks: Vec<u32> = class.elements().iter().map(|p| group.mask_of(p)).collect();
    let mut vectors = Vec::with_capacity(d);
    for e in 0..d as u32 {
        // Column j of |b⟩⟨b| is b·conj(b_j); take the first column with |b_j|² ≥ 1/d.
        let mut amplitudes = (0..d)
            .map(|j| projector_column(&group, n, e, j))
            .find(|col| col.iter().map(|a| a.norm_sqr()).sum::<f64>() >= 1.0 / (d * d) as f64 - 1e-9)
            .expect("a rank-one projector has a column of weight at least 1/d");
        let scale = norm(&amplitudes);
        for a in amplitudes.iter_mut() {
            *a /= scale;
        }
        fix_global_phase(&mut amplitudes);
        let signs = masks.iter().enumerate().fold(0u32, |acc, (j, &m)| {
            let chi = if (e & m).count_ones() % 2 == 1 { -1 } else { 1 };
            if chi * group.sign(m) as i32 == -1 {
                acc | 1 << j
            } else {
                acc
            }
        });
        vectors.push(BasisVector { label: e, signs, amplitudes });
    }
    Ok(MubBasis { n, vectors, source: class.clone() })
}

/// Largest `| |⟨a|b⟩|² - 1/d |` over all vector pairs.
pub fn unbiasedness_deviation(b1: &MubBasis, b2: &MubBasis) -> Result<f64> {
    if b1.dimension() != b2.dimension() {
        return Err(Error::DimensionMismatch(b1.dimension(), b2.dimension()));
    }
    let inv_d = 1.0 / b1.dimension() as f64;
    let mut worst: f64 = 0.0;
    for a in &b1.vectors {
        for b in &b2.vectors {
            worst = worst.max((inner(&a.amplitudes, &b.amplitudes).norm_sqr() - inv_d).abs());
        }
    }
    Ok(worst)
}

/// True when every bit position of the given sign strings is set in exactly
/// half of them.
pub fn balanced_columns(strings: &[u32], width: usize) -> bool {
    (0..width).all(|j| strings.iter().filter(|s| *s >> j & 1 == 1).count() * 2 == strings.len())
}

/// For a two-qubit basis, each element's eigenvalue column across the four
/// vectors contains exactly two `-1` entries (all sign strings pairwise at
/// Hamming distance 2).
pub fn labels_hamming_check(b: &MubBasis) -> Result<bool> {
    if b.n != 2 {
        return Err(Error::Unsupported { n: b.n, operation: "labels_hamming_check" });
    }
    let strings: Vec<u32> = b.vectors.iter().map(|v| v.signs).collect();
    Ok(balanced_columns(&strings, 3))
}

pub fn computational_basis_vectors(d: usize) -> Vec<Vec<Complex64>> {
    (0..d)
        .map(|k| {
            let mut v = vec![Complex64::new(0.0, 0.0); d];
            v[k] = Complex64::new(1.0, 0.0);
            v
        })
        .collect()
}

/// True when every vector is a standard basis vector up to phase.
pub fn is_computational(b: &MubBasis) -> bool {
    b.vectors.iter().all(|v| {
        let big = v.amplitudes.iter().filter(|a| a.norm() > 1.0 - 1e-9).count();
        let small = v.amplitudes.iter().filter(|a| a.norm() < 1e-9).count();
        big == 1 && small == v.amplitudes.len() - 1
    })
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct VectorJson {
    pub label: String,
    pub re: Vec<f64>,
    pub im: Vec<f64>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct BasisJson {
    pub class: ClassJson,
    pub vectors: Vec<VectorJson>,
}

impl From<&MubBasis> for BasisJson {
    fn from(b: &MubBasis) -> Self {
        Self {
            class: ClassJson::from(&b.source),
            vectors: b
                .vectors
                .iter()
                .map(|v| VectorJson {
                    label: b.label_string(v.label),
                    re: v.amplitudes.iter().map(|a| a.re).collect(),
                    im: v.amplitudes.iter().map(|a| a.im).collect(),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::class::{canonical_complete_set, standard_two_qubit_set};

    fn c(v: &[(f64, f64)]) -> Vec<Complex64> {
        v.iter().map(|&(r, i)| Complex64::new(r, i)).collect()
    }

    fn matches_up_to_phase(a: &[Complex64], b: &[Complex64]) -> bool {
        (inner(a, b).norm() - 1.0).abs() < 1e-12
    }

    #[test]
    fn z_class_gives_computational_basis() {
        let b = eigenbasis(&CommutingClass::from_element_strings(&["ZI", "IZ", "ZZ"]).unwrap()).unwrap();
        assert!(is_computational(&b));
        let q = eigenbasis(&CommutingClass::from_element_strings(&["Z"]).unwrap()).unwrap();
        assert_eq!(q.vectors()[0].amplitudes, c(&[(1.0, 0.0), (0.0, 0.0)]));
        assert_eq!(q.vectors()[1].amplitudes, c(&[(0.0, 0.0), (1.0, 0.0)]));
    }

    #[test]
    fn y_class_matches_listing() {
        let b = eigenbasis(&CommutingClass::from_element_strings(&["YY", "IY", "YI"]).unwrap()).unwrap();
        let expected = [
            c(&[(0.5, 0.0), (0.0, 0.5), (0.0, 0.5), (-0.5, 0.0)]),
            c(&[(0.5, 0.0), (0.0, -0.5), (0.0, -0.5), (-0.5, 0.0)]),
            c(&[(0.5, 0.0), (0.0, -0.5), (0.0, 0.5), (0.5, 0.0)]),
            c(&[(0.5, 0.0), (0.0, 0.5), (0.0, -0.5), (0.5, 0.0)]),
        ];
        for e in &expected {
            assert!(b.vectors().iter().any(|v| matches_up_to_phase(&v.amplitudes, e)));
        }
    }

    #[test]
    fn eigenvalues_follow_sign_strings() {
        for n in 2..=3 {
            for class in canonical_complete_set(n).unwrap().classes() {
                let b = eigenbasis(class).unwrap();
                assert!(b.orthonormality_error() < TOLERANCE);
                for v in b.vectors() {
                    for (j, p) in class.elements().iter().enumerate() {
                        let lambda = if v.signs >> j & 1 == 1 { -1.0 } else { 1.0 };
                        let out = p.hermitian().apply(&v.amplitudes).unwrap();
                        let resid: f64 = out
                            .iter()
                            .zip(&v.amplitudes)
                            .map(|(o, a)| (o - a * lambda).norm_sqr())
                            .sum::<f64>()
                            .sqrt();
                        assert!(resid < TOLERANCE);
                    }
                }
            }
        }
    }

    #[test]
    fn projectors_resolve_identity() {
        let set = standard_two_qubit_set();
        for class in set.classes() {
            let d = 4;
            let mut sum = vec![Complex64::new(0.0, 0.0); d * d];
            for e in 0..d as u32 {
                let p = projector(class, e);
                // idempotent
                for r in 0..d {
                    for col in 0..d {
                        let sq: Complex64 = (0..d).map(|k| p[r * d + k] * p[k * d + col]).sum();
                        assert!((sq - p[r * d + col]).norm() < TOLERANCE);
                        assert!((p[r * d + col] - p[col * d + r].conj()).norm() < TOLERANCE);
                    }
                }
                for (s, v) in sum.iter_mut().zip(&p) {
                    *s += v;
                }
            }
            for r in 0..d {
                for col in 0..d {
                    let target = if r == col { 1.0 } else { 0.0 };
                    assert!((sum[r * d + col] - target).norm() < TOLERANCE);
                }
            }
        }
    }

    #[test]
    fn deviation_against_self() {
        let b = eigenbasis(&standard_two_qubit_set().classes()[1]).unwrap();
        assert!((unbiasedness_deviation(&b, &b).unwrap() - 0.75).abs() < TOLERANCE);
        let other = eigenbasis(&standard_two_qubit_set().classes()[0]).unwrap();
        assert!(unbiasedness_deviation(&b, &other).unwrap() < TOLERANCE);
        let three = eigenbasis(&canonical_complete_set(3).unwrap().classes()[0]).unwrap();
        assert!(unbiasedness_deviation(&b, &three).is_err());
    }

    #[test]
    fn hamming_lemma() {
        for class in standard_two_qubit_set().classes() {
            assert!(labels_hamming_check(&eigenbasis(class).unwrap()).unwrap());
        }
        assert!(!balanced_columns(&[0b000, 0b001, 0b010, 0b011], 3));
        let b = eigenbasis(&canonical_complete_set(3).unwrap().classes()[0]).unwrap();
        assert!(labels_hamming_check(&b).is_err());
    }
}
