//! The n-qubit Pauli group in symplectic form.
//!
//! An operator is stored as `i^phase * X^x Z^z`, where `x` and `z` are bit
//! masks and the X factor sits left of the Z factor on every qubit. Qubit 0 is
//! the leftmost letter of the text form and the most significant bit of both
//! masks, so the mask read as a bit string matches the letter order.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 8;

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if (1..=MAX_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::QubitCount(n))
    }
}

/// A Pauli operator with its phase tracked as a power of `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct PauliOperator {
    n: u8,
    x: u8,
    z: u8,
    phase: u8,
}

/// A Pauli operator modulo phase.
///
/// Ordering is lexicographic on the bit string `x‖z`, which is the canonical
/// operator order used by every enumeration in the crate.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct ProjectivePauli {
    n: u8,
    x: u8,
    z: u8,
}

fn mask(n: usize) -> u8 {
    ((1u16 << n) - 1) as u8
}

impl PauliOperator {
    pub fn new(n: usize, x: u8, z: u8, phase: u8) -> Result<Self> {
        check_qubits(n)?;
        let m = mask(n);
        if x & !m != 0 || z & !m != 0 {
            return Err(Error::OutOfRange(format!("bit mask wider than {n} qubits")));
        }
        Ok(Self { n: n as u8, x, z, phase: phase & 3 })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::new(n, 0, 0, 0)
    }

    /// The Hermitian representative of a projective operator (each Y counted once).
    pub fn hermitian(p: ProjectivePauli) -> Self {
        Self { n: p.n, x: p.x, z: p.z, phase: ((p.x & p.z).count_ones() & 3) as u8 }
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x(&self) -> u8 {
        self.x
    }

    pub fn z(&self) -> u8 {
        self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    pub fn projective(&self) -> ProjectivePauli {
        ProjectivePauli { n: self.n, x: self.x, z: self.z }
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0 && self.phase == 0
    }

    pub fn is_projective_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    /// Phase relative to the Hermitian representative, as a power of `i`.
    pub fn relative_phase(&self) -> u8 {
        (self.phase + 4 - ((self.x & self.z).count_ones() & 3) as u8) & 3
    }

    pub fn is_hermitian_standard(&self) -> bool {
        self.relative_phase() == 0
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::QubitMismatch(self.n(), other.n()));
        }
        Ok(self.mul_unchecked(other))
    }

    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        // Z^z1 X^x2 = (-1)^{z1·x2} X^x2 Z^z1 qubit by qubit.
        let swap = 2 * (self.z & other.x).count_ones();
        Self {
            n: self.n,
            x: self.x ^ other.x,
            z: self.z ^ other.z,
            phase: ((self.phase as u32 + other.phase as u32 + swap) & 3) as u8,
        }
    }

    pub fn commutes(&self, other: &Self) -> Result<bool> {
        if self.n != other.n {
            return Err(Error::QubitMismatch(self.n(), other.n()));
        }
        Ok(self.projective().commutes_with(&other.projective()))
    }

    /// Multiplies by `-1`.
    pub fn negate(&self) -> Self {
        Self { phase: (self.phase + 2) & 3, ..*self }
    }

    /// Applies the operator to a state vector of length `2^n`.
    pub fn apply(&self, state: &[Complex64]) -> Result<Vec<Complex64>> {
        let d = 1usize << self.n;
        if state.len() != d {
            return Err(Error::DimensionMismatch(state.len(), d));
        }
        let global = i_power(self.phase);
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (k, amp) in state.iter().enumerate() {
            let sign = if (self.z as usize & k).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            out[k ^ self.x as usize] += global * amp * sign;
        }
        Ok(out)
    }

    /// Dense row-major `2^n × 2^n` matrix.
    pub fn to_dense(&self) -> Vec<Complex64> {
        let d = 1usize << self.n;
        let global = i_power(self.phase);
        let mut m = vec![Complex64::new(0.0, 0.0); d * d];
        for col in 0..d {
            let sign = if (self.z as usize & col).count_ones() % 2 == 1 { -1.0 } else { 1.0 };
            let row = col ^ self.x as usize;
            m[row * d + col] = global * sign;
        }
        m
    }

    /// Letter string with a phase prefix when not Hermitian-standard
    /// (`-`, `i` or `-i`).
    pub fn to_letters(&self) -> String {
        let prefix = match self.relative_phase() {
            0 => "",
            1 => "i",
            2 => "-",
            _ => "-i",
        };
        format!("{prefix}{}", self.projective())
    }
}

pub(crate) fn i_power(p: u8) -> Complex64 {
    match p & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Parses a letter string over `{I, X, Y, Z}` into its Hermitian operator.
pub fn pauli_from_string(s: &str) -> Result<PauliOperator> {
    let letters: Vec<char> = s.trim().chars().collect();
    if letters.is_empty() {
        return Err(Error::EmptyString);
    }
    if letters.len() > MAX_QUBITS {
        return Err(Error::QubitCount(letters.len()));
    }
    let n = letters.len();
    let (mut x, mut z, mut phase) = (0u8, 0u8, 0u8);
    for (j, c) in letters.iter().enumerate() {
        let bit = 1u8 << (n - 1 - j);
        match c.to_ascii_uppercase() {
            'I' => {}
            'X' => x |= bit,
            'Z' => z |= bit,
            'Y' => {
                // Y = i·XZ
                x |= bit;
                z |= bit;
                phase += 1;
            }
            other => return Err(Error::InvalidLetter(other)),
        }
    }
    PauliOperator::new(n, x, z, phase)
}

impl FromStr for PauliOperator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        pauli_from_string(s)
    }
}

impl fmt::Display for PauliOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_letters())
    }
}

impl ProjectivePauli {
    pub fn new(n: usize, x: u8, z: u8) -> Result<Self> {
        PauliOperator::new(n, x, z, 0).map(|p| p.projective())
    }

    pub(crate) fn from_index_unchecked(n: usize, index: usize) -> Self {
        let m = mask(n) as usize;
        Self { n: n as u8, x: ((index >> n) & m) as u8, z: (index & m) as u8 }
    }

    pub fn from_index(n: usize, index: usize) -> Result<Self> {
        check_qubits(n)?;
        if index >= 1 << (2 * n) {
            return Err(Error::OutOfRange(format!("index {index} for {n} qubits")));
        }
        Ok(Self::from_index_unchecked(n, index))
    }

    /// Position in canonical order; the identity is index 0.
    pub fn index(&self) -> usize {
        ((self.x as usize) << self.n) | self.z as usize
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn x(&self) -> u8 {
        self.x
    }

    pub fn z(&self) -> u8 {
        self.z
    }

    pub fn is_identity(&self) -> bool {
        self.x == 0 && self.z == 0
    }

    pub fn commutes_with(&self, other: &Self) -> bool {
        ((self.x & other.z) ^ (self.z & other.x)).count_ones() % 2 == 0
    }

    pub fn hermitian(&self) -> PauliOperator {
        PauliOperator::hermitian(*self)
    }

    pub fn product(&self, other: &Self) -> Self {
        Self { n: self.n, x: self.x ^ other.x, z: self.z ^ other.z }
    }
}

impl fmt::Display for ProjectivePauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.n();
        for j in 0..n {
            let bit = 1u8 << (n - 1 - j);
            let c = match (self.x & bit != 0, self.z & bit != 0) {
                (false, false) => 'I',
                (true, false) => 'X',
                (false, true) => 'Z',
                (true, true) => 'Y',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for ProjectivePauli {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        pauli_from_string(s).map(|p| p.projective())
    }
}

/// All `4^n - 1` nonidentity operators in canonical order.
pub fn enumerate_nonidentity(n: usize) -> Result<Vec<ProjectivePauli>> {
    check_qubits(n)?;
    Ok((1..1usize << (2 * n)).map(|i| ProjectivePauli::from_index_unchecked(n, i)).collect())
}

/// GF(2) rank of the symplectic vectors of the given operators.
pub fn symplectic_rank(ops: &[ProjectivePauli]) -> usize {
    let mut basis: Vec<u16> = Vec::new();
    for p in ops {
        let mut v = p.index() as u16;
        for b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// True when the operators are linearly independent over GF(2).
pub fn independent(ops: &[PauliOperator]) -> Result<bool> {
    let first = ops.first().ok_or(Error::EmptyList)?;
    if let Some(bad) = ops.iter().find(|p| p.n != first.n) {
        return Err(Error::QubitMismatch(first.n(), bad.n()));
    }
    let proj: Vec<ProjectivePauli> = ops.iter().map(|p| p.projective()).collect();
    Ok(symplectic_rank(&proj) == ops.len())
}

fn bits_to_string(v: u8, n: usize) -> String {
    (0..n).map(|j| if v & (1 << (n - 1 - j)) != 0 { '1' } else { '0' }).collect()
}

fn string_to_bits(s: &str) -> Option<u8> {
    s.chars().try_fold(0u8, |acc, c| match c {
        '0' => Some(acc << 1),
        '1' => Some((acc << 1) | 1),
        _ => None,
    })
}

#[derive(Serialize, Deserialize)]
struct PauliJson {
    n: usize,
    x: String,
    z: String,
    phase: u8,
}

impl Serialize for PauliOperator {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        PauliJson {
            n: self.n(),
            x: bits_to_string(self.x, self.n()),
            z: bits_to_string(self.z, self.n()),
            phase: self.phase,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for PauliOperator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = PauliJson::deserialize(deserializer)?;
        if raw.x.len() != raw.n || raw.z.len() != raw.n {
            return Err(D::Error::custom("bit string length differs from n"));
        }
        let x = string_to_bits(&raw.x).ok_or_else(|| D::Error::custom("bad x bit string"))?;
        let z = string_to_bits(&raw.z).ok_or_else(|| D::Error::custom("bad z bit string"))?;
        PauliOperator::new(raw.n, x, z, raw.phase).map_err(D::Error::custom)
    }
}
