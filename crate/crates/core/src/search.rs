//! Bit-mask enumeration of maximal commuting classes inside a set of operators.
//!
//! Operators are addressed by their canonical index `x‖z`. A maximal class is a
//! Lagrangian subspace of the symplectic space, and each one is reported once
//! through its greedy basis: the first generator is the smallest element, every
//! later generator is the smallest element outside the span of the previous
//! ones. The DFS only extends a partial basis with a vector larger than the
//! last generator that is also the minimum of its coset, which yields exactly
//! the greedy bases.

use std::sync::OnceLock;

use crate::error::{Error, Result};

pub(crate) const MAX_SEARCH_QUBITS: usize = 4;

/// A set of operator indices for up to four qubits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub(crate) struct OpSet([u64; 4]);

impl OpSet {
    pub fn empty() -> Self {
        Self([0; 4])
    }

    /// Every nonidentity operator on `n` qubits.
    pub fn all_nonidentity(n: usize) -> Self {
        let mut s = Self::empty();
        for i in 1..1usize << (2 * n) {
            s.insert(i as u16);
        }
        s
    }

    pub fn insert(&mut self, i: u16) {
        self.0[(i >> 6) as usize] |= 1 << (i & 63);
    }

    pub fn remove(&mut self, i: u16) {
        self.0[(i >> 6) as usize] &= !(1 << (i & 63));
    }

    pub fn contains(&self, i: u16) -> bool {
        self.0[(i >> 6) as usize] >> (i & 63) & 1 == 1
    }

    pub fn and(&self, other: &Self) -> Self {
        Self([
            self.0[0] & other.0[0],
            self.0[1] & other.0[1],
            self.0[2] & other.0[2],
            self.0[3] & other.0[3],
        ])
    }

    pub fn and_not(&self, other: &Self) -> Self {
        Self([
            self.0[0] & !other.0[0],
            self.0[1] & !other.0[1],
            self.0[2] & !other.0[2],
            self.0[3] & !other.0[3],
        ])
    }

    #[cfg(test)]
    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    #[cfg(test)]
    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|w| *w == 0)
    }

    /// Keeps only indices strictly greater than `i`.
    pub fn above(&self, i: u16) -> Self {
        let mut out = *self;
        let word = (i >> 6) as usize;
        for w in out.0.iter_mut().take(word) {
            *w = 0;
        }
        let bit = i & 63;
        out.0[word] &= if bit == 63 { 0 } else { !0u64 << (bit + 1) };
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = u16> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &word)| {
            let mut bits = word;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros();
                    bits &= bits - 1;
                    Some((w as u32 * 64 + t) as u16)
                }
            })
        })
    }

    pub fn first(&self) -> Option<u16> {
        self.iter().next()
    }
}

impl FromIterator<u16> for OpSet {
    fn from_iter<T: IntoIterator<Item = u16>>(iter: T) -> Self {
        let mut s = Self::empty();
        for i in iter {
            s.insert(i);
        }
        s
    }
}

pub(crate) fn commute_indices(n: usize, a: u16, b: u16) -> bool {
    let m = (1u16 << n) - 1;
    let (xa, za) = (a >> n, a & m);
    let (xb, zb) = (b >> n, b & m);
    ((xa & zb) ^ (za & xb)).count_ones() % 2 == 0
}

/// For each operator index, the set of operators it commutes with.
pub(crate) fn commute_table(n: usize) -> &'static [OpSet] {
    static TABLES: [OnceLock<Vec<OpSet>>; MAX_SEARCH_QUBITS + 1] =
        [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    TABLES[n].get_or_init(|| {
        let size = 1usize << (2 * n);
        (0..size)
            .map(|a| (0..size as u16).filter(|&b| commute_indices(n, a as u16, b)).collect())
            .collect()
    })
}

pub(crate) fn check_search_qubits(n: usize, operation: &'static str) -> Result<()> {
    if (1..=MAX_SEARCH_QUBITS).contains(&n) {
        Ok(())
    } else {
        Err(Error::Unsupported { n, operation })
    }
}

/// Greedy bases of every maximal commuting class whose nonidentity elements all
/// lie in `universe`. With `first` set, only classes whose smallest element is
/// that operator are produced. Results come out in lexicographic order of
/// their bases.
pub(crate) fn classes_within(n: usize, universe: &OpSet, first: Option<u16>) -> Vec<Vec<u16>> {
    let mut found = Vec::new();
    visit_classes_within(n, universe, first, &mut |basis| {
        found.push(basis.to_vec());
        true
    });
    found
}

/// Streams greedy bases to `visit`; returning `false` stops the search.
pub(crate) fn visit_classes_within(
    n: usize,
    universe: &OpSet,
    first: Option<u16>,
    visit: &mut dyn FnMut(&[u16]) -> bool,
) {
    let table = commute_table(n);
    let mut gens = Vec::with_capacity(n);
    let mut span = Vec::with_capacity(1 << n);
    span.push(0u16);
    let candidates = match first {
        Some(p) => {
            if !universe.contains(p) {
                return;
            }
            gens.push(p);
            span.push(p);
            universe.and(&table[p as usize]).above(p)
        }
        None => *universe,
    };
    dfs(n, universe, table, candidates, &mut gens, &mut span, visit);
}

fn dfs(
    n: usize,
    universe: &OpSet,
    table: &[OpSet],
    candidates: OpSet,
    gens: &mut Vec<u16>,
    span: &mut Vec<u16>,
    visit: &mut dyn FnMut(&[u16]) -> bool,
) -> bool {
    if gens.len() == n {
        return visit(gens);
    }
    for v in candidates.iter() {
        // v must be the minimum of v + span, and the whole coset must lie in the universe.
        if span.iter().any(|&s| {
            let w = v ^ s;
            w < v || !universe.contains(w)
        }) {
            continue;
        }
        let old = span.len();
        for k in 0..old {
            let w = span[k] ^ v;
            span.push(w);
        }
        gens.push(v);
        let next = candidates.and(&table[v as usize]).above(v);
        let keep_going = dfs(n, universe, table, next, gens, span, visit);
        gens.pop();
        span.truncate(old);
        if !keep_going {
            return false;
        }
    }
    true
}

/// All nonidentity elements of the span of `basis`.
pub(crate) fn span_elements(basis: &[u16]) -> Vec<u16> {
    let mut span = vec![0u16];
    for &g in basis {
        let old = span.len();
        for k in 0..old {
            let w = span[k] ^ g;
            span.push(w);
        }
    }
    span.remove(0);
    span
}
