//! Numerical and structural analyses of class sets: the search for a vector
//! unbiased to a set of bases, collision-entropy uncertainty relations, and
//! measurement contexts with their sign parity.

use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::class::{ClassSet, CommutingClass};
use crate::error::{Error, Result};
use crate::mub::{self, eigenbasis, fix_global_phase, inner, MubBasis};
use crate::pauli::{PauliOperator, ProjectivePauli};
use crate::unextendible::{combinations, extendibility_check, extra_classes_within_union};

/// Residual below which a search result counts as an unbiased vector.
pub const WITNESS_TOLERANCE: f64 = 1e-10;
/// Residual floor above which a search result counts as evidence that no
/// unbiased vector exists.
pub const STRONG_FLOOR: f64 = 1e-3;
const NORM_TOLERANCE: f64 = 1e-10;

fn check_unit(psi: &[Complex64]) -> Result<()> {
    let norm = mub::norm(psi);
    if (norm - 1.0).abs() > NORM_TOLERANCE {
        return Err(Error::NotNormalized(norm));
    }
    Ok(())
}

/// `F(ψ) = Σ_{i,α} (|⟨b_i^α|ψ⟩|² − 1/d)²` over every vector of every basis.
pub fn residual(psi: &[Complex64], bases: &[MubBasis]) -> Result<f64> {
    check_unit(psi)?;
    let mut total = 0.0;
    for b in bases {
        if b.dimension() != psi.len() {
            return Err(Error::DimensionMismatch(b.dimension(), psi.len()));
        }
        let inv_d = 1.0 / b.dimension() as f64;
        for v in b.vectors() {
            total += (inner(&v.amplitudes, psi).norm_sqr() - inv_d).powi(2);
        }
    }
    Ok(total)
}

/// The least-squares problem over the phases of `ψ = (1/√d)(1, e^{iθ_1}, …)`,
/// written in the frame where a reference basis is the computational one.
#[derive(Clone, Debug)]
pub struct UnbiasedVectorProblem {
    d: usize,
    /// Rows `⟨r_k|` of the reference basis; `None` when it is already computational.
    frame: Option<Vec<Vec<Complex64>>>,
    /// For every non-reference basis vector `b`, the row `c` with `⟨b|ψ⟩ = Σ c_j ψ_j`
    /// in frame coordinates.
    rows: Vec<Vec<Complex64>>,
}

impl UnbiasedVectorProblem {
    pub fn new(bases: &[MubBasis]) -> Result<Self> {
        let first = bases.first().ok_or(Error::EmptyList)?;
        let d = first.dimension();
        for (i, a) in bases.iter().enumerate() {
            for b in &bases[i + 1..] {
                let dev = mub::unbiasedness_deviation(a, b)?;
                if dev > mub::TOLERANCE {
                    return Err(Error::NotUnbiased(dev));
                }
            }
        }
        let reference = bases.iter().position(mub::is_computational);
        let frame = match reference {
            Some(_) => None,
            None => Some(
                first
                    .vectors()
                    .iter()
                    .map(|v| v.amplitudes.iter().map(|a| a.conj()).collect())
                    .collect::<Vec<Vec<Complex64>>>(),
            ),
        };
        let reference = reference.unwrap_or(0);
        let rows = bases
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != reference)
            .flat_map(|(_, b)| b.vectors().iter())
            .map(|v| {
                let in_frame = match &frame {
                    Some(u) => u.iter().map(|row| row.iter().zip(&v.amplitudes).map(|(x, y)| x * y).sum()).collect(),
                    None => v.amplitudes.clone(),
                };
                in_frame.iter().map(|a: &Complex64| a.conj()).collect()
            })
            .collect();
        Ok(Self { d, frame, rows })
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    /// Number of free phases, `d − 1`.
    pub fn variables(&self) -> usize {
        self.d - 1
    }

    /// The candidate in frame coordinates.
    pub fn frame_vector(&self, theta: &[f64]) -> Vec<Complex64> {
        let s = 1.0 / (self.d as f64).sqrt();
        std::iter::once(Complex64::new(s, 0.0))
            .chain(theta.iter().map(|&t| Complex64::from_polar(s, t)))
            .collect()
    }

    /// The candidate in the original coordinates.
    pub fn vector(&self, theta: &[f64]) -> Vec<Complex64> {
        let psi = self.frame_vector(theta);
        match &self.frame {
            None => psi,
            // ψ = U† ψ' where the rows of U are the reference bras.
            Some(u) => (0..self.d)
                .map(|j| u.iter().zip(&psi).map(|(row, p)| row[j].conj() * p).sum())
                .collect(),
        }
    }

    fn overlaps(&self, psi: &[Complex64]) -> impl Iterator<Item = Complex64> + '_ {
        let psi = psi.to_vec();
        self.rows.iter().map(move |c| c.iter().zip(&psi).map(|(x, y)| x * y).sum())
    }

    /// `F` as a function of the phases.
    pub fn objective(&self, theta: &[f64]) -> f64 {
        let inv_d = 1.0 / self.d as f64;
        self.overlaps(&self.frame_vector(theta)).map(|a| (a.norm_sqr() - inv_d).powi(2)).sum()
    }

    /// Residual vector and its Jacobian (row-major, one row per residual).
    pub fn residuals_and_jacobian(&self, theta: &[f64]) -> (Vec<f64>, Vec<f64>) {
        let psi = self.frame_vector(theta);
        let p = self.variables();
        let inv_d = 1.0 / self.d as f64;
        let mut r = Vec::with_capacity(self.rows.len());
        let mut jac = Vec::with_capacity(self.rows.len() * p);
        for (c, a) in self.rows.iter().zip(self.overlaps(&psi)) {
            r.push(a.norm_sqr() - inv_d);
            // ∂|a|²/∂θ_k = 2 Re(conj(a) · c_k · i ψ_k)
            for k in 1..self.d {
                jac.push(2.0 * (a.conj() * c[k] * Complex64::i() * psi[k]).re);
            }
        }
        (r, jac)
    }

    /// Analytic gradient of `F`.
    pub fn gradient(&self, theta: &[f64]) -> Vec<f64> {
        let p = self.variables();
        let (r, jac) = self.residuals_and_jacobian(theta);
        let mut g = vec![0.0; p];
        for (i, ri) in r.iter().enumerate() {
            for k in 0..p {
                g[k] += 2.0 * ri * jac[i * p + k];
            }
        }
        g
    }

    /// Levenberg–Marquardt from `theta`. Returns the final phases, objective
    /// and whether a stopping test fired before the iteration cap.
    fn minimize(&self, mut theta: Vec<f64>, config: &SearchConfig) -> (Vec<f64>, f64, bool) {
        let p = self.variables();
        let mut f = self.objective(&theta);
        let mut lambda = 1e-3;
        for _ in 0..config.max_iter {
            if f < config.f_tol {
                return (theta, f, true);
            }
            let (r, jac) = self.residuals_and_jacobian(&theta);
            let mut jtj = vec![0.0; p * p];
            let mut jtr = vec![0.0; p];
            for (i, ri) in r.iter().enumerate() {
                let row = &jac[i * p..(i + 1) * p];
                for a in 0..p {
                    jtr[a] += row[a] * ri;
                    for b in 0..p {
                        jtj[a * p + b] += row[a] * row[b];
                    }
                }
            }
            if jtr.iter().map(|g| g * g).sum::<f64>().sqrt() < 1e-15 {
                return (theta, f, true);
            }
            let mut accepted = false;
            while lambda < 1e12 {
                let mut m = jtj.clone();
                for a in 0..p {
                    m[a * p + a] += lambda;
                }
                let mut step: Vec<f64> = jtr.iter().map(|g| -g).collect();
                if cholesky_solve(&mut m, p, &mut step) {
                    let trial: Vec<f64> = theta.iter().zip(&step).map(|(t, s)| t + s).collect();
                    let ft = self.objective(&trial);
                    if ft < f {
                        let gain = f - ft;
                        theta = trial;
                        f = ft;
                        lambda = (lambda / 10.0).max(1e-15);
                        accepted = true;
                        if gain <= 1e-15 * f {
                            return (theta, f, true);
                        }
                        break;
                    }
                }
                lambda *= 10.0;
            }
            if !accepted {
                return (theta, f, true);
            }
        }
        (theta, f, f < config.f_tol)
    }
}

/// Solves `A x = b` for symmetric positive definite `A` (row-major, `n × n`),
/// overwriting `b` with `x`. Returns `false` if `A` is not positive definite.
fn cholesky_solve(a: &mut [f64], n: usize, b: &mut [f64]) -> bool {
    for j in 0..n {
        let mut diag = a[j * n + j];
        for k in 0..j {
            diag -= a[j * n + k] * a[j * n + k];
        }
        if diag <= 0.0 {
            return false;
        }
        let diag = diag.sqrt();
        a[j * n + j] = diag;
        for i in j + 1..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= a[i * n + k] * a[j * n + k];
            }
            a[i * n + j] = s / diag;
        }
    }
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= a[i * n + k] * b[k];
        }
        b[i] = s / a[i * n + i];
    }
    for i in (0..n).rev() {
        let mut s = b[i];
        for k in i + 1..n {
            s -= a[k * n + i] * b[k];
        }
        b[i] = s / a[i * n + i];
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub starts: usize,
    pub seed: u64,
    /// A start stops once `F` drops below this.
    pub f_tol: f64,
    pub max_iter: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { starts: 1000, seed: 0, f_tol: 1e-14, max_iter: 500 }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchOutcome {
    pub min_residual: f64,
    pub best_vector: Vec<Complex64>,
    pub best_start: usize,
    pub starts: usize,
    pub seed: u64,
    /// Starts that hit a stopping test before the iteration cap.
    pub converged_starts: usize,
    pub f_tol: f64,
    pub max_iter: usize,
}

impl SearchOutcome {
    /// The best vector is unbiased to every basis.
    pub fn is_witness(&self) -> bool {
        self.min_residual < WITNESS_TOLERANCE
    }

    /// No start came near an unbiased vector.
    pub fn is_floor(&self) -> bool {
        self.min_residual > STRONG_FLOOR
    }
}

/// Multistart minimization of `F`. Start `k` draws its phases from a ChaCha8
/// stream keyed by `(seed, k)`, so the result does not depend on scheduling.
pub fn strong_unext_search(bases: &[MubBasis], config: &SearchConfig) -> Result<SearchOutcome> {
    if config.starts == 0 {
        return Err(Error::OutOfRange("starts must be at least 1".into()));
    }
    let problem = UnbiasedVectorProblem::new(bases)?;
    let runs: Vec<(f64, Vec<Complex64>, bool)> = (0..config.starts)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(k as u64);
            let theta0: Vec<f64> = (0..problem.variables()).map(|_| rng.gen_range(0.0..TAU)).collect();
            let (theta, _, converged) = problem.minimize(theta0, config);
            let mut psi = problem.vector(&theta);
            let norm = mub::norm(&psi);
            psi.iter_mut().for_each(|a| *a /= norm);
            fix_global_phase(&mut psi);
            let f = residual(&psi, bases).expect("normalized candidate");
            (f, psi, converged)
        })
        .collect();
    let (best_start, best) = runs
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.0.total_cmp(&b.0).then(i.cmp(j)))
        .expect("at least one start");
    Ok(SearchOutcome {
        min_residual: best.0,
        best_vector: best.1.clone(),
        best_start,
        starts: config.starts,
        seed: config.seed,
        converged_starts: runs.iter().filter(|r| r.2).count(),
        f_tol: config.f_tol,
        max_iter: config.max_iter,
    })
}

/// Eigenbases of every class in a set.
pub fn eigenbases(set: &ClassSet) -> Result<Vec<MubBasis>> {
    set.classes().iter().map(eigenbasis).collect()
}

/// Base-2 collision entropy of measuring `psi` in `b`.
pub fn collision_entropy(b: &MubBasis, psi: &[Complex64]) -> Result<f64> {
    check_unit(psi)?;
    if b.dimension() != psi.len() {
        return Err(Error::DimensionMismatch(b.dimension(), psi.len()));
    }
    let s: f64 = b.vectors().iter().map(|v| inner(&v.amplitudes, psi).norm_sqr().powi(2)).sum();
    Ok(-s.log2())
}

/// `−log₂((L + d − 1)/(dL))`, the lower bound on the average collision
/// entropy over `L` mutually unbiased bases in dimension `d`.
pub fn eur_bound(l: usize, d: usize) -> f64 {
    -(((l + d - 1) as f64) / ((d * l) as f64)).log2()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EurState {
    pub label: String,
    pub entropies: Vec<f64>,
    pub average: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EurReport {
    pub bound: f64,
    pub tolerance: f64,
    pub states: Vec<EurState>,
    /// Every state's average equals the bound.
    pub saturated: bool,
    /// Every individual entropy equals 1.
    pub each_entropy_one: bool,
}

/// Checks that `extra` takes exactly one operator from each class of a
/// two-qubit triple.
pub fn check_transversal(classes: &ClassSet, extra: &CommutingClass) -> Result<()> {
    if classes.n() != 2 || extra.n() != 2 {
        return Err(Error::Unsupported { n: classes.n().max(extra.n()), operation: "eur_check" });
    }
    if classes.len() != 3 {
        return Err(Error::InvalidExtraClass(format!("expected 3 classes, got {}", classes.len())));
    }
    for (i, c) in classes.classes().iter().enumerate() {
        let hits = extra.elements().iter().filter(|p| c.contains(p)).count();
        if hits != 1 {
            return Err(Error::InvalidExtraClass(format!("{hits} operators taken from class {i}")));
        }
    }
    Ok(())
}

/// Collision entropies of the eigenstates of `extra` in the eigenbases of a
/// two-qubit triple.
pub fn eur_check(classes: &ClassSet, extra: &CommutingClass) -> Result<EurReport> {
    check_transversal(classes, extra)?;
    let bases = eigenbases(classes)?;
    let bound = eur_bound(bases.len(), classes.dimension());
    let extra_basis = eigenbasis(extra)?;
    let mut states = Vec::new();
    for v in extra_basis.vectors() {
        let entropies =
            bases.iter().map(|b| collision_entropy(b, &v.amplitudes)).collect::<Result<Vec<f64>>>()?;
        let average = entropies.iter().sum::<f64>() / entropies.len() as f64;
        states.push(EurState { label: extra_basis.label_string(v.label), entropies, average });
    }
    let tol = mub::TOLERANCE;
    Ok(EurReport {
        bound,
        tolerance: tol,
        saturated: states.iter().all(|s| (s.average - bound).abs() < tol),
        each_entropy_one: states.iter().all(|s| s.entropies.iter().all(|h| (h - 1.0).abs() < tol)),
        states,
    })
}

/// Haar-random unit vector.
pub fn random_state(d: usize, rng: &mut impl Rng) -> Vec<Complex64> {
    let mut v: Vec<Complex64> =
        (0..d).map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))).collect();
    let n = mub::norm(&v);
    v.iter_mut().for_each(|a| *a /= n);
    v
}

/// Smallest average collision entropy over `samples` random states.
pub fn eur_random_min(bases: &[MubBasis], samples: usize, seed: u64) -> Result<f64> {
    let d = bases.first().ok_or(Error::EmptyList)?.dimension();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = f64::INFINITY;
    for _ in 0..samples {
        let psi = random_state(d, &mut rng);
        let mut sum = 0.0;
        for b in bases {
            sum += collision_entropy(b, &psi)?;
        }
        worst = worst.min(sum / bases.len() as f64);
    }
    Ok(worst)
}

/// Two partitions of the same operators into maximal classes.
#[derive(Clone, Debug, PartialEq)]
pub struct KsContextSet {
    pub n: usize,
    pub operators: Vec<ProjectivePauli>,
    pub first: ClassSet,
    pub second: ClassSet,
}

impl KsContextSet {
    pub fn contexts(&self) -> impl Iterator<Item = &CommutingClass> {
        self.first.classes().iter().chain(self.second.classes())
    }
}

/// For an unextendible two-qubit triple, the second partition of its nine
/// operators into classes that each take one operator from every original
/// class. The new classes are ordered by the operator they share with the
/// first input class; inside each, operators follow the input class order.
pub fn ks_alternate_partition(triple: &ClassSet) -> Result<KsContextSet> {
    if triple.n() != 2 {
        return Err(Error::Unsupported { n: triple.n(), operation: "ks_alternate_partition" });
    }
    if triple.len() != 3 {
        return Err(Error::BadSelection(format!("expected 3 classes, got {}", triple.len())));
    }
    if !extendibility_check(triple)?.is_empty() {
        return Err(Error::Extendible);
    }
    let transversals: Vec<CommutingClass> = extra_classes_within_union(triple)?
        .found
        .into_iter()
        .filter(|c| check_transversal(triple, c).is_ok())
        .collect();
    let picked = combinations(transversals.len(), 3)
        .into_iter()
        .find(|idx| {
            idx.iter().enumerate().all(|(a, &i)| {
                idx[a + 1..].iter().all(|&j| transversals[i].disjoint(&transversals[j]).unwrap_or(false))
            })
        })
        .ok_or(Error::AlignmentFailed)?;
    let lead = &triple.classes()[0];
    let mut second = Vec::with_capacity(3);
    for p in lead.elements() {
        let t = picked.iter().map(|&i| &transversals[i]).find(|t| t.contains(p)).expect("partition covers the class");
        let ordered: Vec<ProjectivePauli> = triple
            .classes()
            .iter()
            .map(|c| *t.elements().iter().find(|q| c.contains(q)).expect("transversal"))
            .collect();
        second.push(CommutingClass::from_elements(&ordered)?);
    }
    Ok(KsContextSet { n: 2, operators: triple.union(), first: triple.clone(), second: ClassSet::new(2, second)? })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContextSign {
    pub operators: Vec<String>,
    /// `+1` or `−1`: the product of the Hermitian operators is `sign · I`.
    pub sign: i8,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KsReport {
    pub contexts: Vec<ContextSign>,
    pub minus_identity: usize,
    pub odd_parity: bool,
    pub each_operator_twice: bool,
    /// The eighteen slot operators multiplied with equal operators adjacent
    /// give `+I`.
    pub total_product_identity: bool,
    /// Sign of the product of the context products; `−1` is incompatible with
    /// the previous field under any noncontextual value assignment.
    pub context_product_sign: i8,
    /// Every ordering of every context gives the same sign.
    pub order_independent: bool,
}

fn product_sign(ops: &[ProjectivePauli]) -> Result<i8> {
    let n = ops.first().ok_or(Error::EmptyList)?.n();
    let prod = ops.iter().fold(PauliOperator::identity(n)?, |acc, p| acc.mul_unchecked(&p.hermitian()));
    match (prod.is_projective_identity(), prod.phase()) {
        (true, 0) => Ok(1),
        (true, 2) => Ok(-1),
        _ => Err(Error::ContextProduct),
    }
}

fn permutations(items: &[ProjectivePauli]) -> Vec<Vec<ProjectivePauli>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// Signs of the context products of a two-qubit context set.
pub fn ks_sign_verify(ctx: &KsContextSet) -> Result<KsReport> {
    if ctx.n != 2 {
        return Err(Error::Unsupported { n: ctx.n, operation: "ks_sign_verify" });
    }
    let mut contexts = Vec::new();
    let mut order_independent = true;
    for c in ctx.contexts() {
        let ops = c.sorted_elements();
        let sign = product_sign(ops)?;
        for perm in permutations(ops) {
            order_independent &= product_sign(&perm)? == sign;
        }
        contexts.push(ContextSign { operators: ops.iter().map(|p| p.to_string()).collect(), sign });
    }
    let grouped: Vec<ProjectivePauli> = ctx.contexts().flat_map(|c| c.sorted_elements().iter().copied()).collect();
    let mut slots = grouped.clone();
    slots.sort();
    let each_operator_twice = ctx.operators.len() == 9
        && ctx.operators.iter().all(|p| slots.iter().filter(|q| *q == p).count() == 2)
        && slots.len() == 18;
    let minus_identity = contexts.iter().filter(|c| c.sign == -1).count();
    Ok(KsReport {
        contexts,
        minus_identity,
        odd_parity: minus_identity % 2 == 1,
        each_operator_twice,
        total_product_identity: product_sign(&slots)? == 1,
        context_product_sign: product_sign(&grouped)?,
        order_independent,
    })
}

fn operator_set(groups: &[Vec<ProjectivePauli>]) -> Vec<ProjectivePauli> {
    let mut all: Vec<ProjectivePauli> = groups.iter().flatten().copied().collect();
    all.sort();
    all.dedup();
    all
}

/// Checks that two groupings of the same operators are both partitions into
/// maximal classes, and that the `i`-th groups share exactly a triple
/// `{U, V, UV}`.
pub fn d8_double_partition_verify(first: &[Vec<ProjectivePauli>], second: &[Vec<ProjectivePauli>]) -> Result<bool> {
    if operator_set(first) != operator_set(second) {
        return Err(Error::OperatorSetMismatch);
    }
    let is_partition = |groups: &[Vec<ProjectivePauli>]| {
        let total: usize = groups.iter().map(Vec::len).sum();
        total == operator_set(groups).len()
            && groups.iter().all(|g| CommutingClass::from_elements(g).is_ok())
            && ClassSet::new(
                groups.first().and_then(|g| g.first()).map_or(0, ProjectivePauli::n),
                groups.iter().filter_map(|g| CommutingClass::from_elements(g).ok()).collect(),
            )
            .is_ok()
    };
    if first.len() != second.len() || !is_partition(first) || !is_partition(second) {
        return Ok(false);
    }
    Ok(first.iter().zip(second).all(|(a, b)| {
        let shared: Vec<ProjectivePauli> = a.iter().filter(|p| b.contains(p)).copied().collect();
        shared.len() == 3 && shared[0].product(&shared[1]) == shared[2]
    }))
}

/// Element lists of a class set, in presentation order.
pub fn groupings(set: &ClassSet) -> Vec<Vec<ProjectivePauli>> {
    set.classes().iter().map(|c| c.elements().to_vec()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::{weak_d4_alternate, weak_d4_triple};
    use crate::class::standard_two_qubit_set;

    #[test]
    fn cholesky_matches_direct_solution() {
        let mut a = vec![4.0, 2.0, 0.6, 2.0, 5.0, 1.0, 0.6, 1.0, 3.0];
        let orig = a.clone();
        let mut b = vec![1.0, -2.0, 0.5];
        let rhs = b.clone();
        assert!(cholesky_solve(&mut a, 3, &mut b));
        for i in 0..3 {
            let lhs: f64 = (0..3).map(|k| orig[i * 3 + k] * b[k]).sum();
            assert!((lhs - rhs[i]).abs() < 1e-12);
        }
        let mut bad = vec![1.0, 2.0, 2.0, 1.0];
        assert!(!cholesky_solve(&mut bad, 2, &mut [0.0, 0.0]));
    }

    #[test]
    fn gradient_matches_finite_differences() {
        let set = standard_two_qubit_set();
        let bases = eigenbases(&set.select(&[1, 2, 3]).unwrap()).unwrap();
        let problem = UnbiasedVectorProblem::new(&bases).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let theta: Vec<f64> = (0..3).map(|_| rng.gen_range(0.0..TAU)).collect();
            let g = problem.gradient(&theta);
            let h = 1e-6;
            for k in 0..3 {
                let mut up = theta.clone();
                let mut down = theta.clone();
                up[k] += h;
                down[k] -= h;
                let fd = (problem.objective(&up) - problem.objective(&down)) / (2.0 * h);
                assert!((fd - g[k]).abs() <= 1e-6 * g[k].abs().max(1e-3), "{fd} vs {}", g[k]);
            }
        }
    }

    #[test]
    fn frame_change_preserves_objective() {
        let set = standard_two_qubit_set();
        let bases = eigenbases(&set.select(&[1, 2, 3]).unwrap()).unwrap();
        let problem = UnbiasedVectorProblem::new(&bases).unwrap();
        assert!(problem.frame.is_some());
        let theta = [0.3, 1.1, -2.0];
        let psi = problem.vector(&theta);
        assert!((residual(&psi, &bases).unwrap() - problem.objective(&theta)).abs() < 1e-12);
    }

    #[test]
    fn residual_closed_forms() {
        let set = standard_two_qubit_set();
        let bases = eigenbases(&set).unwrap();
        let e0 = bases[0].vectors()[0].amplitudes.clone();
        let d: f64 = 4.0;
        let want = (1.0 - 1.0 / d).powi(2) + (d - 1.0) * (1.0 / d).powi(2);
        assert!((residual(&e0, &bases[..1]).unwrap() - want).abs() < 1e-14);
        let w = bases[3].vectors()[2].amplitudes.clone();
        assert!(residual(&w, &bases[..3]).unwrap() < 1e-14);
        let rotated: Vec<Complex64> = w.iter().map(|a| a * Complex64::from_polar(1.0, 0.7)).collect();
        assert!((residual(&rotated, &bases).unwrap() - residual(&w, &bases).unwrap()).abs() < 1e-14);
        assert!(residual(&[Complex64::new(2.0, 0.0); 4], &bases).is_err());
    }

    #[test]
    fn search_rejects_bad_input() {
        let set = standard_two_qubit_set();
        let b = eigenbases(&set).unwrap();
        let cfg = SearchConfig { starts: 0, ..Default::default() };
        assert!(strong_unext_search(&b, &cfg).is_err());
        let twice = vec![b[0].clone(), b[0].clone()];
        assert!(matches!(strong_unext_search(&twice, &SearchConfig::default()), Err(Error::NotUnbiased(_))));
    }

    #[test]
    fn entropy_extremes() {
        let set = standard_two_qubit_set();
        let b = eigenbases(&set).unwrap();
        assert!(collision_entropy(&b[0], &b[0].vectors()[1].amplitudes).unwrap().abs() < 1e-12);
        assert!((collision_entropy(&b[0], &b[1].vectors()[1].amplitudes).unwrap() - 2.0).abs() < 1e-12);
        assert!((eur_bound(3, 4) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn eur_on_weak_triple() {
        let triple = weak_d4_triple();
        let extra = CommutingClass::from_element_strings(&["YY", "ZX", "XZ"]).unwrap();
        let report = eur_check(&triple, &extra).unwrap();
        assert!(report.saturated && report.each_entropy_one);
        assert_eq!(report.states.len(), 4);
        let not_transversal = CommutingClass::from_element_strings(&["ZI", "IZ", "ZZ"]).unwrap();
        assert!(eur_check(&triple, &not_transversal).is_err());
    }

    #[test]
    fn ks_weak_triple() {
        let ctx = ks_alternate_partition(&weak_d4_triple()).unwrap();
        assert_eq!(ctx.second.classes(), weak_d4_alternate().classes());
        for (c, want) in ctx.second.classes().iter().zip(weak_d4_alternate().classes()) {
            assert_eq!(c.elements(), want.elements());
        }
        let report = ks_sign_verify(&ctx).unwrap();
        assert_eq!(report.minus_identity, 1);
        assert!(report.odd_parity && report.each_operator_twice && report.total_product_identity);
        assert_eq!(report.context_product_sign, -1);
        let minus: Vec<&ContextSign> = report.contexts.iter().filter(|c| c.sign == -1).collect();
        let mut ops = minus[0].operators.clone();
        ops.sort();
        assert_eq!(ops, ["XY", "YZ", "ZX"]);
    }

    #[test]
    fn ks_rejects_extendible() {
        let set = standard_two_qubit_set().select(&[0, 1, 2]).unwrap();
        assert_eq!(ks_alternate_partition(&set), Err(Error::Extendible));
    }
}
