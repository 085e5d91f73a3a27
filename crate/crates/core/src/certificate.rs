//! Self-contained JSON certificates and their independent re-verification.
//!
//! A certificate carries its inputs, the configuration used, and the computed
//! result. [`check_claims`] rebuilds every object from the file alone and
//! re-runs the computation; exact results must match exactly and floating
//! point results within [`FLOAT_TOLERANCE`].

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::analysis::{
    self, check_transversal, eigenbases, eur_check, eur_random_min, ks_alternate_partition, ks_sign_verify,
    residual, strong_unext_search, EurReport, KsReport, SearchConfig, SearchOutcome,
};
use crate::class::{canonical_complete_set, ClassJson, ClassSet, ClassSetJson, CommutingClass};
use crate::error::{Error, Result};
use crate::mub::{self, BasisJson};
use crate::unextendible::{
    build_unextendible_set, combinations, conjecture_scan, extendibility_check, extra_classes_within_union,
    four_set_report, theorem4_census, CensusReport, ConjectureReport, ExtensionReport, FourSetMode, FourSetReport,
    UnextendibleSet, Universe,
};

pub const SCHEMA_VERSION: &str = "1";
pub const FLOAT_TOLERANCE: f64 = 1e-12;
/// Random states drawn by the entropy certificate.
pub const EUR_RANDOM_SAMPLES: usize = 10_000;
const MAX_DIFFS: usize = 20;

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Default)]
#[serde(deny_unknown_fields)]
pub struct Config {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chosen: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub all: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub starts: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub f_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_iter: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub budget: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<FourSetMode>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct ExtensionJson {
    pub input: ClassSetJson,
    pub universe: Universe,
    pub universe_operators: Vec<String>,
    pub found: Vec<ClassJson>,
    pub exhaustive: bool,
}

impl From<&ExtensionReport> for ExtensionJson {
    fn from(r: &ExtensionReport) -> Self {
        Self {
            input: ClassSetJson::from(&r.input),
            universe: r.universe,
            universe_operators: r.universe_operators.iter().map(|p| p.to_string()).collect(),
            found: r.found.iter().map(ClassJson::from).collect(),
            exhaustive: r.exhaustive,
        }
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct UnextendibleJson {
    pub complete: ClassSetJson,
    pub chosen: Vec<usize>,
    pub extra_class: ClassJson,
    pub classes: ClassSetJson,
    /// Extension search over the operators the set leaves uncovered; empty.
    pub extension: ExtensionJson,
}

impl UnextendibleJson {
    fn new(u: &UnextendibleSet) -> Result<Self> {
        Ok(Self {
            complete: ClassSetJson::from(&u.complete),
            chosen: u.chosen.clone(),
            extra_class: ClassJson::from(&u.extra_class),
            classes: ClassSetJson::from(&u.classes),
            extension: ExtensionJson::from(&extendibility_check(&u.classes)?),
        })
    }
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
pub struct EurEntry {
    pub extra: ClassJson,
    pub report: EurReport,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum Payload {
    ClassSet { set: ClassSetJson },
    Extension { report: ExtensionJson },
    Unextendible { set: UnextendibleJson },
    UnextendibleList { sets: Vec<UnextendibleJson> },
    Bases { bases: Vec<BasisJson>, max_deviation: f64 },
    Strong { source: ClassSetJson, outcome: SearchOutcome },
    Eur { classes: ClassSetJson, entries: Vec<EurEntry>, random_samples: usize, random_min_average: f64 },
    Ks { first: ClassSetJson, second: ClassSetJson, report: KsReport },
    Census { complete: ClassSetJson, reports: Vec<CensusReport> },
    Conjecture { report: ConjectureReport },
    FourSet { complete: ClassSetJson, report: FourSetReport },
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub schema_version: String,
    pub command: String,
    pub config: Config,
    pub payload: Payload,
    pub verified: bool,
}

#[derive(Clone, Debug, PartialEq, Default)]
pub struct CheckReport {
    pub problems: Vec<String>,
}

impl CheckReport {
    pub fn verified(&self) -> bool {
        self.problems.is_empty()
    }

    fn fail(&mut self, msg: impl Into<String>) {
        self.problems.push(msg.into());
    }
}

impl Certificate {
    /// Assembles a certificate and marks it verified if the checker agrees.
    fn seal(command: &str, config: Config, payload: Payload) -> Self {
        let mut cert =
            Self { schema_version: SCHEMA_VERSION.into(), command: command.into(), config, payload, verified: false };
        cert.verified = check_claims(&cert).verified();
        cert
    }

    /// Pretty JSON with a trailing newline; byte-stable for equal inputs.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificates serialize");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cert: Self = serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))?;
        if cert.schema_version != SCHEMA_VERSION {
            return Err(Error::Malformed(format!("unsupported schema_version {:?}", cert.schema_version)));
        }
        Ok(cert)
    }
}

pub fn complete_set_certificate(n: usize) -> Result<Certificate> {
    let set = canonical_complete_set(n)?;
    Ok(Certificate::seal(
        "complete-set",
        Config { n: Some(n), ..Default::default() },
        Payload::ClassSet { set: ClassSetJson::from(&set) },
    ))
}

/// A named or loaded class set, re-emitted as a certificate.
pub fn class_set_certificate(set: &ClassSet, source: &str) -> Certificate {
    Certificate::seal(
        "class-set",
        Config { n: Some(set.n()), source: Some(source.into()), ..Default::default() },
        Payload::ClassSet { set: ClassSetJson::from(set) },
    )
}

pub fn extension_certificate(set: &ClassSet, source: &str) -> Result<Certificate> {
    let report = extendibility_check(set)?;
    Ok(Certificate::seal(
        "extend-check",
        Config { n: Some(set.n()), source: Some(source.into()), ..Default::default() },
        Payload::Extension { report: ExtensionJson::from(&report) },
    ))
}

fn unextendible_dims(n: usize) -> Result<ClassSet> {
    if !(2..=3).contains(&n) {
        return Err(Error::Unsupported { n, operation: "find-unextendible" });
    }
    canonical_complete_set(n)
}

pub fn unextendible_certificate(n: usize, chosen: &[usize]) -> Result<Certificate> {
    let complete = unextendible_dims(n)?;
    let set = build_unextendible_set(&complete, chosen)?;
    Ok(Certificate::seal(
        "find-unextendible",
        Config { n: Some(n), chosen: Some(chosen.to_vec()), ..Default::default() },
        Payload::Unextendible { set: UnextendibleJson::new(&set)? },
    ))
}

/// Every choice of `d/2 + 1` classes from the canonical complete set.
pub fn unextendible_all_certificate(n: usize) -> Result<Certificate> {
    let complete = unextendible_dims(n)?;
    let sets = combinations(complete.len(), complete.dimension() / 2 + 1)
        .iter()
        .map(|c| UnextendibleJson::new(&build_unextendible_set(&complete, c)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(Certificate::seal(
        "find-unextendible",
        Config { n: Some(n), all: Some(true), ..Default::default() },
        Payload::UnextendibleList { sets },
    ))
}

fn max_pair_deviation(bases: &[mub::MubBasis]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for (i, a) in bases.iter().enumerate() {
        for b in &bases[i + 1..] {
            worst = worst.max(mub::unbiasedness_deviation(a, b)?);
        }
    }
    Ok(worst)
}

pub fn bases_certificate(set: &ClassSet, source: &str) -> Result<Certificate> {
    let bases = eigenbases(set)?;
    Ok(Certificate::seal(
        "bases",
        Config { n: Some(set.n()), source: Some(source.into()), tolerance: Some(mub::TOLERANCE), ..Default::default() },
        Payload::Bases { max_deviation: max_pair_deviation(&bases)?, bases: bases.iter().map(BasisJson::from).collect() },
    ))
}

pub fn strong_certificate(set: &ClassSet, source: &str, search: &SearchConfig) -> Result<Certificate> {
    let outcome = strong_unext_search(&eigenbases(set)?, search)?;
    Ok(Certificate::seal(
        "strong",
        Config {
            n: Some(set.n()),
            source: Some(source.into()),
            seed: Some(search.seed),
            starts: Some(search.starts),
            f_tol: Some(search.f_tol),
            max_iter: Some(search.max_iter),
            ..Default::default()
        },
        Payload::Strong { source: ClassSetJson::from(set), outcome },
    ))
}

/// Classes inside the union of a two-qubit triple taking one operator from
/// each of its classes.
pub fn transversal_classes(triple: &ClassSet) -> Result<Vec<CommutingClass>> {
    Ok(extra_classes_within_union(triple)?.found.into_iter().filter(|c| check_transversal(triple, c).is_ok()).collect())
}

pub fn eur_certificate(triple: &ClassSet, source: &str, seed: u64) -> Result<Certificate> {
    let extras = transversal_classes(triple)?;
    if extras.is_empty() {
        return Err(Error::InvalidExtraClass("no class takes one operator from each input class".into()));
    }
    let entries = extras
        .iter()
        .map(|e| Ok(EurEntry { extra: ClassJson::from(e), report: eur_check(triple, e)? }))
        .collect::<Result<Vec<_>>>()?;
    let random_min_average = eur_random_min(&eigenbases(triple)?, EUR_RANDOM_SAMPLES, seed)?;
    Ok(Certificate::seal(
        "eur",
        Config {
            n: Some(2),
            source: Some(source.into()),
            seed: Some(seed),
            samples: Some(EUR_RANDOM_SAMPLES),
            tolerance: Some(mub::TOLERANCE),
            ..Default::default()
        },
        Payload::Eur { classes: ClassSetJson::from(triple), entries, random_samples: EUR_RANDOM_SAMPLES, random_min_average },
    ))
}

pub fn ks_certificate(triple: &ClassSet, source: &str) -> Result<Certificate> {
    let ctx = ks_alternate_partition(triple)?;
    let report = ks_sign_verify(&ctx)?;
    Ok(Certificate::seal(
        "ks",
        Config { n: Some(2), source: Some(source.into()), ..Default::default() },
        Payload::Ks { first: ClassSetJson::from(&ctx.first), second: ClassSetJson::from(&ctx.second), report },
    ))
}

pub fn census_certificate(ks: &[usize]) -> Result<Certificate> {
    let complete = canonical_complete_set(3)?;
    let reports = ks.iter().map(|&k| theorem4_census(&complete, k)).collect::<Result<Vec<_>>>()?;
    Ok(Certificate::seal(
        "census",
        Config { n: Some(3), k: Some(ks.to_vec()), ..Default::default() },
        Payload::Census { complete: ClassSetJson::from(&complete), reports },
    ))
}

pub fn conjecture_certificate(n: usize, budget: usize, seed: u64) -> Result<Certificate> {
    let report = conjecture_scan(n, budget, seed)?;
    Ok(Certificate::seal(
        "conjecture",
        Config { n: Some(n), budget: Some(budget), seed: Some(seed), ..Default::default() },
        Payload::Conjecture { report },
    ))
}

pub fn four_set_certificate(mode: FourSetMode) -> Result<Certificate> {
    let complete = canonical_complete_set(2)?;
    let report = four_set_report(&complete, mode)?;
    Ok(Certificate::seal(
        "four-set",
        Config { n: Some(2), mode: Some(mode), ..Default::default() },
        Payload::FourSet { complete: ClassSetJson::from(&complete), report },
    ))
}

/// The class set a certificate is about, for use as the input of another command.
pub fn source_set(cert: &Certificate) -> Result<ClassSet> {
    let json = match &cert.payload {
        Payload::ClassSet { set } => set,
        Payload::Unextendible { set } => &set.classes,
        Payload::Strong { source, .. } => source,
        Payload::Eur { classes, .. } => classes,
        Payload::Ks { first, .. } => first,
        _ => return Err(Error::Malformed(format!("a {} certificate does not carry a class set", cert.command))),
    };
    json.rebuild()
}

/// Paths at which two JSON trees differ.
fn diff_values(path: &str, a: &Value, b: &Value, out: &mut Vec<String>) {
    if out.len() >= MAX_DIFFS {
        return;
    }
    match (a, b) {
        (Value::Object(x), Value::Object(y)) => {
            for (k, v) in x {
                match y.get(k) {
                    Some(w) => diff_values(&format!("{path}.{k}"), v, w, out),
                    None => out.push(format!("{path}.{k}: unexpected field")),
                }
            }
            for k in y.keys().filter(|k| !x.contains_key(*k)) {
                out.push(format!("{path}.{k}: missing"));
            }
        }
        (Value::Array(x), Value::Array(y)) if x.len() == y.len() => {
            for (i, (v, w)) in x.iter().zip(y).enumerate() {
                diff_values(&format!("{path}[{i}]"), v, w, out);
            }
        }
        _ if a == b => {}
        _ => out.push(format!("{path}: certificate has {a}, recomputed {b}")),
    }
}

fn compare<T: Serialize>(report: &mut CheckReport, path: &str, stored: &T, recomputed: &T) {
    let a = serde_json::to_value(stored).expect("serializable");
    let b = serde_json::to_value(recomputed).expect("serializable");
    let mut diffs = Vec::new();
    diff_values(path, &a, &b, &mut diffs);
    report.problems.extend(diffs);
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= FLOAT_TOLERANCE + 1e-9 * a.abs().max(b.abs())
}

fn close_slices(a: &[f64], b: &[f64]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| close(*x, *y))
}

/// Re-derives every claim of a certificate, ignoring its `verified` flag.
pub fn check_claims(cert: &Certificate) -> CheckReport {
    let mut report = CheckReport::default();
    if let Err(e) = check_payload(cert, &mut report) {
        report.fail(format!("re-derivation failed: {e}"));
    }
    report
}

/// Full check of a certificate file: the claims must re-derive and the
/// certificate must say so.
pub fn check_certificate(cert: &Certificate) -> CheckReport {
    let mut report = check_claims(cert);
    if !cert.verified {
        report.fail("certificate is not marked verified");
    }
    report
}

fn check_payload(cert: &Certificate, report: &mut CheckReport) -> Result<()> {
    match &cert.payload {
        Payload::ClassSet { set } => {
            let rebuilt = set.rebuild()?;
            compare(report, "payload.set", set, &ClassSetJson::from(&rebuilt));
            if cert.command == "complete-set" {
                let canonical = canonical_complete_set(rebuilt.n())?;
                if !rebuilt.is_complete() {
                    report.fail("payload.set: not a complete set");
                }
                compare(report, "payload.set", set, &ClassSetJson::from(&canonical));
            }
        }
        Payload::Extension { report: stored } => {
            let input = stored.input.rebuild()?;
            let recomputed = match stored.universe {
                Universe::WithinUnion => extra_classes_within_union(&input)?,
                Universe::RemainingOperators => extendibility_check(&input)?,
            };
            compare(report, "payload.report", stored, &ExtensionJson::from(&recomputed));
        }
        Payload::Unextendible { set } => check_unextendible(report, "payload.set", set)?,
        Payload::UnextendibleList { sets } => {
            for (i, s) in sets.iter().enumerate() {
                check_unextendible(report, &format!("payload.sets[{i}]"), s)?;
            }
            if cert.config.all == Some(true) {
                let n = cert.config.n.ok_or_else(|| Error::Malformed("config.n missing".into()))?;
                let complete = unextendible_dims(n)?;
                let expected = combinations(complete.len(), complete.dimension() / 2 + 1);
                let listed: Vec<Vec<usize>> = sets.iter().map(|s| s.chosen.clone()).collect();
                if listed != expected {
                    report.fail("payload.sets: does not list every choice exactly once");
                }
            }
        }
        Payload::Bases { bases, max_deviation } => {
            let mut rebuilt = Vec::new();
            for (i, b) in bases.iter().enumerate() {
                let class = b.class.rebuild()?;
                let fresh = mub::eigenbasis(&class)?;
                let fresh_json = BasisJson::from(&fresh);
                let same = fresh_json.vectors.len() == b.vectors.len()
                    && fresh_json.vectors.iter().zip(&b.vectors).all(|(x, y)| {
                        x.label == y.label && close_slices(&x.re, &y.re) && close_slices(&x.im, &y.im)
                    });
                if !same {
                    report.fail(format!("payload.bases[{i}]: vectors differ from the recomputed eigenbasis"));
                }
                compare(report, &format!("payload.bases[{i}].class"), &b.class, &fresh_json.class);
                rebuilt.push(fresh);
            }
            let dev = max_pair_deviation(&rebuilt)?;
            if !close(dev, *max_deviation) {
                report.fail(format!("payload.max_deviation: certificate has {max_deviation}, recomputed {dev}"));
            }
            if dev >= mub::TOLERANCE {
                report.fail(format!("bases are not mutually unbiased: deviation {dev:e}"));
            }
        }
        Payload::Strong { source, outcome } => {
            let set = source.rebuild()?;
            compare(report, "payload.source", source, &ClassSetJson::from(&set));
            let bases = eigenbases(&set)?;
            let search = SearchConfig {
                starts: outcome.starts,
                seed: outcome.seed,
                f_tol: outcome.f_tol,
                max_iter: outcome.max_iter,
            };
            let echoed = (cert.config.starts, cert.config.seed, cert.config.f_tol, cert.config.max_iter);
            if echoed != (Some(search.starts), Some(search.seed), Some(search.f_tol), Some(search.max_iter)) {
                report.fail("config: search parameters do not match the outcome");
            }
            let at_best = residual(&outcome.best_vector, &bases)?;
            if !close(at_best, outcome.min_residual) {
                report.fail(format!(
                    "payload.outcome.min_residual: certificate has {}, residual of best_vector is {at_best}",
                    outcome.min_residual
                ));
            }
            let rerun = strong_unext_search(&bases, &search)?;
            if !close(rerun.min_residual, outcome.min_residual)
                || rerun.is_witness() != outcome.is_witness()
                || rerun.is_floor() != outcome.is_floor()
            {
                report.fail(format!(
                    "payload.outcome.min_residual: certificate has {}, re-run gives {}",
                    outcome.min_residual, rerun.min_residual
                ));
            }
            if rerun.converged_starts != outcome.converged_starts {
                report.fail(format!(
                    "payload.outcome.converged_starts: certificate has {}, re-run gives {}",
                    outcome.converged_starts, rerun.converged_starts
                ));
            }
        }
        Payload::Eur { classes, entries, random_samples, random_min_average } => {
            let triple = classes.rebuild()?;
            compare(report, "payload.classes", classes, &ClassSetJson::from(&triple));
            let extras: Vec<ClassJson> = transversal_classes(&triple)?.iter().map(ClassJson::from).collect();
            let listed: Vec<ClassJson> = entries.iter().map(|e| e.extra.clone()).collect();
            compare(report, "payload.entries[].extra", &listed, &extras);
            for (i, entry) in entries.iter().enumerate() {
                let fresh = eur_check(&triple, &entry.extra.rebuild()?)?;
                let s = &entry.report;
                let same = close(s.bound, fresh.bound)
                    && s.saturated == fresh.saturated
                    && s.each_entropy_one == fresh.each_entropy_one
                    && s.states.len() == fresh.states.len()
                    && s.states.iter().zip(&fresh.states).all(|(a, b)| {
                        a.label == b.label && close(a.average, b.average) && close_slices(&a.entropies, &b.entropies)
                    });
                if !same {
                    report.fail(format!("payload.entries[{i}].report: differs from the recomputed report"));
                }
                if !fresh.saturated || !fresh.each_entropy_one {
                    report.fail(format!("payload.entries[{i}]: eigenstates do not saturate the bound"));
                }
            }
            let seed = cert.config.seed.ok_or_else(|| Error::Malformed("config.seed missing".into()))?;
            let fresh_min = eur_random_min(&eigenbases(&triple)?, *random_samples, seed)?;
            if !close(fresh_min, *random_min_average) {
                report.fail(format!(
                    "payload.random_min_average: certificate has {random_min_average}, recomputed {fresh_min}"
                ));
            }
            if fresh_min < analysis::eur_bound(3, 4) - 1e-9 {
                report.fail("a random state violates the entropy bound");
            }
        }
        Payload::Ks { first, second, report: stored } => {
            let triple = first.rebuild()?;
            let ctx = ks_alternate_partition(&triple)?;
            compare(report, "payload.first", first, &ClassSetJson::from(&ctx.first));
            compare(report, "payload.second", second, &ClassSetJson::from(&ctx.second));
            let fresh = ks_sign_verify(&ctx)?;
            compare(report, "payload.report", stored, &fresh);
            if !(fresh.odd_parity && fresh.each_operator_twice && fresh.total_product_identity && fresh.order_independent)
            {
                report.fail("context structure does not give an odd sign parity");
            }
        }
        Payload::Census { complete, reports } => {
            let set = complete.rebuild()?;
            compare(report, "payload.complete", complete, &ClassSetJson::from(&set));
            let fresh = reports.iter().map(|r| theorem4_census(&set, r.k)).collect::<Result<Vec<_>>>()?;
            compare(report, "payload.reports", reports, &fresh);
        }
        Payload::Conjecture { report: stored } => {
            let fresh = conjecture_scan(stored.n, stored.budget, stored.seed)?;
            compare(report, "payload.report", stored, &fresh);
        }
        Payload::FourSet { complete, report: stored } => {
            let set = complete.rebuild()?;
            compare(report, "payload.complete", complete, &ClassSetJson::from(&set));
            let fresh = four_set_report(&set, stored.mode)?;
            compare(report, "payload.report", stored, &fresh);
            if !fresh.holds {
                report.fail("some pair extends to an unextendible set of four");
            }
        }
    }
    Ok(())
}

fn check_unextendible(report: &mut CheckReport, path: &str, stored: &UnextendibleJson) -> Result<()> {
    let complete = stored.complete.rebuild()?;
    let fresh = UnextendibleJson::new(&build_unextendible_set(&complete, &stored.chosen)?)?;
    compare(report, path, stored, &fresh);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtin::weak_d4_triple;

    #[test]
    fn round_trip_and_tamper() {
        let cert = complete_set_certificate(2).unwrap();
        assert!(cert.verified);
        let text = cert.to_json();
        let back = Certificate::from_json(&text).unwrap();
        assert_eq!(back, cert);
        assert!(check_certificate(&back).verified());
        let tampered = Certificate::from_json(&text.replacen("\"ZZ\"", "\"XX\"", 1)).unwrap();
        assert!(!check_certificate(&tampered).verified());
        assert!(Certificate::from_json(&text[..text.len() / 2]).is_err());
        assert!(Certificate::from_json(&text.replace("\"schema_version\": \"1\"", "\"schema_version\": \"2\"")).is_err());
    }

    #[test]
    fn diff_report_names_paths() {
        let cert = ks_certificate(&weak_d4_triple(), "paper-d4-weak").unwrap();
        assert!(cert.verified);
        let mut bad = cert.clone();
        if let Payload::Ks { report, .. } = &mut bad.payload {
            report.minus_identity = 3;
        }
        let check = check_certificate(&bad);
        assert!(check.problems.iter().any(|p| p.contains("payload.report.minus_identity")), "{:?}", check.problems);
    }

    #[test]
    fn unverified_flag_is_refuted() {
        let mut cert = four_set_certificate(FourSetMode::ViaUniqueness).unwrap();
        assert!(cert.verified);
        cert.verified = false;
        assert!(!check_certificate(&cert).verified());
        assert!(check_claims(&cert).verified());
    }
}
