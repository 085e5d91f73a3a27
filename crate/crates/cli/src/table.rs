//! Human-readable summaries of certificates.

use std::fmt::Write;

use mubforge_core::certificate::{Certificate, Payload};
use mubforge_core::class::{ClassJson, ClassSetJson};

fn class_line(out: &mut String, label: &str, c: &ClassJson) {
    let _ = writeln!(out, "  {label:<6} {}", c.elements.join(" "));
}

fn class_set(out: &mut String, set: &ClassSetJson) {
    for (i, c) in set.classes.iter().enumerate() {
        class_line(out, &format!("[{i}]"), c);
    }
}

pub fn render(cert: &Certificate) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} (verified: {})", cert.command, cert.verified);
    match &cert.payload {
        Payload::ClassSet { set } => {
            let _ = writeln!(out, "n = {}, {} classes, complete: {}", set.n, set.classes.len(), set.complete);
            class_set(&mut out, set);
        }
        Payload::Extension { report } => {
            let _ = writeln!(out, "input:");
            class_set(&mut out, &report.input);
            let _ = writeln!(out, "{} operators available, {} classes found", report.universe_operators.len(), report.found.len());
            for c in &report.found {
                class_line(&mut out, "+", c);
            }
        }
        Payload::Unextendible { set } => unextendible(&mut out, set),
        Payload::UnextendibleList { sets } => {
            let _ = writeln!(out, "{} choices", sets.len());
            for s in sets {
                let _ = writeln!(
                    out,
                    "  chosen {:?} -> extra {}  (extensions: {})",
                    s.chosen,
                    s.extra_class.elements.join(" "),
                    s.extension.found.len()
                );
            }
        }
        Payload::Bases { bases, max_deviation } => {
            let _ = writeln!(out, "{} bases, max pairwise deviation {max_deviation:.3e}", bases.len());
            for b in bases {
                class_line(&mut out, "basis", &b.class);
            }
        }
        Payload::Strong { source, outcome } => {
            class_set(&mut out, source);
            let _ = writeln!(
                out,
                "min residual {:.6e} (start {} of {}, seed {}, {} starts converged)",
                outcome.min_residual, outcome.best_start, outcome.starts, outcome.seed, outcome.converged_starts
            );
            let verdict = if outcome.is_witness() {
                "unbiased vector found"
            } else if outcome.is_floor() {
                "no unbiased vector found; residual floor above 1e-3"
            } else {
                "inconclusive"
            };
            let _ = writeln!(out, "{verdict}");
        }
        Payload::Eur { classes, entries, random_samples, random_min_average } => {
            class_set(&mut out, classes);
            for e in entries {
                let _ = writeln!(out, "extra {}  bound {:.12}", e.extra.elements.join(" "), e.report.bound);
                for s in &e.report.states {
                    let hs: Vec<String> = s.entropies.iter().map(|h| format!("{h:.12}")).collect();
                    let _ = writeln!(out, "  state {}  H2 = [{}]  average {:.12}", s.label, hs.join(", "), s.average);
                }
            }
            let _ = writeln!(out, "min average over {random_samples} random states: {random_min_average:.6}");
        }
        Payload::Ks { first, second, report } => {
            let _ = writeln!(out, "first partition:");
            class_set(&mut out, first);
            let _ = writeln!(out, "second partition:");
            class_set(&mut out, second);
            for c in &report.contexts {
                let _ = writeln!(out, "  {:<12} {}I", c.operators.join(" "), if c.sign < 0 { "-" } else { "+" });
            }
            let _ = writeln!(out, "-I contexts: {} (odd parity: {})", report.minus_identity, report.odd_parity);
        }
        Payload::Census { reports, .. } => {
            let _ = writeln!(out, "{:>2} {:>8} {:>9} {:>12}  histogram", "k", "subsets", "max extra", "max spanning");
            for r in reports {
                let _ = writeln!(
                    out,
                    "{:>2} {:>8} {:>9} {:>12}  {:?}",
                    r.k, r.subsets, r.max_extra, r.max_spanning, r.histogram
                );
            }
        }
        Payload::Conjecture { report } => {
            let _ = writeln!(
                out,
                "n = {}, {} subsets examined (exhaustive: {}, seed {})",
                report.n, report.subsets_examined, report.exhaustive, report.seed
            );
            let _ = writeln!(out, "extra-class histogram: {:?}", report.extra_class_histogram);
            let _ = writeln!(
                out,
                "single extra class: {} unextendible, {} extendible (evidence only)",
                report.unextendible_results, report.extendible_results
            );
        }
        Payload::FourSet { report, .. } => {
            for p in &report.pairs {
                let _ = writeln!(
                    out,
                    "  pair {:?}: {} candidates, {} disjoint pairs, {} unextendible",
                    p.pair, p.candidates, p.disjoint_pairs, p.weakly_unextendible
                );
            }
            let _ = writeln!(out, "holds: {}", report.holds);
        }
    }
    out
}

fn unextendible(out: &mut String, set: &mubforge_core::certificate::UnextendibleJson) {
    let _ = writeln!(out, "chosen {:?}, extra class {}", set.chosen, set.extra_class.elements.join(" "));
    class_set(out, &set.classes);
    let _ = writeln!(out, "classes formable from the remaining operators: {}", set.extension.found.len());
}
