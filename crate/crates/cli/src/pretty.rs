use std::fmt::Write;

use picpos::{Certificate, Verdict};

use crate::check::CheckReport;

fn rule(widths: &[usize]) -> String {
    let cells: Vec<String> = widths.iter().map(|w| "-".repeat(*w)).collect();
    format!("+-{}-+", cells.join("-+-"))
}

fn row(cells: &[String], widths: &[usize]) -> String {
    let padded: Vec<String> = cells.iter().zip(widths).map(|(c, w)| format!("{c:<w$}")).collect();
    format!("| {} |", padded.join(" | "))
}

/// Table of property, status and justification, one line per verdict.
pub fn verdict_table(verdicts: &[Verdict]) -> String {
    let header = ["property", "status", "justification"].map(String::from);
    let body: Vec<[String; 3]> = verdicts
        .iter()
        .map(|v| {
            let name = match v.k {
                Some(k) => format!("{k}-very ample"),
                None => v.property.to_string(),
            };
            [name, v.status.to_string(), v.justification.to_string()]
        })
        .collect();
    let mut widths = header.clone().map(|h| h.len());
    for cells in &body {
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.chars().count());
        }
    }
    let mut out = String::new();
    let line = rule(&widths);
    let _ = writeln!(out, "{line}\n{}\n{line}", row(&header, &widths));
    for cells in &body {
        let _ = writeln!(out, "{}", row(cells, &widths));
    }
    let _ = writeln!(out, "{line}");
    out
}

/// Transcript, notes and certificate summary of one verdict.
pub fn verdict_details(v: &Verdict) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{v}");
    for ineq in &v.details {
        let _ = writeln!(out, "    {ineq}");
    }
    for note in &v.annotations {
        let _ = writeln!(out, "    note: {note}");
    }
    for f in &v.failed_hypotheses {
        let _ = writeln!(out, "    unmet: {f}");
    }
    match &v.certificate {
        Some(Certificate::Effectivity(c)) => {
            let terms: Vec<String> = c.terms.iter().map(|t| format!("{} ({})", t.coefficient, t.generator)).collect();
            let _ = writeln!(out, "    certificate: {}", terms.join(" + "));
        }
        Some(Certificate::Reduction(t)) => {
            let _ = writeln!(
                out,
                "    reduction: {} quadratic steps to {} ({:?})",
                t.quadratic_steps(),
                t.final_class,
                t.outcome
            );
        }
        None => {}
    }
    out
}

pub fn check_report(report: &CheckReport) -> String {
    let mut out = format!("L = {}\n", report.class);
    out.push_str(&verdict_table(&report.verdicts));
    for v in &report.verdicts {
        out.push_str(&verdict_details(v));
    }
    if let Some(o) = &report.oracle {
        let _ = writeln!(
            out,
            "oracle: N = {}, {} candidates, {} admissible, {} with n >= r, {} meeting C1",
            o.adjoint,
            o.candidates,
            o.admissible.len(),
            o.point_bound_violations,
            o.curve_violations
        );
    }
    out
}
