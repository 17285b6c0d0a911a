//! Report rendering. All four formats are deterministic: with timing
//! suppressed, the same config yields byte-identical output.

use crate::checks::{QuotientRowOut, VerificationReport};
use crate::config::{OutputFormat, Section};

pub fn render(report: &VerificationReport, format: OutputFormat, section: Section) -> String {
    // The quotient table has its own CSV schema; everything else renders
    // the check records.
    if format == OutputFormat::Csv && section == Section::Quotients {
        return quotient_csv(report.quotient_table.as_deref().unwrap_or(&[]));
    }
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => records_csv(report),
        OutputFormat::Md => markdown(report),
        OutputFormat::Text => text(report),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

/// The fixed quotient-table schema:
/// `n,d,g1,G1_order,ratio_num,ratio_den,large`.
pub fn quotient_csv(rows: &[QuotientRowOut]) -> String {
    let mut out = String::from("n,d,g1,G1_order,ratio_num,ratio_den,large\n");
    for row in rows {
        let num = row.ratio_num.map(|v| v.to_string()).unwrap_or_default();
        let den = row.ratio_den.map(|v| v.to_string()).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            row.n, row.d, row.g1, row.g1_order, num, den, row.large
        ));
    }
    out
}

fn records_csv(report: &VerificationReport) -> String {
    let timing = report.checks.iter().any(|c| c.runtime_ms.is_some());
    let mut out = String::from("name,claim,expected,observed,pass");
    if timing {
        out.push_str(",runtime_ms");
    }
    out.push('\n');
    for c in &report.checks {
        out.push_str(&format!(
            "{},{},{},{},{}",
            csv_escape(&c.name),
            csv_escape(&c.claim),
            csv_escape(&c.expected),
            csv_escape(&c.observed),
            c.pass
        ));
        if timing {
            out.push_str(&format!(",{}", c.runtime_ms.unwrap_or(0)));
        }
        out.push('\n');
    }
    out
}

fn header_lines(report: &VerificationReport) -> String {
    format!(
        "n = {} (p = {}, h = {})\ntower: g2 = {:?}, g3 = {:?}\n",
        report.n, report.p, report.h, report.g2, report.g3
    )
}

fn text(report: &VerificationReport) -> String {
    let mut out = header_lines(report);
    for c in &report.checks {
        let status = if c.pass { "PASS" } else { "FAIL" };
        let timing = c
            .runtime_ms
            .map(|ms| format!(" [{ms} ms]"))
            .unwrap_or_default();
        out.push_str(&format!(
            "{status} {}: {}\n     expected {} | observed {}{timing}\n",
            c.name, c.claim, c.expected, c.observed
        ));
    }
    if let Some(rows) = &report.quotient_table {
        out.push_str("quotient table (d | g1 | |G1| | ratio | large):\n");
        for r in rows {
            let ratio = match (r.ratio_num, r.ratio_den) {
                (Some(a), Some(b)) => format!("{a}/{b}"),
                _ => "-".to_string(),
            };
            out.push_str(&format!(
                "  {:>6} | {:>8} | {:>12} | {:>10} | {}\n",
                r.d, r.g1, r.g1_order, ratio, r.large
            ));
        }
    }
    for s in &report.skipped {
        out.push_str(&format!("skipped {s}\n"));
    }
    out.push_str(&format!(
        "overall: {}\n",
        if report.overall_pass { "PASS" } else { "FAIL" }
    ));
    out
}

fn markdown(report: &VerificationReport) -> String {
    let timing = report.checks.iter().any(|c| c.runtime_ms.is_some());
    let mut out = format!(
        "# Verification report, n = {} (p = {}, h = {})\n\ntower: `g2 = {:?}`, `g3 = {:?}`\n\n",
        report.n, report.p, report.h, report.g2, report.g3
    );
    out.push_str("| check | claim | expected | observed | pass |");
    if timing {
        out.push_str(" ms |");
    }
    out.push('\n');
    out.push_str("|---|---|---|---|---|");
    if timing {
        out.push_str("---|");
    }
    out.push('\n');
    let clean = |s: &str| s.replace('|', "\\|");
    for c in &report.checks {
        out.push_str(&format!(
            "| {} | {} | {} | {} | {} |",
            clean(&c.name),
            clean(&c.claim),
            clean(&c.expected),
            clean(&c.observed),
            if c.pass { "yes" } else { "**no**" }
        ));
        if timing {
            out.push_str(&format!(" {} |", c.runtime_ms.unwrap_or(0)));
        }
        out.push('\n');
    }
    if let Some(rows) = &report.quotient_table {
        out.push_str("\n| n | d | g1 | G1_order | ratio_num | ratio_den | large |\n");
        out.push_str("|---|---|---|---|---|---|---|\n");
        for r in rows {
            let num = r.ratio_num.map(|v| v.to_string()).unwrap_or_default();
            let den = r.ratio_den.map(|v| v.to_string()).unwrap_or_default();
            out.push_str(&format!(
                "| {} | {} | {} | {} | {} | {} | {} |\n",
                r.n, r.d, r.g1, r.g1_order, num, den, r.large
            ));
        }
    }
    if !report.skipped.is_empty() {
        out.push_str("\nskipped:\n");
        for s in &report.skipped {
            out.push_str(&format!("- {s}\n"));
        }
    }
    out.push_str(&format!(
        "\noverall: **{}**\n",
        if report.overall_pass { "PASS" } else { "FAIL" }
    ));
    out
}
