//! Human-readable and machine-readable proof reports.

use std::fmt::Write;

use crate::ore::recurrence_to_ore;

use super::{ProofCertificate, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Markdown,
    Json,
}

impl std::str::FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "markdown" => Ok(ReportFormat::Markdown),
            "json" => Ok(ReportFormat::Json),
            other => Err(format!("unknown format {other:?}")),
        }
    }
}

/// One theorem block per certificate, in the order given.
pub fn render_report(certs: &[ProofCertificate], format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut out = serde_json::to_string_pretty(certs).expect("certificates serialize");
            out.push('\n');
            out
        }
        ReportFormat::Text => render_text(certs),
        ReportFormat::Markdown => render_markdown(certs),
    }
}

fn summary(certs: &[ProofCertificate]) -> String {
    let proved = certs.iter().filter(|c| c.verdict == Verdict::Proved).count();
    format!("{} theorem(s), {} proved", certs.len(), proved)
}

fn subject(cert: &ProofCertificate) -> String {
    let who = match &cert.id {
        Some(id) => format!("{id}: "),
        None => String::new(),
    };
    if cert.input_gf.is_empty() {
        format!("{who}the sequence a(n) given by its terms")
    } else {
        format!("{who}a(n) = [x^n] {}", cert.input_gf)
    }
}

fn statement(cert: &ProofCertificate) -> String {
    let order = cert.conjectured.order();
    let claim = match cert.verdict {
        Verdict::Proved => "satisfies",
        _ => "is conjectured to satisfy",
    };
    format!("{claim} {} for all n >= {order}", cert.conjectured)
}

fn checks_line(cert: &ProofCertificate) -> String {
    if cert.checked_through < 0 {
        return "not performed".into();
    }
    let nonzero: Vec<String> =
        cert.initial_checks.iter().filter(|c| !num_traits::Zero::is_zero(&c.value)).map(|c| format!("b({}) = {}", c.n, c.value)).collect();
    if nonzero.is_empty() {
        format!("b(n) = 0 for n = 0..{}", cert.checked_through)
    } else {
        format!("nonzero: {}", nonzero.join(", "))
    }
}

fn singular_line(cert: &ProofCertificate) -> String {
    if cert.singular_indices.is_empty() {
        "none".into()
    } else {
        cert.singular_indices.iter().map(i64::to_string).collect::<Vec<_>>().join(", ")
    }
}

fn render_text(certs: &[ProofCertificate]) -> String {
    let mut out = String::new();
    writeln!(out, "Recurrence proofs").unwrap();
    writeln!(out, "=================").unwrap();
    for (i, cert) in certs.iter().enumerate() {
        writeln!(out).unwrap();
        writeln!(out, "Theorem {}. {}", i + 1, subject(cert)).unwrap();
        writeln!(out, "  {}", statement(cert)).unwrap();
        if let Some(p) = &cert.algebraic_eq {
            writeln!(out, "  algebraic equation: {p} = 0").unwrap();
        }
        if let Some(ode) = &cert.ode {
            writeln!(out, "  differential equation: {ode}").unwrap();
        }
        writeln!(out, "  derived recurrence: {}", cert.derived).unwrap();
        writeln!(out, "  A = {}", recurrence_to_ore(&cert.derived)).unwrap();
        writeln!(out, "  B = {}", recurrence_to_ore(&cert.conjectured)).unwrap();
        writeln!(out, "  A = Q*B + R with Q = {}, R = {}", cert.quotient, cert.remainder).unwrap();
        writeln!(out, "  singular indices: {}", singular_line(cert)).unwrap();
        writeln!(out, "  initial values: {}", checks_line(cert)).unwrap();
        for note in &cert.annotations {
            writeln!(out, "  note: {note}").unwrap();
        }
        writeln!(out, "  verdict: {}", cert.verdict).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "{}", summary(certs)).unwrap();
    out
}

fn render_markdown(certs: &[ProofCertificate]) -> String {
    let mut out = String::new();
    writeln!(out, "# Recurrence proofs").unwrap();
    for (i, cert) in certs.iter().enumerate() {
        writeln!(out).unwrap();
        writeln!(out, "## Theorem {}", i + 1).unwrap();
        writeln!(out).unwrap();
        writeln!(out, "Let {}. Then a(n) {}.", subject(cert), statement(cert)).unwrap();
        writeln!(out).unwrap();
        if let Some(p) = &cert.algebraic_eq {
            writeln!(out, "- Algebraic equation: `{p} = 0`").unwrap();
        }
        if let Some(ode) = &cert.ode {
            writeln!(out, "- Differential equation: `{ode}`").unwrap();
        }
        writeln!(out, "- Derived recurrence: `{}`", cert.derived).unwrap();
        writeln!(out, "- Division: `A = Q*B + R` with `A = {}`, `B = {}`", recurrence_to_ore(&cert.derived), recurrence_to_ore(&cert.conjectured)).unwrap();
        writeln!(out, "- Quotient: `Q = {}`", cert.quotient).unwrap();
        writeln!(out, "- Remainder: `R = {}`", cert.remainder).unwrap();
        writeln!(out, "- Singular indices: {}", singular_line(cert)).unwrap();
        writeln!(out, "- Initial values: {}", checks_line(cert)).unwrap();
        for note in &cert.annotations {
            writeln!(out, "- Note: {note}").unwrap();
        }
        writeln!(out, "- Verdict: **{}**", cert.verdict).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "---").unwrap();
    writeln!(out).unwrap();
    writeln!(out, "{}", summary(certs)).unwrap();
    out
}
