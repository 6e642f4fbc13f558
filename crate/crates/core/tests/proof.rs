use num_bigint::BigInt;
use num_rational::BigRational;

use holorec::arith::UniPoly;
use holorec::corpus::builtin_corpus;
use holorec::holonomic::Recurrence;
use holorec::ore::parse_recurrence;
use holorec::proof::{
    guess_recurrence, prove_gf, render_report, verify_certificate, ProofCertificate, ProofError, ProveOptions,
    ReportFormat, Verdict, VerifyError,
};
use holorec::sequence::{SequenceTerms, TermOrigin};

fn perturbed(rec: &Recurrence, i: usize) -> Option<Recurrence> {
    let mut rows = rec.coeffs().to_vec();
    let one = UniPoly::new(rows[i].variable(), vec![BigRational::from_integer(BigInt::from(1))]);
    rows[i] = &rows[i] + &one;
    Recurrence::new(rows).ok()
}

#[test]
fn perturbing_any_coefficient_breaks_the_proof() {
    for entry in builtin_corpus() {
        let Some(rec) = entry.recurrence() else { continue };
        for i in 0..=rec.order() {
            let Some(bad) = perturbed(&rec, i) else { continue };
            match prove_gf(&entry.gf_text, Some(&bad), &ProveOptions::default()) {
                Ok(cert) => assert_ne!(cert.verdict, Verdict::Proved, "{} coefficient {i}", entry.label()),
                Err(ProofError::Infeasible { .. }) => {}
                Err(e) => panic!("{}: {e}", entry.label()),
            }
        }
    }
}

#[test]
fn mis_indexed_conjecture_fails_initial_checks() {
    // holds only from n = 3 on, so b(0) is a witness
    let rec = parse_recurrence("2*n*a(n) - (7*n-12)*a(n-1) - (4*n-6)*a(n-2) = 0").unwrap();
    let cert = prove_gf("(1-sqrt(1-4*x))/(3-sqrt(1-4*x))", Some(&rec), &ProveOptions::default()).unwrap();
    assert_eq!(cert.verdict, Verdict::InitialCheckFailed);
    assert!(cert.remainder.is_zero());
    assert!(cert.annotations.iter().any(|a| a.starts_with("b(0) = ")));
    assert!(cert.invariant_holds());
}

#[test]
fn certificates_survive_json_and_reverify() {
    let cert = prove_gf("(1-x+x^2-sqrt(1-2*x-x^2-2*x^3+x^4))/(2*x^2)", None, &ProveOptions::default()).unwrap();
    assert_eq!(cert.verdict, Verdict::Proved);
    let json = serde_json::to_string(&cert).unwrap();
    let back: ProofCertificate = serde_json::from_str(&json).unwrap();
    assert_eq!(back, cert);
    verify_certificate(&back, &back.input_gf).unwrap();
}

#[test]
fn tampered_certificates_are_rejected() {
    let gf = "(1-sqrt(1-4*x))/(2*x)";
    let rec = parse_recurrence("(n+1)*a(n) - (4*n-2)*a(n-1) = 0").unwrap();
    let cert = prove_gf(gf, Some(&rec), &ProveOptions::default()).unwrap();
    verify_certificate(&cert, gf).unwrap();

    let mut wrong_quotient = cert.clone();
    wrong_quotient.quotient = holorec::ore::parse_operator("n+2").unwrap();
    assert_eq!(verify_certificate(&wrong_quotient, gf), Err(VerifyError::Factorization));

    let mut short = cert.clone();
    short.initial_checks.clear();
    short.checked_through = -1;
    assert_eq!(verify_certificate(&short, gf), Err(VerifyError::Invariant));

    assert!(verify_certificate(&cert, "1/(1-x)").is_err());
}

#[test]
fn guessing_needs_enough_terms() {
    let powers: Vec<i64> = (0..25).map(|n| 1 << n).collect();
    let doubling = parse_recurrence("a(n) - 2*a(n-1) = 0").unwrap();
    let enough = SequenceTerms::from_ints(0, &powers, TermOrigin::User);
    assert_eq!(guess_recurrence(&enough, 1, 1), Ok(Some(doubling)));
    let short = SequenceTerms::from_ints(0, &powers[..21], TermOrigin::User);
    assert_eq!(guess_recurrence(&short, 1, 1), Err(ProofError::InsufficientTerms { needed: 25, available: 21 }));

    let mut factorial = BigInt::from(1);
    let values: Vec<BigRational> = (1..=30)
        .map(|n| {
            factorial *= n;
            BigRational::from_integer(factorial.clone())
        })
        .collect();
    let terms = SequenceTerms::new(1, values, TermOrigin::User);
    assert_eq!(guess_recurrence(&terms, 1, 0), Ok(None));
    assert_eq!(guess_recurrence(&terms, 1, 1), Ok(Some(parse_recurrence("a(n) - n*a(n-1) = 0").unwrap())));
}

#[test]
fn reports_cover_every_certificate() {
    let certs: Vec<ProofCertificate> = ["1/(1-2*x)", "x/(1-x-x^2)"]
        .iter()
        .map(|gf| prove_gf(gf, None, &ProveOptions::default()).unwrap())
        .collect();
    let text = render_report(&certs, ReportFormat::Text);
    assert!(text.contains("Theorem 2.") && text.ends_with("2 theorem(s), 2 proved\n"));
    let md = render_report(&certs, ReportFormat::Markdown);
    assert_eq!(md.matches("## Theorem").count(), 2);
    let json: Vec<ProofCertificate> = serde_json::from_str(&render_report(&certs, ReportFormat::Json)).unwrap();
    assert_eq!(json, certs);
}

#[test]
fn no_recurrence_within_bounds() {
    let options = ProveOptions { max_order: 1, max_degree: 0, ..Default::default() };
    assert!(matches!(
        prove_gf("sqrt(1-4*x)", None, &options),
        Err(ProofError::NoRecurrenceFound { max_order: 1, max_degree: 0 })
    ));
}
