//! Acceptance gate: one PASS/FAIL line per criterion, exact comparisons.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use holorec::algebraic::annihilating_polynomial;
use holorec::arith::{BivarPoly, UniPoly, Var};
use holorec::batch::{run_batch, BatchOptions};
use holorec::corpus::builtin_corpus;
use holorec::expr::{eval_series, parse};
use holorec::holonomic::Recurrence;
use holorec::ore::{ore_divrem, ore_mul, ore_to_recurrence, parse_operator, parse_recurrence, ShiftOperator};
use holorec::proof::{
    derive_recurrence, guess_recurrence, prove_equivalence, verify_certificate, ProveOptions, Verdict,
};
use holorec::sequence::{SequenceTerms, TermOrigin};

type Check = fn() -> Result<(), String>;

const FINE: &str = "(1-sqrt(1-4*x))/(3-sqrt(1-4*x))";
const GEN_CATALAN: &str = "(1-x+x^2-sqrt(1-2*x-x^2-2*x^3+x^4))/(2*x^2)";
const CATALAN: &str = "(1-sqrt(1-4*x))/(2*x)";

fn rat(v: &BigInt) -> BigRational {
    BigRational::from_integer(v.clone())
}

fn catalan(count: usize) -> Vec<BigInt> {
    // C(n) = binom(2n, n) / (n + 1), computed by a running product
    let mut out = Vec::with_capacity(count);
    let mut binom = BigInt::one();
    for n in 0..count as u64 {
        if n > 0 {
            binom = binom * (2 * n) * (2 * n - 1) / (n * n);
        }
        out.push(&binom / (n + 1));
    }
    out
}

fn fine(count: usize) -> Vec<BigInt> {
    // Fine numbers F = 1, 0, 1, 2, 6, ... from C(n) = 2 F(n) + F(n-1);
    // the generating function has a zero constant term, so a(n) = F(n-1)
    let c = catalan(count);
    let mut f = vec![BigInt::one()];
    for n in 1..count - 1 {
        let next = (&c[n] - &f[n - 1]) / 2;
        f.push(next);
    }
    f.insert(0, BigInt::zero());
    f
}

fn generalized_catalan(count: usize) -> Vec<BigInt> {
    // y = 1 + x y - x^2 y + x^2 y^2
    let mut a: Vec<BigInt> = Vec::with_capacity(count);
    for n in 0..count {
        let mut v = if n == 0 { BigInt::one() } else { a[n - 1].clone() };
        if n >= 2 {
            v -= &a[n - 2];
            for k in 0..=n - 2 {
                v += &a[k] * &a[n - 2 - k];
            }
        }
        a.push(v);
    }
    a
}

fn annihilates(rec: &Recurrence, values: &[BigInt]) -> bool {
    let terms: Vec<BigRational> = values.iter().map(rat).collect();
    rec.annihilates(&terms)
}

fn same_up_to_normalization(p: &BivarPoly, expected: &BivarPoly) -> bool {
    p.normalized() == expected.normalized()
}

fn criterion_1() -> Result<(), String> {
    let a = parse_operator("N-1").unwrap();
    let b = parse_operator("N^2-N-1").unwrap();
    let product = ore_mul(&a, &b);
    if product != parse_operator("N^3-2*N^2+1").unwrap() {
        return Err(format!("product was {product}"));
    }
    let (q, r) = ore_divrem(&product, &b).map_err(|e| e.to_string())?;
    if q != a || !r.is_zero() {
        return Err(format!("division gave Q = {q}, R = {r}"));
    }
    Ok(())
}

fn criterion_2() -> Result<(), String> {
    let e = parse(FINE).unwrap();
    let p = annihilating_polynomial(&e).map_err(|e| e.to_string())?;
    let expected = BivarPoly::from_int_rows(&[&[0, 1], &[-1, -2], &[2, 1]]);
    if !same_up_to_normalization(&p, &expected) {
        return Err(format!("P = {p}"));
    }
    let oracle = fine(300);
    let series = eval_series(&e, 299).map_err(|e| e.to_string())?.coefficients(299);
    if series != oracle.iter().map(rat).collect::<Vec<_>>() {
        return Err("series differs from the Fine-number oracle".into());
    }
    let d = derive_recurrence(&e).map_err(|e| e.to_string())?;
    if !annihilates(&d.recurrence, &oracle) {
        return Err(format!("{} fails on the first 300 Fine numbers", d.recurrence));
    }
    Ok(())
}

fn criterion_3() -> Result<(), String> {
    let e = parse(GEN_CATALAN).unwrap();
    let p = annihilating_polynomial(&e).map_err(|e| e.to_string())?;
    let expected = BivarPoly::from_int_rows(&[&[1], &[-1, 1, -1], &[0, 0, 1]]);
    if !same_up_to_normalization(&p, &expected) {
        return Err(format!("P = {p}"));
    }
    let prefix: Vec<BigRational> = [1, 1, 1, 2, 4, 8, 17].iter().map(|&v| rat(&BigInt::from(v))).collect();
    let series = eval_series(&e, 6).map_err(|e| e.to_string())?.coefficients(6);
    if series != prefix {
        return Err("series prefix differs from 1, 1, 1, 2, 4, 8, 17".into());
    }
    let oracle = generalized_catalan(300);
    if oracle[..7].iter().map(rat).collect::<Vec<_>>() != prefix {
        return Err("oracle prefix differs".into());
    }
    let d = derive_recurrence(&e).map_err(|e| e.to_string())?;
    if !annihilates(&d.recurrence, &oracle) {
        return Err(format!("{} fails on 300 terms", d.recurrence));
    }
    Ok(())
}

fn catalan_terms(count: usize) -> SequenceTerms {
    SequenceTerms::new(0, catalan(count).iter().map(rat).collect(), TermOrigin::User)
}

fn criterion_4() -> Result<(), String> {
    let expected = parse_recurrence("(n+1)*a(n) - (4*n-2)*a(n-1) = 0").unwrap();
    let guessed = guess_recurrence(&catalan_terms(40), 1, 1).map_err(|e| e.to_string())?;
    if guessed.as_ref() != Some(&expected) {
        return Err(format!("guessed {guessed:?}"));
    }
    let d = derive_recurrence(&parse(CATALAN).unwrap()).map_err(|e| e.to_string())?;
    let cert = prove_equivalence(&d.recurrence, &expected, &mut catalan_terms(60), &ProveOptions::default())
        .map_err(|e| e.to_string())?;
    if cert.verdict != Verdict::Proved || !cert.remainder.is_zero() {
        return Err(format!("verdict {}, R = {}", cert.verdict, cert.remainder));
    }
    Ok(())
}

fn random_operator(rng: &mut ChaCha8Rng) -> ShiftOperator {
    let order = rng.random_range(0..=4usize);
    let coeffs = (0..=order)
        .map(|_| {
            let degree = rng.random_range(0..=3usize);
            let c = (0..=degree).map(|_| BigRational::from_integer(rng.random_range(-9..=9i64).into())).collect();
            UniPoly::new(Var::N, c)
        })
        .collect();
    ShiftOperator::from_polys(coeffs)
}

fn criterion_5() -> Result<(), String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut pairs = 0;
    while pairs < 200 {
        let a = random_operator(&mut rng);
        let b = random_operator(&mut rng);
        if b.is_zero() {
            continue;
        }
        pairs += 1;
        let (q, r) = ore_divrem(&a, &b).map_err(|e| e.to_string())?;
        if &ore_mul(&q, &b) + &r != a {
            return Err(format!("reconstruction failed for A = {a}, B = {b}"));
        }
        if r.order().is_some_and(|k| k >= b.order().unwrap()) {
            return Err(format!("remainder order too high for A = {a}, B = {b}"));
        }
    }
    Ok(())
}

fn criterion_6() -> Result<(), String> {
    let gf = parse("x/(1-x-x^2)").unwrap();
    let d = derive_recurrence(&gf).map_err(|e| e.to_string())?;
    let wrong = parse_recurrence("a(n) - 3*a(n-1) = 0").unwrap();
    let f = eval_series(&gf, 40).unwrap();
    let mut terms = SequenceTerms::new(0, f.coefficients(40), TermOrigin::Series);
    let cert = prove_equivalence(&d.recurrence, &wrong, &mut terms, &ProveOptions::default()).map_err(|e| e.to_string())?;
    if cert.verdict == Verdict::Proved || cert.remainder.is_zero() {
        return Err(format!("verdict {}, R = {}", cert.verdict, cert.remainder));
    }
    Ok(())
}

fn criterion_7() -> Result<(), String> {
    let certs = run_batch(&builtin_corpus(), &BatchOptions::default()).map_err(|e| e.to_string())?;
    for cert in &certs {
        if cert.verdict != Verdict::Proved {
            return Err(format!("{:?} not proved", cert.id));
        }
        verify_certificate(cert, &cert.input_gf).map_err(|e| format!("{:?}: {e}", cert.id))?;
    }
    Ok(())
}

fn criterion_8() -> Result<(), String> {
    let corpus = builtin_corpus();
    if corpus.len() < 4 {
        return Err(format!("only {} entries", corpus.len()));
    }
    let certs = run_batch(&corpus, &BatchOptions::default()).map_err(|e| e.to_string())?;
    if certs.len() != corpus.len() {
        return Err(format!("{} certificates for {} entries", certs.len(), corpus.len()));
    }
    Ok(())
}

fn criterion_9() -> Result<(), String> {
    let powers: Vec<i64> = (0..30).map(|n| 1i64 << n).collect();
    let mut fib = vec![0i64, 1];
    while fib.len() < 30 {
        fib.push(fib[fib.len() - 1] + fib[fib.len() - 2]);
    }
    let cases = [(powers, "a(n) - 2*a(n-1) = 0"), (fib, "a(n) - a(n-1) - a(n-2) = 0")];
    for (values, expected) in cases {
        let terms = SequenceTerms::from_ints(0, &values, TermOrigin::User);
        let guessed = guess_recurrence(&terms, 2, 1).map_err(|e| e.to_string())?;
        if guessed != Some(parse_recurrence(expected).unwrap()) {
            return Err(format!("expected {expected}, guessed {guessed:?}"));
        }
    }
    Ok(())
}

fn criterion_10() -> Result<(), String> {
    let b = parse_operator("(n+2)*N - (4*n+2)").unwrap();
    let q = parse_operator("(n-50)*N + 1").unwrap();
    let derived = ore_to_recurrence(&ore_mul(&q, &b)).ok_or("zero product")?;
    let conjectured = ore_to_recurrence(&b).ok_or("zero conjecture")?;
    let cert = prove_equivalence(&derived, &conjectured, &mut catalan_terms(80), &ProveOptions::default())
        .map_err(|e| e.to_string())?;
    if cert.checked_through < 52 || !cert.singular_indices.contains(&50) {
        return Err(format!("checked through {}, singular {:?}", cert.checked_through, cert.singular_indices));
    }
    if cert.verdict != Verdict::Proved {
        return Err(format!("verdict {}", cert.verdict));
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 10] = [
        ("ore product identity and division", criterion_1, Duration::from_millis(500)),
        ("A000957 end-to-end", criterion_2, Duration::from_secs(5)),
        ("A004148 end-to-end", criterion_3, Duration::from_secs(5)),
        ("Catalan guess and equivalence proof", criterion_4, Duration::from_secs(5)),
        ("division property on 200 random pairs", criterion_5, Duration::from_secs(30)),
        ("negative control", criterion_6, Duration::from_secs(5)),
        ("certificate re-verification over the corpus", criterion_7, Duration::from_secs(60)),
        ("batch over the builtin corpus", criterion_8, Duration::from_secs(60)),
        ("guesser recovery", criterion_9, Duration::from_secs(1)),
        ("singularity guard", criterion_10, Duration::from_secs(5)),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| {
            if elapsed > *limit {
                Err(format!("took {elapsed:?}, limit {limit:?}"))
            } else {
                Ok(())
            }
        });
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
