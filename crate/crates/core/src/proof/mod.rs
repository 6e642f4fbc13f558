//! Derive a recurrence from a generating function, then prove a
//! lower-order conjecture by right division and initial-value checks.

mod certificate;
mod guess;
mod report;

use std::time::Instant;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::algebraic::{annihilating_polynomial, verify_annihilation, AlgebraicError};
use crate::arith::{poly_integer_roots, BivarPoly, UniPoly};
use crate::expr::{eval_series, parse, EvalError, ParseError, RadicalExpr};
use crate::holonomic::{algeq_to_ode, ode_to_recurrence, HolonomicError, LinearODE, Recurrence};
use crate::ore::{ore_apply, ore_divrem, recurrence_to_ore, OreError, ShiftOperator};
use crate::sequence::{SequenceTerms, TermOrigin};

pub use certificate::{verify_certificate, InitialCheck, ProofCertificate, Timings, Verdict, VerifyError};
pub use guess::{guess_recurrence, required_terms, HOLDOUT};
pub use report::{render_report, ReportFormat};

/// Default bound on `n*` beyond which initial checks are refused.
pub const DEFAULT_N_STAR_CEILING: u64 = 1_000_000;

/// Terms checked against the derived recurrence before it is trusted.
pub const DERIVED_CHECK_TERMS: i64 = 300;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ProofError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Algebraic(#[from] AlgebraicError),
    #[error(transparent)]
    Holonomic(#[from] HolonomicError),
    #[error(transparent)]
    Ore(#[from] OreError),
    #[error("{0} stage output does not match the series expansion")]
    StageFailed(&'static str),
    #[error("need at least {needed} terms, have {available}")]
    InsufficientTerms { needed: usize, available: usize },
    #[error("no recurrence of order <= {max_order} and degree <= {max_degree} fits the terms")]
    NoRecurrenceFound { max_order: usize, max_degree: usize },
    #[error("initial checks through n = {n_star} exceed the ceiling {ceiling}")]
    Infeasible { n_star: BigInt, ceiling: u64 },
    #[error("the zero operator has no leading coefficient")]
    ZeroOperator,
}

/// Provides terms `a(0), a(1), ...` on demand.
pub trait TermSource {
    /// Terms covering at least indices `0..=n`.
    fn terms_through(&mut self, n: i64) -> Result<SequenceTerms, ProofError>;
}

impl TermSource for SequenceTerms {
    fn terms_through(&mut self, n: i64) -> Result<SequenceTerms, ProofError> {
        if self.offset() > 0 || self.end() <= n {
            let needed = usize::try_from(n + 1).unwrap_or(usize::MAX);
            let available = usize::try_from(self.end()).unwrap_or(0);
            return Err(ProofError::InsufficientTerms { needed, available });
        }
        Ok(self.clone())
    }
}

/// Coefficients of a generating function, expanded further when needed.
pub struct SeriesTerms {
    expr: RadicalExpr,
    cache: SequenceTerms,
}

impl SeriesTerms {
    pub fn new(expr: RadicalExpr) -> Self {
        SeriesTerms { expr, cache: SequenceTerms::new(0, Vec::new(), TermOrigin::Series) }
    }
}

impl TermSource for SeriesTerms {
    fn terms_through(&mut self, n: i64) -> Result<SequenceTerms, ProofError> {
        if self.cache.end() <= n {
            let order = n.max(2 * self.cache.end());
            let f = eval_series(&self.expr, order)?;
            self.cache = SequenceTerms::new(0, f.coefficients(order), TermOrigin::Series);
        }
        Ok(self.cache.clone())
    }
}

/// The rigorous pipeline output for one generating function.
#[derive(Debug, Clone, PartialEq)]
pub struct Derivation {
    pub algebraic: BivarPoly,
    pub ode: LinearODE,
    pub recurrence: Recurrence,
    pub annotations: Vec<String>,
    pub timings: Timings,
}

fn millis(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1000.0
}

/// Generating function to algebraic equation to ODE to recurrence, with
/// each stage checked against the series before the next runs.
pub fn derive_recurrence(e: &RadicalExpr) -> Result<Derivation, ProofError> {
    let mut timings = Timings::new();
    let order = e.default_order().max(DERIVED_CHECK_TERMS);
    let t = Instant::now();
    let f = eval_series(e, order)?;
    timings.insert("series".into(), millis(t));

    let t = Instant::now();
    let algebraic = annihilating_polynomial(e)?;
    if !verify_annihilation(&algebraic, &f, order) {
        return Err(ProofError::StageFailed("algebraic equation"));
    }
    timings.insert("algebraic".into(), millis(t));

    let t = Instant::now();
    let ode = algeq_to_ode(&algebraic)?;
    let applied = ode.apply(&f);
    if !applied.is_zero() || applied.trunc_order() < order - ode.order() as i64 {
        return Err(ProofError::StageFailed("ODE"));
    }
    timings.insert("ode".into(), millis(t));

    let t = Instant::now();
    let recurrence = ode_to_recurrence(&ode);
    if !recurrence.annihilates(&f.coefficients(order)) {
        return Err(ProofError::StageFailed("recurrence"));
    }
    timings.insert("recurrence".into(), millis(t));

    let mut annotations = Vec::new();
    let undetermined: Vec<String> = nonnegative_roots(&recurrence.coeffs()[0])
        .into_iter()
        .map(|r| r.to_string())
        .collect();
    if !undetermined.is_empty() {
        annotations.push(format!(
            "the derived recurrence leaves a(n) free at n = {}",
            undetermined.join(", ")
        ));
    }
    Ok(Derivation { algebraic, ode, recurrence, annotations, timings })
}

fn nonnegative_roots(p: &UniPoly) -> Vec<BigInt> {
    poly_integer_roots(p).map(|r| r.into_iter().filter(|v| !v.is_negative()).collect()).unwrap_or_default()
}

/// Result of [`required_initial_checks`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckBound {
    pub n_star: BigInt,
    pub singular: Vec<BigInt>,
}

/// `b` must vanish on `0..=n_star`: beyond the largest singular index the
/// recurrence `Q b = 0` determines each next value from the previous ones.
pub fn required_initial_checks(q: &ShiftOperator, b_conj: &ShiftOperator) -> Result<CheckBound, ProofError> {
    let q_order = q.order().ok_or(ProofError::ZeroOperator)?;
    let lead_q = q.normalized().leading_coeff().expect("nonzero").num().clone();
    let mut singular = nonnegative_roots(&lead_q);
    if let Some(lead_b) = b_conj.normalized().leading_coeff() {
        singular.extend(nonnegative_roots(lead_b.num()));
    }
    singular.sort();
    singular.dedup();
    let top = singular.last().cloned().unwrap_or_else(|| BigInt::from(-1));
    Ok(CheckBound { n_star: BigInt::from(q_order) + 1 + top, singular })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProveOptions {
    pub n_star_ceiling: u64,
    pub max_order: usize,
    pub max_degree: usize,
    pub timings: bool,
}

impl Default for ProveOptions {
    fn default() -> Self {
        ProveOptions { n_star_ceiling: DEFAULT_N_STAR_CEILING, max_order: 4, max_degree: 4, timings: false }
    }
}

/// Right-divides the derived operator by the conjectured one and checks
/// `b(n) = (B a)(n)` on the initial range.
pub fn prove_equivalence(
    derived: &Recurrence,
    conjectured: &Recurrence,
    terms: &mut dyn TermSource,
    options: &ProveOptions,
) -> Result<ProofCertificate, ProofError> {
    let mut timings = Timings::new();
    let t = Instant::now();
    let a = recurrence_to_ore(derived);
    let b = recurrence_to_ore(conjectured);
    let (q, r) = ore_divrem(&a, &b)?;
    timings.insert("division".into(), millis(t));

    let mut cert = ProofCertificate {
        id: None,
        input_gf: String::new(),
        algebraic_eq: None,
        ode: None,
        derived: derived.clone(),
        conjectured: conjectured.clone(),
        quotient: q.clone(),
        remainder: r.clone(),
        singular_indices: Vec::new(),
        checked_through: -1,
        initial_checks: Vec::new(),
        verdict: Verdict::NotARightFactor,
        annotations: Vec::new(),
        timings: None,
    };
    if !r.is_zero() {
        cert.annotations.push(
            "the conjectured operator is not a right factor of the derived one; this proof route failed, \
             which does not refute the conjecture (retry with a left multiple of the derived recurrence)"
                .into(),
        );
        cert.timings = options.timings.then_some(timings);
        return Ok(cert);
    }

    let t = Instant::now();
    let bound = required_initial_checks(&q, &b)?;
    let ceiling = BigInt::from(options.n_star_ceiling);
    if bound.n_star > ceiling {
        return Err(ProofError::Infeasible { n_star: bound.n_star, ceiling: options.n_star_ceiling });
    }
    let n_star = bound.n_star.to_i64().expect("below the ceiling");
    let order_b = b.order().expect("nonzero") as i64;
    let window = terms.terms_through(n_star + order_b)?;
    let checks = (0..=n_star)
        .map(|n| ore_apply(&b, &window, n).map(|value| InitialCheck { n, value }))
        .collect::<Result<Vec<_>, _>>()?;
    timings.insert("initial_checks".into(), millis(t));

    cert.singular_indices = bound.singular.iter().map(|s| s.to_i64().expect("below the ceiling")).collect();
    cert.checked_through = n_star;
    cert.verdict = match checks.iter().find(|c| !c.value.is_zero()) {
        None => Verdict::Proved,
        Some(witness) => {
            cert.annotations.push(format!("b({}) = {} is nonzero", witness.n, witness.value));
            Verdict::InitialCheckFailed
        }
    };
    cert.initial_checks = checks;
    cert.timings = options.timings.then_some(timings);
    Ok(cert)
}

/// Full statement-and-proof run for one generating function; guesses the
/// conjecture from the series when none is given.
pub fn prove_gf(gf_text: &str, conjectured: Option<&Recurrence>, options: &ProveOptions) -> Result<ProofCertificate, ProofError> {
    let t = Instant::now();
    let e = parse(gf_text)?;
    let parse_ms = millis(t);
    let derivation = derive_recurrence(&e)?;
    let mut source = SeriesTerms::new(e);

    let mut guess_ms = None;
    let conjectured = match conjectured {
        Some(rec) => rec.clone(),
        None => {
            let t = Instant::now();
            let n = required_terms(options.max_order, options.max_degree) + 2 * HOLDOUT;
            let terms = source.terms_through(n as i64 - 1)?;
            let rec = guess_recurrence(&terms, options.max_order, options.max_degree)?.ok_or(
                ProofError::NoRecurrenceFound { max_order: options.max_order, max_degree: options.max_degree },
            )?;
            guess_ms = Some(millis(t));
            rec
        }
    };
    let guessed = guess_ms.is_some();

    let mut cert = prove_equivalence(&derivation.recurrence, &conjectured, &mut source, options)?;
    cert.input_gf = gf_text.to_string();
    cert.algebraic_eq = Some(derivation.algebraic);
    cert.ode = Some(derivation.ode);
    let mut annotations = derivation.annotations;
    if guessed {
        annotations.push("conjectured recurrence obtained by guessing from the series".into());
    }
    annotations.append(&mut cert.annotations);
    cert.annotations = annotations;
    if options.timings {
        let mut timings = derivation.timings;
        timings.insert("parse".into(), parse_ms);
        if let Some(ms) = guess_ms {
            timings.insert("guess".into(), ms);
        }
        timings.extend(cert.timings.take().unwrap_or_default());
        cert.timings = Some(timings);
    }
    Ok(cert)
}
