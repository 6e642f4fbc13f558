//! Proof certificates and their independent re-verification.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::algebraic::verify_annihilation;
use crate::arith::{poly_integer_roots, BivarPoly, UniPoly};
use crate::expr::{eval_series, parse};
use crate::holonomic::{LinearODE, Recurrence};
use crate::ore::{ore_mul, recurrence_to_ore, ShiftOperator};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Proved,
    NotARightFactor,
    InitialCheckFailed,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Proved => "proved",
            Verdict::NotARightFactor => "not-a-right-factor",
            Verdict::InitialCheckFailed => "initial-check-failed",
        })
    }
}

/// `b(n) = (B a)(n)` at one index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitialCheck {
    pub n: i64,
    #[serde(with = "crate::arith::field::wire")]
    pub value: BigRational,
}

/// Stage name to wall-clock milliseconds.
pub type Timings = BTreeMap<String, f64>;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProofCertificate {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub input_gf: String,
    pub algebraic_eq: Option<BivarPoly>,
    pub ode: Option<LinearODE>,
    pub derived: Recurrence,
    pub conjectured: Recurrence,
    pub quotient: ShiftOperator,
    pub remainder: ShiftOperator,
    pub singular_indices: Vec<i64>,
    pub checked_through: i64,
    pub initial_checks: Vec<InitialCheck>,
    pub verdict: Verdict,
    #[serde(default)]
    pub annotations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl ProofCertificate {
    /// The structural invariant: proved exactly when the remainder is zero,
    /// every recorded `b(n)` is zero, and enough indices were checked.
    pub fn invariant_holds(&self) -> bool {
        let bound = self.quotient.order().map(|q| q as i64 + 1 + self.singular_indices.iter().copied().max().unwrap_or(-1));
        let covered = bound.is_some_and(|b| self.checked_through >= b)
            && (0..=self.checked_through).all(|n| self.initial_checks.iter().any(|c| c.n == n));
        let zeros = self.initial_checks.iter().all(|c| c.value.is_zero());
        let proved = self.remainder.is_zero() && zeros && covered;
        proved == (self.verdict == Verdict::Proved)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum VerifyError {
    #[error("certificate verdict is {0}, not proved")]
    NotProved(Verdict),
    #[error("certificate invariant does not hold")]
    Invariant,
    #[error("Q*B + R differs from the derived operator")]
    Factorization,
    #[error("singular index {0} is missing from the certificate")]
    MissingSingularity(i64),
    #[error("singular index beyond the checkable range")]
    SingularityOutOfRange,
    #[error("generating function: {0}")]
    GeneratingFunction(String),
    #[error("the algebraic equation does not annihilate the series")]
    AlgebraicEquation,
    #[error("the ODE does not annihilate the series")]
    Ode,
    #[error("the derived recurrence fails at n = {0}")]
    Derived(i64),
    #[error("b({n}) is {found}, recorded as {recorded}")]
    InitialValue { n: i64, found: Box<BigRational>, recorded: Box<BigRational> },
}

/// Terms used by the independent checker beyond the certificate's range.
pub const RECHECK_TERMS: i64 = 300;

/// Re-validates a proved certificate from its own data and the generating
/// function text, without the division or guessing code: multiplies `Q*B`
/// back out, recomputes the singular indices, and recomputes `b(n)` from a
/// fresh series expansion.
pub fn verify_certificate(cert: &ProofCertificate, gf_text: &str) -> Result<(), VerifyError> {
    if cert.verdict != Verdict::Proved {
        return Err(VerifyError::NotProved(cert.verdict));
    }
    if !cert.invariant_holds() {
        return Err(VerifyError::Invariant);
    }
    let a = recurrence_to_ore(&cert.derived);
    let b = recurrence_to_ore(&cert.conjectured);
    let qb = ore_mul(&cert.quotient, &b);
    if &qb + &cert.remainder != a || !cert.remainder.is_zero() {
        return Err(VerifyError::Factorization);
    }

    let mut singular = integer_roots_nonneg(cert.quotient.normalized().leading_coeff().expect("nonzero").num())?;
    singular.extend(integer_roots_nonneg(b.leading_coeff().expect("nonzero").num())?);
    if let Some(s) = singular.into_iter().find(|s| !cert.singular_indices.contains(s)) {
        return Err(VerifyError::MissingSingularity(s));
    }

    let e = parse(gf_text).map_err(|err| VerifyError::GeneratingFunction(err.to_string()))?;
    let m = cert.conjectured.order() as i64;
    let last = (cert.checked_through + m).max(RECHECK_TERMS);
    let f = eval_series(&e, last).map_err(|err| VerifyError::GeneratingFunction(err.to_string()))?;
    let terms = f.coefficients(last);

    if let Some(p) = &cert.algebraic_eq {
        if !verify_annihilation(p, &f, last) {
            return Err(VerifyError::AlgebraicEquation);
        }
    }
    if let Some(ode) = &cert.ode {
        let r = ode.apply(&f);
        if !r.is_zero() {
            return Err(VerifyError::Ode);
        }
    }
    if let Some(n) = cert.derived.first_failure(&terms, 0) {
        return Err(VerifyError::Derived(n));
    }
    for n in 0..=cert.checked_through {
        // b(n) is the conjectured recurrence read at index n + M
        let found = cert.conjectured.residual(&terms, n + m).expect("terms cover the range");
        let recorded = cert.initial_checks.iter().find(|c| c.n == n).map(|c| c.value.clone()).unwrap_or_default();
        if !found.is_zero() || found != recorded {
            return Err(VerifyError::InitialValue { n, found: Box::new(found), recorded: Box::new(recorded) });
        }
    }
    Ok(())
}

fn integer_roots_nonneg(p: &UniPoly) -> Result<Vec<i64>, VerifyError> {
    let roots = poly_integer_roots(p).map_err(|_| VerifyError::Factorization)?;
    roots
        .into_iter()
        .filter(|r| *r >= BigInt::zero())
        .map(|r| r.to_i64().ok_or(VerifyError::SingularityOutOfRange))
        .collect()
}
