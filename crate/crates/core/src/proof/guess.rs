//! Recurrence guessing by exact nullspace computation with a holdout.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{linalg, UniPoly, Var};
use crate::holonomic::Recurrence;
use crate::sequence::SequenceTerms;

use super::ProofError;

/// Terms withheld from the linear solve and used only for validation.
pub const HOLDOUT: usize = 20;

/// Minimum number of terms for a search up to `(max_order, max_degree)`.
pub fn required_terms(max_order: usize, max_degree: usize) -> usize {
    (max_order + 1) * (max_degree + 1) + max_order + HOLDOUT
}

/// Lowest-order, then lowest-degree recurrence `sum c_i(n) a(n-i) = 0`
/// fitting `terms` and surviving the holdout.
pub fn guess_recurrence(
    terms: &SequenceTerms,
    max_order: usize,
    max_degree: usize,
) -> Result<Option<Recurrence>, ProofError> {
    let needed = required_terms(max_order, max_degree);
    if terms.len() < needed {
        return Err(ProofError::InsufficientTerms { needed, available: terms.len() });
    }
    for order in 1..=max_order {
        for degree in 0..=max_degree {
            if let Some(rec) = guess_shape(terms, order, degree) {
                return Ok(Some(rec));
            }
        }
    }
    Ok(None)
}

fn guess_shape(terms: &SequenceTerms, order: usize, degree: usize) -> Option<Recurrence> {
    let start = terms.offset() + order as i64;
    let fit_end = terms.end() - HOLDOUT as i64;
    if fit_end <= start {
        return None;
    }
    let unknowns = (order + 1) * (degree + 1);
    let rows: Vec<Vec<BigRational>> = (start..fit_end).map(|n| equation(terms, n, order, degree)).collect();
    linalg::nullspace(rows, unknowns).into_iter().find_map(|v| {
        let c: Vec<UniPoly> = v.chunks(degree + 1).map(|ch| UniPoly::new(Var::N, ch.to_vec())).collect();
        let holds = |n: i64| {
            equation(terms, n, order, degree).iter().zip(&v).fold(BigRational::zero(), |acc, (a, b)| acc + a * b).is_zero()
        };
        (fit_end.max(start)..terms.end()).all(holds).then_some(())?;
        reindex(c)
    })
}

/// Row of the linear system at index `n`: `n^j a(n-i)` for each unknown
/// `c_{i,j}`.
fn equation(terms: &SequenceTerms, n: i64, order: usize, degree: usize) -> Vec<BigRational> {
    let nq = BigRational::from_integer(BigInt::from(n));
    let mut row = Vec::with_capacity((order + 1) * (degree + 1));
    for i in 0..=order {
        let a = terms.get(n - i as i64).cloned().expect("index within the window");
        let mut p = BigRational::one();
        for _ in 0..=degree {
            row.push(&a * &p);
            p *= &nq;
        }
    }
    row
}

/// Drops vanishing leading coefficients by moving the relation's index.
fn reindex(c: Vec<UniPoly>) -> Option<Recurrence> {
    let lead = c.iter().position(|p| !p.is_zero())?;
    Recurrence::new(c[lead..].iter().map(|p| p.shift(lead as i64)).collect()).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::TermOrigin;

    fn ints(values: impl IntoIterator<Item = BigInt>) -> SequenceTerms {
        SequenceTerms::new(0, values.into_iter().map(BigRational::from_integer).collect(), TermOrigin::User)
    }

    #[test]
    fn powers_of_two() {
        let t = ints((0..30).map(|k| BigInt::from(2).pow(k)));
        assert_eq!(guess_recurrence(&t, 1, 0).unwrap(), Some(Recurrence::from_ints(&[&[1], &[-2]]).unwrap()));
    }

    #[test]
    fn too_few_terms() {
        let t = ints((0..21).map(|k| BigInt::from(2).pow(k)));
        assert_eq!(
            guess_recurrence(&t, 1, 0),
            Err(ProofError::InsufficientTerms { needed: 23, available: 21 })
        );
    }

    #[test]
    fn fibonacci_and_catalan() {
        let mut fib = vec![BigInt::zero(), BigInt::one()];
        while fib.len() < 30 {
            let next = &fib[fib.len() - 1] + &fib[fib.len() - 2];
            fib.push(next);
        }
        assert_eq!(
            guess_recurrence(&ints(fib), 2, 0).unwrap(),
            Some(Recurrence::from_ints(&[&[1], &[-1], &[-1]]).unwrap())
        );
        let mut cat = vec![BigInt::one()];
        for n in 1..40i64 {
            let next = &cat[n as usize - 1] * BigInt::from(4 * n - 2) / BigInt::from(n + 1);
            cat.push(next);
        }
        assert_eq!(
            guess_recurrence(&ints(cat), 1, 1).unwrap(),
            Some(Recurrence::from_ints(&[&[1, 1], &[2, -4]]).unwrap())
        );
    }

    #[test]
    fn nothing_found() {
        // factorials squared need degree 2
        let mut v = vec![BigInt::one()];
        for n in 1..40i64 {
            let next = &v[n as usize - 1] * BigInt::from(n * n);
            v.push(next);
        }
        assert_eq!(guess_recurrence(&ints(v), 1, 1).unwrap(), None);
    }
}
