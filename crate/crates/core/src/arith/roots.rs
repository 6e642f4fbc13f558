//! Exact integer roots of rational polynomials.
//!
//! Linear factors are solved directly, which keeps huge roots such as
//! `n - 10^1000000` cheap. Higher degrees isolate real roots on integer
//! intervals with a Sturm sequence, then every surviving integer candidate
//! must divide the trailing coefficient and evaluate to exactly zero.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::unipoly::UniPoly;
use super::ArithError;

const SCAN_WIDTH: u32 = 16;

/// All integer roots of `p`, sorted ascending, without multiplicity.
pub fn poly_integer_roots(p: &UniPoly) -> Result<Vec<BigInt>, ArithError> {
    if p.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let prim = p.primitive_part();
    let coeffs = prim.coeffs();
    let low = coeffs.iter().position(|c| !c.is_zero()).expect("nonzero");
    let mut roots = Vec::new();
    if low > 0 {
        roots.push(BigInt::zero());
    }
    let reduced = UniPoly::new(prim.variable(), coeffs[low..].to_vec());
    match reduced.degree() {
        Some(0) => {}
        Some(1) => {
            let a0 = reduced.coeff(0).to_integer();
            let a1 = reduced.coeff(1).to_integer();
            let (q, r) = (-a0).div_rem(&a1);
            if r.is_zero() {
                roots.push(q);
            }
        }
        _ => roots.extend(sturm_integer_roots(&reduced)),
    }
    roots.sort();
    roots.dedup();
    Ok(roots)
}

fn sturm_integer_roots(p: &UniPoly) -> Vec<BigInt> {
    let squarefree = {
        let g = p.gcd(&p.derivative()).expect("nonzero");
        p.div_exact(&g).expect("gcd divides").primitive_part()
    };
    let trailing = squarefree.coeff(0).to_integer();
    let chain = sturm_chain(&squarefree);
    let bound = cauchy_bound(&squarefree);
    let mut found = Vec::new();
    let mut stack = vec![(-&bound - BigInt::one(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let count = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        if count == 0 {
            continue;
        }
        if &hi - &lo <= BigInt::from(SCAN_WIDTH) {
            let mut k = &lo + BigInt::one();
            while k <= hi {
                if !k.is_zero()
                    && (&trailing % &k).is_zero()
                    && squarefree.eval(&BigRational::from_integer(k.clone())).is_zero()
                {
                    found.push(k.clone());
                }
                k += 1;
            }
            continue;
        }
        let mid = (&lo + &hi).div_floor(&BigInt::from(2));
        stack.push((lo, mid.clone()));
        stack.push((mid, hi));
    }
    found
}

fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let k = chain.len();
        if chain[k - 1].is_zero() {
            chain.pop();
            break;
        }
        let (_, r) = chain[k - 2].divrem(&chain[k - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        chain.push(-&r);
    }
    chain
}

fn sign_changes(chain: &[UniPoly], at: &BigInt) -> i64 {
    let at = BigRational::from_integer(at.clone());
    let mut last = 0i8;
    let mut changes = 0;
    for q in chain {
        let v = q.eval(&at);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                changes += 1;
            }
            last = s;
        }
    }
    changes
}

/// `1 + max |a_i / a_d|`, rounded up; every real root lies strictly inside.
fn cauchy_bound(p: &UniPoly) -> BigInt {
    let lead = p.leading_coeff().expect("nonzero").abs();
    let m = p
        .coeffs()
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |a, b| if b > a { b } else { a });
    m.ceil().to_integer() + BigInt::one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Var;

    fn n(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::N, cs)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&k| BigInt::from(k)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(poly_integer_roots(&n(&[2, -3, 1])).unwrap(), ints(&[1, 2]));
        assert_eq!(poly_integer_roots(&n(&[1, 0, 1])).unwrap(), ints(&[]));
        // (n - 10)(2n + 1) = 2n^2 - 19n - 10
        assert_eq!(poly_integer_roots(&n(&[-10, -19, 2])).unwrap(), ints(&[10]));
        assert_eq!(poly_integer_roots(&n(&[])), Err(ArithError::ZeroPolynomial));
    }

    #[test]
    fn zero_root_and_multiplicity() {
        // n^2 (n + 3)^2 (n - 7)
        let p = &(&n(&[0, 0, 1]) * &n(&[3, 1]).pow(2)) * &n(&[-7, 1]);
        assert_eq!(poly_integer_roots(&p).unwrap(), ints(&[-3, 0, 7]));
    }

    #[test]
    fn huge_linear_root() {
        let big = num_traits::pow(BigInt::from(10), 400);
        let p = UniPoly::new(Var::N, vec![BigRational::from_integer(-big.clone()), BigRational::one()]);
        assert_eq!(poly_integer_roots(&p).unwrap(), vec![big]);
    }

    #[test]
    fn large_quadratic_roots() {
        // (n - 123456789)(n + 987654321)
        let p = &n(&[-123_456_789, 1]) * &n(&[987_654_321, 1]);
        assert_eq!(poly_integer_roots(&p).unwrap(), ints(&[-987_654_321, 123_456_789]));
    }
}
