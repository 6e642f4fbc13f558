use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::field::{int, Field};
use super::unipoly::{UniPoly, Var};
use super::ArithError;

/// Reduced quotient of two polynomials in the same variable.
///
/// Construction always normalizes: the numerator and denominator are
/// coprime and the denominator is monic, so structural equality is
/// mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RatFuncWire")]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

#[derive(Deserialize)]
struct RatFuncWire {
    num: UniPoly,
    den: UniPoly,
}

impl TryFrom<RatFuncWire> for RatFunc {
    type Error = ArithError;
    fn try_from(w: RatFuncWire) -> Result<Self, ArithError> {
        RatFunc::new(w.num, w.den)
    }
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let var = if den.is_constant() { num.variable() } else { den.variable() };
        let num = num.with_var(var);
        let den = den.with_var(var);
        if num.is_zero() {
            return Ok(RatFunc { den: UniPoly::one(var), num });
        }
        if den.is_constant() {
            let inv = den.leading_coeff().expect("nonzero").recip();
            return Ok(RatFunc { num: num.scale(&inv), den: UniPoly::one(var) });
        }
        let g = num.gcd(&den)?;
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let lead = den.leading_coeff().expect("nonzero").clone();
        if !lead.is_one() {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let var = p.variable();
        RatFunc { num: p, den: UniPoly::one(var) }
    }

    pub fn constant(var: Var, c: BigRational) -> Self {
        Self::from_poly(UniPoly::constant(var, c))
    }

    pub fn zero_in(var: Var) -> Self {
        Self::from_poly(UniPoly::zero(var))
    }

    pub fn one_in(var: Var) -> Self {
        Self::from_poly(UniPoly::one(var))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn variable(&self) -> Var {
        self.den.variable()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn inv(&self) -> Result<Self, ArithError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    /// `r(var + k)`.
    pub fn shift(&self, k: i64) -> Self {
        RatFunc::new(self.num.shift(k), self.den.shift(k)).expect("shift keeps denominator nonzero")
    }

    pub fn derivative(&self) -> Self {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(top, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Value at `at`, or `None` when the denominator vanishes there.
    pub fn eval(&self, at: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(at);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(at) / d)
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        RatFunc { num: self.num.scale(c), den: self.den.clone() }
            .renormalized()
    }

    fn renormalized(self) -> Self {
        if self.num.is_zero() {
            Self::zero_in(self.variable())
        } else {
            self
        }
    }
}

impl Field for RatFunc {
    fn fzero() -> Self {
        Self::zero_in(Var::X)
    }
    fn fone() -> Self {
        Self::one_in(Var::X)
    }
    fn fis_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn from_i64(v: i64) -> Self {
        Self::constant(Var::X, int(v))
    }
    fn fadd(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(&self.num + &other.num, self.den.clone()).expect("nonzero");
        }
        RatFunc::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .expect("nonzero")
    }
    fn fsub(&self, other: &Self) -> Self {
        self.fadd(&other.fneg())
    }
    fn fmul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero_in(self.variable());
        }
        RatFunc::new(&self.num * &other.num, &self.den * &other.den).expect("nonzero")
    }
    fn fdiv(&self, other: &Self) -> Self {
        self.fmul(&other.inv().expect("division by zero rational function"))
    }
    fn fneg(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc[{}]({})", self.variable(), self)
    }
}

impl From<UniPoly> for RatFunc {
    fn from(p: UniPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn n(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::N, cs)
    }

    #[test]
    fn normalizes_on_construction() {
        // (2n^2 - 2) / (4n - 4) = (n + 1)/2
        let r = RatFunc::new(n(&[-2, 0, 2]), n(&[-4, 4])).unwrap();
        assert!(r.is_polynomial());
        assert_eq!(r.num(), &n(&[1, 1]).scale(&super::super::field::rat(1, 2)));
        let s = RatFunc::new(n(&[1]), n(&[2, -2])).unwrap();
        assert_eq!(s.den(), &n(&[-1, 1]));
        assert_eq!(RatFunc::new(n(&[1]), n(&[])), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn field_ops() {
        let a = RatFunc::new(n(&[1]), n(&[0, 1])).unwrap();
        let b = RatFunc::new(n(&[1]), n(&[1, 1])).unwrap();
        // 1/n - 1/(n+1) = 1/(n(n+1))
        let d = a.fsub(&b);
        assert_eq!(d, RatFunc::new(n(&[1]), n(&[0, 1, 1])).unwrap());
        assert_eq!(d.fdiv(&d), RatFunc::one_in(Var::N));
        assert_eq!(a.shift(1), b);
        assert_eq!(a.eval(&int(0)), None);
    }
}
