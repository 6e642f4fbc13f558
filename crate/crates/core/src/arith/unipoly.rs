use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dense;
use super::field::{int, int_gcd, rational_from_wire, rational_to_wire, Field};
use super::ArithError;

/// The two polynomial variables used across the crate: `x` for generating
/// functions and `n` for sequence indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Var {
    #[serde(rename = "x")]
    X,
    #[serde(rename = "n")]
    N,
}

impl Var {
    pub fn symbol(self) -> &'static str {
        match self {
            Var::X => "x",
            Var::N => "n",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.symbol())
    }
}

/// Dense univariate polynomial with exact rational coefficients.
///
/// `coeffs[i]` multiplies `var^i`; the highest stored coefficient is never
/// zero, so the zero polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct UniPoly {
    var: Var,
    coeffs: Vec<BigRational>,
}

impl UniPoly {
    pub fn new(var: Var, mut coeffs: Vec<BigRational>) -> Self {
        dense::trim(&mut coeffs);
        UniPoly { var, coeffs }
    }

    pub fn from_ints(var: Var, coeffs: &[i64]) -> Self {
        Self::new(var, coeffs.iter().map(|&c| int(c)).collect())
    }

    pub fn zero(var: Var) -> Self {
        UniPoly { var, coeffs: Vec::new() }
    }

    pub fn one(var: Var) -> Self {
        Self::constant(var, BigRational::one())
    }

    pub fn constant(var: Var, c: BigRational) -> Self {
        Self::new(var, vec![c])
    }

    /// The polynomial `var`.
    pub fn var(var: Var) -> Self {
        Self::from_ints(var, &[0, 1])
    }

    /// `c * var^k`.
    pub fn monomial(var: Var, c: BigRational, k: usize) -> Self {
        let mut coeffs = vec![BigRational::zero(); k];
        coeffs.push(c);
        Self::new(var, coeffs)
    }

    pub fn variable(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        dense::degree(&self.coeffs)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn leading_coeff(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    /// Lowest-degree nonzero coefficient.
    pub fn trailing_coeff(&self) -> Option<&BigRational> {
        self.coeffs.iter().find(|c| !c.is_zero())
    }

    pub fn with_var(&self, var: Var) -> Self {
        UniPoly { var, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_one() {
            return self.clone();
        }
        if (-c).is_one() {
            return -self;
        }
        Self::new(self.var, dense::scale(&self.coeffs, c))
    }

    pub fn eval(&self, at: &BigRational) -> BigRational {
        dense::eval(&self.coeffs, at)
    }

    pub fn eval_int(&self, at: i64) -> BigRational {
        self.eval(&int(at))
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.var, dense::derivative(&self.coeffs))
    }

    /// `p(var + k)`.
    pub fn shift(&self, k: i64) -> Self {
        if k == 0 || self.is_constant() {
            return self.clone();
        }
        let step = [int(k), BigRational::one()];
        let mut acc: Vec<BigRational> = Vec::new();
        for c in self.coeffs.iter().rev() {
            acc = dense::mul(&acc, &step);
            acc = dense::add(&acc, std::slice::from_ref(c));
        }
        Self::new(self.var, acc)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.var);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    pub fn monic(&self) -> Self {
        Self::new(self.var, dense::monic(&self.coeffs))
    }

    fn check_var(&self, other: &Self) -> Result<(), ArithError> {
        if self.var == other.var {
            Ok(())
        } else {
            Err(ArithError::VariableMismatch(self.var, other.var))
        }
    }

    /// Euclidean division: `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Self) -> Result<(Self, Self), ArithError> {
        self.check_var(divisor)?;
        if divisor.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        let (q, r) = dense::divrem(&self.coeffs, &divisor.coeffs);
        Ok((Self::new(self.var, q), Self::new(self.var, r)))
    }

    /// Exact quotient; errors unless `divisor` divides `self`.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, ArithError> {
        let (q, r) = self.divrem(divisor)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(ArithError::Inexact)
        }
    }

    /// Monic gcd. `gcd(a, 0) = monic(a)`; `gcd(0, 0)` is an error.
    pub fn gcd(&self, other: &Self) -> Result<Self, ArithError> {
        self.check_var(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(ArithError::ZeroPolynomial);
        }
        Ok(Self::new(self.var, dense::gcd(&self.coeffs, &other.coeffs)))
    }

    /// Least common denominator of the coefficients.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::one(), |acc, c| {
            if c.denom().is_one() {
                acc
            } else {
                acc.lcm(c.denom())
            }
        })
    }

    /// Gcd of the numerators after clearing denominators (0 for the zero
    /// polynomial).
    pub fn integer_content(&self) -> BigInt {
        let l = BigRational::from_integer(self.denominator_lcm());
        let mut acc = BigInt::zero();
        // smallest magnitudes first, so a unit content is found cheaply
        let mut values: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| if l.is_one() { c.to_integer().abs() } else { (c * &l).to_integer().abs() })
            .collect();
        values.sort_by_key(|v| v.bits());
        for v in values {
            acc = int_gcd(&acc, &v);
            if acc.is_one() {
                break;
            }
        }
        acc
    }

    /// Integer coefficients with content 1 and positive leading coefficient.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = BigRational::from_integer(self.denominator_lcm());
        let scaled = self.scale(&l);
        let g = BigRational::from_integer(scaled.integer_content());
        let mut out = scaled.scale(&g.recip());
        if out.leading_coeff().is_some_and(|c| c.is_negative()) {
            out = -&out;
        }
        out
    }

    /// Integer coefficient vector; caller guarantees integrality.
    pub fn to_integer_coeffs(&self) -> Vec<BigInt> {
        self.coeffs.iter().map(|c| c.to_integer()).collect()
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }
}

impl Field for UniPoly {
    // Only used to borrow the generic kernels for ring operations; `fdiv`
    // is exact division and panics otherwise.
    fn fzero() -> Self {
        UniPoly::zero(Var::X)
    }
    fn fone() -> Self {
        UniPoly::one(Var::X)
    }
    fn fis_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_i64(v: i64) -> Self {
        UniPoly::constant(Var::X, int(v))
    }
    fn fadd(&self, other: &Self) -> Self {
        self + other
    }
    fn fsub(&self, other: &Self) -> Self {
        self - other
    }
    fn fmul(&self, other: &Self) -> Self {
        self * other
    }
    fn fdiv(&self, other: &Self) -> Self {
        self.div_exact(other).expect("inexact polynomial division")
    }
    fn fneg(&self) -> Self {
        -self
    }
}

fn merge_var(a: &UniPoly, b: &UniPoly) -> Var {
    // Constants are variable-agnostic.
    if a.is_constant() {
        b.var
    } else {
        if !b.is_constant() {
            assert_eq!(a.var, b.var, "polynomial variable mismatch");
        }
        a.var
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::new(merge_var(self, rhs), dense::add(&self.coeffs, &rhs.coeffs))
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::new(merge_var(self, rhs), dense::sub(&self.coeffs, &rhs.coeffs))
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        UniPoly::new(merge_var(self, rhs), dense::mul(&self.coeffs, &rhs.coeffs))
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.var, dense::neg(&self.coeffs))
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for UniPoly {
            type Output = UniPoly;
            fn $m(self, rhs: UniPoly) -> UniPoly {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        -&self
    }
}

/// Renders a polynomial in descending powers using the expression grammar,
/// e.g. `4*n^2 - 3*n + 1/2`.
pub(crate) fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: &[(BigRational, String)],
) -> fmt::Result {
    if terms.is_empty() {
        return f.write_str("0");
    }
    for (i, (c, mono)) in terms.iter().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        if i == 0 {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        if mono.is_empty() {
            write!(f, "{mag}")?;
        } else if mag.is_one() {
            f.write_str(mono)?;
        } else {
            write!(f, "{mag}*{mono}")?;
        }
    }
    Ok(())
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(BigRational, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let mono = match k {
                    0 => String::new(),
                    1 => self.var.symbol().to_string(),
                    _ => format!("{}^{k}", self.var),
                };
                (c.clone(), mono)
            })
            .collect();
        write_terms(f, &terms)
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]({})", self.var, self)
    }
}

#[derive(Serialize, Deserialize)]
struct UniPolyWire {
    var: Var,
    coeffs: Vec<String>,
}

impl Serialize for UniPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        UniPolyWire { var: self.var, coeffs: self.coeffs.iter().map(rational_to_wire).collect() }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UniPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let wire = UniPolyWire::deserialize(d)?;
        let coeffs = wire
            .coeffs
            .iter()
            .map(|t| {
                rational_from_wire(t)
                    .ok_or_else(|| serde::de::Error::custom(format!("bad rational {t:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(UniPoly::new(wire.var, coeffs))
    }
}

/// Euclidean division of `a` by `b`.
pub fn poly_divrem(a: &UniPoly, b: &UniPoly) -> Result<(UniPoly, UniPoly), ArithError> {
    a.divrem(b)
}

/// Monic gcd of `a` and `b`.
pub fn poly_gcd(a: &UniPoly, b: &UniPoly) -> Result<UniPoly, ArithError> {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(cs: &[i64]) -> UniPoly {
        UniPoly::from_ints(Var::X, cs)
    }

    #[test]
    fn divrem_examples() {
        let (q, r) = poly_divrem(&x(&[-1, 0, 1]), &x(&[-1, 1])).unwrap();
        assert_eq!((q, r), (x(&[1, 1]), x(&[])));
        let (q, r) = poly_divrem(&x(&[0, 0, 1]), &x(&[-3, 1])).unwrap();
        assert_eq!((q, r), (x(&[3, 1]), x(&[9])));
        // (x - 1)(x^2 - x - 1) = x^3 - 2x^2 + 1
        let (q, r) = poly_divrem(&x(&[1, 0, -2, 1]), &x(&[-1, -1, 1])).unwrap();
        assert_eq!((q, r), (x(&[-1, 1]), x(&[])));
    }

    #[test]
    fn divrem_errors() {
        assert_eq!(poly_divrem(&x(&[1, 1]), &x(&[])), Err(ArithError::DivisionByZero));
        let n = UniPoly::from_ints(Var::N, &[1, 1]);
        assert!(matches!(poly_divrem(&x(&[1, 1]), &n), Err(ArithError::VariableMismatch(..))));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(poly_gcd(&x(&[-1, 0, 1]), &x(&[1, -2, 1])).unwrap(), x(&[-1, 1]));
        assert_eq!(poly_gcd(&x(&[0, 0, 1]), &x(&[0, 0, 0, 1])).unwrap(), x(&[0, 0, 1]));
        assert_eq!(poly_gcd(&x(&[1, 0, 1]), &x(&[-1, 1])).unwrap(), x(&[1]));
        assert_eq!(poly_gcd(&x(&[2, 4]), &x(&[])).unwrap(), x(&[1, 2]).monic());
        assert_eq!(poly_gcd(&x(&[]), &x(&[])), Err(ArithError::ZeroPolynomial));
    }

    #[test]
    fn shift_and_display() {
        let p = UniPoly::from_ints(Var::N, &[-2, 4]);
        assert_eq!(p.shift(1), UniPoly::from_ints(Var::N, &[2, 4]));
        assert_eq!(p.to_string(), "4*n - 2");
        assert_eq!(x(&[1, 0, -1]).to_string(), "-x^2 + 1");
        assert_eq!(x(&[]).to_string(), "0");
    }

    #[test]
    fn primitive_part_clears_content() {
        let p = UniPoly::new(Var::X, vec![super::super::field::rat(-1, 2), super::super::field::rat(-3, 4)]);
        assert_eq!(p.primitive_part(), x(&[2, 3]));
    }
}
