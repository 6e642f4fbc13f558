//! Linear shift operators `sum r_i(n) N^i` over `Q(n)`, with `N n = (n+1) N`.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int_gcd, write_combination, Field, RatFunc, UniPoly, Var};
use crate::expr::ast::{parse_ast, Ast, BinOp, Dialect};
use crate::expr::{ParseError, ParseErrorKind};
use crate::holonomic::Recurrence;
use crate::sequence::SequenceTerms;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OreError {
    #[error("division by the zero operator")]
    DivisionByZero,
    #[error("coefficient denominator vanishes at n = {0}")]
    Singular(i64),
    #[error("term a({0}) is not available")]
    MissingTerm(i64),
}

/// The zero operator has no coefficients and no order.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OperatorWire", into = "OperatorWire")]
pub struct ShiftOperator {
    coeffs: Vec<RatFunc>,
}

#[derive(Serialize, Deserialize)]
struct OperatorWire {
    order: Option<usize>,
    coeffs: Vec<RatFunc>,
}

impl TryFrom<OperatorWire> for ShiftOperator {
    type Error = String;

    fn try_from(w: OperatorWire) -> Result<Self, Self::Error> {
        let op = ShiftOperator::new(w.coeffs);
        if op.order() != w.order {
            return Err(format!("order {:?} does not match coefficients", w.order));
        }
        Ok(op)
    }
}

impl From<ShiftOperator> for OperatorWire {
    fn from(op: ShiftOperator) -> Self {
        OperatorWire { order: op.order(), coeffs: op.coeffs }
    }
}

impl ShiftOperator {
    pub fn new(coeffs: Vec<RatFunc>) -> Self {
        let mut coeffs: Vec<RatFunc> =
            coeffs.into_iter().map(|c| RatFunc::new(c.num().with_var(Var::N), c.den().with_var(Var::N)).expect("den")).collect();
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        ShiftOperator { coeffs }
    }

    pub fn from_polys(coeffs: Vec<UniPoly>) -> Self {
        Self::new(coeffs.into_iter().map(RatFunc::from_poly).collect())
    }

    /// Row `i` holds the ascending integer coefficients of `r_i(n)`.
    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_polys(rows.iter().map(|r| UniPoly::from_ints(Var::N, r)).collect())
    }

    pub fn zero() -> Self {
        ShiftOperator { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::coefficient(RatFunc::one_in(Var::N))
    }

    /// Multiplication by `r(n)`.
    pub fn coefficient(r: RatFunc) -> Self {
        Self::new(vec![r])
    }

    /// Multiplication by `n`.
    pub fn n() -> Self {
        Self::from_polys(vec![UniPoly::var(Var::N)])
    }

    /// `N^k`.
    pub fn shift_power(k: usize) -> Self {
        Self::monomial(RatFunc::one_in(Var::N), k)
    }

    pub fn monomial(r: RatFunc, k: usize) -> Self {
        let mut coeffs = vec![RatFunc::zero_in(Var::N); k];
        coeffs.push(r);
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[RatFunc] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> RatFunc {
        self.coeffs.get(i).cloned().unwrap_or_else(|| RatFunc::zero_in(Var::N))
    }

    pub fn order(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn leading_coeff(&self) -> Option<&RatFunc> {
        self.coeffs.last()
    }

    /// Left multiplication by `r(n)`.
    pub fn scale_left(&self, r: &RatFunc) -> Self {
        Self::new(self.coeffs.iter().map(|c| r.fmul(c)).collect())
    }

    pub fn is_polynomial(&self) -> bool {
        self.coeffs.iter().all(RatFunc::is_polynomial)
    }

    /// Left multiple by the common denominator, integer content 1, leading
    /// coefficient with positive leading term.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let polys: Vec<UniPoly> = if self.is_polynomial() {
            self.coeffs.iter().map(|c| c.num().clone()).collect()
        } else {
            let mut lcm = UniPoly::one(Var::N);
            for c in &self.coeffs {
                let g = lcm.gcd(c.den()).expect("nonzero");
                lcm = (&lcm * c.den()).div_exact(&g).expect("gcd divides");
            }
            self.coeffs.iter().map(|c| (c.num() * &lcm).div_exact(c.den()).expect("lcm is a multiple")).collect()
        };
        let den = polys.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
        let content = polys
            .iter()
            .map(|p| p.scale(&BigRational::from_integer(den.clone())))
            .fold(BigInt::zero(), |acc, p| int_gcd(&acc, &p.integer_content()));
        let mut factor = BigRational::new(den, content);
        if polys.last().and_then(UniPoly::leading_coeff).is_some_and(|c| c.is_negative()) {
            factor = -factor;
        }
        Self::from_polys(polys.iter().map(|p| p.scale(&factor)).collect())
    }

    /// Polynomial coefficients of the normalized form.
    pub fn polynomial_coeffs(&self) -> Vec<UniPoly> {
        self.normalized().coeffs.into_iter().map(|c| c.num().clone()).collect()
    }
}

impl Add for &ShiftOperator {
    type Output = ShiftOperator;

    fn add(self, other: &ShiftOperator) -> ShiftOperator {
        let len = self.coeffs.len().max(other.coeffs.len());
        ShiftOperator::new((0..len).map(|i| self.coeff(i).fadd(&other.coeff(i))).collect())
    }
}

impl Sub for &ShiftOperator {
    type Output = ShiftOperator;

    fn sub(self, other: &ShiftOperator) -> ShiftOperator {
        self + &(-other)
    }
}

impl Neg for &ShiftOperator {
    type Output = ShiftOperator;

    fn neg(self) -> ShiftOperator {
        ShiftOperator::new(self.coeffs.iter().map(Field::fneg).collect())
    }
}

/// `a b` with `N^i r(n) = r(n+i) N^i`.
pub fn ore_mul(a: &ShiftOperator, b: &ShiftOperator) -> ShiftOperator {
    if a.is_zero() || b.is_zero() {
        return ShiftOperator::zero();
    }
    let mut out = vec![RatFunc::zero_in(Var::N); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            if !bj.is_zero() {
                out[i + j] = out[i + j].fadd(&ai.fmul(&bj.shift(i as i64)));
            }
        }
    }
    ShiftOperator::new(out)
}

/// Right division: `a = q b + r` with `order(r) < order(b)`.
pub fn ore_divrem(a: &ShiftOperator, b: &ShiftOperator) -> Result<(ShiftOperator, ShiftOperator), OreError> {
    let d2 = b.order().ok_or(OreError::DivisionByZero)?;
    let lb = b.leading_coeff().expect("nonzero");
    let mut q = vec![RatFunc::zero_in(Var::N); a.coeffs.len().saturating_sub(d2)];
    let mut r = a.coeffs.clone();
    while r.len() > d2 {
        let top = r.len() - 1;
        let k = top - d2;
        let t = r[top].fdiv(&lb.shift(k as i64));
        for (j, bj) in b.coeffs.iter().enumerate() {
            r[j + k] = r[j + k].fsub(&t.fmul(&bj.shift(k as i64)));
        }
        debug_assert!(r[top].is_zero());
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
        q[k] = t;
    }
    Ok((ShiftOperator::new(q), ShiftOperator::new(r)))
}

/// `sum_k c_{M-k}(n+M) N^k`: the recurrence read at index `n + M`.
pub fn recurrence_to_ore(rec: &Recurrence) -> ShiftOperator {
    let m = rec.order();
    let c = rec.coeffs();
    ShiftOperator::from_polys((0..=m).map(|k| c[m - k].shift(m as i64)).collect()).normalized()
}

/// Inverse of [`recurrence_to_ore`]: `c_i(n) = r_{d-i}(n-d)`.
pub fn ore_to_recurrence(op: &ShiftOperator) -> Option<Recurrence> {
    let d = op.order()?;
    let r = op.polynomial_coeffs();
    Recurrence::new((0..=d).map(|i| r[d - i].shift(-(d as i64))).collect()).ok()
}

/// `sum_i r_i(at) a(at + i)`.
pub fn ore_apply(op: &ShiftOperator, terms: &SequenceTerms, at: i64) -> Result<BigRational, OreError> {
    let at_q = BigRational::from_integer(BigInt::from(at));
    let mut acc = BigRational::zero();
    for (i, r) in op.coeffs.iter().enumerate() {
        if r.is_zero() {
            continue;
        }
        let idx = at + i as i64;
        let a = terms.get(idx).ok_or(OreError::MissingTerm(idx))?;
        let v = r.eval(&at_q).ok_or(OreError::Singular(at))?;
        acc += v * a;
    }
    Ok(acc)
}

impl fmt::Display for ShiftOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.coeffs.iter().enumerate().rev().map(|(k, c)| {
            let mono = match k {
                0 => String::new(),
                1 => "N".to_string(),
                _ => format!("N^{k}"),
            };
            (c, mono)
        });
        write_combination(f, terms)
    }
}

impl fmt::Debug for ShiftOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ShiftOperator({self})")
    }
}

fn invalid(msg: impl Into<String>) -> ParseError {
    ParseError::new(ParseErrorKind::Invalid(msg.into()), 0)
}

/// Parses operator text in `n` and `N`, e.g. `(n+2)*N - (4*n+2)`.
pub fn parse_operator(text: &str) -> Result<ShiftOperator, ParseError> {
    eval_operator(&parse_ast(text, Dialect::Operator)?)
}

fn eval_operator(ast: &Ast) -> Result<ShiftOperator, ParseError> {
    Ok(match ast {
        Ast::Int(v) => ShiftOperator::coefficient(RatFunc::constant(Var::N, BigRational::from_integer(v.clone()))),
        Ast::Sym(s) if s == "n" => ShiftOperator::n(),
        Ast::Sym(_) => ShiftOperator::shift_power(1),
        Ast::Call(name, _) => return Err(invalid(format!("unexpected call {name}"))),
        Ast::Neg(a) => -&eval_operator(a)?,
        Ast::Bin(op, l, r) => {
            let (l, r) = (eval_operator(l)?, eval_operator(r)?);
            match op {
                BinOp::Add => &l + &r,
                BinOp::Sub => &l - &r,
                BinOp::Mul => ore_mul(&l, &r),
                BinOp::Div => ore_mul(&l, &ShiftOperator::coefficient(invert_coefficient(&r)?)),
            }
        }
        Ast::Pow(base, k) => {
            let base = eval_operator(base)?;
            let base = if *k < 0 { ShiftOperator::coefficient(invert_coefficient(&base)?) } else { base };
            (0..k.unsigned_abs()).fold(ShiftOperator::one(), |acc, _| ore_mul(&acc, &base))
        }
    })
}

fn invert_coefficient(op: &ShiftOperator) -> Result<RatFunc, ParseError> {
    match op.order() {
        Some(0) => Ok(op.coeffs[0].inv().expect("nonzero")),
        None => Err(invalid("division by zero")),
        Some(_) => Err(invalid("division by an operator involving N")),
    }
}

/// A linear form `sum_k r_k(n) a(n + k)` plus a free part.
#[derive(Clone)]
struct Linear {
    free: RatFunc,
    terms: std::collections::BTreeMap<i64, RatFunc>,
}

impl Linear {
    fn scalar(r: RatFunc) -> Self {
        Linear { free: r, terms: Default::default() }
    }

    fn as_scalar(&self) -> Option<&RatFunc> {
        self.terms.values().all(RatFunc::is_zero).then_some(&self.free)
    }

    fn combine(&self, other: &Linear, sign: bool) -> Linear {
        let pick = |a: &RatFunc, b: &RatFunc| if sign { a.fadd(b) } else { a.fsub(b) };
        let mut terms = self.terms.clone();
        for (k, v) in &other.terms {
            let cur = terms.remove(k).unwrap_or_else(|| RatFunc::zero_in(Var::N));
            terms.insert(*k, pick(&cur, v));
        }
        Linear { free: pick(&self.free, &other.free), terms }
    }

    fn scale(&self, r: &RatFunc) -> Linear {
        Linear { free: self.free.fmul(r), terms: self.terms.iter().map(|(k, v)| (*k, v.fmul(r))).collect() }
    }
}

/// Parses recurrence text such as `(n+1)*a(n) - (4*n-2)*a(n-1) = 0`.
///
/// Terms may use any shifts `a(n + k)`; the result is re-indexed so the
/// largest shift becomes `a(n)`.
pub fn parse_recurrence(text: &str) -> Result<Recurrence, ParseError> {
    let lin = eval_linear(&parse_ast(text, Dialect::Recurrence)?)?;
    if !lin.free.is_zero() {
        return Err(invalid("recurrence is not homogeneous in a"));
    }
    let terms: Vec<(i64, RatFunc)> = lin.terms.into_iter().filter(|(_, v)| !v.is_zero()).collect();
    let (Some(lo), Some(hi)) = (terms.first().map(|t| t.0), terms.last().map(|t| t.0)) else {
        return Err(invalid("recurrence has no a(...) terms"));
    };
    let mut c = vec![RatFunc::zero_in(Var::N); (hi - lo + 1) as usize];
    for (k, v) in terms {
        c[(hi - k) as usize] = v.shift(-hi);
    }
    let polys = ShiftOperator::new(c).polynomial_coeffs();
    Recurrence::new(polys).map_err(|e| invalid(e.to_string()))
}

fn eval_linear(ast: &Ast) -> Result<Linear, ParseError> {
    Ok(match ast {
        Ast::Int(v) => Linear::scalar(RatFunc::constant(Var::N, BigRational::from_integer(v.clone()))),
        Ast::Sym(_) => Linear::scalar(RatFunc::from_poly(UniPoly::var(Var::N))),
        Ast::Call(_, args) => {
            let arg = eval_linear(&args[0])?;
            let shift = arg
                .as_scalar()
                .filter(|r| r.is_polynomial() && r.num().degree() == Some(1) && r.num().coeff(1).is_one())
                .and_then(|r| {
                    let k = r.num().coeff(0);
                    k.is_integer().then(|| k.to_integer())
                })
                .ok_or_else(|| invalid("a(...) argument must be n + integer"))?;
            let k = i64::try_from(shift).map_err(|_| invalid("shift out of range"))?;
            let mut lin = Linear::scalar(RatFunc::zero_in(Var::N));
            lin.terms.insert(k, RatFunc::one_in(Var::N));
            lin
        }
        Ast::Neg(a) => eval_linear(a)?.scale(&RatFunc::constant(Var::N, -BigRational::one())),
        Ast::Bin(op, l, r) => {
            let (l, r) = (eval_linear(l)?, eval_linear(r)?);
            match op {
                BinOp::Add => l.combine(&r, true),
                BinOp::Sub => l.combine(&r, false),
                BinOp::Mul => match (l.as_scalar(), r.as_scalar()) {
                    (Some(s), _) => r.scale(s),
                    (_, Some(s)) => l.scale(s),
                    _ => return Err(invalid("product of two a(...) terms")),
                },
                BinOp::Div => {
                    let s = r.as_scalar().ok_or_else(|| invalid("division by an a(...) term"))?;
                    let inv = s.inv().map_err(|_| invalid("division by zero"))?;
                    l.scale(&inv)
                }
            }
        }
        Ast::Pow(base, k) => {
            let b = eval_linear(base)?;
            let s = b.as_scalar().ok_or_else(|| invalid("power of an a(...) term"))?.clone();
            let s = if *k < 0 { s.inv().map_err(|_| invalid("division by zero"))? } else { s };
            Linear::scalar((0..k.unsigned_abs()).fold(RatFunc::one_in(Var::N), |acc, _| acc.fmul(&s)))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sequence::TermOrigin;

    fn op(text: &str) -> ShiftOperator {
        parse_operator(text).unwrap()
    }

    #[test]
    fn products() {
        assert_eq!(ore_mul(&op("N-1"), &op("N^2-N-1")), op("N^3-2*N^2+1"));
        assert_eq!(ore_mul(&op("N"), &op("n")), op("(n+1)*N"));
        assert_eq!(ore_mul(&op("N^2+n"), &ShiftOperator::zero()), ShiftOperator::zero());
        assert_eq!(&ore_mul(&op("N"), &op("n")) - &ore_mul(&op("n"), &op("N")), op("N"));
    }

    #[test]
    fn division_examples() {
        let (q, r) = ore_divrem(&op("N^3-2*N^2+1"), &op("N^2-N-1")).unwrap();
        assert_eq!((q, r), (op("N-1"), ShiftOperator::zero()));
        let (q, r) = ore_divrem(&op("N^2"), &op("N-n")).unwrap();
        assert_eq!((q, r), (op("N+n+1"), op("n*(n+1)")));
        let a = op("(n+2)*N^2 - 3*N + n^2");
        assert_eq!(ore_divrem(&a, &a).unwrap(), (ShiftOperator::one(), ShiftOperator::zero()));
        assert_eq!(ore_divrem(&a, &ShiftOperator::zero()), Err(OreError::DivisionByZero));
    }

    #[test]
    fn recurrence_conversions() {
        let fib = parse_recurrence("a(n) - a(n-1) - a(n-2) = 0").unwrap();
        assert_eq!(recurrence_to_ore(&fib), op("N^2-N-1"));
        let pow2 = parse_recurrence("a(n)-2*a(n-1)=0").unwrap();
        assert_eq!(recurrence_to_ore(&pow2), op("N-2"));
        let cat = parse_recurrence("(n+1)*a(n) - (4*n-2)*a(n-1) = 0").unwrap();
        assert_eq!(recurrence_to_ore(&cat), op("(n+2)*N - (4*n+2)"));
        for rec in [fib, pow2, cat] {
            assert_eq!(ore_to_recurrence(&recurrence_to_ore(&rec)).unwrap(), rec);
        }
    }

    #[test]
    fn recurrence_text_forms() {
        let a = parse_recurrence("(n+2)*a(n+1) = (4*n+2)*a(n)").unwrap();
        assert_eq!(a, Recurrence::from_ints(&[&[1, 1], &[2, -4]]).unwrap());
        assert_eq!(parse_recurrence(&a.to_string()).unwrap(), a);
        assert!(parse_recurrence("a(n)*a(n-1) = 0").is_err());
        assert!(parse_recurrence("a(2*n) = 0").is_err());
        assert!(parse_recurrence("a(n) = 1").is_err());
        assert!(parse_recurrence("a(n)/2 - a(n-1)/3").is_ok());
    }

    #[test]
    fn application() {
        let fib = SequenceTerms::from_ints(0, &[0, 1, 1, 2, 3, 5, 8], TermOrigin::User);
        for n in 0..=4 {
            assert!(ore_apply(&op("N^2-N-1"), &fib, n).unwrap().is_zero());
        }
        let pow2 = SequenceTerms::from_ints(0, &[1, 2, 4, 8, 16], TermOrigin::User);
        for n in 0..=3 {
            assert!(ore_apply(&op("N-2"), &pow2, n).unwrap().is_zero());
        }
        assert_eq!(ore_apply(&op("N"), &pow2, 2).unwrap(), BigRational::from_integer(8.into()));
        assert_eq!(ore_apply(&op("N"), &pow2, 4), Err(OreError::MissingTerm(5)));
        assert_eq!(ore_apply(&op("1/(n-2)"), &pow2, 2), Err(OreError::Singular(2)));
    }

    #[test]
    fn rendering_round_trips() {
        for text in ["(n + 2)*N^2 - (4*n + 2)*N + 1", "-N + n^2", "((n + 1)/(n + 2))*N - 1"] {
            let a = op(text);
            assert_eq!(op(&a.to_string()), a, "{text}");
        }
        assert_eq!(op("(n+2)*N^2 - (4*n+2)*N + 1").to_string(), "(n + 2)*N^2 - (4*n + 2)*N + 1");
    }

    #[test]
    fn normalization() {
        let a = op("(1/(n+1))*N - 2/3");
        assert_eq!(a.normalized(), op("3*N - 2*n - 2"));
        assert_eq!(op("-2*N + 4").normalized(), op("N - 2"));
    }

    #[test]
    fn serde_round_trip() {
        for a in [op("(n+2)*N - (4*n+2)"), ShiftOperator::zero(), op("(1/(n+1))*N")] {
            let text = serde_json::to_string(&a).unwrap();
            assert_eq!(serde_json::from_str::<ShiftOperator>(&text).unwrap(), a);
        }
    }
}
