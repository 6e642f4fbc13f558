//! Generating functions written with radicals, in the OEIS/Maple ASCII
//! convention: explicit `*`, `^` powers, `sqrt(g)` and `root(g, k)`.

pub(crate) mod ast;
mod lexer;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};

use crate::series::{series_require_power, SeriesError, TruncSeries};
use ast::{parse_ast, Ast, BinOp, Dialect};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("unexpected {0:?}")]
    Unexpected(String),
    #[error("unexpected end of input")]
    UnexpectedEnd,
    #[error("unknown identifier {0:?}")]
    UnknownIdentifier(String),
    #[error("exponent is not an integer constant")]
    NonIntegerExponent,
    #[error("exponent out of range")]
    ExponentOutOfRange,
    #[error("{0} takes {1} argument(s)")]
    Arity(String, usize),
    #[error("root index must be an integer >= 2")]
    BadRootIndex,
    #[error("{0}")]
    Invalid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("syntax error at offset {offset}: {kind}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    /// Byte offset into the input.
    pub offset: usize,
}

impl ParseError {
    pub(crate) fn new(kind: ParseErrorKind, offset: usize) -> Self {
        ParseError { kind, offset }
    }
}

/// Expression tree of a generating function in `x`.
///
/// Negative integer powers never appear: the parser rewrites `g^-k` as
/// `1/g^k`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum RadicalExpr {
    Int(BigInt),
    X,
    Neg(Box<RadicalExpr>),
    Add(Box<RadicalExpr>, Box<RadicalExpr>),
    Sub(Box<RadicalExpr>, Box<RadicalExpr>),
    Mul(Box<RadicalExpr>, Box<RadicalExpr>),
    Div(Box<RadicalExpr>, Box<RadicalExpr>),
    Pow(Box<RadicalExpr>, u32),
    Sqrt(Box<RadicalExpr>),
    Root(Box<RadicalExpr>, u32),
}

/// Parses generating-function text.
pub fn parse(text: &str) -> Result<RadicalExpr, ParseError> {
    let ast = parse_ast(text, Dialect::GenFunc)?;
    lower(&ast)
}

fn lower(ast: &Ast) -> Result<RadicalExpr, ParseError> {
    use RadicalExpr as R;
    let b = |a: &Ast| lower(a).map(Box::new);
    Ok(match ast {
        Ast::Int(v) => R::Int(v.clone()),
        Ast::Sym(_) => R::X,
        Ast::Neg(a) => R::Neg(b(a)?),
        Ast::Bin(op, l, r) => {
            let (l, r) = (b(l)?, b(r)?);
            match op {
                BinOp::Add => R::Add(l, r),
                BinOp::Sub => R::Sub(l, r),
                BinOp::Mul => R::Mul(l, r),
                BinOp::Div => R::Div(l, r),
            }
        }
        Ast::Pow(base, k) => {
            let e = u32::try_from(k.unsigned_abs()).expect("range checked by the parser");
            let pow = R::Pow(b(base)?, e);
            if *k < 0 {
                R::Div(Box::new(R::Int(BigInt::one())), Box::new(pow))
            } else {
                pow
            }
        }
        Ast::Call(name, args) if name == "sqrt" => R::Sqrt(b(&args[0])?),
        Ast::Call(_, args) => {
            let k = match &args[1] {
                Ast::Int(k) => k.to_u32().expect("checked by the parser"),
                _ => unreachable!("checked by the parser"),
            };
            R::Root(b(&args[0])?, k)
        }
    })
}

impl RadicalExpr {
    fn precedence(&self) -> u8 {
        match self {
            RadicalExpr::Add(..) | RadicalExpr::Sub(..) => 1,
            RadicalExpr::Mul(..) | RadicalExpr::Div(..) => 2,
            RadicalExpr::Neg(..) => 3,
            RadicalExpr::Pow(..) => 4,
            _ => 5,
        }
    }

    /// Maximum nesting of radicals.
    pub fn radical_depth(&self) -> usize {
        use RadicalExpr as R;
        match self {
            R::Int(_) | R::X => 0,
            R::Neg(a) | R::Pow(a, _) => a.radical_depth(),
            R::Add(a, b) | R::Sub(a, b) | R::Mul(a, b) | R::Div(a, b) => a.radical_depth().max(b.radical_depth()),
            R::Sqrt(a) | R::Root(a, _) => 1 + a.radical_depth(),
        }
    }

    /// Crude bound on the `x`-degree of the expression's polynomial parts.
    pub fn degree_bound(&self) -> usize {
        use RadicalExpr as R;
        match self {
            R::Int(_) => 0,
            R::X => 1,
            R::Neg(a) | R::Sqrt(a) | R::Root(a, _) => a.degree_bound(),
            R::Add(a, b) | R::Sub(a, b) => a.degree_bound().max(b.degree_bound()),
            R::Mul(a, b) | R::Div(a, b) => a.degree_bound() + b.degree_bound(),
            R::Pow(a, k) => a.degree_bound().saturating_mul(*k as usize),
        }
    }

    /// Radical subterms `(radicand, index)` in evaluation (post-)order.
    pub fn radicals(&self) -> Vec<(&RadicalExpr, u32)> {
        let mut out = Vec::new();
        self.collect_radicals(&mut out);
        out
    }

    fn collect_radicals<'a>(&'a self, out: &mut Vec<(&'a RadicalExpr, u32)>) {
        use RadicalExpr as R;
        match self {
            R::Int(_) | R::X => {}
            R::Neg(a) | R::Pow(a, _) => a.collect_radicals(out),
            R::Add(a, b) | R::Sub(a, b) | R::Mul(a, b) | R::Div(a, b) => {
                a.collect_radicals(out);
                b.collect_radicals(out);
            }
            R::Sqrt(a) => {
                a.collect_radicals(out);
                out.push((a, 2));
            }
            R::Root(a, k) => {
                a.collect_radicals(out);
                out.push((a, *k));
            }
        }
    }

    /// Default working order: `8 * (radical depth + degree bound) + 64`.
    pub fn default_order(&self) -> i64 {
        8 * (self.radical_depth() + self.degree_bound()) as i64 + 64
    }
}

impl fmt::Display for RadicalExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RadicalExpr as R;
        let child = |f: &mut fmt::Formatter<'_>, e: &RadicalExpr, min: u8| -> fmt::Result {
            if e.precedence() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            R::Int(v) => write!(f, "{v}"),
            R::X => f.write_str("x"),
            R::Neg(a) => {
                f.write_str("-")?;
                child(f, a, 3)
            }
            R::Add(a, b) | R::Sub(a, b) => {
                child(f, a, 1)?;
                f.write_str(if matches!(self, R::Add(..)) { "+" } else { "-" })?;
                child(f, b, 2)
            }
            R::Mul(a, b) | R::Div(a, b) => {
                child(f, a, 2)?;
                f.write_str(if matches!(self, R::Mul(..)) { "*" } else { "/" })?;
                child(f, b, 3)
            }
            R::Pow(a, k) => {
                child(f, a, 5)?;
                write!(f, "^{k}")
            }
            R::Sqrt(a) => write!(f, "sqrt({a})"),
            R::Root(a, k) => write!(f, "root({a},{k})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("series did not reach order {0} within the precision budget")]
    PrecisionExhausted(i64),
}

const MAX_PRECISION_ROUNDS: usize = 8;

/// Power series of `e` through `x^order`, with principal branches for all
/// radicals.
pub fn eval_series(e: &RadicalExpr, order: i64) -> Result<TruncSeries, EvalError> {
    let order = order.max(0);
    let mut working = order + 8;
    let mut last_err = None;
    for _ in 0..MAX_PRECISION_ROUNDS {
        match eval_at(e, working) {
            Ok(s) if s.trunc_order() >= order => {
                return Ok(series_require_power(&s.truncate(order))?);
            }
            Ok(s) => {
                working += (order - s.trunc_order()) + 8;
            }
            Err(err @ SeriesError::DivisionByZero(_)) => {
                last_err = Some(err);
                working = 2 * working + 8;
            }
            Err(err) => return Err(err.into()),
        }
    }
    Err(match last_err {
        Some(err) => err.into(),
        None => EvalError::PrecisionExhausted(order),
    })
}

fn eval_at(e: &RadicalExpr, t: i64) -> Result<TruncSeries, SeriesError> {
    use RadicalExpr as R;
    Ok(match e {
        R::Int(v) => TruncSeries::constant(BigRational::from_integer(v.clone()), t),
        R::X => TruncSeries::monomial(1, t),
        R::Neg(a) => eval_at(a, t)?.neg(),
        R::Add(a, b) => eval_at(a, t)?.add(&eval_at(b, t)?),
        R::Sub(a, b) => eval_at(a, t)?.sub(&eval_at(b, t)?),
        R::Mul(a, b) => eval_at(a, t)?.mul(&eval_at(b, t)?),
        R::Div(a, b) => eval_at(a, t)?.div(&eval_at(b, t)?)?,
        R::Pow(a, k) => eval_at(a, t)?.pow(*k),
        R::Sqrt(a) => eval_at(a, t)?.nth_root(2)?,
        R::Root(a, k) => eval_at(a, t)?.nth_root(*k)?,
    })
}
