//! Precedence-climbing parser shared by the generating-function,
//! operator, and recurrence grammars.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::lexer::{tokenize, Tok};
use super::{ParseError, ParseErrorKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Dialect {
    /// `x`, `sqrt(g)`, `root(g, k)`
    GenFunc,
    /// `n`, `N`
    Operator,
    /// `n`, `a(n + k)`, optional `lhs = rhs`
    Recurrence,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) enum Ast {
    Int(BigInt),
    Sym(String),
    Call(String, Vec<Ast>),
    Neg(Box<Ast>),
    Bin(BinOp, Box<Ast>, Box<Ast>),
    /// Exponent already folded to an integer.
    Pow(Box<Ast>, i64),
}

pub(crate) fn parse_ast(text: &str, dialect: Dialect) -> Result<Ast, ParseError> {
    let toks = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, end: text.len(), dialect };
    let lhs = p.expr()?;
    let ast = if dialect == Dialect::Recurrence && p.eat(&Tok::Equals) {
        let rhs = p.expr()?;
        Ast::Bin(BinOp::Sub, Box::new(lhs), Box::new(rhs))
    } else {
        lhs
    };
    if let Some((tok, off)) = p.toks.get(p.pos) {
        return Err(ParseError::new(ParseErrorKind::Unexpected(tok.describe()), *off));
    }
    Ok(ast)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    dialect: Dialect,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(_, o)| *o)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == Some(tok) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn unexpected(&self) -> ParseError {
        match self.toks.get(self.pos) {
            Some((tok, off)) => ParseError::new(ParseErrorKind::Unexpected(tok.describe()), *off),
            None => ParseError::new(ParseErrorKind::UnexpectedEnd, self.end),
        }
    }

    fn expect(&mut self, tok: &Tok) -> Result<(), ParseError> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected())
        }
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.term()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Plus) => BinOp::Add,
                Some(Tok::Minus) => BinOp::Sub,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.term()?;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut lhs = self.unary()?;
        loop {
            let op = match self.peek() {
                Some(Tok::Star) => BinOp::Mul,
                Some(Tok::Slash) => BinOp::Div,
                _ => return Ok(lhs),
            };
            self.pos += 1;
            let rhs = self.unary()?;
            lhs = Ast::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Ast, ParseError> {
        if self.eat(&Tok::Minus) {
            return Ok(Ast::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Ast, ParseError> {
        let base = self.atom()?;
        if !self.eat(&Tok::Caret) {
            return Ok(base);
        }
        let at = self.offset();
        let exponent = self.unary()?;
        let k = fold_integer(&exponent).ok_or_else(|| ParseError::new(ParseErrorKind::NonIntegerExponent, at))?;
        let k = k
            .to_i64()
            .filter(|k| k.unsigned_abs() <= u64::from(u32::MAX))
            .ok_or_else(|| ParseError::new(ParseErrorKind::ExponentOutOfRange, at))?;
        Ok(Ast::Pow(Box::new(base), k))
    }

    fn atom(&mut self) -> Result<Ast, ParseError> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(v)) => {
                self.pos += 1;
                Ok(Ast::Int(v))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(&Tok::RParen)?;
                Ok(inner)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat(&Tok::LParen) {
                    let arity = match (self.dialect, name.as_str()) {
                        (Dialect::GenFunc, "sqrt") => 1,
                        (Dialect::GenFunc, "root") => 2,
                        (Dialect::Recurrence, "a") => 1,
                        _ => return Err(ParseError::new(ParseErrorKind::UnknownIdentifier(name), at)),
                    };
                    let mut args = vec![self.expr()?];
                    let mut arg_offsets = vec![at];
                    while self.eat(&Tok::Comma) {
                        arg_offsets.push(self.offset());
                        args.push(self.expr()?);
                    }
                    if args.len() != arity {
                        return Err(ParseError::new(ParseErrorKind::Arity(name, arity), at));
                    }
                    self.expect(&Tok::RParen)?;
                    if name == "root" && !matches!(&args[1], Ast::Int(k) if k.to_u32().is_some_and(|k| k >= 2)) {
                        return Err(ParseError::new(ParseErrorKind::BadRootIndex, arg_offsets[1]));
                    }
                    return Ok(Ast::Call(name, args));
                }
                let known = match self.dialect {
                    Dialect::GenFunc => name == "x",
                    Dialect::Operator => name == "n" || name == "N",
                    Dialect::Recurrence => name == "n",
                };
                if known {
                    Ok(Ast::Sym(name))
                } else {
                    Err(ParseError::new(ParseErrorKind::UnknownIdentifier(name), at))
                }
            }
            _ => Err(self.unexpected()),
        }
    }
}

/// Evaluates an exponent made only of integer literals.
fn fold_integer(ast: &Ast) -> Option<BigInt> {
    match ast {
        Ast::Int(v) => Some(v.clone()),
        Ast::Neg(a) => fold_integer(a).map(|v| -v),
        Ast::Bin(op, a, b) => {
            let (a, b) = (fold_integer(a)?, fold_integer(b)?);
            match op {
                BinOp::Add => Some(a + b),
                BinOp::Sub => Some(a - b),
                BinOp::Mul => Some(a * b),
                BinOp::Div => {
                    if b.is_zero() || !(&a % &b).is_zero() {
                        None
                    } else {
                        Some(a / b)
                    }
                }
            }
        }
        Ast::Pow(a, k) => {
            let a = fold_integer(a)?;
            if *k < 0 {
                // only +-1 have integer reciprocals
                return if a.abs() == BigInt::from(1) { Some(num_traits::pow(a, k.unsigned_abs() as usize)) } else { None };
            }
            Some(num_traits::pow(a, (*k).try_into().ok()?))
        }
        Ast::Sym(_) | Ast::Call(..) => None,
    }
}
