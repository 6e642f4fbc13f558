//! Annihilating polynomials `P(x, y)` with `P(x, f(x)) = 0` for generating
//! functions given by radicals.
//!
//! Each distinct radical gets a fresh variable `r` with `r^k = g`; the
//! expression becomes `num/den` in those variables, and the radicals are
//! cleared from `den*y - num` newest-first by norms (resultants against
//! the monic relations). The result is made squarefree and then shrunk to
//! the lowest-degree divisor that the series actually satisfies.

mod tower;

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{dense, from_ratfunc_coeffs, linalg, squarefree_part, BivarPoly, RatFunc, UniPoly, Var};
use crate::expr::{eval_series, EvalError, RadicalExpr};
use crate::series::TruncSeries;
use tower::{norm, reduce, MultiPoly, Relation, X, Y};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraicError {
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error("radical elimination produced the zero polynomial")]
    ZeroElimination,
    #[error("no annihilating divisor verified through x^{0}")]
    NotAnnihilated(i64),
}

/// Derives the annihilating polynomial of `e`, squarefree, normalized, and
/// of minimal `y`-degree among the divisors the search can find.
pub fn annihilating_polynomial(e: &RadicalExpr) -> Result<BivarPoly, AlgebraicError> {
    let raw = eliminate_radicals(e)?;
    let order = verification_order(e);
    match select_divisor(e, &raw, order) {
        Ok(p) => Ok(p),
        Err(AlgebraicError::NotAnnihilated(_)) => select_divisor(e, &raw, 2 * order),
        Err(err) => Err(err),
    }
}

/// `4 * (product of radical indices) * (max radicand degree + 1) + 32`.
pub fn verification_order(e: &RadicalExpr) -> i64 {
    let radicals = e.radicals();
    let index_product: i64 = radicals.iter().map(|(_, k)| i64::from(*k)).product();
    let max_deg = radicals.iter().map(|(g, _)| g.degree_bound()).max().unwrap_or(e.degree_bound()) as i64;
    4 * index_product * (max_deg + 1) + 32
}

/// True iff `sum p_i(x) f^i` vanishes through `x^order`.
pub fn verify_annihilation(p: &BivarPoly, f: &TruncSeries, order: i64) -> bool {
    if f.trunc_order() < order {
        return false;
    }
    let f = f.truncate(order);
    let value = evaluate_at_series(p, &f, order);
    value.is_zero() && value.trunc_order() >= order
}

fn evaluate_at_series(p: &BivarPoly, f: &TruncSeries, order: i64) -> TruncSeries {
    let mut acc = TruncSeries::zero(order);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(f).add(&TruncSeries::from_poly(c, order));
    }
    acc
}

fn radical_key(radicand: &RadicalExpr, k: u32) -> String {
    format!("root({radicand},{k})")
}

struct Tower {
    nvars: usize,
    vars: HashMap<String, usize>,
    relations: Vec<Relation>,
}

impl Tower {
    fn new(e: &RadicalExpr) -> Self {
        let mut vars = HashMap::new();
        for (radicand, k) in e.radicals() {
            let next = 2 + vars.len();
            vars.entry(radical_key(radicand, k)).or_insert(next);
        }
        Tower { nvars: 2 + vars.len(), vars, relations: Vec::new() }
    }

    fn constant(&self, c: BigRational) -> MultiPoly {
        MultiPoly::constant(self.nvars, c)
    }

    fn frac(&self, num: MultiPoly, den: MultiPoly) -> (MultiPoly, MultiPoly) {
        (reduce(&num, &self.relations), reduce(&den, &self.relations))
    }

    /// `(num, den)` with `e = num/den` in the tower.
    fn value(&mut self, e: &RadicalExpr) -> (MultiPoly, MultiPoly) {
        use RadicalExpr as R;
        let one = self.constant(BigRational::one());
        match e {
            R::Int(v) => (self.constant(BigRational::from_integer(v.clone())), one),
            R::X => (MultiPoly::var(self.nvars, X), one),
            R::Neg(a) => {
                let (n, d) = self.value(a);
                (n.neg(), d)
            }
            R::Add(a, b) | R::Sub(a, b) => {
                let (n1, d1) = self.value(a);
                let (n2, d2) = self.value(b);
                let (l, r) = (n1.mul(&d2), n2.mul(&d1));
                let num = if matches!(e, R::Add(..)) { l.add(&r) } else { l.sub(&r) };
                self.frac(num, d1.mul(&d2))
            }
            R::Mul(a, b) => {
                let (n1, d1) = self.value(a);
                let (n2, d2) = self.value(b);
                self.frac(n1.mul(&n2), d1.mul(&d2))
            }
            R::Div(a, b) => {
                let (n1, d1) = self.value(a);
                let (n2, d2) = self.value(b);
                self.frac(n1.mul(&d2), d1.mul(&n2))
            }
            R::Pow(a, k) => {
                let (n, d) = self.value(a);
                self.frac(n.pow(*k), d.pow(*k))
            }
            R::Sqrt(a) => self.radical(a, 2),
            R::Root(a, k) => self.radical(a, *k),
        }
    }

    // (n/d)^(1/k) = r/d with r^k = n d^(k-1), keeping every relation monic.
    fn radical(&mut self, radicand: &RadicalExpr, k: u32) -> (MultiPoly, MultiPoly) {
        let (n, d) = self.value(radicand);
        let var = self.vars[&radical_key(radicand, k)];
        if !self.relations.iter().any(|r| r.var == var) {
            let g = reduce(&n.mul(&d.pow(k - 1)), &self.relations);
            self.relations.push(Relation { var, index: k, radicand: g });
        }
        (MultiPoly::var(self.nvars, var), d)
    }
}

/// `P` with `P(x, f) = 0` for every conjugate choice of the radicals.
fn eliminate_radicals(e: &RadicalExpr) -> Result<BivarPoly, AlgebraicError> {
    let mut tower = Tower::new(e);
    let (num, den) = tower.value(e);
    let y = MultiPoly::var(tower.nvars, Y);
    let mut p = reduce(&den.mul(&y).sub(&num), &tower.relations);
    for i in (0..tower.relations.len()).rev() {
        let rel = tower.relations[i].clone();
        p = norm(&p, &rel, &tower.relations[..i]);
        if p.is_zero() {
            return Err(AlgebraicError::ZeroElimination);
        }
    }
    let bivar = p.to_bivar();
    if bivar.is_zero() || bivar.deg_y() == Some(0) {
        return Err(AlgebraicError::ZeroElimination);
    }
    Ok(bivar)
}

fn select_divisor(e: &RadicalExpr, raw: &BivarPoly, order: i64) -> Result<BivarPoly, AlgebraicError> {
    let f = eval_series(e, order)?;
    let p = squarefree_part(raw);
    if !verify_annihilation(&p, &f, order) {
        return Err(AlgebraicError::NotAnnihilated(order));
    }
    let a = p.deg_y().expect("nonzero");
    for d in 1..a {
        if let Some(q) = find_divisor(&p, &f, d, order) {
            return Ok(q);
        }
    }
    Ok(p)
}

/// Looks for a divisor `Q` of `P` with `deg_y Q = d` and `Q(x, f) = 0`.
///
/// Candidates come from the nullspace of the truncated series equations;
/// a candidate is accepted only if it divides `P` exactly and its cofactor
/// provably does not vanish at `f` (a nonzero coefficient is exhibited).
/// Since `P(x, f) = 0` holds exactly and power series form an integral
/// domain, that makes `Q(x, f) = 0` exact as well.
fn find_divisor(p: &BivarPoly, f: &TruncSeries, d: usize, order: i64) -> Option<BivarPoly> {
    let dx = p.deg_x();
    let unknowns = (d + 1) * (dx + 1);
    if (order + 1) as usize <= unknowns + 8 {
        return None;
    }
    let powers: Vec<Vec<BigRational>> = {
        let mut acc = TruncSeries::constant(BigRational::one(), order);
        let mut out = Vec::with_capacity(d + 1);
        for _ in 0..=d {
            out.push(acc.coefficients(order));
            acc = acc.mul(f);
        }
        out
    };
    let rows: Vec<Vec<BigRational>> = (0..=order as usize)
        .map(|m| {
            let mut row = Vec::with_capacity(unknowns);
            for pw in &powers {
                for j in 0..=dx {
                    row.push(if j <= m { pw[m - j].clone() } else { BigRational::zero() });
                }
            }
            row
        })
        .collect();
    let pf: Vec<RatFunc> = p.coeffs().iter().cloned().map(RatFunc::from_poly).collect();
    for v in linalg::nullspace(rows, unknowns) {
        let q = BivarPoly::new(v.chunks(dx + 1).map(|c| UniPoly::new(Var::X, c.to_vec())).collect()).normalized();
        if q.deg_y() != Some(d) {
            continue;
        }
        let qf: Vec<RatFunc> = q.coeffs().iter().cloned().map(RatFunc::from_poly).collect();
        let (quot, rem) = dense::divrem(&pf, &qf);
        if !rem.is_empty() {
            continue;
        }
        let cofactor = from_ratfunc_coeffs(&quot);
        if !evaluate_at_series(&cofactor, f, order).is_zero() {
            return Some(q);
        }
    }
    None
}

/// `gcd_y(P, dP/dy) = 1` over `Q(x)`.
pub fn is_squarefree(p: &BivarPoly) -> bool {
    let lift = |q: &BivarPoly| -> Vec<RatFunc> { q.coeffs().iter().cloned().map(RatFunc::from_poly).collect() };
    dense::gcd(&lift(p), &lift(&p.derivative_y())).len() <= 1
}
