//! Algebraic equation to linear ODE, and linear ODE to P-recurrence.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{dense, linalg, to_ratfunc_coeffs, write_combination, BivarPoly, Field, RatFunc, UniPoly, Var};
use crate::series::TruncSeries;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum HolonomicError {
    #[error("P_y is not invertible modulo P (P is not squarefree in y)")]
    NotSquarefree,
    #[error("the algebraic equation has no y")]
    Constant,
    #[error("no linear dependency among f, f', ..., f^({0})")]
    NoDependency(usize),
    #[error("the {0} has only zero coefficients")]
    Zero(&'static str),
    #[error("coefficient in {found} where {expected} was expected")]
    WrongVariable { expected: Var, found: Var },
}

/// `sum_{i=0}^{L} q_i(x) f^(i)(x) = 0`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "OdeWire", into = "OdeWire")]
pub struct LinearODE {
    q: Vec<UniPoly>,
}

#[derive(Serialize, Deserialize)]
struct OdeWire {
    order: usize,
    q: Vec<UniPoly>,
}

impl TryFrom<OdeWire> for LinearODE {
    type Error = HolonomicError;

    fn try_from(w: OdeWire) -> Result<Self, Self::Error> {
        let ode = LinearODE::new(w.q)?;
        if ode.order() != w.order {
            return Err(HolonomicError::Zero("ODE leading term"));
        }
        Ok(ode)
    }
}

impl From<LinearODE> for OdeWire {
    fn from(ode: LinearODE) -> Self {
        OdeWire { order: ode.order(), q: ode.q }
    }
}

impl LinearODE {
    /// Normalizes: rational coefficients are cleared, integer content
    /// removed, and the lowest nonzero coefficient of `q_L` made positive.
    pub fn new(q: Vec<UniPoly>) -> Result<Self, HolonomicError> {
        let q = normalize_coeffs(q, Var::X, "ODE")?;
        let sign_neg = q.last().and_then(|p| p.trailing_coeff()).is_some_and(|c| c.is_negative());
        let q = if sign_neg { q.iter().map(|p| -p).collect() } else { q };
        Ok(LinearODE { q })
    }

    pub fn order(&self) -> usize {
        self.q.len() - 1
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.q
    }

    /// `sum q_i D^i f`, reliable through `f.trunc_order() - L`.
    pub fn apply(&self, f: &TruncSeries) -> TruncSeries {
        let order = f.trunc_order() - self.order() as i64;
        let mut acc = TruncSeries::zero(order);
        let mut d = f.clone();
        for q in &self.q {
            acc = acc.add(&d.mul(&TruncSeries::from_poly(q, d.trunc_order())).truncate(order));
            d = d.derivative();
        }
        acc
    }
}

impl fmt::Display for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.q.iter().enumerate().rev().map(|(i, q)| {
            let mono = match i {
                0 => "f".to_string(),
                1 => "f'".to_string(),
                2 => "f''".to_string(),
                _ => format!("f^({i})"),
            };
            (q, mono)
        });
        write_combination(f, terms)?;
        f.write_str(" = 0")
    }
}

impl fmt::Debug for LinearODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearODE({self})")
    }
}

/// `sum_{i=0}^{M} c_i(n) a(n-i) = 0` for every `n >= 0`, with `a(k) = 0`
/// for `k < 0`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RecWire", into = "RecWire")]
pub struct Recurrence {
    c: Vec<UniPoly>,
}

#[derive(Serialize, Deserialize)]
struct RecWire {
    order: usize,
    c: Vec<UniPoly>,
}

impl TryFrom<RecWire> for Recurrence {
    type Error = HolonomicError;

    fn try_from(w: RecWire) -> Result<Self, Self::Error> {
        let rec = Recurrence::new(w.c)?;
        if rec.order() != w.order {
            return Err(HolonomicError::Zero("recurrence trailing term"));
        }
        Ok(rec)
    }
}

impl From<Recurrence> for RecWire {
    fn from(rec: Recurrence) -> Self {
        RecWire { order: rec.order(), c: rec.c }
    }
}

impl Recurrence {
    /// Normalizes: trailing zero coefficients dropped, rational
    /// coefficients cleared, integer content removed, and the leading
    /// coefficient of `c_0` made positive. `c_0` must be nonzero.
    pub fn new(c: Vec<UniPoly>) -> Result<Self, HolonomicError> {
        if c.first().is_none_or(|p| p.is_zero()) {
            return Err(HolonomicError::Zero("recurrence leading term"));
        }
        let c = normalize_coeffs(c, Var::N, "recurrence")?;
        let sign_neg = c[0].leading_coeff().is_some_and(|v| v.is_negative());
        let c = if sign_neg { c.iter().map(|p| -p).collect() } else { c };
        Ok(Recurrence { c })
    }

    pub fn from_ints(rows: &[&[i64]]) -> Result<Self, HolonomicError> {
        Self::new(rows.iter().map(|r| UniPoly::from_ints(Var::N, r)).collect())
    }

    pub fn order(&self) -> usize {
        self.c.len() - 1
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.c
    }

    /// `sum c_i(n) a(n-i)` with `a(k) = 0` for `k < 0`; `terms[k] = a(k)`.
    /// `None` if a needed term is beyond the slice.
    pub fn residual(&self, terms: &[BigRational], n: i64) -> Option<BigRational> {
        let mut acc = BigRational::zero();
        for (i, c) in self.c.iter().enumerate() {
            let k = n - i as i64;
            if k < 0 {
                continue;
            }
            let a = terms.get(usize::try_from(k).ok()?)?;
            if !a.is_zero() {
                acc += c.eval_int(n) * a;
            }
        }
        Some(acc)
    }

    /// First `n` in `from..terms.len()` where the residual is nonzero.
    pub fn first_failure(&self, terms: &[BigRational], from: i64) -> Option<i64> {
        (from.max(0)..terms.len() as i64).find(|&n| !self.residual(terms, n).expect("n < len").is_zero())
    }

    /// Holds at every `n` in `0..terms.len()`, negative indices reading 0.
    pub fn annihilates(&self, terms: &[BigRational]) -> bool {
        self.first_failure(terms, 0).is_none()
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.c.iter().enumerate().map(|(i, c)| {
            let mono = if i == 0 { "a(n)".to_string() } else { format!("a(n - {i})") };
            (c, mono)
        });
        write_combination(f, terms)?;
        f.write_str(" = 0")
    }
}

impl fmt::Debug for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Recurrence({self})")
    }
}

/// Clears denominators jointly, drops trailing zeros, removes the joint
/// integer content. Leaves signs alone.
fn normalize_coeffs(mut c: Vec<UniPoly>, var: Var, what: &'static str) -> Result<Vec<UniPoly>, HolonomicError> {
    while c.last().is_some_and(|p| p.is_zero()) {
        c.pop();
    }
    if c.is_empty() {
        return Err(HolonomicError::Zero(what));
    }
    if let Some(p) = c.iter().find(|p| !p.is_constant() && p.variable() != var) {
        return Err(HolonomicError::WrongVariable { expected: var, found: p.variable() });
    }
    let lcm = c.iter().fold(BigInt::one(), |acc, p| acc.lcm(&p.denominator_lcm()));
    let scale = BigRational::from_integer(lcm);
    let c: Vec<UniPoly> = c.iter().map(|p| p.scale(&scale).with_var(var)).collect();
    let content = c.iter().fold(BigInt::zero(), |acc, p| acc.gcd(&p.integer_content()));
    let inv = BigRational::new(BigInt::one(), content);
    Ok(c.iter().map(|p| p.scale(&inv)).collect())
}

/// Lowest-order linear ODE satisfied by every root of the squarefree `P`.
pub fn algeq_to_ode(p: &BivarPoly) -> Result<LinearODE, HolonomicError> {
    let a = match p.deg_y() {
        Some(a) if a > 0 => a,
        _ => return Err(HolonomicError::Constant),
    };
    let pf = to_ratfunc_coeffs(p);
    let py = to_ratfunc_coeffs(&p.derivative_y());
    let px = to_ratfunc_coeffs(&p.derivative_x());
    let (g, inv_py, _) = dense::ext_gcd(&py, &pf);
    if g.len() != 1 {
        return Err(HolonomicError::NotSquarefree);
    }
    let reduce = |v: &[RatFunc]| -> Vec<RatFunc> { dense::divrem(v, &pf).1 };
    let y_prime = reduce(&dense::neg(&dense::mul(&px, &inv_py)));
    let derive = |v: &[RatFunc]| -> Vec<RatFunc> {
        let mut coeffwise: Vec<RatFunc> = v.iter().map(RatFunc::derivative).collect();
        dense::trim(&mut coeffwise);
        let chain = dense::mul(&dense::derivative(v), &y_prime);
        reduce(&dense::add(&coeffwise, &chain))
    };

    let mut reps = vec![reduce(&[RatFunc::zero_in(Var::X), RatFunc::one_in(Var::X)])];
    for l in 0..=a {
        if l > 0 {
            let next = derive(&reps[l - 1]);
            reps.push(next);
        }
        if let Some(q) = dependency(&reps, a) {
            return LinearODE::new(clear_ratfuncs(q));
        }
    }
    Err(HolonomicError::NoDependency(a))
}

/// A combination `sum q_i reps[i] = 0` with `q_last = 1`, if one exists.
fn dependency(reps: &[Vec<RatFunc>], dim: usize) -> Option<Vec<RatFunc>> {
    let cols = reps.len();
    let entry = |r: &Vec<RatFunc>, k: usize| r.get(k).cloned().unwrap_or_else(|| RatFunc::zero_in(Var::X));
    let rows: Vec<Vec<RatFunc>> = (0..dim).map(|k| reps.iter().map(|r| entry(r, k)).collect()).collect();
    let basis = linalg::nullspace(rows, cols);
    let v = basis.into_iter().find(|v| !v[cols - 1].fis_zero())?;
    let lead = v[cols - 1].clone();
    Some(v.iter().map(|c| c.fdiv(&lead)).collect())
}

/// Multiplies by the common denominator and divides out the common
/// polynomial factor; the result is a polynomial vector.
fn clear_ratfuncs(q: Vec<RatFunc>) -> Vec<UniPoly> {
    let mut lcm = UniPoly::one(Var::X);
    for c in &q {
        let g = lcm.gcd(c.den()).expect("nonzero");
        lcm = (&lcm * c.den()).div_exact(&g).expect("gcd divides");
    }
    let polys: Vec<UniPoly> =
        q.iter().map(|c| (c.num() * &lcm).div_exact(c.den()).expect("lcm is a multiple")).collect();
    let g = polys
        .iter()
        .filter(|p| !p.is_zero())
        .try_fold(UniPoly::zero(Var::X), |acc, p| if acc.is_zero() { Ok(p.monic()) } else { acc.gcd(p) })
        .expect("nonzero");
    polys.iter().map(|p| p.div_exact(&g).expect("common factor")).collect()
}

/// `z (z-1) ... (z-i+1)` with `z = n + shift`.
fn falling_factorial(shift: i64, i: usize) -> UniPoly {
    (0..i as i64).fold(UniPoly::one(Var::N), |acc, k| {
        &acc * &UniPoly::new(Var::N, vec![BigRational::from_integer(BigInt::from(shift - k)), BigRational::one()])
    })
}

/// Coefficient extraction: the ODE's `x^m` coefficient, re-indexed so the
/// highest shift lands on `a(n)`.
pub fn ode_to_recurrence(ode: &LinearODE) -> Recurrence {
    // each q_ij x^j D^i contributes q_ij ff(m+i-j, i) a(m+i-j) at x^m
    let mut by_shift: Vec<(i64, usize, BigRational)> = Vec::new();
    for (i, q) in ode.coeffs().iter().enumerate() {
        for (j, c) in q.coeffs().iter().enumerate() {
            if !c.is_zero() {
                by_shift.push((i as i64 - j as i64, i, c.clone()));
            }
        }
    }
    let smax = by_shift.iter().map(|t| t.0).max().expect("nonzero ODE");
    let smin = by_shift.iter().map(|t| t.0).min().expect("nonzero ODE");
    let mut c = vec![UniPoly::zero(Var::N); (smax - smin + 1) as usize];
    for (s, i, q) in by_shift {
        let k = (smax - s) as usize;
        c[k] = &c[k] + &falling_factorial(s - smax, i).scale(&q);
    }
    // a vanishing c_0 means the relation holds one index further down
    let lead = c.iter().position(|p| !p.is_zero()).expect("falling factorials of distinct degree");
    let c: Vec<UniPoly> = c[lead..].iter().map(|p| p.shift(lead as i64)).collect();
    Recurrence::new(c).expect("c_0 nonzero")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::{eval_series, parse};

    fn bp(rows: &[&[i64]]) -> BivarPoly {
        BivarPoly::from_int_rows(rows)
    }

    fn ode(rows: &[&[i64]]) -> LinearODE {
        LinearODE::new(rows.iter().map(|r| UniPoly::from_ints(Var::X, r)).collect()).unwrap()
    }

    #[test]
    fn sqrt_ode() {
        assert_eq!(algeq_to_ode(&bp(&[&[-1, 4], &[], &[1]])).unwrap(), ode(&[&[2], &[1, -4]]));
    }

    #[test]
    fn geometric_ode() {
        assert_eq!(algeq_to_ode(&bp(&[&[-1], &[1, -1]])).unwrap(), ode(&[&[-1], &[1, -1]]));
    }

    #[test]
    fn catalan_ode_annihilates_series() {
        let d = algeq_to_ode(&bp(&[&[1], &[-1], &[0, 1]])).unwrap();
        assert!(d.order() <= 2);
        let f = eval_series(&parse("(1-sqrt(1-4*x))/(2*x)").unwrap(), 40).unwrap();
        let r = d.apply(&f);
        assert!(r.is_zero());
        assert!(r.trunc_order() >= 38);
    }

    #[test]
    fn recurrence_examples() {
        assert_eq!(ode_to_recurrence(&ode(&[&[-1], &[1]])), Recurrence::from_ints(&[&[0, 1], &[-1]]).unwrap());
        assert_eq!(
            ode_to_recurrence(&ode(&[&[2], &[1, -4]])),
            Recurrence::from_ints(&[&[0, 1], &[6, -4]]).unwrap()
        );
    }

    #[test]
    fn catalan_recurrence_on_300_terms() {
        let d = algeq_to_ode(&bp(&[&[1], &[-1], &[0, 1]])).unwrap();
        let rec = ode_to_recurrence(&d);
        let f = eval_series(&parse("(1-sqrt(1-4*x))/(2*x)").unwrap(), 299).unwrap();
        assert!(rec.annihilates(&f.coefficients(299)));
    }

    #[test]
    fn degenerate_inputs() {
        let rec = ode_to_recurrence(&algeq_to_ode(&bp(&[&[0, -1], &[1]])).unwrap());
        assert_eq!(rec, Recurrence::from_ints(&[&[-1, 1]]).unwrap());
        let rec = ode_to_recurrence(&algeq_to_ode(&bp(&[&[-3], &[1]])).unwrap());
        assert_eq!(rec, Recurrence::from_ints(&[&[0, 1]]).unwrap());
        assert_eq!(algeq_to_ode(&bp(&[&[0, 1]])), Err(HolonomicError::Constant));
        assert_eq!(algeq_to_ode(&bp(&[&[0, 0, 1], &[0, -2], &[1]])), Err(HolonomicError::NotSquarefree));
    }

    #[test]
    fn display_forms() {
        assert_eq!(ode(&[&[2], &[1, -4]]).to_string(), "-(4*x - 1)*f' + 2*f = 0");
        assert_eq!(
            Recurrence::from_ints(&[&[1, 1], &[2, -4]]).unwrap().to_string(),
            "(n + 1)*a(n) - (4*n - 2)*a(n - 1) = 0"
        );
    }

    #[test]
    fn serde_round_trip() {
        let rec = Recurrence::from_ints(&[&[1, 1], &[2, -4]]).unwrap();
        let text = serde_json::to_string(&rec).unwrap();
        assert_eq!(serde_json::from_str::<Recurrence>(&text).unwrap(), rec);
        let d = ode(&[&[2], &[1, -4]]);
        let text = serde_json::to_string(&d).unwrap();
        assert_eq!(serde_json::from_str::<LinearODE>(&text).unwrap(), d);
    }
}
