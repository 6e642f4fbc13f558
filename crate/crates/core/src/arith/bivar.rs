use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::dense;
use super::field::{int, Field};
use super::unipoly::{UniPoly, Var};
use super::ArithError;

/// `P(x, y) = sum_i p_i(x) y^i`, stored as the coefficient list in `y`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BivarPoly {
    coeffs_in_y: Vec<UniPoly>,
}

impl BivarPoly {
    /// Trims zero leading coefficients; performs no other normalization.
    pub fn new(mut coeffs_in_y: Vec<UniPoly>) -> Self {
        for c in coeffs_in_y.iter_mut() {
            *c = c.with_var(Var::X);
        }
        while coeffs_in_y.last().is_some_and(UniPoly::is_zero) {
            coeffs_in_y.pop();
        }
        BivarPoly { coeffs_in_y }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::new(rows.iter().map(|r| UniPoly::from_ints(Var::X, r)).collect())
    }

    pub fn coeffs(&self) -> &[UniPoly] {
        &self.coeffs_in_y
    }

    pub fn coeff(&self, i: usize) -> UniPoly {
        self.coeffs_in_y.get(i).cloned().unwrap_or_else(|| UniPoly::zero(Var::X))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs_in_y.is_empty()
    }

    pub fn deg_y(&self) -> Option<usize> {
        self.coeffs_in_y.len().checked_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.coeffs_in_y.iter().filter_map(UniPoly::degree).max().unwrap_or(0)
    }

    pub fn leading_coeff_y(&self) -> Option<&UniPoly> {
        self.coeffs_in_y.last()
    }

    pub fn derivative_y(&self) -> Self {
        Self::new(
            self.coeffs_in_y
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale(&int(i as i64)))
                .collect(),
        )
    }

    pub fn derivative_x(&self) -> Self {
        Self::new(self.coeffs_in_y.iter().map(UniPoly::derivative).collect())
    }

    /// Canonical representative of `P` up to a nonzero factor in `Q[x]`:
    /// polynomial content removed, integer coefficients with content 1,
    /// and the leading `y`-coefficient's leading term positive.
    pub fn normalized(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut content = UniPoly::zero(Var::X);
        for c in &self.coeffs_in_y {
            content = if content.is_zero() { c.monic() } else { content.gcd(c).expect("nonzero") };
        }
        let mut rows: Vec<UniPoly> = self
            .coeffs_in_y
            .iter()
            .map(|c| c.div_exact(&content).expect("content divides"))
            .collect();
        let lcm = rows.iter().fold(num_bigint::BigInt::one(), |acc, c| {
            num_integer::Integer::lcm(&acc, &c.denominator_lcm())
        });
        let lcm = BigRational::from_integer(lcm);
        rows = rows.iter().map(|c| c.scale(&lcm)).collect();
        let g = rows
            .iter()
            .fold(num_bigint::BigInt::zero(), |acc, c| num_integer::Integer::gcd(&acc, &c.integer_content()));
        let mut factor = BigRational::from_integer(g).recip();
        if rows.last().and_then(|c| c.leading_coeff()).is_some_and(|c| c.is_negative()) {
            factor = -factor;
        }
        Self::new(rows.iter().map(|c| c.scale(&factor)).collect())
    }

    /// `P(x0, y0)` at rationals.
    pub fn eval(&self, x0: &BigRational, y0: &BigRational) -> BigRational {
        self.coeffs_in_y
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * y0 + c.eval(x0))
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_in_symbol(f, &self.coeffs_in_y, "y")
    }
}

impl fmt::Debug for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BivarPoly({self})")
    }
}

/// Renders `sum_i coeffs[i] * sym^i` in descending powers, parenthesizing
/// multi-term coefficients.
pub(crate) fn write_in_symbol<C: CoeffShape>(
    f: &mut fmt::Formatter<'_>,
    coeffs: &[C],
    sym: &str,
) -> fmt::Result {
    let terms = coeffs.iter().enumerate().rev().map(|(k, c)| {
        let mono = match k {
            0 => String::new(),
            1 => sym.to_string(),
            _ => format!("{sym}^{k}"),
        };
        (c, mono)
    });
    write_combination(f, terms)
}

/// Renders `sum c * mono`, skipping zero coefficients; an empty monomial
/// stands for 1.
pub(crate) fn write_combination<'a, C: CoeffShape + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl IntoIterator<Item = (&'a C, String)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero_coeff() {
            continue;
        }
        let (negative, body) = c.signed_body();
        if first {
            if negative {
                f.write_str("-")?;
            }
        } else {
            f.write_str(if negative { " - " } else { " + " })?;
        }
        first = false;
        match (mono.is_empty(), body.as_str()) {
            (true, _) => f.write_str(&body)?,
            (false, "1") => f.write_str(&mono)?,
            (false, _) => write!(f, "{body}*{mono}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// How a coefficient prints inside a sum: sign pulled out when it is a
/// single term, parenthesized otherwise.
pub(crate) trait CoeffShape {
    fn is_zero_coeff(&self) -> bool;
    fn signed_body(&self) -> (bool, String);
}

impl CoeffShape for UniPoly {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn signed_body(&self) -> (bool, String) {
        let nonzero = self.coeffs().iter().filter(|c| !c.is_zero()).count();
        if nonzero == 1 {
            let lead = self.leading_coeff().expect("nonzero");
            if lead.is_negative() {
                return (true, (-self).to_string());
            }
            return (false, self.to_string());
        }
        // pull out a negative leading sign: -(4*n + 2) prints as "- (4*n + 2)"
        if self.leading_coeff().is_some_and(|c| c.is_negative()) {
            (true, format!("({})", -self))
        } else {
            (false, format!("({self})"))
        }
    }
}

impl CoeffShape for super::ratfunc::RatFunc {
    fn is_zero_coeff(&self) -> bool {
        self.is_zero()
    }
    fn signed_body(&self) -> (bool, String) {
        if self.is_polynomial() {
            return self.num().signed_body();
        }
        if self.num().leading_coeff().is_some_and(|c| c.is_negative()) {
            (true, format!("({})", self.fneg()))
        } else {
            (false, format!("({self})"))
        }
    }
}

/// Sylvester-matrix determinant by fraction-free (Bareiss) elimination over
/// `Q[x]`. `rows` is square.
fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let size = m.len();
    if size == 0 {
        return UniPoly::one(Var::X);
    }
    let mut negate = false;
    let mut prev = UniPoly::one(Var::X);
    for k in 0..size {
        if m[k][k].is_zero() {
            match (k + 1..size).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    negate = !negate;
                }
                None => return UniPoly::zero(Var::X),
            }
        }
        for i in k + 1..size {
            for j in k + 1..size {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[size - 1][size - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

fn sylvester(a: &[UniPoly], b: &[UniPoly]) -> Vec<Vec<UniPoly>> {
    let m = a.len() - 1;
    let n = b.len() - 1;
    let size = m + n;
    let zero = UniPoly::zero(Var::X);
    let mut rows = Vec::with_capacity(size);
    for (src, count) in [(a, n), (b, m)] {
        for shift in 0..count {
            let mut row = vec![zero.clone(); size];
            for (k, c) in src.iter().rev().enumerate() {
                row[shift + k] = c.clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// `Res_y(a, b)`, eliminating `y`.
pub fn poly_resultant(a: &BivarPoly, b: &BivarPoly) -> Result<UniPoly, ArithError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    Ok(bareiss_det(sylvester(&a.coeffs_in_y, &b.coeffs_in_y)))
}

/// Resultant of two univariate polynomials (eliminating their variable).
pub fn poly_resultant_univariate(a: &UniPoly, b: &UniPoly) -> Result<BigRational, ArithError> {
    if a.is_zero() || b.is_zero() {
        return Err(ArithError::ZeroPolynomial);
    }
    let lift = |p: &UniPoly| -> Vec<UniPoly> {
        p.coeffs().iter().map(|c| UniPoly::constant(Var::X, c.clone())).collect()
    };
    let det = bareiss_det(sylvester(&lift(a), &lift(b)));
    Ok(det.coeff(0))
}

/// Squarefree part in `y` over `Q(x)`: `P / gcd_y(P, dP/dy)`, normalized.
pub fn squarefree_part(p: &BivarPoly) -> BivarPoly {
    use super::ratfunc::RatFunc;
    let lift = |q: &BivarPoly| -> Vec<RatFunc> {
        q.coeffs_in_y.iter().cloned().map(RatFunc::from_poly).collect()
    };
    let pf = lift(p);
    let g = dense::gcd(&pf, &lift(&p.derivative_y()));
    if g.len() <= 1 {
        return p.normalized();
    }
    let (q, _) = dense::divrem(&pf, &g);
    from_ratfunc_coeffs(&q).normalized()
}

/// Clears denominators of a `Q(x)`-coefficient polynomial in `y`.
pub(crate) fn from_ratfunc_coeffs(coeffs: &[super::ratfunc::RatFunc]) -> BivarPoly {
    let mut lcm = UniPoly::one(Var::X);
    for c in coeffs {
        let g = lcm.gcd(c.den()).expect("nonzero");
        lcm = (&lcm * c.den()).div_exact(&g).expect("gcd divides");
    }
    BivarPoly::new(
        coeffs
            .iter()
            .map(|c| (c.num() * &lcm).div_exact(c.den()).expect("lcm is a multiple"))
            .collect(),
    )
}

pub(crate) fn to_ratfunc_coeffs(p: &BivarPoly) -> Vec<super::ratfunc::RatFunc> {
    p.coeffs_in_y.iter().cloned().map(super::ratfunc::RatFunc::from_poly).collect()
}

impl Field for BivarPoly {
    // Not a field; present only so `dense::trim` can be reused on rows.
    fn fzero() -> Self {
        BivarPoly::new(Vec::new())
    }
    fn fone() -> Self {
        BivarPoly::new(vec![UniPoly::one(Var::X)])
    }
    fn fis_zero(&self) -> bool {
        self.coeffs_in_y.is_empty()
    }
    fn from_i64(v: i64) -> Self {
        BivarPoly::new(vec![UniPoly::constant(Var::X, int(v))])
    }
    fn fadd(&self, other: &Self) -> Self {
        BivarPoly::new(dense::add(&self.coeffs_in_y, &other.coeffs_in_y))
    }
    fn fsub(&self, other: &Self) -> Self {
        BivarPoly::new(dense::sub(&self.coeffs_in_y, &other.coeffs_in_y))
    }
    fn fmul(&self, other: &Self) -> Self {
        BivarPoly::new(dense::mul(&self.coeffs_in_y, &other.coeffs_in_y))
    }
    fn fdiv(&self, _other: &Self) -> Self {
        unimplemented!("BivarPoly is not a field")
    }
    fn fneg(&self) -> Self {
        BivarPoly::new(dense::neg(&self.coeffs_in_y))
    }
}
