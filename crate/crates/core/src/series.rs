//! Truncated Laurent series with exact rational coefficients.
//!
//! A series is known modulo `x^(trunc_order + 1)`. Arithmetic tracks how
//! much of the result is reliable; reciprocals and k-th roots use Newton
//! iteration with precision doubling.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{int, rational_nth_root, UniPoly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("division by a series that vanishes through x^{0}")]
    DivisionByZero(i64),
    #[error("leading coefficient {0} has no rational {1}-th root")]
    NoRationalRoot(String, u32),
    #[error("valuation {0} is not divisible by the root index {1}")]
    ValuationNotDivisible(i64, u32),
    #[error("generating function has a pole at 0 (valuation {0})")]
    PoleAtZero(i64),
    #[error("root index must be positive")]
    BadRootIndex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// `x^valuation * (coeffs[0] + coeffs[1] x + ...) + O(x^(trunc_order+1))`.
///
/// For a nonzero series `coeffs[0] != 0`. A series with no known nonzero
/// coefficient is the zero series, stored with `valuation = trunc_order + 1`
/// and empty `coeffs`.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncSeries {
    valuation: i64,
    coeffs: Vec<BigRational>,
    trunc_order: i64,
}

impl TruncSeries {
    pub fn zero(trunc_order: i64) -> Self {
        TruncSeries { valuation: trunc_order + 1, coeffs: Vec::new(), trunc_order }
    }

    /// Builds and normalizes; coefficients past `trunc_order` are dropped.
    pub fn from_coeffs(valuation: i64, mut coeffs: Vec<BigRational>, trunc_order: i64) -> Self {
        let keep = (trunc_order - valuation + 1).max(0) as usize;
        coeffs.truncate(keep);
        match coeffs.iter().position(|c| !c.is_zero()) {
            None => Self::zero(trunc_order),
            Some(skip) => {
                coeffs.drain(..skip);
                while coeffs.last().is_some_and(Zero::is_zero) {
                    coeffs.pop();
                }
                TruncSeries { valuation: valuation + skip as i64, coeffs, trunc_order }
            }
        }
    }

    pub fn constant(c: BigRational, trunc_order: i64) -> Self {
        Self::from_coeffs(0, vec![c], trunc_order)
    }

    pub fn from_poly(p: &UniPoly, trunc_order: i64) -> Self {
        Self::from_coeffs(0, p.coeffs().to_vec(), trunc_order)
    }

    /// `x^k` known through `trunc_order`.
    pub fn monomial(k: i64, trunc_order: i64) -> Self {
        Self::from_coeffs(k, vec![BigRational::one()], trunc_order)
    }

    pub fn valuation(&self) -> i64 {
        self.valuation
    }

    pub fn trunc_order(&self) -> i64 {
        self.trunc_order
    }

    /// Coefficients from `x^valuation` upward.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Number of reliable coefficients counted from the valuation.
    fn rel_len(&self) -> i64 {
        self.trunc_order - self.valuation + 1
    }

    /// Coefficient of `x^k`; `k` must not exceed the truncation order.
    pub fn coeff(&self, k: i64) -> BigRational {
        debug_assert!(k <= self.trunc_order, "coefficient x^{k} beyond O(x^{})", self.trunc_order + 1);
        if k < self.valuation {
            return BigRational::zero();
        }
        self.coeffs.get((k - self.valuation) as usize).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Dense coefficients of `x^0 ..= x^upto`.
    pub fn coefficients(&self, upto: i64) -> Vec<BigRational> {
        (0..=upto).map(|k| self.coeff(k)).collect()
    }

    /// Forgets every coefficient past `x^order`.
    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.trunc_order);
        Self::from_coeffs(self.valuation, self.coeffs.clone(), order)
    }

    /// Multiplies by `x^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero(self.trunc_order + k);
        }
        TruncSeries {
            valuation: self.valuation + k,
            coeffs: self.coeffs.clone(),
            trunc_order: self.trunc_order + k,
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.trunc_order);
        }
        TruncSeries {
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|v| v * c).collect(),
            trunc_order: self.trunc_order,
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-BigRational::one())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.add_sub(other, false)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add_sub(other, true)
    }

    fn add_sub(&self, other: &Self, subtract: bool) -> Self {
        let t = self.trunc_order.min(other.trunc_order);
        let v = self.valuation.min(other.valuation);
        if v > t {
            return Self::zero(t);
        }
        let out = (v..=t)
            .map(|k| {
                let a = self.coeff_or_zero(k);
                let b = other.coeff_or_zero(k);
                if subtract {
                    a - b
                } else {
                    a + b
                }
            })
            .collect();
        Self::from_coeffs(v, out, t)
    }

    fn coeff_or_zero(&self, k: i64) -> BigRational {
        if k < self.valuation {
            return BigRational::zero();
        }
        self.coeffs.get((k - self.valuation) as usize).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let len = self.rel_len().min(other.rel_len());
        let v = self.valuation + other.valuation;
        let t = v + len - 1;
        if self.is_zero() || other.is_zero() || len <= 0 {
            return Self::zero(t);
        }
        Self::from_coeffs(v, mul_trunc(&self.coeffs, &other.coeffs, len as usize), t)
    }

    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        if other.is_zero() {
            return Err(SeriesError::DivisionByZero(other.trunc_order));
        }
        let len = self.rel_len().min(other.rel_len());
        let v = self.valuation - other.valuation;
        let t = v + len - 1;
        if self.is_zero() || len <= 0 {
            return Ok(Self::zero(t));
        }
        let inv = inverse_trunc(&other.coeffs, len as usize);
        Ok(Self::from_coeffs(v, mul_trunc(&self.coeffs, &inv, len as usize), t))
    }

    pub fn pow(&self, e: u32) -> Self {
        if e == 0 {
            return Self::constant(BigRational::one(), self.rel_len() - 1);
        }
        let mut acc: Option<Self> = None;
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc.expect("e > 0")
    }

    /// Termwise derivative; reliable one order less.
    pub fn derivative(&self) -> Self {
        let t = self.trunc_order - 1;
        if self.is_zero() {
            return Self::zero(t);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * int(self.valuation + i as i64))
            .collect();
        Self::from_coeffs(self.valuation - 1, out, t)
    }

    /// The principal k-th root.
    pub fn nth_root(&self, k: u32) -> Result<Self, SeriesError> {
        series_nth_root(self, k)
    }
}

/// `a op b` with the reliable order of the result tracked exactly.
pub fn series_arith(op: SeriesOp, a: &TruncSeries, b: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    Ok(match op {
        SeriesOp::Add => a.add(b),
        SeriesOp::Sub => a.sub(b),
        SeriesOp::Mul => a.mul(b),
        SeriesOp::Div => a.div(b)?,
    })
}

/// The unique `s` with `s^k = a` whose leading coefficient is the
/// principal rational root (positive for even `k`).
pub fn series_nth_root(a: &TruncSeries, k: u32) -> Result<TruncSeries, SeriesError> {
    if k == 0 {
        return Err(SeriesError::BadRootIndex);
    }
    let ki = k as i64;
    if a.is_zero() {
        let t = (a.trunc_order + 1).div_euclid(ki) + i64::from((a.trunc_order + 1).rem_euclid(ki) != 0) - 1;
        return Ok(TruncSeries::zero(t));
    }
    if a.valuation.rem_euclid(ki) != 0 {
        return Err(SeriesError::ValuationNotDivisible(a.valuation, k));
    }
    let lead = &a.coeffs[0];
    let root = rational_nth_root(lead, k).ok_or_else(|| SeriesError::NoRationalRoot(lead.to_string(), k))?;
    let len = a.rel_len() as usize;
    let unit: Vec<BigRational> = a.coeffs.iter().take(len).map(|c| c / lead).collect();
    let s = newton_root(&unit, k, len);
    let v = a.valuation / ki;
    Ok(TruncSeries::from_coeffs(v, s.iter().map(|c| c * &root).collect(), v + len as i64 - 1))
}

/// Rejects series with a pole at the origin.
pub fn series_require_power(a: &TruncSeries) -> Result<TruncSeries, SeriesError> {
    if a.valuation < 0 {
        Err(SeriesError::PoleAtZero(a.valuation))
    } else {
        Ok(a.clone())
    }
}

/// Product of two coefficient vectors, keeping the first `len` terms.
pub(crate) fn mul_trunc(a: &[BigRational], b: &[BigRational], len: usize) -> Vec<BigRational> {
    // Accumulate over a common denominator: far fewer gcds than summing
    // reduced rationals term by term.
    let (an, ad) = common_denominator(&a[..a.len().min(len)]);
    let (bn, bd) = common_denominator(&b[..b.len().min(len)]);
    let den = ad * bd;
    let mut out = vec![num_bigint::BigInt::zero(); len.min(an.len() + bn.len() - 1)];
    for (i, x) in an.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in bn.iter().enumerate().take(len.saturating_sub(i)) {
            out[i + j] += x * y;
        }
    }
    out.into_iter().map(|c| BigRational::new(c, den.clone())).collect()
}

fn common_denominator(a: &[BigRational]) -> (Vec<num_bigint::BigInt>, num_bigint::BigInt) {
    use num_integer::Integer;
    let den = a.iter().fold(num_bigint::BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let nums = a.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (nums, den)
}

/// Reciprocal of a series with nonzero constant term, to `len` terms, by
/// Newton iteration `z <- z (2 - w z)`.
pub(crate) fn inverse_trunc(w: &[BigRational], len: usize) -> Vec<BigRational> {
    let mut z = vec![w[0].recip()];
    let mut prec = 1;
    while prec < len {
        prec = (2 * prec).min(len);
        let wz = mul_trunc(w, &z, prec);
        let mut corr: Vec<BigRational> = wz.iter().map(|c| -c).collect();
        corr.resize(prec, BigRational::zero());
        corr[0] += int(2);
        z = mul_trunc(&z, &corr, prec);
    }
    z.resize(len, BigRational::zero());
    z
}

fn pow_trunc(a: &[BigRational], e: u32, len: usize) -> Vec<BigRational> {
    let mut acc = vec![BigRational::one()];
    for _ in 0..e {
        acc = mul_trunc(&acc, a, len);
    }
    acc
}

/// k-th root of a unit series with constant term 1, to `len` terms, by
/// Newton iteration `y <- y - (y^k - u) / (k y^(k-1))`.
fn newton_root(u: &[BigRational], k: u32, len: usize) -> Vec<BigRational> {
    let mut y = vec![BigRational::one()];
    let mut prec = 1;
    while prec < len {
        prec = (2 * prec).min(len);
        let ykm1 = pow_trunc(&y, k - 1, prec);
        let yk = mul_trunc(&ykm1, &y, prec);
        let mut resid: Vec<BigRational> = yk;
        resid.resize(prec, BigRational::zero());
        for (r, c) in resid.iter_mut().zip(u.iter().take(prec)) {
            *r -= c;
        }
        let scaled: Vec<BigRational> = ykm1.iter().map(|c| c * int(k as i64)).collect();
        let step = mul_trunc(&resid, &inverse_trunc(&scaled, prec), prec);
        y.resize(prec, BigRational::zero());
        for (a, s) in y.iter_mut().zip(step) {
            *a -= s;
        }
    }
    y.truncate(len);
    y
}

impl fmt::Display for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(BigRational, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let k = self.valuation + i as i64;
                let mono = match k {
                    0 => String::new(),
                    1 => "x".to_string(),
                    _ => format!("x^{k}"),
                };
                (c.clone(), mono)
            })
            .collect();
        struct Terms<'a>(&'a [(BigRational, String)]);
        impl fmt::Display for Terms<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                crate::arith::write_terms(f, self.0)
            }
        }
        if terms.is_empty() {
            write!(f, "O(x^{})", self.trunc_order + 1)
        } else {
            write!(f, "{} + O(x^{})", Terms(&terms), self.trunc_order + 1)
        }
    }
}

impl fmt::Debug for TruncSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncSeries({self})")
    }
}
