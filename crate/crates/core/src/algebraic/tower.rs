//! Sparse polynomials over `Q` in `x`, `y`, and one variable per radical,
//! plus the elimination that clears radicals from `den*y - num`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::arith::{BivarPoly, UniPoly, Var};

pub(crate) const X: usize = 0;
pub(crate) const Y: usize = 1;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct MultiPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MultiPoly {
    pub fn zero(nvars: usize) -> Self {
        MultiPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = Self::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, v: usize) -> Self {
        let mut e = vec![0; nvars];
        e[v] = 1;
        let mut p = Self::zero(nvars);
        p.terms.insert(e, BigRational::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c);
                }
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.nvars, BigRational::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Splits into coefficients of `v^0, v^1, ...`.
    pub fn coefficients_in(&self, v: usize) -> Vec<MultiPoly> {
        let mut out = vec![Self::zero(self.nvars); self.degree_in(v) as usize + 1];
        for (e, c) in &self.terms {
            let mut e2 = e.clone();
            let k = std::mem::replace(&mut e2[v], 0) as usize;
            out[k].terms.insert(e2, c.clone());
        }
        out
    }

    fn mul_var_power(&self, v: usize, k: u32) -> Self {
        MultiPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e[v] += k;
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Converts a polynomial in `x` and `y` only.
    pub fn to_bivar(&self) -> BivarPoly {
        let rows = self.coefficients_in(Y);
        BivarPoly::new(
            rows.iter()
                .map(|row| {
                    let mut coeffs = vec![BigRational::zero(); row.degree_in(X) as usize + 1];
                    for (e, c) in &row.terms {
                        debug_assert!(e.iter().enumerate().all(|(i, &k)| i == X || k == 0));
                        coeffs[e[X] as usize] += c;
                    }
                    UniPoly::new(Var::X, coeffs)
                })
                .collect(),
        )
    }
}

/// `r^index = radicand`, where `radicand` mentions only `x` and radicals
/// introduced before `r`.
#[derive(Clone, Debug)]
pub(crate) struct Relation {
    pub var: usize,
    pub index: u32,
    pub radicand: MultiPoly,
}

/// Rewrites every `r^k` with `k >= index` using the relations, newest
/// radical first so substituted radicands are themselves reduced.
pub(crate) fn reduce(p: &MultiPoly, relations: &[Relation]) -> MultiPoly {
    let mut p = p.clone();
    for rel in relations.iter().rev() {
        if p.degree_in(rel.var) < rel.index {
            continue;
        }
        let mut out = MultiPoly::zero(p.nvars);
        for (k, coeff) in p.coefficients_in(rel.var).into_iter().enumerate() {
            if coeff.is_zero() {
                continue;
            }
            let k = k as u32;
            let (q, r) = (k / rel.index, k % rel.index);
            let term = coeff.mul(&reduce(&rel.radicand.pow(q), relations)).mul_var_power(rel.var, r);
            out = out.add(&term);
        }
        p = out;
    }
    p
}

/// Norm of `p` from `R[r]/(r^k - g)` down to `R`: the determinant of
/// multiplication by `p` on the basis `1, r, ..., r^(k-1)`. Equals the
/// resultant `Res_r(p, r^k - g)` up to sign.
#[allow(clippy::needless_range_loop)]
pub(crate) fn norm(p: &MultiPoly, rel: &Relation, relations: &[Relation]) -> MultiPoly {
    let k = rel.index as usize;
    let parts = p.coefficients_in(rel.var);
    let zero = MultiPoly::zero(p.nvars);
    let mut m = vec![vec![zero.clone(); k]; k];
    for t in 0..k {
        for (s, part) in parts.iter().enumerate() {
            let row = s + t;
            if row < k {
                m[row][t] = m[row][t].add(part);
            } else {
                m[row - k][t] = m[row - k][t].add(&part.mul(&rel.radicand));
            }
        }
    }
    reduce(&det(&m), relations)
}

/// Laplace expansion along the first row; matrices here are tiny.
fn det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let n = m.len();
    let nvars = m[0][0].nvars;
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = MultiPoly::zero(nvars);
    for col in 0..n {
        if m[0][col].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != col).map(|(_, v)| v.clone()).collect())
            .collect();
        let term = m[0][col].mul(&det(&minor));
        acc = if col % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}
