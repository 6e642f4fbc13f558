//! Dense univariate polynomial kernels over any [`Field`].
//!
//! Coefficients are stored ascending; the zero polynomial is the empty
//! vector. Every routine returns trimmed vectors.

use super::field::Field;

pub fn trim<F: Field>(v: &mut Vec<F>) {
    while v.last().is_some_and(Field::fis_zero) {
        v.pop();
    }
}

pub fn degree<F: Field>(v: &[F]) -> Option<usize> {
    v.len().checked_sub(1)
}

pub fn add<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.fadd(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => unreachable!(),
        });
    }
    trim(&mut out);
    out
}

pub fn sub<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        out.push(match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.fsub(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.fneg(),
            (None, None) => unreachable!(),
        });
    }
    trim(&mut out);
    out
}

pub fn neg<F: Field>(a: &[F]) -> Vec<F> {
    a.iter().map(Field::fneg).collect()
}

pub fn scale<F: Field>(a: &[F], c: &F) -> Vec<F> {
    if c.fis_zero() {
        return Vec::new();
    }
    a.iter().map(|x| x.fmul(c)).collect()
}

pub fn mul<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![F::fzero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.fis_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].fadd(&x.fmul(y));
        }
    }
    trim(&mut out);
    out
}

/// Euclidean division; `b` must be nonzero.
pub fn divrem<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>) {
    assert!(!b.is_empty(), "polynomial division by zero");
    let db = b.len() - 1;
    let lead = &b[db];
    let mut rem: Vec<F> = a.to_vec();
    trim(&mut rem);
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let mut quot = vec![F::fzero(); rem.len() - db];
    while rem.len() >= b.len() {
        let shift = rem.len() - b.len();
        let c = rem[rem.len() - 1].fdiv(lead);
        for (j, y) in b.iter().enumerate() {
            rem[shift + j] = rem[shift + j].fsub(&c.fmul(y));
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub fn monic<F: Field>(a: &[F]) -> Vec<F> {
    match a.last() {
        None => Vec::new(),
        Some(lead) => {
            let inv = F::fone().fdiv(lead);
            a.iter().map(|x| x.fmul(&inv)).collect()
        }
    }
}

/// Monic gcd; `gcd(0, 0)` is the zero polynomial.
pub fn gcd<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    trim(&mut x);
    trim(&mut y);
    while !y.is_empty() {
        let (_, r) = divrem(&x, &y);
        x = y;
        y = r;
    }
    monic(&x)
}

/// Returns `(g, s, t)` with `s*a + t*b = g`, `g` the monic gcd.
pub fn ext_gcd<F: Field>(a: &[F], b: &[F]) -> (Vec<F>, Vec<F>, Vec<F>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let (mut s0, mut s1) = (vec![F::fone()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![F::fone()]);
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s2 = sub(&s0, &mul(&q, &s1));
        let t2 = sub(&t0, &mul(&q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last().cloned() {
        None => (Vec::new(), s0, t0),
        Some(lead) => {
            let inv = F::fone().fdiv(&lead);
            (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
        }
    }
}

pub fn derivative<F: Field>(a: &[F]) -> Vec<F> {
    let mut out: Vec<F> = a
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c.fmul(&F::from_i64(i as i64)))
        .collect();
    trim(&mut out);
    out
}

pub fn eval<F: Field>(a: &[F], at: &F) -> F {
    a.iter().rev().fold(F::fzero(), |acc, c| acc.fmul(at).fadd(c))
}

#[cfg(test)]
mod tests {
    use super::super::field::int;
    use super::*;
    use num_rational::BigRational;

    fn p(cs: &[i64]) -> Vec<BigRational> {
        let mut v: Vec<_> = cs.iter().map(|&c| int(c)).collect();
        trim(&mut v);
        v
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[1, -2, 1]);
        let (g, s, t) = ext_gcd(&a, &b);
        assert_eq!(g, p(&[-1, 1]));
        assert_eq!(add(&mul(&s, &a), &mul(&t, &b)), g);
    }

    #[test]
    fn divrem_exact_remainder() {
        let (q, r) = divrem(&p(&[0, 0, 1]), &p(&[-3, 1]));
        assert_eq!(q, p(&[3, 1]));
        assert_eq!(r, p(&[9]));
    }
}
