//! Minimal field abstraction shared by the dense polynomial and linear
//! algebra routines.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Nonnegative gcd that returns early on zero and unit operands, where
/// binary gcd would take time quadratic in the size of a huge operand.
pub(crate) fn int_gcd(a: &BigInt, b: &BigInt) -> BigInt {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    if a.abs().is_one() || b.abs().is_one() {
        return BigInt::one();
    }
    a.gcd(b)
}

/// An exact commutative field.
///
/// Method names are prefixed with `f` so they never collide with the
/// `std::ops` traits the concrete types also implement.
pub trait Field: Clone + PartialEq + Debug + Send + Sync {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn fadd(&self, other: &Self) -> Self;
    fn fsub(&self, other: &Self) -> Self;
    fn fmul(&self, other: &Self) -> Self;
    /// Panics when `other` is zero; callers check first.
    fn fdiv(&self, other: &Self) -> Self;
    fn fneg(&self) -> Self;

    fn fis_one(&self) -> bool {
        *self == Self::fone()
    }
}

impl Field for BigRational {
    fn fzero() -> Self {
        Zero::zero()
    }
    fn fone() -> Self {
        One::one()
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
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
        self / other
    }
    fn fneg(&self) -> Self {
        -self
    }
}

/// `p/q` as a rational; `q` must be nonzero.
pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

/// Exact rational k-th root, if one exists. For even `k` only the positive
/// root of a positive number is returned; for odd `k` the real root.
pub fn rational_nth_root(value: &BigRational, k: u32) -> Option<BigRational> {
    if k == 0 {
        return None;
    }
    if Zero::is_zero(value) {
        return Some(BigRational::zero());
    }
    if value.is_negative() && k.is_multiple_of(2) {
        return None;
    }
    let num = integer_nth_root(&value.numer().abs(), k)?;
    let den = integer_nth_root(value.denom(), k)?;
    let root = BigRational::new(num, den);
    Some(if value.is_negative() { -root } else { root })
}

fn integer_nth_root(value: &BigInt, k: u32) -> Option<BigInt> {
    let root = value.nth_root(k);
    if num_traits::pow(root.clone(), k as usize) == *value {
        Some(root)
    } else {
        None
    }
}

/// Renders a rational as `p/q`, always with an explicit denominator.
pub fn rational_to_wire(value: &BigRational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn rational_from_wire(text: &str) -> Option<BigRational> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().ok()?;
            let q: BigInt = q.trim().parse().ok()?;
            if q.is_zero() {
                None
            } else {
                Some(BigRational::new(p, q))
            }
        }
        None => text.parse::<BigInt>().ok().map(BigRational::from_integer),
    }
}

pub(crate) mod wire {
    //! serde adapters for `p/q` rational strings.
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(value: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rational_to_wire(value))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let text = String::deserialize(d)?;
        rational_from_wire(&text).ok_or_else(|| D::Error::custom(format!("bad rational {text:?}")))
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(values: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(values.len()))?;
            for v in values {
                seq.serialize_element(&rational_to_wire(v))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
            let texts = Vec::<String>::deserialize(d)?;
            texts
                .iter()
                .map(|t| rational_from_wire(t).ok_or_else(|| D::Error::custom(format!("bad rational {t:?}"))))
                .collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nth_roots() {
        assert_eq!(rational_nth_root(&rat(9, 4), 2), Some(rat(3, 2)));
        assert_eq!(rational_nth_root(&int(2), 2), None);
        assert_eq!(rational_nth_root(&int(-8), 3), Some(int(-2)));
        assert_eq!(rational_nth_root(&int(-4), 2), None);
        assert_eq!(rational_nth_root(&rat(1, 27), 3), Some(rat(1, 3)));
    }

    #[test]
    fn wire_format() {
        assert_eq!(rational_to_wire(&int(3)), "3/1");
        assert_eq!(rational_to_wire(&rat(-6, 4)), "-3/2");
        assert_eq!(rational_from_wire("-3/2"), Some(rat(-3, 2)));
        assert_eq!(rational_from_wire("7"), Some(int(7)));
        assert_eq!(rational_from_wire("1/0"), None);
    }
}
