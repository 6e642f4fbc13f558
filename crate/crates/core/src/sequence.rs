//! Finite windows of a sequence's terms.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermOrigin {
    Series,
    Bfile,
    User,
}

/// `values[k]` is the term at index `offset + k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceTerms {
    offset: i64,
    #[serde(with = "crate::arith::field::wire::vec")]
    values: Vec<BigRational>,
    source: TermOrigin,
}

impl SequenceTerms {
    pub fn new(offset: i64, values: Vec<BigRational>, source: TermOrigin) -> Self {
        SequenceTerms { offset, values, source }
    }

    pub fn from_ints(offset: i64, values: &[i64], source: TermOrigin) -> Self {
        Self::new(offset, values.iter().map(|&v| BigRational::from_integer(BigInt::from(v))).collect(), source)
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn source(&self) -> TermOrigin {
        self.source
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// One past the last available index.
    pub fn end(&self) -> i64 {
        self.offset + self.values.len() as i64
    }

    pub fn get(&self, n: i64) -> Option<&BigRational> {
        usize::try_from(n - self.offset).ok().and_then(|k| self.values.get(k))
    }

    /// Terms from index 0, reading indices below the offset as 0.
    pub fn from_zero(&self) -> Vec<BigRational> {
        let pad = usize::try_from(self.offset).unwrap_or(0);
        let skip = usize::try_from(-self.offset).unwrap_or(0);
        std::iter::repeat_n(BigRational::default(), pad).chain(self.values.iter().skip(skip).cloned()).collect()
    }
}
