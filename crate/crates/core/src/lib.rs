pub mod arith;
pub mod series;
pub mod expr;
pub mod algebraic;
pub mod holonomic;
pub mod sequence;
pub mod ore;
pub mod proof;
pub mod oeis;
pub mod corpus;
pub mod batch;
