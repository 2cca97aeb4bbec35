//! Runs every Rust listing in the guide under `book/src` as a doctest, one
//! module per chapter so a failure names its chapter.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/expressions.md")]
pub mod expressions {}

#[doc = include_str!("../../../book/src/exponent-calculus.md")]
pub mod exponent_calculus {}

#[doc = include_str!("../../../book/src/circuit-format.md")]
pub mod circuit_format {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/optimization.md")]
pub mod optimization {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
