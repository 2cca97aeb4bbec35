//! Symbolic evaluation, verification and optimization of quantum circuits
//! built from controlled-NOT-family and controlled-`Q` gates, where `Q` is a
//! `k`-th root of NOT and `k` is a power of two.
//!
//! Instead of multiplying complex matrices, each target line carries an
//! exponent: an integer multilinear polynomial `E` over the input bits, read
//! modulo `2K`, such that the line ends in `Q_K^E` applied to its base value.
//! When every coefficient of `E` equals `K` the line collapses back to a
//! Boolean value given in algebraic normal form.
//!
//! - [`expr`]: ANF and multilinear-polynomial algebra and the Möbius transform.
//! - [`circuit`]: the circuit IR, the `.cnq` text format and gate counts.
//! - [`symbolic`]: the exponent calculus: evaluation, spec checks, equivalence.
//! - [`oracle`]: a dense complex simulator used as an independent check.
//! - [`optimize`]: merging of gates that add to the same exponent term.
//! - [`cli`]: the `cnq` command-line front end.

pub mod circuit;
pub mod cli;
pub mod expr;
pub mod optimize;
pub mod oracle;
pub mod random;
pub mod symbolic;
