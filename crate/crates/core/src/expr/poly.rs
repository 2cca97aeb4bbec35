use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Anf, Assignment, ExprError, Monomial, VarId};

/// A multilinear polynomial with integer coefficients over 0/1 variables.
///
/// This is the language of accumulated Q-exponents. Every integer-valued
/// function on `{0,1}^n` has exactly one such representation. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MlPoly(BTreeMap<Monomial, BigInt>);

impl MlPoly {
    pub fn zero() -> Self {
        MlPoly(BTreeMap::new())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        MlPoly::term(c, Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        MlPoly::term(1, Monomial::var(v))
    }

    pub fn term(c: impl Into<BigInt>, m: Monomial) -> Self {
        let mut p = MlPoly::zero();
        p.add_term(m, c.into());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> BigInt {
        self.0.get(m).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl ExactSizeIterator<Item = (&Monomial, &BigInt)> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.0.keys().flat_map(|m| m.vars().iter().copied()).collect()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// The unique multilinear integer polynomial that agrees with `x` on
    /// every 0/1 point, folding XOR as `P ⊕ Q = P + Q − 2PQ`.
    pub fn from_anf(x: &Anf) -> MlPoly {
        x.monomials().fold(MlPoly::zero(), |acc, m| {
            let q = MlPoly::term(1, m.clone());
            arith_xor(&acc, &q)
        })
    }

    pub fn scale(&self, c: impl Into<BigInt>) -> MlPoly {
        let c = c.into();
        if c.is_zero() {
            return MlPoly::zero();
        }
        MlPoly(self.0.iter().map(|(m, x)| (m.clone(), x * &c)).collect())
    }

    fn product(&self, other: &MlPoly) -> MlPoly {
        let mut out = MlPoly::zero();
        for (mx, cx) in &self.0 {
            for (my, cy) in &other.0 {
                out.add_term(mx.mul(my), cx * cy);
            }
        }
        out
    }

    /// Sum of the coefficients of the monomials whose variables are all 1.
    pub fn eval(&self, point: &Assignment) -> Result<BigInt, ExprError> {
        let mut acc = BigInt::zero();
        for (m, c) in &self.0 {
            if m.eval(point)? {
                acc += c;
            }
        }
        Ok(acc)
    }

    /// Reduces every coefficient into `[0, m)` and drops the zeros.
    ///
    /// The result agrees with `self` modulo `m` at every 0/1 point. Because
    /// the coefficient/value transform is unimodular, the result is empty
    /// exactly when `self` vanishes modulo `m` as a function.
    pub fn reduce_mod(&self, m: u64) -> MlPoly {
        assert!(m >= 1, "modulus must be positive");
        let m = BigInt::from(m);
        MlPoly(
            self.0
                .iter()
                .filter_map(|(mono, c)| {
                    let r = c.mod_floor(&m);
                    (!r.is_zero()).then(|| (mono.clone(), r))
                })
                .collect(),
        )
    }

    /// True when all coefficients lie in `[0, m)`.
    pub fn is_reduced_mod(&self, m: u64) -> bool {
        let m = BigInt::from(m);
        self.0.values().all(|c| !c.is_negative() && c < &m)
    }
}

/// Arithmetic form of GF(2) addition on 0/1-valued polynomials.
fn arith_xor(p: &MlPoly, q: &MlPoly) -> MlPoly {
    &(p + q) - &p.product(q).scale(2)
}

impl Add for &MlPoly {
    type Output = MlPoly;

    fn add(self, rhs: &MlPoly) -> MlPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for MlPoly {
    type Output = MlPoly;

    fn add(self, rhs: MlPoly) -> MlPoly {
        &self + &rhs
    }
}

impl Sub for &MlPoly {
    type Output = MlPoly;

    fn sub(self, rhs: &MlPoly) -> MlPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.0 {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for MlPoly {
    type Output = MlPoly;

    fn sub(self, rhs: MlPoly) -> MlPoly {
        &self - &rhs
    }
}

impl Mul for &MlPoly {
    type Output = MlPoly;

    fn mul(self, rhs: &MlPoly) -> MlPoly {
        self.product(rhs)
    }
}

impl Mul for MlPoly {
    type Output = MlPoly;

    fn mul(self, rhs: MlPoly) -> MlPoly {
        self.product(&rhs)
    }
}

impl Neg for &MlPoly {
    type Output = MlPoly;

    fn neg(self) -> MlPoly {
        MlPoly(self.0.iter().map(|(m, c)| (m.clone(), -c)).collect())
    }
}

impl Neg for MlPoly {
    type Output = MlPoly;

    fn neg(self) -> MlPoly {
        -&self
    }
}

impl From<&Anf> for MlPoly {
    fn from(x: &Anf) -> MlPoly {
        MlPoly::from_anf(x)
    }
}

impl fmt::Display for MlPoly {
    /// Canonical text such as `2*a*b + 2*b*c` or `1 - a`; `0` when empty.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.0.iter().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}*")?;
                }
                m.write_with(f, "*")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MlPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MlPoly({self})")
    }
}

impl FromStr for MlPoly {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_poly(s)
    }
}

impl serde::Serialize for MlPoly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for MlPoly {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
