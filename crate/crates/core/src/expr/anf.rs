use std::collections::BTreeSet;
use std::fmt::{self, Write as _};
use std::ops::{BitAnd, BitXor};
use std::str::FromStr;

use super::{Assignment, ExprError, Monomial, VarId};

/// A Boolean function in algebraic normal form: an XOR of AND-monomials.
///
/// Each monomial appears at most once (GF(2) coefficients). The empty set is
/// the constant `0`. Since the ANF of a Boolean function is unique, structural
/// equality is functional equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Anf(BTreeSet<Monomial>);

impl Anf {
    pub fn zero() -> Self {
        Anf(BTreeSet::new())
    }

    pub fn one() -> Self {
        Anf::from_monomial(Monomial::one())
    }

    pub fn var(v: VarId) -> Self {
        Anf::from_monomial(Monomial::var(v))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Anf(BTreeSet::from([m]))
    }

    /// XOR of the given monomials; repeated monomials cancel in pairs.
    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(monomials: I) -> Self {
        let mut set = BTreeSet::new();
        for m in monomials {
            toggle(&mut set, m);
        }
        Anf(set)
    }

    /// Product of distinct variables as a single monomial (`1` when empty).
    pub fn product_of_vars<I: IntoIterator<Item = VarId>>(vars: I) -> Self {
        Anf::from_monomial(Monomial::from_vars(vars))
    }

    pub fn monomials(&self) -> impl ExactSizeIterator<Item = &Monomial> + Clone {
        self.0.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.0.contains(m)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.iter().next().is_some_and(Monomial::is_one)
    }

    pub fn vars(&self) -> BTreeSet<VarId> {
        self.0.iter().flat_map(|m| m.vars().iter().copied()).collect()
    }

    /// GF(2) addition: symmetric difference of the monomial sets.
    pub fn xor(&self, other: &Anf) -> Anf {
        Anf(self.0.symmetric_difference(&other.0).cloned().collect())
    }

    /// GF(2) multiplication, distributing over XOR with `v·v = v`.
    pub fn and(&self, other: &Anf) -> Anf {
        let mut set = BTreeSet::new();
        for x in &self.0 {
            for y in &other.0 {
                toggle(&mut set, x.mul(y));
            }
        }
        Anf(set)
    }

    pub fn eval(&self, point: &Assignment) -> Result<bool, ExprError> {
        let mut acc = false;
        for m in &self.0 {
            acc ^= m.eval(point)?;
        }
        Ok(acc)
    }

    /// Rendering that factors out a variable common to every monomial, as in
    /// `b&(a ^ c)`. Falls back to the expanded form otherwise. When `own` is
    /// given and `own` itself is one of the monomials, it is split off first so
    /// `t ^ a&b ^ b&c` shows as `t ^ b&(a ^ c)`.
    pub fn display_factored(&self, own: Option<VarId>) -> String {
        if let Some(own) = own {
            let own_m = Monomial::var(own);
            if self.0.contains(&own_m) && self.0.len() > 2 {
                let rest = self.xor(&Anf::from_monomial(own_m));
                return format!("{own} ^ {}", rest.factored());
            }
        }
        self.factored()
    }

    fn factored(&self) -> String {
        if self.0.len() < 2 {
            return self.to_string();
        }
        let mut common: Option<BTreeSet<VarId>> = None;
        for m in &self.0 {
            let vs: BTreeSet<VarId> = m.vars().iter().copied().collect();
            common = Some(match common {
                None => vs,
                Some(c) => c.intersection(&vs).copied().collect(),
            });
        }
        match common.and_then(|c| c.into_iter().next()) {
            Some(v) => {
                let quotient = Anf(self.0.iter().filter_map(|m| m.without(v)).collect());
                format!("{v}&({quotient})")
            }
            None => self.to_string(),
        }
    }
}

fn toggle(set: &mut BTreeSet<Monomial>, m: Monomial) {
    if !set.remove(&m) {
        set.insert(m);
    }
}

impl BitXor for &Anf {
    type Output = Anf;

    fn bitxor(self, rhs: &Anf) -> Anf {
        self.xor(rhs)
    }
}

impl BitXor for Anf {
    type Output = Anf;

    fn bitxor(self, rhs: Anf) -> Anf {
        self.xor(&rhs)
    }
}

impl BitAnd for &Anf {
    type Output = Anf;

    fn bitand(self, rhs: &Anf) -> Anf {
        self.and(rhs)
    }
}

impl BitAnd for Anf {
    type Output = Anf;

    fn bitand(self, rhs: Anf) -> Anf {
        self.and(&rhs)
    }
}

impl fmt::Display for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_char('0');
        }
        for (i, m) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ^ ")?;
            }
            m.write_with(f, "&")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Anf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Anf({self})")
    }
}

impl FromStr for Anf {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        super::parse::parse_anf(s)
    }
}

impl serde::Serialize for Anf {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Anf {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}
