use std::cmp::Ordering;
use std::fmt;

use super::{Assignment, ExprError, VarId};

/// A product of distinct variables. The empty product is the constant `1`.
///
/// Monomials are ordered by degree first, then lexicographically by their
/// sorted variable names.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<VarId>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: VarId) -> Self {
        Monomial(vec![v])
    }

    pub fn from_vars<I: IntoIterator<Item = VarId>>(vars: I) -> Self {
        let mut vars: Vec<VarId> = vars.into_iter().collect();
        vars.sort();
        vars.dedup();
        Monomial(vars)
    }

    pub fn vars(&self) -> &[VarId] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Multilinear product: `v·v = v`, so this is the union of the variable sets.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                Ordering::Less => {
                    out.push(self.0[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    out.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// The monomial with `v` removed, if `v` occurs.
    pub fn without(&self, v: VarId) -> Option<Monomial> {
        let pos = self.0.binary_search(&v).ok()?;
        let mut vars = self.0.clone();
        vars.remove(pos);
        Some(Monomial(vars))
    }

    pub fn eval(&self, point: &Assignment) -> Result<bool, ExprError> {
        for v in &self.0 {
            if !point.get(*v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Writes the monomial with `sep` between variables; `1` for the constant.
    pub(crate) fn write_with(&self, f: &mut impl fmt::Write, sep: &str) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            f.write_str(v.as_str())?;
        }
        Ok(())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_with(f, "&")
    }
}
