use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use super::ExprError;

fn interner() -> &'static Mutex<HashSet<&'static str>> {
    static INTERNER: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
    INTERNER.get_or_init(|| Mutex::new(HashSet::new()))
}

/// An interned identifier naming a Boolean variable (a circuit line).
///
/// Two `VarId`s with the same name share one allocation, so equality and
/// hashing work on the pointer. Ordering is by name.
#[derive(Clone, Copy)]
pub struct VarId(&'static str);

impl VarId {
    pub fn new(name: &str) -> Result<Self, ExprError> {
        if !is_identifier(name) {
            return Err(ExprError::InvalidName(name.to_owned()));
        }
        let mut set = interner().lock().unwrap_or_else(|e| e.into_inner());
        if let Some(existing) = set.get(name) {
            return Ok(VarId(existing));
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        set.insert(leaked);
        Ok(VarId(leaked))
    }

    pub fn as_str(&self) -> &'static str {
        self.0
    }
}

pub(crate) fn is_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PartialEq for VarId {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}

impl Eq for VarId {}

impl Hash for VarId {
    fn hash<H: Hasher>(&self, state: &mut H) {
        (self.0.as_ptr() as usize).hash(state);
    }
}

impl PartialOrd for VarId {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for VarId {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            Ordering::Equal
        } else {
            self.0.cmp(other.0)
        }
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl fmt::Debug for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

impl std::str::FromStr for VarId {
    type Err = ExprError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VarId::new(s)
    }
}

impl serde::Serialize for VarId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.0)
    }
}

impl<'de> serde::Deserialize<'de> for VarId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let name = String::deserialize(d)?;
        VarId::new(&name).map_err(serde::de::Error::custom)
    }
}

/// A 0/1 value for each variable of an expression.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Assignment(BTreeMap<VarId, bool>);

impl Assignment {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, var: VarId, value: bool) {
        self.0.insert(var, value);
    }

    pub fn with(mut self, var: VarId, value: bool) -> Self {
        self.set(var, value);
        self
    }

    pub fn get(&self, var: VarId) -> Result<bool, ExprError> {
        self.0.get(&var).copied().ok_or(ExprError::UnboundVar(var))
    }

    pub fn iter(&self) -> impl Iterator<Item = (VarId, bool)> + '_ {
        self.0.iter().map(|(v, b)| (*v, *b))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Builds the point whose bit `i` (least significant first) is the value of `vars[i]`.
    pub fn from_mask(vars: &[VarId], mask: u64) -> Self {
        Assignment(
            vars.iter()
                .enumerate()
                .map(|(i, v)| (*v, mask >> i & 1 == 1))
                .collect(),
        )
    }

    /// All `2^n` points over `vars` in counting order, with `vars[0]` the most
    /// significant bit. The first point is all-zeros.
    pub fn enumerate(vars: &[VarId]) -> impl Iterator<Item = Assignment> + '_ {
        let n = vars.len();
        (0..1u64 << n).map(move |index| {
            Assignment(
                vars.iter()
                    .enumerate()
                    .map(|(i, v)| (*v, index >> (n - 1 - i) & 1 == 1))
                    .collect(),
            )
        })
    }

    /// Renders as `a=0 b=1 ...` in the given variable order.
    pub fn display_in(&self, order: &[VarId]) -> String {
        order
            .iter()
            .filter_map(|v| self.0.get(v).map(|b| format!("{}={}", v, u8::from(*b))))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl FromIterator<(VarId, bool)> for Assignment {
    fn from_iter<I: IntoIterator<Item = (VarId, bool)>>(iter: I) -> Self {
        Assignment(iter.into_iter().collect())
    }
}

impl fmt::Display for Assignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order: Vec<VarId> = self.0.keys().copied().collect();
        f.write_str(&self.display_in(&order))
    }
}
