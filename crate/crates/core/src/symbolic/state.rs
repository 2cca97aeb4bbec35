use num_bigint::BigInt;

use crate::expr::{Anf, MlPoly, Monomial};

/// Symbolic value of a line acted on by roots of NOT: `Q_K^E · |base⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetState {
    /// Value of the line when `Q` accumulation began.
    pub base: Anf,
    /// Common root order; `Q_K^K = NOT`. Always a power of two.
    pub k: u32,
    /// Accumulated exponent, coefficients in `[0, 2K)`.
    pub e: MlPoly,
}

impl TargetState {
    pub fn new(base: Anf, k: u32) -> Self {
        TargetState { base, k, e: MlPoly::zero() }
    }

    pub fn modulus(&self) -> u64 {
        2 * u64::from(self.k)
    }

    /// Moves to root order `k` if it is larger than the current one.
    /// `Q_K = Q_{K'}^{K'/K}`, so exponents scale by `K'/K`.
    pub fn rebase(&mut self, k: u32) {
        if k > self.k {
            let factor = k / self.k;
            self.e = self.e.scale(factor).reduce_mod(2 * u64::from(k));
            self.k = k;
        }
    }

    /// Absorbs a controlled `Q_k^p` whose resolved control is `control`.
    pub fn absorb(&mut self, k: u32, p: u32, control: &Anf) {
        self.rebase(k);
        let p = u64::from(p) * u64::from(self.k / k);
        let delta = MlPoly::from_anf(control).scale(p);
        self.e = (&self.e + &delta).reduce_mod(self.modulus());
    }

    /// Returns `f` when `E ≡ K·f (mod 2K)` for a Boolean `f`, i.e. the line
    /// has been updated by `NOT^f`. This is exactly the case where every
    /// coefficient of `E` is `0` or `K`.
    pub fn collapse(&self) -> Option<Anf> {
        collapse(self.k, &self.e)
    }

    /// `base ⊕ f` when the state collapses.
    pub fn collapsed_value(&self) -> Option<Anf> {
        self.collapse().map(|f| self.base.xor(&f))
    }
}

/// Collapse test on a bare `(K, E)` pair; `E` must be reduced mod `2K`.
pub fn collapse(k: u32, e: &MlPoly) -> Option<Anf> {
    let big_k = BigInt::from(k);
    let mut monomials: Vec<Monomial> = Vec::with_capacity(e.len());
    for (m, c) in e.terms() {
        if *c != big_k {
            return None;
        }
        monomials.push(m.clone());
    }
    Some(Anf::from_monomials(monomials))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(s: &str) -> MlPoly {
        s.parse().unwrap()
    }

    #[test]
    fn collapse_examples() {
        assert_eq!(collapse(2, &poly("2*a*b + 2*b*c")), Some("a&b ^ b&c".parse().unwrap()));
        assert_eq!(collapse(2, &poly("a")), None);
        assert_eq!(collapse(4, &poly("4*a*b*c")), Some("a&b&c".parse().unwrap()));
        assert_eq!(collapse(2, &MlPoly::zero()), Some(Anf::zero()));
        assert_eq!(collapse(4, &poly("4*a + 2*b")), None);
    }

    #[test]
    fn collapsed_value_xors_base() {
        let mut ts = TargetState::new("t".parse().unwrap(), 2);
        ts.e = poly("2*a*b + 2*b*c");
        assert_eq!(ts.collapsed_value(), Some("t ^ a&b ^ b&c".parse().unwrap()));
    }

    #[test]
    fn v_as_w_squared() {
        let a: Anf = "a".parse().unwrap();
        let mut as_v = TargetState::new("t".parse().unwrap(), 2);
        as_v.absorb(2, 1, &a);
        as_v.rebase(4);
        let mut as_w = TargetState::new("t".parse().unwrap(), 4);
        as_w.absorb(4, 2, &a);
        assert_eq!(as_v, as_w);
        assert_eq!(as_w.e, poly("2*a"));
    }

    #[test]
    fn absorbing_a_smaller_root_keeps_k() {
        let mut ts = TargetState::new("t".parse().unwrap(), 4);
        ts.absorb(2, 3, &"a".parse().unwrap());
        assert_eq!((ts.k, ts.e.clone()), (4, poly("6*a")));
        ts.absorb(1, 1, &"a".parse().unwrap());
        assert_eq!(ts.e, poly("2*a"));
    }
}
