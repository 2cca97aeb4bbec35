use num_bigint::BigInt;

use super::{ExprError, MlPoly, Monomial, VarId};

/// Default bound on the number of variables for any `2^n` enumeration.
pub const DEFAULT_ENUM_GUARD: usize = 20;

fn check_guard(n: usize, guard: usize) -> Result<(), ExprError> {
    if n > guard {
        Err(ExprError::TooManyVars { count: n, guard })
    } else {
        Ok(())
    }
}

/// Values of `p` at all `2^n` points of `vars`, indexed by bitmask with bit
/// `i` holding `vars[i]` (subset-sum / zeta transform of the coefficients).
///
/// Variables of `p` outside `vars` are an error.
pub fn values_of(p: &MlPoly, vars: &[VarId], guard: usize) -> Result<Vec<BigInt>, ExprError> {
    check_guard(vars.len(), guard)?;
    let mut table = vec![BigInt::default(); 1 << vars.len()];
    for (m, c) in p.terms() {
        table[mask_of(m, vars)?] += c;
    }
    for bit in 0..vars.len() {
        let step = 1usize << bit;
        for mask in 0..table.len() {
            if mask & step != 0 {
                let lower = table[mask ^ step].clone();
                table[mask] += lower;
            }
        }
    }
    Ok(table)
}

/// Recovers the multilinear polynomial from its values on every point of
/// `vars` (Möbius transform over the subset lattice). `values` is indexed as
/// in [`values_of`].
pub fn mobius_from_values(
    values: &[BigInt],
    vars: &[VarId],
    guard: usize,
) -> Result<MlPoly, ExprError> {
    check_guard(vars.len(), guard)?;
    let size = 1usize << vars.len();
    if values.len() != size {
        return Err(ExprError::ValueCount { expected: size, found: values.len() });
    }
    let mut table = values.to_vec();
    for bit in 0..vars.len() {
        let step = 1usize << bit;
        for mask in 0..size {
            if mask & step != 0 {
                let lower = table[mask ^ step].clone();
                table[mask] -= lower;
            }
        }
    }
    let mut out = MlPoly::zero();
    for (mask, c) in table.into_iter().enumerate() {
        let m = Monomial::from_vars(
            vars.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, v)| *v),
        );
        out = &out + &MlPoly::term(c, m);
    }
    Ok(out)
}

fn mask_of(m: &Monomial, vars: &[VarId]) -> Result<usize, ExprError> {
    let mut mask = 0;
    for v in m.vars() {
        let i = vars.iter().position(|x| x == v).ok_or(ExprError::UnboundVar(*v))?;
        mask |= 1 << i;
    }
    Ok(mask)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::Anf;

    fn v(name: &str) -> VarId {
        VarId::new(name).unwrap()
    }

    fn ints(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn xor_values_give_the_arith_form() {
        let vars = [v("a"), v("b")];
        let p = mobius_from_values(&ints(&[0, 1, 1, 0]), &vars, DEFAULT_ENUM_GUARD).unwrap();
        assert_eq!(p, "a + b - 2*a*b".parse().unwrap());
        assert_eq!(p, MlPoly::from_anf(&"a ^ b".parse::<Anf>().unwrap()));
    }

    #[test]
    fn and_and_zero() {
        let vars = [v("a"), v("b")];
        let p = mobius_from_values(&ints(&[0, 0, 0, 1]), &vars, DEFAULT_ENUM_GUARD).unwrap();
        assert_eq!(p, "a*b".parse().unwrap());
        let z = mobius_from_values(&ints(&[0, 0, 0, 0]), &vars, DEFAULT_ENUM_GUARD).unwrap();
        assert!(z.is_empty());
    }

    #[test]
    fn guard_and_shape_errors() {
        let vars: Vec<VarId> = (0..4).map(|i| v(&format!("x{i}"))).collect();
        assert!(matches!(
            mobius_from_values(&ints(&[0; 16]), &vars, 3),
            Err(ExprError::TooManyVars { count: 4, guard: 3 })
        ));
        assert!(matches!(
            mobius_from_values(&ints(&[0; 8]), &vars, 20),
            Err(ExprError::ValueCount { expected: 16, found: 8 })
        ));
        assert!(values_of(&"y".parse().unwrap(), &vars, 20).is_err());
    }

    #[test]
    fn values_of_matches_pointwise_eval() {
        let vars = [v("a"), v("b"), v("c")];
        let p: MlPoly = "3 - a + 2*a*b - 5*a*b*c + c".parse().unwrap();
        let table = values_of(&p, &vars, DEFAULT_ENUM_GUARD).unwrap();
        for (mask, val) in table.iter().enumerate() {
            let point = crate::expr::Assignment::from_mask(&vars, mask as u64);
            assert_eq!(&p.eval(&point).unwrap(), val);
        }
    }
}
