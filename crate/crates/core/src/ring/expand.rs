//! Taylor expansion of scalar expressions in a chosen set of generators.

use super::coef::Coef;
use super::poly::Poly;
use super::var::Var;

/// Errors from [`expand`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ExpandError {
    /// A denominator vanishes when the expansion generators are set to zero.
    #[error("denominator is not invertible at the expansion point")]
    NonUnit,
}

/// Expands `c` as a power series in `vars` around zero, keeping total
/// degree at most `d` in those generators.
///
/// Denominator factors free of `vars` are kept as they are. A factor
/// `u + w` with `u` free of `vars` and `w` of positive degree is inverted as
/// a geometric series; `u` must be nonzero.
pub fn expand(c: &Coef, vars: &[Var], d: u32) -> Result<Coef, ExpandError> {
    let mut num = c.numer().truncate(vars, d);
    let mut kept: Vec<(Poly, u32)> = Vec::new();
    for (atom, e) in c.denom_factors() {
        if !atom.involves(vars) {
            kept.push((atom.clone(), *e));
            continue;
        }
        let (inv, extra) = invert_series(atom, vars, d)?;
        for _ in 0..*e {
            num = num.mul_truncated(&inv, vars, d);
        }
        if let Some(u) = extra {
            kept.push((u, (d + 1) * *e));
        }
    }
    Coef::from_factors(num, &kept).map_err(|_| ExpandError::NonUnit)
}

/// Returns `(s, u)` with `1/a = s / u^{d+1}` to degree `d` (or `1/a = s`
/// when the degree-zero part of `a` is a rational constant).
fn invert_series(a: &Poly, vars: &[Var], d: u32) -> Result<(Poly, Option<Poly>), ExpandError> {
    let (u, w) = split_degree_zero(a, vars);
    if u.is_zero() {
        return Err(ExpandError::NonUnit);
    }
    let minus_w = w.scale(&super::q::Q::int(-1));
    if let Some(q) = u.as_constant() {
        // 1/(q + w) = (1/q) sum (-w/q)^n
        let r = minus_w.scale(&q.recip());
        let mut term = Poly::constant(q.recip());
        let mut acc = term.clone();
        for _ in 0..d {
            term = term.mul_truncated(&r, vars, d);
            if term.is_zero() {
                break;
            }
            acc = acc.add(&term);
        }
        return Ok((acc, None));
    }
    // 1/(u + w) = sum_{n<=d} (-w)^n u^{d-n} / u^{d+1}
    let mut acc = Poly::zero();
    let mut wpow = Poly::one();
    for n in 0..=d {
        acc = acc.add(&wpow.mul(&u.pow(d - n)));
        wpow = wpow.mul_truncated(&minus_w, vars, d);
        if wpow.is_zero() {
            break;
        }
    }
    Ok((acc.truncate(vars, d), Some(u)))
}

fn split_degree_zero(a: &Poly, vars: &[Var]) -> (Poly, Poly) {
    let (u, w): (Vec<_>, Vec<_>) = a.terms().iter().cloned().partition(|(m, _)| m.degree_in(vars) == 0);
    (Poly::from_terms(u), Poly::from_terms(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        let x = Var::named("ex");
        let b = Coef::sym("eb", None);
        let xc = Coef::var(x);
        let f = Coef::one().div(&Coef::one().sub(&b.mul(&xc))).unwrap();
        let e = expand(&f, &[x], 3).unwrap();
        let want = Coef::one().add(&b.mul(&xc)).add(&b.pow(2).unwrap().mul(&xc.pow(2).unwrap())).add(
            &b.pow(3).unwrap().mul(&xc.pow(3).unwrap()),
        );
        assert_eq!(e, want);
    }

    #[test]
    fn keeps_free_denominators() {
        let x = Var::named("ex2");
        let a = Coef::sym("ea2", None);
        let xc = Coef::var(x);
        let f = xc.add(&Coef::one()).div(&Coef::one().sub(&a)).unwrap();
        assert_eq!(expand(&f, &[x], 5).unwrap(), f);
    }

    #[test]
    fn symbolic_unit_part() {
        // 1/(a + x) = 1/a - x/a^2 + ... ; check that multiplying back gives 1 + O(x^3).
        let x = Var::named("ex3");
        let a = Coef::sym("ea3", None);
        let xc = Coef::var(x);
        let f = Coef::one().div(&a.add(&xc)).unwrap();
        let e = expand(&f, &[x], 2).unwrap();
        let back = e.mul(&a.add(&xc));
        let diff = back.sub(&Coef::one());
        let cut = expand(&diff, &[x], 2).unwrap();
        assert!(cut.is_zero(), "{cut}");
    }

    #[test]
    fn rejects_non_units() {
        let x = Var::named("ex4");
        let f = Coef::one().div(&Coef::var(x)).unwrap();
        assert_eq!(expand(&f, &[x], 2), Err(ExpandError::NonUnit));
    }
}
