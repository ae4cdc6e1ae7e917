//! Univariate rational functions over the scalar field, with residues.

use super::coef::{Coef, CoefError};
use super::poly::Poly;
use super::var::Var;
use std::fmt;

/// Errors from rational-function operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RatFnError {
    /// The denominator would be zero.
    #[error("division by zero")]
    DivisionByZero,
    /// The requested point is not a pole.
    #[error("`{0}` is not a root of the denominator")]
    NotAPole(String),
    /// Scalar arithmetic failed.
    #[error(transparent)]
    Coef(#[from] CoefError),
}

/// Polynomial in the distinguished variable: coefficients low to high, no
/// trailing zeros.
type UPoly = Vec<Coef>;

fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn uadd(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out: UPoly = (0..n)
        .map(|i| match (a.get(i), b.get(i)) {
            (Some(x), Some(y)) => x.add(y),
            (Some(x), None) => x.clone(),
            (None, Some(y)) => y.clone(),
            (None, None) => Coef::zero(),
        })
        .collect();
    trim(&mut out);
    out
}


fn umul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Coef::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    trim(&mut out);
    out
}

fn uscale(a: &UPoly, c: &Coef) -> UPoly {
    let mut out: UPoly = a.iter().map(|x| x.mul(c)).collect();
    trim(&mut out);
    out
}

/// Division with remainder by a nonzero polynomial.
fn udivrem(a: &UPoly, b: &UPoly) -> Result<(UPoly, UPoly), RatFnError> {
    let lb = b.last().ok_or(RatFnError::DivisionByZero)?;
    let mut r = a.clone();
    if r.len() < b.len() {
        return Ok((Vec::new(), r));
    }
    let mut q = vec![Coef::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().expect("nonempty").div(lb)?;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&c));
        }
        q[shift] = c;
        // The leading coefficient cancels exactly.
        r.pop();
        trim(&mut r);
    }
    trim(&mut q);
    Ok((q, r))
}


fn ueval(a: &UPoly, c: &Coef) -> Coef {
    let mut acc = Coef::zero();
    for x in a.iter().rev() {
        acc = acc.mul(c).add(x);
    }
    acc
}

/// Coefficients of `a(c + t)` as a polynomial in `t`.
fn ushift(a: &UPoly, c: &Coef) -> UPoly {
    // Horner with polynomial arithmetic: a(c+t) = (...(a_n)(c+t) + a_{n-1})...
    let ct: UPoly = vec![c.clone(), Coef::one()];
    let mut acc: UPoly = Vec::new();
    for x in a.iter().rev() {
        acc = uadd(&umul(&acc, &ct), &vec![x.clone()]);
    }
    acc
}

/// A rational function of one distinguished generator over the scalar
/// field. The value is held as a factored fraction; denominator factors
/// that divide the numerator are cancelled, so for the linear factors that
/// arise from shifted powers the fraction is in lowest terms.
#[derive(Clone)]
pub struct RatFn {
    var: Var,
    value: Coef,
}

fn upoly_of(p: &Poly, var: Var) -> UPoly {
    let mut v: UPoly = p.coefficients_in(var).into_iter().map(Coef::from_poly).collect();
    trim(&mut v);
    v
}

impl RatFn {
    /// A constant.
    pub fn constant(var: Var, c: Coef) -> RatFn {
        RatFn { var, value: c }
    }

    /// The distinguished generator itself.
    pub fn identity(var: Var) -> RatFn {
        RatFn { var, value: Coef::var(var) }
    }

    /// From coefficient lists (low to high).
    pub fn from_parts(var: Var, num: Vec<Coef>, den: Vec<Coef>) -> Result<RatFn, RatFnError> {
        let z = Coef::var(var);
        let value = ueval(&num, &z).div(&ueval(&den, &z)).map_err(|_| RatFnError::DivisionByZero)?;
        Ok(RatFn { var, value })
    }

    /// Reads a scalar as a rational function of `var`.
    pub fn from_coef(c: &Coef, var: Var) -> Result<RatFn, RatFnError> {
        Ok(RatFn { var, value: c.clone() })
    }

    /// Back to a scalar expression in which `var` is a generator.
    pub fn to_coef(&self) -> Result<Coef, RatFnError> {
        Ok(self.value.clone())
    }

    /// The underlying scalar expression.
    pub fn value(&self) -> &Coef {
        &self.value
    }

    /// The distinguished generator.
    pub fn var(&self) -> Var {
        self.var
    }

    /// Numerator and denominator as coefficient lists in the distinguished
    /// generator (low to high), the denominator made monic.
    pub fn parts(&self) -> Result<(Vec<Coef>, Vec<Coef>), RatFnError> {
        let mut den: UPoly = vec![Coef::one()];
        let mut scalar = Coef::one();
        for (a, e) in self.value.denom_factors() {
            if a.involves(&[self.var]) {
                let ua = upoly_of(a, self.var);
                for _ in 0..*e {
                    den = umul(&den, &ua);
                }
            } else {
                scalar = scalar.mul(&Coef::from_poly(a.pow(*e)));
            }
        }
        let num = upoly_of(self.value.numer(), self.var);
        let lead = den.last().expect("nonzero").mul(&scalar);
        let inv = lead.recip()?;
        let den = uscale(&den, &scalar.mul(&inv));
        Ok((uscale(&num, &inv), den))
    }

    /// Whether zero.
    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// Whether no denominator factor involves the distinguished generator.
    pub fn is_polynomial(&self) -> bool {
        self.value.denom_factors().iter().all(|(a, _)| !a.involves(&[self.var]))
    }

    fn check(&self, o: &RatFn) {
        assert_eq!(self.var, o.var, "rational functions in different variables");
    }

    /// Sum.
    pub fn add(&self, o: &RatFn) -> Result<RatFn, RatFnError> {
        self.check(o);
        Ok(RatFn { var: self.var, value: self.value.add(&o.value) })
    }

    /// Difference.
    pub fn sub(&self, o: &RatFn) -> Result<RatFn, RatFnError> {
        self.check(o);
        Ok(RatFn { var: self.var, value: self.value.sub(&o.value) })
    }

    /// Negation.
    pub fn neg(&self) -> RatFn {
        RatFn { var: self.var, value: self.value.neg() }
    }

    /// Product.
    pub fn mul(&self, o: &RatFn) -> Result<RatFn, RatFnError> {
        self.check(o);
        Ok(RatFn { var: self.var, value: self.value.mul(&o.value) })
    }

    /// Quotient.
    pub fn div(&self, o: &RatFn) -> Result<RatFn, RatFnError> {
        self.check(o);
        Ok(RatFn { var: self.var, value: self.value.div(&o.value)? })
    }

    /// Integer power.
    pub fn pow(&self, e: i32) -> Result<RatFn, RatFnError> {
        Ok(RatFn { var: self.var, value: self.value.pow(e)? })
    }

    /// Multiplies by a scalar.
    pub fn scale(&self, c: &Coef) -> RatFn {
        RatFn { var: self.var, value: self.value.mul(c) }
    }

    /// Value at a point (the point must not be a pole).
    pub fn eval(&self, c: &Coef) -> Result<Coef, RatFnError> {
        let (num, den) = self.parts()?;
        let d = ueval(&den, c);
        if d.is_zero() {
            return Err(RatFnError::DivisionByZero);
        }
        Ok(ueval(&num, c).div(&d)?)
    }

    /// Residue at the finite point `pole`, which must be a root of the
    /// denominator. Poles of any order are handled by expanding the
    /// numerator and the pole-free part of the denominator around the point.
    pub fn residue_at(&self, pole: &Coef) -> Result<Coef, RatFnError> {
        let lin: UPoly = vec![pole.neg(), Coef::one()];
        let mut order = 0usize;
        // Cofactors q_a with atom = (z - pole)^{r_a} q_a, each with its exponent.
        let mut cofactors: Vec<(UPoly, u32)> = Vec::new();
        let mut scalar = Coef::one();
        for (a, e) in self.value.denom_factors() {
            if !a.involves(&[self.var]) {
                scalar = scalar.mul(&Coef::from_poly(a.pow(*e)));
                continue;
            }
            let mut q = upoly_of(a, self.var);
            loop {
                let (quot, rem) = udivrem(&q, &lin)?;
                if !rem.is_empty() {
                    break;
                }
                q = quot;
                order += *e as usize;
            }
            cofactors.push((q, *e));
        }
        if order == 0 {
            return Err(RatFnError::NotAPole(pole.to_string()));
        }
        // residue = [t^{order-1}] num(pole+t) / prod q_a(pole+t)^{e_a}
        let mut acc = truncate_series(ushift(&upoly_of(self.value.numer(), self.var), pole), order);
        for (q, e) in &cofactors {
            let inv = series_inverse(&ushift(q, pole), order)
                .ok_or_else(|| RatFnError::NotAPole(pole.to_string()))?;
            for _ in 0..*e {
                acc = truncate_series(umul(&acc, &inv), order);
            }
        }
        let res = acc.get(order - 1).cloned().unwrap_or_else(Coef::zero);
        Ok(res.div(&scalar)?)
    }

    /// Taylor expansion of the value in the given generators.
    pub fn expand(&self, vars: &[Var], d: u32) -> Result<Coef, super::expand::ExpandError> {
        super::expand::expand(&self.value, vars, d)
    }
}

fn truncate_series(mut a: UPoly, n: usize) -> UPoly {
    a.truncate(n);
    trim(&mut a);
    a
}

/// Power-series inverse to `n` terms; `None` when the constant term is zero.
fn series_inverse(d: &UPoly, n: usize) -> Option<UPoly> {
    let d0 = d.first()?;
    if d0.is_zero() {
        return None;
    }
    let inv0 = d0.recip().ok()?;
    let mut inv: UPoly = vec![inv0.clone()];
    for k in 1..n {
        let mut s = Coef::zero();
        for j in 1..=k {
            if let Some(dj) = d.get(j) {
                s = s.add(&dj.mul(&inv[k - j]));
            }
        }
        inv.push(s.mul(&inv0).neg());
    }
    Some(inv)
}

impl PartialEq for RatFn {
    fn eq(&self, o: &RatFn) -> bool {
        self.var == o.var && self.value == o.value
    }
}

impl fmt::Display for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for RatFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}



#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_simple_pole() {
        // 1/((z - b)(1 - a z)) at z = b is 1/(1 - a b).
        let z = Var::named("rz");
        let a = Coef::sym("ra", None);
        let b = Coef::sym("rb", None);
        let zc = Coef::var(z);
        let f = Coef::one().div(&zc.sub(&b).mul(&Coef::one().sub(&a.mul(&zc)))).unwrap();
        let r = RatFn::from_coef(&f, z).unwrap();
        let res = r.residue_at(&b).unwrap();
        assert_eq!(res, Coef::one().div(&Coef::one().sub(&a.mul(&b))).unwrap());
    }

    #[test]
    fn residue_of_one_over_z() {
        let z = Var::named("rz2");
        let r = RatFn::from_coef(&Coef::one().div(&Coef::var(z)).unwrap(), z).unwrap();
        assert_eq!(r.residue_at(&Coef::zero()).unwrap(), Coef::one());
        assert!(r.residue_at(&Coef::one()).is_err());
    }

    #[test]
    fn residue_higher_order() {
        // e^{...}-free check: z^2/(z - b)^3 has residue 1 at b.
        let z = Var::named("rz3");
        let b = Coef::sym("rb3", None);
        let zc = Coef::var(z);
        let f = zc.mul(&zc).div(&zc.sub(&b).pow(3).unwrap()).unwrap();
        let r = RatFn::from_coef(&f, z).unwrap();
        assert_eq!(r.residue_at(&b).unwrap(), Coef::one());
        // (z+1)/(z-b)^2 has residue 1.
        let g = zc.add(&Coef::one()).div(&zc.sub(&b).pow(2).unwrap()).unwrap();
        assert_eq!(RatFn::from_coef(&g, z).unwrap().residue_at(&b).unwrap(), Coef::one());
    }

    #[test]
    fn normalization_cancels_common_factors() {
        let z = Var::named("rz4");
        let b = Coef::sym("rb4", None);
        let zc = Coef::var(z);
        let lin = RatFn::from_coef(&zc.sub(&b), z).unwrap();
        let sq = lin.mul(&lin).unwrap();
        let q = sq.div(&lin).unwrap();
        assert_eq!(q, lin);
        assert!(q.is_polynomial());
    }
}
