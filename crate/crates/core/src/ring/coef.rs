//! Exact scalars: rational functions kept as a polynomial numerator over a
//! product of normalized denominator factors.
//!
//! Denominators in this crate are almost always products of small factors
//! such as `1 - beta[j]*x` or `1 - alpha[j]*beta[j]`, so they are stored in
//! factored form. Each factor ("atom") is normalized to have constant term
//! one, or, when it has no constant term, leading coefficient one in the
//! user-visible generator order; monomial factors are split into single
//! generators. After every operation the numerator is tested for divisibility
//! by each atom and common atoms are cancelled.
//!
//! Equality first compares the stored form and falls back to
//! cross-multiplication, so it is exact even when two equal values reached
//! different factorizations of their denominators.

use super::mono::Mono;
use super::poly::Poly;
use super::q::Q;
use super::var::Var;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

/// Error for invalid scalar operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CoefError {
    /// Division by an exact zero.
    #[error("division by zero")]
    DivisionByZero,
    /// A scalar expression could not be parsed.
    #[error("cannot parse scalar expression `{0}`: {1}")]
    Parse(String, String),
}

/// An exact scalar: rational number, polynomial, or rational function in the
/// symbolic generators.
#[derive(Clone, Default)]
pub struct Coef {
    num: Poly,
    den: Vec<(Poly, u32)>,
}

/// Splits a nonzero polynomial into `scalar * monomial * atom`, where the
/// atom is normalized (or `1`).
fn normalize_atom(p: &Poly) -> (Q, Mono, Poly) {
    let content = p.monomial_content();
    let p = if content.is_one() {
        p.clone()
    } else {
        p.div_exact(&Poly::term(content.clone(), Q::one())).expect("monomial content divides")
    };
    let c0 = p.constant_term();
    let scale = if !c0.is_zero() {
        c0
    } else {
        p.display_leading_coeff().expect("nonzero polynomial")
    };
    let atom = p.scale(&scale.recip());
    (scale, content, atom)
}

fn insert_atom(den: &mut Vec<(Poly, u32)>, atom: Poly, e: u32) {
    if e == 0 || atom.is_one() {
        return;
    }
    match den.binary_search_by(|(a, _)| a.cmp(&atom)) {
        Ok(i) => den[i].1 += e,
        Err(i) => den.insert(i, (atom, e)),
    }
}

fn could_divide(num_vars: &[Var], atom: &Poly) -> bool {
    atom.vars().iter().all(|v| num_vars.binary_search(v).is_ok())
}

impl Coef {
    /// Zero.
    pub fn zero() -> Coef {
        Coef { num: Poly::zero(), den: Vec::new() }
    }

    /// One.
    pub fn one() -> Coef {
        Coef::from_poly(Poly::one())
    }

    /// An integer constant.
    pub fn int(n: i64) -> Coef {
        Coef::from_poly(Poly::int(n))
    }

    /// A rational constant.
    pub fn rational(q: Q) -> Coef {
        Coef::from_poly(Poly::constant(q))
    }

    /// The generator `v`.
    pub fn var(v: Var) -> Coef {
        Coef::from_poly(Poly::var(v))
    }

    /// The generator with the given name and optional index.
    pub fn sym(name: &str, index: Option<i64>) -> Coef {
        Coef::var(Var::new(name, index))
    }

    /// A polynomial.
    pub fn from_poly(p: Poly) -> Coef {
        Coef { num: p, den: Vec::new() }
    }

    /// `num / Π den_i^{e_i}` with the given (not necessarily normalized)
    /// denominator factors.
    pub fn from_factors(num: Poly, den: &[(Poly, u32)]) -> Result<Coef, CoefError> {
        let mut c = Coef::from_poly(num);
        for (d, e) in den {
            for _ in 0..*e {
                c = c.div_poly(d)?;
            }
        }
        Ok(c)
    }

    /// The numerator.
    pub fn numer(&self) -> &Poly {
        &self.num
    }

    /// The normalized denominator factors with multiplicities.
    pub fn denom_factors(&self) -> &[(Poly, u32)] {
        &self.den
    }

    /// The expanded denominator.
    pub fn denom(&self) -> Poly {
        self.den.iter().fold(Poly::one(), |acc, (a, e)| acc.mul(&a.pow(*e)))
    }

    /// Whether this is zero.
    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// Whether this is one.
    pub fn is_one(&self) -> bool {
        self.den.is_empty() && self.num.is_one()
    }

    /// Whether the denominator is trivial.
    pub fn is_poly(&self) -> bool {
        self.den.is_empty()
    }

    /// The rational value, if constant.
    pub fn as_rational(&self) -> Option<Q> {
        if self.den.is_empty() {
            self.num.as_constant()
        } else {
            None
        }
    }

    /// The polynomial value, if the denominator is trivial.
    pub fn as_poly(&self) -> Option<&Poly> {
        if self.den.is_empty() {
            Some(&self.num)
        } else {
            None
        }
    }

    /// Cancels denominator atoms that divide the numerator.
    fn reduce(mut self) -> Coef {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        if self.den.is_empty() || self.num.as_constant().is_some() {
            return self;
        }
        let mut num_vars = self.num.vars();
        let mut i = 0;
        while i < self.den.len() {
            while self.den[i].1 > 0
                && could_divide(&num_vars, &self.den[i].0)
                && super::modp::may_divide(&self.num, &self.den[i].0)
            {
                match self.num.div_exact(&self.den[i].0) {
                    Some(q) => {
                        self.num = q;
                        self.den[i].1 -= 1;
                        num_vars = self.num.vars();
                    }
                    None => break,
                }
            }
            if self.den[i].1 == 0 {
                self.den.remove(i);
            } else {
                i += 1;
            }
        }
        self
    }

    /// Divides by a nonzero polynomial.
    pub fn div_poly(&self, d: &Poly) -> Result<Coef, CoefError> {
        if d.is_zero() {
            return Err(CoefError::DivisionByZero);
        }
        if let Some(q) = super::modp::may_divide(&self.num, d).then(|| self.num.div_exact(d)).flatten() {
            return Ok(Coef { num: q, den: self.den.clone() });
        }
        let (scale, content, atom) = normalize_atom(d);
        let mut den = self.den.clone();
        for (v, e) in content.factors() {
            insert_atom(&mut den, Poly::var(v), e);
        }
        insert_atom(&mut den, atom, 1);
        Ok(Coef { num: self.num.scale(&scale.recip()), den }.reduce())
    }

    fn lcm_den(a: &[(Poly, u32)], b: &[(Poly, u32)]) -> Vec<(Poly, u32)> {
        let mut out = a.to_vec();
        for (p, e) in b {
            match out.binary_search_by(|(x, _)| x.cmp(p)) {
                Ok(i) => out[i].1 = out[i].1.max(*e),
                Err(i) => out.insert(i, (p.clone(), *e)),
            }
        }
        out
    }

    /// The polynomial `Π_{atoms of l} a^{e_l - e_own}`.
    fn cofactor(l: &[(Poly, u32)], own: &[(Poly, u32)]) -> Poly {
        let mut acc = Poly::one();
        for (p, e) in l {
            let have = own.binary_search_by(|(x, _)| x.cmp(p)).map(|i| own[i].1).unwrap_or(0);
            if *e > have {
                acc = acc.mul(&p.pow(e - have));
            }
        }
        acc
    }

    fn add_signed(&self, o: &Coef, negate: bool) -> Coef {
        let on = if negate { o.num.scale(&Q::int(-1)) } else { o.num.clone() };
        if o.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return Coef { num: on, den: o.den.clone() };
        }
        if self.den == o.den {
            return Coef { num: self.num.add(&on), den: self.den.clone() }.reduce();
        }
        let l = Coef::lcm_den(&self.den, &o.den);
        let a = self.num.mul(&Coef::cofactor(&l, &self.den));
        let b = on.mul(&Coef::cofactor(&l, &o.den));
        Coef { num: a.add(&b), den: l }.reduce()
    }

    /// Sum.
    pub fn add(&self, o: &Coef) -> Coef {
        self.add_signed(o, false)
    }

    /// Difference.
    pub fn sub(&self, o: &Coef) -> Coef {
        self.add_signed(o, true)
    }

    /// Product.
    pub fn mul(&self, o: &Coef) -> Coef {
        if self.is_zero() || o.is_zero() {
            return Coef::zero();
        }
        if self.den.is_empty() && o.den.is_empty() {
            return Coef::from_poly(self.num.mul(&o.num));
        }
        // Cross-cancel: each operand is already reduced against its own
        // denominator, so only the other operand's atoms can cancel.
        let a = Coef { num: self.num.clone(), den: o.den.clone() }.reduce();
        let b = Coef { num: o.num.clone(), den: self.den.clone() }.reduce();
        let mut den = a.den;
        for (p, e) in b.den {
            insert_atom(&mut den, p, e);
        }
        Coef { num: a.num.mul(&b.num), den }
    }

    /// Multiplicative inverse.
    pub fn recip(&self) -> Result<Coef, CoefError> {
        if self.is_zero() {
            return Err(CoefError::DivisionByZero);
        }
        Coef::from_poly(self.denom()).div_poly(&self.num)
    }

    /// Quotient.
    pub fn div(&self, o: &Coef) -> Result<Coef, CoefError> {
        if o.is_zero() {
            return Err(CoefError::DivisionByZero);
        }
        // Multiply by o's denominator atoms, then divide by its numerator.
        let mut num = self.num.clone();
        let mut den = self.den.clone();
        for (p, e) in &o.den {
            for _ in 0..*e {
                match den.binary_search_by(|(x, _)| x.cmp(p)) {
                    Ok(i) => {
                        den[i].1 -= 1;
                        if den[i].1 == 0 {
                            den.remove(i);
                        }
                    }
                    Err(_) => num = num.mul(p),
                }
            }
        }
        Coef { num, den }.div_poly(&o.num)
    }

    /// Negation.
    pub fn neg(&self) -> Coef {
        Coef { num: self.num.scale(&Q::int(-1)), den: self.den.clone() }
    }

    /// Multiplies by a rational.
    pub fn scale(&self, q: &Q) -> Coef {
        if q.is_zero() {
            return Coef::zero();
        }
        Coef { num: self.num.scale(q), den: self.den.clone() }
    }

    /// Integer power; negative powers invert.
    pub fn pow(&self, e: i32) -> Result<Coef, CoefError> {
        if e < 0 {
            return self.recip()?.pow(-e);
        }
        let mut den = self.den.clone();
        for d in den.iter_mut() {
            d.1 *= e as u32;
        }
        den.retain(|d| d.1 > 0);
        Ok(Coef { num: self.num.pow(e as u32), den })
    }

    /// Generators occurring in numerator or denominator.
    pub fn vars(&self) -> Vec<Var> {
        let mut v = self.num.vars();
        for (a, _) in &self.den {
            v.extend(a.vars());
        }
        v.sort();
        v.dedup();
        v
    }

    /// Substitutes generators by scalars; `None` keeps the generator.
    pub fn subst(&self, f: &dyn Fn(Var) -> Option<Coef>) -> Result<Coef, CoefError> {
        let num = subst_poly(&self.num, f)?;
        let mut den = Coef::one();
        for (a, e) in &self.den {
            let s = subst_poly(a, f)?;
            den = den.mul(&s.pow(*e as i32)?);
        }
        num.div(&den)
    }

    /// Canonical string form.
    pub fn canonical(&self) -> String {
        self.to_string()
    }

    /// Parses the canonical string form (and general scalar expressions).
    pub fn parse(s: &str) -> Result<Coef, CoefError> {
        super::parse::parse_coef(s)
    }
}

fn subst_poly(p: &Poly, f: &dyn Fn(Var) -> Option<Coef>) -> Result<Coef, CoefError> {
    let vars = p.vars();
    let reps: Vec<(Var, Coef)> = vars.iter().filter_map(|v| f(*v).map(|c| (*v, c))).collect();
    if reps.iter().all(|(_, c)| c.is_poly()) {
        let map: rustc_hash::FxHashMap<Var, Poly> =
            reps.into_iter().map(|(v, c)| (v, c.num)).collect();
        return Ok(Coef::from_poly(p.subst(&|v| map.get(&v).cloned())));
    }
    // General case: Horner-free term-by-term evaluation.
    let mut acc = Coef::zero();
    for (m, c) in p.terms() {
        let mut t = Coef::rational(c.clone());
        for (v, e) in m.factors() {
            let base = match reps.iter().find(|(w, _)| *w == v) {
                Some((_, r)) => r.clone(),
                None => Coef::var(v),
            };
            t = t.mul(&base.pow(e as i32)?);
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

impl PartialEq for Coef {
    fn eq(&self, o: &Coef) -> bool {
        if self.den == o.den {
            return self.num == o.num;
        }
        if self.is_zero() || o.is_zero() {
            return self.is_zero() && o.is_zero();
        }
        let l = Coef::lcm_den(&self.den, &o.den);
        self.num.mul(&Coef::cofactor(&l, &self.den)) == o.num.mul(&Coef::cofactor(&l, &o.den))
    }
}

impl Eq for Coef {}

impl From<i64> for Coef {
    fn from(n: i64) -> Coef {
        Coef::int(n)
    }
}

impl From<Q> for Coef {
    fn from(q: Q) -> Coef {
        Coef::rational(q)
    }
}

impl From<Poly> for Coef {
    fn from(p: Poly) -> Coef {
        Coef::from_poly(p)
    }
}

impl From<Var> for Coef {
    fn from(v: Var) -> Coef {
        Coef::var(v)
    }
}

impl Add for &Coef {
    type Output = Coef;
    fn add(self, o: &Coef) -> Coef {
        Coef::add(self, o)
    }
}
impl Sub for &Coef {
    type Output = Coef;
    fn sub(self, o: &Coef) -> Coef {
        Coef::sub(self, o)
    }
}
impl Mul for &Coef {
    type Output = Coef;
    fn mul(self, o: &Coef) -> Coef {
        Coef::mul(self, o)
    }
}
impl Div for &Coef {
    type Output = Coef;
    /// Panics on division by zero; use [`Coef::div`] for a checked version.
    fn div(self, o: &Coef) -> Coef {
        Coef::div(self, o).expect("division by zero")
    }
}
impl Neg for &Coef {
    type Output = Coef;
    fn neg(self) -> Coef {
        Coef::neg(self)
    }
}

fn wrap(p: &Poly) -> String {
    if p.len() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_empty() {
            return write!(f, "{}", self.num);
        }
        let mut parts: Vec<String> = self
            .den
            .iter()
            .map(|(a, e)| if *e == 1 { wrap(a) } else { format!("{}^{e}", wrap(a)) })
            .collect();
        parts.sort();
        let den = if parts.len() == 1 && self.den[0].1 == 1 && self.den[0].0.len() == 1 {
            parts[0].clone()
        } else if parts.len() == 1 {
            parts[0].clone()
        } else {
            format!("({})", parts.join("*"))
        };
        write!(f, "{}/{}", wrap(&self.num), den)
    }
}

impl fmt::Debug for Coef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: &str) -> Coef {
        Coef::sym(n, None)
    }

    #[test]
    fn rational_arithmetic() {
        let a = Coef::rational(Q::frac(1, 2));
        let b = Coef::rational(Q::frac(1, 3));
        assert_eq!(a.add(&b), Coef::rational(Q::frac(5, 6)));
        assert!(a.div(&Coef::zero()).is_err());
    }

    #[test]
    fn monomial_product() {
        let p = Coef::sym("alpha", Some(1)).mul(&Coef::sym("beta", Some(1)));
        assert_eq!(p.to_string(), "alpha[1]*beta[1]");
    }

    #[test]
    fn fraction_reduces_to_one() {
        let ab = Coef::sym("alpha", Some(1)).mul(&Coef::sym("beta", Some(1)));
        let f = Coef::one().sub(&ab);
        let q = f.div(&f).unwrap();
        assert!(q.is_one());
    }

    #[test]
    fn cancellation_and_canonical_form() {
        let x = s("cx");
        let y = s("cy");
        let one = Coef::one();
        // (x^2 - y^2)/((x+y)(1-x)) = (x-y)/(1-x)
        let num = x.mul(&x).sub(&y.mul(&y));
        // Divisors are supplied factor by factor.
        let r = num.div(&x.add(&y)).unwrap().div(&one.sub(&x)).unwrap();
        let expect = x.sub(&y).div(&one.sub(&x)).unwrap();
        assert_eq!(r, expect);
        assert_eq!(r.to_string(), expect.to_string());
        assert_eq!(r.denom_factors().len(), 1);
    }

    #[test]
    fn sums_with_different_denominators() {
        let x = s("dx");
        let one = Coef::one();
        let a = one.div(&one.sub(&x)).unwrap();
        let b = one.div(&one.add(&x)).unwrap();
        let sum = a.add(&b);
        let expect = Coef::int(2).div(&one.sub(&x.mul(&x))).unwrap();
        assert_eq!(sum, expect);
        let diff = a.sub(&a);
        assert!(diff.is_zero());
    }

    #[test]
    fn equality_falls_back_to_cross_multiplication() {
        let x = s("ex");
        let one = Coef::one();
        let f = one.sub(&x);
        let g = one.add(&x);
        // Same value, one with a composite atom and one with two atoms.
        let a = Coef::from_poly(Poly::one()).div_poly(f.mul(&g).numer()).unwrap();
        let b = one.div(&f).unwrap().mul(&one.div(&g).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn monomial_denominators_are_split() {
        let z = s("fz");
        let w = s("fw");
        let r = Coef::one().div(&z.mul(&z).mul(&w)).unwrap();
        assert_eq!(r.denom_factors().len(), 2);
        assert_eq!(r.mul(&z).mul(&z).mul(&w), Coef::one());
    }

    #[test]
    fn substitution() {
        let x = s("gx");
        let b = s("gb");
        let one = Coef::one();
        let f = x.add(&b).div(&one.sub(&b.mul(&x))).unwrap();
        let bx = Var::named("gb");
        let g = f.subst(&|v| if v == bx { Some(Coef::zero()) } else { None }).unwrap();
        assert_eq!(g, x);
    }
}
