//! Sparse multivariate polynomials over the rationals.

use super::mono::Mono;
use super::q::Q;
use super::var::Var;
use rustc_hash::FxHashMap;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A polynomial: terms sorted by strictly decreasing monomial, no zero
/// coefficients. The first term is the leading term in the lexicographic
/// monomial order.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: Vec<(Mono, Q)>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero() -> Poly {
        Poly { terms: Vec::new() }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: Q) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(Mono::one(), c)] }
        }
    }

    /// The constant `n`.
    pub fn int(n: i64) -> Poly {
        Poly::constant(Q::int(n))
    }

    /// The constant one.
    pub fn one() -> Poly {
        Poly::int(1)
    }

    /// The generator `v`.
    pub fn var(v: Var) -> Poly {
        Poly { terms: vec![(Mono::var_pow(v, 1), Q::one())] }
    }

    /// A single term `c * m`.
    pub fn term(m: Mono, c: Q) -> Poly {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Mono, Q)>>(it: I) -> Poly {
        let mut map: FxHashMap<Mono, Q> = FxHashMap::default();
        for (m, c) in it {
            accumulate(&mut map, m, c);
        }
        Poly::from_map(map)
    }

    fn from_map(map: FxHashMap<Mono, Q>) -> Poly {
        let mut terms: Vec<(Mono, Q)> = map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { terms }
    }

    /// Terms in decreasing monomial order.
    pub fn terms(&self) -> &[(Mono, Q)] {
        &self.terms
    }

    /// Number of terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether this is zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether this is the constant one.
    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Q> {
        match self.terms.as_slice() {
            [] => Some(Q::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    /// Constant term.
    pub fn constant_term(&self) -> Q {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => Q::zero(),
        }
    }

    /// Leading term (largest monomial).
    pub fn leading(&self) -> Option<&(Mono, Q)> {
        self.terms.first()
    }

    /// Multiplies by a rational.
    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, m: &Mono, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly { terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    fn merge(&self, o: &Poly, sign: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < o.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &o.terms[j];
            match ma.cmp(mb) {
                std::cmp::Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((mb.clone(), if sign { -cb } else { cb.clone() }));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = if sign { ca - cb } else { ca + cb };
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(o.terms[j..].iter().map(|(m, c)| (m.clone(), if sign { -c } else { c.clone() })));
        Poly { terms: out }
    }

    /// Sum.
    pub fn add(&self, o: &Poly) -> Poly {
        self.merge(o, false)
    }

    /// Difference.
    pub fn sub(&self, o: &Poly) -> Poly {
        self.merge(o, true)
    }

    /// Product.
    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        if self.terms.len() == 1 {
            return o.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        if o.terms.len() == 1 {
            return self.mul_term(&o.terms[0].0, &o.terms[0].1);
        }
        let mut map: FxHashMap<Mono, Q> = FxHashMap::default();
        map.reserve(self.terms.len() * o.terms.len() / 2 + 1);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                accumulate(&mut map, ma.mul(mb), ca * cb);
            }
        }
        Poly::from_map(map)
    }

    /// Product keeping only monomials whose degree in `vars` is at most `d`.
    pub fn mul_truncated(&self, o: &Poly, vars: &[Var], d: u32) -> Poly {
        let mut map: FxHashMap<Mono, Q> = FxHashMap::default();
        let od: Vec<u32> = o.terms.iter().map(|(m, _)| m.degree_in(vars)).collect();
        for (ma, ca) in &self.terms {
            let da = ma.degree_in(vars);
            if da > d {
                continue;
            }
            for ((mb, cb), db) in o.terms.iter().zip(od.iter()) {
                if da + db <= d {
                    accumulate(&mut map, ma.mul(mb), ca * cb);
                }
            }
        }
        Poly::from_map(map)
    }

    /// Drops monomials whose degree in `vars` exceeds `d`.
    pub fn truncate(&self, vars: &[Var], d: u32) -> Poly {
        Poly { terms: self.terms.iter().filter(|(m, _)| m.degree_in(vars) <= d).cloned().collect() }
    }

    /// Non-negative integer power.
    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Exact division: `Some(q)` with `self = q * d`, or `None` if `d` does
    /// not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(Poly::zero());
        }
        let (lm, lc) = d.leading().expect("nonzero");
        if d.terms.len() == 1 {
            let mut out = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                out.push((m.div(lm)?, c / lc));
            }
            return Some(Poly { terms: out });
        }
        let mut rem: BTreeMap<Mono, Q> = self.terms.iter().cloned().collect();
        let mut quot = Vec::new();
        while let Some((m, c)) = rem.pop_last() {
            let qm = m.div(lm)?;
            let qc = &c / lc;
            for (dm, dc) in &d.terms[1..] {
                let mm = qm.mul(dm);
                let delta = &qc * dc;
                match rem.get_mut(&mm) {
                    Some(v) => {
                        *v = &*v - &delta;
                        if v.is_zero() {
                            rem.remove(&mm);
                        }
                    }
                    None => {
                        rem.insert(mm, -delta);
                    }
                }
            }
            quot.push((qm, qc));
        }
        Some(Poly { terms: quot })
    }

    /// Generators that occur.
    pub fn vars(&self) -> Vec<Var> {
        let mut v: Vec<Var> = self.terms.iter().flat_map(|(m, _)| m.factors().into_iter().map(|f| f.0)).collect();
        v.sort();
        v.dedup();
        v
    }

    /// Whether any of `vars` occurs.
    pub fn involves(&self, vars: &[Var]) -> bool {
        self.terms.iter().any(|(m, _)| vars.iter().any(|v| m.exp(*v) > 0))
    }

    /// Degree in the listed generators.
    pub fn degree_in(&self, vars: &[Var]) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree_in(vars)).max().unwrap_or(0)
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    /// Gcd of all monomials (the monomial content).
    pub fn monomial_content(&self) -> Mono {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Mono::one(),
        };
        it.fold(first, |acc, (m, _)| acc.gcd(m))
    }

    /// Substitutes generators: `f(v)` returns the replacement for `v`, or
    /// `None` to keep it.
    pub fn subst(&self, f: &dyn Fn(Var) -> Option<Poly>) -> Poly {
        let mut cache: FxHashMap<Var, Option<Poly>> = FxHashMap::default();
        let mut pow_cache: FxHashMap<(Var, u32), Poly> = FxHashMap::default();
        let mut map: FxHashMap<Mono, Q> = FxHashMap::default();
        let mut nontrivial: Vec<Poly> = Vec::new();
        for (m, c) in &self.terms {
            let mut keep = Mono::one();
            let mut acc = Poly::constant(c.clone());
            for (v, e) in m.factors() {
                let rep = cache.entry(v).or_insert_with(|| f(v)).clone();
                match rep {
                    None => keep.set_exp(v, e),
                    Some(r) => {
                        let p = pow_cache.entry((v, e)).or_insert_with(|| r.pow(e)).clone();
                        acc = acc.mul(&p);
                        if acc.is_zero() {
                            break;
                        }
                    }
                }
            }
            if acc.is_zero() {
                continue;
            }
            if acc.terms.len() == 1 {
                let (am, ac) = &acc.terms[0];
                accumulate(&mut map, am.mul(&keep), ac.clone());
            } else {
                nontrivial.push(acc.mul_term(&keep, &Q::one()));
            }
        }
        for p in nontrivial {
            for (m, c) in p.terms {
                accumulate(&mut map, m, c);
            }
        }
        Poly::from_map(map)
    }

    /// Substitutes rational values for some generators.
    pub fn eval_partial(&self, vals: &FxHashMap<Var, Q>) -> Poly {
        self.subst(&|v| vals.get(&v).map(|q| Poly::constant(q.clone())))
    }

    /// Collects by powers of `v`: returns coefficients `c_0, c_1, …` with
    /// `self = Σ c_k v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<Poly> {
        let mut buckets: Vec<Vec<(Mono, Q)>> = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exp(v) as usize;
            if buckets.len() <= e {
                buckets.resize(e + 1, Vec::new());
            }
            let mut r = m.clone();
            r.set_exp(v, 0);
            buckets[e].push((r, c.clone()));
        }
        buckets.into_iter().map(Poly::from_terms).collect()
    }

    /// Rebuilds `Σ c_k v^k` from coefficients.
    pub fn from_coefficients_in(v: Var, cs: &[Poly]) -> Poly {
        let mut acc = Poly::zero();
        for (k, c) in cs.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&c.mul_term(&Mono::var_pow(v, k as u32), &Q::one()));
            }
        }
        acc
    }

    /// Terms sorted by the user-visible order, largest first.
    pub fn display_terms(&self) -> Vec<(Mono, Q)> {
        let mut t = self.terms.clone();
        t.sort_by(|a, b| {
            b.0.degree().cmp(&a.0.degree()).then_with(|| b.0.display_cmp(&a.0))
        });
        t
    }

    /// Leading coefficient in the user-visible order.
    pub fn display_leading_coeff(&self) -> Option<Q> {
        self.display_terms().first().map(|t| t.1.clone())
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, o: &Poly) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for Poly {
    /// An arbitrary but deterministic total order (within one process).
    fn cmp(&self, o: &Poly) -> std::cmp::Ordering {
        self.terms.cmp(&o.terms)
    }
}

pub(crate) fn accumulate(map: &mut FxHashMap<Mono, Q>, m: Mono, c: Q) {
    if c.is_zero() {
        return;
    }
    match map.get_mut(&m) {
        Some(v) => *v = &*v + &c,
        None => {
            map.insert(m, c);
        }
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        Poly::add(self, o)
    }
}
impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        Poly::sub(self, o)
    }
}
impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        Poly::mul(self, o)
    }
}
impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        self.scale(&Q::int(-1))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.display_terms().iter().enumerate() {
            let neg = c.is_negative();
            let a = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{a}*{m}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: &str) -> Poly {
        Poly::var(Var::named(n))
    }

    #[test]
    fn ring_ops() {
        let a = v("pa");
        let b = v("pb");
        let s = a.add(&b);
        let d = a.sub(&b);
        let p = s.mul(&d);
        assert_eq!(p, a.mul(&a).sub(&b.mul(&b)));
        assert_eq!(p.len(), 2);
        assert!(a.sub(&a).is_zero());
        assert_eq!(s.pow(3).len(), 4);
    }

    #[test]
    fn exact_division() {
        let a = v("pc");
        let b = v("pd");
        let one = Poly::one();
        let f = one.sub(&a.mul(&b));
        let g = a.add(&b);
        let prod = f.mul(&g).mul(&g);
        assert_eq!(prod.div_exact(&g).unwrap(), f.mul(&g));
        assert_eq!(prod.div_exact(&f).unwrap(), g.mul(&g));
        assert!(prod.div_exact(&a.add(&one)).is_none());
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn substitution_and_collection() {
        let a = Var::named("pe");
        let b = Var::named("pf");
        let p = Poly::var(a).mul(&Poly::var(b)).add(&Poly::var(a).pow(2));
        let q = p.subst(&|x| if x == a { Some(Poly::int(2)) } else { None });
        assert_eq!(q, Poly::var(b).scale(&Q::int(2)).add(&Poly::int(4)));
        let cs = p.coefficients_in(a);
        assert_eq!(cs.len(), 3);
        assert_eq!(Poly::from_coefficients_in(a, &cs), p);
    }

    #[test]
    fn display_is_name_ordered() {
        let p = v("zq").add(&v("aq").scale(&Q::int(-2))).add(&Poly::int(3));
        assert_eq!(p.to_string(), "-2*aq + zq + 3");
    }
}
