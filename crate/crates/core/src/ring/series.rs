//! Truncated power series in weighted power-sum variables.
//!
//! Variables come in a few independent families (the power sums `p_k`, a
//! second copy `p'_k`, auxiliary times, and a weight-one formal variable used
//! for Laurent expansions). The variable with index `k` has weight `k`.
//! A series carries its truncation: a per-family bound on weighted degree
//! and an optional bound on the total weighted degree.

use super::coef::Coef;
use super::q::Q;
use smallvec::SmallVec;
use std::collections::BTreeMap;
use std::fmt;

/// Families of series variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Family {
    /// The power sums `p_k` (or times `t_k`).
    P = 0,
    /// A second, independent family `p'_k`.
    P2 = 1,
    /// Auxiliary times (used for the shift `t ↦ t + x`).
    X = 2,
    /// A single formal variable of weight one (index always 1).
    W = 3,
}

const FAMILIES: [Family; 4] = [Family::P, Family::P2, Family::X, Family::W];

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::P => "p",
            Family::P2 => "q",
            Family::X => "x",
            Family::W => "w",
        }
    }
}

/// A series variable: family and index `k ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PVar(u16);

impl PVar {
    /// The variable `k` of the given family.
    pub fn new(f: Family, k: u32) -> PVar {
        assert!((1..256).contains(&k), "series variable index out of range");
        PVar(((f as u16) << 8) | k as u16)
    }

    /// Family.
    pub fn family(self) -> Family {
        FAMILIES[(self.0 >> 8) as usize]
    }

    /// Index (and weight).
    pub fn index(self) -> u32 {
        (self.0 & 0xff) as u32
    }
}

/// A monomial: multiset of series variables, sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PMono(SmallVec<[PVar; 8]>);

impl PMono {
    /// The empty monomial.
    pub fn one() -> PMono {
        PMono(SmallVec::new())
    }

    /// From a list of variables (any order).
    pub fn from_vars(v: &[PVar]) -> PMono {
        let mut s: SmallVec<[PVar; 8]> = v.iter().copied().collect();
        s.sort();
        PMono(s)
    }

    /// `p_ν` for a partition-like list of indices in family `f`.
    pub fn of_family(f: Family, parts: &[u32]) -> PMono {
        PMono::from_vars(&parts.iter().map(|k| PVar::new(f, *k)).collect::<Vec<_>>())
    }

    /// The variables with repetition.
    pub fn vars(&self) -> &[PVar] {
        &self.0
    }

    /// Indices of the variables in family `f`, in decreasing order.
    pub fn parts(&self, f: Family) -> Vec<u32> {
        let mut v: Vec<u32> = self.0.iter().filter(|p| p.family() == f).map(|p| p.index()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Weighted degree in family `f`.
    pub fn weight(&self, f: Family) -> u32 {
        self.0.iter().filter(|p| p.family() == f).map(|p| p.index()).sum()
    }

    /// Total weighted degree.
    pub fn total_weight(&self) -> u32 {
        self.0.iter().map(|p| p.index()).sum()
    }

    /// Product.
    pub fn mul(&self, o: &PMono) -> PMono {
        let mut v = self.0.clone();
        v.extend(o.0.iter().copied());
        v.sort();
        PMono(v)
    }

    /// Multiplicity of `v`.
    pub fn multiplicity(&self, v: PVar) -> u32 {
        self.0.iter().filter(|w| **w == v).count() as u32
    }

    /// Removes one copy of `v`, if present.
    pub fn remove_one(&self, v: PVar) -> Option<PMono> {
        let i = self.0.iter().position(|w| *w == v)?;
        let mut s = self.0.clone();
        s.remove(i);
        Some(PMono(s))
    }
}

impl fmt::Display for PMono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut parts = Vec::new();
        let mut i = 0;
        while i < self.0.len() {
            let v = self.0[i];
            let mut j = i;
            while j < self.0.len() && self.0[j] == v {
                j += 1;
            }
            let base = if v.family() == Family::W {
                "w".to_string()
            } else {
                format!("{}{}", v.family().name(), v.index())
            };
            parts.push(if j - i == 1 { base } else { format!("{base}^{}", j - i) });
            i = j;
        }
        write!(f, "{}", parts.join("*"))
    }
}

/// Truncation data of a series.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Trunc {
    per_family: [u32; 4],
    total: u32,
}

impl Trunc {
    /// Weighted degree at most `d` in the `p` family (the common case).
    pub fn p(d: u32) -> Trunc {
        Trunc::families(&[(Family::P, d)])
    }

    /// Bounds per listed family; unlisted families are unbounded.
    pub fn families(bounds: &[(Family, u32)]) -> Trunc {
        let mut per_family = [u32::MAX; 4];
        for (f, d) in bounds {
            per_family[*f as usize] = *d;
        }
        Trunc { per_family, total: u32::MAX }
    }

    /// Adds a bound on the total weighted degree.
    pub fn with_total(mut self, d: u32) -> Trunc {
        self.total = d;
        self
    }

    /// Bound for a family.
    pub fn bound(&self, f: Family) -> u32 {
        self.per_family[f as usize]
    }

    /// Total bound.
    pub fn total(&self) -> u32 {
        self.total
    }

    /// Whether a monomial survives truncation.
    pub fn keeps(&self, m: &PMono) -> bool {
        let mut w = [0u32; 4];
        for v in m.vars() {
            w[v.family() as usize] += v.index();
        }
        w.iter().zip(self.per_family.iter()).all(|(a, b)| a <= b) && w.iter().sum::<u32>() <= self.total
    }
}

/// Errors from series operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    /// The operands carry different truncations.
    #[error("mismatched truncation orders")]
    TruncationMismatch,
    /// The exponential needs a series without constant term.
    #[error("exponential of a series with nonzero constant term")]
    NonzeroConstant,
}

/// Operation selector for [`PSeries::combine`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesOp {
    /// Sum.
    Add,
    /// Product.
    Mul,
}

/// A truncated series with exact coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct PSeries {
    trunc: Trunc,
    terms: BTreeMap<PMono, Coef>,
}

impl PSeries {
    /// The zero series.
    pub fn zero(trunc: Trunc) -> PSeries {
        PSeries { trunc, terms: BTreeMap::new() }
    }

    /// A constant series.
    pub fn constant(trunc: Trunc, c: Coef) -> PSeries {
        PSeries::monomial(trunc, PMono::one(), c)
    }

    /// The series `1`.
    pub fn one(trunc: Trunc) -> PSeries {
        PSeries::constant(trunc, Coef::one())
    }

    /// A single term (dropped if it exceeds the truncation).
    pub fn monomial(trunc: Trunc, m: PMono, c: Coef) -> PSeries {
        let mut s = PSeries::zero(trunc);
        if !c.is_zero() && trunc.keeps(&m) {
            s.terms.insert(m, c);
        }
        s
    }

    /// The variable `v` as a series.
    pub fn var(trunc: Trunc, v: PVar) -> PSeries {
        PSeries::monomial(trunc, PMono::from_vars(&[v]), Coef::one())
    }

    /// Truncation data.
    pub fn trunc(&self) -> Trunc {
        self.trunc
    }

    /// Nonzero terms.
    pub fn terms(&self) -> &BTreeMap<PMono, Coef> {
        &self.terms
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a monomial.
    pub fn coeff(&self, m: &PMono) -> Coef {
        self.terms.get(m).cloned().unwrap_or_else(Coef::zero)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: PMono, c: &Coef) {
        if c.is_zero() || !self.trunc.keeps(&m) {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    /// The same terms under a different (narrower or wider) truncation.
    pub fn retruncate(&self, trunc: Trunc) -> PSeries {
        PSeries {
            trunc,
            terms: self.terms.iter().filter(|(m, _)| trunc.keeps(m)).map(|(m, c)| (m.clone(), c.clone())).collect(),
        }
    }

    /// Checked sum or product.
    pub fn combine(&self, o: &PSeries, op: SeriesOp) -> Result<PSeries, SeriesError> {
        if self.trunc != o.trunc {
            return Err(SeriesError::TruncationMismatch);
        }
        Ok(match op {
            SeriesOp::Add => self.add(o),
            SeriesOp::Mul => self.mul(o),
        })
    }

    /// Sum (truncations must agree).
    pub fn add(&self, o: &PSeries) -> PSeries {
        assert_eq!(self.trunc, o.trunc, "mismatched truncation orders");
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    /// Difference.
    pub fn sub(&self, o: &PSeries) -> PSeries {
        self.add(&o.neg())
    }

    /// Negation.
    pub fn neg(&self) -> PSeries {
        self.scale(&Coef::int(-1))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &Coef) -> PSeries {
        if c.is_zero() {
            return PSeries::zero(self.trunc);
        }
        PSeries { trunc: self.trunc, terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect() }
    }

    /// Multiplies every coefficient by a rational.
    pub fn scale_q(&self, q: &Q) -> PSeries {
        self.scale(&Coef::rational(q.clone()))
    }

    /// Truncated product (truncations must agree).
    pub fn mul(&self, o: &PSeries) -> PSeries {
        assert_eq!(self.trunc, o.trunc, "mismatched truncation orders");
        let mut acc: BTreeMap<PMono, Coef> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &o.terms {
                let m = ma.mul(mb);
                if !self.trunc.keeps(&m) {
                    continue;
                }
                let c = ca.mul(cb);
                match acc.get_mut(&m) {
                    Some(v) => *v = v.add(&c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        PSeries { trunc: self.trunc, terms: acc }
    }

    /// `exp(self)`; requires zero constant term.
    pub fn exp(&self) -> Result<PSeries, SeriesError> {
        if self.terms.contains_key(&PMono::one()) {
            return Err(SeriesError::NonzeroConstant);
        }
        let mut out = PSeries::one(self.trunc);
        let mut power = PSeries::one(self.trunc);
        let mut n = 1i64;
        loop {
            power = power.mul(self).scale_q(&Q::frac(1, n));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
            n += 1;
            assert!(n < 1024, "exponential does not terminate under this truncation");
        }
        Ok(out)
    }

    /// Partial derivative in `v`.
    pub fn derivative(&self, v: PVar) -> PSeries {
        let mut out = PSeries::zero(self.trunc);
        for (m, c) in &self.terms {
            let k = m.multiplicity(v);
            if k > 0 {
                out.add_term(m.remove_one(v).expect("present"), &c.scale(&Q::int(k as i64)));
            }
        }
        out
    }

    /// Substitutes each variable by a series (under the target truncation).
    /// Variables for which `f` returns `None` are kept.
    pub fn subst(&self, target: Trunc, f: &dyn Fn(PVar) -> Option<PSeries>) -> PSeries {
        let mut cache: BTreeMap<PVar, PSeries> = BTreeMap::new();
        let mut out = PSeries::zero(target);
        for (m, c) in &self.terms {
            let mut acc = PSeries::constant(target, c.clone());
            for v in m.vars() {
                let rep = cache
                    .entry(*v)
                    .or_insert_with(|| f(*v).map(|s| s.retruncate(target)).unwrap_or_else(|| PSeries::var(target, *v)))
                    .clone();
                acc = acc.mul(&rep);
                if acc.is_zero() {
                    break;
                }
            }
            out = out.add(&acc);
        }
        out
    }

    /// Replaces every variable by a scalar and sums.
    pub fn specialize(&self, f: &dyn Fn(PVar) -> Coef) -> Coef {
        let mut cache: BTreeMap<PVar, Coef> = BTreeMap::new();
        let mut acc = Coef::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for v in m.vars() {
                let val = cache.entry(*v).or_insert_with(|| f(*v)).clone();
                t = t.mul(&val);
            }
            acc = acc.add(&t);
        }
        acc
    }

    /// Applies a map to every coefficient.
    pub fn map_coeffs(&self, f: &dyn Fn(&Coef) -> Coef) -> PSeries {
        let mut out = PSeries::zero(self.trunc);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &f(c));
        }
        out
    }

    /// Applies a map to every monomial: `f(m)` returns a scalar multiplier
    /// and the image monomial.
    pub fn map_monos(&self, trunc: Trunc, f: &dyn Fn(&PMono) -> (Coef, PMono)) -> PSeries {
        let mut out = PSeries::zero(trunc);
        for (m, c) in &self.terms {
            let (s, n) = f(m);
            out.add_term(n, &c.mul(&s));
        }
        out
    }

    /// `exp(Σ_k c_k v_k / k)` for a family, the building block of `ξ`.
    pub fn exp_linear(trunc: Trunc, family: Family, c: &dyn Fn(u32) -> Coef) -> PSeries {
        let d = trunc.bound(family).min(trunc.total());
        let mut lin = PSeries::zero(trunc);
        for k in 1..=d {
            lin.add_term(PMono::of_family(family, &[k]), &c(k).scale(&Q::frac(1, k as i64)));
        }
        lin.exp().expect("no constant term")
    }

    /// The kernel `exp(Σ_k p_k p'_k / k)` truncated per family.
    pub fn xi_kernel(trunc: Trunc) -> PSeries {
        let d = trunc.bound(Family::P).min(trunc.bound(Family::P2)).min(trunc.total());
        let mut lin = PSeries::zero(trunc);
        for k in 1..=d.min(255) {
            lin.add_term(
                PMono::from_vars(&[PVar::new(Family::P, k), PVar::new(Family::P2, k)]),
                &Coef::rational(Q::frac(1, k as i64)),
            );
        }
        lin.exp().expect("no constant term")
    }
}

impl fmt::Display for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.terms.iter().map(|(m, c)| format!("({c})*{m}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for PSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
