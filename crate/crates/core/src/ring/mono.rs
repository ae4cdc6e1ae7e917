//! Packed monomials.
//!
//! Exponents are stored one byte per generator, eight generators per `u64`
//! lane. Within a lane the generator with the smallest interned id occupies
//! the most significant byte, so comparing lanes as integers (and lane
//! vectors lexicographically) is the pure lexicographic monomial order with
//! lower ids more significant. Trailing zero lanes are trimmed, which makes
//! the representation canonical.

use super::var::Var;
use smallvec::SmallVec;
use std::fmt;

const BYTE_CARRIES: u64 = 0x0101_0101_0101_0100;

/// A monomial in the interned generators.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Mono(SmallVec<[u64; 3]>);

fn slot(v: Var) -> (usize, u32) {
    let id = v.0 as usize;
    (id / 8, (7 - (id % 8) as u32) * 8)
}

impl Mono {
    /// The empty monomial `1`.
    pub fn one() -> Mono {
        Mono(SmallVec::new())
    }

    /// The monomial `v^e`.
    pub fn var_pow(v: Var, e: u32) -> Mono {
        let mut m = Mono::one();
        m.set_exp(v, e);
        m
    }

    /// Whether this is the empty monomial.
    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// Exponent of `v`.
    pub fn exp(&self, v: Var) -> u32 {
        let (lane, shift) = slot(v);
        self.0.get(lane).map_or(0, |l| ((l >> shift) & 0xff) as u32)
    }

    /// Sets the exponent of `v`.
    pub fn set_exp(&mut self, v: Var, e: u32) {
        assert!(e < 256, "exponent overflow for {v}");
        let (lane, shift) = slot(v);
        if self.0.len() <= lane {
            if e == 0 {
                return;
            }
            self.0.resize(lane + 1, 0);
        }
        let l = &mut self.0[lane];
        *l = (*l & !(0xffu64 << shift)) | ((e as u64) << shift);
        self.trim();
    }

    fn trim(&mut self) {
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    /// Product of two monomials.
    pub fn mul(&self, o: &Mono) -> Mono {
        let (long, short) = if self.0.len() >= o.0.len() { (self, o) } else { (o, self) };
        let mut out = long.0.clone();
        for (i, s) in short.0.iter().enumerate() {
            let a = out[i];
            let (sum, top) = a.overflowing_add(*s);
            assert!(!top && (a ^ s ^ sum) & BYTE_CARRIES == 0, "exponent overflow");
            out[i] = sum;
        }
        Mono(out)
    }

    /// Whether `o` divides `self`.
    pub fn divisible_by(&self, o: &Mono) -> bool {
        if o.0.len() > self.0.len() {
            return false;
        }
        o.0.iter().zip(self.0.iter()).all(|(d, n)| {
            (0..8).all(|b| ((d >> (8 * b)) & 0xff) <= ((n >> (8 * b)) & 0xff))
        })
    }

    /// The quotient `self / o`, if `o` divides `self`.
    pub fn div(&self, o: &Mono) -> Option<Mono> {
        if !self.divisible_by(o) {
            return None;
        }
        let mut out = self.0.clone();
        for (i, d) in o.0.iter().enumerate() {
            out[i] -= d;
        }
        let mut m = Mono(out);
        m.trim();
        Some(m)
    }

    /// Componentwise minimum (the gcd of two monomials).
    pub fn gcd(&self, o: &Mono) -> Mono {
        let n = self.0.len().min(o.0.len());
        let mut out: SmallVec<[u64; 3]> = SmallVec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (self.0[i], o.0[i]);
            let mut l = 0u64;
            for byte in 0..8 {
                let s = 8 * byte;
                let e = ((a >> s) & 0xff).min((b >> s) & 0xff);
                l |= e << s;
            }
            out.push(l);
        }
        let mut m = Mono(out);
        m.trim();
        m
    }

    /// `(generator, exponent)` pairs with nonzero exponent, by interned id.
    pub fn factors(&self) -> SmallVec<[(Var, u32); 8]> {
        let mut out = SmallVec::new();
        for (lane, l) in self.0.iter().enumerate() {
            if *l == 0 {
                continue;
            }
            for byte in 0..8u32 {
                let e = ((l >> ((7 - byte) * 8)) & 0xff) as u32;
                if e > 0 {
                    out.push((Var((lane * 8) as u32 + byte), e));
                }
            }
        }
        out
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0
            .iter()
            .map(|l| (0..8).map(|b| ((l >> (8 * b)) & 0xff) as u32).sum::<u32>())
            .sum()
    }

    /// Total degree in the listed generators.
    pub fn degree_in(&self, vars: &[Var]) -> u32 {
        vars.iter().map(|v| self.exp(*v)).sum()
    }

    /// Splits into the part in `vars` and the rest.
    pub fn split(&self, vars: &[Var]) -> (Mono, Mono) {
        let mut inside = Mono::one();
        let mut rest = self.clone();
        for v in vars {
            let e = self.exp(*v);
            if e > 0 {
                inside.set_exp(*v, e);
                rest.set_exp(*v, 0);
            }
        }
        (inside, rest)
    }

    /// Factors sorted by the user-visible generator order.
    pub fn display_factors(&self) -> SmallVec<[(Var, u32); 8]> {
        let mut f = self.factors();
        f.sort_by(|a, b| a.0.display_cmp(b.0));
        f
    }

    /// Compares by the user-visible order: lexicographic in generators sorted
    /// by `(name, index)`.
    pub fn display_cmp(&self, o: &Mono) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let mut vars: Vec<Var> = self.factors().iter().chain(o.factors().iter()).map(|f| f.0).collect();
        vars.sort_by(|a, b| a.display_cmp(*b));
        vars.dedup();
        for v in vars {
            match self.exp(v).cmp(&o.exp(v)) {
                Ordering::Equal => continue,
                c => return c,
            }
        }
        Ordering::Equal
    }
}

impl fmt::Display for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .display_factors()
            .iter()
            .map(|(v, e)| if *e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

impl fmt::Debug for Mono {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}
