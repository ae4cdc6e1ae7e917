//! Arithmetic modulo a fixed large prime, used for cheap probabilistic
//! pre-checks before exact polynomial operations.

use super::poly::Poly;
use super::q::Q;
use super::var::Var;
use num_traits::{Signed, ToPrimitive};

/// The Mersenne prime `2^61 - 1`.
pub const P: u64 = (1 << 61) - 1;

fn reduce(x: u128) -> u64 {
    let lo = (x as u64) & P;
    let hi = (x >> 61) as u64;
    let s = lo + (hi & P) + ((x >> 122) as u64);
    let s = (s & P) + (s >> 61);
    if s >= P {
        s - P
    } else {
        s
    }
}

/// `a * b mod P`.
pub fn mul(a: u64, b: u64) -> u64 {
    reduce(a as u128 * b as u128)
}

/// `a + b mod P`.
pub fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= P {
        s - P
    } else {
        s
    }
}

/// `a - b mod P`.
pub fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + P - b
    }
}

/// `a^e mod P`.
pub fn pow(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mul(r, a);
        }
        a = mul(a, a);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue.
pub fn inv(a: u64) -> u64 {
    pow(a, P - 2)
}

fn big_mod(n: &num_bigint::BigInt) -> u64 {
    let m = n.abs() % num_bigint::BigInt::from(P);
    let r = m.to_u64().expect("reduced");
    if n.is_negative() {
        sub(0, r)
    } else {
        r
    }
}

/// Image of a rational; `None` if the denominator vanishes mod `P`.
pub fn q_mod(q: &Q) -> Option<u64> {
    let n = big_mod(&q.numer_big());
    let d = big_mod(&q.denom_big());
    if d == 0 {
        None
    } else {
        Some(mul(n, inv(d)))
    }
}

/// A fixed pseudo-random point for each generator.
pub fn point(v: Var) -> u64 {
    let mut z = (v.0 as u64).wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^= z >> 31;
    z % P
}

/// Reduces `p` to a univariate polynomial in `v` modulo `P`, all other
/// generators evaluated at their fixed points. Index = degree.
pub fn univariate(p: &Poly, v: Var) -> Option<Vec<u64>> {
    let mut out: Vec<u64> = Vec::new();
    for (m, c) in p.terms() {
        let mut val = q_mod(c)?;
        let mut deg = 0usize;
        for (w, e) in m.factors() {
            if w == v {
                deg = e as usize;
            } else {
                val = mul(val, pow(point(w), e as u64));
            }
        }
        if out.len() <= deg {
            out.resize(deg + 1, 0);
        }
        out[deg] = add(out[deg], val);
    }
    while out.last() == Some(&0) {
        out.pop();
    }
    Some(out)
}

/// Whether `d` divides `a` as univariate polynomials mod `P`. `d` must have
/// a nonzero leading coefficient.
pub fn divides(a: &[u64], d: &[u64]) -> bool {
    if d.is_empty() {
        return false;
    }
    if a.len() < d.len() {
        return a.is_empty();
    }
    let mut r = a.to_vec();
    let lead_inv = inv(*d.last().expect("nonempty"));
    while r.len() >= d.len() {
        let c = mul(*r.last().expect("nonempty"), lead_inv);
        let shift = r.len() - d.len();
        if c != 0 {
            for (i, &dc) in d.iter().enumerate() {
                r[shift + i] = sub(r[shift + i], mul(c, dc));
            }
        }
        r.pop();
        while r.last() == Some(&0) {
            r.pop();
        }
    }
    r.is_empty()
}

/// Probabilistic divisibility filter: `false` means `d` certainly does not
/// divide `a`; `true` means it probably does.
pub fn may_divide(a: &Poly, d: &Poly) -> bool {
    let vars = d.vars();
    let Some(&v) = vars.first() else { return true };
    let (Some(ua), Some(ud)) = (univariate(a, v), univariate(d, v)) else { return true };
    if ud.len() != d.degree_in(&[v]) as usize + 1 {
        // Leading coefficient vanished at the sample point: undecided.
        return true;
    }
    divides(&ua, &ud)
}
