//! Exact rational numbers with a machine-word fast path.
//!
//! Almost every rational that occurs in this crate is a small integer, so
//! [`Q`] stores a reduced `i64` fraction and only promotes to an
//! arbitrary-precision fraction when a checked operation overflows. Results
//! are demoted again whenever they fit, which keeps the representation
//! canonical: two equal values always have the same variant and fields.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

/// An exact rational number.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Q {
    /// Reduced fraction with machine-word numerator and positive denominator.
    Small(Ratio<i64>),
    /// Reduced fraction that does not fit in machine words.
    Big(Box<BigRational>),
}

impl Q {
    /// The rational `n / 1`.
    pub fn int(n: i64) -> Q {
        Q::Small(Ratio::from_integer(n))
    }

    /// The rational `n / d`; panics if `d == 0`.
    pub fn frac(n: i64, d: i64) -> Q {
        assert!(d != 0, "zero denominator");
        Q::Small(Ratio::new(n, d))
    }

    /// Zero.
    pub fn zero() -> Q {
        Q::int(0)
    }

    /// One.
    pub fn one() -> Q {
        Q::int(1)
    }

    /// Whether this is zero.
    pub fn is_zero(&self) -> bool {
        match self {
            Q::Small(r) => r.is_zero(),
            Q::Big(b) => b.is_zero(),
        }
    }

    /// Whether this is one.
    pub fn is_one(&self) -> bool {
        match self {
            Q::Small(r) => r.is_one(),
            Q::Big(b) => b.is_one(),
        }
    }

    /// Whether this is an integer.
    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(r) => r.is_integer(),
            Q::Big(b) => b.is_integer(),
        }
    }

    /// Whether this is strictly negative.
    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(r) => r.is_negative(),
            Q::Big(b) => b.is_negative(),
        }
    }

    fn to_big(&self) -> BigRational {
        match self {
            Q::Small(r) => BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())),
            Q::Big(b) => (**b).clone(),
        }
    }

    fn from_big(b: BigRational) -> Q {
        match (b.numer().to_i64(), b.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(Ratio::new_raw(n, d)),
            _ => Q::Big(Box::new(b)),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn recip(&self) -> Q {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Q::Small(r) => match r.numer().checked_neg() {
                Some(_) => Q::Small(r.recip()),
                None => Q::from_big(self.to_big().recip()),
            },
            Q::Big(b) => Q::from_big(b.recip()),
        }
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i32) -> Q {
        if e < 0 {
            return self.recip().pow(-e);
        }
        let mut acc = Q::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Numerator as a big integer.
    pub fn numer_big(&self) -> BigInt {
        match self {
            Q::Small(r) => BigInt::from(*r.numer()),
            Q::Big(b) => b.numer().clone(),
        }
    }

    /// Denominator as a big integer.
    pub fn denom_big(&self) -> BigInt {
        match self {
            Q::Small(r) => BigInt::from(*r.denom()),
            Q::Big(b) => b.denom().clone(),
        }
    }
}

macro_rules! small_or_big {
    ($a:expr, $b:expr, $checked:ident, $op:tt) => {
        match ($a, $b) {
            (Q::Small(x), Q::Small(y)) => match x.$checked(y) {
                Some(r) => Q::Small(r),
                None => Q::from_big($a.to_big() $op $b.to_big()),
            },
            _ => Q::from_big($a.to_big() $op $b.to_big()),
        }
    };
}

impl Add for &Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        small_or_big!(self, o, checked_add, +)
    }
}

impl Sub for &Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        small_or_big!(self, o, checked_sub, -)
    }
}

impl Mul for &Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        small_or_big!(self, o, checked_mul, *)
    }
}

impl Div for &Q {
    type Output = Q;
    fn div(self, o: &Q) -> Q {
        assert!(!o.is_zero(), "division by zero");
        small_or_big!(self, o, checked_div, /)
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(r) => match r.numer().checked_neg() {
                Some(n) => Q::Small(Ratio::new_raw(n, *r.denom())),
                None => Q::from_big(-self.to_big()),
            },
            Q::Big(b) => Q::from_big(-(**b).clone()),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -(&self)
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a), Q::Small(b)) => {
                // Cross-multiplication in i128 cannot overflow for i64 inputs.
                let l = *a.numer() as i128 * *b.denom() as i128;
                let r = *b.numer() as i128 * *a.denom() as i128;
                l.cmp(&r)
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Q::Big(b) => {
                if b.is_integer() {
                    write!(f, "{}", b.numer())
                } else {
                    write!(f, "{}/{}", b.numer(), b.denom())
                }
            }
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Error returned when a rational literal cannot be parsed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseQError(pub String);

impl FromStr for Q {
    type Err = ParseQError;
    fn from_str(s: &str) -> Result<Q, ParseQError> {
        let t = s.trim();
        let err = || ParseQError(s.to_string());
        let (n, d) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let n: BigInt = n.parse().map_err(|_| err())?;
        let d: BigInt = d.parse().map_err(|_| err())?;
        if d.is_zero() {
            return Err(err());
        }
        Ok(Q::from_big(BigRational::new(n, d)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_arithmetic() {
        assert_eq!(Q::frac(1, 2) + Q::frac(1, 3), Q::frac(5, 6));
        assert_eq!(Q::frac(2, 4), Q::frac(1, 2));
        assert_eq!(Q::frac(3, 7).recip(), Q::frac(7, 3));
        assert_eq!(Q::int(-2).pow(3), Q::int(-8));
        assert_eq!(Q::int(2).pow(-2), Q::frac(1, 4));
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Q::int(i64::MAX);
        let sq = &big * &big;
        assert!(matches!(sq, Q::Big(_)));
        let back = &sq / &big;
        assert_eq!(back, big);
        assert!(matches!(back, Q::Small(_)));
        let neg = -Q::int(i64::MIN);
        assert!(matches!(neg, Q::Big(_)));
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("3/7".parse::<Q>().unwrap(), Q::frac(3, 7));
        assert_eq!("-4".parse::<Q>().unwrap(), Q::int(-4));
        assert!("1/0".parse::<Q>().is_err());
        assert!("abc".parse::<Q>().is_err());
        assert_eq!(Q::frac(-6, 4).to_string(), "-3/2");
    }

    #[test]
    fn ordering() {
        assert!(Q::frac(1, 3) < Q::frac(1, 2));
        assert!(Q::int(-1) < Q::zero());
    }
}
