//! Determinants of matrices whose entries only support ring operations
//! (truncated series, exact fractions), by memoized cofactor expansion over
//! column subsets. Cost is `O(n 2^n)` products; zero entries are skipped.

use super::{Coef, PSeries};
use rustc_hash::FxHashMap;

/// The operations needed by [`det`].
pub trait RingOps: Clone {
    /// Whether the element is zero.
    fn is_zero_elem(&self) -> bool;
    /// Sum.
    fn add_elem(&self, o: &Self) -> Self;
    /// Difference.
    fn sub_elem(&self, o: &Self) -> Self;
    /// Product.
    fn mul_elem(&self, o: &Self) -> Self;
}

impl RingOps for Coef {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

impl RingOps for PSeries {
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn add_elem(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn sub_elem(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn mul_elem(&self, o: &Self) -> Self {
        self.mul(o)
    }
}

/// Determinant of a square matrix given as rows; `one` is the unit of the
/// ring (returned for the empty matrix) and `zero` its zero.
pub fn det<T: RingOps>(m: &[Vec<T>], zero: &T, one: &T) -> T {
    let n = m.len();
    assert!(n <= 24, "determinant too large for subset expansion");
    assert!(m.iter().all(|r| r.len() == n), "matrix must be square");
    // minors[S] = determinant of the first |S| rows restricted to columns S.
    let mut minors: FxHashMap<u32, T> = FxHashMap::default();
    minors.insert(0, one.clone());
    for row in m {
        let mut next: FxHashMap<u32, T> = FxHashMap::default();
        for (&set, val) in &minors {
            for (c, entry) in row.iter().enumerate() {
                if set & (1 << c) != 0 || entry.is_zero_elem() {
                    continue;
                }
                // Expanding along the newest row: the sign counts the chosen
                // columns to the right of c.
                let above = (set >> c).count_ones();
                let term = val.mul_elem(entry);
                let slot = next.entry(set | (1 << c)).or_insert_with(|| zero.clone());
                *slot = if above % 2 == 0 { slot.add_elem(&term) } else { slot.sub_elem(&term) };
            }
        }
        next.retain(|_, v| !v.is_zero_elem());
        minors = next;
    }
    minors.remove(&((1u32 << n) - 1)).unwrap_or_else(|| zero.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Q;

    fn c(n: i64) -> Coef {
        Coef::int(n)
    }

    #[test]
    fn small_determinants() {
        let z = Coef::zero();
        let o = Coef::one();
        assert_eq!(det::<Coef>(&[], &z, &o), o);
        assert_eq!(det(&[vec![c(3)]], &z, &o), c(3));
        assert_eq!(det(&[vec![c(1), c(2)], vec![c(3), c(4)]], &z, &o), c(-2));
        let m = vec![vec![c(2), c(0), c(1)], vec![c(1), c(3), c(2)], vec![c(1), c(1), c(1)]];
        // 2(3-2) - 0 + 1(1-3) = 0
        assert_eq!(det(&m, &z, &o), c(0));
        let m = vec![vec![c(0), c(1), c(0)], vec![c(0), c(0), c(1)], vec![c(1), c(0), c(0)]];
        assert_eq!(det(&m, &z, &o), c(1));
        let m = vec![vec![c(0), c(1)], vec![c(1), c(0)]];
        assert_eq!(det(&m, &z, &o), c(-1));
    }

    #[test]
    fn agrees_with_leibniz() {
        // Leibniz expansion as an independent oracle on a 4x4 rational matrix.
        let n = 4usize;
        let m: Vec<Vec<Coef>> = (0..n)
            .map(|i| (0..n).map(|j| Coef::rational(Q::frac(((i * 7 + j * 3) % 5) as i64 - 2, (j + 1) as i64))).collect())
            .collect();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut total = Coef::zero();
        fn next_perm(p: &mut [usize]) -> bool {
            let n = p.len();
            let Some(i) = (0..n - 1).rev().find(|&i| p[i] < p[i + 1]) else { return false };
            let j = (i + 1..n).rev().find(|&j| p[j] > p[i]).expect("exists");
            p.swap(i, j);
            p[i + 1..].reverse();
            true
        }
        loop {
            let inv = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
            let mut t = Coef::one();
            for (i, &pi) in perm.iter().enumerate() {
                t = t.mul(&m[i][pi]);
            }
            total = if inv % 2 == 0 { total.add(&t) } else { total.sub(&t) };
            if !next_perm(&mut perm) {
                break;
            }
        }
        assert_eq!(det(&m, &Coef::zero(), &Coef::one()), total);
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use crate::ring::Q;
    use proptest::prelude::*;

    fn matrix(n: usize) -> impl Strategy<Value = Vec<Vec<Coef>>> {
        prop::collection::vec(prop::collection::vec((-3i64..=3, 1i64..=2), n), n)
            .prop_map(|rows| rows.into_iter().map(|r| r.into_iter().map(|(a, b)| Coef::rational(Q::frac(a, b))).collect()).collect())
    }

    fn mul(a: &[Vec<Coef>], b: &[Vec<Coef>]) -> Vec<Vec<Coef>> {
        let n = a.len();
        (0..n).map(|i| (0..n).map(|j| (0..n).fold(Coef::zero(), |acc, l| acc.add(&a[i][l].mul(&b[l][j])))).collect()).collect()
    }

    proptest! {
        #![proptest_config(crate::proptest_config(64))]

        #[test]
        fn determinant_is_multiplicative(a in matrix(4), b in matrix(4)) {
            let (z, o) = (Coef::zero(), Coef::one());
            prop_assert_eq!(det(&mul(&a, &b), &z, &o), det(&a, &z, &o).mul(&det(&b, &z, &o)));
        }

        #[test]
        fn determinant_of_transpose(a in matrix(5)) {
            let t: Vec<Vec<Coef>> = (0..5).map(|i| (0..5).map(|j| a[j][i].clone()).collect()).collect();
            let (z, o) = (Coef::zero(), Coef::one());
            prop_assert_eq!(det(&t, &z, &o), det(&a, &z, &o));
        }
    }
}
