//! Partitions, charged Maya states and the fermionic Fock space.
//!
//! A basis ket `|λ⟩_m` occupies the sites `m - k + 1 + λ_k` for `k ≥ 1`:
//! every site at or below `m - ℓ(λ)` is occupied and finitely many sites
//! above it are. Operators act on this occupation description directly.
//!
//! Sign rule: a wedge monomial lists occupied sites from the top down.
//! Creating or deleting `v_i` costs `(-1)^{#occupied sites above i}`, and
//! the hop `ψ_i ψ_j^*` (i ≠ j) costs `(-1)^{#occupied sites strictly
//! between i and j}`.

use crate::ring::{Coef, Q};
use std::collections::BTreeMap;
use std::fmt;

/// Errors from Fock-space constructions.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FockError {
    /// A partition was malformed.
    #[error("invalid partition `{0}`: parts must be weakly decreasing positive integers")]
    InvalidPartition(String),
    /// A requested length is shorter than the partition.
    #[error("length {0} is smaller than the partition length {1}")]
    LengthTooSmall(usize, usize),
}

/// An integer partition, stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// The empty partition.
    pub fn empty() -> Partition {
        Partition(Vec::new())
    }

    /// From weakly decreasing parts; zeros are dropped from the end.
    pub fn new(parts: &[u32]) -> Result<Partition, FockError> {
        let mut v = parts.to_vec();
        while v.last() == Some(&0) {
            v.pop();
        }
        if v.windows(2).any(|w| w[0] < w[1]) || v.contains(&0) {
            return Err(FockError::InvalidPartition(format!("{parts:?}")));
        }
        Ok(Partition(v))
    }

    /// From parts that are known to be valid.
    pub fn of(parts: &[u32]) -> Partition {
        Partition::new(parts).expect("valid partition")
    }

    /// Parses `3,2,1` (the empty string or `0` is the empty partition).
    pub fn parse(s: &str) -> Result<Partition, FockError> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts: Result<Vec<u32>, _> = t.split(',').map(|p| p.trim().parse::<u32>()).collect();
        Partition::new(&parts.map_err(|_| FockError::InvalidPartition(s.to_string()))?)
    }

    /// The parts.
    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Whether empty.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `|λ|`.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `λ_i` with 1-based `i`, zero beyond the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return u32::MAX;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// First part (zero for the empty partition).
    pub fn first(&self) -> u32 {
        self.part(1)
    }

    /// The conjugate partition.
    pub fn conjugate(&self) -> Partition {
        let n = self.first() as usize;
        Partition((1..=n).map(|j| self.0.iter().filter(|&&p| p as usize >= j).count() as u32).collect())
    }

    /// Frobenius coordinates `(a_1..a_r | b_1..b_r)` with `a_i = λ_i - i`,
    /// `b_i = λ'_i - i`.
    pub fn frobenius(&self) -> (Vec<u32>, Vec<u32>) {
        let c = self.conjugate();
        let r = (1..=self.len()).take_while(|&i| self.part(i) as usize >= i).count();
        ((1..=r).map(|i| self.part(i) - i as u32).collect(), (1..=r).map(|i| c.part(i) - i as u32).collect())
    }

    /// From Frobenius coordinates.
    pub fn from_frobenius(a: &[u32], b: &[u32]) -> Result<Partition, FockError> {
        let bad = || FockError::InvalidPartition(format!("({a:?} | {b:?})"));
        if a.len() != b.len() || a.windows(2).any(|w| w[0] <= w[1]) || b.windows(2).any(|w| w[0] <= w[1]) {
            return Err(bad());
        }
        let r = a.len();
        let rows = r + b.first().copied().unwrap_or(0) as usize;
        let mut parts = vec![0u32; rows];
        for i in 0..r {
            parts[i] = a[i] + i as u32 + 1;
        }
        // Column j (0-based, j < r) has length b_j + j + 1.
        for (j, &bj) in b.iter().enumerate() {
            for row in (j + 1)..(bj as usize + j + 1) {
                if row >= r {
                    parts[row] = parts[row].max(j as u32 + 1);
                }
            }
        }
        Partition::new(&parts).map_err(|_| bad())
    }

    /// Whether `mu ⊆ self` as Young diagrams.
    pub fn contains(&self, mu: &Partition) -> bool {
        mu.len() <= self.len() && mu.0.iter().zip(&self.0).all(|(a, b)| a <= b)
    }

    /// Cells `(row, col)` (1-based) of the skew diagram `self / mu`.
    pub fn skew_cells(&self, mu: &Partition) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for (i, &p) in self.0.iter().enumerate() {
            for j in (mu.part(i + 1) + 1)..=p {
                out.push((i as u32 + 1, j));
            }
        }
        out
    }

    /// Multiplicities `m_i` of each part size `i ≥ 1`.
    pub fn multiplicities(&self) -> BTreeMap<u32, u32> {
        let mut m = BTreeMap::new();
        for &p in &self.0 {
            *m.entry(p).or_insert(0) += 1;
        }
        m
    }

    /// `z_λ = prod_i i^{m_i} m_i!`.
    pub fn z(&self) -> Q {
        let mut acc = Q::one();
        for (i, m) in self.multiplicities() {
            for t in 1..=m {
                acc = &acc * &Q::int(i as i64 * t as i64);
            }
        }
        acc
    }

    /// `S(λ) = {λ_i - i + 1 | λ_i ≥ i}`, shifted by the charge.
    pub fn s_set(&self, charge: i64) -> Vec<i64> {
        (1..=self.len())
            .filter(|&i| self.part(i) as usize >= i)
            .map(|i| charge + self.part(i) as i64 - i as i64 + 1)
            .collect()
    }

    /// `T(λ) = {i - λ'_i | λ'_i ≥ i}`, shifted by the charge.
    pub fn t_set(&self, charge: i64) -> Vec<i64> {
        let c = self.conjugate();
        (1..=c.len()).filter(|&i| c.part(i) as usize >= i).map(|i| charge + i as i64 - c.part(i) as i64).collect()
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// All partitions of `n`, in reverse lexicographic order.
pub fn partitions_of(n: u32) -> Vec<Partition> {
    fn rec(n: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if n == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        for p in (1..=n.min(max)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// All partitions of size at most `n`, by size.
pub fn partitions_up_to(n: u32) -> Vec<Partition> {
    (0..=n).flat_map(partitions_of).collect()
}

/// All partitions fitting in a `rows × cols` box.
pub fn partitions_in_box(rows: usize, cols: u32) -> Vec<Partition> {
    interval(&Partition::empty(), &Partition(vec![cols; rows]))
}

/// All `ν` with `mu ⊆ ν ⊆ lambda` (empty if `mu ⊄ lambda`).
pub fn interval(mu: &Partition, lambda: &Partition) -> Vec<Partition> {
    fn rec(i: usize, mu: &Partition, lambda: &Partition, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if i > lambda.len() {
            out.push(Partition::of(cur));
            return;
        }
        let hi = lambda.part(i).min(cur.last().copied().unwrap_or(u32::MAX));
        let lo = mu.part(i);
        if lo > hi {
            return;
        }
        for p in lo..=hi {
            cur.push(p);
            rec(i + 1, mu, lambda, cur, out);
            cur.pop();
        }
    }
    if !lambda.contains(mu) {
        return Vec::new();
    }
    let mut out = Vec::new();
    rec(1, mu, lambda, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
    out
}

/// A charged basis state `|λ⟩_m`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ChargedKet {
    /// Charge `m`.
    pub charge: i64,
    /// Partition `λ`.
    pub lambda: Partition,
}

impl ChargedKet {
    /// `|λ⟩_m`.
    pub fn new(lambda: Partition, charge: i64) -> ChargedKet {
        ChargedKet { charge, lambda }
    }

    /// `|∅⟩_m`.
    pub fn vacuum(charge: i64) -> ChargedKet {
        ChargedKet { charge, lambda: Partition::empty() }
    }

    /// Energy `|λ|`.
    pub fn energy(&self) -> u32 {
        self.lambda.size()
    }

    /// Site of the `k`-th particle (1-based, from the top).
    pub fn position(&self, k: usize) -> i64 {
        self.charge - k as i64 + 1 + self.lambda.part(k) as i64
    }

    /// Every site at or below this one is occupied.
    pub fn floor(&self) -> i64 {
        self.charge - self.lambda.len() as i64
    }

    /// Highest occupied site.
    pub fn top(&self) -> i64 {
        self.position(1)
    }

    /// Whether site `i` is occupied.
    pub fn occupied(&self, i: i64) -> bool {
        i <= self.floor() || (1..=self.lambda.len()).any(|k| self.position(k) == i)
    }

    /// Occupied sites `≥ lo`, in decreasing order.
    pub fn sites_from(&self, lo: i64) -> Vec<i64> {
        let mut out: Vec<i64> = (1..=self.lambda.len()).map(|k| self.position(k)).filter(|&p| p >= lo).collect();
        let mut s = self.floor();
        while s >= lo {
            out.push(s);
            s -= 1;
        }
        out
    }

    /// Number of occupied sites strictly above `i`.
    pub fn occupied_above(&self, i: i64) -> usize {
        let mut n = (1..=self.lambda.len()).filter(|&k| self.position(k) > i).count();
        if i < self.floor() {
            n += (self.floor() - i) as usize;
        }
        n
    }

    /// Rebuilds a state from its occupied sites `≥ lo` (decreasing),
    /// assuming every site below `lo` is occupied.
    fn from_sites(sites: &[i64], lo: i64) -> ChargedKet {
        // Charge: the number of particles above the vacuum level below `lo`.
        let charge = lo - 1 + sites.len() as i64;
        let parts: Vec<u32> = sites.iter().enumerate().map(|(k, &p)| (p - charge + k as i64) as u32).collect();
        ChargedKet { charge, lambda: Partition::of(&parts) }
    }

    /// `ψ_i`: `(sign, new state)` or `None` if site `i` is occupied.
    pub fn psi(&self, i: i64) -> Option<(i8, ChargedKet)> {
        if self.occupied(i) {
            return None;
        }
        let lo = i.min(self.floor() + 1);
        let mut sites = self.sites_from(lo);
        let above = sites.iter().filter(|&&p| p > i).count();
        sites.insert(above, i);
        Some((parity(above), ChargedKet::from_sites(&sites, lo)))
    }

    /// `ψ_i^*`: `(sign, new state)` or `None` if site `i` is empty.
    pub fn psi_star(&self, i: i64) -> Option<(i8, ChargedKet)> {
        if !self.occupied(i) {
            return None;
        }
        let lo = i.min(self.floor() + 1);
        let mut sites = self.sites_from(lo);
        let above = sites.iter().filter(|&&p| p > i).count();
        sites.remove(above);
        Some((parity(above), ChargedKet::from_sites(&sites, lo)))
    }

    /// The hop `ψ_i ψ_j^*` for `i ≠ j`: moves the particle at `j` to the
    /// empty site `i`.
    pub fn hop(&self, i: i64, j: i64) -> Option<(i8, ChargedKet)> {
        debug_assert_ne!(i, j);
        if self.occupied(i) || !self.occupied(j) {
            return None;
        }
        let lo = i.min(j).min(self.floor() + 1);
        let mut sites = self.sites_from(lo);
        let (a, b) = (i.min(j), i.max(j));
        let between = sites.iter().filter(|&&p| p > a && p < b).count();
        sites.retain(|&p| p != j);
        let pos = sites.iter().filter(|&&p| p > i).count();
        sites.insert(pos, i);
        Some((parity(between), ChargedKet::from_sites(&sites, lo)))
    }
}

fn parity(n: usize) -> i8 {
    if n % 2 == 0 {
        1
    } else {
        -1
    }
}

impl fmt::Display for ChargedKet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}⟩_{}", self.lambda, self.charge)
    }
}

impl fmt::Debug for ChargedKet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite linear combination of charged basis kets.
#[derive(Clone, Default, PartialEq)]
pub struct FockVector {
    terms: BTreeMap<ChargedKet, Coef>,
}

impl FockVector {
    /// The zero vector.
    pub fn zero() -> FockVector {
        FockVector::default()
    }

    /// A basis ket.
    pub fn basis(k: ChargedKet) -> FockVector {
        FockVector::term(k, Coef::one())
    }

    /// `c |k⟩`.
    pub fn term(k: ChargedKet, c: Coef) -> FockVector {
        let mut v = FockVector::zero();
        v.add_term(k, &c);
        v
    }

    /// Adds `c |k⟩` in place.
    pub fn add_term(&mut self, k: ChargedKet, c: &Coef) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&k) {
            Some(v) => {
                *v = v.add(c);
                if v.is_zero() {
                    self.terms.remove(&k);
                }
            }
            None => {
                self.terms.insert(k, c.clone());
            }
        }
    }

    /// The terms, ordered by ket.
    pub fn terms(&self) -> &BTreeMap<ChargedKet, Coef> {
        &self.terms
    }

    /// Number of stored terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Whether zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of a basis ket (the pairing `⟨k|v⟩`).
    pub fn coeff(&self, k: &ChargedKet) -> Coef {
        self.terms.get(k).cloned().unwrap_or_else(Coef::zero)
    }

    /// Sum.
    pub fn add(&self, o: &FockVector) -> FockVector {
        let mut out = self.clone();
        for (k, c) in &o.terms {
            out.add_term(k.clone(), c);
        }
        out
    }

    /// Difference.
    pub fn sub(&self, o: &FockVector) -> FockVector {
        self.add(&o.scale(&Coef::int(-1)))
    }

    /// Scalar multiple.
    pub fn scale(&self, c: &Coef) -> FockVector {
        if c.is_zero() {
            return FockVector::zero();
        }
        FockVector { terms: self.terms.iter().map(|(k, v)| (k.clone(), v.mul(c))).collect() }
    }

    /// Applies `ψ_i`.
    pub fn psi(&self, i: i64) -> FockVector {
        self.map_signed(|k| k.psi(i))
    }

    /// Applies `ψ_i^*`.
    pub fn psi_star(&self, i: i64) -> FockVector {
        self.map_signed(|k| k.psi_star(i))
    }

    fn map_signed(&self, f: impl Fn(&ChargedKet) -> Option<(i8, ChargedKet)>) -> FockVector {
        let mut out = FockVector::zero();
        for (k, c) in &self.terms {
            if let Some((s, nk)) = f(k) {
                out.add_term(nk, &if s > 0 { c.clone() } else { c.neg() });
            }
        }
        out
    }

    /// Applies `f` to every coefficient, dropping zeros.
    pub fn map_coeffs(&self, f: &dyn Fn(&Coef) -> Coef) -> FockVector {
        let mut out = FockVector::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }
}

impl fmt::Display for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c}){k}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FockVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `⟨bra|v⟩` for an orthonormal basis bra.
pub fn pairing(bra: &ChargedKet, v: &FockVector) -> Coef {
    v.coeff(bra)
}

/// The classical shift `Σ^steps |λ⟩_m = |λ⟩_{m+steps}`.
pub fn classical_shift(v: &FockVector, steps: i64) -> FockVector {
    let mut out = FockVector::zero();
    for (k, c) in v.terms() {
        out.add_term(ChargedKet::new(k.lambda.clone(), k.charge + steps), c);
    }
    out
}

/// A Clifford generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    /// `ψ_i`.
    Psi(i64),
    /// `ψ_i^*`.
    PsiStar(i64),
}

/// Which expression of a state as a word over a vacuum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WordKind {
    /// `ψ_{m+λ_1} ⋯ ψ_{m+λ_ℓ-ℓ+1}` over `|∅⟩_{m-ℓ}`, which is itself
    /// written as a word over `|∅⟩_0`.
    Creation,
    /// Annihilators at the holes below the top particle over `|∅⟩_{m+λ_1}`.
    Holes,
    /// Creators above the charge and annihilators at the holes below it,
    /// over `|∅⟩_m`.
    Frobenius,
}

/// `sign · ops[0] ops[1] ⋯ |∅⟩_vacuum`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Word {
    /// Overall sign `±1`.
    pub sign: i8,
    /// Operators, leftmost first (the rightmost acts first).
    pub ops: Vec<Op>,
    /// Charge of the vacuum the word acts on.
    pub vacuum: i64,
}

impl Word {
    /// Applies the word (with its sign) to its vacuum.
    pub fn apply(&self) -> FockVector {
        let mut v = FockVector::basis(ChargedKet::vacuum(self.vacuum));
        for op in self.ops.iter().rev() {
            v = match *op {
                Op::Psi(i) => v.psi(i),
                Op::PsiStar(i) => v.psi_star(i),
            };
        }
        if self.sign < 0 {
            v.scale(&Coef::int(-1))
        } else {
            v
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign < 0 {
            write!(f, "-")?;
        }
        for op in &self.ops {
            match op {
                Op::Psi(i) => write!(f, "ψ_{{{i}}}")?,
                Op::PsiStar(i) => write!(f, "ψ*_{{{i}}}")?,
            }
        }
        write!(f, "|∅⟩_{}", self.vacuum)
    }
}

/// Writes `|λ⟩_m` as a signed word over a vacuum. For
/// [`WordKind::Creation`], `ell ≥ ℓ(λ)` particles are created over
/// `|∅⟩_{m-ell}`; `ell` is ignored otherwise. The sign is fixed by applying
/// the word and comparing with the target state.
pub fn ket_from_vacuum_word(lambda: &Partition, m: i64, ell: usize, kind: WordKind) -> Result<Word, FockError> {
    let target = ChargedKet::new(lambda.clone(), m);
    let (ops, vacuum) = match kind {
        WordKind::Creation => {
            if ell < lambda.len() {
                return Err(FockError::LengthTooSmall(ell, lambda.len()));
            }
            let mut ops: Vec<Op> = (1..=ell).map(|k| Op::Psi(target.position(k))).collect();
            let base = m - ell as i64;
            if base >= 0 {
                ops.extend((1..=base).rev().map(Op::Psi));
            } else {
                ops.extend(((base + 1)..=0).map(Op::PsiStar));
            }
            (ops, 0)
        }
        WordKind::Holes => {
            let top = m + lambda.first() as i64;
            let ops = (target.floor() + 1..top).filter(|&i| !target.occupied(i)).map(Op::PsiStar).collect();
            (ops, top)
        }
        WordKind::Frobenius => {
            let (a, b) = lambda.frobenius();
            let mut ops: Vec<Op> = b.iter().map(|&bi| Op::PsiStar(m - bi as i64)).collect();
            ops.extend(a.iter().rev().map(|&ai| Op::Psi(m + ai as i64 + 1)));
            (ops, m)
        }
    };
    let mut w = Word { sign: 1, ops, vacuum };
    let v = w.apply();
    let c = v.coeff(&target);
    debug_assert_eq!(v.len(), 1, "word must produce a single basis state");
    if c == Coef::int(-1) {
        w.sign = -1;
    } else {
        debug_assert!(c.is_one());
    }
    Ok(w)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(parts: &[u32]) -> Partition {
        Partition::of(parts)
    }

    #[test]
    fn maya_occupation() {
        let v = ChargedKet::vacuum(0);
        for i in -5..=5 {
            assert_eq!(v.occupied(i), i <= 0);
        }
        let k = ChargedKet::new(p(&[6, 5, 2, 2, 1, 1, 1, 1]), 0);
        let occ: Vec<i64> = (-9..=7).filter(|&i| k.occupied(i)).collect();
        assert_eq!(occ, vec![-9, -8, -6, -5, -4, -3, -1, 0, 4, 6]);
        let k = ChargedKet::new(p(&[5]), 0);
        let occ: Vec<i64> = (-3..=7).filter(|&i| k.occupied(i)).collect();
        assert_eq!(occ, vec![-3, -2, -1, 5]);
    }

    #[test]
    fn frobenius_and_conjugate() {
        let l = p(&[6, 5, 2, 2, 1, 1, 1, 1]);
        assert_eq!(l.frobenius(), (vec![5, 3], vec![7, 2]));
        assert_eq!(l.conjugate(), p(&[8, 4, 2, 2, 2, 1]));
        assert_eq!(Partition::from_frobenius(&[5, 3], &[7, 2]).unwrap(), l);
        assert_eq!(Partition::empty().frobenius(), (vec![], vec![]));
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        for n in 0..=7 {
            for l in partitions_of(n) {
                assert_eq!(l.conjugate().conjugate(), l);
                assert_eq!(l.conjugate().size(), n);
                let (a, b) = l.frobenius();
                assert_eq!(Partition::from_frobenius(&a, &b).unwrap(), l);
            }
        }
    }

    #[test]
    fn partition_counts() {
        let counts: Vec<usize> = (0..=8).map(|n| partitions_of(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11, 15, 22]);
        assert_eq!(partitions_in_box(3, 3).len(), 20);
        assert_eq!(interval(&p(&[1]), &p(&[2, 1])).len(), 4);
        assert!(interval(&p(&[3]), &p(&[2, 1])).is_empty());
        assert!(Partition::parse("1,2").is_err());
        assert_eq!(Partition::parse("3,2,1").unwrap(), p(&[3, 2, 1]));
        assert_eq!(p(&[2, 2, 1]).z(), Q::int(8));
    }

    #[test]
    fn clifford_actions_on_vacuum() {
        let vac = FockVector::basis(ChargedKet::vacuum(0));
        assert_eq!(vac.psi(1), FockVector::basis(ChargedKet::vacuum(1)));
        assert_eq!(vac.psi_star(0), FockVector::basis(ChargedKet::vacuum(-1)));
        assert_eq!(vac.psi_star(0).psi(0).add(&vac.psi(0).psi_star(0)), vac);
    }

    fn small_states() -> Vec<ChargedKet> {
        let mut out = Vec::new();
        for l in partitions_up_to(4) {
            for m in -1..=1 {
                out.push(ChargedKet::new(l.clone(), m));
            }
        }
        out
    }

    #[test]
    fn anticommutation() {
        for k in small_states() {
            let v = FockVector::basis(k);
            for i in -6..=6 {
                for j in -6..=6 {
                    assert!(v.psi(j).psi(i).add(&v.psi(i).psi(j)).is_zero());
                    assert!(v.psi_star(j).psi_star(i).add(&v.psi_star(i).psi_star(j)).is_zero());
                    let mixed = v.psi_star(j).psi(i).add(&v.psi(i).psi_star(j));
                    let want = if i == j { v.clone() } else { FockVector::zero() };
                    assert_eq!(mixed, want, "i = {i}, j = {j}");
                }
            }
        }
    }

    #[test]
    fn hop_matches_composition() {
        for k in small_states() {
            let v = FockVector::basis(k.clone());
            for i in -6..=6 {
                for j in -6..=6 {
                    if i == j {
                        continue;
                    }
                    let direct = match k.hop(i, j) {
                        Some((s, nk)) => FockVector::term(nk, Coef::int(s as i64)),
                        None => FockVector::zero(),
                    };
                    assert_eq!(direct, v.psi_star(j).psi(i));
                }
            }
        }
    }

    #[test]
    fn particle_hole_symmetry() {
        for l in partitions_up_to(6) {
            for m in -2..=2 {
                let a = ChargedKet::new(l.clone(), m);
                let b = ChargedKet::new(l.conjugate(), -m);
                for i in -12..=12 {
                    assert_eq!(b.occupied(i), !a.occupied(1 - i));
                }
            }
        }
    }

    #[test]
    fn pairing_and_shift() {
        let l = ChargedKet::new(p(&[2, 1]), 0);
        let v = FockVector::basis(l.clone());
        assert!(pairing(&l, &v).is_one());
        assert!(pairing(&ChargedKet::new(p(&[2, 1]), 1), &v).is_zero());
        assert!(pairing(&ChargedKet::new(p(&[3]), 0), &v).is_zero());
        assert_eq!(classical_shift(&v, 1), FockVector::basis(ChargedKet::new(p(&[2, 1]), 1)));
    }

    #[test]
    fn words() {
        let l = p(&[6, 5, 2, 2, 1, 1, 1, 1]);
        let w = ket_from_vacuum_word(&Partition::empty(), 0, 0, WordKind::Creation).unwrap();
        assert!(w.ops.is_empty() && w.sign == 1 && w.vacuum == 0);
        let w = ket_from_vacuum_word(&l, 0, 8, WordKind::Holes).unwrap();
        assert_eq!(w.sign, -1);
        assert_eq!(w.vacuum, 6);
        assert_eq!(w.ops, [-7, -2, 1, 2, 3, 5].map(Op::PsiStar).to_vec());
        let w = ket_from_vacuum_word(&l, 0, 8, WordKind::Frobenius).unwrap();
        assert_eq!(w.sign, -1);
        assert_eq!(w.ops, vec![Op::PsiStar(-7), Op::PsiStar(-2), Op::Psi(4), Op::Psi(6)]);
        assert_eq!(w.to_string(), "-ψ*_{-7}ψ*_{-2}ψ_{4}ψ_{6}|∅⟩_0");
        assert!(ket_from_vacuum_word(&l, 0, 3, WordKind::Creation).is_err());
        for l in partitions_up_to(5) {
            for m in -7..=7 {
                for extra in 0..=2 {
                    for kind in [WordKind::Creation, WordKind::Holes, WordKind::Frobenius] {
                        let w = ket_from_vacuum_word(&l, m, l.len() + extra, kind).unwrap();
                        assert_eq!(w.apply(), FockVector::basis(ChargedKet::new(l.clone(), m)), "{l} {m} {kind:?}");
                    }
                }
            }
        }
    }
}
