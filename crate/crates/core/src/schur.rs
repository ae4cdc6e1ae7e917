//! Double factorial Schur functions `s_{λ/μ}(p‖α;β) = ⟨μ|e^{H_+(p)}|λ⟩`,
//! their duals `ŝ_{λ/μ}(p‖α;β) = ⟨λ|e^{H_-(p)}|μ⟩`, and the identity
//! routes built on them: Jacobi–Trudi (both forms), Giambelli,
//! Murnaghan–Nakayama, the involution `ω`, branching and the Cauchy and
//! skew-Pieri generating sums.
//!
//! All functions work at charge zero. Series results carry an explicit
//! truncation; specialized results (`p_k = sum_r x_r^k - (-y_r)^k`) are
//! exact and computed by the lattice transfer matrices.

use crate::currents::{CurrentError, Currents, PowersumSpec, Sign};
use crate::fock::{interval, partitions_up_to, ChargedKet, FockVector, Partition};
use crate::lattice;
use crate::ring::{det, Coef, Family, PMono, PSeries, Trunc, Var};
use crate::shifted::{lambda_m_xy, lambda_series, xi_series, ParamEnv, Which};
use std::collections::BTreeMap;
use std::fmt;

pub use crate::currents::supersym_powersum;

/// Errors from the Schur-function routes.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchurError {
    /// A determinant of size `n` cannot represent the shape.
    #[error("determinant size {n} is smaller than the required {need}")]
    TooFewRows {
        /// Requested size.
        n: usize,
        /// Minimal size.
        need: usize,
    },
    /// A generating sum with both parameter sequences present needs an
    /// `α`-degree cut to be finite.
    #[error("this sum is infinite unless α ≡ 0 or β ≡ 0; pass an α-degree cut")]
    NeedsDegreeCut,
    /// Coefficients are not polynomial, so a degree cut is meaningless.
    #[error("degree cut requested on a non-polynomial coefficient")]
    NotPolynomial,
    /// Failure in the underlying operator computation.
    #[error(transparent)]
    Current(#[from] CurrentError),
}

/// Which computation produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Route {
    /// `⟨μ|e^{H_±}|λ⟩` by direct operator expansion.
    Definition,
    /// A Jacobi–Trudi determinant.
    JacobiTrudi,
    /// The Giambelli hook determinant.
    Giambelli,
    /// Transfer matrices of the lattice models.
    Lattice,
    /// Murnaghan–Nakayama recursion.
    MnRecursion,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Route::Definition => "definition",
            Route::JacobiTrudi => "jacobi_trudi",
            Route::Giambelli => "giambelli",
            Route::Lattice => "lattice",
            Route::MnRecursion => "mn_recursion",
        };
        write!(f, "{s}")
    }
}

/// A value in series or specialized mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    /// Truncated series in the power sums.
    Series(PSeries),
    /// Exact value under a specialization.
    Exact(Coef),
}

impl Value {
    /// The series, if in series mode.
    pub fn as_series(&self) -> Option<&PSeries> {
        match self {
            Value::Series(s) => Some(s),
            Value::Exact(_) => None,
        }
    }

    /// The exact value, if in specialized mode.
    pub fn as_exact(&self) -> Option<&Coef> {
        match self {
            Value::Series(_) => None,
            Value::Exact(c) => Some(c),
        }
    }
}

/// A (dual) double factorial Schur function value with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DfsResult {
    /// Outer shape.
    pub lambda: Partition,
    /// Inner shape.
    pub mu: Partition,
    /// Route that computed the value.
    pub route: Route,
    /// The value.
    pub value: Value,
}

fn series_trunc(d: u32, family: Family) -> Trunc {
    Trunc::families(&[(family, d)])
}

fn zero_value(p: &PowersumSpec) -> Value {
    match p {
        PowersumSpec::Series { d, family } => Value::Series(PSeries::zero(series_trunc(*d, *family))),
        PowersumSpec::Pairs(_) => Value::Exact(Coef::zero()),
    }
}

/// `s_{λ/μ}` as a truncated series, from `⟨μ|e^{H_+}|λ⟩`.
pub fn skew_series(env: &ParamEnv, lambda: &Partition, mu: &Partition, trunc: Trunc, family: Family) -> PSeries {
    if !lambda.contains(mu) {
        return PSeries::zero(trunc);
    }
    let cur = Currents::new(env);
    let start = FockVector::basis(ChargedKet::new(lambda.clone(), 0));
    // H_+ only shrinks partitions, so kets not containing μ never return.
    let mut out = cur.exp_h_series(Sign::Plus, trunc, family, &start, &|k| k.lambda.contains(mu));
    out.remove(&ChargedKet::new(mu.clone(), 0)).unwrap_or_else(|| PSeries::zero(trunc))
}

/// `s_{λ/μ}` for every `μ ⊆ λ` from a single expansion of `e^{H_+}|λ⟩`.
pub fn skew_series_all(env: &ParamEnv, lambda: &Partition, trunc: Trunc, family: Family) -> BTreeMap<Partition, PSeries> {
    let cur = Currents::new(env);
    let start = FockVector::basis(ChargedKet::new(lambda.clone(), 0));
    cur.exp_h_series(Sign::Plus, trunc, family, &start, &|_| true).into_iter().map(|(k, s)| (k.lambda, s)).collect()
}

/// `ŝ_{λ/μ}` as a truncated series, from `⟨λ|e^{H_-}|μ⟩`.
pub fn dual_series(env: &ParamEnv, lambda: &Partition, mu: &Partition, trunc: Trunc, family: Family) -> PSeries {
    if !lambda.contains(mu) {
        return PSeries::zero(trunc);
    }
    let cur = Currents::new(env);
    let start = FockVector::basis(ChargedKet::new(mu.clone(), 0));
    // H_- only grows partitions, so kets outside λ never return.
    let mut out = cur.exp_h_series(Sign::Minus, trunc, family, &start, &|k| lambda.contains(&k.lambda));
    out.remove(&ChargedKet::new(lambda.clone(), 0)).unwrap_or_else(|| PSeries::zero(trunc))
}

/// `ŝ_{λ/μ}` for every `λ ⊇ μ` with `|λ| ≤ max_size`.
pub fn dual_series_all(env: &ParamEnv, mu: &Partition, max_size: u32, trunc: Trunc, family: Family) -> BTreeMap<Partition, PSeries> {
    let cur = Currents::new(env);
    let start = FockVector::basis(ChargedKet::new(mu.clone(), 0));
    cur.exp_h_series(Sign::Minus, trunc, family, &start, &|k| k.energy() <= max_size)
        .into_iter()
        .map(|(k, s)| (k.lambda, s))
        .collect()
}

/// The double factorial Schur function `s_{λ/μ}(p‖α;β)`.
pub fn dfs(env: &ParamEnv, lambda: &Partition, mu: &Partition, p: &PowersumSpec) -> DfsResult {
    let (route, value) = if !lambda.contains(mu) {
        (Route::Definition, zero_value(p))
    } else {
        match p {
            PowersumSpec::Series { d, family } => {
                (Route::Definition, Value::Series(skew_series(env, lambda, mu, series_trunc(*d, *family), *family)))
            }
            PowersumSpec::Pairs(pairs) => (Route::Lattice, Value::Exact(lattice::dfs_pairs(env, lambda, mu, pairs))),
        }
    };
    DfsResult { lambda: lambda.clone(), mu: mu.clone(), route, value }
}

/// The dual double factorial Schur function `ŝ_{λ/μ}(p‖α;β)`.
pub fn dfs_dual(env: &ParamEnv, lambda: &Partition, mu: &Partition, p: &PowersumSpec) -> DfsResult {
    let (route, value) = if !lambda.contains(mu) {
        (Route::Definition, zero_value(p))
    } else {
        match p {
            PowersumSpec::Series { d, family } => {
                (Route::Definition, Value::Series(dual_series(env, lambda, mu, series_trunc(*d, *family), *family)))
            }
            PowersumSpec::Pairs(pairs) => (Route::Lattice, Value::Exact(lattice::dual_pairs(env, lambda, mu, pairs))),
        }
    };
    DfsResult { lambda: lambda.clone(), mu: mu.clone(), route, value }
}

fn row(k: u32) -> Partition {
    if k == 0 {
        Partition::empty()
    } else {
        Partition::of(&[k])
    }
}

fn column(k: u32) -> Partition {
    Partition::of(&vec![1; k as usize])
}

/// `h_k(p‖σ^s α; σ^s β) = s_{(k)}` in the shifted environment.
pub fn hk_shifted(env: &ParamEnv, k: u32, s: i64, p: &PowersumSpec) -> Value {
    dfs(&env.shift(s), &row(k), &Partition::empty(), p).value
}

/// `e_k(p‖σ^s α; σ^s β) = s_{(1^k)}` in the shifted environment.
pub fn ek_shifted(env: &ParamEnv, k: u32, s: i64, p: &PowersumSpec) -> Value {
    dfs(&env.shift(s), &column(k), &Partition::empty(), p).value
}

/// Exact `e^{c ξ(p; z)}` for `p_k = sum_r x_r^k - (-y_r)^k`, i.e.
/// `prod_r ((1 + z y_r)/(1 - z x_r))^c`.
fn xi_pairs(z: &Coef, c: i32, pairs: &[(Coef, Coef)]) -> Coef {
    let mut acc = Coef::one();
    for (x, y) in pairs {
        let up = Coef::one().add(&z.mul(y));
        let down = Coef::one().sub(&z.mul(x));
        let (n, d) = if c > 0 { (up, down) } else { (down, up) };
        for _ in 0..c.unsigned_abs() {
            acc = acc.mul(&n).div(&d).expect("vanishing factor in e^ξ");
        }
    }
    acc
}

fn lambda_pairs(env: &ParamEnv, m: i64, pairs: &[(Coef, Coef)]) -> Coef {
    let mut acc = Coef::one();
    for (x, y) in pairs {
        acc = acc.mul(&lambda_m_xy(env, m, x, y, Which::Beta));
    }
    acc
}

/// One Jacobi–Trudi entry generator: `(k, shift) -> value`, with a cache.
struct EntryCache<'a> {
    env: &'a ParamEnv,
    p: &'a PowersumSpec,
    column: bool,
    cache: BTreeMap<(u32, i64), Value>,
}

impl<'a> EntryCache<'a> {
    fn get(&mut self, k: u32, s: i64) -> Value {
        let (env, p, column) = (self.env, self.p, self.column);
        self.cache
            .entry((k, s))
            .or_insert_with(|| if column { ek_shifted(env, k, s, p) } else { hk_shifted(env, k, s, p) })
            .clone()
    }
}

fn determinant_value(p: &PowersumSpec, m: Vec<Vec<Value>>) -> Value {
    match p {
        PowersumSpec::Series { d, family } => {
            let t = series_trunc(*d, *family);
            let rows: Vec<Vec<PSeries>> =
                m.into_iter().map(|r| r.into_iter().map(|v| v.as_series().expect("series").clone()).collect()).collect();
            Value::Series(det(&rows, &PSeries::zero(t), &PSeries::one(t)))
        }
        PowersumSpec::Pairs(_) => {
            let rows: Vec<Vec<Coef>> =
                m.into_iter().map(|r| r.into_iter().map(|v| v.as_exact().expect("exact").clone()).collect()).collect();
            Value::Exact(det(&rows, &Coef::zero(), &Coef::one()))
        }
    }
}

fn value_mul(a: &Value, b: &Value) -> Value {
    match (a, b) {
        (Value::Series(x), Value::Series(y)) => Value::Series(x.mul(y)),
        (Value::Exact(x), Value::Exact(y)) => Value::Exact(x.mul(y)),
        _ => panic!("mixed series and exact values"),
    }
}

/// `e^{c ξ(p; z)}` in the mode of `p`.
fn xi_value(z: &Coef, c: i32, p: &PowersumSpec) -> Value {
    match p {
        PowersumSpec::Series { d, family } => Value::Series(xi_series(z, c as i64, series_trunc(*d, *family), *family)),
        PowersumSpec::Pairs(pairs) => Value::Exact(xi_pairs(z, c, pairs)),
    }
}

/// `e^{Λ_m(p|β)}` in the mode of `p`.
fn lambda_value(env: &ParamEnv, m: i64, p: &PowersumSpec) -> Value {
    match p {
        PowersumSpec::Series { d, family } => Value::Series(lambda_series(env, m, Which::Beta, 1, series_trunc(*d, *family), *family)),
        PowersumSpec::Pairs(pairs) => Value::Exact(lambda_pairs(env, m, pairs)),
    }
}

/// Jacobi–Trudi determinant of size `n ≥ max(ℓ(λ), ℓ(μ))`:
/// `e^{Λ_{-n}(p|β)} det[e^{ξ(p;β_{μ_j-j+1})} h_{λ_i-μ_j-i+j}(p‖σ^{μ_j-j+1}α; σ^{μ_j-j+1}β)]`.
pub fn jacobi_trudi(env: &ParamEnv, lambda: &Partition, mu: &Partition, n: usize, p: &PowersumSpec) -> Result<DfsResult, SchurError> {
    let need = lambda.len().max(mu.len());
    if n < need {
        return Err(SchurError::TooFewRows { n, need });
    }
    let mut entries = EntryCache { env, p, column: false, cache: BTreeMap::new() };
    let zero = zero_value(p);
    let mut m = Vec::with_capacity(n);
    for i in 1..=n {
        let mut r = Vec::with_capacity(n);
        for j in 1..=n {
            let k = lambda.part(i) as i64 - mu.part(j) as i64 - i as i64 + j as i64;
            if k < 0 {
                r.push(zero.clone());
                continue;
            }
            let s = mu.part(j) as i64 - j as i64 + 1;
            let h = entries.get(k as u32, s);
            r.push(value_mul(&xi_value(&env.beta(s), 1, p), &h));
        }
        m.push(r);
    }
    let value = value_mul(&lambda_value(env, -(n as i64), p), &determinant_value(p, m));
    Ok(DfsResult { lambda: lambda.clone(), mu: mu.clone(), route: Route::JacobiTrudi, value })
}

/// Dual Jacobi–Trudi determinant of size `n ≥ max(λ_1, μ_1)`:
/// `e^{Λ_n(p|β)} det[e^{-ξ(p;β_{j-μ'_j})} e_{λ'_i-μ'_j-i+j}(p‖σ^{j-μ'_j-1}α; σ^{j-μ'_j-1}β)]`.
pub fn jacobi_trudi_dual(env: &ParamEnv, lambda: &Partition, mu: &Partition, n: usize, p: &PowersumSpec) -> Result<DfsResult, SchurError> {
    let need = lambda.first().max(mu.first()) as usize;
    if n < need {
        return Err(SchurError::TooFewRows { n, need });
    }
    let (lc, mc) = (lambda.conjugate(), mu.conjugate());
    let mut entries = EntryCache { env, p, column: true, cache: BTreeMap::new() };
    let zero = zero_value(p);
    let mut m = Vec::with_capacity(n);
    for i in 1..=n {
        let mut r = Vec::with_capacity(n);
        for j in 1..=n {
            let k = lc.part(i) as i64 - mc.part(j) as i64 - i as i64 + j as i64;
            if k < 0 {
                r.push(zero.clone());
                continue;
            }
            let t = j as i64 - mc.part(j) as i64;
            let e = entries.get(k as u32, t - 1);
            r.push(value_mul(&xi_value(&env.beta(t), -1, p), &e));
        }
        m.push(r);
    }
    let value = value_mul(&lambda_value(env, n as i64, p), &determinant_value(p, m));
    Ok(DfsResult { lambda: lambda.clone(), mu: mu.clone(), route: Route::JacobiTrudi, value })
}

/// The hook `(a|b) = (a+1, 1^b)`.
pub fn hook(a: u32, b: u32) -> Partition {
    let mut parts = vec![a + 1];
    parts.extend(std::iter::repeat_n(1, b as usize));
    Partition::of(&parts)
}

/// Giambelli: `s_λ = det[s_{(a_i|b_j)}]` over the Frobenius coordinates.
pub fn giambelli(env: &ParamEnv, lambda: &Partition, p: &PowersumSpec) -> DfsResult {
    let (a, b) = lambda.frobenius();
    let empty = Partition::empty();
    let m: Vec<Vec<Value>> =
        a.iter().map(|&ai| b.iter().map(|&bj| dfs(env, &hook(ai, bj), &empty, p).value).collect()).collect();
    DfsResult { lambda: lambda.clone(), mu: empty, route: Route::Giambelli, value: determinant_value(p, m) }
}

/// Direction of a Murnaghan–Nakayama step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MnDirection {
    /// `p_k s_λ = sum_ν c_ν s_ν` (ribbons added).
    Multiply,
    /// `k ∂_{p_k} s_λ = sum_μ c_μ s_μ` (ribbons removed).
    Differentiate,
}

/// Murnaghan–Nakayama expansion. The coefficients are the matrix elements
/// of `J_{-k}` (multiply) or `J_k` (differentiate) on `|λ⟩_0`: the diagonal
/// supersymmetric power sum on `λ` itself and `(-1)^{ht-1} A` on ribbons.
pub fn mn_expand(env: &ParamEnv, k: u32, lambda: &Partition, direction: MnDirection) -> Vec<(Partition, Coef)> {
    assert!(k >= 1, "mode must be positive");
    let mode = match direction {
        MnDirection::Multiply => -(k as i64),
        MnDirection::Differentiate => k as i64,
    };
    let cur = Currents::new(env);
    let mut out: Vec<(Partition, Coef)> =
        cur.apply_basis(mode, &ChargedKet::new(lambda.clone(), 0)).into_iter().map(|(kt, c)| (kt.lambda, c)).collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// `ω` on one variable family: `p_k ↦ (-1)^{k+1} p_k`.
pub fn omega_apply_in(f: &PSeries, family: Family) -> PSeries {
    f.map_monos(f.trunc(), &|m| {
        let odd = m.parts(family).iter().filter(|&&k| k % 2 == 0).count() % 2 == 1;
        (if odd { Coef::int(-1) } else { Coef::one() }, m.clone())
    })
}

/// `ω p_k = (-1)^{k+1} p_k`, extended multiplicatively.
pub fn omega_apply(f: &PSeries) -> PSeries {
    omega_apply_in(f, Family::P)
}

/// `p_k ↦ -p_k` on one family.
pub fn negate_family(f: &PSeries, family: Family) -> PSeries {
    f.map_monos(f.trunc(), &|m| {
        let odd = m.parts(family).len() % 2 == 1;
        (if odd { Coef::int(-1) } else { Coef::one() }, m.clone())
    })
}

/// The product `prod_{i ≤ n} (1-α_{a_i}β_{a_i}) / (1-α_{b_i}β_{b_i})`.
pub fn ab_ratio(env: &ParamEnv, num: &[i64], den: &[i64]) -> Coef {
    let mut acc = Coef::one();
    for &i in num {
        acc = acc.mul(&env.one_minus_ab(i));
    }
    for &i in den {
        acc = acc.div(&env.one_minus_ab(i)).expect("1 - α_i β_i vanishes");
    }
    acc
}

/// The factor in `ω s_{λ/μ} = F · s_{λ'/μ'}(p‖-ια;-ιβ)`:
/// `prod_i (1-α_{λ_i-i+1}β_{λ_i-i+1})/(1-α_{μ_i-i+1}β_{μ_i-i+1})`.
pub fn omega_factor(env: &ParamEnv, lambda: &Partition, mu: &Partition) -> Coef {
    let n = lambda.len().max(mu.len());
    let idx = |p: &Partition| (1..=n).map(|i| p.part(i) as i64 - i as i64 + 1).collect::<Vec<_>>();
    let (a, b) = (idx(lambda), idx(mu));
    // Common indices cancel exactly; dropping them keeps the fraction small.
    let (a, b) = cancel_common(a, b);
    ab_ratio(env, &a, &b)
}

/// The factor in `ŝ_{λ/μ} = F · s_{λ/μ}(p‖β;α)`:
/// `prod_i (1-α_{i-λ'_i}β_{i-λ'_i})/(1-α_{i-μ'_i}β_{i-μ'_i})`.
pub fn duality_factor(env: &ParamEnv, lambda: &Partition, mu: &Partition) -> Coef {
    let (lc, mc) = (lambda.conjugate(), mu.conjugate());
    let n = lc.len().max(mc.len());
    let idx = |p: &Partition| (1..=n).map(|i| i as i64 - p.part(i) as i64).collect::<Vec<_>>();
    let (a, b) = cancel_common(idx(&lc), idx(&mc));
    ab_ratio(env, &a, &b)
}

fn cancel_common(mut a: Vec<i64>, mut b: Vec<i64>) -> (Vec<i64>, Vec<i64>) {
    a.sort();
    b.sort();
    let mut ra = Vec::new();
    let mut rb = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        if j == b.len() || (i < a.len() && a[i] < b[j]) {
            ra.push(a[i]);
            i += 1;
        } else if i == a.len() || b[j] < a[i] {
            rb.push(b[j]);
            j += 1;
        } else {
            i += 1;
            j += 1;
        }
    }
    (ra, rb)
}

/// Which Cauchy identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CauchyVariant {
    /// `sum_λ s_{λ/μ}(p) ŝ_{λ/ν}(p') = e^{ξ(p;p')} sum_λ ŝ_{μ/λ}(p') s_{ν/λ}(p)`.
    Plus,
    /// `sum_λ s_{λ/μ}(p) ŝ_{λ/ν}(-p') = e^{-ξ(p;p')} sum_λ ŝ_{μ/λ}(-p') s_{ν/λ}(p)`.
    Dual,
}

/// Options for the infinite generating sums.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct SumCut {
    /// Keep only terms of total `α`-degree at most this; required when both
    /// `α` and `β` are present.
    pub alpha_degree: Option<u32>,
    /// Extra partition size beyond the proven bound (for re-validation).
    pub extra: u32,
}

/// Largest `|λ|` that can contribute to `sum_λ s_{λ/μ}(p) ŝ_{λ/ν}(p')` with
/// both series truncated at degree `d`.
///
/// Sufficiency: a current `J_k` (`k > 0`) moves a particle from `j` down to
/// `i` with coefficient `(1-α_jβ_j) sum_{r-s=j-i-k} e_r(-α) h_s(β)`, so
/// every term of `s_{λ/μ}` of `p`-degree `e ≤ d` has `α`-degree at least
/// `|λ| - |μ| - e`; likewise `J_{-k}` raises the energy by `k + s - r`, so
/// every term of `ŝ_{λ/ν}` of degree `e'` has `β`-degree at least
/// `|λ| - |ν| - e'`. Hence `|λ| ≤ |μ| + d` suffices when `α ≡ 0`,
/// `|λ| ≤ |ν| + d` when `β ≡ 0`, and `|λ| ≤ |μ| + d + B` modulo terms of
/// `α`-degree above `B` in general.
pub fn cauchy_size_bound(env: &ParamEnv, mu: &Partition, nu: &Partition, d: u32, cut: SumCut) -> Result<u32, SchurError> {
    let base = if env.is_zero(Which::Alpha) {
        mu.size() + d
    } else if env.is_zero(Which::Beta) {
        nu.size() + d
    } else {
        mu.size() + d + cut.alpha_degree.ok_or(SchurError::NeedsDegreeCut)?
    };
    Ok(base + cut.extra)
}

/// The `α` generators of an environment.
pub fn alpha_vars(env: &ParamEnv) -> Vec<Var> {
    let mut v: Vec<Var> = match env.window_of(Which::Alpha) {
        Some((lo, hi)) => (lo..=hi).flat_map(|i| env.alpha(i).vars()).collect(),
        None => Vec::new(),
    };
    v.sort();
    v.dedup();
    v
}

/// Drops coefficient terms of total degree above `d` in `vars`.
pub fn truncate_degree(f: &PSeries, vars: &[Var], d: u32) -> Result<PSeries, SchurError> {
    let mut out = PSeries::zero(f.trunc());
    for (m, c) in f.terms() {
        let p = c.as_poly().ok_or(SchurError::NotPolynomial)?;
        out.add_term(m.clone(), &Coef::from_poly(p.truncate(vars, d)));
    }
    Ok(out)
}

fn maybe_cut(env: &ParamEnv, f: PSeries, cut: SumCut) -> Result<PSeries, SchurError> {
    match cut.alpha_degree {
        Some(b) if !env.is_zero(Which::Alpha) && !env.is_zero(Which::Beta) => truncate_degree(&f, &alpha_vars(env), b),
        _ => Ok(f),
    }
}

/// Both sides of a skew Cauchy identity in `(p, p')` (families `P`, `P2`),
/// each truncated at degree `d` per family.
pub fn cauchy_sides(
    env: &ParamEnv,
    mu: &Partition,
    nu: &Partition,
    d: u32,
    variant: CauchyVariant,
    cut: SumCut,
) -> Result<(PSeries, PSeries), SchurError> {
    let t1 = Trunc::p(d);
    let t2 = Trunc::families(&[(Family::P2, d)]);
    let tt = Trunc::families(&[(Family::P, d), (Family::P2, d)]);
    let bound = cauchy_size_bound(env, mu, nu, d, cut)?;
    let sign_p2 = |f: &PSeries| match variant {
        CauchyVariant::Plus => f.clone(),
        CauchyVariant::Dual => negate_family(f, Family::P2),
    };

    let hat_nu = dual_series_all(env, nu, bound, t2, Family::P2);
    let mut lhs = PSeries::zero(tt);
    for (lambda, sh) in &hat_nu {
        if !lambda.contains(mu) {
            continue;
        }
        let s = maybe_cut(env, skew_series(env, lambda, mu, t1, Family::P).retruncate(tt), cut)?;
        let sh = maybe_cut(env, sign_p2(&sh.retruncate(tt)), cut)?;
        lhs = maybe_cut(env, lhs.add(&s.mul(&sh)), cut)?;
    }

    let mut rhs = PSeries::zero(tt);
    let s_nu = skew_series_all(env, nu, t1, Family::P);
    for (lambda, s) in &s_nu {
        if !mu.contains(lambda) {
            continue;
        }
        let sh = maybe_cut(env, sign_p2(&dual_series(env, mu, lambda, t2, Family::P2).retruncate(tt)), cut)?;
        let s = maybe_cut(env, s.retruncate(tt), cut)?;
        rhs = maybe_cut(env, rhs.add(&sh.mul(&s)), cut)?;
    }
    let kernel = PSeries::xi_kernel(tt);
    let kernel = match variant {
        CauchyVariant::Plus => kernel,
        CauchyVariant::Dual => negate_family(&kernel, Family::P2),
    };
    // Truncating α-degree factor by factor is exact: the discarded terms
    // form an ideal.
    rhs = kernel.mul(&rhs);
    Ok((lhs, maybe_cut(env, rhs, cut)?))
}

/// Which skew-Pieri generating formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieriVariant {
    /// `sum ŝ_{ν/η}(-p) s_{λ/η}(p') ŝ_{λ/μ}(p) = e^{ξ(p;p')} s_{μ/ν}(p')`.
    Plus,
    /// `sum ŝ_{ν/η}(p) s_{λ/η}(p') ŝ_{λ/μ}(-p) = e^{-ξ(p;p')} s_{μ/ν}(p')`.
    Minus,
}

/// Both sides of a skew-Pieri generating formula in `(p, p')`, truncated
/// at degree `d` per family. The `λ`-sum is bounded as in
/// [`cauchy_size_bound`] with `η` in the role of `μ` (via `s_{λ/η}(p')`)
/// and `μ` in the role of `ν` (via `ŝ_{λ/μ}(p)`).
pub fn skew_pieri_sides(
    env: &ParamEnv,
    mu: &Partition,
    nu: &Partition,
    d: u32,
    variant: PieriVariant,
    cut: SumCut,
) -> Result<(PSeries, PSeries), SchurError> {
    let t1 = Trunc::p(d);
    let t2 = Trunc::families(&[(Family::P2, d)]);
    let tt = Trunc::families(&[(Family::P, d), (Family::P2, d)]);
    let (outer_sign, inner_sign) = match variant {
        PieriVariant::Plus => (true, false),
        PieriVariant::Minus => (false, true),
    };
    let neg = |f: PSeries, flip: bool| if flip { negate_family(&f, Family::P) } else { f };
    let mut lhs = PSeries::zero(tt);
    for eta in interval(&Partition::empty(), nu) {
        let a = neg(dual_series(env, nu, &eta, t1, Family::P), outer_sign).retruncate(tt);
        if a.is_zero() {
            continue;
        }
        let bound = cauchy_size_bound(env, &eta, mu, d, cut)?;
        let hats = dual_series_all(env, mu, bound, t1, Family::P);
        for (lambda, sh) in &hats {
            if !lambda.contains(&eta) {
                continue;
            }
            let s = skew_series(env, lambda, &eta, t2, Family::P2).retruncate(tt);
            let c = neg(sh.clone(), inner_sign).retruncate(tt);
            lhs = lhs.add(&a.mul(&s).mul(&c));
        }
    }
    let kernel = PSeries::xi_kernel(tt);
    let kernel = match variant {
        PieriVariant::Plus => kernel,
        PieriVariant::Minus => negate_family(&kernel, Family::P),
    };
    let rhs = kernel.mul(&skew_series(env, mu, nu, t2, Family::P2).retruncate(tt));
    Ok((maybe_cut(env, lhs, cut)?, maybe_cut(env, rhs, cut)?))
}

/// Both sides of the branching rule
/// `s_{λ/μ}(p + p') = sum_ν s_{λ/ν}(p) s_{ν/μ}(p')`, truncated at total
/// degree `d`.
pub fn branching_sides(env: &ParamEnv, lambda: &Partition, mu: &Partition, d: u32) -> (PSeries, PSeries) {
    let tt = Trunc::families(&[(Family::P, d), (Family::P2, d)]).with_total(d);
    let whole = skew_series(env, lambda, mu, Trunc::p(d), Family::P);
    let lhs = whole.subst(tt, &|v| {
        let k = v.index();
        Some(PSeries::var(tt, v).add(&PSeries::var(tt, crate::ring::PVar::new(Family::P2, k))))
    });
    let mut rhs = PSeries::zero(tt);
    for (nu, s) in skew_series_all(env, lambda, Trunc::p(d), Family::P) {
        if !nu.contains(mu) {
            continue;
        }
        let t = skew_series(env, &nu, mu, Trunc::families(&[(Family::P2, d)]), Family::P2);
        rhs = rhs.add(&s.retruncate(tt).mul(&t.retruncate(tt)));
    }
    (lhs, rhs)
}

/// JSON rendering `{"truncation": D, "terms": [{"p": [...], "coeff": "..."}]}`
/// of a single-family series (`p'` parts, if any, appear under `"p2"`).
pub fn series_json(f: &PSeries, d: u32) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = f
        .terms()
        .iter()
        .map(|(m, c)| {
            let mut o = serde_json::json!({ "p": parts_desc(m, Family::P), "coeff": c.canonical() });
            let p2 = parts_desc(m, Family::P2);
            if !p2.is_empty() {
                o["p2"] = serde_json::json!(p2);
            }
            o
        })
        .collect();
    serde_json::json!({ "truncation": d, "terms": terms })
}

fn parts_desc(m: &PMono, f: Family) -> Vec<u32> {
    let mut v = m.parts(f);
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// All straight shapes up to a size, for suites.
pub fn shapes_up_to(n: u32) -> Vec<Partition> {
    partitions_up_to(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PVar, Q};

    fn p(k: u32) -> PVar {
        PVar::new(Family::P, k)
    }

    fn classical_env() -> ParamEnv {
        ParamEnv::zero()
    }

    /// `exp(Σ_k p_k/k (Σ_{occupied i > 0} β_i^k − Σ_{empty i ≤ 0} β_i^k))`
    /// for the charge-0 state of `λ`.
    fn diagonal_exponential(env: &ParamEnv, lam: &Partition, t: Trunc) -> PSeries {
        let ket = ChargedKet::new(lam.clone(), 0);
        let mut f = PSeries::one(t);
        for i in -(lam.len() as i64)..=lam.first() as i64 {
            if i > 0 && ket.occupied(i) {
                f = f.mul(&xi_series(&env.beta(i), 1, t, Family::P));
            }
            if i <= 0 && !ket.occupied(i) {
                f = f.mul(&xi_series(&env.beta(i), -1, t, Family::P));
            }
        }
        f
    }

    /// `Σ_k c_k(w) F_k` for series `F_k`, each scalar expanded to `α`-degree
    /// `b` first; compared against `target` modulo `α`-degree above `b`.
    fn check_generating_series(env: &ParamEnv, target: &PSeries, terms: &[(Coef, PSeries)], b: u32) {
        let av = alpha_vars(env);
        let mut sum = PSeries::zero(target.trunc());
        for (c, f) in terms {
            let c = crate::ring::expand(c, &av, b).expect("expandable");
            sum = sum.add(&f.scale(&c));
        }
        let sum = truncate_degree(&sum, &av, b).expect("polynomial");
        let want = truncate_degree(target, &av, b).expect("polynomial");
        assert_eq!(sum, want);
    }

    #[test]
    fn complete_and_elementary_generating_series() {
        // e^{ξ(p;w)} e^{-ξ(p;β_0)} = Σ_k h_k (w|σ^{-1}β)^k / (w;α)^k and
        // e^{-ξ(p;w)} e^{ξ(p;β_1)} = Σ_k (-1)^k e_k (1-α_{1-k}β_{1-k})/(1-α_1β_1)
        //                                · (w;α)^{-k} / (w|σβ)^{-k},
        // checked modulo α-degree b; terms of p-degree ≤ d need k ≤ d + b.
        use crate::shifted::{alpha_power_recip, bar_power, bar_power_recip, semi_power_of};
        let env = ParamEnv::symbolic(-4, 3);
        let (d, b) = (3u32, 1u32);
        let t = Trunc::p(d);
        let w = Coef::sym("w", None);
        let lhs = xi_series(&w, 1, t, Family::P).mul(&xi_series(&env.beta(0), -1, t, Family::P));
        let terms: Vec<(Coef, PSeries)> = (0..=d + b)
            .map(|k| {
                let c = bar_power(&env, Which::Beta, k as i64, -1, &w).mul(&alpha_power_recip(&env, k as i64, 0, &w));
                (c, skew_series(&env, &row(k), &Partition::empty(), t, Family::P))
            })
            .collect();
        check_generating_series(&env, &lhs, &terms, b);
        let lhs = xi_series(&w, -1, t, Family::P).mul(&xi_series(&env.beta(1), 1, t, Family::P));
        let terms: Vec<(Coef, PSeries)> = (0..=d + b)
            .map(|k| {
                let k = k as i64;
                let sign = if k % 2 == 0 { Coef::one() } else { Coef::int(-1) };
                let c = sign
                    .mul(&ab_ratio(&env, &[1 - k], &[1]))
                    .mul(&semi_power_of(&env, Which::Alpha, -k, 0, &w))
                    .mul(&bar_power_recip(&env, Which::Beta, -k, 1, &w));
                (c, skew_series(&env, &column(k as u32), &Partition::empty(), t, Family::P))
            })
            .collect();
        check_generating_series(&env, &lhs, &terms, b);
    }

    #[test]
    fn trivial_values() {
        let env = ParamEnv::symbolic(-2, 3);
        let e = Partition::empty();
        let s = skew_series(&env, &e, &e, Trunc::p(4), Family::P);
        assert_eq!(s, PSeries::one(Trunc::p(4)));
        let s = dual_series(&env, &e, &e, Trunc::p(4), Family::P);
        assert_eq!(s, PSeries::one(Trunc::p(4)));
        // Containment.
        let r = dfs(&env, &Partition::of(&[2]), &Partition::of(&[1, 1]), &PowersumSpec::series(4));
        assert!(r.value.as_series().expect("series").is_zero());
        // λ = μ: only the diagonal part of the currents acts.
        let lam = Partition::of(&[2, 1]);
        assert_eq!(skew_series(&env, &lam, &lam, Trunc::p(3), Family::P), diagonal_exponential(&env, &lam, Trunc::p(3)));
        let flat = ParamEnv::symbolic_alpha(-2, 3);
        assert_eq!(skew_series(&flat, &lam, &lam, Trunc::p(3), Family::P), PSeries::one(Trunc::p(3)));
    }

    #[test]
    fn classical_two_column() {
        // α = β = 0: s_{1,1} = (p_1^2 - p_2)/2.
        let t = Trunc::p(4);
        let s = skew_series(&classical_env(), &Partition::of(&[1, 1]), &Partition::empty(), t, Family::P);
        let mut want = PSeries::zero(t);
        want.add_term(PMono::from_vars(&[p(1), p(1)]), &Coef::rational(Q::frac(1, 2)));
        want.add_term(PMono::from_vars(&[p(2)]), &Coef::rational(Q::frac(-1, 2)));
        assert_eq!(s, want);
    }

    /// Classical Schur functions in power sums by the character formula,
    /// with characters from the classical border-strip recursion written
    /// independently of the fermionic code.
    fn classical_character(lambda: &[u32], rho: &[u32]) -> i64 {
        if rho.is_empty() {
            return if lambda.iter().all(|&x| x == 0) { 1 } else { 0 };
        }
        let k = rho[0] as i64;
        let n = lambda.len();
        // β-numbers with n beads.
        let beads: Vec<i64> = (0..n).map(|i| lambda[i] as i64 + (n - 1 - i) as i64).collect();
        let mut total = 0;
        for (i, &b) in beads.iter().enumerate() {
            let nb = b - k;
            if nb < 0 || beads.contains(&nb) {
                continue;
            }
            let passed = beads.iter().filter(|&&c| c > nb && c < b).count() as i64;
            let mut new_beads: Vec<i64> = beads.clone();
            new_beads[i] = nb;
            new_beads.sort_unstable_by(|a, b| b.cmp(a));
            let new_lambda: Vec<u32> = (0..n).map(|j| (new_beads[j] - (n - 1 - j) as i64) as u32).collect();
            let sign = if passed % 2 == 0 { 1 } else { -1 };
            total += sign * classical_character(&new_lambda, &rho[1..]);
        }
        total
    }

    #[test]
    fn classical_limit_matches_characters() {
        let d = 5;
        let t = Trunc::p(d);
        for lambda in partitions_up_to(d) {
            let s = skew_series(&classical_env(), &lambda, &Partition::empty(), t, Family::P);
            let mut want = PSeries::zero(t);
            for rho in crate::fock::partitions_of(lambda.size()) {
                let chi = classical_character(lambda.parts(), rho.parts());
                want.add_term(PMono::of_family(Family::P, rho.parts()), &Coef::rational(&rho.z().recip() * &Q::int(chi)));
            }
            assert_eq!(s, want, "λ = {lambda}");
        }
    }

    #[test]
    fn jacobi_trudi_and_giambelli_agree() {
        let env = ParamEnv::symbolic(-3, 4);
        let ps = PowersumSpec::series(4);
        for lam in [Partition::of(&[2, 1]), Partition::of(&[2, 2]), Partition::of(&[3, 1]), Partition::of(&[1, 1, 1])] {
            let def = dfs(&env, &lam, &Partition::empty(), &ps).value;
            let jt = jacobi_trudi(&env, &lam, &Partition::empty(), lam.len(), &ps).expect("size").value;
            assert_eq!(def, jt, "JT {lam}");
            let jt3 = jacobi_trudi(&env, &lam, &Partition::empty(), lam.len() + 1, &ps).expect("size").value;
            assert_eq!(def, jt3, "JT padded {lam}");
            let dual = jacobi_trudi_dual(&env, &lam, &Partition::empty(), lam.first() as usize, &ps).expect("size").value;
            assert_eq!(def, dual, "dual JT {lam}");
            let g = giambelli(&env, &lam, &ps).value;
            assert_eq!(def, g, "Giambelli {lam}");
        }
        assert!(jacobi_trudi(&env, &Partition::of(&[1, 1]), &Partition::empty(), 1, &ps).is_err());
        assert!(jacobi_trudi_dual(&env, &Partition::of(&[2]), &Partition::empty(), 1, &ps).is_err());
    }

    #[test]
    fn skew_jacobi_trudi() {
        let env = ParamEnv::symbolic(-3, 4);
        let ps = PowersumSpec::series(3);
        for (lam, mu) in [(vec![2, 1], vec![1]), (vec![3, 2], vec![1]), (vec![2, 2], vec![1, 1]), (vec![3, 1], vec![2])] {
            let (lam, mu) = (Partition::of(&lam), Partition::of(&mu));
            let def = dfs(&env, &lam, &mu, &ps).value;
            let jt = jacobi_trudi(&env, &lam, &mu, lam.len(), &ps).expect("size").value;
            assert_eq!(def, jt, "JT {lam}/{mu}");
            let dual = jacobi_trudi_dual(&env, &lam, &mu, lam.first() as usize, &ps).expect("size").value;
            assert_eq!(def, dual, "dual JT {lam}/{mu}");
        }
        // λ = μ: the determinant is triangular and the prefactor leaves
        // the diagonal exponentials.
        let lam = Partition::of(&[2, 1]);
        let jt = jacobi_trudi(&env, &lam, &lam, 2, &ps).expect("size").value;
        assert_eq!(jt, Value::Series(diagonal_exponential(&env, &lam, Trunc::p(3))));
    }

    #[test]
    fn single_row_generating_series() {
        // λ = (k): JT reduces to e^{Λ_{-1}} e^{ξ(p;β_0)} h_k.
        let env = ParamEnv::symbolic(-2, 3);
        let t = Trunc::p(3);
        let ps = PowersumSpec::series(3);
        let pref = lambda_series(&env, -1, Which::Beta, 1, t, Family::P).mul(&xi_series(&env.beta(0), 1, t, Family::P));
        assert_eq!(pref, PSeries::one(t), "e^{{Λ_{{-1}}}} e^{{ξ(p;β_0)}} = 1");
        for k in 0..4 {
            let jt = jacobi_trudi(&env, &row(k), &Partition::empty(), 1, &ps).expect("size").value;
            assert_eq!(jt, hk_shifted(&env, k, 0, &ps));
        }
    }

    #[test]
    fn omega_is_an_involution() {
        let env = ParamEnv::symbolic(-1, 2);
        let s = skew_series(&env, &Partition::of(&[2, 1]), &Partition::empty(), Trunc::p(6), Family::P);
        assert_eq!(omega_apply(&omega_apply(&s)), s);
        let p2 = PSeries::var(Trunc::p(3), p(2));
        assert_eq!(omega_apply(&p2), p2.neg());
    }

    #[test]
    fn omega_on_rows_and_skew_shapes() {
        let env = ParamEnv::symbolic(-3, 4);
        let t = Trunc::p(4);
        let flipped = env.minus_iota();
        for k in 0..=4u32 {
            let lhs = omega_apply(&skew_series(&env, &row(k), &Partition::empty(), t, Family::P));
            let f = ab_ratio(&env, &[k as i64], &[0]);
            let rhs = skew_series(&flipped, &column(k), &Partition::empty(), t, Family::P).scale(&f);
            assert_eq!(lhs, rhs, "ω h_{k}");
        }
        for (lam, mu) in [(vec![2, 1], vec![]), (vec![3, 1], vec![1]), (vec![2, 2], vec![1])] {
            let (lam, mu) = (Partition::of(&lam), Partition::of(&mu));
            let lhs = omega_apply(&skew_series(&env, &lam, &mu, t, Family::P));
            let rhs = skew_series(&flipped, &lam.conjugate(), &mu.conjugate(), t, Family::P).scale(&omega_factor(&env, &lam, &mu));
            assert_eq!(lhs, rhs, "ω s_{lam}/{mu}");
        }
    }

    #[test]
    fn duality_with_swapped_parameters() {
        let env = ParamEnv::symbolic(-3, 4);
        let t = Trunc::p(4);
        for (lam, mu) in [(vec![1], vec![]), (vec![2, 1], vec![]), (vec![2, 1], vec![1]), (vec![3], vec![1])] {
            let (lam, mu) = (Partition::of(&lam), Partition::of(&mu));
            let lhs = dual_series(&env, &lam, &mu, t, Family::P);
            let rhs = skew_series(&env.swap(), &lam, &mu, t, Family::P).scale(&duality_factor(&env, &lam, &mu));
            assert_eq!(lhs, rhs, "ŝ {lam}/{mu}");
            let via_omega =
                omega_apply(&skew_series(&env.swap().minus_iota(), &lam.conjugate(), &mu.conjugate(), t, Family::P));
            assert_eq!(lhs, via_omega, "ŝ via ω {lam}/{mu}");
        }
    }

    #[test]
    fn dual_rows_and_columns() {
        let env = ParamEnv::symbolic(-3, 4);
        let t = Trunc::p(3);
        for k in 1..=3u32 {
            let hat_h = dual_series(&env, &row(k), &Partition::empty(), t, Family::P);
            let h = skew_series(&env.swap(), &row(k), &Partition::empty(), t, Family::P);
            assert_eq!(hat_h, h.scale(&ab_ratio(&env, &[0], &[k as i64])));
            let hat_e = dual_series(&env, &column(k), &Partition::empty(), t, Family::P);
            let e = skew_series(&env.swap(), &column(k), &Partition::empty(), t, Family::P);
            assert_eq!(hat_e, e.scale(&ab_ratio(&env, &[1 - k as i64], &[1])));
        }
    }

    #[test]
    fn mn_examples() {
        let env = ParamEnv::symbolic(-3, 4).with_zero(Which::Beta);
        let e = Partition::empty();
        let one = mn_expand(&env, 1, &e, MnDirection::Multiply);
        assert_eq!(one, vec![(Partition::of(&[1]), Coef::one())]);
        let two = mn_expand(&env, 2, &e, MnDirection::Multiply);
        let want = vec![
            (Partition::of(&[1]), env.alpha(0).add(&env.alpha(1))),
            (Partition::of(&[1, 1]), Coef::int(-1)),
            (Partition::of(&[2]), Coef::one()),
        ];
        let mut sorted = want.clone();
        sorted.sort_by(|a, b| a.0.cmp(&b.0));
        assert_eq!(two, sorted);
    }

    #[test]
    fn mn_consistency() {
        // Multiply: p_k s_λ = sum c_ν s_ν. Differentiate: k ∂_{p_k} s_λ = sum c_μ s_μ.
        let d = 5;
        let t = Trunc::p(d);
        let env = ParamEnv::symbolic(-2, 3).with_zero(Which::Beta);
        for lam in [Partition::empty(), Partition::of(&[1]), Partition::of(&[2, 1])] {
            let s = skew_series(&env, &lam, &Partition::empty(), t, Family::P);
            for k in 1..=2u32 {
                let lhs = s.mul(&PSeries::var(t, p(k)));
                let mut rhs = PSeries::zero(t);
                for (nu, c) in mn_expand(&env, k, &lam, MnDirection::Multiply) {
                    rhs = rhs.add(&skew_series(&env, &nu, &Partition::empty(), t, Family::P).scale(&c));
                }
                // Terms of degree d + 1 - k and above are incomplete on the right.
                let low = Trunc::p(d - k);
                assert_eq!(lhs.retruncate(low), rhs.retruncate(low), "multiply λ={lam} k={k}");
            }
        }
        let env = ParamEnv::symbolic(-2, 3);
        for lam in [Partition::of(&[2, 1]), Partition::of(&[3, 1])] {
            let s = skew_series(&env, &lam, &Partition::empty(), t, Family::P);
            for k in 1..=2u32 {
                let lhs = s.derivative(p(k)).scale_q(&Q::int(k as i64));
                let mut rhs = PSeries::zero(t);
                for (mu, c) in mn_expand(&env, k, &lam, MnDirection::Differentiate) {
                    rhs = rhs.add(&skew_series(&env, &mu, &Partition::empty(), t, Family::P).scale(&c));
                }
                let low = Trunc::p(d - k);
                assert_eq!(lhs.retruncate(low), rhs.retruncate(low), "differentiate λ={lam} k={k}");
            }
        }
    }

    #[test]
    fn mn_three_two_one() {
        let env = ParamEnv::symbolic(-4, 5);
        let lam = Partition::of(&[3, 2, 1]);
        for k in 1..=3u32 {
            let got: BTreeMap<Partition, Coef> = mn_expand(&env, k, &lam, MnDirection::Differentiate).into_iter().collect();
            let a = |i, j| coeff_a_k(&env, i, j, k);
            let b = |i| env.beta(i).pow(k as i32).expect("power");
            let diag = b(3).add(&b(1)).sub(&b(0)).sub(&b(-2));
            assert_eq!(got[&lam], diag);
            let expect = [
                (vec![3, 2], a(-2, -1)),
                (vec![3, 1, 1], a(0, 1)),
                (vec![2, 2, 1], a(2, 3)),
                (vec![1, 1, 1], a(0, 3).neg()),
                (vec![3], a(-2, 1).neg()),
                (vec![1], a(-2, 3)),
            ];
            for (shape, c) in expect {
                assert_eq!(got.get(&Partition::of(&shape)).cloned().unwrap_or_else(Coef::zero), c, "k={k} {shape:?}");
            }
        }
    }

    fn coeff_a_k(env: &ParamEnv, i: i64, j: i64, k: u32) -> Coef {
        crate::currents::coeff_a(env, i, j, k as i64)
    }

    #[test]
    fn branching_rule() {
        let env = ParamEnv::symbolic(-2, 3);
        for (lam, mu) in [(vec![2, 1], vec![]), (vec![2, 2], vec![1])] {
            let (l, r) = branching_sides(&env, &Partition::of(&lam), &Partition::of(&mu), 3);
            assert_eq!(l, r, "{lam:?}/{mu:?}");
        }
    }

    #[test]
    fn cauchy_small() {
        // Classical kernel.
        let env = ParamEnv::zero();
        let e = Partition::empty();
        let (l, r) = cauchy_sides(&env, &e, &e, 2, CauchyVariant::Plus, SumCut::default()).expect("finite");
        assert_eq!(l, r);
        assert_eq!(l, PSeries::xi_kernel(Trunc::families(&[(Family::P, 2), (Family::P2, 2)])));
        // Exact at α = 0 and at β = 0, and modulo an α-degree cut in general.
        let full = ParamEnv::symbolic(-2, 3);
        let mu = Partition::of(&[1]);
        for env in [full.with_zero(Which::Alpha), full.with_zero(Which::Beta)] {
            for v in [CauchyVariant::Plus, CauchyVariant::Dual] {
                let (l, r) = cauchy_sides(&env, &mu, &e, 3, v, SumCut::default()).expect("finite");
                assert_eq!(l, r, "{v:?}");
                let (l2, _) = cauchy_sides(&env, &mu, &e, 3, v, SumCut { extra: 2, ..SumCut::default() }).expect("finite");
                assert_eq!(l, l2, "enlarged bound {v:?}");
            }
        }
        assert_eq!(cauchy_sides(&full, &mu, &e, 2, CauchyVariant::Plus, SumCut::default()), Err(SchurError::NeedsDegreeCut));
        let cut = SumCut { alpha_degree: Some(1), extra: 0 };
        let (l, r) = cauchy_sides(&full, &mu, &e, 2, CauchyVariant::Plus, cut).expect("finite");
        assert_eq!(l, r);
    }

    #[test]
    fn skew_pieri_small() {
        let env = ParamEnv::symbolic(-2, 3).with_zero(Which::Alpha);
        for (mu, nu) in [(vec![1], vec![]), (vec![2, 1], vec![1])] {
            for v in [PieriVariant::Plus, PieriVariant::Minus] {
                let (l, r) = skew_pieri_sides(&env, &Partition::of(&mu), &Partition::of(&nu), 2, v, SumCut::default())
                    .expect("finite");
                assert_eq!(l, r, "{mu:?} {nu:?} {v:?}");
            }
        }
    }

    #[test]
    fn json_schema() {
        let t = Trunc::p(2);
        let mut s = PSeries::zero(t);
        s.add_term(PMono::of_family(Family::P, &[1, 1]), &Coef::rational(Q::frac(1, 2)));
        let j = series_json(&s, 2);
        assert_eq!(j["truncation"], 2);
        assert_eq!(j["terms"][0]["p"], serde_json::json!([1, 1]));
        assert_eq!(j["terms"][0]["coeff"], "1/2");
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use crate::{partition_in_box, rational_env};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(crate::proptest_config(32))]

        #[test]
        fn routes_agree_at_rational_parameters(env in rational_env(-3, 4), l in partition_in_box(3, 3)) {
            let ps = PowersumSpec::series(4);
            let e = Partition::empty();
            let def = dfs(&env, &l, &e, &ps).value;
            prop_assert_eq!(&jacobi_trudi(&env, &l, &e, l.len(), &ps).unwrap().value, &def);
            prop_assert_eq!(&giambelli(&env, &l, &ps).value, &def);
        }

        #[test]
        fn omega_and_duality_at_rational_parameters(env in rational_env(-4, 5), l in partition_in_box(3, 3), m in partition_in_box(1, 2)) {
            prop_assume!(l.contains(&m));
            let t = Trunc::p(4);
            let s = skew_series(&env, &l, &m, t, Family::P);
            prop_assert_eq!(omega_apply(&omega_apply(&s)), s.clone());
            let flipped = skew_series(&env.minus_iota(), &l.conjugate(), &m.conjugate(), t, Family::P);
            prop_assert_eq!(omega_apply(&s), flipped.scale(&omega_factor(&env, &l, &m)));
            let hat = dual_series(&env, &l, &m, t, Family::P);
            prop_assert_eq!(hat, skew_series(&env.swap(), &l, &m, t, Family::P).scale(&duality_factor(&env, &l, &m)));
        }
    }
}
