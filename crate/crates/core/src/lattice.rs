//! Six-vertex row transfer matrices whose partition functions are the
//! double factorial Schur functions.
//!
//! A row has a top boundary (the ket), a bottom boundary (the bra) and one
//! horizontal line. Columns are scanned from high index to low; at each
//! column the incoming horizontal edge is on the high side, and the ice rule
//! forces the outgoing low-side edge. For the `+` model a particle can only
//! travel towards lower columns (partitions shrink), for the `-` model it is
//! the other way round.

use crate::currents::Sign;
use crate::fock::{interval, ChargedKet, Partition};
use crate::ring::{det, Coef, RatFn, RatFnError, Var};
use crate::shifted::{
    beta_pole_candidates, lambda_m_xy, lambda_m_xy_pow, semi_power_of, semi_power_of_recip, bar_power, bar_power_recip,
    sum_residues, ParamEnv, Which,
};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Errors from the lattice routines.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LatticeError {
    /// The inner partition is not contained in the outer one.
    #[error("{inner} is not contained in {outer}")]
    NotContained {
        /// Outer shape.
        outer: Partition,
        /// Inner shape.
        inner: Partition,
    },
    /// Residue evaluation failed.
    #[error("residue evaluation failed: {0}")]
    Residue(#[from] RatFnError),
}

/// One vertex of a row: the four edge occupancies around column `column`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexConfig {
    /// Top (ket side) vertical edge.
    pub top: bool,
    /// Bottom (bra side) vertical edge.
    pub bottom: bool,
    /// Horizontal edge on the high-column side.
    pub high: bool,
    /// Horizontal edge on the low-column side.
    pub low: bool,
    /// Column index.
    pub column: i64,
    /// Charge of the boundary states.
    pub charge: i64,
    /// Which model.
    pub model: Sign,
}

/// The six vertex types; for the `-` model the two "crossing" types are
/// the mirrored `d` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexKind {
    /// Everything empty.
    A1,
    /// Everything occupied.
    A2,
    /// Vertical line passes straight through.
    B1,
    /// Horizontal line passes straight through.
    B2,
    /// Turn where the horizontal line ends in the bottom edge (`+` model)
    /// or starts from the bottom edge (`-` model).
    C1,
    /// Turn where the top edge continues as the low-side horizontal (`+`
    /// model) or the high-side horizontal ends in the top edge (`-` model).
    C2,
}

impl VertexKind {
    /// Conventional label; the turning vertices of the `-` model are `d1`
    /// and `d2`.
    pub fn label(self, model: Sign) -> &'static str {
        match (self, model) {
            (VertexKind::A1, _) => "a1",
            (VertexKind::A2, _) => "a2",
            (VertexKind::B1, _) => "b1",
            (VertexKind::B2, _) => "b2",
            (VertexKind::C1, Sign::Plus) => "c1",
            (VertexKind::C2, Sign::Plus) => "c2",
            (VertexKind::C1, Sign::Minus) => "d2",
            (VertexKind::C2, Sign::Minus) => "d1",
        }
    }
}

/// The low-side edge forced by the ice rule, or `None` if no value is
/// allowed.
pub fn forced_low(model: Sign, top: bool, bottom: bool, high: bool) -> Option<bool> {
    let (t, b, h) = (top as i32, bottom as i32, high as i32);
    let low = match model {
        Sign::Plus => t + h - b,
        Sign::Minus => b + h - t,
    };
    match low {
        0 => Some(false),
        1 => Some(true),
        _ => None,
    }
}

impl VertexConfig {
    /// Whether the configuration obeys the ice rule of its model.
    pub fn is_valid(&self) -> bool {
        forced_low(self.model, self.top, self.bottom, self.high) == Some(self.low)
    }

    /// The vertex type, if the configuration is valid.
    pub fn kind(&self) -> Option<VertexKind> {
        if !self.is_valid() {
            return None;
        }
        let (t, b, h, l) = (self.top, self.bottom, self.high, self.low);
        Some(match (t, b, h, l) {
            (false, false, false, false) => VertexKind::A1,
            (true, true, true, true) => VertexKind::A2,
            (true, true, false, false) => VertexKind::B1,
            (false, false, true, true) => VertexKind::B2,
            // + model: the horizontal drops into the bottom edge.
            (false, true, true, false) => VertexKind::C1,
            // + model: the top edge turns into the low-side horizontal.
            (true, false, false, true) => VertexKind::C2,
            // - model: the bottom edge turns into the low-side horizontal.
            (false, true, false, true) => VertexKind::C1,
            // - model: the high-side horizontal rises into the top edge.
            (true, false, true, false) => VertexKind::C2,
            _ => unreachable!("valid configurations are covered"),
        })
    }
}

/// The sequence that plays the role of `β` in the weights of a model: `β`
/// for `+`, `α` for `-`.
fn model_seq(model: Sign) -> (Which, Which) {
    match model {
        Sign::Plus => (Which::Beta, Which::Alpha),
        Sign::Minus => (Which::Alpha, Which::Beta),
    }
}

/// The unnormalized table weight of a vertex.
fn table_weight(env: &ParamEnv, cfg: &VertexConfig, x: &Coef, y: &Coef) -> Coef {
    let Some(kind) = cfg.kind() else { return Coef::zero() };
    let j = cfg.column;
    // `main` is β for the + model and α for the - model, `other` the rest.
    let (main, other) = model_seq(cfg.model);
    let s = env.get(main, j);
    let t = env.get(other, j);
    match kind {
        VertexKind::A1 => Coef::one().sub(&s.mul(x)),
        VertexKind::A2 => y.add(&t),
        VertexKind::B1 => Coef::one().add(&s.mul(y)),
        VertexKind::B2 => x.sub(&t),
        VertexKind::C1 => x.add(y),
        VertexKind::C2 => env.one_minus_ab(j),
    }
}

/// The column normalization: `1/(1 − s_j x)` for `j > 0`, `1/(1 + s_j y)`
/// for `j ≤ 0`, with `s = β` (`+` model) or `α` (`-` model). The threshold
/// is the column 0 for every charge, so that the empty row carries the
/// vacuum factor `e^{Λ_m(x/y)}` and the whole row operator is charge
/// independent.
fn normalizer(env: &ParamEnv, model: Sign, j: i64, x: &Coef, y: &Coef) -> Coef {
    let s = env.get(model_seq(model).0, j);
    if j > 0 {
        Coef::one().sub(&s.mul(x))
    } else {
        Coef::one().add(&s.mul(y))
    }
}

/// Normalized Boltzmann weight; zero for configurations violating the ice
/// rule.
pub fn boltzmann_weight(env: &ParamEnv, cfg: &VertexConfig, x: &Coef, y: &Coef) -> Coef {
    let w = table_weight(env, cfg, x, y);
    if w.is_zero() {
        return w;
    }
    w.div(&normalizer(env, cfg.model, cfg.column, x, y)).expect("normalization factor vanishes")
}

/// The column window outside which both boundaries are in the vacuum
/// pattern and every normalized weight equals one.
pub fn column_window(a: &Partition, b: &Partition, m: i64) -> (i64, i64) {
    let len = a.len().max(b.len()) as i64;
    let top = a.first().max(b.first()) as i64;
    ((m - len).min(0) - 1, (m + top).max(0) + 1)
}

/// One column of a row state.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnState {
    /// The vertex.
    pub vertex: VertexConfig,
    /// Its normalized weight.
    pub weight: Coef,
}

/// The unique row configuration between a ket (top) and a bra (bottom),
/// listed from high columns to low.
#[derive(Debug, Clone, PartialEq)]
pub struct RowState {
    /// Columns of the window, high to low.
    pub columns: Vec<ColumnState>,
    /// Product of the weights.
    pub weight: Coef,
}

impl fmt::Display for RowState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let e = |b: bool| if b { '1' } else { '0' };
        writeln!(f, "column  top bottom high low  vertex  weight")?;
        for c in &self.columns {
            let v = &c.vertex;
            let label = v.kind().map(|k| k.label(v.model)).unwrap_or("-");
            writeln!(f, "{:>6}  {:>3} {:>6} {:>4} {:>3}  {:>6}  {}", v.column, e(v.top), e(v.bottom), e(v.high), e(v.low), label, c.weight)?;
        }
        write!(f, "total: {}", self.weight)
    }
}

/// Scans the row with ket `top` and bra `bottom` at charge `m`; `None` if
/// the ice rule cannot be satisfied.
pub fn row_state(env: &ParamEnv, bottom: &Partition, top: &Partition, m: i64, x: &Coef, y: &Coef, model: Sign) -> Option<RowState> {
    let ket = ChargedKet::new(top.clone(), m);
    let bra = ChargedKet::new(bottom.clone(), m);
    let (lo, hi) = column_window(top, bottom, m);
    let mut high = false;
    let mut columns = Vec::new();
    let mut weight = Coef::one();
    for j in (lo..=hi).rev() {
        let (t, b) = (ket.occupied(j), bra.occupied(j));
        let low = forced_low(model, t, b, high)?;
        let vertex = VertexConfig { top: t, bottom: b, high, low, column: j, charge: m, model };
        let w = boltzmann_weight(env, &vertex, x, y);
        weight = weight.mul(&w);
        columns.push(ColumnState { vertex, weight: w });
        high = low;
    }
    if high {
        return None;
    }
    Some(RowState { columns, weight })
}

/// `⟨bra| T(x/y) |ket⟩` at charge `m` by the deterministic scan.
pub fn scan(env: &ParamEnv, bra: &Partition, ket: &Partition, m: i64, x: &Coef, y: &Coef, model: Sign) -> Coef {
    row_state(env, bra, ket, m, x, y, model).map(|s| s.weight).unwrap_or_else(Coef::zero)
}

/// Bra and ket for the inner shape `mu` and outer shape `lambda`: the `+`
/// row maps `|λ⟩` to `⟨μ|`, the `-` row maps `|μ⟩` to `⟨λ|`.
fn orient<'a>(mu: &'a Partition, lambda: &'a Partition, model: Sign) -> (&'a Partition, &'a Partition) {
    match model {
        Sign::Plus => (mu, lambda),
        Sign::Minus => (lambda, mu),
    }
}

/// One-row coefficient for inner shape `mu` and outer shape `lambda`:
/// `⟨μ|T|λ⟩` for the `+` model and `⟨λ|T|μ⟩` for the `-` model.
pub fn rtm_coeff(env: &ParamEnv, mu: &Partition, lambda: &Partition, m: i64, x: &Coef, y: &Coef, model: Sign) -> Coef {
    let (bra, ket) = orient(mu, lambda, model);
    scan(env, bra, ket, m, x, y, model)
}

/// The row configuration behind [`rtm_coeff`].
pub fn rtm_state(env: &ParamEnv, mu: &Partition, lambda: &Partition, m: i64, x: &Coef, y: &Coef, model: Sign) -> Option<RowState> {
    let (bra, ket) = orient(mu, lambda, model);
    row_state(env, bra, ket, m, x, y, model)
}

/// Product of row transfer matrices `T(x_n/y_n) ⋯ T(x_1/y_1)` between the
/// inner shape `mu` and outer shape `lambda` (orientation as in
/// [`rtm_coeff`]), summing over the intermediate shapes.
pub fn rtm_multi(env: &ParamEnv, mu: &Partition, lambda: &Partition, m: i64, rows: &[(Coef, Coef)], model: Sign) -> Coef {
    if !lambda.contains(mu) {
        return Coef::zero();
    }
    let shapes = interval(mu, lambda);
    let start = match model {
        Sign::Plus => lambda,
        Sign::Minus => mu,
    };
    let mut state: BTreeMap<Partition, Coef> = BTreeMap::new();
    state.insert(start.clone(), Coef::one());
    for (x, y) in rows {
        let mut next: BTreeMap<Partition, Coef> = BTreeMap::new();
        for (from, c) in &state {
            for to in &shapes {
                let reachable = match model {
                    Sign::Plus => from.contains(to),
                    Sign::Minus => to.contains(from),
                };
                if !reachable {
                    continue;
                }
                let w = scan(env, to, from, m, x, y, model);
                if w.is_zero() {
                    continue;
                }
                let slot = next.entry(to.clone()).or_insert_with(Coef::zero);
                *slot = slot.add(&c.mul(&w));
            }
        }
        next.retain(|_, v| !v.is_zero());
        state = next;
    }
    let end = match model {
        Sign::Plus => mu,
        Sign::Minus => lambda,
    };
    state.remove(end).unwrap_or_else(Coef::zero)
}

/// `s_{λ/μ}` at charge 0 with `p_k = Σ_r x_r^k − (−y_r)^k`.
pub fn dfs_pairs(env: &ParamEnv, lambda: &Partition, mu: &Partition, pairs: &[(Coef, Coef)]) -> Coef {
    rtm_multi(env, mu, lambda, 0, pairs, Sign::Plus)
}

/// `ŝ_{λ/μ}` at charge 0 with `p_k = Σ_r x_r^k − (−y_r)^k`.
pub fn dual_pairs(env: &ParamEnv, lambda: &Partition, mu: &Partition, pairs: &[(Coef, Coef)]) -> Coef {
    rtm_multi(env, mu, lambda, 0, pairs, Sign::Minus)
}

/// One-particle coefficient in closed form. The bra particle sits at `p`
/// and the ket particle at `q`, over the vacuum of charge `m − 1`; zero
/// unless `q ≥ p ≥ m` (`+` model) or `p ≥ q ≥ m` (`-` model).
pub fn single_particle(env: &ParamEnv, p: i64, q: i64, m: i64, x: &Coef, y: &Coef, model: Sign) -> Coef {
    let (main, other) = model_seq(model);
    // Orient so that `lo ≤ hi` are the two particle positions.
    let (lo, hi) = match model {
        Sign::Plus => (p, q),
        Sign::Minus => (q, p),
    };
    if lo < m || hi < lo {
        return Coef::zero();
    }
    let pre = lambda_m_xy(env, m - 1, x, y, main);
    let s = |j: i64| env.get(main, j);
    let one_minus_sx = |j: i64| Coef::one().sub(&s(j).mul(x));
    if lo == hi {
        let v = Coef::one().add(&s(hi).mul(y)).div(&one_minus_sx(hi)).expect("vanishing factor");
        return pre.mul(&v);
    }
    // The turning weight carries 1 − α β at the + model's ket column and
    // at the - model's ket column; both are the column `q`.
    let mut v = pre.mul(&env.one_minus_ab(q)).mul(&x.add(y));
    for j in (lo + 1)..hi {
        v = v.mul(&x.sub(&env.get(other, j)));
    }
    for j in lo..=hi {
        v = v.div(&one_minus_sx(j)).expect("vanishing factor");
    }
    v
}

/// The row coefficient as a free-fermion (Lindström–Gessel–Viennot)
/// determinant of one-particle coefficients over `k ≥ max(ℓ(λ), ℓ(μ))`
/// particles; orientation as in [`rtm_coeff`].
pub fn wick_det(env: &ParamEnv, mu: &Partition, lambda: &Partition, m: i64, x: &Coef, y: &Coef, model: Sign, k: Option<usize>) -> Coef {
    let k = k.unwrap_or(0).max(mu.len()).max(lambda.len());
    let (bra, ket) = orient(mu, lambda, model);
    let pos = |l: &Partition, i: usize| m + l.part(i) as i64 - i as i64 + 1;
    // Particles below the k-th one form the vacuum of charge c = m − k;
    // each matrix entry is a one-particle coefficient over that vacuum and
    // so carries the vacuum factor once.
    let c = m - k as i64;
    let mat: Vec<Vec<Coef>> = (1..=k)
        .map(|i| (1..=k).map(|j| single_particle(env, pos(bra, i), pos(ket, j), c + 1, x, y, model)).collect())
        .collect();
    let d = det(&mat, &Coef::zero(), &Coef::one());
    let main = model_seq(model).0;
    d.mul(&lambda_m_xy_pow(env, c, x, y, main, 1 - k as i32))
}

/// A connected piece of a skew shape with at most one cell per diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ribbon {
    /// Cells `(row, column)`, zero based, ordered by content.
    pub cells: Vec<(u32, u32)>,
    /// Content interval `[start, end)`.
    pub contents: (i64, i64),
    /// Number of rows minus one.
    pub height: u32,
}

/// Decomposition of a skew shape into ribbons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RibbonDecomp {
    /// The connected components, each a ribbon, ordered by content.
    Ribbons(Vec<Ribbon>),
    /// The shape contains a 2×2 block.
    Block,
}

fn content(cell: (u32, u32)) -> i64 {
    cell.1 as i64 - cell.0 as i64
}

/// Splits `λ/μ` into ribbons.
pub fn ribbon_decompose(lambda: &Partition, mu: &Partition) -> Result<RibbonDecomp, LatticeError> {
    if !lambda.contains(mu) {
        return Err(LatticeError::NotContained { outer: lambda.clone(), inner: mu.clone() });
    }
    let cells: BTreeSet<(u32, u32)> = lambda.skew_cells(mu).into_iter().collect();
    for &(r, c) in &cells {
        if cells.contains(&(r + 1, c)) && cells.contains(&(r, c + 1)) && cells.contains(&(r + 1, c + 1)) {
            return Ok(RibbonDecomp::Block);
        }
    }
    let mut seen: BTreeSet<(u32, u32)> = BTreeSet::new();
    let mut ribbons = Vec::new();
    for &start in &cells {
        if seen.contains(&start) {
            continue;
        }
        let mut comp = vec![start];
        seen.insert(start);
        let mut i = 0;
        while i < comp.len() {
            let (r, c) = comp[i];
            let mut around = vec![(r + 1, c), (r, c + 1)];
            if r > 0 {
                around.push((r - 1, c));
            }
            if c > 0 {
                around.push((r, c - 1));
            }
            for n in around {
                if cells.contains(&n) && seen.insert(n) {
                    comp.push(n);
                }
            }
            i += 1;
        }
        comp.sort_by_key(|&cell| content(cell));
        let rows: BTreeSet<u32> = comp.iter().map(|c| c.0).collect();
        let lo = content(comp[0]);
        let hi = content(*comp.last().expect("nonempty")) + 1;
        ribbons.push(Ribbon { cells: comp, contents: (lo, hi), height: rows.len() as u32 - 1 });
    }
    ribbons.sort_by_key(|r| r.contents.0);
    Ok(RibbonDecomp::Ribbons(ribbons))
}

/// Single-variable value from the ribbon decomposition: `s_{λ/μ}(x/y)`, or
/// `ŝ_{λ/μ}(x/y)` when `dual` is set.
pub fn one_var_dfs(env: &ParamEnv, lambda: &Partition, mu: &Partition, x: &Coef, y: &Coef, dual: bool) -> Result<Coef, LatticeError> {
    let ribbons = match ribbon_decompose(lambda, mu)? {
        RibbonDecomp::Block => return Ok(Coef::zero()),
        RibbonDecomp::Ribbons(r) => r,
    };
    // `s` carries the normalizations, `t` the straight-through weights.
    let (sw, tw) = if dual { (Which::Alpha, Which::Beta) } else { (Which::Beta, Which::Alpha) };
    let s = |j: i64| env.get(sw, j);
    let t = |j: i64| env.get(tw, j);
    let one_minus_sx = |j: i64| Coef::one().sub(&s(j).mul(x));
    let one_plus_sy = |j: i64| Coef::one().add(&s(j).mul(y));
    let mut num = Coef::one();
    let mut den: Vec<Coef> = Vec::new();
    // Boundary prefactor: any length at least max(ℓ(λ), λ_1) gives the same
    // product, the extra factors cancelling in pairs.
    let conj = lambda.conjugate();
    let ell = lambda.len().max(lambda.first() as usize) as i64;
    for k in 1..=ell {
        let lk = lambda.part(k as usize) as i64;
        let ck = conj.part(k as usize) as i64;
        num = num.mul(&Coef::one().sub(&s(k - ck).mul(x))).mul(&one_plus_sy(lk - k + 1));
        den.push(one_plus_sy(1 - k));
        den.push(one_minus_sx(k));
    }
    for r in &ribbons {
        let (i, j) = r.contents;
        let turn = if dual { i } else { j };
        num = num.mul(&env.one_minus_ab(turn)).mul(&x.add(y));
        den.push(one_minus_sx(i));
        den.push(one_plus_sy(j));
        for w in r.cells.windows(2) {
            let (prev, cell) = (w[0], w[1]);
            let c = content(cell);
            if prev.0 == cell.0 {
                // predecessor to the left
                num = num.mul(&x.sub(&t(c)));
                den.push(one_minus_sx(c));
            } else {
                // predecessor below
                num = num.mul(&y.add(&t(c)));
                den.push(one_plus_sy(c));
            }
        }
    }
    for d in den {
        num = num.div(&d).expect("vanishing factor");
    }
    Ok(num)
}

/// Sum over reverse plane partitions of shape `λ/μ` with entries `1..=n`
/// (each level set a disjoint union of ribbons) of the product of
/// single-variable weights, level `i` using `rows[i − 1]`.
pub fn rpp_sum(env: &ParamEnv, lambda: &Partition, mu: &Partition, rows: &[(Coef, Coef)], dual: bool) -> Result<Coef, LatticeError> {
    if !lambda.contains(mu) {
        return Err(LatticeError::NotContained { outer: lambda.clone(), inner: mu.clone() });
    }
    let shapes = interval(mu, lambda);
    let mut state: BTreeMap<Partition, Coef> = BTreeMap::new();
    state.insert(mu.clone(), Coef::one());
    for (x, y) in rows {
        let mut next: BTreeMap<Partition, Coef> = BTreeMap::new();
        for (from, c) in &state {
            for to in shapes.iter().filter(|s| s.contains(from)) {
                let w = one_var_dfs(env, to, from, x, y, dual)?;
                if w.is_zero() {
                    continue;
                }
                let slot = next.entry(to.clone()).or_insert_with(Coef::zero);
                *slot = slot.add(&c.mul(&w));
            }
        }
        next.retain(|_, v| !v.is_zero());
        state = next;
    }
    Ok(state.remove(lambda).unwrap_or_else(Coef::zero))
}

/// Which skew-Pieri expansion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieriKind {
    /// Multiplication by `h_k`.
    H,
    /// Multiplication by `e_k`.
    E,
}

fn pieri_var() -> Var {
    Var::named("z")
}

/// The `n`-th function of the generating-series basis: `(z|σ^{-1}β)^n/(z;α)^n`
/// for `h` and `(z;α)^{-n}/(z|σβ)^{-n}` for `e`.
pub fn pieri_basis(env: &ParamEnv, n: i64, kind: PieriKind, z: &Coef) -> Coef {
    match kind {
        PieriKind::H => bar_power(env, Which::Beta, n, -1, z).mul(&semi_power_of_recip(env, Which::Alpha, n, 0, z)),
        PieriKind::E => semi_power_of(env, Which::Alpha, -n, 0, z).mul(&bar_power_recip(env, Which::Beta, -n, 1, z)),
    }
}

/// The kernel whose contour integral against [`pieri_basis`]`(n)` is
/// `δ_{nk}`: `(1−α_kβ_k)(z;α)^{k−1}/(z|σ^{-1}β)^{k+1}` for `h` and
/// `(1−α_{1−k}β_{1−k})(z|σβ)^{−k−1}/(z;α)^{1−k}` for `e`.
pub fn pieri_functional(env: &ParamEnv, k: i64, kind: PieriKind, z: &Coef) -> Coef {
    match kind {
        PieriKind::H => semi_power_of(env, Which::Alpha, k - 1, 0, z)
            .mul(&bar_power_recip(env, Which::Beta, k + 1, -1, z))
            .mul(&env.one_minus_ab(k)),
        PieriKind::E => bar_power(env, Which::Beta, -k - 1, 1, z)
            .mul(&semi_power_of_recip(env, Which::Alpha, 1 - k, 0, z))
            .mul(&env.one_minus_ab(1 - k)),
    }
}

/// Coefficient of `s_{λ/η}` in the skew-Pieri expansion of `h_k s_{μ/ν}`
/// (kind `H`) or the coefficient `c̄` of the `e_k` expansion (kind `E`),
/// `e_k s_{μ/ν} = (−1)^k (1−α_1β_1)/(1−α_{1−k}β_{1−k}) Σ c̄ s_{λ/η}`.
///
/// The integrand is the product of two dual single-variable functions with
/// the functional dual to the generating-series basis; it is evaluated as
/// the sum of its residues at the `β` poles (and 0).
pub fn skew_pieri_coeff(
    env: &ParamEnv,
    k: u32,
    lambda: &Partition,
    mu: &Partition,
    nu: &Partition,
    eta: &Partition,
    kind: PieriKind,
) -> Result<Coef, LatticeError> {
    if !lambda.contains(mu) || !nu.contains(eta) {
        return Ok(Coef::zero());
    }
    let zv = pieri_var();
    let z = Coef::var(zv);
    let k = k as i64;
    let integrand = match kind {
        PieriKind::H => {
            let b0 = env.beta(0);
            let left = one_var_dfs(env, nu, eta, &b0, &z.neg(), true)?;
            if left.is_zero() {
                return Ok(Coef::zero());
            }
            let right = one_var_dfs(env, lambda, mu, &z, &b0.neg(), true)?;
            if right.is_zero() {
                return Ok(Coef::zero());
            }
            left.mul(&right).mul(&pieri_functional(env, k, PieriKind::H, &z))
        }
        PieriKind::E => {
            let b1 = env.beta(1);
            let left = one_var_dfs(env, nu, eta, &z, &b1.neg(), true)?;
            if left.is_zero() {
                return Ok(Coef::zero());
            }
            let right = one_var_dfs(env, lambda, mu, &b1, &z.neg(), true)?;
            if right.is_zero() {
                return Ok(Coef::zero());
            }
            left.mul(&right).mul(&pieri_functional(env, k, PieriKind::E, &z))
        }
    };
    let r = RatFn::from_coef(&integrand, zv)?;
    let (lo, hi) = env.window_of(Which::Beta).unwrap_or((0, 0));
    let poles = beta_pole_candidates(env, lo.min(-k - 1), hi.max(k + 1));
    Ok(sum_residues(&r, &poles)?)
}

/// The finite upper-triangular matrix `(A^k_{pq})_{a ≤ p ≤ q ≤ b}` of a
/// positive current on one particle.
pub fn current_window_matrix(env: &ParamEnv, k: i64, a: i64, b: i64) -> Vec<Vec<Coef>> {
    (a..=b)
        .map(|p| (a..=b).map(|q| if q >= p { crate::currents::coeff_a(env, p, q, k) } else { Coef::zero() }).collect())
        .collect()
}

/// Product of two square matrices of coefficients.
pub fn mat_mul(a: &[Vec<Coef>], b: &[Vec<Coef>]) -> Vec<Vec<Coef>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = Coef::zero();
                    for (l, row) in b.iter().enumerate() {
                        if a[i][l].is_zero() || row[j].is_zero() {
                            continue;
                        }
                        acc = acc.add(&a[i][l].mul(&row[j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Whether `J̃_k J̃_ℓ = J̃_{k+ℓ}` on the window `[a, b]`.
pub fn semigroup_holds(env: &ParamEnv, k: i64, l: i64, a: i64, b: i64) -> bool {
    let lhs = mat_mul(&current_window_matrix(env, k, a, b), &current_window_matrix(env, l, a, b));
    lhs == current_window_matrix(env, k + l, a, b)
}


#[cfg(test)]
mod properties {
    use super::*;
    use crate::{partition_in_box, rational_env};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(crate::proptest_config(64))]

        #[test]
        fn scan_matches_wick_and_ribbons(
            env in rational_env(-4, 5),
            l in partition_in_box(3, 3),
            m in partition_in_box(3, 3),
            charge in -1i64..=1,
            plus in any::<bool>(),
        ) {
            prop_assume!(l.contains(&m));
            let (x, y) = (Coef::sym("x", None), Coef::sym("y", None));
            let model = if plus { Sign::Plus } else { Sign::Minus };
            let s = rtm_coeff(&env, &m, &l, charge, &x, &y, model);
            prop_assert_eq!(&wick_det(&env, &m, &l, charge, &x, &y, model, None), &s);
            if charge == 0 {
                prop_assert_eq!(one_var_dfs(&env, &l, &m, &x, &y, !plus).unwrap(), s);
            }
        }

        #[test]
        fn every_row_state_obeys_the_ice_rule(l in partition_in_box(3, 4), m in partition_in_box(3, 4), charge in -2i64..=2) {
            let env = ParamEnv::symbolic(-3, 4);
            let (x, y) = (Coef::sym("x", None), Coef::sym("y", None));
            for model in [Sign::Plus, Sign::Minus] {
                if let Some(state) = row_state(&env, &m, &l, charge, &x, &y, model) {
                    prop_assert!(state.columns.iter().all(|c| c.vertex.is_valid()));
                    let prod = state.columns.iter().fold(Coef::one(), |a, c| a.mul(&c.weight));
                    prop_assert_eq!(prod, state.weight);
                }
            }
        }
    }
}
