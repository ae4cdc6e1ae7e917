//! Verification suites: each suite evaluates an identity by two or more
//! independent routes over a family of inputs and reports every mismatch.
//! The suites back the `verify` subcommand; their parameters are explicit
//! so larger sweeps can reuse them.

use crate::currents::{apply_psi_combination, deformed_shift, deformed_shift_vacuum, deformed_shift_vacuum_bra, phi_psi};
use crate::currents::{coeff_a, pairs_powersum, Currents, PowersumSpec, Sign};
use crate::fock::{interval, partitions_in_box, partitions_up_to, ChargedKet, FockVector, Partition};
use crate::integrable::{bilinear_residue_check, hirota_kp_check, tau_from_partition};
use crate::lattice::{
    one_var_dfs, rpp_sum, rtm_coeff, rtm_multi, semigroup_holds, skew_pieri_coeff, wick_det, PieriKind,
};
use crate::ring::{expand, Coef, Family, PSeries, Trunc, Var};
use crate::schur::{
    cauchy_sides, dfs, dual_series, duality_factor, giambelli, jacobi_trudi, mn_expand, omega_apply, omega_factor,
    skew_series, CauchyVariant, MnDirection, SumCut, Value,
};
use crate::shifted::{ParamEnv, Which};
use rayon::prelude::*;
use serde::Serialize;
use std::time::Instant;

/// Mismatch messages kept per suite.
const MAX_FAILURES: usize = 20;

/// Outcome of one suite.
#[derive(Debug, Clone, Serialize)]
pub struct CheckReport {
    /// Suite name.
    pub name: String,
    /// Number of inputs examined.
    pub cases: usize,
    /// Descriptions of the first mismatches (empty on success).
    pub failures: Vec<String>,
    /// Total number of mismatches.
    pub failure_count: usize,
    /// Wall-clock time.
    pub runtime_ms: u128,
}

impl CheckReport {
    /// Whether every case agreed.
    pub fn passed(&self) -> bool {
        self.failure_count == 0
    }
}

/// Runs `case` on every item in parallel and gathers the mismatches it
/// reports, in input order.
fn run_cases<T: Sync>(name: &str, items: &[T], case: impl Fn(&T) -> Vec<String> + Sync) -> CheckReport {
    let start = Instant::now();
    let all: Vec<String> = items.par_iter().flat_map_iter(&case).collect();
    CheckReport {
        name: name.to_string(),
        cases: items.len(),
        failure_count: all.len(),
        failures: all.into_iter().take(MAX_FAILURES).collect(),
        runtime_ms: start.elapsed().as_millis(),
    }
}

fn expect(ok: bool, out: &mut Vec<String>, what: impl FnOnce() -> String) {
    if !ok {
        out.push(what());
    }
}

fn xy() -> (Coef, Coef) {
    (Coef::sym("x", None), Coef::sym("y", None))
}

fn row(k: u32) -> Partition {
    if k == 0 {
        Partition::empty()
    } else {
        Partition::of(&[k])
    }
}

/// Ordered pairs `μ ⊆ λ` inside a box.
pub fn nested_pairs(rows: usize, cols: u32) -> Vec<(Partition, Partition)> {
    let shapes = partitions_in_box(rows, cols);
    let mut out = Vec::new();
    for lam in &shapes {
        for mu in shapes.iter().filter(|m| lam.contains(m)) {
            out.push((lam.clone(), mu.clone()));
        }
    }
    out
}

/// The one-row transfer matrix element `⟨μ|T_+|λ⟩` (or `⟨λ|T_-|μ⟩`) of a
/// worked single-row state: `λ = (5)`, `μ = (2)`, `m = 0`, symbolic
/// parameters.
pub fn example_row_product(env: &ParamEnv) -> Coef {
    let (x, y) = xy();
    let omx = |j| Coef::one().sub(&env.beta(j).mul(&x));
    let num = env.one_minus_ab(5).mul(&x.sub(&env.alpha(4))).mul(&x.sub(&env.alpha(3))).mul(&x.add(&y)).mul(&omx(0));
    [omx(5), omx(4), omx(3), omx(2), Coef::one().add(&env.beta(0).mul(&y))]
        .iter()
        .fold(num, |v, d| v.div(d).expect("nonzero"))
}

/// Worked single-row state, the `p_1, p_2` expansions at `β = 0`, and the
/// action of `J_1, J_2, J_3` on `|3,2,1⟩`.
pub fn worked_examples() -> CheckReport {
    let items = ["row_state", "p_expansion", "current_action"];
    run_cases("examples", &items, |item| {
        let mut out = Vec::new();
        match *item {
            "row_state" => {
                let env = ParamEnv::symbolic(-4, 6);
                let (x, y) = xy();
                let got = rtm_coeff(&env, &Partition::of(&[2]), &Partition::of(&[5]), 0, &x, &y, Sign::Plus);
                expect(got == example_row_product(&env), &mut out, || format!("row state (5)/(2): {got}"));
            }
            "p_expansion" => {
                let env = ParamEnv::symbolic(-4, 5).with_zero(Which::Beta);
                let e = Partition::empty();
                let one = mn_expand(&env, 1, &e, MnDirection::Multiply);
                expect(one == vec![(Partition::of(&[1]), Coef::one())], &mut out, || format!("p_1 = {one:?}"));
                let two = mn_expand(&env, 2, &e, MnDirection::Multiply);
                let want = vec![
                    (Partition::of(&[1]), env.alpha(0).add(&env.alpha(1))),
                    (Partition::of(&[1, 1]), Coef::int(-1)),
                    (Partition::of(&[2]), Coef::one()),
                ];
                expect(two == want, &mut out, || format!("p_2 = {two:?}"));
            }
            _ => {
                let env = ParamEnv::symbolic(-4, 5);
                let cur = Currents::new(&env);
                let lam = Partition::of(&[3, 2, 1]);
                let ket = ChargedKet::new(lam.clone(), 0);
                for k in 1..=3i64 {
                    let v = cur.apply(k, &FockVector::basis(ket.clone()));
                    let b = |i: i64| env.beta(i).pow(k as i32).expect("power");
                    let a = |i, j| coeff_a(&env, i, j, k);
                    let want = [
                        (vec![3, 2, 1], b(3).add(&b(1)).sub(&b(0)).sub(&b(-2))),
                        (vec![2, 2, 1], a(2, 3)),
                        (vec![1, 1, 1], a(0, 3).neg()),
                        (vec![3, 2], a(-2, -1)),
                        (vec![3, 1, 1], a(0, 1)),
                        (vec![3], a(-2, 1).neg()),
                        (vec![1], a(-2, 3)),
                    ];
                    for (shape, c) in &want {
                        let got = v.coeff(&ChargedKet::new(Partition::of(shape), 0));
                        expect(&got == c, &mut out, || format!("J_{k}|3,2,1⟩ at {shape:?}: {got}"));
                    }
                    expect(v.len() == want.len(), &mut out, || format!("J_{k}|3,2,1⟩ has {} terms", v.len()));
                }
            }
        }
        out
    })
}

/// Row transfer matrices against Wick determinants and `e^{H_±}` on all
/// `μ ⊆ λ` in a box, at the given charges. The `e^{H_±}` comparison is
/// exact when the relevant sequence vanishes (`β` for `+`, `α` for `-`)
/// and otherwise compares expansions in `(x, y)` through `degree`.
pub fn lattice_equivalence(env: &ParamEnv, rows: usize, cols: u32, charges: &[i64], degree: u32) -> CheckReport {
    let shapes = partitions_in_box(rows, cols);
    let mut items = Vec::new();
    for model in [Sign::Plus, Sign::Minus] {
        for &m in charges {
            for lam in &shapes {
                items.push((model, m, lam.clone()));
            }
        }
    }
    let (x, y) = xy();
    let vars = [Var::named("x"), Var::named("y")];
    let pk = |k: u32| pairs_powersum(&[(x.clone(), y.clone())], k);
    run_cases("lattice", &items, |(model, m, lam)| {
        let (model, m) = (*model, *m);
        let mut out = Vec::new();
        let cur = Currents::new(env);
        let exact = match model {
            Sign::Plus => env.is_zero(Which::Beta),
            Sign::Minus => env.is_zero(Which::Alpha),
        };
        // For `+` the fixed shape is the ket λ and the inner shapes vary;
        // for `-` the fixed shape is the inner ket and the outer ones vary.
        let others: Vec<Partition> = match model {
            Sign::Plus => interval(&Partition::empty(), lam),
            Sign::Minus => shapes.iter().filter(|o| o.contains(lam)).cloned().collect(),
        };
        let start = FockVector::basis(ChargedKet::new(lam.clone(), m));
        let bx = Partition::of(&vec![cols; rows]);
        let keep = |k: &ChargedKet| bx.contains(&k.lambda);
        let h_exact = if exact { cur.exp_h_specialized(model, &pk, &start, Some(rows as u32 * cols), &keep).ok() } else { None };
        let h_series =
            if exact { None } else { Some(cur.exp_h_series(model, Trunc::p(degree), Family::P, &start, &keep)) };
        for o in &others {
            let (inner, outer) = match model {
                Sign::Plus => (o, lam),
                Sign::Minus => (lam, o),
            };
            let scan_v = rtm_coeff(env, inner, outer, m, &x, &y, model);
            let wick_v = wick_det(env, inner, outer, m, &x, &y, model, None);
            expect(scan_v == wick_v, &mut out, || format!("{model:?} m={m} {outer}/{inner}: scan {scan_v} != wick {wick_v}"));
            let target = ChargedKet::new(o.clone(), m);
            if let Some(h) = &h_exact {
                let hv = h.coeff(&target);
                expect(scan_v == hv, &mut out, || format!("{model:?} m={m} {outer}/{inner}: scan {scan_v} != e^H {hv}"));
            } else if let Some(h) = &h_series {
                let s = h.get(&target).cloned().unwrap_or_else(|| PSeries::zero(Trunc::p(degree)));
                let hv = s.specialize(&|v| pk(v.index()));
                match expand(&scan_v, &vars, degree) {
                    Ok(e) => expect(e == hv, &mut out, || format!("{model:?} m={m} {outer}/{inner}: expansions differ")),
                    Err(err) => out.push(format!("{model:?} m={m} {outer}/{inner}: {err}")),
                }
            }
        }
        out
    })
}

/// Definition, Jacobi–Trudi and Giambelli agree on all straight shapes
/// with `|λ| ≤ max_size`, as series truncated at `d`.
pub fn route_agreement(env: &ParamEnv, max_size: u32, d: u32) -> CheckReport {
    let shapes: Vec<Partition> = partitions_up_to(max_size);
    let ps = PowersumSpec::series(d);
    run_cases("routes", &shapes, |lam| {
        let mut out = Vec::new();
        let e = Partition::empty();
        let def = dfs(env, lam, &e, &ps).value;
        match jacobi_trudi(env, lam, &e, lam.len(), &ps) {
            Ok(jt) => expect(jt.value == def, &mut out, || format!("{lam}: Jacobi–Trudi differs")),
            Err(err) => out.push(format!("{lam}: {err}")),
        }
        let g = giambelli(env, lam, &ps).value;
        expect(g == def, &mut out, || format!("{lam}: Giambelli differs"));
        out
    })
}

/// Murnaghan–Nakayama expansions against multiplication by `p_k` (at
/// `β = 0`) and against `k ∂_{p_k}` (general parameters), for
/// `|λ| ≤ max_size` and `k ≤ kmax`, comparing series through degree `d`.
pub fn mn_consistency(env: &ParamEnv, max_size: u32, kmax: u32, d: u32) -> CheckReport {
    let shapes: Vec<Partition> = partitions_up_to(max_size);
    let t = Trunc::p(d);
    let beta_zero = env.with_zero(Which::Beta);
    run_cases("mn", &shapes, |lam| {
        let mut out = Vec::new();
        let e = Partition::empty();
        let s0 = skew_series(&beta_zero, lam, &e, t, Family::P);
        let s = skew_series(env, lam, &e, t, Family::P);
        for k in 1..=kmax.min(d) {
            let low = Trunc::p(d - k);
            let lhs = s0.mul(&PSeries::var(t, crate::ring::PVar::new(Family::P, k)));
            let mut rhs = PSeries::zero(t);
            for (nu, c) in mn_expand(&beta_zero, k, lam, MnDirection::Multiply) {
                rhs = rhs.add(&skew_series(&beta_zero, &nu, &e, t, Family::P).scale(&c));
            }
            expect(lhs.retruncate(low) == rhs.retruncate(low), &mut out, || format!("p_{k} s_{lam} at β = 0"));
            let lhs = s.derivative(crate::ring::PVar::new(Family::P, k)).scale(&Coef::int(k as i64));
            let mut rhs = PSeries::zero(t);
            for (mu, c) in mn_expand(env, k, lam, MnDirection::Differentiate) {
                rhs = rhs.add(&skew_series(env, &mu, &e, t, Family::P).scale(&c));
            }
            expect(lhs.retruncate(low) == rhs.retruncate(low), &mut out, || format!("{k} ∂_{k} s_{lam}"));
        }
        out
    })
}

/// `[J_k, J_ℓ] = k δ_{k+ℓ,0}` on `|λ⟩_0` for `|λ| ≤ max_size` and
/// `1 ≤ |k|, |ℓ| ≤ kmax`.
pub fn heisenberg(env: &ParamEnv, max_size: u32, kmax: i64) -> CheckReport {
    let shapes = partitions_up_to(max_size);
    let modes: Vec<i64> = (1..=kmax).flat_map(|k| [k, -k]).collect();
    run_cases("heisenberg", &shapes, |lam| {
        let mut out = Vec::new();
        let cur = Currents::new(env);
        let v = FockVector::basis(ChargedKet::new(lam.clone(), 0));
        for &k in &modes {
            for &l in &modes {
                let comm = cur.apply_word(&[k, l], &v).sub(&cur.apply_word(&[l, k], &v));
                let want = if k == -l { v.scale(&Coef::int(k)) } else { FockVector::zero() };
                expect(comm == want, &mut out, || format!("[J_{k}, J_{l}] on |{lam}⟩"));
            }
        }
        out
    })
}

/// The coefficient matrices of positive currents compose additively in
/// the mode on every window `[a, b]` with `b − a < max_width` inside the
/// parameter window, for `1 ≤ k, ℓ ≤ kmax`.
pub fn semigroup(env: &ParamEnv, max_width: i64, kmax: i64) -> CheckReport {
    let (lo, hi) = env.window().unwrap_or((0, 0));
    let mut items = Vec::new();
    for a in lo..=hi {
        for b in a..=(a + max_width - 1).min(hi) {
            for k in 1..=kmax {
                for l in 1..=kmax {
                    items.push((a, b, k, l));
                }
            }
        }
    }
    run_cases("semigroup", &items, |&(a, b, k, l)| {
        let mut out = Vec::new();
        expect(semigroup_holds(env, k, l, a, b), &mut out, || format!("window [{a},{b}] k={k} l={l}"));
        out
    })
}

/// `ω s_{λ/μ}` against `s_{λ'/μ'}` with reflected parameters, and `ŝ_{λ/μ}`
/// against `s_{λ/μ}` with swapped parameters, for `|λ| ≤ max_size`,
/// `|μ| ≤ max_inner`, through degree `d`.
pub fn duality(env: &ParamEnv, max_size: u32, max_inner: u32, d: u32) -> CheckReport {
    let mut items = Vec::new();
    for lam in partitions_up_to(max_size) {
        for mu in partitions_up_to(max_inner).into_iter().filter(|m| lam.contains(m)) {
            items.push((lam.clone(), mu));
        }
    }
    let t = Trunc::p(d);
    let flipped = env.minus_iota();
    let swapped = env.swap();
    run_cases("duality", &items, |(lam, mu)| {
        let mut out = Vec::new();
        let lhs = omega_apply(&skew_series(env, lam, mu, t, Family::P));
        let rhs = skew_series(&flipped, &lam.conjugate(), &mu.conjugate(), t, Family::P).scale(&omega_factor(env, lam, mu));
        expect(lhs == rhs, &mut out, || format!("ω s_{lam}/{mu}"));
        let hat = dual_series(env, lam, mu, t, Family::P);
        let rhs = skew_series(&swapped, lam, mu, t, Family::P).scale(&duality_factor(env, lam, mu));
        expect(hat == rhs, &mut out, || format!("ŝ_{lam}/{mu}"));
        out
    })
}

/// Both skew Cauchy identities for all `μ, ν` in a box, through degree
/// `d`, under the given cut of the infinite sum.
pub fn cauchy(env: &ParamEnv, rows: usize, cols: u32, d: u32, cut: SumCut) -> CheckReport {
    let shapes = partitions_in_box(rows, cols);
    let mut items = Vec::new();
    for mu in &shapes {
        for nu in &shapes {
            for v in [CauchyVariant::Plus, CauchyVariant::Dual] {
                items.push((mu.clone(), nu.clone(), v));
            }
        }
    }
    run_cases("cauchy", &items, |(mu, nu, v)| {
        let mut out = Vec::new();
        match cauchy_sides(env, mu, nu, d, *v, cut) {
            Ok((l, r)) => expect(l == r, &mut out, || format!("{v:?} μ={mu} ν={nu}")),
            Err(err) => out.push(format!("{v:?} μ={mu} ν={nu}: {err}")),
        }
        out
    })
}

/// The one-variable ribbon formula against the row transfer matrix (both
/// models) for `μ ⊆ λ` in a box.
pub fn ribbon(env: &ParamEnv, rows: usize, cols: u32) -> CheckReport {
    let items = nested_pairs(rows, cols);
    let (x, y) = xy();
    run_cases("ribbon", &items, |(lam, mu)| {
        let mut out = Vec::new();
        for (dual, model) in [(false, Sign::Plus), (true, Sign::Minus)] {
            let scan_v = rtm_coeff(env, mu, lam, 0, &x, &y, model);
            match one_var_dfs(env, lam, mu, &x, &y, dual) {
                Ok(r) => expect(r == scan_v, &mut out, || format!("{model:?} {lam}/{mu}")),
                Err(err) => out.push(format!("{model:?} {lam}/{mu}: {err}")),
            }
        }
        out
    })
}

/// The reverse plane partition sum against stacked rows, for `μ ⊆ λ` in a
/// box and `n` row pairs `(x_r, y_r)`.
pub fn rpp(env: &ParamEnv, rows: usize, cols: u32, n: i64) -> CheckReport {
    let items = nested_pairs(rows, cols);
    let pairs: Vec<(Coef, Coef)> = (1..=n).map(|i| (Coef::sym("x", Some(i)), Coef::sym("y", Some(i)))).collect();
    run_cases("rpp", &items, |(lam, mu)| {
        let mut out = Vec::new();
        for (dual, model) in [(false, Sign::Plus), (true, Sign::Minus)] {
            let stacked = rtm_multi(env, mu, lam, 0, &pairs, model);
            match rpp_sum(env, lam, mu, &pairs, dual) {
                Ok(r) => expect(r == stacked, &mut out, || format!("{model:?} {lam}/{mu}")),
                Err(err) => out.push(format!("{model:?} {lam}/{mu}: {err}")),
            }
        }
        out
    })
}

/// Both sides of the one-variable skew-Pieri expansion
/// `g_k s_{μ/ν} = Σ c · s_{λ/η}` (`g = h` or `e`), with `λ` running over
/// `|λ| ≤ size_cap`.
pub fn pieri_sides(env: &ParamEnv, k: u32, mu: &Partition, nu: &Partition, kind: PieriKind, size_cap: u32) -> Result<(Coef, Coef), String> {
    let (x, y) = xy();
    let gen = match kind {
        PieriKind::H => row(k),
        PieriKind::E => Partition::of(&vec![1; k as usize]),
    };
    let dfs1 = |l: &Partition, m: &Partition| one_var_dfs(env, l, m, &x, &y, false).map_err(|e| e.to_string());
    let s_mu_nu = if mu.contains(nu) { dfs1(mu, nu)? } else { Coef::zero() };
    let lhs = dfs1(&gen, &Partition::empty())?.mul(&s_mu_nu);
    let mut rhs = Coef::zero();
    for lam in partitions_up_to(size_cap).into_iter().filter(|l| l.contains(mu)) {
        for eta in interval(&Partition::empty(), nu).into_iter().filter(|e| lam.contains(e)) {
            let c = skew_pieri_coeff(env, k, &lam, mu, nu, &eta, kind).map_err(|e| e.to_string())?;
            if !c.is_zero() {
                rhs = rhs.add(&c.mul(&dfs1(&lam, &eta)?));
            }
        }
    }
    if kind == PieriKind::E {
        let sign = if k % 2 == 0 { Coef::one() } else { Coef::int(-1) };
        let ratio = env.one_minus_ab(1).div(&env.one_minus_ab(1 - k as i64)).map_err(|e| e.to_string())?;
        rhs = rhs.mul(&sign).mul(&ratio);
    }
    Ok((lhs, rhs))
}

/// The skew-Pieri expansion for `k ≤ kmax` and `μ, ν ⊆ outer`, both kinds.
/// With `β ≡ 0` the expansion is finite and compared exactly; otherwise
/// (`α ≡ 0` required) both sides are compared as series in `(x, y)`
/// through `degree`.
pub fn pieri(env: &ParamEnv, kmax: u32, outer: &Partition, degree: u32) -> CheckReport {
    let shapes = interval(&Partition::empty(), outer);
    let mut items = Vec::new();
    for kind in [PieriKind::H, PieriKind::E] {
        for k in 0..=kmax {
            for mu in &shapes {
                for nu in &shapes {
                    items.push((kind, k, mu.clone(), nu.clone()));
                }
            }
        }
    }
    let exact = env.is_zero(Which::Beta);
    let vars = [Var::named("x"), Var::named("y")];
    run_cases("pieri", &items, |(kind, k, mu, nu)| {
        let mut out = Vec::new();
        // Beyond these sizes every coefficient vanishes (β ≡ 0) or every
        // term has (x, y)-degree above `degree` (α ≡ 0).
        let cap = if exact { mu.size() + k + 2 } else { degree + nu.size() };
        match pieri_sides(env, *k, mu, nu, *kind, cap) {
            Ok((l, r)) if exact => expect(l == r, &mut out, || format!("{kind:?} k={k} μ={mu} ν={nu}")),
            Ok((l, r)) => match (expand(&l, &vars, degree), expand(&r, &vars, degree)) {
                (Ok(a), Ok(b)) => expect(a == b, &mut out, || format!("{kind:?} k={k} μ={mu} ν={nu}")),
                (Err(e), _) | (_, Err(e)) => out.push(format!("{kind:?} k={k} μ={mu} ν={nu}: {e}")),
            },
            Err(e) => out.push(format!("{kind:?} k={k} μ={mu} ν={nu}: {e}")),
        }
        out
    })
}

/// The first KP equation for `τ = s_λ`, `|λ| ≤ max_size`, at truncation `d`.
pub fn kp(env: &ParamEnv, max_size: u32, d: u32) -> CheckReport {
    let shapes = partitions_up_to(max_size);
    run_cases("kp", &shapes, |lam| {
        let mut out = Vec::new();
        let r = hirota_kp_check(&tau_from_partition(env, lam, d), d);
        expect(r.passed(), &mut out, || format!("λ={lam}: residual {:?}", r.residual.first()));
        out
    })
}

/// The bilinear residue identity for `τ = s_λ` through degree `d`.
pub fn bilinear(env: &ParamEnv, shapes: &[Partition], d: u32) -> CheckReport {
    run_cases("bilinear", shapes, |lam| {
        let mut out = Vec::new();
        let r = bilinear_residue_check(env, lam, d);
        expect(r.passed(), &mut out, || format!("λ={lam}: residual {:?}", r.residual.first()));
        out
    })
}

/// Skew Schur polynomial `s_{λ/μ}(z_1, …, z_n)` by summing over chains of
/// horizontal strips (semistandard tableaux filled letter by letter).
pub fn ssyt_skew(lambda: &Partition, mu: &Partition, vars: &[Coef]) -> Coef {
    if !lambda.contains(mu) {
        return Coef::zero();
    }
    match vars.split_last() {
        None => {
            if lambda == mu {
                Coef::one()
            } else {
                Coef::zero()
            }
        }
        Some((last, rest)) => {
            // The cells holding the largest letter form a horizontal strip λ/ν.
            let mut acc = Coef::zero();
            for nu in interval(mu, lambda) {
                if !is_horizontal_strip(lambda, &nu) {
                    continue;
                }
                let inner = ssyt_skew(&nu, mu, rest);
                if inner.is_zero() {
                    continue;
                }
                let w = last.pow((lambda.size() - nu.size()) as i32).expect("power");
                acc = acc.add(&inner.mul(&w));
            }
            acc
        }
    }
}

fn is_horizontal_strip(lambda: &Partition, nu: &Partition) -> bool {
    (1..=lambda.len()).all(|i| nu.part(i) >= lambda.part(i + 1))
}

/// Classical super-Schur polynomial `s_{λ/μ}(x/y) = Σ_ν s_{ν/μ}(x) s_{λ'/ν'}(y)`.
pub fn classical_super_schur(lambda: &Partition, mu: &Partition, pairs: &[(Coef, Coef)]) -> Coef {
    let xs: Vec<Coef> = pairs.iter().map(|p| p.0.clone()).collect();
    let ys: Vec<Coef> = pairs.iter().map(|p| p.1.clone()).collect();
    let mut acc = Coef::zero();
    for nu in interval(mu, lambda) {
        let a = ssyt_skew(&nu, mu, &xs);
        if a.is_zero() {
            continue;
        }
        acc = acc.add(&a.mul(&ssyt_skew(&lambda.conjugate(), &nu.conjugate(), &ys)));
    }
    acc
}

/// At `α = β = 0`, the definition (specialized) and the stacked transfer
/// matrices against the tableau oracle, for `|λ| ≤ max_size`, `|μ| ≤ 1`.
pub fn classical_limit(max_size: u32, pairs: &[(Coef, Coef)]) -> CheckReport {
    let mut items = Vec::new();
    for lam in partitions_up_to(max_size) {
        for mu in partitions_up_to(1).into_iter().filter(|m| lam.contains(m)) {
            items.push((lam.clone(), mu));
        }
    }
    let env = ParamEnv::zero();
    let spec = PowersumSpec::Pairs(pairs.to_vec());
    run_cases("classical", &items, |(lam, mu)| {
        let mut out = Vec::new();
        let want = classical_super_schur(lam, mu, pairs);
        match dfs(&env, lam, mu, &spec).value {
            Value::Exact(v) => expect(v == want, &mut out, || format!("definition {lam}/{mu}")),
            Value::Series(_) => out.push(format!("{lam}/{mu}: expected an exact value")),
        }
        let lat = rtm_multi(&env, mu, lam, 0, pairs, Sign::Plus);
        expect(lat == want, &mut out, || format!("lattice {lam}/{mu}"));
        out
    })
}

/// The deformed shift on vacua: `φ(ψ_m) Σ|∅⟩_{m−1} = Σ|∅⟩_m`, and the
/// pairings `⟨∅|_{m+1} Σ |∅⟩_ℓ = δ_{mℓ}` computed from the ket and from the
/// bra, for `m, ℓ` in `charges`.
pub fn deformed_shift_suite(env: &ParamEnv, charges: &[i64]) -> CheckReport {
    run_cases("shift", charges, |&m| {
        let mut out = Vec::new();
        let lower = FockVector::basis(ChargedKet::vacuum(m - 1));
        let lhs = apply_psi_combination(&phi_psi(env, m, 1), &deformed_shift(env, &lower, 1));
        expect(lhs == deformed_shift_vacuum(env, m), &mut out, || format!("φ(ψ_{m}) Σ|∅⟩_{}", m - 1));
        let direct = deformed_shift(env, &FockVector::basis(ChargedKet::vacuum(m)), 1);
        expect(direct == deformed_shift_vacuum(env, m), &mut out, || format!("Σ|∅⟩_{m} closed form"));
        for &l in charges {
            let s = deformed_shift(env, &FockVector::basis(ChargedKet::vacuum(l)), 1);
            let want = if m == l { Coef::one() } else { Coef::zero() };
            let by_ket = s.coeff(&ChargedKet::vacuum(m + 1));
            let by_bra = deformed_shift_vacuum_bra(env, m + 1).coeff(&ChargedKet::vacuum(l));
            expect(by_ket == want && by_bra == want, &mut out, || format!("pairing m={m} l={l}"));
        }
        out
    })
}

/// Sizes used by the named suites.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct SuiteOptions {
    /// Largest partition size examined.
    pub max_size: u32,
    /// Series truncation.
    pub degree: u32,
    /// Seed for the sampled-parameter suite.
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { max_size: 3, degree: 4, seed: 1 }
    }
}

/// Names accepted by [`run_suite`], sorted.
pub const SUITES: &[&str] = &[
    "bilinear",
    "cauchy",
    "classical",
    "duality",
    "examples",
    "heisenberg",
    "kp",
    "lattice",
    "mn",
    "pieri",
    "ribbon",
    "routes",
    "rpp",
    "sampled",
    "semigroup",
    "shift",
];

/// Runs one named suite at the given sizes; `None` for an unknown name.
pub fn run_suite(name: &str, o: &SuiteOptions) -> Option<CheckReport> {
    let n = o.max_size;
    let d = o.degree;
    let window = |size: u32| ParamEnv::symbolic(-(size as i64), size as i64 + 1);
    let pairs: Vec<(Coef, Coef)> = (1..=2).map(|i| (Coef::sym("x", Some(i)), Coef::sym("y", Some(i)))).collect();
    let small = n.clamp(1, 3);
    Some(match name {
        "bilinear" => bilinear(&window(2), &partitions_up_to(small.min(2)), d),
        "cauchy" => {
            let env = window(2);
            let mut r = cauchy(&env.with_zero(Which::Alpha), 1, small.min(2), d.min(3), SumCut::default());
            let s = cauchy(&env.with_zero(Which::Beta), 1, small.min(2), d.min(3), SumCut::default());
            r.cases += s.cases;
            r.failure_count += s.failure_count;
            r.failures.extend(s.failures);
            r.runtime_ms += s.runtime_ms;
            r
        }
        "classical" => classical_limit(n, &pairs),
        "duality" => duality(&window(n), n, 1, d),
        "examples" => worked_examples(),
        "heisenberg" => heisenberg(&window(n), n, 2),
        "kp" => kp(&window(2), n, d.max(4)),
        "lattice" => lattice_equivalence(&window(2), 2, small.min(2) as u32, &[-1, 0, 1], d),
        "mn" => mn_consistency(&window(n), n, 2, d),
        "pieri" => pieri(&ParamEnv::symbolic_alpha(-3, 3), 2, &Partition::of(&[2, 1]), d),
        "ribbon" => ribbon(&window(n), small as usize, small),
        "routes" => route_agreement(&window(n), n, d),
        "rpp" => rpp(&window(2), 2, small.min(2), 2),
        "sampled" => sampled(o.seed, n, d),
        "semigroup" => semigroup(&window(2), 5, 3),
        "shift" => deformed_shift_suite(&window(2), &[-2, -1, 0, 1, 2]),
        _ => return None,
    })
}

/// Route agreement and lattice/Wick agreement at randomly drawn rational
/// parameter values (reproducible from `seed`).
pub fn sampled(seed: u64, max_size: u32, d: u32) -> CheckReport {
    use rand::{Rng, SeedableRng};
    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let draw = |rng: &mut rand::rngs::StdRng| {
        let num: i64 = rng.gen_range(-9..=9);
        let den: i64 = rng.gen_range(1..=7);
        Coef::rational(crate::ring::Q::frac(num, den))
    };
    let (lo, hi) = (-(max_size as i64), max_size as i64 + 1);
    let alpha: Vec<Coef> = (lo..=hi).map(|_| draw(&mut rng)).collect();
    let beta: Vec<Coef> = (lo..=hi).map(|_| draw(&mut rng)).collect();
    let env = ParamEnv::from_fn(lo, hi, |i| alpha[(i - lo) as usize].clone(), |i| beta[(i - lo) as usize].clone());
    let mut r = route_agreement(&env, max_size, d);
    let l = lattice_equivalence(&env, 2, 2, &[0], d);
    r.name = "sampled".into();
    r.cases += l.cases;
    r.failure_count += l.failure_count;
    r.failures.extend(l.failures);
    r.runtime_ms += l.runtime_ms;
    r
}
