//! Tau functions built from double factorial Schur functions and checks of
//! the bilinear (Hirota) equations they satisfy.
//!
//! Tau functions are series in the standard times `t_k = p_k / k`, stored
//! in the `P` family; the conversion to and from power sums is explicit.

use crate::fock::{partitions_of, Partition};
use crate::ring::{Coef, Family, PMono, PSeries, PVar, Trunc, Q};
use crate::schur::{dual_series, skew_series};
use crate::shifted::ParamEnv;
use serde::Serialize;
use std::time::Instant;

/// A tau function as a truncated series in the times `t_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct TauSeries {
    /// The series in `t` (family `P` read as times).
    pub series: PSeries,
    /// The partition it was built from.
    pub lambda: Partition,
    /// The charge.
    pub charge: i64,
    /// Weighted truncation degree.
    pub degree: u32,
}

/// Rewrites a series in power sums `p_k` of `family` as a series in times,
/// `p_k = k t_k`.
pub fn p_to_t(f: &PSeries, family: Family) -> PSeries {
    f.map_monos(f.trunc(), &|m| {
        let factor: u64 = m.vars().iter().filter(|v| v.family() == family).map(|v| v.index() as u64).product();
        (Coef::int(factor as i64), m.clone())
    })
}

/// Inverse of [`p_to_t`]: `t_k = p_k / k`.
pub fn t_to_p(f: &PSeries, family: Family) -> PSeries {
    f.map_monos(f.trunc(), &|m| {
        let factor: i64 = m.vars().iter().filter(|v| v.family() == family).map(|v| v.index() as i64).product();
        (Coef::rational(Q::frac(1, factor)), m.clone())
    })
}

/// `τ(t) = s_λ(t‖α;β)` truncated at weighted degree `d`. The charge-`n`
/// construction with `Σ^n` collapses to this for every `n`, since the
/// deformed shift commutes with the currents.
pub fn tau_from_partition(env: &ParamEnv, lambda: &Partition, d: u32) -> TauSeries {
    let s = skew_series(env, lambda, &Partition::empty(), Trunc::p(d), Family::P);
    TauSeries { series: p_to_t(&s, Family::P), lambda: lambda.clone(), charge: 0, degree: d }
}

/// Outcome of a bilinear check.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    /// What was checked.
    pub claim: String,
    /// Inputs.
    pub parameters: serde_json::Value,
    /// The weighted degree through which the residual was computed.
    pub max_degree: u32,
    /// Nonzero residual terms as `(monomial, coefficient)`; empty on success.
    pub residual: Vec<(String, String)>,
    /// Wall-clock time.
    pub runtime_ms: u128,
}

impl VerifyReport {
    /// Whether the residual vanished.
    pub fn passed(&self) -> bool {
        self.residual.is_empty()
    }
}

fn residual_terms(f: &PSeries) -> Vec<(String, String)> {
    f.terms().iter().filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.to_string(), c.to_string())).collect()
}

fn t_var(k: u32) -> PVar {
    PVar::new(Family::P, k)
}

fn binomial(n: u32, k: u32) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Iterated derivative `∂^b f` for `b = [(k, order), ...]` in the times.
fn derivative_multi(f: &PSeries, b: &[(u32, u32)]) -> PSeries {
    let mut out = f.clone();
    for &(k, n) in b {
        for _ in 0..n {
            out = out.derivative(t_var(k));
        }
    }
    out
}

/// `D^a f·g` for the Hirota monomial `Π_k D_k^{a_k}` given as `[(k, a_k)]`.
///
/// From the definition `D^a f·g = ∂_y^a (f(t+y) g(t−y))|_{y=0}`, the Leibniz
/// rule gives `Σ_{b ≤ a} Π_k C(a_k, b_k) (−1)^{a_k−b_k} ∂^b f · ∂^{a−b} g`.
/// The result is exact through weighted degree `d − Σ k a_k` when `f`, `g`
/// are exact through `d`, and is truncated there.
pub fn hirota(a: &[(u32, u32)], f: &PSeries, g: &PSeries, d: u32) -> PSeries {
    let weight: u32 = a.iter().map(|(k, n)| k * n).sum();
    let out_trunc = Trunc::p(d.saturating_sub(weight));
    let mut acc = PSeries::zero(out_trunc);
    // Enumerate b ≤ a componentwise.
    let mut b: Vec<u32> = vec![0; a.len()];
    loop {
        let mut c = 1i64;
        let mut left = Vec::new();
        let mut right = Vec::new();
        for (i, &(k, n)) in a.iter().enumerate() {
            c *= binomial(n, b[i]);
            if (n - b[i]) % 2 == 1 {
                c = -c;
            }
            left.push((k, b[i]));
            right.push((k, n - b[i]));
        }
        let fl = derivative_multi(f, &left).retruncate(out_trunc);
        let gr = derivative_multi(g, &right).retruncate(out_trunc);
        acc = acc.add(&fl.mul(&gr).scale_q(&Q::int(c)));
        // next b
        let mut i = 0;
        while i < a.len() {
            if b[i] < a[i].1 {
                b[i] += 1;
                break;
            }
            b[i] = 0;
            i += 1;
        }
        if i == a.len() {
            break;
        }
    }
    acc
}

/// `(D_1^4 + 3 D_2^2 − 4 D_1 D_3) τ·τ` through weighted degree `d − 4`.
pub fn kp_residual(tau: &PSeries, d: u32) -> PSeries {
    let a = hirota(&[(1, 4)], tau, tau, d);
    let b = hirota(&[(2, 2)], tau, tau, d).scale_q(&Q::int(3));
    let c = hirota(&[(1, 1), (3, 1)], tau, tau, d).scale_q(&Q::int(-4));
    a.add(&b).add(&c)
}

/// Checks the first KP equation in Hirota form for `τ` truncated at `d ≥ 4`.
pub fn hirota_kp_check(tau: &TauSeries, d: u32) -> VerifyReport {
    let start = Instant::now();
    let d = d.min(tau.degree);
    let r = kp_residual(&tau.series, d);
    VerifyReport {
        claim: "(D1^4 + 3 D2^2 - 4 D1 D3) tau.tau = 0".into(),
        parameters: serde_json::json!({ "lambda": tau.lambda.parts(), "charge": tau.charge, "d": d }),
        max_degree: d.saturating_sub(4),
        residual: residual_terms(&r),
        runtime_ms: start.elapsed().as_millis(),
    }
}

/// `h_k(2x)`, the coefficient of `z^k` in `e^{2 ξ(x; z)} = exp(2 Σ_j x_j z^j)`,
/// in family `X`.
fn h_of_2x(k: u32, trunc: Trunc) -> PSeries {
    let mut out = PSeries::zero(trunc);
    for nu in partitions_of(k) {
        let mut c = Q::one();
        for (&part, &mult) in &nu.multiplicities() {
            let _ = part;
            let fact: i64 = (1..=mult as i64).product();
            c = &c * &Q::frac(1 << mult, fact);
        }
        out.add_term(PMono::of_family(Family::X, nu.parts()), &Coef::rational(c));
    }
    out
}

/// The formal residue in `z` of
/// `e^{ξ(t−t';z)} τ(t − [z^{-1}]) τ(t' + [z^{-1}])` after `t ↦ t + x`,
/// `t' ↦ t − x`, through total weighted degree `d` in `(t, x)`.
///
/// `w = z^{-1}` is a weight-one variable and `[w]_k = w^k / k`. With both
/// tau factors exact through weight `d + 1`, the coefficient of `w^{k+1}`
/// in their product is exact through weight `d − k` in `(t, x)`, which is
/// all the term `h_k(2x) [w^{k+1}]` needs.
pub fn bilinear_residual(tau: &PSeries, d: u32) -> PSeries {
    let n = d + 1;
    let big = Trunc::families(&[(Family::P, n), (Family::X, n), (Family::W, n)]).with_total(n);
    let shift = |sign: i64| {
        move |v: PVar| -> Option<PSeries> {
            if v.family() != Family::P {
                return None;
            }
            let k = v.index();
            let mut s = PSeries::var(big, v);
            s.add_term(PMono::of_family(Family::X, &[k]), &Coef::int(sign));
            s.add_term(PMono::from_vars(&vec![PVar::new(Family::W, 1); k as usize]), &Coef::rational(Q::frac(-sign, k as i64)));
            Some(s)
        }
    };
    let a = tau.retruncate(Trunc::p(n)).subst(big, &shift(1));
    let b = tau.retruncate(Trunc::p(n)).subst(big, &shift(-1));
    let prod = a.mul(&b);
    let out_trunc = Trunc::families(&[(Family::P, d), (Family::X, d)]).with_total(d);
    let mut res = PSeries::zero(out_trunc);
    for k in 0..=d {
        let h = h_of_2x(k, out_trunc);
        // [w^{k+1}] of the product, as a series in (t, x).
        let mut coef = PSeries::zero(out_trunc);
        for (m, c) in prod.terms() {
            let wdeg = m.weight(Family::W);
            if wdeg != k + 1 {
                continue;
            }
            let rest: Vec<PVar> = m.vars().iter().copied().filter(|v| v.family() != Family::W).collect();
            coef.add_term(PMono::from_vars(&rest), c);
        }
        res = res.add(&h.mul(&coef));
    }
    res
}

/// Checks the bilinear identity for `τ = s_λ` through weighted degree `d`.
pub fn bilinear_residue_check(env: &ParamEnv, lambda: &Partition, d: u32) -> VerifyReport {
    let start = Instant::now();
    let tau = tau_from_partition(env, lambda, d + 1);
    let r = bilinear_residual(&tau.series, d);
    VerifyReport {
        claim: "res_z e^{xi(t-t';z)} tau(t-[1/z]) tau(t'+[1/z]) = 0".into(),
        parameters: serde_json::json!({ "lambda": lambda.parts(), "d": d }),
        max_degree: d,
        residual: residual_terms(&r),
        runtime_ms: start.elapsed().as_millis(),
    }
}

/// The 2D Toda tau function of `G = |λ⟩_{(n)} ⟨μ|_{(n)}` at charge `n'`.
#[derive(Debug, Clone, PartialEq)]
pub struct TodaTau {
    /// `⟨∅| e^{H_+(t_+)} |λ⟩ = s_λ(t_+)`.
    pub plus: TauSeries,
    /// `⟨μ| e^{-H_-(t_-)} |∅⟩ = ŝ_μ(−t_-)`, in family `P2`.
    pub minus: TauSeries,
    /// The product (zero when `n ≠ n'`), families `P` and `P2`.
    pub product: PSeries,
}

/// Builds the Toda tau function for `G = |λ⟩_{(n)} ⟨μ|_{(n)}` at charge
/// `n_prime`, truncated at degree `d` in each set of times.
pub fn toda_tau(env: &ParamEnv, lambda: &Partition, mu: &Partition, n: i64, n_prime: i64, d: u32) -> TodaTau {
    let plus = tau_from_partition(env, lambda, d);
    let t2 = Trunc::families(&[(Family::P2, d)]);
    let hat = dual_series(env, mu, &Partition::empty(), t2, Family::P2);
    // e^{-H_-(t)} = e^{H_-(-t)}: flip the sign of every time.
    let negated = hat.map_monos(t2, &|m| {
        let odd = m.vars().len() % 2 == 1;
        (if odd { Coef::int(-1) } else { Coef::one() }, m.clone())
    });
    let minus_series = p_to_t(&negated, Family::P2);
    let minus = TauSeries { series: minus_series, lambda: mu.clone(), charge: n, degree: d };
    let both = Trunc::families(&[(Family::P, d), (Family::P2, d)]);
    let product = if n == n_prime {
        plus.series.retruncate(both).mul(&minus.series.retruncate(both))
    } else {
        PSeries::zero(both)
    };
    TodaTau { plus: TauSeries { charge: n, ..plus }, minus, product }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::partitions_up_to;

    fn p(parts: &[u32]) -> Partition {
        Partition::of(parts)
    }

    #[test]
    fn conversion_round_trips() {
        let env = ParamEnv::symbolic(-1, 2);
        let s = skew_series(&env, &p(&[2, 1]), &Partition::empty(), Trunc::p(5), Family::P);
        assert_eq!(t_to_p(&p_to_t(&s, Family::P), Family::P), s);
        let m = PSeries::monomial(Trunc::p(5), PMono::of_family(Family::P, &[3, 2]), Coef::one());
        assert_eq!(p_to_t(&m, Family::P).coeff(&PMono::of_family(Family::P, &[3, 2])), Coef::int(6));
    }

    #[test]
    fn tau_examples() {
        let env = ParamEnv::symbolic(-2, 3);
        assert_eq!(tau_from_partition(&env, &Partition::empty(), 4).series, PSeries::one(Trunc::p(4)));
        let t1 = tau_from_partition(&ParamEnv::zero(), &p(&[1]), 4).series;
        assert_eq!(t1, PSeries::var(Trunc::p(4), t_var(1)));
    }

    #[test]
    fn hirota_matches_shift_definition() {
        // Oracle: expand f(t+y) g(t−y) literally and read off y-coefficients.
        let env = ParamEnv::symbolic(-1, 1);
        let d = 6;
        let f = tau_from_partition(&env, &p(&[2]), d).series;
        let g = tau_from_partition(&env, &p(&[1]), d).series;
        let big = Trunc::families(&[(Family::P, d), (Family::X, d)]).with_total(d);
        let sh = |s: i64| {
            move |v: PVar| {
                let mut out = PSeries::var(big, v);
                out.add_term(PMono::of_family(Family::X, &[v.index()]), &Coef::int(s));
                Some(out)
            }
        };
        let prod = f.subst(big, &sh(1)).mul(&g.subst(big, &sh(-1)));
        for (op, ys, fact) in [(vec![(1, 2)], vec![1, 1], 2), (vec![(1, 1), (2, 1)], vec![2, 1], 1), (vec![(3, 1)], vec![3], 1)] {
            let want_w: u32 = ys.iter().sum();
            let mut want = PSeries::zero(Trunc::p(d - want_w));
            let ym = PMono::of_family(Family::X, &ys);
            for (m, c) in prod.terms() {
                let xs: Vec<PVar> = m.vars().iter().copied().filter(|v| v.family() == Family::X).collect();
                if PMono::from_vars(&xs) != ym {
                    continue;
                }
                let ts: Vec<PVar> = m.vars().iter().copied().filter(|v| v.family() == Family::P).collect();
                want.add_term(PMono::from_vars(&ts), &c.scale(&Q::int(fact)));
            }
            assert_eq!(hirota(&op, &f, &g, d), want, "{op:?}");
        }
    }

    #[test]
    fn odd_hirota_operators_vanish() {
        let env = ParamEnv::symbolic(-1, 2);
        for d in 4..=6 {
            let tau = tau_from_partition(&env, &p(&[2, 1]), d).series;
            for op in [vec![(1, 1)], vec![(3, 1)], vec![(1, 3)], vec![(1, 1), (2, 2)]] {
                assert!(hirota(&op, &tau, &tau, d).is_zero(), "{op:?}");
            }
        }
    }

    #[test]
    fn kp_classical_and_small() {
        let tau1 = PSeries::one(Trunc::p(8));
        assert!(kp_residual(&tau1, 8).is_zero());
        let t = tau_from_partition(&ParamEnv::zero(), &p(&[2, 1]), 8);
        assert!(hirota_kp_check(&t, 8).passed());
        let env = ParamEnv::symbolic(-1, 1);
        for lam in partitions_up_to(3) {
            let t = tau_from_partition(&env, &lam, 6);
            assert!(hirota_kp_check(&t, 6).passed(), "{lam}");
        }
    }

    #[test]
    fn kp_fails_for_a_non_tau_function() {
        // A sum of two Schur functions is not a tau function.
        let s1 = tau_from_partition(&ParamEnv::zero(), &p(&[2, 2]), 6).series;
        let s2 = tau_from_partition(&ParamEnv::zero(), &Partition::empty(), 6).series;
        assert!(!kp_residual(&s1.add(&s2), 6).is_zero());
    }

    #[test]
    fn bilinear_identity() {
        assert!(bilinear_residue_check(&ParamEnv::zero(), &Partition::empty(), 4).passed());
        assert!(bilinear_residue_check(&ParamEnv::zero(), &p(&[1]), 4).passed());
        assert!(bilinear_residue_check(&ParamEnv::symbolic(-1, 2), &p(&[1]), 4).passed());
        assert!(bilinear_residue_check(&ParamEnv::symbolic(-1, 2), &p(&[2, 1]), 4).passed());
        // The top term h_d(2x) [w^{d+1}] is needed already at weight d.
        let t = Trunc::p(3);
        let t1t2 = PSeries::var(t, PVar::new(Family::P, 1)).add(&PSeries::var(t, PVar::new(Family::P, 2)));
        assert!(bilinear_residual(&t1t2, 2).is_zero());
        let bad = tau_from_partition(&ParamEnv::zero(), &p(&[2, 2]), 5).series.add(&PSeries::one(Trunc::p(5)));
        assert!(!bilinear_residual(&bad, 4).is_zero());
    }

    #[test]
    fn toda_product() {
        let env = ParamEnv::symbolic(-1, 2);
        let e = Partition::empty();
        let t = toda_tau(&env, &e, &e, 0, 0, 3);
        assert_eq!(t.product, PSeries::one(t.product.trunc()));
        let t = toda_tau(&env, &p(&[1]), &p(&[1]), 0, 1, 3);
        assert!(t.product.is_zero());
        let t = toda_tau(&env, &p(&[2]), &p(&[1]), 1, 1, 3);
        let s = skew_series(&env, &p(&[2]), &e, Trunc::p(3), Family::P);
        assert_eq!(t_to_p(&t.plus.series, Family::P), s);
        let hat = dual_series(&env, &p(&[1]), &e, Trunc::families(&[(Family::P2, 3)]), Family::P2);
        let back = t_to_p(&t.minus.series, Family::P2);
        // ŝ_μ(−p): odd monomials flip sign.
        for (m, c) in hat.terms() {
            let sign = if m.vars().len() % 2 == 1 { c.neg() } else { c.clone() };
            assert_eq!(back.coeff(m), sign);
        }
    }
}

#[cfg(test)]
mod properties {
    use super::*;
    use proptest::prelude::*;

    fn series(d: u32) -> impl Strategy<Value = PSeries> {
        prop::collection::vec((prop::collection::vec(1u32..=3, 0..=3), -4i64..=4), 0..6).prop_map(move |terms| {
            let mut s = PSeries::zero(Trunc::p(d));
            for (parts, c) in terms {
                s.add_term(PMono::of_family(Family::P, &parts), &Coef::int(c));
            }
            s
        })
    }

    proptest! {
        #![proptest_config(crate::proptest_config(64))]

        #[test]
        fn time_conversion_round_trips(f in series(6)) {
            prop_assert_eq!(t_to_p(&p_to_t(&f, Family::P), Family::P), f.clone());
            prop_assert_eq!(p_to_t(&t_to_p(&f, Family::P), Family::P), f);
        }

        #[test]
        fn odd_hirota_operators_vanish_on_squares(f in series(6), a in 1u32..=3, b in 0u32..=3) {
            // D_1^a D_2^b with a + b odd is antisymmetric in (f, g).
            prop_assume!((a + b) % 2 == 1);
            let mut ops = vec![(1, a)];
            if b > 0 {
                ops.push((2, b));
            }
            prop_assert!(hirota(&ops, &f, &f, 6).is_zero());
        }
    }
}
