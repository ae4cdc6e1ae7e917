//! Parameter sequences, their index re-mappings, and shifted powers.

use crate::ring::{parse_coef, Coef, CoefError, Family, PSeries, RatFn, RatFnError, Trunc, Var};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Which of the two parameter sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Which {
    /// The `alpha` sequence.
    Alpha,
    /// The `beta` sequence.
    Beta,
}

/// Errors from loading parameter configurations.
#[derive(Debug, thiserror::Error)]
pub enum ParamError {
    /// The document is not valid JSON of the expected shape.
    #[error("invalid parameter document: {0}")]
    Format(String),
    /// A value failed to parse.
    #[error(transparent)]
    Coef(#[from] CoefError),
}

#[derive(Debug, Default)]
struct Seqs {
    alpha: BTreeMap<i64, Coef>,
    beta: BTreeMap<i64, Coef>,
}

/// Affine re-indexing plus optional negation and exchange of the sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct View {
    offset: i64,
    dir: i64,
    negate: bool,
    swap: bool,
}

impl View {
    const ID: View = View { offset: 0, dir: 1, negate: false, swap: false };

    fn index(&self, i: i64) -> i64 {
        self.offset + self.dir * i
    }
}

/// Two finitely supported integer-indexed parameter sequences `alpha`,
/// `beta`. Shifts, reflections, negation and exchange are index views over
/// shared storage; values outside the stored support are zero.
#[derive(Debug, Clone)]
pub struct ParamEnv {
    seqs: Arc<Seqs>,
    view: View,
}

impl ParamEnv {
    /// All parameters zero.
    pub fn zero() -> ParamEnv {
        ParamEnv { seqs: Arc::new(Seqs::default()), view: View::ID }
    }

    /// Builds an environment from explicit values; zero values are dropped.
    pub fn from_maps(alpha: BTreeMap<i64, Coef>, beta: BTreeMap<i64, Coef>) -> ParamEnv {
        let clean = |m: BTreeMap<i64, Coef>| m.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        ParamEnv { seqs: Arc::new(Seqs { alpha: clean(alpha), beta: clean(beta) }), view: View::ID }
    }

    /// Independent generators `alpha[i]`, `beta[i]` for `lo <= i <= hi`.
    pub fn symbolic(lo: i64, hi: i64) -> ParamEnv {
        let mk = |name: &str| (lo..=hi).map(|i| (i, Coef::sym(name, Some(i)))).collect();
        ParamEnv::from_maps(mk("alpha"), mk("beta"))
    }

    /// Generators `alpha[i]` on the window and `beta` identically zero.
    pub fn symbolic_alpha(lo: i64, hi: i64) -> ParamEnv {
        ParamEnv::symbolic(lo, hi).with_zero(Which::Beta)
    }

    /// Builds from closures over an index window.
    pub fn from_fn(lo: i64, hi: i64, alpha: impl Fn(i64) -> Coef, beta: impl Fn(i64) -> Coef) -> ParamEnv {
        ParamEnv::from_maps((lo..=hi).map(|i| (i, alpha(i))).collect(), (lo..=hi).map(|i| (i, beta(i))).collect())
    }

    /// Loads `{"alpha": {"-2": "a", "1": "3/7"}, "beta": {...}}`. Values are
    /// scalar expressions; a bare name `a` denotes the generator `a`.
    pub fn from_json(doc: &str) -> Result<ParamEnv, ParamError> {
        let v: serde_json::Value = serde_json::from_str(doc).map_err(|e| ParamError::Format(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| ParamError::Format("expected an object".into()))?;
        let mut maps = [BTreeMap::new(), BTreeMap::new()];
        for (key, slot) in obj {
            let which = match key.as_str() {
                "alpha" => 0,
                "beta" => 1,
                other => return Err(ParamError::Format(format!("unknown key `{other}`"))),
            };
            let entries = slot.as_object().ok_or_else(|| ParamError::Format(format!("`{key}` must be an object")))?;
            for (idx, val) in entries {
                let i: i64 = idx.trim().parse().map_err(|_| ParamError::Format(format!("bad index `{idx}`")))?;
                let c = match val {
                    serde_json::Value::String(s) => parse_coef(s)?,
                    serde_json::Value::Number(n) => parse_coef(&n.to_string())?,
                    _ => return Err(ParamError::Format(format!("bad value for {key}[{idx}]"))),
                };
                maps[which].insert(i, c);
            }
        }
        let [a, b] = maps;
        Ok(ParamEnv::from_maps(a, b))
    }

    /// Serializes the visible parameters in the configuration format.
    pub fn to_json(&self) -> serde_json::Value {
        let mut out = serde_json::Map::new();
        for (key, which) in [("alpha", Which::Alpha), ("beta", Which::Beta)] {
            let mut m = serde_json::Map::new();
            if let Some((lo, hi)) = self.window() {
                for i in lo..=hi {
                    let c = self.get(which, i);
                    if !c.is_zero() {
                        m.insert(i.to_string(), serde_json::Value::String(c.to_string()));
                    }
                }
            }
            out.insert(key.into(), serde_json::Value::Object(m));
        }
        serde_json::Value::Object(out)
    }

    /// The parameter `which_i` as seen through the current view.
    pub fn get(&self, which: Which, i: i64) -> Coef {
        let j = self.view.index(i);
        let from_alpha = (which == Which::Alpha) != self.view.swap;
        let seq = if from_alpha { &self.seqs.alpha } else { &self.seqs.beta };
        match seq.get(&j) {
            Some(c) if self.view.negate => c.neg(),
            Some(c) => c.clone(),
            None => Coef::zero(),
        }
    }

    /// `alpha_i`.
    pub fn alpha(&self, i: i64) -> Coef {
        self.get(Which::Alpha, i)
    }

    /// `beta_i`.
    pub fn beta(&self, i: i64) -> Coef {
        self.get(Which::Beta, i)
    }

    /// `1 - alpha_i beta_i`.
    pub fn one_minus_ab(&self, i: i64) -> Coef {
        Coef::one().sub(&self.alpha(i).mul(&self.beta(i)))
    }

    /// Smallest window (in view indices) containing every nonzero parameter.
    pub fn window(&self) -> Option<(i64, i64)> {
        let keys = self.seqs.alpha.keys().chain(self.seqs.beta.keys());
        let (lo, hi) = keys.fold((i64::MAX, i64::MIN), |(l, h), &k| (l.min(k), h.max(k)));
        if lo > hi {
            return None;
        }
        let (a, b) = (self.view.dir * (lo - self.view.offset), self.view.dir * (hi - self.view.offset));
        Some((a.min(b), a.max(b)))
    }

    /// Window of a single sequence (in view indices).
    pub fn window_of(&self, which: Which) -> Option<(i64, i64)> {
        let from_alpha = (which == Which::Alpha) != self.view.swap;
        let seq = if from_alpha { &self.seqs.alpha } else { &self.seqs.beta };
        let lo = *seq.keys().next()?;
        let hi = *seq.keys().next_back()?;
        let (a, b) = (self.view.dir * (lo - self.view.offset), self.view.dir * (hi - self.view.offset));
        Some((a.min(b), a.max(b)))
    }

    /// Whether a sequence vanishes identically.
    pub fn is_zero(&self, which: Which) -> bool {
        self.window_of(which).is_none()
    }

    /// `sigma^m` on both sequences: `alpha_i -> alpha_{i+m}`.
    pub fn shift(&self, m: i64) -> ParamEnv {
        let mut v = self.view;
        v.offset += v.dir * m;
        ParamEnv { seqs: self.seqs.clone(), view: v }
    }

    /// `iota` on both sequences: `alpha_i -> alpha_{1-i}`.
    pub fn iota(&self) -> ParamEnv {
        let mut v = self.view;
        v.offset += v.dir;
        v.dir = -v.dir;
        ParamEnv { seqs: self.seqs.clone(), view: v }
    }

    /// Negates both sequences.
    pub fn negate(&self) -> ParamEnv {
        let mut v = self.view;
        v.negate = !v.negate;
        ParamEnv { seqs: self.seqs.clone(), view: v }
    }

    /// Exchanges the roles of `alpha` and `beta`.
    pub fn swap(&self) -> ParamEnv {
        let mut v = self.view;
        v.swap = !v.swap;
        ParamEnv { seqs: self.seqs.clone(), view: v }
    }

    /// The environment `(-iota alpha; -iota beta)`.
    pub fn minus_iota(&self) -> ParamEnv {
        self.iota().negate()
    }

    /// A copy with one sequence set to zero.
    pub fn with_zero(&self, which: Which) -> ParamEnv {
        self.materialize_with(|w, i| if w == which { Coef::zero() } else { self.get(w, i) })
    }

    /// Applies a substitution to every parameter value.
    pub fn map_values(&self, f: &dyn Fn(&Coef) -> Coef) -> ParamEnv {
        self.materialize_with(|w, i| f(&self.get(w, i)))
    }

    fn materialize_with(&self, f: impl Fn(Which, i64) -> Coef) -> ParamEnv {
        match self.window() {
            None => ParamEnv::zero(),
            Some((lo, hi)) => ParamEnv::from_fn(lo, hi, |i| f(Which::Alpha, i), |i| f(Which::Beta, i)),
        }
    }

    /// Every generator occurring in the visible parameters.
    pub fn generators(&self) -> Vec<Var> {
        let mut out: Vec<Var> = self.seqs.alpha.values().chain(self.seqs.beta.values()).flat_map(|c| c.vars()).collect();
        out.sort();
        out.dedup();
        out
    }
}

/// `(z; sigma^shift alpha)^k` evaluated at an arbitrary scalar `z`.
pub fn alpha_power(env: &ParamEnv, k: i64, shift: i64, z: &Coef) -> Coef {
    semi_power_of(env, Which::Alpha, k, shift, z)
}

/// `1 / (z; sigma^shift alpha)^k`, built factor by factor.
pub fn alpha_power_recip(env: &ParamEnv, k: i64, shift: i64, z: &Coef) -> Coef {
    semi_power_of_recip(env, Which::Alpha, k, shift, z)
}

/// `(z | sigma^shift beta)^k` evaluated at an arbitrary scalar `z`.
pub fn beta_power(env: &ParamEnv, k: i64, shift: i64, z: &Coef) -> Coef {
    bar_power(env, Which::Beta, k, shift, z)
}

/// `1 / (z | sigma^shift beta)^k`, built factor by factor.
pub fn beta_power_recip(env: &ParamEnv, k: i64, shift: i64, z: &Coef) -> Coef {
    bar_power_recip(env, Which::Beta, k, shift, z)
}

/// `(z | sigma^shift seq)^k` for either sequence.
pub fn bar_power(env: &ParamEnv, which: Which, k: i64, shift: i64, z: &Coef) -> Coef {
    semi_power(k, 1, |j| z.sub(&env.get(which, shift + j)))
}

/// `1 / (z | sigma^shift seq)^k` for either sequence.
pub fn bar_power_recip(env: &ParamEnv, which: Which, k: i64, shift: i64, z: &Coef) -> Coef {
    semi_power(k, -1, |j| z.sub(&env.get(which, shift + j)))
}

/// `(z ; sigma^shift seq)^k` for either sequence.
pub fn semi_power_of(env: &ParamEnv, which: Which, k: i64, shift: i64, z: &Coef) -> Coef {
    semi_power(k, 1, |j| Coef::one().sub(&z.mul(&env.get(which, shift + j))))
}

/// `1 / (z ; sigma^shift seq)^k` for either sequence.
pub fn semi_power_of_recip(env: &ParamEnv, which: Which, k: i64, shift: i64, z: &Coef) -> Coef {
    semi_power(k, -1, |j| Coef::one().sub(&z.mul(&env.get(which, shift + j))))
}

/// Product of `factor(j)^{e}` over `1..=k` for `k > 0`, of `factor(j)^{-e}`
/// over `k < j <= 0` otherwise; divisions happen one linear factor at a
/// time so denominators stay factored.
fn semi_power(k: i64, e: i32, factor: impl Fn(i64) -> Coef) -> Coef {
    let (range, sign) = if k > 0 { (1..=k, e) } else { ((k + 1)..=0, -e) };
    let mut acc = Coef::one();
    let mut dens = Vec::new();
    for j in range {
        if sign > 0 {
            acc = acc.mul(&factor(j));
        } else {
            dens.push(factor(j));
        }
    }
    for d in dens {
        acc = acc.div(&d).expect("shifted power with vanishing factor");
    }
    acc
}

/// `(z; sigma^shift alpha)^k` as a rational function of `z`.
pub fn shifted_alpha(env: &ParamEnv, k: i64, shift: i64, z: Var) -> Result<RatFn, RatFnError> {
    RatFn::from_coef(&alpha_power(env, k, shift, &Coef::var(z)), z)
}

/// `(z | sigma^shift beta)^k` as a rational function of `z`.
pub fn shifted_beta(env: &ParamEnv, k: i64, shift: i64, z: Var) -> Result<RatFn, RatFnError> {
    RatFn::from_coef(&beta_power(env, k, shift, &Coef::var(z)), z)
}

/// `Delta_m(k | seq) = sum_{0<j<=m} seq_j^k - sum_{m<j<=0} seq_j^k`.
pub fn delta_m(env: &ParamEnv, k: u32, m: i64, which: Which) -> Coef {
    let mut acc = Coef::zero();
    if m > 0 {
        for j in 1..=m {
            acc = acc.add(&env.get(which, j).pow(k as i32).expect("nonnegative power"));
        }
    } else {
        for j in (m + 1)..=0 {
            acc = acc.sub(&env.get(which, j).pow(k as i32).expect("nonnegative power"));
        }
    }
    acc
}

/// `e^{e * Lambda_m(x/y | seq)}` in closed product form:
/// `prod_{0<j<=m} (1 + s_j y)/(1 - s_j x)` for `m > 0`, the reciprocal
/// product over `m < j <= 0` otherwise, raised to the integer power `e`.
pub fn lambda_m_xy_pow(env: &ParamEnv, m: i64, x: &Coef, y: &Coef, which: Which, e: i32) -> Coef {
    let (range, sign) = if m > 0 { (1..=m, 1) } else { ((m + 1)..=0, -1) };
    let mut num = Coef::one();
    let mut den: Vec<Coef> = Vec::new();
    for j in range {
        let s = env.get(which, j);
        if s.is_zero() {
            continue;
        }
        let up = Coef::one().add(&s.mul(y));
        let down = Coef::one().sub(&s.mul(x));
        let (n, d) = if sign * e.signum() > 0 { (up, down) } else { (down, up) };
        for _ in 0..e.unsigned_abs() {
            num = num.mul(&n);
            den.push(d.clone());
        }
    }
    for d in den {
        num = num.div(&d).expect("vanishing factor in exponential prefactor");
    }
    num
}

/// `e^{Lambda_m(x/y | seq)}` in closed product form.
pub fn lambda_m_xy(env: &ParamEnv, m: i64, x: &Coef, y: &Coef, which: Which) -> Coef {
    lambda_m_xy_pow(env, m, x, y, which, 1)
}

/// `e^{c * Lambda_m(p | seq)}` as a truncated series in the given family.
pub fn lambda_series(env: &ParamEnv, m: i64, which: Which, c: i64, trunc: Trunc, family: Family) -> PSeries {
    PSeries::exp_linear(trunc, family, &|k| delta_m(env, k, m, which).scale(&crate::ring::Q::int(c)))
}

/// `e^{c * xi(p; z)} = exp(c sum_k p_k z^k / k)` as a truncated series.
pub fn xi_series(z: &Coef, c: i64, trunc: Trunc, family: Family) -> PSeries {
    PSeries::exp_linear(trunc, family, &|k| z.pow(k as i32).expect("nonnegative power").scale(&crate::ring::Q::int(c)))
}

/// Sum of residues of a rational function over the candidate points that
/// are actual poles; candidates are deduplicated.
pub fn sum_residues(r: &RatFn, candidates: &[Coef]) -> Result<Coef, RatFnError> {
    let mut seen: Vec<Coef> = Vec::new();
    let mut acc = Coef::zero();
    for c in candidates {
        if seen.contains(c) {
            continue;
        }
        seen.push(c.clone());
        match r.residue_at(c) {
            Ok(v) => acc = acc.add(&v),
            Err(RatFnError::NotAPole(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(acc)
}

/// The `beta` values on a window together with `0`: the pole candidates
/// enclosed by the standard contour.
pub fn beta_pole_candidates(env: &ParamEnv, lo: i64, hi: i64) -> Vec<Coef> {
    let mut v: Vec<Coef> = vec![Coef::zero()];
    v.extend((lo..=hi).map(|j| env.beta(j)));
    v
}
