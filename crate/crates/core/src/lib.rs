//! Deformed free fermions and double factorial Schur functions.

pub mod ring;
pub mod shifted;
pub mod fock;
pub mod currents;
pub mod schur;
pub mod lattice;
pub mod integrable;
pub mod verify;

/// Shared configuration for the property tests: a fixed seed, overridable
/// through `DFSCHUR_SEED`.
#[cfg(test)]
pub(crate) fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    let seed = std::env::var("DFSCHUR_SEED").ok().and_then(|s| s.parse().ok()).unwrap_or(0x5eed);
    proptest::test_runner::Config {
        cases,
        rng_seed: proptest::test_runner::RngSeed::Fixed(seed),
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    }
}

/// Parameters with small rational values on `[lo, hi]`; `|α_i β_i| < 1`
/// keeps every `1 − α_i β_i` invertible.
#[cfg(test)]
pub(crate) fn rational_env(lo: i64, hi: i64) -> impl proptest::strategy::Strategy<Value = shifted::ParamEnv> {
    use proptest::prelude::*;
    let n = (hi - lo + 1) as usize;
    let vals = |den: i64| prop::collection::vec(-2i64..=2, n).prop_map(move |v| v.into_iter().map(|a| ring::Q::frac(a, den)).collect::<Vec<_>>());
    (vals(3), vals(5)).prop_map(move |(a, b)| {
        shifted::ParamEnv::from_fn(lo, hi, |i| ring::Coef::rational(a[(i - lo) as usize].clone()), |i| {
            ring::Coef::rational(b[(i - lo) as usize].clone())
        })
    })
}

/// A partition inside the `rows × cols` box.
#[cfg(test)]
pub(crate) fn partition_in_box(rows: usize, cols: u32) -> impl proptest::strategy::Strategy<Value = fock::Partition> {
    use proptest::prelude::*;
    prop::collection::vec(0..=cols, rows).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.retain(|&x| x > 0);
        fock::Partition::of(&v)
    })
}
