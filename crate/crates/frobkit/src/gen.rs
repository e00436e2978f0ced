//! Seed-deterministic instance generators. Every generator takes the RNG by
//! `&mut`, so a fixed `ChaCha8Rng` seed reproduces the exact instance stream.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::frobenius::IntSet;
use crate::problems::{AssocIKPInstance, FrobeniusInstance, Pi2IKPInstance, ThreeDMInstance, Triple};

const RETRY_LIMIT: usize = 10_000;

/// A set of `n` distinct integers in `[1, a_max]` with `n` drawn from
/// `[n_min, n_max]`. No coprimality requirement.
pub fn random_positive_set(
    rng: &mut impl Rng,
    n_min: usize,
    n_max: usize,
    a_max: u64,
) -> Result<IntSet> {
    if n_min == 0 || n_min > n_max || (a_max as usize) < n_max {
        return Err(Error::contract("unsatisfiable set-size parameters"));
    }
    let n = rng.gen_range(n_min..=n_max);
    let mut elems = Vec::with_capacity(n);
    while elems.len() < n {
        let x = rng.gen_range(1..=a_max);
        if !elems.contains(&x) {
            elems.push(x);
        }
    }
    IntSet::from_u64s(&elems)
}

/// A coprime set of distinct integers, each in `[2, a_max]`, suitable as the
/// `A` of a Frobenius instance. Rejection-samples until `gcd = 1`.
pub fn random_coprime_set(
    rng: &mut impl Rng,
    n_min: usize,
    n_max: usize,
    a_max: u64,
) -> Result<IntSet> {
    if n_min < 2 || a_max < 3 {
        return Err(Error::contract(
            "coprime sets need n_min >= 2 and a_max >= 3",
        ));
    }
    for _ in 0..RETRY_LIMIT {
        let n = rng.gen_range(n_min..=n_max);
        let mut elems = Vec::with_capacity(n);
        while elems.len() < n {
            let x = rng.gen_range(2..=a_max);
            if !elems.contains(&x) {
                elems.push(x);
            }
        }
        let set = IntSet::from_u64s(&elems)?;
        if set.is_coprime() {
            return Ok(set);
        }
    }
    Err(Error::resource("no coprime set found within retry limit"))
}

/// A Frobenius-family instance `(A, k)` with `k` near the interesting
/// threshold: uniform in `[1, a_n^2]`, so both answers occur.
pub fn random_frobenius_instance(
    rng: &mut impl Rng,
    n_max: usize,
    a_max: u64,
) -> Result<FrobeniusInstance> {
    let a = random_coprime_set(rng, 2, n_max, a_max)?;
    let an = a.max().unwrap().to_u64().unwrap();
    let k = rng.gen_range(1..=an * an);
    FrobeniusInstance::new(a, BigUint::from(k))
}

/// A universally-quantified 3DM instance: `q` in `[1, q_max]`, triples for
/// each list sampled without replacement from `[1,q]^3`.
pub fn random_3dm(
    rng: &mut impl Rng,
    q_max: u32,
    m1_max: usize,
    m2_max: usize,
) -> Result<ThreeDMInstance> {
    let q = rng.gen_range(1..=q_max);
    let m1_size = rng.gen_range(0..=m1_max);
    let m2_size = rng.gen_range(0..=m2_max);
    random_3dm_exact(rng, q, m1_size, m2_size)
}

/// As [`random_3dm`] but with `q` and both list sizes fixed. Sizes are
/// clamped to the `(q)^3` triples available.
pub fn random_3dm_exact(
    rng: &mut impl Rng,
    q: u32,
    m1_size: usize,
    m2_size: usize,
) -> Result<ThreeDMInstance> {
    let all: Vec<Triple> = (1..=q)
        .flat_map(|i| (1..=q).flat_map(move |j| (1..=q).map(move |k| [i, j, k])))
        .collect();
    let mut pool1 = all.clone();
    pool1.shuffle(rng);
    pool1.truncate(m1_size.min(all.len()));
    let mut pool2 = all;
    pool2.shuffle(rng);
    let len = pool2.len();
    pool2.truncate(m2_size.min(len));
    ThreeDMInstance::new(q, pool1, pool2)
}

/// An interval-representability instance with a small explicit interval.
pub fn random_pi2_ikp(rng: &mut impl Rng, n_max: usize, a_max: u64) -> Result<Pi2IKPInstance> {
    let a = random_positive_set(rng, 1, n_max, a_max)?;
    let lambda: u64 = rng.gen_range(1..=a_max * a_max);
    let upsilon = lambda + rng.gen_range(0..=a_max);
    Pi2IKPInstance::new(a, BigUint::from(lambda), BigUint::from(upsilon))
}

/// An `(A, lambda)` instance cycling through the structurally distinct
/// shapes: sets containing 1, singletons, non-coprime sets, and general
/// coprime sets, so downstream case analysis sees every branch.
pub fn random_assoc_ikp(rng: &mut impl Rng, n_max: usize, a_max: u64) -> Result<AssocIKPInstance> {
    let shape = rng.gen_range(0..6u32);
    let a = match shape {
        0 => {
            // Force 1 into the set.
            let mut elems = random_positive_set(rng, 1, n_max, a_max)?.to_u64s()?;
            if !elems.contains(&1) {
                elems.push(1);
            }
            IntSet::from_u64s(&elems)?
        }
        1 => IntSet::from_u64s(&[rng.gen_range(2..=a_max)])?,
        2 => {
            // Scale a random set by a common factor >= 2.
            let f = rng.gen_range(2..=4u64);
            let base = random_positive_set(rng, 2, n_max.max(2), a_max / f)?;
            let elems: Vec<u64> = base.to_u64s()?.iter().map(|x| x * f).collect();
            IntSet::from_u64s(&elems)?
        }
        _ => random_coprime_set(rng, 2, n_max.max(2), a_max)?,
    };
    let an = a.max().unwrap().to_u64().unwrap();
    let lambda = rng.gen_range(1..=an * an + 2);
    AssocIKPInstance::new(a, BigUint::from(lambda))
}
