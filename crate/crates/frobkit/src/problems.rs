//! Instance types, validators, and deciders for the Frobenius / integer
//! knapsack / 3-dimensional matching family of decision problems.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::frobenius::{
    frobenius_bruteforce, frobenius_nijenhuis, is_representable, residue_table, IntSet,
};

/// A triple of 1-based element indices into `U1 x U2 x U3`.
pub type Triple = [u32; 3];

/// Orders triples as the paper's total order: by the base-`q+1` value of
/// their index digits, which is plain lexicographic order.
pub fn triple_order(a: &Triple, b: &Triple) -> std::cmp::Ordering {
    a.cmp(b)
}

/// An instance of the universally-quantified 3-dimensional matching
/// problem: for every subset of `m1`, is there a subset of `m2` completing
/// it to a perfect matching?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawThreeDMInstance")]
pub struct ThreeDMInstance {
    q: u32,
    m1: Vec<Triple>,
    m2: Vec<Triple>,
}

#[derive(Deserialize)]
struct RawThreeDMInstance {
    q: u32,
    m1: Vec<Triple>,
    m2: Vec<Triple>,
}

impl TryFrom<RawThreeDMInstance> for ThreeDMInstance {
    type Error = Error;
    fn try_from(raw: RawThreeDMInstance) -> Result<Self> {
        ThreeDMInstance::new(raw.q, raw.m1, raw.m2)
    }
}

impl ThreeDMInstance {
    /// Validates components against `q`, sorts both triple lists into the
    /// canonical order, and rejects duplicates within a list. `m1` and `m2`
    /// may overlap.
    pub fn new(q: u32, mut m1: Vec<Triple>, mut m2: Vec<Triple>) -> Result<Self> {
        for t in m1.iter().chain(m2.iter()) {
            for &c in t {
                if c < 1 || c > q {
                    return Err(Error::contract(format!(
                        "triple component {c} out of range [1, {q}]"
                    )));
                }
            }
        }
        m1.sort_by(triple_order);
        m2.sort_by(triple_order);
        if m1.windows(2).any(|w| w[0] == w[1]) || m2.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::contract("duplicate triple within a triple list"));
        }
        Ok(ThreeDMInstance { q, m1, m2 })
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Triples of `M1`, sorted ascending; the rank of a triple here is its
    /// digit position in the universal-quantification block.
    pub fn m1(&self) -> &[Triple] {
        &self.m1
    }

    pub fn m2(&self) -> &[Triple] {
        &self.m2
    }
}

/// `(A, lambda, upsilon)`: is every integer in `[lambda, upsilon]`
/// representable over `A`?
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawPi2IKPInstance")]
pub struct Pi2IKPInstance {
    pub a: IntSet,
    #[serde(with = "crate::serde_util::biguint_decimal")]
    pub lambda: BigUint,
    #[serde(with = "crate::serde_util::biguint_decimal")]
    pub upsilon: BigUint,
}

#[derive(Deserialize)]
struct RawPi2IKPInstance {
    a: IntSet,
    #[serde(with = "crate::serde_util::biguint_decimal")]
    lambda: BigUint,
    #[serde(with = "crate::serde_util::biguint_decimal")]
    upsilon: BigUint,
}

impl TryFrom<RawPi2IKPInstance> for Pi2IKPInstance {
    type Error = Error;
    fn try_from(raw: RawPi2IKPInstance) -> Result<Self> {
        Pi2IKPInstance::new(raw.a, raw.lambda, raw.upsilon)
    }
}

impl Pi2IKPInstance {
    pub fn new(a: IntSet, lambda: BigUint, upsilon: BigUint) -> Result<Self> {
        if lambda.is_zero() {
            return Err(Error::contract("lambda must be positive"));
        }
        if lambda > upsilon {
            return Err(Error::contract("lambda must not exceed upsilon"));
        }
        Ok(Pi2IKPInstance { a, lambda, upsilon })
    }
}

/// `(A, lambda)` with the implied interval `[lambda, lambda + min(A) - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawAssocIKPInstance")]
pub struct AssocIKPInstance {
    pub a: IntSet,
    #[serde(with = "crate::serde_util::biguint_decimal")]
    pub lambda: BigUint,
}

#[derive(Deserialize)]
struct RawAssocIKPInstance {
    a: IntSet,
    #[serde(with = "crate::serde_util::biguint_decimal")]
    lambda: BigUint,
}

impl TryFrom<RawAssocIKPInstance> for AssocIKPInstance {
    type Error = Error;
    fn try_from(raw: RawAssocIKPInstance) -> Result<Self> {
        AssocIKPInstance::new(raw.a, raw.lambda)
    }
}

impl AssocIKPInstance {
    pub fn new(a: IntSet, lambda: BigUint) -> Result<Self> {
        if a.is_empty() {
            return Err(Error::contract("A must be nonempty"));
        }
        if lambda.is_zero() {
            return Err(Error::contract("lambda must be positive"));
        }
        Ok(AssocIKPInstance { a, lambda })
    }

    /// The upper end of the implied interval: `lambda + min(A) - 1`.
    pub fn upsilon(&self) -> BigUint {
        &self.lambda + self.a.min().expect("nonempty") - BigUint::one()
    }
}

/// `(A, k)` with the validity conditions shared by the Frobenius-family
/// problems: `A` coprime, `min(A) >= 2`, `|A| >= 2`, `k >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawFrobeniusInstance", into = "RawFrobeniusInstance")]
pub struct FrobeniusInstance {
    a: IntSet,
    k: BigUint,
}

#[derive(Serialize, Deserialize)]
struct RawFrobeniusInstance {
    a: IntSet,
    #[serde(with = "crate::serde_util::biguint_decimal")]
    k: BigUint,
}

impl TryFrom<RawFrobeniusInstance> for FrobeniusInstance {
    type Error = Error;
    fn try_from(raw: RawFrobeniusInstance) -> Result<Self> {
        FrobeniusInstance::new(raw.a, raw.k)
    }
}

impl From<FrobeniusInstance> for RawFrobeniusInstance {
    fn from(inst: FrobeniusInstance) -> Self {
        RawFrobeniusInstance {
            a: inst.a,
            k: inst.k,
        }
    }
}

impl FrobeniusInstance {
    pub fn new(a: IntSet, k: BigUint) -> Result<Self> {
        if a.len() < 2 {
            return Err(Error::contract("Frobenius instance requires |A| >= 2"));
        }
        if *a.min().unwrap() < BigUint::from(2u32) {
            return Err(Error::contract("Frobenius instance requires min(A) >= 2"));
        }
        if !a.is_coprime() {
            return Err(Error::contract("Frobenius instance requires gcd(A) = 1"));
        }
        if k.is_zero() {
            return Err(Error::contract("k must be positive"));
        }
        Ok(FrobeniusInstance { a, k })
    }

    pub fn a(&self) -> &IntSet {
        &self.a
    }

    pub fn k(&self) -> &BigUint {
        &self.k
    }
}

/// True iff `triples` (as a set) is a perfect 3-dimensional matching of
/// `[1,q]^3`: exactly `q` triples whose components in each coordinate are a
/// permutation of `[1, q]`.
pub fn is_perfect_matching(q: u32, triples: &[Triple]) -> Result<bool> {
    for t in triples {
        for &c in t {
            if c < 1 || c > q {
                return Err(Error::contract(format!(
                    "triple component {c} out of range [1, {q}]"
                )));
            }
        }
    }
    let mut distinct: Vec<Triple> = triples.to_vec();
    distinct.sort_by(triple_order);
    distinct.dedup();
    if distinct.len() != q as usize {
        return Ok(false);
    }
    for coord in 0..3 {
        let mut seen = vec![false; q as usize];
        for t in &distinct {
            let idx = (t[coord] - 1) as usize;
            if seen[idx] {
                return Ok(false);
            }
            seen[idx] = true;
        }
    }
    Ok(true)
}

/// Decides the universally-quantified 3DM instance by exhausting both
/// quantifiers. `mu1` and `mu2` are combined as a set union, so overlapping
/// `M1`/`M2` triples are handled.
pub fn decide_pi2_3dm(inst: &ThreeDMInstance, caps: &Caps) -> Result<bool> {
    let (n1, n2) = (inst.m1.len(), inst.m2.len());
    if n1 + n2 >= 63 || (1u64 << (n1 + n2)) > caps.enumeration {
        return Err(Error::resource(format!(
            "2^{n1} * 2^{n2} assignments exceed the enumeration cap {}",
            caps.enumeration
        )));
    }
    for mask1 in 0u64..(1 << n1) {
        let mu1: Vec<Triple> = (0..n1)
            .filter(|i| mask1 >> i & 1 == 1)
            .map(|i| inst.m1[i])
            .collect();
        if !coordinate_disjoint(&mu1) {
            // No mu2 can repair a clash inside mu1 itself.
            return Ok(false);
        }
        let mut completed = false;
        for mask2 in 0u64..(1 << n2) {
            let mut union: Vec<Triple> = mu1.clone();
            union.extend((0..n2).filter(|i| mask2 >> i & 1 == 1).map(|i| inst.m2[i]));
            if is_perfect_matching(inst.q, &union)? {
                completed = true;
                break;
            }
        }
        if !completed {
            return Ok(false);
        }
    }
    Ok(true)
}

fn coordinate_disjoint(triples: &[Triple]) -> bool {
    for coord in 0..3 {
        let mut seen: Vec<u32> = triples.iter().map(|t| t[coord]).collect();
        seen.sort_unstable();
        if seen.windows(2).any(|w| w[0] == w[1]) {
            return false;
        }
    }
    true
}

/// Problem: is `k` a nonnegative integer combination of `A`?
pub fn decide_integer_knapsack(a: &IntSet, k: &BigUint, caps: &Caps) -> Result<bool> {
    is_representable(a, k, caps)
}

/// Fast interval-representability decider: one residue table answers every
/// `k` in `[lambda, upsilon]`, iterating residue classes rather than the
/// (possibly huge) interval itself.
pub fn decide_pi2_ikp(inst: &Pi2IKPInstance, caps: &Caps) -> Result<bool> {
    let a = &inst.a;
    if a.is_empty() {
        return Ok(false); // lambda >= 1, and the empty set represents only 0
    }
    if a.contains_one() {
        return Ok(true);
    }
    let table = residue_table(a, caps)?;
    let modulus = BigUint::from(table.modulus());
    let span = &inst.upsilon - &inst.lambda + BigUint::one();
    if span >= modulus {
        // Every residue class is touched; check its first hit in the interval.
        for r in 0..table.modulus() {
            let lambda_res = (&inst.lambda % table.modulus()).to_u64().unwrap();
            let offset = (r + table.modulus() - lambda_res) % table.modulus();
            let k = &inst.lambda + BigUint::from(offset);
            match table.least_in_class(r) {
                None => return Ok(false),
                Some(d) => {
                    if BigUint::from(d) > k {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    } else {
        let mut k = inst.lambda.clone();
        while k <= inst.upsilon {
            if !table.is_representable(&k) {
                return Ok(false);
            }
            k += BigUint::one();
        }
        Ok(true)
    }
}

/// Independent oracle for [`decide_pi2_ikp`]: a single dynamic program up to
/// `upsilon`, then a per-`k` scan of the interval.
pub fn decide_pi2_ikp_dp(inst: &Pi2IKPInstance, caps: &Caps) -> Result<bool> {
    let upsilon = inst
        .upsilon
        .to_u64()
        .filter(|&u| u < caps.dp_bits)
        .ok_or_else(|| {
            Error::resource(format!(
                "DP table of {} + 1 entries exceeds the cap",
                inst.upsilon
            ))
        })?;
    let lambda = inst.lambda.to_u64().expect("lambda <= upsilon");
    let elems: Vec<u64> = inst
        .a
        .to_u64s()?
        .into_iter()
        .filter(|&e| e <= upsilon)
        .collect();
    let mut reach = vec![false; upsilon as usize + 1];
    reach[0] = true;
    for c in elems {
        let c = c as usize;
        for i in c..reach.len() {
            if reach[i - c] {
                reach[i] = true;
            }
        }
    }
    Ok((lambda..=upsilon).all(|k| reach[k as usize]))
}

/// Problem: is every integer in `[lambda, lambda + min(A) - 1]`
/// representable over `A`?
pub fn decide_assoc_ikp(inst: &AssocIKPInstance, caps: &Caps) -> Result<bool> {
    let full = Pi2IKPInstance::new(inst.a.clone(), inst.lambda.clone(), inst.upsilon())?;
    decide_pi2_ikp(&full, caps)
}

/// DP-oracle route for [`decide_assoc_ikp`].
pub fn decide_assoc_ikp_dp(inst: &AssocIKPInstance, caps: &Caps) -> Result<bool> {
    let full = Pi2IKPInstance::new(inst.a.clone(), inst.lambda.clone(), inst.upsilon())?;
    decide_pi2_ikp_dp(&full, caps)
}

/// Problem: `g(A) >= k`?
pub fn decide_frobenius(inst: &FrobeniusInstance, caps: &Caps) -> Result<bool> {
    Ok(frobenius_nijenhuis(inst.a(), caps)? >= *inst.k())
}

/// Oracle route for [`decide_frobenius`], backed by the brute-force solver.
pub fn decide_frobenius_oracle(inst: &FrobeniusInstance, caps: &Caps) -> Result<bool> {
    Ok(frobenius_bruteforce(inst.a(), caps)? >= *inst.k())
}

/// Problem: `g(A) < k`?
pub fn decide_cofrobenius(inst: &FrobeniusInstance, caps: &Caps) -> Result<bool> {
    Ok(!decide_frobenius(inst, caps)?)
}

pub fn decide_cofrobenius_oracle(inst: &FrobeniusInstance, caps: &Caps) -> Result<bool> {
    Ok(!decide_frobenius_oracle(inst, caps)?)
}

/// Problem: `g(A) = k`? Decided as the conjunction `g(A) >= k` and
/// `g(A) < k + 1`, the intersection decomposition.
pub fn decide_exact_frobenius(inst: &FrobeniusInstance, caps: &Caps) -> Result<bool> {
    let up = FrobeniusInstance::new(inst.a().clone(), inst.k() + BigUint::one())?;
    Ok(decide_frobenius(inst, caps)? && decide_cofrobenius(&up, caps)?)
}

pub fn decide_exact_frobenius_oracle(inst: &FrobeniusInstance, caps: &Caps) -> Result<bool> {
    let up = FrobeniusInstance::new(inst.a().clone(), inst.k() + BigUint::one())?;
    Ok(decide_frobenius_oracle(inst, caps)? && decide_cofrobenius_oracle(&up, caps)?)
}

/// Problem: `g(A1) >= k1` and `g(A2) < k2`?
pub fn decide_frob_cofrob_pair(
    i1: &FrobeniusInstance,
    i2: &FrobeniusInstance,
    caps: &Caps,
) -> Result<bool> {
    Ok(decide_frobenius(i1, caps)? && decide_cofrobenius(i2, caps)?)
}
