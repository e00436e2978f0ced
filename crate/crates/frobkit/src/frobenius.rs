//! Exact Frobenius-number solvers, representability queries, and the
//! classical closed-form bounds.
//!
//! Three independent solver routes are kept deliberately separate so they
//! can certify each other: a residue-graph shortest-path solver, a boolean
//! dynamic program over `[0, a_n^2]`, and a binary search driven by a
//! decision oracle.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::report::{TrialRecord, VerifyReport};

/// A finite set of positive integers, held strictly increasing.
///
/// Coprimality and `min >= 2` are *not* invariants here; the knapsack-family
/// problems admit sets containing 1 and non-coprime sets, so those checks
/// happen per problem.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(transparent)]
pub struct IntSet {
    #[serde(with = "crate::serde_util::biguint_vec_decimal")]
    elems: Vec<BigUint>,
}

impl IntSet {
    /// Builds a set from arbitrary-order elements: sorts, removes
    /// duplicates, rejects zero.
    pub fn new(mut elems: Vec<BigUint>) -> Result<IntSet> {
        if elems.iter().any(|e| e.is_zero()) {
            return Err(Error::domain("set elements must be positive"));
        }
        elems.sort();
        elems.dedup();
        Ok(IntSet { elems })
    }

    pub fn from_u64s(values: &[u64]) -> Result<IntSet> {
        IntSet::new(values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn elements(&self) -> &[BigUint] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn min(&self) -> Option<&BigUint> {
        self.elems.first()
    }

    pub fn max(&self) -> Option<&BigUint> {
        self.elems.last()
    }

    pub fn contains_one(&self) -> bool {
        self.elems.first().map_or(false, |e| e.is_one())
    }

    pub fn is_coprime(&self) -> bool {
        gcd_set(self).map_or(false, |g| g.is_one())
    }

    /// Elements as `u64`, or a resource error naming the offender.
    pub fn to_u64s(&self) -> Result<Vec<u64>> {
        self.elems
            .iter()
            .map(|e| {
                e.to_u64()
                    .ok_or_else(|| Error::resource(format!("element {e} exceeds 64 bits")))
            })
            .collect()
    }

    fn to_u128s(&self) -> Result<Vec<u128>> {
        self.elems
            .iter()
            .map(|e| {
                e.to_u128()
                    .ok_or_else(|| Error::resource(format!("element {e} exceeds 128 bits")))
            })
            .collect()
    }
}

/// Greatest common divisor of all elements. Errors on the empty set.
pub fn gcd_set(a: &IntSet) -> Result<BigUint> {
    let mut it = a.elements().iter();
    let first = it
        .next()
        .ok_or_else(|| Error::domain("gcd of the empty set is undefined"))?;
    let mut g = first.clone();
    for e in it {
        g = g.gcd(e);
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

/// For each residue class `j` mod `min(A)`, the least integer in class `j`
/// that is representable over `A` (`None` if the class is unreachable,
/// possible only for non-coprime sets).
#[derive(Debug, Clone)]
pub struct ResidueTable {
    modulus: u64,
    dist: Vec<u128>, // u128::MAX marks an unreachable class
}

const UNREACHABLE: u128 = u128::MAX;

impl ResidueTable {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Least representable integer congruent to `r` mod the modulus.
    pub fn least_in_class(&self, r: u64) -> Option<u128> {
        match self.dist[r as usize] {
            UNREACHABLE => None,
            d => Some(d),
        }
    }

    pub fn classes(&self) -> impl Iterator<Item = (u64, Option<u128>)> + '_ {
        self.dist.iter().enumerate().map(|(r, &d)| {
            (r as u64, if d == UNREACHABLE { None } else { Some(d) })
        })
    }

    /// True iff `k` is representable, answered from the table alone.
    pub fn is_representable(&self, k: &BigUint) -> bool {
        let r = (k % self.modulus).to_u64().expect("residue fits u64");
        match self.least_in_class(r) {
            None => false,
            Some(d) => BigUint::from(d) <= *k,
        }
    }
}

/// Single-source shortest paths in the residue digraph on `[0, a_1 - 1]`
/// with an edge `(i, (i + a) mod a_1)` of weight `a` for every `a` in `A`.
///
/// Edges with `a` divisible by `a_1` are self-loops and are skipped. Ties
/// between equal distances break toward the smaller residue so the
/// settlement order is deterministic.
pub fn residue_table(a: &IntSet, caps: &Caps) -> Result<ResidueTable> {
    let min = a
        .min()
        .ok_or_else(|| Error::domain("residue table requires a nonempty set"))?;
    if *min < BigUint::from(2u32) {
        return Err(Error::domain("residue table requires min(A) >= 2"));
    }
    let modulus = min
        .to_u64()
        .filter(|&m| m <= caps.residue_entries)
        .ok_or_else(|| {
            Error::resource(format!(
                "min(A) = {min} exceeds the residue-entry cap {}",
                caps.residue_entries
            ))
        })?;
    let weights = a.to_u128s()?;
    let m = modulus as usize;
    let mut dist = vec![UNREACHABLE; m];
    dist[0] = 0;
    let steps: Vec<(u64, u128)> = weights
        .iter()
        .map(|&w| ((w % modulus as u128) as u64, w))
        .filter(|&(s, _)| s != 0)
        .collect();
    let mut heap: BinaryHeap<Reverse<(u128, u64)>> = BinaryHeap::new();
    heap.push(Reverse((0, 0)));
    while let Some(Reverse((d, v))) = heap.pop() {
        if d > dist[v as usize] {
            continue;
        }
        for &(step, weight) in &steps {
            let u = (v + step) % modulus;
            let nd = d.checked_add(weight).ok_or_else(|| {
                Error::resource("residue-table distance overflowed 128 bits")
            })?;
            if nd < dist[u as usize] {
                dist[u as usize] = nd;
                heap.push(Reverse((nd, u)));
            }
        }
    }
    Ok(ResidueTable { modulus, dist })
}

fn validate_frobenius_input(a: &IntSet) -> Result<()> {
    if a.len() < 2 {
        return Err(Error::domain("Frobenius number requires |A| >= 2"));
    }
    if *a.min().unwrap() < BigUint::from(2u32) {
        return Err(Error::domain("Frobenius number requires min(A) >= 2"));
    }
    if !a.is_coprime() {
        return Err(Error::domain("Frobenius number requires gcd(A) = 1"));
    }
    Ok(())
}

/// Frobenius number via the residue-graph shortest-path solver: the
/// farthest residue-class distance from 0 equals `g(A) + a_1`.
pub fn frobenius_nijenhuis(a: &IntSet, caps: &Caps) -> Result<BigUint> {
    validate_frobenius_input(a)?;
    let table = residue_table(a, caps)?;
    let farthest = table
        .dist
        .iter()
        .copied()
        .max()
        .expect("modulus >= 2, table nonempty");
    debug_assert_ne!(farthest, UNREACHABLE, "coprime set reaches every class");
    Ok(BigUint::from(farthest) - BigUint::from(table.modulus))
}

/// Frobenius number of a coprime pair: `a1 * a2 - a1 - a2`.
pub fn frobenius_closed_form_2(a1: &BigUint, a2: &BigUint) -> Result<BigUint> {
    if *a1 < BigUint::from(2u32) || a1 >= a2 {
        return Err(Error::domain("closed form requires 2 <= a1 < a2"));
    }
    if !a1.gcd(a2).is_one() {
        return Err(Error::domain("closed form requires gcd(a1, a2) = 1"));
    }
    Ok(a1 * a2 - a1 - a2)
}

/// Independent brute-force solver: a boolean reachability table over
/// `[0, a_n^2]` (the simple quadratic upper bound), scanned downward for the
/// greatest non-representable integer.
pub fn frobenius_bruteforce(a: &IntSet, caps: &Caps) -> Result<BigUint> {
    validate_frobenius_input(a)?;
    let elems = a.to_u64s()?;
    let an = *elems.last().unwrap();
    let bound = an
        .checked_mul(an)
        .filter(|&u| u < caps.dp_bits)
        .ok_or_else(|| {
            Error::resource(format!(
                "table of {an}^2 + 1 entries exceeds the DP cap {}",
                caps.dp_bits
            ))
        })?;
    let reach = reachability_table(&elems, bound);
    for i in (0..=bound as usize).rev() {
        if !reach[i] {
            return Ok(BigUint::from(i));
        }
    }
    // Unreachable for coprime min >= 2 sets (1 is never representable).
    Err(Error::domain("no non-representable integer found"))
}

fn reachability_table(elems: &[u64], upto: u64) -> Vec<bool> {
    let mut reach = vec![false; upto as usize + 1];
    reach[0] = true;
    for &c in elems {
        if c == 0 || c > upto {
            continue;
        }
        let c = c as usize;
        for i in c..reach.len() {
            if reach[i - c] {
                reach[i] = true;
            }
        }
    }
    reach
}

/// Is `k` a nonnegative integer combination of `A`?
///
/// Empty sets represent only 0; sets containing 1 represent everything.
/// Otherwise the residue table answers the query; a direct dynamic program
/// ([`is_representable_dp`]) is the independent fallback when the table is
/// infeasible.
pub fn is_representable(a: &IntSet, k: &BigUint, caps: &Caps) -> Result<bool> {
    if a.is_empty() {
        return Ok(k.is_zero());
    }
    if a.contains_one() || k.is_zero() {
        return Ok(true);
    }
    match residue_table(a, caps) {
        Ok(table) => Ok(table.is_representable(k)),
        Err(Error::Resource(_)) => is_representable_dp(a, k, caps),
        Err(e) => Err(e),
    }
}

/// Representability by direct dynamic programming up to `k`. Independent of
/// the residue table; used as the oracle side of two-path checks.
pub fn is_representable_dp(a: &IntSet, k: &BigUint, caps: &Caps) -> Result<bool> {
    if a.is_empty() {
        return Ok(k.is_zero());
    }
    let target = k
        .to_u64()
        .filter(|&t| t < caps.dp_bits)
        .ok_or_else(|| {
            Error::resource(format!("DP table of {k} + 1 entries exceeds the cap"))
        })?;
    let elems = a.to_u64s()?;
    let reach = reachability_table(&elems, target);
    Ok(reach[target as usize])
}

/// Decides `g(A) >= k` without building a residue table: every integer at
/// and above `k` is representable iff the window `[k, k + a_1 - 1]` is, so
/// one reachability table up to `k + a_1 - 1` settles the question.
pub fn decide_frobenius_dp(a: &IntSet, k: &BigUint, caps: &Caps) -> Result<bool> {
    validate_frobenius_input(a)?;
    let elems = a.to_u64s()?;
    let a1 = elems[0];
    let k64 = k
        .to_u64()
        .and_then(|k| k.checked_add(a1))
        .filter(|&t| t <= caps.dp_bits)
        .ok_or_else(|| Error::resource(format!("DP window for k = {k} exceeds the cap")))?;
    if k.is_zero() {
        return Ok(true); // g(A) >= 1 > 0 whenever a_1 >= 2
    }
    let upper = k64 - 1; // k + a1 - 1
    let reach = reachability_table(&elems, upper);
    let lo = k.to_u64().unwrap() as usize;
    Ok(!reach[lo..=upper as usize].iter().all(|&r| r))
}

/// A decision oracle answering "is `g(A) >= k`?".
pub type FrobeniusDecider<'a> = dyn Fn(&IntSet, &BigUint) -> Result<bool> + 'a;

/// The default oracle for [`frobenius_binary_search`], backed by the DP
/// window of [`decide_frobenius_dp`].
pub fn representability_decider(caps: Caps) -> impl Fn(&IntSet, &BigUint) -> Result<bool> {
    move |a, k| decide_frobenius_dp(a, k, &caps)
}

/// Frobenius number by binary search over a `g(A) >= k` decision oracle.
///
/// The search keeps the invariant that `g(A) >= lo` is known true and
/// `g(A) >= hi + 1` is known false, starting from `lo = a_1 - 1` (never
/// representable for `a_1 >= 2`) and `hi = a_n^2` (the quadratic upper
/// bound), so it cannot skip the answer regardless of oracle call order.
pub fn frobenius_binary_search(a: &IntSet, decider: &FrobeniusDecider) -> Result<BigUint> {
    validate_frobenius_input(a)?;
    let one = BigUint::one();
    let mut lo = a.min().unwrap() - &one;
    let an = a.max().unwrap();
    let mut hi = an * an;
    while lo < hi {
        let mid = (&lo + &hi + &one) >> 1;
        if decider(a, &mid)? {
            lo = mid;
        } else {
            hi = mid - &one;
        }
    }
    Ok(lo)
}

/// The classical closed-form bounds on `g(A)`.
///
/// `erdos_graham_upper` is the expression `2 a_n floor(a_1 / n) - a_1`. It
/// can be negative (when `n > a_1`) and is not a guaranteed upper bound for
/// every coprime set; see the unit tests for a counterexample. The Wilf,
/// Davison, and Aliev-Gruber fields hold unconditionally.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct BoundsReport {
    #[serde(with = "crate::serde_util::biguint_decimal")]
    pub wilf_upper: BigUint,
    #[serde(with = "crate::serde_util::bigint_decimal")]
    pub erdos_graham_upper: BigInt,
    /// `sqrt(3 a1 a2 a3) - a1 - a2 - a3`; present only when `n = 3`.
    pub davison_lower: Option<f64>,
    /// `((n-1)! * prod(A))^(1/(n-1)) - sum(A)`.
    pub aliev_gruber_lower: f64,
}

pub fn bounds(a: &IntSet) -> Result<BoundsReport> {
    validate_frobenius_input(a)?;
    let n = a.len();
    let a1 = a.min().unwrap();
    let an = a.max().unwrap();
    let wilf_upper = an * an;
    let quot = a1 / BigUint::from(n);
    let erdos_graham_upper =
        BigInt::from(BigUint::from(2u32) * an * quot) - BigInt::from(a1.clone());
    let sum: BigUint = a.elements().iter().sum();
    let sum_f = big_to_f64(&sum);
    let davison_lower = if n == 3 {
        let prod: BigUint = a.elements().iter().product();
        Some((3.0 * big_to_f64(&prod)).sqrt() - sum_f)
    } else {
        None
    };
    let prod: BigUint = a.elements().iter().product();
    let factorial: BigUint = (1..n as u64).map(BigUint::from).product();
    let aliev_gruber_lower =
        big_to_f64(&(factorial * prod)).powf(1.0 / (n as f64 - 1.0)) - sum_f;
    Ok(BoundsReport {
        wilf_upper,
        erdos_graham_upper,
        davison_lower,
        aliev_gruber_lower,
    })
}

fn big_to_f64(v: &BigUint) -> f64 {
    v.to_f64().unwrap_or(f64::INFINITY)
}

/// Cross-checks the three solvers on seeded random coprime sets.
pub fn verify_solver_agreement(
    trials: usize,
    n_max: usize,
    a_max: u64,
    seed: u64,
    caps: &Caps,
) -> Result<VerifyReport> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let started = std::time::Instant::now();
    let mut report = VerifyReport::new("solvers", seed);
    let decider = representability_decider(caps.clone());
    for index in 0..trials {
        let set = crate::gen::random_coprime_set(&mut rng, 2, n_max, a_max)?;
        let t0 = std::time::Instant::now();
        let g_nij = frobenius_nijenhuis(&set, caps)?;
        let g_bf = frobenius_bruteforce(&set, caps)?;
        let g_bin = frobenius_binary_search(&set, &decider)?;
        let agree = g_nij == g_bf && g_bf == g_bin;
        report.push(TrialRecord {
            index,
            summary: format!("A={:?}", set.to_u64s()?),
            outcomes: vec![
                ("nijenhuis".into(), g_nij.to_string()),
                ("bruteforce".into(), g_bf.to_string()),
                ("binsearch".into(), g_bin.to_string()),
            ],
            agree,
            micros: t0.elapsed().as_micros(),
            instance_json: serde_json::to_string(&set).unwrap_or_default(),
        });
    }
    report.total_micros = started.elapsed().as_micros();
    Ok(report)
}
