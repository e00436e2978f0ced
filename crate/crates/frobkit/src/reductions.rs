//! Executable Karp reductions: `psi` maps universally-quantified 3DM
//! instances to interval-representability instances via digit gadgets, and
//! `phi` maps those onward into the coFrobenius problem. Both emit a
//! certificate tying the output to a digest of the input, and both come
//! with seeded verify harnesses that replay source and image through
//! independent deciders.

use std::time::Instant;

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::frobenius::IntSet;
use crate::numrep::Radix;
use crate::problems::{
    decide_assoc_ikp, decide_cofrobenius, decide_pi2_3dm, AssocIKPInstance, FrobeniusInstance,
    ThreeDMInstance, Triple,
};
use crate::report::{TrialRecord, VerifyReport};

/// Which role a gadget representation plays; a triple present in both `M1`
/// and `M2` yields gadgets of both kinds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GadgetKind {
    FromM1,
    FromM2,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GadgetRep {
    pub rep: Radix,
    pub source_triple: Triple,
    pub kind: GadgetKind,
}

/// Sidecar statistics for a reduction certificate. The numeric fields are
/// populated by the gadget construction and left null by the fixed and
/// pass-through cases.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertStats {
    pub base: Option<u64>,
    pub rep_len: Option<usize>,
    pub psi_size: Option<usize>,
    #[serde(with = "crate::serde_util::biguint_decimal_opt")]
    pub lambda: Option<BigUint>,
    pub case: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ReductionCertificate<O: Serialize> {
    /// SHA-256 (hex) of the serialized source instance.
    pub input_digest: String,
    pub output: O,
    pub stats: CertStats,
}

fn digest_of<T: Serialize>(value: &T) -> String {
    let json = serde_json::to_string(value).expect("instances serialize infallibly");
    hex::encode(Sha256::digest(json.as_bytes()))
}

/// All gadget representations `Gamma(t)` for the triples of `inst`, in base
/// `b = q+1` with `3q + |M1| + 1` digits each: per `M1` triple every
/// combination of a universal digit in `[1,q]` at the triple's rank and
/// match digits in `[0,q]` at its coordinate positions, per `M2` triple the
/// same with a zero universal block. The most significant digit is always 1.
pub fn gadget_sets(inst: &ThreeDMInstance) -> Result<Vec<GadgetRep>> {
    let q = inst.q() as u64;
    if q == 0 {
        return Err(Error::domain("gadget construction requires q >= 1"));
    }
    let b = q + 1;
    let m = 3 * inst.q() as usize + inst.m1().len();
    let mut out = Vec::new();
    let mut push = |triple: Triple, rank: Option<usize>, kind: GadgetKind| -> Result<()> {
        let [j1, j2, j3] = triple;
        let (w_pos, x_pos, y_pos) = (
            2 * inst.q() as usize + j1 as usize - 1,
            inst.q() as usize + j2 as usize - 1,
            j3 as usize - 1,
        );
        let d0_range = match rank {
            Some(_) => 1..=q,
            None => 0..=0,
        };
        for d0 in d0_range {
            for d1 in 0..=q {
                for d2 in 0..=q {
                    for d3 in 0..=q {
                        let mut digits = vec![0u64; m + 1];
                        digits[m] = 1;
                        if let Some(rank) = rank {
                            digits[3 * inst.q() as usize + rank] = d0;
                        }
                        digits[w_pos] = d1;
                        digits[x_pos] = d2;
                        digits[y_pos] = d3;
                        digits.reverse();
                        out.push(GadgetRep {
                            rep: Radix::from_digits_msb(b, &digits)?,
                            source_triple: triple,
                            kind,
                        });
                    }
                }
            }
        }
        Ok(())
    };
    for (rank, &t) in inst.m1().iter().enumerate() {
        push(t, Some(rank), GadgetKind::FromM1)?;
    }
    for &t in inst.m2() {
        push(t, None, GadgetKind::FromM2)?;
    }
    Ok(out)
}

/// The reduction `psi`: builds the gadget integer set `Psi(P)` and the
/// threshold `lambda = q * b^(3q+|M1|)`. Inputs the gadget machinery cannot
/// express map to fixed instances with the correct answer: `q = 0` is a
/// vacuous yes, and `q >= 1` with no triples at all is a no.
pub fn reduce_3dm_to_assoc_ikp(
    inst: &ThreeDMInstance,
) -> Result<(AssocIKPInstance, ReductionCertificate<AssocIKPInstance>)> {
    let input_digest = digest_of(inst);
    let fixed = |a: &[u64], lambda: u64, case: &str| -> Result<_> {
        let out = AssocIKPInstance::new(IntSet::from_u64s(a)?, BigUint::from(lambda))?;
        let cert = ReductionCertificate {
            input_digest: input_digest.clone(),
            output: out.clone(),
            stats: CertStats {
                base: None,
                rep_len: None,
                psi_size: None,
                lambda: None,
                case: case.to_string(),
            },
        };
        Ok((out, cert))
    };
    if inst.q() == 0 {
        // Vacuously yes: the empty matching covers the empty universe.
        return fixed(&[3, 4], 6, "fixed-yes");
    }
    if inst.m1().is_empty() && inst.m2().is_empty() {
        // No triples cover the q >= 1 elements; map to an interval
        // containing the odd 3 over A = {2}.
        return fixed(&[2], 3, "fixed-no");
    }
    let gadgets = gadget_sets(inst)?;
    let rep_len = gadgets[0].rep.len();
    let b = inst.q() as u64 + 1;
    let psi = IntSet::new(gadgets.iter().map(|g| g.rep.to_int()).collect())?;
    let lambda = BigUint::from(inst.q()) * BigUint::from(b).pow(rep_len as u32 - 1);
    let psi_size = psi.len();
    let out = AssocIKPInstance::new(psi, lambda.clone())?;
    let cert = ReductionCertificate {
        input_digest,
        output: out.clone(),
        stats: CertStats {
            base: Some(b),
            rep_len: Some(rep_len),
            psi_size: Some(psi_size),
            lambda: Some(lambda),
            case: "gadget".to_string(),
        },
    };
    Ok((out, cert))
}

/// The reduction `phi`: an interval-representability instance whose set is
/// coprime with minimum at least 2 passes through unchanged as a
/// coFrobenius instance; a set containing 1 is always a yes and maps to the
/// fixed yes instance `({3,4}, 6)`; anything else (singleton without 1, or
/// non-coprime) is a no and maps to the fixed no instance `({3,4}, 5)`.
pub fn reduce_assoc_ikp_to_cofrobenius(
    inst: &AssocIKPInstance,
) -> Result<(FrobeniusInstance, ReductionCertificate<FrobeniusInstance>)> {
    if inst.a.is_empty() {
        return Err(Error::domain("phi requires a nonempty set"));
    }
    let input_digest = digest_of(inst);
    let (out, case) = if *inst.a.min().unwrap() == BigUint::one() {
        (
            FrobeniusInstance::new(IntSet::from_u64s(&[3, 4])?, BigUint::from(6u32))?,
            "fixed-yes",
        )
    } else if inst.a.len() >= 2 && inst.a.is_coprime() {
        (
            FrobeniusInstance::new(inst.a.clone(), inst.lambda.clone())?,
            "passthrough",
        )
    } else {
        (
            FrobeniusInstance::new(IntSet::from_u64s(&[3, 4])?, BigUint::from(5u32))?,
            "fixed-no",
        )
    };
    let cert = ReductionCertificate {
        input_digest,
        output: out.clone(),
        stats: CertStats {
            base: None,
            rep_len: None,
            psi_size: None,
            lambda: None,
            case: case.to_string(),
        },
    };
    Ok((out, cert))
}

/// The image-side decider must build a residue table of `min Psi = b^m`
/// entries; beyond this many the trial is refused rather than left to crawl.
const PSI_IMAGE_FEASIBILITY: u64 = 10_000_000;

fn yn(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// Replays `trials` random 3DM instances through [`decide_pi2_3dm`] on the
/// source side and [`decide_assoc_ikp`] on the image of `psi`. A reduction
/// is only as good as this agreement rate, which must be 100%.
pub fn verify_reduction_psi(
    trials: usize,
    q_max: u32,
    m1_max: usize,
    m2_max: usize,
    seed: u64,
    caps: &Caps,
) -> Result<VerifyReport> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport::new("psi", seed);
    let started = Instant::now();
    for index in 0..trials {
        let inst = crate::gen::random_3dm(&mut rng, q_max, m1_max, m2_max)?;
        let trial_start = Instant::now();
        let source = decide_pi2_3dm(&inst, caps)?;
        let (image, cert) = reduce_3dm_to_assoc_ikp(&inst)?;
        if let Some(rep_len) = cert.stats.rep_len {
            let b = cert.stats.base.unwrap();
            if (rep_len as u32 - 1) as f64 * (b as f64).log2() > (PSI_IMAGE_FEASIBILITY as f64).log2()
            {
                return Err(Error::resource(format!(
                    "image residue table {b}^{} exceeds the feasibility bound",
                    rep_len - 1
                )));
            }
        }
        let image_answer = decide_assoc_ikp(&image, caps)?;
        report.push(TrialRecord {
            index,
            summary: format!(
                "q={} |m1|={} |m2|={} case={}",
                inst.q(),
                inst.m1().len(),
                inst.m2().len(),
                cert.stats.case
            ),
            outcomes: vec![
                ("source".to_string(), yn(source)),
                ("image".to_string(), yn(image_answer)),
            ],
            agree: source == image_answer,
            micros: trial_start.elapsed().as_micros(),
            instance_json: serde_json::to_string(&inst).expect("serializable"),
        });
    }
    report.total_micros = started.elapsed().as_micros();
    Ok(report)
}

/// The `phi` analogue of [`verify_reduction_psi`]: random `(A, lambda)`
/// instances across all structural shapes, compared against the
/// coFrobenius answer of the image.
pub fn verify_reduction_phi(
    trials: usize,
    a_max: u64,
    n_max: usize,
    seed: u64,
    caps: &Caps,
) -> Result<VerifyReport> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut report = VerifyReport::new("phi", seed);
    let started = Instant::now();
    for index in 0..trials {
        let inst = crate::gen::random_assoc_ikp(&mut rng, n_max, a_max)?;
        let trial_start = Instant::now();
        let source = decide_assoc_ikp(&inst, caps)?;
        let (image, cert) = reduce_assoc_ikp_to_cofrobenius(&inst)?;
        let image_answer = decide_cofrobenius(&image, caps)?;
        report.push(TrialRecord {
            index,
            summary: format!("|A|={} case={}", inst.a.len(), cert.stats.case),
            outcomes: vec![
                ("source".to_string(), yn(source)),
                ("image".to_string(), yn(image_answer)),
            ],
            agree: source == image_answer,
            micros: trial_start.elapsed().as_micros(),
            instance_json: serde_json::to_string(&inst).expect("serializable"),
        });
    }
    report.total_micros = started.elapsed().as_micros();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numrep;
    use num_traits::{ToPrimitive, Zero};

    fn caps() -> Caps {
        Caps::default()
    }

    fn p1() -> ThreeDMInstance {
        ThreeDMInstance::new(
            4,
            vec![[1, 1, 2], [2, 3, 3]],
            vec![
                [1, 1, 1],
                [2, 2, 1],
                [2, 2, 2],
                [3, 2, 1],
                [3, 2, 2],
                [3, 3, 3],
                [4, 4, 4],
            ],
        )
        .unwrap()
    }

    #[test]
    fn gadget_shape_invariants() {
        let inst = p1();
        let m1_len = inst.m1().len();
        let q = inst.q() as usize;
        let gadgets = gadget_sets(&inst).unwrap();
        for g in &gadgets {
            assert_eq!(g.rep.base(), 5);
            assert_eq!(g.rep.len(), 3 * q + m1_len + 1);
            assert_eq!(g.rep.digit(3 * q + m1_len + 1).unwrap(), 1);
            let universal = g.rep.subrep(3 * q + 1, 3 * q + m1_len).unwrap();
            let nonzero: Vec<usize> = (1..=m1_len)
                .filter(|&i| universal.digit(i).unwrap() != 0)
                .collect();
            match g.kind {
                GadgetKind::FromM1 => {
                    let rank = inst
                        .m1()
                        .iter()
                        .position(|t| *t == g.source_triple)
                        .unwrap();
                    assert_eq!(nonzero, vec![rank + 1]);
                    let d = universal.digit(rank + 1).unwrap();
                    assert!((1..=4).contains(&d));
                }
                GadgetKind::FromM2 => assert!(nonzero.is_empty()),
            }
            // Each coordinate sub-block has its digit only at the encoded
            // position.
            let [j1, j2, j3] = g.source_triple;
            for (block, j) in [(2, j1), (1, j2), (0, j3)] {
                let sub = g.rep.subrep(block * q + 1, (block + 1) * q).unwrap();
                for i in 1..=q {
                    if i != j as usize {
                        assert_eq!(sub.digit(i).unwrap(), 0);
                    }
                }
            }
        }
    }

    #[test]
    fn gadget_counts_per_triple() {
        let inst = p1();
        let q = inst.q() as u64;
        let gadgets = gadget_sets(&inst).unwrap();
        let per = |t: Triple, kind: GadgetKind| {
            gadgets
                .iter()
                .filter(|g| g.source_triple == t && g.kind == kind)
                .count() as u64
        };
        for &t in inst.m1() {
            assert_eq!(per(t, GadgetKind::FromM1), q * (q + 1).pow(3));
        }
        for &t in inst.m2() {
            assert_eq!(per(t, GadgetKind::FromM2), (q + 1).pow(3));
        }
        assert!(gadget_sets(&ThreeDMInstance::new(0, vec![], vec![]).unwrap()).is_err());
    }

    #[test]
    fn psi_of_p1_shape() {
        let (out, cert) = reduce_3dm_to_assoc_ikp(&p1()).unwrap();
        let five14 = BigUint::from(5u32).pow(14);
        assert_eq!(out.lambda, BigUint::from(4u32) * &five14);
        assert_eq!(*out.a.min().unwrap(), five14);
        assert_eq!(cert.stats.base, Some(5));
        assert_eq!(cert.stats.rep_len, Some(15));
        assert_eq!(cert.stats.case, "gadget");
        assert_eq!(cert.stats.lambda.as_ref(), Some(&out.lambda));
        assert_eq!(cert.stats.psi_size, Some(out.a.len()));

        // Named members: one per shaded/unshaded example row.
        let m1_member = Radix::parse("1 40 0040 0400 0400 (base 5)").unwrap().to_int();
        let m2_member = Radix::parse("1 00 4000 4000 4000 (base 5)").unwrap().to_int();
        assert!(out.a.elements().contains(&m1_member));
        assert!(out.a.elements().contains(&m2_member));
    }

    #[test]
    fn psi_q1_exhaustive_example() {
        let inst = ThreeDMInstance::new(1, vec![], vec![[1, 1, 1]]).unwrap();
        let (out, cert) = reduce_3dm_to_assoc_ikp(&inst).unwrap();
        let a: Vec<u64> = out
            .a
            .elements()
            .iter()
            .map(|x| x.to_u64().unwrap())
            .collect();
        assert_eq!(a, vec![8, 9, 10, 11, 12, 13, 14, 15]);
        assert_eq!(out.lambda, BigUint::from(8u32));
        assert_eq!(cert.stats.base, Some(2));
        assert!(decide_assoc_ikp(&out, &caps()).unwrap());
        assert!(decide_pi2_3dm(&inst, &caps()).unwrap());
    }

    #[test]
    fn psi_degenerate_cases() {
        let c = caps();
        let (out, cert) = reduce_3dm_to_assoc_ikp(&ThreeDMInstance::new(0, vec![], vec![]).unwrap())
            .unwrap();
        assert_eq!(cert.stats.case, "fixed-yes");
        assert!(decide_assoc_ikp(&out, &c).unwrap());

        let (out, cert) = reduce_3dm_to_assoc_ikp(&ThreeDMInstance::new(3, vec![], vec![]).unwrap())
            .unwrap();
        assert_eq!(cert.stats.case, "fixed-no");
        assert!(!decide_assoc_ikp(&out, &c).unwrap());
    }

    #[test]
    fn phi_cases() {
        let c = caps();
        let inst = AssocIKPInstance::new(
            IntSet::from_u64s(&[1, 5]).unwrap(),
            BigUint::from(9u32),
        )
        .unwrap();
        let (out, cert) = reduce_assoc_ikp_to_cofrobenius(&inst).unwrap();
        assert_eq!(cert.stats.case, "fixed-yes");
        assert!(decide_cofrobenius(&out, &c).unwrap());

        let inst = AssocIKPInstance::new(
            IntSet::from_u64s(&[3, 6, 9]).unwrap(),
            BigUint::from(11u32),
        )
        .unwrap();
        let (out, cert) = reduce_assoc_ikp_to_cofrobenius(&inst).unwrap();
        assert_eq!(cert.stats.case, "fixed-no");
        assert!(!decide_cofrobenius(&out, &c).unwrap());

        let inst = AssocIKPInstance::new(
            IntSet::from_u64s(&[2]).unwrap(),
            BigUint::from(4u32),
        )
        .unwrap();
        let (out, cert) = reduce_assoc_ikp_to_cofrobenius(&inst).unwrap();
        assert_eq!(cert.stats.case, "fixed-no");
        assert!(!decide_cofrobenius(&out, &c).unwrap());

        let inst = AssocIKPInstance::new(
            IntSet::from_u64s(&[4, 6, 7]).unwrap(),
            BigUint::from(10u32),
        )
        .unwrap();
        let (out, cert) = reduce_assoc_ikp_to_cofrobenius(&inst).unwrap();
        assert_eq!(cert.stats.case, "passthrough");
        assert_eq!(out.a(), &inst.a);
        assert_eq!(*out.k(), inst.lambda);
    }

    /// Forward soundness, constructively: on small yes instances, every
    /// target in the interval decomposes into exactly one gadget per triple
    /// of some completing matching, with no carries.
    #[test]
    fn forward_soundness_constructive() {
        let c = caps();
        let instances = vec![
            ThreeDMInstance::new(1, vec![[1, 1, 1]], vec![[1, 1, 1]]).unwrap(),
            ThreeDMInstance::new(2, vec![[1, 2, 1]], vec![[1, 1, 1], [2, 1, 2], [2, 2, 2]])
                .unwrap(),
            ThreeDMInstance::new(2, vec![], vec![[1, 1, 1], [2, 2, 2]]).unwrap(),
        ];
        for inst in instances {
            assert!(decide_pi2_3dm(&inst, &c).unwrap(), "need a yes instance");
            let q = inst.q() as usize;
            let b = q as u64 + 1;
            let m = 3 * q + inst.m1().len();
            // All (mu1, mu2) index pairs whose union is a perfect matching.
            let mut matchings: Vec<(u64, Vec<Triple>, Vec<GadgetKind>)> = Vec::new();
            for mask1 in 0u64..(1 << inst.m1().len()) {
                for mask2 in 0u64..(1 << inst.m2().len()) {
                    let mut triples = Vec::new();
                    let mut roles = Vec::new();
                    for (i, &t) in inst.m1().iter().enumerate() {
                        if mask1 >> i & 1 == 1 {
                            triples.push(t);
                            roles.push(GadgetKind::FromM1);
                        }
                    }
                    for (i, &t) in inst.m2().iter().enumerate() {
                        if mask2 >> i & 1 == 1 {
                            triples.push(t);
                            roles.push(GadgetKind::FromM2);
                        }
                    }
                    if crate::problems::is_perfect_matching(inst.q(), &triples).unwrap()
                        && triples.len() == q
                    {
                        matchings.push((mask1, triples, roles));
                    }
                }
            }
            let lambda = BigUint::from(q as u64) * BigUint::from(b).pow(m as u32);
            let top = BigUint::from(b).pow(m as u32 + 1) - BigUint::one();
            let mut r = lambda.clone();
            while r <= top {
                let target = Radix::from_int(&r, b, m + 1).unwrap();
                // The nonzero universal digits of the target select mu1.
                let mut need_mask1 = 0u64;
                for (rank, _) in inst.m1().iter().enumerate() {
                    if target.digit(3 * q + rank + 1).unwrap() != 0 {
                        need_mask1 |= 1 << rank;
                    }
                }
                let (_, triples, roles) = matchings
                    .iter()
                    .find(|(mask1, _, _)| *mask1 == need_mask1)
                    .expect("yes instance completes every subset of M1");
                // One gadget per triple: it takes the target digits at its
                // own positions and zero elsewhere.
                let mut parts = Vec::new();
                for (t, role) in triples.iter().zip(roles) {
                    let [j1, j2, j3] = *t;
                    let mut digits = vec![0u64; m + 1];
                    digits[m] = 1;
                    digits[2 * q + j1 as usize - 1] =
                        target.digit(2 * q + j1 as usize).unwrap();
                    digits[q + j2 as usize - 1] = target.digit(q + j2 as usize).unwrap();
                    digits[j3 as usize - 1] = target.digit(j3 as usize).unwrap();
                    if *role == GadgetKind::FromM1 {
                        let rank = inst.m1().iter().position(|x| x == t).unwrap();
                        digits[3 * q + rank] = target.digit(3 * q + rank + 1).unwrap();
                    }
                    digits.reverse();
                    parts.push(Radix::from_digits_msb(b, &digits).unwrap());
                }
                let result = numrep::add(&parts).unwrap();
                assert_eq!(result.overflow, 0);
                assert!(result.carries.iter().all(|&cy| cy == 0));
                assert_eq!(result.sum.to_int(), r);
                r += BigUint::one();
            }
        }
    }

    /// Backward completeness: on small instances, every multiset of gadget
    /// integers summing to the all-max target consists of exactly q members
    /// assignable to triples that form a perfect matching.
    #[test]
    fn backward_completeness_subset_sum() {
        let instances = vec![
            ThreeDMInstance::new(1, vec![[1, 1, 1]], vec![[1, 1, 1]]).unwrap(),
            ThreeDMInstance::new(2, vec![[1, 2, 1]], vec![[1, 1, 1], [2, 1, 2], [2, 2, 2]])
                .unwrap(),
            ThreeDMInstance::new(2, vec![[1, 1, 1]], vec![[2, 2, 2], [2, 1, 2]]).unwrap(),
        ];
        for inst in instances {
            let q = inst.q() as usize;
            let b = inst.q() as u64 + 1;
            let m = 3 * q + inst.m1().len();
            let gadgets = gadget_sets(&inst).unwrap();
            let (out, _) = reduce_3dm_to_assoc_ikp(&inst).unwrap();
            let elems = out.a.elements();
            let target = BigUint::from(b).pow(m as u32 + 1) - BigUint::one();
            // DFS over multisets (nondecreasing index order).
            let mut solutions: Vec<Vec<BigUint>> = Vec::new();
            let mut chosen: Vec<BigUint> = Vec::new();
            fn dfs(
                elems: &[BigUint],
                from: usize,
                remaining: &BigUint,
                chosen: &mut Vec<BigUint>,
                solutions: &mut Vec<Vec<BigUint>>,
            ) {
                if remaining.is_zero() {
                    solutions.push(chosen.clone());
                    return;
                }
                for i in from..elems.len() {
                    if &elems[i] <= remaining {
                        chosen.push(elems[i].clone());
                        dfs(elems, i, &(remaining - &elems[i]), chosen, solutions);
                        chosen.pop();
                    }
                }
            }
            dfs(elems, 0, &target, &mut chosen, &mut solutions);
            assert!(!solutions.is_empty(), "all-max target must be reachable");
            for sol in &solutions {
                assert_eq!(sol.len(), q, "exactly q addends: {sol:?}");
                // Candidate triples per chosen integer (set semantics may
                // give several); some assignment must be a matching.
                let candidates: Vec<Vec<Triple>> = sol
                    .iter()
                    .map(|v| {
                        let mut ts: Vec<Triple> = gadgets
                            .iter()
                            .filter(|g| g.rep.to_int() == *v)
                            .map(|g| g.source_triple)
                            .collect();
                        ts.dedup();
                        ts
                    })
                    .collect();
                let mut assignment_found = false;
                fn assign(
                    candidates: &[Vec<Triple>],
                    depth: usize,
                    acc: &mut Vec<Triple>,
                    q: u32,
                    found: &mut bool,
                ) {
                    if *found {
                        return;
                    }
                    if depth == candidates.len() {
                        if crate::problems::is_perfect_matching(q, acc).unwrap() {
                            *found = true;
                        }
                        return;
                    }
                    for t in &candidates[depth] {
                        acc.push(*t);
                        assign(candidates, depth + 1, acc, q, found);
                        acc.pop();
                    }
                }
                let mut acc = Vec::new();
                assign(
                    &candidates,
                    0,
                    &mut acc,
                    inst.q(),
                    &mut assignment_found,
                );
                assert!(assignment_found, "no matching assignment for {sol:?}");
            }
        }
    }

    #[test]
    fn verify_psi_small_run() {
        let report = verify_reduction_psi(60, 2, 2, 4, 42, &caps()).unwrap();
        assert_eq!(report.agreements(), 60);
        assert!(report.all_agree());
        let (yes, no) = report.yes_no_counts();
        assert!(yes > 0 && no > 0, "both answers should occur: {yes}/{no}");
    }

    #[test]
    fn verify_phi_small_run() {
        let report = verify_reduction_phi(120, 60, 5, 1, &caps()).unwrap();
        assert_eq!(report.agreements(), 120);
        let (yes, no) = report.yes_no_counts();
        assert!(yes > 0 && no > 0);
    }

    #[test]
    fn certificate_digest_is_stable() {
        let (_, c1) = reduce_3dm_to_assoc_ikp(&p1()).unwrap();
        let (_, c2) = reduce_3dm_to_assoc_ikp(&p1()).unwrap();
        assert_eq!(c1.input_digest, c2.input_digest);
        assert_eq!(c1.input_digest.len(), 64);
        let other = ThreeDMInstance::new(1, vec![], vec![[1, 1, 1]]).unwrap();
        let (_, c3) = reduce_3dm_to_assoc_ikp(&other).unwrap();
        assert_ne!(c1.input_digest, c3.input_digest);
    }
}
