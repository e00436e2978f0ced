//! On-disk instance schema: a `kind` tag plus the payload of the matching
//! problem type. All integers are decimal strings.

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use frobkit::frobenius::IntSet;
use frobkit::problems::{AssocIKPInstance, FrobeniusInstance, Pi2IKPInstance, ThreeDMInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnapsackInstance {
    pub a: IntSet,
    #[serde(with = "frobkit::serde_util::biguint_decimal")]
    pub k: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairInstance {
    pub first: FrobeniusInstance,
    pub second: FrobeniusInstance,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum InstanceFile {
    #[serde(rename = "3dm")]
    ThreeDM(ThreeDMInstance),
    #[serde(rename = "knapsack")]
    Knapsack(KnapsackInstance),
    #[serde(rename = "pi2ikp")]
    Pi2Ikp(Pi2IKPInstance),
    #[serde(rename = "assoc-ikp")]
    AssocIkp(AssocIKPInstance),
    #[serde(rename = "frobenius")]
    Frobenius(FrobeniusInstance),
    #[serde(rename = "exact")]
    Exact(FrobeniusInstance),
    #[serde(rename = "pair")]
    Pair(PairInstance),
}

impl InstanceFile {
    pub fn kind(&self) -> &'static str {
        match self {
            InstanceFile::ThreeDM(_) => "3dm",
            InstanceFile::Knapsack(_) => "knapsack",
            InstanceFile::Pi2Ikp(_) => "pi2ikp",
            InstanceFile::AssocIkp(_) => "assoc-ikp",
            InstanceFile::Frobenius(_) => "frobenius",
            InstanceFile::Exact(_) => "exact",
            InstanceFile::Pair(_) => "pair",
        }
    }

    /// The underlying `(A, k)` for commands that accept any
    /// Frobenius-shaped instance (`solve`, `bounds`).
    pub fn as_frobenius(&self) -> Option<&FrobeniusInstance> {
        match self {
            InstanceFile::Frobenius(f) | InstanceFile::Exact(f) => Some(f),
            _ => None,
        }
    }
}
