/// Resource limits for the pseudopolynomial machinery. Exceeding a cap is a
/// reported error, never silent truncation.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct Caps {
    /// Maximum number of residue classes a `ResidueTable` may hold.
    pub residue_entries: u64,
    /// Maximum number of entries in a boolean representability table.
    pub dp_bits: u64,
    /// Maximum number of quantifier assignments (`2^|M1| * 2^|M2|`) the
    /// 3DM enumerator may examine.
    pub enumeration: u64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            residue_entries: 100_000_000,
            dp_bits: 1_000_000_000,
            enumeration: 1 << 22,
        }
    }
}
