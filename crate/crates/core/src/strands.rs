//! Strand-pair bookkeeping for the band surgeries on `T(4n, ·)`.
//!
//! Strands of the standard diagram carry labels `1..=4n`, read cyclically.
//! A configuration records which strands the bands join in pairs and which
//! two are left over.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrandError {
    #[error("n must be at least 1, got {0}")]
    InvalidN(u64),
    #[error("invalid configuration: {0}")]
    InvalidConfiguration(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairConfiguration {
    strand_count: u64,
    pairs: BTreeSet<(u64, u64)>,
    free: BTreeSet<u64>,
}

impl PairConfiguration {
    /// Builds a configuration, normalizing each pair to `(low, high)`.
    pub fn new(
        strand_count: u64,
        pairs: impl IntoIterator<Item = (u64, u64)>,
        free: impl IntoIterator<Item = u64>,
    ) -> Result<Self, StrandError> {
        let bad = |m: String| Err(StrandError::InvalidConfiguration(m));
        if strand_count == 0 || !strand_count.is_multiple_of(4) {
            return bad(format!("strand count {strand_count} is not a positive multiple of 4"));
        }
        let pairs: BTreeSet<_> = pairs.into_iter().map(|(a, b)| (a.min(b), a.max(b))).collect();
        let free: BTreeSet<_> = free.into_iter().collect();
        if free.len() != 2 {
            return bad(format!("expected 2 free labels, got {}", free.len()));
        }
        let mut seen = BTreeSet::new();
        for &(a, b) in &pairs {
            if a == b {
                return bad(format!("label {a} paired with itself"));
            }
            for x in [a, b] {
                if !seen.insert(x) {
                    return bad(format!("label {x} used twice"));
                }
            }
        }
        for &x in &free {
            if !seen.insert(x) {
                return bad(format!("free label {x} is also paired"));
            }
        }
        if seen != (1..=strand_count).collect() {
            return bad(format!("labels do not cover 1..={strand_count}"));
        }
        Ok(PairConfiguration { strand_count, pairs, free })
    }

    pub fn strand_count(&self) -> u64 {
        self.strand_count
    }

    pub fn pairs(&self) -> &BTreeSet<(u64, u64)> {
        &self.pairs
    }

    pub fn free(&self) -> &BTreeSet<u64> {
        &self.free
    }

    /// Applies a label map that is a bijection of `1..=4n`.
    fn map(&self, f: impl Fn(u64) -> u64) -> Self {
        PairConfiguration {
            strand_count: self.strand_count,
            pairs: self.pairs.iter().map(|&(a, b)| (f(a).min(f(b)), f(a).max(f(b)))).collect(),
            free: self.free.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl fmt::Display for PairConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let pairs: Vec<_> = self.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        let free: Vec<_> = self.free.iter().map(u64::to_string).collect();
        write!(f, "pairs {{{}}}, free {{{}}}", pairs.join(","), free.join(","))
    }
}

/// Reduces any integer label to its representative in `1..=m`.
fn label(x: i128, m: u64) -> u64 {
    ((x - 1).rem_euclid(i128::from(m)) + 1) as u64
}

fn check_n(n: u64) -> Result<u64, StrandError> {
    if n == 0 {
        return Err(StrandError::InvalidN(n));
    }
    n.checked_mul(4).ok_or(StrandError::InvalidN(n))
}

/// Pairs `(i, 4n-i)` for `1 <= i <= 2n-1`; `2n` and `4n` free.
pub fn initial_pairing(n: u64) -> Result<PairConfiguration, StrandError> {
    let m = check_n(n)?;
    PairConfiguration::new(m, (1..2 * n).map(|i| (i, m - i)), [2 * n, m])
}

/// Moves every label by `d` around the cycle.
pub fn shift(c: &PairConfiguration, d: i64) -> PairConfiguration {
    let m = c.strand_count;
    c.map(|x| label(i128::from(x) + i128::from(d), m))
}

/// The pairing `i ~ 4n-2-i (mod 4n)`; its two fixed labels are free.
pub fn k1_pairing(n: u64) -> Result<PairConfiguration, StrandError> {
    let m = check_n(n)?;
    let partner = |i: u64| label(i128::from(m) - 2 - i128::from(i), m);
    let pairs: BTreeSet<_> = (1..=m).filter(|&i| partner(i) != i).map(|i| (i.min(partner(i)), i.max(partner(i)))).collect();
    let free: Vec<_> = (1..=m).filter(|&i| partner(i) == i).collect();
    PairConfiguration::new(m, pairs, free)
}

/// An element of the dihedral group acting on the labels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "c", rename_all = "lowercase")]
pub enum DihedralTransform {
    /// `j ↦ j + c`
    Rotation(u64),
    /// `j ↦ c - j`
    Reflection(u64),
}

impl DihedralTransform {
    pub fn apply(self, c: &PairConfiguration) -> PairConfiguration {
        let m = c.strand_count;
        match self {
            DihedralTransform::Rotation(s) => c.map(|x| label(i128::from(x) + i128::from(s), m)),
            DihedralTransform::Reflection(s) => c.map(|x| label(i128::from(s) - i128::from(x), m)),
        }
    }

    pub fn inverse(self, strand_count: u64) -> Self {
        match self {
            DihedralTransform::Rotation(s) => DihedralTransform::Rotation((strand_count - s % strand_count) % strand_count),
            r @ DihedralTransform::Reflection(_) => r,
        }
    }
}

impl fmt::Display for DihedralTransform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DihedralTransform::Rotation(c) => write!(f, "j -> j + {c}"),
            DihedralTransform::Reflection(c) => write!(f, "j -> {c} - j"),
        }
    }
}

/// First of the `8n` dihedral maps taking `a` onto `b`, rotations before
/// reflections, smallest `c` first.
pub fn dihedral_equivalent(a: &PairConfiguration, b: &PairConfiguration) -> Option<DihedralTransform> {
    let m = a.strand_count;
    if m != b.strand_count || a.pairs.len() != b.pairs.len() {
        return None;
    }
    (0..m)
        .map(DihedralTransform::Rotation)
        .chain((0..m).map(DihedralTransform::Reflection))
        .find(|t| t.apply(a) == *b)
}

/// Partial-twist count around the band surgeries on `T(4n, ·)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetReport {
    pub n: u64,
    pub partials_before: u64,
    pub pairs: u64,
    pub eliminated: u64,
    pub partials_after: u64,
}

impl BudgetReport {
    pub fn leaves_one_partial(&self) -> bool {
        self.partials_after == 1
    }
}

/// `4n-1` partials, two removed per pair, `2n-1` pairs.
pub fn twist_budget(n: u64) -> Result<BudgetReport, StrandError> {
    check_n(n)?;
    let pairs = initial_pairing(n)?.pairs.len() as u64;
    let partials_before = 4 * n - 1;
    let eliminated = 2 * pairs;
    Ok(BudgetReport { n, partials_before, pairs, eliminated, partials_after: partials_before - eliminated })
}
