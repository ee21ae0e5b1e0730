//! Parametric torus-knot families with known γ₄, their pinch chains, and the
//! counterexample scanner.
//!
//! Every family is written `T(a, b)` with `a` the even parameter:
//!
//! | family        | `a`        | `b`                       | range                 |
//! |---------------|------------|---------------------------|-----------------------|
//! | `SquarePlus`  | `4n`       | `(2n+1)² + 4n - 2`        | `n >= 1`              |
//! | `SquareMinus` | `4n`       | `(2n-1)² + 4n - 2`        | `n >= 2`              |
//! | `ChainLow`    | `4n + 2k`  | `n(4n+2k) - 1`            | `n >= 2, k >= 0`      |
//! | `ChainHigh`   | `4n + 2k`  | `(n+2)(4n+2k) - 1`        | `n >= 1, k >= 0`      |
//! | `Batson`      | `2k`       | `2k - 1`                  | `k >= 2`              |
//! | `Tairi`       | `4m + 4`   | `12mb + 6b + 5 - 2m`      | `m >= 0, b >= 2`      |
//! | `Longo`       | `4n`       | `(2n±1)²`                 | `n >= 2`              |
//! | `Binns`       | `4n + 2k`  | `(4n+2k)(n±1) + 1`        | `n >= 2 even, k >= 0` |
//!
//! Tairi's `m` and `b` are stored in the `n` and `k` slots of [`FamilyParams`].

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{BoundsError, IntervalBounds, RuleApplication, RuleBase};
use crate::knot::{self, KnotError, PinchSolution, TorusKnotClass};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("parameters out of range for {0}")]
    OutOfRange(FamilyParams),
    #[error("family parameter arithmetic overflowed for {0}")]
    Overflow(FamilyParams),
    #[error("{0} has no pinch chain")]
    NoChain(FamilyParams),
    #[error("chain {params} deviates at step {step}: {detail}")]
    ChainMismatch { params: FamilyParams, step: usize, detail: String },
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyId {
    SquarePlus,
    SquareMinus,
    ChainLow,
    ChainHigh,
    Batson,
    Tairi,
    Longo,
    Binns,
}

impl FamilyId {
    pub const ALL: [FamilyId; 8] = [
        FamilyId::SquarePlus,
        FamilyId::SquareMinus,
        FamilyId::ChainLow,
        FamilyId::ChainHigh,
        FamilyId::Batson,
        FamilyId::Tairi,
        FamilyId::Longo,
        FamilyId::Binns,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyId::SquarePlus => "square-plus",
            FamilyId::SquareMinus => "square-minus",
            FamilyId::ChainLow => "chain-low",
            FamilyId::ChainHigh => "chain-high",
            FamilyId::Batson => "batson",
            FamilyId::Tairi => "tairi",
            FamilyId::Longo => "longo",
            FamilyId::Binns => "binns",
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Why a formula match falls outside a family's stated range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MembershipNote {
    /// `T(4,3)`, the `n = 1` minus-sign square knot, explicitly excluded.
    StatedException,
    /// `ChainLow` with `n = 1`: covered by the general `n >= 1` statement
    /// but not by the proof, which needs `n >= 2`.
    GeneralStatementOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub family: FamilyId,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sign: Option<Sign>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub note: Option<MembershipNote>,
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family)?;
        let mut parts = Vec::new();
        let (first, second) = match self.family {
            FamilyId::Tairi => ("m", "b"),
            _ => ("n", "k"),
        };
        if let Some(n) = self.n {
            parts.push(format!("{first}={n}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("{second}={k}"));
        }
        if let Some(s) = self.sign {
            parts.push(format!("sign={s}"));
        }
        write!(f, "{})", parts.join(","))?;
        match self.note {
            Some(MembershipNote::StatedException) => write!(f, "[exception]"),
            Some(MembershipNote::GeneralStatementOnly) => write!(f, "[general-statement-only]"),
            None => Ok(()),
        }
    }
}

/// What a family statement asserts about γ₄.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gamma4Claim {
    Exact(u64),
    AtMost(u64),
}

impl FamilyParams {
    fn base(family: FamilyId) -> Self {
        FamilyParams { family, n: None, k: None, sign: None, note: None }
    }

    pub fn square(sign: Sign, n: u64) -> Self {
        let family = match sign {
            Sign::Plus => FamilyId::SquarePlus,
            Sign::Minus => FamilyId::SquareMinus,
        };
        FamilyParams { n: Some(n), ..Self::base(family) }
    }

    pub fn chain_low(n: u64, k: u64) -> Self {
        FamilyParams { n: Some(n), k: Some(k), ..Self::base(FamilyId::ChainLow) }
    }

    pub fn chain_high(n: u64, k: u64) -> Self {
        FamilyParams { n: Some(n), k: Some(k), ..Self::base(FamilyId::ChainHigh) }
    }

    pub fn batson(k: u64) -> Self {
        FamilyParams { k: Some(k), ..Self::base(FamilyId::Batson) }
    }

    pub fn tairi(m: u64, b: u64) -> Self {
        FamilyParams { n: Some(m), k: Some(b), ..Self::base(FamilyId::Tairi) }
    }

    pub fn longo(n: u64, sign: Sign) -> Self {
        FamilyParams { n: Some(n), sign: Some(sign), ..Self::base(FamilyId::Longo) }
    }

    pub fn binns(n: u64, k: u64, sign: Sign) -> Self {
        FamilyParams { n: Some(n), k: Some(k), sign: Some(sign), ..Self::base(FamilyId::Binns) }
    }

    fn with_note(mut self, note: MembershipNote) -> Self {
        self.note = Some(note);
        self
    }

    fn n(&self) -> u64 {
        self.n.unwrap_or(0)
    }

    fn k(&self) -> u64 {
        self.k.unwrap_or(0)
    }

    /// Whether the parameters lie in the family's stated range.
    pub fn in_range(&self) -> bool {
        let (n, k) = (self.n(), self.k());
        let has_sign = self.sign.is_some();
        match self.family {
            FamilyId::SquarePlus => n >= 1,
            FamilyId::SquareMinus => n >= 2,
            FamilyId::ChainLow => n >= 2 && self.k.is_some(),
            FamilyId::ChainHigh => n >= 1 && self.k.is_some(),
            FamilyId::Batson => k >= 2,
            FamilyId::Tairi => k >= 2 && self.n.is_some(),
            FamilyId::Longo => n >= 2 && has_sign,
            FamilyId::Binns => n >= 2 && n % 2 == 0 && self.k.is_some() && has_sign,
        }
    }

    /// `(a, b)` with `a` even, before canonical ordering.
    pub fn ordered_pair(&self) -> Option<(u64, u64)> {
        let (n, k) = (self.n(), self.k());
        let sign = self.sign.unwrap_or(Sign::Plus);
        let plus_minus = |x: u64, d: u64| match sign {
            Sign::Plus => x.checked_add(d),
            Sign::Minus => x.checked_sub(d),
        };
        let four_n = n.checked_mul(4)?;
        let a_chain = four_n.checked_add(k.checked_mul(2)?)?;
        match self.family {
            FamilyId::SquarePlus | FamilyId::SquareMinus => {
                let root = match self.family {
                    FamilyId::SquarePlus => (2 * n).checked_add(1)?,
                    _ => (2 * n).checked_sub(1)?,
                };
                let b = root.checked_mul(root)?.checked_add(four_n)?.checked_sub(2)?;
                Some((four_n, b))
            }
            FamilyId::ChainLow => Some((a_chain, n.checked_mul(a_chain)?.checked_sub(1)?)),
            FamilyId::ChainHigh => Some((a_chain, (n + 2).checked_mul(a_chain)?.checked_sub(1)?)),
            FamilyId::Batson => Some((2 * k, (2 * k).checked_sub(1)?)),
            FamilyId::Tairi => {
                let (m, b) = (n, k);
                let q = m.checked_mul(b)?.checked_mul(12)?.checked_add(b.checked_mul(6)?)?.checked_add(5)?;
                Some((four_n.checked_add(4)?, q.checked_sub(2 * m)?))
            }
            FamilyId::Longo => {
                let root = plus_minus(2 * n, 1)?;
                Some((four_n, root.checked_mul(root)?))
            }
            FamilyId::Binns => {
                let mult = plus_minus(n, 1)?;
                Some((a_chain, a_chain.checked_mul(mult)?.checked_add(1)?))
            }
        }
    }

    /// The family member.
    pub fn knot(&self) -> Result<TorusKnotClass, FamilyError> {
        let (a, b) = self.ordered_pair().ok_or(FamilyError::Overflow(*self))?;
        Ok(TorusKnotClass::new(a, b)?)
    }

    /// The stated value of γ₄ (or upper bound, for Longo's inequality).
    pub fn gamma4_claim(&self) -> Option<Gamma4Claim> {
        let (n, k) = (self.n(), self.k());
        match (self.family, self.note) {
            (_, Some(MembershipNote::StatedException)) => None,
            (FamilyId::SquarePlus | FamilyId::SquareMinus, _) => Some(Gamma4Claim::Exact(2 * n - 1)),
            (FamilyId::ChainLow | FamilyId::ChainHigh, _) => Some(Gamma4Claim::Exact(2 * n - 1 + k)),
            (FamilyId::Batson, _) => Some(Gamma4Claim::Exact(k - 1)),
            (FamilyId::Tairi, _) => Some(Gamma4Claim::Exact(k)),
            (FamilyId::Longo, _) => Some(Gamma4Claim::AtMost(2 * n - 1)),
            (FamilyId::Binns, _) => Some(Gamma4Claim::Exact(2 * n + k - 1)),
        }
    }

    /// The stated pinch number, where the statement gives one.
    pub fn theta_claim(&self) -> Option<u64> {
        let (n, k) = (self.n(), self.k());
        match (self.family, self.note) {
            (_, Some(_)) => None,
            (FamilyId::SquarePlus | FamilyId::SquareMinus | FamilyId::Longo, _) => Some(2 * n),
            (FamilyId::ChainLow | FamilyId::ChainHigh | FamilyId::Binns, _) => Some(2 * n + k),
            (FamilyId::Batson, _) => Some(k - 1),
            (FamilyId::Tairi, _) => Some(k + 1),
        }
    }
}

/// Every family whose defining formula `K` satisfies, with parameters.
///
/// Formula matches outside a stated range are returned only for `T(4,3)`
/// (flagged as the stated exception) and for `ChainLow` at `n = 1`.
pub fn detect_membership(k: TorusKnotClass) -> Vec<FamilyParams> {
    let TorusKnotClass::Torus { p, q } = k else {
        return Vec::new();
    };
    let (a, b) = match (p % 2, q % 2) {
        (0, _) => (p, q),
        (_, 0) => (q, p),
        _ => return Vec::new(),
    };
    let (a, b) = (u128::from(a), u128::from(b));
    let mut out = Vec::new();
    let narrow = |x: u128| x as u64;

    if a % 4 == 0 {
        let n = a / 4;
        if b == 4 * n * n + 8 * n - 1 {
            out.push(FamilyParams::square(Sign::Plus, narrow(n)));
        }
        if b == 4 * n * n - 1 {
            let params = FamilyParams::square(Sign::Minus, narrow(n));
            match n {
                1 => out.push(params.with_note(MembershipNote::StatedException)),
                _ => out.push(params),
            }
        }
    }
    if (b + 1) % a == 0 {
        let mult = (b + 1) / a;
        // chain-low: b = n·a - 1
        let n = mult;
        if n >= 1 && 4 * n <= a {
            let params = FamilyParams::chain_low(narrow(n), narrow((a - 4 * n) / 2));
            match n {
                1 => out.push(params.with_note(MembershipNote::GeneralStatementOnly)),
                _ => out.push(params),
            }
        }
        // chain-high: b = (n+2)·a - 1
        if mult >= 3 {
            let n = mult - 2;
            if 4 * n <= a {
                out.push(FamilyParams::chain_high(narrow(n), narrow((a - 4 * n) / 2)));
            }
        }
    }
    if b + 1 == a && a >= 4 {
        out.push(FamilyParams::batson(narrow(a / 2)));
    }
    if a % 4 == 0 {
        let m = a / 4 - 1;
        let step = 12 * m + 6;
        if b + 2 * m >= 5 && (b + 2 * m - 5) % step == 0 {
            let bb = (b + 2 * m - 5) / step;
            if bb >= 2 {
                out.push(FamilyParams::tairi(narrow(m), narrow(bb)));
            }
        }
        let n = a / 4;
        if n >= 2 {
            for sign in Sign::BOTH {
                let root = if sign == Sign::Plus { 2 * n + 1 } else { 2 * n - 1 };
                if b == root * root {
                    out.push(FamilyParams::longo(narrow(n), sign));
                }
            }
        }
    }
    if (b - 1) % a == 0 {
        let mult = (b - 1) / a;
        for sign in Sign::BOTH {
            let n = match sign {
                Sign::Plus => mult.checked_sub(1),
                Sign::Minus => Some(mult + 1),
            };
            if let Some(n) = n.filter(|&n| n >= 2 && n % 2 == 0 && 4 * n <= a) {
                out.push(FamilyParams::binns(narrow(n), narrow((a - 4 * n) / 2), sign));
            }
        }
    }
    out.sort();
    out
}

/// All in-range members of `family` with primary parameter `<= n_max` and
/// secondary parameter `<= k_max`. Batson's only parameter counts as primary.
pub fn enumerate_family(family: FamilyId, n_max: u64, k_max: u64) -> Vec<(FamilyParams, TorusKnotClass)> {
    let mut params = Vec::new();
    match family {
        FamilyId::SquarePlus => params.extend((1..=n_max).map(|n| FamilyParams::square(Sign::Plus, n))),
        FamilyId::SquareMinus => params.extend((2..=n_max).map(|n| FamilyParams::square(Sign::Minus, n))),
        FamilyId::ChainLow => {
            for n in 2..=n_max {
                params.extend((0..=k_max).map(|k| FamilyParams::chain_low(n, k)));
            }
        }
        FamilyId::ChainHigh => {
            for n in 1..=n_max {
                params.extend((0..=k_max).map(|k| FamilyParams::chain_high(n, k)));
            }
        }
        FamilyId::Batson => params.extend((2..=n_max).map(FamilyParams::batson)),
        FamilyId::Tairi => {
            // m starts at 0, so n_max bounds m + 1 members
            if n_max > 0 {
                for m in 0..n_max {
                    params.extend((2..=k_max).map(|b| FamilyParams::tairi(m, b)));
                }
            }
        }
        FamilyId::Longo => {
            for n in 2..=n_max {
                params.extend(Sign::BOTH.map(|s| FamilyParams::longo(n, s)));
            }
        }
        FamilyId::Binns => {
            for n in (2..=n_max).filter(|n| n % 2 == 0) {
                for k in 0..=k_max {
                    params.extend(Sign::BOTH.map(|s| FamilyParams::binns(n, k, s)));
                }
            }
        }
    }
    params.into_iter().filter_map(|p| p.knot().ok().map(|k| (p, k))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub knot: TorusKnotClass,
    pub solution: PinchSolution,
    pub result: TorusKnotClass,
}

/// A verified pinch chain from a chain-family knot to its square-family
/// endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainReport {
    pub params: FamilyParams,
    pub start: TorusKnotClass,
    pub expected_solution: PinchSolution,
    pub steps: Vec<ChainStep>,
    pub terminal: TorusKnotClass,
    pub terminal_family: FamilyParams,
}

/// Runs `k` pinch moves from a chain-family knot, checking each residue
/// pair is `(1, n)` (low) or `(1, n + 2)` (high), each intermediate knot is
/// the `k - 1` member, and the end is the matching square-family knot.
pub fn verify_reduction_chain(params: FamilyParams) -> Result<ChainReport, FamilyError> {
    let (n, k) = (params.n(), params.k());
    let (h, make, terminal_family): (u64, fn(u64, u64) -> FamilyParams, FamilyParams) = match params.family {
        FamilyId::ChainLow => (n, FamilyParams::chain_low, FamilyParams::square(Sign::Minus, n)),
        FamilyId::ChainHigh => (n + 2, FamilyParams::chain_high, FamilyParams::square(Sign::Plus, n)),
        _ => return Err(FamilyError::NoChain(params)),
    };
    if !params.in_range() || params.note.is_some() {
        return Err(FamilyError::OutOfRange(params));
    }
    let expected_solution = PinchSolution { t: 1, h };
    let start = params.knot()?;
    let mut steps = Vec::with_capacity(k as usize);
    let mut cur = start;
    for (i, remaining) in (0..k).rev().enumerate() {
        let (solution, next) = knot::pinch_step(cur)?;
        if solution != expected_solution {
            return Err(FamilyError::ChainMismatch {
                params,
                step: i,
                detail: format!("{cur}: residues {solution}, expected {expected_solution}"),
            });
        }
        let expected_next = make(n, remaining).knot()?;
        if next != expected_next {
            return Err(FamilyError::ChainMismatch {
                params,
                step: i,
                detail: format!("{cur} pinched to {next}, expected {expected_next}"),
            });
        }
        steps.push(ChainStep { knot: cur, solution, result: next });
        cur = next;
    }
    let expected_terminal = terminal_family.knot()?;
    if cur != expected_terminal {
        return Err(FamilyError::ChainMismatch {
            params,
            step: k as usize,
            detail: format!("terminal {cur}, expected {expected_terminal}"),
        });
    }
    Ok(ChainReport { params, start, expected_solution, steps, terminal: cur, terminal_family })
}

/// One scanned knot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CounterexampleRecord {
    pub knot: TorusKnotClass,
    pub theta: u64,
    pub gamma4: IntervalBounds,
    /// γ₄ is pinned to a single value strictly below ϑ.
    pub counterexample: bool,
    /// The upper bound is below ϑ but γ₄ is not pinned.
    pub candidate: bool,
    pub families: Vec<FamilyParams>,
    pub provenance: Vec<RuleApplication>,
}

impl CounterexampleRecord {
    pub fn is_stated_exception(&self) -> bool {
        self.families.iter().any(|f| f.note == Some(MembershipNote::StatedException))
    }
}

pub fn counterexample_record(k: TorusKnotClass, rules: &RuleBase) -> Result<CounterexampleRecord, FamilyError> {
    let theta = knot::pinch_number(k)?;
    let interval = rules.derive(k)?;
    let point = interval.lower == interval.upper;
    Ok(CounterexampleRecord {
        knot: k,
        theta,
        gamma4: interval.bounds(),
        counterexample: point && interval.upper < theta,
        candidate: !point && interval.upper < theta,
        families: detect_membership(k),
        provenance: interval.provenance,
    })
}

/// Records for every coprime `p < q <= q_max` with `p` drawn from `p_values`,
/// in the order given.
pub fn scan_rows(p_values: impl IntoIterator<Item = u64>, q_max: u64, rules: &RuleBase) -> Result<Vec<CounterexampleRecord>, FamilyError> {
    let mut out = Vec::new();
    for p in p_values {
        for q in p + 1..=q_max {
            if num_integer::gcd(p, q) != 1 {
                continue;
            }
            let k = TorusKnotClass::new(p, q)?;
            out.push(counterexample_record(k, rules)?);
        }
    }
    Ok(out)
}

/// Scans `2 <= p <= p_max`, `p < q <= q_max` in parallel, one row of the grid
/// per task; output order is `(p, q)` regardless of scheduling.
pub fn scan_counterexamples(p_max: u64, q_max: u64, rules: &RuleBase) -> Result<Vec<CounterexampleRecord>, FamilyError> {
    if p_max < 2 || q_max < 3 {
        return Ok(Vec::new());
    }
    let rows: Vec<_> = (2..=p_max.min(q_max))
        .into_par_iter()
        .map(|p| scan_rows([p], q_max, rules))
        .collect::<Result<_, _>>()?;
    Ok(rows.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u64, q: u64) -> TorusKnotClass {
        TorusKnotClass::new(p, q).unwrap()
    }

    #[test]
    fn detects_chain_and_square_members() {
        assert_eq!(detect_membership(t(10, 19)), vec![FamilyParams::chain_low(2, 1)]);
        let m = detect_membership(t(8, 31));
        assert!(m.contains(&FamilyParams::square(Sign::Plus, 2)));
        assert!(m.contains(&FamilyParams::chain_high(2, 0)));
        assert_eq!(m.len(), 2);
    }

    #[test]
    fn t43_is_the_stated_exception() {
        let m = detect_membership(t(4, 3));
        assert!(m.contains(&FamilyParams::square(Sign::Minus, 1).with_note(MembershipNote::StatedException)));
        assert!(m.contains(&FamilyParams::batson(2)));
        assert!(m.contains(&FamilyParams::chain_low(1, 0).with_note(MembershipNote::GeneralStatementOnly)));
    }

    #[test]
    fn other_families() {
        assert_eq!(detect_membership(t(8, 7)), vec![
            FamilyParams::chain_low(1, 2).with_note(MembershipNote::GeneralStatementOnly),
            FamilyParams::batson(4),
        ]);
        let m = detect_membership(t(8, 25));
        assert!(m.contains(&FamilyParams::longo(2, Sign::Plus)));
        assert!(m.contains(&FamilyParams::binns(2, 0, Sign::Plus)));
        assert!(detect_membership(t(4, 23)).contains(&FamilyParams::tairi(0, 3)));
        assert!(detect_membership(TorusKnotClass::Unknot).is_empty());
        assert!(detect_membership(t(5, 7)).is_empty());
    }

    #[test]
    fn enumeration() {
        let plus: Vec<_> = enumerate_family(FamilyId::SquarePlus, 2, 0).into_iter().map(|(_, k)| k).collect();
        assert_eq!(plus, vec![t(4, 11), t(8, 31)]);
        let minus = enumerate_family(FamilyId::SquareMinus, 2, 5);
        assert_eq!(minus, vec![(FamilyParams::square(Sign::Minus, 2), t(8, 15))]);
        for f in FamilyId::ALL {
            assert!(enumerate_family(f, 0, 3).is_empty(), "{f}");
        }
    }

    #[test]
    fn chains() {
        let r = verify_reduction_chain(FamilyParams::chain_low(2, 2)).unwrap();
        let knots: Vec<_> = r.steps.iter().map(|s| s.knot).collect();
        assert_eq!(knots, vec![t(12, 23), t(10, 19)]);
        assert_eq!(r.terminal, t(8, 15));
        assert!(r.steps.iter().all(|s| s.solution == PinchSolution { t: 1, h: 2 }));

        let r = verify_reduction_chain(FamilyParams::chain_high(1, 1)).unwrap();
        assert_eq!(r.steps.len(), 1);
        assert_eq!(r.steps[0].solution, PinchSolution { t: 1, h: 3 });
        assert_eq!(r.terminal, t(4, 11));

        let r = verify_reduction_chain(FamilyParams::chain_low(2, 0)).unwrap();
        assert!(r.steps.is_empty());
        assert_eq!(r.terminal, t(8, 15));

        assert!(matches!(verify_reduction_chain(FamilyParams::batson(3)), Err(FamilyError::NoChain(_))));
        assert!(matches!(verify_reduction_chain(FamilyParams::chain_low(1, 2)), Err(FamilyError::OutOfRange(_))));
    }

    #[test]
    fn claims() {
        assert_eq!(FamilyParams::chain_high(1, 1).gamma4_claim(), Some(Gamma4Claim::Exact(2)));
        assert_eq!(FamilyParams::longo(3, Sign::Minus).gamma4_claim(), Some(Gamma4Claim::AtMost(5)));
        assert_eq!(FamilyParams::square(Sign::Minus, 1).with_note(MembershipNote::StatedException).gamma4_claim(), None);
        assert_eq!(FamilyParams::chain_low(2, 3).theta_claim(), Some(7));
    }

    #[test]
    fn tiny_scans_are_empty() {
        let rules = RuleBase::standard();
        assert!(scan_counterexamples(2, 2, &rules).unwrap().is_empty());
        assert!(scan_counterexamples(1, 50, &rules).unwrap().is_empty());
    }
}
