//! γ₄ bound engine.
//!
//! Each rule turns a published statement into a lower and/or upper bound for
//! one knot. [`RuleBase::derive`] intersects everything that applies and
//! keeps a [`RuleApplication`] for each contribution, so every interval can
//! be traced back to the statements it rests on.
//!
//! Band-move edges point at another knot whose γ₄ is either a slice fact or
//! derived recursively; every torus knot gets its pinch move as an edge.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{self, FamilyId, FamilyParams, Gamma4Claim, MembershipNote};
use crate::knot::{self, KnotError, TorusKnotClass};
use crate::two_bridge::{self, TwoBridgeError, TwoBridgeFraction};
use crate::Sign;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("{0} is not slice")]
    NotSlice(TorusKnotClass),
    #[error("inconsistent bounds for {knot}: lower {lower} > upper {upper}")]
    InconsistentBounds { knot: TorusKnotClass, lower: u64, upper: u64, provenance: Vec<RuleApplication> },
    #[error("edge source {edge_source} does not match {knot}")]
    EdgeSourceMismatch { knot: TorusKnotClass, edge_source: TorusKnotClass },
    #[error("band-move edge needs at least one move")]
    ZeroMoveEdge,
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error(transparent)]
    TwoBridge(#[from] TwoBridgeError),
}

/// The statements the engine knows. Quotes are the mathematical content of
/// each statement with its parameter range.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleId {
    SliceConvention,
    PinchNumber,
    Window,
    PinchEdge,
    LobbEdge,
    TairiEdge,
    SquareSurgeryEdge,
    UserEdge,
    BatsonFamily,
    TairiFamily,
    LongoFamily,
    LongoEquality,
    BinnsFamily,
    SquareFamily,
    ChainLowFamily,
    ChainHighFamily,
    ChainLowGeneral,
}

impl RuleId {
    pub const ALL: [RuleId; 17] = [
        RuleId::SliceConvention,
        RuleId::PinchNumber,
        RuleId::Window,
        RuleId::PinchEdge,
        RuleId::LobbEdge,
        RuleId::TairiEdge,
        RuleId::SquareSurgeryEdge,
        RuleId::UserEdge,
        RuleId::BatsonFamily,
        RuleId::TairiFamily,
        RuleId::LongoFamily,
        RuleId::LongoEquality,
        RuleId::BinnsFamily,
        RuleId::SquareFamily,
        RuleId::ChainLowFamily,
        RuleId::ChainHighFamily,
        RuleId::ChainLowGeneral,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::SliceConvention => "slice-convention",
            RuleId::PinchNumber => "pinch-number",
            RuleId::Window => "window",
            RuleId::PinchEdge => "pinch-edge",
            RuleId::LobbEdge => "lobb-edge",
            RuleId::TairiEdge => "tairi-edge",
            RuleId::SquareSurgeryEdge => "square-surgery-edge",
            RuleId::UserEdge => "user-edge",
            RuleId::BatsonFamily => "batson-family",
            RuleId::TairiFamily => "tairi-family",
            RuleId::LongoFamily => "longo-family",
            RuleId::LongoEquality => "longo-equality",
            RuleId::BinnsFamily => "binns-family",
            RuleId::SquareFamily => "square-family",
            RuleId::ChainLowFamily => "chain-low-family",
            RuleId::ChainHighFamily => "chain-high-family",
            RuleId::ChainLowGeneral => "chain-low-general",
        }
    }

    pub fn quote(self) -> &'static str {
        match self {
            RuleId::SliceConvention => "K slice => gamma4(K) = 0",
            RuleId::PinchNumber => "gamma4(T(p,q)) <= theta(T(p,q)), theta = pinch moves needed to reach the unknot",
            RuleId::Window => {
                "p > 3, q = p-1, p+1 or 2p-1 (mod 2p) => theta-1 <= gamma4(T(p,q)) <= theta; \
                 p odd: q = p-1 gives {(p-3)/2, (p-1)/2}, q = p+1 or 2p-1 gives (p-1)/2; \
                 p even, q > p: {(p-2)/2, p/2}"
            }
            RuleId::PinchEdge | RuleId::UserEdge => {
                "K, K' related by a non-oriented band move => gamma4(K) <= gamma4(K') + 1; \
                 K' slice, K not slice => gamma4(K) = 1"
            }
            RuleId::LobbEdge => "T(4,9) is one non-oriented band move from the slice knot 6_1",
            RuleId::TairiEdge => "T(4,11) is one non-oriented band move from the slice knot 6_1",
            RuleId::SquareSurgeryEdge => {
                "2n-1 non-oriented band moves take T(4n,(2n+-1)^2+4n-2) to K1, \
                 the closure of the rational tangle 2n/(4n(n+-1)-1), which is slice"
            }
            RuleId::BatsonFamily => "gamma4(T(2k,2k-1)) = theta(T(2k,2k-1)) = k-1, k >= 1",
            RuleId::TairiFamily => "gamma4(T(4m+4,12mb+6b+5-2m)) = b, theta = b+1, b >= 2, m >= 0",
            RuleId::LongoFamily => "gamma4(T(4n,(2n+-1)^2)) <= 2n-1, theta = 2n, n >= 2",
            RuleId::LongoEquality => "gamma4(T(4n,(2n+-1)^2)) = 2n-1 for n = 2",
            RuleId::BinnsFamily => {
                "gamma4(T(4n+2k,(4n+2k)(n+-1)+1)) = 2n+k-1 = theta - 1, n >= 2 even, k >= 0"
            }
            RuleId::SquareFamily => "gamma4(T(4n,(2n+-1)^2+4n-2)) = 2n-1, theta = 2n, n >= 2; also T(4,11)",
            RuleId::ChainLowFamily => "gamma4(T(4n+2k,n(4n+2k)-1)) = 2n-1+k, n >= 2, k >= 0",
            RuleId::ChainHighFamily => "gamma4(T(4n+2k,(n+2)(4n+2k)-1)) = 2n-1+k, n >= 1, k >= 0",
            RuleId::ChainLowGeneral => "gamma4(T(4n+2k,n(4n+2k)-1)) = 2n-1+k, n >= 1, k >= 0",
        }
    }

    fn for_family(params: &FamilyParams) -> RuleId {
        match (params.family, params.note) {
            (FamilyId::ChainLow, Some(MembershipNote::GeneralStatementOnly)) => RuleId::ChainLowGeneral,
            (FamilyId::SquarePlus | FamilyId::SquareMinus, _) => RuleId::SquareFamily,
            (FamilyId::ChainLow, _) => RuleId::ChainLowFamily,
            (FamilyId::ChainHigh, _) => RuleId::ChainHighFamily,
            (FamilyId::Batson, _) => RuleId::BatsonFamily,
            (FamilyId::Tairi, _) => RuleId::TairiFamily,
            (FamilyId::Longo, _) => RuleId::LongoFamily,
            (FamilyId::Binns, _) => RuleId::BinnsFamily,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One rule's contribution to a knot's interval.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RuleApplication {
    pub rule: RuleId,
    pub quote: String,
    pub params: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lower: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub upper: Option<u64>,
}

impl RuleApplication {
    fn new(rule: RuleId, params: impl Into<String>, lower: Option<u64>, upper: Option<u64>) -> Self {
        RuleApplication { rule, quote: rule.quote().to_string(), params: params.into(), lower, upper }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalBounds {
    pub lower: u64,
    pub upper: u64,
}

impl fmt::Display for IntervalBounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lower, self.upper)
    }
}

/// `lower <= γ₄ <= upper`, with the rules that produced it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gamma4Interval {
    pub lower: u64,
    pub upper: u64,
    pub provenance: Vec<RuleApplication>,
}

impl Gamma4Interval {
    /// `[0, ∞)`, before any rule has applied.
    fn unconstrained() -> Self {
        Gamma4Interval { lower: 0, upper: u64::MAX, provenance: Vec::new() }
    }

    pub fn bounds(&self) -> IntervalBounds {
        IntervalBounds { lower: self.lower, upper: self.upper }
    }

    pub fn is_point(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, other: &IntervalBounds) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    /// Intersects with the application's bounds and records it.
    pub fn tighten(&mut self, app: RuleApplication) {
        if let Some(l) = app.lower {
            self.lower = self.lower.max(l);
        }
        if let Some(u) = app.upper {
            self.upper = self.upper.min(u);
        }
        self.provenance.push(app);
    }

    pub fn rules(&self) -> BTreeSet<RuleId> {
        self.provenance.iter().map(|a| a.rule).collect()
    }
}

impl fmt::Display for Gamma4Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.bounds().fmt(f)
    }
}

/// Where a band move leads.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeTarget {
    Torus { knot: TorusKnotClass },
    /// A knot taken to be slice, e.g. `6_1`.
    Slice { name: String },
    /// A two-bridge knot asserted slice; applied only while it passes the
    /// slice necessary conditions.
    TwoBridge { fraction: TwoBridgeFraction },
}

impl fmt::Display for EdgeTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EdgeTarget::Torus { knot } => write!(f, "{knot}"),
            EdgeTarget::Slice { name } => write!(f, "{name} (slice)"),
            EdgeTarget::TwoBridge { fraction } => write!(f, "{fraction} (slice)"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BandMoveEdge {
    pub source: TorusKnotClass,
    pub target: EdgeTarget,
    pub moves: u64,
    pub origin: RuleId,
}

impl BandMoveEdge {
    pub fn new(source: TorusKnotClass, target: EdgeTarget, moves: u64) -> Self {
        BandMoveEdge { source, target, moves, origin: RuleId::UserEdge }
    }
}

/// `[0,0]` for the unknot; torus knots are never slice.
pub fn rule_slice_convention(k: TorusKnotClass) -> Result<Gamma4Interval, BoundsError> {
    match k {
        TorusKnotClass::Unknot => {
            let mut iv = Gamma4Interval::unconstrained();
            iv.tighten(RuleApplication::new(RuleId::SliceConvention, "unknot", Some(0), Some(0)));
            Ok(iv)
        }
        TorusKnotClass::Torus { .. } => Err(BoundsError::NotSlice(k)),
    }
}

/// `γ₄ <= ϑ`.
pub fn rule_pinch_upper(k: TorusKnotClass) -> Result<RuleApplication, BoundsError> {
    let theta = knot::pinch_number(k)?;
    Ok(RuleApplication::new(RuleId::PinchNumber, format!("theta={theta}"), None, Some(theta)))
}

/// The parity window around ϑ for `p > 3` and `q ≡ p-1, p+1, 2p-1 (mod 2p)`.
pub fn rule_window(k: TorusKnotClass) -> Option<RuleApplication> {
    let TorusKnotClass::Torus { p, q } = k else {
        return None;
    };
    if p <= 3 {
        return None;
    }
    let r = q % (2 * p);
    let (lower, upper) = if p % 2 == 1 {
        if r == p - 1 {
            ((p - 3) / 2, (p - 1) / 2)
        } else if r == p + 1 || r == 2 * p - 1 {
            ((p - 1) / 2, (p - 1) / 2)
        } else {
            return None;
        }
    } else if q > p && (r == p - 1 || r == p + 1 || r == 2 * p - 1) {
        ((p - 2) / 2, p / 2)
    } else {
        return None;
    };
    Some(RuleApplication::new(RuleId::Window, format!("p={p}, q mod 2p={r}"), Some(lower), Some(upper)))
}

/// Band-move bound given the target's interval: `γ₄(K) <= upper' + moves`,
/// and exactly 1 when a single band reaches a slice knot from a torus knot.
pub fn rule_band_move(
    k: TorusKnotClass,
    edge: &BandMoveEdge,
    target: IntervalBounds,
) -> Result<RuleApplication, BoundsError> {
    if edge.source != k {
        return Err(BoundsError::EdgeSourceMismatch { knot: k, edge_source: edge.source });
    }
    if edge.moves == 0 {
        return Err(BoundsError::ZeroMoveEdge);
    }
    let params = format!("target={}, target_gamma4={}, moves={}", edge.target, target, edge.moves);
    let slice_target = target.upper == 0;
    if slice_target && edge.moves == 1 && !k.is_unknot() {
        return Ok(RuleApplication::new(edge.origin, params, Some(1), Some(1)));
    }
    Ok(RuleApplication::new(edge.origin, params, None, Some(target.upper.saturating_add(edge.moves))))
}

/// Contributions of the family statements matching `k`.
pub fn rule_known_families(k: TorusKnotClass) -> Vec<RuleApplication> {
    let members = families::detect_membership(k);
    let mut out = Vec::new();
    for m in &members {
        let rule = RuleId::for_family(m);
        match m.gamma4_claim() {
            Some(Gamma4Claim::Exact(v)) => out.push(RuleApplication::new(rule, m.to_string(), Some(v), Some(v))),
            Some(Gamma4Claim::AtMost(v)) => out.push(RuleApplication::new(rule, m.to_string(), None, Some(v))),
            None => {}
        }
        if m.family == FamilyId::Longo && m.n == Some(2) {
            out.push(RuleApplication::new(RuleId::LongoEquality, m.to_string(), Some(3), Some(3)));
        }
    }
    out
}

/// Edges asserted as published facts, independent of the knot's shape.
pub fn published_edges() -> Vec<BandMoveEdge> {
    let six_one = || EdgeTarget::Slice { name: "6_1".to_string() };
    vec![
        BandMoveEdge {
            source: TorusKnotClass::Torus { p: 4, q: 9 },
            target: six_one(),
            moves: 1,
            origin: RuleId::LobbEdge,
        },
        BandMoveEdge {
            source: TorusKnotClass::Torus { p: 4, q: 11 },
            target: six_one(),
            moves: 1,
            origin: RuleId::TairiEdge,
        },
    ]
}

/// The set of enabled rules plus extra band-move edges. Immutable once built;
/// `derive` may be called concurrently.
#[derive(Debug, Clone)]
pub struct RuleBase {
    disabled: BTreeSet<RuleId>,
    edges: Vec<BandMoveEdge>,
}

impl Default for RuleBase {
    fn default() -> Self {
        Self::standard()
    }
}

impl RuleBase {
    /// Rules that are catalogued but off by default. The Tairi family formula,
    /// as transcribed, contradicts the pinch and window bounds (e.g. it puts
    /// γ₄(T(4,23)) = 3 above ϑ = 2).
    pub const QUARANTINED: [RuleId; 1] = [RuleId::TairiFamily];

    /// Every sound rule, the published edges, no user edges.
    pub fn standard() -> Self {
        RuleBase { disabled: Self::QUARANTINED.into_iter().collect(), edges: published_edges() }
    }

    /// Every rule, including quarantined ones.
    pub fn everything() -> Self {
        RuleBase { disabled: BTreeSet::new(), edges: published_edges() }
    }

    pub fn without(mut self, rule: RuleId) -> Self {
        self.disabled.insert(rule);
        self
    }

    pub fn with(mut self, rule: RuleId) -> Self {
        self.disabled.remove(&rule);
        self
    }

    pub fn with_edges(mut self, edges: impl IntoIterator<Item = BandMoveEdge>) -> Self {
        self.edges.extend(edges);
        self
    }

    pub fn is_enabled(&self, rule: RuleId) -> bool {
        !self.disabled.contains(&rule)
    }

    pub fn enabled(&self) -> impl Iterator<Item = RuleId> + '_ {
        RuleId::ALL.into_iter().filter(|r| self.is_enabled(*r))
    }

    /// Edges leaving `k` that this rule base knows about.
    pub fn edges_from(&self, k: TorusKnotClass) -> Result<Vec<BandMoveEdge>, BoundsError> {
        let mut out: Vec<_> = self.edges.iter().filter(|e| e.source == k).cloned().collect();
        if let TorusKnotClass::Torus { .. } = k {
            out.push(BandMoveEdge {
                source: k,
                target: EdgeTarget::Torus { knot: knot::pinch_move(k)? },
                moves: 1,
                origin: RuleId::PinchEdge,
            });
        }
        for m in families::detect_membership(k) {
            let sign = match m.family {
                FamilyId::SquarePlus => Sign::Plus,
                FamilyId::SquareMinus => Sign::Minus,
                _ => continue,
            };
            if !m.in_range() {
                continue;
            }
            let n = m.n.unwrap_or(0);
            out.push(BandMoveEdge {
                source: k,
                target: EdgeTarget::TwoBridge { fraction: two_bridge::k1_two_bridge(n, sign)? },
                moves: 2 * n - 1,
                origin: RuleId::SquareSurgeryEdge,
            });
        }
        Ok(out)
    }

    pub fn derive(&self, k: TorusKnotClass) -> Result<Gamma4Interval, BoundsError> {
        self.derive_cached(k, &mut HashMap::new())
    }

    /// As [`RuleBase::derive`], reusing intervals already derived with this
    /// rule base.
    pub fn derive_cached(
        &self,
        k: TorusKnotClass,
        cache: &mut HashMap<TorusKnotClass, Gamma4Interval>,
    ) -> Result<Gamma4Interval, BoundsError> {
        let mut stack = Vec::new();
        self.derive_inner(k, cache, &mut stack)
    }

    fn derive_inner(
        &self,
        k: TorusKnotClass,
        cache: &mut HashMap<TorusKnotClass, Gamma4Interval>,
        stack: &mut Vec<TorusKnotClass>,
    ) -> Result<Gamma4Interval, BoundsError> {
        if let Some(hit) = cache.get(&k) {
            return Ok(hit.clone());
        }
        if k.is_unknot() {
            let iv = rule_slice_convention(k)?;
            cache.insert(k, iv.clone());
            return Ok(iv);
        }
        stack.push(k);
        let mut iv = Gamma4Interval::unconstrained();
        let mut apps = Vec::new();
        if self.is_enabled(RuleId::PinchNumber) {
            apps.push(rule_pinch_upper(k)?);
        }
        if self.is_enabled(RuleId::Window) {
            apps.extend(rule_window(k));
        }
        apps.extend(rule_known_families(k).into_iter().filter(|a| self.is_enabled(a.rule)));
        for edge in self.edges_from(k)? {
            // a zero-move edge says nothing
            if !self.is_enabled(edge.origin) || edge.moves == 0 {
                continue;
            }
            let target = match &edge.target {
                EdgeTarget::Slice { .. } => Some(IntervalBounds { lower: 0, upper: 0 }),
                EdgeTarget::TwoBridge { fraction } => two_bridge::slice_obstruction(*fraction)?
                    .necessary_conditions_pass()
                    .then_some(IntervalBounds { lower: 0, upper: 0 }),
                EdgeTarget::Torus { knot } if stack.contains(knot) => None,
                EdgeTarget::Torus { knot } => Some(self.derive_inner(*knot, cache, stack)?.bounds()),
            };
            if let Some(target) = target {
                apps.push(rule_band_move(k, &edge, target)?);
            }
        }
        for app in apps {
            iv.tighten(app);
        }
        stack.pop();
        if iv.lower > iv.upper {
            return Err(BoundsError::InconsistentBounds {
                knot: k,
                lower: iv.lower,
                upper: iv.upper,
                provenance: iv.provenance,
            });
        }
        // Rules only read other knots' intervals, so one pass is a fixed point
        // unless a user edge closes a cycle; those targets are skipped above.
        if stack.is_empty() || !self.edges.iter().any(|e| e.origin == RuleId::UserEdge) {
            cache.insert(k, iv.clone());
        }
        Ok(iv)
    }
}

/// Derives with the standard rule base plus `extra_edges`.
pub fn derive(k: TorusKnotClass, extra_edges: &[BandMoveEdge]) -> Result<Gamma4Interval, BoundsError> {
    RuleBase::standard().with_edges(extra_edges.iter().cloned()).derive(k)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EdgeParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    Knot { line: usize, source: KnotError },
    #[error("line {line}: {source}")]
    TwoBridge { line: usize, source: TwoBridgeError },
    #[error("line {line}: {fraction} fails the slice necessary conditions")]
    NotSliceCandidate { line: usize, fraction: TwoBridgeFraction },
}

/// Parses a band-move edge list. One edge per line,
/// `source_p source_q kind target... moves`, where `kind` is one of
/// `torus P Q`, `slice NAME` or `twobridge P Q`. `#` starts a comment.
pub fn parse_edge_list(text: &str) -> Result<Vec<BandMoveEdge>, EdgeParseError> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let syntax = |message: String| EdgeParseError::Syntax { line, message };
        let num = |s: &str| s.parse::<u64>().map_err(|_| syntax(format!("expected a non-negative integer, got `{s}`")));
        let expected_len = match fields.get(2).copied() {
            Some("torus" | "twobridge") => 6,
            Some("slice") => 5,
            Some(other) => return Err(syntax(format!("unknown target kind `{other}`"))),
            None => return Err(syntax("expected `source_p source_q kind target... moves`".into())),
        };
        if fields.len() != expected_len {
            return Err(syntax(format!("expected {expected_len} fields, got {}", fields.len())));
        }
        let source = TorusKnotClass::new(num(fields[0])?, num(fields[1])?)
            .map_err(|source| EdgeParseError::Knot { line, source })?;
        let target = match fields[2] {
            "torus" => EdgeTarget::Torus {
                knot: TorusKnotClass::new(num(fields[3])?, num(fields[4])?)
                    .map_err(|source| EdgeParseError::Knot { line, source })?,
            },
            "slice" => EdgeTarget::Slice { name: fields[3].to_string() },
            _ => {
                let (p, q) = (num(fields[3])? as i64, num(fields[4])? as i64);
                let fraction = TwoBridgeFraction::from_pair(p, q)
                    .map_err(|source| EdgeParseError::TwoBridge { line, source })?;
                let report = two_bridge::slice_obstruction(fraction)
                    .map_err(|source| EdgeParseError::TwoBridge { line, source })?;
                if !report.necessary_conditions_pass() {
                    return Err(EdgeParseError::NotSliceCandidate { line, fraction });
                }
                EdgeTarget::TwoBridge { fraction }
            }
        };
        let moves = num(fields[expected_len - 1])?;
        if moves == 0 {
            return Err(syntax("move count must be at least 1".into()));
        }
        out.push(BandMoveEdge::new(source, target, moves));
    }
    Ok(out)
}
