//! Torus knots, modular inverses and the pinch-move engine.
//!
//! A pinch move is an unoriented band move between adjacent strands of the
//! standard diagram of `T(p,q)`. Applied to the canonical pair it yields
//! `T(|p - 2t|, |q - 2h|)` where `t = -q^{-1} mod p` and `h = p^{-1} mod q`.
//! Iterating until the unknot is reached gives the pinch number ϑ.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted torus parameter. Keeps `|q - 2h|` inside `i64`.
pub const MAX_PARAM: u64 = (i64::MAX as u64) / 2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("gcd({p}, {q}) = {gcd}: T({p},{q}) is a torus link, not a knot")]
    NotCoprime { p: u64, q: u64, gcd: u64 },
    #[error("{a} has no inverse modulo {m}")]
    NotInvertible { a: i64, m: u64 },
    #[error("the unknot admits no pinch move")]
    UnknotHasNoPinch,
    #[error("pinch trajectory from {start} exceeded {cap} steps")]
    IterationCapExceeded { start: TorusKnotClass, cap: u64 },
    #[error("torus parameter {0} exceeds the supported range")]
    TooLarge(u64),
    #[error("modulus must be positive")]
    ZeroModulus,
}

/// An unoriented torus knot class: the unknot or `T(p,q)` with `2 <= p < q`
/// and `gcd(p,q) = 1`.
///
/// Construct through [`TorusKnotClass::new`] (or [`normalize_torus`]); the
/// serialized form is the canonical pair, with the unknot written `(1,1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "KnotPair", into = "KnotPair")]
pub enum TorusKnotClass {
    Unknot,
    Torus { p: u64, q: u64 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
struct KnotPair {
    p: u64,
    q: u64,
}

impl TryFrom<KnotPair> for TorusKnotClass {
    type Error = KnotError;

    fn try_from(pair: KnotPair) -> Result<Self, Self::Error> {
        TorusKnotClass::new(pair.p, pair.q)
    }
}

impl From<TorusKnotClass> for KnotPair {
    fn from(k: TorusKnotClass) -> Self {
        let (p, q) = k.pair();
        KnotPair { p, q }
    }
}

impl TorusKnotClass {
    pub fn new(p: u64, q: u64) -> Result<Self, KnotError> {
        normalize_torus(p, q)
    }

    /// Canonical pair; `(1,1)` for the unknot.
    pub fn pair(&self) -> (u64, u64) {
        match *self {
            TorusKnotClass::Unknot => (1, 1),
            TorusKnotClass::Torus { p, q } => (p, q),
        }
    }

    pub fn is_unknot(&self) -> bool {
        matches!(self, TorusKnotClass::Unknot)
    }
}

impl fmt::Display for TorusKnotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TorusKnotClass::Unknot => write!(f, "unknot"),
            TorusKnotClass::Torus { p, q } => write!(f, "T({p},{q})"),
        }
    }
}

/// Canonicalizes an unordered pair. A coordinate `<= 1` gives the unknot.
pub fn normalize_torus(p: u64, q: u64) -> Result<TorusKnotClass, KnotError> {
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    if lo <= 1 {
        return Ok(TorusKnotClass::Unknot);
    }
    if hi > MAX_PARAM {
        return Err(KnotError::TooLarge(hi));
    }
    let g = lo.gcd(&hi);
    if g > 1 {
        return Err(KnotError::NotCoprime { p, q, gcd: g });
    }
    Ok(TorusKnotClass::Torus { p: lo, q: hi })
}

/// Returns `x` in `0..m` with `a*x = 1 (mod m)`. For `m = 1` the answer is 0.
pub fn mod_inverse(a: i64, m: u64) -> Result<u64, KnotError> {
    if m == 0 {
        return Err(KnotError::ZeroModulus);
    }
    if m == 1 {
        return Ok(0);
    }
    let m_wide = i128::from(m);
    let a_red = i128::from(a).rem_euclid(m_wide);
    let ext = a_red.extended_gcd(&m_wide);
    if ext.gcd != 1 {
        return Err(KnotError::NotInvertible { a, m });
    }
    Ok(ext.x.rem_euclid(m_wide) as u64)
}

/// The residues `(t, h)` selecting the pinch move on `T(p,q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PinchSolution {
    pub t: u64,
    pub h: u64,
}

impl fmt::Display for PinchSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(t={}, h={})", self.t, self.h)
    }
}

pub fn pinch_solution(k: TorusKnotClass) -> Result<PinchSolution, KnotError> {
    let (p, q) = match k {
        TorusKnotClass::Unknot => return Err(KnotError::UnknotHasNoPinch),
        TorusKnotClass::Torus { p, q } => (p, q),
    };
    let q_inv = mod_inverse(q as i64, p)?;
    let t = (p - q_inv) % p;
    let h = mod_inverse(p as i64, q)?;
    Ok(PinchSolution { t, h })
}

/// One pinch move together with the residues that produced it.
pub fn pinch_step(k: TorusKnotClass) -> Result<(PinchSolution, TorusKnotClass), KnotError> {
    let sol = pinch_solution(k)?;
    let (p, q) = k.pair();
    let a = (p as i64 - 2 * sol.t as i64).unsigned_abs();
    let b = (q as i64 - 2 * sol.h as i64).unsigned_abs();
    Ok((sol, normalize_torus(a, b)?))
}

pub fn pinch_move(k: TorusKnotClass) -> Result<TorusKnotClass, KnotError> {
    pinch_step(k).map(|(_, next)| next)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchStep {
    pub knot: TorusKnotClass,
    pub solution: PinchSolution,
}

/// The sequence of pinch moves from a knot down to the unknot.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PinchTrajectory {
    pub start: TorusKnotClass,
    pub steps: Vec<PinchStep>,
    pub terminal: TorusKnotClass,
}

impl PinchTrajectory {
    /// ϑ of the starting knot.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Knots visited, starting knot first and unknot last.
    pub fn knots(&self) -> Vec<TorusKnotClass> {
        let mut out: Vec<_> = self.steps.iter().map(|s| s.knot).collect();
        out.push(self.terminal);
        out
    }
}

pub fn pinch_trajectory(k: TorusKnotClass) -> Result<PinchTrajectory, KnotError> {
    // each move lowers the smaller parameter by at least 2
    let cap = k.pair().0.div_ceil(2) + 1;
    let mut steps = Vec::new();
    let mut cur = k;
    while let TorusKnotClass::Torus { .. } = cur {
        if steps.len() as u64 >= cap {
            return Err(KnotError::IterationCapExceeded { start: k, cap });
        }
        let (solution, next) = pinch_step(cur)?;
        steps.push(PinchStep { knot: cur, solution });
        cur = next;
    }
    Ok(PinchTrajectory { start: k, steps, terminal: cur })
}

/// ϑ, the pinch number.
pub fn pinch_number(k: TorusKnotClass) -> Result<u64, KnotError> {
    pinch_trajectory(k).map(|t| t.len() as u64)
}

/// Closed form of ϑ for `T(p, kp ± 1)`. `None` when `q` is not `±1 mod p`.
pub fn theta_closed_form(k: TorusKnotClass) -> Option<u64> {
    let (p, q) = match k {
        TorusKnotClass::Unknot => return Some(0),
        TorusKnotClass::Torus { p, q } => (p, q),
    };
    let r = q % p;
    if r != 1 && r != p - 1 {
        return None;
    }
    Some(if p % 2 == 1 {
        (p - 1) / 2
    } else if q == p - 1 {
        // unreachable for the canonical pair, kept for the ordered statement
        (p - 2) / 2
    } else {
        p / 2
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(p: u64, q: u64) -> TorusKnotClass {
        TorusKnotClass::new(p, q).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(normalize_torus(9, 4), Ok(TorusKnotClass::Torus { p: 4, q: 9 }));
        assert_eq!(normalize_torus(1, 5), Ok(TorusKnotClass::Unknot));
        assert_eq!(normalize_torus(0, 5), Ok(TorusKnotClass::Unknot));
        assert_eq!(normalize_torus(0, 0), Ok(TorusKnotClass::Unknot));
        assert!(matches!(normalize_torus(4, 6), Err(KnotError::NotCoprime { gcd: 2, .. })));
        assert!(matches!(normalize_torus(3, MAX_PARAM + 2), Err(KnotError::TooLarge(_))));
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(9, 4), Ok(1));
        // brute force: 4*7 = 28 = 1 (mod 9)
        assert_eq!(mod_inverse(4, 9), Ok(7));
        assert_eq!(mod_inverse(2, 4), Err(KnotError::NotInvertible { a: 2, m: 4 }));
        assert_eq!(mod_inverse(5, 1), Ok(0));
        assert_eq!(mod_inverse(-1, 7), Ok(6));
        assert_eq!(mod_inverse(3, 0), Err(KnotError::ZeroModulus));
    }

    #[test]
    fn solutions() {
        assert_eq!(pinch_solution(t(4, 9)), Ok(PinchSolution { t: 3, h: 7 }));
        assert_eq!(pinch_solution(t(10, 19)), Ok(PinchSolution { t: 1, h: 2 }));
        assert_eq!(pinch_solution(t(6, 17)), Ok(PinchSolution { t: 1, h: 3 }));
        assert_eq!(pinch_solution(TorusKnotClass::Unknot), Err(KnotError::UnknotHasNoPinch));
    }

    #[test]
    fn moves() {
        assert_eq!(pinch_move(t(4, 9)), Ok(t(2, 5)));
        assert_eq!(pinch_move(t(10, 19)), Ok(t(8, 15)));
        assert_eq!(pinch_move(t(2, 3)), Ok(TorusKnotClass::Unknot));
        assert_eq!(pinch_move(TorusKnotClass::Unknot), Err(KnotError::UnknotHasNoPinch));
    }

    #[test]
    fn trajectories() {
        let tr = pinch_trajectory(t(4, 9)).unwrap();
        assert_eq!(tr.len(), 2);
        assert_eq!(tr.knots(), vec![t(4, 9), t(2, 5), TorusKnotClass::Unknot]);
        assert!(pinch_trajectory(TorusKnotClass::Unknot).unwrap().is_empty());
        assert_eq!(pinch_number(t(8, 7)), Ok(3));
    }

    #[test]
    fn closed_form() {
        assert_eq!(theta_closed_form(t(5, 11)), Some(2));
        assert_eq!(theta_closed_form(t(8, 15)), Some(4));
        assert_eq!(theta_closed_form(t(8, 7)), Some(3));
        assert_eq!(theta_closed_form(TorusKnotClass::Unknot), Some(0));
        assert_eq!(theta_closed_form(t(5, 7)), None);
    }

    #[test]
    fn serde_uses_canonical_pair() {
        let json = serde_json::to_string(&t(9, 4)).unwrap();
        assert_eq!(json, r#"{"p":4,"q":9}"#);
        let back: TorusKnotClass = serde_json::from_str(r#"{"p":1,"q":1}"#).unwrap();
        assert_eq!(back, TorusKnotClass::Unknot);
        assert!(serde_json::from_str::<TorusKnotClass>(r#"{"p":4,"q":6}"#).is_err());
    }
}
