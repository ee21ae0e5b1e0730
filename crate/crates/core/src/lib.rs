//! Pinch moves, pinch numbers and provenance-tracked bounds on the smooth
//! non-orientable four-genus γ₄ of torus knots.
//!
//! * [`knot`]: torus knot classes, modular inverses, pinch moves and ϑ.
//! * [`two_bridge`]: Schubert fractions, Alexander polynomials and the
//!   slice necessary conditions used for band-surgery endpoints.
//! * [`bounds`]: the γ₄ rule engine.
//! * [`families`]: the parametric torus-knot families, their pinch chains
//!   and the counterexample scanner.
//! * [`strands`]: strand-pair bookkeeping for the band surgeries on the
//!   square families.
//! * [`claims`]: end-to-end checks of every published statement.
//! * [`report`]: report documents and their JSON/CSV/text encodings.

use std::fmt;

use serde::{Deserialize, Serialize};

pub mod bounds;
pub mod claims;
pub mod families;
pub mod knot;
pub mod report;
pub mod strands;
pub mod two_bridge;

pub use bounds::{derive, Gamma4Interval, RuleBase, RuleId};
pub use families::{detect_membership, scan_counterexamples, CounterexampleRecord, FamilyId, FamilyParams};
pub use knot::{pinch_move, pinch_number, pinch_solution, pinch_trajectory, TorusKnotClass};

/// The `±` in family formulas such as `(2n ± 1)²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    /// `base ± delta`
    pub fn offset(self, base: i64, delta: i64) -> i64 {
        match self {
            Sign::Plus => base + delta,
            Sign::Minus => base - delta,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}
