use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::analysis::{epsilon, invariants};
use crate::cfk::{dual, reduce, tensor, validate, CfkComplex};
use crate::knots::trefoil_staircase;

pub type HfkTable = BTreeMap<(i64, i64), usize>;

/// Ranks of knot Floer homology of the Whitehead double of the trefoil,
/// keyed by `(A, M)`.
pub const WHITEHEAD_DOUBLE_RANKS: [((i64, i64), usize); 6] = [
    ((1, 0), 2),
    ((1, -1), 2),
    ((0, -1), 3),
    ((0, -2), 4),
    ((-1, -2), 2),
    ((-1, -3), 2),
];

/// Generator counts per `(A, M)` of the reduced complex, which equal the
/// ranks of the associated graded homology.
pub fn hfk_table(c: &CfkComplex) -> HfkTable {
    reduce(c).grading_table()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WhiteheadModelReport {
    pub valid_complex: bool,
    pub table_matches: bool,
    pub tau: Option<i64>,
    pub epsilon: Option<i8>,
    /// `epsilon` of the candidate minus the trefoil.
    pub difference_epsilon: Option<i8>,
}

impl WhiteheadModelReport {
    pub fn table_ok(&self) -> bool {
        self.table_matches
    }

    pub fn invariants_ok(&self) -> bool {
        self.tau == Some(1) && self.epsilon == Some(1)
    }

    pub fn class_ok(&self) -> bool {
        self.difference_epsilon == Some(0)
    }

    pub fn passes(&self) -> bool {
        self.valid_complex && self.table_ok() && self.invariants_ok() && self.class_ok()
    }
}

impl fmt::Display for WhiteheadModelReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = |ok: bool| if ok { "pass" } else { "fail" };
        let show = |v: Option<i64>| v.map_or("n/a".to_string(), |v| v.to_string());
        writeln!(f, "valid complex: {}", mark(self.valid_complex))?;
        writeln!(f, "rank table: {}", mark(self.table_ok()))?;
        writeln!(
            f,
            "tau = 1 and epsilon = 1: {} (tau {}, epsilon {})",
            mark(self.invariants_ok()),
            show(self.tau),
            show(self.epsilon.map(i64::from))
        )?;
        writeln!(
            f,
            "same class as the trefoil: {} (epsilon of difference {})",
            mark(self.class_ok()),
            show(self.difference_epsilon.map(i64::from))
        )
    }
}

/// Checks a candidate complex for the Whitehead double of the trefoil
/// against its known rank table, `tau = epsilon = 1`, and equality of its
/// class with the trefoil's.
pub fn check_whitehead_model(c: &CfkComplex) -> WhiteheadModelReport {
    let valid_complex = validate(c, true).is_valid();
    let expected: HfkTable = WHITEHEAD_DOUBLE_RANKS.into_iter().collect();
    let table_matches = valid_complex && hfk_table(c) == expected;
    let inv = valid_complex.then(|| invariants(c).ok()).flatten();
    let difference_epsilon = valid_complex
        .then(|| epsilon(&reduce(&tensor(&dual(&trefoil_staircase()), c))).ok())
        .flatten();
    WhiteheadModelReport {
        valid_complex,
        table_matches,
        tau: inv.map(|i| i.tau),
        epsilon: inv.map(|i| i.epsilon),
        difference_epsilon,
    }
}
