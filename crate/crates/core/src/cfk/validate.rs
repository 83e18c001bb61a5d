use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::{reduce, CfkComplex};
use crate::invariants::{region_complex, Region};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ViolationKind {
    NegativePower,
    /// The arrow raises the `j` filtration.
    FiltrationIncrease {
        j_drop: i64,
    },
    /// `M(target)` should be `M(source) - 1 + 2n`.
    Maslov {
        expected: i64,
        actual: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ArrowViolation {
    pub source: String,
    pub target: String,
    pub u_exp: i64,
    #[serde(flatten)]
    pub kind: ViolationKind,
}

/// `d^2 x` contains `U^power z` with coefficient 1.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DSquaredWitness {
    pub source: String,
    pub target: String,
    pub power: i64,
}

/// Counts that break `#{A=s, M=m} = #{A=-s, M=m-2s}` on the reduced complex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SymmetryMismatch {
    pub alexander: i64,
    pub maslov: i64,
    pub count: usize,
    pub mirrored_count: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct ValidationReport {
    pub arrow_violations: Vec<ArrowViolation>,
    pub d_squared: Vec<DSquaredWitness>,
    /// Only computed for knot-class checks on complexes with `d^2 = 0`.
    pub column_rank: Option<usize>,
    pub row_rank: Option<usize>,
    /// Warnings only; they do not affect `is_valid`.
    pub symmetry_warnings: Vec<SymmetryMismatch>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.arrow_violations.is_empty()
            && self.d_squared.is_empty()
            && self.column_rank.is_none_or(|r| r == 1)
            && self.row_rank.is_none_or(|r| r == 1)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "valid: {}", if self.is_valid() { "yes" } else { "no" })?;
        for v in &self.arrow_violations {
            let what = match &v.kind {
                ViolationKind::NegativePower => "negative U power".to_string(),
                ViolationKind::FiltrationIncrease { j_drop } => {
                    format!("raises the j filtration (drop {j_drop})")
                }
                ViolationKind::Maslov { expected, actual } => {
                    format!("target Maslov grading {actual}, expected {expected}")
                }
            };
            writeln!(
                f,
                "arrow {} -> {} u={}: {what}",
                v.source, v.target, v.u_exp
            )?;
        }
        for w in &self.d_squared {
            writeln!(f, "d^2 {} contains U^{} {}", w.source, w.power, w.target)?;
        }
        if let Some(r) = self.column_rank {
            writeln!(f, "column homology rank: {r}")?;
        }
        if let Some(r) = self.row_rank {
            writeln!(f, "row homology rank: {r}")?;
        }
        for s in &self.symmetry_warnings {
            writeln!(
                f,
                "warning: {} generators at (A,M)=({},{}) but {} at ({},{})",
                s.count,
                s.alexander,
                s.maslov,
                s.mirrored_count,
                -s.alexander,
                s.maslov - 2 * s.alexander
            )?;
        }
        Ok(())
    }
}

fn arrow_violations(c: &CfkComplex) -> Vec<ArrowViolation> {
    let mut out = Vec::new();
    for a in c.arrows() {
        let (s, t) = (c.generator(a.source), c.generator(a.target));
        let mut push = |kind| {
            out.push(ArrowViolation {
                source: s.name.clone(),
                target: t.name.clone(),
                u_exp: a.u_exp,
                kind,
            })
        };
        if a.u_exp < 0 {
            push(ViolationKind::NegativePower);
        }
        let j_drop = a.j_drop(c);
        if j_drop < 0 {
            push(ViolationKind::FiltrationIncrease { j_drop });
        }
        let expected = s.maslov - 1 + 2 * a.u_exp;
        if t.maslov != expected {
            push(ViolationKind::Maslov {
                expected,
                actual: t.maslov,
            });
        }
    }
    out
}

fn d_squared_witnesses(c: &CfkComplex) -> Vec<DSquaredWitness> {
    let out_adj = c.out_adjacency();
    let mut witnesses = Vec::new();
    for (x, first) in out_adj.iter().enumerate() {
        let mut parity: BTreeMap<(usize, i64), bool> = BTreeMap::new();
        for &(y, n1) in first {
            for &(z, n2) in &out_adj[y] {
                let e = parity.entry((z, n1 + n2)).or_insert(false);
                *e = !*e;
            }
        }
        for ((z, power), odd) in parity {
            if odd {
                witnesses.push(DSquaredWitness {
                    source: c.generator(x).name.clone(),
                    target: c.generator(z).name.clone(),
                    power,
                });
            }
        }
    }
    witnesses
}

fn symmetry_warnings(c: &CfkComplex) -> Vec<SymmetryMismatch> {
    let table = reduce(c).grading_table();
    let mut out = Vec::new();
    let keys: std::collections::BTreeSet<(i64, i64)> = table
        .keys()
        .flat_map(|&(a, m)| [(a, m), (-a, m - 2 * a)])
        .collect();
    for (a, m) in keys {
        let count = table.get(&(a, m)).copied().unwrap_or(0);
        let mirrored_count = table.get(&(-a, m - 2 * a)).copied().unwrap_or(0);
        if count != mirrored_count {
            out.push(SymmetryMismatch {
                alexander: a,
                maslov: m,
                count,
                mirrored_count,
            });
        }
    }
    out
}

/// Structural checks. With `as_knot_class`, also the column and row
/// homology ranks, which must both be 1.
pub fn validate(c: &CfkComplex, as_knot_class: bool) -> ValidationReport {
    let arrow_violations = arrow_violations(c);
    let d_squared = d_squared_witnesses(c);
    let mut report = ValidationReport {
        arrow_violations,
        d_squared,
        ..Default::default()
    };
    let is_complex = report.d_squared.is_empty()
        && report
            .arrow_violations
            .iter()
            .all(|v| matches!(v.kind, ViolationKind::Maslov { .. }));
    if as_knot_class && is_complex {
        report.column_rank = Some(region_complex(c, &Region::Column0).homology().rank());
        report.row_rank = Some(region_complex(c, &Region::Row(0)).homology().rank());
    }
    if report.arrow_violations.is_empty() && report.d_squared.is_empty() {
        report.symmetry_warnings = symmetry_warnings(c);
    }
    report
}
