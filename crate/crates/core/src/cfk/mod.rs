//! Bifiltered chain complexes over F2[U, U^-1].
//!
//! Every generator is stored at `i = 0`; an arrow `x -> y` with power `n`
//! means `U^n y` occurs in the boundary of `x`. `U^k x` sits at lattice
//! position `(-k, A(x) - k)`.

mod ops;
mod text;
mod validate;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

pub use ops::{dual, reduce, tensor};
pub use text::ParseError;
pub use validate::{
    validate, ArrowViolation, DSquaredWitness, SymmetryMismatch, ValidationReport, ViolationKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfkError {
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("invalid generator name {0:?}: names must be non-empty and contain no whitespace")]
    InvalidName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub alexander: i64,
    pub maslov: i64,
}

/// Indices refer to `CfkComplex::generators()`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub u_exp: i64,
}

impl Arrow {
    /// Drop in the `j` filtration: `A(source) - A(target) + n`.
    pub fn j_drop(&self, c: &CfkComplex) -> i64 {
        c.generators[self.source].alexander - c.generators[self.target].alexander + self.u_exp
    }

    pub fn is_vertical(&self) -> bool {
        self.u_exp == 0
    }

    pub fn is_horizontal(&self, c: &CfkComplex) -> bool {
        self.j_drop(c) == 0
    }
}

#[derive(Clone, Default)]
pub struct CfkComplex {
    generators: Vec<Generator>,
    by_name: HashMap<String, usize>,
    arrows: BTreeSet<Arrow>,
}

impl CfkComplex {
    pub fn new() -> Self {
        Self::default()
    }

    /// The complex of the unknot: one generator in bidegree `(0, 0)`.
    pub fn unknot() -> Self {
        let mut c = Self::new();
        c.add_generator("x0", 0, 0).expect("fresh complex");
        c
    }

    pub fn add_generator(
        &mut self,
        name: impl Into<String>,
        alexander: i64,
        maslov: i64,
    ) -> Result<usize, CfkError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(CfkError::InvalidName(name));
        }
        if self.by_name.contains_key(&name) {
            return Err(CfkError::DuplicateGenerator(name));
        }
        let idx = self.generators.len();
        self.by_name.insert(name.clone(), idx);
        self.generators.push(Generator {
            name,
            alexander,
            maslov,
        });
        Ok(idx)
    }

    /// Adds the arrow, or removes it if already present (coefficients are
    /// in F2).
    pub fn toggle_arrow(&mut self, source: usize, target: usize, u_exp: i64) {
        assert!(source < self.generators.len() && target < self.generators.len());
        let a = Arrow {
            source,
            target,
            u_exp,
        };
        if !self.arrows.remove(&a) {
            self.arrows.insert(a);
        }
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn generator(&self, idx: usize) -> &Generator {
        &self.generators[idx]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).copied()
    }

    pub fn arrows(&self) -> impl Iterator<Item = &Arrow> + '_ {
        self.arrows.iter()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn min_alexander(&self) -> Option<i64> {
        self.generators.iter().map(|g| g.alexander).min()
    }

    pub fn max_alexander(&self) -> Option<i64> {
        self.generators.iter().map(|g| g.alexander).max()
    }

    /// `max A - min A`, or 0 for the empty complex.
    pub fn alexander_width(&self) -> i64 {
        match (self.min_alexander(), self.max_alexander()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// Outgoing arrows per generator, as `(target, u_exp)`.
    pub fn out_adjacency(&self) -> Vec<Vec<(usize, i64)>> {
        let mut out = vec![Vec::new(); self.len()];
        for a in &self.arrows {
            out[a.source].push((a.target, a.u_exp));
        }
        out
    }

    /// Disjoint union; fails if a generator name occurs in both.
    pub fn direct_sum(&self, other: &CfkComplex) -> Result<CfkComplex, CfkError> {
        let mut out = self.clone();
        let offset = out.len();
        for g in &other.generators {
            out.add_generator(g.name.clone(), g.alexander, g.maslov)?;
        }
        for a in &other.arrows {
            out.toggle_arrow(a.source + offset, a.target + offset, a.u_exp);
        }
        Ok(out)
    }

    /// The same complex with generators sorted by `(A, M, name)`.
    pub fn canonical(&self) -> CfkComplex {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by(|&a, &b| {
            let (ga, gb) = (&self.generators[a], &self.generators[b]);
            (ga.alexander, ga.maslov, &ga.name).cmp(&(gb.alexander, gb.maslov, &gb.name))
        });
        let mut new_index = vec![0; self.len()];
        let mut out = CfkComplex::new();
        for (new, &old) in order.iter().enumerate() {
            new_index[old] = new;
            let g = &self.generators[old];
            out.add_generator(g.name.clone(), g.alexander, g.maslov)
                .expect("names already unique");
        }
        for a in &self.arrows {
            out.arrows.insert(Arrow {
                source: new_index[a.source],
                target: new_index[a.target],
                u_exp: a.u_exp,
            });
        }
        out
    }

    /// Generator counts per `(A, M)`.
    pub fn grading_table(&self) -> std::collections::BTreeMap<(i64, i64), usize> {
        let mut table = std::collections::BTreeMap::new();
        for g in &self.generators {
            *table.entry((g.alexander, g.maslov)).or_insert(0) += 1;
        }
        table
    }
}

impl PartialEq for CfkComplex {
    /// Equality up to the order generators were added in.
    fn eq(&self, other: &Self) -> bool {
        self.to_text() == other.to_text()
    }
}

impl Eq for CfkComplex {}

impl fmt::Debug for CfkComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::CfkComplex;

    /// `x0 (1,0), x1 (0,-1), x2 (-1,-2)` with `d x1 = U x0 + x2`.
    pub fn trefoil() -> CfkComplex {
        let mut c = CfkComplex::new();
        let x0 = c.add_generator("x0", 1, 0).unwrap();
        let x1 = c.add_generator("x1", 0, -1).unwrap();
        let x2 = c.add_generator("x2", -1, -2).unwrap();
        c.toggle_arrow(x1, x0, 1);
        c.toggle_arrow(x1, x2, 0);
        c
    }
}
