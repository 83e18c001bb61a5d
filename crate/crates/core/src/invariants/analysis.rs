use serde::Serialize;
use thiserror::Error;

use super::region::{region_complex, Element, Region, RegionComplex};
use crate::cfk::CfkComplex;
use crate::gf2::{kernel_and_image, BitVec, Echelon};
use crate::laurent::StaircaseExponents;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("column homology has rank {0}, expected 1")]
    RankNotOne(usize),
    #[error("epsilon is {0}, expected 1")]
    EpsilonNotOne(i8),
    #[error("no s <= {0} makes the truncated hook map trivial")]
    SearchExhausted(i64),
    #[error("inconsistent complex: {0}")]
    InternalInconsistency(String),
    #[error("staircase has a single generator; a1 and a2 are undefined")]
    TooShort,
}

/// The column complex together with a cycle generating its homology.
///
/// The representative is supported in `j <= tau`.
#[derive(Debug, Clone)]
pub struct VerticalClass {
    pub tau: i64,
    pub column: RegionComplex,
    pub representative: BitVec,
    column_boundaries: Echelon,
}

impl VerticalClass {
    pub fn new(c: &CfkComplex) -> Result<Self, InvariantError> {
        let column = region_complex(c, &Region::Column0);
        let homology = column.homology();
        if homology.rank() != 1 {
            return Err(InvariantError::RankNotOne(homology.rank()));
        }
        let boundaries = homology.boundaries;
        let lo = c.min_alexander().expect("rank one implies generators");
        let hi = c.max_alexander().expect("rank one implies generators");
        for s in lo..=hi {
            let below: Vec<usize> = (0..column.len())
                .filter(|&e| column.elements()[e].j <= s)
                .collect();
            let images: Vec<BitVec> = below
                .iter()
                .map(|&e| column.boundary_of_element(e).clone())
                .collect();
            let (kernel, _) = kernel_and_image(column.len(), &images);
            for combo in kernel {
                let cycle = BitVec::from_indices(column.len(), combo.ones().map(|n| below[n]));
                if !boundaries.contains(&cycle) {
                    return Ok(Self {
                        tau: s,
                        column,
                        representative: cycle,
                        column_boundaries: boundaries,
                    });
                }
            }
        }
        unreachable!("the full column carries the nonzero class")
    }

    /// Same class, different cycle: adds `d(chain)` to the representative.
    /// Every answer below must be unchanged by this.
    pub fn shifted_by_boundary(&self, chain: &BitVec) -> Self {
        let mut other = self.clone();
        other.representative ^= &self.column.boundary(chain);
        other
    }

    pub fn is_column_boundary(&self, chain: &BitVec) -> bool {
        self.column_boundaries.contains(chain)
    }

    /// Whether the image of the class in `C{region}` (drop what is not in
    /// the region) is zero in homology.
    fn maps_to_zero(&self, c: &CfkComplex, region: Region) -> bool {
        let rc = region_complex(c, &region);
        let image = rc.transfer_from(&self.column, &self.representative);
        debug_assert!(rc.is_cycle(&image));
        rc.boundaries().contains(&image)
    }

    /// `F_s`: column to the hook `min(i, j - s) = 0`.
    pub fn f_map_trivial(&self, c: &CfkComplex, s: i64) -> bool {
        self.maps_to_zero(c, Region::FullHook(s))
    }

    /// `G_s`: the hook `max(i, j - s) = 0` to the column. Trivial when no
    /// cycle of the hook projects onto the nonzero class.
    pub fn g_map_trivial(&self, c: &CfkComplex, s: i64) -> bool {
        let rc = region_complex(c, &Region::GHook(s));
        let homology = rc.homology();
        homology
            .cycles
            .iter()
            .all(|z| self.is_column_boundary(&self.column.transfer_from(&rc, z)))
    }

    pub fn epsilon(&self, c: &CfkComplex) -> Result<i8, InvariantError> {
        let f = self.f_map_trivial(c, self.tau);
        let g = self.g_map_trivial(c, self.tau);
        match (f, g) {
            (true, false) => Ok(1),
            (false, true) => Ok(-1),
            (false, false) => Ok(0),
            (true, true) => Err(InvariantError::InternalInconsistency(format!(
                "F and G are both trivial at tau = {}",
                self.tau
            ))),
        }
    }

    /// `epsilon` computed a second way, inside the row `j = tau`: is the
    /// class a horizontal boundary (+1), not a horizontal cycle (-1), or a
    /// cycle that is not a boundary (0)? Since the column representative is
    /// only defined up to column boundaries, both questions are asked
    /// modulo the part of those boundaries that lands in the row.
    pub fn epsilon_oracle(&self, c: &CfkComplex) -> Result<i8, InvariantError> {
        let tau = self.tau;
        let row = region_complex(c, &Region::Row(tau));
        let col = &self.column;
        let x_tau = row.transfer_from(col, &self.representative);

        // column chains whose boundary vanishes above the row
        let above: Vec<BitVec> = (0..col.len())
            .map(|e| col.mask(col.boundary_of_element(e), |el| el.j > tau))
            .collect();
        let (kernel, _) = kernel_and_image(col.len(), &above);
        let ambiguity: Vec<BitVec> = kernel
            .iter()
            .map(|w| row.transfer_from(col, &col.boundary(w)))
            .collect();

        let right = |el: &Element| el.i >= 0;
        let left = |el: &Element| el.i < 0;

        let mut hit = Echelon::new(row.len());
        for v in &ambiguity {
            hit.insert(row.mask(v, right));
        }
        for (e, el) in row.elements().iter().enumerate() {
            if right(el) {
                hit.insert(row.mask(row.boundary_of_element(e), right));
            }
        }
        let is_boundary = hit.contains(&row.mask(&x_tau, right));

        let mut killed = Echelon::new(row.len());
        for v in &ambiguity {
            killed.insert(row.mask(&row.boundary(v), left));
        }
        for (e, el) in row.elements().iter().enumerate() {
            if left(el) {
                killed.insert(row.mask(row.boundary_of_element(e), left));
            }
        }
        let is_cycle = killed.contains(&row.mask(&row.boundary(&x_tau), left));

        match (is_boundary, is_cycle) {
            (true, true) => Ok(1),
            (false, false) => Ok(-1),
            (false, true) => Ok(0),
            (true, false) => Err(InvariantError::InternalInconsistency(
                "the row class is a boundary but not a cycle".into(),
            )),
        }
    }

    /// Least `s >= 0` for which the class dies in the truncated hook
    /// `min(i, j - tau) = 0, i <= s`.
    pub fn a1(&self, c: &CfkComplex) -> Result<i64, InvariantError> {
        let eps = self.epsilon(c)?;
        if eps != 1 {
            return Err(InvariantError::EpsilonNotOne(eps));
        }
        self.a1_unchecked(c)
    }

    fn a1_unchecked(&self, c: &CfkComplex) -> Result<i64, InvariantError> {
        let w = c.alexander_width();
        (0..=w)
            .find(|&s| self.maps_to_zero(c, Region::TruncatedHook { tau: self.tau, s }))
            .ok_or(InvariantError::SearchExhausted(w))
    }

    /// Least `s >= 1` for which the class survives once the vertical tail
    /// `i = a1, tau - s <= j < tau` is attached; `None` when no such `s`.
    pub fn a2(&self, c: &CfkComplex) -> Result<Option<i64>, InvariantError> {
        let a1 = self.a1(c)?;
        Ok(self.a2_given(c, a1))
    }

    fn a2_given(&self, c: &CfkComplex, a1: i64) -> Option<i64> {
        let w = c.alexander_width();
        (1..=w).find(|&s| {
            !self.maps_to_zero(
                c,
                Region::HookWithTail {
                    tau: self.tau,
                    a1,
                    s,
                },
            )
        })
    }

    /// All four invariants; `a1`, `a2` only when `epsilon = 1`.
    pub fn invariants(&self, c: &CfkComplex) -> Result<Invariants, InvariantError> {
        let epsilon = self.epsilon(c)?;
        let (a1, a2) = if epsilon == 1 {
            let a1 = self.a1_unchecked(c)?;
            (Some(a1), self.a2_given(c, a1))
        } else {
            (None, None)
        };
        Ok(Invariants {
            tau: self.tau,
            epsilon,
            a1,
            a2,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Invariants {
    pub tau: i64,
    pub epsilon: i8,
    pub a1: Option<i64>,
    pub a2: Option<i64>,
}

pub fn vertical_class(c: &CfkComplex) -> Result<VerticalClass, InvariantError> {
    VerticalClass::new(c)
}

pub fn tau(c: &CfkComplex) -> Result<i64, InvariantError> {
    Ok(VerticalClass::new(c)?.tau)
}

pub fn f_map_trivial(c: &CfkComplex, s: i64) -> Result<bool, InvariantError> {
    Ok(VerticalClass::new(c)?.f_map_trivial(c, s))
}

pub fn g_map_trivial(c: &CfkComplex, s: i64) -> Result<bool, InvariantError> {
    Ok(VerticalClass::new(c)?.g_map_trivial(c, s))
}

pub fn epsilon(c: &CfkComplex) -> Result<i8, InvariantError> {
    VerticalClass::new(c)?.epsilon(c)
}

pub fn epsilon_oracle(c: &CfkComplex) -> Result<i8, InvariantError> {
    VerticalClass::new(c)?.epsilon_oracle(c)
}

pub fn a1(c: &CfkComplex) -> Result<i64, InvariantError> {
    VerticalClass::new(c)?.a1(c)
}

pub fn a2(c: &CfkComplex) -> Result<Option<i64>, InvariantError> {
    VerticalClass::new(c)?.a2(c)
}

pub fn invariants(c: &CfkComplex) -> Result<Invariants, InvariantError> {
    VerticalClass::new(c)?.invariants(c)
}

/// `(n0 - n1, n1 - n2)` read off the staircase exponents.
pub fn staircase_a_invariants(e: &StaircaseExponents) -> Result<(i64, i64), InvariantError> {
    match e.as_slice() {
        [n0, n1, n2, ..] => Ok((n0 - n1, n1 - n2)),
        _ => Err(InvariantError::TooShort),
    }
}
