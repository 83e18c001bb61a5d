//! Finite subquotient complexes `C{S}` cut out of the `(i, j)` plane.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::cfk::CfkComplex;
use crate::gf2::{kernel_and_image, BitVec, Echelon};

/// Lattice regions made of finitely many vertical and horizontal segments.
/// All of them are order-convex, so the induced differential squares to zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Region {
    /// `{i = 0}`
    Column0,
    /// `{i = 0, j >= s} ∪ {j = s, i >= 0}`
    FullHook(i64),
    /// `{i = 0, j <= s} ∪ {j = s, i <= 0}`
    GHook(i64),
    /// `{i = 0, j >= tau} ∪ {j = tau, 0 <= i <= s}`
    TruncatedHook { tau: i64, s: i64 },
    /// `TruncatedHook(tau, a1) ∪ {i = a1, tau - s <= j < tau}`
    HookWithTail { tau: i64, a1: i64, s: i64 },
    /// `{j = s}`
    Row(i64),
    /// `{i = 0, j <= s}`
    ColumnBelow(i64),
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Region::Column0 => write!(f, "column i=0"),
            Region::FullHook(s) => write!(f, "hook min(i, j-{s})=0"),
            Region::GHook(s) => write!(f, "hook max(i, j-{s})=0"),
            Region::TruncatedHook { tau, s } => write!(f, "hook min(i, j-{tau})=0, i<={s}"),
            Region::HookWithTail { tau, a1, s } => {
                write!(
                    f,
                    "hook min(i, j-{tau})=0, i<={a1} with tail i={a1}, {}<=j<{tau}",
                    tau - s
                )
            }
            Region::Row(s) => write!(f, "row j={s}"),
            Region::ColumnBelow(s) => write!(f, "column i=0, j<={s}"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Segment {
    Vertical {
        i: i64,
        j_min: Option<i64>,
        j_max: Option<i64>,
    },
    Horizontal {
        j: i64,
        i_min: Option<i64>,
        i_max: Option<i64>,
    },
}

fn within(v: i64, lo: Option<i64>, hi: Option<i64>) -> bool {
    lo.is_none_or(|lo| v >= lo) && hi.is_none_or(|hi| v <= hi)
}

impl Segment {
    fn contains(&self, i: i64, j: i64) -> bool {
        match *self {
            Segment::Vertical { i: c, j_min, j_max } => i == c && within(j, j_min, j_max),
            Segment::Horizontal { j: c, i_min, i_max } => j == c && within(i, i_min, i_max),
        }
    }

    /// The U-power `k` at which `U^k x` (on the diagonal `j - i = A`) meets
    /// this segment, if it does.
    fn meet(&self, alexander: i64) -> Option<i64> {
        let k = match *self {
            Segment::Vertical { i, .. } => -i,
            Segment::Horizontal { j, .. } => alexander - j,
        };
        self.contains(-k, alexander - k).then_some(k)
    }
}

impl Region {
    fn segments(&self) -> Vec<Segment> {
        use Segment::{Horizontal, Vertical};
        match *self {
            Region::Column0 => vec![Vertical {
                i: 0,
                j_min: None,
                j_max: None,
            }],
            Region::FullHook(s) => vec![
                Vertical {
                    i: 0,
                    j_min: Some(s),
                    j_max: None,
                },
                Horizontal {
                    j: s,
                    i_min: Some(0),
                    i_max: None,
                },
            ],
            Region::GHook(s) => vec![
                Vertical {
                    i: 0,
                    j_min: None,
                    j_max: Some(s),
                },
                Horizontal {
                    j: s,
                    i_min: None,
                    i_max: Some(0),
                },
            ],
            Region::TruncatedHook { tau, s } => vec![
                Vertical {
                    i: 0,
                    j_min: Some(tau),
                    j_max: None,
                },
                Horizontal {
                    j: tau,
                    i_min: Some(0),
                    i_max: Some(s),
                },
            ],
            Region::HookWithTail { tau, a1, s } => {
                let mut segs = Region::TruncatedHook { tau, s: a1 }.segments();
                if s > 0 {
                    segs.push(Vertical {
                        i: a1,
                        j_min: Some(tau - s),
                        j_max: Some(tau - 1),
                    });
                }
                segs
            }
            Region::Row(s) => vec![Horizontal {
                j: s,
                i_min: None,
                i_max: None,
            }],
            Region::ColumnBelow(s) => vec![Vertical {
                i: 0,
                j_min: None,
                j_max: Some(s),
            }],
        }
    }

    pub fn contains(&self, i: i64, j: i64) -> bool {
        self.segments().iter().any(|seg| seg.contains(i, j))
    }
}

/// `U^k x` at lattice position `(i, j) = (-k, A(x) - k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element {
    pub generator: usize,
    pub k: i64,
    pub i: i64,
    pub j: i64,
}

/// The finite F2 complex `C{R}`; chains are bit vectors over `elements()`.
#[derive(Debug, Clone)]
pub struct RegionComplex {
    elements: Vec<Element>,
    index: HashMap<(usize, i64), usize>,
    boundary: Vec<BitVec>,
}

/// Cycle basis and boundary space of a region complex.
#[derive(Debug, Clone)]
pub struct Homology {
    pub cycles: Vec<BitVec>,
    pub boundaries: Echelon,
}

impl Homology {
    pub fn rank(&self) -> usize {
        self.cycles.len() - self.boundaries.rank()
    }

    pub fn is_boundary(&self, chain: &BitVec) -> bool {
        self.boundaries.contains(chain)
    }
}

/// Builds `C{R}`: every intersection of a generator's diagonal with `R`,
/// and every arrow whose both ends land in `R`.
pub fn region_complex(c: &CfkComplex, region: &Region) -> RegionComplex {
    let segments = region.segments();
    let mut set = BTreeSet::new();
    for (x, g) in c.generators().iter().enumerate() {
        for seg in &segments {
            if let Some(k) = seg.meet(g.alexander) {
                set.insert(Element {
                    generator: x,
                    k,
                    i: -k,
                    j: g.alexander - k,
                });
            }
        }
    }
    let elements: Vec<Element> = set.into_iter().collect();
    let index: HashMap<(usize, i64), usize> = elements
        .iter()
        .enumerate()
        .map(|(n, e)| ((e.generator, e.k), n))
        .collect();
    let out_adj = c.out_adjacency();
    let boundary = elements
        .iter()
        .map(|e| {
            let mut v = BitVec::zeros(elements.len());
            for &(y, n) in &out_adj[e.generator] {
                if let Some(&t) = index.get(&(y, e.k + n)) {
                    v.toggle(t);
                }
            }
            v
        })
        .collect();
    let rc = RegionComplex {
        elements,
        index,
        boundary,
    };
    debug_assert!(
        rc.len() > 256 || rc.squares_to_zero(),
        "region {region} is not a subquotient complex"
    );
    rc
}

impl RegionComplex {
    pub fn elements(&self) -> &[Element] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn index_of(&self, generator: usize, k: i64) -> Option<usize> {
        self.index.get(&(generator, k)).copied()
    }

    pub fn zero_chain(&self) -> BitVec {
        BitVec::zeros(self.len())
    }

    /// Boundary of a single element.
    pub fn boundary_of_element(&self, e: usize) -> &BitVec {
        &self.boundary[e]
    }

    pub fn boundary(&self, chain: &BitVec) -> BitVec {
        let mut out = self.zero_chain();
        for e in chain.ones() {
            out ^= &self.boundary[e];
        }
        out
    }

    pub fn is_cycle(&self, chain: &BitVec) -> bool {
        self.boundary(chain).is_zero()
    }

    pub fn squares_to_zero(&self) -> bool {
        self.boundary.iter().all(|b| self.boundary(b).is_zero())
    }

    pub fn homology(&self) -> Homology {
        let (cycles, boundaries) = kernel_and_image(self.len(), &self.boundary);
        Homology { cycles, boundaries }
    }

    /// Only the boundary space, skipping the kernel.
    pub fn boundaries(&self) -> Echelon {
        Echelon::from_vectors(self.len(), self.boundary.iter())
    }

    /// Sends each element of `other` to the element of `self` with the same
    /// generator and U-power, dropping those not present. Between nested
    /// regions this realizes the quotient and inclusion maps.
    pub fn transfer_from(&self, other: &RegionComplex, chain: &BitVec) -> BitVec {
        let mut out = self.zero_chain();
        for e in chain.ones() {
            let el = &other.elements[e];
            if let Some(t) = self.index_of(el.generator, el.k) {
                out.toggle(t);
            }
        }
        out
    }

    /// Keeps only the coordinates whose element satisfies `keep`.
    pub fn mask(&self, chain: &BitVec, keep: impl Fn(&Element) -> bool) -> BitVec {
        BitVec::from_indices(
            self.len(),
            chain.ones().filter(|&e| keep(&self.elements[e])),
        )
    }
}
