//! Region complexes and the invariants `tau`, `epsilon`, `a1`, `a2`.

mod analysis;
mod model;
mod region;

pub use analysis::{
    a1, a2, epsilon, epsilon_oracle, f_map_trivial, g_map_trivial, invariants,
    staircase_a_invariants, tau, vertical_class, InvariantError, Invariants, VerticalClass,
};
pub use model::{
    check_whitehead_model, hfk_table, HfkTable, WhiteheadModelReport, WHITEHEAD_DOUBLE_RANKS,
};
pub use region::{region_complex, Element, Homology, Region, RegionComplex};
