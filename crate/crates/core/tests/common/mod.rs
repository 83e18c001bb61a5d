//! Complexes and strategies shared by the integration tests.
#![allow(dead_code)]

pub mod props;

use cfk_calc::cfk::CfkComplex;
use cfk_calc::knots::{class_complex, parse, square_summand};
use proptest::prelude::*;

pub fn knot(expr: &str) -> CfkComplex {
    class_complex(&parse(expr).unwrap())
        .unwrap()
        .complex()
        .clone()
}

/// Small knots whose complexes stay cheap under a couple of tensor products.
pub const CATALOG: &[&str] = &[
    "U",
    "T(2,3)",
    "-T(2,3)",
    "T(2,5)",
    "T(3,4)",
    "-T(3,4)",
    "T(3,5)",
    "C(T(2,3);2,3)",
];

pub fn catalog() -> impl Strategy<Value = (&'static str, CfkComplex)> {
    proptest::sample::select(CATALOG).prop_map(|e| (e, knot(e)))
}

/// Parameters `(alexander, maslov, h, v)` of an acyclic square.
pub type Square = (i64, i64, i64, i64);

pub fn square() -> impl Strategy<Value = Square> {
    (-2i64..=2, -4i64..=1, 1i64..=3, 1i64..=3)
}

pub fn with_squares(c: &CfkComplex, squares: &[Square]) -> CfkComplex {
    squares
        .iter()
        .enumerate()
        .fold(c.clone(), |acc, (n, &(a, m, h, v))| {
            acc.direct_sum(&square_summand(&format!("s{n}_"), a, m, h, v))
                .unwrap()
        })
}

/// Rewrites the complex in the basis where `x` is replaced by `x + y`.
/// Both must share their Alexander and Maslov gradings, which makes this a
/// graded, filtered isomorphism.
pub fn change_basis(c: &CfkComplex, x: usize, y: usize) -> CfkComplex {
    let (gx, gy) = (c.generator(x), c.generator(y));
    assert_eq!((gx.alexander, gx.maslov), (gy.alexander, gy.maslov));
    assert_ne!(x, y);
    let arrows: Vec<_> = c.arrows().cloned().collect();
    let mut out = c.clone();
    for a in &arrows {
        // d z = ... + U^n x = ... + U^n x' + U^n y
        if a.target == x {
            out.toggle_arrow(a.source, y, a.u_exp);
        }
        // d x' = d x + d y
        if a.source == y {
            out.toggle_arrow(x, a.target, a.u_exp);
        }
    }
    out
}

/// Applies basis changes picked by the seeds wherever two generators share
/// a bidegree.
pub fn scramble(c: &CfkComplex, seeds: &[(usize, usize)]) -> CfkComplex {
    let mut out = c.clone();
    for &(sx, sy) in seeds {
        let n = out.len();
        let x = sx % n;
        let g = out.generator(x).clone();
        let partners: Vec<usize> = (0..n)
            .filter(|&y| {
                y != x && {
                    let h = out.generator(y);
                    (h.alexander, h.maslov) == (g.alexander, g.maslov)
                }
            })
            .collect();
        if !partners.is_empty() {
            out = change_basis(&out, x, partners[sy % partners.len()]);
        }
    }
    out
}

pub fn seeds() -> impl Strategy<Value = Vec<(usize, usize)>> {
    proptest::collection::vec((any::<usize>(), any::<usize>()), 0..6)
}
