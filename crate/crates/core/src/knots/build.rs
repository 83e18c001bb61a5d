use super::{KnotError, KnotExpr};
use crate::cfk::{dual, reduce, tensor, CfkComplex};
use crate::concordance::ClassRep;
use crate::laurent::{
    cable_alexander, staircase_exponents, torus_alexander, LaurentPoly, StaircaseExponents,
};

/// The staircase complex of an L-space knot with the given exponents.
///
/// Generators `x0..xk` with `A(x_i) = n_i - g`; each odd `x_i` has a
/// horizontal arrow to `x_{i-1}` and a vertical arrow to `x_{i+1}`.
pub fn staircase(e: &StaircaseExponents) -> CfkComplex {
    let n = e.as_slice();
    let g = e.genus();
    let mut c = CfkComplex::new();
    let mut maslov = 0;
    for (i, &ni) in n.iter().enumerate() {
        if i > 0 {
            let step = n[i - 1] - ni;
            maslov = if i % 2 == 1 {
                maslov + 1 - 2 * step
            } else {
                maslov - 1
            };
        }
        c.add_generator(format!("x{i}"), ni - g, maslov)
            .expect("fresh names");
    }
    for i in (1..n.len()).step_by(2) {
        c.toggle_arrow(i, i - 1, n[i - 1] - n[i]);
        c.toggle_arrow(i, i + 1, 0);
    }
    c
}

pub fn trefoil_staircase() -> CfkComplex {
    staircase(&StaircaseExponents::new(vec![2, 1, 0]).expect("valid exponents"))
}

/// A four-generator acyclic summand `b -> U^h a + c`, `a -> d`, `c -> U^h d`
/// with `b` in bidegree `(alexander, maslov)`, horizontal length `h` and
/// vertical length `v`. Generator names are `prefix` plus `b`, `a`, `c`, `d`.
pub fn square_summand(prefix: &str, alexander: i64, maslov: i64, h: i64, v: i64) -> CfkComplex {
    assert!(h >= 1 && v >= 1, "square sides must be positive");
    let mut c = CfkComplex::new();
    let mut add = |n: &str, a, m| {
        c.add_generator(format!("{prefix}{n}"), a, m)
            .expect("fresh")
    };
    let b = add("b", alexander, maslov);
    let a = add("a", alexander + h, maslov - 1 + 2 * h);
    let cc = add("c", alexander - v, maslov - 1);
    let d = add("d", alexander + h - v, maslov - 2 + 2 * h);
    c.toggle_arrow(b, a, h);
    c.toggle_arrow(b, cc, 0);
    c.toggle_arrow(a, d, 0);
    c.toggle_arrow(cc, d, h);
    c
}

/// Normalized Alexander polynomial. `D` has trivial polynomial; mirrors
/// share their polynomial; sums multiply.
pub fn alexander(e: &KnotExpr) -> Result<LaurentPoly, KnotError> {
    Ok(match e {
        KnotExpr::Unknot | KnotExpr::WhiteheadDoubleTrefoil => LaurentPoly::one(),
        &KnotExpr::Torus(p, q) => torus_alexander(p, q)?,
        KnotExpr::Cable(k, p, q) => cable_alexander(&alexander(k)?, *p, *q)?,
        KnotExpr::Sum(a, b) => alexander(a)?.checked_mul(&alexander(b)?)?.normalized(),
        KnotExpr::Mirror(k) => alexander(k)?,
    })
}

fn unsupported(e: &KnotExpr, reason: impl Into<String>) -> KnotError {
    KnotError::Unsupported {
        expr: e.to_string(),
        reason: reason.into(),
    }
}

fn contains_sum_or_mirror(e: &KnotExpr) -> bool {
    match e {
        KnotExpr::Sum(..) | KnotExpr::Mirror(..) => true,
        KnotExpr::Cable(k, ..) => contains_sum_or_mirror(k),
        _ => false,
    }
}

fn staircase_of(e: &KnotExpr, poly: &LaurentPoly) -> Result<CfkComplex, KnotError> {
    let exps = staircase_exponents(poly).map_err(|err| {
        unsupported(
            e,
            format!("Alexander polynomial {poly} is not an L-space knot's ({err})"),
        )
    })?;
    Ok(staircase(&exps))
}

/// The complex and any caveats attached to it.
fn build(e: &KnotExpr) -> Result<(CfkComplex, Vec<String>), KnotError> {
    Ok(match e {
        KnotExpr::Unknot => (CfkComplex::unknot(), Vec::new()),
        KnotExpr::WhiteheadDoubleTrefoil => (trefoil_staircase(), Vec::new()),
        &KnotExpr::Torus(p, q) => (staircase_of(e, &torus_alexander(p, q)?)?, Vec::new()),
        KnotExpr::Mirror(k) => {
            let (c, w) = build(k)?;
            (dual(&c), w)
        }
        KnotExpr::Sum(a, b) => {
            let (ca, mut wa) = build(a)?;
            let (cb, wb) = build(b)?;
            wa.extend(wb);
            (reduce(&tensor(&ca, &cb)), wa)
        }
        KnotExpr::Cable(k, p, q) => build_cable(e, k, *p, *q)?,
    })
}

fn build_cable(
    e: &KnotExpr,
    inner: &KnotExpr,
    p: i64,
    q: i64,
) -> Result<(CfkComplex, Vec<String>), KnotError> {
    if p == 1 {
        return build(inner);
    }
    let inner = inner.replace_whitehead_double();
    if contains_sum_or_mirror(&inner) {
        return Err(unsupported(
            e,
            "only cables of torus knots and their iterated cables are supported",
        ));
    }
    let delta = alexander(&inner)?;
    if delta == LaurentPoly::one() {
        // a cable of the unknot is a torus knot
        let t = staircase_of(e, &torus_alexander(p, q.abs())?)?;
        return Ok((if q < 0 { dual(&t) } else { t }, Vec::new()));
    }
    if q < 0 {
        return Err(unsupported(
            e,
            "negative cables of nontrivial knots are not L-space knots",
        ));
    }
    let genus = delta.max_exponent().unwrap_or(0) / 2;
    let poly = cable_alexander(&delta, p, q)?;
    let c = staircase_of(e, &poly)?;
    let mut warnings = Vec::new();
    if q < p * (2 * genus - 1) {
        warnings.push(format!(
            "{e}: q = {q} is below p(2g-1) = {} for the companion, so the cable is not known to be an L-space knot; its staircase is inferred from the Alexander polynomial alone",
            p * (2 * genus - 1)
        ));
    }
    Ok((c, warnings))
}

/// A reduced complex in the class of `e`.
///
/// `D` is represented by the trefoil, which has the same class; cables are
/// supported when the companion is a (possibly iterated) torus knot and the
/// cable's Alexander polynomial has staircase form.
pub fn class_complex(e: &KnotExpr) -> Result<ClassRep, KnotError> {
    e.check()?;
    let (c, warnings) = build(e)?;
    Ok(ClassRep::from_parts(
        reduce(&c),
        e.to_string(),
        Some(e.clone()),
        warnings,
    ))
}
