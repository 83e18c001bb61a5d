//! Property checks over the catalog and its perturbations. Each runs its
//! own proptest runner so the acceptance binary can call them too.

use std::cmp::Ordering;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use cfk_calc::cfk::{dual, reduce, tensor, validate, CfkComplex};
use cfk_calc::concordance::{class_cmp, ClassRep};
use cfk_calc::invariants::{epsilon_oracle, invariants, vertical_class, Invariants};
use cfk_calc::knots::{square_summand, trefoil_staircase};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

use super::*;

pub const CASES: u32 = 128;

pub static ORACLE_CHECKS: AtomicUsize = AtomicUsize::new(0);

/// Invariants, after checking `epsilon` against the row-based oracle.
pub fn checked_invariants(c: &CfkComplex) -> Result<Invariants, TestCaseError> {
    let inv = invariants(c).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let oracle = epsilon_oracle(c).map_err(|e| TestCaseError::fail(e.to_string()))?;
    ORACLE_CHECKS.fetch_add(1, AtomicOrdering::Relaxed);
    prop_assert_eq!(
        oracle,
        inv.epsilon,
        "epsilon disagrees with the oracle on\n{}",
        c.to_text()
    );
    Ok(inv)
}

fn checked_cmp(a: &ClassRep, b: &ClassRep) -> Result<Ordering, TestCaseError> {
    let diff = reduce(&tensor(a.complex(), &dual(b.complex())));
    checked_invariants(&diff)?;
    class_cmp(a, b).map_err(|e| TestCaseError::fail(e.to_string()))
}

fn run<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    // no source file to pin regressions to when called from the harness-less binary
    let config = Config {
        failure_persistence: None,
        ..Config::with_cases(CASES)
    };
    let mut runner = TestRunner::new(config);
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn perturbed() -> impl Strategy<Value = (&'static str, CfkComplex, CfkComplex)> {
    (
        catalog(),
        proptest::collection::vec(square(), 0..3),
        seeds(),
    )
        .prop_map(|((e, c), sq, s)| {
            let p = scramble(&with_squares(&c, &sq), &s);
            (e, c, p)
        })
}

pub fn differential_survives_operations() -> Result<(), String> {
    run((perturbed(), catalog()), |((_, _, x), (_, b))| {
        prop_assert!(validate(&x, false).is_valid());
        prop_assert!(validate(&dual(&x), false).is_valid());
        prop_assert!(validate(&reduce(&x), false).is_valid());
        prop_assert!(validate(&tensor(&x, &b), false).is_valid());
        Ok(())
    })
}

pub fn dual_is_an_involution() -> Result<(), String> {
    run(perturbed(), |(_, _, x)| {
        prop_assert_eq!(dual(&dual(&x)), x);
        Ok(())
    })
}

pub fn reduce_is_idempotent() -> Result<(), String> {
    run((catalog(), catalog(), seeds()), |((_, a), (_, b), s)| {
        let r = reduce(&scramble(&tensor(&a, &b), &s));
        prop_assert_eq!(reduce(&r), r.clone());
        prop_assert!(r.arrows().all(|ar| ar.u_exp > 0 || ar.j_drop(&r) > 0));
        Ok(())
    })
}

pub fn invariants_survive_reduction_and_squares() -> Result<(), String> {
    run(perturbed(), |(_, c, x)| {
        let expected = checked_invariants(&c)?;
        prop_assert_eq!(checked_invariants(&x)?, expected);
        prop_assert_eq!(checked_invariants(&reduce(&x))?, expected);
        Ok(())
    })?;
    run((catalog(), catalog(), seeds()), |((_, a), (_, b), s)| {
        let t = scramble(&tensor(&a, &b), &s);
        prop_assert_eq!(checked_invariants(&t)?, checked_invariants(&reduce(&t))?);
        Ok(())
    })
}

pub fn epsilon_zero_forces_tau_zero() -> Result<(), String> {
    run((catalog(), catalog()), |((_, a), (_, b))| {
        let inv = checked_invariants(&reduce(&tensor(&a, &b)))?;
        if inv.epsilon == 0 {
            prop_assert_eq!(inv.tau, 0);
        }
        Ok(())
    })
}

pub fn never_both_maps_trivial() -> Result<(), String> {
    run((perturbed(), catalog()), |((_, _, x), (_, b))| {
        for c in [x.clone(), reduce(&tensor(&x, &b))] {
            let vc = vertical_class(&c).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let t = vc.tau;
            prop_assert!(!(vc.f_map_trivial(&c, t) && vc.g_map_trivial(&c, t)));
        }
        Ok(())
    })
}

fn class(c: CfkComplex) -> ClassRep {
    ClassRep::from_complex("k", &c).expect("catalog complexes are knot classes")
}

pub fn order_is_transitive() -> Result<(), String> {
    run(
        (catalog(), catalog(), catalog()),
        |((_, a), (_, b), (_, c))| {
            let [a, b, c] = [a, b, c].map(class);
            let ab = checked_cmp(&a, &b)?;
            let bc = checked_cmp(&b, &c)?;
            let ac = checked_cmp(&a, &c)?;
            prop_assert_eq!(checked_cmp(&b, &a)?, ab.reverse());
            if ab != Ordering::Less && bc != Ordering::Less {
                prop_assert_ne!(ac, Ordering::Less);
            }
            if ab != Ordering::Greater && bc != Ordering::Greater {
                prop_assert_ne!(ac, Ordering::Greater);
            }
            if ab == Ordering::Equal {
                prop_assert_eq!(ac, bc);
            }
            Ok(())
        },
    )
}

pub fn order_is_translation_invariant() -> Result<(), String> {
    let shifts = proptest::sample::select(&["U", "T(2,3)", "-T(2,3)", "T(2,5)"][..]);
    run((catalog(), catalog(), shifts), |((_, a), (_, b), d)| {
        let d = ClassRep::parse(d).unwrap();
        let [a, b] = [a, b].map(class);
        prop_assert_eq!(checked_cmp(&a.sum(&d), &b.sum(&d))?, checked_cmp(&a, &b)?);
        Ok(())
    })
}

/// Trefoil (or its mirror) plus squares inside `|A| <= 1`, in a scrambled
/// basis.
pub fn genus_one() -> impl Strategy<Value = CfkComplex> {
    (
        any::<bool>(),
        proptest::collection::vec(-3i64..=1, 0..4),
        seeds(),
    )
        .prop_map(|(mirror, maslovs, s)| {
            let t = trefoil_staircase();
            let mut c = if mirror { dual(&t) } else { t };
            for (n, m) in maslovs.iter().enumerate() {
                c = c
                    .direct_sum(&square_summand(&format!("g{n}_"), 0, *m, 1, 1))
                    .unwrap();
            }
            scramble(&c, &s)
        })
}

pub fn genus_one_disjunction() -> Result<(), String> {
    run(genus_one(), |c| {
        prop_assert!(c.generators().iter().all(|g| g.alexander.abs() <= 1));
        let inv = checked_invariants(&c)?;
        if inv.epsilon == 1 {
            prop_assert!(inv.a1 != Some(1) || inv.a2 == Some(1), "{inv:?}");
        }
        Ok(())
    })
}

pub type Property = (&'static str, fn() -> Result<(), String>);

pub const ALL: &[Property] = &[
    (
        "differential squares to zero after tensor, dual and reduce",
        differential_survives_operations,
    ),
    ("dual is an involution", dual_is_an_involution),
    ("reduce is idempotent", reduce_is_idempotent),
    (
        "invariants survive reduction, squares and basis changes",
        invariants_survive_reduction_and_squares,
    ),
    ("epsilon = 0 forces tau = 0", epsilon_zero_forces_tau_zero),
    ("order is total and transitive", order_is_transitive),
    (
        "order is translation invariant",
        order_is_translation_invariant,
    ),
    ("genus one: a1 != 1 or a1 = a2 = 1", genus_one_disjunction),
    ("F and G are never both trivial", never_both_maps_trivial),
];
