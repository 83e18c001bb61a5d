//! Comparison, domination and independence in the totally ordered group of
//! complexes modulo `epsilon`-trivial differences, and the cable formula
//! for `tau`.

use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num_integer::gcd;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cfk::{dual, reduce, tensor, validate, CfkComplex};
use crate::invariants::{self, InvariantError, Invariants};
use crate::knots::{class_complex, parse, KnotError, KnotExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConcordanceError {
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    #[error(transparent)]
    Knot(#[from] KnotError),
    #[error("{label} is not a knot complex:\n{report}")]
    InvalidComplex { label: String, report: String },
    #[error("{label} has epsilon {epsilon}; domination needs positive classes")]
    NotPositive { label: String, epsilon: i8 },
    #[error("no sufficient condition orders {first} and {second}")]
    NotAChain { first: String, second: String },
    #[error("certificate has no entries")]
    EmptyFamily,
}

/// A reduced complex standing for the class of a knot.
#[derive(Debug, Clone)]
pub struct ClassRep {
    complex: CfkComplex,
    label: String,
    expr: Option<KnotExpr>,
    warnings: Vec<String>,
    invariants: OnceLock<Result<Invariants, InvariantError>>,
}

impl ClassRep {
    pub(crate) fn from_parts(
        complex: CfkComplex,
        label: String,
        expr: Option<KnotExpr>,
        warnings: Vec<String>,
    ) -> Self {
        Self {
            complex,
            label,
            expr,
            warnings,
            invariants: OnceLock::new(),
        }
    }

    pub fn from_expr(e: &KnotExpr) -> Result<Self, ConcordanceError> {
        Ok(class_complex(e)?)
    }

    pub fn parse(text: &str) -> Result<Self, ConcordanceError> {
        let e = parse(text).map_err(KnotError::from)?;
        Self::from_expr(&e)
    }

    /// Wraps a user-supplied complex after checking it is a knot complex.
    pub fn from_complex(
        label: impl Into<String>,
        c: &CfkComplex,
    ) -> Result<Self, ConcordanceError> {
        let label = label.into();
        let report = validate(c, true);
        if !report.is_valid() {
            return Err(ConcordanceError::InvalidComplex {
                label,
                report: report.to_string(),
            });
        }
        Ok(Self::from_parts(reduce(c), label, None, Vec::new()))
    }

    pub fn complex(&self) -> &CfkComplex {
        &self.complex
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn expr(&self) -> Option<&KnotExpr> {
        self.expr.as_ref()
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// `tau`, `epsilon`, `a1`, `a2`, computed once.
    pub fn invariants(&self) -> Result<Invariants, InvariantError> {
        self.invariants
            .get_or_init(|| invariants::invariants(&self.complex))
            .clone()
    }

    pub fn mirror(&self) -> ClassRep {
        let label = match &self.expr {
            Some(e) => KnotExpr::mirror(e.clone()).to_string(),
            None => format!("-({})", self.label),
        };
        ClassRep::from_parts(
            dual(&self.complex),
            label,
            self.expr.clone().map(KnotExpr::mirror),
            self.warnings.clone(),
        )
    }

    pub fn sum(&self, other: &ClassRep) -> ClassRep {
        let expr = match (&self.expr, &other.expr) {
            (Some(a), Some(b)) => Some(KnotExpr::sum(a.clone(), b.clone())),
            _ => None,
        };
        let label = match &expr {
            Some(e) => e.to_string(),
            None => format!("({}) + ({})", self.label, other.label),
        };
        let mut warnings = self.warnings.clone();
        warnings.extend(other.warnings.iter().cloned());
        ClassRep::from_parts(
            reduce(&tensor(&self.complex, &other.complex)),
            label,
            expr,
            warnings,
        )
    }
}

impl fmt::Display for ClassRep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label)
    }
}

/// Order of the classes: the sign of `epsilon(K1 - K2)`.
pub fn class_cmp(k1: &ClassRep, k2: &ClassRep) -> Result<Ordering, InvariantError> {
    let diff = reduce(&tensor(k1.complex(), &dual(k2.complex())));
    Ok(match invariants::epsilon(&diff)? {
        1 => Ordering::Greater,
        0 => Ordering::Equal,
        _ => Ordering::Less,
    })
}

/// `epsilon(K)`, the sign of the class.
pub fn class_sign(k: &ClassRep) -> Result<i8, InvariantError> {
    Ok(k.invariants()?.epsilon)
}

/// `K` if its sign is non-negative, otherwise its mirror.
pub fn abs_class(k: &ClassRep) -> Result<ClassRep, InvariantError> {
    Ok(if class_sign(k)? >= 0 {
        k.clone()
    } else {
        k.mirror()
    })
}

/// Which sufficient condition for domination applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DominanceRule {
    /// `a1(K) < a1(J)`.
    SmallerA1,
    /// `a1(K) = a1(J)` and `a2(K) > a2(J)`, both defined.
    EqualA1LargerA2,
}

impl fmt::Display for DominanceRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DominanceRule::SmallerA1 => "smaller a1",
            DominanceRule::EqualA1LargerA2 => "equal a1, larger a2",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dominance {
    Proved(DominanceRule),
    /// Neither condition applies; this is not a refutation.
    Unknown,
}

fn positive_invariants(k: &ClassRep) -> Result<Invariants, ConcordanceError> {
    let inv = k.invariants()?;
    if inv.epsilon != 1 {
        return Err(ConcordanceError::NotPositive {
            label: k.label().to_string(),
            epsilon: inv.epsilon,
        });
    }
    Ok(inv)
}

fn rule_for(k: &Invariants, j: &Invariants) -> Option<DominanceRule> {
    match (k.a1, j.a1) {
        (Some(ka), Some(ja)) if ka < ja => Some(DominanceRule::SmallerA1),
        (Some(ka), Some(ja)) if ka == ja => match (k.a2, j.a2) {
            (Some(kb), Some(jb)) if kb > jb => Some(DominanceRule::EqualA1LargerA2),
            _ => None,
        },
        _ => None,
    }
}

/// Tries to prove `K >> J` from `a1` and `a2`.
pub fn dominates_by_invariants(k: &ClassRep, j: &ClassRep) -> Result<Dominance, ConcordanceError> {
    let ki = positive_invariants(k)?;
    let ji = positive_invariants(j)?;
    Ok(rule_for(&ki, &ji).map_or(Dominance::Unknown, Dominance::Proved))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Evidence {
    /// `epsilon(K - nJ) = 1` for every `1 <= n <= N`.
    ConsistentUpTo(u32),
    /// The first failing `n`; `0` means `J` itself is not positive.
    Refuted(u32),
}

/// Checks `K > nJ > 0` for `n = 1..=N` by explicit tensor products.
pub fn dominance_evidence(k: &ClassRep, j: &ClassRep, n: u32) -> Result<Evidence, InvariantError> {
    if j.invariants()?.epsilon != 1 {
        return Ok(Evidence::Refuted(0));
    }
    let minus_j = dual(j.complex());
    let mut acc = k.complex().clone();
    for step in 1..=n {
        acc = reduce(&tensor(&acc, &minus_j));
        if invariants::epsilon(&acc)? != 1 {
            return Ok(Evidence::Refuted(step));
        }
    }
    Ok(Evidence::ConsistentUpTo(n))
}

pub const CERTIFICATE_FORMAT: &str = "cfk-calc independence certificate v1";

/// One member of the chain, with the values its links rely on.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateEntry {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub expr: Option<String>,
    /// Canonical text of the complex, for entries not given by an expression.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub complex: Option<String>,
    pub tau: i64,
    pub epsilon: i8,
    pub a1: Option<i64>,
    pub a2: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateLink {
    pub dominant: String,
    pub dominated: String,
    pub rule: DominanceRule,
}

/// A verified chain `K1 >> K2 >> ... >> Kn > 0`, which makes the classes
/// linearly independent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub format: String,
    pub chain: Vec<CertificateEntry>,
    pub links: Vec<CertificateLink>,
    /// The last element, whose `epsilon = 1` closes the chain.
    pub positive: String,
}

fn entry_for(k: &ClassRep, inv: Invariants) -> CertificateEntry {
    CertificateEntry {
        label: k.label().to_string(),
        expr: k.expr().map(ToString::to_string),
        complex: k.expr().is_none().then(|| k.complex().to_text()),
        tau: inv.tau,
        epsilon: inv.epsilon,
        a1: inv.a1,
        a2: inv.a2,
    }
}

/// Orders the family by `(a1 ascending, a2 descending)` and proves each
/// adjacent link.
pub fn independence_certificate(family: &[ClassRep]) -> Result<Certificate, ConcordanceError> {
    if family.is_empty() {
        return Err(ConcordanceError::EmptyFamily);
    }
    let mut members: Vec<(&ClassRep, Invariants)> = family
        .iter()
        .map(|k| positive_invariants(k).map(|inv| (k, inv)))
        .collect::<Result<_, _>>()?;
    members.sort_by(|(_, x), (_, y)| {
        x.a1.cmp(&y.a1)
            .then_with(|| y.a2.unwrap_or(i64::MIN).cmp(&x.a2.unwrap_or(i64::MIN)))
    });
    let mut links = Vec::new();
    for pair in members.windows(2) {
        let ((k, ki), (j, ji)) = (&pair[0], &pair[1]);
        let rule = rule_for(ki, ji).ok_or_else(|| ConcordanceError::NotAChain {
            first: k.label().to_string(),
            second: j.label().to_string(),
        })?;
        links.push(CertificateLink {
            dominant: k.label().to_string(),
            dominated: j.label().to_string(),
            rule,
        });
    }
    let chain: Vec<CertificateEntry> = members.iter().map(|(k, inv)| entry_for(k, *inv)).collect();
    Ok(Certificate {
        format: CERTIFICATE_FORMAT.to_string(),
        positive: chain.last().expect("non-empty").label.clone(),
        chain,
        links,
    })
}

/// Outcome of recomputing every witness in a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RecheckReport {
    pub mismatches: Vec<String>,
}

impl RecheckReport {
    pub fn ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl Certificate {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Rebuilds every entry, recomputes its invariants and every link, and
    /// reports each disagreement.
    pub fn recheck(&self) -> RecheckReport {
        let mut report = RecheckReport::default();
        let mut fail = |m: String| report.mismatches.push(m);
        if self.format != CERTIFICATE_FORMAT {
            fail(format!("unknown format {:?}", self.format));
        }
        if self.chain.is_empty() {
            fail("empty chain".into());
            return report;
        }
        let mut recomputed = Vec::new();
        for entry in &self.chain {
            let rep = match (&entry.expr, &entry.complex) {
                (Some(e), _) => ClassRep::parse(e),
                (None, Some(text)) => CfkComplex::from_text(text)
                    .map_err(|e| ConcordanceError::InvalidComplex {
                        label: entry.label.clone(),
                        report: e.to_string(),
                    })
                    .and_then(|c| ClassRep::from_complex(entry.label.clone(), &c)),
                (None, None) => {
                    fail(format!(
                        "{}: neither expression nor complex given",
                        entry.label
                    ));
                    continue;
                }
            };
            let inv = match rep.as_ref().map(|r| r.invariants()) {
                Ok(Ok(inv)) => inv,
                Ok(Err(e)) => {
                    fail(format!("{}: {e}", entry.label));
                    continue;
                }
                Err(e) => {
                    fail(format!("{}: {e}", entry.label));
                    continue;
                }
            };
            let claimed = (entry.tau, entry.epsilon, entry.a1, entry.a2);
            let actual = (inv.tau, inv.epsilon, inv.a1, inv.a2);
            if claimed != actual {
                fail(format!(
                    "{}: recorded (tau, epsilon, a1, a2) = {claimed:?}, recomputed {actual:?}",
                    entry.label
                ));
            }
            if inv.epsilon != 1 {
                fail(format!(
                    "{}: epsilon is {}, not 1",
                    entry.label, inv.epsilon
                ));
            }
            recomputed.push((entry.label.clone(), inv));
        }
        if recomputed.len() != self.chain.len() {
            return report;
        }
        if self.links.len() + 1 != self.chain.len() {
            fail(format!(
                "{} links for a chain of {}",
                self.links.len(),
                self.chain.len()
            ));
        }
        for (n, pair) in recomputed.windows(2).enumerate() {
            let ((kl, ki), (jl, ji)) = (&pair[0], &pair[1]);
            let Some(link) = self.links.get(n) else { break };
            if (&link.dominant, &link.dominated) != (kl, jl) {
                fail(format!(
                    "link {n} names {} >> {}, chain has {kl} >> {jl}",
                    link.dominant, link.dominated
                ));
            }
            match rule_for(ki, ji) {
                Some(rule) if rule == link.rule => {}
                Some(rule) => fail(format!(
                    "{kl} >> {jl}: recorded {}, recomputed {rule}",
                    link.rule
                )),
                None => fail(format!("{kl} >> {jl}: no sufficient condition holds")),
            }
        }
        if self.positive != recomputed.last().expect("non-empty").0 {
            fail(format!(
                "positive element {} is not the last in the chain",
                self.positive
            ));
        }
        report
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.chain.iter().map(|e| e.label.as_str()).collect();
        writeln!(f, "{} > 0", names.join(" >> "))?;
        for link in &self.links {
            writeln!(
                f,
                "  {} >> {} by {}",
                link.dominant, link.dominated, link.rule
            )?;
        }
        for e in &self.chain {
            let show = |v: Option<i64>| v.map_or("undefined".to_string(), |v| v.to_string());
            writeln!(
                f,
                "  {}: tau={} epsilon={} a1={} a2={}",
                e.label,
                e.tau,
                e.epsilon,
                show(e.a1),
                show(e.a2)
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CableError {
    #[error("cable parameters ({0}, {1}) are not coprime")]
    NotCoprime(i64, i64),
    #[error("winding number must be positive, got {0}")]
    NonPositive(i64),
    #[error("epsilon must be -1, 0 or 1, got {0}")]
    BadEpsilon(i8),
    #[error("epsilon = 0 forces tau = 0, got tau = {0}")]
    InconsistentInput(i64),
}

/// `tau` of the `(p, q)` cable of a knot with the given `tau` and `epsilon`.
pub fn cable_tau(tau: i64, epsilon: i8, p: i64, q: i64) -> Result<i64, CableError> {
    if p < 1 {
        return Err(CableError::NonPositive(p));
    }
    if gcd(p, q) != 1 {
        return Err(CableError::NotCoprime(p, q));
    }
    match epsilon {
        1 => Ok(p * tau + (p - 1) * (q - 1) / 2),
        -1 => Ok(p * tau + (p - 1) * (q + 1) / 2),
        0 if tau != 0 => Err(CableError::InconsistentInput(tau)),
        0 if q < 0 => Ok((p - 1) * (q + 1) / 2),
        0 => Ok((p - 1) * (q - 1) / 2),
        e => Err(CableError::BadEpsilon(e)),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsilonDetection {
    Determined(i8),
    Indeterminate,
}

/// Reads `epsilon` off `tau` of the `(2, 1)` and `(2, -1)` cables.
pub fn epsilon_from_cable_taus(tau_21: i64, tau_2m1: i64) -> EpsilonDetection {
    if tau_21.rem_euclid(2) == 1 {
        EpsilonDetection::Determined(-1)
    } else if tau_2m1.rem_euclid(2) == 1 {
        EpsilonDetection::Determined(1)
    } else if tau_21 == 0 && tau_2m1 == 0 {
        EpsilonDetection::Determined(0)
    } else {
        EpsilonDetection::Indeterminate
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rep(text: &str) -> ClassRep {
        ClassRep::parse(text).unwrap()
    }

    #[test]
    fn comparisons() {
        let t23 = rep("T(2,3)");
        assert_eq!(class_cmp(&t23, &t23), Ok(Ordering::Equal));
        assert_eq!(class_cmp(&rep("T(3,4)"), &t23), Ok(Ordering::Greater));
        assert_eq!(class_cmp(&rep("U"), &t23), Ok(Ordering::Less));
    }

    #[test]
    fn signs_and_absolute_values() {
        let u = rep("U");
        assert_eq!(class_sign(&u), Ok(0));
        assert_eq!(abs_class(&u).unwrap().complex(), u.complex());
        let m = rep("-T(2,3)");
        assert_eq!(class_sign(&m), Ok(-1));
        let a = abs_class(&m).unwrap();
        assert_eq!(a.complex(), rep("T(2,3)").complex());
        assert_eq!(a.label(), "--T(2,3)");
        let t = rep("T(3,4)");
        assert_eq!(class_sign(&t), Ok(1));
        assert_eq!(abs_class(&t).unwrap().label(), "T(3,4)");
    }

    #[test]
    fn domination_by_invariants() {
        let t23 = rep("T(2,3)");
        let t34 = rep("T(3,4)");
        assert_eq!(
            dominates_by_invariants(&t34, &t23),
            Ok(Dominance::Proved(DominanceRule::EqualA1LargerA2))
        );
        assert_eq!(dominates_by_invariants(&t23, &t23), Ok(Dominance::Unknown));
        let d34 = rep("C(D;3,4)");
        assert_eq!(
            dominates_by_invariants(&d34, &t34),
            Ok(Dominance::Proved(DominanceRule::EqualA1LargerA2))
        );
        assert!(matches!(
            dominates_by_invariants(&rep("U"), &t23),
            Err(ConcordanceError::NotPositive { .. })
        ));
        // a1 = 2 for the synthetic staircase t^4 - t^2 + 1 side is not needed:
        // the smaller-a1 rule is covered through rule_for directly
        let small = Invariants {
            tau: 1,
            epsilon: 1,
            a1: Some(1),
            a2: None,
        };
        let big = Invariants {
            tau: 2,
            epsilon: 1,
            a1: Some(2),
            a2: Some(2),
        };
        assert_eq!(rule_for(&small, &big), Some(DominanceRule::SmallerA1));
        assert_eq!(rule_for(&big, &small), None);
        let undefined = Invariants {
            tau: 2,
            epsilon: 1,
            a1: Some(2),
            a2: None,
        };
        assert_eq!(rule_for(&big, &undefined), None);
    }

    #[test]
    fn evidence() {
        let t23 = rep("T(2,3)");
        let t34 = rep("T(3,4)");
        assert_eq!(
            dominance_evidence(&t34, &t23, 2),
            Ok(Evidence::ConsistentUpTo(2))
        );
        assert_eq!(dominance_evidence(&t23, &t34, 1), Ok(Evidence::Refuted(1)));
        assert_eq!(
            dominance_evidence(&t34, &rep("U"), 3),
            Ok(Evidence::Refuted(0))
        );
    }

    #[test]
    fn torus_chain_certificate() {
        let family: Vec<ClassRep> = ["T(2,3)", "T(4,5)", "T(3,4)"]
            .iter()
            .map(|t| rep(t))
            .collect();
        let cert = independence_certificate(&family).unwrap();
        let order: Vec<&str> = cert.chain.iter().map(|e| e.label.as_str()).collect();
        assert_eq!(order, ["T(4,5)", "T(3,4)", "T(2,3)"]);
        assert_eq!(cert.positive, "T(2,3)");
        assert!(cert.recheck().ok());
        let round = Certificate::from_json(&cert.to_json()).unwrap();
        assert_eq!(round, cert);
    }

    #[test]
    fn equal_classes_are_not_a_chain() {
        let family = vec![rep("T(2,3)"), rep("T(2,3)")];
        assert!(matches!(
            independence_certificate(&family),
            Err(ConcordanceError::NotAChain { .. })
        ));
    }

    #[test]
    fn tampered_certificate_fails_recheck() {
        let family = vec![rep("T(2,3)"), rep("T(3,4)")];
        let mut cert = independence_certificate(&family).unwrap();
        cert.chain[0].a2 = Some(5);
        assert!(!cert.recheck().ok());
        let mut cert = independence_certificate(&family).unwrap();
        cert.links[0].rule = DominanceRule::SmallerA1;
        assert!(!cert.recheck().ok());
    }

    #[test]
    fn file_entries_embed_their_complex() {
        let c = rep("T(3,4)").complex().clone();
        let k = ClassRep::from_complex("t34.cfk", &c).unwrap();
        let cert = independence_certificate(&[k, rep("T(2,3)")]).unwrap();
        assert!(cert.chain[0].complex.is_some());
        assert!(cert.recheck().ok());
    }

    #[test]
    fn cable_formula() {
        assert_eq!(cable_tau(1, 1, 2, 3), Ok(3));
        assert_eq!(cable_tau(-1, -1, 2, 1), Ok(-1));
        assert_eq!(cable_tau(0, 0, 2, 5), Ok(2));
        assert_eq!(cable_tau(0, 0, 3, -4), Ok(-3));
        assert_eq!(cable_tau(5, 0, 2, 1), Err(CableError::InconsistentInput(5)));
        assert_eq!(cable_tau(1, 1, 2, 4), Err(CableError::NotCoprime(2, 4)));
    }

    #[test]
    fn epsilon_detection() {
        assert_eq!(
            epsilon_from_cable_taus(1, 0),
            EpsilonDetection::Determined(-1)
        );
        assert_eq!(
            epsilon_from_cable_taus(0, 0),
            EpsilonDetection::Determined(0)
        );
        assert_eq!(
            epsilon_from_cable_taus(2, 2),
            EpsilonDetection::Indeterminate
        );
        assert_eq!(
            epsilon_from_cable_taus(2, 1),
            EpsilonDetection::Determined(1)
        );
        assert_eq!(
            epsilon_from_cable_taus(-3, 0),
            EpsilonDetection::Determined(-1)
        );
    }
}
