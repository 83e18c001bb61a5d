//! Integer Laurent polynomials in one variable `t`, and the staircase
//! exponents of L-space knot Alexander polynomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::gcd;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("division is not exact")]
    InexactDivision,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("({0}, {1}) are not coprime")]
    NotCoprime(i64, i64),
    #[error("parameter must be positive, got {0}")]
    NonPositive(i64),
    #[error("coefficient overflow")]
    Overflow,
    #[error("not a staircase polynomial: {0}")]
    NotStaircaseForm(String),
    #[error("cannot parse polynomial at column {column}: {message}")]
    Parse { column: usize, message: String },
}

/// A finitely supported map from exponents to nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    pub fn monomial(coefficient: i64, exponent: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(coefficient, exponent);
        p
    }

    /// Builds a polynomial from `(coefficient, exponent)` pairs; repeated
    /// exponents are summed.
    pub fn from_terms(terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut p = Self::zero();
        for (c, e) in terms {
            p.add_term(c, e);
        }
        p
    }

    fn add_term(&mut self, coefficient: i64, exponent: i64) {
        if coefficient == 0 {
            return;
        }
        let entry = self.terms.entry(exponent).or_insert(0);
        *entry += coefficient;
        if *entry == 0 {
            self.terms.remove(&exponent);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, exponent: i64) -> i64 {
        self.terms.get(&exponent).copied().unwrap_or(0)
    }

    /// `(coefficient, exponent)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (c, e))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn leading_coefficient(&self) -> Option<i64> {
        self.terms.values().next_back().copied()
    }

    /// Multiplies by `t^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        Self {
            terms: self.terms.iter().map(|(&e, &c)| (e + shift, c)).collect(),
        }
    }

    /// Shifts so the lowest exponent is 0 and flips sign so the leading
    /// coefficient is positive (the unit ambiguity of Alexander polynomials).
    pub fn normalized(&self) -> Self {
        let Some(lo) = self.min_exponent() else {
            return Self::zero();
        };
        let p = self.shift(-lo);
        if p.leading_coefficient().is_some_and(|c| c < 0) {
            -p
        } else {
            p
        }
    }

    /// Checked product.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        let mut out = BTreeMap::<i64, i64>::new();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &other.terms {
                let c = c1.checked_mul(c2).ok_or(LaurentError::Overflow)?;
                let slot = out.entry(e1 + e2).or_insert(0);
                *slot = slot.checked_add(c).ok_or(LaurentError::Overflow)?;
            }
        }
        out.retain(|_, c| *c != 0);
        Ok(Self { terms: out })
    }

    /// Replaces `t` by `t^n`.
    pub fn substitute_power(&self, n: u32) -> Self {
        assert!(n >= 1, "substitution power must be positive");
        Self {
            terms: self
                .terms
                .iter()
                .map(|(&e, &c)| (e * i64::from(n), c))
                .collect(),
        }
    }

    /// Exact division; fails unless `den` divides `self` in `Z[t, t^-1]`.
    pub fn divide_exact(&self, den: &Self) -> Result<Self, LaurentError> {
        let (Some(d_hi), Some(d_lo)) = (den.max_exponent(), den.min_exponent()) else {
            return Err(LaurentError::DivisionByZero);
        };
        let d_lead = den.coefficient(d_hi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(r_hi) = rem.max_exponent() {
            let r_lo = rem.min_exponent().unwrap_or(r_hi);
            // a nonzero remainder narrower than the divisor can never vanish
            if r_hi - r_lo < d_hi - d_lo {
                return Err(LaurentError::InexactDivision);
            }
            let r_lead = rem.coefficient(r_hi);
            if r_lead % d_lead != 0 {
                return Err(LaurentError::InexactDivision);
            }
            let term = Self::monomial(r_lead / d_lead, r_hi - d_hi);
            rem = &rem - &term.checked_mul(den)?;
            quot = &quot + &term;
        }
        Ok(quot)
    }

    /// `p(1)`, the sum of the coefficients.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, &c) in &rhs.terms {
            out.add_term(c, e);
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs.clone())
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.into_iter().map(|(e, c)| (e, -c)).collect(),
        }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs)
            .expect("Laurent polynomial coefficient overflow")
    }
}

impl fmt::Display for LaurentPoly {
    /// Descending exponents with explicit signs: `t^12 - t^11 + t^8 - t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (c, e)) in self.terms().rev().enumerate() {
            let mag = c.unsigned_abs();
            match (n, c < 0) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if mag != 1 {
                write!(f, "{mag}")?;
            }
            match e {
                1 => write!(f, "t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = LaurentError;

    /// Accepts the rendering produced by `Display`, plus optional `*` between
    /// coefficient and `t`, and negative exponents `t^-2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PolyParser {
            src: s.as_bytes(),
            pos: 0,
        }
        .parse()
    }
}

struct PolyParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl PolyParser<'_> {
    fn err(&self, message: &str) -> LaurentError {
        LaurentError::Parse {
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn number(&mut self) -> Option<Result<i64, LaurentError>> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return None;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).ok()?;
        Some(text.parse::<i64>().map_err(|_| LaurentError::Parse {
            column: start + 1,
            message: "integer out of range".into(),
        }))
    }

    fn parse(mut self) -> Result<LaurentPoly, LaurentError> {
        let mut poly = LaurentPoly::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                None if first => return Err(self.err("empty polynomial")),
                None => return Ok(poly),
                Some(b'+') if !first => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                Some(_) if first => 1,
                Some(_) => return Err(self.err("expected '+' or '-'")),
            };
            first = false;
            let coefficient = self.number().transpose()?;
            if coefficient.is_some() && self.peek() == Some(b'*') {
                self.pos += 1;
            }
            let exponent = if self.peek() == Some(b't') {
                self.pos += 1;
                if self.peek() == Some(b'^') {
                    self.pos += 1;
                    let neg = self.peek() == Some(b'-');
                    if neg {
                        self.pos += 1;
                    }
                    let e = self
                        .number()
                        .ok_or_else(|| self.err("expected exponent"))??;
                    if neg {
                        -e
                    } else {
                        e
                    }
                } else {
                    1
                }
            } else if coefficient.is_some() {
                0
            } else {
                return Err(self.err("expected a term"));
            };
            poly.add_term(sign * coefficient.unwrap_or(1), exponent);
        }
    }
}

/// `t^n - 1`.
fn t_pow_minus_one(n: i64) -> LaurentPoly {
    LaurentPoly::from_terms([(1, n), (-1, 0)])
}

/// Alexander polynomial of the `(p, q)` torus knot,
/// `(t^{pq} - 1)(t - 1) / ((t^p - 1)(t^q - 1))`, normalized.
///
/// A negative `q` is treated as `|q|`: mirrors share a polynomial.
pub fn torus_alexander(p: i64, q: i64) -> Result<LaurentPoly, LaurentError> {
    if p < 1 {
        return Err(LaurentError::NonPositive(p));
    }
    if q == 0 || gcd(p, q) != 1 {
        return Err(LaurentError::NotCoprime(p, q));
    }
    let q = q.abs();
    if p == 1 || q == 1 {
        return Ok(LaurentPoly::one());
    }
    let num = t_pow_minus_one(p * q).checked_mul(&t_pow_minus_one(1))?;
    let den = t_pow_minus_one(p).checked_mul(&t_pow_minus_one(q))?;
    Ok(num.divide_exact(&den)?.normalized())
}

/// Alexander polynomial of the `(p, q)` cable of a knot with polynomial
/// `delta`: `delta(t^p) * torus_alexander(p, q)`, normalized.
pub fn cable_alexander(delta: &LaurentPoly, p: i64, q: i64) -> Result<LaurentPoly, LaurentError> {
    let pattern = torus_alexander(p, q)?;
    let companion = delta.substitute_power(u32::try_from(p).map_err(|_| LaurentError::Overflow)?);
    Ok(companion.checked_mul(&pattern)?.normalized())
}

/// Exponents `n_0 > n_1 > ... > n_k = 0` of a polynomial of the form
/// `sum (-1)^i t^{n_i}` with `n_i + n_{k-i} = n_0`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StaircaseExponents(Vec<i64>);

impl StaircaseExponents {
    /// Validates a strictly decreasing exponent list.
    pub fn new(exponents: Vec<i64>) -> Result<Self, LaurentError> {
        let fail = |m: &str| Err(LaurentError::NotStaircaseForm(m.to_string()));
        if exponents.is_empty() {
            return fail("no terms");
        }
        if exponents.len().is_multiple_of(2) {
            return fail("even number of terms");
        }
        if exponents.windows(2).any(|w| w[0] <= w[1]) {
            return fail("exponents not strictly decreasing");
        }
        if *exponents.last().unwrap() != 0 {
            return fail("lowest exponent is not 0");
        }
        let top = exponents[0];
        let k = exponents.len() - 1;
        if (0..=k).any(|i| exponents[i] + exponents[k - i] != top) {
            return fail("exponents are not symmetric");
        }
        Ok(Self(exponents))
    }

    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }

    /// Number of steps `k` (even).
    pub fn k(&self) -> usize {
        self.0.len() - 1
    }

    /// `n_0 / 2`, the genus of the knot.
    pub fn genus(&self) -> i64 {
        self.0[0] / 2
    }

    pub fn to_poly(&self) -> LaurentPoly {
        LaurentPoly::from_terms(
            self.0
                .iter()
                .enumerate()
                .map(|(i, &e)| (if i % 2 == 0 { 1 } else { -1 }, e)),
        )
    }
}

/// Reads off and validates the staircase exponents of an Alexander polynomial.
pub fn staircase_exponents(p: &LaurentPoly) -> Result<StaircaseExponents, LaurentError> {
    let p = p.normalized();
    let mut exponents = Vec::new();
    for (i, (c, e)) in p.terms().rev().enumerate() {
        let expected = if i % 2 == 0 { 1 } else { -1 };
        if c != expected {
            return Err(LaurentError::NotStaircaseForm(format!(
                "coefficient {c} of t^{e} breaks the +1/-1 alternation"
            )));
        }
        exponents.push(e);
    }
    StaircaseExponents::new(exponents)
}
