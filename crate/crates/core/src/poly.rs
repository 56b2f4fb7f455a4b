//! Sparse univariate polynomials with arbitrary-precision integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};

/// Exponent → nonzero coefficient. The zero polynomial has no terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsePoly {
    terms: BTreeMap<usize, BigInt>,
}

impl SparsePoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(BigInt::one(), 0)
    }

    /// `x^exp`
    pub fn x_pow(exp: usize) -> Self {
        Self::monomial(BigInt::one(), exp)
    }

    pub fn monomial(coef: BigInt, exp: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        SparsePoly { terms }
    }

    /// Builds from `(exp, coef)` pairs; repeated exponents are summed.
    pub fn from_terms<I, C>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (usize, C)>,
        C: Into<BigInt>,
    {
        let mut p = SparsePoly::zero();
        for (e, c) in pairs {
            p.add_term(e, c.into());
        }
        p
    }

    /// Dense coefficients, index = exponent.
    pub fn from_dense(coefs: &[BigInt]) -> Self {
        let terms = coefs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(e, c)| (e, c.clone()))
            .collect();
        SparsePoly { terms }
    }

    pub fn to_dense(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree().map_or(0, |d| d + 1)];
        for (&e, c) in &self.terms {
            out[e] = c.clone();
        }
        out
    }

    fn add_term(&mut self, exp: usize, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(BigInt::zero);
        *slot += coef;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn low_degree(&self) -> Option<usize> {
        self.terms.keys().next().copied()
    }

    pub fn leading_coef(&self) -> Option<&BigInt> {
        self.terms.values().next_back()
    }

    pub fn coef(&self, exp: usize) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_default()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &BigInt)> + '_ {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn derivative(&self) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(&e, _)| e > 0)
            .map(|(&e, c)| (e - 1, c * BigInt::from(e)))
            .collect();
        SparsePoly { terms }
    }

    /// Multiply by `x^shift`.
    pub fn shift(&self, shift: usize) -> Self {
        let terms = self.terms.iter().map(|(&e, c)| (e + shift, c.clone())).collect();
        SparsePoly { terms }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(&e, a)| (e, a * c)).collect();
        SparsePoly { terms }
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = SparsePoly::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient over the integers; fails unless the remainder is zero.
    pub fn div_exact(&self, divisor: &SparsePoly) -> Result<SparsePoly> {
        let (dd, dlc) = match (divisor.degree(), divisor.leading_coef()) {
            (Some(d), Some(c)) => (d, c.clone()),
            _ => return Err(Error::NotDivisible),
        };
        let mut rem = self.clone();
        let mut quot = SparsePoly::zero();
        while let Some(rd) = rem.degree() {
            if rd < dd {
                return Err(Error::NotDivisible);
            }
            let rlc = rem.leading_coef().unwrap();
            let (q, r) = rlc.div_rem(&dlc);
            if !r.is_zero() {
                return Err(Error::NotDivisible);
            }
            let shift = rd - dd;
            for (e, c) in divisor.terms() {
                rem.add_term(e + shift, -(c * &q));
            }
            quot.add_term(shift, q);
        }
        Ok(quot)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        // Horner over the dense range, skipping gaps by powers
        let mut acc = BigRational::zero();
        let mut prev: Option<usize> = None;
        for (&e, c) in self.terms.iter().rev() {
            if let Some(p) = prev {
                acc *= pow_rational(x, p - e);
            }
            acc += BigRational::from_integer(c.clone());
            prev = Some(e);
        }
        if let Some(p) = prev {
            acc *= pow_rational(x, p);
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms
            .iter()
            .map(|(&e, c)| to_f64(c) * x.powi(e as i32))
            .sum()
    }

    /// `{"var":"x","terms":[{"exp":E,"coef":"..."}]}`, descending exponents.
    pub fn to_json(&self, var: &str) -> Value {
        let terms: Vec<Value> = self
            .terms
            .iter()
            .rev()
            .map(|(&e, c)| json!({"exp": e, "coef": c.to_string()}))
            .collect();
        json!({"var": var, "terms": terms})
    }

    pub fn from_json(v: &Value) -> Result<SparsePoly> {
        let terms = v
            .get("terms")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("polynomial JSON needs a \"terms\" array".into()))?;
        let mut p = SparsePoly::zero();
        for t in terms {
            let exp = t
                .get("exp")
                .and_then(Value::as_u64)
                .ok_or_else(|| Error::Parse("term without integer \"exp\"".into()))?;
            let coef: BigInt = t
                .get("coef")
                .and_then(Value::as_str)
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::Parse("term without decimal-string \"coef\"".into()))?;
            p.add_term(exp as usize, coef);
        }
        Ok(p)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
    DivExact,
    /// Derivative of the first operand; the second is ignored.
    Derivative,
}

pub fn poly_arith(a: &SparsePoly, b: &SparsePoly, op: PolyOp) -> Result<SparsePoly> {
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
        PolyOp::DivExact => a.div_exact(b)?,
        PolyOp::Derivative => a.derivative(),
    })
}

pub fn pow_rational(x: &BigRational, e: usize) -> BigRational {
    num_traits::pow(x.clone(), e)
}

/// Parses `p/q`, an integer, or a decimal such as `-1.25e-3`, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, body) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let shift = exp - frac.len() as i64;
    let ten = BigInt::from(10);
    let scale = num_traits::pow(ten, shift.unsigned_abs() as usize);
    let mut r = if shift >= 0 {
        BigRational::from_integer(digits * scale)
    } else {
        BigRational::new(digits, scale)
    };
    if neg {
        r = -r;
    }
    Ok(r)
}

pub(crate) fn to_f64(c: &BigInt) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or(if c.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

impl Add for &SparsePoly {
    type Output = SparsePoly;
    fn add(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &SparsePoly {
    type Output = SparsePoly;
    fn sub(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &SparsePoly {
    type Output = SparsePoly;
    fn mul(self, rhs: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for (ea, a) in self.terms() {
            for (eb, b) in rhs.terms() {
                out.add_term(ea + eb, a * b);
            }
        }
        out
    }
}

impl Neg for &SparsePoly {
    type Output = SparsePoly;
    fn neg(self) -> SparsePoly {
        let terms = self.terms.iter().map(|(&e, c)| (e, -c)).collect();
        SparsePoly { terms }
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (&e, c)) in self.terms.iter().rev().enumerate() {
            let mag = c.abs();
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if !mag.is_one() || e == 0 {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_rational("3/4").unwrap(), r(3, 4));
        assert_eq!(parse_rational("-6/8").unwrap(), r(-3, 4));
        assert_eq!(parse_rational("12").unwrap(), r(12, 1));
        assert_eq!(parse_rational("0.125").unwrap(), r(1, 8));
        assert_eq!(parse_rational("-1.5e-2").unwrap(), r(-3, 200));
        assert_eq!(parse_rational("2E3").unwrap(), r(2000, 1));
        assert_eq!(parse_rational(".5").unwrap(), r(1, 2));
        for bad in ["", "1/0", "abc", "1.2.3", "-", "1e", "."] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    fn p(pairs: &[(usize, i64)]) -> SparsePoly {
        SparsePoly::from_terms(pairs.iter().map(|&(e, c)| (e, c)))
    }

    #[test]
    fn arithmetic() {
        let a = p(&[(4, 1), (1, -4)]);
        assert_eq!(&a + &(-&a), SparsePoly::zero());
        assert_eq!(&a - &p(&[(1, -4)]), SparsePoly::x_pow(4));
        assert_eq!(&p(&[(1, 1), (0, -1)]) * &p(&[(1, 1), (0, 1)]), p(&[(2, 1), (0, -1)]));
        assert_eq!(a.derivative(), p(&[(3, 4), (0, -4)]));
        assert_eq!(p(&[(1, 1), (0, 1)]).pow(3), p(&[(3, 1), (2, 3), (1, 3), (0, 1)]));
    }

    #[test]
    fn exact_division() {
        let a = p(&[(4, 1), (1, -4)]);
        assert_eq!(a.div_exact(&SparsePoly::x_pow(1)).unwrap(), p(&[(3, 1), (0, -4)]));
        let b = p(&[(3, 1), (0, -4)]);
        assert_eq!(b.div_exact(&p(&[(1, 1), (0, -2)])), Err(Error::NotDivisible));
        assert_eq!(p(&[(1, 3)]).div_exact(&p(&[(1, 2)])), Err(Error::NotDivisible));
        assert_eq!(a.div_exact(&SparsePoly::zero()), Err(Error::NotDivisible));
    }

    #[test]
    fn arith_dispatch() {
        let a = p(&[(4, 1), (1, -4)]);
        let x = SparsePoly::x_pow(1);
        assert_eq!(poly_arith(&a, &x, PolyOp::DivExact).unwrap(), p(&[(3, 1), (0, -4)]));
        assert_eq!(poly_arith(&a, &x, PolyOp::Derivative).unwrap(), p(&[(3, 4), (0, -4)]));
        assert_eq!(poly_arith(&a, &x, PolyOp::Mul).unwrap(), p(&[(5, 1), (2, -4)]));
    }

    #[test]
    fn evaluation() {
        let a = p(&[(4, 1), (1, -4)]);
        let two = BigRational::from_integer(2.into());
        assert_eq!(a.eval_rational(&two), BigRational::from_integer(8.into()));
        assert_eq!(a.eval_f64(2.0), 8.0);
        assert_eq!(p(&[(0, 5)]).eval_rational(&two), BigRational::from_integer(5.into()));
    }

    #[test]
    fn display_and_json() {
        let a = p(&[(4, 1), (1, -4), (0, 1)]);
        assert_eq!(a.to_string(), "x^4 - 4x + 1");
        let j = a.to_json("x");
        assert_eq!(
            j.to_string(),
            r#"{"terms":[{"coef":"1","exp":4},{"coef":"-4","exp":1},{"coef":"1","exp":0}],"var":"x"}"#
        );
        assert_eq!(SparsePoly::from_json(&j).unwrap(), a);
    }
}
