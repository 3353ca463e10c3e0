//! Exact scalars: arbitrary-precision rationals and elements of a quadratic
//! extension `Q(sqrt(d))`.
//!
//! A [`FieldScalar`] is always stored in canonical form. An extension element
//! whose radical part vanishes is demoted to a plain rational, so structural
//! equality coincides with numeric equality.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision rational in lowest terms with positive denominator.
pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("mismatched radicands: sqrt({0}) and sqrt({1})")]
    RadicandMismatch(u64, u64),
    #[error("radicand {0} is not a squarefree integer greater than 1")]
    BadRadicand(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Returns true if `d > 1` and no square of a prime divides `d`.
pub fn is_squarefree(d: u64) -> bool {
    if d < 2 {
        return false;
    }
    let mut k = 2u64;
    while k.saturating_mul(k) <= d {
        if d % (k * k) == 0 {
            return false;
        }
        k += 1;
    }
    true
}

/// `a + b*sqrt(d)` with `d` squarefree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    rational: Rational,
    radical: Rational,
    radicand: u64,
}

impl QuadExt {
    pub fn new(rational: Rational, radical: Rational, radicand: u64) -> Result<Self, ArithError> {
        if !is_squarefree(radicand) {
            return Err(ArithError::BadRadicand(radicand));
        }
        Ok(Self {
            rational,
            radical,
            radicand,
        })
    }

    pub fn rational_part(&self) -> &Rational {
        &self.rational
    }

    pub fn radical_part(&self) -> &Rational {
        &self.radical
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.radical.is_zero()
    }

    /// Galois conjugate `a - b*sqrt(d)`.
    pub fn conjugate(&self) -> Self {
        Self {
            rational: self.rational.clone(),
            radical: -self.radical.clone(),
            radicand: self.radicand,
        }
    }

    /// Field norm `a^2 - d*b^2`, zero only for zero.
    pub fn norm(&self) -> Rational {
        let d = Rational::from_integer(BigInt::from(self.radicand));
        &self.rational * &self.rational - d * &self.radical * &self.radical
    }
}

/// Entry type of every matrix in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(Rational),
    Quad(QuadExt),
}

impl Default for FieldScalar {
    fn default() -> Self {
        FieldScalar::zero()
    }
}

fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

impl FieldScalar {
    pub fn zero() -> Self {
        FieldScalar::Rational(Rational::zero())
    }

    pub fn one() -> Self {
        FieldScalar::Rational(Rational::one())
    }

    pub fn from_int(n: i64) -> Self {
        FieldScalar::Rational(rat(n))
    }

    pub fn from_ratio(num: i64, den: i64) -> Result<Self, ArithError> {
        if den == 0 {
            return Err(ArithError::DivisionByZero);
        }
        Ok(FieldScalar::Rational(Rational::new(
            BigInt::from(num),
            BigInt::from(den),
        )))
    }

    /// `a + b*sqrt(d)`; demotes to a rational when `b = 0`.
    pub fn quad(a: Rational, b: Rational, d: u64) -> Result<Self, ArithError> {
        Ok(QuadExt::new(a, b, d)?.into())
    }

    /// `b*sqrt(d)` for integer `b`.
    pub fn sqrt_multiple(b: i64, d: u64) -> Result<Self, ArithError> {
        Self::quad(Rational::zero(), rat(b), d)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Quad(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        matches!(self, FieldScalar::Rational(r) if r.is_one())
    }

    /// Radicand of an irrational value, `None` for rationals.
    pub fn radicand(&self) -> Option<u64> {
        match self {
            FieldScalar::Rational(_) => None,
            FieldScalar::Quad(q) => Some(q.radicand),
        }
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            FieldScalar::Rational(r) => Some(r),
            FieldScalar::Quad(_) => None,
        }
    }

    /// Rational and radical parts, the latter zero for rationals.
    pub fn parts(&self) -> (Rational, Rational) {
        match self {
            FieldScalar::Rational(r) => (r.clone(), Rational::zero()),
            FieldScalar::Quad(q) => (q.rational.clone(), q.radical.clone()),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            FieldScalar::Rational(r) => r.to_f64().unwrap_or(f64::NAN),
            FieldScalar::Quad(q) => {
                let a = q.rational.to_f64().unwrap_or(f64::NAN);
                let b = q.radical.to_f64().unwrap_or(f64::NAN);
                a + b * (q.radicand as f64).sqrt()
            }
        }
    }

    fn common_radicand(&self, other: &Self) -> Result<Option<u64>, ArithError> {
        match (self.radicand(), other.radicand()) {
            (Some(a), Some(b)) if a != b => Err(ArithError::RadicandMismatch(a, b)),
            (Some(a), _) | (_, Some(a)) => Ok(Some(a)),
            (None, None) => Ok(None),
        }
    }

    fn from_parts(a: Rational, b: Rational, d: Option<u64>) -> Self {
        match d {
            Some(d) if !b.is_zero() => FieldScalar::Quad(QuadExt {
                rational: a,
                radical: b,
                radicand: d,
            }),
            _ => FieldScalar::Rational(a),
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ArithError> {
        if let (FieldScalar::Rational(x), FieldScalar::Rational(y)) = (self, other) {
            return Ok(FieldScalar::Rational(x + y));
        }
        let d = self.common_radicand(other)?;
        let (a, b) = self.parts();
        let (c, e) = other.parts();
        Ok(Self::from_parts(a + c, b + e, d))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ArithError> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, ArithError> {
        if let (FieldScalar::Rational(x), FieldScalar::Rational(y)) = (self, other) {
            return Ok(FieldScalar::Rational(x * y));
        }
        let d = self.common_radicand(other)?;
        let dd = rat(d.unwrap_or(0) as i64);
        let (a, b) = self.parts();
        let (c, e) = other.parts();
        // (a + b s)(c + e s) = (ac + be d) + (ae + bc) s
        let real = &a * &c + &b * &e * dd;
        let irr = a * e + b * c;
        Ok(Self::from_parts(real, irr, d))
    }

    pub fn checked_recip(&self) -> Result<Self, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        match self {
            FieldScalar::Rational(r) => Ok(FieldScalar::Rational(r.recip())),
            FieldScalar::Quad(q) => {
                let n = q.norm();
                let conj = q.conjugate();
                Ok(Self::from_parts(
                    conj.rational / &n,
                    conj.radical / &n,
                    Some(q.radicand),
                ))
            }
        }
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self, ArithError> {
        if let (FieldScalar::Rational(x), FieldScalar::Rational(y)) = (self, other) {
            if y.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            return Ok(FieldScalar::Rational(x / y));
        }
        self.common_radicand(other)?;
        self.checked_mul(&other.checked_recip()?)
    }
}

impl From<QuadExt> for FieldScalar {
    fn from(q: QuadExt) -> Self {
        if q.radical.is_zero() {
            FieldScalar::Rational(q.rational)
        } else {
            FieldScalar::Quad(q)
        }
    }
}

impl From<Rational> for FieldScalar {
    fn from(r: Rational) -> Self {
        FieldScalar::Rational(r)
    }
}

impl From<i64> for FieldScalar {
    fn from(n: i64) -> Self {
        FieldScalar::from_int(n)
    }
}

impl From<BigInt> for FieldScalar {
    fn from(n: BigInt) -> Self {
        FieldScalar::Rational(Rational::from_integer(n))
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        match self {
            FieldScalar::Rational(r) => FieldScalar::Rational(-r),
            FieldScalar::Quad(q) => FieldScalar::Quad(QuadExt {
                rational: -&q.rational,
                radical: -&q.radical,
                radicand: q.radicand,
            }),
        }
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        -&self
    }
}

// The operator impls panic on radicand mismatch or division by zero; use the
// `checked_*` methods where either can legitimately occur.
macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                match self.$checked(rhs) {
                    Ok(v) => v,
                    Err(e) => panic!("{}", e),
                }
            }
        }
        impl $trait<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                (&self).$method(rhs)
            }
        }
        impl $trait<FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);
forward_binop!(Div, div, checked_div);

/// Renders a rational as `p/q`, always including the denominator.
pub fn render_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or the integer shorthand `p`.
pub fn parse_rational(s: &str) -> Result<Rational, ArithError> {
    let err = || ArithError::Parse(s.to_string());
    let s = s.trim();
    if s.is_empty() {
        return Err(err());
    }
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| err())?;
            let q: BigInt = q.trim().parse().map_err(|_| err())?;
            if q.is_zero() {
                return Err(ArithError::DivisionByZero);
            }
            Ok(Rational::new(p, q))
        }
        None => Ok(Rational::from_integer(s.parse().map_err(|_| err())?)),
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => f.write_str(&render_rational(r)),
            FieldScalar::Quad(q) => {
                let sign = if q.radical.is_negative() { '-' } else { '+' };
                write!(
                    f,
                    "{}{}{}*sqrt({})",
                    render_rational(&q.rational),
                    sign,
                    render_rational(&q.radical.abs()),
                    q.radicand
                )
            }
        }
    }
}

impl FromStr for FieldScalar {
    type Err = ArithError;

    /// Accepts `p/q`, `p`, `p/q+r/s*sqrt(d)`, `p/q-r/s*sqrt(d)`, `r/s*sqrt(d)`,
    /// `sqrt(d)` and `-sqrt(d)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let text: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let err = || ArithError::Parse(s.to_string());
        let Some(root_at) = text.find("sqrt(") else {
            return parse_rational(&text).map(FieldScalar::Rational);
        };
        let tail = &text[root_at + 5..];
        let d: u64 = tail
            .strip_suffix(')')
            .ok_or_else(err)?
            .parse()
            .map_err(|_| err())?;
        let head = &text[..root_at];
        let head = match head.strip_suffix('*') {
            Some(h) => h,
            None if head.is_empty() || head.ends_with(['+', '-']) => head,
            None => return Err(err()),
        };
        // Split `head` into the rational part and the signed coefficient of
        // the radical: the last '+' or '-' that is not a leading sign.
        let split = head
            .char_indices()
            .filter(|&(i, c)| i > 0 && (c == '+' || c == '-'))
            .map(|(i, _)| i)
            .last();
        let (real_text, coeff_text) = match split {
            Some(i) => (&head[..i], &head[i..]),
            None => ("", head),
        };
        let real = if real_text.is_empty() {
            Rational::zero()
        } else {
            parse_rational(real_text)?
        };
        let coeff = match coeff_text {
            "" | "+" => Rational::one(),
            "-" => -Rational::one(),
            c => parse_rational(c.strip_prefix('+').unwrap_or(c))?,
        };
        FieldScalar::quad(real, coeff, d)
    }
}

/// Least common multiple of the denominators of both parts of `x`.
pub fn denominator_lcm(x: &FieldScalar) -> BigInt {
    let (a, b) = x.parts();
    a.denom().lcm(b.denom())
}

/// Gcd of the integer numerators of both parts, assuming denominators are 1.
pub fn numerator_gcd(x: &FieldScalar) -> BigInt {
    let (a, b) = x.parts();
    a.numer().gcd(b.numer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(s: &str) -> FieldScalar {
        s.parse().unwrap()
    }

    #[test]
    fn rational_sum() {
        assert_eq!(q("1/2") + q("1/3"), q("5/6"));
    }

    #[test]
    fn sqrt_two_squared() {
        let s = FieldScalar::sqrt_multiple(1, 2).unwrap();
        let sq = &s * &s;
        assert_eq!(sq, FieldScalar::from_int(2));
        assert!(matches!(sq, FieldScalar::Rational(_)));
    }

    #[test]
    fn h7_entry_product() {
        let m = FieldScalar::sqrt_multiple(-1, 2).unwrap();
        assert!((&m * &m - FieldScalar::from_int(2)).is_zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(
            q("3").checked_div(&FieldScalar::zero()),
            Err(ArithError::DivisionByZero)
        );
        assert_eq!(
            FieldScalar::zero().checked_recip(),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn mismatched_radicands_are_an_error() {
        let a = FieldScalar::sqrt_multiple(1, 2).unwrap();
        let b = FieldScalar::sqrt_multiple(1, 3).unwrap();
        assert_eq!(a.checked_add(&b), Err(ArithError::RadicandMismatch(2, 3)));
        assert!(a.checked_mul(&b).is_err());
        // rationals mix with either
        assert!(a.checked_add(&q("1/2")).is_ok());
    }

    #[test]
    fn bad_radicands_rejected() {
        assert!(FieldScalar::sqrt_multiple(1, 4).is_err());
        assert!(FieldScalar::sqrt_multiple(1, 1).is_err());
        assert!(FieldScalar::sqrt_multiple(1, 12).is_err());
        assert!(FieldScalar::sqrt_multiple(1, 6).is_ok());
    }

    #[test]
    fn render_formats() {
        assert_eq!(q("3").to_string(), "3/1");
        assert_eq!(q("-4/6").to_string(), "-2/3");
        assert_eq!(q("0").to_string(), "0/1");
        assert_eq!(
            FieldScalar::sqrt_multiple(-1, 2).unwrap().to_string(),
            "0/1-1/1*sqrt(2)"
        );
        assert_eq!(q("1/2+3/4*sqrt(5)").to_string(), "1/2+3/4*sqrt(5)");
    }

    #[test]
    fn parse_shorthands() {
        let r2 = FieldScalar::sqrt_multiple(1, 2).unwrap();
        assert_eq!(q("sqrt(2)"), r2);
        assert_eq!(q("-sqrt(2)"), -&r2);
        assert_eq!(q("2*sqrt(2)"), &r2 + &r2);
        assert_eq!(q("-1/2-sqrt(2)"), q("-1/2") - &r2);
        assert_eq!(q("1+0*sqrt(2)"), q("1"));
        assert!("1/0".parse::<FieldScalar>().is_err());
        assert!("abc".parse::<FieldScalar>().is_err());
        assert!("2sqrt(2)".parse::<FieldScalar>().is_err());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-30i64..=30, 1i64..=12)
            .prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)))
    }

    fn scalar() -> impl Strategy<Value = FieldScalar> {
        prop_oneof![
            small_rational().prop_map(FieldScalar::Rational),
            (small_rational(), small_rational())
                .prop_map(|(a, b)| FieldScalar::quad(a, b, 2).unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn inverse_is_exact(x in scalar()) {
            prop_assume!(!x.is_zero());
            prop_assert!((&x * &x.checked_recip().unwrap()).is_one());
        }

        #[test]
        fn render_parse_round_trip(x in scalar()) {
            prop_assert_eq!(x.to_string().parse::<FieldScalar>().unwrap(), x);
        }

        #[test]
        fn quad_zero_iff_both_parts_zero(a in small_rational(), b in small_rational()) {
            // sqrt(2) is irrational, so a + b sqrt(2) = 0 only for a = b = 0;
            // the float value is used as a brute-force witness of non-vanishing.
            let x = FieldScalar::quad(a.clone(), b.clone(), 2).unwrap();
            let brute = a.is_zero() && b.is_zero();
            prop_assert_eq!(x.is_zero(), brute);
            if !brute {
                prop_assert!(x.to_f64().abs() > 1e-12);
            }
        }

        #[test]
        fn distributive(x in scalar(), y in scalar(), z in scalar()) {
            prop_assert_eq!(&x * &(&y + &z), &x * &y + &x * &z);
        }
    }
}
