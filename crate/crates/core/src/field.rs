//! Exact field scalars: arbitrary-precision rationals and odd prime fields.
//!
//! Every scalar carries its field, so mixing elements of different fields is
//! caught immediately. Values are kept canonical at all times: rationals in
//! lowest terms with positive denominator (guaranteed by `BigRational`),
//! prime-field elements as residues in `0..p`. Equality on canonical forms is
//! plain structural equality.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Identifies the field scalars live in: `Q` or `F_p` for an odd prime `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    kind: FieldKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum FieldKind {
    Rational,
    Prime(u64),
}

pub(crate) fn is_odd_prime(p: u64) -> bool {
    if p < 3 || p % 2 == 0 {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub const RATIONAL: FieldSpec = FieldSpec {
        kind: FieldKind::Rational,
    };

    /// The field `F_p`. Fails unless `p` is an odd prime; characteristic 2 is
    /// not supported anywhere in this crate.
    pub fn prime(p: u64) -> Result<FieldSpec> {
        if is_odd_prime(p) {
            Ok(FieldSpec {
                kind: FieldKind::Prime(p),
            })
        } else {
            Err(Error::NotOddPrime(p))
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self.kind, FieldKind::Rational)
    }

    /// The modulus for prime fields, `None` over the rationals.
    pub fn modulus(&self) -> Option<u64> {
        match self.kind {
            FieldKind::Rational => None,
            FieldKind::Prime(p) => Some(p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    /// Embeds an integer: as-is over `Q`, reduced mod `p` over `F_p`.
    pub fn from_i64(&self, n: i64) -> Scalar {
        match self.kind {
            FieldKind::Rational => Scalar(Repr::Rational(BigRational::from_integer(n.into()))),
            FieldKind::Prime(p) => {
                let r = (n as i128).rem_euclid(p as i128) as u64;
                Scalar(Repr::Prime { p, val: r })
            }
        }
    }

    pub fn from_u64(&self, n: u64) -> Scalar {
        match self.kind {
            FieldKind::Rational => Scalar(Repr::Rational(BigRational::from_integer(n.into()))),
            FieldKind::Prime(p) => Scalar(Repr::Prime { p, val: n % p }),
        }
    }

    /// Parses the text encoding: `"n"` or `"n/d"` in base 10 (optional leading
    /// `-`) over `Q`; a base-10 residue (optionally signed) over `F_p`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = |reason: &str| Error::ParseScalar {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let text = text.trim();
        match self.kind {
            FieldKind::Rational => {
                let (num_s, den_s) = match text.split_once('/') {
                    Some((n, d)) => (n, d),
                    None => (text, "1"),
                };
                let num: BigInt = num_s.parse().map_err(|_| bad("invalid numerator"))?;
                let den: BigInt = den_s.parse().map_err(|_| bad("invalid denominator"))?;
                if den.is_zero() {
                    return Err(bad("zero denominator"));
                }
                Ok(Scalar(Repr::Rational(BigRational::new(num, den))))
            }
            FieldKind::Prime(p) => {
                let n: i128 = text.parse().map_err(|_| bad("invalid integer"))?;
                let r = n.rem_euclid(p as i128) as u64;
                Ok(Scalar(Repr::Prime { p, val: r }))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact field element together with its field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Prime { p: u64, val: u64 },
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Euler's criterion for `a` mod an odd prime `p`; zero counts as a square.
pub(crate) fn is_quadratic_residue(a: u64, p: u64) -> bool {
    let a = a % p;
    if a == 0 {
        return true;
    }
    pow_mod(a, (p - 1) / 2, p) == 1
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Rational(_) => FieldSpec::RATIONAL,
            Repr::Prime { p, .. } => FieldSpec {
                kind: FieldKind::Prime(*p),
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Prime { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_one(),
            Repr::Prime { val, .. } => *val == 1,
        }
    }

    /// The underlying reduced fraction, for rational scalars only.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Prime { .. } => None,
        }
    }

    /// `(p, residue)` for prime-field scalars only.
    pub fn as_prime(&self) -> Option<(u64, u64)> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Prime { p, val } => Some((*p, *val)),
        }
    }

    fn same_field<'a>(&'a self, other: &'a Scalar) -> (&'a Repr, &'a Repr) {
        assert_eq!(
            self.field(),
            other.field(),
            "scalar operands belong to different fields"
        );
        (&self.0, &other.0)
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match self.same_field(other) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a + b)),
            (Repr::Prime { p, val: a }, Repr::Prime { val: b, .. }) => {
                let mut s = a + b;
                if s >= *p {
                    s -= p;
                }
                Scalar(Repr::Prime { p: *p, val: s })
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        match self.same_field(other) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a - b)),
            (Repr::Prime { p, val: a }, Repr::Prime { val: b, .. }) => {
                let s = if a >= b { a - b } else { p - (b - a) };
                Scalar(Repr::Prime { p: *p, val: s })
            }
            _ => unreachable!(),
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match self.same_field(other) {
            (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational(a * b)),
            (Repr::Prime { p, val: a }, Repr::Prime { val: b, .. }) => Scalar(Repr::Prime {
                p: *p,
                val: mul_mod(*a, *b, *p),
            }),
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match &self.0 {
            Repr::Rational(a) => Scalar(Repr::Rational(-a)),
            Repr::Prime { p, val } => Scalar(Repr::Prime {
                p: *p,
                val: if *val == 0 { 0 } else { p - val },
            }),
        }
    }

    /// Multiplicative inverse; fails on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        match &self.0 {
            Repr::Rational(a) => Ok(Scalar(Repr::Rational(a.recip()))),
            Repr::Prime { p, val } => Ok(Scalar(Repr::Prime {
                p: *p,
                // Fermat: val^(p-2) ≡ val^(-1) for p prime, val ≠ 0.
                val: pow_mod(*val, p - 2, *p),
            })),
        }
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Repr::Prime { val, .. } => write!(f, "{val}"),
        }
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar(Repr::Rational(r))
    }
}

// Operator sugar on references only; the inherent methods stay the primary
// interface and would be shadowed by owned-receiver trait impls.
macro_rules! scalar_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                Scalar::$method(self, rhs)
            }
        }
    };
}

scalar_binop!(Add, add);
scalar_binop!(Sub, sub);
scalar_binop!(Mul, mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

/// The sign of a rational scalar: -1, 0 or 1. Panics on prime-field input.
pub(crate) fn rational_sign(s: &Scalar) -> i8 {
    let r = s.as_rational().expect("sign is only defined over Q");
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar(Repr::Rational(BigRational::new(n.into(), d.into())))
    }

    #[test]
    fn odd_prime_validation() {
        assert!(FieldSpec::prime(3).is_ok());
        assert!(FieldSpec::prime(5).is_ok());
        assert!(FieldSpec::prime(97).is_ok());
        assert_eq!(FieldSpec::prime(2), Err(Error::NotOddPrime(2)));
        assert_eq!(FieldSpec::prime(9), Err(Error::NotOddPrime(9)));
        assert_eq!(FieldSpec::prime(1), Err(Error::NotOddPrime(1)));
        assert_eq!(FieldSpec::prime(0), Err(Error::NotOddPrime(0)));
    }

    #[test]
    fn rational_arithmetic() {
        assert_eq!(q(1, 2).add(&q(1, 3)), q(5, 6));
        let a = q(7, 3);
        assert!(a.add(&a.neg()).is_zero());
        assert_eq!(q(2, 3).inv().unwrap(), q(3, 2));
        assert_eq!(q(1, 1).inv().unwrap(), q(1, 1));
    }

    #[test]
    fn prime_arithmetic() {
        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.from_i64(3).mul(&f5.from_i64(4)), f5.from_i64(2));
        assert_eq!(f5.from_i64(3).inv().unwrap(), f5.from_i64(2));
        assert_eq!(f5.from_i64(-1), f5.from_i64(4));
        let a = f5.from_i64(4);
        assert!(a.add(&a.neg()).is_zero());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert_eq!(q(0, 1).inv(), Err(Error::DivisionByZero));
        let f7 = FieldSpec::prime(7).unwrap();
        assert_eq!(f7.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn canonical_representation() {
        // Equal elements have identical stored forms.
        let f = FieldSpec::RATIONAL;
        let a = f.parse_scalar("2/4").unwrap();
        let b = f.parse_scalar("1/2").unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "1/2");
        assert_eq!(f.parse_scalar("-3/-6").unwrap().to_string(), "1/2");
        assert_eq!(f.parse_scalar("4/2").unwrap().to_string(), "2");

        let f5 = FieldSpec::prime(5).unwrap();
        assert_eq!(f5.parse_scalar("12").unwrap(), f5.from_i64(2));
        assert_eq!(f5.parse_scalar("-1").unwrap().to_string(), "4");
    }

    #[test]
    fn parse_rejects_garbage() {
        let f = FieldSpec::RATIONAL;
        assert!(f.parse_scalar("1/0").is_err());
        assert!(f.parse_scalar("a").is_err());
        assert!(f.parse_scalar("1/2/3").is_err());
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(f5.parse_scalar("1/2").is_err());
    }

    #[test]
    #[should_panic(expected = "different fields")]
    fn field_mismatch_panics() {
        let f5 = FieldSpec::prime(5).unwrap();
        let _ = q(1, 2).add(&f5.one());
    }

    #[test]
    fn quadratic_residues_mod_7() {
        let squares: Vec<u64> = (0..7).filter(|&a| is_quadratic_residue(a, 7)).collect();
        assert_eq!(squares, vec![0, 1, 2, 4]);
    }

    fn fields() -> Vec<FieldSpec> {
        vec![
            FieldSpec::RATIONAL,
            FieldSpec::prime(5).unwrap(),
            FieldSpec::prime(97).unwrap(),
        ]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        // Field axioms on random triples, both field kinds.
        #[test]
        fn field_axioms(a in -50i64..50, b in -50i64..50, c in -50i64..50, fi in 0usize..3) {
            let f = fields()[fi];
            let (x, y, z) = (f.from_i64(a), f.from_i64(b), f.from_i64(c));
            prop_assert_eq!(x.add(&y).add(&z), x.add(&y.add(&z)));
            prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
            prop_assert_eq!(x.add(&y), y.add(&x));
            prop_assert_eq!(x.mul(&y), y.mul(&x));
            prop_assert_eq!(x.mul(&y.add(&z)), x.mul(&y).add(&x.mul(&z)));
            prop_assert!(x.add(&x.neg()).is_zero());
            prop_assert_eq!(x.sub(&y), x.add(&y.neg()));
            if !x.is_zero() {
                prop_assert!(x.mul(&x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn display_parse_round_trip(n in -1000i64..1000, d in 1i64..1000) {
            let f = FieldSpec::RATIONAL;
            let s = q(n, d);
            prop_assert_eq!(f.parse_scalar(&s.to_string()).unwrap(), s);
        }
    }
}
