//! Exact scalars over the rationals or a prime field.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::traits::{One, Zero};

use crate::error::{Error, Result};

/// Deterministic Miller–Rabin primality test, exact for all `u64` inputs.
///
/// The witness set `{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}` is known to
/// be sufficient for every integer below 3.3 * 10^24, which covers `u64`.
pub fn is_prime_u64(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Coefficient field for every linear-algebra object in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Field {
    /// The field of rational numbers, with arbitrary-precision arithmetic.
    Rationals,
    /// The prime field with `p` elements.
    Prime(u64),
}

impl Field {
    /// Builds `F_p`, verifying that `p` is prime.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime_u64(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    /// The characteristic: 0 for the rationals, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        Scalar::zero(*self)
    }

    pub fn one(&self) -> Scalar {
        Scalar::one(*self)
    }

    pub fn scalar_from_i64(&self, n: i64) -> Scalar {
        Scalar::from_i64(*self, n)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

/// An exact field element, tagged with the field it belongs to.
///
/// Arithmetic between scalars of different fields is a programming error and
/// panics; the matrix layer validates fields at construction time so that
/// every downstream computation stays within a single field.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Scalar {
    Rat(BigRational),
    Fp { p: u64, v: u64 },
}

impl Scalar {
    pub fn zero(field: Field) -> Scalar {
        match field {
            Field::Rationals => Scalar::Rat(BigRational::zero()),
            Field::Prime(p) => Scalar::Fp { p, v: 0 },
        }
    }

    pub fn one(field: Field) -> Scalar {
        match field {
            Field::Rationals => Scalar::Rat(BigRational::one()),
            Field::Prime(p) => Scalar::Fp { p, v: 1 % p },
        }
    }

    pub fn from_i64(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => {
                let r = (n as i128).rem_euclid(p as i128);
                Scalar::Fp { p, v: r as u64 }
            }
        }
    }

    /// Builds `num/den` in the given field. `den` must be nonzero and, over a
    /// prime field, invertible (automatic when it is not a multiple of `p`).
    pub fn from_fraction(field: Field, num: i64, den: i64) -> Result<Scalar> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        Scalar::from_i64(field, num).div(&Scalar::from_i64(field, den))
    }

    /// Parses `"n"` or `"n/d"`; over a prime field, `n/d` means `n * d^{-1}`.
    pub fn parse(field: Field, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let bad = || Error::Input(format!("cannot parse {text:?} as a scalar over {field}"));
        match field {
            Field::Rationals => {
                let r = BigRational::from_str(text).map_err(|_| bad())?;
                Ok(Scalar::Rat(r))
            }
            Field::Prime(_) => {
                if let Some((n, d)) = text.split_once('/') {
                    let n: i64 = n.trim().parse().map_err(|_| bad())?;
                    let d: i64 = d.trim().parse().map_err(|_| bad())?;
                    Scalar::from_fraction(field, n, d)
                } else {
                    let n: i64 = text.parse().map_err(|_| bad())?;
                    Ok(Scalar::from_i64(field, n))
                }
            }
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rat(_) => Field::Rationals,
            Scalar::Fp { p, .. } => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { p, v } => *v == 1 % p,
        }
    }

    fn check_same_field(&self, other: &Scalar) {
        assert!(
            self.field() == other.field(),
            "scalar arithmetic across different fields ({} vs {}): internal invariant violated",
            self.field(),
            other.field()
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same_field(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => {
                let s = (*a as u128 + *b as u128) % *p as u128;
                Scalar::Fp { p: *p, v: s as u64 }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { p - v },
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same_field(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { v: b, .. }) => Scalar::Fp {
                p: *p,
                v: mul_mod(*a, *b, *p),
            },
            _ => unreachable!(),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(a) => Scalar::Rat(a.recip()),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: pow_mod(*v, p - 2, *p),
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// The value as an `i64` if it is an integer in range (handy for
    /// rendering and for small determinant grids); `None` otherwise.
    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    let n = r.numer();
                    n.try_into().ok()
                } else {
                    None
                }
            }
            Scalar::Fp { v, .. } => (*v).try_into().ok(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_oracle_values() {
        // Frozen answers from an independent sieve.
        let primes = [2u64, 3, 5, 7, 11, 101, 7919, 104729, 2147483647];
        let composites = [0u64, 1, 4, 9, 91, 561, 1105, 8911, 4294967297];
        for p in primes {
            assert!(is_prime_u64(p), "{p} should be prime");
        }
        for c in composites {
            assert!(!is_prime_u64(c), "{c} should be composite");
        }
    }

    #[test]
    fn rational_arithmetic_exact() {
        let f = Field::Rationals;
        let a = Scalar::from_fraction(f, 1, 3).unwrap();
        let b = Scalar::from_fraction(f, 1, 6).unwrap();
        let sum = a.add(&b);
        assert_eq!(sum, Scalar::from_fraction(f, 1, 2).unwrap());
        assert_eq!(sum.to_string(), "1/2");
        assert_eq!(a.mul(&b), Scalar::from_fraction(f, 1, 18).unwrap());
        assert_eq!(a.sub(&a), Scalar::zero(f));
        assert_eq!(a.div(&b).unwrap(), Scalar::from_i64(f, 2));
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = Scalar::from_i64(f, 3);
        let b = Scalar::from_i64(f, 5);
        assert_eq!(a.add(&b), Scalar::from_i64(f, 1)); // 8 = 1 mod 7
        assert_eq!(a.mul(&b), Scalar::from_i64(f, 1)); // 15 = 1 mod 7
        assert_eq!(a.inv().unwrap(), b); // 3 * 5 = 1 mod 7
        assert_eq!(Scalar::from_i64(f, -1), Scalar::from_i64(f, 6));
        assert_eq!(Scalar::parse(f, "1/3").unwrap(), b);
        assert!(Field::prime(6).is_err());
    }

    #[test]
    fn parse_rationals() {
        let f = Field::Rationals;
        assert_eq!(Scalar::parse(f, "-4").unwrap(), Scalar::from_i64(f, -4));
        assert_eq!(
            Scalar::parse(f, "3/4").unwrap(),
            Scalar::from_fraction(f, 3, 4).unwrap()
        );
        assert!(Scalar::parse(f, "x").is_err());
    }
}
