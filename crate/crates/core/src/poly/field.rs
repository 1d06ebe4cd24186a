//! Exact coefficient fields: the rationals and word-sized prime fields.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default prime for generic computations.
pub const DEFAULT_PRIME: u32 = 31991;

/// Largest admissible prime modulus. Products of two residues fit in a `u64`.
const MAX_PRIME: u32 = (1 << 31) - 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// The prime field `F_p`. Rejects composites, `p = 2`, and moduli above 2^31 - 1.
    pub fn prime(p: u32) -> Result<Field> {
        if p == 2 {
            return Err(Error::InvalidField("characteristic 2 is not supported".into()));
        }
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} exceeds {MAX_PRIME}")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime(p))
    }

    pub fn default_prime() -> Field {
        Field::Prime(DEFAULT_PRIME)
    }

    /// 0 for the rationals.
    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::residue(v.rem_euclid(p as i64) as u32, p),
        }
    }

    pub fn from_u64(&self, v: u64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => Scalar::residue((v % p as u64) as u32, p),
        }
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            Field::Prime(p) => {
                let r = (v % BigInt::from(p)).to_i64().expect("residue fits");
                Scalar::residue(r.rem_euclid(p as i64) as u32, p)
            }
        }
    }

    /// Draws a field element from a 64-bit random word: `w mod p` for prime
    /// fields, an integer in `[-100, 100]` for the rationals.
    pub fn sample(&self, word: u64) -> Scalar {
        match *self {
            Field::Rational => self.from_i64((word % 201) as i64 - 100),
            Field::Prime(_) => self.from_u64(word),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of a [`Field`]. Rationals are kept in lowest terms with a
/// positive denominator; residues lie in `[0, modulus)`.
///
/// Arithmetic between scalars of different fields panics; polynomial-level
/// operations check ring compatibility before reaching here.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u32, modulus: u32 },
}

impl Scalar {
    #[inline]
    fn residue(value: u32, modulus: u32) -> Scalar {
        Scalar::Residue { value, modulus }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Residue { value, modulus } => {
                Scalar::residue(pow_mod(*value, modulus - 2, *modulus), *modulus)
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Signed integer view used for printing: residues map to the symmetric
    /// range `(-p/2, p/2]`.
    pub fn is_negative(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_negative(),
            Scalar::Residue { value, modulus } => *value > modulus / 2,
        }
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// The residue value, if this is a prime-field element.
    pub fn residue_value(&self) -> Option<u32> {
        match self {
            Scalar::Residue { value, .. } => Some(*value),
            Scalar::Rational(_) => None,
        }
    }

    fn assert_same(&self, other: &Scalar) {
        debug_assert_eq!(self.field(), other.field(), "scalar field mismatch");
    }
}

fn pow_mod(b: u32, mut e: u32, m: u32) -> u32 {
    let m64 = m as u64;
    let mut acc = 1u64 % m64;
    let mut base = b as u64 % m64;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m64;
        }
        base = base * base % m64;
        e >>= 1;
    }
    acc as u32
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Residue { value, modulus } => {
                if self.is_negative() {
                    write!(f, "-{}", modulus - value)
                } else {
                    write!(f, "{value}")
                }
            }
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                let s = *a as u64 + *b as u64;
                let m = *modulus as u64;
                Scalar::residue(if s >= m { s - m } else { s } as u32, *modulus)
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.assert_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                let v = if a >= b { a - b } else { modulus - (b - a) };
                Scalar::residue(v, *modulus)
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { value: a, modulus }, Scalar::Residue { value: b, .. }) => {
                Scalar::residue(((*a as u64 * *b as u64) % *modulus as u64) as u32, *modulus)
            }
            _ => panic!("scalar field mismatch"),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => {
                Scalar::residue(if *value == 0 { 0 } else { modulus - value }, *modulus)
            }
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_validation() {
        assert!(Field::prime(31991).is_ok());
        assert!(Field::prime(7).is_ok());
        assert!(Field::prime(2).is_err());
        assert!(Field::prime(9).is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn residues_reduce() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        assert_eq!(f.from_i64(15).to_string(), "1");
        assert_eq!(f.from_i64(-3).to_string(), "-3");
        let a = f.from_i64(3);
        assert!((&a * &a.inv().unwrap()).is_one());
    }

    #[test]
    fn rationals_lowest_terms() {
        let q = Scalar::Rational(BigRational::new(BigInt::from(4), BigInt::from(-6)));
        assert_eq!(q.to_string(), "-2/3");
        assert!(q.is_negative());
        assert_eq!(q.inv().unwrap().to_string(), "-3/2");
    }

    #[test]
    fn zero_has_no_inverse() {
        assert!(Field::Prime(11).zero().inv().is_none());
        assert!(Field::Rational.zero().inv().is_none());
    }
}
