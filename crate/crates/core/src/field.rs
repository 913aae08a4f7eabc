//! Scalars of the two characteristic-two fields used throughout: the prime
//! field F2 and GF(4) = F2[w]/(w^2 + w + 1).
//!
//! A [`Scalar`] is stored as two bits `(a, b)` meaning `a + b*w`. Elements of
//! F2 are exactly the scalars with `b = 0`, so F2 arithmetic is the
//! restriction of GF(4) arithmetic and the field tag lives on the containers
//! (vectors, matrices, polynomials) rather than on every scalar.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Which coefficient field a container lives over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    F2,
    F4,
}

impl Field {
    /// Number of elements.
    pub fn order(self) -> usize {
        match self {
            Field::F2 => 2,
            Field::F4 => 4,
        }
    }

    /// All elements, zero first.
    pub fn elements(self) -> impl Iterator<Item = Scalar> {
        (0..self.order() as u8).map(Scalar)
    }

    /// Nonzero elements, one first.
    pub fn units(self) -> impl Iterator<Item = Scalar> {
        (1..self.order() as u8).map(Scalar)
    }

    pub fn contains(self, s: Scalar) -> bool {
        match self {
            Field::F2 => s.0 < 2,
            Field::F4 => s.0 < 4,
        }
    }

    pub fn check(self, s: Scalar) -> Result<Scalar, Error> {
        if self.contains(s) {
            Ok(s)
        } else {
            Err(Error::FieldMismatch(format!("{s} is not an element of {self}")))
        }
    }

    /// The smallest field containing both.
    pub fn join(self, other: Field) -> Field {
        self.max(other)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::F2 => write!(f, "F2"),
            Field::F4 => write!(f, "F4"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "F2" | "f2" | "GF2" => Ok(Field::F2),
            "F4" | "f4" | "GF4" => Ok(Field::F4),
            other => Err(Error::Parse(format!("unknown field {other:?}"))),
        }
    }
}

/// An element `a + b*w` of GF(4), with `w^2 = w + 1`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Scalar(u8);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);
    /// The primitive cube root of unity `w`.
    pub const W: Scalar = Scalar(2);
    /// `w + 1 = w^2`.
    pub const W2: Scalar = Scalar(3);

    pub fn from_bits(a: bool, b: bool) -> Scalar {
        Scalar(a as u8 | ((b as u8) << 1))
    }

    pub fn from_bool(bit: bool) -> Scalar {
        Scalar(bit as u8)
    }

    /// Constant part `a`.
    pub fn lo(self) -> bool {
        self.0 & 1 == 1
    }

    /// Coefficient of `w`.
    pub fn hi(self) -> bool {
        self.0 & 2 == 2
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn inv(self) -> Option<Scalar> {
        match self.0 {
            0 => None,
            1 => Some(Scalar::ONE),
            2 => Some(Scalar::W2),
            _ => Some(Scalar::W),
        }
    }

    pub fn pow(self, e: u32) -> Scalar {
        let mut acc = Scalar::ONE;
        for _ in 0..e {
            acc *= self;
        }
        acc
    }

    /// Frobenius `s -> s^2`; swaps `w` and `w^2`.
    pub fn frobenius(self) -> Scalar {
        self * self
    }
}

// Addition in characteristic 2 is xor of the coordinate bits.
impl Add for Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 ^ rhs.0)
    }
}

impl AddAssign for Scalar {
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        // (a + bw)(c + dw) = (ac + bd) + (ad + bc + bd)w
        let (a, b) = (self.0 & 1, self.0 >> 1);
        let (c, d) = (rhs.0 & 1, rhs.0 >> 1);
        let lo = (a & c) ^ (b & d);
        let hi = (a & d) ^ (b & c) ^ (b & d);
        Scalar(lo | (hi << 1))
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        *self = *self * rhs;
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            0 => write!(f, "0"),
            1 => write!(f, "1"),
            2 => write!(f, "w"),
            _ => write!(f, "w+1"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = compact
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(&compact);
        match inner {
            "0" => Ok(Scalar::ZERO),
            "1" => Ok(Scalar::ONE),
            "w" => Ok(Scalar::W),
            "w+1" | "1+w" | "w^2" => Ok(Scalar::W2),
            other => Err(Error::Parse(format!("bad scalar {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf4_multiplication_table() {
        assert_eq!(Scalar::W * Scalar::W, Scalar::W2);
        assert_eq!(Scalar::W * Scalar::W2, Scalar::ONE);
        assert_eq!(Scalar::W2 * Scalar::W2, Scalar::W);
        for a in Field::F4.elements() {
            assert_eq!(a * Scalar::ZERO, Scalar::ZERO);
            assert_eq!(a * Scalar::ONE, a);
            for b in Field::F4.elements() {
                assert_eq!(a * b, b * a);
                for c in Field::F4.elements() {
                    assert_eq!((a * b) * c, a * (b * c));
                    assert_eq!(a * (b + c), a * b + a * c);
                }
            }
        }
    }

    #[test]
    fn inverses() {
        for a in Field::F4.units() {
            assert_eq!(a * a.inv().unwrap(), Scalar::ONE);
        }
        assert!(Scalar::ZERO.inv().is_none());
        assert_eq!(Scalar::W.pow(3), Scalar::ONE);
    }

    #[test]
    fn f2_is_a_subfield() {
        for a in Field::F2.elements() {
            for b in Field::F2.elements() {
                assert!(Field::F2.contains(a * b));
                assert!(Field::F2.contains(a + b));
            }
        }
        assert!(!Field::F2.contains(Scalar::W));
    }

    #[test]
    fn parse_roundtrip() {
        for a in Field::F4.elements() {
            assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }
        assert_eq!("(w+1)".parse::<Scalar>().unwrap(), Scalar::W2);
        assert!("2".parse::<Scalar>().is_err());
    }
}
