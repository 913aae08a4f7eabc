//! The exterior algebra `Λ = Λ(y1, y2)` in characteristic two, the order-3
//! automorphism `Ψ(q)`, and the skew group algebra `Λ∗Q` for `Q` trivial or
//! cyclic of order 3.
//!
//! Basis order is fixed everywhere: `(1, y1, y2, y1y2)` for `Λ`, and
//! `(1, y1, y2, y1y2) × (e, q, q^2)` (group index outermost) for `Λ∗C3`.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Matrix;
use crate::text::split_terms;

/// The finite group acting on `Λ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Group {
    #[serde(rename = "trivial")]
    Trivial,
    C3,
}

impl Group {
    pub fn order(self) -> usize {
        match self {
            Group::Trivial => 1,
            Group::C3 => 3,
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Trivial => write!(f, "trivial"),
            Group::C3 => write!(f, "C3"),
        }
    }
}

impl FromStr for Group {
    type Err = Error;
    fn from_str(s: &str) -> Result<Group> {
        match s.trim() {
            "trivial" | "1" | "e" => Ok(Group::Trivial),
            "C3" | "c3" => Ok(Group::C3),
            other => Err(Error::Parse(format!("unknown group {other:?}"))),
        }
    }
}

/// Element `c0 + c1 y1 + c2 y2 + c12 y1y2` of `Λ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct ExtElem(pub [Scalar; 4]);

const BASIS_NAMES: [&str; 4] = ["1", "y1", "y2", "y1*y2"];

impl ExtElem {
    pub const ZERO: ExtElem = ExtElem([Scalar::ZERO; 4]);
    pub const ONE: ExtElem = ExtElem([Scalar::ONE, Scalar::ZERO, Scalar::ZERO, Scalar::ZERO]);
    pub const Y1: ExtElem = ExtElem([Scalar::ZERO, Scalar::ONE, Scalar::ZERO, Scalar::ZERO]);
    pub const Y2: ExtElem = ExtElem([Scalar::ZERO, Scalar::ZERO, Scalar::ONE, Scalar::ZERO]);
    pub const Y12: ExtElem = ExtElem([Scalar::ZERO, Scalar::ZERO, Scalar::ZERO, Scalar::ONE]);

    /// The `i`-th basis element in the order `(1, y1, y2, y1y2)`.
    pub fn basis(i: usize) -> ExtElem {
        let mut c = [Scalar::ZERO; 4];
        c[i] = Scalar::ONE;
        ExtElem(c)
    }

    /// All 16 elements with F2 coefficients.
    pub fn all_f2() -> impl Iterator<Item = ExtElem> {
        (0u8..16).map(|m| ExtElem(std::array::from_fn(|i| Scalar::from_bool(m >> i & 1 == 1))))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|c| c.is_zero())
    }

    /// Augmentation: the constant term.
    pub fn aug(&self) -> Scalar {
        self.0[0]
    }

    pub fn scale(&self, s: Scalar) -> ExtElem {
        ExtElem(self.0.map(|c| c * s))
    }

    /// `Ψ(q^power)`: the algebra automorphism with `y1 -> y2`,
    /// `y2 -> y1 + y2` for `power = 1`.
    pub fn psi(&self, power: usize) -> ExtElem {
        let mut a = *self;
        for _ in 0..power % 3 {
            let [c0, c1, c2, c12] = a.0;
            // y1 -> y2, y2 -> y1 + y2, y1y2 -> y2(y1 + y2) = y1y2
            a = ExtElem([c0, c2, c1 + c2, c12]);
        }
        a
    }

    /// Matrix of `x -> x * self` on `Λ` (column vectors, fixed basis).
    pub fn mul_matrix(&self, field: Field) -> Matrix {
        let cols: Vec<_> = (0..4)
            .map(|j| (ExtElem::basis(j) * *self).to_vector(field))
            .collect();
        Matrix::from_columns(field, 4, &cols)
    }

    /// Matrix of `Ψ(q^power)` on `Λ`.
    pub fn psi_matrix(power: usize, field: Field) -> Matrix {
        let cols: Vec<_> = (0..4).map(|j| ExtElem::basis(j).psi(power).to_vector(field)).collect();
        Matrix::from_columns(field, 4, &cols)
    }

    pub fn to_vector(&self, field: Field) -> crate::linalg::Vector {
        crate::linalg::Vector::from_scalars(field, &self.0).expect("coefficients lie in the field")
    }

    /// Image under the equivariant isomorphism `Λ -> F[P]`,
    /// `y1 -> λ1 + λ1λ2`, `y2 -> λ2 + λ1λ2` with `λi = fi - 1`.
    pub fn to_group_algebra(&self) -> GroupAlgElem {
        let one = GroupAlgElem::ONE;
        let l1 = GroupAlgElem::f(1) + one;
        let l2 = GroupAlgElem::f(2) + one;
        let y1 = l1 + l1 * l2;
        let y2 = l2 + l1 * l2;
        let [c0, c1, c2, c12] = self.0;
        one.scale(c0) + y1.scale(c1) + y2.scale(c2) + (y1 * y2).scale(c12)
    }
}

impl Add for ExtElem {
    type Output = ExtElem;
    fn add(self, rhs: ExtElem) -> ExtElem {
        ExtElem(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Mul for ExtElem {
    type Output = ExtElem;
    fn mul(self, rhs: ExtElem) -> ExtElem {
        let [a0, a1, a2, a12] = self.0;
        let [b0, b1, b2, b12] = rhs.0;
        ExtElem([
            a0 * b0,
            a0 * b1 + a1 * b0,
            a0 * b2 + a2 * b0,
            a0 * b12 + a12 * b0 + a1 * b2 + a2 * b1,
        ])
    }
}

fn write_coef(f: &mut fmt::Formatter<'_>, c: Scalar, mono: &str) -> fmt::Result {
    match (c, mono) {
        (Scalar::ONE, m) => write!(f, "{m}"),
        (Scalar::W, "1") => write!(f, "w"),
        (Scalar::W, m) => write!(f, "w*{m}"),
        (_, "1") => write!(f, "(w+1)"),
        (_, m) => write!(f, "(w+1)*{m}"),
    }
}

impl fmt::Display for ExtElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (c, name) in self.0.iter().zip(BASIS_NAMES) {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write_coef(f, *c, name)?;
        }
        Ok(())
    }
}

/// Parse a product of factors from `{1, y1, y2, w, (w+1)}`.
fn parse_ext_monomial(s: &str) -> Result<ExtElem> {
    let mut acc = ExtElem::ONE;
    for factor in s.split('*') {
        let factor = factor.trim();
        let x = match factor {
            "1" => ExtElem::ONE,
            "y1" => ExtElem::Y1,
            "y2" => ExtElem::Y2,
            "y12" => ExtElem::Y12,
            _ => ExtElem::ONE.scale(factor.parse::<Scalar>()?),
        };
        acc = acc * x;
    }
    Ok(acc)
}

impl FromStr for ExtElem {
    type Err = Error;
    fn from_str(s: &str) -> Result<ExtElem> {
        let mut acc = ExtElem::ZERO;
        for term in split_terms(s)? {
            if term == "0" {
                continue;
            }
            acc = acc + parse_ext_monomial(term)?;
        }
        Ok(acc)
    }
}

/// Element of `F[P]`, `P = <f1, f2> ≅ (Z/2)^2`, on the basis
/// `(1, f1, f2, f1f2)`; index bit `k` records the exponent of `f_{k+1}`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct GroupAlgElem(pub [Scalar; 4]);

impl GroupAlgElem {
    pub const ONE: GroupAlgElem = GroupAlgElem([Scalar::ONE, Scalar::ZERO, Scalar::ZERO, Scalar::ZERO]);

    /// The group element `f_i` (`i` in `{1, 2}`).
    pub fn f(i: usize) -> GroupAlgElem {
        let mut c = [Scalar::ZERO; 4];
        c[1 << (i - 1)] = Scalar::ONE;
        GroupAlgElem(c)
    }

    pub fn scale(&self, s: Scalar) -> GroupAlgElem {
        GroupAlgElem(self.0.map(|c| c * s))
    }

    pub fn aug(&self) -> Scalar {
        self.0.iter().fold(Scalar::ZERO, |a, &c| a + c)
    }

    /// Conjugation by the lift of `q` in `A4`: `f1 -> f2`, `f2 -> f1f2`.
    pub fn conj_q(&self) -> GroupAlgElem {
        let image = |m: usize| -> usize {
            let mut out = 0;
            if m & 1 == 1 {
                out ^= 0b10;
            }
            if m & 2 == 2 {
                out ^= 0b11;
            }
            out
        };
        let mut c = [Scalar::ZERO; 4];
        for (m, &s) in self.0.iter().enumerate() {
            c[image(m)] += s;
        }
        GroupAlgElem(c)
    }
}

impl Add for GroupAlgElem {
    type Output = GroupAlgElem;
    fn add(self, rhs: GroupAlgElem) -> GroupAlgElem {
        GroupAlgElem(std::array::from_fn(|i| self.0[i] + rhs.0[i]))
    }
}

impl Mul for GroupAlgElem {
    type Output = GroupAlgElem;
    fn mul(self, rhs: GroupAlgElem) -> GroupAlgElem {
        let mut c = [Scalar::ZERO; 4];
        for i in 0..4 {
            for j in 0..4 {
                c[i ^ j] += self.0[i] * rhs.0[j];
            }
        }
        GroupAlgElem(c)
    }
}

/// Element `sum_i a_i q^i` of `Λ∗Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SkewElem {
    field: Field,
    group: Group,
    coeffs: Vec<ExtElem>,
}

impl SkewElem {
    pub fn zero(field: Field, group: Group) -> SkewElem {
        SkewElem { field, group, coeffs: vec![ExtElem::ZERO; group.order()] }
    }

    pub fn one(field: Field, group: Group) -> SkewElem {
        SkewElem::monomial(field, group, ExtElem::ONE, 0)
    }

    /// `a * q^power`.
    pub fn monomial(field: Field, group: Group, a: ExtElem, power: usize) -> SkewElem {
        let mut s = SkewElem::zero(field, group);
        s.coeffs[power % group.order()] = a;
        s
    }

    /// The `k`-th basis element: `basis(k % 4) * q^(k / 4)`.
    pub fn basis(field: Field, group: Group, k: usize) -> SkewElem {
        SkewElem::monomial(field, group, ExtElem::basis(k % 4), k / 4)
    }

    pub fn from_coeffs(field: Field, group: Group, coeffs: Vec<ExtElem>) -> Result<SkewElem> {
        if coeffs.len() != group.order() {
            return Err(Error::Dimension(format!(
                "{} coefficients for a group of order {}",
                coeffs.len(),
                group.order()
            )));
        }
        for c in &coeffs {
            for &s in &c.0 {
                field.check(s)?;
            }
        }
        Ok(SkewElem { field, group, coeffs })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn coeffs(&self) -> &[ExtElem] {
        &self.coeffs
    }

    pub fn dim(field: Field, group: Group) -> usize {
        let _ = field;
        4 * group.order()
    }

    fn compatible(&self, other: &SkewElem) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        if self.group != other.group {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.group, other.group)));
        }
        Ok(())
    }

    pub fn add(&self, other: &SkewElem) -> Result<SkewElem> {
        self.compatible(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| a + b).collect();
        Ok(SkewElem { coeffs, ..*self })
    }

    /// `(a q^i)(b q^j) = a Ψ(q^i)(b) q^(i+j)`.
    pub fn mul(&self, other: &SkewElem) -> Result<SkewElem> {
        self.compatible(other)?;
        let n = self.group.order();
        let mut out = SkewElem::zero(self.field, self.group);
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                let k = (i + j) % n;
                out.coeffs[k] = out.coeffs[k] + a * b.psi(i);
            }
        }
        Ok(out)
    }

    /// Augmentation `a q^i -> aug(a)`.
    pub fn augment(&self) -> Scalar {
        self.coeffs.iter().fold(Scalar::ZERO, |acc, a| acc + a.aug())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(ExtElem::is_zero)
    }
}

impl fmt::Display for SkewElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, a) in self.coeffs.iter().enumerate() {
            let g = match power {
                0 => "e",
                1 => "q",
                _ => "q^2",
            };
            for (c, name) in a.0.iter().zip(BASIS_NAMES) {
                if c.is_zero() {
                    continue;
                }
                if !first {
                    write!(f, " + ")?;
                }
                first = false;
                match *c {
                    Scalar::ONE => write!(f, "{name}")?,
                    Scalar::W => write!(f, "w*{name}")?,
                    _ => write!(f, "(w+1)*{name}")?,
                }
                write!(f, ".{g}")?;
            }
        }
        Ok(())
    }
}

impl SkewElem {
    /// Parse text such as `y1*y2.q^2 + 1.e`; terms without a group part
    /// are read as multiples of `e`.
    pub fn parse(s: &str, field: Field, group: Group) -> Result<SkewElem> {
        let mut out = SkewElem::zero(field, group);
        for term in split_terms(s)? {
            if term == "0" {
                continue;
            }
            let (mono, g) = match term.rsplit_once('.') {
                Some((m, g)) => (m, g.trim()),
                None => (term, "e"),
            };
            let power = match g {
                "e" | "q^0" => 0,
                "q" | "q^1" => 1,
                "q^2" => 2,
                other => return Err(Error::Parse(format!("bad group element {other:?}"))),
            };
            if power >= group.order() {
                return Err(Error::GroupMismatch(format!("q^{power} in the trivial group")));
            }
            let a = parse_ext_monomial(mono)?;
            for &s in &a.0 {
                field.check(s)?;
            }
            out.coeffs[power] = out.coeffs[power] + a;
        }
        Ok(out)
    }
}
