//! `K_0(F[C3])`, Euler characteristics and the finiteness obstruction.
//!
//! Over F2, `K_0 = Z[V]/(V^2 - V - 2)` with `V` the 2-dimensional
//! irreducible; over GF(4), `K_0 = Z[α]/(α^3 - 1)` with `α` the character
//! `q -> w`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Serialize, Serializer};

use crate::bgg::classify;
use crate::complex::{GradedQRep, Irreducibles, PerfectComplex, QRep};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::GradedIdeal;
use crate::linalg::{Quotient, Subspace};
use crate::skew::ExtElem;

/// `a + b V` in `K_0(F2[C3])`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct K0F2 {
    pub a: i64,
    pub b: i64,
}

/// `a + b α + c α^2` in `K_0(GF(4)[C3])`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct K0F4 {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl K0F2 {
    pub const ONE: K0F2 = K0F2 { a: 1, b: 0 };
    pub const V: K0F2 = K0F2 { a: 0, b: 1 };

    /// Extension of scalars: `V -> α + α^2`.
    pub fn base_change(self) -> K0F4 {
        K0F4 { a: self.a, b: self.b, c: self.b }
    }
}

impl K0F4 {
    pub const ONE: K0F4 = K0F4 { a: 1, b: 0, c: 0 };
    pub const ALPHA: K0F4 = K0F4 { a: 0, b: 1, c: 0 };
    pub const ALPHA2: K0F4 = K0F4 { a: 0, b: 0, c: 1 };
}

impl Add for K0F2 {
    type Output = K0F2;
    fn add(self, o: K0F2) -> K0F2 {
        K0F2 { a: self.a + o.a, b: self.b + o.b }
    }
}

impl Neg for K0F2 {
    type Output = K0F2;
    fn neg(self) -> K0F2 {
        K0F2 { a: -self.a, b: -self.b }
    }
}

impl Sub for K0F2 {
    type Output = K0F2;
    fn sub(self, o: K0F2) -> K0F2 {
        self + -o
    }
}

impl Mul for K0F2 {
    type Output = K0F2;
    // V^2 = V + 2
    fn mul(self, o: K0F2) -> K0F2 {
        let vv = self.b * o.b;
        K0F2 { a: self.a * o.a + 2 * vv, b: self.a * o.b + self.b * o.a + vv }
    }
}

impl Add for K0F4 {
    type Output = K0F4;
    fn add(self, o: K0F4) -> K0F4 {
        K0F4 { a: self.a + o.a, b: self.b + o.b, c: self.c + o.c }
    }
}

impl Neg for K0F4 {
    type Output = K0F4;
    fn neg(self) -> K0F4 {
        K0F4 { a: -self.a, b: -self.b, c: -self.c }
    }
}

impl Sub for K0F4 {
    type Output = K0F4;
    fn sub(self, o: K0F4) -> K0F4 {
        self + -o
    }
}

impl Mul for K0F4 {
    type Output = K0F4;
    // cyclic convolution, α^3 = 1
    fn mul(self, o: K0F4) -> K0F4 {
        let x = [self.a, self.b, self.c];
        let y = [o.a, o.b, o.c];
        let mut z = [0i64; 3];
        for i in 0..3 {
            for j in 0..3 {
                z[(i + j) % 3] += x[i] * y[j];
            }
        }
        K0F4 { a: z[0], b: z[1], c: z[2] }
    }
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(i64, &str)]) -> fmt::Result {
    let mut first = true;
    for &(c, name) in terms {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 { "-" } else { "+" };
        if first {
            if c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {sign} ")?;
        }
        first = false;
        match (c.abs(), name) {
            (n, "") => write!(f, "{n}")?,
            (1, x) => write!(f, "{x}")?,
            (n, x) => write!(f, "{n}{x}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl fmt::Display for K0F2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &[(self.a, ""), (self.b, "V")])
    }
}

impl fmt::Display for K0F4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &[(self.a, ""), (self.b, "α"), (self.c, "α²")])
    }
}

/// An element of `K_0(F[C3])` for either coefficient field. Arithmetic
/// between the two cases is an error; use [`K0F2::base_change`] to convert.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum K0Elem {
    F2(K0F2),
    F4(K0F4),
}

impl K0Elem {
    pub fn zero(field: Field) -> K0Elem {
        match field {
            Field::F2 => K0Elem::F2(K0F2::default()),
            Field::F4 => K0Elem::F4(K0F4::default()),
        }
    }

    pub fn one(field: Field) -> K0Elem {
        match field {
            Field::F2 => K0Elem::F2(K0F2::ONE),
            Field::F4 => K0Elem::F4(K0F4::ONE),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            K0Elem::F2(_) => Field::F2,
            K0Elem::F4(_) => Field::F4,
        }
    }

    pub fn is_zero(&self) -> bool {
        *self == K0Elem::zero(self.field())
    }

    /// Virtual dimension.
    pub fn rank(&self) -> i64 {
        match *self {
            K0Elem::F2(x) => x.a + 2 * x.b,
            K0Elem::F4(x) => x.a + x.b + x.c,
        }
    }

    fn mismatch(&self, other: &K0Elem) -> Error {
        Error::FieldMismatch(format!("K0 elements over {} and {}", self.field(), other.field()))
    }

    pub fn add(&self, other: &K0Elem) -> Result<K0Elem> {
        match (*self, *other) {
            (K0Elem::F2(x), K0Elem::F2(y)) => Ok(K0Elem::F2(x + y)),
            (K0Elem::F4(x), K0Elem::F4(y)) => Ok(K0Elem::F4(x + y)),
            _ => Err(self.mismatch(other)),
        }
    }

    pub fn neg(&self) -> K0Elem {
        match *self {
            K0Elem::F2(x) => K0Elem::F2(-x),
            K0Elem::F4(x) => K0Elem::F4(-x),
        }
    }

    pub fn mul(&self, other: &K0Elem) -> Result<K0Elem> {
        match (*self, *other) {
            (K0Elem::F2(x), K0Elem::F2(y)) => Ok(K0Elem::F2(x * y)),
            (K0Elem::F4(x), K0Elem::F4(y)) => Ok(K0Elem::F4(x * y)),
            _ => Err(self.mismatch(other)),
        }
    }

    /// Class of a representation.
    pub fn from_qrep(field: Field, rep: &QRep) -> Result<K0Elem> {
        if rep.dim() == 0 {
            return Ok(K0Elem::zero(field));
        }
        match rep.decompose()? {
            Irreducibles::F2 { trivial, v } => Ok(K0Elem::F2(K0F2 { a: trivial as i64, b: v as i64 })),
            Irreducibles::F4 { one, alpha, alpha2 } => {
                Ok(K0Elem::F4(K0F4 { a: one as i64, b: alpha as i64, c: alpha2 as i64 }))
            }
        }
    }
}

impl fmt::Display for K0Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            K0Elem::F2(x) => x.fmt(f),
            K0Elem::F4(x) => x.fmt(f),
        }
    }
}

impl Serialize for K0Elem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn alternating_sum(field: Field, classes: impl Iterator<Item = (i64, Result<K0Elem>)>) -> Result<K0Elem> {
    let mut acc = K0Elem::zero(field);
    for (degree, class) in classes {
        let class = class?;
        acc = acc.add(&if degree.rem_euclid(2) == 0 { class } else { class.neg() })?;
    }
    Ok(acc)
}

/// `Σ (-1)^i [H^i]`.
pub fn euler_char(field: Field, h: &GradedQRep) -> Result<K0Elem> {
    alternating_sum(
        field,
        h.pieces.iter().enumerate().map(|(i, rep)| (h.lo + i as i64, K0Elem::from_qrep(field, rep))),
    )
}

/// `[gr F[P]]`: `2 + V`, resp. `2 + α + α^2`.
pub fn gr_fp_class(field: Field) -> K0Elem {
    match field {
        Field::F2 => K0Elem::F2(K0F2 { a: 2, b: 1 }),
        Field::F4 => K0Elem::F4(K0F4 { a: 2, b: 1, c: 1 }),
    }
}

/// `[gr F[P]]` computed from the powers of the augmentation ideal of `Λ`
/// with `q` acting by conjugation.
pub fn gr_fp_class_oracle(field: Field) -> Result<K0Elem> {
    let y1 = ExtElem::Y1.mul_matrix(field);
    let y2 = ExtElem::Y2.mul_matrix(field);
    let psi = ExtElem::psi_matrix(1, field);
    let mut powers = vec![Subspace::full(field, 4)];
    loop {
        let prev = powers.last().expect("nonempty");
        if prev.is_zero() {
            break;
        }
        let next = prev.map(&y1).sum(&prev.map(&y2));
        powers.push(next);
    }
    let mut acc = K0Elem::zero(field);
    for w in powers.windows(2) {
        let quot = Quotient::new(&w[0], &w[1])?;
        let q = quot.induced_map(&psi, &quot)?;
        acc = acc.add(&K0Elem::from_qrep(field, &QRep::new(q))?)?;
    }
    Ok(acc)
}

/// `Σ (-1)^i [C^i / C^i I]`.
pub fn pr_euler(c: &PerfectComplex) -> Result<K0Elem> {
    alternating_sum(
        c.field,
        c.terms
            .iter()
            .enumerate()
            .map(|(i, m)| (c.lo + i as i64, K0Elem::from_qrep(c.field, &m.top_quotient()))),
    )
}

fn require_four(c: &PerfectComplex) -> Result<GradedQRep> {
    c.validate()?;
    let h = c.homology();
    match h.total_dim() {
        4 => Ok(h),
        n => Err(Error::NotFourDimensional(n)),
    }
}

/// The finiteness obstruction vanishes iff `χ(H*(C)) = 0`.
pub fn obstruction_vanishes(c: &PerfectComplex) -> Result<bool> {
    let h = require_four(c)?;
    Ok(euler_char(c.field, &h)?.is_zero())
}

/// `J` has a `C3`-invariant parameter in even degree.
pub fn finite_free_criterion(j: &GradedIdeal) -> Result<bool> {
    j.invariant_even_parameter_exists()
}

/// Over F2: `m` or `n` odd, and `H*(C)` a trivial representation.
pub fn f2_homology_criterion(c: &PerfectComplex) -> Result<bool> {
    if c.field != Field::F2 {
        return Err(Error::FieldMismatch("the homology criterion is stated over F2".into()));
    }
    let h = require_four(c)?;
    let cl = classify(c)?;
    let odd = cl.m % 2 == 1 || cl.n % 2 == 1;
    Ok(odd && h.pieces.iter().all(QRep::is_trivial))
}

/// The full obstruction report for a complex with four-dimensional
/// homology.
#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub chi: K0Elem,
    pub pr_chi: K0Elem,
    pub gr_class: K0Elem,
    pub vanishes: bool,
    pub criterion_iii: bool,
    pub criterion_iv: bool,
    /// `None` over GF(4).
    pub f2_corollary: Option<bool>,
}

impl ObstructionReport {
    /// All available criteria agree and the product identity holds.
    pub fn is_consistent(&self) -> bool {
        let identity = self.pr_chi.mul(&self.gr_class).is_ok_and(|x| x == self.chi);
        identity
            && self.vanishes == self.criterion_iii
            && self.vanishes == self.criterion_iv
            && self.f2_corollary.is_none_or(|b| b == self.vanishes)
    }
}

/// Compute every criterion; an inconsistency is an invariant violation.
pub fn obstruction_report(c: &PerfectComplex) -> Result<ObstructionReport> {
    let h = require_four(c)?;
    let chi = euler_char(c.field, &h)?;
    let cl = classify(c)?;
    let j = &cl.triple.ideal;
    let report = ObstructionReport {
        chi,
        pr_chi: pr_euler(c)?,
        gr_class: gr_fp_class(c.field),
        vanishes: chi.is_zero(),
        criterion_iii: j.has_even_invariant_cogenerator()?,
        criterion_iv: j.has_even_invariant_parameter()?,
        f2_corollary: match c.field {
            Field::F2 => Some(f2_homology_criterion(c)?),
            Field::F4 => None,
        },
    };
    if !report.is_consistent() {
        return Err(Error::InvariantViolation(format!("obstruction criteria disagree: {report:?}")));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bgg::{realize, RepLabel, Triple};
    use crate::complex::ModuleRep;
    use crate::random::{random_complex, seeded_rng};
    use crate::skew::Group;

    fn realized(gens: &[&str]) -> PerfectComplex {
        let j = GradedIdeal::parse(Field::F2, gens).unwrap();
        realize(&Triple::new(0, RepLabel::Triv, j), Group::C3).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(K0F2::V * K0F2::V, K0F2 { a: 2, b: 1 });
        assert_eq!(K0F4::ALPHA * K0F4::ALPHA2, K0F4::ONE);
        assert_eq!(K0F4::ALPHA * K0F4::ALPHA, K0F4::ALPHA2);
        let x = K0F2 { a: -3, b: 5 };
        assert_eq!(K0F2::ONE * x, x);
        // defining relations
        assert_eq!((K0F2::V - K0F2 { a: 2, b: 0 }) * (K0F2::V + K0F2::ONE), K0F2::default());
        assert_eq!((K0F4::ALPHA - K0F4::ONE) * (K0F4::ALPHA2 + K0F4::ALPHA + K0F4::ONE), K0F4::default());
    }

    #[test]
    fn base_change_is_a_ring_map() {
        let xs = [K0F2 { a: 1, b: -2 }, K0F2 { a: 0, b: 3 }, K0F2 { a: -4, b: 1 }];
        for x in xs {
            for y in xs {
                assert_eq!((x * y).base_change(), x.base_change() * y.base_change());
            }
        }
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = K0Elem::one(Field::F2);
        let b = K0Elem::one(Field::F4);
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn display() {
        assert_eq!(K0F2 { a: 2, b: -1 }.to_string(), "2 - V");
        assert_eq!(K0F2::default().to_string(), "0");
        assert_eq!(K0F4 { a: 2, b: 1, c: 1 }.to_string(), "2 + α + α²");
        assert_eq!(K0F4 { a: 0, b: -2, c: 0 }.to_string(), "-2α");
    }

    #[test]
    fn gr_class_matches_oracle() {
        for field in [Field::F2, Field::F4] {
            assert_eq!(gr_fp_class_oracle(field).unwrap(), gr_fp_class(field));
        }
    }

    #[test]
    fn pr_euler_of_lambda() {
        let c = PerfectComplex::concentrated(Field::F2, Group::C3, 0, ModuleRep::lambda(Field::F2)).unwrap();
        assert_eq!(pr_euler(&c).unwrap(), K0Elem::one(Field::F2));
        assert!(pr_euler(&PerfectComplex::zero(Field::F2, Group::C3)).unwrap().is_zero());
    }

    #[test]
    fn obstruction_examples() {
        let oliver = realized(&["x1^2*x2 + x1*x2^2", "x1^4 + x1^2*x2^2 + x2^4"]);
        let r = obstruction_report(&oliver).unwrap();
        assert!(r.vanishes && r.criterion_iii && r.criterion_iv);
        assert_eq!(r.f2_corollary, Some(true));

        let sq = realized(&["x1^2", "x2^2"]);
        let r = obstruction_report(&sq).unwrap();
        assert_eq!(r.chi, K0Elem::F2(K0F2 { a: 2, b: -1 }));
        assert!(!r.vanishes);
        assert_eq!(r.f2_corollary, Some(false));

        let max = realized(&["x1", "x2"]);
        assert!(!obstruction_vanishes(&max).unwrap());
        assert!(!finite_free_criterion(&GradedIdeal::maximal(Field::F2)).unwrap());
    }

    #[test]
    fn product_identity_on_random_complexes() {
        let mut rng = seeded_rng(11);
        for field in [Field::F2, Field::F4] {
            for _ in 0..10 {
                let c = random_complex(field, Group::C3, 4, &mut rng);
                let lhs = pr_euler(&c).unwrap().mul(&gr_fp_class(field)).unwrap();
                assert_eq!(lhs, euler_char(field, &c.homology()).unwrap());
            }
        }
    }
}
