//! The graded polynomial ring `S = F[x1, x2]`.
//!
//! A [`Poly`] stores one coefficient vector per nonzero homogeneous
//! component. The degree-`d` component uses the monomial basis
//! `x1^d, x1^(d-1) x2, ..., x2^d`, so index `k` is `x1^(d-k) x2^k`.
//!
//! `q` acts by the dual of `Ψ(q)`: `x1 -> x1 + x2`, `x2 -> x1`.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Vector};
use crate::text::split_terms;

/// Dimension of `S_d`.
pub fn dim_s(d: usize) -> usize {
    d + 1
}

/// A polynomial in `x1, x2`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    comps: BTreeMap<usize, Vector>,
}

impl Poly {
    pub fn zero(field: Field) -> Poly {
        Poly { field, comps: BTreeMap::new() }
    }

    pub fn constant(field: Field, c: Scalar) -> Poly {
        Poly::monomial(field, c, 0, 0)
    }

    /// `c * x1^a * x2^b`.
    pub fn monomial(field: Field, c: Scalar, a: usize, b: usize) -> Poly {
        let mut v = Vector::zeros(field, dim_s(a + b));
        v.set(b, c);
        Poly::from_component(a + b, v)
    }

    pub fn x1(field: Field) -> Poly {
        Poly::monomial(field, Scalar::ONE, 1, 0)
    }

    pub fn x2(field: Field) -> Poly {
        Poly::monomial(field, Scalar::ONE, 0, 1)
    }

    /// The homogeneous polynomial of degree `d` with coefficient vector `v`.
    pub fn from_component(d: usize, v: Vector) -> Poly {
        assert_eq!(v.len(), dim_s(d), "component length must be d + 1");
        let field = v.field();
        let mut comps = BTreeMap::new();
        if !v.is_zero() {
            comps.insert(d, v);
        }
        Poly { field, comps }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.comps.is_empty()
    }

    /// Degree of the top component (`None` for zero).
    pub fn degree(&self) -> Option<usize> {
        self.comps.keys().next_back().copied()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.comps.len() <= 1
    }

    /// The degree-`d` coefficient vector (zero if absent).
    pub fn component(&self, d: usize) -> Vector {
        self.comps.get(&d).cloned().unwrap_or_else(|| Vector::zeros(self.field, dim_s(d)))
    }

    pub fn components(&self) -> impl Iterator<Item = (usize, &Vector)> {
        self.comps.iter().map(|(&d, v)| (d, v))
    }

    /// Coefficient of `x1^a x2^b`.
    pub fn coeff(&self, a: usize, b: usize) -> Scalar {
        self.comps.get(&(a + b)).map_or(Scalar::ZERO, |v| v.get(b))
    }

    /// Nonzero terms `(a, b, c)` meaning `c x1^a x2^b`, in lex order
    /// `x1 > x2` (largest first).
    pub fn terms(&self) -> Vec<(usize, usize, Scalar)> {
        let mut out: Vec<_> = self
            .comps
            .iter()
            .flat_map(|(&d, v)| v.support().into_iter().map(move |k| (d - k, k, v.get(k))))
            .collect();
        out.sort_by_key(|x| std::cmp::Reverse((x.0, x.1)));
        out
    }

    fn insert_component(&mut self, d: usize, v: Vector) {
        if v.is_zero() {
            self.comps.remove(&d);
        } else {
            self.comps.insert(d, v);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "poly field mismatch");
        let mut out = self.clone();
        for (&d, v) in &other.comps {
            let s = out.component(d).sum(v);
            out.insert_component(d, s);
        }
        out
    }

    pub fn scale(&self, c: Scalar) -> Poly {
        let mut out = Poly::zero(self.field);
        for (&d, v) in &self.comps {
            out.insert_component(d, v.scaled(c));
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        assert_eq!(self.field, other.field, "poly field mismatch");
        let mut out = Poly::zero(self.field);
        for (&d, u) in &self.comps {
            for (&e, v) in &other.comps {
                let mut w = out.component(d + e);
                for i in u.support() {
                    for j in v.support() {
                        let k = i + j;
                        w.set(k, w.get(k) + u.get(i) * v.get(j));
                    }
                }
                out.insert_component(d + e, w);
            }
        }
        out
    }

    pub fn pow(&self, e: usize) -> Poly {
        let mut acc = Poly::constant(self.field, Scalar::ONE);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Substitute `x1 -> p1`, `x2 -> p2`.
    pub fn substitute(&self, p1: &Poly, p2: &Poly) -> Poly {
        let mut out = Poly::zero(self.field);
        for (a, b, c) in self.terms() {
            out = out.add(&p1.pow(a).mul(&p2.pow(b)).scale(c));
        }
        out
    }

    /// `q^power · self` under the dual action.
    pub fn q_act(&self, power: usize) -> Poly {
        let f = self.field;
        let mut out = self.clone();
        for _ in 0..power % 3 {
            out = out.substitute(&Poly::x1(f).add(&Poly::x2(f)), &Poly::x1(f));
        }
        out
    }

    /// Reynolds operator `f + qf + q^2 f` (`1/3 = 1` in characteristic 2).
    pub fn reynolds(&self) -> Poly {
        self.add(&self.q_act(1)).add(&self.q_act(2))
    }

    pub fn is_q_invariant(&self) -> bool {
        self.q_act(1) == *self
    }

    /// Total Steenrod square, `Sq(x_i) = x_i + x_i^2`, extended
    /// multiplicatively and (over GF(4)) linearly.
    pub fn total_square(&self) -> Poly {
        let mut out = Poly::zero(self.field);
        for k in 0..=self.degree().unwrap_or(0) {
            out = out.add(&self.steenrod_sq(k));
        }
        out
    }

    /// `Sq^k`. Returns zero when `k` exceeds the degree of a component.
    pub fn steenrod_sq(&self, k: usize) -> Poly {
        let mut out = Poly::zero(self.field);
        for (a, b, c) in self.terms() {
            // Sq^k(x1^a x2^b) = sum_{i+j=k} C(a,i) C(b,j) x1^(a+i) x2^(b+j)
            for i in 0..=k.min(a) {
                let j = k - i;
                if j > b || !binomial_odd(a, i) || !binomial_odd(b, j) {
                    continue;
                }
                out = out.add(&Poly::monomial(self.field, c, a + i, b + j));
            }
        }
        out
    }

    /// Re-embed over another field.
    pub fn to_field(&self, field: Field) -> Result<Poly> {
        let mut out = Poly::zero(field);
        for (&d, v) in &self.comps {
            out.insert_component(d, v.to_field(field)?);
        }
        Ok(out)
    }

    pub fn parse(s: &str, field: Field) -> Result<Poly> {
        let mut out = Poly::zero(field);
        for term in split_terms(s)? {
            out = out.add(&parse_term(term, field)?);
        }
        Ok(out)
    }
}

/// Lucas: `C(n, k)` is odd iff the bits of `k` are a subset of those of `n`.
fn binomial_odd(n: usize, k: usize) -> bool {
    k & !n == 0
}

fn parse_term(term: &str, field: Field) -> Result<Poly> {
    let mut coef = Scalar::ONE;
    let (mut a, mut b) = (0usize, 0usize);
    for factor in term.split('*') {
        let factor = factor.trim();
        let (base, exp) = match factor.split_once('^') {
            Some((base, e)) => {
                let e: usize = e.trim().parse().map_err(|_| Error::Parse(format!("bad exponent in {factor:?}")))?;
                (base.trim(), e)
            }
            None => (factor, 1),
        };
        match base {
            "x1" => a += exp,
            "x2" => b += exp,
            _ => coef *= field.check(base.parse::<Scalar>()?)?.pow(exp as u32),
        }
    }
    Ok(Poly::monomial(field, coef, a, b))
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms();
        if terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, b, c)) in terms.into_iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            match c {
                Scalar::ONE => {}
                Scalar::W => factors.push("w".to_string()),
                _ => factors.push("(w+1)".to_string()),
            }
            for (name, e) in [("x1", a), ("x2", b)] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// `x1 * v` for `v` in `S_d`.
pub fn mul_x1(v: &Vector) -> Vector {
    let mut out = Vector::zeros(v.field(), v.len() + 1);
    for k in v.support() {
        out.set(k, v.get(k));
    }
    out
}

/// `x2 * v` for `v` in `S_d`.
pub fn mul_x2(v: &Vector) -> Vector {
    let mut out = Vector::zeros(v.field(), v.len() + 1);
    for k in v.support() {
        out.set(k + 1, v.get(k));
    }
    out
}

/// Matrix of multiplication by the homogeneous `f` from `S_d` to
/// `S_(d + deg f)`.
pub fn mul_matrix(f: &Poly, d: usize) -> Matrix {
    let e = f.degree().unwrap_or(0);
    let cols: Vec<Vector> = (0..dim_s(d))
        .map(|k| f.mul(&Poly::monomial(f.field(), Scalar::ONE, d - k, k)).component(d + e))
        .collect();
    Matrix::from_columns(f.field(), dim_s(d + e), &cols)
}

/// Matrix of `q^power` on `S_d`.
pub fn q_matrix(field: Field, d: usize, power: usize) -> Matrix {
    let cols: Vec<Vector> = (0..dim_s(d))
        .map(|k| Poly::monomial(field, Scalar::ONE, d - k, k).q_act(power).component(d))
        .collect();
    Matrix::from_columns(field, dim_s(d), &cols)
}
