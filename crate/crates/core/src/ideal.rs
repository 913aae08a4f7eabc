//! Homogeneous ideals of `S = F[x1, x2]`, stored degreewise.
//!
//! `J_d` is computed as `x1 J_(d-1) + x2 J_(d-1) + span(generators of
//! degree d)` and kept as a canonical [`Subspace`] of `S_d`, so equality,
//! membership and minimal generators are plain linear algebra.

use std::fmt;

use crate::complex::QRep;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::{Matrix, Quotient, Subspace};
use crate::poly::{dim_s, mul_x1, mul_x2, q_matrix, Poly};

/// A homogeneous ideal with its degree pieces cached up to `bound`.
#[derive(Clone)]
pub struct GradedIdeal {
    field: Field,
    gens: Vec<Poly>,
    pieces: Vec<Subspace>,
}

fn next_piece(field: Field, prev: Option<&Subspace>, d: usize, gens: &[Poly]) -> Subspace {
    let mut vs = Vec::new();
    if let Some(prev) = prev {
        for b in prev.basis() {
            vs.push(mul_x1(b));
            vs.push(mul_x2(b));
        }
    }
    for g in gens {
        if g.degree() == Some(d) {
            vs.push(g.component(d));
        }
    }
    Subspace::from_spanning(field, dim_s(d), vs)
}

impl GradedIdeal {
    /// The ideal generated by homogeneous polynomials. Zero generators are
    /// dropped.
    pub fn new(field: Field, gens: Vec<Poly>) -> Result<GradedIdeal> {
        let mut kept = Vec::new();
        for g in gens {
            if g.field() != field {
                return Err(Error::FieldMismatch(format!("generator {g} is over {}", g.field())));
            }
            if !g.is_homogeneous() {
                return Err(Error::Parse(format!("generator {g} is not homogeneous")));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        let max = kept.iter().filter_map(Poly::degree).max().unwrap_or(0);
        let bound = (2 * max).max(1);
        let mut pieces: Vec<Subspace> = Vec::with_capacity(bound + 1);
        for d in 0..=bound {
            let p = next_piece(field, pieces.last(), d, &kept);
            pieces.push(p);
        }
        Ok(GradedIdeal { field, gens: kept, pieces })
    }

    /// Parse generators from text.
    pub fn parse(field: Field, gens: &[&str]) -> Result<GradedIdeal> {
        let polys = gens.iter().map(|s| Poly::parse(s, field)).collect::<Result<Vec<_>>>()?;
        GradedIdeal::new(field, polys)
    }

    /// The maximal homogeneous ideal `(x1, x2)`.
    pub fn maximal(field: Field) -> GradedIdeal {
        GradedIdeal::new(field, vec![Poly::x1(field), Poly::x2(field)]).expect("valid generators")
    }

    /// `(x1 x2 (x1 + x2), x1^4 + x1^2 x2^2 + x2^4)`.
    pub fn oliver(field: Field) -> GradedIdeal {
        GradedIdeal::parse(field, &["x1^2*x2 + x1*x2^2", "x1^4 + x1^2*x2^2 + x2^4"]).expect("valid generators")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// The generators as given (zeros removed).
    pub fn generators(&self) -> &[Poly] {
        &self.gens
    }

    pub fn cache_bound(&self) -> usize {
        self.pieces.len() - 1
    }

    /// `J_d` as a subspace of `S_d`.
    pub fn piece(&self, d: usize) -> Subspace {
        if d < self.pieces.len() {
            return self.pieces[d].clone();
        }
        let mut p = self.pieces.last().expect("nonempty cache").clone();
        for e in self.pieces.len()..=d {
            if p.is_full() {
                return Subspace::full(self.field, dim_s(d));
            }
            p = next_piece(self.field, Some(&p), e, &self.gens);
        }
        p
    }

    /// `(x1, x2) J` in degree `d`.
    pub fn decomposables(&self, d: usize) -> Subspace {
        if d == 0 {
            return Subspace::zero(self.field, 1);
        }
        next_piece(self.field, Some(&self.piece(d - 1)), d, &[])
    }

    /// Minimal generators, one canonical representative per basis vector of
    /// `J_d / (x1, x2) J_(d-1)`, ascending in degree.
    pub fn minimal_generators(&self) -> Vec<Poly> {
        let mut out = Vec::new();
        for d in 0..self.pieces.len() {
            let quot = Quotient::new(&self.pieces[d], &self.decomposables(d)).expect("decomposables lie in J");
            out.extend(quot.reps().iter().map(|v| Poly::from_component(d, v.clone())));
        }
        out
    }

    pub fn cogenerator_degrees(&self) -> Vec<usize> {
        self.minimal_generators().iter().filter_map(Poly::degree).collect()
    }

    /// `Some((d1, d2))` iff `J` is generated by a homogeneous regular
    /// sequence of degrees `d1 <= d2`: two minimal generators, `J_d = S_d`
    /// for `d >= d1 + d2 - 1`, and `dim S/J = d1 d2`.
    pub fn parameter_degrees(&self) -> Option<(usize, usize)> {
        let degs = self.cogenerator_degrees();
        let [d1, d2] = degs[..] else { return None };
        if d1 == 0 {
            return None;
        }
        if !self.piece(d1 + d2 - 1).is_full() {
            return None;
        }
        (self.quotient_dim_through(d1 + d2 - 2) == d1 * d2).then_some((d1, d2))
    }

    pub fn is_parameter_ideal(&self) -> bool {
        self.parameter_degrees().is_some()
    }

    fn quotient_dim_through(&self, top: usize) -> usize {
        (0..=top).map(|d| self.piece(d).codim()).sum()
    }

    /// Hilbert function of `S/J` in degrees `0..=top`.
    pub fn quotient_hilbert(&self, top: usize) -> Vec<usize> {
        (0..=top).map(|d| self.piece(d).codim()).collect()
    }

    /// `dim_F S/J` for a parameter ideal.
    pub fn quotient_dim(&self) -> Result<usize> {
        let (d1, d2) = self.require_parameter()?;
        Ok(d1 * d2)
    }

    pub fn require_parameter(&self) -> Result<(usize, usize)> {
        self.parameter_degrees()
            .ok_or_else(|| Error::NotParameterIdeal(self.to_string()))
    }

    /// Degree pieces through `d1 + d2 - 2` (through the cache bound for
    /// ideals that are not parameter ideals). Determines the ideal.
    pub fn canonical_form(&self) -> Vec<Subspace> {
        let top = match self.parameter_degrees() {
            Some((d1, d2)) => d1 + d2 - 2,
            None => self.cache_bound(),
        };
        (0..=top).map(|d| self.piece(d)).collect()
    }

    pub fn contains(&self, f: &Poly) -> bool {
        f.components().all(|(d, v)| self.piece(d).contains(v))
    }

    /// `q g ∈ J` for every generator `g`.
    pub fn is_invariant(&self) -> bool {
        self.gens.iter().all(|g| self.contains(&g.q_act(1)))
    }

    /// `Sq^k g ∈ J` for every minimal generator `g` and `1 <= k <= deg g`.
    pub fn is_steenrod_closed(&self) -> bool {
        self.minimal_generators().iter().all(|g| {
            let d = g.degree().unwrap_or(0);
            (1..=d).all(|k| self.contains(&g.steenrod_sq(k)))
        })
    }

    /// The graded representation `J / (x1, x2) J`: one entry per degree
    /// carrying cogenerators, with the induced `q`-action.
    pub fn cogenerators(&self) -> Result<Vec<(usize, Quotient, QRep)>> {
        self.require_parameter()?;
        if !self.is_invariant() {
            return Err(Error::NotInvariant);
        }
        let mut out = Vec::new();
        for d in 0..self.pieces.len() {
            let quot = Quotient::new(&self.pieces[d], &self.decomposables(d)).expect("decomposables lie in J");
            if quot.dim() == 0 {
                continue;
            }
            let q = quot.induced_map(&q_matrix(self.field, d, 1), &quot)?;
            out.push((d, quot, QRep::new(q)));
        }
        Ok(out)
    }

    /// Some cogenerator space `J_d / ((x1, x2) J)_d` with `d` even has a
    /// nonzero `q`-fixed vector.
    pub fn has_even_invariant_cogenerator(&self) -> Result<bool> {
        Ok(self.cogenerators()?.iter().any(|(d, _, rep)| {
            d % 2 == 0 && {
                let n = rep.dim();
                rep.q.add(&Matrix::identity(self.field, n)).rank() < n
            }
        }))
    }

    /// Some Reynolds image `f + qf + q^2 f` of an even-degree element of `J`
    /// is a minimal generator, i.e. `J` has an invariant parameter in even
    /// degree.
    pub fn has_even_invariant_parameter(&self) -> Result<bool> {
        Ok(self.cogenerators()?.iter().any(|&(d, _, _)| {
            d % 2 == 0 && {
                let dec = self.decomposables(d);
                self.piece(d)
                    .basis()
                    .iter()
                    .any(|b| !dec.contains(&Poly::from_component(d, b.clone()).reynolds().component(d)))
            }
        }))
    }

    /// Does `J` have a `C3`-invariant parameter in even degree? Decided by
    /// both routes above; disagreement is an invariant violation.
    pub fn invariant_even_parameter_exists(&self) -> Result<bool> {
        let by_fixed_class = self.has_even_invariant_cogenerator()?;
        if by_fixed_class != self.has_even_invariant_parameter()? {
            return Err(Error::InvariantViolation(format!(
                "invariant-parameter routes disagree for {self}"
            )));
        }
        Ok(by_fixed_class)
    }

    pub fn to_field(&self, field: Field) -> Result<GradedIdeal> {
        GradedIdeal::new(field, self.gens.iter().map(|g| g.to_field(field)).collect::<Result<_>>()?)
    }
}

impl PartialEq for GradedIdeal {
    fn eq(&self, other: &GradedIdeal) -> bool {
        self.field == other.field && self.canonical_form() == other.canonical_form()
    }
}

impl Eq for GradedIdeal {}

impl std::hash::Hash for GradedIdeal {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.canonical_form().hash(state);
    }
}

impl fmt::Display for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.minimal_generators().iter().map(Poly::to_string).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Debug for GradedIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GradedIdeal{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Scalar;

    fn ideal(gens: &[&str]) -> GradedIdeal {
        GradedIdeal::parse(Field::F2, gens).unwrap()
    }

    fn p(s: &str) -> Poly {
        Poly::parse(s, Field::F2).unwrap()
    }

    #[test]
    fn parameter_examples() {
        let m = GradedIdeal::maximal(Field::F2);
        assert_eq!(m.parameter_degrees(), Some((1, 1)));
        assert_eq!(m.quotient_dim().unwrap(), 1);
        let j = ideal(&["x1^3", "x2^4"]);
        assert_eq!(j.parameter_degrees(), Some((3, 4)));
        assert_eq!(j.quotient_dim().unwrap(), 12);
        assert!(!ideal(&["x1"]).is_parameter_ideal());
        assert!(!ideal(&["x1^2", "x1*x2"]).is_parameter_ideal());
        assert!(!ideal(&["x1^2", "x1*x2", "x2^2"]).is_parameter_ideal());
    }

    #[test]
    fn membership_examples() {
        let j = ideal(&["x1^2", "x2^2"]);
        assert!(j.contains(&p("x1^2")));
        assert!(!j.contains(&p("x1*x2")));
        assert!(j.contains(&p("x1^2*x2^2")));
        assert!(j.contains(&p("x1^5*x2")));
    }

    #[test]
    fn cogenerator_examples() {
        let m = GradedIdeal::maximal(Field::F2).cogenerators().unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[0].0, 1);
        assert_eq!(m[0].2.decompose().unwrap(), crate::complex::Irreducibles::F2 { trivial: 0, v: 1 });
        let o = GradedIdeal::oliver(Field::F2).cogenerators().unwrap();
        assert_eq!(o.iter().map(|c| c.0).collect::<Vec<_>>(), vec![3, 4]);
        assert!(o.iter().all(|c| c.2.is_trivial()));
        let sq = ideal(&["x1^2", "x2^2"]).cogenerators().unwrap();
        assert_eq!(sq[0].0, 2);
        assert_eq!(sq[0].2.decompose().unwrap(), crate::complex::Irreducibles::F2 { trivial: 0, v: 1 });
    }

    #[test]
    fn invariance_examples() {
        assert!(GradedIdeal::maximal(Field::F2).is_invariant());
        assert!(!ideal(&["x1^3", "x2^4"]).is_invariant());
        assert!(GradedIdeal::oliver(Field::F2).is_invariant());
        assert!(ideal(&["x1^2", "x2^2"]).is_invariant());
    }

    #[test]
    fn invariance_is_basis_independent() {
        let a = ideal(&["x1^2", "x2^2"]);
        let b = ideal(&["x1^2 + x2^2", "x2^2"]);
        assert_eq!(a, b);
        assert_eq!(a.is_invariant(), b.is_invariant());
        let o = GradedIdeal::oliver(Field::F2);
        let o2 = ideal(&["x1^2*x2 + x1*x2^2", "x1^4 + x1^2*x2^2 + x2^4 + x1^3*x2 + x1^2*x2^2"]);
        assert_eq!(o, o2);
        assert!(o2.is_invariant());
    }

    #[test]
    fn steenrod_examples() {
        assert!(GradedIdeal::oliver(Field::F2).is_steenrod_closed());
        assert!(GradedIdeal::maximal(Field::F2).is_steenrod_closed());
        // brute-force oracle for (x1^2, x1 x2 + x2^2)
        let j = ideal(&["x1^2", "x1*x2 + x2^2"]);
        let expected = j.generators().iter().all(|g| {
            (1..=2).all(|k| {
                let s = g.steenrod_sq(k);
                // explicit membership: s = a x1^2 + b (x1 x2 + x2^2), a, b in S_k
                let d = 2 + k;
                let mut vs = Vec::new();
                for gen in j.generators() {
                    for i in 0..=k {
                        vs.push(gen.mul(&Poly::monomial(Field::F2, Scalar::ONE, k - i, i)).component(d));
                    }
                }
                Subspace::from_spanning(Field::F2, d + 1, vs).contains(&s.component(d))
            })
        });
        assert_eq!(j.is_steenrod_closed(), expected);
    }

    #[test]
    fn even_invariant_parameter_examples() {
        assert!(GradedIdeal::oliver(Field::F2).invariant_even_parameter_exists().unwrap());
        assert!(!ideal(&["x1^2", "x2^2"]).invariant_even_parameter_exists().unwrap());
        assert!(!GradedIdeal::maximal(Field::F2).invariant_even_parameter_exists().unwrap());
    }

    #[test]
    fn display_uses_minimal_generators() {
        let j = ideal(&["x1", "x2", "x1^2"]);
        assert_eq!(j.to_string(), "(x1, x2)");
    }
}
