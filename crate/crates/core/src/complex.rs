//! Right `Λ∗Q`-modules given by action matrices, bounded cochain complexes
//! of them, and homology with its induced `Q`-action.
//!
//! Actions are matrices on column vectors: `x · a` is `act_a * x`, so for a
//! right module `act_{ab} = act_b * act_a`. The relation `q̄ a = Ψ(q)(a) q̄`
//! of `Λ∗C3` becomes `act_q act_y2 = act_y1 act_q` and
//! `act_q (act_y1 + act_y2) = act_y2 act_q`.

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Quotient, Subspace, Vector};
use crate::skew::{ExtElem, Group};

/// A finite-dimensional right `Λ∗Q`-module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleRep {
    pub act_y1: Matrix,
    pub act_y2: Matrix,
    pub act_q: Matrix,
}

impl ModuleRep {
    pub fn new(act_y1: Matrix, act_y2: Matrix, act_q: Matrix) -> ModuleRep {
        ModuleRep { act_y1, act_y2, act_q }
    }

    pub fn zero(field: Field) -> ModuleRep {
        let z = Matrix::zero(field, 0, 0);
        ModuleRep::new(z.clone(), z.clone(), z)
    }

    /// `Λ` acting on itself, with `q̄` acting by `Ψ(q^2) = Ψ(q)^{-1}`.
    /// Over `Λ∗C3` this is the projective (non-free) module `F ⊗_{F[Q]} Λ∗Q`.
    pub fn lambda(field: Field) -> ModuleRep {
        ModuleRep::lambda_twisted(field, Scalar::ONE)
    }

    /// `Λ` with `q̄` acting by `c · Ψ(q^2)` for a cube root of unity `c`.
    pub fn lambda_twisted(field: Field, c: Scalar) -> ModuleRep {
        ModuleRep::new(
            ExtElem::Y1.mul_matrix(field),
            ExtElem::Y2.mul_matrix(field),
            ExtElem::psi_matrix(2, field).scaled(c),
        )
    }

    /// The free module of rank one, `Λ∗Q` acting on itself from the right.
    pub fn free(field: Field, group: Group) -> ModuleRep {
        let n = group.order();
        let dim = 4 * n;
        // basis b_j q^i at index 4i + j; (b q^i) a = b Ψ(q^i)(a) q^i.
        let act = |a: ExtElem| {
            let mut m = Matrix::zero(field, dim, dim);
            for i in 0..n {
                let block = a.psi(i).mul_matrix(field);
                for r in 0..4 {
                    for c in 0..4 {
                        m.set(4 * i + r, 4 * i + c, block.get(r, c));
                    }
                }
            }
            m
        };
        let mut q = Matrix::zero(field, dim, dim);
        for i in 0..n {
            for j in 0..4 {
                q.set(4 * ((i + 1) % n) + j, 4 * i + j, Scalar::ONE);
            }
        }
        ModuleRep::new(act(ExtElem::Y1), act(ExtElem::Y2), q)
    }

    /// The trivial module `F` (not `Λ`-free).
    pub fn trivial(field: Field) -> ModuleRep {
        let z = Matrix::zero(field, 1, 1);
        ModuleRep::new(z.clone(), z, Matrix::identity(field, 1))
    }

    pub fn field(&self) -> Field {
        self.act_y1.field()
    }

    pub fn dim(&self) -> usize {
        self.act_y1.ncols()
    }

    pub fn act_y12(&self) -> Matrix {
        self.act_y2.mul(&self.act_y1)
    }

    pub fn direct_sum(&self, other: &ModuleRep) -> ModuleRep {
        ModuleRep::new(
            self.act_y1.block_diag(&other.act_y1),
            self.act_y2.block_diag(&other.act_y2),
            self.act_q.block_diag(&other.act_q),
        )
    }

    /// The underlying `Λ`-module, with `q̄` acting as the identity.
    pub fn restrict_to_lambda(&self) -> ModuleRep {
        ModuleRep::new(self.act_y1.clone(), self.act_y2.clone(), Matrix::identity(self.field(), self.dim()))
    }

    /// Check the module axioms; `Err` describes the first failure.
    pub fn check(&self, group: Group) -> Result<()> {
        let n = self.dim();
        let field = self.field();
        for (name, m) in [("act_y1", &self.act_y1), ("act_y2", &self.act_y2), ("act_q", &self.act_q)] {
            if m.nrows() != n || m.ncols() != n {
                return Err(Error::InvalidComplex(format!("{name} is not {n}x{n}")));
            }
            if m.field() != field {
                return Err(Error::FieldMismatch(format!("{name} over {}", m.field())));
            }
        }
        let (y1, y2, q) = (&self.act_y1, &self.act_y2, &self.act_q);
        if !y1.mul(y1).is_zero() || !y2.mul(y2).is_zero() {
            return Err(Error::InvalidComplex("y_i^2 acts nontrivially".into()));
        }
        if y1.mul(y2) != y2.mul(y1) {
            return Err(Error::InvalidComplex("y1 and y2 do not commute".into()));
        }
        let id = Matrix::identity(field, n);
        match group {
            Group::Trivial => {
                if *q != id {
                    return Err(Error::InvalidComplex("act_q must be the identity for trivial Q".into()));
                }
            }
            Group::C3 => {
                if q.pow(3) != id {
                    return Err(Error::InvalidComplex("act_q^3 is not the identity".into()));
                }
                if q.mul(y2) != y1.mul(q) || q.mul(&y1.add(y2)) != y2.mul(q) {
                    return Err(Error::InvalidComplex("skew relation q a = Ψ(q)(a) q fails".into()));
                }
            }
        }
        Ok(())
    }

    /// `M I = M y1 + M y2`.
    pub fn augmentation_image(&self) -> Subspace {
        self.act_y1.image().sum(&self.act_y2.image())
    }

    /// Number of generators `dim M / M I`.
    pub fn generator_count(&self) -> usize {
        self.augmentation_image().codim()
    }

    /// `Λ`-freeness test. Since `Λ` is local, `M` is free iff
    /// `dim M = 4 dim(M / M I)`; the certificate is a lifted generating set.
    pub fn lambda_free_certificate(&self) -> Option<Vec<Vector>> {
        let mi = self.augmentation_image();
        if self.dim() != 4 * mi.codim() {
            return None;
        }
        let full = Subspace::full(self.field(), self.dim());
        Some(Quotient::new(&full, &mi).expect("MI lies in M").reps().to_vec())
    }

    pub fn is_lambda_free(&self) -> bool {
        self.lambda_free_certificate().is_some()
    }

    /// `Q`-representation on `M / M I`.
    pub fn top_quotient(&self) -> QRep {
        let full = Subspace::full(self.field(), self.dim());
        let quot = Quotient::new(&full, &self.augmentation_image()).expect("MI lies in M");
        let q = quot.induced_map(&self.act_q, &quot).expect("MI is q-stable");
        QRep::new(q)
    }

    /// Is `d: self -> target` a module map?
    pub fn is_module_map(&self, d: &Matrix, target: &ModuleRep) -> bool {
        d.mul(&self.act_y1) == target.act_y1.mul(d)
            && d.mul(&self.act_y2) == target.act_y2.mul(d)
            && d.mul(&self.act_q) == target.act_q.mul(d)
    }
}

/// A finite-dimensional `F[Q]`-module, given by the matrix of `q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QRep {
    pub q: Matrix,
}

/// Multiplicities of irreducible `F[C3]`-modules. Over F2 these are the
/// trivial module and the 2-dimensional `V`; over GF(4) the three
/// characters `1, α, α²`, where `α` is the character with `q -> w`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Irreducibles {
    F2 { trivial: usize, v: usize },
    F4 { one: usize, alpha: usize, alpha2: usize },
}

impl QRep {
    pub fn new(q: Matrix) -> QRep {
        QRep { q }
    }

    pub fn dim(&self) -> usize {
        self.q.ncols()
    }

    fn eigenspace_dim(&self, lambda: Scalar) -> usize {
        let n = self.dim();
        let shifted = self.q.add(&Matrix::identity(self.q.field(), n).scaled(lambda));
        n - shifted.rank()
    }

    /// Decompose into irreducibles; `q` must satisfy `q^3 = 1`.
    pub fn decompose(&self) -> Result<Irreducibles> {
        let n = self.dim();
        if self.q.pow(3) != Matrix::identity(self.q.field(), n) {
            return Err(Error::InvariantViolation("q^3 != 1 on a representation".into()));
        }
        match self.q.field() {
            Field::F2 => {
                let trivial = self.eigenspace_dim(Scalar::ONE);
                if !(n - trivial).is_multiple_of(2) {
                    return Err(Error::InvariantViolation("odd-dimensional nontrivial part".into()));
                }
                Ok(Irreducibles::F2 { trivial, v: (n - trivial) / 2 })
            }
            Field::F4 => {
                let one = self.eigenspace_dim(Scalar::ONE);
                let alpha = self.eigenspace_dim(Scalar::W);
                let alpha2 = self.eigenspace_dim(Scalar::W2);
                if one + alpha + alpha2 != n {
                    return Err(Error::InvariantViolation("q is not diagonalisable".into()));
                }
                Ok(Irreducibles::F4 { one, alpha, alpha2 })
            }
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.q == Matrix::identity(self.q.field(), self.dim())
    }
}

/// A graded `F[Q]`-module: `pieces[i]` sits in degree `lo + i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedQRep {
    pub lo: i64,
    pub pieces: Vec<QRep>,
}

impl GradedQRep {
    pub fn get(&self, degree: i64) -> Option<&QRep> {
        let i = degree - self.lo;
        if i < 0 {
            return None;
        }
        self.pieces.get(i as usize)
    }

    pub fn dim_at(&self, degree: i64) -> usize {
        self.get(degree).map_or(0, QRep::dim)
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(QRep::dim).sum()
    }

    /// `(degree, dim)` for all nonzero pieces.
    pub fn support(&self) -> Vec<(i64, usize)> {
        self.pieces
            .iter()
            .enumerate()
            .filter(|(_, p)| p.dim() > 0)
            .map(|(i, p)| (self.lo + i as i64, p.dim()))
            .collect()
    }

    pub fn lowest_degree(&self) -> Option<i64> {
        self.support().first().map(|&(d, _)| d)
    }
}

/// Homology in one degree together with the data needed to work with
/// representatives.
#[derive(Clone, Debug)]
pub struct HomologyPiece {
    pub quotient: Quotient,
    pub rep: QRep,
}

/// A bounded cochain complex of right `Λ∗Q`-modules. `terms[i]` sits in
/// degree `lo + i` and `diffs[i]` maps `terms[i]` to `terms[i + 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerfectComplex {
    pub field: Field,
    pub group: Group,
    pub lo: i64,
    pub terms: Vec<ModuleRep>,
    pub diffs: Vec<Matrix>,
}

impl PerfectComplex {
    /// Build and validate.
    pub fn new(field: Field, group: Group, lo: i64, terms: Vec<ModuleRep>, diffs: Vec<Matrix>) -> Result<PerfectComplex> {
        let c = PerfectComplex { field, group, lo, terms, diffs };
        c.validate()?;
        Ok(c)
    }

    pub fn zero(field: Field, group: Group) -> PerfectComplex {
        PerfectComplex { field, group, lo: 0, terms: Vec::new(), diffs: Vec::new() }
    }

    /// A single module placed in one degree.
    pub fn concentrated(field: Field, group: Group, degree: i64, m: ModuleRep) -> Result<PerfectComplex> {
        PerfectComplex::new(field, group, degree, vec![m], Vec::new())
    }

    /// Highest degree (`lo - 1` for the empty complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, degree: i64) -> Option<&ModuleRep> {
        let i = degree - self.lo;
        if i < 0 {
            return None;
        }
        self.terms.get(i as usize)
    }

    pub fn dim_at(&self, degree: i64) -> usize {
        self.term(degree).map_or(0, ModuleRep::dim)
    }

    /// `d^degree : C^degree -> C^(degree+1)`, as a (possibly empty) matrix.
    pub fn diff(&self, degree: i64) -> Matrix {
        let i = degree - self.lo;
        if i >= 0 && (i as usize) < self.diffs.len() {
            self.diffs[i as usize].clone()
        } else {
            Matrix::zero(self.field, self.dim_at(degree + 1), self.dim_at(degree))
        }
    }

    /// Check every invariant; the error names the first violation.
    pub fn validate(&self) -> Result<()> {
        let n = self.terms.len();
        if self.diffs.len() != n.saturating_sub(1) {
            return Err(Error::InvalidComplex(format!(
                "{} terms need {} differentials, found {}",
                n,
                n.saturating_sub(1),
                self.diffs.len()
            )));
        }
        for (i, m) in self.terms.iter().enumerate() {
            let degree = self.lo + i as i64;
            if m.field() != self.field {
                return Err(Error::FieldMismatch(format!("term in degree {degree} is over {}", m.field())));
            }
            m.check(self.group)
                .map_err(|e| Error::InvalidComplex(format!("term in degree {degree}: {e}")))?;
            if !m.is_lambda_free() {
                return Err(Error::InvalidComplex(format!("term in degree {degree} is not Λ-free")));
            }
        }
        for (i, d) in self.diffs.iter().enumerate() {
            let degree = self.lo + i as i64;
            let (src, tgt) = (&self.terms[i], &self.terms[i + 1]);
            if d.nrows() != tgt.dim() || d.ncols() != src.dim() {
                return Err(Error::InvalidComplex(format!(
                    "d in degree {degree} is {}x{}, expected {}x{}",
                    d.nrows(),
                    d.ncols(),
                    tgt.dim(),
                    src.dim()
                )));
            }
            if d.field() != self.field {
                return Err(Error::FieldMismatch(format!("d in degree {degree} is over {}", d.field())));
            }
            if !src.is_module_map(d, tgt) {
                return Err(Error::InvalidComplex(format!("d in degree {degree} is not a module map")));
            }
        }
        for i in 1..self.diffs.len() {
            if !self.diffs[i].mul(&self.diffs[i - 1]).is_zero() {
                return Err(Error::InvalidComplex(format!("d² ≠ 0 at degree {}", self.lo + i as i64 - 1)));
            }
        }
        Ok(())
    }

    pub fn shift(&self, k: i64) -> PerfectComplex {
        PerfectComplex { lo: self.lo + k, ..self.clone() }
    }

    /// Forget the `Q`-action.
    pub fn restrict_to_lambda(&self) -> PerfectComplex {
        PerfectComplex {
            group: Group::Trivial,
            terms: self.terms.iter().map(ModuleRep::restrict_to_lambda).collect(),
            ..self.clone()
        }
    }

    /// Homology in one degree with canonical coset representatives.
    pub fn homology_at(&self, degree: i64) -> HomologyPiece {
        let n = self.dim_at(degree);
        let cycles = self.diff(degree).kernel();
        let boundaries = if n == 0 { Subspace::zero(self.field, 0) } else { self.diff(degree - 1).image() };
        let quotient = Quotient::new(&cycles, &boundaries).expect("d² = 0 on a validated complex");
        let q = match self.term(degree) {
            Some(m) => quotient.induced_map(&m.act_q, &quotient).expect("d is q-equivariant"),
            None => Matrix::zero(self.field, 0, 0),
        };
        HomologyPiece { quotient, rep: QRep::new(q) }
    }

    pub fn homology(&self) -> GradedQRep {
        GradedQRep {
            lo: self.lo,
            pieces: (self.lo..=self.hi()).map(|d| self.homology_at(d).rep).collect(),
        }
    }

    pub fn total_homology_dim(&self) -> usize {
        (self.lo..=self.hi()).map(|d| self.homology_at(d).quotient.dim()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda_c3() -> PerfectComplex {
        PerfectComplex::concentrated(Field::F2, Group::C3, 0, ModuleRep::lambda(Field::F2)).unwrap()
    }

    #[test]
    fn module_examples_satisfy_axioms() {
        for field in [Field::F2, Field::F4] {
            ModuleRep::lambda(field).check(Group::C3).unwrap();
            ModuleRep::free(field, Group::C3).check(Group::C3).unwrap();
            ModuleRep::free(field, Group::Trivial).check(Group::Trivial).unwrap();
        }
        ModuleRep::lambda_twisted(Field::F4, Scalar::W).check(Group::C3).unwrap();
    }

    #[test]
    fn lambda_freeness() {
        assert_eq!(ModuleRep::free(Field::F2, Group::Trivial).lambda_free_certificate().unwrap().len(), 1);
        assert!(!ModuleRep::trivial(Field::F2).is_lambda_free());
        assert_eq!(ModuleRep::free(Field::F2, Group::C3).lambda_free_certificate().unwrap().len(), 3);
    }

    #[test]
    fn validate_examples() {
        PerfectComplex::zero(Field::F2, Group::C3).validate().unwrap();
        lambda_c3().validate().unwrap();
        let m = ModuleRep::lambda(Field::F2);
        let y1 = ExtElem::Y1.mul_matrix(Field::F2);
        let bad = PerfectComplex {
            field: Field::F2,
            group: Group::Trivial,
            lo: 0,
            terms: vec![m.restrict_to_lambda(); 3],
            diffs: vec![Matrix::identity(Field::F2, 4), Matrix::identity(Field::F2, 4)],
        };
        let err = bad.validate().unwrap_err();
        assert_eq!(err, Error::InvalidComplex("d² ≠ 0 at degree 0".into()));
        let not_map = PerfectComplex {
            field: Field::F2,
            group: Group::C3,
            lo: 0,
            terms: vec![m.clone(), m],
            diffs: vec![y1],
        };
        assert!(not_map.validate().is_err());
    }

    #[test]
    fn homology_examples() {
        assert_eq!(PerfectComplex::zero(Field::F2, Group::C3).total_homology_dim(), 0);
        let h = lambda_c3().homology();
        assert_eq!(h.support(), vec![(0, 4)]);
        let m = ModuleRep::lambda(Field::F2);
        let y12 = ExtElem::Y12.mul_matrix(Field::F2);
        let c = PerfectComplex::new(Field::F2, Group::C3, 0, vec![m.clone(), m], vec![y12]).unwrap();
        assert_eq!(c.homology().support(), vec![(0, 3), (1, 3)]);
    }

    #[test]
    fn shift_examples() {
        let c = lambda_c3();
        assert_eq!(c.shift(0), c);
        assert_eq!(c.shift(5).shift(-5), c);
        assert_eq!(c.shift(3).homology().support(), vec![(3, 4)]);
    }

    #[test]
    fn decompose_examples() {
        let triv = QRep::new(Matrix::identity(Field::F2, 2));
        assert_eq!(triv.decompose().unwrap(), Irreducibles::F2 { trivial: 2, v: 0 });
        // columns are images: e1 -> e2, e2 -> e1 + e2
        let v = QRep::new(Matrix::from_bit_rows(2, &[&[0, 1], &[1, 1]]));
        assert_eq!(v.decompose().unwrap(), Irreducibles::F2 { trivial: 0, v: 1 });
        let a = QRep::new(Matrix::identity(Field::F4, 1).scaled(Scalar::W));
        assert_eq!(a.decompose().unwrap(), Irreducibles::F4 { one: 0, alpha: 1, alpha2: 0 });
    }
}
