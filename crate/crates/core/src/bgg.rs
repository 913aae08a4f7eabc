//! The equivariant BGG correspondence between perfect complexes over
//! `Λ∗Q` and dg modules over `S∗Q`, and the classification it yields.
//!
//! A [`DgSModule`] is free over `S` on homogeneous generators `e_a`; its
//! differential is `d(e_a) = sum_b e_b p_ba` with `p_ba` homogeneous of
//! degree `deg e_a + 1 - deg e_b`, stored as one coefficient matrix per
//! monomial. `q` acts by `(e_a s) q = (sum_b G_ba e_b) (q^-1 · s)`.
//!
//! * [`beta`] sends `C` to `C ⊗ S` with `d(c ⊗ f) = dc ⊗ f + sum_i c y_i ⊗ x_i f`.
//! * [`classify`] reads the triple `(l, L, J)` off the homology of `β(C)`.
//! * [`koszul_module`] and [`epsilon_tensor`] go back: `M ⊗_S ε*` with
//!   `ε^{-k} = Λ ⊗ (S_k)^∨` and `d(λ ⊗ h) = sum_i λ y_i ⊗ h x_i`, truncated
//!   at its lowest homology degree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::complex::{HomologyPiece, ModuleRep, PerfectComplex, QRep};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::ideal::GradedIdeal;
use crate::linalg::{Matrix, Quotient, Subspace, Vector};
use crate::poly::{dim_s, mul_matrix, q_matrix, Poly};
use crate::skew::{ExtElem, Group};

/// A monomial `x1^a x2^b`, stored as `(a, b)`.
pub type Monomial = (usize, usize);

fn monomial_degree(m: Monomial) -> usize {
    m.0 + m.1
}

/// An `S`-free dg module with a compatible `q`-action.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DgSModule {
    pub field: Field,
    pub group: Group,
    /// Internal (= cohomological) degree of each generator.
    pub degrees: Vec<i64>,
    /// `d = sum_μ A_μ ⊗ μ`; `A_μ[b][a]` is the coefficient of `μ` in `p_ba`.
    pub diff: BTreeMap<Monomial, Matrix>,
    /// `G`: `e_a q = sum_b G_ba e_b`.
    pub q: Matrix,
}

/// Position of each generator's block inside `M^t`.
struct Layout {
    /// `(offset, degree of the S-part)` for generators present in degree `t`.
    blocks: Vec<Option<(usize, usize)>>,
    dim: usize,
}

impl DgSModule {
    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn min_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().min()
    }

    pub fn max_degree(&self) -> Option<i64> {
        self.degrees.iter().copied().max()
    }

    fn layout(&self, t: i64) -> Layout {
        let mut off = 0;
        let blocks = self
            .degrees
            .iter()
            .map(|&deg| {
                let k = t - deg;
                (k >= 0).then(|| {
                    let b = (off, k as usize);
                    off += dim_s(k as usize);
                    b
                })
            })
            .collect();
        Layout { blocks, dim: off }
    }

    /// `dim_F M^t`.
    pub fn dim_at(&self, t: i64) -> usize {
        self.layout(t).dim
    }

    /// `d : M^t -> M^(t+1)`.
    pub fn diff_at(&self, t: i64) -> Matrix {
        let src = self.layout(t);
        let tgt = self.layout(t + 1);
        let mut m = Matrix::zero(self.field, tgt.dim, src.dim);
        for (&(ma, mb), coef) in &self.diff {
            for (b, row) in coef.rows().iter().enumerate() {
                let Some((tgt_off, _)) = tgt.blocks[b] else { continue };
                for a in row.support() {
                    let Some((src_off, k)) = src.blocks[a] else { continue };
                    let c = row.get(a);
                    // x1^(k-i) x2^i * x1^ma x2^mb has x2-exponent i + mb
                    for i in 0..dim_s(k) {
                        let r = tgt_off + i + mb;
                        let _ = ma;
                        m.set(r, src_off + i, m.get(r, src_off + i) + c);
                    }
                }
            }
        }
        m
    }

    /// `q` on `M^t`.
    pub fn q_at(&self, t: i64) -> Matrix {
        let lay = self.layout(t);
        let mut m = Matrix::zero(self.field, lay.dim, lay.dim);
        let power = if self.group == Group::C3 { 2 } else { 0 };
        for (b, row) in self.q.rows().iter().enumerate() {
            for a in row.support() {
                let (Some((ob, kb)), Some((oa, ka))) = (lay.blocks[b], lay.blocks[a]) else { continue };
                debug_assert_eq!(ka, kb);
                let qa = q_matrix(self.field, ka, power).scaled(row.get(a));
                for r in 0..dim_s(ka) {
                    for c in 0..dim_s(ka) {
                        let s = qa.get(r, c);
                        if !s.is_zero() {
                            m.set(ob + r, oa + c, m.get(ob + r, oa + c) + s);
                        }
                    }
                }
            }
        }
        m
    }

    /// `v · x1^a x2^b` for `v` in `M^t`.
    pub fn mul_monomial(&self, t: i64, v: &Vector, mono: Monomial) -> Vector {
        let src = self.layout(t);
        let tgt = self.layout(t + monomial_degree(mono) as i64);
        let mut out = Vector::zeros(self.field, tgt.dim);
        for (g, blk) in src.blocks.iter().enumerate() {
            let Some((off, k)) = *blk else { continue };
            let (toff, _) = tgt.blocks[g].expect("degree only grows");
            for i in 0..dim_s(k) {
                let s = v.get(off + i);
                if !s.is_zero() {
                    out.set(toff + i + mono.1, s);
                }
            }
        }
        out
    }

    fn poly_entry(&self, b: usize, a: usize) -> Poly {
        let mut p = Poly::zero(self.field);
        for (&(ma, mb), coef) in &self.diff {
            let c = coef.get(b, a);
            if !c.is_zero() {
                p = p.add(&Poly::monomial(self.field, c, ma, mb));
            }
        }
        p
    }

    /// The differential as a matrix of polynomials.
    pub fn poly_matrix(&self) -> Vec<Vec<Poly>> {
        let n = self.rank();
        (0..n).map(|b| (0..n).map(|a| self.poly_entry(b, a)).collect()).collect()
    }

    /// Check homogeneity, `d^2 = 0`, and `q`-equivariance of `d`.
    pub fn check(&self) -> Result<()> {
        let n = self.rank();
        if self.q.nrows() != n || self.q.ncols() != n {
            return Err(Error::Dimension("q matrix does not match the generator count".into()));
        }
        for (&mono, coef) in &self.diff {
            if coef.nrows() != n || coef.ncols() != n {
                return Err(Error::Dimension("coefficient matrix does not match the generator count".into()));
            }
            for (b, row) in coef.rows().iter().enumerate() {
                for a in row.support() {
                    if self.degrees[a] + 1 - self.degrees[b] != monomial_degree(mono) as i64 {
                        return Err(Error::InvalidComplex(format!("d(e_{a}) has an inhomogeneous e_{b} entry")));
                    }
                }
            }
        }
        for (b, row) in self.q.rows().iter().enumerate() {
            for a in row.support() {
                if self.degrees[a] != self.degrees[b] {
                    return Err(Error::InvalidComplex("q mixes generator degrees".into()));
                }
            }
        }
        let id = Matrix::identity(self.field, n);
        match self.group {
            Group::Trivial if self.q != id => {
                return Err(Error::InvalidComplex("q must act trivially for trivial Q".into()));
            }
            Group::C3 if self.q.pow(3) != id => {
                return Err(Error::InvalidComplex("q^3 != 1 on generators".into()));
            }
            _ => {}
        }
        let p = self.poly_matrix();
        let zero = Poly::zero(self.field);
        for c in 0..n {
            for a in 0..n {
                let mut acc = zero.clone();
                for (b, row) in p.iter().enumerate() {
                    acc = acc.add(&p[c][b].mul(&row[a]));
                }
                if !acc.is_zero() {
                    return Err(Error::InvalidComplex("d^2 != 0".into()));
                }
            }
        }
        if self.group == Group::Trivial {
            return Ok(());
        }
        // P G = G (q^-1 · P)
        let g = &self.q;
        #[allow(clippy::needless_range_loop)]
        for c in 0..n {
            for a in 0..n {
                let mut lhs = zero.clone();
                let mut rhs = zero.clone();
                for b in 0..n {
                    lhs = lhs.add(&p[c][b].scale(g.get(b, a)));
                    rhs = rhs.add(&p[b][a].q_act(2).scale(g.get(c, b)));
                }
                if lhs != rhs {
                    return Err(Error::InvalidComplex("d is not q-equivariant".into()));
                }
            }
        }
        Ok(())
    }

    /// Homology in degree `t` with its `q`-action.
    pub fn homology_at(&self, t: i64) -> HomologyPiece {
        let cycles = self.diff_at(t).kernel();
        let boundaries = self.diff_at(t - 1).image();
        let quotient = Quotient::new(&cycles, &boundaries).expect("d^2 = 0");
        let q = quotient.induced_map(&self.q_at(t), &quotient).expect("d is q-equivariant");
        HomologyPiece { quotient, rep: QRep::new(q) }
    }
}

/// Homology of a dg `S`-module through a degree bound.
#[derive(Clone, Debug)]
pub struct DgHomology {
    pub lo: i64,
    pub pieces: Vec<HomologyPiece>,
    /// Induced `x1`, `x2` multiplication `H^t -> H^(t+1)`, indexed like
    /// `pieces` (the last entry maps out of the computed range and is empty).
    pub x_maps: Vec<(Matrix, Matrix)>,
}

impl DgHomology {
    pub fn dims(&self) -> Vec<(i64, usize)> {
        self.pieces
            .iter()
            .enumerate()
            .map(|(i, p)| (self.lo + i as i64, p.quotient.dim()))
            .collect()
    }

    pub fn total_dim(&self) -> usize {
        self.pieces.iter().map(|p| p.quotient.dim()).sum()
    }
}

/// Homology of `M` in degrees from its lowest generator through `bound`.
/// The two top degrees must vanish; otherwise the bound is reported as too
/// small (homology might continue upward).
pub fn dg_homology(m: &DgSModule, bound: i64) -> Result<DgHomology> {
    let Some(lo) = m.min_degree() else {
        return Ok(DgHomology { lo: 0, pieces: Vec::new(), x_maps: Vec::new() });
    };
    if bound < lo + 1 {
        return Err(Error::BoundTooSmall(bound));
    }
    let pieces: Vec<HomologyPiece> = (lo..=bound).map(|t| m.homology_at(t)).collect();
    let n = pieces.len();
    if pieces[n - 1].quotient.dim() != 0 || pieces[n - 2].quotient.dim() != 0 {
        return Err(Error::BoundTooSmall(bound));
    }
    let mut x_maps = Vec::new();
    for i in 0..n {
        let t = lo + i as i64;
        if i + 1 == n {
            x_maps.push((Matrix::zero(m.field, 0, 0), Matrix::zero(m.field, 0, 0)));
            continue;
        }
        let induced = |mono: Monomial| -> Result<Matrix> {
            let src = &pieces[i].quotient;
            let tgt = &pieces[i + 1].quotient;
            let cols = src
                .reps()
                .iter()
                .map(|r| tgt.coords_vector(&m.mul_monomial(t, r, mono)))
                .collect::<Result<Vec<_>>>()?;
            Ok(Matrix::from_columns(m.field, tgt.dim(), &cols))
        };
        x_maps.push((induced((1, 0))?, induced((0, 1))?));
    }
    Ok(DgHomology { lo, pieces, x_maps })
}

/// `β(C) = C ⊗ S`.
pub fn beta(c: &PerfectComplex) -> Result<DgSModule> {
    c.validate()?;
    let n: usize = c.terms.iter().map(ModuleRep::dim).sum();
    let mut degrees = Vec::with_capacity(n);
    let mut offsets = Vec::new();
    for (i, m) in c.terms.iter().enumerate() {
        offsets.push(degrees.len());
        degrees.extend(std::iter::repeat_n(c.lo + i as i64, m.dim()));
    }
    let place = |blocks: &mut Matrix, r0: usize, c0: usize, src: &Matrix| {
        for (r, row) in src.rows().iter().enumerate() {
            for col in row.support() {
                blocks.set(r0 + r, c0 + col, row.get(col));
            }
        }
    };
    let mut d0 = Matrix::zero(c.field, n, n);
    let mut y1 = Matrix::zero(c.field, n, n);
    let mut y2 = Matrix::zero(c.field, n, n);
    let mut g = Matrix::zero(c.field, n, n);
    for (i, m) in c.terms.iter().enumerate() {
        let o = offsets[i];
        place(&mut y1, o, o, &m.act_y1);
        place(&mut y2, o, o, &m.act_y2);
        place(&mut g, o, o, &m.act_q);
        if i + 1 < c.terms.len() {
            place(&mut d0, offsets[i + 1], o, &c.diffs[i]);
        }
    }
    let mut diff = BTreeMap::new();
    for (mono, mat) in [((0, 0), d0), ((1, 0), y1), ((0, 1), y2)] {
        if !mat.is_zero() {
            diff.insert(mono, mat);
        }
    }
    Ok(DgSModule { field: c.field, group: c.group, degrees, diff, q: g })
}

/// A one-dimensional representation of `Q`: `q` acts by 1, `w` or `w^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RepLabel {
    Triv,
    Alpha,
    Alpha2,
}

impl RepLabel {
    pub fn scalar(self) -> Scalar {
        match self {
            RepLabel::Triv => Scalar::ONE,
            RepLabel::Alpha => Scalar::W,
            RepLabel::Alpha2 => Scalar::W2,
        }
    }

    pub fn from_scalar(s: Scalar) -> Result<RepLabel> {
        match s {
            Scalar::ONE => Ok(RepLabel::Triv),
            Scalar::W => Ok(RepLabel::Alpha),
            Scalar::W2 => Ok(RepLabel::Alpha2),
            _ => Err(Error::InvariantViolation("q acts by zero on a line".into())),
        }
    }

    /// Labels available over `field` for `group`.
    pub fn all(field: Field, group: Group) -> Vec<RepLabel> {
        match (field, group) {
            (Field::F4, Group::C3) => vec![RepLabel::Triv, RepLabel::Alpha, RepLabel::Alpha2],
            _ => vec![RepLabel::Triv],
        }
    }
}

impl fmt::Display for RepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RepLabel::Triv => "triv",
            RepLabel::Alpha => "alpha",
            RepLabel::Alpha2 => "alpha2",
        })
    }
}

impl FromStr for RepLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<RepLabel> {
        match s.trim() {
            "triv" | "trivial" | "1" => Ok(RepLabel::Triv),
            "alpha" => Ok(RepLabel::Alpha),
            "alpha2" => Ok(RepLabel::Alpha2),
            other => Err(Error::Parse(format!("unknown representation label {other:?}"))),
        }
    }
}

/// A classifying triple `(l, L, J)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Triple {
    pub l: i64,
    pub label: RepLabel,
    pub ideal: GradedIdeal,
}

impl Triple {
    pub fn new(l: i64, label: RepLabel, ideal: GradedIdeal) -> Triple {
        Triple { l, label, ideal }
    }

    pub fn field(&self) -> Field {
        self.ideal.field()
    }

    /// Check that the triple is admissible for `group`.
    pub fn check(&self, group: Group) -> Result<(usize, usize)> {
        let degs = self.ideal.require_parameter()?;
        if group == Group::C3 && !self.ideal.is_invariant() {
            return Err(Error::NotInvariant);
        }
        if !RepLabel::all(self.field(), group).contains(&self.label) {
            return Err(Error::FieldMismatch(format!(
                "label {} needs GF(4) coefficients and Q = C3",
                self.label
            )));
        }
        Ok(degs)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.l, self.label, self.ideal)
    }
}

/// Output of [`classify`].
#[derive(Clone, Debug)]
pub struct Classification {
    pub triple: Triple,
    /// Cogenerator degrees minus one.
    pub m: usize,
    pub n: usize,
    /// Top homology degree of `C` minus `l`.
    pub t: i64,
    /// `(degree, dim H^degree(C))` for nonzero homology.
    pub homology_dims: Vec<(i64, usize)>,
    /// Degrees of `L ⊗ Λ(Σ^-1 J/(x1,x2)J)`: `l, l+m, l+n, l+m+n`.
    pub gr_degrees: [i64; 4],
}

/// Classify a complex with four-dimensional homology.
pub fn classify(c: &PerfectComplex) -> Result<Classification> {
    c.validate()?;
    let homology = c.homology();
    let total = homology.total_dim();
    if total != 4 {
        return Err(Error::NotFourDimensional(total));
    }
    let homology_dims = homology.support();
    let top = homology_dims.last().expect("nonzero homology").0;
    let m = beta(c)?;

    let mut l = None;
    for t in c.lo..=top {
        let piece = m.homology_at(t);
        if piece.quotient.dim() > 0 {
            l = Some((t, piece));
            break;
        }
    }
    let Some((l, bottom)) = l else {
        return Err(Error::InvariantViolation("H(β(C)) vanishes below the top homology degree of C".into()));
    };
    if bottom.quotient.dim() != 1 {
        return Err(Error::InvariantViolation(format!(
            "H^l(β(C)) has dimension {}, expected 1",
            bottom.quotient.dim()
        )));
    }
    let label = RepLabel::from_scalar(bottom.rep.q.get(0, 0))?;
    let z = bottom.quotient.reps()[0].clone();

    // J_d = kernel of S_d -> H^(l+d), s -> [z s]. Two extra degrees beyond
    // the largest possible socle degree confirm the vanishing.
    let dmax = (top - l + 2) as usize;
    let mut pieces = Vec::with_capacity(dmax + 1);
    for d in 0..=dmax {
        let h = m.homology_at(l + d as i64);
        let cols = (0..dim_s(d))
            .map(|k| h.quotient.coords_vector(&m.mul_monomial(l, &z, (d - k, k))))
            .collect::<Result<Vec<_>>>()?;
        let action = Matrix::from_columns(c.field, h.quotient.dim(), &cols);
        if action.rank() != h.quotient.dim() {
            return Err(Error::InvariantViolation(format!(
                "H^{}(β(C)) is not generated by H^l",
                l + d as i64
            )));
        }
        pieces.push(action.kernel());
    }

    let mut gens = Vec::new();
    for (d, piece) in pieces.iter().enumerate() {
        let mut dec = Vec::new();
        if d > 0 {
            for b in pieces[d - 1].basis() {
                dec.push(crate::poly::mul_x1(b));
                dec.push(crate::poly::mul_x2(b));
            }
        }
        let dec = Subspace::from_spanning(c.field, dim_s(d), dec);
        if !dec.is_subspace_of(piece) {
            return Err(Error::InvariantViolation("annihilator is not an ideal".into()));
        }
        for r in Quotient::new(piece, &dec)?.reps() {
            gens.push(Poly::from_component(d, r.clone()));
        }
    }
    let ideal = GradedIdeal::new(c.field, gens)?;
    for (d, piece) in pieces.iter().enumerate() {
        if ideal.piece(d) != *piece {
            return Err(Error::InvariantViolation("annihilator not generated in the computed range".into()));
        }
    }
    let (d1, d2) = ideal
        .parameter_degrees()
        .ok_or_else(|| Error::InvariantViolation(format!("annihilator {ideal} is not a parameter ideal")))?;
    if c.group == Group::C3 && !ideal.is_invariant() {
        return Err(Error::InvariantViolation("annihilator is not q-invariant".into()));
    }
    let (mm, nn) = (d1 - 1, d2 - 1);
    let t = top - l;
    if t != (mm + nn) as i64 {
        return Err(Error::InvariantViolation(format!("t = {t} but m + n = {}", mm + nn)));
    }
    Ok(Classification {
        triple: Triple::new(l, label, ideal),
        m: mm,
        n: nn,
        t,
        homology_dims,
        gr_degrees: [l, l + mm as i64, l + nn as i64, l + t],
    })
}

/// Equal classifying triples.
pub fn same_quasi_iso_class(a: &PerfectComplex, b: &PerfectComplex) -> Result<bool> {
    Ok(classify(a)?.triple == classify(b)?.triple)
}

/// The Koszul dg module `L ⊗ Λ(J/(x1,x2)J) ⊗ S` with the equivariant
/// section obtained by Reynolds averaging. Generators `e∅, e1, e2, e12` sit
/// in degrees `0, d1-1, d2-1, d1+d2-2`.
pub fn koszul_module(label: RepLabel, ideal: &GradedIdeal, group: Group) -> Result<DgSModule> {
    let field = ideal.field();
    let (d1, d2) = Triple::new(0, label, ideal.clone()).check(group)?;
    // Cogenerator representatives w1, w2 and the matrix A of q^-1 on W in
    // that basis.
    let (reps, a_mat): (Vec<(usize, Vector)>, Matrix) = match group {
        Group::C3 => {
            let cogens = ideal.cogenerators()?;
            let mut reps = Vec::new();
            let mut blocks: Vec<Matrix> = Vec::new();
            for (d, quot, rep) in &cogens {
                for r in quot.reps() {
                    reps.push((*d, r.clone()));
                }
                blocks.push(rep.q.pow(2));
            }
            let a = blocks.iter().skip(1).fold(blocks[0].clone(), |acc, b| acc.block_diag(b));
            (reps, a)
        }
        Group::Trivial => {
            let gens = ideal.minimal_generators();
            let reps = gens.iter().map(|g| (g.degree().expect("nonzero"), g.component(g.degree().expect("nonzero")))).collect();
            (reps, Matrix::identity(field, 2))
        }
    };
    debug_assert_eq!(reps.len(), 2);
    debug_assert_eq!((reps[0].0, reps[1].0), (d1, d2));

    // σ(w_j) = sum_g g · s(g^-1 w_j) with s(w_i) = r_i; g^-1 = q^-p acts on
    // W by A^p.
    let sigma: Vec<Poly> = match group {
        Group::C3 => (0..2)
            .map(|j| {
                let mut acc = Poly::zero(field);
                for p in 0..3usize {
                    let ap = a_mat.pow(p as u32);
                    let mut lift = Poly::zero(field);
                    for (i, (d, r)) in reps.iter().enumerate() {
                        let c = ap.get(i, j);
                        if !c.is_zero() {
                            lift = lift.add(&Poly::from_component(*d, r.clone()).scale(c));
                        }
                    }
                    acc = acc.add(&lift.q_act(p));
                }
                acc
            })
            .collect(),
        Group::Trivial => reps.iter().map(|(d, r)| Poly::from_component(*d, r.clone())).collect(),
    };
    for (j, s) in sigma.iter().enumerate() {
        let d = reps[j].0;
        if s.degree() != Some(d) || !ideal.contains(s) {
            return Err(Error::InvariantViolation("equivariant section left J".into()));
        }
        let quot = Quotient::new(&ideal.piece(d), &ideal.decomposables(d))?;
        let expect = quot.coords(&reps[j].1)?;
        if quot.coords(&s.component(d))? != expect {
            return Err(Error::InvariantViolation("averaged lift is not a section".into()));
        }
    }

    // generator order: e∅, e1, e2, e12
    let degrees = vec![0, d1 as i64 - 1, d2 as i64 - 1, (d1 + d2) as i64 - 2];
    let mut diff: BTreeMap<Monomial, Matrix> = BTreeMap::new();
    let mut add_entry = |b: usize, a: usize, p: &Poly| {
        for (x, y, c) in p.terms() {
            let entry = diff.entry((x, y)).or_insert_with(|| Matrix::zero(field, 4, 4));
            entry.set(b, a, entry.get(b, a) + c);
        }
    };
    add_entry(0, 1, &sigma[0]);
    add_entry(0, 2, &sigma[1]);
    add_entry(2, 3, &sigma[0]);
    add_entry(1, 3, &sigma[1]);

    let lam = label.scalar();
    let det = a_mat.get(0, 0) * a_mat.get(1, 1) + a_mat.get(0, 1) * a_mat.get(1, 0);
    let mut g = Matrix::zero(field, 4, 4);
    g.set(0, 0, lam);
    for i in 0..2 {
        for j in 0..2 {
            g.set(1 + i, 1 + j, lam * a_mat.get(i, j));
        }
    }
    g.set(3, 3, lam * det);
    let module = DgSModule { field, group, degrees, diff, q: g };
    module.check()?;
    Ok(module)
}

/// The finite window of `M ⊗_S ε*` actually used, before and after
/// truncation. The truncated term need not be `Λ`-free when `M` does not
/// come from a perfect complex.
#[derive(Clone, Debug)]
pub struct EpsilonTruncation {
    /// Lowest and highest degree of the untruncated window.
    pub window: (i64, i64),
    /// Lowest homology degree.
    pub l0: i64,
    /// Homology dimensions over the window.
    pub homology_dims: Vec<(i64, usize)>,
    /// The truncated complex (not validated).
    pub complex: PerfectComplex,
}

struct EpsLayout {
    /// `(offset, k)` for generators with `deg >= n`, where the block is
    /// `(S_k)^∨ ⊗ Λ`, `k = deg - n`.
    blocks: Vec<Option<(usize, usize)>>,
    dim: usize,
}

fn eps_layout(m: &DgSModule, n: i64) -> EpsLayout {
    let mut off = 0;
    let blocks = m
        .degrees
        .iter()
        .map(|&deg| {
            let k = deg - n;
            (k >= 0).then(|| {
                let b = (off, k as usize);
                off += 4 * dim_s(k as usize);
                b
            })
        })
        .collect();
    EpsLayout { blocks, dim: off }
}

fn place_block(target: &mut Matrix, r0: usize, c0: usize, block: &Matrix, scale: Scalar) {
    for (r, row) in block.rows().iter().enumerate() {
        for c in row.support() {
            let v = target.get(r0 + r, c0 + c) + row.get(c) * scale;
            target.set(r0 + r, c0 + c, v);
        }
    }
}

/// `(M ⊗_S ε*)^n` as a `Λ∗Q`-module.
fn eps_term(m: &DgSModule, n: i64) -> ModuleRep {
    let f = m.field;
    let lay = eps_layout(m, n);
    let mut y1 = Matrix::zero(f, lay.dim, lay.dim);
    let mut y2 = Matrix::zero(f, lay.dim, lay.dim);
    let mut q = Matrix::zero(f, lay.dim, lay.dim);
    let ly1 = ExtElem::Y1.mul_matrix(f);
    let ly2 = ExtElem::Y2.mul_matrix(f);
    let lq = match m.group {
        Group::C3 => ExtElem::psi_matrix(2, f),
        Group::Trivial => Matrix::identity(f, 4),
    };
    let q_power = if m.group == Group::C3 { 1 } else { 0 };
    for (a, blk) in lay.blocks.iter().enumerate() {
        let Some((off, k)) = *blk else { continue };
        let id = Matrix::identity(f, dim_s(k));
        place_block(&mut y1, off, off, &id.kron(&ly1), Scalar::ONE);
        place_block(&mut y2, off, off, &id.kron(&ly2), Scalar::ONE);
        let qk = q_matrix(f, k, q_power).transpose().kron(&lq);
        for (b, bblk) in lay.blocks.iter().enumerate() {
            let g = m.q.get(b, a);
            if g.is_zero() {
                continue;
            }
            let (boff, _) = bblk.expect("q preserves generator degrees");
            place_block(&mut q, boff, off, &qk, g);
        }
    }
    ModuleRep::new(y1, y2, q)
}

/// `d : (M ⊗_S ε*)^n -> (M ⊗_S ε*)^(n+1)`.
fn eps_diff(m: &DgSModule, n: i64) -> Matrix {
    let f = m.field;
    let src = eps_layout(m, n);
    let tgt = eps_layout(m, n + 1);
    let mut d = Matrix::zero(f, tgt.dim, src.dim);
    let id4 = Matrix::identity(f, 4);
    for (a, blk) in src.blocks.iter().enumerate() {
        let Some((off, k)) = *blk else { continue };
        // ε-part: λ ⊗ h -> sum_i λ y_i ⊗ h x_i
        if k >= 1 {
            let (toff, tk) = tgt.blocks[a].expect("k >= 1 survives");
            debug_assert_eq!(tk, k - 1);
            for (x, y) in [(Poly::x1(f), ExtElem::Y1), (Poly::x2(f), ExtElem::Y2)] {
                let block = mul_matrix(&x, k - 1).transpose().kron(&y.mul_matrix(f));
                place_block(&mut d, toff, off, &block, Scalar::ONE);
            }
        }
        // M-part: e_a ⊗ φ -> sum_b e_b ⊗ p_ba · φ
        for (&mono, coef) in &m.diff {
            let p = Poly::monomial(f, Scalar::ONE, mono.0, mono.1);
            for (b, row) in coef.rows().iter().enumerate() {
                let c = row.get(a);
                if c.is_zero() {
                    continue;
                }
                let Some((toff, kb)) = tgt.blocks[b] else { continue };
                debug_assert_eq!(kb + monomial_degree(mono), k);
                let block = mul_matrix(&p, kb).transpose().kron(&id4);
                place_block(&mut d, toff, off, &block, c);
            }
        }
    }
    d
}

fn eps_homology_dim(m: &DgSModule, n: i64) -> usize {
    let dn = eps_diff(m, n);
    let cycles = dn.ncols() - dn.rank();
    cycles - eps_diff(m, n - 1).rank()
}

/// Compute `M ⊗_S ε*` on a window wide enough to see all homology, and
/// truncate at the lowest homology degree.
pub fn epsilon_truncation(m: &DgSModule) -> Result<EpsilonTruncation> {
    let (Some(lo), Some(top)) = (m.min_degree(), m.max_degree()) else {
        return Ok(EpsilonTruncation {
            window: (0, -1),
            l0: 0,
            homology_dims: Vec::new(),
            complex: PerfectComplex::zero(m.field, m.group),
        });
    };
    // Scan down from the top until two consecutive vanishing degrees sit
    // below the lowest generator and below all homology seen.
    let mut dims: Vec<(i64, usize)> = Vec::new();
    let mut n = top;
    let mut zeros_below = 0;
    let floor = lo - 2 - 4 * (top - lo + 2);
    loop {
        let h = eps_homology_dim(m, n);
        dims.push((n, h));
        zeros_below = if h == 0 { zeros_below + 1 } else { 0 };
        if n < lo && zeros_below >= 2 {
            break;
        }
        n -= 1;
        if n < floor {
            return Err(Error::BoundTooSmall(n));
        }
    }
    dims.reverse();
    let window = (dims[0].0, top);
    let Some(&(l0, _)) = dims.iter().find(|(_, h)| *h > 0) else {
        return Ok(EpsilonTruncation {
            window,
            l0: 0,
            homology_dims: dims,
            complex: PerfectComplex::zero(m.field, m.group),
        });
    };

    // Replace T^l0 by T^l0 / im d.
    let bottom = eps_term(m, l0);
    let full = Subspace::full(m.field, bottom.dim());
    let boundaries = eps_diff(m, l0 - 1).image();
    let quot = Quotient::new(&full, &boundaries)?;
    let induced = |a: &Matrix| quot.induced_map(a, &quot);
    let coker = ModuleRep::new(induced(&bottom.act_y1)?, induced(&bottom.act_y2)?, induced(&bottom.act_q)?);
    let mut terms = vec![coker];
    let mut diffs = Vec::new();
    if l0 < top {
        let d = eps_diff(m, l0);
        let cols: Vec<Vector> = quot.reps().iter().map(|r| d.mul_vec(r)).collect();
        diffs.push(Matrix::from_columns(m.field, d.nrows(), &cols));
        for k in l0 + 1..=top {
            terms.push(eps_term(m, k));
            if k < top {
                diffs.push(eps_diff(m, k));
            }
        }
    }
    let complex = PerfectComplex { field: m.field, group: m.group, lo: l0, terms, diffs };
    Ok(EpsilonTruncation { window, l0, homology_dims: dims, complex })
}

/// `M ⊗_S ε*`, smart-truncated at the bottom, as a validated perfect
/// complex.
pub fn epsilon_tensor(m: &DgSModule) -> Result<PerfectComplex> {
    let trunc = epsilon_truncation(m)?;
    let c = trunc.complex;
    if let Some(first) = c.terms.first() {
        if !first.is_lambda_free() {
            return Err(Error::InvariantViolation(format!(
                "truncation cokernel in degree {} is not Λ-free",
                c.lo
            )));
        }
    }
    c.validate().map_err(|e| Error::InvariantViolation(format!("ε-tensor complex invalid: {e}")))?;
    Ok(c)
}

/// A complex with classifying triple `t` (over `Λ∗group`).
pub fn realize(t: &Triple, group: Group) -> Result<PerfectComplex> {
    let k = koszul_module(t.label, &t.ideal, group)?;
    let c = epsilon_tensor(&k)?;
    let l0 = c.lo;
    Ok(c.shift(t.l - l0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lambda_complex(field: Field, group: Group) -> PerfectComplex {
        let m = match group {
            Group::C3 => ModuleRep::lambda(field),
            Group::Trivial => ModuleRep::lambda(field).restrict_to_lambda(),
        };
        PerfectComplex::concentrated(field, group, 0, m).unwrap()
    }

    #[test]
    fn beta_of_lambda_resolves_the_field() {
        for group in [Group::Trivial, Group::C3] {
            let m = beta(&lambda_complex(Field::F2, group)).unwrap();
            m.check().unwrap();
            let h = dg_homology(&m, 6).unwrap();
            assert_eq!(h.total_dim(), 1);
            assert_eq!(h.dims()[0], (0, 1));
        }
    }

    #[test]
    fn beta_of_zero_is_zero() {
        let m = beta(&PerfectComplex::zero(Field::F2, Group::C3)).unwrap();
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn free_module_with_zero_differential_fails_the_stop_rule() {
        let m = DgSModule {
            field: Field::F2,
            group: Group::Trivial,
            degrees: vec![0, 1],
            diff: BTreeMap::new(),
            q: Matrix::identity(Field::F2, 2),
        };
        m.check().unwrap();
        assert_eq!(dg_homology(&m, 8).unwrap_err(), Error::BoundTooSmall(8));
    }

    #[test]
    fn classify_lambda() {
        let c = lambda_complex(Field::F2, Group::C3);
        let cl = classify(&c).unwrap();
        assert_eq!(cl.triple, Triple::new(0, RepLabel::Triv, GradedIdeal::maximal(Field::F2)));
        assert_eq!((cl.m, cl.n, cl.t), (0, 0, 0));
        let shifted = classify(&c.shift(4)).unwrap();
        assert_eq!(shifted.triple.l, 4);
    }

    #[test]
    fn koszul_homology() {
        let k = koszul_module(RepLabel::Triv, &GradedIdeal::maximal(Field::F2), Group::C3).unwrap();
        let h = dg_homology(&k, 4).unwrap();
        assert_eq!(h.total_dim(), 1);
        let o = koszul_module(RepLabel::Triv, &GradedIdeal::oliver(Field::F2), Group::C3).unwrap();
        assert_eq!(o.degrees, vec![0, 2, 3, 5]);
        let h = dg_homology(&o, 9).unwrap();
        assert_eq!(h.total_dim(), 12);
        let hilbert = GradedIdeal::oliver(Field::F2).quotient_hilbert(7);
        let dims: Vec<usize> = h.dims().iter().map(|&(_, d)| d).collect();
        assert_eq!(&dims[..8], &hilbert[..]);
    }

    #[test]
    fn epsilon_of_s_is_the_field() {
        let s = DgSModule {
            field: Field::F2,
            group: Group::Trivial,
            degrees: vec![0],
            diff: BTreeMap::new(),
            q: Matrix::identity(Field::F2, 1),
        };
        let tr = epsilon_truncation(&s).unwrap();
        assert_eq!(tr.l0, 0);
        assert_eq!(tr.complex.homology().support(), vec![(0, 1)]);
        assert!(!tr.complex.terms[0].is_lambda_free());
        assert!(epsilon_tensor(&s).unwrap_err().is_invariant_violation());
    }

    #[test]
    fn epsilon_dimensions_follow_the_formula() {
        let k = koszul_module(RepLabel::Triv, &GradedIdeal::oliver(Field::F2), Group::C3).unwrap();
        for n in -3..=5i64 {
            let expected: usize = k.degrees.iter().filter(|&&a| a >= n).map(|&a| 4 * (a - n + 1) as usize).sum();
            assert_eq!(eps_term(&k, n).dim(), expected);
        }
    }

    #[test]
    fn realize_maximal_ideal() {
        let t = Triple::new(0, RepLabel::Triv, GradedIdeal::maximal(Field::F2));
        let c = realize(&t, Group::C3).unwrap();
        assert_eq!(c.homology().support(), vec![(0, 4)]);
        assert_eq!(classify(&c).unwrap().triple, t);
    }

    #[test]
    fn realize_oliver() {
        let t = Triple::new(0, RepLabel::Triv, GradedIdeal::oliver(Field::F2));
        let c = realize(&t, Group::C3).unwrap();
        assert_eq!(c.homology().support(), vec![(0, 1), (2, 1), (3, 1), (5, 1)]);
        let cl = classify(&c).unwrap();
        assert_eq!(cl.triple, t);
        assert_eq!((cl.m, cl.n, cl.t), (2, 3, 5));
        let shifted = realize(&Triple { l: 5, ..t.clone() }, Group::C3).unwrap();
        assert_eq!(shifted, c.shift(5));
    }

    #[test]
    fn gf4_labels_roundtrip() {
        let j = GradedIdeal::maximal(Field::F4);
        for label in RepLabel::all(Field::F4, Group::C3) {
            let t = Triple::new(-2, label, j.clone());
            let c = realize(&t, Group::C3).unwrap();
            assert_eq!(classify(&c).unwrap().triple, t, "label {label}");
        }
    }

    #[test]
    fn epsilon_of_beta_recovers_homology() {
        let c = lambda_complex(Field::F2, Group::C3);
        let back = epsilon_tensor(&beta(&c).unwrap()).unwrap();
        assert_eq!(back.homology().support(), c.homology().support());
        assert!(same_quasi_iso_class(&c, &back).unwrap());
    }
}
