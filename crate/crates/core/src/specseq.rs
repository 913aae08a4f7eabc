//! The spectral sequence of the coradical filtration
//! `F^k C = { x : x λ = 0 for all λ ∈ I^(k+1) }`.
//!
//! With `Λ` of Loewy length three there are three columns `k = 0, 1, 2`.
//! Pages are built directly from
//! `Z_r^(k,t) = { x ∈ F^k C^t : dx ∈ F^(k-r) C^(t+1) }` and
//! `E_r^(k,t) = Z_r^(k,t) / (Z_(r-1)^(k-1,t) + d Z_(r-1)^(k+r-1,t-1))`;
//! `d_r` has bidegree `(-r, +1)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::complex::{PerfectComplex, QRep};
use crate::error::{Error, Result};
use crate::kzero::K0Elem;
use crate::linalg::{Matrix, Quotient, Subspace};

pub const COLUMNS: usize = 3;

/// `F^0 ⊆ F^1 ⊆ F^2 = C^t` for each degree `t`.
#[derive(Clone, Debug)]
pub struct Filtration {
    pub lo: i64,
    pub levels: Vec<[Subspace; COLUMNS]>,
}

pub fn filtration(c: &PerfectComplex) -> Filtration {
    let levels = c
        .terms
        .iter()
        .map(|m| {
            let socle = m.act_y1.kernel().intersection(&m.act_y2.kernel()).intersection(&m.act_y12().kernel());
            [socle, m.act_y12().kernel(), Subspace::full(c.field, m.dim())]
        })
        .collect();
    Filtration { lo: c.lo, levels }
}

impl Filtration {
    /// `F^k C^t`, with `F^k = 0` for `k < 0` and `F^k = C^t` for `k >= 2`.
    pub fn level(&self, c: &PerfectComplex, k: i64, t: i64) -> Subspace {
        let n = c.dim_at(t);
        if k < 0 || n == 0 {
            return Subspace::zero(c.field, n);
        }
        let i = (t - self.lo) as usize;
        self.levels[i][(k as usize).min(COLUMNS - 1)].clone()
    }
}

/// One entry `E_r^(k,t)` with its `q`-action.
#[derive(Clone, Debug)]
pub struct PageEntry {
    pub quotient: Quotient,
    pub q: Matrix,
}

impl PageEntry {
    pub fn dim(&self) -> usize {
        self.quotient.dim()
    }
}

#[derive(Clone, Debug)]
pub struct Page {
    pub r: usize,
    pub lo: i64,
    pub hi: i64,
    /// Keyed by `(k, t)`; every `k < 3`, `lo <= t <= hi` is present.
    pub entries: BTreeMap<(usize, i64), PageEntry>,
    /// `d_r` out of `(k, t)`, present only when source and target are both
    /// nonzero.
    pub diffs: BTreeMap<(usize, i64), Matrix>,
}

fn z(c: &PerfectComplex, f: &Filtration, r: i64, k: i64, t: i64) -> Subspace {
    let own = f.level(c, k, t);
    if own.is_zero() {
        return own;
    }
    let allowed = f.level(c, k - r, t + 1);
    own.intersection(&allowed.preimage(&c.diff(t)))
}

fn boundary_part(c: &PerfectComplex, f: &Filtration, r: i64, k: i64, t: i64) -> Subspace {
    let lower = z(c, f, r - 1, k - 1, t);
    let src = z(c, f, r - 1, k + r - 1, t - 1);
    if src.ambient() == 0 {
        return lower;
    }
    lower.sum(&src.map(&c.diff(t - 1)))
}

pub fn page(c: &PerfectComplex, r: usize) -> Result<Page> {
    c.validate()?;
    let f = filtration(c);
    let ri = r as i64;
    let mut entries = BTreeMap::new();
    for t in c.lo..=c.hi() {
        let act_q = c.term(t).map(|m| m.act_q.clone());
        for k in 0..COLUMNS {
            let ki = k as i64;
            let quotient = Quotient::new(&z(c, &f, ri, ki, t), &boundary_part(c, &f, ri, ki, t))?;
            let q = match &act_q {
                Some(a) => quotient.induced_map(a, &quotient)?,
                None => Matrix::zero(c.field, 0, 0),
            };
            entries.insert((k, t), PageEntry { quotient, q });
        }
    }
    let mut diffs = BTreeMap::new();
    for (&(k, t), e) in &entries {
        if k < r || e.dim() == 0 {
            continue;
        }
        let Some(target) = entries.get(&(k - r, t + 1)) else { continue };
        if target.dim() == 0 {
            continue;
        }
        let d = e.quotient.induced_map(&c.diff(t), &target.quotient)?;
        diffs.insert((k, t), d);
    }
    Ok(Page { r, lo: c.lo, hi: c.hi(), entries, diffs })
}

impl Page {
    pub fn dim(&self, k: usize, t: i64) -> usize {
        self.entries.get(&(k, t)).map_or(0, PageEntry::dim)
    }

    /// `(k, t, dim)` for every nonzero entry.
    pub fn support(&self) -> Vec<(usize, i64, usize)> {
        self.entries.iter().filter(|(_, e)| e.dim() > 0).map(|(&(k, t), e)| (k, t, e.dim())).collect()
    }

    pub fn column_dims(&self) -> [usize; COLUMNS] {
        let mut out = [0; COLUMNS];
        for (&(k, _), e) in &self.entries {
            out[k] += e.dim();
        }
        out
    }

    /// Every `d_r` vanishes.
    pub fn is_degenerate(&self) -> bool {
        self.diffs.values().all(Matrix::is_zero)
    }

    /// Dimensions of `H(E_r, d_r)`, keyed like `entries`.
    pub fn homology_dims(&self) -> BTreeMap<(usize, i64), usize> {
        let mut out = BTreeMap::new();
        for (&(k, t), e) in &self.entries {
            let outgoing = self.diffs.get(&(k, t)).map_or(0, Matrix::rank);
            let incoming = self.diffs.get(&(k + self.r, t - 1)).map_or(0, Matrix::rank);
            out.insert((k, t), e.dim() - outgoing - incoming);
        }
        out
    }

    /// Every `d_r` commutes with `q` and `d_r ∘ d_r = 0`.
    pub fn check(&self) -> Result<()> {
        for (&(k, t), d) in &self.diffs {
            let src = &self.entries[&(k, t)];
            let tgt = &self.entries[&(k - self.r, t + 1)];
            if d.mul(&src.q) != tgt.q.mul(d) {
                return Err(Error::InvariantViolation(format!("d_{} at ({k},{t}) is not q-equivariant", self.r)));
            }
            if let Some(next) = self.diffs.get(&(k - self.r, t + 1)) {
                if !next.mul(d).is_zero() {
                    return Err(Error::InvariantViolation(format!("d_{}² ≠ 0 at ({k},{t})", self.r)));
                }
            }
        }
        Ok(())
    }

    /// Grid of dimensions, one row per `t`, then the nonzero differentials.
    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "E_{}", self.r);
        if self.entries.is_empty() {
            let _ = writeln!(s, "(empty)");
            return s;
        }
        let _ = writeln!(s, "{:>6} {:>4} {:>4} {:>4}", "t\\k", 0, 1, 2);
        for t in self.lo..=self.hi {
            let _ = writeln!(s, "{:>6} {:>4} {:>4} {:>4}", t, self.dim(0, t), self.dim(1, t), self.dim(2, t));
        }
        for (&(k, t), d) in &self.diffs {
            let rank = d.rank();
            if rank > 0 {
                let _ = writeln!(s, "d_{}: ({k},{t}) -> ({},{}) rank {rank}", self.r, k - self.r, t + 1);
            }
        }
        s
    }
}

/// Diagnostics for a complex with four-dimensional homology.
#[derive(Clone, Debug, serde::Serialize)]
pub struct CollapseReport {
    /// Lowest homology degree.
    pub l: i64,
    /// `E_2 = E_3 = E_∞`.
    pub collapses_at_e2: bool,
    /// `E_∞` column dimensions.
    pub columns: [usize; COLUMNS],
    /// Nonzero `E_∞` bidegrees `(k, t - l)`, with multiplicity, sorted.
    pub survivors: Vec<(usize, i64)>,
    pub m: i64,
    pub n: i64,
    /// Survivors are exactly `(0,0), (1,m), (1,n), (2,m+n)`.
    pub pattern_ok: bool,
    /// `E_∞` sums to `H*(C)` degreewise as `Q`-representations.
    pub homology_matches: bool,
}

impl CollapseReport {
    pub fn is_consistent(&self) -> bool {
        self.collapses_at_e2 && self.columns == [1, 2, 1] && self.pattern_ok && self.homology_matches
    }
}

/// `E_∞` page (equal to `E_r` for every `r >= 3`).
pub fn infinity_page(c: &PerfectComplex) -> Result<Page> {
    page(c, COLUMNS)
}

/// Does `E_∞` add up to `H*(C)` degreewise in `K_0(F[Q])`?
pub fn matches_homology(c: &PerfectComplex, e_inf: &Page) -> Result<bool> {
    for t in c.lo..=c.hi() {
        let h = c.homology_at(t).rep;
        let mut acc = K0Elem::zero(c.field);
        for k in 0..COLUMNS {
            let e = &e_inf.entries[&(k, t)];
            acc = acc.add(&K0Elem::from_qrep(c.field, &QRep::new(e.q.clone()))?)?;
        }
        if acc != K0Elem::from_qrep(c.field, &h)? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn collapse_report(c: &PerfectComplex) -> Result<CollapseReport> {
    c.validate()?;
    let total = c.total_homology_dim();
    if total != 4 {
        return Err(Error::NotFourDimensional(total));
    }
    let l = c.homology().lowest_degree().expect("nonzero homology");
    let e2 = page(c, 2)?;
    let e3 = page(c, 3)?;
    let collapses = e2.is_degenerate() && e2.support() == e3.support();
    let mut survivors = Vec::new();
    for (k, t, dim) in e3.support() {
        survivors.extend(std::iter::repeat_n((k, t - l), dim));
    }
    survivors.sort();
    let middle: Vec<i64> = survivors.iter().filter(|s| s.0 == 1).map(|s| s.1).collect();
    let (m, n) = match middle[..] {
        [a, b] => (a, b),
        _ => (-1, -1),
    };
    let pattern_ok = survivors == vec![(0, 0), (1, m), (1, n), (2, m + n)] && m >= 0;
    Ok(CollapseReport {
        l,
        collapses_at_e2: collapses,
        columns: e3.column_dims(),
        survivors,
        m,
        n,
        pattern_ok,
        homology_matches: matches_homology(c, &e3)?,
    })
}
