//! Exhaustive enumeration of parameter ideals `(f, g)` with `deg f = d1`,
//! `deg g = d2`, by two independent methods.
//!
//! [`enumerate_parameter_ideals`] walks generator pairs: `f` up to scalars
//! and `g` over the canonical complement of `f S_(d2-d1)`, tests regularity
//! by the dimension criterion (the Sylvester map
//! `S_(d2-1) ⊕ S_(d1-1) -> S_(d1+d2-1)` is onto) and deduplicates by
//! canonical form.
//!
//! [`enumerate_by_subspaces`] walks the chain `J_(d1) ⊆ J_(d2)` directly as
//! subspaces and tests regularity by a univariate gcd, so it shares no
//! search or regularity code with the first method.

use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::ideal::GradedIdeal;
use crate::linalg::{Subspace, Vector};
use crate::poly::{dim_s, mul_matrix, mul_x1, mul_x2, Poly};

/// Environment variable overriding the default `d1 + d2` limit.
pub const LIMIT_ENV: &str = "A4PERF_ENUM_LIMIT";

/// Default bound on `d1 + d2`.
pub fn default_limit(field: Field) -> usize {
    if let Some(n) = std::env::var(LIMIT_ENV).ok().and_then(|s| s.parse().ok()) {
        return n;
    }
    match field {
        Field::F2 => 12,
        Field::F4 => 8,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Filters {
    pub invariant: bool,
    pub steenrod: bool,
}

impl Filters {
    pub const NONE: Filters = Filters { invariant: false, steenrod: false };
    pub const BOTH: Filters = Filters { invariant: true, steenrod: true };

    pub fn accepts(&self, j: &GradedIdeal) -> bool {
        (!self.invariant || j.is_invariant()) && (!self.steenrod || j.is_steenrod_closed())
    }
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    pub filters: Filters,
    /// Bound on `d1 + d2`; `None` uses [`default_limit`].
    pub limit: Option<usize>,
    /// Worker threads; `None` or `1` runs on the calling thread.
    pub jobs: Option<usize>,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { filters: Filters::NONE, limit: None, jobs: None }
    }
}

fn check_degrees(field: Field, d1: usize, d2: usize, limit: Option<usize>) -> Result<()> {
    if d1 == 0 || d1 > d2 {
        return Err(Error::LimitExceeded(format!("need 1 <= d1 <= d2, got ({d1}, {d2})")));
    }
    let limit = limit.unwrap_or_else(|| default_limit(field));
    if d1 + d2 > limit {
        return Err(Error::LimitExceeded(format!("d1 + d2 = {} exceeds {limit}", d1 + d2)));
    }
    Ok(())
}

/// Every vector of `F^n` whose first nonzero entry is one (projective
/// points), in a fixed order.
fn normalized_vectors(field: Field, n: usize) -> Vec<Vector> {
    let q = field.order();
    let total = q.pow(n as u32);
    let elems: Vec<Scalar> = field.elements().collect();
    let mut out = Vec::new();
    for code in 1..total {
        let mut c = code;
        let mut v = Vector::zeros(field, n);
        for i in 0..n {
            v.set(i, elems[c % q]);
            c /= q;
        }
        if v.get(v.leading().expect("nonzero")) == Scalar::ONE {
            out.push(v);
        }
    }
    out
}

/// All vectors supported on `positions`, with leading entry one.
fn normalized_on(field: Field, n: usize, positions: &[usize]) -> Vec<Vector> {
    normalized_vectors(field, positions.len())
        .into_iter()
        .map(|w| {
            let mut v = Vector::zeros(field, n);
            for (i, &p) in positions.iter().enumerate() {
                v.set(p, w.get(i));
            }
            v
        })
        .collect()
}

/// `J_d` for `d <= d1 + d2 - 2`; the canonical form of `(f, g)`.
fn pair_key(field: Field, f: &Vector, d1: usize, g: &Vector, d2: usize) -> Vec<Subspace> {
    let mut out: Vec<Subspace> = Vec::new();
    for d in 0..=d1 + d2 - 2 {
        let mut vs = Vec::new();
        if let Some(prev) = out.last() {
            for b in prev.basis() {
                vs.push(mul_x1(b));
                vs.push(mul_x2(b));
            }
        }
        if d == d1 {
            vs.push(f.clone());
        }
        if d == d2 {
            vs.push(g.clone());
        }
        out.push(Subspace::from_spanning(field, dim_s(d), vs));
    }
    out
}

/// Sylvester-map surjectivity: `f S_(d2-1) + g S_(d1-1) = S_(d1+d2-1)`.
fn is_regular_pair(f: &Poly, g: &Poly, d1: usize, d2: usize) -> bool {
    let a = mul_matrix(f, d2 - 1);
    let b = mul_matrix(g, d1 - 1);
    a.hstack(&b).rank() == dim_s(d1 + d2 - 1)
}

fn finish(field: Field, keys: BTreeMap<Vec<Subspace>, (Poly, Poly)>, filters: Filters) -> Vec<GradedIdeal> {
    keys.into_values()
        .map(|(f, g)| GradedIdeal::new(field, vec![f, g]).expect("homogeneous generators"))
        .filter(|j| filters.accepts(j))
        .collect()
}

fn with_pool<T: Send>(jobs: Option<usize>, work: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        Some(n) if n > 1 => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::Io(e.to_string()))?;
            Ok(pool.install(work))
        }
        _ => Ok(work()),
    }
}

/// All parameter ideals with generator degrees `(d1, d2)`, filtered,
/// deduplicated, in a deterministic order (by canonical form).
pub fn enumerate_parameter_ideals(field: Field, d1: usize, d2: usize, opts: &EnumOptions) -> Result<Vec<GradedIdeal>> {
    check_degrees(field, d1, d2, opts.limit)?;
    let fs = normalized_vectors(field, dim_s(d1));
    let search = |f: &Vector| -> Vec<(Vec<Subspace>, (Poly, Poly))> {
        let fp = Poly::from_component(d1, f.clone());
        let u = mul_matrix(&fp, d2 - d1).image();
        let mut is_pivot = vec![false; dim_s(d2)];
        for &p in u.pivots() {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..dim_s(d2)).filter(|&i| !is_pivot[i]).collect();
        let mut found = Vec::new();
        for g in normalized_on(field, dim_s(d2), &free) {
            let gp = Poly::from_component(d2, g.clone());
            if is_regular_pair(&fp, &gp, d1, d2) {
                found.push((pair_key(field, f, d1, &g, d2), (fp.clone(), gp)));
            }
        }
        found
    };
    let parallel = matches!(opts.jobs, Some(n) if n > 1);
    let hits: Vec<_> = with_pool(opts.jobs, || {
        if parallel {
            fs.par_iter().flat_map_iter(search).collect()
        } else {
            fs.iter().flat_map(search).collect()
        }
    })?;
    let mut keys = BTreeMap::new();
    for (k, pair) in hits {
        keys.entry(k).or_insert(pair);
    }
    Ok(finish(field, keys, opts.filters))
}

/// Univariate polynomials over the field, low degree first, no trailing
/// zeros.
type UPoly = Vec<Scalar>;

fn trim(mut p: UPoly) -> UPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

fn urem(a: &UPoly, b: &UPoly) -> UPoly {
    let mut r = a.clone();
    let lead_inv = b.last().expect("nonzero divisor").inv().expect("nonzero lead");
    while r.len() >= b.len() {
        let c = *r.last().expect("nonempty") * lead_inv;
        let shift = r.len() - b.len();
        for (i, &bc) in b.iter().enumerate() {
            r[shift + i] += c * bc;
        }
        r = trim(r);
        if r.is_empty() {
            break;
        }
    }
    r
}

fn ugcd(a: UPoly, b: UPoly) -> UPoly {
    let (mut a, mut b) = (trim(a), trim(b));
    while !b.is_empty() {
        let r = urem(&a, &b);
        a = b;
        b = r;
    }
    a
}

/// Binary forms are coprime iff their dehomogenisations at `x2 = 1` are
/// coprime and `x2` does not divide both.
fn forms_coprime(f: &Vector, g: &Vector) -> bool {
    // index k is x1^(d-k) x2^k, i.e. t^(d-k) at x2 = 1; entry 0 is the x1^d
    // coefficient, which vanishes iff x2 divides the form.
    let dehom = |v: &Vector| -> UPoly { (0..v.len()).rev().map(|k| v.get(k)).collect() };
    let both_divisible_by_x2 = f.get(0).is_zero() && g.get(0).is_zero();
    !both_divisible_by_x2 && ugcd(dehom(f), dehom(g)).len() == 1
}

/// Second enumerator: iterate over subspace chains `J_(d1) ⊂ J_(d2)`.
pub fn enumerate_by_subspaces(field: Field, d1: usize, d2: usize, opts: &EnumOptions) -> Result<Vec<GradedIdeal>> {
    check_degrees(field, d1, d2, opts.limit)?;
    let mut keys: BTreeMap<Vec<Subspace>, (Poly, Poly)> = BTreeMap::new();
    if d1 == d2 {
        let n = dim_s(d1);
        let mut planes = BTreeSet::new();
        for (i, a) in normalized_vectors(field, n).iter().enumerate() {
            for b in normalized_vectors(field, n).iter().skip(i + 1) {
                let w = Subspace::from_spanning(field, n, vec![a.clone(), b.clone()]);
                if w.dim() == 2 {
                    planes.insert(w);
                }
            }
        }
        for w in planes {
            let (f, g) = (&w.basis()[0], &w.basis()[1]);
            if forms_coprime(f, g) {
                let fp = Poly::from_component(d1, f.clone());
                let gp = Poly::from_component(d2, g.clone());
                let j = GradedIdeal::new(field, vec![fp.clone(), gp.clone()])?;
                keys.insert(j.canonical_form(), (fp, gp));
            }
        }
    } else {
        for f in normalized_vectors(field, dim_s(d1)) {
            let fp = Poly::from_component(d1, f.clone());
            let shifts: Vec<Vector> = (0..dim_s(d2 - d1))
                .map(|k| fp.mul(&Poly::monomial(field, Scalar::ONE, d2 - d1 - k, k)).component(d2))
                .collect();
            let u = Subspace::from_spanning(field, dim_s(d2), shifts);
            let mut extensions = BTreeSet::new();
            for v in normalized_vectors(field, dim_s(d2)) {
                if u.contains(&v) {
                    continue;
                }
                let mut span = u.basis().to_vec();
                span.push(v.clone());
                let w = Subspace::from_spanning(field, dim_s(d2), span);
                if extensions.contains(&w) {
                    continue;
                }
                if forms_coprime(&f, &v) {
                    let gp = Poly::from_component(d2, v.clone());
                    let j = GradedIdeal::new(field, vec![fp.clone(), gp.clone()])?;
                    keys.insert(j.canonical_form(), (fp.clone(), gp));
                }
                extensions.insert(w);
            }
        }
    }
    Ok(finish(field, keys, opts.filters))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(filters: Filters) -> EnumOptions {
        EnumOptions { filters, limit: Some(12), jobs: None }
    }

    #[test]
    fn degree_one_gives_the_maximal_ideal() {
        let all = enumerate_parameter_ideals(Field::F2, 1, 1, &opts(Filters::NONE)).unwrap();
        assert_eq!(all, vec![GradedIdeal::maximal(Field::F2)]);
    }

    #[test]
    fn oliver_is_unique_at_three_four() {
        let hits = enumerate_parameter_ideals(Field::F2, 3, 4, &opts(Filters::BOTH)).unwrap();
        assert_eq!(hits, vec![GradedIdeal::oliver(Field::F2)]);
    }

    #[test]
    fn enumerators_agree_small() {
        for field in [Field::F2, Field::F4] {
            for (d1, d2) in [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3)] {
                let a = enumerate_parameter_ideals(field, d1, d2, &opts(Filters::NONE)).unwrap();
                let b = enumerate_by_subspaces(field, d1, d2, &opts(Filters::NONE)).unwrap();
                assert_eq!(a, b, "({d1}, {d2}) over {field}");
                for j in &a {
                    assert_eq!(j.parameter_degrees(), Some((d1, d2)));
                }
            }
        }
    }

    #[test]
    fn regularity_criteria_agree() {
        let f = Field::F2;
        for a in normalized_vectors(f, 3) {
            for b in normalized_vectors(f, 4) {
                let fp = Poly::from_component(2, a.clone());
                let gp = Poly::from_component(3, b.clone());
                assert_eq!(is_regular_pair(&fp, &gp, 2, 3), forms_coprime(&a, &b), "{fp} {gp}");
            }
        }
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = enumerate_parameter_ideals(Field::F2, 2, 4, &opts(Filters::NONE)).unwrap();
        let par = enumerate_parameter_ideals(
            Field::F2,
            2,
            4,
            &EnumOptions { filters: Filters::NONE, limit: Some(12), jobs: Some(3) },
        )
        .unwrap();
        assert_eq!(serial, par);
    }

    #[test]
    fn limit_is_enforced() {
        let o = EnumOptions { filters: Filters::NONE, limit: Some(6), jobs: None };
        assert!(matches!(enumerate_parameter_ideals(Field::F2, 3, 4, &o), Err(Error::LimitExceeded(_))));
        assert!(enumerate_parameter_ideals(Field::F2, 3, 2, &o).is_err());
    }
}
