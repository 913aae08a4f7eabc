//! Random valid perfect complexes.
//!
//! Terms are direct sums of indecomposable projectives (`Λ` with a twisted
//! `q`-action, or the free module `Λ∗Q`). Each differential is a random
//! element of the space of module maps `C^i -> C^(i+1)` that vanish on the
//! image of the previous differential, so every output validates.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::{ModuleRep, PerfectComplex};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Vector};
use crate::skew::Group;

/// Deterministic generator used by the test suites and `selftest`.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// The indecomposable projective summands available for `(field, group)`.
pub fn projectives(field: Field, group: Group) -> Vec<ModuleRep> {
    match group {
        Group::Trivial => vec![ModuleRep::lambda(field).restrict_to_lambda()],
        Group::C3 => {
            let mut out: Vec<ModuleRep> = field.units().map(|c| ModuleRep::lambda_twisted(field, c)).collect();
            out.push(ModuleRep::free(field, group));
            out
        }
    }
}

/// A direct sum of `0..=max_summands` random projectives.
pub fn random_module<R: Rng + ?Sized>(field: Field, group: Group, max_summands: usize, rng: &mut R) -> ModuleRep {
    let choices = projectives(field, group);
    let mut m = ModuleRep::zero(field);
    for _ in 0..rng.gen_range(0..=max_summands) {
        let p = choices.choose(rng).expect("nonempty");
        m = m.direct_sum(p);
    }
    m
}

/// Basis of `{ X : X commutes with the actions, X · kill = 0 }`.
pub fn module_maps(src: &ModuleRep, tgt: &ModuleRep, kill: Option<&Matrix>) -> Vec<Matrix> {
    let field = src.field();
    let (m, n) = (tgt.dim(), src.dim());
    let nvars = m * n;
    if nvars == 0 {
        return Vec::new();
    }
    let var = |r: usize, k: usize| r * n + k;
    let mut eqs = Vec::new();
    for (a, b) in [(&src.act_y1, &tgt.act_y1), (&src.act_y2, &tgt.act_y2), (&src.act_q, &tgt.act_q)] {
        // (X a + b X)[r][c] = 0
        for r in 0..m {
            for c in 0..n {
                let mut e = Vector::zeros(field, nvars);
                for k in 0..n {
                    let s = a.get(k, c);
                    if !s.is_zero() {
                        e.set(var(r, k), e.get(var(r, k)) + s);
                    }
                }
                for j in 0..m {
                    let s = b.get(r, j);
                    if !s.is_zero() {
                        e.set(var(j, c), e.get(var(j, c)) + s);
                    }
                }
                if !e.is_zero() {
                    eqs.push(e);
                }
            }
        }
    }
    if let Some(d) = kill {
        for r in 0..m {
            for c in 0..d.ncols() {
                let mut e = Vector::zeros(field, nvars);
                for k in 0..n {
                    e.set(var(r, k), d.get(k, c));
                }
                if !e.is_zero() {
                    eqs.push(e);
                }
            }
        }
    }
    let sol = Matrix::from_rows(field, nvars, eqs).kernel();
    sol.basis()
        .iter()
        .map(|v| Matrix::from_fn(field, m, n, |r, k| v.get(var(r, k))))
        .collect()
}

/// A random combination of `basis`, the zero `rows x cols` matrix if empty.
fn random_combination<R: Rng + ?Sized>(field: Field, rows: usize, cols: usize, basis: &[Matrix], rng: &mut R) -> Matrix {
    let elems: Vec<Scalar> = field.elements().collect();
    let mut x = Matrix::zero(field, rows, cols);
    for b in basis {
        let c = *elems.choose(rng).expect("nonempty");
        if !c.is_zero() {
            x = x.add(&b.scaled(c));
        }
    }
    x
}

/// A random valid complex with `1..=max_len` terms starting in a degree
/// between -2 and 2.
pub fn random_complex<R: Rng + ?Sized>(field: Field, group: Group, max_len: usize, rng: &mut R) -> PerfectComplex {
    let len = rng.gen_range(1..=max_len.max(1));
    let lo = rng.gen_range(-2..=2);
    let terms: Vec<ModuleRep> = (0..len).map(|_| random_module(field, group, 2, rng)).collect();
    let mut diffs: Vec<Matrix> = Vec::new();
    for i in 0..len.saturating_sub(1) {
        let basis = module_maps(&terms[i], &terms[i + 1], diffs.last());
        diffs.push(random_combination(field, terms[i + 1].dim(), terms[i].dim(), &basis, rng));
    }
    PerfectComplex::new(field, group, lo, terms, diffs).expect("random complexes are valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_complexes_validate() {
        let mut rng = seeded_rng(7);
        for field in [Field::F2, Field::F4] {
            for group in [Group::Trivial, Group::C3] {
                for _ in 0..10 {
                    let c = random_complex(field, group, 4, &mut rng);
                    c.validate().unwrap();
                }
            }
        }
    }

    #[test]
    fn endomorphisms_of_lambda() {
        // End(Λ) as a right Λ-module is Λ (left multiplications); the q-action
        // cuts this down to the Ψ-invariants: 1 and y1y2 over F2.
        let l = ModuleRep::lambda(Field::F2);
        assert_eq!(module_maps(&l, &l, None).len(), 2);
        let r = l.restrict_to_lambda();
        assert_eq!(module_maps(&r, &r, None).len(), 4);
    }

    #[test]
    fn maps_respect_the_kill_constraint() {
        let mut rng = seeded_rng(3);
        let l = ModuleRep::lambda(Field::F4);
        let y12 = l.act_y12();
        for x in module_maps(&l, &l, Some(&y12)) {
            assert!(x.mul(&y12).is_zero());
            assert!(l.is_module_map(&x, &l));
        }
        let m = random_module(Field::F4, Group::C3, 3, &mut rng);
        for x in module_maps(&m, &m, None) {
            assert!(m.is_module_map(&x, &m));
        }
    }
}
