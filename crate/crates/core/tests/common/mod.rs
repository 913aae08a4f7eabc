//! Property checks shared by the property suite and the acceptance target.
//! Each check draws its instance from a seed and returns a description of
//! the first failure.

#![allow(dead_code)]

use a4perf::bgg::beta;
use a4perf::linalg::{Matrix, Vector};
use a4perf::poly::{dim_s, Poly};
use a4perf::random::{module_maps, random_complex, random_module, seeded_rng};
use a4perf::skew::{ExtElem, SkewElem};
use a4perf::{Field, Group, Scalar};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::Rng;

pub type Check = fn(Field, u64) -> Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A random polynomial of degree at most `max_deg`, possibly inhomogeneous.
pub fn random_poly<R: Rng>(field: Field, max_deg: usize, rng: &mut R) -> Poly {
    let mut p = Poly::zero(field);
    for d in 0..=max_deg {
        if rng.gen_bool(0.6) {
            p = p.add(&Poly::from_component(d, Vector::random(field, dim_s(d), rng)));
        }
    }
    p
}

pub fn d_squared_zero(field: Field, seed: u64) -> Result<(), String> {
    let mut rng = seeded_rng(seed);
    let group = if rng.gen_bool(0.8) { Group::C3 } else { Group::Trivial };
    let c = random_complex(field, group, 5, &mut rng);
    for (i, w) in c.diffs.windows(2).enumerate() {
        ensure(w[1].mul(&w[0]).is_zero(), || format!("d² ≠ 0 at position {i}"))?;
    }
    beta(&c).and_then(|m| m.check()).map_err(|e| format!("β(C): {e}"))
}

pub fn module_map_commutation(field: Field, seed: u64) -> Result<(), String> {
    let mut rng = seeded_rng(seed);
    let a = random_module(field, Group::C3, 2, &mut rng);
    let b = random_module(field, Group::C3, 2, &mut rng);
    let basis = module_maps(&a, &b, None);
    let mut x = Matrix::zero(field, b.dim(), a.dim());
    for m in &basis {
        if rng.gen_bool(0.5) {
            x = x.add(m);
        }
    }
    ensure(a.is_module_map(&x, &b), || "random Hom element does not commute".into())?;
    let c = random_complex(field, Group::C3, 4, &mut rng);
    for (i, d) in c.diffs.iter().enumerate() {
        ensure(c.terms[i].is_module_map(d, &c.terms[i + 1]), || format!("d at position {i} is not a module map"))?;
    }
    Ok(())
}

pub fn q_cubed_identity(field: Field, seed: u64) -> Result<(), String> {
    let mut rng = seeded_rng(seed);
    let m = random_module(field, Group::C3, 3, &mut rng);
    ensure(m.act_q.pow(3) == Matrix::identity(field, m.dim()), || "act_q³ ≠ 1".into())?;
    let f = random_poly(field, 6, &mut rng);
    ensure(f.q_act(3) == f && f.q_act(1).q_act(2) == f, || format!("q³ f ≠ f for {f}"))?;
    let q = SkewElem::monomial(field, Group::C3, ExtElem::ONE, 1);
    let q3 = q.mul(&q).and_then(|x| x.mul(&q)).map_err(|e| e.to_string())?;
    ensure(q3 == SkewElem::one(field, Group::C3), || "q³ ≠ 1 in Λ∗C3".into())
}

pub fn cartan_formula(field: Field, seed: u64) -> Result<(), String> {
    let mut rng = seeded_rng(seed);
    let f = random_poly(field, 4, &mut rng);
    let g = random_poly(field, 4, &mut rng);
    let fg = f.mul(&g);
    for k in 0..=8 {
        let mut rhs = Poly::zero(field);
        for i in 0..=k {
            rhs = rhs.add(&f.steenrod_sq(i).mul(&g.steenrod_sq(k - i)));
        }
        ensure(fg.steenrod_sq(k) == rhs, || format!("Cartan fails for Sq^{k}({f} · {g})"))?;
    }
    Ok(())
}

pub fn reynolds_idempotent(field: Field, seed: u64) -> Result<(), String> {
    let mut rng = seeded_rng(seed);
    let f = random_poly(field, 7, &mut rng);
    let r = f.reynolds();
    ensure(r.reynolds() == r, || format!("R(R f) ≠ R f for {f}"))?;
    ensure(r.is_q_invariant(), || format!("R f not invariant for {f}"))
}

pub fn rank_nullity(field: Field, seed: u64) -> Result<(), String> {
    let mut rng = seeded_rng(seed);
    let (r, c) = (rng.gen_range(0..40), rng.gen_range(0..40));
    let mut a = Matrix::random(field, r, c, &mut rng);
    if rng.gen_bool(0.5) && r > 1 {
        // force dependent rows
        let s = if field == Field::F4 { Scalar::W } else { Scalar::ONE };
        let row = a.row(0).scaled(s);
        a = Matrix::from_rows(field, c, (0..r).map(|i| if i == r - 1 { row.clone() } else { a.row(i).clone() }).collect());
    }
    let k = a.kernel();
    ensure(a.rank() + k.dim() == c, || format!("rank {} + nullity {} ≠ {c}", a.rank(), k.dim()))?;
    for v in k.basis() {
        ensure(a.mul_vec(v).is_zero(), || "kernel vector not annihilated".into())?;
    }
    ensure(a.rref().rref() == a.rref(), || "RREF not idempotent".into())
}

pub const SUITES: [(&str, Check); 6] = [
    ("d² = 0", d_squared_zero),
    ("module-map commutation", module_map_commutation),
    ("q³ = id", q_cubed_identity),
    ("Cartan formula", cartan_formula),
    ("Reynolds idempotence", reynolds_idempotent),
    ("rank-nullity", rank_nullity),
];

pub fn field_strategy() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::F2), Just(Field::F4)]
}

/// Run `check` on `cases` random instances; `Err` carries the failing case.
pub fn run_check(check: Check, cases: u32) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() });
    runner
        .run(&(field_strategy(), any::<u64>()), |(field, seed)| {
            check(field, seed).map_err(|e| TestCaseError::fail(format!("{field} seed {seed}: {e}")))
        })
        .map_err(|e| e.to_string())
}
