//! Command-line front end. [`run`] parses arguments, dispatches, prints to
//! the given writers and returns the process exit code: 0 on success, 1 on
//! a domain error, 2 on an invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::bgg::{classify, realize, Classification, RepLabel, Triple};
use crate::complex::{PerfectComplex, QRep};
use crate::enumerate::{enumerate_by_subspaces, enumerate_parameter_ideals, EnumOptions, Filters};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideal::GradedIdeal;
use crate::io::{self, ComplexFile, Input, TripleFile};
use crate::kzero::{self, K0Elem};
use crate::random::{random_complex, seeded_rng};
use crate::skew::Group;
use crate::specseq::{collapse_report, page, COLUMNS};

#[derive(Parser, Debug)]
#[command(name = "a4perf", version, about = "Perfect complexes over F[A4]: classify, realize, enumerate, obstruct")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Output {
    /// Print machine-readable JSON instead of tables.
    #[arg(long)]
    pub json: bool,
    /// Also write the primary JSON artifact to this file.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Compute the classifying triple (l, L, J) of a complex file.
    Classify {
        input: PathBuf,
        #[command(flatten)]
        output: Output,
    },
    /// Build a complex from a triple file.
    Realize {
        input: PathBuf,
        /// Re-classify the result and compare with the input triple.
        #[arg(long)]
        check: bool,
        #[command(flatten)]
        output: Output,
    },
    /// List parameter ideals with generator degrees (d1, d2).
    Enumerate {
        d1: usize,
        d2: usize,
        #[arg(long, default_value = "F2")]
        field: Field,
        /// Keep only C3-invariant ideals.
        #[arg(long)]
        invariant: bool,
        /// Keep only Steenrod-closed ideals.
        #[arg(long)]
        steenrod: bool,
        #[arg(long)]
        count_only: bool,
        /// Worker threads.
        #[arg(long)]
        jobs: Option<usize>,
        /// Bound on d1 + d2 (default from A4PERF_ENUM_LIMIT, else 12 over F2, 8 over F4).
        #[arg(long)]
        limit: Option<usize>,
        /// Cross-check the count with the subspace-chain enumerator.
        #[arg(long)]
        verify: bool,
        #[arg(long)]
        json: bool,
    },
    /// Finiteness obstruction report for a complex or triple file.
    Obstruct {
        input: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Pages of the coradical-filtration spectral sequence.
    Spectral {
        input: PathBuf,
        /// Page index, or `inf`.
        #[arg(long, default_value = "inf")]
        page: String,
    },
    /// Steenrod-closed invariant parameter ideals in degrees (m+1, n+1).
    Rigidity {
        m: usize,
        n: usize,
        #[arg(long)]
        limit: Option<usize>,
        #[command(flatten)]
        output: Output,
    },
    /// Run a quick battery of consistency checks.
    Selftest {
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Parse `args` (including the program name) and run. Output goes to
/// `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = if code == 0 { write!(out, "{}", e.render()) } else { write!(err, "{}", e.render()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    if e.is_invariant_violation() {
        2
    } else {
        1
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn write_artifact(path: &Option<PathBuf>, text: &str) -> Result<()> {
    if let Some(p) = path {
        std::fs::write(p, text).map_err(|e| Error::Io(format!("{}: {e}", p.display())))?;
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io(e.to_string())
}

fn read_complex(path: &Path) -> Result<PerfectComplex> {
    match io::read_input(&read(path)?)? {
        Input::Complex(c) => Ok(c),
        Input::Triple(..) => Err(Error::Parse(format!("{}: expected a complex file", path.display()))),
    }
}

/// A complex file as is, or a triple file realized.
fn read_complex_or_triple(path: &Path) -> Result<PerfectComplex> {
    match io::read_input(&read(path)?)? {
        Input::Complex(c) => Ok(c),
        Input::Triple(t, g) => realize(&t, g),
    }
}

fn rep_name(field: Field, rep: &QRep) -> Result<String> {
    Ok(K0Elem::from_qrep(field, rep)?.to_string())
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<()> {
    match cmd {
        Command::Classify { input, output } => cmd_classify(&input, &output, out),
        Command::Realize { input, check, output } => cmd_realize(&input, check, &output, out),
        Command::Enumerate { d1, d2, field, invariant, steenrod, count_only, jobs, limit, verify, json } => {
            let opts = EnumOptions { filters: Filters { invariant, steenrod }, limit, jobs };
            cmd_enumerate(field, d1, d2, &opts, count_only, verify, json, out)
        }
        Command::Obstruct { input, json } => cmd_obstruct(&input, json, out),
        Command::Spectral { input, page } => cmd_spectral(&input, &page, out),
        Command::Rigidity { m, n, limit, output } => cmd_rigidity(m, n, limit, &output, out),
        Command::Selftest { seed } => cmd_selftest(seed, out),
    }
}

fn classification_json(c: &PerfectComplex, cl: &Classification) -> serde_json::Value {
    json!({
        "triple": TripleFile::from_triple(&cl.triple, c.group),
        "m": cl.m,
        "n": cl.n,
        "t": cl.t,
        "t_equals_m_plus_n": cl.t == (cl.m + cl.n) as i64,
        "homology": cl.homology_dims,
        "gr_degrees": cl.gr_degrees,
    })
}

fn cmd_classify(input: &Path, output: &Output, out: &mut dyn Write) -> Result<()> {
    let c = read_complex(input)?;
    let cl = classify(&c)?;
    let triple_json = io::triple_to_json(&cl.triple, c.group)?;
    write_artifact(&output.out, &triple_json)?;
    if output.json {
        writeln!(out, "{}", io::to_json_string(&classification_json(&c, &cl))?.trim_end()).map_err(io_err)?;
        return Ok(());
    }
    writeln!(out, "triple    {}", cl.triple).map_err(io_err)?;
    writeln!(out, "(m, n, t) ({}, {}, {})", cl.m, cl.n, cl.t).map_err(io_err)?;
    let ok = if cl.t == (cl.m + cl.n) as i64 { "yes" } else { "no" };
    writeln!(out, "t = m + n {ok}").map_err(io_err)?;
    writeln!(out, "{:>8} {:>4} {:>10}", "degree", "dim", "class").map_err(io_err)?;
    for (d, dim) in &cl.homology_dims {
        let rep = c.homology_at(*d).rep;
        writeln!(out, "{:>8} {:>4} {:>10}", d, dim, rep_name(c.field, &rep)?).map_err(io_err)?;
    }
    let g = cl.gr_degrees;
    writeln!(out, "gr H: L in {}, L⊗(J/(x1,x2)J) in {} and {}, top in {}", g[0], g[1], g[2], g[3])
        .map_err(io_err)?;
    write!(out, "{triple_json}").map_err(io_err)?;
    Ok(())
}

fn complex_summary(c: &PerfectComplex, out: &mut dyn Write) -> Result<()> {
    writeln!(out, "field {}, group {}, degrees {}..={}", c.field, c.group, c.lo, c.hi()).map_err(io_err)?;
    writeln!(out, "{:>8} {:>6} {:>6}", "degree", "dim C", "dim H").map_err(io_err)?;
    for d in c.lo..=c.hi() {
        writeln!(out, "{:>8} {:>6} {:>6}", d, c.dim_at(d), c.homology_at(d).quotient.dim()).map_err(io_err)?;
    }
    Ok(())
}

fn cmd_realize(input: &Path, check: bool, output: &Output, out: &mut dyn Write) -> Result<()> {
    let (t, group) = match io::read_input(&read(input)?)? {
        Input::Triple(t, g) => (t, g),
        Input::Complex(_) => return Err(Error::Parse(format!("{}: expected a triple file", input.display()))),
    };
    let c = realize(&t, group)?;
    let text = io::complex_to_json(&c)?;
    write_artifact(&output.out, &text)?;
    let verdict = if check {
        let back = classify(&c)?.triple;
        if back != t {
            return Err(Error::InvariantViolation(format!("realize then classify gave {back}, expected {t}")));
        }
        Some(back)
    } else {
        None
    };
    if output.json {
        write!(out, "{text}").map_err(io_err)?;
        return Ok(());
    }
    complex_summary(&c, out)?;
    if let Some(back) = verdict {
        writeln!(out, "check: classify(realize) = {back}: ok").map_err(io_err)?;
    }
    Ok(())
}

#[allow(clippy::too_many_arguments)]
fn cmd_enumerate(
    field: Field,
    d1: usize,
    d2: usize,
    opts: &EnumOptions,
    count_only: bool,
    verify: bool,
    json: bool,
    out: &mut dyn Write,
) -> Result<()> {
    let ideals = enumerate_parameter_ideals(field, d1, d2, opts)?;
    if verify {
        let other = enumerate_by_subspaces(field, d1, d2, opts)?;
        if other != ideals {
            return Err(Error::InvariantViolation(format!(
                "enumerators disagree: {} vs {} ideals",
                ideals.len(),
                other.len()
            )));
        }
    }
    if json {
        let lists: Vec<Vec<String>> = if count_only {
            Vec::new()
        } else {
            ideals.iter().map(|j| j.minimal_generators().iter().map(ToString::to_string).collect()).collect()
        };
        let v = json!({"field": field, "d1": d1, "d2": d2, "count": ideals.len(), "ideals": lists});
        write!(out, "{}", io::to_json_string(&v)?).map_err(io_err)?;
        return Ok(());
    }
    if !count_only {
        for j in &ideals {
            writeln!(out, "{j}").map_err(io_err)?;
        }
    }
    writeln!(out, "count {}", ideals.len()).map_err(io_err)?;
    Ok(())
}

fn cmd_obstruct(input: &Path, json: bool, out: &mut dyn Write) -> Result<()> {
    let c = read_complex_or_triple(input)?;
    let report = kzero::obstruction_report(&c)?;
    if json {
        write!(out, "{}", io::to_json_string(&report)?).map_err(io_err)?;
        return Ok(());
    }
    let yn = |b: bool| if b { "yes" } else { "no" };
    writeln!(out, "chi(H)         {}", report.chi).map_err(io_err)?;
    writeln!(out, "pr chi(C)      {}", report.pr_chi).map_err(io_err)?;
    writeln!(out, "[gr F[P]]      {}", report.gr_class).map_err(io_err)?;
    writeln!(out, "vanishes       {}", yn(report.vanishes)).map_err(io_err)?;
    writeln!(out, "criterion iii  {}", yn(report.criterion_iii)).map_err(io_err)?;
    writeln!(out, "criterion iv   {}", yn(report.criterion_iv)).map_err(io_err)?;
    if let Some(b) = report.f2_corollary {
        writeln!(out, "F2 corollary   {}", yn(b)).map_err(io_err)?;
    }
    writeln!(out, "consistent     yes").map_err(io_err)?;
    Ok(())
}

fn cmd_spectral(input: &Path, which: &str, out: &mut dyn Write) -> Result<()> {
    let c = read_complex_or_triple(input)?;
    let r = match which {
        "inf" | "∞" => COLUMNS,
        s => s.parse().map_err(|_| Error::Parse(format!("bad page {s:?}")))?,
    };
    let p = page(&c, r)?;
    write!(out, "{}", p.render()).map_err(io_err)?;
    if c.total_homology_dim() == 4 {
        let rep = collapse_report(&c)?;
        let yn = |b: bool| if b { "yes" } else { "no" };
        writeln!(out, "collapses at E₂: {}", yn(rep.collapses_at_e2)).map_err(io_err)?;
        let s: Vec<String> = rep.survivors.iter().map(|(k, t)| format!("({k},{t})")).collect();
        writeln!(out, "survivors (l = {}): {}", rep.l, s.join(" ")).map_err(io_err)?;
        writeln!(out, "E∞ columns: {:?}", rep.columns).map_err(io_err)?;
        if !rep.is_consistent() {
            return Err(Error::InvariantViolation(format!("collapse diagnostics failed: {rep:?}")));
        }
    }
    Ok(())
}

fn cmd_rigidity(m: usize, n: usize, limit: Option<usize>, output: &Output, out: &mut dyn Write) -> Result<()> {
    let (d1, d2) = (m.min(n) + 1, m.max(n) + 1);
    let opts = EnumOptions { filters: Filters::BOTH, limit, jobs: None };
    let ideals = enumerate_parameter_ideals(Field::F2, d1, d2, &opts)?;
    if ideals.len() > 1 {
        return Err(Error::InvariantViolation(format!(
            "{} Steenrod-closed invariant ideals in degrees ({d1}, {d2})",
            ideals.len()
        )));
    }
    let found = ideals.first().map(|j| -> Result<_> {
        let c = realize(&Triple::new(0, RepLabel::Triv, j.clone()), Group::C3)?;
        Ok((j.clone(), kzero::finite_free_criterion(j)?, c))
    });
    let found = found.transpose()?;
    if let Some((_, _, c)) = &found {
        write_artifact(&output.out, &io::complex_to_json(c)?)?;
    }
    if output.json {
        let v = match &found {
            None => json!({"d1": d1, "d2": d2, "count": 0}),
            Some((j, ff, c)) => json!({
                "d1": d1,
                "d2": d2,
                "count": 1,
                "ideal": io::IdealFile::from_ideal(j),
                "finite_free": ff,
                "complex": ComplexFile::from_complex(c),
            }),
        };
        write!(out, "{}", io::to_json_string(&v)?).map_err(io_err)?;
        return Ok(());
    }
    writeln!(out, "degrees ({d1}, {d2}): {} ideal(s)", ideals.len()).map_err(io_err)?;
    if let Some((j, ff, c)) = &found {
        writeln!(out, "ideal {j}").map_err(io_err)?;
        writeln!(out, "finite free {}", if *ff { "yes" } else { "no" }).map_err(io_err)?;
        complex_summary(c, out)?;
    }
    Ok(())
}

/// One selftest check: name and outcome.
type Check = (&'static str, Result<bool>);

fn selftest_checks(seed: u64) -> Vec<Check> {
    let mut checks: Vec<Check> = Vec::new();
    checks.push(("gr F[P] class matches the Ψ-action oracle", (|| {
        Ok(kzero::gr_fp_class_oracle(Field::F2)? == kzero::gr_fp_class(Field::F2)
            && kzero::gr_fp_class_oracle(Field::F4)? == kzero::gr_fp_class(Field::F4))
    })()));
    checks.push(("Oliver ideal is the unique filtered ideal at (3, 4)", (|| {
        let opts = EnumOptions { filters: Filters::BOTH, ..EnumOptions::default() };
        let found = enumerate_parameter_ideals(Field::F2, 3, 4, &opts)?;
        Ok(found == vec![GradedIdeal::oliver(Field::F2)])
    })()));
    checks.push(("classify(realize(T)) = T for (x1, x2) and the Oliver ideal", (|| {
        for j in [GradedIdeal::maximal(Field::F2), GradedIdeal::oliver(Field::F2)] {
            let t = Triple::new(0, RepLabel::Triv, j);
            if classify(&realize(&t, Group::C3)?)?.triple != t {
                return Ok(false);
            }
        }
        Ok(true)
    })()));
    checks.push(("pr χ(C)·[gr F[P]] = χ(H*(C)) on random complexes", (|| {
        let mut rng = seeded_rng(seed);
        for field in [Field::F2, Field::F4] {
            for _ in 0..10 {
                let c = random_complex(field, Group::C3, 4, &mut rng);
                let lhs = kzero::pr_euler(&c)?.mul(&kzero::gr_fp_class(field))?;
                if lhs != kzero::euler_char(field, &c.homology())? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    })()));
    checks.push(("complex files round-trip", (|| {
        let mut rng = seeded_rng(seed.wrapping_add(1));
        for field in [Field::F2, Field::F4] {
            let c = random_complex(field, Group::C3, 4, &mut rng);
            if io::complex_from_json(&io::complex_to_json(&c)?)? != c {
                return Ok(false);
            }
        }
        Ok(true)
    })()));
    checks
}

fn cmd_selftest(seed: u64, out: &mut dyn Write) -> Result<()> {
    let mut failed = 0;
    for (name, outcome) in selftest_checks(seed) {
        let status = match outcome {
            Ok(true) => "ok".to_string(),
            Ok(false) => {
                failed += 1;
                "FAIL".to_string()
            }
            Err(e) => {
                failed += 1;
                format!("FAIL ({e})")
            }
        };
        writeln!(out, "{status:<6} {name}").map_err(io_err)?;
    }
    if failed > 0 {
        return Err(Error::InvariantViolation(format!("{failed} selftest check(s) failed")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("a4perf").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn enumerate_small() {
        let (code, out, _) = run_args(&["enumerate", "1", "1"]);
        assert_eq!(code, 0);
        assert!(out.ends_with("count 1\n"));
    }

    #[test]
    fn bad_arguments_are_domain_errors() {
        let (code, _, err) = run_args(&["enumerate", "x", "1"]);
        assert_eq!(code, 1);
        assert!(!err.is_empty());
        let (code, _, err) = run_args(&["enumerate", "30", "40"]);
        assert_eq!(code, 1);
        assert!(err.contains("limit"));
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_args(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("classify"));
    }

    #[test]
    fn selftest_passes() {
        let (code, out, err) = run_args(&["selftest"]);
        assert_eq!(code, 0, "{out}{err}");
        assert!(!out.contains("FAIL"));
    }
}
