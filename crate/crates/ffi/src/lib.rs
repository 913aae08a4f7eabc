//! C ABI over `a4perf`.
//!
//! Complexes and triples cross the boundary as opaque handles created from
//! and serialized to the JSON file formats. Every function returns an
//! `int` status (`A4_OK` on success); on failure [`a4_last_error`] holds a
//! message for the calling thread. Strings returned through `char **`
//! belong to the caller and are released with [`a4_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use a4perf::bgg::{classify, realize, Triple};
use a4perf::complex::PerfectComplex;
use a4perf::enumerate::{enumerate_parameter_ideals, EnumOptions, Filters};
use a4perf::io::{complex_from_json, complex_to_json, to_json_string, triple_from_json, triple_to_json};
use a4perf::kzero::obstruction_report;
use a4perf::{Error, Field, Group};

pub const A4_OK: c_int = 0;
/// A required pointer argument was null.
pub const A4_ERR_NULL: c_int = 1;
/// Input text was not UTF-8 or did not parse.
pub const A4_ERR_PARSE: c_int = 2;
/// The input is well-formed but mathematically invalid or out of range.
pub const A4_ERR_DOMAIN: c_int = 3;
/// An internal consistency check failed.
pub const A4_ERR_INVARIANT: c_int = 4;
/// A panic was caught at the boundary.
pub const A4_ERR_PANIC: c_int = 5;

pub const A4_FIELD_F2: c_int = 2;
pub const A4_FIELD_F4: c_int = 4;

/// A validated perfect complex.
pub struct A4Complex {
    inner: PerfectComplex,
}

/// A classifying triple together with its group.
pub struct A4Triple {
    inner: Triple,
    group: Group,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status(e: &Error) -> c_int {
    match e {
        Error::Parse(_) => A4_ERR_PARSE,
        Error::InvariantViolation(_) => A4_ERR_INVARIANT,
        _ => A4_ERR_DOMAIN,
    }
}

/// Run `f`, translating errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (c_int, String)>) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            A4_OK
        }
        Ok(Err((code, msg))) => {
            set_error(&msg);
            code
        }
        Err(_) => {
            set_error("panic inside a4perf");
            A4_ERR_PANIC
        }
    }
}

fn lift<T>(r: a4perf::Result<T>) -> Result<T, (c_int, String)> {
    r.map_err(|e| (status(&e), e.to_string()))
}

fn null(what: &str) -> (c_int, String) {
    (A4_ERR_NULL, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, (c_int, String)> {
    if p.is_null() {
        return Err(null("input string"));
    }
    CStr::from_ptr(p).to_str().map_err(|e| (A4_ERR_PARSE, e.to_string()))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (c_int, String)> {
    let c = CString::new(s).map_err(|e| (A4_ERR_INVARIANT, e.to_string()))?;
    *out = c.into_raw();
    Ok(())
}

/// Message for the last failed call on this thread; empty after success.
/// Valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn a4_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn a4_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parse and validate a complex file.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a4_complex_from_json(json: *const c_char, out: *mut *mut A4Complex) -> c_int {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let c = lift(complex_from_json(read_str(json)?))?;
        *out = Box::into_raw(Box::new(A4Complex { inner: c }));
        Ok(())
    })
}

/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a4_complex_to_json(c: *const A4Complex, out: *mut *mut c_char) -> c_int {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("complex"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, lift(complex_to_json(&c.inner))?)
    })
}

/// Total dimension of the homology.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a4_complex_homology_dim(c: *const A4Complex, out: *mut usize) -> c_int {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("complex"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = c.inner.total_homology_dim();
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn a4_complex_free(c: *mut A4Complex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Parse a triple file and check it is admissible.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a4_triple_from_json(json: *const c_char, out: *mut *mut A4Triple) -> c_int {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let (t, g) = lift(triple_from_json(read_str(json)?))?;
        *out = Box::into_raw(Box::new(A4Triple { inner: t, group: g }));
        Ok(())
    })
}

/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a4_triple_to_json(t: *const A4Triple, out: *mut *mut c_char) -> c_int {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("triple"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        write_string(out, lift(triple_to_json(&t.inner, t.group))?)
    })
}

/// # Safety
/// `t` must be null or a handle from this library, not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn a4_triple_free(t: *mut A4Triple) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// The classifying triple of a complex with four-dimensional homology.
///
/// # Safety
/// `c` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a4_classify(c: *const A4Complex, out: *mut *mut A4Triple) -> c_int {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("complex"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let cl = lift(classify(&c.inner))?;
        *out = Box::into_raw(Box::new(A4Triple { inner: cl.triple, group: c.inner.group }));
        Ok(())
    })
}

/// A complex realizing the triple.
///
/// # Safety
/// `t` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a4_realize(t: *const A4Triple, out: *mut *mut A4Complex) -> c_int {
    guard(|| {
        let t = t.as_ref().ok_or_else(|| null("triple"))?;
        if out.is_null() {
            return Err(null("out"));
        }
        let c = lift(realize(&t.inner, t.group))?;
        *out = Box::into_raw(Box::new(A4Complex { inner: c }));
        Ok(())
    })
}

/// The finiteness-obstruction report as JSON; `*vanishes` is set to 1 if
/// the obstruction vanishes and 0 otherwise. Either output may be null.
///
/// # Safety
/// `c` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn a4_obstruction(c: *const A4Complex, vanishes: *mut c_int, report: *mut *mut c_char) -> c_int {
    guard(|| {
        let c = c.as_ref().ok_or_else(|| null("complex"))?;
        let r = lift(obstruction_report(&c.inner))?;
        if let Some(v) = vanishes.as_mut() {
            *v = c_int::from(r.vanishes);
        }
        if !report.is_null() {
            write_string(report, lift(to_json_string(&r))?)?;
        }
        Ok(())
    })
}

/// Number of parameter ideals with generator degrees `(d1, d2)` over
/// `field` (`A4_FIELD_F2` or `A4_FIELD_F4`), optionally filtered.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn a4_enumerate_count(
    field: c_int,
    d1: usize,
    d2: usize,
    invariant: bool,
    steenrod: bool,
    out: *mut usize,
) -> c_int {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let field = match field {
            A4_FIELD_F2 => Field::F2,
            A4_FIELD_F4 => Field::F4,
            other => return Err((A4_ERR_DOMAIN, format!("unknown field code {other}"))),
        };
        let opts = EnumOptions { filters: Filters { invariant, steenrod }, ..EnumOptions::default() };
        *out = lift(enumerate_parameter_ideals(field, d1, d2, &opts))?.len();
        Ok(())
    })
}

