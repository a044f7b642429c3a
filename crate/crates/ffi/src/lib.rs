//! C ABI over `lambda-skeletons`.
//!
//! Terms and generators are opaque heap handles (`LsTerm`, `LsRng`) released
//! with their `_free` function. Every fallible call returns an [`LsStatus`];
//! the message of the last failure on the calling thread is available from
//! [`ls_last_error`]. Strings returned through `char **` out-parameters are
//! owned by the caller and must be released with [`ls_string_free`].
//!
//! Openness arguments are `int64_t`; a negative value means "not given".

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use lambda_skeletons::dynamic::{self, AnyTerm, FamilyKind, Repr, SampleRequest, Strategy};
use lambda_skeletons::lambda;
use lambda_skeletons::props::{self, Bounds};
use lambda_skeletons::{Error, Rng};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    NotInFamily = 4,
    InvalidSize = 5,
    InvalidArgument = 6,
    SuiteFailed = 7,
    Panic = 8,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsFamily {
    Motzkin = 0,
    Closable = 1,
    Ucs = 2,
    Lmt = 3,
    Open = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsRepr {
    Base = 0,
    Structured = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LsStrategy {
    Default = 0,
    Derived = 1,
    Filtered = 2,
    Structural = 3,
    Converted = 4,
}

/// A parsed, converted or sampled term together with its family.
pub struct LsTerm {
    family: FamilyKind,
    term: AnyTerm,
}

/// A seeded SplitMix64 stream.
pub struct LsRng {
    rng: Rng,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn family(f: LsFamily) -> FamilyKind {
    match f {
        LsFamily::Motzkin => FamilyKind::Motzkin,
        LsFamily::Closable => FamilyKind::Closable,
        LsFamily::Ucs => FamilyKind::Ucs,
        LsFamily::Lmt => FamilyKind::Lmt,
        LsFamily::Open => FamilyKind::Open,
    }
}

fn repr(r: LsRepr) -> Repr {
    match r {
        LsRepr::Base => Repr::Base,
        LsRepr::Structured => Repr::Structured,
    }
}

fn openness(m: i64) -> Option<u64> {
    u64::try_from(m).ok()
}

fn status_of(e: &Error) -> LsStatus {
    match e {
        Error::Parse { .. } => LsStatus::ParseError,
        Error::NotInFamily { .. }
        | Error::NotClosable { .. }
        | Error::NotUcs { .. }
        | Error::NotOpen { .. }
        | Error::OpennessMismatch { .. } => LsStatus::NotInFamily,
        Error::InvalidSize { .. } => LsStatus::InvalidSize,
        _ => LsStatus::InvalidArgument,
    }
}

/// Runs `body`, recording any error or panic as the thread's last error.
fn guard(body: impl FnOnce() -> Result<(), (LsStatus, String)>) -> LsStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => LsStatus::Ok,
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            LsStatus::Panic
        }
    }
}

fn lib_err(e: Error) -> (LsStatus, String) {
    (status_of(&e), e.to_string())
}

fn null(what: &str) -> (LsStatus, String) {
    (LsStatus::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (LsStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (LsStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), (LsStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    let c = CString::new(s).map_err(|_| (LsStatus::InvalidArgument, "interior NUL".to_string()))?;
    *out = c.into_raw();
    Ok(())
}

unsafe fn write_term(out: *mut *mut LsTerm, family: FamilyKind, term: AnyTerm) -> Result<(), (LsStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    *out = Box::into_raw(Box::new(LsTerm { family, term }));
    Ok(())
}

/// Message of the last failed call on this thread ("" if none). Valid until
/// the next call into this library from the same thread.
#[no_mangle]
pub extern "C" fn ls_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
///
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn ls_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `text` in the canonical grammar of `family`/`repr`.
///
/// # Safety
///
/// `text` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_term_parse(
    family_id: LsFamily,
    repr_id: LsRepr,
    text: *const c_char,
    out: *mut *mut LsTerm,
) -> LsStatus {
    guard(|| {
        let text = read_str(text, "text")?;
        let kind = family(family_id);
        let term = dynamic::parse(kind, repr(repr_id), text).map_err(lib_err)?;
        write_term(out, kind, term)
    })
}

/// # Safety
///
/// `term` must be null or a handle from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ls_term_free(term: *mut LsTerm) {
    if !term.is_null() {
        drop(Box::from_raw(term));
    }
}

/// Canonical text of `term`, or null if `term` is null.
///
/// # Safety
///
/// `term` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ls_term_to_string(term: *const LsTerm) -> *mut c_char {
    match term.as_ref() {
        Some(t) => CString::new(t.term.to_string()).map_or(ptr::null_mut(), CString::into_raw),
        None => ptr::null_mut(),
    }
}

/// # Safety
///
/// `term` must be a live handle; `size111`/`size012` writable or null.
#[no_mangle]
pub unsafe extern "C" fn ls_term_sizes(term: *const LsTerm, size111: *mut usize, size012: *mut usize) -> LsStatus {
    guard(|| {
        let t = term.as_ref().ok_or_else(|| null("term"))?;
        if let Some(out) = size111.as_mut() {
            *out = t.term.size111();
        }
        if let Some(out) = size012.as_mut() {
            *out = t.term.size012();
        }
        Ok(())
    })
}

/// Converts `term` to the other representation of its family.
///
/// Fails with `LS_STATUS_NOT_IN_FAMILY` when the term is not a member.
///
/// # Safety
///
/// `term` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_term_convert(term: *const LsTerm, openness_m: i64, out: *mut *mut LsTerm) -> LsStatus {
    guard(|| {
        let t = term.as_ref().ok_or_else(|| null("term"))?;
        let converted = dynamic::convert(t.family, &t.term, openness(openness_m)).map_err(lib_err)?;
        write_term(out, t.family, converted)
    })
}

/// Least openness of an `lmt`/`open` term.
///
/// # Safety
///
/// `term` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_minimal_openness(term: *const LsTerm, out: *mut u64) -> LsStatus {
    guard(|| {
        let t = term.as_ref().ok_or_else(|| null("term"))?;
        let out = out.as_mut().ok_or_else(|| null("output pointer"))?;
        *out = match &t.term {
            AnyTerm::Lmt(x) => lambda::minimal_openness(x),
            AnyTerm::Open(o) => lambda::minimal_openness(o.tree()),
            _ => return Err((LsStatus::InvalidArgument, "not a λ-term".to_string())),
        };
        Ok(())
    })
}

/// Number of `m`-open labelings of the term's skeleton, as a decimal string.
///
/// # Safety
///
/// `term` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_count_labelings(term: *const LsTerm, m: u64, out: *mut *mut c_char) -> LsStatus {
    guard(|| {
        let t = term.as_ref().ok_or_else(|| null("term"))?;
        let skeleton = match &t.term {
            AnyTerm::Motzkin(x) => x.clone(),
            AnyTerm::Closable(c) => lambda_skeletons::closable::closable2motzkin(c),
            AnyTerm::Ucs(u) => lambda_skeletons::ucs::ucs2motzkin(u),
            AnyTerm::Lmt(x) => lambda::skeleton(x),
            AnyTerm::Open(o) => lambda::skeleton(o.tree()),
        };
        write_string(out, lambda::count_labelings(m, &skeleton).to_string())
    })
}

/// Number of family members of size `size`, as a decimal string.
///
/// # Safety
///
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_count(family_id: LsFamily, size: usize, openness_m: i64, out: *mut *mut c_char) -> LsStatus {
    guard(|| {
        let n = dynamic::count(family(family_id), size, openness(openness_m)).map_err(lib_err)?;
        write_string(out, n.to_string())
    })
}

/// Every member of size `size`, canonical text, one per line.
///
/// # Safety
///
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ls_enumerate(
    family_id: LsFamily,
    repr_id: LsRepr,
    size: usize,
    openness_m: i64,
    out: *mut *mut c_char,
) -> LsStatus {
    guard(|| {
        let terms = dynamic::enumerate(family(family_id), repr(repr_id), size, openness(openness_m)).map_err(lib_err)?;
        let mut text = String::new();
        for t in terms {
            text.push_str(&t.to_string());
            text.push('\n');
        }
        write_string(out, text)
    })
}

#[no_mangle]
pub extern "C" fn ls_rng_new(seed: u64) -> *mut LsRng {
    Box::into_raw(Box::new(LsRng { rng: Rng::new(seed) }))
}

/// # Safety
///
/// `rng` must be null or a handle from [`ls_rng_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ls_rng_free(rng: *mut LsRng) {
    if !rng.is_null() {
        drop(Box::from_raw(rng));
    }
}

/// Draws one term, advancing `rng`.
///
/// # Safety
///
/// `rng` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_sample(
    rng: *mut LsRng,
    family_id: LsFamily,
    repr_id: LsRepr,
    strategy: LsStrategy,
    fuel: u32,
    filter_max: u32,
    openness_m: i64,
    out: *mut *mut LsTerm,
) -> LsStatus {
    guard(|| {
        let rng = rng.as_mut().ok_or_else(|| null("rng"))?;
        let kind = family(family_id);
        let strategy = match strategy {
            LsStrategy::Default => kind.default_strategy(),
            LsStrategy::Derived => Strategy::Derived,
            LsStrategy::Filtered => Strategy::Filtered,
            LsStrategy::Structural => Strategy::Structural,
            LsStrategy::Converted => Strategy::Converted,
        };
        let request = SampleRequest {
            kind,
            repr: repr(repr_id),
            strategy,
            fuel,
            filter_max,
            openness: openness(openness_m),
        };
        let (term, _) = dynamic::sample(&request, &mut rng.rng).map_err(lib_err)?;
        write_term(out, kind, term)
    })
}

/// Runs one property suite and writes its JSON report to `out_json`.
///
/// Returns `LS_STATUS_SUITE_FAILED` (with the report still written) when the
/// suite finds a counterexample. `seed` drives the `generators` suite.
///
/// # Safety
///
/// `suite` must be a NUL-terminated string; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn ls_check(
    suite: *const c_char,
    max_size: usize,
    max_open_size: usize,
    max_m: u64,
    seed: u64,
    out_json: *mut *mut c_char,
) -> LsStatus {
    let mut passed = true;
    let status = guard(|| {
        let name = read_str(suite, "suite")?;
        let bounds = Bounds {
            max_size,
            max_open_size,
            max_m,
            seed,
            ..Bounds::default()
        };
        let report = props::run_suite(name, &bounds)
            .ok_or_else(|| (LsStatus::InvalidArgument, format!("unknown suite `{name}`")))?;
        passed = report.pass;
        write_string(out_json, report.to_json())
    });
    if status == LsStatus::Ok && !passed {
        set_last_error("suite failed");
        return LsStatus::SuiteFailed;
    }
    status
}
