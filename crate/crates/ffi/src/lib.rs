//! C ABI for `bmrel`.
//!
//! Every function returns a [`BmStatus`]. Results come back through out
//! pointers. Objects are opaque handles released with their `_free`
//! function. Strings are NUL-terminated UTF-8. A function writing a string
//! takes `(buf, cap, needed)`: it stores the required size including the
//! NUL in `*needed` and returns `BM_BUFFER_TOO_SMALL` when `cap` is short.
//! The message of the last failure on the calling thread is available from
//! [`bm_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use bmrel::group::{parse_certificate, parse_presentation};
use bmrel::psi::{build_level, kimberley_count_u64, BuildOptions, RelationLevel};
use bmrel::store::{parse_level, serialize_level, verify_level_text};
use bmrel::{
    abelianization, all_relations, count_relations, preset, Ambient, BMPresentation, BMRelation, Error, SearchOptions,
    Word,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BmStatus {
    BmOk = 0,
    BmInvalidArgument = 1,
    BmParseError = 2,
    BmCorrupt = 3,
    BmBudgetExceeded = 4,
    BmUnsupported = 5,
    BmOverflow = 6,
    BmIoError = 7,
    BmBufferTooSmall = 8,
    BmNotVerified = 9,
    BmPanic = 10,
}

/// A sorted set of BM relations over one ambient.
pub struct BmRelationSet {
    ambient: Ambient,
    relations: Vec<BMRelation>,
}

/// A BM presentation with its rewriting table.
pub struct BmPresentation {
    inner: BMPresentation,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> BmStatus {
    match e {
        Error::InvalidAmbient { .. } | Error::LetterOutOfRange { .. } | Error::AmbientMismatch { .. } => {
            BmStatus::BmInvalidArgument
        }
        Error::MalformedQuad(_) | Error::Parse(_) | Error::ParseAt { .. } => BmStatus::BmParseError,
        Error::Corrupt(_) | Error::DisjointnessViolation { .. } => BmStatus::BmCorrupt,
        Error::BudgetExceeded(_) => BmStatus::BmBudgetExceeded,
        Error::Unsupported(_) => BmStatus::BmUnsupported,
        Error::Overflow(_) => BmStatus::BmOverflow,
        Error::Io(_) => BmStatus::BmIoError,
    }
}

struct Fail(BmStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn invalid(msg: &str) -> Fail {
    Fail(BmStatus::BmInvalidArgument, msg.to_string())
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> BmStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => BmStatus::BmOk,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            BmStatus::BmPanic
        }
    }
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if s.is_null() {
        return Err(invalid(&format!("{what} is null")));
    }
    CStr::from_ptr(s).to_str().map_err(|_| Fail(BmStatus::BmParseError, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    out.write(value);
    Ok(())
}

unsafe fn put_string(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Result<(), Fail> {
    let size = s.len() + 1;
    if !needed.is_null() {
        needed.write(size);
    }
    if cap < size || buf.is_null() {
        return Err(Fail(BmStatus::BmBufferTooSmall, format!("{size} bytes needed")));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf.cast::<u8>(), s.len());
    buf.add(s.len()).write(0);
    Ok(())
}

unsafe fn set_ref<'a>(set: *const BmRelationSet) -> Result<&'a BmRelationSet, Fail> {
    set.as_ref().ok_or_else(|| invalid("relation set is null"))
}

unsafe fn pres_ref<'a>(p: *const BmPresentation) -> Result<&'a BmPresentation, Fail> {
    p.as_ref().ok_or_else(|| invalid("presentation is null"))
}

unsafe fn put_handle<T>(out: *mut *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(invalid("output pointer is null"));
    }
    out.write(Box::into_raw(Box::new(value)));
    Ok(())
}

fn search(jobs: usize) -> SearchOptions {
    SearchOptions { jobs: jobs.max(1), max_solutions: None }
}

/// Message of the last failure on this thread; valid until the next call
/// from the same thread.
#[no_mangle]
pub extern "C" fn bm_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// `|R(α,β)|` by exhaustive search with `jobs` workers (0 means 1).
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bm_count_relations(alpha: usize, beta: usize, jobs: usize, out: *mut u64) -> BmStatus {
    guard(|| {
        let n = count_relations(Ambient::new(alpha, beta)?, &search(jobs))?;
        put(out, n)
    })
}

/// `∏_{i=1}^{β} (2i+1)`; `BM_OVERFLOW` when it does not fit in 64 bits.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bm_kimberley_count(beta: usize, out: *mut u64) -> BmStatus {
    guard(|| {
        let n = kimberley_count_u64(beta).ok_or(Error::Overflow("product of odd numbers"))?;
        put(out, n)
    })
}

/// All of `R(α,β)` in canonical order.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bm_relations_enumerate(
    alpha: usize,
    beta: usize,
    jobs: usize,
    out: *mut *mut BmRelationSet,
) -> BmStatus {
    guard(|| {
        let ambient = Ambient::new(alpha, beta)?;
        let relations = all_relations(ambient, &search(jobs))?;
        put_handle(out, BmRelationSet { ambient, relations })
    })
}

/// Parses a level file (header line plus one relation per line).
///
/// # Safety
/// `level_text` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bm_relations_parse(level_text: *const c_char, out: *mut *mut BmRelationSet) -> BmStatus {
    guard(|| {
        let (header, relations) = parse_level(text(level_text, "level text")?)?;
        put_handle(out, BmRelationSet { ambient: header.ambient, relations })
    })
}

/// `R(1,β+1)` from the complete level `R(1,β)`.
///
/// # Safety
/// `level` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bm_relations_build_level(
    level: *const BmRelationSet,
    jobs: usize,
    out: *mut *mut BmRelationSet,
) -> BmStatus {
    guard(|| {
        let set = set_ref(level)?;
        if set.ambient.alpha != 1 {
            return Err(Error::Unsupported(format!("levels are R(1,β); got R{}", set.ambient)).into());
        }
        let current = RelationLevel::new(set.ambient.beta, set.relations.clone())?;
        let next = build_level(&current, &BuildOptions { jobs: jobs.max(1), ..BuildOptions::default() })?;
        let ambient = Ambient::new(1, next.beta())?;
        put_handle(out, BmRelationSet { ambient, relations: next.into_relations() })
    })
}

/// # Safety
/// `set` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn bm_relations_len(set: *const BmRelationSet) -> usize {
    set.as_ref().map_or(0, |s| s.relations.len())
}

/// Writes `α` and `β` of the set's ambient.
///
/// # Safety
/// `set` must be a live handle; `alpha` and `beta` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bm_relations_ambient(
    set: *const BmRelationSet,
    alpha: *mut usize,
    beta: *mut usize,
) -> BmStatus {
    guard(|| {
        let s = set_ref(set)?;
        put(alpha, s.ambient.alpha)?;
        put(beta, s.ambient.beta)
    })
}

/// Text of relation `index`, e.g. `"a1 b1 A1 B1; a1 b2 A1 B2"`.
///
/// # Safety
/// `set` must be a live handle; `buf` must hold `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn bm_relations_line(
    set: *const BmRelationSet,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> BmStatus {
    guard(|| {
        let s = set_ref(set)?;
        let r = s.relations.get(index).ok_or_else(|| invalid("index out of range"))?;
        put_string(&r.to_string(), buf, cap, needed)
    })
}

/// The whole set in level-file format.
///
/// # Safety
/// `set` must be a live handle; `buf` must hold `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn bm_relations_serialize(
    set: *const BmRelationSet,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> BmStatus {
    guard(|| {
        let s = set_ref(set)?;
        put_string(&serialize_level(s.ambient, &s.relations), buf, cap, needed)
    })
}

/// # Safety
/// `set` must be a handle from this library or null, and not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bm_relations_free(set: *mut BmRelationSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Strict check of level-file text: `BM_OK`, or `BM_CORRUPT` with the first
/// problem in [`bm_last_error`].
///
/// # Safety
/// `level_text` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn bm_verify_level(level_text: *const c_char) -> BmStatus {
    guard(|| {
        verify_level_text(text(level_text, "level text")?)?;
        Ok(())
    })
}

/// One of `gamma4`, `gamma30`, `gamma5`, `gamma10`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bm_presentation_preset(name: *const c_char, out: *mut *mut BmPresentation) -> BmStatus {
    guard(|| {
        let p = preset(text(name, "preset name")?)?;
        put_handle(out, BmPresentation { inner: p })
    })
}

/// Presentation from relator text, e.g. `"a1 b1 A1 B1"` or `"acac^{-1}, adad^{-1}, bcbd, bc^{-1}bd^{-1}"`.
///
/// # Safety
/// `relators` must be a NUL-terminated string; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bm_presentation_parse(relators: *const c_char, out: *mut *mut BmPresentation) -> BmStatus {
    guard(|| {
        let p = parse_presentation(text(relators, "relators")?)?;
        put_handle(out, BmPresentation { inner: p })
    })
}

/// Presentation of relation `index` of a set.
///
/// # Safety
/// `set` must be a live handle; `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bm_presentation_from_set(
    set: *const BmRelationSet,
    index: usize,
    out: *mut *mut BmPresentation,
) -> BmStatus {
    guard(|| {
        let s = set_ref(set)?;
        let r = s.relations.get(index).ok_or_else(|| invalid("index out of range"))?;
        put_handle(out, BmPresentation { inner: BMPresentation::from_relation(r.clone())? })
    })
}

/// # Safety
/// `p` must be a handle from this library or null, and not used afterwards.
#[no_mangle]
pub unsafe extern "C" fn bm_presentation_free(p: *mut BmPresentation) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Normal form of a space-separated word; the identity is the empty string.
///
/// # Safety
/// `p` must be a live handle; `word` a NUL-terminated string; `buf` must hold `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn bm_normal_form(
    p: *const BmPresentation,
    word: *const c_char,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> BmStatus {
    guard(|| {
        let p = pres_ref(p)?;
        let w: Word = text(word, "word")?.parse()?;
        put_string(&p.inner.normal_form(&w)?.to_string(), buf, cap, needed)
    })
}

/// Abelianization as text, e.g. `"Z^1 ⊕ Z/2 ⊕ Z/4"`.
///
/// # Safety
/// `p` must be a live handle; `buf` must hold `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn bm_abelianization(
    p: *const BmPresentation,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> BmStatus {
    guard(|| {
        let inv = abelianization(&pres_ref(p)?.inner)?;
        put_string(&inv.to_string(), buf, cap, needed)
    })
}

/// Abelianization as free rank plus torsion coefficients `d_1 | d_2 | …`.
/// `*torsion_len` receives the number of coefficients; at most `cap` are written.
///
/// # Safety
/// `p` must be a live handle; `torsion` must hold `cap` values; other pointers must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn bm_abelian_invariants(
    p: *const BmPresentation,
    free_rank: *mut usize,
    torsion: *mut u64,
    cap: usize,
    torsion_len: *mut usize,
) -> BmStatus {
    guard(|| {
        let inv = abelianization(&pres_ref(p)?.inner)?;
        put(free_rank, inv.free_rank)?;
        put(torsion_len, inv.torsion.len())?;
        if inv.torsion.len() > cap || (torsion.is_null() && !inv.torsion.is_empty()) {
            return Err(Fail(BmStatus::BmBufferTooSmall, format!("{} torsion coefficients", inv.torsion.len())));
        }
        for (i, &d) in inv.torsion.iter().enumerate() {
            torsion.add(i).write(d);
        }
        Ok(())
    })
}

/// Checks an isomorphism certificate whose `source:` and `target:` lines
/// name presets. `BM_OK` when verified, `BM_NOT_VERIFIED` with the failing
/// check in [`bm_last_error`] otherwise.
///
/// # Safety
/// `certificate` must be a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn bm_check_isomorphism(certificate: *const c_char) -> BmStatus {
    guard(|| {
        let cert = parse_certificate(text(certificate, "certificate")?, preset)?;
        match cert.check()? {
            Ok(()) => Ok(()),
            Err(f) => Err(Fail(BmStatus::BmNotVerified, f.to_string())),
        }
    })
}
