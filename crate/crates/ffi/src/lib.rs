//! C interface. Every call returns an [`SlStatus`]; on failure the message is
//! available from [`sl_last_error`] until the next call on the same thread.

use schubloc::coxeter::{parse_word, WeylElem, WeylGroup};
use schubloc::hecke::Hecke;
use schubloc::locaffine::MainVerifier;
use schubloc::locfinite::FlagLoc;
use schubloc::pipedream::enumerate_pd;
use schubloc::Error;
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::sync::{Arc, OnceLock};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SlStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    IllFormed = 4,
    Unsupported = 5,
    NotInImage = 6,
    Diverges = 7,
    Panic = 8,
}

/// Finite Weyl group with its Hecke algebra and, on first use, its SMC table.
pub struct SlGroup {
    hecke: Hecke,
    flag: OnceLock<FlagLoc>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(SlStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        let status = match e {
            Error::Parse(_) => SlStatus::Parse,
            Error::Unsupported(_) => SlStatus::Unsupported,
            Error::NotInImage(_) => SlStatus::NotInImage,
            Error::Diverges { .. } => SlStatus::Diverges,
            _ => SlStatus::IllFormed,
        };
        Fail(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SlStatus {
    set_error("");
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SlStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(&m);
            s
        }
        Err(p) => {
            let m = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&m);
            SlStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(SlStatus::NullArgument, format!("{what} is null"))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(SlStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Fail> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn group<'a>(g: *const SlGroup) -> Result<&'a SlGroup, Fail> {
    g.as_ref().ok_or_else(|| null("group"))
}

unsafe fn elem(g: &SlGroup, p: *const c_char, what: &str) -> Result<WeylElem, Fail> {
    let word = parse_word(text(p, what)?)?;
    Ok(g.hecke.g.from_word(&word)?)
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = CString::new(s).map_err(|e| Fail(SlStatus::IllFormed, e.to_string()))?.into_raw();
    Ok(())
}

/// Message of the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on this thread.
#[no_mangle]
pub extern "C" fn sl_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Builds a group from a type string such as `"A3"`, `"B2"` or `"GL4"`.
///
/// # Safety
/// `ty` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_group_new(ty: *const c_char, out: *mut *mut SlGroup) -> SlStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        *out = ptr::null_mut();
        let g = Arc::new(WeylGroup::parse(text(ty, "type")?)?);
        *out = Box::into_raw(Box::new(SlGroup { hecke: Hecke::new(g), flag: OnceLock::new() }));
        Ok(())
    })
}

/// # Safety
/// `g` must come from [`sl_group_new`] and not be freed twice. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sl_group_free(g: *mut SlGroup) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// # Safety
/// `g` must be a live group and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sl_group_order(g: *const SlGroup, out: *mut usize) -> SlStatus {
    guard(|| {
        let g = group(g)?;
        *out.as_mut().ok_or_else(|| null("out"))? = g.hecke.g.order();
        Ok(())
    })
}

/// `R_{u,w}` as ascending coefficients in `q`, space separated.
/// Words are dot-separated, e.g. `"s1.s2"`, or `"e"`.
///
/// # Safety
/// Strings must be NUL-terminated; free `*out` with [`sl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_rpoly(g: *const SlGroup, u: *const c_char, w: *const c_char, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let g = group(g)?;
        let (u, w) = (elem(g, u, "u")?, elem(g, w, "w")?);
        put_string(out, g.hecke.r_poly(u, w).coeff_list())
    })
}

/// Restriction of the SMC class of the Schubert cell of `w` to the fixed point `u`.
///
/// # Safety
/// Strings must be NUL-terminated; free `*out` with [`sl_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sl_smc_restrict(g: *const SlGroup, u: *const c_char, w: *const c_char, out: *mut *mut c_char) -> SlStatus {
    guard(|| {
        let g = group(g)?;
        let (u, w) = (elem(g, u, "u")?, elem(g, w, "w")?);
        let flag = g.flag.get_or_init(|| FlagLoc::new(g.hecke.g.clone()));
        put_string(out, flag.smc(u, w).to_string())
    })
}

/// Checks the affine restriction identity for every pair `(u, w)` of the
/// partial flag variety of `lambda`. `*passed` is 1 when all rows agree.
///
/// # Safety
/// `lambda` must point to `len` integers.
#[no_mangle]
pub unsafe extern "C" fn sl_verify_main(ty: *const c_char, lambda: *const i64, len: usize, passed: *mut i32) -> SlStatus {
    guard(|| {
        let lam = slice(lambda, len, "lambda")?;
        let v = MainVerifier::parse(text(ty, "type")?, lam)?;
        let ok = v.verify_all()?.iter().all(|r| r.pass());
        *passed.as_mut().ok_or_else(|| null("passed"))? = ok as i32;
        Ok(())
    })
}

/// Number of `k`-row periodic pipe dreams with reading permutation `f`, given in window notation.
///
/// # Safety
/// `f` must point to `n` integers.
#[no_mangle]
pub unsafe extern "C" fn sl_pipedream_count(f: *const i64, n: usize, k: usize, out: *mut u64) -> SlStatus {
    guard(|| {
        let f = slice(f, n, "f")?;
        let c = enumerate_pd(f, k)?.len() as u64;
        *out.as_mut().ok_or_else(|| null("out"))? = c;
        Ok(())
    })
}

/// # Safety
/// `s` must come from this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn sl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
