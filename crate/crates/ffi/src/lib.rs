//! C ABI for siegel-padic.
//!
//! Every fallible call returns an `SpStatus` and writes its result through an out-pointer.
//! On failure the message is kept per thread and can be fetched with `sp_last_error`.
//! Handles are opaque and owned by the caller until passed to the matching `_free`.

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::os::raw::c_char;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use siegel_padic::arith::{ArithPoint, PAdic};
use siegel_padic::bernoulli::{kl_eval, EulerFactor};
use siegel_padic::characters::{gauss_sum, DirichletChar};
use siegel_padic::eisenstein::{classical_coeff, family_coeff, EisParams};
use siegel_padic::ordinary::{ordinary_projector, LinearModel};
use siegel_padic::quadforms::HalfIntMat;
use siegel_padic::Error;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    Parse = 1,
    Domain = 2,
    Pole = 3,
    Precision = 4,
    Convergence = 5,
    Unsupported = 6,
    NullPointer = 7,
    Panic = 8,
}

/// A p-adic number.
pub struct SpPAdic(PAdic);

/// A Dirichlet character.
pub struct SpChar(DirichletChar);

/// Eisenstein family parameters.
pub struct SpEisParams(EisParams);

/// A finite U_p model over Z/p^N.
pub struct SpModel(LinearModel);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SpStatus {
    match e {
        Error::Parse(_) => SpStatus::Parse,
        Error::Domain(_) => SpStatus::Domain,
        Error::Pole { .. } => SpStatus::Pole,
        Error::Precision(_) => SpStatus::Precision,
        Error::Convergence(_) => SpStatus::Convergence,
        Error::Unsupported(_) => SpStatus::Unsupported,
    }
}

/// Runs `f`, stores its value in `*out` and records any failure.
unsafe fn guarded<T>(out: *mut *mut T, f: impl FnOnce() -> Result<T, Error>) -> SpStatus {
    if out.is_null() {
        set_error("null out-pointer".into());
        return SpStatus::NullPointer;
    }
    *out = ptr::null_mut();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(v)) => {
            *out = Box::into_raw(Box::new(v));
            SpStatus::Ok
        }
        Ok(Err(e)) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(_) => {
            set_error("internal panic".into());
            SpStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Error> {
    if s.is_null() {
        return Err(Error::Parse("null string".into()));
    }
    CStr::from_ptr(s).to_str().map_err(|e| Error::Parse(e.to_string()))
}

unsafe fn from_json<T: serde::de::DeserializeOwned>(s: *const c_char) -> Result<T, Error> {
    Ok(serde_json::from_str(read_str(s)?)?)
}

fn to_c_json<T: serde::Serialize>(v: &T) -> *mut c_char {
    serde_json::to_string(v)
        .ok()
        .and_then(|s| CString::new(s).ok())
        .map_or(ptr::null_mut(), CString::into_raw)
}

unsafe fn half_int(s: *const c_char) -> Result<HalfIntMat, Error> {
    let rows: Vec<Vec<i64>> = from_json(s)?;
    HalfIntMat::from_twice_rows(&rows)
}

/// Message of the last failure on this thread, or NULL. Free with `sp_string_free`.
#[no_mangle]
pub extern "C" fn sp_last_error() -> *mut c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null_mut(), |c| c.clone().into_raw()))
}

/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sp_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a character from its JSON form.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_char_from_json(json: *const c_char, out: *mut *mut SpChar) -> SpStatus {
    guarded(out, || from_json(json).map(SpChar))
}

/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_char_trivial(modulus: u64, out: *mut *mut SpChar) -> SpStatus {
    guarded(out, || {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        Ok(SpChar(DirichletChar::trivial(modulus)))
    })
}

/// The Teichmüller character modulo p.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_char_omega(p: u64, out: *mut *mut SpChar) -> SpStatus {
    guarded(out, || {
        if !siegel_padic::arith::int::is_prime(p) || p < 3 {
            return Err(Error::domain("p must be an odd prime"));
        }
        Ok(SpChar(DirichletChar::omega(p)))
    })
}

/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sp_char_free(h: *mut SpChar) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Gauss sum of a character as cyclotomic JSON. Returns NULL if `chi` is NULL.
///
/// # Safety
/// `chi` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sp_gauss_sum_json(chi: *const SpChar) -> *mut c_char {
    match chi.as_ref() {
        Some(c) => to_c_json(&gauss_sum(&c.0)),
        None => ptr::null_mut(),
    }
}

/// L_p([t], η) to absolute precision `prec`. A NULL `eta` means the trivial character.
///
/// # Safety
/// `eta` must be a live handle or NULL; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_kl_eval(
    p: u64,
    t: i64,
    eta: *const SpChar,
    prec: i64,
    literal_euler_factor: bool,
    out: *mut *mut SpPAdic,
) -> SpStatus {
    let eta = eta.as_ref().map_or_else(|| DirichletChar::trivial(1), |c| c.0.clone());
    let factor = if literal_euler_factor { EulerFactor::Literal } else { EulerFactor::Corrected };
    guarded(out, || kl_eval(&ArithPoint::cyclotomic(p, t), &eta, prec, factor).map(SpPAdic))
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_padic_valuation(h: *const SpPAdic) -> i64 {
    h.as_ref().map_or(i64::MIN, |x| x.0.valuation())
}

/// # Safety
/// `h` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sp_padic_precision(h: *const SpPAdic) -> i64 {
    h.as_ref().map_or(i64::MIN, |x| x.0.precision())
}

/// True when the two numbers agree modulo p^m.
///
/// # Safety
/// Both handles must be live.
#[no_mangle]
pub unsafe extern "C" fn sp_padic_eq_mod(a: *const SpPAdic, b: *const SpPAdic, m: i64) -> bool {
    match (a.as_ref(), b.as_ref()) {
        (Some(a), Some(b)) => a.0.eq_mod(&b.0, m),
        _ => false,
    }
}

/// # Safety
/// `h` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sp_padic_to_json(h: *const SpPAdic) -> *mut c_char {
    h.as_ref().map_or(ptr::null_mut(), |x| to_c_json(&x.0))
}

/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sp_padic_free(h: *mut SpPAdic) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parses and validates Eisenstein parameters.
///
/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_eis_params_from_json(json: *const c_char, out: *mut *mut SpEisParams) -> SpStatus {
    guarded(out, || {
        let p: EisParams = from_json(json)?;
        p.validate()?;
        Ok(SpEisParams(p))
    })
}

/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sp_eis_params_free(h: *mut SpEisParams) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Classical coefficient at (T1, T4), given as JSON rows of 2T1 and 2T4. The result is
/// cyclotomic JSON, written to `*out` and freed with `sp_string_free`.
///
/// # Safety
/// `params` must be live, the strings NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_eis_classical_json(
    params: *const SpEisParams,
    t1: *const c_char,
    t4: *const c_char,
    out: *mut *mut c_char,
) -> SpStatus {
    if out.is_null() {
        set_error("null out-pointer".into());
        return SpStatus::NullPointer;
    }
    let mut s: *mut String = ptr::null_mut();
    let st = guarded(&mut s, || {
        let p = params.as_ref().ok_or_else(|| Error::Parse("null params".into()))?;
        let v = classical_coeff(&half_int(t1)?, &half_int(t4)?, &p.0)?;
        serde_json::to_string(&v).map_err(Error::from)
    });
    *out = ptr::null_mut();
    if st == SpStatus::Ok {
        let s = Box::from_raw(s);
        *out = CString::new(*s).map_or(ptr::null_mut(), CString::into_raw);
    }
    st
}

/// Family coefficient a_(T1,T4,L)([k], [t]) to absolute precision `prec`.
///
/// # Safety
/// `params` must be live, the strings NUL-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sp_eis_family_coeff(
    params: *const SpEisParams,
    t1: *const c_char,
    t4: *const c_char,
    k: i64,
    t: i64,
    prec: i64,
    out: *mut *mut SpPAdic,
) -> SpStatus {
    guarded(out, || {
        let p = params.as_ref().ok_or_else(|| Error::Parse("null params".into()))?;
        let prime = p.0.p;
        family_coeff(
            &half_int(t1)?,
            &half_int(t4)?,
            &ArithPoint::weight(prime, k),
            &ArithPoint::cyclotomic(prime, t),
            &p.0,
            prec,
        )
        .map(SpPAdic)
    })
}

/// # Safety
/// `json` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_model_from_json(json: *const c_char, out: *mut *mut SpModel) -> SpStatus {
    guarded(out, || from_json(json).map(SpModel))
}

/// The ordinary projector e = lim U^(n!) of a model.
///
/// # Safety
/// `model` must be live; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_ordinary_projector(model: *const SpModel, out: *mut *mut SpModel) -> SpStatus {
    guarded(out, || {
        let m = model.as_ref().ok_or_else(|| Error::Parse("null model".into()))?;
        ordinary_projector(&m.0).map(SpModel)
    })
}

/// Rank modulo p, or −1 for NULL.
///
/// # Safety
/// `model` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sp_model_rank_mod_p(model: *const SpModel) -> i64 {
    model.as_ref().map_or(-1, |m| m.0.rank_mod_p() as i64)
}

/// # Safety
/// `model` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn sp_model_to_json(model: *const SpModel) -> *mut c_char {
    model.as_ref().map_or(ptr::null_mut(), |m| to_c_json(&m.0))
}

/// # Safety
/// `h` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn sp_model_free(h: *mut SpModel) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}
