//! C ABI over the `heyde` library.
//!
//! Objects cross the boundary as opaque handles (`HeydeProfile`,
//! `HeydeCharFn`) or as JSON strings. Every function returns a
//! [`HeydeStatus`]; on failure the message is available from
//! [`heyde_last_error_message`] on the same thread. Strings returned through
//! out-pointers are owned by the caller and released with
//! [`heyde_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::str::FromStr;

use heyde::charfn::{classify, CharFnExpr};
use heyde::group::PrimeProfile;
use heyde::value::ValueRecord;
use heyde::{Error, Rational};
use serde_json::Value;

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HeydeStatus {
    Ok = 0,
    /// The computation ran but the outcome differs from the expected one.
    Unexpected = 1,
    NullPointer = 2,
    InvalidUtf8 = 3,
    Parse = 4,
    InvalidArgument = 5,
    ZeroMultiplier = 6,
    HostMismatch = 7,
    NotInHost = 8,
    InfiniteQuotient = 9,
    BaseMismatch = 10,
    Truncation = 11,
    Hypothesis = 12,
    InvalidTable = 13,
    NotCharacteristic = 14,
    NonHermitian = 15,
    Unsupported = 16,
    Panic = 17,
}

impl From<&Error> for HeydeStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::ZeroMultiplier => HeydeStatus::ZeroMultiplier,
            Error::HostMismatch(_) => HeydeStatus::HostMismatch,
            Error::NotInHost { .. } => HeydeStatus::NotInHost,
            Error::InfiniteQuotient(_) => HeydeStatus::InfiniteQuotient,
            Error::BaseMismatch(_) => HeydeStatus::BaseMismatch,
            Error::Truncation(_) => HeydeStatus::Truncation,
            Error::Hypothesis(_) => HeydeStatus::Hypothesis,
            Error::InvalidTable(_) => HeydeStatus::InvalidTable,
            Error::NotCharacteristic(_) => HeydeStatus::NotCharacteristic,
            Error::NonHermitian(..) => HeydeStatus::NonHermitian,
            Error::Parse(_) => HeydeStatus::Parse,
            Error::InvalidArgument(_) => HeydeStatus::InvalidArgument,
            Error::Unsupported(_) => HeydeStatus::Unsupported,
        }
    }
}

/// Opaque prime profile.
pub struct HeydeProfile(PrimeProfile);

/// Opaque characteristic-function expression.
pub struct HeydeCharFn(CharFnExpr);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(HeydeStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure((&e).into(), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<HeydeStatus, Failure>) -> HeydeStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(s)) => s,
        Ok(Err(Failure(s, msg))) => {
            set_error(msg);
            s
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(format!("internal panic: {msg}"));
            HeydeStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(HeydeStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|e| Failure(HeydeStatus::InvalidUtf8, format!("{what}: {e}")))
}

unsafe fn read_json(p: *const c_char, what: &str) -> Result<Value, Failure> {
    let s = read_str(p, what)?;
    serde_json::from_str(s).map_err(|e| Failure(HeydeStatus::Parse, format!("{what}: {e}")))
}

unsafe fn out_ptr<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut()
        .ok_or_else(|| Failure(HeydeStatus::NullPointer, format!("{what} is null")))
}

fn to_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("JSON has no interior nul").into_raw()
}

/// Message of the last failed call on this thread, or null. The pointer is
/// valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn heyde_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn heyde_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a prime profile such as `{"primes":{"2":"inf","3":1}}`.
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn heyde_profile_from_json(json: *const c_char, out: *mut *mut HeydeProfile) -> HeydeStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let v = read_json(json, "profile")?;
        let p: PrimeProfile =
            serde_json::from_value(v).map_err(|e| Failure(HeydeStatus::Parse, format!("profile: {e}")))?;
        *out = Box::into_raw(Box::new(HeydeProfile(p)));
        Ok(HeydeStatus::Ok)
    })
}

/// # Safety
/// `p` must come from [`heyde_profile_from_json`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn heyde_profile_free(p: *mut HeydeProfile) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}

/// Whether multiplication by `n` is an automorphism of the solenoid.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn heyde_profile_is_automorphism(p: *const HeydeProfile, n: i64, out: *mut bool) -> HeydeStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let p = p
            .as_ref()
            .ok_or_else(|| Failure(HeydeStatus::NullPointer, "profile is null".into()))?;
        *out = p.0.is_automorphism(n)?;
        Ok(HeydeStatus::Ok)
    })
}

/// Whether the profile admits a pair `p, q` satisfying the hypotheses.
///
/// # Safety
/// `p` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn heyde_profile_admissible(p: *const HeydeProfile, out: *mut bool) -> HeydeStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let p = p
            .as_ref()
            .ok_or_else(|| Failure(HeydeStatus::NullPointer, "profile is null".into()))?;
        *out = p.0.heyde_admissible();
        Ok(HeydeStatus::Ok)
    })
}

/// Parses and validates a characteristic-function expression.
///
/// # Safety
/// `json` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn heyde_charfn_from_json(json: *const c_char, out: *mut *mut HeydeCharFn) -> HeydeStatus {
    guard(|| {
        let out = out_ptr(out, "out")?;
        let v = read_json(json, "expression")?;
        let f: CharFnExpr =
            serde_json::from_value(v).map_err(|e| Failure(HeydeStatus::Parse, format!("expression: {e}")))?;
        f.validate()?;
        *out = Box::into_raw(Box::new(HeydeCharFn(f)));
        Ok(HeydeStatus::Ok)
    })
}

/// # Safety
/// `f` must come from [`heyde_charfn_from_json`] and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn heyde_charfn_free(f: *mut HeydeCharFn) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

unsafe fn charfn_ref<'a>(f: *const HeydeCharFn) -> Result<&'a CharFnExpr, Failure> {
    f.as_ref()
        .map(|h| &h.0)
        .ok_or_else(|| Failure(HeydeStatus::NullPointer, "expression is null".into()))
}

/// Classification of the expression as JSON.
///
/// # Safety
/// `f` must be a live handle; `out_json` must be writable.
#[no_mangle]
pub unsafe extern "C" fn heyde_charfn_classify(f: *const HeydeCharFn, out_json: *mut *mut c_char) -> HeydeStatus {
    guard(|| {
        let out = out_ptr(out_json, "out_json")?;
        let c = classify(charfn_ref(f)?);
        *out = to_c_string(serde_json::to_string(&c).expect("classification serializes"));
        Ok(HeydeStatus::Ok)
    })
}

/// Value at the character `y` (a rational such as `"3/8"`) of the
/// expression's host, as JSON.
///
/// # Safety
/// `f` must be a live handle, `y` a valid C string, `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn heyde_charfn_eval(
    f: *const HeydeCharFn,
    y: *const c_char,
    out_json: *mut *mut c_char,
) -> HeydeStatus {
    guard(|| {
        let out = out_ptr(out_json, "out_json")?;
        let f = charfn_ref(f)?;
        let y = Rational::from_str(read_str(y, "y")?)?;
        let host = f
            .hosts()
            .into_iter()
            .next()
            .ok_or_else(|| Failure(HeydeStatus::InvalidArgument, "expression has no host".into()))?;
        let v = f.eval(&host.element(y)?)?;
        *out = to_c_string(serde_json::to_string(&ValueRecord::from(&v)).expect("values serialize"));
        Ok(HeydeStatus::Ok)
    })
}

/// Runs `aut`, `construct`, `verify`, `simulate` or `suite` with a JSON
/// configuration using the same keys as the command-line `config` field.
/// The result is written to `out_json`. Returns `Unexpected` when the
/// command-line tool would exit with status 1.
///
/// # Safety
/// `command` and `config_json` must be valid C strings; `out_json` writable.
#[no_mangle]
pub unsafe extern "C" fn heyde_run_json(
    command: *const c_char,
    config_json: *const c_char,
    out_json: *mut *mut c_char,
) -> HeydeStatus {
    guard(|| {
        let out = out_ptr(out_json, "out_json")?;
        let command = read_str(command, "command")?;
        let config = read_json(config_json, "config")?;
        let (result, code) = heyde::cli::execute(command, config)?;
        *out = to_c_string(serde_json::to_string(&result).expect("reports serialize"));
        Ok(if code == 0 {
            HeydeStatus::Ok
        } else {
            HeydeStatus::Unexpected
        })
    })
}
