//! C ABI over `evoalg`.
//!
//! Algebras cross the boundary as opaque `EvoalgAlgebra` handles. Every
//! fallible call returns an `EvoalgStatus`; on failure the message and the
//! stable error code of the last error on the calling thread are available
//! from `evoalg_last_error_message` and `evoalg_last_error_code`. Strings
//! returned through out-parameters are owned by the caller and released
//! with `evoalg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use evoalg::io::{emit_algebra, parse_algebra, parse_vector};
use evoalg::random::{self, Constraints};
use evoalg::{cli, ideals, natural, nilpotency, Error, EvolutionAlgebra, Field};

/// Result of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvoalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed algebra file or vector.
    Parse = 3,
    /// Well-formed input the operation rejects.
    InvalidInput = 4,
    Computation = 5,
    Panic = 6,
}

/// Opaque algebra handle.
pub struct EvoalgAlgebra {
    inner: EvolutionAlgebra,
}

struct LastError {
    code: CString,
    message: CString,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<LastError>> = const { RefCell::new(None) };
}

fn set_error(code: &str, message: &str) {
    let clean = |s: &str| CString::new(s.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| {
        *e.borrow_mut() = Some(LastError {
            code: clean(code),
            message: clean(message),
        })
    });
}

fn status_of(e: &Error) -> EvoalgStatus {
    match e {
        Error::Parse { .. } | Error::NonPrimeModulus(_) | Error::NonSquareMatrix(_) => EvoalgStatus::Parse,
        _ if cli::exit_code(e) == cli::EXIT_USAGE => EvoalgStatus::InvalidInput,
        _ => EvoalgStatus::Computation,
    }
}

fn fail(e: Error) -> EvoalgStatus {
    set_error(e.code(), &e.to_string());
    status_of(&e)
}

/// Run `f`, translating panics into `Panic`.
fn guard(f: impl FnOnce() -> EvoalgStatus) -> EvoalgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => {
            set_error("panic", "internal panic");
            EvoalgStatus::Panic
        }
    }
}

fn null() -> EvoalgStatus {
    set_error("null_pointer", "null pointer argument");
    EvoalgStatus::NullPointer
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, EvoalgStatus> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("invalid_utf8", "argument is not valid UTF-8");
        EvoalgStatus::InvalidUtf8
    })
}

unsafe fn algebra_arg<'a>(a: *const EvoalgAlgebra) -> Result<&'a EvolutionAlgebra, EvoalgStatus> {
    a.as_ref().map(|h| &h.inner).ok_or_else(null)
}

unsafe fn put<T>(out: *mut T, value: T) -> EvoalgStatus {
    if out.is_null() {
        return null();
    }
    out.write(value);
    EvoalgStatus::Ok
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> EvoalgStatus {
    let c = CString::new(s).expect("reports contain no nul");
    put(out, c.into_raw())
}

unsafe fn put_algebra(out: *mut *mut EvoalgAlgebra, a: EvolutionAlgebra) -> EvoalgStatus {
    put(out, Box::into_raw(Box::new(EvoalgAlgebra { inner: a })))
}

macro_rules! tri {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(s) => return s,
        }
    };
}

/// Parse an algebra in the text or JSON file format.
///
/// # Safety
/// `text` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evoalg_algebra_parse(text: *const c_char, out: *mut *mut EvoalgAlgebra) -> EvoalgStatus {
    guard(|| {
        let text = tri!(str_arg(text));
        match parse_algebra(text) {
            Ok(a) => put_algebra(out, a),
            Err(e) => fail(e),
        }
    })
}

/// Seeded random algebra; `field` is `q`, `gf5`, ...
///
/// # Safety
/// `field` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evoalg_random(
    field: *const c_char,
    dim: usize,
    seed: u64,
    perfect: bool,
    nondegenerate: bool,
    out: *mut *mut EvoalgAlgebra,
) -> EvoalgStatus {
    guard(|| {
        let field: Field = match tri!(str_arg(field)).parse() {
            Ok(f) => f,
            Err(e) => return fail(e),
        };
        let c = Constraints { perfect, nondegenerate };
        match random::algebra(&mut random::rng(seed), field, dim, c) {
            Ok(a) => put_algebra(out, a),
            Err(e) => fail(e),
        }
    })
}

/// Release a handle. Null is ignored.
///
/// # Safety
/// `a` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn evoalg_algebra_free(a: *mut EvoalgAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evoalg_algebra_dim(a: *const EvoalgAlgebra, out: *mut usize) -> EvoalgStatus {
    guard(|| put(out, tri!(algebra_arg(a)).dim()))
}

/// The algebra in the canonical text file format.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evoalg_algebra_emit(a: *const EvoalgAlgebra, out: *mut *mut c_char) -> EvoalgStatus {
    guard(|| put_string(out, emit_algebra(tri!(algebra_arg(a)))))
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evoalg_is_perfect(a: *const EvoalgAlgebra, out: *mut bool) -> EvoalgStatus {
    guard(|| put(out, tri!(algebra_arg(a)).is_perfect()))
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evoalg_is_nilpotent(a: *const EvoalgAlgebra, out: *mut bool) -> EvoalgStatus {
    guard(|| put(out, nilpotency::nilpotency_report(tri!(algebra_arg(a))).is_nilpotent))
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evoalg_is_simple(a: *const EvoalgAlgebra, out: *mut bool) -> EvoalgStatus {
    guard(|| put(out, ideals::is_simple(tri!(algebra_arg(a)))))
}

/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evoalg_has_property_2li(a: *const EvoalgAlgebra, out: *mut bool) -> EvoalgStatus {
    guard(|| put(out, natural::has_property_2li(tri!(algebra_arg(a)))))
}

/// Whether the comma-separated `coords` belong to some natural basis.
///
/// # Safety
/// `a` must be a live handle, `coords` nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn evoalg_is_natural_vector(
    a: *const EvoalgAlgebra,
    coords: *const c_char,
    out: *mut bool,
) -> EvoalgStatus {
    guard(|| {
        let a = tri!(algebra_arg(a));
        let r = parse_vector(a.field(), a.dim(), tri!(str_arg(coords)))
            .and_then(|u| natural::is_natural_vector(a, &u));
        match r {
            Ok(b) => put(out, b),
            Err(e) => fail(e),
        }
    })
}

/// Run a CLI command, e.g. `{"analyze", "a.evo"}`, with JSON output.
///
/// `out_json` receives the report (or the JSON error object) and
/// `exit_code` the CLI exit status. Returns `Ok` whenever the command ran,
/// including commands that fail; usage errors reported by the argument
/// parser come back as `InvalidInput`.
///
/// # Safety
/// `argv` must point to `argc` nul-terminated strings; the out-parameters
/// must be writable.
#[no_mangle]
pub unsafe extern "C" fn evoalg_run_command(
    argv: *const *const c_char,
    argc: usize,
    out_json: *mut *mut c_char,
    exit_code: *mut c_int,
) -> EvoalgStatus {
    guard(|| {
        if argv.is_null() && argc > 0 {
            return null();
        }
        let mut args = vec!["evoalg".to_string(), "--format".into(), "json".into()];
        for k in 0..argc {
            args.push(tri!(str_arg(*argv.add(k))).to_string());
        }
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = cli::main_with(args, &mut out, &mut err);
        if out.is_empty() && code != cli::EXIT_OK {
            set_error("usage", String::from_utf8_lossy(&err).trim());
            return EvoalgStatus::InvalidInput;
        }
        if exit_code.is_null() {
            return null();
        }
        exit_code.write(code);
        put_string(out_json, String::from_utf8_lossy(&out).into_owned())
    })
}

/// Release a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn evoalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

fn last_error_field(pick: fn(&LastError) -> *const c_char) -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), pick))
}

/// Message of the last error on this thread, or null. Valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn evoalg_last_error_message() -> *const c_char {
    last_error_field(|e| e.message.as_ptr())
}

/// Stable code of the last error on this thread (`parse_error`,
/// `not_perfect`, ...), or null.
#[no_mangle]
pub extern "C" fn evoalg_last_error_code() -> *const c_char {
    last_error_field(|e| e.code.as_ptr())
}
