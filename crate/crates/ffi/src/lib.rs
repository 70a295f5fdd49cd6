//! C ABI over the `ffh` engine.
//!
//! Every fallible call returns an [`FfhStatus`]; on failure a message is
//! available from [`ffh_last_error`] until the next call on the same thread.
//! Strings handed out by the library must be released with
//! [`ffh_string_free`], transform handles with [`ffh_transform_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ffh::radial::BiaxialParams;
use ffh::transform::{
    biaxial_transform, biaxial_transform_numeric, classify_power, parse_holomorphic, verify_monogenic,
    Classification, NumericOptions, NumericSeed, TransformError, TransformRequest, TransformResult,
};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfhStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    Numeric = 5,
    Panic = 6,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FfhClassKind {
    Zero = 0,
    Homogeneous = 1,
    Inhomogeneous = 2,
    NonPolynomial = 3,
}

/// Opaque transform result.
pub struct FfhTransform {
    result: TransformResult,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let text = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(text).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

struct Failure(FfhStatus, String);

impl From<TransformError> for Failure {
    fn from(e: TransformError) -> Self {
        let status = match e {
            TransformError::Syntax { .. } => FfhStatus::Parse,
            TransformError::OutsideValidity { .. } | TransformError::QuadratureNonConvergence { .. } => {
                FfhStatus::Numeric
            }
            _ => FfhStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> FfhStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => FfhStatus::Ok,
        Ok(Err(Failure(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".to_string());
            set_error(format!("internal panic: {msg}"));
            FfhStatus::Panic
        }
    }
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure(FfhStatus::NullPointer, "null string".into()));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| Failure(FfhStatus::InvalidUtf8, "string is not UTF-8".into()))
}

fn check_out<T>(p: *mut T) -> Result<(), Failure> {
    if p.is_null() {
        Err(Failure(FfhStatus::NullPointer, "null output pointer".into()))
    } else {
        Ok(())
    }
}

unsafe fn handle<'a>(h: *const FfhTransform) -> Result<&'a FfhTransform, Failure> {
    h.as_ref()
        .ok_or_else(|| Failure(FfhStatus::NullPointer, "null transform handle".into()))
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("nul bytes removed").into_raw()
}

fn params(p: u32, q: u32, k: u32, l: u32) -> BiaxialParams {
    BiaxialParams::new(p as usize, q as usize, k, l)
}

fn split_class(c: Classification) -> (FfhClassKind, u32) {
    match c {
        Classification::Zero => (FfhClassKind::Zero, 0),
        Classification::Homogeneous(d) => (FfhClassKind::Homogeneous, d),
        Classification::Inhomogeneous => (FfhClassKind::Inhomogeneous, 0),
        Classification::NonPolynomial => (FfhClassKind::NonPolynomial, 0),
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library.
#[no_mangle]
pub extern "C" fn ffh_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ffh_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Exact biaxial transform of the seed `h` with the built-in monogenics.
/// With `normalize` the result is divided by its leading coefficient.
///
/// # Safety
/// `h` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ffh_transform_new(
    h: *const c_char,
    p: u32,
    q: u32,
    k: u32,
    l: u32,
    normalize: bool,
    out: *mut *mut FfhTransform,
) -> FfhStatus {
    guard(|| {
        check_out(out)?;
        let seed = parse_holomorphic(read_str(h)?)?;
        let req = TransformRequest::builtin(seed, params(p, q, k, l))?;
        let mut result = biaxial_transform(&req)?;
        if normalize {
            result = result.normalize()?;
        }
        *out = Box::into_raw(Box::new(FfhTransform { result }));
        Ok(())
    })
}

/// # Safety
/// `h` must be null or a handle from [`ffh_transform_new`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ffh_transform_free(h: *mut FfhTransform) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// # Safety
/// `h` must be a live handle; `kind` and `degree` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ffh_transform_classification(
    h: *const FfhTransform,
    kind: *mut FfhClassKind,
    degree: *mut u32,
) -> FfhStatus {
    guard(|| {
        check_out(kind)?;
        check_out(degree)?;
        let (c, d) = split_class(handle(h)?.result.classification);
        *kind = c;
        *degree = d;
        Ok(())
    })
}

/// The result as text, `(M) + (N)*wn` in `r`, `rho`.
///
/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ffh_transform_to_string(h: *const FfhTransform, out: *mut *mut c_char) -> FfhStatus {
    guard(|| {
        check_out(out)?;
        *out = into_c(handle(h)?.result.radial.to_string());
        Ok(())
    })
}

/// # Safety
/// `h` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ffh_transform_to_latex(h: *const FfhTransform, out: *mut *mut c_char) -> FfhStatus {
    guard(|| {
        check_out(out)?;
        *out = into_c(handle(h)?.result.radial.to_latex());
        Ok(())
    })
}

/// Divisor applied by normalization, as a rational string and a power of π.
///
/// # Safety
/// `h` must be a live handle; `rat` and `pi_pow` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ffh_transform_normalization(
    h: *const FfhTransform,
    rat: *mut *mut c_char,
    pi_pow: *mut u32,
) -> FfhStatus {
    guard(|| {
        check_out(rat)?;
        check_out(pi_pow)?;
        let s = &handle(h)?.result.normalization;
        *rat = into_c(ffh::scalar::format_rational(s.rat()));
        *pi_pow = s.pi_pow();
        Ok(())
    })
}

/// `M(r, ρ)` and `N(r, ρ)`.
///
/// # Safety
/// `h` must be a live handle; `m` and `n` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ffh_transform_eval(
    h: *const FfhTransform,
    r: f64,
    rho: f64,
    m: *mut f64,
    n: *mut f64,
) -> FfhStatus {
    guard(|| {
        check_out(m)?;
        check_out(n)?;
        if !(r > 0.0 && rho > 0.0) {
            return Err(Failure(FfhStatus::InvalidArgument, "r and rho must be positive".into()));
        }
        let res = &handle(h)?.result;
        *m = res.m().eval(r, rho);
        *n = res.n().eval(r, rho);
        Ok(())
    })
}

/// Exact Vekua and Dirac checks.
///
/// # Safety
/// `h` must be a live handle and `passed` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ffh_transform_verify(h: *const FfhTransform, passed: *mut bool) -> FfhStatus {
    guard(|| {
        check_out(passed)?;
        *passed = verify_monogenic(&handle(h)?.result)?.passed();
        Ok(())
    })
}

/// # Safety
/// `kind` and `degree` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ffh_classify_power(
    n: u32,
    k: u32,
    l: u32,
    p: u32,
    q: u32,
    kind: *mut FfhClassKind,
    degree: *mut u32,
) -> FfhStatus {
    guard(|| {
        check_out(kind)?;
        check_out(degree)?;
        let (c, d) = split_class(classify_power(n, k, l, p as usize, q as usize)?);
        *kind = c;
        *degree = d;
        Ok(())
    })
}

/// Numeric `M`, `N` at `(r, ρ)`. `h` is a polynomial seed or `1/(1+z^2)`;
/// `quad_order` 0 selects the default.
///
/// # Safety
/// `h` must be a valid C string; `m` and `n` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn ffh_transform_numeric(
    h: *const c_char,
    p: u32,
    q: u32,
    k: u32,
    l: u32,
    r: f64,
    rho: f64,
    quad_order: u32,
    m: *mut f64,
    n: *mut f64,
) -> FfhStatus {
    guard(|| {
        check_out(m)?;
        check_out(n)?;
        let text = read_str(h)?;
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let known = NumericSeed::inverse_one_plus_z2();
        let seed = if compact == known.label() {
            known
        } else {
            parse_holomorphic(text)?.to_numeric()
        };
        let mut opts = NumericOptions::default();
        if quad_order > 0 {
            opts.quad_order = quad_order as usize;
        }
        let v = biaxial_transform_numeric(&seed, params(p, q, k, l), (r, rho), &opts)?;
        *m = v.m;
        *n = v.n;
        Ok(())
    })
}
