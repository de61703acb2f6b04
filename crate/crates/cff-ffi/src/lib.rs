//! C ABI for the closed-form factoring toolkit.
//!
//! Terms are opaque handles; numbers cross the boundary as decimal strings
//! (values routinely exceed machine words). Every function returns a
//! [`CffStatus`]; on failure the per-thread message from
//! [`cff_last_error_message`] explains what went wrong. Strings returned by
//! this library must be released with [`cff_string_free`], terms with
//! [`cff_term_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

use cff_core::budget::BitBudget;
use cff_core::error::Error;
use cff_core::factoring;
use cff_core::formulas::{emit, EvalBackend};
use cff_core::term::{evaluate_bounded, parse, Env, Term};
use cff_core::{hypercube, BigUint};

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

/// Status codes returned by every entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CffStatus {
    Ok = 0,
    ParseError = 1,
    UnboundVariable = 2,
    DomainError = 3,
    CapacityError = 4,
    InconsistentError = 5,
    RangeError = 6,
    PropertyViolation = 7,
    UnsupportedEmission = 8,
    NullPointer = 9,
    InvalidArgument = 10,
}

/// Which backend computes chi and omega.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CffBackend {
    FullTerm = 0,
    Layered = 1,
    Native = 2,
}

impl From<CffBackend> for EvalBackend {
    fn from(b: CffBackend) -> EvalBackend {
        match b {
            CffBackend::FullTerm => EvalBackend::FullTerm,
            CffBackend::Layered => EvalBackend::Layered,
            CffBackend::Native => EvalBackend::Native,
        }
    }
}

/// Divisor formula selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CffMethod {
    T = 0,
    U = 1,
}

/// Result of one divisor computation.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CffFactorReport {
    pub n: u64,
    pub divisor: u64,
    pub cofactor: u64,
    pub chi: u64,
    pub omega: u64,
    pub root: u64,
    /// 1 when 1 < divisor < n (always the case for composite n).
    pub proper: u8,
}

/// Term size statistics.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct CffTermStats {
    pub node_count: u64,
    pub depth: u64,
    pub pow_count: u64,
}

/// Opaque term handle.
pub struct CffTerm(Term);

fn set_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn status_of(err: &Error) -> CffStatus {
    match err {
        Error::Parse { .. } => CffStatus::ParseError,
        Error::UnboundVariable(_) => CffStatus::UnboundVariable,
        Error::Domain(_) => CffStatus::DomainError,
        Error::Capacity { .. } => CffStatus::CapacityError,
        Error::Inconsistent(_) => CffStatus::InconsistentError,
        Error::Range(_) => CffStatus::RangeError,
        Error::PropertyViolation(_) => CffStatus::PropertyViolation,
        Error::UnsupportedEmission(_) => CffStatus::UnsupportedEmission,
    }
}

fn fail(err: Error) -> CffStatus {
    set_error(&err.to_string());
    status_of(&err)
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, CffStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(CffStatus::NullPointer);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        CffStatus::InvalidArgument
    })
}

fn give_string(s: String, out: *mut *mut c_char) -> CffStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CffStatus::Ok
        }
        Err(_) => {
            set_error("output contained an interior NUL");
            CffStatus::InvalidArgument
        }
    }
}

fn budget() -> BitBudget {
    BitBudget::from_env()
}

/// Message for the most recent failure on this thread, or NULL when the last
/// call succeeded. The pointer stays valid until the next failing call.
#[no_mangle]
pub extern "C" fn cff_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must have been returned by a `cff_*` function and not freed before.
#[no_mangle]
pub unsafe extern "C" fn cff_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses term text into an opaque handle.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cff_term_parse(text: *const c_char, out: *mut *mut CffTerm) -> CffStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CffStatus::NullPointer;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(status) => return status,
    };
    match parse(text) {
        Ok(term) => {
            *out = Box::into_raw(Box::new(CffTerm(term)));
            CffStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Emits a named formula (`hw`, `nu2`, `gcd`, `binom1`, `binom2`,
/// `factorial`, `delta`, `pow`, `chi`, `omega`, or `gseries0/1/2/4`) as a
/// term handle.
///
/// # Safety
/// `name` must be a NUL-terminated string; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cff_emit_formula(
    name: *const c_char,
    out: *mut *mut CffTerm,
) -> CffStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CffStatus::NullPointer;
    }
    let name = match read_str(name) {
        Ok(t) => t,
        Err(status) => return status,
    };
    let id = match name {
        "hw" => emit::FormulaId::Hw,
        "nu2" => emit::FormulaId::Nu2,
        "gcd" => emit::FormulaId::GcdTerm,
        "binom1" => emit::FormulaId::Binom1,
        "binom2" => emit::FormulaId::Binom2,
        "factorial" => emit::FormulaId::FactorialTerm,
        "delta" => emit::FormulaId::Delta,
        "pow" => emit::FormulaId::PowLemma,
        "chi" => emit::FormulaId::Chi,
        "omega" => emit::FormulaId::Omega,
        "gseries0" => emit::FormulaId::GSeries(0),
        "gseries1" => emit::FormulaId::GSeries(1),
        "gseries2" => emit::FormulaId::GSeries(2),
        "gseries4" => emit::FormulaId::GSeries(4),
        other => {
            set_error(&format!("unknown formula `{other}`"));
            return CffStatus::InvalidArgument;
        }
    };
    match emit::emit_term(id) {
        Ok(term) => {
            *out = Box::into_raw(Box::new(CffTerm(term)));
            CffStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Renders a term to its canonical text.
///
/// # Safety
/// `term` must be a live handle; `out` must be a valid pointer. Free the
/// string with [`cff_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cff_term_render(term: *const CffTerm, out: *mut *mut c_char) -> CffStatus {
    if term.is_null() || out.is_null() {
        set_error("null pointer argument");
        return CffStatus::NullPointer;
    }
    give_string((*term).0.render(), out)
}

/// Fills `out` with node count, depth and `^`-node count.
///
/// # Safety
/// `term` must be a live handle; `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cff_term_stats(term: *const CffTerm, out: *mut CffTermStats) -> CffStatus {
    if term.is_null() || out.is_null() {
        set_error("null pointer argument");
        return CffStatus::NullPointer;
    }
    let s = (*term).0.stats();
    *out = CffTermStats {
        node_count: s.node_count,
        depth: s.depth,
        pow_count: s.pow_count,
    };
    CffStatus::Ok
}

/// Evaluates a term under bindings given as parallel arrays of variable
/// names and decimal values, writing the exact decimal result. Intermediate
/// sizes obey the `CFF_BIT_BUDGET` ceiling.
///
/// # Safety
/// `term` must be a live handle; `names` and `values` must point to
/// `bindings_len` valid NUL-terminated strings; `out` must be valid. Free
/// the result with [`cff_string_free`].
#[no_mangle]
pub unsafe extern "C" fn cff_term_eval(
    term: *const CffTerm,
    names: *const *const c_char,
    values: *const *const c_char,
    bindings_len: usize,
    out: *mut *mut c_char,
) -> CffStatus {
    if term.is_null()
        || out.is_null()
        || (bindings_len > 0 && (names.is_null() || values.is_null()))
    {
        set_error("null pointer argument");
        return CffStatus::NullPointer;
    }
    let mut env = Env::new();
    for i in 0..bindings_len {
        let name = match read_str(*names.add(i)) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let value = match read_str(*values.add(i)) {
            Ok(t) => t,
            Err(status) => return status,
        };
        let value = match BigUint::parse_bytes(value.as_bytes(), 10) {
            Some(v) => v,
            None => {
                set_error(&format!("binding `{name}` is not a decimal natural"));
                return CffStatus::InvalidArgument;
            }
        };
        env = env.bind(name, value);
    }
    match evaluate_bounded(&(*term).0, &env, budget()) {
        Ok(v) => give_string(v.to_string(), out),
        Err(e) => fail(e),
    }
}

/// Releases a term handle.
///
/// # Safety
/// `term` must have come from this library and not been freed before.
#[no_mangle]
pub unsafe extern "C" fn cff_term_free(term: *mut CffTerm) {
    if !term.is_null() {
        drop(Box::from_raw(term));
    }
}

/// χ(n): largest s with s² | n.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cff_chi(n: u64, backend: CffBackend, out: *mut u64) -> CffStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CffStatus::NullPointer;
    }
    match hypercube::chi(n, backend.into(), budget()) {
        Ok(v) => {
            *out = v;
            CffStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// ω(n): number of distinct prime divisors.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cff_omega(n: u64, backend: CffBackend, out: *mut u64) -> CffStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CffStatus::NullPointer;
    }
    match hypercube::omega(n, backend.into(), budget()) {
        Ok(v) => {
            *out = v;
            CffStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Runs the divisor formula T or U on n >= 2 and fills the report. The
/// divisor is proper whenever n is composite; for prime n the formulas
/// return n itself with `proper = 0`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cff_factor(
    n: u64,
    method: CffMethod,
    backend: CffBackend,
    out: *mut CffFactorReport,
) -> CffStatus {
    if out.is_null() {
        set_error("null output pointer");
        return CffStatus::NullPointer;
    }
    let result = match method {
        CffMethod::T => factoring::factor_t(n, backend.into(), budget()),
        CffMethod::U => factoring::factor_u(n, backend.into(), budget()),
    };
    match result {
        Ok(r) => {
            *out = CffFactorReport {
                n: r.n,
                divisor: r.divisor,
                cofactor: r.cofactor,
                chi: r.chi,
                omega: r.omega,
                root: r.root,
                proper: u8::from(r.proper),
            };
            CffStatus::Ok
        }
        Err(e) => fail(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    #[test]
    fn parse_eval_render_round_trip() {
        unsafe {
            let mut term: *mut CffTerm = ptr::null_mut();
            let status = cff_term_parse(c("gcd(10, 2 ^ x) -. 1").as_ptr(), &mut term);
            assert_eq!(status, CffStatus::Ok);

            let mut rendered: *mut c_char = ptr::null_mut();
            assert_eq!(cff_term_render(term, &mut rendered), CffStatus::Ok);
            assert_eq!(
                CStr::from_ptr(rendered).to_str().unwrap(),
                "gcd(10, 2 ^ x) -. 1"
            );
            cff_string_free(rendered);

            let names = [c("x")];
            let values = [c("1")];
            let name_ptrs: Vec<*const c_char> = names.iter().map(|s| s.as_ptr()).collect();
            let value_ptrs: Vec<*const c_char> = values.iter().map(|s| s.as_ptr()).collect();
            let mut result: *mut c_char = ptr::null_mut();
            let status = cff_term_eval(
                term,
                name_ptrs.as_ptr(),
                value_ptrs.as_ptr(),
                1,
                &mut result,
            );
            assert_eq!(status, CffStatus::Ok);
            assert_eq!(CStr::from_ptr(result).to_str().unwrap(), "1");
            cff_string_free(result);

            let mut stats = CffTermStats {
                node_count: 0,
                depth: 0,
                pow_count: 0,
            };
            assert_eq!(cff_term_stats(term, &mut stats), CffStatus::Ok);
            assert_eq!(stats.pow_count, 1);
            cff_term_free(term);
        }
    }

    #[test]
    fn parse_error_sets_message() {
        unsafe {
            let mut term: *mut CffTerm = ptr::null_mut();
            let status = cff_term_parse(c("3 - 1").as_ptr(), &mut term);
            assert_eq!(status, CffStatus::ParseError);
            let msg = CStr::from_ptr(cff_last_error_message()).to_str().unwrap();
            assert!(msg.contains("syntax error"), "{msg}");
        }
    }

    #[test]
    fn unbound_variable_status() {
        unsafe {
            let mut term: *mut CffTerm = ptr::null_mut();
            assert_eq!(
                cff_term_parse(c("x + 1").as_ptr(), &mut term),
                CffStatus::Ok
            );
            let mut result: *mut c_char = ptr::null_mut();
            let status = cff_term_eval(term, ptr::null(), ptr::null(), 0, &mut result);
            assert_eq!(status, CffStatus::UnboundVariable);
            cff_term_free(term);
        }
    }

    #[test]
    fn chi_omega_factor() {
        unsafe {
            let mut v = 0u64;
            assert_eq!(cff_chi(50, CffBackend::FullTerm, &mut v), CffStatus::Ok);
            assert_eq!(v, 5);
            assert_eq!(cff_omega(10, CffBackend::FullTerm, &mut v), CffStatus::Ok);
            assert_eq!(v, 2);
            assert_eq!(
                cff_chi(0, CffBackend::Native, &mut v),
                CffStatus::DomainError
            );

            let mut report = CffFactorReport {
                n: 0,
                divisor: 0,
                cofactor: 0,
                chi: 0,
                omega: 0,
                root: 0,
                proper: 0,
            };
            let status = cff_factor(50, CffMethod::T, CffBackend::Native, &mut report);
            assert_eq!(status, CffStatus::Ok);
            assert_eq!((report.divisor, report.cofactor, report.proper), (10, 5, 1));
            let status = cff_factor(1, CffMethod::T, CffBackend::Native, &mut report);
            assert_eq!(status, CffStatus::DomainError);
        }
    }

    #[test]
    fn emit_formula_handles() {
        unsafe {
            let mut term: *mut CffTerm = ptr::null_mut();
            assert_eq!(
                cff_emit_formula(c("delta").as_ptr(), &mut term),
                CffStatus::Ok
            );
            let mut rendered: *mut c_char = ptr::null_mut();
            assert_eq!(cff_term_render(term, &mut rendered), CffStatus::Ok);
            assert_eq!(
                CStr::from_ptr(rendered).to_str().unwrap(),
                "(2 ^ b -. 1) * (2 ^ b -. a + 1)"
            );
            cff_string_free(rendered);
            cff_term_free(term);
            assert_eq!(
                cff_emit_formula(c("nope").as_ptr(), &mut term),
                CffStatus::InvalidArgument
            );
        }
    }
}
