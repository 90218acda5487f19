//! C ABI over `hookschur`.
//!
//! Every fallible function returns an [`HsStatus`] and writes results through out
//! pointers. On failure, [`hs_last_error`] describes the most recent error on the
//! calling thread. Objects are opaque handles released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use hookschur::characters::verify_power_sum_identity;
use hookschur::cli::ExitStatus;
use hookschur::complexes::{build_nm, cohomology, CohomologyReport, HookComplex};
use hookschur::ffield::binomial_mod_p;
use hookschur::ktheory::{adams_grayson, K0Class};
use hookschur::schur::{HookModule, HookShape};
use hookschur::{Error, Prime};

/// Result codes. Non-negative values match the command-line exit codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HsStatus {
    Ok = 0,
    CheckFailed = 1,
    Invalid = 2,
    SizeLimit = 3,
    NullPointer = -1,
    Panic = -2,
}

/// `N_m(V)` together with its cohomology.
pub struct HsComplex {
    complex: HookComplex,
    report: CohomologyReport,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> HsStatus {
    match ExitStatus::for_error(e) {
        ExitStatus::SizeLimit => HsStatus::SizeLimit,
        ExitStatus::CheckFailed => HsStatus::CheckFailed,
        _ => HsStatus::Invalid,
    }
}

fn guard(f: impl FnOnce() -> Result<(), HsStatus>) -> HsStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => HsStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            HsStatus::Panic
        }
    }
}

fn lift<T>(r: hookschur::Result<T>) -> Result<T, HsStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), HsStatus> {
    if p.is_null() {
        set_error(format!("{what} is null"));
        return Err(HsStatus::NullPointer);
    }
    Ok(())
}

fn prime(p: u32) -> Result<Prime, HsStatus> {
    lift(Prime::new(p))
}

/// Message for the last failed call on this thread, or null. Owned by the library and
/// valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn hs_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds `N_m(V)` for `dim V = n` over `F_p` and computes its cohomology.
///
/// # Safety
/// `out` must be a valid pointer. On success `*out` owns a handle to release with
/// [`hs_complex_free`].
#[no_mangle]
pub unsafe extern "C" fn hs_complex_build(m: u32, n: u32, p: u32, out: *mut *mut HsComplex) -> HsStatus {
    guard(|| {
        non_null(out, "out")?;
        let complex = lift(build_nm(m as usize, n as usize, prime(p)?))?;
        let report = lift(cohomology(&complex))?;
        *out = Box::into_raw(Box::new(HsComplex { complex, report }));
        Ok(())
    })
}

/// # Safety
/// `c` must be null or a handle from [`hs_complex_build`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_free(c: *mut HsComplex) {
    if !c.is_null() {
        drop(Box::from_raw(c));
    }
}

/// Number of terms, `m`. Zero for a null handle.
///
/// # Safety
/// `c` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_num_terms(c: *const HsComplex) -> usize {
    c.as_ref().map_or(0, |c| c.complex.term_dims().len())
}

unsafe fn degree_query(
    c: *const HsComplex,
    i: usize,
    out: *mut usize,
    f: impl FnOnce(&HsComplex, usize) -> usize,
) -> HsStatus {
    guard(|| {
        non_null(c, "complex")?;
        non_null(out, "out")?;
        let c = &*c;
        if i >= c.report.degrees.len() {
            set_error(format!("degree {i} out of range"));
            return Err(HsStatus::Invalid);
        }
        *out = f(c, i);
        Ok(())
    })
}

/// Dimension of term `i`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_term_dim(c: *const HsComplex, i: usize, out: *mut usize) -> HsStatus {
    degree_query(c, i, out, |c, i| c.report.degrees[i].term_dim)
}

/// Dimension of `H^i`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_cohomology_dim(c: *const HsComplex, i: usize, out: *mut usize) -> HsStatus {
    degree_query(c, i, out, |c, i| c.report.degrees[i].cohomology_dim)
}

/// `dim S_{(m/p-i,1^i)}(V)`, the predicted dimension of `H^i`.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_expected_cohomology_dim(
    c: *const HsComplex,
    i: usize,
    out: *mut usize,
) -> HsStatus {
    degree_query(c, i, out, |c, i| c.report.degrees[i].expected_dim)
}

/// Whether every cohomology dimension and character matches its prediction.
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_cohomology_matches(c: *const HsComplex, out: *mut bool) -> HsStatus {
    guard(|| {
        non_null(c, "complex")?;
        non_null(out, "out")?;
        *out = (*c).report.all_match;
        Ok(())
    })
}

/// The cohomology report as JSON. Release the string with [`hs_string_free`].
///
/// # Safety
/// `c` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_complex_report_json(c: *const HsComplex, out: *mut *mut c_char) -> HsStatus {
    guard(|| {
        non_null(c, "complex")?;
        non_null(out, "out")?;
        let json = serde_json::to_string(&(*c).report).map_err(|e| {
            set_error(e.to_string());
            HsStatus::Panic
        })?;
        *out = CString::new(json).map_err(|_| HsStatus::Panic)?.into_raw();
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hs_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Dimension of `S_{(a,1^b)}(V)` for `dim V = n` over `F_p`. Zero when `a <= 0`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_hook_module_dimension(a: i64, b: u32, n: u32, p: u32, out: *mut usize) -> HsStatus {
    guard(|| {
        non_null(out, "out")?;
        let module = lift(HookModule::build(HookShape::new(a, b as usize), n as usize, prime(p)?))?;
        *out = module.dimension();
        Ok(())
    })
}

/// Checks `p_m = Σ (-1)^i s_{(m-i,1^i)}` in `n` variables.
///
/// # Safety
/// `holds` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_verify_power_sum_identity(m: u32, n: u32, holds: *mut bool) -> HsStatus {
    guard(|| {
        non_null(holds, "holds")?;
        *holds = lift(verify_power_sum_identity(m, n as usize))?.holds;
        Ok(())
    })
}

/// Checks that `ψ^k[V]` computed by the alternating hook sum is the power sum `p_k`.
///
/// # Safety
/// `holds` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_adams_power_sum_check(k: i64, n: u32, holds: *mut bool) -> HsStatus {
    guard(|| {
        non_null(holds, "holds")?;
        let n = n as usize;
        let psi = lift(adams_grayson(k, &K0Class::split(n)))?;
        *holds = psi.value == hookschur::characters::power_sum(k as u32, n);
        Ok(())
    })
}

/// `C(n, k) mod p` by Lucas digits.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hs_binomial_mod_p(n: u64, k: u64, p: u32, out: *mut u32) -> HsStatus {
    guard(|| {
        non_null(out, "out")?;
        *out = binomial_mod_p(n, k, prime(p)?).residue();
        Ok(())
    })
}
