//! C ABI over the census engine.
//!
//! Objects are opaque handles created by `*_new` and released by `*_free`.
//! Every fallible call returns an [`McStatus`]; the message of the last
//! failure on the calling thread is available from [`mc_last_error`].
//! Big integers and fractions cross the boundary as NUL-terminated decimal
//! strings owned by the caller and released with [`mc_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use moduli_census::algebra::{fmt_rat, FieldCtx};
use moduli_census::census::EllipticCensus;
use moduli_census::genus2::{SigmaAbcStore, TraceEngine};
use moduli_census::moduli::m1n::{m1n_direct, m1n_getzler};
use moduli_census::verify;
use moduli_census::CensusError;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum McStatus {
    Ok = 0,
    /// A computed value disagreed with a required identity.
    Mismatch = 1,
    /// Invalid argument.
    Usage = 2,
    /// Input beyond the sizes the engine enumerates.
    Capacity = 3,
    NullPointer = 4,
    InvalidUtf8 = 5,
    Panic = 6,
}

/// A finite field `F_q`.
pub struct McField(FieldCtx);

/// Elliptic curves over `F_q` up to isomorphism.
pub struct McEllipticCensus(EllipticCensus);

/// Genus-two masses and trace formulas at a prime.
pub struct McTraceEngine(TraceEngine);

/// Stored `σ_{a,b,c}(p)` values.
pub struct McSigmaAbcStore(SigmaAbcStore);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &CensusError) -> McStatus {
    match e.exit_code() {
        3 => McStatus::Capacity,
        2 => McStatus::Usage,
        _ => McStatus::Mismatch,
    }
}

enum Failure {
    Census(CensusError),
    Null,
    Utf8,
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        Failure::Census(e)
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> McStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => McStatus::Ok,
        Ok(Err(Failure::Census(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Ok(Err(Failure::Null)) => {
            set_error("null pointer argument".into());
            McStatus::NullPointer
        }
        Ok(Err(Failure::Utf8)) => {
            set_error("string argument is not UTF-8".into());
            McStatus::InvalidUtf8
        }
        Err(_) => {
            set_error("internal panic".into());
            McStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T) -> Result<&'a T, Failure> {
    p.as_ref().ok_or(Failure::Null)
}

unsafe fn store_out<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null);
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn string_out(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null);
    }
    *out = CString::new(s).map_err(|_| Failure::Utf8)?.into_raw();
    Ok(())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure::Null);
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure::Utf8)
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn mc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn mc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_field_new(q: u64, out: *mut *mut McField) -> McStatus {
    guard(|| store_out(out, McField(FieldCtx::new(q)?)))
}

/// # Safety
/// `field` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_field_order(field: *const McField) -> u64 {
    field.as_ref().map_or(0, |f| f.0.q() as u64)
}

/// # Safety
/// `field` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_field_characteristic(field: *const McField) -> u32 {
    field.as_ref().map_or(0, |f| f.0.p())
}

/// # Safety
/// `field` must be NULL or a handle from [`mc_field_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn mc_field_free(field: *mut McField) {
    if !field.is_null() {
        drop(Box::from_raw(field));
    }
}

/// # Safety
/// `field` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_elliptic_census_new(field: *const McField, out: *mut *mut McEllipticCensus) -> McStatus {
    guard(|| {
        let k = deref(field)?;
        store_out(out, McEllipticCensus(EllipticCensus::new(&k.0)?))
    })
}

/// Number of isomorphism classes, or 0 for NULL.
///
/// # Safety
/// `census` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_elliptic_census_len(census: *const McEllipticCensus) -> usize {
    census.as_ref().map_or(0, |c| c.0.records().len())
}

/// Point count and automorphism group order of class `index`.
///
/// # Safety
/// `census` must be a live handle; `n1` and `aut` valid pointers.
#[no_mangle]
pub unsafe extern "C" fn mc_elliptic_census_class(
    census: *const McEllipticCensus,
    index: usize,
    n1: *mut i64,
    aut: *mut u32,
) -> McStatus {
    guard(|| {
        let c = deref(census)?;
        if n1.is_null() || aut.is_null() {
            return Err(Failure::Null);
        }
        let r = c
            .0
            .records()
            .get(index)
            .ok_or_else(|| CensusError::Usage(format!("class index {index} out of range")))?;
        *n1 = r.n1;
        *aut = r.aut;
        Ok(())
    })
}

/// Total mass `Σ 1/#Aut` as `"n/d"` or an integer string.
///
/// # Safety
/// `census` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_elliptic_census_total_mass(census: *const McEllipticCensus, out: *mut *mut c_char) -> McStatus {
    guard(|| string_out(out, fmt_rat(&deref(census)?.0.total_mass())))
}

/// `σ_k(q)` as a decimal string.
///
/// # Safety
/// `census` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_elliptic_census_sigma(census: *const McEllipticCensus, k: u32, out: *mut *mut c_char) -> McStatus {
    guard(|| string_out(out, deref(census)?.0.sigma_k(k)?.to_string()))
}

/// `#M_{1,n}(F_q)` by the direct route, checked against the residue route.
///
/// # Safety
/// `census` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_m1n(census: *const McEllipticCensus, n: usize, out: *mut *mut c_char) -> McStatus {
    guard(|| {
        let c = &deref(census)?.0;
        let direct = m1n_direct(c, n)?;
        let residue = m1n_getzler(&c.sigma_table(n as u32)?, c.q() as i64, n)?;
        if direct != residue {
            return Err(CensusError::Consistency(format!("M_1,{n}: direct {direct}, residue {residue}")).into());
        }
        string_out(out, direct.to_string())
    })
}

/// # Safety
/// `census` must be NULL or a handle from [`mc_elliptic_census_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn mc_elliptic_census_free(census: *mut McEllipticCensus) {
    if !census.is_null() {
        drop(Box::from_raw(census));
    }
}

/// Builds the genus-two census over `F_p`; `p = 2` uses the `y^2 + hy = f` models.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_trace_engine_new(p: u64, out: *mut *mut McTraceEngine) -> McStatus {
    guard(|| {
        let k = FieldCtx::new(p)?;
        if k.m() != 1 {
            return Err(CensusError::Usage(format!("{p} is not prime")).into());
        }
        store_out(out, McTraceEngine(TraceEngine::new(&k)?))
    })
}

/// `Tr(T_p, S_{j,k})` for vector-valued Siegel cusp forms of degree two.
///
/// # Safety
/// `engine` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_trace_degree2(engine: *const McTraceEngine, j: i64, k: i64, out: *mut *mut c_char) -> McStatus {
    guard(|| string_out(out, deref(engine)?.0.trace_degree2(j, k)?.to_string()))
}

/// `σ_{a,b}(p)` with the fixed calibration.
///
/// # Safety
/// `engine` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_sigma_ab(engine: *const McTraceEngine, a: i64, b: i64, out: *mut *mut c_char) -> McStatus {
    guard(|| string_out(out, deref(engine)?.0.sigma_ab(a, b)?.value.to_string()))
}

/// `Tr(T_p, S_{i,j,k})` in degree three from stored `σ_{a,b,c}`.
///
/// # Safety
/// `engine` and `store` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_trace_degree3(
    engine: *const McTraceEngine,
    store: *const McSigmaAbcStore,
    i: i64,
    j: i64,
    k: i64,
    out: *mut *mut c_char,
) -> McStatus {
    guard(|| {
        let v = deref(engine)?.0.trace_degree3(i, j, k, &deref(store)?.0)?;
        string_out(out, v.to_string())
    })
}

/// # Safety
/// `engine` must be NULL or a handle from [`mc_trace_engine_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn mc_trace_engine_free(engine: *mut McTraceEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Parses records `p a b c value`, one per line. A NULL `text` gives the
/// bundled records.
///
/// # Safety
/// `text` must be NULL or a NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn mc_sigma_abc_store_new(text: *const c_char, out: *mut *mut McSigmaAbcStore) -> McStatus {
    guard(|| {
        let text = if text.is_null() { verify::SIGMA_ABC_FIXTURE } else { str_arg(text)? };
        store_out(out, McSigmaAbcStore(SigmaAbcStore::parse(text)?))
    })
}

/// # Safety
/// `store` must be NULL or a live handle.
#[no_mangle]
pub unsafe extern "C" fn mc_sigma_abc_store_len(store: *const McSigmaAbcStore) -> usize {
    store.as_ref().map_or(0, |s| s.0.len())
}

/// # Safety
/// `store` must be NULL or a handle from [`mc_sigma_abc_store_new`], freed once.
#[no_mangle]
pub unsafe extern "C" fn mc_sigma_abc_store_free(store: *mut McSigmaAbcStore) {
    if !store.is_null() {
        drop(Box::from_raw(store));
    }
}

/// Runs acceptance criterion `id`; `Mismatch` when it fails.
#[no_mangle]
pub extern "C" fn mc_verify_criterion(id: u32) -> McStatus {
    guard(|| {
        let outcome = verify::criterion(id)?.run();
        outcome.result.map_err(Failure::from)
    })
}
