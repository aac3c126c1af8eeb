//! C ABI for `anyon-kit`.
//!
//! Models and matrices are opaque heap handles created by `ak_*_new`/`parse`
//! functions and released with the matching `*_free`. Every fallible call
//! returns an [`AkStatus`]; on failure the message is available from
//! [`ak_last_error`] until the next failing call on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use anyon_kit::cli::{kmatrix_for, parse_spec_terms};
use anyon_kit::lattice_realization::{extremality_score, glue_selfdual_8, orthogonal_complement, verify_realization, Lattice};
use anyon_kit::metric_groups::central_charge_gauss;
use anyon_kit::symmetry::aut_bruteforce;
use anyon_kit::{Budget, Error, IntegerMatrix, MetricGroup, PrimeFamilySpec};
use num_traits::ToPrimitive;

/// Status codes.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    InvalidFamily = 4,
    NotEven = 5,
    Singular = 6,
    NotPositiveDefinite = 7,
    BudgetExceeded = 8,
    NoSolution = 9,
    Verification = 10,
    OutOfRange = 11,
    Internal = 12,
}

/// A metric group parsed from a spec string.
pub struct AkModel {
    terms: Vec<PrimeFamilySpec>,
    group: MetricGroup,
}

/// A square integer matrix.
pub struct AkMatrix {
    m: IntegerMatrix,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> AkStatus {
    match e {
        Error::Parse { .. } => AkStatus::Parse,
        Error::InvalidFamily(_) | Error::Routed(_) => AkStatus::InvalidFamily,
        Error::NotEven(_) => AkStatus::NotEven,
        Error::Singular => AkStatus::Singular,
        Error::NotPositiveDefinite => AkStatus::NotPositiveDefinite,
        Error::BudgetExceeded { .. } => AkStatus::BudgetExceeded,
        Error::NoSolution(_) => AkStatus::NoSolution,
        Error::Verification(_) | Error::NotContained => AkStatus::Verification,
        _ => AkStatus::InvalidArgument,
    }
}

/// Runs `f`, mapping errors and panics to status codes.
fn guard(f: impl FnOnce() -> Result<(), (AkStatus, String)>) -> AkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => AkStatus::Ok,
        Ok(Err((s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic".into());
            AkStatus::Internal
        }
    }
}

fn lift(e: Error) -> (AkStatus, String) {
    (status_of(&e), e.to_string())
}

fn null() -> (AkStatus, String) {
    (AkStatus::NullPointer, "null pointer argument".into())
}

/// Message of the last failing call on this thread, or null. The pointer is
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn ak_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Parses a spec such as `"E[2]*A[2]"`.
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn ak_model_parse(spec: *const c_char, out: *mut *mut AkModel) -> AkStatus {
    guard(|| {
        if spec.is_null() || out.is_null() {
            return Err(null());
        }
        let text = CStr::from_ptr(spec).to_str().map_err(|_| (AkStatus::Parse, "spec is not UTF-8".to_string()))?;
        let terms = parse_spec_terms(text).map_err(lift)?;
        let mut group = MetricGroup::trivial();
        for t in &terms {
            group = group.direct_sum(&MetricGroup::build_prime(t).map_err(lift)?);
        }
        *out = Box::into_raw(Box::new(AkModel { terms, group }));
        Ok(())
    })
}

/// # Safety
/// `model` must come from [`ak_model_parse`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ak_model_free(model: *mut AkModel) {
    if !model.is_null() {
        drop(Box::from_raw(model));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ak_model_order(model: *const AkModel, out: *mut u64) -> AkStatus {
    guard(|| {
        let (Some(m), false) = (model.as_ref(), out.is_null()) else { return Err(null()) };
        *out = m.group.order();
        Ok(())
    })
}

/// Central charge mod 8 from the Gauss sum.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ak_model_central_charge(model: *const AkModel, out: *mut u8) -> AkStatus {
    guard(|| {
        let (Some(m), false) = (model.as_ref(), out.is_null()) else { return Err(null()) };
        *out = central_charge_gauss(&m.group, Budget::default().gauss).map_err(lift)?;
        Ok(())
    })
}

/// `|Aut(A, q)|` by enumeration.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ak_model_aut_order(model: *const AkModel, out: *mut u64) -> AkStatus {
    guard(|| {
        let (Some(m), false) = (model.as_ref(), out.is_null()) else { return Err(null()) };
        *out = aut_bruteforce(&m.group, Budget::default().group).map_err(lift)?.order();
        Ok(())
    })
}

/// A K-matrix realizing `model` (Wall route, or positive definite).
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ak_kmatrix(model: *const AkModel, positive_definite: bool, out: *mut *mut AkMatrix) -> AkStatus {
    guard(|| {
        let (Some(m), false) = (model.as_ref(), out.is_null()) else { return Err(null()) };
        let budget = Budget::default();
        let mut k = IntegerMatrix::zeros(0, 0);
        for t in &m.terms {
            k = k.direct_sum(&kmatrix_for(t, positive_definite, &budget).map_err(lift)?);
        }
        *out = Box::into_raw(Box::new(AkMatrix { m: k }));
        Ok(())
    })
}

/// Copies an `n x n` row-major matrix.
///
/// # Safety
/// `entries` must point to `n * n` values and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn ak_matrix_new(n: usize, entries: *const i64, out: *mut *mut AkMatrix) -> AkStatus {
    guard(|| {
        if out.is_null() || (entries.is_null() && n > 0) {
            return Err(null());
        }
        let len = n.checked_mul(n).ok_or((AkStatus::OutOfRange, "matrix too large".to_string()))?;
        let data = if n == 0 { &[][..] } else { std::slice::from_raw_parts(entries, len) };
        let rows: Vec<Vec<i64>> = data.chunks(n.max(1)).map(<[i64]>::to_vec).collect();
        let m = IntegerMatrix::from_rows(&rows);
        *out = Box::into_raw(Box::new(AkMatrix { m }));
        Ok(())
    })
}

/// # Safety
/// `matrix` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ak_matrix_free(matrix: *mut AkMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ak_matrix_dim(matrix: *const AkMatrix, out: *mut usize) -> AkStatus {
    guard(|| {
        let (Some(m), false) = (matrix.as_ref(), out.is_null()) else { return Err(null()) };
        *out = m.m.rows();
        Ok(())
    })
}

/// Entry `(i, j)`; [`AkStatus::OutOfRange`] if the indices are out of
/// bounds or the entry does not fit in 64 bits.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ak_matrix_get(matrix: *const AkMatrix, i: usize, j: usize, out: *mut i64) -> AkStatus {
    guard(|| {
        let (Some(m), false) = (matrix.as_ref(), out.is_null()) else { return Err(null()) };
        if i >= m.m.rows() || j >= m.m.cols() {
            return Err((AkStatus::OutOfRange, format!("index ({i}, {j}) out of bounds")));
        }
        *out = m.m[(i, j)].to_i64().ok_or((AkStatus::OutOfRange, "entry exceeds 64 bits".to_string()))?;
        Ok(())
    })
}

/// Sets `passed` to whether `matrix` realizes `model`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ak_verify(matrix: *const AkMatrix, model: *const AkModel, passed: *mut bool) -> AkStatus {
    guard(|| {
        let (Some(k), Some(m), false) = (matrix.as_ref(), model.as_ref(), passed.is_null()) else { return Err(null()) };
        let rep = verify_realization(&k.m, &m.group, &Budget::default()).map_err(lift)?;
        *passed = rep.passed();
        Ok(())
    })
}

/// Complement of the lattice inside its eight-copy self-dual gluing.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ak_complement(matrix: *const AkMatrix, out: *mut *mut AkMatrix) -> AkStatus {
    guard(|| {
        let (Some(k), false) = (matrix.as_ref(), out.is_null()) else { return Err(null()) };
        let budget = Budget::default();
        let base = Lattice::new(k.m.clone()).map_err(lift)?;
        let glued = glue_selfdual_8(&base, &budget).map_err(lift)?;
        let comp = orthogonal_complement(&glued.lattice, &glued.copy).map_err(lift)?;
        *out = Box::into_raw(Box::new(AkMatrix { m: comp.into_gram() }));
        Ok(())
    })
}

/// Extremality score as a fraction `num / den` in lowest terms.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn ak_extremality(matrix: *const AkMatrix, num: *mut i64, den: *mut i64) -> AkStatus {
    guard(|| {
        let (Some(k), false, false) = (matrix.as_ref(), num.is_null(), den.is_null()) else { return Err(null()) };
        let s = extremality_score(&k.m, &Budget::default()).map_err(lift)?;
        let too_big = || (AkStatus::OutOfRange, "score exceeds 64 bits".to_string());
        *num = s.numer().to_i64().ok_or_else(too_big)?;
        *den = s.denom().to_i64().ok_or_else(too_big)?;
        Ok(())
    })
}
