//! C ABI for `spreadcode`.
//!
//! A code instance lives behind an opaque `ScCode` handle created by
//! [`sc_code_new`] or [`sc_code_new_with_poly`] and released with
//! [`sc_code_free`]. Field elements of `F_{q^k}` travel as `k` coefficients
//! `a_0 … a_{k-1}` of `Σ a_i λ^i`; subspaces travel as row-major basis
//! matrices over `F_q` with `n = r·k` columns. Every call returns an
//! [`ScStatus`]; on anything other than `SC_STATUS_OK` a message is available
//! from [`sc_last_error_message`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spreadcode::decoder::{decode, DecodeOutcome};
use spreadcode::gf::{ExtElement, PrimeField};
use spreadcode::linalg::Matrix;
use spreadcode::spread::{Codeword, SpreadCode, Subspace};
use spreadcode::Error;

/// Opaque code handle.
pub struct ScCode {
    inner: SpreadCode,
}

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    /// Decoding finished without a codeword within the unique-decoding radius.
    DecodeFailure = 1,
    NullPointer = 2,
    /// Invalid `(q, k, r)` or modulus.
    InvalidParams = 3,
    /// Malformed points, matrices or buffer sizes.
    InvalidInput = 4,
    /// An internal panic was caught at the boundary.
    Internal = 5,
}

/// Summary of a code instance.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ScCodeInfo {
    pub q: u32,
    pub k: usize,
    pub r: usize,
    pub n: usize,
    pub min_distance: usize,
    /// Number of codewords, or 0 if it does not fit in 64 bits.
    pub cardinality: u64,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: ScStatus, msg: impl Into<String>) -> ScStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> ScStatus {
    let status = match e {
        Error::NotPrime(_)
        | Error::InvalidDegree(_)
        | Error::NotIrreducible(_)
        | Error::InvalidParams(_)
        | Error::Diagonalizer(_) => ScStatus::InvalidParams,
        _ => ScStatus::InvalidInput,
    };
    fail(status, e.to_string())
}

fn guard(f: impl FnOnce() -> ScStatus) -> ScStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| fail(ScStatus::Internal, "internal panic"))
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next `sc_*` call on the same thread.
#[no_mangle]
pub extern "C" fn sc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Creates the spread code over `F_q` with `r` blocks of size `k`, using the
/// library's default irreducible polynomial.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sc_code_new(q: u32, k: usize, r: usize, out: *mut *mut ScCode) -> ScStatus {
    guard(|| {
        if out.is_null() {
            return fail(ScStatus::NullPointer, "out is null");
        }
        match SpreadCode::new(q, k, r) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(ScCode { inner }));
                ScStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Like [`sc_code_new`] with the monic modulus `x^k + p_{k-1} x^{k-1} + … + p_0`
/// given as `p[0..k]`.
///
/// # Safety
/// `p` must point to `k` readable values and `out` to writable storage for
/// one handle.
#[no_mangle]
pub unsafe extern "C" fn sc_code_new_with_poly(
    q: u32,
    r: usize,
    p: *const u32,
    k: usize,
    out: *mut *mut ScCode,
) -> ScStatus {
    guard(|| {
        if out.is_null() || (p.is_null() && k > 0) {
            return fail(ScStatus::NullPointer, "null argument");
        }
        let mut poly = if k == 0 { Vec::new() } else { std::slice::from_raw_parts(p, k).to_vec() };
        poly.push(1);
        match SpreadCode::with_modulus(q, r, &poly) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(ScCode { inner }));
                ScStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `code` must be null or a handle from `sc_code_new*` not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sc_code_free(code: *mut ScCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// # Safety
/// `code` must be a live handle and `info` writable.
#[no_mangle]
pub unsafe extern "C" fn sc_code_info(code: *const ScCode, info: *mut ScCodeInfo) -> ScStatus {
    guard(|| {
        let (Some(code), false) = (code.as_ref(), info.is_null()) else {
            return fail(ScStatus::NullPointer, "null argument");
        };
        let c = &code.inner;
        *info = ScCodeInfo {
            q: c.q(),
            k: c.k(),
            r: c.r(),
            n: c.n(),
            min_distance: c.min_distance(),
            cardinality: c.cardinality().and_then(|v| u64::try_from(v).ok()).unwrap_or(0),
        };
        ScStatus::Ok
    })
}

/// Writes the degree-`k` modulus coefficients `p_0 … p_{k-1}` into `p`.
///
/// # Safety
/// `code` must be a live handle and `p` must have room for `len` values.
#[no_mangle]
pub unsafe extern "C" fn sc_code_modulus(code: *const ScCode, p: *mut u32, len: usize) -> ScStatus {
    guard(|| {
        let Some(code) = code.as_ref() else {
            return fail(ScStatus::NullPointer, "code is null");
        };
        let k = code.inner.k();
        match out_slice(p, len, k, "modulus") {
            Ok(out) => {
                out.copy_from_slice(&code.inner.modulus()[..k]);
                ScStatus::Ok
            }
            Err(s) => s,
        }
    })
}

unsafe fn out_slice<'a>(ptr: *mut u32, len: usize, need: usize, what: &str) -> Result<&'a mut [u32], ScStatus> {
    if ptr.is_null() {
        return Err(fail(ScStatus::NullPointer, format!("{what} buffer is null")));
    }
    if len < need {
        return Err(fail(ScStatus::InvalidInput, format!("{what} buffer holds {len} values, need {need}")));
    }
    Ok(std::slice::from_raw_parts_mut(ptr, need))
}

unsafe fn read_subspace(code: &SpreadCode, rows: *const u32, nrows: usize) -> Result<Subspace, ScStatus> {
    let n = code.n();
    let data = if nrows == 0 {
        Vec::new()
    } else if rows.is_null() {
        return Err(fail(ScStatus::NullPointer, "rows is null"));
    } else {
        std::slice::from_raw_parts(rows, nrows * n).to_vec()
    };
    if let Some(&c) = data.iter().find(|&&c| c >= code.q()) {
        return Err(fail(ScStatus::InvalidInput, format!("entry {c} is not reduced mod {}", code.q())));
    }
    let m: Matrix<PrimeField> = Matrix::new(code.base(), nrows, n, data).map_err(from_error)?;
    Ok(Subspace::row_space(&m))
}

fn write_codeword(code: &SpreadCode, cw: &Codeword, basis: &mut [u32], point: Option<&mut [u32]>) {
    basis.copy_from_slice(cw.subspace.basis().entries());
    if let Some(point) = point {
        for (dst, e) in point.chunks_mut(code.k()).zip(&cw.point) {
            dst.copy_from_slice(e.coeffs());
        }
    }
}

/// Encodes the projective point given as `r·k` coefficients (`r` elements of
/// `F_{q^k}`, `k` coefficients each) into its codeword. The `k×n` RREF basis
/// is written row-major to `basis`; `basis_len` must be at least `k·n`.
///
/// # Safety
/// `code` must be a live handle, `point` must hold `r·k` values and `basis`
/// `basis_len` writable values.
#[no_mangle]
pub unsafe extern "C" fn sc_encode(
    code: *const ScCode,
    point: *const u32,
    basis: *mut u32,
    basis_len: usize,
) -> ScStatus {
    guard(|| {
        let (Some(code), false) = (code.as_ref(), point.is_null()) else {
            return fail(ScStatus::NullPointer, "null argument");
        };
        let c = &code.inner;
        let (k, r) = (c.k(), c.r());
        let out = match out_slice(basis, basis_len, k * c.n(), "basis") {
            Ok(o) => o,
            Err(s) => return s,
        };
        let coeffs = std::slice::from_raw_parts(point, r * k);
        let elems: Result<Vec<ExtElement>, Error> = coeffs.chunks(k).map(|ch| c.ext().element(ch)).collect();
        match elems.and_then(|v| c.encode(&v)) {
            Ok(cw) => {
                write_codeword(c, &cw, out, None);
                ScStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Decodes the received space spanned by the `nrows` rows of `rows`
/// (row-major, `n` columns each). On success the codeword basis (`k×n`) goes
/// to `basis` and, if `point` is non-null, its normalized point (`r·k`
/// coefficients) to `point`. Returns `SC_STATUS_DECODE_FAILURE` when no
/// codeword lies within distance `< k`; `reason` (optional) then receives 1
/// for no codeword in range, 2 for ambiguous candidates and 3 for an
/// unusable received space.
///
/// # Safety
/// `code` must be a live handle, `rows` must hold `nrows·n` values, `basis`
/// `basis_len` writable values and `point` (if non-null) `point_len`
/// writable values. `reason` may be null.
#[no_mangle]
pub unsafe extern "C" fn sc_decode(
    code: *const ScCode,
    rows: *const u32,
    nrows: usize,
    basis: *mut u32,
    basis_len: usize,
    point: *mut u32,
    point_len: usize,
    reason: *mut u32,
) -> ScStatus {
    guard(|| {
        let Some(code) = code.as_ref() else {
            return fail(ScStatus::NullPointer, "code is null");
        };
        let c = &code.inner;
        if !reason.is_null() {
            *reason = 0;
        }
        let out = match out_slice(basis, basis_len, c.k() * c.n(), "basis") {
            Ok(o) => o,
            Err(s) => return s,
        };
        let pt = if point.is_null() {
            None
        } else {
            match out_slice(point, point_len, c.r() * c.k(), "point") {
                Ok(o) => Some(o),
                Err(s) => return s,
            }
        };
        let w = match read_subspace(c, rows, nrows) {
            Ok(w) => w,
            Err(s) => return s,
        };
        match decode(c, &w) {
            DecodeOutcome::Decoded(cw) => {
                write_codeword(c, &cw, out, pt);
                ScStatus::Ok
            }
            DecodeOutcome::Failure(why) => {
                if !reason.is_null() {
                    *reason = why.code() as u32;
                }
                fail(ScStatus::DecodeFailure, format!("decoding failure: {why}"))
            }
        }
    })
}

/// Sets `*result` to whether the row space of `rows` is a codeword.
///
/// # Safety
/// `code` must be a live handle, `rows` must hold `nrows·n` values and
/// `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_is_codeword(
    code: *const ScCode,
    rows: *const u32,
    nrows: usize,
    result: *mut bool,
) -> ScStatus {
    guard(|| {
        let (Some(code), false) = (code.as_ref(), result.is_null()) else {
            return fail(ScStatus::NullPointer, "null argument");
        };
        match read_subspace(&code.inner, rows, nrows) {
            Ok(w) => {
                *result = code.inner.is_codeword(&w);
                ScStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Subspace distance `dim(U+V) − dim(U∩V)` between two row spaces in `F_q^n`.
///
/// # Safety
/// `code` must be a live handle, `a` and `b` must hold `a_rows·n` and
/// `b_rows·n` values, and `result` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sc_subspace_distance(
    code: *const ScCode,
    a: *const u32,
    a_rows: usize,
    b: *const u32,
    b_rows: usize,
    result: *mut usize,
) -> ScStatus {
    guard(|| {
        let (Some(code), false) = (code.as_ref(), result.is_null()) else {
            return fail(ScStatus::NullPointer, "null argument");
        };
        let u = match read_subspace(&code.inner, a, a_rows) {
            Ok(u) => u,
            Err(s) => return s,
        };
        let v = match read_subspace(&code.inner, b, b_rows) {
            Ok(v) => v,
            Err(s) => return s,
        };
        match u.distance(&v) {
            Ok(d) => {
                *result = d;
                ScStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}
