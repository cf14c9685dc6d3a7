use std::ffi::CStr;
use std::ptr;

use spreadcode::channel::{corrupt_with, trial_rng};
use spreadcode::spread::SpreadCode;
use spreadcode_ffi::*;

struct Handle(*mut ScCode);

impl Drop for Handle {
    fn drop(&mut self) {
        unsafe { sc_code_free(self.0) }
    }
}

fn new_code(q: u32, k: usize, r: usize) -> Handle {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { sc_code_new(q, k, r, &mut h) }, ScStatus::Ok);
    assert!(!h.is_null());
    Handle(h)
}

fn last_error() -> String {
    let p = sc_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string()
}

#[test]
fn info_matches_parameters() {
    let h = new_code(2, 3, 2);
    let mut info = ScCodeInfo::default();
    assert_eq!(unsafe { sc_code_info(h.0, &mut info) }, ScStatus::Ok);
    assert_eq!(info, ScCodeInfo { q: 2, k: 3, r: 2, n: 6, min_distance: 6, cardinality: 9 });
    let mut p = [0u32; 3];
    assert_eq!(unsafe { sc_code_modulus(h.0, p.as_mut_ptr(), 3) }, ScStatus::Ok);
    assert_eq!(p, [1, 1, 0]);
}

#[test]
fn invalid_parameters() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { sc_code_new(4, 2, 2, &mut h) }, ScStatus::InvalidParams);
    assert!(h.is_null());
    assert!(last_error().contains("not prime"));
    assert_eq!(unsafe { sc_code_new(2, 2, 1, &mut h) }, ScStatus::InvalidParams);
    // x^2 + 1 = (x + 1)^2 over F_2
    let p = [1u32, 0];
    assert_eq!(unsafe { sc_code_new_with_poly(2, 2, p.as_ptr(), 2, &mut h) }, ScStatus::InvalidParams);
    assert_eq!(unsafe { sc_code_new(2, 2, 2, ptr::null_mut()) }, ScStatus::NullPointer);
    let p = [1u32, 0];
    assert_eq!(unsafe { sc_code_new_with_poly(3, 2, p.as_ptr(), 2, &mut h) }, ScStatus::Ok);
    assert!(sc_last_error_message().is_null());
    unsafe { sc_code_free(h) };
    unsafe { sc_code_free(ptr::null_mut()) };
}

#[test]
fn encode_then_decode_every_codeword() {
    let code = SpreadCode::new(2, 3, 2).unwrap();
    let h = new_code(2, 3, 2);
    for cw in code.enumerate() {
        let point: Vec<u32> = cw.point.iter().flat_map(|e| e.coeffs().to_vec()).collect();
        let mut basis = vec![0u32; 18];
        assert_eq!(unsafe { sc_encode(h.0, point.as_ptr(), basis.as_mut_ptr(), basis.len()) }, ScStatus::Ok);
        assert_eq!(basis, cw.subspace.basis().entries());
        let mut is = false;
        assert_eq!(unsafe { sc_is_codeword(h.0, basis.as_ptr(), 3, &mut is) }, ScStatus::Ok);
        assert!(is);
        let mut back = vec![0u32; 18];
        let mut pt = vec![0u32; 6];
        let st = unsafe {
            sc_decode(h.0, basis.as_ptr(), 3, back.as_mut_ptr(), back.len(), pt.as_mut_ptr(), pt.len(), ptr::null_mut())
        };
        assert_eq!(st, ScStatus::Ok);
        assert_eq!(back, basis);
        assert_eq!(pt, point);
    }
}

#[test]
fn decodes_corrupted_spaces() {
    let code = SpreadCode::new(3, 3, 3).unwrap();
    let h = new_code(3, 3, 3);
    let mut rng = trial_rng(1, 0, 0);
    for t in 0..50 {
        let c = code.random_codeword(&mut rng);
        let erasures = t % 2;
        let w = corrupt_with(&code, &c, erasures, 1 - erasures, &mut rng).unwrap();
        let rows = w.basis().entries();
        let mut basis = vec![0u32; 27];
        let mut dist = 0usize;
        assert_eq!(
            unsafe { sc_subspace_distance(h.0, rows.as_ptr(), w.dim(), c.subspace.basis().entries().as_ptr(), 3, &mut dist) },
            ScStatus::Ok
        );
        assert_eq!(dist, 1);
        let st = unsafe {
            sc_decode(h.0, rows.as_ptr(), w.dim(), basis.as_mut_ptr(), basis.len(), ptr::null_mut(), 0, ptr::null_mut())
        };
        assert_eq!(st, ScStatus::Ok);
        assert_eq!(basis, c.subspace.basis().entries());
    }
}

#[test]
fn decoding_failure_reports_reason() {
    let h = new_code(2, 3, 3);
    // three rank-1 blocks
    let rows = [
        1, 0, 0, 0, 0, 0, 0, 0, 0, //
        0, 0, 0, 1, 0, 0, 0, 0, 0, //
        0, 0, 0, 0, 0, 0, 1, 0, 0,
    ];
    let mut basis = [0u32; 27];
    let mut reason = 0u32;
    let st = unsafe { sc_decode(h.0, rows.as_ptr(), 3, basis.as_mut_ptr(), 27, ptr::null_mut(), 0, &mut reason) };
    assert_eq!(st, ScStatus::DecodeFailure);
    assert!(reason != 0);
    assert!(last_error().contains("decoding failure"));
    let st = unsafe { sc_decode(h.0, ptr::null(), 0, basis.as_mut_ptr(), 27, ptr::null_mut(), 0, &mut reason) };
    assert_eq!(st, ScStatus::DecodeFailure);
    assert_eq!(reason, 3);
}

#[test]
fn malformed_inputs() {
    let h = new_code(2, 2, 2);
    let mut basis = [0u32; 8];
    let point = [1u32, 0, 2, 0];
    assert_eq!(unsafe { sc_encode(h.0, point.as_ptr(), basis.as_mut_ptr(), 8) }, ScStatus::InvalidInput);
    assert!(last_error().contains("not reduced"));
    let zero = [0u32; 4];
    assert_eq!(unsafe { sc_encode(h.0, zero.as_ptr(), basis.as_mut_ptr(), 8) }, ScStatus::InvalidInput);
    let point = [1u32, 0, 0, 0];
    assert_eq!(unsafe { sc_encode(h.0, point.as_ptr(), basis.as_mut_ptr(), 7) }, ScStatus::InvalidInput);
    assert_eq!(unsafe { sc_encode(ptr::null(), point.as_ptr(), basis.as_mut_ptr(), 8) }, ScStatus::NullPointer);
    let mut is = true;
    let rows = [0u32, 0, 0, 3];
    assert_eq!(unsafe { sc_is_codeword(h.0, rows.as_ptr(), 1, &mut is) }, ScStatus::InvalidInput);
}
