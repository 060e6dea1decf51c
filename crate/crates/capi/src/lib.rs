//! C ABI over the trihopf library.
//!
//! Conventions: opaque handles created and freed by this library, JSON
//! strings for structured payloads (exact rational encodings, matching
//! the CLI formats), and integer status codes mirroring the CLI exit
//! codes: 0 ok, 1 check failed, 2 invalid input, 3 unsupported, 4 null
//! or encoding errors. Returned strings are owned by the caller and must
//! be released with `trihopf_string_free`. The matching declarations are
//! kept in `include/trihopf.h`.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use trihopf::chevalley::chevalley_check;
use trihopf::error::HopfError;
use trihopf::groups::FiniteGroup;
use trihopf::hopf::check_hopf_axioms;
use trihopf::pointed::{
    enumerate_minimal_pointed, minimality_criterion, type1_to_type2, type2_to_type1,
};
use trihopf::serialize as ser;
use trihopf::supergroup::{validate_septuple, TriangularSeptuple};
use trihopf::triangular::{
    build_a_of_s, check_triangular, minimal_part, septuple_isomorphic, TriangularAlgebra,
};

pub const TRIHOPF_OK: c_int = 0;
pub const TRIHOPF_CHECK_FAILED: c_int = 1;
pub const TRIHOPF_INVALID_INPUT: c_int = 2;
pub const TRIHOPF_UNSUPPORTED: c_int = 3;
pub const TRIHOPF_NULL_OR_ENCODING: c_int = 4;

pub const TRIHOPF_SUITE_AXIOMS: u32 = 1;
pub const TRIHOPF_SUITE_TRIANGULAR: u32 = 2;
pub const TRIHOPF_SUITE_CHEVALLEY: u32 = 4;
pub const TRIHOPF_SUITE_MINIMAL: u32 = 8;

/// Opaque septuple handle.
pub struct TrihopfSeptuple {
    inner: TriangularSeptuple,
}

/// Opaque built-algebra handle (algebra, R-matrix, Drinfeld element and
/// the minimality flags of the originating septuple).
pub struct TrihopfAlgebra {
    inner: TriangularAlgebra,
    minimal: bool,
    pointed: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn code_for(e: &HopfError) -> c_int {
    match e {
        HopfError::TooLarge(_) | HopfError::Unsupported(_) | HopfError::ConductorTooLarge(_) => {
            TRIHOPF_UNSUPPORTED
        }
        _ => TRIHOPF_INVALID_INPUT,
    }
}

fn fail(e: &HopfError) -> c_int {
    set_error(&e.to_string());
    code_for(e)
}

/// # Safety
/// `s` must be a valid NUL-terminated string or null.
unsafe fn read_str<'a>(s: *const c_char) -> Option<&'a str> {
    if s.is_null() {
        return None;
    }
    unsafe { CStr::from_ptr(s) }.to_str().ok()
}

fn give_string(out: *mut *mut c_char, text: String) -> c_int {
    if out.is_null() {
        set_error("output pointer is null");
        return TRIHOPF_NULL_OR_ENCODING;
    }
    match CString::new(text) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            TRIHOPF_OK
        }
        Err(_) => {
            set_error("payload contained an interior NUL");
            TRIHOPF_NULL_OR_ENCODING
        }
    }
}

fn guarded<F: FnOnce() -> c_int>(f: F) -> c_int {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(code) => code,
        Err(_) => {
            set_error("internal panic");
            TRIHOPF_NULL_OR_ENCODING
        }
    }
}

/// Last error message for this thread, or null when none was recorded.
/// The caller owns the returned string.
#[no_mangle]
pub extern "C" fn trihopf_last_error_message() -> *mut c_char {
    LAST_ERROR.with(|e| match e.borrow().as_ref() {
        Some(c) => c.clone().into_raw(),
        None => std::ptr::null_mut(),
    })
}

/// Frees a string returned by this library.
///
/// # Safety
/// `s` must have been returned by this library and not freed before.
#[no_mangle]
pub unsafe extern "C" fn trihopf_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

/// Parses a septuple from JSON into an opaque handle.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trihopf_septuple_parse(
    json: *const c_char,
    out: *mut *mut TrihopfSeptuple,
) -> c_int {
    guarded(|| {
        let Some(text) = (unsafe { read_str(json) }) else {
            set_error("input string is null or not UTF-8");
            return TRIHOPF_NULL_OR_ENCODING;
        };
        if out.is_null() {
            set_error("output pointer is null");
            return TRIHOPF_NULL_OR_ENCODING;
        }
        let value: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => {
                set_error(&format!("JSON parse error: {e}"));
                return TRIHOPF_INVALID_INPUT;
            }
        };
        match ser::septuple_from_json(&value) {
            Ok(inner) => {
                unsafe { *out = Box::into_raw(Box::new(TrihopfSeptuple { inner })) };
                TRIHOPF_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `h` must come from `trihopf_septuple_parse` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn trihopf_septuple_free(h: *mut TrihopfSeptuple) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Serializes the septuple back to canonical JSON.
///
/// # Safety
/// `h` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trihopf_septuple_to_json(
    h: *const TrihopfSeptuple,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let Some(h) = (unsafe { h.as_ref() }) else {
            set_error("handle is null");
            return TRIHOPF_NULL_OR_ENCODING;
        };
        give_string(out, ser::to_string_pretty(&ser::septuple_to_json(&h.inner)))
    })
}

/// Validates the septuple; writes the condition report as JSON. Returns
/// 0 when every condition passes, 1 otherwise.
///
/// # Safety
/// `h` must be a valid handle; `out_report` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn trihopf_septuple_validate(
    h: *const TrihopfSeptuple,
    out_report: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let Some(h) = (unsafe { h.as_ref() }) else {
            set_error("handle is null");
            return TRIHOPF_NULL_OR_ENCODING;
        };
        let report = validate_septuple(&h.inner);
        if !out_report.is_null() {
            let code = give_string(
                out_report,
                ser::to_string_pretty(&ser::axiom_report_to_json(&report)),
            );
            if code != TRIHOPF_OK {
                return code;
            }
        }
        if report.all_pass() {
            TRIHOPF_OK
        } else {
            TRIHOPF_CHECK_FAILED
        }
    })
}

/// Runs the construction pipeline on a validated septuple.
///
/// # Safety
/// `h` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trihopf_build(
    h: *const TrihopfSeptuple,
    out: *mut *mut TrihopfAlgebra,
) -> c_int {
    guarded(|| {
        let Some(h) = (unsafe { h.as_ref() }) else {
            set_error("handle is null");
            return TRIHOPF_NULL_OR_ENCODING;
        };
        if out.is_null() {
            set_error("output pointer is null");
            return TRIHOPF_NULL_OR_ENCODING;
        }
        match build_a_of_s(&h.inner) {
            Ok(inner) => {
                let flags = minimality_criterion(&h.inner);
                let handle = TrihopfAlgebra {
                    inner,
                    minimal: flags.minimal,
                    pointed: flags.pointed,
                };
                unsafe { *out = Box::into_raw(Box::new(handle)) };
                TRIHOPF_OK
            }
            Err(e) => fail(&e),
        }
    })
}

/// # Safety
/// `h` must come from `trihopf_build` and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn trihopf_algebra_free(h: *mut TrihopfAlgebra) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Dimension of the built algebra, or 0 on a null handle.
///
/// # Safety
/// `h` must be a valid handle or null.
#[no_mangle]
pub unsafe extern "C" fn trihopf_algebra_dim(h: *const TrihopfAlgebra) -> usize {
    unsafe { h.as_ref() }.map_or(0, |h| h.inner.algebra.dim())
}

/// The full build output (algebra dump, R-matrix, Drinfeld element,
/// minimality flags) as JSON.
///
/// # Safety
/// `h` must be a valid handle; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trihopf_algebra_to_json(
    h: *const TrihopfAlgebra,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let Some(h) = (unsafe { h.as_ref() }) else {
            set_error("handle is null");
            return TRIHOPF_NULL_OR_ENCODING;
        };
        give_string(
            out,
            ser::to_string_pretty(&ser::build_output_to_json(&h.inner, h.minimal, h.pointed)),
        )
    })
}

/// Runs the selected verification suites (bitmask of TRIHOPF_SUITE_*).
/// Returns 0 when everything passes, 1 on a failed check.
///
/// # Safety
/// `h` must be a valid handle; `out_report` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn trihopf_algebra_check(
    h: *const TrihopfAlgebra,
    suites: u32,
    out_report: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let Some(h) = (unsafe { h.as_ref() }) else {
            set_error("handle is null");
            return TRIHOPF_NULL_OR_ENCODING;
        };
        let mut report = serde_json::Map::new();
        let mut ok = true;
        if suites & TRIHOPF_SUITE_AXIOMS != 0 {
            let r = check_hopf_axioms(&h.inner.algebra);
            ok &= r.all_pass();
            report.insert("axioms".into(), ser::axiom_report_to_json(&r));
        }
        if suites & TRIHOPF_SUITE_TRIANGULAR != 0 {
            let r = check_triangular(&h.inner.algebra, &h.inner.r_matrix);
            ok &= r.all_pass();
            report.insert("triangular".into(), ser::axiom_report_to_json(&r));
        }
        if suites & TRIHOPF_SUITE_CHEVALLEY != 0 {
            match chevalley_check(&h.inner.algebra) {
                Ok(c) => {
                    ok &= c.chevalley;
                    report.insert("chevalley".into(), ser::radical_report_to_json(&c));
                }
                Err(e) => return fail(&e),
            }
        }
        if suites & TRIHOPF_SUITE_MINIMAL != 0 {
            match minimal_part(&h.inner.algebra, &h.inner.r_matrix) {
                Ok(z) => {
                    let minimal = z.dim() == h.inner.algebra.dim();
                    report.insert(
                        "minimal".into(),
                        serde_json::json!({ "minimal": minimal, "minimal_part_dim": z.dim() }),
                    );
                }
                Err(e) => return fail(&e),
            }
        }
        if !out_report.is_null() {
            let code = give_string(
                out_report,
                ser::to_string_pretty(&serde_json::Value::Object(report)),
            );
            if code != TRIHOPF_OK {
                return code;
            }
        }
        if ok {
            TRIHOPF_OK
        } else {
            TRIHOPF_CHECK_FAILED
        }
    })
}

/// Septuple isomorphism with a witness payload. Returns 0 when
/// isomorphic, 1 when not, 3 when the comparison is unsupported.
///
/// # Safety
/// Both handles must be valid; `out_witness` a valid pointer or null.
#[no_mangle]
pub unsafe extern "C" fn trihopf_septuple_isomorphic(
    h1: *const TrihopfSeptuple,
    h2: *const TrihopfSeptuple,
    out_witness: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let (Some(a), Some(b)) = (unsafe { h1.as_ref() }, unsafe { h2.as_ref() }) else {
            set_error("handle is null");
            return TRIHOPF_NULL_OR_ENCODING;
        };
        match septuple_isomorphic(&a.inner, &b.inner) {
            Ok(Some(w)) => {
                if !out_witness.is_null() {
                    let gauge = match &w.gauge {
                        None => serde_json::Value::Null,
                        Some(x) => {
                            serde_json::Value::Array(x.iter().map(ser::scalar_to_json).collect())
                        }
                    };
                    let payload = serde_json::json!({
                        "isomorphic": true,
                        "group_map": w.group_map,
                        "intertwiner": ser::matrix_to_json(&w.intertwiner),
                        "gauge": gauge,
                    });
                    let code = give_string(out_witness, ser::to_string_pretty(&payload));
                    if code != TRIHOPF_OK {
                        return code;
                    }
                }
                TRIHOPF_OK
            }
            Ok(None) => {
                if !out_witness.is_null() {
                    let code = give_string(
                        out_witness,
                        ser::to_string_pretty(&serde_json::json!({ "isomorphic": false })),
                    );
                    if code != TRIHOPF_OK {
                        return code;
                    }
                }
                TRIHOPF_CHECK_FAILED
            }
            Err(e) => fail(&e),
        }
    })
}

/// Type 1 -> Type 2 conversion on JSON payloads.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trihopf_convert_t1_to_t2(
    json: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let Some(text) = (unsafe { read_str(json) }) else {
            set_error("input string is null or not UTF-8");
            return TRIHOPF_NULL_OR_ENCODING;
        };
        let value: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => {
                set_error(&format!("JSON parse error: {e}"));
                return TRIHOPF_INVALID_INPUT;
            }
        };
        let result = ser::type1_from_json(&value).and_then(|t1| type1_to_type2(&t1));
        match result {
            Ok(t2) => give_string(out, ser::to_string_pretty(&ser::type2_to_json(&t2))),
            Err(e) => fail(&e),
        }
    })
}

/// Type 2 -> Type 1 conversion on JSON payloads.
///
/// # Safety
/// `json` must be a valid NUL-terminated string; `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trihopf_convert_t2_to_t1(
    json: *const c_char,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let Some(text) = (unsafe { read_str(json) }) else {
            set_error("input string is null or not UTF-8");
            return TRIHOPF_NULL_OR_ENCODING;
        };
        let value: serde_json::Value = match serde_json::from_str(text) {
            Ok(v) => v,
            Err(e) => {
                set_error(&format!("JSON parse error: {e}"));
                return TRIHOPF_INVALID_INPUT;
            }
        };
        let result = ser::type2_from_json(&value).and_then(|t2| type2_to_type1(&t2));
        match result {
            Ok(t1) => give_string(out, ser::to_string_pretty(&ser::type1_to_json(&t1))),
            Err(e) => fail(&e),
        }
    })
}

/// Enumerates minimal pointed data for the abelian group with the given
/// invariant factors; writes a JSON array.
///
/// # Safety
/// `invariants` must point to `len` integers (or be null with len 0);
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn trihopf_enumerate(
    invariants: *const u64,
    len: usize,
    max_n: u64,
    out: *mut *mut c_char,
) -> c_int {
    guarded(|| {
        let inv: Vec<u64> = if invariants.is_null() {
            if len != 0 {
                set_error("invariants pointer is null");
                return TRIHOPF_NULL_OR_ENCODING;
            }
            Vec::new()
        } else {
            unsafe { std::slice::from_raw_parts(invariants, len) }.to_vec()
        };
        if inv.iter().any(|&d| d < 2) {
            set_error("invariant factors must be >= 2");
            return TRIHOPF_INVALID_INPUT;
        }
        let g = FiniteGroup::build_abelian(&inv);
        match enumerate_minimal_pointed(&g, max_n) {
            Ok(data) => {
                let arr: Vec<serde_json::Value> = data.iter().map(ser::type2_to_json).collect();
                give_string(out, ser::to_string_pretty(&serde_json::Value::Array(arr)))
            }
            Err(e) => fail(&e),
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn take_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
        unsafe { trihopf_string_free(p) };
        s
    }

    #[test]
    fn parse_build_check_through_the_abi() {
        let sept = trihopf::corpus::sweedler();
        let json = ser::to_string_pretty(&ser::septuple_to_json(&sept));
        let cjson = cstr(&json);
        let mut handle: *mut TrihopfSeptuple = std::ptr::null_mut();
        assert_eq!(
            unsafe { trihopf_septuple_parse(cjson.as_ptr(), &mut handle) },
            TRIHOPF_OK
        );
        let mut report: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            unsafe { trihopf_septuple_validate(handle, &mut report) },
            TRIHOPF_OK
        );
        let report = take_string(report);
        assert!(report.contains("nondegenerate"));

        let mut built: *mut TrihopfAlgebra = std::ptr::null_mut();
        assert_eq!(unsafe { trihopf_build(handle, &mut built) }, TRIHOPF_OK);
        assert_eq!(unsafe { trihopf_algebra_dim(built) }, 4);

        let mut check: *mut c_char = std::ptr::null_mut();
        let suites = TRIHOPF_SUITE_AXIOMS
            | TRIHOPF_SUITE_TRIANGULAR
            | TRIHOPF_SUITE_CHEVALLEY
            | TRIHOPF_SUITE_MINIMAL;
        assert_eq!(
            unsafe { trihopf_algebra_check(built, suites, &mut check) },
            TRIHOPF_OK
        );
        let check = take_string(check);
        assert!(check.contains("\"radical_dim\": 2"));

        let mut dump: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            unsafe { trihopf_algebra_to_json(built, &mut dump) },
            TRIHOPF_OK
        );
        let dump = take_string(dump);
        assert!(dump.contains("\"minimal\": true"));

        unsafe {
            trihopf_algebra_free(built);
            trihopf_septuple_free(handle);
        }
    }

    #[test]
    fn error_paths_set_messages() {
        let cjson = cstr("{ \"group\": {} }");
        let mut handle: *mut TrihopfSeptuple = std::ptr::null_mut();
        let code = unsafe { trihopf_septuple_parse(cjson.as_ptr(), &mut handle) };
        assert_eq!(code, TRIHOPF_INVALID_INPUT);
        let msg = take_string(trihopf_last_error_message());
        assert!(msg.contains("group"), "{msg}");
    }

    #[test]
    fn enumerate_and_convert_through_the_abi() {
        let inv = [2u64];
        let mut out: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            unsafe { trihopf_enumerate(inv.as_ptr(), 1, 1, &mut out) },
            TRIHOPF_OK
        );
        let data = take_string(out);
        let parsed: serde_json::Value = serde_json::from_str(&data).unwrap();
        let arr = parsed.as_array().unwrap();
        assert_eq!(arr.len(), 2);
        // Convert the datum with multiplicity through both directions.
        let with_n = arr
            .iter()
            .find(|t| !t["n"].as_object().unwrap().is_empty())
            .unwrap();
        let cjson = cstr(&serde_json::to_string(with_n).unwrap());
        let mut t1: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            unsafe { trihopf_convert_t2_to_t1(cjson.as_ptr(), &mut t1) },
            TRIHOPF_OK
        );
        let t1 = take_string(t1);
        let cback = cstr(&t1);
        let mut t2: *mut c_char = std::ptr::null_mut();
        assert_eq!(
            unsafe { trihopf_convert_t1_to_t2(cback.as_ptr(), &mut t2) },
            TRIHOPF_OK
        );
        take_string(t2);
    }

    #[test]
    fn isomorphism_codes() {
        let a_json = ser::to_string_pretty(&ser::septuple_to_json(&trihopf::corpus::sweedler()));
        let b_json =
            ser::to_string_pretty(&ser::septuple_to_json(&trihopf::corpus::sweedler_with_b(4)));
        let c_json = ser::to_string_pretty(&ser::septuple_to_json(&trihopf::corpus::z2_with_u()));
        let mut ha: *mut TrihopfSeptuple = std::ptr::null_mut();
        let mut hb: *mut TrihopfSeptuple = std::ptr::null_mut();
        let mut hc: *mut TrihopfSeptuple = std::ptr::null_mut();
        unsafe {
            assert_eq!(trihopf_septuple_parse(cstr(&a_json).as_ptr(), &mut ha), 0);
            assert_eq!(trihopf_septuple_parse(cstr(&b_json).as_ptr(), &mut hb), 0);
            assert_eq!(trihopf_septuple_parse(cstr(&c_json).as_ptr(), &mut hc), 0);
            let mut w: *mut c_char = std::ptr::null_mut();
            assert_eq!(trihopf_septuple_isomorphic(ha, hb, &mut w), TRIHOPF_OK);
            assert!(take_string(w).contains("\"isomorphic\": true"));
            let mut w2: *mut c_char = std::ptr::null_mut();
            assert_eq!(
                trihopf_septuple_isomorphic(ha, hc, &mut w2),
                TRIHOPF_CHECK_FAILED
            );
            take_string(w2);
            trihopf_septuple_free(ha);
            trihopf_septuple_free(hb);
            trihopf_septuple_free(hc);
        }
    }
}
