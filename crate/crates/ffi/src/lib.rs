//! C ABI surface over the coxb library: opaque handles, status codes, and
//! caller-freed strings, so other languages can bind the exact-arithmetic
//! computations.
//!
//! Conventions: every function returns a [`CoxbStatus`]; results come back
//! through out-pointers. Strings are UTF-8, NUL-terminated, allocated by
//! this library and released with [`coxb_string_free`]. Handles are released
//! with their matching `_free` function. Passing a pointer that did not
//! originate here is undefined behavior; passing NULL is reported as
//! [`CoxbStatus::NullArgument`]. Panics never unwind across the boundary.

use coxb::braid::BraidWord;
use coxb::links::InvariantContext;
use coxb::potts::{brute_force_z, crosscheck, trace_z, BoundaryLattice};
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

/// Status code of every C API call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxbStatus {
    Ok = 0,
    /// malformed input or an out-of-range request
    Usage = 1,
    /// the request exceeds a practical computation bound
    Capability = 2,
    /// a verification ran and failed
    VerifyFailed = 3,
    /// a NULL pointer argument
    NullArgument = 4,
    /// an internal error; the operation did not complete
    Internal = 5,
}

/// An opaque braid word handle.
pub struct CoxbBraid(BraidWord);

/// An opaque handle holding the solved trace family and skein branch, so
/// repeated invariant evaluations amortize the setup cost.
pub struct CoxbInvariantContext(InvariantContext);

/// Invariant route selector.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoxbRoute {
    Kauffman = 0,
    Jones = 1,
}

fn guard<F: FnOnce() -> CoxbStatus>(f: F) -> CoxbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => CoxbStatus::Internal,
    }
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, CoxbStatus> {
    if p.is_null() {
        return Err(CoxbStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| CoxbStatus::Usage)
}

fn give_string(s: String, out: *mut *mut c_char) -> CoxbStatus {
    match CString::new(s) {
        Ok(c) => {
            unsafe { *out = c.into_raw() };
            CoxbStatus::Ok
        }
        Err(_) => CoxbStatus::Internal,
    }
}

/// Library version string; static storage, do not free.
#[no_mangle]
pub extern "C" fn coxb_version() -> *const c_char {
    concat!("coxb ", env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be a pointer previously returned through an out-parameter of
/// this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn coxb_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses a braid word in the text format (`y`, `y'`, signed crossing
/// indices) on `strands` strands.
///
/// # Safety
/// `text` must be a valid NUL-terminated string; `out` must be valid for a
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn coxb_braid_parse(
    text: *const c_char,
    strands: usize,
    out: *mut *mut CoxbBraid,
) -> CoxbStatus {
    if out.is_null() {
        return CoxbStatus::NullArgument;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    if strands == 0 {
        return CoxbStatus::Usage;
    }
    guard(|| match BraidWord::parse(text, strands) {
        Ok(w) => {
            *out = Box::into_raw(Box::new(CoxbBraid(w)));
            CoxbStatus::Ok
        }
        Err(_) => CoxbStatus::Usage,
    })
}

/// Releases a braid handle.
///
/// # Safety
/// `b` must come from [`coxb_braid_parse`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn coxb_braid_free(b: *mut CoxbBraid) {
    if !b.is_null() {
        drop(Box::from_raw(b));
    }
}

/// Writes the exponent sum (crossing letters count, cylinder letters do
/// not).
///
/// # Safety
/// `b` must be a live braid handle; `out` valid for a write.
#[no_mangle]
pub unsafe extern "C" fn coxb_braid_exponent_sum(b: *const CoxbBraid, out: *mut i64) -> CoxbStatus {
    if b.is_null() || out.is_null() {
        return CoxbStatus::NullArgument;
    }
    *out = (*b).0.exponent_sum();
    CoxbStatus::Ok
}

/// Renders the signed-permutation image as a comma-separated list.
///
/// # Safety
/// `b` must be a live braid handle; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn coxb_braid_signed_permutation(
    b: *const CoxbBraid,
    out: *mut *mut c_char,
) -> CoxbStatus {
    if b.is_null() || out.is_null() {
        return CoxbStatus::NullArgument;
    }
    guard(|| {
        let p = (*b).0.signed_permutation();
        let text = p
            .images
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",");
        give_string(text, out)
    })
}

/// Builds an invariant context with tower depth `max_strands` (1 to 3).
/// Depth 3 is expensive (around a minute) but keeps values comparable
/// across strand counts.
///
/// # Safety
/// `out` must be valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn coxb_context_new(
    max_strands: usize,
    out: *mut *mut CoxbInvariantContext,
) -> CoxbStatus {
    if out.is_null() {
        return CoxbStatus::NullArgument;
    }
    guard(|| match InvariantContext::new(max_strands) {
        Ok(ctx) => {
            *out = Box::into_raw(Box::new(CoxbInvariantContext(ctx)));
            CoxbStatus::Ok
        }
        Err(_) => CoxbStatus::Capability,
    })
}

/// Releases an invariant context.
///
/// # Safety
/// `ctx` must come from [`coxb_context_new`] and not be freed twice.
#[no_mangle]
pub unsafe extern "C" fn coxb_context_free(ctx: *mut CoxbInvariantContext) {
    if !ctx.is_null() {
        drop(Box::from_raw(ctx));
    }
}

/// Evaluates a link invariant of the braid closure and renders it
/// canonically.
///
/// # Safety
/// `ctx` and `b` must be live handles; `out` valid for a pointer write.
#[no_mangle]
pub unsafe extern "C" fn coxb_invariant(
    ctx: *const CoxbInvariantContext,
    b: *const CoxbBraid,
    route: CoxbRoute,
    out: *mut *mut c_char,
) -> CoxbStatus {
    if ctx.is_null() || b.is_null() || out.is_null() {
        return CoxbStatus::NullArgument;
    }
    guard(|| {
        let r = match route {
            CoxbRoute::Kauffman => (*ctx).0.kauffman(&(*b).0),
            CoxbRoute::Jones => (*ctx).0.jones(&(*b).0),
        };
        match r {
            Ok(v) => give_string(v.render(), out),
            Err(coxb::links::LinkError::Capability(_)) => CoxbStatus::Capability,
            Err(_) => CoxbStatus::Usage,
        }
    })
}

/// Writes the closed basis dimension of an algebra instance. `algebra` is
/// one of `heckeB`, `bmwA`, `bmwB`, `tlB`.
///
/// # Safety
/// `algebra` must be a valid NUL-terminated string; `out` valid for a
/// write.
#[no_mangle]
pub unsafe extern "C" fn coxb_algebra_dimension(
    algebra: *const c_char,
    n: usize,
    out: *mut usize,
) -> CoxbStatus {
    if out.is_null() {
        return CoxbStatus::NullArgument;
    }
    let name = match read_str(algebra) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guard(|| {
        use coxb::algebra::*;
        let p = match (name, n) {
            ("heckeB", 1..=4) => present_heckeB(n),
            ("bmwA", 1..=4) => present_bmwA(n),
            ("bmwB", 1..=3) => present_bmwB(n),
            ("tlB", 1..=6) => present_tlb(n),
            _ => return CoxbStatus::Usage,
        };
        match compute_basis(p) {
            Ok(t) => {
                *out = t.dim();
                CoxbStatus::Ok
            }
            Err(_) => CoxbStatus::Internal,
        }
    })
}

/// Writes whether the squared path counts at level `n` reproduce
/// `2^n (2n-1)!!` (levels up to 8).
///
/// # Safety
/// `out` must be valid for a write.
#[no_mangle]
pub unsafe extern "C" fn coxb_level_dimension_check(n: u32, out: *mut bool) -> CoxbStatus {
    if out.is_null() {
        return CoxbStatus::NullArgument;
    }
    if n > 8 {
        return CoxbStatus::Capability;
    }
    guard(|| {
        *out = coxb::bratteli::dimension_check(n);
        CoxbStatus::Ok
    })
}

/// Runs an exact spectral verification: `target` is `ybe` or `re`.
/// Returns `Ok` on PASS, `VerifyFailed` on FAIL.
///
/// # Safety
/// `target` must be a valid NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn coxb_verify(target: *const c_char) -> CoxbStatus {
    let name = match read_str(target) {
        Ok(t) => t,
        Err(s) => return s,
    };
    guard(|| {
        use coxb::baxter::*;
        let outcome = match name {
            "ybe" => check_ybe(&ybe_algebra()),
            "re" => {
                let alg = re_algebra();
                match (check_re(&alg), check_re_symbolic_f1(&alg)) {
                    (Ok(Ok(())), Ok(Ok(()))) => Ok(Ok(())),
                    (Ok(Err(m)), _) | (_, Ok(Err(m))) => Ok(Err(m)),
                    (Err(e), _) | (_, Err(e)) => Err(e),
                }
            }
            _ => return CoxbStatus::Usage,
        };
        match outcome {
            Ok(Ok(())) => CoxbStatus::Ok,
            Ok(Err(_)) => CoxbStatus::VerifyFailed,
            Err(_) => CoxbStatus::Internal,
        }
    })
}

/// Evaluates the wall-coupled Potts partition function from the
/// line-oriented lattice format. With `check` set the transfer and
/// enumeration evaluations are compared and `VerifyFailed` reports a
/// mismatch; otherwise the best available evaluator is used.
///
/// # Safety
/// `lattice` must be a valid NUL-terminated string; `out` valid for a
/// pointer write.
#[no_mangle]
pub unsafe extern "C" fn coxb_potts_partition(
    lattice: *const c_char,
    states: u32,
    check: bool,
    out: *mut *mut c_char,
) -> CoxbStatus {
    if out.is_null() {
        return CoxbStatus::NullArgument;
    }
    let text = match read_str(lattice) {
        Ok(t) => t,
        Err(s) => return s,
    };
    if states == 0 {
        return CoxbStatus::Usage;
    }
    guard(|| {
        let l = match BoundaryLattice::parse(text) {
            Ok(l) => l,
            Err(_) => return CoxbStatus::Usage,
        };
        if check {
            match crosscheck(&l, states) {
                Ok(rep) if rep.pass => give_string(rep.brute.render(), out),
                Ok(_) => CoxbStatus::VerifyFailed,
                Err(_) => CoxbStatus::Capability,
            }
        } else {
            let z = trace_z(&l, states).or_else(|_| brute_force_z(&l, states));
            match z {
                Ok(z) => give_string(z.render(), out),
                Err(_) => CoxbStatus::Capability,
            }
        }
    })
}
