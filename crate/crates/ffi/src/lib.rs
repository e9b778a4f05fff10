//! C interface to `vknot`.
//!
//! Objects are opaque heap handles created by `*_parse` and released by the
//! matching `*_free`. Every fallible call returns a [`VkStatus`]; on failure
//! [`vk_last_error`] describes what went wrong. Strings handed out through
//! `char **` parameters are owned by the caller and released with
//! [`vk_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use vknot::algebra::format_abelian;
use vknot::diagrams::VirtualDiagram;
use vknot::groups::Presentation;
use vknot::invariants::{
    alexander_polynomial, almost_classical_obstruction, branched_cover_homology, diagram_alexander,
    virtual_polys, wada,
};
use vknot::representations::{check_rep, product_rep, Abelianization, MatrixRep};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VkStatus {
    VkOk = 0,
    /// A required pointer argument was null.
    VkNullArgument = 1,
    /// A string argument was not valid UTF-8.
    VkInvalidUtf8 = 2,
    /// Input text could not be parsed.
    VkParseError = 3,
    /// Input parsed but the computation's hypotheses do not hold.
    VkPreconditionFailed = 4,
    /// The representation does not kill some relator.
    VkNotARepresentation = 5,
    /// Internal failure; the library caught a panic.
    VkInternalError = 6,
}

/// A finitely presented group.
pub struct VkPresentation(Presentation);

/// A virtual knot or link diagram given by a Gauss code.
pub struct VkDiagram(VirtualDiagram);

/// A matrix representation of a free group.
pub struct VkRep(MatrixRep);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let s = CString::new(msg.into().replace('\0', " ")).unwrap();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(s));
}

struct Fail(VkStatus, String);

type FfiResult<T> = Result<T, Fail>;

fn fail<T>(status: VkStatus, msg: impl ToString) -> FfiResult<T> {
    Err(Fail(status, msg.to_string()))
}

/// Runs `f`, translating errors and panics into a status and last-error text.
fn guard(f: impl FnOnce() -> FfiResult<()>) -> VkStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            VkStatus::VkOk
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal error");
            VkStatus::VkInternalError
        }
    }
}

unsafe fn str_arg<'a>(s: *const c_char, what: &str) -> FfiResult<&'a str> {
    if s.is_null() {
        return fail(VkStatus::VkNullArgument, format!("{what} is null"));
    }
    CStr::from_ptr(s).to_str().or_else(|_| fail(VkStatus::VkInvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn obj_arg<'a, T>(p: *const T, what: &str) -> FfiResult<&'a T> {
    p.as_ref().map_or_else(|| fail(VkStatus::VkNullArgument, format!("{what} is null")), Ok)
}

fn out_arg<T>(p: *mut T, what: &str) -> FfiResult<()> {
    if p.is_null() {
        fail(VkStatus::VkNullArgument, format!("{what} is null"))
    } else {
        Ok(())
    }
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s).map_or(ptr::null_mut(), CString::into_raw)
}

fn precondition<E: ToString>(e: E) -> Fail {
    Fail(VkStatus::VkPreconditionFailed, e.to_string())
}

/// Message for the most recent failed call on this thread, or null after a
/// successful call. Valid until the next call into the library.
#[no_mangle]
pub extern "C" fn vk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Releases a string returned by this library. Null is ignored.
///
/// # Safety
/// `s` must come from this library and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn vk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

unsafe fn parse_into<T, H, E: ToString>(
    text: *const c_char,
    out: *mut *mut H,
    what: &str,
    parse: impl FnOnce(&str) -> Result<T, E>,
    wrap: impl FnOnce(T) -> H,
) -> VkStatus {
    guard(|| {
        out_arg(out, "out")?;
        let text = str_arg(text, what)?;
        let v = parse(text).map_err(|e| Fail(VkStatus::VkParseError, e.to_string()))?;
        *out = Box::into_raw(Box::new(wrap(v)));
        Ok(())
    })
}

unsafe fn free_handle<H>(h: *mut H) {
    if !h.is_null() {
        drop(Box::from_raw(h));
    }
}

/// Parses a presentation such as `gens: a, b; rels: a b a = b a b` into
/// a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vk_presentation_parse(text: *const c_char, out: *mut *mut VkPresentation) -> VkStatus {
    parse_into(text, out, "presentation", Presentation::parse, VkPresentation)
}

/// Releases a handle from [`vk_presentation_parse`]. Null is ignored.
///
/// # Safety
/// `h` must not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn vk_presentation_free(h: *mut VkPresentation) {
    free_handle(h)
}

/// Parses a signed Gauss code such as `O1+ U2+ O3+ U1+ O2+ U3+` into a
/// new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_parse(text: *const c_char, out: *mut *mut VkDiagram) -> VkStatus {
    parse_into(text, out, "Gauss code", VirtualDiagram::parse, VkDiagram)
}

/// Releases a handle from [`vk_diagram_parse`]. Null is ignored.
///
/// # Safety
/// `h` must not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_free(h: *mut VkDiagram) {
    free_handle(h)
}

/// Parses a representation file (`field`, `vars`, `dim`, then one matrix
/// per generator) into a new handle stored in `*out`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vk_rep_parse(text: *const c_char, out: *mut *mut VkRep) -> VkStatus {
    parse_into(text, out, "representation", MatrixRep::parse, VkRep)
}

/// Releases a handle from [`vk_rep_parse`]. Null is ignored.
///
/// # Safety
/// `h` must not have been freed already.
#[no_mangle]
pub unsafe extern "C" fn vk_rep_free(h: *mut VkRep) {
    free_handle(h)
}

/// Group of a diagram (Wirtinger presentation on its arcs).
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_group(d: *const VkDiagram, out: *mut *mut VkPresentation) -> VkStatus {
    guard(|| {
        out_arg(out, "out")?;
        let d = obj_arg(d, "diagram")?;
        *out = Box::into_raw(Box::new(VkPresentation(d.0.wirtinger())));
        Ok(())
    })
}

/// Alexander polynomial `Delta_index` of a diagram, in `t`.
///
/// # Safety
/// `d` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_alexander(d: *const VkDiagram, index: usize, out: *mut *mut c_char) -> VkStatus {
    guard(|| {
        out_arg(out, "out")?;
        let d = obj_arg(d, "diagram")?;
        let p = diagram_alexander(&d.0, index).map_err(precondition)?;
        *out = c_string(p.to_string());
        Ok(())
    })
}

/// Alexander polynomial `Delta_index` of a presentation, using minors of
/// size `relators - index` under the inferred abelianization onto `t`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vk_presentation_alexander(
    p: *const VkPresentation,
    index: usize,
    out: *mut *mut c_char,
) -> VkStatus {
    guard(|| {
        out_arg(out, "out")?;
        let p = obj_arg(p, "presentation")?;
        let ab = Abelianization::infer(&p.0, "t").map_err(precondition)?;
        let poly = alexander_polynomial(&p.0, &ab, index, false).map_err(precondition)?;
        *out = c_string(poly.to_string());
        Ok(())
    })
}

/// Virtual Alexander polynomial in `u, v`. `*obstructed` is set to 1 when
/// the polynomial rules out an almost classical diagram, 0 otherwise.
///
/// # Safety
/// `d` must be a live handle; `out` and `obstructed` writable.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_virtual(
    d: *const VkDiagram,
    index: usize,
    out: *mut *mut c_char,
    obstructed: *mut c_int,
) -> VkStatus {
    guard(|| {
        out_arg(out, "out")?;
        out_arg(obstructed, "obstructed")?;
        let d = obj_arg(d, "diagram")?;
        let q = virtual_polys(&d.0, index, None).map_err(precondition)?;
        *obstructed = almost_classical_obstruction(&q) as c_int;
        *out = c_string(q.to_string());
        Ok(())
    })
}

/// Sets `*exists` to 1 if the diagram has an Alexander numbering, integral
/// for `modulus` 0 or mod 2 for `modulus` 2.
///
/// # Safety
/// `d` must be a live handle and `exists` writable.
#[no_mangle]
pub unsafe extern "C" fn vk_diagram_has_numbering(d: *const VkDiagram, modulus: u32, exists: *mut c_int) -> VkStatus {
    guard(|| {
        out_arg(exists, "exists")?;
        let d = obj_arg(d, "diagram")?;
        if modulus != 0 && modulus != 2 {
            return fail(VkStatus::VkPreconditionFailed, "modulus must be 0 or 2");
        }
        *exists = d.0.alexander_numbering(modulus).is_ok() as c_int;
        Ok(())
    })
}

/// Checks that `rep` kills every relator of `p`. On
/// `VkNotARepresentation`, `*failing_relator` holds the 1-based index of
/// the first relator that does not map to the identity.
///
/// # Safety
/// `rep`, `p` must be live handles; `failing_relator` may be null.
#[no_mangle]
pub unsafe extern "C" fn vk_rep_check(
    rep: *const VkRep,
    p: *const VkPresentation,
    failing_relator: *mut usize,
) -> VkStatus {
    guard(|| {
        let rep = obj_arg(rep, "representation")?;
        let p = obj_arg(p, "presentation")?;
        match check_rep(&rep.0, &p.0).map_err(precondition)? {
            Ok(()) => Ok(()),
            Err(f) => {
                if !failing_relator.is_null() {
                    *failing_relator = f.index;
                }
                fail(VkStatus::VkNotARepresentation, f)
            }
        }
    })
}

/// Tensors `rep` with the abelianization of `p` onto `t`, giving a new
/// handle in `*out`.
///
/// # Safety
/// `p`, `rep` must be live handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vk_rep_with_abelianization(
    p: *const VkPresentation,
    rep: *const VkRep,
    out: *mut *mut VkRep,
) -> VkStatus {
    guard(|| {
        out_arg(out, "out")?;
        let p = obj_arg(p, "presentation")?;
        let rep = obj_arg(rep, "representation")?;
        let ab = Abelianization::infer(&p.0, "t").map_err(precondition)?;
        let prod = product_rep(&ab, &rep.0).map_err(precondition)?;
        *out = Box::into_raw(Box::new(VkRep(prod)));
        Ok(())
    })
}

/// Wada's invariant of a deficiency-one presentation with `delete`'s
/// columns removed. `*quotient` is null when the division is not exact.
///
/// # Safety
/// `p`, `rep` must be live handles, `delete` a NUL-terminated string and the
/// three output pointers writable.
#[no_mangle]
pub unsafe extern "C" fn vk_wada(
    p: *const VkPresentation,
    rep: *const VkRep,
    delete: *const c_char,
    numerator: *mut *mut c_char,
    denominator: *mut *mut c_char,
    quotient: *mut *mut c_char,
) -> VkStatus {
    guard(|| {
        out_arg(numerator, "numerator")?;
        out_arg(denominator, "denominator")?;
        out_arg(quotient, "quotient")?;
        let p = obj_arg(p, "presentation")?;
        let rep = obj_arg(rep, "representation")?;
        let delete = str_arg(delete, "delete")?;
        let w = wada(&p.0, &rep.0, delete).map_err(precondition)?;
        *numerator = c_string(w.numerator.to_string());
        *denominator = c_string(w.denominator.to_string());
        *quotient = w.quotient.map_or(ptr::null_mut(), |q| c_string(q.to_string()));
        Ok(())
    })
}

/// First homology of the `degree`-fold cyclic branched cover, e.g. `Z/5`.
///
/// # Safety
/// `p` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn vk_branched_cover(p: *const VkPresentation, degree: u64, out: *mut *mut c_char) -> VkStatus {
    guard(|| {
        out_arg(out, "out")?;
        let p = obj_arg(p, "presentation")?;
        let factors = branched_cover_homology(&p.0, degree).map_err(precondition)?;
        *out = c_string(format_abelian(&factors));
        Ok(())
    })
}
