//! C ABI over `ribbon-core`.
//!
//! Every function returns a [`RibbonStatus`]. On failure the message is kept
//! per thread and can be read with [`ribbon_last_error`]. Strings handed out
//! by the library must be released with [`ribbon_string_free`]; documents
//! with [`ribbon_document_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use ribbon_core::betti::{betti_rb, betti_triple, Structure};
use ribbon_core::cw::validate_cw;
use ribbon_core::document::{parse_document, serialize_document, Document, Target, Workspace};
use ribbon_core::error::{EXIT_COMPUTATION, EXIT_SCHEMA, EXIT_VALIDATION};
use ribbon_core::geometry::{parse_decimal, parse_rational};
use ribbon_core::proximity::{dx_near, select_probes, Threshold};
use ribbon_core::svg::render_svg;
use ribbon_core::Error;

/// Result of every call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RibbonStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullArgument = 1,
    /// A string argument was not UTF-8.
    InvalidUtf8 = 2,
    /// Malformed document, unknown target or bad argument.
    Schema = 3,
    /// The input violates a structural condition.
    Validation = 4,
    /// A computation on valid input failed.
    Computation = 5,
    /// The library panicked; the handle should be considered poisoned.
    Panic = 6,
}

/// Betti numbers of one structure.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RibbonBettiTriple {
    pub b0: u64,
    pub b1: u64,
    pub b2: u64,
}

/// Parsed and resolved document. Opaque to C.
pub struct RibbonDocument {
    document: Document,
    workspace: Workspace,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(RibbonStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e.exit_code() {
            EXIT_VALIDATION => RibbonStatus::Validation,
            EXIT_COMPUTATION => RibbonStatus::Computation,
            EXIT_SCHEMA => RibbonStatus::Schema,
            _ => RibbonStatus::Computation,
        };
        Failure(status, e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> RibbonStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => RibbonStatus::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            RibbonStatus::Panic
        }
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(Failure(RibbonStatus::NullArgument, format!("{what} is null")));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Failure(RibbonStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn doc<'a>(d: *const RibbonDocument) -> Result<&'a RibbonDocument, Failure> {
    d.as_ref().ok_or_else(|| Failure(RibbonStatus::NullArgument, "document is null".into()))
}

unsafe fn out<'a, T>(p: *mut T) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| Failure(RibbonStatus::NullArgument, "output pointer is null".into()))
}

fn owned(s: String) -> Result<*mut c_char, Failure> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Failure(RibbonStatus::Computation, "output contains a NUL byte".into()))
}

fn structure<'a>(t: &Target<'a>, name: &str) -> Result<Structure<'a>, Failure> {
    match *t {
        Target::Ribbon(_, r) => Ok(Structure::Ribbon(r)),
        Target::RibbonComplex(_, x) => Ok(Structure::RibbonComplex(x)),
        Target::RibbonNerve(_, n) => Ok(Structure::RibbonNerve(n)),
        Target::VortexNerve(_, v) => Ok(Structure::VortexNerve(v)),
        ref other => Err(Error::WrongTargetKind { name: name.to_string(), kind: other.kind() }.into()),
    }
}

/// Parses and resolves a document. On success `*out_doc` owns a new handle; on failure it is null.
#[no_mangle]
pub unsafe extern "C" fn ribbon_document_parse(json: *const c_char, out_doc: *mut *mut RibbonDocument) -> RibbonStatus {
    guard(|| {
        let slot = out(out_doc)?;
        *slot = ptr::null_mut();
        let document = parse_document(text(json, "json")?).map_err(Error::from)?;
        let workspace = document.resolve()?;
        *slot = Box::into_raw(Box::new(RibbonDocument { document, workspace }));
        Ok(())
    })
}

/// Releases a handle. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ribbon_document_free(d: *mut RibbonDocument) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Canonical serialization of the document.
#[no_mangle]
pub unsafe extern "C" fn ribbon_document_serialize(
    d: *const RibbonDocument,
    out_json: *mut *mut c_char,
) -> RibbonStatus {
    guard(|| {
        let slot = out(out_json)?;
        *slot = owned(serialize_document(&doc(d)?.document))?;
        Ok(())
    })
}

/// Sets `*valid` when every complex passes the CW checks and there is at least one.
#[no_mangle]
pub unsafe extern "C" fn ribbon_document_validate(d: *const RibbonDocument, valid: *mut bool) -> RibbonStatus {
    guard(|| {
        let slot = out(valid)?;
        let complexes = &doc(d)?.workspace.complexes;
        *slot = !complexes.is_empty() && complexes.values().all(|c| validate_cw(&c.complex).is_valid());
        Ok(())
    })
}

/// Betti numbers of a ribbon, ribbon complex, ribbon nerve or vortex nerve.
#[no_mangle]
pub unsafe extern "C" fn ribbon_betti_triple(
    d: *const RibbonDocument,
    target: *const c_char,
    out_triple: *mut RibbonBettiTriple,
) -> RibbonStatus {
    guard(|| {
        let slot = out(out_triple)?;
        let name = text(target, "target")?;
        let t = doc(d)?.workspace.find(name)?;
        let b = betti_triple(structure(&t, name)?);
        *slot = RibbonBettiTriple { b0: b.b0, b1: b.b1, b2: b.b2 };
        Ok(())
    })
}

/// Ribbon Betti number of a ribbon target.
#[no_mangle]
pub unsafe extern "C" fn ribbon_betti_rb(
    d: *const RibbonDocument,
    target: *const c_char,
    out_value: *mut u64,
) -> RibbonStatus {
    guard(|| {
        let slot = out(out_value)?;
        let name = text(target, "target")?;
        match doc(d)?.workspace.find(name)? {
            Target::Ribbon(_, r) => *slot = betti_rb(r),
            other => return Err(Error::WrongTargetKind { name: name.to_string(), kind: other.kind() }.into()),
        }
        Ok(())
    })
}

/// Approximate descriptive nearness of two entities. `probes` is a
/// comma-separated list and `threshold` is `num/den` or a decimal; either may
/// be null to use the document's own selection.
#[no_mangle]
pub unsafe extern "C" fn ribbon_dx_near(
    d: *const RibbonDocument,
    a: *const c_char,
    b: *const c_char,
    probes: *const c_char,
    threshold: *const c_char,
    out_near: *mut bool,
) -> RibbonStatus {
    guard(|| {
        let slot = out(out_near)?;
        let d = doc(d)?;
        let (a, b) = (text(a, "a")?, text(b, "b")?);
        let names: Vec<String> = if probes.is_null() {
            d.document.probes.clone().ok_or_else(|| Error::Usage("no probes given".into()))?
        } else {
            text(probes, "probes")?.split(',').map(|s| s.trim().to_string()).collect()
        };
        let th = if threshold.is_null() {
            d.document.threshold.clone().ok_or_else(|| Error::Usage("no threshold given".into()))?
        } else {
            let t = text(threshold, "threshold")?;
            parse_rational(t).or_else(|_| parse_decimal(t)).map_err(|_| Error::Usage(format!("bad threshold `{t}`")))?
        };
        let th = Threshold::new(th).map_err(Error::from)?;
        let probes = select_probes(&names).map_err(Error::from)?;
        let (ea, eb) = (d.workspace.entity(a)?, d.workspace.entity(b)?);
        *slot = dx_near(&ea, &eb, &probes, &th).map_err(Error::from)?;
        Ok(())
    })
}

/// SVG drawing of a target; release `*out_svg` with [`ribbon_string_free`].
#[no_mangle]
pub unsafe extern "C" fn ribbon_render_svg(
    d: *const RibbonDocument,
    target: *const c_char,
    out_svg: *mut *mut c_char,
) -> RibbonStatus {
    guard(|| {
        let slot = out(out_svg)?;
        *slot = ptr::null_mut();
        *slot = owned(render_svg(&doc(d)?.workspace, text(target, "target")?)?)?;
        Ok(())
    })
}

/// Releases a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn ribbon_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message of the last failed call on this thread, or null. The pointer stays
/// valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ribbon_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
