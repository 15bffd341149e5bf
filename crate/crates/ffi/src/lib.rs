//! C ABI for extalg.
//!
//! Objects are opaque handles created by the `extalg_*_parse` and
//! `extalg_*_from_*` functions and released with the matching `_free`. Every fallible call returns an
//! `ExtalgStatus`; the message of the last failure on the calling thread is
//! available from `extalg_last_error`. Strings returned through `char **`
//! out-parameters must be released with `extalg_string_free`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use extalg::algebra::{is_isomorphic, parse_element, parse_presentation, split_elements, Algebra};
use extalg::flag::{classify_codim1, enumerate_flag_datums, paper_catalog_dim2, paper_catalog_dim3, EquivMode};
use extalg::galois::{galois_group_brute, invariants_and_galois_test};
use extalg::json::{AlgebraJson, CatalogEntryJson, ClassifiedJson, DatumJson, ReportJson};
use extalg::unified::{check_axioms, unified_product, ExtendingDatum};
use extalg::{Error, Field};

/// Result codes. `EXTALG_STATUS_OK` is zero; library errors map one-to-one onto
/// the library's error kinds.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExtalgStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Panic = 3,
    ParseError = 10,
    NotPrime = 11,
    ReducibleModulus = 12,
    InfiniteField = 13,
    InfiniteClassSet = 14,
    UnsupportedOverInfiniteField = 15,
    DimensionMismatch = 16,
    ShapeMismatch = 17,
    NotASubalgebra = 18,
    NotARetraction = 19,
    AxiomsFailed = 20,
    NotACharacter = 21,
    FlagCheckFailed = 22,
    MatchedPairFailed = 23,
    NotAFactorization = 24,
    CocycleConditionFailed = 25,
    NotAnAutomorphism = 26,
    NotCommutativeBase = 27,
    NotSymmetric = 28,
    BudgetExceeded = 29,
    DimensionBoundExceeded = 30,
    NotAGroup = 31,
    UsageError = 32,
    JsonError = 33,
    IoError = 34,
}

impl From<&Error> for ExtalgStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse(_) => ExtalgStatus::ParseError,
            Error::NotPrime(_) => ExtalgStatus::NotPrime,
            Error::ReducibleModulus(_) => ExtalgStatus::ReducibleModulus,
            Error::InfiniteField => ExtalgStatus::InfiniteField,
            Error::InfiniteClassSet(_) => ExtalgStatus::InfiniteClassSet,
            Error::UnsupportedOverInfiniteField(_) => ExtalgStatus::UnsupportedOverInfiniteField,
            Error::DimensionMismatch(_) => ExtalgStatus::DimensionMismatch,
            Error::ShapeMismatch(_) => ExtalgStatus::ShapeMismatch,
            Error::NotASubalgebra(_) => ExtalgStatus::NotASubalgebra,
            Error::NotARetraction(_) => ExtalgStatus::NotARetraction,
            Error::AxiomsFailed(_) => ExtalgStatus::AxiomsFailed,
            Error::NotACharacter(_) => ExtalgStatus::NotACharacter,
            Error::FlagCheckFailed(_) => ExtalgStatus::FlagCheckFailed,
            Error::MatchedPairFailed(_) => ExtalgStatus::MatchedPairFailed,
            Error::NotAFactorization(_) => ExtalgStatus::NotAFactorization,
            Error::CocycleConditionFailed(_) => ExtalgStatus::CocycleConditionFailed,
            Error::NotAnAutomorphism(_) => ExtalgStatus::NotAnAutomorphism,
            Error::NotCommutativeBase => ExtalgStatus::NotCommutativeBase,
            Error::NotSymmetric(_) => ExtalgStatus::NotSymmetric,
            Error::BudgetExceeded { .. } => ExtalgStatus::BudgetExceeded,
            Error::DimensionBoundExceeded { .. } => ExtalgStatus::DimensionBoundExceeded,
            Error::NotAGroup(_) => ExtalgStatus::NotAGroup,
            Error::Usage(_) => ExtalgStatus::UsageError,
            Error::Json(_) => ExtalgStatus::JsonError,
            Error::Io(_) => ExtalgStatus::IoError,
        }
    }
}

/// A field such as GF(2), GF(9), Q or GF(2)(t).
pub struct ExtalgField(Field);

/// A finite-dimensional unital algebra given by structure constants.
pub struct ExtalgAlgebra(Algebra);

/// An extending datum of an algebra A by a vector space V.
pub struct ExtalgDatum(ExtendingDatum);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

enum Fail {
    Status(ExtalgStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> ExtalgStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => ExtalgStatus::Ok,
        Ok(Err(Fail::Lib(e))) => {
            set_last_error(&format!("{}: {e}", e.name()));
            ExtalgStatus::from(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_last_error(&msg);
            s
        }
        Err(_) => {
            set_last_error("internal panic");
            ExtalgStatus::Panic
        }
    }
}

fn null() -> Fail {
    Fail::Status(ExtalgStatus::NullPointer, "null pointer argument".into())
}

unsafe fn str_arg<'a>(p: *const c_char) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null());
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail::Status(ExtalgStatus::InvalidUtf8, "string is not UTF-8".into()))
}

unsafe fn obj<'a, T>(p: *const T) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(null)
}

unsafe fn write_out<T>(out: *mut T, value: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null());
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c =
        CString::new(s).map_err(|_| Fail::Status(ExtalgStatus::InvalidUtf8, "output contains a nul byte".into()))?;
    write_out(out, c.into_raw())
}

fn json_string(v: &impl serde::Serialize) -> Result<String, Fail> {
    serde_json::to_string(v).map_err(|e| Fail::Lib(Error::Json(e)))
}

/// Message of the last failed call on this thread; valid until the next
/// failing call on the same thread.
#[no_mangle]
pub extern "C" fn extalg_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Stable name of a status code, e.g. "AxiomsFailed".
#[no_mangle]
pub extern "C" fn extalg_status_name(status: ExtalgStatus) -> *const c_char {
    let name: &'static CStr = match status {
        ExtalgStatus::Ok => c"Ok",
        ExtalgStatus::NullPointer => c"NullPointer",
        ExtalgStatus::InvalidUtf8 => c"InvalidUtf8",
        ExtalgStatus::Panic => c"Panic",
        ExtalgStatus::ParseError => c"ParseError",
        ExtalgStatus::NotPrime => c"NotPrime",
        ExtalgStatus::ReducibleModulus => c"ReducibleModulus",
        ExtalgStatus::InfiniteField => c"InfiniteField",
        ExtalgStatus::InfiniteClassSet => c"InfiniteClassSet",
        ExtalgStatus::UnsupportedOverInfiniteField => c"UnsupportedOverInfiniteField",
        ExtalgStatus::DimensionMismatch => c"DimensionMismatch",
        ExtalgStatus::ShapeMismatch => c"ShapeMismatch",
        ExtalgStatus::NotASubalgebra => c"NotASubalgebra",
        ExtalgStatus::NotARetraction => c"NotARetraction",
        ExtalgStatus::AxiomsFailed => c"AxiomsFailed",
        ExtalgStatus::NotACharacter => c"NotACharacter",
        ExtalgStatus::FlagCheckFailed => c"FlagCheckFailed",
        ExtalgStatus::MatchedPairFailed => c"MatchedPairFailed",
        ExtalgStatus::NotAFactorization => c"NotAFactorization",
        ExtalgStatus::CocycleConditionFailed => c"CocycleConditionFailed",
        ExtalgStatus::NotAnAutomorphism => c"NotAnAutomorphism",
        ExtalgStatus::NotCommutativeBase => c"NotCommutativeBase",
        ExtalgStatus::NotSymmetric => c"NotSymmetric",
        ExtalgStatus::BudgetExceeded => c"BudgetExceeded",
        ExtalgStatus::DimensionBoundExceeded => c"DimensionBoundExceeded",
        ExtalgStatus::NotAGroup => c"NotAGroup",
        ExtalgStatus::UsageError => c"UsageError",
        ExtalgStatus::JsonError => c"JsonError",
        ExtalgStatus::IoError => c"IoError",
    };
    name.as_ptr()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn extalg_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses "GF(p)", "GF(q)", "GF(p^n, poly)", "Q" or "GF(2)(t)".
///
/// # Safety
/// `spec` must be a nul-terminated string and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_field_parse(spec: *const c_char, out: *mut *mut ExtalgField) -> ExtalgStatus {
    guard(|| {
        let f = Field::parse(str_arg(spec)?)?;
        write_out(out, Box::into_raw(Box::new(ExtalgField(f))))
    })
}

/// # Safety
/// `f` must be null or a handle from `extalg_field_parse`.
#[no_mangle]
pub unsafe extern "C" fn extalg_field_free(f: *mut ExtalgField) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Number of elements, or 0 for an infinite field.
///
/// # Safety
/// `f` must be a valid field handle.
#[no_mangle]
pub unsafe extern "C" fn extalg_field_order(f: *const ExtalgField) -> u64 {
    f.as_ref().and_then(|f| f.0.order()).unwrap_or(0)
}

/// # Safety
/// `f` must be a valid field handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_field_name(f: *const ExtalgField, out: *mut *mut c_char) -> ExtalgStatus {
    guard(|| write_string(out, obj(f)?.0.to_string()))
}

/// Reads an algebra from its JSON form. A non-null `field` overrides the
/// field named in the document. The table is not checked for associativity.
///
/// # Safety
/// `json` must be a nul-terminated string, `field` null or valid, `out`
/// writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_algebra_from_json(
    json: *const c_char,
    field: *const ExtalgField,
    out: *mut *mut ExtalgAlgebra,
) -> ExtalgStatus {
    guard(|| {
        let aj: AlgebraJson = serde_json::from_str(str_arg(json)?).map_err(Error::Json)?;
        let a = aj.to_algebra(field.as_ref().map(|f| &f.0))?;
        write_out(out, Box::into_raw(Box::new(ExtalgAlgebra(a))))
    })
}

/// Builds an algebra from a presentation such as "x^2 = 0, y^2 = y, xy = x, yx = 0".
///
/// # Safety
/// `field` must be valid, `text` nul-terminated and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_algebra_from_presentation(
    field: *const ExtalgField,
    text: *const c_char,
    out: *mut *mut ExtalgAlgebra,
) -> ExtalgStatus {
    guard(|| {
        let a = parse_presentation(&obj(field)?.0, str_arg(text)?)?;
        write_out(out, Box::into_raw(Box::new(ExtalgAlgebra(a))))
    })
}

/// # Safety
/// `a` must be null or an algebra handle.
#[no_mangle]
pub unsafe extern "C" fn extalg_algebra_free(a: *mut ExtalgAlgebra) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a valid algebra handle.
#[no_mangle]
pub unsafe extern "C" fn extalg_algebra_dim(a: *const ExtalgAlgebra) -> usize {
    a.as_ref().map(|a| a.0.dim()).unwrap_or(0)
}

/// Whether the table is associative with the stated unit.
///
/// # Safety
/// `a` must be a valid algebra handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_algebra_is_valid(a: *const ExtalgAlgebra, out: *mut bool) -> ExtalgStatus {
    guard(|| write_out(out, obj(a)?.0.is_valid()))
}

/// # Safety
/// `a` must be a valid algebra handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_algebra_to_json(a: *const ExtalgAlgebra, out: *mut *mut c_char) -> ExtalgStatus {
    guard(|| write_string(out, json_string(&AlgebraJson::from_algebra(&obj(a)?.0))?))
}

/// # Safety
/// `a`, `b` must be valid algebra handles and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_algebra_is_isomorphic(
    a: *const ExtalgAlgebra,
    b: *const ExtalgAlgebra,
    out: *mut bool,
) -> ExtalgStatus {
    guard(|| write_out(out, is_isomorphic(&obj(a)?.0, &obj(b)?.0)?.is_some()))
}

/// Number of flag datums of A (finite fields, dim A <= 4).
///
/// # Safety
/// `a` must be a valid algebra handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_flag_datum_count(a: *const ExtalgAlgebra, out: *mut usize) -> ExtalgStatus {
    guard(|| write_out(out, enumerate_flag_datums(&obj(a)?.0)?.len()))
}

/// Codimension-1 classification as JSON. `cohomologous` selects the finer
/// relation.
///
/// # Safety
/// `a` must be a valid algebra handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_classify_codim1_json(
    a: *const ExtalgAlgebra,
    cohomologous: bool,
    out: *mut *mut c_char,
) -> ExtalgStatus {
    guard(|| {
        let a = &obj(a)?.0;
        let mode = if cohomologous { EquivMode::Cohomologous } else { EquivMode::Equivalent };
        let fam = classify_codim1(a, mode)?;
        write_string(out, json_string(&ClassifiedJson::from_family(a, &fam))?)
    })
}

/// Order of Gal(B/A) for A spanned by `sub` ("1,x" or "[1,0,0],[0,1,0]"),
/// and whether B^Gal(B/A) = A.
///
/// # Safety
/// `b` must be a valid algebra handle, `sub` nul-terminated, outputs writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_galois(
    b: *const ExtalgAlgebra,
    sub: *const c_char,
    order: *mut usize,
    is_galois: *mut bool,
) -> ExtalgStatus {
    guard(|| {
        let b = &obj(b)?.0;
        let basis = split_elements(str_arg(sub)?).iter().map(|s| parse_element(b, s)).collect::<Result<Vec<_>, _>>()?;
        let g = galois_group_brute(b, &basis)?;
        let (_, galois) = invariants_and_galois_test(b, &basis)?;
        write_out(order, g.order())?;
        write_out(is_galois, galois)
    })
}

/// Named dimension-2 or -3 catalog as a JSON array.
///
/// # Safety
/// `field` must be a valid field handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_catalog_json(
    field: *const ExtalgField,
    dim: usize,
    out: *mut *mut c_char,
) -> ExtalgStatus {
    guard(|| {
        let f = &obj(field)?.0;
        let entries = match dim {
            2 => paper_catalog_dim2(f, None)?,
            3 => paper_catalog_dim3(f, None)?,
            _ => return Err(Error::Usage("catalogs exist for dimensions 2 and 3".into()).into()),
        };
        let list: Vec<CatalogEntryJson> = entries.iter().map(CatalogEntryJson::from_entry).collect();
        write_string(out, json_string(&list)?)
    })
}

/// Reads an extending datum from JSON.
///
/// # Safety
/// `json` must be nul-terminated, `field` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_datum_from_json(
    json: *const c_char,
    field: *const ExtalgField,
    out: *mut *mut ExtalgDatum,
) -> ExtalgStatus {
    guard(|| {
        let dj: DatumJson = serde_json::from_str(str_arg(json)?).map_err(Error::Json)?;
        let d = dj.to_datum(field.as_ref().map(|f| &f.0))?;
        d.check_shapes()?;
        write_out(out, Box::into_raw(Box::new(ExtalgDatum(d))))
    })
}

/// # Safety
/// `d` must be null or a datum handle.
#[no_mangle]
pub unsafe extern "C" fn extalg_datum_free(d: *mut ExtalgDatum) {
    if !d.is_null() {
        drop(Box::from_raw(d));
    }
}

/// Evaluates the axioms. `report` may be null; otherwise it receives the
/// per-axiom report as JSON.
///
/// # Safety
/// `d` must be a valid datum handle and `all_hold` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_datum_check(
    d: *const ExtalgDatum,
    all_hold: *mut bool,
    report: *mut *mut c_char,
) -> ExtalgStatus {
    guard(|| {
        let r = ReportJson::from_report(&check_axioms(&obj(d)?.0)?);
        write_out(all_hold, r.all_hold)?;
        if !report.is_null() {
            write_string(report, json_string(&r)?)?;
        }
        Ok(())
    })
}

/// The unified product; fails with `AxiomsFailed` for an invalid datum.
///
/// # Safety
/// `d` must be a valid datum handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn extalg_unified_product(d: *const ExtalgDatum, out: *mut *mut ExtalgAlgebra) -> ExtalgStatus {
    guard(|| {
        let e = unified_product(&obj(d)?.0)?;
        write_out(out, Box::into_raw(Box::new(ExtalgAlgebra(e))))
    })
}
