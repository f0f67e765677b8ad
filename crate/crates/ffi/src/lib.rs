//! C ABI over `heckekernel`.
//!
//! Every entry point returns an `int32_t` status (`HK_OK` on success) and
//! writes results through out-pointers. Objects cross the boundary as opaque
//! handles that the caller releases with the matching `*_free`. Strings
//! returned to C are NUL-terminated, UTF-8, and released with
//! `hk_string_free`. After a failure `hk_last_error` describes it; the
//! message is per thread and lives until the next call on that thread.
//! Panics never unwind into C: they surface as `HK_ERR_PANIC`.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use heckekernel::cfun::CFunction;
use heckekernel::cli::{self, CliError};
use heckekernel::heckealg::{equal_labels, HeckeAlgebra, LabelSpec, NForm};
use heckekernel::rootdata::{RawDatum, RootDatum};
use heckekernel::torus::TorusPoint;
use num_complex::Complex64;

pub const HK_OK: i32 = 0;
pub const HK_ERR_NULL: i32 = 1;
pub const HK_ERR_PARSE: i32 = 2;
pub const HK_ERR_INVALID: i32 = 3;
pub const HK_ERR_NUMERIC: i32 = 4;
pub const HK_ERR_UNSUPPORTED: i32 = 5;
pub const HK_ERR_PANIC: i32 = 6;

/// An affine Hecke algebra with fixed root datum and labels.
pub struct HkAlgebra(HeckeAlgebra);

/// An element of an `HkAlgebra` in the `N_w` basis. Only meaningful
/// together with the algebra that produced it.
pub struct HkElement(NForm);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Fail(i32, String);

impl From<CliError> for Fail {
    fn from(e: CliError) -> Self {
        let code = match e.code {
            cli::EXIT_NUMERIC => HK_ERR_NUMERIC,
            cli::EXIT_UNSUPPORTED => HK_ERR_UNSUPPORTED,
            _ => HK_ERR_INVALID,
        };
        Fail(code, e.message)
    }
}

fn invalid(e: impl std::fmt::Display) -> Fail {
    Fail(HK_ERR_INVALID, e.to_string())
}

fn null(what: &str) -> Fail {
    Fail(HK_ERR_NULL, format!("{what} is null"))
}

/// Run `f`, translating failures and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> i32 {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            HK_OK
        }
        Ok(Err(Fail(code, msg))) => {
            set_error(&msg);
            code
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            HK_ERR_PANIC
        }
    }
}

/// # Safety
/// `p` is null or a NUL-terminated string valid for the call.
unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p).to_str().map_err(|_| Fail(HK_ERR_PARSE, format!("{what} is not UTF-8")))
}

unsafe fn opt_text<'a>(p: *const c_char, what: &str) -> Result<Option<&'a str>, Fail> {
    if p.is_null() {
        Ok(None)
    } else {
        text(p, what).map(Some)
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn get<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

fn c_string(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).expect("NUL removed").into_raw()
}

fn labels(json: Option<&str>) -> Result<LabelSpec, Fail> {
    let spec: LabelSpec = match json {
        None => equal_labels(1),
        Some(s) => serde_json::from_str(s).map_err(|e| Fail(HK_ERR_PARSE, format!("labels: {e}")))?,
    };
    if let Some((k, _)) = spec.iter().find(|(_, v)| **v <= 0) {
        return Err(invalid(format!("labels must be positive ({k})")));
    }
    Ok(spec)
}

/// Library version, a static string.
#[no_mangle]
pub extern "C" fn hk_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Message for the last failure on this thread (empty after success).
/// Valid until the next `hk_*` call on the same thread.
#[no_mangle]
pub extern "C" fn hk_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// # Safety
/// `s` is null or was returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn hk_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Algebra for a named preset (`"A1-sc"`, `"A1-adj"`, `"A2"`, `"B2"`,
/// `"GL2"`). `labels_json` is a JSON object such as `{"long":2,"short":1}`,
/// or null for all labels 1.
///
/// # Safety
/// String arguments are null or NUL-terminated; `out` is writable.
#[no_mangle]
pub unsafe extern "C" fn hk_algebra_new_preset(name: *const c_char, labels_json: *const c_char, out_alg: *mut *mut HkAlgebra) -> i32 {
    guard(|| {
        let slot = out(out_alg, "out")?;
        *slot = ptr::null_mut();
        let name = text(name, "name")?;
        let spec = labels(opt_text(labels_json, "labels")?)?;
        let d = RootDatum::preset(name).map_err(|e| Fail(HK_ERR_INVALID, e.to_string()))?;
        let a = HeckeAlgebra::new(d, &spec).map_err(invalid)?;
        *slot = Box::into_raw(Box::new(HkAlgebra(a)));
        Ok(())
    })
}

/// Algebra for an explicit datum `{"rank":..,"roots":..,"coroots":..,"simple":..}`.
///
/// # Safety
/// As for `hk_algebra_new_preset`.
#[no_mangle]
pub unsafe extern "C" fn hk_algebra_new_datum(datum_json: *const c_char, labels_json: *const c_char, out_alg: *mut *mut HkAlgebra) -> i32 {
    guard(|| {
        let slot = out(out_alg, "out")?;
        *slot = ptr::null_mut();
        let raw: RawDatum = serde_json::from_str(text(datum_json, "datum")?).map_err(|e| Fail(HK_ERR_PARSE, format!("datum: {e}")))?;
        let spec = labels(opt_text(labels_json, "labels")?)?;
        let d = RootDatum::new(raw).map_err(invalid)?;
        let a = HeckeAlgebra::new(d, &spec).map_err(invalid)?;
        *slot = Box::into_raw(Box::new(HkAlgebra(a)));
        Ok(())
    })
}

/// # Safety
/// `alg` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hk_algebra_free(alg: *mut HkAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// # Safety
/// `alg` is a live handle; `out_rank` is writable.
#[no_mangle]
pub unsafe extern "C" fn hk_algebra_rank(alg: *const HkAlgebra, out_rank: *mut u32) -> i32 {
    guard(|| {
        let a = get(alg, "alg")?;
        *out(out_rank, "out")? = a.0.rank() as u32;
        Ok(())
    })
}

/// Element from a JSON5 term list, e.g. `[{w:"s1", c:"v - v^-1"}, {theta:[1]}]`.
///
/// # Safety
/// `alg` is a live handle, `terms` NUL-terminated, `out_elt` writable.
#[no_mangle]
pub unsafe extern "C" fn hk_element_parse(alg: *const HkAlgebra, terms: *const c_char, out_elt: *mut *mut HkElement) -> i32 {
    guard(|| {
        let slot = out(out_elt, "out")?;
        *slot = ptr::null_mut();
        let a = get(alg, "alg")?;
        let t = text(terms, "terms")?;
        let h = cli::parse_element(&a.0, t).map_err(|e| Fail(HK_ERR_PARSE, e.message))?;
        *slot = Box::into_raw(Box::new(HkElement(h)));
        Ok(())
    })
}

/// # Safety
/// `elt` is null or a live handle from this library.
#[no_mangle]
pub unsafe extern "C" fn hk_element_free(elt: *mut HkElement) {
    if !elt.is_null() {
        drop(Box::from_raw(elt));
    }
}

/// `out = a · b`; the result is a new handle.
///
/// # Safety
/// All handles live and belonging to `alg`; `out_elt` writable.
#[no_mangle]
pub unsafe extern "C" fn hk_element_mul(
    alg: *const HkAlgebra,
    a: *const HkElement,
    b: *const HkElement,
    out_elt: *mut *mut HkElement,
) -> i32 {
    guard(|| {
        let slot = out(out_elt, "out")?;
        *slot = ptr::null_mut();
        let al = get(alg, "alg")?;
        let p = al.0.nmul(&get(a, "a")?.0, &get(b, "b")?.0);
        *slot = Box::into_raw(Box::new(HkElement(p)));
        Ok(())
    })
}

/// JSON array of `[word, coefficient]` pairs in canonical order.
///
/// # Safety
/// Handles live; `out_json` writable. Free the result with `hk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hk_element_to_json(alg: *const HkAlgebra, elt: *const HkElement, out_json: *mut *mut c_char) -> i32 {
    guard(|| {
        let slot = out(out_json, "out")?;
        *slot = ptr::null_mut();
        let pairs = get(alg, "alg")?.0.format_nform(&get(elt, "elt")?.0);
        *slot = c_string(serde_json::to_string(&pairs).expect("strings serialize"));
        Ok(())
    })
}

/// `τ(h)`, the coefficient of `N_e`, as a Laurent polynomial string.
///
/// # Safety
/// Handles live; `out_str` writable. Free with `hk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hk_element_trace(alg: *const HkAlgebra, elt: *const HkElement, out_str: *mut *mut c_char) -> i32 {
    guard(|| {
        let slot = out(out_str, "out")?;
        *slot = ptr::null_mut();
        *slot = c_string(get(alg, "alg")?.0.trace(&get(elt, "elt")?.0).to_string());
        Ok(())
    })
}

/// `c(t)` over all positive roots at the torus point with coordinates
/// `re[k] + i·im[k]`, `k < n` (`n` must equal the rank).
///
/// # Safety
/// `re`, `im` point to `n` doubles; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn hk_cfun_eval(
    alg: *const HkAlgebra,
    q: f64,
    re: *const f64,
    im: *const f64,
    n: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> i32 {
    guard(|| {
        let a = &get(alg, "alg")?.0;
        if re.is_null() || im.is_null() {
            return Err(null("coordinates"));
        }
        if n != a.rank() {
            return Err(invalid(format!("expected {} coordinates, got {n}", a.rank())));
        }
        if !(q.is_finite() && q > 1.0) {
            return Err(invalid("q must be a finite number > 1"));
        }
        let (re, im) = (std::slice::from_raw_parts(re, n), std::slice::from_raw_parts(im, n));
        let t = TorusPoint(re.iter().zip(im).map(|(x, y)| Complex64::new(*x, *y)).collect());
        let cf = CFunction::new(a);
        let z = cf.eval(&t, q, &a.datum().positive_roots()).map_err(|e| Fail(HK_ERR_NUMERIC, e.to_string()))?;
        *out(out_re, "out_re")? = z.re;
        *out(out_im, "out_im")? = z.im;
        Ok(())
    })
}

/// Residual points up to `W0`, as a JSON array of exact point strings.
///
/// # Safety
/// Handle live; `out_json` writable. Free with `hk_string_free`.
#[no_mangle]
pub unsafe extern "C" fn hk_residual_points(alg: *const HkAlgebra, out_json: *mut *mut c_char) -> i32 {
    guard(|| {
        let slot = out(out_json, "out")?;
        *slot = ptr::null_mut();
        let cf = CFunction::new(&get(alg, "alg")?.0);
        let pts = cf.residual_search().map_err(|e| Fail(HK_ERR_UNSUPPORTED, e.to_string()))?;
        let s: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
        *slot = c_string(serde_json::to_string(&s).expect("strings serialize"));
        Ok(())
    })
}

/// Run a whole CLI job from its JSON5 configuration text. `format` is
/// `"csv"`, `"json"`, `"text"` or null (config default). On `HK_OK`,
/// `out_text` holds the rendered output and `out_exit` the CLI exit code
/// (nonzero for e.g. a datum that fails validation).
///
/// # Safety
/// Strings null or NUL-terminated; out-pointers writable.
#[no_mangle]
pub unsafe extern "C" fn hk_run_job(config: *const c_char, format: *const c_char, out_text: *mut *mut c_char, out_exit: *mut i32) -> i32 {
    guard(|| {
        let slot = out(out_text, "out_text")?;
        *slot = ptr::null_mut();
        let exit = out(out_exit, "out_exit")?;
        let cfg = text(config, "config")?;
        let fmt = match opt_text(format, "format")? {
            None => None,
            Some("csv") => Some(cli::Format::Csv),
            Some("json") => Some(cli::Format::Json),
            Some("text") => Some(cli::Format::Text),
            Some(other) => return Err(invalid(format!("unknown format '{other}'"))),
        };
        let (body, code, err) = cli::run(cfg, None, fmt, None);
        if let Some(e) = err {
            *exit = e.code;
            return Err(e.into());
        }
        *exit = code;
        *slot = c_string(body.unwrap_or_default());
        Ok(())
    })
}
