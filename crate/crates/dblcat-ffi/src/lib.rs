//! C ABI over the manifest layer of the engine.
//!
//! All entry points are panic-safe, take UTF-8 C strings, and return a
//! [`DblStatus`] mirroring the CLI exit codes. Manifests are opaque
//! handles; every `char*` produced by this library must be released with
//! [`dbl_string_free`]. The matching header is `include/dblcat.h`.

use dblcat::dsl::{self, Command, Manifest, RenderFormat, RunOpts};
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

/// Status codes; the first four mirror the CLI exit codes.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DblStatus {
    /// All checks passed.
    Ok = 0,
    /// At least one check failed.
    CheckFailed = 1,
    /// The input was rejected (parse, resolution or type error).
    InputError = 2,
    /// At least one equality was inconclusive within bounds.
    Inconclusive = 3,
    /// A required pointer argument was null.
    NullPointer = 4,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 5,
    /// An internal invariant was violated; the operation was aborted.
    Internal = 6,
}

/// Opaque parsed manifest.
pub struct DblManifest {
    man: Manifest,
}

/// Bounds and category selection for a command. Zero fields mean the
/// built-in defaults; a null `in_category` means the sole category.
#[repr(C)]
#[derive(Clone, Copy)]
pub struct DblOptions {
    pub max_rewrite: usize,
    pub max_len: usize,
    pub in_category: *const c_char,
}

/// Output formats for `dbl_render`.
#[repr(C)]
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum DblRenderFormat {
    Ascii = 0,
    Dot = 1,
}

fn read_str<'a>(p: *const c_char) -> Result<&'a str, DblStatus> {
    if p.is_null() {
        return Err(DblStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(p) }.to_str().map_err(|_| DblStatus::InvalidUtf8)
}

fn read_opts(opts: *const DblOptions) -> Result<RunOpts, DblStatus> {
    if opts.is_null() {
        return Ok(RunOpts::default());
    }
    let o = unsafe { &*opts };
    Ok(RunOpts {
        max_rewrite: (o.max_rewrite > 0).then_some(o.max_rewrite),
        max_len: (o.max_len > 0).then_some(o.max_len),
        in_cat: if o.in_category.is_null() {
            None
        } else {
            Some(read_str(o.in_category)?.to_string())
        },
    })
}

fn write_out(text: String, out_text: *mut *mut c_char) {
    if out_text.is_null() {
        return;
    }
    // Interior NULs cannot come from our printers, but stay defensive.
    let c = CString::new(text.replace('\0', "\u{FFFD}")).unwrap();
    unsafe { *out_text = c.into_raw() };
}

fn status_of(code: i32) -> DblStatus {
    match code {
        0 => DblStatus::Ok,
        1 => DblStatus::CheckFailed,
        2 => DblStatus::InputError,
        3 => DblStatus::Inconclusive,
        _ => DblStatus::Internal,
    }
}

fn guarded(out_text: *mut *mut c_char, f: impl FnOnce() -> DblStatus) -> DblStatus {
    if !out_text.is_null() {
        unsafe { *out_text = ptr::null_mut() };
    }
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => s,
        Err(_) => DblStatus::Internal,
    }
}

/// Parse manifest text into an opaque handle. On success `*out` owns the
/// manifest and must be released with `dbl_manifest_free`; on error
/// `*out_error` (if non-null) receives a message.
#[no_mangle]
pub extern "C" fn dbl_manifest_parse(
    text: *const c_char,
    out: *mut *mut DblManifest,
    out_error: *mut *mut c_char,
) -> DblStatus {
    guarded(out_error, || {
        if out.is_null() {
            return DblStatus::NullPointer;
        }
        unsafe { *out = ptr::null_mut() };
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        match dsl::parse(text) {
            Ok(man) => {
                unsafe { *out = Box::into_raw(Box::new(DblManifest { man })) };
                DblStatus::Ok
            }
            Err(e) => {
                write_out(e.to_string(), out_error);
                DblStatus::InputError
            }
        }
    })
}

/// Release a manifest handle. Null is a no-op.
#[no_mangle]
pub extern "C" fn dbl_manifest_free(m: *mut DblManifest) {
    if !m.is_null() {
        drop(unsafe { Box::from_raw(m) });
    }
}

/// Pretty-print a manifest in the canonical form accepted by
/// `dbl_manifest_parse`. The result must be freed with `dbl_string_free`.
#[no_mangle]
pub extern "C" fn dbl_manifest_print(
    m: *const DblManifest,
    out_text: *mut *mut c_char,
) -> DblStatus {
    guarded(out_text, || {
        if m.is_null() || out_text.is_null() {
            return DblStatus::NullPointer;
        }
        let man = unsafe { &(*m).man };
        write_out(dsl::print_manifest(man), out_text);
        DblStatus::Ok
    })
}

fn run_cmd(
    m: *const DblManifest,
    cmd: Command,
    opts: *const DblOptions,
    out_text: *mut *mut c_char,
) -> DblStatus {
    if m.is_null() {
        return DblStatus::NullPointer;
    }
    let opts = match read_opts(opts) {
        Ok(o) => o,
        Err(s) => return s,
    };
    let man = unsafe { &(*m).man };
    let outcome = dsl::run(man, &cmd, &opts);
    write_out(outcome.output, out_text);
    status_of(outcome.code)
}

/// Run all validations registered for one declaration.
#[no_mangle]
pub extern "C" fn dbl_check(
    m: *const DblManifest,
    name: *const c_char,
    opts: *const DblOptions,
    out_text: *mut *mut c_char,
) -> DblStatus {
    guarded(out_text, || {
        let name = match read_str(name) {
            Ok(s) => s.to_string(),
            Err(s) => return s,
        };
        run_cmd(m, Command::Check { name }, opts, out_text)
    })
}

/// Rewrite an expression to its normal form.
#[no_mangle]
pub extern "C" fn dbl_normalize(
    m: *const DblManifest,
    expr: *const c_char,
    opts: *const DblOptions,
    out_text: *mut *mut c_char,
) -> DblStatus {
    guarded(out_text, || {
        let expr = match read_str(expr) {
            Ok(s) => s.to_string(),
            Err(s) => return s,
        };
        run_cmd(m, Command::Normalize { expr }, opts, out_text)
    })
}

/// Decide equality of two expressions.
#[no_mangle]
pub extern "C" fn dbl_eq(
    m: *const DblManifest,
    e1: *const c_char,
    e2: *const c_char,
    opts: *const DblOptions,
    out_text: *mut *mut c_char,
) -> DblStatus {
    guarded(out_text, || {
        let (e1, e2) = match (read_str(e1), read_str(e2)) {
            (Ok(a), Ok(b)) => (a.to_string(), b.to_string()),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        run_cmd(m, Command::Eq { e1, e2 }, opts, out_text)
    })
}

/// Tensor two declared categories and verify the defining relations of the
/// result; with `emit` nonzero the presentation is appended to the output.
#[no_mangle]
pub extern "C" fn dbl_tensor(
    m: *const DblManifest,
    a: *const c_char,
    b: *const c_char,
    emit: i32,
    opts: *const DblOptions,
    out_text: *mut *mut c_char,
) -> DblStatus {
    guarded(out_text, || {
        let (a, b) = match (read_str(a), read_str(b)) {
            (Ok(a), Ok(b)) => (a.to_string(), b.to_string()),
            (Err(s), _) | (_, Err(s)) => return s,
        };
        run_cmd(m, Command::Tensor { a, b, emit: emit != 0 }, opts, out_text)
    })
}

/// Check the constraint cells of a built-in tricategory instance
/// (`walking-arrow` or `pseudo-parity`).
#[no_mangle]
pub extern "C" fn dbl_verify_tricat(
    instance: *const c_char,
    out_text: *mut *mut c_char,
) -> DblStatus {
    guarded(out_text, || {
        let instance = match read_str(instance) {
            Ok(s) => s.to_string(),
            Err(s) => return s,
        };
        let man = Manifest::default();
        let outcome = dsl::run(&man, &Command::VerifyTricat { instance }, &RunOpts::default());
        write_out(outcome.output, out_text);
        status_of(outcome.code)
    })
}

/// Render an expression's boundary and cells as ASCII or DOT.
#[no_mangle]
pub extern "C" fn dbl_render(
    m: *const DblManifest,
    expr: *const c_char,
    format: DblRenderFormat,
    opts: *const DblOptions,
    out_text: *mut *mut c_char,
) -> DblStatus {
    guarded(out_text, || {
        let expr = match read_str(expr) {
            Ok(s) => s.to_string(),
            Err(s) => return s,
        };
        let format = match format {
            DblRenderFormat::Ascii => RenderFormat::Ascii,
            DblRenderFormat::Dot => RenderFormat::Dot,
        };
        run_cmd(m, Command::Render { expr, format }, opts, out_text)
    })
}

/// Release a string produced by this library. Null is a no-op.
#[no_mangle]
pub extern "C" fn dbl_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(unsafe { CString::from_raw(s) });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::ffi::CString;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    fn take_string(p: *mut c_char) -> String {
        assert!(!p.is_null());
        let s = unsafe { CStr::from_ptr(p) }.to_str().unwrap().to_string();
        dbl_string_free(p);
        s
    }

    fn parse_ok(text: &str) -> *mut DblManifest {
        let c = cstr(text);
        let mut m: *mut DblManifest = ptr::null_mut();
        let mut err: *mut c_char = ptr::null_mut();
        let st = dbl_manifest_parse(c.as_ptr(), &mut m, &mut err);
        assert_eq!(st, DblStatus::Ok);
        assert!(err.is_null());
        m
    }

    #[test]
    fn parse_print_round_trip() {
        let text = "category P fixture parity\n";
        let m = parse_ok(text);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(dbl_manifest_print(m, &mut out), DblStatus::Ok);
        assert_eq!(take_string(out), text);
        dbl_manifest_free(m);
    }

    #[test]
    fn parse_error_reports_message_and_input_error() {
        let c = cstr("category X bogus\n");
        let mut m: *mut DblManifest = ptr::null_mut();
        let mut err: *mut c_char = ptr::null_mut();
        assert_eq!(dbl_manifest_parse(c.as_ptr(), &mut m, &mut err), DblStatus::InputError);
        assert!(m.is_null());
        assert!(take_string(err).contains("parse error"));
    }

    #[test]
    fn eq_statuses_cover_equal_unequal_inconclusive() {
        let m = parse_ok("category P fixture parity\n");
        let mut out: *mut c_char = ptr::null_mut();
        let (e, n) = (cstr("e"), cstr("n"));
        assert_eq!(dbl_eq(m, e.as_ptr(), e.as_ptr(), ptr::null(), &mut out), DblStatus::Ok);
        assert!(take_string(out).contains("PASS eq"));
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            dbl_eq(m, e.as_ptr(), n.as_ptr(), ptr::null(), &mut out),
            DblStatus::CheckFailed
        );
        take_string(out);
        dbl_manifest_free(m);

        let m = parse_ok(
            "category C free {\n  objects x\n  hcell f x x\n  square p f f - -\n  \
             square q f f - -\n  square r f f - -\n  sqrule cq p = q\n  sqrule cr p = r\n}\n",
        );
        let (q, r) = (cstr("q"), cstr("r"));
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            dbl_eq(m, q.as_ptr(), r.as_ptr(), ptr::null(), &mut out),
            DblStatus::Inconclusive
        );
        take_string(out);
        dbl_manifest_free(m);
    }

    #[test]
    fn check_and_render_and_options() {
        let m = parse_ok(
            "category A free {\n  objects 0 1\n  hcell F 0 1\n}\n\
             category B free {\n  objects 0 1\n  hcell G 0 1\n}\n",
        );
        let (a, b) = (cstr("A"), cstr("B"));
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            dbl_tensor(m, a.as_ptr(), b.as_ptr(), 0, ptr::null(), &mut out),
            DblStatus::Ok
        );
        assert!(take_string(out).contains("count=2"));

        // max_len through the options struct.
        let opts =
            DblOptions { max_rewrite: 0, max_len: 1, in_category: ptr::null() };
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(dbl_tensor(m, a.as_ptr(), b.as_ptr(), 0, &opts, &mut out), DblStatus::Ok);
        assert!(take_string(out).contains("count=0"));

        // Expression commands need --in with two categories declared.
        let expr = cstr("Idv(F)");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            dbl_normalize(m, expr.as_ptr(), ptr::null(), &mut out),
            DblStatus::InputError
        );
        take_string(out);
        let in_a = cstr("A");
        let opts = DblOptions { max_rewrite: 0, max_len: 0, in_category: in_a.as_ptr() };
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(dbl_normalize(m, expr.as_ptr(), &opts, &mut out), DblStatus::Ok);
        take_string(out);
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(
            dbl_render(m, expr.as_ptr(), DblRenderFormat::Dot, &opts, &mut out),
            DblStatus::Ok
        );
        assert!(take_string(out).starts_with("digraph"));
        dbl_manifest_free(m);
    }

    #[test]
    fn verify_tricat_and_null_safety() {
        let inst = cstr("walking-arrow");
        let mut out: *mut c_char = ptr::null_mut();
        assert_eq!(dbl_verify_tricat(inst.as_ptr(), &mut out), DblStatus::Ok);
        assert!(take_string(out).contains("PASS verify-tricat"));

        assert_eq!(dbl_verify_tricat(ptr::null(), &mut out), DblStatus::NullPointer);
        assert_eq!(
            dbl_check(ptr::null(), inst.as_ptr(), ptr::null(), &mut out),
            DblStatus::NullPointer
        );
        dbl_manifest_free(ptr::null_mut());
        dbl_string_free(ptr::null_mut());
    }
}
