//! C ABI for the `hopfcyc` engine.
//!
//! Sessions and reports are opaque handles; every fallible call returns an
//! [`HcStatus`] and writes its result through an out-pointer.  Strings
//! returned by the library are NUL-terminated, UTF-8, and must be released
//! with [`hc_string_free`]; handles with their respective `_free` function.
//! On any non-zero status the thread-local message of [`hc_last_error`]
//! describes the failure.

use hopfcyc::report::Report;
use hopfcyc::session::{
    cmd_cohomology, cmd_transport, cmd_verify, fixture_spec, parse_session, CohomologyOutcome,
    RunOptions, SessionSpec, TransportOutcome,
};
use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::ptr;

/// Status code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HcStatus {
    /// Success.
    HcOk = 0,
    /// A required pointer argument was null.
    HcErrNull = 1,
    /// An input string was not valid UTF-8.
    HcErrUtf8 = 2,
    /// The session text failed to parse; see `hc_last_error`.
    HcErrParse = 3,
    /// No built-in fixture with the given name.
    HcErrUnknownFixture = 4,
    /// A command failed to run; see `hc_last_error`.
    HcErrRun = 5,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let sanitized = msg.replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(sanitized).unwrap());
}

/// A parsed session specification.
pub struct HcSession {
    spec: SessionSpec,
}

enum ReportKind {
    Verify(Report),
    Cohomology(CohomologyOutcome),
    Transport(TransportOutcome),
}

/// The outcome of a command: an ordered, deterministic record collection.
pub struct HcReport {
    kind: ReportKind,
}

impl HcReport {
    fn passed(&self) -> bool {
        match &self.kind {
            ReportKind::Verify(r) => r.passed(),
            ReportKind::Cohomology(_) => true,
            ReportKind::Transport(t) => t.passed(),
        }
    }

    fn text(&self) -> String {
        match &self.kind {
            ReportKind::Verify(r) => r.to_string(),
            ReportKind::Cohomology(c) => c.to_string(),
            ReportKind::Transport(t) => t.to_string(),
        }
    }

    fn json(&self) -> String {
        match &self.kind {
            ReportKind::Verify(r) => serde_json::to_string_pretty(r),
            ReportKind::Cohomology(c) => serde_json::to_string_pretty(c),
            ReportKind::Transport(t) => serde_json::to_string_pretty(t),
        }
        .expect("report serialization is infallible")
    }
}

/// The thread-local message describing the most recent failure.  The
/// pointer stays valid until the next failing call on the same thread; do
/// not free it.
#[no_mangle]
pub extern "C" fn hc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, HcStatus> {
    if ptr.is_null() {
        set_error("null pointer argument");
        return Err(HcStatus::HcErrNull);
    }
    CStr::from_ptr(ptr).to_str().map_err(|_| {
        set_error("input is not valid UTF-8");
        HcStatus::HcErrUtf8
    })
}

/// Parse a session file held in `text` into a new session handle.
///
/// # Safety
/// `text` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_session_parse(
    text: *const c_char,
    out: *mut *mut HcSession,
) -> HcStatus {
    if out.is_null() {
        set_error("null out-pointer");
        return HcStatus::HcErrNull;
    }
    let text = match read_str(text) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match parse_session(text) {
        Ok(spec) => {
            *out = Box::into_raw(Box::new(HcSession { spec }));
            HcStatus::HcOk
        }
        Err(e) => {
            set_error(&e.to_string());
            *out = ptr::null_mut();
            HcStatus::HcErrParse
        }
    }
}

/// Create a session handle from a built-in fixture name.
///
/// # Safety
/// `name` must be a valid NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_session_from_fixture(
    name: *const c_char,
    out: *mut *mut HcSession,
) -> HcStatus {
    if out.is_null() {
        set_error("null out-pointer");
        return HcStatus::HcErrNull;
    }
    let name = match read_str(name) {
        Ok(t) => t,
        Err(s) => return s,
    };
    match fixture_spec(name) {
        Some(spec) => {
            *out = Box::into_raw(Box::new(HcSession { spec }));
            HcStatus::HcOk
        }
        None => {
            set_error(&format!("unknown fixture `{name}`"));
            *out = ptr::null_mut();
            HcStatus::HcErrUnknownFixture
        }
    }
}

/// Render the canonical text form of a session.
///
/// # Safety
/// `session` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_session_print(
    session: *const HcSession,
    out: *mut *mut c_char,
) -> HcStatus {
    if session.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HcStatus::HcErrNull;
    }
    let text = (*session).spec.to_string();
    *out = CString::new(text).unwrap().into_raw();
    HcStatus::HcOk
}

/// Release a session handle.
///
/// # Safety
/// `session` must be a handle from this library or null; it must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hc_session_free(session: *mut HcSession) {
    if !session.is_null() {
        drop(Box::from_raw(session));
    }
}

unsafe fn run_command(
    session: *const HcSession,
    out: *mut *mut HcReport,
    max_degree: u32,
    seed: u64,
    run: impl FnOnce(&SessionSpec, &RunOptions) -> Result<ReportKind, String>,
) -> HcStatus {
    if session.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HcStatus::HcErrNull;
    }
    let spec = &(*session).spec;
    let opts = RunOptions::merged(spec, Some(max_degree as usize), Some(seed));
    match run(spec, &opts) {
        Ok(kind) => {
            *out = Box::into_raw(Box::new(HcReport { kind }));
            HcStatus::HcOk
        }
        Err(msg) => {
            set_error(&msg);
            *out = ptr::null_mut();
            HcStatus::HcErrRun
        }
    }
}

/// Run the session's requested axiom checkers.
///
/// # Safety
/// `session` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_verify(
    session: *const HcSession,
    max_degree: u32,
    seed: u64,
    out: *mut *mut HcReport,
) -> HcStatus {
    run_command(session, out, max_degree, seed, |spec, opts| {
        cmd_verify(spec, opts).map(ReportKind::Verify)
    })
}

/// Compute the periodic Lie-algebra cohomology of the session's module.
///
/// # Safety
/// `session` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_cohomology(
    session: *const HcSession,
    out: *mut *mut HcReport,
) -> HcStatus {
    run_command(session, out, 3, 0, |spec, opts| {
        cmd_cohomology(spec, opts).map(ReportKind::Cohomology)
    })
}

/// Transport the session's Tot-complex element through Alexander–Whitney
/// and Ψ.
///
/// # Safety
/// `session` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_transport(
    session: *const HcSession,
    out: *mut *mut HcReport,
) -> HcStatus {
    run_command(session, out, 3, 0, |spec, opts| {
        cmd_transport(spec, opts).map(ReportKind::Transport)
    })
}

/// 1 if every record in the report passed, 0 otherwise (0 for null).
///
/// # Safety
/// `report` must be a live handle or null.
#[no_mangle]
pub unsafe extern "C" fn hc_report_passed(report: *const HcReport) -> i32 {
    if report.is_null() {
        return 0;
    }
    (*report).passed() as i32
}

/// The dimensions of HP⁰/HP¹ for a cohomology report; `HcErrRun` for other
/// report kinds.
///
/// # Safety
/// All pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn hc_report_hp_dims(
    report: *const HcReport,
    hp0: *mut u32,
    hp1: *mut u32,
) -> HcStatus {
    if report.is_null() || hp0.is_null() || hp1.is_null() {
        set_error("null pointer argument");
        return HcStatus::HcErrNull;
    }
    match &(*report).kind {
        ReportKind::Cohomology(c) => {
            *hp0 = c.hp0 as u32;
            *hp1 = c.hp1 as u32;
            HcStatus::HcOk
        }
        _ => {
            set_error("report is not a cohomology report");
            HcStatus::HcErrRun
        }
    }
}

/// The human-readable text of a report.
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_report_text(
    report: *const HcReport,
    out: *mut *mut c_char,
) -> HcStatus {
    if report.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HcStatus::HcErrNull;
    }
    *out = CString::new((*report).text().replace('\0', " "))
        .unwrap()
        .into_raw();
    HcStatus::HcOk
}

/// The machine-readable JSON of a report (stable schema).
///
/// # Safety
/// `report` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn hc_report_json(
    report: *const HcReport,
    out: *mut *mut c_char,
) -> HcStatus {
    if report.is_null() || out.is_null() {
        set_error("null pointer argument");
        return HcStatus::HcErrNull;
    }
    *out = CString::new((*report).json()).unwrap().into_raw();
    HcStatus::HcOk
}

/// Release a report handle.
///
/// # Safety
/// `report` must be a handle from this library or null; it must not be
/// used afterwards.
#[no_mangle]
pub unsafe extern "C" fn hc_report_free(report: *mut HcReport) {
    if !report.is_null() {
        drop(Box::from_raw(report));
    }
}

/// Release a string returned by this library.
///
/// # Safety
/// `s` must be a string from this library or null; it must not be used
/// afterwards.
#[no_mangle]
pub unsafe extern "C" fn hc_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cstr(s: &str) -> CString {
        CString::new(s).unwrap()
    }

    unsafe fn take_string(p: *mut c_char) -> String {
        let s = CStr::from_ptr(p).to_str().unwrap().to_string();
        hc_string_free(p);
        s
    }

    #[test]
    fn fixture_verify_roundtrip() {
        unsafe {
            let mut session = ptr::null_mut();
            let st = hc_session_from_fixture(cstr("sl2-split").as_ptr(), &mut session);
            assert_eq!(st, HcStatus::HcOk);
            let mut report = ptr::null_mut();
            assert_eq!(hc_verify(session, 3, 0, &mut report), HcStatus::HcOk);
            assert_eq!(hc_report_passed(report), 1);
            let mut text = ptr::null_mut();
            assert_eq!(hc_report_text(report, &mut text), HcStatus::HcOk);
            assert!(take_string(text).contains("PASS sl2.jacobi"));
            let mut json = ptr::null_mut();
            assert_eq!(hc_report_json(report, &mut json), HcStatus::HcOk);
            assert!(take_string(json).contains("\"check_id\""));
            hc_report_free(report);
            hc_session_free(session);
        }
    }

    #[test]
    fn parse_print_and_errors() {
        unsafe {
            let mut session = ptr::null_mut();
            let st = hc_session_parse(cstr("[run]\nchecks = jacobi\n").as_ptr(), &mut session);
            assert_eq!(st, HcStatus::HcOk);
            let mut text = ptr::null_mut();
            assert_eq!(hc_session_print(session, &mut text), HcStatus::HcOk);
            assert!(take_string(text).contains("[run]"));
            // `jacobi` without a [lie] section is a run error.
            let mut report = ptr::null_mut();
            assert_eq!(hc_verify(session, 3, 0, &mut report), HcStatus::HcErrRun);
            assert!(report.is_null());
            hc_session_free(session);

            let st = hc_session_parse(cstr("nonsense\n").as_ptr(), &mut session);
            assert_eq!(st, HcStatus::HcErrParse);
            let msg = CStr::from_ptr(hc_last_error()).to_str().unwrap();
            assert!(msg.contains("line 1"), "{msg}");

            let st = hc_session_from_fixture(cstr("no-such").as_ptr(), &mut session);
            assert_eq!(st, HcStatus::HcErrUnknownFixture);

            assert_eq!(
                hc_session_parse(ptr::null(), &mut session),
                HcStatus::HcErrNull
            );
        }
    }

    #[test]
    fn cohomology_dims_via_abi() {
        unsafe {
            let mut session = ptr::null_mut();
            assert_eq!(
                hc_session_from_fixture(cstr("sl2-truncated").as_ptr(), &mut session),
                HcStatus::HcOk
            );
            let mut report = ptr::null_mut();
            assert_eq!(hc_cohomology(session, &mut report), HcStatus::HcOk);
            let (mut hp0, mut hp1) = (0u32, 0u32);
            assert_eq!(
                hc_report_hp_dims(report, &mut hp0, &mut hp1),
                HcStatus::HcOk
            );
            assert_eq!((hp0, hp1), (1, 1));
            hc_report_free(report);
            hc_session_free(session);
        }
    }

    #[test]
    fn transport_via_abi() {
        unsafe {
            let mut session = ptr::null_mut();
            assert_eq!(
                hc_session_from_fixture(cstr("odd-cocycle").as_ptr(), &mut session),
                HcStatus::HcOk
            );
            let mut report = ptr::null_mut();
            assert_eq!(hc_transport(session, &mut report), HcStatus::HcOk);
            assert_eq!(hc_report_passed(report), 1);
            let mut text = ptr::null_mut();
            assert_eq!(hc_report_text(report, &mut text), HcStatus::HcOk);
            let text = take_string(text);
            assert!(text.contains("cocycle:"), "{text}");
            // Wrong-kind accessor is rejected.
            let (mut a, mut b) = (0u32, 0u32);
            assert_eq!(
                hc_report_hp_dims(report, &mut a, &mut b),
                HcStatus::HcErrRun
            );
            hc_report_free(report);
            hc_session_free(session);
        }
    }
}
