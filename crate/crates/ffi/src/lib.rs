//! C interface to the `ultimate` engine.
//!
//! Every fallible function returns a [`UltStatus`]. On failure a message for
//! the calling thread is available from [`ult_last_error`]. Objects are
//! opaque handles released with their matching `*_free` function; strings
//! returned through out-parameters are released with [`ult_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ultimate::lp::{classify_ek, normalize, parse, NormalProgram, Truth};
use ultimate::semantics::{oracle_check, solve, Limits, Method, SemanticsResult};
use ultimate::Error;

/// Status codes. The first five match the exit codes of the command-line tool.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum UltStatus {
    Ok = 0,
    Usage = 1,
    Parse = 2,
    Resource = 3,
    Mismatch = 4,
    NullPointer = 5,
    Internal = 6,
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum UltMethod {
    Kk = 0,
    Wf = 1,
    Stable = 2,
    Supported = 3,
    UltimateKk = 4,
    UltimateWf = 5,
    UltimateStable = 6,
    All = 7,
}

impl From<UltMethod> for Method {
    fn from(m: UltMethod) -> Method {
        match m {
            UltMethod::Kk => Method::Kk,
            UltMethod::Wf => Method::Wf,
            UltMethod::Stable => Method::Stable,
            UltMethod::Supported => Method::Supported,
            UltMethod::UltimateKk => Method::UltimateKk,
            UltMethod::UltimateWf => Method::UltimateWf,
            UltMethod::UltimateStable => Method::UltimateStable,
            UltMethod::All => Method::All,
        }
    }
}

#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum UltTruth {
    False = 0,
    True = 1,
    Unknown = 2,
}

/// Enumeration caps. Pass a null pointer wherever one is accepted to use
/// [`ult_limits_default`].
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct UltLimits {
    pub max_taut_vars: u32,
    pub max_enum_atoms: u32,
    pub max_pair_sweep: u32,
}

impl From<UltLimits> for Limits {
    fn from(l: UltLimits) -> Limits {
        Limits {
            max_taut_vars: l.max_taut_vars as usize,
            max_enum_atoms: l.max_enum_atoms as usize,
            max_pair_sweep: l.max_pair_sweep as usize,
        }
    }
}

/// A parsed program in normal form.
pub struct UltProgram {
    np: NormalProgram,
    source: ultimate::lp::Program,
}

/// The outcome of [`ult_solve`].
pub struct UltSolution {
    result: SemanticsResult,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> UltStatus {
    match e {
        Error::Parse { .. } => UltStatus::Parse,
        Error::Resource { .. } => UltStatus::Resource,
        Error::Internal(_) => UltStatus::Internal,
        _ => UltStatus::Usage,
    }
}

struct Fail(UltStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(UltStatus::NullPointer, format!("{what} is null"))
}

fn usage(msg: impl Into<String>) -> Fail {
    Fail(UltStatus::Usage, msg.into())
}

/// Runs `body`, converting errors and panics into a status code.
fn guard(body: impl FnOnce() -> Result<(), Fail>) -> UltStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            UltStatus::Ok
        }
        Ok(Err(Fail(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("panic inside the library");
            UltStatus::Internal
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

fn limits_from(p: *const UltLimits) -> Limits {
    // SAFETY: callers pass either null or a valid pointer.
    match unsafe { p.as_ref() } {
        Some(l) => (*l).into(),
        None => Limits::default(),
    }
}

fn owned_c_string(s: &str) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(UltStatus::Internal, "string contains a NUL byte".into()))
}

/// The default caps: 20 tautology variables, 20 enumerated atoms and 12 atoms
/// for consistent-pair sweeps.
#[no_mangle]
pub extern "C" fn ult_limits_default() -> UltLimits {
    let d = Limits::default();
    UltLimits {
        max_taut_vars: d.max_taut_vars as u32,
        max_enum_atoms: d.max_enum_atoms as u32,
        max_pair_sweep: d.max_pair_sweep as u32,
    }
}

/// Message describing the last failure on this thread, or an empty string.
/// The pointer stays valid until the next call into the library on this thread.
#[no_mangle]
pub extern "C" fn ult_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses a NUL-terminated UTF-8 program text.
///
/// # Safety
/// `text` must be null or a valid C string; `out` must be null or writable.
#[no_mangle]
pub unsafe extern "C" fn ult_program_parse(
    text: *const c_char,
    out: *mut *mut UltProgram,
) -> UltStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let text = CStr::from_ptr(text)
            .to_str()
            .map_err(|_| usage("program text is not UTF-8"))?;
        let source = parse(text)?;
        let handle = Box::new(UltProgram {
            np: normalize(&source),
            source,
        });
        write(out, Box::into_raw(handle), "out")
    })
}

/// # Safety
/// `program` must be null or a handle from [`ult_program_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ult_program_free(program: *mut UltProgram) {
    if !program.is_null() {
        drop(Box::from_raw(program));
    }
}

/// Number of atoms in the program's universe, or 0 for a null handle.
///
/// # Safety
/// `program` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ult_program_atom_count(program: *const UltProgram) -> usize {
    program.as_ref().map_or(0, |p| p.np.len())
}

/// Name of atom `index` (atoms are sorted by name). Free the result with
/// [`ult_string_free`].
///
/// # Safety
/// `program` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ult_program_atom_name(
    program: *const UltProgram,
    index: usize,
    out: *mut *mut c_char,
) -> UltStatus {
    guard(|| {
        let p = deref(program, "program")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let name =
            p.np.universe()
                .names()
                .get(index)
                .ok_or_else(|| usage(format!("atom index {index} out of range")))?;
        write(out, owned_c_string(name)?, "out")
    })
}

/// Whether every atom satisfies one of the tractability conditions for `k`.
///
/// # Safety
/// `program` must be a live handle; `member` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ult_classify(
    program: *const UltProgram,
    k: usize,
    member: *mut bool,
) -> UltStatus {
    guard(|| {
        let p = deref(program, "program")?;
        write(member, classify_ek(&p.source, k).member, "member")
    })
}

/// Computes a semantics. `limits` may be null.
///
/// # Safety
/// `program` must be a live handle; `limits` null or valid; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ult_solve(
    program: *const UltProgram,
    method: UltMethod,
    limits: *const UltLimits,
    out: *mut *mut UltSolution,
) -> UltStatus {
    guard(|| {
        let p = deref(program, "program")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let result = solve(&p.np, method.into(), &limits_from(limits))?;
        write(out, Box::into_raw(Box::new(UltSolution { result })), "out")
    })
}

/// Runs the oracle cross-checks. Returns [`UltStatus::Mismatch`] when a fast
/// procedure disagrees with its brute-force reference; the witness is then
/// available from [`ult_last_error`].
///
/// # Safety
/// `program` must be a live handle; `limits` null or valid.
#[no_mangle]
pub unsafe extern "C" fn ult_oracle_check(
    program: *const UltProgram,
    limits: *const UltLimits,
) -> UltStatus {
    guard(|| {
        let p = deref(program, "program")?;
        let report = oracle_check(&p.np, &limits_from(limits), false)?;
        if report.passed() {
            Ok(())
        } else {
            Err(Fail(UltStatus::Mismatch, report.render_text()))
        }
    })
}

/// # Safety
/// `solution` must be null or a handle from [`ult_solve`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ult_solution_free(solution: *mut UltSolution) {
    if !solution.is_null() {
        drop(Box::from_raw(solution));
    }
}

/// Truth value of atom `index` in a pair-valued solution (`kk`, `wf` and
/// their ultimate variants).
///
/// # Safety
/// `solution` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ult_solution_truth(
    solution: *const UltSolution,
    index: usize,
    out: *mut UltTruth,
) -> UltStatus {
    guard(|| {
        let r = &deref(solution, "solution")?.result;
        let truth = r
            .truth
            .as_ref()
            .ok_or_else(|| usage(format!("method {} has no truth assignment", r.method)))?;
        let atom = r
            .atoms
            .get(index)
            .ok_or_else(|| usage(format!("atom index {index} out of range")))?;
        let t = match truth[atom] {
            Truth::False => UltTruth::False,
            Truth::True => UltTruth::True,
            Truth::Unknown => UltTruth::Unknown,
        };
        write(out, t, "out")
    })
}

fn models_of(r: &SemanticsResult) -> Result<&[Vec<String>], Fail> {
    r.models
        .as_deref()
        .ok_or_else(|| usage(format!("method {} has no model list", r.method)))
}

/// Number of models in a model-valued solution (`stable`, `supported`,
/// `ultimate-stable`).
///
/// # Safety
/// `solution` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ult_solution_model_count(
    solution: *const UltSolution,
    out: *mut usize,
) -> UltStatus {
    guard(|| {
        let r = &deref(solution, "solution")?.result;
        write(out, models_of(r)?.len(), "out")
    })
}

/// Whether model `model` contains atom `index`.
///
/// # Safety
/// `solution` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ult_solution_model_contains(
    solution: *const UltSolution,
    model: usize,
    index: usize,
    out: *mut bool,
) -> UltStatus {
    guard(|| {
        let r = &deref(solution, "solution")?.result;
        let m = models_of(r)?
            .get(model)
            .ok_or_else(|| usage(format!("model index {model} out of range")))?;
        let atom = r
            .atoms
            .get(index)
            .ok_or_else(|| usage(format!("atom index {index} out of range")))?;
        write(out, m.contains(atom), "out")
    })
}

/// The solution as a JSON document. Free the result with [`ult_string_free`].
///
/// # Safety
/// `solution` must be a live handle; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ult_solution_to_json(
    solution: *const UltSolution,
    out: *mut *mut c_char,
) -> UltStatus {
    guard(|| {
        let r = &deref(solution, "solution")?.result;
        if out.is_null() {
            return Err(null("out"));
        }
        write(out, owned_c_string(&r.to_json())?, "out")
    })
}

/// # Safety
/// `s` must be null or a string returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ult_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}
