//! C interface to `slidewin`.
//!
//! Automata and streaming runners are opaque handles created by `sw_*_new`
//! or `sw_*_parse` functions and released by the matching `sw_*_free`.
//! Every fallible call returns an [`SwStatus`]; on failure a description
//! is available from [`sw_last_error`] until the next failing call on the
//! same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use slidewin::automata::{determinize_with, parse_any, Automaton, Dfa, DEFAULT_STATE_BUDGET};
use slidewin::classify::{classify_nfa_with, decide, FixedClass, Problem, VariableClass};
use slidewin::exactspace::{exact_f, exact_v, optimal_variable_algorithm, sparse_fixed_algorithm};
use slidewin::report::{ClassifyResult, Report};
use slidewin::streaming::{FixedWindowSpec, Runner, Simulation, StreamToken};
use slidewin::Error;

/// Result of a C API call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidInput = 4,
    UnknownSymbol = 5,
    Budget = 6,
    TrivialLanguage = 7,
    Precondition = 8,
    Internal = 9,
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwFixedClass {
    Constant = 0,
    Logarithmic = 1,
    Linear = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwVariableClass {
    TrivialConstant = 0,
    Logarithmic = 1,
    Linear = 2,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SwProblem {
    Dfa1 = 0,
    DfaLog = 1,
    Nfa1 = 2,
    NfaLog = 3,
}

/// A parsed DFA or NFA.
pub struct SwAutomaton {
    inner: Automaton,
}

/// A streaming algorithm together with its current state.
pub struct SwStream {
    runner: Box<dyn Simulation>,
    alphabet_len: usize,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior nul removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> SwStatus {
    match e {
        Error::Parse { .. } => SwStatus::Parse,
        Error::Invalid(_)
        | Error::AlphabetMismatch { .. }
        | Error::NotMinimal
        | Error::EmptyPart(_)
        | Error::Io(_) => SwStatus::InvalidInput,
        Error::UnknownSymbol(_) => SwStatus::UnknownSymbol,
        Error::Budget { .. } => SwStatus::Budget,
        Error::TrivialLanguage => SwStatus::TrivialLanguage,
        Error::Precondition(_) => SwStatus::Precondition,
        Error::Internal(_) => SwStatus::Internal,
    }
}

struct Fail(SwStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SwStatus::NullPointer, format!("{what} is null"))
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SwStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SwStatus::Ok,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("panic inside slidewin".into());
            SwStatus::Panic
        }
    }
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(SwStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn ref_arg<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn out_arg<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Fail> {
    p.as_mut().ok_or_else(|| null(what))
}

fn into_c_string(s: String) -> Result<*mut c_char, Fail> {
    CString::new(s)
        .map(CString::into_raw)
        .map_err(|_| Fail(SwStatus::Internal, "output contains nul byte".into()))
}

impl SwAutomaton {
    fn dfa(&self) -> Result<Dfa, Error> {
        match &self.inner {
            Automaton::Dfa(d) => Ok(d.clone()),
            Automaton::Nfa(n) => determinize_with(n, DEFAULT_STATE_BUDGET),
        }
    }
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next failing call on this thread.
#[no_mangle]
pub extern "C" fn sw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Releases a string returned by this library.
///
/// # Safety
/// `s` must be null or a pointer returned by this library and not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sw_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses an automaton in text or JSON form.
///
/// # Safety
/// `src` must be a nul-terminated string and `out` a writable pointer.
#[no_mangle]
pub unsafe extern "C" fn sw_automaton_parse(
    src: *const c_char,
    out: *mut *mut SwAutomaton,
) -> SwStatus {
    guard(|| {
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let inner = parse_any(str_arg(src, "src")?)?;
        *out = Box::into_raw(Box::new(SwAutomaton { inner }));
        Ok(())
    })
}

/// # Safety
/// `a` must be null or a handle from [`sw_automaton_parse`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sw_automaton_free(a: *mut SwAutomaton) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// Number of symbols in the automaton's alphabet.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_automaton_alphabet_len(
    a: *const SwAutomaton,
    out: *mut usize,
) -> SwStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(a, "automaton")?.inner.alphabet().len();
        Ok(())
    })
}

/// Index of the symbol spelled `token`.
///
/// # Safety
/// `a` must be a live handle, `token` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_automaton_symbol(
    a: *const SwAutomaton,
    token: *const c_char,
    out: *mut usize,
) -> SwStatus {
    guard(|| {
        let a = ref_arg(a, "automaton")?;
        *out_arg(out, "out")? = a.inner.alphabet().symbol(str_arg(token, "token")?)?;
        Ok(())
    })
}

/// Membership of a whitespace-separated word (single-character alphabets
/// may also be written without spaces).
///
/// # Safety
/// `a` must be a live handle, `word` nul-terminated, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_automaton_accepts(
    a: *const SwAutomaton,
    word: *const c_char,
    out: *mut bool,
) -> SwStatus {
    guard(|| {
        let a = ref_arg(a, "automaton")?;
        let w = a.inner.alphabet().parse_word(str_arg(word, "word")?)?;
        *out_arg(out, "out")? = a.inner.to_nfa().accepts(&w);
        Ok(())
    })
}

/// Space class in the fixed-size and variable-size window models.
///
/// # Safety
/// `a` must be a live handle; both outputs writable.
#[no_mangle]
pub unsafe extern "C" fn sw_classify(
    a: *const SwAutomaton,
    fixed: *mut SwFixedClass,
    variable: *mut SwVariableClass,
) -> SwStatus {
    guard(|| {
        let a = ref_arg(a, "automaton")?;
        let fixed = out_arg(fixed, "fixed")?;
        let variable = out_arg(variable, "variable")?;
        let c = classify_nfa_with(&a.inner.to_nfa(), DEFAULT_STATE_BUDGET)?;
        *fixed = match c.class.fixed {
            FixedClass::Constant => SwFixedClass::Constant,
            FixedClass::Logarithmic => SwFixedClass::Logarithmic,
            FixedClass::Linear => SwFixedClass::Linear,
        };
        *variable = match c.class.variable {
            VariableClass::TrivialConstant => SwVariableClass::TrivialConstant,
            VariableClass::Logarithmic => SwVariableClass::Logarithmic,
            VariableClass::Linear => SwVariableClass::Linear,
        };
        Ok(())
    })
}

/// Classification report with witnesses as a JSON string; release it with
/// [`sw_string_free`].
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_classify_json(
    a: *const SwAutomaton,
    out: *mut *mut c_char,
) -> SwStatus {
    guard(|| {
        let a = ref_arg(a, "automaton")?;
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let c = classify_nfa_with(&a.inner.to_nfa(), DEFAULT_STATE_BUDGET)?;
        let report = Report {
            command: "classify".into(),
            args: Vec::new(),
            input_digest: None,
            result: ClassifyResult::new(&c),
            notes: Vec::new(),
            timing_ms: None,
        };
        let json = serde_json::to_string_pretty(&report)
            .map_err(|e| Fail(SwStatus::Internal, e.to_string()))?;
        *out = into_c_string(json)?;
        Ok(())
    })
}

/// Answers one of the four decision problems; `answer` is true when the
/// language lies in the class.
///
/// # Safety
/// `a` must be a live handle and `answer` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_decide(
    a: *const SwAutomaton,
    problem: SwProblem,
    answer: *mut bool,
) -> SwStatus {
    guard(|| {
        let a = ref_arg(a, "automaton")?;
        let answer = out_arg(answer, "answer")?;
        let problem = match problem {
            SwProblem::Dfa1 => Problem::Dfa1,
            SwProblem::DfaLog => Problem::Dfalog,
            SwProblem::Nfa1 => Problem::Nfa1,
            SwProblem::NfaLog => Problem::Nfalog,
        };
        *answer = decide(problem, &a.inner.to_nfa(), DEFAULT_STATE_BUDGET)?.answer;
        Ok(())
    })
}

/// Exact fixed-size space `F(n)` in bits.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_exact_fixed_space(
    a: *const SwAutomaton,
    n: usize,
    out: *mut usize,
) -> SwStatus {
    guard(|| {
        let d = ref_arg(a, "automaton")?.dfa()?;
        *out_arg(out, "out")? = exact_f(&d, n)?;
        Ok(())
    })
}

/// Exact variable-size space `V(n)` in bits.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_exact_variable_space(
    a: *const SwAutomaton,
    n: usize,
    out: *mut usize,
) -> SwStatus {
    guard(|| {
        let d = ref_arg(a, "automaton")?.dfa()?;
        *out_arg(out, "out")? = exact_v(&d, n)?;
        Ok(())
    })
}

fn new_stream(runner: Box<dyn Simulation>, alphabet_len: usize, out: &mut *mut SwStream) {
    *out = Box::into_raw(Box::new(SwStream {
        runner,
        alphabet_len,
    }));
}

/// Space-optimal variable-size window algorithm for a non-trivial language.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_stream_new_variable(
    a: *const SwAutomaton,
    out: *mut *mut SwStream,
) -> SwStatus {
    guard(|| {
        let a = ref_arg(a, "automaton")?;
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let alg = optimal_variable_algorithm(&a.dfa()?)?;
        new_stream(Box::new(Runner::new(alg)), a.inner.alphabet().len(), out);
        Ok(())
    })
}

/// Fixed-size window algorithm for window length `n`; the window starts
/// filled with symbol 0.
///
/// # Safety
/// `a` must be a live handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_stream_new_fixed(
    a: *const SwAutomaton,
    n: usize,
    out: *mut *mut SwStream,
) -> SwStatus {
    guard(|| {
        let a = ref_arg(a, "automaton")?;
        let out = out_arg(out, "out")?;
        *out = ptr::null_mut();
        let alg = sparse_fixed_algorithm(&a.dfa()?, FixedWindowSpec::new(n))?;
        new_stream(Box::new(Runner::new(alg)), a.inner.alphabet().len(), out);
        Ok(())
    })
}

/// # Safety
/// `s` must be null or a live stream handle.
#[no_mangle]
pub unsafe extern "C" fn sw_stream_free(s: *mut SwStream) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Feeds symbol index `symbol`.
///
/// # Safety
/// `s` must be a live stream handle.
#[no_mangle]
pub unsafe extern "C" fn sw_stream_push(s: *mut SwStream, symbol: usize) -> SwStatus {
    guard(|| {
        let s = out_arg(s, "stream")?;
        if symbol >= s.alphabet_len {
            return Err(Error::UnknownSymbol(symbol.to_string()).into());
        }
        s.runner.push(StreamToken::Symbol(symbol));
        Ok(())
    })
}

/// Expires the oldest symbol; ignored by fixed-size streams.
///
/// # Safety
/// `s` must be a live stream handle.
#[no_mangle]
pub unsafe extern "C" fn sw_stream_pop(s: *mut SwStream) -> SwStatus {
    guard(|| {
        out_arg(s, "stream")?.runner.push(StreamToken::Pop);
        Ok(())
    })
}

/// Whether the current window belongs to the language.
///
/// # Safety
/// `s` must be a live stream handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_stream_accepts(s: *const SwStream, out: *mut bool) -> SwStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(s, "stream")?.runner.accepts();
        Ok(())
    })
}

/// Length in bits of the current state's encoding.
///
/// # Safety
/// `s` must be a live stream handle and `out` writable.
#[no_mangle]
pub unsafe extern "C" fn sw_stream_state_bits(s: *const SwStream, out: *mut usize) -> SwStatus {
    guard(|| {
        *out_arg(out, "out")? = ref_arg(s, "stream")?.runner.encoded().len();
        Ok(())
    })
}
