//! C interface to `qldpc`.
//!
//! Codes are passed as opaque `QldpcCode` handles. Every fallible function
//! returns a [`QldpcStatus`]; on failure, [`qldpc_last_error`] gives a message
//! for the calling thread. Error and syndrome symbols are bytes `0..=3`
//! meaning `0, ω, ω̄, 1` (Pauli `I, X, Z, Y`).

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qldpc::config::{build_code, Family};
use qldpc::decoder::{Algorithm, Decoder, DecoderConfig, DepolarizingPrior};
use qldpc::gf4::{F4Vector, F4};
use qldpc::sim::{run_sweep, SweepSpec};
use qldpc::stabilizer::{logical_count, ParityCheck, SyndromeVector};
use qldpc::{qpc, Error};

/// Result codes.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QldpcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    Construction = 4,
    Io = 5,
    Panic = 6,
}

/// Decoder selection.
#[repr(C)]
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum QldpcAlgorithm {
    MinSum = 0,
    SumProduct = 1,
}

/// Opaque code handle.
pub struct QldpcCode {
    inner: ParityCheck,
}

/// Tallies from [`qldpc_simulate`]. Rates are NaN when `trials` is 0.
#[repr(C)]
#[derive(Copy, Clone, Debug, Default)]
pub struct QldpcStats {
    pub channel_p: f64,
    pub trials: u64,
    pub successes: u64,
    pub logical_errors: u64,
    pub detected_failures: u64,
    pub bler: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).unwrap_or_default());
}

fn status_of(e: &Error) -> QldpcStatus {
    match e {
        Error::Parse { .. } | Error::Config(_) => QldpcStatus::Parse,
        Error::Io(_) => QldpcStatus::Io,
        Error::Construction(_)
        | Error::NotOrthogonal(..)
        | Error::InvalidSubgroup(_)
        | Error::Precondition(_)
        | Error::Singular { .. } => QldpcStatus::Construction,
        _ => QldpcStatus::InvalidArgument,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (QldpcStatus, String)>) -> QldpcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => QldpcStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic");
            QldpcStatus::Panic
        }
    }
}

type FfiResult<T> = Result<T, (QldpcStatus, String)>;

fn lib<T>(r: qldpc::Result<T>) -> FfiResult<T> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (QldpcStatus, String) {
    (QldpcStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> (QldpcStatus, String) {
    (QldpcStatus::InvalidArgument, msg.into())
}

unsafe fn str_arg<'a>(p: *const c_char, what: &str) -> FfiResult<&'a str> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| invalid(format!("{what} is not UTF-8")))
}

unsafe fn code_arg<'a>(code: *const QldpcCode) -> FfiResult<&'a ParityCheck> {
    code.as_ref().map(|c| &c.inner).ok_or_else(|| null("code"))
}

unsafe fn slice_arg<'a, T>(p: *const T, len: usize, what: &str) -> FfiResult<&'a [T]> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut_arg<'a, T>(p: *mut T, len: usize, what: &str) -> FfiResult<&'a mut [T]> {
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(null(what));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

fn check_len(what: &str, expected: usize, got: usize) -> FfiResult<()> {
    if expected == got {
        Ok(())
    } else {
        Err(invalid(format!("{what} has length {got}, expected {expected}")))
    }
}

unsafe fn emit(out: *mut *mut QldpcCode, code: ParityCheck) -> FfiResult<()> {
    if out.is_null() {
        return Err(null("out"));
    }
    *out = Box::into_raw(Box::new(QldpcCode { inner: code }));
    Ok(())
}

fn decoder_config(algorithm: QldpcAlgorithm, max_iterations: usize) -> DecoderConfig {
    DecoderConfig {
        algorithm: match algorithm {
            QldpcAlgorithm::MinSum => Algorithm::MinSum,
            QldpcAlgorithm::SumProduct => Algorithm::SumProduct,
        },
        max_iterations,
        ..DecoderConfig::default()
    }
}

/// Message for the last failed call on this thread. Valid until the next call
/// that fails on the same thread.
#[no_mangle]
pub extern "C" fn qldpc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses QPC text.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qldpc_code_from_qpc(text: *const c_char, out: *mut *mut QldpcCode) -> QldpcStatus {
    guard(|| {
        let text = str_arg(text, "text")?;
        emit(out, lib(qpc::parse(text))?)
    })
}

/// Reads a QPC file.
///
/// # Safety
/// `path` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qldpc_code_read_file(path: *const c_char, out: *mut *mut QldpcCode) -> QldpcStatus {
    guard(|| {
        let path = str_arg(path, "path")?;
        emit(out, lib(qpc::read_file(path))?)
    })
}

/// Builds a code from a TOML config. `family` is `"coset"` or `"cayley"`.
///
/// # Safety
/// `family` and `config` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qldpc_code_build(
    family: *const c_char,
    config: *const c_char,
    out: *mut *mut QldpcCode,
) -> QldpcStatus {
    guard(|| {
        let family: Family = lib(str_arg(family, "family")?.parse())?;
        let config = str_arg(config, "config")?;
        emit(out, lib(build_code(family, config))?.parity)
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `code` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn qldpc_code_free(code: *mut QldpcCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Number of qubits, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qldpc_code_n(code: *const QldpcCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.n())
}

/// Number of checks, or 0 for a null handle.
///
/// # Safety
/// `code` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qldpc_code_m(code: *const QldpcCode) -> usize {
    code.as_ref().map_or(0, |c| c.inner.m())
}

/// Number of logical qubits.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qldpc_code_k(code: *const QldpcCode, out: *mut usize) -> QldpcStatus {
    guard(|| {
        let m = code_arg(code)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = logical_count(m).k;
        Ok(())
    })
}

/// Writes the code as a QPC file.
///
/// # Safety
/// `code` must be a live handle and `path` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn qldpc_code_write_file(code: *const QldpcCode, path: *const c_char) -> QldpcStatus {
    guard(|| {
        let m = code_arg(code)?;
        let path = str_arg(path, "path")?;
        lib(qpc::write_file(m, path))
    })
}

/// Computes the syndrome bits (0 or 1) of an error given as `n` symbols.
///
/// # Safety
/// `error` must hold `n` bytes and `syndrome` room for `m` bytes.
#[no_mangle]
pub unsafe extern "C" fn qldpc_code_syndrome(
    code: *const QldpcCode,
    error: *const u8,
    n: usize,
    syndrome: *mut u8,
    m: usize,
) -> QldpcStatus {
    guard(|| {
        let c = code_arg(code)?;
        check_len("error", c.n(), n)?;
        check_len("syndrome", c.m(), m)?;
        let e = symbols(slice_arg(error, n, "error")?)?;
        let s = lib(c.syndrome(&e))?;
        let out = slice_mut_arg(syndrome, m, "syndrome")?;
        for (o, &b) in out.iter_mut().zip(&s.0) {
            *o = b as u8;
        }
        Ok(())
    })
}

fn symbols(bytes: &[u8]) -> FfiResult<F4Vector> {
    bytes
        .iter()
        .map(|&b| {
            if b < 4 {
                Ok(F4::from_code(b))
            } else {
                Err(invalid(format!("symbol {b} out of range")))
            }
        })
        .collect::<FfiResult<Vec<F4>>>()
        .map(F4Vector)
}

/// Decodes a syndrome of `m` bits under a depolarizing prior with parameter `p`
/// and writes `n` symbols to `estimate`.
///
/// # Safety
/// Buffers must match their lengths; `converged` and `iterations` may be null.
#[no_mangle]
pub unsafe extern "C" fn qldpc_decode(
    code: *const QldpcCode,
    syndrome: *const u8,
    m: usize,
    p: f64,
    algorithm: QldpcAlgorithm,
    max_iterations: usize,
    estimate: *mut u8,
    n: usize,
    converged: *mut bool,
    iterations: *mut usize,
) -> QldpcStatus {
    guard(|| {
        let c = code_arg(code)?;
        check_len("syndrome", c.m(), m)?;
        check_len("estimate", c.n(), n)?;
        let bits = slice_arg(syndrome, m, "syndrome")?;
        if let Some(b) = bits.iter().find(|&&b| b > 1) {
            return Err(invalid(format!("syndrome bit {b} out of range")));
        }
        let s = SyndromeVector(bits.iter().map(|&b| b == 1).collect());
        let prior = lib(DepolarizingPrior::new(p))?;
        let cfg = decoder_config(algorithm, max_iterations);
        let r = lib(Decoder::new(c).decode(&s, &prior, &cfg))?;
        let out = slice_mut_arg(estimate, n, "estimate")?;
        for (o, x) in out.iter_mut().zip(r.estimate.symbols()) {
            *o = x.code();
        }
        if let Some(v) = converged.as_mut() {
            *v = r.converged;
        }
        if let Some(v) = iterations.as_mut() {
            *v = r.iterations;
        }
        Ok(())
    })
}

/// Runs `trials` depolarizing-channel trials at parameter `p`.
///
/// # Safety
/// `code` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn qldpc_simulate(
    code: *const QldpcCode,
    p: f64,
    trials: u64,
    seed: u64,
    algorithm: QldpcAlgorithm,
    max_iterations: usize,
    workers: usize,
    out: *mut QldpcStats,
) -> QldpcStatus {
    guard(|| {
        let c = code_arg(code)?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let spec = SweepSpec {
            p_list: vec![p],
            trials: usize::try_from(trials).map_err(|_| invalid("too many trials"))?,
            decoder: decoder_config(algorithm, max_iterations),
            master_seed: seed,
        };
        let row = lib(run_sweep(c, &spec, workers))?.remove(0);
        let (lo, hi) = row.wilson().unwrap_or((f64::NAN, f64::NAN));
        *out = QldpcStats {
            channel_p: row.channel_p,
            trials: row.trials as u64,
            successes: row.successes as u64,
            logical_errors: row.logical_errors as u64,
            detected_failures: row.detected_failures as u64,
            bler: row.bler().unwrap_or(f64::NAN),
            ci_low: lo,
            ci_high: hi,
        };
        Ok(())
    })
}
