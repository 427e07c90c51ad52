//! C ABI over `semiclique`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `sc_*_free`. Every fallible function returns
//! an [`ScStatus`]; on failure the message is available from
//! [`sc_last_error`] on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::ptr;

use semiclique::instance::{load, save};
use semiclique::linear::spc1;
use semiclique::solvers::{solve_semirandom, CandidateList, SolverConfig};
use semiclique::{generate, AdversaryStrategy, Error, Instance, InstanceParams, SignedGraph};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Config = 3,
    Io = 4,
    Format = 5,
    Validation = 6,
    BufferTooSmall = 7,
    Panic = 8,
}

/// Signed adjacency matrix.
pub struct ScGraph {
    inner: SignedGraph,
}

/// Graph plus planted set and generation parameters.
pub struct ScInstance {
    inner: Instance,
}

/// Candidate cliques returned by a solver.
pub struct ScCandidateList {
    inner: CandidateList,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = Some(c));
}

fn fail(status: ScStatus, message: impl Into<String>) -> ScStatus {
    set_error(message.into());
    status
}

fn status_of(e: Error) -> ScStatus {
    let status = match &e {
        Error::Argument(_) => ScStatus::InvalidArgument,
        Error::Config { .. } => ScStatus::Config,
        Error::Io { .. } | Error::Csv(_) => ScStatus::Io,
        Error::Format(_) => ScStatus::Format,
        Error::Validation(_) => ScStatus::Validation,
    };
    fail(status, e.to_string())
}

fn guard(body: impl FnOnce() -> ScStatus) -> ScStatus {
    LAST_ERROR.with(|slot| *slot.borrow_mut() = None);
    catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| fail(ScStatus::Panic, "panic inside semiclique"))
}

unsafe fn text<'a>(s: *const c_char, what: &str) -> Result<&'a str, ScStatus> {
    if s.is_null() {
        return Err(fail(ScStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(s)
        .to_str()
        .map_err(|_| fail(ScStatus::InvalidArgument, format!("{what} is not UTF-8")))
}

macro_rules! check_null {
    ($($p:expr),+) => {
        $(if $p.is_null() {
            return fail(ScStatus::NullPointer, concat!(stringify!($p), " is null"));
        })+
    };
}

macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(status) => return status,
        }
    };
}

/// Message for the last failed call on this thread, or null. Valid until the
/// next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn sc_last_error() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Generates an instance. `adversary` uses the textual form, e.g.
/// `"sign_match:victims=4,pool=1024"`.
///
/// # Safety
/// `adversary` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_instance_generate(
    n: usize,
    k: usize,
    seed: u64,
    adversary: *const c_char,
    out: *mut *mut ScInstance,
) -> ScStatus {
    guard(|| {
        check_null!(out);
        let adversary: AdversaryStrategy = match attempt!(text(adversary, "adversary")).parse() {
            Ok(a) => a,
            Err(e) => return status_of(e),
        };
        match generate(&InstanceParams::new(n, k, seed, adversary)) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(ScInstance { inner }));
                ScStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}

/// Loads `<stem>.spc1` and `<stem>.meta`, validating the planted set.
///
/// # Safety
/// `stem` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_instance_load(stem: *const c_char, out: *mut *mut ScInstance) -> ScStatus {
    guard(|| {
        check_null!(out);
        let stem = PathBuf::from(attempt!(text(stem, "stem")));
        match load(stem) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(ScInstance { inner }));
                ScStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}

/// # Safety
/// `instance` must be a live handle and `stem` a valid C string.
#[no_mangle]
pub unsafe extern "C" fn sc_instance_save(instance: *const ScInstance, stem: *const c_char) -> ScStatus {
    guard(|| {
        check_null!(instance);
        let stem = PathBuf::from(attempt!(text(stem, "stem")));
        match save(&(*instance).inner, stem) {
            Ok(_) => ScStatus::Ok,
            Err(e) => status_of(e),
        }
    })
}

/// Copies the instance's graph into a new handle.
///
/// # Safety
/// `instance` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_instance_graph(instance: *const ScInstance, out: *mut *mut ScGraph) -> ScStatus {
    guard(|| {
        check_null!(instance, out);
        let inner = (*instance).inner.graph().clone();
        *out = Box::into_raw(Box::new(ScGraph { inner }));
        ScStatus::Ok
    })
}

/// Writes the planted set, sorted, into `buf`. `len` receives the set size
/// even when `cap` is too small.
///
/// # Safety
/// `instance` must be a live handle, `len` a valid pointer and `buf` valid
/// for `cap` writes (may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn sc_instance_planted(
    instance: *const ScInstance,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> ScStatus {
    guard(|| {
        check_null!(instance, len);
        copy_out((*instance).inner.planted().as_slice(), buf, cap, len)
    })
}

/// # Safety
/// `instance` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sc_instance_free(instance: *mut ScInstance) {
    if !instance.is_null() {
        drop(Box::from_raw(instance));
    }
}

/// Reads an SPC1 graph file.
///
/// # Safety
/// `path` must be a valid C string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_load(path: *const c_char, out: *mut *mut ScGraph) -> ScStatus {
    guard(|| {
        check_null!(out);
        let path = PathBuf::from(attempt!(text(path, "path")));
        match spc1::read(&path) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(ScGraph { inner }));
                ScStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}

/// # Safety
/// `graph` must be a live handle and `path` a valid C string.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_save(graph: *const ScGraph, path: *const c_char) -> ScStatus {
    guard(|| {
        check_null!(graph);
        let path = PathBuf::from(attempt!(text(path, "path")));
        match spc1::write(&(*graph).inner, &path) {
            Ok(()) => ScStatus::Ok,
            Err(e) => status_of(e),
        }
    })
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_n(graph: *const ScGraph) -> usize {
    if graph.is_null() {
        0
    } else {
        (*graph).inner.n()
    }
}

/// Inner product of columns `u` and `v` of the signed matrix.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_inner(graph: *const ScGraph, u: usize, v: usize, out: *mut i64) -> ScStatus {
    guard(|| {
        check_null!(graph, out);
        let g = &(*graph).inner;
        let value = g.column(u).and_then(|a| g.column(v).and_then(|b| a.inner(&b)));
        match value {
            Ok(x) => {
                *out = x;
                ScStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}

/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_degree(graph: *const ScGraph, v: usize, out: *mut usize) -> ScStatus {
    guard(|| {
        check_null!(graph, out);
        match (*graph).inner.degree(v) {
            Ok(d) => {
                *out = d;
                ScStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}

/// # Safety
/// `graph` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sc_graph_free(graph: *mut ScGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Runs the triple-sampling solver with default settings. A negative
/// `budget` selects the default number of sampled triples.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sc_solve_semirandom(
    graph: *const ScGraph,
    k: usize,
    seed: u64,
    budget: i64,
    out: *mut *mut ScCandidateList,
) -> ScStatus {
    guard(|| {
        check_null!(graph, out);
        let cfg = SolverConfig {
            sample_budget: usize::try_from(budget).ok(),
            ..SolverConfig::default()
        };
        match solve_semirandom(&(*graph).inner, k, &cfg, seed) {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(ScCandidateList { inner }));
                ScStatus::Ok
            }
            Err(e) => status_of(e),
        }
    })
}

/// Number of candidates, or 0 for a null handle.
///
/// # Safety
/// `list` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sc_list_len(list: *const ScCandidateList) -> usize {
    if list.is_null() {
        0
    } else {
        (*list).inner.len()
    }
}

/// Writes candidate `index` into `buf`; `len` receives its size even when
/// `cap` is too small.
///
/// # Safety
/// `list` must be a live handle, `len` a valid pointer and `buf` valid for
/// `cap` writes (may be null when `cap` is 0).
#[no_mangle]
pub unsafe extern "C" fn sc_list_get(
    list: *const ScCandidateList,
    index: usize,
    buf: *mut usize,
    cap: usize,
    len: *mut usize,
) -> ScStatus {
    guard(|| {
        check_null!(list, len);
        match (*list).inner.as_slice().get(index) {
            Some(set) => copy_out(set.as_slice(), buf, cap, len),
            None => fail(
                ScStatus::InvalidArgument,
                format!("candidate {index} out of range for list of {}", (*list).inner.len()),
            ),
        }
    })
}

/// # Safety
/// `list` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sc_list_free(list: *mut ScCandidateList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

unsafe fn copy_out(items: &[usize], buf: *mut usize, cap: usize, len: *mut usize) -> ScStatus {
    *len = items.len();
    if items.len() > cap {
        return fail(
            ScStatus::BufferTooSmall,
            format!("need room for {} entries, got {cap}", items.len()),
        );
    }
    if !items.is_empty() {
        check_null!(buf);
        ptr::copy_nonoverlapping(items.as_ptr(), buf, items.len());
    }
    ScStatus::Ok
}
