//! C interface to `shadow_markoff`.
//!
//! Every fallible function returns an [`SmStatus`]; on failure a message is
//! available from [`sm_last_error_message`] on the same thread. Strings
//! returned through `char **` out-parameters are owned by the caller and must
//! be released with [`sm_string_free`]. Rationals are passed as text
//! (`"p"`, `"p/q"` or decimals), lists comma-separated.

use std::cell::RefCell;
use std::ffi::{c_char, c_int, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use shadow_markoff::positivity::constraints::ConstraintSet;
use shadow_markoff::positivity::geometry::ChartPoint;
use shadow_markoff::positivity::witness::find_witness;
use shadow_markoff::rational::parse_rational_list;
use shadow_markoff::tree::{build_tree_limited, path, rows_to_sage_pretty, MovePath, ShadowTree, DEFAULT_MAX_HEIGHT};
use shadow_markoff::{Error, Rational};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    DivisionByZero = 4,
    DepthLimit = 5,
    Precondition = 6,
    Internal = 7,
}

/// Opaque shadow tree.
pub struct SmTree {
    tree: ShadowTree,
}

/// Opaque set of positivity half-planes to a fixed depth.
pub struct SmConstraintSet {
    set: ConstraintSet,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

struct Failure {
    status: SmStatus,
    message: String,
}

impl Failure {
    fn new(status: SmStatus, message: impl Into<String>) -> Self {
        Self {
            status,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Parse { .. } => SmStatus::ParseError,
            Error::DivisionByZero(_) | Error::NonIntegral { .. } => SmStatus::DivisionByZero,
            Error::DepthLimit { .. } | Error::DigitBudget { .. } => SmStatus::DepthLimit,
            _ => SmStatus::Precondition,
        };
        Failure::new(status, e.to_string())
    }
}

fn set_last_error(message: &str) {
    let c = CString::new(message.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> SmStatus {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|_| {
        Err(Failure::new(SmStatus::Internal, "internal panic"))
    });
    match outcome {
        Ok(()) => {
            set_last_error("");
            SmStatus::Ok
        }
        Err(f) => {
            set_last_error(&f.message);
            f.status
        }
    }
}

unsafe fn read_str<'a>(ptr: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if ptr.is_null() {
        return Err(Failure::new(SmStatus::NullPointer, format!("{what} is null")));
    }
    CStr::from_ptr(ptr)
        .to_str()
        .map_err(|_| Failure::new(SmStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

fn non_null<T>(ptr: *const T, what: &str) -> Result<(), Failure> {
    if ptr.is_null() {
        Err(Failure::new(SmStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

fn into_c_string(s: String) -> *mut c_char {
    CString::new(s).expect("no interior NUL in generated text").into_raw()
}

fn parse_triple(s: &str) -> Result<[Rational; 3], Failure> {
    let v = parse_rational_list(s, 3)?;
    Ok(v.try_into().expect("three values"))
}

fn parse_point(s: &str) -> Result<ChartPoint, Failure> {
    let v = parse_rational_list(s, 2)?;
    let [a, b]: [Rational; 2] = v.try_into().expect("two values");
    Ok(ChartPoint::new(a, b))
}

/// Message describing the last failure on this thread; empty after success.
/// The pointer stays valid until the next call into this library on the
/// same thread.
#[no_mangle]
pub extern "C" fn sm_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `s` must be null or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sm_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Builds the tree of `height` levels below the prefix node for the root
/// shadows `root` (`"alpha,beta,gamma"`).
///
/// # Safety
/// `root` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_tree_build(root: *const c_char, height: usize, out: *mut *mut SmTree) -> SmStatus {
    guard(|| {
        non_null(out, "out")?;
        let [a, b, c] = parse_triple(read_str(root, "root")?)?;
        let tree = build_tree_limited(a, b, c, height, DEFAULT_MAX_HEIGHT)?;
        *out = Box::into_raw(Box::new(SmTree { tree }));
        Ok(())
    })
}

/// # Safety
/// `tree` must be null or a handle from [`sm_tree_build`], not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sm_tree_free(tree: *mut SmTree) {
    if !tree.is_null() {
        drop(Box::from_raw(tree));
    }
}

/// Number of nodes, or 0 for a null handle.
///
/// # Safety
/// `tree` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sm_tree_node_count(tree: *const SmTree) -> usize {
    tree.as_ref().map_or(0, |t| t.tree.node_count())
}

/// Nested-list text of the tree, indented one space per level.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_tree_to_sage(tree: *const SmTree, out: *mut *mut c_char) -> SmStatus {
    guard(|| {
        non_null(tree, "tree")?;
        non_null(out, "out")?;
        *out = into_c_string((*tree).tree.to_sage_pretty());
        Ok(())
    })
}

/// JSON nested list with rationals as `"p/q"` strings.
///
/// # Safety
/// `tree` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_tree_to_json(tree: *const SmTree, out: *mut *mut c_char) -> SmStatus {
    guard(|| {
        non_null(tree, "tree")?;
        non_null(out, "out")?;
        *out = into_c_string((*tree).tree.to_json().to_string());
        Ok(())
    })
}

/// Rows visited from `root` along `r`, `l`, then `word`, one row per line.
///
/// # Safety
/// `root` and `word` must be NUL-terminated strings and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_path(root: *const c_char, word: *const c_char, out: *mut *mut c_char) -> SmStatus {
    guard(|| {
        non_null(out, "out")?;
        let [a, b, c] = parse_triple(read_str(root, "root")?)?;
        let word: MovePath = read_str(word, "word")?.parse()?;
        *out = into_c_string(rows_to_sage_pretty(&path(a, b, c, &word)?));
        Ok(())
    })
}

/// Breadth-first search for a negative shadow from the chart point
/// `"alpha,beta"`. Sets `*found` to 1 and `*description` to a text such as
/// `word="lr" row=4 field=gamma value=-3` when one exists, otherwise `*found`
/// is 0 and `*description` null.
///
/// # Safety
/// `point` must be a NUL-terminated string; `found` and `description` valid
/// pointers.
#[no_mangle]
pub unsafe extern "C" fn sm_find_witness(
    point: *const c_char,
    max_depth: usize,
    found: *mut c_int,
    description: *mut *mut c_char,
) -> SmStatus {
    guard(|| {
        non_null(found, "found")?;
        non_null(description, "description")?;
        let p = parse_point(read_str(point, "point")?)?;
        match find_witness(&p, max_depth)? {
            Some(w) => {
                *found = 1;
                *description = into_c_string(w.to_string());
            }
            None => {
                *found = 0;
                *description = ptr::null_mut();
            }
        }
        Ok(())
    })
}

/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn sm_constraint_set_build(depth: usize, out: *mut *mut SmConstraintSet) -> SmStatus {
    guard(|| {
        non_null(out, "out")?;
        if depth > DEFAULT_MAX_HEIGHT {
            return Err(Error::DepthLimit {
                requested: depth,
                limit: DEFAULT_MAX_HEIGHT,
            }
            .into());
        }
        *out = Box::into_raw(Box::new(SmConstraintSet {
            set: ConstraintSet::build(depth),
        }));
        Ok(())
    })
}

/// # Safety
/// `set` must be null or a handle from [`sm_constraint_set_build`], not yet
/// freed.
#[no_mangle]
pub unsafe extern "C" fn sm_constraint_set_free(set: *mut SmConstraintSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of distinct half-planes, or 0 for a null handle.
///
/// # Safety
/// `set` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn sm_constraint_set_len(set: *const SmConstraintSet) -> usize {
    set.as_ref().map_or(0, |s| s.set.len())
}

/// Sets `*positive` to 1 when the chart point satisfies every half-plane.
/// Otherwise `*positive` is 0 and, if `witness_word` is non-null, it receives
/// the word of the first violated half-plane.
///
/// # Safety
/// `set` must be a live handle, `point` a NUL-terminated string, `positive`
/// valid; `witness_word` may be null.
#[no_mangle]
pub unsafe extern "C" fn sm_constraint_set_classify(
    set: *const SmConstraintSet,
    point: *const c_char,
    positive: *mut c_int,
    witness_word: *mut *mut c_char,
) -> SmStatus {
    guard(|| {
        non_null(set, "set")?;
        non_null(positive, "positive")?;
        let p = parse_point(read_str(point, "point")?)?;
        let witness = (*set).set.witness(&p);
        *positive = c_int::from(witness.is_none());
        if !witness_word.is_null() {
            *witness_word = match witness {
                Some(w) => into_c_string(w.word.to_string()),
                None => ptr::null_mut(),
            };
        }
        Ok(())
    })
}
