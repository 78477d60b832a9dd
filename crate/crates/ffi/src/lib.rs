//! C interface to `cremona-core`.
//!
//! Objects cross the boundary as opaque handles released with the matching
//! `*_free`. Every fallible call returns a [`CremonaStatus`]; on failure a
//! message is stored for the calling thread and can be read with
//! [`cremona_last_error`]. Strings returned through out-parameters are owned
//! by the caller and released with [`cremona_string_free`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use cremona_core::distortion::{
    bs_witnesses, jordan3_template, nilpotent_commutator_witness, sl2_doubling_witness,
};
use cremona_core::hyperbolic::{
    disjointness_certificate, epsilon_constants, CertificateStatus, Family, PMClass,
};
use cremona_core::maps::{iterate_degrees, BirMap, IterCaps};
use cremona_core::{heights, Error};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CremonaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    InvalidArgument = 4,
    VerificationFailed = 5,
    CapExceeded = 6,
    MathError = 7,
    BufferTooSmall = 8,
    Panic = 9,
}

/// A birational map of projective space.
pub struct CremonaMap(BirMap);

/// A class in the Picard-Manin space.
pub struct CremonaClass(PMClass);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn status_of(e: &Error) -> CremonaStatus {
    match e {
        Error::Parse(_) => CremonaStatus::Parse,
        Error::VerificationFailed(_) => CremonaStatus::VerificationFailed,
        Error::CapExceeded(_) => CremonaStatus::CapExceeded,
        Error::InvalidParameter(_) | Error::NegativeMultiplicity(_) => {
            CremonaStatus::InvalidArgument
        }
        _ => CremonaStatus::MathError,
    }
}

struct Fail(CremonaStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn guard(f: impl FnOnce() -> Result<(), Fail>) -> CremonaStatus {
    clear_error();
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => CremonaStatus::Ok,
        Ok(Err(Fail(s, msg))) => {
            set_error(msg);
            s
        }
        Err(_) => {
            set_error("internal panic");
            CremonaStatus::Panic
        }
    }
}

fn null(what: &str) -> Fail {
    Fail(CremonaStatus::NullPointer, format!("{what} is null"))
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Fail> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Fail(CremonaStatus::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_string(out: *mut *mut c_char, s: String) -> Result<(), Fail> {
    let c = CString::new(s).map_err(|_| Fail(CremonaStatus::MathError, "interior NUL".into()))?;
    put(out, c.into_raw())
}

/// Message of the last failed call on this thread, or null. The pointer
/// stays valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn cremona_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn cremona_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// # Safety
/// `s` must be null or a string returned by this library.
#[no_mangle]
pub unsafe extern "C" fn cremona_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `[f0 : f1 : ...]`.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_parse(
    text: *const c_char,
    out: *mut *mut CremonaMap,
) -> CremonaStatus {
    guard(|| {
        let f = BirMap::parse(c_str(text, "text")?)?;
        put(out, Box::into_raw(Box::new(CremonaMap(f))))
    })
}

/// # Safety
/// `map` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_free(map: *mut CremonaMap) {
    if !map.is_null() {
        drop(Box::from_raw(map));
    }
}

/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_degree(
    map: *const CremonaMap,
    out: *mut u32,
) -> CremonaStatus {
    guard(|| put(out, borrow(map, "map")?.0.degree()))
}

/// Canonical text of the map.
///
/// # Safety
/// `map` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_to_string(
    map: *const CremonaMap,
    out: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| put_string(out, borrow(map, "map")?.0.to_string()))
}

/// `f ∘ g`.
///
/// # Safety
/// `f`, `g` must be live handles and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_compose(
    f: *const CremonaMap,
    g: *const CremonaMap,
    out: *mut *mut CremonaMap,
) -> CremonaStatus {
    guard(|| {
        let h = borrow(f, "f")?.0.compose(&borrow(g, "g")?.0)?;
        put(out, Box::into_raw(Box::new(CremonaMap(h))))
    })
}

/// Writes `deg f, …, deg f^n` into `buf` and the count into `len`. Stops
/// early when an iterate exceeds `degree_cap`; `truncated` reports it.
///
/// # Safety
/// `buf` must hold `capacity` values; `len` and `truncated` must be valid.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_iterate_degrees(
    map: *const CremonaMap,
    n: usize,
    degree_cap: u64,
    buf: *mut u64,
    capacity: usize,
    len: *mut usize,
    truncated: *mut bool,
) -> CremonaStatus {
    guard(|| {
        let f = &borrow(map, "map")?.0;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if capacity < n {
            return Err(Fail(
                CremonaStatus::BufferTooSmall,
                format!("need room for {n} degrees, got {capacity}"),
            ));
        }
        let caps = IterCaps {
            degree_cap,
            ..IterCaps::default()
        };
        let seq = iterate_degrees(f, n, caps)?;
        std::slice::from_raw_parts_mut(buf, seq.degrees.len()).copy_from_slice(&seq.degrees);
        put(len, seq.degrees.len())?;
        put(truncated, seq.truncated)
    })
}

/// Logarithmic height `h(f)`; the exact `H(f)` goes to `big_h` as a decimal
/// string when `big_h` is not null.
///
/// # Safety
/// `map` must be a live handle and `h` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cremona_map_height(
    map: *const CremonaMap,
    h: *mut f64,
    big_h: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        let r = heights::map_height(&borrow(map, "map")?.0);
        if !big_h.is_null() {
            put_string(big_h, r.big_h.to_string())?;
        }
        put(h, r.h)
    })
}

/// Parses `{"e0":"5","exc":{"q1":"3","q2":"4"}}`.
///
/// # Safety
/// `json` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cremona_class_from_json(
    json: *const c_char,
    out: *mut *mut CremonaClass,
) -> CremonaStatus {
    guard(|| {
        let c: PMClass = serde_json::from_str(c_str(json, "json")?)
            .map_err(|e| Fail(CremonaStatus::Parse, e.to_string()))?;
        put(out, Box::into_raw(Box::new(CremonaClass(c))))
    })
}

/// # Safety
/// `class` must be null or a handle from this library, freed at most once.
#[no_mangle]
pub unsafe extern "C" fn cremona_class_free(class: *mut CremonaClass) {
    if !class.is_null() {
        drop(Box::from_raw(class));
    }
}

/// Self-intersection as a decimal string.
///
/// # Safety
/// `class` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cremona_class_self_intersection(
    class: *const CremonaClass,
    out: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        put_string(
            out,
            borrow(class, "class")?.0.self_intersection().to_string(),
        )
    })
}

/// Sets `certified` when `H_w(ε)` and `H_hw(ε)` are certified disjoint, for
/// `w` the reference class of `family` (`'J'` or `'H'`).
///
/// # Safety
/// `hw` must be a live handle and `certified` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cremona_horoball_certificate(
    hw: *const CremonaClass,
    family: c_char,
    epsilon: f64,
    certified: *mut bool,
) -> CremonaStatus {
    guard(|| {
        let fam: Family = (family as u8 as char).to_string().parse()?;
        let c = disjointness_certificate(&borrow(hw, "hw")?.0, fam, epsilon)?;
        put(certified, c.status == CertificateStatus::Certified)
    })
}

/// `ε_J` and `ε_H` in double precision.
///
/// # Safety
/// `epsilon_j` and `epsilon_h` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn cremona_epsilon_constants(
    epsilon_j: *mut f64,
    epsilon_h: *mut f64,
) -> CremonaStatus {
    guard(|| {
        let c = epsilon_constants();
        put(epsilon_j, c.epsilon_j)?;
        put(epsilon_h, c.epsilon_h)
    })
}

/// Builds and verifies a witness word and returns it as JSON. `kind` is one
/// of `sl2`, `jordan3` (uses `k`), `nilpotent` (uses `k` as the depth) or
/// `bs` (uses `k` and `l = 2`).
///
/// # Safety
/// `kind` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn cremona_witness_json(
    kind: *const c_char,
    k: i64,
    n: u32,
    out: *mut *mut c_char,
) -> CremonaStatus {
    guard(|| {
        let json = |v: serde_json::Result<String>| {
            v.map_err(|e| Fail(CremonaStatus::MathError, e.to_string()))
        };
        let s = match c_str(kind, "kind")? {
            "sl2" => json(serde_json::to_string(&sl2_doubling_witness(n)?))?,
            "jordan3" => json(serde_json::to_string(&jordan3_template(k, n)?))?,
            "nilpotent" => {
                let d = usize::try_from(k)
                    .map_err(|_| Fail(CremonaStatus::InvalidArgument, "negative depth".into()))?;
                json(serde_json::to_string(&nilpotent_commutator_witness(
                    d,
                    i64::from(n),
                )?))?
            }
            "bs" => json(serde_json::to_string(&bs_witnesses(k, 2, n)?))?,
            other => {
                return Err(Fail(
                    CremonaStatus::InvalidArgument,
                    format!("unknown witness kind {other:?}"),
                ))
            }
        };
        put_string(out, s)
    })
}
