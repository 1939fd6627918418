//! C interface to wittkit.
//!
//! Every call returns a [`WkStatus`]. Text results are written into caller
//! buffers as NUL-terminated UTF-8; when the buffer is too small the call
//! returns `WK_STATUS_BUFFER_TOO_SMALL` and stores the required size. The
//! message for the last failure on the calling thread is available from
//! [`wk_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, UnwindSafe};
use std::path::Path;
use std::ptr;

use num_bigint::BigInt;
use wittkit::calculus::{install_laws, LawKind, PolyCache};
use wittkit::canlift::canonical_lift_j;
use wittkit::substrate::{FiniteLocalRing, Ring};
use wittkit::witt::{split_tuple, WittRing};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WkStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    /// Malformed ring spec, vector or kind name.
    Parse = 3,
    /// A well-formed request the mathematics rejects.
    Domain = 4,
    BufferTooSmall = 5,
    Io = 6,
    Panic = 7,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WkWittOp {
    Add = 0,
    Sub = 1,
    Mul = 2,
    Neg = 3,
    Truncate = 4,
    Delta = 5,
    Frobenius = 6,
    Verschiebung = 7,
    Ghost = 8,
    ToWittCoords = 9,
    FromWittCoords = 10,
}

/// W_n over a finite local ring, in Buium–Joyal coordinates.
pub struct WkWitt {
    ring: WittRing<FiniteLocalRing>,
}

/// Directory of cached universal polynomials.
pub struct WkCache {
    cache: PolyCache,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

struct Failure(WkStatus, String);

type Res<T> = Result<T, Failure>;

fn fail(status: WkStatus, msg: impl ToString) -> Failure {
    Failure(status, msg.to_string())
}

fn guard(f: impl FnOnce() -> Res<()> + UnwindSafe) -> WkStatus {
    let outcome = catch_unwind(f).unwrap_or_else(|_| Err(fail(WkStatus::Panic, "internal panic")));
    match outcome {
        Ok(()) => WkStatus::Ok,
        Err(Failure(status, msg)) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = msg);
            status
        }
    }
}

unsafe fn text<'a>(s: *const c_char) -> Res<&'a str> {
    if s.is_null() {
        return Err(fail(WkStatus::NullPointer, "null string argument"));
    }
    CStr::from_ptr(s).to_str().map_err(|e| fail(WkStatus::InvalidUtf8, e))
}

unsafe fn write_out(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Res<()> {
    let len = s.len() + 1;
    if !needed.is_null() {
        *needed = len;
    }
    if buf.is_null() || cap < len {
        return Err(fail(WkStatus::BufferTooSmall, format!("need {len} bytes, have {cap}")));
    }
    ptr::copy_nonoverlapping(s.as_ptr(), buf as *mut u8, s.len());
    *buf.add(s.len()) = 0;
    Ok(())
}

fn parse_vec(w: &WittRing<FiniteLocalRing>, s: &str) -> Res<Vec<Vec<u64>>> {
    let parts = split_tuple(s).map_err(|e| fail(WkStatus::Parse, e))?;
    let v = parts
        .iter()
        .map(|c| w.base().parse_elem(c))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| fail(WkStatus::Parse, e))?;
    w.check(&v).map_err(|e| fail(WkStatus::Parse, e))?;
    Ok(v)
}

/// Copies the last error message of this thread into `buf`.
///
/// # Safety
/// `buf` must be valid for `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn wk_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> WkStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    match write_out(&msg, buf, cap, needed) {
        Ok(()) => WkStatus::Ok,
        Err(Failure(status, _)) => status,
    }
}

/// Opens (creating if needed) a polynomial cache directory.
///
/// # Safety
/// `dir` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wk_cache_open(dir: *const c_char, out: *mut *mut WkCache) -> WkStatus {
    guard(move || {
        if out.is_null() {
            return Err(fail(WkStatus::NullPointer, "null output handle"));
        }
        let dir = text(dir)?;
        let cache = PolyCache::open(Path::new(dir)).map_err(|e| fail(WkStatus::Io, e))?;
        *out = Box::into_raw(Box::new(WkCache { cache }));
        Ok(())
    })
}

/// # Safety
/// `cache` must come from [`wk_cache_open`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wk_cache_free(cache: *mut WkCache) {
    if !cache.is_null() {
        drop(Box::from_raw(cache));
    }
}

/// Loads levels 0..=n of a law family from the cache, generating missing
/// files, and makes them the process-wide laws used by Witt arithmetic.
/// `kind` is one of sum, product, negation, ghost, wittghost, bjfromwitt,
/// wittfrombj.
///
/// # Safety
/// `cache` must be a live handle and `kind` a NUL-terminated string.
#[no_mangle]
pub unsafe extern "C" fn wk_cache_install(cache: *const WkCache, p: u64, n: usize, kind: *const c_char) -> WkStatus {
    guard(move || {
        let cache = cache.as_ref().ok_or_else(|| fail(WkStatus::NullPointer, "null cache"))?;
        let kind: LawKind = text(kind)?.parse().map_err(|e| fail(WkStatus::Parse, e))?;
        let family = cache.cache.load_or_generate(p, n, kind).map_err(|e| fail(WkStatus::Io, e))?;
        install_laws(family);
        Ok(())
    })
}

/// Creates W_n(R) for a ring spec such as `f5`, `z9` or `gf:2:3`.
///
/// # Safety
/// `ring` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn wk_witt_new(p: u64, n: usize, ring: *const c_char, out: *mut *mut WkWitt) -> WkStatus {
    guard(move || {
        if out.is_null() {
            return Err(fail(WkStatus::NullPointer, "null output handle"));
        }
        let base = FiniteLocalRing::parse(text(ring)?).map_err(|e| fail(WkStatus::Parse, e))?;
        let ring = WittRing::new(base, p, n).map_err(|e| fail(WkStatus::Domain, e))?;
        *out = Box::into_raw(Box::new(WkWitt { ring }));
        Ok(())
    })
}

/// # Safety
/// `w` must come from [`wk_witt_new`] and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn wk_witt_free(w: *mut WkWitt) {
    if !w.is_null() {
        drop(Box::from_raw(w));
    }
}

/// Number of components n+1, or 0 for a null handle.
///
/// # Safety
/// `w` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn wk_witt_len(w: *const WkWitt) -> usize {
    w.as_ref().map_or(0, |w| w.ring.len())
}

/// Applies `op` to vectors written as `(a0,...,an)`. `b` is read only by
/// the binary operations and may be null otherwise. Verschiebung reads a
/// vector of length n and returns one of length n+1.
///
/// # Safety
/// `w` must be a live handle, `a` (and `b` when used) NUL-terminated strings,
/// `buf` valid for `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn wk_witt_apply(
    w: *const WkWitt,
    op: WkWittOp,
    a: *const c_char,
    b: *const c_char,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> WkStatus {
    guard(move || {
        let w = &w.as_ref().ok_or_else(|| fail(WkStatus::NullPointer, "null Witt handle"))?.ring;
        let dom = |e: wittkit::witt::WittError| fail(WkStatus::Domain, e);
        let x = if op == WkWittOp::Verschiebung {
            parse_vec(&w.lower().map_err(dom)?, text(a)?)?
        } else {
            parse_vec(w, text(a)?)?
        };
        let y = match op {
            WkWittOp::Add | WkWittOp::Sub | WkWittOp::Mul => Some(parse_vec(w, text(b)?)?),
            _ => None,
        };
        let r = match (op, y) {
            (WkWittOp::Add, Some(y)) => w.add(&x, &y),
            (WkWittOp::Sub, Some(y)) => w.sub(&x, &y),
            (WkWittOp::Mul, Some(y)) => w.mul(&x, &y),
            (WkWittOp::Neg, _) => w.neg(&x),
            (WkWittOp::Truncate, _) => w.truncate(&x).map_err(dom)?,
            (WkWittOp::Delta, _) => w.delta_shift(&x).map_err(dom)?,
            (WkWittOp::Frobenius, _) => w.frobenius(&x).map_err(dom)?,
            (WkWittOp::Verschiebung, _) => w.verschiebung(&x).map_err(dom)?,
            (WkWittOp::Ghost, _) => w.ghost_map(&x).map_err(dom)?,
            (WkWittOp::ToWittCoords, _) => w.to_witt_coords(&x).map_err(dom)?,
            (WkWittOp::FromWittCoords, _) => w.from_witt_coords(&x).map_err(dom)?,
            _ => unreachable!(),
        };
        write_out(&w.format_vec(&r), buf, cap, needed)
    })
}

/// j-invariant of the canonical lift of y^2 = x^3 + ax + b over F_p,
/// modulo p^k, as a decimal string.
///
/// # Safety
/// `buf` must be valid for `cap` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn wk_canonical_lift_j(
    p: u64,
    a: i64,
    b: i64,
    k: u32,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> WkStatus {
    guard(move || {
        let lift = canonical_lift_j(p, &BigInt::from(a), &BigInt::from(b), k).map_err(|e| fail(WkStatus::Domain, e))?;
        write_out(&lift.j.to_string(), buf, cap, needed)
    })
}
