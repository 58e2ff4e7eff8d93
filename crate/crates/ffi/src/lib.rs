//! C ABI over `regzeta`.
//!
//! Conventions:
//! - every function returns an [`RzStatus`]; on failure a message is kept
//!   per thread and can be read with [`rz_last_error`];
//! - results live behind opaque handles released with the matching `*_free`;
//! - exact integers and rationals are returned as NUL-terminated decimal
//!   strings written into caller buffers. `needed` always receives the full
//!   size (including the NUL); if `cap` is smaller nothing is written and
//!   `RZ_STATUS_BUFFER_TOO_SMALL` is returned, so a call with `buf = NULL,
//!   cap = 0` is a size query;
//! - types are returned as flat `(d, e, m)` triples of `uint32_t`, with
//!   `cap` and `needed` counted in triples.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{self, AssertUnwindSafe};
use std::ptr;

use regzeta::counts::{count_rational, degree, ValidityFlags};
use regzeta::exactnum::{rational_string, Integer};
use regzeta::typelib::{enumerate_types, GroupForm, NType};
use regzeta::zeta::{build_zeta, ZetaExpr};
use regzeta::Error;

/// Result code of every entry point.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RzStatus {
    Ok = 0,
    InvalidArgument = 1,
    BoundExceeded = 2,
    NotPrimePower = 3,
    /// The series diverges at the requested point or everywhere.
    Diverges = 4,
    /// A degree slice would contain infinitely many characters.
    Unbounded = 5,
    /// An integral answer was requested outside the formula's domain.
    NonIntegral = 6,
    /// Internal consistency failure; please report.
    Internal = 7,
    BufferTooSmall = 8,
    NullPointer = 9,
    /// A Rust panic was caught at the boundary.
    Panic = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RzForm {
    Gl = 0,
    Gu = 1,
    Sl = 2,
    Su = 3,
}

impl From<RzForm> for GroupForm {
    fn from(f: RzForm) -> Self {
        match f {
            RzForm::Gl => GroupForm::GL,
            RzForm::Gu => GroupForm::GU,
            RzForm::Sl => GroupForm::SL,
            RzForm::Su => GroupForm::SU,
        }
    }
}

/// `q <= n`: some types cannot occur.
pub const RZ_FLAG_Q_LE_N: u32 = 1;
/// Even `q` lies outside the verified setting.
pub const RZ_FLAG_EVEN_P_UNCHECKED: u32 = 2;
/// Special form with `p | n`: counts may be non-integral.
pub const RZ_FLAG_P_DIVIDES_N: u32 = 4;
/// `q` is not a prime power; formulas are evaluated as polynomials.
pub const RZ_FLAG_NOT_PRIME_POWER: u32 = 8;
/// `n = 1`: the regular part is degenerate.
pub const RZ_FLAG_DEGENERATE_N1: u32 = 16;

fn flag_bits(f: &ValidityFlags) -> u32 {
    [
        (f.q_le_n, RZ_FLAG_Q_LE_N),
        (f.even_p_unchecked, RZ_FLAG_EVEN_P_UNCHECKED),
        (f.p_divides_n, RZ_FLAG_P_DIVIDES_N),
        (f.not_prime_power, RZ_FLAG_NOT_PRIME_POWER),
        (f.degenerate_n1, RZ_FLAG_DEGENERATE_N1),
    ]
    .iter()
    .filter(|(set, _)| *set)
    .fold(0, |acc, (_, bit)| acc | bit)
}

/// The n-types in canonical order.
pub struct RzTypeList {
    types: Vec<NType>,
}

struct Row {
    ty: NType,
    degree: String,
    count: String,
}

/// Degrees and counts of regular characters, one row per type.
pub struct RzTable {
    rows: Vec<Row>,
    flags: u32,
}

/// Closed form of a regular representation zeta function.
pub struct RzZeta {
    expr: ZetaExpr,
}

thread_local! {
    static LAST_ERROR: RefCell<String> = const { RefCell::new(String::new()) };
}

fn set_error(msg: impl Into<String>) {
    LAST_ERROR.with(|e| *e.borrow_mut() = msg.into());
}

fn status_of(err: &Error) -> RzStatus {
    match err {
        Error::BoundExceeded { .. } => RzStatus::BoundExceeded,
        Error::NotPrimePower(_) => RzStatus::NotPrimePower,
        Error::Diverges(_) => RzStatus::Diverges,
        Error::Unbounded(_) => RzStatus::Unbounded,
        Error::NonIntegral(_) => RzStatus::NonIntegral,
        Error::DivisionByZero | Error::InexactDivision(_) | Error::InternalInexact(_) => RzStatus::Internal,
        Error::InvalidArgument(_) | Error::PartsMismatch { .. } | Error::NotPrime(_) | Error::NotAntihermitianClass => {
            RzStatus::InvalidArgument
        }
    }
}

/// Failure inside the boundary layer itself.
struct Fail(RzStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(RzStatus::NullPointer, format!("{what} is NULL"))
}

fn call(f: impl FnOnce() -> Result<RzStatus, Fail>) -> RzStatus {
    match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(status)) => status,
        Ok(Err(Fail(status, msg))) => {
            set_error(msg);
            status
        }
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("panic: {msg}"));
            RzStatus::Panic
        }
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, Fail> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_str(s: &str, buf: *mut c_char, cap: usize, needed: *mut usize) -> Result<RzStatus, Fail> {
    let size = s.len() + 1;
    if !needed.is_null() {
        needed.write(size);
    }
    if cap < size {
        return Err(Fail(RzStatus::BufferTooSmall, format!("buffer holds {cap} bytes, {size} needed")));
    }
    if buf.is_null() {
        return Err(null("buf"));
    }
    ptr::copy_nonoverlapping(s.as_ptr().cast::<c_char>(), buf, s.len());
    buf.add(s.len()).write(0);
    Ok(RzStatus::Ok)
}

unsafe fn write_type(ty: &NType, buf: *mut u32, cap: usize, needed: *mut usize) -> Result<RzStatus, Fail> {
    let triples = ty.triples();
    if !needed.is_null() {
        needed.write(triples.len());
    }
    if cap < triples.len() {
        return Err(Fail(
            RzStatus::BufferTooSmall,
            format!("buffer holds {cap} triples, {} needed", triples.len()),
        ));
    }
    if buf.is_null() {
        return Err(null("buf"));
    }
    let flat: Vec<u32> = triples.into_iter().flatten().collect();
    ptr::copy_nonoverlapping(flat.as_ptr(), buf, flat.len());
    Ok(RzStatus::Ok)
}

fn row<T>(rows: &[T], index: usize) -> Result<&T, Fail> {
    rows.get(index)
        .ok_or_else(|| Fail(RzStatus::InvalidArgument, format!("index {index} out of range (len {})", rows.len())))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn rz_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Copies the calling thread's most recent error message.
///
/// # Safety
/// `buf` must point to `cap` writable bytes (or be NULL with `cap = 0`);
/// `needed` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn rz_last_error(buf: *mut c_char, cap: usize, needed: *mut usize) -> RzStatus {
    let msg = LAST_ERROR.with(|e| e.borrow().clone());
    // not routed through `call` so that a too-small buffer keeps the message
    match write_str(&msg, buf, cap, needed) {
        Ok(status) => status,
        Err(Fail(status, _)) => status,
    }
}

/// Enumerates the n-types.
///
/// # Safety
/// `out` must be writable; on success it receives a handle to release with
/// [`rz_types_free`].
#[no_mangle]
pub unsafe extern "C" fn rz_types_new(n: u32, out: *mut *mut RzTypeList) -> RzStatus {
    call(|| {
        let types = enumerate_types(n)?;
        write_out(out, Box::into_raw(Box::new(RzTypeList { types })), "out")?;
        Ok(RzStatus::Ok)
    })
}

/// Number of types in the list.
///
/// # Safety
/// `list` must be a live handle and `len` writable.
#[no_mangle]
pub unsafe extern "C" fn rz_types_len(list: *const RzTypeList, len: *mut usize) -> RzStatus {
    call(|| {
        write_out(len, deref(list, "list")?.types.len(), "len")?;
        Ok(RzStatus::Ok)
    })
}

/// Writes type `index` as `(d, e, m)` triples.
///
/// # Safety
/// `list` must be a live handle; `buf` must hold `3 * cap` values (or be NULL
/// with `cap = 0`); `needed` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn rz_types_get(
    list: *const RzTypeList,
    index: usize,
    buf: *mut u32,
    cap: usize,
    needed: *mut usize,
) -> RzStatus {
    call(|| write_type(row(&deref(list, "list")?.types, index)?, buf, cap, needed))
}

/// Releases a type list; NULL is ignored.
///
/// # Safety
/// `list` must be NULL or a handle from [`rz_types_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rz_types_free(list: *mut RzTypeList) {
    if !list.is_null() {
        drop(Box::from_raw(list));
    }
}

/// Degree and count of the regular characters of every type at the given
/// level. Outside the special forms' domain (`p | n`) counts may be proper
/// fractions, printed as `num/den`, and `RZ_FLAG_P_DIVIDES_N` is set.
///
/// # Safety
/// `out` must be writable; release the handle with [`rz_table_free`].
#[no_mangle]
pub unsafe extern "C" fn rz_table_new(form: RzForm, n: u32, q: u64, level: u32, out: *mut *mut RzTable) -> RzStatus {
    call(|| {
        let form = GroupForm::from(form);
        let mut rows = Vec::new();
        for ty in enumerate_types(n)? {
            let degree = degree(form, q, level, &ty)?.to_string();
            let count = rational_string(&count_rational(form, q, level, &ty)?);
            rows.push(Row { ty, degree, count });
        }
        let table = RzTable { rows, flags: flag_bits(&ValidityFlags::compute(form, n, q)) };
        write_out(out, Box::into_raw(Box::new(table)), "out")?;
        Ok(RzStatus::Ok)
    })
}

/// Number of rows (types).
///
/// # Safety
/// `table` must be a live handle and `len` writable.
#[no_mangle]
pub unsafe extern "C" fn rz_table_len(table: *const RzTable, len: *mut usize) -> RzStatus {
    call(|| {
        write_out(len, deref(table, "table")?.rows.len(), "len")?;
        Ok(RzStatus::Ok)
    })
}

/// Bitmask of `RZ_FLAG_*` conditions for the table's parameters.
///
/// # Safety
/// `table` must be a live handle and `flags` writable.
#[no_mangle]
pub unsafe extern "C" fn rz_table_flags(table: *const RzTable, flags: *mut u32) -> RzStatus {
    call(|| {
        write_out(flags, deref(table, "table")?.flags, "flags")?;
        Ok(RzStatus::Ok)
    })
}

/// Type of row `index` as `(d, e, m)` triples.
///
/// # Safety
/// As for [`rz_types_get`], with `table` a live handle.
#[no_mangle]
pub unsafe extern "C" fn rz_table_type(
    table: *const RzTable,
    index: usize,
    buf: *mut u32,
    cap: usize,
    needed: *mut usize,
) -> RzStatus {
    call(|| write_type(&row(&deref(table, "table")?.rows, index)?.ty, buf, cap, needed))
}

/// Character degree of row `index` as a decimal string.
///
/// # Safety
/// `table` must be a live handle; `buf` must point to `cap` writable bytes
/// (or be NULL with `cap = 0`); `needed` must be NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn rz_table_degree(
    table: *const RzTable,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> RzStatus {
    call(|| write_str(&row(&deref(table, "table")?.rows, index)?.degree, buf, cap, needed))
}

/// Character count of row `index` as a decimal string (or `num/den`).
///
/// # Safety
/// As for [`rz_table_degree`].
#[no_mangle]
pub unsafe extern "C" fn rz_table_count(
    table: *const RzTable,
    index: usize,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> RzStatus {
    call(|| write_str(&row(&deref(table, "table")?.rows, index)?.count, buf, cap, needed))
}

/// Releases a table; NULL is ignored.
///
/// # Safety
/// `table` must be NULL or a handle from [`rz_table_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rz_table_free(table: *mut RzTable) {
    if !table.is_null() {
        drop(Box::from_raw(table));
    }
}

/// Builds the zeta function of the given form.
///
/// # Safety
/// `out` must be writable; release the handle with [`rz_zeta_free`].
#[no_mangle]
pub unsafe extern "C" fn rz_zeta_new(form: RzForm, n: u32, q: u64, out: *mut *mut RzZeta) -> RzStatus {
    call(|| {
        let expr = build_zeta(form.into(), n, q)?;
        write_out(out, Box::into_raw(Box::new(RzZeta { expr })), "out")?;
        Ok(RzStatus::Ok)
    })
}

/// Evaluates at a real `s`; `RZ_STATUS_DIVERGES` at or left of the abscissa.
///
/// # Safety
/// `zeta` must be a live handle and `value` writable.
#[no_mangle]
pub unsafe extern "C" fn rz_zeta_evaluate(zeta: *const RzZeta, s: f64, value: *mut f64) -> RzStatus {
    call(|| {
        let v = deref(zeta, "zeta")?.expr.evaluate(s)?;
        write_out(value, v, "value")?;
        Ok(RzStatus::Ok)
    })
}

/// Abscissa of convergence as a reduced fraction. Returns
/// `RZ_STATUS_DIVERGES` when the series diverges everywhere.
///
/// # Safety
/// `zeta` must be a live handle; `num` and `den` must be writable.
#[no_mangle]
pub unsafe extern "C" fn rz_zeta_abscissa(zeta: *const RzZeta, num: *mut i64, den: *mut i64) -> RzStatus {
    call(|| {
        let a = deref(zeta, "zeta")?
            .expr
            .abscissa()
            .ok_or_else(|| Fail(RzStatus::Diverges, "the series diverges for every s".into()))?;
        let fits = |x: &Integer| i64::try_from(x).map_err(|_| Fail(RzStatus::BoundExceeded, format!("{x} overflows int64")));
        let (p, d) = (fits(a.numer())?, fits(a.denom())?);
        write_out(num, p, "num")?;
        write_out(den, d, "den")?;
        Ok(RzStatus::Ok)
    })
}

/// Closed form as JSON: `{"form", "n", "q", "prefactor": {"a", "b"},
/// "abscissa", "terms": [{"type", "c", "D"}]}`.
///
/// # Safety
/// As for [`rz_table_degree`], with `zeta` a live handle.
#[no_mangle]
pub unsafe extern "C" fn rz_zeta_json(zeta: *const RzZeta, buf: *mut c_char, cap: usize, needed: *mut usize) -> RzStatus {
    call(|| {
        let json = serde_json::to_string(&deref(zeta, "zeta")?.expr).expect("zeta expressions serialize");
        write_str(&json, buf, cap, needed)
    })
}

/// Dirichlet coefficients for all degrees up to `bound` (a decimal string)
/// as JSON: `{"M": "..", "coeffs": {"degree": "count", ..}}`.
///
/// # Safety
/// `bound` must be a NUL-terminated string; otherwise as for [`rz_zeta_json`].
#[no_mangle]
pub unsafe extern "C" fn rz_zeta_truncate_json(
    zeta: *const RzZeta,
    bound: *const c_char,
    buf: *mut c_char,
    cap: usize,
    needed: *mut usize,
) -> RzStatus {
    call(|| {
        let zeta = deref(zeta, "zeta")?;
        if bound.is_null() {
            return Err(null("bound"));
        }
        let text = CStr::from_ptr(bound).to_string_lossy();
        let bound: Integer = text
            .trim()
            .parse()
            .map_err(|_| Fail(RzStatus::InvalidArgument, format!("bound {text:?} is not an integer")))?;
        let slice = zeta.expr.dirichlet_coeffs(&bound)?;
        write_str(&serde_json::to_string(&slice).expect("slices serialize"), buf, cap, needed)
    })
}

/// Releases a zeta handle; NULL is ignored.
///
/// # Safety
/// `zeta` must be NULL or a handle from [`rz_zeta_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn rz_zeta_free(zeta: *mut RzZeta) {
    if !zeta.is_null() {
        drop(Box::from_raw(zeta));
    }
}
