//! C ABI over the rotsurf library.
//!
//! Conventions: every function returns an [`RsStatus`]; results leave through
//! out-pointers. Handles ([`RsCurve`], [`RsSurface`]) are opaque, created by
//! `rs_*_new`/`rs_*_parse` functions and released with the matching
//! `rs_*_free`; freeing a null handle is a no-op. Vectors are length-4
//! `double` buffers, matrices length-16 row-major. All functions catch
//! panics at the boundary and turn them into `RS_STATUS_INTERNAL`, since
//! unwinding across the C boundary is undefined behavior.

use core::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};

use rotsurf::curve::{Curve4, CurveError, Interval, ScalarMap};
use rotsurf::groups::{one_param_matrix, two_param_matrix, RotationPair};
use rotsurf::killing::{bracket_table, generator, BracketEntry, GeneratorId};
use rotsurf::surface::{
    induced_metric, oracle_curvatures, surface_point, SurfaceError, SurfaceSpec,
};

/// Result of every FFI call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RsStatus {
    Ok = 0,
    /// A required pointer argument was null.
    NullPointer = 1,
    /// A string argument was not valid UTF-8.
    InvalidUtf8 = 2,
    /// An expression failed to parse.
    ParseError = 3,
    /// No builtin curve has the requested name.
    UnknownCurve = 4,
    /// An argument was out of range (pair digits, generator id, shape, ...).
    BadArgument = 5,
    /// A parameter left the curve domain, or the curve needs a domain.
    DomainError = 6,
    /// The metric or frame degenerates at the requested point, or the
    /// evaluation left the representable range.
    Degenerate = 7,
    /// The operation needs a restricted patch and the curve does not vanish
    /// on the components the pair requires.
    NotRestricted = 8,
    /// A panic was caught at the boundary; report this as a bug.
    Internal = 9,
}

/// Opaque profile curve handle.
pub struct RsCurve {
    inner: Curve4,
}

/// Opaque surface patch handle.
pub struct RsSurface {
    inner: SurfaceSpec,
}

/// Induced metric coefficients and tangent causal signs.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RsMetric {
    pub e: f64,
    pub f: f64,
    pub g: f64,
    pub sign_t: i32,
    pub sign_s: i32,
}

/// Projection-road curvature data at one parameter point.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct RsCurvature {
    /// Curvature scalar.
    pub gauss: f64,
    /// Mean curvature vector.
    pub mean: [f64; 4],
    /// Absolute scalar square of the mean curvature vector.
    pub mean_norm_sq: f64,
}

fn curve_status(e: &CurveError) -> RsStatus {
    match e {
        CurveError::Parse(_) => RsStatus::ParseError,
        CurveError::UnknownBuiltin(_) => RsStatus::UnknownCurve,
        CurveError::DomainViolation { .. } | CurveError::DomainRequired => RsStatus::DomainError,
        CurveError::WrongComponentCount(_)
        | CurveError::UnboundShape
        | CurveError::BadShape { .. }
        | CurveError::BadInterval { .. } => RsStatus::BadArgument,
    }
}

fn surface_status(e: &SurfaceError) -> RsStatus {
    match e {
        SurfaceError::Curve(c) => curve_status(c),
        SurfaceError::NotRestricted { .. } | SurfaceError::RequiresRestricted => {
            RsStatus::NotRestricted
        }
        SurfaceError::DegenerateMetric { .. }
        | SurfaceError::DegenerateFrame { .. }
        | SurfaceError::NonFinitePoint { .. } => RsStatus::Degenerate,
    }
}

fn guarded(f: impl FnOnce() -> RsStatus) -> RsStatus {
    catch_unwind(AssertUnwindSafe(f)).unwrap_or(RsStatus::Internal)
}

/// Read a required C string argument.
///
/// # Safety
/// `ptr` must be null or point to a NUL-terminated string.
unsafe fn read_str<'a>(ptr: *const c_char) -> Result<&'a str, RsStatus> {
    if ptr.is_null() {
        return Err(RsStatus::NullPointer);
    }
    unsafe { CStr::from_ptr(ptr) }
        .to_str()
        .map_err(|_| RsStatus::InvalidUtf8)
}

fn pair_from(digits: u32) -> Result<RotationPair, RsStatus> {
    match digits {
        14 => Ok(RotationPair::Pair14),
        23 => Ok(RotationPair::Pair23),
        56 => Ok(RotationPair::Pair56),
        _ => Err(RsStatus::BadArgument),
    }
}

fn generator_from(id: u32) -> Result<GeneratorId, RsStatus> {
    GeneratorId::from_index((id as usize).wrapping_sub(1)).ok_or(RsStatus::BadArgument)
}

/// Library version as a static string.
#[no_mangle]
pub extern "C" fn rs_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn rs_status_name(status: RsStatus) -> *const c_char {
    let name: &'static str = match status {
        RsStatus::Ok => "ok\0",
        RsStatus::NullPointer => "null pointer\0",
        RsStatus::InvalidUtf8 => "invalid utf-8\0",
        RsStatus::ParseError => "parse error\0",
        RsStatus::UnknownCurve => "unknown curve\0",
        RsStatus::BadArgument => "bad argument\0",
        RsStatus::DomainError => "domain error\0",
        RsStatus::Degenerate => "degenerate\0",
        RsStatus::NotRestricted => "not restricted\0",
        RsStatus::Internal => "internal\0",
    };
    name.as_ptr() as *const c_char
}

/// Indefinite ambient inner product of two length-4 vectors.
///
/// # Safety
/// `u` and `v` must point to 4 readable doubles, `out` to one writable.
#[no_mangle]
pub unsafe extern "C" fn rs_inner_product(u: *const f64, v: *const f64, out: *mut f64) -> RsStatus {
    guarded(|| {
        if u.is_null() || v.is_null() || out.is_null() {
            return RsStatus::NullPointer;
        }
        let a = rotsurf::Vec4(unsafe { *(u as *const [f64; 4]) });
        let b = rotsurf::Vec4(unsafe { *(v as *const [f64; 4]) });
        unsafe { *out = rotsurf::inner_product(a, b) };
        RsStatus::Ok
    })
}

fn write_matrix(m: &rotsurf::Mat4, out: *mut f64) {
    for (k, value) in m.0.iter().flatten().enumerate() {
        unsafe { *out.add(k) = *value };
    }
}

/// Matrix of rotational generator `id` (1..=6), row-major into `out16`.
///
/// # Safety
/// `out16` must point to 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rs_generator(id: u32, out16: *mut f64) -> RsStatus {
    guarded(|| {
        if out16.is_null() {
            return RsStatus::NullPointer;
        }
        match generator_from(id) {
            Ok(g) => {
                write_matrix(&generator(g).matrix, out16);
                RsStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Closed one parameter subgroup matrix of generator `id` at parameter `p`.
///
/// # Safety
/// `out16` must point to 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rs_one_param_matrix(id: u32, p: f64, out16: *mut f64) -> RsStatus {
    guarded(|| {
        if out16.is_null() {
            return RsStatus::NullPointer;
        }
        match generator_from(id) {
            Ok(g) => {
                write_matrix(&one_param_matrix(g, p), out16);
                RsStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Two parameter subgroup matrix of a commuting pair (14, 23, or 56).
///
/// # Safety
/// `out16` must point to 16 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rs_two_param_matrix(
    pair: u32,
    p1: f64,
    p2: f64,
    out16: *mut f64,
) -> RsStatus {
    guarded(|| {
        if out16.is_null() {
            return RsStatus::NullPointer;
        }
        match pair_from(pair) {
            Ok(p) => {
                write_matrix(&two_param_matrix(p, p1, p2), out16);
                RsStatus::Ok
            }
            Err(s) => s,
        }
    })
}

/// Bracket table of the six generators into `out36`, row-major: entry
/// `[i][j]` is 0 when `[O_{i+1}, O_{j+1}]` vanishes, and otherwise `+-k`
/// meaning `+-O_k`.
///
/// # Safety
/// `out36` must point to 36 writable ints.
#[no_mangle]
pub unsafe extern "C" fn rs_bracket_table(out36: *mut i32) -> RsStatus {
    guarded(|| {
        if out36.is_null() {
            return RsStatus::NullPointer;
        }
        let Ok(table) = bracket_table() else {
            return RsStatus::Internal;
        };
        for (i, row) in table.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let code = match entry {
                    BracketEntry::Zero => 0,
                    BracketEntry::Plus(g) => g.index() as i32 + 1,
                    BracketEntry::Minus(g) => -(g.index() as i32 + 1),
                };
                unsafe { *out36.add(i * 6 + j) = code };
            }
        }
        RsStatus::Ok
    })
}

/// Create a builtin curve by name. `shape` may be null to keep the default
/// shape constant. The handle must be released with `rs_curve_free`.
///
/// # Safety
/// `name` must be a NUL-terminated string; `shape` null or one readable
/// double; `out` one writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rs_curve_builtin(
    name: *const c_char,
    shape: *const f64,
    out: *mut *mut RsCurve,
) -> RsStatus {
    guarded(|| {
        if out.is_null() {
            return RsStatus::NullPointer;
        }
        let name = match unsafe { read_str(name) } {
            Ok(s) => s,
            Err(s) => return s,
        };
        let shape = if shape.is_null() {
            None
        } else {
            Some(unsafe { *shape })
        };
        match Curve4::builtin_with_shape(name, shape) {
            Ok(curve) => {
                unsafe { *out = Box::into_raw(Box::new(RsCurve { inner: curve })) };
                RsStatus::Ok
            }
            Err(e) => curve_status(&e),
        }
    })
}

/// Parse a curve from four comma separated component expressions in `s`.
/// `shape` may be null when no component mentions `c`. The domain is
/// `[lo, hi]` when `lo < hi` and the whole line otherwise (pass infinities
/// or `0, 0` for unbounded). The handle must be released with
/// `rs_curve_free`.
///
/// # Safety
/// `source` must be a NUL-terminated string; `shape` null or one readable
/// double; `out` one writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rs_curve_parse(
    source: *const c_char,
    shape: *const f64,
    lo: f64,
    hi: f64,
    out: *mut *mut RsCurve,
) -> RsStatus {
    guarded(|| {
        if out.is_null() {
            return RsStatus::NullPointer;
        }
        let source = match unsafe { read_str(source) } {
            Ok(s) => s,
            Err(s) => return s,
        };
        let shape = if shape.is_null() {
            None
        } else {
            Some(unsafe { *shape })
        };
        let domain = if lo < hi && (lo.is_finite() || hi.is_finite()) {
            match Interval::new(lo, hi) {
                Ok(d) => Some(d),
                Err(e) => return curve_status(&e),
            }
        } else if lo < hi || (lo == 0.0 && hi == 0.0) || (lo.is_infinite() && hi.is_infinite()) {
            None
        } else {
            return RsStatus::BadArgument;
        };
        match Curve4::parse("custom", source, shape, domain) {
            Ok(curve) => {
                unsafe { *out = Box::into_raw(Box::new(RsCurve { inner: curve })) };
                RsStatus::Ok
            }
            Err(e) => curve_status(&e),
        }
    })
}

/// Evaluate a curve at `s`. Each of `values`, `d1`, `d2` is either null or a
/// buffer of 4 doubles receiving component values, first, and second
/// derivatives.
///
/// # Safety
/// `curve` must be a live handle; non-null buffers must hold 4 writable
/// doubles.
#[no_mangle]
pub unsafe extern "C" fn rs_curve_eval(
    curve: *const RsCurve,
    s: f64,
    values: *mut f64,
    d1: *mut f64,
    d2: *mut f64,
) -> RsStatus {
    guarded(|| {
        let Some(handle) = (unsafe { curve.as_ref() }) else {
            return RsStatus::NullPointer;
        };
        match handle.inner.eval_jet(s) {
            Ok(jets) => {
                for (k, j) in jets.iter().enumerate() {
                    unsafe {
                        if !values.is_null() {
                            *values.add(k) = j.value;
                        }
                        if !d1.is_null() {
                            *d1.add(k) = j.d1;
                        }
                        if !d2.is_null() {
                            *d2.add(k) = j.d2;
                        }
                    }
                }
                RsStatus::Ok
            }
            Err(e) => curve_status(&e),
        }
    })
}

/// Release a curve handle. Null is a no-op.
///
/// # Safety
/// `curve` must be null or a pointer from `rs_curve_builtin`/`rs_curve_parse`
/// not freed before.
#[no_mangle]
pub unsafe extern "C" fn rs_curve_free(curve: *mut RsCurve) {
    if !curve.is_null() {
        drop(unsafe { Box::from_raw(curve) });
    }
}

/// Build a surface patch from a pair (14, 23, 56), a curve (copied, the
/// handle stays owned by the caller), and two reparametrisation expressions
/// in `t` (null means the identity). With `restricted` set the curve must
/// vanish on the pair's two required components. The handle must be released
/// with `rs_surface_free`.
///
/// # Safety
/// `curve` must be a live handle; `reparam1`/`reparam2` null or
/// NUL-terminated strings; `out` one writable pointer.
#[no_mangle]
pub unsafe extern "C" fn rs_surface_new(
    pair: u32,
    curve: *const RsCurve,
    reparam1: *const c_char,
    reparam2: *const c_char,
    restricted: bool,
    out: *mut *mut RsSurface,
) -> RsStatus {
    guarded(|| {
        if out.is_null() {
            return RsStatus::NullPointer;
        }
        let Some(handle) = (unsafe { curve.as_ref() }) else {
            return RsStatus::NullPointer;
        };
        let pair = match pair_from(pair) {
            Ok(p) => p,
            Err(s) => return s,
        };
        let parse_reparam = |ptr: *const c_char| -> Result<ScalarMap, RsStatus> {
            if ptr.is_null() {
                return Ok(ScalarMap::identity());
            }
            let text = unsafe { read_str(ptr) }?;
            ScalarMap::parse(text, None).map_err(|e| curve_status(&e))
        };
        let r1 = match parse_reparam(reparam1) {
            Ok(r) => r,
            Err(s) => return s,
        };
        let r2 = match parse_reparam(reparam2) {
            Ok(r) => r,
            Err(s) => return s,
        };
        match SurfaceSpec::new(pair, handle.inner.clone(), r1, r2, restricted) {
            Ok(spec) => {
                unsafe { *out = Box::into_raw(Box::new(RsSurface { inner: spec })) };
                RsStatus::Ok
            }
            Err(e) => surface_status(&e),
        }
    })
}

/// Release a surface handle. Null is a no-op.
///
/// # Safety
/// `surface` must be null or a pointer from `rs_surface_new` not freed
/// before.
#[no_mangle]
pub unsafe extern "C" fn rs_surface_free(surface: *mut RsSurface) {
    if !surface.is_null() {
        drop(unsafe { Box::from_raw(surface) });
    }
}

/// Patch position at `(t, s)` into `out4`.
///
/// # Safety
/// `surface` must be a live handle, `out4` 4 writable doubles.
#[no_mangle]
pub unsafe extern "C" fn rs_surface_point(
    surface: *const RsSurface,
    t: f64,
    s: f64,
    out4: *mut f64,
) -> RsStatus {
    guarded(|| {
        let Some(handle) = (unsafe { surface.as_ref() }) else {
            return RsStatus::NullPointer;
        };
        if out4.is_null() {
            return RsStatus::NullPointer;
        }
        match surface_point(&handle.inner, t, s) {
            Ok(p) => {
                for k in 0..4 {
                    unsafe { *out4.add(k) = p[k] };
                }
                RsStatus::Ok
            }
            Err(e) => surface_status(&e),
        }
    })
}

/// Induced metric at `(t, s)`.
///
/// # Safety
/// `surface` must be a live handle, `out` one writable struct.
#[no_mangle]
pub unsafe extern "C" fn rs_surface_metric(
    surface: *const RsSurface,
    t: f64,
    s: f64,
    out: *mut RsMetric,
) -> RsStatus {
    guarded(|| {
        let Some(handle) = (unsafe { surface.as_ref() }) else {
            return RsStatus::NullPointer;
        };
        if out.is_null() {
            return RsStatus::NullPointer;
        }
        match induced_metric(&handle.inner, t, s) {
            Ok(m) => {
                unsafe {
                    *out = RsMetric {
                        e: m.e,
                        f: m.f,
                        g: m.g,
                        sign_t: i32::from(m.sign_t),
                        sign_s: i32::from(m.sign_s),
                    };
                }
                RsStatus::Ok
            }
            Err(e) => surface_status(&e),
        }
    })
}

/// Projection-road curvature at `(t, s)`: curvature scalar, mean curvature
/// vector, and its absolute scalar square. Works for restricted and general
/// patches.
///
/// # Safety
/// `surface` must be a live handle, `out` one writable struct.
#[no_mangle]
pub unsafe extern "C" fn rs_surface_curvature(
    surface: *const RsSurface,
    t: f64,
    s: f64,
    out: *mut RsCurvature,
) -> RsStatus {
    guarded(|| {
        let Some(handle) = (unsafe { surface.as_ref() }) else {
            return RsStatus::NullPointer;
        };
        if out.is_null() {
            return RsStatus::NullPointer;
        }
        match oracle_curvatures(&handle.inner, t, s) {
            Ok(c) => {
                unsafe {
                    *out = RsCurvature {
                        gauss: c.gauss,
                        mean: c.mean.0,
                        mean_norm_sq: c.mean_norm_sq,
                    };
                }
                RsStatus::Ok
            }
            Err(e) => surface_status(&e),
        }
    })
}
