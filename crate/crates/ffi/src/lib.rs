//! C interface to `gradbeam`.
//!
//! Every entry point returns a [`GbStatus`]. On failure the message is kept
//! per thread and can be read with [`gb_last_error`]. Systems and results are
//! opaque handles released with their `_free` functions.

use std::cell::RefCell;
use std::ffi::{c_char, CStr};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use gradbeam::solve::{ReducedSystem, SolveResult};
use gradbeam::{oracle, BasisKind, BeamConfig, BoundaryCondition, End, Error};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    RankDeficient = 3,
    NoConvergence = 4,
    NoPositiveEigenvalue = 5,
    IllConditioned = 6,
    BracketFailure = 7,
    NotPositiveDefinite = 8,
    Unsupported = 9,
    Io = 10,
    BufferTooSmall = 11,
    Panic = 12,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbBasis {
    Lagrange = 0,
    Hermite = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbBoundary {
    SimplySupported = 0,
    FreeFree = 1,
    ClampedClamped = 2,
    Cantilever = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbEnd {
    Left = 0,
    Right = 1,
}

/// Which array [`gb_result_values`] copies out.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GbValues {
    /// Elastic `omega_bar`, ascending.
    Frequencies = 0,
    /// `omega_bar` of the discarded rigid-body modes.
    RigidFrequencies = 1,
    /// `P_bar`, ascending.
    BucklingLoads = 2,
    /// Nondimensional deflection `w_bar` at the nodes.
    NodalDeflection = 3,
    /// Full extended DOF vector of the static solution.
    Displacement = 4,
    /// Quadrature nodes on [-1, 1].
    Nodes = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GbConfig {
    pub length: f64,
    pub youngs_modulus: f64,
    pub inertia: f64,
    pub area: f64,
    pub density: f64,
    pub g1: f64,
    pub g2: f64,
    pub load: f64,
    pub axial_load: f64,
}

impl From<GbConfig> for BeamConfig {
    fn from(c: GbConfig) -> Self {
        BeamConfig {
            length: c.length,
            youngs_modulus: c.youngs_modulus,
            inertia: c.inertia,
            area: c.area,
            density: c.density,
            g1: c.g1,
            g2: c.g2,
            load: c.load,
            axial_load: c.axial_load,
        }
    }
}

impl From<BeamConfig> for GbConfig {
    fn from(c: BeamConfig) -> Self {
        GbConfig {
            length: c.length,
            youngs_modulus: c.youngs_modulus,
            inertia: c.inertia,
            area: c.area,
            density: c.density,
            g1: c.g1,
            g2: c.g2,
            load: c.load,
            axial_load: c.axial_load,
        }
    }
}

/// Element with boundary conditions applied.
pub struct GbSystem(ReducedSystem);

/// Output of one solve.
pub struct GbResult(SolveResult);

thread_local! {
    static LAST_ERROR: RefCell<Vec<u8>> = const { RefCell::new(Vec::new()) };
}

fn set_error(msg: &str) {
    LAST_ERROR.with(|e| {
        let mut e = e.borrow_mut();
        e.clear();
        e.extend(msg.bytes().filter(|&b| b != 0));
    });
}

fn status_of(err: &Error) -> GbStatus {
    match err.root() {
        Error::InvalidArgument(_) => GbStatus::InvalidArgument,
        Error::NoConvergence { .. } => GbStatus::NoConvergence,
        Error::RankDeficient { .. } => GbStatus::RankDeficient,
        Error::NoPositiveEigenvalue { .. } => GbStatus::NoPositiveEigenvalue,
        Error::IllConditioned { .. } => GbStatus::IllConditioned,
        Error::BracketFailure { .. } => GbStatus::BracketFailure,
        Error::NotPositiveDefinite => GbStatus::NotPositiveDefinite,
        Error::Unsupported(_) => GbStatus::Unsupported,
        Error::Io(_) => GbStatus::Io,
        Error::Context { .. } => unreachable!("root strips context"),
    }
}

enum Fail {
    Status(GbStatus, String),
    Lib(Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Lib(e)
    }
}

fn not_static() -> Fail {
    Fail::Status(
        GbStatus::InvalidArgument,
        "result is not a static solution".into(),
    )
}

fn null() -> Fail {
    Fail::Status(GbStatus::NullPointer, "null pointer argument".into())
}

/// Runs `f`, turning errors and panics into a status plus stored message.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> GbStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_error("");
            GbStatus::Ok
        }
        Ok(Err(Fail::Lib(e))) => {
            set_error(&e.to_string());
            status_of(&e)
        }
        Ok(Err(Fail::Status(s, msg))) => {
            set_error(&msg);
            s
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            set_error(&format!("internal panic: {msg}"));
            GbStatus::Panic
        }
    }
}

unsafe fn config_arg(cfg: *const GbConfig) -> Result<BeamConfig, Fail> {
    cfg.as_ref().map(|c| (*c).into()).ok_or_else(null)
}

fn boundary(bc: GbBoundary) -> BoundaryCondition {
    match bc {
        GbBoundary::SimplySupported => BoundaryCondition::simply_supported(),
        GbBoundary::FreeFree => BoundaryCondition::free_free(),
        GbBoundary::ClampedClamped => BoundaryCondition::clamped_clamped(),
        GbBoundary::Cantilever => BoundaryCondition::cantilever(),
    }
}

/// Copies `values` into `out[..cap]` and stores the full length in `len`.
/// With `out` null only the length is reported.
unsafe fn copy_out(values: &[f64], out: *mut f64, cap: usize, len: *mut usize) -> Result<(), Fail> {
    if let Some(len) = len.as_mut() {
        *len = values.len();
    }
    if out.is_null() {
        return if len.is_null() { Err(null()) } else { Ok(()) };
    }
    if cap < values.len() {
        return Err(Fail::Status(
            GbStatus::BufferTooSmall,
            format!("buffer holds {cap} values, {} needed", values.len()),
        ));
    }
    ptr::copy_nonoverlapping(values.as_ptr(), out, values.len());
    Ok(())
}

/// Version string, static and NUL-terminated.
#[no_mangle]
pub extern "C" fn gb_version() -> *const c_char {
    static VERSION: &CStr =
        match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
            Ok(v) => v,
            Err(_) => panic!("version contains NUL"),
        };
    VERSION.as_ptr()
}

/// Copies the calling thread's last error message into `buf` (truncated,
/// always NUL-terminated when `cap > 0`). Returns the full message length
/// excluding the terminator.
///
/// # Safety
/// `buf` must be null or valid for `cap` bytes.
#[no_mangle]
pub unsafe extern "C" fn gb_last_error(buf: *mut c_char, cap: usize) -> usize {
    LAST_ERROR.with(|e| {
        let e = e.borrow();
        if !buf.is_null() && cap > 0 {
            let n = e.len().min(cap - 1);
            ptr::copy_nonoverlapping(e.as_ptr() as *const c_char, buf, n);
            *buf.add(n) = 0;
        }
        e.len()
    })
}

/// Fills `out` with the benchmark configuration.
///
/// # Safety
/// `out` must be null or a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn gb_config_benchmark(out: *mut GbConfig) -> GbStatus {
    guard(|| {
        *out.as_mut().ok_or_else(null)? = BeamConfig::benchmark().into();
        Ok(())
    })
}

/// Builds an `n`-node element and applies boundary conditions.
///
/// # Safety
/// `cfg` and `out` must be null or valid pointers.
#[no_mangle]
pub unsafe extern "C" fn gb_system_new(
    cfg: *const GbConfig,
    basis: GbBasis,
    n: usize,
    bc: GbBoundary,
    out: *mut *mut GbSystem,
) -> GbStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(null)?;
        *out = ptr::null_mut();
        let cfg = config_arg(cfg)?;
        let kind = match basis {
            GbBasis::Lagrange => BasisKind::Lagrange,
            GbBasis::Hermite => BasisKind::Hermite,
        };
        let e = gradbeam::assemble(&cfg, kind, n)?;
        let sys = gradbeam::apply_bc(&e, &boundary(bc))?;
        *out = Box::into_raw(Box::new(GbSystem(sys)));
        Ok(())
    })
}

/// # Safety
/// `sys` must be null or a handle from [`gb_system_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gb_system_free(sys: *mut GbSystem) {
    if !sys.is_null() {
        drop(Box::from_raw(sys));
    }
}

/// Number of retained DOFs after boundary conditions.
///
/// # Safety
/// `sys` must be null or a live handle; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gb_system_dofs(sys: *const GbSystem, out: *mut usize) -> GbStatus {
    guard(|| {
        let sys = sys.as_ref().ok_or_else(null)?;
        *out.as_mut().ok_or_else(null)? = sys.0.len();
        Ok(())
    })
}

unsafe fn solve_into(
    sys: *const GbSystem,
    out: *mut *mut GbResult,
    f: impl FnOnce(&ReducedSystem) -> gradbeam::Result<SolveResult>,
) -> GbStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(null)?;
        *out = ptr::null_mut();
        let sys = sys.as_ref().ok_or_else(null)?;
        let r = f(&sys.0)?;
        *out = Box::into_raw(Box::new(GbResult(r)));
        Ok(())
    })
}

/// Static deflection under the configured load.
///
/// # Safety
/// `sys` must be null or a live handle; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gb_solve_static(
    sys: *const GbSystem,
    out: *mut *mut GbResult,
) -> GbStatus {
    solve_into(sys, out, gradbeam::solve_static)
}

/// Lowest `modes` elastic frequencies; rigid-body modes are reported separately.
///
/// # Safety
/// `sys` must be null or a live handle; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gb_solve_modal(
    sys: *const GbSystem,
    modes: usize,
    out: *mut *mut GbResult,
) -> GbStatus {
    solve_into(sys, out, |s| gradbeam::solve_modal(s, modes))
}

/// Lowest `count` buckling loads.
///
/// # Safety
/// `sys` must be null or a live handle; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gb_solve_buckling(
    sys: *const GbSystem,
    count: usize,
    out: *mut *mut GbResult,
) -> GbStatus {
    solve_into(sys, out, |s| gradbeam::solve_buckling(s, count))
}

/// # Safety
/// `res` must be null or a handle from a solve not yet freed.
#[no_mangle]
pub unsafe extern "C" fn gb_result_free(res: *mut GbResult) {
    if !res.is_null() {
        drop(Box::from_raw(res));
    }
}

/// Copies one array out of a result. Call with `out` null to query the
/// length; a too-small `cap` returns `BufferTooSmall` with `len` set.
///
/// # Safety
/// `res` must be a live handle, `out` null or valid for `cap` doubles,
/// `len` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gb_result_values(
    res: *const GbResult,
    which: GbValues,
    out: *mut f64,
    cap: usize,
    len: *mut usize,
) -> GbStatus {
    guard(|| {
        let r = &res.as_ref().ok_or_else(null)?.0;
        let owned;
        let values: &[f64] = match which {
            GbValues::Frequencies => &r.frequencies,
            GbValues::RigidFrequencies => &r.rigid_frequencies,
            GbValues::BucklingLoads => &r.buckling_loads,
            GbValues::Nodes => &r.nodes,
            GbValues::NodalDeflection => {
                owned = r.nondimensional_deflection().ok_or_else(not_static)?;
                &owned
            }
            GbValues::Displacement => r.displacement.as_ref().ok_or_else(not_static)?.as_slice(),
        };
        copy_out(values, out, cap, len)
    })
}

/// Nondimensional centre deflection `100 EI w(0) / (q L^4)` of a static result.
///
/// # Safety
/// `res` must be a live handle; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gb_result_center_deflection(
    res: *const GbResult,
    out: *mut f64,
) -> GbStatus {
    guard(|| {
        let r = &res.as_ref().ok_or_else(null)?.0;
        *out.as_mut().ok_or_else(null)? = r.center_deflection().ok_or_else(not_static)?;
        Ok(())
    })
}

/// Physical end slope `dw/dx` of a static result.
///
/// # Safety
/// `res` must be a live handle; `out` null or valid.
#[no_mangle]
pub unsafe extern "C" fn gb_result_end_slope(
    res: *const GbResult,
    end: GbEnd,
    out: *mut f64,
) -> GbStatus {
    guard(|| {
        let r = &res.as_ref().ok_or_else(null)?.0;
        let end = match end {
            GbEnd::Left => End::Left,
            GbEnd::Right => End::Right,
        };
        *out.as_mut().ok_or_else(null)? = r.end_slope(end).ok_or_else(not_static)?;
        Ok(())
    })
}

/// Analytical centre deflection, nondimensional.
///
/// # Safety
/// `cfg` and `out` must be null or valid pointers.
#[no_mangle]
pub unsafe extern "C" fn gb_oracle_center_deflection(
    cfg: *const GbConfig,
    bc: GbBoundary,
    out: *mut f64,
) -> GbStatus {
    guard(|| {
        let cfg = config_arg(cfg)?;
        let out = out.as_mut().ok_or_else(null)?;
        *out = oracle::static_oracle(&cfg, &boundary(bc))?.nondimensional_deflection(0.0);
        Ok(())
    })
}

/// Lowest `count` analytical elastic frequencies into `out[..count]`.
///
/// # Safety
/// `cfg` must be null or valid; `out` null or valid for `count` doubles.
#[no_mangle]
pub unsafe extern "C" fn gb_oracle_frequencies(
    cfg: *const GbConfig,
    bc: GbBoundary,
    count: usize,
    out: *mut f64,
) -> GbStatus {
    guard(|| {
        let cfg = config_arg(cfg)?;
        if out.is_null() {
            return Err(null());
        }
        let s = oracle::frequency_oracle(&cfg, &boundary(bc), count)?;
        copy_out(&s.values, out, count, ptr::null_mut())
    })
}

/// Lowest `count` analytical buckling loads into `out[..count]`.
///
/// # Safety
/// `cfg` must be null or valid; `out` null or valid for `count` doubles.
#[no_mangle]
pub unsafe extern "C" fn gb_oracle_buckling(
    cfg: *const GbConfig,
    bc: GbBoundary,
    count: usize,
    out: *mut f64,
) -> GbStatus {
    guard(|| {
        let cfg = config_arg(cfg)?;
        if out.is_null() {
            return Err(null());
        }
        let s = oracle::buckling_oracle(&cfg, &boundary(bc), count)?;
        copy_out(&s.values, out, count, ptr::null_mut())
    })
}
