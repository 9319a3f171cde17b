//! C ABI over the `ctqw` engine.
//!
//! Every fallible call returns a [`CtqwStatus`]; on failure the message is
//! kept per thread and read back with [`ctqw_last_error`]. Handles are
//! opaque and owned by the caller until passed to the matching `_free`.
//! Output arrays are caller-allocated; their length must match the count
//! reported by the corresponding query.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use ctqw::amplitudes::AmplitudeKernel;
use ctqw::catalog::{graph_pipeline, make_entry, Pipeline};
use ctqw::graph::Graph;
use ctqw::jacobi::JacobiCoefficients;
use ctqw::oracle::oracle_amplitudes;
use ctqw::stieltjes::{spectral_measure, stieltjes_cf, SpectralMeasure};
use ctqw::Error;
use num_complex::Complex64;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CtqwStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    InvalidGraph = 3,
    InvalidOrigin = 4,
    NotDistanceRegular = 5,
    NotQdType = 6,
    InvalidJacobi = 7,
    IndexOutOfRange = 8,
    PoleProximity = 9,
    NumericalFailure = 10,
    UnknownFamily = 11,
    InvalidParams = 12,
    LengthMismatch = 13,
    Panic = 14,
}

impl From<&Error> for CtqwStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::InvalidEdge(..)
            | Error::DisconnectedGraph { .. }
            | Error::InvalidGraph(_)
            | Error::InvalidEdgeList(_)
            | Error::NotSymmetric(..) => CtqwStatus::InvalidGraph,
            Error::InvalidOrigin { .. } => CtqwStatus::InvalidOrigin,
            Error::NotDistanceRegular(_) | Error::InvalidIntersectionArray(_) => CtqwStatus::NotDistanceRegular,
            Error::NotQdType { .. } => CtqwStatus::NotQdType,
            Error::InvalidJacobi(_) | Error::ZeroReference => CtqwStatus::InvalidJacobi,
            Error::IndexOutOfRange { .. } => CtqwStatus::IndexOutOfRange,
            Error::PoleProximity { .. } => CtqwStatus::PoleProximity,
            Error::EigensolverFailure { .. } | Error::ConvergenceFailure(_) | Error::OutOfSupportedRange { .. } => {
                CtqwStatus::NumericalFailure
            }
            Error::UnknownFamily(_) => CtqwStatus::UnknownFamily,
            Error::InvalidParams(_) | Error::InvalidGrid(_) | Error::NoClosedForm(_) => CtqwStatus::InvalidParams,
        }
    }
}

/// Opaque graph handle.
pub struct CtqwGraph(Graph);

/// Opaque walk handle: Jacobi coefficients, spectral measure and the
/// amplitude kernel for one reference vertex.
pub struct CtqwWalk {
    jacobi: JacobiCoefficients,
    measure: SpectralMeasure,
    kernel: AmplitudeKernel,
}

impl CtqwWalk {
    fn from_parts(jacobi: JacobiCoefficients, measure: SpectralMeasure) -> ctqw::Result<Self> {
        let kernel = AmplitudeKernel::new(&measure, &jacobi)?;
        Ok(CtqwWalk { jacobi, measure, kernel })
    }

    fn from_pipeline(p: Pipeline) -> ctqw::Result<Self> {
        Self::from_parts(p.jacobi, p.measure)
    }
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(CtqwStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(CtqwStatus::from(&e), e.to_string())
    }
}

fn fail(status: CtqwStatus, msg: &str) -> Failure {
    Failure(status, msg.to_string())
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> CtqwStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_error("");
            CtqwStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(_) => {
            set_error("Panic: internal error");
            CtqwStatus::Panic
        }
    }
}

unsafe fn borrow<'a, T>(p: *const T, what: &str) -> Result<&'a T, Failure> {
    p.as_ref().ok_or_else(|| fail(CtqwStatus::NullPointer, &format!("NullPointer: {what}")))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if p.is_null() {
        return Err(fail(CtqwStatus::NullPointer, &format!("NullPointer: {what}")));
    }
    Ok(std::slice::from_raw_parts(p, len))
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize, expected: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if len != expected {
        return Err(fail(
            CtqwStatus::LengthMismatch,
            &format!("LengthMismatch: {what} has length {len}, expected {expected}"),
        ));
    }
    if len == 0 {
        return Ok(&mut []);
    }
    if p.is_null() {
        return Err(fail(CtqwStatus::NullPointer, &format!("NullPointer: {what}")));
    }
    Ok(std::slice::from_raw_parts_mut(p, len))
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(fail(CtqwStatus::NullPointer, &format!("NullPointer: {what}")));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| fail(CtqwStatus::InvalidArgument, &format!("InvalidArgument: {what} is not UTF-8")))
}

unsafe fn store<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(CtqwStatus::NullPointer, "NullPointer: output handle"));
    }
    *out = Box::into_raw(Box::new(value));
    Ok(())
}

unsafe fn write<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(fail(CtqwStatus::NullPointer, "NullPointer: output"));
    }
    *out = value;
    Ok(())
}

fn split_complex(values: &[Complex64], re: &mut [f64], im: &mut [f64]) {
    for ((v, r), i) in values.iter().zip(re.iter_mut()).zip(im.iter_mut()) {
        *r = v.re;
        *i = v.im;
    }
}

/// Message for the most recent failure on this thread, or an empty string.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn ctqw_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ctqw_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a simple undirected graph. `edges` holds `2 * edge_count`
/// vertex indices as consecutive pairs.
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctqw_graph_new(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut CtqwGraph,
) -> CtqwStatus {
    guard(|| {
        let len = edge_count
            .checked_mul(2)
            .ok_or_else(|| fail(CtqwStatus::InvalidArgument, "InvalidArgument: edge_count overflows"))?;
        let flat = slice(edges, len, "edges")?;
        let pairs: Vec<(usize, usize)> = flat.chunks_exact(2).map(|p| (p[0], p[1])).collect();
        store(out, CtqwGraph(Graph::new(n, &pairs)?))
    })
}

/// Parses the text edge-list format (`n m` header, then `u v` lines).
///
/// # Safety
/// `edge_list` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctqw_graph_parse(edge_list: *const c_char, out: *mut *mut CtqwGraph) -> CtqwStatus {
    guard(|| {
        let g = Graph::from_edge_list(text(edge_list, "edge_list")?)?;
        store(out, CtqwGraph(g))
    })
}

/// Explicit graph for a catalog spec such as `"petersen"` or `"johnson:7,3"`.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctqw_graph_from_catalog(spec: *const c_char, out: *mut *mut CtqwGraph) -> CtqwStatus {
    guard(|| {
        let spec = text(spec, "spec")?;
        let entry = make_entry(spec)?;
        let g = entry.graph.ok_or_else(|| {
            fail(
                CtqwStatus::InvalidArgument,
                &format!("InvalidArgument: catalog entry {spec} has no explicit graph"),
            )
        })?;
        store(out, CtqwGraph(g))
    })
}

/// # Safety
/// `graph` must be a live handle or null; `n` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctqw_graph_vertex_count(graph: *const CtqwGraph, n: *mut usize) -> CtqwStatus {
    guard(|| write(n, borrow(graph, "graph")?.0.n()))
}

/// # Safety
/// `graph` must come from a `ctqw_graph_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ctqw_graph_free(graph: *mut CtqwGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Exact vertex amplitudes `<v|exp(-iAt)|origin>` from dense diagonalization.
/// `re` and `im` must each hold `n` values.
///
/// # Safety
/// `graph` must be a live handle; `re` and `im` must point to `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn ctqw_oracle_amplitudes(
    graph: *const CtqwGraph,
    origin: usize,
    t: f64,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> CtqwStatus {
    guard(|| {
        let g = &borrow(graph, "graph")?.0;
        let re = slice_mut(re, len, g.n(), "re")?;
        let im = slice_mut(im, len, g.n(), "im")?;
        split_complex(&oracle_amplitudes(g, origin, t)?, re, im);
        Ok(())
    })
}

/// Walk from `origin`: distance shells when they are QD, Krylov strata otherwise.
///
/// # Safety
/// `graph` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctqw_walk_new(graph: *const CtqwGraph, origin: usize, out: *mut *mut CtqwWalk) -> CtqwStatus {
    guard(|| {
        let p = graph_pipeline(&borrow(graph, "graph")?.0, origin)?;
        store(out, CtqwWalk::from_pipeline(p)?)
    })
}

/// Walk for a catalog spec, including entries known only by their
/// intersection array.
///
/// # Safety
/// `spec` must be a NUL-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctqw_walk_from_catalog(spec: *const c_char, out: *mut *mut CtqwWalk) -> CtqwStatus {
    guard(|| {
        let p = make_entry(text(spec, "spec")?)?.pipeline()?;
        store(out, CtqwWalk::from_pipeline(p)?)
    })
}

/// Walk on the chain with diagonal `alpha[0..d]` and products `omega[1..d]`
/// (`omega_len == alpha_len - 1`).
///
/// # Safety
/// `alpha` and `omega` must point to the given number of readable values; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctqw_walk_from_jacobi(
    alpha: *const f64,
    alpha_len: usize,
    omega: *const f64,
    omega_len: usize,
    out: *mut *mut CtqwWalk,
) -> CtqwStatus {
    guard(|| {
        let jc = JacobiCoefficients::new(
            slice(alpha, alpha_len, "alpha")?.to_vec(),
            slice(omega, omega_len, "omega")?.to_vec(),
        )?;
        let m = spectral_measure(&jc)?;
        store(out, CtqwWalk::from_parts(jc, m)?)
    })
}

/// Number of strata `d + 1`.
///
/// # Safety
/// `walk` must be a live handle; `strata` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctqw_walk_strata(walk: *const CtqwWalk, strata: *mut usize) -> CtqwStatus {
    guard(|| write(strata, borrow(walk, "walk")?.jacobi.dimension()))
}

/// Number of atoms in the spectral measure.
///
/// # Safety
/// `walk` must be a live handle; `atoms` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctqw_walk_atoms(walk: *const CtqwWalk, atoms: *mut usize) -> CtqwStatus {
    guard(|| write(atoms, borrow(walk, "walk")?.measure.len()))
}

/// Copies `alpha` (strata values) and `omega` (strata - 1 values).
///
/// # Safety
/// `walk` must be a live handle; output buffers must hold the stated lengths.
#[no_mangle]
pub unsafe extern "C" fn ctqw_walk_jacobi(
    walk: *const CtqwWalk,
    alpha: *mut f64,
    alpha_len: usize,
    omega: *mut f64,
    omega_len: usize,
) -> CtqwStatus {
    guard(|| {
        let jc = &borrow(walk, "walk")?.jacobi;
        slice_mut(alpha, alpha_len, jc.alpha().len(), "alpha")?.copy_from_slice(jc.alpha());
        slice_mut(omega, omega_len, jc.omega().len(), "omega")?.copy_from_slice(jc.omega());
        Ok(())
    })
}

/// Copies the ascending nodes and their weights (atoms values each).
///
/// # Safety
/// `walk` must be a live handle; output buffers must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn ctqw_walk_measure(
    walk: *const CtqwWalk,
    nodes: *mut f64,
    weights: *mut f64,
    len: usize,
) -> CtqwStatus {
    guard(|| {
        let m = &borrow(walk, "walk")?.measure;
        slice_mut(nodes, len, m.len(), "nodes")?.copy_from_slice(m.nodes());
        slice_mut(weights, len, m.len(), "weights")?.copy_from_slice(m.weights());
        Ok(())
    })
}

/// Stratum amplitudes `q_0(t)..q_d(t)`.
///
/// # Safety
/// `walk` must be a live handle; `re` and `im` must hold `len` values.
#[no_mangle]
pub unsafe extern "C" fn ctqw_walk_amplitudes(
    walk: *const CtqwWalk,
    t: f64,
    re: *mut f64,
    im: *mut f64,
    len: usize,
) -> CtqwStatus {
    guard(|| {
        let w = borrow(walk, "walk")?;
        if !t.is_finite() {
            return Err(fail(CtqwStatus::InvalidArgument, "InvalidArgument: t is not finite"));
        }
        let strata = w.kernel.strata();
        let re = slice_mut(re, len, strata, "re")?;
        let im = slice_mut(im, len, strata, "im")?;
        split_complex(&w.kernel.eval(t), re, im);
        Ok(())
    })
}

/// Stieltjes function `G(z)` from the continued fraction.
///
/// # Safety
/// `walk` must be a live handle; `g_re` and `g_im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ctqw_walk_stieltjes(
    walk: *const CtqwWalk,
    z_re: f64,
    z_im: f64,
    g_re: *mut f64,
    g_im: *mut f64,
) -> CtqwStatus {
    guard(|| {
        let g = stieltjes_cf(&borrow(walk, "walk")?.jacobi, Complex64::new(z_re, z_im))?;
        write(g_re, g.re)?;
        write(g_im, g.im)
    })
}

/// # Safety
/// `walk` must come from a `ctqw_walk_*` constructor and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn ctqw_walk_free(walk: *mut CtqwWalk) {
    if !walk.is_null() {
        drop(Box::from_raw(walk));
    }
}
