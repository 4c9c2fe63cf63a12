//! C ABI over `resq`.
//!
//! Every handle is opaque and owned by the caller once returned; release it
//! with the matching `*_free`. Fallible functions return a [`ResqStatus`] and
//! write their result through an out-pointer. On failure the out-pointer is
//! left untouched and [`resq_last_error_message`] describes the error.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use resq::energy::{check_bounds, resistance_laplacian_energy, DEFAULT_BOUND_TOL};
use resq::graph::{generate, parse_edge_list, FamilySpec, Graph};
use resq::resistance::ResistanceBundle;
use resq::spectral::{eigenvalues_symmetric, Spectrum};
use resq::{DenseMatrix, Error};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResqStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    ParseError = 3,
    InvalidArgument = 4,
    Disconnected = 5,
    OutOfRange = 6,
    BufferTooSmall = 7,
    NumericError = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResqFamily {
    /// `K_a`; `b` is ignored.
    Complete = 0,
    /// `K_{a,b}`.
    CompleteBipartite = 1,
    /// `C_a`; `b` is ignored.
    Cycle = 2,
    /// `P_a`; `b` is ignored.
    Path = 3,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResqMatrixKind {
    Resistance = 0,
    ResistanceLaplacian = 1,
    ResistanceSignlessLaplacian = 2,
}

/// Opaque graph handle.
pub struct ResqGraph(Graph);

/// Opaque dense square matrix handle.
pub struct ResqMatrix(DenseMatrix);

/// Opaque spectrum handle; eigenvalues are stored in descending order.
pub struct ResqSpectrum(Spectrum);

/// Energy summary of a connected graph.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ResqEnergy {
    pub n: usize,
    pub mean_transmission: f64,
    /// Sum of squared resistances over unordered pairs.
    pub f: f64,
    pub big_f: f64,
    pub le_r: f64,
    pub e_r: f64,
    pub lower_2sqrt_f: f64,
    pub upper_sqrt_2nf: f64,
    pub upper_mean_u: f64,
    pub upper_eta1: f64,
    pub bounds_satisfied: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: ResqStatus, msg: impl AsRef<str>) -> ResqStatus {
    set_last_error(msg.as_ref());
    status
}

fn status_of(e: &Error) -> ResqStatus {
    match e {
        Error::MalformedLine { .. }
        | Error::DuplicateEdge { .. }
        | Error::SelfLoop { .. }
        | Error::VertexOutOfRange { .. } => ResqStatus::ParseError,
        Error::InvalidFamilyParams(_) => ResqStatus::InvalidArgument,
        Error::Disconnected => ResqStatus::Disconnected,
        _ => ResqStatus::NumericError,
    }
}

fn guard(f: impl FnOnce() -> Result<(), (ResqStatus, String)>) -> ResqStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            ResqStatus::Ok
        }
        Ok(Err((status, msg))) => fail(status, msg),
        Err(_) => fail(ResqStatus::Panic, "internal panic"),
    }
}

fn lift<T>(r: resq::Result<T>) -> Result<T, (ResqStatus, String)> {
    r.map_err(|e| (status_of(&e), e.to_string()))
}

fn null(what: &str) -> (ResqStatus, String) {
    (ResqStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (ResqStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

fn boxed<T>(out: *mut *mut T, value: T) {
    unsafe { *out = Box::into_raw(Box::new(value)) };
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn resq_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn resq_status_string(status: ResqStatus) -> *const c_char {
    let s: &'static str = match status {
        ResqStatus::Ok => "ok\0",
        ResqStatus::NullPointer => "null pointer\0",
        ResqStatus::InvalidUtf8 => "invalid utf-8\0",
        ResqStatus::ParseError => "edge list parse error\0",
        ResqStatus::InvalidArgument => "invalid argument\0",
        ResqStatus::Disconnected => "graph is disconnected\0",
        ResqStatus::OutOfRange => "index out of range\0",
        ResqStatus::BufferTooSmall => "buffer too small\0",
        ResqStatus::NumericError => "numeric error\0",
        ResqStatus::Panic => "internal panic\0",
    };
    s.as_ptr().cast()
}

/// Message of the last failed call on this thread; empty after a success.
/// Valid until the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn resq_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Parses an edge list: first line `n`, then one `u v` pair per line.
///
/// # Safety
/// `text` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resq_graph_parse(
    text: *const c_char,
    out: *mut *mut ResqGraph,
) -> ResqStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let s = CStr::from_ptr(text)
            .to_str()
            .map_err(|e| (ResqStatus::InvalidUtf8, e.to_string()))?;
        boxed(out, ResqGraph(lift(parse_edge_list(s))?));
        Ok(())
    })
}

/// Builds a graph on `n` vertices from `edge_count` pairs stored flat in
/// `edges` (`2 * edge_count` entries).
///
/// # Safety
/// `edges` must point to `2 * edge_count` readable values (may be null when
/// `edge_count` is 0) and `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn resq_graph_from_edges(
    n: usize,
    edges: *const usize,
    edge_count: usize,
    out: *mut *mut ResqGraph,
) -> ResqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let flat: &[usize] = if edge_count == 0 {
            &[]
        } else if edges.is_null() {
            return Err(null("edges"));
        } else {
            let len = edge_count.checked_mul(2).ok_or((
                ResqStatus::InvalidArgument,
                "edge_count overflows".to_string(),
            ))?;
            std::slice::from_raw_parts(edges, len)
        };
        let pairs = flat.chunks_exact(2).map(|p| (p[0], p[1]));
        boxed(out, ResqGraph(lift(Graph::from_edges(n, pairs))?));
        Ok(())
    })
}

/// Generates a family instance; see [`ResqFamily`] for the meaning of `a`, `b`.
///
/// # Safety
/// `out` must be a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resq_graph_generate(
    family: ResqFamily,
    a: usize,
    b: usize,
    out: *mut *mut ResqGraph,
) -> ResqStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = match family {
            ResqFamily::Complete => FamilySpec::Complete { n: a },
            ResqFamily::CompleteBipartite => FamilySpec::CompleteBipartite { p: a, q: b },
            ResqFamily::Cycle => FamilySpec::Cycle { n: a },
            ResqFamily::Path => FamilySpec::Path { n: a },
        };
        boxed(out, ResqGraph(lift(generate(spec))?));
        Ok(())
    })
}

/// # Safety
/// `graph` must be null or a handle returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn resq_graph_free(graph: *mut ResqGraph) {
    if !graph.is_null() {
        drop(Box::from_raw(graph));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn resq_graph_vertex_count(graph: *const ResqGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.vertex_count())
}

/// Edge count, or 0 for a null handle.
///
/// # Safety
/// `graph` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn resq_graph_edge_count(graph: *const ResqGraph) -> usize {
    graph.as_ref().map_or(0, |g| g.0.edge_count())
}

fn select(bundle: ResistanceBundle, kind: ResqMatrixKind) -> DenseMatrix {
    match kind {
        ResqMatrixKind::Resistance => bundle.r,
        ResqMatrixKind::ResistanceLaplacian => bundle.rl,
        ResqMatrixKind::ResistanceSignlessLaplacian => bundle.rq,
    }
}

/// Computes `R`, `R^L` or `R^Q` of a connected graph.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resq_matrix_compute(
    graph: *const ResqGraph,
    kind: ResqMatrixKind,
    out: *mut *mut ResqMatrix,
) -> ResqStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let bundle = lift(ResistanceBundle::compute(&g.0))?;
        boxed(out, ResqMatrix(select(bundle, kind)));
        Ok(())
    })
}

/// # Safety
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn resq_matrix_free(matrix: *mut ResqMatrix) {
    if !matrix.is_null() {
        drop(Box::from_raw(matrix));
    }
}

/// Matrix order, or 0 for a null handle.
///
/// # Safety
/// `matrix` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn resq_matrix_order(matrix: *const ResqMatrix) -> usize {
    matrix.as_ref().map_or(0, |m| m.0.nrows())
}

/// # Safety
/// `matrix` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resq_matrix_get(
    matrix: *const ResqMatrix,
    i: usize,
    j: usize,
    out: *mut f64,
) -> ResqStatus {
    guard(|| {
        let m = deref(matrix, "matrix")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let n = m.0.nrows();
        if i >= n || j >= n {
            return Err((
                ResqStatus::OutOfRange,
                format!("({i}, {j}) outside a {n}x{n} matrix"),
            ));
        }
        *out = m.0[(i, j)];
        Ok(())
    })
}

/// Copies the matrix into `buf` in row-major order. `len` is the capacity of
/// `buf` in elements and must be at least `order * order`.
///
/// # Safety
/// `matrix` must be a live handle and `buf` must hold `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn resq_matrix_copy(
    matrix: *const ResqMatrix,
    buf: *mut f64,
    len: usize,
) -> ResqStatus {
    guard(|| {
        let m = deref(matrix, "matrix")?;
        let n = m.0.nrows();
        if len < n * n {
            return Err((
                ResqStatus::BufferTooSmall,
                format!("need {} values, got {len}", n * n),
            ));
        }
        if n == 0 {
            return Ok(());
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        let dst = std::slice::from_raw_parts_mut(buf, n * n);
        for (k, v) in dst.iter_mut().enumerate() {
            *v = m.0[(k / n, k % n)];
        }
        Ok(())
    })
}

/// Eigenvalues of `R`, `R^L` or `R^Q`, descending.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resq_spectrum_compute(
    graph: *const ResqGraph,
    kind: ResqMatrixKind,
    out: *mut *mut ResqSpectrum,
) -> ResqStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let bundle = lift(ResistanceBundle::compute(&g.0))?;
        let s = lift(eigenvalues_symmetric(&select(bundle, kind)))?;
        boxed(out, ResqSpectrum(s));
        Ok(())
    })
}

/// # Safety
/// `spectrum` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn resq_spectrum_free(spectrum: *mut ResqSpectrum) {
    if !spectrum.is_null() {
        drop(Box::from_raw(spectrum));
    }
}

/// Number of eigenvalues, or 0 for a null handle.
///
/// # Safety
/// `spectrum` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn resq_spectrum_len(spectrum: *const ResqSpectrum) -> usize {
    spectrum.as_ref().map_or(0, |s| s.0.len())
}

/// Copies the eigenvalues into `buf`, which must hold at least
/// `resq_spectrum_len` values.
///
/// # Safety
/// `spectrum` must be a live handle and `buf` must hold `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn resq_spectrum_copy(
    spectrum: *const ResqSpectrum,
    buf: *mut f64,
    len: usize,
) -> ResqStatus {
    guard(|| {
        let s = deref(spectrum, "spectrum")?;
        let n = s.0.len();
        if len < n {
            return Err((
                ResqStatus::BufferTooSmall,
                format!("need {n} values, got {len}"),
            ));
        }
        if n == 0 {
            return Ok(());
        }
        if buf.is_null() {
            return Err(null("buf"));
        }
        std::slice::from_raw_parts_mut(buf, n).copy_from_slice(&s.0.values);
        Ok(())
    })
}

/// Resistance Laplacian energy, resistance energy and the four energy bounds.
///
/// # Safety
/// `graph` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn resq_energy(graph: *const ResqGraph, out: *mut ResqEnergy) -> ResqStatus {
    guard(|| {
        let g = deref(graph, "graph")?;
        if out.is_null() {
            return Err(null("out"));
        }
        let r = lift(resistance_laplacian_energy(&g.0))?;
        let b = lift(check_bounds(&r, DEFAULT_BOUND_TOL))?;
        *out = ResqEnergy {
            n: r.n,
            mean_transmission: r.mean_transmission,
            f: r.f,
            big_f: r.big_f,
            le_r: r.le_r,
            e_r: r.e_r,
            lower_2sqrt_f: b.lower_2sqrt_f.value,
            upper_sqrt_2nf: b.upper_sqrt_2nf.value,
            upper_mean_u: b.upper_mean_u.value,
            upper_eta1: b.upper_eta1.value,
            bounds_satisfied: b.all_satisfied(),
        };
        Ok(())
    })
}
