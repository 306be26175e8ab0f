//! C ABI over `qst-core`.
//!
//! Graphs and evolutions are opaque heap handles created by `qst_*_new`-style
//! constructors and released with the matching `*_free`. Every fallible call
//! returns a [`QstStatus`]; on failure [`qst_last_error_message`] describes
//! the error for the calling thread. Outputs are written through pointers
//! only on success.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use qst_core::{
    cospectrality, eigendecompose, evolution_amplitude, find_involution_pairing, k_threshold_two_class,
    peak_fidelity, q_threshold, readout_time_bound, transfer_probability, EigenDecomposition, Error, Extended,
    Graph, HamiltonianSpec, Model, PeakStrategy, ThresholdInput,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QstStatus {
    Ok = 0,
    NullPointer = 1,
    Parse = 2,
    Bounds = 3,
    Validation = 4,
    Domain = 5,
    Convergence = 6,
    Structure = 7,
    DegenerateGap = 8,
    Overflow = 9,
    Hypothesis = 10,
    Capacity = 11,
    Io = 12,
    InvalidUtf8 = 13,
    BufferSize = 14,
    Panic = 15,
}

impl From<&Error> for QstStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Parse { .. } => QstStatus::Parse,
            Error::Bounds { .. } => QstStatus::Bounds,
            Error::Validation(_) => QstStatus::Validation,
            Error::Domain(_) => QstStatus::Domain,
            Error::Convergence { .. } => QstStatus::Convergence,
            Error::Structure { .. } => QstStatus::Structure,
            Error::DegenerateGap { .. } => QstStatus::DegenerateGap,
            Error::Overflow { .. } => QstStatus::Overflow,
            Error::Hypothesis { .. } => QstStatus::Hypothesis,
            Error::Capacity { .. } => QstStatus::Capacity,
            Error::Io(_) => QstStatus::Io,
        }
    }
}

/// Opaque graph handle.
pub struct QstGraph {
    inner: Graph,
}

/// Opaque handle holding the eigendecomposition of one Hamiltonian.
pub struct QstEvolution {
    inner: EigenDecomposition,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|slot| *slot.borrow_mut() = c);
}

/// Runs `f`, converting errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (QstStatus, String)>) -> QstStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            QstStatus::Ok
        }
        Ok(Err((status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("panic inside qst");
            QstStatus::Panic
        }
    }
}

fn core_err(e: Error) -> (QstStatus, String) {
    (QstStatus::from(&e), e.to_string())
}

fn null(what: &str) -> (QstStatus, String) {
    (QstStatus::NullPointer, format!("{what} is null"))
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (QstStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn write_out<T>(p: *mut T, value: T, what: &str) -> Result<(), (QstStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    p.write(value);
    Ok(())
}

unsafe fn c_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, (QstStatus, String)> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| (QstStatus::InvalidUtf8, format!("{what} is not valid UTF-8")))
}

unsafe fn new_graph(out: *mut *mut QstGraph, g: Result<Graph, Error>) -> Result<(), (QstStatus, String)> {
    if out.is_null() {
        return Err(null("out"));
    }
    let g = g.map_err(core_err)?;
    out.write(Box::into_raw(Box::new(QstGraph { inner: g })));
    Ok(())
}

/// Message for the most recent failed call on this thread; empty after a
/// success. The pointer stays valid until the next `qst_*` call on the
/// same thread.
#[no_mangle]
pub extern "C" fn qst_last_error_message() -> *const c_char {
    LAST_ERROR.with(|slot| slot.borrow().as_ptr())
}

/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn qst_graph_path(n: usize, out: *mut *mut QstGraph) -> QstStatus {
    guard(|| new_graph(out, Graph::path(n)))
}

/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn qst_graph_cycle(n: usize, out: *mut *mut QstGraph) -> QstStatus {
    guard(|| new_graph(out, Graph::cycle(n)))
}

/// # Safety
/// `out` must be valid for writing one pointer.
#[no_mangle]
pub unsafe extern "C" fn qst_graph_complete_bipartite(a: usize, b: usize, out: *mut *mut QstGraph) -> QstStatus {
    guard(|| new_graph(out, Graph::complete_bipartite(a, b)))
}

/// Parses the edge-list text format.
///
/// # Safety
/// `text` must be a NUL-terminated string; `out` valid for one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qst_graph_from_edge_list(text: *const c_char, out: *mut *mut QstGraph) -> QstStatus {
    guard(|| {
        let text = c_str(text, "text")?;
        new_graph(out, Graph::from_edge_list(text))
    })
}

/// # Safety
/// `g` must be null or a handle from a `qst_graph_*` constructor not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qst_graph_free(g: *mut QstGraph) {
    if !g.is_null() {
        drop(Box::from_raw(g));
    }
}

/// Vertex count, or 0 for a null handle.
///
/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn qst_graph_vertex_count(g: *const QstGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.n())
}

/// # Safety
/// `g` must be null or a live graph handle.
#[no_mangle]
pub unsafe extern "C" fn qst_graph_edge_count(g: *const QstGraph) -> usize {
    g.as_ref().map_or(0, |g| g.inner.edge_count())
}

/// # Safety
/// `g` must be a live graph handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qst_graph_degree(g: *const QstGraph, v: usize, out: *mut usize) -> QstStatus {
    guard(|| {
        let g = &deref(g, "graph")?.inner;
        g.check_vertex(v).map_err(core_err)?;
        write_out(out, g.degree_vector()[v], "out")
    })
}

/// Breadth-first distance; `-1` when disconnected.
///
/// # Safety
/// `g` must be a live graph handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qst_graph_distance(g: *const QstGraph, u: usize, v: usize, out: *mut i64) -> QstStatus {
    guard(|| {
        let d = deref(g, "graph")?.inner.distance(u, v).map_err(core_err)?;
        write_out(out, d.finite().map_or(-1, |d| d as i64), "out")
    })
}

/// Builds and diagonalizes the Hamiltonian for `model` (`"adjacency"`,
/// `"laplacian"`, `"signless"`, `"generalized:<k>"`, `"loops:<u>,<v>,<Q>"`).
///
/// # Safety
/// `g` must be a live graph handle, `model` NUL-terminated, `out` valid for
/// one pointer write.
#[no_mangle]
pub unsafe extern "C" fn qst_evolution_new(
    g: *const QstGraph,
    model: *const c_char,
    out: *mut *mut QstEvolution,
) -> QstStatus {
    guard(|| {
        let g = &deref(g, "graph")?.inner;
        let model: Model = c_str(model, "model")?.parse().map_err(core_err)?;
        if out.is_null() {
            return Err(null("out"));
        }
        let spec = HamiltonianSpec::new(g.clone(), model).map_err(core_err)?;
        let d = eigendecompose(&spec.matrix()).map_err(core_err)?;
        out.write(Box::into_raw(Box::new(QstEvolution { inner: d })));
        Ok(())
    })
}

/// # Safety
/// `e` must be null or a handle from [`qst_evolution_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qst_evolution_free(e: *mut QstEvolution) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Copies the ascending eigenvalues of `H`; `len` must equal the vertex count.
///
/// # Safety
/// `e` must be a live handle and `buf` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qst_evolution_eigenvalues(e: *const QstEvolution, buf: *mut f64, len: usize) -> QstStatus {
    guard(|| {
        let vals = deref(e, "evolution")?.inner.eigenvalues();
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len != vals.len() {
            return Err((QstStatus::BufferSize, format!("buffer holds {len}, need {}", vals.len())));
        }
        std::ptr::copy_nonoverlapping(vals.as_ptr(), buf, len);
        Ok(())
    })
}

/// `U(t)_{u,v}` of `exp(-iHt)`.
///
/// # Safety
/// `e` must be a live handle; `re` and `im` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn qst_evolution_amplitude(
    e: *const QstEvolution,
    t: f64,
    u: usize,
    v: usize,
    re: *mut f64,
    im: *mut f64,
) -> QstStatus {
    guard(|| {
        let a = evolution_amplitude(&deref(e, "evolution")?.inner, t, u, v).map_err(core_err)?;
        if re.is_null() || im.is_null() {
            return Err(null("re/im"));
        }
        re.write(a.re);
        im.write(a.im);
        Ok(())
    })
}

/// # Safety
/// `e` must be a live handle; `out` valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qst_transfer_probability(
    e: *const QstEvolution,
    t: f64,
    u: usize,
    v: usize,
    out: *mut f64,
) -> QstStatus {
    guard(|| {
        let p = transfer_probability(&deref(e, "evolution")?.inner, t, u, v).map_err(core_err)?;
        write_out(out, p, "out")
    })
}

unsafe fn write_peak(
    e: *const QstEvolution,
    u: usize,
    v: usize,
    strategy: PeakStrategy,
    t_star: *mut f64,
    fidelity: *mut f64,
) -> Result<(), (QstStatus, String)> {
    let p = peak_fidelity(&deref(e, "evolution")?.inner, u, v, strategy).map_err(core_err)?;
    if t_star.is_null() || fidelity.is_null() {
        return Err(null("t_star/fidelity"));
    }
    t_star.write(p.t_star);
    fidelity.write(p.fidelity);
    Ok(())
}

/// Peak `|U(t)_{u,v}|` near the two-level beat time, refined over
/// `t0 * (1 +- window_fraction)` with `refine_samples` samples.
///
/// # Safety
/// `e` must be a live handle; `t_star` and `fidelity` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn qst_peak_two_level(
    e: *const QstEvolution,
    u: usize,
    v: usize,
    window_fraction: f64,
    refine_samples: usize,
    t_star: *mut f64,
    fidelity: *mut f64,
) -> QstStatus {
    guard(|| {
        let strategy = PeakStrategy::TwoLevel {
            refine_window_fraction: window_fraction,
            refine_samples,
        };
        write_peak(e, u, v, strategy, t_star, fidelity)
    })
}

/// Peak `|U(t)_{u,v}|` over a uniform grid on `[0, t_max]`, locally refined.
///
/// # Safety
/// `e` must be a live handle; `t_star` and `fidelity` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn qst_peak_grid(
    e: *const QstEvolution,
    u: usize,
    v: usize,
    t_max: f64,
    samples: usize,
    t_star: *mut f64,
    fidelity: *mut f64,
) -> QstStatus {
    guard(|| write_peak(e, u, v, PeakStrategy::Grid { t_max, samples }, t_star, fidelity))
}

/// Cospectrality order (`-1` = infinite) and the first walk length where the
/// closed-walk counts differ (`-1` = none).
///
/// # Safety
/// `g` must be a live graph handle; outputs valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn qst_cospectrality(
    g: *const QstGraph,
    u: usize,
    v: usize,
    order: *mut i64,
    first_divergence: *mut i64,
) -> QstStatus {
    guard(|| {
        let r = cospectrality(&deref(g, "graph")?.inner, u, v).map_err(core_err)?;
        write_out(order, r.order.finite().map_or(-1, |c| c as i64), "order")?;
        write_out(first_divergence, r.first_divergence.map_or(-1, |d| d.k as i64), "first_divergence")
    })
}

/// Searches for an involutive automorphism mapping `u` to `v`. On success
/// `*found` says whether one exists and, if so, `buf[0..len]` holds it.
///
/// # Safety
/// `g` must be a live graph handle; `buf` valid for `len` writes; `found`
/// valid for one write.
#[no_mangle]
pub unsafe extern "C" fn qst_find_involution(
    g: *const QstGraph,
    u: usize,
    v: usize,
    buf: *mut usize,
    len: usize,
    found: *mut bool,
) -> QstStatus {
    guard(|| {
        let g = &deref(g, "graph")?.inner;
        if buf.is_null() {
            return Err(null("buf"));
        }
        if len != g.n() {
            return Err((QstStatus::BufferSize, format!("buffer holds {len}, need {}", g.n())));
        }
        match find_involution_pairing(g, u, v).map_err(core_err)? {
            Some(p) => {
                std::ptr::copy_nonoverlapping(p.as_ptr(), buf, len);
                write_out(found, true, "found")
            }
            None => write_out(found, false, "found"),
        }
    })
}

/// Threshold on `|Q|`. A negative `c` means infinite cospectrality.
///
/// # Safety
/// `q_min` and `t_bound` valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn qst_q_threshold(
    epsilon: f64,
    m: u64,
    c: i64,
    d: u64,
    q_min: *mut f64,
    t_bound: *mut f64,
) -> QstStatus {
    guard(|| {
        let c = if c < 0 { Extended::Infinite } else { Extended::Finite(c as u64) };
        let r = q_threshold(ThresholdInput { epsilon, m, c, d }).map_err(core_err)?;
        write_out(q_min, r.q_min, "q_min")?;
        write_out(t_bound, r.t_bound, "t_bound")
    })
}

/// Threshold on `|k|` for a two-degree-class pair.
///
/// # Safety
/// `g` must be a live graph handle; outputs valid for one write each.
#[no_mangle]
pub unsafe extern "C" fn qst_k_threshold_two_class(
    g: *const QstGraph,
    u: usize,
    v: usize,
    epsilon: f64,
    k_min: *mut f64,
    q_min: *mut f64,
    t_bound: *mut f64,
) -> QstStatus {
    guard(|| {
        let r = k_threshold_two_class(&deref(g, "graph")?.inner, u, v, epsilon).map_err(core_err)?;
        write_out(k_min, r.k_min.unwrap_or(f64::NAN), "k_min")?;
        write_out(q_min, r.q_min, "q_min")?;
        write_out(t_bound, r.t_bound, "t_bound")
    })
}

/// `2 pi (|q| + m)^(d - 1)`.
#[no_mangle]
pub extern "C" fn qst_readout_time_bound(q: f64, m: u64, d: u64) -> f64 {
    readout_time_bound(q, m, d)
}
