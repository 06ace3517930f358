//! Spectral toolkit for principal ratios of connected graphs.
//!
//! The principal ratio `γ(G) = x_max / x_min` of a connected graph is the
//! ratio between the largest and smallest entries of its Perron eigenvector,
//! a classical measure of irregularity (`γ = 1` exactly for regular graphs).
//! The extremal question — which graph on `n` vertices maximizes `γ` — is
//! answered by kite (lollipop) graphs `P_r · K_s`, and this crate provides
//! the machinery to study that landscape:
//!
//! - [`graph`]: dense bitset graphs, kite construction, pendant-path
//!   detection, and a graph6 codec for corpus interchange.
//! - [`spectral`]: a shifted power iteration returning the Perron vector
//!   scaled to maximum entry 1, together with `γ`, `σ`, and the min–max
//!   eigenvector distance.
//! - [`kite`]: analytic kite solutions via the pendant-path transfer
//!   recurrence — spectral radius by bisection on a secular function and
//!   `log γ` in closed form, stable up to path lengths of 10⁵.
//! - [`bounds`]: the classical upper bounds on `γ` (Schneider's
//!   `λ₁^{n-1}`, the distance-refined `σ`-bound, the pendant-path bound and
//!   its product sandwich) plus structural checks satisfied by the extremal
//!   graph.
//! - [`certify`]: dual-precision numeric certificates for the analytic
//!   inequalities underpinning the extremal window, evaluated identically
//!   at f64 and ~106-bit precision.
//! - [`enumerate`]: exhaustive scans over all connected graphs at small `n`
//!   (or graph6 corpora) confirming that the maximum ratio is attained by a
//!   kite.
//!
//! With the default `parallel` feature the scans and sweeps run on rayon;
//! disabling it yields a dependency-light sequential build with identical
//! results.

use thiserror::Error;

pub mod bounds;
pub mod certify;
pub mod enumerate;
pub mod graph;
pub mod graph6;
pub mod kite;
pub mod spectral;

pub use graph::{Graph, KiteSpec, PendantPath};
pub use spectral::PerronData;

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vertex {v} out of range for a graph of order {n}")]
    VertexOutOfRange { v: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("graph order must be at least 1")]
    EmptyGraph,

    #[error("invalid kite parameters r={r}, s={s}: need r >= 1 and s >= 2")]
    InvalidKite { r: usize, s: usize },

    #[error("graph6: {0}")]
    Graph6(String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("tolerance must be positive, got {0}")]
    BadTolerance(f64),

    #[error("power iteration did not converge within {iterations} iterations (last residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("sigma is undefined for spectral radius {lambda1} <= 2")]
    SigmaDomain { lambda1: f64 },

    #[error("bound undefined for spectral radius {lambda1} <= 1")]
    SchneiderDomain { lambda1: f64 },

    #[error("path index j={j} out of range 1..={k}")]
    PathIndex { j: usize, k: usize },

    #[error("{what} requires j >= 2, got {j}")]
    SmallJ { what: &'static str, j: usize },

    #[error("{what} is stated only for n >= {min_n}, got {n}")]
    BelowHypothesis {
        what: &'static str,
        min_n: u64,
        n: u64,
    },

    #[error("parameter {name}={value} outside supported range {range}")]
    OutOfRange {
        name: &'static str,
        value: u64,
        range: &'static str,
    },

    #[error("built-in enumeration supports 2 <= n <= 7 (got {0}); ingest a graph6 corpus instead")]
    EnumerationRange(usize),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

/// Runs `f` inside a rayon pool of the requested size, or on the current
/// thread when `threads` is `None` / the `parallel` feature is off.
#[cfg(feature = "parallel")]
pub fn with_thread_count<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> T {
    match threads {
        Some(t) if t > 0 => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .expect("rayon pool")
            .install(f),
        _ => f(),
    }
}

#[cfg(not(feature = "parallel"))]
pub fn with_thread_count<T>(_threads: Option<usize>, f: impl FnOnce() -> T) -> T {
    f()
}
