//! Perron eigenpair of a connected graph.
//!
//! Power iteration on `A + I` (the shift keeps the dominant eigenvalue
//! strictly largest in modulus even on bipartite spectra), started from the
//! degree vector, with the eigenvector rescaled to maximum entry exactly 1.
//!
//! Convergence demands two things of the residual `A·x - λ̂·x`:
//! its infinity norm must drop below `tol · max(1, λ̂)`, and every entry
//! must be small *relative to* `λ̂·x_v`. The second condition is what makes
//! the tiny entries at the far end of a pendant path trustworthy — they are
//! orders of magnitude below the vector norm, and `γ = 1/x_min` inherits
//! their relative accuracy, not the absolute one.

use crate::graph::Graph;
use crate::{Error, Result};

/// Default residual tolerance for [`perron`].
pub const DEFAULT_TOL: f64 = 1e-12;

/// Default iteration cap for [`perron`].
pub const DEFAULT_MAX_ITER: usize = 1_000_000;

/// Absolute tolerance for membership in the argmin/argmax sets, applied
/// after max-entry-1 scaling. Symmetric graphs produce exact ties that
/// floating point perturbs.
pub const TIE_TOL: f64 = 1e-9;

// Entries below this floor are exempt from the relative residual check;
// they sit close enough to the subnormal range that relative arithmetic
// guarantees degrade.
const RELATIVE_FLOOR: f64 = 1e-250;

/// Perron data of a connected graph: spectral radius, eigenvector scaled to
/// maximum entry 1, principal ratio, extremal vertex sets, and the shortest
/// argmin-argmax distance.
#[derive(Debug, Clone)]
pub struct PerronData {
    pub lambda1: f64,
    /// Eigenvector, max entry exactly 1, all entries positive. Entries are
    /// relatively accurate down to ~1e-250; on graphs whose true minimum
    /// lies below that floor (γ beyond ~1e250, e.g. kites with thousands of
    /// path vertices) the far entries are unconverged upper bounds and only
    /// log-domain analytic routes give the true ratio.
    pub x: Vec<f64>,
    /// Principal ratio `1 / min(x)`; meaningful only while `min(x)` stays
    /// above the relative-accuracy floor, see [`PerronData::x`].
    pub gamma: f64,
    /// Vertices within [`TIE_TOL`] of the minimum entry, ascending.
    pub argmin: Vec<usize>,
    /// Vertices within [`TIE_TOL`] of the maximum entry, ascending.
    pub argmax: Vec<usize>,
    /// Shortest graph distance between an argmin and an argmax vertex;
    /// this is the paper-style distance parameter `k - 1`.
    pub k_minus_1: usize,
    /// `(λ₁ + sqrt(λ₁² - 4)) / 2`, defined only for `λ₁ > 2`.
    pub sigma: Option<f64>,
    pub iterations: usize,
    pub residual: f64,
}

impl PerronData {
    /// `log γ = -ln x_min`; `+inf` when the minimum entry underflowed.
    pub fn log_gamma(&self) -> f64 {
        let xmin = self.x.iter().copied().fold(f64::INFINITY, f64::min);
        -xmin.ln()
    }
}

/// The larger root of `σ + 1/σ = λ₁`; requires `λ₁ > 2`.
pub fn sigma_of(lambda1: f64) -> Result<f64> {
    if lambda1 <= 2.0 {
        return Err(Error::SigmaDomain { lambda1 });
    }
    Ok((lambda1 + (lambda1 * lambda1 - 4.0).sqrt()) / 2.0)
}

/// Computes the Perron eigenpair of a connected graph.
///
/// Deterministic given `(g, tol, max_iter)`. Errors on disconnected input
/// and on failure to converge within `max_iter` sweeps.
pub fn perron(g: &Graph, tol: f64, max_iter: usize) -> Result<PerronData> {
    if tol <= 0.0 {
        return Err(Error::BadTolerance(tol));
    }
    let n = g.n();
    if n == 1 {
        return Ok(PerronData {
            lambda1: 0.0,
            x: vec![1.0],
            gamma: 1.0,
            argmin: vec![0],
            argmax: vec![0],
            k_minus_1: 0,
            sigma: None,
            iterations: 0,
            residual: 0.0,
        });
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }

    let max_deg = g.max_degree() as f64;
    let mut x: Vec<f64> = g.degrees().iter().map(|&d| d as f64 / max_deg).collect();
    let mut ax = vec![0.0f64; n];
    let mut iterations = 0;

    loop {
        matvec(g, &x, &mut ax);
        let mut num = 0.0;
        let mut den = 0.0;
        for v in 0..n {
            num += x[v] * ax[v];
            den += x[v] * x[v];
        }
        let lambda = num / den;

        let mut res_inf = 0.0f64;
        let mut rel_ok = true;
        for v in 0..n {
            let r = (ax[v] - lambda * x[v]).abs();
            res_inf = res_inf.max(r);
            if x[v] > RELATIVE_FLOOR && r > tol * lambda * x[v] {
                rel_ok = false;
            }
        }
        if res_inf <= tol * lambda.max(1.0) && rel_ok {
            return Ok(finish(g, lambda, x, iterations, res_inf));
        }

        iterations += 1;
        if iterations > max_iter {
            return Err(Error::NoConvergence {
                iterations: max_iter,
                residual: res_inf,
            });
        }

        // One sweep of (A + I), renormalized to max entry 1.
        let mut m = 0.0f64;
        for v in 0..n {
            x[v] += ax[v];
            m = m.max(x[v]);
        }
        let inv = 1.0 / m;
        for v in 0..n {
            x[v] *= inv;
        }
    }
}

fn matvec(g: &Graph, x: &[f64], out: &mut [f64]) {
    for v in 0..g.n() {
        let mut acc = 0.0;
        for u in g.neighbors(v) {
            acc += x[u];
        }
        out[v] = acc;
    }
}

fn finish(g: &Graph, lambda1: f64, mut x: Vec<f64>, iterations: usize, residual: f64) -> PerronData {
    // Pin the maximum entry to exactly 1.
    let imax = x
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
        .expect("nonempty");
    let inv = 1.0 / x[imax];
    for e in x.iter_mut() {
        *e *= inv;
    }
    x[imax] = 1.0;

    let xmin = x.iter().copied().fold(f64::INFINITY, f64::min);
    let gamma = 1.0 / xmin;
    let argmin: Vec<usize> = (0..x.len()).filter(|&v| x[v] - xmin <= TIE_TOL).collect();
    let argmax: Vec<usize> = (0..x.len()).filter(|&v| 1.0 - x[v] <= TIE_TOL).collect();
    let k_minus_1 = set_distance(g, &argmin, &argmax);
    PerronData {
        lambda1,
        gamma,
        sigma: sigma_of(lambda1).ok(),
        argmin,
        argmax,
        k_minus_1,
        x,
        iterations,
        residual,
    }
}

/// Shortest BFS distance between the argmin and argmax sets of `pd`; the
/// distance parameter `k - 1`.
pub fn min_max_distance(g: &Graph, pd: &PerronData) -> usize {
    set_distance(g, &pd.argmin, &pd.argmax)
}

fn set_distance(g: &Graph, from: &[usize], to: &[usize]) -> usize {
    let n = g.n();
    let mut in_to = vec![false; n];
    for &v in to {
        in_to[v] = true;
    }
    let mut dist = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for &v in from {
        dist[v] = 0;
        queue.push_back(v);
    }
    while let Some(u) = queue.pop_front() {
        if in_to[u] {
            return dist[u];
        }
        for w in g.neighbors(u) {
            if dist[w] == usize::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    usize::MAX
}

/// Lexicographically smallest shortest path from `from` to `to`.
pub(crate) fn lex_shortest_path(g: &Graph, from: usize, to: usize) -> Vec<usize> {
    let dist = g.bfs_distances(to);
    let mut path = vec![from];
    let mut cur = from;
    while cur != to {
        let next = g
            .neighbors(cur)
            .find(|&w| dist[w] + 1 == dist[cur])
            .expect("connected");
        path.push(next);
        cur = next;
    }
    path
}

/// The min-to-max reference path `v_1 .. v_k`: smallest argmin/argmax pair
/// at the minimum distance, joined by the lexicographically smallest
/// shortest path.
pub(crate) fn min_max_path(g: &Graph, pd: &PerronData) -> Vec<usize> {
    let d = pd.k_minus_1;
    let mut best: Option<(usize, usize)> = None;
    for &u in &pd.argmin {
        let du = g.bfs_distances(u);
        for &v in &pd.argmax {
            if du[v] == d {
                best = match best {
                    None => Some((u, v)),
                    Some(b) if (u, v) < b => Some((u, v)),
                    b => b,
                };
            }
        }
    }
    let (u, v) = best.expect("argmin/argmax pair at the minimum distance");
    lex_shortest_path(g, u, v)
}
