//! Analytic solution of kite graphs `P_r · K_s`.
//!
//! Along a pendant path the Perron eigenvector follows the three-term
//! recurrence `φ_{j+1} = λ φ_j - φ_{j-1}` (`φ_0 = 0, φ_1 = 1`), and with
//! `σ + 1/σ = λ` the closed form is `φ_j = (σ^j - σ^{-j}) / (σ - σ^{-1})`.
//! Assembling the eigen-equations of a kite around its clique gives a
//! secular function whose unique root in `(s-1, s)` is the spectral radius,
//! and the principal ratio is exactly `γ = φ_r(σ)` — so `log γ` is
//! available in closed form without ever materializing `γ`, which at
//! n = 5000 is far beyond the range of any native float.

use crate::graph::KiteSpec;
use crate::{Error, Result};

/// Default bisection tolerance (interval width) for [`kite_lambda1`].
pub const DEFAULT_TOL: f64 = 1e-13;

const BISECT_CAP: usize = 200;
const PATH_PROFILE_MAX: usize = 64;

/// Analytic kite solution.
#[derive(Debug, Clone)]
pub struct KiteSolution {
    pub spec: KiteSpec,
    pub lambda1: f64,
    /// `σ(λ₁)`, present when `λ₁ > 2`.
    pub sigma: Option<f64>,
    /// `ln γ = ln φ_r(σ)`; 0 exactly when r = 1.
    pub log_gamma: f64,
    /// Eigenvector profile `φ_1..φ_r` along the path scaled so the
    /// attachment entry is 1; only populated for r <= 64.
    pub path_profile: Option<Vec<f64>>,
}

/// Sign-preserving evaluation of the kite secular function
/// `F(λ) = λ φ_r(λ) - φ_{r-1}(λ) - (s-1) φ_r(λ) / (λ - s + 2)`.
///
/// The φ pair is rescaled by its magnitude every 50 recurrence steps; the
/// scaling is positive, so the sign of `F` is unchanged while φ itself
/// would overflow around `σ^r`.
pub(crate) fn secular_sign(r: usize, s: usize, lambda: f64) -> f64 {
    debug_assert!(r >= 2);
    let mut prev = 0.0f64; // φ_0
    let mut cur = 1.0f64; // φ_1
    for step in 1..r {
        (prev, cur) = (cur, lambda * cur - prev);
        if step % 50 == 0 {
            let m = cur.abs().max(prev.abs());
            prev /= m;
            cur /= m;
        }
    }
    lambda * cur - prev - (s as f64 - 1.0) * cur / (lambda - s as f64 + 2.0)
}

/// Spectral radius of `P_r · K_s` by bisection on the secular function,
/// bracketed in `(s-1, s)`. `r = 1` is the complete graph with
/// `λ₁ = s - 1` exactly. Requires `s >= 3` for `r >= 2`.
pub fn kite_lambda1(spec: KiteSpec, tol: f64) -> Result<f64> {
    if tol <= 0.0 {
        return Err(Error::BadTolerance(tol));
    }
    let (r, s) = (spec.r(), spec.s());
    if r == 1 {
        return Ok(s as f64 - 1.0);
    }
    if s < 3 {
        return Err(Error::OutOfRange {
            name: "s",
            value: s as u64,
            range: "3.. for the analytic kite solver (s = 2 kites are bare paths)",
        });
    }
    let mut lo = s as f64 - 1.0 + 1e-9;
    let mut hi = s as f64;
    debug_assert!(secular_sign(r, s, lo) < 0.0 && secular_sign(r, s, hi) > 0.0);
    for _ in 0..BISECT_CAP {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || hi - lo <= tol {
            break;
        }
        if secular_sign(r, s, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `ln sinh(x)` for `x > 0`, stable across the whole range.
fn ln_sinh(x: f64) -> f64 {
    x + (-(-2.0 * x).exp()).ln_1p() - std::f64::consts::LN_2
}

/// `ln φ_m(σ(λ))` in log domain; `λ > 2` required, `m = 0` yields `-inf`.
///
/// With `λ = 2 cosh θ` this is `ln sinh(mθ) - ln sinh(θ)`, immune to the
/// overflow of `σ^m` and to cancellation as `λ → 2⁺`.
pub fn log_phi(lambda1: f64, m: usize) -> Result<f64> {
    if lambda1 <= 2.0 {
        return Err(Error::SigmaDomain { lambda1 });
    }
    if m == 0 {
        return Ok(f64::NEG_INFINITY);
    }
    let theta = (lambda1 / 2.0).acosh();
    Ok(ln_sinh(m as f64 * theta) - ln_sinh(theta))
}

/// `ln γ(P_r · K_s) = ln φ_r(σ)`, assembled without overflow for path
/// orders up to 10⁵. Requires `s >= 3`; `r = 1` gives 0 exactly.
pub fn kite_log_gamma(spec: KiteSpec, tol: f64) -> Result<f64> {
    if spec.s() < 3 {
        return Err(Error::OutOfRange {
            name: "s",
            value: spec.s() as u64,
            range: "3.. for the analytic kite solver (s = 2 kites are bare paths)",
        });
    }
    if spec.r() == 1 {
        return Ok(0.0);
    }
    let lambda1 = kite_lambda1(spec, tol)?;
    log_phi(lambda1, spec.r())
}

/// Full analytic solution for one kite.
pub fn solve(spec: KiteSpec, tol: f64) -> Result<KiteSolution> {
    let lambda1 = kite_lambda1(spec, tol)?;
    let log_gamma = if spec.r() == 1 {
        0.0
    } else {
        log_phi(lambda1, spec.r())?
    };
    let sigma = crate::spectral::sigma_of(lambda1).ok();
    let path_profile = if spec.r() <= PATH_PROFILE_MAX {
        if spec.r() == 1 {
            Some(vec![1.0])
        } else {
            let lg_r = log_phi(lambda1, spec.r())?;
            Some(
                (1..=spec.r())
                    .map(|j| (log_phi(lambda1, j).expect("lambda1 > 2") - lg_r).exp())
                    .collect(),
            )
        }
    } else {
        None
    };
    Ok(KiteSolution {
        spec,
        lambda1,
        sigma,
        log_gamma,
        path_profile,
    })
}

/// The kite `(r, n - r + 1)` maximizing `log γ` over `r = 2..=n-2`, ties
/// toward smaller `r`. Runs the sweep in parallel when the `parallel`
/// feature is enabled; the reduction is a pure comparison, so the result is
/// deterministic either way.
pub fn best_kite(n: usize) -> Result<KiteSolution> {
    if n < 4 {
        return Err(Error::OutOfRange {
            name: "n",
            value: n as u64,
            range: "4..",
        });
    }
    #[cfg(feature = "parallel")]
    let best = best_kite_par(n)?;
    #[cfg(not(feature = "parallel"))]
    let best = best_kite_seq(n)?;
    solve(best, DEFAULT_TOL)
}

fn sweep_candidate(n: usize, r: usize) -> Result<(usize, f64)> {
    let spec = KiteSpec::new(r, n - r + 1)?;
    Ok((r, kite_log_gamma(spec, DEFAULT_TOL)?))
}

fn pick(a: (usize, f64), b: (usize, f64)) -> (usize, f64) {
    if b.1 > a.1 || (b.1 == a.1 && b.0 < a.0) {
        b
    } else {
        a
    }
}

#[doc(hidden)]
pub fn best_kite_seq(n: usize) -> Result<KiteSpec> {
    let mut best = (usize::MAX, f64::NEG_INFINITY);
    for r in 2..=n - 2 {
        best = pick(best, sweep_candidate(n, r)?);
    }
    KiteSpec::new(best.0, n - best.0 + 1)
}

#[cfg(feature = "parallel")]
#[doc(hidden)]
pub fn best_kite_par(n: usize) -> Result<KiteSpec> {
    use rayon::prelude::*;
    let best = (2..=n - 2)
        .into_par_iter()
        .map(|r| sweep_candidate(n, r))
        .try_reduce(|| (usize::MAX, f64::NEG_INFINITY), |a, b| Ok(pick(a, b)))?;
    KiteSpec::new(best.0, n - best.0 + 1)
}
