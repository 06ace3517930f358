//! Upper bounds on the principal ratio and structural checks for the
//! extremal graph.
//!
//! Everything here is compared in log domain with absolute tolerance 1e-9:
//! the bounds behave like `λ^{n-1}` and overflow linear-domain floats long
//! before the graphs get interesting.
//!
//! The reference path `v_1..v_k` runs from a minimum-entry vertex to a
//! maximum-entry vertex. When the graph carries a pendant path whose free
//! end is a minimum and whose attachment is a maximum (kites, and any
//! graph shaped like the extremal one), that pendant path is used directly:
//! at large orders the eigenvector entries at the far end of the path
//! underflow to zero, which makes every deep-path vertex tie as "minimum"
//! and would corrupt a purely numeric argmin-to-argmax distance. Otherwise
//! the path is the lexicographically smallest BFS shortest path.

use crate::graph::Graph;
use crate::kite::log_phi;
use crate::spectral::{self, PerronData};
use crate::{Error, Result};

/// Absolute log-domain tolerance used by the bound comparisons in tests.
pub const LOG_TOL: f64 = 1e-9;

/// `(n-1) · ln λ₁`: the classical ratio bound `γ ≤ λ₁^{n-1}`; requires
/// `λ₁ > 1`.
pub fn schneider_bound(pd: &PerronData, n: usize) -> Result<f64> {
    if pd.lambda1 <= 1.0 {
        return Err(Error::SchneiderDomain {
            lambda1: pd.lambda1,
        });
    }
    Ok((n as f64 - 1.0) * pd.lambda1.ln())
}

/// `ln φ_{d+1}(σ)` with `d` the argmin-argmax distance: the
/// distance-refined bound `γ ≤ (σ^{d+1} - σ^{-(d+1)}) / (σ - σ^{-1})`;
/// requires `λ₁ > 2`.
pub fn cg_distance_bound(pd: &PerronData) -> Result<f64> {
    log_phi(pd.lambda1, pd.k_minus_1 + 1)
}

/// `ln φ_j(σ) - ln x_{v_j}` along a min-to-max path: the pendant-path bound
/// `γ ≤ φ_j(σ) / x_{v_j}`, with equality whenever `v_1..v_j` is a pendant
/// path. `j` is 1-based; requires `λ₁ > 2`.
pub fn lemma21_bound(pd: &PerronData, path: &[usize], j: usize) -> Result<f64> {
    if j < 1 || j > path.len() {
        return Err(Error::PathIndex { j, k: path.len() });
    }
    Ok(log_phi(pd.lambda1, j)? - pd.x[path[j - 1]].ln())
}

/// Log-domain product sandwich for `φ_j`:
/// `(λ - 1/(λ-1))^{j-2} λ <= φ_j <= (λ - 1/λ)^{j-2} λ`.
///
/// Both sides are non-strict: the whole sandwich collapses at j = 2, and
/// the upper bound is an exact equality at j = 3 as well (`φ_3 = λ² - 1 =
/// (λ - 1/λ)·λ`). Requires `λ > 2` and `j >= 2`.
pub fn lemma22_sandwich(lambda1: f64, j: usize) -> Result<(f64, f64)> {
    if lambda1 <= 2.0 {
        return Err(Error::SigmaDomain { lambda1 });
    }
    if j < 2 {
        return Err(Error::SmallJ {
            what: "the phi sandwich",
            j,
        });
    }
    let e = j as f64 - 2.0;
    let lower = e * (lambda1 - 1.0 / (lambda1 - 1.0)).ln() + lambda1.ln();
    let upper = e * (lambda1 - 1.0 / lambda1).ln() + lambda1.ln();
    Ok((lower, upper))
}

/// The window `(n - (n/ln n)(1 + 1.1/sqrt(ln n)), n - (n/ln n)(1 - 1/ln n))`
/// that must contain `k` for the extremal graph; stated only for
/// `n >= 5000`, refused below that rather than extrapolated.
pub fn k_window(n: usize) -> Result<(f64, f64)> {
    if n < 5000 {
        return Err(Error::BelowHypothesis {
            what: "the k-window",
            min_n: 5000,
            n: n as u64,
        });
    }
    let nf = n as f64;
    let ln = nf.ln();
    let lower = nf - (nf / ln) * (1.0 + 1.1 / ln.sqrt());
    let upper = nf - (nf / ln) * (1.0 - 1.0 / ln);
    Ok((lower, upper))
}

/// The reference path `v_1..v_k` used by [`lemma_checks`] and
/// [`bound_report`]. See the module docs for the selection rule.
pub fn reference_path(g: &Graph, pd: &PerronData) -> Vec<usize> {
    if let Some(pp) = g.find_pendant_path() {
        if pd.argmax.contains(&pp.attachment) && pd.argmin.contains(&pp.vertices[0]) {
            let mut path = pp.vertices;
            path.push(pp.attachment);
            return path;
        }
    }
    spectral::min_max_path(g, pd)
}

/// Every explicit ratio bound evaluated on one graph, log domain, with
/// slacks against the observed `log γ`. Bounds whose hypotheses fail
/// (`λ₁ <= 2`, `n < 5000`, ...) are `None`, never silently zero.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub log_gamma: f64,
    pub schneider: Option<f64>,
    pub cg_distance: Option<f64>,
    /// Pendant-path bound per `j = 1..=k` along the reference path;
    /// populated for small graphs (n <= 64) with `λ₁ > 2`.
    pub lemma21: Option<Vec<f64>>,
    /// The `j` at which the sandwich below is evaluated (= k).
    pub lemma22_j: Option<usize>,
    pub lemma22: Option<(f64, f64)>,
    pub k_window: Option<(f64, f64)>,
    pub slack_schneider: Option<f64>,
    pub slack_cg: Option<f64>,
}

const LEMMA21_MAX_N: usize = 64;

pub fn bound_report(g: &Graph, pd: &PerronData) -> BoundReport {
    let n = g.n();
    let log_gamma = pd.log_gamma();
    let schneider = schneider_bound(pd, n).ok();
    let cg_distance = cg_distance_bound(pd).ok();
    let lemma21 = (pd.lambda1 > 2.0 && n <= LEMMA21_MAX_N).then(|| {
        let path = reference_path(g, pd);
        (1..=path.len())
            .map(|j| lemma21_bound(pd, &path, j).expect("j in range, lambda > 2"))
            .collect()
    });
    let k = reference_path(g, pd).len();
    let lemma22 = (k >= 2).then(|| lemma22_sandwich(pd.lambda1, k).ok()).flatten();
    let slack = |b: Option<f64>| {
        b.and_then(|b| {
            let s = b - log_gamma;
            s.is_finite().then_some(s)
        })
    };
    BoundReport {
        log_gamma,
        schneider,
        cg_distance,
        lemma21,
        lemma22_j: lemma22.is_some().then_some(k),
        lemma22,
        k_window: k_window(n).ok(),
        slack_schneider: slack(schneider),
        slack_cg: slack(cg_distance),
    }
}

/// One structural/numeric check of the extremal-graph lemmas.
#[derive(Debug, Clone)]
pub struct LemmaCheckOutcome {
    pub id: &'static str,
    pub statement: &'static str,
    /// False when the check's hypotheses (n >= 5000, k >= 2) do not apply;
    /// inapplicable checks are reported, never dropped.
    pub applicable: bool,
    pub holds: bool,
    pub lhs: f64,
    pub rhs: f64,
}

/// Shared context for a batch of lemma checks.
#[derive(Debug, Clone)]
pub struct LemmaContext {
    pub n: usize,
    /// Length of the reference path `v_1..v_k`.
    pub k: usize,
    pub lambda1: f64,
    /// `‖x‖₂²` under max-entry-1 scaling (the scaling every window below
    /// is stated in — unit-norm would silently shift it).
    pub norm2_sq: f64,
    /// Entry at `v_{k-1}`, the path vertex adjacent to the argmax.
    pub x_k_minus_1: Option<f64>,
    pub deg_v_k_minus_1: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct LemmaChecks {
    pub context: LemmaContext,
    pub outcomes: Vec<LemmaCheckOutcome>,
}

/// Runs the extremal-structure checks on one graph. The window checks
/// ("3.3"–"3.6") are stated only for n >= 5000 and are reported as not
/// applicable below that; "3.6" and "3.7" further need `k >= 2`.
pub fn lemma_checks(g: &Graph, pd: &PerronData) -> LemmaChecks {
    let n = g.n();
    let nf = n as f64;
    let lambda = pd.lambda1;
    let path = reference_path(g, pd);
    let k = path.len();
    let kf = k as f64;
    let norm2_sq: f64 = pd.x.iter().map(|v| v * v).sum();
    let x_k_minus_1 = (k >= 2).then(|| pd.x[path[k - 2]]);
    let deg_v_k_minus_1 = (k >= 2).then(|| g.degree(path[k - 2]));
    let big_n = n >= 5000;

    let mut outcomes = Vec::with_capacity(8);

    // Pendant-path structure: v_1..v_{k-1} is a pendant path and v_k is
    // adjacent to every vertex off that path.
    let mut violations = 0.0;
    if k >= 2 {
        if g.degree(path[0]) != 1 {
            violations += 1.0;
        }
        for &v in &path[1..k - 1] {
            if g.degree(v) != 2 {
                violations += 1.0;
            }
        }
    }
    let vk = path[k - 1];
    let on_path: std::collections::HashSet<usize> = path.iter().copied().collect();
    for w in 0..n {
        if w != vk && !on_path.contains(&w) && !g.has_edge(vk, w) {
            violations += 1.0;
        }
    }
    outcomes.push(LemmaCheckOutcome {
        id: "3.1",
        statement: "v_1..v_{k-1} is a pendant path and v_k dominates the off-path vertices",
        applicable: true,
        holds: violations == 0.0,
        lhs: violations,
        rhs: 0.0,
    });

    outcomes.push(LemmaCheckOutcome {
        id: "remark",
        statement: "max degree <= n-k+1, hence lambda1 < n-k+1",
        applicable: true,
        holds: g.max_degree() as f64 <= nf - kf + 1.0 && lambda < nf - kf + 1.0,
        lhs: lambda,
        rhs: nf - kf + 1.0,
    });

    outcomes.push(LemmaCheckOutcome {
        id: "3.2",
        statement: "lambda1 > n-k",
        applicable: true,
        holds: lambda > nf - kf,
        lhs: lambda,
        rhs: nf - kf,
    });

    let window = k_window(n).ok();
    outcomes.push(LemmaCheckOutcome {
        id: "3.3",
        statement: "k lies in the extremal window",
        applicable: big_n,
        holds: window.map_or(false, |(lo, hi)| lo < kf && kf < hi),
        lhs: window.map_or(f64::NAN, |w| w.0),
        rhs: window.map_or(f64::NAN, |w| w.1),
    });

    outcomes.push(LemmaCheckOutcome {
        id: "3.4",
        statement: "lambda1 < ||x||_2^2 < lambda1 + 10/9 (max-entry-1 scaling)",
        applicable: big_n,
        holds: big_n && lambda < norm2_sq && norm2_sq < lambda + 10.0 / 9.0,
        lhs: norm2_sq,
        rhs: lambda,
    });

    outcomes.push(LemmaCheckOutcome {
        id: "3.5",
        statement: "lambda1 < n-k+3/5",
        applicable: big_n,
        holds: big_n && lambda < nf - kf + 0.6,
        lhs: lambda,
        rhs: nf - kf + 0.6,
    });

    outcomes.push(LemmaCheckOutcome {
        id: "3.6",
        statement: "x_{k-1} < n^{-0.24}",
        applicable: big_n && k >= 2,
        holds: big_n && x_k_minus_1.map_or(false, |x| x < nf.powf(-0.24)),
        lhs: x_k_minus_1.unwrap_or(f64::NAN),
        rhs: nf.powf(-0.24),
    });

    outcomes.push(LemmaCheckOutcome {
        id: "3.7",
        statement: "v_{k-1} has degree 2",
        applicable: k >= 2,
        holds: deg_v_k_minus_1 == Some(2),
        lhs: deg_v_k_minus_1.map_or(f64::NAN, |d| d as f64),
        rhs: 2.0,
    });

    LemmaChecks {
        context: LemmaContext {
            n,
            k,
            lambda1: lambda,
            norm2_sq,
            x_k_minus_1,
            deg_v_k_minus_1,
        },
        outcomes,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::KiteSpec;
    use crate::spectral::perron;

    fn solve(g: &Graph) -> PerronData {
        perron(g, 1e-13, 1_000_000).unwrap()
    }

    fn kite(r: usize, s: usize) -> Graph {
        Graph::kite(KiteSpec::new(r, s).unwrap())
    }

    #[test]
    fn schneider_examples() {
        let k3 = Graph::build(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let pd = solve(&k3);
        let b = schneider_bound(&pd, 3).unwrap();
        assert!((b - 2.0 * 2.0f64.ln()).abs() < 1e-12);
        assert!(b >= pd.log_gamma());

        let paw = kite(2, 3);
        let pd = solve(&paw);
        assert!((schneider_bound(&pd, 4).unwrap() - 3.0 * pd.lambda1.ln()).abs() < 1e-12);
        assert!(schneider_bound(&pd, 4).unwrap() >= pd.log_gamma());

        let p3 = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let pd = solve(&p3);
        let b = schneider_bound(&pd, 3).unwrap();
        assert!((b - 2.0f64.ln()).abs() < 1e-12); // 2 ln sqrt(2)
        assert!(b >= pd.log_gamma());

        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let pd = solve(&k2); // lambda1 = 1
        assert!(matches!(
            schneider_bound(&pd, 2),
            Err(Error::SchneiderDomain { .. })
        ));
    }

    #[test]
    fn cg_bound_examples() {
        // Regular graph with lambda1 > 2: d = 0, bound is log phi_1 = 0 = log gamma.
        let k4 = kite(1, 4);
        let pd = solve(&k4);
        assert_eq!(pd.k_minus_1, 0);
        assert!(cg_distance_bound(&pd).unwrap().abs() < 1e-12);

        // Paw: the min-max pair is a pendant edge, so the bound is exact.
        let pd = solve(&kite(2, 3));
        let b = cg_distance_bound(&pd).unwrap();
        assert!((b - pd.lambda1.ln()).abs() < 1e-11);
        assert!((b - pd.log_gamma()).abs() < 1e-10);

        // Longer pendant path: still exact within 1e-9.
        let pd = solve(&kite(4, 5));
        assert_eq!(pd.k_minus_1, 3);
        let slack = cg_distance_bound(&pd).unwrap() - pd.log_gamma();
        assert!(slack.abs() < 1e-9, "slack = {slack}");

        // lambda1 < 2: undefined.
        let pd = solve(&Graph::build(3, &[(0, 1), (1, 2)]).unwrap());
        assert!(matches!(
            cg_distance_bound(&pd),
            Err(Error::SigmaDomain { .. })
        ));
    }

    #[test]
    fn lemma21_identities() {
        let g = kite(5, 4);
        let pd = solve(&g);
        let path = reference_path(&g, &pd);
        let k = path.len();
        // j = 1: phi_1 = 1, bound is -ln x_min = log gamma exactly.
        let b1 = lemma21_bound(&pd, &path, 1).unwrap();
        assert!((b1 - pd.log_gamma()).abs() < 1e-12);
        // j = k: x_{v_k} = 1, bound is log phi_k >= log gamma.
        let bk = lemma21_bound(&pd, &path, k).unwrap();
        assert!(bk >= pd.log_gamma() - 1e-9);
        // Kite: equality for every j along the pendant path.
        for j in 1..=k {
            let b = lemma21_bound(&pd, &path, j).unwrap();
            assert!((b - pd.log_gamma()).abs() < 1e-9, "j = {j}");
        }
        assert!(matches!(
            lemma21_bound(&pd, &path, 0),
            Err(Error::PathIndex { .. })
        ));
        assert!(matches!(
            lemma21_bound(&pd, &path, k + 1),
            Err(Error::PathIndex { .. })
        ));
    }

    #[test]
    fn lemma22_equalities_at_small_j() {
        let (lo, hi) = lemma22_sandwich(2.5, 2).unwrap();
        assert!((lo - 2.5f64.ln()).abs() < 1e-15);
        assert!((hi - 2.5f64.ln()).abs() < 1e-15);

        let (lo, hi) = lemma22_sandwich(2.5, 3).unwrap();
        assert!((hi - 5.25f64.ln()).abs() < 1e-15); // phi_3 = lambda^2 - 1: upper is exact
        assert!((lo - 4.583_333_333_333_333f64.ln()).abs() < 1e-14); // (2.5 - 1/1.5) * 2.5
        assert!(lo < hi);

        assert!(matches!(
            lemma22_sandwich(2.0, 3),
            Err(Error::SigmaDomain { .. })
        ));
        assert!(matches!(lemma22_sandwich(2.5, 1), Err(Error::SmallJ { .. })));
    }

    #[test]
    fn lemma22_contains_log_phi() {
        for lambda in [2.01, 2.1, 2.5, 3.0, 5.0, 10.0, 100.0] {
            for j in 2..=50 {
                let mid = log_phi(lambda, j).unwrap();
                let (lo, hi) = lemma22_sandwich(lambda, j).unwrap();
                assert!(lo <= mid + LOG_TOL, "lambda={lambda} j={j}");
                assert!(mid <= hi + LOG_TOL, "lambda={lambda} j={j}");
            }
        }
    }

    #[test]
    fn k_window_values() {
        let (lo, hi) = k_window(5000).unwrap();
        assert!((lo - 4191.684_484_717_544).abs() < 1e-6);
        assert!((hi - 4481.877_181_240_776).abs() < 1e-6);
        assert!(lo < hi);
        assert!(matches!(
            k_window(4999),
            Err(Error::BelowHypothesis { .. })
        ));
    }

    #[test]
    fn lemma_checks_on_k5() {
        let g = kite(1, 5);
        let pd = solve(&g);
        let checks = lemma_checks(&g, &pd);
        assert_eq!(checks.context.k, 1);
        let by_id = |id: &str| {
            checks
                .outcomes
                .iter()
                .find(|o| o.id == id)
                .unwrap()
                .clone()
        };
        assert!(by_id("3.1").holds); // single-vertex path, v_k dominates
        assert!(by_id("remark").holds); // lambda = 4 < n-k+1 = 5
        for id in ["3.3", "3.4", "3.5", "3.6", "3.7"] {
            assert!(!by_id(id).applicable, "{id}");
        }
    }

    #[test]
    fn lemma_checks_on_a_kite() {
        let g = kite(4, 5);
        let pd = solve(&g);
        let checks = lemma_checks(&g, &pd);
        assert_eq!(checks.context.k, 4);
        assert_eq!(checks.context.deg_v_k_minus_1, Some(2));
        let by_id = |id: &str| checks.outcomes.iter().find(|o| o.id == id).unwrap().clone();
        assert!(by_id("3.1").holds);
        assert!(by_id("remark").holds); // max degree 5 = n-k+1, lambda < 5
        assert!(by_id("3.2").holds); // lambda ~ 4.055 > n-k = 4
        assert!(by_id("3.7").applicable && by_id("3.7").holds);
        assert!(!by_id("3.4").applicable); // n < 5000
    }

    #[test]
    fn lemma_checks_fall_back_to_bfs_paths() {
        // C5: no pendant path, every vertex ties; k = 1.
        let c5 = Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let pd = solve(&c5);
        let checks = lemma_checks(&c5, &pd);
        assert_eq!(checks.context.k, 1);
        assert!(!checks.outcomes.iter().find(|o| o.id == "3.1").unwrap().holds);
    }

    #[test]
    fn bound_report_is_consistent() {
        let g = kite(3, 4);
        let pd = solve(&g);
        let rep = bound_report(&g, &pd);
        assert!(rep.schneider.unwrap() >= rep.cg_distance.unwrap() - LOG_TOL);
        assert!(rep.cg_distance.unwrap() >= rep.log_gamma - LOG_TOL);
        assert!(rep.slack_schneider.unwrap() >= -LOG_TOL);
        assert!(rep.slack_cg.unwrap() >= -LOG_TOL);
        let lemma21 = rep.lemma21.unwrap();
        assert_eq!(lemma21.len(), 3);
        assert!(rep.k_window.is_none()); // n < 5000
        assert_eq!(rep.lemma22_j, Some(3));

        // Bipartite path: lambda1 < 2, sigma-based bounds absent.
        let p3 = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let pd = solve(&p3);
        let rep = bound_report(&p3, &pd);
        assert!(rep.cg_distance.is_none());
        assert!(rep.lemma21.is_none());
        assert!(rep.schneider.is_some());
    }
}
