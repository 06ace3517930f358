//! Dual-precision numeric certificates for the analytic inequalities
//! behind the extremal k-window.
//!
//! Every margin is a single expression tree evaluated twice: once in
//! ordinary f64, once in double-double (~106-bit) arithmetic. A verdict is
//! issued only when the two evaluations agree in sign and the margin
//! exceeds their discrepancy by at least a factor of 10; anything else is
//! reported as indeterminate, never guessed. All powers `(n-x)^x` live in
//! log domain as `x·ln(n-x)` — nothing here ever exponentiates.
//!
//! Names follow the working convention for this inequality family:
//! `lemma23` is the sign pair for `g(x) = ln(n-x) - n/(n-x) + 1` at the two
//! window edges, and `appendixA`/`appendixB`/`appendixC` are the supporting
//! chains (loglog margins, the `h`/`p`/`q` auxiliary functions, and the two
//! end-to-end `f`-comparisons).

use twofloat::TwoFloat;

use crate::{Error, Result};

/// Shared surface of the two evaluation precisions.
pub(crate) trait Real:
    Copy
    + PartialOrd
    + std::ops::Add<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Mul<Output = Self>
    + std::ops::Div<Output = Self>
    + std::ops::Neg<Output = Self>
{
    fn of(v: f64) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn to_f64(self) -> f64;
}

impl Real for f64 {
    fn of(v: f64) -> Self {
        v
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn to_f64(self) -> f64 {
        self
    }
}

impl Real for TwoFloat {
    fn of(v: f64) -> Self {
        TwoFloat::from(v)
    }
    fn ln(self) -> Self {
        TwoFloat::ln(self)
    }
    fn sqrt(self) -> Self {
        TwoFloat::sqrt(self)
    }
    fn to_f64(self) -> f64 {
        f64::from(self)
    }
}

fn rmin<R: Real>(a: R, b: R) -> R {
    if b < a {
        b
    } else {
        a
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Indeterminate,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Fails => "fails",
            Verdict::Indeterminate => "indeterminate",
        })
    }
}

/// A machine-checked verdict for one inequality at one point. The margin
/// is positive exactly when the inequality holds; `margin_lo` is the f64
/// evaluation and `margin_hi` the double-double one.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub target: String,
    pub n: u64,
    pub verdict: Verdict,
    pub margin_lo: f64,
    pub margin_hi: f64,
}

impl Certificate {
    fn from_margins(target: &str, n: u64, lo: f64, hi: f64) -> Self {
        let determinate = lo.is_finite()
            && hi.is_finite()
            && lo != 0.0
            && hi != 0.0
            && (lo > 0.0) == (hi > 0.0)
            && (lo - hi).abs() * 10.0 <= hi.abs();
        let verdict = if !determinate {
            Verdict::Indeterminate
        } else if hi > 0.0 {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
        Certificate {
            target: target.to_owned(),
            n,
            verdict,
            margin_lo: lo,
            margin_hi: hi,
        }
    }
}

/// Counts per verdict over a batch of certificates.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub indeterminate: usize,
}

pub fn summarize<'a>(certs: impl IntoIterator<Item = &'a Certificate>) -> Summary {
    let mut s = Summary::default();
    for c in certs {
        match c.verdict {
            Verdict::Holds => s.holds += 1,
            Verdict::Fails => s.fails += 1,
            Verdict::Indeterminate => s.indeterminate += 1,
        }
    }
    s
}

// ---------------------------------------------------------------------
// Auxiliary functions, generic over the precision.
// ---------------------------------------------------------------------

/// `ln f_n(x)` for `f_n(x) = (n-x)^x`.
fn log_f<R: Real>(n: R, x: R) -> R {
    x * (n - x).ln()
}

/// `g(x) = ln(n-x) - n/(n-x) + 1`, the logarithmic derivative of `f_n`.
fn g_fn<R: Real>(n: R, x: R) -> R {
    (n - x).ln() - n / (n - x) + R::of(1.0)
}

/// `h(x) = (lnln x / sqrt(ln x)) (1 + 1/sqrt(ln x))`.
fn h_fn<R: Real>(x: R) -> R {
    let sl = x.ln().sqrt();
    (x.ln().ln() / sl) * (R::of(1.0) + R::of(1.0) / sl)
}

/// The five-term auxiliary `p` controlling the lower window edge.
fn p_fn<R: Real>(x: R) -> R {
    let one = R::of(1.0);
    let l = x.ln();
    let sl = l.sqrt();
    R::of(0.014) * x / sl + (x / l).ln() + x / l + R::of(1.1) * x / (l * sl)
        - R::of(40.0) * sl * (l - one)
        + R::of(44.0)
}

/// The auxiliary `q` controlling the upper window edge.
fn q_fn<R: Real>(x: R) -> R {
    let one = R::of(1.0);
    let l = x.ln();
    let ll = l.ln();
    (ll + ll / l - one / (l * l) - R::of(2.0)) * x
        + (R::of(100.0) * l - R::of(199.0)) / R::of(99.0) * l
        - R::of(100.0) * l * l * l / R::of(99.0)
}

/// The three bracketed groups of `p'(x)`, each claimed positive.
fn p_prime_brackets<R: Real>(x: R) -> [R; 3] {
    let one = R::of(1.0);
    let l = x.ln();
    let sl = l.sqrt();
    [
        R::of(0.014) / sl - R::of(0.007) / (l * sl),
        one / l - one / (l * l) - R::of(1.65) / (l * l * sl) - R::of(60.0) * sl / x,
        R::of(1.1) / (l * sl) - one / (x * l),
    ]
}

// ---------------------------------------------------------------------
// Margin sets. Each returns (id, margin) pairs; margin > 0 <=> holds.
// ---------------------------------------------------------------------

fn margins_lemma23<R: Real>(n: u64) -> Vec<(&'static str, R)> {
    let n = R::of(n as f64);
    let one = R::of(1.0);
    let l = n.ln();
    let x1 = n - (n / l) * (one + one / l.sqrt());
    let x2 = n - (n / l) * (one + one / l);
    // Three interior points confirming that g decreases across the window.
    let q = |i: f64| x1 + R::of(i) * (x2 - x1) / R::of(4.0);
    let spot = rmin(
        g_fn(n, q(1.0)) - g_fn(n, q(2.0)),
        g_fn(n, q(2.0)) - g_fn(n, q(3.0)),
    );
    vec![
        ("lemma23.g_positive_at_sqrt_point", g_fn(n, x1)),
        ("lemma23.g_negative_at_log_point", -g_fn(n, x2)),
        ("lemma23.g_decreasing_spot_check", spot),
    ]
}

fn margins_appendix_a<R: Real>(n: u64) -> Vec<(&'static str, R)> {
    let n = R::of(n as f64);
    let one = R::of(1.0);
    let l = n.ln();
    vec![
        (
            "appendixA.sqrt_log_margin",
            l.sqrt() / R::of(2.0) - l.ln() + one,
        ),
        ("appendixA.loglog_above_2.125", l.ln() - R::of(2.125)),
    ]
}

fn margins_appendix_b<R: Real>(n: u64) -> Vec<(&'static str, R)> {
    let nf = R::of(n as f64);
    let one = R::of(1.0);
    let l = nf.ln();
    let sl = l.sqrt();
    // p' samples at n, 10n, 100n.
    let mut brackets = R::of(f64::INFINITY);
    for scale in [1.0, 10.0, 100.0] {
        for b in p_prime_brackets(nf * R::of(scale)) {
            brackets = rmin(brackets, b);
        }
    }
    // End-to-end window comparison: f_{n-2} at the inner point must beat
    // f_n at the outer point.
    let u = (nf / l) * (one + R::of(1.1) / sl);
    let v = (nf / l) * (one + one / sl);
    let lhs = log_f(nf, nf - one - u);
    let rhs = log_f(nf - R::of(2.0), nf - R::of(3.0) - v);
    vec![
        ("appendixB.h_below_0.986", R::of(0.986) - h_fn(nf)),
        ("appendixB.p_positive", p_fn(nf)),
        ("appendixB.p_prime_brackets_positive", brackets),
        ("appendixB.f_comparison", rhs - lhs),
    ]
}

fn margins_appendix_c<R: Real>(n: u64) -> Vec<(&'static str, R)> {
    let nf = R::of(n as f64);
    let one = R::of(1.0);
    let l = nf.ln();
    let ll = l.ln();
    let small_terms =
        ll / (l * l) + R::of(199.0) / (R::of(99.0) * nf) + R::of(100.0) * l * l / (R::of(33.0) * nf);
    let w = (nf / l) * (one - one / l);
    let v = (nf / l) * (one + one / l);
    let lhs = log_f(nf, nf - one - w);
    let rhs = log_f(nf - R::of(2.0), nf - v);
    let b_log_b = (one - l * l / (R::of(0.99) * nf)) * (nf - w - one)
        - v * (l + one / l - ll);
    vec![
        ("appendixC.small_terms_below_0.1", R::of(0.1) - small_terms),
        ("appendixC.q_positive", q_fn(nf)),
        ("appendixC.loglog_above_2.1", ll - R::of(2.1)),
        ("appendixC.f_comparison", rhs - lhs),
        ("appendixC.b_log_b_envelope", b_log_b),
    ]
}

fn dual(
    n: u64,
    lo: Vec<(&'static str, f64)>,
    hi: Vec<(&'static str, TwoFloat)>,
) -> Vec<Certificate> {
    debug_assert_eq!(lo.len(), hi.len());
    lo.into_iter()
        .zip(hi)
        .map(|((id, ml), (_, mh))| Certificate::from_margins(id, n, ml, mh.to_f64()))
        .collect()
}

fn require(what: &'static str, min_n: u64, n: u64) -> Result<()> {
    if n < min_n {
        Err(Error::BelowHypothesis { what, min_n, n })
    } else {
        Ok(())
    }
}

/// Sign certificates for `g` at the two window edges (plus an interior
/// monotonicity spot-check that downgrades both to indeterminate if it
/// ever failed to certify). Stated for `n >= 16`; the second sign is
/// honestly reported as failing until n is a few thousand.
pub fn check_lemma23(n: u64) -> Result<Vec<Certificate>> {
    require("the g sign certificates", 16, n)?;
    let mut certs = dual(n, margins_lemma23::<f64>(n), margins_lemma23::<TwoFloat>(n));
    let spot = certs.pop().expect("three margins");
    if spot.verdict != Verdict::Holds {
        for c in &mut certs {
            c.verdict = Verdict::Indeterminate;
        }
    }
    Ok(certs)
}

/// The two closing inequalities of the lower-edge chain.
pub fn check_appendix_a(n: u64) -> Result<Vec<Certificate>> {
    require("the appendixA chain", 5000, n)?;
    Ok(dual(
        n,
        margins_appendix_a::<f64>(n),
        margins_appendix_a::<TwoFloat>(n),
    ))
}

/// The lower-edge chain: `h < 0.986`, `p > 0`, the `p'` bracket groups,
/// and the end-to-end `f`-comparison.
pub fn check_appendix_b(n: u64) -> Result<Vec<Certificate>> {
    require("the appendixB chain", 5000, n)?;
    Ok(dual(
        n,
        margins_appendix_b::<f64>(n),
        margins_appendix_b::<TwoFloat>(n),
    ))
}

/// The upper-edge chain: the 0.1 small-terms bound, `q > 0`,
/// `lnln n > 2.1`, the end-to-end `f`-comparison, and the `B·ln B`
/// envelope.
pub fn check_appendix_c(n: u64) -> Result<Vec<Certificate>> {
    require("the appendixC chain", 5000, n)?;
    Ok(dual(
        n,
        margins_appendix_c::<f64>(n),
        margins_appendix_c::<TwoFloat>(n),
    ))
}

/// Log-domain comparison `(n-k+1)^{k-1} > (n-j-1)^{j-1}`, the pivot that
/// squeezes `k` into its window.
pub fn check_inequality5(n: u64, k: u64, j: u64) -> Result<Certificate> {
    for (name, value) in [("k", k), ("j", j)] {
        if value < 2 || value > n - 2 {
            return Err(Error::OutOfRange {
                name,
                value,
                range: "2..=n-2",
            });
        }
    }
    fn margin<R: Real>(n: u64, k: u64, j: u64) -> R {
        let (n, k, j) = (R::of(n as f64), R::of(k as f64), R::of(j as f64));
        let one = R::of(1.0);
        (k - one) * (n - k + one).ln() - (j - one) * (n - j - one).ln()
    }
    Ok(Certificate::from_margins(
        &format!("inequality5[k={k},j={j}]"),
        n,
        margin::<f64>(n, k, j),
        margin::<TwoFloat>(n, k, j).to_f64(),
    ))
}

/// Inequality families the sweep can iterate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepTarget {
    Lemma23,
    AppendixA,
    AppendixB,
    AppendixC,
}

impl SweepTarget {
    pub fn name(self) -> &'static str {
        match self {
            SweepTarget::Lemma23 => "lemma23",
            SweepTarget::AppendixA => "appendixA",
            SweepTarget::AppendixB => "appendixB",
            SweepTarget::AppendixC => "appendixC",
        }
    }

    fn run(self, n: u64) -> Result<Vec<Certificate>> {
        match self {
            SweepTarget::Lemma23 => check_lemma23(n),
            SweepTarget::AppendixA => check_appendix_a(n),
            SweepTarget::AppendixB => check_appendix_b(n),
            SweepTarget::AppendixC => check_appendix_c(n),
        }
    }
}

/// Runs one target over a batch of `n` values (parallel when the feature
/// is on, output ordered by input either way). Every `n` must satisfy the
/// target's hypothesis; indeterminate verdicts pass through untouched.
pub fn sweep(target: SweepTarget, ns: &[u64]) -> Result<Vec<Certificate>> {
    if ns.is_empty() {
        return Err(Error::EmptyInput("sweep needs at least one n"));
    }
    #[cfg(feature = "parallel")]
    let batches = sweep_par(target, ns)?;
    #[cfg(not(feature = "parallel"))]
    let batches = sweep_seq(target, ns)?;
    Ok(batches.into_iter().flatten().collect())
}

#[doc(hidden)]
pub fn sweep_seq(target: SweepTarget, ns: &[u64]) -> Result<Vec<Vec<Certificate>>> {
    ns.iter().map(|&n| target.run(n)).collect()
}

#[cfg(feature = "parallel")]
#[doc(hidden)]
pub fn sweep_par(target: SweepTarget, ns: &[u64]) -> Result<Vec<Vec<Certificate>>> {
    use rayon::prelude::*;
    ns.par_iter().map(|&n| target.run(n)).collect()
}

/// `count` log-spaced integers from `lo` to `hi` inclusive, deduplicated
/// and ascending.
pub fn log_spaced(lo: u64, hi: u64, count: usize) -> Vec<u64> {
    assert!(lo >= 1 && hi >= lo && count >= 2);
    let (llo, lhi) = ((lo as f64).ln(), (hi as f64).ln());
    let mut out: Vec<u64> = (0..count)
        .map(|i| {
            let t = i as f64 / (count - 1) as f64;
            (llo + t * (lhi - llo)).exp().round() as u64
        })
        .collect();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn by_id<'a>(certs: &'a [Certificate], id: &str) -> &'a Certificate {
        certs.iter().find(|c| c.target == id).unwrap()
    }

    #[test]
    fn lemma23_holds_at_the_anchor_point() {
        let certs = check_lemma23(5000).unwrap();
        assert_eq!(certs.len(), 2);
        let a = by_id(&certs, "lemma23.g_positive_at_sqrt_point");
        assert_eq!(a.verdict, Verdict::Holds);
        assert!((a.margin_hi - 1.326_186_790_557_108_5).abs() < 1e-9);
        let b = by_id(&certs, "lemma23.g_negative_at_log_point");
        assert_eq!(b.verdict, Verdict::Holds);
        assert!((b.margin_hi - 0.136_146_721_153_841_6).abs() < 1e-9);
    }

    #[test]
    fn lemma23_is_honest_below_the_true_threshold() {
        // The first sign holds from n = 16 on; the second genuinely fails
        // until n is around 1714 — direct evaluation, not a numeric artifact,
        // and both precisions agree.
        for n in [16, 100, 1000] {
            let certs = check_lemma23(n).unwrap();
            assert_eq!(
                by_id(&certs, "lemma23.g_positive_at_sqrt_point").verdict,
                Verdict::Holds,
                "n = {n}"
            );
            assert_eq!(
                by_id(&certs, "lemma23.g_negative_at_log_point").verdict,
                Verdict::Fails,
                "n = {n}"
            );
        }
        let certs = check_lemma23(1800).unwrap();
        assert_eq!(
            by_id(&certs, "lemma23.g_negative_at_log_point").verdict,
            Verdict::Holds
        );
        assert!(matches!(
            check_lemma23(15),
            Err(Error::BelowHypothesis { .. })
        ));
    }

    #[test]
    fn appendix_a_margins() {
        let certs = check_appendix_a(5000).unwrap();
        let a = by_id(&certs, "appendixA.sqrt_log_margin");
        assert_eq!(a.verdict, Verdict::Holds);
        assert!((a.margin_hi - 0.317_124_683_998_689).abs() < 1e-9);
        let b = by_id(&certs, "appendixA.loglog_above_2.125");
        assert_eq!(b.verdict, Verdict::Holds);
        assert!((b.margin_hi - 0.017_086_848_937_526_3).abs() < 1e-9);
        assert!(check_appendix_a(4999).is_err());
    }

    #[test]
    fn sqrt_log_margin_minimizer() {
        // x/2 - 2 ln x + 1 attains its minimum 3 - ln 16 > 0 at x = 4.
        let f = |x: f64| x / 2.0 - 2.0 * x.ln() + 1.0;
        let min = f(4.0);
        assert!((min - (3.0 - 16f64.ln())).abs() < 1e-12);
        assert!(min > 0.0);
        for x in [3.5, 3.9, 4.1, 5.0] {
            assert!(f(x) > min);
        }
    }

    #[test]
    fn appendix_b_margins() {
        let certs = check_appendix_b(5000).unwrap();
        assert_eq!(certs.len(), 4);
        for c in &certs {
            assert_eq!(c.verdict, Verdict::Holds, "{}", c.target);
        }
        assert!(
            (by_id(&certs, "appendixB.h_below_0.986").margin_hi - 5.107_279_663_443_906e-4).abs()
                < 1e-12
        );
        assert!(
            (by_id(&certs, "appendixB.p_positive").margin_hi - 5.142_177_648_745_047).abs() < 1e-9
        );
        assert!(
            (by_id(&certs, "appendixB.f_comparison").margin_hi - 15.372_949_288_634_132).abs()
                < 1e-6
        );
        assert!(check_appendix_b(4000).is_err());
    }

    #[test]
    fn appendix_c_margins() {
        let certs = check_appendix_c(5000).unwrap();
        assert_eq!(certs.len(), 5);
        for c in &certs {
            assert_eq!(c.verdict, Verdict::Holds, "{}", c.target);
        }
        assert!(
            (by_id(&certs, "appendixC.q_positive").margin_hi - 1331.071_444_786_324_7).abs() < 1e-6
        );
        assert!(
            (by_id(&certs, "appendixC.f_comparison").margin_hi - 147.540_316_099_501_09).abs()
                < 1e-6
        );
        assert!(
            (by_id(&certs, "appendixC.b_log_b_envelope").margin_hi - 156.295_182_568_092_68).abs()
                < 1e-6
        );
    }

    #[test]
    fn dual_precision_agreement_invariant() {
        for certs in [
            check_lemma23(5000).unwrap(),
            check_appendix_a(5000).unwrap(),
            check_appendix_b(5000).unwrap(),
            check_appendix_c(5000).unwrap(),
        ] {
            for c in certs {
                assert_ne!(c.verdict, Verdict::Indeterminate, "{}", c.target);
                assert!(
                    (c.margin_lo - c.margin_hi).abs() * 10.0 <= c.margin_hi.abs(),
                    "{}",
                    c.target
                );
            }
        }
    }

    #[test]
    fn inequality5_cases() {
        // Same exponent, larger base: trivially holds.
        let c = check_inequality5(5000, 100, 100).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);

        // k from the best-kite sweep against the lower-edge j: holds.
        let c = check_inequality5(5000, 4334, 4210).unwrap();
        assert_eq!(c.verdict, Verdict::Holds);
        assert!((c.margin_hi - 99.333_824_512_115_83).abs() < 1e-6);

        // k above the window against the upper-edge j: the contradiction
        // mechanism shows up as a clean failure.
        let c = check_inequality5(5000, 4600, 4345).unwrap();
        assert_eq!(c.verdict, Verdict::Fails);
        assert!((c.margin_hi + 596.389_730_547_158_3).abs() < 1e-6);

        assert!(check_inequality5(5000, 1, 100).is_err());
        assert!(check_inequality5(5000, 100, 4999).is_err());
    }

    #[test]
    fn sweep_behaviour() {
        let certs = sweep(SweepTarget::Lemma23, &[5000, 1_000_000]).unwrap();
        assert_eq!(certs.len(), 4);
        assert_eq!(summarize(&certs).holds, 4);

        // Honest failures pass through the sweep untouched.
        let certs = sweep(SweepTarget::Lemma23, &[16, 100]).unwrap();
        let s = summarize(&certs);
        assert_eq!(s.fails, 2);
        assert_eq!(s.holds, 2);

        assert!(matches!(
            sweep(SweepTarget::AppendixB, &[]),
            Err(Error::EmptyInput(_))
        ));
        assert!(sweep(SweepTarget::AppendixB, &[4000]).is_err());
    }

    #[test]
    fn log_spaced_grid() {
        let grid = log_spaced(5000, 100_000_000, 100);
        assert_eq!(grid.first(), Some(&5000));
        assert_eq!(grid.last(), Some(&100_000_000));
        assert!(grid.windows(2).all(|w| w[0] < w[1]));
    }

    // Finite-difference monotonicity spot checks of the auxiliary
    // functions, sampled where the claims are true.

    #[test]
    fn f_monotone_in_the_increasing_region() {
        for n in [16u64, 100, 5000] {
            let nf = n as f64;
            let l = nf.ln();
            let x1 = nf - (nf / l) * (1.0 + 1.0 / l.sqrt());
            for i in 1..=8 {
                let x = 1.0 + (x1 - 1.0) * i as f64 / 9.0;
                let delta = (x1 - 1.0) / 1000.0;
                assert!(
                    log_f(nf, x + delta) > log_f(nf, x),
                    "n = {n}, x = {x}"
                );
            }
        }
    }

    #[test]
    fn f_monotone_in_the_decreasing_region() {
        // Only sampled at the anchor point: below n ~ 1714 the claimed
        // decreasing region genuinely contains an increasing stretch.
        let nf = 5000.0f64;
        let l = nf.ln();
        let x2 = nf - (nf / l) * (1.0 + 1.0 / l);
        for i in 0..=8 {
            let x = x2 + (nf - 1.0 - x2) * i as f64 / 9.0;
            let delta = (nf - x2) / 10_000.0;
            assert!(log_f(nf, x + delta) < log_f(nf, x), "x = {x}");
        }
    }

    #[test]
    fn h_decreases_beyond_e_to_e_squared() {
        let threshold = std::f64::consts::E.powi(2).exp(); // e^{e^2} ~ 1619
        for x in [threshold * 1.05, 5000.0, 1e6, 1e8] {
            assert!(h_fn(x * 1.01) < h_fn(x), "x = {x}");
        }
    }

    #[test]
    fn p_and_q_increase_from_the_anchor() {
        for x in [5000.0, 5e4, 5e5, 5e6, 1e8] {
            assert!(p_fn(x * 1.01) > p_fn(x), "p at {x}");
            assert!(q_fn(x * 1.01) > q_fn(x), "q at {x}");
        }
    }
}
