use principal_ratio::graph::Graph;
use principal_ratio::kite;
use principal_ratio::spectral::{perron, DEFAULT_MAX_ITER, DEFAULT_TOL};
use std::time::Instant;

fn main() {
    let t = Instant::now();
    let best = kite::best_kite(5000).unwrap();
    println!("best_kite(5000): r={} s={} lambda={} log_gamma={} in {:?}",
        best.spec.r(), best.spec.s(), best.lambda1, best.log_gamma, t.elapsed());

    let t = Instant::now();
    let g = Graph::kite(best.spec);
    println!("graph built ({} vertices, {} edges) in {:?}", g.n(), g.edge_count(), t.elapsed());

    let t = Instant::now();
    let pd = perron(&g, DEFAULT_TOL, DEFAULT_MAX_ITER).unwrap();
    println!("perron: lambda={} iters={} residual={:.3e} in {:?}", pd.lambda1, pd.iterations, pd.residual, t.elapsed());
    println!("  |analytic - numeric| lambda = {:.3e}", (pd.lambda1 - best.lambda1).abs());
    let norm2: f64 = pd.x.iter().map(|v| v * v).sum();
    let r = best.spec.r();
    println!("  norm2_sq = {} vs lambda window ({}, {})", norm2, pd.lambda1, pd.lambda1 + 10.0/9.0);
    println!("  x_(k-1) = {:.6e} vs n^-0.24 = {:.6e}", pd.x[r - 2], 5000f64.powf(-0.24));
    println!("  deg v_(k-1) = {}", g.degree(r - 2));
    println!("  argmax = {:?} k_minus_1 = {}", &pd.argmax, pd.k_minus_1);
    println!("  gamma = {} (underflow expected)", pd.gamma);
    let checks = principal_ratio::bounds::lemma_checks(&g, &pd);
    println!("  lemma context k = {}", checks.context.k);
    for o in &checks.outcomes {
        println!("  {} applicable={} holds={} lhs={:.6} rhs={:.6}", o.id, o.applicable, o.holds, o.lhs, o.rhs);
    }
}
