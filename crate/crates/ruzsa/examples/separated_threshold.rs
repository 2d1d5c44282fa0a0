//! μ-separated sets and the injectivity threshold of the metric Ruzsa
//! injection: sample sets in the Heisenberg unit ball, sweep ε, and find
//! the largest ε at which the injection is exactly injective.
//!
//! ```bash
//! cargo run --example separated_threshold
//! ```

use std::sync::Arc;

use ruzsa::dilation::{DilationSpace, HeisenbergSpace};
use ruzsa::metric::{estimate_threshold, metric_injection, sample_separated_set, MetricError};

fn main() {
    let space: Arc<dyn DilationSpace> = Arc::new(HeisenbergSpace::new());
    let mu = 0.1;

    // Greedy rejection sampling keeps candidates at pairwise distance >= 2μ
    // inside the unit gauge ball (a 2μ-separated set is in particular
    // μ-separated, with headroom).
    let sample = |seed: u64| {
        sample_separated_set(Arc::clone(&space), 1.0, 2.0 * mu, 20, seed).unwrap()
    };
    let (a, b, c) = (sample(30), sample(31), sample(32));
    println!(
        "sampled 20-point sets in the unit gauge ball: separations {:.4} / {:.4} / {:.4}",
        a.separation(),
        b.separation(),
        c.separation()
    );

    let grid: Vec<f64> = (1..=8).map(|k| 0.5f64.powi(k)).collect();
    let report = estimate_threshold(
        space.as_ref(),
        &space.base_point(),
        a.points(),
        b.points(),
        c.points(),
        mu,
        &grid,
    )
    .unwrap();
    println!("\nthreshold sweep at mu = {mu} (tolerance = mu/4):");
    println!("  {:>12} {:>14} {:>10}", "eps", "hypothesis", "injective");
    for row in &report.rows {
        println!(
            "  {:>12.6} {:>14} {:>10}",
            row.eps,
            if row.hypothesis_ok { "ok" } else { "violated" },
            if row.hypothesis_ok {
                row.injective.to_string()
            } else {
                "-".to_string()
            }
        );
    }
    println!("  empirical threshold: {}", report.empirical_threshold);

    // Below the threshold the witness is fully materialized; the
    // reconstruction residuals measure both sides of the argument.
    let eps = report.empirical_threshold.min(0.0625);
    if eps > 0.0 {
        let witness = metric_injection(
            space.as_ref(),
            &space.base_point(),
            eps,
            a.points(),
            b.points(),
            c.points(),
            mu,
            mu / 4.0,
        )
        .unwrap();
        println!(
            "\nwitness at eps = {eps}: {} entries over a domain of {}, injective = {}",
            witness.source_size,
            witness.domain.len(),
            witness.is_injective
        );
        println!(
            "  exact-side reconstruction residual: {:.3e}",
            witness
                .max_reconstruction_residual(space.as_ref(), &space.base_point())
                .unwrap()
        );
        println!(
            "  limit-side reconstruction gap (the measured O(ε) term): {:.3e}",
            witness.max_limit_reconstruction_gap(space.as_ref(), &space.base_point())
        );
    }

    // Overstating μ trips the hypothesis check with a named pair.
    match metric_injection(
        space.as_ref(),
        &space.base_point(),
        0.25,
        a.points(),
        b.points(),
        c.points(),
        1.0,
        0.25,
    ) {
        Err(MetricError::SeparationHypothesis { role, dist, .. }) => {
            println!("\noverstating mu = 1.0 is rejected: set {role} has a pair {dist:.4} apart");
        }
        other => println!("\nunexpected outcome for overstated mu: {other:?}"),
    }
}
