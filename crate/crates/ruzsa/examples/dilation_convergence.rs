//! Approximate differences in metric spaces with dilations: the exact
//! approximate-axiom-1 identity and the convergence Δ^e_ε → Δ^e.
//!
//! ```bash
//! cargo run --example dilation_convergence
//! ```

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ruzsa::dilation::{
    convergence_table, DilationSpace, EuclideanSpace, HeisenbergSpace, Point,
};

fn table_for(space: &dyn DilationSpace, e: &Point, a: &Point, b: &Point) {
    let grid: Vec<f64> = (1..=10).map(|k| 0.5f64.powi(k)).collect();
    let table = convergence_table(space, e, a, b, &grid).unwrap();
    println!("{}: gap(ε) = |Δ^e_ε(a,b) - Δ^e(a,b)| (componentwise)", space.name());
    println!("  {:>12} {:>14}", "eps", "gap");
    for row in &table.rows {
        println!("  {:>12.6} {:>14.3e}", row.eps, row.gap);
    }
    println!("  log-log slope: {:.4}\n", table.slope);
}

fn main() {
    let euclid = EuclideanSpace::new(2).unwrap();
    table_for(
        &euclid,
        &Point::zeros(2),
        &Point::from([1.0, 0.0]),
        &Point::from([0.0, 1.0]),
    );

    let heis = HeisenbergSpace::new();
    table_for(
        &heis,
        &heis.base_point(),
        &Point::from([1.0, 0.0, 0.0]),
        &Point::from([0.0, 1.0, 0.0]),
    );

    // The approximate version of axiom 1 is an exact identity of the
    // dilation field; the residual is pure rounding.
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let e = heis.sample_in_ball(&heis.base_point(), 1.0, &mut rng);
        let a = heis.sample_in_ball(&heis.base_point(), 1.0, &mut rng);
        let b = heis.sample_in_ball(&heis.base_point(), 1.0, &mut rng);
        let c = heis.sample_in_ball(&heis.base_point(), 1.0, &mut rng);
        for eps in [0.9, 0.5, 0.1, 0.01] {
            worst = worst.max(heis.approx_axiom1_residual(&e, eps, &a, &b, &c).unwrap());
        }
    }
    println!(
        "worst approximate-axiom-1 residual on 1000 Heisenberg quadruples: {worst:.3e}"
    );

    // At the identity the Heisenberg approximate difference has the closed
    // form δ_ε(a) · a⁻¹ · b.
    let a = Point::from([0.3, -0.2, 0.05]);
    let b = Point::from([-0.1, 0.4, 0.02]);
    let eps = 0.25;
    let composed = heis
        .approx_difference(&heis.base_point(), eps, &a, &b)
        .unwrap();
    let closed = HeisenbergSpace::group_mul(
        &HeisenbergSpace::dilation_at_identity(eps, &a),
        &HeisenbergSpace::group_mul(&HeisenbergSpace::group_inverse(&a), &b),
    );
    println!(
        "closed-form check at eps = {eps}: composed = {:?}, δ_ε(a)·a⁻¹·b = {:?}",
        composed.coords(),
        closed.coords()
    );
}
