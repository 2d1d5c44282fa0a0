//! Property tests for the library's structural invariants: section soundness, the
//! injectivity theorem, value containment, dilation algebra, metric-space
//! laws, and the exact-limit consistency of the metric injection.

use std::sync::Arc;

use proptest::prelude::*;

use ruzsa::delta::{CheckMode, Element, FiniteSet};
use ruzsa::dilation::{coord_residual, log_log_slope, DilationSpace, EuclideanSpace, HeisenbergSpace, Point};
use ruzsa::groups::{cyclic, dihedral, group_delta, relabeled_delta, seeded_permutation, symmetric};
use ruzsa::metric::{metric_injection, sample_separated_set, separation};

fn subset(order: u32) -> impl Strategy<Value = FiniteSet> {
    prop::collection::vec(0..order, 1..=8)
        .prop_map(|v| FiniteSet::new(v.into_iter().map(Element)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ruzsa_inequality_and_injectivity_on_groups(
        a in subset(12), b in subset(12), c in subset(12), which in 0usize..3,
    ) {
        let group = match which {
            0 => cyclic(12).unwrap(),
            1 => dihedral(6).unwrap(),
            _ => symmetric(3).unwrap(),
        };
        // subsets were drawn from 0..12; clip to the carrier
        let clip = |s: &FiniteSet| FiniteSet::new(
            s.iter().filter(|e| (e.0 as usize) < group.order())
        );
        let (a, b, c) = (clip(&a), clip(&b), clip(&c));
        prop_assume!(!a.is_empty() && !b.is_empty() && !c.is_empty());
        let structure = group_delta(&group);
        let check = structure.ruzsa_inequality(&a, &b, &c).unwrap();
        // the cardinality corollary: lhs = source size <= rhs
        prop_assert!(check.witness.is_injective);
        prop_assert!(check.holds);
        prop_assert_eq!(check.lhs, check.witness.source_size);
        prop_assert!(check.witness.source_size <= check.rhs);
    }

    #[test]
    fn section_soundness_and_value_containment(
        a in subset(10), b in subset(10), c in subset(10),
    ) {
        let group = cyclic(10).unwrap();
        let structure = group_delta(&group);
        let section = structure.build_section(&c, &a).unwrap();
        for x in section.domain().iter() {
            let (f, g) = section.pair(x).unwrap();
            prop_assert!(c.contains(f) && a.contains(g));
            prop_assert_eq!(structure.delta(f, g), x);
        }
        let witness = structure.build_injection(&a, &b, &c).unwrap();
        let bc = structure.delta_set(&b, &c).unwrap();
        let ba = structure.delta_set(&b, &a).unwrap();
        for entry in &witness.entries {
            prop_assert!(bc.contains(entry.c) && ba.contains(entry.d));
            // the proof's reconstruction step
            prop_assert_eq!(structure.delta(entry.c, entry.d), entry.x);
        }
    }

    #[test]
    fn delta_set_cardinality_bound(a in subset(12), b in subset(12)) {
        let structure = group_delta(&cyclic(12).unwrap());
        let image = structure.delta_set(&a, &b).unwrap();
        prop_assert!(!image.is_empty());
        prop_assert!(image.len() <= a.len() * b.len());
    }

    #[test]
    fn relabeled_fixtures_pass_weak_axioms_and_inject(
        seed in any::<u64>(), a in subset(6), b in subset(6), c in subset(6),
    ) {
        let group = cyclic(6).unwrap();
        let sigma = seeded_permutation(group.order(), seed);
        let structure = relabeled_delta(&group, &sigma).unwrap();
        let weak = structure.check_weak_axioms(CheckMode::Exhaustive).unwrap();
        prop_assert!(weak.ok1 && weak.ok2);
        // the injection theorem applies under the weak hypotheses too
        let witness = structure.build_injection(&a, &b, &c).unwrap();
        prop_assert!(witness.is_injective);
    }

    #[test]
    fn dilation_laws_from_arbitrary_coordinates(
        xs in prop::collection::vec(-1.0f64..1.0, 3),
        ys in prop::collection::vec(-1.0f64..1.0, 3),
        eps in 0.05f64..1.0,
        eta in 0.05f64..1.0,
    ) {
        let spaces: Vec<Box<dyn DilationSpace>> = vec![
            Box::new(EuclideanSpace::new(3).unwrap()),
            Box::new(HeisenbergSpace::new()),
        ];
        let x = Point::new(xs).unwrap();
        let y = Point::new(ys).unwrap();
        for space in &spaces {
            let semigroup = coord_residual(
                &space.dilate(&x, eps, &space.dilate(&x, eta, &y)),
                &space.dilate(&x, eps * eta, &y),
            );
            prop_assert!(semigroup <= 1e-12);
            let inverse = coord_residual(
                &space.dilate(&x, 1.0 / eps, &space.dilate(&x, eps, &y)),
                &y,
            );
            prop_assert!(inverse <= 1e-12);
            prop_assert!(coord_residual(&space.dilate(&x, 1.0, &y), &y) <= 1e-12);
            prop_assert!(coord_residual(&space.dilate(&x, eps, &x), &x) <= 1e-12);
        }
    }

    #[test]
    fn gauge_metric_laws_from_arbitrary_coordinates(
        ps in prop::collection::vec(-2.0f64..2.0, 9),
    ) {
        let heis = HeisenbergSpace::new();
        let p = Point::new(ps[0..3].to_vec()).unwrap();
        let q = Point::new(ps[3..6].to_vec()).unwrap();
        let r = Point::new(ps[6..9].to_vec()).unwrap();
        prop_assert!((heis.distance(&p, &q) - heis.distance(&q, &p)).abs() <= 1e-12);
        prop_assert!(heis.distance(&p, &p) <= 1e-12);
        prop_assert!(
            heis.distance(&p, &r) <= heis.distance(&p, &q) + heis.distance(&q, &r) + 1e-12
        );
    }

    #[test]
    fn sampler_output_is_always_separated(
        seed in any::<u64>(), mu in 0.01f64..0.3, count in 1usize..12,
    ) {
        let space: Arc<dyn DilationSpace> = Arc::new(HeisenbergSpace::new());
        if let Ok(set) = sample_separated_set(Arc::clone(&space), 1.0, mu, count, seed) {
            prop_assert_eq!(set.len(), count);
            prop_assert!(set.separation() >= mu);
            prop_assert!(separation(space.as_ref(), set.points()) >= mu);
        }
    }
}

/// Entries of the metric injection converge, componentwise at rate ~ε, to
/// the exact injection built from the limit difference, and the limit-side
/// reconstruction gap shrinks at the same rate.
#[test]
fn metric_injection_entries_converge_to_exact_injection() {
    let spaces: Vec<Arc<dyn DilationSpace>> = vec![
        Arc::new(EuclideanSpace::new(2).unwrap()),
        Arc::new(HeisenbergSpace::new()),
    ];
    for space in spaces {
        let mu = 0.2;
        let sample = |offset: u64| {
            sample_separated_set(Arc::clone(&space), 1.0, 2.0 * mu, 4, 500 + offset).unwrap()
        };
        let (a, b, c) = (sample(0), sample(1), sample(2));
        let e = space.base_point();
        let grid: Vec<f64> = (3..=9).map(|k| 0.5f64.powi(k)).collect();
        let mut entry_gaps = Vec::new();
        let mut limit_gaps = Vec::new();
        for &eps in &grid {
            let witness = metric_injection(
                space.as_ref(),
                &e,
                eps,
                a.points(),
                b.points(),
                c.points(),
                mu,
                mu / 4.0,
            )
            .unwrap_or_else(|err| panic!("{}: eps={eps}: {err}", space.name()));
            assert!(witness.is_injective);
            // compare each entry against the limit-difference counterpart of
            // the same section pair and b
            let b_len = b.points().len();
            let mut gap = 0.0f64;
            for (idx, entry) in witness.entries.iter().enumerate() {
                let (fx, gx) = &witness.section[idx / b_len];
                let c_exact = space.limit_difference(&e, &entry.b, fx);
                let d_exact = space.limit_difference(&e, &entry.b, gx);
                gap = gap.max(coord_residual(&entry.c, &c_exact));
                gap = gap.max(coord_residual(&entry.d, &d_exact));
            }
            entry_gaps.push((eps, gap));
            limit_gaps.push((eps, witness.max_limit_reconstruction_gap(space.as_ref(), &e)));
        }
        for (pairs, label) in [(&entry_gaps, "entry"), (&limit_gaps, "limit-reconstruction")] {
            let usable: Vec<(f64, f64)> =
                pairs.iter().copied().filter(|&(_, g)| g > 1e-14).collect();
            assert!(usable.len() >= 3, "{}: too few usable {label} gaps", space.name());
            let slope = log_log_slope(&usable);
            assert!(
                slope >= 0.8,
                "{}: {label} gap slope {slope} below 0.8: {pairs:?}",
                space.name()
            );
        }
    }
}

/// For each space and each μ there is a seeded μ-separated family with a
/// positive injectivity threshold on the grid. Non-monotone injectivity
/// along the grid is reported as a finding, not a failure.
#[test]
fn metric_threshold_exists_for_each_mu() {
    let spaces: Vec<Arc<dyn DilationSpace>> = vec![
        Arc::new(EuclideanSpace::new(4).unwrap()),
        Arc::new(HeisenbergSpace::new()),
    ];
    let grid: Vec<f64> = (1..=8).map(|k| 0.5f64.powi(k)).collect();
    for space in spaces {
        for mu in [0.05, 0.1, 0.2] {
            let seed = 1u64;
            let sample = |offset: u64| {
                sample_separated_set(Arc::clone(&space), 1.0, mu, 8, seed.wrapping_add(offset))
                    .unwrap()
            };
            let (a, b, c) = (sample(0), sample(1), sample(2));
            let report = ruzsa::metric::estimate_threshold(
                space.as_ref(),
                &space.base_point(),
                a.points(),
                b.points(),
                c.points(),
                mu,
                &grid,
            )
            .unwrap();
            assert!(
                report.empirical_threshold > 0.0,
                "{} mu={mu}: no injective grid point: {:?}",
                space.name(),
                report.rows
            );
            // record (don't assert) monotonicity below the first success
            let below_failures: Vec<f64> = report
                .rows
                .iter()
                .filter(|r| r.hypothesis_ok && !r.injective && r.eps < report.empirical_threshold)
                .map(|r| r.eps)
                .collect();
            if !below_failures.is_empty() {
                println!(
                    "finding: {} mu={mu}: injectivity not monotone below threshold {} (failures at {:?})",
                    space.name(),
                    report.empirical_threshold,
                    below_failures
                );
            }
        }
    }
}

/// The exact-side reconstruction residual stays at tolerance scale for
/// every witness the suite produces.
#[test]
fn reconstruction_residual_is_tolerance_bounded() {
    let space: Arc<dyn DilationSpace> = Arc::new(HeisenbergSpace::new());
    let mu = 0.1;
    let sample =
        |offset: u64| sample_separated_set(Arc::clone(&space), 1.0, 0.2, 10, 900 + offset).unwrap();
    let (a, b, c) = (sample(0), sample(1), sample(2));
    let e = space.base_point();
    for eps in [0.25, 0.0625, 0.015625] {
        match metric_injection(
            space.as_ref(),
            &e,
            eps,
            a.points(),
            b.points(),
            c.points(),
            mu,
            mu / 4.0,
        ) {
            Ok(witness) => {
                let residual = witness.max_reconstruction_residual(space.as_ref(), &e).unwrap();
                assert!(
                    residual <= 2.0 * witness.tolerance + 1e-9,
                    "eps={eps}: residual {residual}"
                );
            }
            Err(ruzsa::metric::MetricError::SeparationHypothesis { .. }) => {
                // data-dependent; fine for this seed at a coarse eps
            }
            Err(other) => panic!("eps={eps}: {other}"),
        }
    }
}
