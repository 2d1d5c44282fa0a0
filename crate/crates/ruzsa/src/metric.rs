//! μ-separated point sets and the approximate (metric) Ruzsa injection.
//!
//! A set is μ-separated when any two of its points at distance below μ
//! coincide. For such data the exact injection of the algebraic theory
//! survives approximation: with sets `A, B, C` near a base point `e` such
//! that `B` and `Δ^e_ε(C,A)` are μ-separated, the map
//!
//! ```text
//! i(x,b) = (Δ^e_ε(b, f(x)), Δ^e_ε(b, g(x)))
//! ```
//!
//! is exactly injective once `ε` falls below a data-dependent threshold
//! `C(μ)`. Nothing here asserts a formula for that threshold;
//! [`estimate_threshold`] sweeps a grid and reports the largest `ε` at
//! which the hypothesis holds and the witness is injective.
//!
//! Point identification is tolerance-based throughout: two points are "the
//! same" when their space distance is at most `tolerance`, with the
//! default `tolerance = μ/4` chosen so that tolerance-clustering of a
//! μ-separated set never merges distinct points.

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::dilation::{coord_residual, validate_eps_grid, DilationSpace, Point, SpaceError};

#[derive(Debug, Clone, thiserror::Error)]
pub enum MetricError {
    #[error(transparent)]
    Space(#[from] SpaceError),
    #[error("set {role} must be non-empty")]
    EmptySet { role: &'static str },
    #[error("mu must be positive, got {0}")]
    NonPositiveMu(f64),
    #[error("tolerance must be positive, got {0}")]
    NonPositiveTolerance(f64),
    #[error("tolerance {tolerance} exceeds mu/4 = {limit}; tolerance equality could merge mu-separated points")]
    ToleranceTooLarge { tolerance: f64, limit: f64 },
    #[error("separation hypothesis fails: {role} contains points {p:?} and {q:?} at distance {dist}, below mu = {mu}")]
    SeparationHypothesis {
        role: &'static str,
        p: Point,
        q: Point,
        dist: f64,
        mu: f64,
    },
    #[error("ambiguous tolerance clustering: a cluster of diameter {diameter} (> 2·tolerance) sits {gap} away from another cluster (< 4·tolerance)")]
    AmbiguousClustering { diameter: f64, gap: f64 },
    #[error("sampler kept only {kept} of {target} points within {draws} draws")]
    SamplerBudget {
        kept: usize,
        target: usize,
        draws: usize,
        /// The partial set found before the budget ran out.
        points: Vec<Point>,
    },
    #[error("sampler needs a positive radius and count >= 1")]
    InvalidSamplerConfig,
}

/// Minimum pairwise distance of a point collection; infinite when there is
/// at most one point.
pub fn separation(space: &dyn DilationSpace, points: &[Point]) -> f64 {
    let mut min = f64::INFINITY;
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            min = min.min(space.distance(p, q));
        }
    }
    min
}

/// A collection of points together with the separation it was validated
/// against.
#[derive(Clone)]
pub struct SeparatedSet {
    space: Arc<dyn DilationSpace>,
    points: Vec<Point>,
    mu: f64,
}

impl std::fmt::Debug for SeparatedSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SeparatedSet")
            .field("space", &self.space.name())
            .field("len", &self.points.len())
            .field("mu", &self.mu)
            .finish()
    }
}

impl SeparatedSet {
    /// Wraps a point collection after verifying it is μ-separated.
    pub fn new(
        space: Arc<dyn DilationSpace>,
        points: Vec<Point>,
        mu: f64,
    ) -> Result<Self, MetricError> {
        if !mu.is_finite() || mu <= 0.0 {
            return Err(MetricError::NonPositiveMu(mu));
        }
        check_separated(space.as_ref(), &points, mu, "the candidate set")?;
        Ok(SeparatedSet { space, points, mu })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    pub fn space(&self) -> &Arc<dyn DilationSpace> {
        &self.space
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The actual minimum pairwise distance (at least `mu()` by
    /// construction).
    pub fn separation(&self) -> f64 {
        separation(self.space.as_ref(), &self.points)
    }
}

fn check_separated(
    space: &dyn DilationSpace,
    points: &[Point],
    mu: f64,
    role: &'static str,
) -> Result<(), MetricError> {
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let dist = space.distance(p, q);
            if dist < mu {
                return Err(MetricError::SeparationHypothesis {
                    role,
                    p: p.clone(),
                    q: q.clone(),
                    dist,
                    mu,
                });
            }
        }
    }
    Ok(())
}

/// Greedy rejection sampling of a μ-separated set in the metric ball of
/// `region_radius` around the space's base point.
///
/// Candidates come from the seeded generator; a candidate is kept when it
/// is at distance at least μ from everything kept so far. Sampling stops
/// at `count` points or after `10_000 · count` draws, whichever comes
/// first; running out of budget is an error carrying the partial set.
pub fn sample_separated_set(
    space: Arc<dyn DilationSpace>,
    region_radius: f64,
    mu: f64,
    count: usize,
    seed: u64,
) -> Result<SeparatedSet, MetricError> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(MetricError::NonPositiveMu(mu));
    }
    if count == 0 || !region_radius.is_finite() || region_radius <= 0.0 {
        return Err(MetricError::InvalidSamplerConfig);
    }
    let center = space.base_point();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut kept: Vec<Point> = Vec::with_capacity(count);
    let budget = 10_000usize.saturating_mul(count);
    let mut draws = 0usize;
    while kept.len() < count && draws < budget {
        let candidate = space.sample_in_ball(&center, region_radius, &mut rng);
        draws += 1;
        if kept
            .iter()
            .all(|p| space.distance(p, &candidate) >= mu)
        {
            kept.push(candidate);
        }
    }
    if kept.len() < count {
        return Err(MetricError::SamplerBudget {
            kept: kept.len(),
            target: count,
            draws,
            points: kept,
        });
    }
    SeparatedSet::new(space, kept, mu)
}

/// Connected components of the "within tolerance" graph over a point list.
#[derive(Debug)]
struct Clusters {
    /// One representative per cluster: the first-encountered member.
    reps: Vec<Point>,
    /// Cluster index per input point.
    assignment: Vec<usize>,
}

fn find_root(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

fn cluster_by_tolerance(
    space: &dyn DilationSpace,
    points: &[Point],
    tolerance: f64,
) -> Result<Clusters, MetricError> {
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(MetricError::NonPositiveTolerance(tolerance));
    }
    let n = points.len();
    let mut parent: Vec<usize> = (0..n).collect();
    for i in 0..n {
        for j in i + 1..n {
            if space.distance(&points[i], &points[j]) <= tolerance {
                let (ri, rj) = (find_root(&mut parent, i), find_root(&mut parent, j));
                if ri != rj {
                    // keep the smaller index as root so representatives are
                    // first-encountered points
                    parent[ri.max(rj)] = ri.min(rj);
                }
            }
        }
    }
    let mut cluster_of_root = vec![usize::MAX; n];
    let mut reps = Vec::new();
    let mut assignment = vec![0usize; n];
    for (i, slot) in assignment.iter_mut().enumerate() {
        let root = find_root(&mut parent, i);
        if cluster_of_root[root] == usize::MAX {
            cluster_of_root[root] = reps.len();
            reps.push(points[root].clone());
        }
        *slot = cluster_of_root[root];
    }

    // Identification is only trustworthy when clusters are tight or far
    // apart: a chained cluster wider than 2·tolerance that comes within
    // 4·tolerance of another cluster is ambiguous.
    let mut max_diameter = 0.0f64;
    let mut min_gap = f64::INFINITY;
    for i in 0..n {
        for j in i + 1..n {
            let d = space.distance(&points[i], &points[j]);
            if assignment[i] == assignment[j] {
                max_diameter = max_diameter.max(d);
            } else {
                min_gap = min_gap.min(d);
            }
        }
    }
    if max_diameter > 2.0 * tolerance && min_gap < 4.0 * tolerance {
        return Err(MetricError::AmbiguousClustering {
            diameter: max_diameter,
            gap: min_gap,
        });
    }
    Ok(Clusters { reps, assignment })
}

/// The approximate difference set `Δ^e_ε(A,B) = {Δ^e_ε(a,b)}`, deduplicated
/// by tolerance-clustering.
///
/// Pairs are enumerated with `a` outermost, and each cluster is represented
/// by its first-encountered image point.
pub fn approx_delta_set(
    space: &dyn DilationSpace,
    e: &Point,
    eps: f64,
    first: &[Point],
    second: &[Point],
    tolerance: f64,
) -> Result<Vec<Point>, MetricError> {
    let images = pair_images(space, e, eps, first, second)?;
    let clusters = cluster_by_tolerance(space, &images, tolerance)?;
    Ok(clusters.reps)
}

fn pair_images(
    space: &dyn DilationSpace,
    e: &Point,
    eps: f64,
    first: &[Point],
    second: &[Point],
) -> Result<Vec<Point>, MetricError> {
    if first.is_empty() {
        return Err(MetricError::EmptySet { role: "first" });
    }
    if second.is_empty() {
        return Err(MetricError::EmptySet { role: "second" });
    }
    let mut images = Vec::with_capacity(first.len() * second.len());
    for a in first {
        for b in second {
            images.push(space.approx_difference(e, eps, a, b)?);
        }
    }
    Ok(images)
}

/// One materialized entry `(x, b) ↦ (c, d)` of the metric injection.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricEntry {
    pub x: Point,
    pub b: Point,
    pub c: Point,
    pub d: Point,
}

/// Two entries whose values coincide within tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MetricCollision {
    /// Indices into [`MetricInjectionWitness::entries`].
    pub first: usize,
    pub second: usize,
    pub c_dist: f64,
    pub d_dist: f64,
}

/// The metric injection `Δ^e_ε(C,A) × B → Δ^e_ε(B,C) × Δ^e_ε(B,A)`, with
/// injectivity decided under tolerance equality.
#[derive(Debug, Clone, Serialize)]
pub struct MetricInjectionWitness {
    pub eps: f64,
    pub tolerance: f64,
    /// The deduplicated domain set `Δ^e_ε(C,A)`.
    pub domain: Vec<Point>,
    /// Generating pair `(f(x), g(x)) ∈ C × A` per domain point.
    pub section: Vec<(Point, Point)>,
    /// Entries ordered by (domain index, B index).
    pub entries: Vec<MetricEntry>,
    pub source_size: usize,
    pub is_injective: bool,
    pub collision: Option<MetricCollision>,
}

impl MetricInjectionWitness {
    /// Largest componentwise residual of the proof's reconstruction step:
    /// with `(c,d) = i(x,b)` and base `b(ε) = δ^e_ε b`, the point
    /// `Δ^{b(ε)}_ε(c,d)` must land back on `x` up to the section's
    /// tolerance slack.
    pub fn max_reconstruction_residual(
        &self,
        space: &dyn DilationSpace,
        e: &Point,
    ) -> Result<f64, MetricError> {
        let mut worst = 0.0f64;
        for entry in &self.entries {
            let base = space.dilate(e, self.eps, &entry.b);
            let rebuilt = space.approx_difference(&base, self.eps, &entry.c, &entry.d)?;
            worst = worst.max(coord_residual(&rebuilt, &entry.x));
        }
        Ok(worst)
    }

    /// Largest componentwise gap between each domain point and the exact
    /// limit reconstruction `Δ^e(c,d)`; this is the measured `O(ε)` term of
    /// the threshold argument.
    pub fn max_limit_reconstruction_gap(&self, space: &dyn DilationSpace, e: &Point) -> f64 {
        self.entries
            .iter()
            .map(|entry| coord_residual(&space.limit_difference(e, &entry.c, &entry.d), &entry.x))
            .fold(0.0, f64::max)
    }
}

/// Builds the metric injection after checking the separation hypothesis.
///
/// `B` and the tolerance-deduplicated image set `Δ^e_ε(C,A)` must both be
/// μ-separated; a violation is reported with the offending pair. The
/// section picks, per domain point, the generating pair `(c,a)` that is
/// lexicographically least in coordinates.
#[allow(clippy::too_many_arguments)]
pub fn metric_injection(
    space: &dyn DilationSpace,
    e: &Point,
    eps: f64,
    a_set: &[Point],
    b_set: &[Point],
    c_set: &[Point],
    mu: f64,
    tolerance: f64,
) -> Result<MetricInjectionWitness, MetricError> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(MetricError::NonPositiveMu(mu));
    }
    if !tolerance.is_finite() || tolerance <= 0.0 {
        return Err(MetricError::NonPositiveTolerance(tolerance));
    }
    if tolerance > mu / 4.0 {
        return Err(MetricError::ToleranceTooLarge {
            tolerance,
            limit: mu / 4.0,
        });
    }
    if b_set.is_empty() {
        return Err(MetricError::EmptySet { role: "B" });
    }
    if a_set.is_empty() {
        return Err(MetricError::EmptySet { role: "A" });
    }
    if c_set.is_empty() {
        return Err(MetricError::EmptySet { role: "C" });
    }

    // B's separation is independent of clustering; validate it first so a
    // bad mu is reported as the hypothesis failure it is.
    check_separated(space, b_set, mu, "B")?;

    // Domain: cluster the |C|·|A| images, pairs enumerated c-outermost.
    let images = pair_images(space, e, eps, c_set, a_set)?;
    let clusters = cluster_by_tolerance(space, &images, tolerance)?;
    check_separated(space, &clusters.reps, mu, "delta(C,A)")?;

    // Section: per cluster, the coordinate-lexicographically least (c, a).
    let mut section: Vec<Option<(usize, usize)>> = vec![None; clusters.reps.len()];
    for (pair_idx, &cluster) in clusters.assignment.iter().enumerate() {
        let (ci, ai) = (pair_idx / a_set.len(), pair_idx % a_set.len());
        let better = match section[cluster] {
            None => true,
            Some((c0, a0)) => {
                let ord = c_set[ci]
                    .lex_cmp(&c_set[c0])
                    .then_with(|| a_set[ai].lex_cmp(&a_set[a0]));
                ord == std::cmp::Ordering::Less
            }
        };
        if better {
            section[cluster] = Some((ci, ai));
        }
    }
    let section: Vec<(Point, Point)> = section
        .into_iter()
        .map(|s| {
            let (ci, ai) = s.expect("every cluster has a generating pair");
            (c_set[ci].clone(), a_set[ai].clone())
        })
        .collect();

    let mut entries = Vec::with_capacity(clusters.reps.len() * b_set.len());
    for (x, (fx, gx)) in clusters.reps.iter().zip(&section) {
        for b in b_set {
            entries.push(MetricEntry {
                x: x.clone(),
                b: b.clone(),
                c: space.approx_difference(e, eps, b, fx)?,
                d: space.approx_difference(e, eps, b, gx)?,
            });
        }
    }

    let collision = find_collision(space, &entries, tolerance);
    Ok(MetricInjectionWitness {
        eps,
        tolerance,
        domain: clusters.reps,
        section,
        source_size: entries.len(),
        is_injective: collision.is_none(),
        collision,
        entries,
    })
}

/// Finds the lexicographically least pair of entries whose values agree
/// within tolerance.
///
/// Candidate pruning sorts by the first coordinate of `c`: in both
/// implemented spaces the first-coordinate difference is a lower bound for
/// the distance, so a pair beyond `tolerance` in that key cannot collide.
fn find_collision(
    space: &dyn DilationSpace,
    entries: &[MetricEntry],
    tolerance: f64,
) -> Option<MetricCollision> {
    let mut order: Vec<usize> = (0..entries.len()).collect();
    let key = |i: usize| entries[i].c.coords()[0];
    order.sort_by(|&i, &j| key(i).partial_cmp(&key(j)).expect("finite coordinates"));

    let mut best: Option<(usize, usize, f64, f64)> = None;
    for (pos, &i) in order.iter().enumerate() {
        for &j in &order[pos + 1..] {
            if key(j) - key(i) > tolerance {
                break;
            }
            let c_dist = space.distance(&entries[i].c, &entries[j].c);
            if c_dist > tolerance {
                continue;
            }
            let d_dist = space.distance(&entries[i].d, &entries[j].d);
            if d_dist > tolerance {
                continue;
            }
            let pair = (i.min(j), i.max(j));
            if best.is_none_or(|(bi, bj, _, _)| pair < (bi, bj)) {
                best = Some((pair.0, pair.1, c_dist, d_dist));
            }
        }
    }
    best.map(|(first, second, c_dist, d_dist)| MetricCollision {
        first,
        second,
        c_dist,
        d_dist,
    })
}

/// One grid point of a threshold sweep.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdRow {
    pub eps: f64,
    pub hypothesis_ok: bool,
    pub injective: bool,
    /// Populated when the grid point was skipped (hypothesis failure or
    /// ambiguous clustering).
    pub detail: Option<String>,
}

/// Outcome of sweeping [`metric_injection`] over a descending ε grid.
#[derive(Debug, Clone, Serialize)]
pub struct ThresholdReport {
    pub mu: f64,
    pub tolerance: f64,
    pub rows: Vec<ThresholdRow>,
    /// Largest grid ε with the hypothesis satisfied and an injective
    /// witness; 0 when there is none.
    pub empirical_threshold: f64,
}

/// Runs [`metric_injection`] on every grid point (tolerance μ/4), skipping
/// and flagging points where the separation hypothesis fails.
///
/// An empty grid yields an empty report with threshold 0.
pub fn estimate_threshold(
    space: &dyn DilationSpace,
    e: &Point,
    a_set: &[Point],
    b_set: &[Point],
    c_set: &[Point],
    mu: f64,
    eps_grid: &[f64],
) -> Result<ThresholdReport, MetricError> {
    if !mu.is_finite() || mu <= 0.0 {
        return Err(MetricError::NonPositiveMu(mu));
    }
    let tolerance = mu / 4.0;
    if !eps_grid.is_empty() {
        validate_eps_grid(eps_grid).map_err(MetricError::Space)?;
    }
    let mut rows = Vec::with_capacity(eps_grid.len());
    let mut empirical_threshold = 0.0f64;
    for &eps in eps_grid {
        match metric_injection(space, e, eps, a_set, b_set, c_set, mu, tolerance) {
            Ok(witness) => {
                if witness.is_injective {
                    empirical_threshold = empirical_threshold.max(eps);
                }
                rows.push(ThresholdRow {
                    eps,
                    hypothesis_ok: true,
                    injective: witness.is_injective,
                    detail: None,
                });
            }
            Err(err @ (MetricError::SeparationHypothesis { .. }
            | MetricError::AmbiguousClustering { .. })) => {
                rows.push(ThresholdRow {
                    eps,
                    hypothesis_ok: false,
                    injective: false,
                    detail: Some(err.to_string()),
                });
            }
            Err(other) => return Err(other),
        }
    }
    Ok(ThresholdReport {
        mu,
        tolerance,
        rows,
        empirical_threshold,
    })
}
