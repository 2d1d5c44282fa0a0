//! Metric spaces with dilations: dilation fields, approximate differences,
//! and convergence diagnostics.
//!
//! A [`DilationSpace`] is a metric space with a field of contractions
//! `δ^x_ε` fixing `x` and composing as `δ^x_ε δ^x_η = δ^x_{εη}`. The
//! approximate difference based at `e` is the composition
//!
//! ```text
//! Δ^e_ε(a,b) = δ^{δ^e_ε a}_{1/ε} δ^e_ε b
//! ```
//!
//! which converges, as `ε → 0`, to the exact conical-group difference
//! `Δ^e(a,b)` (stored in closed form per space). Two instances are
//! provided: flat [`EuclideanSpace`], where everything is affine, and
//! [`HeisenbergSpace`], the first Heisenberg group with its Korányi gauge,
//! where the dilations `δ_ε(x,y,z) = (εx, εy, ε²z)` are group
//! automorphisms.
//!
//! Discrepancies between two *points* (algebraic-law residuals,
//! convergence gaps) are measured componentwise via [`coord_residual`].
//! The space metric is reserved for genuinely metric statements —
//! separation of sets, tolerance identification — because the Korányi
//! gauge scales like the square root of the vertical coordinate and would
//! turn mere f64 rounding into ~1e-8 "distances".

use rand::{Rng, RngCore};
use serde::Serialize;

/// Floor below which convergence gaps are treated as exact zeros and
/// excluded from log–log regression.
pub const GAP_FLOOR: f64 = 1e-14;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum SpaceError {
    #[error("epsilon must lie in (0, 1], got {0}")]
    EpsOutOfRange(f64),
    #[error("point has dimension {got}, space expects {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point coordinates must be finite")]
    NonFinitePoint,
    #[error("space dimension must be at least 1")]
    ZeroDimension,
    #[error("epsilon grid must be non-empty, strictly descending, and within (0, 1]")]
    InvalidEpsGrid,
}

/// A point with finite 64-bit coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, SpaceError> {
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(SpaceError::NonFinitePoint);
        }
        Ok(Point { coords })
    }

    pub fn zeros(dim: usize) -> Self {
        Point {
            coords: vec![0.0; dim],
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Coordinatewise lexicographic order; total on finite points.
    pub fn lex_cmp(&self, other: &Point) -> std::cmp::Ordering {
        for (a, b) in self.coords.iter().zip(&other.coords) {
            match a.partial_cmp(b).expect("point coordinates are finite") {
                std::cmp::Ordering::Equal => continue,
                ord => return ord,
            }
        }
        self.coords.len().cmp(&other.coords.len())
    }
}

impl From<&[f64]> for Point {
    fn from(coords: &[f64]) -> Self {
        Point::new(coords.to_vec()).expect("finite coordinates")
    }
}

impl<const N: usize> From<[f64; N]> for Point {
    fn from(coords: [f64; N]) -> Self {
        Point::new(coords.to_vec()).expect("finite coordinates")
    }
}

/// Largest absolute coordinate difference between two points.
pub fn coord_residual(p: &Point, q: &Point) -> f64 {
    debug_assert_eq!(p.dim(), q.dim());
    p.coords
        .iter()
        .zip(&q.coords)
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max)
}

/// A metric space equipped with a dilation field and a closed-form limit
/// difference.
///
/// Implementations must satisfy, up to rounding: `dilate(x, 1, y) = y`,
/// `dilate(x, ε, x) = x`, the semigroup law
/// `dilate(x, ε, dilate(x, η, y)) = dilate(x, εη, y)`, and invertibility of
/// `dilate(x, ε, ·)` by `dilate(x, 1/ε, ·)`. Dilations are globally
/// defined for every `ε > 0`; only [`DilationSpace::approx_difference`]
/// restricts `ε` to `(0, 1]`.
pub trait DilationSpace: Send + Sync {
    fn name(&self) -> &str;

    fn dim(&self) -> usize;

    /// The distinguished base point (origin, group identity).
    fn base_point(&self) -> Point;

    fn distance(&self, p: &Point, q: &Point) -> f64;

    /// The dilation `δ^base_ε(target)`; `eps` must be positive and finite.
    fn dilate(&self, base: &Point, eps: f64, target: &Point) -> Point;

    /// The exact limit difference `Δ^e(a,b)`.
    fn limit_difference(&self, e: &Point, a: &Point, b: &Point) -> Point;

    /// A uniform draw from the metric ball of the given radius.
    fn sample_in_ball(&self, center: &Point, radius: f64, rng: &mut dyn RngCore) -> Point;

    fn check_point(&self, p: &Point) -> Result<(), SpaceError> {
        if p.dim() != self.dim() {
            return Err(SpaceError::DimensionMismatch {
                expected: self.dim(),
                got: p.dim(),
            });
        }
        Ok(())
    }

    /// The approximate difference `Δ^e_ε(a,b) = δ^{δ^e_ε a}_{1/ε} δ^e_ε b`
    /// for `ε ∈ (0, 1]`; at `ε = 1` this is exactly `b`.
    fn approx_difference(
        &self,
        e: &Point,
        eps: f64,
        a: &Point,
        b: &Point,
    ) -> Result<Point, SpaceError> {
        if !(eps > 0.0 && eps <= 1.0) {
            return Err(SpaceError::EpsOutOfRange(eps));
        }
        self.check_point(e)?;
        self.check_point(a)?;
        self.check_point(b)?;
        let a_eps = self.dilate(e, eps, a);
        let b_eps = self.dilate(e, eps, b);
        Ok(self.dilate(&a_eps, 1.0 / eps, &b_eps))
    }

    /// Componentwise residual of the approximate version of axiom 1,
    ///
    /// ```text
    /// Δ^{a(ε)}_ε(Δ^e_ε(a,b), Δ^e_ε(a,c)) = Δ^e_ε(b,c),   a(ε) = δ^e_ε a,
    /// ```
    ///
    /// which is an exact identity for any dilation field, so the returned
    /// value is pure accumulated rounding.
    fn approx_axiom1_residual(
        &self,
        e: &Point,
        eps: f64,
        a: &Point,
        b: &Point,
        c: &Point,
    ) -> Result<f64, SpaceError> {
        let a_eps = self.dilate(e, eps, a);
        let ab = self.approx_difference(e, eps, a, b)?;
        let ac = self.approx_difference(e, eps, a, c)?;
        let lhs = self.approx_difference(&a_eps, eps, &ab, &ac)?;
        let rhs = self.approx_difference(e, eps, b, c)?;
        Ok(coord_residual(&lhs, &rhs))
    }
}

/// Flat n-dimensional space: `dilate(x, ε, y) = x + ε(y - x)` and
/// `Δ^e(a,b) = e + (b - a)`.
#[derive(Debug, Clone)]
pub struct EuclideanSpace {
    dim: usize,
    name: String,
}

impl EuclideanSpace {
    pub fn new(dim: usize) -> Result<Self, SpaceError> {
        if dim == 0 {
            return Err(SpaceError::ZeroDimension);
        }
        Ok(EuclideanSpace {
            dim,
            name: format!("euclid:{dim}"),
        })
    }
}

impl DilationSpace for EuclideanSpace {
    fn name(&self) -> &str {
        &self.name
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn base_point(&self) -> Point {
        Point::zeros(self.dim)
    }

    fn distance(&self, p: &Point, q: &Point) -> f64 {
        p.coords()
            .iter()
            .zip(q.coords())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt()
    }

    fn dilate(&self, base: &Point, eps: f64, target: &Point) -> Point {
        debug_assert!(eps > 0.0 && eps.is_finite());
        let coords = base
            .coords()
            .iter()
            .zip(target.coords())
            .map(|(x, y)| x + eps * (y - x))
            .collect();
        Point { coords }
    }

    fn limit_difference(&self, e: &Point, a: &Point, b: &Point) -> Point {
        let coords = e
            .coords()
            .iter()
            .zip(a.coords().iter().zip(b.coords()))
            .map(|(e, (a, b))| e + (b - a))
            .collect();
        Point { coords }
    }

    fn sample_in_ball(&self, center: &Point, radius: f64, rng: &mut dyn RngCore) -> Point {
        loop {
            let offset: Vec<f64> = (0..self.dim)
                .map(|_| rng.random_range(-radius..=radius))
                .collect();
            if offset.iter().map(|c| c * c).sum::<f64>() <= radius * radius {
                let coords = center.coords().iter().zip(&offset).map(|(c, o)| c + o).collect();
                return Point { coords };
            }
        }
    }
}

/// The first Heisenberg group on `R³` with the Korányi gauge.
///
/// Group law `(x,y,z)·(x',y',z') = (x+x', y+y', z+z'+(xy'-yx')/2)`, gauge
/// `N(x,y,z) = ((x²+y²)² + 16z²)^{1/4}`, left-invariant distance
/// `d(p,q) = N(p⁻¹·q)`, and automorphic dilations
/// `δ_ε(x,y,z) = (εx, εy, ε²z)` translated to each base point.
#[derive(Debug, Clone, Default)]
pub struct HeisenbergSpace;

impl HeisenbergSpace {
    pub fn new() -> Self {
        HeisenbergSpace
    }

    /// The group product.
    pub fn group_mul(p: &Point, q: &Point) -> Point {
        let (a, b) = (p.coords(), q.coords());
        Point {
            coords: vec![
                a[0] + b[0],
                a[1] + b[1],
                a[2] + b[2] + (a[0] * b[1] - a[1] * b[0]) / 2.0,
            ],
        }
    }

    /// The group inverse (negation in these coordinates).
    pub fn group_inverse(p: &Point) -> Point {
        Point {
            coords: p.coords().iter().map(|c| -c).collect(),
        }
    }

    /// The homogeneous Korányi gauge `N(x,y,z) = ((x²+y²)² + 16z²)^{1/4}`,
    /// exactly homogeneous under `δ_ε`.
    pub fn gauge(p: &Point) -> f64 {
        let c = p.coords();
        let horizontal = c[0] * c[0] + c[1] * c[1];
        (horizontal * horizontal + 16.0 * c[2] * c[2]).sqrt().sqrt()
    }

    /// The dilation `δ_ε` at the group identity.
    pub fn dilation_at_identity(eps: f64, p: &Point) -> Point {
        let c = p.coords();
        Point {
            coords: vec![eps * c[0], eps * c[1], eps * eps * c[2]],
        }
    }
}

impl DilationSpace for HeisenbergSpace {
    fn name(&self) -> &str {
        "heis1"
    }

    fn dim(&self) -> usize {
        3
    }

    fn base_point(&self) -> Point {
        Point::zeros(3)
    }

    fn distance(&self, p: &Point, q: &Point) -> f64 {
        Self::gauge(&Self::group_mul(&Self::group_inverse(p), q))
    }

    fn dilate(&self, base: &Point, eps: f64, target: &Point) -> Point {
        debug_assert!(eps > 0.0 && eps.is_finite());
        let rel = Self::group_mul(&Self::group_inverse(base), target);
        Self::group_mul(base, &Self::dilation_at_identity(eps, &rel))
    }

    fn limit_difference(&self, e: &Point, a: &Point, b: &Point) -> Point {
        Self::group_mul(e, &Self::group_mul(&Self::group_inverse(a), b))
    }

    fn sample_in_ball(&self, center: &Point, radius: f64, rng: &mut dyn RngCore) -> Point {
        // Draw in the gauge ball at the identity (box-rejection; the box
        // [-r,r]² x [-r²/4, r²/4] encloses it), then left-translate, which
        // is an isometry.
        let zmax = radius * radius / 4.0;
        loop {
            let cand = Point {
                coords: vec![
                    rng.random_range(-radius..=radius),
                    rng.random_range(-radius..=radius),
                    rng.random_range(-zmax..=zmax),
                ],
            };
            if Self::gauge(&cand) <= radius {
                return Self::group_mul(center, &cand);
            }
        }
    }
}

/// One row of a convergence sweep: the componentwise gap between
/// `Δ^e_ε(a,b)` and `Δ^e(a,b)` at a given `ε`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvergenceRow {
    pub eps: f64,
    pub gap: f64,
}

/// Gap table over a descending ε grid plus the fitted log–log slope.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceTable {
    pub rows: Vec<ConvergenceRow>,
    /// Least-squares slope of `log gap` against `log ε` over rows with
    /// `gap >` [`GAP_FLOOR`]; NaN when fewer than two rows qualify.
    pub slope: f64,
}

/// Validates a descending ε grid with entries in `(0, 1]`.
pub fn validate_eps_grid(grid: &[f64]) -> Result<(), SpaceError> {
    if grid.is_empty()
        || grid.iter().any(|&e| !(e > 0.0 && e <= 1.0))
        || grid.windows(2).any(|w| w[0] <= w[1])
    {
        return Err(SpaceError::InvalidEpsGrid);
    }
    Ok(())
}

/// Measures the uniform convergence `Δ^e_ε(a,b) → Δ^e(a,b)` along a
/// descending ε grid.
pub fn convergence_table(
    space: &dyn DilationSpace,
    e: &Point,
    a: &Point,
    b: &Point,
    eps_grid: &[f64],
) -> Result<ConvergenceTable, SpaceError> {
    validate_eps_grid(eps_grid)?;
    let limit = space.limit_difference(e, a, b);
    let mut rows = Vec::with_capacity(eps_grid.len());
    for &eps in eps_grid {
        let approx = space.approx_difference(e, eps, a, b)?;
        rows.push(ConvergenceRow {
            eps,
            gap: coord_residual(&approx, &limit),
        });
    }
    let fit: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.gap > GAP_FLOOR)
        .map(|r| (r.eps, r.gap))
        .collect();
    Ok(ConvergenceTable {
        rows,
        slope: log_log_slope(&fit),
    })
}

/// Least-squares slope of `ln y` against `ln x`; NaN when fewer than two
/// points are supplied.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    if points.len() < 2 {
        return f64::NAN;
    }
    let n = points.len() as f64;
    let (mut sx, mut sy, mut sxx, mut sxy) = (0.0, 0.0, 0.0, 0.0);
    for &(x, y) in points {
        let (lx, ly) = (x.ln(), y.ln());
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    (n * sxy - sx * sy) / (n * sxx - sx * sx)
}
