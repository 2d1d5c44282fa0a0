//! Difference structures, the Ruzsa triangle inequality, and metric spaces
//! with dilations.
//!
//! The crate is organized around one algebraic idea and one metric idea.
//!
//! **Algebraic side.** A *difference structure* is a set `X` with a binary
//! operation `Δ` such that `Δ(Δ(a,b), Δ(a,c)) = Δ(b,c)` and `z ↦ Δ(z,a)` is
//! injective for every `a` (or weaker variants of both, witnessed by
//! companion functions `F` and `G`). For finite subsets `A, B, C` of such a
//! structure there is an explicit injection
//!
//! ```text
//! Δ(C,A) × B  →  Δ(B,C) × Δ(B,A)
//! ```
//!
//! which immediately gives the Ruzsa triangle inequality
//! `|Δ(C,A)|·|B| ≤ |Δ(B,C)|·|Δ(B,A)|`. The group model is
//! `Δ(a,b) = a⁻¹·b`; [`groups`] provides a catalog of finite groups
//! (cyclic, dihedral, symmetric, Heisenberg mod p, direct products) whose
//! induced structures satisfy the axioms exactly, plus relabeled fixtures
//! that only satisfy the weaker variants. [`delta`] constructs the injection
//! itself and verifies the axioms exhaustively or by seeded sampling.
//!
//! **Metric side.** A metric space with dilations carries a field of
//! contractions `δ^x_ε` fixing `x`. Composing dilations yields an
//! approximate difference `Δ^e_ε(a,b) = δ^{δ^e_ε a}_{1/ε} δ^e_ε b` which
//! converges, as `ε → 0`, to an exact conical-group difference `Δ^e`.
//! [`dilation`] implements two instances — flat Euclidean space and the
//! first Heisenberg group with its Korányi gauge — together with residual
//! checks and convergence tables. [`metric`] carries the construction to
//! μ-separated point sets: the same injection, built from `Δ^e_ε` with
//! tolerance-based point identification, becomes exactly injective once
//! `ε` is small enough, and [`metric::estimate_threshold`] measures that
//! threshold empirically.
//!
//! The [`cli`] module exposes all of this behind the `ruzsa` binary with
//! deterministic JSON/CSV reports; see the crate examples for library-level
//! entry points.

pub mod cli;
pub mod delta;
pub mod dilation;
pub mod groups;
pub mod metric;
pub mod report;

pub use delta::{
    AxiomReport, CheckMode, DeltaError, DeltaStructure, Element, FiniteSet, InjectionWitness,
    RuzsaCheck, Section, WeakAxiomReport,
};
pub use dilation::{
    convergence_table, coord_residual, log_log_slope, ConvergenceTable, DilationSpace,
    EuclideanSpace, HeisenbergSpace, Point, SpaceError,
};
pub use groups::{group_delta, relabeled_delta, FiniteGroup, GroupError};
pub use metric::{
    approx_delta_set, estimate_threshold, metric_injection, sample_separated_set, separation,
    MetricError, MetricInjectionWitness, SeparatedSet, ThresholdReport,
};
