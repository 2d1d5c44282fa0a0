//! Abstract difference structures, difference sets, sections, and the
//! explicit injection behind the Ruzsa triangle inequality.
//!
//! A [`DeltaStructure`] is a carrier with a total binary operation `Δ`,
//! optionally accompanied by the weak-axiom companions `F` and `G`:
//!
//! * axiom 1: `Δ(Δ(a,b), Δ(a,c)) = Δ(b,c)` for all `a, b, c`;
//! * axiom 2: `z ↦ Δ(z,a)` is injective for every fixed `a`;
//! * weak 1: `F(Δ(a,b), Δ(a,c)) = Δ(b,c)` for some function `F`;
//! * weak 2: `a ↦ G(Δ(a,b), b)` is injective for every fixed `b`.
//!
//! Either pair of hypotheses is enough to build, for non-empty finite sets
//! `A, B, C`, the injection `i(x,b) = (Δ(b,f(x)), Δ(b,g(x)))` from
//! `Δ(C,A) × B` into `Δ(B,C) × Δ(B,A)`, where `(f,g)` is a section of
//! `Δ(C,A)` — a choice of generating pair `x = Δ(f(x), g(x))` per point.
//! [`DeltaStructure::build_injection`] materializes that map entry by entry
//! and records whether it is injective, which yields the cardinality bound
//! checked by [`DeltaStructure::ruzsa_inequality`].

use std::collections::BTreeMap;
use std::fmt;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// A carrier element, identified by a dense index.
///
/// Equality and the derived total order are the canonical ones on the
/// index; every deduplication and tie-break in this module relies on them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Element(pub u32);

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A finite set of elements, stored deduplicated in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteSet {
    members: Vec<Element>,
}

impl FiniteSet {
    /// Builds a set from arbitrary (possibly repeated, unordered) elements.
    pub fn new(members: impl IntoIterator<Item = Element>) -> Self {
        let mut members: Vec<Element> = members.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        FiniteSet { members }
    }

    pub fn singleton(e: Element) -> Self {
        FiniteSet { members: vec![e] }
    }

    pub fn members(&self) -> &[Element] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, e: Element) -> bool {
        self.members.binary_search(&e).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Element> + '_ {
        self.members.iter().copied()
    }
}

impl FromIterator<Element> for FiniteSet {
    fn from_iter<T: IntoIterator<Item = Element>>(iter: T) -> Self {
        FiniteSet::new(iter)
    }
}

/// Errors from difference-structure operations.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeltaError {
    /// The sets feeding a difference-set or injection must be non-empty.
    #[error("set {role} must be non-empty")]
    EmptySet { role: &'static str },
    /// An input element does not belong to the structure's carrier.
    #[error("element {element} of set {role} is not in the carrier")]
    InvalidMember { role: &'static str, element: Element },
    /// Exhaustive and sampled checks both need an enumerable carrier.
    #[error("this check requires an enumerable carrier, but the structure has none")]
    MissingCarrier,
    /// `check_weak_axioms` needs both companion functions present.
    #[error("the structure carries no weak companion functions F and G")]
    MissingWeakFunctions,
}

/// How an axiom check walks the carrier.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    /// Every triple (or pair) over the carrier.
    Exhaustive,
    /// `count` seeded random draws.
    Sampled { count: usize, seed: u64 },
}

impl CheckMode {
    /// Largest carrier for which the default mode stays exhaustive
    /// (`64³ ≈ 262k` triples is instant at desk scale).
    pub const EXHAUSTIVE_LIMIT: usize = 64;
    /// Draw count used by [`CheckMode::auto`] when sampling.
    pub const DEFAULT_SAMPLE_COUNT: usize = 10_000;

    /// Exhaustive for carriers of at most [`Self::EXHAUSTIVE_LIMIT`]
    /// elements, seeded sampling otherwise.
    pub fn auto(carrier_len: usize, seed: u64) -> Self {
        if carrier_len <= Self::EXHAUSTIVE_LIMIT {
            CheckMode::Exhaustive
        } else {
            CheckMode::Sampled {
                count: Self::DEFAULT_SAMPLE_COUNT,
                seed,
            }
        }
    }
}

/// Outcome of a single-axiom check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub ok: bool,
    /// Number of triples (axiom 1) or ordered evaluations (axiom 2) checked.
    pub checked: usize,
    /// First failing witness: `(a,b,c)` for axiom 1, `(a,z,z')` for axiom 2.
    pub counterexample: Option<[Element; 3]>,
}

/// Outcome of checking the weak axioms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakAxiomReport {
    pub ok1: bool,
    pub ok2: bool,
    pub checked: usize,
    /// First triple `(a,b,c)` with `F(Δ(a,b),Δ(a,c)) ≠ Δ(b,c)`.
    pub counterexample_f: Option<[Element; 3]>,
    /// First witness `(b,a,a')` with `a ≠ a'` but `G(Δ(a,b),b) = G(Δ(a',b),b)`.
    pub counterexample_g: Option<[Element; 3]>,
}

/// A section of `Δ(C,A)`: for every `x` in the domain, a generating pair
/// `(f(x), g(x)) ∈ C × A` with `Δ(f(x), g(x)) = x`.
///
/// Among all generating pairs of `x` the lexicographically smallest one is
/// selected, so sections are deterministic.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    domain: FiniteSet,
    assignment: BTreeMap<Element, (Element, Element)>,
}

impl Section {
    pub fn domain(&self) -> &FiniteSet {
        &self.domain
    }

    /// The generating pair `(f(x), g(x))`, or `None` if `x` is outside the domain.
    pub fn pair(&self, x: Element) -> Option<(Element, Element)> {
        self.assignment.get(&x).copied()
    }

    pub fn f(&self, x: Element) -> Option<Element> {
        self.pair(x).map(|(c, _)| c)
    }

    pub fn g(&self, x: Element) -> Option<Element> {
        self.pair(x).map(|(_, a)| a)
    }
}

/// One materialized entry of the injection: `(x, b) ↦ (c, d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InjectionEntry {
    pub x: Element,
    pub b: Element,
    pub c: Element,
    pub d: Element,
}

/// Two distinct keys that were mapped to the same value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InjectionCollision {
    pub first: (Element, Element),
    pub second: (Element, Element),
    pub value: (Element, Element),
}

/// The explicit map `(x, b) ↦ (Δ(b,f(x)), Δ(b,g(x)))`, fully materialized
/// so that collisions can be reported with both offending keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InjectionWitness {
    /// All entries, ordered by `(x, b)`.
    pub entries: Vec<InjectionEntry>,
    /// `|Δ(C,A)| · |B|`.
    pub source_size: usize,
    pub is_injective: bool,
    /// Populated exactly when `is_injective` is false.
    pub collision: Option<InjectionCollision>,
}

impl InjectionWitness {
    /// Image of a single key, if present.
    pub fn lookup(&self, x: Element, b: Element) -> Option<(Element, Element)> {
        self.entries
            .binary_search_by_key(&(x, b), |e| (e.x, e.b))
            .ok()
            .map(|i| (self.entries[i].c, self.entries[i].d))
    }
}

/// Both sides of `|Δ(C,A)|·|B| ≤ |Δ(B,C)|·|Δ(B,A)|` plus the witness that
/// proves the bound when injective.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuzsaCheck {
    pub lhs: usize,
    pub rhs: usize,
    pub holds: bool,
    pub witness: InjectionWitness,
}

type BinaryOp = dyn Fn(Element, Element) -> Element + Send + Sync;

/// A set with a total difference-like operation `Δ`, optionally with the
/// weak-axiom companions `F` and `G`.
///
/// The carrier is optional; checks that must enumerate it return
/// [`DeltaError::MissingCarrier`] when it is absent. All operations are
/// pure, and the structure is immutable after construction, so sharing
/// across threads is safe.
pub struct DeltaStructure {
    carrier: Option<Vec<Element>>,
    delta: Box<BinaryOp>,
    weak_f: Option<Box<BinaryOp>>,
    weak_g: Option<Box<BinaryOp>>,
}

impl fmt::Debug for DeltaStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("DeltaStructure")
            .field("carrier_len", &self.carrier.as_ref().map(Vec::len))
            .field("has_weak_fns", &self.has_weak_fns())
            .finish()
    }
}

impl DeltaStructure {
    /// A carrier-free structure given by a formula.
    pub fn from_fn(delta: impl Fn(Element, Element) -> Element + Send + Sync + 'static) -> Self {
        DeltaStructure {
            carrier: None,
            delta: Box::new(delta),
            weak_f: None,
            weak_g: None,
        }
    }

    /// A structure over an explicit finite carrier.
    pub fn with_carrier(
        carrier: impl IntoIterator<Item = Element>,
        delta: impl Fn(Element, Element) -> Element + Send + Sync + 'static,
    ) -> Self {
        let mut carrier: Vec<Element> = carrier.into_iter().collect();
        carrier.sort_unstable();
        carrier.dedup();
        DeltaStructure {
            carrier: Some(carrier),
            delta: Box::new(delta),
            weak_f: None,
            weak_g: None,
        }
    }

    /// Attaches the weak-axiom companions `F` and `G`.
    pub fn with_weak_fns(
        mut self,
        weak_f: impl Fn(Element, Element) -> Element + Send + Sync + 'static,
        weak_g: impl Fn(Element, Element) -> Element + Send + Sync + 'static,
    ) -> Self {
        self.weak_f = Some(Box::new(weak_f));
        self.weak_g = Some(Box::new(weak_g));
        self
    }

    pub fn delta(&self, a: Element, b: Element) -> Element {
        (self.delta)(a, b)
    }

    pub fn carrier(&self) -> Option<&[Element]> {
        self.carrier.as_deref()
    }

    pub fn has_weak_fns(&self) -> bool {
        self.weak_f.is_some() && self.weak_g.is_some()
    }

    /// Default check mode for this structure (exhaustive on small carriers).
    pub fn default_mode(&self, seed: u64) -> CheckMode {
        CheckMode::auto(self.carrier.as_ref().map_or(usize::MAX, Vec::len), seed)
    }

    fn validate_members(&self, role: &'static str, set: &FiniteSet) -> Result<(), DeltaError> {
        if set.is_empty() {
            return Err(DeltaError::EmptySet { role });
        }
        if let Some(carrier) = &self.carrier {
            for e in set.iter() {
                if carrier.binary_search(&e).is_err() {
                    return Err(DeltaError::InvalidMember { role, element: e });
                }
            }
        }
        Ok(())
    }

    /// The difference set `Δ(A,B) = {Δ(a,b) | a ∈ A, b ∈ B}`, deduplicated.
    pub fn delta_set(&self, a: &FiniteSet, b: &FiniteSet) -> Result<FiniteSet, DeltaError> {
        self.validate_members("A", a)?;
        self.validate_members("B", b)?;
        let mut image = Vec::with_capacity(a.len() * b.len());
        for x in a.iter() {
            for y in b.iter() {
                image.push(self.delta(x, y));
            }
        }
        Ok(FiniteSet::new(image))
    }

    /// A deterministic section of `Δ(C,A)`: for each `x`, the
    /// lexicographically smallest `(c,a) ∈ C × A` with `Δ(c,a) = x`.
    pub fn build_section(&self, c: &FiniteSet, a: &FiniteSet) -> Result<Section, DeltaError> {
        self.validate_members("C", c)?;
        self.validate_members("A", a)?;
        let mut assignment: BTreeMap<Element, (Element, Element)> = BTreeMap::new();
        // members() is sorted, so the first pair seen per x is the lex-least.
        for ce in c.iter() {
            for ae in a.iter() {
                let x = self.delta(ce, ae);
                assignment.entry(x).or_insert((ce, ae));
            }
        }
        let domain = FiniteSet::new(assignment.keys().copied());
        Ok(Section { domain, assignment })
    }

    /// Materializes `i(x,b) = (Δ(b,f(x)), Δ(b,g(x)))` on all of
    /// `Δ(C,A) × B` and decides injectivity.
    pub fn build_injection(
        &self,
        a: &FiniteSet,
        b: &FiniteSet,
        c: &FiniteSet,
    ) -> Result<InjectionWitness, DeltaError> {
        self.validate_members("B", b)?;
        let section = self.build_section(c, a)?;
        let mut entries = Vec::with_capacity(section.domain().len() * b.len());
        let mut seen: BTreeMap<(Element, Element), (Element, Element)> = BTreeMap::new();
        let mut collision = None;
        for x in section.domain().iter() {
            let (fx, gx) = section.pair(x).expect("x ranges over the section domain");
            for be in b.iter() {
                let value = (self.delta(be, fx), self.delta(be, gx));
                if collision.is_none() {
                    if let Some(&first) = seen.get(&value) {
                        collision = Some(InjectionCollision {
                            first,
                            second: (x, be),
                            value,
                        });
                    } else {
                        seen.insert(value, (x, be));
                    }
                }
                entries.push(InjectionEntry {
                    x,
                    b: be,
                    c: value.0,
                    d: value.1,
                });
            }
        }
        Ok(InjectionWitness {
            source_size: entries.len(),
            entries,
            is_injective: collision.is_none(),
            collision,
        })
    }

    /// Evaluates both sides of the Ruzsa triangle inequality and builds the
    /// witness injection.
    pub fn ruzsa_inequality(
        &self,
        a: &FiniteSet,
        b: &FiniteSet,
        c: &FiniteSet,
    ) -> Result<RuzsaCheck, DeltaError> {
        let lhs = self.delta_set(c, a)?.len() * b.len();
        let rhs = self.delta_set(b, c)?.len() * self.delta_set(b, a)?.len();
        let witness = self.build_injection(a, b, c)?;
        Ok(RuzsaCheck {
            lhs,
            rhs,
            holds: lhs <= rhs,
            witness,
        })
    }

    fn carrier_for_check(&self) -> Result<&[Element], DeltaError> {
        self.carrier.as_deref().ok_or(DeltaError::MissingCarrier)
    }

    /// Checks axiom 1, `Δ(Δ(a,b), Δ(a,c)) = Δ(b,c)`, reporting the first
    /// failing triple.
    pub fn check_axiom1(&self, mode: CheckMode) -> Result<AxiomReport, DeltaError> {
        let carrier = self.carrier_for_check()?;
        let mut checked = 0usize;
        let test = |a: Element, b: Element, c: Element| {
            self.delta(self.delta(a, b), self.delta(a, c)) == self.delta(b, c)
        };
        match mode {
            CheckMode::Exhaustive => {
                for &a in carrier {
                    for &b in carrier {
                        for &c in carrier {
                            checked += 1;
                            if !test(a, b, c) {
                                return Ok(AxiomReport {
                                    ok: false,
                                    checked,
                                    counterexample: Some([a, b, c]),
                                });
                            }
                        }
                    }
                }
            }
            CheckMode::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..count {
                    let a = carrier[rng.random_range(0..carrier.len())];
                    let b = carrier[rng.random_range(0..carrier.len())];
                    let c = carrier[rng.random_range(0..carrier.len())];
                    checked += 1;
                    if !test(a, b, c) {
                        return Ok(AxiomReport {
                            ok: false,
                            checked,
                            counterexample: Some([a, b, c]),
                        });
                    }
                }
            }
        }
        Ok(AxiomReport {
            ok: true,
            checked,
            counterexample: None,
        })
    }

    /// Checks axiom 2: for every fixed `a`, the map `z ↦ Δ(z,a)` is
    /// injective. A counterexample is reported as `(a, z, z')`.
    pub fn check_axiom2(&self, mode: CheckMode) -> Result<AxiomReport, DeltaError> {
        let carrier = self.carrier_for_check()?;
        let mut checked = 0usize;
        match mode {
            CheckMode::Exhaustive => {
                for &a in carrier {
                    let mut seen: BTreeMap<Element, Element> = BTreeMap::new();
                    for &z in carrier {
                        checked += 1;
                        let v = self.delta(z, a);
                        if let Some(&z0) = seen.get(&v) {
                            return Ok(AxiomReport {
                                ok: false,
                                checked,
                                counterexample: Some([a, z0, z]),
                            });
                        }
                        seen.insert(v, z);
                    }
                }
            }
            CheckMode::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                if carrier.len() > 1 {
                    for _ in 0..count {
                        let a = carrier[rng.random_range(0..carrier.len())];
                        let z = carrier[rng.random_range(0..carrier.len())];
                        let z2 = carrier[rng.random_range(0..carrier.len())];
                        if z == z2 {
                            continue;
                        }
                        checked += 1;
                        if self.delta(z, a) == self.delta(z2, a) {
                            return Ok(AxiomReport {
                                ok: false,
                                checked,
                                counterexample: Some([a, z.min(z2), z.max(z2)]),
                            });
                        }
                    }
                }
            }
        }
        Ok(AxiomReport {
            ok: true,
            checked,
            counterexample: None,
        })
    }

    /// Checks the weak axioms through the attached companions `F` and `G`.
    ///
    /// `ok1` covers `F(Δ(a,b), Δ(a,c)) = Δ(b,c)`, `ok2` the injectivity of
    /// `a ↦ G(Δ(a,b), b)` per fixed `b`. Both are verified on the carrier
    /// (the reachable values of `Δ`); behavior of `F` and `G` elsewhere is
    /// unconstrained.
    pub fn check_weak_axioms(&self, mode: CheckMode) -> Result<WeakAxiomReport, DeltaError> {
        let (weak_f, weak_g) = match (&self.weak_f, &self.weak_g) {
            (Some(f), Some(g)) => (f, g),
            _ => return Err(DeltaError::MissingWeakFunctions),
        };
        let carrier = self.carrier_for_check()?;
        let mut checked = 0usize;
        let mut counterexample_f = None;
        let mut counterexample_g = None;

        match mode {
            CheckMode::Exhaustive => {
                'outer_f: for &a in carrier {
                    for &b in carrier {
                        for &c in carrier {
                            checked += 1;
                            if weak_f(self.delta(a, b), self.delta(a, c)) != self.delta(b, c) {
                                counterexample_f = Some([a, b, c]);
                                break 'outer_f;
                            }
                        }
                    }
                }
                'outer_g: for &b in carrier {
                    let mut seen: BTreeMap<Element, Element> = BTreeMap::new();
                    for &a in carrier {
                        checked += 1;
                        let v = weak_g(self.delta(a, b), b);
                        if let Some(&a0) = seen.get(&v) {
                            counterexample_g = Some([b, a0, a]);
                            break 'outer_g;
                        }
                        seen.insert(v, a);
                    }
                }
            }
            CheckMode::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..count {
                    let a = carrier[rng.random_range(0..carrier.len())];
                    let b = carrier[rng.random_range(0..carrier.len())];
                    let c = carrier[rng.random_range(0..carrier.len())];
                    checked += 1;
                    if counterexample_f.is_none()
                        && weak_f(self.delta(a, b), self.delta(a, c)) != self.delta(b, c)
                    {
                        counterexample_f = Some([a, b, c]);
                    }
                    if counterexample_g.is_none() && a != c {
                        // reuse the triple: test injectivity witnesses (b; a, c)
                        let va = weak_g(self.delta(a, b), b);
                        let vc = weak_g(self.delta(c, b), b);
                        if va == vc {
                            counterexample_g = Some([b, a.min(c), a.max(c)]);
                        }
                    }
                    if counterexample_f.is_some() && counterexample_g.is_some() {
                        break;
                    }
                }
            }
        }

        Ok(WeakAxiomReport {
            ok1: counterexample_f.is_none(),
            ok2: counterexample_g.is_none(),
            checked,
            counterexample_f,
            counterexample_g,
        })
    }
}
