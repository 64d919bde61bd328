//! Probe functions, feature vectors and approximate descriptive nearness.
//!
//! Two entities are near when the Euclidean distance between their probe
//! vectors is strictly below a positive threshold. Distances are compared
//! exactly as squared rationals.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use thiserror::Error;

use crate::betti::{betti_rb, betti_triple, Structure};
use crate::fixedpoint::{gradient_angle, FixedPointError};
use crate::geometry::{int, Rational};
use crate::ribbon::{Ribbon, RibbonComplex, RibbonNerve, VortexNerve};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProximityError {
    #[error("probe `{probe}` does not apply to {kind} `{entity}`")]
    UnsupportedEntityKind { probe: String, kind: EntityKind, entity: String },
    #[error("unknown probe `{0}`")]
    UnknownProbe(String),
    #[error("no probes selected")]
    NoProbes,
    #[error("threshold must be positive")]
    NonPositiveThreshold,
    #[error(transparent)]
    FixedPoint(#[from] FixedPointError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKind {
    Ribbon,
    RibbonComplex,
    RibbonNerve,
    VortexNerve,
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EntityKind::Ribbon => "ribbon",
            EntityKind::RibbonComplex => "ribbon complex",
            EntityKind::RibbonNerve => "ribbon nerve",
            EntityKind::VortexNerve => "vortex nerve",
        })
    }
}

/// Anything a probe can describe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Entity {
    Ribbon(Ribbon),
    RibbonComplex(RibbonComplex),
    RibbonNerve(RibbonNerve),
    VortexNerve(VortexNerve),
}

impl Entity {
    pub fn name(&self) -> &str {
        match self {
            Entity::Ribbon(r) => r.label(),
            Entity::RibbonComplex(x) => x.label(),
            Entity::RibbonNerve(n) => n.label(),
            Entity::VortexNerve(v) => v.label(),
        }
    }

    pub fn kind(&self) -> EntityKind {
        match self {
            Entity::Ribbon(_) => EntityKind::Ribbon,
            Entity::RibbonComplex(_) => EntityKind::RibbonComplex,
            Entity::RibbonNerve(_) => EntityKind::RibbonNerve,
            Entity::VortexNerve(_) => EntityKind::VortexNerve,
        }
    }

    pub fn structure(&self) -> Structure<'_> {
        match self {
            Entity::Ribbon(r) => Structure::Ribbon(r),
            Entity::RibbonComplex(x) => Structure::RibbonComplex(x),
            Entity::RibbonNerve(n) => Structure::RibbonNerve(n),
            Entity::VortexNerve(v) => Structure::VortexNerve(v),
        }
    }
}

impl From<Ribbon> for Entity {
    fn from(r: Ribbon) -> Self {
        Entity::Ribbon(r)
    }
}

impl From<RibbonComplex> for Entity {
    fn from(x: RibbonComplex) -> Self {
        Entity::RibbonComplex(x)
    }
}

impl From<RibbonNerve> for Entity {
    fn from(n: RibbonNerve) -> Self {
        Entity::RibbonNerve(n)
    }
}

impl From<VortexNerve> for Entity {
    fn from(v: VortexNerve) -> Self {
        Entity::VortexNerve(v)
    }
}

pub type Evaluator = fn(&Probe, &Entity) -> Result<Rational, ProximityError>;

/// A named scalar descriptor.
#[derive(Clone, Copy)]
pub struct Probe {
    pub name: &'static str,
    evaluator: Evaluator,
}

impl fmt::Debug for Probe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Probe").field(&self.name).finish()
    }
}

impl PartialEq for Probe {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Probe {
    pub const fn new(name: &'static str, evaluator: Evaluator) -> Self {
        Self { name, evaluator }
    }

    pub fn evaluate(&self, e: &Entity) -> Result<Rational, ProximityError> {
        (self.evaluator)(self, e)
    }

    fn unsupported(&self, e: &Entity) -> ProximityError {
        ProximityError::UnsupportedEntityKind {
            probe: self.name.to_string(),
            kind: e.kind(),
            entity: e.name().to_string(),
        }
    }
}

fn ribbons_of(e: &Entity) -> Vec<&Ribbon> {
    match e {
        Entity::Ribbon(r) => vec![r],
        Entity::RibbonComplex(x) => x.ribbons().iter().collect(),
        Entity::RibbonNerve(n) => n.ribbons().iter().collect(),
        Entity::VortexNerve(_) => Vec::new(),
    }
}

fn count(n: usize) -> Rational {
    int(n as i64)
}

fn probe_b0(_: &Probe, e: &Entity) -> Result<Rational, ProximityError> {
    Ok(int(betti_triple(e.structure()).b0 as i64))
}

fn probe_b1(_: &Probe, e: &Entity) -> Result<Rational, ProximityError> {
    Ok(int(betti_triple(e.structure()).b1 as i64))
}

fn probe_b2(_: &Probe, e: &Entity) -> Result<Rational, ProximityError> {
    Ok(int(betti_triple(e.structure()).b2 as i64))
}

fn probe_betti_rb(p: &Probe, e: &Entity) -> Result<Rational, ProximityError> {
    match e {
        Entity::Ribbon(r) => Ok(int(betti_rb(r) as i64)),
        _ => Err(p.unsupported(e)),
    }
}

fn probe_ribbon_count(_: &Probe, e: &Entity) -> Result<Rational, ProximityError> {
    Ok(match e {
        Entity::VortexNerve(v) => count(v.cycles().len().saturating_sub(1)),
        _ => count(ribbons_of(e).len()),
    })
}

fn probe_gradient_angle(p: &Probe, e: &Entity) -> Result<Rational, ProximityError> {
    match e {
        Entity::Ribbon(r) => match r.filaments().first() {
            Some(fil) => Ok(gradient_angle(r, &fil.inner_vertex)?),
            None => Err(p.unsupported(e)),
        },
        _ => Err(p.unsupported(e)),
    }
}

fn probe_vertex_count(_: &Probe, e: &Entity) -> Result<Rational, ProximityError> {
    let mut ids = BTreeSet::new();
    let cycles: Vec<_> = match e {
        Entity::VortexNerve(v) => v.cycles().iter().collect(),
        _ => ribbons_of(e).into_iter().flat_map(|r| [r.outer(), r.inner()]).collect(),
    };
    for c in cycles {
        ids.extend(c.vertex_ids().iter().cloned());
    }
    Ok(count(ids.len()))
}

const REGISTRY: [Probe; 7] = [
    Probe::new("b0_filaments", probe_b0),
    Probe::new("b1_cycles", probe_b1),
    Probe::new("b2_holes", probe_b2),
    Probe::new("betti_rb", probe_betti_rb),
    Probe::new("ribbon_count", probe_ribbon_count),
    Probe::new("fixed_point_gradient_angle", probe_gradient_angle),
    Probe::new("vertex_count", probe_vertex_count),
];

pub fn probe_registry() -> Vec<Probe> {
    REGISTRY.to_vec()
}

/// Looks probes up by name; the result follows registry order.
pub fn select_probes<S: AsRef<str>>(names: &[S]) -> Result<Vec<Probe>, ProximityError> {
    for n in names {
        if !REGISTRY.iter().any(|p| p.name == n.as_ref()) {
            return Err(ProximityError::UnknownProbe(n.as_ref().to_string()));
        }
    }
    let selected: Vec<Probe> =
        REGISTRY.iter().filter(|p| names.iter().any(|n| n.as_ref() == p.name)).copied().collect();
    if selected.is_empty() {
        return Err(ProximityError::NoProbes);
    }
    Ok(selected)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeVector {
    pub names: Vec<String>,
    pub values: Vec<Rational>,
}

impl ProbeVector {
    pub fn distance_squared(&self, other: &ProbeVector) -> Rational {
        self.values.iter().zip(&other.values).map(|(a, b)| (a - b) * (a - b)).fold(Rational::zero(), |s, d| s + d)
    }
}

/// Strictly positive rational threshold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Threshold(Rational);

impl Threshold {
    pub fn new(th: Rational) -> Result<Self, ProximityError> {
        if th.is_positive() {
            Ok(Self(th))
        } else {
            Err(ProximityError::NonPositiveThreshold)
        }
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn admits(&self, distance_squared: &Rational) -> bool {
        *distance_squared < &self.0 * &self.0
    }
}

pub fn describe(e: &Entity, probes: &[Probe]) -> Result<ProbeVector, ProximityError> {
    if probes.is_empty() {
        return Err(ProximityError::NoProbes);
    }
    let values = probes.iter().map(|p| p.evaluate(e)).collect::<Result<_, _>>()?;
    Ok(ProbeVector { names: probes.iter().map(|p| p.name.to_string()).collect(), values })
}

pub fn distance_squared(a: &Entity, b: &Entity, probes: &[Probe]) -> Result<Rational, ProximityError> {
    Ok(describe(a, probes)?.distance_squared(&describe(b, probes)?))
}

pub fn dx_near(a: &Entity, b: &Entity, probes: &[Probe], th: &Threshold) -> Result<bool, ProximityError> {
    Ok(th.admits(&distance_squared(a, b, probes)?))
}

/// Plain descriptive nearness: identical descriptions.
pub fn d_near(a: &Entity, b: &Entity, probes: &[Probe]) -> Result<bool, ProximityError> {
    Ok(distance_squared(a, b, probes)?.is_zero())
}

/// Index pairs `(i, j)` with `ks[i]` near `ks2[j]`. Entities a probe cannot
/// describe are never near anything.
pub fn dx_intersection(ks: &[Entity], ks2: &[Entity], probes: &[Probe], th: &Threshold) -> Vec<(usize, usize)> {
    let left: Vec<_> = ks.iter().map(|e| describe(e, probes).ok()).collect();
    let right: Vec<_> = ks2.iter().map(|e| describe(e, probes).ok()).collect();
    let mut pairs = Vec::new();
    for (i, a) in left.iter().enumerate() {
        for (j, b) in right.iter().enumerate() {
            if let (Some(a), Some(b)) = (a, b) {
                if th.admits(&a.distance_squared(b)) {
                    pairs.push((i, j));
                }
            }
        }
    }
    pairs
}

/// Collections are near when some cross pair is near.
pub fn dx_near_collections(ks: &[Entity], ks2: &[Entity], probes: &[Probe], th: &Threshold) -> bool {
    ks.iter().any(|a| ks2.iter().any(|b| dx_near(a, b, probes, th).unwrap_or(false)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    /// The empty collection is near nothing.
    XdP0,
    /// Symmetry.
    XdP1,
    /// A nonempty approximate intersection implies nearness.
    XdP2,
    /// Nearness to a union is nearness to one of its parts.
    XdP3,
    /// Nearness implies a nonempty approximate intersection.
    Lemma,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Axiom::XdP0 => "xdP0",
            Axiom::XdP1 => "xdP1",
            Axiom::XdP2 => "xdP2",
            Axiom::XdP3 => "xdP3",
            Axiom::Lemma => "lemma",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub checks: BTreeMap<Axiom, usize>,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, axiom: Axiom, holds: bool, witness: impl FnOnce() -> String) {
        *self.checks.entry(axiom).or_default() += 1;
        if !holds {
            self.violations.push(Violation { axiom, witness: witness() });
        }
    }

    pub fn merge(&mut self, other: AxiomReport) {
        for (a, n) in other.checks {
            *self.checks.entry(a).or_default() += n;
        }
        self.violations.extend(other.violations);
    }
}

fn names(es: &[&Entity]) -> String {
    let v: Vec<&str> = es.iter().map(|e| e.name()).collect();
    format!("{{{}}}", v.join(", "))
}

/// Checks the proximity axioms on every pair of `universe` and on `trials`
/// random collection triples drawn with a seeded generator.
pub fn check_axioms(universe: &[Entity], probes: &[Probe], th: &Threshold, trials: usize, seed: u64) -> AxiomReport {
    let mut report = AxiomReport::default();
    let near = |a: &Entity, b: &Entity| dx_near(a, b, probes, th).unwrap_or(false);

    for a in universe {
        let single = std::slice::from_ref(a);
        let holds = !dx_near_collections(&[], single, probes, th)
            && !dx_near_collections(single, &[], probes, th)
            && dx_intersection(&[], single, probes, th).is_empty();
        report.record(Axiom::XdP0, holds, || format!("∅ near {}", a.name()));
    }

    for (i, a) in universe.iter().enumerate() {
        for (j, b) in universe.iter().enumerate() {
            let ab = near(a, b);
            report.record(Axiom::XdP1, ab == near(b, a), || format!("{} / {}", a.name(), b.name()));
            let cap = !dx_intersection(&universe[i..=i], &universe[j..=j], probes, th).is_empty();
            report.record(Axiom::XdP2, !cap || ab, || format!("{} dxcap {} but not near", a.name(), b.name()));
            report.record(Axiom::Lemma, !ab || cap, || format!("{} near {} but empty dxcap", a.name(), b.name()));
        }
    }

    let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
    let pick = |rng: &mut rand::rngs::StdRng| -> Vec<&Entity> {
        let n = rng.gen_range(0..=universe.len());
        let mut all: Vec<&Entity> = universe.iter().collect();
        all.shuffle(rng);
        all.truncate(n);
        all
    };
    for _ in 0..trials {
        let a = pick(&mut rng);
        let b = pick(&mut rng);
        let c = pick(&mut rng);
        let owned = |xs: &[&Entity]| xs.iter().map(|e| (*e).clone()).collect::<Vec<Entity>>();
        let (ao, bo, co) = (owned(&a), owned(&b), owned(&c));
        let mut union = bo.clone();
        union.extend(co.iter().cloned());
        let lhs = !dx_intersection(&ao, &union, probes, th).is_empty();
        let rhs = dx_near_collections(&ao, &bo, probes, th) || dx_near_collections(&ao, &co, probes, th);
        report.record(Axiom::XdP3, lhs == rhs, || format!("A={} B={} C={}", names(&a), names(&b), names(&c)));
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_ribbon;
    use crate::geometry::ratio;
    use proptest::prelude::*;

    fn universe(seed: u64, n: usize) -> Vec<Entity> {
        let mut rng = rand::rngs::StdRng::seed_from_u64(seed);
        (0..n).map(|i| Entity::Ribbon(random_ribbon(&mut rng, &format!("r{i}")).ribbon)).collect()
    }

    #[test]
    fn registry_names() {
        let names: Vec<&str> = probe_registry().iter().map(|p| p.name).collect();
        assert!(names.contains(&"b2_holes"));
        assert_eq!(names.len(), 7);
        assert!(matches!(select_probes(&["nope"]), Err(ProximityError::UnknownProbe(_))));
        let picked = select_probes(&["b2_holes", "b0_filaments"]).unwrap();
        assert_eq!(picked.iter().map(|p| p.name).collect::<Vec<_>>(), ["b0_filaments", "b2_holes"]);
    }

    #[test]
    fn threshold_is_positive() {
        assert!(Threshold::new(ratio(0, 1)).is_err());
        assert!(Threshold::new(ratio(-1, 3)).is_err());
        assert!(Threshold::new(ratio(1, 3)).is_ok());
    }

    #[test]
    fn strict_inequality() {
        let u = universe(11, 8);
        let probes = select_probes(&["b0_filaments", "b2_holes", "vertex_count"]).unwrap();
        for a in &u {
            for b in &u {
                let d2 = distance_squared(a, b, &probes).unwrap();
                let ones: Vec<i64> = (1..30).filter(|k| int(k * k) == d2).collect();
                if let Some(&k) = ones.first() {
                    assert!(!dx_near(a, b, &probes, &Threshold::new(int(k)).unwrap()).unwrap());
                    assert!(dx_near(a, b, &probes, &Threshold::new(int(k) + ratio(1, 100)).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn unsupported_kind() {
        let mut u = universe(2, 1);
        let probe = select_probes(&["betti_rb"]).unwrap();
        let Entity::Ribbon(r) = u.remove(0) else { unreachable!() };
        let x = Entity::RibbonComplex(RibbonComplex::new("x", vec![r]).unwrap());
        assert!(matches!(describe(&x, &probe), Err(ProximityError::UnsupportedEntityKind { .. })));
        assert!(dx_intersection(
            std::slice::from_ref(&x),
            std::slice::from_ref(&x),
            &probe,
            &Threshold::new(int(1)).unwrap()
        )
        .is_empty());
    }

    #[test]
    fn intersection_below_min_distance_is_empty() {
        let u = universe(5, 6);
        let probes = select_probes(&["vertex_count", "b2_holes"]).unwrap();
        let (left, right) = u.split_at(3);
        let min =
            left.iter().flat_map(|a| right.iter().map(|b| distance_squared(a, b, &probes).unwrap())).min().unwrap();
        if min.is_positive() {
            let th = Threshold::new(crate::geometry::sqrt_lower_bound(&min) * ratio(1, 2)).unwrap();
            assert!(dx_intersection(left, right, &probes, &th).is_empty());
        }
        assert!(dx_intersection(&[], right, &probes, &Threshold::new(int(100)).unwrap()).is_empty());
    }

    #[test]
    fn axioms_hold() {
        let u = universe(9, 6);
        let probes = probe_registry().into_iter().filter(|p| p.name != "betti_rb").collect::<Vec<_>>();
        for th in [ratio(1, 2), int(1), int(3)] {
            let report = check_axioms(&u, &probes, &Threshold::new(th).unwrap(), 50, 1);
            assert!(report.passed(), "{:?}", report.violations);
            assert_eq!(report.checks[&Axiom::XdP1], 36);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn reflexive_symmetric_monotone(seed in any::<u64>(), num in 1i64..40, den in 1i64..8) {
            let u = universe(seed, 3);
            let probes = select_probes(&["b0_filaments", "b1_cycles", "b2_holes", "vertex_count"]).unwrap();
            let th = Threshold::new(ratio(num, den)).unwrap();
            let wider = Threshold::new(ratio(num, den) + int(1)).unwrap();
            for a in &u {
                prop_assert!(dx_near(a, a, &probes, &th).unwrap());
                for b in &u {
                    let ab = dx_near(a, b, &probes, &th).unwrap();
                    prop_assert_eq!(ab, dx_near(b, a, &probes, &th).unwrap());
                    if ab {
                        prop_assert!(dx_near(a, b, &probes, &wider).unwrap());
                    }
                }
            }
        }
    }
}
