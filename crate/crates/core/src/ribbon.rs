//! Filled cycles, ribbons, ribbon complexes, ribbon nerves and vortex nerves.

use std::fmt;

use thiserror::Error;

use crate::cw::{CellComplex, CwError, VertexId};
use crate::geometry::{
    locate, segment_intersection, simple_polygon, vertex_centroid, GeometryError, Location, Point2, SegmentIntersection,
};
use crate::nerve::{common_witness, Region};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Cw(#[from] CwError),
    #[error("cycle `{inner}` is not nested in `{outer}`")]
    NotNested { inner: String, outer: String },
    #[error("cycles `{0}` and `{1}` are concentric")]
    ConcentricCycles(String, String),
    #[error("hole `{0}` is not strictly inside the ribbon")]
    HoleOutsideRibbon(String),
    #[error("filament {0} does not join the outer and inner cycle")]
    FilamentEndpointOffBoundary(Filament),
    #[error("filament {0} crosses a cycle boundary")]
    FilamentCrossesLoop(Filament),
    #[error("filaments {0} and {1} cross")]
    FilamentsCross(Filament, Filament),
    #[error("need at least {needed} cycles, got {got}")]
    TooFewCycles { needed: usize, got: usize },
    #[error("a ribbon complex needs at least one ribbon")]
    EmptyRibbonComplex,
    #[error("a ribbon nerve needs at least one ribbon")]
    EmptyRibbonNerve,
    #[error("ribbons of nerve `{0}` have no common point")]
    NoCommonIntersection(String),
}

/// A simple closed polygon together with its interior.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FilledCycle {
    label: String,
    vertex_ids: Vec<VertexId>,
    points: Vec<Point2>,
}

impl FilledCycle {
    /// Registers the loop in `k`, adding any missing loop edges.
    pub fn new(k: &mut CellComplex, label: impl Into<String>, loop_ids: &[VertexId]) -> Result<Self, RibbonError> {
        let points = k.points(loop_ids)?;
        if !simple_polygon(&points)? {
            return Err(GeometryError::NonSimplePolygon.into());
        }
        let n = loop_ids.len();
        for i in 0..n {
            k.add_edge(&loop_ids[i], &loop_ids[(i + 1) % n])?;
        }
        Ok(Self { label: label.into(), vertex_ids: loop_ids.to_vec(), points })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.vertex_ids
    }

    pub fn points(&self) -> &[Point2] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn position(&self, id: &VertexId) -> Option<usize> {
        self.vertex_ids.iter().position(|v| v == id)
    }

    pub fn locate(&self, p: &Point2) -> Location {
        locate(p, &self.points)
    }

    fn edges(&self) -> impl Iterator<Item = (&Point2, &Point2)> {
        crate::geometry::loop_edges(&self.points)
    }
}

/// Every vertex of `inner` strictly inside `outer` and no boundary contact.
pub fn is_nested(inner: &FilledCycle, outer: &FilledCycle) -> bool {
    if !inner.points.iter().all(|p| outer.locate(p) == Location::Inside) {
        return false;
    }
    inner
        .edges()
        .all(|(a, b)| outer.edges().all(|(c, d)| segment_intersection(a, b, c, d) == SegmentIntersection::Empty))
}

/// Vertex centroids coincide.
pub fn is_concentric(a: &FilledCycle, b: &FilledCycle) -> bool {
    vertex_centroid(&a.points) == vertex_centroid(&b.points)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hole {
    pub marker: Point2,
    pub label: String,
}

impl Hole {
    pub fn new(label: impl Into<String>, marker: Point2) -> Self {
        Self { marker, label: label.into() }
    }
}

/// An edge joining a vertex of an outer cycle to a vertex of the cycle nested in it.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Filament {
    pub outer_vertex: VertexId,
    pub inner_vertex: VertexId,
}

impl Filament {
    pub fn new(outer_vertex: impl Into<VertexId>, inner_vertex: impl Into<VertexId>) -> Self {
        Self { outer_vertex: outer_vertex.into(), inner_vertex: inner_vertex.into() }
    }
}

impl fmt::Display for Filament {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.outer_vertex, self.inner_vertex)
    }
}

/// Checks the filament joins `outer` to `inner` without crossing either loop.
fn check_filament(fil: &Filament, outer: &FilledCycle, inner: &FilledCycle) -> Result<(), RibbonError> {
    let (Some(qi), Some(pi)) = (outer.position(&fil.outer_vertex), inner.position(&fil.inner_vertex)) else {
        return Err(RibbonError::FilamentEndpointOffBoundary(fil.clone()));
    };
    let q = &outer.points[qi];
    let p = &inner.points[pi];
    let touches_only = |cycle: &FilledCycle, end: &Point2| {
        cycle.edges().all(|(a, b)| match segment_intersection(q, p, a, b) {
            SegmentIntersection::Empty => true,
            SegmentIntersection::Point(x) => x == *end,
            SegmentIntersection::Overlap(..) => false,
        })
    };
    if touches_only(outer, q) && touches_only(inner, p) {
        Ok(())
    } else {
        Err(RibbonError::FilamentCrossesLoop(fil.clone()))
    }
}

/// Filaments may share an endpoint but must not otherwise meet.
fn check_filaments_disjoint(
    filaments: &[Filament],
    outer: &FilledCycle,
    inner: &FilledCycle,
) -> Result<(), RibbonError> {
    let ends = |f: &Filament| -> Option<(Point2, Point2)> {
        let q = outer.points.get(outer.position(&f.outer_vertex)?)?.clone();
        let p = inner.points.get(inner.position(&f.inner_vertex)?)?.clone();
        Some((q, p))
    };
    for (i, a) in filaments.iter().enumerate() {
        for b in &filaments[i + 1..] {
            let (Some((aq, ap)), Some((bq, bp))) = (ends(a), ends(b)) else { continue };
            let ok = match segment_intersection(&aq, &ap, &bq, &bp) {
                SegmentIntersection::Empty => true,
                SegmentIntersection::Point(x) => (x == aq || x == ap) && (x == bq || x == bp),
                SegmentIntersection::Overlap(..) => false,
            };
            if !ok {
                return Err(RibbonError::FilamentsCross(a.clone(), b.clone()));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RibbonMembership {
    InRibbon,
    OnOuterBoundary,
    OnInnerBoundary,
    InRemovedInterior,
    Outside,
}

impl RibbonMembership {
    /// Member of the ribbon's closed point set.
    pub fn in_closure(self) -> bool {
        matches!(self, Self::InRibbon | Self::OnOuterBoundary | Self::OnInnerBoundary)
    }
}

/// Inputs to [`make_ribbon`].
#[derive(Debug, Clone)]
pub struct RibbonParts {
    pub label: String,
    pub outer: FilledCycle,
    pub inner: FilledCycle,
    pub filaments: Vec<Filament>,
    pub holes: Vec<Hole>,
    pub allow_concentric: bool,
}

impl RibbonParts {
    pub fn new(label: impl Into<String>, outer: FilledCycle, inner: FilledCycle) -> Self {
        Self { label: label.into(), outer, inner, filaments: Vec::new(), holes: Vec::new(), allow_concentric: false }
    }

    pub fn filaments(mut self, filaments: Vec<Filament>) -> Self {
        self.filaments = filaments;
        self
    }

    pub fn holes(mut self, holes: Vec<Hole>) -> Self {
        self.holes = holes;
        self
    }

    pub fn allow_concentric(mut self, allow: bool) -> Self {
        self.allow_concentric = allow;
        self
    }
}

/// Closure of the outer filled cycle minus the open interior of the inner one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ribbon {
    label: String,
    outer: FilledCycle,
    inner: FilledCycle,
    filaments: Vec<Filament>,
    holes: Vec<Hole>,
}

impl Ribbon {
    /// Validates the parts without touching any complex.
    pub fn assemble(parts: RibbonParts) -> Result<Self, RibbonError> {
        let RibbonParts { label, outer, inner, filaments, holes, allow_concentric } = parts;
        if !is_nested(&inner, &outer) {
            return Err(RibbonError::NotNested { inner: inner.label.clone(), outer: outer.label.clone() });
        }
        if !allow_concentric && is_concentric(&outer, &inner) {
            return Err(RibbonError::ConcentricCycles(outer.label.clone(), inner.label.clone()));
        }
        for hole in &holes {
            if outer.locate(&hole.marker) != Location::Inside || inner.locate(&hole.marker) != Location::Outside {
                return Err(RibbonError::HoleOutsideRibbon(hole.label.clone()));
            }
        }
        for fil in &filaments {
            check_filament(fil, &outer, &inner)?;
        }
        check_filaments_disjoint(&filaments, &outer, &inner)?;
        Ok(Self { label, outer, inner, filaments, holes })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn outer(&self) -> &FilledCycle {
        &self.outer
    }

    pub fn inner(&self) -> &FilledCycle {
        &self.inner
    }

    pub fn filaments(&self) -> &[Filament] {
        &self.filaments
    }

    pub fn holes(&self) -> &[Hole] {
        &self.holes
    }

    /// Both filament endpoints as points `(outer q, inner p)`.
    pub fn filament_points(&self, fil: &Filament) -> Option<(&Point2, &Point2)> {
        let q = self.outer.position(&fil.outer_vertex)?;
        let p = self.inner.position(&fil.inner_vertex)?;
        Some((&self.outer.points[q], &self.inner.points[p]))
    }

    pub fn membership(&self, p: &Point2) -> RibbonMembership {
        ribbon_membership(self, p)
    }

    /// The ribbon's closed point set as a nerve region.
    pub fn region(&self) -> Region {
        Region::new(self.label.clone(), self.outer.points.clone(), vec![self.inner.points.clone()])
    }
}

/// Validates a ribbon and records its filament edges in `k`.
pub fn make_ribbon(k: &mut CellComplex, parts: RibbonParts) -> Result<Ribbon, RibbonError> {
    let ribbon = Ribbon::assemble(parts)?;
    for fil in &ribbon.filaments {
        k.add_edge(&fil.outer_vertex, &fil.inner_vertex)?;
    }
    Ok(ribbon)
}

pub fn ribbon_membership(r: &Ribbon, p: &Point2) -> RibbonMembership {
    match r.outer.locate(p) {
        Location::Outside => RibbonMembership::Outside,
        Location::OnBoundary => RibbonMembership::OnOuterBoundary,
        Location::Inside => match r.inner.locate(p) {
            Location::OnBoundary => RibbonMembership::OnInnerBoundary,
            Location::Inside => RibbonMembership::InRemovedInterior,
            Location::Outside => RibbonMembership::InRibbon,
        },
    }
}

/// Nonempty collection of ribbons.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonComplex {
    label: String,
    ribbons: Vec<Ribbon>,
}

impl RibbonComplex {
    pub fn new(label: impl Into<String>, ribbons: Vec<Ribbon>) -> Result<Self, RibbonError> {
        if ribbons.is_empty() {
            return Err(RibbonError::EmptyRibbonComplex);
        }
        Ok(Self { label: label.into(), ribbons })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ribbons(&self) -> &[Ribbon] {
        &self.ribbons
    }
}

/// Nonempty group of ribbons with a common point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RibbonNerve {
    label: String,
    ribbons: Vec<Ribbon>,
}

impl RibbonNerve {
    pub fn new(label: impl Into<String>, ribbons: Vec<Ribbon>) -> Result<Self, RibbonError> {
        let label = label.into();
        if ribbons.is_empty() {
            return Err(RibbonError::EmptyRibbonNerve);
        }
        let regions: Vec<Region> = ribbons.iter().map(Ribbon::region).collect();
        match common_witness(&regions) {
            Ok(Some(_)) => Ok(Self { label, ribbons }),
            _ => Err(RibbonError::NoCommonIntersection(label)),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn ribbons(&self) -> &[Ribbon] {
        &self.ribbons
    }

    pub fn labels(&self) -> Vec<&str> {
        self.ribbons.iter().map(Ribbon::label).collect()
    }
}

/// Nesting chain of filled cycles, stored innermost first, with filaments
/// joining adjacent cycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VortexNerve {
    label: String,
    cycles: Vec<FilledCycle>,
    filaments: Vec<Filament>,
}

impl VortexNerve {
    pub fn new(
        label: impl Into<String>,
        cycles: Vec<FilledCycle>,
        filaments: Vec<Filament>,
    ) -> Result<Self, RibbonError> {
        if cycles.is_empty() {
            return Err(RibbonError::TooFewCycles { needed: 1, got: 0 });
        }
        for pair in cycles.windows(2) {
            if !is_nested(&pair[0], &pair[1]) {
                return Err(RibbonError::NotNested { inner: pair[0].label.clone(), outer: pair[1].label.clone() });
            }
        }
        let nerve = Self { label: label.into(), cycles, filaments };
        for fil in &nerve.filaments {
            let level =
                nerve.filament_level(fil).ok_or_else(|| RibbonError::FilamentEndpointOffBoundary(fil.clone()))?;
            check_filament(fil, &nerve.cycles[level + 1], &nerve.cycles[level])?;
        }
        Ok(nerve)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn cycles(&self) -> &[FilledCycle] {
        &self.cycles
    }

    pub fn filaments(&self) -> &[Filament] {
        &self.filaments
    }

    /// Index `i` such that the filament joins cycle `i + 1` (outer) to cycle `i`.
    fn filament_level(&self, fil: &Filament) -> Option<usize> {
        (0..self.cycles.len().saturating_sub(1)).find(|&i| {
            self.cycles[i + 1].position(&fil.outer_vertex).is_some()
                && self.cycles[i].position(&fil.inner_vertex).is_some()
        })
    }

    /// Adjacent pairs `(i, i + 1)` whose vertex centroids coincide.
    pub fn concentric_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.cycles.len().saturating_sub(1))
            .filter(|&i| is_concentric(&self.cycles[i], &self.cycles[i + 1]))
            .map(|i| (i, i + 1))
            .collect()
    }
}

/// The `k - 1` ribbons formed by adjacent cycles, innermost first.
pub fn ribbons_of_vortex_nerve(v: &VortexNerve) -> Result<Vec<Ribbon>, RibbonError> {
    let k = v.cycles.len();
    if k < 2 {
        return Err(RibbonError::TooFewCycles { needed: 2, got: k });
    }
    (0..k - 1)
        .map(|i| {
            let filaments = v.filaments.iter().filter(|f| v.filament_level(f) == Some(i)).cloned().collect();
            let parts = RibbonParts::new(format!("{}.rb{}", v.label, i), v.cycles[i + 1].clone(), v.cycles[i].clone())
                .filaments(filaments)
                .allow_concentric(true);
            Ribbon::assemble(parts)
        })
        .collect()
}

/// The `k - 2` ribbon nerves pairing adjacent ribbons that share a cycle.
pub fn ribbon_nerves_of_vortex_nerve(v: &VortexNerve) -> Result<Vec<RibbonNerve>, RibbonError> {
    let k = v.cycles.len();
    if k < 3 {
        return Err(RibbonError::TooFewCycles { needed: 3, got: k });
    }
    let ribbons = ribbons_of_vortex_nerve(v)?;
    ribbons
        .windows(2)
        .enumerate()
        .map(|(i, pair)| RibbonNerve::new(format!("{}.rbNrv{}", v.label, i), pair.to_vec()))
        .collect()
}
