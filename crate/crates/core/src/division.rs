//! Division of a bounded frame by a ribbon into the outside, the ribbon
//! annulus and the closed inner cycle.
//!
//! Boundary ownership: outer-loop points belong to the annulus, inner-loop
//! points to the inner region.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::geometry::{
    int, locate, loop_edges, segment_distance_squared, sqrt_lower_bound, Location, Point2, Rational,
};
use crate::ribbon::{ribbon_membership, Ribbon, RibbonMembership};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DivisionError {
    #[error("point {0} is outside the frame")]
    PointOutsideFrame(String),
    #[error("frame does not strictly contain the outer loop of `{0}`")]
    FrameTooSmall(String),
    #[error("frame corners are not ordered")]
    DegenerateFrame,
    #[error("grid density must be positive")]
    ZeroDensity,
}

/// Axis-aligned closed rectangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    pub min: Point2,
    pub max: Point2,
}

impl Frame {
    pub fn new(min: Point2, max: Point2) -> Result<Self, DivisionError> {
        if min.x < max.x && min.y < max.y {
            Ok(Self { min, max })
        } else {
            Err(DivisionError::DegenerateFrame)
        }
    }

    /// Bounding box of `points` grown by `margin` on every side.
    pub fn around(points: &[Point2], margin: &Rational) -> Result<Self, DivisionError> {
        let first = points.first().ok_or(DivisionError::DegenerateFrame)?;
        let (mut lo, mut hi) = (first.clone(), first.clone());
        for p in points {
            lo = Point2::new(lo.x.clone().min(p.x.clone()), lo.y.clone().min(p.y.clone()));
            hi = Point2::new(hi.x.clone().max(p.x.clone()), hi.y.clone().max(p.y.clone()));
        }
        Self::new(lo.translate(&-margin.clone(), &-margin.clone()), hi.translate(margin, margin))
    }

    pub fn contains(&self, p: &Point2) -> bool {
        self.min.x <= p.x && p.x <= self.max.x && self.min.y <= p.y && p.y <= self.max.y
    }

    pub fn strictly_contains(&self, p: &Point2) -> bool {
        self.min.x < p.x && p.x < self.max.x && self.min.y < p.y && p.y < self.max.y
    }

    pub fn width(&self) -> Rational {
        &self.max.x - &self.min.x
    }

    pub fn height(&self) -> Rational {
        &self.max.y - &self.min.y
    }

    pub fn corners(&self) -> [Point2; 4] {
        [
            self.min.clone(),
            Point2::new(self.max.x.clone(), self.min.y.clone()),
            self.max.clone(),
            Point2::new(self.min.x.clone(), self.max.y.clone()),
        ]
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Self {
        Self { min: self.min.translate(dx, dy), max: self.max.translate(dx, dy) }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RegionLabel {
    Pi1Outside,
    Pi2Annulus,
    Pi3Inner,
}

impl RegionLabel {
    pub const ALL: [RegionLabel; 3] = [RegionLabel::Pi1Outside, RegionLabel::Pi2Annulus, RegionLabel::Pi3Inner];

    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::Pi1Outside => "pi1_outside",
            RegionLabel::Pi2Annulus => "pi2_annulus",
            RegionLabel::Pi3Inner => "pi3_inner",
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

fn check_frame(r: &Ribbon, f: &Frame) -> Result<(), DivisionError> {
    if r.outer().points().iter().all(|p| f.strictly_contains(p)) {
        Ok(())
    } else {
        Err(DivisionError::FrameTooSmall(r.label().to_string()))
    }
}

fn classify_unchecked(r: &Ribbon, p: &Point2) -> RegionLabel {
    if r.inner().locate(p) != Location::Outside {
        RegionLabel::Pi3Inner
    } else if r.outer().locate(p) != Location::Outside {
        RegionLabel::Pi2Annulus
    } else {
        RegionLabel::Pi1Outside
    }
}

pub fn classify_region(r: &Ribbon, f: &Frame, p: &Point2) -> Result<RegionLabel, DivisionError> {
    check_frame(r, f)?;
    if !f.contains(p) {
        return Err(DivisionError::PointOutsideFrame(format!("{p}")));
    }
    Ok(classify_unchecked(r, p))
}

/// An interior point and a radius such that the open disk around the point
/// stays in its region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClearanceWitness {
    pub point: Point2,
    pub radius: Rational,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartitionReport {
    pub samples: usize,
    pub counts: BTreeMap<RegionLabel, usize>,
    /// Points matched by more than one region predicate.
    pub multiply_labeled: Vec<Point2>,
    /// Points matched by none.
    pub unlabeled: Vec<Point2>,
    /// Points where the classifier disagrees with the region predicates.
    pub misclassified: Vec<Point2>,
    pub outside_frame: usize,
    pub witnesses: BTreeMap<RegionLabel, ClearanceWitness>,
}

impl PartitionReport {
    pub fn singly_labeled(&self) -> bool {
        self.multiply_labeled.is_empty() && self.unlabeled.is_empty() && self.misclassified.is_empty()
    }

    pub fn unrealized(&self) -> Vec<RegionLabel> {
        RegionLabel::ALL.into_iter().filter(|l| self.counts.get(l).copied().unwrap_or(0) == 0).collect()
    }

    pub fn all_realized(&self) -> bool {
        self.unrealized().is_empty()
    }

    pub fn all_witnessed(&self) -> bool {
        RegionLabel::ALL.iter().all(|l| self.witnesses.get(l).is_some_and(|w| !w.radius.is_zero()))
    }

    pub fn passed(&self) -> bool {
        self.singly_labeled() && self.all_realized() && self.all_witnessed() && self.outside_frame == 0
    }
}

/// Labels by three separate predicates; exactly one should hold.
fn predicate_labels(r: &Ribbon, f: &Frame, p: &Point2) -> Vec<RegionLabel> {
    let mut out = Vec::new();
    let in_frame = f.contains(p);
    if in_frame && locate(p, r.outer().points()) == Location::Outside {
        out.push(RegionLabel::Pi1Outside);
    }
    if matches!(ribbon_membership(r, p), RibbonMembership::InRibbon | RibbonMembership::OnOuterBoundary) {
        out.push(RegionLabel::Pi2Annulus);
    }
    if locate(p, r.inner().points()) != Location::Outside {
        out.push(RegionLabel::Pi3Inner);
    }
    out
}

fn lattice(f: &Frame, n: usize) -> Vec<Point2> {
    let (w, h) = (f.width(), f.height());
    let nn = int(n as i64);
    let two = int(2);
    let mut pts = Vec::with_capacity(n * n);
    for i in 0..n {
        let x = &f.min.x + &w * (int(2 * i as i64 + 1)) / (&nn * &two);
        for j in 0..n {
            let y = &f.min.y + &h * (int(2 * j as i64 + 1)) / (&nn * &two);
            pts.push(Point2::new(x.clone(), y));
        }
    }
    pts
}

/// Midpoints of the gaps between consecutive crossings of horizontal lines
/// placed between successive vertex heights.
fn scanline_points(r: &Ribbon, f: &Frame) -> Vec<Point2> {
    let loops = [r.outer().points(), r.inner().points()];
    let mut ys: Vec<Rational> = loops.iter().flat_map(|l| l.iter().map(|p| p.y.clone())).collect();
    ys.push(f.min.y.clone());
    ys.push(f.max.y.clone());
    ys.sort();
    ys.dedup();
    let mut out = Vec::new();
    for pair in ys.windows(2) {
        let y = (&pair[0] + &pair[1]) / int(2);
        let mut xs = vec![f.min.x.clone(), f.max.x.clone()];
        for l in loops {
            for (a, b) in loop_edges(l) {
                if (a.y < y) != (b.y < y) {
                    xs.push(&a.x + (&y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y));
                }
            }
        }
        xs.sort();
        xs.dedup();
        out.extend(xs.windows(2).map(|g| Point2::new((&g[0] + &g[1]) / int(2), y.clone())));
    }
    out
}

fn clearance(r: &Ribbon, f: &Frame, p: &Point2) -> Rational {
    let corners = f.corners();
    loop_edges(r.outer().points())
        .chain(loop_edges(r.inner().points()))
        .chain(loop_edges(&corners))
        .map(|(a, b)| segment_distance_squared(p, a, b))
        .min()
        .unwrap_or_else(Rational::zero)
}

pub fn verify_partition(r: &Ribbon, f: &Frame, grid_density: usize) -> Result<PartitionReport, DivisionError> {
    check_frame(r, f)?;
    if grid_density == 0 {
        return Err(DivisionError::ZeroDensity);
    }
    let mut samples = lattice(f, grid_density);
    for l in [r.outer().points(), r.inner().points()] {
        samples.extend(l.iter().cloned());
        samples.extend(loop_edges(l).map(|(a, b)| a.midpoint(b)));
    }

    let mut report = PartitionReport { samples: samples.len(), ..Default::default() };
    for p in &samples {
        if !f.contains(p) {
            report.outside_frame += 1;
            continue;
        }
        let labels = predicate_labels(r, f, p);
        match labels.as_slice() {
            [] => report.unlabeled.push(p.clone()),
            [one] => {
                *report.counts.entry(*one).or_default() += 1;
                if classify_unchecked(r, p) != *one {
                    report.misclassified.push(p.clone());
                }
            }
            _ => report.multiply_labeled.push(p.clone()),
        }
    }

    let mut best: BTreeMap<RegionLabel, (Rational, Point2)> = BTreeMap::new();
    for p in scanline_points(r, f) {
        let label = classify_unchecked(r, &p);
        let d2 = clearance(r, f, &p);
        if best.get(&label).is_none_or(|(d, _)| d2 > *d) {
            best.insert(label, (d2, p));
        }
    }
    report.witnesses = best
        .into_iter()
        .map(|(l, (d2, point))| (l, ClearanceWitness { point, radius: sqrt_lower_bound(&d2) }))
        .collect();
    Ok(report)
}
