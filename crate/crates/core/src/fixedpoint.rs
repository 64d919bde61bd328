//! Fixed cells of finite cell maps and gradient angles at inner-boundary vertices.
//!
//! A finite self-map of cells need not fix anything (a rotation of a hollow
//! triangle fixes no cell), so fixed cells are searched for and an empty
//! result is reported rather than ruled out.

use std::collections::{BTreeMap, BTreeSet};
use std::f64::consts::PI;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::cw::{CellId, CwError, VertexId};
use crate::geometry::{Point2, Rational};
use crate::ribbon::{Filament, Ribbon};

/// Angles are reported on this rational grid.
pub const ANGLE_DENOMINATOR: i64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixedPointError {
    #[error("map is not defined on cell {0}")]
    PartialMap(CellId),
    #[error("image {1} of cell {0} is not in the domain")]
    ImageOutsideDomain(CellId, CellId),
    #[error("filament {0} does not belong to ribbon `{1}`")]
    FilamentNotInRibbon(Filament, String),
    #[error("vertex `{0}` is not on the inner boundary of ribbon `{1}`")]
    VertexNotOnInnerBoundary(VertexId, String),
    #[error(transparent)]
    Cw(#[from] CwError),
}

/// A total map from a finite cell set to itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellMap {
    domain: BTreeSet<CellId>,
    mapping: BTreeMap<CellId, CellId>,
}

impl CellMap {
    pub fn new(domain: BTreeSet<CellId>, mapping: BTreeMap<CellId, CellId>) -> Result<Self, FixedPointError> {
        for c in &domain {
            match mapping.get(c) {
                None => return Err(FixedPointError::PartialMap(c.clone())),
                Some(img) if !domain.contains(img) => {
                    return Err(FixedPointError::ImageOutsideDomain(c.clone(), img.clone()))
                }
                Some(_) => {}
            }
        }
        let mapping = mapping.into_iter().filter(|(c, _)| domain.contains(c)).collect();
        Ok(Self { domain, mapping })
    }

    pub fn identity(domain: BTreeSet<CellId>) -> Self {
        let mapping = domain.iter().map(|c| (c.clone(), c.clone())).collect();
        Self { domain, mapping }
    }

    /// Map induced on cells by a vertex map; a cell whose vertices collapse
    /// goes to the lower-dimensional cell they span.
    pub fn from_vertex_map(
        domain: BTreeSet<CellId>,
        vertex_map: &BTreeMap<VertexId, VertexId>,
    ) -> Result<Self, FixedPointError> {
        let mut mapping = BTreeMap::new();
        for c in &domain {
            let mut image: Vec<VertexId> = Vec::new();
            for v in c.vertices() {
                let w = vertex_map.get(v).ok_or_else(|| FixedPointError::PartialMap(CellId::vertex(v.clone())))?;
                if !image.contains(w) {
                    image.push(w.clone());
                }
            }
            mapping.insert(c.clone(), CellId::new(image)?);
        }
        Self::new(domain, mapping)
    }

    pub fn domain(&self) -> &BTreeSet<CellId> {
        &self.domain
    }

    pub fn apply(&self, c: &CellId) -> Option<&CellId> {
        self.mapping.get(c)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &CellMap) -> Result<CellMap, FixedPointError> {
        let mapping = other
            .mapping
            .iter()
            .map(|(c, mid)| {
                let img = self.apply(mid).ok_or_else(|| FixedPointError::PartialMap(mid.clone()))?;
                Ok((c.clone(), img.clone()))
            })
            .collect::<Result<_, FixedPointError>>()?;
        CellMap::new(other.domain.clone(), mapping)
    }
}

pub fn fixed_cells(m: &CellMap) -> BTreeSet<CellId> {
    m.mapping.iter().filter(|(c, img)| c == img).map(|(c, _)| c.clone()).collect()
}

/// Collapses filament `pq` onto its inner endpoint `p`; every other filament
/// cell of the ribbon is fixed.
pub fn filament_retraction_map(r: &Ribbon, fil: &Filament) -> Result<CellMap, FixedPointError> {
    if !r.filaments().contains(fil) {
        return Err(FixedPointError::FilamentNotInRibbon(fil.clone(), r.label().to_string()));
    }
    let mut domain = BTreeSet::new();
    for f in r.filaments() {
        let edge = CellId::edge(f.outer_vertex.clone(), f.inner_vertex.clone())?;
        domain.extend(edge.faces());
        domain.insert(edge);
    }
    let p = CellId::vertex(fil.inner_vertex.clone());
    let q = CellId::vertex(fil.outer_vertex.clone());
    let pq = CellId::edge(fil.outer_vertex.clone(), fil.inner_vertex.clone())?;
    let mapping = domain
        .iter()
        .map(|c| {
            let img = if *c == q || *c == pq { p.clone() } else { c.clone() };
            (c.clone(), img)
        })
        .collect();
    CellMap::new(domain, mapping)
}

/// Rounds an angle to the nearest multiple of 1e-6 inside (-π, π].
pub fn quantize_angle(theta: f64) -> Rational {
    let mut t = theta;
    while t <= -PI {
        t += 2.0 * PI;
    }
    while t > PI {
        t -= 2.0 * PI;
    }
    let d = ANGLE_DENOMINATOR as f64;
    let top = (PI * d).floor() as i64;
    let k = ((t * d).round() as i64).clamp(-top, top);
    Rational::new(k.into(), ANGLE_DENOMINATOR.into())
}

/// Direction of the tangent at inner-boundary vertex `p`: the bisector of the
/// incoming and outgoing loop edges; for a straight reversal, the left normal
/// of the incoming edge.
pub fn gradient_angle(r: &Ribbon, p: &VertexId) -> Result<Rational, FixedPointError> {
    let inner = r.inner();
    let i =
        inner.position(p).ok_or_else(|| FixedPointError::VertexNotOnInnerBoundary(p.clone(), r.label().to_string()))?;
    let pts = inner.points();
    let n = pts.len();
    let (prev, here, next) = (&pts[(i + n - 1) % n], &pts[i], &pts[(i + 1) % n]);
    Ok(quantize_angle(bisector_angle(prev, here, next)))
}

fn bisector_angle(prev: &Point2, here: &Point2, next: &Point2) -> f64 {
    let (ix, iy) = (&here.x - &prev.x, &here.y - &prev.y);
    let (ox, oy) = (&next.x - &here.x, &next.y - &here.y);
    let cross = &ix * &oy - &iy * &ox;
    let dot = &ix * &ox + &iy * &oy;
    if cross.is_zero() && dot.is_negative() {
        let (nx, ny) = (-iy, ix);
        return f(&ny).atan2(f(&nx));
    }
    let (ix, iy, ox, oy) = (f(&ix), f(&iy), f(&ox), f(&oy));
    let li = ix.hypot(iy);
    let lo = ox.hypot(oy);
    let (bx, by) = (ix / li + ox / lo, iy / li + oy / lo);
    by.atan2(bx)
}

fn f(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}
