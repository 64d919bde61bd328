//! Random valid inputs: integer-coordinate ribbons and axis-aligned rectangle
//! families. Used by the property tests and the `acceptance` target.

use std::f64::consts::TAU;

use rand::Rng;

use crate::cw::{CellComplex, VertexId};
use crate::geometry::{int, simple_polygon, Location, Point2};
use crate::nerve::Region;
use crate::ribbon::{Filament, FilledCycle, Hole, Ribbon, RibbonParts};

/// Coordinates are drawn from `[-COORD_LIMIT, COORD_LIMIT]`.
pub const COORD_LIMIT: i64 = 20;

#[derive(Debug, Clone)]
pub struct GeneratedRibbon {
    pub complex: CellComplex,
    pub ribbon: Ribbon,
}

fn star_polygon<R: Rng>(rng: &mut R, cx: f64, cy: f64, r_min: f64, r_max: f64) -> Vec<(i64, i64)> {
    let n = rng.gen_range(4..=8);
    let phase = rng.gen_range(0.0..TAU);
    let step = TAU / n as f64;
    (0..n)
        .map(|i| {
            let a = phase + step * (i as f64 + rng.gen_range(-0.3..0.3));
            let r = rng.gen_range(r_min..=r_max);
            let x = (cx + r * a.cos()).round() as i64;
            let y = (cy + r * a.sin()).round() as i64;
            (x.clamp(-COORD_LIMIT, COORD_LIMIT), y.clamp(-COORD_LIMIT, COORD_LIMIT))
        })
        .collect()
}

fn to_points(coords: &[(i64, i64)]) -> Vec<Point2> {
    coords.iter().map(|&(x, y)| Point2::from_ints(x, y)).collect()
}

fn add_cycle(k: &mut CellComplex, label: &str, coords: &[(i64, i64)]) -> Option<FilledCycle> {
    let ids: Vec<VertexId> = coords
        .iter()
        .enumerate()
        .map(|(i, &(x, y))| {
            let id = VertexId::new(format!("{label}.{i}"));
            k.add_vertex(id.clone(), Point2::from_ints(x, y)).map(|_| id)
        })
        .collect::<Result<_, _>>()
        .ok()?;
    FilledCycle::new(k, label, &ids).ok()
}

/// A random ribbon with up to 3 filaments and up to 4 holes, all vertices on
/// the integer lattice inside `[-20, 20]²`. Resamples until valid.
pub fn random_ribbon<R: Rng>(rng: &mut R, label: &str) -> GeneratedRibbon {
    loop {
        if let Some(g) = try_ribbon(rng, label) {
            return g;
        }
    }
}

fn try_ribbon<R: Rng>(rng: &mut R, label: &str) -> Option<GeneratedRibbon> {
    let big = rng.gen_range(6.0..10.0);
    let cx = rng.gen_range(-(COORD_LIMIT as f64 - big)..=(COORD_LIMIT as f64 - big));
    let cy = rng.gen_range(-(COORD_LIMIT as f64 - big)..=(COORD_LIMIT as f64 - big));
    let outer_xy = star_polygon(rng, cx, cy, 0.8 * big, big);
    let small = rng.gen_range(1.5..(0.4 * big));
    let (dx, dy) = (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let inner_xy = star_polygon(rng, cx + dx, cy + dy, small * 0.7, small);
    if !simple_polygon(&to_points(&outer_xy)).unwrap_or(false)
        || !simple_polygon(&to_points(&inner_xy)).unwrap_or(false)
    {
        return None;
    }
    let mut k = CellComplex::new(label);
    let outer = add_cycle(&mut k, &format!("{label}.out"), &outer_xy)?;
    let inner = add_cycle(&mut k, &format!("{label}.in"), &inner_xy)?;
    Ribbon::assemble(RibbonParts::new(label, outer.clone(), inner.clone())).ok()?;

    let mut holes = Vec::new();
    for _ in 0..rng.gen_range(0..=4) {
        for _ in 0..20 {
            let x = rng.gen_range(-2 * COORD_LIMIT..=2 * COORD_LIMIT);
            let y = rng.gen_range(-2 * COORD_LIMIT..=2 * COORD_LIMIT);
            let p = Point2::new(int(x) / int(2), int(y) / int(2));
            let fresh = holes.iter().all(|h: &Hole| h.marker != p);
            if fresh && outer.locate(&p) == Location::Inside && inner.locate(&p) == Location::Outside {
                holes.push(Hole::new(format!("h{}", holes.len()), p));
                break;
            }
        }
    }

    let mut filaments: Vec<Filament> = Vec::new();
    for _ in 0..rng.gen_range(0..=3) {
        for _ in 0..10 {
            let q = &outer.vertex_ids()[rng.gen_range(0..outer.len())];
            let p = &inner.vertex_ids()[rng.gen_range(0..inner.len())];
            let fil = Filament::new(q.clone(), p.clone());
            if filaments.iter().any(|f| f.outer_vertex == fil.outer_vertex || f.inner_vertex == fil.inner_vertex) {
                continue;
            }
            let mut trial = filaments.clone();
            trial.push(fil.clone());
            if Ribbon::assemble(RibbonParts::new(label, outer.clone(), inner.clone()).filaments(trial)).is_ok() {
                filaments.push(fil);
                break;
            }
        }
    }
    for f in &filaments {
        k.add_edge(&f.outer_vertex, &f.inner_vertex).ok()?;
    }
    let ribbon = Ribbon::assemble(RibbonParts::new(label, outer, inner).filaments(filaments).holes(holes)).ok()?;
    Some(GeneratedRibbon { complex: k, ribbon })
}

/// An axis-aligned rectangle `[x0, x1] × [y0, y1]` with integer corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rect {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

impl Rect {
    pub fn region(&self, label: impl Into<String>) -> Region {
        Region::polygon(
            label,
            vec![
                Point2::from_ints(self.x0, self.y0),
                Point2::from_ints(self.x1, self.y0),
                Point2::from_ints(self.x1, self.y1),
                Point2::from_ints(self.x0, self.y1),
            ],
        )
    }

    /// Signed gap along one axis: positive when apart, negative when overlapping.
    fn axis_gap(a0: i64, a1: i64, b0: i64, b1: i64) -> i64 {
        (b0 - a1).max(a0 - b1)
    }

    /// Chebyshev gap for disjoint rectangles; for overlapping ones, the
    /// smallest offset between parallel edge lines. Zero means the boundaries
    /// touch or share a line.
    pub fn clearance(&self, other: &Rect) -> i64 {
        let gx = Self::axis_gap(self.x0, self.x1, other.x0, other.x1);
        let gy = Self::axis_gap(self.y0, self.y1, other.y0, other.y1);
        if gx > 0 || gy > 0 {
            return gx.max(gy);
        }
        let xs = [self.x0 - other.x0, self.x0 - other.x1, self.x1 - other.x0, self.x1 - other.x1];
        let ys = [self.y0 - other.y0, self.y0 - other.y1, self.y1 - other.y0, self.y1 - other.y1];
        xs.iter().chain(ys.iter()).map(|d| d.abs()).min().unwrap_or(0)
    }
}

/// Between 1 and `max_count` rectangles inside `[0, size]²` whose pairwise
/// clearance is at least `min_clearance` units.
pub fn random_rectangles<R: Rng>(rng: &mut R, max_count: usize, size: i64, min_clearance: i64) -> Vec<Rect> {
    let count = rng.gen_range(1..=max_count);
    'outer: loop {
        let mut rects = Vec::with_capacity(count);
        for _ in 0..count {
            let mut placed = false;
            for _ in 0..50 {
                let w = rng.gen_range(2..=size / 2);
                let h = rng.gen_range(2..=size / 2);
                let x0 = rng.gen_range(1..size - w);
                let y0 = rng.gen_range(1..size - h);
                let r = Rect { x0, y0, x1: x0 + w, y1: y0 + h };
                if rects.iter().all(|o: &Rect| r.clearance(o) >= min_clearance) {
                    rects.push(r);
                    placed = true;
                    break;
                }
            }
            if !placed {
                continue 'outer;
            }
        }
        return rects;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::validate_cw;
    use rand::SeedableRng;

    #[test]
    fn ribbons_are_valid_and_bounded() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for i in 0..50 {
            let g = random_ribbon(&mut rng, &format!("r{i}"));
            let report = validate_cw(&g.complex);
            assert!(report.is_valid(), "{report:?}");
            for p in g.ribbon.outer().points() {
                let (x, y) = p.to_f64();
                assert!(x.abs() <= 20.0 && y.abs() <= 20.0);
            }
        }
    }

    #[test]
    fn clearance_cases() {
        let a = Rect { x0: 0, y0: 0, x1: 4, y1: 4 };
        assert_eq!(a.clearance(&Rect { x0: 7, y0: 0, x1: 9, y1: 4 }), 3);
        assert_eq!(a.clearance(&Rect { x0: 4, y0: 0, x1: 9, y1: 4 }), 0);
        assert_eq!(a.clearance(&Rect { x0: 2, y0: 1, x1: 9, y1: 3 }), 1);
        assert_eq!(a.clearance(&Rect { x0: 6, y0: 7, x1: 9, y1: 9 }), 3);
    }

    #[test]
    fn rectangle_families_keep_clearance() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for _ in 0..50 {
            let rects = random_rectangles(&mut rng, 6, 16, 1);
            for (i, a) in rects.iter().enumerate() {
                for b in &rects[i + 1..] {
                    assert!(a.clearance(b) >= 1);
                }
            }
        }
    }
}
