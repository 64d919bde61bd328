//! Nerves of finite families of closed planar regions.
//!
//! Intersection tests are exact. For closed piecewise-linear regions a nonempty
//! common intersection always contains a vertex of the arrangement of all
//! boundary segments (its lexicographically least point is one), so testing
//! the finite candidate set of boundary vertices and pairwise segment
//! crossings decides every subfamily at once.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::geometry::{
    locate, loop_edges, segment_intersection, vertex_centroid, Location, Point2, SegmentIntersection,
};
use crate::ribbon::{Ribbon, RibbonComplex, RibbonNerve};

pub const MAX_NERVE_REGIONS: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NerveError {
    #[error("region collection is empty")]
    EmptyCollection,
    #[error("{0} regions exceeds the subset enumeration bound of {MAX_NERVE_REGIONS}")]
    CollectionTooLarge(usize),
    #[error("simplex {0:?} has a missing face")]
    NotDownwardClosed(Vec<usize>),
}

/// Closed region: the filled outer loop minus the open interiors of the
/// excluded loops.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    pub label: String,
    pub outer: Vec<Point2>,
    pub excluded: Vec<Vec<Point2>>,
}

impl Region {
    pub fn new(label: impl Into<String>, outer: Vec<Point2>, excluded: Vec<Vec<Point2>>) -> Self {
        Self { label: label.into(), outer, excluded }
    }

    /// A filled polygon with nothing removed.
    pub fn polygon(label: impl Into<String>, outer: Vec<Point2>) -> Self {
        Self::new(label, outer, Vec::new())
    }

    pub fn contains(&self, p: &Point2) -> bool {
        locate(p, &self.outer) != Location::Outside
            && self.excluded.iter().all(|hole| locate(p, hole) != Location::Inside)
    }

    pub fn loops(&self) -> impl Iterator<Item = &Vec<Point2>> {
        std::iter::once(&self.outer).chain(self.excluded.iter())
    }

    pub fn segments(&self) -> impl Iterator<Item = (&Point2, &Point2)> {
        self.loops().flat_map(|l| loop_edges(l))
    }
}

impl From<&Ribbon> for Region {
    fn from(r: &Ribbon) -> Self {
        r.region()
    }
}

impl From<&crate::ribbon::FilledCycle> for Region {
    fn from(c: &crate::ribbon::FilledCycle) -> Self {
        Region::polygon(c.label(), c.points().to_vec())
    }
}

/// Abstract simplicial complex over labelled vertices; simplices are sorted
/// index lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimplicialComplex {
    pub vertex_labels: Vec<String>,
    pub simplices: BTreeSet<Vec<usize>>,
}

impl SimplicialComplex {
    pub fn new(vertex_labels: Vec<String>, simplices: impl IntoIterator<Item = Vec<usize>>) -> Self {
        let simplices = simplices
            .into_iter()
            .map(|mut s| {
                s.sort_unstable();
                s.dedup();
                s
            })
            .collect();
        Self { vertex_labels, simplices }
    }

    /// Every nonempty subset of a simplex is again a simplex.
    pub fn check_downward_closed(&self) -> Result<(), NerveError> {
        for s in &self.simplices {
            if s.is_empty() {
                return Err(NerveError::NotDownwardClosed(s.clone()));
            }
            for skip in 0..s.len() {
                if s.len() == 1 {
                    break;
                }
                let face: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                if !self.simplices.contains(&face) {
                    return Err(NerveError::NotDownwardClosed(s.clone()));
                }
            }
        }
        Ok(())
    }

    pub fn of_dimension(&self, d: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().filter(move |s| s.len() == d + 1)
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Vec<usize>> {
        maximal(self.simplices.iter().cloned())
    }

    pub fn dimension(&self) -> Option<usize> {
        self.simplices.iter().map(|s| s.len() - 1).max()
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

fn maximal(sets: impl IntoIterator<Item = Vec<usize>>) -> Vec<Vec<usize>> {
    let mut sets: Vec<Vec<usize>> = sets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    sets.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut kept: Vec<Vec<usize>> = Vec::new();
    for s in sets {
        if !kept.iter().any(|k| is_subset(&s, k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

/// Boundary vertices, pairwise boundary crossings and loop centroids.
fn candidate_points(regions: &[Region]) -> Vec<Point2> {
    let mut pts: BTreeSet<Point2> = BTreeSet::new();
    for r in regions {
        for l in r.loops() {
            pts.extend(l.iter().cloned());
            pts.insert(vertex_centroid(l));
        }
    }
    let segs: Vec<(usize, &Point2, &Point2)> =
        regions.iter().enumerate().flat_map(|(i, r)| r.segments().map(move |(a, b)| (i, a, b))).collect();
    for (x, &(ri, a, b)) in segs.iter().enumerate() {
        for &(rj, c, d) in &segs[x + 1..] {
            if ri == rj {
                continue;
            }
            if let SegmentIntersection::Point(p) = segment_intersection(a, b, c, d) {
                pts.insert(p);
            }
        }
    }
    pts.into_iter().collect()
}

/// Sorted indices of the regions containing each candidate, deduplicated.
fn candidate_masks(regions: &[Region]) -> BTreeSet<Vec<usize>> {
    candidate_points(regions)
        .iter()
        .map(|p| (0..regions.len()).filter(|&i| regions[i].contains(p)).collect::<Vec<_>>())
        .filter(|m| !m.is_empty())
        .collect()
}

/// A point in the intersection of all regions, if there is one.
pub fn common_witness(regions: &[Region]) -> Result<Option<Point2>, NerveError> {
    if regions.is_empty() {
        return Err(NerveError::EmptyCollection);
    }
    Ok(candidate_points(regions).into_iter().find(|p| regions.iter().all(|r| r.contains(p))))
}

/// Maximal subfamilies with nonempty common intersection. Every region lies
/// in at least one (its own boundary vertices are candidates).
pub fn maximal_intersecting_groups(regions: &[Region]) -> Vec<Vec<usize>> {
    maximal(candidate_masks(regions))
}

/// All nonempty subfamilies with nonempty common intersection.
pub fn nerve(regions: &[Region]) -> Result<SimplicialComplex, NerveError> {
    if regions.len() > MAX_NERVE_REGIONS {
        return Err(NerveError::CollectionTooLarge(regions.len()));
    }
    let mut simplices = BTreeSet::new();
    for group in maximal_intersecting_groups(regions) {
        let n = group.len();
        for bits in 1u32..(1u32 << n) {
            let s: Vec<usize> = (0..n).filter(|&i| bits & (1 << i) != 0).map(|i| group[i]).collect();
            simplices.insert(s);
        }
    }
    Ok(SimplicialComplex { vertex_labels: regions.iter().map(|r| r.label.clone()).collect(), simplices })
}

/// Maximal groups of ribbons that share a common point; singletons included.
pub fn ribbon_nerve(rbx: &RibbonComplex) -> Vec<RibbonNerve> {
    let regions: Vec<Region> = rbx.ribbons().iter().map(Ribbon::region).collect();
    maximal_intersecting_groups(&regions)
        .into_iter()
        .enumerate()
        .map(|(i, group)| {
            let ribbons = group.iter().map(|&j| rbx.ribbons()[j].clone()).collect();
            RibbonNerve::new(format!("{}.rbNrv{}", rbx.label(), i), ribbons)
                .expect("maximal groups come from a common witness")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ratio;

    fn rect(label: &str, x0: i64, y0: i64, x1: i64, y1: i64) -> Region {
        Region::polygon(
            label,
            vec![
                Point2::from_ints(x0, y0),
                Point2::from_ints(x1, y0),
                Point2::from_ints(x1, y1),
                Point2::from_ints(x0, y1),
            ],
        )
    }

    /// Brute-force oracle: a dense rational lattice probe of the intersection.
    fn lattice_intersects(regions: &[&Region], lo: i64, hi: i64, step_den: i64) -> bool {
        (lo * step_den..=hi * step_den).any(|i| {
            (lo * step_den..=hi * step_den).any(|j| {
                let p = Point2::new(ratio(i, step_den), ratio(j, step_den));
                regions.iter().all(|r| r.contains(&p))
            })
        })
    }

    #[test]
    fn nested_witness_and_disjoint_pair() {
        let outer = rect("o", 0, 0, 10, 10);
        let inner = rect("i", 2, 2, 4, 4);
        let w = common_witness(&[outer.clone(), inner.clone()]).unwrap().unwrap();
        assert!(outer.contains(&w) && inner.contains(&w));
        assert_eq!(common_witness(&[rect("a", 0, 0, 1, 1), rect("b", 3, 3, 4, 4)]).unwrap(), None);
        assert_eq!(common_witness(&[]), Err(NerveError::EmptyCollection));
    }

    #[test]
    fn crossing_only_witness() {
        // a plus sign: neither region has a vertex inside the other
        let h = rect("h", 0, 2, 6, 4);
        let v = rect("v", 2, 0, 4, 6);
        let w = common_witness(&[h.clone(), v.clone()]).unwrap().unwrap();
        assert!(h.contains(&w) && v.contains(&w));
        let tilted = Region::polygon(
            "t",
            vec![Point2::from_ints(0, 0), Point2::from_ints(6, 1), Point2::from_ints(6, 2), Point2::from_ints(0, 1)],
        );
        let bar = rect("b", 2, -5, 3, 5);
        assert!(common_witness(&[tilted, bar]).unwrap().is_some());
    }

    #[test]
    fn single_region_nerve() {
        let n = nerve(&[rect("a", 0, 0, 1, 1)]).unwrap();
        assert_eq!(n.simplices, [vec![0]].into_iter().collect());
    }

    #[test]
    fn nested_chain_gives_full_simplex() {
        let n = nerve(&[rect("a", 0, 0, 9, 9), rect("b", 1, 1, 8, 8), rect("c", 2, 2, 7, 7)]).unwrap();
        assert_eq!(n.simplices.len(), 7);
        assert_eq!(n.maximal_simplices(), vec![vec![0, 1, 2]]);
        n.check_downward_closed().unwrap();
    }

    #[test]
    fn ribbon_hole_blocks_intersection() {
        let ring = Region::new("ring", rect("", 0, 0, 10, 10).outer, vec![rect("", 2, 2, 8, 8).outer]);
        let inside = rect("in", 3, 3, 5, 5);
        let touching = rect("touch", 8, 4, 9, 5);
        assert_eq!(common_witness(&[ring.clone(), inside]).unwrap(), None);
        assert!(common_witness(&[ring, touching]).unwrap().is_some());
    }

    #[test]
    fn too_many_regions() {
        let regions: Vec<Region> = (0..21).map(|i| rect("r", i * 3, 0, i * 3 + 1, 1)).collect();
        assert_eq!(nerve(&regions).unwrap_err(), NerveError::CollectionTooLarge(21));
        assert_eq!(maximal_intersecting_groups(&regions).len(), 21);
    }

    #[test]
    fn downward_closure_detects_gap() {
        let sc = SimplicialComplex::new(vec!["a".into(), "b".into()], [vec![0], vec![0, 1]]);
        assert_eq!(sc.check_downward_closed(), Err(NerveError::NotDownwardClosed(vec![0, 1])));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn rects(max: usize) -> impl Strategy<Value = Vec<Region>> {
            prop::collection::vec((0i64..8, 0i64..8, 1i64..5, 1i64..5), 1..=max).prop_map(|v| {
                v.into_iter().enumerate().map(|(i, (x, y, w, h))| rect(&format!("r{i}"), x, y, x + w, y + h)).collect()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn nerve_downward_closed_and_matches_lattice(regions in rects(5)) {
                let n = nerve(&regions).unwrap();
                prop_assert!(n.check_downward_closed().is_ok());
                // integer rectangles: the half-integer lattice sees every intersection
                let k = regions.len();
                for bits in 1u32..(1 << k) {
                    let members: Vec<usize> = (0..k).filter(|i| bits & (1 << i) != 0).collect();
                    let rs: Vec<&Region> = members.iter().map(|&i| &regions[i]).collect();
                    prop_assert_eq!(n.simplices.contains(&members), lattice_intersects(&rs, 0, 13, 2));
                }
            }

            #[test]
            fn adding_region_keeps_simplices(regions in rects(5), extra in rects(1)) {
                let before = nerve(&regions).unwrap();
                let mut more = regions.clone();
                more.extend(extra);
                let after = nerve(&more).unwrap();
                prop_assert!(before.simplices.is_subset(&after.simplices));
            }
        }
    }
}
