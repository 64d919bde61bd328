//! Homology ranks over Z/2 for nerves, and cubical ranks for rasterized
//! unions, so the two sides of the nerve theorem can be compared.

use std::collections::{BTreeMap, VecDeque};

use num_traits::ToPrimitive;
use thiserror::Error;

use crate::division::Frame;
use crate::geometry::{int, is_convex, Point2, Rational};
use crate::nerve::{nerve, NerveError, Region, SimplicialComplex, MAX_NERVE_REGIONS};

/// Smallest accepted rasterization resolution, in pixels per unit.
pub const MIN_RESOLUTION: u32 = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error("resolution {0} is below the minimum of {MIN_RESOLUTION} pixels per unit")]
    ResolutionTooLow(u32),
    #[error("region `{0}` reaches outside the frame")]
    FrameTooSmall(String),
    #[error("region `{0}` is not convex")]
    NonConvexRegion(String),
    #[error("{0} regions exceeds the bound of {MAX_NERVE_REGIONS}")]
    CollectionTooLarge(usize),
}

/// Ranks of `H_0` and `H_1`.
pub type Betti01 = (usize, usize);

/// Rank over GF(2) of the given columns, each a list of row indices.
fn gf2_rank(columns: Vec<Vec<usize>>, rows: usize) -> usize {
    let words = rows.div_ceil(64);
    let mut pivots: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
    for col in columns {
        let mut bits = vec![0u64; words];
        for r in col {
            bits[r / 64] ^= 1 << (r % 64);
        }
        while let Some(lead) =
            (0..words).rev().find(|&w| bits[w] != 0).map(|w| w * 64 + 63 - bits[w].leading_zeros() as usize)
        {
            match pivots.get(&lead) {
                Some(p) => bits.iter_mut().zip(p).for_each(|(b, q)| *b ^= q),
                None => {
                    pivots.insert(lead, bits);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// `(b0, b1)` of the complex over Z/2; only the 2-skeleton is used.
pub fn z2_betti(sc: &SimplicialComplex) -> Result<Betti01, HomologyError> {
    sc.check_downward_closed()?;
    let index =
        |d: usize| -> BTreeMap<&Vec<usize>, usize> { sc.of_dimension(d).enumerate().map(|(i, s)| (s, i)).collect() };
    let (v, e) = (index(0), index(1));
    let facets = |s: &Vec<usize>, rows: &BTreeMap<&Vec<usize>, usize>| -> Vec<usize> {
        (0..s.len())
            .map(|skip| {
                let f: Vec<usize> = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &x)| x).collect();
                rows[&f]
            })
            .collect()
    };
    let d1: Vec<Vec<usize>> = sc.of_dimension(1).map(|s| facets(s, &v)).collect();
    let d2: Vec<Vec<usize>> = sc.of_dimension(2).map(|s| facets(s, &e)).collect();
    let r1 = gf2_rank(d1, v.len());
    let r2 = gf2_rank(d2, e.len());
    Ok((v.len() - r1, e.len() - r1 - r2))
}

/// Pixel grid over a frame; pixel `(i, j)` has center
/// `min + ((i + 1/2) / res, (j + 1/2) / res)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitmap {
    pub width: usize,
    pub height: usize,
    pub resolution: u32,
    pub frame: Frame,
    bits: Vec<bool>,
}

impl Bitmap {
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.bits[j * self.width + i]
    }

    pub fn count_set(&self) -> usize {
        self.bits.iter().filter(|&&b| b).count()
    }

    pub fn center(&self, i: usize, j: usize) -> Point2 {
        let res = int(self.resolution as i64);
        let half = Rational::new(1.into(), 2.into());
        Point2::new(
            &self.frame.min.x + (int(i as i64) + &half) / &res,
            &self.frame.min.y + (int(j as i64) + &half) / &res,
        )
    }
}

/// Number of pixel centers along `[min, min + extent]`.
fn pixel_count(extent: &Rational, res: &Rational) -> usize {
    let half = Rational::new(1.into(), 2.into());
    ((extent * res - half).floor().to_integer().to_usize().unwrap_or(0)) + 1
}

/// Pixel index range `[lo, hi]` whose centers fall in the interval from `a` to
/// `b`, closed or open.
fn index_span(
    a: &Rational,
    b: &Rational,
    origin: &Rational,
    res: &Rational,
    closed: bool,
    n: usize,
) -> Option<(usize, usize)> {
    let half = Rational::new(1.into(), 2.into());
    let ta = (a - origin) * res - &half;
    let tb = (b - origin) * res - &half;
    let (lo, hi) = if closed {
        (ta.ceil().to_integer(), tb.floor().to_integer())
    } else {
        (ta.floor().to_integer() + 1, tb.ceil().to_integer() - 1)
    };
    let lo = lo.to_i64()?.max(0);
    let hi = hi.to_i64()?.min(n as i64 - 1);
    (lo <= hi).then_some((lo as usize, hi as usize))
}

/// Where a horizontal line meets a filled loop: paired boundary crossings
/// (interior spans between them) and boundary pieces lying on the line.
struct LineCut {
    spans: Vec<(Rational, Rational)>,
    on_line: Vec<(Rational, Rational)>,
}

fn cut_loop(l: &[Point2], y: &Rational) -> LineCut {
    let mut xs = Vec::new();
    let mut on_line = Vec::new();
    for (k, a) in l.iter().enumerate() {
        let b = &l[(k + 1) % l.len()];
        if (a.y < *y) != (b.y < *y) {
            xs.push(&a.x + (y - &a.y) * (&b.x - &a.x) / (&b.y - &a.y));
        }
        if a.y == *y && b.y == *y {
            on_line.push((a.x.clone().min(b.x.clone()), a.x.clone().max(b.x.clone())));
        } else if a.y == *y {
            on_line.push((a.x.clone(), a.x.clone()));
        }
    }
    xs.sort();
    let spans = xs.chunks(2).filter(|c| c.len() == 2).map(|c| (c[0].clone(), c[1].clone())).collect();
    LineCut { spans, on_line }
}

fn fill(
    row: &mut [bool],
    spans: &[(Rational, Rational)],
    value: bool,
    closed: bool,
    origin: &Rational,
    res: &Rational,
) {
    let n = row.len();
    for (a, b) in spans {
        if let Some((lo, hi)) = index_span(a, b, origin, res, closed, n) {
            row[lo..=hi].iter_mut().for_each(|c| *c = value);
        }
    }
}

pub fn rasterize(regions: &[Region], f: &Frame, resolution: u32) -> Result<Bitmap, HomologyError> {
    if resolution < MIN_RESOLUTION {
        return Err(HomologyError::ResolutionTooLow(resolution));
    }
    for r in regions {
        if !r.loops().flatten().all(|p| f.contains(p)) {
            return Err(HomologyError::FrameTooSmall(r.label.clone()));
        }
    }
    let res = int(resolution as i64);
    let width = pixel_count(&f.width(), &res);
    let height = pixel_count(&f.height(), &res);
    let mut bitmap = Bitmap { width, height, resolution, frame: f.clone(), bits: vec![false; width * height] };
    let x0 = &f.min.x;
    for j in 0..height {
        let y = bitmap.center(0, j).y;
        let mut row = vec![false; width];
        for r in regions {
            let mut inside = vec![false; width];
            let cut = cut_loop(&r.outer, &y);
            fill(&mut inside, &cut.spans, true, true, x0, &res);
            fill(&mut inside, &cut.on_line, true, true, x0, &res);
            for hole in &r.excluded {
                // only the open interior is removed; boundary pieces on the line stay
                let cut = cut_loop(hole, &y);
                let mut removed = vec![false; width];
                fill(&mut removed, &cut.spans, true, false, x0, &res);
                fill(&mut removed, &cut.on_line, false, true, x0, &res);
                inside.iter_mut().zip(&removed).for_each(|(c, &gone)| *c &= !gone);
            }
            row.iter_mut().zip(&inside).for_each(|(c, &i)| *c |= i);
        }
        bitmap.bits[j * width..(j + 1) * width].copy_from_slice(&row);
    }
    Ok(bitmap)
}

fn components(b: &Bitmap, value: bool, neighbors: &[(isize, isize)]) -> Vec<(usize, bool)> {
    let (w, h) = (b.width, b.height);
    let mut seen = vec![false; w * h];
    let mut out = Vec::new();
    for start in 0..w * h {
        if seen[start] || b.bits[start] != value {
            continue;
        }
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        let (mut size, mut touches_border) = (0, false);
        while let Some(c) = queue.pop_front() {
            size += 1;
            let (i, j) = ((c % w) as isize, (c / w) as isize);
            if i == 0 || j == 0 || i as usize == w - 1 || j as usize == h - 1 {
                touches_border = true;
            }
            for (di, dj) in neighbors {
                let (ni, nj) = (i + di, j + dj);
                if ni < 0 || nj < 0 || ni as usize >= w || nj as usize >= h {
                    continue;
                }
                let n = nj as usize * w + ni as usize;
                if !seen[n] && b.bits[n] == value {
                    seen[n] = true;
                    queue.push_back(n);
                }
            }
        }
        out.push((size, touches_border));
    }
    out
}

const FOUR: [(isize, isize); 4] = [(1, 0), (-1, 0), (0, 1), (0, -1)];
const EIGHT: [(isize, isize); 8] = [(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (1, -1), (-1, 1), (-1, -1)];

/// 8-connected components of set pixels, and 4-connected components of unset
/// pixels away from the border.
pub fn cubical_betti(b: &Bitmap) -> Betti01 {
    let b0 = components(b, true, &EIGHT).len();
    let b1 = components(b, false, &FOUR).iter().filter(|(_, border)| !border).count();
    (b0, b1)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub regions: usize,
    pub nerve_simplices: usize,
    pub nerve_betti: Betti01,
    pub cubical_betti: Betti01,
    pub resolution: u32,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.nerve_betti == self.cubical_betti
    }
}

pub fn nerve_theorem_check(regions: &[Region], f: &Frame, resolution: u32) -> Result<CheckReport, HomologyError> {
    if regions.len() > MAX_NERVE_REGIONS {
        return Err(HomologyError::CollectionTooLarge(regions.len()));
    }
    if let Some(r) = regions.iter().find(|r| !r.excluded.is_empty() || !is_convex(&r.outer)) {
        return Err(HomologyError::NonConvexRegion(r.label.clone()));
    }
    let sc = nerve(regions)?;
    let bitmap = rasterize(regions, f, resolution)?;
    Ok(CheckReport {
        regions: regions.len(),
        nerve_simplices: sc.simplices.len(),
        nerve_betti: z2_betti(&sc)?,
        cubical_betti: cubical_betti(&bitmap),
        resolution,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::random_rectangles;
    use crate::geometry::ratio;
    use proptest::prelude::*;
    use rand::SeedableRng;

    fn sc(n: usize, simplices: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::new((0..n).map(|i| i.to_string()).collect(), simplices.iter().map(|s| s.to_vec()))
    }

    fn poly(label: &str, pts: &[(i64, i64)]) -> Region {
        Region::polygon(label, pts.iter().map(|&(x, y)| Point2::from_ints(x, y)).collect())
    }

    fn frame(a: i64, b: i64) -> Frame {
        Frame::new(Point2::from_ints(a, a), Point2::from_ints(b, b)).unwrap()
    }

    #[test]
    fn simplicial_examples() {
        assert_eq!(z2_betti(&sc(1, &[&[0]])).unwrap(), (1, 0));
        let hollow = sc(3, &[&[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 2]]);
        assert_eq!(z2_betti(&hollow).unwrap(), (1, 1));
        let full = sc(3, &[&[0], &[1], &[2], &[0, 1], &[1, 2], &[0, 2], &[0, 1, 2]]);
        assert_eq!(z2_betti(&full).unwrap(), (1, 0));
        assert!(matches!(
            z2_betti(&sc(2, &[&[0], &[0, 1]])),
            Err(HomologyError::Nerve(NerveError::NotDownwardClosed(_)))
        ));
        // two hollow squares sharing nothing
        let two = sc(
            8,
            &[
                &[0],
                &[1],
                &[2],
                &[3],
                &[4],
                &[5],
                &[6],
                &[7],
                &[0, 1],
                &[1, 2],
                &[2, 3],
                &[0, 3],
                &[4, 5],
                &[5, 6],
                &[6, 7],
                &[4, 7],
            ],
        );
        assert_eq!(z2_betti(&two).unwrap(), (2, 2));
    }

    #[test]
    fn cone_is_contractible() {
        // cone over a hollow pentagon with apex 5
        let mut s: Vec<Vec<usize>> = (0..6).map(|i| vec![i]).collect();
        for i in 0..5 {
            let j = (i + 1) % 5;
            s.push(vec![i, j]);
            s.push(vec![i, 5]);
            s.push(vec![i, j, 5]);
        }
        let c = SimplicialComplex::new((0..6).map(|i| i.to_string()).collect(), s);
        assert_eq!(z2_betti(&c).unwrap(), (1, 0));
    }

    #[test]
    fn raster_examples() {
        let f = frame(0, 4);
        let square = poly("s", &[(1, 1), (3, 1), (3, 3), (1, 3)]);
        let b = rasterize(std::slice::from_ref(&square), &f, 4).unwrap();
        assert_eq!((b.width, b.height), (16, 16));
        assert_eq!(b.count_set(), 64);
        assert_eq!(cubical_betti(&b), (1, 0));
        let empty = rasterize(&[], &f, 4).unwrap();
        assert_eq!(empty.count_set(), 0);
        assert_eq!(cubical_betti(&empty), (0, 0));
        assert!(matches!(rasterize(std::slice::from_ref(&square), &f, 3), Err(HomologyError::ResolutionTooLow(3))));
        assert!(matches!(rasterize(&[square], &frame(2, 4), 4), Err(HomologyError::FrameTooSmall(_))));
        let two = [poly("a", &[(0, 0), (1, 0), (1, 1), (0, 1)]), poly("b", &[(2, 2), (4, 2), (4, 4), (2, 4)])];
        assert_eq!(cubical_betti(&rasterize(&two, &frame(-1, 5), 8).unwrap()), (2, 0));
    }

    #[test]
    fn annulus_matches_pointwise_membership() {
        let outer: Vec<Point2> =
            [(0, 0), (6, 0), (6, 5), (0, 5)].iter().map(|&(x, y)| Point2::from_ints(x, y)).collect();
        let inner: Vec<Point2> =
            [(2, 1), (4, 2), (3, 4), (1, 3)].iter().map(|&(x, y)| Point2::from_ints(x, y)).collect();
        let ring = Region::new("ring", outer, vec![inner]);
        let f = Frame::new(Point2::from_ints(-1, -1), Point2::from_ints(7, 6)).unwrap();
        let b = rasterize(std::slice::from_ref(&ring), &f, 16).unwrap();
        for j in 0..b.height {
            for i in 0..b.width {
                assert_eq!(b.get(i, j), ring.contains(&b.center(i, j)), "pixel {i},{j}");
            }
        }
        assert_eq!(cubical_betti(&b), (1, 1));
    }

    #[test]
    fn hole_boundary_pixels_stay_set() {
        // inner loop edges pass through pixel centers at resolution 4 from origin 0
        let outer: Vec<Point2> =
            [(0, 0), (4, 0), (4, 4), (0, 4)].iter().map(|&(x, y)| Point2::from_ints(x, y)).collect();
        let inner = vec![
            Point2::new(ratio(9, 8), ratio(9, 8)),
            Point2::new(ratio(23, 8), ratio(9, 8)),
            Point2::new(ratio(23, 8), ratio(23, 8)),
            Point2::new(ratio(9, 8), ratio(23, 8)),
        ];
        let ring = Region::new("ring", outer, vec![inner]);
        let f = Frame::new(Point2::from_ints(0, 0), Point2::from_ints(4, 4)).unwrap();
        let b = rasterize(std::slice::from_ref(&ring), &f, 4).unwrap();
        for j in 0..b.height {
            for i in 0..b.width {
                assert_eq!(b.get(i, j), ring.contains(&b.center(i, j)), "pixel {i},{j}");
            }
        }
    }

    #[test]
    fn hand_built_families() {
        let f = frame(-2, 10);
        let common = [
            poly("a", &[(0, 0), (4, 0), (4, 4), (0, 4)]),
            poly("b", &[(2, 2), (6, 2), (6, 6), (2, 6)]),
            poly("c", &[(3, 1), (7, 1), (7, 5), (3, 5)]),
        ];
        let r = nerve_theorem_check(&common, &f, 16).unwrap();
        assert_eq!((r.nerve_betti, r.nerve_simplices), ((1, 0), 7));
        assert!(r.passed());
        let disjoint = [poly("a", &[(0, 0), (2, 0), (2, 2), (0, 2)]), poly("b", &[(4, 4), (6, 4), (6, 6), (4, 6)])];
        let r = nerve_theorem_check(&disjoint, &f, 16).unwrap();
        assert_eq!((r.nerve_betti, r.cubical_betti), ((2, 0), (2, 0)));
        let ring = [
            poly("bottom", &[(0, 0), (6, 0), (6, 1), (0, 1)]),
            poly("left", &[(0, 0), (1, 0), (1, 6), (0, 6)]),
            poly("diagonal", &[(4, 0), (6, 0), (0, 6), (0, 4)]),
        ];
        let r = nerve_theorem_check(&ring, &f, 16).unwrap();
        assert_eq!((r.nerve_betti, r.cubical_betti), ((1, 1), (1, 1)));
    }

    #[test]
    fn non_convex_rejected() {
        let l = poly("l", &[(0, 0), (4, 0), (4, 1), (1, 1), (1, 4), (0, 4)]);
        assert!(matches!(nerve_theorem_check(&[l], &frame(-1, 5), 8), Err(HomologyError::NonConvexRegion(_))));
        let many: Vec<Region> = (0..21).map(|i| poly(&i.to_string(), &[(0, 0), (1, 0), (0, 1)])).collect();
        assert!(matches!(nerve_theorem_check(&many, &frame(-1, 5), 8), Err(HomologyError::CollectionTooLarge(21))));
    }

    #[test]
    fn random_rectangles_agree_and_are_resolution_stable() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(17);
        let f = frame(0, 16);
        for _ in 0..10 {
            let rects = random_rectangles(&mut rng, 6, 16, 1);
            let regions: Vec<Region> = rects.iter().enumerate().map(|(i, r)| r.region(format!("r{i}"))).collect();
            let r16 = nerve_theorem_check(&regions, &f, 16).unwrap();
            assert!(r16.passed(), "{rects:?} {r16:?}");
            let r32 = nerve_theorem_check(&regions, &f, 32).unwrap();
            assert_eq!(r16.cubical_betti, r32.cubical_betti);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn rank_bounds(edges in proptest::collection::btree_set((0usize..6, 0usize..6), 0..15)) {
            let mut s: Vec<Vec<usize>> = (0..6).map(|i| vec![i]).collect();
            s.extend(edges.iter().filter(|(a, b)| a != b).map(|&(a, b)| vec![a, b]));
            let c = SimplicialComplex::new((0..6).map(|i| i.to_string()).collect(), s);
            let (b0, b1) = z2_betti(&c).unwrap();
            let e = c.of_dimension(1).count();
            // Euler characteristic of a graph
            prop_assert_eq!(b0 as i64 - b1 as i64, 6 - e as i64);
            prop_assert!(b0 >= 1);
        }
    }
}
