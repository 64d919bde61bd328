//! Planar CW complexes built from vertices, edges and filled triangles.
//!
//! A cell is identified by its (sorted) vertex set, so two cells with the same
//! vertices are the same cell. Validity follows the two Alexandroff-Hopf-Whitehead
//! conditions: every face of a cell is present (containment) and any two cells
//! meet exactly in their common faces (intersection).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use crate::geometry::{
    cross, on_segment, orientation, segment_intersection, Orientation, Point2, Rational, SegmentIntersection,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CwError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(VertexId),
    #[error("unknown cell {0}")]
    UnknownCellId(CellId),
    #[error("vertex `{0}` already placed at a different position")]
    ConflictingVertex(VertexId),
    #[error("edge endpoints must be distinct ({0})")]
    DegenerateEdge(VertexId),
    #[error("triangle {0} has collinear vertices")]
    DegenerateTriangle(CellId),
    #[error("a cell needs 1, 2 or 3 distinct vertices, got {0}")]
    BadArity(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub String);

impl VertexId {
    pub fn new(id: impl Into<String>) -> Self {
        Self(id.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<String> for VertexId {
    fn from(s: String) -> Self {
        Self(s)
    }
}

impl From<&str> for VertexId {
    fn from(s: &str) -> Self {
        Self(s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CellKind {
    Vertex,
    Edge,
    Triangle,
}

impl CellKind {
    pub fn dimension(self) -> usize {
        match self {
            CellKind::Vertex => 0,
            CellKind::Edge => 1,
            CellKind::Triangle => 2,
        }
    }
}

/// Sorted vertex set of a cell.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CellId(Vec<VertexId>);

impl CellId {
    pub fn new(ids: impl IntoIterator<Item = VertexId>) -> Result<Self, CwError> {
        let mut ids: Vec<VertexId> = ids.into_iter().collect();
        let arity = ids.len();
        ids.sort();
        ids.dedup();
        if ids.len() != arity || !(1..=3).contains(&arity) {
            return Err(CwError::BadArity(ids.len()));
        }
        Ok(Self(ids))
    }

    pub fn vertex(id: VertexId) -> Self {
        Self(vec![id])
    }

    pub fn edge(a: VertexId, b: VertexId) -> Result<Self, CwError> {
        if a == b {
            return Err(CwError::DegenerateEdge(a));
        }
        Self::new([a, b])
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn kind(&self) -> CellKind {
        match self.0.len() {
            1 => CellKind::Vertex,
            2 => CellKind::Edge,
            _ => CellKind::Triangle,
        }
    }

    pub fn dimension(&self) -> usize {
        self.kind().dimension()
    }

    /// All proper faces (for a triangle: 3 edges and 3 vertices).
    pub fn faces(&self) -> Vec<CellId> {
        let v = &self.0;
        match v.len() {
            1 => Vec::new(),
            2 => vec![Self(vec![v[0].clone()]), Self(vec![v[1].clone()])],
            _ => vec![
                Self(vec![v[0].clone(), v[1].clone()]),
                Self(vec![v[0].clone(), v[2].clone()]),
                Self(vec![v[1].clone(), v[2].clone()]),
                Self(vec![v[0].clone()]),
                Self(vec![v[1].clone()]),
                Self(vec![v[2].clone()]),
            ],
        }
    }

    /// Faces of codimension one.
    pub fn facets(&self) -> Vec<CellId> {
        self.faces().into_iter().filter(|f| f.dimension() + 1 == self.dimension()).collect()
    }

    pub fn is_face_of(&self, other: &CellId) -> bool {
        self != other && self.0.iter().all(|v| other.0.contains(v))
    }
}

impl fmt::Display for CellId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.0.iter().map(VertexId::as_str).collect();
        write!(f, "{{{}}}", names.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub kind: CellKind,
    /// Vertex ids in the order supplied at construction.
    pub vertex_ids: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CellComplex {
    name: String,
    vertices: BTreeMap<VertexId, Point2>,
    cells: BTreeMap<CellId, Cell>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentViolation {
    pub cell: CellId,
    pub missing_face: CellId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionViolation {
    pub first: CellId,
    pub second: CellId,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValidityReport {
    pub empty: bool,
    pub containment: Vec<ContainmentViolation>,
    /// Vertices referenced by a cell with no recorded position.
    pub unplaced: Vec<VertexId>,
    pub intersection: Vec<IntersectionViolation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        !self.empty && self.containment.is_empty() && self.unplaced.is_empty() && self.intersection.is_empty()
    }
}

impl CellComplex {
    pub fn new(name: impl Into<String>) -> Self {
        Self { name: name.into(), ..Self::default() }
    }

    /// Assembles a complex without any checks; see [`validate_cw`].
    pub fn from_parts(
        name: impl Into<String>,
        vertices: BTreeMap<VertexId, Point2>,
        cells: impl IntoIterator<Item = Cell>,
    ) -> Result<Self, CwError> {
        let mut out = Self { name: name.into(), vertices, cells: BTreeMap::new() };
        for cell in cells {
            let id = CellId::new(cell.vertex_ids.iter().cloned())?;
            out.cells.insert(id, cell);
        }
        Ok(out)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &BTreeMap<VertexId, Point2> {
        &self.vertices
    }

    pub fn cells(&self) -> &BTreeMap<CellId, Cell> {
        &self.cells
    }

    pub fn cell_ids(&self) -> BTreeSet<CellId> {
        self.cells.keys().cloned().collect()
    }

    pub fn contains(&self, id: &CellId) -> bool {
        self.cells.contains_key(id)
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn point(&self, id: &VertexId) -> Result<&Point2, CwError> {
        self.vertices.get(id).ok_or_else(|| CwError::UnknownVertex(id.clone()))
    }

    pub fn points(&self, ids: &[VertexId]) -> Result<Vec<Point2>, CwError> {
        ids.iter().map(|id| self.point(id).cloned()).collect()
    }

    /// Places a vertex and registers its 0-cell. Re-adding the same position is a no-op.
    pub fn add_vertex(&mut self, id: impl Into<VertexId>, at: Point2) -> Result<CellId, CwError> {
        let id = id.into();
        match self.vertices.get(&id) {
            Some(existing) if *existing != at => return Err(CwError::ConflictingVertex(id)),
            Some(_) => {}
            None => {
                self.vertices.insert(id.clone(), at);
            }
        }
        let cid = CellId::vertex(id.clone());
        self.cells.entry(cid.clone()).or_insert(Cell { kind: CellKind::Vertex, vertex_ids: vec![id] });
        Ok(cid)
    }

    /// Adds an edge between two placed vertices (idempotent).
    pub fn add_edge(&mut self, a: &VertexId, b: &VertexId) -> Result<CellId, CwError> {
        let id = CellId::edge(a.clone(), b.clone())?;
        for v in [a, b] {
            if !self.contains(&CellId::vertex(v.clone())) {
                return Err(CwError::UnknownVertex(v.clone()));
            }
        }
        self.cells.entry(id.clone()).or_insert(Cell { kind: CellKind::Edge, vertex_ids: vec![a.clone(), b.clone()] });
        Ok(id)
    }

    /// Adds a filled triangle together with its three edges.
    pub fn add_triangle(&mut self, a: &VertexId, b: &VertexId, c: &VertexId) -> Result<CellId, CwError> {
        let id = CellId::new([a.clone(), b.clone(), c.clone()])?;
        let (pa, pb, pc) = (self.point(a)?, self.point(b)?, self.point(c)?);
        if orientation(pa, pb, pc) == Orientation::Collinear {
            return Err(CwError::DegenerateTriangle(id));
        }
        self.add_edge(a, b)?;
        self.add_edge(b, c)?;
        self.add_edge(a, c)?;
        self.cells
            .entry(id.clone())
            .or_insert(Cell { kind: CellKind::Triangle, vertex_ids: vec![a.clone(), b.clone(), c.clone()] });
        Ok(id)
    }

    fn check_known(&self, cells: &BTreeSet<CellId>) -> Result<(), CwError> {
        match cells.iter().find(|c| !self.contains(c)) {
            Some(c) => Err(CwError::UnknownCellId(c.clone())),
            None => Ok(()),
        }
    }

    /// The cells plus all of their faces.
    pub fn closure(&self, cells: &BTreeSet<CellId>) -> Result<BTreeSet<CellId>, CwError> {
        self.check_known(cells)?;
        let mut out = cells.clone();
        for c in cells {
            out.extend(c.faces());
        }
        Ok(out)
    }

    /// Closure of the cells of `cl(S)` that are a facet of exactly one cell of `cl(S)`.
    pub fn boundary(&self, cells: &BTreeSet<CellId>) -> Result<BTreeSet<CellId>, CwError> {
        let closed = self.closure(cells)?;
        let mut cofaces: BTreeMap<&CellId, usize> = BTreeMap::new();
        for c in &closed {
            for f in c.facets() {
                if let Some(f) = closed.get(&f) {
                    *cofaces.entry(f).or_default() += 1;
                }
            }
        }
        let mut out = BTreeSet::new();
        for (f, n) in cofaces {
            if n == 1 {
                out.insert(f.clone());
                out.extend(f.faces());
            }
        }
        Ok(out)
    }

    pub fn interior(&self, cells: &BTreeSet<CellId>) -> Result<BTreeSet<CellId>, CwError> {
        let closed = self.closure(cells)?;
        let bdy = self.boundary(cells)?;
        Ok(closed.difference(&bdy).cloned().collect())
    }
}

/// Checks containment and intersection conditions; violations are data.
pub fn validate_cw(k: &CellComplex) -> ValidityReport {
    let mut report = ValidityReport { empty: k.is_empty(), ..ValidityReport::default() };

    let mut unplaced = BTreeSet::new();
    for id in k.cells.keys() {
        for face in id.faces() {
            if !k.contains(&face) {
                report.containment.push(ContainmentViolation { cell: id.clone(), missing_face: face });
            }
        }
        for v in id.vertices() {
            if !k.vertices.contains_key(v) {
                unplaced.insert(v.clone());
            }
        }
    }
    report.unplaced = unplaced.into_iter().collect();

    let placed: Vec<(&CellId, Vec<Point2>)> =
        k.cells.keys().filter_map(|id| k.points(id.vertices()).ok().map(|pts| (id, pts))).collect();
    let boxes: Vec<_> = placed.iter().map(|(_, pts)| bounding_box(pts)).collect();
    for i in 0..placed.len() {
        for j in (i + 1)..placed.len() {
            if !boxes_overlap(&boxes[i], &boxes[j]) {
                continue;
            }
            let (a, pa) = (&placed[i].0, &placed[i].1);
            let (b, pb) = (&placed[j].0, &placed[j].1);
            if !meets_in_common_faces(a, pa, b, pb) {
                report.intersection.push(IntersectionViolation { first: (*a).clone(), second: (*b).clone() });
            }
        }
    }
    report
}

type BBox = (Rational, Rational, Rational, Rational);

fn bounding_box(pts: &[Point2]) -> BBox {
    let mut bb = (pts[0].x.clone(), pts[0].y.clone(), pts[0].x.clone(), pts[0].y.clone());
    for p in &pts[1..] {
        if p.x < bb.0 {
            bb.0 = p.x.clone();
        }
        if p.y < bb.1 {
            bb.1 = p.y.clone();
        }
        if p.x > bb.2 {
            bb.2 = p.x.clone();
        }
        if p.y > bb.3 {
            bb.3 = p.y.clone();
        }
    }
    bb
}

fn boxes_overlap(a: &BBox, b: &BBox) -> bool {
    a.0 <= b.2 && b.0 <= a.2 && a.1 <= b.3 && b.1 <= a.3
}

/// True iff the realizations of the two cells intersect exactly in the hull of
/// their shared vertices.
fn meets_in_common_faces(a: &CellId, pa: &[Point2], b: &CellId, pb: &[Point2]) -> bool {
    let shared: Vec<usize> = (0..a.vertices().len()).filter(|&i| b.vertices().contains(&a.vertices()[i])).collect();
    let shared_pts: Vec<&Point2> = shared.iter().map(|&i| &pa[i]).collect();
    let meet = convex_meet(pa, pb);
    meet.iter().all(|q| match shared_pts.as_slice() {
        [] => false,
        [v] => q == *v,
        [u, w] => on_segment(q, u, w),
        _ => true,
    })
}

/// Points whose convex hull is the intersection of two convex cells given by
/// their vertices (1, 2 or 3 points each). Empty iff the cells are disjoint.
fn convex_meet(pa: &[Point2], pb: &[Point2]) -> Vec<Point2> {
    if pb.len() == 3 {
        return clip_by_triangle(pa, pb);
    }
    if pa.len() == 3 {
        return clip_by_triangle(pb, pa);
    }
    match (pa, pb) {
        ([p], [q]) => {
            if p == q {
                vec![p.clone()]
            } else {
                Vec::new()
            }
        }
        ([p], [u, w]) | ([u, w], [p]) => {
            if on_segment(p, u, w) {
                vec![p.clone()]
            } else {
                Vec::new()
            }
        }
        ([a0, a1], [b0, b1]) => match segment_intersection(a0, a1, b0, b1) {
            SegmentIntersection::Empty => Vec::new(),
            SegmentIntersection::Point(p) => vec![p],
            SegmentIntersection::Overlap(p, q) => vec![p, q],
        },
        _ => Vec::new(),
    }
}

fn clip_by_triangle(subject: &[Point2], tri: &[Point2]) -> Vec<Point2> {
    let mut t = tri.to_vec();
    if orientation(&t[0], &t[1], &t[2]) == Orientation::Clockwise {
        t.swap(1, 2);
    }
    let mut poly = subject.to_vec();
    for i in 0..3 {
        let (e0, e1) = (&t[i], &t[(i + 1) % 3]);
        let n = poly.len();
        if n == 0 {
            break;
        }
        let mut next = Vec::with_capacity(n + 2);
        for j in 0..n {
            let cur = &poly[j];
            let prev = &poly[(j + n - 1) % n];
            let dc = cross(e0, e1, cur);
            let dp = cross(e0, e1, prev);
            let cur_in = dc >= Rational::from_integer(0.into());
            let prev_in = dp >= Rational::from_integer(0.into());
            if cur_in != prev_in {
                let t = &dp / (&dp - &dc);
                next.push(Point2::new(&prev.x + &t * (&cur.x - &prev.x), &prev.y + &t * (&cur.y - &prev.y)));
            }
            if cur_in {
                next.push(cur.clone());
            }
        }
        poly = next;
    }
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VertexId {
        VertexId::from(s)
    }

    fn set(ids: &[CellId]) -> BTreeSet<CellId> {
        ids.iter().cloned().collect()
    }

    fn square_complex() -> CellComplex {
        let mut k = CellComplex::new("square");
        k.add_vertex("a", Point2::from_ints(0, 0)).unwrap();
        k.add_vertex("b", Point2::from_ints(1, 0)).unwrap();
        k.add_vertex("c", Point2::from_ints(1, 1)).unwrap();
        k.add_vertex("d", Point2::from_ints(0, 1)).unwrap();
        k.add_triangle(&v("a"), &v("b"), &v("c")).unwrap();
        k.add_triangle(&v("a"), &v("c"), &v("d")).unwrap();
        k
    }

    #[test]
    fn single_vertex_is_valid() {
        let mut k = CellComplex::new("pt");
        k.add_vertex("a", Point2::from_ints(0, 0)).unwrap();
        assert!(validate_cw(&k).is_valid());
    }

    #[test]
    fn empty_complex_is_invalid() {
        let report = validate_cw(&CellComplex::new("void"));
        assert!(report.empty);
        assert!(!report.is_valid());
    }

    #[test]
    fn missing_endpoint_is_containment_violation() {
        let vertices = [(v("a"), Point2::from_ints(0, 0)), (v("b"), Point2::from_ints(1, 0))].into_iter().collect();
        let cells = vec![
            Cell { kind: CellKind::Vertex, vertex_ids: vec![v("a")] },
            Cell { kind: CellKind::Edge, vertex_ids: vec![v("a"), v("b")] },
        ];
        let k = CellComplex::from_parts("k", vertices, cells).unwrap();
        let report = validate_cw(&k);
        assert_eq!(
            report.containment,
            vec![ContainmentViolation {
                cell: CellId::edge(v("a"), v("b")).unwrap(),
                missing_face: CellId::vertex(v("b")),
            }]
        );
        assert!(report.intersection.is_empty());
        assert!(!report.is_valid());
    }

    #[test]
    fn crossing_edges_are_intersection_violation() {
        let mut k = CellComplex::new("x");
        k.add_vertex("a", Point2::from_ints(0, 0)).unwrap();
        k.add_vertex("b", Point2::from_ints(2, 2)).unwrap();
        k.add_vertex("c", Point2::from_ints(0, 2)).unwrap();
        k.add_vertex("d", Point2::from_ints(2, 0)).unwrap();
        let ab = k.add_edge(&v("a"), &v("b")).unwrap();
        let cd = k.add_edge(&v("c"), &v("d")).unwrap();
        // oracle: the crossing point (1,1) is not among the vertices
        let crossing = segment_intersection(
            k.point(&v("a")).unwrap(),
            k.point(&v("b")).unwrap(),
            k.point(&v("c")).unwrap(),
            k.point(&v("d")).unwrap(),
        );
        assert_eq!(crossing, SegmentIntersection::Point(Point2::from_ints(1, 1)));
        assert!(k.vertices().values().all(|p| *p != Point2::from_ints(1, 1)));
        let report = validate_cw(&k);
        assert_eq!(report.intersection, vec![IntersectionViolation { first: ab, second: cd }]);
    }

    #[test]
    fn t_junction_and_overlap_are_violations() {
        let mut k = CellComplex::new("t");
        k.add_vertex("a", Point2::from_ints(0, 0)).unwrap();
        k.add_vertex("b", Point2::from_ints(4, 0)).unwrap();
        k.add_vertex("m", Point2::from_ints(2, 0)).unwrap();
        k.add_edge(&v("a"), &v("b")).unwrap();
        assert_eq!(validate_cw(&k).intersection.len(), 1); // m lies inside ab
        k.add_vertex("c", Point2::from_ints(6, 0)).unwrap();
        k.add_edge(&v("m"), &v("c")).unwrap();
        assert!(validate_cw(&k).intersection.len() >= 2);
    }

    #[test]
    fn vertex_inside_triangle_is_violation() {
        let mut k = square_complex();
        k.add_vertex("z", Point2::new(crate::geometry::ratio(1, 4), crate::geometry::ratio(3, 4))).unwrap();
        let report = validate_cw(&k);
        assert_eq!(report.intersection.len(), 1);
        assert_eq!(report.intersection[0].second, CellId::vertex(v("z")));
    }

    #[test]
    fn overlapping_triangles_are_violation() {
        let mut k = CellComplex::new("tt");
        k.add_vertex("a", Point2::from_ints(0, 0)).unwrap();
        k.add_vertex("b", Point2::from_ints(4, 0)).unwrap();
        k.add_vertex("c", Point2::from_ints(0, 4)).unwrap();
        k.add_vertex("d", Point2::from_ints(1, 1)).unwrap();
        k.add_vertex("e", Point2::from_ints(5, 1)).unwrap();
        k.add_vertex("f", Point2::from_ints(1, 5)).unwrap();
        k.add_triangle(&v("a"), &v("b"), &v("c")).unwrap();
        k.add_triangle(&v("d"), &v("e"), &v("f")).unwrap();
        assert!(!validate_cw(&k).intersection.is_empty());
    }

    #[test]
    fn triangulated_square_is_valid() {
        assert!(validate_cw(&square_complex()).is_valid());
    }

    #[test]
    fn degenerate_triangle_rejected() {
        let mut k = CellComplex::new("line");
        k.add_vertex("a", Point2::from_ints(0, 0)).unwrap();
        k.add_vertex("b", Point2::from_ints(1, 1)).unwrap();
        k.add_vertex("c", Point2::from_ints(2, 2)).unwrap();
        assert!(matches!(k.add_triangle(&v("a"), &v("b"), &v("c")), Err(CwError::DegenerateTriangle(_))));
    }

    #[test]
    fn closure_of_triangle() {
        let k = square_complex();
        let t = CellId::new([v("a"), v("b"), v("c")]).unwrap();
        let cl = k.closure(&set(&[t])).unwrap();
        assert_eq!(cl.len(), 7);
        assert_eq!(cl.iter().filter(|c| c.kind() == CellKind::Edge).count(), 3);
        assert_eq!(cl.iter().filter(|c| c.kind() == CellKind::Vertex).count(), 3);
    }

    #[test]
    fn boundary_of_edge_is_endpoints() {
        let k = square_complex();
        let e = CellId::edge(v("a"), v("b")).unwrap();
        let bdy = k.boundary(&set(&[e])).unwrap();
        assert_eq!(bdy, set(&[CellId::vertex(v("a")), CellId::vertex(v("b"))]));
    }

    #[test]
    fn interior_of_filled_square() {
        let k = square_complex();
        let t1 = CellId::new([v("a"), v("b"), v("c")]).unwrap();
        let t2 = CellId::new([v("a"), v("c"), v("d")]).unwrap();
        let diag = CellId::edge(v("a"), v("c")).unwrap();
        // oracle: enumerate edges with their incident triangle counts
        let tris = [&t1, &t2];
        let inner_edges: BTreeSet<CellId> = k
            .cells()
            .keys()
            .filter(|c| c.kind() == CellKind::Edge)
            .filter(|e| tris.iter().filter(|t| e.is_face_of(t)).count() == 2)
            .cloned()
            .collect();
        assert_eq!(inner_edges, set(std::slice::from_ref(&diag)));
        let int = k.interior(&set(&[t1.clone(), t2.clone()])).unwrap();
        assert_eq!(int, set(&[t1, t2, diag]));
    }

    #[test]
    fn unknown_cell_is_error() {
        let k = square_complex();
        let ghost = CellId::vertex(v("ghost"));
        assert_eq!(k.closure(&set(std::slice::from_ref(&ghost))), Err(CwError::UnknownCellId(ghost)));
    }

    #[test]
    fn closure_idempotent() {
        let k = square_complex();
        for c in k.cell_ids() {
            let once = k.closure(&set(&[c])).unwrap();
            assert_eq!(k.closure(&once).unwrap(), once);
        }
    }
}
