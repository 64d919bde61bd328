//! Exact planar primitives over arbitrary-precision rationals.
//!
//! Every predicate here is sign-exact: coordinates are [`BigRational`]s kept in
//! reduced form with a positive denominator, so structural equality of two
//! points is geometric equality.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub type Rational = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("polygon is not simple")]
    NonSimplePolygon,
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("rational `{0}` is not in canonical num/den form")]
    NonCanonicalRational(String),
}

/// Builds `n/1`.
pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Builds `n/d`, reducing. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Canonical text form `num/den` (denominator always written, even when 1).
pub fn format_rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses the canonical `num/den` form, rejecting unreduced fractions,
/// non-positive denominators, signs on the denominator and leading zeros.
pub fn parse_rational(text: &str) -> Result<Rational, GeometryError> {
    let (num, den) = text.split_once('/').ok_or_else(|| GeometryError::MalformedRational(text.to_string()))?;
    let n = BigInt::from_str(num).map_err(|_| GeometryError::MalformedRational(text.to_string()))?;
    let d = BigInt::from_str(den).map_err(|_| GeometryError::MalformedRational(text.to_string()))?;
    if d.is_zero() {
        return Err(GeometryError::MalformedRational(text.to_string()));
    }
    let canonical = !d.is_negative() && n.gcd(&d).is_one() && n.to_string() == num && d.to_string() == den;
    if !canonical {
        return Err(GeometryError::NonCanonicalRational(text.to_string()));
    }
    Ok(Rational::new_raw(n, d))
}

/// Parses a plain decimal literal such as `-0.55` or `3` exactly.
pub fn parse_decimal(text: &str) -> Result<Rational, GeometryError> {
    let bad = || GeometryError::MalformedRational(text.to_string());
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text),
    };
    let (whole, frac) = body.split_once('.').unwrap_or((body, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{}{}", if whole.is_empty() { "0" } else { whole }, frac);
    let numer = BigInt::from_str(&digits).map_err(|_| bad())?;
    let denom = num_traits::pow(BigInt::from(10), frac.len());
    let value = Rational::new(numer, denom);
    Ok(if negative { -value } else { value })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Self { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Self::new(int(x), int(y))
    }

    /// Exact point from decimal literals, e.g. `Point2::decimal("-0.55", "1.25")`.
    pub fn decimal(x: &str, y: &str) -> Result<Self, GeometryError> {
        Ok(Self::new(parse_decimal(x)?, parse_decimal(y)?))
    }

    pub fn translate(&self, dx: &Rational, dy: &Rational) -> Self {
        Self::new(&self.x + dx, &self.y + dy)
    }

    pub fn midpoint(&self, other: &Point2) -> Point2 {
        let two = int(2);
        Point2::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.x.to_f64().unwrap_or(f64::NAN), self.y.to_f64().unwrap_or(f64::NAN))
    }
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

/// Twice the signed area of triangle `abc`.
pub fn cross(a: &Point2, b: &Point2, c: &Point2) -> Rational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

pub fn orientation(a: &Point2, b: &Point2, c: &Point2) -> Orientation {
    let det = cross(a, b, c);
    if det.is_positive() {
        Orientation::CounterClockwise
    } else if det.is_negative() {
        Orientation::Clockwise
    } else {
        Orientation::Collinear
    }
}

/// True iff `p` lies on the closed segment `ab`.
pub fn on_segment(p: &Point2, a: &Point2, b: &Point2) -> bool {
    within_box(p, a, b) && orientation(a, b, p) == Orientation::Collinear
}

fn within_box(p: &Point2, a: &Point2, b: &Point2) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    &p.x >= xlo && &p.x <= xhi && &p.y >= ylo && &p.y <= yhi
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SegmentIntersection {
    Empty,
    Point(Point2),
    /// Collinear overlap, endpoints ordered lexicographically.
    Overlap(Point2, Point2),
}

/// Exact intersection of closed segments `ab` and `cd`.
pub fn segment_intersection(a: &Point2, b: &Point2, c: &Point2, d: &Point2) -> SegmentIntersection {
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);

    if d1.is_zero() && d2.is_zero() {
        // Collinear: intersect the lexicographic ranges.
        let (s0, s1) = if a <= b { (a, b) } else { (b, a) };
        let (t0, t1) = if c <= d { (c, d) } else { (d, c) };
        let lo = if s0 >= t0 { s0 } else { t0 };
        let hi = if s1 <= t1 { s1 } else { t1 };
        return match lo.cmp(hi) {
            std::cmp::Ordering::Less => SegmentIntersection::Overlap(lo.clone(), hi.clone()),
            std::cmp::Ordering::Equal => SegmentIntersection::Point(lo.clone()),
            std::cmp::Ordering::Greater => SegmentIntersection::Empty,
        };
    }

    let straddle_cd = d1.signum() * d2.signum();
    let straddle_ab = d3.signum() * d4.signum();
    if straddle_cd.is_positive() || straddle_ab.is_positive() {
        return SegmentIntersection::Empty;
    }
    // Not collinear and each segment touches or crosses the other's line.
    if d1.is_zero() {
        return SegmentIntersection::Point(a.clone());
    }
    if d2.is_zero() {
        return SegmentIntersection::Point(b.clone());
    }
    if d3.is_zero() {
        return SegmentIntersection::Point(c.clone());
    }
    if d4.is_zero() {
        return SegmentIntersection::Point(d.clone());
    }
    let t = &d1 / (&d1 - &d2);
    SegmentIntersection::Point(Point2::new(&a.x + &t * (&b.x - &a.x), &a.y + &t * (&b.y - &a.y)))
}

/// Squared Euclidean distance from `p` to the closed segment `ab`.
pub fn segment_distance_squared(p: &Point2, a: &Point2, b: &Point2) -> Rational {
    let dx = &b.x - &a.x;
    let dy = &b.y - &a.y;
    let len2 = &dx * &dx + &dy * &dy;
    let mut t = if len2.is_zero() { Rational::zero() } else { ((&p.x - &a.x) * &dx + (&p.y - &a.y) * &dy) / &len2 };
    if t.is_negative() {
        t = Rational::zero();
    } else if t > Rational::one() {
        t = Rational::one();
    }
    let qx = &a.x + &t * &dx - &p.x;
    let qy = &a.y + &t * &dy - &p.y;
    &qx * &qx + &qy * &qy
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Location {
    Inside,
    OnBoundary,
    Outside,
}

/// Iterates the closed loop's edges `(v[i], v[i+1 mod n])`.
pub fn loop_edges(points: &[Point2]) -> impl Iterator<Item = (&Point2, &Point2)> {
    let n = points.len();
    (0..n).map(move |i| (&points[i], &points[(i + 1) % n]))
}

/// Crossing-parity classification; assumes the loop is simple.
pub fn locate(p: &Point2, points: &[Point2]) -> Location {
    let mut inside = false;
    for (a, b) in loop_edges(points) {
        if on_segment(p, a, b) {
            return Location::OnBoundary;
        }
        if (a.y > p.y) != (b.y > p.y) {
            let o = orientation(a, b, p);
            let upward = b.y > a.y;
            if (upward && o == Orientation::CounterClockwise) || (!upward && o == Orientation::Clockwise) {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Classifies `p` against a simple closed polygon.
pub fn point_in_polygon(p: &Point2, points: &[Point2]) -> Result<Location, GeometryError> {
    if !simple_polygon(points)? {
        return Err(GeometryError::NonSimplePolygon);
    }
    Ok(locate(p, points))
}

/// True iff the loop has distinct vertices and only consecutive edges meet,
/// and then only at their shared endpoint.
pub fn simple_polygon(points: &[Point2]) -> Result<bool, GeometryError> {
    let n = points.len();
    if n < 3 {
        return Err(GeometryError::TooFewVertices(n));
    }
    let mut sorted: Vec<&Point2> = points.iter().collect();
    sorted.sort();
    if sorted.windows(2).any(|w| w[0] == w[1]) {
        return Ok(false);
    }
    // Zero-area loops (all vertices collinear) fold back on themselves.
    if points.iter().skip(2).all(|c| orientation(&points[0], &points[1], c) == Orientation::Collinear) {
        return Ok(false);
    }
    for i in 0..n {
        let (a, b) = (&points[i], &points[(i + 1) % n]);
        for j in (i + 1)..n {
            let (c, d) = (&points[j], &points[(j + 1) % n]);
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            let hit = segment_intersection(a, b, c, d);
            if adjacent {
                let shared = if j == i + 1 { b } else { a };
                match hit {
                    SegmentIntersection::Point(ref q) if q == shared => {}
                    _ => return Ok(false),
                }
            } else if hit != SegmentIntersection::Empty {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Twice the signed area (positive for counter-clockwise loops).
pub fn signed_area2(points: &[Point2]) -> Rational {
    loop_edges(points).fold(Rational::zero(), |acc, (a, b)| acc + (&a.x * &b.y - &b.x * &a.y))
}

/// Mean of the loop's vertices.
pub fn vertex_centroid(points: &[Point2]) -> Point2 {
    let n = Rational::from_integer(BigInt::from(points.len()));
    let sx = points.iter().fold(Rational::zero(), |acc, p| acc + &p.x);
    let sy = points.iter().fold(Rational::zero(), |acc, p| acc + &p.y);
    Point2::new(sx / &n, sy / n)
}

/// True iff every turn of the loop has the same sign (collinear turns allowed).
pub fn is_convex(points: &[Point2]) -> bool {
    let n = points.len();
    let mut sign = 0i8;
    for i in 0..n {
        let s = match orientation(&points[i], &points[(i + 1) % n], &points[(i + 2) % n]) {
            Orientation::CounterClockwise => 1,
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
        };
        if s != 0 {
            if sign != 0 && s != sign {
                return false;
            }
            sign = s;
        }
    }
    sign != 0
}

/// Largest dyadic `r = k / 2^20` with `r^2 <= value` (value >= 0).
pub fn sqrt_lower_bound(value: &Rational) -> Rational {
    if !value.is_positive() {
        return Rational::zero();
    }
    let scale = 1i64 << 20;
    let approx = value.to_f64().unwrap_or(0.0).sqrt() * scale as f64;
    let mut k = BigInt::from(approx.floor() as i64);
    let denom = BigInt::from(scale);
    let check = |k: &BigInt| {
        let r = Rational::new(k.clone(), denom.clone());
        &r * &r <= *value
    };
    while k.is_positive() && !check(&k) {
        k -= 1;
    }
    while check(&(&k + 1)) {
        k += 1;
    }
    Rational::new(k, denom)
}
