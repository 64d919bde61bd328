//! Deterministic SVG drawings: filled outer cycles, white inner interiors,
//! gray hole dots and filament segments.

use std::fmt::Write;

use num_traits::ToPrimitive;

use crate::document::{Target, Workspace};
use crate::error::Error;
use crate::geometry::{Point2, Rational};
use crate::ribbon::{FilledCycle, Ribbon};

pub const HOLE_RADIUS: f64 = 0.06;
pub const STROKE_WIDTH: f64 = 0.02;
const MARGIN: f64 = 0.25;
const PALETTE: [&str; 6] = ["#9ecae1", "#fdae6b", "#a1d99b", "#bcbddc", "#fc9272", "#d9d9d9"];

fn num(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(0.0)
}

/// Fixed four-decimal form without trailing zeros; `-0` prints as `0`.
fn fmt(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".to_string()
    } else {
        s.to_string()
    }
}

/// SVG y grows downward, so every y is negated.
fn xy(p: &Point2) -> (String, String) {
    (fmt(num(&p.x)), fmt(-num(&p.y)))
}

fn points_attr(points: &[Point2]) -> String {
    points
        .iter()
        .map(|p| {
            let (x, y) = xy(p);
            format!("{x},{y}")
        })
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Default)]
struct Canvas {
    body: String,
    lo: Option<(f64, f64)>,
    hi: Option<(f64, f64)>,
}

impl Canvas {
    fn extend_bounds(&mut self, points: &[Point2]) {
        for p in points {
            let (x, y) = (num(&p.x), -num(&p.y));
            self.lo = Some(self.lo.map_or((x, y), |(a, b)| (a.min(x), b.min(y))));
            self.hi = Some(self.hi.map_or((x, y), |(a, b)| (a.max(x), b.max(y))));
        }
    }

    fn polygon(&mut self, class: &str, fill: &str, points: &[Point2]) {
        self.extend_bounds(points);
        let _ = writeln!(self.body, r#"<polygon class="{class}" fill="{fill}" points="{}"/>"#, points_attr(points));
    }

    fn line(&mut self, a: &Point2, b: &Point2) {
        let ((x1, y1), (x2, y2)) = (xy(a), xy(b));
        let _ = writeln!(self.body, r#"<line class="filament" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
    }

    fn dot(&mut self, p: &Point2) {
        let (x, y) = xy(p);
        let _ = writeln!(self.body, r#"<circle class="hole" cx="{x}" cy="{y}" r="{}"/>"#, fmt(HOLE_RADIUS));
    }

    fn label(&mut self, points: &[Point2], text: &str) {
        let x = points.iter().map(|p| num(&p.x)).fold(f64::INFINITY, f64::min);
        let y = points.iter().map(|p| -num(&p.y)).fold(f64::INFINITY, f64::min);
        let escaped = text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;");
        let _ = writeln!(self.body, r#"<text x="{}" y="{}">{escaped}</text>"#, fmt(x), fmt(y - 0.05));
    }

    fn ribbon(&mut self, r: &Ribbon, color: &str) {
        self.polygon("outer", color, r.outer().points());
        self.polygon("inner", "#ffffff", r.inner().points());
        for f in r.filaments() {
            if let Some((q, p)) = r.filament_points(f) {
                self.line(q, p);
            }
        }
        for h in r.holes() {
            self.dot(&h.marker);
        }
        self.label(r.outer().points(), r.label());
    }

    fn cycles(&mut self, cs: &[&FilledCycle]) {
        for (i, c) in cs.iter().enumerate() {
            self.polygon("cycle", PALETTE[i % PALETTE.len()], c.points());
            self.label(c.points(), c.label());
        }
    }

    fn finish(self) -> String {
        let (lo, hi) = (self.lo.unwrap_or((0.0, 0.0)), self.hi.unwrap_or((1.0, 1.0)));
        let (x, y) = (lo.0 - MARGIN, lo.1 - MARGIN);
        let (w, h) = (hi.0 - lo.0 + 2.0 * MARGIN, hi.1 - lo.1 + 2.0 * MARGIN);
        let mut out = String::new();
        out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" viewBox="{} {} {} {}">"#,
            fmt(x),
            fmt(y),
            fmt(w),
            fmt(h)
        );
        let _ = writeln!(
            out,
            "<style>polygon{{stroke:#000000;stroke-width:{sw}}} .filament{{stroke:#000000;stroke-width:{sw}}} \
             .hole{{fill:#808080}} text{{font-size:0.15px;font-family:sans-serif}}</style>",
            sw = fmt(STROKE_WIDTH)
        );
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

pub fn render_svg(ws: &Workspace, target: &str) -> Result<String, Error> {
    let mut canvas = Canvas::default();
    let ribbons = |canvas: &mut Canvas, rs: &mut dyn Iterator<Item = &Ribbon>| {
        for (i, r) in rs.enumerate() {
            canvas.ribbon(r, PALETTE[i % PALETTE.len()]);
        }
    };
    match ws.find(target)? {
        Target::Ribbon(_, r) => ribbons(&mut canvas, &mut std::iter::once(r)),
        Target::RibbonComplex(_, x) => ribbons(&mut canvas, &mut x.ribbons().iter()),
        Target::RibbonNerve(_, n) => ribbons(&mut canvas, &mut n.ribbons().iter()),
        Target::Complex(c) if !c.ribbons.is_empty() => ribbons(&mut canvas, &mut c.ribbons.values()),
        Target::Complex(c) => canvas.cycles(&c.cycles.values().collect::<Vec<_>>()),
        Target::Cycle(_, c) => canvas.cycles(&[c]),
        Target::Family(_, _, cs) => canvas.cycles(&cs.iter().collect::<Vec<_>>()),
        Target::VortexNerve(c, v) => {
            // outermost first so inner cycles paint over outer ones
            let n = v.cycles().len();
            for (i, cyc) in v.cycles().iter().rev().enumerate() {
                let fill = if i + 1 == n && n > 1 { "#ffffff" } else { PALETTE[i % PALETTE.len()] };
                canvas.polygon("cycle", fill, cyc.points());
            }
            for f in v.filaments() {
                if let (Ok(q), Ok(p)) = (c.complex.point(&f.outer_vertex), c.complex.point(&f.inner_vertex)) {
                    canvas.line(q, p);
                }
            }
            if let Some(outer) = v.cycles().last() {
                canvas.label(outer.points(), v.label());
            }
        }
    }
    Ok(canvas.finish())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::figures;

    fn count(s: &str, needle: &str) -> usize {
        s.matches(needle).count()
    }

    #[test]
    fn figure_one_composition() {
        let ws = figures::fig1_1().resolve().unwrap();
        let svg = render_svg(&ws, "rbE").unwrap();
        assert_eq!((count(&svg, "<polygon"), count(&svg, "<circle")), (2, 2));
        assert!(svg.contains(r#"r="0.06""#) && svg.contains("stroke-width:0.02"));
        assert_eq!(svg, render_svg(&ws, "rbE").unwrap());
    }

    #[test]
    fn bare_ribbon_and_unknown_target() {
        let ws = figures::fig3().resolve().unwrap();
        let svg = render_svg(&ws, "rbAp").unwrap();
        assert_eq!((count(&svg, "<polygon"), count(&svg, "<circle")), (2, 0));
        assert!(matches!(render_svg(&ws, "nothing"), Err(Error::UnknownTarget(_))));
        let all = render_svg(&ws, "rbxK").unwrap();
        assert_eq!((count(&all, "<polygon"), count(&all, "<circle")), (10, 6));
    }

    #[test]
    fn filament_and_vortex() {
        let ws = figures::fig4().resolve().unwrap();
        let svg = render_svg(&ws, "rbE").unwrap();
        assert!(svg.contains(r#"<line class="filament" x1="1" y1="-0.5" x2="1" y2="-0.75"/>"#));
        let ws = figures::fig2().resolve().unwrap();
        assert_eq!(count(&render_svg(&ws, "vNrvK").unwrap(), "<polygon"), 3);
    }

    #[test]
    fn number_format() {
        assert_eq!(fmt(-0.0), "0");
        assert_eq!(fmt(1.5), "1.5");
        assert_eq!(fmt(2.0), "2");
        assert_eq!(fmt(1.0 / 3.0), "0.3333");
    }
}
