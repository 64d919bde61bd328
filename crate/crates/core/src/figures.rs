//! Documents encoding the worked figures: single ribbons, a two-ribbon nerve,
//! a vortex nerve, a five-ribbon complex, a ribbon with a filament, and two
//! ribbon nerves. Coordinates are exact decimals.

use std::collections::BTreeMap;

use crate::document::{ComplexSpec, Document, RibbonSpec, VortexSpec};
use crate::geometry::{parse_decimal, Point2};
use crate::ribbon::{Filament, Hole};

fn pt(x: &str, y: &str) -> Point2 {
    Point2::new(parse_decimal(x).expect("literal"), parse_decimal(y).expect("literal"))
}

/// Accumulates a complex; a coordinate already present reuses its vertex id.
struct Builder {
    spec: ComplexSpec,
    ids: BTreeMap<Point2, String>,
}

impl Builder {
    fn new() -> Self {
        Self { spec: ComplexSpec::default(), ids: BTreeMap::new() }
    }

    fn vertex(&mut self, id: String, p: Point2) -> String {
        if let Some(existing) = self.ids.get(&p) {
            return existing.clone();
        }
        self.ids.insert(p.clone(), id.clone());
        self.spec.vertices.insert(id.clone(), p);
        id
    }

    /// Adds cycle `label` with vertices `{prefix}0, {prefix}1, …`.
    fn cycle(&mut self, label: &str, prefix: &str, coords: &[(&str, &str)]) -> Vec<String> {
        let ids: Vec<String> =
            coords.iter().enumerate().map(|(i, (x, y))| self.vertex(format!("{prefix}{i}"), pt(x, y))).collect();
        self.spec.cycles.insert(label.to_string(), ids.clone());
        ids
    }

    fn ribbon(&mut self, name: &str, outer: &str, inner: &str, holes: &[(&str, &str)], filaments: Vec<Filament>) {
        let holes = holes.iter().enumerate().map(|(i, (x, y))| Hole::new(format!("{name}.h{i}"), pt(x, y))).collect();
        self.spec.ribbons.insert(
            name.to_string(),
            RibbonSpec { outer: outer.into(), inner: inner.into(), filaments, holes, allow_concentric: false },
        );
    }

    fn frame(mut self, lo: (&str, &str), hi: (&str, &str)) -> ComplexSpec {
        self.spec.frame = Some((pt(lo.0, lo.1), pt(hi.0, hi.1)));
        self.spec
    }
}

fn names(xs: &[&str]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

fn document(complexes: Vec<(&str, ComplexSpec)>) -> Document {
    Document { complexes: complexes.into_iter().map(|(n, c)| (n.to_string(), c)).collect(), ..Document::default() }
}

const OUTER_E: [(&str, &str); 10] = [
    ("0", "0"),
    ("1", "0.5"),
    ("2", "0"),
    ("3", "0.5"),
    ("3", "1.5"),
    ("2", "2"),
    ("1", "1.5"),
    ("0", "2"),
    ("-1", "1.5"),
    ("-1", "0.5"),
];

const INNER_A: [(&str, &str); 10] = [
    ("0", "0.25"),
    ("1", "0.75"),
    ("2", "0.25"),
    ("2.5", "0.5"),
    ("2.5", "1.25"),
    ("2", "1.55"),
    ("1", "1.25"),
    ("0", "1.5"),
    ("-0.55", "1.25"),
    ("-0.55", "0.75"),
];

const OUTER_B: [(&str, &str); 6] =
    [("2", "2"), ("1", "2.25"), ("1", "3.55"), ("2.25", "3.85"), ("3.5", "3.25"), ("3.5", "2.25")];
const INNER_B: [(&str, &str); 6] =
    [("2", "2.25"), ("1.25", "2.5"), ("1.25", "3"), ("2.25", "3.25"), ("3.25", "3"), ("3.25", "2.35")];
const HOLES_B: [(&str, &str); 3] = [("2.3", "3.41"), ("2.5", "3.61"), ("2.8", "3.31")];

/// Single ribbon `rbE` with two holes.
pub fn fig1_1() -> Document {
    let mut b = Builder::new();
    b.cycle("rbE.outer", "a", &OUTER_E);
    b.cycle(
        "rbE.inner",
        "b",
        &[
            ("0", "0.25"),
            ("1", "0.75"),
            ("2", "0.25"),
            ("2.5", "0.5"),
            ("2.5", "0.75"),
            ("2", "1.35"),
            ("1", "1.25"),
            ("0", "1.5"),
            ("-0.55", "1.25"),
            ("-0.55", "0.75"),
        ],
    );
    b.ribbon("rbE", "rbE.outer", "rbE.inner", &[("-0.8", "1.05"), ("2.8", "0.55")], Vec::new());
    document(vec![("fig1_1", b.frame(("-1.25", "-0.25"), ("3.25", "4")))])
}

/// Ribbons `rbA` and `rbB` sharing one vertex; they form the nerve `rbNrvK`.
pub fn fig1_2() -> Document {
    let mut b = Builder::new();
    b.cycle("rbA.outer", "a", &OUTER_E);
    b.cycle("rbA.inner", "b", &INNER_A);
    b.cycle("rbB.outer", "c", &OUTER_B);
    b.cycle("rbB.inner", "d", &INNER_B);
    b.ribbon("rbA", "rbA.outer", "rbA.inner", &[("-0.8", "1.05"), ("2.8", "0.85")], Vec::new());
    b.ribbon("rbB", "rbB.outer", "rbB.inner", &HOLES_B, Vec::new());
    b.spec.ribbon_nerves.insert("rbNrvK".into(), names(&["rbA", "rbB"]));
    b.spec.ribbon_complexes.insert("rbxK2".into(), names(&["rbA", "rbB"]));
    document(vec![("fig1_2", b.frame(("-1.25", "-0.25"), ("3.75", "4")))])
}

/// Both parts of the first figure in one document.
pub fn fig1() -> Document {
    let mut doc = fig1_1();
    doc.complexes.extend(fig1_2().complexes);
    doc
}

/// Vortex nerve of three nested cycles, innermost first.
pub fn fig2() -> Document {
    let mut b = Builder::new();
    b.cycle(
        "cycA",
        "a",
        &[
            ("0", "0.35"),
            ("1", "0.85"),
            ("2", "0.35"),
            ("2.3", "0.65"),
            ("2.3", "0.85"),
            ("2", "1.05"),
            ("1", "1.15"),
            ("0", "1.25"),
            ("-0.35", "1"),
            ("-0.35", "0.75"),
        ],
    );
    b.cycle(
        "cycAp",
        "p",
        &[
            ("0", "0.25"),
            ("1", "0.75"),
            ("2", "0.25"),
            ("2.5", "0.5"),
            ("2.5", "1"),
            ("2", "1.35"),
            ("1", "1.55"),
            ("0", "1.85"),
            ("-0.55", "1.25"),
            ("-0.55", "0.75"),
        ],
    );
    b.cycle(
        "cycB",
        "b",
        &[
            ("0", "0"),
            ("1", "0.5"),
            ("2", "0"),
            ("3", "0.5"),
            ("3", "1.8"),
            ("2", "2"),
            ("1", "2.5"),
            ("0", "2.25"),
            ("-1", "1.5"),
            ("-1", "0.5"),
        ],
    );
    b.spec
        .vortex_nerves
        .insert("vNrvK".into(), VortexSpec { cycles: names(&["cycA", "cycAp", "cycB"]), filaments: Vec::new() });
    document(vec![("fig2", b.frame(("-1.25", "-0.25"), ("3.25", "2.75")))])
}

fn ribbon_b_prime(b: &mut Builder) {
    b.cycle(
        "rbBp.outer",
        "e",
        &[
            ("2", "2"),
            ("1", "2"),
            ("0", "3"),
            ("-0.2", "3.25"),
            ("-1", "3.25"),
            ("-1", "2.25"),
            ("0", "2.15"),
            ("1", "1.75"),
        ],
    );
    b.cycle(
        "rbBp.inner",
        "f",
        &[("-0.85", "2.75"), ("-0.85", "2.35"), ("0", "2.35"), ("0.25", "2.15"), ("0.25", "2.45")],
    );
    b.ribbon("rbBp", "rbBp.outer", "rbBp.inner", &[], Vec::new());
}

/// Ribbon complex `rbxK` of five ribbons: three meeting at one vertex and two
/// isolated ones.
pub fn fig3() -> Document {
    let mut b = Builder::new();
    b.cycle("rbA.outer", "a", &OUTER_E);
    b.cycle("rbA.inner", "b", &INNER_A);
    b.cycle("rbB.outer", "c", &OUTER_B);
    b.cycle("rbB.inner", "d", &INNER_B);
    b.ribbon("rbA", "rbA.outer", "rbA.inner", &[("-0.8", "1.05"), ("2.8", "0.85"), ("2.8", "1.2")], Vec::new());
    b.ribbon("rbB", "rbB.outer", "rbB.inner", &HOLES_B, Vec::new());
    ribbon_b_prime(&mut b);
    b.cycle("rbAp.outer", "g", &[("7", "0.25"), ("7", "1.25"), ("4", "1.25"), ("4", "0.25")]);
    b.cycle(
        "rbAp.inner",
        "h",
        &[("6.5", "0.35"), ("6.25", "1"), ("5.5", "0.75"), ("4.5", "1"), ("4.5", "0.35"), ("5.5", "0.45")],
    );
    b.ribbon("rbAp", "rbAp.outer", "rbAp.inner", &[], Vec::new());
    b.cycle("rbBpp.outer", "m", &[("6", "1.75"), ("6", "2"), ("5", "3.25"), ("4.5", "3.25"), ("4.5", "1.75")]);
    b.cycle("rbBpp.inner", "n", &[("5.75", "2"), ("5", "2.75"), ("4.75", "2.75"), ("4.75", "2")]);
    b.ribbon("rbBpp", "rbBpp.outer", "rbBpp.inner", &[], Vec::new());
    b.spec.ribbon_complexes.insert("rbxK".into(), names(&["rbA", "rbBp", "rbB", "rbAp", "rbBpp"]));
    document(vec![("fig3", b.frame(("-1.25", "-0.25"), ("7.25", "4")))])
}

/// Ribbon `rbE` with three holes and one filament from `q` on the outer
/// cycle to `p` on the inner cycle.
pub fn fig4() -> Document {
    let mut b = Builder::new();
    b.cycle("rbE.outer", "a", &OUTER_E);
    b.cycle(
        "rbE.inner",
        "b",
        &[
            ("0", "0.25"),
            ("1", "0.75"),
            ("2", "0.25"),
            ("2.5", "0.5"),
            ("2.5", "1"),
            ("2", "1.35"),
            ("1", "1.25"),
            ("0", "1.5"),
            ("-0.55", "1.25"),
            ("-0.55", "0.75"),
        ],
    );
    // a1 = q = (1, 0.5), b1 = p = (1, 0.75)
    let fil = Filament::new("a1", "b1");
    b.ribbon("rbE", "rbE.outer", "rbE.inner", &[("-0.8", "1.3"), ("-0.8", "0.8"), ("0", "1.8")], vec![fil]);
    document(vec![("fig4", b.frame(("-1.25", "-0.25"), ("3.25", "2.25")))])
}

/// Ribbon nerves `rbNrvE` (three ribbons at one vertex) and `rbNrvEp` (two
/// ribbons sharing an edge), six holes each.
pub fn fig5() -> Document {
    let mut a = Builder::new();
    a.cycle("rbA5.outer", "a", &OUTER_E);
    a.cycle("rbA5.inner", "b", &INNER_A);
    a.cycle("rbB5.outer", "c", &OUTER_B);
    a.cycle("rbB5.inner", "d", &INNER_B);
    a.ribbon("rbA5", "rbA5.outer", "rbA5.inner", &[("-0.8", "1.05"), ("2.8", "0.85"), ("2.8", "1.2")], Vec::new());
    a.ribbon("rbB5", "rbB5.outer", "rbB5.inner", &HOLES_B, Vec::new());
    ribbon_b_prime(&mut a);
    a.spec.ribbon_nerves.insert("rbNrvE".into(), names(&["rbA5", "rbB5", "rbBp"]));

    let mut b = Builder::new();
    let mut outer = OUTER_E;
    outer[8] = ("-1", "1.3");
    let mut inner = INNER_A;
    inner[6] = ("1", "1.05");
    b.cycle("rbAq.outer", "a", &outer);
    b.cycle("rbAq.inner", "b", &inner);
    b.cycle(
        "rbBq.outer",
        "c",
        &[("2", "2"), ("1", "1.5"), ("1", "3.55"), ("2.25", "3.85"), ("3.5", "3.25"), ("3.5", "2.25")],
    );
    b.cycle("rbBq.inner", "d", &INNER_B);
    b.ribbon("rbAq", "rbAq.outer", "rbAq.inner", &[("-0.8", "1.05"), ("2.8", "0.85"), ("2.8", "1.2")], Vec::new());
    b.ribbon("rbBq", "rbBq.outer", "rbBq.inner", &HOLES_B, Vec::new());
    b.spec.ribbon_nerves.insert("rbNrvEp".into(), names(&["rbAq", "rbBq"]));

    document(vec![
        ("fig5a", a.frame(("-1.25", "-0.25"), ("3.75", "4"))),
        ("fig5b", b.frame(("-1.25", "-0.25"), ("3.75", "4"))),
    ])
}

/// Three convex families for the nerve-theorem check: a common point, a
/// disjoint pair, and three pairwise-meeting sets with no common point.
pub fn convex_families() -> Document {
    let mut b = Builder::new();
    let square = |x0: i64, y0: i64, x1: i64, y1: i64| {
        [(x0, y0), (x1, y0), (x1, y1), (x0, y1)].map(|(x, y)| (x.to_string(), y.to_string()))
    };
    let add = |b: &mut Builder, label: &str, prefix: &str, pts: &[(String, String)]| {
        let refs: Vec<(&str, &str)> = pts.iter().map(|(x, y)| (x.as_str(), y.as_str())).collect();
        b.cycle(label, prefix, &refs);
    };
    add(&mut b, "sq1", "s", &square(0, 0, 4, 4));
    add(&mut b, "sq2", "t", &square(2, 2, 6, 6));
    add(&mut b, "sq3", "u", &square(3, 1, 7, 5));
    add(&mut b, "far1", "v", &square(10, 0, 12, 2));
    add(&mut b, "far2", "w", &square(14, 4, 16, 6));
    add(&mut b, "bottom", "x", &square(20, 0, 26, 1));
    add(&mut b, "left", "y", &square(20, 0, 21, 6));
    add(
        &mut b,
        "diagonal",
        "z",
        &[("24", "0"), ("26", "0"), ("20", "6"), ("20", "4")].map(|(x, y)| (x.to_string(), y.to_string())),
    );
    b.spec.families.insert("common_point".into(), names(&["sq1", "sq2", "sq3"]));
    b.spec.families.insert("disjoint_pair".into(), names(&["far1", "far2"]));
    b.spec.families.insert("pairwise_only".into(), names(&["bottom", "left", "diagonal"]));
    document(vec![("convex", b.frame(("-1", "-1"), ("27", "7")))])
}

/// Every named document, in a fixed order.
pub fn all() -> Vec<(&'static str, Document)> {
    vec![
        ("fig1_1", fig1_1()),
        ("fig1_2", fig1_2()),
        ("fig1", fig1()),
        ("fig2", fig2()),
        ("fig3", fig3()),
        ("fig4", fig4()),
        ("fig5", fig5()),
        ("convex", convex_families()),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cw::validate_cw;
    use crate::document::{parse_document, serialize_document};

    #[test]
    fn every_figure_resolves_and_is_cw_valid() {
        for (name, doc) in all() {
            let ws = doc.resolve().unwrap_or_else(|e| panic!("{name}: {e}"));
            // overlapping convex sets are not meant to form a CW complex
            for c in ws.complexes.values().filter(|c| c.families.is_empty()) {
                let report = validate_cw(&c.complex);
                assert!(report.is_valid(), "{name}/{}: {report:?}", c.name);
            }
            let text = serialize_document(&doc);
            assert_eq!(parse_document(&text).unwrap(), doc, "{name}");
        }
    }
}
